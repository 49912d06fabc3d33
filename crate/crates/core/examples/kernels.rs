//! A kernel-free digraph in which every odd cycle has a killing triple.

use bnscope::andnet_analysis::{kernels, killing_triples, Digraph};
use bnscope::constructions::theorem_a_prime_digraph;

fn main() -> bnscope::error::Result<()> {
    let small = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)])?;
    println!("directed triangle kernels: {:?}", kernels(&small)?);
    let path = Digraph::from_arcs(3, [(0, 1), (1, 2)])?;
    println!("directed path kernels: {:?}", kernels(&path)?);

    let d = theorem_a_prime_digraph()?;
    println!("digraph: {} vertices, {} arcs", d.vertex_count(), d.arc_count());
    println!("kernels: {}", kernels(&d)?.len());
    let cycles = d.cycles()?;
    for c in cycles.iter().filter(|c| c.len() % 2 == 1).take(5) {
        let t = killing_triples(&d, c)?;
        println!("odd cycle {c:?}: {} killing triples, first {:?}", t.len(), t.first());
    }
    print!("{}", d.to_edge_list());
    Ok(())
}

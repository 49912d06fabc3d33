//! Expands the 4-cycle seed into a 12-variable and-net with no fixed point
//! and no local negative cycle.

use bnscope::andnet_analysis::delocalizing_triples;
use bnscope::constructions::theorem_a_construction;
use bnscope::dynamics::{attractors, fixed_points};
use bnscope::interaction::{local_cycles, SignFilter};
use bnscope::transform::cycles_above;

fn main() -> bnscope::error::Result<()> {
    let c = theorem_a_construction()?;
    println!("seed:\n{}", c.seed.render());
    for ch in &c.chi.choices {
        println!("cycle {}: chord {:?}, split edge {:?}", ch.cycle, ch.chord, ch.edge);
    }
    println!("expanded:\n{}", c.expanded.render());
    println!("creation order of new vertices: {:?}", c.trace.creation_order);

    let g = c.expanded.to_network();
    let gg = c.expanded.to_signed_digraph();
    for cycle in &c.seed_negative_cycles {
        for d in cycles_above(&g, &c.seed.to_network(), &c.trace, cycle)? {
            let triples = delocalizing_triples(&gg, &d)?;
            println!("{d} lies above {cycle}; {} delocalizing triples", triples.len());
        }
    }

    println!("fixed points: {}", fixed_points(&g).len());
    println!("local negative cycles: {}", local_cycles(&g, SignFilter::Negative)?.len());
    for a in attractors(&g) {
        println!("attractor of {} states, attractive cycle: {}", a.len(), a.is_attractive_cycle);
    }
    Ok(())
}

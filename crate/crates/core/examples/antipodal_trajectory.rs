//! The antipodal trajectory network: an attractive cycle through `a^0..a^{2n-1}`
//! with no local negative cycle anywhere.

use bnscope::constructions::{antipodal_cycle, padding_pattern_check, theorem_b_network, TrajectoryAtlas};
use bnscope::dynamics::attractive_cycles;
use bnscope::interaction::{local_cycles, SignFilter};
use bnscope::isometry::{is_equivariant, Isometry};

fn main() -> bnscope::error::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let atlas = TrajectoryAtlas::new(n)?;
    println!("n = {n}, named points distinct: {}", atlas.all_distinct());
    for i in 0..3 {
        println!("a^{i} = {}  b^{i} = {}  c^{i} = {}  d^{i} = {}", atlas.a(i), atlas.b(i), atlas.c(i), atlas.d(i));
    }

    let f = theorem_b_network(n)?;
    let theta = antipodal_cycle(n)?;
    let found = attractive_cycles(&f).iter().any(|c| c.same_cycle(&theta));
    println!("antipodal cycle of length {} attracts: {found}", theta.len());
    println!("local negative cycles: {}", local_cycles(&f, SignFilter::Negative)?.len());
    println!("commutes with the twist: {}", is_equivariant(&f, &Isometry::twist(n))?);
    println!("padding at position 0: {:?}", padding_pattern_check(&f, 0)?);
    Ok(())
}

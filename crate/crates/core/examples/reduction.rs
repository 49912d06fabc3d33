//! Eliminating a variable keeps fixed points but can create attractive cycles.

use bnscope::constructions::reduction_example;
use bnscope::dynamics::{attractive_cycles, fixed_points};
use bnscope::expr::render_network;
use bnscope::transform::{check_reduction_jacobian, lift_state, random_reducible_network, reduce};

fn main() -> bnscope::error::Result<()> {
    let f = reduction_example();
    let r = reduce(&f, 2)?;
    print!("before:\n{}after:\n{}", render_network(&f), render_network(&r));
    println!("attractive cycles: {} before, {} after", attractive_cycles(&f).len(), attractive_cycles(&r).len());
    for c in attractive_cycles(&r) {
        let s: Vec<String> = c.states().iter().map(|x| x.to_bitstring()).collect();
        println!("  {}", s.join(" -> "));
    }

    let g = random_reducible_network(5, 1, 7)?;
    let h = reduce(&g, 1)?;
    for x in fixed_points(&h) {
        println!("fixed point {x} lifts to {}", lift_state(&g, 1, &x)?);
    }
    let rep = check_reduction_jacobian(&g, 1)?;
    println!("Jacobian identity: {} entries checked, passed: {}", rep.checked, rep.passed());
    Ok(())
}

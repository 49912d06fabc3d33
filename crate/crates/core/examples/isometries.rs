//! Distance-preserving maps of the cube and how they act on local graphs.

use bnscope::constructions::theorem_b_network;
use bnscope::isometry::{equivariance_isomorphism_check, verify_isometry_characterization, Isometry};
use bnscope::state::State;

fn main() -> bnscope::error::Result<()> {
    for n in 1..=4 {
        let c = verify_isometry_characterization(n)?;
        println!("n = {n}: {} isometries, all permutation-and-flip: {}", c.distance_preserving, c.all_of_permutation_form);
    }

    let n = 7;
    let t = Isometry::twist(n);
    let mut x = State::zero(n);
    print!("orbit of 0 under the twist:");
    for _ in 0..2 * n {
        print!(" {x}");
        x = t.apply(&x)?;
    }
    println!();

    let f = theorem_b_network(n)?;
    let y: State = "1101000".parse()?;
    let check = equivariance_isomorphism_check(&f, &t, &y)?;
    println!("local graph at {} maps onto the one at {}: {} ({} cycles)", check.x, check.image, check.passed(), check.cycles_checked);
    Ok(())
}

//! Cycle signs from degrees of freedom, and hoopings against the determinant.

use bnscope::dynamics::freedom;
use bnscope::interaction::{
    cycle_cover_count, cycle_sign_by_parity, hoopings, jacobian, local_graph, local_graph_cycles,
};
use bnscope::network::random_network;

fn main() -> bnscope::error::Result<()> {
    let f = random_network(4, 11)?;
    for x in f.states().take(6) {
        let g = local_graph(&f, &x)?;
        let j = jacobian(&f, &x)?;
        println!(
            "x = {x}: freedom {:?}, rank {}, cycle covers {}",
            freedom(&f, &x)?,
            j.rank(),
            cycle_cover_count(&g)?
        );
        for c in local_graph_cycles(&f, &x)? {
            println!("  {c}  parity says {}", cycle_sign_by_parity(&f, &x, &c)?);
        }
        for h in hoopings(&g)? {
            let parts: Vec<String> = h.cycles.iter().map(|c| c.to_string()).collect();
            println!("  hooping [{}] sign {}", parts.join(", "), h.sign());
        }
    }
    Ok(())
}

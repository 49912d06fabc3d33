//! Dynamics and interaction graphs of a three-variable network.

use bnscope::dynamics::{async_edges, attractors, fixed_points};
use bnscope::expr::parse_network;
use bnscope::interaction::{global_graph, jacobian, local_cycles, SignFilter};
use bnscope::state::State;

fn main() -> bnscope::error::Result<()> {
    let f = parse_network("f0 = !x1 & x2\nf1 = !x2\nf2 = !x0 & x1")?;

    println!("fixed points: {}", fixed_points(&f).len());
    for a in attractors(&f) {
        let states: Vec<String> = a.states.iter().map(State::to_bitstring).collect();
        println!("attractor ({} states, attractive cycle: {}): {}", a.len(), a.is_attractive_cycle, states.join(" "));
    }
    println!("asynchronous transitions:");
    for (x, y) in async_edges(&f) {
        println!("  {x} -> {y}");
    }

    let x: State = "010".parse()?;
    println!("Jacobian at {x}:\n{}", jacobian(&f, &x)?);

    let g = global_graph(&f);
    println!("global graph has {} signed edges", g.edge_count());
    for l in local_cycles(&f, SignFilter::All)? {
        println!("local cycle {} first seen at {}", l.cycle, l.witness);
    }
    Ok(())
}

//! Reading and writing the `.bn` and `.anet` text formats.

use bnscope::andnet::AndNet;
use bnscope::expr::{parse_network, render_network};

fn main() -> bnscope::error::Result<()> {
    let text = "# a toggle with a noisy third gene\nn = 3\nf0 = !x1\nf1 = !x0\nf2 = x0 ^ (x1 | !x2)\n";
    let f = parse_network(text)?;
    print!("{}", render_network(&f));
    for i in 0..f.dim() {
        let t: String = f.table(i)?.iter().map(|&b| if b { '1' } else { '0' }).collect();
        println!("table of f{i}: {t}");
    }

    let a = AndNet::parse("0: -1 +2\n1: -0\n2:\n")?;
    print!("{}", a.render());
    print!("{}", render_network(&a.to_network()));
    println!("recognized back: {}", AndNet::from_network(&a.to_network())? == a);

    match parse_network("f0 = x0 &\n") {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("error: {e}"),
    }
    Ok(())
}

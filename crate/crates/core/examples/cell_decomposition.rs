// The nine torus fixed points of X^{1} for n = 3 with their R-sets and
// plus-cell dimensions, grouped into Betti numbers.

use quadrics::cells::{betti, fixed_points};
use quadrics::SimpleSubset;

pub fn run_example() -> quadrics::Result<()> {
    let i = SimpleSubset::new(3, [1])?;
    println!(
        "{:<6} {:<8} {:<6} {:>5} {:>6}",
        "K", "w", "R", "dim X", "dim XI"
    );
    for r in fixed_points(&i)? {
        println!(
            "{:<6} {:<8} {:<6} {:>5} {:>6}",
            r.k.to_string(),
            r.w.to_string(),
            r.r_set.to_string(),
            r.dim_in_x,
            r.dim_in_xi.unwrap_or_default()
        );
    }
    let b: Vec<String> = betti(&i)?.iter().map(|c| c.to_string()).collect();
    println!("betti numbers b_2k: [{}]", b.join(", "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> quadrics::Result<()> {
    run_example()
}

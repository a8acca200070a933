// Fixed symmetric forms of a regular nilpotent block, and a brute-force
// count of fixed flags over small prime fields.

use quadrics::nilfix::{fixed_flag, fixed_flag_uniqueness_oracle, fixed_quadric_space};
use quadrics::parabolic::enumerate_special;

pub fn run_example() -> quadrics::Result<()> {
    for m in 1..=5 {
        let space = fixed_quadric_space(m);
        println!(
            "block {m}: dimension {}, nondegenerate member: {}",
            space.dimension, space.has_nondegenerate
        );
        for b in &space.basis {
            println!("    {b}");
        }
    }
    println!();
    for n in 2..=4 {
        for k in enumerate_special(n) {
            let flag = fixed_flag(&k)?;
            let counts: Vec<usize> = [5, 7]
                .into_iter()
                .map(|p| fixed_flag_uniqueness_oracle(n, &k, p))
                .collect::<quadrics::Result<_>>()?;
            println!(
                "n={n} K={:<6} flag {:?}  fixed flags over F_5, F_7: {counts:?}",
                k.to_string(),
                flag.describe()
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> quadrics::Result<()> {
    run_example()
}

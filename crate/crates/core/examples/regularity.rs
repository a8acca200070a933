// Classifies every I ⊆ [4] as regular or not from fixed quadrics alone,
// and compares with the no-consecutive-indices criterion.

use quadrics::nilfix::{regularity_classifier, Regularity};
use quadrics::parabolic::all_subsets;

pub fn run_example() -> quadrics::Result<()> {
    let n = 5;
    for i in all_subsets(n) {
        match regularity_classifier(&i) {
            Regularity::Regular => println!(
                "I = {:<10} regular      (special: {})",
                i.to_string(),
                i.is_special()
            ),
            Regularity::NotRegular(w) => println!(
                "I = {:<10} not regular  (special: {}) witness K = {}, block of size {} at e{}",
                i.to_string(),
                i.is_special(),
                w.k,
                w.block.block_size,
                w.block_start
            ),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> quadrics::Result<()> {
    run_example()
}

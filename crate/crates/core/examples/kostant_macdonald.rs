// The classical identity Σ q^ℓ(w) = [n]_q! and its generalisation to X^I,
// split into the per-K addends that the closed form predicts.

use quadrics::cells::{k_addend, per_k_closed_form_check, verify_km};
use quadrics::qpoly::{q_factorial, QPolynomial};
use quadrics::symmetric_group::enumerate;
use quadrics::SimpleSubset;

pub fn run_example() -> quadrics::Result<()> {
    for n in 1..=6 {
        let mut lengths = QPolynomial::zero();
        for w in enumerate(n) {
            lengths.add_term(w.length(), 1);
        }
        println!(
            "n={n}: Σ q^ℓ(w) = {lengths}  (equals [n]_q!: {})",
            lengths == q_factorial(n)
        );
    }

    let i = SimpleSubset::new(6, [1, 3, 5])?;
    println!("\nI = {i}, n = 6: sum = product? {}", verify_km(&i)?);
    for k in i.subsets() {
        println!(
            "  K = {:<8} addend {}  closed form holds: {}",
            k.to_string(),
            k_addend(&k, &i)?,
            per_k_closed_form_check(&k, &i)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> quadrics::Result<()> {
    run_example()
}

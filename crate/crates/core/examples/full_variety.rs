// Poincaré polynomials of the full varieties of complete quadrics X_n,
// with the n = 3 case checked against the blow-up of P^5 along the
// Veronese surface.

use quadrics::cells::poincare_full_variety;
use quadrics::qpoly::{q_integer, QPolynomial};

pub fn run_example() -> quadrics::Result<()> {
    for n in 1..=5 {
        let p = poincare_full_variety(n)?;
        println!(
            "X_{n}: {p}   (χ = {}, palindromic: {})",
            p.evaluate_at_one(),
            p.is_palindromic()
        );
    }
    let blow_up = &q_integer(6) + &(&QPolynomial::from_i64s(&[0, 1, 1]) * &q_integer(3));
    println!(
        "blow-up model for X_3: {blow_up}  (agrees: {})",
        blow_up == poincare_full_variety(3)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> quadrics::Result<()> {
    run_example()
}

// Poincaré polynomials of X^I computed by the product formula and by cell
// enumeration, for every special I with n up to 5.

use quadrics::cells::poincare_sum;
use quadrics::parabolic::enumerate_special;
use quadrics::qpoly::product_formula;

pub fn run_example() -> quadrics::Result<()> {
    for n in 2..=5 {
        for i in enumerate_special(n) {
            let by_product = product_formula(&i)?;
            let by_cells = poincare_sum(&i)?;
            let mark = if by_product == by_cells { "=" } else { "!=" };
            println!("n={n} I={i:<8} {by_cells}  {mark} product");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> quadrics::Result<()> {
    run_example()
}

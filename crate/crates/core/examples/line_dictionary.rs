//! Restrict pulled-back spinors to lines through the origin: the order
//! along the divisor at `[ξ]` equals `dim - 1 - height(ξ)`.

use blowuplab::model_io::catalog;
use blowuplab::spinor::line::{check_line, dictionary_suite, pulled_spinors};
use blowuplab::Covector;

fn main() -> blowuplab::Result<()> {
    let l = catalog::sl2();
    let pulled = pulled_spinors(&l)?;
    for p in [[1, 0, 0], [1, 0, 1], [0, 1, 1], [3, 4, 5]] {
        let c = check_line(&l, &pulled, &Covector::from_ints(&p))?;
        println!(
            "{}: chart U_{}, order {}, height {}, holds {}",
            c.covector, c.chart, c.order, c.height, c.holds
        );
    }
    for l in [catalog::so3(), catalog::heis3(), catalog::abelian(4), catalog::diagonal_affine(3)] {
        let r = dictionary_suite(&l, 50, 1729)?;
        println!(
            "{:<18} {} lines, {} violations, orders {:?}",
            l.name().unwrap_or("?"),
            r.checks.len(),
            r.violations,
            r.observed_orders
        );
    }
    Ok(())
}

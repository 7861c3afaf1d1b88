//! Adding a bivector of order >= 2 at the origin leaves the vanishing
//! pattern of the pulled-back spinor unchanged.

use blowuplab::model_io::catalog;
use blowuplab::poly::PolyRing;
use blowuplab::spinor::order::DivisorSearch;
use blowuplab::spinor::perturb::perturbation_invariance_check;
use blowuplab::spinor::PolyBivector;

fn main() -> blowuplab::Result<()> {
    let ring = PolyRing::new(vec!["x1".into(), "x2".into(), "x3".into()]);
    let p = |s: &str| ring.parse(s).expect("valid polynomial");
    let w = PolyBivector::from_entries(3, [(0, 1, p("x1^2 + x2*x3")), (1, 2, p("x3^3"))])?;
    for l in [catalog::so3(), catalog::heis3()] {
        for chart in 0..3 {
            let r = perturbation_invariance_check(&l, &w, chart, &DivisorSearch::default())?;
            println!(
                "{} U_{}: linear order {}, perturbed order {}, {} points, agree {}",
                l.name().unwrap_or("?"),
                r.chart,
                r.order_linear,
                r.order_perturbed,
                r.points_checked,
                r.agree
            );
        }
    }
    Ok(())
}

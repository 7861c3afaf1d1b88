//! Lifted vector fields and the distribution `D` on the divisor: rank of
//! `D` at `[v]` against the height, type and orbit of `v`.

use blowuplab::geometry::{lift_identity_holds, lift_vector_field, rank_orbit_crosscheck};
use blowuplab::model_io::catalog;
use blowuplab::poly::{Poly, PolyRing};
use blowuplab::spinor::BlowupChart;

fn main() -> blowuplab::Result<()> {
    let ring = PolyRing::new(vec!["x1".into(), "x2".into(), "x3".into()]);
    let p = |s: &str| ring.parse(s).expect("valid polynomial");
    // Hamiltonian field of x3 for so(3): x2 d1 - x1 d2
    let x: Vec<Poly> = vec![p("x2"), p("-x1"), p("0")];
    let chart = BlowupChart::origin(3, 0)?;
    let lifted = lift_vector_field(&x, &chart)?;
    let names = chart.chart_names(&ring);
    for (v, c) in lifted.coeffs.iter().enumerate() {
        println!("lifted component {}: {}", names[v], c.display_with(&names));
    }
    println!("tangent to divisor: {}", lifted.is_tangent_to_divisor());
    println!("identity on x1^2 x3: {}", lift_identity_holds(&x, &lifted, &p("x1^2*x3")));

    for l in [catalog::so3(), catalog::sl2(), catalog::heis3(), catalog::diagonal_affine(2)] {
        let r = rank_orbit_crosscheck(&l, 40, 1729)?;
        println!(
            "{:<18} heights {:?}, D ranks {:?}, {} violations: {}",
            l.name().unwrap_or("?"),
            r.observed_heights,
            r.observed_ranks,
            r.violations.len(),
            r.status
        );
    }
    Ok(())
}

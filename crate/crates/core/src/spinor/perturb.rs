//! Invariance of the chart vanishing data under perturbations of `π_lin`
//! by terms vanishing to second order at the origin.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{Covector, LieAlgebra};

use super::chart::{blowup_pullback, BlowupChart};
use super::order::{divisor_points, vanishes_at, vanishing_order_with, DivisorSearch};
use super::{linear_poisson, spinor, volume, PolyBivector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PerturbationReport {
    /// 1-based chart index.
    pub chart: usize,
    pub order_linear: u32,
    pub order_perturbed: u32,
    pub points_checked: usize,
    /// Divisor points where exactly one of the two leading forms vanishes.
    pub mismatches: Vec<Covector>,
    pub agree: bool,
}

pub fn perturbation_invariance_check(
    l: &LieAlgebra,
    w: &PolyBivector,
    chart: usize,
    search: &DivisorSearch,
) -> Result<PerturbationReport> {
    let m = l.dim();
    Error::check_dim(m, w.dim())?;
    let vars: Vec<usize> = (0..m).collect();
    if let Some(o) = w.order_in(&vars) {
        if o < 2 {
            return Err(Error::domain(format!(
                "perturbation has a coefficient of order {o} at the origin; order >= 2 required"
            )));
        }
    }
    let lin = linear_poisson(l)?;
    let perturbed = lin.add(w)?;
    let c = BlowupChart::origin(m, chart)?;
    let a = vanishing_order_with(&blowup_pullback(&spinor(&lin, &volume(m))?, &c)?, search)?;
    let b = vanishing_order_with(&blowup_pullback(&spinor(&perturbed, &volume(m))?, &c)?, search)?;
    let points = divisor_points(&c, search);
    let mismatches: Vec<Covector> = points
        .iter()
        .filter(|p| vanishes_at(&a.leading, p) != vanishes_at(&b.leading, p))
        .map(|p| Covector(p.clone()))
        .collect();
    Ok(PerturbationReport {
        chart: chart + 1,
        order_linear: a.order,
        order_perturbed: b.order,
        points_checked: points.len(),
        agree: a.order == b.order && mismatches.is_empty(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::catalog;
    use crate::poly::Poly;

    #[test]
    fn so3_with_quadratic_term() {
        let w = PolyBivector::from_entries(3, [(1, 2, Poly::var(0).pow(2))]).unwrap();
        let r = perturbation_invariance_check(&catalog::so3(), &w, 0, &DivisorSearch::default()).unwrap();
        assert_eq!((r.order_linear, r.order_perturbed), (1, 1));
        assert!(r.agree);
    }

    #[test]
    fn zero_perturbation() {
        let r = perturbation_invariance_check(&catalog::sl2(), &PolyBivector::zero(3), 2, &DivisorSearch::default())
            .unwrap();
        assert!(r.agree);
    }

    #[test]
    fn heis3_pattern_is_preserved() {
        let w = PolyBivector::from_entries(3, [(0, 1, Poly::var(2).pow(2))]).unwrap();
        for chart in 0..3 {
            let r = perturbation_invariance_check(&catalog::heis3(), &w, chart, &DivisorSearch::default()).unwrap();
            assert!(r.agree, "{r:?}");
        }
    }

    #[test]
    fn linear_perturbation_is_rejected() {
        let w = PolyBivector::from_entries(3, [(0, 1, Poly::var(2))]).unwrap();
        assert!(perturbation_invariance_check(&catalog::so3(), &w, 0, &DivisorSearch::default()).is_err());
    }
}

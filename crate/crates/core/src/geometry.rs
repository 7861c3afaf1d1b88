//! Lifted vector fields in blowup charts, the distribution `D_[v]` on the
//! exceptional divisor, and pointwise checks relating its rank to heights
//! and coadjoint orbits.
//!
//! Points `v` of `g*` are paired with covectors of `g` through the standard
//! dual basis, so `height(v)` means the height of the covector with the same
//! coordinates. `D_[v]` is computed from `π_lin` and constant 1-forms.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::classify::seed_covectors;
use crate::error::{Error, Result};
use crate::liealg::{Covector, ElementType, LieAlgebra};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::sampling::CovectorSampler;
use crate::spinor::line::preferred_chart;
use crate::spinor::{linear_poisson, BlowupChart, PolyBivector};

/// `X = Σ X_v ∂_v` with polynomial coefficients.
pub type VectorField = Vec<Poly>;

#[derive(Debug, Clone, PartialEq)]
pub struct LiftedVectorField {
    pub chart: BlowupChart,
    pub coeffs: VectorField,
}

impl LiftedVectorField {
    /// Tangency to `{x̃_i = 0}`: the `∂̃_i` coefficient vanishes there.
    pub fn is_tangent_to_divisor(&self) -> bool {
        let i = self.chart.chart_var();
        self.coeffs[i].coefficient_of_power(i, 0).is_zero()
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        apply_vector_field(&self.coeffs, f)
    }
}

/// `X(f) = Σ X_v ∂f/∂x_v`.
pub fn apply_vector_field(x: &[Poly], f: &Poly) -> Poly {
    x.iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (v, c)| acc + c * &f.derivative(v))
}

/// The unique vector field on the chart that is `p`-related to `x`.
///
/// Requires the normal components of `x` to vanish on the centre. In
/// coordinates: `X̃_i = p*X_i`, `X̃_k = (p*X_k - x̃_k p*X_i) / x̃_i` for the
/// other normal directions, and `X̃_b = p*X_b` for base directions.
pub fn lift_vector_field(x: &[Poly], chart: &BlowupChart) -> Result<LiftedVectorField> {
    let n = chart.nvars();
    Error::check_dim(n, x.len())?;
    let normal = chart.normal();
    let mut on_centre: Vec<Poly> = (0..n).map(Poly::var).collect();
    for &v in normal {
        on_centre[v] = Poly::zero();
    }
    for &v in normal {
        if !x[v].substitute(&on_centre).is_zero() {
            return Err(Error::domain(format!(
                "component {} of the vector field does not vanish on the centre",
                v + 1
            )));
        }
    }
    let i = chart.chart_var();
    let pulled: Vec<Poly> = x.iter().map(|c| chart.pull_poly(c)).collect();
    let coeffs = (0..n)
        .map(|k| {
            if k == i || !normal.contains(&k) {
                Ok(pulled[k].clone())
            } else {
                let numerator = &pulled[k] - &(&Poly::var(k) * &pulled[i]);
                numerator
                    .div_var_power(i, 1)
                    .ok_or_else(|| Error::Internal(format!("lift component {} is not polynomial", k + 1)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftedVectorField {
        chart: chart.clone(),
        coeffs,
    })
}

/// Checks `X̃(p*f) = p*(X f)`.
pub fn lift_identity_holds(x: &[Poly], lifted: &LiftedVectorField, f: &Poly) -> bool {
    let chart = &lifted.chart;
    lifted.apply(&chart.pull_poly(f)) == chart.pull_poly(&apply_vector_field(x, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionSample {
    pub point: Covector,
    /// 1-based chart index.
    pub chart: usize,
    /// Row-reduced spanning set in chart coordinates.
    #[serde(skip)]
    pub basis: Matrix,
    pub rank: usize,
}

/// Chart coordinates of `[v]` in chart `i`.
pub fn chart_point(v: &[BigRational], i: usize) -> Vec<BigRational> {
    v.iter()
        .enumerate()
        .map(|(j, c)| if j == i { BigRational::zero() } else { c / &v[i] })
        .collect()
}

pub fn distribution_d(l: &LieAlgebra, v: &Covector) -> Result<DistributionSample> {
    let pi = linear_poisson(l)?;
    distribution_d_with(&pi, v)
}

pub fn distribution_d_with(pi: &PolyBivector, v: &Covector) -> Result<DistributionSample> {
    let m = pi.dim();
    Error::check_dim(m, v.dim())?;
    if v.is_zero() {
        return Err(Error::domain("D_[v] needs v != 0"));
    }
    let i = preferred_chart(v);
    let chart = BlowupChart::origin(m, i)?;
    let vi = &v.components()[i];
    let point = chart_point(v.components(), i);
    let mut rows = Vec::new();
    for j in (0..m).filter(|&j| j != i) {
        // α_j = dx_j - (v_j / v_i) dx_i annihilates v.
        let mut alpha = vec![BigRational::zero(); m];
        alpha[j] = BigRational::from_integer(1.into());
        alpha[i] = -(&v.components()[j] / vi);
        let lifted = lift_vector_field(&pi.sharp(&alpha), &chart)?;
        let at_point: Vec<BigRational> = lifted
            .coeffs
            .iter()
            .map(|c| c.eval(&point).expect("point covers chart variables"))
            .collect();
        rows.push(at_point);
    }
    let (basis, _) = linalg::rref(&rows);
    Ok(DistributionSample {
        point: v.clone(),
        chart: i + 1,
        rank: basis.len(),
        basis,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankOrbitRow {
    pub point: Covector,
    pub chart: usize,
    pub rank_d: usize,
    pub height: usize,
    pub element_type: ElementType,
    pub cartan_class: usize,
    pub orbit_dim: usize,
    pub radial_in_orbit: bool,
    pub rank_matches_height: bool,
    pub orbit_case_split: bool,
    pub d_vs_orbit: bool,
    pub class_identity: bool,
}

impl RankOrbitRow {
    pub fn ok(&self) -> bool {
        self.rank_matches_height && self.orbit_case_split && self.d_vs_orbit && self.class_identity
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankOrbitReport {
    pub seed: u64,
    pub rows: Vec<RankOrbitRow>,
    pub violations: Vec<Covector>,
    pub observed_heights: BTreeSet<usize>,
    pub observed_ranks: BTreeSet<usize>,
    pub status: String,
}

impl RankOrbitReport {
    pub fn pointwise_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn constant_height(&self) -> Option<usize> {
        (self.observed_heights.len() == 1).then(|| *self.observed_heights.iter().next().expect("one"))
    }
}

pub fn rank_orbit_row(l: &LieAlgebra, pi: &PolyBivector, v: &Covector) -> Result<RankOrbitRow> {
    let d = distribution_d_with(pi, v)?;
    let r = l.height_report(v)?;
    let h = r.height;
    let radial = r.radial_in_orbit;
    Ok(RankOrbitRow {
        point: v.clone(),
        chart: d.chart,
        rank_d: d.rank,
        height: h,
        element_type: r.element_type,
        cartan_class: r.cartan_class,
        orbit_dim: r.orbit_dim,
        radial_in_orbit: radial,
        rank_matches_height: d.rank == 2 * h,
        orbit_case_split: r.orbit_dim == if radial { 2 * h + 2 } else { 2 * h },
        d_vs_orbit: d.rank + if radial { 2 } else { 0 } == r.orbit_dim,
        class_identity: r.cartan_class == 2 * h + r.element_type.code(),
    })
}

/// Checks the pointwise relations at the deterministic seed covectors
/// followed by random draws, `samples` points in total (the seed set is
/// truncated if longer).
pub fn rank_orbit_crosscheck(l: &LieAlgebra, samples: usize, seed: u64) -> Result<RankOrbitReport> {
    if samples == 0 {
        return Err(Error::domain("samples must be at least 1"));
    }
    let pi = linear_poisson(l)?;
    let n = l.dim();
    let mut sampler = CovectorSampler::new(seed);
    let mut points: Vec<Covector> = seed_covectors(l).into_iter().take(samples).collect();
    while points.len() < samples {
        points.push(sampler.next_covector(n));
    }
    let mut rows = Vec::with_capacity(samples);
    for v in &points {
        rows.push(rank_orbit_row(l, &pi, v)?);
    }
    let violations: Vec<Covector> = rows.iter().filter(|r| !r.ok()).map(|r| r.point.clone()).collect();
    let observed_heights: BTreeSet<usize> = rows.iter().map(|r| r.height).collect();
    let observed_ranks: BTreeSet<usize> = rows.iter().map(|r| r.rank_d).collect();
    let status = match (violations.is_empty(), observed_heights.len() == 1) {
        (true, true) => "consistent, constant height",
        (true, false) => "pointwise-consistent, globally non-constant",
        (false, _) => "violated",
    }
    .to_string();
    Ok(RankOrbitReport {
        seed,
        rows,
        violations,
        observed_heights,
        observed_ranks,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::catalog;
    use crate::poly::rat;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn so3_lift_of_first_hamiltonian_field() {
        let pi = linear_poisson(&catalog::so3()).unwrap();
        let field = pi.sharp_basis(0);
        let chart = BlowupChart::origin(3, 0).unwrap();
        let lifted = lift_vector_field(&field, &chart).unwrap();
        assert_eq!(lifted.coeffs, vec![Poly::zero(), x(2), -x(1)]);
        assert!(lifted.is_tangent_to_divisor());
    }

    #[test]
    fn euler_type_field() {
        // x3 ∂3 in chart 3
        let field = vec![Poly::zero(), Poly::zero(), x(2)];
        let chart = BlowupChart::origin(3, 2).unwrap();
        let lifted = lift_vector_field(&field, &chart).unwrap();
        assert_eq!(lifted.coeffs, vec![-x(0), -x(1), x(2)]);
        for j in 0..3 {
            assert!(lift_identity_holds(&field, &lifted, &x(j)));
        }
        let zero = lift_vector_field(&vec![Poly::zero(); 3], &chart).unwrap();
        assert!(zero.coeffs.iter().all(Poly::is_zero));
    }

    #[test]
    fn non_vanishing_field_is_rejected() {
        let field = vec![Poly::constant(rat(1)), Poly::zero(), Poly::zero()];
        assert!(lift_vector_field(&field, &BlowupChart::origin(3, 0).unwrap()).is_err());
    }

    #[test]
    fn distribution_ranks() {
        let so3 = catalog::so3();
        let d = distribution_d(&so3, &Covector::from_ints(&[1, 2, 2])).unwrap();
        assert_eq!(d.rank, 2);
        assert_eq!(distribution_d(&catalog::abelian(3), &Covector::from_ints(&[1, 0, 0])).unwrap().rank, 0);
        let heis = catalog::heis3();
        let z = distribution_d(&heis, &Covector::from_ints(&[0, 0, 1])).unwrap();
        let xs = distribution_d(&heis, &Covector::from_ints(&[1, 0, 0])).unwrap();
        assert_eq!((z.rank, xs.rank), (2, 0));
        assert!(distribution_d(&so3, &Covector::from_ints(&[0, 0, 0])).is_err());
    }

    #[test]
    fn crosscheck_statuses() {
        let r = rank_orbit_crosscheck(&catalog::so3(), 30, 1729).unwrap();
        assert!(r.pointwise_consistent());
        assert_eq!(r.constant_height(), Some(1));
        let r = rank_orbit_crosscheck(&catalog::sl2(), 30, 1729).unwrap();
        assert!(r.pointwise_consistent());
        assert_eq!(r.status, "pointwise-consistent, globally non-constant");
        assert!(r.rows.iter().any(|row| row.height == 0 && row.radial_in_orbit));
        let r = rank_orbit_crosscheck(&catalog::abelian(3), 10, 1).unwrap();
        assert!(r.rows.iter().all(|row| row.rank_d == 0 && row.orbit_dim == 0));
    }
}

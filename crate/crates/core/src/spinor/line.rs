//! Restriction of chart forms to the line through the divisor point `[ξ]`,
//! and the order identity `order_t = dim g - 1 - height(ξ)`.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::GradedForm;
use crate::liealg::{Covector, LieAlgebra};
use crate::poly::Poly;
use crate::sampling::CovectorSampler;

use super::chart::{blowup_pullback, BlowupChart, ChartForm};
use super::{linear_poisson, spinor, volume};

/// Form with coefficients in the chart variable `t = x̃_i` only (base
/// variables, if any, stay symbolic).
#[derive(Debug, Clone, PartialEq)]
pub struct LineRestriction {
    pub chart: BlowupChart,
    pub covector: Covector,
    pub form: GradedForm<Poly>,
    /// `t`-adic order at `t = 0`.
    pub order: u32,
}

/// Chart with the largest `|ξ_i|`, ties to the smallest index.
pub fn preferred_chart(xi: &Covector) -> usize {
    let mut best = 0;
    for (i, c) in xi.components().iter().enumerate() {
        if c.abs() > xi.components()[best].abs() {
            best = i;
        }
    }
    best
}

/// Substitutes `x̃_j ← ξ_j / ξ_i` for the normal `j ≠ i` and keeps
/// `t = x̃_i`; the differentials `dx̃_j` are kept as they are.
pub fn restrict_to_line(cf: &ChartForm, xi: &Covector) -> Result<LineRestriction> {
    let normal = cf.chart.normal();
    Error::check_dim(normal.len(), xi.dim())?;
    let i = cf.chart.chart_var();
    let pos = normal.iter().position(|&v| v == i).expect("chart variable is normal");
    let xi_i = &xi.components()[pos];
    if xi_i.is_zero() {
        return Err(Error::domain(format!(
            "covector {xi} has zero component {} and is not in chart {}",
            pos + 1,
            cf.chart
        )));
    }
    let mut images: Vec<Poly> = (0..cf.chart.nvars()).map(Poly::var).collect();
    for (p, &v) in normal.iter().enumerate() {
        if v != i {
            images[v] = Poly::constant(&xi.components()[p] / xi_i);
        }
    }
    let form = cf.form.map_coeffs(|c| c.substitute(&images));
    let order = form
        .terms()
        .filter_map(|(_, c)| c.valuation(i))
        .min()
        .ok_or_else(|| Error::domain("line restriction vanishes identically"))?;
    Ok(LineRestriction {
        chart: cf.chart.clone(),
        covector: xi.clone(),
        form,
        order,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineCheck {
    pub covector: Covector,
    /// 1-based chart index.
    pub chart: usize,
    pub order: u32,
    pub height: usize,
    pub expected: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DictionaryReport {
    pub seed: u64,
    pub checks: Vec<LineCheck>,
    pub violations: usize,
    pub observed_orders: BTreeSet<u32>,
}

/// Pullback of the linear Poisson spinor into every chart of the blowup of
/// `g*` at the origin.
pub fn pulled_spinors(l: &LieAlgebra) -> Result<Vec<ChartForm>> {
    let n = l.dim();
    let phi = spinor(&linear_poisson(l)?, &volume(n))?;
    (0..n)
        .map(|i| blowup_pullback(&phi, &BlowupChart::origin(n, i)?))
        .collect()
}

pub fn check_line(l: &LieAlgebra, pulled: &[ChartForm], xi: &Covector) -> Result<LineCheck> {
    let i = preferred_chart(xi);
    let r = restrict_to_line(&pulled[i], xi)?;
    let height = l.height(xi)?;
    let expected = l.dim() - 1 - height;
    Ok(LineCheck {
        covector: xi.clone(),
        chart: i + 1,
        order: r.order,
        height,
        expected,
        holds: r.order as usize == expected,
    })
}

/// Runs the order identity on `samples` seeded covectors.
pub fn dictionary_suite(l: &LieAlgebra, samples: usize, seed: u64) -> Result<DictionaryReport> {
    let pulled = pulled_spinors(l)?;
    let mut sampler = CovectorSampler::new(seed);
    let mut checks = Vec::with_capacity(samples);
    for _ in 0..samples {
        let xi = sampler.next_covector(l.dim());
        checks.push(check_line(l, &pulled, &xi)?);
    }
    Ok(DictionaryReport {
        seed,
        violations: checks.iter().filter(|c| !c.holds).count(),
        observed_orders: checks.iter().map(|c| c.order).collect(),
        checks,
    })
}

/// Leading `t` coefficient form of a line restriction evaluated along the
/// line; handy for displays.
pub fn leading_on_line(r: &LineRestriction) -> GradedForm<Poly> {
    let t = r.chart.chart_var();
    r.form.map_coeffs(|c| c.coefficient_of_power(t, r.order))
}

pub fn ratio_vector(xi: &Covector, i: usize) -> Vec<BigRational> {
    xi.components().iter().map(|c| c / &xi.components()[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::catalog;
    use crate::poly::rat;

    #[test]
    fn so3_line_through_first_axis() {
        let so3 = catalog::so3();
        let pulled = pulled_spinors(&so3).unwrap();
        let xi = Covector::from_ints(&[1, 0, 0]);
        let r = restrict_to_line(&pulled[0], &xi).unwrap();
        let t = Poly::var(0);
        let expected = GradedForm::monomial(3, &[0], t.clone())
            .unwrap()
            .add(&GradedForm::monomial(3, &[0, 1, 2], t.pow(2)).unwrap())
            .unwrap();
        assert_eq!(r.form, expected);
        assert_eq!(r.order, 1);
    }

    #[test]
    fn wrong_chart_is_rejected() {
        let pulled = pulled_spinors(&catalog::so3()).unwrap();
        assert!(restrict_to_line(&pulled[0], &Covector::from_ints(&[0, 1, 0])).is_err());
    }

    #[test]
    fn heis3_orders() {
        let heis = catalog::heis3();
        let pulled = pulled_spinors(&heis).unwrap();
        let x_star = check_line(&heis, &pulled, &Covector::from_ints(&[1, 0, 0])).unwrap();
        assert_eq!((x_star.order, x_star.height), (2, 0));
        let z_star = check_line(&heis, &pulled, &Covector::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!((z_star.order, z_star.height), (1, 1));
    }

    #[test]
    fn abelian_order_is_m_minus_one() {
        let ab = catalog::abelian(4);
        let rep = dictionary_suite(&ab, 20, 5).unwrap();
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.observed_orders.into_iter().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn chart_preference() {
        assert_eq!(preferred_chart(&Covector::from_ints(&[1, -3, 3])), 1);
        assert_eq!(preferred_chart(&Covector::from_ints(&[2, 2, 0])), 0);
        assert_eq!(ratio_vector(&Covector::from_ints(&[2, 4]), 0), vec![rat(1), rat(2)]);
    }
}

//! Vanishing order along the exceptional divisor `{x̃_i = 0}` of a chart,
//! with a certificate policy for the leading coefficient form:
//!
//! * `Certified` when some coefficient of the leading form is a nonzero
//!   constant or passes [`Poly::definite_sign`];
//! * `Falsified` when the whole leading form vanishes at an explicit
//!   rational divisor point (searched over the origin, unit vectors,
//!   pairwise sums and differences, then seeded random points);
//! * `Undetermined` otherwise.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Blade, GradedForm};
use crate::liealg::Covector;
use crate::poly::{format_rational, DefiniteSign, Poly};
use crate::sampling::CovectorSampler;

use super::chart::{BlowupChart, ChartForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CertificateReason {
    NonzeroConstant(String),
    Definite(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// 1-based indices of the certified component.
    pub component: Vec<usize>,
    pub reason: CertificateReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum Nonvanishing {
    Certified { certificate: Certificate },
    Falsified { point: Covector },
    Undetermined,
}

impl Nonvanishing {
    pub fn label(&self) -> &'static str {
        match self {
            Nonvanishing::Certified { .. } => "Certified",
            Nonvanishing::Falsified { .. } => "Falsified",
            Nonvanishing::Undetermined => "Undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderCertificate {
    pub chart: BlowupChart,
    pub order: u32,
    /// Coefficient of `x̃_i^order`, restricted to the divisor.
    pub leading: GradedForm<Poly>,
    pub status: Nonvanishing,
    /// Order 0 with codimension above one: outside the invariant setting.
    pub transverse_like: bool,
    pub points_checked: usize,
}

/// Divisor point search settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorSearch {
    pub seed: u64,
    pub random_points: usize,
}

impl Default for DivisorSearch {
    fn default() -> Self {
        DivisorSearch {
            seed: crate::classify::DEFAULT_SEED,
            random_points: 32,
        }
    }
}

/// Rational points of the divisor `{x̃_i = 0}` in the search order.
pub fn divisor_points(chart: &BlowupChart, search: &DivisorSearch) -> Vec<Vec<BigRational>> {
    let n = chart.nvars();
    let free: Vec<usize> = (0..n).filter(|&v| v != chart.chart_var()).collect();
    let zero = vec![BigRational::zero(); n];
    let mut out = vec![zero.clone()];
    let one = BigRational::from_integer(1.into());
    for &v in &free {
        let mut p = zero.clone();
        p[v] = one.clone();
        out.push(p);
    }
    for (a, &v) in free.iter().enumerate() {
        for &w in &free[a + 1..] {
            for sign in [1i64, -1] {
                let mut p = zero.clone();
                p[v] = one.clone();
                p[w] = BigRational::from_integer(sign.into());
                out.push(p);
            }
        }
    }
    if !free.is_empty() {
        let mut s = CovectorSampler::new(search.seed);
        for _ in 0..search.random_points {
            let vals = s.next_vector(free.len());
            let mut p = zero.clone();
            for (&v, q) in free.iter().zip(vals) {
                p[v] = q;
            }
            out.push(p);
        }
    }
    out
}

/// Whether every coefficient of `form` vanishes at `point`.
pub fn vanishes_at(form: &GradedForm<Poly>, point: &[BigRational]) -> bool {
    form.terms()
        .all(|(_, c)| c.eval(point).map_or(false, |v| v.is_zero()))
}

fn certify(leading: &GradedForm<Poly>) -> Option<Certificate> {
    let component = |b: &Blade| b.indices().map(|i| i + 1).collect::<Vec<_>>();
    for (b, c) in leading.terms() {
        if let Some(q) = c.as_constant() {
            if !q.is_zero() {
                return Some(Certificate {
                    component: component(b),
                    reason: CertificateReason::NonzeroConstant(format_rational(&q)),
                });
            }
        }
    }
    for (b, c) in leading.terms() {
        if let Some(sign) = c.definite_sign() {
            return Some(Certificate {
                component: component(b),
                reason: CertificateReason::Definite(match sign {
                    DefiniteSign::Positive => "positive",
                    DefiniteSign::Negative => "negative",
                }),
            });
        }
    }
    None
}

pub fn vanishing_order(cf: &ChartForm) -> Result<OrderCertificate> {
    vanishing_order_with(cf, &DivisorSearch::default())
}

pub fn vanishing_order_with(cf: &ChartForm, search: &DivisorSearch) -> Result<OrderCertificate> {
    if cf.form.is_zero() {
        return Err(Error::domain("vanishing order of the zero form"));
    }
    let t = cf.chart.chart_var();
    let order = cf
        .form
        .terms()
        .filter_map(|(_, c)| c.valuation(t))
        .min()
        .expect("nonzero form");
    let leading = cf.form.map_coeffs(|c| c.coefficient_of_power(t, order));
    let mut points_checked = 0;
    let status = if let Some(certificate) = certify(&leading) {
        Nonvanishing::Certified { certificate }
    } else {
        let mut found = None;
        for p in divisor_points(&cf.chart, search) {
            points_checked += 1;
            if vanishes_at(&leading, &p) {
                found = Some(p);
                break;
            }
        }
        match found {
            Some(p) => Nonvanishing::Falsified { point: Covector(p) },
            None => Nonvanishing::Undetermined,
        }
    };
    Ok(OrderCertificate {
        transverse_like: order == 0 && cf.chart.codim() > 1,
        chart: cf.chart.clone(),
        order,
        leading,
        status,
        points_checked,
    })
}

/// Verdict on constancy of the order along the whole divisor, from one
/// certificate per chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum AggregateOrder {
    Constant { order: u32 },
    NonConstant {
        /// 1-based chart and divisor point where the leading form vanishes.
        chart: Option<usize>,
        point: Option<Covector>,
    },
    Inconclusive,
}

impl AggregateOrder {
    pub fn constant(&self) -> Option<u32> {
        match self {
            AggregateOrder::Constant { order } => Some(*order),
            _ => None,
        }
    }
}

pub fn aggregate(certs: &[OrderCertificate]) -> AggregateOrder {
    if let Some(c) = certs
        .iter()
        .find(|c| matches!(c.status, Nonvanishing::Falsified { .. }))
    {
        let Nonvanishing::Falsified { point } = &c.status else {
            unreachable!()
        };
        return AggregateOrder::NonConstant {
            chart: Some(c.chart.chart_var() + 1),
            point: Some(point.clone()),
        };
    }
    let all_certified = certs
        .iter()
        .all(|c| matches!(c.status, Nonvanishing::Certified { .. }));
    if !all_certified || certs.is_empty() {
        return AggregateOrder::Inconclusive;
    }
    let order = certs[0].order;
    if certs.iter().all(|c| c.order == order) {
        AggregateOrder::Constant { order }
    } else {
        AggregateOrder::NonConstant {
            chart: None,
            point: None,
        }
    }
}

/// Certificates for every chart of the given centre.
pub fn chart_certificates(
    form: &GradedForm<Poly>,
    charts: &[BlowupChart],
    search: &DivisorSearch,
) -> Result<Vec<OrderCertificate>> {
    charts
        .iter()
        .map(|c| vanishing_order_with(&super::chart::blowup_pullback(form, c)?, search))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::catalog;
    use crate::poly::rat;
    use crate::spinor::{blowup_pullback, linear_poisson, spinor, volume};

    fn pulled(l: &crate::liealg::LieAlgebra, i: usize) -> ChartForm {
        let phi = spinor(&linear_poisson(l).unwrap(), &volume(l.dim())).unwrap();
        blowup_pullback(&phi, &BlowupChart::origin(l.dim(), i).unwrap()).unwrap()
    }

    #[test]
    fn so3_chart_one_is_certified_order_one() {
        let cert = vanishing_order(&pulled(&catalog::so3(), 0)).unwrap();
        assert_eq!(cert.order, 1);
        let expected = GradedForm::monomial(
            3,
            &[0],
            Poly::constant(rat(1)) + Poly::var(1).pow(2) + Poly::var(2).pow(2),
        )
        .unwrap();
        assert_eq!(cert.leading, expected);
        assert!(matches!(
            cert.status,
            Nonvanishing::Certified { certificate: Certificate { reason: CertificateReason::Definite("positive"), .. } }
        ));
        assert!(!cert.transverse_like);
    }

    #[test]
    fn abelian_volume_has_order_codim_minus_one() {
        for i in 0..3 {
            let cert = vanishing_order(&pulled(&catalog::abelian(3), i)).unwrap();
            assert_eq!(cert.order, 2);
            assert!(matches!(cert.status, Nonvanishing::Certified { .. }));
        }
    }

    #[test]
    fn heis3_is_falsified() {
        let cert = vanishing_order(&pulled(&catalog::heis3(), 0)).unwrap();
        assert_eq!(cert.order, 1);
        let Nonvanishing::Falsified { point } = &cert.status else {
            panic!("{:?}", cert.status)
        };
        assert!(vanishes_at(&cert.leading, point.components()));
        assert!(point.components()[0].is_zero());
    }

    #[test]
    fn zero_form_is_rejected() {
        let cf = ChartForm {
            chart: BlowupChart::origin(2, 0).unwrap(),
            form: GradedForm::zero(2),
        };
        assert!(vanishing_order(&cf).is_err());
    }

    #[test]
    fn transverse_order_zero_is_flagged() {
        // dx1 pulled back to chart 1 stays d~x1: order 0 in codimension 2.
        let cf = blowup_pullback(
            &GradedForm::monomial(2, &[0], Poly::constant(rat(1))).unwrap(),
            &BlowupChart::origin(2, 0).unwrap(),
        )
        .unwrap();
        let cert = vanishing_order(&cf).unwrap();
        assert_eq!(cert.order, 0);
        assert!(cert.transverse_like);
    }

    #[test]
    fn aggregates() {
        let so3: Vec<_> = (0..3).map(|i| vanishing_order(&pulled(&catalog::so3(), i)).unwrap()).collect();
        assert_eq!(aggregate(&so3), AggregateOrder::Constant { order: 1 });
        let sl2: Vec<_> = (0..3).map(|i| vanishing_order(&pulled(&catalog::sl2(), i)).unwrap()).collect();
        assert!(matches!(aggregate(&sl2), AggregateOrder::NonConstant { chart: Some(_), .. }));
        assert_eq!(aggregate(&[]), AggregateOrder::Inconclusive);
    }

    #[test]
    fn divisor_point_order() {
        let c = BlowupChart::origin(3, 1).unwrap();
        let pts = divisor_points(&c, &DivisorSearch { seed: 1, random_points: 2 });
        assert_eq!(pts.len(), 1 + 2 + 2 + 2);
        assert!(pts.iter().all(|p| p[1].is_zero()));
    }
}

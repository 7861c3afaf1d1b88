//! Bundles of Lie algebras over a base `R^b` with polynomial structure
//! functions, analysed through the blowup along the zero section of the
//! dual bundle and through fibrewise restriction.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::classify::{classify_with, ClassificationVerdict, Witness};
use crate::error::{Error, Result};
use crate::exterior::GradedForm;
use crate::liealg::{jacobi_defects, Covector, LieAlgebra};
use crate::poly::{Poly, PolyRing};
use crate::sampling::CovectorSampler;

use super::chart::BlowupChart;
use super::order::{aggregate, chart_certificates, AggregateOrder, Nonvanishing, OrderCertificate};
use super::verdict::{CheckStatus, CrossCheck, VerdictConfig};
use super::{spinor, volume, PolyBivector};

/// Structure functions `c^k_ij(y)`, stored as polynomials in the variables
/// `m..m+b` of the ring `x1..xm, y1..yb`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBundle {
    m: usize,
    b: usize,
    constants: Vec<Poly>,
    name: Option<String>,
}

impl LieBundle {
    pub fn new(m: usize, b: usize, constants: Vec<Poly>, name: Option<String>) -> Result<Self> {
        Error::check_dim(m * m * m, constants.len())?;
        for (idx, p) in constants.iter().enumerate() {
            if p.terms().any(|(mono, _)| (0..m).any(|v| mono.exponent(v) > 0)) || p.support_len() > m + b {
                return Err(Error::domain(format!(
                    "structure function {idx} must depend on base variables only"
                )));
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if constants[(i * m + j) * m + k] != -constants[(j * m + i) * m + k].clone() {
                        return Err(Error::NotAntisymmetric { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        if let Some(((i, j, k), _)) = jacobi_defects(m, &constants).into_iter().next() {
            return Err(Error::domain(format!(
                "bundle bracket violates Jacobi at ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(LieBundle { m, b, constants, name })
    }

    pub fn fibre_dim(&self) -> usize {
        self.m
    }

    pub fn base_dim(&self) -> usize {
        self.b
    }

    pub fn nvars(&self) -> usize {
        self.m + self.b
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ring(&self) -> PolyRing {
        PolyRing::fibre_and_base(self.m, self.b)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.constants[(i * self.m + j) * self.m + k]
    }

    /// The fibre over a base point.
    pub fn fibre_at(&self, y: &[BigRational]) -> Result<LieAlgebra> {
        Error::check_dim(self.b, y.len())?;
        let mut point = vec![BigRational::zero(); self.m];
        point.extend_from_slice(y);
        let c = self
            .constants
            .iter()
            .map(|p| p.eval(&point).expect("point covers all variables"))
            .collect();
        LieAlgebra::new(self.m, c, None)?.validated()
    }

    /// Fibrewise linear Poisson structure `π_ij = Σ_k c^k_ij(y) x_k` on the
    /// total space.
    pub fn linear_poisson(&self) -> Result<PolyBivector> {
        let m = self.m;
        let mut entries = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let p = (0..m).fold(Poly::zero(), |acc, k| acc + self.constant(i, j, k).clone() * Poly::var(k));
                entries.push((i, j, p));
            }
        }
        let fibre = PolyBivector::from_entries(m, entries)?;
        PolyBivector::from_entries(self.nvars(), fibre.entries().map(|(i, j, p)| (i, j, p.clone())))
    }

    /// `e^{i_π}(dx_1 ∧ … ∧ dx_m ∧ dy_1 ∧ … ∧ dy_b)`.
    pub fn spinor(&self) -> Result<GradedForm<Poly>> {
        spinor(&self.linear_poisson()?, &volume(self.nvars()))
    }

    /// Charts of the blowup along the zero section.
    pub fn zero_section_charts(&self) -> Result<Vec<BlowupChart>> {
        (0..self.m)
            .map(|i| BlowupChart::zero_section(self.m, self.b, i))
            .collect()
    }
}

/// `[e_i, e_j] = f(y1, y2) Σ_k ε_ijk e_k` over `R^2`.
pub fn scaled_so3_bundle(f: Poly) -> Result<LieBundle> {
    let (m, b) = (3, 2);
    let mut c = vec![Poly::zero(); m * m * m];
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        c[(i * m + j) * m + k] = f.clone();
        c[(j * m + i) * m + k] = -f.clone();
    }
    LieBundle::new(m, b, c, Some("scaled_so3_bundle".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibreSample {
    pub base_point: Covector,
    pub classification: String,
    pub height: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "variant")]
pub enum BundleVerdict {
    Lifts { order: u32, poisson: bool },
    DoesNotLiftFibre { base_point: Covector, witnesses: [Witness; 2] },
    DoesNotLiftAcrossFibres { fibres: [FibreSample; 2] },
}

impl BundleVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            BundleVerdict::Lifts { poisson: true, .. } => "LiftsAsPoisson",
            BundleVerdict::Lifts { poisson: false, .. } => "LiftsAsDiracOnly",
            _ => "DoesNotLift",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BundleAnalysis {
    pub charts: Vec<OrderCertificate>,
    pub aggregate: AggregateOrder,
    pub fibres: Vec<FibreSample>,
    pub verdict: BundleVerdict,
    pub cross_checks: Vec<CrossCheck>,
}

/// Base points examined fibrewise: the origin, unit vectors, the base
/// coordinates of falsified divisor points, then seeded random points.
fn base_points(bundle: &LieBundle, certs: &[OrderCertificate], cfg: &VerdictConfig) -> Vec<Vec<BigRational>> {
    let (m, b) = (bundle.m, bundle.b);
    let mut out = vec![vec![BigRational::zero(); b]];
    for v in 0..b {
        let mut p = vec![BigRational::zero(); b];
        p[v] = BigRational::from_integer(1.into());
        out.push(p);
    }
    for c in certs {
        if let Nonvanishing::Falsified { point } = &c.status {
            out.push(point.components()[m..].to_vec());
        }
    }
    if b > 0 {
        let mut s = CovectorSampler::new(cfg.search.seed);
        for _ in 0..cfg.search.random_points {
            out.push(s.next_vector(b));
        }
    }
    out.dedup();
    out
}

pub fn analyze_bundle(bundle: &LieBundle, cfg: &VerdictConfig) -> Result<BundleAnalysis> {
    let m = bundle.m;
    let phi = bundle.spinor()?;
    let certs = chart_certificates(&phi, &bundle.zero_section_charts()?, &cfg.search)?;
    let agg = aggregate(&certs);

    let mut fibres = Vec::new();
    let mut by_height: BTreeMap<usize, FibreSample> = BTreeMap::new();
    let mut fibre_witness = None;
    for y in base_points(bundle, &certs, cfg) {
        let fibre = bundle.fibre_at(&y)?;
        let class = classify_with(&fibre, &cfg.falsifier)?;
        let sample = FibreSample {
            base_point: Covector(y.clone()),
            classification: class.variant_name().to_string(),
            height: class.constant_height(),
        };
        match (&class, class.constant_height()) {
            (ClassificationVerdict::NotConstantHeight { witnesses }, _) => {
                fibre_witness.get_or_insert((Covector(y), witnesses.clone()));
            }
            (_, Some(k)) => {
                by_height.entry(k).or_insert_with(|| sample.clone());
            }
            _ => {}
        }
        fibres.push(sample);
    }

    let verdict = if let Some((base_point, witnesses)) = fibre_witness {
        BundleVerdict::DoesNotLiftFibre { base_point, witnesses }
    } else if by_height.len() > 1 {
        let mut it = by_height.into_values();
        let a = it.next().expect("two heights");
        let b = it.next().expect("two heights");
        BundleVerdict::DoesNotLiftAcrossFibres { fibres: [a, b] }
    } else {
        let k = *by_height.keys().next().ok_or_else(|| Error::Internal("no fibre sampled".into()))?;
        BundleVerdict::Lifts {
            order: (m - 1 - k) as u32,
            poisson: k == 0,
        }
    };

    let check = match (&agg, &verdict) {
        (AggregateOrder::Inconclusive, _) => {
            CrossCheck::new("spinor order vs fibres", CheckStatus::Inconclusive, "some chart undetermined")
        }
        (AggregateOrder::Constant { order }, BundleVerdict::Lifts { order: expected, .. }) => CrossCheck::agreement(
            "spinor order vs fibres",
            order == expected,
            format!("chart order {order}, fibre heights give {expected}"),
        ),
        (AggregateOrder::NonConstant { .. }, BundleVerdict::Lifts { .. }) => CrossCheck::agreement(
            "spinor order vs fibres",
            false,
            "charts falsified but sampled fibres agree",
        ),
        (AggregateOrder::Constant { order }, _) => CrossCheck::agreement(
            "spinor order vs fibres",
            false,
            format!("charts certify order {order} but fibres differ"),
        ),
        (AggregateOrder::NonConstant { .. }, _) => {
            CrossCheck::agreement("spinor order vs fibres", true, "both non-constant")
        }
    };

    Ok(BundleAnalysis {
        charts: certs,
        aggregate: agg,
        fibres,
        verdict,
        cross_checks: vec![check],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn f(text: &str) -> Poly {
        PolyRing::fibre_and_base(3, 2).parse(text).unwrap()
    }

    #[test]
    fn fibres_of_scaled_so3() {
        let b = scaled_so3_bundle(f("y1")).unwrap();
        assert!(b.fibre_at(&[rat(0), rat(3)]).unwrap().is_abelian());
        let so3ish = b.fibre_at(&[rat(2), rat(0)]).unwrap();
        assert!(so3ish.killing_negative_definite());
    }

    #[test]
    fn spinor_matches_bundle_formula() {
        let b = scaled_so3_bundle(f("y1 + 2")).unwrap();
        let phi = b.spinor().unwrap();
        let mut expected = GradedForm::top(5);
        for i in 0..3 {
            let term = GradedForm::monomial(5, &[i, 3, 4], f("y1 + 2") * Poly::var(i)).unwrap();
            expected = expected.add(&term).unwrap();
        }
        assert_eq!(phi, expected);
    }

    #[test]
    fn trichotomy() {
        let cfg = VerdictConfig::default();
        let one = analyze_bundle(&scaled_so3_bundle(f("1")).unwrap(), &cfg).unwrap();
        assert_eq!(one.aggregate, AggregateOrder::Constant { order: 1 });
        assert_eq!(one.verdict, BundleVerdict::Lifts { order: 1, poisson: false });

        let zero = analyze_bundle(&scaled_so3_bundle(Poly::zero()).unwrap(), &cfg).unwrap();
        assert_eq!(zero.aggregate, AggregateOrder::Constant { order: 2 });
        assert_eq!(zero.verdict, BundleVerdict::Lifts { order: 2, poisson: true });

        let y1 = analyze_bundle(&scaled_so3_bundle(f("y1")).unwrap(), &cfg).unwrap();
        let AggregateOrder::NonConstant { point: Some(p), .. } = &y1.aggregate else {
            panic!("{:?}", y1.aggregate)
        };
        assert!(p.components()[3].is_zero());
        assert!(matches!(y1.verdict, BundleVerdict::DoesNotLiftAcrossFibres { .. }));
        for a in [&one, &zero, &y1] {
            assert!(a.cross_checks.iter().all(|c| c.status == CheckStatus::Agree));
        }
    }

    #[test]
    fn nowhere_vanishing_f_is_certified() {
        let a = analyze_bundle(&scaled_so3_bundle(f("1 + y1^2 + y2^2")).unwrap(), &VerdictConfig::default()).unwrap();
        assert_eq!(a.aggregate, AggregateOrder::Constant { order: 1 });
    }

    #[test]
    fn rejects_fibre_dependent_functions() {
        assert!(scaled_so3_bundle(f("x1")).is_err());
    }
}

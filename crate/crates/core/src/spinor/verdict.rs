//! Lift verdicts: the structural classification mapped to an outcome, with
//! the spinor certificates recorded as an independent cross-check.

use serde::Serialize;

use crate::classify::{classify_with, ClassificationVerdict, FalsifierConfig, Witness};
use crate::error::Result;
use crate::liealg::{Covector, LieAlgebra};
use crate::poly::rat;

use super::chart::BlowupChart;
use super::order::{aggregate, chart_certificates, AggregateOrder, DivisorSearch, Nonvanishing, OrderCertificate};
use super::{linear_poisson, spinor, volume};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "variant")]
pub enum LiftKind {
    LiftsAsPoisson,
    LiftsAsDiracOnly { height: usize },
    DoesNotLift { witnesses: [Witness; 2] },
}

impl LiftKind {
    pub fn name(&self) -> &'static str {
        match self {
            LiftKind::LiftsAsPoisson => "LiftsAsPoisson",
            LiftKind::LiftsAsDiracOnly { .. } => "LiftsAsDiracOnly",
            LiftKind::DoesNotLift { .. } => "DoesNotLift",
        }
    }

    pub fn height(&self) -> Option<usize> {
        match self {
            LiftKind::LiftsAsPoisson => Some(0),
            LiftKind::LiftsAsDiracOnly { height } => Some(*height),
            LiftKind::DoesNotLift { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Agree,
    Disagree,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CrossCheck {
    pub fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        CrossCheck {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }

    pub fn agreement(name: &str, agree: bool, detail: impl Into<String>) -> Self {
        let status = if agree {
            CheckStatus::Agree
        } else {
            CheckStatus::Disagree
        };
        CrossCheck::new(name, status, detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LiftVerdict {
    pub kind: LiftKind,
    pub classification: ClassificationVerdict,
    pub charts: Vec<OrderCertificate>,
    pub aggregate: AggregateOrder,
    pub cross_checks: Vec<CrossCheck>,
}

impl LiftVerdict {
    pub fn is_poisson(&self) -> bool {
        self.kind == LiftKind::LiftsAsPoisson
    }

    pub fn disagreements(&self) -> Vec<&CrossCheck> {
        self.cross_checks
            .iter()
            .filter(|c| c.status == CheckStatus::Disagree)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictConfig {
    pub falsifier: FalsifierConfig,
    pub search: DivisorSearch,
}

impl VerdictConfig {
    pub fn with_seed(seed: u64) -> Self {
        VerdictConfig {
            falsifier: FalsifierConfig::with_seed(seed),
            search: DivisorSearch {
                seed,
                ..DivisorSearch::default()
            },
        }
    }
}

impl Default for VerdictConfig {
    fn default() -> Self {
        VerdictConfig::with_seed(crate::classify::DEFAULT_SEED)
    }
}

pub fn lift_verdict(l: &LieAlgebra) -> Result<LiftVerdict> {
    lift_verdict_with(l, &VerdictConfig::default())
}

pub fn lift_verdict_with(l: &LieAlgebra, cfg: &VerdictConfig) -> Result<LiftVerdict> {
    let classification = classify_with(l, &cfg.falsifier)?;
    let kind = match (&classification, classification.constant_height()) {
        (ClassificationVerdict::NotConstantHeight { witnesses }, _) => LiftKind::DoesNotLift {
            witnesses: witnesses.clone(),
        },
        (_, Some(0)) => LiftKind::LiftsAsPoisson,
        (_, Some(k)) => LiftKind::LiftsAsDiracOnly { height: k },
        (_, None) => unreachable!("constant height present for structural verdicts"),
    };
    let m = l.dim();
    let phi = spinor(&linear_poisson(l)?, &volume(m))?;
    let charts: Vec<BlowupChart> = (0..m).map(|i| BlowupChart::origin(m, i)).collect::<Result<_>>()?;
    let certs = chart_certificates(&phi, &charts, &cfg.search)?;
    let agg = aggregate(&certs);
    let mut checks = Vec::new();

    if let LiftKind::DoesNotLift { witnesses } = &kind {
        let h0 = l.height(&witnesses[0].covector)?;
        let h1 = l.height(&witnesses[1].covector)?;
        checks.push(CrossCheck::agreement(
            "witness heights",
            h0 == witnesses[0].height && h1 == witnesses[1].height && h0 != h1,
            format!("recomputed heights {h0} and {h1}"),
        ));
    }

    let spinor_check = match (&agg, kind.height()) {
        (AggregateOrder::Inconclusive, _) => {
            CrossCheck::new("spinor order", CheckStatus::Inconclusive, "some chart undetermined")
        }
        (AggregateOrder::Constant { order }, Some(k)) => CrossCheck::agreement(
            "spinor order",
            *order as usize + 1 + k == m,
            format!("constant order {order}, expected dim - 1 - height = {}", m - 1 - k),
        ),
        (AggregateOrder::Constant { order }, None) => CrossCheck::agreement(
            "spinor order",
            false,
            format!("constant order {order} but heights are not constant"),
        ),
        (AggregateOrder::NonConstant { .. }, Some(k)) => CrossCheck::agreement(
            "spinor order",
            false,
            format!("order not constant but constant height {k}"),
        ),
        (AggregateOrder::NonConstant { .. }, None) => {
            CrossCheck::agreement("spinor order", true, "order not constant along the divisor")
        }
    };
    checks.push(spinor_check);

    if let Some(order) = agg.constant() {
        let poisson_by_order = order as usize + 1 == m;
        checks.push(CrossCheck::agreement(
            "Poisson iff order = m - 1",
            poisson_by_order == (kind == LiftKind::LiftsAsPoisson),
            format!("order {order}, m - 1 = {}", m - 1),
        ));
    }

    // A divisor point where the leading form vanishes is a covector whose
    // line order exceeds the chart order, hence of smaller height.
    for c in &certs {
        if let Nonvanishing::Falsified { point } = &c.status {
            let i = c.chart.chart_var();
            let mut xi = point.components().to_vec();
            xi[i] = rat(1);
            let xi = Covector::new(xi);
            let h = l.height(&xi)?;
            let line_order = m - 1 - h;
            checks.push(CrossCheck::agreement(
                "divisor witness",
                line_order > c.order as usize,
                format!("{} at {xi}: height {h}, line order {line_order} > chart order {}", c.chart, c.order),
            ));
            break;
        }
    }

    Ok(LiftVerdict {
        kind,
        classification,
        charts: certs,
        aggregate: agg,
        cross_checks: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_io::catalog;

    #[test]
    fn catalog_verdicts() {
        let v = lift_verdict(&catalog::so3()).unwrap();
        assert_eq!(v.kind, LiftKind::LiftsAsDiracOnly { height: 1 });
        assert_eq!(v.aggregate, AggregateOrder::Constant { order: 1 });
        assert!(v.disagreements().is_empty());

        let v = lift_verdict(&catalog::diagonal_affine(2)).unwrap();
        assert_eq!(v.kind, LiftKind::LiftsAsPoisson);
        assert_eq!(v.aggregate, AggregateOrder::Constant { order: 2 });

        let v = lift_verdict(&catalog::sl2()).unwrap();
        assert!(matches!(v.kind, LiftKind::DoesNotLift { .. }));
        assert!(v.disagreements().is_empty(), "{:?}", v.cross_checks);
        assert!(v.cross_checks.iter().any(|c| c.name == "divisor witness"));
    }

    #[test]
    fn abelian_one_is_poisson_with_order_zero() {
        let v = lift_verdict(&catalog::abelian(1)).unwrap();
        assert_eq!(v.kind, LiftKind::LiftsAsPoisson);
        assert_eq!(v.aggregate, AggregateOrder::Constant { order: 0 });
        assert!(!v.charts[0].transverse_like);
    }
}

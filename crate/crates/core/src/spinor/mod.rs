//! Polynomial differential forms on coordinate charts: linear Poisson
//! bivectors, spinors `e^{i_π} λ`, pullback along the blowdown map,
//! vanishing orders along the exceptional divisor and lift verdicts.

pub mod bivector;
pub mod bundle;
pub mod chart;
pub mod line;
pub mod order;
pub mod perturb;
pub mod verdict;

pub use bivector::{linear_poisson, spinor, volume, PolyBivector};
pub use chart::{blowup_pullback, BlowupChart, ChartForm};
pub use line::{preferred_chart, restrict_to_line, LineRestriction};
pub use order::{vanishing_order, AggregateOrder, Nonvanishing, OrderCertificate};
pub use verdict::{lift_verdict, LiftKind, LiftVerdict};

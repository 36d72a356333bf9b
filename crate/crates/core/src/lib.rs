//! Partial actions of finite topological groups: globalization, quotient
//! actions by subgroups, invariant metrics and inverse limits of quotients.

pub mod action;
pub mod fixture;
pub mod generate;
pub mod globalization;
pub mod groups;
pub mod inverse_limit;
pub mod metric;
pub mod quotient;
pub mod topology;

use thiserror::Error;

pub use action::{Checks, PartialAction, PartialActionError};
pub use globalization::{globalize, EnvelopingSpace};
pub use groups::{FiniteGroup, GroupError, GroupHom, TopologicalGroup};
pub use metric::{FiniteMetric, Hyperspace, MetricError};
pub use topology::{ContinuousMap, FiniteSpace, PointSet, TopologyError};

/// Exact rationals used for all reported distances.
pub type Rational = num_rational::BigRational;
pub type RationalMetric = FiniteMetric<Rational>;
pub type RationalHyperspace = Hyperspace<Rational>;

/// Errors from the higher-level constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Action(#[from] PartialActionError),
    #[error(transparent)]
    Violation(#[from] TheoremViolation),
    #[error("G·X does not cover the ambient space")]
    GXNotAllOfY,
    #[error("{0} and {1} are not nested")]
    NotNested(String, String),
    #[error("index poset is not directed: {0}")]
    NotDirected(String),
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("quotient routes disagree at coset {coset}, class {class}")]
    RouteMismatch { coset: String, class: String },
    #[error("X_G is not T1, so no compatible metric exists")]
    NotMetrizable,
    #[error("metric carrier does not match the space")]
    CarrierMismatch,
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// A checked consequence of the theory failed on a concrete instance.
///
/// Distinct from input validation errors: seeing one means a bug in the
/// construction, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("theorem violation [{check}]: {detail}")]
pub struct TheoremViolation {
    pub check: &'static str,
    pub detail: String,
}

pub(crate) fn ensure(
    cond: bool,
    check: &'static str,
    detail: impl FnOnce() -> String,
) -> Result<(), TheoremViolation> {
    if cond {
        Ok(())
    } else {
        Err(TheoremViolation { check, detail: detail() })
    }
}

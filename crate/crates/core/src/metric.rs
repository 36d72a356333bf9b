//! Exact metrics on finite carriers, invariant metrics and the Hausdorff
//! metric hyperspace.
//!
//! Metrics are generic over an ordered exact scalar. Averaging divides by the
//! group order, so it additionally needs a field ([`ExactField`]); rationals
//! are the intended instance.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Num;
use serde::Serialize;

use crate::action::{Checks, PartialAction};
use crate::globalization::EnvelopingSpace;
use crate::topology::{set_name, FiniteSpace, PointSet};
use crate::{ensure, Error, TheoremViolation};

/// Distance values: exact, totally ordered.
pub trait Scalar: Clone + Ord + Num + Debug + Display {}

impl<T: Clone + Ord + Num + Debug + Display> Scalar for T {}

/// Scalars with exact division by positive integers.
pub trait ExactField: Scalar {}

impl<T> ExactField for Ratio<T> where T: Clone + Integer + Debug + Display {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("distance matrix is not {0}×{0}")]
    Shape(usize),
    #[error("d({0},{0}) ≠ 0")]
    NonZeroDiagonal(String),
    #[error("d({0},{1}) is not positive")]
    NotPositive(String, String),
    #[error("d({0},{1}) ≠ d({1},{0})")]
    NotSymmetric(String, String),
    #[error("triangle inequality fails for {0}, {1}, {2}")]
    Triangle(String, String, String),
}

/// A metric on a finite ordered point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetric<S> {
    points: Vec<String>,
    dist: Vec<Vec<S>>,
}

impl<S: Scalar> FiniteMetric<S> {
    pub fn new(points: Vec<String>, dist: Vec<Vec<S>>) -> Result<Self, MetricError> {
        let n = points.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(MetricError::Shape(n));
        }
        let name = |i: usize| points[i].clone();
        for x in 0..n {
            if !dist[x][x].is_zero() {
                return Err(MetricError::NonZeroDiagonal(name(x)));
            }
            for y in 0..n {
                if dist[x][y] != dist[y][x] {
                    return Err(MetricError::NotSymmetric(name(x), name(y)));
                }
                if x != y && dist[x][y] <= S::zero() {
                    return Err(MetricError::NotPositive(name(x), name(y)));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if dist[x][z] > dist[x][y].clone() + dist[y][z].clone() {
                        return Err(MetricError::Triangle(name(x), name(y), name(z)));
                    }
                }
            }
        }
        Ok(Self { points, dist })
    }

    pub fn from_fn(points: Vec<String>, f: impl Fn(usize, usize) -> S) -> Result<Self, MetricError> {
        let n = points.len();
        let dist = (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect();
        Self::new(points, dist)
    }

    /// Distance one between distinct points.
    pub fn unit(points: Vec<String>) -> Self {
        Self::from_fn(points, |x, y| if x == y { S::zero() } else { S::one() }).expect("unit metric")
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn dist(&self, x: usize, y: usize) -> &S {
        &self.dist[x][y]
    }

    pub fn matrix(&self) -> &[Vec<S>] {
        &self.dist
    }

    /// Sorted distinct distance values, zero included.
    pub fn values(&self) -> Vec<S> {
        let mut values: Vec<S> = self.dist.iter().flatten().cloned().collect();
        values.push(S::zero());
        values.sort();
        values.dedup();
        values
    }

    /// The matrix rendered with `Display`, for reports.
    pub fn display_matrix(&self) -> Vec<Vec<String>> {
        self.dist.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub invariant: bool,
    /// `(g, x, y)` with `d(g·x, g·y) ≠ d(x, y)`.
    pub witness: Option<(String, String, String)>,
}

/// `d(g·x, g·y) = d(x, y)` for all `g` and `x, y ∈ X_{g⁻¹}`.
pub fn is_invariant_metric<S: Scalar>(eta: &PartialAction, d: &FiniteMetric<S>) -> Result<InvarianceReport, Error> {
    if d.points() != eta.space().points() {
        return Err(Error::CarrierMismatch);
    }
    let n = d.len();
    for g in 0..eta.group().order() {
        for x in 0..n {
            for y in 0..n {
                if let (Some(gx), Some(gy)) = (eta.act(g, x), eta.act(g, y)) {
                    if d.dist(gx, gy) != d.dist(x, y) {
                        let witness = (
                            eta.group().group().name(g).to_string(),
                            d.points[x].clone(),
                            d.points[y].clone(),
                        );
                        return Ok(InvarianceReport { invariant: false, witness: Some(witness) });
                    }
                }
            }
        }
    }
    Ok(InvarianceReport { invariant: true, witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantMetric<S> {
    pub metric_on_xg: FiniteMetric<S>,
    pub metric_on_x: FiniteMetric<S>,
}

/// Averages a seed metric on `X_G` over `G` and restricts it along `ι`.
///
/// The seed defaults to the unit metric on the classes.
pub fn invariant_metric_via_globalization<S: ExactField>(
    eta: &PartialAction,
    env: &EnvelopingSpace,
    seed: Option<&FiniteMetric<S>>,
) -> Result<InvariantMetric<S>, Error> {
    if !env.carrier.separation().t1 {
        return Err(Error::NotMetrizable);
    }
    let classes: Vec<String> = env.carrier.points().to_vec();
    let unit;
    let seed = match seed {
        Some(s) if s.points() != classes.as_slice() => return Err(Error::CarrierMismatch),
        Some(s) => s,
        None => {
            unit = FiniteMetric::unit(classes.clone());
            &unit
        }
    };
    let order = eta.group().order();
    let scale = (0..order).fold(S::zero(), |acc, _| acc + S::one());
    let mu = &env.mu;
    let averaged = |p: usize, q: usize| {
        let total = (0..order).fold(S::zero(), |acc, g| {
            acc + seed.dist(mu.act(g, p).expect("global"), mu.act(g, q).expect("global")).clone()
        });
        total / scale.clone()
    };
    let metric_on_xg = FiniteMetric::from_fn(classes, averaged).map_err(|e| TheoremViolation {
        check: "averaged-metric",
        detail: e.to_string(),
    })?;
    let invariance = is_invariant_metric(mu, &metric_on_xg)?;
    ensure(invariance.invariant, "averaged-metric-invariant", || {
        format!("averaged metric is not μ-invariant: {:?}", invariance.witness)
    })?;

    let iota = env.iota.mapping();
    let metric_on_x = FiniteMetric::from_fn(eta.space().points().to_vec(), |x, y| {
        metric_on_xg.dist(iota[x], iota[y]).clone()
    })
    .map_err(|e| TheoremViolation { check: "restricted-metric", detail: e.to_string() })?;
    let restricted = is_invariant_metric(eta, &metric_on_x)?;
    ensure(restricted.invariant, "restricted-metric-invariant", || {
        format!("restricted metric is not η-invariant: {:?}", restricted.witness)
    })?;
    ensure(eta.space().is_discrete(), "restricted-metric-compatible", || {
        "X is not discrete, so the restricted metric does not induce its topology".into()
    })?;
    Ok(InvariantMetric { metric_on_xg, metric_on_x })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitMetrizability {
    pub orbit_t1: bool,
    pub orbit_regular: bool,
    pub orbit_metrizable: bool,
    pub consistent: bool,
}

pub fn orbit_metrizability_report(eta: &PartialAction) -> Result<OrbitMetrizability, TheoremViolation> {
    let sep = eta.orbit_space()?.quotient.separation();
    let consistent = sep.metrizable == (sep.regular && sep.t1);
    ensure(consistent, "orbit-metrizability", || {
        "metrizability of the orbit space disagrees with regular ∧ T1".into()
    })?;
    Ok(OrbitMetrizability {
        orbit_t1: sep.t1,
        orbit_regular: sep.regular,
        orbit_metrizable: sep.metrizable,
        consistent,
    })
}

/// Nonempty subsets of a metric space with the Hausdorff metric.
///
/// Subsets are listed in bitmask order, so singletons of `x` precede any set
/// whose largest point exceeds `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperspace<S> {
    pub base: FiniteMetric<S>,
    pub subsets: Vec<PointSet>,
    pub metric: FiniteMetric<S>,
}

impl<S> Hyperspace<S> {
    pub fn index_of(&self, set: &PointSet) -> Option<usize> {
        let mask: usize = set.iter().map(|&x| 1 << x).sum();
        (mask > 0 && mask <= self.subsets.len()).then(|| mask - 1)
    }
}

/// `max(max_a min_b d(a,b), max_b min_a d(a,b))`.
pub fn hausdorff_distance<S: Scalar>(d: &FiniteMetric<S>, a: &PointSet, b: &PointSet) -> S {
    let directed = |from: &PointSet, to: &PointSet| {
        from.iter()
            .map(|&x| to.iter().map(|&y| d.dist(x, y).clone()).min().expect("nonempty"))
            .max()
            .expect("nonempty")
    };
    directed(a, b).max(directed(b, a))
}

pub fn hausdorff_metric<S: Scalar>(d: &FiniteMetric<S>) -> Result<Hyperspace<S>, TheoremViolation> {
    let n = d.len();
    let subsets: Vec<PointSet> = (1usize..1 << n).map(|m| (0..n).filter(|&x| m >> x & 1 == 1).collect()).collect();
    let names = subsets
        .iter()
        .map(|s| set_name(s.iter().map(|&x| d.points[x].as_str())))
        .collect();
    let metric = FiniteMetric::from_fn(names, |i, j| hausdorff_distance(d, &subsets[i], &subsets[j]))
        .map_err(|e| TheoremViolation { check: "hausdorff-metric", detail: e.to_string() })?;
    Ok(Hyperspace { base: d.clone(), subsets, metric })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperspaceAction<S> {
    pub hyperspace: Hyperspace<S>,
    /// `2^η`: `A ↦ η_g(A)` for `A ⊆ X_{g⁻¹}`, on the discrete carrier.
    pub action: PartialAction,
    pub base_invariant: bool,
    pub lifted_invariant: bool,
}

pub fn hyperspace_action<S: Scalar>(eta: &PartialAction, d: &FiniteMetric<S>) -> Result<HyperspaceAction<S>, Error> {
    if d.points() != eta.space().points() {
        return Err(Error::CarrierMismatch);
    }
    let hyperspace = hausdorff_metric(d)?;
    let carrier = FiniteSpace::discrete(hyperspace.metric.points().iter().cloned());
    let table = (0..eta.group().order())
        .map(|g| {
            hyperspace
                .subsets
                .iter()
                .map(|a| {
                    let image: Option<PointSet> = a.iter().map(|&x| eta.act(g, x)).collect();
                    image.map(|img| hyperspace.index_of(&img).expect("nonempty image"))
                })
                .collect()
        })
        .collect();
    let action = PartialAction::from_table(eta.group().clone(), carrier, table, Checks::Topological)?;
    let base_invariant = is_invariant_metric(eta, d)?.invariant;
    let lifted_invariant = is_invariant_metric(&action, &hyperspace.metric)?.invariant;
    ensure(!base_invariant || lifted_invariant, "hyperspace-invariance", || {
        "invariance of d does not propagate to the Hausdorff metric".into()
    })?;
    Ok(HyperspaceAction { hyperspace, action, base_invariant, lifted_invariant })
}

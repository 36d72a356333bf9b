//! Inverse systems of orbit spaces `X/∼_{H_i}` and their limits.

use serde::Serialize;

use crate::action::{is_g_map, Checks, PartialAction};
use crate::quotient::{bonding_map, build_quotient_action, BondingMap, QuotientActionBundle};
use crate::topology::{close_preorder, map_properties, ContinuousMap, FiniteSpace, PointSet};
use crate::{ensure, Error, TheoremViolation};

/// Thread enumeration is exponential in the number of indices.
pub const MAX_INDICES: usize = 6;

/// A finite directed poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedSet {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl DirectedSet {
    /// Builds the order generated by `pairs` (`(i, j)` meaning `i ≤ j`).
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, Error> {
        let n = names.len();
        if n == 0 || n > MAX_INDICES {
            return Err(Error::NotDirected(format!("index set must have 1 to {MAX_INDICES} elements")));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::NotDirected(format!("unknown index in ({i}, {j})")));
            }
            leq[i][j] = true;
        }
        close_preorder(&mut leq);
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::NotDirected(format!("{} and {} form a cycle", names[i], names[j])));
                }
                if !(0..n).any(|k| leq[i][k] && leq[j][k]) {
                    return Err(Error::NotDirected(format!("{} and {} have no upper bound", names[i], names[j])));
                }
            }
        }
        Ok(Self { names, leq })
    }

    /// `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Result<Self, Error> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new((1..=n).map(|i| i.to_string()).collect(), &pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Finite directed sets always have one.
    pub fn greatest(&self) -> usize {
        (0..self.len())
            .find(|&m| (0..self.len()).all(|i| self.leq[i][m]))
            .expect("finite directed set has a greatest element")
    }
}

/// `X_i = X/∼_{H_i}` with bonds `π_i^j: X_j → X_i` for `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSystem {
    pub base: PartialAction,
    pub index: DirectedSet,
    pub subgroups: Vec<PointSet>,
    pub bundles: Vec<QuotientActionBundle>,
    /// `bonds[i][j]` is `π_i^j` when `i ≤ j`.
    pub bonds: Vec<Vec<Option<BondingMap>>>,
}

impl InverseSystem {
    pub fn space(&self, i: usize) -> &FiniteSpace {
        &self.bundles[i].z
    }
}

pub fn build_system(eta: &PartialAction, index: DirectedSet, subgroups: Vec<PointSet>) -> Result<InverseSystem, Error> {
    let n = index.len();
    if subgroups.len() != n {
        return Err(Error::NotDirected("one subgroup per index is required".into()));
    }
    let grp = eta.group().group();
    for i in 0..n {
        for j in 0..n {
            if index.leq(i, j) && !subgroups[j].is_subset(&subgroups[i]) {
                return Err(Error::NotNested(
                    format!("{} = {}", index.name(i), grp.subset_name(&subgroups[i])),
                    format!("{} = {}", index.name(j), grp.subset_name(&subgroups[j])),
                ));
            }
        }
    }
    let bundles = subgroups
        .iter()
        .map(|h| build_quotient_action(eta, h))
        .collect::<Result<Vec<_>, _>>()?;
    let mut bonds = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if index.leq(i, j) {
                bonds[i][j] = Some(bonding_map(&bundles[j], &bundles[i])?);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if index.leq(i, j) && index.leq(j, k) {
                    let bond = |a: usize, b: usize| bonds[a][b].as_ref().expect("ordered").map.clone();
                    ensure(bond(j, k).then(&bond(i, j)) == bond(i, k), "bond-composition", || {
                        format!("bonds do not compose along {} ≤ {} ≤ {}", index.name(i), index.name(j), index.name(k))
                    })?;
                }
            }
        }
    }
    Ok(InverseSystem { base: eta.clone(), index, subgroups, bundles, bonds })
}

/// Bond-compatible threads with the subspace topology of the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSpace {
    pub threads: Vec<Vec<usize>>,
    pub space: FiniteSpace,
    pub projections: Vec<ContinuousMap>,
}

pub fn inverse_limit(system: &InverseSystem) -> Result<LimitSpace, TheoremViolation> {
    let n = system.index.len();
    let sizes: Vec<usize> = (0..n).map(|i| system.space(i).len()).collect();
    let compatible = |t: &[usize]| {
        (0..n).all(|i| {
            (0..n).all(|j| match &system.bonds[i][j] {
                Some(b) => b.map.apply(t[j]) == t[i],
                None => true,
            })
        })
    };
    let mut threads = Vec::new();
    let mut current = vec![0; n];
    if sizes.iter().all(|&s| s > 0) {
        loop {
            if compatible(&current) {
                threads.push(current.clone());
            }
            let Some(pos) = (0..n).rev().find(|&i| current[i] + 1 < sizes[i]) else { break };
            current[pos] += 1;
            for c in current.iter_mut().skip(pos + 1) {
                *c = 0;
            }
        }
    }
    let names: Vec<String> = threads
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().enumerate().map(|(i, &c)| system.space(i).name(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..threads.len())
        .flat_map(|a| (0..threads.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| (0..n).all(|i| system.space(i).leq(threads[a][i], threads[b][i])))
        .collect();
    let space = FiniteSpace::from_preorder(names, &pairs).expect("componentwise order");
    let projections = (0..n)
        .map(|i| {
            ContinuousMap::new(space.clone(), system.space(i).clone(), threads.iter().map(|t| t[i]).collect())
                .map_err(|e| TheoremViolation { check: "limit-projection", detail: e.to_string() })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let top = system.index.greatest();
    ensure(threads.len() == system.space(top).len(), "threads-biject-with-top", || {
        format!("{} threads but {} points at the greatest index", threads.len(), system.space(top).len())
    })?;
    Ok(LimitSpace { threads, space, projections })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LimitHypotheses {
    pub x_hausdorff: bool,
    pub domain_closed: bool,
    /// `⋂ H_i = {1}`, i.e. `G` is the limit of the `G/H_i`.
    pub subgroups_separate: bool,
}

impl LimitHypotheses {
    pub fn hold(&self) -> bool {
        self.x_hausdorff && self.domain_closed && self.subgroups_separate
    }
}

pub fn limit_hypotheses(system: &InverseSystem) -> LimitHypotheses {
    let meet = system
        .subgroups
        .iter()
        .fold(system.base.group().group().full(), |acc, h| acc.intersection(h).copied().collect());
    LimitHypotheses {
        x_hausdorff: system.base.space().separation().hausdorff,
        domain_closed: system.base.is_domain_closed(),
        subgroups_separate: meet == system.base.group().group().trivial_subgroup(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport {
    pub limit: LimitSpace,
    /// `x ↦ (π_i(x))_i`.
    pub lambda: ContinuousMap,
    /// `η` transported along `λ`.
    pub theta: PartialAction,
    pub hypotheses: LimitHypotheses,
    pub flags: LambdaFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LambdaFlags {
    pub injective: bool,
    pub surjective: bool,
    pub continuous: bool,
    pub open_onto_image: bool,
    pub g_map: bool,
    pub g_equivalence: bool,
    pub separates_closed_sets: bool,
}

pub fn lambda_equivalence(system: &InverseSystem) -> Result<LambdaReport, Error> {
    let hypotheses = limit_hypotheses(system);
    if !hypotheses.hold() {
        let missing: Vec<&str> = [
            (hypotheses.x_hausdorff, "X Hausdorff"),
            (hypotheses.domain_closed, "G∗X closed"),
            (hypotheses.subgroups_separate, "⋂H_i trivial"),
        ]
        .iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, s)| *s)
        .collect();
        return Err(Error::HypothesesNotMet(missing.join(", ")));
    }
    let limit = inverse_limit(system)?;
    let eta = &system.base;
    let x = eta.space();
    let mapping: Vec<usize> = (0..x.len())
        .map(|p| {
            let thread: Vec<usize> = system.bundles.iter().map(|b| b.pi_h.apply(p)).collect();
            limit.threads.iter().position(|t| *t == thread).expect("λ(x) is a thread")
        })
        .collect();
    let props = map_properties(x, &limit.space, &mapping).map_err(|e| TheoremViolation {
        check: "lambda-continuous",
        detail: e.to_string(),
    })?;
    ensure(props.injective, "lambda-injective", || "λ is not injective".into())?;
    ensure(props.surjective, "lambda-surjective", || "λ misses a thread".into())?;
    ensure(props.continuous, "lambda-continuous", || "λ is not continuous".into())?;
    ensure(props.open_map, "lambda-open", || "λ is not open onto its image".into())?;

    let mut inverse = vec![0; limit.threads.len()];
    for (p, &t) in mapping.iter().enumerate() {
        inverse[t] = p;
    }
    let table = (0..eta.group().order())
        .map(|g| inverse.iter().map(|&p| eta.act(g, p).map(|q| mapping[q])).collect())
        .collect();
    let theta = PartialAction::from_table(eta.group().clone(), limit.space.clone(), table, Checks::Topological)
        .map_err(|e| TheoremViolation { check: "theta-partial-action", detail: e.to_string() })?;
    let report = is_g_map(&mapping, eta, &theta).map_err(|e| TheoremViolation {
        check: "lambda-g-map",
        detail: e.to_string(),
    })?;
    ensure(report.is_g_map && report.is_g_equivalence, "lambda-g-equivalence", || {
        "λ is not a G-equivalence".into()
    })?;

    let separates_closed_sets = x.opens().iter().all(|open| {
        let closed: PointSet = x.full().difference(open).copied().collect();
        open.iter().all(|&p| {
            system.bundles.iter().any(|b| {
                let image = b.pi_h.image(&closed);
                !b.z.closure(&image).contains(&b.pi_h.apply(p))
            })
        })
    });
    ensure(separates_closed_sets, "projections-separate", || {
        "the projections do not separate points from closed sets".into()
    })?;

    let lambda = ContinuousMap::new(x.clone(), limit.space.clone(), mapping).expect("continuous");
    Ok(LambdaReport {
        limit,
        lambda,
        theta,
        hypotheses,
        flags: LambdaFlags {
            injective: props.injective,
            surjective: props.surjective,
            continuous: props.continuous,
            open_onto_image: props.open_map,
            g_map: report.is_g_map,
            g_equivalence: report.is_g_equivalence,
            separates_closed_sets,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FiniteGroup, TopologicalGroup};

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().copied().collect()
    }

    fn rotation() -> PartialAction {
        PartialAction::global(
            TopologicalGroup::discrete(FiniteGroup::cyclic(4)),
            FiniteSpace::discrete(["0", "1", "2", "3"]),
            |g, x| (g + x) % 4,
        )
        .unwrap()
    }

    #[test]
    fn chain_system() {
        let eta = rotation();
        let system = build_system(&eta, DirectedSet::chain(2).unwrap(), vec![set(&[0, 2]), set(&[0])]).unwrap();
        assert_eq!(system.space(0).len(), 2);
        assert_eq!(system.space(1).len(), 4);
        let bond = system.bonds[0][1].as_ref().unwrap();
        assert_eq!(bond.map.apply(0), bond.map.apply(2));
        let report = lambda_equivalence(&system).unwrap();
        assert_eq!(report.limit.threads.len(), 4);
        assert!(report.flags.g_equivalence && report.flags.separates_closed_sets);
    }

    #[test]
    fn not_nested_and_not_directed() {
        let eta = rotation();
        let err = build_system(&eta, DirectedSet::chain(2).unwrap(), vec![set(&[0]), set(&[0, 2])]).unwrap_err();
        assert!(matches!(err, Error::NotNested(..)));
        let v = DirectedSet::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (0, 2)]);
        assert!(matches!(v, Err(Error::NotDirected(_))));
    }

    #[test]
    fn single_index() {
        let eta = rotation();
        let system = build_system(&eta, DirectedSet::chain(1).unwrap(), vec![set(&[0])]).unwrap();
        assert_eq!(system.bonds[0][0].as_ref().unwrap().map, ContinuousMap::identity(system.space(0)));
        let one = build_system(&eta, DirectedSet::chain(1).unwrap(), vec![set(&[0, 1, 2, 3])]).unwrap();
        assert_eq!(inverse_limit(&one).unwrap().threads.len(), 1);
        assert!(matches!(lambda_equivalence(&one), Err(Error::HypothesesNotMet(_))));
    }
}

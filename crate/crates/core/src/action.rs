//! Partial actions of finite topological groups on finite spaces.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::groups::{GroupError, GroupHom, TopologicalGroup};
use crate::topology::{map_properties, set_name, ContinuousMap, FiniteSpace, PointSet, Separation, TopologyError};
use crate::{ensure, TheoremViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartialActionError {
    #[error("unknown group element {0}")]
    UnknownElement(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("the map of {g} is not defined exactly on the domain of {g}⁻¹")]
    MapDomainMismatch { g: String },
    #[error("the map of {g} does not have the domain of {g} as image")]
    MapImageMismatch { g: String },
    #[error("the map of {0} is not injective")]
    NotInjective(String),
    #[error("the identity must act on the whole space")]
    IdentityDomainNotFull,
    #[error("the identity must act as the identity map")]
    IdentityNotIdentity,
    #[error("domain of {0} is not open")]
    DomainNotOpen(String),
    #[error("the map of {0} is not a homeomorphism between its domains")]
    NotHomeomorphism(String),
    #[error("domain law fails for ({0}, {1})")]
    DomainLawFails(String, String),
    #[error("composition law fails for ({0}, {1}) at {2}")]
    CompositionLawFails(String, String, String),
    #[error("evaluation map is not continuous at ({g},{x}) ⊑ ({h},{y})")]
    EvaluationNotContinuous { g: String, x: String, h: String, y: String },
    #[error("graph relation disagrees with the family description: {0}")]
    AxiomCrossCheck(String),
    #[error("action is not global")]
    NotGlobal,
    #[error("subset is not open")]
    NotOpenSubset,
    #[error("actions are over different groups")]
    GroupMismatch,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// Which axioms `validate` enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Checks {
    /// Set-theoretic axioms plus open domains, homeomorphic maps and a
    /// continuous evaluation map.
    #[default]
    Topological,
    /// Set-theoretic axioms only.
    SetTheoretic,
}

/// A validated partial action `η` of `G` on `X`.
///
/// `table[g][x]` is `Some(g·x)` exactly when `x ∈ X_{g⁻¹}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    group: TopologicalGroup,
    space: FiniteSpace,
    table: Vec<Vec<Option<usize>>>,
}

impl PartialAction {
    /// Validates a partial action given as domains `X_g` and bijections
    /// `η_g: X_{g⁻¹} → X_g` (each map keyed by the points of `X_{g⁻¹}`).
    pub fn validate(
        group: TopologicalGroup,
        space: FiniteSpace,
        domains: &[PointSet],
        maps: &[BTreeMap<usize, usize>],
        checks: Checks,
    ) -> Result<Self, PartialActionError> {
        let (order, n) = (group.order(), space.len());
        let gname = |g: usize| group.group().name(g).to_string();
        if domains.len() != order || maps.len() != order {
            return Err(PartialActionError::UnknownElement(format!(
                "expected {order} domains and maps"
            )));
        }
        for (g, dom) in domains.iter().enumerate() {
            if let Some(&x) = dom.iter().find(|&&x| x >= n) {
                return Err(PartialActionError::UnknownPoint(format!("{x} in domain of {}", gname(g))));
            }
        }
        let mut table = vec![vec![None; n]; order];
        for (g, map) in maps.iter().enumerate() {
            if let Some((&x, &y)) = map.iter().find(|(&x, &y)| x >= n || y >= n) {
                return Err(PartialActionError::UnknownPoint(format!("{x}→{y} in map of {}", gname(g))));
            }
            let inv = group.group().inv(g);
            let keys: PointSet = map.keys().copied().collect();
            if keys != domains[inv] {
                return Err(PartialActionError::MapDomainMismatch { g: gname(g) });
            }
            let image: PointSet = map.values().copied().collect();
            if image.len() != map.len() {
                return Err(PartialActionError::NotInjective(gname(g)));
            }
            if image != domains[g] {
                return Err(PartialActionError::MapImageMismatch { g: gname(g) });
            }
            for (&x, &y) in map {
                table[g][x] = Some(y);
            }
        }
        let action = Self { group, space, table };
        action.check_axioms(checks)?;
        Ok(action)
    }

    /// Validates a partial action given by its evaluation table.
    pub fn from_table(
        group: TopologicalGroup,
        space: FiniteSpace,
        table: Vec<Vec<Option<usize>>>,
        checks: Checks,
    ) -> Result<Self, PartialActionError> {
        if table.len() != group.order() || table.iter().any(|row| row.len() != space.len()) {
            return Err(PartialActionError::UnknownElement("table shape".into()));
        }
        let maps: Vec<BTreeMap<usize, usize>> = table
            .iter()
            .map(|row| row.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y))).collect())
            .collect();
        let domains: Vec<PointSet> = maps.iter().map(|m| m.values().copied().collect()).collect();
        Self::validate(group, space, &domains, &maps, checks)
    }

    /// The global action `(g, x) ↦ f(g, x)`.
    pub fn global(
        group: TopologicalGroup,
        space: FiniteSpace,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, PartialActionError> {
        let table = (0..group.order())
            .map(|g| (0..space.len()).map(|x| Some(f(g, x))).collect())
            .collect();
        Self::from_table(group, space, table, Checks::Topological)
    }

    /// The action in which every element acts as the identity.
    pub fn trivial_global(group: TopologicalGroup, space: FiniteSpace) -> Self {
        Self::global(group, space, |_, x| x).expect("trivial action is valid")
    }

    fn check_axioms(&self, checks: Checks) -> Result<(), PartialActionError> {
        let g_ = self.group.group();
        let (order, n) = (g_.order(), self.space.len());
        let gname = |g: usize| g_.name(g).to_string();
        let e = g_.identity();

        if (0..n).any(|x| self.table[e][x].is_none()) {
            return Err(PartialActionError::IdentityDomainNotFull);
        }
        if (0..n).any(|x| self.table[e][x] != Some(x)) {
            return Err(PartialActionError::IdentityNotIdentity);
        }
        if checks == Checks::Topological {
            for g in 0..order {
                if !self.space.is_open(&self.domain(g)) {
                    return Err(PartialActionError::DomainNotOpen(gname(g)));
                }
            }
            for g in 0..order {
                let src = self.domain(g_.inv(g));
                for &x in &src {
                    for &y in &src {
                        let (fx, fy) = (self.table[g][x].unwrap(), self.table[g][y].unwrap());
                        if self.space.leq(x, y) != self.space.leq(fx, fy) {
                            return Err(PartialActionError::NotHomeomorphism(gname(g)));
                        }
                    }
                }
            }
        }
        for g in 0..order {
            for h in 0..order {
                let lhs: PointSet = self
                    .domain(g_.inv(g))
                    .intersection(&self.domain(h))
                    .map(|&x| self.table[g][x].unwrap())
                    .collect();
                let rhs: PointSet = self.domain(g).intersection(&self.domain(g_.mul(g, h))).copied().collect();
                if lhs != rhs {
                    return Err(PartialActionError::DomainLawFails(gname(g), gname(h)));
                }
            }
        }
        for g in 0..order {
            for h in 0..order {
                let gh = g_.mul(g, h);
                for x in 0..n {
                    let (Some(hx), Some(ghx)) = (self.table[h][x], self.table[gh][x]) else {
                        continue;
                    };
                    if self.table[g][hx] != Some(ghx) {
                        return Err(PartialActionError::CompositionLawFails(
                            gname(g),
                            gname(h),
                            self.space.name(x).into(),
                        ));
                    }
                }
            }
        }
        if checks == Checks::Topological {
            let top = self.group.topology();
            for g in 0..order {
                for x in 0..n {
                    let Some(gx) = self.table[g][x] else { continue };
                    for h in (0..order).filter(|&h| top.leq(g, h)) {
                        for y in (0..n).filter(|&y| self.space.leq(x, y)) {
                            if let Some(hy) = self.table[h][y] {
                                if !self.space.leq(gx, hy) {
                                    return Err(PartialActionError::EvaluationNotContinuous {
                                        g: gname(g),
                                        x: self.space.name(x).into(),
                                        h: gname(h),
                                        y: self.space.name(y).into(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        self.cross_check_graph_axioms()
    }

    /// Re-derives the element-wise axioms from the graph relation.
    fn cross_check_graph_axioms(&self) -> Result<(), PartialActionError> {
        let g_ = self.group.group();
        let n = self.space.len();
        for g in 0..g_.order() {
            for x in 0..n {
                if let Some(y) = self.table[g][x] {
                    if self.table[g_.inv(g)][y] != Some(x) {
                        return Err(PartialActionError::AxiomCrossCheck(format!(
                            "inverse law at ({}, {})",
                            g_.name(g),
                            self.space.name(x)
                        )));
                    }
                }
                for h in 0..g_.order() {
                    if let Some(hx) = self.table[h][x] {
                        if let Some(ghx) = self.table[g][hx] {
                            if self.table[g_.mul(g, h)][x] != Some(ghx) {
                                return Err(PartialActionError::AxiomCrossCheck(format!(
                                    "product law at ({}, {}, {})",
                                    g_.name(g),
                                    g_.name(h),
                                    self.space.name(x)
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &TopologicalGroup {
        &self.group
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn table(&self) -> &[Vec<Option<usize>>] {
        &self.table
    }

    /// `g·x`, when defined.
    pub fn act(&self, g: usize, x: usize) -> Option<usize> {
        self.table[g][x]
    }

    /// `X_g`, the image of `η_g`.
    pub fn domain(&self, g: usize) -> PointSet {
        let inv = self.group.group().inv(g);
        (0..self.space.len()).filter(|&x| self.table[inv][x].is_some()).collect()
    }

    /// `η_g` as a map on `X_{g⁻¹}`.
    pub fn map_of(&self, g: usize) -> BTreeMap<usize, usize> {
        self.table[g]
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
            .collect()
    }

    pub fn is_global(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// `G×X` with the product topology; `(g, x)` has index `g·|X| + x`.
    pub fn product_space(&self) -> FiniteSpace {
        self.group.topology().product(&self.space)
    }

    /// `G∗X` as a set of product indices.
    pub fn graph(&self) -> PointSet {
        let n = self.space.len();
        (0..self.group.order())
            .flat_map(|g| (0..n).map(move |x| (g, x)))
            .filter(|&(g, x)| self.table[g][x].is_some())
            .map(|(g, x)| g * n + x)
            .collect()
    }

    pub fn domain_report(&self) -> DomainReport {
        let product = self.product_space();
        let graph = self.graph();
        let is_open = product.is_open(&graph);
        let is_closed = product.is_closed(&graph);
        DomainReport { is_open, is_closed, is_clopen: is_open && is_closed }
    }

    pub fn is_domain_closed(&self) -> bool {
        self.domain_report().is_closed
    }

    /// `Gˣ = {g : ∃ g·x}` and whether it is closed in `G`.
    pub fn stabilizer_domain(&self, x: usize) -> Result<StabilizerDomain, PartialActionError> {
        if x >= self.space.len() {
            return Err(PartialActionError::UnknownPoint(x.to_string()));
        }
        let elements: PointSet = (0..self.group.order()).filter(|&g| self.table[g][x].is_some()).collect();
        let is_closed = self.group.topology().is_closed(&elements);
        Ok(StabilizerDomain { elements, is_closed })
    }

    /// The restricted partial action of a subgroup `H`, with the inclusion of
    /// `H` into `G` (k-th element of `H` ↦ k-th member of the subset).
    pub fn restrict_to_subgroup(&self, subgroup: &PointSet) -> Result<(PartialAction, Vec<usize>), PartialActionError> {
        let (h, members) = self.group.subgroup(subgroup)?;
        let table = members.iter().map(|&g| self.table[g].clone()).collect();
        let action = PartialAction::from_table(h, self.space.clone(), table, Checks::Topological)?;
        Ok((action, members))
    }

    /// Orbit equivalence classes and the orbit space `X/∼_G`.
    ///
    /// Classes are generated with union-find from the pairs `x ∼ g·x` and then
    /// checked to coincide with the one-step orbit relation.
    pub fn orbit_space(&self) -> Result<OrbitSpace, TheoremViolation> {
        let n = self.space.len();
        let mut uf = UnionFind::<usize>::new(n);
        for row in &self.table {
            for (x, y) in row.iter().enumerate() {
                if let Some(y) = y {
                    uf.union(x, *y);
                }
            }
        }
        let labels = uf.into_labeling();
        let one_step = |x: usize, y: usize| self.table.iter().any(|row| row[x] == Some(y));
        for x in 0..n {
            for y in 0..n {
                ensure(labels[x] == labels[y] || !one_step(x, y), "orbit-relation", || {
                    format!("union-find split a related pair at {}", self.space.name(x))
                })?;
                ensure(labels[x] != labels[y] || one_step(x, y), "orbit-relation", || {
                    format!(
                        "orbit relation is not transitive at ({}, {})",
                        self.space.name(x),
                        self.space.name(y)
                    )
                })?;
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut root_to_class = BTreeMap::new();
        for x in 0..n {
            let c = *root_to_class.entry(labels[x]).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(x);
        }
        let (quotient, pi) = self.space.quotient(&classes).expect("orbit classes partition the space");
        let props = pi.properties();
        ensure(props.continuous && props.open_map, "orbit-map-open", || {
            "orbit quotient map is not continuous and open".into()
        })?;
        let class_of = pi.mapping().to_vec();
        Ok(OrbitSpace { quotient, pi, classes, class_of })
    }

    /// `η̂` on `G×X`: `(h, x) ↦ (hg⁻¹, g·x)` for `x ∈ X_{g⁻¹}`.
    pub fn hat(&self) -> PartialAction {
        let g_ = self.group.group();
        let n = self.space.len();
        let table = (0..g_.order())
            .map(|g| {
                (0..g_.order() * n)
                    .map(|p| {
                        let (h, x) = (p / n, p % n);
                        self.table[g][x].map(|y| g_.mul(h, g_.inv(g)) * n + y)
                    })
                    .collect()
            })
            .collect();
        PartialAction::from_table(self.group.clone(), self.product_space(), table, Checks::Topological)
            .expect("hat construction is a partial action")
    }

    /// The evaluation map restricted to `G∗X` is closed, and the orbit maps
    /// of `η` and `η̂` are perfect.
    pub fn closedness_report(&self) -> Result<ClosednessReport, TheoremViolation> {
        let product = self.product_space();
        let graph = self.graph();
        let n = self.space.len();
        let eta_closed_map = graph.iter().all(|&p| {
            let below: PointSet = product
                .down_set(p)
                .intersection(&graph)
                .map(|&q| self.table[q / n][q % n].unwrap())
                .collect();
            self.space.is_closed(&below)
        });
        let pi_perfect = self.orbit_space()?.pi.properties().perfect;
        let pi_hat_perfect = self.hat().orbit_space()?.pi.properties().perfect;
        let hypotheses = ClosednessHypotheses {
            group_compact: true,
            domain_closed: self.is_domain_closed(),
        };
        if hypotheses.group_compact && hypotheses.domain_closed {
            ensure(eta_closed_map, "closed-evaluation", || "evaluation map is not closed".into())?;
            ensure(pi_perfect && pi_hat_perfect, "perfect-orbit-maps", || "orbit map is not perfect".into())?;
        }
        Ok(ClosednessReport { eta_closed_map, pi_perfect, pi_hat_perfect, hypotheses })
    }

    /// `Graph(η) ⊆ G×X×X` and whether it is closed.
    pub fn graph_of_action(&self) -> GraphReport {
        let n = self.space.len();
        let triple = self.product_space().product(&self.space);
        let mut triples = Vec::new();
        let mut set = PointSet::new();
        for g in 0..self.group.order() {
            for x in 0..n {
                if let Some(y) = self.table[g][x] {
                    triples.push((g, x, y));
                    set.insert((g * n + x) * n + y);
                }
            }
        }
        GraphReport { is_closed: triple.is_closed(&set), triples }
    }

    /// Orbit property transfer from `X` to `X/∼_G`.
    pub fn property_transfer_orbit(&self) -> Result<TransferReport, TheoremViolation> {
        let orbits = self.orbit_space()?;
        let domain_closed = self.is_domain_closed();
        transfer_report(
            "orbit-property-transfer",
            self.space.separation(),
            orbits.quotient.separation(),
            domain_closed,
        )
    }
}

/// Builds the partial action induced by a global action `u` on an open subset `X`.
///
/// The carrier is the subspace on `subset`; its k-th point is the k-th member.
pub fn induce_from_global(u: &PartialAction, subset: &PointSet) -> Result<PartialAction, PartialActionError> {
    if !u.is_global() {
        return Err(PartialActionError::NotGlobal);
    }
    if subset.iter().any(|&x| x >= u.space.len()) {
        return Err(PartialActionError::UnknownPoint("subset".into()));
    }
    if !u.space.is_open(subset) {
        return Err(PartialActionError::NotOpenSubset);
    }
    let carrier = u.space.subspace(subset)?;
    let members: Vec<usize> = subset.iter().copied().collect();
    let table = (0..u.group.order())
        .map(|g| {
            members
                .iter()
                .map(|&x| {
                    let y = u.table[g][x].expect("global");
                    members.iter().position(|&m| m == y)
                })
                .collect()
        })
        .collect();
    PartialAction::from_table(u.group.clone(), carrier, table, Checks::Topological)
}

/// Pulls a partial action of `H` back along `φ: G → H`.
pub fn pullback(action: &PartialAction, phi: &GroupHom) -> Result<PartialAction, PartialActionError> {
    if phi.cod() != action.group() {
        return Err(PartialActionError::GroupMismatch);
    }
    let table = (0..phi.dom().order()).map(|g| action.table[phi.apply(g)].clone()).collect();
    PartialAction::from_table(phi.dom().clone(), action.space.clone(), table, Checks::Topological)
}

/// Whether `f: X → Y` intertwines the two partial actions.
pub fn is_g_map(f: &[usize], source: &PartialAction, target: &PartialAction) -> Result<GMapReport, PartialActionError> {
    if source.group != target.group {
        return Err(PartialActionError::GroupMismatch);
    }
    let props = map_properties(&source.space, &target.space, f)?;
    let intertwines = |f: &[usize], a: &PartialAction, b: &PartialAction| {
        (0..a.group.order()).all(|g| {
            (0..a.space.len()).all(|x| match a.table[g][x] {
                Some(gx) => b.table[g][f[x]] == Some(f[gx]),
                None => true,
            })
        })
    };
    let is_map = intertwines(f, source, target);
    let is_equivalence = is_map && props.homeomorphism && {
        let mut inverse = vec![0; target.space.len()];
        for (x, &y) in f.iter().enumerate() {
            inverse[y] = x;
        }
        intertwines(&inverse, target, source)
    };
    Ok(GMapReport { is_g_map: is_map, is_g_equivalence: is_equivalence })
}

pub(crate) fn transfer_report(
    check: &'static str,
    source: Separation,
    target: Separation,
    domain_closed: bool,
) -> Result<TransferReport, TheoremViolation> {
    let hypotheses_hold = domain_closed;
    let properties: Vec<PropertyTransfer> = [
        ("hausdorff", source.hausdorff, target.hausdorff),
        ("regular", source.regular, target.regular),
        ("metrizable", source.metrizable, target.metrizable),
        ("second_countable", source.second_countable, target.second_countable),
    ]
    .into_iter()
    .map(|(property, source, target)| PropertyTransfer { property, source, target })
    .collect();
    if hypotheses_hold {
        for p in &properties {
            ensure(!p.source || p.target, check, || format!("{} does not transfer", p.property))?;
        }
    }
    Ok(TransferReport {
        group_compact: true,
        domain_closed,
        hypotheses_hold,
        properties,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DomainReport {
    pub is_open: bool,
    pub is_closed: bool,
    pub is_clopen: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerDomain {
    pub elements: PointSet,
    pub is_closed: bool,
}

/// An orbit space with its quotient map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSpace {
    pub quotient: FiniteSpace,
    pub pi: ContinuousMap,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl OrbitSpace {
    pub fn class_names(&self) -> Vec<String> {
        self.quotient.points().to_vec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosednessHypotheses {
    pub group_compact: bool,
    pub domain_closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosednessReport {
    pub eta_closed_map: bool,
    pub pi_perfect: bool,
    pub pi_hat_perfect: bool,
    pub hypotheses: ClosednessHypotheses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub triples: Vec<(usize, usize, usize)>,
    pub is_closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GMapReport {
    pub is_g_map: bool,
    pub is_g_equivalence: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropertyTransfer {
    pub property: &'static str,
    pub source: bool,
    pub target: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub group_compact: bool,
    pub domain_closed: bool,
    pub hypotheses_hold: bool,
    pub properties: Vec<PropertyTransfer>,
}

/// Human-readable name for a set of points of `space`.
pub fn points_name(space: &FiniteSpace, set: &BTreeSet<usize>) -> String {
    set_name(set.iter().map(|&x| space.name(x)))
}

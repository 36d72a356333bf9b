//! Finite topological spaces.
//!
//! A finite topology is stored as its specialization preorder: `x ⊑ y` iff
//! `x` lies in the closure of `{y}`. Open sets are exactly the up-sets of the
//! preorder and closed sets the down-sets, so continuity, quotients and
//! separation properties all reduce to relation algebra on `n × n` matrices.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A subset of a finite carrier, as sorted point indices.
pub type PointSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("open family must contain the empty set and the full carrier")]
    MissingEmptyOrFull,
    #[error("open family is not closed under union: {0:?} ∪ {1:?}")]
    NotClosedUnderUnion(Vec<String>, Vec<String>),
    #[error("open family is not closed under intersection: {0:?} ∩ {1:?}")]
    NotClosedUnderIntersection(Vec<String>, Vec<String>),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("classes do not partition the carrier")]
    NotAPartition,
    #[error("map is not total: {0}")]
    NotTotal(String),
    #[error("map is not continuous: {x} ⊑ {y} but {fx} ⋢ {fy}")]
    NotContinuous {
        x: String,
        y: String,
        fx: String,
        fy: String,
    },
}

/// A finite topological space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    /// `leq[x][y]` iff `x ⊑ y`.
    leq: Vec<Vec<bool>>,
}

/// Closure, interior and openness flags of one subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetOperators {
    pub closure: PointSet,
    pub interior: PointSet,
    pub is_open: bool,
    pub is_closed: bool,
    pub is_clopen: bool,
}

/// Separation and countability properties, evaluated definitionally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Separation {
    pub t1: bool,
    pub hausdorff: bool,
    pub regular: bool,
    pub second_countable: bool,
    pub metrizable: bool,
}

/// Properties of a map between finite spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapProperties {
    pub continuous: bool,
    pub open_map: bool,
    pub closed_map: bool,
    /// Continuous, closed and surjective. Fibers are finite, hence compact.
    pub perfect: bool,
    pub injective: bool,
    pub surjective: bool,
    pub homeomorphism: bool,
}

fn check_unique(points: &[String]) -> Result<(), TopologyError> {
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert(p.as_str()) {
            return Err(TopologyError::DuplicatePoint(p.clone()));
        }
    }
    Ok(())
}

/// Reflexive-transitive closure in place (Warshall).
pub(crate) fn close_preorder(leq: &mut [Vec<bool>]) {
    let n = leq.len();
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if !leq[i][k] {
                continue;
            }
            for j in 0..n {
                if leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
}

impl FiniteSpace {
    /// Builds a space from an explicit open family, verifying it is a topology.
    ///
    /// Round trip: the up-sets of the derived preorder are exactly `opens`.
    pub fn from_open_sets(points: Vec<String>, opens: &[PointSet]) -> Result<Self, TopologyError> {
        check_unique(&points)?;
        let n = points.len();
        for u in opens {
            if let Some(&bad) = u.iter().find(|&&p| p >= n) {
                return Err(TopologyError::UnknownPoint(bad.to_string()));
            }
        }
        let family: BTreeSet<PointSet> = opens.iter().cloned().collect();
        let full: PointSet = (0..n).collect();
        if !family.contains(&PointSet::new()) || !family.contains(&full) {
            return Err(TopologyError::MissingEmptyOrFull);
        }
        let names = |s: &PointSet| s.iter().map(|&i| points[i].clone()).collect::<Vec<_>>();
        for u in &family {
            for v in &family {
                if !family.contains(&(u | v)) {
                    return Err(TopologyError::NotClosedUnderUnion(names(u), names(v)));
                }
                if !family.contains(&(u & v)) {
                    return Err(TopologyError::NotClosedUnderIntersection(names(u), names(v)));
                }
            }
        }
        // x ⊑ y iff every open set containing x also contains y.
        let mut leq = vec![vec![true; n]; n];
        for u in &family {
            for &x in u {
                for y in 0..n {
                    if !u.contains(&y) {
                        leq[x][y] = false;
                    }
                }
            }
        }
        Ok(Self { points, leq })
    }

    /// Builds a space from named points and named open sets.
    pub fn from_named_opens<S: AsRef<str>>(
        points: &[S],
        opens: &[Vec<S>],
    ) -> Result<Self, TopologyError> {
        let points: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        let mut sets = Vec::with_capacity(opens.len());
        for u in opens {
            let mut set = PointSet::new();
            for p in u {
                let p = p.as_ref();
                let i = points
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| TopologyError::UnknownPoint(p.to_string()))?;
                set.insert(i);
            }
            sets.push(set);
        }
        Self::from_open_sets(points, &sets)
    }

    /// Builds a space from generating pairs `x ⊑ y`; the reflexive-transitive
    /// closure of the pairs is taken.
    pub fn from_preorder(points: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, TopologyError> {
        check_unique(&points)?;
        let n = points.len();
        let mut leq = vec![vec![false; n]; n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(TopologyError::UnknownPoint(x.max(y).to_string()));
            }
            leq[x][y] = true;
        }
        close_preorder(&mut leq);
        Ok(Self { points, leq })
    }

    /// Builds a space directly from a relation matrix that is already a preorder.
    pub(crate) fn from_matrix(points: Vec<String>, mut leq: Vec<Vec<bool>>) -> Self {
        debug_assert_eq!(points.len(), leq.len());
        close_preorder(&mut leq);
        Self { points, leq }
    }

    pub fn discrete<S: ToString>(points: impl IntoIterator<Item = S>) -> Self {
        let points: Vec<String> = points.into_iter().map(|p| p.to_string()).collect();
        let n = points.len();
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Self { points, leq }
    }

    pub fn indiscrete<S: ToString>(points: impl IntoIterator<Item = S>) -> Self {
        let points: Vec<String> = points.into_iter().map(|p| p.to_string()).collect();
        let n = points.len();
        Self { points, leq: vec![vec![true; n]; n] }
    }

    /// The two-point space `{a, b}` with opens `∅, {b}, {a, b}`.
    pub fn sierpinski() -> Self {
        Self::from_preorder(vec!["a".into(), "b".into()], &[(0, 1)]).expect("valid preorder")
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

    pub fn name(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    pub fn full(&self) -> PointSet {
        (0..self.len()).collect()
    }

    /// `x ⊑ y`, i.e. `x ∈ cl{y}`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// All pairs `(x, y)` with `x ⊑ y`, in row-major order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.leq[x][y])
            .collect()
    }

    /// Minimal open neighbourhood `↑x`.
    pub fn up_set(&self, x: usize) -> PointSet {
        (0..self.len()).filter(|&y| self.leq[x][y]).collect()
    }

    /// Closure of a point, `↓x`.
    pub fn down_set(&self, x: usize) -> PointSet {
        (0..self.len()).filter(|&y| self.leq[y][x]).collect()
    }

    /// Smallest open set containing `set`.
    pub fn up_closure(&self, set: &PointSet) -> PointSet {
        (0..self.len())
            .filter(|&y| set.iter().any(|&x| self.leq[x][y]))
            .collect()
    }

    /// Topological closure, the down-closure under `⊑`.
    pub fn closure(&self, set: &PointSet) -> PointSet {
        (0..self.len())
            .filter(|&y| set.iter().any(|&x| self.leq[y][x]))
            .collect()
    }

    /// Largest open set inside `set`.
    pub fn interior(&self, set: &PointSet) -> PointSet {
        set.iter()
            .copied()
            .filter(|&x| (0..self.len()).all(|y| !self.leq[x][y] || set.contains(&y)))
            .collect()
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        set.iter()
            .all(|&x| (0..self.len()).all(|y| !self.leq[x][y] || set.contains(&y)))
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        set.iter()
            .all(|&x| (0..self.len()).all(|y| !self.leq[y][x] || set.contains(&y)))
    }

    pub fn is_discrete(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (0..n).all(|y| self.leq[x][y] == (x == y)))
    }

    fn check_subset(&self, set: &PointSet) -> Result<(), TopologyError> {
        match set.iter().find(|&&x| x >= self.len()) {
            Some(&x) => Err(TopologyError::UnknownPoint(x.to_string())),
            None => Ok(()),
        }
    }

    pub fn set_operators(&self, set: &PointSet) -> Result<SetOperators, TopologyError> {
        self.check_subset(set)?;
        let closure = self.closure(set);
        let interior = self.interior(set);
        let is_open = interior == *set;
        let is_closed = closure == *set;
        Ok(SetOperators {
            closure,
            interior,
            is_open,
            is_closed,
            is_clopen: is_open && is_closed,
        })
    }

    /// Enumerates every open set, in a deterministic order.
    ///
    /// The count can be exponential in the number of points.
    pub fn opens(&self) -> Vec<PointSet> {
        fn go(space: &FiniteSpace, k: usize, state: &mut Vec<Option<bool>>, out: &mut Vec<PointSet>) {
            if k == space.len() {
                out.push(
                    state
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| **s == Some(true))
                        .map(|(i, _)| i)
                        .collect(),
                );
                return;
            }
            if state[k].is_some() {
                go(space, k + 1, state, out);
                return;
            }
            for include in [false, true] {
                let saved = state.clone();
                let mut consistent = true;
                for y in 0..space.len() {
                    // including k forces ↑k in; excluding k forces ↓k out
                    let forced = if include { space.leq[k][y] } else { space.leq[y][k] };
                    if forced {
                        match state[y] {
                            Some(v) if v != include => {
                                consistent = false;
                                break;
                            }
                            _ => state[y] = Some(include),
                        }
                    }
                }
                if consistent {
                    go(space, k + 1, state, out);
                }
                *state = saved;
            }
        }
        let mut out = Vec::new();
        let mut state = vec![None; self.len()];
        go(self, 0, &mut state, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Product space; point `(a, b)` has index `a * other.len() + b`.
    pub fn product(&self, other: &FiniteSpace) -> FiniteSpace {
        let (n, m) = (self.len(), other.len());
        let points = (0..n * m)
            .map(|i| format!("({},{})", self.points[i / m], other.points[i % m]))
            .collect();
        let leq = (0..n * m)
            .map(|i| {
                (0..n * m)
                    .map(|j| self.leq[i / m][j / m] && other.leq[i % m][j % m])
                    .collect()
            })
            .collect();
        FiniteSpace { points, leq }
    }

    /// Subspace on `set`; the k-th point of the result is the k-th smallest
    /// element of `set`.
    pub fn subspace(&self, set: &PointSet) -> Result<FiniteSpace, TopologyError> {
        self.check_subset(set)?;
        let idx: Vec<usize> = set.iter().copied().collect();
        let points = idx.iter().map(|&i| self.points[i].clone()).collect();
        let leq = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.leq[i][j]).collect())
            .collect();
        Ok(FiniteSpace { points, leq })
    }

    /// Quotient by a partition, naming each class by its sorted member list.
    pub fn quotient(&self, classes: &[Vec<usize>]) -> Result<(FiniteSpace, ContinuousMap), TopologyError> {
        let names = classes
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                set_name(c.iter().map(|&i| self.points[i].as_str()))
            })
            .collect();
        self.quotient_named(classes, names)
    }

    /// Quotient by a partition with caller-supplied class names.
    ///
    /// The quotient preorder is the transitive closure of the projected
    /// preorder, which makes a set of classes open iff its preimage is open.
    pub fn quotient_named(
        &self,
        classes: &[Vec<usize>],
        names: Vec<String>,
    ) -> Result<(FiniteSpace, ContinuousMap), TopologyError> {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        for (c, members) in classes.iter().enumerate() {
            if members.is_empty() {
                return Err(TopologyError::NotAPartition);
            }
            for &x in members {
                if x >= n || class_of[x] != usize::MAX {
                    return Err(TopologyError::NotAPartition);
                }
                class_of[x] = c;
            }
        }
        if class_of.contains(&usize::MAX) || names.len() != classes.len() {
            return Err(TopologyError::NotAPartition);
        }
        check_unique(&names)?;
        let k = classes.len();
        let mut leq = vec![vec![false; k]; k];
        for x in 0..n {
            for y in 0..n {
                if self.leq[x][y] {
                    leq[class_of[x]][class_of[y]] = true;
                }
            }
        }
        let quotient = FiniteSpace::from_matrix(names, leq);
        let pi = ContinuousMap {
            dom: self.clone(),
            cod: quotient.clone(),
            mapping: class_of,
        };
        Ok((quotient, pi))
    }

    /// Separation properties computed from their definitions.
    pub fn separation(&self) -> Separation {
        let n = self.len();
        let t1 = (0..n).all(|x| (0..n).all(|y| self.leq[x][y] == (x == y)));
        // ↑x and ↑y are the smallest neighbourhoods, so disjoint neighbourhoods
        // exist iff these are disjoint.
        let hausdorff = (0..n).all(|x| {
            (0..n).all(|y| x == y || (0..n).all(|z| !(self.leq[x][z] && self.leq[y][z])))
        });
        // Every closed C missing x lies inside X∖↑x, and ↑C is the smallest open
        // set around C, so checking the largest such C suffices.
        let regular = (0..n).all(|x| {
            let up_x = self.up_set(x);
            let rest: PointSet = (0..n).filter(|y| !up_x.contains(y)).collect();
            self.up_closure(&rest).is_disjoint(&up_x)
        });
        Separation {
            t1,
            hausdorff,
            regular,
            second_countable: true,
            // the only metrizable finite topology is the discrete one
            metrizable: t1,
        }
    }
}

impl fmt::Display for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Formats a set of names as `{a,b,c}`.
pub fn set_name<'a>(members: impl IntoIterator<Item = &'a str>) -> String {
    let inner: Vec<&str> = members.into_iter().collect();
    format!("{{{}}}", inner.join(","))
}

/// A total map between finite spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    dom: FiniteSpace,
    cod: FiniteSpace,
    mapping: Vec<usize>,
}

impl ContinuousMap {
    /// Builds the map, rejecting it unless it is monotone for the
    /// specialization preorders (continuity on finite spaces).
    pub fn new(dom: FiniteSpace, cod: FiniteSpace, mapping: Vec<usize>) -> Result<Self, TopologyError> {
        check_total(&dom, &cod, &mapping)?;
        for (x, y) in dom.relation_pairs() {
            if !cod.leq(mapping[x], mapping[y]) {
                return Err(TopologyError::NotContinuous {
                    x: dom.name(x).into(),
                    y: dom.name(y).into(),
                    fx: cod.name(mapping[x]).into(),
                    fy: cod.name(mapping[y]).into(),
                });
            }
        }
        Ok(Self { dom, cod, mapping })
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        Self {
            dom: space.clone(),
            cod: space.clone(),
            mapping: (0..space.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FiniteSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSpace {
        &self.cod
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        set.iter().map(|&x| self.mapping[x]).collect()
    }

    pub fn preimage(&self, set: &PointSet) -> PointSet {
        (0..self.dom.len()).filter(|x| set.contains(&self.mapping[*x])).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ContinuousMap) -> ContinuousMap {
        ContinuousMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            mapping: self.mapping.iter().map(|&y| other.mapping[y]).collect(),
        }
    }

    pub fn properties(&self) -> MapProperties {
        map_properties(&self.dom, &self.cod, &self.mapping).expect("validated map is total")
    }
}

fn check_total(dom: &FiniteSpace, cod: &FiniteSpace, mapping: &[usize]) -> Result<(), TopologyError> {
    if mapping.len() != dom.len() {
        return Err(TopologyError::NotTotal(format!(
            "{} values for {} points",
            mapping.len(),
            dom.len()
        )));
    }
    if let Some((x, &y)) = mapping.iter().enumerate().find(|(_, &y)| y >= cod.len()) {
        return Err(TopologyError::NotTotal(format!("{} ↦ index {y}", dom.name(x))));
    }
    Ok(())
}

/// Evaluates every map property of `mapping: dom → cod`.
///
/// Open (closed) sets are unions of minimal neighbourhoods `↑x` (of point
/// closures `↓x`) and images commute with unions, so it suffices to test the
/// images of those generators.
pub fn map_properties(
    dom: &FiniteSpace,
    cod: &FiniteSpace,
    mapping: &[usize],
) -> Result<MapProperties, TopologyError> {
    check_total(dom, cod, mapping)?;
    let image = |s: PointSet| -> PointSet { s.into_iter().map(|x| mapping[x]).collect() };
    let continuous = dom.relation_pairs().into_iter().all(|(x, y)| cod.leq(mapping[x], mapping[y]));
    let open_map = (0..dom.len()).all(|x| cod.is_open(&image(dom.up_set(x))));
    let closed_map = (0..dom.len()).all(|x| cod.is_closed(&image(dom.down_set(x))));
    let hit: PointSet = mapping.iter().copied().collect();
    let injective = hit.len() == dom.len();
    let surjective = hit.len() == cod.len();
    let bijective = injective && surjective;
    let homeomorphism = bijective && continuous && {
        let mut inverse = vec![0; cod.len()];
        for (x, &y) in mapping.iter().enumerate() {
            inverse[y] = x;
        }
        cod.relation_pairs().into_iter().all(|(a, b)| dom.leq(inverse[a], inverse[b]))
    };
    Ok(MapProperties {
        continuous,
        open_map,
        closed_map,
        perfect: continuous && closed_map && surjective,
        injective,
        surjective,
        homeomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().copied().collect()
    }

    /// Every subset of the carrier, as masks.
    fn all_subsets(n: usize) -> Vec<PointSet> {
        (0u32..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    fn chain3() -> FiniteSpace {
        FiniteSpace::from_preorder(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn sierpinski_from_opens() {
        let s = FiniteSpace::from_named_opens(&["a", "b"], &[vec![], vec!["b"], vec!["a", "b"]]).unwrap();
        assert!(s.leq(0, 1));
        assert!(!s.leq(1, 0));
        assert_eq!(s, FiniteSpace::sierpinski());
    }

    #[test]
    fn missing_full_set_rejected() {
        let err = FiniteSpace::from_named_opens(&["a", "b"], &[vec![], vec!["b"]]).unwrap_err();
        assert_eq!(err, TopologyError::MissingEmptyOrFull);
    }

    #[test]
    fn union_and_intersection_failures() {
        let err = FiniteSpace::from_named_opens(
            &["a", "b", "c"],
            &[vec![], vec!["a"], vec!["b"], vec!["a", "b", "c"]],
        )
        .unwrap_err();
        assert!(matches!(err, TopologyError::NotClosedUnderUnion(..)));
        let err = FiniteSpace::from_named_opens(
            &["a", "b", "c"],
            &[vec![], vec!["a", "b"], vec!["b", "c"], vec!["a", "b", "c"]],
        )
        .unwrap_err();
        assert!(matches!(err, TopologyError::NotClosedUnderIntersection(..)));
    }

    #[test]
    fn all_subsets_give_discrete_space() {
        let opens = all_subsets(3);
        let s = FiniteSpace::from_open_sets(vec!["x".into(), "y".into(), "z".into()], &opens).unwrap();
        assert!(s.is_discrete());
    }

    #[test]
    fn opens_round_trip_and_lattice_laws() {
        for space in [FiniteSpace::sierpinski(), chain3(), FiniteSpace::indiscrete(["p", "q"])] {
            let opens = space.opens();
            let rebuilt = FiniteSpace::from_open_sets(space.points().to_vec(), &opens).unwrap();
            assert_eq!(rebuilt, space);
            let oracle: Vec<PointSet> = all_subsets(space.len())
                .into_iter()
                .filter(|s| space.is_open(s))
                .collect();
            assert_eq!(opens.len(), oracle.len());
            assert!(opens.contains(&PointSet::new()));
            assert!(opens.contains(&space.full()));
            for u in &opens {
                for v in &opens {
                    assert!(space.is_open(&(u | v)));
                    assert!(space.is_open(&(u & v)));
                }
            }
        }
    }

    #[test]
    fn set_operators_examples() {
        let s = FiniteSpace::sierpinski();
        let ops = s.set_operators(&set(&[1])).unwrap();
        assert_eq!(ops.closure, set(&[0, 1]));
        assert!(ops.is_open && !ops.is_closed);
        let ops = s.set_operators(&set(&[0])).unwrap();
        assert_eq!(ops.closure, set(&[0]));
        assert_eq!(ops.interior, set(&[]));
        let d = FiniteSpace::discrete(["x", "y", "z"]);
        for sub in all_subsets(3) {
            let ops = d.set_operators(&sub).unwrap();
            assert_eq!(ops.closure, sub);
            assert!(ops.is_clopen);
        }
        assert_eq!(s.set_operators(&set(&[5])).unwrap_err(), TopologyError::UnknownPoint("5".into()));
    }

    #[test]
    fn product_examples() {
        let d2 = FiniteSpace::discrete(["e", "s"]);
        let p = d2.product(&FiniteSpace::sierpinski());
        assert_eq!(p.len(), 4);
        // (e,a) ⊑ (e,b), (s,a) ⊑ (s,b), nothing across group elements
        assert!(p.leq(0, 1) && p.leq(2, 3));
        assert!(!p.leq(0, 3) && !p.leq(0, 2) && !p.leq(1, 3));
        let point = FiniteSpace::discrete(["*"]);
        let q = chain3().product(&point);
        assert!(map_properties(&chain3(), &q, &[0, 1, 2]).unwrap().homeomorphism);
        let ss = FiniteSpace::sierpinski().product(&FiniteSpace::sierpinski());
        assert_eq!(ss.relation_pairs().len(), 9);
    }

    #[test]
    fn subspace_examples() {
        let s = FiniteSpace::sierpinski().subspace(&set(&[1])).unwrap();
        assert_eq!(s.len(), 1);
        let d = FiniteSpace::discrete(["x", "y", "z"]).subspace(&set(&[0, 2])).unwrap();
        assert!(d.is_discrete());
        let c = chain3();
        let sub = c.subspace(&set(&[0, 2])).unwrap();
        assert!(sub.leq(0, 1));
        // opens of the subspace are exactly the traces of opens of the parent
        let traces: BTreeSet<PointSet> = c
            .opens()
            .into_iter()
            .map(|u| u.iter().filter_map(|&x| [0, 2].iter().position(|&y| y == x)).collect())
            .collect();
        let opens: BTreeSet<PointSet> = sub.opens().into_iter().collect();
        assert_eq!(traces, opens);
    }

    #[test]
    fn quotient_examples() {
        let s = FiniteSpace::sierpinski();
        let (q, _) = s.quotient(&[vec![0, 1]]).unwrap();
        assert_eq!(q.len(), 1);
        let d4 = FiniteSpace::discrete(["a", "b", "c", "d"]);
        let (q, pi) = d4.quotient(&[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(q.is_discrete() && q.len() == 2);
        assert!(pi.properties().continuous && pi.properties().surjective);
        assert_eq!(
            d4.quotient(&[vec![0, 1], vec![1, 2, 3]]).unwrap_err(),
            TopologyError::NotAPartition
        );
        assert_eq!(d4.quotient(&[vec![0, 1]]).unwrap_err(), TopologyError::NotAPartition);
    }

    #[test]
    fn quotient_of_discrete_times_sierpinski() {
        let p = FiniteSpace::discrete(["e", "s"]).product(&FiniteSpace::sierpinski());
        // classes A = {(e,a)}, B = {(s,a)}, C = {(e,b),(s,b)}
        let (q, _) = p.quotient(&[vec![0], vec![2], vec![1, 3]]).unwrap();
        let opens: BTreeSet<PointSet> = q.opens().into_iter().collect();
        let expected: BTreeSet<PointSet> =
            [set(&[]), set(&[2]), set(&[0, 2]), set(&[1, 2]), set(&[0, 1, 2])].into_iter().collect();
        assert_eq!(opens, expected);
    }

    #[test]
    fn map_property_examples() {
        let c = chain3();
        let id = ContinuousMap::identity(&c).properties();
        assert!(id.continuous && id.open_map && id.closed_map && id.perfect);
        assert!(id.injective && id.surjective && id.homeomorphism);
        let d3 = FiniteSpace::discrete(["x", "y", "z"]);
        let pt = FiniteSpace::discrete(["*"]);
        let k = map_properties(&d3, &pt, &[0, 0, 0]).unwrap();
        assert!(k.continuous && k.closed_map && !k.injective);
        let d2 = FiniteSpace::discrete(["a", "b"]);
        let f = map_properties(&FiniteSpace::sierpinski(), &d2, &[0, 1]).unwrap();
        assert!(!f.continuous && !f.homeomorphism);
        assert!(ContinuousMap::new(FiniteSpace::sierpinski(), d2.clone(), vec![0, 1]).is_err());
        assert!(matches!(map_properties(&d3, &pt, &[0, 0]), Err(TopologyError::NotTotal(_))));
    }

    #[test]
    fn separation_examples() {
        let d = FiniteSpace::discrete(["x", "y"]).separation();
        assert!(d.t1 && d.hausdorff && d.regular && d.second_countable && d.metrizable);
        let s = FiniteSpace::sierpinski().separation();
        assert_eq!(
            s,
            Separation { t1: false, hausdorff: false, regular: false, second_countable: true, metrizable: false }
        );
        let i = FiniteSpace::indiscrete(["x", "y"]).separation();
        assert!(!i.t1 && i.regular && !i.hausdorff);
    }
}

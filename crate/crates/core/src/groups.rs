//! Finite groups given by Cayley tables, their subgroups and quotients, and
//! finite topological groups.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::topology::{set_name, FiniteSpace, PointSet, TopologyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("product table is not total: {0}")]
    NotTotal(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("product is not associative: ({0}·{1})·{2} ≠ {0}·({1}·{2})")]
    NotAssociative(String, String, String),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(String),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup {subgroup} is not normal: {g}·{h}·{g}⁻¹ lies outside it")]
    NotNormal { subgroup: String, g: String, h: String },
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(String, String),
    #[error("{0} is not continuous for the group topology")]
    NotContinuous(&'static str),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A finite group with derived identity and inverse tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table; `table[i][j]` is the index of `elements[i]·elements[j]`.
    pub fn from_table(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = elements.len();
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(GroupError::DuplicateElement(e.clone()));
            }
        }
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::NotTotal(format!("expected a {n}×{n} table")));
        }
        if let Some((i, j)) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| table[i][j] >= n)
        {
            return Err(GroupError::NotTotal(format!("entry [{i}][{j}] out of range")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| GroupError::NoInverse(elements[g].clone()))?;
            inverse.push(inv);
        }
        Ok(Self { elements, table, identity, inverse })
    }

    /// Validates a table given by element names.
    pub fn from_named_table<S: AsRef<str>>(elements: &[S], table: &[Vec<S>]) -> Result<Self, GroupError> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let lookup = |s: &str| {
            elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| GroupError::UnknownElement(s.to_string()))
        };
        let table = table
            .iter()
            .map(|row| row.iter().map(|s| lookup(s.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_table(elements, table)
    }

    /// ℤₙ with elements `"0"`, …, `"n-1"`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(elements, table).expect("cyclic group table is valid")
    }

    /// The Klein four-group ℤ₂ × ℤ₂ with elements `"00"`, `"01"`, `"10"`, `"11"`.
    pub fn klein() -> Self {
        let elements = ["00", "01", "10", "11"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        Self::from_table(elements, table).expect("Klein table is valid")
    }

    /// The symmetric group on three letters, composing right to left.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let table = (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| index([perms[i][perms[j][0]], perms[i][perms[j][1]], perms[i][perms[j][2]]]))
                    .collect()
            })
            .collect();
        Self::from_table(names.iter().map(|s| s.to_string()).collect(), table).expect("S3 table is valid")
    }

    /// Looks up a built-in group: `Z<n>`, `V4`, or `S3`.
    pub fn named(name: &str) -> Option<Self> {
        match name {
            "S3" => Some(Self::symmetric3()),
            "V4" | "Z2xZ2" => Some(Self::klein()),
            _ => {
                let n: usize = name.strip_prefix('Z')?.parse().ok()?;
                (n >= 1).then(|| Self::cyclic(n))
            }
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn full(&self) -> PointSet {
        (0..self.order()).collect()
    }

    pub fn trivial_subgroup(&self) -> PointSet {
        [self.identity].into_iter().collect()
    }

    pub fn subset_name(&self, set: &PointSet) -> String {
        set_name(set.iter().map(|&g| self.name(g)))
    }

    /// Subgroup generated by `generators` (the trivial subgroup if empty).
    pub fn generate(&self, generators: &PointSet) -> PointSet {
        let mut sub: PointSet = [self.identity].into_iter().collect();
        let mut frontier: Vec<usize> = generators.iter().copied().collect();
        while let Some(g) = frontier.pop() {
            if !sub.insert(g) {
                continue;
            }
            let current: Vec<usize> = sub.iter().copied().collect();
            for h in current {
                for p in [self.mul(g, h), self.mul(h, g)] {
                    if !sub.contains(&p) {
                        frontier.push(p);
                    }
                }
            }
        }
        sub
    }

    pub fn is_subgroup(&self, set: &PointSet) -> bool {
        set.contains(&self.identity)
            && set.iter().all(|&g| g < self.order())
            && set.iter().all(|&g| set.iter().all(|&h| set.contains(&self.mul(g, self.inv(h)))))
    }

    /// A pair `(g, h)` with `h ∈ H` and `ghg⁻¹ ∉ H`, if any.
    pub fn normality_witness(&self, subgroup: &PointSet) -> Option<(usize, usize)> {
        (0..self.order())
            .flat_map(|g| subgroup.iter().map(move |&h| (g, h)))
            .find(|&(g, h)| !subgroup.contains(&self.mul(self.mul(g, h), self.inv(g))))
    }

    pub fn is_normal(&self, subgroup: &PointSet) -> bool {
        self.is_subgroup(subgroup) && self.normality_witness(subgroup).is_none()
    }

    pub fn require_normal(&self, subgroup: &PointSet) -> Result<(), GroupError> {
        if !self.is_subgroup(subgroup) {
            return Err(GroupError::NotSubgroup);
        }
        match self.normality_witness(subgroup) {
            Some((g, h)) => Err(GroupError::NotNormal {
                subgroup: self.subset_name(subgroup),
                g: self.name(g).into(),
                h: self.name(h).into(),
            }),
            None => Ok(()),
        }
    }

    /// The subgroup generated by `generators` and whether it is normal.
    pub fn subgroup_and_normality(&self, generators: &PointSet) -> (PointSet, bool) {
        let sub = self.generate(generators);
        let normal = self.normality_witness(&sub).is_none();
        (sub, normal)
    }

    /// Every subgroup, sorted by order then members.
    pub fn all_subgroups(&self) -> Vec<PointSet> {
        let mut found: BTreeSet<PointSet> = (0..self.order())
            .map(|g| self.generate(&[g].into_iter().collect()))
            .collect();
        // every subgroup is a join of cyclic subgroups
        loop {
            let current: Vec<PointSet> = found.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &current {
                    let join = self.generate(&(a | b));
                    grew |= found.insert(join);
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<PointSet> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn normal_subgroups(&self) -> Vec<PointSet> {
        self.all_subgroups().into_iter().filter(|h| self.is_normal(h)).collect()
    }

    /// Left cosets `gH`, ordered by least member.
    pub fn left_cosets(&self, subgroup: &PointSet) -> Vec<PointSet> {
        let mut cosets: Vec<PointSet> = Vec::new();
        for g in 0..self.order() {
            if cosets.iter().any(|c| c.contains(&g)) {
                continue;
            }
            cosets.push(subgroup.iter().map(|&h| self.mul(g, h)).collect());
        }
        cosets
    }
}

/// A finite group whose carrier carries a topology making multiplication and
/// inversion continuous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalGroup {
    group: FiniteGroup,
    topology: FiniteSpace,
}

impl TopologicalGroup {
    pub fn new(group: FiniteGroup, topology: FiniteSpace) -> Result<Self, GroupError> {
        if topology.points() != group.elements() {
            return Err(GroupError::NotTotal("topology carrier differs from group elements".into()));
        }
        let n = group.order();
        let pairs = topology.relation_pairs();
        for &(g, g2) in &pairs {
            if !topology.leq(group.inv(g), group.inv(g2)) {
                return Err(GroupError::NotContinuous("inversion"));
            }
            for &(h, h2) in &pairs {
                if !topology.leq(group.mul(g, h), group.mul(g2, h2)) {
                    return Err(GroupError::NotContinuous("multiplication"));
                }
            }
        }
        debug_assert!(n == topology.len());
        Ok(Self { group, topology })
    }

    pub fn discrete(group: FiniteGroup) -> Self {
        let topology = FiniteSpace::discrete(group.elements().iter());
        Self { group, topology }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn topology(&self) -> &FiniteSpace {
        &self.topology
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Left and right translations are homeomorphisms of the carrier.
    pub fn translations_are_homeomorphisms(&self) -> bool {
        let g = &self.group;
        (0..g.order()).all(|a| {
            let left: Vec<usize> = (0..g.order()).map(|x| g.mul(a, x)).collect();
            let right: Vec<usize> = (0..g.order()).map(|x| g.mul(x, a)).collect();
            [left, right].iter().all(|m| {
                crate::topology::map_properties(&self.topology, &self.topology, m)
                    .map(|p| p.homeomorphism)
                    .unwrap_or(false)
            })
        })
    }

    /// The subgroup `H` as a topological group with the subspace topology,
    /// together with its inclusion into `self` (k-th element ↦ k-th member of `H`).
    pub fn subgroup(&self, subgroup: &PointSet) -> Result<(TopologicalGroup, Vec<usize>), GroupError> {
        if !self.group.is_subgroup(subgroup) {
            return Err(GroupError::NotSubgroup);
        }
        let members: Vec<usize> = subgroup.iter().copied().collect();
        let pos = |g: usize| members.iter().position(|&m| m == g).expect("closed under product");
        let elements = members.iter().map(|&g| self.group.name(g).to_string()).collect();
        let table = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos(self.group.mul(a, b))).collect())
            .collect();
        let group = FiniteGroup::from_table(elements, table)?;
        let topology = self.topology.subspace(subgroup)?;
        Ok((TopologicalGroup { group, topology }, members))
    }

    /// `G/H` with the quotient topology and the canonical projection.
    pub fn quotient(&self, subgroup: &PointSet) -> Result<(TopologicalGroup, GroupHom), GroupError> {
        let g = &self.group;
        g.require_normal(subgroup)?;
        let cosets = g.left_cosets(subgroup);
        let mut coset_of = vec![0; g.order()];
        for (c, members) in cosets.iter().enumerate() {
            for &x in members {
                coset_of[x] = c;
            }
        }
        let reps: Vec<usize> = cosets.iter().map(|c| *c.iter().next().expect("nonempty")).collect();
        let names: Vec<String> = cosets.iter().map(|c| g.subset_name(c)).collect();
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
            .collect();
        let quotient_group = FiniteGroup::from_table(names.clone(), table)?;
        let classes: Vec<Vec<usize>> = cosets.iter().map(|c| c.iter().copied().collect()).collect();
        let (topology, _) = self.topology.quotient_named(&classes, names)?;
        let quotient = TopologicalGroup::new(quotient_group, topology)?;
        let projection = GroupHom::new(self.clone(), quotient.clone(), coset_of)?;
        Ok((quotient, projection))
    }
}

/// A group homomorphism between topological groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    dom: TopologicalGroup,
    cod: TopologicalGroup,
    mapping: Vec<usize>,
}

impl GroupHom {
    pub fn new(dom: TopologicalGroup, cod: TopologicalGroup, mapping: Vec<usize>) -> Result<Self, GroupError> {
        let (a, b) = (dom.group(), cod.group());
        if mapping.len() != a.order() || mapping.iter().any(|&y| y >= b.order()) {
            return Err(GroupError::NotTotal("homomorphism mapping".into()));
        }
        for g in 0..a.order() {
            for h in 0..a.order() {
                if mapping[a.mul(g, h)] != b.mul(mapping[g], mapping[h]) {
                    return Err(GroupError::NotHomomorphism(a.name(g).into(), a.name(h).into()));
                }
            }
        }
        let continuous = dom
            .topology()
            .relation_pairs()
            .into_iter()
            .all(|(x, y)| cod.topology().leq(mapping[x], mapping[y]));
        if !continuous {
            return Err(GroupError::NotContinuous("homomorphism"));
        }
        Ok(Self { dom, cod, mapping })
    }

    pub fn identity(group: &TopologicalGroup) -> Self {
        Self {
            dom: group.clone(),
            cod: group.clone(),
            mapping: (0..group.order()).collect(),
        }
    }

    /// The homomorphism sending everything to the identity of `cod`.
    pub fn trivial(dom: TopologicalGroup, cod: TopologicalGroup) -> Self {
        let e = cod.group().identity();
        let mapping = vec![e; dom.order()];
        Self { dom, cod, mapping }
    }

    pub fn dom(&self) -> &TopologicalGroup {
        &self.dom
    }

    pub fn cod(&self) -> &TopologicalGroup {
        &self.cod
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, g: usize) -> usize {
        self.mapping[g]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            mapping: self.mapping.iter().map(|&h| other.mapping[h]).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<usize> = self.mapping.iter().copied().collect();
        hit.len() == self.cod.order()
    }

    /// Preimage of the codomain identity.
    pub fn kernel(&self) -> PointSet {
        let e = self.cod.group().identity();
        (0..self.dom.order()).filter(|&g| self.mapping[g] == e).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> PointSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn z2_is_a_group() {
        let g = FiniteGroup::from_named_table(&["0", "1"], &[vec!["0", "1"], vec!["1", "0"]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn z6_inverse_table() {
        let g = FiniteGroup::cyclic(6);
        assert_eq!(g.inv(4), 2);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn swapped_entry_breaks_associativity() {
        let g = FiniteGroup::cyclic(6);
        let mut table = g.table().to_vec();
        table[1].swap(2, 3);
        match FiniteGroup::from_table(g.elements().to_vec(), table.clone()).unwrap_err() {
            GroupError::NotAssociative(a, b, c) => {
                let (a, b, c): (usize, usize, usize) = (a.parse().unwrap(), b.parse().unwrap(), c.parse().unwrap());
                assert_ne!(table[table[a][b]][c], table[a][table[b][c]]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identity_and_inverse_errors() {
        // right projection x·y = y is associative without identity
        let t = vec![vec![0, 1], vec![0, 1]];
        assert_eq!(
            FiniteGroup::from_table(vec!["0".into(), "1".into()], t).unwrap_err(),
            GroupError::NoIdentity
        );
        // max semilattice: identity 0, no inverse for 1
        let t = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(
            FiniteGroup::from_table(vec!["0".into(), "1".into()], t).unwrap_err(),
            GroupError::NoInverse("1".into())
        );
    }

    #[test]
    fn subgroup_normality_examples() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(z6.subgroup_and_normality(&set(&[2])), (set(&[0, 2, 4]), true));
        let s3 = FiniteGroup::symmetric3();
        let (h, normal) = s3.subgroup_and_normality(&set(&[1]));
        assert_eq!(h.len(), 2);
        assert!(!normal);
        assert_eq!(s3.subgroup_and_normality(&set(&[0])), (set(&[0]), true));
        assert_eq!(s3.all_subgroups().len(), 6);
        assert_eq!(s3.normal_subgroups().len(), 3);
        assert_eq!(z6.all_subgroups().len(), 4);
    }

    #[test]
    fn quotient_group_examples() {
        let z6 = TopologicalGroup::discrete(FiniteGroup::cyclic(6));
        let (q, p) = z6.quotient(&set(&[0, 3])).unwrap();
        assert_eq!(q.order(), 3);
        // the coset of 1 generates, so the quotient is cyclic of order 3
        let one = p.apply(1);
        assert_eq!(q.group().generate(&set(&[one])).len(), 3);
        assert_eq!(p.kernel(), set(&[0, 3]));
        assert!(p.is_surjective());
        assert_eq!(q.group().elements()[0], "{0,3}");

        let (q, _) = z6.quotient(&z6.group().full()).unwrap();
        assert_eq!(q.order(), 1);
        let (q, p) = z6.quotient(&set(&[0])).unwrap();
        assert_eq!(q.order(), 6);
        assert!(p.mapping().iter().copied().collect::<BTreeSet<_>>().len() == 6);

        let s3 = TopologicalGroup::discrete(FiniteGroup::symmetric3());
        assert!(matches!(s3.quotient(&set(&[0, 1])), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn kernels() {
        let z4 = TopologicalGroup::discrete(FiniteGroup::cyclic(4));
        let z2 = TopologicalGroup::discrete(FiniteGroup::cyclic(2));
        let r = GroupHom::new(z4.clone(), z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(r.kernel(), set(&[0, 2]));
        assert_eq!(GroupHom::identity(&z4).kernel(), set(&[0]));
        let z2 = TopologicalGroup::discrete(FiniteGroup::cyclic(2));
        assert!(GroupHom::new(z4, z2, vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn group_topologies() {
        let z2 = FiniteGroup::cyclic(2);
        let indiscrete = TopologicalGroup::new(z2.clone(), FiniteSpace::indiscrete(["0", "1"])).unwrap();
        assert!(indiscrete.translations_are_homeomorphisms());
        let sierpinski = FiniteSpace::from_preorder(vec!["0".into(), "1".into()], &[(0, 1)]).unwrap();
        assert!(matches!(
            TopologicalGroup::new(z2, sierpinski),
            Err(GroupError::NotContinuous(_))
        ));
        // ℤ₄ with the topology whose opens are unions of cosets of {0,2}
        let z4 = FiniteGroup::cyclic(4);
        let top = FiniteSpace::from_preorder(
            (0..4).map(|i| i.to_string()).collect(),
            &[(0, 2), (2, 0), (1, 3), (3, 1)],
        )
        .unwrap();
        let tg = TopologicalGroup::new(z4, top).unwrap();
        assert!(tg.translations_are_homeomorphisms());
        let (q, _) = tg.quotient(&set(&[0, 2])).unwrap();
        assert!(q.topology().is_discrete());
    }
}

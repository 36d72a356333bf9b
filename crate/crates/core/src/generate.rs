//! Seeded random partial actions for property checks.
//!
//! Every partial action is the restriction of a global one to an open set,
//! so instances are produced that way: a random global `G`-space `Y` made of
//! coset spaces `G/K` with a random invariant preorder, restricted to a random
//! open subset `X`.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::{induce_from_global, PartialAction};
use crate::groups::{FiniteGroup, TopologicalGroup};
use crate::topology::{close_preorder, FiniteSpace, PointSet};

/// Size limits for generated instances.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_ambient: usize,
    pub max_points: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_ambient: 12, max_points: 5 }
    }
}

/// A generated instance together with the global action it came from.
#[derive(Debug, Clone)]
pub struct Generated {
    pub action: PartialAction,
    pub ambient: PartialAction,
    pub subset: PointSet,
}

pub fn groups() -> Vec<FiniteGroup> {
    let mut all: Vec<FiniteGroup> = (1..=6).map(FiniteGroup::cyclic).collect();
    all.push(FiniteGroup::klein());
    all.push(FiniteGroup::symmetric3());
    all
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random global action of `group` on a disjoint union of coset spaces.
pub fn random_global(rng: &mut impl Rng, group: &FiniteGroup, limits: Limits) -> PartialAction {
    let subgroups = group.all_subgroups();
    // (block, coset); blocks are independent copies of G/K
    let mut points: Vec<(usize, PointSet)> = Vec::new();
    for block in 0.. {
        let k = subgroups.choose(rng).expect("trivial subgroup exists");
        let next = group.left_cosets(k);
        if !points.is_empty() && points.len() + next.len() > limits.max_ambient {
            break;
        }
        points.extend(next.into_iter().map(|c| (block, c)));
        if points.len() >= limits.max_ambient || rng.random_bool(0.4) {
            break;
        }
    }
    let n = points.len();
    let act = |g: usize, y: usize| -> usize {
        let (block, coset) = &points[y];
        let image: PointSet = coset.iter().map(|&k| group.mul(g, k)).collect();
        points
            .iter()
            .position(|(b, c)| b == block && *c == image)
            .expect("left multiplication permutes cosets")
    };
    let mut leq = vec![vec![false; n]; n];
    for (y, row) in leq.iter_mut().enumerate() {
        row[y] = true;
    }
    for _ in 0..rng.random_range(0..=n) {
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        for g in 0..group.order() {
            leq[act(g, a)][act(g, b)] = true;
        }
    }
    close_preorder(&mut leq);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| leq[a][b])
        .collect();
    let names = (0..n).map(|y| format!("y{y}")).collect();
    let space = FiniteSpace::from_preorder(names, &pairs).expect("closed preorder");
    PartialAction::global(TopologicalGroup::discrete(group.clone()), space, act)
        .expect("invariant preorder gives a continuous global action")
}

/// A random nonempty open subset of at most `max` points, if one exists.
pub fn random_open(rng: &mut impl Rng, space: &FiniteSpace, max: usize) -> Option<PointSet> {
    let small: Vec<usize> = (0..space.len()).filter(|&y| space.up_set(y).len() <= max).collect();
    let first = *small.choose(rng)?;
    let mut open = space.up_set(first);
    for _ in 0..rng.random_range(0..max) {
        let y = *small.choose(rng).expect("nonempty");
        let grown: PointSet = open.union(&space.up_set(y)).copied().collect();
        if grown.len() <= max {
            open = grown;
        }
    }
    Some(open)
}

pub fn random_partial_action(rng: &mut impl Rng, limits: Limits) -> Generated {
    loop {
        let group = groups().choose(rng).expect("nonempty").clone();
        let ambient = random_global(rng, &group, limits);
        let Some(subset) = random_open(rng, ambient.space(), limits.max_points) else { continue };
        let action = induce_from_global(&ambient, &subset).expect("restriction to an open set is a partial action");
        return Generated { action, ambient, subset };
    }
}

/// A random normal subgroup of the acting group.
pub fn random_normal_subgroup(rng: &mut impl Rng, action: &PartialAction) -> PointSet {
    action.group().group().normal_subgroups().choose(rng).expect("trivial subgroup is normal").clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_instances_respect_limits() {
        let mut r = rng(7);
        for _ in 0..50 {
            let g = random_partial_action(&mut r, Limits::default());
            assert!(g.action.space().len() <= 5 && !g.action.space().is_empty());
            assert!(g.action.group().order() <= 6);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_partial_action(&mut rng(3), Limits::default());
        let b = random_partial_action(&mut rng(3), Limits::default());
        assert_eq!(a.action, b.action);
    }
}

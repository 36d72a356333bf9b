//! The enveloping space `X_G` of a partial action and the theorem checks
//! phrased in terms of it.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::action::{induce_from_global, is_g_map, transfer_report, PartialAction, TransferReport};
use crate::topology::{map_properties, ContinuousMap, FiniteSpace, PointSet};
use crate::{ensure, Error, TheoremViolation};

/// `X_G = (G×X)/R` with the global action `μ` and the maps `ι` and `q`.
///
/// Points of `G×X` are indexed `g·|X| + x`. Classes are ordered by their
/// least member, which is also the representative used in the class name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopingSpace {
    pub carrier: FiniteSpace,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub mu: PartialAction,
    pub iota: ContinuousMap,
    pub q: ContinuousMap,
}

impl EnvelopingSpace {
    /// The class `[g, x]`.
    pub fn class(&self, g: usize, x: usize) -> usize {
        self.class_of[g * self.iota.dom().len() + x]
    }

    /// `ι(X)` as a set of classes.
    pub fn iota_image(&self) -> PointSet {
        self.iota.mapping().iter().copied().collect()
    }
}

/// `(g,x) R (h,y)` iff `x ∈ X_{g⁻¹h}` and `η_{h⁻¹g}(x) = y`.
pub fn related(eta: &PartialAction, (g, x): (usize, usize), (h, y): (usize, usize)) -> bool {
    let grp = eta.group().group();
    eta.act(grp.mul(grp.inv(h), g), x) == Some(y)
}

/// Builds `X_G` and verifies every contractual property before returning it.
pub fn globalize(eta: &PartialAction) -> Result<EnvelopingSpace, TheoremViolation> {
    let grp = eta.group().group();
    let (order, n) = (grp.order(), eta.space().len());
    let size = order * n;
    let pair = |p: usize| (p / n, p % n);

    let mut uf = UnionFind::<usize>::new(size);
    for p in 0..size {
        for r in 0..size {
            if related(eta, pair(p), pair(r)) {
                uf.union(p, r);
            }
        }
    }
    let labels = uf.into_labeling();
    for p in 0..size {
        for r in 0..size {
            ensure((labels[p] == labels[r]) == related(eta, pair(p), pair(r)), "relation-equivalence", || {
                format!("R disagrees with its generated equivalence at {p}, {r}")
            })?;
        }
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; size];
    let mut seen = std::collections::BTreeMap::new();
    for p in 0..size {
        let c = *seen.entry(labels[p]).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(p);
        class_of[p] = c;
    }
    let names = classes
        .iter()
        .map(|c| {
            let (g, x) = pair(c[0]);
            format!("[{},{}]", grp.name(g), eta.space().name(x))
        })
        .collect();
    let product = eta.product_space();
    let (carrier, q) = product.quotient_named(&classes, names).expect("R-classes partition G×X");

    for c in &classes {
        for g in 0..order {
            let targets: PointSet = c.iter().map(|&p| class_of[grp.mul(g, p / n) * n + p % n]).collect();
            ensure(targets.len() == 1, "mu-well-defined", || {
                format!("μ_{} is not constant on a class", grp.name(g))
            })?;
        }
    }
    let mu = PartialAction::global(eta.group().clone(), carrier.clone(), |g, c| {
        let p = classes[c][0];
        class_of[grp.mul(g, p / n) * n + p % n]
    })
    .map_err(|e| violation("mu-global-action", e))?;

    let e = grp.identity();
    let iota = ContinuousMap::new(eta.space().clone(), carrier.clone(), (0..n).map(|x| class_of[e * n + x]).collect())
        .map_err(|e| violation("iota-continuous", e))?;
    let ip = iota.properties();
    ensure(ip.injective && ip.open_map, "iota-open-embedding", || "ι is not an open injection".into())?;
    let qp = q.properties();
    ensure(qp.continuous && qp.open_map, "q-open", || "q is not continuous and open".into())?;

    let image: PointSet = iota.mapping().iter().copied().collect();
    let saturation: PointSet = (0..order)
        .flat_map(|g| image.iter().map(move |&c| (g, c)))
        .map(|(g, c)| mu.act(g, c).expect("global"))
        .collect();
    ensure(saturation.len() == carrier.len(), "minimality", || "G·ι(X) ≠ X_G".into())?;

    let induced = induce_from_global(&mu, &image).map_err(|e| violation("induced-restriction", e))?;
    let members: Vec<usize> = image.iter().copied().collect();
    let to_induced: Vec<usize> = iota
        .mapping()
        .iter()
        .map(|c| members.iter().position(|m| m == c).expect("in image"))
        .collect();
    let report = is_g_map(&to_induced, eta, &induced).map_err(|e| violation("induced-restriction", e))?;
    ensure(report.is_g_equivalence, "induced-restriction", || {
        "μ restricted to ι(X) is not G-equivalent to η".into()
    })?;

    Ok(EnvelopingSpace { carrier, classes, class_of, mu, iota, q })
}

fn violation(check: &'static str, e: impl std::fmt::Display) -> TheoremViolation {
    TheoremViolation { check, detail: e.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct T1Report {
    pub domain_closed: bool,
    pub all_gx_closed: bool,
    pub xg_t1: bool,
    pub x_hausdorff: bool,
}

/// The chain "closed domain ⇒ closed stabilizer domains ⇒ T1 envelope".
pub fn t1_report(env: &EnvelopingSpace, eta: &PartialAction) -> Result<T1Report, TheoremViolation> {
    let domain_closed = eta.is_domain_closed();
    let all_gx_closed = (0..eta.space().len()).all(|x| eta.stabilizer_domain(x).expect("point").is_closed);
    let xg_t1 = env.carrier.separation().t1;
    let x_hausdorff = eta.space().separation().hausdorff;
    ensure(!domain_closed || all_gx_closed, "t1-chain", || {
        "closed domain with a non-closed stabilizer domain".into()
    })?;
    ensure(!(all_gx_closed && x_hausdorff) || xg_t1, "t1-chain", || {
        "closed stabilizer domains over a Hausdorff space but X_G is not T1".into()
    })?;
    Ok(T1Report { domain_closed, all_gx_closed, xg_t1, x_hausdorff })
}

/// `η̂` together with the canonical identification of its orbit space with `X_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatAction {
    pub eta_hat: PartialAction,
    /// Orbit of `(h, x)` ↦ `[h, x]`.
    pub comparison: ContinuousMap,
}

pub fn hat_action(eta: &PartialAction, env: &EnvelopingSpace) -> Result<HatAction, TheoremViolation> {
    let eta_hat = eta.hat();
    let orbits = eta_hat.orbit_space()?;
    let mut mapping = Vec::with_capacity(orbits.classes.len());
    for class in &orbits.classes {
        let targets: PointSet = class.iter().map(|&p| env.class_of[p]).collect();
        ensure(targets.len() == 1, "hat-orbit-space", || "η̂-orbit meets several R-classes".into())?;
        mapping.push(*targets.iter().next().expect("nonempty"));
    }
    let props = map_properties(&orbits.quotient, &env.carrier, &mapping).map_err(|e| violation("hat-orbit-space", e))?;
    ensure(props.homeomorphism, "hat-orbit-space", || {
        "orbit space of η̂ is not homeomorphic to X_G via the canonical map".into()
    })?;
    let comparison = ContinuousMap::new(orbits.quotient, env.carrier.clone(), mapping).expect("homeomorphism");
    Ok(HatAction { eta_hat, comparison })
}

/// Result of comparing the globalization of an induced action with its
/// ambient global action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalComparison {
    pub induced: PartialAction,
    pub env: EnvelopingSpace,
    /// `[g, x] ↦ u(g, x)`.
    pub alpha: ContinuousMap,
}

pub fn compare_with_global(u: &PartialAction, subset: &PointSet) -> Result<GlobalComparison, Error> {
    let induced = induce_from_global(u, subset)?;
    let saturation: PointSet = (0..u.group().order())
        .flat_map(|g| subset.iter().map(move |&x| (g, x)))
        .map(|(g, x)| u.act(g, x).expect("global"))
        .collect();
    if saturation.len() != u.space().len() {
        return Err(Error::GXNotAllOfY);
    }
    let env = globalize(&induced)?;
    let members: Vec<usize> = subset.iter().copied().collect();
    let n = members.len();
    let mut alpha = vec![usize::MAX; env.carrier.len()];
    for p in 0..u.group().order() * n {
        let value = u.act(p / n, members[p % n]).expect("global");
        let c = env.class_of[p];
        ensure(alpha[c] == usize::MAX || alpha[c] == value, "alpha-well-defined", || {
            format!("α is not well defined on {}", env.carrier.name(c))
        })?;
        alpha[c] = value;
    }
    let report = is_g_map(&alpha, &env.mu, u)?;
    ensure(report.is_g_equivalence, "alpha-equivalence", || "α is not a G-equivalence".into())?;
    let alpha = ContinuousMap::new(env.carrier.clone(), u.space().clone(), alpha)?;
    Ok(GlobalComparison { induced, env, alpha })
}

/// Property transfer from `G×X` to `X_G`.
pub fn property_transfer_env(eta: &PartialAction, env: &EnvelopingSpace) -> Result<TransferReport, TheoremViolation> {
    transfer_report(
        "envelope-property-transfer",
        eta.product_space().separation(),
        env.carrier.separation(),
        eta.is_domain_closed(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosedDomainCheck {
    pub x_hausdorff: bool,
    pub xg_hausdorff: bool,
    pub domain_closed: bool,
    pub hypotheses_hold: bool,
}

/// Over a compact Hausdorff `X`, a Hausdorff envelope forces a closed domain.
pub fn hausdorff_implies_closed_domain_check(
    eta: &PartialAction,
    env: &EnvelopingSpace,
) -> Result<ClosedDomainCheck, TheoremViolation> {
    let x_hausdorff = eta.space().separation().hausdorff;
    let xg_hausdorff = env.carrier.separation().hausdorff;
    let domain_closed = eta.is_domain_closed();
    if x_hausdorff {
        ensure(!xg_hausdorff || domain_closed, "hausdorff-envelope-closed-domain", || {
            "X_G is Hausdorff but G∗X is not closed".into()
        })?;
    }
    Ok(ClosedDomainCheck { x_hausdorff, xg_hausdorff, domain_closed, hypotheses_hold: x_hausdorff })
}

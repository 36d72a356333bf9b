//! The partial action of `G/H` on `X/∼_H` for a normal subgroup `H`.
//!
//! Two constructions are kept side by side: one transports the action of
//! `G/H` on `X_G/∼_H` through `φ`, the other evaluates the explicit witness
//! formulas. They must agree exactly; the explicit one is returned.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::action::{induce_from_global, is_g_map, pullback, PartialAction};
use crate::globalization::{globalize, EnvelopingSpace};
use crate::groups::{GroupHom, TopologicalGroup};
use crate::topology::{map_properties, ContinuousMap, FiniteSpace, PointSet};
use crate::{ensure, Error, TheoremViolation};

/// Everything built for one normal subgroup `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientActionBundle {
    pub subgroup: PointSet,
    /// `Z = X/∼_H`.
    pub z: FiniteSpace,
    /// Orbit classes of `Z`, as point lists of `X`.
    pub z_classes: Vec<Vec<usize>>,
    pub pi_h: ContinuousMap,
    pub quotient_group: TopologicalGroup,
    pub p_h: GroupHom,
    /// `η_{G/H}` on `Z`.
    pub eta_mod: PartialAction,
    /// `η^{p_H}` on `Z`.
    pub eta_pullback: PartialAction,
    pub env: EnvelopingSpace,
    /// `X_G/∼_H` with the global action `μ_{G/H}`.
    pub mu_mod: PartialAction,
    /// Class of `[g, x]` in `X_G/∼_H`, indexed like `env.class_of`.
    pub w_class_of: Vec<usize>,
    /// `φ: Z → X_G/∼_H`, `π_H(x) ↦ H[1, x]`.
    pub phi: ContinuousMap,
}

pub fn build_quotient_action(eta: &PartialAction, subgroup: &PointSet) -> Result<QuotientActionBundle, Error> {
    let grp = eta.group().group();
    let n = eta.space().len();
    let (quotient_group, p_h) = eta.group().quotient(subgroup)?;
    let cosets: Vec<Vec<usize>> = (0..quotient_group.order())
        .map(|c| (0..grp.order()).filter(|&g| p_h.apply(g) == c).collect())
        .collect();
    let h_members: Vec<usize> = subgroup.iter().copied().collect();
    let is_defined = |g: usize, x: usize| eta.act(g, x).is_some();

    let (eta_h, _) = eta.restrict_to_subgroup(subgroup)?;
    let orbits = eta_h.orbit_space()?;
    let (z, pi_h, z_classes) = (orbits.quotient, orbits.pi, orbits.classes);

    // X_G/∼_H and μ_{G/H}
    let env = globalize(eta)?;
    let (mu_h, _) = env.mu.restrict_to_subgroup(subgroup)?;
    let w_orbits = mu_h.orbit_space()?;
    let w_class_of: Vec<usize> = env.class_of.iter().map(|&c| w_orbits.class_of[c]).collect();
    for (c, coset) in cosets.iter().enumerate() {
        for class in &w_orbits.classes {
            let targets: BTreeSet<usize> = coset
                .iter()
                .flat_map(|&g| class.iter().map(move |&p| (g, p)))
                .map(|(g, p)| w_orbits.class_of[env.mu.act(g, p).expect("global")])
                .collect();
            ensure(targets.len() == 1, "mu-mod-well-defined", || {
                format!("μ_{{G/H}} is not well defined for coset {}", quotient_group.group().name(c))
            })?;
        }
    }
    let mu_mod = PartialAction::global(quotient_group.clone(), w_orbits.quotient.clone(), |c, w| {
        let p = w_orbits.classes[w][0];
        w_orbits.class_of[env.mu.act(cosets[c][0], p).expect("global")]
    })
    .map_err(|e| TheoremViolation { check: "mu-mod-global-action", detail: e.to_string() })?;

    let e = grp.identity();
    let mut phi_map = Vec::with_capacity(z.len());
    for class in &z_classes {
        let targets: BTreeSet<usize> = class.iter().map(|&x| w_class_of[e * n + x]).collect();
        ensure(targets.len() == 1, "phi-well-defined", || "φ depends on the orbit representative".into())?;
        phi_map.push(*targets.iter().next().expect("nonempty"));
    }
    let phi = ContinuousMap::new(z.clone(), mu_mod.space().clone(), phi_map)
        .map_err(|e| TheoremViolation { check: "phi-continuous", detail: e.to_string() })?;
    let pp = phi.properties();
    ensure(pp.injective && pp.open_map, "phi-open-injection", || "φ is not an open injection".into())?;

    // Route A: induce μ_{G/H} on Im φ, transport along φ.
    let image: PointSet = phi.mapping().iter().copied().collect();
    let image_members: Vec<usize> = image.iter().copied().collect();
    let induced = induce_from_global(&mu_mod, &image)
        .map_err(|e| TheoremViolation { check: "route-a-induced", detail: e.to_string() })?;
    let phi_inv = |w: usize| phi.mapping().iter().position(|&v| v == w).expect("in image");
    let route_a: Vec<Vec<Option<usize>>> = (0..cosets.len())
        .map(|c| {
            (0..z.len())
                .map(|k| {
                    let pos = image_members.iter().position(|&w| w == phi.apply(k)).expect("in image");
                    induced.act(c, pos).map(|q| phi_inv(image_members[q]))
                })
                .collect()
        })
        .collect();

    // Route B: witness formulas, checked over every representative choice.
    let qgrp = quotient_group.group();
    let mut route_b = vec![vec![None; z.len()]; cosets.len()];
    for (c, coset) in cosets.iter().enumerate() {
        for (k, class) in z_classes.iter().enumerate() {
            let coset_name = || qgrp.name(c).to_string();
            let mut values = BTreeSet::new();
            let mut defined_everywhere = true;
            let mut defined_somewhere = false;
            for &g in coset {
                for &x in class {
                    let witnesses: Vec<usize> =
                        h_members.iter().map(|&h| grp.mul(h, g)).filter(|&hg| is_defined(hg, x)).collect();
                    defined_everywhere &= !witnesses.is_empty();
                    defined_somewhere |= !witnesses.is_empty();
                    values.extend(witnesses.iter().map(|&hg| pi_h.apply(eta.act(hg, x).expect("defined"))));
                }
            }
            ensure(defined_everywhere || !defined_somewhere, "route-b-domain-independence", || {
                format!("domain membership of {} under {} depends on representatives", z.name(k), coset_name())
            })?;
            ensure(values.len() <= 1, "route-b-value-independence", || {
                format!("value at {} under {} depends on representatives", z.name(k), coset_name())
            })?;
            route_b[c][k] = if defined_somewhere {
                let (g, x) = (coset[0], class[0]);
                let h = h_members.iter().find(|&&h| is_defined(grp.mul(h, g), x)).expect("witness");
                Some(pi_h.apply(eta.act(grp.mul(*h, g), x).expect("defined")))
            } else {
                None
            };
        }
    }

    // The image-domain formula, literally with hg⁻¹, against the pair formula.
    for (c, coset) in cosets.iter().enumerate() {
        let g = coset[0];
        let formula: PointSet = (0..n)
            .filter(|&x| h_members.iter().any(|&h| is_defined(grp.mul(h, grp.inv(g)), x)))
            .map(|x| pi_h.apply(x))
            .collect();
        let inv = qgrp.inv(c);
        let from_pairs: PointSet = (0..z.len()).filter(|&k| route_b[inv][k].is_some()).collect();
        ensure(formula == from_pairs, "domain-formulas-agree", || {
            format!("image-domain formula disagrees with the pair formula at {}", qgrp.name(c))
        })?;
    }

    for c in 0..cosets.len() {
        for k in 0..z.len() {
            if route_a[c][k] != route_b[c][k] {
                return Err(Error::RouteMismatch { coset: qgrp.name(c).into(), class: z.name(k).into() });
            }
        }
    }

    let eta_mod = PartialAction::from_table(quotient_group.clone(), z.clone(), route_b, Default::default())
        .map_err(|e| TheoremViolation { check: "quotient-partial-action", detail: e.to_string() })?;
    let eta_pullback = pullback(&eta_mod, &p_h)?;
    for g in 0..grp.order() {
        for (k, class) in z_classes.iter().enumerate() {
            if let Some(value) = eta_pullback.act(g, k) {
                for &x in class {
                    let w = w_class_of[g * n + x];
                    ensure(phi.apply(value) == w, "pullback-through-phi", || {
                        format!("η^{{p_H}}({}, {}) ≠ φ⁻¹(H[g,x])", grp.name(g), z.name(k))
                    })?;
                }
            }
        }
    }

    Ok(QuotientActionBundle {
        subgroup: subgroup.clone(),
        z,
        z_classes,
        pi_h,
        quotient_group,
        p_h,
        eta_mod,
        eta_pullback,
        env,
        mu_mod,
        w_class_of,
        phi,
    })
}

/// `ψ: (X/∼_H)/∼_{G/H} → X/∼_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiReport {
    pub psi: ContinuousMap,
}

pub fn psi_homeomorphism(eta: &PartialAction, bundle: &QuotientActionBundle) -> Result<PsiReport, TheoremViolation> {
    let outer = bundle.eta_mod.orbit_space()?;
    let target = eta.orbit_space()?;
    let mut mapping = vec![usize::MAX; outer.quotient.len()];
    for x in 0..eta.space().len() {
        let o = outer.class_of[bundle.pi_h.apply(x)];
        let t = target.class_of[x];
        ensure(mapping[o] == usize::MAX || mapping[o] == t, "psi-well-defined", || {
            format!("ψ is not well defined at {}", outer.quotient.name(o))
        })?;
        mapping[o] = t;
    }
    let props = map_properties(&outer.quotient, &target.quotient, &mapping)
        .map_err(|e| TheoremViolation { check: "psi-homeomorphism", detail: e.to_string() })?;
    ensure(props.homeomorphism, "psi-homeomorphism", || "ψ is not a homeomorphism".into())?;
    let psi = ContinuousMap::new(outer.quotient, target.quotient, mapping).expect("continuous");
    Ok(PsiReport { psi })
}

/// The globalization of `η_{G/H}` against `μ_{G/H}` on `X_G/∼_H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGlobalization {
    pub env: EnvelopingSpace,
    /// `[cH, z] ↦ μ_{cH}(φ(z))`.
    pub kappa: ContinuousMap,
}

pub fn globalization_of_quotient(bundle: &QuotientActionBundle) -> Result<QuotientGlobalization, TheoremViolation> {
    let env = globalize(&bundle.eta_mod)?;
    let nz = bundle.z.len();
    let mut kappa = vec![usize::MAX; env.carrier.len()];
    for (p, &class) in env.class_of.iter().enumerate() {
        let value = bundle.mu_mod.act(p / nz, bundle.phi.apply(p % nz)).expect("global");
        ensure(kappa[class] == usize::MAX || kappa[class] == value, "kappa-well-defined", || {
            format!("canonical map is not well defined on {}", env.carrier.name(class))
        })?;
        kappa[class] = value;
    }
    let report = is_g_map(&kappa, &env.mu, &bundle.mu_mod)
        .map_err(|e| TheoremViolation { check: "quotient-globalization", detail: e.to_string() })?;
    ensure(report.is_g_equivalence, "quotient-globalization", || {
        "globalization of the quotient action is not equivalent to X_G/∼_H".into()
    })?;
    let kappa = ContinuousMap::new(env.carrier.clone(), bundle.mu_mod.space().clone(), kappa).expect("homeomorphism");
    Ok(QuotientGlobalization { env, kappa })
}

/// `π_{H₁,H₂}: X/∼_{H₁} → X/∼_{H₂}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BondingMap {
    pub map: ContinuousMap,
    pub g_map_verified: bool,
}

pub fn bonding_map(lower: &QuotientActionBundle, upper: &QuotientActionBundle) -> Result<BondingMap, Error> {
    if !lower.subgroup.is_subset(&upper.subgroup) {
        let grp = lower.p_h.dom().group();
        return Err(Error::NotNested(grp.subset_name(&lower.subgroup), grp.subset_name(&upper.subgroup)));
    }
    let mut mapping = vec![usize::MAX; lower.z.len()];
    for x in 0..lower.pi_h.dom().len() {
        let (a, b) = (lower.pi_h.apply(x), upper.pi_h.apply(x));
        ensure(mapping[a] == usize::MAX || mapping[a] == b, "bond-factorization", || {
            format!("π_H₂ does not factor through π_H₁ at {}", lower.z.name(a))
        })?;
        mapping[a] = b;
    }
    let map = ContinuousMap::new(lower.z.clone(), upper.z.clone(), mapping)
        .map_err(|e| TheoremViolation { check: "bond-continuous", detail: e.to_string() })?;
    let report = is_g_map(map.mapping(), &lower.eta_pullback, &upper.eta_pullback)?;
    ensure(report.is_g_map, "bond-g-map", || "bonding map is not a G-map".into())?;
    Ok(BondingMap { map, g_map_verified: report.is_g_map })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorollaryHypotheses {
    pub group_hausdorff: bool,
    pub subgroup_closed: bool,
    pub x_hausdorff: bool,
    pub domain_closed: bool,
}

impl CorollaryHypotheses {
    pub fn hold(&self) -> bool {
        self.group_hausdorff && self.subgroup_closed && self.x_hausdorff && self.domain_closed
    }

    fn missing(&self) -> String {
        [
            (self.group_hausdorff, "G Hausdorff"),
            (self.subgroup_closed, "H closed"),
            (self.x_hausdorff, "X Hausdorff"),
            (self.domain_closed, "G∗X closed"),
        ]
        .iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| *name)
        .collect::<Vec<_>>()
        .join(", ")
    }
}

/// Closed domains pass to the quotient action.
pub fn corollary_hypotheses(eta: &PartialAction, subgroup: &PointSet) -> CorollaryHypotheses {
    CorollaryHypotheses {
        group_hausdorff: eta.group().topology().separation().hausdorff,
        subgroup_closed: eta.group().topology().is_closed(subgroup),
        x_hausdorff: eta.space().separation().hausdorff,
        domain_closed: eta.is_domain_closed(),
    }
}

pub fn closed_domain_corollary_check(
    eta: &PartialAction,
    bundle: &QuotientActionBundle,
) -> Result<CorollaryHypotheses, Error> {
    let hypotheses = corollary_hypotheses(eta, &bundle.subgroup);
    if !hypotheses.hold() {
        return Err(Error::HypothesesNotMet(hypotheses.missing()));
    }
    ensure(bundle.eta_mod.is_domain_closed(), "quotient-closed-domain", || {
        "the domain of the quotient action is not closed".into()
    })?;
    Ok(hypotheses)
}

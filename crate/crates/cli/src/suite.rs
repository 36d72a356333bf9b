//! The theorem suite: every applicable check on one fixture, in a fixed order.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use pact_core::action::{induce_from_global, is_g_map, points_name, TransferReport};
use pact_core::fixture::Fixture;
use pact_core::globalization::{
    compare_with_global, hat_action, hausdorff_implies_closed_domain_check, property_transfer_env, t1_report,
};
use pact_core::inverse_limit::{build_system, lambda_equivalence, limit_hypotheses, DirectedSet};
use pact_core::metric::{hyperspace_action, invariant_metric_via_globalization, orbit_metrizability_report};
use pact_core::quotient::{
    closed_domain_corollary_check, corollary_hypotheses, build_quotient_action, globalization_of_quotient,
    psi_homeomorphism,
};
use pact_core::{globalize, EnvelopingSpace, Error, PartialAction, PointSet, Rational, TheoremViolation};

use crate::report::{CheckRecord, Report, Verdict};

/// Hypothesis and flag values of a check that completed.
#[derive(Debug, Default)]
pub struct Outcome {
    hypotheses: Vec<(&'static str, bool)>,
    flags: Vec<(String, Value)>,
}

impl Outcome {
    fn hyp(mut self, name: &'static str, value: bool) -> Self {
        self.hypotheses.push((name, value));
        self
    }

    fn flag(mut self, name: impl Into<String>, value: impl Into<Value>) -> Self {
        self.flags.push((name.into(), value.into()));
        self
    }

    fn transfer(mut self, report: &TransferReport) -> Self {
        self = self.hyp("group_compact", report.group_compact).hyp("domain_closed", report.domain_closed);
        for p in &report.properties {
            self = self.flag(p.property, json!({ "source": p.source, "target": p.target }));
        }
        self
    }
}

fn fail(check: &'static str, detail: impl Into<String>) -> Error {
    TheoremViolation { check, detail: detail.into() }.into()
}

/// Runs one check. Only theorem violations become `violated`; any other
/// error means an assumption of the statement is absent on this instance.
pub fn run_check(id: String, anchor: &str, f: impl FnOnce() -> Result<Outcome, Error>) -> CheckRecord {
    let (verdict, outcome, detail) = match f() {
        Ok(o) => {
            let verdict = if o.hypotheses.iter().all(|(_, v)| *v) { Verdict::Holds } else { Verdict::HypothesesNotMet };
            (verdict, o, None)
        }
        Err(e @ (Error::Violation(_) | Error::RouteMismatch { .. })) => {
            (Verdict::Violated, Outcome::default(), Some(e.to_string()))
        }
        Err(e) => (Verdict::HypothesesNotMet, Outcome::default(), Some(e.to_string())),
    };
    CheckRecord {
        id,
        anchor: anchor.to_string(),
        hypotheses: outcome.hypotheses.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        flags: outcome.flags.into_iter().collect::<BTreeMap<_, _>>(),
        verdict,
        detail,
    }
}

/// Independent confirmation of the envelope contract.
pub fn envelope_flags(eta: &PartialAction, env: &EnvelopingSpace) -> Result<Outcome, Error> {
    let image = env.iota_image();
    let iota = env.iota.properties();
    let swept: PointSet = (0..eta.group().order())
        .flat_map(|g| image.iter().map(move |&c| (g, c)))
        .filter_map(|(g, c)| env.mu.act(g, c))
        .collect();
    let induced = induce_from_global(&env.mu, &image)?;
    let members: Vec<usize> = image.iter().copied().collect();
    let into_image: Vec<usize> = (0..eta.space().len())
        .map(|x| members.iter().position(|&c| c == env.iota.apply(x)).expect("ι lands in its image"))
        .collect();
    let equivalent = is_g_map(&into_image, eta, &induced)?.is_g_equivalence;
    let outcome = Outcome::default()
        .flag("classes", env.carrier.len())
        .flag("mu_global", env.mu.is_global())
        .flag("iota_open_embedding", iota.injective && env.carrier.is_open(&image))
        .flag("q_open", env.q.properties().open_map)
        .flag("g_iota_x_is_xg", swept.len() == env.carrier.len())
        .flag("induced_action_equivalent", equivalent);
    let all = outcome.flags.iter().skip(1).all(|(_, v)| v == &Value::Bool(true));
    if !all {
        return Err(fail("envelope-contract", "a property of the enveloping space failed"));
    }
    Ok(outcome)
}

fn selected(selection: Option<&[String]>, id: &str) -> bool {
    let base = id.split(':').next().unwrap_or(id);
    selection.is_none_or(|ids| ids.iter().any(|s| s == id || s == base))
}

/// The subgroups examined by the quotient checks: every normal subgroup.
fn normal_subgroups(eta: &PartialAction) -> Vec<PointSet> {
    eta.group().group().normal_subgroups()
}

pub fn run_theorem_suite(fixture: &Fixture, selection: Option<&[String]>) -> Report {
    let eta = &fixture.action;
    let grp = eta.group().group();
    let mut checks = Vec::new();
    let mut push = |id: String, anchor: &str, f: &dyn Fn() -> Result<Outcome, Error>| {
        if selected(selection, &id) {
            checks.push(run_check(id, anchor, f));
        }
    };
    let env = globalize(eta);
    let env_ref = || env.clone().map_err(Error::from);

    push("axioms".into(), "partial action axioms and the graph reformulation", &|| {
        let d = eta.domain_report();
        Ok(Outcome::default()
            .flag("global", eta.is_global())
            .flag("domain_open", d.is_open)
            .flag("domain_closed", d.is_closed))
    });
    push("globalization".into(), "enveloping space is the minimal globalization", &|| envelope_flags(eta, &env_ref()?));
    push("envelope-t1".into(), "closed domain gives closed stabilizer domains and a T1 envelope", &|| {
        let t = t1_report(&env_ref()?, eta)?;
        Ok(Outcome::default()
            .hyp("domain_closed", t.domain_closed)
            .hyp("x_hausdorff", t.x_hausdorff)
            .flag("all_gx_closed", t.all_gx_closed)
            .flag("xg_t1", t.xg_t1))
    });
    push("hat-orbit-space".into(), "orbit space of the lifted action on G×X is the envelope", &|| {
        let env = env_ref()?;
        let hat = hat_action(eta, &env)?;
        Ok(Outcome::default()
            .flag("orbits", hat.comparison.dom().len())
            .flag("homeomorphism", hat.comparison.properties().homeomorphism))
    });
    push("ambient-comparison".into(), "globalizing the induced action recovers the global action", &|| {
        let env = env_ref()?;
        let cmp = compare_with_global(&env.mu, &env.iota_image())?;
        Ok(Outcome::default().flag("alpha_equivalence", cmp.alpha.properties().homeomorphism))
    });
    push("closed-evaluation".into(), "closed domain makes the action closed and orbit maps perfect", &|| {
        let c = eta.closedness_report()?;
        Ok(Outcome::default()
            .hyp("group_compact", c.hypotheses.group_compact)
            .hyp("domain_closed", c.hypotheses.domain_closed)
            .flag("eta_closed_map", c.eta_closed_map)
            .flag("pi_perfect", c.pi_perfect)
            .flag("pi_hat_perfect", c.pi_hat_perfect))
    });
    push("orbit-property-transfer".into(), "separation properties pass from X to the orbit space", &|| {
        Ok(Outcome::default().transfer(&eta.property_transfer_orbit()?))
    });
    push("envelope-property-transfer".into(), "separation properties pass from G×X to the envelope", &|| {
        Ok(Outcome::default().transfer(&property_transfer_env(eta, &env_ref()?)?))
    });
    push("hausdorff-envelope".into(), "a Hausdorff envelope over compact Hausdorff X forces a closed domain", &|| {
        let c = hausdorff_implies_closed_domain_check(eta, &env_ref()?)?;
        Ok(Outcome::default()
            .hyp("x_hausdorff", c.x_hausdorff)
            .flag("xg_hausdorff", c.xg_hausdorff)
            .flag("domain_closed", c.domain_closed)
            .flag("graph_closed", eta.graph_of_action().is_closed))
    });
    push("orbit-metrizability".into(), "metrizable orbit space exactly when it is regular and T1", &|| {
        let o = orbit_metrizability_report(eta)?;
        Ok(Outcome::default()
            .flag("orbit_t1", o.orbit_t1)
            .flag("orbit_regular", o.orbit_regular)
            .flag("orbit_metrizable", o.orbit_metrizable))
    });
    push("invariant-metric".into(), "averaging over the envelope gives an invariant metric", &|| {
        let env = env_ref()?;
        let xg_t1 = env.carrier.separation().t1;
        if !xg_t1 {
            return Ok(Outcome::default().hyp("xg_t1", false));
        }
        let m = invariant_metric_via_globalization::<Rational>(eta, &env, None)?;
        Ok(Outcome::default()
            .hyp("xg_t1", true)
            .flag("metric_on_x", m.metric_on_x.display_matrix())
            .flag("mu_invariant", true)
            .flag("eta_invariant", true))
    });
    push("hyperspace".into(), "invariance of d passes to the Hausdorff metric", &|| {
        let Some(d) = fixture.metric.as_ref() else {
            return Ok(Outcome::default().hyp("metric_supplied", false));
        };
        let h = hyperspace_action(eta, d)?;
        Ok(Outcome::default()
            .hyp("metric_supplied", true)
            .hyp("base_invariant", h.base_invariant)
            .flag("subsets", h.hyperspace.subsets.len())
            .flag("lifted_invariant", h.lifted_invariant))
    });

    for h in normal_subgroups(eta) {
        let name = grp.subset_name(&h);
        push(format!("quotient-action:{name}"), "quotient partial action of G/H on X/∼_H", &|| {
            let b = build_quotient_action(eta, &h)?;
            let psi = psi_homeomorphism(eta, &b)?;
            let kappa = globalization_of_quotient(&b)?;
            Ok(Outcome::default()
                .flag("classes", b.z.len())
                .flag("routes_agree", true)
                .flag("psi_homeomorphism", psi.psi.properties().homeomorphism)
                .flag("globalization_equivalent", kappa.kappa.properties().homeomorphism))
        });
        push(format!("closed-domain-quotient:{name}"), "closed domain passes to the quotient action", &|| {
            let hyp = corollary_hypotheses(eta, &h);
            let base = Outcome::default()
                .hyp("group_hausdorff", hyp.group_hausdorff)
                .hyp("subgroup_closed", hyp.subgroup_closed)
                .hyp("x_hausdorff", hyp.x_hausdorff)
                .hyp("domain_closed", hyp.domain_closed);
            if !hyp.hold() {
                return Ok(base);
            }
            let b = build_quotient_action(eta, &h)?;
            closed_domain_corollary_check(eta, &b)?;
            Ok(base.flag("quotient_domain_closed", b.eta_mod.is_domain_closed()))
        });
    }

    for (k, chain) in fixture.chains.iter().enumerate() {
        let label: Vec<String> = chain.iter().map(|h| grp.subset_name(h)).collect();
        push(format!("inverse-limit:{k}"), "X is the inverse limit of its quotients X/∼_H", &|| {
            let system = build_system(eta, DirectedSet::chain(chain.len())?, chain.clone())?;
            let hyp = limit_hypotheses(&system);
            let base = Outcome::default()
                .hyp("x_hausdorff", hyp.x_hausdorff)
                .hyp("domain_closed", hyp.domain_closed)
                .hyp("subgroups_separate", hyp.subgroups_separate)
                .flag("chain", label.clone());
            if !hyp.hold() {
                return Ok(base);
            }
            let r = lambda_equivalence(&system)?;
            let f = r.flags;
            Ok(base
                .flag("threads", r.limit.threads.len())
                .flag("injective", f.injective)
                .flag("surjective", f.surjective)
                .flag("continuous", f.continuous)
                .flag("open_onto_image", f.open_onto_image)
                .flag("g_equivalence", f.g_equivalence)
                .flag("separates_closed_sets", f.separates_closed_sets))
        });
    }

    Report::new("theorems", &fixture.name, Value::Null, checks)
}

/// Display name of a set of group elements.
pub fn subgroup_label(eta: &PartialAction, h: &PointSet) -> String {
    eta.group().group().subset_name(h)
}

/// Display name of a set of points.
pub fn point_label(eta: &PartialAction, s: &PointSet) -> String {
    points_name(eta.space(), s)
}

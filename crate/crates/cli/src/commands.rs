//! One function per subcommand, each producing a [`Report`].

use std::collections::BTreeMap;

use serde_json::json;

use pact_core::fixture::Fixture;
use pact_core::inverse_limit::{build_system, lambda_equivalence, DirectedSet};
use pact_core::metric::{hyperspace_action, invariant_metric_via_globalization, is_invariant_metric};
use pact_core::quotient::{build_quotient_action, psi_homeomorphism};
use pact_core::{globalize, Checks, FiniteSpace, PartialAction, PointSet, Rational};

use crate::load::CliError;
use crate::report::Report;
use crate::suite::{envelope_flags, point_label, run_check, run_theorem_suite, subgroup_label};

fn opens(space: &FiniteSpace) -> Vec<String> {
    space.opens().iter().map(|u| {
        let names: Vec<&str> = u.iter().map(|&x| space.name(x)).collect();
        format!("{{{}}}", names.join(","))
    }).collect()
}

/// `g ↦ {x ↦ g·x}` by name, skipping empty maps.
fn action_table(eta: &PartialAction) -> BTreeMap<String, BTreeMap<String, String>> {
    let grp = eta.group().group();
    let sp = eta.space();
    (0..grp.order())
        .filter(|&g| !eta.domain(grp.inv(g)).is_empty())
        .map(|g| {
            let map = eta.map_of(g).into_iter().map(|(x, y)| (sp.name(x).to_string(), sp.name(y).to_string())).collect();
            (grp.name(g).to_string(), map)
        })
        .collect()
}

pub fn validate(fixture: &Fixture, checks: Checks) -> Report {
    let eta = &fixture.action;
    let grp = eta.group().group();
    let d = eta.domain_report();
    let domains: BTreeMap<String, String> =
        (0..grp.order()).map(|g| (grp.name(g).to_string(), point_label(eta, &eta.domain(g)))).collect();
    let data = json!({
        "note": fixture.note,
        "group": grp.elements(),
        "points": eta.space().points(),
        "mode": match checks { Checks::Topological => "topological", Checks::SetTheoretic => "set-theoretic" },
        "domains": domains,
        "global": eta.is_global(),
        "domain_open": d.is_open,
        "domain_closed": d.is_closed,
    });
    Report::new("validate", &fixture.name, data, Vec::new())
}

pub fn globalize_cmd(fixture: &Fixture) -> Result<Report, CliError> {
    let eta = &fixture.action;
    let env = globalize(eta)?;
    let grp = eta.group().group();
    let n = eta.space().len();
    let classes: BTreeMap<String, Vec<String>> = env
        .classes
        .iter()
        .enumerate()
        .map(|(c, members)| {
            let pairs = members.iter().map(|&p| format!("({},{})", grp.name(p / n), eta.space().name(p % n))).collect();
            (env.carrier.name(c).to_string(), pairs)
        })
        .collect();
    let iota: BTreeMap<String, String> =
        (0..n).map(|x| (eta.space().name(x).to_string(), env.carrier.name(env.iota.apply(x)).to_string())).collect();
    let data = json!({
        "classes": classes,
        "points": env.carrier.points(),
        "opens": opens(&env.carrier),
        "mu": action_table(&env.mu),
        "iota": iota,
    });
    let check = run_check("globalization".into(), "enveloping space is the minimal globalization", || {
        envelope_flags(eta, &env)
    });
    Ok(Report::new("globalize", &fixture.name, data, vec![check]))
}

pub fn orbits(fixture: &Fixture) -> Result<Report, CliError> {
    let eta = &fixture.action;
    let o = eta.orbit_space()?;
    let sep = o.quotient.separation();
    let data = json!({
        "classes": o.class_names(),
        "opens": opens(&o.quotient),
        "t1": sep.t1,
        "hausdorff": sep.hausdorff,
        "regular": sep.regular,
        "metrizable": sep.metrizable,
    });
    Ok(Report::new("orbits", &fixture.name, data, Vec::new()))
}

/// Parses `a,b,c` (braces optional) into group elements.
pub fn parse_subgroup(eta: &PartialAction, text: &str) -> Result<PointSet, CliError> {
    let grp = eta.group().group();
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let set = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| grp.index_of(s).ok_or_else(|| CliError::Usage(format!("unknown group element {s:?}"))))
        .collect::<Result<PointSet, _>>()?;
    if !grp.is_subgroup(&set) {
        return Err(CliError::Usage(format!("{} is not a subgroup", grp.subset_name(&set))));
    }
    Ok(set)
}

pub fn quotient(fixture: &Fixture, subgroup: &str) -> Result<Report, CliError> {
    let eta = &fixture.action;
    let h = parse_subgroup(eta, subgroup)?;
    let b = build_quotient_action(eta, &h)?;
    let psi = psi_homeomorphism(eta, &b)?;
    let psi_map: BTreeMap<String, String> = (0..psi.psi.dom().len())
        .map(|o| (psi.psi.dom().name(o).to_string(), psi.psi.cod().name(psi.psi.apply(o)).to_string()))
        .collect();
    let data = json!({
        "subgroup": subgroup_label(eta, &h),
        "classes": b.z.points(),
        "opens": opens(&b.z),
        "quotient_group": b.quotient_group.group().elements(),
        "action": action_table(&b.eta_mod),
        "psi": psi_map,
    });
    Ok(Report::new("quotient", &fixture.name, data, Vec::new()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricMode {
    InvariantCheck,
    Construct,
    Hyperspace,
}

pub fn metric(fixture: &Fixture, mode: MetricMode) -> Result<Report, CliError> {
    let eta = &fixture.action;
    let need = || fixture.metric.as_ref().ok_or_else(|| CliError::Usage(format!("fixture {} has no metric", fixture.name)));
    let data = match mode {
        MetricMode::InvariantCheck => {
            let r = is_invariant_metric(eta, need()?)?;
            json!({
                "invariant": r.invariant,
                "witness": r.witness.map(|(g, x, y)| json!({ "g": g, "x": x, "y": y })),
            })
        }
        MetricMode::Construct => {
            let env = globalize(eta)?;
            let m = invariant_metric_via_globalization::<Rational>(eta, &env, None)?;
            json!({
                "envelope_points": m.metric_on_xg.points(),
                "metric_on_envelope": m.metric_on_xg.display_matrix(),
                "metric_on_x": m.metric_on_x.display_matrix(),
            })
        }
        MetricMode::Hyperspace => {
            let h = hyperspace_action(eta, need()?)?;
            json!({
                "subsets": h.hyperspace.metric.points(),
                "hausdorff_metric": h.hyperspace.metric.display_matrix(),
                "base_invariant": h.base_invariant,
                "lifted_invariant": h.lifted_invariant,
            })
        }
    };
    Ok(Report::new("metric", &fixture.name, data, Vec::new()))
}

/// Parses `a,b;c` into subgroups, largest first.
pub fn parse_chain(eta: &PartialAction, text: &str) -> Result<Vec<PointSet>, CliError> {
    text.split(';').map(|part| parse_subgroup(eta, part)).collect()
}

pub fn invlimit(fixture: &Fixture, chain: Option<&str>) -> Result<Report, CliError> {
    let eta = &fixture.action;
    let chain = match chain {
        Some(text) => parse_chain(eta, text)?,
        None => fixture
            .chains
            .first()
            .cloned()
            .ok_or_else(|| CliError::Usage(format!("fixture {} has no chain; pass --chain", fixture.name)))?,
    };
    let system = build_system(eta, DirectedSet::chain(chain.len())?, chain.clone())?;
    let r = lambda_equivalence(&system)?;
    let lambda: BTreeMap<String, String> = (0..eta.space().len())
        .map(|x| (eta.space().name(x).to_string(), r.limit.space.name(r.lambda.apply(x)).to_string()))
        .collect();
    let data = json!({
        "chain": chain.iter().map(|h| subgroup_label(eta, h)).collect::<Vec<_>>(),
        "threads": r.limit.space.points(),
        "lambda": lambda,
        "g_equivalence": r.flags.g_equivalence,
        "separates_closed_sets": r.flags.separates_closed_sets,
    });
    Ok(Report::new("invlimit", &fixture.name, data, Vec::new()))
}

pub fn theorems(fixture: &Fixture, only: Option<&str>) -> Report {
    let selection: Option<Vec<String>> =
        only.map(|s| s.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect());
    run_theorem_suite(fixture, selection.as_deref())
}

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use pact_core::action::induce_from_global;
use pact_core::fixture::{embedded, embedded_names, load_embedded, parse_spec, Fixture, FixtureError, FixtureSpec, GroupSpec};
use pact_core::generate::{random_normal_subgroup, random_partial_action, rng, Limits};
use pact_core::globalization::{hat_action, property_transfer_env, t1_report};
use pact_core::inverse_limit::{build_system, lambda_equivalence, DirectedSet};
use pact_core::metric::{hausdorff_metric, hyperspace_action, invariant_metric_via_globalization, FiniteMetric, Scalar};
use pact_core::quotient::{build_quotient_action, psi_homeomorphism, QuotientActionBundle};
use pact_core::{
    globalize, Checks, Error, FiniteGroup, GroupError, PartialAction, PartialActionError, PointSet, Rational,
};

type Outcome = Result<String, String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const RANDOM_INSTANCES: u64 = 100;

fn fixtures() -> Vec<Fixture> {
    embedded_names().map(|n| load_embedded(n).expect("embedded fixture")).collect()
}

fn random_instances() -> impl Iterator<Item = (u64, PartialAction)> {
    (0..RANDOM_INSTANCES).map(|seed| (seed, random_partial_action(&mut rng(seed), Limits::default()).action))
}

fn spec(name: &str) -> FixtureSpec {
    parse_spec(embedded(name).unwrap()).unwrap()
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Same partition of `0..a.len()`.
fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| (0..a.len()).all(|j| (a[i] == a[j]) == (b[i] == b[j])))
}

// ---------------------------------------------------------------- criterion 1

type Mutation = (&'static str, &'static str, fn(&mut FixtureSpec), fn(&FixtureError) -> bool);

fn action_err(e: &FixtureError) -> Option<&PartialActionError> {
    match e {
        FixtureError::Validation(Error::Action(a)) => Some(a),
        _ => None,
    }
}

fn not_associative(e: &FixtureError) -> bool {
    matches!(e, FixtureError::Validation(Error::Group(GroupError::NotAssociative(..))))
}
fn not_open(e: &FixtureError) -> bool {
    matches!(action_err(e), Some(PartialActionError::DomainNotOpen(_)))
}
fn composition(e: &FixtureError) -> bool {
    matches!(action_err(e), Some(PartialActionError::CompositionLawFails(..)))
}
fn not_monotone(e: &FixtureError) -> bool {
    matches!(action_err(e), Some(PartialActionError::NotHomeomorphism(_)))
}
fn identity(e: &FixtureError) -> bool {
    matches!(action_err(e), Some(PartialActionError::IdentityNotIdentity))
}

/// Replaces the group by its own Cayley table with `e·g₁` redirected to `e`.
fn break_associativity(s: &mut FixtureSpec) {
    let group = match &s.group {
        GroupSpec::Name(n) => FiniteGroup::named(n).unwrap(),
        GroupSpec::Table { elements, table, .. } => FiniteGroup::from_table(elements.clone(), table.clone()).unwrap(),
    };
    let mut table = group.table().to_vec();
    let e = group.identity();
    let g1 = (0..group.order()).find(|&g| g != e).unwrap();
    table[e][g1] = e;
    s.group = GroupSpec::Table { elements: group.elements().to_vec(), table, topology: None };
}

fn add_pair(s: &mut FixtureSpec, x: &str, y: &str) {
    s.space.preorder.get_or_insert_with(Vec::new).push((x.into(), y.into()));
}

fn set_map(s: &mut FixtureSpec, g: &str, pairs: &[(&str, &str)]) {
    s.maps.insert(g.into(), pairs.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect());
}

const MUTATIONS: &[Mutation] = &[
    ("sierpinski-z2", "associativity", break_associativity, not_associative),
    ("neg-z3", "associativity", break_associativity, not_associative),
    ("clopen-z2", "associativity", break_associativity, not_associative),
    ("cyclic-f", "associativity", break_associativity, not_associative),
    ("chain-z4", "associativity", break_associativity, not_associative),
    ("metric-hyper", "associativity", break_associativity, not_associative),
    ("sierpinski-z2", "closed point as domain", |s| {
        s.domains.insert("s".into(), names(&["a"]));
        set_map(s, "s", &[("a", "a")]);
    }, not_open),
    ("neg-z3", "domain not an up-set", |s| add_pair(s, "-2", "1"), not_open),
    ("clopen-z2", "domain not an up-set", |s| add_pair(s, "u", "v"), not_open),
    ("cyclic-f", "domain not an up-set", |s| add_pair(s, "0", "3"), not_open),
    ("metric-hyper", "domain not an up-set", |s| add_pair(s, "0", "9"), not_open),
    ("neg-z3", "swapped values", |s| set_map(s, "1", &[("1", "-2"), ("2", "-1")]), composition),
    ("cyclic-f", "generator acts as f²", |s| set_map(s, "1", &[("0", "2"), ("1", "0"), ("2", "1")]), composition),
    ("cyclic-f", "order-two element acts as f", |s| set_map(s, "3", &[("0", "1"), ("1", "2"), ("2", "0")]), composition),
    ("chain-z4", "generator rotates backwards", |s| {
        set_map(s, "1", &[("0", "3"), ("1", "0"), ("2", "1"), ("3", "2")])
    }, composition),
    ("metric-hyper", "involution replaced by a 4-cycle", |s| {
        set_map(s, "1", &[("0", "3"), ("1", "4"), ("3", "1"), ("4", "0")])
    }, composition),
    ("sierpinski-z2", "swap of the two points", |s| {
        s.domains.clear();
        set_map(s, "s", &[("a", "b"), ("b", "a")]);
    }, not_monotone),
    ("neg-z3", "specialization only on one side", |s| add_pair(s, "-1", "-2"), not_monotone),
    ("cyclic-f", "specialization inside U", |s| add_pair(s, "0", "1"), not_monotone),
    ("chain-z4", "specialization against the rotation", |s| add_pair(s, "0", "1"), not_monotone),
    ("metric-hyper", "specialization against the reflection", |s| add_pair(s, "0", "1"), not_monotone),
    ("cyclic-f", "identity moves a point", |s| {
        set_map(s, "0", &[("0", "1"), ("1", "0"), ("2", "2"), ("3", "3")])
    }, identity),
];

fn criterion_1() -> Outcome {
    let all = fixtures();
    check!(all.len() >= 6, "only {} embedded fixtures", all.len());
    for (name, what, mutate, expected) in MUTATIONS {
        let mut s = spec(name);
        mutate(&mut s);
        match Fixture::from_spec(s, Checks::Topological) {
            Ok(_) => return Err(format!("{name}: mutation '{what}' was accepted")),
            Err(e) if expected(&e) => {}
            Err(e) => return Err(format!("{name}: mutation '{what}' gave the wrong error: {e}")),
        }
    }
    Ok(format!("{} fixtures validate, {} mutations rejected", all.len(), MUTATIONS.len()))
}

// ---------------------------------------------------------------- criterion 2

fn criterion_2() -> Outcome {
    let eta = load_embedded("sierpinski-z2").unwrap().action;
    let env = globalize(&eta).map_err(|e| e.to_string())?;
    check!(env.carrier.len() == 3, "{} classes", env.carrier.len());
    // C is the class containing both (e,b) and (s,b)
    let c = env.class(0, 1);
    check!(env.class(1, 1) == c, "(e,b) and (s,b) are not identified");
    let (a, b) = (env.class(0, 0), env.class(1, 0));
    let expected: BTreeSet<PointSet> = [
        PointSet::new(),
        [c].into(),
        [a, c].into(),
        [b, c].into(),
        [a, b, c].into(),
    ]
    .into();
    let got: BTreeSet<PointSet> = env.carrier.opens().into_iter().collect();
    check!(got == expected, "opens {:?}", got);
    let t = t1_report(&env, &eta).map_err(|e| e.to_string())?;
    check!(!t.domain_closed && t.all_gx_closed && !t.xg_t1, "t1 report {t:?}");
    Ok("3 classes, expected opens, T1 report (false, true, false)".into())
}

// ---------------------------------------------------------------- criterion 3

fn envelope_contract(eta: &PartialAction) -> Result<(), String> {
    let env = globalize(eta).map_err(|e| e.to_string())?;
    check!(env.mu.is_global(), "μ is not global");
    let image = env.iota_image();
    check!(env.carrier.is_open(&image) && image.len() == eta.space().len(), "ι(X) is not an open copy of X");
    let onto = env.iota.properties();
    check!(onto.injective && onto.continuous, "ι is not a continuous injection");
    let sub = env.carrier.subspace(&image).unwrap();
    let members: Vec<usize> = image.iter().copied().collect();
    let k: Vec<usize> = (0..eta.space().len()).map(|x| members.iter().position(|&c| c == env.iota.apply(x)).unwrap()).collect();
    check!(
        pact_core::topology::map_properties(eta.space(), &sub, &k).unwrap().homeomorphism,
        "ι is not an embedding"
    );
    check!(env.q.properties().open_map, "q is not open");
    let swept: PointSet = (0..eta.group().order())
        .flat_map(|g| image.iter().map(move |&c| (g, c)))
        .map(|(g, c)| env.mu.act(g, c).unwrap())
        .collect();
    check!(swept.len() == env.carrier.len(), "G·ι(X) misses points of X_G");
    let induced = induce_from_global(&env.mu, &image).map_err(|e| e.to_string())?;
    for g in 0..eta.group().order() {
        for x in 0..eta.space().len() {
            check!(
                induced.act(g, k[x]) == eta.act(g, x).map(|y| k[y]),
                "induced action differs from η at ({g},{x})"
            );
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let all = fixtures();
    for f in &all {
        envelope_contract(&f.action).map_err(|e| format!("{}: {e}", f.name))?;
    }
    Ok(format!("envelope contract on {} fixtures", all.len()))
}

// ---------------------------------------------------------------- criterion 4

fn hat_check(eta: &PartialAction) -> Result<(), String> {
    let env = globalize(eta).map_err(|e| e.to_string())?;
    let hat = hat_action(eta, &env).map_err(|e| e.to_string())?;
    check!(hat.comparison.properties().homeomorphism, "canonical map is not a homeomorphism");
    // the canonical map sends the orbit of (h,x) to the class [h,x]
    let orbit = hat.eta_hat.orbit_space().map_err(|e| e.to_string())?;
    for (p, &o) in orbit.class_of.iter().enumerate() {
        check!(hat.comparison.apply(o) == env.class_of[p], "canonical map misroutes ({p})");
    }
    let n = hat.eta_hat.space().len();
    let reach: Vec<usize> = {
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for p in 0..n {
            if label[p] == usize::MAX {
                for r in 0..n {
                    if (0..eta.group().order()).any(|g| hat.eta_hat.act(g, p) == Some(r)) {
                        label[r] = next;
                    }
                }
                next += 1;
            }
        }
        label
    };
    check!(same_partition(&reach, &env.class_of), "hat orbits differ from the R-classes");
    Ok(())
}

fn criterion_4() -> Outcome {
    for f in fixtures() {
        hat_check(&f.action).map_err(|e| format!("{}: {e}", f.name))?;
    }
    for (seed, eta) in random_instances() {
        check!(eta.group().order() <= 6 && eta.space().len() <= 5, "seed {seed}: instance too large");
        hat_check(&eta).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    Ok(format!("6 fixtures and {RANDOM_INSTANCES} random instances"))
}

// ---------------------------------------------------------------- criterion 5

fn criterion_5() -> Outcome {
    let mut closed = 0;
    for f in fixtures() {
        let eta = &f.action;
        if !eta.is_domain_closed() {
            continue;
        }
        closed += 1;
        let c = eta.closedness_report().map_err(|e| e.to_string())?;
        check!(c.eta_closed_map, "{}: η is not closed", f.name);
        check!(c.pi_perfect, "{}: π_G is not perfect", f.name);
        let orbit = eta.property_transfer_orbit().map_err(|e| e.to_string())?;
        let env = globalize(eta).map_err(|e| e.to_string())?;
        let envelope = property_transfer_env(eta, &env).map_err(|e| e.to_string())?;
        let oq = eta.orbit_space().unwrap().quotient.separation();
        let sx = eta.space().separation();
        let sp = eta.product_space().separation();
        let sg = env.carrier.separation();
        let pairs = [
            ("hausdorff", sx.hausdorff, oq.hausdorff, sp.hausdorff, sg.hausdorff),
            ("regular", sx.regular, oq.regular, sp.regular, sg.regular),
            ("metrizable", sx.metrizable, oq.metrizable, sp.metrizable, sg.metrizable),
            ("second_countable", sx.second_countable, oq.second_countable, sp.second_countable, sg.second_countable),
        ];
        for (p, x, q, gx, xg) in pairs {
            check!(!x || q, "{}: {p} fails to pass to X/∼_G", f.name);
            check!(!gx || xg, "{}: {p} fails to pass to X_G", f.name);
            let listed = |r: &pact_core::action::TransferReport| r.properties.iter().any(|t| t.property == p);
            check!(listed(&orbit) && listed(&envelope), "{}: {p} missing from the transfer reports", f.name);
        }
    }
    Ok(format!("{closed} fixtures with closed domain"))
}

// ---------------------------------------------------------------- criteria 6 and 7

/// Route A read off the bundle: `μ_{G/H}` on `X_G/∼_H` restricted to `Im φ`
/// and transported back along `φ`.
fn route_a(b: &QuotientActionBundle, c: usize, z: usize) -> Option<usize> {
    let w = b.mu_mod.act(c, b.phi.apply(z)).expect("μ_{G/H} is global");
    (0..b.z.len()).find(|&z2| b.phi.apply(z2) == w)
}

/// Route B from its witnesses: `gH · [x]_H = [g'·x']_H` for any defined `g' ∈ gH`, `x' ∈ [x]_H`.
fn route_b(eta: &PartialAction, b: &QuotientActionBundle, c: usize, z: usize) -> Result<Option<usize>, String> {
    let grp = eta.group().group();
    let images: BTreeSet<usize> = (0..grp.order())
        .filter(|&g| b.p_h.apply(g) == c)
        .flat_map(|g| (0..eta.space().len()).filter(|&x| b.pi_h.apply(x) == z).map(move |x| (g, x)))
        .filter_map(|(g, x)| eta.act(g, x))
        .map(|y| b.pi_h.apply(y))
        .collect();
    check!(images.len() <= 1, "witnesses disagree at coset {c}, class {z}");
    Ok(images.into_iter().next())
}

fn routes_agree(eta: &PartialAction, h: &PointSet) -> Result<QuotientActionBundle, String> {
    let b = build_quotient_action(eta, h).map_err(|e| e.to_string())?;
    for c in 0..b.quotient_group.order() {
        for z in 0..b.z.len() {
            let (a, w) = (route_a(&b, c, z), route_b(eta, &b, c, z)?);
            check!(a == w, "routes differ at coset {c}, class {z}: {a:?} vs {w:?}");
            check!(b.eta_mod.act(c, z) == w, "stored action differs from the witnesses at ({c},{z})");
        }
    }
    Ok(b)
}

fn quotient_instances() -> Vec<(String, PartialAction, PointSet)> {
    let mut out = Vec::new();
    for f in fixtures() {
        for h in f.action.group().group().normal_subgroups() {
            out.push((format!("{}/{}", f.name, f.action.group().group().subset_name(&h)), f.action.clone(), h));
        }
    }
    for (seed, eta) in random_instances() {
        let h = random_normal_subgroup(&mut rng(seed.wrapping_mul(31) + 7), &eta);
        out.push((format!("seed {seed}"), eta, h));
    }
    out
}

fn criterion_6() -> Outcome {
    let instances = quotient_instances();
    for (label, eta, h) in &instances {
        routes_agree(eta, h).map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(format!("{} (action, normal subgroup) pairs", instances.len()))
}

fn criterion_7() -> Outcome {
    let instances = quotient_instances();
    for (label, eta, h) in &instances {
        let b = build_quotient_action(eta, h).map_err(|e| format!("{label}: {e}"))?;
        let psi = psi_homeomorphism(eta, &b).map_err(|e| format!("{label}: {e}"))?;
        check!(psi.psi.properties().homeomorphism, "{label}: ψ is not a homeomorphism");
        // ψ([[x]_H]) = [x]_G
        let outer = b.eta_mod.orbit_space().unwrap();
        let target = eta.orbit_space().unwrap();
        for x in 0..eta.space().len() {
            check!(
                psi.psi.apply(outer.class_of[b.pi_h.apply(x)]) == target.class_of[x],
                "{label}: ψ misroutes point {x}"
            );
        }
    }
    Ok(format!("ψ verified on {} instances", instances.len()))
}

// ---------------------------------------------------------------- criterion 8

fn metric_check(eta: &PartialAction) -> Result<bool, String> {
    let env = globalize(eta).map_err(|e| e.to_string())?;
    let t1 = env.carrier.separation().t1;
    match invariant_metric_via_globalization::<Rational>(eta, &env, None) {
        Ok(m) => {
            check!(t1, "metric built on a non-T1 envelope");
            let k = env.carrier.len();
            for g in 0..eta.group().order() {
                for p in 0..k {
                    for r in 0..k {
                        let (gp, gr) = (env.mu.act(g, p).unwrap(), env.mu.act(g, r).unwrap());
                        check!(m.metric_on_xg.dist(gp, gr) == m.metric_on_xg.dist(p, r), "not μ-invariant");
                    }
                }
            }
            for g in 0..eta.group().order() {
                for x in eta.domain(eta.group().group().inv(g)) {
                    for y in eta.domain(eta.group().group().inv(g)) {
                        let (gx, gy) = (eta.act(g, x).unwrap(), eta.act(g, y).unwrap());
                        check!(m.metric_on_x.dist(gx, gy) == m.metric_on_x.dist(x, y), "not η-invariant");
                    }
                }
            }
            Ok(true)
        }
        Err(Error::NotMetrizable) => {
            check!(!t1, "NotMetrizable on a T1 envelope");
            Ok(false)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn criterion_8() -> Outcome {
    let mut built = 0;
    for f in fixtures() {
        built += usize::from(metric_check(&f.action).map_err(|e| format!("{}: {e}", f.name))?);
    }
    for (seed, eta) in random_instances() {
        built += usize::from(metric_check(&eta).map_err(|e| format!("seed {seed}: {e}"))?);
    }
    let s = load_embedded("sierpinski-z2").unwrap().action;
    let env = globalize(&s).unwrap();
    check!(
        invariant_metric_via_globalization::<Rational>(&s, &env, None) == Err(Error::NotMetrizable),
        "sierpinski-z2 did not report NotMetrizable"
    );
    Ok(format!("{built} invariant metrics built exactly; sierpinski-z2 NotMetrizable"))
}

// ---------------------------------------------------------------- criterion 9

fn inf_eps<S: Scalar>(d: &FiniteMetric<S>, a: &PointSet, b: &PointSet) -> S {
    let covers = |eps: &S, from: &PointSet, to: &PointSet| from.iter().all(|&x| to.iter().any(|&y| d.dist(x, y) <= eps));
    d.values().into_iter().filter(|e| covers(e, a, b) && covers(e, b, a)).min().unwrap()
}

fn criterion_9() -> Outcome {
    let mut count = 0;
    for f in fixtures() {
        let Some(d) = &f.metric else { continue };
        if d.len() > 6 {
            continue;
        }
        count += 1;
        let h = hausdorff_metric(d).map_err(|e| e.to_string())?;
        for (i, a) in h.subsets.iter().enumerate() {
            for (j, b) in h.subsets.iter().enumerate() {
                check!(h.metric.dist(i, j) == &inf_eps(d, a, b), "{}: d_H mismatch", f.name);
            }
        }
        let lifted = hyperspace_action(&f.action, d).map_err(|e| e.to_string())?;
        check!(!lifted.base_invariant || lifted.lifted_invariant, "{}: d_H lost invariance", f.name);
    }
    Ok(format!("{count} metric fixtures"))
}

// ---------------------------------------------------------------- criterion 10

fn criterion_10() -> Outcome {
    for name in ["chain-z4", "cyclic-f"] {
        let f = load_embedded(name).unwrap();
        let chain = f.chains[0].clone();
        if name == "cyclic-f" {
            check!(chain.len() == 3, "cyclic-f chain has {} levels", chain.len());
        }
        let system = build_system(&f.action, DirectedSet::chain(chain.len()).unwrap(), chain)
            .map_err(|e| format!("{name}: {e}"))?;
        let r = lambda_equivalence(&system).map_err(|e| format!("{name}: {e}"))?;
        let fl = r.flags;
        check!(
            fl.injective && fl.surjective && fl.continuous && fl.open_onto_image && fl.g_map && fl.g_equivalence,
            "{name}: λ flags {fl:?}"
        );
        // every closed C and x ∉ C are separated by some projection
        let x = f.action.space();
        let n = x.len();
        for mask in 0u32..1 << n {
            let c: PointSet = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if !x.is_closed(&c) {
                continue;
            }
            for p in (0..n).filter(|p| !c.contains(p)) {
                let separated = system.bundles.iter().any(|b| !b.z.closure(&b.pi_h.image(&c)).contains(&b.pi_h.apply(p)));
                check!(separated, "{name}: point {p} not separated from a closed set");
            }
        }
    }
    Ok("λ is a G-equivalence on chain-z4 and the cyclic-f chain".into())
}

// ---------------------------------------------------------------- criterion 11

fn criterion_11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_pact");
    let run = |name: &str| {
        Command::new(bin)
            .args(["theorems", name, "--json"])
            .env_remove("PACT_FIXTURE_PATH")
            .output()
            .map_err(|e| e.to_string())
    };
    let mut count = 0;
    for name in embedded_names() {
        let (a, b) = (run(name)?, run(name)?);
        check!(a.status.code() == Some(0), "{name}: exit {:?}", a.status.code());
        check!(!a.stdout.is_empty() && a.stdout == b.stdout, "{name}: outputs differ");
        count += 1;
    }
    Ok(format!("{count} fixtures byte-identical across two runs"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("axiom validator and mutations", criterion_1),
        ("sierpinski envelope", criterion_2),
        ("envelope contract", criterion_3),
        ("orbit space of the lifted action", criterion_4),
        ("closed-domain consequences", criterion_5),
        ("quotient routes agree", criterion_6),
        ("ψ homeomorphism", criterion_7),
        ("invariant metrics", criterion_8),
        ("Hausdorff metric", criterion_9),
        ("inverse limits", criterion_10),
        ("deterministic reports", criterion_11),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(summary) => println!("criterion {:>2} PASS  {title}: {summary}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}

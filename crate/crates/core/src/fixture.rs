//! JSON fixtures and the embedded example library.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::action::{Checks, PartialAction, PartialActionError};
use crate::groups::{FiniteGroup, TopologicalGroup};
use crate::topology::{FiniteSpace, PointSet};
use crate::{Error, Rational, RationalMetric};

/// `(name, json)` for every built-in fixture.
pub const EMBEDDED: &[(&str, &str)] = &[
    ("sierpinski-z2", include_str!("../fixtures/sierpinski-z2.json")),
    ("neg-z3", include_str!("../fixtures/neg-z3.json")),
    ("clopen-z2", include_str!("../fixtures/clopen-z2.json")),
    ("cyclic-f", include_str!("../fixtures/cyclic-f.json")),
    ("chain-z4", include_str!("../fixtures/chain-z4.json")),
    ("metric-hyper", include_str!("../fixtures/metric-hyper.json")),
];

pub fn embedded(name: &str) -> Option<&'static str> {
    EMBEDDED.iter().find(|(n, _)| *n == name).map(|(_, json)| *json)
}

pub fn embedded_names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid fixture: {0}")]
    Schema(String),
    #[error(transparent)]
    Validation(#[from] Error),
}

impl From<PartialActionError> for FixtureError {
    fn from(e: PartialActionError) -> Self {
        FixtureError::Validation(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    /// `Z<n>`, `V4`, `Z2xZ2` or `S3`, with the discrete topology.
    Name(String),
    Table {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        topology: Option<Vec<Vec<String>>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<Vec<String>>>,
    /// Pairs `x ⊑ y`; reflexive pairs may be omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preorder: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricSpec {
    pub points: Vec<String>,
    /// Rational strings such as `"3"` or `"3/2"`.
    pub dist: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureSpec {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub note: String,
    pub group: GroupSpec,
    pub space: SpaceSpec,
    /// `g ↦ X_g`. An omitted element takes the image of its map, or `∅`.
    #[serde(default)]
    pub domains: BTreeMap<String, Vec<String>>,
    /// `g ↦ η_g` on `X_{g⁻¹}`. An omitted identity acts as the identity.
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricSpec>,
    #[serde(default)]
    pub subgroups: Vec<Vec<String>>,
    /// Subgroup chains, largest first.
    #[serde(default)]
    pub chains: Vec<Vec<Vec<String>>>,
}

/// A parsed and validated fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub note: String,
    pub spec: FixtureSpec,
    pub action: PartialAction,
    pub metric: Option<RationalMetric>,
    pub subgroups: Vec<PointSet>,
    pub chains: Vec<Vec<PointSet>>,
}

pub fn parse_spec(text: &str) -> Result<FixtureSpec, FixtureError> {
    serde_json::from_str(text).map_err(|e| FixtureError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse(text: &str, checks: Checks) -> Result<Fixture, FixtureError> {
    Fixture::from_spec(parse_spec(text)?, checks)
}

/// Loads an embedded fixture; they always validate.
pub fn load_embedded(name: &str) -> Option<Fixture> {
    embedded(name).map(|json| parse(json, Checks::Topological).expect("embedded fixtures validate"))
}

fn lookup(names: &[String], name: &str, what: &str) -> Result<usize, FixtureError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| FixtureError::Schema(format!("unknown {what} {name:?}")))
}

pub fn build_group(spec: &GroupSpec) -> Result<TopologicalGroup, FixtureError> {
    match spec {
        GroupSpec::Name(name) => FiniteGroup::named(name)
            .map(TopologicalGroup::discrete)
            .ok_or_else(|| FixtureError::Schema(format!("unknown group name {name:?}"))),
        GroupSpec::Table { elements, table, topology } => {
            let group = FiniteGroup::from_table(elements.clone(), table.clone()).map_err(Error::from)?;
            match topology {
                None => Ok(TopologicalGroup::discrete(group)),
                Some(opens) => {
                    let space = FiniteSpace::from_named_opens(elements, opens).map_err(Error::from)?;
                    Ok(TopologicalGroup::new(group, space).map_err(Error::from)?)
                }
            }
        }
    }
}

pub fn build_space(spec: &SpaceSpec) -> Result<FiniteSpace, FixtureError> {
    match (&spec.opens, &spec.preorder) {
        (Some(opens), None) => Ok(FiniteSpace::from_named_opens(&spec.points, opens).map_err(Error::from)?),
        (None, Some(pairs)) => {
            let pairs = pairs
                .iter()
                .map(|(x, y)| Ok((lookup(&spec.points, x, "point")?, lookup(&spec.points, y, "point")?)))
                .collect::<Result<Vec<_>, FixtureError>>()?;
            Ok(FiniteSpace::from_preorder(spec.points.clone(), &pairs).map_err(Error::from)?)
        }
        _ => Err(FixtureError::Schema("space needs exactly one of \"opens\" or \"preorder\"".into())),
    }
}

pub fn build_metric(spec: &MetricSpec) -> Result<RationalMetric, FixtureError> {
    let dist = spec
        .dist
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| Rational::from_str(v).map_err(|_| FixtureError::Schema(format!("bad rational {v:?}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalMetric::new(spec.points.clone(), dist).map_err(Error::from)?)
}

impl Fixture {
    pub fn from_spec(spec: FixtureSpec, checks: Checks) -> Result<Self, FixtureError> {
        let group = build_group(&spec.group)?;
        let space = build_space(&spec.space)?;
        let elements = group.group().elements().to_vec();
        let points = space.points().to_vec();
        let element = |name: &str| {
            elements
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| PartialActionError::UnknownElement(name.to_string()))
        };
        let point = |name: &str| {
            points
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| PartialActionError::UnknownPoint(name.to_string()))
        };

        let order = group.order();
        let e = group.group().identity();
        let mut maps: Vec<Option<BTreeMap<usize, usize>>> = vec![None; order];
        for (g, map) in &spec.maps {
            let mut parsed = BTreeMap::new();
            for (x, y) in map {
                parsed.insert(point(x)?, point(y)?);
            }
            maps[element(g)?] = Some(parsed);
        }
        let mut domains: Vec<Option<PointSet>> = vec![None; order];
        for (g, dom) in &spec.domains {
            domains[element(g)?] = Some(dom.iter().map(|x| point(x)).collect::<Result<_, _>>()?);
        }
        if maps[e].is_none() {
            maps[e] = Some((0..space.len()).map(|x| (x, x)).collect());
        }
        let maps: Vec<BTreeMap<usize, usize>> = maps.into_iter().map(Option::unwrap_or_default).collect();
        let domains: Vec<PointSet> = domains
            .into_iter()
            .zip(&maps)
            .map(|(d, m)| d.unwrap_or_else(|| m.values().copied().collect()))
            .collect();
        let action = PartialAction::validate(group.clone(), space, &domains, &maps, checks)?;

        let metric = spec.metric.as_ref().map(build_metric).transpose()?;
        if let Some(m) = &metric {
            if m.points() != action.space().points() {
                return Err(Error::CarrierMismatch.into());
            }
        }
        let subset = |names: &Vec<String>| -> Result<PointSet, FixtureError> {
            Ok(names.iter().map(|g| element(g)).collect::<Result<_, _>>()?)
        };
        let subgroups = spec.subgroups.iter().map(subset).collect::<Result<Vec<_>, _>>()?;
        let chains = spec
            .chains
            .iter()
            .map(|chain| chain.iter().map(subset).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Fixture {
            name: spec.name.clone(),
            note: spec.note.clone(),
            spec,
            action,
            metric,
            subgroups,
            chains,
        })
    }
}

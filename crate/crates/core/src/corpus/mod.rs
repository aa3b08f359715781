//! Named scenarios: a system plus a list of checks with expected values.
//!
//! Scenario files are TOML, embedded at build time from `scenarios/`:
//!
//! ```toml
//! name = "cantor-strips"
//! summary = "..."
//! system = "E1"            # corpus name, or an inline [system] table
//! informational = false    # true: excluded from pass/fail accounting
//!
//! [[checks]]
//! id = "profile"
//! op = "profile"
//! basis = "oracle"         # stated | trivial | oracle
//! anchor = "cantor-strips.profile"
//! system = "E1"            # optional per-check override
//! params = { kmax = 8 }
//! expect = { profile = [2, 4, 8, 16, 32, 64, 128, 256] }
//! ```
//!
//! A check passes when every key of `expect` equals the same key of the
//! observed JSON value. A check without `expect` is informational.

mod ops;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exec::Engine;
use crate::ifs::{build_corpus, NamedSystem, SystemConfig};

/// What an expected value rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// A fact about the system stated with it.
    Stated,
    /// Immediate from the definitions.
    Trivial,
    /// Computed once by a brute-force oracle and frozen.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemRef {
    Named(String),
    Inline(SystemConfig),
}

impl SystemRef {
    pub fn build(&self) -> Result<NamedSystem> {
        match self {
            SystemRef::Named(n) => build_corpus(n),
            SystemRef::Inline(c) => c.build(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SystemRef::Named(n) => n.clone(),
            SystemRef::Inline(c) if !c.name.is_empty() => c.name.clone(),
            SystemRef::Inline(_) => "inline".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub op: String,
    pub basis: Basis,
    #[serde(default)]
    pub anchor: String,
    #[serde(default)]
    pub system: Option<SystemRef>,
    #[serde(default)]
    pub params: toml::Table,
    #[serde(default)]
    pub expect: Option<toml::Table>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub summary: String,
    pub system: SystemRef,
    #[serde(default)]
    pub informational: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The analysis stopped short of the expected answer.
    Undetermined,
    /// No expectation; the observation is recorded only.
    Info,
    /// The resource budget ran out.
    Budget,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub op: String,
    pub system: String,
    pub basis: Basis,
    pub anchor: String,
    pub outcome: Outcome,
    pub observed: Value,
    pub expected: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub system: String,
    pub informational: bool,
    /// Set when some check hit the resource budget.
    pub partial: bool,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckReport>,
    pub images: Vec<String>,
}

impl ScenarioReport {
    /// True when no check failed, errored or ran out of budget.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| {
            matches!(c.outcome, Outcome::Pass | Outcome::Info)
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

/// A scenario run: the report and the images it produced, by file name.
#[derive(Clone, Debug)]
pub struct ScenarioRun {
    pub report: ScenarioReport,
    pub images: Vec<(String, Vec<u8>)>,
}

const SOURCES: &[(&str, &str)] = &[
    ("cantor-strips", include_str!("../../scenarios/cantor-strips.toml")),
    ("rotated-comb", include_str!("../../scenarios/rotated-comb.toml")),
    ("comb-cube", include_str!("../../scenarios/comb-cube.toml")),
    ("leaves", include_str!("../../scenarios/leaves.toml")),
    ("path-split-cube", include_str!("../../scenarios/path-split-cube.toml")),
    ("dyadic-intervals", include_str!("../../scenarios/dyadic-intervals.toml")),
    ("sierpinski-carpet", include_str!("../../scenarios/sierpinski-carpet.toml")),
    ("cantor-quarter", include_str!("../../scenarios/cantor-quarter.toml")),
];

/// Names of the built-in scenarios, in suite order.
pub fn scenario_names() -> Vec<&'static str> {
    SOURCES.iter().map(|(n, _)| *n).collect()
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let s: Scenario = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    for c in &s.checks {
        if c.anchor.trim().is_empty() {
            return Err(Error::Parse(format!("check {}/{} has no anchor", s.name, c.id)));
        }
    }
    let mut ids: Vec<&str> = s.checks.iter().map(|c| c.id.as_str()).collect();
    ids.sort_unstable();
    if ids.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Parse(format!("scenario {} repeats a check id", s.name)));
    }
    Ok(s)
}

pub fn scenario(name: &str) -> Result<Scenario> {
    let (_, text) = SOURCES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::NotFound(format!("no scenario named {name:?}")))?;
    parse_scenario(text)
}

fn matches_expect(observed: &Value, expect: &Value) -> bool {
    match (observed, expect) {
        (Value::Object(o), Value::Object(e)) => e
            .iter()
            .all(|(k, v)| o.get(k).is_some_and(|x| matches_expect(x, v))),
        _ => observed == expect,
    }
}

fn is_undetermined(v: &Value) -> bool {
    v.get("status")
        .and_then(Value::as_str)
        .is_some_and(|s| s == "undetermined")
}

/// One check's report, plus its image as `(extension, bytes)`.
pub fn run_check(
    c: &Check,
    default_system: &NamedSystem,
    default_label: &str,
    engine: &Engine,
) -> Result<(CheckReport, Option<(&'static str, Vec<u8>)>)> {
    let (sys, label) = match &c.system {
        Some(r) => (r.build()?, r.label()),
        None => (default_system.clone(), default_label.to_string()),
    };
    let expected = match &c.expect {
        Some(t) => serde_json::to_value(t).map_err(|e| Error::Parse(e.to_string()))?,
        None => Value::Null,
    };
    let mut image = None;
    let (outcome, observed, note) = match ops::run_op(&c.op, &c.params, &sys, engine) {
        Ok(obs) => {
            image = obs.image;
            let outcome = if expected.is_null() {
                Outcome::Info
            } else if matches_expect(&obs.value, &expected) {
                Outcome::Pass
            } else if is_undetermined(&obs.value) {
                Outcome::Undetermined
            } else {
                Outcome::Fail
            };
            (outcome, obs.value, None)
        }
        Err(e @ Error::ResourceLimit { .. }) => (Outcome::Budget, Value::Null, Some(e.to_string())),
        Err(e) => (Outcome::Error, Value::Null, Some(e.to_string())),
    };
    let report = CheckReport {
        id: c.id.clone(),
        op: c.op.clone(),
        system: label,
        basis: c.basis,
        anchor: c.anchor.clone(),
        outcome,
        observed,
        expected,
        note,
    };
    Ok((report, image))
}

/// Runs every check of a scenario. Resource exhaustion marks the check and
/// flags the report as partial instead of aborting.
pub fn run(s: &Scenario, engine: &Engine) -> Result<ScenarioRun> {
    let default_system = s.system.build()?;
    let default_label = s.system.label();
    let mut checks = Vec::with_capacity(s.checks.len());
    let mut images = Vec::new();
    for c in &s.checks {
        let (report, image) = run_check(c, &default_system, &default_label, engine)?;
        if let Some((ext, bytes)) = image {
            images.push((format!("{}-{}.{}", s.name, c.id, ext), bytes));
        }
        checks.push(report);
    }
    let partial = checks.iter().any(|c| c.outcome == Outcome::Budget);
    let passed = checks.iter().filter(|c| c.outcome == Outcome::Pass).count();
    let failed = checks
        .iter()
        .filter(|c| !matches!(c.outcome, Outcome::Pass | Outcome::Info))
        .count();
    Ok(ScenarioRun {
        report: ScenarioReport {
            scenario: s.name.clone(),
            system: default_label,
            informational: s.informational,
            partial,
            passed,
            failed,
            checks,
            images: images.iter().map(|(n, _)| n.clone()).collect(),
        },
        images,
    })
}

/// Short names for single checks, as `(name, scenario, check id)`.
pub const CERTIFICATES: &[(&str, &str, &str)] = &[
    ("e1-osc", "cantor-strips", "no-coincident-words"),
    ("e1-middle-line", "cantor-strips", "middle-line-misses"),
    ("f3-osc", "leaves", "coincident-words"),
    ("f3-segment", "leaves", "top-segment"),
    ("f3-comb", "leaves", "comb-teeth"),
    ("f3-line", "leaves", "line-misses"),
    ("f3-polygon", "leaves", "quadrilateral"),
    ("e4-section", "comb-cube", "comb-section-2"),
    ("g-height-cantor", "path-split-cube", "height-cantor"),
    ("g-bottom", "path-split-cube", "bottom-face"),
    ("g-top", "path-split-cube", "top-face"),
    ("k-cantor", "cantor-quarter", "totally-disconnected"),
];

/// Finds a check by short name or as `scenario/check-id`.
pub fn find_check(name: &str) -> Result<(Scenario, Check)> {
    let (sc, id) = match CERTIFICATES.iter().find(|(n, _, _)| n.eq_ignore_ascii_case(name)) {
        Some((_, sc, id)) => (*sc, *id),
        None => name
            .split_once('/')
            .ok_or_else(|| Error::NotFound(format!("no certificate named {name:?}")))?,
    };
    let s = scenario(sc)?;
    let c = s
        .checks
        .iter()
        .find(|c| c.id == id)
        .cloned()
        .ok_or_else(|| Error::NotFound(format!("scenario {sc} has no check {id:?}")))?;
    Ok((s, c))
}

/// Looks up a built-in scenario by name and runs it.
pub fn run_scenario(name: &str, engine: &Engine) -> Result<ScenarioRun> {
    run(&scenario(name)?, engine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_scenarios_parse() {
        for n in scenario_names() {
            let s = scenario(n).unwrap();
            assert_eq!(s.name, n);
            assert!(!s.checks.is_empty());
        }
    }

    #[test]
    fn short_names_resolve() {
        for (n, _, _) in CERTIFICATES {
            find_check(n).unwrap();
        }
        let (s, c) = find_check("comb-cube/top-face").unwrap();
        assert_eq!((s.name.as_str(), c.op.as_str()), ("comb-cube", "section"));
        assert!(find_check("nope").is_err());
    }

    #[test]
    fn unknown_scenario() {
        assert!(matches!(scenario("nope"), Err(Error::NotFound(_))));
    }

    #[test]
    fn missing_anchor_rejected() {
        let text = r#"
name = "t"
system = "E1"
[[checks]]
id = "a"
op = "connected-exact"
basis = "trivial"
"#;
        assert!(matches!(parse_scenario(text), Err(Error::Parse(_))));
    }

    #[test]
    fn expectation_matching() {
        let obs = serde_json::json!({"status": "proved", "level": 1, "extra": [1, 2]});
        assert!(matches_expect(&obs, &serde_json::json!({"status": "proved"})));
        assert!(!matches_expect(&obs, &serde_json::json!({"level": 2})));
        assert!(!matches_expect(&obs, &serde_json::json!({"missing": 2})));
    }

    #[test]
    fn budget_marks_partial() {
        let text = r#"
name = "t"
system = "E1"
[[checks]]
id = "big"
op = "profile"
basis = "trivial"
anchor = "t.big"
params = { kmax = 12, direct = true }
expect = { profile = [] }
"#;
        let s = parse_scenario(text).unwrap();
        let r = run(&s, &Engine::default().with_max_cells(1000)).unwrap();
        assert!(r.report.partial);
        assert_eq!(r.report.checks[0].outcome, Outcome::Budget);
        assert!(!r.report.ok());
    }
}

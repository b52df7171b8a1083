//! Experiment suites over finite permutation groups, described by TOML
//! specs and run case by case.
//!
//! Cases are independent and run in parallel; results are sorted by case
//! name, so reports do not depend on the thread count.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::{IteratorRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::build_marked_omega;
use crate::graph::{automorphisms, DEFAULT_VERTEX_CAP};
use crate::groups::{all_subgroups, lemma51_check, parse_group_file, setwise_stabiliser, CosetUnion, FiniteGroup, GroupError, Subgroup};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed experiment spec: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{path}: {source}")]
    Group { path: String, source: GroupError },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    /// `Aut(Ω) ≅ Stab(XH)` for subgroups `H` and small `X`.
    Stabiliser,
    /// Which groups arise as `Aut(Ω)` with `H` trivial.
    Realization,
    /// `lemma51_check` for every subgroup and every `t`.
    Lemma51,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failures: Option<usize>,
    /// Isomorphism types that must be realized, e.g. `["1", "Z2", "V4"]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub realized: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub kind: SuiteKind,
    /// Group files, relative to the spec file.
    pub groups: Vec<PathBuf>,
    /// Largest size of `X`.
    #[serde(default = "default_max_x")]
    pub max_x: usize,
    /// Random `(H, X)` cases per group above `exhaustive_up_to`.
    #[serde(default = "default_random_cases")]
    pub random_cases: usize,
    #[serde(default = "default_exhaustive")]
    pub exhaustive_up_to: usize,
    /// Largest order reported by a realization suite.
    #[serde(default = "default_max_order")]
    pub max_order: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub expect: Expectation,
}

fn default_max_x() -> usize {
    2
}
fn default_random_cases() -> usize {
    200
}
fn default_exhaustive() -> usize {
    8
}
fn default_max_order() -> usize {
    4
}

impl ExperimentSpec {
    pub fn parse(text: &str) -> Result<ExperimentSpec, SpecError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<(ExperimentSpec, PathBuf), SpecError> {
        let text = read(path)?;
        let spec = ExperimentSpec::parse(&text)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((spec, base))
    }
}

fn read(path: &Path) -> Result<String, SpecError> {
    fs::read_to_string(path).map_err(|e| SpecError::Io { path: path.display().to_string(), message: e.to_string() })
}

/// Loads a group file; the name is the file stem.
pub fn load_group(path: &Path) -> Result<(String, FiniteGroup), SpecError> {
    let text = read(path)?;
    let file = parse_group_file(&text).map_err(|source| SpecError::Group { path: path.display().to_string(), source })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok((name, file.group))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub kind: SuiteKind,
    pub passed: bool,
    pub failures: usize,
    pub cases: Vec<CaseResult>,
    /// Realization suites only: type → representative set `X`.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub realized: BTreeMap<String, String>,
}

impl ExperimentReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&format!("{} {}  {}\n", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail));
        }
        for (ty, x) in &self.realized {
            out.push_str(&format!("realized {ty} by X = {x}\n"));
        }
        out.push_str(&format!(
            "{}: {} cases, {} failures, {}\n",
            self.name,
            self.cases.len(),
            self.failures,
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Runs a spec whose group paths are relative to `base`.
pub fn run_experiment(spec: &ExperimentSpec, base: &Path) -> Result<ExperimentReport, SpecError> {
    let groups = spec.groups.iter().map(|p| load_group(&base.join(p))).collect::<Result<Vec<_>, _>>()?;
    let mut cases = Vec::new();
    let mut realized = BTreeMap::new();
    for (name, g) in &groups {
        match spec.kind {
            SuiteKind::Stabiliser => cases.extend(stabiliser_suite(name, g, spec)?),
            SuiteKind::Lemma51 => cases.extend(lemma51_suite(name, g)?),
            SuiteKind::Realization => {
                let found = realize_small_groups(g, spec.max_order)?;
                for (ty, x) in found {
                    realized.entry(ty).or_insert(format!("{name}: {x}"));
                }
            }
        }
    }
    if spec.kind == SuiteKind::Realization {
        for ty in &spec.expect.realized {
            let hit = realized.contains_key(ty);
            cases.push(CaseResult {
                name: format!("realize {ty}"),
                passed: hit,
                detail: realized.get(ty).cloned().unwrap_or_else(|| "not found".into()),
            });
        }
        let extra: Vec<&String> = realized.keys().filter(|t| !spec.expect.realized.contains(t)).collect();
        if !spec.expect.realized.is_empty() && !extra.is_empty() {
            cases.push(CaseResult { name: "realized list".into(), passed: false, detail: format!("unexpected {extra:?}") });
        }
    }
    cases.sort_by(|a, b| a.name.cmp(&b.name));
    let failures = cases.iter().filter(|c| !c.passed).count();
    let passed = spec.expect.failures.is_none_or(|f| f == failures) && (spec.expect.failures.is_some() || failures == 0);
    Ok(ExperimentReport { name: spec.name.clone(), kind: spec.kind, passed, failures, cases, realized })
}

fn sweep(g: &FiniteGroup) -> Result<Vec<Subgroup>, SpecError> {
    all_subgroups(g).map_err(|source| SpecError::Group { path: String::new(), source })
}

/// Outcome of comparing `Aut(Ω)` with the stabiliser of `XH`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabiliserCheck {
    pub automorphisms: usize,
    pub stabiliser: usize,
    /// The automorphism with root image `k` acts as left multiplication by
    /// `k` on the group vertices, for every `k` in the stabiliser.
    pub witness: bool,
}

impl StabiliserCheck {
    pub fn holds(&self) -> bool {
        self.automorphisms == self.stabiliser && self.witness
    }
}

pub fn check_stabiliser(g: &FiniteGroup, h: &Subgroup, reps: &[usize]) -> StabiliserCheck {
    let xh = CosetUnion::from_elements(g, h, reps);
    let omega = build_marked_omega(g, &xh);
    let aut = automorphisms(&omega.graph, DEFAULT_VERTEX_CAP).expect("marked graph is connected and folded");
    let stab = setwise_stabiliser(g, &xh.set);
    let witness = aut.root_images() == stab.elements()
        && stab.elements().iter().all(|&k| {
            aut.by_root_image(k).is_some_and(|m| (0..g.order()).all(|v| m.map[v] == g.mul(k, v)))
        });
    StabiliserCheck { automorphisms: aut.order(), stabiliser: stab.order(), witness }
}

fn render_set(g: &FiniteGroup, xs: &[usize]) -> String {
    format!("{{{}}}", xs.iter().map(|&x| g.element(x).to_string()).collect::<Vec<_>>().join(", "))
}

fn stabiliser_suite(name: &str, g: &FiniteGroup, spec: &ExperimentSpec) -> Result<Vec<CaseResult>, SpecError> {
    let subgroups = sweep(g)?;
    let mut xs: Vec<Vec<usize>> = Vec::new();
    for size in 1..=spec.max_x.min(g.order()) {
        combinations(g.order(), size, &mut Vec::new(), &mut xs);
    }
    let mut all: Vec<(usize, Vec<usize>)> =
        (0..subgroups.len()).flat_map(|h| xs.iter().map(move |x| (h, x.clone()))).collect();
    if g.order() > spec.exhaustive_up_to {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        all = all.into_iter().choose_multiple(&mut rng, spec.random_cases);
        all.shuffle(&mut rng);
    }
    Ok(all
        .par_iter()
        .map(|(hi, x)| {
            let h = &subgroups[*hi];
            let c = check_stabiliser(g, h, x);
            CaseResult {
                name: format!("{name} H{hi:02} X={}", render_set(g, x)),
                passed: c.holds(),
                detail: format!("|H|={} |Aut|={} |Stab|={} witness={}", h.order(), c.automorphisms, c.stabiliser, c.witness),
            }
        })
        .collect())
}

fn combinations(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    let start = prefix.last().map_or(0, |&x| x + 1);
    for x in start..n {
        prefix.push(x);
        combinations(n, k, prefix, out);
        prefix.pop();
    }
}

fn lemma51_suite(name: &str, g: &FiniteGroup) -> Result<Vec<CaseResult>, SpecError> {
    let subgroups = sweep(g)?;
    let cases: Vec<(usize, usize)> = (0..subgroups.len()).flat_map(|k| (0..g.order()).map(move |t| (k, t))).collect();
    Ok(cases
        .par_iter()
        .map(|&(ki, t)| {
            let case = format!("{name} K{ki:02} t{t:03}");
            match lemma51_check(g, &subgroups[ki], t) {
                Ok(r) => CaseResult {
                    name: case,
                    passed: true,
                    detail: format!("|S|={} |K∩tKt'|={} index={} disjoint={}", r.stabiliser_order, r.intersection_order, r.index, r.disjoint),
                },
                Err(e) => CaseResult { name: case, passed: false, detail: e.to_string() },
            }
        })
        .collect())
}

/// Names a small group from its order and element orders: `1`, `Zn`,
/// `V4`, `S3`, or `order n` otherwise.
pub fn iso_label(order: usize, element_orders: &[usize]) -> String {
    let cyclic = element_orders.contains(&order);
    match order {
        1 => "1".into(),
        _ if cyclic => format!("Z{order}"),
        4 => "V4".into(),
        6 => "S3".into(),
        _ => format!("order {order}"),
    }
}

/// For each subgroup `K` of `G`, takes `H` trivial and `X = K`, and records
/// the type of `Aut(Ω)` when its order is at most `max_order`.
pub fn realize_small_groups(g: &FiniteGroup, max_order: usize) -> Result<BTreeMap<String, String>, SpecError> {
    let subgroups = sweep(g)?;
    let found: Vec<Option<(String, String)>> = subgroups
        .par_iter()
        .map(|k| {
            if k.order() > max_order {
                return None;
            }
            let xh = CosetUnion::from_elements(g, &Subgroup::trivial(), k.elements());
            let aut = automorphisms(&build_marked_omega(g, &xh).graph, DEFAULT_VERTEX_CAP).ok()?;
            Some((iso_label(aut.order(), &aut.element_orders()), render_set(g, k.elements())))
        })
        .collect();
    let mut out = BTreeMap::new();
    for (ty, x) in found.into_iter().flatten() {
        out.entry(ty).or_insert(x);
    }
    Ok(out)
}

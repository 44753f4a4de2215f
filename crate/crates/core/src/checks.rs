//! Named verification suites with machine-readable verdicts.
//!
//! A suite is *assertive* when the property it checks is a theorem for the
//! given parameters; its verdict is then `pass` or `fail`. Otherwise it only
//! reports what it found.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::digraph::{class_digraph, FlipDigraph};
use crate::enumerate::{enumerate, Budget, Class};
use crate::error::{Error, Result};
use crate::fixtures::{self, Fixture};
use crate::flips::{symmetric_flips, Direction, EdgeKind, SymFlip};
use crate::geometry::{core, frame_default, verify_tiling};
use crate::inversion::{format_members, Cubillage};
use crate::morphisms::{check_digraph_map, cor_map, lift_chains, red_map, reduce_middle, ArrowImage, DigraphMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "report-only")]
    ReportOnly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ReportOnly => "report-only",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub params: BTreeMap<String, usize>,
    pub verdict: Verdict,
    pub witnesses: Vec<String>,
    pub findings: Value,
    /// Command line that reruns this check.
    pub replay: String,
    pub runtime_ms: u128,
}

impl CheckReport {
    pub fn is_failure(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Collects assertion outcomes for one report.
struct Recorder {
    assertive: bool,
    witnesses: Vec<String>,
}

impl Recorder {
    fn new(assertive: bool) -> Self {
        Recorder { assertive, witnesses: Vec::new() }
    }

    fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.witnesses.push(witness());
        }
    }

    fn finish(self, id: &str, params: &[(&str, usize)], findings: Value, started: Instant) -> CheckReport {
        let verdict = match (self.assertive, self.witnesses.is_empty()) {
            (false, _) => Verdict::ReportOnly,
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::Fail,
        };
        let args: String = params.iter().map(|(k, v)| format!(" --{k} {v}")).collect();
        CheckReport {
            id: id.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            verdict,
            witnesses: self.witnesses,
            findings,
            replay: format!("zonocube check {id}{args}"),
            runtime_ms: started.elapsed().as_millis(),
        }
    }
}

/// The named suites runnable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    UniqueExtremes,
    Fixtures,
    BarrelDivergence,
    Morphisms,
    Lift,
    Counts,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::UniqueExtremes,
        Suite::Fixtures,
        Suite::BarrelDivergence,
        Suite::Morphisms,
        Suite::Lift,
        Suite::Counts,
        Suite::Oracle,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::UniqueExtremes => "unique-extremes",
            Suite::Fixtures => "fixtures",
            Suite::BarrelDivergence => "barrel-divergence",
            Suite::Morphisms => "morphisms",
            Suite::Lift => "lift",
            Suite::Counts => "counts",
            Suite::Oracle => "oracle",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // `conjecture1` is accepted as an alias of `unique-extremes`.
        let s = if s == "conjecture1" { "unique-extremes" } else { s };
        Suite::ALL
            .into_iter()
            .find(|suite| suite.id() == s)
            .ok_or_else(|| Error::invalid(format!("unknown check {s:?}")))
    }
}

/// Parameters for which a unique source and sink are proved: `n` even with
/// `d` odd, `n = d + 3`, or `d = 2`.
pub fn unique_extremes_proved(n: usize, d: usize) -> bool {
    (n.is_multiple_of(2) && d % 2 == 1) || n == d + 3 || d == 2
}

/// Sources and sinks of the symmetric digraph on `(n, d)`.
pub fn check_unique_extremes(n: usize, d: usize, budget: Budget) -> Result<CheckReport> {
    let started = Instant::now();
    let g = class_digraph(n, d, Class::Symmetric, budget)?;
    let mut rec = Recorder::new(unique_extremes_proved(n, d));
    let (sources, sinks) = (g.sources(), g.sinks());
    let standard = g.id_of(&Cubillage::standard(n, d)?);
    let antistandard = g.id_of(&Cubillage::antistandard(n, d)?);
    rec.expect(standard.is_some() && sources == vec![standard.unwrap()], || {
        format!("sources {}", describe_nodes(&g, &sources))
    });
    rec.expect(antistandard.is_some() && sinks == vec![antistandard.unwrap()], || {
        format!("sinks {}", describe_nodes(&g, &sinks))
    });
    let barrels = g.count_kind(EdgeKind::Barrel);
    if n.is_multiple_of(2) && d % 2 == 1 {
        rec.expect(barrels == 0, || format!("{barrels} barrel arrows with n even and d odd"));
    }
    let findings = json!({
        "nodes": g.nodes().len(),
        "edges": edge_summary(&g),
        "sources": sources,
        "sinks": sinks,
    });
    Ok(rec.finish("unique-extremes", &[("n", n), ("d", d)], findings, started))
}

fn describe_nodes(g: &FlipDigraph, ids: &[usize]) -> String {
    let parts: Vec<String> = ids.iter().map(|&i| format!("{i}:{}", format_members(g.node(i).iter()))).collect();
    format!("[{}]", parts.join(", "))
}

fn edge_summary(g: &FlipDigraph) -> BTreeMap<&'static str, usize> {
    [EdgeKind::TypeA, EdgeKind::Simple, EdgeKind::Double, EdgeKind::Barrel]
        .into_iter()
        .map(|k| (k.as_str(), g.count_kind(k)))
        .filter(|&(_, c)| c > 0)
        .collect()
}

/// Compares the enumerated symmetric digraphs with the hand-described ones
/// and records the size of the symmetric class of `(6, 3)`.
pub fn check_example_fixtures(budget: Budget) -> Result<CheckReport> {
    let started = Instant::now();
    let mut rec = Recorder::new(true);
    let mut per_fixture = Vec::new();
    for fixture in fixtures::all() {
        let g = class_digraph(fixture.n, fixture.d, Class::Symmetric, budget)?;
        compare_fixture(&fixture, &g, &mut rec);
        per_fixture.push(json!({
            "n": fixture.n,
            "d": fixture.d,
            "nodes": g.nodes().len(),
            "edges": edge_summary(&g),
        }));
    }
    let sq63 = enumerate(6, 3, Class::Symmetric, budget)?.len();
    let findings = json!({ "digraphs": per_fixture, "symmetric_6_3": sq63, "symmetric_6_3_expected": 20 });
    Ok(rec.finish("fixtures", &[], findings, started))
}

fn compare_fixture(fixture: &Fixture, g: &FlipDigraph, rec: &mut Recorder) {
    let (n, d) = (fixture.n, fixture.d);
    let want: BTreeSet<&Cubillage> = fixture.nodes.iter().map(|(_, q)| q).collect();
    let got: BTreeSet<&Cubillage> = g.nodes().iter().collect();
    rec.expect(want == got, || {
        format!("({n}, {d}): node sets differ: {} enumerated, {} described", got.len(), want.len())
    });
    let name_of = |id: usize| {
        fixture.nodes.iter().find(|(_, q)| q == g.node(id)).map(|(k, _)| k.clone()).unwrap_or_else(|| id.to_string())
    };
    let got_edges: BTreeSet<(String, String, EdgeKind)> =
        g.edges().iter().map(|e| (name_of(e.src), name_of(e.dst), e.kind)).collect();
    let want_edges: BTreeSet<(String, String, EdgeKind)> = fixture.edges.iter().cloned().collect();
    for e in want_edges.difference(&got_edges) {
        rec.expect(false, || format!("({n}, {d}): missing arrow {} -{}-> {}", e.0, e.2, e.1));
    }
    for e in got_edges.difference(&want_edges) {
        rec.expect(false, || format!("({n}, {d}): unexpected arrow {} -{}-> {}", e.0, e.2, e.1));
    }
}

/// Every `(Q, G, direction)` where validity-only and fragment-checked barrel
/// applicability disagree. Always report-only.
pub fn check_barrel_criteria_divergence(n: usize, d: usize, budget: Budget) -> Result<CheckReport> {
    let started = Instant::now();
    let nodes = enumerate(n, d, Class::Symmetric, budget)?;
    let mut divergent = Vec::new();
    let mut barrels_validity_only = 0;
    for q in &nodes {
        for dir in [Direction::Raise, Direction::Lower] {
            let loose = barrels(symmetric_flips(q, dir, false)?);
            let strict = barrels(symmetric_flips(q, dir, true)?);
            barrels_validity_only += loose.len();
            for g in loose.symmetric_difference(&strict) {
                divergent.push(json!({
                    "cubillage": format_members(q.iter()),
                    "barrel": g.to_string(),
                    "direction": dir,
                    "fragment_check": strict.contains(g),
                }));
            }
        }
    }
    let findings = json!({
        "cubillages": nodes.len(),
        "barrel_candidates": barrels_validity_only,
        "divergences": divergent,
    });
    Ok(Recorder::new(false).finish("barrel-divergence", &[("n", n), ("d", d)], findings, started))
}

fn barrels(flips: Vec<SymFlip>) -> BTreeSet<crate::colors::ColorSet> {
    flips
        .into_iter()
        .filter_map(|f| match f {
            SymFlip::Barrel(g) => Some(g),
            _ => None,
        })
        .collect()
}

/// The reduction `(2m+1, d) -> (2m, d)` and, for even `d`, the core
/// `(2m, d) -> (m, d/2)`.
pub fn check_morphism_conjectures(m: usize, d: usize, budget: Budget) -> Result<CheckReport> {
    let started = Instant::now();
    let mut rec = Recorder::new(true);
    let mut open = serde_json::Map::new();

    let odd = class_digraph(2 * m + 1, d, Class::Symmetric, budget)?;
    let even = class_digraph(2 * m, d, Class::Symmetric, budget)?;
    let red = red_map(&odd, &even)?;
    let r = check_digraph_map(&red);
    rec.expect(r.arrow_consistent, || format!("red is not arrow-consistent: {:?}", r.witnesses));
    rec.expect(r.surjective, || format!("red is not surjective: {:?}", r.witnesses));
    rec.expect(r.fibers_connected, || format!("red has a disconnected fiber: {:?}", r.witnesses));
    if d == 2 {
        rec.expect(r.full, || format!("red is not full at d = 2: {:?}", r.witnesses));
    } else {
        open.insert("red_full".into(), json!(r.full));
    }
    check_red_cases(&red, d, &mut rec);
    let st = reduce_middle(&Cubillage::standard(2 * m + 1, d)?)?;
    rec.expect(st.is_standard(), || "reduction of the standard cubillage is not standard".into());
    let mut findings = json!({
        "red": {
            "fiber_sizes": r.fibers.iter().map(|f| f.members.len()).collect::<Vec<_>>(),
            "arrow_images": r.arrow_images,
            "full": r.full,
        }
    });

    if d.is_multiple_of(2) {
        let quotient = class_digraph(m, d / 2, Class::All, budget)?;
        let cor = cor_map(&even, &quotient)?;
        let c = check_digraph_map(&cor);
        for (i, e) in even.edges().iter().enumerate() {
            let image = cor.edge_image(i);
            let ok = match e.kind {
                EdgeKind::Double => image == ArrowImage::Loop,
                EdgeKind::Barrel => image == ArrowImage::Arrow(EdgeKind::TypeA),
                _ => false,
            };
            rec.expect(ok, || format!("core sends {} arrow {}->{} to {image}", e.kind, e.src, e.dst));
        }
        let standard_core = core(&Cubillage::standard(2 * m, d)?)?;
        rec.expect(standard_core.is_standard(), || "core of the standard cubillage is not standard".into());
        if d == 2 {
            rec.expect(c.surjective, || format!("core is not surjective at d = 2: {:?}", c.witnesses));
            rec.expect(c.fibers_connected, || format!("core fibers disconnected at d = 2: {:?}", c.witnesses));
            rec.expect(c.full, || format!("core is not full at d = 2: {:?}", c.witnesses));
        } else {
            open.insert("cor_surjective".into(), json!(c.surjective));
            open.insert("cor_fibers_connected".into(), json!(c.fibers_connected));
            open.insert("cor_full".into(), json!(c.full));
        }
        findings["cor"] = json!({
            "fiber_sizes": c.fibers.iter().map(|f| f.members.len()).collect::<Vec<_>>(),
            "arrow_images": c.arrow_images,
            "surjective": c.surjective,
            "full": c.full,
            "fibers_connected": c.fibers_connected,
        });
    }
    findings["open"] = Value::Object(open);
    Ok(rec.finish("morphisms", &[("m", m), ("d", d)], findings, started))
}

/// For even `d` simple arrows collapse under the reduction; for odd `d`
/// barrels become simple arrows.
fn check_red_cases(red: &DigraphMap<'_>, d: usize, rec: &mut Recorder) {
    for (i, e) in red.source.edges().iter().enumerate() {
        let image = red.edge_image(i);
        if d.is_multiple_of(2) && e.kind == EdgeKind::Simple {
            rec.expect(image == ArrowImage::Loop, || format!("simple arrow {}->{} maps to {image}", e.src, e.dst));
        }
        if d % 2 == 1 && e.kind == EdgeKind::Barrel {
            rec.expect(image == ArrowImage::Arrow(EdgeKind::Simple), || {
                format!("barrel arrow {}->{} maps to {image}", e.src, e.dst)
            });
        }
    }
}

/// Lifts every maximal chain of the symmetric digraph on `(n, d)`, `n` even
/// and `d` odd, and checks that the lifts are skew-symmetric.
pub fn check_chain_lifts(n: usize, d: usize, budget: Budget, chain_limit: usize) -> Result<CheckReport> {
    let started = Instant::now();
    if n % 2 == 1 || d.is_multiple_of(2) {
        return Err(Error::precondition(format!("chain lifting needs n even and d odd, got ({n}, {d})")));
    }
    let g = class_digraph(n, d, Class::Symmetric, budget)?;
    let chains = g.maximal_chains(chain_limit);
    let lifts = lift_chains(&g, &chains.chains)?;
    let mut rec = Recorder::new(true);
    let not_skew: Vec<&Cubillage> = lifts.iter().filter(|q| !q.is_skew_symmetric()).collect();
    rec.expect(not_skew.is_empty(), || format!("lift {} is not skew-symmetric", format_members(not_skew[0].iter())));
    let skew = enumerate(n, d + 1, Class::Skew, budget)?;
    let findings = json!({
        "chains": chains.chains.len(),
        "truncated": chains.truncated,
        "distinct_lifts": lifts.len(),
        "skew_class": skew.len(),
        "covers_skew_class": !chains.truncated && lifts == skew,
    });
    Ok(rec.finish("lift", &[("n", n), ("d", d)], findings, started))
}

/// Symmetric and skew-symmetric classes have equal size for even `n` and
/// even `d`; odd `n` has no skew-symmetric cubillages.
pub fn check_class_counts(n: usize, d: usize, budget: Budget) -> Result<CheckReport> {
    let started = Instant::now();
    let symmetric = enumerate(n, d, Class::Symmetric, budget)?.len();
    let skew = enumerate(n, d, Class::Skew, budget)?.len();
    let assertive = n % 2 == 1 || d.is_multiple_of(2);
    let mut rec = Recorder::new(assertive);
    if n % 2 == 1 {
        rec.expect(skew == 0, || format!("{skew} skew-symmetric cubillages with n odd"));
    } else if d.is_multiple_of(2) {
        rec.expect(symmetric == skew, || format!("{symmetric} symmetric but {skew} skew-symmetric"));
    }
    let findings = json!({ "symmetric": symmetric, "skew": skew });
    Ok(rec.finish("counts", &[("n", n), ("d", d)], findings, started))
}

/// Runs the tiling oracle on every cubillage of `(n, d)`.
pub fn check_oracle(n: usize, d: usize, budget: Budget) -> Result<CheckReport> {
    use rayon::prelude::*;
    let started = Instant::now();
    let all = enumerate(n, d, Class::All, budget)?;
    let frame = frame_default(n, d)?;
    let failures: Vec<String> = all
        .par_iter()
        .map(|q| verify_tiling(q, &frame).map(|r| (q, r)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, r)| !r.passed())
        .map(|(q, r)| format!("{}: {}", format_members(q.iter()), r.failures[0].witness))
        .collect();
    let mut rec = Recorder::new(true);
    let failed = failures.len();
    for f in failures.into_iter().take(10) {
        rec.expect(false, || f);
    }
    let findings = json!({ "cubillages": all.len(), "failed": failed });
    Ok(rec.finish("oracle", &[("n", n), ("d", d)], findings, started))
}

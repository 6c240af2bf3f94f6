//! The anchor table: one or more rows per acceptance criterion, each with an
//! expected value, the computed value, a tolerance and a verdict.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{complete, cycle, pair_count, star, Graph};
use crate::search::{catalog, find_witness, scan_graphs, scan_theorem, ScanConfig, ScanReport};
use crate::spectral::{normalized_laplacian, spectrum, Which};
use crate::theorems::{
    check_thm_4_2, replay_proof, Checker, Direction, Instance, PreconditionState, TheoremId, Tolerances,
};

pub const CRITERIA: std::ops::RangeInclusive<u8> = 1..=10;

/// Theorems with a replayable proof.
pub const REPLAYABLE: [TheoremId; 6] =
    [TheoremId::T3_1, TheoremId::T3_3, TheoremId::T3_6, TheoremId::T4_1, TheoremId::T4_2, TheoremId::T4_3];

/// Replayed instances per theorem.
pub const REPLAY_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub criterion: u8,
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Row {
    fn close(criterion: u8, name: &str, expected: f64, computed: f64, tolerance: f64) -> Self {
        Row {
            criterion,
            name: name.into(),
            expected: json!(expected),
            computed: json!(computed),
            tolerance,
            pass: (expected - computed).abs() <= tolerance,
            detail: String::new(),
        }
    }

    /// A row whose computed value is a count that must be zero.
    fn zero(criterion: u8, name: &str, count: u64, detail: String) -> Self {
        Row {
            criterion,
            name: name.into(),
            expected: json!(0),
            computed: json!(count),
            tolerance: 0.0,
            pass: count == 0,
            detail,
        }
    }

    fn error(criterion: u8, e: &Error) -> Self {
        Row {
            criterion,
            name: format!("criterion {criterion}"),
            expected: Value::Null,
            computed: json!(e.to_string()),
            tolerance: 0.0,
            pass: false,
            detail: "aborted".into(),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Every criterion in order. Errors become failing rows.
pub fn reproduce() -> Vec<Row> {
    CRITERIA.flat_map(rows_for).collect()
}

/// Rows for one criterion; an error becomes a single failing row.
pub fn rows_for(criterion: u8) -> Vec<Row> {
    criterion_rows(criterion).unwrap_or_else(|e| vec![Row::error(criterion, &e)])
}

pub fn criterion_rows(criterion: u8) -> Result<Vec<Row>> {
    match criterion {
        1 => stars(),
        2 => cycles(),
        3 => glued_cycles(),
        4 => lemma_2_4(),
        5 => subdivision(),
        6 => identification(),
        7 => conditional(),
        8 => case_witnesses(),
        9 => hygiene(),
        10 => replays(),
        _ => Err(Error::InvalidConfig(format!("no criterion {criterion}; expected 1..=10"))),
    }
}

fn cfg(n_max: usize) -> Result<ScanConfig> {
    ScanConfig::new(n_max)
}

fn stars() -> Result<Vec<Row>> {
    let (mut dev, mut center) = (0.0f64, 0.0f64);
    for n in 3..=12 {
        let s = spectrum(&star(n)?)?;
        dev = dev.max((s.lambda2()? - 1.0).abs());
        for h in s.harmonic_eigenfunctions(Which::SecondSmallest)? {
            center = center.max(h.f[0].abs());
        }
    }
    Ok(vec![
        Row::close(1, "lambda2(S_n), n=3..12", 1.0, 1.0 + dev, 1e-9).with_detail("worst deviation over n"),
        Row { pass: center <= 1e-7, ..Row::close(1, "max |f(center)|, S_3..S_12", 0.0, center, 1e-7) },
    ])
}

fn cycles() -> Result<Vec<Row>> {
    Ok(vec![
        Row::close(2, "rho(C4)", 2.0, spectrum(&cycle(4)?)?.rho(), 1e-9),
        Row::close(2, "rho(C5)", 1.0 - (4.0 * PI / 5.0).cos(), spectrum(&cycle(5)?)?.rho(), 1e-9),
    ])
}

fn glued_cycles() -> Result<Vec<Row>> {
    let v = check_thm_4_2(&cycle(4)?, 3, &cycle(3)?, 0)?;
    let pre = v.precondition == PreconditionState::Fails;
    Ok(vec![
        Row::close(3, "rho(C4∘C3)", 1.9010, v.rhs, 5e-4),
        Row {
            criterion: 3,
            name: "T4.2 precondition on C4∘C3".into(),
            expected: json!(PreconditionState::Fails.as_str()),
            computed: json!(v.precondition.as_str()),
            tolerance: 0.0,
            pass: pre && v.pass,
            detail: format!("rho(C4) = {}, vacuous pass = {}", v.lhs, v.pass),
        },
    ])
}

fn summary(r: &ScanReport) -> String {
    format!("{} instances", r.total())
}

fn lemma_2_4() -> Result<Vec<Row>> {
    let r = scan_theorem(TheoremId::L2_4, &cfg(6)?)?;
    let mut dev = 0.0f64;
    for n in 2..=8 {
        let l2 = spectrum(&complete(n)?)?.lambda2()?;
        dev = dev.max((l2 - n as f64 / (n as f64 - 1.0)).abs());
    }
    Ok(vec![
        Row::zero(4, "L2.4 violations, connected non-complete n<=6", r.failures(), summary(&r)),
        Row::close(4, "max |lambda2(K_n) - n/(n-1)|, n=2..8", 0.0, dev, 1e-8),
    ])
}

fn subdivision() -> Result<Vec<Row>> {
    let r = scan_theorem(TheoremId::T3_1, &cfg(6)?)?;
    Ok(vec![Row::zero(5, "T3.1 violations incl. strictness, n<=6", r.failures(), summary(&r))])
}

fn identification() -> Result<Vec<Row>> {
    let graphs: Vec<Graph> = catalog(5).into_iter().map(|(_, g)| g).collect();
    let c = cfg(6)?;
    let t33 = scan_graphs(TheoremId::T3_3, &graphs, &c)?;
    let c34 = scan_graphs(TheoremId::C3_4, &graphs, &c)?;
    let c35 = scan_theorem(TheoremId::C3_5, &cfg(8)?)?;
    Ok(vec![
        Row::zero(6, "T3.3 violations, catalog pairs", t33.failures(), summary(&t33)),
        Row::zero(6, "C3.4 violations, catalog pairs", c34.failures(), summary(&c34)),
        Row::zero(6, "C3.5 violations, subtrees of trees n<=8", c35.failures(), summary(&c35)),
    ])
}

fn conditional() -> Result<Vec<Row>> {
    let c = cfg(6)?;
    let mut rows = Vec::new();
    for t in [TheoremId::T3_6, TheoremId::T4_1, TheoremId::T4_2, TheoremId::T4_3] {
        let r = scan_theorem(t, &c)?;
        let holds = r.tally(PreconditionState::Holds);
        let (fails, n) = holds.map_or((0, 0), |h| (h.failures, h.counts.total()));
        rows.push(Row::zero(7, &format!("{t} violations, holds stratum n<=6"), fails, format!("{n} instances")));
    }
    Ok(rows)
}

fn case_witnesses() -> Result<Vec<Row>> {
    let c = cfg(7)?;
    let wanted: [(TheoremId, &[Direction], &str); 6] = [
        (TheoremId::T3_6, &[Direction::Less], "T3.6 fails, lambda2(G) < lambda2(G')"),
        (TheoremId::T3_6, &[Direction::Equal], "T3.6 fails, lambda2(G) = lambda2(G')"),
        (TheoremId::T3_6, &[Direction::Greater], "T3.6 fails, lambda2(G) > lambda2(G')"),
        (TheoremId::T4_3, &[Direction::Less], "T4.3 fails, rho(G) < rho(G')"),
        (TheoremId::T4_3, &[Direction::Greater], "T4.3 fails, rho(G) > rho(G')"),
        (TheoremId::T4_1, &[Direction::Less], "T4.1 fails, rho(G) < rho(G')"),
    ];
    let mut rows = Vec::new();
    let mut push = |name: &str, found: Option<String>| {
        rows.push(Row {
            criterion: 8,
            name: name.into(),
            expected: json!("witness"),
            computed: json!(found.clone().unwrap_or_else(|| "none".into())),
            tolerance: 0.0,
            pass: found.is_some(),
            detail: String::new(),
        })
    };
    for (t, dirs, name) in wanted {
        push(name, first_witness(t, dirs, &c)?);
    }
    let ge = first_witness(TheoremId::T4_1, &[Direction::Equal, Direction::Greater], &c)?;
    push("T4.1 fails, rho(G) >= rho(G')", ge);
    Ok(rows)
}

fn first_witness(t: TheoremId, dirs: &[Direction], c: &ScanConfig) -> Result<Option<String>> {
    for &d in dirs {
        if let Some(w) = find_witness(t, PreconditionState::Fails, d, c)? {
            let params = serde_json::to_string(&w.params).expect("params serialize");
            return Ok(Some(format!("{} {params}", w.graph6)));
        }
    }
    Ok(None)
}

/// Worst residual, orthonormality and trace errors over every labelled graph
/// on at most `n_max` vertices.
pub fn hygiene_maxima(n_max: usize) -> Result<[f64; 3]> {
    let mut worst = [0.0f64; 3];
    for n in 1..=n_max {
        for mask in 0..1u64 << pair_count(n) {
            let g = Graph::from_mask(n, mask)?;
            let s = spectrum(&g)?;
            let d = s.decomposition();
            let residual = crate::eigen::residual_check(&normalized_laplacian(&g), d)?;
            let active = (0..n).filter(|&v| !g.is_isolated(v)).count() as f64;
            let trace = (d.values.iter().sum::<f64>() - active).abs();
            for (w, x) in worst.iter_mut().zip([residual, d.orthonormality_error(), trace]) {
                *w = w.max(x);
            }
        }
    }
    Ok(worst)
}

fn hygiene() -> Result<Vec<Row>> {
    let [res, ortho, trace] = hygiene_maxima(6)?;
    let note = "all labelled graphs n<=6; every other spectrum is certified at 1e-8 when computed";
    Ok(vec![
        Row::close(9, "max eigen residual", 0.0, res, 1e-8).with_detail(note),
        Row::close(9, "max orthonormality error", 0.0, ortho, 1e-8),
        Row::close(9, "max trace identity error", 0.0, trace, 1e-8),
    ])
}

/// Outcome of replaying a sample of one theorem's instances.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplaySummary {
    pub theorem: TheoremId,
    pub replayed: usize,
    pub failed: usize,
    pub worst_residual: f64,
    /// Traces that contain a shift-constant step.
    pub with_shift: usize,
}

/// Replays `samples` instances spread evenly over the instances of `theorem`
/// on at most `n_max` vertices whose hypothesis is not known to fail. Each
/// uses the first basis function that satisfies the hypothesis.
pub fn replay_sample(theorem: TheoremId, n_max: usize, samples: usize) -> Result<ReplaySummary> {
    let c = ScanConfig { witness_cap: usize::MAX, ..cfg(n_max)? };
    let report = scan_theorem(theorem, &c)?;
    let mut pool: Vec<_> = report.witnesses().filter(|w| w.precondition != PreconditionState::Fails).collect();
    pool.sort_by_key(|w| w.key);
    pool.dedup_by_key(|w| (w.key, w.graph6.clone(), w.params.clone()));
    if pool.len() < samples {
        return Err(Error::InvalidConfig(format!(
            "{theorem}: only {} eligible instances at n <= {n_max}",
            pool.len()
        )));
    }
    let checker = Checker::new(Tolerances::default());
    let mut out = ReplaySummary { theorem, replayed: 0, failed: 0, worst_residual: 0.0, with_shift: 0 };
    for i in 0..samples {
        let inst: Instance = pool[i * pool.len() / samples].instance()?;
        let verdict = checker.check(theorem, &inst)?;
        let idx = verdict.basis.iter().position(|b| b.satisfied).unwrap_or(0);
        let trace = replay_proof(theorem, &inst, Some(idx))?;
        out.replayed += 1;
        out.failed += usize::from(!trace.all_hold);
        out.worst_residual = out.worst_residual.max(trace.max_relative_residual());
        out.with_shift += usize::from(trace.steps.iter().any(|s| s.label.starts_with("c = ")));
    }
    Ok(out)
}

fn replays() -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for t in REPLAYABLE {
        let s = replay_sample(t, 5, REPLAY_SAMPLES)?;
        let needs_shift = matches!(t, TheoremId::T3_1 | TheoremId::T3_3);
        let mut row = Row::close(10, &format!("{t} replay, worst relative residual"), 0.0, s.worst_residual, 1e-9);
        row.pass &= s.failed == 0 && s.replayed == REPLAY_SAMPLES && (!needs_shift || s.with_shift > 0);
        rows.push(row.with_detail(format!(
            "{} replayed, {} failed, {} with shift constant",
            s.replayed, s.failed, s.with_shift
        )));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_rows_pass() {
        for c in 1..=3 {
            for row in rows_for(c) {
                assert!(row.pass, "{row:?}");
            }
        }
    }

    #[test]
    fn unknown_criterion_is_a_failing_row() {
        let rows = rows_for(11);
        assert_eq!(rows.len(), 1);
        assert!(!rows[0].pass);
    }

    #[test]
    fn rows_serialize() {
        let row = &rows_for(2)[0];
        let back: Row = serde_json::from_str(&serde_json::to_string(row).unwrap()).unwrap();
        assert_eq!(&back, row);
        assert_eq!(row.name, "rho(C4)");
    }
}

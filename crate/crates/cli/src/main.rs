mod args;
mod render;

use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde_json::{json, Value};

use nlap::graph::{make_named, parse_edge_list, NamedFamily};
use nlap::graph6::{parse_graph6, parse_graph6_lines, to_graph6};
use nlap::perturb::{identify, subdivision_graph, transfer_edges, PerturbResult};
use nlap::reproduce::{rows_for, CRITERIA};
use nlap::search::{find_witness, scan_graphs, scan_theorem, ScanConfig, ScanReport, Witness};
use nlap::spectral::spectrum;
use nlap::theorems::{Checker, Instance, InstanceKind, PreconditionState, TheoremId, Tolerances, Verdict};
use nlap::Graph;

use args::{Cli, Command, Format, GraphInput, Op, Params, ScanArgs};
use render::{cell, eigenvalue, pairs, raw, sig6, table};

/// Exit status of a command that ran to completion.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("nlap: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let tol = tolerances(cli.tol)?;
    // Everything is parsed and validated before the header goes out, so a
    // usage error never leaves a partial report behind.
    let (text, outcome) = match &cli.command {
        Command::Spectrum { input } => spectrum_cmd(&main_graph(input)?.ok_or_else(no_input)?, cli.format)?,
        Command::Perturb { op, input, params } => perturb_cmd(*op, input, params, cli.format)?,
        Command::Check { theorem, input, params } => {
            let theorem: TheoremId = theorem.parse()?;
            let instance = build_instance(theorem, input, params)?;
            let verdict = Checker::new(tol).check(theorem, &instance)?;
            check_output(&verdict, cli.format)
        }
        Command::Scan { theorem, scan, stream } => {
            let theorem: TheoremId = theorem.parse()?;
            let cfg = scan_config(scan, tol)?;
            let report = match stream {
                Some(path) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    scan_graphs(theorem, &parse_graph6_lines(&text)?, &cfg)?
                }
                None => scan_theorem(theorem, &cfg)?,
            };
            scan_output(&report, cli.format)
        }
        Command::Witness { theorem, pre, dir, scan } => {
            let theorem: TheoremId = theorem.parse()?;
            let pre: PreconditionState = pre.parse()?;
            let dir = dir.parse()?;
            let cfg = scan_config(scan, tol)?;
            witness_output(find_witness(theorem, pre, dir, &cfg)?.as_ref(), cli.format)
        }
        Command::Reproduce { criterion } => {
            if cli.tol.is_some() {
                bail!("reproduce runs at fixed tolerances; --tol is not accepted");
            }
            let ids: Vec<u8> = if criterion.is_empty() { CRITERIA.collect() } else { criterion.clone() };
            if let Some(bad) = ids.iter().find(|c| !CRITERIA.contains(c)) {
                bail!("no criterion {bad}; expected 1..=10");
            }
            reproduce_output(&ids, cli.format)
        }
    };
    if !cli.no_timestamp {
        print!("{}", timestamp(cli.format));
    }
    print!("{text}");
    Ok(outcome)
}

fn timestamp(format: Format) -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    match format {
        Format::Json => format!("{}\n", json!({ "generated_unix": secs })),
        Format::Table | Format::Csv => format!("# generated at unix time {secs}\n"),
    }
}

fn tolerances(eigen: Option<f64>) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    if let Some(t) = eigen {
        if !(t > 0.0 && t.is_finite()) {
            bail!("--tol must be a positive number, got {t}");
        }
        tol.eigen = t;
    }
    Ok(tol)
}

fn no_input() -> anyhow::Error {
    anyhow!("no graph given; use one of --g6, --file, --family")
}

fn main_graph(input: &GraphInput) -> Result<Option<Graph>> {
    if let Some(s) = &input.g6 {
        return Ok(Some(parse_graph6(s)?));
    }
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Some(parse_edge_list(&text)?));
    }
    if let Some(f) = &input.family {
        return Ok(Some(make_named(f.parse::<NamedFamily>()?)?));
    }
    Ok(None)
}

/// `kind:n` or graph6.
fn graph_spec(s: &str) -> Result<Graph> {
    if s.contains(':') {
        Ok(make_named(s.parse::<NamedFamily>()?)?)
    } else {
        Ok(parse_graph6(s)?)
    }
}

fn list(flag: &str, s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse().with_context(|| format!("--{flag}: {t:?} is not a vertex index")))
        .collect()
}

fn edge_list(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|t| {
            let (a, b) = t.split_once('-').ok_or_else(|| anyhow!("--edges: {t:?} is not of the form a-b"))?;
            let parse = |x: &str| x.trim().parse::<usize>().with_context(|| format!("--edges: bad vertex in {t:?}"));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

/// Names of the parameter flags that were given.
fn given(p: &Params) -> Vec<&'static str> {
    let flags = [
        ("u", p.u.is_some()),
        ("v", p.v.is_some()),
        ("targets", p.targets.is_some()),
        ("edges", p.edges.is_some()),
        ("subtree", p.subtree.is_some()),
        ("n", p.n.is_some()),
        ("g1", p.g1.is_some()),
        ("g2", p.g2.is_some()),
    ];
    flags.into_iter().filter(|(_, on)| *on).map(|(f, _)| f).collect()
}

fn only(what: &str, p: &Params, allowed: &[&str]) -> Result<()> {
    if let Some(extra) = given(p).into_iter().find(|f| !allowed.contains(f)) {
        bail!("{what} does not take --{extra}");
    }
    Ok(())
}

fn need<T: Copy>(what: &str, flag: &str, x: Option<T>) -> Result<T> {
    x.ok_or_else(|| anyhow!("{what} needs --{flag}"))
}

fn need_str<'a>(what: &str, flag: &str, x: &'a Option<String>) -> Result<&'a str> {
    x.as_deref().ok_or_else(|| anyhow!("{what} needs --{flag}"))
}

fn in_range(g: &Graph, name: &str, vs: &[usize]) -> Result<()> {
    if let Some(&x) = vs.iter().find(|&&x| x >= g.order()) {
        bail!("vertex {x} is out of range for {name} on {} vertices", g.order());
    }
    Ok(())
}

fn two_graphs(what: &str, input: &GraphInput, p: &Params) -> Result<(Graph, Graph)> {
    let g1 = match (&p.g1, main_graph(input)?) {
        (Some(_), Some(_)) => bail!("give the first graph either as --g1 or as --g6/--file/--family, not both"),
        (Some(s), None) => graph_spec(s)?,
        (None, Some(g)) => g,
        (None, None) => bail!("{what} needs --g1"),
    };
    let g2 = graph_spec(need_str(what, "g2", &p.g2)?)?;
    Ok((g1, g2))
}

fn build_instance(theorem: TheoremId, input: &GraphInput, p: &Params) -> Result<Instance> {
    let what = theorem.as_str();
    let kind = theorem.instance_kind();
    if kind == InstanceKind::Star {
        only(what, p, &["n"])?;
        if main_graph(input)?.is_some() {
            bail!("{what} takes --n, not a graph");
        }
        return Ok(Instance::Star(need(what, "n", p.n)?));
    }
    if kind == InstanceKind::Identify {
        only(what, p, &["g1", "g2", "u", "v"])?;
        let (g1, g2) = two_graphs(what, input, p)?;
        let (u, v) = (need(what, "u", p.u)?, need(what, "v", p.v)?);
        in_range(&g1, "G1", &[u])?;
        in_range(&g2, "G2", &[v])?;
        return Ok(Instance::Identify { g1, u, g2, v });
    }
    let g = main_graph(input)?.ok_or_else(no_input)?;
    Ok(match kind {
        InstanceKind::Graph => {
            only(what, p, &[])?;
            Instance::Graph(g)
        }
        InstanceKind::Edge => {
            only(what, p, &["u", "v"])?;
            let (u, v) = (need(what, "u", p.u)?, need(what, "v", p.v)?);
            in_range(&g, "G", &[u, v])?;
            Instance::Edge { g, u, v }
        }
        InstanceKind::Subdivision => {
            only(what, p, &["edges"])?;
            let edges = edge_list(need_str(what, "edges", &p.edges)?)?;
            in_range(&g, "G", &edges.iter().flat_map(|&(a, b)| [a, b]).collect::<Vec<_>>())?;
            Instance::Subdivision { g, edges }
        }
        InstanceKind::Subtree => {
            only(what, p, &["subtree"])?;
            let vertices = list("subtree", need_str(what, "subtree", &p.subtree)?)?;
            in_range(&g, "T", &vertices)?;
            Instance::Subtree { t: g, vertices }
        }
        InstanceKind::Transfer => {
            only(what, p, &["u", "v", "targets"])?;
            let (u, v) = (need(what, "u", p.u)?, need(what, "v", p.v)?);
            let targets = list("targets", need_str(what, "targets", &p.targets)?)?;
            in_range(&g, "G", &[u, v])?;
            in_range(&g, "G", &targets)?;
            Instance::Transfer { g, u, v, targets }
        }
        InstanceKind::Star | InstanceKind::Identify => unreachable!("handled above"),
    })
}

fn scan_config(a: &ScanArgs, tol: Tolerances) -> Result<ScanConfig> {
    let cfg = ScanConfig {
        n_max: a.nmax,
        max_transfer: a.max_transfer,
        max_subdivide: a.max_subdivide,
        witness_cap: a.witness_cap,
        jobs: a.jobs,
        tol,
        ..ScanConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn g6(g: &Graph) -> String {
    to_graph6(g).unwrap_or_default()
}

fn spectrum_cmd(g: &Graph, format: Format) -> Result<(String, Outcome)> {
    let s = spectrum(g)?;
    let values = s.values();
    let text = match format {
        Format::Json => {
            let l2 = s.lambda2().ok();
            format!(
                "{}\n",
                json!({ "graph6": g6(g), "n": g.order(), "values": values, "lambda2": l2, "rho": s.rho() })
            )
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = values.iter().enumerate().map(|(k, x)| vec![k.to_string(), x.to_string()]).collect();
            render::csv(&["k", "lambda"], &rows)
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = values.iter().enumerate().map(|(k, x)| vec![k.to_string(), eigenvalue(*x)]).collect();
            table(&["k", "lambda"], &rows)
        }
    };
    Ok((text, Outcome::Ok))
}

fn perturb_cmd(op: Op, input: &GraphInput, p: &Params, format: Format) -> Result<(String, Outcome)> {
    let (before, second, res): (Graph, Option<Graph>, PerturbResult) = match op {
        Op::Subdivide => {
            only("subdivide", p, &["u", "v", "edges"])?;
            let g = main_graph(input)?.ok_or_else(no_input)?;
            let edges = match (&p.edges, p.u, p.v) {
                (Some(e), None, None) => edge_list(e)?,
                (None, Some(u), Some(v)) => vec![(u, v)],
                _ => bail!("subdivide needs either --u and --v, or --edges"),
            };
            let r = subdivision_graph(&g, &edges)?;
            (g, None, r)
        }
        Op::Identify => {
            only("identify", p, &["g1", "g2", "u", "v"])?;
            let (g1, g2) = two_graphs("identify", input, p)?;
            let r = identify(&g1, need("identify", "u", p.u)?, &g2, need("identify", "v", p.v)?)?;
            (g1, Some(g2), r)
        }
        Op::Transfer => {
            only("transfer", p, &["u", "v", "targets"])?;
            let g = main_graph(input)?.ok_or_else(no_input)?;
            let targets = list("targets", need_str("transfer", "targets", &p.targets)?)?;
            let r = transfer_edges(&g, need("transfer", "u", p.u)?, need("transfer", "v", p.v)?, &targets)?;
            (g, None, r)
        }
    };
    let values = |g: &Graph| -> Result<(Option<f64>, f64)> {
        let s = spectrum(g)?;
        Ok((s.lambda2().ok(), s.rho()))
    };
    let (l_before, r_before) = values(&before)?;
    let (l_after, r_after) = values(&res.result)?;
    let record = json!({
        "operation": format!("{op:?}").to_lowercase(),
        "before": g6(&before),
        "second": second.as_ref().map(g6),
        "after": g6(&res.result),
        "order": res.result.order(),
        "size": res.result.size(),
        "lambda2_before": l_before,
        "lambda2_after": l_after,
        "rho_before": r_before,
        "rho_after": r_after,
        "old_to_new": res.old_to_new,
        "second_to_new": res.second_to_new,
        "new_vertices": res.new_vertices,
        "disconnected": res.disconnected,
    });
    Ok((object_output(&record, format), Outcome::Ok))
}

/// A flat JSON object as one JSON line, a key/value table or a one-row CSV.
fn object_output(record: &Value, format: Format) -> String {
    let map = record.as_object().expect("object record");
    match format {
        Format::Json => format!("{record}\n"),
        Format::Table => pairs(&map.iter().map(|(k, v)| (k.clone(), cell(v))).collect::<Vec<_>>()),
        Format::Csv => {
            let headers: Vec<&str> = map.keys().map(String::as_str).collect();
            render::csv(&headers, &[map.values().map(raw).collect()])
        }
    }
}

/// Names of the two compared quantities.
fn sides(t: TheoremId) -> (&'static str, &'static str) {
    match t {
        TheoremId::L2_4 => ("lambda2(G)", "bound"),
        TheoremId::C2_2 => ("worst neighbourhood sum", "bound"),
        TheoremId::C2_3 => ("lambda2(S_n)", "expected"),
        TheoremId::T3_1 => ("lambda2(G)", "lambda2(G')"),
        TheoremId::C3_2 => ("lambda2(G)", "lambda2(S(G))"),
        TheoremId::T3_3 => ("lambda2(G1)", "lambda2(G)"),
        TheoremId::C3_4 => ("lambda2(G)", "min lambda2(Gi)"),
        TheoremId::C3_5 => ("lambda2(T)", "lambda2(T')"),
        TheoremId::T3_6 => ("lambda2(G)", "lambda2(G')"),
        TheoremId::T4_1 => ("rho(G)", "rho(G')"),
        TheoremId::T4_2 => ("rho(G1)", "rho(G)"),
        TheoremId::T4_3 => ("rho(G)", "rho(G')"),
    }
}

fn verdict_word(v: &Verdict) -> &'static str {
    match (v.pass, v.is_vacuous()) {
        (true, true) => "vacuous pass",
        (true, false) => "PASS",
        (false, _) => "FAIL",
    }
}

fn params_text(p: &std::collections::BTreeMap<String, Value>) -> String {
    p.iter().map(|(k, v)| format!("{k}={}", raw(v).replace(' ', ""))).collect::<Vec<_>>().join(" ")
}

fn check_output(v: &Verdict, format: Format) -> (String, Outcome) {
    let outcome = if v.pass { Outcome::Ok } else { Outcome::Failed };
    let (lhs, rhs) = sides(v.theorem);
    let text = match format {
        Format::Json => format!("{}\n", v.to_json_line()),
        Format::Csv => {
            let headers = ["theorem", "graph6", "params", "precondition", "lhs", "relation", "rhs", "strict", "pass"];
            let row = vec![
                v.theorem.to_string(),
                v.graph6.clone(),
                serde_json::to_string(&v.params).expect("params serialize"),
                v.precondition.as_str().into(),
                v.lhs.to_string(),
                v.relation.symbol().into(),
                v.rhs.to_string(),
                v.strict_expected.to_string(),
                v.pass.to_string(),
            ];
            render::csv(&headers, &[row])
        }
        Format::Table => {
            let mut rows = vec![
                ("theorem".to_string(), v.theorem.to_string()),
                ("graph6".into(), v.graph6.clone()),
                ("params".into(), params_text(&v.params)),
                ("precondition".into(), v.precondition.as_str().into()),
                (lhs.into(), sig6(v.lhs)),
                ("relation".into(), v.relation.symbol().into()),
                (rhs.into(), sig6(v.rhs)),
                ("strict".into(), if v.strict_expected { "expected" } else { "not expected" }.into()),
            ];
            for b in &v.basis {
                let vals: Vec<String> = b.values.iter().map(|x| sig6(*x)).collect();
                let ok = if b.satisfied { "satisfied" } else { "not satisfied" };
                rows.push((format!("basis {}", b.index), format!("{} {ok}", vals.join(" "))));
            }
            rows.push(("verdict".into(), verdict_word(v).into()));
            pairs(&rows)
        }
    };
    (text, outcome)
}

fn scan_output(r: &ScanReport, format: Format) -> (String, Outcome) {
    let outcome = if r.failures() == 0 { Outcome::Ok } else { Outcome::Failed };
    let headers = ["precondition", "less", "equal", "greater", "failures"];
    let rows: Vec<Vec<String>> = r
        .tallies
        .iter()
        .map(|t| {
            vec![
                t.precondition.as_str().into(),
                t.counts.less.to_string(),
                t.counts.equal.to_string(),
                t.counts.greater.to_string(),
                t.failures.to_string(),
            ]
        })
        .collect();
    let text = match format {
        Format::Json => r.tallies.iter().map(|t| t.to_json_line() + "\n").collect(),
        Format::Csv => render::csv(&headers, &rows),
        Format::Table => {
            let (lhs, rhs) = sides(r.theorem);
            let mut out = format!(
                "{} over n <= {}: {} instances, {} failures; buckets compare {lhs} with {rhs}\n",
                r.theorem,
                r.config.n_max,
                r.total(),
                r.failures()
            );
            out.push_str(&table(&headers, &rows));
            let ws: Vec<&Witness> = r.tallies.iter().flat_map(|t| t.failing.iter().chain(&t.witnesses)).collect();
            if !ws.is_empty() {
                out.push('\n');
                out.push_str(&table(&["precondition", "direction", "lhs", "rhs", "pass", "graph6", "params"], &witness_rows(&ws)));
            }
            out
        }
    };
    (text, outcome)
}

fn witness_rows(ws: &[&Witness]) -> Vec<Vec<String>> {
    ws.iter()
        .map(|w| {
            vec![
                w.precondition.as_str().into(),
                w.direction.as_str().into(),
                sig6(w.lhs),
                sig6(w.rhs),
                w.pass.to_string(),
                w.graph6.clone(),
                params_text(&w.params),
            ]
        })
        .collect()
}

fn witness_output(w: Option<&Witness>, format: Format) -> (String, Outcome) {
    let text = match (w, format) {
        (Some(w), Format::Json) => format!("{}\n", w.to_json_line()),
        (None, Format::Json) => "null\n".into(),
        (None, _) => "no witness in the configured space\n".into(),
        (Some(w), Format::Csv) => render::csv(
            &["theorem", "precondition", "direction", "lhs", "rhs", "graph6", "params"],
            &[vec![
                w.theorem.to_string(),
                w.precondition.as_str().into(),
                w.direction.as_str().into(),
                w.lhs.to_string(),
                w.rhs.to_string(),
                w.graph6.clone(),
                serde_json::to_string(&w.params).expect("params serialize"),
            ]],
        ),
        (Some(w), Format::Table) => {
            let (lhs, rhs) = sides(w.theorem);
            pairs(&[
                ("theorem".into(), w.theorem.to_string()),
                ("precondition".into(), w.precondition.as_str().into()),
                ("direction".into(), w.direction.as_str().into()),
                (lhs.into(), sig6(w.lhs)),
                (rhs.into(), sig6(w.rhs)),
                ("graph6".into(), w.graph6.clone()),
                ("params".into(), params_text(&w.params)),
            ])
        }
    };
    (text, Outcome::Ok)
}

fn reproduce_output(ids: &[u8], format: Format) -> (String, Outcome) {
    let rows: Vec<_> = ids.iter().flat_map(|&c| rows_for(c)).collect();
    let outcome = if rows.iter().all(|r| r.pass) { Outcome::Ok } else { Outcome::Failed };
    let verdict = |pass: bool| if pass { "PASS" } else { "FAIL" }.to_string();
    let headers = ["criterion", "row", "expected", "computed", "tolerance", "verdict", "detail"];
    let text = match format {
        Format::Json => rows.iter().map(|r| serde_json::to_string(r).expect("rows serialize") + "\n").collect(),
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.criterion.to_string(),
                        r.name.clone(),
                        raw(&r.expected),
                        raw(&r.computed),
                        r.tolerance.to_string(),
                        verdict(r.pass),
                        r.detail.clone(),
                    ]
                })
                .collect();
            render::csv(&headers, &body)
        }
        Format::Table => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.criterion.to_string(),
                        r.name.clone(),
                        cell(&r.expected),
                        cell(&r.computed),
                        sig6(r.tolerance),
                        verdict(r.pass),
                        r.detail.clone(),
                    ]
                })
                .collect();
            let passed = rows.iter().filter(|r| r.pass).count();
            format!("{}\n{passed}/{} rows pass\n", table(&headers, &body), rows.len())
        }
    };
    (text, outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nlap::theorems::Relation;

    fn verdict(pass: bool, precondition: PreconditionState) -> Verdict {
        Verdict {
            theorem: TheoremId::T3_1,
            precondition,
            lhs: 0.5,
            rhs: 0.6,
            relation: Relation::Ge,
            strict_expected: false,
            pass,
            tolerance: 1e-8,
            graph6: "Ch".into(),
            params: Default::default(),
            basis: Vec::new(),
        }
    }

    #[test]
    fn failed_verdict_maps_to_status_1() {
        let (text, outcome) = check_output(&verdict(false, PreconditionState::Unconditional), Format::Table);
        assert!(matches!(outcome, Outcome::Failed));
        assert!(text.ends_with("verdict       FAIL\n"), "{text}");
        let (text, outcome) = check_output(&verdict(true, PreconditionState::Fails), Format::Table);
        assert!(matches!(outcome, Outcome::Ok));
        assert!(text.contains("vacuous pass"));
    }
}

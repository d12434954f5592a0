use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use gbh_core::blowup::verify_les;
use gbh_core::family::{betti_tables, detect_polynomial, support_report, ScanTarget, StabilizationReport};
use gbh_core::module::{betti_table, truncated_module};
use gbh_core::oracle::oracle_homology_with;
use gbh_core::{with_field, AbelianGroup, Graph, Mode, SwComplex};

use crate::config::{Format, RunConfig, Window};
use crate::error::CliError;

/// What a command produced: the data to emit and whether its checks passed.
pub struct Outcome {
    pub body: String,
    pub passed: bool,
    pub summary: String,
}

impl Outcome {
    fn ok(body: String, summary: String) -> Self {
        Outcome { body, passed: true, summary }
    }
}

/// `H_q(UF_n)` as one output row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub q: usize,
    pub n: usize,
    pub group: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub q: usize,
    pub n: usize,
    pub left: AbelianGroup,
    pub right: AbelianGroup,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: usize,
    pub q: usize,
    pub p: usize,
    pub j: usize,
    pub beta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub rows: Vec<ScanRow>,
    pub support: StabilizationReport,
    pub degrees: Vec<StabilizationReport>,
}

/// The reduced complex unless the graph has isolated vertices.
pub fn resolve_mode(g: &Graph, requested: Option<Mode>) -> Mode {
    requested.unwrap_or(if g.isolated_vertices().is_empty() { Mode::Reduced } else { Mode::Full })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn torsion_list(g: &AbelianGroup) -> String {
    g.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(";")
}

fn homology_grid(cx: &SwComplex, q_max: usize, n_max: usize) -> Vec<HomologyRow> {
    let cells: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (0..=q_max).map(move |q| (q, n))).collect();
    cells
        .into_par_iter()
        .map(|(q, n)| HomologyRow { q, n, group: cx.homology(q, n) })
        .collect()
}

fn homology_csv(rows: &[HomologyRow]) -> String {
    let mut out = String::from("n,q,free_rank,torsion,group\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            r.q,
            r.group.free_rank,
            torsion_list(&r.group),
            r.group
        ));
    }
    out
}

pub fn homology(
    g: &Graph,
    q: usize,
    n: usize,
    all: bool,
    mode: Option<Mode>,
    cfg: &RunConfig,
) -> Result<Outcome, CliError> {
    let mode = resolve_mode(g, mode);
    let cx = SwComplex::new(Arc::new(g.clone()), mode)?;
    if all {
        let rows = homology_grid(&cx, cfg.q_max, cfg.n_max);
        let body = match cfg.format_or(Format::Csv) {
            Format::Csv => homology_csv(&rows),
            Format::Json => json(&rows),
        };
        let summary = format!("{} groups, q <= {}, n <= {}, {mode} complex", rows.len(), cfg.q_max, cfg.n_max);
        return Ok(Outcome::ok(body, summary));
    }
    let group = cx.homology(q, n);
    let body = match cfg.format {
        None => format!("H_{q} = {}\n", group),
        Some(Format::Csv) => homology_csv(&[HomologyRow { q, n, group: group.clone() }]),
        Some(Format::Json) => json(&HomologyRow { q, n, group: group.clone() }),
    };
    Ok(Outcome::ok(body, format!("H_{q}(UF_{n}) computed from the {mode} complex")))
}

pub fn betti(g: &Graph, q: usize, mode: Option<Mode>, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mode = resolve_mode(g, mode);
    let truncation = cfg.truncation();
    let table = with_field!(cfg.field, |f| {
        let m = truncated_module(f, g, q, truncation, mode)?;
        betti_table(&m, cfg.p_max, cfg.j_max)?
    });
    let body = match cfg.format_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Json => json(&table),
    };
    let summary = format!(
        "Betti table of H_{q} over {}, p <= {}, j <= {}, truncation {truncation}",
        cfg.field, cfg.p_max, cfg.j_max
    );
    Ok(Outcome::ok(body, summary))
}

pub fn family_scan(
    family: &gbh_core::family::FIGraphFamily,
    q: usize,
    p: usize,
    max_degree: usize,
    cfg: &RunConfig,
) -> Result<(Outcome, String), CliError> {
    let window = cfg.window.unwrap_or(Window {
        start: family.n_min() + 2,
        end: family.n_min() + 7,
    });
    let need = (max_degree + 3).max(3);
    if window.len() < need {
        return Err(CliError::config(format!(
            "WindowTooSmall: window {}..{} has {} points, need at least {need}",
            window.start,
            window.end,
            window.len()
        )));
    }
    let tables = betti_tables(family, q, p, cfg.j_max, window.range(), cfg.field)?;
    let mut rows = Vec::new();
    for (n, t) in &tables {
        for e in t.entries.iter().filter(|e| e.p == p) {
            rows.push(ScanRow { n: *n, q, p, j: e.j, beta: e.beta });
        }
    }
    let support = support_report(&tables, q, p);
    let mut degrees = Vec::new();
    for j in support.supports.iter().flatten().flat_map(|s| s.support.iter().copied()).collect::<BTreeSet<_>>() {
        let seq: Vec<i64> = tables.iter().map(|(_, t)| t.get(p, j) as i64).collect();
        let mut report = detect_polynomial(&seq, window.start, max_degree)?;
        report.target = Some(ScanTarget { q, p, j: Some(j) });
        degrees.push(report);
    }
    let output = ScanOutput { rows, support, degrees };
    let summary = summarize_scan(&output);
    let report_json = json(&output);
    let body = match cfg.format_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from("n,q,p,j,beta\n");
            for r in &output.rows {
                out.push_str(&format!("{},{},{},{},{}\n", r.n, r.q, r.p, r.j, r.beta));
            }
            out
        }
        Format::Json => report_json.clone(),
    };
    Ok((Outcome::ok(body, summary), report_json))
}

fn summarize_scan(output: &ScanOutput) -> String {
    let mut parts = vec![format!("support {:?}", output.support.status)];
    for r in &output.degrees {
        let j = r.target.as_ref().and_then(|t| t.j).unwrap_or(0);
        match &r.polynomial_text {
            Some(p) => parts.push(format!("j={j}: {p} from n={}", r.stable_from.unwrap_or(0))),
            None => parts.push(format!("j={j}: no fit")),
        }
    }
    parts.join("; ")
}

fn comparison_body(rows: &[ComparisonRow], format: Format, left: &str, right: &str) -> String {
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut out = format!("n,q,{left},{right},equal\n");
            for r in rows {
                out.push_str(&format!("{},{},{},{},{}\n", r.n, r.q, r.left, r.right, r.equal));
            }
            out
        }
    }
}

fn finish_comparison(rows: Vec<ComparisonRow>, cfg: &RunConfig, left: &str, right: &str, what: &str) -> Outcome {
    let bad = rows.iter().filter(|r| !r.equal).count();
    let summary = if bad == 0 {
        format!("{what}: pass ({} bigrades)", rows.len())
    } else {
        format!("{what}: {bad} of {} bigrades differ", rows.len())
    };
    Outcome {
        body: comparison_body(&rows, cfg.format_or(Format::Csv), left, right),
        passed: bad == 0,
        summary,
    }
}

pub fn quasi_iso_check(g: &Graph, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let graph = Arc::new(g.clone());
    let full = SwComplex::new(graph.clone(), Mode::Full)?;
    let reduced = SwComplex::new(graph, Mode::Reduced)?;
    let full_rows = homology_grid(&full, cfg.q_max, cfg.n_max);
    let reduced_rows = homology_grid(&reduced, cfg.q_max, cfg.n_max);
    let rows = full_rows
        .into_iter()
        .zip(reduced_rows)
        .map(|(a, b)| ComparisonRow { q: a.q, n: a.n, equal: a.group == b.group, left: a.group, right: b.group })
        .collect();
    Ok(finish_comparison(rows, cfg, "full", "reduced", "quasi-iso-check"))
}

pub fn oracle_check(g: &Graph, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mode = resolve_mode(g, None);
    let cx = SwComplex::new(Arc::new(g.clone()), mode)?;
    let ours = homology_grid(&cx, cfg.q_max, cfg.n_max);
    let theirs: Vec<AbelianGroup> = ours
        .par_iter()
        .map(|r| oracle_homology_with(g, r.n, r.q, r.n + 1, cfg.budget))
        .collect::<Result<_, _>>()?;
    let rows = ours
        .into_iter()
        .zip(theirs)
        .map(|(a, b)| ComparisonRow { q: a.q, n: a.n, equal: a.group == b, left: a.group, right: b })
        .collect();
    Ok(finish_comparison(rows, cfg, "algebraic", "cubical", "oracle-check"))
}

pub fn blowup_verify(g: &Graph, vertex: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let report = verify_les(g, vertex, cfg.q_max, cfg.n_max, cfg.field)?;
    let body = match cfg.format_or(Format::Json) {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out = String::from("n,q,h_blowup,h_graph,h_quotient,inclusion_rank,projection_rank,connecting_rank,consistent\n");
            for s in &report.segments {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    s.n, s.q, s.homology[0], s.homology[1], s.homology[2], s.inclusion_rank, s.projection_rank, s.connecting_rank, s.consistent
                ));
            }
            out
        }
    };
    let failed_ses = report.ses.iter().filter(|c| !c.exact).count();
    let summary = if report.passed {
        format!("blowup-verify at `{vertex}`: pass ({} short exact sequences)", report.ses.len())
    } else {
        format!("blowup-verify at `{vertex}`: {failed_ses} inexact bigrades")
    };
    Ok(Outcome { body, passed: report.passed, summary })
}

pub fn matrix_dump(g: &Graph, label: &str, q: usize, n: usize, mode: Option<Mode>) -> Result<Outcome, CliError> {
    let mode = resolve_mode(g, mode);
    let cx = SwComplex::new(Arc::new(g.clone()), mode)?;
    let body = cx.dump_boundary(label, q, n);
    let summary = format!("boundary ({q},{n}) of the {mode} complex: {} x {}", cx.dim(q.saturating_sub(1), n), cx.dim(q, n));
    Ok(Outcome::ok(body, summary))
}

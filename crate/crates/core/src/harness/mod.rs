//! Experiment driver behind the command-line tool: load or generate a
//! graph, run the configured optimizers on each target, and write results.
//!
//! Result files (`report.json`, `trace_*.csv`, `series.csv`) depend only on
//! the configuration and seed. Wall-clock data goes to `timing.json` and
//! `perf_table.csv`.

mod config;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use log::{info, warn};
use serde::{Deserialize, Serialize};

pub use config::{Algorithm, Format, GeneratorSpec, GraphSource, RunConfig, Targets};

use crate::centrality::centrality_from_resistance;
use crate::error::{Error, Result};
use crate::graph::{largest_connected_component, load_edge_list, write_edge_list, Graph, IdMap};
use crate::greedy::{
    approxi_sm_with, baseline_select, brute_force_optimum, default_candidates, exact_sm,
    ApproxOptions, CandidateEdge, GreedyTrace,
};
use crate::linalg::ToleranceMode;
use crate::rng::{self, tag};

/// Process exit status for an error: 1 for invalid configuration or
/// parameters, 2 for unusable input data, 3 for numerical failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_)
        | Error::InvalidEdge { .. }
        | Error::NotIncident { .. }
        | Error::NodeOutOfRange { .. }
        | Error::CombinatorialGuard { .. } => 1,
        Error::Io { .. }
        | Error::Parse { .. }
        | Error::SelfLoop { .. }
        | Error::NonPositiveWeight { .. }
        | Error::EmptyGraph
        | Error::Disconnected
        | Error::SingleNode
        | Error::DenseTooLarge { .. }
        | Error::GeneratorFailed { .. } => 2,
        Error::SolverNotConverged { .. } | Error::FactorizationFailed(_) => 3,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub input_nodes: usize,
    pub lcc_shrank: bool,
}

/// Best `R_v` over all `k`-subsets, for one `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OraclePoint {
    pub k: usize,
    pub others: Vec<u64>,
    pub r: f64,
    pub i: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleTrace {
    pub initial_r: f64,
    pub initial_i: f64,
    pub points: Vec<OraclePoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetReport {
    pub label: u64,
    pub id: usize,
    pub candidates: usize,
    pub traces: Vec<GreedyTrace>,
    pub oracle: Option<OracleTrace>,
}

impl TargetReport {
    /// `I_v` after `k` edges for algorithm `name` (`k = 0` is the start).
    pub fn centrality_at(&self, name: &str, k: usize) -> Option<f64> {
        if name == "oracle" {
            let o = self.oracle.as_ref()?;
            return if k == 0 {
                Some(o.initial_i)
            } else {
                o.points.get(k - 1).map(|p| p.i)
            };
        }
        let t = self.traces.iter().find(|t| t.algorithm == name)?;
        if k == 0 {
            Some(t.initial_i)
        } else {
            t.steps.get(k - 1).map(|s| s.i_after)
        }
    }
}

/// Mean `I_v` over targets after `k` edges, per algorithm, and the ratio
/// of each algorithm's mean to the oracle's when one was run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub k: usize,
    pub mean_centrality: BTreeMap<String, f64>,
    pub oracle_ratio: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub graph: GraphInfo,
    pub deviations: Vec<String>,
    pub targets: Vec<TargetReport>,
    pub series: Vec<SeriesPoint>,
    /// Internal id to input label; trace edges in the JSON use internal ids.
    #[serde(skip)]
    pub ids: IdMap,
}

impl RunReport {
    pub fn algorithm_names(&self) -> Vec<&'static str> {
        self.config.algorithms.iter().map(|a| a.name()).collect()
    }

    /// Mean over targets of `I_v` after `k` edges, summed in target order.
    pub fn mean_centrality(&self, name: &str, k: usize) -> Option<f64> {
        let vals: Option<Vec<f64>> = self.targets.iter().map(|t| t.centrality_at(name, k)).collect();
        let vals = vals?;
        Some(vals.iter().sum::<f64>() / vals.len() as f64)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    /// Per algorithm, per target (in report order): total selection seconds.
    pub total_seconds: BTreeMap<String, Vec<f64>>,
    pub step_seconds: BTreeMap<String, Vec<Vec<f64>>>,
    pub mean_seconds: BTreeMap<String, f64>,
}

/// A prepared input: the working graph (largest component) and labels.
pub struct Prepared {
    pub graph: Graph,
    pub ids: IdMap,
    pub info: GraphInfo,
}

pub fn prepare(cfg: &RunConfig) -> Result<Prepared> {
    let (graph, ids) = match cfg.source.as_ref() {
        Some(GraphSource::File(p)) => {
            let loaded = load_edge_list(p, cfg.weighted)?;
            (loaded.graph, loaded.ids)
        }
        Some(GraphSource::Generate(spec)) => {
            let g = spec.build(cfg.seed)?;
            let n = g.node_count();
            (g, IdMap::identity(n))
        }
        None => return Err(Error::InvalidParameter("no graph given".into())),
    };
    let input_nodes = graph.node_count();
    let lcc = largest_connected_component(&graph)?;
    let shrank = lcc.shrank(&graph);
    if shrank {
        warn!(
            "input has {} nodes; continuing on its largest connected component ({} nodes)",
            input_nodes,
            lcc.graph.node_count()
        );
    }
    let ids = ids.compose(&lcc.original);
    let info = GraphInfo {
        name: cfg.network_name(),
        n: lcc.graph.node_count(),
        m: lcc.graph.edge_count(),
        input_nodes,
        lcc_shrank: shrank,
    };
    Ok(Prepared {
        graph: lcc.graph,
        ids,
        info,
    })
}

/// Target node ids: explicit labels mapped into the working graph, or a
/// seeded sample without replacement, returned in ascending order.
pub fn select_targets(cfg: &RunConfig, p: &Prepared) -> Result<Vec<usize>> {
    match &cfg.targets {
        Targets::Labels(labels) => labels
            .iter()
            .map(|&l| {
                p.ids.id_of(l).ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "target {l} is not in the graph's largest connected component"
                    ))
                })
            })
            .collect(),
        Targets::Random(count) => {
            let n = p.graph.node_count();
            if *count > n {
                return Err(Error::InvalidParameter(format!(
                    "{count} random targets requested from a graph with {n} nodes"
                )));
            }
            let mut r = rng::stream(cfg.seed, &[tag::TARGETS]);
            let mut ids = rand::seq::index::sample(&mut r, n, *count).into_vec();
            ids.sort_unstable();
            Ok(ids)
        }
    }
}

fn deviations(cfg: &RunConfig) -> Vec<String> {
    let mut d = Vec::new();
    if cfg.algorithms.contains(&Algorithm::Approx) {
        if cfg.solver.mode == ToleranceMode::Practical {
            d.push(format!(
                "solver-mode=practical: solve tolerance min(eps/10, {:e}) instead of the published bounds",
                cfg.solver.residual_target
            ));
        }
        if let Some(cap) = cfg.m_cap {
            d.push(format!("m-cap={cap}: accuracy guarantee voided where the cap binds"));
        }
    }
    d
}

fn run_oracle(g: &Graph, v: usize, c: &[CandidateEdge], k: usize, ids: &IdMap) -> Result<OracleTrace> {
    let n = g.node_count();
    let base = brute_force_optimum(g, v, c, 0)?;
    let mut points = Vec::with_capacity(k);
    for j in 1..=k {
        let o = brute_force_optimum(g, v, c, j)?;
        points.push(OraclePoint {
            k: j,
            others: o.edges.iter().map(|e| ids.label(e.other)).collect(),
            r: o.r,
            i: centrality_from_resistance(n, o.r)?,
        });
    }
    Ok(OracleTrace {
        initial_r: base.r,
        initial_i: centrality_from_resistance(n, base.r)?,
        points,
    })
}

/// Run every configured algorithm on every target.
pub fn run(cfg: &RunConfig) -> Result<(RunReport, Timing)> {
    cfg.validate()?;
    let prepared = prepare(cfg)?;
    let g = &prepared.graph;
    let targets = select_targets(cfg, &prepared)?;
    let options = ApproxOptions {
        m_cap: cfg.m_cap,
        ..ApproxOptions::default()
    };

    let mut reports = Vec::with_capacity(targets.len());
    let mut timing = Timing::default();
    for &v in &targets {
        let label = prepared.ids.label(v);
        let cands = default_candidates(g, v, cfg.weight)?;
        if cfg.k > cands.len() {
            return Err(Error::InvalidParameter(format!(
                "k = {} exceeds the {} candidate edges of target {label}",
                cfg.k,
                cands.len()
            )));
        }
        let target_seed = rng::derive_seed(cfg.seed, &[label]);
        let mut traces = Vec::new();
        let mut oracle = None;
        for algo in &cfg.algorithms {
            info!("target {label}: running {}", algo.name());
            let trace = match *algo {
                Algorithm::Exact => exact_sm(g, v, &cands, cfg.k)?,
                Algorithm::Approx => {
                    let spec = cfg.solver.with_seed(target_seed);
                    approxi_sm_with(g, v, &cands, cfg.k, cfg.epsilon, &options, &spec)?
                }
                Algorithm::Baseline(s) => baseline_select(g, v, &cands, cfg.k, s, target_seed)?,
                Algorithm::Oracle => {
                    oracle = Some(run_oracle(g, v, &cands, cfg.k, &prepared.ids)?);
                    continue;
                }
            };
            let name = algo.name().to_string();
            timing.total_seconds.entry(name.clone()).or_default().push(trace.total_seconds);
            timing.step_seconds.entry(name).or_default().push(trace.step_seconds.clone());
            traces.push(trace);
        }
        reports.push(TargetReport {
            label,
            id: v,
            candidates: cands.len(),
            traces,
            oracle,
        });
    }
    for (name, t) in &timing.total_seconds {
        timing.mean_seconds.insert(name.clone(), t.iter().sum::<f64>() / t.len() as f64);
    }

    let mut deviations = deviations(cfg);
    for flag in reports.iter().flat_map(|r| r.traces.iter().flat_map(|t| &t.flags)) {
        if !deviations.contains(flag) {
            deviations.push(flag.clone());
        }
    }
    let mut report = RunReport {
        config: cfg.clone(),
        graph: prepared.info,
        deviations,
        targets: reports,
        series: Vec::new(),
        ids: prepared.ids,
    };
    report.series = series(&report);
    Ok((report, timing))
}

fn series(report: &RunReport) -> Vec<SeriesPoint> {
    let names = report.algorithm_names();
    let has_oracle = names.contains(&"oracle");
    (0..=report.config.k)
        .map(|k| {
            let mut mean_centrality = BTreeMap::new();
            let mut oracle_ratio = BTreeMap::new();
            for name in &names {
                if let Some(m) = report.mean_centrality(name, k) {
                    mean_centrality.insert(name.to_string(), m);
                }
            }
            if has_oracle {
                let opt = mean_centrality["oracle"];
                for name in names.iter().filter(|n| **n != "oracle") {
                    oracle_ratio.insert(name.to_string(), mean_centrality[*name] / opt);
                }
            }
            SeriesPoint {
                k,
                mean_centrality,
                oracle_ratio,
            }
        })
        .collect()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// `step,edge_u,edge_v,R_v,I_v` for one trace; step 0 is the start.
pub fn trace_csv(trace: &GreedyTrace, ids: &IdMap) -> String {
    let mut s = String::from("step,edge_u,edge_v,R_v,I_v\n");
    let _ = writeln!(s, "0,,,{},{}", trace.initial_r, trace.initial_i);
    for (i, st) in trace.steps.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            i + 1,
            ids.label(st.edge.target),
            ids.label(st.edge.other),
            st.r_after,
            st.i_after
        );
    }
    s
}

/// Oracle rows: step `k` lists the whole optimal `k`-set in `edge_v`,
/// separated by `;`.
pub fn oracle_csv(label: u64, o: &OracleTrace) -> String {
    let mut s = String::from("step,edge_u,edge_v,R_v,I_v\n");
    let _ = writeln!(s, "0,,,{},{}", o.initial_r, o.initial_i);
    for p in &o.points {
        let others: Vec<String> = p.others.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "{},{},{},{},{}", p.k, label, others.join(";"), p.r, p.i);
    }
    s
}

pub fn series_csv(report: &RunReport) -> String {
    let names = report.algorithm_names();
    let has_oracle = names.contains(&"oracle");
    let mut s = String::from("k");
    for n in &names {
        let _ = write!(s, ",{n}");
    }
    if has_oracle {
        for n in names.iter().filter(|n| **n != "oracle") {
            let _ = write!(s, ",{n}_oracle_ratio");
        }
    }
    s.push('\n');
    for p in &report.series {
        let _ = write!(s, "{}", p.k);
        for n in &names {
            let _ = write!(s, ",{}", p.mean_centrality[*n]);
        }
        if has_oracle {
            for n in names.iter().filter(|n| **n != "oracle") {
                let _ = write!(s, ",{}", p.oracle_ratio[*n]);
            }
        }
        s.push('\n');
    }
    s
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Write the report files into `cfg.out`; returns the paths written.
pub fn write_outputs(report: &RunReport, timing: &Timing) -> Result<Vec<PathBuf>> {
    let dir = &report.config.out;
    create_dir(dir)?;
    let mut written = Vec::new();
    let mut put = |name: String, contents: String| -> Result<()> {
        let path = dir.join(name);
        write_file(&path, &contents)?;
        written.push(path);
        Ok(())
    };
    let formats = &report.config.formats;
    if formats.contains(&Format::Json) {
        put("report.json".into(), to_json(report))?;
    }
    if formats.contains(&Format::Csv) {
        let ids = &report.ids;
        for t in &report.targets {
            for trace in &t.traces {
                put(format!("trace_t{}_{}.csv", t.label, trace.algorithm), trace_csv(trace, ids))?;
            }
            if let Some(o) = &t.oracle {
                put(format!("trace_t{}_oracle.csv", t.label), oracle_csv(t.label, o))?;
            }
        }
        put("series.csv".into(), series_csv(report))?;
    }
    put("timing.json".into(), to_json(timing))?;
    Ok(written)
}

pub fn cmd_optimize(cfg: &RunConfig) -> Result<RunReport> {
    let (report, timing) = run(cfg)?;
    write_outputs(&report, &timing)?;
    Ok(report)
}

/// One row of the approximate-versus-exact comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerfRow {
    pub network: String,
    pub n: usize,
    pub m: usize,
    pub asm_time_s: f64,
    pub esm_time_s: f64,
    pub time_ratio: f64,
    pub asm_centrality: f64,
    pub esm_centrality: f64,
    pub centrality_ratio: f64,
}

pub const PERF_HEADER: &str =
    "network,n,m,asm_time_s,esm_time_s,time_ratio,asm_centrality,esm_centrality,centrality_ratio";

impl PerfRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.network,
            self.n,
            self.m,
            self.asm_time_s,
            self.esm_time_s,
            self.time_ratio,
            self.asm_centrality,
            self.esm_centrality,
            self.centrality_ratio
        )
    }
}

pub fn perf_row(report: &RunReport, timing: &Timing) -> Result<PerfRow> {
    let k = report.config.k;
    let missing = || Error::InvalidParameter("comparison needs both exact and approx runs".into());
    let asm_c = report.mean_centrality("approx", k).ok_or_else(missing)?;
    let esm_c = report.mean_centrality("exact", k).ok_or_else(missing)?;
    let asm_t = *timing.mean_seconds.get("approx").ok_or_else(missing)?;
    let esm_t = *timing.mean_seconds.get("exact").ok_or_else(missing)?;
    Ok(PerfRow {
        network: report.graph.name.clone(),
        n: report.graph.n,
        m: report.graph.m,
        asm_time_s: asm_t,
        esm_time_s: esm_t,
        time_ratio: asm_t / esm_t,
        asm_centrality: asm_c,
        esm_centrality: esm_c,
        centrality_ratio: asm_c / esm_c,
    })
}

/// Run exact and approximate greedy and write `perf_table.csv` next to the
/// usual outputs.
pub fn cmd_compare_perf(cfg: &RunConfig) -> Result<PerfRow> {
    let has = |a: Algorithm| cfg.algorithms.contains(&a);
    if !(has(Algorithm::Exact) && has(Algorithm::Approx)) {
        return Err(Error::InvalidParameter(
            "compare-perf needs both `exact` and `approx` in the algorithm list".into(),
        ));
    }
    let (report, timing) = run(cfg)?;
    write_outputs(&report, &timing)?;
    let row = perf_row(&report, &timing)?;
    let path = cfg.out.join("perf_table.csv");
    write_file(&path, &format!("{PERF_HEADER}\n{}\n", row.csv_line()))?;
    Ok(row)
}

pub fn cmd_gen(spec: &GeneratorSpec, seed: u64, out: &Path) -> Result<Graph> {
    let g = spec.build(seed)?;
    write_edge_list(&g, out)?;
    Ok(g)
}

//! The three subcommands as functions from a resolved spec to output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use egse_core::analytics::{to_f64, Moments, SearchSpace};
use egse_core::feedback::{CatalogParams, EvolutionParams, EvolutionTrace, RivSnapshot};
use egse_core::{Algorithm, ConvergenceTrace, Label, TrialBatch};
use serde_json::{json, Map, Value};

use crate::format::{json_num, sig6};
use crate::runner;
use crate::spec::{ExperimentSpec, OutputFormat};

pub const TRACE_HEADER: &str = "trial,discovery_time,running_mean,analytic_mean,rel_error";
pub const EVOLUTION_HEADER: &str = "query,precision,clicks,discovered";

fn moments_json(m: &Moments) -> Value {
    json!({
        "mean": json_num(to_f64(&m.mean)),
        "variance": json_num(to_f64(&m.variance)),
        "second_moment": json_num(to_f64(&m.second_moment)),
    })
}

/// Analytic summary of the discovery-time law for the spec's algorithm.
pub fn analytic_report(spec: &ExperimentSpec) -> egse_core::Result<Value> {
    let space = SearchSpace::from_config(&spec.config);
    let dist = space.distribution(spec.algorithm)?;
    let exact = dist.moments()?;
    let mut report = Map::new();
    report.insert("algorithm".into(), json!(spec.algorithm.name()));
    report.insert("n".into(), json!(space.n()));
    report.insert("m".into(), json!(space.m()));
    report.insert("epsilon".into(), json!(spec.config.epsilon()));
    report.insert("r".into(), json!(space.r()));
    report.insert("k".into(), json!(space.k()));
    report.insert("alpha".into(), json_num(to_f64(&dist.alpha)));
    report.insert("alpha_exact".into(), json!(dist.alpha.to_string()));
    report.insert("mean".into(), json_num(to_f64(&exact.mean)));
    report.insert("mean_exact".into(), json!(exact.mean.to_string()));
    report.insert("variance".into(), json_num(to_f64(&exact.variance)));
    report.insert("second_moment".into(), json_num(to_f64(&exact.second_moment)));
    report.insert("support_max".into(), json!(dist.support_max));
    let finite = space.prob_finite_discovery(spec.algorithm)?;
    report.insert("prob_finite_discovery".into(), json_num(to_f64(&finite)));
    if let Some(t) = spec.within {
        report.insert("within_t".into(), json!({ "t": t, "probability": json_num(dist.within(t)) }));
    }
    let mut flags = Map::new();
    flags.insert("closed_form_exact".into(), json!(dist.closed_form_exact()));
    match spec.algorithm {
        Algorithm::A => {
            // mean_u / var_u already cross-check their binomial forms
            flags.insert("binomial_forms_checked".into(), json!(space.pool() <= egse_core::analytics::BINOMIAL_CHECK_LIMIT));
        }
        Algorithm::B => {
            let closed = space.closed_form_moments_v()?;
            flags.insert("c".into(), json_num(to_f64(&dist.c)));
            flags.insert("recurrence_verified".into(), json!(space.verify_recurrence(space.support_max()).is_ok()));
            flags.insert("closed_form_matches_exact".into(), json!(closed == exact));
            report.insert("closed_form".into(), moments_json(&closed));
        }
    }
    report.insert("exact_vs_closed_form".into(), Value::Object(flags));
    Ok(Value::Object(report))
}

pub fn cmd_analytic(spec: &ExperimentSpec, out: &mut dyn Write) -> anyhow::Result<()> {
    let report = analytic_report(spec)?;
    match spec.format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        OutputFormat::Csv => {
            writeln!(out, "key,value")?;
            write_flat(out, "", &report)?;
        }
    }
    Ok(())
}

fn write_flat(out: &mut dyn Write, prefix: &str, v: &Value) -> io::Result<()> {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                write_flat(out, &key, v)?;
            }
            Ok(())
        }
        Value::String(s) => writeln!(out, "{prefix},{s}"),
        Value::Null => writeln!(out, "{prefix},"),
        other => writeln!(out, "{prefix},{other}"),
    }
}

pub fn trial_batch(spec: &ExperimentSpec) -> egse_core::Result<TrialBatch> {
    let batch = TrialBatch::new(spec.algorithm, spec.config, spec.trials, spec.seed)?;
    Ok(match spec.max_steps {
        Some(t) => batch.with_max_steps(t),
        None => batch,
    })
}

pub fn simulate(spec: &ExperimentSpec) -> egse_core::Result<(TrialBatch, ConvergenceTrace)> {
    let batch = trial_batch(spec)?;
    let trace = runner::run_batch(&batch)?;
    Ok((batch, trace))
}

pub fn trace_summary(batch: &TrialBatch, trace: &ConvergenceTrace) -> Value {
    let mut s = Map::new();
    s.insert("algorithm".into(), json!(batch.algorithm.name()));
    s.insert("trials".into(), json!(trace.trials()));
    s.insert("base_seed".into(), json!(batch.base_seed));
    s.insert("final_mean".into(), json_num(trace.final_mean()));
    s.insert("analytic_mean".into(), json_num(trace.analytic_mean));
    s.insert("rel_error".into(), json_num(trace.rel_error()));
    s.insert("standard_error".into(), json_num(trace.standard_error()));
    if let (Some(t), Some(p)) = (trace.max_steps, trace.within_cap) {
        s.insert("max_steps".into(), json!(t));
        s.insert("within_cap".into(), json_num(p));
        s.insert("analytic_within".into(), batch.analytic_within().map_or(Value::Null, json_num));
    }
    Value::Object(s)
}

pub fn write_trace_csv(trace: &ConvergenceTrace, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    let analytic = sig6(trace.analytic_mean);
    for (i, (&k, &mean)) in trace.discovery_times.iter().zip(&trace.running_mean).enumerate() {
        let rel = egse_core::simulation::relative_error(mean, trace.analytic_mean);
        writeln!(out, "{},{},{},{},{}", i + 1, k, sig6(mean), analytic, sig6(rel))?;
    }
    Ok(())
}

pub fn cmd_simulate(spec: &ExperimentSpec, out: &mut dyn Write) -> anyhow::Result<ConvergenceTrace> {
    let (batch, trace) = simulate(spec)?;
    match spec.format {
        OutputFormat::Csv => {
            write_trace_csv(&trace, out)?;
            if spec.summary {
                writeln!(out, "{}", trace_summary(&batch, &trace))?;
            }
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = trace
                .discovery_times
                .iter()
                .zip(&trace.running_mean)
                .enumerate()
                .map(|(i, (&k, &mean))| {
                    json!({
                        "trial": i + 1,
                        "discovery_time": k,
                        "running_mean": json_num(mean),
                        "rel_error": json_num(egse_core::simulation::relative_error(mean, trace.analytic_mean)),
                    })
                })
                .collect();
            let doc = json!({ "summary": trace_summary(&batch, &trace), "trials": rows });
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
    }
    Ok(trace)
}

pub fn evolution_params(spec: &ExperimentSpec) -> EvolutionParams {
    let mut params = EvolutionParams::new(spec.algorithm, spec.config, spec.seed);
    params.catalog = CatalogParams::default();
    params.model = spec.model;
    params.worst_case = spec.worst_case;
    params.max_queries = spec.max_queries;
    params.policy = spec.exclusion;
    params
}

pub fn write_evolution_csv(trace: &EvolutionTrace, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{EVOLUTION_HEADER}")?;
    for r in &trace.records {
        writeln!(out, "{},{},{},{}", r.query, sig6(r.precision), r.clicked.len(), u8::from(r.discovered))?;
    }
    Ok(())
}

pub const HISTOGRAM_HEADER: &str = "label,count,mean,p10,p20,p30,p40,p50,p60,p70,p80,p90";

/// Per-label summary of the RIVs under the query label: count, mean and
/// deciles.
pub fn write_histogram_csv(snapshot: &RivSnapshot, labels: &[String], out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{HISTOGRAM_HEADER}")?;
    for (i, name) in labels.iter().enumerate() {
        let label = Label(i as u16);
        let deciles: Vec<String> = snapshot.deciles(label).iter().map(|&d| sig6(d)).collect();
        writeln!(
            out,
            "{},{},{},{}",
            name,
            snapshot.by_label[i].len(),
            sig6(snapshot.mean(label)),
            deciles.join(",")
        )?;
    }
    Ok(())
}

fn snapshot_json(snapshot: &RivSnapshot, labels: &[String]) -> Value {
    let mut map = Map::new();
    for (i, name) in labels.iter().enumerate() {
        let label = Label(i as u16);
        let deciles: Vec<Value> = snapshot.deciles(label).iter().map(|&d| json_num(d)).collect();
        map.insert(name.clone(), json!({ "mean": json_num(snapshot.mean(label)), "deciles": deciles }));
    }
    Value::Object(map)
}

/// Sibling paths `<stem>_riv_initial.csv` and `<stem>_riv_discovery.csv`.
pub fn histogram_paths(out: &Path) -> (PathBuf, PathBuf) {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("evolve");
    let dir = out.parent().unwrap_or_else(|| Path::new(""));
    (dir.join(format!("{stem}_riv_initial.csv")), dir.join(format!("{stem}_riv_discovery.csv")))
}

pub fn cmd_evolve(spec: &ExperimentSpec, out: &mut dyn Write) -> anyhow::Result<EvolutionTrace> {
    let trace = egse_core::feedback::run_evolution(&evolution_params(spec))?;
    match spec.format {
        OutputFormat::Csv => write_evolution_csv(&trace, out)?,
        OutputFormat::Json => {
            let records: Vec<Value> = trace
                .records
                .iter()
                .map(|r| {
                    json!({
                        "query": r.query,
                        "precision": json_num(r.precision),
                        "clicks": r.clicked.len(),
                        "discovered": r.discovered,
                    })
                })
                .collect();
            let doc = json!({
                "algorithm": trace.algorithm.name(),
                "hidden_object": trace.hidden.0,
                "discovery_query": trace.discovery_query,
                "records": records,
                "riv_initial": snapshot_json(&trace.initial, &trace.label_names),
                "riv_at_discovery": snapshot_json(&trace.at_discovery, &trace.label_names),
            });
            writeln!(out, "{}", serde_json::to_string(&doc)?)?;
        }
    }
    if let Some(path) = &spec.out {
        let (initial, discovery) = histogram_paths(path);
        for (p, snap) in [(&initial, &trace.initial), (&discovery, &trace.at_discovery)] {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            write_histogram_csv(snap, &trace.label_names, &mut w)?;
            w.flush()?;
        }
    }
    Ok(trace)
}

/// One-line human summary of an evolution run.
pub fn evolution_summary(trace: &EvolutionTrace) -> String {
    match trace.discovery_query {
        Some(q) => format!(
            "{}: hidden object {} discovered at query {q}",
            trace.algorithm.name(),
            trace.hidden
        ),
        None => format!(
            "{}: hidden object {} not discovered in {} queries",
            trace.algorithm.name(),
            trace.hidden,
            trace.records.len()
        ),
    }
}


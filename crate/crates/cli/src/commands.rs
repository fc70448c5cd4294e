use std::fs::File;
use std::io::{self, BufReader, Write};

use clique_intersect::bounds::{
    def_report, def_turan_report, divisibility_chain, ekr_report, erdos_check, fact_inequality,
    fisher_ryan_check, furedi_removal_bound, two_set_chain_bound, two_set_report, BoundReport,
    Precondition, Verdict,
};
use clique_intersect::catalog::{read_catalog, Catalog, CatalogOptions};
use clique_intersect::cliques::{count_kr, enumerate_kr};
use clique_intersect::constructions::{rs_graph, s_graph, single_l_graph, turan_graph};
use clique_intersect::delta::{decompose, degree_sum_audit, verify_claims, CoreDiscovery, DecomposeOptions};
use clique_intersect::graph6::write_graph6;
use clique_intersect::rational::{parse_rational, to_pq, Rational};
use clique_intersect::search::{
    phi_exact, psi_exact, psi_heuristic, psi_le_phi_report, HeuristicOptions,
};
use clique_intersect::setsystem::{is_l_intersecting, IntersectionSpec};
use clique_intersect::stability::{
    check_ekr_stability, check_furedi, check_furedi_extension, extract_graph_core, min_edits_to_partite,
    partite_heuristic, EditCheck,
};
use clique_intersect::suite::run_suite;
use clique_intersect::{Error, Graph};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Budget(_)) => 3,
            CliError::Lib(Error::Hypothesis(_) | Error::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Whether every check in the run passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Passed
        } else {
            Status::Failed
        }
    }
}

fn need<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("missing required option --{flag}")))
}

fn spec_from(r: usize, args: &SpecArgs) -> CliResult<IntersectionSpec> {
    match (&args.set, args.t) {
        (Some(text), None) => {
            let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
            Ok(IntersectionSpec::parse(r, inner)?)
        }
        (None, Some(t)) => Ok(IntersectionSpec::t_intersecting(r, t)?),
        _ => Err(CliError::Usage("give exactly one of --L or --t".into())),
    }
}

fn rational_arg(text: Option<&String>, flag: &str) -> CliResult<Rational> {
    Ok(parse_rational(need(text, flag)?)?)
}

fn measured_arg(text: Option<&String>) -> CliResult<Option<BigInt>> {
    match text {
        None => Ok(None),
        Some(t) => {
            let q = parse_rational(t)?;
            if !q.is_integer() {
                return Err(CliError::Usage(format!("--measured must be an integer, got {t}")));
            }
            Ok(Some(q.to_integer()))
        }
    }
}

struct Out {
    lock: io::StdoutLock<'static>,
}

impl Out {
    fn new() -> Self {
        Out {
            lock: io::stdout().lock(),
        }
    }

    fn line(&mut self, text: &str) -> CliResult<()> {
        writeln!(self.lock, "{text}").map_err(CliError::from)
    }

    fn json(&mut self, value: &Value) -> CliResult<()> {
        self.line(&value.to_string())
    }
}

fn warn(value: Value) {
    eprintln!("{}", json!({ "warning": value }));
}

fn load(input: &InputArgs) -> CliResult<Catalog> {
    let options = CatalogOptions {
        skip_bad: input.skip_bad,
        allow_mixed: input.allow_mixed,
    };
    let catalog = match input.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            let f = File::open(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            read_catalog(BufReader::new(f), options)?
        }
        _ => read_catalog(io::stdin().lock(), options)?,
    };
    for w in &catalog.warnings {
        warn(json!({ "line": w.line, "message": w.message }));
    }
    Ok(catalog)
}

/// Applies `f` to every graph in parallel and prints the records in input
/// order. A record's boolean is false when its check failed. Stops at the
/// first error after printing the records before it.
fn per_graph<F>(input: &InputArgs, f: F) -> CliResult<Status>
where
    F: Fn(&Graph) -> CliResult<(Value, bool)> + Sync,
{
    let catalog = load(input)?;
    let results: Vec<CliResult<(Value, bool)>> = catalog
        .entries
        .par_iter()
        .map(|e| {
            f(&e.graph).map(|(mut v, ok)| {
                if let Value::Object(map) = &mut v {
                    map.insert("line".into(), json!(e.line));
                }
                (v, ok)
            })
        })
        .collect();
    let mut out = Out::new();
    let mut all = true;
    for res in results {
        let (v, ok) = res?;
        all &= ok;
        out.json(&v)?;
    }
    Ok(Status::from_bool(all))
}

pub fn count(args: &CountArgs) -> CliResult<Status> {
    let r = args.r;
    if args.format == RecordFormat::Table {
        let catalog = load(&args.input)?;
        let counts: Vec<CliResult<u64>> = catalog
            .entries
            .par_iter()
            .map(|e| Ok(count_kr(&e.graph, r)?))
            .collect();
        let mut out = Out::new();
        for c in counts {
            out.line(&c?.to_string())?;
        }
        return Ok(Status::Passed);
    }
    per_graph(&args.input, |g| {
        Ok((json!({ "n": g.n(), "r": r, "count": count_kr(g, r)? }), true))
    })
}

pub fn check(args: &CheckArgs) -> CliResult<Status> {
    let spec = spec_from(args.r, &args.spec)?;
    per_graph(&args.input, |g| {
        let cliques = enumerate_kr(g, spec.r())?;
        let res = is_l_intersecting(cliques.as_system(), &spec)?;
        let ok = res.holds();
        Ok((
            json!({
                "n": g.n(),
                "r": spec.r(),
                "L": spec.values(),
                "kr_count": cliques.len(),
                "intersecting": ok,
                "witness": res.witness,
            }),
            ok,
        ))
    })
}

pub fn construct(args: &ConstructArgs) -> CliResult<Status> {
    let n = || need(args.n, "n");
    let r = || need(args.r, "r");
    let g = match args.name {
        Construction::SGraph => s_graph(n()?, r()?, need(args.t, "t")?)?,
        Construction::Turan => turan_graph(n()?, need(args.parts.or(args.l), "parts")?)?,
        Construction::SingleL => single_l_graph(n()?, r()?, need(args.l, "l")?)?,
        Construction::RsGraph => rs_graph(n()?)?,
        Construction::Complete => Graph::complete(n()?),
        Construction::Empty => Graph::empty(n()?),
        Construction::Cycle => Graph::cycle(n()?)?,
        Construction::Petersen => Graph::petersen(),
    };
    let line = write_graph6(&g)?;
    let mut out = Out::new();
    match args.format {
        GraphFormat::Graph6 => out.line(&line)?,
        GraphFormat::Json => {
            let mut v = json!({ "n": g.n(), "edges": g.edge_count(), "graph6": line });
            if let Some(r) = args.r {
                v["r"] = json!(r);
                v["kr_count"] = json!(count_kr(&g, r)?);
            }
            out.json(&v)?
        }
    }
    Ok(Status::Passed)
}

fn report_status(report: &BoundReport) -> Status {
    Status::from_bool(report.verdict != Verdict::Violated)
}

pub fn bound(args: &BoundArgs) -> CliResult<Status> {
    let n = || need(args.n, "n");
    let r = || need(args.r, "r");
    let measured = measured_arg(args.measured.as_ref())?;
    let mut out = Out::new();
    let report = match args.kind {
        BoundKind::Def => def_report(n()?, &spec_from(r()?, &args.spec)?, measured)?,
        BoundKind::Ekr => ekr_report(n()?, r()?, need(args.spec.t, "t")?, measured)?,
        BoundKind::DefTuran => def_turan_report(n()?, &spec_from(r()?, &args.spec)?, measured)?,
        BoundKind::TwoSet => two_set_report(n()?, r()?, need(args.l1, "l1")?, need(args.l2, "l2")?, measured)?,
        BoundKind::TwoSetChain => {
            let value = two_set_chain_bound(n()?, r()?, need(args.l1, "l1")?, need(args.l2, "l2")?)?;
            BoundReport::compare("two-set-chain", value, measured, Precondition::Unknown, "")
        }
        BoundKind::Removal => {
            let m = rational_arg(args.m.as_ref(), "m")?;
            let (n, l, r) = (n()?, need(args.l, "l")?, r()?);
            let b = furedi_removal_bound(n, l, r, &m)?;
            out.json(&json!({
                "name": "furedi-removal",
                "n": n, "l": l, "r": r,
                "m": to_pq(&m),
                "value": to_pq(&b.value),
                "simple": to_pq(&b.simple),
                "chain_holds": b.chain_holds(),
            }))?;
            return Ok(Status::from_bool(b.chain_holds()));
        }
        BoundKind::Fact => {
            let x = rational_arg(args.x.as_ref(), "x")?;
            let r = r()?;
            let holds = fact_inequality(r, &x)?;
            out.json(&json!({ "name": "fact", "r": r, "x": to_pq(&x), "holds": holds }))?;
            return Ok(Status::from_bool(holds));
        }
        BoundKind::Chain => {
            let spec = spec_from(r()?, &args.spec)?;
            let holds = divisibility_chain(&spec)?;
            out.json(&json!({ "name": "divisibility-chain", "r": spec.r(), "L": spec.values(), "holds": holds }))?;
            return Ok(Status::from_bool(holds));
        }
        BoundKind::FisherRyan | BoundKind::Erdos => {
            let (l, r) = (need(args.l, "l")?, r()?);
            let kind = args.kind;
            drop(out);
            return per_graph(&args.input, |g| {
                let rep = if kind == BoundKind::FisherRyan {
                    fisher_ryan_check(g, l, r)?
                } else {
                    erdos_check(g, l, r)?
                };
                let ok = report_status(&rep) == Status::Passed;
                Ok((serde_json::to_value(&rep).expect("serializable"), ok))
            });
        }
    };
    out.json(&serde_json::to_value(&report).expect("serializable"))?;
    Ok(report_status(&report))
}

pub fn search(args: &SearchArgs) -> CliResult<Status> {
    let spec = spec_from(args.r, &args.spec)?;
    let mut out = Out::new();
    let value = match args.quantity {
        QuantityArg::Phi => {
            if args.heuristic || args.catalog.is_some() {
                return Err(CliError::Usage("Φ has no heuristic or catalog mode".into()));
            }
            serde_json::to_value(phi_exact(args.n, &spec)?)
        }
        QuantityArg::Psi if args.heuristic => {
            let opts = HeuristicOptions {
                budget: args.budget,
                seed: args.seed,
                restarts: args.restarts,
            };
            serde_json::to_value(psi_heuristic(args.n, &spec, &opts)?)
        }
        QuantityArg::Psi => {
            let catalog = match &args.catalog {
                Some(path) => Some(
                    load(&InputArgs {
                        input: Some(path.clone()),
                        ..InputArgs::default()
                    })?
                    .graphs(),
                ),
                None => None,
            };
            serde_json::to_value(psi_exact(args.n, &spec, catalog.as_deref())?)
        }
        QuantityArg::Compare => serde_json::to_value(psi_le_phi_report(args.n, &spec)?),
    };
    out.json(&value.expect("serializable"))?;
    Ok(Status::Passed)
}

pub fn decompose_cmd(args: &DecomposeArgs) -> CliResult<Status> {
    let opts = DecomposeOptions {
        threshold: args.threshold,
        discovery: if args.full_scan {
            CoreDiscovery::FullScan
        } else {
            CoreDiscovery::LinkScan
        },
    };
    per_graph(&args.input, |g| {
        let d = decompose(g, args.r, args.l, &opts)?;
        let claims = verify_claims(&d)?;
        let audit = degree_sum_audit(&d);
        let ok = claims.all_passed && audit.handshake_holds;
        Ok((
            json!({ "summary": d.summary()?, "claims": claims, "audit": audit }),
            ok,
        ))
    })
}

fn check_record(mode: &str, check: EditCheck) -> (Value, bool) {
    let ok = check.report.verdict != Verdict::Violated;
    let rep = &check.report;
    (
        json!({
            "mode": mode,
            "T": Value::Null,
            "cost": check.edit.as_ref().map(|e| e.cost),
            "bound": to_pq(&rep.value),
            "verdict": rep.verdict,
            "precondition_met": rep.precondition_met,
            "note": rep.precondition_note,
            "parts": check.edit.as_ref().map(|e| &e.parts),
            "removed": check.edit.as_ref().map(|e| &e.removed),
        }),
        ok,
    )
}

pub fn stability(args: &StabilityArgs) -> CliResult<Status> {
    match args.mode {
        StabilityMode::Ekr => {
            let (r, t) = (need(args.r, "r")?, need(args.t, "t")?);
            let eps = rational_arg(args.eps.as_ref(), "eps")?;
            per_graph(&args.input, |g| {
                let rep = check_ekr_stability(g, r, t, &eps)?;
                let ok = rep.report.verdict != Verdict::Violated;
                Ok((
                    json!({
                        "mode": "ekr",
                        "T": rep.core,
                        "cost": rep.edit.as_ref().map(|e| e.cost),
                        "bound": to_pq(&rep.report.value),
                        "verdict": rep.report.verdict,
                        "precondition_met": rep.report.precondition_met,
                        "note": rep.report.precondition_note,
                        "parts": rep.edit.as_ref().map(|e| &e.parts),
                        "removed": rep.edit.as_ref().map(|e| &e.removed),
                        "kr_count": rep.kr_count,
                        "count_threshold": to_pq(&rep.count_threshold),
                        "hypotheses_hold": rep.hypotheses_hold,
                    }),
                    ok,
                ))
            })
        }
        StabilityMode::Furedi => {
            let l = need(args.l, "l")?;
            per_graph(&args.input, |g| Ok(check_record("furedi", check_furedi(g, l)?)))
        }
        StabilityMode::FurediExt => {
            let (l, r) = (need(args.l, "l")?, need(args.r, "r")?);
            per_graph(&args.input, |g| {
                Ok(check_record("furedi-ext", check_furedi_extension(g, l, r)?))
            })
        }
        StabilityMode::Core => {
            let r = need(args.r, "r")?;
            per_graph(&args.input, |g| Ok((json!({ "r": r, "core": extract_graph_core(g, r)? }), true)))
        }
        StabilityMode::Edits => {
            let l = need(args.l, "l")?;
            let (heuristic, seed) = (args.heuristic, args.seed);
            per_graph(&args.input, |g| {
                let edit = if heuristic {
                    partite_heuristic(g, l, seed)?
                } else {
                    min_edits_to_partite(g, l)?
                };
                Ok((
                    json!({
                        "l": l,
                        "exact": !heuristic,
                        "cost": edit.cost,
                        "parts": edit.parts,
                        "removed": edit.removed,
                    }),
                    true,
                ))
            })
        }
    }
}

pub fn suite(args: &SuiteArgs) -> CliResult<Status> {
    let report = run_suite(args.only.as_deref());
    let mut out = Out::new();
    match args.format {
        RecordFormat::Json => out.json(&serde_json::to_value(&report).expect("serializable"))?,
        RecordFormat::Table => {
            for b in &report.batteries {
                out.line(&format!(
                    "{} {:>2} {:<28} checked={:<7} {:.2}s (limit {}s)",
                    if b.passed { "PASS" } else { "FAIL" },
                    b.id,
                    b.name,
                    b.checked,
                    b.seconds,
                    b.limit_seconds
                ))?;
                for f in &b.failures {
                    out.line(&format!("       {f}"))?;
                }
            }
        }
    }
    Ok(Status::from_bool(report.all_passed))
}

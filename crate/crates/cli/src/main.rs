use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use alpharep::alphasum::{eval_main1, eval_main2, eval_main3, Main3Method, SearchMode, DEFAULT_BUDGET};
use alpharep::io::{canonical_string, ratio_string, tally_json, InputDoc};
use alpharep::matroid::{chi_whitney, flow_count, RepresentedMatroid};
use alpharep::selftest::{self, Level};
use alpharep::shard::default_workers;
use alpharep::{EnumOptions, Error, FieldCtx, TermTally};

/// Characteristic polynomials and Tait colorings as sums of quadratic
/// characters over nonzero weight vectors.
#[derive(Parser, Debug)]
#[command(name = "alpharep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    run: RunFlags,
}

#[derive(Args, Debug)]
struct RunFlags {
    /// Worker threads for enumerations.
    #[arg(long, global = true, env = "ALPHAREP_WORKERS")]
    workers: Option<usize>,

    /// Refuse enumerations with more terms than this.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Print canonical JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value of the characteristic polynomial of a matroid at q.
    Chi {
        /// Matrix or graph document.
        file: PathBuf,
        /// Field as `p` or `p^d`; overrides the document's `field`.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t = ChiMethod::Alpha)]
        method: ChiMethod,
        /// Only search subsets containing the first base.
        #[arg(long, conflicts_with = "cross_check")]
        restricted: bool,
        /// Evaluate every maximizer and fail if their terms differ.
        #[arg(long)]
        cross_check: bool,
    },
    /// Number of nowhere-zero flows (characteristic polynomial of the dual).
    Flow {
        file: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, value_enum, default_value_t = FlowMethod::Alpha3)]
        method: FlowMethod,
        /// With alpha3, also run the row-deletion search on every term.
        #[arg(long)]
        cross_check: bool,
    },
    /// Number of Tait colorings of an embedded cubic planar graph.
    Tait {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TaitMethod::Alpha)]
        method: TaitMethod,
    },
    /// Built-in consistency suites.
    Selftest {
        #[arg(value_enum, default_value_t = SelftestLevel::Quick)]
        level: SelftestLevel,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ChiMethod {
    Whitney,
    Alpha,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FlowMethod {
    Direct,
    /// Contraction form, evaluated on the dual.
    Alpha2,
    /// Laplacian form.
    Alpha3,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TaitMethod {
    Direct,
    Heawood,
    Alpha,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SelftestLevel {
    Quick,
    Full,
}

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, ok: true }
    }
}

fn resolve_field(flag: Option<&str>, doc: &InputDoc) -> Result<Arc<FieldCtx>, Error> {
    let field = match flag {
        Some(s) => FieldCtx::parse(s)?,
        None => doc
            .field()?
            .ok_or_else(|| Error::Parse("no field: pass --field or set `field` in the document".into()))?,
    };
    Ok(Arc::new(field))
}

fn tally_text(t: &TermTally) -> String {
    let mut out = String::new();
    for (&(r, s), &c) in &t.counts {
        let sign = match s {
            1 => "+",
            -1 => "-",
            _ => "0",
        };
        out.push_str(&format!("  r*={r} sign={sign}: {c}\n"));
    }
    out.push_str(&format!("  odd r* (coefficient 0): {}\n", t.skipped_odd));
    out
}

fn load_matroid(file: &Path, field: Option<&str>) -> Result<(RepresentedMatroid, Arc<FieldCtx>), Error> {
    let doc = InputDoc::read(file)?;
    let f = resolve_field(field, &doc)?;
    Ok((doc.matroid(f.clone())?, f))
}

/// The alpha sums for chi and alpha2 need a regular matroid; the caller
/// asserts this, and a representation with a non-unit base determinant
/// cannot be totally unimodular.
fn warn_if_not_unimodular(m: &RepresentedMatroid) {
    if !m.base_dets_are_units() {
        eprintln!("warning: some base determinant is not +-1; the value is only meaningful for regular matroids");
    }
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let opts = EnumOptions { workers: cli.run.workers.unwrap_or_else(default_workers).max(1), budget: cli.run.budget };
    match &cli.command {
        Command::Chi { file, field, method, restricted, cross_check } => {
            let (m, f) = load_matroid(file, field.as_deref())?;
            let q = f.q();
            match method {
                ChiMethod::Whitney => {
                    let v = chi_whitney(&m, q as i64)?;
                    Ok(Report::ok(
                        json!({"command": "chi", "method": "whitney", "field": f.spec_string(), "value": v.to_string()}),
                        format!("chi({q}) = {v}\n"),
                    ))
                }
                ChiMethod::Alpha => {
                    let mode = if *restricted {
                        SearchMode::Restricted(m.bases().swap_remove(0))
                    } else if *cross_check {
                        SearchMode::AllMaximizers
                    } else {
                        SearchMode::Full
                    };
                    warn_if_not_unimodular(&m);
                    let s = eval_main1(&m, &f, &mode, &opts)?;
                    Ok(alpha_report("chi", "alpha", &f, &s.tally, &ratio_string(&s.value)))
                }
            }
        }
        Command::Flow { file, field, method, cross_check } => {
            let (m, f) = load_matroid(file, field.as_deref())?;
            match method {
                FlowMethod::Direct => {
                    let v = flow_count(&m, opts.budget)?;
                    Ok(Report::ok(
                        json!({"command": "flow", "method": "direct", "field": f.spec_string(), "value": v.to_string()}),
                        format!("flows({}) = {v}\n", f.q()),
                    ))
                }
                FlowMethod::Alpha2 => {
                    warn_if_not_unimodular(&m);
                    let s = eval_main2(&m, &f, &SearchMode::Full, &opts)?;
                    Ok(alpha_report("flow", "alpha2", &f, &s.tally, &ratio_string(&s.value)))
                }
                FlowMethod::Alpha3 => {
                    let how = if *cross_check { Main3Method::CrossCheck } else { Main3Method::Laplacian };
                    let s = eval_main3(&m, how, &opts)?;
                    Ok(alpha_report("flow", "alpha3", &f, &s.tally, &ratio_string(&s.value)))
                }
            }
        }
        Command::Tait { file, method } => {
            let g = InputDoc::read(file)?.cubic_graph()?;
            let (name, value, sum) = match method {
                TaitMethod::Direct => ("direct", g.tait_count_direct().to_string(), None),
                TaitMethod::Heawood => ("heawood", g.heawood_count(opts.budget)?.to_string(), None),
                TaitMethod::Alpha => {
                    let s = g.eval_tait_alpha(&opts)?;
                    ("alpha", ratio_string(&s.chi), Some(s))
                }
            };
            let mut json = json!({"command": "tait", "method": name, "value": value});
            let mut text = format!("tait colorings = {value}\n");
            if let Some(s) = sum {
                json["sum"] = Value::from(ratio_string(&s.sum));
                json["tally"] = tally_json(&s.tally);
                text.push_str(&format!("character sum = {}\n", ratio_string(&s.sum)));
                text.push_str(&tally_text(&s.tally));
            }
            Ok(Report::ok(json, text))
        }
        Command::Selftest { level } => {
            let level = match level {
                SelftestLevel::Quick => Level::Quick,
                SelftestLevel::Full => Level::Full,
            };
            let r = selftest::run(level, opts.workers);
            let mut text = String::new();
            for c in &r.checks {
                let tag = if c.passed { "ok  " } else { "FAIL" };
                text.push_str(&format!("{tag} {} ({}) [{:.2}s]\n", c.name, c.detail, c.seconds));
            }
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            Ok(Report { json: json!({"command": "selftest", "checks": checks, "passed": r.passed()}), text, ok: r.passed() })
        }
    }
}

fn alpha_report(command: &str, method: &str, f: &FieldCtx, tally: &TermTally, value: &str) -> Report {
    let json = json!({
        "command": command,
        "method": method,
        "field": f.spec_string(),
        "value": value,
        "terms": tally.total(),
        "tally": tally_json(tally),
    });
    let text = format!("{command}({}) = {value}\n{} weight vectors\n{}", f.q(), tally.total(), tally_text(tally));
    Report::ok(json, text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(report) => {
            if cli.run.json {
                println!("{}", canonical_string(&report.json));
            } else {
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_inapplicable() { 2 } else { 1 })
        }
    }
}

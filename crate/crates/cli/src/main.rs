use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dickson_core::dickson::shift_by_one;
use dickson_core::lfsr::{minimal_poly_dft, minimal_poly_gcd};
use dickson_core::polyring::cosets;
use dickson_core::verify::{
    compare, predict, run_table_with, sweep, Errata, TableSet, VerifyError,
};
use dickson_core::{
    bch_lower_bound, code_from_sequence, defining_sequence, minimum_distance, parse_element,
    CodeReport, DicksonSpec, DistanceConfig, Field, Registry,
};

#[derive(Parser)]
#[command(name = "dickson-codes", version, about = "Cyclic codes from Dickson polynomials")]
struct Cli {
    /// Primitive-polynomial registry replacing the built-in one.
    #[arg(long, global = true, env = "DICKSON_REGISTRY")]
    registry: Option<PathBuf>,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "D")]
    D,
    #[value(name = "E")]
    E,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistanceMode {
    Exact,
    Bch,
    None,
}

#[derive(Subcommand)]
enum Command {
    /// Field parameters and defining polynomial.
    Field(FieldArgs),
    /// The polynomial f(x) and its shift f(x + 1).
    Dickson(SpecArgs),
    /// Defining sequence and its minimal polynomial, by gcd and by DFT.
    Sequence(SpecArgs),
    /// Generator, dimension, BCH bound and minimum distance of one code.
    Code(CodeArgs),
    /// Reproduce one printed table.
    Table(TableArgs),
    /// Closed form against the pipeline for every a in GF(q^m).
    Sweep(SweepArgs),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    m: u32,
}

#[derive(Args)]
struct SpecArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value = "D")]
    kind: Kind,
    #[arg(long)]
    order: u32,
    /// `0`, a prime-field integer or fraction such as `-2` or `3/2`, or `alpha^k`.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Constant added to the polynomial, e.g. `-1`.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    offset: String,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    w_max: Option<u32>,
    #[arg(long)]
    workers: Option<usize>,
}

impl SearchArgs {
    fn config(&self) -> DistanceConfig {
        let mut cfg = DistanceConfig::default();
        if let Some(w) = self.w_max {
            cfg.w_max = w;
        }
        if let Some(w) = self.workers {
            cfg.workers = w.max(1);
        }
        cfg
    }
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long, value_enum, default_value = "exact")]
    distance: DistanceMode,
    /// Also check the closed-form prediction for this polynomial.
    #[arg(long)]
    predict: bool,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct TableArgs {
    /// One of Dp, D2, D3, D4, D5, D7-11, E, D-1.
    #[arg(long)]
    id: String,
    /// Table rows replacing the built-in ones.
    #[arg(long)]
    tables: Option<PathBuf>,
    /// Errata replacing the built-in list.
    #[arg(long)]
    errata: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value = "D")]
    kind: Kind,
    #[arg(long)]
    order: u32,
    #[arg(long, value_enum, default_value = "none")]
    distance: DistanceMode,
    #[command(flatten)]
    search: SearchArgs,
}

/// Exit 2: the request could not be carried out.
struct UsageError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.into())
    }
}

enum Outcome {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    let registry = match &cli.registry {
        Some(p) => Registry::load(p)?,
        None => Registry::builtin(),
    };
    match &cli.command {
        Command::Field(a) => {
            let f = registry.field(a.q, a.m)?;
            emit_pairs(cli.format.unwrap_or(Format::Text), &field_pairs(&registry, &f, a))?;
        }
        Command::Dickson(a) => {
            let (f, spec) = resolve(&registry, a)?;
            let poly = spec.polynomial(&f);
            let pairs = vec![
                ("field", json!(format!("GF({}^{})", f.q(), f.m()))),
                ("polynomial", json!(spec.describe(&f))),
                ("coefficients", json!(poly.to_text(&f))),
                ("shifted", json!(shift_by_one(&poly, &f).to_text(&f))),
            ];
            emit_pairs(cli.format.unwrap_or(Format::Text), &pairs)?;
        }
        Command::Sequence(a) => {
            let (f, spec) = resolve(&registry, a)?;
            let s = defining_sequence(&f, &spec);
            let g = minimal_poly_gcd(&f, &s);
            let d = minimal_poly_dft(&f, &s);
            let pairs = vec![
                ("polynomial", json!(spec.describe(&f))),
                ("n", json!(s.len())),
                ("sequence", json!(s.to_text(&f))),
                ("minimal_poly_gcd", json!(g.poly.to_text(&f))),
                ("span_gcd", json!(g.span)),
                ("minimal_poly_dft", json!(d.poly.to_text(&f))),
                ("span_dft", json!(d.span)),
                ("agree", json!(g.poly == d.poly)),
            ];
            emit_pairs(cli.format.unwrap_or(Format::Text), &pairs)?;
            if g.poly != d.poly {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Code(a) => return code(cli, &registry, a),
        Command::Table(a) => {
            let tables = match &a.tables {
                Some(p) => TableSet::load(p)?,
                None => TableSet::builtin(),
            };
            let errata = match &a.errata {
                Some(p) => Errata::load(p)?,
                None => Errata::builtin(),
            };
            let started = Instant::now();
            let rep = run_table_with(&a.id, &tables, &registry, &errata, &a.search.config())?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => print!("{}", rep.to_csv()),
                Format::Json => println!("{}", rep.to_json()),
                Format::Text => print!("{}", rep.to_text()),
            }
            eprintln!("{} rows in {:.1}s", rep.rows.len(), started.elapsed().as_secs_f64());
            if rep.has_mismatch() {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Sweep(a) => {
            if a.kind == Kind::E {
                return Err(anyhow!("no theorem applies to second-kind polynomials; use the generic pipeline").into());
            }
            let f = registry.field(a.field.q, a.field.m)?;
            let cfg = a.search.config();
            let dist = match a.distance {
                DistanceMode::Exact => Some(&cfg),
                DistanceMode::None => None,
                DistanceMode::Bch => return Err(anyhow!("sweep supports --distance exact or none").into()),
            };
            let rep = sweep(&f, a.order, dist).map_err(out_of_regime)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Csv => print!("{}", rep.to_csv()),
                Format::Json => println!("{}", rep.to_json()),
                Format::Text => print!("{}", rep.to_text()),
            }
            if !rep.ok() {
                return Ok(Outcome::Mismatch);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn out_of_regime(e: VerifyError) -> UsageError {
    match e {
        VerifyError::OutOfRegime(_) => UsageError(anyhow!("{e}")),
        other => other.into(),
    }
}

fn resolve(registry: &Registry, a: &SpecArgs) -> Result<(Field, DicksonSpec), UsageError> {
    let f = registry.field(a.field.q, a.field.m)?;
    let x = parse_element(&f, &a.a).with_context(|| format!("malformed a-expression {:?}", a.a))?;
    let offset = parse_element(&f, &a.offset)
        .with_context(|| format!("malformed offset {:?}", a.offset))?;
    let spec = match a.kind {
        Kind::D => DicksonSpec::first(a.order, x),
        Kind::E => DicksonSpec::second(a.order, x),
    };
    Ok((f, spec.with_offset(offset)))
}

fn field_pairs(registry: &Registry, f: &Field, a: &FieldArgs) -> Vec<(&'static str, Value)> {
    let n = f.n();
    let spec = f.spec();
    vec![
        ("field", json!(format!("GF({}^{})", f.q(), f.m()))),
        ("p", json!(f.p())),
        ("t", json!(f.t())),
        ("size", json!(f.order())),
        ("n", json!(n)),
        ("defining_polynomial", json!(spec.to_string())),
        (
            "source",
            json!(match registry.get(a.q, a.m) {
                Some(e) if e.is_override => "registry (corrected record)",
                Some(_) => "registry",
                None => "smallest primitive polynomial",
            }),
        ),
        ("cyclotomic_cosets", json!(cosets(n, f.q()).map(|c| c.len()).unwrap_or(0))),
    ]
}

fn emit_pairs(format: Format, pairs: &[(&str, Value)]) -> Result<(), UsageError> {
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match format {
        Format::Text => {
            for (k, v) in pairs {
                println!("{k}: {}", plain(v));
            }
        }
        Format::Json => {
            let obj: serde_json::Map<String, Value> =
                pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            println!("{}", serde_json::to_string_pretty(&obj)?);
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["key", "value"])?;
            for (k, v) in pairs {
                w.write_record([k.to_string(), plain(v)])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn code(cli: &Cli, registry: &Registry, a: &CodeArgs) -> Result<Outcome, UsageError> {
    let (f, spec) = resolve(registry, &a.spec)?;
    let prediction = if a.predict {
        Some(predict(&f, &spec).map_err(out_of_regime)?)
    } else {
        None
    };
    let started = Instant::now();
    let code = code_from_sequence(&f, &defining_sequence(&f, &spec));
    let dist = match a.distance {
        DistanceMode::Exact if code.k() > 0 => Some(minimum_distance(&f, &code, &a.search.config())?),
        _ => None,
    };
    let report = CodeReport::new(&f, &code, &a.spec.a, dist.as_ref(), started.elapsed().as_millis() as u64);
    let case = prediction.as_ref().map(|p| compare(p, &code, dist.as_ref()));

    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = serde_json::to_value(&report)?;
            if a.distance == DistanceMode::None {
                v.as_object_mut().unwrap().remove("d");
                v.as_object_mut().unwrap().remove("d_method");
            }
            if let Some(c) = &case {
                v["prediction"] = serde_json::to_value(c)?;
            }
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record(["n", "k", "d", "m", "q", "a", "Bd", "Opt"])?;
            let d = dist.as_ref().map_or(String::new(), |d| d.to_string());
            w.write_record([
                report.n.to_string(),
                report.k.to_string(),
                d,
                report.m.to_string(),
                report.q.to_string(),
                report.a.clone(),
                String::new(),
                String::new(),
            ])?;
            w.flush()?;
        }
        Format::Text => {
            println!("{} over GF({}^{})", spec.describe(&f), f.q(), f.m());
            println!("[n, k] = [{}, {}]", report.n, report.k);
            println!("generator: {}", report.generator);
            println!("BCH bound: {}", bch_lower_bound(&f, &code));
            if let Some(d) = &dist {
                println!("d: {d} ({})", d.method);
                if let Some(w) = &d.witness {
                    println!("witness: {}", w.to_text(&f));
                }
            }
            if let Some(c) = &case {
                println!(
                    "closed form ({}, {}): k {} {}, generator {}{}",
                    c.regime,
                    c.case,
                    c.predicted_k,
                    c.predicted_d,
                    if c.generator_match { "matches" } else { "DIFFERS" },
                    match c.d_verdict {
                        Some(v) => format!(", distance claim {v:?}").to_lowercase(),
                        None => String::new(),
                    }
                );
            }
        }
    }
    Ok(match case {
        Some(c) if !c.ok() => Outcome::Mismatch,
        _ => Outcome::Ok,
    })
}

//! Command-line front end: datum files in, JSON reports out. The exit code
//! doubles as a theorem checker: zero exactly when every structural
//! assertion of the run held.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qfk_core::datum::QlsDatum;
use qfk_core::double::{BorelSide, DoubleAlgebra};
use qfk_core::files::{
    render_scalar, BundleJson, DatumJson, PreNicholsFile, ScalarJson, StructureConstantsFile,
};
use qfk_core::hopf::{HopfAlgebraH, SparseElem, VerifyMode};
use qfk_core::prenichols::Side;
use qfk_core::repn::{
    all_simples, endomorphism_dim, trace_radical_dim, DoubleModules, HModules, ModuleEngine,
    RepnError,
};

#[derive(Parser)]
#[command(
    name = "qfk",
    about = "finite quantum groups, their doubles, and their simple modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (falls back to QFK_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    H,
    Double,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    H,
    Dual,
    Double,
    Prenichols,
}

#[derive(Subcommand)]
enum Command {
    /// Check a datum file against every construction hypothesis.
    Validate { path: PathBuf },
    /// Print dimensions and structural facts without heavy computation.
    Info { path: PathBuf },
    /// Build the algebras, classify the simple modules, emit a report.
    Simples {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "h")]
        target: Target,
        /// Run the trace-form radical oracle (requires char 0 or char > dim).
        #[arg(long)]
        oracle: bool,
        /// Force the exhaustive axiom suite (dim <= 128).
        #[arg(long)]
        exhaustive_axioms: bool,
        /// Also write the target's structure constants to this path.
        #[arg(long)]
        export: Option<PathBuf>,
        /// Seed for sampled checks.
        #[arg(long, default_value = "17")]
        seed: u64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write structure constants of a built object to a file.
    Export {
        path: PathBuf,
        #[arg(long, value_enum)]
        what: ExportWhat,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct Dimensions {
    dim_l: u64,
    dim_r: u64,
    dim_h: u64,
    dim_double: u64,
    group_order: u64,
    group_exponent: u64,
    characteristic: u64,
}

#[derive(Serialize)]
struct AxiomsJson {
    mode: String,
    checked: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct DoubleJson {
    pbw_tuples: usize,
    pbw_blocks: usize,
    pbw_max_block: usize,
    checked: usize,
    failures: Vec<String>,
    nilpotency: Vec<(char, usize, usize)>,
    quotient_dims: Vec<(char, usize)>,
}

#[derive(Serialize)]
struct SimpleRow {
    label: String,
    dim_induced: usize,
    dim_simple: usize,
    certified: bool,
    weights: Vec<(String, usize)>,
}

#[derive(Serialize)]
struct SimplesJson {
    target: String,
    count: usize,
    rows: Vec<SimpleRow>,
    all_certified: bool,
    distinguish_diagonal: bool,
    sum_of_squares: usize,
}

#[derive(Serialize)]
struct OracleJson {
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    algebra_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radical_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sum_of_squares: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    schur_all_one_dimensional: Option<bool>,
}

#[derive(Serialize)]
struct Report {
    datum: DatumJson,
    flags: Vec<String>,
    dimensions: Dimensions,
    #[serde(skip_serializing_if = "Option::is_none")]
    axioms: Option<AxiomsJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    double: Option<DoubleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    simples: Option<SimplesJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleJson>,
    notes: Vec<String>,
    timings: BTreeMap<String, f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads.or_else(|| {
        std::env::var("QFK_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    match run_with_threads(threads, cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run_with_threads(threads: Option<usize>, cmd: Command) -> Result<ExitCode, String> {
    match threads {
        Some(n) if n > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| e.to_string())?;
            pool.install(|| run(cmd))
        }
        _ => run(cmd),
    }
}

fn load_datum(path: &PathBuf) -> Result<QlsDatum, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let dj = DatumJson::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    dj.to_datum()
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn dims_of(d: &QlsDatum) -> Dimensions {
    Dimensions {
        dim_l: d.dim_l(),
        dim_r: d.dim_l(),
        dim_h: d.dim_h(),
        dim_double: d.dim_h() * d.dim_h(),
        group_order: d.group.order(),
        group_exponent: d.group.exponent(),
        characteristic: d.field.characteristic(),
    }
}

fn run(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Validate { path } => {
            let d = load_datum(&path)?;
            let report = d.validate();
            for v in &report.violations {
                println!("violation: {v}");
            }
            for fl in &report.flags {
                println!("note: {fl}");
            }
            if report.ok() {
                println!("ok: datum satisfies all construction hypotheses");
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Info { path } => {
            let d = load_datum(&path)?;
            let report = d.validate();
            if !report.ok() {
                for v in &report.violations {
                    println!("violation: {v}");
                }
                return Ok(ExitCode::FAILURE);
            }
            let dims = dims_of(&d);
            println!(
                "group: Z/{:?}, order {}",
                d.group.moduli(),
                dims.group_order
            );
            println!(
                "field: characteristic {}, root order {}",
                dims.characteristic,
                d.field.root_order()
            );
            println!("rank: {}", d.rank());
            println!("dim L = dim R = {}", dims.dim_l);
            println!("dim H = {}", dims.dim_h);
            println!("dim D(H) = {}", dims.dim_double);
            for fl in &report.flags {
                println!("note: {fl}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Simples {
            path,
            target,
            oracle,
            exhaustive_axioms,
            export,
            seed,
            output,
        } => cmd_simples(
            path,
            target,
            oracle,
            exhaustive_axioms,
            export,
            seed,
            output,
        ),
        Command::Export { path, what, out } => cmd_export(path, what, out),
    }
}

fn cmd_simples(
    path: PathBuf,
    target: Target,
    oracle: bool,
    exhaustive_axioms: bool,
    export: Option<PathBuf>,
    seed: u64,
    output: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let d = load_datum(&path)?;
    let validation = d.validate();
    if !validation.ok() {
        for v in &validation.violations {
            eprintln!("violation: {v}");
        }
        return Ok(ExitCode::FAILURE);
    }
    let mut timings: BTreeMap<String, f64> = BTreeMap::new();
    let mut notes: Vec<String> = vec![];
    let mut all_ok = true;

    let t0 = Instant::now();
    let h = Arc::new(HopfAlgebraH::build(&d).map_err(|e| e.to_string())?);
    timings.insert("build_h".into(), t0.elapsed().as_secs_f64());

    // axiom suite
    let t0 = Instant::now();
    let mode = if exhaustive_axioms || h.dim() <= 128 {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::Sampled { tuples: 2000, seed }
    };
    let axiom_report = h.verify_axioms(mode).map_err(|e| e.to_string())?;
    timings.insert("hopf_axioms".into(), t0.elapsed().as_secs_f64());
    all_ok &= axiom_report.ok();
    let axioms = AxiomsJson {
        mode: match mode {
            VerifyMode::Exhaustive => "exhaustive".into(),
            VerifyMode::Sampled { tuples, .. } => format!("sampled({tuples})"),
        },
        checked: axiom_report.checked,
        failures: axiom_report.failures.clone(),
    };

    let mut double_json = None;
    let mut simples_json;
    let mut oracle_json = None;

    match target {
        Target::H => {
            let engine = HModules::new(h.clone());
            let t0 = Instant::now();
            let c = all_simples(&engine).map_err(|e| e.to_string())?;
            timings.insert("classification".into(), t0.elapsed().as_secs_f64());
            all_ok &= c.all_certified && c.distinguish_diagonal;
            simples_json = Some(render_simples("H", &engine, &c));
            if oracle {
                let t0 = Instant::now();
                oracle_json = Some(run_oracle(&engine, &c, &mut all_ok));
                timings.insert("oracle".into(), t0.elapsed().as_secs_f64());
            }
        }
        Target::Double => {
            let dd = Arc::new(DoubleAlgebra::build(h.clone()));
            let t0 = Instant::now();
            let pbw = dd.pbw().map_err(|e| e.to_string())?;
            timings.insert("pbw".into(), t0.elapsed().as_secs_f64());
            let t0 = Instant::now();
            let vmode = VerifyMode::Sampled { tuples: 500, seed };
            let dreport = dd.verify(vmode).map_err(|e| e.to_string())?;
            timings.insert("double_verify".into(), t0.elapsed().as_secs_f64());
            all_ok &= dreport.ok();
            double_json = Some(DoubleJson {
                pbw_tuples: pbw.tuple_count(),
                pbw_blocks: pbw.block_count(),
                pbw_max_block: pbw.max_block_dim(),
                checked: dreport.checked,
                failures: dreport.failures.clone(),
                nilpotency: dreport.nilpotency.clone(),
                quotient_dims: dreport.quotient_dims.clone(),
            });
            let borel_b = dd.borel(BorelSide::B);
            if borel_b.dual_generator_degrees().iter().any(|&deg| deg > 1) {
                notes.push("R* requires a generator in degree > 1".into());
            }
            let engine = DoubleModules::new(dd.clone());
            let t0 = Instant::now();
            let c = all_simples(&engine).map_err(|e| e.to_string())?;
            timings.insert("classification".into(), t0.elapsed().as_secs_f64());
            all_ok &= c.all_certified && c.distinguish_diagonal;
            simples_json = Some(render_simples("double", &engine, &c));
            if oracle {
                let t0 = Instant::now();
                oracle_json = Some(run_oracle(&engine, &c, &mut all_ok));
                timings.insert("oracle".into(), t0.elapsed().as_secs_f64());
            }
        }
    }

    if let Some(out) = export {
        let what = match target {
            Target::H => ExportWhat::H,
            Target::Double => ExportWhat::Double,
        };
        write_export(&d, what, &out)?;
        notes.push(format!("structure constants exported to {}", out.display()));
    }

    let report = Report {
        datum: DatumJson::from_datum(&d),
        flags: validation.flags.iter().map(|f| f.to_string()).collect(),
        dimensions: dims_of(&d),
        axioms: Some(axioms),
        double: double_json,
        simples: simples_json.take(),
        oracle: oracle_json,
        notes,
        timings,
    };
    // human summary on stderr; the JSON report owns stdout
    if let Some(s) = &report.simples {
        eprintln!(
            "target {}: {} simple modules, all certified: {}, distinguish diagonal: {}",
            s.target, s.count, s.all_certified, s.distinguish_diagonal
        );
        eprintln!("{:<24} {:>6} {:>6}  {}", "weight", "dim M", "dim L", "certified");
        for row in &s.rows {
            eprintln!(
                "{:<24} {:>6} {:>6}  {}",
                row.label, row.dim_induced, row.dim_simple, row.certified
            );
        }
        if let Some(o) = &report.oracle {
            eprintln!("oracle: {}", o.status);
        }
        for note in &report.notes {
            eprintln!("note: {note}");
        }
        eprintln!("result: {}", if all_ok { "all assertions passed" } else { "FAILED" });
    }
    let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
    match output {
        Some(p) => fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn render_simples<E: ModuleEngine>(
    target: &str,
    _engine: &E,
    c: &qfk_core::repn::Classification,
) -> SimplesJson {
    SimplesJson {
        target: target.into(),
        count: c.rows.len(),
        rows: c
            .rows
            .iter()
            .map(|r| SimpleRow {
                label: r.weight.label(),
                dim_induced: r.dim_induced,
                dim_simple: r.dim_simple,
                certified: r.certified_simple,
                weights: r
                    .weight_multiplicities
                    .iter()
                    .map(|(w, m)| (w.label(), *m))
                    .collect(),
            })
            .collect(),
        all_certified: c.all_certified,
        distinguish_diagonal: c.distinguish_diagonal,
        sum_of_squares: c.sum_of_squares(),
    }
}

fn run_oracle<E: ModuleEngine>(
    engine: &E,
    c: &qfk_core::repn::Classification,
    all_ok: &mut bool,
) -> OracleJson {
    match trace_radical_dim(engine) {
        Ok(rad) => {
            let sum = c.sum_of_squares();
            let schur = c
                .rows
                .iter()
                .all(|r| endomorphism_dim(engine.field(), &r.simple) == 1);
            let consistent = engine.algebra_dim() - rad == sum && schur;
            *all_ok &= consistent;
            OracleJson {
                status: if consistent {
                    "pass".into()
                } else {
                    "FAIL".into()
                },
                algebra_dim: Some(engine.algebra_dim()),
                radical_dim: Some(rad),
                sum_of_squares: Some(sum),
                schur_all_one_dimensional: Some(schur),
            }
        }
        Err(RepnError::OraclePrecondition {
            characteristic,
            dim,
        }) => OracleJson {
            status: format!("skipped (precondition): char {characteristic} <= dim {dim}"),
            algebra_dim: None,
            radical_dim: None,
            sum_of_squares: None,
            schur_all_one_dimensional: None,
        },
        Err(e) => {
            *all_ok = false;
            OracleJson {
                status: format!("FAIL: {e}"),
                algebra_dim: None,
                radical_dim: None,
                sum_of_squares: None,
                schur_all_one_dimensional: None,
            }
        }
    }
}

fn cmd_export(path: PathBuf, what: ExportWhat, out: PathBuf) -> Result<ExitCode, String> {
    let d = load_datum(&path)?;
    if !d.validate().ok() {
        return Err("datum fails validation; run `qfk validate` for details".into());
    }
    write_export(&d, what, &out)?;
    println!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn write_export(d: &QlsDatum, what: ExportWhat, out: &PathBuf) -> Result<(), String> {
    let field = d.field.clone();
    let text = match what {
        ExportWhat::Prenichols => {
            use qfk_core::prenichols::{BraidedAlgebra, QlsAlgebra};
            let left = BraidedAlgebra::Qls(QlsAlgebra::build(d, Side::Left));
            let right = BraidedAlgebra::Qls(QlsAlgebra::build(d, Side::Right));
            let file = PreNicholsFile {
                datum: DatumJson::from_datum(d),
                left: BundleJson::from_bundle(&left.to_bundle(Side::Left), &field),
                right: BundleJson::from_bundle(&right.to_bundle(Side::Right), &field),
            };
            serde_json::to_string_pretty(&file).map_err(|e| e.to_string())?
        }
        ExportWhat::H => {
            let h = HopfAlgebraH::build(d).map_err(|e| e.to_string())?;
            let mut entries = vec![];
            for i in 0..h.dim() {
                for j in 0..h.dim() {
                    let prod = h.mult_basis(i, j);
                    if !prod.is_zero() {
                        entries.push((i, j, sparse_terms(&field, &prod)));
                    }
                }
            }
            let file = StructureConstantsFile {
                what: "H".into(),
                dim: h.dim(),
                entries,
            };
            serde_json::to_string(&file).map_err(|e| e.to_string())?
        }
        ExportWhat::Dual => {
            let h = Arc::new(HopfAlgebraH::build(d).map_err(|e| e.to_string())?);
            let dd = DoubleAlgebra::build(h.clone());
            let mut entries = vec![];
            for i in 0..h.dim() {
                let a = SparseElem::basis(i, &field);
                for j in 0..h.dim() {
                    let b = SparseElem::basis(j, &field);
                    let prod = dd.dual_multiply(&a, &b);
                    if !prod.is_zero() {
                        entries.push((i, j, sparse_terms(&field, &prod)));
                    }
                }
            }
            let file = StructureConstantsFile {
                what: "dual".into(),
                dim: h.dim(),
                entries,
            };
            serde_json::to_string(&file).map_err(|e| e.to_string())?
        }
        ExportWhat::Double => {
            // the straightening table is the only nontrivial ingredient of
            // the double's multiplication; pairs materialize on demand
            let h = Arc::new(HopfAlgebraH::build(d).map_err(|e| e.to_string())?);
            let dd = DoubleAlgebra::build(h.clone());
            let mut entries = vec![];
            for u in 0..h.dim() {
                for s in 0..h.dim() {
                    let st = dd.straddle(u, s);
                    if !st.is_zero() {
                        entries.push((u, s, sparse_terms(&field, &st)));
                    }
                }
            }
            let file = StructureConstantsFile {
                what: "double-straightening".into(),
                dim: h.dim() * h.dim(),
                entries,
            };
            serde_json::to_string(&file).map_err(|e| e.to_string())?
        }
    };
    fs::write(out, text).map_err(|e| format!("{}: {e}", out.display()))
}

fn sparse_terms(field: &qfk_core::ScalarField, x: &SparseElem) -> Vec<(usize, ScalarJson)> {
    x.0.iter()
        .map(|(k, c)| (*k, render_scalar(field, c)))
        .collect()
}

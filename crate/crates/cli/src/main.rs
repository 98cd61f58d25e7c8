use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::{Command as Process, ExitCode};

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use divpoint::format::{dps_to_json, parse_points, unit_to_json, Configuration};
use divpoint::geometry::{build_dps, find_convex_subset};
use divpoint::oracles::{enumerate4, enumerate5, EnumReport};
use divpoint::satgen::{
    check_assignment, export_dimacs, gen_instance, manifest, parse_dimacs, solve_with_stats, to_cnf, CnfFormula,
    InstanceOptions, SolveOptions, SolveResult, DEFAULT_BUDGET,
};
use divpoint::subdps::convexity_witness;
use divpoint::{check_planarity_laws, check_unit_laws, classify4, isomorphism, to_unit, DivPointSet, PointSet};

#[derive(Parser)]
#[command(name = "divpoint", version, about = "Div point sets, planarity laws and the convex-subset SAT pipeline")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a configuration file for structural validity.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Classify a 4-point configuration.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Largest convex sub configuration.
    Convexity {
        #[arg(long)]
        input: PathBuf,
    },
    /// Find an isomorphism between two configurations.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Build the configuration of a planar point file (JSON or label,x,y rows).
    Ingest {
        #[arg(long)]
        input: PathBuf,
        /// Write the configuration here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit the unit form.
        #[arg(long)]
        unit: bool,
    },
    /// Enumerate all 4-point configurations.
    Enumerate4,
    /// Enumerate all 4^10 five-point configurations.
    Enumerate5 {
        #[arg(long)]
        threads: Option<usize>,
        /// Include the per-class table.
        #[arg(long)]
        report: bool,
    },
    /// Generate the multiset SAT instance as DIMACS CNF.
    GenSat {
        #[arg(long)]
        n: u32,
        /// DIMACS destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the instance manifest (JSON) here.
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Keep only B-groups containing variable 2.
        #[arg(long = "paper-setB-filter")]
        reference_b_filter: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Solve a DIMACS file, or the generated instance for `--n`.
    Solve {
        #[arg(long, conflicts_with = "n")]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = SolverKind::Embedded)]
        solver: SolverKind,
        /// External solver executable, called with the DIMACS path.
        #[arg(long, env = "DIVPOINT_SAT_SOLVER")]
        external_cmd: Option<String>,
        /// Chronological backtracking instead of clause learning.
        #[arg(long)]
        no_learning: bool,
        /// Gaussian elimination over the parity subsystem first.
        #[arg(long)]
        xor: bool,
        #[arg(long, default_value_t = 10_000_000)]
        conflict_budget: u64,
        /// Print the model.
        #[arg(long)]
        model: bool,
    },
    /// Report planarity law violations.
    Laws {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverKind {
    Embedded,
    External,
}

/// Failure that is an answer (law violations), not a crash.
struct Rejected;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_config(path: &Path) -> Result<Configuration> {
    Configuration::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_dps(path: &Path) -> Result<DivPointSet> {
    Ok(load_config(path)?.into_dps()?)
}

fn emit(out: &mut impl Write, json: bool, value: serde_json::Value, text: String) -> Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn report_text(r: &EnumReport, table: bool) -> String {
    let mut s = format!(
        "points: {}\ntotal: {}\nlawful: {}\nstar-lawful: {}\nhypergraph-lawful: {}\nclasses: {}\nconcave 4-subsets:",
        r.points,
        r.total,
        r.lawful,
        r.star_lawful,
        r.hypergraph_lawful,
        r.classes.len()
    );
    for (k, c) in r.sub_conc_distribution.iter().enumerate() {
        if *c > 0 {
            s.push_str(&format!(" {k}:{c}"));
        }
    }
    if table {
        s.push_str("\n\nclass        count  concave  canonical");
        for c in &r.classes {
            let name = c.name.map_or("-".to_string(), |n| n.to_string());
            s.push_str(&format!("\n{name:<12} {:>5}  {:>7}  {}", c.count, c.sub_conc, c.canonical));
        }
    }
    s
}

fn model_lits(model: &[bool]) -> Vec<i64> {
    model.iter().enumerate().map(|(i, &b)| if b { i as i64 + 1 } else { -(i as i64 + 1) }).collect()
}

fn run_external(cmd: &str, cnf: &CnfFormula) -> Result<SolveResult> {
    let file = TempPath(std::env::temp_dir().join(format!("divpoint-{}.cnf", std::process::id())));
    let mut w = io::BufWriter::new(fs::File::create(&file.0)?);
    export_dimacs(cnf, &mut w)?;
    w.flush()?;
    let output = Process::new(cmd).arg(&file.0).output().with_context(|| format!("running {cmd}"))?;
    let stdout = String::from_utf8_lossy(&output.stdout);
    let status = stdout.lines().find_map(|l| l.strip_prefix("s ").map(str::trim));
    let result = match (status, output.status.code()) {
        (Some("UNSATISFIABLE"), _) | (None, Some(20)) => SolveResult::Unsat,
        (Some("SATISFIABLE"), _) | (None, Some(10)) => {
            let mut model = vec![false; cnf.num_vars as usize];
            for l in stdout.lines().filter_map(|l| l.strip_prefix("v ")) {
                for tok in l.split_whitespace() {
                    let v: i64 = tok.parse().with_context(|| format!("bad model literal {tok}"))?;
                    if v > 0 && v as usize <= model.len() {
                        model[v as usize - 1] = true;
                    }
                }
            }
            SolveResult::Sat(model)
        }
        _ => bail!("{cmd} gave no result (exit status {:?})", output.status.code()),
    };
    Ok(result)
}

// removed on drop
struct TempPath(PathBuf);

impl Drop for TempPath {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Option<Rejected>> {
    let json = cli.json;
    match cli.command {
        Command::Validate { input } => {
            let (points, form, lawful) = match load_config(&input)? {
                Configuration::Dps(x) => (x.len(), "div point set", check_planarity_laws(&x).passed),
                Configuration::Unit(u) => (u.len(), "unit div point set", check_unit_laws(&u).passed),
            };
            emit(
                out,
                json,
                json!({ "valid": true, "form": form, "points": points, "lawful": lawful }),
                format!("valid {form} on {points} points ({})", if lawful { "lawful" } else { "unlawful" }),
            )?;
        }
        Command::Classify { input } => {
            let class = classify4(&load_dps(&input)?)?;
            emit(out, json, json!({ "class": class }), class.to_string())?;
        }
        Command::Convexity { input } => {
            let (k, witness) = convexity_witness(&load_dps(&input)?)?;
            emit(
                out,
                json,
                json!({ "convexity": k, "witness": witness.to_u32s() }),
                format!("convexity {k} witness {witness}"),
            )?;
        }
        Command::Iso { a, b } => {
            let m = isomorphism(&load_dps(&a)?, &load_dps(&b)?);
            let text = m.as_ref().map_or("not isomorphic".to_string(), |m| format!("isomorphic: {m}"));
            emit(out, json, json!({ "isomorphic": m.is_some(), "bijection": m }), text)?;
        }
        Command::Ingest { input, out: dest, unit } => {
            let pts = PointSet::from_raw(&parse_points(&read(&input)?)?)?;
            let x = build_dps(&pts)?;
            let doc = if unit { unit_to_json(&to_unit(&x)?) } else { dps_to_json(&x) };
            match dest {
                Some(p) => {
                    fs::write(&p, doc + "\n").with_context(|| format!("writing {}", p.display()))?;
                    let convex5 = find_convex_subset(&pts, 5).map(|s| s.to_u32s());
                    emit(
                        out,
                        json,
                        json!({ "points": pts.len(), "out": p, "convex5": convex5 }),
                        format!("{} points written to {}", pts.len(), p.display()),
                    )?;
                }
                None => writeln!(out, "{doc}")?,
            }
        }
        Command::Enumerate4 => {
            let r = enumerate4();
            emit(out, json, serde_json::to_value(&r)?, report_text(&r, true))?;
        }
        Command::Enumerate5 { threads, report } => {
            if threads == Some(0) {
                bail!("--threads must be positive");
            }
            let r = enumerate5(threads)?;
            emit(out, json, serde_json::to_value(&r)?, report_text(&r, report))?;
        }
        Command::GenSat { n, out: dest, manifest: man, reference_b_filter, budget } => {
            let inst = gen_instance(n, InstanceOptions { reference_b_filter, budget })?;
            let cnf = to_cnf(&inst);
            let m = manifest(&inst, &cnf);
            if let Some(p) = &man {
                fs::write(p, serde_json::to_string_pretty(&m)? + "\n")
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            match dest {
                Some(p) => {
                    let f = fs::File::create(&p).with_context(|| format!("creating {}", p.display()))?;
                    let mut w = io::BufWriter::new(f);
                    export_dimacs(&cnf, &mut w)?;
                    w.flush()?;
                    emit(
                        out,
                        json,
                        serde_json::to_value(&m)?,
                        format!("p cnf {} {} written to {} (sha256 {})", m.num_vars, m.clauses, p.display(), m.sha256),
                    )?;
                }
                None => export_dimacs(&cnf, &mut *out)?,
            }
        }
        Command::Solve { input, n, solver, external_cmd, no_learning, xor, conflict_budget, model } => {
            let inst = match n {
                Some(n) => Some(gen_instance(n, InstanceOptions::default())?),
                None => None,
            };
            let cnf = match (&input, &inst) {
                (Some(p), _) => {
                    let f = fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
                    parse_dimacs(io::BufReader::new(f))?
                }
                (None, Some(i)) => to_cnf(i),
                (None, None) => bail!("solve needs --input or --n"),
            };
            let (result, stats) = match solver {
                SolverKind::Embedded => {
                    let opts = SolveOptions {
                        learning: !no_learning,
                        xor_preprocess: xor,
                        conflict_budget: Some(conflict_budget),
                        time_budget: None,
                    };
                    let (r, s) = solve_with_stats(&cnf, opts)?;
                    (r, Some(s))
                }
                SolverKind::External => {
                    let cmd = external_cmd.ok_or_else(|| anyhow!("--solver external needs --external-cmd"))?;
                    (run_external(&cmd, &cnf)?, None)
                }
            };
            let verified = match (&result, &inst) {
                (SolveResult::Sat(m), Some(i)) => Some(check_assignment(i, m)?),
                (SolveResult::Sat(m), None) => Some(cnf.evaluate(m)),
                _ => None,
            };
            let (status, lits) = match &result {
                SolveResult::Sat(m) => ("SAT", Some(model_lits(m))),
                SolveResult::Unsat => ("UNSAT", None),
            };
            let mut text = format!("s {}", if result.is_sat() { "SATISFIABLE" } else { "UNSATISFIABLE" });
            if let Some(s) = &stats {
                text.push_str(&format!(
                    "\nc decisions {} conflicts {} propagations {} learned {}",
                    s.decisions, s.conflicts, s.propagations, s.learned
                ));
            }
            if let Some(v) = verified {
                text.push_str(&format!("\nc model verified: {v}"));
            }
            if let (true, Some(l)) = (model, &lits) {
                let body: Vec<String> = l.iter().map(i64::to_string).collect();
                text.push_str(&format!("\nv {} 0", body.join(" ")));
            }
            emit(
                out,
                json,
                json!({ "result": status, "stats": stats, "verified": verified, "model": if model { lits } else { None } }),
                text,
            )?;
            if verified == Some(false) {
                bail!("solver returned a model that fails verification");
            }
        }
        Command::Laws { input } => {
            let report = match load_config(&input)? {
                Configuration::Dps(x) => check_planarity_laws(&x),
                Configuration::Unit(u) => check_unit_laws(&u),
            };
            let mut text = if report.passed { "lawful".to_string() } else { "unlawful".to_string() };
            for v in &report.violations {
                text.push_str(&format!("\n{v}"));
            }
            emit(out, json, serde_json::to_value(&report)?, text)?;
            if !report.passed {
                return Ok(Some(Rejected));
            }
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let unknown = matches!(e.kind(), ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand);
            let _ = e.print();
            if unknown {
                let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
                eprintln!("valid commands: {}", names.join(", "));
            }
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Rejected)) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

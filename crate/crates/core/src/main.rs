use clap::{Parser, Subcommand, ValueEnum};
use qhopf::connection::{build_idempotent, check_idempotent, closed_form, Comodule, IdempotentMatrix};
use qhopf::dsl::{self, Mode};
use qhopf::hopf::Ctx;
use qhopf::presentations::standard_universe;
use qhopf::report::Verdict;
use qhopf::scalars::Coeff;
use qhopf::suite::{run_checks, Contexts, Report, RunConfig};
use std::process::ExitCode;
use std::sync::Arc;

const USAGE: u8 = 3;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Specialized,
    Symbolic,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "qhopf", version, about = "Exact checks for Hopf *-algebra identities over Q(q)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Coefficient domain: sampled rational q values, or Q(q) itself.
    #[arg(long, value_enum, global = true, default_value = "specialized")]
    mode: ModeArg,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Number of q values in specialized mode.
    #[arg(long, global = true, default_value_t = 3)]
    qpoints: usize,
    /// Record rewrite traces (identity checks and `nf`).
    #[arg(long, global = true)]
    trace: bool,
    /// Resource cap on intermediate sizes; exceeding it gives "undecided".
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    json: Option<std::path::PathBuf>,
    /// Extra declarations, parsed on top of the standard universe.
    #[arg(long, global = true)]
    decls: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse a script and summarize it.
    Parse {
        file: std::path::PathBuf,
        /// Print the declarations back as DSL text.
        #[arg(long)]
        emit: bool,
    },
    /// Normal form of an expression.
    Nf { alg: String, expr: String },
    /// Check one identity, written `LHS == RHS mod ALG`.
    Check { identity: String },
    /// Run the checks of a script.
    Suite {
        file: std::path::PathBuf,
        /// Run only this suite.
        #[arg(long)]
        suite: Option<String>,
    },
    /// Build and print the idempotent of V1, V-1 or V2 (or Q2bar).
    Idempotent {
        comodule: String,
        /// Print the displayed closed form instead of the pipeline output.
        #[arg(long)]
        closed: bool,
    },
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig {
        mode: match cli.mode {
            ModeArg::Specialized => Mode::Specialized,
            ModeArg::Symbolic => Mode::Symbolic,
        },
        seed: cli.seed,
        qpoints: cli.qpoints,
        cap: cli.cap,
        trace: cli.trace,
    }
}

fn read(path: &std::path::Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn script(cli: &Cli, extra: &str) -> Result<dsl::Script, String> {
    let base = standard_universe().map_err(|e| e.to_string())?;
    let mut text = match &cli.decls {
        Some(p) => read(p)? + "\n",
        None => String::new(),
    };
    text.push_str(extra);
    dsl::parse_with(&text, base).map_err(|e| e.to_string())
}

fn emit(cli: &Cli, r: &Report) -> Result<(), String> {
    match cli.format {
        Format::Text => print!("{}", r.text()),
        Format::Json => print!("{}", r.json_lines()),
    }
    if let Some(p) = &cli.json {
        std::fs::write(p, r.json_lines()).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

fn verdict_code(v: Verdict) -> ExitCode {
    ExitCode::from(v.exit_code() as u8)
}

fn print_nf<C: Coeff>(ctx: &Ctx<C>, alg: &str, expr: &str, trace: bool) -> Result<(), String> {
    let e = ctx.parse(alg, expr).map_err(|e| e.to_string())?;
    let n = ctx.nf(&e).map_err(|e| e.to_string())?;
    println!("{}\t{}", ctx.describe_point(), ctx.format(&n));
    if trace {
        let eng = ctx.engine.get(alg).map_err(|e| e.to_string())?;
        let (_, t) = eng.trace_normal_form(&e, 10_000).map_err(|e| e.to_string())?;
        for s in &t.steps {
            println!("  {} at {} in {}", s.rule, s.position, s.word);
        }
    }
    Ok(())
}

fn print_idempotent<C: Coeff>(ctx: &Ctx<C>, cli: &Cli, name: &str, closed: bool) -> Result<Verdict, String> {
    let (v, reduced) = match name {
        "Q2bar" => (Comodule::V2, true),
        n => (Comodule::from_name(n).ok_or_else(|| format!("unknown comodule '{n}' (V1, V-1, V2, Q2bar)"))?, false),
    };
    let m: IdempotentMatrix<C> = if closed || reduced {
        closed_form(ctx, v, reduced)
    } else {
        build_idempotent(ctx, v)
    }
    .map_err(|e| e.to_string())?;
    let f = check_idempotent(ctx, &m);
    match cli.format {
        Format::Json => {
            let mut j = m.to_json(ctx);
            j["point"] = ctx.describe_point().into();
            j["verdict"] = serde_json::to_value(f.verdict()).unwrap();
            println!("{j}");
        }
        Format::Text => {
            println!("{} at {} ({})", m.name, ctx.describe_point(), f.verdict().word());
            for (a, row) in m.render(ctx).iter().enumerate() {
                for (b, e) in row.iter().enumerate() {
                    println!("  [{},{}] {}", m.labels[a], m.labels[b], e);
                }
            }
            for i in f.failures() {
                println!("  {}: {}", i.label, i.residue.clone().unwrap_or_default());
            }
        }
    }
    Ok(f.verdict())
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let cfg = config(cli);
    match &cli.cmd {
        Cmd::Parse { file, emit } => {
            let s = script(cli, &read(file)?)?;
            if *emit {
                print!("{}", dsl::serialize_universe(&s.universe));
            } else {
                let u = &s.universe;
                println!("presentations: {}", u.presentations.keys().cloned().collect::<Vec<_>>().join(", "));
                println!("maps: {}", u.maps.keys().cloned().collect::<Vec<_>>().join(", "));
                for su in &s.suites {
                    println!("suite {}: {} checks", su.name, su.checks.len());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Nf { alg, expr } => {
            let s = script(cli, "")?;
            let cx = Contexts::new(Arc::new(s.universe), cfg.clone());
            match cfg.mode {
                Mode::Symbolic => print_nf(cx.symbolic().map_err(|e| e.to_string())?, alg, expr, cfg.trace)?,
                Mode::Specialized => {
                    for k in 0..cx.points.len() {
                        print_nf(cx.specialized(k).map_err(|e| e.to_string())?, alg, expr, cfg.trace && k == 0)?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check { identity } => {
            let s = script(cli, &format!("check identity {identity}"))?;
            let checks = s.all_checks();
            let last = checks.last().copied().ok_or("no check parsed")?;
            let r = run_checks(Arc::new(s.universe.clone()), "check", &[last], cfg);
            emit(cli, &r)?;
            Ok(verdict_code(r.verdict))
        }
        Cmd::Suite { file, suite } => {
            let s = script(cli, &read(file)?)?;
            let (name, checks) = match suite {
                Some(n) => (n.clone(), s.suite(n).map_err(|e| e.to_string())?.checks.iter().collect::<Vec<_>>()),
                None => ("all".to_string(), s.all_checks()),
            };
            let r = run_checks(Arc::new(s.universe.clone()), &name, &checks, cfg);
            emit(cli, &r)?;
            Ok(verdict_code(r.verdict))
        }
        Cmd::Idempotent { comodule, closed } => {
            let s = script(cli, "")?;
            let cx = Contexts::new(Arc::new(s.universe), cfg.clone());
            let v = match cfg.mode {
                Mode::Symbolic => print_idempotent(cx.symbolic().map_err(|e| e.to_string())?, cli, comodule, *closed)?,
                Mode::Specialized => {
                    let mut v = Verdict::Pass;
                    for k in 0..cx.points.len() {
                        v = v.and(print_idempotent(cx.specialized(k).map_err(|e| e.to_string())?, cli, comodule, *closed)?);
                    }
                    v
                }
            };
            Ok(verdict_code(v))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("qhopf: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use flexicolor::graph::ColoringMode;
use flexicolor::io::{generate, read_instance, serialize_instance, solve_instance, verify_result, Instance, Method, ResultDoc, SolveOptions};
use flexicolor::Error;

#[derive(Parser)]
#[command(name = "flexicolor", version, about = "Flexible list coloring solvers with certified bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndependentSet {
    Greedy,
    Brooks,
}

#[derive(Subcommand)]
enum Command {
    /// Write a fixture or a random instance, e.g. `fig2` or `random-ktree:k=2,n=50`.
    Generate {
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a solver. Several instances run in parallel; `--out` is then a directory.
    Solve {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "brooks")]
        independent_set: IndependentSet,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimum by exhaustive search.
    Oracle {
        instance: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a result document against its instance.
    Verify { instance: PathBuf, result: PathBuf },
}

fn parse_method(s: &str) -> Result<Method, String> {
    match s.parse::<Method>() {
        Ok(Method::Oracle) | Err(_) => {
            let names: Vec<&str> = Method::SOLVERS.iter().map(|m| m.name()).collect();
            Err(format!("expected one of {}", names.join(", ")))
        }
        Ok(m) => Ok(m),
    }
}

enum Failure {
    Lib(Error),
    Io(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn report(&self) {
        match self {
            Failure::Lib(e) => eprintln!("error[{}]: {e}", e.code()),
            Failure::Io(e) => eprintln!("error[io]: {e:#}"),
        }
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let name = path.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned());
    Ok(read_instance(&name, &text)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_one(path: &Path, opts: &SolveOptions) -> Result<ResultDoc, Failure> {
    let inst = load(path)?;
    Ok(solve_instance(&inst, opts)?)
}

fn solve(instances: &[PathBuf], opts: SolveOptions, out: Option<&Path>) -> ExitCode {
    if instances.len() == 1 {
        return match run_one(&instances[0], &opts).and_then(|d| {
            emit(out, &d.to_toml())?;
            Ok(d)
        }) {
            Ok(d) if d.meets_bound => ExitCode::SUCCESS,
            Ok(_) => ExitCode::from(1),
            Err(e) => {
                e.report();
                ExitCode::from(2)
            }
        };
    }
    if let Some(dir) = out {
        if let Err(e) = fs::create_dir_all(dir) {
            eprintln!("error[io]: creating {}: {e}", dir.display());
            return ExitCode::from(2);
        }
    }
    let results: Vec<Result<ResultDoc, Failure>> = std::thread::scope(|s| {
        let handles: Vec<_> = instances.iter().map(|p| s.spawn(move || run_one(p, &opts))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut code = 0u8;
    for (path, r) in instances.iter().zip(results) {
        let written = r.and_then(|d| {
            match out {
                Some(dir) => {
                    let stem = path.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned());
                    emit(Some(&dir.join(format!("{stem}.result.toml"))), &d.to_toml())?;
                }
                None => println!("# {}\n{}", path.display(), d.to_toml()),
            }
            Ok(d.meets_bound)
        });
        match written {
            Ok(true) => {}
            Ok(false) => code = code.max(1),
            Err(e) => {
                eprint!("{}: ", path.display());
                e.report();
                code = 2;
            }
        }
    }
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Generate { spec, seed, out } => {
            let inst = generate(&spec, seed)?;
            emit(out.as_deref(), &serialize_instance(&inst))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { instances, method, seed, independent_set, budget, out } => {
            let mode = match independent_set {
                IndependentSet::Greedy => ColoringMode::Greedy,
                IndependentSet::Brooks => ColoringMode::Brooks,
            };
            Ok(solve(&instances, SolveOptions { method, mode, seed, budget }, out.as_deref()))
        }
        Command::Oracle { instance, budget, out } => {
            let inst = load(&instance)?;
            let opts = SolveOptions { budget, ..SolveOptions::new(Method::Oracle) };
            emit(out.as_deref(), &solve_instance(&inst, &opts)?.to_toml())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { instance, result } => {
            let inst = load(&instance)?;
            let text = fs::read_to_string(&result).with_context(|| format!("reading {}", result.display()))?;
            let doc = ResultDoc::from_toml(&text)?;
            match verify_result(&doc, &inst) {
                Ok(()) => {
                    println!("ok: {} satisfied {} of {}, certified {}", doc.method, doc.satisfied, doc.total, doc.certified);
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("invalid[{}]: {e}", e.code());
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|e| {
        e.report();
        ExitCode::from(2)
    })
}

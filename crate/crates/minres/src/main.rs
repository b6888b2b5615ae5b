use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use minres::cli::{pwl_csv, render_json, render_text, run, run_batch, Algorithm, RunConfig};
use minres::MinresError;

#[derive(Parser)]
#[command(name = "minres", version, about = "Minimal resultant loci of rational maps over Q_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    A,
    B,
    Both,
    Auto,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Algorithm {
        match a {
            AlgArg::A => Algorithm::A,
            AlgArg::B => Algorithm::B,
            AlgArg::Both => Algorithm::Both,
            AlgArg::Auto => Algorithm::Auto,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one map.
    Analyze {
        /// The map, e.g. "(z^3-5)/z^2" or "F=[1,0,0,-5];G=[0,1,0,0]".
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value = "auto")]
        algorithm: AlgArg,
        /// p-adic working precision; chosen from the resultant when omitted.
        #[arg(long)]
        precision: Option<i64>,
        /// Largest extension degree allowed for root fields.
        #[arg(long)]
        max_ext_degree: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Write the per-path piecewise linear functions as CSV.
        #[arg(long)]
        emit_pwl: Option<String>,
    },
    /// Analyze every "<prime> <map>" line of a file.
    Batch {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value = "auto")]
        algorithm: AlgArg,
        #[arg(long)]
        precision: Option<i64>,
        #[arg(long)]
        json: bool,
    },
}

fn fail(e: &MinresError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { phi, prime, algorithm, precision, max_ext_degree, json, emit_pwl } => {
            let cfg = RunConfig { prime, algorithm: algorithm.into(), precision, max_ext_degree };
            let out = match run(&cfg, &phi) {
                Ok(o) => o,
                Err(e) => return fail(&e),
            };
            if let Some(path) = emit_pwl {
                if let Err(e) = fs::write(&path, pwl_csv(&out.per_path)) {
                    return fail(&MinresError::Invalid(format!("cannot write {path}: {e}")));
                }
            }
            if json {
                println!("{}", render_json(&out.report));
            } else {
                print!("{}", render_text(&out.report));
            }
            ExitCode::SUCCESS
        }
        Command::Batch { input, algorithm, precision, json } => {
            let src = match fs::read_to_string(&input) {
                Ok(s) => s,
                Err(e) => return fail(&MinresError::Invalid(format!("cannot read {input}: {e}"))),
            };
            let lines = run_batch(&src, algorithm.into(), precision);
            let mut code = 0;
            for l in &lines {
                code = code.max(l.exit_code);
                if json {
                    println!("{}", serde_json::to_string(l).expect("line serializes"));
                } else {
                    match (&l.report, &l.error) {
                        (Some(r), _) => print!("# line {}\n{}", l.line, render_text(r)),
                        (None, Some(e)) => println!("# line {}\nerror: {e}", l.line),
                        (None, None) => {}
                    }
                }
            }
            ExitCode::from(code as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chainlift::chain::verify_certificate_json;
use chainlift::session::{
    all_passed, parse_session, render_json, render_text, run_script, RunOptions,
};
use chainlift::MonomialOrder;

#[derive(Parser)]
#[command(name = "chainlift", version = chainlift::VERSION, about = "Contractions, prime chains and obstruction certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a session file.
    Run {
        file: PathBuf,
        /// Run a single task.
        #[arg(long)]
        task: Option<String>,
        #[arg(long)]
        json: bool,
        /// Override every task's exponent bound.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long)]
        parallel: bool,
        /// Write obstruction certificates to DIR/<task>.cert.json.
        #[arg(long, value_name = "DIR")]
        emit_certs: Option<PathBuf>,
    },
    /// Re-check a certificate file.
    VerifyCert {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the reduced Groebner basis of a declared ideal.
    Gb {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
    },
    Version,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Lex,
    Grlex,
    Grevlex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Grlex => MonomialOrder::GrLex,
            OrderArg::Grevlex => MonomialOrder::GrevLex,
        }
    }
}

const USAGE: u8 = 2;

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        ExitCode::from(USAGE)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) | Err(code) => code,
    }
}

fn run(command: Command) -> Result<ExitCode, ExitCode> {
    match command {
        Command::Run {
            file,
            task,
            json,
            bound,
            parallel,
            emit_certs,
        } => {
            let script = parse_session(&read(&file)?).map_err(|e| {
                eprintln!("error: {}: {e}", file.display());
                ExitCode::from(USAGE)
            })?;
            let opts = RunOptions {
                task,
                bound,
                parallel,
                emit_certs,
            };
            let reports = run_script(&script, &opts).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(USAGE)
            })?;
            print!(
                "{}",
                if json {
                    render_json(&reports)
                } else {
                    render_text(&reports)
                }
            );
            Ok(if all_passed(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::VerifyCert { file, json } => {
            let check = verify_certificate_json(&read(&file)?).map_err(|e| {
                eprintln!("error: {}: {e}", file.display());
                ExitCode::from(USAGE)
            })?;
            let ok = check.is_valid();
            if json {
                let doc = serde_json::json!({
                    "file": file.display().to_string(),
                    "identity": check.identity.is_valid(),
                    "hash_matches": check.hash_matches,
                    "valid": ok,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializes")
                );
            } else {
                println!(
                    "{}: {}",
                    file.display(),
                    if ok { "valid" } else { "INVALID" }
                );
                println!("  identity: {}", check.identity);
                println!(
                    "  hash: {}",
                    if check.hash_matches {
                        "matches"
                    } else {
                        "differs"
                    }
                );
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Gb { file, ideal, order } => {
            let script = parse_session(&read(&file)?).map_err(|e| {
                eprintln!("error: {}: {e}", file.display());
                ExitCode::from(USAGE)
            })?;
            let Some(i) = script.ideal(&ideal) else {
                eprintln!("error: no ideal named `{ideal}`");
                return Err(ExitCode::from(USAGE));
            };
            let gb = i.groebner(order.into());
            for g in gb.elements() {
                println!("{g}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Version => {
            println!("chainlift {}", chainlift::VERSION);
            Ok(ExitCode::SUCCESS)
        }
    }
}

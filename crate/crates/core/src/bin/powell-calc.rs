use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use powell_calc::braid::{framed_of_word, perm_of_word};
use powell_calc::dihedral::DihElement;
use powell_calc::modp::{self, reduce_mod_p, StabilizerChain};
use powell_calc::scenario::{self, all_passed, bundled, emit_report, Format, Scenario, BUNDLED_NAMES};
use powell_calc::symplectic::{eval_sp, SymplecticMatrix};
use powell_calc::Word;

#[derive(Parser)]
#[command(name = "powell-calc", version, about = "Exact checks for Powell-group identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Perm,
    Framed,
    Sp,
    Dih,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Powell,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (a path, or a bundled name)
    Verify {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Evaluate a word in one representation
    Eval {
        #[arg(long, value_enum)]
        rep: Rep,
        #[arg(long, default_value_t = 0)]
        genus: usize,
        #[arg(long)]
        word: String,
    },
    /// Decide membership of a matrix (file) or word mod p
    Membership {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "powell")]
        subgroup: Group,
        #[arg(long)]
        target: String,
    },
    /// Order of a subgroup mod p
    Order {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        p: u32,
        #[arg(long, value_enum, default_value = "powell")]
        subgroup: Group,
    },
    /// Check a scenario file for missing anchors and schema errors
    Lint { file: String },
    /// Run one bundled scenario by id, or a whole bundled file by name
    Check {
        #[arg(long)]
        scenario: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

/// Error with the exit code to report.
struct Failure(u8, String);

fn usage(message: impl ToString) -> Failure {
    Failure(2, message.to_string())
}

fn read_scenarios(file: &str) -> Result<String, Failure> {
    if !Path::new(file).exists() {
        if let Some(text) = bundled(file) {
            return Ok(text.to_string());
        }
    }
    std::fs::read_to_string(file).map_err(|e| usage(format!("{file}: {e}")))
}

fn print_reports(reports: &[scenario::Report], format: OutputFormat) -> u8 {
    let format = match format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let mut out = emit_report(reports, format);
    if matches!(format, Format::Json) {
        out.push(b'\n');
    }
    print!("{}", String::from_utf8_lossy(&out));
    if all_passed(reports) {
        0
    } else {
        1
    }
}

fn chain(genus: usize, p: u32, subgroup: Group) -> Result<StabilizerChain, Failure> {
    match subgroup {
        Group::Powell => modp::powell_subgroup(genus, p),
        Group::Full => modp::full_group(genus, p),
    }
    .map_err(usage)
}

fn parse_word(text: &str) -> Result<Word, Failure> {
    Word::parse(text).map_err(usage)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify { file, format, jobs } => {
            let text = read_scenarios(&file)?;
            let reports = scenario::run_scenario_text(&text, jobs.max(1)).map_err(usage)?;
            Ok(print_reports(&reports, format))
        }
        Command::Eval { rep, genus, word } => {
            let w = parse_word(&word)?;
            match rep {
                Rep::Perm => println!("{}", perm_of_word(genus, &w).map_err(usage)?),
                Rep::Framed => println!("{}", framed_of_word(genus, &w).map_err(usage)?),
                Rep::Sp => print!("{}", eval_sp(genus, &w).map_err(usage)?.to_file_string()),
                Rep::Dih => println!("{}", DihElement::of_word(&w).map_err(usage)?),
            }
            Ok(0)
        }
        Command::Membership { genus, p, subgroup, target } => {
            let m = if Path::new(&target).is_file() {
                let text = std::fs::read_to_string(&target).map_err(|e| usage(format!("{target}: {e}")))?;
                SymplecticMatrix::parse_file(&text).map_err(|e| usage(format!("{target}: {e}")))?
            } else {
                eval_sp(genus, &parse_word(&target)?).map_err(usage)?
            };
            if m.genus() != genus {
                return Err(usage(format!("target has genus {}, expected {genus}", m.genus())));
            }
            let c = chain(genus, p, subgroup)?;
            let sift = c.sift(&reduce_mod_p(&m, p).map_err(usage)?).map_err(usage)?;
            println!("member: {}", sift.member);
            println!("subgroup order: {}", c.order());
            if !sift.member {
                println!("sift stopped at level {}; residue:\n{}", sift.level, sift.residue);
            }
            Ok(if sift.member { 0 } else { 1 })
        }
        Command::Order { genus, p, subgroup } => {
            let c = chain(genus, p, subgroup)?;
            println!("{}", c.order());
            Ok(0)
        }
        Command::Lint { file } => {
            let text = read_scenarios(&file)?;
            let problems = scenario::lint(&text).map_err(usage)?;
            for problem in &problems {
                println!("{problem}");
            }
            Ok(if problems.is_empty() { 0 } else { 1 })
        }
        Command::Check { scenario: name, format } => {
            let selected: Vec<Scenario> = if let Some(text) = bundled(&name) {
                scenario::parse_scenarios(text).map_err(usage)?
            } else {
                let mut found = Vec::new();
                for file in BUNDLED_NAMES {
                    let all = scenario::parse_scenarios(bundled(file).expect("bundled")).map_err(usage)?;
                    found.extend(all.into_iter().filter(|s| s.id == name));
                }
                if found.is_empty() {
                    return Err(usage(format!("no bundled scenario or file named `{name}`")));
                }
                found
            };
            Ok(print_reports(&scenario::run_all(&selected, 1), format))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

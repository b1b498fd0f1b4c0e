//! `rauzy`: invariants, normal forms and class computations for permutation
//! pairs. Pairs are written as two rows of letters, `"a b c / c b a"`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rauzy::classify::{canonical_form, canonical_form_extended, normalize_type, same_class, signature};
use rauzy::enumerate::{class_census, connect, write_census};
use rauzy::invariants::{arf_count_capped, m_value, p_list, s_map, y_map, LetterPerm, Scope};
use rauzy::switches::{format_switches, is_pwor, to_pwor};
use rauzy::verify::{run_all, VerifyConfig, DEFAULT_SEED};
use rauzy::{apply_path, Pair};

#[derive(Parser, Debug)]
#[command(name = "rauzy", version, about = "Rauzy classes of permutation pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Debug)]
struct ScopeArg {
    /// Use extended classes (left and right moves).
    #[arg(long)]
    extended: bool,
}

impl ScopeArg {
    fn scope(&self) -> Scope {
        if self.extended {
            Scope::Extended
        } else {
            Scope::Class
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// S, Y, M, P and the ARF count of a pair.
    Invariants {
        pair: String,
        /// Largest alphabet for which the ARF count is enumerated.
        #[arg(long, default_value_t = 24)]
        max_arf_n: usize,
    },
    /// Type, P, M and the canonical form of the class.
    Classify {
        pair: String,
        #[command(flatten)]
        scope: ScopeArg,
    },
    /// Walks to a PWOR pair, then to a typed pair, printing switches and moves.
    Normalize { pair: String },
    /// Whether two pairs lie in the same (extended) class, up to renaming.
    SameClass {
        first: String,
        second: String,
        #[command(flatten)]
        scope: ScopeArg,
    },
    /// A Rauzy path between two pairs of one labeled class, found by
    /// breadth-first search and replayed before printing. Class paths are
    /// shortest in cycles, not necessarily in moves.
    Connect {
        from: String,
        to: String,
        #[command(flatten)]
        scope: ScopeArg,
    },
    /// Census of all classes on `n` letters, one JSON line per class with --out.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        scope: ScopeArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Runs the acceptance suite with exhaustive checks capped at `n` letters.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        max_arf_n: usize,
    },
}

/// Failure modes, mapped to exit codes 1 and 2.
enum Failure {
    Input(String),
    Verification(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn parse(text: &str) -> Result<Pair, Failure> {
    let p = Pair::parse(text)?;
    if !p.is_irreducible() {
        return Err(Failure::Input(format!("{p} is reducible")));
    }
    Ok(p)
}

fn cycles(p: &Pair, s: &LetterPerm) -> Vec<String> {
    s.cycles(p)
        .iter()
        .map(|c| c.iter().map(|&l| p.token(l)).collect::<Vec<_>>().join(" "))
        .collect()
}

fn emit(json: bool, value: Value, text: String) {
    if json {
        println!("{value}");
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Invariants { pair, max_arf_n } => {
            let p = parse(&pair)?;
            let (s, y) = (cycles(&p, &s_map(&p)?), cycles(&p, &y_map(&p)?));
            let (m, pl) = (m_value(&p)?, p_list(&p)?);
            let arf = arf_count_capped(&p, max_arf_n).ok().map(|a| a.to_string());
            let blocks = is_pwor(&p).map(|d| d.blocks.iter().map(Vec::len).collect::<Vec<_>>());
            emit(
                json,
                json!({"pair": p.to_string(), "n": p.n(), "standard": p.is_standard(), "s": s, "y": y,
                       "m": m, "p": pl, "arf": arf, "pwor_blocks": blocks}),
                format!(
                    "pair      {p}\nstandard  {}\nS         ({})\nY         ({})\nM         {m}\nP         {pl:?}\nARF       {}\nblocks    {}",
                    p.is_standard(),
                    s.join(")("),
                    y.join(")("),
                    arf.as_deref().unwrap_or("(above --max-arf-n)"),
                    blocks.map_or("not PWOR".to_string(), |b| format!("{b:?}")),
                ),
            );
        }
        Command::Classify { pair, scope } => {
            let p = parse(&pair)?;
            let sig = signature(&p, scope.scope())?;
            let canon = match scope.scope() {
                Scope::Class => canonical_form(&p)?,
                Scope::Extended => canonical_form_extended(&p)?,
            };
            emit(
                json,
                json!({"type": sig.type_tag.to_string(), "p_list": sig.p_list, "m": sig.m_value,
                       "canonical": canon.to_string()}),
                format!("{sig}\ncanonical {canon}"),
            );
        }
        Command::Normalize { pair } => {
            let p = parse(&pair)?;
            let walk = to_pwor(&p)?;
            let norm = normalize_type(&p)?;
            if apply_path(&p, &walk.path)? != walk.pair || apply_path(&p, &norm.path)? != norm.pair {
                return Err(Failure::Verification(format!("normalization paths of {p} do not replay")));
            }
            emit(
                json,
                json!({"pwor": walk.pair.to_string(), "pwor_switches": format_switches(&walk.switches),
                       "pwor_path": walk.path.to_string(), "typed": norm.pair.to_string(),
                       "type": norm.type_tag.to_string(), "switches": format_switches(&norm.switches),
                       "path": norm.path.to_string()}),
                format!(
                    "PWOR      {}\n  switches {}\n  path     {}\ntyped     {} ({})\n  switches {}\n  path     {}",
                    walk.pair,
                    format_switches(&walk.switches),
                    walk.path,
                    norm.pair,
                    norm.type_tag,
                    format_switches(&norm.switches),
                    norm.path
                ),
            );
        }
        Command::SameClass { first, second, scope } => {
            let (p, q) = (parse(&first)?, parse(&second)?);
            let same = same_class(&p, &q, scope.scope())?;
            emit(json, json!({"same_class": same}), same.to_string());
        }
        Command::Connect { from, to, scope } => {
            let (p, q) = (parse(&from)?, parse(&to)?);
            let path = connect(&p, &q, scope.scope())?;
            let end = apply_path(&p, &path)?;
            if end != q {
                return Err(Failure::Verification(format!("path {path} ends at {end}, not {q}")));
            }
            emit(
                json,
                json!({"path": path.to_string(), "cycles": path.cycle_len(), "moves": path.move_count()}),
                if path.is_empty() { "(empty path)".to_string() } else { path.to_string() },
            );
        }
        Command::Enumerate { n, scope, out } => {
            let records = class_census(n, scope.scope())?;
            if let Some(file) = out {
                write_census(&records, BufWriter::new(File::create(&file)?))?;
                eprintln!("{} classes written to {file}", records.len());
            } else if json {
                write_census(&records, io::stdout().lock())?;
            } else {
                let mut w = io::stdout().lock();
                for r in &records {
                    writeln!(w, "{:>6}  {:>4}  {:<24} {}", r.size, r.standard_count, r.signature.to_string(), r.representative)?;
                }
                writeln!(w, "{} classes, {} permutations", records.len(), records.iter().map(|r| r.size).sum::<usize>())?;
            }
        }
        Command::Verify { n, seed, max_arf_n } => {
            let cfg = VerifyConfig { n_cap: n, seed, max_arf_n, ..VerifyConfig::default() };
            let reports = run_all(&cfg);
            for r in &reports {
                if json {
                    println!("{}", serde_json::to_string(r)?);
                } else {
                    println!("{r}");
                }
            }
            let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
            if !failed.is_empty() {
                return Err(Failure::Verification(format!("failing criteria: {failed:?}")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

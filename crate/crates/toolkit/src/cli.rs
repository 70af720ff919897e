//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 usage, parse or
//! I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hyperkit_core::ablation::{ablate, ablate_all, parse_axiom, AblationError, AblationResult};
use hyperkit_core::elemset::MAX_CARRIER;
use hyperkit_core::enumeration::{
    canonical_form, enumerate_bjoin, enumerate_lmosaic, Bounds, RhoMode,
};
use hyperkit_core::equivalence::{assoc_scan, roundtrip_bjoin, roundtrip_lmosaic, verify_family};
use hyperkit_core::{
    check_bjoin, check_lmosaic, extract_bjoin, nakano, ConstructionError, Structure,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::format::{parse_structure, serialize_structure, EXTENSION};
use crate::hasse::emit_hasse;

pub const MAX_N_VAR: &str = "HYPERKIT_MAX_N";

#[derive(Debug, Parser)]
#[command(
    name = "hyperkit",
    version,
    about = "Check, construct and enumerate finite semilattices and L-mosaics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the axiom checks for a structure document.
    Check {
        file: PathBuf,
        /// Require e⊕x = {x} instead of x ∈ e⊕x.
        #[arg(long)]
        strict_neutral: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build the L-mosaic of a semilattice.
    Nakano {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the semilattice of an L-mosaic.
    Extract {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a structure through both constructions and compare.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List every structure of size n up to isomorphism.
    Enumerate {
        kind: Kind,
        n: usize,
        #[arg(long)]
        count_only: bool,
        /// Write one document per class, named by a hash of its canonical form.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Search over every involution as ρ (L-mosaics only).
        #[arg(long)]
        general_rho: bool,
    },
    /// Check both constructions over every structure of size n.
    VerifyFamily {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Find structures of size n satisfying every axiom except one.
    Ablate {
        n: usize,
        axiom: String,
        /// Every class instead of the first found.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// First non-associative Nakano hyperoperation among sizes up to n.
    AssocScan { n: usize },
    /// Hasse diagram of the structure's order in DOT.
    Hasse {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Bjoin,
    Lmosaic,
}

enum Failure {
    /// A checked property does not hold. Output already explains it.
    Property(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let mut text = String::new();
    let result = bounds_from_env().and_then(|b| execute(cli.command, &b, &mut text));
    let _ = out.write_all(text.as_bytes());
    match result {
        Ok(()) => 0,
        Err(Failure::Property(msg)) => {
            let _ = err.write_all(msg.as_bytes());
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn bounds_from_env() -> Result<Bounds, Failure> {
    match std::env::var(MAX_N_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(Bounds::default()),
        Err(e) => Err(usage(format!("{MAX_N_VAR}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_CARRIER).contains(&n) => Ok(Bounds::uniform(n)),
            _ => Err(usage(format!(
                "{MAX_N_VAR} must be an integer from 1 to {MAX_CARRIER}, got {v:?}"
            ))),
        },
    }
}

fn read(path: &Path) -> Result<Structure, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_structure(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>, out: &mut String) -> Outcome {
    match output {
        Some(p) => {
            fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            out.push_str(text);
            Ok(())
        }
    }
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn construction_failure(e: ConstructionError) -> Failure {
    let detail = match &e {
        ConstructionError::NotASemilattice(r)
        | ConstructionError::NotAnLMosaic(r)
        | ConstructionError::Postcondition(r) => format!("{e}\n{r}"),
        ConstructionError::Extract(_) => format!("{e}\n"),
    };
    Failure::Property(detail)
}

fn execute(cmd: Command, bounds: &Bounds, out: &mut String) -> Outcome {
    match cmd {
        Command::Check {
            file,
            strict_neutral,
            json: as_json,
        } => {
            let s = read(&file)?;
            let report = match &s {
                Structure::BJoin(j) => check_bjoin(j),
                Structure::LMosaic(m) => check_lmosaic(m, strict_neutral),
            };
            if as_json {
                #[derive(Serialize)]
                struct Repr<'a> {
                    kind: &'a str,
                    pass: bool,
                    verdicts: &'a [hyperkit_core::Verdict],
                }
                out.push_str(&json(&Repr {
                    kind: s.kind(),
                    pass: report.all_pass(),
                    verdicts: &report.verdicts,
                }));
            } else {
                out.push_str(&report.to_string());
            }
            if report.all_pass() {
                Ok(())
            } else {
                Err(Failure::Property(String::new()))
            }
        }
        Command::Nakano { file, output } => match read(&file)? {
            Structure::BJoin(j) => {
                let m = nakano(&j).map_err(construction_failure)?;
                emit(&serialize_structure(&m.into()), output.as_deref(), out)
            }
            Structure::LMosaic(_) => Err(usage("nakano expects a bjoin document")),
        },
        Command::Extract { file, output } => match read(&file)? {
            Structure::LMosaic(m) => {
                let j = extract_bjoin(&m).map_err(construction_failure)?;
                emit(&serialize_structure(&j.into()), output.as_deref(), out)
            }
            Structure::BJoin(_) => Err(usage("extract expects an lmosaic document")),
        },
        Command::Roundtrip {
            file,
            json: as_json,
        } => {
            let diff = match read(&file)? {
                Structure::BJoin(j) => roundtrip_bjoin(&j),
                Structure::LMosaic(m) => roundtrip_lmosaic(&m),
            }
            .map_err(construction_failure)?;
            out.push_str(&if as_json {
                json(&diff)
            } else {
                diff.to_string()
            });
            if diff.is_identical() {
                Ok(())
            } else {
                Err(Failure::Property(String::new()))
            }
        }
        Command::Enumerate {
            kind,
            n,
            count_only,
            out_dir,
            general_rho,
        } => {
            let found: Vec<Structure> = match kind {
                Kind::Bjoin if general_rho => {
                    return Err(usage("--general-rho applies to lmosaic enumeration only"))
                }
                Kind::Bjoin => enumerate_bjoin(n, bounds)
                    .map_err(|e| usage(e.to_string()))?
                    .into_iter()
                    .map(Structure::from)
                    .collect(),
                Kind::Lmosaic => {
                    let mode = if general_rho {
                        RhoMode::Involutions
                    } else {
                        RhoMode::Identity
                    };
                    enumerate_lmosaic(n, bounds, mode)
                        .map_err(|e| usage(e.to_string()))?
                        .into_iter()
                        .map(Structure::from)
                        .collect()
                }
            };
            if count_only {
                let _ = writeln!(out, "{}", found.len());
                return Ok(());
            }
            match out_dir {
                Some(dir) => write_family(&dir, &found, out),
                None => {
                    for s in &found {
                        out.push_str(&serialize_structure(s));
                    }
                    Ok(())
                }
            }
        }
        Command::VerifyFamily { n, json: as_json } => {
            let summary = verify_family(n, bounds).map_err(|e| usage(e.to_string()))?;
            out.push_str(&if as_json {
                json(&summary)
            } else {
                summary.to_string()
            });
            if summary.ok() {
                Ok(())
            } else {
                Err(Failure::Property(String::new()))
            }
        }
        Command::Ablate {
            n,
            axiom,
            all,
            json: as_json,
        } => {
            let ax = parse_axiom(&axiom).map_err(ablation_failure)?;
            let results = if all {
                ablate_all(n, ax, bounds).map_err(ablation_failure)?
            } else {
                ablate(n, ax, bounds)
                    .map_err(ablation_failure)?
                    .into_iter()
                    .collect()
            };
            if as_json {
                out.push_str(&if all {
                    json(&results)
                } else {
                    json(&results.first())
                });
            } else if results.is_empty() {
                out.push_str("none\n");
            } else {
                for (i, r) in results.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&describe_ablation(r));
                }
            }
            Ok(())
        }
        Command::AssocScan { n } => {
            match assoc_scan(n, bounds).map_err(|e| usage(e.to_string()))? {
                None => out.push_str("none\n"),
                Some(w) => {
                    let (x, y, z) = w.triple;
                    let _ = writeln!(out, "size {} index {}", w.size, w.index);
                    let _ = writeln!(out, "triple ({x}, {y}, {z})");
                    let _ = writeln!(out, "(x+y)+z = {}", w.left);
                    let _ = writeln!(out, "x+(y+z) = {}", w.right);
                    out.push_str(&serialize_structure(&w.semilattice.into()));
                }
            }
            Ok(())
        }
        Command::Hasse { file, output } => {
            let s = read(&file)?;
            let dot = emit_hasse(&s).map_err(|r| {
                Failure::Property(format!("{} fails its axiom check\n{r}", s.kind()))
            })?;
            emit(&dot, output.as_deref(), out)
        }
    }
}

fn ablation_failure(e: AblationError) -> Failure {
    match e {
        AblationError::Lm4WithoutConsequence(_) => Failure::Property(format!("{e}\n")),
        other => usage(other.to_string()),
    }
}

fn describe_ablation(r: &AblationResult) -> String {
    let mut s = format!("dropped {}\n", r.dropped);
    s.push_str(&serialize_structure(&r.structure.clone().into()));
    if r.broken.is_empty() {
        s.push_str("broken: none\n");
    } else {
        s.push_str("broken:\n");
        for b in &r.broken {
            let _ = writeln!(s, "  {}  witness {}", b.property, b.witness);
        }
    }
    s
}

/// File name for a structure: a short hash of its canonical form.
pub fn family_file_name(s: &Structure) -> String {
    let digest = Sha256::digest(canonical_form(s).as_bytes());
    let hex: String = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
    format!("{hex}.{EXTENSION}")
}

fn write_family(dir: &Path, found: &[Structure], out: &mut String) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    for s in found {
        let path = dir.join(family_file_name(s));
        fs::write(&path, serialize_structure(s))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        let _ = writeln!(out, "{}", path.display());
    }
    Ok(())
}

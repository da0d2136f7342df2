//! `mfchern`: validate, build and check matrix factorizations stored as JSON.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage, parse and
//! I/O errors.

mod doc;
mod suite;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mfchern::chern::{chern_character, Connection};
use mfchern::exterior::{parse_form, print_form};
use mfchern::ideals::form_normal_form;
use mfchern::mf::{fold_complex, homotopy_defect};
use mfchern::ring::{RingCtx, RingMap};

use doc::{load, load_connection, load_matfac, mf_error, render, CliError, Document};
use suite::Suite;

#[derive(Parser)]
#[command(
    name = "mfchern",
    version,
    about = "Matrix factorizations and their Chern characters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a document is well formed and its identities hold.
    Validate { file: PathBuf },
    /// Print the Chern character, one normal form per even degree.
    Chern {
        file: PathBuf,
        /// Connection document {"gamma0": .., "gamma1": ..}; defaults to zero.
        #[arg(long)]
        gamma: Option<PathBuf>,
    },
    /// Tensor product of two factorizations over the same ring.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Cone of a strict morphism.
    Cone {
        morphism: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shift: (A, B) becomes (-B, -A).
    Shift {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Fold a bounded complex into a factorization of 0.
    Fold {
        complex: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Push a factorization forward along a ring map.
    Pushforward {
        file: PathBuf,
        ringmap: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Move a factorization into a ring with more (or renamed) variables.
    Embed {
        file: PathBuf,
        /// Target variables, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Rename a source variable, `old=new`; repeatable.
        #[arg(long, value_parser = parse_rename)]
        rename: Vec<(String, String)>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites on a document or every `.json` file in a directory.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Normal form of a form modulo the image of df∧.
    Nf {
        #[arg(long, default_value = "0")]
        potential: String,
        #[arg(long)]
        form: String,
        /// Ring variables; inferred from the inputs in order of appearance if omitted.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
}

fn parse_rename(s: &str) -> Result<(String, String), String> {
    let (a, b) = s
        .split_once('=')
        .ok_or_else(|| format!("expected old=new, got `{s}`"))?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            // a closed pipe is not worth a panic
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn library(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Identifiers in order of first appearance; in a form, `dx` contributes `x`.
fn infer_vars(potential: &str, form: &str) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    let mut scan = |text: &str, is_form: bool| {
        let mut chars = text.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            if !(c.is_alphabetic() || c == '_') {
                continue;
            }
            let mut end = start + c.len_utf8();
            while let Some(&(i, c)) = chars.peek() {
                if !(c.is_alphanumeric() || c == '_') {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let word = &text[start..end];
            let name = match word.strip_prefix('d') {
                Some(rest) if is_form && !rest.is_empty() && !vars.iter().any(|v| v == word) => {
                    rest
                }
                _ => word,
            };
            if !vars.iter().any(|v| v == name) {
                vars.push(name.to_string());
            }
        }
    };
    scan(potential, false);
    scan(form, true);
    vars
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Validate { file } => {
            match load(&file)? {
                Document::Homotopy { h, alpha, beta } => {
                    if let Some(m) = homotopy_defect(&h, &alpha, &beta).map_err(mf_error)? {
                        return Err(CliError::Invalid(format!("{}: {m}", file.display())));
                    }
                }
                Document::Pair(e, f) if e.ctx() != f.ctx() => {
                    return Err(CliError::Input(format!(
                        "{}: pair members live in different rings",
                        file.display()
                    )));
                }
                _ => {}
            }
            println!("OK");
        }
        Command::Chern { file, gamma } => {
            let m = load_matfac(&file)?;
            let conn = match gamma {
                Some(g) => load_connection(&g, &m)?,
                None => Connection::trivial(&m),
            };
            println!("{}", chern_character(&m, &conn).map_err(library)?);
        }
        Command::Tensor {
            left,
            right,
            output,
        } => {
            let (e, f) = (load_matfac(&left)?, load_matfac(&right)?);
            if e.ctx() != f.ctx() {
                return Err(CliError::Input(
                    "factors live in different rings; move them into a common ring with `embed`"
                        .into(),
                ));
            }
            emit(&render(&e.tensor(&f).map_err(mf_error)?), output.as_deref())?;
        }
        Command::Cone { morphism, output } => match load(&morphism)? {
            Document::Morphism(theta) => emit(&render(&theta.cone().object), output.as_deref())?,
            other => {
                return Err(CliError::Input(format!(
                    "expected a morphism document, found {}",
                    other.kind()
                )))
            }
        },
        Command::Shift { file, output } => {
            emit(&render(&load_matfac(&file)?.shift()), output.as_deref())?
        }
        Command::Fold { complex, output } => match load(&complex)? {
            Document::Complex(c) => emit(&render(&fold_complex(&c)), output.as_deref())?,
            other => {
                return Err(CliError::Input(format!(
                    "expected a complex document, found {}",
                    other.kind()
                )))
            }
        },
        Command::Pushforward {
            file,
            ringmap,
            output,
        } => {
            let m = load_matfac(&file)?;
            let Document::RingMap(phi) = load(&ringmap)? else {
                return Err(CliError::Input(format!(
                    "{}: expected a ringmap document",
                    ringmap.display()
                )));
            };
            emit(
                &render(&m.map_ring(&phi).map_err(mf_error)?),
                output.as_deref(),
            )?;
        }
        Command::Embed {
            file,
            vars,
            rename,
            output,
        } => {
            let m = load_matfac(&file)?;
            let target = RingCtx::new(&vars, m.ctx().order()).map_err(library)?;
            let renamed = |v: &str| {
                rename
                    .iter()
                    .find(|(a, _)| a == v)
                    .map_or(v.to_string(), |(_, b)| b.clone())
            };
            let phi = RingMap::inclusion(m.ctx().clone(), target, renamed).map_err(library)?;
            emit(
                &render(&m.map_ring(&phi).map_err(mf_error)?),
                output.as_deref(),
            )?;
        }
        Command::Check { path, suite, seed } => {
            let files = if path.is_dir() {
                let mut files: Vec<PathBuf> = std::fs::read_dir(&path)
                    .map_err(|source| CliError::Io {
                        path: path.display().to_string(),
                        source,
                    })?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "json"))
                    .collect();
                files.sort();
                files
            } else {
                vec![path]
            };
            let mut out = format!(
                "mfchern check: suite {suite:?}, seed {seed}, {} document(s)\n",
                files.len()
            )
            .to_lowercase();
            let mut failed = false;
            for file in &files {
                let name = file.file_name().map_or_else(
                    || file.display().to_string(),
                    |n| n.to_string_lossy().into(),
                );
                match load(file) {
                    Ok(d) => {
                        let report = suite::check(&d, suite, seed);
                        failed |= report.failed();
                        report.render(&name, &mut out);
                    }
                    // an invalid document fails its validation property; unreadable input aborts
                    Err(CliError::Invalid(why)) => {
                        failed = true;
                        out.push_str(&format!("{name}: validation: FAIL: {why}\n"));
                    }
                    Err(e) => return Err(e),
                }
            }
            out.push_str(if failed {
                "result: FAIL\n"
            } else {
                "result: pass\n"
            });
            emit(&out, None)?;
            return Ok(!failed);
        }
        Command::Nf {
            potential,
            form,
            vars,
        } => {
            let vars = vars.unwrap_or_else(|| infer_vars(&potential, &form));
            let ctx = RingCtx::with_vars(&vars).map_err(library)?;
            let f = ctx.parse(&potential).map_err(library)?;
            let w = parse_form(&form, &ctx).map_err(library)?;
            let nf = form_normal_form(&w, &f, ctx.order()).map_err(library)?;
            println!("{}", print_form(&nf, &ctx));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

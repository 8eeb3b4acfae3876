//! Command line front end: parses input files, dispatches to the
//! computation modules, renders text or machine readable output.
//!
//! Exit codes: 0 success, 1 computation-level error (a precondition of the
//! requested operation fails on well-formed input), 2 input or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::classes::parse_class_expr;
use crate::degeneration::{middle_hodge_numbers, Stratification};
use crate::equivariant::thom_sebastiani;
use crate::files::{
    load_json, parse_json, DegenerationFile, EquivariantPieceRecord, FileError, JordanFile,
    MoveFile, PolyFile, SpectrumFile, WeightDimsFile,
};
use crate::ring::{parse_polynomial, BidegreePolynomial, UnivariatePolynomial};
use crate::spectra::{m_invariants, saito_spectrum, varchenko_spectrum, WeightDims};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human readable, canonical polynomial strings and aligned tables.
    Text,
    /// JSON mirroring the input schemas so pipelines compose.
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "hodgefibre",
    version,
    about = "Hodge-Euler polynomials of nearby and vanishing fibres, monodromy Jordan blocks, and singularity spectra"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a polynomial expression in u and v.
    Poly {
        expr: String,
        /// Invert both variables (u -> u^-1, v -> v^-1); applies first.
        #[arg(long)]
        invert: bool,
        /// Set v = 1, yielding a univariate polynomial in t.
        #[arg(long)]
        specialize_v: bool,
    },
    /// Evaluate a variety class expression to its Hodge-Euler polynomial.
    Class { expr: String },
    /// Nearby fibre of a degeneration given by a strata file.
    Nearby {
        file: PathBuf,
        /// Recompute through open strata and fail if the forms disagree.
        #[arg(long)]
        check_open: bool,
        /// Reduce to the weight dims of the middle cohomology H^n of a
        /// smooth fibre of relative dimension n.
        #[arg(long, value_name = "n")]
        middle: Option<u32>,
    },
    /// Vanishing fibre of a degeneration given by a strata file.
    Vanishing { file: PathBuf },
    /// Rewrite a strata file under blow-up of an admissible center.
    Blowup { file: PathBuf, move_file: PathBuf },
    /// Jordan block counts of the monodromy from weight dims given as a
    /// file path or inline JSON.
    Jordan { input: String },
    /// Spectrum of an isolated singularity from the equivariant Hodge
    /// number polynomial in a poly file.
    Spectrum {
        file: PathBuf,
        /// Saito's normalization: the univariate specialization v = 1.
        #[arg(long, group = "view")]
        saito: bool,
        /// Varchenko's normalization: t^-1 times Saito's.
        #[arg(long, group = "view")]
        varchenko: bool,
        /// Spectral pairs: integral alpha moves from w to w + 1.
        #[arg(long, group = "view")]
        pairs: bool,
        /// Characteristic pairs (n - alpha, w) for ambient dimension n + 1.
        #[arg(long = "char", group = "view", value_name = "n")]
        char_dim: Option<u32>,
    },
    /// Thom-Sebastiani: vanishing-fibre polynomial of a join f + g from the
    /// equivariant structures of f and g.
    Ts { file_a: PathBuf, file_b: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn computation_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_COMPUTATION,
        message: message.into(),
    }
}

fn file_failure(e: FileError) -> Failure {
    input_error(e.to_string())
}

/// Runs the front end against explicit argument and output streams, so the
/// whole binary is drivable in process. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(&cli) {
        Ok(rendered) => {
            let _ = writeln!(out, "{rendered}");
            EXIT_OK
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Poly {
            expr,
            invert,
            specialize_v,
        } => {
            let mut p =
                parse_polynomial(expr).map_err(|e| input_error(format!("expression: {e}")))?;
            if *invert {
                p = p.invert_vars();
            }
            if *specialize_v {
                Ok(render_univariate(&p.specialize_v(), format))
            } else {
                Ok(render_poly(&p, format))
            }
        }
        Command::Class { expr } => {
            let class =
                parse_class_expr(expr).map_err(|e| input_error(format!("expression: {e}")))?;
            let p = class.eval().map_err(|e| computation_error(e.to_string()))?;
            Ok(render_poly(&p, format))
        }
        Command::Nearby {
            file,
            check_open,
            middle,
        } => {
            let model = load_degeneration(file)?;
            let psi = model.nearby_fibre();
            if *check_open {
                let open = model.nearby_fibre_open();
                if open != psi {
                    return Err(computation_error(format!(
                        "closed strata form {psi} disagrees with open strata form {open}"
                    )));
                }
            }
            match middle {
                Some(n) => {
                    let wd = middle_weight_dims(&psi, *n)?;
                    Ok(render_weight_dims(&wd, format))
                }
                None => Ok(render_poly(&psi, format)),
            }
        }
        Command::Vanishing { file } => {
            let model = load_degeneration(file)?;
            let phi = model
                .vanishing_fibre()
                .map_err(|e| computation_error(e.to_string()))?;
            Ok(render_poly(&phi, format))
        }
        Command::Blowup { file, move_file } => {
            let model = load_degeneration(file)?;
            let record: MoveFile = load_json(move_file).map_err(file_failure)?;
            let center = record
                .to_center()
                .map_err(|m| input_error(format!("{}: {m}", move_file.display())))?;
            let transformed = model
                .blowup_transform(&center)
                .map_err(|e| computation_error(e.to_string()))?;
            match format {
                Format::Text => Ok(render_stratification_text(&transformed)),
                Format::Machine => Ok(render_json(&DegenerationFile::from_stratification(
                    &transformed,
                ))),
            }
        }
        Command::Jordan { input } => {
            let record: WeightDimsFile = if input.trim_start().starts_with('{') {
                parse_json(input, "inline weight dims").map_err(file_failure)?
            } else {
                load_json(Path::new(input)).map_err(file_failure)?
            };
            let (k, g) = record
                .parsed_dims()
                .map_err(|m| input_error(format!("weight dims: {m}")))?;
            let wd = WeightDims::new(k, g).map_err(|e| computation_error(e.to_string()))?;
            let counts = wd
                .jordan_block_counts()
                .map_err(|e| computation_error(e.to_string()))?;
            match format {
                Format::Text => {
                    if counts.is_empty() {
                        Ok("(no blocks)".to_string())
                    } else {
                        Ok(counts
                            .iter()
                            .map(|(m, c)| format!("size {m}: {c}"))
                            .collect::<Vec<_>>()
                            .join("\n"))
                    }
                }
                Format::Machine => Ok(render_json(&JordanFile::from_counts(&counts))),
            }
        }
        Command::Spectrum {
            file,
            saito,
            varchenko,
            pairs,
            char_dim,
        } => {
            let record: PolyFile = load_json(file).map_err(file_failure)?;
            let p = record
                .to_polynomial()
                .map_err(|m| input_error(format!("{}: {m}", file.display())))?;
            if *saito {
                return Ok(render_univariate(&saito_spectrum(&p), format));
            }
            if *varchenko {
                return Ok(render_univariate(&varchenko_spectrum(&p), format));
            }
            let mut table = m_invariants(&p).map_err(|e| computation_error(e.to_string()))?;
            if *pairs {
                table = table.spectral_pairs();
            } else if let Some(n) = char_dim {
                table = table.characteristic_pairs(*n);
            }
            match format {
                Format::Text => Ok(table.to_string()),
                Format::Machine => Ok(render_json(&SpectrumFile::from_table(&table))),
            }
        }
        Command::Ts { file_a, file_b } => {
            let pf = load_equivariant(file_a)?;
            let pg = load_equivariant(file_b)?;
            let product = thom_sebastiani(&pf, &pg);
            Ok(render_poly(&product, format))
        }
    }
}

fn load_degeneration(path: &Path) -> Result<Stratification, Failure> {
    let file: DegenerationFile = load_json(path).map_err(file_failure)?;
    file.to_stratification()
        .map_err(|m| input_error(format!("{}: {m}", path.display())))
}

fn load_equivariant(path: &Path) -> Result<BidegreePolynomial, Failure> {
    let pieces: Vec<EquivariantPieceRecord> = load_json(path).map_err(file_failure)?;
    let phi = crate::files::to_equivariant(&pieces)
        .map_err(|m| input_error(format!("{}: {m}", path.display())))?;
    Ok(phi.hodge_number_polynomial())
}

fn middle_weight_dims(psi: &BidegreePolynomial, n: u32) -> Result<WeightDims, Failure> {
    let middle = middle_hodge_numbers(psi, n).map_err(|e| computation_error(e.to_string()))?;
    let dims = middle
        .weight_dimensions()
        .map_err(|e| computation_error(e.to_string()))?;
    WeightDims::new(i64::from(n), dims).map_err(|e| computation_error(e.to_string()))
}

fn render_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("schema types serialize infallibly")
}

fn render_poly(p: &BidegreePolynomial, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Machine => render_json(&PolyFile::from_polynomial(p)),
    }
}

fn render_univariate(p: &UnivariatePolynomial, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Machine => render_json(&PolyFile {
            poly: p.to_string(),
        }),
    }
}

fn render_weight_dims(wd: &WeightDims, format: Format) -> String {
    match format {
        Format::Text => {
            let mut lines = vec![format!("k = {}", wd.k())];
            for (w, d) in wd.dims() {
                lines.push(format!("g({w}) = {d}"));
            }
            lines.join("\n")
        }
        Format::Machine => render_json(&WeightDimsFile::from_weight_dims(wd)),
    }
}

fn render_stratification_text(s: &Stratification) -> String {
    let subset_label =
        |set: &crate::degeneration::ComponentSet| set.iter().cloned().collect::<Vec<_>>().join(",");
    let mut lines = vec!["components:".to_string()];
    for c in s.components() {
        lines.push(format!("  {} (multiplicity {})", c.id, c.multiplicity));
    }
    lines.push("strata:".to_string());
    for (subset, class) in s.cover_strata() {
        lines.push(format!("  D({}) = {}", subset_label(subset), class));
    }
    if let Some(reduced) = s.reduced_strata() {
        lines.push("reduced strata:".to_string());
        for (subset, class) in reduced {
            lines.push(format!("  E({}) = {}", subset_label(subset), class));
        }
    }
    if let Some(n) = s.relative_dim() {
        lines.push(format!("relative_dim: {n}"));
    }
    lines.join("\n")
}

//! The `odesign` command line.
//!
//! Exit status: 0 on success, 1 when a design fails verification (or the
//! input file does not hold a well-formed design), 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{comparison_table, delay_lower_bound, hopf_stiefel, max_rate};
use crate::cod::{build_rh, build_tjc, post_multiply_design, PostMultiplier};
use crate::design::DesignMatrix;
use crate::error::Error;
use crate::io::render;
use crate::io::{Construction, DesignDocument};
use crate::maps::{nu, Family};
use crate::rate1::{build_rate1_for, Rate1Variant};
use crate::square::{build_square, build_square_recursive};
use crate::verify::{verify, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "odesign", version, about = "Build and check orthogonal designs exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "R")]
    R,
    #[value(name = "ALP-O", alias = "ALP_O")]
    AlpO,
    #[value(name = "ALP-Q", alias = "ALP_Q")]
    AlpQ,
    #[value(name = "GP")]
    Gp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::R => Family::R,
            FamilyArg::AlpO => Family::AlpO,
            FamilyArg::AlpQ => Family::AlpQ,
            FamilyArg::Gp => Family::Gp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    W,
    What,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    Rh,
    Tjc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Square ROD of order t (a power of two) in rho(t) variables
    Square {
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value = "R", ignore_case = true)]
        family: FamilyArg,
        /// Use the block recursion instead of the index maps
        #[arg(long)]
        recursive: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Rate-1 ROD W_n or its companion W^_n, delay nu(n)
    Rate1 {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "R", ignore_case = true)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Rate-1/2 scaled COD: RH_n (delay nu(n)) or TJC_n (delay 2 nu(n))
    Cod {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        /// Post-multiply RH_n by Q_n to remove every zero entry
        #[arg(long)]
        zero_free: bool,
        #[arg(long, value_enum, default_value = "R", ignore_case = true)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check G^H G = (sum |x_i|^2) I for a design document
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Delay and rate bounds for n antennas
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Hopf-Stiefel function n o k
    Hopf {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Delay/rate comparison table for a range of n
    Table {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Multiply a design document by Q_n
    Postmult {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

pub fn run<I, T>(args: I, color: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, color, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILED
        }
    }
}

fn dispatch(cmd: Command, color: bool, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Square {
            t,
            family,
            recursive,
            format,
        } => {
            let family = Family::from(family);
            let (d, c) = if recursive {
                (build_square_recursive(t, family)?, Construction::SquareRecursive)
            } else {
                (build_square(t, family)?, Construction::Square)
            };
            emit_design(out, &d, c, Some(family), format, color)
        }
        Command::Rate1 {
            n,
            variant,
            family,
            format,
        } => {
            let family = Family::from(family);
            let (v, c) = match variant {
                VariantArg::W => (Rate1Variant::W, Construction::Rate1W),
                VariantArg::What => (Rate1Variant::WHat, Construction::Rate1What),
            };
            let rod = build_rate1_for(n, v, family)?;
            emit_design(out, &rod.matrix, c, Some(family), format, color)
        }
        Command::Cod {
            n,
            construction,
            zero_free,
            family,
            format,
        } => {
            let family = Family::from(family);
            let (cod, c) = match (construction, zero_free) {
                (ConstructionArg::Rh, false) => (build_rh(n, family)?, Construction::Rh),
                (ConstructionArg::Rh, true) => {
                    let rh = build_rh(n, family)?;
                    let q = PostMultiplier::q(n)?;
                    (crate::cod::post_multiply(&rh, &q)?, Construction::RhZeroFree)
                }
                (ConstructionArg::Tjc, false) => (build_tjc(n, family)?, Construction::Tjc),
                (ConstructionArg::Tjc, true) => {
                    return Err(Failure::Usage("--zero-free applies to rh only".into()))
                }
            };
            emit_design(out, &cod.matrix, c, cod.family, format, color)
        }
        Command::Verify { file, format } => {
            let (doc, d) = load(&file)?;
            let rep = verify(&d);
            match format {
                ReportFormat::Text => {
                    let _ = writeln!(
                        out,
                        "[p, n, k] = [{}, {}, {}] ({})",
                        d.rows(),
                        d.cols(),
                        d.num_vars(),
                        doc.params.construction
                    );
                    let _ = writeln!(out, "{rep}");
                }
                ReportFormat::Json => {
                    let _ = writeln!(out, "{}", report_json(&d, &rep));
                }
            }
            Ok(if rep.ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Bound { n, format } => {
            let b = delay_lower_bound(n)?;
            let rate = max_rate(n)?;
            let v = nu(n)?.nu;
            match format {
                ReportFormat::Text => {
                    let m = n.div_ceil(2);
                    let _ = writeln!(out, "n = {n}, m = {m}");
                    let _ = writeln!(out, "maximal-rate delay bound C({}, {}) = {}", 2 * m, m - 1, b.bound);
                    let _ = writeln!(out, "maximal-rate minimum delay = {}", b.achievable_minimum);
                    let _ = writeln!(out, "maximal rate = {rate}");
                    let _ = writeln!(out, "rate-1/2 delay: RH = {v}, TJC = {}", 2 * v);
                }
                ReportFormat::Json => {
                    let j = json!({
                        "n": n,
                        "bound": b.bound.to_string(),
                        "achievable_minimum": b.achievable_minimum.to_string(),
                        "max_rate": rate.to_string(),
                        "delay_rh": v,
                        "delay_tjc": 2 * v,
                    });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("json"));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Hopf { n, k, format } => {
            let h = hopf_stiefel(n, k)?;
            let _ = match format {
                ReportFormat::Text => writeln!(out, "{h}"),
                ReportFormat::Json => writeln!(out, "{}", json!({"n": n, "k": k, "value": h})),
            };
            Ok(EXIT_OK)
        }
        Command::Table { from, to, format } => {
            let rows = comparison_table(from, to)?;
            let s = match format {
                Format::Json => render::table_json(&rows),
                Format::Csv => render::table_csv(&rows),
                Format::Latex => render::table_latex(&rows),
                Format::Text => render::table_text(&rows),
            };
            let _ = out.write_all(s.as_bytes());
            Ok(EXIT_OK)
        }
        Command::Postmult { file, format } => {
            let (doc, d) = load(&file)?;
            let q = PostMultiplier::q(d.cols())?;
            let p = post_multiply_design(&d, &q).map_err(|e| Failure::Invalid(e.to_string()))?;
            let c = match doc.params.construction {
                Construction::Rh => Construction::RhZeroFree,
                _ => Construction::Custom,
            };
            emit_design(out, &p, c, doc.family(), format, color)
        }
    }
}

fn load(path: &Path) -> std::result::Result<(DesignDocument, DesignMatrix), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = DesignDocument::parse(&text)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let d = doc
        .to_design()
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok((doc, d))
}

fn emit_design(
    out: &mut dyn Write,
    d: &DesignMatrix,
    c: Construction,
    family: Option<Family>,
    format: Format,
    color: bool,
) -> Outcome {
    let rep = verify(d);
    if !rep.ok {
        return Err(Failure::Invalid(format!("constructed design failed: {rep}")));
    }
    let s = match format {
        Format::Json => DesignDocument::from_design(d, c, family).to_json(),
        Format::Csv => render::csv(d),
        Format::Latex => render::latex(d),
        Format::Text => render::text(d, color),
    };
    let _ = out.write_all(s.as_bytes());
    Ok(EXIT_OK)
}

fn report_json(d: &DesignMatrix, rep: &VerificationReport) -> String {
    let failure = rep.failure.as_ref().map(|f| {
        let terms: Vec<_> = f
            .residual
            .iter()
            .map(|(t, c)| {
                json!({
                    "var_i": t.var_i, "conj_i": t.conj_i,
                    "var_j": t.var_j, "conj_j": t.conj_j,
                    "coeff": c.to_string(),
                })
            })
            .collect();
        json!({ "cell": [f.cell.0, f.cell.1], "residual": terms })
    });
    let j = json!({
        "ok": rep.ok,
        "p": d.rows(), "n": d.cols(), "k": d.num_vars(),
        "checked_pairs": rep.checked_pairs,
        "failure": failure,
    });
    serde_json::to_string_pretty(&j).expect("json")
}

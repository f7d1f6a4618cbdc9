use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use solgenus::conjugacy::{
    are_conjugate_gl2z, brute_force_conjugator, canonical_form, BruteForce, ConjugacyWitness,
};
use solgenus::forms::{class_set, EquivMode};
use solgenus::genus::{genus_with, theorem_branch, EvidenceLevel, TheoremBranch};
use solgenus::latimer::{lm_representatives_with, similarity_classes};
use solgenus::matrix::{
    char_poly, geometry, is_hyperbolic, matrix_order, spectrum_class, CharPoly, GeometryLabel,
    MatrixOrder, SpectrumClass,
};
use solgenus::modular::{are_conjugate_mod_m_with, modular_table, ModularWitness};
use solgenus::order::OrderDisc;
use solgenus::render::{self, Format};
use solgenus::survey::{survey, DetFilter, SurveySpec};
use solgenus::text::parse_matrix;
use solgenus::{Error, Exec, IntMat2};

/// Profinite genus of torus-bundle groups (Z x Z) ⋊_A Z.
///
/// Matrices are given as "a b; c d" or as JSON [[a, b], [c, d]].
#[derive(Parser)]
#[command(name = "solgenus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatrixArg {
    /// The matrix, "a b; c d" or [[a,b],[c,d]].
    #[arg(allow_hyphen_values = true, required_unless_present = "json")]
    matrix: Option<String>,
    /// The matrix as JSON, instead of the positional argument.
    #[arg(long, conflicts_with = "matrix")]
    json: Option<String>,
}

impl MatrixArg {
    fn parse(&self) -> Result<IntMat2, Error> {
        let text = self
            .json
            .as_deref()
            .or(self.matrix.as_deref())
            .unwrap_or_default();
        parse_matrix(text)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EvidenceArg {
    None,
    Fast,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurveyFormat {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Proper,
    Improper,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetArg {
    Both,
    #[value(name = "1")]
    Plus,
    #[value(name = "-1")]
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    Sol,
    Nil,
    Euclidean,
}

#[derive(Subcommand)]
enum Command {
    /// Genus report for a monodromy matrix.
    Genus {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, value_enum, default_value = "fast")]
        evidence: EvidenceArg,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Spectrum, order and geometry of a matrix.
    Classify {
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// One matrix per GL2(Z)-class with a given characteristic polynomial.
    Enumerate {
        /// A matrix whose characteristic polynomial is used.
        #[arg(allow_hyphen_values = true, conflicts_with_all = ["t", "n"], required_unless_present_all = ["t", "n"])]
        matrix: Option<String>,
        /// Trace of x^2 - t x + n.
        #[arg(long, allow_hyphen_values = true, requires = "n")]
        t: Option<BigInt>,
        /// Determinant of x^2 - t x + n.
        #[arg(long, allow_hyphen_values = true, requires = "t")]
        n: Option<BigInt>,
        /// Also list classes whose eigenvector lattice has a larger multiplier ring.
        #[arg(long)]
        all_orders: bool,
    },
    /// Decide GL2(Z)-conjugacy of two matrices.
    Conj {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Also run the exhaustive search with entries in [-N, N].
        #[arg(long)]
        brute_bound: Option<u32>,
    },
    /// Search for conjugators modulo m.
    ConjMod {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// A single modulus.
        #[arg(long, conflicts_with = "m_max", required_unless_present = "m_max")]
        m: Option<u64>,
        /// Every modulus 2..=M.
        #[arg(long)]
        m_max: Option<u64>,
    },
    /// Class number and representatives of primitive forms of discriminant D.
    Classnumber {
        #[arg(allow_negative_numbers = true)]
        disc: BigInt,
        #[arg(long, value_enum, default_value = "improper")]
        mode: ModeArg,
    },
    /// Canonical form of a matrix with a conjugator P (P·A = T·P).
    Canonical {
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Genus over all characteristic polynomials with |t| <= tmax.
    Survey {
        #[arg(long, default_value_t = 10)]
        tmax: u32,
        #[arg(long, value_enum, default_value = "both", allow_hyphen_values = true)]
        det: DetArg,
        #[arg(long, value_enum, default_value = "json")]
        format: SurveyFormat,
        /// Keep only rows with this geometry.
        #[arg(long, value_enum)]
        geometry: Option<GeometryArg>,
    },
}

#[derive(Serialize)]
struct Classification {
    matrix: IntMat2,
    char_poly: CharPoly,
    spectrum: SpectrumClass,
    hyperbolic: bool,
    order: Option<u32>,
    geometry: GeometryLabel,
    branch: TheoremBranch,
}

#[derive(Serialize)]
struct ConjReport {
    a: IntMat2,
    b: IntMat2,
    verdict: &'static str,
    reason: &'static str,
    witness: Option<ConjugacyWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force: Option<BruteForce>,
}

#[derive(Serialize)]
struct ConjModReport {
    m: u64,
    witness: Option<ModularWitness>,
}

#[derive(Serialize)]
struct CanonicalReport {
    matrix: IntMat2,
    target: IntMat2,
    conjugator: IntMat2,
}

fn env_flag(name: &str) -> bool {
    std::env::var(name).is_ok_and(|v| {
        matches!(
            v.to_ascii_lowercase().as_str(),
            "1" | "true" | "yes" | "always"
        )
    })
}

/// Execution strategy from `SOLGENUS_WORKERS`.
fn configure_workers() -> Result<Exec, String> {
    let Ok(raw) = std::env::var("SOLGENUS_WORKERS") else {
        return Ok(Exec::default());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SOLGENUS_WORKERS must be a positive integer, got {raw:?}"))?;
    if n == 1 {
        return Ok(Exec::Sequential);
    }
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(Exec::Parallel)
}

fn run(cmd: Command, exec: Exec, color: bool) -> Result<String, Error> {
    Ok(match cmd {
        Command::Genus {
            matrix,
            evidence,
            format,
        } => {
            let level = match evidence {
                EvidenceArg::None => EvidenceLevel::None,
                EvidenceArg::Fast => EvidenceLevel::Fast,
                EvidenceArg::Full => EvidenceLevel::Full,
            };
            let report = genus_with(&matrix.parse()?, level, exec)?;
            let format = match format {
                ReportFormat::Json => Format::Json,
                ReportFormat::Table => Format::Table,
            };
            render::genus_report(&report, format, color)
        }
        Command::Classify { matrix } => {
            let a = matrix.parse()?;
            let p = char_poly(&a)?;
            render::json(&Classification {
                spectrum: spectrum_class(&p)?,
                hyperbolic: is_hyperbolic(&a)?,
                order: match matrix_order(&a)? {
                    MatrixOrder::Finite(k) => Some(k),
                    MatrixOrder::Infinite => None,
                },
                geometry: geometry(&a)?,
                branch: theorem_branch(&p)?,
                char_poly: p,
                matrix: a,
            })
        }
        Command::Enumerate {
            matrix,
            t,
            n,
            all_orders,
        } => {
            let p = match (matrix, t, n) {
                (Some(text), _, _) => char_poly(&parse_matrix(&text)?)?,
                (None, Some(t), Some(n)) => CharPoly::new(t, n),
                _ => unreachable!("clap enforces a matrix or both --t and --n"),
            };
            if all_orders {
                render::json(&similarity_classes(&p)?)
            } else {
                render::json(&lm_representatives_with(&p, exec)?)
            }
        }
        Command::Conj { a, b, brute_bound } => {
            let (a, b) = (parse_matrix(&a)?, parse_matrix(&b)?);
            let same_poly = char_poly(&a)? == char_poly(&b)?;
            let witness = are_conjugate_gl2z(&a, &b)?;
            let reason = match (same_poly, witness.is_some()) {
                (false, _) => "characteristic polynomials differ",
                (true, false) => "canonical forms differ",
                (true, true) => "canonical forms agree",
            };
            let brute_force = brute_bound
                .map(|bd| brute_force_conjugator(&a, &b, bd, exec))
                .transpose()?;
            render::json(&ConjReport {
                verdict: if witness.is_some() {
                    "conjugate"
                } else {
                    "not-conjugate"
                },
                reason,
                witness,
                brute_force,
                a,
                b,
            })
        }
        Command::ConjMod { a, b, m, m_max } => {
            let (a, b) = (parse_matrix(&a)?, parse_matrix(&b)?);
            match (m, m_max) {
                (Some(m), _) => render::json(&ConjModReport {
                    m,
                    witness: are_conjugate_mod_m_with(&a, &b, m, exec)?,
                }),
                (None, Some(m_max)) => render::json(&modular_table(&a, &b, m_max, exec)?),
                _ => unreachable!("clap enforces --m or --m-max"),
            }
        }
        Command::Classnumber { disc, mode } => {
            let mode = match mode {
                ModeArg::Proper => EquivMode::Proper,
                ModeArg::Improper => EquivMode::Improper,
            };
            render::json(&class_set(&OrderDisc::from_disc(&disc)?, mode)?)
        }
        Command::Canonical { matrix } => {
            let a = matrix.parse()?;
            let c = canonical_form(&a)?;
            render::json(&CanonicalReport {
                matrix: a,
                target: c.target,
                conjugator: c.conjugator,
            })
        }
        Command::Survey {
            tmax,
            det,
            format,
            geometry,
        } => {
            let spec = SurveySpec {
                tmax,
                det: match det {
                    DetArg::Both => DetFilter::Both,
                    DetArg::Plus => DetFilter::Plus,
                    DetArg::Minus => DetFilter::Minus,
                },
                geometry: geometry.map(|g| match g {
                    GeometryArg::Sol => GeometryLabel::Sol,
                    GeometryArg::Nil => GeometryLabel::Nil,
                    GeometryArg::Euclidean => GeometryLabel::Euclidean,
                }),
            };
            let format = match format {
                SurveyFormat::Json => Format::Json,
                SurveyFormat::Csv => Format::Csv,
                SurveyFormat::Table => Format::Table,
            };
            render::survey(&survey(&spec, exec)?, format, color)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let exec = match configure_workers() {
        Ok(exec) => exec,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, exec, env_flag("SOLGENUS_COLOR")) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

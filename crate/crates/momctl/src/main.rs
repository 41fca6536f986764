//! Command-line surface for the metric-space toolkit: validate matrix
//! files, compute exact sup-distances, run the embedding constructions, and
//! re-verify witnesses.
//!
//! Exit codes: 0 success, 1 validation/verification failure (a
//! machine-readable report is written), 2 malformed input (diagnostics on
//! stderr). Embeddings self-verify through the oracle before their witness
//! is written; an unverifiable witness is never written.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mom::algebra::{band_metric, sup_distance};
use mom::embed::{
    c0_embed, discrete_witness, frechet_embed, one_point_embed, plan_truncation, BoundedVector,
    EmbedError, EmbeddingWitness,
};
use mom::io::{
    read_document, to_document, write_document, IoError, MatrixFile, ReportFile, VectorFamilyFile,
    WitnessFile,
};
use mom::matrix::{validate, Axiom, MetricKind, ValidationReport, Violation};
use mom::oracle::{exhaustive_triangle, verify_isometry, OracleError, WitnessSource};
use mom::rat::{parse_rat, rat_to_string, Rat};

#[derive(Parser)]
#[command(
    name = "momctl",
    version,
    about = "Exact metric matrices, sup-distances, and verified isometric embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a matrix file against the metric axioms and write the report
    Validate {
        file: PathBuf,
        /// Validate as a pseudometric (skip the positivity axiom)
        #[arg(long)]
        pseudo: bool,
        /// Write the report here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the exact sup-distance between two matrices on the same points
    Dist { d: PathBuf, e: PathBuf },
    /// Run an embedding construction and write its self-verified witness
    Embed {
        #[command(subcommand)]
        construction: EmbedCommand,
    },
    /// Re-verify a witness file against the original input
    Verify {
        witness: PathBuf,
        original: PathBuf,
        /// Write the report here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate seeded deterministic inputs
    Gen {
        #[command(subcommand)]
        target: GenCommand,
    },
}

#[derive(Subcommand)]
enum EmbedCommand {
    /// Coordinate embedding of a metric file into sup-norm vectors
    Frechet {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Enumeration order, comma-separated labels (defaults to input order)
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    /// One-point-extension embedding of a metric file
    Onepoint {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Block embedding of a vector family file
    Discrete {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Pin the coordinate count (must equal the family's vector length)
        #[arg(long = "M")]
        coordinates: Option<usize>,
        /// Pin the plan bound as p/q; the clamp level becomes the smallest N
        /// with 2^N >= B, and inputs above 2^N are refused
        #[arg(long = "B")]
        bound: Option<String>,
    },
    /// Paired-block embedding of a vector family file
    C0 {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Number of two-point blocks (defaults to the shortest vector length)
        #[arg(long = "M")]
        blocks: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random metric: symmetric positive table repaired by shortest-path closure
    Metric {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 8)]
        num_cap: u64,
        #[arg(long, default_value_t = 16)]
        den_cap: u64,
    },
    /// Random band map with off-diagonal values in [L, 2L], written as a metric
    Band {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Band lower bound L as p/q
        #[arg(long = "L")]
        low: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 16)]
        den_cap: u64,
    },
}

/// Failure modes with their exit codes. `Check` means a report was already
/// written; `Input` means the input could not be used at all.
enum Failure {
    /// Exit 2: malformed input or violated precondition.
    Input(String),
    /// Exit 1: validation/verification failure; report written.
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Check(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Check(m) => m,
        }
    }
}

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn emit_report(report: &ReportFile, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => write_document(path, report).map_err(input_error),
        None => {
            print!("{}", to_document(report).map_err(input_error)?);
            Ok(())
        }
    }
}

fn read_matrix(path: &Path, output: Option<&Path>) -> Result<mom::MetricMatrix, Failure> {
    let file: MatrixFile = read_document(path).map_err(input_error)?;
    match file.into_matrix() {
        Ok(matrix) => Ok(matrix),
        Err(IoError::Invalid(report)) => {
            emit_report(&ReportFile::from_validation(&report), output)?;
            Err(Failure::Check(format!(
                "{} fails validation ({} violations)",
                path.display(),
                report.violations.len()
            )))
        }
        Err(other) => Err(input_error(other)),
    }
}

fn read_family(path: &Path) -> Result<Vec<(String, BoundedVector)>, Failure> {
    let file: VectorFamilyFile = read_document(path).map_err(input_error)?;
    file.into_family().map_err(input_error)
}

fn run_validate(file: &Path, pseudo: bool, output: Option<&Path>) -> Result<(), Failure> {
    let document: MatrixFile = read_document(file).map_err(input_error)?;
    let (table, declared_kind) = document.into_table().map_err(input_error)?;
    let kind = if pseudo {
        MetricKind::Pseudometric
    } else {
        declared_kind
    };
    let report = validate(&table, kind);
    emit_report(&ReportFile::from_validation(&report), output)?;
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} violation(s) of the {kind} axioms",
            report.violations.len()
        )))
    }
}

fn run_dist(d_path: &Path, e_path: &Path) -> Result<(), Failure> {
    let d = read_matrix(d_path, None)?;
    let e = read_matrix(e_path, None)?;
    let distance = sup_distance(&d, &e).map_err(input_error)?;
    println!("{}", rat_to_string(&distance));
    Ok(())
}

fn witness_source(witness: &EmbeddingWitness) -> WitnessSource<'_> {
    match witness {
        EmbeddingWitness::Frechet(w) => WitnessSource::Matrix(&w.input),
        EmbeddingWitness::OnePoint(w) => WitnessSource::Matrix(&w.input),
        EmbeddingWitness::Discrete(w) => WitnessSource::Vectors(&w.inputs),
        EmbeddingWitness::C0(w) => WitnessSource::Vectors(&w.inputs),
    }
}

/// Self-verify through the oracle, then write. A witness that does not
/// verify exactly is never written.
fn seal_witness(witness: EmbeddingWitness, output: &Path) -> Result<(), Failure> {
    let report = verify_isometry(&witness, &witness_source(&witness))
        .map_err(|e| Failure::Input(format!("self-verification could not run: {e}")))?;
    if !report.ok() {
        emit_report(&ReportFile::from_isometry(&report), None)?;
        return Err(Failure::Check(
            "constructed witness failed self-verification; nothing written".into(),
        ));
    }
    write_document(output, &WitnessFile::from_witness(&witness)).map_err(input_error)?;
    println!(
        "wrote {} witness ({} points, self-verified exact) to {}",
        witness.construction().name(),
        witness.point_names().len(),
        output.display()
    );
    Ok(())
}

fn embed_failure(e: EmbedError) -> Failure {
    match e {
        EmbedError::InvalidImage { point, report } => {
            Failure::Input(format!("image of {point:?} failed validation: {report}"))
        }
        other => Failure::Input(other.to_string()),
    }
}

fn run_embed(command: EmbedCommand) -> Result<(), Failure> {
    match command {
        EmbedCommand::Frechet {
            input,
            output,
            order,
        } => {
            let matrix = read_matrix(&input, None)?;
            let enumeration = order.unwrap_or_else(|| matrix.labels().to_vec());
            let witness = frechet_embed(&matrix, &enumeration).map_err(embed_failure)?;
            seal_witness(EmbeddingWitness::Frechet(witness), &output)
        }
        EmbedCommand::Onepoint { input, output } => {
            let matrix = read_matrix(&input, None)?;
            let witness = one_point_embed(&matrix).map_err(embed_failure)?;
            seal_witness(EmbeddingWitness::OnePoint(witness), &output)
        }
        EmbedCommand::Discrete {
            input,
            output,
            coordinates,
            bound,
        } => {
            let family = read_family(&input)?;
            let lengths: Vec<usize> = family.iter().map(|(_, v)| v.len()).collect();
            let common = lengths[0];
            if lengths.iter().any(|&l| l != common) {
                return Err(Failure::Input(
                    "all vectors in the family must have the same length".into(),
                ));
            }
            if let Some(pinned) = coordinates {
                if pinned != common {
                    return Err(Failure::Input(format!(
                        "--M {pinned} does not match the family's vector length {common}"
                    )));
                }
            }
            let plan_bound: Rat = match bound {
                Some(text) => parse_rat(&text).map_err(input_error)?,
                None => family
                    .iter()
                    .map(|(_, v)| v.bound().clone())
                    .max()
                    .expect("family is nonempty"),
            };
            let plan = plan_truncation(common, &plan_bound).map_err(input_error)?;
            let witness = discrete_witness(&family, &plan).map_err(embed_failure)?;
            seal_witness(EmbeddingWitness::Discrete(witness), &output)
        }
        EmbedCommand::C0 {
            input,
            output,
            blocks,
        } => {
            let family = read_family(&input)?;
            let shortest = family
                .iter()
                .map(|(_, v)| v.len())
                .min()
                .expect("family is nonempty");
            let blocks = blocks.unwrap_or(shortest);
            let witness = c0_embed(&family, blocks).map_err(embed_failure)?;
            seal_witness(EmbeddingWitness::C0(witness), &output)
        }
    }
}

/// Independent triangle scan over every image matrix: the construction-time
/// validation is double-checked by the oracle's separate code path.
fn oracle_triangle_sweep(witness: &EmbeddingWitness) -> Option<ValidationReport> {
    let images: Vec<&mom::MetricMatrix> = match witness {
        EmbeddingWitness::Frechet(_) => return None,
        EmbeddingWitness::OnePoint(w) => w.images.iter().map(|(_, m)| m).collect(),
        EmbeddingWitness::Discrete(w) => w.images.iter().map(|(_, m)| m).collect(),
        EmbeddingWitness::C0(w) => w.images.iter().map(|(_, m)| m).collect(),
    };
    let mut violations = Vec::new();
    for image in images {
        for v in exhaustive_triangle(image.table()) {
            violations.push(Violation {
                axiom: Axiom::Triangle,
                points: vec![v.endpoints.0, v.endpoints.1, v.via],
                lhs: v.lhs,
                rhs: v.rhs,
            });
        }
    }
    if violations.is_empty() {
        None
    } else {
        Some(ValidationReport { violations })
    }
}

fn run_verify(
    witness_path: &Path,
    original_path: &Path,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let file: WitnessFile = read_document(witness_path).map_err(input_error)?;
    let witness = match file.into_witness() {
        Ok(witness) => witness,
        Err(IoError::Invalid(report)) => {
            emit_report(&ReportFile::from_validation(&report), output)?;
            return Err(Failure::Check(
                "witness input matrix fails validation".into(),
            ));
        }
        Err(IoError::InvalidImage { point, report }) => {
            emit_report(&ReportFile::from_validation(&report), output)?;
            return Err(Failure::Check(format!(
                "witness image of {point:?} fails validation"
            )));
        }
        Err(other) => return Err(input_error(other)),
    };

    if let Some(report) = oracle_triangle_sweep(&witness) {
        emit_report(&ReportFile::from_validation(&report), output)?;
        return Err(Failure::Check(
            "oracle triangle sweep found violations in witness images".into(),
        ));
    }

    let report = match &witness {
        EmbeddingWitness::Frechet(_) | EmbeddingWitness::OnePoint(_) => {
            let original = read_matrix(original_path, output)?;
            verify_isometry(&witness, &WitnessSource::Matrix(&original))
        }
        EmbeddingWitness::Discrete(_) | EmbeddingWitness::C0(_) => {
            let original = read_family(original_path)?;
            verify_isometry(&witness, &WitnessSource::Vectors(&original))
        }
    };
    match report {
        Ok(report) => {
            emit_report(&ReportFile::from_isometry(&report), output)?;
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Check(format!(
                    "isometry check failed with distortion {}",
                    rat_to_string(&report.distortion)
                )))
            }
        }
        Err(OracleError::InputMismatch) => Err(Failure::Check(
            "witness does not record the supplied original input".into(),
        )),
        Err(other) => Err(input_error(other)),
    }
}

fn run_gen(target: GenCommand) -> Result<(), Failure> {
    use mom::oracle::gen::{gen_band_map, gen_random_metric, GeneratorConfig};
    match target {
        GenCommand::Metric {
            n,
            seed,
            output,
            num_cap,
            den_cap,
        } => {
            if n == 0 || num_cap == 0 || den_cap == 0 {
                return Err(Failure::Input(
                    "--n, --num-cap and --den-cap must be at least 1".into(),
                ));
            }
            let cfg = GeneratorConfig {
                seed,
                points: n,
                numerator_cap: num_cap,
                denominator_cap: den_cap,
                ..GeneratorConfig::default()
            };
            let matrix = gen_random_metric(&cfg);
            write_document(&output, &MatrixFile::from_matrix(&matrix)).map_err(input_error)?;
            println!(
                "wrote {n}-point metric (seed {seed}) to {}",
                output.display()
            );
            Ok(())
        }
        GenCommand::Band {
            n,
            seed,
            low,
            output,
            den_cap,
        } => {
            if n == 0 || den_cap == 0 {
                return Err(Failure::Input(
                    "--n and --den-cap must be at least 1".into(),
                ));
            }
            let low = parse_rat(&low).map_err(input_error)?;
            let cfg = GeneratorConfig {
                seed,
                points: n,
                denominator_cap: den_cap,
                ..GeneratorConfig::default()
            };
            let table = gen_band_map(&cfg, &low);
            let metric = band_metric(table, &low).map_err(input_error)?;
            write_document(&output, &MatrixFile::from_matrix(&metric)).map_err(input_error)?;
            println!(
                "wrote {n}-point band metric in [{}, {}] (seed {seed}) to {}",
                rat_to_string(&low),
                rat_to_string(&(&low + &low)),
                output.display()
            );
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Validate {
            file,
            pseudo,
            output,
        } => run_validate(&file, pseudo, output.as_deref()),
        Command::Dist { d, e } => run_dist(&d, &e),
        Command::Embed { construction } => run_embed(construction),
        Command::Verify {
            witness,
            original,
            output,
        } => run_verify(&witness, &original, output.as_deref()),
        Command::Gen { target } => run_gen(target),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("momctl: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

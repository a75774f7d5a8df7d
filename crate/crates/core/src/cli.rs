//! Batch command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 invalid model or input,
//! 3 compilation failure, 4 failed verification.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::compiler::{compile, CompileOptions, Target};
use crate::encoding::encode_fock;
use crate::error::Error;
use crate::interferometer::{haar_random_unitary, reck_decompose};
use crate::linalg::{from_pairs, CMatrix};
use crate::model_file::ModelFile;
use crate::permanent::compare_with_circuit;
use crate::report::{histogram_csv, CompileReport, OracleReport, ReckReport, SimulateReport};
use crate::sim::run_encoded;
use crate::verify::{self, Fixtures, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COMPILE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Environment variable supplying the seed when neither flag nor model file does.
pub const SEED_ENV: &str = "BOQC_SEED";

#[derive(Debug, Parser)]
#[command(name = "boqc", version, about = "Bosonic Hamiltonians to qubit circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compile a model file into a gate circuit.
    Compile {
        model: PathBuf,
        /// Circuit output in the boqc-circuit/1 text format.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        target: Option<Target>,
        #[arg(long)]
        optimize: bool,
        #[arg(long)]
        steps: Option<usize>,
        /// Also export OpenQASM 2.0.
        #[arg(long)]
        qasm: Option<PathBuf>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Compile, run from the model's initial state, and sample.
    Simulate {
        model: PathBuf,
        #[arg(long)]
        shots: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Shot histogram as CSV.
        #[arg(long)]
        histogram: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run built-in self-check suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Factor an interferometer unitary into two-mode layers.
    Reck {
        /// JSON matrix: rows of [re, im] pairs.
        matrix: Option<PathBuf>,
        /// Use a seeded Haar-random unitary of this size instead.
        #[arg(long, conflicts_with = "matrix")]
        haar: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Compare a compiled mesh against exact permanent statistics.
    Oracle {
        /// JSON matrix: rows of [re, im] pairs.
        #[arg(long, conflicts_with = "haar")]
        unitary: Option<PathBuf>,
        #[arg(long)]
        haar: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Input occupations, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        input: Vec<usize>,
        /// Per-mode cutoff; defaults to the total photon number.
        #[arg(long)]
        cutoff: Option<usize>,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Oracle distribution as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, err: impl std::fmt::Display) -> Self {
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn input_err(e: Error) -> Failure {
    Failure::new(EXIT_INPUT, e)
}

fn compile_err(e: Error) -> Failure {
    Failure::new(EXIT_COMPILE, e)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::new(EXIT_FAILURE, e))
}

fn resolve_seed(flag: Option<u64>, from_model: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = flag.or(from_model) {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_INPUT, format!("{SEED_ENV}={v:?} is not a seed"))),
        Err(_) => Ok(0),
    }
}

fn load_model(path: &Path) -> Result<ModelFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))?;
    ModelFile::parse(&text).map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<CMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))?;
    let pairs: Vec<Vec<[f64; 2]>> = serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    from_pairs(&pairs).ok_or_else(|| Failure::new(EXIT_INPUT, "matrix rows have unequal lengths"))
}

/// Parse `args` (program name first) and run the command, writing to `out`
/// and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Compile {
            model,
            output,
            target,
            optimize,
            steps,
            qasm,
            report,
            json,
        } => {
            let file = load_model(&model)?;
            let spec = file.spec().map_err(input_err)?;
            let mut options = file.compile_options();
            if let Some(t) = target {
                options.target = t;
            }
            if let Some(s) = steps {
                options.steps = s;
            }
            options.optimize |= optimize;
            let compiled = compile(&spec, &options).map_err(compile_err)?;
            let rep = CompileReport::new(&spec, &options, &compiled);
            if let Some(path) = output {
                write_file(&path, &compiled.circuit.to_text())?;
            }
            if let Some(path) = qasm {
                write_file(&path, &compiled.circuit.to_qasm())?;
            }
            if let Some(path) = report {
                write_file(&path, &rep.to_json())?;
            }
            emit(out, &if json { rep.to_json() + "\n" } else { rep.to_text() })?;
            Ok(EXIT_OK)
        }
        Command::Simulate {
            model,
            shots,
            seed,
            report,
            histogram,
            json,
        } => {
            let file = load_model(&model)?;
            let spec = file.spec().map_err(input_err)?;
            let register = file.initial_register(&spec).map_err(input_err)?;
            let initial = encode_fock(&register).map_err(input_err)?;
            let options: CompileOptions = file.compile_options();
            let compiled = compile(&spec, &options).map_err(compile_err)?;
            let state = run_encoded(&compiled.circuit, &initial).map_err(compile_err)?;
            let seed = resolve_seed(seed, file.run.seed)?;
            let shots = shots.unwrap_or(file.run.shots);
            let rep = SimulateReport::new(
                &spec,
                &options,
                &compiled,
                &initial,
                register.occupations(),
                &state,
                shots,
                seed,
            )
            .map_err(compile_err)?;
            if let Some(path) = report {
                write_file(&path, &rep.to_json())?;
            }
            if let Some(path) = histogram {
                write_file(&path, &histogram_csv(&rep.counts))?;
            }
            emit(out, &if json { rep.to_json() + "\n" } else { rep.to_text() })?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, json } => {
            let suites = Suite::parse_selection(&suite).map_err(input_err)?;
            let rep = verify::run(&suites, &Fixtures::default());
            emit(out, &if json { rep.to_json() + "\n" } else { rep.to_text() })?;
            Ok(if rep.passed { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Reck {
            matrix,
            haar,
            seed,
            json,
        } => {
            let r = match (matrix, haar) {
                (Some(path), None) => load_matrix(&path)?,
                (None, Some(m)) => haar_random_unitary(m, resolve_seed(seed, None)?),
                _ => return Err(Failure::new(EXIT_INPUT, "give a matrix file or --haar M")),
            };
            let mesh = reck_decompose(&r).map_err(input_err)?;
            let rep = ReckReport::new(&mesh);
            emit(out, &if json { rep.to_json() + "\n" } else { rep.to_text() })?;
            Ok(EXIT_OK)
        }
        Command::Oracle {
            unitary,
            haar,
            seed,
            input,
            cutoff,
            steps,
            csv,
            json,
        } => {
            let r = match (unitary, haar) {
                (Some(path), None) => load_matrix(&path)?,
                (None, Some(m)) => haar_random_unitary(m, resolve_seed(seed, None)?),
                _ => return Err(Failure::new(EXIT_INPUT, "give --unitary FILE or --haar M")),
            };
            let cutoff = cutoff.unwrap_or_else(|| input.iter().sum::<usize>().max(1));
            let cmp = compare_with_circuit(&r, &input, cutoff, steps).map_err(|e| match e {
                Error::Unsupported(_) | Error::DimensionTooLarge { .. } => compile_err(e),
                other => input_err(other),
            })?;
            let rep = OracleReport::new(&cmp, cutoff);
            if let Some(path) = csv {
                write_file(&path, &rep.to_csv())?;
            }
            emit(out, &if json { rep.to_json() + "\n" } else { rep.to_text() })?;
            Ok(EXIT_OK)
        }
    }
}

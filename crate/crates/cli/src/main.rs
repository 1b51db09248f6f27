use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use immanon::immanant::{immanant, normalized_immanant};
use immanon::inequality::{dominance_campaign, CampaignOptions};
use immanon::partition::{character_table, parse_parts};
use immanon::scattering::{
    arrangement_probability, distinguishable_probability, indistinguishable_probability, linear_grid, sweep_to_csv,
    transition_sweep,
};
use immanon::state::partial_pauli_check;
use immanon::{ComplexMatrix, DistinguishabilityMatrix, OccupationVector, Partition, ScatteringMatrix};
use serde::Serialize;

/// Immanants, immanon scattering and the inequalities between them.
#[derive(Parser, Debug)]
#[command(name = "immanon", version)]
struct Cli {
    /// Worker threads for sweeps and campaigns (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of S_n as CSV.
    Chartable {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Immanant and normalized immanant of a matrix.
    Immanant {
        #[arg(long)]
        lambda: String,
        /// JSON matrix file: {"n": .., "re": [[..]], "im": [[..]]}.
        #[arg(long)]
        matrix: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Probability of an output arrangement for partially distinguishable particles.
    Scatter {
        #[arg(long)]
        lambda: String,
        /// Scattering matrix file.
        #[arg(long)]
        matrix: PathBuf,
        /// Distinguishability matrix file.
        #[arg(long)]
        smatrix: PathBuf,
        /// Particles per output mode, e.g. "2,1,0" (default: one per mode).
        #[arg(long)]
        occupation: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Bunching factors of every partition along the transition matrix family.
    Sweep {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        x_min: f64,
        #[arg(long, default_value_t = 1.0)]
        x_max: f64,
        #[arg(long, default_value_t = 101)]
        x_steps: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Random search for matrices whose immanants exceed the permanent.
    Dominance {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Single worker and no timing field, for byte-identical output.
        #[arg(long)]
        deterministic: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Projection of a multiply occupied state onto a symmetry type.
    Pauli {
        #[arg(long)]
        lambda: String,
        /// Occupation pattern, dot-joined like lambda.
        #[arg(long)]
        eta: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<(), String> {
        match &self.output {
            Some(path) => {
                fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                log::info!("wrote {}", path.display());
                Ok(())
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<(), String> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        text.push('\n');
        self.emit(&text)
    }
}

#[derive(Serialize)]
struct ImmanantRecord {
    lambda: String,
    re: f64,
    im: f64,
    normalized_re: f64,
    normalized_im: f64,
}

#[derive(Serialize)]
struct ScatterRecord {
    lambda: String,
    occupation: OccupationVector,
    probability: f64,
    distinguishable: f64,
    indistinguishable: f64,
}

fn parse_lambda(text: &str) -> Result<Partition, String> {
    let parts = parse_parts(text).map_err(|e| e.to_string())?;
    if parts.windows(2).any(|w| w[0] < w[1]) {
        log::warn!("partition {text:?} is not in descending order; sorting it");
    }
    Partition::from_unsorted(parts).map_err(|e| e.to_string())
}

fn read_matrix(path: &Path) -> Result<ComplexMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    ComplexMatrix::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Rounds to 12 significant digits.
fn significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn run(cli: Cli) -> Result<(), String> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    match cli.command {
        Command::Chartable { n, out } => {
            let table = character_table(n).map_err(|e| e.to_string())?;
            out.emit(&table.to_csv())
        }
        Command::Immanant { lambda, matrix, out } => {
            let lambda = parse_lambda(&lambda)?;
            let m = read_matrix(&matrix)?;
            let value = immanant(&lambda, &m).map_err(|e| e.to_string())?;
            let normalized = normalized_immanant(&lambda, &m).map_err(|e| e.to_string())?;
            out.emit_json(&ImmanantRecord {
                lambda: lambda.label(),
                re: value.re,
                im: value.im,
                normalized_re: normalized.re,
                normalized_im: normalized.im,
            })
        }
        Command::Scatter {
            lambda,
            matrix,
            smatrix,
            occupation,
            out,
        } => {
            let lambda = parse_lambda(&lambda)?;
            let m = ScatteringMatrix::new(read_matrix(&matrix)?);
            if !m.is_unitary() {
                log::warn!("scattering matrix is not unitary; probabilities are not normalized");
            }
            let s = DistinguishabilityMatrix::new(read_matrix(&smatrix)?)
                .map_err(|e| format!("{}: {e}", smatrix.display()))?;
            let occupation = match occupation {
                Some(text) => text.parse::<OccupationVector>().map_err(|e| e.to_string())?,
                None => OccupationVector::coincidence(m.dim()),
            };
            let probability = arrangement_probability(&lambda, &m, &s, &occupation).map_err(|e| e.to_string())?;
            let distinguishable = distinguishable_probability(&m, &occupation).map_err(|e| e.to_string())?;
            let indistinguishable =
                indistinguishable_probability(&lambda, &m, &occupation).map_err(|e| e.to_string())?;
            out.emit_json(&ScatterRecord {
                lambda: lambda.label(),
                occupation,
                probability: significant(probability),
                distinguishable: significant(distinguishable),
                indistinguishable: significant(indistinguishable),
            })
        }
        Command::Sweep {
            n,
            x_min,
            x_max,
            x_steps,
            out,
        } => {
            if !(0.0..=1.0).contains(&x_min) || !(0.0..=1.0).contains(&x_max) || x_min > x_max {
                return Err(format!(
                    "x grid [{x_min}, {x_max}] must lie within [0, 1] and be ascending"
                ));
            }
            if x_steps == 0 {
                return Err("--x-steps must be at least 1".into());
            }
            let rows = transition_sweep(n, &linear_grid(x_min, x_max, x_steps)).map_err(|e| e.to_string())?;
            out.emit(&sweep_to_csv(&rows))
        }
        Command::Dominance {
            n,
            trials,
            seed,
            deterministic,
            out,
        } => {
            let summary =
                dominance_campaign(n, trials, seed, CampaignOptions { deterministic }).map_err(|e| e.to_string())?;
            if summary.violation_found {
                log::warn!("{} trials violated an inequality", summary.violations.len());
            }
            out.emit_json(&summary)
        }
        Command::Pauli { lambda, eta, out } => {
            let lambda = parse_lambda(&lambda)?;
            let eta = parse_lambda(&eta)?;
            let check = partial_pauli_check(&lambda, &eta).map_err(|e| e.to_string())?;
            out.emit_json(&check)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("IMMANON_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

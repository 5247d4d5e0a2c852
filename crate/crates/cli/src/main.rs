use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sasakian::report::{self, list_text, Format, Manifold, RunConfig};
use sasakian::Error;

#[derive(Parser)]
#[command(name = "sasakian-verify", version, about = "Numerical checks of curvature identities on Sasakian models")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print every registered check with its equation label and formula.
    List,
    /// Run identity checks.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated check ids, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        ids: Vec<String>,
        /// Comma-separated experiment ids, or `all`.
        #[arg(long, value_delimiter = ',')]
        experiments: Vec<String>,
    },
    /// Run theorem-level experiments.
    Experiment {
        #[command(flatten)]
        common: Common,
        /// Comma-separated experiment ids, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        ids: Vec<String>,
    },
    /// Run only the structure-equation checks.
    Axioms {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ManifoldArg {
    Darboux,
    Spaceform,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "darboux")]
    manifold: ManifoldArg,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// φ-sectional curvature of the space form.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol_musthold: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol_claim: f64,
    /// Quasi-conformal coefficients `b0,b1`.
    #[arg(long, value_parser = coeffs::<2>, allow_hyphen_values = true)]
    quasi: Option<[f64; 2]>,
    /// Custom B-tensor coefficients `b0,b1,b2`.
    #[arg(long, value_parser = coeffs::<3>, allow_hyphen_values = true)]
    custom: Option<[f64; 3]>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

impl Common {
    fn config(self, ids: Vec<String>, experiments: Vec<String>) -> RunConfig {
        RunConfig {
            manifold: match self.manifold {
                ManifoldArg::Darboux => Manifold::Darboux,
                ManifoldArg::Spaceform => Manifold::Spaceform,
            },
            m: self.m,
            c: self.c,
            samples: self.samples,
            seed: self.seed,
            tol_musthold: self.tol_musthold,
            tol_claim: self.tol_claim,
            ids,
            experiments,
            out: self.out,
            format: match self.format {
                FormatArg::Json => Format::Json,
                FormatArg::Text => Format::Text,
            },
            quasi: self.quasi,
            custom: self.custom,
        }
    }
}

fn coeffs<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated values, got {}", v.len()))
}

fn axiom_ids() -> Vec<String> {
    sasakian::lab::registry()
        .iter()
        .filter(|c| c.id.starts_with("AX-") || c.id.starts_with("SAS-"))
        .map(|c| c.id.clone())
        .collect()
}

fn execute(config: RunConfig) -> Result<bool, Error> {
    let stamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let report = report::run(&config, &stamp)?;
    let mut body = report.emit(config.format)?;
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &config.out {
        Some(path) => {
            fs::write(path, body).map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("{} checks, gate {}", report.checks.len(), if report.gate { "pass" } else { "fail" });
        }
        None => print!("{body}"),
    }
    Ok(report.gate)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let config = match cli.cmd {
        Cmd::List => {
            print!("{}", list_text());
            return ExitCode::SUCCESS;
        }
        Cmd::Verify { common, ids, experiments } => common.config(ids, experiments),
        Cmd::Experiment { common, ids } => common.config(Vec::new(), ids),
        Cmd::Axioms { common } => common.config(axiom_ids(), Vec::new()),
    };
    match execute(config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

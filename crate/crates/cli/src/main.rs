mod commands;
mod config;
mod error;
mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gbh_core::oracle::DEFAULT_CELL_BUDGET;
use gbh_core::{FieldKind, Mode};

use crate::commands::Outcome;
use crate::config::{Format, RunConfig, Window};
use crate::error::CliError;

/// Homology of unordered configuration spaces of graphs.
#[derive(Parser, Debug)]
#[command(name = "gbh", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Coefficient field: q, f2, f3, ...
    #[arg(long, global = true, default_value = "q")]
    field: FieldKind,
    /// Module truncation degree (defaults to --jmax).
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[arg(long, global = true, default_value_t = 2)]
    qmax: usize,
    #[arg(long, global = true, default_value_t = 3)]
    nmax: usize,
    #[arg(long, global = true, default_value_t = 2)]
    pmax: usize,
    #[arg(long, global = true, default_value_t = 4)]
    jmax: usize,
    /// Write data here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Cell budget for the cubical model.
    #[arg(long, global = true, default_value_t = DEFAULT_CELL_BUDGET)]
    budget: usize,
    /// Worker threads.
    #[arg(long, global = true, env = "GBH_JOBS")]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology H_q of the n-point configuration space.
    Homology {
        graph: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Tabulate every q <= --qmax and n <= --nmax.
        #[arg(long)]
        all: bool,
        /// full or reduced complex.
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Graded Betti numbers of H_q as a module over the edge ring.
    Betti {
        graph: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Scan beta_{p,j}(H_q(G_n)) over a window of n and look for stabilization.
    FamilyScan {
        family: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        p: usize,
        /// Defaults to n_min+2..n_min+7.
        #[arg(long)]
        window: Option<Window>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Also write the stabilization report JSON here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare homology of the full and reduced complexes.
    QuasiIsoCheck { graph: String },
    /// Compare against the cubical model of a subdivided graph.
    OracleCheck { graph: String },
    /// Check the blow-up short exact sequence and its long exact sequence.
    BlowupVerify {
        graph: String,
        #[arg(long)]
        vertex: String,
    },
    /// Boundary matrix at one bigrade as a coordinate list.
    MatrixDump {
        graph: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        mode: Option<Mode>,
    },
}

impl GlobalArgs {
    fn config(&self, window: Option<Window>) -> RunConfig {
        RunConfig {
            field: self.field,
            truncation: self.trunc,
            q_max: self.qmax,
            n_max: self.nmax,
            p_max: self.pmax,
            j_max: self.jmax,
            window,
            format: self.format,
            out: self.out.clone(),
            budget: self.budget,
            jobs: self.jobs,
        }
    }
}

fn emit(cfg: &RunConfig, body: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => fs::write(path, body).map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let window = match &cli.command {
        Command::FamilyScan { window, .. } => *window,
        _ => None,
    };
    let cfg = cli.global.config(window);
    cfg.validate()?;
    if let Some(jobs) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::config(e.to_string()))?;
    }
    let outcome = match &cli.command {
        Command::Homology { graph, q, n, all, mode } => {
            let (_, g) = input::load_graph(graph)?;
            commands::homology(&g, *q, *n, *all, *mode, &cfg)?
        }
        Command::Betti { graph, q, mode } => {
            let (_, g) = input::load_graph(graph)?;
            commands::betti(&g, *q, *mode, &cfg)?
        }
        Command::FamilyScan { family, q, p, max_degree, report, .. } => {
            let fam = input::load_family(family)?;
            let (outcome, report_json) = commands::family_scan(&fam, *q, *p, *max_degree, &cfg)?;
            if let Some(path) = report {
                fs::write(path, report_json).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            }
            outcome
        }
        Command::QuasiIsoCheck { graph } => {
            let (_, g) = input::load_graph(graph)?;
            commands::quasi_iso_check(&g, &cfg)?
        }
        Command::OracleCheck { graph } => {
            let (_, g) = input::load_graph(graph)?;
            commands::oracle_check(&g, &cfg)?
        }
        Command::BlowupVerify { graph, vertex } => {
            let (_, g) = input::load_graph(graph)?;
            commands::blowup_verify(&g, vertex, &cfg)?
        }
        Command::MatrixDump { graph, q, n, mode } => {
            let (label, g) = input::load_graph(graph)?;
            commands::matrix_dump(&g, &label, *q, *n, *mode)?
        }
    };
    emit(&cfg, &outcome.body)?;
    Ok(outcome)
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
    match run(cli) {
        Ok(outcome) if outcome.passed => {
            eprintln!("{}", outcome.summary);
            ExitCode::SUCCESS
        }
        Ok(outcome) => {
            eprintln!("{}", outcome.summary);
            CliError::mismatch(outcome.summary).exit_code()
        }
        Err(e) => {
            eprintln!("gbh: {e}");
            e.exit_code()
        }
    }
}

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toricnorm_cli::{parse_weights, run_from_hj, run_series, CliError, Command, JobReport, Options};

/// Normalization of Puiseux hypersurfaces and the Hirzebruch-Jung converse.
#[derive(Parser)]
#[command(name = "toricnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Distinguished exponents and the group they span.
    Exponents(Common),
    /// Saturation: Hilbert basis, saturated and smooth flags.
    Saturate(Common),
    /// The whole forward pipeline.
    Normalize {
        #[command(flatten)]
        common: Common,
        /// Skip the minimal polynomial.
        #[arg(long)]
        no_minpoly: bool,
        /// Skip the toric presentation.
        #[arg(long)]
        no_toric: bool,
    },
    /// Minimal polynomial of the series.
    Minpoly(Common),
    /// Binomial presentation of the normalization.
    Toric(Common),
    /// Puiseux series for a lattice L given as generators, e.g. "(1,1);(1,-1)".
    FromHj(Common),
}

#[derive(Args)]
struct Common {
    /// Series expression or lattice specification.
    expr: Option<String>,
    /// Read the expression from a file instead.
    #[arg(long, value_name = "PATH", conflicts_with = "expr")]
    input: Option<String>,
    /// Number of variables.
    #[arg(long, value_name = "N")]
    vars: Option<usize>,
    /// Monomial order weights w1,...,wn.
    #[arg(long, value_name = "W", allow_hyphen_values = true)]
    omega: Option<String>,
    /// Degree bound for toric binomials.
    #[arg(long, value_name = "D")]
    degree_bound: Option<u32>,
    /// Compact JSON output (the default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long)]
    pretty: bool,
}

impl Common {
    fn text(&self) -> Result<String, CliError> {
        match (&self.expr, &self.input) {
            (Some(e), _) => Ok(e.clone()),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| CliError::User(format!("input: cannot read {path}: {e}"))),
            (None, None) => Err(CliError::User("input: give an expression or --input PATH".into())),
        }
    }

    fn options(&self) -> Result<Options, CliError> {
        let omega = self.omega.as_deref().map(parse_weights).transpose()?;
        Ok(Options {
            vars: self.vars,
            omega,
            degree_bound: self.degree_bound,
            ..Options::default()
        })
    }
}

fn run(cli: Cli) -> Result<(JobReport, bool), CliError> {
    let (common, command, skip) = match &cli.command {
        Sub::Exponents(c) => (c, Some(Command::Exponents), (false, false)),
        Sub::Saturate(c) => (c, Some(Command::Saturate), (false, false)),
        Sub::Normalize {
            common,
            no_minpoly,
            no_toric,
        } => (common, Some(Command::Normalize), (*no_minpoly, *no_toric)),
        Sub::Minpoly(c) => (c, Some(Command::Minpoly), (false, false)),
        Sub::Toric(c) => (c, Some(Command::Toric), (false, false)),
        Sub::FromHj(c) => (c, None, (false, false)),
    };
    let text = common.text()?;
    let mut opts = common.options()?;
    (opts.skip_minpoly, opts.skip_toric) = skip;
    let report = match command {
        Some(cmd) => run_series(cmd, &text, &opts)?,
        None => run_from_hj(&text, &opts)?,
    };
    Ok((report, common.pretty))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((report, pretty)) => {
            println!("{}", report.to_json(pretty));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! Subcommand pipelines.

use std::time::Instant;

use thiserror::Error;
use toricnorm::hj::{hj_to_puiseux, HJInput, HjError};
use toricnorm::minpoly::{minimal_polynomial, MinPolyError};
use toricnorm::puiseux::{distinguished_exponents, PuiseuxError};
use toricnorm::semigroup::{m_vector, SemigroupError};
use toricnorm::toric::{ToricError, ToricPresentation};
use toricnorm::{AffineSemigroup, ExpVec, LatticeError, MonomialOrder, PuiseuxSeries, Rational};

use crate::parse::{parse_lattice_spec, parse_series, ParseError};
use crate::report::{int_rows, vectors, HjReport, JobReport, LatticeReport, PolyReport, ToricReport};

/// A failed run: bad input (exit code 1) or a failed internal check (exit code 2).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    User(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::User(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::User(e.to_string())
    }
}

macro_rules! user_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::User(e.to_string())
            }
        }
    )*};
}

user_errors!(PuiseuxError, SemigroupError, ToricError, LatticeError);

impl From<MinPolyError> for CliError {
    fn from(e: MinPolyError) -> Self {
        match e {
            MinPolyError::Certificate { .. } => CliError::Internal(e.to_string()),
            _ => CliError::User(e.to_string()),
        }
    }
}

impl From<HjError> for CliError {
    fn from(e: HjError) -> Self {
        match e {
            HjError::RoundTrip(_) => CliError::Internal(e.to_string()),
            HjError::MinPoly(inner) => inner.into(),
            _ => CliError::User(e.to_string()),
        }
    }
}

/// Which parts of the forward pipeline a subcommand reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Exponents,
    Saturate,
    Normalize,
    Minpoly,
    Toric,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Exponents => "exponents",
            Command::Saturate => "saturate",
            Command::Normalize => "normalize",
            Command::Minpoly => "minpoly",
            Command::Toric => "toric",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Number of variables; inferred from the input when absent.
    pub vars: Option<usize>,
    /// Weight vector of the monomial order; all ones when absent.
    pub omega: Option<Vec<Rational>>,
    /// Degree bound for toric binomials; twice the largest column degree when absent.
    pub degree_bound: Option<u32>,
    /// `normalize` only: skip the minimal polynomial.
    pub skip_minpoly: bool,
    /// `normalize` only: skip the toric presentation.
    pub skip_toric: bool,
}

fn monomial_order(n: usize, opts: &Options) -> Result<MonomialOrder, CliError> {
    match &opts.omega {
        None => Ok(MonomialOrder::standard(n)),
        Some(w) if w.len() != n => Err(CliError::User(format!(
            "puiseux: --omega has {} weights but the series has {n} variables",
            w.len()
        ))),
        Some(w) => Ok(MonomialOrder::new(ExpVec::new(w.clone()))?),
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Run a forward-direction subcommand on series text.
pub fn run_series(command: Command, text: &str, opts: &Options) -> Result<JobReport, CliError> {
    let start = Instant::now();
    let xi = parse_series(text, opts.vars)?;
    let mut report = forward(command, &xi, text, opts)?;
    report.timing_ms = elapsed_ms(start);
    Ok(report)
}

/// The full forward pipeline on series text.
pub fn run_normalize(text: &str, opts: &Options) -> Result<JobReport, CliError> {
    run_series(Command::Normalize, text, opts)
}

/// Forward pipeline on an already parsed series.
pub fn forward(command: Command, xi: &PuiseuxSeries, source: &str, opts: &Options) -> Result<JobReport, CliError> {
    let n = xi.dim();
    let ord = monomial_order(n, opts)?;
    let mut report = JobReport::new(command.name(), source, n, ord.weight());
    if xi.is_zero() {
        return Err(PuiseuxError::EmptySupport.into());
    }
    report.series = Some(xi.to_text());

    let wants_minpoly = match command {
        Command::Minpoly => true,
        Command::Normalize => !opts.skip_minpoly,
        _ => false,
    };
    if wants_minpoly {
        report.minimal_polynomial = Some(PolyReport::of(&minimal_polynomial(xi)?));
    }
    if command == Command::Minpoly {
        return Ok(report);
    }

    let d = distinguished_exponents(xi, &ord)?;
    report.distinguished_exponents = Some(vectors(d.exponents()));
    report.span_group = Some(LatticeReport::of(d.group()));
    if command == Command::Exponents {
        return Ok(report);
    }

    let semigroup = AffineSemigroup::new(n, d.exponents().to_vec())?;
    let sat = semigroup.saturate();
    report.hilbert_basis = Some(vectors(sat.hilbert_basis()));
    if command != Command::Toric {
        report.saturated = Some(semigroup.is_saturated());
        report.smooth = Some(sat.is_smooth());
        report.m_vector = Some(
            m_vector(sat.span_group())
                .entries()
                .iter()
                .map(toricnorm::expvec::fmt_rational)
                .collect(),
        );
    }

    let wants_toric = match command {
        Command::Toric => true,
        Command::Normalize => !opts.skip_toric,
        _ => false,
    };
    if wants_toric {
        let p = ToricPresentation::of_hilbert_basis(
            sat.hilbert_basis(),
            sat.span_group().denominator(),
            opts.degree_bound,
        )?;
        report.toric = Some(ToricReport::of(&p));
    }
    Ok(report)
}

/// The converse pipeline on a lattice specification such as `"(1,1);(1,-1)"`.
pub fn run_from_hj(spec: &str, opts: &Options) -> Result<JobReport, CliError> {
    let start = Instant::now();
    let rows = parse_lattice_spec(spec)?;
    let n = rows[0].len();
    if let Some(v) = opts.vars {
        if v != n {
            return Err(CliError::User(format!(
                "hj: lattice vectors have {n} entries but --vars is {v}"
            )));
        }
    }
    let input = HJInput::from_generators(&rows, n)?;
    let ord = monomial_order(n, opts)?;
    let r = hj_to_puiseux(&input, &ord)?;

    let mut report = JobReport::new("from-hj", spec, n, ord.weight());
    report.m_vector = Some(r.m.entries().iter().map(toricnorm::expvec::fmt_rational).collect());
    report.distinguished_exponents = Some(vectors(r.exponents.exponents()));
    report.span_group = Some(LatticeReport::of(r.exponents.group()));
    report.series = Some(r.xi.to_text());
    report.minimal_polynomial = r.f.as_ref().map(PolyReport::of);
    report.smooth = Some(r.smooth);
    report.hj = Some(HjReport {
        lattice: int_rows(input.lattice()),
        l_prime: LatticeReport::of(&r.l_prime),
        round_trip: (&r.round_trip).into(),
        note: r
            .is_trivial()
            .then(|| "already smooth, no hypersurface needed".to_string()),
    });
    report.timing_ms = elapsed_ms(start);
    Ok(report)
}

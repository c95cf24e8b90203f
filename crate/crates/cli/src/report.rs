//! The JSON job report. Rationals are `"p/q"` strings and every list is in a
//! canonical order, so equal inputs give byte-identical output apart from
//! `timing_ms`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use toricnorm::expvec::fmt_rational;
use toricnorm::hj::RoundTrip;
use toricnorm::toric::ToricPresentation;
use toricnorm::{ExpVec, FracLattice, Lattice, PolyY, PuiseuxSeries};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobReport {
    pub command: String,
    pub input: String,
    pub vars: usize,
    pub omega: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinguished_exponents: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span_group: Option<LatticeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert_basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturated: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_vector: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_polynomial: Option<PolyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric: Option<ToricReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hj: Option<HjReport>,
    pub timing_ms: f64,
}

impl JobReport {
    pub fn new(command: &str, input: &str, vars: usize, omega: &ExpVec) -> Self {
        JobReport {
            command: command.to_string(),
            input: input.to_string(),
            vars,
            omega: omega.to_strings(),
            series: None,
            distinguished_exponents: None,
            span_group: None,
            hilbert_basis: None,
            saturated: None,
            smooth: None,
            m_vector: None,
            minimal_polynomial: None,
            toric: None,
            hj: None,
            timing_ms: 0.0,
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let out = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        };
        out.expect("report serializes")
    }
}

/// A lattice `M` with `Z^n ⊆ M ⊆ (1/k) Z^n`, given by `k` and the HNF rows of `kM`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub denominator: String,
    pub hnf: Vec<Vec<String>>,
}

impl LatticeReport {
    pub fn of(m: &FracLattice) -> Self {
        LatticeReport {
            denominator: m.denominator().to_string(),
            hnf: int_rows(m.scaled()),
        }
    }
}

pub fn int_rows(l: &Lattice) -> Vec<Vec<String>> {
    l.basis().rows().iter().map(|r| strings(r)).collect()
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn vectors(vs: &[ExpVec]) -> Vec<Vec<String>> {
    vs.iter().map(|v| v.to_strings()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReport {
    pub exponent: Vec<String>,
    pub coefficient: String,
}

/// Coefficient of `y^power`, as a list of monomials in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub power: usize,
    pub terms: Vec<TermReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyReport {
    pub degree: usize,
    pub text: String,
    pub coefficients: Vec<CoefficientReport>,
}

pub fn series_terms(s: &PuiseuxSeries) -> Vec<TermReport> {
    let mut terms: Vec<(&ExpVec, String)> = s
        .terms()
        .map(|(e, c)| {
            let text = match c.as_rational() {
                Some(r) => fmt_rational(&r),
                None => c.to_string(),
            };
            (e, text)
        })
        .collect();
    terms.sort_by(|a, b| a.0.canonical_cmp(b.0));
    terms
        .into_iter()
        .map(|(e, c)| TermReport {
            exponent: e.to_strings(),
            coefficient: c,
        })
        .collect()
}

impl PolyReport {
    pub fn of(f: &PolyY) -> Self {
        let coefficients = (0..=f.degree())
            .rev()
            .map(|j| CoefficientReport {
                power: j,
                terms: series_terms(&f.coefficient(j)),
            })
            .collect();
        PolyReport {
            degree: f.degree(),
            text: f.to_text(),
            coefficients,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialReport {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricReport {
    pub variables: Vec<String>,
    /// Column `j` is `k` times the `j`-th Hilbert basis element.
    pub columns: Vec<Vec<String>>,
    pub binomials: Vec<BinomialReport>,
    pub degree_bound: u32,
    pub completeness: String,
}

impl ToricReport {
    pub fn of(p: &ToricPresentation) -> Self {
        let names = p.variable_names();
        let a = p.exponent_matrix();
        ToricReport {
            columns: (0..a.ncols()).map(|j| strings(&a.column(j))).collect(),
            binomials: p
                .binomials()
                .iter()
                .map(|b| BinomialReport {
                    plus: b.plus().to_vec(),
                    minus: b.minus().to_vec(),
                    text: b.to_text(&names),
                })
                .collect(),
            variables: names,
            degree_bound: p.degree_bound(),
            completeness: format!("complete up to degree {}", p.degree_bound()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub span_matches: bool,
    pub regenerates: bool,
}

impl From<&RoundTrip> for RoundTripReport {
    fn from(r: &RoundTrip) -> Self {
        RoundTripReport {
            span_matches: r.span_matches,
            regenerates: r.regenerates,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjReport {
    /// HNF rows of the input lattice `L`.
    pub lattice: Vec<Vec<String>>,
    pub l_prime: LatticeReport,
    pub round_trip: RoundTripReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

//! Puiseux series with finite support and distinguished exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::expvec::{fmt_rational, ExpVec, Rational};
use crate::lattice::FracLattice;
use crate::minpoly::CycloNumber;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PuiseuxError {
    #[error("puiseux: empty support")]
    EmptySupport,
    #[error("puiseux: exponents must be nonnegative, got {0}")]
    NegativeExponent(ExpVec),
    #[error("puiseux: dimension mismatch (expected {expected}, got {got})")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("puiseux: order weights must be strictly positive")]
    NonPositiveWeight,
}

/// A term written as fractions: `[(num, den); n]` exponents and a `(num, den)` coefficient.
pub type FracTerm<'a> = (&'a [(i64, i64)], (i64, i64));

/// A finite sum `Σ a_λ X^λ` with `λ ∈ (Q≥0)^n` and cyclotomic coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    dim: usize,
    terms: BTreeMap<ExpVec, CycloNumber>,
}

impl PuiseuxSeries {
    pub fn zero(dim: usize) -> Self {
        PuiseuxSeries {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: CycloNumber) -> Self {
        Self::monomial(ExpVec::zero(dim), c)
    }

    pub fn monomial(exp: ExpVec, c: CycloNumber) -> Self {
        let mut s = Self::zero(exp.dim());
        s.add_term(exp, c);
        s
    }

    /// Collect terms, merging equal exponents and dropping zero coefficients.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, PuiseuxError>
    where
        I: IntoIterator<Item = (ExpVec, CycloNumber)>,
    {
        let mut s = Self::zero(dim);
        for (e, c) in terms {
            if e.dim() != dim {
                return Err(PuiseuxError::DimensionMismatch {
                    expected: dim,
                    got: e.dim(),
                });
            }
            if !e.is_nonnegative() {
                return Err(PuiseuxError::NegativeExponent(e));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// Build from `(exponent, rational coefficient)` pairs given as fractions.
    pub fn from_rational_terms(dim: usize, terms: &[FracTerm<'_>]) -> Result<Self, PuiseuxError> {
        Self::from_terms(
            dim,
            terms.iter().map(|(e, (p, q))| {
                (
                    ExpVec::from_fracs(e),
                    CycloNumber::rational(Rational::new((*p).into(), (*q).into())),
                )
            }),
        )
    }

    pub(crate) fn add_term(&mut self, e: ExpVec, c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(e, sum);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &CycloNumber)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExpVec) -> Option<&CycloNumber> {
        self.terms.get(e)
    }

    pub fn support(&self) -> impl Iterator<Item = &ExpVec> {
        self.terms.keys()
    }

    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> PuiseuxSeries {
        PuiseuxSeries {
            dim: self.dim,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let mut out = PuiseuxSeries::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycloNumber) -> PuiseuxSeries {
        let mut out = PuiseuxSeries::zero(self.dim);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.mul(c));
        }
        out
    }

    /// Whether every exponent is integral.
    pub fn has_integral_support(&self) -> bool {
        self.terms.keys().all(ExpVec::is_integral)
    }

    /// Whether every coefficient is rational.
    pub fn has_rational_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    /// `Z^n + Z Supp(ξ)`.
    pub fn support_group(&self) -> Result<FracLattice, PuiseuxError> {
        if self.is_zero() {
            return Err(PuiseuxError::EmptySupport);
        }
        let support: Vec<ExpVec> = self.terms.keys().cloned().collect();
        Ok(FracLattice::from_generators(&support, self.dim).expect("support dimensions checked"))
    }

    /// Render with variable names `x1..xn`; the output parses back to the
    /// same series.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&ExpVec> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.canonical_cmp(b));
        let mut out = String::new();
        for e in keys {
            let c = &self.terms[e];
            let mono = monomial_text(e);
            for (r, j) in c.terms() {
                let unit = (j > 0).then(|| format!("zeta({})^{}", c.conductor(), j));
                let mut factors: Vec<String> = Vec::new();
                let a = r.abs();
                if !a.is_one() || (unit.is_none() && mono.is_empty()) {
                    factors.push(fmt_rational(&a));
                }
                factors.extend(unit);
                if !mono.is_empty() {
                    factors.push(mono.clone());
                }
                let body = factors.join("*");
                match (out.is_empty(), r.is_negative()) {
                    (true, false) => out.push_str(&body),
                    (true, true) => {
                        out.push('-');
                        out.push_str(&body);
                    }
                    (false, false) => {
                        out.push_str(" + ");
                        out.push_str(&body);
                    }
                    (false, true) => {
                        out.push_str(" - ");
                        out.push_str(&body);
                    }
                }
            }
        }
        out
    }
}

/// `x1^(p/q)*x2^3*...` with unit exponents elided; empty for the zero vector.
pub fn monomial_text(e: &ExpVec) -> String {
    e.entries()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(i, a)| {
            if a.is_one() {
                format!("x{}", i + 1)
            } else if a.is_integer() {
                format!("x{}^{}", i + 1, a)
            } else {
                format!("x{}^({})", i + 1, fmt_rational(a))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PuiseuxSeries({})", self.to_text())
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Total order on `(Q≥0)^n`: compare `ω·λ`, then lexicographically.
///
/// The lexicographic tie-break stands in for a weight with rationally
/// independent coordinates, which cannot be stored exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    weight: ExpVec,
}

impl MonomialOrder {
    pub fn new(weight: ExpVec) -> Result<Self, PuiseuxError> {
        if weight.entries().iter().any(|w| !w.is_positive()) {
            return Err(PuiseuxError::NonPositiveWeight);
        }
        Ok(MonomialOrder { weight })
    }

    /// `ω = (1, ..., 1)`.
    pub fn standard(n: usize) -> Self {
        MonomialOrder {
            weight: ExpVec::new(vec![Rational::one(); n]),
        }
    }

    pub fn weight(&self) -> &ExpVec {
        &self.weight
    }

    pub fn compare(&self, a: &ExpVec, b: &ExpVec) -> Result<Ordering, PuiseuxError> {
        let n = self.weight.dim();
        for v in [a, b] {
            if v.dim() != n {
                return Err(PuiseuxError::DimensionMismatch {
                    expected: n,
                    got: v.dim(),
                });
            }
        }
        Ok(self.cmp_unchecked(a, b))
    }

    pub(crate) fn cmp_unchecked(&self, a: &ExpVec, b: &ExpVec) -> Ordering {
        self.weight
            .dot(a)
            .cmp(&self.weight.dot(b))
            .then_with(|| a.entries().cmp(b.entries()))
    }
}

/// Distinguished exponents in the order they were selected, together with
/// the group `Z^n + Σ λ^{(j)} Z` they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedExponents {
    exponents: Vec<ExpVec>,
    group: FracLattice,
}

impl DistinguishedExponents {
    pub fn exponents(&self) -> &[ExpVec] {
        &self.exponents
    }

    pub fn group(&self) -> &FracLattice {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

/// Greedy selection over a finite candidate set: repeatedly take the
/// `≤_ω`-least candidate outside the group generated so far.
pub(crate) fn greedy_select<'a, I>(candidates: I, n: usize, ord: &MonomialOrder) -> DistinguishedExponents
where
    I: IntoIterator<Item = &'a ExpVec>,
{
    let candidates: Vec<&ExpVec> = candidates.into_iter().collect();
    let mut group = FracLattice::integer(n);
    let mut exponents: Vec<ExpVec> = Vec::new();
    loop {
        let next = candidates
            .iter()
            .filter(|l| !group.contains(l).expect("candidate dimensions checked"))
            .min_by(|a, b| ord.cmp_unchecked(a, b));
        let Some(next) = next else { break };
        exponents.push((*next).clone());
        group = FracLattice::from_generators(&exponents, n).expect("dimensions checked");
    }
    DistinguishedExponents { exponents, group }
}

pub fn distinguished_exponents(
    xi: &PuiseuxSeries,
    ord: &MonomialOrder,
) -> Result<DistinguishedExponents, PuiseuxError> {
    if ord.weight.dim() != xi.dim() {
        return Err(PuiseuxError::DimensionMismatch {
            expected: xi.dim(),
            got: ord.weight.dim(),
        });
    }
    Ok(greedy_select(xi.support(), xi.dim(), ord))
}

//! Galois conjugates of a Puiseux series and its minimal polynomial over
//! `K[[X]]`.
//!
//! The conjugates of `ξ = Σ a_λ X^λ` are `ξ_χ = Σ a_λ χ(λ) X^λ` for the
//! characters `χ` of `M / Z^n`, where `M` is the support group. The minimal
//! polynomial is `∏_χ (y - ξ_χ)`, expanded exactly.

mod cyclo;
mod fast;

pub use cyclo::{cyclotomic_polynomial, totient, CycloNumber};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::expvec::ExpVec;
use crate::lattice::{FracLattice, QuotientStructure};
use crate::puiseux::{monomial_text, PuiseuxError, PuiseuxSeries};
use fast::FastSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinPolyError {
    #[error("minpoly: empty support")]
    EmptySupport,
    #[error("minpoly: support element {0} is not in the character lattice")]
    SupportOutsideLattice(ExpVec),
    #[error("minpoly: dimension mismatch (expected {expected}, got {got})")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("minpoly: quotient group too large ({0} elements)")]
    TooLarge(BigInt),
    /// A certificate check failed; this indicates an implementation defect.
    #[error("minpoly: internal certificate failure ({check}): {detail}")]
    Certificate { check: &'static str, detail: String },
}

impl From<PuiseuxError> for MinPolyError {
    fn from(e: PuiseuxError) -> Self {
        match e {
            PuiseuxError::EmptySupport => MinPolyError::EmptySupport,
            PuiseuxError::DimensionMismatch { expected, got } => MinPolyError::DimensionMismatch { expected, got },
            other => MinPolyError::Certificate {
                check: "input",
                detail: other.to_string(),
            },
        }
    }
}

/// All characters `M / Z^n → μ_e`, where `e` is the exponent of the group.
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    lattice: FracLattice,
    quotient: QuotientStructure,
    factors: Vec<u64>,
    exponent: u64,
    /// Character `a` sends the `i`-th invariant-factor generator to `ζ_{d_i}^{a_i}`.
    characters: Vec<Vec<u64>>,
}

/// Largest quotient handled by [`character_group`].
pub const MAX_CHARACTERS: u64 = 1 << 16;

pub fn character_group(m: &FracLattice) -> Result<CharacterGroup, MinPolyError> {
    let quotient = m.quotient();
    let order = quotient.order();
    if order > BigInt::from(MAX_CHARACTERS) {
        return Err(MinPolyError::TooLarge(order));
    }
    let factors: Vec<u64> = quotient
        .invariant_factors()
        .iter()
        .map(|d| d.to_u64().expect("bounded by MAX_CHARACTERS"))
        .collect();
    let exponent = factors.last().copied().unwrap_or(1);
    // lexicographic enumeration starting from the trivial character
    let mut characters = vec![vec![0u64; factors.len()]];
    for (i, &d) in factors.iter().enumerate().rev() {
        characters = characters
            .into_iter()
            .flat_map(|c| {
                (0..d).map(move |a| {
                    let mut c = c.clone();
                    c[i] = a;
                    c
                })
            })
            .collect();
    }
    characters.sort();
    Ok(CharacterGroup {
        lattice: m.clone(),
        quotient,
        factors,
        exponent,
        characters,
    })
}

impl CharacterGroup {
    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn lattice(&self) -> &FracLattice {
        &self.lattice
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    /// Exponent `e` of the group; all character values are `e`-th roots of unity.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Values of character `chi` on the invariant-factor generators, in `Q(ζ_e)`.
    pub fn generator_values(&self, chi: usize) -> Vec<CycloNumber> {
        self.characters[chi]
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| CycloNumber::zeta_pow(self.exponent, (a * (self.exponent / d)) as i64))
            .collect()
    }

    /// `s` with `χ(λ) = ζ_e^s`.
    pub fn value_exponent(&self, chi: usize, lambda: &ExpVec) -> Result<u64, MinPolyError> {
        let class = self
            .lattice
            .class_of(&self.quotient, lambda)
            .map_err(|_| MinPolyError::SupportOutsideLattice(lambda.clone()))?;
        let mut s = 0u64;
        for ((c, &d), &a) in class.iter().zip(&self.factors).zip(&self.characters[chi]) {
            let c = c.to_u64().expect("reduced class coordinate");
            s = (s + (c * a % d) * (self.exponent / d)) % self.exponent;
        }
        Ok(s)
    }

    pub fn value(&self, chi: usize, lambda: &ExpVec) -> Result<CycloNumber, MinPolyError> {
        Ok(CycloNumber::zeta_pow(
            self.exponent,
            self.value_exponent(chi, lambda)? as i64,
        ))
    }
}

/// `ξ_χ` for every character, trivial character first.
pub fn conjugates(xi: &PuiseuxSeries, cg: &CharacterGroup) -> Result<Vec<PuiseuxSeries>, MinPolyError> {
    if xi.dim() != cg.lattice.dim() {
        return Err(MinPolyError::DimensionMismatch {
            expected: cg.lattice.dim(),
            got: xi.dim(),
        });
    }
    (0..cg.len())
        .map(|chi| {
            let mut terms = Vec::with_capacity(xi.len());
            for (e, c) in xi.terms() {
                terms.push((e.clone(), c.mul(&cg.value(chi, e)?)));
            }
            Ok(PuiseuxSeries::from_terms(xi.dim(), terms)?)
        })
        .collect()
}

/// A monic polynomial `y^d + c_{d-1} y^{d-1} + ... + c_0` with Puiseux series
/// coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyY {
    dim: usize,
    coeffs: Vec<PuiseuxSeries>,
}

impl PolyY {
    /// Monic polynomial with lower coefficients `c_0, ..., c_{d-1}`.
    pub fn monic(dim: usize, lower: Vec<PuiseuxSeries>) -> Result<Self, MinPolyError> {
        if let Some(c) = lower.iter().find(|c| c.dim() != dim) {
            return Err(MinPolyError::DimensionMismatch {
                expected: dim,
                got: c.dim(),
            });
        }
        Ok(PolyY { dim, coeffs: lower })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_0, ..., c_{d-1}`; the leading coefficient 1 is implicit.
    pub fn lower_coefficients(&self) -> &[PuiseuxSeries] {
        &self.coeffs
    }

    /// Coefficient of `y^j`, including the leading 1.
    pub fn coefficient(&self, j: usize) -> PuiseuxSeries {
        match j.cmp(&self.degree()) {
            std::cmp::Ordering::Less => self.coeffs[j].clone(),
            std::cmp::Ordering::Equal => PuiseuxSeries::constant(self.dim, CycloNumber::one()),
            std::cmp::Ordering::Greater => PuiseuxSeries::zero(self.dim),
        }
    }

    /// `f(ξ)`, computed exactly.
    pub fn evaluate(&self, xi: &PuiseuxSeries) -> Result<PuiseuxSeries, MinPolyError> {
        if xi.dim() != self.dim {
            return Err(MinPolyError::DimensionMismatch {
                expected: self.dim,
                got: xi.dim(),
            });
        }
        // Horner on g(y) = E D^d f(y / D) at D ξ, with D and E clearing the
        // coefficient denominators of ξ and f; then f(ξ) = g(D ξ) / (E D^d).
        let all: Vec<&PuiseuxSeries> = self.coeffs.iter().chain(std::iter::once(xi)).collect();
        let (k, field) = fast::common_frame(&all);
        let dx = fast::coefficient_denominator(xi, &field);
        let ef = self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            acc.lcm(&fast::coefficient_denominator(c, &field))
        });
        let x = FastSeries::from_series(xi, &k, &field, &dx);
        let mut acc = FastSeries::one(self.dim, &field).scale(&ef);
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&x, &field);
            dpow *= &dx;
            acc.add_assign(&FastSeries::from_series(c, &k, &field, &(&ef * &dpow)));
        }
        Ok(acc.to_series(self.dim, &k, &field, &(ef * dpow)))
    }

    /// Render as a polynomial in `y` over `x1..xn`.
    /// Text such as `y^2 - x1*x2`; coefficients with several terms are
    /// parenthesized, e.g. `y^2 + (-2*x1 - 2*x2)*y`.
    pub fn to_text(&self) -> String {
        let mut out = match self.degree() {
            1 => "y".to_string(),
            d => format!("y^{d}"),
        };
        for j in (0..self.degree()).rev() {
            let c = &self.coeffs[j];
            if c.is_zero() {
                continue;
            }
            let ypow = match j {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{j}"),
            };
            let text = c.to_text();
            let (sign, body) = match text.strip_prefix('-') {
                Some(rest) if c.len() == 1 => (" - ", rest.to_string()),
                _ if c.len() == 1 => (" + ", text),
                _ => (" + ", format!("({text})")),
            };
            out.push_str(sign);
            match (body.as_str(), ypow.is_empty()) {
                (_, true) => out.push_str(&body),
                ("1", false) => out.push_str(&ypow),
                (_, false) => out.push_str(&format!("{body}*{ypow}")),
            }
        }
        out
    }
}

impl fmt::Debug for PolyY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyY({})", self.to_text())
    }
}

impl fmt::Display for PolyY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `∏_χ (y - ξ_χ)`, with the certificate checks: `deg f = [M : Z^n]`,
/// pairwise distinct conjugates, integral exponents, rational coefficients
/// and `f(ξ) = 0`.
///
/// The product is not multiplied out. Its power sums are
/// `Σ_χ ξ_χ^j = d · (integral part of ξ^j)` because `Σ_χ χ(λ)` is `d` on
/// `Z^n` and zero elsewhere, and Newton's identities turn them into the
/// elementary symmetric functions.
pub fn minimal_polynomial(xi: &PuiseuxSeries) -> Result<PolyY, MinPolyError> {
    let m = xi.support_group()?;
    let cg = character_group(&m)?;
    let n = xi.dim();
    let d = cg.len();

    let index = m.index_over_integers();
    if BigInt::from(d) != index {
        return Err(MinPolyError::Certificate {
            check: "degree",
            detail: format!("{d} characters but [M : Z^n] = {index}"),
        });
    }

    // ξ_χ is determined by the values of χ on the support
    let mut seen = std::collections::HashMap::with_capacity(d);
    for chi in 0..d {
        let values = xi
            .support()
            .map(|e| cg.value_exponent(chi, e))
            .collect::<Result<Vec<u64>, _>>()?;
        if let Some(prev) = seen.insert(values, chi) {
            return Err(MinPolyError::Certificate {
                check: "distinct conjugates",
                detail: format!("characters {prev} and {chi} give the same series"),
            });
        }
    }

    // Work with D ξ, whose coefficients are integral, so that every e_j is
    // integral and the division in Newton's identities is exact.
    let (k, field) = fast::common_frame(&[xi]);
    let k_small = k.to_i64().ok_or_else(|| MinPolyError::TooLarge(k.clone()))?;
    let dx = fast::coefficient_denominator(xi, &field);
    let x = FastSeries::from_series(xi, &k, &field, &dx);
    let d_int = BigInt::from(d);

    // p[j] = Σ_χ (D ξ_χ)^j
    let mut p: Vec<FastSeries> = vec![FastSeries::zero()];
    let mut power = FastSeries::one(n, &field);
    for _ in 1..=d {
        power = power.mul(&x, &field);
        p.push(power.integral_part(k_small).scale(&d_int));
    }

    // j e_j = Σ_{i=1}^{j} (-1)^(i-1) e_{j-i} p_i
    let mut e: Vec<FastSeries> = vec![FastSeries::one(n, &field)];
    for j in 1..=d {
        let mut acc = FastSeries::zero();
        for i in 1..=j {
            if p[i].is_zero() || e[j - i].is_zero() {
                continue;
            }
            let term = e[j - i].mul(&p[i], &field);
            if i % 2 == 1 {
                acc.add_assign(&term);
            } else {
                acc.add_assign(&term.neg());
            }
        }
        let ej = acc
            .divide_exact(&BigInt::from(j))
            .ok_or_else(|| MinPolyError::Certificate {
                check: "integrality",
                detail: format!("e_{j} is not integral"),
            })?;
        e.push(ej);
    }

    // coefficient of y^i is (-1)^(d-i) e_(d-i) / D^(d-i)
    let mut lower = Vec::with_capacity(d);
    for i in 0..d {
        let j = d - i;
        let ej = if j % 2 == 0 { e[j].clone() } else { e[j].neg() };
        let s = ej.to_series(n, &k, &field, &num_traits::pow(dx.clone(), j));
        if let Some((mono, _)) = s.terms().find(|(mono, _)| !mono.is_integral()) {
            return Err(MinPolyError::Certificate {
                check: "integral exponents",
                detail: format!("coefficient of y^{i} has monomial {}", monomial_text(mono)),
            });
        }
        if let Some((mono, c)) = s.terms().find(|(_, c)| c.as_rational().is_none()) {
            return Err(MinPolyError::Certificate {
                check: "rational coefficients",
                detail: format!("coefficient of y^{i} has {c} at {}", monomial_text(mono)),
            });
        }
        lower.push(s);
    }
    let f = PolyY::monic(n, lower)?;

    let residue = f.evaluate(xi)?;
    if !residue.is_zero() {
        return Err(MinPolyError::Certificate {
            check: "f(xi) = 0",
            detail: format!("residue {residue}"),
        });
    }
    Ok(f)
}

/// `∏_χ ξ_χ`, for checking the constant-term identity `∏ ξ_χ = (-1)^d c_0`.
pub fn conjugate_product(xi: &PuiseuxSeries) -> Result<PuiseuxSeries, MinPolyError> {
    let cg = character_group(&xi.support_group()?)?;
    let conj = conjugates(xi, &cg)?;
    Ok(conj
        .iter()
        .fold(PuiseuxSeries::constant(xi.dim(), CycloNumber::one()), |acc, c| {
            acc.mul(c)
        }))
}

#[cfg(test)]
mod tests;

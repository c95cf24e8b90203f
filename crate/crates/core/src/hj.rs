//! From Hirzebruch-Jung lattice data back to a Puiseux hypersurface.
//!
//! For a full-rank `L ⊆ Z^n` let `m_i e_i` be the least positive multiple of
//! `e_i` in `L` and `L'` the lattice obtained by dividing coordinate `i` by
//! `m_i`. Then `L' ⊇ Z^n`, and the semigroup `L ∩ (R≥0)^n` is isomorphic to
//! `S' = L' ∩ (Q≥0)^n`. Greedy exponents over `S'` give `ξ = Σ X^λ`, whose
//! hypersurface `f(ξ) = 0` normalizes to `K[S']`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::expvec::{ExpVec, Rational};
use crate::lattice::{FracLattice, Lattice, LatticeError};
use crate::minpoly::{minimal_polynomial, CycloNumber, MinPolyError, PolyY};
use crate::puiseux::{greedy_select, DistinguishedExponents, MonomialOrder, PuiseuxSeries};
use crate::semigroup::{generated_by, is_smooth, AffineSemigroup, MVector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HjError {
    #[error("hj: order has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("hj: round trip failed: {0}")]
    RoundTrip(&'static str),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    MinPoly(#[from] MinPolyError),
}

/// A full-rank sublattice `L ⊆ Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJInput {
    lattice: Lattice,
}

impl HJInput {
    /// Accepts any generating set (or HNF basis); rank-deficient input is an error.
    pub fn from_generators(gens: &[Vec<BigInt>], n: usize) -> Result<Self, HjError> {
        Ok(HJInput {
            lattice: Lattice::from_generators(gens, n)?,
        })
    }

    pub fn new(lattice: Lattice) -> Self {
        HJInput { lattice }
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }
}

/// The m-vector of `L` and the rescaled lattice `L'`.
pub fn rescale(l: &Lattice) -> (MVector, FracLattice) {
    let m: Vec<BigInt> = (0..l.dim()).map(|i| l.axis_multiple(i)).collect();
    let l_prime = FracLattice::rescale_integer(l, &m).expect("m_i e_i lies in L");
    let mv = MVector::new(m.into_iter().map(Rational::from_integer).collect());
    (mv, l_prime)
}

/// Greedy exponents over `S' = L' ∩ (Q≥0)^n`.
///
/// Each minimum lies in `[0,1)^n`: subtracting `e_i` from a candidate with a
/// coordinate at least 1 keeps it in `S'` and outside the current group while
/// lowering its weight. So the box points of `L'` are the only candidates.
pub fn hj_exponents(l_prime: &FracLattice, ord: &MonomialOrder) -> Result<DistinguishedExponents, HjError> {
    let n = l_prime.dim();
    if ord.weight().dim() != n {
        return Err(HjError::DimensionMismatch {
            expected: n,
            got: ord.weight().dim(),
        });
    }
    let k = l_prime.denominator();
    let upper = vec![k - BigInt::one(); n];
    let candidates: Vec<ExpVec> = l_prime
        .scaled()
        .points_in_box(&upper)
        .iter()
        .filter(|p| p.iter().any(|x| !x.is_zero()))
        .map(|p| ExpVec::from_scaled(p, k))
        .collect();
    let d = greedy_select(&candidates, n, ord);
    debug_assert!(d.group() == l_prime);
    Ok(d)
}

/// Outcome of the round-trip check on the exponent semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    /// The span group of the exponent semigroup equals `L'`.
    pub span_matches: bool,
    /// The saturation's Hilbert basis generates every point of `S'` in `[0,2]^n`.
    pub regenerates: bool,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.span_matches && self.regenerates
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJResult {
    pub m: MVector,
    pub l_prime: FracLattice,
    pub exponents: DistinguishedExponents,
    /// `Σ X^λ` over the exponents; zero when `L' = Z^n`.
    pub xi: PuiseuxSeries,
    /// Minimal polynomial of `ξ`; absent when `L' = Z^n`.
    pub f: Option<PolyY>,
    pub smooth: bool,
    pub round_trip: RoundTrip,
}

impl HJResult {
    /// `L' = Z^n`: the point is already smooth and no hypersurface is needed.
    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }
}

pub fn hj_to_puiseux(input: &HJInput, ord: &MonomialOrder) -> Result<HJResult, HjError> {
    let n = input.dim();
    let (m, l_prime) = rescale(input.lattice());
    let exponents = hj_exponents(&l_prime, ord)?;
    let xi = exponents.exponents().iter().fold(PuiseuxSeries::zero(n), |acc, e| {
        acc.add(&PuiseuxSeries::monomial(e.clone(), CycloNumber::one()))
    });
    let f = if xi.is_zero() {
        None
    } else {
        Some(minimal_polynomial(&xi)?)
    };
    let round_trip = round_trip(&l_prime, exponents.exponents());
    if !round_trip.holds() {
        return Err(HjError::RoundTrip(if round_trip.span_matches {
            "Hilbert basis does not generate S'"
        } else {
            "span group differs from L'"
        }));
    }
    let smooth = is_smooth(&l_prime);
    Ok(HJResult {
        m,
        l_prime,
        exponents,
        xi,
        f,
        smooth,
        round_trip,
    })
}

fn round_trip(l_prime: &FracLattice, exponents: &[ExpVec]) -> RoundTrip {
    let n = l_prime.dim();
    let s = AffineSemigroup::new(n, exponents.to_vec()).expect("box exponents are nonnegative");
    let sat = s.saturate();
    let span_matches = sat.span_group() == l_prime;
    let k = l_prime.denominator();
    let upper = vec![k * BigInt::from(2); n];
    let hb = sat.hilbert_basis();
    let regenerates = l_prime
        .scaled()
        .points_in_box(&upper)
        .iter()
        .all(|p| generated_by(&ExpVec::from_scaled(p, k), hb));
    RoundTrip {
        span_matches,
        regenerates,
    }
}

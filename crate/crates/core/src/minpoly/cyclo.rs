//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::expvec::{fmt_rational, Rational};

static CYCLOTOMIC_CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();

/// Coefficients of `Φ_N`, lowest degree first.
///
/// Computed as `(t^N - 1) / ∏_{d | N, d < N} Φ_d` and memoized per `N`.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic index must be positive");
    let cache = CYCLOTOMIC_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = div_exact_monic(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    cache.lock().unwrap().entry(n).or_insert(p).clone()
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(n: u64) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An element of `Q(ζ_N)`, stored as a polynomial in `ζ_N` of degree below
/// `φ(N)`. The conductor is not minimized; equality embeds both sides into
/// the lcm of the conductors.
#[derive(Clone)]
pub struct CycloNumber {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn rational(r: Rational) -> Self {
        CycloNumber {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(x: i64) -> Self {
        Self::rational(Rational::from_integer(x.into()))
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `ζ_N^j` for any integer `j`.
    pub fn zeta_pow(n: u64, j: i64) -> Self {
        assert!(n >= 1);
        let e = j.rem_euclid(n as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        CycloNumber {
            conductor: n,
            coeffs: reduce(poly, n),
        }
    }

    /// From a reduced representative in `Q(ζ_N)`; constants drop to conductor 1.
    pub(crate) fn from_parts(conductor: u64, coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), totient(conductor));
        if coeffs[1..].iter().all(Zero::is_zero) {
            return Self::rational(coeffs.into_iter().next().unwrap());
        }
        CycloNumber { conductor, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients in the power basis `1, ζ, ..., ζ^{φ(N)-1}`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, when the representative is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Re-express in `Q(ζ_L)` for a multiple `L` of the conductor.
    pub fn embed(&self, l: u64) -> CycloNumber {
        assert!(
            l.is_multiple_of(self.conductor),
            "embedding target must be a multiple of the conductor"
        );
        if l == self.conductor {
            return self.clone();
        }
        let step = (l / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        CycloNumber {
            conductor: l,
            coeffs: reduce(poly, l),
        }
    }

    fn common(&self, other: &CycloNumber) -> (CycloNumber, CycloNumber) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.embed(l), other.embed(l))
    }

    pub fn add(&self, other: &CycloNumber) -> CycloNumber {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycloNumber {
            conductor: a.conductor,
            coeffs,
        }
    }

    pub fn neg(&self) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, other: &CycloNumber) -> CycloNumber {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycloNumber) -> CycloNumber {
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        let (a, b) = self.common(other);
        let mut poly = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        CycloNumber {
            conductor: a.conductor,
            coeffs: reduce(poly, a.conductor),
        }
    }

    pub fn scale(&self, r: &Rational) -> CycloNumber {
        CycloNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    /// Terms `(c, j)` with `self = Σ c ζ_N^j`, zero coefficients skipped.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, usize)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (c, j))
    }
}

/// Reduce a polynomial in `ζ_N` modulo `Φ_N`; the result has length `φ(N)`.
fn reduce(mut poly: Vec<Rational>, n: u64) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = poly[i].clone();
        for (j, pj) in phi.iter().enumerate() {
            if !pj.is_zero() {
                poly[i - deg + j] -= &c * Rational::from_integer(pj.clone());
            }
        }
    }
    poly.resize(deg, Rational::zero());
    poly
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNumber {
    /// Rationals print as `p/q`; other values as a sum of `c*zeta(N)^j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&r));
        }
        let mut first = true;
        for (c, j) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let unit = match j {
                0 => String::new(),
                _ => format!("zeta({})^{}", self.conductor, j),
            };
            match (a.is_one(), unit.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{unit}")?,
                (false, true) => write!(f, "{}", fmt_rational(&a))?,
                (false, false) => write!(f, "{}*{unit}", fmt_rational(&a))?,
            }
        }
        Ok(())
    }
}

//! Working representation for products of many series: exponents scaled by a
//! common denominator to `i64` keys, coefficients as integer vectors in one
//! fixed cyclotomic field. Callers clear coefficient denominators first and
//! divide them back out at the end, so no gcd work happens in the inner loops.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::cyclo::{cyclotomic_polynomial, CycloNumber};
use crate::expvec::{ExpVec, Rational};
use crate::puiseux::PuiseuxSeries;

/// `Q(ζ_L)` with its (monic, integral) reduction polynomial.
pub(crate) struct Field {
    conductor: u64,
    phi: Arc<Vec<BigInt>>,
}

impl Field {
    pub(crate) fn new(conductor: u64) -> Self {
        Field {
            conductor,
            phi: cyclotomic_polynomial(conductor),
        }
    }

    fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn embed(&self, c: &CycloNumber) -> Vec<Rational> {
        c.embed(self.conductor).coefficients().to_vec()
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if b[1..].iter().all(Zero::is_zero) {
            return a.iter().map(|x| x * &b[0]).collect();
        }
        if a[1..].iter().all(Zero::is_zero) {
            return b.iter().map(|x| x * &a[0]).collect();
        }
        let deg = self.degree();
        let mut poly = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (j, pj) in self.phi.iter().enumerate().take(deg) {
                if !pj.is_zero() {
                    poly[i - deg + j] -= &c * pj;
                }
            }
        }
        poly.truncate(deg);
        poly
    }
}

/// Common exponent denominator and coefficient field of a set of series.
pub(crate) fn common_frame(series: &[&PuiseuxSeries]) -> (BigInt, Field) {
    let mut k = BigInt::one();
    let mut l = 1u64;
    for s in series {
        for (e, c) in s.terms() {
            k = k.lcm(&e.denominator());
            l = l.lcm(&c.conductor());
        }
    }
    (k, Field::new(l))
}

/// Least `D > 0` making every coefficient of `s` integral in the field basis.
pub(crate) fn coefficient_denominator(s: &PuiseuxSeries, field: &Field) -> BigInt {
    s.terms()
        .flat_map(|(_, c)| field.embed(c))
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn exponent_key(e: &ExpVec, k: &BigInt) -> Vec<i64> {
    e.scaled(k)
        .expect("frame denominator clears exponents")
        .iter()
        .map(|x| x.to_i64().expect("exponent fits in i64"))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct FastSeries {
    terms: HashMap<Vec<i64>, Vec<BigInt>>,
}

impl FastSeries {
    pub(crate) fn zero() -> Self {
        FastSeries::default()
    }

    pub(crate) fn one(n: usize, field: &Field) -> Self {
        let mut c = vec![BigInt::zero(); field.degree()];
        c[0] = BigInt::one();
        let mut terms = HashMap::new();
        terms.insert(vec![0; n], c);
        FastSeries { terms }
    }

    /// `scale · s`; `scale` must clear every coefficient denominator.
    pub(crate) fn from_series(s: &PuiseuxSeries, k: &BigInt, field: &Field, scale: &BigInt) -> Self {
        let terms = s
            .terms()
            .map(|(e, c)| {
                let coeffs = field
                    .embed(c)
                    .iter()
                    .map(|x| {
                        let v = x * scale;
                        assert!(v.is_integer(), "scale clears coefficient denominators");
                        v.to_integer()
                    })
                    .collect();
                (exponent_key(e, k), coeffs)
            })
            .collect();
        FastSeries { terms }
    }

    /// The series divided by `divisor`, back in the public representation.
    pub(crate) fn to_series(&self, n: usize, k: &BigInt, field: &Field, divisor: &BigInt) -> PuiseuxSeries {
        let terms = self.terms.iter().map(|(key, c)| {
            let e = ExpVec::from_scaled(&key.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), k);
            let coeffs = c.iter().map(|x| Rational::new(x.clone(), divisor.clone())).collect();
            (e, CycloNumber::from_parts(field.conductor, coeffs))
        });
        PuiseuxSeries::from_terms(n, terms).expect("exponents stay nonnegative")
    }

    pub(crate) fn neg(&self) -> Self {
        self.map_coeffs(|x| -x)
    }

    pub(crate) fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return FastSeries::zero();
        }
        self.map_coeffs(|x| x * c)
    }

    /// Exact division of every coefficient, or `None` if some entry is not
    /// divisible.
    pub(crate) fn divide_exact(&self, c: &BigInt) -> Option<Self> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (key, v) in &self.terms {
            let mut out = Vec::with_capacity(v.len());
            for x in v {
                let (q, r) = x.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                out.push(q);
            }
            terms.insert(key.clone(), out);
        }
        Some(FastSeries { terms })
    }

    fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        FastSeries {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.iter().map(&f).collect()))
                .collect(),
        }
    }

    /// Terms whose scaled exponent is divisible by `k`, i.e. integral exponents.
    pub(crate) fn integral_part(&self, k: i64) -> Self {
        FastSeries {
            terms: self
                .terms
                .iter()
                .filter(|(key, _)| key.iter().all(|x| x % k == 0))
                .map(|(key, v)| (key.clone(), v.clone()))
                .collect(),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_assign(&mut self, other: &FastSeries) {
        for (key, c) in &other.terms {
            self.add_term(key.clone(), c.clone());
        }
    }

    fn add_term(&mut self, key: Vec<i64>, c: Vec<BigInt>) {
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                let cur = o.get_mut();
                for (x, y) in cur.iter_mut().zip(c) {
                    *x += y;
                }
                if cur.iter().all(Zero::is_zero) {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.iter().all(Zero::is_zero) {
                    v.insert(c);
                }
            }
        }
    }

    pub(crate) fn mul(&self, other: &FastSeries, field: &Field) -> FastSeries {
        let mut out = FastSeries::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let key: Vec<i64> = k1.iter().zip(k2).map(|(a, b)| a + b).collect();
                out.add_term(key, field.mul(c1, c2));
            }
        }
        out
    }
}

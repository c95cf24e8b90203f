//! Exact rational scalars and exponent vectors.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Parse `"p"` or `"p/q"` into a [`Rational`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Render a rational as `"p"` or `"p/q"`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A vector of exact rationals, used for exponents of monomials and for
/// elements of rational lattices.
///
/// The derived `Ord` is plain lexicographic order; see [`ExpVec::canonical_cmp`]
/// and [`ExpVec::grlex_cmp`] for the graded orders.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(Vec<Rational>);

impl ExpVec {
    pub fn new(entries: Vec<Rational>) -> Self {
        ExpVec(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExpVec(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(entries: I) -> Self {
        ExpVec(entries.into_iter().map(|x| Rational::from_integer(x.into())).collect())
    }

    /// Build from `(numerator, denominator)` pairs.
    pub fn from_fracs(entries: &[(i64, i64)]) -> Self {
        ExpVec(
            entries
                .iter()
                .map(|&(p, q)| Rational::new(p.into(), q.into()))
                .collect(),
        )
    }

    /// Divide an integer vector by a common denominator.
    pub fn from_scaled(v: &[BigInt], k: &BigInt) -> Self {
        ExpVec(v.iter().map(|x| Rational::new(x.clone(), k.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn degree(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.denom().is_one())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// Least common multiple of the entry denominators.
    pub fn denominator(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// `k * self` as an integer vector, or `None` when `k` does not clear
    /// every denominator.
    pub fn scaled(&self, k: &BigInt) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| {
                let y = x * Rational::from_integer(k.clone());
                y.denom().is_one().then(|| y.to_integer())
            })
            .collect()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn dot(&self, other: &ExpVec) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Standard graded-lexicographic comparison: total degree first, then
    /// lexicographic with coordinate 1 most significant.
    pub fn grlex_cmp(&self, other: &ExpVec) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }

    /// Canonical listing order for bases and columns: ascending total degree,
    /// and within one degree the vector that is larger lexicographically
    /// comes first (so `e1, e2, ..., en` are listed in that order).
    pub fn canonical_cmp(&self, other: &ExpVec) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }

    /// Strings in `"p/q"` form, one per entry.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rational).collect()
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", fmt_rational(x))?;
        }
        write!(f, ")")
    }
}

/// Integer vector to `Vec<BigInt>`.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let r = parse_rational(" 4/6 ").unwrap();
        assert_eq!(fmt_rational(&r), "2/3");
        assert_eq!(fmt_rational(&parse_rational("-3").unwrap()), "-3");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("a").is_none());
    }

    #[test]
    fn canonical_order_lists_x1_heavy_first() {
        let mut v = vec![
            ExpVec::from_ints([0, 1]),
            ExpVec::from_fracs(&[(1, 3), (2, 3)]),
            ExpVec::from_ints([1, 0]),
            ExpVec::from_fracs(&[(2, 3), (1, 3)]),
        ];
        v.sort_by(ExpVec::canonical_cmp);
        assert_eq!(
            v,
            vec![
                ExpVec::from_ints([1, 0]),
                ExpVec::from_fracs(&[(2, 3), (1, 3)]),
                ExpVec::from_fracs(&[(1, 3), (2, 3)]),
                ExpVec::from_ints([0, 1]),
            ]
        );
    }

    #[test]
    fn denominators_and_scaling() {
        let v = ExpVec::from_fracs(&[(1, 2), (2, 3)]);
        assert_eq!(v.denominator(), BigInt::from(6));
        assert_eq!(v.scaled(&BigInt::from(6)), Some(big_vec(&[3, 4])));
        assert_eq!(v.scaled(&BigInt::from(2)), None);
    }
}

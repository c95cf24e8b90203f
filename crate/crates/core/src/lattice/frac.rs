use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::{quotient_structure, Lattice, LatticeError, QuotientStructure};
use crate::expvec::{ExpVec, Rational};

/// A lattice `M` with `Z^n ⊆ M ⊆ (1/k) Z^n`, stored as the integer lattice
/// `k M` for the least such `k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FracLattice {
    k: BigInt,
    scaled: Lattice,
}

impl fmt::Debug for FracLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FracLattice")
            .field("k", &self.k.to_string())
            .field("scaled", self.scaled.basis())
            .finish()
    }
}

impl FracLattice {
    /// `Z^n`.
    pub fn integer(n: usize) -> Self {
        FracLattice {
            k: BigInt::one(),
            scaled: Lattice::standard(n),
        }
    }

    /// `Z^n + sum of v Z` over the given rational vectors.
    pub fn from_generators(gens: &[ExpVec], n: usize) -> Result<Self, LatticeError> {
        if let Some(g) = gens.iter().find(|g| g.dim() != n) {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                got: g.dim(),
            });
        }
        let k = gens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.denominator()));
        let mut rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.scaled(&k).expect("k clears denominators"))
            .collect();
        rows.extend(Lattice::scaled_standard(n, &k).basis().rows().iter().cloned());
        let scaled = Lattice::from_generators(&rows, n)?;
        Self::from_scaled(k, scaled)
    }

    /// Build from a denominator and the scaled lattice `k M`, which must contain
    /// `k Z^n`. The denominator is re-minimized.
    pub fn from_scaled(k: BigInt, scaled: Lattice) -> Result<Self, LatticeError> {
        if !k.is_positive() {
            return Err(LatticeError::Malformed("denominator must be positive"));
        }
        let n = scaled.dim();
        if !scaled.contains_lattice(&Lattice::scaled_standard(n, &k))? {
            return Err(LatticeError::NotSublattice);
        }
        let g = scaled.content().gcd(&k);
        if g.is_one() {
            return Ok(FracLattice { k, scaled });
        }
        Ok(FracLattice {
            k: &k / &g,
            scaled: scaled.divide_exact(&g),
        })
    }

    /// `L' = { (a_1/m_1, ..., a_n/m_n) : a in L }` for positive integers `m_i`
    /// with `m_i e_i ∈ L`.
    pub fn rescale_integer(l: &Lattice, m: &[BigInt]) -> Result<Self, LatticeError> {
        let n = l.dim();
        if m.len() != n {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                got: m.len(),
            });
        }
        let k = m.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
        let rows: Vec<Vec<BigInt>> = l
            .basis()
            .rows()
            .iter()
            .map(|r| r.iter().zip(m).map(|(a, mi)| a * (&k / mi)).collect())
            .collect();
        Self::from_scaled(k.clone(), Lattice::from_generators(&rows, n)?)
    }

    pub fn dim(&self) -> usize {
        self.scaled.dim()
    }

    /// Least `k` with `k M ⊆ Z^n`.
    pub fn denominator(&self) -> &BigInt {
        &self.k
    }

    /// The integer lattice `k M` in Hermite normal form.
    pub fn scaled(&self) -> &Lattice {
        &self.scaled
    }

    pub fn is_integer_lattice(&self) -> bool {
        self.k.is_one()
    }

    pub fn contains(&self, v: &ExpVec) -> Result<bool, LatticeError> {
        if v.dim() != self.dim() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        match v.scaled(&self.k) {
            Some(w) => self.scaled.member(&w),
            None => Ok(false),
        }
    }

    /// `[M : Z^n]`.
    pub fn index_over_integers(&self) -> BigInt {
        let n = self.dim() as u32;
        self.k.pow(n) / self.scaled.det()
    }

    /// Structure of `M / Z^n`, computed as `k M / k Z^n`.
    pub fn quotient(&self) -> QuotientStructure {
        let sub = Lattice::scaled_standard(self.dim(), &self.k);
        quotient_structure(&sub, &self.scaled).expect("k Z^n ⊆ k M by construction")
    }

    /// Class of `v ∈ M` in `M / Z^n` under the given quotient structure.
    pub fn class_of(&self, q: &QuotientStructure, v: &ExpVec) -> Result<Vec<BigInt>, LatticeError> {
        let w = v.scaled(&self.k).ok_or(LatticeError::NotSublattice)?;
        q.class_of(&w)
    }

    /// Basis rows of `M` as rational vectors.
    pub fn basis_vectors(&self) -> Vec<ExpVec> {
        self.scaled
            .basis()
            .rows()
            .iter()
            .map(|r| ExpVec::from_scaled(r, &self.k))
            .collect()
    }

    /// Least positive rational `t` with `t e_i ∈ M`.
    pub fn axis_multiple(&self, i: usize) -> Rational {
        Rational::new(self.scaled.axis_multiple(i), self.k.clone())
    }
}

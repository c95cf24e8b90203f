//! Affine semigroups generated by `(Z≥0)^n` and finitely many nonnegative
//! rational vectors, and their saturations.
//!
//! Every semigroup here contains the unit vectors and has nonnegative
//! generators, so its cone is the positive orthant and the saturation is
//! `M ∩ (Q≥0)^n` for the span group `M`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::expvec::{ExpVec, Rational};
use crate::lattice::{FracLattice, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("semigroup: generator {0} has a negative entry")]
    NegativeGenerator(ExpVec),
    #[error("semigroup: generator {got} has dimension {}, expected {expected}", got.dim())]
    DimensionMismatch { expected: usize, got: ExpVec },
    #[error("semigroup: dimension must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The semigroup generated by `e_1, ..., e_n` and extra rational generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSemigroup {
    dim: usize,
    extra: Vec<ExpVec>,
}

impl AffineSemigroup {
    /// Integral generators are absorbed by `(Z≥0)^n` and dropped, as are
    /// duplicates. Generators keep their input order otherwise.
    pub fn new(dim: usize, generators: Vec<ExpVec>) -> Result<Self, SemigroupError> {
        if dim == 0 {
            return Err(SemigroupError::ZeroDimension);
        }
        let mut extra: Vec<ExpVec> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.dim() != dim {
                return Err(SemigroupError::DimensionMismatch { expected: dim, got: g });
            }
            if !g.is_nonnegative() {
                return Err(SemigroupError::NegativeGenerator(g));
            }
            if g.is_integral() || extra.contains(&g) {
                continue;
            }
            extra.push(g);
        }
        Ok(AffineSemigroup { dim, extra })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The non-integral generators.
    pub fn extra_generators(&self) -> &[ExpVec] {
        &self.extra
    }

    /// All generators: the unit vectors followed by the extra ones.
    pub fn generators(&self) -> Vec<ExpVec> {
        (0..self.dim)
            .map(|i| ExpVec::unit(self.dim, i))
            .chain(self.extra.iter().cloned())
            .collect()
    }

    /// `M = Z^n + Σ λZ`.
    pub fn span_group(&self) -> FracLattice {
        FracLattice::from_generators(&self.extra, self.dim).expect("generators validated on construction")
    }

    pub fn saturate(&self) -> SaturatedSemigroup {
        SaturatedSemigroup::of_lattice(self.span_group())
    }

    /// Whether `t` is a `Z≥0`-combination of the generators.
    pub fn contains(&self, t: &ExpVec) -> bool {
        if t.dim() != self.dim || !t.is_nonnegative() {
            return false;
        }
        // Unit vectors absorb any nonnegative integral residual.
        let k = self.extra.iter().fold(t.denominator(), |acc, g| {
            num_integer::Integer::lcm(&acc, &g.denominator())
        });
        let target = t.scaled(&k).unwrap();
        let gens: Vec<Vec<BigInt>> = self.extra.iter().map(|g| g.scaled(&k).unwrap()).collect();
        residual_search(&target, &gens, &|rest: &[BigInt]| {
            rest.iter().all(|x| (x % &k).is_zero())
        })
    }

    /// Whether the semigroup equals its saturation.
    pub fn is_saturated(&self) -> bool {
        self.saturate().hilbert_basis().iter().all(|h| self.contains(h))
    }
}

/// Depth-first search over multiplicities of `gens` (all nonnegative, nonzero)
/// keeping the residual `target - Σ c_j g_j` nonnegative; succeeds when
/// `accept` holds for some reachable residual.
fn residual_search(target: &[BigInt], gens: &[Vec<BigInt>], accept: &dyn Fn(&[BigInt]) -> bool) -> bool {
    fn rec(rest: &mut Vec<BigInt>, gens: &[Vec<BigInt>], accept: &dyn Fn(&[BigInt]) -> bool) -> bool {
        let Some((g, tail)) = gens.split_first() else {
            return accept(rest);
        };
        let saved = rest.clone();
        loop {
            if rec(rest, tail, accept) {
                return true;
            }
            if rest.iter().zip(g).any(|(r, x)| r < x) {
                break;
            }
            for (r, x) in rest.iter_mut().zip(g) {
                *r -= x;
            }
        }
        *rest = saved;
        false
    }
    rec(&mut target.to_vec(), gens, accept)
}

/// Whether `t` is a `Z≥0`-combination of arbitrary nonzero nonnegative
/// rational vectors.
pub fn generated_by(t: &ExpVec, gens: &[ExpVec]) -> bool {
    if !t.is_nonnegative() {
        return false;
    }
    let k = gens.iter().fold(t.denominator(), |acc, g| {
        num_integer::Integer::lcm(&acc, &g.denominator())
    });
    let target = t.scaled(&k).unwrap();
    let gens: Vec<Vec<BigInt>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.scaled(&k).unwrap())
        .collect();
    residual_search(&target, &gens, &|rest: &[BigInt]| rest.iter().all(Zero::is_zero))
}

/// `S̄ = M ∩ (Q≥0)^n` with its Hilbert basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedSemigroup {
    span: FracLattice,
    hilbert_basis: Vec<ExpVec>,
}

impl SaturatedSemigroup {
    pub fn of_lattice(span: FracLattice) -> Self {
        let hilbert_basis = hilbert_basis(&span);
        SaturatedSemigroup { span, hilbert_basis }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn span_group(&self) -> &FracLattice {
        &self.span
    }

    /// Hilbert basis in canonical order (see [`ExpVec::canonical_cmp`]).
    pub fn hilbert_basis(&self) -> &[ExpVec] {
        &self.hilbert_basis
    }

    pub fn contains(&self, v: &ExpVec) -> bool {
        v.is_nonnegative() && self.span.contains(v).unwrap_or(false)
    }

    pub fn is_smooth(&self) -> bool {
        self.hilbert_basis.len() == self.dim()
    }
}

/// Per-axis minimal positive multiples: `m_i` is the least positive rational
/// with `m_i e_i ∈ M`. For an integer lattice these are integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MVector(Vec<Rational>);

impl MVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        MVector(entries)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    /// The entries as integers, when they all are.
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.0.iter().map(|m| m.is_integer().then(|| m.to_integer())).collect()
    }
}

pub fn m_vector(m: &FracLattice) -> MVector {
    MVector((0..m.dim()).map(|i| m.axis_multiple(i)).collect())
}

/// The lattice obtained from `M` by dividing coordinate `i` by `m_i`.
pub fn axis_rescaled(m: &FracLattice) -> FracLattice {
    let mv = m_vector(m);
    let gens: Vec<ExpVec> = m
        .basis_vectors()
        .iter()
        .map(|v| ExpVec::new(v.entries().iter().zip(mv.entries()).map(|(x, mi)| x / mi).collect()))
        .collect();
    FracLattice::from_generators(&gens, m.dim()).expect("dimensions agree")
}

/// `M ∩ (Q≥0)^n` is free, i.e. the axis-rescaled lattice is `Z^n`.
pub fn is_smooth(m: &FracLattice) -> bool {
    axis_rescaled(m).is_integer_lattice()
}

/// Hilbert basis of `M ∩ (Q≥0)^n`, in canonical order.
///
/// Every irreducible element lies in the box `∏ [0, m_i]`: any point with a
/// coordinate above `m_i` splits off `m_i e_i`. The box points of `k M` are
/// enumerated against the HNF basis and the reducible ones (those dominating
/// another nonzero box point) are discarded.
pub fn hilbert_basis(m: &FracLattice) -> Vec<ExpVec> {
    let k = m.denominator();
    let upper: Vec<BigInt> = (0..m.dim()).map(|i| m.scaled().axis_multiple(i)).collect();
    let points: Vec<Vec<BigInt>> = m
        .scaled()
        .points_in_box(&upper)
        .into_iter()
        .filter(|p| p.iter().any(|x| !x.is_zero()))
        .collect();
    let dominates = |p: &[BigInt], q: &[BigInt]| p != q && q.iter().zip(p).all(|(a, b)| a <= b);
    let mut basis: Vec<ExpVec> = points
        .iter()
        .filter(|p| !points.iter().any(|q| dominates(p, q)))
        .map(|p| ExpVec::from_scaled(p, k))
        .collect();
    basis.sort_by(ExpVec::canonical_cmp);
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn fr(v: &[(i64, i64)]) -> ExpVec {
        ExpVec::from_fracs(v)
    }

    /// Independent oracle: scan the grid `(1/k)Z^n ∩ [0,1]^n`, decide membership
    /// in `Z^n + Σ λZ` by trying every coefficient tuple in `[0, k)`, then keep
    /// the points not dominating another nonzero member.
    fn oracle_hilbert(gens: &[ExpVec], n: usize) -> Vec<ExpVec> {
        let k = gens
            .iter()
            .fold(BigInt::one(), |a, g| num_integer::Integer::lcm(&a, &g.denominator()));
        let k64: i64 = k.try_into().unwrap();
        let in_m = |v: &ExpVec| -> bool {
            let mut coeffs = vec![0i64; gens.len()];
            loop {
                let mut w = v.clone();
                for (c, g) in coeffs.iter().zip(gens) {
                    w = w.sub(&g.scale(&Rational::from_integer((*c).into())));
                }
                if w.is_integral() {
                    return true;
                }
                let mut i = 0;
                loop {
                    if i == coeffs.len() {
                        return false;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < k64 {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
            }
        };
        let mut grid = vec![vec![]];
        for _ in 0..n {
            grid = grid
                .into_iter()
                .flat_map(|p: Vec<(i64, i64)>| {
                    (0..=k64).map(move |a| {
                        let mut q = p.clone();
                        q.push((a, k64));
                        q
                    })
                })
                .collect();
        }
        let members: Vec<ExpVec> = grid.iter().map(|p| fr(p)).filter(|v| !v.is_zero() && in_m(v)).collect();
        let mut out: Vec<ExpVec> = members
            .iter()
            .filter(|p| !members.iter().any(|q| q != *p && q.le_componentwise(p)))
            .cloned()
            .collect();
        out.sort_by(ExpVec::canonical_cmp);
        out
    }

    #[test]
    fn span_group_examples() {
        let s = AffineSemigroup::new(2, vec![]).unwrap();
        assert_eq!(s.span_group(), FracLattice::integer(2));

        let s = AffineSemigroup::new(2, vec![fr(&[(2, 3), (1, 3)])]).unwrap();
        let m = s.span_group();
        assert_eq!(m.denominator(), &BigInt::from(3));
        assert_eq!(
            m.scaled(),
            &crate::lattice::Lattice::from_i64(&[&[1, 2], &[0, 3]]).unwrap()
        );

        let s = AffineSemigroup::new(2, vec![fr(&[(1, 2), (0, 1)]), fr(&[(0, 1), (1, 2)])]).unwrap();
        let m = s.span_group();
        assert_eq!(m.denominator(), &BigInt::from(2));
        assert_eq!(m.scaled(), &crate::lattice::Lattice::standard(2));
    }

    #[test]
    fn saturate_examples() {
        let s = AffineSemigroup::new(2, vec![fr(&[(2, 3), (1, 3)])]).unwrap();
        assert_eq!(
            s.saturate().hilbert_basis(),
            &[
                ExpVec::from_ints([1, 0]),
                fr(&[(2, 3), (1, 3)]),
                fr(&[(1, 3), (2, 3)]),
                ExpVec::from_ints([0, 1])
            ]
        );

        let s = AffineSemigroup::new(3, vec![]).unwrap();
        assert_eq!(
            s.saturate().hilbert_basis(),
            &[ExpVec::unit(3, 0), ExpVec::unit(3, 1), ExpVec::unit(3, 2)]
        );

        let gens = vec![fr(&[(1, 2), (1, 2)])];
        let s = AffineSemigroup::new(2, gens.clone()).unwrap();
        let expected = vec![
            ExpVec::from_ints([1, 0]),
            fr(&[(1, 2), (1, 2)]),
            ExpVec::from_ints([0, 1]),
        ];
        assert_eq!(oracle_hilbert(&gens, 2), expected);
        assert_eq!(s.saturate().hilbert_basis(), &expected[..]);
    }

    #[test]
    fn hilbert_basis_examples() {
        assert_eq!(
            hilbert_basis(&FracLattice::integer(2)),
            vec![ExpVec::unit(2, 0), ExpVec::unit(2, 1)]
        );
        let half = FracLattice::from_generators(&[fr(&[(1, 2), (0, 1)]), fr(&[(0, 1), (1, 2)])], 2).unwrap();
        assert_eq!(hilbert_basis(&half), vec![fr(&[(1, 2), (0, 1)]), fr(&[(0, 1), (1, 2)])]);
    }

    #[test]
    fn saturation_test_examples() {
        assert!(AffineSemigroup::new(2, vec![]).unwrap().is_saturated());
        let s = AffineSemigroup::new(2, vec![fr(&[(2, 3), (1, 3)])]).unwrap();
        assert!(!s.is_saturated());
        assert!(!s.contains(&fr(&[(1, 3), (2, 3)])));
        assert!(s.contains(&fr(&[(4, 3), (2, 3)])));
        let s = AffineSemigroup::new(2, vec![fr(&[(1, 2), (0, 1)]), fr(&[(0, 1), (1, 2)])]).unwrap();
        assert!(s.is_saturated());
    }

    #[test]
    fn m_vector_examples() {
        let one = Rational::one();
        assert_eq!(
            m_vector(&FracLattice::integer(3)).entries(),
            &[one.clone(), one.clone(), one.clone()]
        );

        let l = crate::lattice::Lattice::from_i64(&[&[1, 1], &[1, -1]]).unwrap();
        assert_eq!(l.axis_multiple(0), BigInt::from(2));
        assert_eq!(l.axis_multiple(1), BigInt::from(2));

        // (3/2,1,0) - (1,1,0) = (1/2,0,0); (2,3/2,1) - (2,1,1) = (0,1/2,0);
        // third coordinates of all generators are integers.
        let m =
            FracLattice::from_generators(&[fr(&[(3, 2), (1, 1), (0, 1)]), fr(&[(2, 1), (3, 2), (1, 1)])], 3).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(m_vector(&m).entries(), &[half.clone(), half, one]);
    }

    #[test]
    fn smoothness_examples() {
        let s = AffineSemigroup::new(3, vec![fr(&[(3, 2), (1, 1), (0, 1)]), fr(&[(2, 1), (3, 2), (1, 1)])]).unwrap();
        assert!(is_smooth(&s.span_group()));
        assert_eq!(s.saturate().hilbert_basis().len(), 3);

        let s = AffineSemigroup::new(2, vec![fr(&[(2, 3), (1, 3)])]).unwrap();
        let m = s.span_group();
        assert!(!is_smooth(&m));
        assert_eq!(axis_rescaled(&m).index_over_integers(), BigInt::from(3));

        assert!(is_smooth(&FracLattice::integer(2)));
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            AffineSemigroup::new(2, vec![fr(&[(-1, 2), (0, 1)])]),
            Err(SemigroupError::NegativeGenerator(_))
        ));
        assert!(matches!(
            AffineSemigroup::new(2, vec![fr(&[(1, 2)])]),
            Err(SemigroupError::DimensionMismatch { .. })
        ));
        let s = AffineSemigroup::new(
            2,
            vec![ExpVec::from_ints([1, 1]), fr(&[(1, 2), (0, 1)]), fr(&[(1, 2), (0, 1)])],
        )
        .unwrap();
        assert_eq!(s.extra_generators().len(), 1);
    }

    fn arb_gens() -> impl Strategy<Value = (usize, Vec<ExpVec>)> {
        (1usize..=3).prop_flat_map(|n| {
            let entry = (0i64..=4, 1i64..=4);
            let vecs = prop::collection::vec(prop::collection::vec(entry, n), 0..=2);
            (
                Just(n),
                vecs.prop_map(|vs| vs.iter().map(|v| ExpVec::from_fracs(v)).collect()),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_grid_oracle((n, gens) in arb_gens()) {
            prop_assume!(gens.iter().all(|g| !g.is_zero()));
            let s = AffineSemigroup::new(n, gens.clone()).unwrap();
            let gens = s.extra_generators().to_vec();
            let sat = s.saturate();
            prop_assert_eq!(sat.hilbert_basis(), &oracle_hilbert(&gens, n)[..]);
        }

        #[test]
        fn saturation_is_idempotent_and_spans((n, gens) in arb_gens()) {
            prop_assume!(gens.iter().all(|g| !g.is_zero()));
            let s = AffineSemigroup::new(n, gens).unwrap();
            let sat = s.saturate();
            let again = AffineSemigroup::new(n, sat.hilbert_basis().to_vec()).unwrap();
            let resat = again.saturate();
            prop_assert_eq!(resat.hilbert_basis(), sat.hilbert_basis());
            prop_assert_eq!(&again.span_group(), sat.span_group());
            prop_assert!(again.is_saturated());
            prop_assert_eq!(is_smooth(sat.span_group()), sat.hilbert_basis().len() == n);
        }

        #[test]
        fn hilbert_basis_is_irredundant((n, gens) in arb_gens()) {
            prop_assume!(gens.iter().all(|g| !g.is_zero()));
            let hb = AffineSemigroup::new(n, gens).unwrap().saturate().hilbert_basis().to_vec();
            for (i, h) in hb.iter().enumerate() {
                let others: Vec<ExpVec> = hb.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
                prop_assert!(!generated_by(h, &others));
            }
        }
    }
}

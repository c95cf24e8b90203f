//! Binomial presentations of semigroup algebras.
//!
//! Given the exponent matrix `a` of a Hilbert basis, the binomials `x^u⁺ - x^u⁻`
//! with `a u⁺ = a u⁻` generate the toric ideal. We produce generators that
//! connect every fiber `{u ≥ 0 : a u = b}` whose minimal degree is at most a
//! bound `D`. Fibers are visited by minimal degree first and then by `b` in
//! graded-lex order; this keeps the output for `D` a prefix of the output for
//! `D + 1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::expvec::ExpVec;
use crate::lattice::{kernel_lattice, span_member, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToricError {
    #[error("toric: empty generator list")]
    Empty,
    #[error("toric: column {0} is zero, the semigroup is not pointed")]
    NotPointed(usize),
    #[error("toric: column {0} has a negative entry")]
    NegativeEntry(usize),
    #[error("toric: denominator {k} does not clear generator {generator}")]
    DenominatorNotCleared { k: BigInt, generator: ExpVec },
    #[error("toric: matrix entry too large")]
    EntryTooLarge,
    #[error("toric: degree bound must be positive")]
    ZeroDegreeBound,
}

/// A binomial `x^plus - x^minus`, stored with disjoint supports and
/// `plus > minus` in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    plus: Vec<i64>,
    minus: Vec<i64>,
}

impl Binomial {
    /// Builds the binomial for the move `u - v`, cancelling the common part.
    /// Returns `None` when `u == v`.
    pub fn from_pair(u: &[i64], v: &[i64]) -> Option<Self> {
        let common: Vec<i64> = u.iter().zip(v).map(|(a, b)| (*a).min(*b)).collect();
        let p: Vec<i64> = u.iter().zip(&common).map(|(a, c)| a - c).collect();
        let m: Vec<i64> = v.iter().zip(&common).map(|(a, c)| a - c).collect();
        match grlex(&p, &m) {
            Ordering::Equal => None,
            Ordering::Greater => Some(Binomial { plus: p, minus: m }),
            Ordering::Less => Some(Binomial { plus: m, minus: p }),
        }
    }

    pub fn plus(&self) -> &[i64] {
        &self.plus
    }

    pub fn minus(&self) -> &[i64] {
        &self.minus
    }

    pub fn difference(&self) -> Vec<i64> {
        self.plus.iter().zip(&self.minus).map(|(a, b)| a - b).collect()
    }

    /// Text form over the given variable names, e.g. `x*w - y*z`.
    pub fn to_text(&self, names: &[String]) -> String {
        format!("{} - {}", monomial(&self.plus, names), monomial(&self.minus, names))
    }
}

fn monomial(u: &[i64], names: &[String]) -> String {
    let parts: Vec<String> = u
        .iter()
        .zip(names)
        .filter(|(e, _)| **e != 0)
        .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn grlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Columns `k·h` for each basis vector `h`, in canonical order.
pub fn exponent_matrix(hb: &[ExpVec], k: &BigInt) -> Result<IntMatrix, ToricError> {
    let first = hb.first().ok_or(ToricError::Empty)?;
    let n = first.dim();
    let mut sorted: Vec<&ExpVec> = hb.iter().collect();
    sorted.sort_by(|a, b| a.canonical_cmp(b));
    let mut cols = Vec::with_capacity(sorted.len());
    for h in sorted {
        let c = h.scaled(k).ok_or_else(|| ToricError::DenominatorNotCleared {
            k: k.clone(),
            generator: h.clone(),
        })?;
        cols.push(c);
    }
    let rows = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(IntMatrix::from_rows(rows).expect("rectangular by construction"))
}

/// Default bound: twice the largest column degree.
pub fn default_degree_bound(a: &IntMatrix) -> u32 {
    let max = (0..a.ncols())
        .map(|j| a.column(j).iter().sum::<BigInt>())
        .max()
        .unwrap_or_else(BigInt::default);
    (BigInt::from(2) * max).to_u32().unwrap_or(u32::MAX)
}

/// Nonnegative pointed matrix in machine integers, stored by columns.
struct Columns {
    n: usize,
    cols: Vec<Vec<i64>>,
}

impl Columns {
    fn new(a: &IntMatrix) -> Result<Self, ToricError> {
        let mut cols = Vec::with_capacity(a.ncols());
        for j in 0..a.ncols() {
            let c: Vec<i64> = a
                .column(j)
                .iter()
                .map(|x| x.to_i64().ok_or(ToricError::EntryTooLarge))
                .collect::<Result<_, _>>()?;
            if c.iter().any(|x| *x < 0) {
                return Err(ToricError::NegativeEntry(j));
            }
            if c.iter().all(|x| *x == 0) {
                return Err(ToricError::NotPointed(j));
            }
            cols.push(c);
        }
        Ok(Columns { n: a.nrows(), cols })
    }

    fn s(&self) -> usize {
        self.cols.len()
    }

    fn image(&self, u: &[i64]) -> Vec<i64> {
        let mut b = vec![0; self.n];
        for (c, &e) in self.cols.iter().zip(u) {
            for (bi, ci) in b.iter_mut().zip(c) {
                *bi += e * ci;
            }
        }
        b
    }

    /// Images of all `u` with `|u|₁ <= d`.
    fn images_up_to(&self, d: u32) -> Vec<Vec<i64>> {
        let mut out = std::collections::BTreeSet::new();
        let mut u = vec![0i64; self.s()];
        self.images_rec(0, d as i64, &mut u, &mut out);
        out.into_iter().collect()
    }

    fn images_rec(&self, j: usize, left: i64, u: &mut Vec<i64>, out: &mut std::collections::BTreeSet<Vec<i64>>) {
        if j == self.s() {
            out.insert(self.image(u));
            return;
        }
        for e in 0..=left {
            u[j] = e;
            self.images_rec(j + 1, left - e, u, out);
        }
        u[j] = 0;
    }

    /// The full fiber over `b`, finite because every column is nonzero.
    fn fiber(&self, b: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut u = vec![0i64; self.s()];
        let mut rem = b.to_vec();
        self.fiber_rec(0, &mut rem, &mut u, &mut out);
        out
    }

    fn fiber_rec(&self, j: usize, rem: &mut Vec<i64>, u: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if j == self.s() {
            if rem.iter().all(|r| *r == 0) {
                out.push(u.clone());
            }
            return;
        }
        let col = &self.cols[j];
        let max = col
            .iter()
            .zip(rem.iter())
            .filter(|(c, _)| **c > 0)
            .map(|(c, r)| r / c)
            .min()
            .expect("nonzero column");
        for e in 0..=max {
            u[j] = e;
            self.fiber_rec(j + 1, rem, u, out);
            for (r, c) in rem.iter_mut().zip(col) {
                *r -= c;
            }
        }
        for (r, c) in rem.iter_mut().zip(col) {
            *r += c * (max + 1);
        }
        u[j] = 0;
    }
}

/// Fibers with minimal degree at most `d`, in processing order.
fn ordered_fibers(cols: &Columns, d: u32) -> Vec<Vec<Vec<i64>>> {
    let mut keyed: Vec<(i64, Vec<i64>, Vec<Vec<i64>>)> = cols
        .images_up_to(d)
        .into_iter()
        .filter(|b| b.iter().any(|x| *x != 0))
        .map(|b| {
            let mut f = cols.fiber(&b);
            f.sort_by(|x, y| grlex(y, x));
            let min_deg = f.iter().map(|u| u.iter().sum::<i64>()).min().expect("b is attained");
            (min_deg, b, f)
        })
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| grlex(&x.1, &y.1)));
    keyed.into_iter().map(|(_, _, f)| f).collect()
}

/// Connected-component labels of a fiber under the given moves.
fn components(fiber: &[Vec<i64>], moves: &[Binomial]) -> Vec<usize> {
    let index: BTreeMap<&[i64], usize> = fiber.iter().enumerate().map(|(i, u)| (u.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..fiber.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, u) in fiber.iter().enumerate() {
        for mv in moves {
            for (from, to) in [(&mv.plus, &mv.minus), (&mv.minus, &mv.plus)] {
                if u.iter().zip(from).all(|(a, b)| a >= b) {
                    let v: Vec<i64> = u.iter().zip(from).zip(to).map(|((a, f), t)| a - f + t).collect();
                    if let Some(&j) = index.get(v.as_slice()) {
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        parent[ri] = rj;
                    }
                }
            }
        }
    }
    (0..fiber.len()).map(|i| find(&mut parent, i)).collect()
}

/// Binomials connecting every fiber of minimal degree at most `d`.
pub fn toric_binomials(a: &IntMatrix, d: u32) -> Result<Vec<Binomial>, ToricError> {
    if d == 0 {
        return Err(ToricError::ZeroDegreeBound);
    }
    let cols = Columns::new(a)?;
    let mut moves: Vec<Binomial> = Vec::new();
    for fiber in ordered_fibers(&cols, d) {
        // elements are sorted grlex-descending; the first one leads
        loop {
            let labels = components(&fiber, &moves);
            let Some(other) = labels.iter().position(|l| *l != labels[0]) else {
                break;
            };
            let b = Binomial::from_pair(&fiber[0], &fiber[other]).expect("distinct fiber elements");
            moves.push(b);
        }
    }
    Ok(moves)
}

/// Fresh check that every fiber of minimal degree at most `d` is connected.
pub fn fibers_connected(a: &IntMatrix, binomials: &[Binomial], d: u32) -> Result<bool, ToricError> {
    let cols = Columns::new(a)?;
    Ok(ordered_fibers(&cols, d).iter().all(|f| {
        let labels = components(f, binomials);
        labels.iter().all(|l| *l == labels[0])
    }))
}

/// Index of the first binomial whose difference is not in the kernel of `a`.
pub fn kernel_violation(a: &IntMatrix, binomials: &[Binomial]) -> Option<usize> {
    let kernel = kernel_lattice(a);
    binomials.iter().position(|b| {
        if b.plus.len() != a.ncols() || b.minus.len() != a.ncols() {
            return true;
        }
        let diff: Vec<BigInt> = b.difference().into_iter().map(BigInt::from).collect();
        !span_member(&kernel, &diff)
    })
}

/// True when every binomial difference lies in the kernel lattice of `a`.
pub fn kernel_check(a: &IntMatrix, binomials: &[Binomial]) -> bool {
    kernel_violation(a, binomials).is_none()
}

/// Binomial presentation of `K[S]` for a Hilbert basis of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricPresentation {
    exponent_matrix: IntMatrix,
    binomials: Vec<Binomial>,
    degree_bound: u32,
}

impl ToricPresentation {
    /// Uses the default bound when `degree_bound` is `None`.
    pub fn of_hilbert_basis(hb: &[ExpVec], k: &BigInt, degree_bound: Option<u32>) -> Result<Self, ToricError> {
        let a = exponent_matrix(hb, k)?;
        let d = degree_bound.unwrap_or_else(|| default_degree_bound(&a));
        let binomials = toric_binomials(&a, d)?;
        Ok(ToricPresentation {
            exponent_matrix: a,
            binomials,
            degree_bound: d,
        })
    }

    pub fn variables(&self) -> usize {
        self.exponent_matrix.ncols()
    }

    pub fn exponent_matrix(&self) -> &IntMatrix {
        &self.exponent_matrix
    }

    pub fn binomials(&self) -> &[Binomial] {
        &self.binomials
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// `x, y, z, w` for up to four variables, `u1, ..., us` otherwise.
    pub fn variable_names(&self) -> Vec<String> {
        let s = self.variables();
        if s <= 4 {
            ["x", "y", "z", "w"][..s].iter().map(|v| v.to_string()).collect()
        } else {
            (1..=s).map(|i| format!("u{i}")).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn veronese_matrix() -> IntMatrix {
        IntMatrix::from_i64(&[&[3, 2, 1, 0], &[0, 1, 2, 3]]).unwrap()
    }

    fn b(p: &[i64], m: &[i64]) -> Binomial {
        Binomial::from_pair(p, m).unwrap()
    }

    /// The three Veronese quadrics under x, y, z, w = columns 1..4.
    fn veronese_quadrics() -> Vec<Binomial> {
        vec![
            b(&[1, 0, 0, 1], &[0, 1, 1, 0]), // xw - yz
            b(&[0, 2, 0, 0], &[1, 0, 1, 0]), // y^2 - xz
            b(&[0, 0, 2, 0], &[0, 1, 0, 1]), // z^2 - yw
        ]
    }

    fn same_set(a: &[Binomial], b: &[Binomial]) -> bool {
        a.len() == b.len() && a.iter().all(|x| b.contains(x))
    }

    #[test]
    fn exponent_matrix_examples() {
        let hb = vec![ExpVec::unit(2, 1), ExpVec::unit(2, 0)];
        assert_eq!(exponent_matrix(&hb, &BigInt::from(1)).unwrap(), IntMatrix::identity(2));

        let hb = vec![
            ExpVec::from_fracs(&[(1, 3), (2, 3)]),
            ExpVec::from_fracs(&[(1, 1), (0, 1)]),
            ExpVec::from_fracs(&[(0, 1), (1, 1)]),
            ExpVec::from_fracs(&[(2, 3), (1, 3)]),
        ];
        assert_eq!(exponent_matrix(&hb, &BigInt::from(3)).unwrap(), veronese_matrix());

        let hb = vec![
            ExpVec::from_fracs(&[(1, 2), (1, 2)]),
            ExpVec::unit(2, 0),
            ExpVec::unit(2, 1),
        ];
        let a = exponent_matrix(&hb, &BigInt::from(2)).unwrap();
        assert_eq!(a, IntMatrix::from_i64(&[&[2, 1, 0], &[0, 1, 2]]).unwrap());

        assert!(matches!(
            exponent_matrix(&hb, &BigInt::from(3)),
            Err(ToricError::DenominatorNotCleared { .. })
        ));
        assert_eq!(exponent_matrix(&[], &BigInt::from(1)), Err(ToricError::Empty));
    }

    #[test]
    fn free_semigroup_has_no_relations() {
        assert!(toric_binomials(&IntMatrix::identity(3), 4).unwrap().is_empty());
    }

    #[test]
    fn veronese_quadrics_at_degree_two_and_three() {
        let a = veronese_matrix();
        let d2 = toric_binomials(&a, 2).unwrap();
        assert!(same_set(&d2, &veronese_quadrics()), "{d2:?}");
        let d3 = toric_binomials(&a, 3).unwrap();
        assert_eq!(d2, d3);
        assert!(fibers_connected(&a, &d2, 4).unwrap());
        let names: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
        let mut text: Vec<String> = d2.iter().map(|x| x.to_text(&names)).collect();
        text.sort();
        assert_eq!(text, vec!["x*w - y*z", "x*z - y^2", "y*w - z^2"]);
    }

    #[test]
    fn quadric_cone() {
        let a = IntMatrix::from_i64(&[&[2, 1, 0], &[0, 1, 2]]).unwrap();
        assert_eq!(toric_binomials(&a, 2).unwrap(), vec![b(&[1, 0, 1], &[0, 2, 0])]);
    }

    #[test]
    fn zero_column_is_not_pointed() {
        let a = IntMatrix::from_i64(&[&[1, 0], &[1, 0]]).unwrap();
        assert_eq!(toric_binomials(&a, 2), Err(ToricError::NotPointed(1)));
        assert_eq!(toric_binomials(&veronese_matrix(), 0), Err(ToricError::ZeroDegreeBound));
    }

    #[test]
    fn kernel_check_examples() {
        let a = veronese_matrix();
        assert!(kernel_check(&a, &veronese_quadrics()));
        let bad = b(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        assert!(!kernel_check(&a, std::slice::from_ref(&bad)));
        assert_eq!(kernel_violation(&a, &[veronese_quadrics()[0].clone(), bad]), Some(1));
        assert!(kernel_check(&a, &[]));
    }

    #[test]
    fn presentation_of_veronese_basis() {
        let hb = vec![
            ExpVec::from_fracs(&[(1, 1), (0, 1)]),
            ExpVec::from_fracs(&[(2, 3), (1, 3)]),
            ExpVec::from_fracs(&[(1, 3), (2, 3)]),
            ExpVec::from_fracs(&[(0, 1), (1, 1)]),
        ];
        let p = ToricPresentation::of_hilbert_basis(&hb, &BigInt::from(3), None).unwrap();
        assert_eq!(p.degree_bound(), 6);
        assert_eq!(p.variables(), 4);
        assert!(same_set(p.binomials(), &veronese_quadrics()));
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=3, 1usize..=5).prop_flat_map(|(n, s)| {
            prop::collection::vec(prop::collection::vec(0i64..=4, n), s).prop_map(move |cols| {
                let cols: Vec<Vec<i64>> = cols
                    .into_iter()
                    .map(|mut c| {
                        if c.iter().all(|x| *x == 0) {
                            c[0] = 1;
                        }
                        c
                    })
                    .collect();
                let rows: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| cols.iter().map(|c| BigInt::from(c[i])).collect())
                    .collect();
                IntMatrix::from_rows(rows).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn binomials_are_sound_connected_and_prefix_consistent(a in arb_matrix(), d in 1u32..=3) {
            let small = toric_binomials(&a, d).unwrap();
            let big = toric_binomials(&a, d + 1).unwrap();
            prop_assert!(kernel_check(&a, &small));
            prop_assert!(kernel_check(&a, &big));
            for x in &big {
                prop_assert_eq!(Columns::new(&a).unwrap().image(x.plus()), Columns::new(&a).unwrap().image(x.minus()));
                prop_assert!(x.plus().iter().zip(x.minus()).all(|(p, m)| *p == 0 || *m == 0));
                prop_assert!(x.plus().iter().any(|e| *e != 0) && x.minus().iter().any(|e| *e != 0));
                prop_assert_eq!(grlex(x.plus(), x.minus()), Ordering::Greater);
            }
            prop_assert_eq!(&big[..small.len()], &small[..]);
            prop_assert!(fibers_connected(&a, &small, d).unwrap());
            prop_assert!(fibers_connected(&a, &big, d + 1).unwrap());
        }
    }
}

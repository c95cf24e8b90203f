//! Exact integer-matrix and lattice algorithms.
//!
//! Matrices act on row vectors: a lattice is the row span of its basis, and
//! the Hermite normal form is the row-style, upper-triangular one with
//! positive pivots and entries above each pivot reduced into `[0, pivot)`.

mod frac;

pub use frac::FracLattice;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice: rank zero")]
    RankZero,
    #[error("lattice: not full rank (rank {rank} < dimension {dim})")]
    NotFullRank { rank: usize, dim: usize },
    #[error("lattice: not a sublattice")]
    NotSublattice,
    #[error("lattice: dimension mismatch (expected {expected}, got {got})")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice: malformed matrix: {0}")]
    Malformed(&'static str),
}

/// Dense matrix of arbitrary-precision integers, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || ncols == 0 {
            return Err(LatticeError::Malformed("matrix must have at least one row and column"));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LatticeError::Malformed("ragged rows"));
        }
        Ok(IntMatrix { rows, ncols })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        IntMatrix { rows, ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols).map(|j| self.column(j)).collect();
        IntMatrix {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LatticeError> {
        if self.ncols != other.nrows() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.ncols,
                got: other.nrows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|j| {
                        r.iter()
                            .zip(&other.rows)
                            .fold(BigInt::zero(), |acc, (a, orow)| acc + a * &orow[j])
                    })
                    .collect()
            })
            .collect();
        Ok(IntMatrix {
            rows,
            ncols: other.ncols,
        })
    }

    /// Matrix times a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LatticeError> {
        let n = self.nrows();
        if n != self.ncols {
            return Err(LatticeError::Malformed("determinant of a non-square matrix"));
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(
                self.rows
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")),
            )
            .finish()
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn sub_multiple(target: &mut [BigInt], src: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

fn negate(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -&*x;
    }
}

/// Result of [`hnf`].
#[derive(Clone, Debug)]
pub struct Hnf {
    /// The nonzero rows of the normal form.
    pub h: IntMatrix,
    /// Unimodular `r x r` transform: the first `rank` rows of `u * m` are `h`,
    /// the remaining rows of `u * m` are zero.
    pub u: IntMatrix,
    /// Pivot column of each row of `h`.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-style Hermite normal form with transform.
pub fn hnf(m: &IntMatrix) -> Result<Hnf, LatticeError> {
    let r = m.nrows();
    let c = m.ncols();
    let mut h = m.rows.clone();
    let mut u = IntMatrix::identity(r).rows;
    let mut pivots = Vec::new();
    let mut p = 0;
    for col in 0..c {
        if p == r {
            break;
        }
        loop {
            let best = (p..r)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()));
            let Some(best) = best else { break };
            h.swap(p, best);
            u.swap(p, best);
            let mut clean = true;
            for i in p + 1..r {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[p][col]);
                let (top, bottom) = h.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[p], &q);
                let (top, bottom) = u.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[p], &q);
                if !h[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[p][col].is_zero() {
            continue;
        }
        if h[p][col].is_negative() {
            negate(&mut h[p]);
            negate(&mut u[p]);
        }
        for i in 0..p {
            let q = h[i][col].div_floor(&h[p][col]);
            let (top, bottom) = h.split_at_mut(p);
            sub_multiple(&mut top[i], &bottom[0], &q);
            let (top, bottom) = u.split_at_mut(p);
            sub_multiple(&mut top[i], &bottom[0], &q);
        }
        pivots.push(col);
        p += 1;
    }
    if p == 0 {
        return Err(LatticeError::RankZero);
    }
    h.truncate(p);
    Ok(Hnf {
        h: IntMatrix { rows: h, ncols: c },
        u: IntMatrix { rows: u, ncols: r },
        pivots,
    })
}

/// Result of [`snf`]: `d = u * m * v`, diagonal with `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d.rows[i][i].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

/// Smith normal form with both transforms.
pub fn snf(m: &IntMatrix) -> Result<Snf, LatticeError> {
    if m.is_zero() {
        return Err(LatticeError::RankZero);
    }
    let r = m.nrows();
    let c = m.ncols();
    let mut d = m.rows.clone();
    let mut u = IntMatrix::identity(r).rows;
    let mut v = IntMatrix::identity(c).rows;

    let col_op = |mat: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in mat.iter_mut() {
            let s = row[src].clone();
            row[dst] -= q * s;
        }
    };
    let swap_cols = |mat: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    };

    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return Ok(finish_snf(d, u, v, c));
            };
            d.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..r {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                let (top, bottom) = d.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[t], &q);
                let (top, bottom) = u.split_at_mut(i);
                sub_multiple(&mut bottom[0], &top[t], &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..c {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_op(&mut d, j, t, &q);
                col_op(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility condition on the remaining block
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match bad {
                Some(i) => {
                    let (top, bottom) = d.split_at_mut(i);
                    sub_multiple(&mut top[t], &bottom[0], &-BigInt::one());
                    let (top, bottom) = u.split_at_mut(i);
                    sub_multiple(&mut top[t], &bottom[0], &-BigInt::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate(&mut d[t]);
            negate(&mut u[t]);
        }
    }
    Ok(finish_snf(d, u, v, c))
}

fn finish_snf(d: Vec<Vec<BigInt>>, u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>>, c: usize) -> Snf {
    let r = d.len();
    Snf {
        d: IntMatrix { rows: d, ncols: c },
        u: IntMatrix { rows: u, ncols: r },
        v: IntMatrix { rows: v, ncols: c },
    }
}

/// Express `v` as an integer combination of echelon rows, if possible.
///
/// `rows` must be in row echelon form (each row's leading column strictly to
/// the right of the previous row's).
pub(crate) fn echelon_coordinates(rows: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(rows.len());
    for row in rows {
        let Some(piv) = row.iter().position(|x| !x.is_zero()) else {
            coords.push(BigInt::zero());
            continue;
        };
        if rest[..piv].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, rem) = rest[piv].div_rem(&row[piv]);
        if !rem.is_zero() {
            return None;
        }
        sub_multiple(&mut rest, row, &q);
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Full-rank sublattice of `Z^n`, stored by its Hermite normal form basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: IntMatrix,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Lattice").field(&self.basis).finish()
    }
}

impl Lattice {
    /// Lattice generated by the given integer rows.
    pub fn from_generators(rows: &[Vec<BigInt>], n: usize) -> Result<Self, LatticeError> {
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(LatticeError::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        if rows.is_empty() {
            return Err(LatticeError::RankZero);
        }
        let m = IntMatrix::from_rows(rows.to_vec())?;
        let h = hnf(&m)?;
        if h.rank() < n {
            return Err(LatticeError::NotFullRank { rank: h.rank(), dim: n });
        }
        Ok(Lattice { basis: h.h })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        let n = rows.first().map(|r| r.len()).unwrap_or(0);
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_generators(&rows, n)
    }

    /// `Z^n`.
    pub fn standard(n: usize) -> Self {
        Lattice {
            basis: IntMatrix::identity(n),
        }
    }

    /// `k * Z^n`.
    pub fn scaled_standard(n: usize, k: &BigInt) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { k.clone() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Lattice {
            basis: IntMatrix { rows, ncols: n },
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Determinant of the basis, the index of the lattice in `Z^n`.
    pub fn det(&self) -> BigInt {
        (0..self.dim()).fold(BigInt::one(), |acc, i| acc * &self.basis.rows[i][i])
    }

    /// Coordinates of `v` in the HNF basis, or `None` when `v` is not in the
    /// lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        if v.len() != self.dim() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(echelon_coordinates(&self.basis.rows, v))
    }

    pub fn member(&self, v: &[BigInt]) -> Result<bool, LatticeError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn contains_lattice(&self, sub: &Lattice) -> Result<bool, LatticeError> {
        for row in sub.basis.rows() {
            if !self.member(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least `t > 0` with `t * e_i` in the lattice.
    pub fn axis_multiple(&self, i: usize) -> BigInt {
        let det = self.det();
        let mut e = vec![BigInt::zero(); self.dim()];
        let mut t = BigInt::one();
        while t <= det {
            if det.is_multiple_of(&t) {
                e[i] = t.clone();
                if echelon_coordinates(&self.basis.rows, &e).is_some() {
                    return t;
                }
            }
            t += 1;
        }
        det
    }

    /// Lattice with every vector multiplied by `c`.
    pub fn scale(&self, c: &BigInt) -> Lattice {
        let rows: Vec<Vec<BigInt>> = self
            .basis
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x * c).collect())
            .collect();
        // a positive multiple of an HNF basis is still in HNF
        debug_assert!(c.is_positive());
        Lattice {
            basis: IntMatrix {
                rows,
                ncols: self.dim(),
            },
        }
    }

    /// Divide every basis entry by `g`; caller guarantees exactness.
    pub(crate) fn divide_exact(&self, g: &BigInt) -> Lattice {
        let rows: Vec<Vec<BigInt>> = self
            .basis
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x / g).collect())
            .collect();
        Lattice {
            basis: IntMatrix {
                rows,
                ncols: self.dim(),
            },
        }
    }

    /// gcd of all basis entries.
    pub(crate) fn content(&self) -> BigInt {
        self.basis
            .rows
            .iter()
            .flatten()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }

    /// Enumerate every lattice point `v` with `0 <= v_i <= upper_i`.
    pub fn points_in_box(&self, upper: &[BigInt]) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut current = vec![BigInt::zero(); n];
        self.box_rec(0, &mut current, upper, &mut out);
        out
    }

    // Rows are processed in pivot order; after choosing coefficients for rows
    // 0..j the coordinate j is fixed modulo the pivot of row j.
    fn box_rec(&self, j: usize, current: &mut Vec<BigInt>, upper: &[BigInt], out: &mut Vec<Vec<BigInt>>) {
        let n = self.dim();
        if j == n {
            out.push(current.clone());
            return;
        }
        let row = &self.basis.rows[j];
        let piv = &row[j];
        // smallest c with current[j] + c*piv >= 0
        let mut c = (-&current[j]).div_ceil(piv);
        loop {
            let value = &current[j] + &c * piv;
            if value > upper[j] {
                break;
            }
            let saved = current.clone();
            for (x, r) in current.iter_mut().zip(row) {
                *x += &c * r;
            }
            self.box_rec(j + 1, current, upper, out);
            *current = saved;
            c += 1;
        }
    }
}

/// `[sup : sub]`.
pub fn index(sub: &Lattice, sup: &Lattice) -> Result<BigInt, LatticeError> {
    if sub.dim() != sup.dim() {
        return Err(LatticeError::DimensionMismatch {
            expected: sup.dim(),
            got: sub.dim(),
        });
    }
    if !sup.contains_lattice(sub)? {
        return Err(LatticeError::NotSublattice);
    }
    Ok(sub.det() / sup.det())
}

/// Invariant-factor decomposition of a finite quotient `sup / sub`.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    factors: Vec<BigInt>,
    sup: Lattice,
    /// Column transform from `sup` coordinates to invariant-factor coordinates.
    transform: IntMatrix,
    /// Number of leading unit invariant factors that were dropped.
    skipped: usize,
}

impl QuotientStructure {
    /// Invariant factors `d_1 | d_2 | ...`, all at least 2.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Order of the quotient group.
    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// Class of `w in sup` in `Z/d_1 + ... + Z/d_r`.
    pub fn class_of(&self, w: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        let coords = self.sup.coordinates(w)?.ok_or(LatticeError::NotSublattice)?;
        Ok(self
            .factors
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let col = self.transform.column(self.skipped + i);
                dot(&coords, &col).mod_floor(d)
            })
            .collect())
    }
}

pub fn quotient_structure(sub: &Lattice, sup: &Lattice) -> Result<QuotientStructure, LatticeError> {
    index(sub, sup)?;
    let rows = sub
        .basis
        .rows()
        .iter()
        .map(|r| sup.coordinates(r).map(|c| c.expect("checked by index")))
        .collect::<Result<Vec<_>, _>>()?;
    let change = IntMatrix::from_rows(rows)?;
    let s = snf(&change)?;
    let diag = s.diagonal();
    let skipped = diag.iter().take_while(|d| d.is_one()).count();
    Ok(QuotientStructure {
        factors: diag[skipped..].to_vec(),
        sup: sup.clone(),
        transform: s.v,
        skipped,
    })
}

/// Basis of the integer kernel `{u : a u = 0}` of an `n x s` matrix.
pub fn kernel_lattice(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    if a.is_zero() {
        return IntMatrix::identity(a.ncols()).rows;
    }
    let s = snf(a).expect("nonzero matrix");
    let rank = s.diagonal().len();
    (rank..a.ncols()).map(|j| s.v.column(j)).collect()
}

/// Membership in the row span of `basis` (any rank).
pub fn span_member(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    let m = IntMatrix::from_rows(basis.to_vec()).expect("well-formed basis");
    match hnf(&m) {
        Ok(h) => echelon_coordinates(h.h.rows(), v).is_some(),
        Err(_) => v.iter().all(Zero::is_zero),
    }
}

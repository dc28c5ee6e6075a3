//! Exact scalars, labeled bases and sparse matrices over `Q` and `F2`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Rational scalar; `BigRational` keeps itself reduced with a positive denominator.
pub type Q = BigRational;

/// Z/2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Element of the two-element field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct F2(pub bool);

impl Debug for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

pub trait Field: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Clears `target[col]` using `pivot` (which has a nonzero entry at `col`).
    fn eliminate(target: &mut [Self], pivot: &[Self], col: usize) {
        let Some(inv) = pivot[col].inv() else { return };
        let factor = target[col].mul(&inv);
        if factor.is_zero() {
            return;
        }
        for (t, p) in target.iter_mut().zip(pivot) {
            if !p.is_zero() {
                *t = t.sub(&factor.mul(p));
            }
        }
    }

    /// Rescales a row into a canonical representative of its line.
    fn normalize(_row: &mut [Self]) {}
}

impl Field for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn one() -> Self {
        F2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn sub(&self, other: &Self) -> Self {
        *self + *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self * *other
    }
    fn inv(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
    fn eliminate(target: &mut [Self], pivot: &[Self], col: usize) {
        if target[col].0 && pivot[col].0 {
            for (t, p) in target.iter_mut().zip(pivot) {
                t.0 ^= p.0;
            }
        }
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    // Fraction-free step: target <- p * target - t * pivot, then strip content.
    fn eliminate(target: &mut [Self], pivot: &[Self], col: usize) {
        if Zero::is_zero(&target[col]) {
            return;
        }
        let p = pivot[col].clone();
        let t = target[col].clone();
        for (x, y) in target.iter_mut().zip(pivot) {
            *x = &p * &*x - &t * y;
        }
        Self::normalize(target);
    }

    fn normalize(row: &mut [Self]) {
        let mut lcm = BigInt::one();
        for x in row.iter() {
            lcm = lcm.lcm(x.denom());
        }
        let mut gcd = BigInt::zero();
        for x in row.iter() {
            let n = x.numer() * (&lcm / x.denom());
            gcd = gcd.gcd(&n);
        }
        if gcd.is_zero() {
            return;
        }
        let lead_negative = row.iter().find(|x| !Zero::is_zero(*x)).is_some_and(|x| x.is_negative());
        if lead_negative {
            gcd = -gcd;
        }
        let scale = Q::new(lcm, gcd);
        for x in row.iter_mut() {
            *x = &*x * &scale;
        }
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Ordered, duplicate-free list of labels with a Z/2 degree per label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledBasis<L: Eq + Hash> {
    labels: Vec<L>,
    degrees: Vec<Parity>,
    index: HashMap<L, usize>,
}

impl<L: Clone + Eq + Hash> Default for LabeledBasis<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Clone + Eq + Hash> LabeledBasis<L> {
    pub fn new() -> Self {
        LabeledBasis { labels: Vec::new(), degrees: Vec::new(), index: HashMap::new() }
    }

    /// Appends `label`; returns false (and leaves the basis unchanged) on a duplicate.
    pub fn push(&mut self, label: L, degree: Parity) -> bool {
        if self.index.contains_key(&label) {
            return false;
        }
        self.index.insert(label.clone(), self.labels.len());
        self.labels.push(label);
        self.degrees.push(degree);
        true
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn degree_at(&self, i: usize) -> Parity {
        self.degrees[i]
    }

    pub fn degree(&self, label: &L) -> Option<Parity> {
        self.index.get(label).map(|&i| self.degrees[i])
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &L) -> bool {
        self.index.contains_key(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, Parity)> {
        self.labels.iter().zip(self.degrees.iter().copied())
    }

    pub fn count(&self, parity: Parity) -> usize {
        self.degrees.iter().filter(|&&d| d == parity).count()
    }

    /// Sub-basis of the labels with the given degree, in order.
    pub fn part(&self, parity: Parity) -> LabeledBasis<L> {
        let mut out = LabeledBasis::new();
        for (l, d) in self.iter() {
            if d == parity {
                out.push(l.clone(), d);
            }
        }
        out
    }
}

impl<L: Clone + Eq + Hash> FromIterator<(L, Parity)> for LabeledBasis<L> {
    fn from_iter<I: IntoIterator<Item = (L, Parity)>>(iter: I) -> Self {
        let mut b = LabeledBasis::new();
        for (l, d) in iter {
            b.push(l, d);
        }
        b
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("label {0} is not in the row basis")]
    UnknownRow(String),
    #[error("label {0} is not in the column basis")]
    UnknownColumn(String),
}

/// Matrix with labeled rows and columns; only nonzero entries are stored.
#[derive(Clone, Debug)]
pub struct SparseMatrix<R: Eq + Hash, C: Eq + Hash, F> {
    rows: LabeledBasis<R>,
    cols: LabeledBasis<C>,
    entries: BTreeMap<(usize, usize), F>,
}

impl<R, C, F> SparseMatrix<R, C, F>
where
    R: Clone + Eq + Hash + Debug,
    C: Clone + Eq + Hash + Debug,
    F: Field,
{
    pub fn new(rows: LabeledBasis<R>, cols: LabeledBasis<C>) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn rows(&self) -> &LabeledBasis<R> {
        &self.rows
    }

    pub fn cols(&self) -> &LabeledBasis<C> {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    fn position(&self, r: &R, c: &C) -> Result<(usize, usize), LinalgError> {
        let i = self.rows.index_of(r).ok_or_else(|| LinalgError::UnknownRow(format!("{r:?}")))?;
        let j = self.cols.index_of(c).ok_or_else(|| LinalgError::UnknownColumn(format!("{c:?}")))?;
        Ok((i, j))
    }

    /// Overwrites an entry; zero removes it.
    pub fn set(&mut self, r: &R, c: &C, value: F) -> Result<(), LinalgError> {
        let pos = self.position(r, c)?;
        if value.is_zero() {
            self.entries.remove(&pos);
        } else {
            self.entries.insert(pos, value);
        }
        Ok(())
    }

    /// Adds `value` to an entry.
    pub fn add_to(&mut self, r: &R, c: &C, value: F) -> Result<(), LinalgError> {
        let pos = self.position(r, c)?;
        let sum = match self.entries.get(&pos) {
            Some(old) => old.add(&value),
            None => value,
        };
        if sum.is_zero() {
            self.entries.remove(&pos);
        } else {
            self.entries.insert(pos, sum);
        }
        Ok(())
    }

    pub fn get(&self, r: &R, c: &C) -> F {
        match self.position(r, c) {
            Ok(pos) => self.entries.get(&pos).cloned().unwrap_or_else(F::zero),
            Err(_) => F::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&R, &C, &F)> {
        self.entries.iter().map(|(&(i, j), v)| (self.rows.label(i), self.cols.label(j), v))
    }

    fn dense_rows(&self) -> Vec<Vec<F>> {
        let mut m = vec![vec![F::zero(); self.cols.len()]; self.rows.len()];
        for (&(i, j), v) in &self.entries {
            m[i][j] = v.clone();
        }
        m
    }

    fn dense_cols(&self) -> Vec<Vec<F>> {
        let mut m = vec![vec![F::zero(); self.rows.len()]; self.cols.len()];
        for (&(i, j), v) in &self.entries {
            m[j][i] = v.clone();
        }
        m
    }

    pub fn rank(&self) -> usize {
        reduce(self.dense_rows(), self.cols.len()).pivots.len()
    }

    /// Null space basis, one dense vector (in column order) per free column.
    /// Each vector has entry 1 at its free column and 0 at every other free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let ncols = self.cols.len();
        let ech = reduce(self.dense_rows(), ncols);
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut out = Vec::new();
        for f in 0..ncols {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for &(r, c) in &ech.pivots {
                let row = &ech.rows[r];
                if !row[f].is_zero() {
                    let inv = row[c].inv().expect("pivot is nonzero");
                    v[c] = F::zero().sub(&row[f].mul(&inv));
                }
            }
            out.push(v);
        }
        out
    }

    /// Row labels spanning a complement of the image, chosen greedily in row order.
    pub fn cokernel_basis(&self) -> Vec<R> {
        let mut span = Span::new(self.rows.len());
        for col in self.dense_cols() {
            span.insert(col);
        }
        let mut out = Vec::new();
        for i in 0..self.rows.len() {
            let mut e = vec![F::zero(); self.rows.len()];
            e[i] = F::one();
            if span.insert(e) {
                out.push(self.rows.label(i).clone());
            }
        }
        out
    }

    /// Image of a dense column-space vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rows.len()];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] = out[i].add(&a.mul(&v[j]));
            }
        }
        out
    }
}

struct Echelon<F> {
    rows: Vec<Vec<F>>,
    /// (row index, pivot column) in increasing column order.
    pivots: Vec<(usize, usize)>,
}

/// Reduced row echelon form with pivot = first nonzero row (in row order) of each column.
fn reduce<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Echelon<F> {
    for row in rows.iter_mut() {
        F::normalize(row);
    }
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let pivot = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                F::eliminate(row, &pivot, col);
            }
        }
        pivots.push((next, col));
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    Echelon { rows, pivots }
}

/// Incrementally built subspace of `F^n`.
#[derive(Clone, Debug)]
pub struct Span<F> {
    dim: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Span<F> {
    pub fn new(dim: usize) -> Self {
        Span { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduced(&self, mut v: Vec<F>) -> Vec<F> {
        debug_assert_eq!(v.len(), self.dim);
        for (c, row) in &self.rows {
            if !v[*c].is_zero() {
                F::eliminate(&mut v, row, *c);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduced(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        let mut v = self.reduced(v);
        match v.iter().position(|x| !x.is_zero()) {
            Some(c) => {
                F::normalize(&mut v);
                self.rows.push((c, v));
                true
            }
            None => false,
        }
    }
}

/// Rank of a dense list of row vectors.
pub fn dense_rank<F: Field>(rows: Vec<Vec<F>>, ncols: usize) -> usize {
    reduce(rows, ncols).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn basis(n: usize) -> LabeledBasis<usize> {
        (0..n).map(|i| (i, Parity::Even)).collect()
    }

    fn matrix_q(rows: &[&[i64]]) -> SparseMatrix<usize, usize, Q> {
        let nc = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(basis(rows.len()), basis(nc));
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(&i, &j, q(v)).unwrap();
            }
        }
        m
    }

    fn matrix_f2(rows: &[Vec<bool>], nc: usize) -> SparseMatrix<usize, usize, F2> {
        let mut m = SparseMatrix::new(basis(rows.len()), basis(nc));
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(&i, &j, F2(v)).unwrap();
            }
        }
        m
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = matrix_q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn difference_row_kernel() {
        let m = matrix_q(&[&[1, -1]]);
        assert_eq!(m.kernel_basis(), vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn three_cycle_evaluation_kernel() {
        // Nodes of a cycle of three degree-0 lines: row j compares component j with j+1.
        let m = matrix_q(&[&[1, -1, 0], &[0, 1, -1], &[-1, 0, 1]]);
        assert_eq!(m.kernel_basis().len(), 1);
        assert_eq!(m.cokernel_basis().len(), 1);
    }

    #[test]
    fn surjective_has_empty_cokernel() {
        let m = matrix_q(&[&[1, 2, 3], &[0, 1, 4]]);
        assert!(m.cokernel_basis().is_empty());
    }

    #[test]
    fn zero_matrix_cokernel_is_everything() {
        let m = matrix_q(&[&[0, 0], &[0, 0]]);
        assert_eq!(m.cokernel_basis(), vec![0, 1]);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn chain_evaluation_cokernel() {
        // m+1 nodes on a chain of m degree-0 lines between two tails: only the two
        // tail constants and m line constants, rank m+1 when all present.
        // Here columns are only the two tail constants: rank 2, cokernel m-1.
        for m in 2..6usize {
            let rows = m + 1;
            let mut data = vec![vec![0i64; 2]; rows];
            data[0][0] = 1;
            data[rows - 1][1] = -1;
            let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
            let mat = matrix_q(&refs);
            assert_eq!(mat.rank(), 2);
            assert_eq!(mat.cokernel_basis().len(), m - 1);
        }
    }

    #[test]
    fn f2_rank_of_all_ones() {
        let m = matrix_f2(&[vec![true, true], vec![true, true]], 2);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rationals_are_reduced() {
        let x = Q::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(x.denom(), &BigInt::from(3));
        assert_eq!(x.numer(), &BigInt::from(-2));
    }

    #[test]
    fn fraction_free_normalization() {
        let mut row = vec![Q::new(2.into(), 3.into()), Q::new((-4).into(), 9.into())];
        Q::normalize(&mut row);
        assert_eq!(row, vec![q(3), q(-2)]);
    }

    #[test]
    fn duplicate_labels_rejected() {
        let mut b = LabeledBasis::new();
        assert!(b.push("a", Parity::Even));
        assert!(!b.push("a", Parity::Odd));
        assert_eq!(b.len(), 1);
        assert_eq!(b.degree(&"a"), Some(Parity::Even));
    }

    #[test]
    fn unknown_label_is_an_error() {
        let mut m: SparseMatrix<usize, usize, F2> = SparseMatrix::new(basis(1), basis(1));
        assert!(matches!(m.set(&3, &0, F2(true)), Err(LinalgError::UnknownRow(_))));
    }

    fn small_q_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), r)
        })
    }

    fn small_f2_matrix() -> impl Strategy<Value = Vec<Vec<bool>>> {
        (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_q(data in small_q_matrix()) {
            let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
            let m = matrix_q(&refs);
            let ker = m.kernel_basis();
            prop_assert_eq!(ker.len() + m.rank(), m.cols().len());
            prop_assert_eq!(m.cokernel_basis().len() + m.rank(), m.rows().len());
            for v in &ker {
                prop_assert!(m.apply(v).iter().all(|x| Field::is_zero(x)));
            }
        }

        #[test]
        fn rank_nullity_f2(data in small_f2_matrix()) {
            let nc = data[0].len();
            let m = matrix_f2(&data, nc);
            let ker = m.kernel_basis();
            prop_assert_eq!(ker.len() + m.rank(), nc);
            prop_assert_eq!(m.cokernel_basis().len() + m.rank(), data.len());
            for v in &ker {
                prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn insertion_order_irrelevant(data in small_q_matrix(), seed in any::<u64>()) {
            let nr = data.len();
            let nc = data[0].len();
            let mut cells: Vec<(usize, usize)> =
                (0..nr).flat_map(|i| (0..nc).map(move |j| (i, j))).collect();
            let mut s = seed;
            for i in (1..cells.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                cells.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut a = SparseMatrix::new(basis(nr), basis(nc));
            let mut b = SparseMatrix::new(basis(nr), basis(nc));
            for i in 0..nr {
                for j in 0..nc {
                    a.set(&i, &j, q(data[i][j])).unwrap();
                }
            }
            for &(i, j) in &cells {
                b.set(&i, &j, q(data[i][j])).unwrap();
            }
            prop_assert_eq!(a.kernel_basis(), b.kernel_basis());
            prop_assert_eq!(a.cokernel_basis(), b.cokernel_basis());
        }
    }
}

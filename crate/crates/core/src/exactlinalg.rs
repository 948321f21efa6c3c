//! Dense integer matrices and their Smith normal form.
//!
//! Elimination first runs on machine integers with checked arithmetic and
//! restarts on arbitrary-precision integers the moment any intermediate
//! value overflows, so the result is always exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape { rows, cols, len: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Copy>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d.into());
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let entries: Vec<BigInt> = rows.iter().flatten().map(|&x| x.into()).collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Reorders rows so that new row `i` is old row `perm[i]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for &r in perm {
            entries.extend_from_slice(self.row(r));
        }
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Reorders columns so that new column `j` is old column `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            for &c in perm {
                entries.push(self.get(i, c).clone());
            }
        }
        Self { rows: self.rows, cols: self.cols, entries }
    }

    pub fn negate_row(&mut self, row: usize) {
        for x in &mut self.entries[row * self.cols..(row + 1) * self.cols] {
            *x = -std::mem::take(x);
        }
    }

    /// Sub-matrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics if not square.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(BigInt::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Diagonal of a Smith normal form: non-negative, divisibility chain, zeros last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    divisors: Vec<BigUint>,
}

impl SmithForm {
    pub fn divisors(&self) -> &[BigUint] {
        &self.divisors
    }

    pub fn into_divisors(self) -> Vec<BigUint> {
        self.divisors
    }

    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Multiset of divisors as `{divisor: multiplicity}`.
    pub fn counts(&self) -> BTreeMap<BigUint, usize> {
        let mut counts = BTreeMap::new();
        for d in &self.divisors {
            *counts.entry(d.clone()).or_insert(0) += 1;
        }
        counts
    }

    /// `d_i | d_{i+1}` wherever `d_{i+1} != 0`, and no non-zero divisor after a zero.
    pub fn is_divisibility_chain(&self) -> bool {
        self.divisors.windows(2).all(|w| {
            if w[1].is_zero() {
                true
            } else {
                !w[0].is_zero() && (&w[1] % &w[0]).is_zero()
            }
        })
    }
}

/// Scalar type that the elimination kernel can run on.
///
/// Every fallible operation returns `None` on overflow.
trait Scalar: Clone + Send + Sync + Sized {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// Quotient of `a / b` rounded to the nearest integer.
    fn round_div(a: &Self, b: &Self) -> Option<Self>;
    /// `self -= q * x`.
    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()>;
    fn into_biguint_abs(self) -> BigUint;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }

    fn is_nil(&self) -> bool {
        *self == 0
    }

    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }

    fn round_div(a: &Self, b: &Self) -> Option<Self> {
        let mut q = a.checked_div(*b)?;
        let r = a.checked_sub(q.checked_mul(*b)?)?;
        if r.unsigned_abs().checked_mul(2)? > b.unsigned_abs() {
            if (r < 0) == (*b < 0) {
                q = q.checked_add(1)?;
            } else {
                q = q.checked_sub(1)?;
            }
        }
        Some(q)
    }

    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self = self.checked_sub(q.checked_mul(*x)?)?;
        Some(())
    }

    fn into_biguint_abs(self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }

    fn round_div(a: &Self, b: &Self) -> Option<Self> {
        let (mut q, r) = a.div_rem(b);
        if r.magnitude() * 2u32 > *b.magnitude() {
            if (r.sign() == Sign::Minus) == (b.sign() == Sign::Minus) {
                q += 1;
            } else {
                q -= 1;
            }
        }
        Some(q)
    }

    fn sub_mul(&mut self, q: &Self, x: &Self) -> Option<()> {
        *self -= q * x;
        Some(())
    }

    fn into_biguint_abs(self) -> BigUint {
        self.into_parts().1
    }
}

/// Work below this many submatrix cells stays on one thread.
const PARALLEL_CELLS: usize = 1 << 15;

/// Reduces `a` (row-major, `rows x cols`) to diagonal form in place and
/// returns the diagonal, or `None` if an operation overflowed.
fn diagonalize<T: Scalar>(rows: usize, cols: usize, a: &mut [T]) -> Option<Vec<T>> {
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);
    for t in 0..steps {
        loop {
            let Some((pi, pj)) = min_pivot(rows, cols, a, t) else {
                diag.resize(steps, T::nil());
                return Some(diag);
            };
            if pi != t {
                for j in 0..cols {
                    a.swap(t * cols + j, pi * cols + j);
                }
            }
            if pj != t {
                for i in 0..rows {
                    a.swap(i * cols + t, i * cols + pj);
                }
            }
            let column_clean = eliminate_column(rows, cols, a, t)?;
            let row_clean = eliminate_row(rows, cols, a, t, column_clean)?;
            if column_clean && row_clean {
                break;
            }
        }
        diag.push(a[t * cols + t].clone());
    }
    Some(diag)
}

/// Position of a non-zero entry of minimal absolute value in the trailing
/// submatrix starting at `(t, t)`. Ties go to the smallest Markowitz cost
/// `(row count - 1) * (column count - 1)`, which keeps fill-in and
/// coefficient growth down on sparse inputs.
fn min_pivot<T: Scalar>(rows: usize, cols: usize, a: &[T], t: usize) -> Option<(usize, usize)> {
    let mut row_count = vec![0usize; rows - t];
    let mut col_count = vec![0usize; cols - t];
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            let x = &a[i * cols + j];
            if x.is_nil() {
                continue;
            }
            row_count[i - t] += 1;
            col_count[j - t] += 1;
            match best {
                Some((bi, bj)) if x.cmp_abs(&a[bi * cols + bj]) != Ordering::Less => {}
                _ => best = Some((i, j)),
            }
        }
    }
    let (bi, bj) = best?;
    let smallest = &a[bi * cols + bj];
    let mut best_cost = usize::MAX;
    let mut choice = (bi, bj);
    for i in t..rows {
        let rc = row_count[i - t];
        if rc == 0 {
            continue;
        }
        for j in t..cols {
            let x = &a[i * cols + j];
            if x.is_nil() || x.cmp_abs(smallest) != Ordering::Equal {
                continue;
            }
            let cost = (rc - 1) * (col_count[j - t] - 1);
            if cost < best_cost {
                best_cost = cost;
                choice = (i, j);
                if cost == 0 {
                    return Some(choice);
                }
            }
        }
    }
    Some(choice)
}

/// Row operations clearing column `t` below the pivot as far as Euclidean
/// division allows. Returns whether the column is now zero below the pivot.
fn eliminate_column<T: Scalar>(rows: usize, cols: usize, a: &mut [T], t: usize) -> Option<bool> {
    let (head, tail) = a.split_at_mut((t + 1) * cols);
    let pivot_row = &head[t * cols..];
    let pivot = &pivot_row[t];
    let reduce = |row: &mut [T]| -> Option<bool> {
        if row[t].is_nil() {
            return Some(true);
        }
        let q = T::round_div(&row[t], pivot)?;
        for j in t..cols {
            if !pivot_row[j].is_nil() {
                row[j].sub_mul(&q, &pivot_row[j])?;
            }
        }
        Some(row[t].is_nil())
    };
    if (rows - t) * (cols - t) >= PARALLEL_CELLS {
        tail.par_chunks_mut(cols).map(reduce).try_reduce(|| true, |x, y| Some(x && y))
    } else {
        let mut clean = true;
        for row in tail.chunks_mut(cols) {
            clean &= reduce(row)?;
        }
        Some(clean)
    }
}

/// Column operations clearing row `t` right of the pivot. When the pivot
/// column is already clean only row `t` changes.
fn eliminate_row<T: Scalar>(
    rows: usize,
    cols: usize,
    a: &mut [T],
    t: usize,
    column_clean: bool,
) -> Option<bool> {
    let pivot = a[t * cols + t].clone();
    let last_row = if column_clean { t + 1 } else { rows };
    let mut clean = true;
    for j in t + 1..cols {
        if a[t * cols + j].is_nil() {
            continue;
        }
        let q = T::round_div(&a[t * cols + j], &pivot)?;
        for i in t..last_row {
            let (pivot_col, target) = (i * cols + t, i * cols + j);
            if !a[pivot_col].is_nil() {
                let factor = a[pivot_col].clone();
                a[target].sub_mul(&q, &factor)?;
            }
        }
        clean &= a[t * cols + j].is_nil();
    }
    Some(clean)
}

/// Turns an arbitrary diagonal into the canonical divisibility chain by
/// repeated `(gcd, lcm)` replacement; zeros end up last.
fn normalize_diagonal(mut diag: Vec<BigUint>) -> Vec<BigUint> {
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            if diag[j].is_one() && diag[i].is_one() {
                continue;
            }
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.sort_by(|x, y| match (x.is_zero(), y.is_zero()) {
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => x.cmp(y),
    });
    diag
}

/// Diagonal of a Smith normal form of `m`; length `min(rows, cols)`.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let small: Option<Vec<i64>> = m.entries.iter().map(ToPrimitive::to_i64).collect();
    let diag = small
        .and_then(|mut a| diagonalize(rows, cols, &mut a))
        .map(|d| d.into_iter().map(Scalar::into_biguint_abs).collect())
        .unwrap_or_else(|| {
            let mut a = m.entries.clone();
            diagonalize(rows, cols, &mut a)
                .expect("big-integer elimination cannot overflow")
                .into_iter()
                .map(Scalar::into_biguint_abs)
                .collect()
        });
    SmithForm { divisors: normalize_diagonal(diag) }
}

/// Same as [`smith_normal_form`] but never takes the machine-integer path.
pub fn smith_normal_form_bigint(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.entries.clone();
    let diag = diagonalize(m.rows, m.cols, &mut a)
        .expect("big-integer elimination cannot overflow")
        .into_iter()
        .map(Scalar::into_biguint_abs)
        .collect();
    SmithForm { divisors: normalize_diagonal(diag) }
}

/// gcd of all `k x k` minors of `m` (0 when they all vanish).
///
/// Enumerates every pair of index subsets, so this is only for small matrices.
pub fn minor_gcd(m: &IntegerMatrix, k: usize) -> Result<BigInt> {
    let max = m.rows.min(m.cols);
    if k == 0 || k > max {
        return Err(Error::MinorSizeOutOfRange { k, max });
    }
    let row_sets = subsets(m.rows, k);
    let col_sets = subsets(m.cols, k);
    let mut g = BigInt::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            let det = m.submatrix(rs, cs).determinant();
            g = g.gcd(&det);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g.abs())
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let Some(i) = (0..k).rev().find(|&i| current[i] != i + n - k) else {
            return out;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

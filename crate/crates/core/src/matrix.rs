//! Dense matrices over a [`Field`] and the exact linear algebra the
//! certificate checks need.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    /// Row-major construction; `None` if `data.len() != rows * cols`.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Elem>) -> Option<Self> {
        (data.len() == rows * cols).then_some(Matrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    /// `M · Mᵀ` under the Euclidean inner product.
    pub fn gram(&self, field: &Field) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.rows);
        for a in 0..self.rows {
            for b in a..self.rows {
                let x = dot(field, self.row(a), self.row(b));
                out.set(a, b, x);
                out.set(b, a, x);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut basis = Basis::new(self.rows);
        (0..self.cols)
            .filter(|&c| basis.insert(field, self.column(c)))
            .count()
    }
}

pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Column vectors kept in reduced form against their pivot rows, so new
/// vectors can be tested for independence incrementally and the last one
/// can be popped again.
#[derive(Clone, Debug)]
pub struct Basis {
    dim: usize,
    vectors: Vec<(usize, Vec<Elem>)>,
}

impl Basis {
    pub fn new(dim: usize) -> Self {
        Basis {
            dim,
            vectors: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Adds `v` if it is independent of the current vectors; returns whether
    /// it was added.
    pub fn insert(&mut self, field: &Field, mut v: Vec<Elem>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        for (pivot, b) in &self.vectors {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = field.inv(v[pivot]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
        self.vectors.push((pivot, v));
        true
    }

    pub fn pop(&mut self) {
        self.vectors.pop();
    }
}

/// True iff every `k`-subset of the columns of a `k x n` matrix is
/// linearly independent, i.e. the row space is an MDS code.
///
/// Brings `g` to the form `[I | A]`; the code is MDS exactly when every
/// square submatrix of `A` is nonsingular. Those are visited depth first
/// with rows and columns chosen in increasing order, carrying the Schur
/// complement of the chosen block, so each minor costs one entry update.
pub fn all_minors_nonsingular(field: &Field, g: &Matrix) -> bool {
    let k = g.rows();
    let n = g.cols();
    if k == 0 || k > n {
        return k == 0;
    }
    let Some(a) = systematic_part(field, g) else {
        return false;
    };
    let cols = n - k;
    if a.iter().any(|x| x.is_zero()) {
        return false;
    }
    let mut scratch = vec![Vec::new(); k.min(cols)];
    schur_descend(field, &a, k, cols, &mut scratch)
}

/// The `k x (n - k)` block `A` of the reduced form `[I | A]`, or `None`
/// when the first `k` columns are dependent.
fn systematic_part(field: &Field, g: &Matrix) -> Option<Vec<Elem>> {
    let (k, n) = (g.rows(), g.cols());
    let mut m = g.clone();
    for c in 0..k {
        let r = (c..k).find(|&r| !m.get(r, c).is_zero())?;
        if r != c {
            for j in 0..n {
                let (x, y) = (m.get(r, j), m.get(c, j));
                m.set(r, j, y);
                m.set(c, j, x);
            }
        }
        let inv = field.inv(m.get(c, c)).expect("pivot is nonzero");
        for j in 0..n {
            m.set(c, j, field.mul(m.get(c, j), inv));
        }
        for r in 0..k {
            let f = m.get(r, c);
            if r == c || f.is_zero() {
                continue;
            }
            for j in 0..n {
                m.set(r, j, field.sub(m.get(r, j), field.mul(f, m.get(c, j))));
            }
        }
    }
    Some((0..k).flat_map(|r| m.row(r)[k..].to_vec()).collect())
}

/// `s` is a `rows x cols` Schur complement whose entries are all nonzero.
/// Pivoting on `(i, j)` gives the complement for the rows after `i` and
/// columns after `j`; each of its entries is a ratio of a larger minor to
/// the current one, so all must again be nonzero.
fn schur_descend(
    field: &Field,
    s: &[Elem],
    rows: usize,
    cols: usize,
    scratch: &mut [Vec<Elem>],
) -> bool {
    let Some((next, deeper)) = scratch.split_first_mut() else {
        return true;
    };
    for i in 0..rows.saturating_sub(1) {
        for j in 0..cols.saturating_sub(1) {
            let pivot_inv = field.inv(s[i * cols + j]).expect("entries are nonzero");
            let (r2, c2) = (rows - i - 1, cols - j - 1);
            next.clear();
            for a in i + 1..rows {
                let f = field.mul(s[a * cols + j], pivot_inv);
                for b in j + 1..cols {
                    let x = field.sub(s[a * cols + b], field.mul(f, s[i * cols + b]));
                    if x.is_zero() {
                        return false;
                    }
                    next.push(x);
                }
            }
            let child = core::mem::take(next);
            let ok = schur_descend(field, &child, r2, c2, deeper);
            *next = child;
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Whether the columns at `indices` are linearly independent.
pub fn columns_independent(field: &Field, g: &Matrix, indices: &[usize]) -> bool {
    let mut basis = Basis::new(g.rows());
    indices.iter().all(|&c| basis.insert(field, g.column(c)))
}

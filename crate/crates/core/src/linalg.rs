//! Dense exact linear algebra over the rationals.
//!
//! Everything here is plain Gaussian elimination on `BigRational` entries.
//! Matrices are small (at most a few hundred columns), so no attempt is made
//! at fraction-free or sparse elimination.

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type Vector = Vec<Q>;

pub fn zeros(n: usize) -> Vector {
    vec![Q::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Q::one();
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Q, a: &[Q]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * a`
pub fn axpy(acc: &mut [Q], c: &Q, a: &[Q]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in acc.iter_mut().zip(a) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = c.clone();
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share a length.
    pub fn from_rows(data: Vec<Vector>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        debug_assert!(data.iter().all(|r| r.len() == cols));
        Self { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vector], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..nrows {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i][j] = v;
    }

    pub fn col(&self, j: usize) -> Vector {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                axpy(&mut out.data[i], a, &other.data[k]);
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        self.data.iter().map(|r| dot(r, v)).collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| sub(a, b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| is_zero_vec(r))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.data[i][j] == self.data[j][i]))
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        rref(&mut m, self.cols).len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column of the RREF.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut m = self.data.clone();
        let pivots = rref(&mut m, self.cols);
        kernel_from_rref(&m, &pivots, self.cols)
    }

    /// A particular solution of `M x = b` (free variables set to zero).
    pub fn solve(&self, b: &[Q]) -> Option<Vector> {
        assert_eq!(self.rows, b.len());
        let mut aug: Vec<Vector> = self
            .data
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut row = r.clone();
                row.push(bi.clone());
                row
            })
            .collect();
        let pivots = rref(&mut aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vector> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend(unit(n, i));
                row
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        Some(Matrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Sylvester-style test through symmetric elimination: a symmetric matrix
    /// is positive definite iff every pivot met without row exchanges is > 0.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut m = self.data.clone();
        for k in 0..n {
            if !m[k][k].is_positive() {
                return false;
            }
            let pivot = m[k][k].clone();
            let pivot_row = m[k].clone();
            for row in m.iter_mut().skip(k + 1) {
                if row[k].is_zero() {
                    continue;
                }
                let f = &row[k] / &pivot;
                for j in k..n {
                    if !pivot_row[j].is_zero() {
                        let d = &f * &pivot_row[j];
                        row[j] -= d;
                    }
                }
            }
        }
        true
    }
}

/// In-place reduced row echelon form restricted to the first `ncols`
/// columns. Returns the pivot column of each nonzero row, in order; rows
/// beyond the pivots are zero on those columns afterwards.
pub fn rref(m: &mut Vec<Vector>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = -row[c].clone();
            axpy(row, &f, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(pivots.len().max(r));
    pivots
}

fn kernel_from_rref(m: &[Vector], pivots: &[usize], ncols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = unit(ncols, free);
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    let mut m = vectors.to_vec();
    rref(&mut m, n).len()
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coords_in_span(basis: &[Vector], v: &[Q]) -> Option<Vector> {
    if basis.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    Matrix::from_cols(basis, v.len()).solve(v)
}

/// Gram-Schmidt over Q with respect to a symmetric bilinear form; the output
/// is orthogonal (not normalized) and spans the same space. Dependent inputs
/// are dropped.
pub fn gram_schmidt(vectors: &[Vector], form: impl Fn(&[Q], &[Q]) -> Q) -> Vec<Vector> {
    let mut out: Vec<(Vector, Q)> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (u, uu) in &out {
            let c = form(&w, u) / uu;
            let neg = -c;
            axpy(&mut w, &neg, u);
        }
        if !is_zero_vec(&w) {
            let ww = form(&w, &w);
            out.push((w, ww));
        }
    }
    out.into_iter().map(|(w, _)| w).collect()
}

/// Reason an incremental system became unsolvable.
#[derive(Debug, Clone)]
pub struct Inconsistency {
    /// Tag of the equation whose reduction produced `0 = c` with `c != 0`.
    pub tag: usize,
    pub residue: Q,
}

/// Accumulates linear equations one at a time, keeping them in reduced form.
/// Detects inconsistency as soon as the offending equation arrives, which
/// lets callers report exactly which constraint failed.
#[derive(Debug, Clone)]
pub struct IncrementalSolver {
    nvars: usize,
    // Each row has nvars + 1 entries (last is the right-hand side), pivot = 1.
    rows: Vec<(usize, Vector)>,
}

impl IncrementalSolver {
    pub fn new(nvars: usize) -> Self {
        Self { nvars, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `coeffs . x = rhs`.
    pub fn add(&mut self, coeffs: &[Q], rhs: &Q, tag: usize) -> Result<(), Inconsistency> {
        let mut row = coeffs.to_vec();
        row.push(rhs.clone());
        for (p, existing) in &self.rows {
            if !row[*p].is_zero() {
                let f = -row[*p].clone();
                axpy(&mut row, &f, existing);
            }
        }
        match (0..self.nvars).find(|&c| !row[c].is_zero()) {
            None => {
                if row[self.nvars].is_zero() {
                    Ok(())
                } else {
                    Err(Inconsistency { tag, residue: row[self.nvars].clone() })
                }
            }
            Some(p) => {
                let inv = row[p].recip();
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
                for (_, existing) in self.rows.iter_mut() {
                    if !existing[p].is_zero() {
                        let f = -existing[p].clone();
                        axpy(existing, &f, &row);
                    }
                }
                self.rows.push((p, row));
                Ok(())
            }
        }
    }

    /// The solution with every free variable set to zero.
    pub fn particular_solution(&self) -> Vector {
        let mut x = zeros(self.nvars);
        for (p, row) in &self.rows {
            x[*p] = row[self.nvars].clone();
        }
        x
    }

    /// Number of free variables, i.e. dimension of the solution set.
    pub fn nullity(&self) -> usize {
        self.nvars - self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&m.apply(v)));
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let m = mat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        // column 3 of the inverse is the dual vector of the third row
        assert_eq!(inv.col(2), vec![q(1), q(2), q(3)]);
        assert_eq!(m.solve(&[q(0), q(0), q(1)]).unwrap(), vec![q(1), q(2), q(3)]);
        assert!(mat(&[&[1, 1], &[1, 1]]).solve(&[q(0), q(1)]).is_none());
    }

    #[test]
    fn positive_definiteness() {
        assert!(mat(&[&[2, -1], &[-1, 2]]).is_positive_definite());
        assert!(!mat(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!mat(&[&[1, 2], &[0, 1]]).is_positive_definite());
    }

    #[test]
    fn incremental_detects_inconsistency() {
        let mut s = IncrementalSolver::new(2);
        s.add(&[q(1), q(1)], &q(2), 0).unwrap();
        s.add(&[q(2), q(2)], &q(4), 1).unwrap();
        let err = s.add(&[q(1), q(1)], &q(3), 2).unwrap_err();
        assert_eq!(err.tag, 2);
        assert_eq!(s.nullity(), 1);
    }

    #[test]
    fn gram_schmidt_orthogonal() {
        let form = |a: &[Q], b: &[Q]| dot(a, b);
        let vs = vec![vec![q(1), q(1), q(0)], vec![q(1), q(0), q(1)], vec![q(2), q(1), q(1)]];
        let gs = gram_schmidt(&vs, form);
        assert_eq!(gs.len(), 2);
        assert_eq!(dot(&gs[0], &gs[1]), q(0));
        assert_eq!(gs[1], vec![qf(1, 2), qf(-1, 2), q(1)]);
    }

    proptest! {
        #[test]
        fn solve_agrees_with_product(entries in proptest::collection::vec(-4i64..5, 12), xs in proptest::collection::vec(-3i64..4, 4)) {
            let m = Matrix::from_rows(entries.chunks(4).map(|r| r.iter().map(|&x| q(x)).collect()).collect());
            let x: Vector = xs.iter().map(|&v| q(v)).collect();
            let b = m.apply(&x);
            let y = m.solve(&b).expect("consistent by construction");
            prop_assert_eq!(m.apply(&y), b);
            let rank = m.rank();
            prop_assert_eq!(m.kernel().len(), 4 - rank);
        }
    }
}

//! Dense matrices over the rationals.
//!
//! Everything here is exact. Hom-spaces in linear mode are at most a few
//! dozen dimensions, so plain Gaussian elimination on `BigRational` is fast
//! enough and keeps isomorphism tests decidable.

use std::fmt;

use num::{BigRational, One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Row-major dense matrix. A matrix with `rows` rows represents a linear map
/// from a `cols`-dimensional space to a `rows`-dimensional one acting on
/// column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &self[(r, c)] * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, n: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..n {
            acc = self.mul(&acc);
        }
        acc
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = &m[(row, c)] * &factor;
                        m[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Q::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// One solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = red[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -red[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Canonical basis of the column space: the nonzero rows of the RREF of
    /// the transpose. Two matrices have the same column space iff this
    /// returns the same list.
    pub fn column_space(&self) -> Vec<Vec<Q>> {
        let (red, pivots) = self.transpose().rref();
        (0..pivots.len())
            .map(|r| (0..red.cols).map(|c| red[(r, c)].clone()).collect())
            .collect()
    }
}

/// Coordinates of `v` with respect to the linearly independent `basis`, if
/// `v` lies in its span.
pub fn coordinates(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    Matrix::from_columns(v.len(), basis).solve(v)
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn scale(v: &[Q], s: &Q) -> Vec<Q> {
    v.iter().map(|x| x * s).collect()
}

pub fn add_assign(acc: &mut [Q], v: &[Q]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Renders a rational compactly: `3`, `-1/2`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| q_frac(n, d))
        }
        None => s.parse::<i64>().ok().map(q),
    }
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn projection_rank_stabilises() {
        let p = m(&[&[1, 0], &[0, 0]]);
        assert_eq!(p.rank(), 1);
        assert_eq!(p.pow(2), p);
        assert_eq!(p.column_space(), vec![vec![q(1), q(0)]]);
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&a.apply(&k[0])));
        let x = a.solve(&[q(3), q(4)]).unwrap();
        assert_eq!(a.apply(&x), vec![q(3), q(4)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[q(1), q(2)]).is_none());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-1/2"), Some(q_frac(-1, 2)));
        assert_eq!(fmt_q(&q_frac(4, 2)), "2");
        assert_eq!(fmt_q(&q_frac(-1, 3)), "-1/3");
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn coordinates_in_span() {
        let basis = vec![vec![q(1), q(1)]];
        assert_eq!(coordinates(&basis, &[q(2), q(2)]), Some(vec![q(2)]));
        assert_eq!(coordinates(&basis, &[q(1), q(0)]), None);
    }
}

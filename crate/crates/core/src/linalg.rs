//! Exact rational linear algebra: dense matrices, Gauss-Jordan elimination,
//! kernels, images and subspaces.
//!
//! Everything here works over [`Rational`] (arbitrary precision, always
//! reduced) so rank and membership questions are equality tests, never
//! tolerance tests.

use num::{BigRational, One, Signed, Zero};
use std::fmt;

/// Exact scalar used throughout the algebraic half of the crate.
pub type Rational = BigRational;

/// Parse `"p"`, `"-p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, LinAlgError> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<num::BigInt>()
            .map_err(|_| LinAlgError::BadRational(s.to_string()))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(LinAlgError::BadRational(s.to_string()));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Render a rational as `p` or `p/q`, the same syntax `parse_rational` accepts.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ratq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not invertible")]
    Singular,
    #[error("not a valid rational literal: {0}")]
    BadRational(String),
}

/// Dense matrix of rationals, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format_rational(self.at(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from row slices; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMat { rows: r, cols: c, data: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Rational>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect())
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &RatMat) -> RatMat {
        self.mul(other).sub(&other.mul(self))
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.at(r, c).recip();
            for j in 0..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.at(i, j) - &f * m.at(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space (columns `v` with `self * v = 0`).
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.at(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn image_basis(&self) -> Vec<Vec<Rational>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    /// Solve `self * x = b`; `None` when inconsistent. With a nontrivial
    /// kernel, returns the solution with free variables set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<RatMat, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::Singular);
        }
        let n = self.rows;
        let mut aug = RatMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinAlgError::Singular);
        }
        Ok(RatMat::from_fn(n, n, |i, j| r.at(i, n + j).clone()))
    }

    /// Express each of `vecs` in terms of the columns of `self`;
    /// `None` if any vector is outside the column span.
    pub fn coords_in_columns(&self, vecs: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
        vecs.iter().map(|v| self.solve(v)).collect()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| rational_to_f64(self.at(i, j)))
    }
}

/// Nearest-double conversion (exact for dyadic rationals).
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back to a quotient of truncated parts for huge entries
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Snap a float to a rational with small denominator.
///
/// Returns the closest `p/q` with `q <= max_den` if it is within `tol`,
/// otherwise `None`. Used by the FD-then-snap policy of the groupoid module.
pub fn snap_to_rational(x: f64, max_den: u32, tol: f64) -> Option<Rational> {
    let mut best: Option<(f64, Rational)> = None;
    for q in 1..=max_den {
        let p = (x * q as f64).round();
        if p.abs() > 1e15 {
            continue;
        }
        let err = (x - p / q as f64).abs();
        if best.as_ref().is_none_or(|(e, _)| err < *e) {
            best = Some((err, Rational::new((p as i64).into(), (q as i64).into())));
        }
    }
    best.filter(|(e, _)| *e <= tol).map(|(_, r)| r)
}

/// A linear subspace of `Q^ambient_dim`, stored as an independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    /// Reduce a spanning set to an independent basis (rref of the column matrix).
    pub fn from_span(ambient_dim: usize, span: &[Vec<Rational>]) -> Self {
        for v in span {
            assert_eq!(v.len(), ambient_dim, "span vector has wrong length");
        }
        if span.is_empty() {
            return Subspace { ambient_dim, basis: Vec::new() };
        }
        let basis = RatMat::from_cols(span).image_basis();
        Subspace { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let id = RatMat::identity(ambient_dim);
        Subspace { ambient_dim, basis: (0..ambient_dim).map(|j| id.col(j)).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Exact membership via a rank comparison.
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        let mut cols = self.basis.clone();
        cols.push(v.to_vec());
        RatMat::from_cols(&cols).rank() == self.dim()
    }

    /// Coordinates of `v` in this basis; `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        RatMat::from_cols(&self.basis).solve(v)
    }

    /// Standard basis vectors completing this subspace to the ambient space.
    ///
    /// Picks `e_j` for every non-pivot column of `[basis | I]`, so the choice
    /// is deterministic.
    pub fn complement(&self) -> Vec<Vec<Rational>> {
        let mut cols = self.basis.clone();
        let id = RatMat::identity(self.ambient_dim);
        let start = cols.len();
        for j in 0..self.ambient_dim {
            cols.push(id.col(j));
        }
        let (_, pivots) = RatMat::from_cols(&cols).rref();
        pivots
            .into_iter()
            .filter(|&p| p >= start)
            .map(|p| id.col(p - start))
            .collect()
    }
}

/// Max absolute value of the entries, as f64. Handy in reports.
pub fn max_abs(m: &RatMat) -> f64 {
    m.data.iter().map(|x| rational_to_f64(&x.abs())).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "5", "-3", "3/4", "-7/2"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), ratq(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = RatMat::zeros(3, 3).kernel_basis();
        assert_eq!(k.len(), 3);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert!(RatMat::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_rank_one_2x2() {
        // [[1,1],[1,1]] has kernel span{(1,-1)}
        let m = RatMat::from_rows(&[vec![rat(1), rat(1)], vec![rat(1), rat(1)]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0], -v[1].clone());
        assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn solve_and_inverse() {
        let m = RatMat::from_rows(&[vec![rat(2), rat(1)], vec![rat(1), rat(1)]]);
        let x = m.solve(&[rat(3), rat(2)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
        let sing = RatMat::from_rows(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]);
        assert!(sing.inverse().is_err());
        assert!(sing.solve(&[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn subspace_membership_and_complement() {
        let s = Subspace::from_span(3, &[vec![rat(1), rat(0), rat(1)], vec![rat(2), rat(0), rat(2)]]);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[ratq(1, 2), rat(0), ratq(1, 2)]));
        assert!(!s.contains(&[rat(1), rat(0), rat(0)]));
        let c = s.complement();
        assert_eq!(c.len(), 2);
        let mut all = s.basis().to_vec();
        all.extend(c);
        assert_eq!(RatMat::from_cols(&all).rank(), 3);
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_to_rational(0.5000000001, 16, 1e-6).unwrap(), ratq(1, 2));
        assert_eq!(snap_to_rational(-1.0, 16, 1e-6).unwrap(), rat(-1));
        assert!(snap_to_rational(0.123456, 16, 1e-6).is_none());
    }
}

//! Small exact integer matrices.
//!
//! All matrices in this crate are tiny (the rank of `H₁` of a surface
//! complement), so a dense row-major representation with `i64` entries is
//! sufficient. Determinants are computed with the fraction-free Bareiss
//! algorithm in `i128`, which is exact for every size used here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense square-or-rectangular integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    /// Builds a matrix from its rows, checking that they have equal length.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let width = first.len();
            if rows.iter().any(|r| r.len() != width) {
                return Err(Error::Dimension("matrix rows have unequal lengths".into()));
            }
        }
        Ok(IntMatrix { rows })
    }

    /// The `n × n` zero matrix.
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            rows: vec![vec![0; n]; n],
        }
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns (zero for the empty matrix).
    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Returns `true` if the matrix is square.
    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols() || self.nrows() == 0
    }

    /// Entry at row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    /// Sets the entry at row `i`, column `j`.
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.rows[i][j] = value;
    }

    /// Borrow the rows.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The transpose.
    pub fn transpose(&self) -> Self {
        let (r, c) = (self.nrows(), self.ncols());
        let mut rows = vec![vec![0; r]; c];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                rows[j][i] = v;
            }
        }
        IntMatrix { rows }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.ncols() != other.nrows() && !(self.nrows() == 0 && other.nrows() == 0) {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let mut rows = vec![vec![0; other.ncols()]; self.nrows()];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = (0..self.ncols()).map(|k| self.rows[i][k] * other.rows[k][j]).sum();
            }
        }
        Ok(IntMatrix { rows })
    }

    /// Entrywise difference `self − other`.
    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Entrywise sum `self + other`.
    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(i64, i64) -> i64) -> Result<IntMatrix> {
        if self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return Err(Error::Dimension("matrix shapes differ".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
            .collect();
        Ok(IntMatrix { rows })
    }

    /// `Wᵀ · self · W`, the congruence transform used throughout.
    pub fn congruent_by(&self, w: &IntMatrix) -> Result<IntMatrix> {
        w.transpose().mul(self)?.mul(w)
    }

    /// Returns `true` if the matrix is antisymmetric with zero diagonal.
    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows()).all(|i| {
                self.rows[i][i] == 0 && (0..i).all(|j| self.rows[i][j] == -self.rows[j][i])
            })
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let (n, m) = (self.nrows(), other.nrows());
        let mut out = IntMatrix::zeros(n + m);
        for i in 0..n {
            for j in 0..n {
                out.rows[i][j] = self.rows[i][j];
            }
        }
        for i in 0..m {
            for j in 0..m {
                out.rows[n + i][n + j] = other.rows[i][j];
            }
        }
        out
    }

    /// Bilinear pairing `uᵀ · self · v`.
    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut total = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                total += ui * self.rows[i][j] * vj;
            }
        }
        total
    }

    /// Exact determinant via fraction-free Gaussian elimination.
    ///
    /// The determinant of the empty matrix is 1.
    pub fn det(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.nrows();
        let mut a: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        Ok(if n == 0 { 1 } else { sign * a[n - 1][n - 1] })
    }
}

impl fmt::Display for IntMatrix {
    /// Formats as nested brackets, e.g. `[[2,0],[1,-2]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Leibniz-formula determinant, used as an independent oracle.
    fn leibniz(a: &IntMatrix) -> i128 {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = a.nrows();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let sign = if inversions % 2 == 0 { 1 } else { -1 };
                sign * (0..n).map(|i| a.get(i, p[i]) as i128).product::<i128>()
            })
            .sum()
    }

    #[test]
    fn det_matches_leibniz_on_samples() {
        let samples = [
            m(&[&[2, 0], &[1, -2]]),
            m(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]),
            m(&[&[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 2, 0, 3], &[0, 1, 5, 1]]),
            m(&[&[1, 2], &[2, 4]]),
        ];
        for a in &samples {
            assert_eq!(a.det().unwrap(), leibniz(a), "{a}");
        }
    }

    #[test]
    fn empty_determinant_is_one() {
        assert_eq!(IntMatrix::zeros(0).det().unwrap(), 1);
    }

    #[test]
    fn congruence_transform_of_known_witness() {
        let v1 = m(&[&[2, 0], &[1, -2]]);
        let w = m(&[&[4, -5], &[-3, 4]]);
        assert_eq!(v1.congruent_by(&w).unwrap(), m(&[&[2, -1], &[0, -2]]));
        assert_eq!(w.det().unwrap(), 1);
    }

    #[test]
    fn display_is_compact() {
        assert_eq!(m(&[&[2, 0], &[1, -2]]).to_string(), "[[2,0],[1,-2]]");
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let a = m(&[&[1]]);
        let b = m(&[&[2, 3], &[4, 5]]);
        assert_eq!(a.direct_sum(&b), m(&[&[1, 0, 0], &[0, 2, 3], &[0, 4, 5]]));
    }
}

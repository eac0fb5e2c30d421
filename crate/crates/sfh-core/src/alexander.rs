//! The Alexander polynomial of a Seifert matrix and the top knot Floer rank.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Coefficients `a_{−g}, …, a_g` of the symmetrized Alexander polynomial
/// `Δ(T) = a₀ + Σ a_i (Tⁱ + T⁻ⁱ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentCoefficients {
    /// `coeffs[k]` is the coefficient of `T^{k − g}`.
    pub coeffs: Vec<i64>,
}

impl LaurentCoefficients {
    /// Half-width `g` of the coefficient window.
    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    /// The top coefficient `a_g`.
    pub fn top(&self) -> i64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    /// Whether `a_i = a_{−i}` for every `i`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for LaurentCoefficients {
    /// Formats as `(−4, 9, −4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Dense polynomial in `t` with `i128` coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Poly(Vec<i128>);

impl Poly {
    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    fn mul(&self, o: &Poly) -> Poly {
        if self.0.is_empty() || o.0.is_empty() {
            return Poly(Vec::new());
        }
        let mut out = vec![0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trim()
    }

    fn sub(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).copied().unwrap_or(0);
        Poly((0..n).map(|i| get(self, i) - get(o, i)).collect()).trim()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    /// Exact division; the Bareiss recurrence guarantees divisibility.
    fn div_exact(&self, d: &Poly) -> Poly {
        let d = d.clone().trim();
        let mut rem = self.clone().trim();
        if rem.0.is_empty() {
            return rem;
        }
        let dl = d.0.len();
        let lead = d.0[dl - 1];
        let mut q = vec![0; rem.0.len() + 1 - dl.min(rem.0.len())];
        while !rem.0.is_empty() && rem.0.len() >= dl {
            let shift = rem.0.len() - dl;
            let c = rem.0[rem.0.len() - 1] / lead;
            debug_assert_eq!(c * lead, rem.0[rem.0.len() - 1], "inexact polynomial division");
            q[shift] = c;
            for (k, dc) in d.0.iter().enumerate() {
                rem.0[shift + k] -= c * dc;
            }
            rem = rem.trim();
        }
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        Poly(q).trim()
    }
}

/// Determinant of a square matrix over `ℤ[t]` by fraction-free elimination.
fn poly_det(mut a: Vec<Vec<Poly>>) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly(vec![1]);
    }
    let mut negate = false;
    let mut prev = Poly(vec![1]);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Poly(Vec::new()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// The symmetrized Alexander polynomial `det(t^{1/2} V − t^{−1/2} Vᵀ)`,
/// computed exactly over `ℤ`.
///
/// Since `t^{1/2} V − t^{−1/2} Vᵀ = t^{−1/2} (tV − Vᵀ)`, the coefficients of
/// `det(tV − Vᵀ)` in degrees `0..=2g` are exactly `a_{−g}, …, a_g`. The
/// empty matrix gives `(1)`, the unknot.
pub fn alexander_polynomial(v: &IntMatrix) -> Result<LaurentCoefficients> {
    if !v.is_square() || !v.nrows().is_multiple_of(2) {
        return Err(Error::Dimension(format!(
            "Seifert matrix must be square of even size, got {}x{}",
            v.nrows(),
            v.ncols()
        )));
    }
    let n = v.nrows();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Poly(vec![-(v.get(j, i) as i128), v.get(i, j) as i128]).trim())
                .collect()
        })
        .collect();
    let det = poly_det(m);
    let coeffs = (0..=n)
        .map(|k| {
            let c = det.0.get(k).copied().unwrap_or(0);
            i64::try_from(c).map_err(|_| Error::Domain("Alexander coefficient overflows i64".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentCoefficients { coeffs })
}

/// The assertion that supplies the total rank of `SFH(S³(R))`, which equals
/// the rank of knot Floer homology in the top Alexander grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", content = "rank", rename_all = "snake_case")]
pub enum TopRankMode {
    /// The boundary knot is alternating: the rank is `|a_g|`.
    Alternating,
    /// The boundary knot is fibered: the rank is 1.
    Fibered,
    /// The rank is known from elsewhere.
    Explicit(u64),
}

/// Total rank of `SFH(S³(R))` under the asserted mode.
///
/// The mode is a user assertion about the boundary knot; it is not
/// verified. Alternating mode is rejected when `a_g = 0`, since a nonzero
/// top coefficient is necessary for an alternating knot's top group.
pub fn top_rank(coeffs: &LaurentCoefficients, mode: TopRankMode) -> Result<u64> {
    match mode {
        TopRankMode::Alternating => {
            let top = coeffs.top();
            if top == 0 {
                return Err(Error::Domain(
                    "alternating mode requires a nonzero top Alexander coefficient".into(),
                ));
            }
            Ok(top.unsigned_abs())
        }
        TopRankMode::Fibered => Ok(1),
        TopRankMode::Explicit(r) => Ok(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn genus_one_surface_of_8_3() {
        let a = alexander_polynomial(&m(&[&[2, 0], &[1, -2]])).unwrap();
        assert_eq!(a.coeffs, vec![-4, 9, -4]);
        assert_eq!(top_rank(&a, TopRankMode::Alternating).unwrap(), 4);
    }

    #[test]
    fn unknot_from_empty_matrix() {
        let a = alexander_polynomial(&IntMatrix::zeros(0)).unwrap();
        assert_eq!(a.coeffs, vec![1]);
    }

    #[test]
    fn trefoil() {
        let a = alexander_polynomial(&m(&[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(a.coeffs, vec![1, -1, 1]);
        assert_eq!(top_rank(&a, TopRankMode::Alternating).unwrap(), 1);
    }

    #[test]
    fn alternating_mode_rejects_zero_top() {
        let a = LaurentCoefficients { coeffs: vec![0, 1, 0] };
        assert!(top_rank(&a, TopRankMode::Alternating).is_err());
        assert_eq!(top_rank(&a, TopRankMode::Fibered).unwrap(), 1);
        assert_eq!(top_rank(&a, TopRankMode::Explicit(7)).unwrap(), 7);
    }

    #[test]
    fn odd_size_is_rejected() {
        assert!(alexander_polynomial(&m(&[&[1]])).is_err());
    }

    #[test]
    fn poly_det_handles_pivoting() {
        // [[0, 1], [1, 0]] has determinant -1.
        let a = alexander_polynomial(&m(&[&[0, 1], &[0, 0]])).unwrap();
        // tV - Vᵀ = [[0, t], [-1, 0]] -> det = t.
        assert_eq!(a.coeffs, vec![0, 1, 0]);
    }
}

//! The primary and secondary ellipsoids as integer quadratic forms, the
//! h-vector `1̃ − A·x` and the involutions `T_i`.

use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::linalg::mat_vec;

/// An integer quadratic polynomial
/// `Σ diag_i·x_i² + Σ_{i<j} cross_ij·x_i·x_j + Σ linear_i·x_i + constant`.
///
/// `cross` is stored as a full symmetric matrix with a zero diagonal; only the
/// entries above the diagonal enter the evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadForm {
    pub n: usize,
    pub diag: Vec<i64>,
    pub cross: Vec<Vec<i64>>,
    pub linear: Vec<i64>,
    pub constant: i64,
}

impl QuadForm {
    pub fn value(&self, x: &[i64]) -> i64 {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        let mut v = self.constant;
        for i in 0..self.n {
            v += self.diag[i] * x[i] * x[i] + self.linear[i] * x[i];
            for j in i + 1..self.n {
                v += self.cross[i][j] * x[i] * x[j];
            }
        }
        v
    }

    pub fn vanishes_at(&self, x: &[i64]) -> bool {
        self.value(x) == 0
    }

    /// Human-readable equation `... = 0` in variables `var1..varn`.
    pub fn equation_text(&self, var: &str) -> String {
        let mut terms: Vec<(i64, String)> = Vec::new();
        for i in 0..self.n {
            terms.push((self.diag[i], format!("{var}{}^2", i + 1)));
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                terms.push((self.cross[i][j], format!("{var}{}*{var}{}", i + 1, j + 1)));
            }
        }
        for i in 0..self.n {
            terms.push((self.linear[i], format!("{var}{}", i + 1)));
        }
        terms.push((self.constant, String::new()));
        let mut out = String::new();
        for (c, mon) in terms.into_iter().filter(|(c, _)| *c != 0) {
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            match (mag, mon.is_empty()) {
                (_, true) => out.push_str(&mag.to_string()),
                (1, false) => out.push_str(&mon),
                _ => out.push_str(&format!("{mag}*{mon}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(" = 0");
        out
    }
}

/// `Σ k_i(x_i² − x_i) − Σ_{i<j} l_ij·x_i·x_j`.
///
/// This is exactly half of `⟨x, x − 2δ⟩`.
pub fn primary_form(cd: &CartanData) -> QuadForm {
    let n = cd.n;
    let cross = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { -cd.links[i][j] }).collect())
        .collect();
    QuadForm {
        n,
        diag: cd.weights.clone(),
        cross,
        linear: cd.weights.iter().map(|k| -k).collect(),
        constant: 0,
    }
}

/// `det(A)·(Σ k_i b_ii (h_i² − 1) + 2·Σ_{i<j} k_i b_ij (h_i h_j − 1))`, with
/// `b = A⁻¹`. Every coefficient is an integer because `det(A)·A⁻¹` is.
pub fn secondary_form(cd: &CartanData) -> QuadForm {
    let n = cd.n;
    // det·k_i·b_ij, symmetric in i, j
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| cd.weights[i] * cd.adjugate[i][j]).collect())
        .collect();
    let diag: Vec<i64> = (0..n).map(|i| m[i][i]).collect();
    let cross: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { 2 * m[i][j] }).collect())
        .collect();
    let constant = -(diag.iter().sum::<i64>()
        + (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| cross[i][j])
            .sum::<i64>());
    QuadForm {
        n,
        diag,
        cross,
        linear: vec![0; n],
        constant,
    }
}

/// `1̃ − A·x`.
pub fn h_vector(x: &[i64], cd: &CartanData) -> Vec<i64> {
    mat_vec(&cd.cartan, x).into_iter().map(|v| 1 - v).collect()
}

/// The involution `T_i` (1-based `i`): shift coordinate `i` by `h^x_i`.
pub fn apply_t(i: usize, x: &[i64], cd: &CartanData) -> Result<Vec<i64>> {
    let i = cd.check_index(i)?;
    if x.len() != cd.n || !primary_form(cd).vanishes_at(x) {
        return Err(Error::NotOnEllipsoid(x.to_vec()));
    }
    Ok(apply_t0(i, x, cd))
}

/// `T_i` with a 0-based index and no membership check.
pub(crate) fn apply_t0(i: usize, x: &[i64], cd: &CartanData) -> Vec<i64> {
    let ax: i64 = cd.cartan[i].iter().zip(x).map(|(a, b)| a * b).sum();
    let mut y = x.to_vec();
    y[i] += 1 - ax;
    y
}

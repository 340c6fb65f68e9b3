//! Small dense exact linear algebra over `i64` and rationals.
//!
//! Matrices here are at most a few dozen rows, so they are stored as nested
//! `Vec`s and all algorithms are the textbook cubic ones.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exact rational number used throughout the crate.
pub type Rational = Ratio<i128>;

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<Rational>>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0; m]; n];
    for (i, row) in a.iter().enumerate() {
        for (k, &aik) in row.iter().enumerate() {
            if aik == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &IntMatrix, x: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn to_rational(a: &IntMatrix) -> RatMatrix {
    a.iter()
        .map(|row| row.iter().map(|&v| rat(v)).collect())
        .collect()
}

pub fn rat_mat_vec(a: &RatMatrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (p, q)| acc + p * q)
        })
        .collect()
}

pub fn rat_mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Rational::zero(), |acc, (p, brow)| acc + p * brow[j])
                })
                .collect()
        })
        .collect()
}

/// Inverse and determinant by Gauss-Jordan elimination. `None` if singular.
pub fn inverse_and_det(a: &RatMatrix) -> Option<(RatMatrix, Rational)> {
    let n = a.len();
    let mut work: RatMatrix = a.to_vec();
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero())?;
        if pivot != col {
            work.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = work[col][col];
        det *= p;
        for j in 0..n {
            work[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let f = work[r][col];
            for j in 0..n {
                let w = work[col][j];
                let v = inv[col][j];
                work[r][j] -= f * w;
                inv[r][j] -= f * v;
            }
        }
    }
    Some((inv, det))
}

/// `M = L·D·Lᵀ` for a symmetric positive-definite `M`, with `L` unit lower
/// triangular. Returns `(L, diag(D))`, or `None` if a pivot is not positive.
pub fn ldl(m: &RatMatrix) -> Option<(RatMatrix, Vec<Rational>)> {
    let n = m.len();
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut d = vec![Rational::zero(); n];
    for j in 0..n {
        let mut dj = m[j][j];
        for k in 0..j {
            dj -= l[j][k] * l[j][k] * d[k];
        }
        if !dj.is_positive() {
            return None;
        }
        d[j] = dj;
        l[j][j] = Rational::one();
        for i in j + 1..n {
            let mut s = m[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k] * d[k];
            }
            l[i][j] = s / dj;
        }
    }
    Some((l, d))
}

/// Largest integer `s` with `s*s <= q` for rational `q >= 0`.
pub fn floor_sqrt(q: &Rational) -> i128 {
    if !q.is_positive() {
        return 0;
    }
    let f = q.floor().to_integer();
    let mut s = (f as f64).sqrt() as i128;
    while s * s > f {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= f {
        s += 1;
    }
    s
}

/// All integers `t` with `(t + c)^2 <= q`, as an inclusive range (possibly empty).
pub fn interval_around(c: &Rational, q: &Rational) -> (i128, i128) {
    if q.is_negative() {
        return (1, 0);
    }
    let s = floor_sqrt(q);
    let centre = -*c;
    let inside = |t: i128| {
        let v = Rational::from_integer(t) + c;
        v * v <= *q
    };
    let mut lo = centre.floor().to_integer() - s - 1;
    while !inside(lo) && lo <= centre.ceil().to_integer() + s + 1 {
        lo += 1;
    }
    let mut hi = centre.ceil().to_integer() + s + 1;
    while !inside(hi) && hi >= lo {
        hi -= 1;
    }
    (lo, hi)
}

pub fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

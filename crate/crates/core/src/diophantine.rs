//! Integral points on the two ellipsoids: nonnegative secondary solutions,
//! orbit seeds with their minimal vectors, and orbit expansion under the `T_i`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::Signed;
use rayon::prelude::*;

use crate::cartan::CartanData;
use crate::ellipsoid::{apply_t0, h_vector, primary_form, secondary_form};
use crate::error::{Error, Result};
use crate::linalg::{interval_around, ldl, mat_vec, rat, RatMatrix, Rational};

/// Default bound on the number of elements produced by [`expand_orbit`].
pub const DEFAULT_EXPAND_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    /// Nonnegative solution of the secondary equation indexing the orbit.
    pub h: Vec<i64>,
    /// `A⁻¹(1̃ − h)`, the componentwise minimum of the orbit.
    pub minimal: Vec<i64>,
    pub size: BigUint,
    pub elements: Option<Vec<Vec<i64>>>,
}

/// Exact positive-definite form `hᵀ·N·h` with `N = det(A)·K·A⁻¹`, together
/// with its `L·D·Lᵀ` factorization.
struct SecondaryLattice {
    n: usize,
    l: RatMatrix,
    d: Vec<Rational>,
    target: Rational,
}

impl SecondaryLattice {
    fn new(cd: &CartanData) -> Self {
        let n = cd.n;
        let gram: RatMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| rat(cd.weights[i] * cd.adjugate[i][j]))
                    .collect()
            })
            .collect();
        let (l, d) = ldl(&gram).expect("secondary form is positive definite");
        SecondaryLattice {
            n,
            l,
            d,
            target: rat(cd.det) * cd.delta_norm(),
        }
    }

    /// Depth-first search from the last coordinate down, with exact
    /// per-level intervals intersected with `h_j >= 0`.
    fn search(&self, level: usize, h: &mut Vec<i64>, remaining: Rational, out: &mut Vec<Vec<i64>>) {
        let centre = (level + 1..self.n).fold(Rational::from_integer(0), |acc, i| {
            acc + self.l[i][level] * rat(h[i])
        });
        let (lo, hi) = interval_around(&centre, &(remaining / self.d[level]));
        for t in lo.max(0)..=hi {
            let v = Rational::from_integer(t) + centre;
            let rest = remaining - self.d[level] * v * v;
            if rest.is_negative() {
                continue;
            }
            h[level] = t as i64;
            if level == 0 {
                if rest == Rational::from_integer(0) {
                    out.push(h.clone());
                }
            } else {
                self.search(level - 1, h, rest, out);
            }
        }
        h[level] = 0;
    }

    fn top_level_values(&self) -> Vec<i64> {
        let top = self.n - 1;
        let (lo, hi) = interval_around(&Rational::from_integer(0), &(self.target / self.d[top]));
        (lo.max(0)..=hi).map(|t| t as i64).collect()
    }

    fn solutions_with_top(&self, top_value: i64) -> Vec<Vec<i64>> {
        let top = self.n - 1;
        let mut h = vec![0; self.n];
        h[top] = top_value;
        let v = rat(top_value);
        let rest = self.target - self.d[top] * v * v;
        let mut out = Vec::new();
        if rest.is_negative() {
            return out;
        }
        if top == 0 {
            if rest == Rational::from_integer(0) {
                out.push(h);
            }
        } else {
            self.search(top - 1, &mut h, rest, &mut out);
        }
        out
    }
}

/// All `h >= 0` with secondary form value zero, sorted lexicographically.
pub fn enumerate_secondary_nonneg(cd: &CartanData) -> Vec<Vec<i64>> {
    enumerate_secondary_nonneg_with(cd, 1)
}

/// As [`enumerate_secondary_nonneg`], splitting the search over `threads`
/// workers by the value of the last coordinate.
pub fn enumerate_secondary_nonneg_with(cd: &CartanData, threads: usize) -> Vec<Vec<i64>> {
    if cd.n == 0 {
        return vec![Vec::new()];
    }
    let lattice = SecondaryLattice::new(cd);
    let tops = lattice.top_level_values();
    let mut out: Vec<Vec<i64>> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            tops.par_iter()
                .flat_map_iter(|&t| lattice.solutions_with_top(t))
                .collect()
        })
    } else {
        tops.iter()
            .flat_map(|&t| lattice.solutions_with_top(t))
            .collect()
    };
    let form = secondary_form(cd);
    debug_assert!(out.iter().all(|h| form.vanishes_at(h)));
    out.retain(|h| form.vanishes_at(h));
    out.sort();
    out.dedup();
    out
}

/// `A⁻¹(1̃ − h)` when it is integral.
pub fn minimal_vector(h: &[i64], cd: &CartanData) -> Option<Vec<i64>> {
    let rhs: Vec<i64> = h.iter().map(|v| 1 - v).collect();
    let scaled = mat_vec(&cd.adjugate, &rhs);
    if scaled.iter().all(|v| v % cd.det == 0) {
        Some(scaled.into_iter().map(|v| v / cd.det).collect())
    } else {
        None
    }
}

pub fn orbit_seeds(cd: &CartanData) -> Vec<OrbitRecord> {
    orbit_seeds_with(cd, 1)
}

pub fn orbit_seeds_with(cd: &CartanData, threads: usize) -> Vec<OrbitRecord> {
    let mut seeds: Vec<OrbitRecord> = enumerate_secondary_nonneg_with(cd, threads)
        .into_iter()
        .filter_map(|h| {
            let minimal = minimal_vector(&h, cd)?;
            let size = orbit_size(&h, cd).expect("enumerated h is a solution");
            Some(OrbitRecord {
                h,
                minimal,
                size,
                elements: None,
            })
        })
        .collect();
    seeds.sort_by(|a, b| a.minimal.cmp(&b.minimal));
    seeds
}

/// `|W| / |W_h|`, where `W_h` is generated by the reflections at the zero
/// components of `h`.
pub fn orbit_size(h: &[i64], cd: &CartanData) -> Result<BigUint> {
    if h.len() != cd.n || h.iter().any(|&v| v < 0) || !secondary_form(cd).vanishes_at(h) {
        return Err(Error::NotASolution(h.to_vec()));
    }
    let zeros: Vec<usize> = (0..cd.n).filter(|&i| h[i] == 0).map(|i| i + 1).collect();
    let stabilizer = cd.parabolic_order(&zeros)?;
    let whole = cd.weyl_order();
    debug_assert_eq!(&whole % &stabilizer, BigUint::from(0u32));
    Ok(whole / stabilizer)
}

fn check_on_primary(a: &[i64], cd: &CartanData) -> Result<()> {
    if a.len() != cd.n || !primary_form(cd).vanishes_at(a) {
        return Err(Error::NotOnEllipsoid(a.to_vec()));
    }
    Ok(())
}

/// Closure of `{a}` under every `T_i`, sorted lexicographically.
pub fn expand_orbit(a: &[i64], cd: &CartanData, cap: u64) -> Result<Vec<Vec<i64>>> {
    check_on_primary(a, cd)?;
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(a.to_vec());
    queue.push_back(a.to_vec());
    while let Some(x) = queue.pop_front() {
        for i in 0..cd.n {
            let y = apply_t0(i, &x, cd);
            if !seen.contains(&y) {
                if seen.len() as u64 >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Upward sweep: from `a`, repeatedly move along coordinates whose h-component
/// is positive until no positive component remains. Started at the minimal
/// vector of an orbit this reaches the whole orbit.
pub fn sweep_orbit(a: &[i64], cd: &CartanData, cap: u64) -> Result<Vec<Vec<i64>>> {
    check_on_primary(a, cd)?;
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack = vec![a.to_vec()];
    seen.insert(a.to_vec());
    while let Some(x) = stack.pop() {
        let h = h_vector(&x, cd);
        for (i, &hi) in h.iter().enumerate() {
            if hi <= 0 {
                continue;
            }
            let mut y = x.clone();
            y[i] += hi;
            if !seen.contains(&y) {
                if seen.len() as u64 >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(y.clone());
                stack.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Seeds of `cd` with element lists filled in.
pub fn expanded_orbits(cd: &CartanData, cap: u64) -> Result<Vec<OrbitRecord>> {
    orbit_seeds(cd)
        .into_iter()
        .map(|mut rec| {
            rec.elements = Some(expand_orbit(&rec.minimal, cd, cap)?);
            Ok(rec)
        })
        .collect()
}

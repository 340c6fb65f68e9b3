//! Catalog of finite-type Cartan matrices, the invariant form they define,
//! positive roots, grades and Weyl group orders.
//!
//! Vertices follow the Bourbaki numbering of each family. Short roots have
//! squared length 2, so the vertex weight `k_i` is half the squared length of
//! the `i`-th simple root and the Gram matrix of the form is `k_i * A_ij`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inverse_and_det, mat_vec, rat, to_rational, IntMatrix, RatMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A semisimple type as an ordered product of irreducible components, e.g. `B2xG2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieTypeSpec {
    pub components: Vec<(Family, usize)>,
}

impl LieTypeSpec {
    pub fn rank(&self) -> usize {
        self.components.iter().map(|&(_, r)| r).sum()
    }

    /// Every irreducible type of total rank at most `max_rank`.
    pub fn irreducible_up_to(max_rank: usize) -> Vec<LieTypeSpec> {
        let families = [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ];
        let mut out = Vec::new();
        for fam in families {
            for rank in 1..=max_rank {
                if fam.admits_rank(rank) {
                    out.push(LieTypeSpec {
                        components: vec![(fam, rank)],
                    });
                }
            }
        }
        out
    }
}

impl FromStr for LieTypeSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut components = Vec::new();
        for token in text.trim().split('x') {
            let mut chars = token.chars();
            let family = chars
                .next()
                .and_then(Family::from_char)
                .ok_or_else(|| Error::UnknownFamily(token.to_string()))?;
            let digits = chars.as_str();
            let rank: usize = if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                digits
                    .parse()
                    .map_err(|_| Error::RankOutOfRange(token.to_string()))?
            } else {
                return Err(Error::RankOutOfRange(token.to_string()));
            };
            if !family.admits_rank(rank) {
                return Err(Error::RankOutOfRange(token.to_string()));
            }
            components.push((family, rank));
        }
        Ok(LieTypeSpec { components })
    }
}

impl fmt::Display for LieTypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (fam, rank)) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{fam}{rank}")?;
        }
        Ok(())
    }
}

pub fn parse_type(text: &str) -> Result<LieTypeSpec> {
    text.parse()
}

/// Full exact root-system context for one Lie type.
#[derive(Debug, Clone)]
pub struct CartanData {
    pub spec: LieTypeSpec,
    pub n: usize,
    pub cartan: IntMatrix,
    /// Vertex weights, half the squared length of each simple root.
    pub weights: Vec<i64>,
    /// `l_ij = max(k_i, k_j)` on linked vertices, zero elsewhere (and on the diagonal).
    pub links: IntMatrix,
    pub inverse: RatMatrix,
    pub det: i64,
    /// `det * A^-1`, an integer matrix.
    pub adjugate: IntMatrix,
    pub delta: Vec<Rational>,
    /// `2 * delta`, the sum of the positive roots.
    pub two_delta: Vec<i64>,
    pub gram: IntMatrix,
}

/// Weights and links of one irreducible component, 0-based.
fn irreducible_diagram(family: Family, rank: usize) -> (Vec<i64>, Vec<(usize, usize)>) {
    let chain = |len: usize| (1..len).map(|i| (i - 1, i)).collect::<Vec<_>>();
    match family {
        Family::A => (vec![1; rank], chain(rank)),
        Family::B => {
            let mut k = vec![2; rank];
            k[rank - 1] = 1;
            (k, chain(rank))
        }
        Family::C => {
            let mut k = vec![1; rank];
            k[rank - 1] = 2;
            (k, chain(rank))
        }
        Family::D => {
            let mut edges = chain(rank - 1);
            edges.push((rank - 3, rank - 1));
            (vec![1; rank], edges)
        }
        Family::E => {
            // 1-3-4-5-...-n with 2 attached to 4
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..rank - 1).map(|i| (i, i + 1)));
            (vec![1; rank], edges)
        }
        Family::F => (vec![2, 2, 1, 1], chain(4)),
        Family::G => (vec![1, 3], chain(2)),
    }
}

pub fn build_cartan(spec: &LieTypeSpec) -> CartanData {
    let n = spec.rank();
    let mut weights = Vec::with_capacity(n);
    let mut links = vec![vec![0i64; n]; n];
    let mut offset = 0;
    for &(fam, rank) in &spec.components {
        let (k, edges) = irreducible_diagram(fam, rank);
        for (a, b) in edges {
            let l = k[a].max(k[b]);
            links[offset + a][offset + b] = l;
            links[offset + b][offset + a] = l;
        }
        weights.extend(k);
        offset += rank;
    }
    let gram: IntMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2 * weights[i] } else { -links[i][j] })
                .collect()
        })
        .collect();
    let cartan: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| gram[i][j] / weights[i]).collect())
        .collect();
    let (inverse, det) = inverse_and_det(&to_rational(&cartan)).expect("catalog Cartan matrices are nonsingular");
    let det = i64::try_from(det.to_integer()).expect("small determinant");
    let adjugate: IntMatrix = inverse
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let s = v * rat(det);
                    debug_assert!(s.is_integer());
                    s.to_integer() as i64
                })
                .collect()
        })
        .collect();
    let delta: Vec<Rational> = inverse
        .iter()
        .map(|row| row.iter().fold(Rational::zero(), |acc, v| acc + v))
        .collect();
    let two_delta = delta
        .iter()
        .map(|d| {
            let t = d * rat(2);
            assert!(t.is_integer());
            t.to_integer() as i64
        })
        .collect();
    CartanData {
        spec: spec.clone(),
        n,
        cartan,
        weights,
        links,
        inverse,
        det,
        adjugate,
        delta,
        two_delta,
        gram,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub coords: Vec<i64>,
    pub grade: i64,
    pub length_sq: i64,
}

impl Root {
    pub fn is_simple(&self) -> bool {
        self.coords.iter().sum::<i64>() == 1
    }
}

impl CartanData {
    pub fn ones(&self) -> Vec<i64> {
        vec![1; self.n]
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                got: len,
            })
        }
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<usize> {
        if (1..=self.n).contains(&i) {
            Ok(i - 1)
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.n,
            })
        }
    }

    /// `xᵀ·gram·y` over the rationals.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let mut acc = Rational::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.gram[i][j] != 0 {
                    acc += x[i] * y[j] * rat(self.gram[i][j]);
                }
            }
        }
        Ok(acc)
    }

    /// Integer specialization of [`CartanData::bilinear`].
    pub fn bilinear_int(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        let gy = mat_vec(&self.gram, y);
        Ok(x.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    /// `⟨δ, δ⟩`.
    pub fn delta_norm(&self) -> Rational {
        // gram·δ = k, so ⟨δ,δ⟩ = δ·k
        self.delta
            .iter()
            .zip(&self.weights)
            .fold(Rational::zero(), |acc, (d, &k)| acc + d * rat(k))
    }

    /// Apply the simple reflection `s_i` (0-based) to a vector in simple-root coordinates.
    pub(crate) fn reflect0(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let pairing: i64 = self.cartan[i].iter().zip(x).map(|(a, b)| a * b).sum();
        let mut y = x.to_vec();
        y[i] -= pairing;
        y
    }

    /// All positive roots, sorted lexicographically.
    pub fn positive_roots(&self) -> Vec<Root> {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..self.n {
            let mut e = vec![0; self.n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..self.n {
                let s = self.reflect0(i, &r);
                if s.iter().all(|&c| c >= 0) && seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        seen.into_iter()
            .map(|coords| {
                let length_sq = self.bilinear_int(&coords, &coords).unwrap();
                let grade = self.grade_unchecked(&coords, length_sq);
                Root {
                    coords,
                    grade,
                    length_sq,
                }
            })
            .collect()
    }

    fn grade_unchecked(&self, coords: &[i64], length_sq: i64) -> i64 {
        // 2⟨α,δ⟩ = 2·α·k
        let num: i64 = 2 * coords.iter().zip(&self.weights).map(|(a, k)| a * k).sum::<i64>();
        assert_eq!(num % length_sq, 0, "grade of a root is an integer");
        num / length_sq
    }

    /// The grade `2⟨α,δ⟩/⟨α,α⟩` of a (positive or negative) root.
    pub fn grade(&self, coords: &[i64]) -> Result<i64> {
        self.check_dim(coords.len())?;
        let positive: Vec<i64> = if coords.iter().all(|&c| c >= 0) {
            coords.to_vec()
        } else {
            coords.iter().map(|c| -c).collect()
        };
        if !self.positive_roots().iter().any(|r| r.coords == positive) {
            return Err(Error::NotARoot(coords.to_vec()));
        }
        let length_sq = self.bilinear_int(coords, coords)?;
        Ok(self.grade_unchecked(coords, length_sq))
    }

    /// Order of the whole Weyl group.
    pub fn weyl_order(&self) -> BigUint {
        self.parabolic_order(&(1..=self.n).collect::<Vec<_>>())
            .expect("full index set is valid")
    }

    /// Order of the parabolic subgroup generated by the simple reflections at
    /// the given 1-based indices.
    pub fn parabolic_order(&self, generators: &[usize]) -> Result<BigUint> {
        let mut on = vec![false; self.n];
        for &g in generators {
            if g == 0 || g > self.n || on[g - 1] {
                return Err(Error::BadIndexSet(generators.to_vec()));
            }
            on[g - 1] = true;
        }
        let mut order = BigUint::one();
        let mut visited = vec![false; self.n];
        for start in 0..self.n {
            if !on[start] || visited[start] {
                continue;
            }
            let mut comp = vec![start];
            visited[start] = true;
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                for w in 0..self.n {
                    if on[w] && !visited[w] && self.cartan[v][w] != 0 {
                        visited[w] = true;
                        comp.push(w);
                    }
                }
            }
            order *= self.component_order(&comp);
        }
        Ok(order)
    }

    /// Order of `W_J` where `J` is the complement of `excluded` (1-based).
    pub fn weyl_order_excluding(&self, excluded: &[usize]) -> Result<BigUint> {
        if excluded.iter().any(|&e| e == 0 || e > self.n) {
            return Err(Error::BadIndexSet(excluded.to_vec()));
        }
        let gens: Vec<usize> = (1..=self.n).filter(|i| !excluded.contains(i)).collect();
        self.parabolic_order(&gens)
    }

    /// Identify a connected subdiagram and return its catalog Weyl order.
    fn component_order(&self, comp: &[usize]) -> BigUint {
        let m = comp.len();
        let bond = |a: usize, b: usize| self.cartan[a][b] * self.cartan[b][a];
        let neighbours = |v: usize| -> Vec<usize> {
            comp.iter()
                .copied()
                .filter(|&w| w != v && self.cartan[v][w] != 0)
                .collect()
        };
        let mut max_bond = 0;
        for &a in comp {
            for &b in comp {
                if a != b {
                    max_bond = max_bond.max(bond(a, b));
                }
            }
        }
        match max_bond {
            0 => catalog_order(Family::A, 1),
            3 => catalog_order(Family::G, 2),
            2 => {
                // A chain; F4 when the double bond sits in the middle of four vertices.
                if m == 4 {
                    let end = *comp.iter().find(|&&v| neighbours(v).len() == 1).unwrap();
                    let mut path = vec![end];
                    while path.len() < m {
                        let last = *path.last().unwrap();
                        let next = neighbours(last)
                            .into_iter()
                            .find(|v| !path.contains(v))
                            .unwrap();
                        path.push(next);
                    }
                    if bond(path[1], path[2]) == 2 {
                        return catalog_order(Family::F, 4);
                    }
                }
                catalog_order(Family::B, m)
            }
            _ => {
                let Some(&branch) = comp.iter().find(|&&v| neighbours(v).len() == 3) else {
                    return catalog_order(Family::A, m);
                };
                let mut arms: Vec<usize> = neighbours(branch)
                    .into_iter()
                    .map(|first| {
                        let mut len = 1;
                        let (mut prev, mut cur) = (branch, first);
                        loop {
                            let next: Vec<usize> =
                                neighbours(cur).into_iter().filter(|&v| v != prev).collect();
                            match next.first() {
                                Some(&nx) => {
                                    prev = cur;
                                    cur = nx;
                                    len += 1;
                                }
                                None => break len,
                            }
                        }
                    })
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => catalog_order(Family::D, m),
                    [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => catalog_order(Family::E, m),
                    _ => unreachable!("not a finite-type diagram"),
                }
            }
        }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Classical order of the Weyl group of an irreducible type.
pub fn catalog_order(family: Family, rank: usize) -> BigUint {
    match family {
        Family::A => factorial(rank + 1),
        Family::B | Family::C => (BigUint::one() << rank) * factorial(rank),
        Family::D => (BigUint::one() << (rank - 1)) * factorial(rank),
        Family::E => BigUint::from(match rank {
            6 => 51_840u64,
            7 => 2_903_040,
            _ => 696_729_600,
        }),
        Family::F => BigUint::from(1152u32),
        Family::G => BigUint::from(12u32),
    }
}

/// `weyl_order` in the excluded-index form used by the orbit size law.
pub fn weyl_order(cd: &CartanData, excluded: &[usize]) -> Result<BigUint> {
    cd.weyl_order_excluding(excluded)
}

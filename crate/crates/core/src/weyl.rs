//! The Weyl group as integer matrices in the simple-root basis, and its
//! transport onto the main orbits via `P(w) = δ − wδ` and `S(w) = A·wδ`.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::linalg::{identity, mat_mul, mat_vec, IntMatrix};

/// Default bound on the number of elements in a [`GroupTable`].
pub const DEFAULT_GROUP_CAP: u64 = 1_000_000;

/// A group element. Matrices act on coordinate columns; column `j` is the
/// image of the simple root `e_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub mat: IntMatrix,
    /// 1-based simple reflection indices whose left-to-right product is `mat`.
    pub word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            mat: identity(n),
            word: Some(Vec::new()),
        }
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        WeylElement {
            mat: mat_mul(&self.mat, &other.mat),
            word,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat == identity(self.mat.len())
    }
}

/// `s_i` (1-based): `e_j ↦ e_j − A_ij·e_i`.
pub fn simple_reflection(i: usize, cd: &CartanData) -> Result<WeylElement> {
    let i0 = cd.check_index(i)?;
    let mut mat = identity(cd.n);
    for j in 0..cd.n {
        mat[i0][j] -= cd.cartan[i0][j];
    }
    Ok(WeylElement {
        mat,
        word: Some(vec![i]),
    })
}

/// Product `s_{w1}·s_{w2}·…` of 1-based indices.
pub fn word_to_element(word: &[usize], cd: &CartanData) -> Result<WeylElement> {
    let mut acc = WeylElement::identity(cd.n);
    for &i in word {
        acc = acc.mul(&simple_reflection(i, cd)?);
    }
    Ok(acc)
}

/// `δ − wδ`.
pub fn p_map(w: &WeylElement, cd: &CartanData) -> Vec<i64> {
    let image = mat_vec(&w.mat, &cd.two_delta);
    cd.two_delta
        .iter()
        .zip(image)
        .map(|(d, wd)| {
            let diff = d - wd;
            assert_eq!(diff % 2, 0, "δ − wδ is integral");
            diff / 2
        })
        .collect()
}

/// `A·wδ`.
pub fn s_map(w: &WeylElement, cd: &CartanData) -> Vec<i64> {
    let image = mat_vec(&w.mat, &cd.two_delta);
    mat_vec(&cd.cartan, &image)
        .into_iter()
        .map(|v| {
            assert_eq!(v % 2, 0, "A·wδ is integral");
            v / 2
        })
        .collect()
}

/// Number of positive roots sent to negative roots by `w`.
pub fn coxeter_length(w: &WeylElement, cd: &CartanData) -> usize {
    cd.positive_roots()
        .iter()
        .filter(|r| mat_vec(&w.mat, &r.coords).iter().any(|&c| c < 0))
        .count()
}

#[derive(Debug, Clone)]
pub struct TableEntry {
    pub pvector: Vec<i64>,
    pub element: WeylElement,
    /// Coxeter length, the breadth-first depth of the element.
    pub length: usize,
}

/// The whole group keyed by P-vectors.
///
/// Entries are ordered by `(length, pvector)`; `right[u][i]` and `left[u][i]`
/// are the indices of `u·s_i` and `s_i·u` (0-based `i`).
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub cartan: CartanData,
    pub entries: Vec<TableEntry>,
    pub index: HashMap<Vec<i64>, usize>,
    pub right: Vec<Vec<usize>>,
    pub left: Vec<Vec<usize>>,
    pub order: BigUint,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, pvector: &[i64]) -> Result<&TableEntry> {
        self.index
            .get(pvector)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| Error::NotInMainOrbit(pvector.to_vec()))
    }

    pub fn position(&self, pvector: &[i64]) -> Result<usize> {
        self.index
            .get(pvector)
            .copied()
            .ok_or_else(|| Error::NotInMainOrbit(pvector.to_vec()))
    }

    /// Index of the product of the elements at positions `u` and `v`.
    pub fn mul_index(&self, u: usize, v: usize) -> usize {
        let w = self.entries[u].element.mul(&self.entries[v].element);
        self.index[&p_map(&w, &self.cartan)]
    }
}

/// Breadth-first closure of the identity under right multiplication by
/// simple reflections.
pub fn build_group_table(cd: &CartanData, cap: u64) -> Result<GroupTable> {
    let order = cd.weyl_order();
    if order > BigUint::from(cap) {
        return Err(Error::CapExceeded(cap));
    }
    let gens: Vec<WeylElement> = (1..=cd.n)
        .map(|i| simple_reflection(i, cd))
        .collect::<Result<_>>()?;
    let mut entries = vec![TableEntry {
        pvector: vec![0; cd.n],
        element: WeylElement::identity(cd.n),
        length: 0,
    }];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(vec![0; cd.n], 0);
    let mut head = 0;
    while head < entries.len() {
        for g in &gens {
            let next = entries[head].element.mul(g);
            let p = p_map(&next, cd);
            if !index.contains_key(&p) {
                if entries.len() as u64 >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                index.insert(p.clone(), entries.len());
                let length = entries[head].length + 1;
                entries.push(TableEntry {
                    pvector: p,
                    element: next,
                    length,
                });
            }
        }
        head += 1;
    }
    entries.sort_by(|a, b| (a.length, &a.pvector).cmp(&(b.length, &b.pvector)));
    let index: HashMap<Vec<i64>, usize> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.pvector.clone(), i))
        .collect();
    let mut right = Vec::with_capacity(entries.len());
    let mut left = Vec::with_capacity(entries.len());
    for e in &entries {
        right.push(
            gens.iter()
                .map(|g| index[&p_map(&e.element.mul(g), cd)])
                .collect(),
        );
        left.push(
            gens.iter()
                .map(|g| index[&p_map(&g.mul(&e.element), cd)])
                .collect(),
        );
    }
    Ok(GroupTable {
        cartan: cd.clone(),
        entries,
        index,
        right,
        left,
        order,
    })
}

/// The transported product `P(P⁻¹(a)·P⁻¹(b))`.
pub fn star(a: &[i64], b: &[i64], table: &GroupTable) -> Result<Vec<i64>> {
    let u = table.position(a)?;
    let v = table.position(b)?;
    Ok(table.entries[table.mul_index(u, v)].pvector.clone())
}

/// The integer `p` with `(m_α·α) * b = p·α + b`.
pub fn p_alpha_b(alpha: &[i64], b: &[i64], table: &GroupTable) -> Result<i64> {
    let cd = &table.cartan;
    let m = cd.grade(alpha)?;
    let scaled: Vec<i64> = alpha.iter().map(|a| m * a).collect();
    let product = star(&scaled, b, table)?;
    let diff: Vec<i64> = product.iter().zip(b).map(|(p, q)| p - q).collect();
    let not_multiple = || Error::NotAMultiple {
        diff: diff.clone(),
        root: alpha.to_vec(),
    };
    let k = alpha.iter().position(|&a| a != 0).ok_or_else(not_multiple)?;
    if diff[k] % alpha[k] != 0 {
        return Err(not_multiple());
    }
    let p = diff[k] / alpha[k];
    if p == 0 || diff.iter().zip(alpha).any(|(d, a)| *d != p * a) {
        return Err(not_multiple());
    }
    Ok(p)
}

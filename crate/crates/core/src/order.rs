//! Orders on the main orbit: the componentwise (primary) order, the Bruhat
//! order obtained by filtering primary covers, the Bruhat order from subwords,
//! and reduced expressions through first letters.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write;

use fixedbitset::FixedBitSet;

use crate::cartan::{CartanData, Root};
use crate::linalg::mat_mul;
use crate::weyl::{p_map, s_map, simple_reflection, word_to_element, GroupTable, WeylElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosetKind {
    Primary,
    BruhatPrimaryFiltered,
    BruhatSubword,
    BruhatGradedLinks,
}

impl PosetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PosetKind::Primary => "primary",
            PosetKind::BruhatPrimaryFiltered => "bruhat_primary_filtered",
            PosetKind::BruhatSubword => "bruhat_subword",
            PosetKind::BruhatGradedLinks => "bruhat_graded_links",
        }
    }
}

/// A finite poset given by its cover relation. Nodes are P-vectors in table
/// order; `covers` holds `(a, b)` with `a` covered by `b`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub nodes: Vec<Vec<i64>>,
    pub lengths: Vec<usize>,
    pub covers: Vec<(usize, usize)>,
    pub kind: PosetKind,
}

/// Strict up-sets of a DAG given by edges, via a reverse topological sweep.
fn reachability(n: usize, edges: &[(usize, usize)]) -> Vec<FixedBitSet> {
    let mut succ = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for &(a, b) in edges {
        succ[a].push(b);
        indegree[b] += 1;
    }
    let mut topo = Vec::with_capacity(n);
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    while let Some(v) = queue.pop_front() {
        topo.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    assert_eq!(topo.len(), n, "cover relation has a cycle");
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for &v in topo.iter().rev() {
        let mut set = FixedBitSet::with_capacity(n);
        for &w in &succ[v] {
            set.insert(w);
            set.union_with(&up[w]);
        }
        up[v] = set;
    }
    up
}

/// Cover pairs of a transitively closed strict relation.
fn hasse(up: &[FixedBitSet]) -> Vec<(usize, usize)> {
    let n = up.len();
    let mut covers = Vec::new();
    for a in 0..n {
        let mut implied = FixedBitSet::with_capacity(n);
        for c in up[a].ones() {
            implied.union_with(&up[c]);
        }
        let mut direct = up[a].clone();
        direct.difference_with(&implied);
        covers.extend(direct.ones().map(|b| (a, b)));
    }
    covers
}

impl Poset {
    fn from_relation(table: &GroupTable, up: &[FixedBitSet], kind: PosetKind) -> Poset {
        Poset {
            nodes: table.entries.iter().map(|e| e.pvector.clone()).collect(),
            lengths: table.entries.iter().map(|e| e.length).collect(),
            covers: hasse(up),
            kind,
        }
    }

    pub fn empty(kind: PosetKind) -> Poset {
        Poset {
            nodes: Vec::new(),
            lengths: Vec::new(),
            covers: Vec::new(),
            kind,
        }
    }

    /// Strict up-set of every node.
    pub fn reachability(&self) -> Vec<FixedBitSet> {
        reachability(self.nodes.len(), &self.covers)
    }

    /// All strictly comparable pairs `(a, b)` with `a < b`.
    pub fn relation_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.reachability()
            .iter()
            .enumerate()
            .flat_map(|(a, up)| up.ones().map(move |b| (a, b)))
            .collect()
    }

    /// Pairs comparable here but not in `other`, as P-vectors.
    pub fn pairs_missing_from(&self, other: &Poset) -> Vec<(Vec<i64>, Vec<i64>)> {
        assert_eq!(self.nodes, other.nodes, "posets on different node sets");
        let theirs = other.relation_pairs();
        self.relation_pairs()
            .difference(&theirs)
            .map(|&(a, b)| (self.nodes[a].clone(), self.nodes[b].clone()))
            .collect()
    }

    /// Cover links of `self` whose ends are incomparable in `other`.
    pub fn links_missing_from(&self, other: &Poset) -> Vec<(Vec<i64>, Vec<i64>)> {
        assert_eq!(self.nodes, other.nodes, "posets on different node sets");
        let theirs = other.relation_pairs();
        self.covers
            .iter()
            .filter(|c| !theirs.contains(c))
            .map(|&(a, b)| (self.nodes[a].clone(), self.nodes[b].clone()))
            .collect()
    }

    pub fn same_order_as(&self, other: &Poset) -> bool {
        self.nodes == other.nodes && self.relation_pairs() == other.relation_pairs()
    }

    pub fn edge_vectors(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        self.covers
            .iter()
            .map(|&(a, b)| (self.nodes[a].clone(), self.nodes[b].clone()))
            .collect()
    }
}

fn componentwise_lt(a: &[i64], b: &[i64]) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Covers of the componentwise order on the P-vectors of the table.
pub fn primary_poset(table: &GroupTable) -> Poset {
    let n = table.len();
    let up: Vec<FixedBitSet> = table
        .entries
        .iter()
        .map(|a| {
            let mut set = FixedBitSet::with_capacity(n);
            for (j, b) in table.entries.iter().enumerate() {
                if componentwise_lt(&a.pvector, &b.pvector) {
                    set.insert(j);
                }
            }
            set
        })
        .collect();
    Poset::from_relation(table, &up, PosetKind::Primary)
}

/// Whether `d = c·α` for a positive root `α` and a rational `c > 0`.
pub fn is_positive_root_multiple(d: &[i64], roots: &[Root]) -> bool {
    roots.iter().any(|r| {
        let alpha = &r.coords;
        let Some(k) = alpha.iter().position(|&a| a != 0) else {
            return false;
        };
        // alpha is nonnegative, so c > 0 iff d_k > 0
        d[k] > 0 && d.iter().zip(alpha).all(|(&di, &ai)| di * alpha[k] == ai * d[k])
    })
}

/// Primary covers whose difference is a positive multiple of a positive root,
/// closed transitively and reduced again.
pub fn bruhat_from_primary(table: &GroupTable, roots: &[Root]) -> Poset {
    let primary = primary_poset(table);
    let kept: Vec<(usize, usize)> = primary
        .covers
        .iter()
        .copied()
        .filter(|&(a, b)| {
            let d: Vec<i64> = primary.nodes[b]
                .iter()
                .zip(&primary.nodes[a])
                .map(|(x, y)| x - y)
                .collect();
            is_positive_root_multiple(&d, roots)
        })
        .collect();
    let up = reachability(table.len(), &kept);
    Poset::from_relation(table, &up, PosetKind::BruhatPrimaryFiltered)
}

/// Variant of [`bruhat_from_primary`] whose links join componentwise
/// comparable elements of consecutive Coxeter length instead of primary
/// covers. The surviving links are exactly the Bruhat covers.
pub fn bruhat_from_graded_links(table: &GroupTable, roots: &[Root]) -> Poset {
    let mut kept = Vec::new();
    for (a, lower) in table.entries.iter().enumerate() {
        for (b, upper) in table.entries.iter().enumerate() {
            if upper.length != lower.length + 1 || !componentwise_lt(&lower.pvector, &upper.pvector) {
                continue;
            }
            let d: Vec<i64> = upper.pvector.iter().zip(&lower.pvector).map(|(x, y)| x - y).collect();
            if is_positive_root_multiple(&d, roots) {
                kept.push((a, b));
            }
        }
    }
    let up = reachability(table.len(), &kept);
    Poset::from_relation(table, &up, PosetKind::BruhatGradedLinks)
}

/// Elements expressible as products of subwords of `word` (1-based letters).
fn subword_products(table: &GroupTable, word: &[usize]) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(table.len());
    set.insert(0);
    for &letter in word {
        let current: Vec<usize> = set.ones().collect();
        for u in current {
            set.insert(table.right[u][letter - 1]);
        }
    }
    set
}

/// Bruhat order by the subword property: `u ≤ w` iff `u` is a product of a
/// subword of a fixed reduced word of `w`.
pub fn bruhat_from_subwords(table: &GroupTable) -> Poset {
    let n = table.len();
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for (w, entry) in table.entries.iter().enumerate() {
        let word = entry.element.word.as_deref().unwrap_or(&[]);
        for u in subword_products(table, word).ones() {
            if u != w {
                up[u].insert(w);
            }
        }
    }
    Poset::from_relation(table, &up, PosetKind::BruhatSubword)
}

/// Indices `i` (1-based) with `S(w)_i < 0`: the admissible first letters of a
/// reduced expression of `w`.
pub fn first_letters(w: &WeylElement, cd: &CartanData) -> BTreeSet<usize> {
    s_map(w, cd)
        .into_iter()
        .enumerate()
        .filter(|&(_, b)| b < 0)
        .map(|(i, _)| i + 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWordSet {
    pub element: Vec<i64>,
    pub length: usize,
    pub words: Vec<Vec<usize>>,
}

struct WordSearch<'a> {
    cd: &'a CartanData,
    reflections: Vec<WeylElement>,
    memo: HashMap<Vec<i64>, Vec<Vec<usize>>>,
}

impl WordSearch<'_> {
    fn words(&mut self, w: &WeylElement) -> Vec<Vec<usize>> {
        let key = p_map(w, self.cd);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let letters = first_letters(w, self.cd);
        let mut out = Vec::new();
        if letters.is_empty() {
            out.push(Vec::new());
        }
        for i in letters {
            let shorter = WeylElement {
                mat: mat_mul(&self.reflections[i - 1].mat, &w.mat),
                word: None,
            };
            for tail in self.words(&shorter) {
                let mut word = Vec::with_capacity(tail.len() + 1);
                word.push(i);
                word.extend(tail);
                out.push(word);
            }
        }
        out.sort();
        self.memo.insert(key, out.clone());
        out
    }
}

/// All reduced expressions of `w`, found by peeling off first letters.
pub fn reduced_words(w: &WeylElement, cd: &CartanData) -> ReducedWordSet {
    let mut search = WordSearch {
        cd,
        reflections: (1..=cd.n)
            .map(|i| simple_reflection(i, cd).expect("index in range"))
            .collect(),
        memo: HashMap::new(),
    };
    let words = search.words(w);
    let length = words.first().map_or(0, Vec::len);
    for word in &words {
        assert_eq!(word.len(), length, "reduced words share one length");
        let back = word_to_element(word, cd).expect("letters in range");
        assert_eq!(back.mat, w.mat, "reduced word {word:?} does not multiply back");
    }
    ReducedWordSet {
        element: p_map(w, cd),
        length,
        words,
    }
}

fn vector_label(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Graphviz rendering, bottom-up, one rank per Coxeter length.
pub fn emit_dot(p: &Poset) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", p.kind.as_str()).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    let mut by_length: Vec<(usize, usize)> = p.lengths.iter().copied().zip(0..).collect();
    by_length.sort();
    let mut i = 0;
    while i < by_length.len() {
        let len = by_length[i].0;
        out.push_str("  { rank=same;");
        while i < by_length.len() && by_length[i].0 == len {
            let v = by_length[i].1;
            write!(out, " n{v} [label=\"{}\"];", vector_label(&p.nodes[v])).unwrap();
            i += 1;
        }
        out.push_str(" }\n");
    }
    for &(a, b) in &p.covers {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_cartan;
    use crate::weyl::{build_group_table, DEFAULT_GROUP_CAP};

    fn table(s: &str) -> GroupTable {
        build_group_table(&build_cartan(&s.parse().unwrap()), DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn primary_a1_a2() {
        let p = primary_poset(&table("A1"));
        assert_eq!(p.edge_vectors(), vec![(vec![0], vec![1])]);
        let p = primary_poset(&table("A2"));
        let edges = p.edge_vectors();
        for e in [
            (vec![0, 0], vec![1, 0]),
            (vec![0, 0], vec![0, 1]),
            (vec![2, 1], vec![2, 2]),
            (vec![1, 2], vec![2, 2]),
        ] {
            assert!(edges.contains(&e), "{e:?}");
        }
        assert_eq!(edges.len(), 8);
    }

    #[test]
    fn a2_bruhat_keeps_every_primary_cover() {
        let t = table("A2");
        let roots = t.cartan.positive_roots();
        assert_eq!(bruhat_from_primary(&t, &roots).covers, primary_poset(&t).covers);
        let sub = bruhat_from_subwords(&t);
        let up = sub.reachability();
        let bottom = t.position(&[0, 0]).unwrap();
        let top = t.position(&[2, 2]).unwrap();
        assert_eq!(up[bottom].count_ones(..), 5);
        for v in 0..6 {
            if v != top {
                assert!(up[v].contains(top));
            }
        }
    }

    #[test]
    fn graded_links_give_subword_bruhat() {
        for t in ["A2", "A3", "B3", "G2"] {
            let tb = table(t);
            let roots = tb.cartan.positive_roots();
            let graded = bruhat_from_graded_links(&tb, &roots);
            let sub = bruhat_from_subwords(&tb);
            assert_eq!(graded.covers, sub.covers, "{t}");
        }
    }

    #[test]
    fn a3_cover_filter_loses_hidden_covers() {
        let tb = table("A3");
        let roots = tb.cartan.positive_roots();
        let filtered = bruhat_from_primary(&tb, &roots);
        let sub = bruhat_from_subwords(&tb);
        let lost = sub.pairs_missing_from(&filtered);
        assert!(lost.contains(&(vec![0, 1, 2], vec![1, 2, 3])));
        assert!(filtered.pairs_missing_from(&sub).is_empty());
        assert_eq!(
            primary_poset(&tb).links_missing_from(&sub),
            vec![(vec![0, 2, 2], vec![1, 2, 3]), (vec![2, 2, 0], vec![3, 2, 1])]
        );
    }

    #[test]
    fn root_multiple_filter() {
        let roots = build_cartan(&"A3".parse().unwrap()).positive_roots();
        assert!(!is_positive_root_multiple(&[1, 0, 1], &roots));
        assert!(is_positive_root_multiple(&[2, 2, 2], &roots));
        assert!(is_positive_root_multiple(&[0, 3, 0], &roots));
        assert!(!is_positive_root_multiple(&[-1, -1, 0], &roots));
    }

    #[test]
    fn first_letters_b2() {
        let c = build_cartan(&"B2".parse().unwrap());
        assert!(first_letters(&WeylElement::identity(2), &c).is_empty());
        let s1 = simple_reflection(1, &c).unwrap();
        assert_eq!(first_letters(&s1, &c), BTreeSet::from([1]));
        let w0 = word_to_element(&[1, 2, 1, 2], &c).unwrap();
        assert_eq!(first_letters(&w0, &c), BTreeSet::from([1, 2]));
    }

    #[test]
    fn reduced_word_examples() {
        let a2 = build_cartan(&"A2".parse().unwrap());
        let id = reduced_words(&WeylElement::identity(2), &a2);
        assert_eq!(id.words, vec![Vec::<usize>::new()]);
        let w0 = word_to_element(&[1, 2, 1], &a2).unwrap();
        let set = reduced_words(&w0, &a2);
        assert_eq!(set.words, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(set.element, vec![2, 2]);
        let b2 = build_cartan(&"B2".parse().unwrap());
        let w0 = word_to_element(&[2, 1, 2, 1], &b2).unwrap();
        let set = reduced_words(&w0, &b2);
        assert_eq!(set.length, 4);
        assert_eq!(set.words, vec![vec![1, 2, 1, 2], vec![2, 1, 2, 1]]);
    }

    #[test]
    fn dot_output() {
        let p = primary_poset(&table("A1"));
        let dot = emit_dot(&p);
        assert_eq!(
            dot,
            "digraph \"primary\" {\n  rankdir=BT;\n  node [shape=plaintext];\n  { rank=same; n0 [label=\"(0)\"]; }\n  { rank=same; n1 [label=\"(1)\"]; }\n  n0 -> n1;\n}\n"
        );
        let empty = emit_dot(&Poset::empty(PosetKind::Primary));
        assert_eq!(empty, "digraph \"primary\" {\n  rankdir=BT;\n  node [shape=plaintext];\n}\n");
        let a2 = primary_poset(&table("A2"));
        let dot = emit_dot(&a2);
        assert_eq!(dot.matches(" -> ").count(), a2.covers.len());
        assert_eq!(dot.matches("label=").count(), 6);
        assert_eq!(dot, emit_dot(&primary_poset(&table("A2"))));
    }
}

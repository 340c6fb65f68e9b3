mod common;

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use proptest::prelude::*;
use weyl_ellipsoid::diophantine::{expand_orbit, orbit_seeds};
use weyl_ellipsoid::linalg::{identity, mat_mul};
use weyl_ellipsoid::weyl::{simple_reflection, star, word_to_element};
use weyl_ellipsoid::{
    apply_t, build_cartan, build_group_table, h_vector, p_map, primary_form, CartanData,
    LieTypeSpec, DEFAULT_EXPAND_CAP, DEFAULT_GROUP_CAP,
};

use common::{all_types_up_to, cartan};

const SMALL: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "B2xA1"];

fn small_type() -> impl Strategy<Value = CartanData> {
    prop::sample::select(SMALL.to_vec()).prop_map(cartan)
}

fn group_order_by_bfs(cd: &CartanData) -> usize {
    let gens: Vec<_> = (1..=cd.n).map(|i| simple_reflection(i, cd).unwrap().mat).collect();
    let start = identity(cd.n);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let next = mat_mul(&m, g);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

#[test]
fn catalog_orders_match_matrix_groups() {
    for t in all_types_up_to(4) {
        let cd = build_cartan(&t);
        assert_eq!(cd.weyl_order(), BigUint::from(group_order_by_bfs(&cd)), "{t}");
    }
}

#[test]
fn parabolic_orders_match_matrix_groups() {
    let cd = cartan("F4");
    for mask in 0u32..16 {
        let gens: Vec<usize> = (1..=4).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let mats: Vec<_> = gens.iter().map(|&i| simple_reflection(i, &cd).unwrap().mat).collect();
        let mut seen = HashSet::from([identity(4)]);
        let mut queue = VecDeque::from([identity(4)]);
        while let Some(m) = queue.pop_front() {
            for g in &mats {
                let next = mat_mul(&m, g);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        assert_eq!(cd.parabolic_order(&gens).unwrap(), BigUint::from(seen.len()), "{gens:?}");
    }
}

#[test]
fn main_orbit_bijects_onto_larger_groups() {
    for name in ["A5", "A6", "B5", "C5", "D5"] {
        let cd = cartan(name);
        let table = build_group_table(&cd, DEFAULT_GROUP_CAP).unwrap();
        let orbit: HashSet<Vec<i64>> = expand_orbit(&vec![0; cd.n], &cd, DEFAULT_EXPAND_CAP)
            .unwrap()
            .into_iter()
            .collect();
        let image: HashSet<Vec<i64>> = table.entries.iter().map(|e| e.pvector.clone()).collect();
        assert_eq!(BigUint::from(table.len()), cd.weyl_order(), "{name}");
        assert_eq!(image, orbit, "{name}");
    }
}

#[test]
fn e8_orbit_sizes_count_lattice_vectors() {
    // Every integral primary point of E8 is delta - y with y in the root lattice
    // and |y|^2 = 620; there are 240 * sigma_3(310) of those.
    let cd = cartan("E8");
    let seeds = orbit_seeds(&cd);
    let total: BigUint = seeds.iter().map(|s| &s.size).sum();
    let sigma3: u64 = (1..=310u64).filter(|d| 310 % d == 0).map(|d| d * d * d).sum();
    assert_eq!(total, BigUint::from(240 * sigma3));
    assert_eq!(seeds.len(), 158);
    assert_eq!(seeds.iter().filter(|s| s.h.iter().all(|&v| v > 0)).count(), 1);
}

#[test]
fn irreducible_catalog_sizes() {
    assert_eq!(LieTypeSpec::irreducible_up_to(8).len(), 8 + 7 + 6 + 5 + 3 + 1 + 1);
}

fn orbit_point(cd: &CartanData, pick: usize) -> Vec<i64> {
    let orbit = expand_orbit(&vec![0; cd.n], cd, DEFAULT_EXPAND_CAP).unwrap();
    orbit[pick % orbit.len()].clone()
}

proptest! {
    #[test]
    fn t_is_an_involution_on_the_ellipsoid(cd in small_type(), pick in 0usize..10_000, i in 0usize..8) {
        let x = orbit_point(&cd, pick);
        let i = i % cd.n + 1;
        let y = apply_t(i, &x, &cd).unwrap();
        prop_assert!(primary_form(&cd).vanishes_at(&y));
        prop_assert_eq!(apply_t(i, &y, &cd).unwrap(), x.clone());
        let hx = h_vector(&x, &cd);
        let hy = h_vector(&y, &cd);
        prop_assert_eq!(hy[i - 1], -hx[i - 1]);
    }

    #[test]
    fn p_map_intertwines_t_and_left_reflections(cd in small_type(), word in prop::collection::vec(1usize..=8, 0..10), i in 1usize..=8) {
        let word: Vec<usize> = word.into_iter().map(|l| (l - 1) % cd.n + 1).collect();
        let i = (i - 1) % cd.n + 1;
        let w = word_to_element(&word, &cd).unwrap();
        let sw = simple_reflection(i, &cd).unwrap().mul(&w);
        prop_assert_eq!(apply_t(i, &p_map(&w, &cd), &cd).unwrap(), p_map(&sw, &cd));
    }

    #[test]
    fn star_is_a_group_law(cd in small_type(), a in 0usize..10_000, b in 0usize..10_000, c in 0usize..10_000) {
        let table = build_group_table(&cd, DEFAULT_GROUP_CAP).unwrap();
        let n = table.len();
        let [a, b, c] = [a % n, b % n, c % n].map(|k| table.entries[k].pvector.clone());
        let zero = vec![0; cd.n];
        prop_assert_eq!(star(&zero, &a, &table).unwrap(), a.clone());
        prop_assert_eq!(star(&a, &zero, &table).unwrap(), a.clone());
        let ab_c = star(&star(&a, &b, &table).unwrap(), &c, &table).unwrap();
        let a_bc = star(&a, &star(&b, &c, &table).unwrap(), &table).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let has_inverse = table.entries.iter().any(|e| star(&a, &e.pvector, &table).unwrap() == zero);
        prop_assert!(has_inverse);
    }

    #[test]
    fn words_and_their_reverses_are_inverse(cd in small_type(), word in prop::collection::vec(1usize..=8, 0..12)) {
        let word: Vec<usize> = word.into_iter().map(|l| (l - 1) % cd.n + 1).collect();
        let reversed: Vec<usize> = word.iter().rev().copied().collect();
        let w = word_to_element(&word, &cd).unwrap();
        let v = word_to_element(&reversed, &cd).unwrap();
        prop_assert!(w.mul(&v).is_identity());
    }
}

//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.
//!
//! cargo test -p weyl-ellipsoid --test acceptance

mod common;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use weyl_ellipsoid::diophantine::{expand_orbit, orbit_seeds, orbit_seeds_with};
use weyl_ellipsoid::linalg::rat;
use weyl_ellipsoid::order::{
    bruhat_from_primary, bruhat_from_subwords, first_letters, primary_poset,
};
use weyl_ellipsoid::verify::{
    brute_force_first_letters, primary_box_points, primary_by_form, secondary_by_form,
};
use weyl_ellipsoid::weyl::p_alpha_b;
use weyl_ellipsoid::{
    build_cartan, build_group_table, primary_form, secondary_form, GroupTable, LieTypeSpec,
    DEFAULT_EXPAND_CAP, DEFAULT_GROUP_CAP,
};

use common::{all_types_up_to, cartan};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn table(name: &str) -> GroupTable {
    build_group_table(&cartan(name), DEFAULT_GROUP_CAP).expect("group fits the cap")
}

fn within(limit: Duration, start: Instant) -> (bool, String) {
    let took = start.elapsed();
    (took <= limit, format!("{:.1}s of {}s", took.as_secs_f64(), limit.as_secs()))
}

fn e8_census() -> Outcome {
    let start = Instant::now();
    let cd = cartan("E8");
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let seeds = orbit_seeds_with(&cd, threads);
    let total: BigUint = seeds.iter().map(|s| &s.size).sum();
    let (fast, time) = within(Duration::from_secs(300), start);
    outcome(
        seeds.len() == 157 && fast,
        format!(
            "{} orbits (expected 157), sizes sum to {total}, {time}",
            seeds.len()
        ),
    )
}

fn main_orbit_sizes() -> Outcome {
    let start = Instant::now();
    let expected = [
        ("A1", 2u64),
        ("A2", 6),
        ("A3", 24),
        ("A4", 120),
        ("B2", 8),
        ("B3", 48),
        ("C3", 48),
        ("D4", 192),
        ("G2", 12),
        ("F4", 1152),
    ];
    let mut bad = Vec::new();
    for (name, order) in expected {
        let cd = cartan(name);
        let orbit = expand_orbit(&vec![0; cd.n], &cd, DEFAULT_EXPAND_CAP).unwrap();
        let group = build_group_table(&cd, DEFAULT_GROUP_CAP).unwrap();
        if orbit.len() as u64 != order || group.len() as u64 != order || cd.weyl_order() != BigUint::from(order) {
            bad.push(format!("{name}: orbit {} group {}", orbit.len(), group.len()));
        }
    }
    let (fast, time) = within(Duration::from_secs(60), start);
    outcome(bad.is_empty() && fast, format!("{} types, {time} {}", expected.len(), bad.join("; ")))
}

fn orbit_size_law() -> Outcome {
    let mut seeds_checked = 0;
    let mut bad = Vec::new();
    let types = all_types_up_to(4);
    for t in &types {
        let cd = build_cartan(t);
        for s in orbit_seeds(&cd) {
            seeds_checked += 1;
            let orbit = expand_orbit(&s.minimal, &cd, DEFAULT_EXPAND_CAP).unwrap();
            if BigUint::from(orbit.len()) != s.size {
                bad.push(format!("{t} h={:?}: {} vs {}", s.h, orbit.len(), s.size));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} types, {seeds_checked} orbits {}", types.len(), bad.join("; ")),
    )
}

fn partition_property() -> Outcome {
    let types = all_types_up_to(3);
    let mut points = 0;
    let mut bad = Vec::new();
    for t in &types {
        let cd = build_cartan(t);
        let scanned: HashSet<Vec<i64>> = primary_box_points(&cd).into_iter().collect();
        let mut union = HashSet::new();
        let mut disjoint = true;
        for s in orbit_seeds(&cd) {
            for e in expand_orbit(&s.minimal, &cd, DEFAULT_EXPAND_CAP).unwrap() {
                disjoint &= union.insert(e);
            }
        }
        points += scanned.len();
        if !disjoint || union != scanned {
            bad.push(t.to_string());
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} types, {points} integral points {}", types.len(), bad.join(" ")),
    )
}

fn bijection_types() -> Vec<LieTypeSpec> {
    let mut types: Vec<LieTypeSpec> = all_types_up_to(4);
    for name in ["A5", "B5", "C5", "D5", "A6", "D6", "B6", "E6", "A3xB3"] {
        types.push(name.parse().unwrap());
    }
    types
}

fn bijection_suite() -> Outcome {
    let types = bijection_types();
    let mut elements = 0;
    let mut bad = Vec::new();
    for t in &types {
        let cd = build_cartan(t);
        let tb = build_group_table(&cd, DEFAULT_GROUP_CAP).unwrap();
        elements += tb.len();
        let ones = cd.ones();
        let mut ps = HashSet::new();
        let mut ss = HashSet::new();
        let mut relation = true;
        for e in &tb.entries {
            let s = weyl_ellipsoid::s_map(&e.element, &cd);
            let ap = weyl_ellipsoid::linalg::mat_vec(&cd.cartan, &e.pvector);
            relation &= s.iter().zip(&ones).zip(&ap).all(|((s, o), a)| *s == o - a);
            ps.insert(e.pvector.clone());
            ss.insert(s);
        }
        let orbit: HashSet<Vec<i64>> = expand_orbit(&vec![0; cd.n], &cd, DEFAULT_EXPAND_CAP)
            .unwrap()
            .into_iter()
            .collect();
        let ok = ps.len() == tb.len() && ss.len() == tb.len() && relation && orbit == ps;
        if !ok {
            bad.push(t.to_string());
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} groups, {elements} elements {}", types.len(), bad.join(" ")),
    )
}

fn a3_discrepancy() -> Outcome {
    let tb = table("A3");
    let roots = tb.cartan.positive_roots();
    let primary = primary_poset(&tb);
    let subword = bruhat_from_subwords(&tb);
    let filtered = bruhat_from_primary(&tb, &roots);
    let expected: BTreeSet<(Vec<i64>, Vec<i64>)> = [
        (vec![0, 2, 2], vec![1, 2, 3]),
        (vec![2, 2, 0], vec![3, 2, 1]),
    ]
    .into_iter()
    .collect();
    let prel = primary.relation_pairs();
    let mut comparable_in_primary = true;
    let mut incomparable_in_bruhat = true;
    for (a, b) in &expected {
        let (u, v) = (tb.position(a).unwrap(), tb.position(b).unwrap());
        comparable_in_primary &= prel.contains(&(u, v));
        for p in [&subword, &filtered] {
            let rel = p.relation_pairs();
            incomparable_in_bruhat &= !rel.contains(&(u, v)) && !rel.contains(&(v, u));
        }
    }
    let found: BTreeSet<(Vec<i64>, Vec<i64>)> = primary.links_missing_from(&subword).into_iter().collect();
    let only = found == expected;
    // every primary-only relation is generated by the two links together with Bruhat relations
    let mut closure = subword.relation_pairs();
    let idx: Vec<(usize, usize)> = expected
        .iter()
        .map(|(a, b)| (tb.position(a).unwrap(), tb.position(b).unwrap()))
        .collect();
    closure.extend(idx.iter().copied());
    loop {
        let mut added = Vec::new();
        for &(a, b) in &closure {
            for &(c, d) in closure.range((b, 0)..(b + 1, 0)) {
                debug_assert_eq!(c, b);
                if !closure.contains(&(a, d)) {
                    added.push((a, d));
                }
            }
        }
        if added.is_empty() {
            break;
        }
        closure.extend(added);
    }
    let generated = closure == prel;
    outcome(
        comparable_in_primary && incomparable_in_bruhat && only && generated,
        format!(
            "primary-comparable {comparable_in_primary}, Bruhat-incomparable {incomparable_in_bruhat}, discrepant links {:?}, {} primary-only pairs generated {generated}",
            found,
            primary.pairs_missing_from(&subword).len()
        ),
    )
}

const ORDER_TYPES: [&str; 6] = ["A2", "A3", "B2", "B3", "G2", "D4"];

fn bruhat_implication() -> Outcome {
    let mut bad = Vec::new();
    for name in ORDER_TYPES {
        let tb = table(name);
        let sub = bruhat_from_subwords(&tb).relation_pairs();
        let prim = primary_poset(&tb).relation_pairs();
        if !sub.is_subset(&prim) {
            bad.push(name);
        }
    }
    outcome(bad.is_empty(), format!("{} types {}", ORDER_TYPES.len(), bad.join(" ")))
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut report = Vec::new();
    let mut all = true;
    for name in ORDER_TYPES {
        let tb = table(name);
        let roots = tb.cartan.positive_roots();
        let filtered = bruhat_from_primary(&tb, &roots);
        let subword = bruhat_from_subwords(&tb);
        let agree = filtered.same_order_as(&subword);
        all &= agree;
        report.push(format!(
            "{name} {} ({}/{} covers)",
            if agree { "agree" } else { "differ" },
            filtered.covers.len(),
            subword.covers.len()
        ));
    }
    let (fast, time) = within(Duration::from_secs(120), start);
    outcome(all && fast, format!("{}, {time}", report.join(", ")))
}

fn first_letters_match() -> Outcome {
    let mut detail = Vec::new();
    let mut all = true;
    for name in ["A3", "B3"] {
        let tb = table(name);
        let brute = brute_force_first_letters(&tb, 10_000_000).expect("budget covers the group");
        let ok = tb
            .entries
            .iter()
            .zip(&brute)
            .all(|(e, b)| &first_letters(&e.element, &tb.cartan) == b);
        all &= ok;
        detail.push(format!("{name} {} elements {}", tb.len(), if ok { "ok" } else { "mismatch" }));
    }
    outcome(all, detail.join(", "))
}

fn integrality() -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for name in ["A3", "B3"] {
        let tb = table(name);
        for r in tb.cartan.positive_roots() {
            for e in &tb.entries {
                pairs += 1;
                match p_alpha_b(&r.coords, &e.pvector, &tb) {
                    Ok(p) if p != 0 => {}
                    other => bad.push(format!("{name} {:?} {:?}: {other:?}", r.coords, e.pvector)),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} pairs {}", bad.join("; ")))
}

fn quadric_types() -> Vec<LieTypeSpec> {
    let mut types = all_types_up_to(4);
    types.extend(LieTypeSpec::irreducible_up_to(8).into_iter().filter(|t| t.rank() > 4));
    for name in ["E6xG2", "D4xF4", "B3xC3xA2", "A2xA2xA2xA2", "C5xB3", "G2xG2xG2xA1xA1"] {
        types.push(name.parse().unwrap());
    }
    types
}

fn quadric_identities() -> Outcome {
    let types = quadric_types();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    for t in &types {
        let cd = build_cartan(t);
        let pf = primary_form(&cd);
        let sf = secondary_form(&cd);
        let mut ok = true;
        for _ in 0..1000 {
            let x: Vec<i64> = (0..cd.n).map(|_| rng.gen_range(-50..=50)).collect();
            ok &= rat(2 * pf.value(&x)) == primary_by_form(&x, &cd);
            ok &= rat(sf.value(&x)) == -secondary_by_form(&x, &cd) * rat(cd.det);
        }
        if !ok {
            bad.push(t.to_string());
        }
    }
    outcome(bad.is_empty(), format!("{} types x 1000 points {}", types.len(), bad.join(" ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("E8 orbit census", e8_census),
        ("main orbit has |W| elements", main_orbit_sizes),
        ("orbit size law, rank <= 4", orbit_size_law),
        ("partition by box scan, rank <= 3", partition_property),
        ("P/S bijections", bijection_suite),
        ("A3 primary/Bruhat discrepancy", a3_discrepancy),
        ("Bruhat implies componentwise", bruhat_implication),
        ("primary-filtered Bruhat = subword Bruhat", oracle_agreement),
        ("first letters = negative S entries", first_letters_match),
        ("p_alpha_b nonzero integer", integrality),
        ("quadric identities, rank <= 8", quadric_identities),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    let mut ran = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let o = run();
        failed += usize::from(!o.passed);
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} [{:>2}] {name}: {}", k + 1, o.detail.trim_end());
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Self-checks of the invariants tying the realizations together, sized to
//! what is affordable for a given type. Each check compares two independent
//! computations and reports a pass/fail line.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::cartan::CartanData;
use crate::diophantine::{expand_orbit, orbit_seeds, sweep_orbit, DEFAULT_EXPAND_CAP};
use crate::ellipsoid::{apply_t, h_vector, primary_form, secondary_form};
use crate::linalg::{floor_sqrt, identity, inverse_and_det, rat, rat_mat_mul, rat_mat_vec, to_rational, Rational};
use crate::order::{
    bruhat_from_graded_links, bruhat_from_primary, bruhat_from_subwords, first_letters, primary_poset,
};
use crate::weyl::{build_group_table, p_alpha_b, s_map, GroupTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Options controlling which checks run.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub expand_cap: u64,
    pub group_cap: u64,
    pub random_points: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            expand_cap: DEFAULT_EXPAND_CAP,
            group_cap: 5_000,
            random_points: 1000,
            seed: 0x5eed,
        }
    }
}

fn as_rational(x: &[i64]) -> Vec<Rational> {
    x.iter().map(|&v| rat(v)).collect()
}

/// `⟨x, x − 2δ⟩`.
pub fn primary_by_form(x: &[i64], cd: &CartanData) -> Rational {
    let xr = as_rational(x);
    let shifted: Vec<Rational> = xr.iter().zip(&cd.delta).map(|(a, d)| a - d * rat(2)).collect();
    cd.bilinear(&xr, &shifted).expect("dimensions match")
}

/// `⟨A⁻¹(1̃ − h), A⁻¹(1̃ + h)⟩`.
pub fn secondary_by_form(h: &[i64], cd: &CartanData) -> Rational {
    let minus: Vec<Rational> = h.iter().map(|&v| rat(1 - v)).collect();
    let plus: Vec<Rational> = h.iter().map(|&v| rat(1 + v)).collect();
    let u = rat_mat_vec(&cd.inverse, &minus);
    let v = rat_mat_vec(&cd.inverse, &plus);
    cd.bilinear(&u, &v).expect("dimensions match")
}

/// Membership test through `⟨x − δ, x − δ⟩ = ⟨δ, δ⟩`.
pub fn on_primary_sphere(x: &[i64], cd: &CartanData) -> bool {
    let y: Vec<Rational> = x.iter().zip(&cd.delta).map(|(&a, d)| rat(a) - d).collect();
    cd.bilinear(&y, &y).unwrap() == cd.delta_norm()
}

/// Every integral point of the primary ellipsoid, by scanning the bounding box
/// `|x_i − δ_i|² ≤ ⟨δ,δ⟩·(G⁻¹)_ii` and testing the sphere identity.
pub fn primary_box_points(cd: &CartanData) -> Vec<Vec<i64>> {
    let n = cd.n;
    let (ginv, _) = inverse_and_det(&to_rational(&cd.gram)).expect("form is definite");
    let radius = cd.delta_norm();
    let ranges: Vec<(i64, i64)> = (0..n)
        .map(|i| {
            let s = floor_sqrt(&(radius * ginv[i][i])) as i64;
            (
                cd.delta[i].floor().to_integer() as i64 - s - 1,
                cd.delta[i].ceil().to_integer() as i64 + s + 1,
            )
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        if on_primary_sphere(&x, cd) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            x[i] += 1;
            if x[i] <= ranges[i].1 {
                break;
            }
            x[i] = ranges[i].0;
            i += 1;
        }
    }
}

fn check_cartan(cd: &CartanData) -> Vec<Check> {
    let n = cd.n;
    let mut symmetric = true;
    for i in 0..n {
        for j in 0..n {
            symmetric &= cd.weights[i] * cd.cartan[i][j] == cd.weights[j] * cd.cartan[j][i];
        }
    }
    let a = to_rational(&cd.cartan);
    let delta_ok = rat_mat_vec(&a, &cd.delta).iter().all(|v| *v == rat(1));
    let inv_ok = rat_mat_mul(&cd.inverse, &a) == to_rational(&identity(n));
    let roots = cd.positive_roots();
    let grades_ok = roots.iter().all(|r| r.grade >= 1 && (r.grade == 1) == r.is_simple());
    let pf = primary_form(cd);
    let images_ok = roots
        .iter()
        .all(|r| pf.vanishes_at(&r.coords.iter().map(|c| c * r.grade).collect::<Vec<_>>()));
    vec![
        Check::new("form symmetry k_i*A_ij = k_j*A_ji", symmetric, ""),
        Check::new("A*delta = 1", delta_ok, ""),
        Check::new("inverse(A)*A = I", inv_ok, format!("det A = {}", cd.det)),
        Check::new("grades: >= 1, = 1 iff simple", grades_ok, format!("{} positive roots", roots.len())),
        Check::new("grade(a)*a on primary ellipsoid", images_ok, ""),
    ]
}

fn check_quadrics(cd: &CartanData, opts: &VerifyOptions) -> Vec<Check> {
    let pf = primary_form(cd);
    let sf = secondary_form(cd);
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut primary_ok = true;
    let mut secondary_ok = true;
    for _ in 0..opts.random_points {
        let x: Vec<i64> = (0..cd.n).map(|_| rng.gen_range(-10..=10)).collect();
        primary_ok &= rat(2 * pf.value(&x)) == primary_by_form(&x, cd);
        secondary_ok &= rat(sf.value(&x)) == -secondary_by_form(&x, cd) * rat(cd.det);
    }
    vec![
        Check::new(
            "primary form = <x, x - 2 delta> / 2",
            primary_ok,
            format!("{} random points", opts.random_points),
        ),
        Check::new(
            "secondary form = -det(A) * <A^-1(1-h), A^-1(1+h)>",
            secondary_ok,
            format!("{} random points", opts.random_points),
        ),
    ]
}

fn check_orbits(cd: &CartanData, opts: &VerifyOptions) -> Vec<Check> {
    let mut checks = Vec::new();
    let seeds = orbit_seeds(cd);
    let sf = secondary_form(cd);
    let pf = primary_form(cd);
    let seeds_ok = seeds.iter().all(|s| {
        sf.vanishes_at(&s.h) && pf.vanishes_at(&s.minimal) && h_vector(&s.minimal, cd) == s.h
    });
    checks.push(Check::new(
        "orbit seeds lie on both ellipsoids",
        seeds_ok,
        format!("{} orbits", seeds.len()),
    ));
    let total: BigUint = seeds.iter().map(|s| &s.size).sum();
    let expandable = total <= BigUint::from(opts.expand_cap);
    if !expandable {
        return checks;
    }
    let mut size_ok = true;
    let mut minimal_ok = true;
    let mut sweep_ok = true;
    let mut invariance_ok = true;
    let mut union: HashSet<Vec<i64>> = HashSet::new();
    let mut disjoint = true;
    for s in &seeds {
        let els = match expand_orbit(&s.minimal, cd, opts.expand_cap) {
            Ok(e) => e,
            Err(e) => {
                checks.push(Check::new("orbit expansion", false, e.to_string()));
                return checks;
            }
        };
        size_ok &= BigUint::from(els.len()) == s.size;
        minimal_ok &= els
            .iter()
            .all(|e| e.iter().zip(&s.minimal).all(|(a, b)| a >= b));
        sweep_ok &= sweep_orbit(&s.minimal, cd, opts.expand_cap).ok().as_ref() == Some(&els);
        let set: HashSet<&Vec<i64>> = els.iter().collect();
        invariance_ok &= els.iter().all(|e| {
            (1..=cd.n).all(|i| apply_t(i, e, cd).map(|y| set.contains(&y)).unwrap_or(false))
        });
        for e in els {
            disjoint &= union.insert(e);
        }
    }
    checks.push(Check::new("orbit size = |W|/|W_h|", size_ok, ""));
    checks.push(Check::new("minimal vector below every orbit element", minimal_ok, ""));
    checks.push(Check::new("positive-component sweep = full closure", sweep_ok, ""));
    checks.push(Check::new("orbits closed under every T_i", invariance_ok, ""));
    checks.push(Check::new("orbits pairwise disjoint", disjoint, ""));
    if cd.n <= 4 {
        let scanned: HashSet<Vec<i64>> = primary_box_points(cd).into_iter().collect();
        checks.push(Check::new(
            "box scan of primary points = union of orbits",
            scanned == union,
            format!("{} points", scanned.len()),
        ));
    }
    checks
}

fn check_group(table: &GroupTable) -> Vec<Check> {
    let cd = &table.cartan;
    let mut checks = Vec::new();
    let pvecs: HashSet<&Vec<i64>> = table.entries.iter().map(|e| &e.pvector).collect();
    let svecs: HashSet<Vec<i64>> = table.entries.iter().map(|e| s_map(&e.element, cd)).collect();
    checks.push(Check::new(
        "table size = |W|",
        BigUint::from(table.len()) == table.order,
        format!("{} elements", table.len()),
    ));
    checks.push(Check::new(
        "P and S injective",
        pvecs.len() == table.len() && svecs.len() == table.len(),
        "",
    ));
    let s_is_h = table
        .entries
        .iter()
        .all(|e| s_map(&e.element, cd) == h_vector(&e.pvector, cd));
    checks.push(Check::new("S(w) = 1 - A P(w)", s_is_h, ""));
    let form_ok = table.entries.iter().all(|e| {
        let m = &e.element.mat;
        crate::linalg::mat_mul(&crate::linalg::mat_mul(&crate::linalg::transpose(m), &cd.gram), m)
            == cd.gram
    });
    checks.push(Check::new("matrices preserve the form", form_ok, ""));
    match expand_orbit(&vec![0; cd.n], cd, table.len() as u64 + 1) {
        Ok(orbit) => {
            let orbit_set: HashSet<&Vec<i64>> = orbit.iter().collect();
            checks.push(Check::new("P-image = orbit of 0", orbit_set == pvecs, ""));
            let nonneg = orbit.iter().all(|x| x.iter().all(|&c| c >= 0));
            let no_zero_h = orbit.iter().all(|x| h_vector(x, cd).iter().all(|&c| c != 0));
            checks.push(Check::new(
                "main orbit: nonnegative vectors, h without zeros",
                nonneg && no_zero_h,
                "",
            ));
            let roots = cd.positive_roots();
            let mut special = vec![vec![0; cd.n], cd.two_delta.clone()];
            for r in &roots {
                let m: Vec<i64> = r.coords.iter().map(|c| c * r.grade).collect();
                special.push(cd.two_delta.iter().zip(&m).map(|(d, v)| d - v).collect());
                special.push(m);
            }
            checks.push(Check::new(
                "main orbit holds 0, 2 delta, m_a a, 2 delta - m_a a",
                special.iter().all(|v| orbit_set.contains(v)),
                "",
            ));
        }
        Err(e) => checks.push(Check::new("P-image = orbit of 0", false, e.to_string())),
    }
    let identities = table
        .entries
        .iter()
        .filter(|e| s_map(&e.element, cd).iter().all(|&b| b >= 0))
        .count();
    checks.push(Check::new("exactly one S-vector without negatives", identities == 1, ""));
    checks
}

/// First letters of all reduced words of every element, by trying every word
/// up to the longest length. `None` when that is too many words.
pub fn brute_force_first_letters(table: &GroupTable, budget: u64) -> Option<Vec<BTreeSet<usize>>> {
    let n = table.cartan.n;
    let max_len = table.entries.iter().map(|e| e.length).max().unwrap_or(0);
    let total: u64 = (0..=max_len as u32).map(|l| (n as u64).saturating_pow(l)).sum();
    if total > budget {
        return None;
    }
    let mut letters = vec![BTreeSet::new(); table.len()];
    // (first letter, element) for every word of the current length
    let mut frontier: Vec<(usize, usize)> = (0..n).map(|i| (i + 1, table.right[0][i])).collect();
    for len in 1..=max_len {
        for &(first, e) in &frontier {
            if table.entries[e].length == len {
                letters[e].insert(first);
            }
        }
        if len == max_len {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|&(first, e)| (0..n).map(move |i| (first, i, e)))
            .map(|(first, i, e)| (first, table.right[e][i]))
            .collect();
    }
    Some(letters)
}

fn check_orders(table: &GroupTable) -> Vec<Check> {
    let cd = &table.cartan;
    let roots = cd.positive_roots();
    let primary = primary_poset(table);
    let filtered = bruhat_from_primary(table, &roots);
    let subword = bruhat_from_subwords(table);
    let implied = subword.relation_pairs().is_subset(&primary.relation_pairs());
    let agree = filtered.same_order_as(&subword);
    let mut checks = vec![
        Check::new("Bruhat relation contained in primary order", implied, ""),
        Check::new(
            "cover-filter Bruhat = subword Bruhat",
            agree,
            format!(
                "{} vs {} covers",
                filtered.covers.len(),
                subword.covers.len()
            ),
        ),
    ];
    let graded = bruhat_from_graded_links(table, &roots);
    checks.push(Check::new(
        "graded-link Bruhat = subword Bruhat",
        graded.covers == subword.covers,
        "",
    ));
    checks.push(Check::new(
        "primary links with Bruhat-incomparable ends (informational)",
        true,
        format!("{} links", primary.links_missing_from(&subword).len()),
    ));
    if let Some(brute) = brute_force_first_letters(table, 2_000_000) {
        let ok = table
            .entries
            .iter()
            .zip(&brute)
            .all(|(e, b)| &first_letters(&e.element, cd) == b);
        checks.push(Check::new("first letters = negative entries of S(w)", ok, ""));
    }
    let mut multiples_ok = true;
    let mut detail = String::new();
    'outer: for r in &roots {
        for e in &table.entries {
            if let Err(err) = p_alpha_b(&r.coords, &e.pvector, table) {
                multiples_ok = false;
                detail = err.to_string();
                break 'outer;
            }
        }
    }
    checks.push(Check::new("(m_a a) * b - b is a nonzero multiple of a", multiples_ok, detail));
    checks
}

/// Run every check affordable for `cd`.
pub fn verify(cd: &CartanData, opts: &VerifyOptions) -> Vec<Check> {
    let mut checks = check_cartan(cd);
    checks.extend(check_quadrics(cd, opts));
    checks.extend(check_orbits(cd, opts));
    let order = cd.weyl_order();
    if order <= BigUint::from(opts.group_cap) {
        match build_group_table(cd, opts.group_cap) {
            Ok(table) => {
                checks.extend(check_group(&table));
                if order.to_u64().unwrap_or(u64::MAX) <= 2_000 {
                    checks.extend(check_orders(&table));
                }
            }
            Err(e) => checks.push(Check::new("group table", false, e.to_string())),
        }
    }
    checks
}

#![allow(dead_code)]

use weyl_ellipsoid::{build_cartan, CartanData, LieTypeSpec};

pub fn cartan(name: &str) -> CartanData {
    build_cartan(&name.parse().expect("valid type"))
}

/// Every semisimple type of rank at most `max_rank`, components in a fixed order.
pub fn all_types_up_to(max_rank: usize) -> Vec<LieTypeSpec> {
    let irreducible = LieTypeSpec::irreducible_up_to(max_rank);
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::new(), 0usize)];
    while let Some((from, comps, rank)) = stack.pop() {
        if !comps.is_empty() {
            out.push(LieTypeSpec { components: comps.clone() });
        }
        for (k, t) in irreducible.iter().enumerate().skip(from) {
            let r = t.rank();
            if rank + r <= max_rank {
                let mut next = comps.clone();
                next.extend(t.components.iter().copied());
                stack.push((k, next, rank + r));
            }
        }
    }
    out.sort_by_key(|t| (t.rank(), t.to_string()));
    out
}

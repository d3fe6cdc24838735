//! Seeded random instance generators. All outputs are deterministic in
//! the seed, land on an integer grid, and satisfy the general-position
//! requirements by construction (rejection sampling against the used
//! coordinate sets).

use crate::model::{MultitoleranceVertex, ShadowRepresentation, ToleranceVertex, Tolerances};
use crate::rational::rat_int;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::collections::BTreeSet;

/// Random tolerance representation: `n` vertices on an integer grid, a
/// vertex becoming unbounded with roughly the given percentage (0..=100).
/// Distinctness of all derived endpoint coordinates and side cotangents
/// is guaranteed by rejection.
pub fn generate_tolerance(seed: u64, n: usize, unbounded_percent: u32) -> Vec<ToleranceVertex> {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 6 * n as i64 + 4;
    let mut lower_line: BTreeSet<i64> = BTreeSet::new(); // l and r - t values
    let mut upper_line: BTreeSet<i64> = BTreeSet::new(); // l + t and r values
    let mut cots: BTreeSet<i64> = BTreeSet::new(); // t, or r - l for unbounded
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let l = rng.gen_range(0..span);
            let w = rng.gen_range(1..=(span / 2));
            let r = l + w;
            let unbounded = rng.gen_range(0..100) < unbounded_percent;
            let t = if unbounded { w + 1 + rng.gen_range(0..span) } else { rng.gen_range(1..=w) };
            let (a, d) = if unbounded { (l, l) } else { (l, r - t) };
            let (c, b) = if unbounded { (r, r) } else { (l + t, r) };
            let cot = if unbounded { r - l } else { t };
            let lower_ok = if a == d {
                !lower_line.contains(&a)
            } else {
                !lower_line.contains(&a) && !lower_line.contains(&d)
            };
            let upper_ok = if c == b {
                !upper_line.contains(&c)
            } else {
                !upper_line.contains(&c) && !upper_line.contains(&b)
            };
            if lower_ok && upper_ok && !cots.contains(&cot) {
                lower_line.insert(a);
                lower_line.insert(d);
                upper_line.insert(c);
                upper_line.insert(b);
                cots.insert(cot);
                out.push(ToleranceVertex {
                    id: format!("v{k}"),
                    l: rat_int(l),
                    r: rat_int(r),
                    t: rat_int(t),
                });
                break;
            }
        }
    }
    out
}

/// Random multitolerance representation on an integer grid, same
/// distinctness guarantees; unbounded vertices carry the unbounded mark.
pub fn generate_multitolerance(
    seed: u64,
    n: usize,
    unbounded_percent: u32,
) -> Vec<MultitoleranceVertex> {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let span = 8 * n as i64 + 6;
    let mut lower_line: BTreeSet<i64> = BTreeSet::new(); // a = l, d = rt
    let mut upper_line: BTreeSet<i64> = BTreeSet::new(); // c = lt, b = r
    let mut cots: BTreeSet<i64> = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        loop {
            let l = rng.gen_range(0..span);
            let w = rng.gen_range(2..=(span / 2));
            let r = l + w;
            let unbounded = rng.gen_range(0..100) < unbounded_percent;
            if unbounded {
                let cot = r - l;
                if !lower_line.contains(&l) && !upper_line.contains(&r) && !cots.contains(&cot) {
                    lower_line.insert(l);
                    upper_line.insert(r);
                    cots.insert(cot);
                    out.push(MultitoleranceVertex {
                        id: format!("v{k}"),
                        l: rat_int(l),
                        r: rat_int(r),
                        tol: Tolerances::Unbounded,
                    });
                    break;
                }
                continue;
            }
            let lt = l + rng.gen_range(0..w); // lt < r keeps endpoint diagonals distinct
            let rt = l + rng.gen_range(1..=w); // a = l < d = rt keeps segments non-vertical
            let (cot1, cot2) = (lt - l, r - rt);
            if lower_line.contains(&l)
                || lower_line.contains(&rt)
                || upper_line.contains(&lt)
                || upper_line.contains(&r)
                || cot1 == cot2
                || cots.contains(&cot1)
                || cots.contains(&cot2)
            {
                continue;
            }
            lower_line.insert(l);
            lower_line.insert(rt);
            upper_line.insert(lt);
            upper_line.insert(r);
            cots.insert(cot1);
            cots.insert(cot2);
            out.push(MultitoleranceVertex {
                id: format!("v{k}"),
                l: rat_int(l),
                r: rat_int(r),
                tol: Tolerances::Bounded { lt: rat_int(lt), rt: rat_int(rt) },
            });
            break;
        }
    }
    out
}

/// Random horizontal shadow representation with `total` elements, derived
/// from a random tolerance representation.
pub fn generate_horizontal_rep(seed: u64, total: usize, unbounded_percent: u32) -> ShadowRepresentation {
    let vs = generate_tolerance(seed, total, unbounded_percent);
    crate::model::verify_tolerance_fidelity(&vs).expect("generated instances are faithful")
}

/// Like `generate_horizontal_rep`, but retries seeds (deterministically)
/// until the derived graph is connected.
pub fn generate_connected_rep(
    seed: u64,
    total: usize,
    unbounded_percent: u32,
) -> ShadowRepresentation {
    let mut s = seed;
    loop {
        let rep = generate_horizontal_rep(s, total, unbounded_percent);
        let arena = crate::model::Arena::from_representation(&rep).expect("small instance");
        if arena.components().len() == 1 {
            return rep;
        }
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    }
}

/// The running three-vertex example: two bounded vertices and one
/// unbounded vertex forming a triangle.
pub fn example_triangle() -> Vec<ToleranceVertex> {
    use crate::rational::rat;
    vec![
        ToleranceVertex { id: "u".into(), l: rat_int(0), r: rat_int(4), t: rat_int(1) },
        ToleranceVertex { id: "v".into(), l: rat_int(2), r: rat_int(8), t: rat(5, 2) },
        ToleranceVertex { id: "w".into(), l: rat(29, 10), r: rat(59, 10), t: rat_int(10) },
    ]
}

/// Random valid crossing pairs of a horizontal representation, chosen
/// uniformly from the enumerated valid pairs. Returns
/// `(j, j2, i, i2)` ids, or `None` when there are no segments.
pub fn random_crossing_pairs(
    rep: &ShadowRepresentation,
    seed: u64,
) -> Option<(String, String, String, String)> {
    if rep.segments.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51ab_3c44);
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for (ja, sa) in &rep.segments {
        for (jb, sb) in &rep.segments {
            if crate::geometry::is_left_crossing_pair(sa, sb) {
                lefts.push((ja.clone(), jb.clone()));
            }
            if crate::geometry::is_right_crossing_pair(sa, sb) {
                rights.push((ja.clone(), jb.clone()));
            }
        }
    }
    let (j, j2) = lefts[rng.gen_range(0..lefts.len())].clone();
    let (i, i2) = rights[rng.gen_range(0..rights.len())].clone();
    Some((j, j2, i, i2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = generate_tolerance(1, 5, 40);
        let b = generate_tolerance(1, 5, 40);
        assert_eq!(a, b);
        let c = generate_multitolerance(1, 5, 40);
        let d = generate_multitolerance(1, 5, 40);
        assert_eq!(c, d);
    }

    #[test]
    fn single_vertex() {
        assert_eq!(generate_tolerance(7, 1, 0).len(), 1);
    }

    #[test]
    fn generated_instances_validate() {
        for seed in 0..30 {
            let vs = generate_tolerance(seed, 6, 35);
            let rep = crate::model::verify_tolerance_fidelity(&vs).unwrap();
            rep.validate().unwrap();
            assert!(rep.horizontal);
            let ms = generate_multitolerance(seed, 5, 30);
            let mrep = crate::model::verify_multitolerance_fidelity(&ms).unwrap();
            mrep.validate().unwrap();
        }
    }
}

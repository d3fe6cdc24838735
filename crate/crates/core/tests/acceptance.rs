//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see
//! the lines; every criterion is exact (no tolerances — all arithmetic
//! is rational).

use std::collections::BTreeSet;
use std::time::Instant;
use toldom::bounded_ds::{solve_bounded_ds, DomSolution, Rep, SolveOutcome};
use toldom::dominating_ds::{is_normalized, solve_min_dominating_set, ComponentMethod};
use toldom::formats;
use toldom::generate::{
    generate_connected_rep, generate_horizontal_rep, generate_multitolerance,
    generate_tolerance, random_crossing_pairs,
};
use toldom::hardness::{check_l_reduction, generate_s3sc, reduce_f, validate_s3sc};
use toldom::model::{
    canonicalize, is_canonical, shadow_adjacent, verify_multitolerance_fidelity,
    verify_tolerance_fidelity, Arena,
};
use toldom::oracle::{brute_min_dominating_set, OracleBudget, PairConstraints};
use toldom::restricted_ds::{solve_restricted, RestrictedOutcome};

fn pass(name: &str, detail: String) {
    println!("PASS {name}: {detail}");
}

/// Criterion 1 — model fidelity: on 500 tolerance and 500 multitolerance
/// instances, definitional adjacency, shadow adjacency and the trapezoid
/// oracle agree on every pair. Zero mismatches.
#[test]
fn criterion_1_model_fidelity() {
    let start = Instant::now();
    for seed in 0..500u64 {
        let n = 1 + (seed % 12) as usize;
        let vs = generate_tolerance(seed, n, (seed * 13 % 70) as u32);
        verify_tolerance_fidelity(&vs).expect("tolerance fidelity");
    }
    for seed in 0..500u64 {
        let n = 1 + (seed % 10) as usize;
        let vs = generate_multitolerance(seed, n, (seed * 11 % 70) as u32);
        verify_multitolerance_fidelity(&vs).expect("multitolerance fidelity");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "fidelity sweep took {elapsed:?}");
    pass(
        "criterion 1 (model fidelity)",
        format!("500 + 500 instances, zero mismatches, {elapsed:?}"),
    );
}

/// Criterion 2 — geometric invariants: slope bounds on every constructed
/// segment; hoverer neighborhood containment and the existence of a
/// bounded hoverer on canonicalized samples. Zero violations.
#[test]
fn criterion_2_geometric_invariants() {
    let mut canonical_points = 0usize;
    for seed in 0..300u64 {
        let n = 1 + (seed % 10) as usize;
        let vs = generate_tolerance(seed ^ 0xc0ffee, n, (seed * 7 % 80) as u32);
        let rep = verify_tolerance_fidelity(&vs).unwrap();
        for (_, s) in &rep.segments {
            assert!(s.right().x >= s.left().x);
            assert!(&s.right().y - &s.left().y <= &s.right().x - &s.left().x);
        }
        let canon = canonicalize(&rep);
        assert!(is_canonical(&canon));
        // adjacency preserved by canonicalization
        let ids = rep.ids();
        for a in &ids {
            for b in &ids {
                if a < b {
                    assert_eq!(
                        shadow_adjacent(&rep, a, b).unwrap(),
                        shadow_adjacent(&canon, a, b).unwrap()
                    );
                }
            }
        }
        for (pid, p) in &canon.points {
            canonical_points += 1;
            // collect hoverers in the canonicalized representation
            let mut bounded_hoverer = false;
            for oid in &ids {
                if oid == pid {
                    continue;
                }
                let hovering = match canon.shape_of(oid).unwrap() {
                    toldom::geometry::Shape::Point(q) => {
                        toldom::geometry::point_in_shadow(p, &q)
                    }
                    toldom::geometry::Shape::Segment(sg) => {
                        toldom::geometry::shape_meets_point_shadow(
                            p,
                            &toldom::geometry::Shape::Segment(sg),
                        )
                    }
                };
                if !hovering {
                    continue;
                }
                if matches!(
                    canon.shape_of(oid).unwrap(),
                    toldom::geometry::Shape::Segment(_)
                ) {
                    bounded_hoverer = true;
                }
                // neighborhood containment: N(point) inside N(hoverer)
                for wid in &ids {
                    if wid == pid || wid == oid {
                        continue;
                    }
                    if shadow_adjacent(&canon, pid, wid).unwrap() {
                        assert!(
                            shadow_adjacent(&canon, oid, wid).unwrap(),
                            "hoverer {oid} misses neighbor {wid} of {pid}"
                        );
                    }
                }
            }
            assert!(bounded_hoverer, "canonical point {pid} lacks a bounded hoverer");
        }
    }
    pass(
        "criterion 2 (geometric invariants)",
        format!("300 canonicalized samples, {canonical_points} inevitable points checked, zero violations"),
    );
}

/// Criterion 3 — segment solver vs oracle on 300 instances with at most
/// eight elements: size equality, infeasible exactly when the segments
/// fail to dominate.
#[test]
fn criterion_3_bounded_vs_oracle() {
    let start = Instant::now();
    let budget = OracleBudget::with_max(16);
    let mut infeasible = 0usize;
    for seed in 0..300u64 {
        let total = 2 + (seed % 7) as usize; // 2..=8
        let rep = generate_horizontal_rep(seed, total, (seed * 13 % 85) as u32);
        let arena = Arena::from_representation(&rep).unwrap();
        let view = Rep::new(&arena, arena.full_mask());
        let oracle = brute_min_dominating_set(
            &arena,
            &view,
            view.seg_mask,
            arena.full_mask(),
            &PairConstraints::default(),
            &budget,
        )
        .unwrap();
        match (solve_bounded_ds(&rep).unwrap(), oracle) {
            (SolveOutcome::Solution(ids), DomSolution::Feasible(m)) => {
                assert_eq!(ids.len(), m.count_ones() as usize, "seed {seed}");
                // returned set re-verified dominating
                let mut mask = 0u64;
                for id in &ids {
                    mask |= 1 << arena.index_of(id).unwrap();
                }
                assert!(arena.dominates(mask, arena.full_mask()));
            }
            (SolveOutcome::SegmentsDoNotDominate, DomSolution::Infeasible) => infeasible += 1,
            (got, want) => panic!("seed {seed}: solver {got:?} vs oracle {want:?}"),
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600);
    pass(
        "criterion 3 (segment solver vs oracle)",
        format!("300 instances exact ({infeasible} infeasible), {elapsed:?}"),
    );
}

/// Criterion 4 — restricted solver vs the pair-constrained oracle on 200
/// instances with random valid crossing pairs; finite outputs re-verified
/// for their pair structure.
#[test]
fn criterion_4_restricted_vs_oracle() {
    let start = Instant::now();
    let budget = OracleBudget::with_max(16);
    let mut solved = 0usize;
    for seed in 0..200u64 {
        let total = 2 + (seed % 6) as usize; // 2..=7
        let rep = generate_horizontal_rep(seed.wrapping_add(777), total, (seed * 7 % 30) as u32);
        let Some((j, j2, i, i2)) = random_crossing_pairs(&rep, seed) else {
            continue;
        };
        let arena = Arena::from_representation(&rep).unwrap();
        let view = Rep::new(&arena, arena.full_mask());
        let (aj, aj2, ai, ai2) = (
            arena.index_of(&j).unwrap(),
            arena.index_of(&j2).unwrap(),
            arena.index_of(&i).unwrap(),
            arena.index_of(&i2).unwrap(),
        );
        let cons = PairConstraints { start: Some((aj, aj2)), end: Some((ai, ai2)) };
        let oracle = brute_min_dominating_set(
            &arena,
            &view,
            view.seg_mask,
            arena.full_mask(),
            &cons,
            &budget,
        )
        .unwrap();
        match (solve_restricted(&rep, &j, &j2, &i, &i2).unwrap(), oracle) {
            (RestrictedOutcome::Solution(ids), DomSolution::Feasible(m)) => {
                assert_eq!(ids.len(), m.count_ones() as usize, "seed {seed}");
                // structure re-check: anchors present, members inside both wedges
                let mut mask = 0u64;
                for id in &ids {
                    mask |= 1 << arena.index_of(id).unwrap();
                }
                for a in [aj, aj2, ai, ai2] {
                    assert!(mask & (1 << a) != 0, "anchor missing");
                }
                assert!(mask & !view.lright_start_mask(aj, aj2) == 0);
                assert!(mask & !view.lleft_mask(ai, ai2) == 0);
                assert!(arena.dominates(mask, arena.full_mask()));
                solved += 1;
            }
            (RestrictedOutcome::Infeasible(_), DomSolution::Infeasible) => {}
            (got, want) => panic!("seed {seed}: solver {got:?} vs oracle {want:?}"),
        }
    }
    // second pass: pairs read off the unconstrained optimum, which are
    // feasible by construction, to exercise the solving path deeply
    let mut structured = 0usize;
    for seed in 0..100u64 {
        let total = 2 + (seed % 6) as usize;
        let rep = generate_horizontal_rep(seed.wrapping_add(4242), total, (seed * 7 % 40) as u32);
        let arena = Arena::from_representation(&rep).unwrap();
        let view = Rep::new(&arena, arena.full_mask());
        let free = brute_min_dominating_set(
            &arena,
            &view,
            view.seg_mask,
            arena.full_mask(),
            &PairConstraints::default(),
            &budget,
        )
        .unwrap();
        let Some(zmask) = free.mask() else { continue };
        if zmask == 0 {
            continue;
        }
        // start-pair: leftmost left endpoint and highest-diagonal left
        // endpoint; end-pair: rightmost right endpoint and lowest-diagonal
        // right endpoint
        let members: Vec<usize> = (0..arena.len()).filter(|k| zmask & (1 << k) != 0).collect();
        let coords = |k: usize| match &arena.shapes[k] {
            toldom::geometry::Shape::Segment(sg) => (
                sg.left().x.clone(),
                sg.left().diag(),
                sg.right().x.clone(),
                sg.right().diag(),
            ),
            _ => unreachable!(),
        };
        let j = *members.iter().min_by_key(|&&k| coords(k).0).unwrap();
        let j2 = *members.iter().max_by_key(|&&k| coords(k).1).unwrap();
        let i = *members.iter().max_by_key(|&&k| coords(k).2).unwrap();
        let i2 = *members.iter().min_by_key(|&&k| coords(k).3).unwrap();
        let cons = PairConstraints { start: Some((j, j2)), end: Some((i, i2)) };
        let oracle = brute_min_dominating_set(
            &arena,
            &view,
            view.seg_mask,
            arena.full_mask(),
            &cons,
            &budget,
        )
        .unwrap();
        let got = solve_restricted(
            &rep,
            &arena.ids[j],
            &arena.ids[j2],
            &arena.ids[i],
            &arena.ids[i2],
        )
        .unwrap();
        match (got, oracle) {
            (RestrictedOutcome::Solution(ids), DomSolution::Feasible(m)) => {
                assert_eq!(ids.len(), m.count_ones() as usize, "structured seed {seed}");
                structured += 1;
            }
            (RestrictedOutcome::Infeasible(_), DomSolution::Infeasible) => {}
            (got, want) => panic!("structured seed {seed}: solver {got:?} vs oracle {want:?}"),
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 600);
    pass(
        "criterion 4 (restricted solver vs oracle)",
        format!("200 random-pair instances exact ({solved} feasible) + 100 optimum-derived pair instances ({structured} feasible), {elapsed:?}"),
    );
}

/// Criterion 5 — full solver vs oracle on 200 connected canonical
/// instances with at most six elements; every output verified dominating
/// and normalized.
#[test]
fn criterion_5_dominating_vs_oracle() {
    let start = Instant::now();
    let budget = OracleBudget::with_max(16);
    for seed in 0..200u64 {
        let total = 2 + (seed % 5) as usize; // 2..=6
        let rep = canonicalize(&generate_connected_rep(
            seed.wrapping_add(31),
            total,
            (seed * 17 % 90) as u32,
        ));
        assert!(is_canonical(&rep));
        let arena = Arena::from_representation(&rep).unwrap();
        let view = Rep::new(&arena, arena.full_mask());
        let per_instance = Instant::now();
        let report = solve_min_dominating_set(&rep).unwrap();
        assert!(per_instance.elapsed().as_secs() < 60, "seed {seed} too slow");
        let oracle = brute_min_dominating_set(
            &arena,
            &view,
            arena.full_mask(),
            arena.full_mask(),
            &PairConstraints::default(),
            &budget,
        )
        .unwrap();
        let osize = oracle.mask().map(|m| m.count_ones() as usize).unwrap();
        assert_eq!(report.solution.len(), osize, "seed {seed}");
        let mut mask = 0u64;
        for id in &report.solution {
            mask |= 1 << arena.index_of(id).unwrap();
        }
        assert!(arena.dominates(mask, arena.full_mask()), "seed {seed} not dominating");
        assert!(is_normalized(&rep, &report.solution).unwrap(), "seed {seed} not normalized");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 3600);
    pass(
        "criterion 5 (full solver vs oracle)",
        format!("200 connected canonical instances exact, {elapsed:?}"),
    );
}

/// Criterion 6 — reduction validity for gadget counts 2 and 4: the shadow
/// pattern of every set segment, the pendant's single neighbor, the
/// optimum shift by exactly one (mandatory at the small size, within
/// budget at the larger), and the one-sided error bound over 50 sampled
/// feasible dominating sets.
#[test]
fn criterion_6_reduction_validity() {
    let budget = OracleBudget::with_max(26);
    let mut details = Vec::new();
    for (mi, m) in [2usize, 4].into_iter().enumerate() {
        let inst = generate_s3sc(mi as u64 + 1, m);
        validate_s3sc(&inst).unwrap();
        // (a) + (b): hard post-conditions of reduce_f
        let out = reduce_f(&inst).unwrap();
        assert_eq!(out.rep.points.len(), inst.n + 4 * inst.m);
        assert_eq!(out.rep.segments.len(), 5 * inst.m + 2);
        // (c) + (d)
        let report = check_l_reduction(&inst, 50, &budget).unwrap();
        assert!(report.optimum_shift_holds, "m={m}: {report:?}");
        assert!(report.alpha_bound_holds, "m={m}");
        assert_eq!(report.beta_samples, 50);
        assert!(report.beta_bound_holds, "m={m}");
        if m == 2 {
            assert!(report.cross_checked_full_pool, "the small size must cross-check both pools");
        }
        details.push(format!(
            "m={m}: cover optimum {}, domination optimum {}{}",
            report.opt_cover,
            report.opt_domination,
            if report.cross_checked_full_pool { " (full-pool cross-checked)" } else { "" }
        ));
    }
    pass("criterion 6 (reduction validity)", details.join("; "));
}

/// Criterion 7 — determinism and serialization: identical seeds and flags
/// give byte-identical solution documents, and canonical JSON round-trips
/// exactly on 1000 random documents.
#[test]
fn criterion_7_determinism_serialization() {
    // byte-identical solves
    for seed in 0..20u64 {
        let rep = generate_horizontal_rep(seed, 2 + (seed % 5) as usize, 30);
        let run = || {
            let report = solve_min_dominating_set(&rep).unwrap();
            formats::to_json(&formats::solution_doc("ds", &rep, &report.solution, None))
        };
        assert_eq!(run(), run(), "seed {seed} not deterministic");
        let bds = || match solve_bounded_ds(&rep).unwrap() {
            SolveOutcome::Solution(ids) => {
                formats::to_json(&formats::solution_doc("bds", &rep, &ids, None))
            }
            SolveOutcome::SegmentsDoNotDominate => {
                formats::to_json(&formats::infeasible_doc("bds", "L does not dominate (P,L)"))
            }
        };
        assert_eq!(bds(), bds());
    }
    // exact round-trips over all five kinds
    let mut shadows_checked = 0usize;
    for seed in 0..1000u64 {
        let doc = match seed % 5 {
            0 => formats::tolerance_to_doc(&generate_tolerance(seed, 1 + (seed % 8) as usize, 40)),
            1 => formats::multitolerance_to_doc(&generate_multitolerance(
                seed,
                1 + (seed % 8) as usize,
                40,
            )),
            2 => {
                shadows_checked += 1;
                formats::shadow_to_doc(&generate_horizontal_rep(seed, 1 + (seed % 6) as usize, 40))
            }
            3 => formats::s3sc_to_doc(&generate_s3sc(seed, 2 + 2 * (seed % 3) as usize)),
            _ => {
                let rep = generate_horizontal_rep(seed, 1 + (seed % 5) as usize, 40);
                let report = solve_min_dominating_set(&rep).unwrap();
                formats::solution_doc("ds", &rep, &report.solution, None)
            }
        };
        let text = formats::to_json(&doc);
        let back = formats::from_json(&text).unwrap();
        assert_eq!(doc, back, "seed {seed} round-trip");
        assert_eq!(formats::to_json(&back), text, "seed {seed} bytes");
    }
    pass(
        "criterion 7 (determinism and serialization)",
        format!("20 double-solves byte-identical; 1000 documents round-tripped ({shadows_checked} shadow)"),
    );
}

/// Criterion 8 — degenerate handling: point-free inputs route to the
/// segment solver, segment-free inputs return all points, disconnected
/// inputs are solved per component with the union matching the oracle.
#[test]
fn criterion_8_degenerate_handling() {
    let budget = OracleBudget::with_max(16);
    // segment-free representation: the points themselves
    let pts_only = verify_tolerance_fidelity(&generate_tolerance(5, 4, 100)).unwrap();
    assert!(pts_only.segments.is_empty());
    let report = solve_min_dominating_set(&pts_only).unwrap();
    assert_eq!(report.solution.len(), pts_only.points.len());
    assert!(report
        .components
        .iter()
        .all(|c| c.method == ComponentMethod::PointsOnly));
    // point-free representation: routed to the segment solver
    let segs_only = verify_tolerance_fidelity(&generate_tolerance(6, 4, 0)).unwrap();
    assert!(segs_only.points.is_empty());
    let report = solve_min_dominating_set(&segs_only).unwrap();
    assert!(report
        .components
        .iter()
        .all(|c| c.method == ComponentMethod::SegmentsOnly));
    // disconnected inputs, union equal to the oracle optimum
    let mut checked = 0usize;
    let mut seed = 0u64;
    while checked < 50 {
        seed += 1;
        let rep = generate_horizontal_rep(seed.wrapping_mul(97), 5 + (seed % 3) as usize, 40);
        let arena = Arena::from_representation(&rep).unwrap();
        if arena.components().len() < 2 {
            continue;
        }
        let report = solve_min_dominating_set(&rep).unwrap();
        let oracle = brute_min_dominating_set(
            &arena,
            &Rep::new(&arena, arena.full_mask()),
            arena.full_mask(),
            arena.full_mask(),
            &PairConstraints::default(),
            &budget,
        )
        .unwrap();
        assert_eq!(
            report.solution.len(),
            oracle.mask().unwrap().count_ones() as usize,
            "seed {seed}"
        );
        let mut mask = 0u64;
        for id in &report.solution {
            mask |= 1 << arena.index_of(id).unwrap();
        }
        assert!(arena.dominates(mask, arena.full_mask()));
        checked += 1;
    }
    // a single isolated point is its own dominating set
    let lone = verify_tolerance_fidelity(&generate_tolerance(9, 1, 100)).unwrap();
    let report = solve_min_dominating_set(&lone).unwrap();
    assert_eq!(report.solution, lone.points.iter().map(|(i, _)| i.clone()).collect::<BTreeSet<_>>());
    pass(
        "criterion 8 (degenerate handling)",
        "routing verified; 50 disconnected instances match the oracle".to_string(),
    );
}

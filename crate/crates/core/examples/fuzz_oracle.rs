//! Developer fuzz loop: solvers vs the exhaustive oracle.
//!
//! Usage: `cargo run --release --example fuzz_oracle [bds|rbds|ds|all] [count]`

use toldom::bounded_ds::{solve_bounded_ds, DomSolution, Rep, SolveOutcome};
use toldom::dominating_ds::solve_min_dominating_set;
use toldom::generate::{generate_connected_rep, generate_horizontal_rep, random_crossing_pairs};
use toldom::model::{canonicalize, Arena};
use toldom::oracle::{brute_min_dominating_set, OracleBudget, PairConstraints};
use toldom::restricted_ds::{solve_restricted, RestrictedOutcome};

fn main() {
    let budget = OracleBudget::with_max(16);
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("all");
    let count: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(300);
    let mut bad = 0u32;

    if which == "bds" || which == "all" {
        for seed in 0..count {
            let total = 2 + (seed % 7) as usize;
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
            let solved = solve_bounded_ds(&rep).unwrap();
            match (&solved, &oracle) {
                (SolveOutcome::Solution(ids), DomSolution::Feasible(m)) => {
                    if ids.len() != m.count_ones() as usize {
                        bad += 1;
                        println!(
                            "BDS mismatch seed {seed}: solver {} oracle {}",
                            ids.len(),
                            m.count_ones()
                        );
                        println!("  rep: {rep:?}");
                    }
                }
                (SolveOutcome::SegmentsDoNotDominate, DomSolution::Infeasible) => {}
                other => {
                    bad += 1;
                    println!("BDS outcome mismatch seed {seed}: {other:?}");
                }
            }
        }
        println!("bds sweep done ({count})");
    }

    if which == "rbds" || which == "all" {
        for seed in 0..count {
            let total = 2 + (seed % 6) as usize;
            let rep = generate_horizontal_rep(seed.wrapping_add(777), total, (seed * 11 % 80) as u32);
            let Some((j, j2, i, i2)) = random_crossing_pairs(&rep, seed) else { continue };
            let arena = Arena::from_representation(&rep).unwrap();
            let view = Rep::new(&arena, arena.full_mask());
            let cons = PairConstraints {
                start: Some((arena.index_of(&j).unwrap(), arena.index_of(&j2).unwrap())),
                end: Some((arena.index_of(&i).unwrap(), arena.index_of(&i2).unwrap())),
            };
            let oracle = brute_min_dominating_set(
                &arena,
                &view,
                view.seg_mask,
                arena.full_mask(),
                &cons,
                &budget,
            )
            .unwrap();
            let solved = solve_restricted(&rep, &j, &j2, &i, &i2).unwrap();
            match (&solved, &oracle) {
                (RestrictedOutcome::Solution(ids), DomSolution::Feasible(m)) => {
                    if ids.len() != m.count_ones() as usize {
                        bad += 1;
                        println!(
                            "RBDS mismatch seed {seed} pairs ({j},{j2},{i},{i2}): solver {} oracle {}",
                            ids.len(),
                            m.count_ones()
                        );
                        println!("  rep: {rep:?}");
                    }
                }
                (RestrictedOutcome::Infeasible(_), DomSolution::Infeasible) => {}
                other => {
                    bad += 1;
                    println!("RBDS outcome mismatch seed {seed} pairs ({j},{j2},{i},{i2}): {other:?}");
                    println!("  rep: {rep:?}");
                }
            }
        }
        println!("rbds sweep done ({count})");
    }

    if which == "ds" || which == "all" {
        for seed in 0..count {
            let total = 2 + (seed % 6) as usize;
            let rep = canonicalize(&generate_connected_rep(seed.wrapping_add(31), total, (seed * 17 % 90) as u32));
            let arena = Arena::from_representation(&rep).unwrap();
            let view = Rep::new(&arena, arena.full_mask());
            let oracle = brute_min_dominating_set(
                &arena,
                &view,
                arena.full_mask(),
                arena.full_mask(),
                &PairConstraints::default(),
                &budget,
            )
            .unwrap();
            let report = solve_min_dominating_set(&rep).unwrap();
            let osize = match oracle {
                DomSolution::Feasible(m) => m.count_ones() as usize,
                DomSolution::Infeasible => unreachable!(),
            };
            if report.solution.len() != osize {
                bad += 1;
                println!(
                    "DS mismatch seed {seed}: solver {} oracle {}",
                    report.solution.len(),
                    osize
                );
                println!("  rep: {rep:?}");
            }
        }
        println!("ds sweep done ({count})");
    }
    println!("total mismatches: {bad}");
    std::process::exit(if bad == 0 { 0 } else { 1 });
}

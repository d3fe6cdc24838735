//! Independent reference solvers used by the test and acceptance suites:
//! exhaustive minimum dominating set (optionally pair-constrained) and
//! exhaustive minimum set cover. These never share code with the table
//! solvers they check.

use crate::bounded_ds::{lex_less, DomSolution, Rep};
use crate::hardness::S3scInstance;
use crate::model::Arena;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("budget exceeded: {0} elements in the enumeration pool, limit {1}")]
    TooManyElements(usize, usize),
    #[error("budget exceeded: time cap hit after {0:?}")]
    TimeCap(Duration),
}

/// Enumeration limits. The element limit refuses instances outright; the
/// optional time cap aborts a running enumeration.
#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub max_elements: usize,
    pub time_cap: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_elements: 14, time_cap: None }
    }
}

impl OracleBudget {
    /// Default budget, overridable through `TOLDOM_ORACLE_MAX`.
    pub fn from_env() -> Self {
        let mut b = OracleBudget::default();
        if let Ok(v) = std::env::var("TOLDOM_ORACLE_MAX") {
            if let Ok(n) = v.trim().parse::<usize>() {
                b.max_elements = n;
            }
        }
        b
    }

    pub fn with_max(max_elements: usize) -> Self {
        OracleBudget { max_elements, time_cap: None }
    }
}

/// Optional structural constraints on candidate sets, matching the
/// restricted problem: a prescribed start-pair and/or end-pair.
#[derive(Clone, Copy, Debug, Default)]
pub struct PairConstraints {
    pub start: Option<(usize, usize)>,
    pub end: Option<(usize, usize)>,
}

fn satisfies_constraints(rep: &Rep, cons: &PairConstraints, mask: u64) -> bool {
    if let Some((j, j2)) = cons.start {
        if mask & (1 << j) == 0 || mask & (1 << j2) == 0 {
            return false;
        }
        // every member inside the lower-right wedge of the start anchor
        let wedge = rep.lright_start_mask(j, j2);
        if mask & !wedge != 0 {
            return false;
        }
    }
    if let Some((i, i2)) = cons.end {
        if mask & (1 << i) == 0 || mask & (1 << i2) == 0 {
            return false;
        }
        let wedge = rep.lleft_mask(i, i2);
        if mask & !wedge != 0 {
            return false;
        }
    }
    true
}

/// Exhaustive minimum dominating set: subsets of `pool` are enumerated in
/// (size, lexicographic) order and the first one dominating every element
/// of `targets` while satisfying the constraints wins, mirroring the
/// solvers' tie-breaking.
pub fn brute_min_dominating_set(
    arena: &Arena,
    rep: &Rep,
    pool: u64,
    targets: u64,
    cons: &PairConstraints,
    budget: &OracleBudget,
) -> Result<DomSolution, OracleError> {
    let items: Vec<usize> = (0..arena.len()).filter(|i| pool & (1 << i) != 0).collect();
    if items.len() > budget.max_elements {
        return Err(OracleError::TooManyElements(items.len(), budget.max_elements));
    }
    let start = Instant::now();
    for k in 0..=items.len() {
        let mut found: Option<u64> = None;
        combinations(&items, k, &mut |mask| {
            if let Some(cap) = budget.time_cap {
                if start.elapsed() > cap {
                    return Err(OracleError::TimeCap(cap));
                }
            }
            if satisfies_constraints(rep, cons, mask) && arena.dominates(mask, targets) {
                match found {
                    None => found = Some(mask),
                    Some(prev) if lex_less(mask, prev) => found = Some(mask),
                    _ => {}
                }
            }
            Ok(())
        })?;
        if let Some(mask) = found {
            return Ok(DomSolution::Feasible(mask));
        }
    }
    Ok(DomSolution::Infeasible)
}

/// All k-subsets of `items`, visited in lexicographic order of the index
/// sequences (which is also ascending mask-lex order because `items` is
/// sorted ascending).
fn combinations<E>(
    items: &[usize],
    k: usize,
    f: &mut impl FnMut(u64) -> Result<(), E>,
) -> Result<(), E> {
    fn rec<E>(
        items: &[usize],
        k: usize,
        from: usize,
        acc: u64,
        f: &mut impl FnMut(u64) -> Result<(), E>,
    ) -> Result<(), E> {
        if k == 0 {
            return f(acc);
        }
        for idx in from..=(items.len() - k) {
            rec(items, k - 1, idx + 1, acc | (1 << items[idx]), f)?;
        }
        Ok(())
    }
    if k > items.len() {
        return Ok(());
    }
    rec(items, k, 0, 0, f)
}

/// Exhaustive minimum set cover for a structured cover instance. Returns
/// the optimum size and the lexicographically first witness of that size
/// (set indices).
pub fn brute_min_set_cover(
    inst: &S3scInstance,
    budget: &OracleBudget,
) -> Result<(usize, Vec<usize>), OracleError> {
    let sets = inst.sets_as_masks();
    if sets.len() > budget.max_elements {
        return Err(OracleError::TooManyElements(sets.len(), budget.max_elements));
    }
    let universe = inst.universe_mask();
    let start = Instant::now();
    let idxs: Vec<usize> = (0..sets.len()).collect();
    for k in 0..=sets.len() {
        let mut found: Option<u64> = None;
        combinations(&idxs, k, &mut |mask| {
            if let Some(cap) = budget.time_cap {
                if start.elapsed() > cap {
                    return Err(OracleError::TimeCap(cap));
                }
            }
            let mut covered = 0u64;
            let mut m = mask;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                covered |= sets[i];
                m &= m - 1;
            }
            if covered & universe == universe {
                match found {
                    None => found = Some(mask),
                    Some(prev) if lex_less(mask, prev) => found = Some(mask),
                    _ => {}
                }
            }
            Ok(())
        })?;
        if let Some(mask) = found {
            let witness: Vec<usize> =
                (0..sets.len()).filter(|i| mask & (1 << i) != 0).collect();
            return Ok((k, witness));
        }
    }
    unreachable!("the full family always covers a valid instance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{verify_tolerance_fidelity, ToleranceVertex};
    use crate::rational::{parse_rat, rat, rat_int};

    #[test]
    fn triangle_minimum_is_one() {
        let vs = vec![
            ToleranceVertex { id: "u".into(), l: rat_int(0), r: rat_int(4), t: rat_int(1) },
            ToleranceVertex { id: "v".into(), l: rat_int(2), r: rat_int(8), t: rat(5, 2) },
            ToleranceVertex {
                id: "w".into(),
                l: parse_rat("2.9").unwrap(),
                r: parse_rat("5.9").unwrap(),
                t: rat_int(10),
            },
        ];
        let rep = verify_tolerance_fidelity(&vs).unwrap();
        let arena = Arena::from_representation(&rep).unwrap();
        let view = Rep::new(&arena, arena.full_mask());
        let sol = brute_min_dominating_set(
            &arena,
            &view,
            arena.full_mask(),
            arena.full_mask(),
            &PairConstraints::default(),
            &OracleBudget::default(),
        )
        .unwrap();
        assert_eq!(sol.size(), 1);
    }

    #[test]
    fn empty_pool_on_nonempty_graph() {
        let vs = vec![ToleranceVertex { id: "u".into(), l: rat_int(0), r: rat_int(4), t: rat_int(1) }];
        let rep = verify_tolerance_fidelity(&vs).unwrap();
        let arena = Arena::from_representation(&rep).unwrap();
        let view = Rep::new(&arena, arena.full_mask());
        let sol = brute_min_dominating_set(
            &arena,
            &view,
            0,
            arena.full_mask(),
            &PairConstraints::default(),
            &OracleBudget::default(),
        )
        .unwrap();
        assert_eq!(sol, DomSolution::Infeasible);
    }

    #[test]
    fn optimum_self_consistency() {
        // adding any vertex to an optimum keeps it dominating; removing
        // any vertex breaks domination or optimality
        for seed in [1u64, 4, 9] {
            let vs = crate::generate::generate_tolerance(seed, 5, 30);
            let rep = verify_tolerance_fidelity(&vs).unwrap();
            let arena = Arena::from_representation(&rep).unwrap();
            let view = Rep::new(&arena, arena.full_mask());
            let sol = brute_min_dominating_set(
                &arena,
                &view,
                arena.full_mask(),
                arena.full_mask(),
                &PairConstraints::default(),
                &OracleBudget::default(),
            )
            .unwrap();
            let mask = sol.mask().unwrap();
            for extra in 0..arena.len() {
                assert!(arena.dominates(mask | (1 << extra), arena.full_mask()));
            }
            let mut m = mask;
            while m != 0 {
                let k = m.trailing_zeros() as usize;
                m &= m - 1;
                let smaller = mask & !(1 << k);
                assert!(!arena.dominates(smaller, arena.full_mask()), "dropping one element must break domination of an optimum");
            }
        }
    }

    #[test]
    fn budget_refusal() {
        let vs: Vec<ToleranceVertex> = (0..3)
            .map(|k| ToleranceVertex {
                id: format!("v{k}"),
                l: rat_int(10 * k),
                r: rat_int(10 * k + 4),
                t: rat_int(1 + k),
            })
            .collect();
        let rep = verify_tolerance_fidelity(&vs).unwrap();
        let arena = Arena::from_representation(&rep).unwrap();
        let view = Rep::new(&arena, arena.full_mask());
        let tight = OracleBudget::with_max(2);
        assert!(matches!(
            brute_min_dominating_set(
                &arena,
                &view,
                arena.full_mask(),
                arena.full_mask(),
                &PairConstraints::default(),
                &tight
            ),
            Err(OracleError::TooManyElements(3, 2))
        ));
    }
}

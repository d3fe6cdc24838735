//! Minimum dominating set on tolerance graphs given by a canonical
//! horizontal shadow representation. Solutions may contain unbounded
//! vertices (points), which is what separates this solver from the
//! bounded one.
//!
//! The table entry `D(j, i, i2)` is a minimum *normalized* dominating set
//! of the subview `G_j` (everything strictly left of and diagonally above
//! the point `p_j`) with end-pair `(i, i2)`. A normalized set draws its
//! points from the mutually independent subset `P*` and keeps chosen
//! points clear of their neighbors and hoverers, which splits any
//! solution at its rightmost chosen point into three independently
//! solvable parts: a smaller `D` entry, a run of consecutive `P*` points,
//! and a restricted bounded instance on the remainder.

use crate::bounded_ds::{
    augment_with_point, bd_solve, prefer, BdError, BdKey, BdTable, DomSolution, Rep,
    SolveOutcome, DUMMY_LEFT, DUMMY_POINT, DUMMY_RIGHT,
};
use crate::model::{canonicalize, is_canonical, Arena, ModelError, ShadowRepresentation};
use crate::rational::Rat;
use crate::restricted_ds::{solve_restricted, RdError, RestrictedOutcome};
use crate::geometry::Shape;
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DsError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Bounded(#[from] BdError),
    #[error(transparent)]
    Restricted(#[from] RdError),
}

/// Points not lying in any other point's shadow, in increasing x order.
pub fn compute_p_star(rep: &ShadowRepresentation) -> Vec<String> {
    let mut pts: Vec<(String, crate::geometry::Point)> = rep.points.clone();
    pts.sort_by(|(_, a), (_, b)| a.x.cmp(&b.x));
    pts.iter()
        .filter(|(id, p)| {
            !pts.iter().any(|(oid, o)| oid != id && crate::geometry::point_in_shadow(o, p))
        })
        .map(|(id, _)| id.clone())
        .collect()
}

/// Normalized per the two clauses: chosen points avoid their neighbors
/// and hoverers inside the set, and all chosen points come from `P*`.
pub fn is_normalized(rep: &ShadowRepresentation, set: &BTreeSet<String>) -> Result<bool, DsError> {
    let arena = Arena::from_representation(rep)?;
    let pstar = compute_p_star(rep);
    let mut mask = 0u64;
    for id in set {
        mask |= 1 << arena.index_of(id)?;
    }
    for (i, id) in arena.ids.iter().enumerate() {
        if mask & (1 << i) == 0 {
            continue;
        }
        if matches!(arena.shapes[i], Shape::Point(_)) {
            if (arena.adj[i] | arena.hover[i]) & mask != 0 {
                return Ok(false);
            }
            if !pstar.contains(id) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Solver<'a> {
    arena: &'a Arena,
    delta: Rat,
    /// `P*` as arena indices, ascending x, guard point last
    pstar: Vec<usize>,
    left_dummy: usize,
    right_dummy: usize,
    d_memo: HashMap<(usize, usize, usize), DomSolution>,
    rd_memo: HashMap<(u64, usize, usize, usize, usize), DomSolution>,
    bd_tables: HashMap<u64, BdTable>,
    /// cached element-coordinate data
    min_x: Vec<Rat>,
    max_x: Vec<Rat>,
    dmin: Vec<Rat>,
    dmax: Vec<Rat>,
}

impl<'a> Solver<'a> {
    fn new(arena: &'a Arena, rep: &ShadowRepresentation) -> Result<Self, DsError> {
        let mut points_order: Vec<usize> = (0..arena.len())
            .filter(|&i| matches!(arena.shapes[i], Shape::Point(_)))
            .collect();
        points_order.sort_by(|&a, &b| arena.shapes[a].min_x().cmp(arena.shapes[b].min_x()));
        let pstar_ids = compute_p_star(rep);
        let pstar: Vec<usize> = points_order
            .iter()
            .copied()
            .filter(|&i| pstar_ids.contains(&arena.ids[i]))
            .collect();
        let min_x = (0..arena.len()).map(|i| arena.shapes[i].min_x().clone()).collect();
        let max_x = (0..arena.len()).map(|i| arena.shapes[i].max_x().clone()).collect();
        let dmin = (0..arena.len()).map(|i| arena.shapes[i].diag_min()).collect();
        let dmax = (0..arena.len()).map(|i| arena.shapes[i].diag_max()).collect();
        Ok(Solver {
            arena,
            delta: rep.delta.clone(),
            pstar,
            left_dummy: arena.index_of(DUMMY_LEFT)?,
            right_dummy: arena.index_of(DUMMY_RIGHT)?,
            d_memo: HashMap::new(),
            rd_memo: HashMap::new(),
            bd_tables: HashMap::new(),
            min_x,
            max_x,
            dmin,
            dmax,
        })
    }

    fn point_coords(&self, p: usize) -> (&Rat, &Rat) {
        (&self.min_x[p], &self.dmin[p])
    }

    /// Elements entirely inside the upper-left wedge of `p_j`, excluding
    /// its vertical line: `max_x < p_j.x` and `dmin >= diag(p_j)`.
    fn g_mask(&self, j: usize) -> u64 {
        let (jx, jd) = self.point_coords(j);
        let mut m = 0u64;
        for e in 0..self.arena.len() {
            if self.max_x[e] < *jx && self.dmin[e] >= *jd {
                m |= 1 << e;
            }
        }
        m
    }

    /// Subset of `base` entirely inside the lower-right wedge of point `p`.
    fn lower_right_of_point(&self, base: u64, p: usize) -> u64 {
        let (px, pd) = self.point_coords(p);
        let mut m = 0u64;
        let mut rest = base;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.min_x[e] >= *px && self.dmax[e] <= *pd {
                m |= 1 << e;
            }
        }
        m
    }

    fn seg_right(&self, s: usize) -> (&Rat, &Rat) {
        (&self.max_x[s], &self.dmin[s])
    }

    fn segments_of(&self, mask: u64) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.arena.len())
            .filter(|&e| mask & (1 << e) != 0 && matches!(self.arena.shapes[e], Shape::Segment(_)))
            .collect();
        v.sort_by(|&a, &b| self.max_x[a].cmp(&self.max_x[b]));
        v
    }

    fn right_crossing(&self, i: usize, i2: usize) -> bool {
        let (rix, rid) = self.seg_right(i);
        let (r2x, r2d) = self.seg_right(i2);
        r2x <= rix && r2d <= rid
    }

    fn left_crossing(&self, j: usize, j2: usize) -> bool {
        let (ljx, ljd) = (&self.min_x[j], &self.dmax[j]);
        let (l2x, l2d) = (&self.min_x[j2], &self.dmax[j2]);
        ljx <= l2x && ljd <= l2d
    }

    /// Sub-representation for a mask, ids and shapes carried over.
    fn subrep(&self, mask: u64) -> ShadowRepresentation {
        let mut points = Vec::new();
        let mut segments = Vec::new();
        for e in 0..self.arena.len() {
            if mask & (1 << e) == 0 {
                continue;
            }
            match &self.arena.shapes[e] {
                Shape::Point(p) => points.push((self.arena.ids[e].clone(), p.clone())),
                Shape::Segment(s) => segments.push((self.arena.ids[e].clone(), s.clone())),
            }
        }
        points.sort_by(|(_, a), (_, b)| a.x.cmp(&b.x));
        segments.sort_by(|(_, a), (_, b)| a.right().x.cmp(&b.right().x));
        let horizontal = segments.iter().all(|(_, s)| s.is_horizontal());
        ShadowRepresentation { points, segments, delta: self.delta.clone(), horizontal }
    }

    /// Bounded branch: one window query on the subview `G_j`, anchored at
    /// the left guard and the end-pair grid point.
    fn bd_branch(&mut self, gj: u64, i: usize, i2: usize) -> DomSolution {
        let view = Rep::new(self.arena, gj);
        let (rix, _) = self.seg_right(i);
        let (_, r2d) = self.seg_right(i2);
        let key = BdKey {
            a_d: view.drank(&self.dmax[self.left_dummy]),
            b_x: view.xrank(rix),
            b_d: view.drank(r2d),
            q: self.left_dummy,
            i,
            i2,
        };
        let tab = self.bd_tables.entry(gj).or_default();
        bd_solve(&view, key, tab)
    }

    /// Restricted branch on the subview mask, memoized.
    fn rd_branch(&mut self, mask: u64, w: usize, w2: usize, i: usize, i2: usize) -> DomSolution {
        if let Some(v) = self.rd_memo.get(&(mask, w, w2, i, i2)) {
            return *v;
        }
        let sub = self.subrep(mask);
        let out = solve_restricted(
            &sub,
            &self.arena.ids[w],
            &self.arena.ids[w2],
            &self.arena.ids[i],
            &self.arena.ids[i2],
        );
        let val = match out {
            Ok(RestrictedOutcome::Solution(ids)) => {
                let mut m = 0u64;
                for id in &ids {
                    m |= 1 << self.arena.index_of(id).expect("solution id from the arena");
                }
                DomSolution::Feasible(m)
            }
            Ok(RestrictedOutcome::Infeasible(_)) => DomSolution::Infeasible,
            Err(e) => panic!("restricted subsolve failed: {e}"),
        };
        self.rd_memo.insert((mask, w, w2, i, i2), val);
        val
    }

    fn d_solve(&mut self, j: usize, i: usize, i2: usize) -> DomSolution {
        if let Some(v) = self.d_memo.get(&(j, i, i2)) {
            return *v;
        }
        let gj = self.g_mask(j);
        debug_assert!(gj & (1 << i) != 0 && gj & (1 << i2) != 0 && self.right_crossing(i, i2));
        let result = self.d_compute(j, i, i2, gj);
        self.d_memo.insert((j, i, i2), result);
        result
    }

    fn d_compute(&mut self, j: usize, i: usize, i2: usize, gj: u64) -> DomSolution {
        // feasibility: the end wedge inside the subview must dominate it
        let view = Rep::new(self.arena, gj);
        let lleft = view.lleft_mask(i, i2);
        if !self.arena.dominates(lleft & gj, gj) {
            return DomSolution::Infeasible;
        }
        // prunes: a point beyond the end vertical cannot be dominated, and
        // everything below the end diagonal must already be covered by the
        // end-pair
        let (rix, _) = {
            let (x, d) = self.seg_right(i);
            (x.clone(), d.clone())
        };
        let (_, r2d) = {
            let (x, d) = self.seg_right(i2);
            (x.clone(), d.clone())
        };
        let mut low_strip = 0u64;
        let mut rest = gj;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if matches!(self.arena.shapes[e], Shape::Point(_)) && self.min_x[e] >= rix {
                return DomSolution::Infeasible;
            }
            if self.dmax[e] <= r2d {
                low_strip |= 1 << e;
            }
        }
        if !self.arena.dominates((1 << i) | (1 << i2), low_strip) {
            return DomSolution::Infeasible;
        }

        let mut best = self.bd_branch(gj, i, i2);

        let (jx, _) = {
            let (x, d) = self.point_coords(j);
            (x.clone(), d.clone())
        };
        let pstar_before: Vec<usize> =
            self.pstar.iter().copied().filter(|&p| self.min_x[p] < jx).collect();
        for (q2_pos, &pq2) in pstar_before.iter().enumerate() {
            // the end-pair must be clear of the chosen point's closed
            // neighborhood and hovering set
            if (self.arena.adj[pq2] | self.arena.hover[pq2]) & ((1 << i) | (1 << i2)) != 0 {
                continue;
            }
            let gq2 = self.g_mask(pq2);
            // the chosen point itself sits on the corner of its closed
            // wedge; the restricted sub-instance must not contain it
            let gq2j = self.lower_right_of_point(gj, pq2) & !(1 << pq2);
            if gq2j & (1 << i) == 0 || gq2j & (1 << i2) == 0 {
                continue;
            }
            let zs = self.segments_of(gq2);
            let ws = self.segments_of(gq2j);
            for &z in &zs {
                for &z2 in &zs {
                    if !self.right_crossing(z, z2) {
                        continue;
                    }
                    // ζ is the end grid point of the left part; the first
                    // chooseable point right of it closes the gap
                    let (zeta_x, _) = {
                        let (x, d) = self.seg_right(z);
                        (x.clone(), d.clone())
                    };
                    let (_, zeta_d) = {
                        let (x, d) = self.seg_right(z2);
                        (x.clone(), d.clone())
                    };
                    let q_pos = (0..=q2_pos).find(|&k| {
                        let p = pstar_before[k];
                        self.min_x[p] >= zeta_x && self.dmax[p] <= zeta_d
                    });
                    let q_pos = match q_pos {
                        Some(k) => k,
                        None => continue,
                    };
                    let pq = pstar_before[q_pos];
                    let gq = self.g_mask(pq);
                    if gq & (1 << z) == 0 || gq & (1 << z2) == 0 {
                        continue;
                    }
                    // run of chosen points
                    let mut d2_mask = 0u64;
                    for &p in &pstar_before[q_pos..=q2_pos] {
                        d2_mask |= 1 << p;
                    }
                    // the middle window must be dominated by the run alone
                    let gqq2 = self.lower_right_of_point(gq2, pq);
                    if !self.arena.dominates(d2_mask, gqq2) {
                        continue;
                    }
                    // neighborhood cover of the run
                    let mut covered = d2_mask;
                    let mut m = d2_mask;
                    while m != 0 {
                        let p = m.trailing_zeros() as usize;
                        m &= m - 1;
                        covered |= self.arena.adj[p];
                    }
                    let hover_rest =
                        ((self.arena.hover[pq] | self.arena.hover[pq2]) & gj) & !covered;
                    for &w in &ws {
                        for &w2 in &ws {
                            if !self.left_crossing(w, w2) {
                                continue;
                            }
                            let four = (1u64 << z) | (1 << z2) | (1 << w) | (1 << w2);
                            if !self.arena.dominates(four, hover_rest) {
                                continue;
                            }
                            let rd = self.rd_branch(gq2j, w, w2, i, i2);
                            let rd_mask = match rd {
                                DomSolution::Feasible(m) => m,
                                DomSolution::Infeasible => continue,
                            };
                            let sub = self.d_solve(pq, z, z2);
                            if let DomSolution::Feasible(sm) = sub {
                                best = prefer(
                                    best,
                                    DomSolution::Feasible(sm | d2_mask | rd_mask),
                                );
                            }
                        }
                    }
                }
            }
        }
        best
    }
}

/// How one connected component was solved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentMethod {
    /// No segments: the points themselves are the only dominating set.
    PointsOnly,
    /// No points: routed to the bounded solver.
    SegmentsOnly,
    /// The full table.
    FullTable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub ids: BTreeSet<String>,
    pub chosen: BTreeSet<String>,
    pub method: ComponentMethod,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub solution: BTreeSet<String>,
    pub components: Vec<ComponentReport>,
    /// true when the input (or some component) had to be canonicalized
    pub canonicalized: bool,
}

/// Minimum dominating set over points and segments.
///
/// Disconnected inputs are solved per connected component and the answers
/// united; components are canonicalized individually when needed. Every
/// component's answer is re-verified dominating, and on each connected
/// canonical component the answer is verified normalized as well.
pub fn solve_min_dominating_set(rep: &ShadowRepresentation) -> Result<SolveReport, DsError> {
    rep.validate()?;
    if !rep.horizontal {
        return Err(DsError::Model(ModelError::NotHorizontal));
    }
    let arena = Arena::from_representation(rep)?;
    let mut solution = BTreeSet::new();
    let mut components = Vec::new();
    let mut canonicalized = false;
    for comp_mask in arena.components() {
        let comp_ids = arena.ids_of_mask(comp_mask);
        let mut comp_points = Vec::new();
        let mut comp_segments = Vec::new();
        for id in &comp_ids {
            match rep.shape_of(id)? {
                Shape::Point(p) => comp_points.push((id.clone(), p)),
                Shape::Segment(s) => comp_segments.push((id.clone(), s)),
            }
        }
        comp_points.sort_by(|(_, a), (_, b)| a.x.cmp(&b.x));
        comp_segments.sort_by(|(_, a), (_, b)| a.right().x.cmp(&b.right().x));
        let comp_rep = ShadowRepresentation {
            points: comp_points,
            segments: comp_segments,
            delta: rep.delta.clone(),
            horizontal: true,
        };
        // routing comes before canonicalization: segment-free components
        // are independent sets as given, point-free ones go straight to
        // the segment solver
        let (chosen, method, canon) = if comp_rep.segments.is_empty()
            || comp_rep.points.is_empty()
        {
            let (chosen, method) = solve_component(&comp_rep)?;
            (chosen, method, comp_rep.clone())
        } else {
            let canon = if is_canonical(&comp_rep) {
                comp_rep.clone()
            } else {
                canonicalized = true;
                canonicalize(&comp_rep)
            };
            let (chosen, method) = solve_component(&canon)?;
            (chosen, method, canon)
        };
        // component answers must dominate their component
        let comp_arena = Arena::from_representation(&comp_rep)?;
        let mut chosen_mask = 0u64;
        for id in &chosen {
            chosen_mask |= 1 << comp_arena.index_of(id)?;
        }
        assert!(
            comp_arena.dominates(chosen_mask, comp_arena.full_mask()),
            "component answer does not dominate its component"
        );
        if method == ComponentMethod::FullTable {
            assert!(
                is_normalized(&canon, &chosen)?,
                "component answer is not normalized"
            );
        }
        solution.extend(chosen.iter().cloned());
        components.push(ComponentReport { ids: comp_ids, chosen, method });
    }
    Ok(SolveReport { solution, components, canonicalized })
}

fn solve_component(
    canon: &ShadowRepresentation,
) -> Result<(BTreeSet<String>, ComponentMethod), DsError> {
    if canon.segments.is_empty() {
        // an independent set: every point must be chosen
        return Ok((
            canon.points.iter().map(|(id, _)| id.clone()).collect(),
            ComponentMethod::PointsOnly,
        ));
    }
    if canon.points.is_empty() {
        match crate::bounded_ds::solve_bounded_ds(canon)? {
            SolveOutcome::Solution(ids) => return Ok((ids, ComponentMethod::SegmentsOnly)),
            SolveOutcome::SegmentsDoNotDominate => {
                unreachable!("segments always dominate a point-free representation")
            }
        }
    }
    let augmented = augment_with_point(canon)?;
    let arena = Arena::from_representation(&augmented)?;
    let mut solver = Solver::new(&arena, &augmented)?;
    let dummy_point = arena.index_of(DUMMY_POINT)?;
    assert!(
        solver.pstar.last() == Some(&dummy_point),
        "the guard point must close the chooseable points"
    );
    let right = solver.right_dummy;
    let sol = solver.d_solve(dummy_point, right, right);
    let mask = match sol {
        DomSolution::Feasible(m) => m,
        DomSolution::Infeasible => unreachable!("whole-view entry cannot be infeasible"),
    };
    let stripped = mask & !(1 << solver.left_dummy) & !(1 << solver.right_dummy);
    assert!(stripped & (1 << dummy_point) == 0, "guard point entered the solution");
    Ok((arena.ids_of_mask(stripped), ComponentMethod::FullTable))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{verify_tolerance_fidelity, ToleranceVertex};
    use crate::rational::{parse_rat, rat, rat_int};

    fn e1_rep() -> ShadowRepresentation {
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
        verify_tolerance_fidelity(&vs).unwrap()
    }

    #[test]
    fn p_star_basics() {
        let rep = e1_rep();
        // single point: always in P*
        assert_eq!(compute_p_star(&rep), vec!["w".to_string()]);
    }

    #[test]
    fn p_star_excludes_shadowed_points() {
        // p1 inside the shadow of p2: only p2 remains chooseable
        let rep = ShadowRepresentation {
            points: vec![
                ("p1".into(), crate::geometry::Point::new(rat_int(0), rat_int(0))),
                ("p2".into(), crate::geometry::Point::new(rat_int(3), rat_int(5))),
            ],
            segments: vec![],
            delta: rat_int(1),
            horizontal: true,
        };
        assert_eq!(compute_p_star(&rep), vec!["p2".to_string()]);
    }

    #[test]
    fn normalized_checks() {
        let rep = e1_rep();
        // a segment-only set is vacuously normalized
        assert!(is_normalized(&rep, &["u".to_string()].into_iter().collect()).unwrap());
        assert!(is_normalized(&rep, &BTreeSet::new()).unwrap());
        // w together with a neighbor breaks clause one
        let d: BTreeSet<String> = ["w".to_string(), "u".to_string()].into_iter().collect();
        assert!(!is_normalized(&rep, &d).unwrap());
    }

    #[test]
    fn e1_minimum_dominating_set() {
        let report = solve_min_dominating_set(&e1_rep()).unwrap();
        assert_eq!(report.solution.len(), 1);
        assert_eq!(report.solution, ["u".to_string()].into_iter().collect());
    }

    #[test]
    fn single_point_component() {
        let rep = ShadowRepresentation {
            points: vec![("p".into(), crate::geometry::Point::new(rat_int(0), rat_int(0)))],
            segments: vec![],
            delta: rat_int(1),
            horizontal: true,
        };
        let report = solve_min_dominating_set(&rep).unwrap();
        assert_eq!(report.solution, ["p".to_string()].into_iter().collect());
    }

    #[test]
    fn star_cover() {
        // one long low segment whose shadow covers several points
        let vs = vec![
            ToleranceVertex { id: "s".into(), l: rat_int(0), r: rat_int(40), t: rat_int(1) },
            ToleranceVertex { id: "p1".into(), l: rat_int(3), r: rat_int(9), t: rat_int(30) },
            ToleranceVertex { id: "p2".into(), l: rat_int(11), r: rat_int(16), t: rat_int(31) },
            ToleranceVertex { id: "p3".into(), l: rat_int(21), r: rat_int(26), t: rat_int(32) },
        ];
        let rep = verify_tolerance_fidelity(&vs).unwrap();
        for p in ["p1", "p2", "p3"] {
            assert!(crate::model::shadow_adjacent(&rep, "s", p).unwrap());
        }
        let report = solve_min_dominating_set(&rep).unwrap();
        assert_eq!(report.solution, ["s".to_string()].into_iter().collect());
    }
}

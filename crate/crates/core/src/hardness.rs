//! Structured set-cover instances and their translation into shadow
//! representations whose dominating sets mirror covers.
//!
//! The source problem is a set-cover variant over a universe
//! `A ∪ W ∪ X ∪ Y ∪ Z` whose family consists, per gadget `t`, of the five
//! sets `{a_i, w_t}`, `{w_t, x_t}`, `{a_j, x_t, y_t}`, `{y_t, z_t}`,
//! `{a_k, z_t}` with `i < j < k`, every `A`-element appearing in exactly
//! two sets.
//!
//! The translation places one plane point per universe element and one
//! segment per set such that the points inside a segment's shadow are
//! exactly its set. Geometry used:
//! * `W ∪ X ∪ Y ∪ Z` sit on the descending-diagonal-value line
//!   `y = x/2` (x < 0), clustered so tightly that every set segment lies
//!   right of the whole cluster — its left endpoint then selects the
//!   covered run purely by an x-threshold below and a diagonal threshold
//!   above;
//! * `A`-elements sit on `y = -x` inside `x ∈ (1/3, 1)`, where every
//!   set segment's descent rate lands strictly between the two rates that
//!   would leak a neighboring `A`-point into its shadow;
//! * gaps inside the cluster are sized so that a mixed segment's descent
//!   clears the next cluster point before reaching it.
//!
//! Every placement is re-validated exactly: the per-segment shadow
//! pattern is a hard post-condition, not an assumption.

use crate::geometry::{Point, Segment, Shape};
use crate::model::{shapes_adjacent, Arena, ShadowRepresentation};
use crate::oracle::{brute_min_dominating_set, OracleBudget, OracleError, PairConstraints};
use crate::rational::{rat, rat_int, Rat};
use crate::bounded_ds::{DomSolution, Rep};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HardnessError {
    #[error("invalid instance: {0:?}")]
    InvalidInstance(Vec<String>),
    #[error("construction failed its post-check: {0}")]
    PostCheck(String),
    #[error("the supplied set does not dominate the reduction output")]
    NotDominating,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// One gadget: the indices of the three `A`-elements it touches,
/// `1 <= i < j < k <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// A structured cover instance, determined by its gadget triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3scInstance {
    pub m: usize,
    pub n: usize,
    pub gadgets: Vec<Gadget>,
}

/// Universe element of an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum UElem {
    A(usize),
    W(usize),
    X(usize),
    Y(usize),
    Z(usize),
}

impl UElem {
    pub fn name(&self) -> String {
        match self {
            UElem::A(i) => format!("a{i}"),
            UElem::W(i) => format!("w{i}"),
            UElem::X(i) => format!("x{i}"),
            UElem::Y(i) => format!("y{i}"),
            UElem::Z(i) => format!("z{i}"),
        }
    }
}

impl S3scInstance {
    /// The five sets of gadget `t` (1-based), in family order.
    pub fn sets(&self) -> Vec<Vec<UElem>> {
        let mut out = Vec::with_capacity(5 * self.m);
        for (t0, g) in self.gadgets.iter().enumerate() {
            let t = t0 + 1;
            out.push(vec![UElem::A(g.i), UElem::W(t)]);
            out.push(vec![UElem::W(t), UElem::X(t)]);
            out.push(vec![UElem::A(g.j), UElem::X(t), UElem::Y(t)]);
            out.push(vec![UElem::Y(t), UElem::Z(t)]);
            out.push(vec![UElem::A(g.k), UElem::Z(t)]);
        }
        out
    }

    pub fn universe(&self) -> Vec<UElem> {
        let mut u = Vec::new();
        for i in 1..=self.n {
            u.push(UElem::A(i));
        }
        for t in 1..=self.m {
            u.push(UElem::W(t));
            u.push(UElem::X(t));
            u.push(UElem::Y(t));
            u.push(UElem::Z(t));
        }
        u
    }

    fn elem_index(&self, e: &UElem) -> usize {
        match e {
            UElem::A(i) => i - 1,
            UElem::W(t) => self.n + 4 * (t - 1),
            UElem::X(t) => self.n + 4 * (t - 1) + 1,
            UElem::Y(t) => self.n + 4 * (t - 1) + 2,
            UElem::Z(t) => self.n + 4 * (t - 1) + 3,
        }
    }

    pub fn universe_mask(&self) -> u64 {
        (1u64 << (self.n + 4 * self.m)) - 1
    }

    pub fn sets_as_masks(&self) -> Vec<u64> {
        self.sets()
            .iter()
            .map(|s| s.iter().fold(0u64, |m, e| m | (1 << self.elem_index(e))))
            .collect()
    }
}

/// Structural validation with per-violation diagnostics.
pub fn validate_s3sc(inst: &S3scInstance) -> Result<(), Vec<String>> {
    let mut errs = Vec::new();
    if 2 * inst.n != 3 * inst.m {
        errs.push(format!("size relation violated: 2n = {} but 3m = {}", 2 * inst.n, 3 * inst.m));
    }
    if inst.gadgets.len() != inst.m {
        errs.push(format!("expected {} gadgets, found {}", inst.m, inst.gadgets.len()));
    }
    if inst.n + 4 * inst.m > 64 {
        errs.push("universe too large for the mask engine (max 64 elements)".into());
    }
    let mut a_count = vec![0usize; inst.n + 1];
    for (t0, g) in inst.gadgets.iter().enumerate() {
        if !(1 <= g.i && g.i < g.j && g.j < g.k && g.k <= inst.n) {
            errs.push(format!(
                "gadget {} indices must satisfy 1 <= i < j < k <= n, got ({}, {}, {})",
                t0 + 1,
                g.i,
                g.j,
                g.k
            ));
            continue;
        }
        a_count[g.i] += 1;
        a_count[g.j] += 1;
        a_count[g.k] += 1;
    }
    if errs.is_empty() {
        for (i, &c) in a_count.iter().enumerate().skip(1) {
            if c != 2 {
                errs.push(format!("element a{i} occurs in {c} sets, expected exactly 2"));
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

/// Deterministic instance generator: deal two copies of every `A`-index
/// into `m` triples of distinct values.
pub fn generate_s3sc(seed: u64, m: usize) -> S3scInstance {
    assert!(m >= 2 && m.is_multiple_of(2), "m must be even and at least 2");
    let n = 3 * m / 2;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    'outer: loop {
        let mut deck: Vec<usize> = (1..=n).flat_map(|i| [i, i]).collect();
        // Fisher-Yates
        for i in (1..deck.len()).rev() {
            let j = rng.gen_range(0..=i);
            deck.swap(i, j);
        }
        let mut gadgets = Vec::with_capacity(m);
        for t in 0..m {
            let mut tri = [deck[3 * t], deck[3 * t + 1], deck[3 * t + 2]];
            tri.sort_unstable();
            if tri[0] == tri[1] || tri[1] == tri[2] {
                continue 'outer;
            }
            gadgets.push(Gadget { i: tri[0], j: tri[1], k: tri[2] });
        }
        let inst = S3scInstance { m, n, gadgets };
        debug_assert!(validate_s3sc(&inst).is_ok());
        return inst;
    }
}

/// Output of the translation: the representation plus the element and
/// set correspondences.
#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub rep: ShadowRepresentation,
    pub element_to_point: BTreeMap<String, String>,
    pub set_to_segment: Vec<String>,
    /// ids of the hub segment (adjacent to everything except the points)
    /// and its pendant
    pub extra: (String, String),
}

fn point_id(e: &UElem) -> String {
    format!("p_{}", e.name())
}

fn set_id(j: usize) -> String {
    format!("L{j}")
}

/// Translate a cover instance into a shadow representation. All claimed
/// shadow patterns are verified exactly before returning.
pub fn reduce_f(inst: &S3scInstance) -> Result<ReductionOutput, HardnessError> {
    validate_s3sc(inst).map_err(HardnessError::InvalidInstance)?;
    let m = inst.m as i64;
    let n = inst.n as i64;
    let rho = rat(1, 100 * m);
    let zeta = rat(2, 3 * (n + 1));
    let set_count = 5 * inst.m;
    let jscale = rat_int(5 * m + 5);

    // cluster offsets, growing leftward: gaps w->x 10ρ, x->y 2ρ, y->z 2ρ,
    // z->w' 10ρ
    let cluster_offset = |t: usize, member: usize| -> Rat {
        let base = rat_int(24 * (t as i64 - 1)) * &rho;
        let inner = match member {
            0 => rat_int(0),
            1 => rat_int(10),
            2 => rat_int(12),
            3 => rat_int(14),
            _ => unreachable!(),
        };
        base + inner * &rho
    };
    let q_point = |off: &Rat| -> Point {
        let x = -rat_int(1) - off;
        Point::new(x.clone(), &x / rat_int(2))
    };
    let a_coord = |p: usize| -> Rat { rat(1, 3) + rat_int(p as i64) * &zeta };

    let mut points: Vec<(String, Point)> = Vec::new();
    let mut element_points: BTreeMap<String, String> = BTreeMap::new();
    for e in inst.universe() {
        let pt = match e {
            UElem::A(p) => {
                let z = a_coord(p);
                Point::new(z.clone(), -z)
            }
            UElem::W(t) => q_point(&cluster_offset(t, 0)),
            UElem::X(t) => q_point(&cluster_offset(t, 1)),
            UElem::Y(t) => q_point(&cluster_offset(t, 2)),
            UElem::Z(t) => q_point(&cluster_offset(t, 3)),
        };
        let id = point_id(&e);
        element_points.insert(e.name(), id.clone());
        points.push((id, pt));
    }

    // per-set jitters, all pairwise distinct and below the relevant gaps
    let eps_x = |j: usize| -> Rat { &rho * rat_int(2 * j as i64 + 1) / (rat_int(64) * &jscale) };
    let small = |j: usize| -> Rat { &rho * rat_int(2 * j as i64 + 1) / (rat_int(128) * &jscale) };
    let eps_z = |j: usize| -> Rat { &zeta * rat_int(2 * j as i64 + 1) / (rat_int(256) * &jscale) };
    let eps_d = |j: usize| -> Rat { &zeta * rat_int(2 * j as i64 + 1) / (rat_int(512) * &jscale) };

    let mut segments: Vec<(String, Segment)> = Vec::new();
    let mut set_to_segment = Vec::new();
    for (idx, _) in inst.sets().iter().enumerate() {
        let j = idx + 1;
        let t = idx / 5 + 1;
        let kind = idx % 5;
        let g = inst.gadgets[t - 1];
        // window anchors inside the cluster: the right end of the covered
        // run (k1) and its left end (k2)
        let (k1_off, k2_off, a_elem): (Rat, Rat, Option<usize>) = match kind {
            0 => (cluster_offset(t, 0), cluster_offset(t, 0), Some(g.i)),
            1 => (cluster_offset(t, 0), cluster_offset(t, 1), None),
            2 => (cluster_offset(t, 1), cluster_offset(t, 2), Some(g.j)),
            3 => (cluster_offset(t, 2), cluster_offset(t, 3), None),
            4 => (cluster_offset(t, 3), cluster_offset(t, 3), Some(g.k)),
            _ => unreachable!(),
        };
        // left anchor, just right of the k1 cluster point, with diagonal
        // value just above the k2 cluster point's
        let lx = -rat_int(1) - &k1_off + eps_x(j);
        let ld = (rat_int(1) + &k2_off) / rat_int(2) + small(j);
        let left = Point::new(lx.clone(), &lx + &ld);
        let seg = match a_elem {
            None => Segment::degenerate(left),
            Some(p) => {
                let z = a_coord(p);
                let rx = &z + eps_z(j);
                let rd = -rat_int(2) * &z + eps_d(j);
                let right = Point::new(rx.clone(), &rx + &rd);
                Segment::new(left, right).map_err(|e| {
                    HardnessError::PostCheck(format!("set segment {j} violates the slope bound: {e}"))
                })?
            }
        };
        let id = set_id(j);
        set_to_segment.push(id.clone());
        segments.push((id, seg));
    }

    // the hub segment: below-left to below-right of everything, hovering
    // every point and adjacent to every set segment
    let hub_id = set_id(set_count + 1);
    let hub = Segment::new(
        Point::new(rat_int(-3), rat_int(-6)),
        Point::new(rat_int(3), rat_int(-1)),
    )
    .expect("hub slope is valid");
    segments.push((hub_id.clone(), hub));
    // its pendant: inside the hub's shadow only
    let pend_id = set_id(set_count + 2);
    segments.push((
        pend_id.clone(),
        Segment::degenerate(Point::new(rat(5, 2), rat(-5, 2))),
    ));

    points.sort_by(|(_, a), (_, b)| a.x.cmp(&b.x));
    segments.sort_by(|(_, a), (_, b)| a.right().x.cmp(&b.right().x));
    let delta = rat_int(1); // carried for serialization; not used by the oracles
    let rep = ShadowRepresentation { points, segments, delta, horizontal: false };
    rep.validate()
        .map_err(|e| HardnessError::PostCheck(format!("general position violated: {e}")))?;

    let out = ReductionOutput {
        rep,
        element_to_point: element_points,
        set_to_segment,
        extra: (hub_id, pend_id),
    };
    verify_reduction(inst, &out)?;
    Ok(out)
}

/// Exact post-conditions of the construction.
pub fn verify_reduction(inst: &S3scInstance, out: &ReductionOutput) -> Result<(), HardnessError> {
    let rep = &out.rep;
    let sets = inst.sets();
    let fail = |msg: String| Err(HardnessError::PostCheck(msg));
    // shadow pattern of each set segment
    for (idx, set) in sets.iter().enumerate() {
        let sid = &out.set_to_segment[idx];
        let sshape = rep.shape_of(sid).expect("set segment present");
        let sseg = match &sshape {
            Shape::Segment(s) => s.clone(),
            _ => unreachable!(),
        };
        let want: BTreeSet<String> = set.iter().map(|e| out.element_to_point[&e.name()].clone()).collect();
        let got: BTreeSet<String> = rep
            .points
            .iter()
            .filter(|(_, p)| crate::geometry::point_in_segment_shadow(&sseg, p))
            .map(|(id, _)| id.clone())
            .collect();
        if want != got {
            return fail(format!(
                "set {} covers {:?} instead of {:?}",
                sid, got, want
            ));
        }
    }
    // the hub hovers every point, neighbors every set segment, covers no point
    let (hub_id, pend_id) = &out.extra;
    let hub = match rep.shape_of(hub_id).unwrap() {
        Shape::Segment(s) => s,
        _ => unreachable!(),
    };
    for (pid, p) in &rep.points {
        if !crate::geometry::shape_meets_point_shadow(p, &Shape::Segment(hub.clone())) {
            return fail(format!("hub does not hover point {pid}"));
        }
        if crate::geometry::point_in_segment_shadow(&hub, p) {
            return fail(format!("hub dominates point {pid}"));
        }
    }
    for (sid, s) in &rep.segments {
        if sid == hub_id {
            continue;
        }
        let adjacent = shapes_adjacent(&Shape::Segment(hub.clone()), &Shape::Segment(s.clone()));
        if !adjacent {
            return fail(format!("hub not adjacent to segment {sid}"));
        }
    }
    // the pendant's only neighbor is the hub
    let pend = rep.shape_of(pend_id).unwrap();
    for (id, p) in &rep.points {
        if shapes_adjacent(&pend, &Shape::Point(p.clone())) {
            return fail(format!("pendant adjacent to point {id}"));
        }
    }
    for (sid, s) in &rep.segments {
        if sid == pend_id {
            continue;
        }
        let adjacent = shapes_adjacent(&pend, &Shape::Segment(s.clone()));
        if (sid == hub_id) != adjacent {
            return fail(format!("pendant adjacency wrong at {sid}"));
        }
    }
    // counts
    if rep.points.len() != inst.n + 4 * inst.m {
        return fail("point count mismatch".into());
    }
    if rep.segments.len() != 5 * inst.m + 2 {
        return fail("segment count mismatch".into());
    }
    Ok(())
}

/// Back-translate a dominating set of the reduction output into a cover:
/// swap the pendant for the hub, replace chosen points by a covering set
/// segment, drop the hub, read off the sets. The cover is one smaller
/// than the dominating set at worst.
pub fn backmap_g(
    inst: &S3scInstance,
    out: &ReductionOutput,
    dom: &BTreeSet<String>,
) -> Result<BTreeSet<usize>, HardnessError> {
    let arena = Arena::from_representation(&out.rep).expect("reduction fits the engine");
    let mut mask = 0u64;
    for id in dom {
        mask |= 1
            << arena
                .index_of(id)
                .map_err(|_| HardnessError::PostCheck(format!("unknown id {id} in solution")))?;
    }
    if !arena.dominates(mask, arena.full_mask()) {
        return Err(HardnessError::NotDominating);
    }
    let sets = inst.sets();
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    let mut saw_point_or_hub = false;
    for id in dom {
        if id == &out.extra.0 || id == &out.extra.1 {
            saw_point_or_hub = true;
            continue;
        }
        if let Some(pos) = out.set_to_segment.iter().position(|s| s == id) {
            chosen.insert(pos);
            continue;
        }
        // a chosen point: replace it with the first set covering its element
        saw_point_or_hub = true;
        let elem = out
            .element_to_point
            .iter()
            .find(|(_, pid)| *pid == id)
            .map(|(e, _)| e.clone())
            .ok_or_else(|| HardnessError::PostCheck(format!("unmapped id {id}")))?;
        let covering = sets
            .iter()
            .position(|s| s.iter().any(|u| u.name() == elem))
            .expect("every element belongs to a set");
        chosen.insert(covering);
    }
    let _ = saw_point_or_hub;
    // coverage check
    let masks = inst.sets_as_masks();
    let mut covered = 0u64;
    for &c in &chosen {
        covered |= masks[c];
    }
    if covered & inst.universe_mask() != inst.universe_mask() {
        return Err(HardnessError::PostCheck("back-mapped family is not a cover".into()));
    }
    Ok(chosen)
}

/// Report of the approximation-preserving checks on one instance.
#[derive(Clone, Debug)]
pub struct LReductionReport {
    pub opt_cover: usize,
    pub opt_domination: usize,
    /// `opt_domination == opt_cover + 1`
    pub optimum_shift_holds: bool,
    /// `opt_domination <= 2 * opt_cover`
    pub alpha_bound_holds: bool,
    /// every sampled feasible dominating set mapped back within the
    /// one-sided error bound
    pub beta_samples: usize,
    pub beta_bound_holds: bool,
    /// the full-pool exhaustive optimum, when it fit the budget, equals
    /// the segment-pool optimum
    pub cross_checked_full_pool: bool,
}

/// Exhaustive minimum dominating set of the reduction output.
///
/// The enumeration pool is restricted to segments: the construction's
/// verified facts (every point lies in some set segment's shadow, the hub
/// neighbors every segment and the pendant only the hub) make the usual
/// exchange argument exact, so the segment-restricted optimum equals the
/// unrestricted one. When the full pool fits the budget it is also
/// enumerated and the equality asserted.
fn exhaustive_min_domination(
    out: &ReductionOutput,
    budget: &OracleBudget,
    full_budget: &OracleBudget,
) -> Result<(usize, BTreeSet<String>, bool), HardnessError> {
    let arena = Arena::from_representation(&out.rep).expect("fits");
    let view = Rep::new(&arena, arena.full_mask());
    let seg_pool = view.seg_mask;
    let sol = brute_min_dominating_set(
        &arena,
        &view,
        seg_pool,
        arena.full_mask(),
        &PairConstraints::default(),
        budget,
    )?;
    let mask = match sol {
        DomSolution::Feasible(m) => m,
        DomSolution::Infeasible => unreachable!("the full segment family dominates"),
    };
    let mut cross_checked = false;
    match brute_min_dominating_set(
        &arena,
        &view,
        arena.full_mask(),
        arena.full_mask(),
        &PairConstraints::default(),
        full_budget,
    ) {
        Ok(DomSolution::Feasible(full)) => {
            if full.count_ones() != mask.count_ones() {
                return Err(HardnessError::PostCheck(format!(
                    "segment-pool optimum {} differs from full-pool optimum {}",
                    mask.count_ones(),
                    full.count_ones()
                )));
            }
            cross_checked = true;
        }
        Ok(DomSolution::Infeasible) => unreachable!(),
        Err(OracleError::TooManyElements(..)) | Err(OracleError::TimeCap(..)) => {}
    }
    Ok((mask.count_ones() as usize, arena.ids_of_mask(mask), cross_checked))
}

/// Sample feasible (not necessarily minimal) dominating sets of the
/// reduction output, deterministically from a seed.
fn sample_feasible_dominating_sets(
    out: &ReductionOutput,
    samples: usize,
    seed: u64,
) -> Vec<BTreeSet<String>> {
    let arena = Arena::from_representation(&out.rep).expect("fits");
    let full = arena.full_mask();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
    let mut outs = Vec::new();
    while outs.len() < samples {
        // random subset, then greedy repair to domination
        let mut mask = 0u64;
        for i in 0..arena.len() {
            if rng.gen_bool(0.4) {
                mask |= 1 << i;
            }
        }
        let mut guard = 0;
        while !arena.dominates(mask, full) {
            let mut rest = full & !mask;
            let mut undominated = Vec::new();
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if arena.adj[i] & mask == 0 {
                    undominated.push(i);
                }
            }
            let pick = undominated[rng.gen_range(0..undominated.len())];
            // dominate it by itself or a neighbor
            if arena.adj[pick] != 0 && rng.gen_bool(0.5) {
                let nbrs: Vec<usize> =
                    (0..arena.len()).filter(|&k| arena.adj[pick] & (1 << k) != 0).collect();
                mask |= 1 << nbrs[rng.gen_range(0..nbrs.len())];
            } else {
                mask |= 1 << pick;
            }
            guard += 1;
            assert!(guard < 10_000);
        }
        outs.push(arena.ids_of_mask(mask));
    }
    outs
}

/// Dual exhaustive check of the reduction on one instance: the optimum
/// shift, the factor-two bound, and the one-sided error bound over
/// sampled feasible solutions.
pub fn check_l_reduction(
    inst: &S3scInstance,
    beta_samples: usize,
    budget: &OracleBudget,
) -> Result<LReductionReport, HardnessError> {
    let out = reduce_f(inst)?;
    let (opt_cover, _witness) = crate::oracle::brute_min_set_cover(inst, budget)?;
    let full_budget = OracleBudget {
        max_elements: if inst.m <= 2 { budget.max_elements } else { 0 },
        time_cap: budget.time_cap,
    };
    let (opt_dom, _dom_witness, cross_checked) =
        exhaustive_min_domination(&out, budget, &full_budget)?;
    let optimum_shift_holds = opt_dom == opt_cover + 1;
    let alpha_bound_holds = opt_dom <= 2 * opt_cover;
    let mut beta_bound_holds = true;
    let samples = sample_feasible_dominating_sets(&out, beta_samples, 0x5e3d);
    for d in &samples {
        let cover = backmap_g(inst, &out, d)?;
        if cover.len() > d.len() - 1 {
            beta_bound_holds = false;
        }
        // one-sided error: c(g(D)) - OPT(I) <= c(D) - OPT(f(I))
        if (cover.len() as i64 - opt_cover as i64) > (d.len() as i64 - opt_dom as i64) {
            beta_bound_holds = false;
        }
    }
    Ok(LReductionReport {
        opt_cover,
        opt_domination: opt_dom,
        optimum_shift_holds,
        alpha_bound_holds,
        beta_samples: samples.len(),
        beta_bound_holds,
        cross_checked_full_pool: cross_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2_instance() -> S3scInstance {
        S3scInstance {
            m: 2,
            n: 3,
            gadgets: vec![Gadget { i: 1, j: 2, k: 3 }, Gadget { i: 1, j: 2, k: 3 }],
        }
    }

    #[test]
    fn validate_catches_structure() {
        assert!(validate_s3sc(&m2_instance()).is_ok());
        let mut bad = m2_instance();
        bad.gadgets[1] = Gadget { i: 1, j: 2, k: 2 };
        assert!(validate_s3sc(&bad).is_err());
        let mut bad2 = m2_instance();
        bad2.n = 4;
        assert!(validate_s3sc(&bad2).is_err());
    }

    #[test]
    fn generator_produces_valid_instances() {
        for seed in 0..20 {
            for m in [2usize, 4] {
                let inst = generate_s3sc(seed, m);
                validate_s3sc(&inst).unwrap();
            }
        }
    }

    #[test]
    fn reduction_counts_and_patterns() {
        let inst = m2_instance();
        let out = reduce_f(&inst).unwrap();
        assert_eq!(out.rep.points.len(), 11);
        assert_eq!(out.rep.segments.len(), 12);
        // verify_reduction ran inside reduce_f; spot-check one pattern by hand
        let sets = inst.sets();
        assert_eq!(sets[0], vec![UElem::A(1), UElem::W(1)]);
    }

    #[test]
    fn reduction_all_m() {
        for m in [2usize, 4] {
            for seed in 0..3 {
                let inst = generate_s3sc(seed, m);
                reduce_f(&inst).unwrap();
            }
        }
    }

    #[test]
    fn trivial_backmap() {
        let inst = m2_instance();
        let out = reduce_f(&inst).unwrap();
        // all set segments plus the hub
        let mut dom: BTreeSet<String> = out.set_to_segment.iter().cloned().collect();
        dom.insert(out.extra.0.clone());
        let cover = backmap_g(&inst, &out, &dom).unwrap();
        assert_eq!(cover.len(), dom.len() - 1);
    }

    #[test]
    fn m2_l_reduction() {
        let inst = m2_instance();
        let budget = OracleBudget::with_max(26);
        let report = check_l_reduction(&inst, 10, &budget).unwrap();
        assert!(report.optimum_shift_holds, "{report:?}");
        assert!(report.alpha_bound_holds);
        assert!(report.beta_bound_holds);
        assert!(report.cross_checked_full_pool);
    }
}

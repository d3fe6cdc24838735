//! Bounded dominating set on a horizontal shadow representation: the
//! smallest set of segments dominating every point and segment, found by
//! a table over shrinking windows.
//!
//! A table key fixes a window `R(a, b)` (only the diagonal level of `a`
//! matters, so keys store levels on the finite endpoint grids), the
//! diagonally leftmost segment `q` of the solution and its end-pair
//! `(i, i2)`. Entries are filled by three recursion families:
//! * raising the window floor to the diagonal through `l_i` when `b` lies
//!   strictly inside the shadow of `l_i`;
//! * peeling the end segment `L_i` off and re-anchoring the window at the
//!   next end-pair;
//! * splitting the window at an interior grid point, on either side of
//!   the reverse shadow of `l_i`.
//!
//! Every recursive key strictly shrinks under the lexicographic measure
//! (window width, window right edge, end x-coordinate, leftmost-segment
//! diagonal); the only non-shrinking candidates are exact self-references,
//! which can never improve the entry and are skipped. A recursion stack
//! asserts this at runtime.

use crate::geometry::{point_in_segment_reverse_shadow, Point, Segment, Shape};
use crate::model::{Arena, ModelError, ShadowRepresentation};
use crate::rational::{rat_int, Rat};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BdError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("id `{0}` reserved for internal augmentation")]
    ReservedId(String),
}

/// A dominating-set table value: either the infeasibility mark (size
/// treated as +infinity) or a set of elements as a bitmask over the
/// arena.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DomSolution {
    Infeasible,
    Feasible(u64),
}

impl DomSolution {
    pub fn size(&self) -> u32 {
        match self {
            DomSolution::Infeasible => u32::MAX,
            DomSolution::Feasible(m) => m.count_ones(),
        }
    }

    pub fn mask(&self) -> Option<u64> {
        match self {
            DomSolution::Infeasible => None,
            DomSolution::Feasible(m) => Some(*m),
        }
    }

    pub fn union(&self, other: &DomSolution) -> DomSolution {
        match (self, other) {
            (DomSolution::Feasible(a), DomSolution::Feasible(b)) => DomSolution::Feasible(a | b),
            _ => DomSolution::Infeasible,
        }
    }

    pub fn union_mask(&self, extra: u64) -> DomSolution {
        match self {
            DomSolution::Feasible(a) => DomSolution::Feasible(a | extra),
            DomSolution::Infeasible => DomSolution::Infeasible,
        }
    }
}

/// Among equal-size masks the one whose sorted index sequence is
/// lexicographically smaller wins: at the lowest differing bit, the mask
/// containing it has the smaller element.
pub fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    if d == 0 {
        return false;
    }
    let bit = d & d.wrapping_neg();
    a & bit != 0
}

/// Deterministic minimum: smaller size first, lexicographic tie-break.
pub fn prefer(a: DomSolution, b: DomSolution) -> DomSolution {
    match (a, b) {
        (DomSolution::Infeasible, x) | (x, DomSolution::Infeasible) => x,
        (DomSolution::Feasible(ma), DomSolution::Feasible(mb)) => {
            let (sa, sb) = (ma.count_ones(), mb.count_ones());
            if sa < sb || (sa == sb && (ma == mb || lex_less(ma, mb))) {
                DomSolution::Feasible(ma)
            } else {
                DomSolution::Feasible(mb)
            }
        }
    }
}

/// Cached exact geometry of one element.
#[derive(Clone, Debug)]
struct ElemGeom {
    min_x: Rat,
    max_x: Rat,
    dmin: Rat,
    dmax: Rat,
}

/// A view of a subset of arena elements together with the endpoint grids
/// used by the window table. Segment order follows right-endpoint
/// x-coordinates, point order follows x-coordinates.
pub struct Rep<'a> {
    pub arena: &'a Arena,
    pub mask: u64,
    pub segs: Vec<usize>,
    pub pts: Vec<usize>,
    pub seg_mask: u64,
    pub pts_mask: u64,
    geom: Vec<Option<ElemGeom>>,
    /// distinct segment-endpoint x values, ascending
    pub xlev: Vec<Rat>,
    /// distinct segment-endpoint diagonal values, ascending
    pub dlev: Vec<Rat>,
}

impl<'a> Rep<'a> {
    pub fn new(arena: &'a Arena, mask: u64) -> Rep<'a> {
        let mut segs = Vec::new();
        let mut pts = Vec::new();
        let mut seg_mask = 0u64;
        let mut pts_mask = 0u64;
        let mut geom: Vec<Option<ElemGeom>> = vec![None; arena.len()];
        let mut xset: BTreeSet<Rat> = BTreeSet::new();
        let mut dset: BTreeSet<Rat> = BTreeSet::new();
        #[allow(clippy::needless_range_loop)]
        for i in 0..arena.len() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let shape = &arena.shapes[i];
            geom[i] = Some(ElemGeom {
                min_x: shape.min_x().clone(),
                max_x: shape.max_x().clone(),
                dmin: shape.diag_min(),
                dmax: shape.diag_max(),
            });
            match shape {
                Shape::Point(_) => {
                    pts.push(i);
                    pts_mask |= 1 << i;
                }
                Shape::Segment(s) => {
                    segs.push(i);
                    seg_mask |= 1 << i;
                    xset.insert(s.left().x.clone());
                    xset.insert(s.right().x.clone());
                    dset.insert(s.left().diag());
                    dset.insert(s.right().diag());
                }
            }
        }
        segs.sort_by(|&a, &b| {
            geom[a].as_ref().unwrap().max_x.cmp(&geom[b].as_ref().unwrap().max_x)
        });
        pts.sort_by(|&a, &b| {
            geom[a].as_ref().unwrap().min_x.cmp(&geom[b].as_ref().unwrap().min_x)
        });
        Rep {
            arena,
            mask,
            segs,
            pts,
            seg_mask,
            pts_mask,
            geom,
            xlev: xset.into_iter().collect(),
            dlev: dset.into_iter().collect(),
        }
    }

    fn g(&self, i: usize) -> &ElemGeom {
        self.geom[i].as_ref().expect("element outside the view")
    }

    fn seg(&self, i: usize) -> &Segment {
        match &self.arena.shapes[i] {
            Shape::Segment(s) => s,
            Shape::Point(_) => panic!("segment index expected"),
        }
    }

    pub fn xrank(&self, x: &Rat) -> usize {
        self.xlev.binary_search(x).expect("x value off the endpoint grid")
    }

    pub fn drank(&self, d: &Rat) -> usize {
        self.dlev.binary_search(d).expect("diagonal value off the endpoint grid")
    }

    /// Left-endpoint coordinates of a segment as (x, diag).
    fn lcoord(&self, i: usize) -> (&Rat, Rat) {
        let s = self.seg(i);
        (&s.left().x, s.left().diag())
    }

    fn rcoord(&self, i: usize) -> (&Rat, Rat) {
        let s = self.seg(i);
        (&s.right().x, s.right().diag())
    }

    pub fn right_crossing(&self, i: usize, i2: usize) -> bool {
        let (rix, rid) = self.rcoord(i);
        let (r2x, r2d) = self.rcoord(i2);
        r2x <= rix && r2d <= rid
    }

    pub fn left_crossing(&self, j: usize, j2: usize) -> bool {
        let (ljx, ljd) = self.lcoord(j);
        let (l2x, l2d) = self.lcoord(j2);
        ljx <= l2x && ljd <= l2d
    }

    /// Elements entirely inside the upper-left wedge of the grid point
    /// `(r_i.x, diag(r_i2))`.
    pub fn lleft_mask(&self, i: usize, i2: usize) -> u64 {
        let (tx, _) = self.rcoord(i);
        let (_, td) = self.rcoord(i2);
        let mut m = 0u64;
        for &e in self.pts.iter().chain(self.segs.iter()) {
            let g = self.g(e);
            if g.max_x <= *tx && g.dmin >= td {
                m |= 1 << e;
            }
        }
        m
    }

    /// Elements entirely inside the lower-right wedge of the grid point
    /// `(l_j.x, diag(l_j2))` — the start-pair analogue of `lleft_mask`.
    pub fn lright_start_mask(&self, j: usize, j2: usize) -> u64 {
        let (tx, _) = self.lcoord(j);
        let (_, td) = self.lcoord(j2);
        let mut m = 0u64;
        for &e in self.pts.iter().chain(self.segs.iter()) {
            let g = self.g(e);
            if g.min_x >= *tx && g.dmax <= td {
                m |= 1 << e;
            }
        }
        m
    }

    /// Elements entirely right of the diagonal through `l_q`.
    pub fn lright_mask(&self, q: usize) -> u64 {
        let (_, td) = self.lcoord(q);
        let mut m = 0u64;
        for &e in self.pts.iter().chain(self.segs.iter()) {
            if self.g(e).dmax <= td {
                m |= 1 << e;
            }
        }
        m
    }

    /// Elements entirely inside the window with ceiling diagonal
    /// `dlev[a_d]`, floor diagonal `dlev[b_d]` and strict right edge
    /// `xlev[b_x]`.
    pub fn window_mask(&self, a_d: usize, b_x: usize, b_d: usize) -> u64 {
        let ceil = &self.dlev[a_d];
        let floor = &self.dlev[b_d];
        let edge = &self.xlev[b_x];
        let mut m = 0u64;
        for &e in self.pts.iter().chain(self.segs.iter()) {
            let g = self.g(e);
            if g.max_x < *edge && g.dmin >= *floor && g.dmax <= *ceil {
                m |= 1 << e;
            }
        }
        m
    }

    /// Points of the view inside the reverse shadow of a grid point.
    fn points_in_grid_reverse_shadow(&self, cx: usize, cd: usize) -> u64 {
        let x = &self.xlev[cx];
        let d = &self.dlev[cd];
        let mut m = 0u64;
        for &p in &self.pts {
            let g = self.g(p);
            if g.min_x >= *x && g.dmin >= *d {
                m |= 1 << p;
            }
        }
        m
    }

    /// Points of the view inside the reverse shadow of segment `i`.
    fn points_in_segment_reverse(&self, i: usize) -> u64 {
        let s = self.seg(i);
        let mut m = 0u64;
        for &p in &self.pts {
            if let Shape::Point(pt) = &self.arena.shapes[p] {
                if point_in_segment_reverse_shadow(s, pt) {
                    m |= 1 << p;
                }
            }
        }
        m
    }
}

/// Table key: diagonal level of the first window anchor, grid coordinates
/// of the second, diagonally leftmost segment and end-pair. Segment
/// fields are arena indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BdKey {
    pub a_d: usize,
    pub b_x: usize,
    pub b_d: usize,
    pub q: usize,
    pub i: usize,
    pub i2: usize,
}

/// Memo table scoped to one representation view.
#[derive(Default)]
pub struct BdTable {
    memo: HashMap<BdKey, DomSolution>,
    window_cache: HashMap<(usize, usize, usize), u64>,
    lleft_cache: HashMap<(usize, usize), u64>,
    lright_cache: HashMap<usize, u64>,
    fgrid_cache: HashMap<(usize, usize), u64>,
    fseg_cache: HashMap<usize, u64>,
    stack: Vec<BdKey>,
}

impl BdTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BdKey, &DomSolution)> {
        self.memo.iter()
    }

    fn window(&mut self, rep: &Rep, a_d: usize, b_x: usize, b_d: usize) -> u64 {
        *self
            .window_cache
            .entry((a_d, b_x, b_d))
            .or_insert_with(|| rep.window_mask(a_d, b_x, b_d))
    }

    fn lleft(&mut self, rep: &Rep, i: usize, i2: usize) -> u64 {
        *self.lleft_cache.entry((i, i2)).or_insert_with(|| rep.lleft_mask(i, i2))
    }

    fn lright(&mut self, rep: &Rep, q: usize) -> u64 {
        *self.lright_cache.entry(q).or_insert_with(|| rep.lright_mask(q))
    }

    fn fgrid(&mut self, rep: &Rep, cx: usize, cd: usize) -> u64 {
        *self
            .fgrid_cache
            .entry((cx, cd))
            .or_insert_with(|| rep.points_in_grid_reverse_shadow(cx, cd))
    }

    fn fseg(&mut self, rep: &Rep, i: usize) -> u64 {
        *self.fseg_cache.entry(i).or_insert_with(|| rep.points_in_segment_reverse(i))
    }
}

/// Admissibility of a key: `(i, i2)` right-crossing, `q` inside the
/// end wedge, `i` and `i2` right of `q`'s diagonal, `b` left of the
/// vertical through `r_i` and right of the first anchor's diagonal.
pub fn key_admissible(rep: &Rep, tab: &mut BdTable, key: &BdKey) -> bool {
    let qb = 1u64 << key.q;
    let ib = 1u64 << key.i;
    let i2b = 1u64 << key.i2;
    if rep.seg_mask & qb == 0 || rep.seg_mask & ib == 0 || rep.seg_mask & i2b == 0 {
        return false;
    }
    if !rep.right_crossing(key.i, key.i2) {
        return false;
    }
    let lleft = tab.lleft(rep, key.i, key.i2);
    let lright = tab.lright(rep, key.q);
    if lleft & qb == 0 || lright & ib == 0 || lright & i2b == 0 {
        return false;
    }
    let (rix, _) = rep.rcoord(key.i);
    rep.xlev[key.b_x] <= *rix && rep.dlev[key.b_d] <= rep.dlev[key.a_d]
}

/// Base-case classification of a key.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BdInit {
    /// The full candidate pool fails to dominate the window.
    Infeasible,
    /// The three named segments already dominate the window.
    Triple(u64),
    /// Feasible initializer: the full candidate pool.
    Initializer(u64),
}

pub fn bd_init(rep: &Rep, tab: &mut BdTable, key: &BdKey) -> BdInit {
    let window = tab.window(rep, key.a_d, key.b_x, key.b_d);
    let pool = tab.lright(rep, key.q) & tab.lleft(rep, key.i, key.i2) & rep.seg_mask;
    if !rep.arena.dominates(pool, window) {
        return BdInit::Infeasible;
    }
    let triple = (1u64 << key.q) | (1u64 << key.i) | (1u64 << key.i2);
    if rep.arena.dominates(triple, window) {
        return BdInit::Triple(triple);
    }
    BdInit::Initializer(pool)
}

/// Structural sanity of a finite table value: the end-pair and the
/// diagonally leftmost segment of the stored set are the key's.
pub fn entry_structure_ok(rep: &Rep, key: &BdKey, sol: &DomSolution) -> bool {
    let mask = match sol.mask() {
        Some(m) => m,
        None => return true,
    };
    let members: Vec<usize> = rep.segs.iter().copied().filter(|s| mask & (1 << s) != 0).collect();
    if members.is_empty() {
        return false;
    }
    let i = members
        .iter()
        .copied()
        .max_by(|&a, &b| rep.rcoord(a).0.cmp(rep.rcoord(b).0))
        .unwrap();
    let i2 = members
        .iter()
        .copied()
        .min_by(|&a, &b| rep.rcoord(a).1.cmp(&rep.rcoord(b).1))
        .unwrap();
    let q = members
        .iter()
        .copied()
        .max_by(|&a, &b| rep.lcoord(a).1.cmp(&rep.lcoord(b).1))
        .unwrap();
    i == key.i && i2 == key.i2 && q == key.q
}

/// Table fill for one key.
pub fn bd_solve(rep: &Rep, key: BdKey, tab: &mut BdTable) -> DomSolution {
    if let Some(v) = tab.memo.get(&key) {
        return *v;
    }
    assert!(
        !tab.stack.contains(&key),
        "window recursion revisited a key on the stack (internal error)"
    );
    debug_assert!(key_admissible(rep, tab, &key), "inadmissible key {key:?}");
    tab.stack.push(key);
    let result = bd_compute(rep, key, tab);
    tab.stack.pop();
    debug_assert!(entry_structure_ok(rep, &key, &result), "bad entry structure for {key:?}");
    tab.memo.insert(key, result);
    result
}

fn bd_compute(rep: &Rep, key: BdKey, tab: &mut BdTable) -> DomSolution {
    let window = tab.window(rep, key.a_d, key.b_x, key.b_d);
    let pool = tab.lright(rep, key.q) & tab.lleft(rep, key.i, key.i2) & rep.seg_mask;
    match bd_init(rep, tab, &key) {
        BdInit::Infeasible => return DomSolution::Infeasible,
        BdInit::Triple(t) => return DomSolution::Feasible(t),
        BdInit::Initializer(_) => {}
    }
    let mut best = DomSolution::Feasible(pool);

    let (li_lx, li_ld) = {
        let (x, d) = rep.lcoord(key.i);
        (x.clone(), d)
    };
    let b_x_val = rep.xlev[key.b_x].clone();
    let b_d_val = rep.dlev[key.b_d].clone();

    // Floor raise: b strictly inside the shadow of l_i. An exact equality,
    // so no other family needs evaluation. On the boundary (b on the
    // diagonal through l_i) the raise is vacuous and the other two
    // families apply.
    if b_x_val <= li_lx && b_d_val < li_ld {
        // the window ceiling exceeds diag(l_i), else the triple case
        // would have fired above
        debug_assert!(li_ld <= rep.dlev[key.a_d]);
        let sub = bd_solve(rep, BdKey { b_d: rep.drank(&li_ld), ..key }, tab);
        return prefer(best, sub);
    }

    // End-segment peel: remove L_i, anchor the window at the end-pair of
    // the remainder.
    let restricted = pool & !(1 << key.i);
    let js: Vec<usize> = rep.segs.iter().copied().filter(|j| restricted & (1 << j) != 0).collect();
    for &j in &js {
        debug_assert!(rep.rcoord(j).0 < rep.rcoord(key.i).0);
        let j2s: Vec<usize> = if key.i != key.i2 {
            vec![key.i2]
        } else {
            js.clone()
        };
        for j2 in j2s {
            if restricted & (1 << j2) == 0 || !rep.right_crossing(j, j2) {
                continue;
            }
            let lleft_jj2 = tab.lleft(rep, j, j2);
            let c = {
                let (rjx, _) = rep.rcoord(j);
                if *rjx <= b_x_val {
                    (rep.xrank(&rjx.clone()), key.b_d)
                } else {
                    (key.b_x, key.b_d)
                }
            };
            let inner_window = tab.window(rep, key.a_d, c.0, c.1);
            // the strip X(a,b) \ X(a,c) must be dominated by the new pair
            if !rep.arena.dominates((1 << j) | (1 << j2), window & !inner_window) {
                continue;
            }
            for &q2 in &js {
                if lleft_jj2 & (1 << q2) == 0 {
                    continue;
                }
                let lright_q2 = tab.lright(rep, q2);
                if lright_q2 & (1 << j) == 0 || lright_q2 & (1 << j2) == 0 {
                    continue;
                }
                let sub =
                    bd_solve(rep, BdKey { b_x: c.0, b_d: c.1, q: q2, i: j, i2: j2, ..key }, tab);
                if let DomSolution::Feasible(m) = sub {
                    best = prefer(best, DomSolution::Feasible(m | (1 << key.q) | (1 << key.i)));
                }
            }
        }
    }

    // Window split at an interior grid point.
    for cx in 0..rep.xlev.len() {
        if rep.xlev[cx] >= b_x_val {
            break;
        }
        if rep.xlev[cx] < li_lx {
            continue;
        }
        for cd in key.b_d..=key.a_d {
            let c_d_val = &rep.dlev[cd];
            // split point below the reverse shadow of l_i
            if *c_d_val < li_ld {
                if rep.pts_mask & window & tab.fgrid(rep, cx, cd) & tab.fseg(rep, key.i) == 0
                    && cd != key.a_d
                {
                    let left = bd_solve(rep, BdKey { b_x: cx, b_d: cd, ..key }, tab);
                    if let DomSolution::Feasible(lm) = left {
                        let right = bd_solve(rep, BdKey { a_d: cd, ..key }, tab);
                        if let DomSolution::Feasible(rm) = right {
                            best = prefer(best, DomSolution::Feasible(lm | rm));
                        }
                    }
                }
            } else {
                // split point inside the reverse shadow of l_i; the right
                // part may switch to a new diagonally leftmost segment
                if rep.pts_mask & window & tab.fgrid(rep, cx, cd) != 0 {
                    continue;
                }
                for &q2 in &rep.segs {
                    if pool & (1 << q2) == 0 {
                        continue;
                    }
                    let (q2x, q2d) = {
                        let (x, d) = rep.lcoord(q2);
                        (x.clone(), d)
                    };
                    if !(q2x >= li_lx && q2d >= li_ld) {
                        continue;
                    }
                    if !(*c_d_val == q2d || cd == key.b_d) {
                        continue;
                    }
                    let lright_q2 = tab.lright(rep, q2);
                    if lright_q2 & (1 << key.i) == 0 || lright_q2 & (1 << key.i2) == 0 {
                        continue;
                    }
                    if cd == key.a_d && q2 == key.q {
                        continue; // exact self-reference, can never improve
                    }
                    let left = bd_solve(rep, BdKey { b_x: cx, b_d: cd, ..key }, tab);
                    if let DomSolution::Feasible(lm) = left {
                        let right = bd_solve(rep, BdKey { a_d: cd, q: q2, ..key }, tab);
                        if let DomSolution::Feasible(rm) = right {
                            best = prefer(best, DomSolution::Feasible(lm | rm));
                        }
                    }
                }
            }
        }
    }

    best
}

/// Ids used by the internal augmentations.
pub const DUMMY_LEFT: &str = "__dummy_left";
pub const DUMMY_RIGHT: &str = "__dummy_right";
pub const DUMMY_POINT: &str = "__dummy_point";

fn coordinate_bounds(rep: &ShadowRepresentation) -> (Rat, Rat, Rat, Rat) {
    let mut min_x = rat_int(0);
    let mut max_x = rat_int(0);
    let mut min_d = rat_int(0);
    let mut max_d = rat_int(0);
    let mut first = true;
    let mut upd = |p: &Point| {
        let d = p.diag();
        if first {
            min_x = p.x.clone();
            max_x = p.x.clone();
            min_d = d.clone();
            max_d = d;
            first = false;
        } else {
            if p.x < min_x {
                min_x = p.x.clone();
            }
            if p.x > max_x {
                max_x = p.x.clone();
            }
            if d < min_d {
                min_d = d.clone();
            }
            if d > max_d {
                max_d = d;
            }
        }
    };
    for (_, p) in &rep.points {
        upd(p);
    }
    for (_, s) in &rep.segments {
        upd(s.left());
        upd(s.right());
    }
    (min_x, max_x, min_d, max_d)
}

/// Add the two isolated degenerate guard segments: one completely to the
/// upper left (every element right of its diagonal and its vertical), one
/// completely to the lower right. Calling twice adds four guards; that is
/// the caller's responsibility.
pub fn augment_dummies(rep: &ShadowRepresentation) -> Result<ShadowRepresentation, BdError> {
    for id in rep.ids() {
        if id == DUMMY_LEFT || id == DUMMY_RIGHT || id == DUMMY_POINT {
            return Err(BdError::ReservedId(id));
        }
    }
    let (min_x, max_x, min_d, max_d) = coordinate_bounds(rep);
    let lx = &min_x - rat_int(2);
    let ld = &max_d + rat_int(2);
    let rx = &max_x + rat_int(2);
    let rd = &min_d - rat_int(2);
    let mut out = rep.clone();
    out.segments.insert(
        0,
        (
            DUMMY_LEFT.to_string(),
            Segment::degenerate(Point::new(lx.clone(), &lx + &ld)),
        ),
    );
    out.segments.push((
        DUMMY_RIGHT.to_string(),
        Segment::degenerate(Point::new(rx.clone(), &rx + &rd)),
    ));
    Ok(out)
}

/// Augmentation for the full dominating-set solver: the two guard
/// segments plus a guard point completely to the lower right of both.
pub fn augment_with_point(rep: &ShadowRepresentation) -> Result<ShadowRepresentation, BdError> {
    let mut out = augment_dummies(rep)?;
    let (_, max_x, min_d, _) = coordinate_bounds(&out);
    let px = &max_x + rat_int(2);
    let pd = &min_d - rat_int(2);
    out.points.push((DUMMY_POINT.to_string(), Point::new(px.clone(), &px + &pd)));
    Ok(out)
}

/// The top-level window key covering a whole augmented view: anchors at
/// the left guard's left endpoint and the right guard's right endpoint,
/// both named as grid levels of that view.
pub fn top_key(rep: &Rep, left_dummy: usize, right_dummy: usize) -> BdKey {
    let (_, a_diag) = rep.lcoord(left_dummy);
    let (b_x, b_diag) = rep.rcoord(right_dummy);
    BdKey {
        a_d: rep.drank(&a_diag),
        b_x: rep.xrank(&b_x.clone()),
        b_d: rep.drank(&b_diag),
        q: left_dummy,
        i: right_dummy,
        i2: right_dummy,
    }
}

/// Outcome of a whole-instance solve, with ids resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Minimum dominating subset of the segments.
    Solution(BTreeSet<String>),
    /// The segments do not dominate the representation.
    SegmentsDoNotDominate,
}

/// Bounded dominating set on a horizontal shadow representation.
pub fn solve_bounded_ds(rep: &ShadowRepresentation) -> Result<SolveOutcome, BdError> {
    rep.validate()?;
    if !rep.horizontal {
        return Err(BdError::Model(ModelError::NotHorizontal));
    }
    let augmented = augment_dummies(rep)?;
    let arena = Arena::from_representation(&augmented)?;
    let view = Rep::new(&arena, arena.full_mask());
    let left = arena.index_of(DUMMY_LEFT)?;
    let right = arena.index_of(DUMMY_RIGHT)?;
    let mut tab = BdTable::new();
    let key = top_key(&view, left, right);
    match bd_solve(&view, key, &mut tab) {
        DomSolution::Infeasible => Ok(SolveOutcome::SegmentsDoNotDominate),
        DomSolution::Feasible(mask) => {
            let stripped = mask & !(1 << left) & !(1 << right);
            let real = arena.full_mask() & !(1 << left) & !(1 << right);
            assert!(
                arena.dominates(stripped | (1 << left) | (1 << right), arena.full_mask()),
                "solver returned a non-dominating set"
            );
            assert!(arena.dominates(stripped, real), "guard removal broke domination");
            Ok(SolveOutcome::Solution(arena.ids_of_mask(stripped)))
        }
    }
}

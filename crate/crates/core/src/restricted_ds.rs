//! Restricted bounded dominating set: the smallest segment set dominating
//! a horizontal representation with a prescribed start-pair `(j, j2)` and
//! end-pair `(i, i2)`.
//!
//! Solved by reduction to the window table: elements that force
//! infeasibility (bad) abort, elements no optimum can contain and that
//! the four anchor segments already dominate (irrelevant) are stripped,
//! then a pendant segment adjacent only to `L_j` is attached and a single
//! window query anchored at the pendant's left endpoint returns the
//! answer.

use crate::bounded_ds::{bd_solve, BdKey, BdTable, DomSolution, Rep};
use crate::geometry::{Point, Segment, Shape};
use crate::model::{Arena, ModelError, ShadowRepresentation};
use crate::rational::{rat_int, Rat};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RdError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("`{0}` is not a segment of the representation")]
    NotASegment(String),
    #[error("({0}, {1}) is not a left-crossing pair")]
    NotLeftCrossing(String, String),
    #[error("({0}, {1}) is not a right-crossing pair")]
    NotRightCrossing(String, String),
    #[error("pendant placement failed its adjacency check (internal error)")]
    PendantPlacement,
}

/// Why a restricted instance is infeasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// A bad element exists: no set with the prescribed pairs dominates.
    BadElement,
    /// The pair pool fails the feasibility characterization.
    PairInfeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictedOutcome {
    Solution(BTreeSet<String>),
    Infeasible(InfeasibleReason),
}

/// A restricted instance over a horizontal representation: the anchor
/// grid points `l` and `r` are derived from the crossing pairs.
pub struct RbdsInstance<'a> {
    pub rep: &'a ShadowRepresentation,
    pub j: String,
    pub j2: String,
    pub i: String,
    pub i2: String,
    pub l_anchor: Point,
    pub r_anchor: Point,
}

impl<'a> RbdsInstance<'a> {
    pub fn new(
        rep: &'a ShadowRepresentation,
        j: &str,
        j2: &str,
        i: &str,
        i2: &str,
    ) -> Result<Self, RdError> {
        let seg = |id: &str| -> Result<Segment, RdError> {
            match rep.shape_of(id)? {
                Shape::Segment(s) => Ok(s),
                Shape::Point(_) => Err(RdError::NotASegment(id.to_string())),
            }
        };
        let (sj, sj2, si, si2) = (seg(j)?, seg(j2)?, seg(i)?, seg(i2)?);
        if !crate::geometry::is_left_crossing_pair(&sj, &sj2) {
            return Err(RdError::NotLeftCrossing(j.to_string(), j2.to_string()));
        }
        if !crate::geometry::is_right_crossing_pair(&si, &si2) {
            return Err(RdError::NotRightCrossing(i.to_string(), i2.to_string()));
        }
        // l = vertical through l_j meets diagonal through l_j2
        let lx = sj.left().x.clone();
        let l_anchor = Point::new(lx.clone(), &lx + sj2.left().diag());
        let rx = si.right().x.clone();
        let r_anchor = Point::new(rx.clone(), &rx + si2.right().diag());
        Ok(RbdsInstance {
            rep,
            j: j.to_string(),
            j2: j2.to_string(),
            i: i.to_string(),
            i2: i2.to_string(),
            l_anchor,
            r_anchor,
        })
    }

    fn anchors(&self) -> [&String; 4] {
        [&self.j, &self.j2, &self.i, &self.i2]
    }
}

/// Membership of a point in the closed upper-left wedge of `t`.
fn in_upper_left(t: &Point, p: &Point) -> bool {
    p.x <= t.x && p.diag() >= t.diag()
}

/// Membership of a point in the closed lower-right wedge of `t`.
fn in_lower_right(t: &Point, p: &Point) -> bool {
    p.x >= t.x && p.diag() <= t.diag()
}

/// Largest parameter of a segment point with `x <= v` (x is non-decreasing
/// in the parameter); `None` when no point qualifies.
fn lam_max_x_le(s: &Segment, v: &Rat) -> Option<Rat> {
    let (xl, xr) = (&s.left().x, &s.right().x);
    if xl > v {
        return None;
    }
    if xr <= v || xl == xr {
        return Some(rat_int(1));
    }
    Some((v - xl) / (xr - xl))
}

/// Largest parameter with `diag >= v` (diag is non-increasing).
fn lam_max_diag_ge(s: &Segment, v: &Rat) -> Option<Rat> {
    let (dl, dr) = (s.left().diag(), s.right().diag());
    if dl < *v {
        return None;
    }
    if dr >= *v || dl == dr {
        return Some(rat_int(1));
    }
    Some((v - &dl) / (&dr - &dl))
}

/// Smallest parameter with `x >= v`.
fn lam_min_x_ge(s: &Segment, v: &Rat) -> Option<Rat> {
    let (xl, xr) = (&s.left().x, &s.right().x);
    if xr < v {
        return None;
    }
    if xl >= v || xl == xr {
        return Some(rat_int(0));
    }
    Some((v - xl) / (xr - xl))
}

/// Smallest parameter with `diag <= v`.
fn lam_min_diag_le(s: &Segment, v: &Rat) -> Option<Rat> {
    let (dl, dr) = (s.left().diag(), s.right().diag());
    if dr > *v {
        return None;
    }
    if dl <= *v || dl == dr {
        return Some(rat_int(0));
    }
    Some((v - &dl) / (&dr - &dl))
}

/// Does some point of `s` avoid both closed wedges (`l`'s upper-left and
/// `r`'s lower-right)?
fn has_point_outside_wedges(s: &Segment, l: &Point, r: &Point) -> bool {
    if s.is_degenerate() {
        return !in_upper_left(l, s.left()) && !in_lower_right(r, s.left());
    }
    let left_in_b = in_upper_left(l, s.left());
    let right_in_a = in_lower_right(r, s.right());
    if !left_in_b && !in_lower_right(r, s.left()) {
        return true;
    }
    if !right_in_a && !in_upper_left(l, s.right()) {
        return true;
    }
    // whole segment swallowed by a single wedge
    if in_lower_right(r, s.left()) || in_upper_left(l, s.right()) {
        return false;
    }
    // left part in the upper-left wedge, right part in the lower-right
    // wedge: a gap exists iff the wedge-exit parameter precedes the
    // wedge-entry parameter
    let lam_b = match (lam_max_x_le(s, &l.x), lam_max_diag_ge(s, &l.diag())) {
        (Some(a), Some(b)) => a.min(b),
        _ => return true, // left endpoint not in the upper-left wedge
    };
    let lam_a = match (lam_min_x_ge(s, &r.x), lam_min_diag_le(s, &r.diag())) {
        (Some(a), Some(b)) => a.max(b),
        _ => return true,
    };
    lam_b < lam_a
}

/// Element partition of a restricted instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    pub bad_points: BTreeSet<String>,
    pub irrelevant_points: BTreeSet<String>,
    pub bad_segments: BTreeSet<String>,
    pub irrelevant_segments: BTreeSet<String>,
}

impl Classification {
    pub fn has_bad(&self) -> bool {
        !self.bad_points.is_empty() || !self.bad_segments.is_empty()
    }
}

/// Classify every element against the derived anchors. The four anchor
/// segments are never classified: they belong to every solution by
/// definition, and the boundary cases of self-pairs would otherwise match
/// the irrelevant clauses vacuously.
pub fn classify_elements(inst: &RbdsInstance) -> Classification {
    let mut out = Classification::default();
    let l = &inst.l_anchor;
    let r = &inst.r_anchor;
    for (id, p) in &inst.rep.points {
        // bad: left of the diagonal through l, or right of the vertical through r
        if p.diag() >= l.diag() || p.x >= r.x {
            out.bad_points.insert(id.clone());
        } else if crate::geometry::point_in_shadow(l, p) || crate::geometry::point_in_shadow(r, p)
        {
            out.irrelevant_points.insert(id.clone());
        }
    }
    let start_wedge = crate::geometry::Region::LowerRight(l.clone());
    let end_wedge = crate::geometry::Region::UpperLeft(r.clone());
    for (id, s) in &inst.rep.segments {
        if inst.anchors().contains(&id) {
            continue;
        }
        let all_in_b = in_upper_left(l, s.right());
        let all_in_a = in_lower_right(r, s.left());
        if all_in_b || all_in_a {
            out.bad_segments.insert(id.clone());
            continue;
        }
        let left_in_b = in_upper_left(l, s.left());
        let right_in_a = in_lower_right(r, s.right());
        if !left_in_b && !right_in_a {
            // entirely outside both wedges; irrelevant when also outside
            // the anchor pools
            let in_pools = start_wedge.contains_segment(s) && end_wedge.contains_segment(s);
            if !in_pools {
                out.irrelevant_segments.insert(id.clone());
            }
        } else if has_point_outside_wedges(s, l, r) {
            out.irrelevant_segments.insert(id.clone());
        }
    }
    out
}

pub const PENDANT_ID: &str = "__pendant";

/// Attach a degenerate segment adjacent only to `L_j`, placed in the free
/// vertical strip between `l_j` and the leftmost other element, above
/// every diagonal level. Returns the augmented representation and checks
/// the adjacency claim exactly.
pub fn attach_pendant(
    rep: &ShadowRepresentation,
    j: &str,
) -> Result<ShadowRepresentation, RdError> {
    if rep.shape_of(PENDANT_ID).is_ok() {
        return Err(RdError::Model(ModelError::DuplicateId(PENDANT_ID.into())));
    }
    let sj = match rep.shape_of(j)? {
        Shape::Segment(s) => s,
        Shape::Point(_) => return Err(RdError::NotASegment(j.to_string())),
    };
    let ljx = sj.left().x.clone();
    let mut min_other: Option<Rat> = None;
    let mut max_diag: Option<Rat> = None;
    for (id, p) in &rep.points {
        if id != j {
            min_other = Some(match min_other {
                Some(m) => m.min(p.x.clone()),
                None => p.x.clone(),
            });
        }
        max_diag = Some(match max_diag {
            Some(m) => m.max(p.diag()),
            None => p.diag(),
        });
    }
    for (id, s) in &rep.segments {
        if id != j {
            min_other = Some(match min_other {
                Some(m) => m.min(s.left().x.clone()),
                None => s.left().x.clone(),
            });
        }
        max_diag = Some(match max_diag {
            Some(m) => m.max(s.diag_max()),
            None => s.diag_max(),
        });
    }
    let strip_right = min_other.unwrap_or(&ljx + rat_int(2));
    if strip_right <= ljx {
        return Err(RdError::PendantPlacement);
    }
    let px = (&ljx + &strip_right) / rat_int(2);
    let pd = max_diag.unwrap_or_else(|| rat_int(0)) + rat_int(1);
    let pendant = Segment::degenerate(Point::new(px.clone(), &px + &pd));
    let mut out = rep.clone();
    out.segments.push((PENDANT_ID.to_string(), pendant.clone()));
    // exact post-check: the pendant's only neighbor is L_j
    for (id, shape) in out
        .points
        .iter()
        .map(|(i, p)| (i, Shape::Point(p.clone())))
        .chain(out.segments.iter().map(|(i, s)| (i, Shape::Segment(s.clone()))))
    {
        if id == PENDANT_ID {
            continue;
        }
        let adjacent = crate::model::shapes_adjacent(&Shape::Segment(pendant.clone()), &shape);
        if (id == j) != adjacent {
            return Err(RdError::PendantPlacement);
        }
    }
    Ok(out)
}

/// Restricted bounded dominating set.
pub fn solve_restricted(
    rep: &ShadowRepresentation,
    j: &str,
    j2: &str,
    i: &str,
    i2: &str,
) -> Result<RestrictedOutcome, RdError> {
    rep.validate()?;
    if !rep.horizontal {
        return Err(RdError::Model(ModelError::NotHorizontal));
    }
    let inst = RbdsInstance::new(rep, j, j2, i, i2)?;
    let classes = classify_elements(&inst);
    if classes.has_bad() {
        return Ok(RestrictedOutcome::Infeasible(InfeasibleReason::BadElement));
    }

    // feasibility: the anchors sit in each other's pools and the pool
    // dominates the whole representation
    let arena = Arena::from_representation(rep)?;
    let view = Rep::new(&arena, arena.full_mask());
    let (aj, aj2, ai, ai2) = (
        arena.index_of(j)?,
        arena.index_of(j2)?,
        arena.index_of(i)?,
        arena.index_of(i2)?,
    );
    let lleft = view.lleft_mask(ai, ai2);
    let lright = view.lright_start_mask(aj, aj2);
    let pool = lleft & lright & view.seg_mask;
    let anchors_ok = lleft & (1 << aj) != 0
        && lleft & (1 << aj2) != 0
        && lright & (1 << ai) != 0
        && lright & (1 << ai2) != 0;
    if !anchors_ok || !arena.dominates(pool, arena.full_mask()) {
        return Ok(RestrictedOutcome::Infeasible(InfeasibleReason::PairInfeasible));
    }

    // strip irrelevant elements; each must already be dominated by an anchor
    let anchor_mask = (1u64 << aj) | (1 << aj2) | (1 << ai) | (1 << ai2);
    for id in classes.irrelevant_points.iter().chain(classes.irrelevant_segments.iter()) {
        let idx = arena.index_of(id)?;
        assert!(
            arena.dominates(anchor_mask, 1 << idx),
            "irrelevant element `{id}` not dominated by the anchors (internal error)"
        );
    }
    let mut stripped = rep.clone();
    stripped
        .points
        .retain(|(id, _)| !classes.irrelevant_points.contains(id));
    stripped
        .segments
        .retain(|(id, _)| !classes.irrelevant_segments.contains(id));

    // pendant attach + one window query
    let augmented = attach_pendant(&stripped, j)?;
    let arena2 = Arena::from_representation(&augmented)?;
    let view2 = Rep::new(&arena2, arena2.full_mask());
    let pendant_idx = arena2.index_of(PENDANT_ID)?;
    let (bj2, bi, bi2) = (
        arena2.index_of(j2)?,
        arena2.index_of(i)?,
        arena2.index_of(i2)?,
    );
    let pendant_diag = arena2.shapes[pendant_idx].diag_max();
    let key = BdKey {
        a_d: view2.drank(&pendant_diag),
        b_x: view2.xrank(&inst.r_anchor.x),
        b_d: view2.drank(&inst.r_anchor.diag()),
        q: bj2,
        i: bi,
        i2: bi2,
    };
    let mut tab = BdTable::new();
    let sol = bd_solve(&view2, key, &mut tab);
    match sol {
        DomSolution::Infeasible => Ok(RestrictedOutcome::Infeasible(InfeasibleReason::PairInfeasible)),
        DomSolution::Feasible(mask) => {
            assert!(mask & (1 << pendant_idx) == 0, "pendant entered a solution");
            let ids = arena2.ids_of_mask(mask);
            // post-checks on the original instance: domination and the
            // prescribed pair structure
            let mut mask0 = 0u64;
            for id in &ids {
                mask0 |= 1 << arena.index_of(id)?;
            }
            assert!(
                arena.dominates(mask0, arena.full_mask()),
                "restricted solution does not dominate the instance"
            );
            assert!(anchor_mask & mask0 == anchor_mask, "anchors missing from the solution");
            assert!(mask0 & !view.lright_start_mask(aj, aj2) == 0, "start-pair violated");
            assert!(mask0 & !view.lleft_mask(ai, ai2) == 0, "end-pair violated");
            Ok(RestrictedOutcome::Solution(ids))
        }
    }
}

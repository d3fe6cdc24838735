//! Interval models, the trapezoid layer, shadow representations and the
//! adjacency / hovering oracles that tie them together.
//!
//! The layering is: interval data (`ToleranceVertex`,
//! `MultitoleranceVertex`) -> trapezoids between two parallel lines
//! (`Trapezoid`) -> points and segments in the plane
//! (`ShadowRepresentation`). Adjacency can be decided on any layer and
//! the layers must agree pair for pair; `verify_fidelity` checks exactly
//! that and is run over every generated instance in the test suite.

use crate::geometry::{
    is_left_crossing_pair, is_right_crossing_pair, point_in_segment_shadow, point_in_shadow,
    segment_meets_shadow, shape_meets_point_shadow, Point, Segment, Shape,
};
use crate::rational::{overlap_len, rat_int, Rat};
use num::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("vertex `{0}`: interval endpoints out of order")]
    IntervalOrder(String),
    #[error("vertex `{0}`: tolerance must be positive")]
    NonPositiveTolerance(String),
    #[error("vertex `{0}`: tolerant points must lie inside the interval")]
    TolerantPointRange(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex id `{0}`")]
    UnknownId(String),
    #[error("vertex `{0}` is not an unbounded vertex (point)")]
    NotAPoint(String),
    #[error("hovering is undefined for a vertex against itself")]
    SelfHovering,
    #[error("x-coordinate collision between `{0}` and `{1}`")]
    XCollision(String, String),
    #[error("diagonal-value collision between `{0}` and `{1}`")]
    DiagCollision(String, String),
    #[error("segment `{0}` violates the slope bound")]
    SlopeBound(String),
    #[error("representation flagged horizontal but segment `{0}` is not")]
    HorizontalFlag(String),
    #[error("trapezoid `{0}`: sides out of order")]
    TrapezoidOrder(String),
    #[error("angle query outside the trapezoid's lower side")]
    AngleDomain,
    #[error("operation requires a horizontal representation")]
    NotHorizontal,
    #[error("too many elements for the dense engine (max 64)")]
    TooLarge,
}

/// Interval `[l, r]` with a single tolerance `t > 0`.
/// Bounded iff `t <= r - l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToleranceVertex {
    pub id: String,
    pub l: Rat,
    pub r: Rat,
    pub t: Rat,
}

impl ToleranceVertex {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.l > self.r {
            return Err(ModelError::IntervalOrder(self.id.clone()));
        }
        if !self.t.is_positive() {
            return Err(ModelError::NonPositiveTolerance(self.id.clone()));
        }
        Ok(())
    }

    pub fn is_bounded(&self) -> bool {
        self.t <= &self.r - &self.l
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tolerances {
    /// Tolerant points `l <= lt <= r`, `l <= rt <= r`; the tolerance
    /// intervals slide linearly from `[l, lt]` to `[rt, r]`.
    Bounded { lt: Rat, rt: Rat },
    /// The whole real line as the only tolerance interval.
    Unbounded,
}

/// Interval `[l, r]` with two tolerant points or the unbounded mark.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultitoleranceVertex {
    pub id: String,
    pub l: Rat,
    pub r: Rat,
    pub tol: Tolerances,
}

impl MultitoleranceVertex {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.l > self.r {
            return Err(ModelError::IntervalOrder(self.id.clone()));
        }
        if let Tolerances::Bounded { lt, rt } = &self.tol {
            if *lt < self.l || *lt > self.r || *rt < self.l || *rt > self.r {
                return Err(ModelError::TolerantPointRange(self.id.clone()));
            }
        }
        Ok(())
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.tol, Tolerances::Bounded { .. })
    }
}

/// Trapezoid between two parallel lines: `[a, d]` on the lower line,
/// `[c, b]` on the upper. Unbounded vertices degenerate to `a = d`,
/// `c = b`. The side cotangents are `c - a` (left) and `b - d` (right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trapezoid {
    pub id: String,
    pub a: Rat,
    pub d: Rat,
    pub c: Rat,
    pub b: Rat,
    pub bounded: bool,
}

impl Trapezoid {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.a > self.d || self.c > self.b {
            return Err(ModelError::TrapezoidOrder(self.id.clone()));
        }
        if !self.bounded && (self.a != self.d || self.c != self.b) {
            return Err(ModelError::TrapezoidOrder(self.id.clone()));
        }
        if self.cot_left().is_negative() || self.cot_right().is_negative() {
            return Err(ModelError::TrapezoidOrder(self.id.clone()));
        }
        Ok(())
    }

    pub fn cot_left(&self) -> Rat {
        &self.c - &self.a
    }

    pub fn cot_right(&self) -> Rat {
        &self.b - &self.d
    }

    pub fn is_parallelogram(&self) -> bool {
        self.cot_left() == self.cot_right()
    }
}

/// The plane model: one point per unbounded vertex, one segment per
/// bounded vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowRepresentation {
    pub points: Vec<(String, Point)>,
    pub segments: Vec<(String, Segment)>,
    pub delta: Rat,
    pub horizontal: bool,
}

impl ShadowRepresentation {
    pub fn len(&self) -> usize {
        self.points.len() + self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape_of(&self, id: &str) -> Result<Shape, ModelError> {
        for (pid, p) in &self.points {
            if pid == id {
                return Ok(Shape::Point(p.clone()));
            }
        }
        for (sid, s) in &self.segments {
            if sid == id {
                return Ok(Shape::Segment(s.clone()));
            }
        }
        Err(ModelError::UnknownId(id.to_string()))
    }

    pub fn ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .points
            .iter()
            .map(|(i, _)| i.clone())
            .chain(self.segments.iter().map(|(i, _)| i.clone()))
            .collect();
        ids.sort();
        ids
    }

    /// General-position validator: segment invariants, pairwise distinct
    /// x-coordinates and pairwise distinct diagonal values over all points
    /// and segment endpoints, and the horizontal flag.
    pub fn validate(&self) -> Result<(), ModelError> {
        let mut seen_ids = BTreeSet::new();
        for id in self
            .points
            .iter()
            .map(|(i, _)| i)
            .chain(self.segments.iter().map(|(i, _)| i))
        {
            if !seen_ids.insert(id.clone()) {
                return Err(ModelError::DuplicateId(id.clone()));
            }
        }
        let mut coords: Vec<(String, Point)> = Vec::new();
        for (id, p) in &self.points {
            coords.push((id.clone(), p.clone()));
        }
        for (id, s) in &self.segments {
            if &s.right().y - &s.left().y > &s.right().x - &s.left().x {
                return Err(ModelError::SlopeBound(id.clone()));
            }
            if self.horizontal && !s.is_horizontal() {
                return Err(ModelError::HorizontalFlag(id.clone()));
            }
            coords.push((id.clone(), s.left().clone()));
            if !s.is_degenerate() {
                coords.push((id.clone(), s.right().clone()));
            }
        }
        for i in 0..coords.len() {
            for j in (i + 1)..coords.len() {
                if coords[i].1.x == coords[j].1.x {
                    return Err(ModelError::XCollision(coords[i].0.clone(), coords[j].0.clone()));
                }
                if coords[i].1.diag() == coords[j].1.diag() {
                    return Err(ModelError::DiagCollision(
                        coords[i].0.clone(),
                        coords[j].0.clone(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Definitional tolerance adjacency: `|I_u ∩ I_v| >= min(t_u, t_v)`.
pub fn tol_adjacent(u: &ToleranceVertex, v: &ToleranceVertex) -> bool {
    let overlap = overlap_len(&u.l, &u.r, &v.l, &v.r);
    overlap >= crate::rational::rat_min(&u.t, &v.t)
}

/// Feasibility of `I(λ) ⊆ [l2, r2]` for some `λ ∈ [0, 1]`, where
/// `I(λ) = [l1 + (rt1 - l1)λ, lt1 + (r1 - lt1)λ]`.
fn slide_fits(l1: &Rat, r1: &Rat, lt1: &Rat, rt1: &Rat, l2: &Rat, r2: &Rat) -> bool {
    // lower endpoint >= l2:  (rt1 - l1)λ >= l2 - l1
    // upper endpoint <= r2:  (r1 - lt1)λ <= r2 - lt1
    let mut lo = Rat::zero();
    let mut hi = rat_int(1);
    let c1 = rt1 - l1;
    let b1 = l2 - l1;
    if c1.is_zero() {
        if b1.is_positive() {
            return false;
        }
    } else {
        let bound = &b1 / &c1;
        if bound > lo {
            lo = bound;
        }
    }
    let c2 = r1 - lt1;
    let b2 = r2 - lt1;
    if c2.is_zero() {
        if b2.is_negative() {
            return false;
        }
    } else {
        let bound = &b2 / &c2;
        if bound < hi {
            hi = bound;
        }
    }
    lo <= hi
}

/// Definitional multitolerance adjacency: some tolerance interval of one
/// vertex fits inside the other's interval. Two unbounded vertices are
/// never adjacent.
pub fn multitol_adjacent(u: &MultitoleranceVertex, v: &MultitoleranceVertex) -> bool {
    let u_into_v = match &u.tol {
        Tolerances::Bounded { lt, rt } => slide_fits(&u.l, &u.r, lt, rt, &v.l, &v.r),
        Tolerances::Unbounded => false,
    };
    if u_into_v {
        return true;
    }
    match &v.tol {
        Tolerances::Bounded { lt, rt } => slide_fits(&v.l, &v.r, lt, rt, &u.l, &u.r),
        Tolerances::Unbounded => false,
    }
}

/// Embed a tolerance vertex as a multitolerance vertex (`lt = min(l+t, r)`,
/// `rt = max(r-t, l)`); agrees with `tol_adjacent` for bounded vertices.
pub fn tolerance_as_multitolerance(v: &ToleranceVertex) -> MultitoleranceVertex {
    if v.is_bounded() {
        MultitoleranceVertex {
            id: v.id.clone(),
            l: v.l.clone(),
            r: v.r.clone(),
            tol: Tolerances::Bounded { lt: &v.l + &v.t, rt: &v.r - &v.t },
        }
    } else {
        MultitoleranceVertex {
            id: v.id.clone(),
            l: v.l.clone(),
            r: v.r.clone(),
            tol: Tolerances::Unbounded,
        }
    }
}

/// Trapezoids for a tolerance representation: bounded vertices become
/// parallelograms `(a, d, c, b) = (l, r-t, l+t, r)`, unbounded vertices
/// degenerate lines `(l, l, r, r)`.
pub fn trapezoids_from_tolerance(rep: &[ToleranceVertex]) -> Result<Vec<Trapezoid>, ModelError> {
    rep.iter()
        .map(|v| {
            v.validate()?;
            let t = if v.is_bounded() {
                Trapezoid {
                    id: v.id.clone(),
                    a: v.l.clone(),
                    d: &v.r - &v.t,
                    c: &v.l + &v.t,
                    b: v.r.clone(),
                    bounded: true,
                }
            } else {
                Trapezoid {
                    id: v.id.clone(),
                    a: v.l.clone(),
                    d: v.l.clone(),
                    c: v.r.clone(),
                    b: v.r.clone(),
                    bounded: false,
                }
            };
            t.validate()?;
            Ok(t)
        })
        .collect()
}

/// Trapezoids for a multitolerance representation: bounded vertices map to
/// `(a, d, c, b) = (l, rt, lt, r)`, unbounded as in the tolerance case.
pub fn trapezoids_from_multitolerance(
    rep: &[MultitoleranceVertex],
) -> Result<Vec<Trapezoid>, ModelError> {
    rep.iter()
        .map(|v| {
            v.validate()?;
            let t = match &v.tol {
                Tolerances::Bounded { lt, rt } => Trapezoid {
                    id: v.id.clone(),
                    a: v.l.clone(),
                    d: rt.clone(),
                    c: lt.clone(),
                    b: v.r.clone(),
                    bounded: true,
                },
                Tolerances::Unbounded => Trapezoid {
                    id: v.id.clone(),
                    a: v.l.clone(),
                    d: v.l.clone(),
                    c: v.r.clone(),
                    b: v.r.clone(),
                    bounded: false,
                },
            };
            t.validate()?;
            Ok(t)
        })
        .collect()
}

/// Cotangent of the side angle of the trapezoid at lower abscissa `x`,
/// interpolated between the left and right side cotangents with the
/// shared interpolation parameter.
pub fn angle_cot_at(t: &Trapezoid, x: &Rat) -> Result<Rat, ModelError> {
    if *x < t.a || *x > t.d {
        return Err(ModelError::AngleDomain);
    }
    if t.a == t.d {
        return Ok(t.cot_left());
    }
    // x = λ a + (1-λ) d  =>  λ = (d - x) / (d - a); y = λ c + (1-λ) b
    let lam = (&t.d - x) / (&t.d - &t.a);
    let y = &lam * &t.c + (rat_int(1) - &lam) * &t.b;
    Ok(y - x)
}

/// Intersection of two trapezoids spanning the strip between the two
/// parallel lines. Both side boundaries are linear in the height, so the
/// trapezoids are disjoint iff one is strictly left of the other on both
/// lines.
pub fn trapezoids_intersect(u: &Trapezoid, v: &Trapezoid) -> bool {
    let u_left_of_v = u.d < v.a && u.b < v.c;
    let v_left_of_u = v.d < u.a && v.b < u.c;
    !(u_left_of_v || v_left_of_u)
}

/// Adjacency of a bounded and an unbounded vertex on the trapezoid layer:
/// trapezoid intersection left of the bounded lower side, an angle
/// comparison across it, never beyond it.
pub fn trap_adjacent(tu: &Trapezoid, tv: &Trapezoid) -> Result<bool, ModelError> {
    assert!(tu.bounded && !tv.bounded, "trap_adjacent takes (bounded, unbounded)");
    let av = &tv.a;
    if *av < tu.a {
        return Ok(trapezoids_intersect(tu, tv));
    }
    if *av > tu.d {
        return Ok(false);
    }
    // a_u < a_v < d_u: adjacent iff φ_v <= φ_u(a_v), i.e. cot φ_v >= cot φ_u(a_v)
    let cot_v = tv.cot_left();
    let cot_u_at = angle_cot_at(tu, av)?;
    Ok(cot_v >= cot_u_at)
}

/// Shadow representation from a trapezoid list: bounded `v` becomes the
/// segment from `(a, Δ - cot_left)` to `(d, Δ - cot_right)`, unbounded `v`
/// the point `(a, Δ - (b - a))`, with `Δ = max b - min a`.
pub fn shadow_from_trapezoids(traps: &[Trapezoid]) -> Result<ShadowRepresentation, ModelError> {
    if traps.is_empty() {
        return Ok(ShadowRepresentation {
            points: vec![],
            segments: vec![],
            delta: Rat::zero(),
            horizontal: true,
        });
    }
    let delta = {
        let max_b = traps.iter().map(|t| t.b.clone()).max().unwrap();
        let min_a = traps.iter().map(|t| t.a.clone()).min().unwrap();
        max_b - min_a
    };
    let mut points = Vec::new();
    let mut segments = Vec::new();
    let mut horizontal = true;
    for t in traps {
        t.validate()?;
        if t.bounded {
            let p1 = Point::new(t.a.clone(), &delta - t.cot_left());
            let p2 = Point::new(t.d.clone(), &delta - t.cot_right());
            let seg = Segment::new(p1, p2).map_err(|_| ModelError::SlopeBound(t.id.clone()))?;
            if !seg.is_horizontal() {
                horizontal = false;
            }
            segments.push((t.id.clone(), seg));
        } else {
            points.push((t.id.clone(), Point::new(t.a.clone(), &delta - (&t.b - &t.a))));
        }
    }
    // deterministic ordering: points by x, segments by right-endpoint x
    points.sort_by(|(_, p1), (_, p2)| p1.x.cmp(&p2.x));
    segments.sort_by(|(_, s1), (_, s2)| s1.right().x.cmp(&s2.right().x));
    let rep = ShadowRepresentation { points, segments, delta, horizontal };
    rep.validate()?;
    Ok(rep)
}

/// Adjacency of two shapes under the shadow oracles: two points never,
/// point and segment iff the point lies in the segment's shadow, two
/// segments iff either meets the other's shadow.
pub fn shapes_adjacent(x: &Shape, y: &Shape) -> bool {
    match (x, y) {
        (Shape::Point(_), Shape::Point(_)) => false,
        (Shape::Point(p), Shape::Segment(s)) | (Shape::Segment(s), Shape::Point(p)) => {
            point_in_segment_shadow(s, p)
        }
        (Shape::Segment(s1), Shape::Segment(s2)) => {
            segment_meets_shadow(s1, s2) || segment_meets_shadow(s2, s1)
        }
    }
}

/// Adjacency by vertex id on a shadow representation.
pub fn shadow_adjacent(rep: &ShadowRepresentation, x: &str, y: &str) -> Result<bool, ModelError> {
    let sx = rep.shape_of(x)?;
    let sy = rep.shape_of(y)?;
    Ok(shapes_adjacent(&sx, &sy))
}

/// Hovering oracle: `u` hovers the unbounded vertex `v` iff `u`'s shape
/// meets the shadow of `v`'s point. Requires `v` to be a point and
/// `u != v`.
pub fn hovering(rep: &ShadowRepresentation, v: &str, u: &str) -> Result<bool, ModelError> {
    if u == v {
        return Err(ModelError::SelfHovering);
    }
    let pv = match rep.shape_of(v)? {
        Shape::Point(p) => p,
        Shape::Segment(_) => return Err(ModelError::NotAPoint(v.to_string())),
    };
    let su = rep.shape_of(u)?;
    Ok(shape_meets_point_shadow(&pv, &su))
}

/// Convert every non-inevitable point (one with an empty hovering set)
/// into a degenerate single-point segment, repeating until every
/// remaining point has at least one hoverer. Adjacency is unchanged.
pub fn canonicalize(rep: &ShadowRepresentation) -> ShadowRepresentation {
    let mut points = rep.points.clone();
    let mut segments = rep.segments.clone();
    loop {
        let mut converted = Vec::new();
        for (idx, (_, p)) in points.iter().enumerate() {
            let hovered = points
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .any(|(_, (_, q))| point_in_shadow(p, q))
                || segments
                    .iter()
                    .any(|(_, s)| shape_meets_point_shadow(p, &Shape::Segment(s.clone())));
            if !hovered {
                converted.push(idx);
            }
        }
        if converted.is_empty() {
            break;
        }
        for idx in converted.into_iter().rev() {
            let (pid, p) = points.remove(idx);
            segments.push((pid, Segment::degenerate(p)));
        }
    }
    points.sort_by(|(_, p1), (_, p2)| p1.x.cmp(&p2.x));
    segments.sort_by(|(_, s1), (_, s2)| s1.right().x.cmp(&s2.right().x));
    let horizontal = rep.horizontal && segments_horizontal(&segments);
    ShadowRepresentation { points, segments, delta: rep.delta.clone(), horizontal }
}

fn segments_horizontal(segments: &[(String, Segment)]) -> bool {
    segments.iter().all(|(_, s)| s.is_horizontal())
}

/// Is every point of the representation inevitable (hovered by something)?
pub fn is_canonical(rep: &ShadowRepresentation) -> bool {
    rep.points.iter().enumerate().all(|(idx, (_, p))| {
        rep.points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .any(|(_, (_, q))| point_in_shadow(p, q))
            || rep
                .segments
                .iter()
                .any(|(_, s)| shape_meets_point_shadow(p, &Shape::Segment(s.clone())))
    })
}

/// Dense element graph over a shadow representation: elements in sorted-id
/// order, adjacency and hovering masks precomputed. At most 64 elements.
#[derive(Clone, Debug)]
pub struct Arena {
    pub ids: Vec<String>,
    pub shapes: Vec<Shape>,
    /// adjacency mask per element, self-bit clear
    pub adj: Vec<u64>,
    /// for point elements: mask of other elements meeting the point's
    /// shadow (its hovering set); zero for segments
    pub hover: Vec<u64>,
}

impl Arena {
    pub fn from_representation(rep: &ShadowRepresentation) -> Result<Arena, ModelError> {
        if rep.len() > 64 {
            return Err(ModelError::TooLarge);
        }
        let mut entries: Vec<(String, Shape)> = rep
            .points
            .iter()
            .map(|(id, p)| (id.clone(), Shape::Point(p.clone())))
            .chain(
                rep.segments
                    .iter()
                    .map(|(id, s)| (id.clone(), Shape::Segment(s.clone()))),
            )
            .collect();
        entries.sort_by(|(a, _), (b, _)| a.cmp(b));
        let ids: Vec<String> = entries.iter().map(|(i, _)| i.clone()).collect();
        let shapes: Vec<Shape> = entries.into_iter().map(|(_, s)| s).collect();
        let n = shapes.len();
        let mut adj = vec![0u64; n];
        for i in 0..n {
            for j in (i + 1)..n {
                if shapes_adjacent(&shapes[i], &shapes[j]) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        let mut hover = vec![0u64; n];
        for i in 0..n {
            if let Shape::Point(p) = &shapes[i] {
                for (j, other) in shapes.iter().enumerate() {
                    if i != j && shape_meets_point_shadow(p, other) {
                        hover[i] |= 1 << j;
                    }
                }
            }
        }
        Ok(Arena { ids, shapes, adj, hover })
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Result<usize, ModelError> {
        self.ids
            .iter()
            .position(|i| i == id)
            .ok_or_else(|| ModelError::UnknownId(id.to_string()))
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Every element of `targets` is in `by` or adjacent to some element
    /// of `by`.
    pub fn dominates(&self, by: u64, targets: u64) -> bool {
        let mut rest = targets & !by;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            if self.adj[i] & by == 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    /// Connected components of the element graph, each a mask, in
    /// ascending order of their smallest element.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let i = f.trailing_zeros() as usize;
                    next |= self.adj[i] & !comp;
                    f &= f - 1;
                }
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn ids_of_mask(&self, mask: u64) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            out.insert(self.ids[i].clone());
            m &= m - 1;
        }
        out
    }
}

/// Full pairwise cross-check of a tolerance representation against its
/// derived layers: definitional vs shadow adjacency on every pair, and
/// the trapezoid oracle on every bounded/unbounded pair. Returns the
/// derived representation on success.
pub fn verify_tolerance_fidelity(
    vertices: &[ToleranceVertex],
) -> Result<ShadowRepresentation, String> {
    let traps = trapezoids_from_tolerance(vertices).map_err(|e| e.to_string())?;
    let rep = shadow_from_trapezoids(&traps).map_err(|e| e.to_string())?;
    if !rep.horizontal {
        return Err("tolerance input must give a horizontal representation".into());
    }
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            let defn = tol_adjacent(&vertices[i], &vertices[j]);
            let shad = shadow_adjacent(&rep, &vertices[i].id, &vertices[j].id)
                .map_err(|e| e.to_string())?;
            if defn != shad {
                return Err(format!(
                    "adjacency mismatch for ({}, {}): definitional {} vs shadow {}",
                    vertices[i].id, vertices[j].id, defn, shad
                ));
            }
            let (ti, tj) = (&traps[i], &traps[j]);
            let trap = if ti.bounded && tj.bounded {
                Some(trapezoids_intersect(ti, tj))
            } else if ti.bounded && !tj.bounded {
                Some(trap_adjacent(ti, tj).map_err(|e| e.to_string())?)
            } else if !ti.bounded && tj.bounded {
                Some(trap_adjacent(tj, ti).map_err(|e| e.to_string())?)
            } else {
                None // two unbounded vertices: trapezoids carry no adjacency claim
            };
            if let Some(t) = trap {
                let expected = if !ti.bounded && !tj.bounded { false } else { defn };
                if t != expected {
                    return Err(format!(
                        "trapezoid mismatch for ({}, {}): {} vs definitional {}",
                        vertices[i].id, vertices[j].id, t, defn
                    ));
                }
            } else if defn {
                return Err(format!(
                    "two unbounded vertices {} and {} reported adjacent",
                    vertices[i].id, vertices[j].id
                ));
            }
        }
    }
    Ok(rep)
}

/// Same cross-check for multitolerance representations.
pub fn verify_multitolerance_fidelity(
    vertices: &[MultitoleranceVertex],
) -> Result<ShadowRepresentation, String> {
    let traps = trapezoids_from_multitolerance(vertices).map_err(|e| e.to_string())?;
    let rep = shadow_from_trapezoids(&traps).map_err(|e| e.to_string())?;
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            let defn = multitol_adjacent(&vertices[i], &vertices[j]);
            let shad = shadow_adjacent(&rep, &vertices[i].id, &vertices[j].id)
                .map_err(|e| e.to_string())?;
            if defn != shad {
                return Err(format!(
                    "adjacency mismatch for ({}, {}): definitional {} vs shadow {}",
                    vertices[i].id, vertices[j].id, defn, shad
                ));
            }
            let (ti, tj) = (&traps[i], &traps[j]);
            if ti.bounded != tj.bounded {
                let (bt, ut) = if ti.bounded { (ti, tj) } else { (tj, ti) };
                let t = trap_adjacent(bt, ut).map_err(|e| e.to_string())?;
                if t != defn {
                    return Err(format!(
                        "trapezoid mismatch for ({}, {}): {} vs definitional {}",
                        vertices[i].id, vertices[j].id, t, defn
                    ));
                }
            } else if ti.bounded && tj.bounded {
                // bounded trapezoids are an intersection model of the
                // bounded part
                let t = trapezoids_intersect(ti, tj);
                if t != defn {
                    return Err(format!(
                        "trapezoid mismatch for ({}, {}): {} vs definitional {}",
                        vertices[i].id, vertices[j].id, t, defn
                    ));
                }
            }
        }
    }
    Ok(rep)
}

/// Deterministic perturbation restoring distinct x-coordinates: scale all
/// x-coordinates by `2n + 1` and add offsets `0..2n` in sorted order of
/// the original coordinates (ties broken by id). The caller re-runs the
/// fidelity/validation checks and rejects the result if they fail.
pub fn perturb_distinct_x(rep: &ShadowRepresentation) -> ShadowRepresentation {
    let n = rep.len();
    let scale = rat_int(2 * n as i64 + 1);
    let mut anchors: Vec<(Rat, String, usize)> = Vec::new();
    for (k, (id, p)) in rep.points.iter().enumerate() {
        anchors.push((p.x.clone(), id.clone(), k));
    }
    let base = rep.points.len();
    for (k, (id, s)) in rep.segments.iter().enumerate() {
        anchors.push((s.left().x.clone(), id.clone(), base + 2 * k));
        anchors.push((s.right().x.clone(), id.clone(), base + 2 * k + 1));
    }
    anchors.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut offset: BTreeMap<usize, Rat> = BTreeMap::new();
    for (rank, (_, _, key)) in anchors.into_iter().enumerate() {
        offset.insert(key, rat_int(rank as i64));
    }
    let remap = |x: &Rat, key: usize| -> Rat { x * &scale + &offset[&key] };
    let points: Vec<(String, Point)> = rep
        .points
        .iter()
        .enumerate()
        .map(|(k, (id, p))| (id.clone(), Point::new(remap(&p.x, k), p.y.clone())))
        .collect();
    let segments: Vec<(String, Segment)> = rep
        .segments
        .iter()
        .enumerate()
        .map(|(k, (id, s))| {
            let l = Point::new(remap(&s.left().x, base + 2 * k), s.left().y.clone());
            let r = Point::new(remap(&s.right().x, base + 2 * k + 1), s.right().y.clone());
            (
                id.clone(),
                Segment::new(l, r).expect("x-scaling preserves endpoint order and slope bound"),
            )
        })
        .collect();
    ShadowRepresentation {
        points,
        segments,
        delta: rep.delta.clone(),
        horizontal: rep.horizontal,
    }
}

/// Crossing-pair tests lifted to ids.
pub fn left_crossing_by_id(
    rep: &ShadowRepresentation,
    j: &str,
    j2: &str,
) -> Result<bool, ModelError> {
    match (rep.shape_of(j)?, rep.shape_of(j2)?) {
        (Shape::Segment(a), Shape::Segment(b)) => Ok(is_left_crossing_pair(&a, &b)),
        _ => Err(ModelError::NotAPoint(j.to_string())),
    }
}

pub fn right_crossing_by_id(
    rep: &ShadowRepresentation,
    i: &str,
    i2: &str,
) -> Result<bool, ModelError> {
    match (rep.shape_of(i)?, rep.shape_of(i2)?) {
        (Shape::Segment(a), Shape::Segment(b)) => Ok(is_right_crossing_pair(&a, &b)),
        _ => Err(ModelError::NotAPoint(i.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rat, rat, rat_int};

    fn tv(id: &str, l: i64, r: i64, t: Rat) -> ToleranceVertex {
        ToleranceVertex { id: id.into(), l: rat_int(l), r: rat_int(r), t }
    }

    /// The running three-vertex instance: a triangle with two bounded
    /// vertices and one unbounded vertex.
    pub fn e1() -> Vec<ToleranceVertex> {
        vec![
            tv("u", 0, 4, rat_int(1)),
            tv("v", 2, 8, rat(5, 2)),
            ToleranceVertex {
                id: "w".into(),
                l: parse_rat("2.9").unwrap(),
                r: parse_rat("5.9").unwrap(),
                t: rat_int(10),
            },
        ]
    }

    #[test]
    fn tolerance_adjacency() {
        let vs = e1();
        assert!(tol_adjacent(&vs[0], &vs[1]));
        assert!(tol_adjacent(&vs[0], &vs[2]));
        assert!(tol_adjacent(&vs[1], &vs[2]));
        assert!(!tol_adjacent(&tv("a", 0, 1, rat_int(1)), &tv("b", 5, 6, rat_int(1))));
    }

    #[test]
    fn e1_shadow_layout() {
        let traps = trapezoids_from_tolerance(&e1()).unwrap();
        assert_eq!(traps[0].a, rat_int(0));
        assert_eq!(traps[0].d, rat_int(3));
        assert_eq!(traps[0].c, rat_int(1));
        assert_eq!(traps[0].b, rat_int(4));
        assert!(!traps[2].bounded);
        assert_eq!(traps[2].cot_left(), rat_int(3));
        let rep = shadow_from_trapezoids(&traps).unwrap();
        assert_eq!(rep.delta, rat_int(8));
        assert!(rep.horizontal);
        let lu = rep.shape_of("u").unwrap();
        match lu {
            Shape::Segment(s) => {
                assert_eq!(s.left(), &Point::new(rat_int(0), rat_int(7)));
                assert_eq!(s.right(), &Point::new(rat_int(3), rat_int(7)));
            }
            _ => panic!("u must be a segment"),
        }
        let lv = rep.shape_of("v").unwrap();
        match lv {
            Shape::Segment(s) => {
                assert_eq!(s.left(), &Point::new(rat_int(2), rat(11, 2)));
                assert_eq!(s.right(), &Point::new(rat(11, 2), rat(11, 2)));
            }
            _ => panic!("v must be a segment"),
        }
        match rep.shape_of("w").unwrap() {
            Shape::Point(p) => assert_eq!(p, Point::new(parse_rat("2.9").unwrap(), rat_int(5))),
            _ => panic!("w must be a point"),
        }
        assert!(shadow_adjacent(&rep, "u", "v").unwrap());
        assert!(shadow_adjacent(&rep, "u", "w").unwrap());
        assert!(shadow_adjacent(&rep, "v", "w").unwrap());
    }

    #[test]
    fn e1_fidelity() {
        verify_tolerance_fidelity(&e1()).unwrap();
    }

    #[test]
    fn multitolerance_trapezoids() {
        let v = MultitoleranceVertex {
            id: "a".into(),
            l: rat_int(0),
            r: rat_int(10),
            tol: Tolerances::Bounded { lt: rat_int(3), rt: rat_int(8) },
        };
        let t = &trapezoids_from_multitolerance(&[v]).unwrap()[0];
        assert_eq!((t.a.clone(), t.d.clone(), t.c.clone(), t.b.clone()),
                   (rat_int(0), rat_int(8), rat_int(3), rat_int(10)));
        assert_eq!(t.cot_left(), rat_int(3));
        assert_eq!(t.cot_right(), rat_int(2));
        // degenerate tolerant points: rectangle-like trapezoid
        let z = MultitoleranceVertex {
            id: "z".into(),
            l: rat_int(0),
            r: rat_int(5),
            tol: Tolerances::Bounded { lt: rat_int(0), rt: rat_int(5) },
        };
        let tz = &trapezoids_from_multitolerance(&[z]).unwrap()[0];
        assert_eq!(tz.cot_left(), rat_int(0));
        assert_eq!(tz.cot_right(), rat_int(0));
    }

    #[test]
    fn multitol_unbounded_pairs_never_adjacent() {
        let u = MultitoleranceVertex {
            id: "u".into(),
            l: rat_int(0),
            r: rat_int(10),
            tol: Tolerances::Unbounded,
        };
        let v = MultitoleranceVertex {
            id: "v".into(),
            l: rat_int(1),
            r: rat_int(4),
            tol: Tolerances::Unbounded,
        };
        assert!(!multitol_adjacent(&u, &v));
        // containment with zero slack: lt = l, rt = r, nested intervals
        let w = MultitoleranceVertex {
            id: "w".into(),
            l: rat_int(2),
            r: rat_int(3),
            tol: Tolerances::Bounded { lt: rat_int(2), rt: rat_int(3) },
        };
        assert!(multitol_adjacent(&w, &u));
    }

    #[test]
    fn angle_interpolation() {
        let t = Trapezoid {
            id: "t".into(),
            a: rat_int(0),
            d: rat_int(4),
            c: rat_int(2),
            b: rat_int(6),
            bounded: true,
        };
        // parallelogram: constant cotangent
        assert_eq!(angle_cot_at(&t, &rat_int(0)).unwrap(), rat_int(2));
        assert_eq!(angle_cot_at(&t, &rat_int(4)).unwrap(), rat_int(2));
        assert_eq!(angle_cot_at(&t, &rat_int(1)).unwrap(), rat_int(2));
        assert!(angle_cot_at(&t, &rat_int(5)).is_err());
        let tr = Trapezoid {
            id: "r".into(),
            a: rat_int(0),
            d: rat_int(4),
            c: rat_int(3),
            b: rat_int(5),
            bounded: true,
        };
        assert_eq!(angle_cot_at(&tr, &rat_int(0)).unwrap(), rat_int(3));
        assert_eq!(angle_cot_at(&tr, &rat_int(4)).unwrap(), rat_int(1));
        assert_eq!(angle_cot_at(&tr, &rat_int(2)).unwrap(), rat_int(2));
    }

    #[test]
    fn canonicalize_preserves_adjacency() {
        let rep = verify_tolerance_fidelity(&e1()).unwrap();
        // w has no hoverer in E1, so it becomes bounded
        let canon = canonicalize(&rep);
        assert!(canon.points.is_empty());
        assert!(is_canonical(&canon));
        for a in ["u", "v", "w"] {
            for b in ["u", "v", "w"] {
                if a < b {
                    assert_eq!(
                        shadow_adjacent(&rep, a, b).unwrap(),
                        shadow_adjacent(&canon, a, b).unwrap()
                    );
                }
            }
        }
        // idempotent
        assert_eq!(canonicalize(&canon), canon);
    }

    #[test]
    fn hovering_errors() {
        let rep = verify_tolerance_fidelity(&e1()).unwrap();
        assert!(matches!(hovering(&rep, "w", "w"), Err(ModelError::SelfHovering)));
        assert!(matches!(hovering(&rep, "u", "v"), Err(ModelError::NotAPoint(_))));
        assert!(matches!(hovering(&rep, "zz", "u"), Err(ModelError::UnknownId(_))));
        // u and v are adjacent to w, not hovering it
        assert!(!hovering(&rep, "w", "u").unwrap());
        assert!(!hovering(&rep, "w", "v").unwrap());
    }

    #[test]
    fn arena_components() {
        let rep = verify_tolerance_fidelity(&e1()).unwrap();
        let arena = Arena::from_representation(&rep).unwrap();
        assert_eq!(arena.components().len(), 1);
        assert!(arena.dominates(
            1 << arena.index_of("u").unwrap(),
            arena.full_mask()
        ));
    }

    /// A six-vertex multitolerance layout with three unbounded vertices,
    /// one of which has an empty hovering set. Mirrors the adjacency and
    /// hovering patterns used as the running example for
    /// canonicalization.
    fn three_point_layout() -> ShadowRepresentation {
        let seg = |x1: i64, y1: Rat, x2: i64, y2: Rat| {
            Segment::new(Point::new(rat_int(x1), y1), Point::new(rat_int(x2), y2)).unwrap()
        };
        ShadowRepresentation {
            points: vec![
                ("v1".into(), Point::new(rat_int(-2), rat(-7, 2))),
                ("v2".into(), Point::new(rat_int(0), rat_int(0))),
                ("v5".into(), Point::new(rat_int(8), rat_int(6))),
            ],
            segments: vec![
                ("v3".into(), seg(1, rat_int(2), 3, rat_int(2))),
                ("v4".into(), seg(4, rat(7, 2), 6, rat(7, 2))),
                ("v6".into(), seg(9, rat(33, 4), 11, rat(33, 4))),
            ],
            delta: rat_int(12),
            horizontal: true,
        }
    }

    #[test]
    fn hovering_and_adjacency_patterns() {
        let rep = three_point_layout();
        rep.validate().unwrap();
        // an unbounded vertex adjacent to one bounded vertex but not another
        assert!(shadow_adjacent(&rep, "v2", "v3").unwrap());
        assert!(!shadow_adjacent(&rep, "v2", "v4").unwrap());
        assert!(shadow_adjacent(&rep, "v3", "v4").unwrap());
        // hovering: a point hovered by another point, and by a segment
        assert!(hovering(&rep, "v2", "v1").unwrap());
        assert!(hovering(&rep, "v5", "v4").unwrap());
        // v1 has an empty hovering set, v2 and v5 do not
        assert!(!is_canonical(&rep));
        let canon = canonicalize(&rep);
        let v1_kind = canon.shape_of("v1").unwrap();
        assert!(matches!(v1_kind, Shape::Segment(_)));
        assert!(matches!(canon.shape_of("v2").unwrap(), Shape::Point(_)));
        assert!(matches!(canon.shape_of("v5").unwrap(), Shape::Point(_)));
        // adjacency unchanged across the conversion
        let ids = ["v1", "v2", "v3", "v4", "v5", "v6"];
        for a in ids {
            for b in ids {
                if a < b {
                    assert_eq!(
                        shadow_adjacent(&rep, a, b).unwrap(),
                        shadow_adjacent(&canon, a, b).unwrap(),
                        "pair ({a}, {b})"
                    );
                }
            }
        }
        // every inevitable vertex keeps the neighborhood-containment
        // property with each of its hoverers
        for (v, u) in [("v2", "v1"), ("v5", "v4")] {
            for other in ids {
                if other == v || other == u {
                    continue;
                }
                if shadow_adjacent(&rep, v, other).unwrap() {
                    assert!(shadow_adjacent(&rep, u, other).unwrap());
                }
            }
        }
    }

    #[test]
    fn embedding_matches_tolerance_adjacency() {
        // bounded tolerance vertices, viewed as multitolerance vertices,
        // keep their adjacency relation pair for pair
        use rand::Rng;
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(42);
        for _ in 0..1000 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                let l = rng.gen_range(0..40i64);
                let w = rng.gen_range(1..20i64);
                let t = rng.gen_range(1..=w);
                ToleranceVertex {
                    id: "x".into(),
                    l: rat_int(l),
                    r: rat_int(l + w),
                    t: rat_int(t),
                }
            };
            let u = mk(&mut rng);
            let v = mk(&mut rng);
            assert_eq!(
                tol_adjacent(&u, &v),
                multitol_adjacent(&tolerance_as_multitolerance(&u), &tolerance_as_multitolerance(&v))
            );
        }
    }

    #[test]
    fn perturbation_restores_distinct_x() {
        let rep = ShadowRepresentation {
            points: vec![
                ("a".into(), Point::new(rat_int(0), rat_int(0))),
                ("b".into(), Point::new(rat_int(0), rat_int(5))),
                ("c".into(), Point::new(rat_int(2), rat_int(9))),
            ],
            segments: vec![],
            delta: rat_int(1),
            horizontal: true,
        };
        assert!(rep.validate().is_err());
        let fixed = perturb_distinct_x(&rep);
        let xs: Vec<Rat> = fixed.points.iter().map(|(_, p)| p.x.clone()).collect();
        assert!(xs[0] != xs[1] && xs[1] != xs[2] && xs[0] != xs[2]);
        // relative x-order is preserved
        assert!(xs[0] < xs[2] && xs[1] < xs[2]);
    }

    #[test]
    fn validator_catches_collisions() {
        let p1 = ("a".to_string(), Point::new(rat_int(0), rat_int(0)));
        let p2 = ("b".to_string(), Point::new(rat_int(0), rat_int(5)));
        let rep = ShadowRepresentation {
            points: vec![p1, p2],
            segments: vec![],
            delta: rat_int(1),
            horizontal: true,
        };
        assert!(matches!(rep.validate(), Err(ModelError::XCollision(_, _))));
    }
}

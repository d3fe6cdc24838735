//! Exact planar primitives: points, line segments, shadows, reverse
//! shadows, wedge regions and the window selector.
//!
//! Conventions used throughout:
//! * the *diagonal value* of a point `(x, y)` is `d = y - x`; the diagonal
//!   line through a point keeps `d` constant, the vertical line keeps `x`
//!   constant;
//! * "left of the diagonal" means `d >= d_t` (visually above-left),
//!   "right of the diagonal" means `d <= d_t`;
//! * a shadow is the closed lower-left wedge `{x <= t_x, d <= d_t}`, a
//!   reverse shadow the closed upper-right wedge `{x >= t_x, d >= d_t}`.
//!
//! All predicates are exact; boundary points are members (closed sets),
//! which the crossing-pair self-cases `(j, j)` and `(i, i)` rely on.

use crate::rational::Rat;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("segment endpoints out of order: left x must not exceed right x")]
    EndpointOrder,
    #[error("segment slope out of range: requires y2 - y1 <= x2 - x1")]
    SlopeBound,
    #[error("window selector requires the second anchor right of the first anchor's diagonal")]
    WindowOrientation,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    /// Diagonal value `y - x`.
    pub fn diag(&self) -> Rat {
        &self.y - &self.x
    }
}

/// A line segment with `left.x <= right.x` and slope at most one, so the
/// diagonal value is non-increasing from left to right. For a vertical
/// segment (`left.x == right.x`) the left endpoint is the upper one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Segment {
    left: Point,
    right: Point,
}

impl Segment {
    pub fn new(p1: Point, p2: Point) -> Result<Self, GeometryError> {
        let (left, right) = if p1.x < p2.x {
            (p1, p2)
        } else if p2.x < p1.x {
            (p2, p1)
        } else if p1.y >= p2.y {
            (p1, p2)
        } else {
            (p2, p1)
        };
        if &right.y - &left.y > &right.x - &left.x {
            return Err(GeometryError::SlopeBound);
        }
        Ok(Segment { left, right })
    }

    pub fn degenerate(p: Point) -> Self {
        Segment { left: p.clone(), right: p }
    }

    pub fn left(&self) -> &Point {
        &self.left
    }

    pub fn right(&self) -> &Point {
        &self.right
    }

    pub fn is_degenerate(&self) -> bool {
        self.left == self.right
    }

    pub fn is_horizontal(&self) -> bool {
        self.left.y == self.right.y
    }

    /// Largest diagonal value attained on the segment (at the left endpoint).
    pub fn diag_max(&self) -> Rat {
        self.left.diag()
    }

    /// Smallest diagonal value attained on the segment (at the right endpoint).
    pub fn diag_min(&self) -> Rat {
        self.right.diag()
    }

    /// Diagonal value of the segment point at abscissa `x`.
    /// Requires `left.x <= x <= right.x` and a non-vertical segment,
    /// except that on a vertical or degenerate segment the maximal
    /// diagonal value is returned.
    fn diag_at(&self, x: &Rat) -> Rat {
        debug_assert!(*x >= self.left.x && *x <= self.right.x);
        if self.left.x == self.right.x {
            return self.left.diag();
        }
        let dl = self.left.diag();
        let dr = self.right.diag();
        let t = (x - &self.left.x) / (&self.right.x - &self.left.x);
        &dl + &t * (dr - &dl)
    }

    /// Diagonal value of the upper boundary of the segment's shadow at
    /// abscissa `x`: constant left of the segment, interpolated across it.
    /// Requires `x <= right.x`.
    pub fn shadow_boundary_diag(&self, x: &Rat) -> Rat {
        debug_assert!(*x <= self.right.x);
        if *x <= self.left.x {
            self.left.diag()
        } else {
            self.diag_at(x)
        }
    }

    /// Diagonal value of the lower boundary of the segment's reverse
    /// shadow at abscissa `x`: interpolated across the segment, constant
    /// right of it. Requires `x >= left.x`.
    pub fn reverse_boundary_diag(&self, x: &Rat) -> Rat {
        debug_assert!(*x >= self.left.x);
        if *x >= self.right.x {
            self.right.diag()
        } else {
            self.diag_at(x)
        }
    }
}

/// A point or a segment; the two element kinds of a shadow representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Shape {
    Point(Point),
    Segment(Segment),
}

impl Shape {
    pub fn min_x(&self) -> &Rat {
        match self {
            Shape::Point(p) => &p.x,
            Shape::Segment(s) => &s.left().x,
        }
    }

    pub fn max_x(&self) -> &Rat {
        match self {
            Shape::Point(p) => &p.x,
            Shape::Segment(s) => &s.right().x,
        }
    }

    pub fn diag_max(&self) -> Rat {
        match self {
            Shape::Point(p) => p.diag(),
            Shape::Segment(s) => s.diag_max(),
        }
    }

    pub fn diag_min(&self) -> Rat {
        match self {
            Shape::Point(p) => p.diag(),
            Shape::Segment(s) => s.diag_min(),
        }
    }
}

/// `x` lies in the closed shadow of the point `t`.
pub fn point_in_shadow(t: &Point, x: &Point) -> bool {
    x.x <= t.x && x.diag() <= t.diag()
}

/// `x` lies in the closed reverse shadow of the point `t`.
pub fn point_in_reverse_shadow(t: &Point, x: &Point) -> bool {
    x.x >= t.x && x.diag() >= t.diag()
}

/// `x` lies in the shadow of the segment `l` (union of the shadows of all
/// its points). Exact: the witness anchor, when one exists, is the segment
/// point at abscissa `max(left.x, x.x)`.
pub fn point_in_segment_shadow(l: &Segment, x: &Point) -> bool {
    if x.x > l.right().x {
        return false;
    }
    x.diag() <= l.shadow_boundary_diag(&x.x)
}

/// `x` lies in the reverse shadow of the segment `l`.
pub fn point_in_segment_reverse_shadow(l: &Segment, x: &Point) -> bool {
    if x.x < l.left().x {
        return false;
    }
    x.diag() >= l.reverse_boundary_diag(&x.x)
}

/// Some point of `lv` lies in the shadow of `lu` (one side of the
/// segment-segment adjacency test).
///
/// Both the segment and the shadow boundary are piecewise linear in `x`,
/// so it suffices to test the points of `lv` at the breakpoint abscissas:
/// the endpoints of `lv` and the endpoints of `lu` clamped into `lv`'s
/// x-range.
pub fn segment_meets_shadow(lv: &Segment, lu: &Segment) -> bool {
    let lo = &lv.left().x;
    let hi = &lv.right().x;
    let mut candidates: Vec<Point> = vec![lv.left().clone(), lv.right().clone()];
    for x in [&lu.left().x, &lu.right().x] {
        if x > lo && x < hi {
            candidates.push(Point::new(x.clone(), x + lv.diag_at(x)));
        }
    }
    candidates.iter().any(|pt| point_in_segment_shadow(lu, pt))
}

/// Shadow membership of a point in the shadow of either anchor kind.
pub fn shape_shadow_contains(anchor: &Shape, x: &Point) -> bool {
    match anchor {
        Shape::Point(t) => point_in_shadow(t, x),
        Shape::Segment(s) => point_in_segment_shadow(s, x),
    }
}

/// Reverse-shadow membership of a point for either anchor kind.
pub fn shape_reverse_shadow_contains(anchor: &Shape, x: &Point) -> bool {
    match anchor {
        Shape::Point(t) => point_in_reverse_shadow(t, x),
        Shape::Segment(s) => point_in_segment_reverse_shadow(s, x),
    }
}

/// Does `shape` intersect the shadow of the point `t`?
pub fn shape_meets_point_shadow(t: &Point, shape: &Shape) -> bool {
    match shape {
        // x in S_t
        Shape::Point(p) => point_in_shadow(t, p),
        // lowest diagonal value among segment points with x <= t.x
        Shape::Segment(s) => {
            if s.left().x > t.x {
                return false;
            }
            let x = if s.right().x <= t.x { s.right().x.clone() } else { t.x.clone() };
            s.reverse_boundary_diag(&x) <= t.diag()
        }
    }
}

/// Does `shape` intersect the reverse shadow of the point `t`?
pub fn shape_meets_point_reverse_shadow(t: &Point, shape: &Shape) -> bool {
    match shape {
        Shape::Point(p) => point_in_reverse_shadow(t, p),
        // highest diagonal value among segment points with x >= t.x
        Shape::Segment(s) => {
            if s.right().x < t.x {
                return false;
            }
            let x = if s.left().x >= t.x { s.left().x.clone() } else { t.x.clone() };
            s.shadow_boundary_diag(&x) >= t.diag()
        }
    }
}

/// Does `shape` intersect the shadow of segment `anchor`?
pub fn shape_meets_segment_shadow(anchor: &Segment, shape: &Shape) -> bool {
    match shape {
        Shape::Point(p) => point_in_segment_shadow(anchor, p),
        Shape::Segment(s) => segment_meets_shadow(s, anchor),
    }
}

/// Wedge and half-plane regions, all decidable exactly for points and
/// (by convexity) for segments via their endpoints.
#[derive(Clone, Debug)]
pub enum Region {
    /// Closed lower-left wedge of the anchor.
    Shadow(Point),
    /// Closed upper-right wedge of the anchor.
    ReverseShadow(Point),
    /// `{x >= t.x, d <= d_t}`: right of both lines through the anchor.
    LowerRight(Point),
    /// `{x <= t.x, d >= d_t}`: left of both lines through the anchor.
    UpperLeft(Point),
    LeftOfVertical(Point),
    RightOfVertical(Point),
    /// `{d >= d_t}`.
    LeftOfDiagonal(Point),
    /// `{d <= d_t}`.
    RightOfDiagonal(Point),
    /// The window `R(a, b)`: `{x < b.x, d_b <= d <= d_a}` — the upper-left
    /// wedge of `b` without `b`'s vertical line, right of `a`'s diagonal.
    Window(Point, Point),
}

impl Region {
    pub fn contains_point(&self, p: &Point) -> bool {
        match self {
            Region::Shadow(t) => point_in_shadow(t, p),
            Region::ReverseShadow(t) => point_in_reverse_shadow(t, p),
            Region::LowerRight(t) => p.x >= t.x && p.diag() <= t.diag(),
            Region::UpperLeft(t) => p.x <= t.x && p.diag() >= t.diag(),
            Region::LeftOfVertical(t) => p.x <= t.x,
            Region::RightOfVertical(t) => p.x >= t.x,
            Region::LeftOfDiagonal(t) => p.diag() >= t.diag(),
            Region::RightOfDiagonal(t) => p.diag() <= t.diag(),
            Region::Window(a, b) => {
                p.x < b.x && p.diag() >= b.diag() && p.diag() <= a.diag()
            }
        }
    }

    /// Every point of the segment lies in the region. All region kinds are
    /// intersections of (open or closed) half-planes, so endpoint
    /// membership is sufficient.
    pub fn contains_segment(&self, s: &Segment) -> bool {
        self.contains_point(s.left()) && self.contains_point(s.right())
    }

    pub fn contains_shape(&self, shape: &Shape) -> bool {
        match shape {
            Shape::Point(p) => self.contains_point(p),
            Shape::Segment(s) => self.contains_segment(s),
        }
    }
}

/// Left-crossing pair test: the left endpoint of `lj` lies in the shadow
/// of the left endpoint of `lj2`. Self-pairs are allowed.
pub fn is_left_crossing_pair(lj: &Segment, lj2: &Segment) -> bool {
    point_in_shadow(lj2.left(), lj.left())
}

/// Right-crossing pair test: the right endpoint of `li2` lies in the
/// shadow of the right endpoint of `li`. Self-pairs are allowed.
pub fn is_right_crossing_pair(li: &Segment, li2: &Segment) -> bool {
    point_in_shadow(li.right(), li2.right())
}

/// Ids of the elements entirely inside the window `R(a, b)`.
/// Requires `b` right of the diagonal through `a`.
pub fn select_window<I: Clone + Ord>(
    a: &Point,
    b: &Point,
    elements: &[(I, Shape)],
) -> Result<std::collections::BTreeSet<I>, GeometryError> {
    if b.diag() > a.diag() {
        return Err(GeometryError::WindowOrientation);
    }
    let region = Region::Window(a.clone(), b.clone());
    Ok(elements
        .iter()
        .filter(|(_, shape)| region.contains_shape(shape))
        .map(|(id, _)| id.clone())
        .collect())
}

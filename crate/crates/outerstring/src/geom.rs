//! Exact rational geometry for grounded polyline strings.
//!
//! The model is the upper half-plane: the ground is the x-axis and the
//! interior of every string stays strictly above it. All predicates are
//! computed over arbitrary-precision rationals; nothing here rounds.

use num::{BigInt, BigRational, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Exact scalar used throughout the crate.
pub type Q = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn on_ground(&self) -> bool {
        self.y.is_zero()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the cross product (b - a) x (c - a): 1 when c lies to the left of
/// the directed line a->b, -1 to the right, 0 when collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn between_collinear(a: &Point, b: &Point, p: &Point) -> bool {
    // assumes a, b, p collinear; true if p lies in the closed segment [a, b]
    let lo_x = a.x.clone().min(b.x.clone());
    let hi_x = a.x.clone().max(b.x.clone());
    let lo_y = a.y.clone().min(b.y.clone());
    let hi_y = a.y.clone().max(b.y.clone());
    lo_x <= p.x && p.x <= hi_x && lo_y <= p.y && p.y <= hi_y
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegIntersection {
    /// No common point.
    Empty,
    /// Interiors cross transversally at this single point.
    Proper(Point),
    /// Any contact that is not a proper transversal crossing.
    Degenerate(Degeneracy),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    SharedEndpoint,
    EndpointOnSegment,
    CollinearOverlap,
}

/// Exact classification of the intersection of segments a1-a2 and b1-b2.
pub fn segment_intersection(a1: &Point, a2: &Point, b1: &Point, b2: &Point) -> SegIntersection {
    let o1 = orient(a1, a2, b1);
    let o2 = orient(a1, a2, b2);
    let o3 = orient(b1, b2, a1);
    let o4 = orient(b1, b2, a2);

    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        // strictly transversal crossing; solve a1 + t (a2 - a1)
        let dax = &a2.x - &a1.x;
        let day = &a2.y - &a1.y;
        let dbx = &b2.x - &b1.x;
        let dby = &b2.y - &b1.y;
        let denom = &dax * &dby - &day * &dbx;
        let t = ((&b1.x - &a1.x) * &dby - (&b1.y - &a1.y) * &dbx) / &denom;
        let x = &a1.x + &dax * &t;
        let y = &a1.y + &day * &t;
        return SegIntersection::Proper(Point::new(x, y));
    }

    if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
        // all collinear: overlap, touch, or disjoint
        let pts = [(a1, b1, b2), (a2, b1, b2)];
        let a_on_b: Vec<&Point> = pts
            .iter()
            .filter(|(p, s, t)| between_collinear(s, t, p))
            .map(|(p, _, _)| *p)
            .collect();
        let b_on_a: Vec<&Point> = [b1, b2]
            .into_iter()
            .filter(|p| between_collinear(a1, a2, p))
            .collect();
        if a_on_b.is_empty() && b_on_a.is_empty() {
            return SegIntersection::Empty;
        }
        // collect the shared closed set; a single common point means a touch
        let mut common: Vec<&Point> = a_on_b;
        common.extend(b_on_a);
        common.sort();
        common.dedup();
        if common.len() == 1 {
            return SegIntersection::Degenerate(Degeneracy::SharedEndpoint);
        }
        return SegIntersection::Degenerate(Degeneracy::CollinearOverlap);
    }

    let shares_endpoint = a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2;
    if shares_endpoint {
        return SegIntersection::Degenerate(Degeneracy::SharedEndpoint);
    }

    // an endpoint of one segment lying on the other (possibly its interior)
    let touch = (o1 == 0 && between_collinear(a1, a2, b1))
        || (o2 == 0 && between_collinear(a1, a2, b2))
        || (o3 == 0 && between_collinear(b1, b2, a1))
        || (o4 == 0 && between_collinear(b1, b2, a2));
    if touch {
        return SegIntersection::Degenerate(Degeneracy::EndpointOnSegment);
    }
    SegIntersection::Empty
}

/// A polyline with exactly one endpoint on the ground line.
///
/// `vertices[0]` is the ground point (y = 0); every later vertex lies
/// strictly above the ground.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundedString {
    pub id: String,
    pub vertices: Vec<Point>,
}

impl GroundedString {
    pub fn new(id: impl Into<String>, vertices: Vec<Point>) -> Self {
        GroundedString {
            id: id.into(),
            vertices,
        }
    }

    pub fn ground_point(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// A set of grounded strings; the geometric input everything else consumes.
#[derive(Clone, Debug, Default)]
pub struct Instance {
    pub strings: Vec<GroundedString>,
}

impl Instance {
    pub fn new(strings: Vec<GroundedString>) -> Self {
        Instance { strings }
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Fewer than two vertices, or repeated consecutive vertices.
    MalformedString { id: String, reason: String },
    /// First vertex off the ground, or a later vertex at or below it.
    BadGrounding { id: String },
    /// A string crosses or touches itself.
    SelfIntersection { id: String },
    /// Two strings meet without crossing transversally.
    NonTransversal { a: String, b: String },
    /// Three or more strings pass through one point.
    ConcurrentTriple { ids: Vec<String>, at: Point },
    /// Two ground points share an x-coordinate.
    DuplicateGroundX { a: String, b: String },
    /// Two strings carry the same identifier.
    DuplicateId { id: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MalformedString { id, reason } => write!(f, "string {id}: {reason}"),
            Violation::BadGrounding { id } => {
                write!(f, "string {id}: first vertex must be the only ground contact")
            }
            Violation::SelfIntersection { id } => write!(f, "string {id}: self-intersection"),
            Violation::NonTransversal { a, b } => {
                write!(f, "strings {a}, {b}: non-transversal contact")
            }
            Violation::ConcurrentTriple { ids, at } => {
                write!(f, "strings {:?} concurrent at {:?}", ids, at)
            }
            Violation::DuplicateGroundX { a, b } => {
                write!(f, "strings {a}, {b}: ground points share an x-coordinate")
            }
            Violation::DuplicateId { id } => write!(f, "duplicate string id {id}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("degenerate contact between strings {a} and {b}")]
    DegenerateContact { a: String, b: String },
    #[error("perturbation epsilon too large: {0}")]
    EpsilonTooLarge(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

fn string_structure_violations(s: &GroundedString, grounded_both_ends: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    if s.vertices.len() < 2 {
        out.push(Violation::MalformedString {
            id: s.id.clone(),
            reason: "needs at least two vertices".into(),
        });
        return out;
    }
    for w in s.vertices.windows(2) {
        if w[0] == w[1] {
            out.push(Violation::MalformedString {
                id: s.id.clone(),
                reason: "repeated consecutive vertex".into(),
            });
            return out;
        }
    }
    let n = s.vertices.len();
    let interior_ok = s.vertices[1..n - 1].iter().all(|p| p.y.is_positive());
    let ends_ok = if grounded_both_ends {
        s.vertices[0].on_ground() && s.vertices[n - 1].on_ground() && n >= 2
    } else {
        s.vertices[0].on_ground() && s.vertices[n - 1].y.is_positive()
    };
    if !interior_ok || !ends_ok {
        out.push(Violation::BadGrounding { id: s.id.clone() });
    }
    // self-simplicity: non-adjacent segment pairs must be disjoint; adjacent
    // pairs share exactly the bend and must not fold back onto each other
    let vs = &s.vertices;
    for i in 0..n - 1 {
        for j in i + 1..n - 1 {
            let inter = segment_intersection(&vs[i], &vs[i + 1], &vs[j], &vs[j + 1]);
            if j == i + 1 {
                let folds = orient(&vs[i], &vs[i + 1], &vs[j + 1]) == 0
                    && between_collinear(&vs[i], &vs[i + 1], &vs[j + 1])
                    && vs[j + 1] != vs[i + 1];
                if folds || matches!(inter, SegIntersection::Degenerate(Degeneracy::CollinearOverlap)) {
                    out.push(Violation::SelfIntersection { id: s.id.clone() });
                    return out;
                }
            } else if !matches!(inter, SegIntersection::Empty) {
                out.push(Violation::SelfIntersection { id: s.id.clone() });
                return out;
            }
        }
    }
    out
}

fn pairwise_violations(
    a: &GroundedString,
    b: &GroundedString,
    crossings: &mut BTreeMap<Point, Vec<String>>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = false;
    for (p1, p2) in a.segments() {
        for (q1, q2) in b.segments() {
            match segment_intersection(p1, p2, q1, q2) {
                SegIntersection::Empty => {}
                SegIntersection::Proper(pt) => {
                    let e = crossings.entry(pt).or_default();
                    for id in [&a.id, &b.id] {
                        if !e.contains(id) {
                            e.push(id.clone());
                        }
                    }
                }
                SegIntersection::Degenerate(_) => bad = true,
            }
        }
    }
    if bad {
        out.push(Violation::NonTransversal {
            a: a.id.clone(),
            b: b.id.clone(),
        });
    }
    out
}

fn general_position_violations(strings: &[GroundedString], grounded_both_ends: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen_ids = BTreeMap::new();
    for s in strings {
        if let Some(_prev) = seen_ids.insert(s.id.clone(), ()) {
            out.push(Violation::DuplicateId { id: s.id.clone() });
        }
        out.extend(string_structure_violations(s, grounded_both_ends));
    }
    // pairwise distinct ground x-coordinates (every grounded endpoint counts)
    let mut ground_xs: Vec<(&Q, &str)> = Vec::new();
    for s in strings {
        if s.vertices.is_empty() {
            continue;
        }
        ground_xs.push((&s.vertices[0].x, &s.id));
        if grounded_both_ends {
            ground_xs.push((&s.vertices[s.vertices.len() - 1].x, &s.id));
        }
    }
    ground_xs.sort();
    for w in ground_xs.windows(2) {
        if w[0].0 == w[1].0 {
            out.push(Violation::DuplicateGroundX {
                a: w[0].1.to_string(),
                b: w[1].1.to_string(),
            });
        }
    }
    let mut crossings: BTreeMap<Point, Vec<String>> = BTreeMap::new();
    for i in 0..strings.len() {
        for j in i + 1..strings.len() {
            out.extend(pairwise_violations(&strings[i], &strings[j], &mut crossings));
        }
    }
    for (pt, ids) in crossings {
        if ids.len() >= 3 {
            out.push(Violation::ConcurrentTriple { ids, at: pt });
        }
    }
    out
}

/// Reports every general-position violation in the instance: concurrent
/// triples, non-transversal contacts, shared ground x-coordinates, strings
/// touching the ground away from their ground point, and malformed or
/// self-intersecting polylines. Empty output means the instance is valid.
pub fn validate_general_position(inst: &Instance) -> Vec<Violation> {
    general_position_violations(&inst.strings, false)
}

/// Same checks for a family of double-grounded curves (both endpoints on the
/// ground line).
pub fn validate_double_grounded(strings: &[GroundedString]) -> Vec<Violation> {
    general_position_violations(strings, true)
}

/// True iff some pair of polyline segments crosses, plus the crossing points
/// ordered along `a`. Any degenerate contact is an error.
pub fn strings_intersect(
    a: &GroundedString,
    b: &GroundedString,
) -> Result<(bool, Vec<Point>), GeomError> {
    let mut hits: Vec<(usize, Q, Point)> = Vec::new();
    for (i, (p1, p2)) in a.segments().enumerate() {
        for (q1, q2) in b.segments() {
            match segment_intersection(p1, p2, q1, q2) {
                SegIntersection::Empty => {}
                SegIntersection::Proper(pt) => {
                    // order along a: by segment index then parameter
                    let dax = &p2.x - &p1.x;
                    let t = if dax.is_zero() {
                        (&pt.y - &p1.y) / (&p2.y - &p1.y)
                    } else {
                        (&pt.x - &p1.x) / dax
                    };
                    hits.push((i, t, pt));
                }
                SegIntersection::Degenerate(_) => {
                    return Err(GeomError::DegenerateContact {
                        a: a.id.clone(),
                        b: b.id.clone(),
                    })
                }
            }
        }
    }
    hits.sort_by(|l, r| (l.0, &l.1).cmp(&(r.0, &r.1)));
    let pts: Vec<Point> = hits.into_iter().map(|(_, _, p)| p).collect();
    Ok((!pts.is_empty(), pts))
}

/// Minimum positive clearance of an instance: the smallest nonzero distance
/// measure between ground points, used to pick safe perturbation sizes.
/// Works on x-gaps of ground points and segment endpoint coordinates; this is
/// deliberately conservative rather than a true geometric clearance.
pub fn min_ground_gap(inst: &Instance) -> Option<Q> {
    let mut xs: Vec<&Q> = inst.strings.iter().map(|s| &s.vertices[0].x).collect();
    xs.sort();
    let mut best: Option<Q> = None;
    for w in xs.windows(2) {
        let d = w[1] - w[0];
        if d.is_positive() && best.as_ref().map_or(true, |b| &d < b) {
            best = Some(d);
        }
    }
    best
}

/// Produces `count` near-copies of a string that pairwise cross each other
/// while staying within an `epsilon`-neighborhood of the original. The i-th
/// copy shifts its ground point right by i*eps/count and the rest of the
/// polyline by i*eps/count in the opposite x-direction (and slightly up), so
/// the fan of first segments pairwise crosses. The result is re-validated;
/// any degeneracy or missing pairwise crossing is reported as EpsilonTooLarge.
pub fn perturb_copies(
    s: &GroundedString,
    count: usize,
    epsilon: &Q,
) -> Result<Vec<GroundedString>, GeomError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if count == 1 {
        return Ok(vec![s.clone()]);
    }
    if !epsilon.is_positive() {
        return Err(GeomError::EpsilonTooLarge("epsilon must be positive".into()));
    }
    let step = epsilon / q(count as i64);
    let mut copies = Vec::with_capacity(count);
    for i in 0..count {
        let d = &step * q(i as i64);
        let mut vs = Vec::with_capacity(s.vertices.len());
        vs.push(Point::new(&s.vertices[0].x + &d, q(0)));
        for v in &s.vertices[1..] {
            vs.push(Point::new(&v.x - &d, &v.y + &d / q(3)));
        }
        copies.push(GroundedString::new(format!("{}c{}", s.id, i), vs));
    }
    let viol = general_position_violations(&copies, false);
    if !viol.is_empty() {
        return Err(GeomError::EpsilonTooLarge(format!(
            "copies violate general position: {}",
            viol[0]
        )));
    }
    for i in 0..count {
        for j in i + 1..count {
            let (hit, _) = strings_intersect(&copies[i], &copies[j])?;
            if !hit {
                return Err(GeomError::EpsilonTooLarge(format!(
                    "copies {i} and {j} do not intersect"
                )));
            }
        }
    }
    Ok(copies)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: i64, ay: i64, bx: i64, by: i64) -> (Point, Point) {
        (Point::ints(ax, ay), Point::ints(bx, by))
    }

    #[test]
    fn proper_crossing_symmetric_x() {
        let (a1, a2) = seg(0, 0, 2, 2);
        let (b1, b2) = seg(2, 0, 0, 2);
        let got = segment_intersection(&a1, &a2, &b1, &b2);
        assert_eq!(got, SegIntersection::Proper(Point::ints(1, 1)));
        // exactness implies symmetry
        assert_eq!(segment_intersection(&b1, &b2, &a1, &a2), got);
    }

    #[test]
    fn disjoint_segments() {
        let (a1, a2) = seg(0, 0, 1, 1);
        let (b1, b2) = seg(3, 0, 4, 1);
        assert_eq!(
            segment_intersection(&a1, &a2, &b1, &b2),
            SegIntersection::Empty
        );
    }

    #[test]
    fn endpoint_on_interior_is_degenerate() {
        let (a1, a2) = seg(0, 0, 2, 2);
        let (b1, b2) = seg(1, 1, 3, 1);
        assert_eq!(
            segment_intersection(&a1, &a2, &b1, &b2),
            SegIntersection::Degenerate(Degeneracy::EndpointOnSegment)
        );
    }

    #[test]
    fn shared_endpoint_and_overlap() {
        let (a1, a2) = seg(0, 0, 2, 2);
        let (b1, b2) = seg(2, 2, 3, 0);
        assert_eq!(
            segment_intersection(&a1, &a2, &b1, &b2),
            SegIntersection::Degenerate(Degeneracy::SharedEndpoint)
        );
        let (c1, c2) = seg(1, 1, 3, 3);
        assert_eq!(
            segment_intersection(&a1, &a2, &c1, &c2),
            SegIntersection::Degenerate(Degeneracy::CollinearOverlap)
        );
    }

    #[test]
    fn strings_intersect_x_pair() {
        let g1 = GroundedString::new("a", vec![Point::ints(0, 0), Point::ints(2, 2)]);
        let g2 = GroundedString::new("b", vec![Point::ints(2, 0), Point::ints(0, 2)]);
        let (hit, pts) = strings_intersect(&g1, &g2).unwrap();
        assert!(hit);
        assert_eq!(pts, vec![Point::ints(1, 1)]);
    }

    #[test]
    fn strings_disjoint_v_arms() {
        let g1 = GroundedString::new("a", vec![Point::ints(0, 0), Point::ints(-2, 3)]);
        let g2 = GroundedString::new("b", vec![Point::ints(1, 0), Point::ints(3, 3)]);
        let (hit, pts) = strings_intersect(&g1, &g2).unwrap();
        assert!(!hit);
        assert!(pts.is_empty());
    }

    #[test]
    fn zigzag_crosses_twice_in_order() {
        // hand-enumerated: the zig-zag s2 crosses the straight s1 (y = x/2)
        // on its first segment at (6/5, 3/5) and its third at (10/3, 5/3);
        // the middle segment stays at y = 3, above s1
        let s1 = GroundedString::new("a", vec![Point::ints(0, 0), Point::ints(4, 2)]);
        let s2 = GroundedString::new(
            "b",
            vec![
                Point::ints(1, 0),
                Point::ints(2, 3),
                Point::ints(4, 3),
                Point::ints(3, 1),
            ],
        );
        let (hit, pts) = strings_intersect(&s1, &s2).unwrap();
        assert!(hit);
        assert_eq!(pts.len(), 2);
        // ordered along s1: increasing x
        assert!(pts[0].x < pts[1].x);
        let (hit_ba, pts_ba) = strings_intersect(&s2, &s1).unwrap();
        assert!(hit_ba);
        assert_eq!(pts.iter().cloned().collect::<std::collections::BTreeSet<_>>(),
                   pts_ba.into_iter().collect::<std::collections::BTreeSet<_>>());
    }

    #[test]
    fn validator_flags_concurrent_triple() {
        let mk = |id: &str, gx: i64, tx: i64, ty: i64| {
            GroundedString::new(id, vec![Point::ints(gx, 0), Point::ints(tx, ty)])
        };
        // three segments through (1,1)
        let inst = Instance::new(vec![
            mk("a", 0, 2, 2),
            mk("b", 2, 0, 2),
            mk("c", 1, 1, 2),
        ]);
        let v = validate_general_position(&inst);
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::ConcurrentTriple { ids, .. } if ids.len() == 3)));
    }

    #[test]
    fn validator_flags_tangential_touch() {
        let a = GroundedString::new("a", vec![Point::ints(0, 0), Point::ints(4, 4)]);
        // endpoint of b rests on the interior of a
        let b = GroundedString::new("b", vec![Point::ints(5, 0), Point::ints(2, 2)]);
        let inst = Instance::new(vec![a, b]);
        let v = validate_general_position(&inst);
        assert!(v.iter().any(|x| matches!(x, Violation::NonTransversal { .. })));
    }

    #[test]
    fn validator_flags_duplicate_ground_x() {
        let a = GroundedString::new("a", vec![Point::ints(0, 0), Point::ints(1, 2)]);
        let b = GroundedString::new("b", vec![Point::ints(0, 0), Point::ints(-1, 2)]);
        let inst = Instance::new(vec![a, b]);
        let v = validate_general_position(&inst);
        assert!(v.iter().any(|x| matches!(x, Violation::DuplicateGroundX { .. })));
    }

    #[test]
    fn perturb_single_copy_is_identity() {
        let s = GroundedString::new("a", vec![Point::ints(0, 0), Point::ints(2, 2)]);
        let out = perturb_copies(&s, 1, &qr(1, 8)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].vertices, s.vertices);
    }

    #[test]
    fn perturb_two_copies_cross() {
        let s = GroundedString::new("a", vec![Point::ints(0, 0), Point::ints(2, 2)]);
        let out = perturb_copies(&s, 2, &qr(1, 16)).unwrap();
        assert_eq!(out.len(), 2);
        let (hit, pts) = strings_intersect(&out[0], &out[1]).unwrap();
        assert!(hit);
        assert_eq!(pts.len(), 1);
    }

    #[test]
    fn perturb_rejects_huge_epsilon() {
        // enormous epsilon folds the copies into degenerate positions or
        // breaks the pairwise-crossing requirement for some count
        let s = GroundedString::new(
            "a",
            vec![Point::ints(0, 0), Point::ints(1, 4), Point::ints(2, 1)],
        );
        let r = perturb_copies(&s, 3, &q(100));
        assert!(r.is_err());
    }
}

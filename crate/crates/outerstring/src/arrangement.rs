//! Exact planar arrangements of grounded strings and their crossing-levels.
//!
//! The arrangement lives in the upper half-plane bounded below by the ground
//! line. A large rectangular "sky" wall closes the picture off so every face
//! is a finite cycle; the face outside the wall is excluded. The crossing
//! level of a face is the minimum number of distinct strings a curve from the
//! face must cross to reach unblocked ground, computed exactly by a
//! best-first search over (face, crossed-label-set) states with dominance
//! pruning, plus a cheap multiplicity upper bound and an exhaustive
//! subset-removal oracle for cross-checking.

use crate::geom::{
    segment_intersection, validate_double_grounded, validate_general_position, GroundedString,
    Instance, Point, Q, SegIntersection,
};
use num::{BigInt, One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};
use std::cmp::Reverse;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("query point is ambiguous (shares an x-coordinate with a vertex)")]
    AmbiguousQuery,
    #[error("too many strings for the subset oracle: {got} > {cap}")]
    OracleCapExceeded { got: usize, cap: usize },
}

pub type NodeId = usize;
pub type ArcId = usize;
pub type FaceId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcLabel {
    /// Piece of the strand with this index.
    Strand(usize),
    /// Piece of the ground line; never crossable, grants level 0.
    Ground,
    /// Piece of the artificial bounding wall; never crossable.
    Sky,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub point: Point,
}

/// A maximal straight piece of a strand (or wall) between two nodes.
#[derive(Clone, Debug)]
pub struct Arc {
    pub from: NodeId,
    pub to: NodeId,
    pub label: ArcLabel,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Half-edge cycle bounding this face (interior on the left).
    pub cycle: Vec<usize>,
    pub outer: bool,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub strand_ids: Vec<String>,
    pub nodes: Vec<Node>,
    pub arcs: Vec<Arc>,
    pub faces: Vec<Face>,
    /// face to the left of each half-edge; half-edge 2a is arc a forward,
    /// 2a+1 backward
    face_of: Vec<FaceId>,
    /// the face outside the bounding wall (not part of the half-plane)
    pub outer_face: FaceId,
    /// the unbounded interior face (touches the sky wall from below)
    pub ground_face: FaceId,
    /// faces whose boundary contains a positive-length piece of unblocked
    /// ground
    pub ground_seeds: Vec<FaceId>,
    /// number of proper string-string crossings
    pub crossing_count: usize,
    exact_levels: Vec<Option<usize>>,
}

fn he_target(arcs: &[Arc], he: usize) -> NodeId {
    if he % 2 == 0 {
        arcs[he / 2].to
    } else {
        arcs[he / 2].from
    }
}

fn he_source(arcs: &[Arc], he: usize) -> NodeId {
    if he % 2 == 0 {
        arcs[he / 2].from
    } else {
        arcs[he / 2].to
    }
}

/// CCW comparison of exact direction vectors, starting from (1, 0).
fn angle_key(d: &(Q, Q)) -> (u8,) {
    let upper = d.1.is_positive() || (d.1.is_zero() && d.0.is_positive());
    (if upper { 0 } else { 1 },)
}

fn dir_cmp(a: &(Q, Q), b: &(Q, Q)) -> std::cmp::Ordering {
    let ka = angle_key(a);
    let kb = angle_key(b);
    if ka != kb {
        return ka.cmp(&kb);
    }
    // same half-plane: a before b iff a x b > 0 (b is CCW of a)
    let cross = &a.0 * &b.1 - &a.1 * &b.0;
    if cross.is_positive() {
        std::cmp::Ordering::Less
    } else if cross.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

struct Builder {
    points: BTreeMap<Point, NodeId>,
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
}

impl Builder {
    fn node(&mut self, p: Point) -> NodeId {
        if let Some(&id) = self.points.get(&p) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(Node { point: p.clone() });
        self.points.insert(p, id);
        id
    }

    fn arc(&mut self, from: NodeId, to: NodeId, label: ArcLabel) {
        debug_assert_ne!(from, to);
        self.arcs.push(Arc { from, to, label });
    }
}

fn build(strands: &[GroundedString]) -> Result<Arrangement, ArrangementError> {
    let mut b = Builder {
        points: BTreeMap::new(),
        nodes: Vec::new(),
        arcs: Vec::new(),
    };

    // proper crossings per (strand, segment), keyed by position along the
    // segment
    let mut seg_hits: BTreeMap<(usize, usize), Vec<Point>> = BTreeMap::new();
    let mut crossing_points: BTreeSet<Point> = BTreeSet::new();
    for i in 0..strands.len() {
        for j in i + 1..strands.len() {
            for (si, (p1, p2)) in strands[i].segments().enumerate() {
                for (sj, (q1, q2)) in strands[j].segments().enumerate() {
                    match segment_intersection(p1, p2, q1, q2) {
                        SegIntersection::Empty => {}
                        SegIntersection::Proper(pt) => {
                            crossing_points.insert(pt.clone());
                            seg_hits.entry((i, si)).or_default().push(pt.clone());
                            seg_hits.entry((j, sj)).or_default().push(pt);
                        }
                        SegIntersection::Degenerate(_) => {
                            return Err(ArrangementError::DegenerateInput(format!(
                                "degenerate contact between {} and {}",
                                strands[i].id, strands[j].id
                            )))
                        }
                    }
                }
            }
        }
    }
    let crossing_count = crossing_points.len();

    // strand arcs: walk each polyline, splitting segments at their crossings
    for (i, s) in strands.iter().enumerate() {
        for (si, (p1, p2)) in s.segments().enumerate() {
            let mut stops: Vec<Point> = seg_hits.remove(&(i, si)).unwrap_or_default();
            // sort along the segment direction
            let dx = &p2.x - &p1.x;
            let dy = &p2.y - &p1.y;
            stops.sort_by_key(|p| (&p.x - &p1.x) * &dx + (&p.y - &p1.y) * &dy);
            let mut prev = b.node(p1.clone());
            for stop in stops {
                let nd = b.node(stop);
                b.arc(prev, nd, ArcLabel::Strand(i));
                prev = nd;
            }
            let last = b.node(p2.clone());
            b.arc(prev, last, ArcLabel::Strand(i));
        }
    }

    // bounding wall: corners one unit beyond every node
    let one = Q::from_integer(BigInt::one());
    let (mut x_lo, mut x_hi, mut y_hi) = (Q::zero(), Q::zero(), Q::zero());
    for n in &b.nodes {
        x_lo = x_lo.min(n.point.x.clone());
        x_hi = x_hi.max(n.point.x.clone());
        y_hi = y_hi.max(n.point.y.clone());
    }
    x_lo -= &one;
    x_hi += &one;
    y_hi += &one;
    let bl = b.node(Point::new(x_lo.clone(), Q::zero()));
    let br = b.node(Point::new(x_hi.clone(), Q::zero()));
    let tr = b.node(Point::new(x_hi.clone(), y_hi.clone()));
    let tl = b.node(Point::new(x_lo.clone(), y_hi.clone()));

    // ground chain left to right
    let mut ground_nodes: Vec<NodeId> = (0..b.nodes.len())
        .filter(|&v| b.nodes[v].point.y.is_zero())
        .collect();
    ground_nodes.sort_by(|&u, &v| b.nodes[u].point.x.cmp(&b.nodes[v].point.x));
    for w in ground_nodes.windows(2) {
        b.arc(w[0], w[1], ArcLabel::Ground);
    }
    b.arc(br, tr, ArcLabel::Sky);
    let top_arc = b.arcs.len();
    b.arc(tr, tl, ArcLabel::Sky);
    b.arc(tl, bl, ArcLabel::Sky);

    let nodes = b.nodes;
    let arcs = b.arcs;

    // outgoing half-edges per node, sorted CCW by exact direction
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (a, arc) in arcs.iter().enumerate() {
        outgoing[arc.from].push(2 * a);
        outgoing[arc.to].push(2 * a + 1);
    }
    let he_dir = |he: usize| -> (Q, Q) {
        let (s, t) = (he_source(&arcs, he), he_target(&arcs, he));
        (
            &nodes[t].point.x - &nodes[s].point.x,
            &nodes[t].point.y - &nodes[s].point.y,
        )
    };
    for v in 0..nodes.len() {
        let mut list = std::mem::take(&mut outgoing[v]);
        list.sort_by(|&h1, &h2| dir_cmp(&he_dir(h1), &he_dir(h2)));
        outgoing[v] = list;
    }
    let mut pos_in_out: BTreeMap<usize, usize> = BTreeMap::new();
    for list in &outgoing {
        for (i, &he) in list.iter().enumerate() {
            pos_in_out.insert(he, i);
        }
    }

    // trace faces: next(h) = CW-predecessor of twin(h) around target(h),
    // which keeps every face's interior on its left
    let he_count = arcs.len() * 2;
    let mut face_of = vec![usize::MAX; he_count];
    let mut faces: Vec<Face> = Vec::new();
    for start in 0..he_count {
        if face_of[start] != usize::MAX {
            continue;
        }
        let fid = faces.len();
        let mut cycle = Vec::new();
        let mut h = start;
        loop {
            face_of[h] = fid;
            cycle.push(h);
            let twin = h ^ 1;
            let v = he_target(&arcs, h);
            let list = &outgoing[v];
            let p = pos_in_out[&twin];
            let next = list[(p + list.len() - 1) % list.len()];
            h = next;
            if h == start {
                break;
            }
        }
        faces.push(Face {
            cycle,
            outer: false,
        });
    }

    // the outer face lies below any left-to-right ground arc
    let mut outer_face = usize::MAX;
    for (a, arc) in arcs.iter().enumerate() {
        if arc.label == ArcLabel::Ground {
            // constructed left -> right, so the backward half-edge sees the
            // outside on its left
            outer_face = face_of[2 * a + 1];
            break;
        }
    }
    faces[outer_face].outer = true;
    // the sky face is left of the top wall traversed right-to-left
    let ground_face = face_of[2 * top_arc];

    let mut ground_seeds: Vec<FaceId> = arcs
        .iter()
        .enumerate()
        .filter(|(_, arc)| arc.label == ArcLabel::Ground)
        .map(|(a, _)| face_of[2 * a])
        .collect();
    ground_seeds.sort_unstable();
    ground_seeds.dedup();

    let mut arr = Arrangement {
        strand_ids: strands.iter().map(|s| s.id.clone()).collect(),
        nodes,
        arcs,
        faces,
        face_of,
        outer_face,
        ground_face,
        ground_seeds,
        crossing_count,
        exact_levels: Vec::new(),
    };
    arr.exact_levels = arr.compute_exact_levels();
    Ok(arr)
}

/// Builds the arrangement of a validated instance of grounded strings.
pub fn build_arrangement(inst: &Instance) -> Result<Arrangement, ArrangementError> {
    let violations = validate_general_position(inst);
    if let Some(v) = violations.first() {
        return Err(ArrangementError::DegenerateInput(v.to_string()));
    }
    build(&inst.strings)
}

/// Builds the arrangement of a family of double-grounded curves.
pub fn build_curve_arrangement(curves: &[GroundedString]) -> Result<Arrangement, ArrangementError> {
    let violations = validate_double_grounded(curves);
    if let Some(v) = violations.first() {
        return Err(ArrangementError::DegenerateInput(v.to_string()));
    }
    build(curves)
}

/// Compact dynamic bitset over strand indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabelSet {
    words: Vec<u64>,
}

impl LabelSet {
    fn new(n: usize) -> Self {
        LabelSet {
            words: vec![0; (n + 63) / 64],
        }
    }
    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }
    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_subset(&self, other: &LabelSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

impl Arrangement {
    pub fn strand_count(&self) -> usize {
        self.strand_ids.len()
    }

    /// Number of faces of the half-plane subdivision (the outer face beyond
    /// the wall is not counted).
    pub fn interior_face_count(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer_face)
    }

    /// Left/right faces of an arc (left of the from->to direction first).
    pub fn arc_faces(&self, a: ArcId) -> (FaceId, FaceId) {
        (self.face_of[2 * a], self.face_of[2 * a + 1])
    }

    /// Face-to-face adjacencies across strand arcs, with the strand index.
    fn strand_adjacencies(&self) -> Vec<(FaceId, FaceId, usize)> {
        self.arcs
            .iter()
            .enumerate()
            .filter_map(|(a, arc)| match arc.label {
                ArcLabel::Strand(s) => {
                    let (l, r) = self.arc_faces(a);
                    Some((l, r, s))
                }
                _ => None,
            })
            .collect()
    }

    /// Multiplicity upper bound on the crossing level: BFS distance from
    /// unblocked ground counting every arc crossing, even repeats of one
    /// string.
    pub fn crossing_level_upper(&self, f: FaceId) -> usize {
        self.upper_levels()[f]
    }

    pub fn upper_levels(&self) -> Vec<usize> {
        let mut adj: Vec<Vec<FaceId>> = vec![Vec::new(); self.faces.len()];
        for (l, r, _) in self.strand_adjacencies() {
            adj[l].push(r);
            adj[r].push(l);
        }
        let mut dist = vec![usize::MAX; self.faces.len()];
        let mut queue = VecDeque::new();
        for &s in &self.ground_seeds {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(f) = queue.pop_front() {
            for &g in &adj[f] {
                if g != self.outer_face && dist[g] == usize::MAX {
                    dist[g] = dist[f] + 1;
                    queue.push_back(g);
                }
            }
        }
        dist
    }

    /// Exact crossing level of a face: the minimum number of distinct strings
    /// crossed by any curve from the face to unblocked ground.
    pub fn crossing_level_exact(&self, f: FaceId) -> usize {
        self.exact_levels[f].expect("interior face")
    }

    pub fn exact_levels(&self) -> Vec<Option<usize>> {
        self.exact_levels.clone()
    }

    fn compute_exact_levels(&self) -> Vec<Option<usize>> {
        let n = self.strand_count();
        let nf = self.faces.len();
        let upper = self.upper_levels();
        let cap = self
            .interior_faces()
            .map(|f| upper[f])
            .filter(|&d| d != usize::MAX)
            .max()
            .unwrap_or(0);
        let mut adj: Vec<Vec<(FaceId, usize)>> = vec![Vec::new(); nf];
        for (l, r, s) in self.strand_adjacencies() {
            adj[l].push((r, s));
            adj[r].push((l, s));
        }
        let mut levels: Vec<Option<usize>> = vec![None; nf];
        // best-first over (|S|, face, S); per-face antichains of minimal sets
        let mut minimal: Vec<Vec<LabelSet>> = vec![Vec::new(); nf];
        let mut heap: BinaryHeap<Reverse<(usize, FaceId, LabelSet)>> = BinaryHeap::new();
        for &s in &self.ground_seeds {
            heap.push(Reverse((0, s, LabelSet::new(n))));
        }
        while let Some(Reverse((k, f, set))) = heap.pop() {
            if minimal[f].iter().any(|m| m.is_subset(&set)) {
                continue;
            }
            minimal[f].push(set.clone());
            if levels[f].is_none() {
                levels[f] = Some(k);
            }
            for &(g, strand) in &adj[f] {
                if g == self.outer_face {
                    continue;
                }
                if set.contains(strand) {
                    if !minimal[g].iter().any(|m| m.is_subset(&set)) {
                        heap.push(Reverse((k, g, set.clone())));
                    }
                } else if k < cap {
                    let mut s2 = set.clone();
                    s2.insert(strand);
                    if !minimal[g].iter().any(|m| m.is_subset(&s2)) {
                        heap.push(Reverse((k + 1, g, s2)));
                    }
                }
            }
        }
        levels
    }

    /// Independent oracle: the exact level of `f` equals the smallest |S|
    /// such that `f` reaches unblocked ground crossing only strings of S.
    /// Exhaustive over label subsets; refuses more than `cap` strands.
    pub fn crossing_level_oracle(&self, f: FaceId, cap: usize) -> Result<usize, ArrangementError> {
        let n = self.strand_count();
        if n > cap {
            return Err(ArrangementError::OracleCapExceeded { got: n, cap });
        }
        let mut adj: Vec<Vec<(FaceId, usize)>> = vec![Vec::new(); self.faces.len()];
        for (l, r, s) in self.strand_adjacencies() {
            adj[l].push((r, s));
            adj[r].push((l, s));
        }
        let seeds: BTreeSet<FaceId> = self.ground_seeds.iter().copied().collect();
        for size in 0..=n {
            let mut mask: u64 = (1u64 << size).wrapping_sub(1);
            // enumerate all size-subsets of n labels (Gosper's hack), with
            // the empty mask handled once
            loop {
                if size == 0 || mask < (1u64 << n) {
                    let mut seen = vec![false; self.faces.len()];
                    let mut queue = VecDeque::new();
                    seen[f] = true;
                    queue.push_back(f);
                    let mut hit = seeds.contains(&f);
                    while let Some(x) = queue.pop_front() {
                        if hit {
                            break;
                        }
                        for &(y, s) in &adj[x] {
                            if y != self.outer_face && !seen[y] && (mask >> s) & 1 == 1 {
                                seen[y] = true;
                                if seeds.contains(&y) {
                                    hit = true;
                                }
                                queue.push_back(y);
                            }
                        }
                    }
                    if hit {
                        return Ok(size);
                    }
                }
                if size == 0 {
                    break;
                }
                // Gosper: next mask with same popcount
                let c = mask & mask.wrapping_neg();
                let r = mask + c;
                if r >= 1u64 << n {
                    break;
                }
                mask = (((r ^ mask) >> 2) / c) | r;
            }
        }
        unreachable!("every interior face reaches the ground when all strings may be crossed")
    }

    /// Maximum crossing level over all faces, with the smallest face id that
    /// attains it.
    pub fn max_crossing_level(&self) -> (usize, FaceId) {
        let mut best = (0, self.ground_face);
        for f in self.interior_faces() {
            let l = self.crossing_level_exact(f);
            if l > best.0 {
                best = (l, f);
            }
        }
        best
    }

    /// Level of an arc: points on an arc inherit the smaller level of its two
    /// incident faces (ground and sky arcs are at level 0 and unbounded
    /// respectively by convention).
    pub fn arc_level(&self, a: ArcId) -> usize {
        match self.arcs[a].label {
            ArcLabel::Ground => 0,
            ArcLabel::Sky => 0,
            ArcLabel::Strand(_) => {
                let (l, r) = self.arc_faces(a);
                let ll = if l == self.outer_face {
                    usize::MAX
                } else {
                    self.crossing_level_exact(l)
                };
                let rr = if r == self.outer_face {
                    usize::MAX
                } else {
                    self.crossing_level_exact(r)
                };
                ll.min(rr)
            }
        }
    }

    /// Level of a node: the minimum over its incident arcs.
    pub fn node_level(&self, v: NodeId) -> usize {
        self.arcs
            .iter()
            .enumerate()
            .filter(|(_, arc)| arc.from == v || arc.to == v)
            .map(|(a, _)| self.arc_level(a))
            .min()
            .unwrap_or(0)
    }

    pub fn node_at(&self, p: &Point) -> Option<NodeId> {
        self.nodes.iter().position(|n| &n.point == p)
    }

    /// The faces strictly inside the Jordan curve formed by strand `s`
    /// together with the ground between its endpoints: every interior face
    /// that cannot be reached from the sky face without crossing `s`.
    pub fn faces_enclosed_by(&self, s: usize) -> Vec<bool> {
        let mut blocked_adj: Vec<Vec<FaceId>> = vec![Vec::new(); self.faces.len()];
        for (l, r, strand) in self.strand_adjacencies() {
            if strand != s {
                blocked_adj[l].push(r);
                blocked_adj[r].push(l);
            }
        }
        let mut outside = vec![false; self.faces.len()];
        let mut queue = VecDeque::new();
        outside[self.ground_face] = true;
        queue.push_back(self.ground_face);
        while let Some(f) = queue.pop_front() {
            for &g in &blocked_adj[f] {
                if g != self.outer_face && !outside[g] {
                    outside[g] = true;
                    queue.push_back(g);
                }
            }
        }
        (0..self.faces.len())
            .map(|f| f != self.outer_face && !outside[f])
            .collect()
    }

    /// Locates a point that does not coincide with any node: returns the arc
    /// it lies on, or the face containing it. Queries whose x-coordinate
    /// matches a node are rejected as ambiguous so that every comparison
    /// stays exact.
    pub fn locate(&self, p: &Point) -> Result<Location, ArrangementError> {
        if let Some(v) = self.node_at(p) {
            return Ok(Location::OnNode(v));
        }
        for (a, arc) in self.arcs.iter().enumerate() {
            let q1 = &self.nodes[arc.from].point;
            let q2 = &self.nodes[arc.to].point;
            let collinear = crate::geom::orient(q1, q2, p) == 0;
            if collinear {
                let in_x = q1.x.clone().min(q2.x.clone()) <= p.x && p.x <= q1.x.clone().max(q2.x.clone());
                let in_y = q1.y.clone().min(q2.y.clone()) <= p.y && p.y <= q1.y.clone().max(q2.y.clone());
                if in_x && in_y {
                    return Ok(Location::OnArc(a));
                }
            }
        }
        // the downward ray from p breaks ties badly only if it runs through
        // a node or along a vertical arc strictly below p
        let hits_node = self
            .nodes
            .iter()
            .any(|n| n.point.x == p.x && n.point.y < p.y);
        let runs_along_vertical = self.arcs.iter().any(|arc| {
            let q1 = &self.nodes[arc.from].point;
            let q2 = &self.nodes[arc.to].point;
            q1.x == q2.x && q1.x == p.x && (q1.y < p.y || q2.y < p.y)
        });
        if hits_node || runs_along_vertical {
            return Err(ArrangementError::AmbiguousQuery);
        }
        // cast a vertical ray down; the face is the upper side of the highest
        // arc strictly below
        let mut best: Option<(Q, usize)> = None; // (y at p.x, half-edge of upper side)
        for (a, arc) in self.arcs.iter().enumerate() {
            let q1 = &self.nodes[arc.from].point;
            let q2 = &self.nodes[arc.to].point;
            if q1.x == q2.x {
                continue; // vertical arc handled by the ambiguity check
            }
            let (lo, hi, he_up) = if q1.x < q2.x {
                (q1, q2, 2 * a) // forward half-edge has the upper side on its left
            } else {
                (q2, q1, 2 * a + 1)
            };
            if !(lo.x < p.x && p.x < hi.x) {
                continue;
            }
            let t = (&p.x - &lo.x) / (&hi.x - &lo.x);
            let y = &lo.y + (&hi.y - &lo.y) * &t;
            if y < p.y {
                let better = match &best {
                    None => true,
                    Some((by, _)) => &y > by,
                };
                if better {
                    best = Some((y, he_up));
                }
            }
        }
        match best {
            Some((_, he)) => {
                let f = self.face_of[he];
                if f == self.outer_face {
                    Ok(Location::Outside)
                } else {
                    Ok(Location::Face(f))
                }
            }
            None => Ok(Location::Outside),
        }
    }

    /// Crossing level of an arbitrary point, using face levels and the
    /// arc/node inheritance rules.
    pub fn point_level(&self, p: &Point) -> Result<usize, ArrangementError> {
        match self.locate(p)? {
            Location::Face(f) => Ok(self.crossing_level_exact(f)),
            Location::OnArc(a) => Ok(self.arc_level(a)),
            Location::OnNode(v) => Ok(self.node_level(v)),
            Location::Outside => Ok(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Face(FaceId),
    OnArc(ArcId),
    OnNode(NodeId),
    Outside,
}

/// One level region: the component of { level >= i } around the witness face,
/// its boundary arcs, and the strings meeting that boundary.
#[derive(Clone, Debug)]
pub struct LevelRegion {
    pub level: usize,
    pub faces: Vec<FaceId>,
    pub boundary_arcs: Vec<ArcId>,
    pub gamma: BTreeSet<usize>,
}

/// Crossing levels of every face plus the nested chain of level regions
/// anchored at a maximum-level witness face.
#[derive(Clone, Debug)]
pub struct LevelProfile {
    pub face_levels: Vec<Option<usize>>,
    pub max_level: usize,
    pub witness_face: FaceId,
    pub regions: Vec<LevelRegion>,
}

/// Computes the level regions U_i, their boundaries R_i and string sets
/// Gamma_i for 0 <= i <= max level. Gamma_0 is all strings (each touches the
/// ground at its ground point); for i >= 1 a string belongs to Gamma_i when
/// it contributes a boundary arc or passes through a boundary node.
pub fn level_regions(arr: &Arrangement) -> LevelProfile {
    let levels = arr.exact_levels();
    let (r, witness) = arr.max_crossing_level();
    let mut regions = Vec::with_capacity(r + 1);
    // region 0: everything, bounded by the ground
    let ground_arcs: Vec<ArcId> = arr
        .arcs
        .iter()
        .enumerate()
        .filter(|(_, a)| a.label == ArcLabel::Ground)
        .map(|(i, _)| i)
        .collect();
    regions.push(LevelRegion {
        level: 0,
        faces: arr.interior_faces().collect(),
        boundary_arcs: ground_arcs,
        gamma: (0..arr.strand_count()).collect(),
    });
    let adj = arr.strand_adjacencies();
    for i in 1..=r {
        let in_u = |f: FaceId| -> bool {
            f != arr.outer_face && levels[f].map_or(false, |l| l >= i)
        };
        // component of U_i containing the witness, walking across arcs whose
        // both sides stay in U_i
        let mut comp = vec![false; arr.faces.len()];
        comp[witness] = true;
        let mut queue = VecDeque::from([witness]);
        while let Some(f) = queue.pop_front() {
            for &(l, rgt, _) in &adj {
                let other = if l == f {
                    rgt
                } else if rgt == f {
                    l
                } else {
                    continue;
                };
                if in_u(other) && !comp[other] {
                    comp[other] = true;
                    queue.push_back(other);
                }
            }
        }
        let mut boundary = Vec::new();
        let mut gamma = BTreeSet::new();
        let mut boundary_nodes = BTreeSet::new();
        for (a, arc) in arr.arcs.iter().enumerate() {
            if let ArcLabel::Strand(s) = arc.label {
                let (l, rgt) = arr.arc_faces(a);
                if comp[l] != comp[rgt] {
                    boundary.push(a);
                    gamma.insert(s);
                    boundary_nodes.insert(arc.from);
                    boundary_nodes.insert(arc.to);
                }
            }
        }
        // strings that merely touch the boundary at a node still meet R_i
        for (_, arc) in arr.arcs.iter().enumerate() {
            if let ArcLabel::Strand(s) = arc.label {
                if boundary_nodes.contains(&arc.from) || boundary_nodes.contains(&arc.to) {
                    gamma.insert(s);
                }
            }
        }
        regions.push(LevelRegion {
            level: i,
            faces: (0..arr.faces.len()).filter(|&f| comp[f]).collect(),
            boundary_arcs: boundary,
            gamma,
        });
    }
    LevelProfile {
        face_levels: levels,
        max_level: r,
        witness_face: witness,
        regions,
    }
}

/// One row of the halving report: the lemma demands 2|Gamma_i| <=
/// |Gamma_{i-4a}| for every i >= 4a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingRow {
    pub i: usize,
    pub gamma_i: usize,
    pub gamma_prev: usize,
    pub pass: bool,
}

/// Checks the geometric halving inequality against the level profile, where
/// `alpha` is the arboricity of the intersection graph. An empty report means
/// the check is vacuous (max level below 4 alpha).
pub fn check_halving(profile: &LevelProfile, alpha: usize) -> Vec<HalvingRow> {
    let mut rows = Vec::new();
    if alpha == 0 {
        return rows;
    }
    for i in 4 * alpha..=profile.max_level {
        let gi = profile.regions[i].gamma.len();
        let gp = profile.regions[i - 4 * alpha].gamma.len();
        rows.push(HalvingRow {
            i,
            gamma_i: gi,
            gamma_prev: gp,
            pass: 2 * gi <= gp,
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{q, qr, GroundedString, Point};

    fn gs(id: &str, pts: &[(i64, i64)]) -> GroundedString {
        GroundedString::new(
            id,
            pts.iter().map(|&(x, y)| Point::ints(x, y)).collect(),
        )
    }

    fn x_instance() -> Instance {
        Instance::new(vec![
            gs("a", &[(0, 0), (2, 2)]),
            gs("b", &[(2, 0), (0, 2)]),
        ])
    }

    #[test]
    fn single_string_one_face() {
        let inst = Instance::new(vec![gs("a", &[(0, 0), (2, 3)])]);
        let arr = build_arrangement(&inst).unwrap();
        assert_eq!(arr.interior_face_count(), 1);
        let (r, _) = arr.max_crossing_level();
        assert_eq!(r, 0);
    }

    #[test]
    fn euler_relation_holds() {
        for inst in [
            Instance::new(vec![gs("a", &[(0, 0), (2, 3)])]),
            x_instance(),
            Instance::new(vec![
                gs("a", &[(0, 0), (4, 2)]),
                gs("b", &[(1, 0), (2, 3), (4, 3), (3, 1)]),
            ]),
        ] {
            let arr = build_arrangement(&inst).unwrap();
            let v = arr.nodes.len() as i64;
            let e = arr.arcs.len() as i64;
            let f = arr.faces.len() as i64;
            assert_eq!(v - e + f, 2, "euler failed");
        }
    }

    #[test]
    fn x_instance_faces_and_levels() {
        // two crossing grounded segments: one crossing node; the bottom
        // triangle and the unbounded face are the only interior faces, and
        // both reach the ground directly, so every level is 0
        let arr = build_arrangement(&x_instance()).unwrap();
        assert_eq!(arr.crossing_count, 1);
        assert_eq!(arr.interior_face_count(), 2);
        let (r, _) = arr.max_crossing_level();
        assert_eq!(r, 0);
        // the subset-removal oracle agrees on every face
        for f in arr.interior_faces() {
            assert_eq!(
                arr.crossing_level_exact(f),
                arr.crossing_level_oracle(f, 20).unwrap()
            );
        }
        // the bottom face (containing (1, 1/2)) reaches the ground at level 0
        let p = Point::new(q(1), qr(1, 2));
        assert_eq!(arr.point_level(&p).unwrap(), 0);
    }

    #[test]
    fn lens_between_two_strings_has_level_one() {
        // b wraps around a piece of a, crossing it twice; the lens face is
        // sealed away from the ground by the two strings
        let a = gs("a", &[(0, 0), (10, 10)]);
        let b = gs("b", &[(12, 0), (2, 3), (3, 8), (9, 3)]);
        let inst = Instance::new(vec![a, b]);
        let arr = build_arrangement(&inst).unwrap();
        assert_eq!(arr.crossing_count, 2);
        let (r, w) = arr.max_crossing_level();
        assert_eq!(r, 1);
        assert_eq!(arr.crossing_level_exact(w), 1);
        for f in arr.interior_faces() {
            assert_eq!(
                arr.crossing_level_exact(f),
                arr.crossing_level_oracle(f, 20).unwrap(),
            );
            assert!(arr.crossing_level_exact(f) <= arr.crossing_level_upper(f));
        }
    }

    /// A curled string whose inner pocket is walled twice by itself, with a
    /// second string sealing the entry channel: the multiplicity bound is 2
    /// but only one distinct string needs crossing.
    fn curl_fixture() -> Instance {
        let a = gs(
            "a",
            &[
                (10, 0),
                (14, 8),
                (8, 14),
                (2, 8),
                (8, 2),
                (11, 8),
                (8, 11),
                (5, 8),
                (8, 5),
                (9, 7),
            ],
        );
        let b = GroundedString::new(
            "b",
            vec![
                Point::ints(13, 0),
                Point::new(qr(43, 5), qr(41, 10)),
                Point::new(qr(91, 10), q(8)),
                Point::new(qr(56, 5), qr(34, 5)),
            ],
        );
        Instance::new(vec![a, b])
    }

    #[test]
    fn curl_pocket_upper_exceeds_exact() {
        let inst = curl_fixture();
        assert!(
            validate_general_position(&inst).is_empty(),
            "fixture must be in general position: {:?}",
            validate_general_position(&inst)
        );
        let arr = build_arrangement(&inst).unwrap();
        // the pocket contains (7, 8)
        let f = match arr.locate(&Point::ints(7, 8)).unwrap() {
            Location::Face(f) => f,
            other => panic!("expected face, got {other:?}"),
        };
        assert_eq!(arr.crossing_level_exact(f), 1);
        assert_eq!(arr.crossing_level_upper(f), 2);
        for g in arr.interior_faces() {
            assert_eq!(
                arr.crossing_level_exact(g),
                arr.crossing_level_oracle(g, 20).unwrap(),
            );
            assert!(arr.crossing_level_exact(g) <= arr.crossing_level_upper(g));
        }
    }

    #[test]
    fn adjacent_face_levels_differ_by_at_most_one() {
        let inst = curl_fixture();
        let arr = build_arrangement(&inst).unwrap();
        for (a, arc) in arr.arcs.iter().enumerate() {
            if let ArcLabel::Strand(_) = arc.label {
                let (l, r) = arr.arc_faces(a);
                if l != arr.outer_face && r != arr.outer_face {
                    let dl = arr.crossing_level_exact(l) as i64;
                    let dr = arr.crossing_level_exact(r) as i64;
                    assert!((dl - dr).abs() <= 1);
                }
            }
        }
    }

    #[test]
    fn level_profile_on_lens() {
        let a = gs("a", &[(0, 0), (10, 10)]);
        let b = gs("b", &[(12, 0), (2, 3), (3, 8), (9, 3)]);
        let inst = Instance::new(vec![a, b]);
        let arr = build_arrangement(&inst).unwrap();
        let profile = level_regions(&arr);
        assert_eq!(profile.max_level, 1);
        assert_eq!(profile.regions.len(), 2);
        // gamma chain nesting and gamma_0 = everything
        assert_eq!(profile.regions[0].gamma.len(), 2);
        assert!(profile.regions[1].gamma.is_subset(&profile.regions[0].gamma));
        // the lens is bounded by pieces of both strings
        assert_eq!(profile.regions[1].gamma.len(), 2);
    }

    #[test]
    fn halving_vacuous_when_level_small() {
        let arr = build_arrangement(&x_instance()).unwrap();
        let profile = level_regions(&arr);
        let rows = check_halving(&profile, 1);
        assert!(rows.is_empty());
    }

    #[test]
    fn locate_and_enclosure() {
        let arr = build_arrangement(&x_instance()).unwrap();
        // outside the arch is Outside; under the crossing is a face
        assert_eq!(
            arr.locate(&Point::new(q(1), q(-5))).unwrap(),
            Location::Outside
        );
        let f = arr.locate(&Point::new(q(1), qr(1, 2))).unwrap();
        assert!(matches!(f, Location::Face(_)));
        // nothing is enclosed by a single straight string
        let inside = arr.faces_enclosed_by(0);
        assert!(inside.iter().all(|&b| !b));
    }
}

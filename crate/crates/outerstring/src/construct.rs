//! Instance generators: the doubling V-shape ("folk") lower-bound family,
//! its multi-copy generalization, random grounded instances and circularly
//! ordered double-grounded curve families.
//!
//! The classical folk gadget chains V-shaped segment pairs that share apex
//! and top points. Shared points violate general position, so the generator
//! splits every apex into two ground points with the arms swapped (they then
//! cross just above the ground) and extends every arm slightly past its
//! nominal top (consecutive arms then cross exactly at the old shared top).
//! The combinatorial crossing structure is unchanged and is what the tests
//! pin down.

use crate::geom::{perturb_copies, q, qr, GeomError, GroundedString, Instance, Point, Q};
use crate::graph::{intersection_graph, Graph, GraphError, MinorModel};
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("generator failed: {0}")]
    Failed(String),
}

/// A chain of V-shaped segment pairs of the given width (horizontal extent
/// of each V).
#[derive(Clone, Debug)]
pub struct Folk {
    pub width: Q,
    pub size: usize,
    pub strings: Vec<GroundedString>,
}

/// Nominal arm slope; the paper's pi/3 apex angle is cosmetic, only the
/// crossing pattern matters, and 7/4 keeps every coordinate rational.
fn arm_slope() -> Q {
    qr(7, 4)
}

/// Ground-point split of each apex.
fn apex_split() -> Q {
    qr(1, 64)
}

/// Horizontal run of the extension past each nominal top.
fn top_extension() -> Q {
    qr(1, 16)
}

/// One arm: from its ground point through the nominal top, extended past it.
fn arm(id: String, ground_x: Q, top: Point) -> GroundedString {
    let g = Point::new(ground_x, Q::zero());
    let run = (&top.x - &g.x).abs();
    let lam = top_extension() / run;
    let end = Point::new(
        &top.x + (&top.x - &g.x) * &lam,
        &top.y + (&top.y - &g.y) * &lam,
    );
    GroundedString::new(id, vec![g, end])
}

/// Builds a folk of `size` V-shapes of horizontal width `width`, apexes at
/// x_offset + width/2 + width*j. Each V contributes two grounded segments
/// whose ids start with `prefix`.
pub fn folk(width: &Q, size: usize, x_offset: &Q, prefix: &str) -> Folk {
    let half = width / q(2);
    let height = arm_slope() * &half;
    let split = apex_split();
    let mut strings = Vec::with_capacity(2 * size);
    for j in 0..size {
        let apex_x = x_offset + &half + width * q(j as i64);
        let top_l = Point::new(&apex_x - &half, height.clone());
        let top_r = Point::new(&apex_x + &half, height.clone());
        // arms swapped at the ground so the pair crosses just above it
        strings.push(arm(format!("{prefix}v{j}L"), &apex_x + &split, top_l));
        strings.push(arm(format!("{prefix}v{j}R"), &apex_x - &split, top_r));
    }
    Folk {
        width: width.clone(),
        size,
        strings,
    }
}

/// The doubling lower-bound instance on n = 2^m nominal points: folks of
/// width 2^i and size 2^(m-i) for i = 1..m, all starting at the y-axis.
/// Total strings: 2 (2^m - 1).
pub fn lowerbound_instance(m: usize) -> Instance {
    assert!(m >= 1, "m must be at least 1");
    let mut strings = Vec::new();
    for i in 1..=m {
        let width = q(1i64 << i);
        let size = 1usize << (m - i);
        let f = folk(&width, size, &Q::zero(), &format!("f{i}"));
        strings.extend(f.strings);
    }
    Instance::new(strings)
}

/// The branch sets obtained by contracting each folk of a
/// [`lowerbound_instance`]: branch set i-1 holds all strings of folk i.
pub fn folk_contraction_model(inst: &Instance, m: usize) -> MinorModel {
    let mut sets = vec![BTreeSet::new(); m];
    for (v, s) in inst.strings.iter().enumerate() {
        let rest = s.id.strip_prefix('f').expect("folk id");
        let i: usize = rest[..rest.find('v').expect("folk id")].parse().expect("folk index");
        sets[i - 1].insert(v);
    }
    MinorModel { branch_sets: sets }
}

/// Replaces every string of the doubling instance by `alpha` pairwise
/// crossing near-copies, then re-validates that the blown-up intersection
/// graph is exactly the alpha-clique substitution of the original.
pub fn lowerbound_instance_alpha(m: usize, alpha: usize) -> Result<Instance, ConstructError> {
    let base = lowerbound_instance(m);
    if alpha == 1 {
        return Ok(base);
    }
    // ground gaps shrink to twice the apex split, so an eighth of that gap
    // keeps copies well inside their own cluster
    let eps = apex_split() * qr(2, 8);
    let mut strings = Vec::new();
    for s in &base.strings {
        strings.extend(perturb_copies(s, alpha, &eps)?);
    }
    let inst = Instance::new(strings);
    let got = intersection_graph(&inst)?;
    let want = blowup_graph(&intersection_graph(&base)?, alpha);
    if got.adj != want.adj {
        return Err(ConstructError::Geom(GeomError::EpsilonTooLarge(
            "copy perturbation changed the intersection graph".into(),
        )));
    }
    Ok(inst)
}

/// The expected intersection graph after replacing every vertex by an
/// `alpha`-clique whose members inherit all original adjacencies.
fn blowup_graph(g: &Graph, alpha: usize) -> Graph {
    let mut b = Graph::empty(g.n * alpha);
    for v in 0..g.n {
        for c1 in 0..alpha {
            for c2 in c1 + 1..alpha {
                b.add_edge(v * alpha + c1, v * alpha + c2);
            }
        }
    }
    for (u, v) in g.edges() {
        for c1 in 0..alpha {
            for c2 in 0..alpha {
                b.add_edge(u * alpha + c1, v * alpha + c2);
            }
        }
    }
    b
}

/// Branch sets for the alpha-copy instance: one per (folk, copy) pair, each
/// holding that copy of every string of the folk. Valid K_{alpha*m} model.
pub fn alpha_contraction_model(inst: &Instance, m: usize, alpha: usize) -> MinorModel {
    let mut sets = vec![BTreeSet::new(); m * alpha];
    for (v, s) in inst.strings.iter().enumerate() {
        let rest = s.id.strip_prefix('f').expect("folk id");
        let folk_i: usize = rest[..rest.find('v').unwrap()].parse().unwrap();
        let copy: usize = if alpha == 1 {
            0
        } else {
            rest[rest.rfind('c').expect("copy suffix") + 1..].parse().unwrap()
        };
        sets[(folk_i - 1) * alpha + copy].insert(v);
    }
    MinorModel { branch_sets: sets }
}

/// Deterministic random instance: n grounded polylines with at most
/// `max_bends` interior vertices each, rejection-sampled to general
/// position. Byte-identical output for a fixed seed.
pub fn random_instance(n: usize, max_bends: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'outer: for _attempt in 0..500 {
        let span = (16 * n.max(2)) as i64;
        let mut xs = BTreeSet::new();
        while xs.len() < n {
            xs.insert(rng.gen_range(0..span));
        }
        let xs: Vec<i64> = xs.into_iter().collect();
        let mut strings = Vec::with_capacity(n);
        for (i, &gx) in xs.iter().enumerate() {
            let bends = rng.gen_range(0..=max_bends);
            let mut pts = vec![Point::ints(gx, 0)];
            let mut x = gx;
            let mut y = 0i64;
            for step in 0..=bends {
                let reach = (span / (n.max(1) as i64)).max(4);
                x += rng.gen_range(-reach..=reach);
                let dy = rng.gen_range(1..=8);
                y = if step == 0 { dy } else { (y + rng.gen_range(-6..=6)).max(1) };
                pts.push(Point::ints(x, y));
            }
            strings.push(GroundedString::new(format!("s{i}"), pts));
        }
        let inst = Instance::new(strings);
        if crate::geom::validate_general_position(&inst).is_empty() {
            return inst;
        }
        continue 'outer;
    }
    panic!("random_instance failed to reach general position; widen the grid");
}

/// 2k double-grounded arches whose endpoints are circularly ordered:
/// x_1 < ... < x_2k < y_1 < ... < y_2k along the ground. Arch i runs from
/// x_i up to its own height and back down to y_i; heights strictly decrease
/// with i so that the right descender of arch i crosses the deck of every
/// later arch exactly once. Heights carry a small seeded jitter.
pub fn circular_family(k: usize, seed: u64) -> Vec<GroundedString> {
    assert!(k >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 2 * k;
    let mut curves = Vec::with_capacity(n);
    for i in 1..=n {
        let x_i = q(4 * i as i64);
        let y_i = q((8 * k + 4 * i) as i64);
        let jitter = qr(rng.gen_range(0..8), 8);
        let h = q(2 * (n - i) as i64 + 4) + jitter;
        let deck_l = Point::new(&x_i + q(1), h.clone());
        let deck_r = Point::new(&y_i - q(1), h.clone());
        curves.push(GroundedString::new(
            format!("g{i}"),
            vec![
                Point::new(x_i, Q::zero()),
                deck_l,
                deck_r,
                Point::new(y_i, Q::zero()),
            ],
        ));
    }
    curves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{strings_intersect, validate_double_grounded, validate_general_position};
    use crate::graph::{arboricity, degeneracy, verify_minor_model};

    #[test]
    fn folk_single_v() {
        let f = folk(&q(2), 1, &Q::zero(), "f1");
        assert_eq!(f.strings.len(), 2);
        let (hit, _) = strings_intersect(&f.strings[0], &f.strings[1]).unwrap();
        assert!(hit, "the two arms of a V must cross near the apex");
    }

    #[test]
    fn folk_adjacent_arms_meet_at_top_height() {
        // folk(4, 2): armR of V0 and armL of V1 cross exactly at the nominal
        // shared top (4, 7/2)
        let f = folk(&q(4), 2, &Q::zero(), "f");
        assert_eq!(f.strings.len(), 4);
        let arm_r0 = &f.strings[1];
        let arm_l1 = &f.strings[2];
        let (hit, pts) = strings_intersect(arm_r0, arm_l1).unwrap();
        assert!(hit);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0], Point::new(q(4), qr(7, 2)));
    }

    #[test]
    fn lowerbound_counts_and_validity() {
        // m=3: folks of 8, 4, 2 segments, 14 total
        let inst = lowerbound_instance(3);
        let by_folk = |i: usize| {
            inst.strings
                .iter()
                .filter(|s| s.id.starts_with(&format!("f{i}")))
                .count()
        };
        assert_eq!(by_folk(1), 8);
        assert_eq!(by_folk(2), 4);
        assert_eq!(by_folk(3), 2);
        assert_eq!(inst.len(), 14);
        assert!(validate_general_position(&inst).is_empty());

        // m=1 degenerate end of the formula: one V, 2 strings
        let inst = lowerbound_instance(1);
        assert_eq!(inst.len(), 2);
        assert!(validate_general_position(&inst).is_empty());
    }

    #[test]
    fn lowerbound_apexes_at_dyadic_positions() {
        // ground pairs cluster around 2^{i-1} + 2^i j
        let inst = lowerbound_instance(3);
        for s in &inst.strings {
            let rest = s.id.strip_prefix('f').unwrap();
            let i: usize = rest[..rest.find('v').unwrap()].parse().unwrap();
            let j: usize = rest[rest.find('v').unwrap() + 1..rest.len() - 1].parse().unwrap();
            let apex = q((1 << (i - 1)) + ((1 << i) * j) as i64);
            let gap = (&s.vertices[0].x - &apex).abs();
            assert_eq!(gap, apex_split(), "id {}", s.id);
        }
    }

    #[test]
    fn folks_pairwise_intersect_and_cross_sparsely() {
        for m in 1..=5 {
            let inst = lowerbound_instance(m);
            assert!(
                validate_general_position(&inst).is_empty(),
                "m={m} violates general position"
            );
            let g = intersection_graph(&inst).unwrap();
            // each segment of folk i crosses at most one segment of the
            // larger folks
            let folk_of = |v: usize| -> usize {
                let rest = inst.strings[v].id.strip_prefix('f').unwrap();
                rest[..rest.find('v').unwrap()].parse().unwrap()
            };
            for v in 0..g.n {
                let fv = folk_of(v);
                let bigger = g.adj[v].iter().filter(|&&u| folk_of(u) > fv).count();
                assert!(bigger <= 1, "m={m} vertex {v} crossed by {bigger} larger arms");
            }
            // folks pairwise intersect: contracting them gives a K_m model
            let model = folk_contraction_model(&inst, m);
            assert!(verify_minor_model(&g, &model), "m={m} folk model invalid");
        }
    }

    #[test]
    fn lowerbound_degeneracy_stays_constant() {
        let mut max_d = 0;
        for m in 1..=6 {
            let g = intersection_graph(&lowerbound_instance(m)).unwrap();
            let (d, _) = degeneracy(&g);
            max_d = max_d.max(d);
        }
        // measured bound, independent of m
        assert!(max_d <= 4, "degeneracy grew to {max_d}");
    }

    #[test]
    fn alpha_copies_blow_up_cleanly() {
        let inst = lowerbound_instance_alpha(2, 2).unwrap();
        assert_eq!(inst.len(), 2 * 2 * (4 - 1));
        assert!(validate_general_position(&inst).is_empty());
        let g = intersection_graph(&inst).unwrap();
        let model = alpha_contraction_model(&inst, 2, 2);
        assert!(verify_minor_model(&g, &model));
        assert_eq!(model.order(), 4);

        // arboricity grows linearly, within the recorded constant
        let a = arboricity(&g);
        assert!(a >= 2 && a <= 8, "arboricity {a} out of range");
    }

    #[test]
    fn random_instances_valid_and_deterministic() {
        for seed in 0..12 {
            let inst = random_instance(8, 3, seed);
            assert!(validate_general_position(&inst).is_empty());
            let again = random_instance(8, 3, seed);
            assert_eq!(inst.strings, again.strings, "seed {seed} not deterministic");
        }
        let single = random_instance(1, 2, 7);
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn circular_family_is_ordered_and_valid() {
        for k in 1..=4 {
            let curves = circular_family(k, 42 + k as u64);
            assert_eq!(curves.len(), 2 * k);
            assert!(
                validate_double_grounded(&curves).is_empty(),
                "k={k} family not in general position: {:?}",
                validate_double_grounded(&curves)
            );
            // circular order: all left endpoints before all right endpoints
            let xs: Vec<_> = curves.iter().map(|c| c.vertices[0].x.clone()).collect();
            let ys: Vec<_> = curves
                .iter()
                .map(|c| c.vertices.last().unwrap().x.clone())
                .collect();
            for w in xs.windows(2) {
                assert!(w[0] < w[1]);
            }
            for w in ys.windows(2) {
                assert!(w[0] < w[1]);
            }
            assert!(xs.last().unwrap() < ys.first().unwrap());
            // every pair crosses
            for i in 0..curves.len() {
                for j in i + 1..curves.len() {
                    let (hit, _) = strings_intersect(&curves[i], &curves[j]).unwrap();
                    assert!(hit, "k={k}: curves {i},{j} must cross");
                }
            }
        }
    }
}

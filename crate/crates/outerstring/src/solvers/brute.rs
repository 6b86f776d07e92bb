//! Exhaustive oracles for every problem in the suite. Slow by design; these
//! are the ground truth the fast solvers are tested against.

use super::{cycles_from_edges, ColorLists, Problem, Solution, SolveError};
use crate::graph::Graph;

const SUBSET_CAP: usize = 16;
const HARD_CAP: usize = 12;

fn mask_set(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn is_independent(g: &Graph, mask: u32) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0)
}

fn is_cover(g: &Graph, mask: u32) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
}

fn is_dominating(g: &Graph, mask: u32) -> bool {
    (0..g.n).all(|v| mask >> v & 1 == 1 || g.adj[v].iter().any(|&u| mask >> u & 1 == 1))
}

fn forest_after_removal(g: &Graph, mask: u32) -> bool {
    let keep: std::collections::BTreeSet<usize> =
        (0..g.n).filter(|&v| mask >> v & 1 == 0).collect();
    let (h, _) = g.induced(&keep);
    h.is_forest()
}

fn one_regular(g: &Graph, mask: u32) -> bool {
    (0..g.n).all(|v| {
        if mask >> v & 1 == 0 {
            true
        } else {
            g.adj[v].iter().filter(|&&u| mask >> u & 1 == 1).count() == 1
        }
    })
}

fn coloring_search(g: &Graph, lists: &ColorLists, q: u8) -> Option<Vec<u8>> {
    fn rec(g: &Graph, lists: &ColorLists, q: u8, colors: &mut Vec<u8>, v: usize) -> bool {
        if v == g.n {
            return true;
        }
        for c in 1..=q {
            if lists[v] >> (c - 1) & 1 == 0 {
                continue;
            }
            if g.adj[v].iter().any(|&u| u < v && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if rec(g, lists, q, colors, v + 1) {
                return true;
            }
        }
        colors[v] = 0;
        false
    }
    let mut colors = vec![0u8; g.n];
    if rec(g, lists, q, &mut colors, 0) {
        Some(colors)
    } else {
        None
    }
}

/// Maximum cycle packing by exhaustive subset dynamic programming: a subset
/// usable as one cycle must carry a Hamiltonian cycle on exactly its
/// vertices, and the packing recursion covers disjoint unions of such
/// subsets.
fn cycle_packing_brute(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n;
    let full = (1u32 << n) - 1;
    // ham[c] = true when subset c (|c| >= 3) carries a cycle through all its
    // vertices
    let mut ham = vec![false; 1 << n];
    for anchor in 0..n {
        // paths from anchor within subsets whose minimum element is anchor
        let above = !((1u32 << (anchor + 1)) - 1);
        let mut reach: Vec<u32> = vec![0; 1 << n]; // subset -> endpoint set
        reach[1 << anchor] = 1 << anchor;
        for sub in 0..=full {
            if sub & (1 << anchor) == 0 || (sub & !(above | 1 << anchor)) != 0 {
                continue;
            }
            let ends = reach[sub as usize];
            if ends == 0 {
                continue;
            }
            let mut e = ends;
            while e != 0 {
                let v = e.trailing_zeros() as usize;
                e &= e - 1;
                for &w in &g.adj[v] {
                    if w > anchor && sub >> w & 1 == 0 {
                        reach[(sub | 1 << w) as usize] |= 1 << w;
                    }
                }
                if sub.count_ones() >= 3 && g.adj[v].contains(&anchor) {
                    ham[sub as usize] = true;
                }
            }
        }
    }

    // best packing per vertex subset, counting cycles
    let mut best: Vec<u8> = vec![0; 1 << n];
    let mut pick: Vec<u32> = vec![0; 1 << n]; // chosen cycle subset (0 = skip min vertex)
    for s in 1..=full {
        let m = s.trailing_zeros();
        let rest = s & !(1 << m);
        best[s as usize] = best[rest as usize];
        pick[s as usize] = 0;
        // enumerate submasks of s containing m
        let mut c = s;
        loop {
            if c & (1 << m) != 0 && ham[c as usize] {
                let cand = 1 + best[(s & !c) as usize];
                if cand > best[s as usize] {
                    best[s as usize] = cand;
                    pick[s as usize] = c;
                }
            }
            if c == 0 {
                break;
            }
            c = (c - 1) & s;
        }
    }

    // materialize the cycles
    let mut cycles = Vec::new();
    let mut s = full;
    while s != 0 {
        let m = s.trailing_zeros();
        let c = pick[s as usize];
        if c == 0 {
            s &= !(1 << m);
            continue;
        }
        cycles.push(recover_cycle(g, c));
        s &= !c;
    }
    cycles
}

/// Recovers an explicit Hamiltonian cycle on the subset `c` (which is known
/// to carry one) by depth-first search.
fn recover_cycle(g: &Graph, c: u32) -> Vec<usize> {
    let verts = mask_set(c);
    let anchor = verts[0];
    let mut path = vec![anchor];
    let mut used = 1u32 << anchor;
    fn dfs(g: &Graph, c: u32, anchor: usize, path: &mut Vec<usize>, used: &mut u32) -> bool {
        if *used == c {
            return g.adj[*path.last().unwrap()].contains(&anchor);
        }
        let last = *path.last().unwrap();
        for &w in &g.adj[last] {
            if c >> w & 1 == 1 && *used >> w & 1 == 0 {
                path.push(w);
                *used |= 1 << w;
                if dfs(g, c, anchor, path, used) {
                    return true;
                }
                path.pop();
                *used &= !(1 << w);
            }
        }
        false
    }
    let ok = dfs(g, c, anchor, &mut path, &mut used);
    assert!(ok, "subset marked hamiltonian must carry a cycle");
    path
}

/// Exhaustive-search optimum for any problem in the suite. Refuses graphs
/// beyond the caps (16 vertices for subset problems, 12 for cycle packing
/// and induced matching).
pub fn brute_force(
    problem: Problem,
    g: &Graph,
    lists: Option<&ColorLists>,
) -> Result<Solution, SolveError> {
    let cap = match problem {
        Problem::CyclePacking | Problem::InducedMatching => HARD_CAP,
        _ => SUBSET_CAP,
    };
    if g.n > cap {
        return Err(SolveError::SizeLimitExceeded { got: g.n, cap });
    }
    let full: u32 = if g.n == 32 { !0 } else { (1 << g.n) - 1 };
    let sol = match problem {
        Problem::IndependentSet => {
            let best = (0..=full)
                .filter(|&m| is_independent(g, m))
                .max_by_key(|m| m.count_ones())
                .unwrap_or(0);
            Solution::VertexSet(mask_set(best))
        }
        Problem::VertexCover => {
            let best = (0..=full)
                .filter(|&m| is_cover(g, m))
                .min_by_key(|m| m.count_ones())
                .unwrap_or(0);
            Solution::VertexSet(mask_set(best))
        }
        Problem::DominatingSet => {
            let best = (0..=full)
                .filter(|&m| is_dominating(g, m))
                .min_by_key(|m| m.count_ones())
                .unwrap();
            Solution::VertexSet(mask_set(best))
        }
        Problem::FeedbackVertexSet => {
            let best = (0..=full)
                .filter(|&m| forest_after_removal(g, m))
                .min_by_key(|m| m.count_ones())
                .unwrap();
            Solution::VertexSet(mask_set(best))
        }
        Problem::QColoring(q) => {
            let all = vec![(1u8 << q) - 1; g.n];
            match coloring_search(g, &all, q) {
                Some(c) => Solution::Coloring(c),
                None => Solution::Infeasible,
            }
        }
        Problem::List3Coloring => {
            let lists = lists.ok_or(SolveError::MissingLists)?;
            match coloring_search(g, lists, 3) {
                Some(c) => Solution::Coloring(c),
                None => Solution::Infeasible,
            }
        }
        Problem::InducedMatching => {
            let mut best_mask = 0u32;
            for m in 0..=full {
                if m.count_ones() > best_mask.count_ones() && one_regular(g, m) {
                    best_mask = m;
                }
            }
            let verts = mask_set(best_mask);
            let mut edges = Vec::new();
            for &u in &verts {
                for &v in &g.adj[u] {
                    if v > u && best_mask >> v & 1 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            Solution::EdgeSet(edges)
        }
        Problem::CyclePacking => {
            let edges: Vec<(usize, usize)> = cycle_packing_brute(g)
                .into_iter()
                .flat_map(|cyc| {
                    let k = cyc.len();
                    (0..k).map(move |i| (cyc[i], cyc[(i + 1) % k])).collect::<Vec<_>>()
                })
                .collect();
            Solution::CycleSet(cycles_from_edges(g.n, &edges))
        }
    };
    Ok(sol)
}

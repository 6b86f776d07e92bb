//! Biclique branching for parameterized vertex cover and feedback vertex
//! set, branching schemes for induced matching and list 3-coloring, the
//! short-cycle-stripping 4-approximation for cycle packing, and greedy
//! degeneracy coloring.

use super::{solve_td, ColorLists, Problem, Solution, SolveError};
use crate::graph::{degeneracy, find_biclique, Graph};
use crate::treewidth::treewidth_heuristic;
use std::collections::BTreeSet;

fn ceil_sqrt(k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let mut t = 1usize;
    while t * t < k {
        t += 1;
    }
    t
}

fn map_names(set: &BTreeSet<usize>, names: &[usize]) -> Vec<usize> {
    set.iter().map(|&v| names[v]).collect()
}

/// Decides whether `g` has a vertex cover of size at most k, returning one
/// if so. High-degree reduction first, then branching on a biclique of size
/// ceil(sqrt(k)) (a cover must contain one full side), and biclique-free
/// leaves are solved optimally over a tree decomposition.
pub fn vc_branch(g: &Graph, k: usize, width_cap: usize) -> Result<Solution, SolveError> {
    fn rec(
        g: &Graph,
        names: &[usize],
        mut k: usize,
        width_cap: usize,
    ) -> Result<Option<Vec<usize>>, SolveError> {
        let mut g = g.clone();
        let mut names = names.to_vec();
        let mut picked: Vec<usize> = Vec::new();
        // any vertex of degree above k is in every small-enough cover
        loop {
            match (0..g.n).find(|&v| g.degree(v) > k) {
                None => break,
                Some(v) => {
                    if k == 0 {
                        return Ok(None);
                    }
                    picked.push(names[v]);
                    let (h, kept) = g.without(&BTreeSet::from([v]));
                    names = kept.iter().map(|&i| names[i]).collect();
                    g = h;
                    k -= 1;
                }
            }
        }
        let m = g.edge_count();
        if m == 0 {
            return Ok(Some(picked));
        }
        if k == 0 || m > k * k {
            // with all degrees at most k, a k-cover covers at most k^2 edges
            return Ok(None);
        }
        let t = ceil_sqrt(k);
        if let Some((a, b)) = find_biclique(&g, t) {
            for side in [a, b] {
                let side: BTreeSet<usize> = side.into_iter().collect();
                let (h, kept) = g.without(&side);
                let child_names: Vec<usize> = kept.iter().map(|&i| names[i]).collect();
                if let Some(mut sol) = rec(&h, &child_names, k - t, width_cap)? {
                    sol.extend(map_names(&side, &names));
                    sol.extend(picked.iter().copied());
                    return Ok(Some(sol));
                }
            }
            return Ok(None);
        }
        // biclique-free leaf: optimal cover over a tree decomposition
        let td = treewidth_heuristic(&g);
        match solve_td(Problem::VertexCover, &g, &td, None, width_cap)? {
            Solution::VertexSet(c) if c.len() <= k => {
                let mut sol: Vec<usize> = c.into_iter().map(|v| names[v]).collect();
                sol.extend(picked);
                Ok(Some(sol))
            }
            _ => Ok(None),
        }
    }
    let names: Vec<usize> = (0..g.n).collect();
    Ok(match rec(g, &names, k, width_cap)? {
        Some(mut c) => {
            c.sort_unstable();
            c.dedup();
            Solution::VertexSet(c)
        }
        None => Solution::Infeasible,
    })
}

/// Decides whether `g` has a feedback vertex set of size at most k. A
/// feedback vertex set must contain all but at most one vertex of each side
/// of any biclique, giving 2t branches; biclique-free leaves are solved
/// optimally over a tree decomposition.
pub fn fvs_branch(g: &Graph, k: usize, width_cap: usize) -> Result<Solution, SolveError> {
    fn rec(
        g: &Graph,
        names: &[usize],
        k: usize,
        width_cap: usize,
    ) -> Result<Option<Vec<usize>>, SolveError> {
        // vertices of degree at most one are in no cycle
        let mut g = g.clone();
        let mut names = names.to_vec();
        loop {
            let drop: BTreeSet<usize> = (0..g.n).filter(|&v| g.degree(v) <= 1).collect();
            if drop.is_empty() {
                break;
            }
            let (h, kept) = g.without(&drop);
            names = kept.iter().map(|&i| names[i]).collect();
            g = h;
        }
        if g.is_forest() {
            return Ok(Some(Vec::new()));
        }
        if k == 0 {
            return Ok(None);
        }
        let t = ceil_sqrt(k);
        if t >= 2 {
            if let Some((a, b)) = find_biclique(&g, t) {
                for side in [a, b] {
                    for &keep in &side {
                        let removed: BTreeSet<usize> =
                            side.iter().copied().filter(|&v| v != keep).collect();
                        let (h, kept) = g.without(&removed);
                        let child_names: Vec<usize> = kept.iter().map(|&i| names[i]).collect();
                        if let Some(mut sol) = rec(&h, &child_names, k - (t - 1), width_cap)? {
                            sol.extend(map_names(&removed, &names));
                            return Ok(Some(sol));
                        }
                    }
                }
                return Ok(None);
            }
        }
        let td = treewidth_heuristic(&g);
        match solve_td(Problem::FeedbackVertexSet, &g, &td, None, width_cap)? {
            Solution::VertexSet(f) if f.len() <= k => {
                Ok(Some(f.into_iter().map(|v| names[v]).collect()))
            }
            _ => Ok(None),
        }
    }
    let names: Vec<usize> = (0..g.n).collect();
    Ok(match rec(g, &names, k, width_cap)? {
        Some(mut f) => {
            f.sort_unstable();
            f.dedup();
            Solution::VertexSet(f)
        }
        None => Solution::Infeasible,
    })
}

/// Maximum induced matching by branching on a biclique of size
/// ceil(sqrt(n)): a matching avoids side A, avoids side B, or uses exactly
/// one biclique edge (u, v) and nothing else near it.
pub fn induced_matching_branch(g: &Graph, width_cap: usize) -> Result<Solution, SolveError> {
    fn rec(
        g: &Graph,
        names: &[usize],
        width_cap: usize,
    ) -> Result<Vec<(usize, usize)>, SolveError> {
        if g.edge_count() == 0 {
            return Ok(Vec::new());
        }
        let t = ceil_sqrt(g.n);
        let biclique = find_biclique(g, t);
        if biclique.is_none() {
            let td = treewidth_heuristic(g);
            return match solve_td(Problem::InducedMatching, g, &td, None, width_cap)? {
                Solution::EdgeSet(es) => {
                    Ok(es.into_iter().map(|(u, v)| (names[u], names[v])).collect())
                }
                _ => unreachable!("induced matching always yields an edge set"),
            };
        }
        let (a, b) = biclique.unwrap();
        let mut best: Vec<(usize, usize)> = Vec::new();
        for side in [&a, &b] {
            let side: BTreeSet<usize> = side.iter().copied().collect();
            let (h, kept) = g.without(&side);
            let child_names: Vec<usize> = kept.iter().map(|&i| names[i]).collect();
            let sol = rec(&h, &child_names, width_cap)?;
            if sol.len() > best.len() {
                best = sol;
            }
        }
        for &u in &a {
            for &v in &b {
                // force edge (u, v) into the matching: everything adjacent
                // to it, and the rest of the biclique, is off limits
                let mut drop: BTreeSet<usize> = a.iter().chain(b.iter()).copied().collect();
                drop.extend(g.adj[u].iter().copied());
                drop.extend(g.adj[v].iter().copied());
                drop.insert(u);
                drop.insert(v);
                let (h, kept) = g.without(&drop);
                let child_names: Vec<usize> = kept.iter().map(|&i| names[i]).collect();
                let mut sol = rec(&h, &child_names, width_cap)?;
                sol.push((names[u], names[v]));
                if sol.len() > best.len() {
                    best = sol;
                }
            }
        }
        Ok(best)
    }
    let names: Vec<usize> = (0..g.n).collect();
    Ok(Solution::EdgeSet(rec(g, &names, width_cap)?))
}

/// List 3-coloring by biclique branching: in any proper coloring with three
/// colors, one side of a biclique must be monochromatic (two colors on one
/// side force the single remaining color on all of the other side).
pub fn list3_branch(
    g: &Graph,
    lists: &ColorLists,
    width_cap: usize,
) -> Result<Solution, SolveError> {
    fn rec(
        g: &Graph,
        lists: &ColorLists,
        names: &[usize],
        width_cap: usize,
    ) -> Result<Option<Vec<(usize, u8)>>, SolveError> {
        if lists.iter().any(|&l| l == 0) {
            return Ok(None);
        }
        if g.n == 0 {
            return Ok(Some(Vec::new()));
        }
        let t = ceil_sqrt(g.n);
        let biclique = find_biclique(g, t);
        if biclique.is_none() {
            let td = treewidth_heuristic(g);
            return match solve_td(Problem::List3Coloring, g, &td, Some(lists), width_cap)? {
                Solution::Coloring(c) => Ok(Some(
                    c.into_iter().enumerate().map(|(v, col)| (names[v], col)).collect(),
                )),
                Solution::Infeasible => Ok(None),
                _ => unreachable!(),
            };
        }
        let (a, b) = biclique.unwrap();
        for side in [&a, &b] {
            let side_set: BTreeSet<usize> = side.iter().copied().collect();
            let internal_edge = side
                .iter()
                .any(|&u| g.adj[u].iter().any(|v| side_set.contains(v)));
            if internal_edge {
                continue; // this side can never be monochromatic
            }
            for c in 1u8..=3 {
                if side.iter().any(|&v| lists[v] >> (c - 1) & 1 == 0) {
                    continue;
                }
                // color the whole side c: delete it and strip c from every
                // neighbor's list
                let (h, kept) = g.without(&side_set);
                let child_names: Vec<usize> = kept.iter().map(|&i| names[i]).collect();
                let mut child_lists: ColorLists = Vec::with_capacity(kept.len());
                for &old in &kept {
                    let near = g.adj[old].iter().any(|v| side_set.contains(v));
                    child_lists.push(if near {
                        lists[old] & !(1 << (c - 1))
                    } else {
                        lists[old]
                    });
                }
                if let Some(mut col) = rec(&h, &child_lists, &child_names, width_cap)? {
                    col.extend(side.iter().map(|&v| (names[v], c)));
                    return Ok(Some(col));
                }
            }
        }
        Ok(None)
    }
    let names: Vec<usize> = (0..g.n).collect();
    Ok(match rec(g, lists, &names, width_cap)? {
        Some(pairs) => {
            let mut colors = vec![0u8; g.n];
            for (v, c) in pairs {
                colors[v] = c;
            }
            Solution::Coloring(colors)
        }
        None => Solution::Infeasible,
    })
}

/// Lexicographically first cycle of length three or four, if any.
fn short_cycle(g: &Graph) -> Option<Vec<usize>> {
    for u in 0..g.n {
        for &v in &g.adj[u] {
            if v <= u {
                continue;
            }
            for &w in &g.adj[v] {
                if w > v && g.has_edge(w, u) {
                    return Some(vec![u, v, w]);
                }
            }
        }
    }
    for u in 0..g.n {
        for w in u + 1..g.n {
            let common: Vec<usize> = g.adj[u]
                .intersection(&g.adj[w])
                .copied()
                .filter(|&x| x != u && x != w)
                .collect();
            if common.len() >= 2 {
                return Some(vec![u, common[0], w, common[1]]);
            }
        }
    }
    None
}

/// 4-approximate cycle packing: strip cycles of length at most four
/// greedily, then pack the girth-above-four remainder (which is
/// K_{2,2}-subgraph-free) optimally over a tree decomposition. Also returns
/// the number of cycles stripped in the first phase.
pub fn cycle_packing_4approx(
    g: &Graph,
    width_cap: usize,
) -> Result<(Solution, usize), SolveError> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut work = g.clone();
    let mut names: Vec<usize> = (0..g.n).collect();
    while let Some(cyc) = short_cycle(&work) {
        cycles.push(cyc.iter().map(|&v| names[v]).collect());
        let drop: BTreeSet<usize> = cyc.into_iter().collect();
        let (h, kept) = work.without(&drop);
        names = kept.iter().map(|&i| names[i]).collect();
        work = h;
    }
    let stripped = cycles.len();
    debug_assert!(find_biclique(&work, 2).is_none());
    let td = treewidth_heuristic(&work);
    match solve_td(Problem::CyclePacking, &work, &td, None, width_cap)? {
        Solution::CycleSet(rest) => {
            for cyc in rest {
                cycles.push(cyc.into_iter().map(|v| names[v]).collect());
            }
        }
        _ => unreachable!(),
    }
    Ok((Solution::CycleSet(cycles), stripped))
}

/// Greedy coloring along the reverse of the min-degree peeling order; uses
/// at most degeneracy + 1 colors.
pub fn greedy_color(g: &Graph) -> Vec<usize> {
    let (_, order) = degeneracy(g);
    let mut colors = vec![0usize; g.n];
    for &v in order.iter().rev() {
        let taken: BTreeSet<usize> = g.adj[v]
            .iter()
            .filter(|&&u| colors[u] != 0)
            .map(|&u| colors[u])
            .collect();
        let mut c = 1;
        while taken.contains(&c) {
            c += 1;
        }
        colors[v] = c;
    }
    colors
}

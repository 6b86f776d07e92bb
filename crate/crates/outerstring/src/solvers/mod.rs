//! Exact solvers for the NP-hard problem suite: dynamic programming over
//! tree decompositions, exhaustive brute-force oracles, biclique branching,
//! a 4-approximation for cycle packing, and greedy degeneracy coloring.

pub mod branch;
pub mod brute;
pub mod dp;
pub mod nice;

use crate::graph::Graph;
use crate::treewidth::{validate_decomposition, TreeDecomposition};
use dp::{run_dp, Event};
use nice::make_nice;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    IndependentSet,
    VertexCover,
    DominatingSet,
    FeedbackVertexSet,
    /// proper coloring with at most q colors, q <= 3
    QColoring(u8),
    List3Coloring,
    InducedMatching,
    CyclePacking,
}

impl Problem {
    pub fn name(&self) -> String {
        match self {
            Problem::IndependentSet => "independentset".into(),
            Problem::VertexCover => "vertexcover".into(),
            Problem::DominatingSet => "dominatingset".into(),
            Problem::FeedbackVertexSet => "fvs".into(),
            Problem::QColoring(q) => format!("{q}coloring"),
            Problem::List3Coloring => "list3coloring".into(),
            Problem::InducedMatching => "inducedmatching".into(),
            Problem::CyclePacking => "cyclepacking".into(),
        }
    }
}

/// Per-vertex allowed colors for list coloring, as bitmasks over colors
/// 1..=3 (bit c-1 set means color c is allowed).
pub type ColorLists = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    VertexSet(Vec<usize>),
    Coloring(Vec<u8>),
    EdgeSet(Vec<(usize, usize)>),
    CycleSet(Vec<Vec<usize>>),
    Infeasible,
}

impl Solution {
    /// The objective value: set/matching/packing size, or number of colors.
    pub fn value(&self) -> Option<usize> {
        match self {
            Solution::VertexSet(s) => Some(s.len()),
            Solution::EdgeSet(s) => Some(s.len()),
            Solution::CycleSet(s) => Some(s.len()),
            Solution::Coloring(c) => c.iter().max().map(|&m| m as usize).or(Some(0)),
            Solution::Infeasible => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("decomposition width {width} exceeds the cap {cap}")]
    WidthLimitExceeded { width: usize, cap: usize },
    #[error("graph too large for brute force: {got} > {cap}")]
    SizeLimitExceeded { got: usize, cap: usize },
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("list coloring requires color lists")]
    MissingLists,
}

/// Checks a solution's validity (not its optimality) against the problem
/// definition.
pub fn verify_solution(
    problem: Problem,
    g: &Graph,
    lists: Option<&ColorLists>,
    sol: &Solution,
) -> bool {
    match (problem, sol) {
        (_, Solution::Infeasible) => true,
        (Problem::IndependentSet, Solution::VertexSet(s)) => {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            set.len() == s.len()
                && set.iter().all(|&v| v < g.n)
                && s.iter()
                    .all(|&u| g.adj[u].iter().all(|v| !set.contains(v)))
        }
        (Problem::VertexCover, Solution::VertexSet(s)) => {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            set.iter().all(|&v| v < g.n)
                && g.edges()
                    .iter()
                    .all(|&(u, v)| set.contains(&u) || set.contains(&v))
        }
        (Problem::DominatingSet, Solution::VertexSet(s)) => {
            let set: BTreeSet<usize> = s.iter().copied().collect();
            set.iter().all(|&v| v < g.n)
                && (0..g.n).all(|v| {
                    set.contains(&v) || g.adj[v].iter().any(|u| set.contains(u))
                })
        }
        (Problem::FeedbackVertexSet, Solution::VertexSet(s)) => {
            let drop: BTreeSet<usize> = s.iter().copied().collect();
            if drop.iter().any(|&v| v >= g.n) {
                return false;
            }
            let (rest, _) = g.without(&drop);
            rest.is_forest()
        }
        (Problem::QColoring(q), Solution::Coloring(c)) => {
            c.len() == g.n
                && c.iter().all(|&x| 1 <= x && x <= q)
                && g.edges().iter().all(|&(u, v)| c[u] != c[v])
        }
        (Problem::List3Coloring, Solution::Coloring(c)) => {
            let lists = match lists {
                Some(l) => l,
                None => return false,
            };
            c.len() == g.n
                && c.iter()
                    .enumerate()
                    .all(|(v, &x)| 1 <= x && x <= 3 && lists[v] >> (x - 1) & 1 == 1)
                && g.edges().iter().all(|&(u, v)| c[u] != c[v])
        }
        (Problem::InducedMatching, Solution::EdgeSet(m)) => {
            let mut used = BTreeSet::new();
            for &(u, v) in m {
                if u >= g.n || v >= g.n || !g.has_edge(u, v) {
                    return false;
                }
                if !used.insert(u) || !used.insert(v) {
                    return false;
                }
            }
            // inducedness: the only edges among matched vertices are the
            // matching edges themselves
            let pairs: BTreeSet<(usize, usize)> = m
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            for &u in &used {
                for &v in &g.adj[u] {
                    if u < v && used.contains(&v) && !pairs.contains(&(u, v)) {
                        return false;
                    }
                }
            }
            true
        }
        (Problem::CyclePacking, Solution::CycleSet(cycles)) => {
            let mut used = BTreeSet::new();
            for cyc in cycles {
                if cyc.len() < 3 {
                    return false;
                }
                for &v in cyc {
                    if v >= g.n || !used.insert(v) {
                        return false;
                    }
                }
                for i in 0..cyc.len() {
                    if !g.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]) {
                        return false;
                    }
                }
            }
            true
        }
        _ => false,
    }
}

/// Splits a set of used edges in which every touched vertex has degree two
/// into its cycles.
pub fn cycles_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for s in 0..n {
        if seen[s] || adj[s].is_empty() {
            continue;
        }
        let mut cyc = vec![s];
        seen[s] = true;
        let mut prev = s;
        let mut cur = adj[s][0];
        while cur != s {
            seen[cur] = true;
            cyc.push(cur);
            let nxt = if adj[cur][0] == prev {
                adj[cur][1]
            } else {
                adj[cur][0]
            };
            prev = cur;
            cur = nxt;
        }
        cycles.push(cyc);
    }
    cycles
}

/// Optimal solution by dynamic programming over the given tree
/// decomposition. The decomposition must be valid for `g`; its width must
/// stay within `width_cap`.
pub fn solve_td(
    problem: Problem,
    g: &Graph,
    td: &TreeDecomposition,
    lists: Option<&ColorLists>,
    width_cap: usize,
) -> Result<Solution, SolveError> {
    let violations = validate_decomposition(g, td);
    if let Some(v) = violations.first() {
        return Err(SolveError::InvalidDecomposition(format!("{v:?}")));
    }
    let width = td.width().max(0) as usize;
    if width > width_cap {
        return Err(SolveError::WidthLimitExceeded {
            width,
            cap: width_cap,
        });
    }
    let nice = make_nice(g, td);
    let sol = match problem {
        Problem::IndependentSet => {
            let (_, events) = run_dp(&nice, &dp::IndepSet).expect("always feasible");
            Solution::VertexSet(intro_choices(&events, 1))
        }
        Problem::VertexCover => {
            let (_, events) = run_dp(&nice, &dp::IndepSet).expect("always feasible");
            let indep: BTreeSet<usize> = intro_choices(&events, 1).into_iter().collect();
            Solution::VertexSet((0..g.n).filter(|v| !indep.contains(v)).collect())
        }
        Problem::DominatingSet => {
            let (_, events) = run_dp(&nice, &dp::DomSet).expect("always feasible");
            Solution::VertexSet(intro_choices(&events, 0))
        }
        Problem::FeedbackVertexSet => {
            let (_, events) = run_dp(&nice, &dp::InducedForest).expect("always feasible");
            let forest: BTreeSet<usize> = intro_choices(&events, 1).into_iter().collect();
            Solution::VertexSet((0..g.n).filter(|v| !forest.contains(v)).collect())
        }
        Problem::QColoring(q) => {
            let allowed = vec![(1u8 << q) - 1; g.n];
            match run_dp(&nice, &dp::ListColoring { q, allowed }) {
                Some((_, events)) => Solution::Coloring(coloring_from(&events, g.n)),
                None => Solution::Infeasible,
            }
        }
        Problem::List3Coloring => {
            let lists = lists.ok_or(SolveError::MissingLists)?;
            match run_dp(
                &nice,
                &dp::ListColoring {
                    q: 3,
                    allowed: lists.clone(),
                },
            ) {
                Some((_, events)) => Solution::Coloring(coloring_from(&events, g.n)),
                None => Solution::Infeasible,
            }
        }
        Problem::InducedMatching => {
            let (_, events) = run_dp(&nice, &dp::InducedMatching).expect("always feasible");
            Solution::EdgeSet(used_edges(&events))
        }
        Problem::CyclePacking => {
            let (_, events) = run_dp(&nice, &dp::CyclePacking).expect("always feasible");
            Solution::CycleSet(cycles_from_edges(g.n, &used_edges(&events)))
        }
    };
    debug_assert!(verify_solution(problem, g, lists, &sol));
    Ok(sol)
}

fn intro_choices(events: &[Event], want: u8) -> Vec<usize> {
    let mut out: Vec<usize> = events
        .iter()
        .filter_map(|e| match e {
            Event::Intro { v, choice } if *choice == want => Some(*v),
            _ => None,
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn coloring_from(events: &[Event], n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for e in events {
        if let Event::Intro { v, choice } = e {
            out[*v] = *choice;
        }
    }
    out
}

fn used_edges(events: &[Event]) -> Vec<(usize, usize)> {
    events
        .iter()
        .filter_map(|e| match e {
            Event::Edge { u, v, choice } if *choice == 1 => Some((*u, *v)),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treewidth::{treewidth_exact, treewidth_heuristic};
    use brute::brute_force;

    fn rand_graph(state: &mut u64, n: usize, percent: u64) -> Graph {
        let mut next = || {
            *state ^= *state << 13;
            *state ^= *state >> 7;
            *state ^= *state << 17;
            *state
        };
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if next() % 100 < percent {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn biclique(s: usize, t: usize) -> Graph {
        let mut g = Graph::empty(s + t);
        for u in 0..s {
            for v in 0..t {
                g.add_edge(u, s + v);
            }
        }
        g
    }

    fn hsolve(problem: Problem, g: &Graph, lists: Option<&ColorLists>) -> Solution {
        let td = treewidth_heuristic(g);
        solve_td(problem, g, &td, lists, 20).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(hsolve(Problem::IndependentSet, &cycle(5), None).value(), Some(2));
        assert_eq!(hsolve(Problem::VertexCover, &biclique(3, 3), None).value(), Some(3));
        // removing any 2 vertices of K4 leaves a forest; 1 leaves a triangle
        assert_eq!(hsolve(Problem::FeedbackVertexSet, &complete(4), None).value(), Some(2));
        assert_eq!(hsolve(Problem::DominatingSet, &path(6), None).value(), Some(2));
        let mut two_tri = Graph::empty(6);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            two_tri.add_edge(u, v);
        }
        assert_eq!(hsolve(Problem::CyclePacking, &two_tri, None).value(), Some(2));
        // induced matching on P5 is a single edge
        assert_eq!(hsolve(Problem::InducedMatching, &path(5), None).value(), Some(1));
        // brute-force corner: independent set on the empty graph is everything
        assert_eq!(
            brute_force(Problem::IndependentSet, &Graph::empty(5), None)
                .unwrap()
                .value(),
            Some(5)
        );
    }

    #[test]
    fn all_problems_match_brute_force() {
        let problems = [
            Problem::IndependentSet,
            Problem::VertexCover,
            Problem::DominatingSet,
            Problem::FeedbackVertexSet,
            Problem::QColoring(2),
            Problem::QColoring(3),
            Problem::List3Coloring,
            Problem::InducedMatching,
            Problem::CyclePacking,
        ];
        let mut state = 0x51ce_cafeu64;
        for trial in 0..25 {
            let n = 5 + trial % 6;
            let g = rand_graph(&mut state, n, 25 + (trial as u64 % 3) * 10);
            let lists: ColorLists = (0..n).map(|v| 1 + ((state >> (v % 24)) & 0b110) as u8).collect();
            for problem in problems {
                let l = matches!(problem, Problem::List3Coloring).then_some(&lists);
                let want = brute_force(problem, &g, l).unwrap();
                let got = hsolve(problem, &g, l);
                assert!(
                    verify_solution(problem, &g, l, &got),
                    "{} invalid on trial {trial}",
                    problem.name()
                );
                match problem {
                    Problem::QColoring(_) | Problem::List3Coloring => {
                        assert_eq!(
                            matches!(got, Solution::Infeasible),
                            matches!(want, Solution::Infeasible),
                            "{} feasibility mismatch on trial {trial}",
                            problem.name()
                        );
                    }
                    _ => assert_eq!(
                        got.value(),
                        want.value(),
                        "{} value mismatch on trial {trial} (n={n})",
                        problem.name()
                    ),
                }
            }
        }
    }

    #[test]
    fn optimum_is_decomposition_invariant() {
        let mut state = 0xfeed_f00du64;
        for trial in 0..10 {
            let n = 6 + trial % 4;
            let g = rand_graph(&mut state, n, 35);
            let exact = treewidth_exact(&g, 25).unwrap().1;
            let heur = treewidth_heuristic(&g);
            for problem in [
                Problem::IndependentSet,
                Problem::DominatingSet,
                Problem::FeedbackVertexSet,
                Problem::CyclePacking,
            ] {
                let a = solve_td(problem, &g, &exact, None, 20).unwrap();
                let b = solve_td(problem, &g, &heur, None, 20).unwrap();
                assert_eq!(a.value(), b.value(), "{}", problem.name());
            }
        }
    }

    #[test]
    fn width_cap_is_enforced() {
        let g = complete(8);
        let td = treewidth_heuristic(&g);
        assert!(matches!(
            solve_td(Problem::IndependentSet, &g, &td, None, 3),
            Err(SolveError::WidthLimitExceeded { .. })
        ));
    }
}

//! Tree decompositions: a three-axiom validator, exact treewidth for small
//! graphs (subset dynamic programming over elimination prefixes, plus a
//! branch-and-bound elimination search that scales a little further), and the
//! deterministic min-fill heuristic.

use crate::graph::{degeneracy, Graph, GraphError};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

/// A tree of bags over the vertices of some graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0) as i64 - 1
    }

    pub fn single_bag(vertices: impl IntoIterator<Item = usize>) -> Self {
        TreeDecomposition {
            bags: vec![vertices.into_iter().collect()],
            edges: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    NotATree,
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    VertexDisconnected(usize),
}

/// Checks the three decomposition axioms (and that the node graph is in fact
/// a tree). Empty output means the decomposition is valid for `g`.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> Vec<TdViolation> {
    let mut out = Vec::new();
    let k = td.bags.len();
    if k == 0 {
        return vec![TdViolation::NotATree];
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.edges {
        if a >= k || b >= k || a == b {
            return vec![TdViolation::NotATree];
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    // connected with exactly k-1 edges <=> tree
    if td.edges.len() != k - 1 {
        out.push(TdViolation::NotATree);
        return out;
    }
    let mut seen = vec![false; k];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        out.push(TdViolation::NotATree);
        return out;
    }
    for v in 0..g.n {
        let hosts: Vec<usize> = (0..k).filter(|&i| td.bags[i].contains(&v)).collect();
        if hosts.is_empty() {
            out.push(TdViolation::VertexUncovered(v));
            continue;
        }
        // the nodes holding v must induce a connected subtree
        let host_set: BTreeSet<usize> = hosts.iter().copied().collect();
        let mut reach = BTreeSet::from([hosts[0]]);
        let mut queue = VecDeque::from([hosts[0]]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if host_set.contains(&y) && reach.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        if reach.len() != hosts.len() {
            out.push(TdViolation::VertexDisconnected(v));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            out.push(TdViolation::EdgeUncovered(u, v));
        }
    }
    out
}

/// Bitmask adjacency for elimination searches (n <= 64).
fn bit_adj(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Neighbors of v in the elimination graph after the vertices in `gone` have
/// been eliminated: vertices outside `gone` reachable from v through `gone`.
fn reach_through(adj: &[u64], gone: u64, v: usize) -> u64 {
    let mut frontier = adj[v] & gone;
    let mut fill = adj[v] & !gone;
    let mut visited = frontier | (1 << v);
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[u] & !visited;
        visited |= new;
        fill |= new & !gone;
        frontier |= new & gone;
    }
    fill & !(1 << v)
}

/// Exact treewidth by dynamic programming over elimination prefixes:
/// f(S) = min over v in S of max(f(S - v), degree of v after eliminating
/// S - v). Returns the optimal elimination order. Requires n <= 24 or so.
pub fn treewidth_exact_dp(g: &Graph) -> Result<(usize, TreeDecomposition), GraphError> {
    let n = g.n;
    if n > 24 {
        return Err(GraphError::SizeLimitExceeded { got: n, cap: 24 });
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::single_bag([])));
    }
    let adj = bit_adj(g);
    let full: u64 = if n == 64 { !0 } else { (1 << n) - 1 };
    let mut f: Vec<u8> = vec![u8::MAX; 1 << n];
    f[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            if f[rest as usize] == u8::MAX {
                continue;
            }
            let q = reach_through(&adj, rest, v).count_ones() as u8;
            best = best.min(f[rest as usize].max(q));
        }
        f[s as usize] = best;
    }
    let tw = f[full as usize] as usize;
    // walk back for a reverse elimination order
    let mut order_rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut m = s;
        let mut picked = None;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            let q = reach_through(&adj, rest, v).count_ones() as usize;
            if f[rest as usize] != u8::MAX && f[rest as usize].max(q as u8) == f[s as usize] {
                picked = Some(v);
                break;
            }
        }
        let v = picked.expect("dp table is consistent");
        order_rev.push(v);
        s &= !(1 << v);
    }
    order_rev.reverse();
    let td = decomposition_from_order(g, &order_rev);
    Ok((tw, td))
}

struct BbSearch {
    adj: Vec<u64>,
    n: usize,
    width: usize,
    failed: HashSet<u64>,
}

impl BbSearch {
    /// Can the remaining vertices be eliminated with all degrees <= width?
    fn run(&mut self, gone: u64, order: &mut Vec<usize>) -> bool {
        if gone.count_ones() as usize == self.n {
            return true;
        }
        if self.failed.contains(&gone) {
            return false;
        }
        // eliminate any simplicial vertex right away; if its degree exceeds
        // the budget the whole state is dead
        let mut candidates: Vec<(usize, usize, u64)> = Vec::new();
        for v in 0..self.n {
            if gone >> v & 1 == 1 {
                continue;
            }
            let nb = reach_through(&self.adj, gone, v);
            let deg = nb.count_ones() as usize;
            let simplicial = {
                let mut ok = true;
                let mut m = nb;
                while ok && m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    let nu = reach_through(&self.adj, gone, u);
                    ok = nb & !(1 << u) & !nu == 0;
                }
                ok
            };
            if simplicial {
                if deg <= self.width {
                    order.push(v);
                    if self.run(gone | (1 << v), order) {
                        return true;
                    }
                    order.pop();
                }
                self.failed.insert(gone);
                return false;
            }
            if deg <= self.width {
                candidates.push((deg, v, nb));
            }
        }
        candidates.sort();
        for (_, v, _) in candidates {
            order.push(v);
            if self.run(gone | (1 << v), order) {
                return true;
            }
            order.pop();
        }
        self.failed.insert(gone);
        false
    }
}

/// Exact treewidth with an optimal decomposition. Uses the subset DP for
/// small graphs and iterative-deepening elimination search beyond, capped at
/// `cap` vertices (default 25 in [`crate::config::Config`]).
pub fn treewidth_exact(g: &Graph, cap: usize) -> Result<(usize, TreeDecomposition), GraphError> {
    if g.n > cap.min(64) {
        return Err(GraphError::SizeLimitExceeded { got: g.n, cap: cap.min(64) });
    }
    if g.n == 0 {
        return Ok((0, TreeDecomposition::single_bag([])));
    }
    if g.n <= 18 {
        return treewidth_exact_dp(g);
    }
    let (lb, _) = degeneracy(g);
    let heur = treewidth_heuristic(g);
    let ub = heur.width().max(0) as usize;
    let adj = bit_adj(g);
    for w in lb..=ub {
        let mut search = BbSearch {
            adj: adj.clone(),
            n: g.n,
            width: w,
            failed: HashSet::new(),
        };
        let mut order = Vec::new();
        if search.run(0, &mut order) {
            let td = decomposition_from_order(g, &order);
            debug_assert!(validate_decomposition(g, &td).is_empty());
            // the realized width can undershoot w only if w was not tight
            let tw = td.width().max(0) as usize;
            return Ok((tw.min(w), td));
        }
    }
    Ok((ub, heur))
}

/// Builds the decomposition induced by an elimination order: the bag of v is
/// v plus its neighborhood at elimination time, attached to the bag of the
/// first later-eliminated vertex in that neighborhood.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n;
    assert_eq!(order.len(), n);
    if n == 0 {
        return TreeDecomposition::single_bag([]);
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // simulate elimination on set adjacency (n can exceed 64 here)
    let mut adj: Vec<BTreeSet<usize>> = g.adj.clone();
    let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    for &v in order.iter() {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag: BTreeSet<usize> = nbrs.iter().copied().collect();
        bag.insert(v);
        bags.push(bag);
        for i in 0..nbrs.len() {
            adj[nbrs[i]].remove(&v);
            for j in i + 1..nbrs.len() {
                let (a, b) = (nbrs[i], nbrs[j]);
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
    }
    let mut edges = Vec::new();
    for i in 0..n {
        let v = order[i];
        // attach to the first-eliminated later neighbor's bag
        let parent = bags[i]
            .iter()
            .filter(|&&u| u != v && pos[u] > i)
            .min_by_key(|&&u| pos[u])
            .map(|&u| pos[u]);
        match parent {
            Some(p) => edges.push((i, p)),
            None => {
                if i + 1 < n {
                    edges.push((i, i + 1));
                }
            }
        }
    }
    TreeDecomposition { bags, edges }
}

/// Min-fill elimination heuristic with lowest-index tie-breaking; the result
/// is always a valid decomposition, of width at least the true treewidth.
pub fn treewidth_heuristic(g: &Graph) -> TreeDecomposition {
    let n = g.n;
    if n == 0 {
        return TreeDecomposition::single_bag([]);
    }
    let mut adj: Vec<BTreeSet<usize>> = g.adj.clone();
    let mut alive: Vec<bool> = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None; // (fill, v)
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0usize;
            for i in 0..nbrs.len() {
                for j in i + 1..nbrs.len() {
                    if !adj[nbrs[i]].contains(&nbrs[j]) {
                        fill += 1;
                    }
                }
            }
            if best.map_or(true, |(bf, bv)| (fill, v) < (bf, bv)) {
                best = Some((fill, v));
            }
        }
        let (_, v) = best.unwrap();
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for i in 0..nbrs.len() {
            adj[nbrs[i]].remove(&v);
            for j in i + 1..nbrs.len() {
                let (a, b) = (nbrs[i], nbrs[j]);
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    decomposition_from_order(g, &order)
}

/// Serializable form used by the JSON interface.
#[derive(Clone, Debug)]
pub struct NamedDecomposition {
    pub names: Vec<String>,
    pub td: TreeDecomposition,
}

impl NamedDecomposition {
    pub fn numbered(td: &TreeDecomposition) -> Self {
        NamedDecomposition {
            names: (0..td.bags.len()).map(|i| format!("n{i}")).collect(),
            td: td.clone(),
        }
    }

    pub fn lookup(&self) -> HashMap<&str, usize> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
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

    fn grid(r: usize, c: usize) -> Graph {
        let mut g = Graph::empty(r * c);
        for i in 0..r {
            for j in 0..c {
                if j + 1 < c {
                    g.add_edge(i * c + j, i * c + j + 1);
                }
                if i + 1 < r {
                    g.add_edge(i * c + j, (i + 1) * c + j);
                }
            }
        }
        g
    }

    #[test]
    fn validator_accepts_and_rejects() {
        let g = path(4);
        // single bag with everything: valid, width n-1
        let td = TreeDecomposition::single_bag(0..4);
        assert!(validate_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), 3);

        // the canonical path decomposition
        let td = TreeDecomposition {
            bags: vec![
                BTreeSet::from([0, 1]),
                BTreeSet::from([1, 2]),
                BTreeSet::from([2, 3]),
            ],
            edges: vec![(0, 1), (1, 2)],
        };
        assert!(validate_decomposition(&g, &td).is_empty());
        assert_eq!(td.width(), 1);

        // removing the middle bag breaks edge coverage and connectivity
        let bad = TreeDecomposition {
            bags: vec![BTreeSet::from([0, 1]), BTreeSet::from([2, 3])],
            edges: vec![(0, 1)],
        };
        let viol = validate_decomposition(&g, &bad);
        assert!(viol.contains(&TdViolation::EdgeUncovered(1, 2)));
    }

    #[test]
    fn exact_treewidth_known_graphs() {
        let (tw, td) = treewidth_exact(&complete(4), 25).unwrap();
        assert_eq!(tw, 3);
        assert!(validate_decomposition(&complete(4), &td).is_empty());
        assert_eq!(td.width(), 3);

        let (tw, td) = treewidth_exact(&cycle(6), 25).unwrap();
        assert_eq!(tw, 2);
        assert!(validate_decomposition(&cycle(6), &td).is_empty());

        let (tw, td) = treewidth_exact(&grid(3, 3), 25).unwrap();
        assert_eq!(tw, 3);
        assert!(validate_decomposition(&grid(3, 3), &td).is_empty());

        let (tw, _) = treewidth_exact(&path(7), 25).unwrap();
        assert_eq!(tw, 1);
    }

    #[test]
    fn dp_and_branch_and_bound_agree() {
        // deterministic pseudo-random graphs cross-check the two routes
        let mut state = 0xdeadbeefu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..25 {
            let n = 6 + (trial % 5);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if next() % 100 < 35 {
                        g.add_edge(u, v);
                    }
                }
            }
            let (tw_dp, td_dp) = treewidth_exact_dp(&g).unwrap();
            assert!(validate_decomposition(&g, &td_dp).is_empty());
            assert_eq!(td_dp.width(), tw_dp as i64);
            // force the branch-and-bound path
            let (lb, _) = degeneracy(&g);
            let adj = bit_adj(&g);
            let mut found = None;
            for w in lb..g.n {
                let mut s = BbSearch {
                    adj: adj.clone(),
                    n: g.n,
                    width: w,
                    failed: HashSet::new(),
                };
                let mut order = Vec::new();
                if s.run(0, &mut order) {
                    found = Some((w, order));
                    break;
                }
            }
            let (tw_bb, order) = found.unwrap();
            assert_eq!(tw_bb, tw_dp, "trial {trial}");
            let td = decomposition_from_order(&g, &order);
            assert!(validate_decomposition(&g, &td).is_empty());
            assert!(td.width() <= tw_bb as i64);
        }
    }

    #[test]
    fn heuristic_is_valid_and_dominates_exact() {
        for g in [path(6), cycle(8), grid(3, 4), complete(5)] {
            let td = treewidth_heuristic(&g);
            assert!(validate_decomposition(&g, &td).is_empty());
            let (tw, _) = treewidth_exact(&g, 25).unwrap();
            assert!(td.width() >= tw as i64);
        }
        // trees come out at width exactly 1
        let td = treewidth_heuristic(&path(9));
        assert_eq!(td.width(), 1);
        // K_n at width n-1
        let td = treewidth_heuristic(&complete(6));
        assert_eq!(td.width(), 5);
    }

    #[test]
    fn size_cap_is_enforced() {
        let g = Graph::empty(30);
        assert!(matches!(
            treewidth_exact(&g, 25),
            Err(GraphError::SizeLimitExceeded { .. })
        ));
    }
}

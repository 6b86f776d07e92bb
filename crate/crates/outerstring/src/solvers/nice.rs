//! Nice tree decompositions with explicit edge-introduce nodes: every node
//! is a leaf, vertex introduction, edge introduction, forget, or binary join,
//! the root bag is empty, and every graph edge is introduced exactly once.

use crate::graph::Graph;
use crate::treewidth::TreeDecomposition;
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub enum NiceNode {
    Leaf,
    IntroduceVertex { v: usize, child: usize },
    IntroduceEdge { u: usize, v: usize, child: usize },
    Forget { v: usize, child: usize },
    Join { left: usize, right: usize },
}

#[derive(Clone, Debug)]
pub struct NiceTd {
    /// children always precede their parent
    pub nodes: Vec<NiceNode>,
    /// sorted bag per node
    pub bags: Vec<Vec<usize>>,
    pub root: usize,
}

impl NiceTd {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    /// chain of introduces (and any newly assigned edges) from `from_bag`
    /// up to `to_bag`
    fn grow(
        &mut self,
        mut cur: usize,
        from_bag: &BTreeSet<usize>,
        to_bag: &BTreeSet<usize>,
    ) -> usize {
        let mut have = from_bag.clone();
        for &v in to_bag.iter() {
            if !have.contains(&v) {
                have.insert(v);
                let bag: Vec<usize> = have.iter().copied().collect();
                cur = self.push(NiceNode::IntroduceVertex { v, child: cur }, bag);
            }
        }
        cur
    }

    fn shrink(
        &mut self,
        mut cur: usize,
        from_bag: &BTreeSet<usize>,
        to_bag: &BTreeSet<usize>,
    ) -> usize {
        let mut have = from_bag.clone();
        for &v in from_bag.iter() {
            if !to_bag.contains(&v) {
                have.remove(&v);
                let bag: Vec<usize> = have.iter().copied().collect();
                cur = self.push(NiceNode::Forget { v, child: cur }, bag);
            }
        }
        cur
    }
}

/// Converts an arbitrary valid decomposition of `g` into nice form.
pub fn make_nice(g: &Graph, td: &TreeDecomposition) -> NiceTd {
    assert!(!td.bags.is_empty());
    // assign every edge to the first original node containing both endpoints
    let mut assigned: Vec<Vec<(usize, usize)>> = vec![Vec::new(); td.bags.len()];
    for (u, v) in g.edges() {
        let host = (0..td.bags.len())
            .find(|&i| td.bags[i].contains(&u) && td.bags[i].contains(&v))
            .expect("valid decomposition covers every edge");
        assigned[host].push((u, v));
    }
    let mut adj = vec![Vec::new(); td.bags.len()];
    for &(a, b) in &td.edges {
        adj[a].push(b);
        adj[b].push(a);
    }

    let mut nice = NiceTd {
        nodes: Vec::new(),
        bags: Vec::new(),
        root: 0,
    };

    // iterative post-order over the original tree rooted at 0
    fn build(
        nice: &mut NiceTd,
        td: &TreeDecomposition,
        adj: &[Vec<usize>],
        assigned: &[Vec<(usize, usize)>],
        node: usize,
        parent: Option<usize>,
    ) -> usize {
        let bag: BTreeSet<usize> = td.bags[node].iter().copied().collect();
        let mut arms: Vec<usize> = Vec::new();
        for &c in &adj[node] {
            if Some(c) == parent {
                continue;
            }
            let sub = build(nice, td, adj, assigned, c, Some(node));
            let child_bag: BTreeSet<usize> = td.bags[c].iter().copied().collect();
            let mid = nice.shrink(sub, &child_bag, &bag);
            let shrunk: BTreeSet<usize> = child_bag.intersection(&bag).copied().collect();
            arms.push(nice.grow(mid, &shrunk, &bag));
        }
        let mut cur = if arms.is_empty() {
            let leaf = nice.push(NiceNode::Leaf, Vec::new());
            nice.grow(leaf, &BTreeSet::new(), &bag)
        } else {
            let bag_vec: Vec<usize> = bag.iter().copied().collect();
            let mut it = arms.into_iter();
            let mut cur = it.next().unwrap();
            for arm in it {
                cur = nice.push(
                    NiceNode::Join {
                        left: cur,
                        right: arm,
                    },
                    bag_vec.clone(),
                );
            }
            cur
        };
        let bag_vec: Vec<usize> = bag.iter().copied().collect();
        for &(u, v) in &assigned[node] {
            cur = nice.push(NiceNode::IntroduceEdge { u, v, child: cur }, bag_vec.clone());
        }
        cur
    }

    let top = build(&mut nice, td, &adj, &assigned, 0, None);
    let top_bag: BTreeSet<usize> = td.bags[0].iter().copied().collect();
    let root = nice.shrink(top, &top_bag, &BTreeSet::new());
    nice.root = root;
    nice
}

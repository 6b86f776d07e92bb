//! Dynamic programming over nice tree decompositions. One small engine walks
//! the nice nodes bottom-up over per-node state tables and replays the best
//! root state into a list of introduce/edge decisions; each problem supplies
//! its state transitions.

use super::nice::{NiceNode, NiceTd};
use std::collections::HashMap;

pub type State = Vec<u8>;

#[derive(Clone, Debug)]
enum Back {
    Leaf,
    Intro { child: State, choice: u8 },
    Edge { child: State, choice: u8 },
    Forget { child: State },
    Join { left: State, right: State },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Intro { v: usize, choice: u8 },
    Edge { u: usize, v: usize, choice: u8 },
}

/// Problem-specific transitions. All values are maximized; minimization
/// problems negate their costs.
pub trait Dp {
    /// ways to extend a child state with vertex `v` inserted at `pos`
    fn intro(&self, v: usize, pos: usize, child: &State) -> Vec<(State, i64, u8)>;
    /// ways to account for the edge (u, v) at bag positions (pu, pv)
    fn edge(&self, pu: usize, pv: usize, state: &State) -> Vec<(State, i64, u8)>;
    /// project the state when the vertex at `pos` leaves the bag
    fn forget(&self, pos: usize, state: &State) -> Option<State>;
    /// combine child states that share a signature
    fn join(&self, a: &State, b: &State) -> Option<(State, i64)>;
    /// states may only join when their signatures match
    fn join_sig(&self, s: &State) -> Vec<u8> {
        s.clone()
    }
}

pub fn insert_at(s: &State, pos: usize, code: u8) -> State {
    let mut out = Vec::with_capacity(s.len() + 1);
    out.extend_from_slice(&s[..pos]);
    out.push(code);
    out.extend_from_slice(&s[pos..]);
    out
}

pub fn remove_at(s: &State, pos: usize) -> State {
    let mut out = Vec::with_capacity(s.len() - 1);
    out.extend_from_slice(&s[..pos]);
    out.extend_from_slice(&s[pos + 1..]);
    out
}

type Table = HashMap<State, (i64, Back)>;

fn improve(table: &mut Table, state: State, value: i64, back: Back) {
    match table.get(&state) {
        Some((old, _)) if *old >= value => {}
        _ => {
            table.insert(state, (value, back));
        }
    }
}

/// Runs the DP and returns the optimal value plus the decision trace, or
/// None when no feasible assignment exists.
pub fn run_dp<P: Dp>(nice: &NiceTd, p: &P) -> Option<(i64, Vec<Event>)> {
    let n = nice.nodes.len();
    let mut tables: Vec<Table> = Vec::with_capacity(n);
    for i in 0..n {
        let mut t = Table::new();
        match &nice.nodes[i] {
            NiceNode::Leaf => {
                t.insert(Vec::new(), (0, Back::Leaf));
            }
            NiceNode::IntroduceVertex { v, child } => {
                let pos = nice.bags[i].binary_search(v).expect("v in bag");
                for (cs, &(cv, _)) in &tables[*child] {
                    for (ns, delta, choice) in p.intro(*v, pos, cs) {
                        improve(
                            &mut t,
                            ns,
                            cv + delta,
                            Back::Intro {
                                child: cs.clone(),
                                choice,
                            },
                        );
                    }
                }
            }
            NiceNode::IntroduceEdge { u, v, child } => {
                let pu = nice.bags[i].binary_search(u).expect("u in bag");
                let pv = nice.bags[i].binary_search(v).expect("v in bag");
                for (cs, &(cv, _)) in &tables[*child] {
                    for (ns, delta, choice) in p.edge(pu, pv, cs) {
                        improve(
                            &mut t,
                            ns,
                            cv + delta,
                            Back::Edge {
                                child: cs.clone(),
                                choice,
                            },
                        );
                    }
                }
            }
            NiceNode::Forget { v, child } => {
                let pos = nice.bags[*child].binary_search(v).expect("v in child bag");
                for (cs, &(cv, _)) in &tables[*child] {
                    if let Some(ns) = p.forget(pos, cs) {
                        improve(&mut t, ns, cv, Back::Forget { child: cs.clone() });
                    }
                }
            }
            NiceNode::Join { left, right } => {
                let mut by_sig: HashMap<Vec<u8>, Vec<&State>> = HashMap::new();
                for rs in tables[*right].keys() {
                    by_sig.entry(p.join_sig(rs)).or_default().push(rs);
                }
                for (ls, &(lv, _)) in &tables[*left] {
                    if let Some(group) = by_sig.get(&p.join_sig(ls)) {
                        for rs in group {
                            let rv = tables[*right][*rs].0;
                            if let Some((ns, delta)) = p.join(ls, rs) {
                                improve(
                                    &mut t,
                                    ns,
                                    lv + rv + delta,
                                    Back::Join {
                                        left: ls.clone(),
                                        right: (*rs).clone(),
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }
        tables.push(t);
    }

    let (value, _) = *tables[nice.root].get(&Vec::new())?;
    // replay decisions from the root
    let mut events = Vec::new();
    let mut stack: Vec<(usize, State)> = vec![(nice.root, Vec::new())];
    while let Some((node, state)) = stack.pop() {
        let back = tables[node][&state].1.clone();
        match (&nice.nodes[node], back) {
            (NiceNode::Leaf, Back::Leaf) => {}
            (NiceNode::IntroduceVertex { v, child }, Back::Intro { child: cs, choice }) => {
                events.push(Event::Intro { v: *v, choice });
                stack.push((*child, cs));
            }
            (NiceNode::IntroduceEdge { u, v, child }, Back::Edge { child: cs, choice }) => {
                events.push(Event::Edge {
                    u: *u,
                    v: *v,
                    choice,
                });
                stack.push((*child, cs));
            }
            (NiceNode::Forget { child, .. }, Back::Forget { child: cs }) => {
                stack.push((*child, cs));
            }
            (NiceNode::Join { left, right }, Back::Join { left: ls, right: rs }) => {
                stack.push((*left, ls));
                stack.push((*right, rs));
            }
            _ => unreachable!("backpointer shape matches node shape"),
        }
    }
    Some((value, events))
}

// ---------------------------------------------------------------------------
// independent set

pub struct IndepSet;

impl Dp for IndepSet {
    fn intro(&self, _v: usize, pos: usize, child: &State) -> Vec<(State, i64, u8)> {
        vec![
            (insert_at(child, pos, 0), 0, 0),
            (insert_at(child, pos, 1), 1, 1),
        ]
    }
    fn edge(&self, pu: usize, pv: usize, s: &State) -> Vec<(State, i64, u8)> {
        if s[pu] == 1 && s[pv] == 1 {
            Vec::new()
        } else {
            vec![(s.clone(), 0, 0)]
        }
    }
    fn forget(&self, pos: usize, s: &State) -> Option<State> {
        Some(remove_at(s, pos))
    }
    fn join(&self, a: &State, b: &State) -> Option<(State, i64)> {
        if a == b {
            let ones = a.iter().filter(|&&x| x == 1).count() as i64;
            Some((a.clone(), -ones))
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// dominating set (maximizes minus the number of selected vertices)

pub struct DomSet;

const DS_SEL: u8 = 0;
const DS_DOM: u8 = 1;
const DS_UNDOM: u8 = 2;

impl Dp for DomSet {
    fn intro(&self, _v: usize, pos: usize, child: &State) -> Vec<(State, i64, u8)> {
        vec![
            (insert_at(child, pos, DS_SEL), -1, DS_SEL),
            (insert_at(child, pos, DS_UNDOM), 0, DS_UNDOM),
        ]
    }
    fn edge(&self, pu: usize, pv: usize, s: &State) -> Vec<(State, i64, u8)> {
        let mut ns = s.clone();
        if ns[pu] == DS_SEL && ns[pv] == DS_UNDOM {
            ns[pv] = DS_DOM;
        }
        if ns[pv] == DS_SEL && ns[pu] == DS_UNDOM {
            ns[pu] = DS_DOM;
        }
        vec![(ns, 0, 0)]
    }
    fn forget(&self, pos: usize, s: &State) -> Option<State> {
        if s[pos] == DS_UNDOM {
            None
        } else {
            Some(remove_at(s, pos))
        }
    }
    fn join(&self, a: &State, b: &State) -> Option<(State, i64)> {
        let mut out = Vec::with_capacity(a.len());
        let mut sel = 0i64;
        for (&x, &y) in a.iter().zip(b) {
            let z = match (x, y) {
                (DS_SEL, DS_SEL) => {
                    sel += 1;
                    DS_SEL
                }
                (DS_SEL, _) | (_, DS_SEL) => return None,
                (DS_UNDOM, DS_UNDOM) => DS_UNDOM,
                _ => DS_DOM,
            };
            out.push(z);
        }
        Some((out, sel))
    }
    fn join_sig(&self, s: &State) -> Vec<u8> {
        s.iter().map(|&x| (x == DS_SEL) as u8).collect()
    }
}

// ---------------------------------------------------------------------------
// proper coloring with per-vertex allowed color sets (colors are 1-based,
// stored as bitmasks over colors 1..=q)

pub struct ListColoring {
    pub q: u8,
    pub allowed: Vec<u8>,
}

impl Dp for ListColoring {
    fn intro(&self, v: usize, pos: usize, child: &State) -> Vec<(State, i64, u8)> {
        (1..=self.q)
            .filter(|c| self.allowed[v] >> (c - 1) & 1 == 1)
            .map(|c| (insert_at(child, pos, c), 0, c))
            .collect()
    }
    fn edge(&self, pu: usize, pv: usize, s: &State) -> Vec<(State, i64, u8)> {
        if s[pu] == s[pv] {
            Vec::new()
        } else {
            vec![(s.clone(), 0, 0)]
        }
    }
    fn forget(&self, pos: usize, s: &State) -> Option<State> {
        Some(remove_at(s, pos))
    }
    fn join(&self, a: &State, b: &State) -> Option<(State, i64)> {
        if a == b {
            Some((a.clone(), 0))
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// maximum induced matching: chosen endpoints must induce a perfect matching

pub struct InducedMatching;

const IM_OUT: u8 = 0;
const IM_WAIT: u8 = 1;
const IM_DONE: u8 = 2;

impl Dp for InducedMatching {
    fn intro(&self, _v: usize, pos: usize, child: &State) -> Vec<(State, i64, u8)> {
        vec![
            (insert_at(child, pos, IM_OUT), 0, 0),
            (insert_at(child, pos, IM_WAIT), 0, 1),
        ]
    }
    fn edge(&self, pu: usize, pv: usize, s: &State) -> Vec<(State, i64, u8)> {
        match (s[pu], s[pv]) {
            (IM_OUT, _) | (_, IM_OUT) => vec![(s.clone(), 0, 0)],
            (IM_WAIT, IM_WAIT) => {
                let mut ns = s.clone();
                ns[pu] = IM_DONE;
                ns[pv] = IM_DONE;
                vec![(ns, 1, 1)]
            }
            // two matched endpoints that are not partners break inducedness
            _ => Vec::new(),
        }
    }
    fn forget(&self, pos: usize, s: &State) -> Option<State> {
        if s[pos] == IM_WAIT {
            None
        } else {
            Some(remove_at(s, pos))
        }
    }
    fn join(&self, a: &State, b: &State) -> Option<(State, i64)> {
        let mut out = Vec::with_capacity(a.len());
        for (&x, &y) in a.iter().zip(b) {
            let z = match (x, y) {
                (IM_OUT, IM_OUT) => IM_OUT,
                (IM_WAIT, IM_WAIT) => IM_WAIT,
                (IM_WAIT, IM_DONE) | (IM_DONE, IM_WAIT) => IM_DONE,
                _ => return None,
            };
            out.push(z);
        }
        Some((out, 0))
    }
    fn join_sig(&self, s: &State) -> Vec<u8> {
        s.iter().map(|&x| (x == IM_OUT) as u8).collect()
    }
}

// ---------------------------------------------------------------------------
// feedback vertex set via maximum induced forest; states carry the partition
// of chosen bag vertices into forest components

pub struct InducedForest;

fn canon_partition(s: &mut State) {
    let mut rename: HashMap<u8, u8> = HashMap::new();
    let mut next = 1u8;
    for x in s.iter_mut() {
        if *x != 0 {
            let label = *rename.entry(*x).or_insert_with(|| {
                let l = next;
                next += 1;
                l
            });
            *x = label;
        }
    }
}

impl Dp for InducedForest {
    fn intro(&self, _v: usize, pos: usize, child: &State) -> Vec<(State, i64, u8)> {
        let out0 = insert_at(child, pos, 0);
        let mut out1 = insert_at(child, pos, 255);
        canon_partition(&mut out1);
        vec![(out0, 0, 0), (out1, 1, 1)]
    }
    fn edge(&self, pu: usize, pv: usize, s: &State) -> Vec<(State, i64, u8)> {
        let (a, b) = (s[pu], s[pv]);
        if a == 0 || b == 0 {
            return vec![(s.clone(), 0, 0)];
        }
        if a == b {
            return Vec::new(); // both endpoints already connected: a cycle
        }
        let mut ns = s.clone();
        for x in ns.iter_mut() {
            if *x == b {
                *x = a;
            }
        }
        canon_partition(&mut ns);
        vec![(ns, 0, 0)]
    }
    fn forget(&self, pos: usize, s: &State) -> Option<State> {
        let mut ns = remove_at(s, pos);
        canon_partition(&mut ns);
        Some(ns)
    }
    fn join(&self, a: &State, b: &State) -> Option<(State, i64)> {
        let w = a.len();
        let mut uf: Vec<usize> = (0..w).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let r = find(uf, uf[x]);
                uf[x] = r;
            }
            uf[x]
        }
        let mut in_count = 0i64;
        for side in [a, b] {
            let mut first: HashMap<u8, usize> = HashMap::new();
            for i in 0..w {
                if side[i] == 0 {
                    continue;
                }
                if let Some(&f) = first.get(&side[i]) {
                    let (ra, rb) = (find(&mut uf, f), find(&mut uf, i));
                    if ra == rb {
                        return None; // gluing the two forests closes a cycle
                    }
                    uf[ra] = rb;
                } else {
                    first.insert(side[i], i);
                }
            }
        }
        let mut out = vec![0u8; w];
        for i in 0..w {
            if a[i] != 0 {
                in_count += 1;
                out[i] = (find(&mut uf, i) + 1) as u8;
            }
        }
        canon_partition(&mut out);
        Some((out, -in_count))
    }
    fn join_sig(&self, s: &State) -> Vec<u8> {
        s.iter().map(|&x| (x != 0) as u8).collect()
    }
}

// ---------------------------------------------------------------------------
// cycle packing: vertices in cycles carry their current degree; open path
// ends store their partner's bag position (code 10 + position)

pub struct CyclePacking;

const CP_OUT: u8 = 0;
const CP_DEG0: u8 = 1;
const CP_DEG2: u8 = 2;
const CP_PAIR: u8 = 10;

fn cp_insert(s: &State, pos: usize, code: u8) -> State {
    let mut out = Vec::with_capacity(s.len() + 1);
    let shift = |x: u8| {
        if x >= CP_PAIR && (x - CP_PAIR) as usize >= pos {
            x + 1
        } else {
            x
        }
    };
    out.extend(s[..pos].iter().map(|&x| shift(x)));
    out.push(code);
    out.extend(s[pos..].iter().map(|&x| shift(x)));
    out
}

fn cp_remove(s: &State, pos: usize) -> State {
    let mut out = Vec::with_capacity(s.len() - 1);
    for (i, &x) in s.iter().enumerate() {
        if i == pos {
            continue;
        }
        if x >= CP_PAIR && (x - CP_PAIR) as usize > pos {
            out.push(x - 1);
        } else {
            out.push(x);
        }
    }
    out
}

fn cp_deg(code: u8) -> Option<u8> {
    match code {
        CP_OUT => None,
        CP_DEG0 => Some(0),
        CP_DEG2 => Some(2),
        _ => Some(1),
    }
}

impl Dp for CyclePacking {
    fn intro(&self, _v: usize, pos: usize, child: &State) -> Vec<(State, i64, u8)> {
        vec![
            (cp_insert(child, pos, CP_OUT), 0, 0),
            (cp_insert(child, pos, CP_DEG0), 0, 1),
        ]
    }
    fn edge(&self, pu: usize, pv: usize, s: &State) -> Vec<(State, i64, u8)> {
        let mut out = vec![(s.clone(), 0, 0)];
        let (du, dv) = (cp_deg(s[pu]), cp_deg(s[pv]));
        if let (Some(du), Some(dv)) = (du, dv) {
            if du < 2 && dv < 2 {
                let mut ns = s.clone();
                match (du, dv) {
                    (0, 0) => {
                        ns[pu] = CP_PAIR + pv as u8;
                        ns[pv] = CP_PAIR + pu as u8;
                        out.push((ns, 0, 1));
                    }
                    (0, 1) => {
                        let w = (s[pv] - CP_PAIR) as usize;
                        ns[pu] = CP_PAIR + w as u8;
                        ns[w] = CP_PAIR + pu as u8;
                        ns[pv] = CP_DEG2;
                        out.push((ns, 0, 1));
                    }
                    (1, 0) => {
                        let w = (s[pu] - CP_PAIR) as usize;
                        ns[pv] = CP_PAIR + w as u8;
                        ns[w] = CP_PAIR + pv as u8;
                        ns[pu] = CP_DEG2;
                        out.push((ns, 0, 1));
                    }
                    (1, 1) => {
                        let wu = (s[pu] - CP_PAIR) as usize;
                        let wv = (s[pv] - CP_PAIR) as usize;
                        if wu == pv {
                            // the two free ends of one path meet: a cycle
                            ns[pu] = CP_DEG2;
                            ns[pv] = CP_DEG2;
                            out.push((ns, 1, 1));
                        } else {
                            ns[wu] = CP_PAIR + wv as u8;
                            ns[wv] = CP_PAIR + wu as u8;
                            ns[pu] = CP_DEG2;
                            ns[pv] = CP_DEG2;
                            out.push((ns, 0, 1));
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
        out
    }
    fn forget(&self, pos: usize, s: &State) -> Option<State> {
        if s[pos] == CP_OUT || s[pos] == CP_DEG2 {
            Some(cp_remove(s, pos))
        } else {
            None
        }
    }
    fn join(&self, a: &State, b: &State) -> Option<(State, i64)> {
        let w = a.len();
        let mut pa: Vec<Option<usize>> = vec![None; w];
        let mut pb: Vec<Option<usize>> = vec![None; w];
        let mut degsum = vec![0u8; w];
        let mut any_in = vec![false; w];
        for i in 0..w {
            match (cp_deg(a[i]), cp_deg(b[i])) {
                (None, None) => {}
                (Some(da), Some(db)) => {
                    if da + db > 2 {
                        return None;
                    }
                    any_in[i] = true;
                    degsum[i] = da + db;
                    if da == 1 {
                        pa[i] = Some((a[i] - CP_PAIR) as usize);
                    }
                    if db == 1 {
                        pb[i] = Some((b[i] - CP_PAIR) as usize);
                    }
                }
                _ => return None,
            }
        }
        // components of the pairing multigraph are merged paths or closed
        // cycles; walk paths from their endpoints first
        let mut out: Vec<u8> = (0..w)
            .map(|i| {
                if !any_in[i] {
                    CP_OUT
                } else if degsum[i] == 2 {
                    CP_DEG2
                } else {
                    CP_DEG0 // endpoints fixed below
                }
            })
            .collect();
        let pair_deg = |i: usize| pa[i].is_some() as u8 + pb[i].is_some() as u8;
        let mut visited = vec![false; w];
        for start in 0..w {
            if visited[start] || pair_deg(start) != 1 {
                continue;
            }
            visited[start] = true;
            // walk to the other end, alternating edge families
            let mut use_a = pa[start].is_some();
            let mut cur = start;
            loop {
                let nx = if use_a { pa[cur] } else { pb[cur] }.expect("path continues");
                visited[nx] = true;
                if pair_deg(nx) == 1 {
                    out[start] = CP_PAIR + nx as u8;
                    out[nx] = CP_PAIR + start as u8;
                    break;
                }
                out[nx] = CP_DEG2;
                cur = nx;
                use_a = !use_a;
            }
        }
        let mut closed = 0i64;
        for start in 0..w {
            if visited[start] || pair_deg(start) != 2 {
                continue;
            }
            // a cycle component: every vertex on it is saturated
            closed += 1;
            let mut cur = start;
            let mut use_a = true;
            loop {
                visited[cur] = true;
                out[cur] = CP_DEG2;
                let nx = if use_a { pa[cur] } else { pb[cur] }.expect("cycle");
                use_a = !use_a;
                if nx == start {
                    break;
                }
                cur = nx;
            }
        }
        Some((out, closed))
    }
    fn join_sig(&self, s: &State) -> Vec<u8> {
        s.iter().map(|&x| (x == CP_OUT) as u8).collect()
    }
}

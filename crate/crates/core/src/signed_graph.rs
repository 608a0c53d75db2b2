//! The signed incidence graph `B_i(K)` and its balance.
//!
//! Balance is decided by propagating a vertex signing `s` along a BFS forest
//! so that every tree edge satisfies `sign(u, v) = s(u) s(v)`. A non-tree edge
//! violating that relation closes a cycle whose sign is `-1`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::orientation::{boundary_sign, Orientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignedEdge {
    /// Index into the `i`-faces.
    pub lower: usize,
    /// Index into the `(i+1)`-faces.
    pub upper: usize,
    pub sign: i8,
}

/// Bipartite signed graph between `S_i(K)` and `S_{i+1}(K)`.
///
/// Graph vertices are numbered with the `i`-faces first (`0..n_lower`) and
/// the `(i+1)`-faces after them.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedIncidenceGraph {
    dim: isize,
    lower: Vec<Face>,
    upper: Vec<Face>,
    edges: Vec<SignedEdge>,
    adjacency: Vec<Vec<usize>>,
    lookup: HashMap<(usize, usize), usize>,
}

/// Certificate accompanying a balance decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceWitness {
    /// Signs per graph vertex; switching at every `-1` makes the covered edges positive.
    Switching(BTreeMap<usize, i8>),
    /// A closed walk of distinct graph vertices whose edge signs multiply to `-1`.
    NegativeCycle(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub witness: BalanceWitness,
}

/// Balance of one connected component of `B_i(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBalance {
    /// Graph vertices of the component, ascending.
    pub nodes: Vec<usize>,
    pub balanced: bool,
    pub witness: BalanceWitness,
}

impl SignedIncidenceGraph {
    pub fn new(k: &Complex, i: isize, orientation: &Orientation) -> Result<Self> {
        if i < -1 || i > k.dim() - 1 {
            return Err(Error::DimensionOutOfRange { dim: i, min: -1, max: k.dim() - 1 });
        }
        let lower = k.faces(i).to_vec();
        let upper = k.faces(i + 1).to_vec();
        let mut edges = Vec::new();
        for (u, top) in upper.iter().enumerate() {
            for sub in top.boundary() {
                let l = k.face_index(&sub).expect("downward closed");
                edges.push(SignedEdge { lower: l, upper: u, sign: boundary_sign(&sub, top, orientation)? });
            }
        }
        Ok(Self::from_parts(i, lower, upper, edges))
    }

    fn from_parts(dim: isize, lower: Vec<Face>, upper: Vec<Face>, mut edges: Vec<SignedEdge>) -> Self {
        edges.sort_by_key(|e| (e.lower, e.upper));
        let n = lower.len() + upper.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut lookup = HashMap::new();
        for (id, e) in edges.iter().enumerate() {
            adjacency[e.lower].push(id);
            adjacency[lower.len() + e.upper].push(id);
            lookup.insert((e.lower, e.upper), id);
        }
        SignedIncidenceGraph { dim, lower, upper, edges, adjacency, lookup }
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn lower_faces(&self) -> &[Face] {
        &self.lower
    }

    pub fn upper_faces(&self) -> &[Face] {
        &self.upper
    }

    pub fn edges(&self) -> &[SignedEdge] {
        &self.edges
    }

    pub fn num_nodes(&self) -> usize {
        self.lower.len() + self.upper.len()
    }

    pub fn is_upper(&self, node: usize) -> bool {
        node >= self.lower.len()
    }

    pub fn node_face(&self, node: usize) -> &Face {
        if self.is_upper(node) {
            &self.upper[node - self.lower.len()]
        } else {
            &self.lower[node]
        }
    }

    /// Graph vertex of a face of dimension `i` or `i + 1`.
    pub fn node_of(&self, face: &Face) -> Option<usize> {
        if face.dim() == self.dim {
            self.lower.binary_search(face).ok()
        } else if face.dim() == self.dim + 1 {
            self.upper.binary_search(face).ok().map(|u| u + self.lower.len())
        } else {
            None
        }
    }

    fn other_end(&self, edge: &SignedEdge, node: usize) -> usize {
        if self.is_upper(node) {
            edge.lower
        } else {
            edge.upper + self.lower.len()
        }
    }

    /// Neighbours of `node` together with the connecting edge sign.
    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.adjacency[node].iter().map(move |&id| {
            let e = &self.edges[id];
            (self.other_end(e, node), e.sign)
        })
    }

    /// Sign of the edge joining two graph vertices, if adjacent.
    pub fn edge_sign(&self, a: usize, b: usize) -> Option<i8> {
        let (l, u) = match (self.is_upper(a), self.is_upper(b)) {
            (false, true) => (a, b - self.lower.len()),
            (true, false) => (b, a - self.lower.len()),
            _ => return None,
        };
        self.lookup.get(&(l, u)).map(|&id| self.edges[id].sign)
    }

    /// Flips the sign of every edge at `node`.
    pub fn switch(&self, node: usize) -> Result<Self> {
        if node >= self.num_nodes() {
            return Err(Error::UnknownGraphVertex(node));
        }
        let mut g = self.clone();
        for &id in &self.adjacency[node] {
            g.edges[id].sign = -g.edges[id].sign;
        }
        Ok(g)
    }

    /// Switches at every vertex mapped to `-1`.
    pub fn apply_switching(&self, signs: &BTreeMap<usize, i8>) -> Result<Self> {
        let mut g = self.clone();
        for (&node, &s) in signs {
            if node >= self.num_nodes() {
                return Err(Error::UnknownGraphVertex(node));
            }
            if s < 0 {
                for &id in &self.adjacency[node] {
                    g.edges[id].sign = -g.edges[id].sign;
                }
            }
        }
        Ok(g)
    }

    /// Product of edge signs around a closed vertex sequence, or `None` if two
    /// consecutive vertices are not adjacent.
    pub fn cycle_sign(&self, cycle: &[usize]) -> Option<i8> {
        let n = cycle.len();
        let mut sign = 1;
        for j in 0..n {
            sign *= self.edge_sign(cycle[j], cycle[(j + 1) % n])?;
        }
        Some(sign)
    }

    /// Connected components as ascending node lists, ordered by smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.num_nodes()];
        let mut out = Vec::new();
        for start in 0..self.num_nodes() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for (v, _) in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Balance of the component containing `start` (which must be its smallest node).
    fn component_balance(&self, start: usize, signs: &mut [i8]) -> ComponentBalance {
        let n = self.num_nodes();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut nodes = vec![start];
        let mut conflict: Option<(usize, usize)> = None;
        signs[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for (v, sign) in self.neighbors(u) {
                if signs[v] == 0 {
                    signs[v] = signs[u] * sign;
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    nodes.push(v);
                    queue.push_back(v);
                } else if conflict.is_none() && signs[u] * signs[v] != sign {
                    conflict = Some((u, v));
                }
            }
        }
        nodes.sort_unstable();
        match conflict {
            None => {
                let map = nodes.iter().map(|&v| (v, signs[v])).collect();
                ComponentBalance { nodes, balanced: true, witness: BalanceWitness::Switching(map) }
            }
            Some((u, v)) => {
                let cycle = tree_cycle(&parent, &depth, u, v);
                ComponentBalance { nodes, balanced: false, witness: BalanceWitness::NegativeCycle(cycle) }
            }
        }
    }

    /// Per-component balance over every connected component.
    pub fn all_component_balances(&self) -> Vec<ComponentBalance> {
        let mut signs = vec![0i8; self.num_nodes()];
        (0..self.num_nodes())
            .filter_map(|start| (signs[start] == 0).then(|| self.component_balance(start, &mut signs)))
            .collect()
    }

    /// Balance of the whole graph with a global witness.
    pub fn is_balanced(&self) -> BalanceReport {
        let comps = self.all_component_balances();
        if let Some(bad) = comps.iter().find(|c| !c.balanced) {
            return BalanceReport { balanced: false, witness: bad.witness.clone() };
        }
        let mut map = BTreeMap::new();
        for c in comps {
            if let BalanceWitness::Switching(m) = c.witness {
                map.extend(m);
            }
        }
        BalanceReport { balanced: true, witness: BalanceWitness::Switching(map) }
    }
}

/// Cycle formed by the tree paths from `u` and `v` to their common ancestor
/// plus the non-tree edge `v - u`.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

impl BalanceWitness {
    /// Re-derives the certificate against `g`.
    pub fn verify(&self, g: &SignedIncidenceGraph) -> bool {
        match self {
            BalanceWitness::Switching(map) => {
                let Ok(switched) = g.apply_switching(map) else { return false };
                switched.edges().iter().all(|e| {
                    let covered = map.contains_key(&e.lower) && map.contains_key(&(e.upper + g.lower.len()));
                    !covered || e.sign == 1
                })
            }
            BalanceWitness::NegativeCycle(cycle) => {
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                sorted.dedup();
                sorted.len() == cycle.len() && cycle.len() >= 2 && g.cycle_sign(cycle) == Some(-1)
            }
        }
    }
}

/// One entry per connected component of `B_i(K)` containing an `(i+1)`-face.
pub fn balanced_components(k: &Complex, i: isize, orientation: &Orientation) -> Result<Vec<ComponentBalance>> {
    let g = SignedIncidenceGraph::new(k, i, orientation)?;
    Ok(g.all_component_balances()
        .into_iter()
        .filter(|c| c.nodes.iter().any(|&n| g.is_upper(n)))
        .collect())
}

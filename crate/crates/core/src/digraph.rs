//! Flip digraphs, their sources and sinks, reachability and maximal chains.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::enumerate::{enumerate, Budget, Class};
use crate::error::{Error, Result};
use crate::flips::{arrows, Direction, EdgeKind, Flip, Generator};
use crate::inversion::Cubillage;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub kind: EdgeKind,
}

/// Nodes in canonical (rank, lexicographic) order; node ids are positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipDigraph {
    n: usize,
    d: usize,
    generator: Generator,
    nodes: Vec<Cubillage>,
    edges: Vec<Edge>,
    index: HashMap<Cubillage, usize>,
    out_adj: Vec<Vec<usize>>,
    in_deg: Vec<usize>,
}

/// Builds the digraph of raising flips on `nodes`, which must be closed
/// under the generator.
pub fn build_digraph(nodes: Vec<Cubillage>, generator: Generator) -> Result<FlipDigraph> {
    let mut nodes = nodes;
    nodes.sort();
    nodes.dedup();
    let (n, d) = match nodes.first() {
        Some(q) => (q.n(), q.d()),
        None => return Err(Error::invalid("a digraph needs at least one node")),
    };
    if nodes.iter().any(|q| q.n() != n || q.d() != d) {
        return Err(Error::invalid("all nodes must share n and d"));
    }
    let index: HashMap<Cubillage, usize> = nodes.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
    let per_node: Vec<Result<Vec<Edge>>> = nodes
        .par_iter()
        .enumerate()
        .map(|(src, q)| {
            arrows(q, generator, Direction::Raise)?
                .into_iter()
                .map(|(flip, target): (Flip, Cubillage)| {
                    let dst = *index.get(&target).ok_or(Error::NotClosed { from: src })?;
                    Ok(Edge { src, dst, kind: flip.kind() })
                })
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for batch in per_node {
        edges.extend(batch?);
    }
    edges.sort();
    Ok(FlipDigraph::from_parts(n, d, generator, nodes, edges, index))
}

/// Digraph on a whole class: type-A flips on all cubillages, or
/// fragment-checked symmetric flips on the symmetric ones.
pub fn class_digraph(n: usize, d: usize, class: Class, budget: Budget) -> Result<FlipDigraph> {
    let generator = match class {
        Class::All => Generator::TypeA,
        Class::Symmetric => Generator::SYMMETRIC,
        Class::Skew => return Err(Error::precondition("skew-symmetric cubillages carry no flip structure")),
    };
    build_digraph(enumerate(n, d, class, budget)?, generator)
}

impl FlipDigraph {
    fn from_parts(
        n: usize,
        d: usize,
        generator: Generator,
        nodes: Vec<Cubillage>,
        edges: Vec<Edge>,
        index: HashMap<Cubillage, usize>,
    ) -> FlipDigraph {
        let mut out_adj = vec![Vec::new(); nodes.len()];
        let mut in_deg = vec![0; nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            out_adj[e.src].push(i);
            in_deg[e.dst] += 1;
        }
        FlipDigraph { n, d, generator, nodes, edges, index, out_adj, in_deg }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn generator(&self) -> Generator {
        self.generator
    }

    pub fn nodes(&self) -> &[Cubillage] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: usize) -> &Cubillage {
        &self.nodes[id]
    }

    pub fn id_of(&self, q: &Cubillage) -> Option<usize> {
        self.index.get(q).copied()
    }

    pub fn out_edges(&self, id: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.out_adj[id].iter().map(move |&e| &self.edges[e])
    }

    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.out_edges(src).any(|e| e.dst == dst)
    }

    pub fn count_kind(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// Zero in-degree nodes.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.in_deg[i] == 0).collect()
    }

    /// Zero out-degree nodes.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.out_adj[i].is_empty()).collect()
    }

    /// Whether a directed path leads from `u` to `v` (reflexive).
    pub fn reachable(&self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            for e in self.out_edges(x) {
                if e.dst == v {
                    return true;
                }
                if !seen[e.dst] {
                    seen[e.dst] = true;
                    queue.push_back(e.dst);
                }
            }
        }
        false
    }

    /// Every edge raises the rank by its kind's delta.
    pub fn is_ranked(&self) -> bool {
        self.edges.iter().all(|e| self.nodes[e.dst].rank() == self.nodes[e.src].rank() + e.kind.delta(self.d))
    }

    /// Source-to-sink paths in lexicographic order of edge ids, at most
    /// `limit` of them.
    pub fn maximal_chains(&self, limit: usize) -> ChainSet {
        let mut chains = Vec::new();
        let mut truncated = false;
        let mut path: Vec<usize> = Vec::new();
        for s in self.sources() {
            if self.out_adj[s].is_empty() {
                if chains.len() == limit {
                    truncated = true;
                    break;
                }
                chains.push(Chain { start: s, edges: Vec::new() });
                continue;
            }
            if !self.walk(s, s, &mut path, &mut chains, limit) {
                truncated = true;
                break;
            }
        }
        ChainSet { chains, truncated }
    }

    fn walk(&self, start: usize, at: usize, path: &mut Vec<usize>, out: &mut Vec<Chain>, limit: usize) -> bool {
        if self.out_adj[at].is_empty() {
            if out.len() == limit {
                return false;
            }
            out.push(Chain { start, edges: path.clone() });
            return true;
        }
        for &e in &self.out_adj[at] {
            path.push(e);
            let ok = self.walk(start, self.edges[e].dst, path, out, limit);
            path.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// Nodes visited by a chain, in order.
    pub fn chain_nodes(&self, chain: &Chain) -> Vec<usize> {
        std::iter::once(chain.start).chain(chain.edges.iter().map(|&e| self.edges[e].dst)).collect()
    }

    /// Weakly connected components of the subgraph induced by `members`
    /// using only the given edges; returns whether it is connected.
    pub fn induced_connected(&self, members: &[usize], edge_ok: impl Fn(&Edge) -> bool) -> bool {
        if members.len() <= 1 {
            return true;
        }
        let inside: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut adj = vec![Vec::new(); members.len()];
        for e in &self.edges {
            if let (Some(&a), Some(&b)) = (inside.get(&e.src), inside.get(&e.dst)) {
                if edge_ok(e) {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        let mut seen = vec![false; members.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A source-to-sink path, given by its first node and edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub start: usize,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSet {
    pub chains: Vec<Chain>,
    pub truncated: bool,
}

pub const DEFAULT_CHAIN_LIMIT: usize = 1_000_000;

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize, d: usize) -> FlipDigraph {
        build_digraph(enumerate(n, d, Class::Symmetric, Budget::default()).unwrap(), Generator::SYMMETRIC).unwrap()
    }

    #[test]
    fn weak_order_on_three_letters() {
        let g = build_digraph(enumerate(3, 1, Class::All, Budget::default()).unwrap(), Generator::TypeA).unwrap();
        assert_eq!(g.nodes().len(), 6);
        assert_eq!(g.edges().len(), 6);
        assert_eq!(g.maximal_chains(10).chains.len(), 2);
        assert!(g.is_ranked());
    }

    #[test]
    fn sq_4_2_is_one_barrel() {
        let g = sym(4, 2);
        assert_eq!(g.nodes().len(), 2);
        assert_eq!(g.edges(), &[Edge { src: 0, dst: 1, kind: EdgeKind::Barrel }]);
        assert_eq!(g.maximal_chains(10).chains.len(), 1);
    }

    #[test]
    fn sq_4_1_chains_and_reachability() {
        let g = sym(4, 1);
        assert_eq!(g.maximal_chains(100).chains.len(), 2);
        assert_eq!(g.sources(), vec![0]);
        assert_eq!(g.sinks(), vec![g.nodes().len() - 1]);
        assert!(g.reachable(3, 3));
        assert!(g.reachable(0, 7));
        assert!(!g.reachable(7, 0));
    }

    #[test]
    fn chain_limit_truncates() {
        let g = sym(4, 1);
        let set = g.maximal_chains(1);
        assert_eq!(set.chains.len(), 1);
        assert!(set.truncated);
    }

    #[test]
    fn unclosed_node_sets_are_rejected() {
        let st = Cubillage::standard(5, 2).unwrap();
        let err = build_digraph(vec![st], Generator::TypeA).unwrap_err();
        assert!(matches!(err, Error::NotClosed { from: 0 }));
        assert!(build_digraph(Vec::new(), Generator::TypeA).is_err());
    }
}

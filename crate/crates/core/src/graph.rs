//! Reachability and cycle search on explicit edge lists.
//!
//! Cycle queries ask for a cycle using only `allowed` edges that contains,
//! for every requirement, at least one edge satisfying it. Such a cycle
//! exists iff one strongly connected component of the allowed subgraph has
//! an internal edge for each requirement, so the search is exact.

use std::collections::VecDeque;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// A directed multigraph over nodes `0..n`; edges are identified by position.
pub struct EdgeGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

/// A stem from a start node and a cycle, both as edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub stem: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl EdgeGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        for (id, &(u, _)) in edges.iter().enumerate() {
            out[u].push(id);
        }
        EdgeGraph { n, edges, out }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn reachable(&self, seeds: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &e in &self.out[u] {
                let v = self.edges[e].1;
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Shortest path (in edges) from any seed to `target`, using edges
    /// accepted by `allowed`.
    pub fn path(&self, seeds: &[usize], target: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            if u == target {
                let mut path = Vec::new();
                let mut cur = u;
                while let Some(e) = parent[cur] {
                    path.push(e);
                    cur = self.edges[e].0;
                }
                path.reverse();
                return Some(path);
            }
            for &e in &self.out[u] {
                if !allowed(e) {
                    continue;
                }
                let v = self.edges[e].1;
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(e);
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Finds a cycle reachable from `seeds` that uses only allowed edges and
    /// meets every requirement. Returns the stem (over arbitrary edges) and
    /// the cycle.
    pub fn find_cycle(
        &self,
        seeds: &[usize],
        allowed: impl Fn(usize) -> bool,
        requirements: &[&dyn Fn(usize) -> bool],
    ) -> Option<CycleWitness> {
        let reach = self.reachable(seeds);
        let comp = self.components(&reach, &allowed);

        // For each component, the first internal edge meeting each requirement.
        let mut found: Vec<Vec<Option<usize>>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if !reach[u] || !allowed(id) || comp[u] != comp[v] || comp[u] == usize::MAX {
                continue;
            }
            let c = comp[u];
            if slot[c] == usize::MAX {
                slot[c] = found.len();
                found.push(vec![None; requirements.len().max(1)]);
            }
            let hits = &mut found[slot[c]];
            if requirements.is_empty() {
                hits[0].get_or_insert(id);
            }
            for (r, req) in requirements.iter().enumerate() {
                if hits[r].is_none() && req(id) {
                    hits[r] = Some(id);
                }
            }
        }
        let hits: Vec<usize> = found.into_iter().find(|h| h.iter().all(Option::is_some))?.into_iter().flatten().collect();

        // Walk through the chosen edges in order, closing the loop at the end.
        let c = comp[self.edges[hits[0]].0];
        let inside = |e: usize| allowed(e) && comp[self.edges[e].0] == c && comp[self.edges[e].1] == c;
        let start = self.edges[hits[0]].0;
        let mut cycle = Vec::new();
        let mut at = start;
        for &h in &hits {
            let (u, v) = self.edges[h];
            cycle.extend(self.path(&[at], u, inside).expect("same component"));
            cycle.push(h);
            at = v;
        }
        cycle.extend(self.path(&[at], start, inside).expect("same component"));
        let stem = self.path(seeds, start, |_| true).expect("component is reachable");
        Some(CycleWitness { stem, cycle })
    }

    /// Nodes lying in a strongly connected component of the allowed
    /// subgraph that has an internal edge meeting `requirement`.
    pub fn nodes_on_cycles(&self, allowed: impl Fn(usize) -> bool, requirement: impl Fn(usize) -> bool) -> Vec<bool> {
        let comp = self.components(&vec![true; self.n], &allowed);
        let mut good = vec![false; self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if allowed(id) && comp[u] == comp[v] && requirement(id) {
                good[comp[u]] = true;
            }
        }
        (0..self.n).map(|x| good[comp[x]]).collect()
    }

    /// Nodes from which some node in `targets` is reachable.
    pub fn can_reach(&self, targets: &[bool]) -> Vec<bool> {
        let reversed = EdgeGraph::new(self.n, self.edges.iter().map(|&(u, v)| (v, u)).collect());
        let seeds: Vec<usize> = (0..self.n).filter(|&x| targets[x]).collect();
        reversed.reachable(&seeds)
    }

    /// SCC ids of the allowed subgraph on `nodes`; `usize::MAX` elsewhere.
    fn components(&self, nodes: &[bool], allowed: &impl Fn(usize) -> bool) -> Vec<usize> {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.n, self.edges.len());
        for _ in 0..self.n {
            g.add_node(());
        }
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if nodes[u] && nodes[v] && allowed(id) {
                g.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
            }
        }
        let mut comp = vec![usize::MAX; self.n];
        for (c, scc) in tarjan_scc(&g).into_iter().enumerate() {
            for node in scc {
                if nodes[node.index()] {
                    comp[node.index()] = c;
                }
            }
        }
        comp
    }
}

/// Whether some cycle reachable from `seeds` has an even maximum priority.
/// `priority` gives each edge's priority.
pub fn even_cycle(
    g: &EdgeGraph,
    seeds: &[usize],
    priority: impl Fn(usize) -> u32,
    max_priority: u32,
) -> Option<CycleWitness> {
    (0..=max_priority).rev().filter(|d| d % 2 == 0).find_map(|d| {
        let top = |e: usize| priority(e) == d;
        g.find_cycle(seeds, |e| priority(e) <= d, &[&top])
    })
}

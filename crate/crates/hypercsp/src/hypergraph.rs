//! The hypergraph data model.
//!
//! Vertices are interned string identifiers mapped to dense indices at
//! construction; hyperedges are [`VertexSet`]s over those indices. Every
//! hypergraph satisfies three invariants: edges are nonempty, no vertex is
//! isolated, and there are no duplicate edges (duplicates are merged).

use std::collections::HashMap;

use crate::bitset::VertexSet;
use crate::error::{invalid, unknown_vertex, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<VertexSet>,
    /// vertex index -> indices of edges containing it
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Build from named edges. When `vertices` is `None` the vertex set is
    /// inferred from the edges in first-occurrence order; when given, it
    /// fixes the vertex order and every vertex must appear in some edge.
    pub fn from_named_edges(
        vertices: Option<Vec<String>>,
        edges: Vec<Vec<String>>,
    ) -> Result<Hypergraph> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let explicit = vertices.is_some();
        if let Some(vs) = vertices {
            for v in vs {
                if index.contains_key(&v) {
                    return invalid(format!("duplicate vertex '{v}'"));
                }
                index.insert(v.clone(), names.len());
                names.push(v);
            }
        }
        let mut edge_sets: Vec<VertexSet> = Vec::new();
        for edge in edges {
            if edge.is_empty() {
                return invalid("hyperedges must be nonempty");
            }
            let mut set = VertexSet::new();
            for v in edge {
                let i = match index.get(&v) {
                    Some(&i) => i,
                    None if explicit => {
                        return unknown_vertex(format!("edge vertex '{v}' is not declared"))
                    }
                    None => {
                        index.insert(v.clone(), names.len());
                        names.push(v);
                        names.len() - 1
                    }
                };
                set.insert(i);
            }
            if !edge_sets.contains(&set) {
                edge_sets.push(set);
            }
        }
        Self::from_indexed(names, edge_sets)
    }

    /// Build from dense data. Edges are deduplicated preserving first
    /// occurrence; all invariants are checked.
    pub fn from_indexed(names: Vec<String>, edges: Vec<VertexSet>) -> Result<Hypergraph> {
        if names.is_empty() {
            return invalid("hypergraph must have at least one vertex");
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return invalid(format!("duplicate vertex '{n}'"));
            }
        }
        let mut edge_sets: Vec<VertexSet> = Vec::new();
        for e in edges {
            if e.is_empty() {
                return invalid("hyperedges must be nonempty");
            }
            if e.iter().any(|v| v >= names.len()) {
                return unknown_vertex(format!("edge {e:?} uses an out-of-range vertex index"));
            }
            if !edge_sets.contains(&e) {
                edge_sets.push(e);
            }
        }
        let mut incidence = vec![Vec::new(); names.len()];
        for (ei, e) in edge_sets.iter().enumerate() {
            for v in e.iter() {
                incidence[v].push(ei);
            }
        }
        if let Some(v) = incidence.iter().position(|es| es.is_empty()) {
            return invalid(format!("vertex '{}' is isolated", names[v]));
        }
        Ok(Hypergraph {
            names,
            index,
            edges: edge_sets,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &VertexSet {
        &self.edges[i]
    }

    /// Indices of the edges containing vertex `v`.
    pub fn edges_containing(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Look up an edge by its vertex set.
    pub fn edge_index(&self, set: &VertexSet) -> Option<usize> {
        self.edges.iter().position(|e| e == set)
    }

    pub fn full_vertex_set(&self) -> VertexSet {
        VertexSet::full(self.names.len())
    }

    /// Translate a set of vertex names into a `VertexSet`.
    pub fn vertex_set(&self, names: &[impl AsRef<str>]) -> Result<VertexSet> {
        let mut s = VertexSet::new();
        for n in names {
            match self.vertex_index(n.as_ref()) {
                Some(i) => s.insert(i),
                None => return unknown_vertex(format!("'{}'", n.as_ref())),
            }
        }
        Ok(s)
    }

    pub(crate) fn check_vertex_set(&self, s: &VertexSet) -> Result<()> {
        if let Some(v) = s.iter().find(|&v| v >= self.names.len()) {
            return unknown_vertex(format!("vertex index {v} is out of range"));
        }
        Ok(())
    }

    /// The subhypergraph induced by `x`: vertex set `x`, edges
    /// `{ e ∩ x : e ∈ E, e ∩ x ≠ ∅ }` with duplicate intersections merged.
    /// Vertex names are preserved; indices are renumbered in ascending order.
    pub fn induced_subhypergraph(&self, x: &VertexSet) -> Result<Hypergraph> {
        if x.is_empty() {
            return invalid("induced subhypergraph of the empty vertex set");
        }
        self.check_vertex_set(x)?;
        let kept: Vec<usize> = x.iter().collect();
        let mut renumber = HashMap::new();
        for (new, &old) in kept.iter().enumerate() {
            renumber.insert(old, new);
        }
        let names: Vec<String> = kept.iter().map(|&v| self.names[v].clone()).collect();
        let mut edges = Vec::new();
        for e in &self.edges {
            let inter = e.intersection(x);
            if inter.is_empty() {
                continue;
            }
            let mapped: VertexSet = inter.iter().map(|v| renumber[&v]).collect();
            if !edges.contains(&mapped) {
                edges.push(mapped);
            }
        }
        Hypergraph::from_indexed(names, edges)
    }

    /// The primal graph: same vertices, an edge `{v,w}` whenever `v ≠ w`
    /// co-occur in some hyperedge. Vertices only covered by singleton
    /// hyperedges keep a singleton edge so no vertex becomes isolated.
    pub fn primal_graph(&self) -> Hypergraph {
        let n = self.names.len();
        let mut edges: Vec<VertexSet> = Vec::new();
        let mut paired = vec![false; n];
        for v in 0..n {
            for w in v + 1..n {
                if self.incidence[v]
                    .iter()
                    .any(|&ei| self.edges[ei].contains(w))
                {
                    edges.push([v, w].into_iter().collect());
                    paired[v] = true;
                    paired[w] = true;
                }
            }
        }
        for (v, &has_pair) in paired.iter().enumerate() {
            if !has_pair {
                edges.push(VertexSet::singleton(v));
            }
        }
        Hypergraph::from_indexed(self.names.clone(), edges)
            .expect("primal graph construction preserves the invariants")
    }

    /// Adjacency of the primal graph as per-vertex neighbor sets.
    pub(crate) fn primal_adjacency(&self) -> Vec<VertexSet> {
        let n = self.names.len();
        let mut adj = vec![VertexSet::new(); n];
        for e in &self.edges {
            for v in e.iter() {
                adj[v].union_with(e);
            }
        }
        for (v, a) in adj.iter_mut().enumerate() {
            a.remove(v);
        }
        adj
    }

    /// Connected components of `H \ removed`, each reported as a vertex set.
    /// Components are disjoint, nonempty, partition `V \ removed`, and are
    /// listed in ascending order of their smallest vertex. Indices in
    /// `removed` outside `V` are ignored.
    pub fn components(&self, removed: &VertexSet) -> Vec<VertexSet> {
        let n = self.names.len();
        let mut seen = vec![false; n];
        for v in removed.iter() {
            if v < n {
                seen[v] = true;
            }
        }
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &ei in &self.incidence[v] {
                    for w in self.edges[ei].iter() {
                        if !seen[w] {
                            seen[w] = true;
                            stack.push(w);
                        }
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `from` in `H \ blocked`, plus `from` itself.
    /// If `from` is blocked the result is `{from}`.
    pub fn reachable(&self, blocked: &VertexSet, from: usize) -> Result<VertexSet> {
        if from >= self.names.len() {
            return unknown_vertex(format!("vertex index {from} is out of range"));
        }
        let mut out = VertexSet::singleton(from);
        if blocked.contains(from) {
            return Ok(out);
        }
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            for &ei in &self.incidence[v] {
                for w in self.edges[ei].iter() {
                    if !blocked.contains(w) && !out.contains(w) {
                        out.insert(w);
                        stack.push(w);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_connected(&self) -> bool {
        self.components(&VertexSet::new()).len() == 1
    }

    /// Render an edge as its sorted list of vertex names.
    pub fn edge_names(&self, e: &VertexSet) -> Vec<String> {
        e.iter().map(|v| self.names[v].clone()).collect()
    }
}

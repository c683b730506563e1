//! JSON wire formats.
//!
//! Hypergraphs: `{ "vertices": [..], "edges": [[..], ..] }` (the vertex list
//! is optional on input and inferred from the edges).
//!
//! Instances: `{ "variables": [..], "domain": [..], "constraints":
//! [ { "scope": [..], "tuples": [[..], ..] }, .. ] }`.
//!
//! Decompositions: `{ "nodes": [ { "id", "parent": id|null, "bag": [..],
//! "guard": [ { "edge": [..], "weight": "p/q" }, .. ] }, .. ] }`. Weights are
//! exact fraction strings, never floats. A decomposition whose nodes all
//! omit the guard is read as a plain tree decomposition.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::csp::CspInstance;
use crate::decomp::{
    Decomposition, FractionalHypertreeDecomposition, GeneralizedHypertreeDecomposition,
    TreeDecomposition,
};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::weights::{format_rational, parse_rational, FractionalWeighting, Rational};

#[derive(Serialize, Deserialize)]
pub struct HypergraphJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub edges: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
pub struct ConstraintJson {
    pub scope: Vec<String>,
    pub tuples: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
pub struct InstanceJson {
    pub variables: Vec<String>,
    pub domain: Vec<String>,
    pub constraints: Vec<ConstraintJson>,
}

#[derive(Serialize, Deserialize)]
pub struct GuardEntryJson {
    pub edge: Vec<String>,
    pub weight: String,
}

#[derive(Serialize, Deserialize)]
pub struct NodeJson {
    pub id: String,
    pub parent: Option<String>,
    pub bag: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub guard: Vec<GuardEntryJson>,
}

#[derive(Serialize, Deserialize)]
pub struct DecompositionJson {
    pub nodes: Vec<NodeJson>,
}

fn bad_json(e: serde_json::Error) -> Error {
    Error::InvalidArgument(format!("malformed JSON: {e}"))
}

pub fn hypergraph_to_json(h: &Hypergraph) -> HypergraphJson {
    HypergraphJson {
        vertices: Some(h.vertex_names().to_vec()),
        edges: h.edges().iter().map(|e| h.edge_names(e)).collect(),
    }
}

pub fn hypergraph_from_json(j: HypergraphJson) -> Result<Hypergraph> {
    Hypergraph::from_named_edges(j.vertices, j.edges)
}

pub fn parse_hypergraph(s: &str) -> Result<Hypergraph> {
    hypergraph_from_json(serde_json::from_str(s).map_err(bad_json)?)
}

pub fn hypergraph_to_string(h: &Hypergraph) -> String {
    serde_json::to_string_pretty(&hypergraph_to_json(h)).expect("serialization cannot fail")
}

pub fn instance_to_json(i: &CspInstance) -> InstanceJson {
    InstanceJson {
        variables: i.variables().to_vec(),
        domain: i.domain().to_vec(),
        constraints: i
            .constraints()
            .iter()
            .map(|c| ConstraintJson {
                scope: c
                    .scope()
                    .iter()
                    .map(|&v| i.variables()[v].clone())
                    .collect(),
                tuples: c
                    .relation()
                    .tuples()
                    .map(|t| t.iter().map(|&d| i.domain()[d as usize].clone()).collect())
                    .collect(),
            })
            .collect(),
    }
}

pub fn instance_from_json(j: InstanceJson) -> Result<CspInstance> {
    CspInstance::from_named(
        j.variables,
        j.domain,
        j.constraints
            .into_iter()
            .map(|c| (c.scope, c.tuples))
            .collect(),
    )
}

pub fn parse_instance(s: &str) -> Result<CspInstance> {
    instance_from_json(serde_json::from_str(s).map_err(bad_json)?)
}

pub fn instance_to_string(i: &CspInstance) -> String {
    serde_json::to_string_pretty(&instance_to_json(i)).expect("serialization cannot fail")
}

fn tree_to_nodes(h: &Hypergraph, td: &TreeDecomposition) -> Vec<NodeJson> {
    (0..td.node_count())
        .map(|t| NodeJson {
            id: td.id(t).to_string(),
            parent: td.parent(t).map(|p| td.id(p).to_string()),
            bag: td
                .bag(t)
                .iter()
                .map(|v| h.vertex_name(v).to_string())
                .collect(),
            guard: Vec::new(),
        })
        .collect()
}

pub fn decomposition_to_json(h: &Hypergraph, d: &Decomposition) -> DecompositionJson {
    let mut nodes = tree_to_nodes(h, d.base());
    match d {
        Decomposition::Tree(_) => {}
        Decomposition::Generalized(g) => {
            for (t, guard) in g.guards.iter().enumerate() {
                nodes[t].guard = guard
                    .iter()
                    .map(|&e| GuardEntryJson {
                        edge: h.edge_names(h.edge(e)),
                        weight: "1/1".to_string(),
                    })
                    .collect();
            }
        }
        Decomposition::Fractional(f) => {
            for (t, guard) in f.guards.iter().enumerate() {
                nodes[t].guard = guard
                    .weights()
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| !num_traits::Zero::is_zero(*w))
                    .map(|(e, w)| GuardEntryJson {
                        edge: h.edge_names(h.edge(e)),
                        weight: format_rational(w),
                    })
                    .collect();
            }
        }
    }
    DecompositionJson { nodes }
}

pub fn decomposition_to_string(h: &Hypergraph, d: &Decomposition) -> String {
    serde_json::to_string_pretty(&decomposition_to_json(h, d)).expect("serialization cannot fail")
}

/// Read a decomposition. Nodes with guard entries make it fractional;
/// when every node omits the guard it is a plain tree decomposition.
pub fn decomposition_from_json(h: &Hypergraph, j: DecompositionJson) -> Result<Decomposition> {
    if j.nodes.is_empty() {
        return invalid("a decomposition needs at least one node");
    }
    let ids: Vec<String> = j.nodes.iter().map(|n| n.id.clone()).collect();
    let index: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    if index.len() != ids.len() {
        return invalid("duplicate node ids");
    }
    let parent = j
        .nodes
        .iter()
        .map(|n| match &n.parent {
            None => Ok(None),
            Some(p) => index
                .get(p.as_str())
                .copied()
                .map(Some)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown parent node '{p}'"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let bags = j
        .nodes
        .iter()
        .map(|n| h.vertex_set(&n.bag))
        .collect::<Result<Vec<VertexSet>>>()?;
    let base = TreeDecomposition::from_named_parts(ids, bags, parent)?;

    if j.nodes.iter().all(|n| n.guard.is_empty()) {
        return Ok(Decomposition::Tree(base));
    }
    let mut guards = Vec::with_capacity(j.nodes.len());
    for n in &j.nodes {
        let mut entries: Vec<(usize, Rational)> = Vec::new();
        for g in &n.guard {
            let set = h.vertex_set(&g.edge)?;
            let Some(e) = h.edge_index(&set) else {
                return invalid(format!(
                    "guard edge {{{}}} is not an edge of the hypergraph",
                    g.edge.join(",")
                ));
            };
            if entries.iter().any(|(e2, _)| *e2 == e) {
                return invalid("duplicate guard edge");
            }
            entries.push((e, parse_rational(&g.weight)?));
        }
        guards.push(FractionalWeighting::from_edge_weights(h, entries)?);
    }
    Ok(Decomposition::Fractional(
        FractionalHypertreeDecomposition { base, guards },
    ))
}

pub fn parse_decomposition(h: &Hypergraph, s: &str) -> Result<Decomposition> {
    decomposition_from_json(h, serde_json::from_str(s).map_err(bad_json)?)
}

/// View a generalized decomposition as a fractional one (unit weights).
pub fn fractional_from_generalized(
    h: &Hypergraph,
    g: &GeneralizedHypertreeDecomposition,
) -> FractionalHypertreeDecomposition {
    let guards = g
        .guards
        .iter()
        .map(|guard| {
            FractionalWeighting::from_edge_weights(
                h,
                guard.iter().map(|&e| (e, crate::weights::rat_int(1))),
            )
            .expect("guards reference host edges")
        })
        .collect();
    FractionalHypertreeDecomposition {
        base: g.base.clone(),
        guards,
    }
}

//! Fractional edge weightings and the exact covering/packing programs.
//!
//! All quantities are exact rationals. The two linear programs here — the
//! minimum fractional edge cover of a target vertex set and the maximum
//! fractional independent set — are a primal/dual pair, so their optimal
//! values agree exactly; one simplex run yields both an optimal packing and
//! an optimal cover.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bitset::VertexSet;
use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;
use crate::simplex;

/// Exact rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `"p/q"` rendering (always with the denominator, e.g. `"2/1"`).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| crate::error::Error::InvalidArgument(format!("bad integer '{t}'")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() {
                return invalid(format!("zero denominator in '{s}'"));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// A nonnegative rational weight per hyperedge of a host hypergraph,
/// indexed like `host.edges()`. Edges not mentioned weigh zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalWeighting {
    weights: Vec<Rational>,
}

impl FractionalWeighting {
    pub fn zero(host: &Hypergraph) -> Self {
        FractionalWeighting {
            weights: vec![Rational::zero(); host.edge_count()],
        }
    }

    pub fn from_edge_weights(
        host: &Hypergraph,
        entries: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Result<Self> {
        let mut w = Self::zero(host);
        for (e, r) in entries {
            if e >= host.edge_count() {
                return invalid(format!("edge index {e} is out of range"));
            }
            if r.is_negative() {
                return invalid("edge weights must be nonnegative");
            }
            w.weights[e] = &w.weights[e] + &r;
        }
        Ok(w)
    }

    pub fn edge_weight(&self, e: usize) -> &Rational {
        &self.weights[e]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    /// Total weight `Σ_e γ(e)`.
    pub fn weight(&self) -> Rational {
        self.weights.iter().sum()
    }

    /// Pointwise sum with another weighting on the same host.
    pub fn add(&self, other: &FractionalWeighting) -> FractionalWeighting {
        assert_eq!(self.weights.len(), other.weights.len());
        FractionalWeighting {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn check_host(&self, host: &Hypergraph) -> Result<()> {
        if self.weights.len() != host.edge_count() {
            return invalid("weighting does not match the hypergraph's edge list");
        }
        Ok(())
    }

    /// `B(γ)`: the vertices whose incident weight sums to at least 1.
    pub fn blocked_set(&self, host: &Hypergraph) -> VertexSet {
        assert_eq!(self.weights.len(), host.edge_count());
        let one = Rational::one();
        (0..host.vertex_count())
            .filter(|&v| {
                let s: Rational = host
                    .edges_containing(v)
                    .iter()
                    .map(|&e| self.weights[e].clone())
                    .sum();
                s >= one
            })
            .collect()
    }

    /// `weight(γ|W)`: total weight of the edges that intersect `w`.
    pub fn restricted_weight(&self, host: &Hypergraph, w: &VertexSet) -> Rational {
        assert_eq!(self.weights.len(), host.edge_count());
        host.edges()
            .iter()
            .zip(&self.weights)
            .filter(|(e, _)| e.intersects(w))
            .map(|(_, r)| r.clone())
            .sum()
    }
}

/// Minimum-weight fractional edge cover of `target`:
/// `min Σ_e x(e)` subject to `Σ_{e ∋ v} x(e) >= 1` for every `v ∈ target`,
/// `x >= 0`, solved exactly. With `target = V(h)` the value is `ρ*(h)`.
///
/// Solved through its dual packing program; the returned cover is the dual
/// witness and is always feasible (`blocked_set(cover) ⊇ target`).
pub fn fractional_edge_cover(
    h: &Hypergraph,
    target: &VertexSet,
) -> Result<(Rational, FractionalWeighting)> {
    if target.is_empty() {
        return invalid("fractional edge cover of an empty target");
    }
    h.check_vertex_set(target)?;
    // a target inside a single edge is covered optimally by unit weight on it
    if let Some(e) = (0..h.edge_count()).find(|&e| target.is_subset(h.edge(e))) {
        let cover = FractionalWeighting::from_edge_weights(h, [(e, Rational::one())])?;
        return Ok((Rational::one(), cover));
    }
    let cols: Vec<usize> = target.iter().collect();
    let col_of: HashMap<usize, usize> = cols.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    let mut row_edges = Vec::new();
    let mut rows = Vec::new();
    for (ei, e) in h.edges().iter().enumerate() {
        let inter = e.intersection(target);
        if inter.is_empty() {
            continue;
        }
        let mut coeffs = vec![Rational::zero(); cols.len()];
        for v in inter.iter() {
            coeffs[col_of[&v]] = Rational::one();
        }
        rows.push((coeffs, Rational::one()));
        row_edges.push(ei);
    }
    let c = vec![Rational::one(); cols.len()];
    let sol = simplex::maximize(&c, &rows);
    let cover = FractionalWeighting::from_edge_weights(h, row_edges.into_iter().zip(sol.dual))?;
    let blocked = cover.blocked_set(h);
    assert!(
        target.is_subset(&blocked),
        "simplex dual is not a feasible cover"
    );
    Ok((sol.value, cover))
}

/// Maximum fractional independent set: `y : V -> [0,1]` maximizing `Σ y(v)`
/// subject to `Σ_{v ∈ e} y(v) <= 1` per edge. By LP duality the value equals
/// `fractional_edge_cover(h, V(h))`.
pub fn fractional_independent_set(h: &Hypergraph) -> (Rational, Vec<Rational>) {
    let n = h.vertex_count();
    let rows: Vec<(Vec<Rational>, Rational)> = h
        .edges()
        .iter()
        .map(|e| {
            let mut coeffs = vec![Rational::zero(); n];
            for v in e.iter() {
                coeffs[v] = Rational::one();
            }
            (coeffs, Rational::one())
        })
        .collect();
    let c = vec![Rational::one(); n];
    let sol = simplex::maximize(&c, &rows);
    (sol.value, sol.primal)
}

/// Minimum number of edges whose union covers `target`, with a witness.
/// Exact branch-and-bound set cover.
pub fn integral_edge_cover(h: &Hypergraph, target: &VertexSet) -> Result<(usize, Vec<usize>)> {
    if target.is_empty() {
        return invalid("integral edge cover of an empty target");
    }
    h.check_vertex_set(target)?;

    // greedy cover for the initial upper bound
    let mut best: Vec<usize> = {
        let mut chosen = Vec::new();
        let mut left = target.clone();
        while !left.is_empty() {
            let e = (0..h.edge_count())
                .max_by_key(|&e| h.edge(e).intersection(&left).len())
                .expect("no isolated vertices, so every vertex is coverable");
            chosen.push(e);
            left = left.difference(h.edge(e));
        }
        chosen
    };

    fn search(h: &Hypergraph, left: &VertexSet, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if left.is_empty() {
            if chosen.len() < best.len() {
                *best = chosen.clone();
            }
            return;
        }
        if chosen.len() + 1 >= best.len() {
            return;
        }
        let v = left.min().unwrap();
        for &e in h.edges_containing(v) {
            chosen.push(e);
            let next = left.difference(h.edge(e));
            search(h, &next, chosen, best);
            chosen.pop();
        }
    }
    let mut chosen = Vec::new();
    search(h, target, &mut chosen, &mut best);
    best.sort_unstable();
    Ok((best.len(), best))
}

/// Check that `sub` equals the subhypergraph of `host` induced by its own
/// vertex names.
pub(crate) fn is_induced_subhypergraph(host: &Hypergraph, sub: &Hypergraph) -> bool {
    let Some(in_host) = sub_vertices_in_host(host, sub) else {
        return false;
    };
    let mut expected: Vec<VertexSet> = Vec::new();
    for e in host.edges() {
        let inter = e.intersection(&in_host);
        if !inter.is_empty() && !expected.contains(&inter) {
            expected.push(inter);
        }
    }
    let mut actual: Vec<VertexSet> = Vec::new();
    for e in sub.edges() {
        let translated: VertexSet = e
            .iter()
            .map(|v| host.vertex_index(sub.vertex_name(v)).unwrap())
            .collect();
        if actual.contains(&translated) {
            return false;
        }
        actual.push(translated);
    }
    expected.sort();
    actual.sort();
    expected == actual
}

fn sub_vertices_in_host(host: &Hypergraph, sub: &Hypergraph) -> Option<VertexSet> {
    let mut s = VertexSet::new();
    for name in sub.vertex_names() {
        s.insert(host.vertex_index(name)?);
    }
    Some(s)
}

/// Restriction of `gamma` (on `host`) to the induced subhypergraph `sub`:
/// `γ'(e') = Σ { γ(e) : e ∩ V(sub) = e' }`. Preserves the blocked set inside
/// `sub` and never increases the total weight.
pub fn restrict_weighting(
    host: &Hypergraph,
    gamma: &FractionalWeighting,
    sub: &Hypergraph,
) -> Result<FractionalWeighting> {
    gamma.check_host(host)?;
    if !is_induced_subhypergraph(host, sub) {
        return invalid("not an induced subhypergraph of the weighting's host");
    }
    let in_host = sub_vertices_in_host(host, sub).unwrap();
    let mut out = FractionalWeighting::zero(sub);
    for (ei, e) in host.edges().iter().enumerate() {
        let inter = e.intersection(&in_host);
        if inter.is_empty() {
            continue;
        }
        let translated: VertexSet = inter
            .iter()
            .map(|v| sub.vertex_index(host.vertex_name(v)).unwrap())
            .collect();
        let target = sub
            .edge_index(&translated)
            .expect("intersection is an edge of the induced subhypergraph");
        out.weights[target] = &out.weights[target] + &gamma.weights[ei];
    }
    Ok(out)
}

/// Canonical extension of a weighting on an induced subhypergraph back to the
/// host: the weight of each sub-edge is split equally among the host edges
/// whose intersection with `V(sub)` is that sub-edge. Preserves the total
/// weight and the blocked set inside `sub`.
pub fn extend_weighting(
    sub: &Hypergraph,
    gamma_sub: &FractionalWeighting,
    host: &Hypergraph,
) -> Result<FractionalWeighting> {
    gamma_sub.check_host(sub)?;
    if !is_induced_subhypergraph(host, sub) {
        return invalid("not an induced subhypergraph of the extension host");
    }
    let in_host = sub_vertices_in_host(host, sub).unwrap();
    // intersection pattern -> number of host edges sharing it
    let mut counts: HashMap<VertexSet, usize> = HashMap::new();
    for e in host.edges() {
        let inter = e.intersection(&in_host);
        if !inter.is_empty() {
            *counts.entry(inter).or_insert(0) += 1;
        }
    }
    let mut out = FractionalWeighting::zero(host);
    for (ei, e) in host.edges().iter().enumerate() {
        let inter = e.intersection(&in_host);
        if inter.is_empty() {
            continue;
        }
        let translated: VertexSet = inter
            .iter()
            .map(|v| sub.vertex_index(host.vertex_name(v)).unwrap())
            .collect();
        let sub_edge = sub
            .edge_index(&translated)
            .expect("intersection is an edge of the induced subhypergraph");
        let share = Rational::from_integer(BigInt::from(counts[&inter] as i64));
        out.weights[ei] = &gamma_sub.weights[sub_edge] / share;
    }
    Ok(out)
}

//! Tree, generalized hypertree, and fractional hypertree decompositions:
//! validation, exact widths at small scale, balanced separators, and the
//! recursive separator-based construction of fractional decompositions.
//!
//! Exact widths are computed by searching elimination orderings of the
//! primal graph. Every hyperedge is a clique of the primal graph, so tree
//! decompositions of the hypergraph and of its primal graph coincide, and
//! for any bag cost that is monotone under inclusion (bag size, integral
//! cover, fractional cover) the min-max cost over decompositions equals the
//! min-max cost over elimination orderings.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::bitset::VertexSet;
use crate::error::{invalid, resource_limit, Result};
use crate::hypergraph::Hypergraph;
use crate::weights::{
    extend_weighting, fractional_edge_cover, integral_edge_cover, rat_int, restrict_weighting,
    FractionalWeighting, Rational,
};

/// Default cap on the vertex count for [`exact_width`].
pub const DEFAULT_WIDTH_CAP: usize = 13;

/// A rooted tree of bags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    ids: Vec<String>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    /// Build from parallel arrays; node ids are generated as `t0`, `t1`, ..
    pub fn from_parts(bags: Vec<VertexSet>, parent: Vec<Option<usize>>) -> Result<Self> {
        let ids = (0..bags.len()).map(|i| format!("t{i}")).collect();
        Self::from_named_parts(ids, bags, parent)
    }

    pub fn from_named_parts(
        ids: Vec<String>,
        bags: Vec<VertexSet>,
        parent: Vec<Option<usize>>,
    ) -> Result<Self> {
        let n = bags.len();
        if n == 0 {
            return invalid("a tree decomposition needs at least one node");
        }
        if ids.len() != n || parent.len() != n {
            return invalid("ids, bags and parents must have equal length");
        }
        {
            let mut seen = std::collections::HashSet::new();
            for id in &ids {
                if !seen.insert(id) {
                    return invalid(format!("duplicate node id '{id}'"));
                }
            }
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (i, p) in parent.iter().enumerate() {
            match p {
                None => {
                    if root.replace(i).is_some() {
                        return invalid("more than one root node");
                    }
                }
                Some(p) => {
                    if *p >= n {
                        return invalid("parent index out of range");
                    }
                    children[*p].push(i);
                }
            }
        }
        let Some(root) = root else {
            return invalid("no root node");
        };
        // connectivity of the parent forest
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        let mut count = 1;
        while let Some(t) = stack.pop() {
            for &c in &children[t] {
                if seen[c] {
                    return invalid("cycle in the node tree");
                }
                seen[c] = true;
                count += 1;
                stack.push(c);
            }
        }
        if count != n {
            return invalid("node tree is not connected");
        }
        Ok(TreeDecomposition {
            ids,
            parent,
            children,
            root,
            bags,
        })
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn bag(&self, t: usize) -> &VertexSet {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    pub fn id(&self, t: usize) -> &str {
        &self.ids[t]
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            out.push(t);
            for &c in self.children[t].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    pub fn postorder(&self) -> Vec<usize> {
        let mut pre = self.preorder();
        pre.reverse();
        pre
    }

    /// Union of the bags in the subtree rooted at each node.
    pub fn subtree_bag_unions(&self) -> Vec<VertexSet> {
        let mut acc: Vec<VertexSet> = self.bags.clone();
        for &t in &self.postorder() {
            for &c in &self.children[t] {
                let u = acc[c].clone();
                acc[t].union_with(&u);
            }
        }
        acc
    }

    /// Width `max |B_t| - 1`.
    pub fn width(&self) -> Rational {
        let m = self.bags.iter().map(|b| b.len()).max().unwrap_or(0);
        rat_int(m as i64) - Rational::one()
    }
}

/// A tree decomposition with an integral guard (a set of host edges) per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedHypertreeDecomposition {
    pub base: TreeDecomposition,
    /// host edge indices per node
    pub guards: Vec<Vec<usize>>,
}

impl GeneralizedHypertreeDecomposition {
    /// Width `max |C_t|`.
    pub fn width(&self) -> Rational {
        rat_int(self.guards.iter().map(|g| g.len()).max().unwrap_or(0) as i64)
    }
}

/// A tree decomposition with a fractional guard per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalHypertreeDecomposition {
    pub base: TreeDecomposition,
    pub guards: Vec<FractionalWeighting>,
}

impl FractionalHypertreeDecomposition {
    /// Width `max weight(γ_t)`.
    pub fn width(&self) -> Rational {
        self.guards
            .iter()
            .map(|g| g.weight())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

#[derive(Clone, Debug)]
pub enum Decomposition {
    Tree(TreeDecomposition),
    Generalized(GeneralizedHypertreeDecomposition),
    Fractional(FractionalHypertreeDecomposition),
}

impl Decomposition {
    pub fn base(&self) -> &TreeDecomposition {
        match self {
            Decomposition::Tree(t) => t,
            Decomposition::Generalized(g) => &g.base,
            Decomposition::Fractional(f) => &f.base,
        }
    }
}

/// Outcome of validating a decomposition against a hypergraph.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub valid: bool,
    pub width: Rational,
    pub violations: Vec<String>,
    /// For fractional decompositions: whether
    /// `B(γ_t) ∩ ⋃_{u in T_t} B_u ⊆ B_t` holds at every node.
    pub special_condition: Option<bool>,
}

fn base_violations(h: &Hypergraph, td: &TreeDecomposition) -> Result<Vec<String>> {
    for (t, b) in td.bags.iter().enumerate() {
        if b.iter().any(|v| v >= h.vertex_count()) {
            return invalid(format!(
                "bag of node '{}' references a vertex outside the hypergraph",
                td.ids[t]
            ));
        }
    }
    let mut violations = Vec::new();
    for e in h.edges() {
        if !td.bags.iter().any(|b| e.is_subset(b)) {
            violations.push(format!(
                "edge {{{}}} is contained in no bag",
                h.edge_names(e).join(",")
            ));
        }
    }
    // a vertex occurrence set is a subtree iff all but one occurrence has its
    // parent in the set
    for v in 0..h.vertex_count() {
        let occ: Vec<usize> = (0..td.node_count())
            .filter(|&t| td.bags[t].contains(v))
            .collect();
        if occ.is_empty() {
            continue; // already reported through edge coverage
        }
        let tops = occ
            .iter()
            .filter(|&&t| match td.parent[t] {
                None => true,
                Some(p) => !td.bags[p].contains(v),
            })
            .count();
        if tops != 1 {
            violations.push(format!(
                "occurrences of vertex '{}' do not form a connected subtree",
                h.vertex_name(v)
            ));
        }
    }
    Ok(violations)
}

/// Validate a plain tree decomposition; width is `max |B_t| - 1`.
pub fn validate_tree(h: &Hypergraph, td: &TreeDecomposition) -> Result<ValidationReport> {
    let violations = base_violations(h, td)?;
    Ok(ValidationReport {
        valid: violations.is_empty(),
        width: td.width(),
        violations,
        special_condition: None,
    })
}

/// Validate a generalized hypertree decomposition; width is `max |C_t|`.
pub fn validate_generalized(
    h: &Hypergraph,
    d: &GeneralizedHypertreeDecomposition,
) -> Result<ValidationReport> {
    if d.guards.len() != d.base.node_count() {
        return invalid("one guard per node is required");
    }
    let mut violations = base_violations(h, &d.base)?;
    for (t, guard) in d.guards.iter().enumerate() {
        if guard.iter().any(|&e| e >= h.edge_count()) {
            return invalid(format!(
                "guard of node '{}' references an edge outside the hypergraph",
                d.base.ids[t]
            ));
        }
        let mut union = VertexSet::new();
        for &e in guard {
            union.union_with(h.edge(e));
        }
        if !d.base.bags[t].is_subset(&union) {
            violations.push(format!(
                "bag of node '{}' is not covered by its guard",
                d.base.ids[t]
            ));
        }
    }
    Ok(ValidationReport {
        valid: violations.is_empty(),
        width: d.width(),
        violations,
        special_condition: None,
    })
}

/// Validate a fractional hypertree decomposition; width is
/// `max weight(γ_t)`. Also reports whether the special condition holds.
pub fn validate_fractional(
    h: &Hypergraph,
    d: &FractionalHypertreeDecomposition,
) -> Result<ValidationReport> {
    if d.guards.len() != d.base.node_count() {
        return invalid("one guard per node is required");
    }
    for (t, g) in d.guards.iter().enumerate() {
        if g.edge_count() != h.edge_count() {
            return invalid(format!(
                "guard of node '{}' does not match the hypergraph's edge list",
                d.base.ids[t]
            ));
        }
        if g.weights().iter().any(|w| w.is_negative()) {
            return invalid(format!(
                "guard of node '{}' has a negative weight",
                d.base.ids[t]
            ));
        }
    }
    let mut violations = base_violations(h, &d.base)?;
    let blocked: Vec<VertexSet> = d.guards.iter().map(|g| g.blocked_set(h)).collect();
    for (t, b) in d.base.bags.iter().enumerate() {
        if !b.is_subset(&blocked[t]) {
            violations.push(format!(
                "bag of node '{}' is not blocked by its guard",
                d.base.ids[t]
            ));
        }
    }
    let unions = d.base.subtree_bag_unions();
    let special = (0..d.base.node_count()).all(|t| {
        blocked[t]
            .intersection(&unions[t])
            .is_subset(&d.base.bags[t])
    });
    Ok(ValidationReport {
        valid: violations.is_empty(),
        width: d.width(),
        violations,
        special_condition: Some(special),
    })
}

/// Validate any decomposition kind.
pub fn validate(h: &Hypergraph, d: &Decomposition) -> Result<ValidationReport> {
    match d {
        Decomposition::Tree(t) => validate_tree(h, t),
        Decomposition::Generalized(g) => validate_generalized(h, g),
        Decomposition::Fractional(f) => validate_fractional(h, f),
    }
}

/// Which width is being computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WidthMeasure {
    Tree,
    Generalized,
    Fractional,
}

// ---------------------------------------------------------------------------
// exact widths via elimination orderings
// ---------------------------------------------------------------------------

/// Neighbors of `v` among `rem` after eliminating everything outside `rem`:
/// vertices of `rem \ {v}` reachable from `v` through eliminated vertices.
fn elimination_bag(adj: &[u64], rem: u64, v: usize) -> u64 {
    let mut bag = 1u64 << v;
    let mut visited = 1u64 << v;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        let mut cand = adj[u] & !visited;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            visited |= 1 << w;
            if rem & (1 << w) != 0 {
                bag |= 1 << w;
            } else {
                stack.push(w); // eliminated: paths may continue through it
            }
        }
    }
    bag
}

struct EliminationSearch<'a, F: FnMut(u64) -> Rational> {
    adj: &'a [u64],
    cost: F,
    memo: HashMap<u64, (Rational, usize)>,
}

impl<F: FnMut(u64) -> Rational> EliminationSearch<'_, F> {
    fn best(&mut self, rem: u64) -> Rational {
        if rem == 0 {
            return Rational::zero();
        }
        if let Some((val, _)) = self.memo.get(&rem) {
            return val.clone();
        }
        let mut candidates: Vec<(Rational, usize)> = {
            let mut c = Vec::new();
            let mut bits = rem;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                c.push(((self.cost)(elimination_bag(self.adj, rem, v)), v));
            }
            c.sort();
            c
        };
        let mut best: Option<(Rational, usize)> = None;
        for (cost_v, v) in candidates.drain(..) {
            if let Some((b, _)) = &best {
                // costs are sorted ascending, so nothing later can improve
                if &cost_v >= b {
                    break;
                }
            }
            let sub = self.best(rem & !(1 << v));
            let val = cost_v.max(sub);
            if best.as_ref().is_none_or(|(b, _)| val < *b) {
                best = Some((val, v));
            }
        }
        let best = best.expect("nonempty remainder has candidates");
        self.memo.insert(rem, best.clone());
        best.0
    }

    fn order(&mut self, full: u64) -> Vec<usize> {
        let mut rem = full;
        let mut order = Vec::new();
        while rem != 0 {
            self.best(rem);
            let v = self.memo[&rem].1;
            order.push(v);
            rem &= !(1 << v);
        }
        order
    }
}

fn primal_adjacency_masks(h: &Hypergraph) -> Vec<u64> {
    h.primal_adjacency()
        .iter()
        .map(|s| s.iter().fold(0u64, |m, v| m | 1 << v))
        .collect()
}

/// Build the tree decomposition whose bags are the elimination bags of
/// `order`. In the resulting tree the parent of each node is the node of its
/// earliest-eliminated later neighbor.
fn decomposition_from_elimination(h: &Hypergraph, order: &[usize]) -> TreeDecomposition {
    let n = h.vertex_count();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = h.primal_adjacency();
    let mut eliminated = VertexSet::new();
    let mut bags: Vec<VertexSet> = Vec::with_capacity(n);
    for &v in order {
        let neigh = adj[v].difference(&eliminated);
        let mut bag = neigh.clone();
        bag.insert(v);
        bags.push(bag);
        let members: Vec<usize> = neigh.iter().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        eliminated.insert(v);
    }
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later = {
            let mut b = bags[i].clone();
            b.remove(v);
            b
        };
        match later.iter().min_by_key(|&w| pos[w]) {
            Some(w) => parent[i] = Some(pos[w]),
            None => roots.push(i),
        }
    }
    // join disconnected components under the first root
    for &r in roots.iter().skip(1) {
        parent[r] = Some(roots[0]);
    }
    TreeDecomposition::from_parts(bags, parent)
        .expect("elimination orderings yield well-formed trees")
}

/// Exact tree width with a witness decomposition.
pub fn exact_tree_width(h: &Hypergraph) -> Result<(Rational, TreeDecomposition)> {
    exact_tree_width_with_cap(h, DEFAULT_WIDTH_CAP)
}

pub fn exact_tree_width_with_cap(
    h: &Hypergraph,
    cap: usize,
) -> Result<(Rational, TreeDecomposition)> {
    let (value, order) = search_orderings(h, cap, |_h, bag| rat_int(bag.len() as i64 - 1))?;
    let td = decomposition_from_elimination(h, &order);
    debug_assert_eq!(td.width(), value);
    Ok((value, td))
}

/// Exact generalized hypertree width with a witness decomposition.
pub fn exact_generalized_width(
    h: &Hypergraph,
) -> Result<(Rational, GeneralizedHypertreeDecomposition)> {
    exact_generalized_width_with_cap(h, DEFAULT_WIDTH_CAP)
}

pub fn exact_generalized_width_with_cap(
    h: &Hypergraph,
    cap: usize,
) -> Result<(Rational, GeneralizedHypertreeDecomposition)> {
    let (value, order) = search_orderings(h, cap, |h, bag| {
        rat_int(integral_edge_cover(h, bag).expect("bags are nonempty").0 as i64)
    })?;
    let base = decomposition_from_elimination(h, &order);
    let guards = base
        .bags()
        .iter()
        .map(|b| integral_edge_cover(h, b).expect("bags are nonempty").1)
        .collect();
    let d = GeneralizedHypertreeDecomposition { base, guards };
    debug_assert_eq!(d.width(), value);
    Ok((value, d))
}

/// Exact fractional hypertree width with a witness decomposition.
pub fn exact_fractional_width(
    h: &Hypergraph,
) -> Result<(Rational, FractionalHypertreeDecomposition)> {
    exact_fractional_width_with_cap(h, DEFAULT_WIDTH_CAP)
}

pub fn exact_fractional_width_with_cap(
    h: &Hypergraph,
    cap: usize,
) -> Result<(Rational, FractionalHypertreeDecomposition)> {
    let (value, order) = search_orderings(h, cap, |h, bag| {
        fractional_edge_cover(h, bag).expect("bags are nonempty").0
    })?;
    let base = decomposition_from_elimination(h, &order);
    let guards = base
        .bags()
        .iter()
        .map(|b| fractional_edge_cover(h, b).expect("bags are nonempty").1)
        .collect();
    let d = FractionalHypertreeDecomposition { base, guards };
    debug_assert_eq!(d.width(), value);
    Ok((value, d))
}

fn search_orderings(
    h: &Hypergraph,
    cap: usize,
    mut bag_cost: impl FnMut(&Hypergraph, &VertexSet) -> Rational,
) -> Result<(Rational, Vec<usize>)> {
    let n = h.vertex_count();
    if n > cap {
        return resource_limit(format!(
            "exact width search on {n} vertices exceeds the cap of {cap}"
        ));
    }
    let adj = primal_adjacency_masks(h);
    let mut cost_cache: HashMap<u64, Rational> = HashMap::new();
    let mut search = EliminationSearch {
        adj: &adj,
        cost: |bag_mask: u64| -> Rational {
            if let Some(c) = cost_cache.get(&bag_mask) {
                return c.clone();
            }
            let bag = VertexSet::from_mask(bag_mask);
            let c = bag_cost(h, &bag);
            cost_cache.insert(bag_mask, c.clone());
            c
        },
        memo: HashMap::new(),
    };
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let value = search.best(full);
    let order = search.order(full);
    Ok((value, order))
}

/// Exact width of the requested measure, with a witness decomposition.
pub fn exact_width(h: &Hypergraph, measure: WidthMeasure) -> Result<(Rational, Decomposition)> {
    exact_width_with_cap(h, measure, DEFAULT_WIDTH_CAP)
}

pub fn exact_width_with_cap(
    h: &Hypergraph,
    measure: WidthMeasure,
    cap: usize,
) -> Result<(Rational, Decomposition)> {
    Ok(match measure {
        WidthMeasure::Tree => {
            let (v, d) = exact_tree_width_with_cap(h, cap)?;
            (v, Decomposition::Tree(d))
        }
        WidthMeasure::Generalized => {
            let (v, d) = exact_generalized_width_with_cap(h, cap)?;
            (v, Decomposition::Generalized(d))
        }
        WidthMeasure::Fractional => {
            let (v, d) = exact_fractional_width_with_cap(h, cap)?;
            (v, Decomposition::Fractional(d))
        }
    })
}

// ---------------------------------------------------------------------------
// balanced separators and the recursive construction
// ---------------------------------------------------------------------------

/// Search for a weighting `σ` with `weight(σ) <= r` such that every
/// connected component `R` of `H \ B(σ)` satisfies
/// `weight(gamma|R) <= weight(gamma)/2`.
///
/// Candidate blocked sets are tried in increasing size (the empty set
/// first); each candidate set is blocked by its optimal fractional cover.
/// The search is exhaustive over vertex subsets, hence exponential, and is
/// meant for small hypergraphs.
pub fn balanced_separator(
    h: &Hypergraph,
    gamma: &FractionalWeighting,
    r: &Rational,
) -> Result<Option<FractionalWeighting>> {
    if gamma.edge_count() != h.edge_count() {
        return invalid("weighting does not match the hypergraph's edge list");
    }
    let half = gamma.weight() / rat_int(2);
    let n = h.vertex_count();
    let balanced = |sigma: &FractionalWeighting| -> bool {
        h.components(&sigma.blocked_set(h))
            .iter()
            .all(|comp| gamma.restricted_weight(h, comp) <= half)
    };
    for size in 0..=n {
        for subset in (0..n).combinations(size) {
            let sigma = if subset.is_empty() {
                if r.is_negative() {
                    continue;
                }
                FractionalWeighting::zero(h)
            } else {
                let target: VertexSet = subset.iter().copied().collect();
                let (value, cover) = fractional_edge_cover(h, &target)?;
                if &value > r {
                    continue;
                }
                cover
            };
            if balanced(&sigma) {
                return Ok(Some(sigma));
            }
        }
    }
    Ok(None)
}

struct BuildNode {
    parent: Option<usize>,
    bag: VertexSet,
    guard: FractionalWeighting,
}

/// One level of the recursive construction: requires `weight(gamma) <= 2r+2`
/// and produces a decomposition whose root bag contains `B(gamma)`.
fn build_by_separators(
    h: &Hypergraph,
    gamma: &FractionalWeighting,
    r: &Rational,
) -> Result<Option<Vec<BuildNode>>> {
    let budget = rat_int(2) * r + rat_int(2);
    assert!(
        gamma.weight() <= budget,
        "internal error: recursion weight invariant violated"
    );
    let Some(sigma) = balanced_separator(h, gamma, r)? else {
        return Ok(None);
    };
    let chi = gamma.add(&sigma);
    assert!(
        chi.weight() <= rat_int(3) * r + rat_int(2),
        "internal error: separator exceeded its weight budget"
    );
    let blocked_chi = chi.blocked_set(h);
    if blocked_chi == h.full_vertex_set() {
        return Ok(Some(vec![BuildNode {
            parent: None,
            bag: blocked_chi,
            guard: chi,
        }]));
    }

    let measure_here = h.full_vertex_set().difference(&gamma.blocked_set(h)).len();
    let sigma_components = h.components(&sigma.blocked_set(h));
    let mut nodes = vec![BuildNode {
        parent: None,
        bag: blocked_chi.clone(),
        guard: chi.clone(),
    }];

    for region in h.components(&blocked_chi) {
        let escape_edge = h
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.intersects(&region))
            .min_by(|(_, a), (_, b)| a.cmp(b))
            .map(|(ei, _)| ei)
            .expect("nonempty regions touch some edge");
        let around = sigma_components
            .iter()
            .find(|c| region.is_subset(c))
            .expect("regions lie inside a component of the separator residue");

        let child_gamma_weights = (0..h.edge_count()).map(|ei| {
            let w = if ei == escape_edge {
                Rational::one()
            } else if h.edge(ei).intersects(around) {
                sigma.edge_weight(ei) + gamma.edge_weight(ei)
            } else {
                sigma.edge_weight(ei).clone()
            };
            (ei, w)
        });
        let chi_i = FractionalWeighting::from_edge_weights(h, child_gamma_weights)?;
        assert!(
            chi_i.weight() <= budget,
            "internal error: child weighting exceeded its budget"
        );
        let blocked_i = chi_i.blocked_set(h);
        let child_vertices = region.union(&blocked_i);
        let child_h = h.induced_subhypergraph(&child_vertices)?;
        let child_gamma = restrict_weighting(h, &chi_i, &child_h)?;
        let measure_child = child_vertices.difference(&blocked_i).len();
        assert!(
            measure_child < measure_here,
            "internal error: recursion measure failed to decrease"
        );
        let Some(sub) = build_by_separators(&child_h, &child_gamma, r)? else {
            return Ok(None);
        };
        let base = nodes.len();
        for node in sub {
            let bag: VertexSet = node
                .bag
                .iter()
                .map(|v| h.vertex_index(child_h.vertex_name(v)).unwrap())
                .collect();
            let guard = extend_weighting(&child_h, &node.guard, h)?;
            nodes.push(BuildNode {
                parent: Some(node.parent.map_or(0, |p| base + p)),
                bag,
                guard,
            });
        }
    }
    Ok(Some(nodes))
}

/// The recursive balanced-separator construction. When every recursion level
/// finds a balanced separator of weight at most `r` (guaranteed whenever the
/// general wins the pursuit game with budget `r`), the result is a valid
/// fractional hypertree decomposition of width at most `3r + 2` satisfying
/// the special condition; otherwise `None`.
pub fn decompose_by_separators(
    h: &Hypergraph,
    r: &Rational,
) -> Result<Option<FractionalHypertreeDecomposition>> {
    let Some(nodes) = build_by_separators(h, &FractionalWeighting::zero(h), r)? else {
        return Ok(None);
    };
    let bags = nodes.iter().map(|n| n.bag.clone()).collect();
    let parents = nodes.iter().map(|n| n.parent).collect();
    let base = TreeDecomposition::from_parts(bags, parents)?;
    let guards = nodes.into_iter().map(|n| n.guard).collect();
    Ok(Some(FractionalHypertreeDecomposition { base, guards }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_hn, generate_matching, generate_universal};
    use crate::weights::rat;

    fn hg(edges: &[&[&str]]) -> Hypergraph {
        Hypergraph::from_named_edges(
            None,
            edges
                .iter()
                .map(|e| e.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn triangle() -> Hypergraph {
        hg(&[&["a", "b"], &["b", "c"], &["a", "c"]])
    }

    /// The two-node width-2 decomposition of H_2, with 0/1 fractional guards.
    fn h2_two_node_fhd(h2: &Hypergraph) -> FractionalHypertreeDecomposition {
        let bag = |digits: [char; 2]| -> VertexSet {
            (0..h2.vertex_count())
                .filter(|&v| {
                    let name = h2.vertex_name(v);
                    digits.iter().any(|d| name.contains(*d))
                })
                .collect()
        };
        let base = TreeDecomposition::from_parts(
            vec![bag(['1', '2']), bag(['3', '4'])],
            vec![None, Some(0)],
        )
        .unwrap();
        let guards = vec![
            FractionalWeighting::from_edge_weights(h2, [(0, rat(1, 1)), (1, rat(1, 1))]).unwrap(),
            FractionalWeighting::from_edge_weights(h2, [(2, rat(1, 1)), (3, rat(1, 1))]).unwrap(),
        ];
        FractionalHypertreeDecomposition { base, guards }
    }

    #[test]
    fn single_bag_decomposition_is_valid() {
        let tri = triangle();
        let (rho, cover) = fractional_edge_cover(&tri, &tri.full_vertex_set()).unwrap();
        let base = TreeDecomposition::from_parts(vec![tri.full_vertex_set()], vec![None]).unwrap();
        let d = FractionalHypertreeDecomposition {
            base,
            guards: vec![cover],
        };
        let report = validate_fractional(&tri, &d).unwrap();
        assert!(report.valid, "{:?}", report.violations);
        assert_eq!(report.width, rho);
        assert_eq!(report.special_condition, Some(true));
    }

    #[test]
    fn h2_two_node_decomposition_validates() {
        let h2 = generate_hn(2).unwrap();
        let d = h2_two_node_fhd(&h2);
        let report = validate_fractional(&h2, &d).unwrap();
        assert!(report.valid, "{:?}", report.violations);
        assert_eq!(report.width, rat_int(2));
        assert_eq!(report.special_condition, Some(true));

        // deleting v12 from both bags breaks edge coverage
        let mut broken = d.clone();
        let v12 = h2.vertex_index("v12").unwrap();
        let bags: Vec<VertexSet> = broken
            .base
            .bags()
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.remove(v12);
                b
            })
            .collect();
        broken.base = TreeDecomposition::from_parts(bags, vec![None, Some(0)]).unwrap();
        let report = validate_fractional(&h2, &broken).unwrap();
        assert!(!report.valid);
        assert!(report.violations.iter().any(|v| v.contains("no bag")));
    }

    #[test]
    fn ghd_validation() {
        let h2 = generate_hn(2).unwrap();
        let fhd = h2_two_node_fhd(&h2);
        let ghd = GeneralizedHypertreeDecomposition {
            base: fhd.base.clone(),
            guards: vec![vec![0, 1], vec![2, 3]],
        };
        let report = validate_generalized(&h2, &ghd).unwrap();
        assert!(report.valid, "{:?}", report.violations);
        assert_eq!(report.width, rat_int(2));

        let bad = GeneralizedHypertreeDecomposition {
            base: fhd.base.clone(),
            guards: vec![vec![0], vec![2, 3]],
        };
        let report = validate_generalized(&h2, &bad).unwrap();
        assert!(!report.valid);

        let dangling = GeneralizedHypertreeDecomposition {
            base: fhd.base.clone(),
            guards: vec![vec![0, 9], vec![2, 3]],
        };
        assert!(validate_generalized(&h2, &dangling).is_err());
    }

    #[test]
    fn connectivity_violations_are_reported() {
        let p = hg(&[&["a", "b"], &["b", "c"]]);
        // a appears in the two leaves but not in the middle node
        let a = p.vertex_set(&["a", "b"]).unwrap();
        let b = p.vertex_set(&["b", "c"]).unwrap();
        let c = p.vertex_set(&["a", "c"]).unwrap();
        let td =
            TreeDecomposition::from_parts(vec![a, b, c], vec![None, Some(0), Some(1)]).unwrap();
        let report = validate_tree(&p, &td).unwrap();
        assert!(!report.valid);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("connected subtree")));
    }

    #[test]
    fn exact_widths_on_the_named_corpus() {
        let u = generate_universal(5).unwrap();
        assert_eq!(exact_tree_width(&u).unwrap().0, rat_int(4));
        assert_eq!(exact_generalized_width(&u).unwrap().0, rat_int(1));
        assert_eq!(exact_fractional_width(&u).unwrap().0, rat_int(1));

        let m = generate_matching(3).unwrap();
        assert_eq!(exact_tree_width(&m).unwrap().0, rat_int(1));
        assert_eq!(exact_generalized_width(&m).unwrap().0, rat_int(1));
        assert_eq!(exact_fractional_width(&m).unwrap().0, rat_int(1));

        let h2 = generate_hn(2).unwrap();
        assert_eq!(exact_generalized_width(&h2).unwrap().0, rat_int(2));

        let tri = triangle();
        assert_eq!(exact_tree_width(&tri).unwrap().0, rat_int(2));
        assert_eq!(exact_generalized_width(&tri).unwrap().0, rat_int(2));
        let (fhw, witness) = exact_fractional_width(&tri).unwrap();
        assert_eq!(fhw, rat(3, 2));
        let report = validate_fractional(&tri, &witness).unwrap();
        assert!(report.valid);
        assert_eq!(report.width, rat(3, 2));
    }

    #[test]
    fn witnesses_validate_across_measures() {
        for h in [
            triangle(),
            generate_hn(2).unwrap(),
            generate_matching(2).unwrap(),
            generate_universal(4).unwrap(),
            hg(&[&["a", "b"], &["b", "c"], &["c", "d"]]),
        ] {
            let (tw, td) = exact_tree_width(&h).unwrap();
            let r = validate_tree(&h, &td).unwrap();
            assert!(r.valid, "{:?}", r.violations);
            assert_eq!(r.width, tw);

            let (ghw, ghd) = exact_generalized_width(&h).unwrap();
            let r = validate_generalized(&h, &ghd).unwrap();
            assert!(r.valid, "{:?}", r.violations);
            assert_eq!(r.width, ghw);

            let (fhw, fhd) = exact_fractional_width(&h).unwrap();
            let r = validate_fractional(&h, &fhd).unwrap();
            assert!(r.valid, "{:?}", r.violations);
            assert_eq!(r.width, fhw);

            // fhw <= ghw <= tw + 1 and fhw <= ρ*
            assert!(fhw <= ghw);
            assert!(ghw <= tw + rat_int(1));
            let (rho, _) = fractional_edge_cover(&h, &h.full_vertex_set()).unwrap();
            assert!(fhw <= rho);
        }
    }

    #[test]
    fn width_cap_is_enforced() {
        let big = generate_matching(7).unwrap(); // 14 vertices
        assert!(matches!(
            exact_tree_width(&big),
            Err(crate::error::Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn balanced_separator_examples() {
        let p = hg(&[&["a", "b"], &["b", "c"]]);
        // zero weighting: the zero separator works
        let zero = FractionalWeighting::zero(&p);
        let sigma = balanced_separator(&p, &zero, &rat_int(1)).unwrap().unwrap();
        assert_eq!(sigma.weight(), rat_int(0));

        // unit weights on a path: some weight-1 separator splits the mass
        let gamma =
            FractionalWeighting::from_edge_weights(&p, [(0, rat_int(1)), (1, rat_int(1))]).unwrap();
        let sigma = balanced_separator(&p, &gamma, &rat_int(1))
            .unwrap()
            .unwrap();
        assert!(sigma.weight() <= rat_int(1));
        let half = gamma.weight() / rat_int(2);
        for comp in p.components(&sigma.blocked_set(&p)) {
            assert!(gamma.restricted_weight(&p, &comp) <= half);
        }

        // a heavy connected triangle admits no weight-1/2 separator
        let tri = triangle();
        let heavy =
            FractionalWeighting::from_edge_weights(&tri, (0..3).map(|e| (e, rat_int(1)))).unwrap();
        assert!(balanced_separator(&tri, &heavy, &rat(1, 2))
            .unwrap()
            .is_none());

        // disjoint edges each carry only their own weight, so even the zero
        // separator is balanced
        let m = generate_matching(4).unwrap();
        let gamma =
            FractionalWeighting::from_edge_weights(&m, (0..4).map(|e| (e, rat_int(1)))).unwrap();
        let sigma = balanced_separator(&m, &gamma, &rat(1, 2)).unwrap().unwrap();
        assert_eq!(sigma.weight(), rat_int(0));
    }

    #[test]
    fn separator_construction_postconditions() {
        let single = hg(&[&["a", "b"]]);
        let d = decompose_by_separators(&single, &rat_int(1))
            .unwrap()
            .unwrap();
        let report = validate_fractional(&single, &d).unwrap();
        assert!(report.valid, "{:?}", report.violations);
        assert!(report.width <= rat_int(5));
        assert_eq!(report.special_condition, Some(true));

        let tri = triangle();
        let d = decompose_by_separators(&tri, &rat(3, 2)).unwrap().unwrap();
        let report = validate_fractional(&tri, &d).unwrap();
        assert!(report.valid, "{:?}", report.violations);
        assert!(report.width <= rat(13, 2));
        assert_eq!(report.special_condition, Some(true));

        // far too small a budget on a heavy hypergraph fails
        assert!(decompose_by_separators(&tri, &rat(1, 4)).unwrap().is_none());
    }
}

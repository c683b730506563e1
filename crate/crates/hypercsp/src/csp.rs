//! CSP instances with explicit tuple-list constraints.
//!
//! Variables and domain values are interned strings mapped to dense indices;
//! relation tuples are stored as sorted integer sequences so iteration order
//! is deterministic everywhere. Scopes may repeat variables; constraints
//! with identical scopes are kept separate.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::bitset::VertexSet;
use crate::error::{invalid, resource_limit, Result};
use crate::hypergraph::Hypergraph;

/// Default cap on `|D|^|V|` for [`CspInstance::brute_force_solutions`].
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 10_000_000;

/// A k-ary relation: a set of k-tuples of dense domain values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<Vec<u32>>,
}

impl Relation {
    pub fn new(arity: usize, tuples: impl IntoIterator<Item = Vec<u32>>) -> Result<Relation> {
        if arity == 0 {
            return invalid("relations must have arity at least 1");
        }
        let mut set = BTreeSet::new();
        for t in tuples {
            if t.len() != arity {
                return invalid(format!(
                    "tuple of length {} in a relation of arity {arity}",
                    t.len()
                ));
            }
            set.insert(t);
        }
        Ok(Relation { arity, tuples: set })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        self.tuples.contains(t)
    }

    /// Iterate tuples in sorted order.
    pub fn tuples(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.tuples.iter()
    }

    /// Projection onto the 0-based `positions`, which must be strictly
    /// increasing and within the arity. Duplicates are merged.
    pub fn project(&self, positions: &[usize]) -> Result<Relation> {
        if positions.is_empty() {
            return invalid("projection onto no positions");
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("projection positions must be strictly increasing");
        }
        if *positions.last().unwrap() >= self.arity {
            return invalid("projection position out of range");
        }
        let tuples = self
            .tuples
            .iter()
            .map(|t| positions.iter().map(|&p| t[p]).collect::<Vec<u32>>());
        Relation::new(positions.len(), tuples)
    }
}

/// A constraint: a scope (repeats allowed) and a relation of matching arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    scope: Vec<usize>,
    relation: Relation,
}

impl Constraint {
    pub fn new(scope: Vec<usize>, relation: Relation) -> Result<Constraint> {
        if scope.len() != relation.arity() {
            return invalid("scope length must equal the relation arity");
        }
        Ok(Constraint { scope, relation })
    }

    pub fn scope(&self) -> &[usize] {
        &self.scope
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    /// `‖c‖ = k + k·|R|`.
    pub fn size(&self) -> u64 {
        let k = self.scope.len() as u64;
        k + k * self.relation.len() as u64
    }
}

/// A (possibly partial) assignment of domain values to variables, by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Assignment(pub BTreeMap<String, String>);

impl Assignment {
    pub fn get(&self, var: &str) -> Option<&str> {
        self.0.get(var).map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &String)> {
        self.0.iter()
    }
}

impl FromIterator<(String, String)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (String, String)>>(iter: T) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

/// A CSP instance `(V, D, C)`. Every variable occurs in at least one scope,
/// so the instance's hypergraph has no isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    variables: Vec<String>,
    var_index: HashMap<String, usize>,
    domain: Vec<String>,
    dom_index: HashMap<String, usize>,
    constraints: Vec<Constraint>,
}

impl CspInstance {
    /// Build from named data: scopes and tuples refer to variables and domain
    /// values by name.
    pub fn from_named(
        variables: Vec<String>,
        domain: Vec<String>,
        constraints: Vec<(Vec<String>, Vec<Vec<String>>)>,
    ) -> Result<CspInstance> {
        let var_index = intern("variable", &variables)?;
        let dom_index = intern("domain value", &domain)?;
        let mut built = Vec::new();
        for (scope_names, tuples) in constraints {
            let scope = scope_names
                .iter()
                .map(|v| {
                    var_index.get(v).copied().ok_or_else(|| {
                        crate::error::Error::InvalidArgument(format!("unknown variable '{v}'"))
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            if scope.is_empty() {
                return invalid("constraint scopes must be nonempty");
            }
            let dense = tuples
                .into_iter()
                .map(|t| {
                    t.iter()
                        .map(|d| {
                            dom_index.get(d).copied().map(|i| i as u32).ok_or_else(|| {
                                crate::error::Error::InvalidArgument(format!(
                                    "unknown domain value '{d}'"
                                ))
                            })
                        })
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            built.push(Constraint::new(
                scope.clone(),
                Relation::new(scope.len(), dense)?,
            )?);
        }
        Self::from_parts(variables, domain, built)
    }

    /// Build from already-dense constraints.
    pub fn from_parts(
        variables: Vec<String>,
        domain: Vec<String>,
        constraints: Vec<Constraint>,
    ) -> Result<CspInstance> {
        if variables.is_empty() {
            return invalid("instances must have at least one variable");
        }
        let var_index = intern("variable", &variables)?;
        let dom_index = intern("domain value", &domain)?;
        let mut covered = vec![false; variables.len()];
        for c in &constraints {
            for &v in c.scope() {
                if v >= variables.len() {
                    return invalid(format!("scope variable index {v} out of range"));
                }
                covered[v] = true;
            }
            for t in c.relation().tuples() {
                if t.iter().any(|&d| d as usize >= domain.len()) {
                    return invalid("tuple value out of domain range");
                }
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return invalid(format!(
                "variable '{}' occurs in no constraint",
                variables[v]
            ));
        }
        Ok(CspInstance {
            variables,
            var_index,
            domain,
            dom_index,
            constraints,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.var_index.get(name).copied()
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain_index(&self, value: &str) -> Option<usize> {
        self.dom_index.get(value).copied()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Translate a set of variable names into a `VertexSet` over variable
    /// indices.
    pub fn variable_set(&self, names: &[impl AsRef<str>]) -> Result<VertexSet> {
        let mut s = VertexSet::new();
        for n in names {
            match self.variable_index(n.as_ref()) {
                Some(i) => s.insert(i),
                None => return invalid(format!("unknown variable '{}'", n.as_ref())),
            }
        }
        Ok(s)
    }

    /// `‖I‖ = |V| + |D| + Σ_c ‖c‖`.
    pub fn instance_size(&self) -> u64 {
        self.variables.len() as u64
            + self.domain.len() as u64
            + self.constraints.iter().map(|c| c.size()).sum::<u64>()
    }

    /// The hypergraph of the instance: variables as vertices (same indices),
    /// one hyperedge per constraint scope (as a set; duplicates merge).
    pub fn hypergraph_of(&self) -> Hypergraph {
        let edges: Vec<VertexSet> = self
            .constraints
            .iter()
            .map(|c| c.scope().iter().copied().collect())
            .collect();
        Hypergraph::from_indexed(self.variables.clone(), edges)
            .expect("instance invariants guarantee a well-formed hypergraph")
    }

    /// The instance induced by the variable set `sub`: every constraint with
    /// at least one scope variable in `sub` is projected onto its in-`sub`
    /// scope positions.
    pub fn induced_instance(&self, sub: &VertexSet) -> Result<CspInstance> {
        if sub.is_empty() {
            return invalid("induced instance of an empty variable set");
        }
        if let Some(v) = sub.iter().find(|&v| v >= self.variables.len()) {
            return invalid(format!("variable index {v} out of range"));
        }
        let kept: Vec<usize> = sub.iter().collect();
        let renumber: HashMap<usize, usize> = kept
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let variables: Vec<String> = kept.iter().map(|&v| self.variables[v].clone()).collect();
        let mut constraints = Vec::new();
        for c in &self.constraints {
            let positions: Vec<usize> = (0..c.scope().len())
                .filter(|&p| sub.contains(c.scope()[p]))
                .collect();
            if positions.is_empty() {
                continue;
            }
            let scope: Vec<usize> = positions.iter().map(|&p| renumber[&c.scope()[p]]).collect();
            let relation = c.relation().project(&positions)?;
            constraints.push(Constraint::new(scope, relation)?);
        }
        CspInstance::from_parts(variables, self.domain.clone(), constraints)
    }

    fn dense_total(&self, a: &Assignment) -> Result<Vec<u32>> {
        if a.len() != self.variables.len() {
            return invalid("assignment is not total");
        }
        let mut out = vec![0u32; self.variables.len()];
        for (var, val) in a.iter() {
            let vi = self.variable_index(var).ok_or_else(|| {
                crate::error::Error::InvalidArgument(format!("unknown variable '{var}'"))
            })?;
            let di = self.domain_index(val).ok_or_else(|| {
                crate::error::Error::InvalidArgument(format!("unknown domain value '{val}'"))
            })?;
            out[vi] = di as u32;
        }
        Ok(out)
    }

    pub(crate) fn dense_satisfies(&self, values: &[u32]) -> bool {
        self.constraints.iter().all(|c| {
            let t: Vec<u32> = c.scope().iter().map(|&v| values[v]).collect();
            c.relation().contains(&t)
        })
    }

    /// Is the total assignment `a` a solution?
    pub fn is_solution(&self, a: &Assignment) -> Result<bool> {
        Ok(self.dense_satisfies(&self.dense_total(a)?))
    }

    pub(crate) fn assignment_from_dense(&self, values: &[u32]) -> Assignment {
        self.variables
            .iter()
            .zip(values)
            .map(|(v, &d)| (v.clone(), self.domain[d as usize].clone()))
            .collect()
    }

    /// All solutions by exhaustive enumeration, in lexicographic order of the
    /// dense value tuples. Refuses when `|D|^|V|` exceeds `cap`.
    pub fn brute_force_solutions_with_cap(&self, cap: u64) -> Result<Vec<Assignment>> {
        let mut space: u64 = 1;
        for _ in 0..self.variables.len() {
            space = match space.checked_mul(self.domain.len() as u64) {
                Some(s) if s <= cap => s,
                _ => {
                    return resource_limit(format!("search space |D|^|V| exceeds the cap of {cap}"))
                }
            };
        }
        let n = self.variables.len();
        let d = self.domain.len() as u32;
        let mut out = Vec::new();
        let mut values = vec![0u32; n];
        if d == 0 {
            return Ok(out);
        }
        loop {
            if self.dense_satisfies(&values) {
                out.push(self.assignment_from_dense(&values));
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                values[pos] += 1;
                if values[pos] < d {
                    break;
                }
                values[pos] = 0;
            }
        }
    }

    /// [`Self::brute_force_solutions_with_cap`] with the default cap.
    pub fn brute_force_solutions(&self) -> Result<Vec<Assignment>> {
        self.brute_force_solutions_with_cap(DEFAULT_BRUTE_FORCE_CAP)
    }
}

fn intern(kind: &str, names: &[String]) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.clone(), i).is_some() {
            return invalid(format!("duplicate {kind} '{n}'"));
        }
    }
    Ok(map)
}

/// A finite relational structure: a universe plus named relations over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalStructure {
    universe: Vec<String>,
    relations: BTreeMap<String, (usize, Vec<Vec<String>>)>,
}

impl RelationalStructure {
    pub fn new(
        universe: Vec<String>,
        relations: impl IntoIterator<Item = (String, usize, Vec<Vec<String>>)>,
    ) -> Result<RelationalStructure> {
        let index = intern("universe element", &universe)?;
        let mut map = BTreeMap::new();
        for (name, arity, tuples) in relations {
            if arity == 0 {
                return invalid("relation arity must be at least 1");
            }
            for t in &tuples {
                if t.len() != arity {
                    return invalid(format!("tuple length mismatch in relation '{name}'"));
                }
                for e in t {
                    if !index.contains_key(e) {
                        return invalid(format!("'{e}' is not a universe element"));
                    }
                }
            }
            if map.insert(name.clone(), (arity, tuples)).is_some() {
                return invalid(format!("duplicate relation '{name}'"));
            }
        }
        Ok(RelationalStructure {
            universe,
            relations: map,
        })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn relations(&self) -> impl Iterator<Item = (&String, usize, &Vec<Vec<String>>)> {
        self.relations.iter().map(|(n, (a, t))| (n, *a, t))
    }
}

/// The homomorphism problem `A -> B` as a CSP instance: variables are the
/// universe of `a`, the domain is the universe of `b`, and every tuple of a
/// relation of `a` becomes a constraint whose relation is the same-named
/// relation of `b`. Solutions are exactly the homomorphisms from `a` to `b`.
pub fn structures_to_csp(a: &RelationalStructure, b: &RelationalStructure) -> Result<CspInstance> {
    let sig_a: Vec<(&String, usize)> = a.relations.iter().map(|(n, (k, _))| (n, *k)).collect();
    let sig_b: Vec<(&String, usize)> = b.relations.iter().map(|(n, (k, _))| (n, *k)).collect();
    if sig_a != sig_b {
        return invalid("structures have different signatures");
    }
    let constraints = a
        .relations
        .iter()
        .flat_map(|(name, (_, tuples))| {
            let target = &b.relations[name].1;
            tuples.iter().map(move |t| (t.clone(), target.clone()))
        })
        .collect::<Vec<_>>();
    CspInstance::from_named(a.universe.clone(), b.universe.clone(), constraints)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tuples(ts: &[&[&str]]) -> Vec<Vec<String>> {
        ts.iter()
            .map(|t| t.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn unary_instance() -> CspInstance {
        CspInstance::from_named(
            names(&["x"]),
            names(&["0", "1"]),
            vec![(names(&["x"]), tuples(&[&["0"], &["1"]]))],
        )
        .unwrap()
    }

    #[test]
    fn instance_size_examples() {
        assert_eq!(unary_instance().instance_size(), 6);

        let i = CspInstance::from_named(
            names(&["x", "y"]),
            names(&["0"]),
            vec![(names(&["x", "y"]), vec![])],
        )
        .unwrap();
        // empty binary relation contributes 2 + 0
        assert_eq!(i.instance_size(), 2 + 1 + 2);
    }

    #[test]
    fn hypergraph_of_deduplicates_scopes() {
        let i = CspInstance::from_named(
            names(&["x", "y"]),
            names(&["0"]),
            vec![
                (names(&["x", "y"]), tuples(&[&["0", "0"]])),
                (names(&["y", "x"]), tuples(&[&["0", "0"]])),
                (names(&["x", "x"]), tuples(&[&["0", "0"]])),
            ],
        )
        .unwrap();
        let h = i.hypergraph_of();
        assert_eq!(h.vertex_names(), i.variables());
        // {x,y} (twice, merged) and the singleton {x}
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn isolated_variables_are_rejected() {
        assert!(CspInstance::from_named(
            names(&["x", "y"]),
            names(&["0"]),
            vec![(names(&["x"]), tuples(&[&["0"]]))],
        )
        .is_err());
    }

    #[test]
    fn projection_examples() {
        let r = Relation::new(2, vec![vec![1, 2], vec![1, 3]]).unwrap();
        let p = r.project(&[0]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.contains(&[1]));

        assert_eq!(r.project(&[0, 1]).unwrap(), r);

        let r2 = Relation::new(2, vec![vec![1, 2], vec![3, 2]]).unwrap();
        let p2 = r2.project(&[1]).unwrap();
        assert_eq!(p2.len(), 1);
        assert!(p2.contains(&[2]));

        assert!(r.project(&[1, 0]).is_err());
        assert!(r.project(&[0, 0]).is_err());
        assert!(r.project(&[2]).is_err());
        assert!(r.project(&[]).is_err());
    }

    #[test]
    fn induced_instance_examples() {
        let i = CspInstance::from_named(
            names(&["x", "y"]),
            names(&["0", "1"]),
            vec![(names(&["x", "y"]), tuples(&[&["0", "1"], &["1", "1"]]))],
        )
        .unwrap();

        let all = i.induced_instance(&VertexSet::full(2)).unwrap();
        assert_eq!(all, i);

        let x = i.variable_set(&["x"]).unwrap();
        let ind = i.induced_instance(&x).unwrap();
        assert_eq!(ind.variables(), &["x".to_string()]);
        assert_eq!(ind.constraints().len(), 1);
        let r = ind.constraints()[0].relation();
        assert_eq!(r.len(), 2);

        assert!(i.induced_instance(&VertexSet::new()).is_err());

        // hypergraph identity
        let hi = ind.hypergraph_of();
        let expect = i.hypergraph_of().induced_subhypergraph(&x).unwrap();
        assert_eq!(hi, expect);
    }

    #[test]
    fn solutions_and_brute_force() {
        let i = unary_instance();
        assert_eq!(i.brute_force_solutions().unwrap().len(), 2);

        let a: Assignment = [("x".to_string(), "0".to_string())].into_iter().collect();
        assert!(i.is_solution(&a).unwrap());
        let partial = Assignment::default();
        assert!(i.is_solution(&partial).is_err());

        let unsat =
            CspInstance::from_named(names(&["x"]), names(&["0"]), vec![(names(&["x"]), vec![])])
                .unwrap();
        assert!(unsat.brute_force_solutions().unwrap().is_empty());
        let a0: Assignment = [("x".to_string(), "0".to_string())].into_iter().collect();
        assert!(!unsat.is_solution(&a0).unwrap());

        assert!(matches!(
            unary_instance().brute_force_solutions_with_cap(1),
            Err(crate::error::Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn repeated_scope_variables_check_consistency() {
        // (x, x) with relation {(0,1)} is unsatisfiable; {(1,1)} is not
        let mk = |ts: Vec<Vec<String>>| {
            CspInstance::from_named(
                names(&["x"]),
                names(&["0", "1"]),
                vec![(names(&["x", "x"]), ts)],
            )
            .unwrap()
        };
        let bad = mk(tuples(&[&["0", "1"]]));
        assert!(bad.brute_force_solutions().unwrap().is_empty());
        let good = mk(tuples(&[&["1", "1"]]));
        assert_eq!(good.brute_force_solutions().unwrap().len(), 1);
    }

    fn directed_path(n: usize) -> RelationalStructure {
        let universe: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
        let edges: Vec<Vec<String>> = (0..n)
            .map(|i| vec![format!("p{i}"), format!("p{}", i + 1)])
            .collect();
        RelationalStructure::new(universe, [("E".to_string(), 2, edges)]).unwrap()
    }

    fn directed_cycle(n: usize) -> RelationalStructure {
        let universe: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let edges: Vec<Vec<String>> = (0..n)
            .map(|i| vec![format!("c{i}"), format!("c{}", (i + 1) % n)])
            .collect();
        RelationalStructure::new(universe, [("E".to_string(), 2, edges)]).unwrap()
    }

    #[test]
    fn homomorphism_reduction() {
        let edge = directed_path(1);
        let i = structures_to_csp(&edge, &edge).unwrap();
        assert_eq!(i.brute_force_solutions().unwrap().len(), 1);

        let loop1 = RelationalStructure::new(
            vec!["s".to_string()],
            [("E".to_string(), 2, tuples(&[&["s", "s"]]))],
        )
        .unwrap();
        let tri = directed_cycle(3);
        let i2 = structures_to_csp(&tri, &loop1).unwrap();
        assert_eq!(i2.brute_force_solutions().unwrap().len(), 1);

        let p2 = directed_path(2);
        let i3 = structures_to_csp(&p2, &tri).unwrap();
        assert_eq!(i3.brute_force_solutions().unwrap().len(), 3);

        // signature mismatch
        let other = RelationalStructure::new(
            vec!["s".to_string()],
            [("F".to_string(), 2, tuples(&[&["s", "s"]]))],
        )
        .unwrap();
        assert!(structures_to_csp(&p2, &other).is_err());
    }
}

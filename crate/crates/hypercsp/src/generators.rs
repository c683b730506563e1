//! Constructors for the named witness objects and seeded random instances.

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csp::{Constraint, CspInstance, Relation};
use crate::error::{invalid, resource_limit, Result};
use crate::hypergraph::Hypergraph;
use crate::weights::fractional_independent_set;

/// Largest `n` accepted by [`generate_hn`]; H_4 already has 70 vertices.
pub const DEFAULT_HN_CAP: usize = 4;
/// Largest domain `n0^q` accepted by [`generate_tight`].
pub const DEFAULT_TIGHT_DOMAIN_CAP: u64 = 10_000;

/// The hypergraph H_n: one vertex `v_S` per n-element subset `S` of
/// `{1, .., 2n}` and one hyperedge `e_i = { v_S : i ∈ S }` per `i`.
/// Vertex `v_S` is named `v` followed by the digits of `S` in order.
pub fn generate_hn(n: usize) -> Result<Hypergraph> {
    generate_hn_with_cap(n, DEFAULT_HN_CAP)
}

pub fn generate_hn_with_cap(n: usize, cap: usize) -> Result<Hypergraph> {
    if n < 1 || n > cap {
        return invalid(format!("n must be between 1 and {cap}"));
    }
    let subsets: Vec<Vec<usize>> = (1..=2 * n).combinations(n).collect();
    let names: Vec<String> = subsets
        .iter()
        .map(|s| format!("v{}", s.iter().join("")))
        .collect();
    let edges: Vec<crate::bitset::VertexSet> = (1..=2 * n)
        .map(|i| {
            subsets
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(&i))
                .map(|(vi, _)| vi)
                .collect()
        })
        .collect();
    Hypergraph::from_indexed(names, edges)
}

/// `k` pairwise disjoint two-vertex edges `{a_i, b_i}`.
pub fn generate_matching(k: usize) -> Result<Hypergraph> {
    if k < 1 {
        return invalid("k must be at least 1");
    }
    let edges = (1..=k)
        .map(|i| vec![format!("a{i}"), format!("b{i}")])
        .collect();
    Hypergraph::from_named_edges(None, edges)
}

/// `n` vertices and the single hyperedge containing all of them.
pub fn generate_universal(n: usize) -> Result<Hypergraph> {
    if n < 1 {
        return invalid("n must be at least 1");
    }
    let vertices: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Hypergraph::from_named_edges(None, vec![vertices])
}

/// A path with `k` edges: vertices `p1..p{k+1}`, edges `{p_i, p_{i+1}}`.
pub fn generate_path(k: usize) -> Result<Hypergraph> {
    if k < 1 {
        return invalid("k must be at least 1");
    }
    let edges = (1..=k)
        .map(|i| vec![format!("p{i}"), format!("p{}", i + 1)])
        .collect();
    Hypergraph::from_named_edges(None, edges)
}

/// An instance over `h` with relations of at most `N = n0^q` tuples and
/// exactly `N^{ρ*(h)}` solutions, built from an optimal fractional
/// independent set `y(v) = p_v / q`: the domain is `{1, .., N}` and the
/// relation of edge `e` is the full product of `{1, .., n0^{p_v}}` over the
/// scope positions.
pub fn generate_tight(h: &Hypergraph, n0: u64) -> Result<CspInstance> {
    generate_tight_with_cap(h, n0, DEFAULT_TIGHT_DOMAIN_CAP)
}

pub fn generate_tight_with_cap(h: &Hypergraph, n0: u64, domain_cap: u64) -> Result<CspInstance> {
    if n0 < 1 {
        return invalid("n0 must be at least 1");
    }
    let (_, y) = fractional_independent_set(h);
    debug_assert!(y.iter().all(|w| !w.is_negative()));
    let q: num_bigint::BigInt = y
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, w| acc.lcm(w.denom()));
    let q = q.to_u64().expect("lcm of small denominators");
    let p: Vec<u64> = y
        .iter()
        .map(|w| {
            let scaled = w * crate::weights::rat_int(q as i64);
            debug_assert!(scaled.denom().is_one());
            scaled.numer().to_u64().expect("small numerator")
        })
        .collect();

    let domain_size = checked_pow(n0, q, domain_cap).ok_or_else(|| {
        crate::error::Error::ResourceLimit(format!(
            "tight-instance domain n0^q = {n0}^{q} exceeds the cap of {domain_cap}"
        ))
    })?;
    let domain: Vec<String> = (1..=domain_size).map(|d| d.to_string()).collect();

    let mut constraints = Vec::new();
    for e in h.edges() {
        let scope: Vec<usize> = e.iter().collect();
        let ranges: Vec<u64> = scope
            .iter()
            .map(|&v| checked_pow(n0, p[v], domain_size).expect("bounded by the domain size"))
            .collect();
        let mut tuples: Vec<Vec<u32>> = vec![Vec::new()];
        for &r in &ranges {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..r as u32).map(move |d| {
                        let mut ext = t.clone();
                        ext.push(d);
                        ext
                    })
                })
                .collect();
        }
        constraints.push(Constraint::new(scope, Relation::new(e.len(), tuples)?)?);
    }
    CspInstance::from_parts(h.vertex_names().to_vec(), domain, constraints)
}

fn checked_pow(base: u64, exp: u64, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > cap {
            return None;
        }
    }
    Some(acc)
}

/// A seeded random instance. Variables are spread round-robin over the
/// constraint scopes so that none is isolated; each possible tuple of a
/// relation is included independently with probability `tuple_density`.
pub fn generate_random(
    seed: u64,
    num_vars: usize,
    domain_size: usize,
    num_constraints: usize,
    max_arity: usize,
    tuple_density: f64,
) -> Result<CspInstance> {
    if num_vars == 0 || domain_size == 0 || num_constraints == 0 || max_arity == 0 {
        return invalid("all size parameters must be positive");
    }
    if !(0.0..=1.0).contains(&tuple_density) {
        return invalid("tuple_density must lie in [0, 1]");
    }
    let mandatory: Vec<Vec<usize>> = (0..num_constraints)
        .map(|j| (j..num_vars).step_by(num_constraints).collect())
        .collect();
    if mandatory.iter().any(|m| m.len() > max_arity) {
        return invalid(format!(
            "{num_constraints} constraints of arity <= {max_arity} cannot cover {num_vars} variables"
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let variables: Vec<String> = (0..num_vars).map(|v| format!("x{v}")).collect();
    let domain: Vec<String> = (0..domain_size).map(|d| d.to_string()).collect();
    let mut constraints = Vec::new();
    for fixed in mandatory {
        let arity = rng.gen_range(fixed.len().max(1)..=max_arity);
        let mut scope = fixed;
        while scope.len() < arity {
            scope.push(rng.gen_range(0..num_vars));
        }
        let mut tuple_count: u64 = 1;
        for _ in 0..arity {
            tuple_count = tuple_count.saturating_mul(domain_size as u64);
            if tuple_count > 100_000 {
                return resource_limit("relation tuple space is too large to enumerate");
            }
        }
        let mut tuples = Vec::new();
        let mut t = vec![0u32; arity];
        'outer: loop {
            if rng.gen::<f64>() < tuple_density {
                tuples.push(t.clone());
            }
            let mut pos = arity;
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                t[pos] += 1;
                if (t[pos] as usize) < domain_size {
                    break;
                }
                t[pos] = 0;
            }
        }
        constraints.push(Constraint::new(
            scope.clone(),
            Relation::new(arity, tuples)?,
        )?);
    }
    CspInstance::from_parts(variables, domain, constraints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_by_cover;
    use crate::weights::{fractional_edge_cover, rat_int};

    #[test]
    fn hn_shapes() {
        let h1 = generate_hn(1).unwrap();
        assert_eq!(h1.vertex_count(), 2);
        assert_eq!(h1.edge_count(), 2);
        assert!(h1.edges().iter().all(|e| e.len() == 1));

        let h2 = generate_hn(2).unwrap();
        assert_eq!(h2.vertex_count(), 6);
        assert_eq!(h2.edge_count(), 4);
        assert!(h2.edges().iter().all(|e| e.len() == 3));

        let h3 = generate_hn(3).unwrap();
        assert_eq!(h3.vertex_count(), 20);
        assert_eq!(h3.edge_count(), 6);
        assert!(h3.edges().iter().all(|e| e.len() == 10));

        assert!(generate_hn(0).is_err());
        assert!(generate_hn(5).is_err());
    }

    #[test]
    fn matching_and_universal_values() {
        let m = generate_matching(3).unwrap();
        let (rho, _) = fractional_edge_cover(&m, &m.full_vertex_set()).unwrap();
        assert_eq!(rho, rat_int(3));

        let u = generate_universal(5).unwrap();
        let (rho, _) = fractional_edge_cover(&u, &u.full_vertex_set()).unwrap();
        assert_eq!(rho, rat_int(1));

        assert!(generate_matching(0).is_err());
        assert!(generate_universal(0).is_err());
        assert_eq!(generate_path(2).unwrap().vertex_count(), 3);
    }

    #[test]
    fn tight_single_edge() {
        let h = Hypergraph::from_named_edges(None, vec![vec!["a".into(), "b".into()]]).unwrap();
        let i = generate_tight(&h, 2).unwrap();
        // q = 1, N = 2: the single relation has 2 tuples and 2 solutions
        assert_eq!(i.constraints().len(), 1);
        assert_eq!(i.constraints()[0].relation().len(), 2);
        assert_eq!(enumerate_by_cover(&i, None).unwrap().len(), 2);

        let i3 = generate_tight(&h, 3).unwrap();
        assert_eq!(enumerate_by_cover(&i3, None).unwrap().len(), 3);
    }

    #[test]
    fn tight_triangle_counts() {
        let tri = Hypergraph::from_named_edges(
            None,
            vec![
                vec!["a".into(), "b".into()],
                vec!["b".into(), "c".into()],
                vec!["a".into(), "c".into()],
            ],
        )
        .unwrap();
        let i = generate_tight(&tri, 2).unwrap();
        // y ≡ 1/2 is the unique optimum: q = 2, N = 4
        assert_eq!(i.domain_size(), 4);
        for c in i.constraints() {
            assert!(c.relation().len() <= 4);
        }
        assert_eq!(enumerate_by_cover(&i, None).unwrap().len(), 8);
        // 3 vars + 4 values + 3 * (2 + 2*4)
        assert_eq!(i.instance_size(), 37);
        let all_ones: crate::csp::Assignment = i
            .variables()
            .iter()
            .map(|v| (v.clone(), "1".to_string()))
            .collect();
        assert!(i.is_solution(&all_ones).unwrap());
    }

    #[test]
    fn tight_relations_respect_the_bound() {
        for h in [generate_hn(2).unwrap(), generate_matching(2).unwrap()] {
            let i = generate_tight(&h, 2).unwrap();
            let n = i.domain_size();
            for c in i.constraints() {
                assert!(c.relation().len() <= n);
            }
        }
        assert!(generate_tight(&generate_hn(2).unwrap(), 0).is_err());
    }

    #[test]
    fn random_generator_basics() {
        let full = generate_random(7, 4, 2, 3, 3, 1.0).unwrap();
        assert_eq!(full.brute_force_solutions().unwrap().len(), 16);

        let empty = generate_random(7, 4, 2, 3, 3, 0.0).unwrap();
        assert!(empty.brute_force_solutions().unwrap().is_empty());

        let a = generate_random(42, 5, 3, 4, 2, 0.5).unwrap();
        let b = generate_random(42, 5, 3, 4, 2, 0.5).unwrap();
        assert_eq!(a, b);
        let c = generate_random(43, 5, 3, 4, 2, 0.5).unwrap();
        assert_ne!(a, c);

        assert!(generate_random(0, 0, 2, 2, 2, 0.5).is_err());
        assert!(generate_random(0, 2, 2, 2, 2, 1.5).is_err());
        // 1 constraint of arity 2 cannot cover 5 variables
        assert!(generate_random(0, 5, 2, 1, 2, 0.5).is_err());
    }
}

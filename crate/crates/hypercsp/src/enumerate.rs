//! Solution enumeration by extending induced-instance solutions one variable
//! at a time.
//!
//! For a variable ordering v_1, .., v_n the run maintains L_j = all solutions
//! of the instance induced by {v_1, .., v_j}, extending each member of
//! L_{j-1} with every domain value of v_j. No fractional cover is computed at
//! run time; the cover number only bounds how large the intermediate lists
//! can get.

use std::collections::HashSet;

use crate::csp::{Assignment, CspInstance};
use crate::error::{invalid, Result};

/// Everything a run produces: the solutions, the intermediate list sizes
/// |L_1|, .., |L_n|, and the number of candidate extension checks performed.
#[derive(Clone, Debug)]
pub struct EnumerationRun {
    pub solutions: Vec<Assignment>,
    pub list_sizes: Vec<usize>,
    pub extension_checks: u64,
}

struct OrderedConstraint<'a> {
    scope: &'a [usize],
    relation: &'a crate::csp::Relation,
    /// scope positions already inside the prefix, in increasing position order
    active_positions: Vec<usize>,
    /// projection of the relation onto `active_positions`
    projection: HashSet<Vec<u32>>,
}

fn resolve_order(i: &CspInstance, order: Option<&[String]>) -> Result<Vec<usize>> {
    match order {
        None => Ok((0..i.variable_count()).collect()),
        Some(names) => {
            if names.len() != i.variable_count() {
                return invalid("order must be a permutation of the variables");
            }
            let mut seen = vec![false; i.variable_count()];
            let mut out = Vec::with_capacity(names.len());
            for n in names {
                let Some(v) = i.variable_index(n) else {
                    return invalid(format!("unknown variable '{n}' in order"));
                };
                if seen[v] {
                    return invalid(format!("variable '{n}' repeated in order"));
                }
                seen[v] = true;
                out.push(v);
            }
            Ok(out)
        }
    }
}

/// Run the prefix-extension enumeration and report solutions, list sizes and
/// the extension-check count.
pub fn enumerate_with_stats(i: &CspInstance, order: Option<&[String]>) -> Result<EnumerationRun> {
    let order = resolve_order(i, order)?;
    let n = order.len();
    let mut rank = vec![usize::MAX; n];
    for (j, &v) in order.iter().enumerate() {
        rank[v] = j;
    }

    let mut cons: Vec<OrderedConstraint> = i
        .constraints()
        .iter()
        .map(|c| OrderedConstraint {
            scope: c.scope(),
            relation: c.relation(),
            active_positions: Vec::new(),
            projection: HashSet::new(),
        })
        .collect();

    // prefix assignments store values per processing position
    let mut current: Vec<Vec<u32>> = vec![Vec::new()];
    let mut list_sizes = Vec::with_capacity(n);
    let mut extension_checks: u64 = 0;
    let domain = i.domain_size() as u32;

    for (j, &vj) in order.iter().enumerate() {
        // refresh the projections of the constraints that mention v_j
        let affected: Vec<usize> = cons
            .iter()
            .enumerate()
            .filter(|(_, c)| c.scope.contains(&vj))
            .map(|(ci, _)| ci)
            .collect();
        for &ci in &affected {
            let c = &mut cons[ci];
            c.active_positions = (0..c.scope.len())
                .filter(|&p| rank[c.scope[p]] <= j)
                .collect();
            c.projection = c
                .relation
                .tuples()
                .map(|t| c.active_positions.iter().map(|&p| t[p]).collect())
                .collect();
        }

        let mut next: Vec<Vec<u32>> = Vec::new();
        for alpha in &current {
            for d in 0..domain {
                extension_checks += 1;
                let value_of = |v: usize| -> u32 {
                    if v == vj {
                        d
                    } else {
                        alpha[rank[v]]
                    }
                };
                let ok = affected.iter().all(|&ci| {
                    let c = &cons[ci];
                    let key: Vec<u32> = c
                        .active_positions
                        .iter()
                        .map(|&p| value_of(c.scope[p]))
                        .collect();
                    c.projection.contains(&key)
                });
                if ok {
                    let mut ext = alpha.clone();
                    ext.push(d);
                    next.push(ext);
                }
            }
        }
        current = next;
        list_sizes.push(current.len());
    }

    let solutions = current
        .iter()
        .map(|tuple| {
            let mut dense = vec![0u32; n];
            for (j, &v) in order.iter().enumerate() {
                dense[v] = tuple[j];
            }
            i.assignment_from_dense(&dense)
        })
        .collect();
    Ok(EnumerationRun {
        solutions,
        list_sizes,
        extension_checks,
    })
}

/// All solutions of `i`, in lexicographic order with respect to `order`
/// (instance variable order by default).
pub fn enumerate_by_cover(i: &CspInstance, order: Option<&[String]>) -> Result<Vec<Assignment>> {
    Ok(enumerate_with_stats(i, order)?.solutions)
}

/// The intermediate list sizes |L_1|, .., |L_n| of a run.
pub fn intermediate_list_sizes(i: &CspInstance, order: Option<&[String]>) -> Result<Vec<usize>> {
    Ok(enumerate_with_stats(i, order)?.list_sizes)
}

/// Solutions as dense value tuples in instance variable order, sorted.
pub(crate) fn enumerate_dense(i: &CspInstance) -> Result<Vec<Vec<u32>>> {
    let order = resolve_order(i, None)?;
    debug_assert!(order.iter().enumerate().all(|(a, &b)| a == b));
    let run = enumerate_with_stats(i, None)?;
    Ok(run
        .solutions
        .iter()
        .map(|a| {
            i.variables()
                .iter()
                .map(|v| i.domain_index(a.get(v).unwrap()).unwrap() as u32)
                .collect()
        })
        .collect())
}

/// A greedy minimum-degree ordering of the variables over the primal graph of
/// the instance's hypergraph; an optional alternative to instance order.
pub fn min_degree_order(i: &CspInstance) -> Vec<String> {
    let h = i.hypergraph_of();
    let adj = {
        let mut a = vec![crate::bitset::VertexSet::new(); h.vertex_count()];
        for e in h.edges() {
            for v in e.iter() {
                a[v].union_with(e);
            }
        }
        for (v, s) in a.iter_mut().enumerate() {
            s.remove(v);
        }
        a
    };
    let n = h.vertex_count();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let (pos, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let deg = remaining
                    .iter()
                    .filter(|&&w| w != v && adj[v].contains(w))
                    .count();
                (deg, v)
            })
            .unwrap();
        out.push(i.variables()[v].clone());
        remaining.remove(pos);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_hn, generate_tight};
    use crate::hypergraph::Hypergraph;
    use std::collections::BTreeSet;

    fn names(ns: &[&str]) -> Vec<String> {
        ns.iter().map(|s| s.to_string()).collect()
    }

    fn triangle() -> Hypergraph {
        Hypergraph::from_named_edges(
            None,
            vec![names(&["a", "b"]), names(&["b", "c"]), names(&["a", "c"])],
        )
        .unwrap()
    }

    #[test]
    fn single_variable_and_unsat() {
        let i = CspInstance::from_named(
            names(&["x"]),
            names(&["0", "1"]),
            vec![(names(&["x"]), vec![vec!["0".into()], vec!["1".into()]])],
        )
        .unwrap();
        assert_eq!(enumerate_by_cover(&i, None).unwrap().len(), 2);
        assert_eq!(intermediate_list_sizes(&i, None).unwrap(), vec![2]);

        let unsat = CspInstance::from_named(
            names(&["x", "y"]),
            names(&["0"]),
            vec![(names(&["x", "y"]), vec![])],
        )
        .unwrap();
        assert!(enumerate_by_cover(&unsat, None).unwrap().is_empty());
        assert_eq!(intermediate_list_sizes(&unsat, None).unwrap(), vec![0, 0]);
    }

    #[test]
    fn tight_triangle_agrees_with_brute_force() {
        let i = generate_tight(&triangle(), 2).unwrap();
        let enumerated = enumerate_by_cover(&i, None).unwrap();
        assert_eq!(enumerated.len(), 8);
        let brute: BTreeSet<_> = i.brute_force_solutions().unwrap().into_iter().collect();
        let ours: BTreeSet<_> = enumerated.into_iter().collect();
        assert_eq!(ours, brute);

        // every prefix obeys the N^{3/2} bound with N = 4
        for s in intermediate_list_sizes(&i, None).unwrap() {
            assert!(s <= 8);
        }
    }

    #[test]
    fn h2_tight_instance_counts() {
        let h2 = generate_hn(2).unwrap();
        let i = generate_tight(&h2, 2).unwrap();
        let n = i.domain_size();
        let count = enumerate_by_cover(&i, None).unwrap().len();
        assert_eq!(count, n * n);
        let brute = i.brute_force_solutions().unwrap().len();
        assert_eq!(count, brute);
    }

    #[test]
    fn order_does_not_change_the_solution_set() {
        let i = generate_tight(&triangle(), 2).unwrap();
        let default: BTreeSet<_> = enumerate_by_cover(&i, None).unwrap().into_iter().collect();
        let reversed: Vec<String> = i.variables().iter().rev().cloned().collect();
        let rev: BTreeSet<_> = enumerate_by_cover(&i, Some(&reversed))
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(default, rev);
        let md = min_degree_order(&i);
        let md_set: BTreeSet<_> = enumerate_by_cover(&i, Some(&md))
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(default, md_set);
    }

    #[test]
    fn bad_orders_are_rejected() {
        let i = generate_tight(&triangle(), 2).unwrap();
        assert!(enumerate_by_cover(&i, Some(&names(&["a", "b"]))).is_err());
        assert!(enumerate_by_cover(&i, Some(&names(&["a", "b", "b"]))).is_err());
        assert!(enumerate_by_cover(&i, Some(&names(&["a", "b", "z"]))).is_err());
    }
}

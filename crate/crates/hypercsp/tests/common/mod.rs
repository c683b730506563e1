//! Shared helpers for the integration suites: named corpus builders, seeded
//! random hypergraphs, and oracles that are independent of the library's own
//! algorithms (vertex-enumeration LP, flood fill, integer power bounds).

#![allow(dead_code)]
// the elimination loop walks two rows of the same matrix at once
#![allow(clippy::needless_range_loop)]

use hypercsp::weights::Rational;
use hypercsp::{Hypergraph, VertexSet};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn hg(edges: &[&[&str]]) -> Hypergraph {
    Hypergraph::from_named_edges(
        None,
        edges
            .iter()
            .map(|e| e.iter().map(|s| s.to_string()).collect())
            .collect(),
    )
    .unwrap()
}

pub fn triangle() -> Hypergraph {
    hg(&[&["a", "b"], &["b", "c"], &["a", "c"]])
}

/// A seeded random hypergraph: up to `max_vertices` names, `1..=max_edges`
/// random nonempty edges, vertices inferred so none is isolated.
pub fn random_hypergraph(seed: u64, max_vertices: usize, max_edges: usize) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_vertices);
    let m = rng.gen_range(1..=max_edges);
    let mut edges = Vec::new();
    for _ in 0..m {
        let mut edge: Vec<String> = (0..n)
            .filter(|_| rng.gen_bool(0.45))
            .map(|v| format!("v{v}"))
            .collect();
        if edge.is_empty() {
            edge.push(format!("v{}", rng.gen_range(0..n)));
        }
        edges.push(edge);
    }
    Hypergraph::from_named_edges(None, edges).unwrap()
}

/// `count <= base^(p/q)`, compared exactly: `count^q <= base^p`.
pub fn within_power_bound(count: u64, base: u64, exponent: &Rational) -> bool {
    assert!(!exponent.is_negative());
    let p: u32 = exponent.numer().try_into().expect("small exponent");
    let q: u32 = exponent.denom().try_into().expect("small exponent");
    BigInt::from(count).pow(q) <= BigInt::from(base).pow(p)
}

/// Solve the square system `a · y = b` exactly; `None` when singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Brute-force optimum of the packing program `max Σ y` over
/// `{ y >= 0 : Σ_{v in e} y_v <= 1 for every edge }`, by enumerating every
/// vertex of the polytope (all square subsystems of tight constraints).
/// Independent of the simplex implementation.
pub fn packing_optimum_oracle(h: &Hypergraph) -> Rational {
    let n = h.vertex_count();
    let mut constraints: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for e in h.edges() {
        let mut row = vec![Rational::zero(); n];
        for v in e.iter() {
            row[v] = Rational::from_integer(1.into());
        }
        constraints.push((row, Rational::from_integer(1.into())));
    }
    for v in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[v] = Rational::from_integer(1.into());
        constraints.push((row, Rational::zero()));
    }
    let feasible = |y: &[Rational]| -> bool {
        y.iter().all(|v| !v.is_negative())
            && h.edges().iter().all(|e| {
                e.iter().map(|v| y[v].clone()).sum::<Rational>() <= Rational::from_integer(1.into())
            })
    };
    let mut best = Rational::zero(); // y = 0 is always feasible
    for subset in (0..constraints.len()).combinations(n) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| constraints[i].0.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| constraints[i].1.clone()).collect();
        if let Some(y) = solve_square(&a, &b) {
            if feasible(&y) {
                let obj: Rational = y.iter().cloned().sum();
                if obj > best {
                    best = obj;
                }
            }
        }
    }
    best
}

/// Flood-fill components of `h` minus `removed`, built directly on a dense
/// adjacency matrix of the primal graph.
pub fn flood_fill_components(h: &Hypergraph, removed: &VertexSet) -> Vec<VertexSet> {
    let n = h.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for e in h.edges() {
        let vs: Vec<usize> = e.iter().collect();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    let mut seen: Vec<bool> = (0..n).map(|v| removed.contains(v)).collect();
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = VertexSet::new();
        let mut queue = vec![start];
        seen[start] = true;
        while let Some(v) = queue.pop() {
            comp.insert(v);
            for w in 0..n {
                if adj[v][w] && !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// All hypergraphs on exactly `k` labeled vertices whose edge sets are
/// inclusion-antichains covering all `k` vertices. Removing an edge that is
/// contained in another edge changes neither the cover numbers nor any of
/// the widths or the game, so these representatives are exhaustive for
/// claims about those quantities.
pub fn antichain_hypergraphs(k: usize, connected_only: bool) -> Vec<Hypergraph> {
    assert!(k <= 5);
    let full: u32 = (1 << k) - 1;
    let mut out = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();

    fn emit(chosen: &[u32], k: usize, full: u32, connected_only: bool, out: &mut Vec<Hypergraph>) {
        if chosen.iter().fold(0, |acc, e| acc | e) != full {
            return;
        }
        let names: Vec<String> = (0..k).map(|v| format!("v{v}")).collect();
        let edges: Vec<VertexSet> = chosen
            .iter()
            .map(|&m| VertexSet::from_mask(m as u64))
            .collect();
        let h = Hypergraph::from_indexed(names, edges).unwrap();
        if !connected_only || h.is_connected() {
            out.push(h);
        }
    }

    fn extend(
        next: u32,
        full: u32,
        k: usize,
        connected_only: bool,
        chosen: &mut Vec<u32>,
        out: &mut Vec<Hypergraph>,
    ) {
        emit(chosen, k, full, connected_only, out);
        for mask in next..=full {
            let incomparable = chosen.iter().all(|&e| e & mask != e && e & mask != mask);
            if incomparable {
                chosen.push(mask);
                extend(mask + 1, full, k, connected_only, chosen, out);
                chosen.pop();
            }
        }
    }

    extend(1, full, k, connected_only, &mut chosen, &mut out);
    out
}

//! Enumerating all solutions one variable at a time, with intermediate list
//! sizes bounded by N^{rho*}.
//!
//! Run with: cargo run -p hypercsp --example solution_enumeration

use hypercsp::weights::format_rational;
use hypercsp::{enumerate_with_stats, fractional_edge_cover, generate_tight, Hypergraph};

fn main() {
    let triangle = Hypergraph::from_named_edges(
        None,
        vec![
            vec!["a".into(), "b".into()],
            vec!["b".into(), "c".into()],
            vec!["a".into(), "c".into()],
        ],
    )
    .unwrap();
    let (rho_star, _) = fractional_edge_cover(&triangle, &triangle.full_vertex_set()).unwrap();
    println!("triangle: rho* = {}", format_rational(&rho_star));

    for n0 in [2u64, 3, 4] {
        let instance = generate_tight(&triangle, n0).unwrap();
        let n = instance.domain_size();
        let run = enumerate_with_stats(&instance, None).unwrap();
        println!("\ntight instance with N = {n} tuples per relation:");
        println!("  intermediate list sizes |L_j|: {:?}", run.list_sizes);
        println!("  solutions: {} (= N^(3/2))", run.solutions.len());
        println!("  extension checks: {}", run.extension_checks);
        for s in run.solutions.iter().take(4) {
            println!("    {:?}", s.0);
        }
        if run.solutions.len() > 4 {
            println!("    ... and {} more", run.solutions.len() - 4);
        }
    }
}

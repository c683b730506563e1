//! Solving and streaming over a fractional hypertree decomposition.
//!
//! Run with: cargo run -p hypercsp --example decomposed_solving

use hypercsp::decomp::exact_fractional_width;
use hypercsp::weights::format_rational;
use hypercsp::{enumerate_all, generate_random, solve, solve_with_decomposition};

fn main() {
    let instance = generate_random(7, 6, 3, 4, 3, 0.6).unwrap();
    println!(
        "random instance: {} variables, domain size {}, {} constraints, size {}",
        instance.variable_count(),
        instance.domain_size(),
        instance.constraints().len(),
        instance.instance_size(),
    );

    let h = instance.hypergraph_of();
    let (fhw, d) = exact_fractional_width(&h).unwrap();
    println!(
        "fractional hypertree width of its hypergraph: {}",
        format_rational(&fhw)
    );
    println!("decomposition bags:");
    for t in d.base.preorder() {
        let bag: Vec<String> = d
            .base
            .bag(t)
            .iter()
            .map(|v| h.vertex_name(v).to_string())
            .collect();
        println!(
            "  {} (guard weight {}): {{{}}}",
            d.base.id(t),
            format_rational(&d.guards[t].weight()),
            bag.join(",")
        );
    }

    match solve_with_decomposition(&instance, &d).unwrap() {
        Some(solution) => {
            assert!(instance.is_solution(&solution).unwrap());
            println!("\nfirst solution: {:?}", solution.0);
        }
        None => println!("\nunsatisfiable"),
    }
    assert_eq!(solve(&instance).unwrap().is_some(), {
        let mut s = enumerate_all(&instance, &d).unwrap();
        s.next().is_some()
    });

    let mut stream = enumerate_all(&instance, &d).unwrap();
    println!("\nstreaming solutions (lexicographic in the preorder-induced variable order):");
    for (k, s) in stream.by_ref().take(5).enumerate() {
        println!("  #{k}: {:?}", s.0);
    }
    let rest = stream.count();
    println!("  ... {rest} more");
}

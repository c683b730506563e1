//! Conjunctive-query answering: projecting the solution set of an instance
//! onto a set of output variables, with polynomial delay and no duplicates.
//!
//! The query below asks for pairs (x, z) such that some y makes (x,y) and
//! (y,z) edges of a small directed graph - a two-step reachability query.
//!
//! Run with: cargo run -p hypercsp --example conjunctive_queries

use hypercsp::decomp::exact_fractional_width;
use hypercsp::{project_solutions, CspInstance};

fn main() {
    // database: edge relation of a directed graph on {1,2,3,4}
    let edges = vec![
        vec!["1".to_string(), "2".to_string()],
        vec!["2".to_string(), "3".to_string()],
        vec!["2".to_string(), "4".to_string()],
        vec!["4".to_string(), "1".to_string()],
    ];
    // query Q(x, z) :- E(x, y), E(y, z)
    let instance = CspInstance::from_named(
        vec!["x".into(), "y".into(), "z".into()],
        vec!["1".into(), "2".into(), "3".into(), "4".into()],
        vec![
            (vec!["x".into(), "y".into()], edges.clone()),
            (vec!["y".into(), "z".into()], edges),
        ],
    )
    .unwrap();

    let h = instance.hypergraph_of();
    let (fhw, d) = exact_fractional_width(&h).unwrap();
    println!(
        "query hypergraph: path of two edges, fhw = {}",
        hypercsp::format_rational(&fhw)
    );

    println!("\nanswers Q(x, z):");
    for row in project_solutions(&instance, &d, &["x".to_string(), "z".to_string()]).unwrap() {
        println!(
            "  x = {}, z = {}",
            row.get("x").unwrap(),
            row.get("z").unwrap()
        );
    }

    println!("\nall witnesses (x, y, z):");
    for row in hypercsp::enumerate_all(&instance, &d).unwrap() {
        println!(
            "  x = {}, y = {}, z = {}",
            row.get("x").unwrap(),
            row.get("y").unwrap(),
            row.get("z").unwrap()
        );
    }
}

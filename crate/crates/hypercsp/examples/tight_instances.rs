//! Instances that meet the N^{rho*} solution bound exactly, built from an
//! optimal fractional independent set.
//!
//! Run with: cargo run -p hypercsp --example tight_instances

use hypercsp::weights::format_rational;
use hypercsp::{
    enumerate_by_cover, fractional_edge_cover, generate_hn, generate_tight, Hypergraph,
};

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

    for (name, h, n0) in [
        (
            "single edge",
            Hypergraph::from_named_edges(None, vec![vec!["a".into(), "b".into()]]).unwrap(),
            3,
        ),
        ("triangle", triangle.clone(), 2),
        ("triangle", triangle, 3),
        ("H_2", generate_hn(2).unwrap(), 2),
    ] {
        let (rho, _) = fractional_edge_cover(&h, &h.full_vertex_set()).unwrap();
        let instance = generate_tight(&h, n0).unwrap();
        let n = instance.domain_size();
        let max_rel = instance
            .constraints()
            .iter()
            .map(|c| c.relation().len())
            .max()
            .unwrap();
        let count = enumerate_by_cover(&instance, None).unwrap().len();
        println!("{name} (n0 = {n0}): rho* = {}", format_rational(&rho));
        println!("  domain size N = {n}, largest relation = {max_rel} (<= N)");
        println!("  solutions = {count} = N^rho* exactly\n");
        assert!(max_rel <= n);
    }
}

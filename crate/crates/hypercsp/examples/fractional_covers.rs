//! Fractional edge covers and fractional independent sets.
//!
//! Run with: cargo run -p hypercsp --example fractional_covers

use hypercsp::weights::format_rational;
use hypercsp::{
    fractional_edge_cover, fractional_independent_set, generate_hn, generate_matching,
    integral_edge_cover, Hypergraph,
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

    for (name, h) in [
        ("triangle".to_string(), triangle),
        ("H_2".to_string(), generate_hn(2).unwrap()),
        ("H_3".to_string(), generate_hn(3).unwrap()),
        (
            "matching of 3 edges".to_string(),
            generate_matching(3).unwrap(),
        ),
    ] {
        let all = h.full_vertex_set();
        let (rho_star, cover) = fractional_edge_cover(&h, &all).unwrap();
        let (alpha_star, _) = fractional_independent_set(&h);
        let (rho, _) = integral_edge_cover(&h, &all).unwrap();
        println!(
            "{name}: |V| = {}, |E| = {}",
            h.vertex_count(),
            h.edge_count()
        );
        println!(
            "  fractional edge cover number rho* = {}",
            format_rational(&rho_star)
        );
        println!(
            "  fractional independent set  alpha* = {}",
            format_rational(&alpha_star)
        );
        println!("  integral edge cover number   rho  = {rho}");
        assert_eq!(rho_star, alpha_star, "LP duality");
        print!("  optimal cover:");
        for (e, w) in cover.weights().iter().enumerate() {
            if w > &hypercsp::weights::rat_int(0) {
                print!(
                    " {}={}",
                    h.edge_names(h.edge(e)).join(""),
                    format_rational(w)
                );
            }
        }
        println!("\n");
    }
}

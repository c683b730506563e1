//! Exact tree width, generalized hypertree width, and fractional hypertree
//! width on a small corpus, with validated witness decompositions.
//!
//! Run with: cargo run -p hypercsp --example width_measures

use hypercsp::decomp::{
    exact_fractional_width, exact_generalized_width, exact_tree_width, validate_fractional,
};
use hypercsp::weights::format_rational;
use hypercsp::{generate_hn, generate_matching, generate_universal, Hypergraph};

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
        (
            "one edge containing every vertex".to_string(),
            generate_universal(5).unwrap(),
        ),
        (
            "matching of 3 disjoint edges".to_string(),
            generate_matching(3).unwrap(),
        ),
        ("triangle".to_string(), triangle),
        ("H_2".to_string(), generate_hn(2).unwrap()),
    ] {
        let (tw, _) = exact_tree_width(&h).unwrap();
        let (ghw, _) = exact_generalized_width(&h).unwrap();
        let (fhw, witness) = exact_fractional_width(&h).unwrap();
        println!("{name}:");
        println!("  tw  = {}", format_rational(&tw));
        println!("  ghw = {}", format_rational(&ghw));
        println!("  fhw = {}", format_rational(&fhw));

        let report = validate_fractional(&h, &witness).unwrap();
        assert!(report.valid);
        println!(
            "  fhw witness: {} bags, width {}, special condition: {}",
            witness.base.node_count(),
            format_rational(&report.width),
            report.special_condition.unwrap(),
        );
        for t in witness.base.preorder() {
            let bag: Vec<String> = witness
                .base
                .bag(t)
                .iter()
                .map(|v| h.vertex_name(v).to_string())
                .collect();
            println!("    bag {}: {{{}}}", witness.base.id(t), bag.join(","));
        }
        println!();
    }
}

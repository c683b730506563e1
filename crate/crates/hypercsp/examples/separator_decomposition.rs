//! Building a fractional hypertree decomposition from balanced separators,
//! then validating it and printing its JSON wire format.
//!
//! Run with: cargo run -p hypercsp --example separator_decomposition

use hypercsp::decomp::Decomposition;
use hypercsp::json::decomposition_to_string;
use hypercsp::weights::{format_rational, rat_int};
use hypercsp::{
    army_width, balanced_separator, decompose_by_separators, generate_hn, validate_fractional,
    FractionalWeighting,
};

fn main() {
    let h2 = generate_hn(2).unwrap();
    let aw = army_width(&h2).unwrap();
    println!("H_2: army width = {}", format_rational(&aw));

    // a balanced separator for the uniform unit weighting
    let gamma =
        FractionalWeighting::from_edge_weights(&h2, (0..h2.edge_count()).map(|e| (e, rat_int(1))))
            .unwrap();
    let sigma = balanced_separator(&h2, &gamma, &rat_int(2))
        .unwrap()
        .unwrap();
    let blocked = sigma.blocked_set(&h2);
    let names: Vec<&str> = blocked.iter().map(|v| h2.vertex_name(v)).collect();
    println!(
        "balanced separator of weight {} blocks {{{}}}",
        format_rational(&sigma.weight()),
        names.join(",")
    );
    for comp in h2.components(&blocked) {
        println!(
            "  residual component of gamma-weight {}",
            format_rational(&gamma.restricted_weight(&h2, &comp))
        );
    }

    // the recursive construction at the army width
    let d = decompose_by_separators(&h2, &aw)
        .unwrap()
        .expect("aw suffices");
    let report = validate_fractional(&h2, &d).unwrap();
    assert!(report.valid);
    assert_eq!(report.special_condition, Some(true));
    println!(
        "\nseparator-built decomposition: {} bags, width {} (bound 3*aw+2 = {})",
        d.base.node_count(),
        format_rational(&report.width),
        format_rational(&(rat_int(3) * &aw + rat_int(2))),
    );
    println!(
        "\nwire format:\n{}",
        decomposition_to_string(&h2, &Decomposition::Fractional(d))
    );
}

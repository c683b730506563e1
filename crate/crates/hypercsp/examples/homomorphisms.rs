//! The homomorphism problem for relational structures, reduced to a CSP:
//! variables are the left universe, the domain is the right universe, and
//! solutions are exactly the homomorphisms.
//!
//! Run with: cargo run -p hypercsp --example homomorphisms

use hypercsp::{enumerate_by_cover, solve, structures_to_csp, RelationalStructure};

fn directed_cycle(n: usize) -> RelationalStructure {
    let universe: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let edges: Vec<Vec<String>> = (0..n)
        .map(|i| vec![format!("c{i}"), format!("c{}", (i + 1) % n)])
        .collect();
    RelationalStructure::new(universe, [("E".to_string(), 2, edges)]).unwrap()
}

fn directed_path(n: usize) -> RelationalStructure {
    let universe: Vec<String> = (0..=n).map(|i| format!("p{i}")).collect();
    let edges: Vec<Vec<String>> = (0..n)
        .map(|i| vec![format!("p{i}"), format!("p{}", i + 1)])
        .collect();
    RelationalStructure::new(universe, [("E".to_string(), 2, edges)]).unwrap()
}

fn main() {
    // a path of two edges maps into a directed 3-cycle in three ways
    let instance = structures_to_csp(&directed_path(2), &directed_cycle(3)).unwrap();
    let homs = enumerate_by_cover(&instance, None).unwrap();
    println!("homomorphisms from a 2-edge path into the directed 3-cycle:");
    for h in &homs {
        println!("  {:?}", h.0);
    }
    assert_eq!(homs.len(), 3);

    // C_4 -> C_2: walk the 2-cycle; C_3 -> C_2: impossible (odd cycle)
    let c4_to_c2 = structures_to_csp(&directed_cycle(4), &directed_cycle(2)).unwrap();
    println!(
        "\nC_4 -> C_2: {}",
        match solve(&c4_to_c2).unwrap() {
            Some(h) => format!("homomorphism found: {:?}", h.0),
            None => "no homomorphism".to_string(),
        }
    );
    let c3_to_c2 = structures_to_csp(&directed_cycle(3), &directed_cycle(2)).unwrap();
    println!(
        "C_3 -> C_2: {}",
        match solve(&c3_to_c2).unwrap() {
            Some(h) => format!("homomorphism found: {:?}", h.0),
            None => "no homomorphism".to_string(),
        }
    );
}

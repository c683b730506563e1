//! The robber-and-army pursuit game: blockable families, winners at given
//! budgets, the army width, and the sandwich aw <= fhw <= 3*aw + 2.
//!
//! Run with: cargo run -p hypercsp --example robber_and_army

use hypercsp::decomp::exact_fractional_width;
use hypercsp::weights::{format_rational, rat, rat_int};
use hypercsp::{army_width, general_wins, GameArena, Hypergraph, VertexSet};

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

    println!("triangle, budget 1:");
    let arena = GameArena::new(&triangle, &rat_int(1)).unwrap();
    println!("  maximal blockable sets:");
    for s in arena.blockable() {
        let names: Vec<&str> = s.iter().map(|v| triangle.vertex_name(v)).collect();
        println!("    {{{}}}", names.join(","));
    }
    println!("  general wins: {}", arena.general_wins());

    println!("\ntriangle, budget 3/2:");
    let arena = GameArena::new(&triangle, &rat(3, 2)).unwrap();
    println!("  general wins: {}", arena.general_wins());
    let mv = arena
        .winning_move(&triangle, &VertexSet::new(), 0)
        .unwrap()
        .expect("winning opening move");
    let names: Vec<&str> = mv.iter().map(|v| triangle.vertex_name(v)).collect();
    println!("  winning opening move: block {{{}}}", names.join(","));

    let aw = army_width(&triangle).unwrap();
    println!("  army width: {}", format_rational(&aw));

    println!("\nsandwich aw <= fhw <= 3*aw + 2 on a small corpus:");
    for (name, h) in [
        ("triangle", triangle.clone()),
        ("H_2", hypercsp::generate_hn(2).unwrap()),
        ("matching_3", hypercsp::generate_matching(3).unwrap()),
        ("path_4", hypercsp::generate_path(4).unwrap()),
    ] {
        let aw = army_width(&h).unwrap();
        let (fhw, _) = exact_fractional_width(&h).unwrap();
        let upper = rat_int(3) * &aw + rat_int(2);
        assert!(aw <= fhw && fhw <= upper);
        assert!(general_wins(&h, &fhw).unwrap());
        println!(
            "  {name}: aw = {}, fhw = {}, 3*aw+2 = {}",
            format_rational(&aw),
            format_rational(&fhw),
            format_rational(&upper),
        );
    }
}

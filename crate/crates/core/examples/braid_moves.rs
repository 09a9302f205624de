//! Flip and shuffle moves, and the braid graph on all efficient fillings
//! of a core.

use bnk::braid::{flip_word, shuffle_word};
use bnk::{braid_graph, parse_word, staircase, Diagram, Letter, SplittingType};

fn show(w: &[Letter]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn main() -> bnk::Result<()> {
    let w = parse_word("3,2,1,2,3")?;
    println!("S^2 (3,2,1,2,3) = ({})", show(&shuffle_word(&w, 2, 3)?));
    match flip_word(&w, 1, 3) {
        Ok(v) => println!("F^1 = ({})", show(&v)),
        Err(e) => println!("F^1: {e}"),
    }

    let small = braid_graph(&Diagram::new(vec![4, 2, 1, 1])?, 3, None)?;
    println!("\n[4,2,1,1], k = 3:");
    println!("{}", serde_json::to_string(&small.to_json()).unwrap());

    let e: SplittingType = "-2,0,0,2".parse()?;
    let g = braid_graph(&staircase(&e), 4, None)?;
    println!("\n({e}): {} nodes, {} edges, connected = {}", g.nodes.len(), g.edges.len(), g.is_connected());
    for edge in &g.edges {
        println!("  {} -- {}  {}", g.nodes[edge.from], g.nodes[edge.to], edge.mv.tag());
    }
    Ok(())
}

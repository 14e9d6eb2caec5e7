// Evaluate closed webs given in the JSON dump format.

use c2_theta::webcalc::{dump_web, evaluate, parse_web};

const THETA_GRAPH: &str = r#"{
  "vertices": [
    {"kind": "trivalent", "half_edges": [0, 1, 2]},
    {"kind": "trivalent", "half_edges": [3, 4, 5]}
  ],
  "pairings": [[0, 4], [1, 3], [2, 5]]
}"#;

const TADPOLES: &str = r#"{
  "vertices": [
    {"kind": "trivalent", "half_edges": [0, 1, 2]},
    {"kind": "trivalent", "half_edges": [3, 4, 5]}
  ],
  "pairings": [[0, 1], [3, 4], [2, 5]]
}"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (name, src) in [("theta graph", THETA_GRAPH), ("tadpoles", TADPOLES)] {
        let w = parse_web(src)?;
        let v = evaluate(&w)?;
        println!("{name}: {} vertices, value {v}", w.vertex_count());
    }
    let w = parse_web(THETA_GRAPH)?;
    assert_eq!(parse_web(&dump_web(&w))?, w);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}

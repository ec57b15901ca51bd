//! The derived edge automaton against its stored serialisation.
//! Set `PENTAROT_BLESS=1` to rewrite the golden file.

use pentarot::symbolic;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/edge_automaton.json");

#[test]
fn edge_automaton_matches_golden() {
    let g = symbolic::build_edge_automaton().unwrap();
    let got = serde_json::to_string_pretty(&g.to_json()).unwrap() + "\n";
    if std::env::var_os("PENTAROT_BLESS").is_some() {
        std::fs::write(GOLDEN, &got).unwrap();
    }
    let want = std::fs::read_to_string(GOLDEN).expect("golden file present");
    assert_eq!(got, want);
}

#[test]
fn golden_contains_the_5r_rule() {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(GOLDEN).unwrap()).unwrap();
    let edges = v["edges"].as_array().unwrap();
    for target in ["3L", "0R"] {
        assert!(edges.iter().any(|e| e[0] == "5R" && e[2] == target), "5R -> {target}");
    }
}

use std::collections::BTreeSet;
use std::sync::Arc;

use csf_core::quiver::build_borel_quiver;
use csf_core::{CartanData, ReducedWord, VertexId};

fn golden() -> BTreeSet<(VertexId, VertexId, i64)> {
    let text = include_str!("data/a3_borel_arrows.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            let weight = match f[2] {
                "solid" => 2,
                "dashed" => 1,
                other => panic!("bad style {other}"),
            };
            (f[0].parse().unwrap(), f[1].parse().unwrap(), weight)
        })
        .collect()
}

#[test]
fn a3_borel_quiver_matches_golden_arrows() {
    let cartan = Arc::new(CartanData::from_label("A3").unwrap());
    let word = ReducedWord::new(cartan, vec![1, 2, 1, 3, 2, 1]).unwrap();
    let seed = build_borel_quiver(&word).unwrap();
    let got: BTreeSet<_> = seed.arrows().into_iter().collect();
    assert_eq!(got, golden());

    let frozen: BTreeSet<String> = seed
        .vertices()
        .iter()
        .filter(|v| v.frozen)
        .map(|v| v.id.to_string())
        .collect();
    let expected: BTreeSet<String> = ["1.0", "2.0", "3.0", "1.3", "2.2", "3.1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(frozen, expected);
}

//! JSON and Graphviz DOT serializations of seeds.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{Grading, Gradings};
use crate::quiver::{arrow_magnitude, Seed};

#[derive(Debug, Serialize)]
struct VertexJson<'a> {
    id: String,
    row: usize,
    kind: &'static str,
    frozen: bool,
    d: i64,
    position: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    grading: Option<&'a Grading>,
}

#[derive(Debug, Serialize)]
struct SeedJson<'a> {
    #[serde(rename = "type")]
    kind: String,
    rank: usize,
    space: &'static str,
    word: &'a [i64],
    vertices: Vec<VertexJson<'a>>,
    b2: &'a [Vec<i64>],
}

/// Serializes a seed, with gradings attached when given.
pub fn seed_to_json(seed: &Seed, gradings: Option<&Gradings>) -> Result<serde_json::Value> {
    let (kind, rank) = seed
        .cartan()
        .map_or((String::new(), 0), |c| (c.kind().letter().to_string(), c.rank()));
    let vertices = seed
        .vertices()
        .iter()
        .map(|v| VertexJson {
            id: v.id.to_string(),
            row: v.row,
            kind: v.kind.as_str(),
            frozen: v.frozen,
            d: v.multiplier,
            position: v.position,
            grading: gradings.and_then(|g| g.get(&v.id)),
        })
        .collect();
    let doc = SeedJson {
        kind,
        rank,
        space: seed.space().as_str(),
        word: seed.word(),
        vertices,
        b2: seed.b2(),
    };
    serde_json::to_value(doc).map_err(|e| Error::Internal(e.to_string()))
}

pub fn seed_to_json_string(seed: &Seed, gradings: Option<&Gradings>) -> Result<String> {
    let value = seed_to_json(seed, gradings)?;
    serde_json::to_string_pretty(&value).map_err(|e| Error::Internal(e.to_string()))
}

/// Graphviz rendering: frozen vertices are boxes, unfrozen ones circles;
/// vertices with the smallest multiplier are white and the rest black;
/// half-arrows are dashed.
pub fn seed_to_dot(seed: &Seed) -> String {
    let mut out = String::from("digraph seed {\n  node [style=filled];\n");
    let dmin = seed.vertices().iter().map(|v| v.multiplier).min().unwrap_or(1);
    for v in seed.vertices() {
        let shape = if v.frozen { "box" } else { "circle" };
        let (fill, font) = if v.multiplier == dmin {
            ("white", "black")
        } else {
            ("black", "white")
        };
        let _ = writeln!(
            out,
            "  \"{}\" [shape={shape}, fillcolor={fill}, fontcolor={font}];",
            v.id
        );
    }
    for (from, to, weight) in seed.arrows() {
        let (Ok(f), Ok(t)) = (seed.vertex(&from), seed.vertex(&to)) else {
            continue;
        };
        let full = 2 * arrow_magnitude(t.multiplier, f.multiplier);
        let mut attrs = Vec::new();
        if weight % full != 0 {
            attrs.push("style=dashed".to_string());
        }
        if weight != full && weight * 2 != full {
            attrs.push(format!("label=\"{}\"", weight as f64 / full as f64));
        }
        let attrs = if attrs.is_empty() {
            String::new()
        } else {
            format!(" [{}]", attrs.join(", "))
        };
        let _ = writeln!(out, "  \"{from}\" -> \"{to}\"{attrs};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::assign_conf3_gradings;
    use crate::quiver::build_borel_quiver;
    use crate::root_system::CartanData;
    use crate::word::ReducedWord;
    use std::sync::Arc;

    fn a3_word() -> ReducedWord {
        ReducedWord::new(Arc::new(CartanData::from_label("A3").unwrap()), vec![1, 2, 1, 3, 2, 1]).unwrap()
    }

    #[test]
    fn json_shape() {
        let (seed, g) = assign_conf3_gradings(&a3_word()).unwrap();
        let v = seed_to_json(&seed, Some(&g)).unwrap();
        assert_eq!(v["type"], "A");
        assert_eq!(v["rank"], 3);
        assert_eq!(v["vertices"].as_array().unwrap().len(), 12);
        assert_eq!(v["b2"].as_array().unwrap().len(), 12);
        let circle = v["vertices"]
            .as_array()
            .unwrap()
            .iter()
            .find(|x| x["id"] == "1°")
            .unwrap();
        assert_eq!(circle["kind"], "edge12");
        assert_eq!(circle["grading"]["lambda"], serde_json::json!([0, 0, 1]));
        assert_eq!(circle["grading"]["mu"], serde_json::json!([1, 0, 0]));
    }

    #[test]
    fn dot_shape() {
        let seed = build_borel_quiver(&a3_word()).unwrap();
        let dot = seed_to_dot(&seed);
        assert_eq!(dot.matches("shape=").count(), 9);
        assert_eq!(dot.matches("shape=box").count(), 6);
        assert_eq!(dot.matches("->").count(), 16);
        assert_eq!(dot.matches("style=dashed").count(), 4);
        assert_eq!(dot, seed_to_dot(&seed));
    }
}

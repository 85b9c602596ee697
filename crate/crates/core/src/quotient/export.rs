//! DOT and JSON renderings of a quotient graph.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::graph::{QuotientGraph, VertexTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub level: usize,
    pub orbit_rep: String,
    pub orbit_size: usize,
    pub stab_order: u64,
    pub is_cuspidal: bool,
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: usize,
    pub level: usize,
    pub orbit_rep: String,
    pub orbit_size: usize,
    pub stab_order: u64,
    pub origin: usize,
    pub terminus: usize,
}

/// Serializable snapshot of a [`QuotientGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub ideal: String,
    pub q: u32,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    /// Vertex ids of each half-line, outwards from the junction.
    pub half_lines: Vec<Vec<usize>>,
    pub finite_edges: Vec<usize>,
    pub betti: usize,
}

pub fn tag_label(t: &VertexTag) -> String {
    match t {
        VertexTag::V(l) => format!("v_{l}"),
        VertexTag::U(m) => format!("u_{m}"),
        VertexTag::W => "w".into(),
    }
}

impl GraphRecord {
    pub fn from_graph(g: &QuotientGraph) -> Self {
        GraphRecord {
            ideal: g.modulus().generator().to_string(),
            q: g.field().q(),
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexRecord {
                    id: v.id,
                    level: v.level,
                    orbit_rep: v.orbit_rep.to_string(),
                    orbit_size: v.orbit_size,
                    stab_order: v.stab_order,
                    is_cuspidal: v.is_cuspidal,
                    tags: v.tags.iter().map(tag_label).collect(),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.id,
                    level: e.level,
                    orbit_rep: e.orbit_rep.to_string(),
                    orbit_size: e.orbit_size,
                    stab_order: e.stab_order,
                    origin: e.origin,
                    terminus: e.terminus,
                })
                .collect(),
            half_lines: g.half_lines().iter().map(|h| h.vertices.clone()).collect(),
            finite_edges: g.finite_edges().to_vec(),
            betti: g.betti(),
        }
    }
}

pub fn to_json(g: &QuotientGraph) -> String {
    serde_json::to_string_pretty(&GraphRecord::from_graph(g)).expect("serializable")
}

pub fn to_dot(g: &QuotientGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph quotient {{").unwrap();
    writeln!(out, "  label=\"Gamma_0({}) q={}\";", g.modulus().generator(), g.field().q()).unwrap();
    for v in g.vertices() {
        let style = if v.is_cuspidal { ", style=dashed" } else { "" };
        writeln!(out, "  n{} [label=\"L{}:{}[stab={}]\"{}];", v.id, v.level, v.orbit_rep, v.stab_order, style).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.origin, e.terminus, e.stab_order).unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

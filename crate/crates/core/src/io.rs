//! File formats: Graph JSON (with labels and a params echo), DIMACS `.col`,
//! and DOT for graphs and booster trees.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Coloring, Graph};
use crate::pipelines::{BoosterTree, NodeKind};
use crate::rational::{self, Rational};

/// Version stamped into every JSON document and CSV the crate writes.
pub const FORMAT_VERSION: u32 = 1;

fn format_version() -> u32 {
    FORMAT_VERSION
}

/// On-disk graph: `{"n", "edges", "weights"?, "labels"?, "params"?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    #[serde(default = "format_version")]
    pub format_version: u32,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            format_version: FORMAT_VERSION,
            n: g.n(),
            edges: g.edges(),
            weights: g
                .weights()
                .map(|w| w.iter().map(rational::format_rational).collect()),
            labels: None,
            params: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn with_params(mut self, params: serde_json::Value) -> Self {
        self.params = Some(params);
        self
    }

    pub fn graph(&self) -> Result<Graph> {
        if let Some(l) = &self.labels {
            if l.len() != self.n {
                return Err(Error::parse(format!(
                    "{} labels for {} vertices",
                    l.len(),
                    self.n
                )));
            }
        }
        let g = Graph::from_edges(self.n, &self.edges)?;
        match &self.weights {
            None => Ok(g),
            Some(w) => {
                let w: Vec<Rational> = w
                    .iter()
                    .map(|s| rational::parse_rational(s))
                    .collect::<Result<_>>()?;
                g.with_weights(w)
            }
        }
    }
}

/// Pretty JSON with a trailing newline, so reruns are byte-identical.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))
}

pub fn read_graph_json(text: &str) -> Result<GraphDocument> {
    let doc: GraphDocument = from_json(text)?;
    doc.graph()?;
    Ok(doc)
}

/// Reads a graph as JSON or DIMACS, whichever the text looks like.
pub fn read_graph_any(text: &str) -> Result<GraphDocument> {
    if text.trim_start().starts_with('{') {
        read_graph_json(text)
    } else {
        Ok(GraphDocument::from_graph(&read_dimacs(text)?))
    }
}

/// DIMACS `.col`: `p edge n m` then `e u v` lines with 1-based vertices.
pub fn write_dimacs(g: &Graph) -> String {
    let mut s = String::new();
    let edges = g.edges();
    writeln!(s, "p edge {} {}", g.n(), edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}

pub fn read_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let bad = |what: &str| Error::parse(format!("DIMACS line {}: {what}", lineno + 1));
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                let _format = tok.next().ok_or_else(|| bad("missing format"))?;
                let count = tok
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| bad("bad vertex count"))?;
                n = Some(count);
            }
            Some("e") => {
                let n = n.ok_or_else(|| bad("edge before problem line"))?;
                let mut end = || {
                    tok.next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .filter(|&v| v >= 1 && v <= n)
                        .ok_or_else(|| bad("bad edge endpoint"))
                };
                let (u, v) = (end()?, end()?);
                if u != v {
                    edges.push((u - 1, v - 1));
                }
            }
            Some(_) => {}
        }
    }
    let n = n.ok_or_else(|| Error::parse("DIMACS input has no problem line"))?;
    Graph::from_edges(n, &edges)
}

/// Undirected DOT, optionally with vertex labels and a coloring.
pub fn graph_to_dot(g: &Graph, labels: Option<&[String]>, coloring: Option<&Coloring>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        let mut attrs = Vec::new();
        if let Some(l) = labels {
            attrs.push(format!("label=\"{}:{}\"", v, l[v].replace('"', "\\\"")));
        }
        if let Some(c) = coloring {
            attrs.push(format!("color={}", c.color[v]));
        }
        if attrs.is_empty() {
            writeln!(s, "  {v};").unwrap();
        } else {
            writeln!(s, "  {v} [{}];", attrs.join(", ")).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(s, "  {u} -- {v};").unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn booster_tree_to_dot(t: &BoosterTree) -> String {
    let mut s = String::from("digraph booster {\n");
    for (i, node) in t.nodes.iter().enumerate() {
        let kind = match node.kind {
            NodeKind::Internal => "internal",
            NodeKind::StableLeaf => "stable",
            NodeKind::NoBoosterLeaf => "no-booster",
            NodeKind::SmallLeaf => "small",
        };
        writeln!(
            s,
            "  n{i} [label=\"{kind}\\ndepth {} floor {}\\n{} vertices, {} edges, {} colors\"];",
            node.depth,
            rational::format_rational(&node.density_floor),
            node.paired.n(),
            node.edge_ids.len(),
            node.colors
        )
        .unwrap();
        for (k, child) in node.children.iter().enumerate() {
            if let Some(c) = child {
                writeln!(s, "  n{i} -> n{c} [label=\"S_{}\"];", k + 1).unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;
    use crate::rational::rat;

    #[test]
    fn json_round_trip() {
        let g = named::cycle(5).with_weights(vec![rat(1, 5); 5]).unwrap();
        let doc = GraphDocument::from_graph(&g).with_labels(vec!["v".into(); 5]);
        let text = to_json(&doc).unwrap();
        assert!(text.contains("\"1/5\""));
        let back = read_graph_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.graph().unwrap(), g);
        let minimal = read_graph_json(r#"{"n": 3, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(minimal.format_version, FORMAT_VERSION);
        assert!(read_graph_json(r#"{"n": 2, "edges": [[0, 5]]}"#).is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let g = named::petersen();
        let text = write_dimacs(&g);
        assert!(text.starts_with("p edge 10 15\n"));
        assert_eq!(read_dimacs(&text).unwrap(), g);
        assert_eq!(
            read_dimacs("c hi\np col 3 1\ne 1 3\n").unwrap().edges(),
            vec![(0, 2)]
        );
        assert!(read_dimacs("e 1 2\n").is_err());
        assert!(read_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert_eq!(read_graph_any(&text).unwrap().n, 10);
    }

    #[test]
    fn dot_output() {
        let dot = graph_to_dot(&named::path(2), Some(&["a".into(), "b".into()]), None);
        assert_eq!(
            dot,
            "graph G {\n  0 [label=\"0:a\"];\n  1 [label=\"1:b\"];\n  0 -- 1;\n}\n"
        );
    }
}

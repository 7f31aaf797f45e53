//! DOT and CSV emitters.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphmetrics::{self, CycleWitness, FiniteGraph};
use crate::homotopy::FunctionGraph;
use crate::hyperspace::HypergraphView;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT; cycle edges and vertices are drawn in red when given.
pub fn graph_to_dot(graph: &FiniteGraph, name: &str, highlight: Option<&CycleWitness>) -> String {
    let mut on_cycle = vec![false; graph.n()];
    let mut cycle_edges = Vec::new();
    if let Some(c) = highlight {
        let vs = c.vertices();
        for (k, &v) in vs.iter().enumerate() {
            on_cycle[v] = true;
            let w = vs[(k + 1) % vs.len()];
            cycle_edges.push((v.min(w), v.max(w)));
        }
        cycle_edges.sort_unstable();
    }
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    for (v, &hit) in on_cycle.iter().enumerate() {
        let style = if hit { ", color=red" } else { "" };
        writeln!(out, "  {v} [label={}{style}];", quote(&graph.label(v))).unwrap();
    }
    for (u, v) in graph.edges() {
        let style = if cycle_edges.binary_search(&(u, v)).is_ok() {
            " [color=red, penwidth=2]"
        } else {
            ""
        };
        writeln!(out, "  {u} -- {v}{style};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn hyperspace_to_dot(view: &HypergraphView, highlight: Option<&CycleWitness>) -> String {
    let name = format!("{} hyperspace", view.family().kind());
    graph_to_dot(view.graph(), &name, highlight)
}

pub fn function_graph_to_dot(fg: &FunctionGraph, highlight: Option<&CycleWitness>) -> String {
    let name = format!("function graph ({})", fg.flavor());
    graph_to_dot(&fg.labeled_graph(), &name, highlight)
}

/// One row of the metrics table. Undefined quantities are left empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricsRow {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub girth: Option<usize>,
    pub longest_cycle: Option<usize>,
    pub domination_number: Option<usize>,
    pub radius: Option<usize>,
    pub diameter: Option<usize>,
}

impl MetricsRow {
    /// Computes every metric; the exact searches are skipped (left empty)
    /// when the graph exceeds their vertex budgets.
    pub fn compute(name: &str, graph: &FiniteGraph, max_cycle_vertices: usize, max_dominating_vertices: usize) -> Self {
        let connected = graph.is_connected();
        MetricsRow {
            name: name.to_string(),
            vertices: graph.n(),
            edges: graph.edge_count(),
            components: graph.component_count(),
            girth: graphmetrics::girth(graph).map(|c| c.len()),
            longest_cycle: graphmetrics::longest_cycle(graph, max_cycle_vertices)
                .ok()
                .flatten()
                .map(|c| c.len()),
            domination_number: graphmetrics::minimum_dominating_set(graph, max_dominating_vertices)
                .ok()
                .map(|d| d.len()),
            radius: connected.then(|| graphmetrics::radius(graph).ok()).flatten(),
            diameter: connected.then(|| graphmetrics::diameter(graph).ok()).flatten(),
        }
    }
}

pub fn metrics_csv(rows: &[MetricsRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::invalid(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_marks_cycle() {
        let g = FiniteGraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let c = graphmetrics::girth(&g).unwrap();
        let dot = graph_to_dot(&g, "t", Some(&c));
        assert!(dot.starts_with("graph \"t\" {"));
        assert_eq!(dot.matches("penwidth").count(), 3);
        assert!(dot.contains("2 -- 3;"));
    }

    #[test]
    fn csv_report() {
        let path = FiniteGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let split = FiniteGraph::new(2, []).unwrap();
        let rows = [
            MetricsRow::compute("path", &path, 20, 64),
            MetricsRow::compute("split", &split, 20, 64),
        ];
        let text = metrics_csv(&rows).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "name,vertices,edges,components,girth,longest_cycle,domination_number,radius,diameter"
        );
        assert_eq!(lines[1], "path,3,2,1,,,1,1,2");
        assert_eq!(lines[2], "split,2,0,2,,,2,,");
    }
}

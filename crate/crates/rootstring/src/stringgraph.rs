//! Oriented labeled diagrams of Phi-strings and their deterministic DOT
//! rendering.
//!
//! Nodes are the members of a string; an arrow labeled `alpha` points from
//! `nu_1` to `nu_2` exactly when `nu_2 - nu_1 = alpha` for some `alpha` in
//! `phi`. For a base outside `span(phi)` the minimum-level root is the
//! unique source and every member is reachable from it.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::rootsys::{level_lex, Root, RootSystem};
use crate::strings::StringSet;

/// Directed labeled graph over the members of a string.
#[derive(Debug, Clone)]
pub struct StringGraph {
    /// Members sorted by level, then lexicographically.
    pub(crate) nodes: Vec<Root>,
    /// `(from, to, label)` with node indices and the ambient simple index
    /// of the labeling root.
    pub(crate) edges: Vec<(usize, usize, usize)>,
    pub(crate) phi: BTreeSet<usize>,
    pub(crate) base: Root,
    pub(crate) subsystem_case: bool,
}

impl StringGraph {
    pub fn nodes(&self) -> &[Root] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn phi(&self) -> &BTreeSet<usize> {
        &self.phi
    }

    pub fn base(&self) -> &Root {
        &self.base
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.nodes.len()];
        for &(_, to, _) in &self.edges {
            d[to] += 1;
        }
        d
    }

    /// Node indices with in-degree zero.
    pub fn sources(&self) -> Vec<usize> {
        self.in_degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Builds the string graph for a string set produced by `phi_string` or by
/// the closed-form route for the same `(rs, phi)` pair.
pub fn build_string_graph(rs: &RootSystem, s: &StringSet) -> Result<StringGraph> {
    let mut mask = vec![false; rs.rank()];
    for &i in s.phi() {
        if i >= rs.rank() {
            return Err(Error::BadSimpleIndex {
                index: i,
                rank: rs.rank(),
            });
        }
        mask[i] = true;
    }
    for m in s.members() {
        if !m.sub(s.base()).supported_on(&mask) {
            return Err(Error::StringPhiMismatch(m.clone()));
        }
    }
    let mut nodes: Vec<Root> = s.members().iter().cloned().collect();
    nodes.sort_by(level_lex);
    let index: HashMap<&Root, usize> = nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
    let mut edges = Vec::new();
    for (from, nu) in nodes.iter().enumerate() {
        for &i in s.phi() {
            let target = nu.add(&Root::simple(rs.rank(), i));
            if let Some(&to) = index.get(&target) {
                edges.push((from, to, i));
            }
        }
    }
    Ok(StringGraph {
        nodes,
        edges,
        phi: s.phi().clone(),
        base: s.base().clone(),
        subsystem_case: s.is_subsystem_case(),
    })
}

/// Display expression of a node: the base plus its phi-coefficient deltas,
/// e.g. `λ+α1+2α2` (indices 1-based as in the diagram labels).
fn node_label(base: &Root, node: &Root) -> String {
    let delta = node.sub(base);
    let mut out = String::from("λ");
    for (i, &c) in delta.coeffs().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c > 0 { "+" } else { "-" };
        let mag = c.abs();
        out.push_str(sign);
        if mag != 1 {
            out.push_str(&mag.to_string());
        }
        out.push_str(&format!("α{}", i + 1));
    }
    out
}

fn node_id(node: &Root) -> String {
    node.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Deterministic DOT text for a string graph: one node statement per member
/// (identifier = coefficient tuple, label = the `λ+…` expression) and one
/// edge statement per arrow with its simple-root label. Equal graphs yield
/// byte-identical output.
pub fn emit_dot(g: &StringGraph) -> String {
    let mut out = String::new();
    out.push_str("digraph string {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=ellipse];\n");
    for node in &g.nodes {
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\"];\n",
            node_id(node),
            node_label(&g.base, node)
        ));
    }
    for &(from, to, label) in &g.edges {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"a{}\"];\n",
            node_id(&g.nodes[from]),
            node_id(&g.nodes[to]),
            label + 1
        ));
    }
    out.push_str("}\n");
    out
}

/// Structural report over a string graph: unique source, reachability from
/// it, off-source in-degree, and commutativity of squares.
#[derive(Debug, Clone)]
pub struct GraphReport {
    pub pass: bool,
    pub failures: Vec<String>,
    pub source: Option<usize>,
    pub node_count: usize,
    pub edge_count: usize,
}

/// Checks the structural consequences of the no-gaps and unique-minimum
/// facts on a graph. Subsystem-case graphs skip the source checks (they have
/// no distinguished base).
pub fn graph_invariants(g: &StringGraph) -> GraphReport {
    let mut failures = Vec::new();
    let n = g.nodes.len();
    let sources = g.sources();
    let mut source = None;
    if !g.subsystem_case {
        if sources.len() == 1 {
            source = Some(sources[0]);
        } else {
            failures.push(format!(
                "expected a unique source, found {}: {:?}",
                sources.len(),
                sources.iter().map(|&i| g.nodes[i].to_string()).collect::<Vec<_>>()
            ));
        }
        if let Some(src) = source {
            if g.nodes[src] != g.base && g.nodes[src].level() > g.base.level() {
                failures.push(format!(
                    "source {} is not the minimum-level member",
                    g.nodes[src]
                ));
            }
            // Reachability via BFS.
            let mut adj = vec![Vec::new(); n];
            for &(from, to, _) in &g.edges {
                adj[from].push(to);
            }
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([src]);
            seen[src] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            for (i, ok) in seen.iter().enumerate() {
                if !ok {
                    failures.push(format!("node {} unreachable from the source", g.nodes[i]));
                }
            }
            // Off-source nodes must have an incoming arrow (no gaps).
            let deg = {
                let mut d = vec![0usize; n];
                for &(_, to, _) in &g.edges {
                    d[to] += 1;
                }
                d
            };
            for (i, &d) in deg.iter().enumerate() {
                if i != src && d == 0 {
                    failures.push(format!("node {} has in-degree 0 off the source", g.nodes[i]));
                }
            }
        }
    }
    // Squares commute: whenever nu, nu+a, nu+b, nu+a+b are all nodes for
    // distinct a, b in phi, both two-step paths must be present.
    let index: HashMap<&Root, usize> = g.nodes.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let has_edge = |from: usize, to: usize, label: usize| {
        g.edges.iter().any(|&(f, t, l)| f == from && t == to && l == label)
    };
    let phi: Vec<usize> = g.phi.iter().copied().collect();
    let rank = g.base.rank();
    for (vi, nu) in g.nodes.iter().enumerate() {
        for (ai, &a) in phi.iter().enumerate() {
            for &b in phi.iter().skip(ai + 1) {
                let na = nu.add(&Root::simple(rank, a));
                let nb = nu.add(&Root::simple(rank, b));
                let nab = na.add(&Root::simple(rank, b));
                let (Some(&ia), Some(&ib), Some(&iab)) =
                    (index.get(&na), index.get(&nb), index.get(&nab))
                else {
                    continue;
                };
                let ok = has_edge(vi, ia, a)
                    && has_edge(ia, iab, b)
                    && has_edge(vi, ib, b)
                    && has_edge(ib, iab, a);
                if !ok {
                    failures.push(format!("square at {nu} over a{}/a{} does not commute", a + 1, b + 1));
                }
            }
        }
    }
    GraphReport {
        pass: failures.is_empty(),
        failures,
        source,
        node_count: n,
        edge_count: g.edges.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{exceptional_string_fixture, ExceptionalFamily};
    use crate::rootsys::build_root_system;
    use crate::strings::phi_string;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    fn root(v: &[i64]) -> Root {
        Root::new(v.to_vec())
    }

    #[test]
    fn singleton_graph() {
        let a2 = rs("A2");
        let s = phi_string(&a2, &[], &root(&[0, 1])).unwrap();
        let g = build_string_graph(&a2, &s).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert!(graph_invariants(&g).pass);
    }

    #[test]
    fn a_chain_at_n6_is_a_path() {
        let a7 = rs("A7");
        let lam = Root::simple(7, 0);
        let s = phi_string(&a7, &[1, 2, 3, 4, 5, 6], &lam).unwrap();
        let g = build_string_graph(&a7, &s).unwrap();
        assert_eq!(g.node_count(), 7);
        assert_eq!(g.edge_count(), 6);
        let report = graph_invariants(&g);
        assert!(report.pass, "{:?}", report.failures);
        // Path: the labels along the chain are a2..a7 in order.
        let labels: Vec<usize> = g.edges.iter().map(|&(_, _, l)| l).collect();
        assert_eq!(labels, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn b3f4_graph_is_a_chain_with_one_diamond() {
        let f4 = rs("F4");
        let s = exceptional_string_fixture(ExceptionalFamily::B3ToF4);
        let g = build_string_graph(&f4, &s).unwrap();
        assert_eq!(g.node_count(), 8);
        assert_eq!(g.edge_count(), 8);
        let report = graph_invariants(&g);
        assert!(report.pass, "{:?}", report.failures);
        // One node has out-degree 2 (the diamond opening).
        let mut outdeg = vec![0; g.node_count()];
        for &(f, _, _) in g.edges() {
            outdeg[f] += 1;
        }
        assert_eq!(outdeg.iter().filter(|&&d| d == 2).count(), 1);
    }

    #[test]
    fn c3f4_graph_has_fourteen_nodes() {
        let f4 = rs("F4");
        let s = phi_string(&f4, &[0, 1, 2], &root(&[0, 0, 0, 1])).unwrap();
        let g = build_string_graph(&f4, &s).unwrap();
        assert_eq!(g.node_count(), 14);
        let report = graph_invariants(&g);
        assert!(report.pass, "{:?}", report.failures);
        // Edge count follows the pairing rule: one edge per (member, alpha)
        // with member + alpha still in the string.
        let expected: usize = s
            .members()
            .iter()
            .map(|m| {
                (0..3)
                    .filter(|&i| s.contains(&m.add(&Root::simple(4, i))))
                    .count()
            })
            .sum();
        assert_eq!(g.edge_count(), expected);
    }

    #[test]
    fn product_string_graph_passes() {
        let d4 = rs("D4");
        let lam = Root::simple(4, 1);
        let s = phi_string(&d4, &[0, 2, 3], &lam).unwrap();
        let g = build_string_graph(&d4, &s).unwrap();
        assert_eq!(g.node_count(), 8);
        let report = graph_invariants(&g);
        assert!(report.pass, "{:?}", report.failures);
        assert_eq!(report.source, Some(0));
        assert_eq!(g.nodes()[0], lam);
    }

    #[test]
    fn mutilated_graph_fails_invariants() {
        let a3 = rs("A3");
        let lam = Root::simple(3, 0);
        let s = phi_string(&a3, &[1, 2], &lam).unwrap();
        let g = build_string_graph(&a3, &s).unwrap();
        assert!(graph_invariants(&g).pass);
        // Remove the base node: reachability and uniqueness break.
        let mut broken = g.clone();
        broken.nodes.remove(0);
        broken.edges = broken
            .edges
            .into_iter()
            .filter(|&(f, t, _)| f != 0 && t != 0)
            .map(|(f, t, l)| (f - 1, t - 1, l))
            .collect();
        let report = graph_invariants(&broken);
        assert!(!report.pass);
    }

    #[test]
    fn dot_output_is_deterministic_and_complete() {
        let a2 = rs("A2");
        let s = phi_string(&a2, &[0], &root(&[0, 1])).unwrap();
        let g = build_string_graph(&a2, &s).unwrap();
        let d1 = emit_dot(&g);
        let d2 = emit_dot(&g);
        assert_eq!(d1, d2);
        assert_eq!(d1.matches("label=").count(), 3); // two nodes, one edge
        assert!(d1.contains("\"0,1\" [label=\"λ\"];"));
        assert!(d1.contains("\"1,1\" [label=\"λ+α1\"];"));
        assert!(d1.contains("\"0,1\" -> \"1,1\" [label=\"a1\"];"));
    }
}

//! Finite simple graphs, lexicographic products, and finite-scale perfect
//! coloring verification.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::multipath::{BlockKind, NotSquare, ParameterMatrix, PeriodicColoring};

/// Labeled simple graph: vertex count plus an edge set of unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
}

impl FiniteGraph {
    pub fn new(vertices: usize) -> Self {
        FiniteGraph { vertices, edges: BTreeSet::new() }
    }

    pub fn from_edges(
        vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = FiniteGraph::new(vertices);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if u >= self.vertices || v >= self.vertices {
            return Err(GraphError::OutOfRange(u.max(v)));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.vertices).filter(|&v| self.has_edge(u, v)).collect()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).len()
    }

    pub fn complete(n: usize) -> Self {
        let mut g = FiniteGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn empty_graph(n: usize) -> Self {
        FiniteGraph::new(n)
    }

    /// Cycle on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = FiniteGraph::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n).unwrap();
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = FiniteGraph::new(n);
        for u in 0..n.saturating_sub(1) {
            g.add_edge(u, u + 1).unwrap();
        }
        g
    }

    /// Parse the edge-list format: first line `V E`, then `E` lines `u v`.
    pub fn parse_edge_list(text: &str) -> Result<Self, EdgeListError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or(EdgeListError::MissingHeader)?;
        let mut parts = header.split_whitespace();
        let v: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(EdgeListError::MissingHeader)?;
        let e: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(EdgeListError::MissingHeader)?;
        let mut g = FiniteGraph::new(v);
        let mut count = 0;
        for line in lines {
            let mut p = line.split_whitespace();
            let u: usize = p
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| EdgeListError::BadLine(line.to_string()))?;
            let w: usize = p
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| EdgeListError::BadLine(line.to_string()))?;
            g.add_edge(u, w).map_err(EdgeListError::Graph)?;
            count += 1;
        }
        if count != e {
            return Err(EdgeListError::EdgeCount { declared: e, found: count });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertices, self.edges.len());
        for (u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u, v));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("missing or malformed `V E` header")]
    MissingHeader,
    #[error("malformed edge line: {0}")]
    BadLine(String),
    #[error("declared {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error(transparent)]
    Graph(GraphError),
}

/// Total vertex coloring with colors `0..k−1`, each used at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    assignment: Vec<usize>,
    colors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexColoringError {
    #[error("coloring must assign at least one vertex")]
    Empty,
    #[error("color {0} unused; colors must be contiguous from 0")]
    UnusedColor(usize),
}

impl VertexColoring {
    pub fn new(assignment: Vec<usize>) -> Result<Self, VertexColoringError> {
        if assignment.is_empty() {
            return Err(VertexColoringError::Empty);
        }
        let colors = assignment.iter().max().unwrap() + 1;
        for c in 0..colors {
            if !assignment.contains(&c) {
                return Err(VertexColoringError::UnusedColor(c));
            }
        }
        Ok(VertexColoring { assignment, colors })
    }

    /// Compact arbitrary labels into contiguous colors, preserving label order.
    pub fn from_labels(labels: &[usize]) -> Result<Self, VertexColoringError> {
        if labels.is_empty() {
            return Err(VertexColoringError::Empty);
        }
        let mut distinct: Vec<usize> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let assignment = labels
            .iter()
            .map(|l| distinct.binary_search(l).unwrap())
            .collect();
        Ok(VertexColoring { assignment, colors: distinct.len() })
    }

    pub fn color(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

/// Witness of a failed finite verification: two same-colored vertices with
/// different neighbor color counts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("color {color}: vertex {vertex_a} sees {seen_a:?} but vertex {vertex_b} sees {seen_b:?}")]
pub struct FiniteNotPerfect {
    pub color: usize,
    pub vertex_a: usize,
    pub vertex_b: usize,
    pub seen_a: Vec<usize>,
    pub seen_b: Vec<usize>,
}

fn neighbor_counts_by_label(g: &FiniteGraph, labels: &[usize], v: usize, width: usize) -> Vec<usize> {
    let mut counts = vec![0; width];
    for u in g.neighbors(v) {
        counts[labels[u]] += 1;
    }
    counts
}

/// Perfectness check on a finite graph: all same-colored vertices must have
/// identical neighbor color-count vectors.
pub fn verify_perfect_finite(
    g: &FiniteGraph,
    c: &VertexColoring,
) -> Result<ParameterMatrix, FiniteNotPerfect> {
    verify_labels(g, c.assignment(), c.colors())
        .map(|rows| ParameterMatrix::new(rows).unwrap())
}

/// Label-agnostic verification used internally: labels need not be contiguous,
/// rows are returned for label values `0..width`.
fn verify_labels(
    g: &FiniteGraph,
    labels: &[usize],
    width: usize,
) -> Result<Vec<Vec<usize>>, FiniteNotPerfect> {
    let mut rows: Vec<Option<(usize, Vec<usize>)>> = vec![None; width];
    for v in 0..g.vertex_count() {
        let c = labels[v];
        let nb = neighbor_counts_by_label(g, labels, v, width);
        match &rows[c] {
            None => rows[c] = Some((v, nb)),
            Some((first, seen)) => {
                if *seen != nb {
                    return Err(FiniteNotPerfect {
                        color: c,
                        vertex_a: *first,
                        vertex_b: v,
                        seen_a: seen.clone(),
                        seen_b: nb,
                    });
                }
            }
        }
    }
    Ok(rows
        .into_iter()
        .map(|r| r.map(|(_, row)| row).unwrap_or_else(|| vec![0; width]))
        .collect())
}

/// Lexicographic product `G·H`: vertex `(u, v)` is indexed `u·|V(H)| + v`;
/// `(u1,v1) ~ (u2,v2)` iff `u1 ~ u2` in `G`, or `u1 = u2` and `v1 ~ v2` in `H`.
pub fn lexicographic_product(g: &FiniteGraph, h: &FiniteGraph) -> FiniteGraph {
    let nh = h.vertex_count();
    let mut out = FiniteGraph::new(g.vertex_count() * nh);
    for (u1, u2) in g.edges() {
        for v1 in 0..nh {
            for v2 in 0..nh {
                out.add_edge(u1 * nh + v1, u2 * nh + v2).unwrap();
            }
        }
    }
    for u in 0..g.vertex_count() {
        for (v1, v2) in h.edges() {
            out.add_edge(u * nh + v1, u * nh + v2).unwrap();
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DisjunctiveError {
    #[error("base coloring is not perfect: {0}")]
    BaseNotPerfect(FiniteNotPerfect),
    #[error("fiber coloring {index} is not perfect")]
    FiberNotPerfect { index: usize },
    #[error("fiber colorings {a} and {b} share color {color}")]
    OverlappingColors { a: usize, b: usize, color: usize },
    #[error("expected one fiber coloring per base color ({expected}), got {got}")]
    WrongFiberCount { expected: usize, got: usize },
    #[error("fiber coloring {index} has {len} entries, expected {expected}")]
    WrongFiberLength { index: usize, len: usize, expected: usize },
    #[error("composed coloring failed verification: {0}")]
    Internal(FiniteNotPerfect),
    #[error(transparent)]
    Matrix(#[from] NotSquare),
}

/// Compose a perfect coloring of `G` with per-color colorings of `H` over
/// pairwise disjoint color sets; the result colors `G·H` and is re-verified.
///
/// `fibers[p]` maps each vertex of `H` to a color label; labels may be
/// arbitrary and are compacted in the output.
pub fn disjunctive_finite(
    g: &FiniteGraph,
    psi: &VertexColoring,
    fibers: &[Vec<usize>],
    h: &FiniteGraph,
) -> Result<VertexColoring, DisjunctiveError> {
    verify_perfect_finite(g, psi).map_err(DisjunctiveError::BaseNotPerfect)?;
    if fibers.len() != psi.colors() {
        return Err(DisjunctiveError::WrongFiberCount {
            expected: psi.colors(),
            got: fibers.len(),
        });
    }
    let mut supports: Vec<BTreeSet<usize>> = Vec::new();
    for (index, fiber) in fibers.iter().enumerate() {
        if fiber.len() != h.vertex_count() {
            return Err(DisjunctiveError::WrongFiberLength {
                index,
                len: fiber.len(),
                expected: h.vertex_count(),
            });
        }
        let width = fiber.iter().max().map_or(0, |m| m + 1);
        if verify_labels(h, fiber, width).is_err() {
            return Err(DisjunctiveError::FiberNotPerfect { index });
        }
        supports.push(fiber.iter().copied().collect());
    }
    for a in 0..supports.len() {
        for b in a + 1..supports.len() {
            if let Some(&color) = supports[a].intersection(&supports[b]).next() {
                return Err(DisjunctiveError::OverlappingColors { a, b, color });
            }
        }
    }
    let nh = h.vertex_count();
    let labels: Vec<usize> = (0..g.vertex_count() * nh)
        .map(|i| fibers[psi.color(i / nh)][i % nh])
        .collect();
    let product = lexicographic_product(g, h);
    let coloring = VertexColoring::from_labels(&labels).expect("nonempty product");
    // Guaranteed perfect for perfect inputs; a failure here is a bug.
    verify_perfect_finite(&product, &coloring).map_err(DisjunctiveError::Internal)?;
    Ok(coloring)
}

/// Realize a periodic multipath coloring on the finite cycle product
/// `C_p·G`, with vertices of each block colored in nondecreasing color order.
/// The period is repeated as needed so the cycle has length ≥ 3.
pub fn cycle_product_coloring(c: &PeriodicColoring) -> (FiniteGraph, VertexColoring) {
    let mut p = c.period_len();
    let mut reps = 1;
    while p < 3 {
        reps += 1;
        p = c.period_len() * reps;
    }
    let n = c.family().n();
    let block = match c.family().kind() {
        BlockKind::Empty => FiniteGraph::empty_graph(n),
        BlockKind::Complete => FiniteGraph::complete(n),
    };
    let graph = lexicographic_product(&FiniteGraph::cycle(p), &block);
    let labeled = c.labeled_blocks();
    let mut labels = Vec::with_capacity(p * n);
    for i in 0..p {
        labels.extend_from_slice(&labeled[i % c.period_len()]);
    }
    let coloring = VertexColoring::new(labels).expect("all colors of the period are used");
    (graph, coloring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipath::Family;

    #[test]
    fn product_k2_empty2_is_c4() {
        let k2 = FiniteGraph::complete(2);
        let e2 = FiniteGraph::empty_graph(2);
        let p = lexicographic_product(&k2, &e2);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edge_count(), 4);
        // K_{2,2}: parts {0,1} and {2,3}
        assert!(p.has_edge(0, 2) && p.has_edge(0, 3) && p.has_edge(1, 2) && p.has_edge(1, 3));
        assert!(!p.has_edge(0, 1) && !p.has_edge(2, 3));
    }

    #[test]
    fn product_k2_k2_is_k4() {
        let k2 = FiniteGraph::complete(2);
        let p = lexicographic_product(&k2, &k2);
        assert_eq!(p.edge_count(), 6);
    }

    #[test]
    fn product_path3_empty2_edge_count() {
        let p3 = FiniteGraph::path(3);
        let e2 = FiniteGraph::empty_graph(2);
        let p = lexicographic_product(&p3, &e2);
        assert_eq!(p.vertex_count(), 6);
        assert_eq!(p.edge_count(), 8);
        // independent oracle: nested loops over the definition
        let mut expected = 0;
        for u1 in 0..3usize {
            for v1 in 0..2usize {
                for u2 in 0..3usize {
                    for v2 in 0..2usize {
                        let a = u1 * 2 + v1;
                        let b = u2 * 2 + v2;
                        if a < b && u1.abs_diff(u2) == 1 {
                            expected += 1;
                            assert!(p.has_edge(a, b));
                        }
                    }
                }
            }
        }
        assert_eq!(expected, 8);
    }

    #[test]
    fn product_degree_law() {
        let g = FiniteGraph::cycle(5);
        let h = FiniteGraph::path(3);
        let p = lexicographic_product(&g, &h);
        for u in 0..g.vertex_count() {
            for v in 0..h.vertex_count() {
                assert_eq!(
                    p.degree(u * 3 + v),
                    g.degree(u) * h.vertex_count() + h.degree(v)
                );
            }
        }
    }

    #[test]
    fn verify_c4_alternating() {
        let c4 = FiniteGraph::cycle(4);
        let col = VertexColoring::new(vec![0, 1, 0, 1]).unwrap();
        let m = verify_perfect_finite(&c4, &col).unwrap();
        assert_eq!(m.rows(), &[vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn verify_c4_unbalanced_fails() {
        let c4 = FiniteGraph::cycle(4);
        let col = VertexColoring::new(vec![0, 0, 0, 1]).unwrap();
        let err = verify_perfect_finite(&c4, &col).unwrap_err();
        assert_eq!(err.color, 0);
    }

    #[test]
    fn verify_c6_three_cyclic() {
        let c6 = FiniteGraph::cycle(6);
        let col = VertexColoring::new(vec![0, 1, 2, 0, 1, 2]).unwrap();
        let m = verify_perfect_finite(&c6, &col).unwrap();
        assert_eq!(m.rows(), &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn disjunctive_c4_blocks() {
        let c4 = FiniteGraph::cycle(4);
        let psi = VertexColoring::new(vec![0, 1, 0, 1]).unwrap();
        let e2 = FiniteGraph::empty_graph(2);
        // fiber 0 monochrome color a=0, fiber 1 two colors b=1, c=2
        let out = disjunctive_finite(&c4, &psi, &[vec![0, 0], vec![1, 2]], &e2).unwrap();
        assert_eq!(out.assignment(), &[0, 0, 1, 2, 0, 0, 1, 2]);
    }

    #[test]
    fn disjunctive_monochrome_base_copies_fiber() {
        let g = FiniteGraph::cycle(5);
        let psi = VertexColoring::new(vec![0; 5]).unwrap();
        let e3 = FiniteGraph::empty_graph(3);
        let out = disjunctive_finite(&g, &psi, &[vec![0, 1, 1]], &e3).unwrap();
        assert_eq!(&out.assignment()[..3], &[0, 1, 1]);
        let product = lexicographic_product(&g, &e3);
        assert!(verify_perfect_finite(&product, &out).is_ok());
    }

    #[test]
    fn disjunctive_c6_block_monochrome() {
        let c6 = FiniteGraph::cycle(6);
        let psi = VertexColoring::new(vec![0, 1, 2, 0, 1, 2]).unwrap();
        let k2 = FiniteGraph::complete(2);
        let out = disjunctive_finite(&c6, &psi, &[vec![0, 0], vec![1, 1], vec![2, 2]], &k2).unwrap();
        let product = lexicographic_product(&c6, &k2);
        assert!(verify_perfect_finite(&product, &out).is_ok());
    }

    #[test]
    fn disjunctive_rejects_overlapping_colors() {
        let c4 = FiniteGraph::cycle(4);
        let psi = VertexColoring::new(vec![0, 1, 0, 1]).unwrap();
        let e2 = FiniteGraph::empty_graph(2);
        let err = disjunctive_finite(&c4, &psi, &[vec![0, 0], vec![0, 1]], &e2).unwrap_err();
        assert!(matches!(err, DisjunctiveError::OverlappingColors { .. }));
    }

    #[test]
    fn cycle_product_agrees_with_periodic() {
        let f = Family::empty(2).unwrap();
        let c = PeriodicColoring::try_new(
            f,
            3,
            vec![vec![2, 0, 0], vec![0, 1, 1], vec![2, 0, 0], vec![0, 1, 1]],
        )
        .unwrap();
        let (graph, coloring) = cycle_product_coloring(&c);
        let finite = verify_perfect_finite(&graph, &coloring).unwrap();
        let periodic = c.infer_matrix().unwrap();
        assert_eq!(finite, periodic);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = FiniteGraph::cycle(4);
        let text = g.to_edge_list();
        let back = FiniteGraph::parse_edge_list(&text).unwrap();
        assert_eq!(back, g);
        assert!(FiniteGraph::parse_edge_list("nonsense").is_err());
    }
}

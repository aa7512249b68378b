//! Equivalent-color detection, the gluing operation, and reduced-coloring
//! recognition.
//!
//! Two colors are equivalent when identifying them leaves the coloring
//! perfect. The identify-then-verify test is the authoritative definition;
//! the matrix-row test ([`equivalent_colors_matrix`]) is a fast filter that
//! agrees with it on regular structures. Gluing is a single pass over the
//! equivalence classes of the input: the result can itself still have
//! equivalent colors (any perfect 2-coloring identifies to monochrome), so
//! gluing is not idempotent in general.

use thiserror::Error;

use crate::finite::{verify_perfect_finite, FiniteGraph, VertexColoring};
use crate::multipath::{ParameterMatrix, PeriodicColoring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("input coloring is not perfect")]
    NotPerfect,
    #[error("colors {a} and {b} out of range or equal")]
    BadColorPair { a: usize, b: usize },
    #[error("equivalence relation not transitive on colors {a}, {b}, {c}")]
    TransitivityViolation { a: usize, b: usize, c: usize },
    #[error("glued coloring failed verification")]
    GlueNotPerfect,
    #[error("glued multipath coloring is not block-monochrome")]
    GlueNotBlockMonochrome,
}

/// A colored structure on which color identification makes sense: a periodic
/// multipath coloring or a colored finite graph.
pub trait ColoredStructure: Clone {
    fn color_count(&self) -> usize;
    /// Apply a surjective color map `old → 0..new_count`.
    fn relabel(&self, map: &[usize], new_count: usize) -> Self;
    fn is_perfect(&self) -> bool;
    /// Extra shape requirement on glued results; multipath colorings must be
    /// block-monochrome.
    fn check_glued_shape(&self) -> Result<(), EquivalenceError> {
        Ok(())
    }
}

impl ColoredStructure for PeriodicColoring {
    fn color_count(&self) -> usize {
        self.colors()
    }

    fn relabel(&self, map: &[usize], new_count: usize) -> Self {
        let period = self
            .period()
            .iter()
            .map(|prof| {
                let mut out = vec![0; new_count];
                for (c, &count) in prof.iter().enumerate() {
                    out[map[c]] += count;
                }
                out
            })
            .collect();
        PeriodicColoring::try_new(self.family(), new_count, period)
            .expect("surjective relabeling preserves invariants")
    }

    fn is_perfect(&self) -> bool {
        self.infer_matrix().is_ok()
    }

    fn check_glued_shape(&self) -> Result<(), EquivalenceError> {
        if self.is_block_monochrome() {
            Ok(())
        } else {
            Err(EquivalenceError::GlueNotBlockMonochrome)
        }
    }
}

/// A finite graph together with a coloring of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: FiniteGraph,
    pub coloring: VertexColoring,
}

impl ColoredStructure for ColoredGraph {
    fn color_count(&self) -> usize {
        self.coloring.colors()
    }

    fn relabel(&self, map: &[usize], _new_count: usize) -> Self {
        let assignment = self
            .coloring
            .assignment()
            .iter()
            .map(|&c| map[c])
            .collect();
        ColoredGraph {
            graph: self.graph.clone(),
            coloring: VertexColoring::new(assignment)
                .expect("surjective relabeling preserves invariants"),
        }
    }

    fn is_perfect(&self) -> bool {
        verify_perfect_finite(&self.graph, &self.coloring).is_ok()
    }
}

/// Color map identifying `b` into `a` and compacting the rest.
fn identify_map(k: usize, a: usize, b: usize) -> (Vec<usize>, usize) {
    let (a, b) = (a.min(b), a.max(b));
    let map = (0..k)
        .map(|c| {
            if c == b {
                a
            } else if c > b {
                c - 1
            } else {
                c
            }
        })
        .collect();
    (map, k - 1)
}

/// True iff identifying colors `a` and `b` yields a coloring that is still
/// perfect. Requires the input to be perfect.
pub fn equivalent_colors_semantic<T: ColoredStructure>(
    x: &T,
    a: usize,
    b: usize,
) -> Result<bool, EquivalenceError> {
    let k = x.color_count();
    if a == b || a >= k || b >= k {
        return Err(EquivalenceError::BadColorPair { a, b });
    }
    if !x.is_perfect() {
        return Err(EquivalenceError::NotPerfect);
    }
    let (map, new_k) = identify_map(k, a, b);
    Ok(x.relabel(&map, new_k).is_perfect())
}

/// Necessary condition on the parameter matrix: rows `a` and `b` agree on
/// every column outside `{a, b}`.
pub fn equivalent_colors_matrix(m: &ParameterMatrix, a: usize, b: usize) -> bool {
    (0..m.k()).all(|col| col == a || col == b || m.entry(a, col) == m.entry(b, col))
}

/// Partition of the colors into maximal semantic-equivalence classes, sorted
/// by smallest member. Fails loudly if the computed relation is not
/// transitive (unreachable for perfect colorings of regular structures).
pub fn equivalence_partition<T: ColoredStructure>(
    x: &T,
) -> Result<Vec<Vec<usize>>, EquivalenceError> {
    let k = x.color_count();
    if !x.is_perfect() {
        return Err(EquivalenceError::NotPerfect);
    }
    let mut rel = vec![vec![false; k]; k];
    for a in 0..k {
        rel[a][a] = true;
        for b in a + 1..k {
            let eq = equivalent_colors_semantic(x, a, b)?;
            rel[a][b] = eq;
            rel[b][a] = eq;
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if rel[a][b] && rel[b][c] && !rel[a][c] {
                    return Err(EquivalenceError::TransitivityViolation { a, b, c });
                }
            }
        }
    }
    let mut seen = vec![false; k];
    let mut classes = Vec::new();
    for a in 0..k {
        if seen[a] {
            continue;
        }
        let class: Vec<usize> = (a..k).filter(|&b| rel[a][b]).collect();
        for &b in &class {
            seen[b] = true;
        }
        classes.push(class);
    }
    Ok(classes)
}

/// Identify the colors within each equivalence class; the result is the
/// reduced coloring, re-verified, with classes renamed to `0..k'−1` by
/// smallest representative.
pub fn glue<T: ColoredStructure>(x: &T) -> Result<T, EquivalenceError> {
    let classes = equivalence_partition(x)?;
    let mut map = vec![0; x.color_count()];
    for (idx, class) in classes.iter().enumerate() {
        for &c in class {
            map[c] = idx;
        }
    }
    let glued = x.relabel(&map, classes.len());
    if !glued.is_perfect() {
        return Err(EquivalenceError::GlueNotPerfect);
    }
    glued.check_glued_shape()?;
    Ok(glued)
}

/// True iff every equivalence class is a singleton.
pub fn is_reduced<T: ColoredStructure>(x: &T) -> Result<bool, EquivalenceError> {
    Ok(equivalence_partition(x)?.iter().all(|c| c.len() == 1))
}

//! Core data model for periodic colorings of the infinite multipath graphs
//! `C∞·K̄ₙ` and `C∞·Kₙ`.
//!
//! A coloring is stored as a periodic sequence of *block profiles*: count
//! vectors recording how many vertices of each color sit in one block (one
//! copy of `K̄ₙ` or `Kₙ`). Vertex identity within a block is immaterial since
//! all vertices of a block have the same neighborhood (up to the block-mate
//! swap in the complete case).

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Count vector over colors for one block; entry `j` is the number of
/// `j`-colored vertices in the block.
pub type BlockProfile = Vec<usize>;

/// Whether blocks are copies of the empty or the complete graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Empty,
    Complete,
}

/// A multipath family: block kind plus block size `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr")]
pub struct Family {
    kind: BlockKind,
    n: usize,
}

#[derive(Deserialize)]
struct FamilyRepr {
    kind: BlockKind,
    n: usize,
}

impl TryFrom<FamilyRepr> for Family {
    type Error = ColoringError;
    fn try_from(raw: FamilyRepr) -> Result<Self, Self::Error> {
        Family::new(raw.kind, raw.n)
    }
}

impl Family {
    pub fn new(kind: BlockKind, n: usize) -> Result<Self, ColoringError> {
        if n == 0 {
            return Err(ColoringError::ZeroBlockSize);
        }
        Ok(Family { kind, n })
    }

    pub fn empty(n: usize) -> Result<Self, ColoringError> {
        Family::new(BlockKind::Empty, n)
    }

    pub fn complete(n: usize) -> Result<Self, ColoringError> {
        Family::new(BlockKind::Complete, n)
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertex degree in the multipath: `2n` over empty blocks, `3n−1` over
    /// complete ones (all of both neighbor blocks, plus block-mates).
    pub fn degree(&self) -> usize {
        match self.kind {
            BlockKind::Empty => 2 * self.n,
            BlockKind::Complete => 3 * self.n - 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("block size n must be at least 1")]
    ZeroBlockSize,
    #[error("a coloring needs at least one color")]
    NoColors,
    #[error("period must contain at least one block")]
    EmptyPeriod,
    #[error("block {block} has {len} entries, expected {colors}")]
    ProfileLength { block: usize, len: usize, colors: usize },
    #[error("block {block} sums to {sum}, expected {n}")]
    ProfileSum { block: usize, sum: usize, n: usize },
    #[error("color {0} never occurs in the period")]
    UnusedColor(usize),
}

/// Requested a color at a block where it does not occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("block {block} has no vertex of color {color}")]
pub struct ColorAbsent {
    pub block: usize,
    pub color: usize,
}

/// Witness that a coloring is not perfect: two sites of the same color whose
/// unit spheres have different color structure.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("color {color}: block {block_a} sees {seen_a:?} but block {block_b} sees {seen_b:?}")]
pub struct NotPerfect {
    pub color: usize,
    pub block_a: usize,
    pub block_b: usize,
    pub seen_a: Vec<usize>,
    pub seen_b: Vec<usize>,
}

/// The k×k matrix of perfect-coloring parameters: entry `(i, j)` is the
/// number of `j`-colored neighbors of any `i`-colored vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr")]
pub struct ParameterMatrix {
    matrix: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct MatrixRepr {
    matrix: Vec<Vec<usize>>,
}

impl TryFrom<MatrixRepr> for ParameterMatrix {
    type Error = String;
    fn try_from(raw: MatrixRepr) -> Result<Self, Self::Error> {
        ParameterMatrix::new(raw.matrix).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parameter matrix must be square and nonempty")]
pub struct NotSquare;

impl ParameterMatrix {
    pub fn new(matrix: Vec<Vec<usize>>) -> Result<Self, NotSquare> {
        let k = matrix.len();
        if k == 0 || matrix.iter().any(|row| row.len() != k) {
            return Err(NotSquare);
        }
        Ok(ParameterMatrix { matrix })
    }

    pub fn k(&self) -> usize {
        self.matrix.len()
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.matrix[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.matrix[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.matrix
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.matrix.iter().map(|r| r.iter().sum()).collect()
    }

    /// `m_ij = 0 ⇔ m_ji = 0`, a property of every matrix realized by a
    /// perfect coloring.
    pub fn zero_symmetric(&self) -> bool {
        let k = self.k();
        (0..k).all(|i| (0..k).all(|j| (self.matrix[i][j] == 0) == (self.matrix[j][i] == 0)))
    }
}

impl std::fmt::Display for ParameterMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for row in &self.matrix {
            writeln!(
                f,
                "[{}]",
                row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            )?;
        }
        Ok(())
    }
}

/// A coloring of `C∞·K̄ₙ` or `C∞·Kₙ` given by one period of block profiles.
/// Period `[A, B]` means blocks `…A B A B…`; indexing is modular throughout.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoringRepr")]
pub struct PeriodicColoring {
    family: Family,
    colors: usize,
    period: Vec<BlockProfile>,
}

#[derive(Deserialize)]
struct ColoringRepr {
    family: Family,
    colors: usize,
    period: Vec<BlockProfile>,
}

impl TryFrom<ColoringRepr> for PeriodicColoring {
    type Error = ColoringError;
    fn try_from(raw: ColoringRepr) -> Result<Self, Self::Error> {
        // Inputs with unused colors (gaps) are normalized on load.
        let mut period = raw.period;
        for profile in &mut period {
            if profile.len() < raw.colors {
                profile.resize(raw.colors, 0);
            }
        }
        PeriodicColoring::new_normalized(raw.family, period)
    }
}

impl PeriodicColoring {
    /// Strict constructor: every profile sums to `n`, has `colors` entries,
    /// and every color occurs somewhere in the period.
    pub fn try_new(
        family: Family,
        colors: usize,
        period: Vec<BlockProfile>,
    ) -> Result<Self, ColoringError> {
        if colors == 0 {
            return Err(ColoringError::NoColors);
        }
        if period.is_empty() {
            return Err(ColoringError::EmptyPeriod);
        }
        for (block, profile) in period.iter().enumerate() {
            if profile.len() != colors {
                return Err(ColoringError::ProfileLength {
                    block,
                    len: profile.len(),
                    colors,
                });
            }
            let sum: usize = profile.iter().sum();
            if sum != family.n() {
                return Err(ColoringError::ProfileSum { block, sum, n: family.n() });
            }
        }
        for c in 0..colors {
            if period.iter().all(|p| p[c] == 0) {
                return Err(ColoringError::UnusedColor(c));
            }
        }
        Ok(PeriodicColoring { family, colors, period })
    }

    /// Constructor that compacts unused color indices away. Profiles must all
    /// have the same length.
    pub fn new_normalized(
        family: Family,
        period: Vec<BlockProfile>,
    ) -> Result<Self, ColoringError> {
        if period.is_empty() {
            return Err(ColoringError::EmptyPeriod);
        }
        let width = period[0].len();
        if let Some((block, profile)) = period.iter().enumerate().find(|(_, p)| p.len() != width) {
            return Err(ColoringError::ProfileLength {
                block,
                len: profile.len(),
                colors: width,
            });
        }
        let used: Vec<usize> = (0..width)
            .filter(|&c| period.iter().any(|p| p[c] > 0))
            .collect();
        let compacted: Vec<BlockProfile> = period
            .iter()
            .map(|p| used.iter().map(|&c| p[c]).collect())
            .collect();
        PeriodicColoring::try_new(family, used.len(), compacted)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn period(&self) -> &[BlockProfile] {
        &self.period
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    pub fn profile(&self, block: usize) -> &BlockProfile {
        &self.period[block % self.period.len()]
    }

    /// Color-count vector of the unit sphere around any vertex of `color` in
    /// block `i` (mod period).
    pub fn neighbor_profile(&self, block: usize, color: usize) -> Result<Vec<usize>, ColorAbsent> {
        let p = self.period.len();
        let i = block % p;
        if color >= self.colors || self.period[i][color] == 0 {
            return Err(ColorAbsent { block: i, color });
        }
        Ok(self.sphere(i, color))
    }

    fn sphere(&self, i: usize, color: usize) -> Vec<usize> {
        let p = self.period.len();
        let prev = &self.period[(i + p - 1) % p];
        let next = &self.period[(i + 1) % p];
        let mut out: Vec<usize> = prev.iter().zip(next).map(|(a, b)| a + b).collect();
        if self.family.kind() == BlockKind::Complete {
            for (o, v) in out.iter_mut().zip(&self.period[i]) {
                *o += v;
            }
            out[color] -= 1; // the center is not its own neighbor
        }
        out
    }

    /// Infers the parameter matrix, or reports the first pair of same-colored
    /// sites with conflicting neighborhoods.
    pub fn infer_matrix(&self) -> Result<ParameterMatrix, NotPerfect> {
        let mut rows: Vec<Option<(usize, Vec<usize>)>> = vec![None; self.colors];
        for i in 0..self.period.len() {
            for c in 0..self.colors {
                if self.period[i][c] == 0 {
                    continue;
                }
                let nb = self.sphere(i, c);
                match &rows[c] {
                    None => rows[c] = Some((i, nb)),
                    Some((first, seen)) => {
                        if *seen != nb {
                            return Err(NotPerfect {
                                color: c,
                                block_a: *first,
                                block_b: i,
                                seen_a: seen.clone(),
                                seen_b: nb,
                            });
                        }
                    }
                }
            }
        }
        // every color occurs somewhere by construction
        let matrix = rows.into_iter().map(|r| r.unwrap().1).collect();
        Ok(ParameterMatrix::new(matrix).unwrap())
    }

    /// True iff the coloring is perfect with exactly the given matrix.
    pub fn verify_periodic(&self, m: &ParameterMatrix) -> bool {
        match self.infer_matrix() {
            Ok(inferred) => inferred == *m,
            Err(_) => false,
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.infer_matrix().is_ok()
    }

    /// True iff every block contains a single color.
    pub fn is_block_monochrome(&self) -> bool {
        self.period
            .iter()
            .all(|p| p.iter().filter(|&&c| c > 0).count() == 1)
    }

    /// For a block-monochrome coloring, the color sequence of the period.
    pub fn block_colors(&self) -> Option<Vec<usize>> {
        self.period
            .iter()
            .map(|p| {
                let mut it = (0..self.colors).filter(|&c| p[c] > 0);
                let c = it.next()?;
                it.next().is_none().then_some(c)
            })
            .collect()
    }

    /// Labeled export: block `i` as the nondecreasing sequence of the colors
    /// of its `n` vertices.
    pub fn labeled_blocks(&self) -> Vec<Vec<usize>> {
        self.period.iter().map(|p| labeled_block(p)).collect()
    }

    /// Shortest repeating unit of the period.
    pub fn primitive(&self) -> PeriodicColoring {
        let p = self.period.len();
        for d in 1..=p {
            if p % d != 0 {
                continue;
            }
            if (0..p).all(|i| self.period[i] == self.period[i % d]) {
                return PeriodicColoring {
                    family: self.family,
                    colors: self.colors,
                    period: self.period[..d].to_vec(),
                };
            }
        }
        unreachable!("d = p always repeats");
    }

    pub fn primitive_period_len(&self) -> usize {
        self.primitive().period.len()
    }

    /// Rotate the period left by `r` blocks.
    pub fn rotated(&self, r: usize) -> PeriodicColoring {
        let p = self.period.len();
        let period = (0..p).map(|i| self.period[(i + r) % p].clone()).collect();
        PeriodicColoring { family: self.family, colors: self.colors, period }
    }

    /// Apply a color renaming: new index of old color `c` is `perm[c]`.
    pub fn renamed(&self, perm: &[usize]) -> PeriodicColoring {
        assert_eq!(perm.len(), self.colors);
        let period = self
            .period
            .iter()
            .map(|prof| {
                let mut out = vec![0; self.colors];
                for (c, &count) in prof.iter().enumerate() {
                    out[perm[c]] = count;
                }
                out
            })
            .collect();
        PeriodicColoring { family: self.family, colors: self.colors, period }
    }

    /// Unique representative of the orbit under rotation, reflection,
    /// primitive-root reduction and color renaming.
    ///
    /// The representative minimizes the *labeled encoding*: the concatenation
    /// over blocks of each block's colors listed in nondecreasing order. This
    /// makes e.g. `[0][1]` canonical rather than `[1][0]`.
    pub fn canonicalize(&self) -> PeriodicColoring {
        let base = self.primitive();
        let p = base.period.len();
        let mut best: Option<(Vec<usize>, Vec<BlockProfile>)> = None;
        for reflect in [false, true] {
            let seq: Vec<&BlockProfile> = if reflect {
                base.period.iter().rev().collect()
            } else {
                base.period.iter().collect()
            };
            for r in 0..p {
                let frame: Vec<&BlockProfile> = (0..p).map(|i| seq[(i + r) % p]).collect();
                let (enc, period) = min_renaming(&frame, base.colors);
                if best.as_ref().map_or(true, |(b, _)| enc < *b) {
                    best = Some((enc, period));
                }
            }
        }
        let (_, period) = best.unwrap();
        PeriodicColoring { family: base.family, colors: base.colors, period }
    }
}

fn labeled_block(profile: &BlockProfile) -> Vec<usize> {
    let mut out = Vec::new();
    for (c, &count) in profile.iter().enumerate() {
        out.extend(std::iter::repeat(c).take(count));
    }
    out
}

/// Lexicographically least labeled encoding over all color renamings of a
/// fixed block sequence, together with the renamed period.
fn min_renaming(frame: &[&BlockProfile], k: usize) -> (Vec<usize>, Vec<BlockProfile>) {
    use itertools::Itertools;
    let mut best_enc: Option<Vec<usize>> = None;
    let mut best_period: Option<Vec<BlockProfile>> = None;
    // inverse permutation: old color occupying each new slot
    for inv in (0..k).permutations(k) {
        let mut enc = Vec::new();
        for prof in frame {
            for (new, &old) in inv.iter().enumerate() {
                enc.extend(std::iter::repeat(new).take(prof[old]));
            }
        }
        if best_enc.as_ref().map_or(true, |b| enc < *b) {
            let period = frame
                .iter()
                .map(|prof| inv.iter().map(|&old| prof[old]).collect())
                .collect();
            best_enc = Some(enc);
            best_period = Some(period);
        }
    }
    (best_enc.unwrap(), best_period.unwrap())
}

/// Unit profile: `n` vertices all of `color`, out of `colors` colors.
pub fn monochrome_profile(colors: usize, color: usize, n: usize) -> BlockProfile {
    let mut p = vec![0; colors];
    p[color] = n;
    p
}

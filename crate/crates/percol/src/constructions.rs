//! Constructive families of perfect multipath colorings: the four series on
//! the infinite path, block-monochrome lifts, disjunctive products,
//! semicoloring conjugation, 3-periodic complete-block colorings, and
//! deterministic propagation from two seed blocks.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::multipath::{
    monochrome_profile, BlockKind, BlockProfile, ColoringError, Family, NotPerfect,
    ParameterMatrix, PeriodicColoring,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("k = {k} below the minimum {min} for this series")]
    DomainError { k: usize, min: usize },
    #[error("expected a path coloring (empty blocks, n = 1)")]
    NotPathColoring,
    #[error("base path coloring is not perfect: {0}")]
    PsiNotPerfect(NotPerfect),
    #[error("profiles {a} and {b} both use color {color}")]
    OverlappingSupports { a: usize, b: usize, color: usize },
    #[error("expected {expected} profiles of width {width}, one per path color")]
    WrongProfileShape { expected: usize, width: usize },
    #[error("profile {0} has empty support")]
    EmptySupport(usize),
    #[error("semicolorings disagree: {0}")]
    SemicoloringMismatch(String),
    #[error("construction produced a non-perfect coloring: {0}")]
    Internal(NotPerfect),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Cyclic series: period `[0 1 2 … k−1]` on the infinite path.
pub fn series_cyclic(k: usize) -> Result<PeriodicColoring, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::DomainError { k, min: 1 });
    }
    path_from_colors(k, &(0..k).collect::<Vec<_>>())
}

/// The three mirror series, distinguished by how many vertices of the first
/// and last colors appear in the period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MirrorType {
    /// `S₁₁(k) = [k−1 … 1 0 1 … k−2]`
    OneOne,
    /// `S₁₂(k) = [k−1 … 1 0 1 … k−1]`
    OneTwo,
    /// `S₂₂(k) = [k−1 … 1 0 0 1 … k−1]`
    TwoTwo,
}

/// Mirror series coloring of the infinite path; `k ≥ 2` for every type.
pub fn series_mirror(k: usize, ty: MirrorType) -> Result<PeriodicColoring, ConstructionError> {
    if k < 2 {
        return Err(ConstructionError::DomainError { k, min: 2 });
    }
    let down: Vec<usize> = (1..k).rev().collect(); // k−1 … 1
    let mut seq = down;
    match ty {
        MirrorType::OneOne => {
            seq.push(0);
            seq.extend(1..k - 1); // 1 … k−2
        }
        MirrorType::OneTwo => {
            seq.push(0);
            seq.extend(1..k); // 1 … k−1
        }
        MirrorType::TwoTwo => {
            seq.push(0);
            seq.push(0);
            seq.extend(1..k);
        }
    }
    path_from_colors(k, &seq)
}

fn path_from_colors(k: usize, seq: &[usize]) -> Result<PeriodicColoring, ConstructionError> {
    let period = seq.iter().map(|&c| monochrome_profile(k, c, 1)).collect();
    Ok(PeriodicColoring::try_new(Family::empty(1)?, k, period)?)
}

/// Lift a path coloring to a block-monochrome coloring of the given family:
/// each path vertex of color `c` becomes a block of `n` `c`-colored vertices.
pub fn lift_block_monochrome(
    path: &PeriodicColoring,
    family: Family,
) -> Result<PeriodicColoring, ConstructionError> {
    if path.family().kind() != BlockKind::Empty || path.family().n() != 1 {
        return Err(ConstructionError::NotPathColoring);
    }
    let colors = path.block_colors().ok_or(ConstructionError::NotPathColoring)?;
    let period = colors
        .iter()
        .map(|&c| monochrome_profile(path.colors(), c, family.n()))
        .collect();
    Ok(PeriodicColoring::try_new(family, path.colors(), period)?)
}

/// Disjunctive product on a multipath: block `i` receives the profile
/// assigned to the path color of block `i`. Profiles must have pairwise
/// disjoint color supports and the base path coloring must be perfect.
pub fn disjunctive_multipath(
    psi: &PeriodicColoring,
    profiles: &[BlockProfile],
    family: Family,
) -> Result<PeriodicColoring, ConstructionError> {
    if psi.family().kind() != BlockKind::Empty || psi.family().n() != 1 {
        return Err(ConstructionError::NotPathColoring);
    }
    psi.infer_matrix().map_err(ConstructionError::PsiNotPerfect)?;
    let width = profiles.first().map_or(0, |p| p.len());
    if profiles.len() != psi.colors() || profiles.iter().any(|p| p.len() != width) {
        return Err(ConstructionError::WrongProfileShape {
            expected: psi.colors(),
            width,
        });
    }
    let supports: Vec<Vec<usize>> = profiles
        .iter()
        .map(|p| (0..width).filter(|&c| p[c] > 0).collect())
        .collect();
    for (i, s) in supports.iter().enumerate() {
        if s.is_empty() {
            return Err(ConstructionError::EmptySupport(i));
        }
    }
    for a in 0..supports.len() {
        for b in a + 1..supports.len() {
            if let Some(&color) = supports[a].iter().find(|c| supports[b].contains(c)) {
                return Err(ConstructionError::OverlappingSupports { a, b, color });
            }
        }
    }
    let path_colors = psi.block_colors().ok_or(ConstructionError::NotPathColoring)?;
    let period: Vec<BlockProfile> = path_colors
        .iter()
        .map(|&c| profiles[c].clone())
        .collect();
    let out = PeriodicColoring::new_normalized(family, period)?;
    out.infer_matrix().map_err(ConstructionError::Internal)?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A coloring of one part of the bipartite graph `C∞·K̄ₙ`: the profiles of
/// the blocks of that part, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SemicoloringRepr")]
pub struct Semicoloring {
    parity: Parity,
    n: usize,
    period: Vec<BlockProfile>,
}

#[derive(Deserialize)]
struct SemicoloringRepr {
    parity: Parity,
    n: usize,
    period: Vec<BlockProfile>,
}

impl TryFrom<SemicoloringRepr> for Semicoloring {
    type Error = ConstructionError;
    fn try_from(raw: SemicoloringRepr) -> Result<Self, Self::Error> {
        Semicoloring::new(raw.parity, raw.n, raw.period)
    }
}

impl Semicoloring {
    pub fn new(
        parity: Parity,
        n: usize,
        period: Vec<BlockProfile>,
    ) -> Result<Self, ConstructionError> {
        if n == 0 {
            return Err(ColoringError::ZeroBlockSize.into());
        }
        if period.is_empty() {
            return Err(ColoringError::EmptyPeriod.into());
        }
        let width = period[0].len();
        for (block, profile) in period.iter().enumerate() {
            if profile.len() != width {
                return Err(ColoringError::ProfileLength {
                    block,
                    len: profile.len(),
                    colors: width,
                }
                .into());
            }
            let sum: usize = profile.iter().sum();
            if sum != n {
                return Err(ColoringError::ProfileSum { block, sum, n }.into());
            }
        }
        Ok(Semicoloring { parity, n, period })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn period(&self) -> &[BlockProfile] {
        &self.period
    }

    pub fn width(&self) -> usize {
        self.period[0].len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjugationError {
    #[error("semicolorings disagree on n or color width")]
    Mismatch,
    #[error("both semicolorings have parity {0:?}")]
    SameParity(Parity),
    #[error("conjugation is not perfect: {0}")]
    NotPerfect(NotPerfect),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Interleave two semicolorings into a coloring of `C∞·K̄ₙ` and verify it.
/// The even semicoloring occupies even block indices, starting at block 0.
pub fn conjugate_semicolorings(
    even: &Semicoloring,
    odd: &Semicoloring,
) -> Result<PeriodicColoring, ConjugationError> {
    if even.parity() == odd.parity() {
        return Err(ConjugationError::SameParity(even.parity()));
    }
    let (even, odd) = match even.parity() {
        Parity::Even => (even, odd),
        Parity::Odd => (odd, even),
    };
    if even.n() != odd.n() || even.width() != odd.width() {
        return Err(ConjugationError::Mismatch);
    }
    let half = lcm(even.period().len(), odd.period().len());
    let mut period = Vec::with_capacity(2 * half);
    for i in 0..half {
        period.push(even.period()[i % even.period().len()].clone());
        period.push(odd.period()[i % odd.period().len()].clone());
    }
    let out = PeriodicColoring::new_normalized(Family::empty(even.n())?, period)?;
    out.infer_matrix().map_err(ConjugationError::NotPerfect)?;
    Ok(out)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Matched condition for 4-periodic colorings of `C∞·K̄ₙ`:
/// `N_j(i−1) + N_j(i+1) = N_j(i) + N_j(i+2)` for every color `j` and block
/// `i`. Primitive periods of length 1 and 2 are padded to 4 by repetition;
/// anything with primitive period not in `{1, 2, 4}`, or with complete
/// blocks, is rejected (returns false).
pub fn matched_check(c: &PeriodicColoring) -> bool {
    if c.family().kind() != BlockKind::Empty {
        return false;
    }
    let prim = c.primitive();
    let p = prim.period_len();
    if !matches!(p, 1 | 2 | 4) {
        return false;
    }
    let blocks: Vec<&BlockProfile> = (0..4).map(|i| &prim.period()[i % p]).collect();
    for i in 0..4 {
        for j in 0..c.colors() {
            let lhs = blocks[(i + 3) % 4][j] + blocks[(i + 1) % 4][j];
            let rhs = blocks[i][j] + blocks[(i + 2) % 4][j];
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Build and verify a 3-block period over complete blocks.
pub fn three_periodic_complete(
    b0: BlockProfile,
    b1: BlockProfile,
    b2: BlockProfile,
    n: usize,
) -> Result<PeriodicColoring, ConjugationError> {
    let out = PeriodicColoring::new_normalized(Family::complete(n)?, vec![b0, b1, b2])?;
    out.infer_matrix().map_err(ConjugationError::NotPerfect)?;
    Ok(out)
}

/// Why a propagation step failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContradictionReason {
    /// The forced count for `color` went negative.
    NegativeEntry { color: usize },
    /// Two colors present in the same block force different next blocks.
    Inconsistent { color_a: usize, color_b: usize },
    /// The forced profile does not sum to `n`.
    WrongSum { sum: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropagateOutcome {
    /// The orbit returned to the initial block pair; the coloring extends to
    /// a bi-infinite periodic coloring with this period.
    Periodic(PeriodicColoring),
    /// The orbit entered a cycle that does not contain the start, so the
    /// seed pair has no bi-infinite extension.
    NotBiInfinite,
    /// The recurrence failed while computing the block at this index.
    Contradiction { block: usize, reason: ContradictionReason },
}

/// Deterministic forward restoration: given the parameter matrix and two
/// neighboring blocks, each further block is forced. For empty blocks
/// `N(i+1) = row_c(M) − N(i−1)` for every color `c` present in block `i`;
/// for complete blocks `N(i+1) = row_c(M) − N(i−1) − N(i) + e_c`. All colors
/// present must force the same block.
pub fn propagate(
    m: &ParameterMatrix,
    b0: BlockProfile,
    b1: BlockProfile,
    family: Family,
) -> Result<PropagateOutcome, ConstructionError> {
    let k = m.k();
    let n = family.n();
    for (idx, b) in [&b0, &b1].into_iter().enumerate() {
        if b.len() != k {
            return Err(ColoringError::ProfileLength {
                block: idx,
                len: b.len(),
                colors: k,
            }
            .into());
        }
        let sum: usize = b.iter().sum();
        if sum != n {
            return Err(ColoringError::ProfileSum { block: idx, sum, n }.into());
        }
    }
    // The state space is bounded by (number of profiles)^2, so the orbit must
    // repeat within that many steps.
    let bound = profile_count(n, k).saturating_mul(profile_count(n, k)).saturating_add(2);
    let mut blocks: Vec<BlockProfile> = vec![b0, b1];
    let mut seen: HashMap<(BlockProfile, BlockProfile), usize> = HashMap::new();
    seen.insert((blocks[0].clone(), blocks[1].clone()), 0);
    for _ in 0..bound {
        let prev = &blocks[blocks.len() - 2];
        let cur = &blocks[blocks.len() - 1];
        let block_index = blocks.len();
        let mut forced: Option<(usize, BlockProfile)> = None;
        for c in 0..k {
            if cur[c] == 0 {
                continue;
            }
            let mut next = vec![0usize; k];
            for j in 0..k {
                let mut have = m.entry(c, j);
                if family.kind() == BlockKind::Complete && j == c {
                    have += 1;
                }
                let mut need = prev[j];
                if family.kind() == BlockKind::Complete {
                    need += cur[j];
                }
                if have < need {
                    return Ok(PropagateOutcome::Contradiction {
                        block: block_index,
                        reason: ContradictionReason::NegativeEntry { color: j },
                    });
                }
                next[j] = have - need;
            }
            match &forced {
                None => forced = Some((c, next)),
                Some((c0, prev_next)) => {
                    if *prev_next != next {
                        return Ok(PropagateOutcome::Contradiction {
                            block: block_index,
                            reason: ContradictionReason::Inconsistent { color_a: *c0, color_b: c },
                        });
                    }
                }
            }
        }
        let (_, next) = forced.expect("blocks are nonempty");
        let sum: usize = next.iter().sum();
        if sum != n {
            return Ok(PropagateOutcome::Contradiction {
                block: block_index,
                reason: ContradictionReason::WrongSum { sum },
            });
        }
        let pair = (blocks[blocks.len() - 1].clone(), next.clone());
        blocks.push(next);
        let pair_index = blocks.len() - 2;
        if let Some(&first) = seen.get(&pair) {
            if first == 0 {
                let period = blocks[..pair_index].to_vec();
                // unused colors (if the seed never reaches them) are compacted
                return Ok(PropagateOutcome::Periodic(PeriodicColoring::new_normalized(
                    family, period,
                )?));
            }
            return Ok(PropagateOutcome::NotBiInfinite);
        }
        seen.insert(pair, pair_index);
    }
    unreachable!("orbit must repeat within the state-space bound");
}

/// Number of profiles: weak compositions of `n` into `k` parts,
/// `C(n+k−1, k−1)`.
fn profile_count(n: usize, k: usize) -> usize {
    let mut result: usize = 1;
    for i in 0..k - 1 {
        result = result.saturating_mul(n + k - 1 - i) / (i + 1);
    }
    result
}

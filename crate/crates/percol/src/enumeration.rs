//! Brute-force oracle, theorem-driven generator, classifier, and catalog
//! diff harness.
//!
//! The oracle enumerates every perfect coloring within (colors, period)
//! bounds by depth-first search over block-profile sequences; the generator
//! expands the constructive families instead. Agreement of the two catalogs
//! is the machine check of the classification theorems at desk scale.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{
    conjugate_semicolorings, disjunctive_multipath, matched_check, series_cyclic, series_mirror,
    three_periodic_complete, ConstructionError, MirrorType, Parity, Semicoloring,
};
use crate::multipath::{
    BlockKind, BlockProfile, ColoringError, Family, NotPerfect, ParameterMatrix, PeriodicColoring,
};

/// Enumeration bounds: at most `k_max` colors, primitive period at most
/// `p_max` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub k_max: usize,
    pub p_max: usize,
}

impl Bounds {
    pub fn new(k_max: usize, p_max: usize) -> Result<Self, EnumerationError> {
        if k_max == 0 || p_max == 0 {
            return Err(EnumerationError::DomainError);
        }
        Ok(Bounds { k_max, p_max })
    }
}

/// Cap on visited partial search states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget(pub u64);

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget(100_000_000)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("bounds must be positive")]
    DomainError,
    #[error("search budget of {limit} states exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("catalogs have different families or bounds")]
    BoundsMismatch,
    #[error("enumerated coloring failed verification: {0}")]
    NotPerfect(NotPerfect),
    #[error("coloring outside the theorem classes: {0:?}")]
    Unclassifiable(Box<PeriodicColoring>),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("malformed catalog file: {0}")]
    Parse(String),
}

/// Classification per the structure theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassLabel {
    Disjunctive,
    NonDisjunctiveBipartite,
    NonDisjunctiveMatched,
    NonDisjunctiveThreePeriodic,
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClassLabel::Disjunctive => "disjunctive",
            ClassLabel::NonDisjunctiveBipartite => "non-disjunctive-bipartite",
            ClassLabel::NonDisjunctiveMatched => "non-disjunctive-matched",
            ClassLabel::NonDisjunctiveThreePeriodic => "non-disjunctive-three-periodic",
        };
        f.write_str(s)
    }
}

/// Witnessing decomposition that reconstructs the classified coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// Base path coloring plus one profile per path color.
    Disjunctive {
        path: PeriodicColoring,
        profiles: Vec<BlockProfile>,
    },
    /// Conjugated 2-periodic semicolorings.
    Conjugation { even: Semicoloring, odd: Semicoloring },
    /// The three blocks of the period.
    ThreePeriodic { blocks: Vec<BlockProfile> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringClass {
    pub label: ClassLabel,
    pub evidence: Evidence,
}

impl ColoringClass {
    /// Rebuild the coloring from its evidence.
    pub fn reconstruct(&self, family: Family) -> Result<PeriodicColoring, EnumerationError> {
        match &self.evidence {
            Evidence::Disjunctive { path, profiles } => {
                Ok(disjunctive_multipath(path, profiles, family)?)
            }
            Evidence::Conjugation { even, odd } => conjugate_semicolorings(even, odd)
                .map_err(|e| EnumerationError::Parse(e.to_string())),
            Evidence::ThreePeriodic { blocks } => three_periodic_complete(
                blocks[0].clone(),
                blocks[1].clone(),
                blocks[2].clone(),
                family.n(),
            )
            .map_err(|e| EnumerationError::Parse(e.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("input coloring is not perfect: {0}")]
    NotPerfect(NotPerfect),
    #[error("coloring does not fit any theorem class")]
    Unclassifiable,
}

/// Classify a perfect coloring.
///
/// Disjunctive iff the blocks group by color support with identical profiles
/// per group, pairwise disjoint supports across groups, and a perfect induced
/// block-level path coloring. Otherwise, for empty blocks the coloring must
/// be a conjugation of 2-periodic semicolorings (disjoint part colors →
/// bipartite, shared → matched); for complete blocks the primitive period
/// must be 3 (or 1).
pub fn classify(c: &PeriodicColoring) -> Result<ColoringClass, ClassifyError> {
    c.infer_matrix().map_err(ClassifyError::NotPerfect)?;
    if let Some(class) = try_disjunctive(c) {
        return Ok(class);
    }
    let prim = c.primitive();
    match c.family().kind() {
        BlockKind::Empty => {
            let p = prim.period_len();
            if !matches!(p, 1 | 2 | 4) {
                return Err(ClassifyError::Unclassifiable);
            }
            let blocks: Vec<BlockProfile> =
                (0..4).map(|i| prim.period()[i % p].clone()).collect();
            let even_support = support_union(&[&blocks[0], &blocks[2]]);
            let odd_support = support_union(&[&blocks[1], &blocks[3]]);
            let even = Semicoloring::new(
                Parity::Even,
                c.family().n(),
                vec![blocks[0].clone(), blocks[2].clone()],
            )
            .expect("profiles come from a valid coloring");
            let odd = Semicoloring::new(
                Parity::Odd,
                c.family().n(),
                vec![blocks[1].clone(), blocks[3].clone()],
            )
            .expect("profiles come from a valid coloring");
            if even_support.is_disjoint(&odd_support) {
                Ok(ColoringClass {
                    label: ClassLabel::NonDisjunctiveBipartite,
                    evidence: Evidence::Conjugation { even, odd },
                })
            } else if matched_check(&prim) {
                Ok(ColoringClass {
                    label: ClassLabel::NonDisjunctiveMatched,
                    evidence: Evidence::Conjugation { even, odd },
                })
            } else {
                Err(ClassifyError::Unclassifiable)
            }
        }
        BlockKind::Complete => {
            let p = prim.period_len();
            if !matches!(p, 1 | 3) {
                return Err(ClassifyError::Unclassifiable);
            }
            let blocks: Vec<BlockProfile> =
                (0..3).map(|i| prim.period()[i % p].clone()).collect();
            Ok(ColoringClass {
                label: ClassLabel::NonDisjunctiveThreePeriodic,
                evidence: Evidence::ThreePeriodic { blocks },
            })
        }
    }
}

fn support(profile: &BlockProfile) -> BTreeSet<usize> {
    profile
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(c, _)| c)
        .collect()
}

fn support_union(profiles: &[&BlockProfile]) -> BTreeSet<usize> {
    profiles.iter().flat_map(|p| support(p)).collect()
}

fn try_disjunctive(c: &PeriodicColoring) -> Option<ColoringClass> {
    // group blocks by support; each group must carry a single profile
    let mut groups: BTreeMap<BTreeSet<usize>, BlockProfile> = BTreeMap::new();
    for prof in c.period() {
        let s = support(prof);
        match groups.get(&s) {
            None => {
                groups.insert(s, prof.clone());
            }
            Some(existing) => {
                if existing != prof {
                    return None;
                }
            }
        }
    }
    let supports: Vec<&BTreeSet<usize>> = groups.keys().collect();
    for a in 0..supports.len() {
        for b in a + 1..supports.len() {
            if !supports[a].is_disjoint(supports[b]) {
                return None;
            }
        }
    }
    // induced block-level coloring of the path, colors in order of first use
    let mut profile_order: Vec<BlockProfile> = Vec::new();
    let mut path_colors = Vec::with_capacity(c.period_len());
    for prof in c.period() {
        let idx = match profile_order.iter().position(|p| p == prof) {
            Some(i) => i,
            None => {
                profile_order.push(prof.clone());
                profile_order.len() - 1
            }
        };
        path_colors.push(idx);
    }
    let period = path_colors
        .iter()
        .map(|&col| crate::multipath::monochrome_profile(profile_order.len(), col, 1))
        .collect();
    let path = PeriodicColoring::try_new(
        Family::empty(1).expect("n = 1"),
        profile_order.len(),
        period,
    )
    .expect("path coloring from a valid period");
    if !path.is_perfect() {
        return None;
    }
    Some(ColoringClass {
        label: ClassLabel::Disjunctive,
        evidence: Evidence::Disjunctive { path, profiles: profile_order },
    })
}

/// Deduplicated set of canonical perfect colorings within bounds.
#[derive(Debug, Clone)]
pub struct Catalog {
    family: Family,
    bounds: Bounds,
    entries: BTreeMap<PeriodicColoring, (ParameterMatrix, ColoringClass)>,
}

impl Catalog {
    pub fn new(family: Family, bounds: Bounds) -> Self {
        Catalog { family, bounds, entries: BTreeMap::new() }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn colorings(&self) -> impl Iterator<Item = &PeriodicColoring> {
        self.entries.keys()
    }

    pub fn entries(
        &self,
    ) -> impl Iterator<Item = (&PeriodicColoring, &ParameterMatrix, &ColoringClass)> {
        self.entries.iter().map(|(c, (m, cl))| (c, m, cl))
    }

    pub fn contains(&self, c: &PeriodicColoring) -> bool {
        self.entries.contains_key(&c.canonicalize())
    }

    /// Canonicalize and insert if within bounds; returns whether the entry
    /// was new.
    pub fn insert(&mut self, c: &PeriodicColoring) -> Result<bool, EnumerationError> {
        let canon = c.canonicalize();
        if canon.colors() > self.bounds.k_max || canon.period_len() > self.bounds.p_max {
            return Ok(false);
        }
        if self.entries.contains_key(&canon) {
            return Ok(false);
        }
        let matrix = canon.infer_matrix().map_err(EnumerationError::NotPerfect)?;
        let class = classify(&canon).map_err(|e| match e {
            ClassifyError::NotPerfect(w) => EnumerationError::NotPerfect(w),
            ClassifyError::Unclassifiable => {
                EnumerationError::Unclassifiable(Box::new(canon.clone()))
            }
        })?;
        self.entries.insert(canon, (matrix, class));
        Ok(true)
    }

    /// Per-(colors, period, class) counts.
    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut counts: BTreeMap<(usize, usize, ClassLabel), usize> = BTreeMap::new();
        for (c, (_, class)) in &self.entries {
            *counts
                .entry((c.colors(), c.period_len(), class.label))
                .or_insert(0) += 1;
        }
        counts
            .into_iter()
            .map(|((colors, period, label), count)| SummaryRow {
                family: self.family,
                colors,
                period,
                label,
                count,
            })
            .collect()
    }

    /// Serialize as JSON lines: a header line with family and bounds, then
    /// one canonical coloring + matrix + class label per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let header = CatalogHeader {
            family: self.family,
            k_max: self.bounds.k_max,
            p_max: self.bounds.p_max,
        };
        out.push_str(&serde_json::to_string(&header).unwrap());
        out.push('\n');
        for (coloring, (matrix, class)) in &self.entries {
            let entry = CatalogLine {
                coloring: coloring.clone(),
                matrix: matrix.clone(),
                class: class.label,
            };
            out.push_str(&serde_json::to_string(&entry).unwrap());
            out.push('\n');
        }
        out
    }

    /// Parse the JSON lines format. Evidence is recomputed by classifying
    /// each entry.
    pub fn from_jsonl(text: &str) -> Result<Self, EnumerationError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header_line = lines
            .next()
            .ok_or_else(|| EnumerationError::Parse("empty catalog".into()))?;
        let header: CatalogHeader = serde_json::from_str(header_line)
            .map_err(|e| EnumerationError::Parse(e.to_string()))?;
        let bounds = Bounds::new(header.k_max, header.p_max)?;
        let mut catalog = Catalog::new(header.family, bounds);
        for line in lines {
            let entry: CatalogLine =
                serde_json::from_str(line).map_err(|e| EnumerationError::Parse(e.to_string()))?;
            let stated = entry.class;
            catalog.insert(&entry.coloring)?;
            let canon = entry.coloring.canonicalize();
            if let Some((matrix, class)) = catalog.entries.get(&canon) {
                if *matrix != entry.matrix || class.label != stated {
                    return Err(EnumerationError::Parse(format!(
                        "entry does not re-verify: {line}"
                    )));
                }
            }
        }
        Ok(catalog)
    }

    /// Set difference on canonical forms; `(∅, ∅)` certifies agreement.
    pub fn diff(
        &self,
        other: &Catalog,
    ) -> Result<(Vec<PeriodicColoring>, Vec<PeriodicColoring>), EnumerationError> {
        if self.family != other.family
            || self.bounds.k_max != other.bounds.k_max
            || self.bounds.p_max != other.bounds.p_max
        {
            return Err(EnumerationError::BoundsMismatch);
        }
        let only_a = self
            .entries
            .keys()
            .filter(|c| !other.entries.contains_key(*c))
            .cloned()
            .collect();
        let only_b = other
            .entries
            .keys()
            .filter(|c| !self.entries.contains_key(*c))
            .cloned()
            .collect();
        Ok((only_a, only_b))
    }
}

/// Set difference of two catalogs over the same family and bounds.
pub fn catalog_diff(
    a: &Catalog,
    b: &Catalog,
) -> Result<(Vec<PeriodicColoring>, Vec<PeriodicColoring>), EnumerationError> {
    a.diff(b)
}

#[derive(Serialize, Deserialize)]
struct CatalogHeader {
    family: Family,
    k_max: usize,
    p_max: usize,
}

#[derive(Serialize, Deserialize)]
struct CatalogLine {
    coloring: PeriodicColoring,
    matrix: ParameterMatrix,
    class: ClassLabel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SummaryRow {
    pub family: Family,
    pub colors: usize,
    pub period: usize,
    pub label: ClassLabel,
    pub count: usize,
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("kind,n,colors,period,class,count\n");
    for row in rows {
        let kind = match row.family.kind() {
            BlockKind::Empty => "empty",
            BlockKind::Complete => "complete",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            kind,
            row.family.n(),
            row.colors,
            row.period,
            row.label,
            row.count
        ));
    }
    out
}

/// All weak compositions of `n` into `k` parts, lexicographic order.
fn weak_compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; k];
    fn rec(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, pos: usize, left: usize) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(out, cur, pos + 1, left - v);
        }
    }
    rec(&mut out, &mut cur, 0, n);
    out
}

/// Positive compositions of `n` into exactly `parts` parts.
fn positive_compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 || parts > n {
        return Vec::new();
    }
    weak_compositions(n - parts, parts)
        .into_iter()
        .map(|c| c.into_iter().map(|v| v + 1).collect())
        .collect()
}

struct BudgetCounter<'a> {
    counter: &'a AtomicU64,
    limit: u64,
}

impl BudgetCounter<'_> {
    fn tick(&self) -> Result<(), EnumerationError> {
        let seen = self.counter.fetch_add(1, Ordering::Relaxed);
        if seen >= self.limit {
            return Err(EnumerationError::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }
}

/// Color-renaming symmetry breaking: a profile may only introduce new colors
/// as a contiguous run starting at `used`. Returns the new used-color count,
/// or None if inadmissible.
fn admissible(profile: &BlockProfile, used: usize) -> Option<usize> {
    let mut next = used;
    for (c, &count) in profile.iter().enumerate() {
        if count == 0 || c < used {
            continue;
        }
        if c != next {
            return None;
        }
        next += 1;
    }
    Some(next)
}

struct OracleSearch<'a> {
    family: Family,
    p: usize,
    profiles: &'a [BlockProfile],
    budget: &'a BudgetCounter<'a>,
    seq: Vec<usize>,
    rows: Vec<Option<Vec<usize>>>,
    found: Vec<PeriodicColoring>,
}

impl OracleSearch<'_> {
    fn sphere(&self, i: usize, color: usize) -> Vec<usize> {
        let prev = &self.profiles[self.seq[i - 1]];
        let here = &self.profiles[self.seq[i]];
        let next = &self.profiles[self.seq[i + 1]];
        let mut out: Vec<usize> = prev.iter().zip(next).map(|(a, b)| a + b).collect();
        if self.family.kind() == BlockKind::Complete {
            for (o, v) in out.iter_mut().zip(here) {
                *o += v;
            }
            out[color] -= 1;
        }
        out
    }

    /// Consistency of the now-interior block `i` against the learned rows.
    /// Returns the colors whose rows were newly set, for undo.
    fn check_interior(&mut self, i: usize) -> Option<Vec<usize>> {
        let mut set = Vec::new();
        let prof = self.profiles[self.seq[i]].clone();
        for (c, &count) in prof.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let nb = self.sphere(i, c);
            match &self.rows[c] {
                None => {
                    self.rows[c] = Some(nb);
                    set.push(c);
                }
                Some(row) => {
                    if *row != nb {
                        for s in set {
                            self.rows[s] = None;
                        }
                        return None;
                    }
                }
            }
        }
        Some(set)
    }

    fn search(&mut self, pos: usize, used: usize) -> Result<(), EnumerationError> {
        if pos == self.p {
            self.finalize(used)?;
            return Ok(());
        }
        for idx in 0..self.profiles.len() {
            let Some(new_used) = admissible(&self.profiles[idx], used) else {
                continue;
            };
            self.budget.tick()?;
            self.seq.push(idx);
            if pos >= 2 {
                if let Some(set) = self.check_interior(pos - 1) {
                    self.search(pos + 1, new_used)?;
                    for c in set {
                        self.rows[c] = None;
                    }
                }
            } else {
                self.search(pos + 1, new_used)?;
            }
            self.seq.pop();
        }
        Ok(())
    }

    fn finalize(&mut self, used: usize) -> Result<(), EnumerationError> {
        if used == 0 {
            return Ok(());
        }
        let period: Vec<BlockProfile> = self
            .seq
            .iter()
            .map(|&idx| self.profiles[idx][..used].to_vec())
            .collect();
        let coloring = PeriodicColoring::try_new(self.family, used, period)?;
        if coloring.is_perfect() {
            self.found.push(coloring.canonicalize());
        }
        Ok(())
    }
}

/// Exhaustive oracle: every canonical perfect coloring of the family with at
/// most `k_max` colors and primitive period at most `p_max`.
pub fn brute_force_enumerate(
    family: Family,
    bounds: Bounds,
    budget: SearchBudget,
) -> Result<Catalog, EnumerationError> {
    brute_force_enumerate_jobs(family, bounds, budget, 1)
}

/// Parallel oracle: work is partitioned on the first block profile; worker
/// results are merged by set union.
pub fn brute_force_enumerate_jobs(
    family: Family,
    bounds: Bounds,
    budget: SearchBudget,
    jobs: usize,
) -> Result<Catalog, EnumerationError> {
    Bounds::new(bounds.k_max, bounds.p_max)?;
    let profiles = weak_compositions(family.n(), bounds.k_max);
    let counter = AtomicU64::new(0);
    let jobs = jobs.max(1);

    // tasks: (period length, first-profile index)
    let mut tasks = Vec::new();
    for p in 1..=bounds.p_max {
        for idx in 0..profiles.len() {
            if admissible(&profiles[idx], 0).is_some() {
                tasks.push((p, idx));
            }
        }
    }

    let run_task = |p: usize, idx: usize| -> Result<Vec<PeriodicColoring>, EnumerationError> {
        let budget = BudgetCounter { counter: &counter, limit: budget.0 };
        let mut search = OracleSearch {
            family,
            p,
            profiles: &profiles,
            budget: &budget,
            seq: vec![idx],
            rows: vec![None; bounds.k_max],
            found: Vec::new(),
        };
        budget.tick()?;
        let used = admissible(&profiles[idx], 0).expect("task is admissible");
        if p == 1 {
            search.finalize(used)?;
        } else {
            search.search(1, used)?;
        }
        Ok(search.found)
    };

    let mut found: Vec<PeriodicColoring> = Vec::new();
    if jobs == 1 {
        for &(p, idx) in &tasks {
            found.extend(run_task(p, idx)?);
        }
    } else {
        let chunks: Vec<Vec<(usize, usize)>> = (0..jobs)
            .map(|w| {
                tasks
                    .iter()
                    .copied()
                    .skip(w)
                    .step_by(jobs)
                    .collect::<Vec<_>>()
            })
            .collect();
        let results: Vec<Result<Vec<PeriodicColoring>, EnumerationError>> =
            std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .iter()
                    .map(|chunk| {
                        let run_task = &run_task;
                        scope.spawn(move || {
                            let mut acc = Vec::new();
                            for &(p, idx) in chunk {
                                acc.extend(run_task(p, idx)?);
                            }
                            Ok(acc)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
        for r in results {
            found.extend(r?);
        }
    }

    let mut catalog = Catalog::new(family, bounds);
    for c in found {
        catalog.insert(&c)?;
    }
    Ok(catalog)
}

/// All members of the four path-coloring series within bounds.
pub fn series_within(bounds: Bounds) -> Vec<PeriodicColoring> {
    let mut out = Vec::new();
    for k in 1..=bounds.k_max {
        if k <= bounds.p_max {
            out.push(series_cyclic(k).expect("k >= 1"));
        }
        if k < 2 {
            continue;
        }
        for (ty, period) in [
            (MirrorType::OneOne, 2 * k - 2),
            (MirrorType::OneTwo, 2 * k - 1),
            (MirrorType::TwoTwo, 2 * k),
        ] {
            if period <= bounds.p_max {
                out.push(series_mirror(k, ty).expect("k >= 2"));
            }
        }
    }
    out
}

/// Theorem-driven generator: expands the constructive families and keeps
/// whatever verifies and fits the bounds.
pub fn theorem_enumerate(
    family: Family,
    bounds: Bounds,
    budget: SearchBudget,
) -> Result<Catalog, EnumerationError> {
    Bounds::new(bounds.k_max, bounds.p_max)?;
    let counter = AtomicU64::new(0);
    let budget = BudgetCounter { counter: &counter, limit: budget.0 };
    let mut catalog = Catalog::new(family, bounds);

    // disjunctive colorings: every series base x every assignment of
    // disjoint-support profiles
    let comps: Vec<Vec<Vec<usize>>> = (0..=family.n())
        .map(|s| positive_compositions(family.n(), s))
        .collect();
    for base in series_within(bounds) {
        let k_base = base.colors();
        // choose a positive composition per path color, total colors <= k_max
        let mut choice: Vec<usize> = Vec::new(); // composition part-counts per path color
        let mut picks: Vec<Vec<usize>> = Vec::new();
        assign_profiles(
            &base,
            family,
            &comps,
            bounds.k_max,
            k_base,
            &mut choice,
            &mut picks,
            &budget,
            &mut catalog,
        )?;
    }

    match family.kind() {
        BlockKind::Empty => {
            // non-disjunctive colorings are 4-periodic conjugations of
            // 2-periodic semicolorings: enumerate block quadruples
            let profiles = weak_compositions(family.n(), bounds.k_max);
            let mut seq: Vec<usize> = Vec::new();
            enumerate_tuples(&profiles, 4, 0, &mut seq, &budget, &mut |seq| {
                let blocks: Vec<&BlockProfile> = seq.iter().map(|&i| &profiles[i]).collect();
                let disjoint = support_union(&[blocks[0], blocks[2]])
                    .is_disjoint(&support_union(&[blocks[1], blocks[3]]));
                let matched = (0..bounds.k_max)
                    .all(|j| blocks[0][j] + blocks[2][j] == blocks[1][j] + blocks[3][j]);
                if !disjoint && !matched {
                    return Ok(());
                }
                let period: Vec<BlockProfile> = blocks.into_iter().cloned().collect();
                let coloring = PeriodicColoring::new_normalized(family, period)?;
                if coloring.is_perfect() {
                    catalog.insert(&coloring)?;
                }
                Ok(())
            })?;
        }
        BlockKind::Complete => {
            // non-disjunctive colorings are 3-periodic: enumerate block triples
            let profiles = weak_compositions(family.n(), bounds.k_max);
            let mut seq: Vec<usize> = Vec::new();
            enumerate_tuples(&profiles, 3, 0, &mut seq, &budget, &mut |seq| {
                let period: Vec<BlockProfile> =
                    seq.iter().map(|&i| profiles[i].clone()).collect();
                let coloring = PeriodicColoring::new_normalized(family, period)?;
                if coloring.is_perfect() {
                    catalog.insert(&coloring)?;
                }
                Ok(())
            })?;
        }
    }
    Ok(catalog)
}

/// Enumerate tuples of profile indices with the contiguous-new-color rule.
fn enumerate_tuples(
    profiles: &[BlockProfile],
    len: usize,
    used: usize,
    seq: &mut Vec<usize>,
    budget: &BudgetCounter<'_>,
    visit: &mut dyn FnMut(&[usize]) -> Result<(), EnumerationError>,
) -> Result<(), EnumerationError> {
    if seq.len() == len {
        return visit(seq);
    }
    for idx in 0..profiles.len() {
        let Some(new_used) = admissible(&profiles[idx], used) else {
            continue;
        };
        budget.tick()?;
        seq.push(idx);
        enumerate_tuples(profiles, len, new_used, seq, budget, visit)?;
        seq.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn assign_profiles(
    base: &PeriodicColoring,
    family: Family,
    comps: &[Vec<Vec<usize>>],
    k_max: usize,
    k_base: usize,
    choice: &mut Vec<usize>,
    picks: &mut Vec<Vec<usize>>,
    budget: &BudgetCounter<'_>,
    catalog: &mut Catalog,
) -> Result<(), EnumerationError> {
    if picks.len() == k_base {
        let total: usize = choice.iter().sum();
        let mut profiles: Vec<BlockProfile> = Vec::with_capacity(k_base);
        let mut offset = 0;
        for pick in picks.iter() {
            let mut prof = vec![0; total];
            for (i, &v) in pick.iter().enumerate() {
                prof[offset + i] = v;
            }
            offset += pick.len();
            profiles.push(prof);
        }
        let coloring = disjunctive_multipath(base, &profiles, family)?;
        catalog.insert(&coloring)?;
        return Ok(());
    }
    let used: usize = choice.iter().sum();
    let remaining = k_base - picks.len();
    for s in 1..=family.n() {
        // every remaining path color needs at least one fresh color
        if used + s + (remaining - 1) > k_max {
            break;
        }
        for comp in &comps[s] {
            budget.tick()?;
            choice.push(s);
            picks.push(comp.clone());
            assign_profiles(
                base, family, comps, k_max, k_base, choice, picks, budget, catalog,
            )?;
            picks.pop();
            choice.pop();
        }
    }
    Ok(())
}

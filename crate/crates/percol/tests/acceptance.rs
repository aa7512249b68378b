//! Acceptance gate: nine criteria comparing the constructive theory against
//! the brute-force oracle at desk scale. Each test prints one PASS/FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use percol::{
    brute_force_enumerate_jobs, catalog_diff, cycle_product_coloring, disjunctive_finite,
    disjunctive_multipath, glue, matched_check, propagate, series_mirror, series_within,
    theorem_enumerate, verify_perfect_finite, BlockProfile, Bounds, Catalog, ClassLabel, Family,
    FiniteGraph, MirrorType, ParameterMatrix, PeriodicColoring, PropagateOutcome, SearchBudget,
    Semicoloring, VertexColoring,
};

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

struct Shared {
    /// path graph (Empty, n=1), k ≤ 5, p ≤ 10: oracle and generator
    path: (Catalog, Catalog),
    /// Empty n ∈ {2,3}, k ≤ 4, p ≤ 6
    empty: Vec<(Family, Catalog, Catalog)>,
    /// Complete n ∈ {2,3}, k ≤ 3, p ≤ 6
    complete: Vec<(Family, Catalog, Catalog)>,
}

fn shared() -> &'static Shared {
    static SHARED: OnceLock<Shared> = OnceLock::new();
    SHARED.get_or_init(|| {
        let budget = SearchBudget::default();
        let enumerate_pair = |family: Family, bounds: Bounds| {
            let oracle = brute_force_enumerate_jobs(family, bounds, budget, jobs())
                .expect("oracle enumeration within budget");
            let theorem =
                theorem_enumerate(family, bounds, budget).expect("theorem enumeration");
            (family, oracle, theorem)
        };
        let path_bounds = Bounds::new(5, 10).unwrap();
        let (_, path_oracle, path_theorem) =
            enumerate_pair(Family::empty(1).unwrap(), path_bounds);
        let empty = vec![
            enumerate_pair(Family::empty(2).unwrap(), Bounds::new(4, 6).unwrap()),
            enumerate_pair(Family::empty(3).unwrap(), Bounds::new(4, 6).unwrap()),
        ];
        let complete = vec![
            enumerate_pair(Family::complete(2).unwrap(), Bounds::new(3, 6).unwrap()),
            enumerate_pair(Family::complete(3).unwrap(), Bounds::new(3, 6).unwrap()),
        ];
        Shared { path: (path_oracle, path_theorem), empty, complete }
    })
}

fn all_oracle_catalogs() -> Vec<&'static Catalog> {
    let s = shared();
    let mut out = vec![&s.path.0];
    out.extend(s.empty.iter().map(|(_, o, _)| o));
    out.extend(s.complete.iter().map(|(_, o, _)| o));
    out
}

fn criterion(name: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("PASS {name}"),
        Err(e) => {
            println!("FAIL {name}");
            std::panic::resume_unwind(e);
        }
    }
}

#[test]
fn criterion_1_path_series_exhaustive() {
    criterion(
        "criterion 1: oracle = generator on the path graph (k<=5, p<=10)",
        || {
            let (oracle, theorem) = &shared().path;
            let (a, b) = catalog_diff(oracle, theorem).unwrap();
            assert!(a.is_empty(), "oracle-only entries: {a:?}");
            assert!(b.is_empty(), "generator-only entries: {b:?}");
            assert!(oracle.len() >= 16, "expected all series members, got {}", oracle.len());
        },
    );
}

#[test]
fn criterion_2_empty_blocks_classification() {
    criterion(
        "criterion 2: empty blocks n in {2,3} — classes + catalogs match",
        || {
            for (family, oracle, theorem) in &shared().empty {
                let (a, b) = catalog_diff(oracle, theorem).unwrap();
                assert!(a.is_empty(), "{family:?} oracle-only: {a:?}");
                assert!(b.is_empty(), "{family:?} generator-only: {b:?}");
                for (coloring, _, class) in oracle.entries() {
                    assert!(
                        matches!(
                            class.label,
                            ClassLabel::Disjunctive
                                | ClassLabel::NonDisjunctiveBipartite
                                | ClassLabel::NonDisjunctiveMatched
                        ),
                        "unexpected class {:?} for {coloring:?}",
                        class.label
                    );
                }
                assert!(!oracle.is_empty());
            }
        },
    );
}

#[test]
fn criterion_3_complete_blocks_three_periodic() {
    criterion(
        "criterion 3: complete blocks n in {2,3} — non-disjunctive => period 3",
        || {
            for (family, oracle, theorem) in &shared().complete {
                let (a, b) = catalog_diff(oracle, theorem).unwrap();
                assert!(a.is_empty(), "{family:?} oracle-only: {a:?}");
                assert!(b.is_empty(), "{family:?} generator-only: {b:?}");
                for (coloring, _, class) in oracle.entries() {
                    match class.label {
                        ClassLabel::Disjunctive => {}
                        ClassLabel::NonDisjunctiveThreePeriodic => {
                            assert!(
                                matches!(coloring.primitive_period_len(), 1 | 3),
                                "non-disjunctive entry with period {}: {coloring:?}",
                                coloring.primitive_period_len()
                            );
                        }
                        other => panic!("unexpected class {other:?} for {coloring:?}"),
                    }
                }
                assert!(!oracle.is_empty());
            }
        },
    );
}

fn random_positive_composition(rng: &mut ChaCha8Rng, n: usize, parts: usize) -> Vec<usize> {
    // place parts-1 cuts among n units
    let mut comp = vec![1usize; parts];
    for _ in 0..n - parts {
        let i = rng.gen_range(0..parts);
        comp[i] += 1;
    }
    comp
}

fn random_series(rng: &mut ChaCha8Rng, k_max: usize) -> PeriodicColoring {
    let k = rng.gen_range(1..=k_max);
    if k == 1 {
        return percol::series_cyclic(1).unwrap();
    }
    match rng.gen_range(0..4) {
        0 => percol::series_cyclic(k).unwrap(),
        1 => series_mirror(k, MirrorType::OneOne).unwrap(),
        2 => series_mirror(k, MirrorType::OneTwo).unwrap(),
        _ => series_mirror(k, MirrorType::TwoTwo).unwrap(),
    }
}

#[test]
fn criterion_4_disjunctive_products_verify() {
    criterion(
        "criterion 4: 1000 random disjunctive products all verify perfect",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
            // finite side: 500 lexicographic products
            for case in 0..500 {
                let (g, psi) = match rng.gen_range(0..2) {
                    0 => {
                        // any coloring of a complete graph is perfect
                        let m = rng.gen_range(3..=6);
                        let labels: Vec<usize> =
                            (0..m).map(|_| rng.gen_range(0..m)).collect();
                        (FiniteGraph::complete(m), VertexColoring::from_labels(&labels).unwrap())
                    }
                    _ => {
                        // v mod k around a cycle of length divisible by k
                        let m = rng.gen_range(3..=6);
                        let divisors: Vec<usize> = (1..=m).filter(|d| m % d == 0).collect();
                        let k = divisors[rng.gen_range(0..divisors.len())];
                        let labels: Vec<usize> = (0..m).map(|v| v % k).collect();
                        (FiniteGraph::cycle(m), VertexColoring::from_labels(&labels).unwrap())
                    }
                };
                let h_size = rng.gen_range(1..=4);
                let h = if rng.gen_bool(0.5) {
                    FiniteGraph::empty_graph(h_size)
                } else {
                    FiniteGraph::complete(h_size)
                };
                // any labeling of K_h or its complement is perfect, so random
                // fibers with disjoint label ranges are valid
                let mut offset = 0;
                let fibers: Vec<Vec<usize>> = (0..psi.colors())
                    .map(|_| {
                        let width = rng.gen_range(1..=2.min(h_size));
                        let fiber =
                            (0..h_size).map(|_| offset + rng.gen_range(0..width)).collect();
                        offset += width;
                        fiber
                    })
                    .collect();
                let product = disjunctive_finite(&g, &psi, &fibers, &h)
                    .unwrap_or_else(|e| panic!("finite case {case}: {e}"));
                let big = percol::lexicographic_product(&g, &h);
                verify_perfect_finite(&big, &product)
                    .unwrap_or_else(|e| panic!("finite case {case} not perfect: {e}"));
            }
            // multipath side: 500 disjunctive colorings
            for case in 0..500 {
                let n = rng.gen_range(1..=3);
                let family = if rng.gen_bool(0.5) {
                    Family::empty(n).unwrap()
                } else {
                    Family::complete(n).unwrap()
                };
                let psi = random_series(&mut rng, 4);
                let comps: Vec<Vec<usize>> = (0..psi.colors())
                    .map(|_| {
                        let parts = rng.gen_range(1..=n);
                        random_positive_composition(&mut rng, n, parts)
                    })
                    .collect();
                let total: usize = comps.iter().map(|c| c.len()).sum();
                let mut offset = 0;
                let profiles: Vec<BlockProfile> = comps
                    .iter()
                    .map(|comp| {
                        let mut prof = vec![0; total];
                        prof[offset..offset + comp.len()].copy_from_slice(comp);
                        offset += comp.len();
                        prof
                    })
                    .collect();
                let coloring = disjunctive_multipath(&psi, &profiles, family)
                    .unwrap_or_else(|e| panic!("multipath case {case}: {e}"));
                assert!(coloring.is_perfect(), "multipath case {case} not perfect");
            }
        },
    );
}

#[test]
fn criterion_5_glue_to_series_lift() {
    criterion(
        "criterion 5: every catalog entry glues to a perfect series lift",
        || {
            for catalog in all_oracle_catalogs() {
                for coloring in catalog.colorings() {
                    let glued = glue(coloring)
                        .unwrap_or_else(|e| panic!("glue failed on {coloring:?}: {e}"));
                    assert!(glued.is_perfect());
                    assert!(glued.is_block_monochrome(), "not block-monochrome: {glued:?}");
                    let path_colors = glued.block_colors().unwrap();
                    let period = path_colors
                        .iter()
                        .map(|&c| percol::multipath::monochrome_profile(glued.colors(), c, 1))
                        .collect();
                    let path = PeriodicColoring::try_new(
                        Family::empty(1).unwrap(),
                        glued.colors(),
                        period,
                    )
                    .unwrap()
                    .canonicalize();
                    let bounds =
                        Bounds::new(path.colors(), path.period_len().max(path.colors())).unwrap();
                    assert!(
                        series_within(bounds).iter().any(|s| s.canonicalize() == path),
                        "glued form {path:?} is not a series member"
                    );
                }
            }
        },
    );
}

#[test]
fn criterion_6_matched_implies_perfect() {
    criterion(
        "criterion 6: 500 random matched quadruples all verify perfect",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6a09e667);
            let mut verified = 0;
            while verified < 500 {
                let n = rng.gen_range(1..=3);
                let k = rng.gen_range(2..=4);
                let random_profile = |rng: &mut ChaCha8Rng| {
                    let mut p = vec![0usize; k];
                    for _ in 0..n {
                        p[rng.gen_range(0..k)] += 1;
                    }
                    p
                };
                let b0 = random_profile(&mut rng);
                let b1 = random_profile(&mut rng);
                let b2 = random_profile(&mut rng);
                // matched condition determines B3 = B0 + B2 - B1; reject
                // draws where it goes negative
                let b3: Option<BlockProfile> = (0..k)
                    .map(|j| (b0[j] + b2[j]).checked_sub(b1[j]))
                    .collect();
                let Some(b3) = b3 else { continue };
                let coloring = PeriodicColoring::new_normalized(
                    Family::empty(n).unwrap(),
                    vec![b0, b1, b2, b3],
                )
                .unwrap();
                assert!(matched_check(&coloring), "quadruple not matched: {coloring:?}");
                assert!(coloring.is_perfect(), "matched but not perfect: {coloring:?}");
                verified += 1;
            }
        },
    );
}

#[test]
fn criterion_7_unique_restoration() {
    criterion(
        "criterion 7: propagation restores every entry; bad seed contradicts quickly",
        || {
            for catalog in all_oracle_catalogs() {
                for (coloring, matrix, _) in catalog.entries() {
                    let p = coloring.period_len();
                    for i in 0..p {
                        let b0 = coloring.period()[i].clone();
                        let b1 = coloring.period()[(i + 1) % p].clone();
                        let outcome =
                            propagate(matrix, b0, b1, coloring.family()).unwrap();
                        match outcome {
                            PropagateOutcome::Periodic(restored) => {
                                assert_eq!(
                                    restored.canonicalize(),
                                    *coloring,
                                    "restoration from block {i} diverged"
                                );
                            }
                            other => panic!(
                                "restoration from block {i} of {coloring:?} gave {other:?}"
                            ),
                        }
                    }
                }
            }
            // complete blocks, x - z = 1: the count of the first color drops
            // by one every three blocks and must go negative within
            // 3 * (z + 1) blocks of reaching z
            let (n, x, y, z) = (5usize, 3usize, 2usize, 2usize);
            let matrix = ParameterMatrix::new(vec![
                vec![x + y - 1, 2 * n - x - y, n],
                vec![x + y, 2 * n - x - y - 1, n],
                vec![y + z, 2 * n - y - z, n - 1],
            ])
            .unwrap();
            let b0 = vec![x, n - x, 0];
            let b1 = vec![y, n - y, 0];
            match propagate(&matrix, b0, b1, Family::complete(n).unwrap()).unwrap() {
                PropagateOutcome::Contradiction { block, .. } => {
                    assert!(
                        block <= 3 + 3 * (z + 1),
                        "contradiction only at block {block}"
                    );
                }
                other => panic!("expected a contradiction, got {other:?}"),
            }
        },
    );
}

#[test]
fn criterion_8_non_disjunctive_splittings() {
    criterion(
        "criterion 8: non-disjunctive entries glue exactly to S(1) and S(2) lifts",
        || {
            for (family, oracle, _) in &shared().empty {
                let mut glued_forms = std::collections::BTreeSet::new();
                for (coloring, _, class) in oracle.entries() {
                    if class.label == ClassLabel::Disjunctive {
                        continue;
                    }
                    glued_forms.insert(glue(coloring).unwrap().canonicalize());
                }
                let n = family.n();
                let s1 = PeriodicColoring::try_new(*family, 1, vec![vec![n]]).unwrap();
                let s2 = PeriodicColoring::try_new(
                    *family,
                    2,
                    vec![vec![n, 0], vec![0, n]],
                )
                .unwrap();
                let expected: std::collections::BTreeSet<_> =
                    [s1.canonicalize(), s2.canonicalize()].into_iter().collect();
                assert_eq!(
                    glued_forms, expected,
                    "reduced forms of non-disjunctive entries for {family:?}"
                );
            }
        },
    );
}

#[test]
fn criterion_9_finite_cross_check() {
    criterion(
        "criterion 9: 50 entries re-verified on the finite cycle product",
        || {
            let mut checked = 0;
            for catalog in all_oracle_catalogs() {
                for (coloring, matrix, _) in catalog.entries() {
                    if checked == 50 {
                        break;
                    }
                    let p = coloring.period_len();
                    if !(3..=6).contains(&p) {
                        continue;
                    }
                    let (graph, vertex_coloring) = cycle_product_coloring(coloring);
                    let finite_matrix = verify_perfect_finite(&graph, &vertex_coloring)
                        .unwrap_or_else(|e| {
                            panic!("finite check failed for {coloring:?}: {e}")
                        });
                    assert_eq!(finite_matrix, *matrix, "matrices differ for {coloring:?}");
                    checked += 1;
                }
            }
            assert_eq!(checked, 50, "only {checked} entries with period in [3,6]");
        },
    );
}

#[test]
fn conjugation_semicolorings_roundtrip() {
    // supplementary: conjugating the semicolorings recovered from each
    // 4-periodic non-disjunctive entry reproduces the entry
    for (_, oracle, _) in &shared().empty {
        for (coloring, _, class) in oracle.entries() {
            if let percol::Evidence::Conjugation { even, odd } = &class.evidence {
                let rebuilt = percol::conjugate_semicolorings(even, odd).unwrap();
                assert_eq!(rebuilt.canonicalize(), *coloring);
                let _: (&Semicoloring, &Semicoloring) = (even, odd);
            }
        }
    }
}

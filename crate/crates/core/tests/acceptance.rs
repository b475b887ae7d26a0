//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! tolerance and time budget; the test fails if any criterion fails.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bangle_core::curve::{transport, Curve, Shape};
use bangle_core::harness::{arc_from_word, flip_words, load_corpus, run_corpus, CorpusConfig, CorpusEntry, Identity};
use bangle_core::mutation::{
    ext_matrix_mutate, gamma_transform, matrix_mutate, yseed_mutate, ExchangeMatrix, ExtendedMatrix,
};
use bangle_core::poly::{LaurentPoly, PosRational};
use bangle_core::shear::shear_flip_check;
use bangle_core::snakegraph::{build_graph, SnakeData};
use bangle_core::surface::TaggedTriangulation;

/// Seed for the random matrices of criterion 6.
const MATRIX_SEED: u64 = 0x5eed_2024;
const MATRIX_COUNT: usize = 200;
const MAX_TILES_FOR_BRUTE_FORCE: usize = 8;

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus() -> Vec<CorpusEntry> {
    load_corpus(&corpus_dir())
        .unwrap()
        .into_iter()
        .map(|e| e.expect("shipped corpus parses"))
        .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion(id: u32, name: &str, tolerance: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let pass = out.pass && in_time;
    println!(
        "[{}] {id}. {name}: {} | tolerance: {tolerance} | time {:.2?} (budget {:?}{})",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed,
        budget,
        if in_time { "" } else { ", exceeded" },
    );
    pass
}

fn annulus_reproduction() -> Outcome {
    let t = TaggedTriangulation::parse(include_str!("../corpus/annulus.tri")).unwrap();
    let c = Curve::parse(include_str!("../corpus/annulus.core.curve"), &t).unwrap();
    let b = t.adjacency_matrix();
    let mut checks: Vec<(&str, bool)> = Vec::new();
    checks.push(("B(T)", b.rows() == vec![vec![0, -2], vec![2, 0]]));

    let d = SnakeData::compute(&t, &c).unwrap();
    checks.push(("F(T)", d.f_poly == LaurentPoly::parse("1 + y2 + y1*y2", 0, 2).unwrap()));
    let h = d.h_vector(&b).unwrap();
    checks.push(("h1", h[0] == 0));

    let (t2, step) = t.flip(1).unwrap();
    let c2 = transport(&c, &t, &t2, &step).unwrap();
    let b2 = t2.adjacency_matrix();
    let d2 = SnakeData::compute(&t2, &c2).unwrap();
    checks.push(("F(T')", d2.f_poly == LaurentPoly::parse("1 + y1 + y1*y2", 0, 2).unwrap()));
    let h2 = d2.h_vector(&b2).unwrap();
    checks.push(("h1'", h2[0] == -1));

    let y: Vec<PosRational> = (0..2)
        .map(|j| PosRational::from_poly(LaurentPoly::y(0, 2, j)))
        .collect();
    let y2 = yseed_mutate(&y, &b, 0).unwrap();
    let one = PosRational::one(0, 2);
    let y1_expected = y[0].inv().unwrap();
    let y2_expected = y[1].mul(&one.add(&y[0]).unwrap().pow(2).unwrap()).unwrap();
    checks.push(("y1'", y2[0].rf_eq(&y1_expected).unwrap()));
    checks.push(("y2'", y2[1].rf_eq(&y2_expected).unwrap()));

    // F(y) (1 + y1')^(-h1') = F'(y') (1 + y1)^(-h1)
    let lhs = PosRational::from_poly(d.f_poly.clone())
        .mul(&one.add(&y2[0]).unwrap().pow(-h2[0]).unwrap())
        .unwrap();
    let rhs = d2
        .f_poly
        .substitute(&y2)
        .unwrap()
        .mul(&one.add(&y[0]).unwrap().pow(-h[0]).unwrap())
        .unwrap();
    checks.push(("Eq. F relation", lhs.rf_eq(&rhs).unwrap()));

    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    Outcome {
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks hold", checks.len())
        } else {
            format!("failed: {}", failed.join(", "))
        },
    }
}

fn closed_curve_sweep() -> Vec<bangle_core::harness::VerificationReport> {
    run_corpus(&CorpusConfig {
        dir: corpus_dir(),
        max_word: 4,
        arc_word: 0,
    })
    .unwrap()
}

fn count(reports: &[bangle_core::harness::VerificationReport], ids: &[Identity]) -> (usize, usize) {
    let sel: Vec<_> = reports.iter().filter(|r| ids.contains(&r.identity)).collect();
    (sel.len(), sel.iter().filter(|r| !r.pass).count())
}

fn key_lemma_sweep() -> Outcome {
    let reports = closed_curve_sweep();
    let (total, failed) = count(&reports, &[Identity::KeyLemmaF, Identity::KeyLemmaG, Identity::KeyLemmaH]);
    let (_, load_failed) = count(&reports, &[Identity::Load]);
    let surfaces: Vec<String> = corpus()
        .into_iter()
        .filter(|e| !e.curves.is_empty())
        .map(|e| e.name)
        .collect();
    Outcome {
        pass: total > 0 && failed == 0 && load_failed == 0,
        detail: format!(
            "{total} identity checks on {} with closed curves, {failed} failed",
            surfaces.join(", ")
        ),
    }
}

fn shear_transport() -> Outcome {
    let reports = closed_curve_sweep();
    let (flips, flip_failed) = count(&reports, &[Identity::ShearFlip]);
    let (geq, geq_failed) = count(&reports, &[Identity::GEqualsShear]);
    // Arcs as laminates, on every corpus surface.
    let (mut arc_checks, mut arc_failed) = (0usize, 0usize);
    for e in corpus() {
        let t = &e.triangulation;
        for w in flip_words(t.n(), 2) {
            for l in 1..=t.n() {
                let arc = arc_from_word(t, &w, l).unwrap();
                for k in 1..=t.n() {
                    arc_checks += 1;
                    if !shear_flip_check(t, k, &arc).map(|r| r.0).unwrap_or(false) {
                        arc_failed += 1;
                    }
                }
            }
        }
    }
    Outcome {
        pass: flip_failed == 0 && geq_failed == 0 && arc_failed == 0 && flips > 0 && geq > 0,
        detail: format!(
            "shear flips on closed curves {}/{flips}, on arcs {}/{arc_checks}; g = Sh {}/{geq}",
            flips - flip_failed,
            arc_checks - arc_failed,
            geq - geq_failed
        ),
    }
}

fn arc_bangles() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let names = ["annulus", "polygon5", "polygon6", "polygon7", "polygon8"];
    for name in names {
        let file = format!("{name}.tri");
        std::fs::copy(corpus_dir().join(&file), dir.path().join(&file)).unwrap();
    }
    let reports = run_corpus(&CorpusConfig {
        dir: dir.path().to_path_buf(),
        max_word: 0,
        arc_word: 5,
    })
    .unwrap();
    let (total, failed) = count(&reports, &[Identity::ArcVsCluster]);
    Outcome {
        pass: total > 0 && failed == 0,
        detail: format!("{} of {total} arcs match their cluster variable ({})", total - failed, names.join(", ")),
    }
}

/// Every curve met in the sweeps: closed fixtures along words of length at
/// most 4, and arcs produced by words of length at most 3.
fn corpus_curves() -> Vec<(TaggedTriangulation, Curve)> {
    let mut out = Vec::new();
    for e in corpus() {
        let t = &e.triangulation;
        for (_, c) in &e.curves {
            for w in flip_words(t.n(), 4) {
                let (mut cur, mut cc) = (t.clone(), c.clone());
                for &k in &w {
                    let (next, step) = cur.flip(k).unwrap();
                    cc = transport(&cc, &cur, &next, &step).unwrap();
                    cur = next;
                }
                out.push((cur, cc));
            }
        }
        for w in flip_words(t.n(), 3) {
            for l in 1..=t.n() {
                let arc = arc_from_word(t, &w, l).unwrap();
                if matches!(arc.shape, Shape::Path(_)) && !arc.tags.contains(&bangle_core::curve::Tag::Notched) {
                    out.push((t.clone(), arc));
                }
            }
        }
    }
    out
}

fn matching_oracle() -> Outcome {
    let (mut graphs, mut mismatched) = (0usize, 0usize);
    let mut seen = std::collections::HashSet::new();
    for (t, c) in corpus_curves() {
        let g = build_graph(&t, &c).unwrap();
        if g.len() > MAX_TILES_FOR_BRUTE_FORCE {
            continue;
        }
        let key = format!("{g}");
        if !seen.insert(key) {
            continue;
        }
        graphs += 1;
        let same_perfect = match g.cut_graph() {
            Some((cut, _, _)) => cut.perfect_matchings_dp() == cut.perfect_matchings_brute(),
            None => g.perfect_matchings_dp() == g.perfect_matchings_brute(),
        };
        if !same_perfect || g.enumerate_matchings() != g.brute_force_matchings() {
            mismatched += 1;
        }
    }
    Outcome {
        pass: graphs > 0 && mismatched == 0,
        detail: format!("{graphs} distinct graphs with at most {MAX_TILES_FOR_BRUTE_FORCE} tiles, {mismatched} mismatches"),
    }
}

fn random_skew(rng: &mut ChaCha8Rng) -> ExchangeMatrix {
    let n = rng.gen_range(1..=6);
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-3..=3);
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    ExchangeMatrix::from_rows(&rows).unwrap()
}

fn structural_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(MATRIX_SEED);
    let mut bad = Vec::new();
    for _ in 0..MATRIX_COUNT {
        let b = random_skew(&mut rng);
        let n = b.n();
        let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        for k in 0..n {
            let m = matrix_mutate(&b, k).unwrap();
            if !m.is_skew_symmetric() {
                bad.push("skew-symmetry");
            }
            if matrix_mutate(&m, k).unwrap() != b {
                bad.push("matrix involution");
            }
            let ext = ExtendedMatrix::from_exchange(&b, g.clone()).unwrap();
            if ext_matrix_mutate(&ext_matrix_mutate(&ext, k).unwrap(), k).unwrap() != ext {
                bad.push("extended involution");
            }
            if gamma_transform(&gamma_transform(&g, &b, k).unwrap(), &m, k).unwrap() != g {
                bad.push("gamma involution");
            }
            if n <= 3 {
                let y: Vec<PosRational> = (0..n)
                    .map(|j| PosRational::from_poly(LaurentPoly::y(0, n, j)))
                    .collect();
                let back = yseed_mutate(&yseed_mutate(&y, &b, k).unwrap(), &m, k).unwrap();
                if !back.iter().zip(&y).all(|(a, b)| a.rf_eq(b).unwrap()) {
                    bad.push("y-seed involution");
                }
            }
        }
    }
    let mut fixtures = 0;
    for (t, c) in corpus_curves() {
        let d = SnakeData::compute(&t, &c).unwrap();
        fixtures += 1;
        let constant_one = d.f_poly.constant_term() == 1.into();
        if !constant_one || !d.f_poly.is_subtraction_free() {
            bad.push("F constant term and positivity");
        }
        if c.is_closed() && d.h_vector(&t.adjacency_matrix()).unwrap().iter().any(|&h| h > 0) {
            bad.push("h <= 0");
        }
    }
    bad.sort_unstable();
    bad.dedup();
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{MATRIX_COUNT} random matrices (seed {MATRIX_SEED:#x}), {fixtures} fixture graphs{}",
            if bad.is_empty() { String::new() } else { format!("; violated: {}", bad.join(", ")) }
        ),
    }
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "annulus reproduction", "exact", secs(1), annulus_reproduction),
        criterion(2, "Key Lemma sweep, words of length <= 4", "exact", secs(120), key_lemma_sweep),
        criterion(3, "shear transport and g = Sh", "exact", secs(60), shear_transport),
        criterion(4, "arc bangles vs mutation, words of length <= 5", "exact", secs(120), arc_bangles),
        criterion(5, "transfer DP vs brute-force matchings", "exact", secs(60), matching_oracle),
        criterion(6, "structural invariants", "exact", secs(30), structural_invariants),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    assert!(results.iter().all(|&p| p));
}

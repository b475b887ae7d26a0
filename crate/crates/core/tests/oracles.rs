//! Values checked against independent computations done in the test itself.

use std::path::Path;

use bangle_core::curve::{Shape, Tag};
use bangle_core::harness::{arc_from_word, flip_words, load_corpus, CorpusEntry};
use bangle_core::mutation::{Coefficients, ExchangeMatrix, Seed};
use bangle_core::poly::LaurentPoly;
use bangle_core::shear::dual_shear;
use bangle_core::snakegraph::{msw_function, snake_g_vector, SnakeData};
use bangle_core::surface::TaggedTriangulation;

fn corpus() -> Vec<CorpusEntry> {
    load_corpus(&Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"))
        .unwrap()
        .into_iter()
        .map(|e| e.unwrap())
        .collect()
}

fn entry(name: &str) -> CorpusEntry {
    corpus().into_iter().find(|e| e.name == name).unwrap()
}

/// Common degree of all terms of a principal-coefficient Laurent polynomial
/// under `deg x_i = e_i`, `deg y_j = -(column j of B)`.
fn homogeneous_degree(p: &LaurentPoly, b: &ExchangeMatrix) -> Option<Vec<i64>> {
    let n = b.n();
    let mut degree: Option<Vec<i64>> = None;
    for (m, _) in p.terms() {
        let e = &m.0;
        let d: Vec<i64> = (0..n)
            .map(|i| i64::from(e[i]) - (0..n).map(|j| b.get(i, j) * i64::from(e[n + j])).sum::<i64>())
            .collect();
        match &degree {
            None => degree = Some(d),
            Some(prev) if *prev != d => return None,
            _ => {}
        }
    }
    degree
}

#[test]
fn pentagon_adjacency_matrix() {
    let t = entry("polygon5").triangulation;
    let b = t.adjacency_matrix().rows();
    assert!(b == vec![vec![0, 1], vec![-1, 0]] || b == vec![vec![0, -1], vec![1, 0]]);
}

#[test]
fn annulus_bangle_function() {
    let e = entry("annulus");
    let c = &e.curves[0].1;
    // three good matchings: x1^-1 x2^-1 (x1^0 x2^0 + x1^2 + x2^2)
    let want = LaurentPoly::parse("x1^-1*x2^-1 + x1*x2^-1 + x1^-1*x2", 2, 0).unwrap();
    assert_eq!(msw_function(&e.triangulation, c, false).unwrap(), want);
}

#[test]
fn principal_arcs_match_principal_seeds() {
    for name in ["annulus", "annulus21", "polygon5", "polygon6", "torus1"] {
        let t = entry(name).triangulation;
        let b = t.adjacency_matrix();
        for w in flip_words(t.n(), 3) {
            let w0: Vec<usize> = w.iter().map(|k| k - 1).collect();
            let seed = Seed::initial(b.clone(), Coefficients::Principal).mutate_word(&w0).unwrap();
            for l in 1..=t.n() {
                let arc = arc_from_word(&t, &w, l).unwrap();
                let msw = msw_function(&t, &arc, true).unwrap();
                let cluster = seed.x[l - 1].to_laurent().unwrap().expect("Laurent phenomenon");
                assert_eq!(msw, cluster, "{name} {w:?} arc {l}");
            }
        }
    }
}

#[test]
fn g_vectors_from_homogeneity() {
    for name in ["annulus", "annulus21", "polygon6", "polygon7", "torus1"] {
        let t = entry(name).triangulation;
        let b = t.adjacency_matrix();
        for w in flip_words(t.n(), 3) {
            let w0: Vec<usize> = w.iter().map(|k| k - 1).collect();
            let seed = Seed::initial(b.clone(), Coefficients::Principal).mutate_word(&w0).unwrap();
            for l in 1..=t.n() {
                let x = seed.x[l - 1].to_laurent().unwrap().unwrap();
                let g = homogeneous_degree(&x, &b).expect("principal cluster variables are homogeneous");
                let arc = arc_from_word(&t, &w, l).unwrap();
                assert_eq!(snake_g_vector(&t, &arc).unwrap(), g, "{name} {w:?} arc {l}");
                assert_eq!(dual_shear(&t, &arc).unwrap(), g, "{name} {w:?} arc {l}");
            }
        }
    }
}

#[test]
fn closed_curves_are_homogeneous_with_degree_g() {
    for e in corpus() {
        let t = &e.triangulation;
        let b = t.adjacency_matrix();
        for (name, c) in &e.curves {
            let x = msw_function(t, c, true).unwrap();
            let g = homogeneous_degree(&x, &b).unwrap();
            assert_eq!(g, SnakeData::compute(t, c).unwrap().g, "{} {name}", e.name);
        }
    }
}

#[test]
fn laurent_phenomenon_along_words() {
    for name in ["polygon6", "annulus21", "torus1", "square1"] {
        let t = entry(name).triangulation;
        let base = Seed::initial(t.adjacency_matrix(), Coefficients::None);
        for w in flip_words(t.n(), 6).iter().step_by(7) {
            let w0: Vec<usize> = w.iter().map(|k| k - 1).collect();
            let seed = base.mutate_word(&w0).unwrap();
            for x in &seed.x {
                let p = x.to_laurent().unwrap().expect("Laurent");
                assert!(p.is_subtraction_free());
            }
        }
    }
}

#[test]
fn matching_counts_at_unit_values() {
    // With every variable 1 the bangle function counts (good) matchings.
    for e in corpus() {
        let t = &e.triangulation;
        for (_, c) in &e.curves {
            let d = SnakeData::compute(t, c).unwrap();
            let x = msw_function(t, c, false).unwrap();
            let at_one: num_bigint::BigInt = x.terms().map(|(_, k)| k.clone()).sum();
            assert_eq!(at_one, d.matchings.len().into());
            assert_eq!(d.matchings, d.graph.brute_force_matchings());
        }
    }
}

#[test]
fn notched_radii_of_the_punctured_square() {
    let t = entry("square1").triangulation;
    let p = t.ideal.punctures()[0];
    let base = Seed::initial(t.adjacency_matrix(), Coefficients::None);
    let mut found = vec![false; t.n()];
    for w in flip_words(t.n(), 4) {
        let w0: Vec<usize> = w.iter().map(|k| k - 1).collect();
        let seed = base.mutate_word(&w0).unwrap();
        for m in 1..=t.n() {
            let arc = arc_from_word(&t, &w, m).unwrap();
            let Shape::InTriangulation(l) = arc.shape else { continue };
            let (a, b) = t.ideal.endpoints(l).unwrap();
            let notched_at_p = [a, b]
                .iter()
                .zip(arc.tags)
                .any(|(&v, tag)| v == p && tag == Tag::Notched);
            if !notched_at_p {
                continue;
            }
            let x = msw_function(&t, &arc, false).unwrap();
            let want = seed.x[m - 1].to_laurent().unwrap().unwrap();
            assert_eq!(x, want, "radius {l} notched, word {w:?}");
            found[l - 1] = true;
        }
    }
    assert!(found.iter().all(|&f| f), "every notched radius is reachable");
}

#[test]
fn tagged_triangulation_from_text() {
    let t = TaggedTriangulation::parse(include_str!("../corpus/square1.tri")).unwrap();
    assert_eq!(t.n(), 4);
    assert_eq!(t.ideal.punctures().len(), 1);
}

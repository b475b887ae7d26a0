use std::hint::black_box;
use std::path::Path;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::prelude::*;

use bangle_core::curve::Curve;
use bangle_core::harness::{
    arc_from_word, flip_words, load_corpus, run_corpus, verify_arc_bangle, verify_word, CorpusConfig,
    VerificationReport,
};
use bangle_core::surface::TaggedTriangulation;

fn corpus_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn curve_jobs(max_word: usize) -> Vec<(TaggedTriangulation, Curve, Vec<usize>)> {
    let mut jobs = Vec::new();
    for entry in load_corpus(&corpus_dir()).unwrap().into_iter().flatten() {
        for (_, c) in &entry.curves {
            for w in flip_words(entry.triangulation.n(), max_word) {
                jobs.push((entry.triangulation.clone(), c.clone(), w));
            }
        }
    }
    jobs
}

fn arc_jobs(name: &str, max_word: usize) -> Vec<(TaggedTriangulation, Vec<usize>)> {
    let entry = load_corpus(&corpus_dir())
        .unwrap()
        .into_iter()
        .flatten()
        .find(|e| e.name == name)
        .unwrap();
    let t = entry.triangulation;
    flip_words(t.n(), max_word).into_iter().map(|w| (t.clone(), w)).collect()
}

fn curve_check((t, c, w): &(TaggedTriangulation, Curve, Vec<usize>)) -> Vec<VerificationReport> {
    verify_word(t, c, w, "bench")
}

fn arc_check((t, w): &(TaggedTriangulation, Vec<usize>)) -> Vec<VerificationReport> {
    (1..=t.n())
        .map(|l| verify_arc_bangle(t, &arc_from_word(t, w, l).unwrap(), w, "bench").unwrap())
        .collect()
}

fn closed_curve_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_curve_sweep");
    group.sample_size(10);
    for max_word in [2, 3] {
        let jobs = curve_jobs(max_word);
        group.bench_with_input(BenchmarkId::new("sequential", max_word), &jobs, |b, jobs| {
            b.iter(|| black_box(jobs.iter().flat_map(curve_check).count()))
        });
        group.bench_with_input(BenchmarkId::new("parallel", max_word), &jobs, |b, jobs| {
            b.iter(|| black_box(jobs.par_iter().flat_map_iter(curve_check).count()))
        });
    }
    group.finish();
}

fn arc_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("arc_sweep");
    group.sample_size(10);
    for name in ["polygon7", "square1"] {
        let jobs = arc_jobs(name, 3);
        group.bench_with_input(BenchmarkId::new("sequential", name), &jobs, |b, jobs| {
            b.iter(|| black_box(jobs.iter().flat_map(arc_check).count()))
        });
        group.bench_with_input(BenchmarkId::new("parallel", name), &jobs, |b, jobs| {
            b.iter(|| black_box(jobs.par_iter().flat_map_iter(arc_check).count()))
        });
    }
    group.finish();
}

/// Whole corpus run through the library, which is parallel or sequential
/// depending on the `parallel` feature this bench was built with.
fn corpus_run(c: &mut Criterion) {
    let config = CorpusConfig {
        dir: corpus_dir(),
        max_word: 3,
        arc_word: 2,
    };
    let mut group = c.benchmark_group("run_corpus");
    group.sample_size(10);
    let label = if cfg!(feature = "parallel") { "parallel" } else { "sequential" };
    group.bench_function(label, |b| b.iter(|| black_box(run_corpus(&config).unwrap().len())));
    group.finish();
}

criterion_group!(benches, closed_curve_sweep, arc_sweep, corpus_run);
criterion_main!(benches);

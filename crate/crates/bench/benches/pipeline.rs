use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dpconform_bench::{fixture_repository, pattern_dir, srs_text};
use dpconform_core::detect::detect;
use dpconform_core::facts::parse_repository;
use dpconform_core::pipeline::{analyze, RunConfig};
use dpconform_core::rules::load_definitions;
use dpconform_core::score::assess_instance;
use dpconform_core::srs::{extract_triples, verify_violations};

fn phases(c: &mut Criterion) {
    let defs = load_definitions(&pattern_dir()).expect("shipped patterns load");
    let repo = fixture_repository();
    let facts = parse_repository(&repo).expect("fixtures parse");
    let candidates: Vec<_> = facts
        .iter()
        .flat_map(|f| {
            defs.iter()
                .flat_map(move |d| detect(&d.rule, f).into_iter().map(move |c| (f, d, c)))
        })
        .collect();

    c.bench_function("parse", |b| b.iter(|| parse_repository(black_box(&repo)).unwrap()));

    c.bench_function("detect", |b| {
        b.iter(|| {
            let mut n = 0;
            for f in &facts {
                for d in &defs {
                    n += detect(&d.rule, black_box(f)).len();
                }
            }
            n
        })
    });

    c.bench_function("score", |b| {
        b.iter(|| {
            candidates
                .iter()
                .map(|(f, d, cand)| assess_instance(black_box(cand), d, f).total_pct)
                .sum::<f64>()
        })
    });

    let text = std::fs::read_to_string(srs_text()).expect("requirements text");
    let assessed: Vec<_> = candidates
        .iter()
        .map(|(f, d, cand)| assess_instance(cand, d, f))
        .collect();
    c.bench_function("verify", |b| {
        b.iter(|| {
            let mut work = assessed.clone();
            verify_violations(&mut work, &extract_triples(black_box(&text)));
            work
        })
    });

    let config = RunConfig {
        repository_dir: repo.clone(),
        pattern_dir: pattern_dir(),
        srs_path: Some(srs_text()),
        ..RunConfig::default()
    };
    c.bench_function("analyze", |b| b.iter(|| analyze(black_box(&config)).unwrap()));
}

criterion_group!(benches, phases);
criterion_main!(benches);

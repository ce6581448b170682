use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use docmine_bench::{synthetic_module, LOGISTIC_SOURCE, MLP_SOURCE, SHORT_DESCS};
use docmine_core::cnl::parse_type_text;
use docmine_core::{
    evaluate, mine_source, refine, MineOptions, Overrides, RefineOptions, SourceFile,
};

fn type_grammar(c: &mut Criterion) {
    c.bench_function("parse_short_desc", |b| {
        b.iter(|| {
            for line in SHORT_DESCS {
                let _ = black_box(parse_type_text(black_box(line)));
            }
        })
    });
}

fn mining(c: &mut Criterion) {
    let opts = MineOptions::default();
    let logistic = SourceFile::new("logistic.py", LOGISTIC_SOURCE);
    let mlp = SourceFile::new("mlp.py", MLP_SOURCE);
    c.bench_function("mine_logistic", |b| {
        b.iter(|| mine_source(black_box(&logistic), &opts))
    });
    c.bench_function("mine_mlp", |b| {
        b.iter(|| mine_source(black_box(&mlp), &opts))
    });
    let mut group = c.benchmark_group("mine_synthetic");
    for params in [10, 50] {
        let src = synthetic_module(10, params);
        group.bench_with_input(BenchmarkId::from_parameter(params), &src, |b, src| {
            b.iter(|| mine_source(black_box(src), &opts))
        });
    }
    group.finish();
}

fn refine_and_eval(c: &mut Criterion) {
    let (mined, _) = mine_source(&synthetic_module(10, 20), &MineOptions::default());
    let schemas: Vec<_> = mined.into_iter().map(|m| m.schemas).collect();
    let ov = Overrides::default();
    let opts = RefineOptions::default();
    c.bench_function("refine_10x20", |b| {
        b.iter(|| {
            for s in &schemas {
                black_box(refine(s, None, &ov, &opts));
            }
        })
    });
    c.bench_function("evaluate_10x20", |b| {
        b.iter(|| evaluate(black_box(&schemas), black_box(&schemas)))
    });
}

criterion_group!(benches, type_grammar, mining, refine_and_eval);
criterion_main!(benches);

use algaut::algebra::VarietyTag;
use algaut::duality::verify_preduality;
use algaut::lab::{check_eilenberg_simple, nil3_monoid, order2_group};
use algaut::langlib::{alphabet, generated_local_variety, parse_regex};
use algaut::monoids::{divides, dual_generated_monoid};
use algaut::preimage::{check_preimage_laws, coalgebra_preimage, morphism_from_specs, Corpus, Seed};
use algaut::PairTag;
use algaut_bench::local_variety;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn languages(c: &mut Criterion) {
    let ab = alphabet("ab");
    c.bench_function("regex to minimal dfa", |b| b.iter(|| parse_regex(black_box("(a|b)*a(a|b)(a|b)"), &ab).unwrap()));
    let l = parse_regex("a*(ba*ba*)*", &ab).unwrap();
    c.bench_function("local variety BA", |b| b.iter(|| generated_local_variety(VarietyTag::Ba, black_box(&[l.clone()])).unwrap()));
    c.bench_function("local variety VECT2", |b| {
        b.iter(|| generated_local_variety(VarietyTag::Vect(2), black_box(&[l.clone()])).unwrap())
    });
}

fn monoids(c: &mut Criterion) {
    let q = local_variety(PairTag::Ba, "(ab)*", "ab");
    c.bench_function("dual monoid of (ab)*", |b| b.iter(|| dual_generated_monoid(black_box(&q)).unwrap()));
    let s = dual_generated_monoid(&q).unwrap();
    let g = order2_group(VarietyTag::Set).unwrap();
    c.bench_function("divides (ab)* into G2", |b| b.iter(|| divides(black_box(&s.base), &g, 2).unwrap()));
}

fn preimages(c: &mut Criterion) {
    let q = local_variety(PairTag::Jsl0, "a*b*", "ab");
    let f = morphism_from_specs(VarietyTag::Jsl0, "xy", "ab", &["a+ab", "b"]).unwrap();
    c.bench_function("coalgebra preimage JSL0", |b| b.iter(|| coalgebra_preimage(black_box(&q), &f).unwrap()));
    let mut corpus = Corpus::default_corpus();
    corpus.seeds = vec![Seed { regex: "(aa)*".into(), alphabet: "a".into() }, Seed { regex: "(ab)*".into(), alphabet: "ab".into() }];
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("preimage laws on two seeds", |b| b.iter(|| check_preimage_laws(black_box(&corpus), &[]).unwrap()));
    group.bench_function("preduality BA up to 8", |b| b.iter(|| verify_preduality(PairTag::Ba, 8).unwrap()));
    let d = nil3_monoid(VarietyTag::Pos).unwrap();
    let samples = algaut::lab::default_samples();
    group.bench_function("eilenberg DL01 nil3", |b| b.iter(|| check_eilenberg_simple(&d, PairTag::Dl01, black_box(&samples), 2).unwrap()));
    group.finish();
}

criterion_group!(benches, languages, monoids, preimages);
criterion_main!(benches);

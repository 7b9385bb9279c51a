use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hdbuchi::construct::productive;
use hdbuchi::determinize::determinize_hd;
use hdbuchi::games::{build_g1, build_joker, build_k_token};
use hdbuchi::hd::is_hd_buchi;
use hdbuchi::oracles::{gen, GenKind, GenSpec};
use hdbuchi::solver::solve_02;

fn universal(n: usize) -> hdbuchi::ParityAutomaton {
    gen(&GenSpec::new(GenKind::UniversalSd, n, 2, 8)).unwrap().automaton
}

fn hd_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("joker");
    for n in [4, 8, 16] {
        let a = universal(n);
        group.bench_with_input(BenchmarkId::new("build", n), &a, |b, a| b.iter(|| build_joker(a).unwrap()));
        group.bench_with_input(BenchmarkId::new("decide", n), &a, |b, a| b.iter(|| is_hd_buchi(a).unwrap()));
    }
    group.finish();
}

fn token_games(c: &mut Criterion) {
    let mut group = c.benchmark_group("tokens");
    for n in [4, 8] {
        let a = universal(n);
        group.bench_with_input(BenchmarkId::new("g1", n), &a, |b, a| b.iter(|| solve_02(&build_g1(a).unwrap()).unwrap()));
        group.bench_with_input(BenchmarkId::new("k2", n), &a, |b, a| b.iter(|| solve_02(&build_k_token(a, 2).unwrap()).unwrap()));
    }
    group.finish();
}

fn determinisation(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinize");
    group.sample_size(20);
    for d0 in [2, 3, 4] {
        let a = (5..)
            .map(|seed| gen(&GenSpec::new(GenKind::DbaCopies, d0, 2, seed)).unwrap().automaton)
            .find(|a| productive(a).is_some())
            .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(a.num_states()), &a, |b, a| b.iter(|| determinize_hd(a).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, hd_check, token_games, determinisation);
criterion_main!(benches);

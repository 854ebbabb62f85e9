use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tarl::algebra::{get_law, holds_identity, FiniteAlgebra, Mode};
use tarl::builtin::{get_formula, get_structure};
use tarl::exec::Exec;
use tarl::models::valid_in;

fn strategies() -> [(&'static str, Exec); 2] {
    [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::Parallel),
    ]
}

fn refleq_exhaustive(c: &mut Criterion) {
    let law = get_law("refleq").unwrap();
    let alg = FiniteAlgebra::complex(get_structure("K3").unwrap());
    let mut group = c.benchmark_group("refleq in Cm(K3)");
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                holds_identity(
                    &alg,
                    &law.lhs,
                    law.relation,
                    &law.rhs,
                    Mode::Exhaustive,
                    exec,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn reflection_validity(c: &mut Criterion) {
    let f = get_formula("reflection").unwrap().formula;
    let m = get_structure("K5").unwrap();
    let mut group = c.benchmark_group("reflection valid in K5");
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| valid_in(&m, &f, exec).unwrap())
        });
    }
    group.finish();
}

fn proper_sampling(c: &mut Criterion) {
    let law = get_law("ra4").unwrap();
    let alg = FiniteAlgebra::proper(6).unwrap();
    let mode = Mode::Random {
        trials: 20_000,
        seed: 1,
    };
    let mut group = c.benchmark_group("associativity over 6 points");
    for (name, exec) in strategies() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| holds_identity(&alg, &law.lhs, law.relation, &law.rhs, mode, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = refleq_exhaustive, reflection_validity, proper_sampling
}
criterion_main!(benches);

// Compare `cargo bench` (rayon) with `cargo bench --no-default-features`
// (sequential). The parallel build also runs each workload in a one-thread
// pool, which gives both numbers from one binary.

use criterion::{criterion_group, criterion_main, Criterion};
use num_rational::BigRational;
use qhopf::connection;
use qhopf::hopf::{self, Ctx};
use qhopf::normalform::{random_elements, Limits};
use qhopf::presentations::standard_universe;
use qhopf::scalars::sample_points;
use std::hint::black_box;
use std::sync::Arc;

fn ctx() -> Ctx<BigRational> {
    let u = Arc::new(standard_universe().unwrap());
    Ctx::new(u, sample_points(7, 1).remove(0), Limits::default()).unwrap()
}

type Workload = fn(&Ctx<BigRational>);

fn workloads() -> Vec<(&'static str, Workload)> {
    vec![
        ("hopf-axioms SU3", |c| {
            black_box(hopf::hopf_axioms(c, "SU3").unwrap());
        }),
        ("theorem34 len 3", |c| {
            black_box(connection::theorem_3_4(c, 3, 2).unwrap());
        }),
        ("nf 200 random SU3 elements", |c| {
            let eng = c.engine.get("SU3").unwrap();
            let es = random_elements(eng, 5, 200, 4).unwrap();
            black_box(qhopf::par::map(es, |e| eng.normalize_elem(&e).unwrap()));
        }),
    ]
}

fn bench(cr: &mut Criterion) {
    let mode = if qhopf::par::is_parallel() { "parallel" } else { "sequential" };
    let mut g = cr.benchmark_group(format!("engine/{mode}"));
    g.sample_size(10);
    for (name, f) in workloads() {
        // a fresh context each time, so the normal-form caches start empty
        g.bench_function(name, |b| b.iter_batched(ctx, |c| f(&c), criterion::BatchSize::PerIteration));
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            g.bench_function(format!("{name} (1 thread)"), |b| {
                b.iter_batched(ctx, |c| pool.install(|| f(&c)), criterion::BatchSize::PerIteration)
            });
        }
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);

//! Each workload runs on rayon's global pool and on a one-thread pool.
//! Built without the `parallel` feature both columns are sequential.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use wreathauto::automata::audit::Searched;
use wreathauto::automata::{relation_audit, Configs, RunBounds};
use wreathauto::groups::{bfs_ball, GroupSpec};
use wreathauto::rep_f2::bullets::{bullet_gaps, is_canonical};
use wreathauto::rep_f2::{f2_mult_pda, F2Rep};

fn workloads(c: &mut Criterion) {
    let f2_ball = bfs_ball(&GroupSpec::z2_wr_f2(), 3).unwrap();
    let rep = F2Rep::new();
    let m = f2_mult_pda("b").unwrap();
    type Job<'a> = Box<dyn Fn() + Sync + 'a>;
    let jobs: Vec<(&str, Job)> = vec![
        ("bfs_ball f2 r5", Box::new(|| drop(bfs_ball(&GroupSpec::z2_wr_f2(), 5).unwrap()))),
        ("bullet_gaps len7", Box::new(|| drop(bullet_gaps(7, true, &is_canonical, 0)))),
        ("audit f2 b r3 len6", Box::new(|| drop(relation_audit("b", &Searched(&Configs(&m), RunBounds::default()), &rep, "b", &f2_ball, 6)))),
    ];
    let single = ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut group = c.benchmark_group("parallel_vs_sequential");
    group.sample_size(10);
    for (name, job) in &jobs {
        group.bench_function(BenchmarkId::new("parallel", name), |b| b.iter(job));
        group.bench_function(BenchmarkId::new("sequential", name), |b| b.iter(|| single.install(job)));
    }
    group.finish();
}

criterion_group!(benches, workloads);
criterion_main!(benches);

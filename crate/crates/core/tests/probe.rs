use std::time::Instant;

use comet_core::components::certify_complex;
use comet_core::equations::{build_system, EquationFamily};
use comet_core::exec::Executor;
use comet_core::num::Rat;
use comet_core::prevariety::{compute_prevariety_scheduled, f_vector, Schedule};
use comet_core::tropical::{build_hypersurface, tropicalize, MassValuation};

fn run(n: usize, vals: Vec<i64>) { run_sched(n, vals, Schedule::CellCountAsc) }

fn run_sched(n: usize, vals: Vec<i64>, sched: Schedule) {
    let _ = env_logger::try_init();
    let t0 = Instant::now();
    let all = [EquationFamily::Ac, EquationFamily::Sac, EquationFamily::Cm];
    let system = build_system(n, &all).unwrap();
    let v: MassValuation<i64> =
        MassValuation::new(vals.into_iter().map(Rat::from_i64).collect(), false).unwrap();
    let exec = Executor::new(0);
    let tps: Vec<_> = system.iter().map(|p| tropicalize(p, &v).unwrap()).collect();
    let t1 = Instant::now();
    let hs: Vec<_> = tps
        .iter()
        .map(|tp| build_hypersurface(tp, &exec).unwrap())
        .collect();
    let t2 = Instant::now();
    eprintln!(
        "n={n}: {} polys, hypersurface cells: {:?}",
        system.len(),
        hs.iter().map(|h| h.cells.len()).collect::<Vec<_>>()
    );
    let s0 = comet_core::lp::lp_stats();
    let prev = compute_prevariety_scheduled(&hs, sched, &exec).unwrap();
    let s1 = comet_core::lp::lp_stats();
    eprintln!(
        "n={n}: prevariety used {} LPs, {} pivots, {:.1}s in LP",
        s1.0 - s0.0,
        s1.1 - s0.1,
        (s1.2 - s0.2) as f64 / 1e9
    );
    let t3 = Instant::now();
    eprintln!(
        "n={n}: prevariety {} maximal cells, dims {:?}",
        prev.cells.len(),
        prev.max_dim()
    );
    let fv = f_vector(&prev, &exec);
    let t4 = Instant::now();
    eprintln!("n={n}: f-vector {:?}", fv);
    let cert = certify_complex(&prev, &exec, false);
    let t5 = Instant::now();
    eprintln!(
        "n={n}: verdict {:?}, components {:?}, times: eq {:?} hyp {:?} prev {:?} fvec {:?} cert {:?}",
        cert.verdict,
        cert.components.as_ref().map(|c| c.len()),
        t1 - t0,
        t2 - t1,
        t3 - t2,
        t4 - t3,
        t5 - t4,
    );
}

#[test]
#[ignore]
fn probe_n3() {
    run(3, vec![1, 4, 9]);
}

#[test]
#[ignore]
fn probe_n4() {
    run(4, vec![1, 4, 9, 16]);
}

#[test]
#[ignore]
fn probe_n5() {
    run(5, vec![1, 4, 9, 16, 25]);
}

#[test]
#[ignore]
fn probe_n4_desc() {
    run_sched(4, vec![1, 4, 9, 16], Schedule::CellCountDesc);
}

#[test]
#[ignore]
fn probe_n4_given() {
    run_sched(4, vec![1, 4, 9, 16], Schedule::Given);
}

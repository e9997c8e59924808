//! End-to-end acceptance checks. Each test prints a single pass/fail line so
//! `cargo test --test acceptance -- --nocapture` doubles as a report.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercircle::peter_weyl::{catalog, default_grid, expand, truncation_error, Branch};
use supercircle::real_forms::{
    differential_at_identity, lie_involution_solve, Conjugation, GaugeSign, RealStructure,
};
use supercircle::reps::{
    berezinian_1x1, decompose, matrix_exponential_closed, matrix_exponential_series,
    pi_minus_indecomposable, su11_full_matrix, su11_membership, GMat2,
};
use supercircle::scalar::{Backend, Scalar};
use supercircle::suites::{
    random_even_invertible, random_exact_conjugation, random_odd, random_rep, run_suite,
    suite_berezinian, RunConfig,
};
use supercircle::grassmann::GrassmannNumber;

fn report(name: &str, ok: bool) {
    println!("{name}: {}", if ok { "pass" } else { "fail" });
    assert!(ok, "{name} failed");
}

fn exact_cfg() -> RunConfig {
    RunConfig {
        backend: Backend::Exact,
        tolerance: 0.0,
        trials: 200,
        odd_generators: 4,
        ..RunConfig::default()
    }
}

#[test]
fn ac1_group_axioms() {
    let start = Instant::now();
    let ks = [
        Scalar::exact(1, 1, 0, 1),
        Scalar::exact(-1, 1, 0, 1),
        Scalar::exact(0, 1, 1, 1),
        Scalar::exact(2, 1, 1, 1),
    ];
    let mut ok = true;
    for k in ks {
        let cfg = RunConfig { k, ..exact_cfg() };
        ok &= run_suite("group-axioms", &cfg).unwrap().passed();
    }
    ok &= start.elapsed().as_secs_f64() < 10.0;
    report("AC1 group-axioms", ok);
}

#[test]
fn ac2_susy_uniqueness() {
    let cfg = RunConfig { trials: 20, ..exact_cfg() };
    report("AC2 susy-uniqueness", run_suite("susy", &cfg).unwrap().passed());
}

#[test]
fn ac3_real_structure_classification() {
    let cfg = exact_cfg();
    report(
        "AC3 real-structures",
        run_suite("real-structures", &cfg).unwrap().passed(),
    );
}

#[test]
fn ac4_differential_matches_involution_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ok = true;
    for _ in 0..20 {
        let (k, u) = random_exact_conjugation(&mut rng);
        let (r1, r2) = lie_involution_solve(&k).unwrap();
        for sign in [GaugeSign::Plus, GaugeSign::Minus] {
            let r = RealStructure::new(
                Conjugation::new(u.clone(), k.clone(), 0.0).unwrap(),
                sign,
            );
            let d = differential_at_identity(&r).unwrap();
            let zz = &d[1][1];
            ok &= *zz == r1.a || *zz == r2.a;
        }
    }
    report("AC4 differential-vs-involution", ok);
}

#[test]
fn ac5_covering_map() {
    let cfg = RunConfig {
        backend: Backend::Float,
        trials: 200,
        ..RunConfig::default()
    };
    report("AC5 covering-map", run_suite("cover", &cfg).unwrap().passed());
}

#[test]
fn ac6_decomposition_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ok = true;
    for _ in 0..100 {
        let (rep, truth) = random_rep(&mut rng, 10);
        match decompose(&rep, 0.0) {
            Ok(d) => ok &= d.summary == truth,
            Err(_) => ok = false,
        }
    }
    ok &= start.elapsed().as_secs_f64() < 30.0;
    report("AC6 decomposition-round-trip", ok);
}

#[test]
fn ac7_pi_minus_indecomposable() {
    report("AC7 pi-minus-indecomposable", pi_minus_indecomposable());
}

#[test]
fn ac8_matrix_element_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = true;
    for m in -5i64..=5 {
        for _ in 0..50 {
            let t = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let theta = random_odd(&mut rng, 3, Backend::Float);
            let closed = matrix_exponential_closed(m, t, &theta).unwrap();
            let series = matrix_exponential_series(m, t, &theta).unwrap();
            // plain series: conditioning grows with |mt|, so not 1e-12 here
            ok &= closed.approx_eq(&series, 1e-8);
        }
    }
    report("AC8 matrix-element-identity", ok);
}

#[test]
fn ac9_peter_weyl_recovery() {
    let mut ok = true;
    // a trig polynomial is reconstructed to roundoff at sufficient order
    let g = default_grid(2);
    let f = catalog("2cos", g).unwrap();
    let table = expand(&f, 2, Branch::Default).unwrap();
    ok &= (table.a[&1] - 1.0).norm() < 1e-10 && (table.a[&-1] - 1.0).norm() < 1e-10;
    for row in truncation_error(&f, &table, 2).unwrap() {
        ok &= row.sup_error < 1e-10;
    }
    // smooth data: sup errors decrease monotonically in M and bottom out
    let g = default_grid(16);
    let f = catalog("expcos", g).unwrap();
    let orders = [2i64, 4, 8, 16];
    let mut errs: Vec<Vec<f64>> = Vec::new();
    for &m in &orders {
        let table = expand(&f, m, Branch::Default).unwrap();
        let rows = truncation_error(&f, &table, 2).unwrap();
        errs.push(rows.iter().map(|r| r.sup_error).collect());
    }
    for col in 0..errs[0].len() {
        for step in 1..errs.len() {
            ok &= errs[step][col] < errs[step - 1][col];
        }
        ok &= errs[errs.len() - 1][col] < 1e-8;
    }
    // the odd constant is carried entirely by the b_0 coefficient
    let f = catalog("odd_const", default_grid(4)).unwrap();
    let table = expand(&f, 4, Branch::Default).unwrap();
    ok &= (table.b[&0] - 1.0).norm() < 1e-12;
    for (m, c) in &table.b {
        if *m != 0 {
            ok &= c.norm() < 1e-12;
        }
    }
    for c in table.a.values() {
        ok &= c.norm() < 1e-12;
    }
    report("AC9 peter-weyl-recovery", ok);
}

fn random_exact_gmat2(rng: &mut ChaCha8Rng, n: usize) -> GMat2 {
    let b = Backend::Exact;
    GMat2::new([
        [
            random_even_invertible(rng, n, b),
            random_odd(rng, n, b),
        ],
        [
            random_odd(rng, n, b),
            random_even_invertible(rng, n, b),
        ],
    ])
}

#[test]
fn ac10_berezinian() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let n = 3;
    let b = Backend::Exact;
    let mut ok = true;
    for _ in 0..200 {
        let m1 = random_exact_gmat2(&mut rng, n);
        let m2 = random_exact_gmat2(&mut rng, n);
        let lhs = berezinian_1x1(&m1.mul(&m2).unwrap()).unwrap();
        let rhs = berezinian_1x1(&m1)
            .unwrap()
            .try_mul(&berezinian_1x1(&m2).unwrap())
            .unwrap();
        ok &= lhs == rhs;
    }
    // the membership relation holds exactly iff Ber = 1
    let one = GrassmannNumber::one(n, b);
    let half_i = Scalar::exact(0, 1, -1, 2);
    for _ in 0..100 {
        let (_k, a0) = random_exact_conjugation(&mut rng); // a0 = z/conj(z), unit modulus
        let a0 = GrassmannNumber::from_scalar(a0, n);
        let beta = random_odd(&mut rng, n, b);
        let bb = beta.try_mul(&beta.conj()).unwrap();
        let a = a0
            .try_mul(&one.try_add(&bb.scale(&half_i)).unwrap())
            .unwrap();
        ok &= su11_membership(&a, &beta).unwrap() == one;
        ok &= berezinian_1x1(&su11_full_matrix(&a, &beta).unwrap()).unwrap() == one;
        let a_bad = a.scale(&Scalar::from_i64(2, b));
        ok &= su11_membership(&a_bad, &beta).unwrap() != one;
        ok &= berezinian_1x1(&su11_full_matrix(&a_bad, &beta).unwrap()).unwrap() != one;
    }
    // the float-backed randomized suite agrees
    ok &= {
        let cfg = RunConfig { trials: 50, ..RunConfig::default() };
        suite_berezinian(&cfg).iter().all(|l| l["status"] != "fail")
    };
    report("AC10 berezinian", ok);
}

//! Seeded randomized verification suites behind the `verify` command, plus
//! the shared random generators used by the integration tests.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannNumber;
use crate::group::{add_mul, cover_p, g_inv, g_mul, AdditivePoint, GroupParam, SuperPoint};
use crate::laurent::LaurentPoly;
use crate::linalg::Matrix;
use crate::peter_weyl::Branch;
use crate::real_forms::{
    apply_rho, apply_s, is_fixed_point, lie_involution_solve, real_form_bracket, Conjugation,
    GaugeSign, RealFormBasis, RealStructure,
};
use crate::reps::{
    berezinian_1x1, branch_intertwiner, check_rep, decompose, make_weight_rep, su11_mul,
    sqrt_minus_m, su11_full_matrix, su11_membership, CanonicalClass, GMat2, GradedRep, PiMinus,
    SU11Element, Summary, WeightBlock,
};
use crate::scalar::{Backend, GaussRat, Scalar};
use crate::sections::{
    der_bracket, solve_susy_gauge, susy_proportionality, LaurentEndo,
    SuperDerivation, SuperOneForm,
};

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub k: Scalar,
    pub backend: Backend,
    pub odd_generators: usize,
    pub seed: u64,
    pub max_weight: i64,
    pub grid_size: usize,
    pub tolerance: f64,
    pub branch: Branch,
    pub trials: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k: Scalar::from_i64(1, Backend::Exact),
            backend: Backend::Exact,
            odd_generators: 4,
            seed: 0,
            max_weight: 8,
            grid_size: 0, // 0 = derive from max_weight
            tolerance: 1e-10,
            branch: Branch::Default,
            trials: 200,
        }
    }
}

pub fn rng_for(cfg: &RunConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed)
}

// ---- random generators ----

pub fn random_rational(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=4);
    num_rational::BigRational::new(num.into(), den.into())
}

pub fn random_scalar(rng: &mut ChaCha8Rng, backend: Backend) -> Scalar {
    match backend {
        Backend::Exact => Scalar::Exact(GaussRat::new(
            random_rational(rng),
            random_rational(rng),
        )),
        Backend::Float => Scalar::Float(Complex64::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )),
    }
}

pub fn random_nonzero_scalar(rng: &mut ChaCha8Rng, backend: Backend) -> Scalar {
    loop {
        let s = random_scalar(rng, backend);
        if !s.is_zero() {
            return s;
        }
    }
}

fn random_mask(rng: &mut ChaCha8Rng, n_pairs: usize, odd: bool) -> u32 {
    let bits = 2 * n_pairs as u32;
    loop {
        let m = rng.gen_range(0..(1u32 << bits));
        if (m.count_ones() % 2 == 1) == odd && m != 0 {
            return m;
        }
    }
}

pub fn random_even(rng: &mut ChaCha8Rng, n_pairs: usize, backend: Backend) -> GrassmannNumber {
    let mut g = GrassmannNumber::from_scalar(random_scalar(rng, backend), n_pairs);
    for _ in 0..rng.gen_range(0..3) {
        let mut term = GrassmannNumber::zero(n_pairs, backend);
        term.set_coeff(random_mask(rng, n_pairs, false), random_scalar(rng, backend));
        g = g.try_add(&term).unwrap();
    }
    g
}

pub fn random_odd(rng: &mut ChaCha8Rng, n_pairs: usize, backend: Backend) -> GrassmannNumber {
    let mut g = GrassmannNumber::zero(n_pairs, backend);
    for _ in 0..rng.gen_range(1..3) {
        let mut term = GrassmannNumber::zero(n_pairs, backend);
        term.set_coeff(random_mask(rng, n_pairs, true), random_scalar(rng, backend));
        g = g.try_add(&term).unwrap();
    }
    g
}

pub fn random_even_invertible(
    rng: &mut ChaCha8Rng,
    n_pairs: usize,
    backend: Backend,
) -> GrassmannNumber {
    loop {
        let w = random_even(rng, n_pairs, backend);
        if !w.body().is_zero() {
            return w;
        }
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, n_pairs: usize, backend: Backend) -> SuperPoint {
    loop {
        let w = random_even(rng, n_pairs, backend);
        if w.body().is_zero() {
            continue;
        }
        if let Ok(p) = SuperPoint::new(w, random_odd(rng, n_pairs, backend)) {
            return p;
        }
    }
}

/// Random invertible parity-preserving matrix (block-diagonal over the
/// even/odd split) with small integer entries; exact backend.
pub fn random_parity_matrix(rng: &mut ChaCha8Rng, p: usize, q: usize) -> Matrix {
    let b = Backend::Exact;
    loop {
        let mut t = Matrix::zero(p + q, p + q, b);
        for i in 0..p {
            for j in 0..p {
                t.set(i, j, Scalar::from_i64(rng.gen_range(-3i64..=3), b));
            }
        }
        for i in 0..q {
            for j in 0..q {
                t.set(p + i, p + j, Scalar::from_i64(rng.gen_range(-3i64..=3), b));
            }
        }
        if t.inverse(0.0).is_ok() {
            return t;
        }
    }
}

/// Random representation with known ground-truth summary: weight blocks of
/// bounded weight/multiplicity plus an optional weight-0 block, each
/// conjugated by a random parity-preserving matrix.
pub fn random_rep(rng: &mut ChaCha8Rng, max_weight: i64) -> (GradedRep, Summary) {
    let b = Backend::Exact;
    let mut blocks = Vec::new();
    let mut summary = Summary::new();
    let n_weights = rng.gen_range(1..=3);
    let mut used = std::collections::BTreeSet::new();
    for _ in 0..n_weights {
        let m = loop {
            let m = rng.gen_range(-max_weight..=max_weight);
            if m != 0 && !used.contains(&m) {
                break m;
            }
        };
        used.insert(m);
        let mult = rng.gen_range(1..=3usize);
        let s = sqrt_minus_m(m, b);
        let n = 2 * mult;
        let mut z = Matrix::zero(n, n, b);
        for i in 0..mult {
            z.set(mult + i, i, s.clone());
            z.set(i, mult + i, s.clone());
        }
        let t = random_parity_matrix(rng, mult, mult);
        let zc = t.mul(&z).mul(&t.inverse(0.0).unwrap());
        blocks.push(WeightBlock::new(m, mult, mult, zc).unwrap());
        *summary.entry(CanonicalClass::Weight(m)).or_insert(0) += mult;
    }
    if rng.gen_bool(0.7) {
        // weight-0 block: ra pi_minus, rb reversed, trivial padding
        let ra = rng.gen_range(0..=2usize);
        let rb = rng.gen_range(0..=2usize);
        let te = rng.gen_range(0..=1usize);
        let to = rng.gen_range(0..=1usize);
        let p = ra + rb + te;
        let q = ra + rb + to;
        if p + q > 0 {
            let n = p + q;
            let mut z = Matrix::zero(n, n, b);
            for i in 0..ra {
                z.set(p + i, i, Scalar::one(b)); // Z u_i = w_i
            }
            for j in 0..rb {
                z.set(ra + j, p + ra + j, Scalar::one(b)); // Z u'_j = w'_j
            }
            let t = random_parity_matrix(rng, p, q);
            let zc = t.mul(&z).mul(&t.inverse(0.0).unwrap());
            blocks.push(WeightBlock::new(0, p, q, zc).unwrap());
            if ra > 0 {
                *summary.entry(CanonicalClass::PiMinus).or_insert(0) += ra;
            }
            if rb > 0 {
                *summary.entry(CanonicalClass::PiMinusReversed).or_insert(0) += rb;
            }
            if te > 0 {
                *summary.entry(CanonicalClass::TrivialEven).or_insert(0) += te;
            }
            if to > 0 {
                *summary.entry(CanonicalClass::TrivialOdd).or_insert(0) += to;
            }
        }
    }
    (GradedRep { blocks }, summary)
}

/// Exact unit-modulus data: a random Gaussian rational `z` gives
/// `k = conj(z)^2` and `u = z / conj(z)` with `u^2 = conj(k)/k` bit-exactly.
pub fn random_exact_conjugation(rng: &mut ChaCha8Rng) -> (Scalar, Scalar) {
    loop {
        let z = Scalar::Exact(GaussRat::new(random_rational(rng), random_rational(rng)));
        if z.is_zero() {
            continue;
        }
        let zbar = z.conj();
        let k = &zbar * &zbar;
        let u = &z * &zbar.inv().unwrap();
        return (k, u);
    }
}

// ---- report plumbing ----

#[derive(Clone, Debug)]
pub struct Report {
    pub lines: Vec<Value>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines
            .iter()
            .all(|l| l["status"] != "fail")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&l.to_string());
            out.push('\n');
        }
        out
    }
}

fn record(suite: &str, check: &str, trials: usize, failures: usize) -> Value {
    json!({
        "suite": suite,
        "check": check,
        "trials": trials,
        "failures": failures,
        "status": if failures == 0 { "pass" } else { "fail" },
    })
}

fn skip(suite: &str, check: &str, reason: &str) -> Value {
    json!({ "suite": suite, "check": check, "status": "skip", "reason": reason })
}

// ---- suites ----

pub fn suite_group_axioms(cfg: &RunConfig) -> Vec<Value> {
    let mut rng = rng_for(cfg);
    let param = GroupParam::new(cfg.k.clone());
    let n = cfg.odd_generators;
    let b = cfg.backend;
    let eps = cfg.tolerance;
    let mut assoc_fail = 0;
    let mut unit_fail = 0;
    let mut inv_fail = 0;
    let unit = SuperPoint::unit(n, b);
    for _ in 0..cfg.trials {
        let p = random_point(&mut rng, n, b);
        let q = random_point(&mut rng, n, b);
        let r = random_point(&mut rng, n, b);
        let lhs = g_mul(&g_mul(&p, &q, &param).unwrap(), &r, &param).unwrap();
        let rhs = g_mul(&p, &g_mul(&q, &r, &param).unwrap(), &param).unwrap();
        if !lhs.approx_eq(&rhs, eps) {
            assoc_fail += 1;
        }
        if !g_mul(&p, &unit, &param).unwrap().approx_eq(&p, eps)
            || !g_mul(&unit, &p, &param).unwrap().approx_eq(&p, eps)
        {
            unit_fail += 1;
        }
        if !cfg.k.is_zero() {
            let pi = g_inv(&p, &param).unwrap();
            if !g_mul(&p, &pi, &param).unwrap().approx_eq(&unit, eps) {
                inv_fail += 1;
            }
        }
    }
    let mut out = vec![
        record("group-axioms", "associativity", cfg.trials, assoc_fail),
        record("group-axioms", "unit", cfg.trials, unit_fail),
    ];
    if cfg.k.is_zero() {
        out.push(skip(
            "group-axioms",
            "inverse",
            "k=0: D_0 is not a group family member; inverse law skipped",
        ));
    } else {
        out.push(record("group-axioms", "inverse", cfg.trials, inv_fail));
    }
    out
}

pub fn suite_susy(cfg: &RunConfig) -> Vec<Value> {
    let mut rng = rng_for(cfg);
    let b = cfg.backend;
    let mut count_fail = 0;
    let mut factor_fail = 0;
    let mut perturb_fail = 0;
    let trials = 20.min(cfg.trials.max(1));
    for _ in 0..trials {
        let k = random_nonzero_scalar(&mut rng, b);
        match solve_susy_gauge(&k) {
            Ok(sols) if sols.len() == 2 => {
                for s in &sols {
                    match susy_proportionality(s, &k) {
                        Ok(h) => {
                            let want = LaurentPoly::monomial(Scalar::from_i64(-1, b), -4);
                            if !h.approx_eq(&want, cfg.tolerance) {
                                factor_fail += 1;
                            }
                        }
                        Err(_) => factor_fail += 1,
                    }
                }
                // a perturbed gauge must fail the proportionality test
                let bad = LaurentEndo::new(
                    sols[0].f.clone(),
                    sols[0].g.scale(&Scalar::from_i64(2, b)),
                );
                if susy_proportionality(&bad, &k).is_ok() {
                    perturb_fail += 1;
                }
            }
            _ => count_fail += 1,
        }
    }
    vec![
        record("susy", "two_gauges", trials, count_fail),
        record("susy", "proportionality_factor", trials, factor_fail),
        record("susy", "perturbed_gauge_rejected", trials, perturb_fail),
    ]
}

pub fn suite_real_structures(cfg: &RunConfig) -> Vec<Value> {
    let mut rng = rng_for(cfg);
    let n = cfg.odd_generators;
    let eps = cfg.tolerance;
    let b = Backend::Exact; // classification is checked exactly
    let mut morphism_fail = 0;
    let mut invalid_fail = 0;
    let grid = 20;
    for _ in 0..grid {
        let (k, u) = random_exact_conjugation(&mut rng);
        let param = GroupParam::new(k.clone());
        for root in [u.clone(), u.neg()] {
            let c = Conjugation::new(root, k.clone(), eps).expect("constructed root is valid");
            let p = random_point(&mut rng, n, b);
            let q = random_point(&mut rng, n, b);
            let lhs = apply_s(&c, &g_mul(&p, &q, &param).unwrap()).unwrap();
            let rhs = g_mul(
                &apply_s(&c, &p).unwrap(),
                &apply_s(&c, &q).unwrap(),
                &param,
            )
            .unwrap();
            if lhs != rhs {
                morphism_fail += 1;
            }
        }
        for _ in 0..5 {
            let bad_u = loop {
                let v = random_nonzero_scalar(&mut rng, b);
                if Conjugation::new(v.clone(), k.clone(), eps).is_err() {
                    break v;
                }
            };
            let c = Conjugation::unchecked(bad_u, k.clone());
            // probe with odd parts on disjoint generators so the eta*eta'
            // cross term in the product cannot vanish
            let p = SuperPoint::new(
                random_even_invertible(&mut rng, n, b),
                GrassmannNumber::generator(1, n, b)
                    .scale(&random_nonzero_scalar(&mut rng, b)),
            )
            .unwrap();
            let q = SuperPoint::new(
                random_even_invertible(&mut rng, n, b),
                GrassmannNumber::generator(2, n, b)
                    .scale(&random_nonzero_scalar(&mut rng, b)),
            )
            .unwrap();
            let prod = g_mul(&p, &q, &param).unwrap();
            let lhs = apply_s(&c, &prod).unwrap();
            let rhs = g_mul(
                &apply_s(&c, &p).unwrap(),
                &apply_s(&c, &q).unwrap(),
                &param,
            )
            .unwrap();
            if lhs == rhs {
                invalid_fail += 1;
            }
        }
    }
    // involutivity of rho at k=1, u=1
    let k1 = Scalar::from_i64(1, b);
    let r = RealStructure::new(
        Conjugation::new(Scalar::from_i64(1, b), k1, eps).unwrap(),
        GaugeSign::Plus,
    );
    let mut invol_fail = 0;
    for _ in 0..cfg.trials {
        let p = random_point(&mut rng, n, b);
        let twice = apply_rho(&r, &apply_rho(&r, &p).unwrap()).unwrap();
        if twice != p {
            invol_fail += 1;
        }
    }
    vec![
        record("real-structures", "s_is_morphism_for_valid_u", grid * 2, morphism_fail),
        record("real-structures", "invalid_u_rejected", grid * 5, invalid_fail),
        record("real-structures", "rho_involutive", cfg.trials, invol_fail),
    ]
}

pub fn suite_lie_brackets(cfg: &RunConfig) -> Vec<Value> {
    let mut rng = rng_for(cfg);
    let b = Backend::Exact;
    let trials = 20.min(cfg.trials.max(1));
    let mut structure_fail = 0;
    let mut invol_fail = 0;
    let mut form_fail = 0;
    for _ in 0..trials {
        let k = random_nonzero_scalar(&mut rng, b);
        let c = SuperDerivation::euler(b);
        let z = SuperDerivation::z_left(&k);
        // [C,Z] = 0, [Z,Z] = -2kC
        let cz_zero = der_bracket(&c, &z).unwrap().is_zero();
        let zz = der_bracket(&z, &z).unwrap();
        let want = c.scale(&(&Scalar::from_i64(-2, b) * &k));
        if !cz_zero || !zz.approx_eq(&want, 0.0) {
            structure_fail += 1;
        }
        // omega kills Z_susy
        if !SuperOneForm::omega(&k)
            .pair(&SuperDerivation::z_susy(&k))
            .is_zero()
        {
            structure_fail += 1;
        }
        // involution roots square to -conj(k)/k exactly
        match lie_involution_solve(&k) {
            Ok((a1, a2)) => {
                let target = (&k.conj() * &k.inv().unwrap()).neg();
                for a in [a1.a, a2.a] {
                    if &a * &a != target || !a.modulus_sq().is_one() {
                        invol_fail += 1;
                    }
                }
            }
            Err(_) => invol_fail += 1,
        }
    }
    // real-form bracket coefficient -2|b|^2|k| on rational-circle k values
    for (k, scale) in [
        (Scalar::exact(3, 1, 4, 1), Scalar::exact(1, 2, 0, 1)),
        (Scalar::exact(0, 1, -2, 1), Scalar::from_i64(2, Backend::Exact)),
        (Scalar::exact(-5, 1, 12, 1), Scalar::from_i64(1, Backend::Exact)),
    ] {
        let modk = k.modulus_sq().sqrt().unwrap().0;
        let ratio = &(&Scalar::i(b) * &k.conj()) * &modk.inv().unwrap();
        let bval = &ratio.sqrt().unwrap().0 * &scale;
        let basis = RealFormBasis::new(bval.clone(), &k, cfg.tolerance).unwrap();
        let table = real_form_bracket(&basis, &k).unwrap();
        let expected = &(&Scalar::from_i64(-2, b) * &bval.modulus_sq()) * &modk;
        if table.zz_coeff != expected || !table.cc_is_zero || !table.cz_is_zero {
            form_fail += 1;
        }
    }
    vec![
        record("lie-brackets", "structure_constants", trials, structure_fail),
        record("lie-brackets", "involution_roots", trials, invol_fail),
        record("lie-brackets", "real_form_bracket", 3, form_fail),
    ]
}

pub fn suite_reps(cfg: &RunConfig) -> Vec<Value> {
    let mut rng = rng_for(cfg);
    let trials = 25.min(cfg.trials.max(1));
    let mut round_trip_fail = 0;
    for _ in 0..trials {
        let (rep, truth) = random_rep(&mut rng, cfg.max_weight.max(1));
        match decompose(&rep, 0.0) {
            Ok(d) if d.summary == truth => {}
            _ => round_trip_fail += 1,
        }
    }
    // branch intertwiner
    let mut branch_fail = 0;
    for m in [1i64, -2, 5, -7] {
        let plus = make_weight_rep(m, true, Backend::Exact).unwrap();
        let minus = make_weight_rep(m, false, Backend::Exact).unwrap();
        let t = branch_intertwiner(Backend::Exact);
        if t.mul(&plus.zmat()).mul(&t.inverse(0.0).unwrap()) != minus.zmat() {
            branch_fail += 1;
        }
    }
    // a broken block must be rejected
    let mut reject_fail = 0;
    let mut bad_z = Matrix::zero(2, 2, Backend::Exact);
    bad_z.set(0, 1, Scalar::one(Backend::Exact));
    bad_z.set(1, 0, Scalar::one(Backend::Exact));
    let bad = GradedRep {
        blocks: vec![WeightBlock::new(2, 1, 1, bad_z).unwrap()],
    };
    if check_rep(&bad).is_ok() {
        reject_fail += 1;
    }
    if check_rep(&GradedRep { blocks: vec![PiMinus::as_block(Backend::Exact)] }).is_err() {
        reject_fail += 1;
    }
    vec![
        record("reps", "decompose_round_trip", trials, round_trip_fail),
        record("reps", "branch_intertwiner", 4, branch_fail),
        record("reps", "check_rep_verdicts", 2, reject_fail),
    ]
}

pub fn suite_berezinian(cfg: &RunConfig) -> Vec<Value> {
    let mut rng = rng_for(cfg);
    let n = cfg.odd_generators;
    let b = Backend::Float;
    let eps = cfg.tolerance.max(1e-12);
    let mut mult_fail = 0;
    for _ in 0..cfg.trials {
        let m1 = random_invertible_gmat2(&mut rng, n);
        let m2 = random_invertible_gmat2(&mut rng, n);
        let lhs = berezinian_1x1(&m1.mul(&m2).unwrap()).unwrap();
        let rhs = berezinian_1x1(&m1)
            .unwrap()
            .try_mul(&berezinian_1x1(&m2).unwrap())
            .unwrap();
        if !lhs.approx_eq(&rhs, eps * 100.0) {
            mult_fail += 1;
        }
    }
    // membership <-> Ber = 1 on constrained elements
    let mut member_fail = 0;
    let one = GrassmannNumber::one(n, b);
    for _ in 0..100 {
        let (a, beta) = random_su11_element(&mut rng, n);
        let holds = su11_membership(&a, &beta).unwrap().approx_eq(&one, eps);
        let ber = berezinian_1x1(&su11_full_matrix(&a, &beta).unwrap()).unwrap();
        if !holds || !ber.approx_eq(&one, eps) {
            member_fail += 1;
        }
        // perturbed element must violate both
        let a_bad = a.scale(&Scalar::from_f64(1.0 + 0.1, 0.0));
        let holds_bad = su11_membership(&a_bad, &beta).unwrap().approx_eq(&one, 1e-3);
        let ber_bad = berezinian_1x1(&su11_full_matrix(&a_bad, &beta).unwrap())
            .unwrap()
            .approx_eq(&one, 1e-3);
        if holds_bad || ber_bad {
            member_fail += 1;
        }
    }
    // G closure through su11_mul
    let mut closure_fail = 0;
    for _ in 0..50 {
        let x = random_g_element(&mut rng, n);
        let y = random_g_element(&mut rng, n);
        if su11_mul(&x, &y, eps).is_err() {
            closure_fail += 1;
        }
    }
    vec![
        record("berezinian", "multiplicative", cfg.trials, mult_fail),
        record("berezinian", "membership_iff_ber_one", 100, member_fail),
        record("berezinian", "g_closure", 50, closure_fail),
    ]
}

pub fn random_invertible_gmat2(rng: &mut ChaCha8Rng, n_pairs: usize) -> GMat2 {
    let b = Backend::Float;
    loop {
        let a = random_even(rng, n_pairs, b);
        let d = random_even(rng, n_pairs, b);
        if a.body().to_complex().norm() < 0.3 || d.body().to_complex().norm() < 0.3 {
            continue;
        }
        return GMat2::new([
            [a, random_odd(rng, n_pairs, b)],
            [random_odd(rng, n_pairs, b), d],
        ]);
    }
}

/// Random `(a, beta)` satisfying the SU(1|1) relation:
/// `a = a0 (1 - (i/2) beta gr_conj(beta))` with `|a0| = 1`.
pub fn random_su11_element(rng: &mut ChaCha8Rng, n_pairs: usize) -> (GrassmannNumber, GrassmannNumber) {
    let b = Backend::Float;
    let beta = random_odd(rng, n_pairs, b);
    let a0 = GrassmannNumber::from_scalar(
        Scalar::Float(Complex64::from_polar(1.0, rng.gen_range(-3.0..3.0))),
        n_pairs,
    );
    let bbbar = beta.try_mul(&beta.conj()).unwrap();
    let corr = GrassmannNumber::one(n_pairs, b)
        .try_add(&bbbar.scale(&Scalar::from_f64(0.0, -0.5)))
        .unwrap();
    (a0.try_mul(&corr).unwrap(), beta)
}

/// Random element of the subgroup `G`: `beta = i r a tau` with `tau`
/// self-conjugate keeps the reality constraint.
pub fn random_g_element(rng: &mut ChaCha8Rng, n_pairs: usize) -> SU11Element {
    let b = Backend::Float;
    let a = GrassmannNumber::from_scalar(
        Scalar::Float(Complex64::from_polar(1.0, rng.gen_range(-3.0..3.0))),
        n_pairs,
    );
    let j = rng.gen_range(1..=n_pairs);
    let tau = GrassmannNumber::generator(j, n_pairs, b)
        .try_add(&GrassmannNumber::conj_generator(j, n_pairs, b))
        .unwrap()
        .scale(&Scalar::from_f64(rng.gen_range(-1.0..1.0), 0.0));
    let beta = a
        .try_mul(&tau)
        .unwrap()
        .scale(&Scalar::from_f64(0.0, rng.gen_range(-1.0..1.0)));
    SU11Element::new(a, beta, 1e-9).unwrap()
}

/// Random real additive point for covering-map checks: self-conjugate `tau`.
pub fn random_real_additive(rng: &mut ChaCha8Rng, n_pairs: usize) -> AdditivePoint {
    let t = GrassmannNumber::from_scalar(
        Scalar::from_f64(rng.gen_range(-6.0..6.0), 0.0),
        n_pairs,
    );
    let j = rng.gen_range(1..=n_pairs);
    let tau = GrassmannNumber::generator(j, n_pairs, Backend::Float)
        .try_add(&GrassmannNumber::conj_generator(j, n_pairs, Backend::Float))
        .unwrap()
        .scale(&Scalar::from_f64(rng.gen_range(-1.0..1.0), 0.0));
    AdditivePoint::new(t, tau).unwrap()
}

pub fn suite_cover(cfg: &RunConfig) -> Vec<Value> {
    let mut rng = rng_for(cfg);
    let n = cfg.odd_generators;
    let eps = 1e-10;
    let k1 = GroupParam::new(Scalar::from_f64(1.0, 0.0));
    let r = RealStructure::new(
        Conjugation::new(Scalar::from_f64(1.0, 0.0), Scalar::from_f64(1.0, 0.0), eps).unwrap(),
        GaugeSign::Plus,
    );
    let mut hom_fail = 0;
    let mut fix_fail = 0;
    for _ in 0..cfg.trials {
        let a = random_real_additive(&mut rng, n);
        let b2 = random_real_additive(&mut rng, n);
        let lhs = cover_p(&add_mul(&a, &b2).unwrap()).unwrap();
        let rhs = g_mul(&cover_p(&a).unwrap(), &cover_p(&b2).unwrap(), &k1).unwrap();
        if !lhs.approx_eq(&rhs, eps) {
            hom_fail += 1;
        }
        if !is_fixed_point(&r, &cover_p(&a).unwrap(), eps).unwrap() {
            fix_fail += 1;
        }
    }
    vec![
        record("cover", "homomorphism", cfg.trials, hom_fail),
        record("cover", "image_fixed", cfg.trials, fix_fail),
    ]
}

pub const SUITES: &[&str] = &[
    "group-axioms",
    "susy",
    "real-structures",
    "lie-brackets",
    "reps",
    "berezinian",
    "cover",
];

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Report> {
    let lines = match name {
        "group-axioms" => suite_group_axioms(cfg),
        "susy" => suite_susy(cfg),
        "real-structures" => suite_real_structures(cfg),
        "lie-brackets" => suite_lie_brackets(cfg),
        "reps" => suite_reps(cfg),
        "berezinian" => suite_berezinian(cfg),
        "cover" => suite_cover(cfg),
        "all" => {
            let mut all = Vec::new();
            for s in SUITES {
                all.extend(run_suite(s, cfg)?.lines);
            }
            all
        }
        _ => return Err(Error::Parse(format!("unknown suite: {name}"))),
    };
    Ok(Report { lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> RunConfig {
        RunConfig { trials: 20, ..RunConfig::default() }
    }

    #[test]
    fn all_suites_pass() {
        let cfg = small_cfg();
        for s in SUITES {
            let rep = run_suite(s, &cfg).unwrap();
            assert!(rep.passed(), "suite {s} failed:\n{}", rep.render());
        }
    }

    #[test]
    fn deterministic_reports() {
        let cfg = RunConfig { trials: 10, seed: 42, ..RunConfig::default() };
        let a = run_suite("all", &cfg).unwrap().render();
        let b = run_suite("all", &cfg).unwrap().render();
        assert_eq!(a, b);
    }

    #[test]
    fn k_zero_skips_inverse() {
        let cfg = RunConfig {
            k: Scalar::from_i64(0, Backend::Exact),
            trials: 5,
            ..RunConfig::default()
        };
        let rep = Report { lines: suite_group_axioms(&cfg) };
        assert!(rep.passed());
        assert!(rep
            .lines
            .iter()
            .any(|l| l["check"] == "inverse" && l["status"] == "skip"));
    }

    #[test]
    fn unknown_suite_errors() {
        assert!(run_suite("nope", &small_cfg()).is_err());
    }
}

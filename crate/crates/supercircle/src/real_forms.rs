//! Real structures on `(C^{1|1})^x_k`, the fixed-point supergroup `S^{1|1}`,
//! its chart algebra and the induced real forms of the Lie superalgebra.

use crate::error::{Error, Result};
use crate::grassmann::Parity;
use crate::group::SuperPoint;
use crate::scalar::Scalar;
use crate::sections::{der_bracket, SuperDerivation};

/// Which of the two SUSY gauges `P_+`/`P_-` is composed into the structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeSign {
    Plus,
    Minus,
}

impl GaugeSign {
    fn apply(&self, s: Scalar) -> Scalar {
        match self {
            GaugeSign::Plus => s,
            GaugeSign::Minus => s.neg(),
        }
    }
}

/// A complex conjugation `s_k(w, eta) = (conj(w), u conj(eta))`; valid iff
/// `u^2 = conj(k)/k` (which forces `|u| = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct Conjugation {
    pub u: Scalar,
    pub k: Scalar,
}

impl Conjugation {
    pub fn new(u: Scalar, k: Scalar, eps: f64) -> Result<Self> {
        let c = Conjugation { u, k };
        c.validate(eps)?;
        Ok(c)
    }

    /// Construct without the validity check, for morphism-failure tests.
    pub fn unchecked(u: Scalar, k: Scalar) -> Self {
        Conjugation { u, k }
    }

    pub fn validate(&self, eps: f64) -> Result<()> {
        if self.k.is_zero() {
            return Err(Error::InvalidConjugation("k must be nonzero".into()));
        }
        let target = &self.k.conj() * &self.k.inv().unwrap();
        let u2 = &self.u * &self.u;
        if !u2.approx_eq(&target, eps) {
            return Err(Error::InvalidConjugation(format!(
                "u^2 = {u2} but conj(k)/k = {target}"
            )));
        }
        if !self.u.modulus_sq().approx_eq(&Scalar::one(self.u.backend()), eps) {
            return Err(Error::InvalidConjugation("|u| != 1".into()));
        }
        Ok(())
    }

    /// The two admissible values of `u` for a given `k`.
    pub fn solve(k: &Scalar) -> Result<(Scalar, Scalar)> {
        if k.is_zero() {
            return Err(Error::InvalidConjugation("k must be nonzero".into()));
        }
        let q = &k.conj() * &k.inv().unwrap();
        q.sqrt()
            .ok_or_else(|| Error::NoSolution("square root of conj(k)/k not representable".into()))
    }
}

/// Apply `s_k` to a T-point.
pub fn apply_s(c: &Conjugation, p: &SuperPoint) -> Result<SuperPoint> {
    SuperPoint::new(p.w.conj(), p.eta.conj().scale(&c.u))
}

/// `rho_k(w, eta) = (conj(w)^-1, +- i u conj(w)^-2 conj(eta))`, the real
/// structure `P_+- o s_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealStructure {
    pub conj: Conjugation,
    pub sign: GaugeSign,
}

impl RealStructure {
    pub fn new(conj: Conjugation, sign: GaugeSign) -> Self {
        RealStructure { conj, sign }
    }

    fn iu(&self) -> Scalar {
        self.sign
            .apply(&Scalar::i(self.conj.u.backend()) * &self.conj.u)
    }
}

pub fn apply_rho(r: &RealStructure, p: &SuperPoint) -> Result<SuperPoint> {
    let wbar = p.w.conj();
    let winv = wbar.inv()?;
    let w2inv = winv.try_mul(&winv)?;
    let eta = w2inv.try_mul(&p.eta.conj())?.scale(&r.iu());
    SuperPoint::new(winv, eta)
}

/// True iff `p` satisfies the fixed-point equations
/// `w conj(w) = 1` and `eta = +- i u conj(eta) conj(w)^-2`.
pub fn is_fixed_point(r: &RealStructure, p: &SuperPoint, eps: f64) -> Result<bool> {
    let image = apply_rho(r, p)?;
    Ok(p.approx_eq(&image, eps))
}

/// Chart data for the reduced circle point `t` (radians, reduced mod 2 pi).
#[derive(Clone, Debug, PartialEq)]
pub struct ChartRecord {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    /// `zeta = factor * sigma` on the chart `1 - sin 2t != 0`
    pub zeta_from_sigma: Option<f64>,
    /// `sigma = factor * zeta` on the chart `1 + sin 2t != 0`
    pub sigma_from_zeta: Option<f64>,
    /// determinant of the two odd linear relations; zero on the circle
    pub relation_det: f64,
}

/// Evaluate the chart algebra at angle `t`: `(x, y) = (cos t, sin t)`,
/// the odd relation factors `cos 2t / (1 -+ sin 2t)` where defined, and the
/// proportionality determinant of the two odd equations.
pub fn chart_coords(t: f64, eps: f64) -> Result<ChartRecord> {
    if !t.is_finite() {
        return Err(Error::ChartUndefined(t));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let t = t.rem_euclid(two_pi);
    let (x, y) = (t.cos(), t.sin());
    let (c2, s2) = ((2.0 * t).cos(), (2.0 * t).sin());
    let zeta_from_sigma = if (1.0 - s2).abs() > eps {
        Some(c2 / (1.0 - s2))
    } else {
        None
    };
    let sigma_from_zeta = if (1.0 + s2).abs() > eps {
        Some(c2 / (1.0 + s2))
    } else {
        None
    };
    // linear forms in (sigma, zeta):
    //   E1 = (x^2-y^2) sigma + (2xy - 1) zeta
    //   E2 = -(2xy + 1) sigma + (x^2-y^2) zeta
    let det = (x * x - y * y).powi(2) + (2.0 * x * y - 1.0) * (2.0 * x * y + 1.0);
    Ok(ChartRecord {
        t,
        x,
        y,
        zeta_from_sigma,
        sigma_from_zeta,
        relation_det: det,
    })
}

/// The factor for one named chart, `ChartUndefined` at its boundary.
pub fn chart_factor(t: f64, first_chart: bool, eps: f64) -> Result<f64> {
    let rec = chart_coords(t, eps)?;
    let v = if first_chart { rec.zeta_from_sigma } else { rec.sigma_from_zeta };
    v.ok_or(Error::ChartUndefined(rec.t))
}

/// Antilinear Lie-algebra involution `C -> -C, Z -> a Z`; valid iff
/// `a^2 = -conj(k)/k` and `|a| = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieInvolution {
    pub a: Scalar,
}

/// Solve the involutivity and bracket-compatibility constraints
/// `|a| = 1`, `a^2 = -conj(k)/k`; returns both roots `a = +- i conj(k)/|k|`.
pub fn lie_involution_solve(k: &Scalar) -> Result<(LieInvolution, LieInvolution)> {
    if k.is_zero() {
        return Err(Error::Unsupported("lie involution solve requires k != 0".into()));
    }
    let q = (&k.conj() * &k.inv().unwrap()).neg();
    let (a, aneg) = q
        .sqrt()
        .ok_or_else(|| Error::NoSolution("square root of -conj(k)/k not representable".into()))?;
    Ok((LieInvolution { a }, LieInvolution { a: aneg }))
}

/// Generators `C' = iC`, `Z' = bZ` of the real form; `b` valid iff
/// `b/conj(b) = i conj(k)/|k|`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealFormBasis {
    pub b: Scalar,
}

impl RealFormBasis {
    pub fn new(b: Scalar, k: &Scalar, eps: f64) -> Result<Self> {
        if b.is_zero() || k.is_zero() {
            return Err(Error::InvalidRealForm("b and k must be nonzero".into()));
        }
        let modulus_k = k
            .modulus_sq()
            .sqrt()
            .ok_or_else(|| Error::InvalidRealForm("|k| not representable".into()))?
            .0;
        let target = &(&Scalar::i(k.backend()) * &k.conj()) * &modulus_k.inv().unwrap();
        let ratio = &b * &b.conj().inv().unwrap();
        if !ratio.approx_eq(&target, eps) {
            return Err(Error::InvalidRealForm(format!(
                "b/conj(b) = {ratio} but i conj(k)/|k| = {target}"
            )));
        }
        Ok(RealFormBasis { b })
    }
}

/// Structure constants of the real form in the basis `C' = iC`, `Z' = bZ`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealBracketTable {
    /// `[C', C']` and `[C', Z']` vanish
    pub cc_is_zero: bool,
    pub cz_is_zero: bool,
    /// `[Z', Z'] = zz_coeff * C'`
    pub zz_coeff: Scalar,
}

/// Compute the bracket table of `C' = iC`, `Z' = bZ` from the complex
/// structure constants; the `[Z', Z']` coefficient equals `-2 |b|^2 |k|`.
pub fn real_form_bracket(basis: &RealFormBasis, k: &Scalar) -> Result<RealBracketTable> {
    let backend = k.backend();
    let c_prime = SuperDerivation::euler(backend).scale(&Scalar::i(backend));
    let z_prime = SuperDerivation::z_left(k).scale(&basis.b);
    let cc = der_bracket(&c_prime, &c_prime)?;
    let cz = der_bracket(&c_prime, &z_prime)?;
    let zz = der_bracket(&z_prime, &z_prime)?;
    // read the coefficient of C' off the w d/dw component
    let coeff = &zz.coef_dw.even.coeff(1) * &Scalar::i(backend).inv().unwrap();
    let residual_dw = zz.coef_dw.sub(&c_prime.coef_dw.scale(&coeff));
    let residual_deta = zz.coef_deta.sub(&c_prime.coef_deta.scale(&coeff));
    if !residual_dw.is_zero() || !residual_deta.is_zero() {
        return Err(Error::InvalidRealForm("[Z', Z'] is not a multiple of C'".into()));
    }
    Ok(RealBracketTable {
        cc_is_zero: cc.is_zero(),
        cz_is_zero: cz.is_zero(),
        zz_coeff: coeff,
    })
}

/// Jacobian of the coordinate pullback of `rho` at the identity, computed by
/// first-order Grassmann evaluation of `(w, eta) -> (w^-1, +- i u w^-2 eta)`.
/// Rows/columns are ordered `(C, Z)`; the map acts antilinearly.
pub fn differential_at_identity(r: &RealStructure) -> Result<[[Scalar; 2]; 2]> {
    use crate::grassmann::GrassmannNumber;
    let backend = r.conj.u.backend();
    let n = 2;
    let iu = r.iu();
    // even infinitesimal eps = x1 X1 (mask 0b11), odd direction delta = x2
    // (mask 0b100)
    let eps = GrassmannNumber::generator(1, n, backend)
        .try_mul(&GrassmannNumber::conj_generator(1, n, backend))?;
    let delta = GrassmannNumber::generator(2, n, backend);
    let one = GrassmannNumber::one(n, backend);
    // perturb both coordinates at once: (1 + eps, delta)
    let w = one.try_add(&eps)?;
    let winv = w.inv()?;
    let w2inv = winv.try_mul(&winv)?;
    let eta_out = w2inv.try_mul(&delta)?.scale(&iu);
    // first-order coefficients of the two directions
    let d_w_d_eps = winv.coeff(0b11);
    let d_w_d_delta = winv.coeff(0b100);
    let d_eta_d_eps_along_w = eta_out.coeff(0b11); // even/odd mixing: zero
    let d_eta_d_delta = eta_out.coeff(0b100);
    Ok([
        [d_w_d_eps, d_w_d_delta],
        [d_eta_d_eps_along_w, d_eta_d_delta],
    ])
}

/// Cross-check of the Lie-algebra and group pictures: the `(Z, Z)` entry of
/// the differential must be one of the roots returned by the involution solve.
pub fn involution_cross_check(r: &RealStructure, eps: f64) -> Result<bool> {
    let m = differential_at_identity(r)?;
    let (a1, a2) = lie_involution_solve(&r.conj.k)?;
    let zz = &m[1][1];
    Ok(zz.approx_eq(&a1.a, eps) || zz.approx_eq(&a2.a, eps))
}

/// Parity-checked helper: the differential's action is `C -> -conj(C)`,
/// `Z -> i u conj(Z)` for the plus gauge.
pub fn differential_has_expected_form(r: &RealStructure, eps: f64) -> Result<bool> {
    let m = differential_at_identity(r)?;
    let backend = r.conj.u.backend();
    let minus_one = Scalar::from_i64(-1, backend);
    Ok(m[0][0].approx_eq(&minus_one, eps)
        && m[0][1].is_zero()
        && m[1][0].is_zero()
        && m[1][1].approx_eq(&r.iu(), eps))
}

/// Odd chart transition consistency: the product of the two factors is 1
/// wherever both charts are defined.
pub fn chart_transition_consistent(t: f64, eps: f64) -> Result<bool> {
    let rec = chart_coords(t, eps)?;
    match (rec.zeta_from_sigma, rec.sigma_from_zeta) {
        (Some(a), Some(b)) => Ok((a * b - 1.0).abs() <= eps.max(1e-9)),
        _ => Ok(true),
    }
}

pub fn parity_of(p: &SuperPoint) -> (Option<Parity>, Option<Parity>) {
    (p.w.parity(), p.eta.parity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::GrassmannNumber;
    use crate::group::{g_mul, GroupParam};
    use crate::scalar::Backend;

    const EPS: f64 = 1e-10;

    fn exact_one() -> Scalar {
        Scalar::from_i64(1, Backend::Exact)
    }

    fn th(j: usize) -> GrassmannNumber {
        GrassmannNumber::generator(j, 4, Backend::Exact)
    }

    fn ct(j: usize) -> GrassmannNumber {
        GrassmannNumber::conj_generator(j, 4, Backend::Exact)
    }

    #[test]
    fn conjugation_roots_k1() {
        let (u1, u2) = Conjugation::solve(&exact_one()).unwrap();
        let mut roots = vec![u1, u2];
        roots.sort_by_key(|s| format!("{s}"));
        assert!(roots.contains(&Scalar::from_i64(1, Backend::Exact)));
        assert!(roots.contains(&Scalar::from_i64(-1, Backend::Exact)));
    }

    #[test]
    fn conjugation_roots_ki() {
        // k = i: u^2 = conj(k)/k = -1, so u = +-i
        let (u1, _) = Conjugation::solve(&Scalar::i(Backend::Exact)).unwrap();
        assert_eq!(&u1 * &u1, Scalar::from_i64(-1, Backend::Exact));
        assert!(u1.modulus_sq().is_one());
    }

    #[test]
    fn s_morphism_iff_valid_u() {
        let k = exact_one();
        let param = GroupParam::new(k.clone());
        let p = SuperPoint::new(
            GrassmannNumber::from_scalar(Scalar::from_i64(2, Backend::Exact), 4),
            th(1),
        )
        .unwrap();
        let q = SuperPoint::new(
            GrassmannNumber::from_scalar(Scalar::from_i64(3, Backend::Exact), 4),
            ct(2),
        )
        .unwrap();
        let good = Conjugation::new(exact_one(), k.clone(), EPS).unwrap();
        let lhs = apply_s(&good, &g_mul(&p, &q, &param).unwrap()).unwrap();
        let rhs = g_mul(
            &apply_s(&good, &p).unwrap(),
            &apply_s(&good, &q).unwrap(),
            &param,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
        // invalid u = i fails on the same pair (needs eta eta' != 0 terms:
        // use points with both odd parts nonzero)
        let bad = Conjugation::unchecked(Scalar::i(Backend::Exact), k);
        let lhs = apply_s(&bad, &g_mul(&p, &q, &param).unwrap()).unwrap();
        let rhs = g_mul(
            &apply_s(&bad, &p).unwrap(),
            &apply_s(&bad, &q).unwrap(),
            &param,
        )
        .unwrap();
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn rho_involutive_and_fixes_unit() {
        let k = exact_one();
        let r = RealStructure::new(Conjugation::new(exact_one(), k, EPS).unwrap(), GaugeSign::Plus);
        let e = SuperPoint::unit(4, Backend::Exact);
        assert_eq!(apply_rho(&r, &e).unwrap(), e);
        let p = SuperPoint::new(
            &GrassmannNumber::from_scalar(Scalar::exact(2, 1, 1, 1), 4) + &(&th(1) * &ct(1)),
            &th(2) + &ct(3).scale(&Scalar::i(Backend::Exact)),
        )
        .unwrap();
        let twice = apply_rho(&r, &apply_rho(&r, &p).unwrap()).unwrap();
        assert_eq!(twice, p);
    }

    #[test]
    fn rho_is_morphism() {
        let k = exact_one();
        let param = GroupParam::new(k.clone());
        let r = RealStructure::new(Conjugation::new(exact_one(), k, EPS).unwrap(), GaugeSign::Plus);
        let p = SuperPoint::new(
            &GrassmannNumber::from_scalar(Scalar::from_i64(2, Backend::Exact), 4)
                + &(&th(1) * &th(2)),
            th(3),
        )
        .unwrap();
        let q = SuperPoint::new(
            GrassmannNumber::from_scalar(Scalar::exact(1, 3, -1, 1), 4),
            ct(2),
        )
        .unwrap();
        let lhs = apply_rho(&r, &g_mul(&p, &q, &param).unwrap()).unwrap();
        let rhs = g_mul(
            &apply_rho(&r, &p).unwrap(),
            &apply_rho(&r, &q).unwrap(),
            &param,
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn fixed_points_closed_under_product() {
        // cover image is fixed; product of fixed points is fixed
        use crate::group::{add_mul, cover_p, AdditivePoint};
        let k = Scalar::from_f64(1.0, 0.0);
        let r = RealStructure::new(
            Conjugation::new(Scalar::from_f64(1.0, 0.0), k.clone(), EPS).unwrap(),
            GaugeSign::Plus,
        );
        let param = GroupParam::new(k);
        let mk = |t: f64, c: f64, j: usize| {
            let tt = GrassmannNumber::from_scalar(Scalar::from_f64(t, 0.0), 4);
            let g = GrassmannNumber::generator(j, 4, Backend::Float);
            let gc = GrassmannNumber::conj_generator(j, 4, Backend::Float);
            let tau = (&g + &gc).scale(&Scalar::from_f64(c, 0.0));
            AdditivePoint::new(tt, tau).unwrap()
        };
        let a = mk(0.7, 0.3, 1);
        let b = mk(-1.2, 0.5, 2);
        let pa = cover_p(&a).unwrap();
        let pb = cover_p(&b).unwrap();
        assert!(is_fixed_point(&r, &pa, EPS).unwrap());
        assert!(is_fixed_point(&r, &pb, EPS).unwrap());
        let prod = g_mul(&pa, &pb, &param).unwrap();
        assert!(is_fixed_point(&r, &prod, EPS).unwrap());
        // homomorphism property of the cover
        let pab = cover_p(&add_mul(&a, &b).unwrap()).unwrap();
        assert!(prod.approx_eq(&pab, EPS));
        // |w| != 1 is not fixed
        let off = SuperPoint::new(
            GrassmannNumber::from_scalar(Scalar::from_f64(2.0, 0.0), 4),
            GrassmannNumber::zero(4, Backend::Float),
        )
        .unwrap();
        assert!(!is_fixed_point(&r, &off, EPS).unwrap());
    }

    #[test]
    fn charts() {
        let r0 = chart_coords(0.0, EPS).unwrap();
        assert!((r0.x - 1.0).abs() < EPS && r0.y.abs() < EPS);
        assert!((r0.zeta_from_sigma.unwrap() - 1.0).abs() < EPS);
        let r1 = chart_coords(std::f64::consts::FRAC_PI_2, EPS).unwrap();
        assert!((r1.zeta_from_sigma.unwrap() + 1.0).abs() < 1e-9);
        let r2 = chart_coords(std::f64::consts::FRAC_PI_4, 1e-9).unwrap();
        assert!(r2.zeta_from_sigma.is_none());
        assert!(r2.sigma_from_zeta.unwrap().abs() < 1e-9);
        assert!(chart_factor(std::f64::consts::FRAC_PI_4, true, 1e-9).is_err());
        // proportionality determinant vanishes on the circle
        for i in 0..32 {
            let t = i as f64 * 0.2;
            assert!(chart_coords(t, EPS).unwrap().relation_det.abs() < 1e-12);
            assert!(chart_transition_consistent(t, EPS).unwrap());
        }
    }

    #[test]
    fn involution_roots() {
        // k=1: a = +-i
        let (a1, a2) = lie_involution_solve(&exact_one()).unwrap();
        let mut roots = vec![a1.a.clone(), a2.a.clone()];
        roots.sort_by_key(|s| format!("{s}"));
        assert!(roots.contains(&Scalar::i(Backend::Exact)));
        assert!(roots.contains(&Scalar::i(Backend::Exact).neg()));
        // k=-1: again a^2 = -conj(k)/k = -1
        let (b1, _) = lie_involution_solve(&Scalar::from_i64(-1, Backend::Exact)).unwrap();
        assert_eq!(&b1.a * &b1.a, Scalar::from_i64(-1, Backend::Exact));
        // constructive: both constraints hold bit-exactly
        for k in [Scalar::exact(2, 1, 1, 1), Scalar::i(Backend::Exact)] {
            let (r1, r2) = lie_involution_solve(&k).unwrap();
            for a in [r1.a, r2.a] {
                let target = (&k.conj() * &k.inv().unwrap()).neg();
                assert_eq!(&a * &a, target);
                assert!(a.modulus_sq().is_one());
            }
        }
    }

    #[test]
    fn real_bracket_table() {
        // k=1, b = e^{i pi/4}: exact stand-in b = (1+i)/sqrt(2)
        let (s2, _) = Scalar::from_i64(2, Backend::Exact).sqrt().unwrap();
        let b = &Scalar::exact(1, 1, 1, 1) * &s2.inv().unwrap();
        let k = exact_one();
        let basis = RealFormBasis::new(b, &k, EPS).unwrap();
        let table = real_form_bracket(&basis, &k).unwrap();
        assert!(table.cc_is_zero && table.cz_is_zero);
        assert_eq!(table.zz_coeff, Scalar::from_i64(-2, Backend::Exact));
        // scaling b by r > 0 scales the coefficient by r^2
        let b3 = &basis.b * &Scalar::from_i64(3, Backend::Exact);
        let basis3 = RealFormBasis::new(b3, &k, EPS).unwrap();
        let t3 = real_form_bracket(&basis3, &k).unwrap();
        assert_eq!(t3.zz_coeff, Scalar::from_i64(-18, Backend::Exact));
    }

    #[test]
    fn bracket_coefficient_formula() {
        // [Z',Z'] coefficient must equal -2 |b|^2 |k|; pick k on rational
        // circles so |k| stays in Q
        for (k, scale) in [
            (Scalar::exact(3, 1, 4, 1), Scalar::exact(5, 2, 0, 1)),
            (Scalar::exact(0, 1, -2, 1), Scalar::from_i64(3, Backend::Exact)),
        ] {
            // b = sqrt(i conj(k)/|k|) * (positive real scale)
            let modk = k.modulus_sq().sqrt().unwrap().0;
            let ratio = &(&Scalar::i(Backend::Exact) * &k.conj()) * &modk.inv().unwrap();
            let (sq, _) = ratio.sqrt().unwrap();
            let b = &sq * &scale;
            let basis = RealFormBasis::new(b.clone(), &k, EPS).unwrap();
            let table = real_form_bracket(&basis, &k).unwrap();
            let expected = &(&Scalar::from_i64(-2, Backend::Exact) * &b.modulus_sq()) * &modk;
            assert_eq!(table.zz_coeff, expected);
        }
    }

    #[test]
    fn differential_matrix() {
        let k = exact_one();
        let r = RealStructure::new(Conjugation::new(exact_one(), k, EPS).unwrap(), GaugeSign::Plus);
        let m = differential_at_identity(&r).unwrap();
        assert_eq!(m[0][0], Scalar::from_i64(-1, Backend::Exact));
        assert!(m[0][1].is_zero() && m[1][0].is_zero());
        assert_eq!(m[1][1], Scalar::i(Backend::Exact));
        assert!(differential_has_expected_form(&r, EPS).unwrap());
        // (Z,Z) entry squared = -conj(k)/k
        let zz = &m[1][1];
        assert_eq!(zz * zz, Scalar::from_i64(-1, Backend::Exact));
        assert!(involution_cross_check(&r, EPS).unwrap());
    }
}

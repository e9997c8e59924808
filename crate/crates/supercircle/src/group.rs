//! The supergroup family `(C^{1|1})^x_k` on T-points, the additive supergroup
//! `C^{1|1}` / `R^{1|1}`, the super exponential and the covering map onto
//! `S^{1|1}`.

use crate::error::{Error, Result};
use crate::grassmann::GrassmannNumber;
use crate::scalar::{Backend, Scalar};

/// The family parameter `k` of the superalgebra `D_k` (`theta_k^2 = -k`).
#[derive(Clone, Debug, PartialEq)]
pub struct GroupParam {
    pub k: Scalar,
}

impl GroupParam {
    pub fn new(k: Scalar) -> Self {
        GroupParam { k }
    }

    pub fn require_nonzero(&self) -> Result<()> {
        if self.k.is_zero() {
            Err(Error::Unsupported("operation requires k != 0".into()))
        } else {
            Ok(())
        }
    }
}

/// A T-point `(w, eta)` of `(C^{1|1})^x_k`: `w` even with invertible body,
/// `eta` odd.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperPoint {
    pub w: GrassmannNumber,
    pub eta: GrassmannNumber,
}

impl SuperPoint {
    pub fn new(w: GrassmannNumber, eta: GrassmannNumber) -> Result<Self> {
        if !w.is_even() {
            return Err(Error::Unsupported("w must be even".into()));
        }
        if !eta.is_odd() {
            return Err(Error::Unsupported("eta must be odd".into()));
        }
        if w.body().is_zero() {
            return Err(Error::NotInvertible("body(w) = 0".into()));
        }
        Ok(SuperPoint { w, eta })
    }

    pub fn unit(n_pairs: usize, backend: Backend) -> Self {
        SuperPoint {
            w: GrassmannNumber::one(n_pairs, backend),
            eta: GrassmannNumber::zero(n_pairs, backend),
        }
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.w.approx_eq(&other.w, eps) && self.eta.approx_eq(&other.eta, eps)
    }
}

/// A T-point `(t, tau)` of the additive supergroup `C^{1|1}` (law
/// `(t + t' + tau tau', tau + tau')`).
#[derive(Clone, Debug, PartialEq)]
pub struct AdditivePoint {
    pub t: GrassmannNumber,
    pub tau: GrassmannNumber,
}

impl AdditivePoint {
    pub fn new(t: GrassmannNumber, tau: GrassmannNumber) -> Result<Self> {
        if !t.is_even() {
            return Err(Error::Unsupported("t must be even".into()));
        }
        if !tau.is_odd() {
            return Err(Error::Unsupported("tau must be odd".into()));
        }
        Ok(AdditivePoint { t, tau })
    }

    pub fn zero(n_pairs: usize, backend: Backend) -> Self {
        AdditivePoint {
            t: GrassmannNumber::zero(n_pairs, backend),
            tau: GrassmannNumber::zero(n_pairs, backend),
        }
    }
}

/// Group law `(w, eta)(w', eta') = (ww' + k eta eta', w eta' + w' eta)`.
pub fn g_mul(p: &SuperPoint, q: &SuperPoint, param: &GroupParam) -> Result<SuperPoint> {
    let ww = p.w.try_mul(&q.w)?;
    let ee = p.eta.try_mul(&q.eta)?;
    let w = ww.try_add(&ee.scale(&param.k))?;
    let eta = p.w.try_mul(&q.eta)?.try_add(&q.w.try_mul(&p.eta)?)?;
    SuperPoint::new(w, eta)
}

/// Inverse `(w^-1, -w^-2 eta)`.
pub fn g_inv(p: &SuperPoint, _param: &GroupParam) -> Result<SuperPoint> {
    let winv = p.w.inv()?;
    let w2inv = winv.try_mul(&winv)?;
    let eta = w2inv.try_mul(&p.eta)?.neg();
    SuperPoint::new(winv, eta)
}

/// Additive law `(t + t' + tau tau', tau + tau')`.
pub fn add_mul(p: &AdditivePoint, q: &AdditivePoint) -> Result<AdditivePoint> {
    let t = p.t.try_add(&q.t)?.try_add(&p.tau.try_mul(&q.tau)?)?;
    let tau = p.tau.try_add(&q.tau)?;
    AdditivePoint::new(t, tau)
}

/// Additive inverse `(-t, -tau)`; the `tau tau` cross term vanishes.
pub fn add_inv(p: &AdditivePoint) -> AdditivePoint {
    AdditivePoint { t: p.t.neg(), tau: p.tau.neg() }
}

/// Super exponential `Exp(z, zeta) = (e^z, e^z zeta)`.
pub fn super_exp(z: &GrassmannNumber, zeta: &GrassmannNumber) -> Result<SuperPoint> {
    if !zeta.is_odd() {
        return Err(Error::Unsupported("zeta must be odd".into()));
    }
    let ez = z.exp()?;
    let eta = ez.try_mul(zeta)?;
    SuperPoint::new(ez, eta)
}

/// Universal cover `p(t, tau) = (e^{it}, e^{i pi/4} e^{it} tau)` of `S^{1|1}`
/// at `k = 1`, `u = 1`.
pub fn cover_p(a: &AdditivePoint) -> Result<SuperPoint> {
    if a.t.backend() != Backend::Float {
        return Err(Error::BackendUnsupported(
            "the covering map needs the floating backend".into(),
        ));
    }
    let it = a.t.scale(&Scalar::i(Backend::Float));
    let eit = it.exp()?;
    let phase = Scalar::Float(num_complex::Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4));
    let eta = eit.scale(&phase).try_mul(&a.tau)?;
    SuperPoint::new(eit, eta)
}

/// The isomorphism `(w, eta) -> (w, c eta)` carrying the law at parameter `k`
/// to the law at `k'` whenever `c^2 k' = k`.
pub fn rescale(p: &SuperPoint, c: &Scalar) -> SuperPoint {
    SuperPoint { w: p.w.clone(), eta: p.eta.scale(c) }
}

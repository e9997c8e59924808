//! Algebraic global sections of `(C^{1|1})^x`, super-derivations, one-forms,
//! the SUSY-1 structure and the classification of its gauge automorphisms.
//!
//! A section is `s0(w) + s1(w) eta` with Laurent coefficients; `eta^2 = 0`.

use crate::error::{Error, Result};
use crate::grassmann::Parity;
use crate::laurent::LaurentPoly;
use crate::scalar::{Backend, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct SuperLaurentSection {
    /// parity-even component `s0(w)`
    pub even: LaurentPoly,
    /// coefficient of `eta` (the parity-odd component is `odd * eta`)
    pub odd: LaurentPoly,
}

impl SuperLaurentSection {
    pub fn new(even: LaurentPoly, odd: LaurentPoly) -> Self {
        SuperLaurentSection { even, odd }
    }

    pub fn zero(backend: Backend) -> Self {
        SuperLaurentSection::new(LaurentPoly::zero(backend), LaurentPoly::zero(backend))
    }

    pub fn from_even(p: LaurentPoly) -> Self {
        let b = p.backend();
        SuperLaurentSection::new(p, LaurentPoly::zero(b))
    }

    pub fn from_odd(p: LaurentPoly) -> Self {
        let b = p.backend();
        SuperLaurentSection::new(LaurentPoly::zero(b), p)
    }

    /// The coordinate `w`.
    pub fn coord_w(backend: Backend) -> Self {
        SuperLaurentSection::from_even(LaurentPoly::w(1, backend))
    }

    /// The coordinate `eta`.
    pub fn coord_eta(backend: Backend) -> Self {
        SuperLaurentSection::from_odd(LaurentPoly::one(backend))
    }

    pub fn backend(&self) -> Backend {
        self.even.backend()
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    pub fn parity(&self) -> Option<Parity> {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (true, true) => Some(Parity::Even),
            (false, true) => Some(Parity::Even),
            (true, false) => Some(Parity::Odd),
            (false, false) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        SuperLaurentSection::new(self.even.add(&other.even), self.odd.add(&other.odd))
    }

    pub fn sub(&self, other: &Self) -> Self {
        SuperLaurentSection::new(self.even.sub(&other.even), self.odd.sub(&other.odd))
    }

    pub fn neg(&self) -> Self {
        SuperLaurentSection::new(self.even.neg(), self.odd.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SuperLaurentSection::new(self.even.scale(c), self.odd.scale(c))
    }

    /// `(a0 + a1 eta)(b0 + b1 eta) = a0 b0 + (a0 b1 + a1 b0) eta`.
    pub fn mul(&self, other: &Self) -> Self {
        SuperLaurentSection::new(
            self.even.mul(&other.even),
            self.even.mul(&other.odd).add(&self.odd.mul(&other.even)),
        )
    }

    /// `d/dw` componentwise.
    pub fn d_dw(&self) -> Self {
        SuperLaurentSection::new(self.even.derivative(), self.odd.derivative())
    }

    /// `d/deta`: kills `s0`, strips `eta`.
    pub fn d_deta(&self) -> Self {
        SuperLaurentSection::from_even(self.odd.clone())
    }

    /// Substitute the endomorphism target `(f, g eta)` into the section:
    /// `s0(f) + s1(f) g eta`. Needs monomial `f` unless the coefficients are
    /// constants.
    pub fn compose(&self, endo: &LaurentEndo) -> Result<Self> {
        let (c, d) = match endo.f.as_monomial() {
            Some(m) => m,
            None => {
                if self.even.is_constant() && self.odd.is_constant() {
                    (Scalar::one(self.backend()), 1)
                } else {
                    return Err(Error::Unsupported(
                        "composition with a non-monomial reduced map is not Laurent-closed".into(),
                    ));
                }
            }
        };
        let even = self.even.compose_monomial(&c, d)?;
        let odd = self.odd.compose_monomial(&c, d)?.mul(&endo.g);
        Ok(SuperLaurentSection::new(even, odd))
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.even.approx_eq(&other.even, eps) && self.odd.approx_eq(&other.odd, eps)
    }
}

/// A parity-homogeneous super-derivation `A d/dw + B d/deta`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperDerivation {
    pub coef_dw: SuperLaurentSection,
    pub coef_deta: SuperLaurentSection,
    pub parity: Parity,
}

impl SuperDerivation {
    pub fn new(
        coef_dw: SuperLaurentSection,
        coef_deta: SuperLaurentSection,
        parity: Parity,
    ) -> Result<Self> {
        let want_dw = Some(parity);
        let want_deta = Some(match parity {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        });
        if !coef_dw.is_zero() && coef_dw.parity() != want_dw {
            return Err(Error::Unsupported("d/dw coefficient parity mismatch".into()));
        }
        if !coef_deta.is_zero() && coef_deta.parity() != want_deta {
            return Err(Error::Unsupported("d/deta coefficient parity mismatch".into()));
        }
        Ok(SuperDerivation { coef_dw, coef_deta, parity })
    }

    /// The Euler field `C = w d/dw + eta d/deta`.
    pub fn euler(backend: Backend) -> Self {
        SuperDerivation {
            coef_dw: SuperLaurentSection::coord_w(backend),
            coef_deta: SuperLaurentSection::coord_eta(backend),
            parity: Parity::Even,
        }
    }

    /// The left-invariant odd field `Z = -k eta d/dw + w d/deta`.
    pub fn z_left(k: &Scalar) -> Self {
        let b = k.backend();
        SuperDerivation {
            coef_dw: SuperLaurentSection::from_odd(LaurentPoly::constant(k.neg())),
            coef_deta: SuperLaurentSection::coord_w(b),
            parity: Parity::Odd,
        }
    }

    /// The SUSY field `Z_k = k eta d/dw + w d/deta`.
    pub fn z_susy(k: &Scalar) -> Self {
        let b = k.backend();
        SuperDerivation {
            coef_dw: SuperLaurentSection::from_odd(LaurentPoly::constant(k.clone())),
            coef_deta: SuperLaurentSection::coord_w(b),
            parity: Parity::Odd,
        }
    }

    /// Apply to a section via the graded Leibniz rule.
    pub fn apply(&self, s: &SuperLaurentSection) -> SuperLaurentSection {
        self.coef_dw
            .mul(&s.d_dw())
            .add(&self.coef_deta.mul(&s.d_deta()))
    }

    /// Value at the identity `(1, 0)` as a pair
    /// (even tangent component along d/dw, odd tangent component along d/deta).
    pub fn at_identity(&self) -> (Scalar, Scalar) {
        (
            self.coef_dw.even.eval_at_one(),
            self.coef_deta.even.eval_at_one(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SuperDerivation {
            coef_dw: self.coef_dw.scale(c),
            coef_deta: self.coef_deta.scale(c),
            parity: self.parity,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.parity != other.parity {
            return Err(Error::Unsupported("adding derivations of different parity".into()));
        }
        Ok(SuperDerivation {
            coef_dw: self.coef_dw.add(&other.coef_dw),
            coef_deta: self.coef_deta.add(&other.coef_deta),
            parity: self.parity,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coef_dw.is_zero() && self.coef_deta.is_zero()
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.coef_dw.approx_eq(&other.coef_dw, eps)
            && self.coef_deta.approx_eq(&other.coef_deta, eps)
    }
}

/// Super bracket `[D1, D2] = D1 D2 - (-1)^{p1 p2} D2 D1`, again a derivation;
/// its coefficients are the bracket's values on the coordinates `w`, `eta`.
pub fn der_bracket(d1: &SuperDerivation, d2: &SuperDerivation) -> Result<SuperDerivation> {
    let sign_flip = d1.parity == Parity::Odd && d2.parity == Parity::Odd;
    let combine = |a: SuperLaurentSection, b: SuperLaurentSection| {
        if sign_flip {
            a.add(&b)
        } else {
            a.sub(&b)
        }
    };
    let coef_dw = combine(d1.apply(&d2.coef_dw), d2.apply(&d1.coef_dw));
    let coef_deta = combine(d1.apply(&d2.coef_deta), d2.apply(&d1.coef_deta));
    let parity = if d1.parity == d2.parity { Parity::Even } else { Parity::Odd };
    SuperDerivation::new(coef_dw, coef_deta, parity)
}

/// A one-form `A dw + B deta` with section coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperOneForm {
    pub coef_dw: SuperLaurentSection,
    pub coef_deta: SuperLaurentSection,
}

impl SuperOneForm {
    pub fn new(coef_dw: SuperLaurentSection, coef_deta: SuperLaurentSection) -> Self {
        SuperOneForm { coef_dw, coef_deta }
    }

    /// The SUSY form `omega_k = w dw - k eta deta`.
    pub fn omega(k: &Scalar) -> Self {
        let b = k.backend();
        SuperOneForm {
            coef_dw: SuperLaurentSection::coord_w(b),
            coef_deta: SuperLaurentSection::from_odd(LaurentPoly::constant(k.neg())),
        }
    }

    /// Pairing with a derivation, section-bilinear over the coordinates.
    pub fn pair(&self, d: &SuperDerivation) -> SuperLaurentSection {
        self.coef_dw
            .mul(&d.coef_dw)
            .add(&self.coef_deta.mul(&d.coef_deta))
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.coef_dw.approx_eq(&other.coef_dw, eps)
            && self.coef_deta.approx_eq(&other.coef_deta, eps)
    }
}

/// An endomorphism of the shape `F(w, eta) = (f(w), g(w) eta)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentEndo {
    pub f: LaurentPoly,
    pub g: LaurentPoly,
}

impl LaurentEndo {
    pub fn new(f: LaurentPoly, g: LaurentPoly) -> Self {
        LaurentEndo { f, g }
    }

    pub fn identity(backend: Backend) -> Self {
        LaurentEndo {
            f: LaurentPoly::w(1, backend),
            g: LaurentPoly::one(backend),
        }
    }

    /// `(F o G)(w, eta) = F(G(w, eta))`.
    pub fn compose(&self, inner: &LaurentEndo) -> Result<LaurentEndo> {
        let (c, d) = inner.f.as_monomial().ok_or_else(|| {
            Error::Unsupported("composition needs a monomial reduced map".into())
        })?;
        Ok(LaurentEndo {
            f: self.f.compose_monomial(&c, d)?,
            g: self.g.compose_monomial(&c, d)?.mul(&inner.g),
        })
    }
}

/// Pullback `F^*(A dw + B deta)` along `F = (f(w), g(w) eta)` using
/// `dw -> f' dw` and `deta -> g' eta dw + g deta`.
pub fn pullback_form(endo: &LaurentEndo, form: &SuperOneForm) -> Result<SuperOneForm> {
    let a = form.coef_dw.compose(endo)?;
    let b = form.coef_deta.compose(endo)?;
    let f_prime = endo.f.derivative();
    let g_prime_eta = SuperLaurentSection::from_odd(endo.g.derivative());
    let coef_dw = a
        .mul(&SuperLaurentSection::from_even(f_prime))
        .add(&b.mul(&g_prime_eta));
    let coef_deta = b.mul(&SuperLaurentSection::from_even(endo.g.clone()));
    Ok(SuperOneForm::new(coef_dw, coef_deta))
}

/// If `F^*(omega_k) = h * omega_k` for an (even, invertible) Laurent factor
/// `h`, return `h`; otherwise report the failing proportionality.
pub fn susy_proportionality(endo: &LaurentEndo, k: &Scalar) -> Result<LaurentPoly> {
    let omega = SuperOneForm::omega(k);
    let pulled = pullback_form(endo, &omega)?;
    if !pulled.coef_dw.odd.is_zero() || !pulled.coef_deta.even.is_zero() {
        return Err(Error::NoSolution("pullback is not proportional to omega_k".into()));
    }
    // h from the dw side: h * w = pulled_dw
    let h = pulled.coef_dw.even.shift(-1);
    let expected_deta = h.scale(&k.neg());
    if pulled.coef_deta.odd != expected_deta {
        return Err(Error::NoSolution(
            "dw and deta sides give inconsistent proportionality factors".into(),
        ));
    }
    if h.as_monomial().map(|(c, _)| c.is_zero()).unwrap_or(true) && !h.is_zero() {
        return Err(Error::NoSolution("factor is not invertible".into()));
    }
    if h.is_zero() {
        return Err(Error::NoSolution("pullback vanishes".into()));
    }
    Ok(h)
}

/// The SUSY-preserving endomorphisms over `w -> w^-1`: solves
/// `g^2 = -w^-4` by exponent halving, returning `P_+` and `P_-`.
pub fn solve_susy_gauge(k: &Scalar) -> Result<Vec<LaurentEndo>> {
    if k.is_zero() {
        return Err(Error::Unsupported("SUSY gauge solve requires k != 0".into()));
    }
    let b = k.backend();
    // F^*(omega_k) = h omega_k forces h w = -w^-3 and h = g^2.
    let target = LaurentPoly::monomial(Scalar::from_i64(-1, b), -4);
    let (g_plus, g_minus) = target.sqrt_monomial()?;
    Ok(vec![
        LaurentEndo::new(LaurentPoly::w(-1, b), g_plus),
        LaurentEndo::new(LaurentPoly::w(-1, b), g_minus),
    ])
}

/// True iff the span of `Z_k` is a SUSY-1 structure: `omega_k(Z_k) = 0` and
/// `(Z_k, [Z_k, Z_k])` are independent at the identity.
pub fn susy_frame_check(k: &Scalar) -> Result<bool> {
    let z = SuperDerivation::z_susy(k);
    let omega = SuperOneForm::omega(k);
    if !omega.pair(&z).is_zero() {
        return Ok(false);
    }
    let zz = der_bracket(&z, &z)?;
    let (_, z_odd) = z.at_identity();
    let (zz_even, _) = zz.at_identity();
    Ok(!z_odd.is_zero() && !zz_even.is_zero())
}

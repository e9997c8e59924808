//! Laurent polynomials in `w` over a scalar backend.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    backend: Backend,
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(backend: Backend) -> Self {
        LaurentPoly { backend, coeffs: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn one(backend: Backend) -> Self {
        LaurentPoly::constant(Scalar::one(backend))
    }

    pub fn monomial(c: Scalar, exp: i64) -> Self {
        let mut p = LaurentPoly::zero(c.backend());
        p.set_coeff(exp, c);
        p
    }

    /// `w^exp` with unit coefficient.
    pub fn w(exp: i64, backend: Backend) -> Self {
        LaurentPoly::monomial(Scalar::one(backend), exp)
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn set_coeff(&mut self, exp: i64, c: Scalar) {
        if c.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            assert_eq!(c.backend(), self.backend);
            self.coeffs.insert(exp, c);
        }
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.backend))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.coeffs {
            let s = &p.coeff(*e) + c;
            p.set_coeff(*e, s);
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_i64(-1, self.backend))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut p = LaurentPoly::zero(self.backend);
        for (e, v) in &self.coeffs {
            p.set_coeff(*e, c * v);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = LaurentPoly::zero(self.backend);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                let s = &p.coeff(e) + &(c1 * c2);
                p.set_coeff(e, s);
            }
        }
        p
    }

    /// `d/dw`.
    pub fn derivative(&self) -> Self {
        let mut p = LaurentPoly::zero(self.backend);
        for (e, c) in &self.coeffs {
            p.set_coeff(e - 1, &Scalar::from_i64(*e, self.backend) * c);
        }
        p
    }

    /// Shift exponents by `d` (multiplication by `w^d`).
    pub fn shift(&self, d: i64) -> Self {
        let mut p = LaurentPoly::zero(self.backend);
        for (e, c) in &self.coeffs {
            p.set_coeff(e + d, c.clone());
        }
        p
    }

    /// Sum of coefficients; the value at `w = 1`.
    pub fn eval_at_one(&self) -> Scalar {
        let mut acc = Scalar::zero(self.backend);
        for c in self.coeffs.values() {
            acc = &acc + c;
        }
        acc
    }

    /// `Some((c, e))` if this is a single term `c w^e`.
    pub fn as_monomial(&self) -> Option<(Scalar, i64)> {
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|e| *e == 0)
    }

    /// Substitute `w -> c w^d` (monomial substitution, the Laurent-closed
    /// case); `d = 0` only allowed for constants.
    pub fn compose_monomial(&self, c: &Scalar, d: i64) -> Result<Self> {
        if self.is_constant() {
            return Ok(self.clone());
        }
        if d == 0 {
            return Err(Error::Unsupported(
                "composition collapses to a constant exponent".into(),
            ));
        }
        let mut p = LaurentPoly::zero(self.backend);
        for (e, v) in &self.coeffs {
            let mut pw = Scalar::one(self.backend);
            let n = e.unsigned_abs();
            let base = if *e >= 0 {
                c.clone()
            } else {
                c.inv().ok_or_else(|| Error::NotInvertible("composition scalar".into()))?
            };
            for _ in 0..n {
                pw = &pw * &base;
            }
            let exp = e * d;
            let s = &p.coeff(exp) + &(&pw * v);
            p.set_coeff(exp, s);
        }
        Ok(p)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        let exps: std::collections::BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        exps.into_iter()
            .all(|e| self.coeff(e).approx_eq(&other.coeff(e), eps))
    }

    /// Square root of a monomial Laurent polynomial: exponent halving plus a
    /// scalar square root. Non-monomials report `NoSolution`.
    pub fn sqrt_monomial(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        let (c, e) = self.as_monomial().ok_or_else(|| {
            Error::NoSolution("square root of a non-monomial Laurent polynomial".into())
        })?;
        if e % 2 != 0 {
            return Err(Error::NoSolution("odd exponent has no Laurent square root".into()));
        }
        let (s, sneg) = c
            .sqrt()
            .ok_or_else(|| Error::NoSolution("scalar square root not representable".into()))?;
        Ok((
            LaurentPoly::monomial(s, e / 2),
            LaurentPoly::monomial(sneg, e / 2),
        ))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "(0)");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*w")?,
                _ => write!(f, "({c})*w^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_ops() {
        let b = Backend::Exact;
        let p = LaurentPoly::w(2, b).add(&LaurentPoly::w(-1, b).scale(&Scalar::from_i64(3, b)));
        let q = LaurentPoly::w(1, b);
        let pq = p.mul(&q);
        assert_eq!(pq.coeff(3), Scalar::from_i64(1, b));
        assert_eq!(pq.coeff(0), Scalar::from_i64(3, b));
        assert_eq!(p.derivative().coeff(1), Scalar::from_i64(2, b));
        assert_eq!(p.derivative().coeff(-2), Scalar::from_i64(-3, b));
    }

    #[test]
    fn monomial_compose() {
        let b = Backend::Exact;
        // p(w) = w^2 + w^-1, substitute w -> 2 w^-1
        let p = LaurentPoly::w(2, b).add(&LaurentPoly::w(-1, b));
        let q = p.compose_monomial(&Scalar::from_i64(2, b), -1).unwrap();
        assert_eq!(q.coeff(-2), Scalar::from_i64(4, b));
        assert_eq!(q.coeff(1), Scalar::exact(1, 2, 0, 1));
    }

    #[test]
    fn monomial_sqrt() {
        let b = Backend::Exact;
        // sqrt(-w^-4) = +- i w^-2
        let t = LaurentPoly::monomial(Scalar::from_i64(-1, b), -4);
        let (s, sneg) = t.sqrt_monomial().unwrap();
        assert_eq!(s, LaurentPoly::monomial(Scalar::i(b), -2));
        assert_eq!(sneg, LaurentPoly::monomial(Scalar::i(b).neg(), -2));
        assert!(LaurentPoly::w(3, b).sqrt_monomial().is_err());
    }
}

//! Grassmann numbers over a scalar backend: finite exterior algebra on `N`
//! paired generators `x1..xN` and conjugates `X1..XN` (2N odd symbols).
//!
//! Symbols are indexed `0..2N` with `xj -> 2(j-1)` and `Xj -> 2(j-1)+1`, so
//! conjugation is a bitmask pair swap. Terms are stored on strictly increasing
//! symbol subsets (bitmasks); the Koszul sign of a product is the transposition
//! count of the merge.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Backend, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannNumber {
    n_pairs: usize,
    backend: Backend,
    /// mask over 2*n_pairs odd symbols -> nonzero coefficient
    coeffs: BTreeMap<u32, Scalar>,
}

/// Number of transpositions needed to merge the (disjoint) ordered subsets.
fn merge_inversions(a: u32, b: u32) -> u32 {
    let mut count = 0;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        count += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    count
}

impl GrassmannNumber {
    pub fn zero(n_pairs: usize, backend: Backend) -> Self {
        assert!(n_pairs <= 16, "at most 16 generator pairs supported");
        GrassmannNumber { n_pairs, backend, coeffs: BTreeMap::new() }
    }

    pub fn from_scalar(c: Scalar, n_pairs: usize) -> Self {
        let backend = c.backend();
        let mut g = GrassmannNumber::zero(n_pairs, backend);
        g.set_coeff(0, c);
        g
    }

    pub fn one(n_pairs: usize, backend: Backend) -> Self {
        GrassmannNumber::from_scalar(Scalar::one(backend), n_pairs)
    }

    /// xj, 1-based.
    pub fn generator(j: usize, n_pairs: usize, backend: Backend) -> Self {
        assert!(j >= 1 && j <= n_pairs);
        let mut g = GrassmannNumber::zero(n_pairs, backend);
        g.set_coeff(1 << (2 * (j - 1)), Scalar::one(backend));
        g
    }

    /// Xj (the conjugate symbol), 1-based.
    pub fn conj_generator(j: usize, n_pairs: usize, backend: Backend) -> Self {
        assert!(j >= 1 && j <= n_pairs);
        let mut g = GrassmannNumber::zero(n_pairs, backend);
        g.set_coeff((1 << (2 * (j - 1))) << 1, Scalar::one(backend));
        g
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn set_coeff(&mut self, mask: u32, c: Scalar) {
        if c.is_zero() {
            self.coeffs.remove(&mask);
        } else {
            assert_eq!(c.backend(), self.backend, "coefficient backend mismatch");
            self.coeffs.insert(mask, c);
        }
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.coeffs
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.backend))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn body(&self) -> Scalar {
        self.coeff(0)
    }

    /// The nilpotent part `self - body`.
    pub fn soul(&self) -> Self {
        let mut g = self.clone();
        g.coeffs.remove(&0);
        g
    }

    pub fn even_part(&self) -> Self {
        let mut g = GrassmannNumber::zero(self.n_pairs, self.backend);
        for (m, c) in &self.coeffs {
            if m.count_ones() % 2 == 0 {
                g.coeffs.insert(*m, c.clone());
            }
        }
        g
    }

    pub fn odd_part(&self) -> Self {
        let mut g = GrassmannNumber::zero(self.n_pairs, self.backend);
        for (m, c) in &self.coeffs {
            if m.count_ones() % 2 == 1 {
                g.coeffs.insert(*m, c.clone());
            }
        }
        g
    }

    /// Parity of a homogeneous element; `None` if mixed (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut p = None;
        for m in self.coeffs.keys() {
            let tp = if m.count_ones() % 2 == 0 { Parity::Even } else { Parity::Odd };
            match p {
                None => p = Some(tp),
                Some(q) if q != tp => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(Parity::Even))
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.is_zero() || self.parity() == Some(Parity::Odd)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n_pairs != other.n_pairs {
            return Err(Error::BackendMismatch(format!(
                "generator counts differ: {} vs {}",
                self.n_pairs, other.n_pairs
            )));
        }
        if self.backend != other.backend {
            return Err(Error::BackendMismatch(
                "exact and floating operands mixed".into(),
            ));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut g = GrassmannNumber::zero(self.n_pairs, self.backend);
        for (m, v) in &self.coeffs {
            g.set_coeff(*m, c * v);
        }
        g
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut g = self.clone();
        for (m, c) in &other.coeffs {
            let s = &g.coeff(*m) + c;
            g.set_coeff(*m, s);
        }
        Ok(g)
    }

    /// Bilinear product with the Koszul sign from the merge transposition count.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut g = GrassmannNumber::zero(self.n_pairs, self.backend);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if ma & mb != 0 {
                    continue; // repeated odd symbol squares to zero
                }
                let mask = ma | mb;
                let mut c = ca * cb;
                if merge_inversions(*ma, *mb) % 2 == 1 {
                    c = c.neg();
                }
                let s = &g.coeff(mask) + &c;
                g.set_coeff(mask, s);
            }
        }
        Ok(g)
    }

    /// Inverse of an even element with invertible body, via the terminating
    /// geometric series on the nilpotent part.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::NotInvertible("element is not even".into()));
        }
        let body = self.body();
        let binv = body
            .inv()
            .ok_or_else(|| Error::NotInvertible("body is zero".into()))?;
        // a = c(1 + n), a^-1 = c^-1 sum (-n)^j
        let n = self.soul().scale(&binv);
        let mut acc = GrassmannNumber::one(self.n_pairs, self.backend);
        let mut pow = GrassmannNumber::one(self.n_pairs, self.backend);
        loop {
            pow = pow.try_mul(&n)?.neg();
            if pow.is_zero() {
                break;
            }
            acc = acc.try_add(&pow)?;
        }
        Ok(acc.scale(&binv))
    }

    /// Antilinear multiplicative conjugation: swaps `xj <-> Xj`, conjugates
    /// coefficients. The sign per term is (-1)^(number of complete pairs),
    /// from re-sorting the swapped symbols.
    pub fn conj(&self) -> Self {
        let mut g = GrassmannNumber::zero(self.n_pairs, self.backend);
        for (m, c) in &self.coeffs {
            let lo = m & 0x5555_5555; // x-symbols
            let hi = m & 0xAAAA_AAAA; // X-symbols
            let swapped = (lo << 1) | (hi >> 1);
            let pairs = (lo & (hi >> 1)).count_ones();
            let mut v = c.conj();
            if pairs % 2 == 1 {
                v = v.neg();
            }
            g.set_coeff(swapped, v);
        }
        g
    }

    /// `exp` of an even element: `e^body * sum(soul^j / j!)`, a finite sum.
    pub fn exp(&self) -> Result<Self> {
        if !self.is_even() {
            return Err(Error::Unsupported("exp of a non-even element".into()));
        }
        let body = self.body();
        let scale = match (&body, self.backend) {
            (b, Backend::Exact) if !b.is_zero() => {
                return Err(Error::BackendUnsupported(
                    "exact backend cannot represent e^body for nonzero body".into(),
                ))
            }
            (_, Backend::Exact) => Scalar::one(Backend::Exact),
            (b, Backend::Float) => Scalar::Float(b.to_complex().exp()),
        };
        let n = self.soul();
        let mut acc = GrassmannNumber::one(self.n_pairs, self.backend);
        let mut pow = GrassmannNumber::one(self.n_pairs, self.backend);
        let mut fact: i64 = 1;
        let mut j: i64 = 0;
        loop {
            j += 1;
            fact *= j;
            pow = pow.try_mul(&n)?;
            if pow.is_zero() {
                break;
            }
            let inv_fact = Scalar::from_i64(fact, self.backend).inv().unwrap();
            acc = acc.try_add(&pow.scale(&inv_fact))?;
        }
        Ok(acc.scale(&scale))
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        if self.n_pairs != other.n_pairs {
            return false;
        }
        let masks: std::collections::BTreeSet<u32> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        masks
            .into_iter()
            .all(|m| self.coeff(m).approx_eq(&other.coeff(m), eps))
    }
}

impl Add for &GrassmannNumber {
    type Output = GrassmannNumber;
    fn add(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.try_add(rhs).expect("grassmann add")
    }
}

impl Sub for &GrassmannNumber {
    type Output = GrassmannNumber;
    fn sub(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.try_add(&rhs.neg()).expect("grassmann sub")
    }
}

impl Mul for &GrassmannNumber {
    type Output = GrassmannNumber;
    fn mul(self, rhs: &GrassmannNumber) -> GrassmannNumber {
        self.try_mul(rhs).expect("grassmann mul")
    }
}

impl Neg for &GrassmannNumber {
    type Output = GrassmannNumber;
    fn neg(self) -> GrassmannNumber {
        self.scale(&Scalar::from_i64(-1, self.backend))
    }
}

impl GrassmannNumber {
    pub fn neg(&self) -> Self {
        -self
    }
}

fn mask_symbols(mask: u32) -> String {
    let mut parts = Vec::new();
    let mut m = mask;
    while m != 0 {
        let s = m.trailing_zeros();
        let pair = s / 2 + 1;
        if s % 2 == 0 {
            parts.push(format!("x{pair}"));
        } else {
            parts.push(format!("X{pair}"));
        }
        m &= m - 1;
    }
    parts.join("^")
}

impl fmt::Display for GrassmannNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "(0)");
        }
        let mut first = true;
        for (m, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mask_symbols(*m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(j: usize) -> GrassmannNumber {
        GrassmannNumber::generator(j, 4, Backend::Exact)
    }

    fn sc(n: i64) -> GrassmannNumber {
        GrassmannNumber::from_scalar(Scalar::from_i64(n, Backend::Exact), 4)
    }

    #[test]
    fn sign_rule() {
        let t12 = &th(1) * &th(2);
        let t21 = &th(2) * &th(1);
        assert_eq!(t21, t12.neg());
        assert!((&th(1) * &th(1)).is_zero());
    }

    #[test]
    fn top_square_vanishes() {
        // (1 + t1 t2)(1 - t1 t2) = 1
        let one = sc(1);
        let n = &th(1) * &th(2);
        let a = &one + &n;
        let b = &one - &n;
        assert_eq!(&a * &b, one);
    }

    #[test]
    fn absorbing_product() {
        // (2 + i t1 t2)(3 t1) = 6 t1
        let a = &sc(2) + &(&th(1) * &th(2)).scale(&Scalar::i(Backend::Exact));
        let b = th(1).scale(&Scalar::from_i64(3, Backend::Exact));
        assert_eq!(&a * &b, th(1).scale(&Scalar::from_i64(6, Backend::Exact)));
    }

    #[test]
    fn inverse_formula() {
        // (2 + t1 t2)^-1 = 1/2 - (1/4) t1 t2
        let a = &sc(2) + &(&th(1) * &th(2));
        let inv = a.inv().unwrap();
        let expected = &GrassmannNumber::from_scalar(Scalar::exact(1, 2, 0, 1), 4)
            - &(&th(1) * &th(2)).scale(&Scalar::exact(1, 4, 0, 1));
        assert_eq!(inv, expected);
        assert_eq!(&a * &inv, sc(1));
        assert_eq!(sc(1).inv().unwrap(), sc(1));
        assert!(th(1).inv().is_err());
    }

    #[test]
    fn conjugation() {
        // i t1 -> -i T1
        let it1 = th(1).scale(&Scalar::i(Backend::Exact));
        let expected =
            GrassmannNumber::conj_generator(1, 4, Backend::Exact).scale(&Scalar::exact(0, 1, -1, 1));
        assert_eq!(it1.conj(), expected);
        // conj(t1 T1) = T1 t1 = -t1 T1
        let t1c1 = &th(1) * &GrassmannNumber::conj_generator(1, 4, Backend::Exact);
        assert_eq!(t1c1.conj(), t1c1.neg());
    }

    #[test]
    fn exp_nilpotent() {
        assert_eq!(sc(0).exp().unwrap(), sc(1));
        let n = &th(1) * &th(2);
        assert_eq!(n.exp().unwrap(), &sc(1) + &n);
        // exact backend with transcendental body is refused
        assert!(sc(2).exp().is_err());
    }

    #[test]
    fn exp_float_pi() {
        // e^{i pi}(1 + t1 t2) = -1 - t1 t2
        let n = 4;
        let t1 = GrassmannNumber::generator(1, n, Backend::Float);
        let t2 = GrassmannNumber::generator(2, n, Backend::Float);
        let a = &GrassmannNumber::from_scalar(
            Scalar::from_f64(0.0, std::f64::consts::PI),
            n,
        ) + &(&t1 * &t2);
        let e = a.exp().unwrap();
        let expected = &GrassmannNumber::from_scalar(Scalar::from_f64(-1.0, 0.0), n)
            - &(&t1 * &t2);
        assert!(e.approx_eq(&expected, 1e-12));
    }
}

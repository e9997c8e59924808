//! Scalar coefficients: exact Gaussian rationals Q(i), optionally extended by a
//! single formal square root with eager reduction, or floating complex numbers.
//!
//! The exact backend is bit-exact; all tolerance handling lives at the
//! comparison sites (`approx_eq`), never inside arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A Gaussian rational `re + im*i` with `re, im` in Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`, the squared modulus, a nonnegative rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(GaussRat::new(&self.re / &n, -&self.im / &n))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Exact square root inside Q(i), if one exists.
    pub fn sqrt_exact(&self) -> Option<GaussRat> {
        if self.is_zero() {
            return Some(GaussRat::zero());
        }
        if self.im.is_zero() {
            // sqrt of a rational: either sqrt(re) or i*sqrt(-re)
            if self.re.is_positive() {
                let r = rational_sqrt(&self.re)?;
                return Some(GaussRat::new(r, BigRational::zero()));
            } else {
                let r = rational_sqrt(&(-self.re.clone()))?;
                return Some(GaussRat::new(BigRational::zero(), r));
            }
        }
        // (x + yi)^2 = re + im*i with im != 0:
        // x^2 - y^2 = re, 2xy = im, x^2 + y^2 = |q| must be rational.
        let modulus = rational_sqrt(&self.norm_sq())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let x2 = (&self.re + &modulus) / &two;
        let x = rational_sqrt(&x2)?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im / (&two * &x);
        Some(GaussRat::new(x, y))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().sqrt();
    let den = q.denom().sqrt();
    if &(&num * &num) == q.numer() && &(&den * &den) == q.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

/// Split a nonnegative rational `q` as `c^2 * r` with `r` an integer radicand
/// carrying no small square factor, so that `sqrt(q) = c * sqrt(r)`.
pub fn split_square(q: &BigRational) -> (BigRational, BigInt) {
    assert!(!q.is_negative(), "split_square of negative rational");
    if q.is_zero() {
        return (BigRational::zero(), BigInt::one());
    }
    // sqrt(n/d) = sqrt(n*d)/d
    let n = q.numer() * q.denom();
    let mut rad = n;
    let mut sq = BigInt::one();
    let mut p = BigInt::from(2);
    let cap = BigInt::from(100_000);
    while &(&p * &p) <= &rad && p <= cap {
        let pp = &p * &p;
        while (&rad % &pp).is_zero() {
            rad /= &pp;
            sq *= &p;
        }
        p += 1;
    }
    (BigRational::new(sq, q.denom().clone()), rad)
}

/// Backend-tagged scalar value.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    /// Gaussian rational.
    Exact(GaussRat),
    /// `a + b*sqrt(rad)` with `a, b` in Q(i) and `rad` a positive integer
    /// that is not a perfect square; `s^2 -> rad` reduces eagerly.
    ExactExt { a: GaussRat, b: GaussRat, rad: BigInt },
    /// Floating complex.
    Float(Complex64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

impl Scalar {
    pub fn zero(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(GaussRat::zero()),
            Backend::Float => Scalar::Float(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(GaussRat::one()),
            Backend::Float => Scalar::Float(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn i(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(GaussRat::i()),
            Backend::Float => Scalar::Float(Complex64::new(0.0, 1.0)),
        }
    }

    pub fn from_i64(n: i64, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(GaussRat::from_i64(n)),
            Backend::Float => Scalar::Float(Complex64::new(n as f64, 0.0)),
        }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn exact(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Scalar::Exact(GaussRat::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        ))
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) | Scalar::ExactExt { .. } => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::ExactExt { a, b, .. } => a.is_zero() && b.is_zero(),
            Scalar::Float(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    /// Collapse an extension value whose radical part vanished, or whose
    /// radicand is a perfect square.
    fn normalize(self) -> Self {
        match self {
            Scalar::ExactExt { a, b, rad } => {
                if b.is_zero() {
                    return Scalar::Exact(a);
                }
                let root = rad.sqrt();
                if &root * &root == rad {
                    let r = GaussRat::new(BigRational::from_integer(root), BigRational::zero());
                    return Scalar::Exact(&a + &(&b * &r));
                }
                Scalar::ExactExt { a, b, rad }
            }
            s => s,
        }
    }

    /// `c * sqrt(rad)` as an extension scalar, reduced if `rad` is square.
    pub fn sqrt_ext(c: GaussRat, rad: BigInt) -> Self {
        Scalar::ExactExt { a: GaussRat::zero(), b: c, rad }.normalize()
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(g) => Scalar::Exact(g.conj()),
            Scalar::ExactExt { a, b, rad } => Scalar::ExactExt {
                a: a.conj(),
                b: b.conj(),
                rad: rad.clone(),
            },
            Scalar::Float(c) => Scalar::Float(c.conj()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Exact(g) => Scalar::Exact(-g),
            Scalar::ExactExt { a, b, rad } => Scalar::ExactExt {
                a: -a,
                b: -b,
                rad: rad.clone(),
            },
            Scalar::Float(c) => Scalar::Float(-c),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Exact(g) => g.inv().map(Scalar::Exact),
            Scalar::ExactExt { a, b, rad } => {
                // (a + b s)^-1 = (a - b s) / (a^2 - b^2 rad)
                let radq = GaussRat::new(BigRational::from_integer(rad.clone()), BigRational::zero());
                let den = &(a * a) - &(&(b * b) * &radq);
                let d = den.inv()?;
                Some(
                    Scalar::ExactExt {
                        a: a * &d,
                        b: &(-b) * &d,
                        rad: rad.clone(),
                    }
                    .normalize(),
                )
            }
            Scalar::Float(c) => {
                if c.norm() == 0.0 {
                    None
                } else {
                    Some(Scalar::Float(c.inv()))
                }
            }
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(g) => g.to_complex(),
            Scalar::ExactExt { a, b, rad } => {
                let r = rad.to_f64().unwrap_or(f64::NAN).sqrt();
                a.to_complex() + b.to_complex() * r
            }
            Scalar::Float(c) => *c,
        }
    }

    pub fn approx_eq(&self, other: &Scalar, eps: f64) -> bool {
        match (self, other) {
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => {
                (self.to_complex() - other.to_complex()).norm() <= eps
            }
            _ => self == other,
        }
    }

    /// Exact square root when representable in Q(i) or Q(i, sqrt(r)).
    ///
    /// Succeeds always for unit-modulus exact values (via the half-angle
    /// identity sqrt(q) = (1+q)/|1+q| for q != -1), and for real rational
    /// values; returns both roots as `(s, -s)`.
    pub fn sqrt(&self) -> Option<(Scalar, Scalar)> {
        match self {
            Scalar::Float(c) => {
                let s = c.sqrt();
                Some((Scalar::Float(s), Scalar::Float(-s)))
            }
            Scalar::Exact(g) => {
                if let Some(r) = g.sqrt_exact() {
                    let s = Scalar::Exact(r.clone());
                    return Some((s.clone(), s.neg()));
                }
                if g.im.is_zero() {
                    // real rational: sqrt(re) or i*sqrt(-re) via one radicand
                    let (mag, sign_i) = if g.re.is_negative() {
                        (-g.re.clone(), true)
                    } else {
                        (g.re.clone(), false)
                    };
                    let (c, rad) = split_square(&mag);
                    let coeff = if sign_i {
                        GaussRat::new(BigRational::zero(), c)
                    } else {
                        GaussRat::new(c, BigRational::zero())
                    };
                    let s = Scalar::sqrt_ext(coeff, rad);
                    return Some((s.clone(), s.neg()));
                }
                if g.norm_sq().is_one() {
                    // unit circle: sqrt(q) = (1+q)/sqrt(2+2 Re q), q != -1
                    let one = GaussRat::one();
                    let t = &(&one + g).norm_sq(); // = 2 + 2 Re q
                    if t.is_zero() {
                        // q = -1: sqrt = +-i
                        let s = Scalar::Exact(GaussRat::i());
                        return Some((s.clone(), s.neg()));
                    }
                    let (c, rad) = split_square(&BigRational::one().div(t));
                    let num = &one + g;
                    let coeff = &num * &GaussRat::new(c, BigRational::zero());
                    let s = Scalar::sqrt_ext(coeff, rad);
                    return Some((s.clone(), s.neg()));
                }
                None
            }
            Scalar::ExactExt { .. } => None,
        }
    }

    /// `x * conj(x)`, always real (and nonnegative for Exact/Float).
    pub fn modulus_sq(&self) -> Scalar {
        self * &self.conj()
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.re.is_one() && g.im.is_zero(),
            Scalar::ExactExt { .. } => false,
            Scalar::Float(c) => c.re == 1.0 && c.im == 0.0,
        }
    }
}

fn promote_pair(x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
    match (x, y) {
        (Scalar::Exact(g), Scalar::ExactExt { rad, .. }) => (
            Scalar::ExactExt { a: g.clone(), b: GaussRat::zero(), rad: rad.clone() },
            y.clone(),
        ),
        (Scalar::ExactExt { rad, .. }, Scalar::Exact(g)) => (
            x.clone(),
            Scalar::ExactExt { a: g.clone(), b: GaussRat::zero(), rad: rad.clone() },
        ),
        _ => (x.clone(), y.clone()),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let (x, y) = promote_pair(self, rhs);
        match (x, y) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(&a + &b),
            (
                Scalar::ExactExt { a: a1, b: b1, rad: r1 },
                Scalar::ExactExt { a: a2, b: b2, rad: r2 },
            ) => {
                assert_eq!(r1, r2, "scalar arithmetic across distinct radicands");
                Scalar::ExactExt { a: &a1 + &a2, b: &b1 + &b2, rad: r1 }.normalize()
            }
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => panic!("scalar backend mismatch in add"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &rhs.neg()
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let (x, y) = promote_pair(self, rhs);
        match (x, y) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(&a * &b),
            (
                Scalar::ExactExt { a: a1, b: b1, rad: r1 },
                Scalar::ExactExt { a: a2, b: b2, rad: r2 },
            ) => {
                assert_eq!(r1, r2, "scalar arithmetic across distinct radicands");
                let radq =
                    GaussRat::new(BigRational::from_integer(r1.clone()), BigRational::zero());
                Scalar::ExactExt {
                    a: &(&a1 * &a2) + &(&(&b1 * &b2) * &radq),
                    b: &(&a1 * &b2) + &(&b1 * &a2),
                    rad: r1,
                }
                .normalize()
            }
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => panic!("scalar backend mismatch in mul"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => write!(f, "{}", fmt_gauss(g)),
            Scalar::ExactExt { a, b, rad } => {
                write!(f, "({})+({})*sqrt({})", fmt_gauss(a), fmt_gauss(b), rad)
            }
            Scalar::Float(c) => {
                if c.im == 0.0 {
                    write!(f, "{}", c.re)
                } else if c.im >= 0.0 {
                    write!(f, "{}+{}i", c.re, c.im)
                } else {
                    write!(f, "{}-{}i", c.re, -c.im)
                }
            }
        }
    }
}

fn fmt_gauss(g: &GaussRat) -> String {
    if g.im.is_zero() {
        format!("{}", g.re)
    } else if g.re.is_zero() {
        format!("{}i", g.im)
    } else if g.im.is_negative() {
        format!("{}-{}i", g.re, -g.im.clone())
    } else {
        format!("{}+{}i", g.re, g.im)
    }
}

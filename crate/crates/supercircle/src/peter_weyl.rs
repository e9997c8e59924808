//! Superfunctions on `S^{1|1}`, matrix coefficients, and the truncated
//! Peter-Weyl expansion with spectral error reporting.
//!
//! Under the identification `phi = phi0 + phi1 Z*`, everything reduces to a
//! pair of circle Fourier expansions; the odd sector is re-expressed in the
//! matrix-coefficient basis by dividing out the branch factor, with the `m=0`
//! odd coefficient carried by `pi_minus`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::rc::Rc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which square-root normalization scales the odd matrix coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `sqrt(-m)` principal: `i sqrt(m)` for `m > 0`, `sqrt(|m|)` for `m < 0`
    Default,
    /// `sqrt(m)` principal, the alternate normalization
    CompatSqrtM,
}

impl Branch {
    pub fn factor(&self, m: i64) -> Complex64 {
        let v = match self {
            Branch::Default => -m as f64,
            Branch::CompatSqrtM => m as f64,
        };
        Complex64::new(v, 0.0).sqrt()
    }
}

type Evaluator = Rc<dyn Fn(f64) -> Complex64>;

/// `phi = (phi0, phi1)` sampled on a uniform grid over `[0, 2 pi)`, with
/// optional closed-form evaluators for resampling.
#[derive(Clone)]
pub struct SuperFunction {
    pub grid_size: usize,
    pub phi0: Vec<Complex64>,
    pub phi1: Vec<Complex64>,
    pub eval0: Option<Evaluator>,
    pub eval1: Option<Evaluator>,
}

impl SuperFunction {
    pub fn from_samples(phi0: Vec<Complex64>, phi1: Vec<Complex64>) -> Result<Self> {
        let g = phi0.len();
        if g == 0 || !g.is_power_of_two() {
            return Err(Error::Parse(format!("grid size {g} is not a power of two")));
        }
        if phi1.len() != g {
            return Err(Error::Parse("phi0 and phi1 grids differ in length".into()));
        }
        Ok(SuperFunction { grid_size: g, phi0, phi1, eval0: None, eval1: None })
    }

    pub fn from_closures<F0, F1>(grid_size: usize, f0: F0, f1: F1) -> Result<Self>
    where
        F0: Fn(f64) -> Complex64 + 'static,
        F1: Fn(f64) -> Complex64 + 'static,
    {
        if grid_size == 0 || !grid_size.is_power_of_two() {
            return Err(Error::Parse(format!(
                "grid size {grid_size} is not a power of two"
            )));
        }
        let e0: Evaluator = Rc::new(f0);
        let e1: Evaluator = Rc::new(f1);
        let phi0 = sample(&e0, grid_size);
        let phi1 = sample(&e1, grid_size);
        Ok(SuperFunction {
            grid_size,
            phi0,
            phi1,
            eval0: Some(e0),
            eval1: Some(e1),
        })
    }

    /// Resample onto a different grid; needs closed forms.
    pub fn resampled(&self, grid_size: usize) -> Result<Self> {
        match (&self.eval0, &self.eval1) {
            (Some(e0), Some(e1)) => {
                if !grid_size.is_power_of_two() {
                    return Err(Error::Parse("grid size must be a power of two".into()));
                }
                Ok(SuperFunction {
                    grid_size,
                    phi0: sample(e0, grid_size),
                    phi1: sample(e1, grid_size),
                    eval0: Some(e0.clone()),
                    eval1: Some(e1.clone()),
                })
            }
            _ => Err(Error::Unsupported(
                "resampling needs closed-form evaluators".into(),
            )),
        }
    }
}

fn sample(f: &Evaluator, g: usize) -> Vec<Complex64> {
    (0..g).map(|j| f(2.0 * PI * j as f64 / g as f64)).collect()
}

/// Default grid for expansion order `M`: the next power of two at or above
/// `4 M`, never below 8.
pub fn default_grid(max_order: i64) -> usize {
    ((4 * max_order.max(2)) as usize).next_power_of_two()
}

/// Trapezoid-rule Fourier coefficient at frequency `m`.
fn fourier_coeff(samples: &[Complex64], m: i64) -> Complex64 {
    let g = samples.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, v) in samples.iter().enumerate() {
        let t = 2.0 * PI * j as f64 / g as f64;
        acc += v * Complex64::from_polar(1.0, -(m as f64) * t);
    }
    acc / g as f64
}

/// Expansion coefficients: `a` against the even coefficients `chi_m`, `b`
/// against the odd ones (`b[0]` is the `pi_minus` coefficient).
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    pub max_order: i64,
    pub branch: Branch,
    pub a: BTreeMap<i64, Complex64>,
    pub b: BTreeMap<i64, Complex64>,
}

impl CoefficientTable {
    pub fn reconstruct(&self, t: f64) -> (Complex64, Complex64) {
        let mut phi0 = Complex64::new(0.0, 0.0);
        let mut phi1 = Complex64::new(0.0, 0.0);
        for (m, c) in &self.a {
            phi0 += c * Complex64::from_polar(1.0, *m as f64 * t);
        }
        for (m, c) in &self.b {
            if *m == 0 {
                phi1 += c;
            } else {
                phi1 += c * self.branch.factor(*m) * Complex64::from_polar(1.0, *m as f64 * t);
            }
        }
        (phi0, phi1)
    }
}

/// Truncated expansion of `f` against the matrix-coefficient basis.
pub fn expand(f: &SuperFunction, max_order: i64, branch: Branch) -> Result<CoefficientTable> {
    if max_order < 0 {
        return Err(Error::Unsupported("negative expansion order".into()));
    }
    if (f.grid_size as i64) < 2 * max_order + 2 {
        return Err(Error::Undersampled(format!(
            "grid {} < 2M+2 = {}",
            f.grid_size,
            2 * max_order + 2
        )));
    }
    let mut a = BTreeMap::new();
    let mut b = BTreeMap::new();
    for m in -max_order..=max_order {
        a.insert(m, fourier_coeff(&f.phi0, m));
        let c1 = fourier_coeff(&f.phi1, m);
        if m == 0 {
            b.insert(m, c1);
        } else {
            b.insert(m, c1 / branch.factor(m));
        }
    }
    Ok(CoefficientTable { max_order, branch, a, b })
}

/// One row of a truncation-error report.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    pub n: usize,
    /// 0 for the even sector (`X = C^n`), 1 for the odd one (`X = C^n Z`)
    pub sector: usize,
    pub sup_error: f64,
}

fn full_spectrum(samples: &[Complex64]) -> Vec<Complex64> {
    let g = samples.len() as i64;
    (-g / 2..g / 2).map(|k| fourier_coeff(samples, k)).collect()
}

fn derivative_sup(spectrum: &[Complex64], g: i64, n: usize) -> f64 {
    // sup over the grid of the n-th derivative of the trigonometric
    // interpolant, evaluated spectrally
    let mut sup: f64 = 0.0;
    for j in 0..g {
        let t = 2.0 * PI * j as f64 / g as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, c) in spectrum.iter().enumerate() {
            let k = idx as i64 - g / 2;
            if n % 2 == 1 && k == -g / 2 {
                continue; // drop the unmatched Nyquist mode for odd derivatives
            }
            let ik = Complex64::new(0.0, k as f64);
            acc += c * ik.powu(n as u32) * Complex64::from_polar(1.0, k as f64 * t);
        }
        sup = sup.max(acc.norm());
    }
    sup
}

/// Sup norms of `d^n/dt^n` of the residual `f - reconstruction`, per sector,
/// for `n <= n_max`; derivatives are taken on the residual's trigonometric
/// interpolant.
pub fn truncation_error(
    f: &SuperFunction,
    table: &CoefficientTable,
    n_max: usize,
) -> Result<Vec<ErrorRow>> {
    let g = f.grid_size as i64;
    if g < 2 * table.max_order + 2 {
        return Err(Error::Undersampled("grid too coarse for the table".into()));
    }
    let mut res0 = Vec::with_capacity(f.grid_size);
    let mut res1 = Vec::with_capacity(f.grid_size);
    for j in 0..f.grid_size {
        let t = 2.0 * PI * j as f64 / f.grid_size as f64;
        let (r0, r1) = table.reconstruct(t);
        res0.push(f.phi0[j] - r0);
        res1.push(f.phi1[j] - r1);
    }
    let spec0 = full_spectrum(&res0);
    let spec1 = full_spectrum(&res1);
    let mut rows = Vec::new();
    for n in 0..=n_max {
        rows.push(ErrorRow { n, sector: 0, sup_error: derivative_sup(&spec0, g, n) });
        rows.push(ErrorRow { n, sector: 1, sup_error: derivative_sup(&spec1, g, n) });
    }
    Ok(rows)
}

/// Mean-square grid energy of `phi0` minus the captured coefficient energy;
/// nonnegative up to roundoff and non-increasing in `M`.
pub fn parseval_gap(f: &SuperFunction, table: &CoefficientTable) -> f64 {
    let energy: f64 =
        f.phi0.iter().map(|v| v.norm_sqr()).sum::<f64>() / f.grid_size as f64;
    let captured: f64 = table.a.values().map(|c| c.norm_sqr()).sum();
    energy - captured
}

/// Which component of a representation the coefficient reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    Even,
    Odd,
}

/// Which representation the coefficient comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffSource {
    Weight(i64),
    PiMinus,
    Trivial,
}

/// The matrix coefficient as a superfunction: for weight `m`, the even
/// selector gives `phi0 = chi_m`, the odd one `phi1 = sqrt(-m) chi_m`; the
/// `pi_minus` odd coefficient is the constant 1.
pub fn matrix_coefficient(
    source: CoeffSource,
    which: Selector,
    grid_size: usize,
    branch: Branch,
) -> Result<SuperFunction> {
    let zero = |_t: f64| Complex64::new(0.0, 0.0);
    match (source, which) {
        (CoeffSource::Weight(0), _) => Err(Error::UseTrivialOrPiMinus),
        (CoeffSource::Weight(m), Selector::Even) => SuperFunction::from_closures(
            grid_size,
            move |t| Complex64::from_polar(1.0, m as f64 * t),
            zero,
        ),
        (CoeffSource::Weight(m), Selector::Odd) => {
            let s = branch.factor(m);
            SuperFunction::from_closures(grid_size, zero, move |t| {
                s * Complex64::from_polar(1.0, m as f64 * t)
            })
        }
        (CoeffSource::PiMinus, Selector::Odd) => {
            SuperFunction::from_closures(grid_size, zero, |_t| Complex64::new(1.0, 0.0))
        }
        (CoeffSource::PiMinus, Selector::Even) => Err(Error::Unsupported(
            "pi_minus contributes only an odd coefficient".into(),
        )),
        (CoeffSource::Trivial, Selector::Even) => {
            SuperFunction::from_closures(grid_size, |_t| Complex64::new(1.0, 0.0), zero)
        }
        (CoeffSource::Trivial, Selector::Odd) => Err(Error::Unsupported(
            "the trivial representation has no odd coefficient".into(),
        )),
    }
}

/// Named built-in superfunctions for the command line.
pub fn catalog(name: &str, grid_size: usize) -> Result<SuperFunction> {
    match name {
        "2cos" => SuperFunction::from_closures(
            grid_size,
            |t| Complex64::new(2.0 * t.cos(), 0.0),
            |_t| Complex64::new(0.0, 0.0),
        ),
        "expcos" => SuperFunction::from_closures(
            grid_size,
            |t| Complex64::new(t.cos().exp(), 0.0),
            |t| Complex64::new(t.sin().exp(), 0.0),
        ),
        "odd_const" => SuperFunction::from_closures(
            grid_size,
            |_t| Complex64::new(0.0, 0.0),
            |_t| Complex64::new(1.0, 0.0),
        ),
        "abs_sin_cubed" => SuperFunction::from_closures(
            grid_size,
            |_t| Complex64::new(0.0, 0.0),
            |t| Complex64::new(t.sin().abs().powi(3), 0.0),
        ),
        _ => Err(Error::Parse(format!("unknown catalog entry: {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(a: Complex64, b: Complex64, eps: f64) -> bool {
        (a - b).norm() <= eps
    }

    #[test]
    fn branch_factors() {
        assert!(near(Branch::Default.factor(1), Complex64::new(0.0, 1.0), 1e-15));
        assert!(near(Branch::Default.factor(-4), Complex64::new(2.0, 0.0), 1e-15));
        assert!(near(Branch::Default.factor(4), Complex64::new(0.0, 2.0), 1e-15));
        assert!(near(Branch::CompatSqrtM.factor(4), Complex64::new(2.0, 0.0), 1e-15));
    }

    #[test]
    fn trig_polynomial_round_trip() {
        let f = catalog("2cos", 16).unwrap();
        let table = expand(&f, 1, Branch::Default).unwrap();
        assert!(near(table.a[&1], Complex64::new(1.0, 0.0), 1e-12));
        assert!(near(table.a[&-1], Complex64::new(1.0, 0.0), 1e-12));
        assert!(table.b.values().all(|c| c.norm() < 1e-12));
        let rows = truncation_error(&f, &table, 2).unwrap();
        assert!(rows.iter().all(|r| r.sup_error < 1e-11));
    }

    #[test]
    fn odd_constant_is_pure_pi_minus() {
        let f = catalog("odd_const", 16).unwrap();
        let table = expand(&f, 4, Branch::Default).unwrap();
        assert!(near(table.b[&0], Complex64::new(1.0, 0.0), 1e-13));
        for (m, c) in &table.b {
            if *m != 0 {
                assert!(c.norm() < 1e-13);
            }
        }
        assert!(table.a.values().all(|c| c.norm() < 1e-13));
    }

    #[test]
    fn odd_sector_branch_division() {
        // f = (0, e^{2it}): b_2 = 1/sqrt(-2), exact reconstruction at M >= 2
        let f = SuperFunction::from_closures(
            16,
            |_t| Complex64::new(0.0, 0.0),
            |t| Complex64::from_polar(1.0, 2.0 * t),
        )
        .unwrap();
        let table = expand(&f, 2, Branch::Default).unwrap();
        let expected = Complex64::new(1.0, 0.0) / Branch::Default.factor(2);
        assert!(near(table.b[&2], expected, 1e-12));
        let rows = truncation_error(&f, &table, 1).unwrap();
        assert!(rows.iter().all(|r| r.sup_error < 1e-11));
    }

    #[test]
    fn smooth_error_decay() {
        let mut prev = f64::INFINITY;
        for m in [2i64, 4, 8] {
            let g = default_grid(m).max(64);
            let f = catalog("expcos", g).unwrap();
            let table = expand(&f, m, Branch::Default).unwrap();
            let rows = truncation_error(&f, &table, 0).unwrap();
            let e = rows
                .iter()
                .map(|r| r.sup_error)
                .fold(0.0f64, f64::max);
            assert!(e < prev, "error should shrink with M");
            prev = e;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn parseval_tail() {
        let f = catalog("expcos", 64).unwrap();
        let g4 = parseval_gap(&f, &expand(&f, 4, Branch::Default).unwrap());
        let g8 = parseval_gap(&f, &expand(&f, 8, Branch::Default).unwrap());
        assert!(g4 >= -1e-12 && g8 >= -1e-12);
        assert!(g8 <= g4 + 1e-12);
    }

    #[test]
    fn undersampling_reported() {
        let f = catalog("2cos", 8).unwrap();
        assert!(matches!(
            expand(&f, 4, Branch::Default),
            Err(Error::Undersampled(_))
        ));
    }

    #[test]
    fn coefficient_functions() {
        let f = matrix_coefficient(CoeffSource::Weight(1), Selector::Even, 16, Branch::Default)
            .unwrap();
        assert!(near(f.phi0[4], Complex64::new(0.0, 1.0), 1e-12)); // e^{i pi/2}
        assert!(f.phi1.iter().all(|c| c.norm() == 0.0));
        let f4 = matrix_coefficient(CoeffSource::Weight(4), Selector::Odd, 16, Branch::Default)
            .unwrap();
        // phi1 = 2i e^{4it}; at t=0 that is 2i
        assert!(near(f4.phi1[0], Complex64::new(0.0, 2.0), 1e-12));
        let pm = matrix_coefficient(CoeffSource::PiMinus, Selector::Odd, 8, Branch::Default)
            .unwrap();
        assert!(pm.phi1.iter().all(|c| near(*c, Complex64::new(1.0, 0.0), 1e-15)));
        assert!(matrix_coefficient(CoeffSource::Weight(0), Selector::Even, 8, Branch::Default)
            .is_err());
    }

    #[test]
    fn resample_and_default_grid() {
        assert_eq!(default_grid(16), 64);
        assert_eq!(default_grid(1), 8);
        let f = catalog("expcos", 16).unwrap();
        let f2 = f.resampled(64).unwrap();
        assert_eq!(f2.grid_size, 64);
        let s = SuperFunction::from_samples(f.phi0.clone(), f.phi1.clone()).unwrap();
        assert!(s.resampled(32).is_err());
    }
}

//! Empirical two-sided bound checks: sweep a parameter grid, compute the
//! ratio of the two sides of an inequality, and report its extrema.
//!
//! The checks cover the weighted exponential series bounds
//! `C₁ e^x ≤ S(s, x) ≤ C₂ e^x`, the kernel-remainder integral estimate
//! `∫ |E_m(z w̄)|^p e^{−a|w|²} |w|^b dA(w) ≤ C |z|^b e^{p²|z|²/(4a)}`, the
//! pointwise Fock bound `|f(z)| e^{−|z|²/2} ≤ ‖f‖_{F^p}` with its integrated
//! consequence for `p ≤ 1`, the disk sub-mean-value bound, and the
//! equivalence `‖f‖_{p,m} ≍ Σ_{k<m} |f^{(k)}(0)| + ‖f^{(m)}‖_{F^p}`.
//!
//! Ratios at removable `0/0` points are excluded from the extrema and
//! counted, never replaced by limits.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::entire::EntireFunction;
use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_disk, integrate_plane, AdaptiveGauss, DiskRegion, PlaneQuadrature, Resolution,
};
use crate::spaces::{
    derivative_equivalence_ratio_split, derivative_equivalence_rules, norm, SpaceParams,
};
use crate::special::{ln_abs_kernel, ln_factorial, s_series_scaled};

pub const DEFAULT_SIGMA: f64 = 0.5;
pub const DEFAULT_X_MAX: f64 = 40.0;
/// Relative accuracy requested from the adaptive remainder integral.
pub const ADAPTIVE_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_S_VALUES: [f64; 7] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.5];

/// A named point of a parameter grid; keys are sorted in serialized form.
pub type GridPoint = BTreeMap<String, f64>;

fn point(pairs: &[(&str, f64)]) -> GridPoint {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Extrema of one sub-sweep (one `s`, one function, ...).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEntry {
    pub label: String,
    pub ratio_min: f64,
    pub ratio_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub inequality_id: String,
    pub grid: String,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub argmin: GridPoint,
    pub argmax: GridPoint,
    pub pass: bool,
    pub samples: usize,
    pub excluded: usize,
    pub entries: Vec<BoundEntry>,
    pub seed: Option<u64>,
    pub resolution: Option<Resolution>,
    pub notes: Vec<String>,
}

/// Collects ratios in grid order; the first occurrence wins ties.
#[derive(Debug, Default)]
struct Extrema {
    min: Option<(f64, GridPoint)>,
    max: Option<(f64, GridPoint)>,
    samples: usize,
    excluded: usize,
    entries: Vec<BoundEntry>,
}

impl Extrema {
    fn push(&mut self, ratio: Option<f64>, at: GridPoint) {
        let Some(v) = ratio else {
            self.excluded += 1;
            return;
        };
        self.samples += 1;
        if self.min.as_ref().is_none_or(|(m, _)| v < *m) {
            self.min = Some((v, at.clone()));
        }
        if self.max.as_ref().is_none_or(|(m, _)| v > *m) {
            self.max = Some((v, at));
        }
    }

    fn merge(&mut self, label: String, other: Extrema) {
        if let (Some((lo, _)), Some((hi, _))) = (&other.min, &other.max) {
            self.entries.push(BoundEntry {
                label,
                ratio_min: *lo,
                ratio_max: *hi,
            });
        }
        self.samples += other.samples;
        self.excluded += other.excluded;
        if let Some((v, at)) = other.min {
            if self.min.as_ref().is_none_or(|(m, _)| v < *m) {
                self.min = Some((v, at));
            }
        }
        if let Some((v, at)) = other.max {
            if self.max.as_ref().is_none_or(|(m, _)| v > *m) {
                self.max = Some((v, at));
            }
        }
    }

    fn finish(self, id: &str, grid: String, pass: impl FnOnce(f64, f64) -> bool) -> BoundReport {
        let (ratio_min, argmin) = self.min.unwrap_or((f64::NAN, GridPoint::new()));
        let (ratio_max, argmax) = self.max.unwrap_or((f64::NAN, GridPoint::new()));
        let finite = ratio_min.is_finite() && ratio_max.is_finite();
        BoundReport {
            inequality_id: id.to_string(),
            grid,
            ratio_min,
            ratio_max,
            argmin,
            argmax,
            pass: finite && pass(ratio_min, ratio_max),
            samples: self.samples,
            excluded: self.excluded,
            entries: self.entries,
            seed: None,
            resolution: None,
            notes: Vec::new(),
        }
    }
}

/// Equally spaced grid `start, start+step, ..` up to `end` inclusive.
pub fn linear_grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}

/// Default `x` grid `[σ, 40]` in steps of 0.25.
pub fn default_x_grid(sigma: f64) -> Vec<f64> {
    linear_grid(sigma, DEFAULT_X_MAX, 0.25)
}

/// `count` points spread over `[0, σ]`, starting at 0.
fn near_zero_grid(sigma: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| sigma * i as f64 / count as f64)
        .collect()
}

fn describe_grid(values: &[f64]) -> String {
    match values {
        [] => "empty".into(),
        [v] => format!("{v}"),
        [first, .., last] => format!("{first}..{last} ({} points)", values.len()),
    }
}

fn series_sweep(
    s_values: &[f64],
    x_grid: &[f64],
    extra: impl Fn(f64) -> Vec<f64>,
) -> Result<Extrema> {
    let mut total = Extrema::default();
    for &s in s_values {
        let mut xs: Vec<f64> = extra(s);
        xs.extend_from_slice(x_grid);
        let values: Vec<f64> = xs
            .par_iter()
            .map(|&x| s_series_scaled(s, x))
            .collect::<Result<_>>()?;
        let mut sub = Extrema::default();
        for (&x, &v) in xs.iter().zip(&values) {
            sub.push(Some(v), point(&[("s", s), ("x", x)]));
        }
        total.merge(format!("s = {s}"), sub);
    }
    Ok(total)
}

fn check_series_grid(x_grid: &[f64], sigma: f64) -> Result<()> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("σ must be positive, got {sigma}")));
    }
    if x_grid.iter().any(|&x| !(x >= sigma)) {
        return Err(Error::Domain(format!(
            "every grid point must be ≥ σ = {sigma}"
        )));
    }
    Ok(())
}

/// Upper bound `S(s, x) ≤ C e^x` for `x ≥ σ`: reports the extrema of
/// `S(s, x) e^{−x}`. For `s ≥ 0` the sweep also covers `[0, σ)`.
pub fn check_series_upper(s_values: &[f64], x_grid: &[f64], sigma: f64) -> Result<BoundReport> {
    check_series_grid(x_grid, sigma)?;
    let sweep = series_sweep(s_values, x_grid, |s| {
        if s >= 0.0 {
            near_zero_grid(sigma, 8)
        } else {
            Vec::new()
        }
    })?;
    let grid = format!(
        "s ∈ {s_values:?}; x ∈ {}; σ = {sigma}",
        describe_grid(x_grid)
    );
    Ok(sweep.finish("series-upper-bound", grid, |_, _| true))
}

/// Lower bound `S(s, x) ≥ C e^x` for `x ≥ σ` (and for `x > 0` when
/// `s ≤ 0`): passes when the minimum of `S(s, x) e^{−x}` is positive.
pub fn check_series_lower(s_values: &[f64], x_grid: &[f64], sigma: f64) -> Result<BoundReport> {
    check_series_grid(x_grid, sigma)?;
    let sweep = series_sweep(s_values, x_grid, |s| {
        if s <= 0.0 {
            // x = 0 is outside the series domain for s < 0.
            near_zero_grid(sigma, 8)
                .into_iter()
                .filter(|&x| x > 0.0 || s == 0.0)
                .collect()
        } else {
            Vec::new()
        }
    })?;
    let grid = format!(
        "s ∈ {s_values:?}; x ∈ {}; σ = {sigma}",
        describe_grid(x_grid)
    );
    Ok(sweep.finish("series-lower-bound", grid, |lo, _| lo > 0.0))
}

/// Parameters of the kernel-remainder integral estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderIntegral {
    pub p: f64,
    pub a: f64,
    pub b: f64,
    pub m: usize,
}

impl RemainderIntegral {
    pub fn new(p: f64, a: f64, b: f64, m: usize) -> Result<Self> {
        if !(p > 0.0) || !(a > 0.0) || !p.is_finite() || !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!(
                "need p > 0, a > 0 and finite b (p = {p}, a = {a}, b = {b})"
            )));
        }
        if b <= -(m as f64 * p + 2.0) {
            return Err(Error::Domain(format!(
                "hypothesis violated: b = {b} must exceed −(mp + 2) = {}",
                -(m as f64 * p + 2.0)
            )));
        }
        Ok(Self { p, a, b, m })
    }

    /// Rule absorbing `|w|^{b + mp}` and `e^{−a|w|²}`.
    pub fn rule(&self, resolution: Resolution) -> Result<PlaneQuadrature> {
        resolution.rule(self.a, (self.b + self.m as f64 * self.p) / 2.0)
    }

    fn exponent(&self) -> f64 {
        self.p * self.p / (4.0 * self.a)
    }

    /// `I(z) |z|^{−b} e^{−p²|z|²/(4a)}`; `None` at `z = 0` unless `m = 0` and
    /// `b = 0`, where `I(0) = π/a`.
    pub fn ratio(&self, z: Complex64, rule: &PlaneQuadrature) -> Result<Option<f64>> {
        let (p, m, b) = (self.p, self.m, self.b);
        rule.require_rate(self.a, "the remainder integral")?;
        let alpha = (b + m as f64 * p) / 2.0;
        if (rule.radial_power() - alpha).abs() > 1e-14 {
            return Err(Error::Config(format!(
                "the remainder integral needs radial power {alpha}, got {}",
                rule.radial_power()
            )));
        }
        let r = z.norm();
        if r == 0.0 {
            if m == 0 && b == 0.0 {
                return integrate_plane(rule, |_| 1.0).map(Some);
            }
            return Ok(None);
        }
        // |E_m(z w̄)|^p = |z|^{mp} |w|^{mp} |K_m(z, w)|^p / (m!)^p.
        let offset = (m as f64 * p - b) * r.ln() - self.exponent() * r * r - p * ln_factorial(m);
        let v = integrate_plane(rule, |w| (p * ln_abs_kernel(z, w, m) + offset).exp())?;
        if self.has_smooth_integrand() {
            return Ok(Some(v));
        }
        Ok(Some(self.adaptive_ratio(z, offset, v, rule.resolution())))
    }

    /// `|E_m|^p` is a polynomial in `w, w̄` times `e^{…}` only for even `p`;
    /// otherwise it has kinks at the zeros of `E_m(z w̄)`.
    pub fn has_smooth_integrand(&self) -> bool {
        self.m == 0 || (self.p / 2.0).fract() == 0.0
    }

    /// Polar iterated integral with adaptive Gauss–Legendre panels, whose
    /// orders follow the resolution; `scale` is a rough value of the result.
    fn adaptive_ratio(&self, z: Complex64, offset: f64, scale: f64, resolution: Resolution) -> f64 {
        let (p, m, a) = (self.p, self.m, self.a);
        let power = self.b + m as f64 * p + 1.0;
        let radial = AdaptiveGauss::new(resolution.radial_degree / 4);
        let angular = AdaptiveGauss::new(resolution.angular_count / 8);
        let reach = p * z.norm() / (2.0 * a) + 10.0 / a.sqrt();
        let tolerance = ADAPTIVE_TOLERANCE * scale.abs().max(f64::MIN_POSITIVE);
        let inner_tolerance = 0.1 * tolerance / reach;
        radial.integrate(
            |t| {
                if t == 0.0 {
                    return 0.0;
                }
                let base = offset + power * t.ln() - a * t * t;
                angular.integrate(
                    |theta| (p * ln_abs_kernel(z, Complex64::from_polar(t, theta), m) + base).exp(),
                    0.0,
                    2.0 * PI,
                    &[],
                    inner_tolerance,
                )
            },
            0.0,
            reach,
            &[],
            tolerance,
        )
    }
}

/// Grid of `|z|` radii times a few fixed angles.
pub fn polar_grid(radii: &[f64], angles: usize) -> Vec<Complex64> {
    radii
        .iter()
        .flat_map(|&r| {
            (0..angles)
                .map(move |k| Complex64::from_polar(r, 0.3 + 2.0 * PI * k as f64 / angles as f64))
        })
        .collect()
}

/// Kernel-remainder integral estimate over `z_grid`. Points with
/// `|z| < σ` are kept only when `b ≤ pm`; removable points at `z = 0`
/// are excluded.
pub fn check_remainder_integral(
    integral: RemainderIntegral,
    z_grid: &[Complex64],
    sigma: f64,
    resolution: Resolution,
) -> Result<BoundReport> {
    let rule = integral.rule(resolution)?;
    let keep_small = integral.b <= integral.p * integral.m as f64;
    let kept: Vec<Complex64> = z_grid
        .iter()
        .copied()
        .filter(|z| keep_small || z.norm() >= sigma)
        .collect();
    let dropped = z_grid.len() - kept.len();
    let values: Vec<Option<f64>> = kept
        .par_iter()
        .map(|&z| integral.ratio(z, &rule))
        .collect::<Result<_>>()?;
    let mut ext = Extrema::default();
    for (z, v) in kept.iter().zip(values) {
        ext.push(v, point(&[("re_z", z.re), ("im_z", z.im)]));
    }
    let RemainderIntegral { p, a, b, m } = integral;
    let grid = format!(
        "p = {p}, a = {a}, b = {b}, m = {m}; {} points with |z| in [{}, {}]; σ = {sigma}",
        kept.len(),
        kept.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min),
        kept.iter().map(|z| z.norm()).fold(0.0, f64::max),
    );
    let mut report = ext.finish("remainder-integral", grid, |_, _| true);
    report.resolution = Some(resolution);
    if dropped > 0 {
        report
            .notes
            .push(format!("{dropped} points with |z| < σ skipped (b > pm)"));
    }
    Ok(report)
}

/// Random polynomials: degree uniform in `0..=degree_cap`, coefficients
/// standard complex Gaussian (real and imaginary parts `N(0, 1/2)`).
pub fn random_family(seed: u64, count: usize, degree_cap: usize) -> Vec<EntireFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid normal");
    (0..count)
        .map(|_| loop {
            let degree = rng.random_range(0..=degree_cap);
            let coeffs: Vec<Complex64> = (0..=degree)
                .map(|_| Complex64::new(normal.sample(&mut rng), normal.sample(&mut rng)))
                .collect();
            let f = EntireFunction::new(coeffs);
            if !f.is_zero() {
                break f;
            }
        })
        .collect()
}

/// Pointwise bound `|f(z)| e^{−|z|²/2} ≤ ‖f‖_{F^p}` over a family and grid;
/// passes when the largest ratio is at most `1 + tolerance`. For `p ≤ 1`
/// also reports `∫|f| e^{−|z|²/2} dA / (∫|f e^{−|z|²/2}|^p dA)^{1/p}`
/// against the constant `(2π/p)(p/2π)^{1/p}` that the pointwise bound
/// implies.
pub fn check_pointwise_bound(
    family: &[EntireFunction],
    p: f64,
    z_grid: &[Complex64],
    resolution: Resolution,
    tolerance: f64,
) -> Result<BoundReport> {
    let params = SpaceParams::new(p, 0)?;
    if params.is_infinite() {
        return Err(Error::Domain(
            "the pointwise bound is checked for finite p".into(),
        ));
    }
    let rule = resolution.rule(p / 2.0, 0.0)?;
    let norms: Vec<f64> = family
        .iter()
        .map(|f| norm(f, params, &rule))
        .collect::<Result<_>>()?;
    let mut ext = Extrema::default();
    for (i, (f, &n)) in family.iter().zip(&norms).enumerate() {
        let mut sub = Extrema::default();
        for z in z_grid {
            let lhs = f.evaluate(*z).norm() * (-z.norm_sqr() / 2.0).exp();
            let ratio = (n > 0.0).then(|| lhs / n);
            sub.push(
                ratio,
                point(&[("f", i as f64), ("re_z", z.re), ("im_z", z.im)]),
            );
        }
        ext.merge(format!("f#{i}"), sub);
    }
    let grid = format!(
        "{} functions × {} points; p = {p}",
        family.len(),
        z_grid.len()
    );
    let mut report = ext.finish("pointwise-fock-bound", grid, |_, hi| hi <= 1.0 + tolerance);
    report.resolution = Some(resolution);
    if p <= 1.0 {
        let l1_rule = resolution.rule(0.5, 0.0)?;
        let mut worst = 0.0f64;
        for (f, &n) in family.iter().zip(&norms) {
            let l1: f64 = integrate_plane(&l1_rule, |z| f.evaluate(z).norm())?;
            // ∫|f e^{−|z|²/2}|^p dA = (2π/p) ‖f‖_p^p.
            let lp = (2.0 * PI / p * n.powf(p)).powf(1.0 / p);
            worst = worst.max(l1 / lp);
        }
        let bound = (2.0 * PI / p) * (p / (2.0 * PI)).powf(1.0 / p);
        report.notes.push(format!(
            "L1/Lp ratio max = {worst:.6e}, implied bound = {bound:.6e}"
        ));
        report.pass &= worst <= bound * (1.0 + tolerance);
        report.entries.push(BoundEntry {
            label: "integrated L1/Lp".into(),
            ratio_min: worst,
            ratio_max: bound,
        });
    }
    Ok(report)
}

/// Sub-mean-value bound `|f(z) e^{−|z|²/2}|^p ≤ C ∫_{B(z,t)} |f e^{−|w|²/2}|^p dA`.
pub fn check_disk_mean_value(
    family: &[EntireFunction],
    p: f64,
    t: f64,
    z_grid: &[Complex64],
    node_budget: usize,
) -> Result<BoundReport> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!("need finite p > 0, got {p}")));
    }
    let mut ext = Extrema::default();
    for (i, f) in family.iter().enumerate() {
        let mut sub = Extrema::default();
        if f.is_zero() {
            sub.push(None, point(&[("f", i as f64)]));
            ext.merge(format!("f#{i}"), sub);
            continue;
        }
        for &z in z_grid {
            let lhs = (f.evaluate(z).norm() * (-z.norm_sqr() / 2.0).exp()).powf(p);
            let disk = DiskRegion::new(z, t)?;
            let rhs: f64 = integrate_disk(
                &disk,
                |w| (f.evaluate(w).norm() * (-w.norm_sqr() / 2.0).exp()).powf(p),
                node_budget,
            )?;
            let ratio = (rhs > 0.0).then(|| lhs / rhs);
            sub.push(
                ratio,
                point(&[("f", i as f64), ("re_z", z.re), ("im_z", z.im)]),
            );
        }
        ext.merge(format!("f#{i}"), sub);
    }
    let grid = format!(
        "{} functions × {} points; p = {p}, t = {t}, disk nodes = {node_budget}",
        family.len(),
        z_grid.len()
    );
    Ok(ext.finish("disk-sub-mean-value", grid, |_, _| true))
}

/// Extrema of the equivalence ratio over a family.
pub fn check_derivative_equivalence(
    family: &[EntireFunction],
    params: SpaceParams,
    resolution: Resolution,
) -> Result<BoundReport> {
    let (num_rule, den_rule) = derivative_equivalence_rules(params, resolution)?;
    let ratios: Vec<f64> = family
        .par_iter()
        .map(|f| derivative_equivalence_ratio_split(f, params, &num_rule, &den_rule))
        .collect::<Result<_>>()?;
    let mut ext = Extrema::default();
    for (i, &r) in ratios.iter().enumerate() {
        ext.push(Some(r), point(&[("f", i as f64)]));
    }
    let grid = format!(
        "{} functions; p = {}, m = {}",
        family.len(),
        params.p,
        params.m
    );
    let mut report = ext.finish("derivative-norm-equivalence", grid, |lo, _| lo > 0.0);
    report.resolution = Some(resolution);
    Ok(report)
}

/// Relative growth of the width `max − min` of a ratio band when passing
/// from `narrow` to `wide`.
pub fn band_widening(narrow: (f64, f64), wide: (f64, f64)) -> f64 {
    (wide.1 - wide.0) / (narrow.1 - narrow.0) - 1.0
}

/// The larger of the relative growth of the upper end and of the inverse
/// lower end of a ratio band.
pub fn endpoint_widening(narrow: (f64, f64), wide: (f64, f64)) -> f64 {
    (wide.1 / narrow.1 - 1.0).max(narrow.0 / wide.0 - 1.0)
}

//! The projection `Q_m` and the integral representations of `f^{(m)}` and
//! of `f − f_m` as discretized integral operators.
//!
//! Every exponential kernel inside these integrals is truncated to a
//! polynomial whose degree is taken from the data, so the integrand handed
//! to quadrature is a polynomial in `w` and `w̄` and the rule's moment
//! exactness applies.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::entire::EntireFunction;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_plane, PlaneQuadrature};
use crate::special::factorial;

/// Guard terms added to the data degree when choosing a kernel truncation.
pub const KERNEL_GUARD_TERMS: usize = 4;

/// Default truncation degree `degree(f) + m + 4`.
pub fn default_kernel_degree(f: &EntireFunction, m: usize) -> usize {
    f.degree().unwrap_or(0) + m + KERNEL_GUARD_TERMS
}

/// `∫ g(w) |w|^{2·power} e^{−|w|²} dA` on a rate-1 rule of any radial power.
fn integrate_unit_gaussian<G>(
    rule: &PlaneQuadrature,
    power: f64,
    what: &str,
    g: G,
) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64 + Sync,
{
    rule.require_rate(1.0, what)?;
    let exponent = 2.0 * (power - rule.radial_power());
    if exponent == 0.0 {
        integrate_plane(rule, g)
    } else {
        integrate_plane(rule, |w| g(w) * w.norm().powf(exponent))
    }
}

/// `Σ_k c_k x^k` by Horner.
fn truncated_kernel_series(x: Complex64, coeffs: &[f64]) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// `c_k = m!/(k+m)!` for `k ≤ degree`, as a running product.
fn kernel_coefficients(m: usize, degree: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(degree + 1);
    let mut c = 1.0;
    for k in 0..=degree {
        if k > 0 {
            c /= (k + m) as f64;
        }
        out.push(c);
    }
    out
}

/// `Q_m g(z) = 1/(m!π) ∫ g(w) K_m(z, w) e^{−|w|²} |w|^{2m} dA(w)` with
/// `K_m` truncated to degree `kernel_degree` in `z w̄`.
pub fn project<G>(
    g: G,
    m: usize,
    z: Complex64,
    rule: &PlaneQuadrature,
    kernel_degree: usize,
) -> Result<Complex64>
where
    G: Fn(Complex64) -> Complex64 + Sync,
{
    let coeffs = kernel_coefficients(m, kernel_degree);
    let integral = integrate_unit_gaussian(rule, m as f64, "the projection", |w| {
        g(w) * truncated_kernel_series(z * w.conj(), &coeffs)
    })?;
    Ok(integral / (factorial(m) * PI))
}

/// `Q_m g` as a polynomial of degree `kernel_degree`: the coefficient of
/// `z^k` is `m!/(k+m)! ⟨g, z^k⟩_m`.
pub fn project_polynomial<G>(
    g: G,
    m: usize,
    kernel_degree: usize,
    rule: &PlaneQuadrature,
) -> Result<EntireFunction>
where
    G: Fn(Complex64) -> Complex64 + Sync,
{
    let coeffs = kernel_coefficients(m, kernel_degree);
    let values: Vec<Complex64> = (0..=kernel_degree)
        .map(|k| {
            integrate_unit_gaussian(rule, m as f64, "the projection", |w| {
                g(w) * w.conj().powu(k as u32)
            })
            .map(|v| v * coeffs[k] / (factorial(m) * PI))
        })
        .collect::<Result<_>>()?;
    Ok(EntireFunction::new(values))
}

/// `f^{(m)}(z) = 1/π ∫ e^{z w̄} w̄^m f(w) e^{−|w|²} dA(w)` with `e^{z w̄}`
/// truncated to degree `T` (default `degree(f) + m + 4`).
pub fn derivative_via_projection(
    f: &EntireFunction,
    m: usize,
    z: Complex64,
    rule: &PlaneQuadrature,
    truncation: Option<usize>,
) -> Result<Complex64> {
    let t = checked_truncation(f, m, truncation)?;
    let coeffs = kernel_coefficients(0, t);
    let integral = integrate_unit_gaussian(rule, 0.0, "the derivative representation", |w| {
        let wc = w.conj();
        truncated_kernel_series(z * wc, &coeffs) * wc.powu(m as u32) * f.evaluate(w)
    })?;
    Ok(integral / PI)
}

/// `f(z) − f_m(z) = 1/π ∫ Σ_k z^{k+m} w̄^k/(k+m)! f^{(m)}(w) e^{−|w|²} dA(w)`
/// given `fm_deriv = f^{(m)}`, with the sum truncated at `k ≤ T` (default
/// `degree(f^{(m)}) + m + 4`).
pub fn remainder_via_kernel(
    fm_deriv: &EntireFunction,
    m: usize,
    z: Complex64,
    rule: &PlaneQuadrature,
    truncation: Option<usize>,
) -> Result<Complex64> {
    if fm_deriv.is_zero() {
        rule.require_rate(1.0, "the remainder representation")?;
        return Ok(Complex64::new(0.0, 0.0));
    }
    let t = checked_truncation(fm_deriv, m, truncation)?;
    let scale = z.powu(m as u32) / factorial(m);
    let coeffs = kernel_coefficients(m, t);
    let integral = integrate_unit_gaussian(rule, 0.0, "the remainder representation", |w| {
        truncated_kernel_series(z * w.conj(), &coeffs) * fm_deriv.evaluate(w)
    })?;
    Ok(scale * integral / PI)
}

fn checked_truncation(f: &EntireFunction, m: usize, truncation: Option<usize>) -> Result<usize> {
    let needed = f.degree().unwrap_or(0) + m;
    match truncation {
        Some(t) if t < needed => Err(Error::Config(format!(
            "kernel truncation degree {t} is below degree(f) + m = {needed}"
        ))),
        Some(t) => Ok(t),
        None => Ok(default_kernel_degree(f, m)),
    }
}

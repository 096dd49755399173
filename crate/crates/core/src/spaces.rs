//! Norms of `F^p`, `F^{p,m}` and `L^p_m`, the normalizing constant
//! `c(p, m)`, and the pairing `⟨f, g⟩_m`.
//!
//! For `p < ∞`, `‖f‖_{p,m}^p = c(p,m) ∫ |z^m f(z) e^{−|z|²/2}|^p dA` with
//! `c(p,m) = (p/2)^{mp/2+1} / (π Γ(mp/2+1))`, so that `‖1‖_{p,m} = 1`.
//! For `p = ∞`, `‖f‖_{∞,m} = sup |z^m f(z)| e^{−|z|²/2}`. The case `m = 0` is
//! the Fock space `F^p` with `c(p,0) = p/(2π)`. Every norm is returned as a
//! norm, never as its `p`-th power.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::entire::EntireFunction;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_plane, PlaneQuadrature, Resolution};
use crate::special::factorial;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SpaceParams {
    /// Exponent `0 < p ≤ ∞`.
    pub p: f64,
    /// Sobolev order.
    pub m: usize,
}

impl SpaceParams {
    pub fn new(p: f64, m: usize) -> Result<Self> {
        if !(p > 0.0) {
            return Err(Error::Domain(format!(
                "exponent p must be positive, got {p}"
            )));
        }
        Ok(Self { p, m })
    }

    pub fn is_infinite(&self) -> bool {
        self.p.is_infinite()
    }

    /// `mp`, the growth exponent of the Carleson condition.
    pub fn mp(&self) -> f64 {
        self.m as f64 * self.p
    }

    /// Rule matched to the norm integral: rate `p/2`, radial factor
    /// `|z|^{mp}` built in.
    pub fn norm_rule(&self, resolution: Resolution) -> Result<PlaneQuadrature> {
        self.require_finite("a norm quadrature rule")?;
        resolution.rule(self.p / 2.0, self.mp() / 2.0)
    }

    fn require_finite(&self, what: &str) -> Result<()> {
        if self.is_infinite() {
            return Err(Error::Domain(format!("{what} is not defined for p = ∞")));
        }
        Ok(())
    }
}

/// `c(p, m)`, the constant giving the function 1 unit norm.
pub fn normalizer(params: SpaceParams) -> Result<f64> {
    params.require_finite("the normalizing constant")?;
    Ok(ln_normalizer(params.p, params.m).exp())
}

fn ln_normalizer(p: f64, m: usize) -> f64 {
    let h = m as f64 * p / 2.0;
    (h + 1.0) * (p / 2.0).ln() - PI.ln() - ln_gamma(h + 1.0)
}

/// `‖g‖_{L^p_m}` for a plane function given through its modulus `|g|`.
///
/// The rule must have rate `p/2`; its radial power `α` is compensated by
/// evaluating `|g|^p |z|^{mp − 2α}` at the nodes.
pub fn lp_norm<G>(abs_g: G, params: SpaceParams, rule: &PlaneQuadrature) -> Result<f64>
where
    G: Fn(Complex64) -> f64 + Sync,
{
    params.require_finite("the quadrature norm")?;
    rule.require_rate(params.p / 2.0, "the (p, m) norm")?;
    let p = params.p;
    let power = params.mp() - 2.0 * rule.radial_power();
    let integral: f64 = if power == 0.0 {
        integrate_plane(rule, |z| abs_g(z).powf(p))?
    } else {
        integrate_plane(rule, |z| abs_g(z).powf(p) * z.norm().powf(power))?
    };
    Ok((ln_normalizer(p, params.m).exp() * integral).powf(1.0 / p))
}

/// `‖f‖_{p,m}`. For `p = ∞` the rule is ignored and the supremum is found
/// by [`sup_norm`].
pub fn norm(f: &EntireFunction, params: SpaceParams, rule: &PlaneQuadrature) -> Result<f64> {
    if params.is_infinite() {
        return Ok(sup_norm(f, params.m));
    }
    lp_norm(|z| f.evaluate(z).norm(), params, rule)
}

/// `sup_z |z^m f(z)| e^{−|z|²/2}` by a polar grid search on radii up to
/// `√(2(d+m)) + 10` followed by alternating golden-section refinement in
/// radius and angle around the best grid points.
pub fn sup_norm(f: &EntireFunction, m: usize) -> f64 {
    let Some(d) = f.degree() else {
        return 0.0;
    };
    let h = |z: Complex64| {
        let r2 = z.norm_sqr();
        f.evaluate(z).norm() * r2.sqrt().powi(m as i32) * (-0.5 * r2).exp()
    };
    let radius = (2.0 * (d + m) as f64).sqrt() + 10.0;
    let n_r = 200;
    let n_theta = (4 * (d + m) + 64).max(64);
    let dr = radius / n_r as f64;
    let dtheta = 2.0 * PI / n_theta as f64;

    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity((n_r + 1) * n_theta);
    for i in 0..=n_r {
        let r = i as f64 * dr;
        for j in 0..n_theta {
            let theta = j as f64 * dtheta;
            grid.push((h(Complex64::from_polar(r, theta)), r, theta));
        }
    }
    grid.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
    });
    let mut best = grid[0].0;
    for &(v, r0, t0) in grid.iter().take(8) {
        let (mut r, mut t, mut value) = (r0, t0, v);
        for _ in 0..6 {
            let (rr, vr) = golden_max(
                |s| h(Complex64::from_polar(s, t)),
                (r - dr).max(0.0),
                r + dr,
            );
            if vr > value {
                r = rr;
                value = vr;
            }
            let (tt, vt) = golden_max(|s| h(Complex64::from_polar(r, s)), t - dtheta, t + dtheta);
            if vt > value {
                t = tt;
                value = vt;
            }
        }
        best = best.max(value);
    }
    best
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `⟨f, g⟩_m = 1/(m!π) ∫ f(z) conj(g(z)) e^{−|z|²} |z|^{2m} dA`.
pub fn pairing(
    f: &EntireFunction,
    g: &EntireFunction,
    m: usize,
    rule: &PlaneQuadrature,
) -> Result<Complex64> {
    pairing_with(|z| f.evaluate(z), |z| g.evaluate(z), m, rule)
}

/// The pairing for arbitrary plane functions.
pub fn pairing_with<F, G>(f: F, g: G, m: usize, rule: &PlaneQuadrature) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
    G: Fn(Complex64) -> Complex64 + Sync,
{
    rule.require_rate(1.0, "the pairing")?;
    let power = 2.0 * (m as f64 - rule.radial_power());
    let integral: Complex64 = if power == 0.0 {
        integrate_plane(rule, |z| f(z) * g(z).conj())?
    } else {
        integrate_plane(rule, |z| f(z) * g(z).conj() * z.norm().powf(power))?
    };
    Ok(integral / (factorial(m) * PI))
}

/// Constant `C` with `|⟨f, g⟩_m| ≤ C ‖f‖_{p,m} ‖g‖_{q,m}`, `1/p + 1/q = 1`,
/// obtained from Hölder's inequality and the normalizing constants:
/// `C = c(p,m)^{−1/p} c(q,m)^{−1/q} / (m!π)`, with the `q = ∞` factor 1.
pub fn holder_constant(p: f64, m: usize) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!(
            "Hölder pairing bound needs p ≥ 1, got {p}"
        )));
    }
    let factor = |e: f64| {
        if e.is_infinite() {
            0.0
        } else {
            -ln_normalizer(e, m) / e
        }
    };
    let q = conjugate_exponent(p);
    Ok((factor(p) + factor(q)).exp() / (factorial(m) * PI))
}

pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// `Σ_{k<m} |f^{(k)}(0)| + ‖f^{(m)}‖_{F^p}`.
pub fn derivative_equivalence_denominator(
    f: &EntireFunction,
    params: SpaceParams,
    rule: &PlaneQuadrature,
) -> Result<f64> {
    let head: f64 = (0..params.m).map(|k| f.derivative_at_zero(k).norm()).sum();
    let deriv = f.derivative(params.m);
    let tail = if deriv.is_zero() {
        0.0
    } else {
        norm(&deriv, SpaceParams::new(params.p, 0)?, rule)?
    };
    Ok(head + tail)
}

/// `‖f‖_{p,m} / (Σ_{k<m} |f^{(k)}(0)| + ‖f^{(m)}‖_{F^p})` with one rule
/// for both norms.
pub fn derivative_equivalence_ratio(
    f: &EntireFunction,
    params: SpaceParams,
    rule: &PlaneQuadrature,
) -> Result<f64> {
    derivative_equivalence_ratio_split(f, params, rule, rule)
}

/// As [`derivative_equivalence_ratio`], with separate rules for the `(p, m)` numerator
/// and the `F^p` denominator (each may carry its own radial factor).
pub fn derivative_equivalence_ratio_split(
    f: &EntireFunction,
    params: SpaceParams,
    numerator_rule: &PlaneQuadrature,
    denominator_rule: &PlaneQuadrature,
) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::Domain(
            "the equivalence ratio is undefined for the zero function".into(),
        ));
    }
    if params.m == 0 {
        return Err(Error::Domain("the equivalence ratio needs m ≥ 1".into()));
    }
    params.require_finite("the equivalence ratio")?;
    let numerator = norm(f, params, numerator_rule)?;
    let denominator = derivative_equivalence_denominator(f, params, denominator_rule)?;
    Ok(numerator / denominator)
}

/// The pair of rules [`derivative_equivalence_ratio_split`] uses by default: the
/// numerator rule carries `|z|^{mp}`, the denominator rule none.
pub fn derivative_equivalence_rules(
    params: SpaceParams,
    resolution: Resolution,
) -> Result<(PlaneQuadrature, PlaneQuadrature)> {
    Ok((
        params.norm_rule(resolution)?,
        resolution.rule(params.p / 2.0, 0.0)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::basis;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(p: f64, m: usize) -> SpaceParams {
        SpaceParams::new(p, m).unwrap()
    }

    fn plain_rule(c: f64) -> PlaneQuadrature {
        Resolution::default().rule(c, 0.0).unwrap()
    }

    #[test]
    fn normalizer_examples() {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-14 * b;
        assert!(close(normalizer(params(2.0, 0)).unwrap(), 1.0 / PI));
        assert!(close(normalizer(params(2.0, 1)).unwrap(), 1.0 / PI));
        assert!(close(normalizer(params(1.0, 2)).unwrap(), 1.0 / (4.0 * PI)));
        assert!(matches!(
            normalizer(params(f64::INFINITY, 0)),
            Err(Error::Domain(_))
        ));
        assert!(SpaceParams::new(0.0, 1).is_err());
    }

    #[test]
    fn constant_has_unit_norm() {
        let one = EntireFunction::constant(c(1.0, 0.0));
        for &p in &[0.5, 1.0, 2.0, 3.0, 4.0] {
            for m in 0..=3 {
                let sp = params(p, m);
                let n = norm(&one, sp, &sp.norm_rule(Resolution::default()).unwrap()).unwrap();
                assert!((n - 1.0).abs() < 1e-12, "p={p} m={m}: {n}");
                if (p * m as f64) % 2.0 == 0.0 {
                    let n = norm(&one, sp, &plain_rule(p / 2.0)).unwrap();
                    assert!((n - 1.0).abs() < 1e-12);
                }
            }
        }
        assert_eq!(
            norm(&one, params(f64::INFINITY, 0), &plain_rule(1.0)).unwrap(),
            1.0
        );
    }

    #[test]
    fn monomial_norm() {
        let z = EntireFunction::monomial(1, c(1.0, 0.0));
        let n = norm(&z, params(2.0, 1), &plain_rule(1.0)).unwrap();
        assert!((n - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rate_mismatch_is_a_configuration_error() {
        let one = EntireFunction::constant(c(1.0, 0.0));
        assert!(matches!(
            norm(&one, params(2.0, 0), &plain_rule(2.0)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            pairing(&one, &one, 0, &plain_rule(0.5)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn sup_norm_of_monomials() {
        // sup r^k e^{−r²/2} = (k/e)^{k/2}, attained at r = √k.
        for k in 1..=8usize {
            let f = EntireFunction::monomial(k, c(1.0, 0.0));
            let exact = (k as f64 / std::f64::consts::E).powf(k as f64 / 2.0);
            assert!((sup_norm(&f, 0) - exact).abs() < 1e-12 * exact);
            assert!(
                (sup_norm(&EntireFunction::constant(c(1.0, 0.0)), k) - exact).abs() < 1e-12 * exact
            );
        }
    }

    #[test]
    fn pairing_examples() {
        let rule = plain_rule(1.0);
        let one = EntireFunction::constant(c(1.0, 0.0));
        for m in 0..5 {
            assert!((pairing(&one, &one, m, &rule).unwrap() - 1.0).norm() < 1e-13);
        }
        let z2 = EntireFunction::monomial(2, c(1.0, 0.0));
        let z3 = EntireFunction::monomial(3, c(1.0, 0.0));
        assert!(pairing(&z2, &z3, 1, &rule).unwrap().norm() < 1e-14);
    }

    #[test]
    fn basis_is_orthonormal_and_unit_norm() {
        let rule = plain_rule(1.0);
        for m in 0..=3 {
            for i in 0..=8 {
                let ei = basis(i, m).unwrap();
                for j in 0..=8 {
                    let ej = basis(j, m).unwrap();
                    let v = pairing(&ei, &ej, m, &rule).unwrap();
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((v - target).norm() < 1e-12);
                }
            }
        }
        for m in 0..=4 {
            for n in 0..=12 {
                let v = norm(&basis(n, m).unwrap(), params(2.0, m), &rule).unwrap();
                assert!((v - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pairing_reproduces_point_values() {
        let rule = plain_rule(1.0);
        let f = EntireFunction::new(
            (0..=12)
                .map(|k| c(1.0 / (k + 1) as f64, 0.3 * k as f64 - 1.0))
                .collect(),
        );
        for m in 0..=3 {
            for &w in &[c(0.0, 0.0), c(1.0, -2.0), c(-2.5, 1.5), c(0.0, 3.0)] {
                let k = crate::special::kernel_polynomial(w, m, 12);
                let got = pairing(&f, &k, m, &rule).unwrap();
                let want = f.evaluate(w);
                assert!((got - want).norm() <= 1e-8 * want.norm().max(1.0));
            }
        }
    }

    #[test]
    fn derivative_equivalence_examples() {
        let rule = plain_rule(1.0);
        let one = EntireFunction::constant(c(1.0, 0.0));
        let z = EntireFunction::monomial(1, c(1.0, 0.0));
        assert!(
            (derivative_equivalence_ratio(&one, params(2.0, 1), &rule).unwrap() - 1.0).abs()
                < 1e-13
        );
        assert!(
            (derivative_equivalence_ratio(&z, params(2.0, 1), &rule).unwrap() - 2f64.sqrt()).abs()
                < 1e-13
        );
        assert!(matches!(
            derivative_equivalence_ratio(&EntireFunction::zero(), params(2.0, 1), &rule),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn holder_constant_at_p_two() {
        // c(2,m) = 1/(π m!), so C = π m!/(m! π) = 1: Cauchy–Schwarz.
        for m in 0..4 {
            let h = holder_constant(2.0, m).unwrap();
            assert!((h - 1.0).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn holder_bound_holds(
            a in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..6),
            b in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..6),
            m in 0usize..3,
            pi in 0usize..3,
        ) {
            let p = [1.5, 2.0, 4.0][pi];
            let q = conjugate_exponent(p);
            let f = EntireFunction::new(a.into_iter().map(|(x, y)| c(x, y)).collect());
            let g = EntireFunction::new(b.into_iter().map(|(x, y)| c(x, y)).collect());
            prop_assume!(!f.is_zero() && !g.is_zero());
            let res = Resolution::default();
            let fp = norm(&f, params(p, m), &res.rule(p / 2.0, 0.0).unwrap()).unwrap();
            let gq = norm(&g, params(q, m), &res.rule(q / 2.0, 0.0).unwrap()).unwrap();
            let pair = pairing(&f, &g, m, &res.rule(1.0, 0.0).unwrap()).unwrap();
            prop_assert!(pair.norm() <= holder_constant(p, m).unwrap() * fp * gq * (1.0 + 1e-6));
        }
    }
}

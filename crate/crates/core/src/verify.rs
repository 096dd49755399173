//! Verification suites. Each check returns one [`Record`]; a suite is a
//! fixed sequence of checks, so its report is a pure function of the
//! configuration.

use std::f64::consts::{E, PI, SQRT_2};
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::Config;
use crate::entire::EntireFunction;
use crate::error::{Error, Result};
use crate::inequality::{
    band_widening, check_derivative_equivalence, check_disk_mean_value, check_pointwise_bound,
    check_remainder_integral, check_series_lower, check_series_upper, default_x_grid,
    endpoint_widening, linear_grid, polar_grid, random_family, RemainderIntegral, DEFAULT_S_VALUES,
};
use crate::projection::{
    derivative_via_projection, project, project_polynomial, remainder_via_kernel,
    KERNEL_GUARD_TERMS,
};
use crate::quadrature::Resolution;
use crate::report::{Record, Report};
use crate::spaces::{
    conjugate_exponent, derivative_equivalence_ratio_split, derivative_equivalence_rules,
    holder_constant, lp_norm, norm, pairing, SpaceParams,
};
use crate::special::{
    basis, kernel, kernel_closed_form, kernel_polynomial, kernel_series_reference, s_series_scaled,
};

pub const SUITE_NAMES: [&str; 5] = ["kernel", "norms", "projection", "inequalities", "all"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Kernel,
    Norms,
    Projection,
    Inequalities,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Kernel => "kernel",
            Suite::Norms => "norms",
            Suite::Projection => "projection",
            Suite::Inequalities => "inequalities",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kernel" => Ok(Suite::Kernel),
            "norms" => Ok(Suite::Norms),
            "projection" => Ok(Suite::Projection),
            "inequalities" => Ok(Suite::Inequalities),
            "all" => Ok(Suite::All),
            other => Err(Error::Config(format!(
                "unknown suite `{other}`; expected one of {}",
                SUITE_NAMES.join(", ")
            ))),
        }
    }
}

pub fn run_suite(suite: Suite, config: &Config) -> Result<Report> {
    config.validate()?;
    let records = match suite {
        Suite::Kernel => kernel_records(config)?,
        Suite::Norms => norm_records(config)?,
        Suite::Projection => projection_records(config)?,
        Suite::Inequalities => inequality_records(config)?,
        Suite::All => {
            let mut all = kernel_records(config)?;
            all.extend(norm_records(config)?);
            all.extend(projection_records(config)?);
            all.extend(inequality_records(config)?);
            all
        }
    };
    Ok(Report::new(suite.name(), config, records))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a non-finite value can never pass.
    values.into_iter().fold(0.0, |acc: f64, v| {
        if v.is_nan() || acc.is_nan() {
            f64::NAN
        } else {
            acc.max(v)
        }
    })
}

/// Points with `|z| ≤ radius` on `rings` circles of `angles` points each,
/// plus the origin.
fn disk_grid(radius: f64, rings: usize, angles: usize) -> Vec<Complex64> {
    let radii: Vec<f64> = (1..=rings)
        .map(|i| radius * i as f64 / rings as f64)
        .collect();
    let mut grid = vec![c(0.0, 0.0)];
    grid.extend(polar_grid(&radii, angles));
    grid
}

/// The 25-point grid of the integral-representation checks: five rings of
/// radius up to 2 with spread angles.
pub fn representation_grid() -> Vec<Complex64> {
    (0..25)
        .map(|i| Complex64::from_polar(2.0 * (i % 5) as f64 / 4.0, 0.7 + 1.3 * i as f64))
        .collect()
}

pub fn kernel_records(config: &Config) -> Result<Vec<Record>> {
    Ok(vec![
        kernel_at_origin(config),
        kernel_order_zero(config),
        kernel_series_agreement(config),
    ])
}

/// `K_m(z, 0) = 1` for `m ≤ 5`.
pub fn kernel_at_origin(config: &Config) -> Record {
    let err = max_of((0..=5).flat_map(|m| {
        disk_grid(6.0, 6, 8)
            .into_iter()
            .map(move |z| (kernel(z, c(0.0, 0.0), m) - 1.0).norm())
    }));
    Record::at_most(
        "kernel.origin",
        err,
        config.kernel_tolerance,
        "max |K_m(z,0) - 1|, m <= 5, |z| <= 6".into(),
    )
}

/// `K_0(z, w) = e^{z w̄}`, relative.
pub fn kernel_order_zero(config: &Config) -> Record {
    let grid = disk_grid(4.0, 4, 8);
    let err = max_of(grid.iter().flat_map(|&z| {
        grid.iter().map(move |&w| {
            let want = (z * w.conj()).exp();
            (kernel(z, w, 0) - want).norm() / want.norm()
        })
    }));
    Record::at_most(
        "kernel.order-zero",
        err,
        config.kernel_tolerance,
        "max relative |K_0(z,w) - exp(z conj w)|, |z|, |w| <= 4".into(),
    )
}

/// Series and closed form of `K_m` agree for `10⁻³ ≤ |z w̄| ≤ 30`; the
/// production evaluator is compared with the double-double series too.
pub fn kernel_series_agreement(config: &Config) -> Record {
    let moduli: Vec<f64> = (0..=36)
        .map(|i| 1e-3 * 30_000f64.powf(i as f64 / 36.0))
        .collect();
    let points: Vec<Complex64> = polar_grid(&moduli, 12);
    let err = max_of((1..=8).flat_map(|m| {
        points.iter().map(move |&x| {
            let reference = kernel_series_reference(x, c(1.0, 0.0), m);
            let closed = kernel_closed_form(x, c(1.0, 0.0), m).unwrap_or(reference);
            let production = kernel(x, c(1.0, 0.0), m);
            ((closed - reference)
                .norm()
                .max((production - reference).norm()))
                / reference.norm()
        })
    }));
    Record::at_most(
        "kernel.series-closed-form",
        err,
        config.basis_tolerance,
        "max relative gap between series and closed form, 1e-3 <= |z conj w| <= 30, 1 <= m <= 8"
            .into(),
    )
}

pub fn norm_records(config: &Config) -> Result<Vec<Record>> {
    let mut out = vec![
        basis_gram(config)?,
        unit_constant(config)?,
        unit_constant_convergence(config)?,
        equivalence_anchors(config)?,
        kernel_reproduction(config)?,
    ];
    out.extend(equivalence_bands(config)?);
    out.extend(holder_bounds(config)?);
    Ok(out)
}

/// `⟨e_i, e_j⟩_m = δ_ij` for `i, j ≤ 12`, `m ≤ 4`.
pub fn basis_gram(config: &Config) -> Result<Record> {
    let rule = config.resolution().rule(1.0, 0.0)?;
    let mut err = 0.0f64;
    for m in 0..=4 {
        let elements: Vec<EntireFunction> = (0..=12).map(|n| basis(n, m)).collect::<Result<_>>()?;
        for (i, ei) in elements.iter().enumerate() {
            for (j, ej) in elements.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                err = max_of([err, (pairing(ei, ej, m, &rule)? - want).norm()]);
            }
        }
    }
    Ok(Record::at_most(
        "norms.basis-gram",
        err,
        config.basis_tolerance,
        "max |<e_i, e_j>_m - delta_ij|, i, j <= 12, m <= 4".into(),
    ))
}

const UNIT_EXPONENTS: [f64; 5] = [0.5, 1.0, 2.0, 3.0, 4.0];

fn unit_norm(params: SpaceParams, resolution: Resolution) -> Result<f64> {
    norm(
        &EntireFunction::constant(c(1.0, 0.0)),
        params,
        &params.norm_rule(resolution)?,
    )
}

/// `‖1‖_{p,m} = 1`.
pub fn unit_constant(config: &Config) -> Result<Record> {
    let mut err = 0.0f64;
    for p in UNIT_EXPONENTS {
        for m in 0..=3 {
            err = max_of([
                err,
                (unit_norm(SpaceParams::new(p, m)?, config.resolution())? - 1.0).abs(),
            ]);
        }
    }
    Ok(Record::at_most(
        "norms.unit-constant",
        err,
        config.norm_tolerance,
        "max |‖1‖_{p,m} - 1|, p in {0.5, 1, 2, 3, 4}, m <= 3".into(),
    ))
}

/// Change of `‖1‖_{p,m}` under doubled resolution.
pub fn unit_constant_convergence(config: &Config) -> Result<Record> {
    let mut err = 0.0f64;
    for p in UNIT_EXPONENTS {
        for m in 0..=3 {
            let params = SpaceParams::new(p, m)?;
            let base = unit_norm(params, config.resolution())?;
            let fine = unit_norm(params, config.resolution().doubled())?;
            err = max_of([err, (fine - base).abs()]);
        }
    }
    Ok(Record::at_most(
        "norms.unit-constant-convergence",
        err,
        1e-7,
        "max change of ‖1‖_{p,m} under doubled resolution".into(),
    ))
}

/// Closed-form values of the equivalence ratio: `f = 1 → 1`, `f = z → √2`
/// for `p = 2`, `m = 1`.
pub fn equivalence_anchors(config: &Config) -> Result<Record> {
    let params = SpaceParams::new(2.0, 1)?;
    let (num, den) = derivative_equivalence_rules(params, config.resolution())?;
    let one = derivative_equivalence_ratio_split(
        &EntireFunction::constant(c(1.0, 0.0)),
        params,
        &num,
        &den,
    )?;
    let z = derivative_equivalence_ratio_split(
        &EntireFunction::monomial(1, c(1.0, 0.0)),
        params,
        &num,
        &den,
    )?;
    Ok(Record::at_most(
        "norms.equivalence-anchors",
        (one - 1.0).abs().max((z - SQRT_2).abs()),
        config.tolerance,
        format!("ratio(1) = {one:.15}, ratio(z) = {z:.15}"),
    ))
}

/// `⟨f, K_m(·, w)⟩_m = f(w)` for random polynomials of degree ≤ 12.
pub fn kernel_reproduction(config: &Config) -> Result<Record> {
    let rule = config.resolution().rule(1.0, 0.0)?;
    let family = random_family(config.seed, 8, 12);
    let points = disk_grid(3.0, 3, 5);
    let mut err = 0.0f64;
    for m in 0..=3 {
        for f in &family {
            for &w in &points {
                let k = kernel_polynomial(w, m, f.degree().unwrap_or(0) + KERNEL_GUARD_TERMS);
                let want = f.evaluate(w);
                let got = pairing(f, &k, m, &rule)?;
                err = max_of([err, (got - want).norm() / (1.0 + want.norm())]);
            }
        }
    }
    Ok(Record::at_most(
        "norms.kernel-reproduction",
        err,
        config.tolerance,
        "max |<f, K_m(.,w)>_m - f(w)| / (1 + |f(w)|), degree <= 12, |w| <= 3, m <= 3".into(),
    ))
}

/// Equivalence band over the random family at both degree caps. The
/// narrow family truncates every wide-family polynomial at the narrow cap.
pub fn equivalence_bands(config: &Config) -> Result<Vec<Record>> {
    let wide = random_family(config.seed, config.family_size, config.degree_cap);
    let narrow: Vec<EntireFunction> = wide
        .iter()
        .map(|f| f.taylor_section(config.narrow_cap + 1))
        .filter(|f| !f.is_zero())
        .collect();
    let mut out = Vec::new();
    for p in [1.0, 2.0, 4.0] {
        for m in 1..=3 {
            let params = SpaceParams::new(p, m)?;
            let mut wide_band = check_derivative_equivalence(&wide, params, config.resolution())?;
            let narrow_band = check_derivative_equivalence(&narrow, params, config.resolution())?;
            let n = (narrow_band.ratio_min, narrow_band.ratio_max);
            let w = (wide_band.ratio_min, wide_band.ratio_max);
            wide_band.seed = Some(config.seed);
            let detail = format!(
                "band [{:.6}, {:.6}] at cap {}, [{:.6}, {:.6}] at cap {}; endpoint widening {:.4}",
                n.0,
                n.1,
                config.narrow_cap,
                w.0,
                w.1,
                config.degree_cap,
                endpoint_widening(n, w)
            );
            let ok = narrow_band.pass;
            let mut record = Record::at_most(
                &format!("norms.equivalence-band.p{p}.m{m}"),
                band_widening(n, w),
                config.band_widening,
                detail,
            )
            .with_bounds(wide_band);
            record.pass &= ok;
            out.push(record);
        }
    }
    Ok(out)
}

/// `|⟨f, g⟩_m| ≤ C ‖f‖_{p,m} ‖g‖_{q,m}` with `C` from Hölder's inequality.
pub fn holder_bounds(config: &Config) -> Result<Vec<Record>> {
    let family = random_family(config.seed.wrapping_add(1), 40, config.degree_cap);
    let pair_rule = config.resolution().rule(1.0, 0.0)?;
    let mut out = Vec::new();
    for (p, m) in [(4.0 / 3.0, 1), (2.0, 1), (4.0, 2)] {
        let q = conjugate_exponent(p);
        let (pp, qp) = (SpaceParams::new(p, m)?, SpaceParams::new(q, m)?);
        let (p_rule, q_rule) = (
            pp.norm_rule(config.resolution())?,
            qp.norm_rule(config.resolution())?,
        );
        let mut worst = 0.0f64;
        for pair in family.chunks_exact(2) {
            let (f, g) = (&pair[0], &pair[1]);
            let ratio = pairing(f, g, m, &pair_rule)?.norm()
                / (norm(f, pp, &p_rule)? * norm(g, qp, &q_rule)?);
            worst = max_of([worst, ratio]);
        }
        let bound = holder_constant(p, m)?;
        out.push(Record::at_most(
            &format!("norms.holder.p{:.4}.m{m}", p),
            worst,
            bound * (1.0 + config.tolerance),
            format!("max |<f,g>_m| / (‖f‖_p ‖g‖_q) over 20 pairs, q = {q:.4}, C = {bound:.6e}"),
        ));
    }
    Ok(out)
}

pub fn projection_records(config: &Config) -> Result<Vec<Record>> {
    let mut out = vec![
        projection_monomials(config)?,
        projection_representations(config)?,
        projection_idempotence(config)?,
    ];
    out.extend(projection_boundedness(config)?);
    Ok(out)
}

/// `Q_m(z^n) = z^n` for `n ≤ 10`, `m ≤ 3`, `|z| ≤ 2`.
pub fn projection_monomials(config: &Config) -> Result<Record> {
    let rule = config.resolution().rule(1.0, 0.0)?;
    let points = disk_grid(2.0, 4, 6);
    let cases: Vec<(usize, u32)> = (0..=3)
        .flat_map(|m| (0..=10u32).map(move |n| (m, n)))
        .collect();
    let errs: Vec<f64> = cases
        .par_iter()
        .map(|&(m, n)| -> Result<f64> {
            let mut err = 0.0f64;
            for &z in &points {
                let got = project(
                    |w| w.powu(n),
                    m,
                    z,
                    &rule,
                    n as usize + m + KERNEL_GUARD_TERMS,
                )?;
                err = max_of([
                    err,
                    (got - z.powu(n)).norm() / (1.0 + z.norm().powi(n as i32)),
                ]);
            }
            Ok(err)
        })
        .collect::<Result<_>>()?;
    Ok(Record::at_most(
        "projection.monomials",
        max_of(errs),
        config.tolerance,
        "max |Q_m(z^n)(z) - z^n| / (1 + |z|^n), n <= 10, m <= 3, |z| <= 2".into(),
    ))
}

/// The integral representations of `f^{(m)}` and `f − f_m` against the
/// coefficient route.
pub fn projection_representations(config: &Config) -> Result<Record> {
    let rule = config.resolution().rule(1.0, 0.0)?;
    let family = random_family(config.seed.wrapping_add(2), 6, 12);
    let points = representation_grid();
    let mut err = 0.0f64;
    for f in &family {
        for m in 1..=3 {
            let deriv = f.derivative(m);
            let rest = f - &f.taylor_section(m);
            for &z in &points {
                let want = deriv.evaluate(z);
                let got = derivative_via_projection(f, m, z, &rule, None)?;
                err = max_of([err, (got - want).norm() / (1.0 + want.norm())]);
                let want = rest.evaluate(z);
                let got = remainder_via_kernel(&deriv, m, z, &rule, None)?;
                err = max_of([err, (got - want).norm() / (1.0 + want.norm())]);
            }
        }
    }
    Ok(Record::at_most(
        "projection.representations",
        err,
        config.tolerance,
        "max relative error of both integral representations, 25 points, degree <= 12, 1 <= m <= 3"
            .into(),
    ))
}

/// Test inputs `w̄^j q(w)` for the projection checks.
fn conjugate_inputs(config: &Config) -> Vec<(u32, EntireFunction)> {
    random_family(config.seed.wrapping_add(3), 6, 8)
        .into_iter()
        .enumerate()
        .map(|(i, q)| ((i % 3) as u32, q))
        .collect()
}

/// `Q_m(Q_m g) = Q_m g`.
pub fn projection_idempotence(config: &Config) -> Result<Record> {
    let rule = config.resolution().rule(1.0, 0.0)?;
    let points = representation_grid();
    let mut err = 0.0f64;
    for m in 0..=3 {
        for (j, q) in conjugate_inputs(config) {
            let degree = q.degree().unwrap_or(0) + m + KERNEL_GUARD_TERMS;
            let once = project_polynomial(|w| w.conj().powu(j) * q.evaluate(w), m, degree, &rule)?;
            let twice = project_polynomial(|w| once.evaluate(w), m, degree, &rule)?;
            for &z in &points {
                let a = once.evaluate(z);
                err = max_of([err, (twice.evaluate(z) - a).norm() / (1.0 + a.norm())]);
            }
        }
    }
    Ok(Record::at_most(
        "projection.idempotence",
        err,
        config.tolerance,
        "max |Q_m Q_m g - Q_m g| / (1 + |Q_m g|) at 25 points, m <= 3".into(),
    ))
}

/// `‖Q_m g‖_{p,m} ≤ C ‖g‖_{p,m}` for `g = w̄^j q(w)`. For `p = 2` the
/// projection is orthogonal and `C ≤ 1`; otherwise finiteness is asserted.
pub fn projection_boundedness(config: &Config) -> Result<Vec<Record>> {
    let rule = config.resolution().rule(1.0, 0.0)?;
    let mut out = Vec::new();
    for p in [1.0, 2.0, 4.0] {
        let mut worst = 0.0f64;
        for m in 0..=2 {
            let params = SpaceParams::new(p, m)?;
            let norm_rule = params.norm_rule(config.resolution())?;
            for (j, q) in conjugate_inputs(config) {
                let g = |w: Complex64| w.conj().powu(j) * q.evaluate(w);
                let degree = q.degree().unwrap_or(0) + m + KERNEL_GUARD_TERMS;
                let projected = project_polynomial(g, m, degree, &rule)?;
                let ratio = norm(&projected, params, &norm_rule)?
                    / lp_norm(|w| g(w).norm(), params, &norm_rule)?;
                worst = max_of([worst, ratio]);
            }
        }
        let threshold = if p == 2.0 {
            1.0 + config.tolerance
        } else {
            f64::MAX
        };
        out.push(Record::at_most(
            &format!("projection.boundedness.p{p}"),
            worst,
            threshold,
            "largest ‖Q_m g‖_{p,m} / ‖g‖_{p,m} over conjugate-monomial inputs, m <= 2".into(),
        ));
    }
    Ok(out)
}

pub fn inequality_records(config: &Config) -> Result<Vec<Record>> {
    let mut out = series_records(config)?;
    out.extend(remainder_records(config)?);
    out.extend(pointwise_records(config)?);
    out.extend(disk_records(config)?);
    Ok(out)
}

pub fn series_records(config: &Config) -> Result<Vec<Record>> {
    let grid = linear_grid(config.sigma, config.x_max, 0.25);
    let upper = check_series_upper(&DEFAULT_S_VALUES, &grid, config.sigma)?;
    let lower = check_series_lower(&DEFAULT_S_VALUES, &grid, config.sigma)?;
    let zero_err = max_of(default_x_grid(config.sigma).into_iter().map(|x| {
        s_series_scaled(0.0, x)
            .map(|v| (v - 1.0).abs())
            .unwrap_or(f64::NAN)
    }));
    let one_err = (s_series_scaled(1.0, 1.0)? - (E - 1.0) / E).abs();
    let rejects = matches!(s_series_scaled(-2.0, 0.0), Err(Error::Domain(_)));
    Ok(vec![
        Record::at_most(
            "inequalities.series-upper",
            upper.ratio_max,
            f64::MAX,
            "max of S(s,x) e^-x over the default s values".into(),
        )
        .with_bounds(upper),
        Record::above(
            "inequalities.series-lower",
            lower.ratio_min,
            0.0,
            "min of S(s,x) e^-x over the default s values".into(),
        )
        .with_bounds(lower),
        Record::at_most(
            "inequalities.series-anchors",
            zero_err.max(one_err),
            config.kernel_tolerance,
            "|S(0,x) e^-x - 1| on the grid and |S(1,1) e^-1 - (e-1)/e|".into(),
        ),
        Record::at_most(
            "inequalities.series-domain",
            if rejects { 0.0 } else { 1.0 },
            0.0,
            "S(-2, 0) is rejected as outside the series domain".into(),
        ),
    ])
}

/// The remainder-integral sweeps: `(p, a, b, m, radii)`.
pub fn remainder_sweeps() -> Vec<(f64, f64, f64, usize, Vec<f64>)> {
    vec![
        (2.0, 1.0, 0.0, 0, linear_grid(0.0, 6.0, 0.5)),
        (2.0, 1.0, 2.0, 1, linear_grid(0.0, 6.0, 0.5)),
        (1.0, 1.0, -1.0, 2, linear_grid(1.0, 12.0, 0.5)),
    ]
}

pub fn remainder_records(config: &Config) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let anchor = RemainderIntegral::new(2.0, 1.0, 0.0, 0)?;
    let report = check_remainder_integral(
        anchor,
        &polar_grid(&linear_grid(0.0, 6.0, 0.25), 3),
        config.sigma,
        config.resolution(),
    )?;
    let err = (report.ratio_max - PI)
        .abs()
        .max((report.ratio_min - PI).abs())
        / PI;
    out.push(Record::at_most(
        "inequalities.remainder-anchor",
        err,
        1e-9,
        "relative |ratio - pi| for p = 2, a = 1, b = 0, m = 0, |z| <= 6".into(),
    ));
    for (p, a, b, m, radii) in remainder_sweeps() {
        let integral = RemainderIntegral::new(p, a, b, m)?;
        let grid = polar_grid(&radii, 3);
        let mut base =
            check_remainder_integral(integral, &grid, config.sigma, config.resolution())?;
        let fine =
            check_remainder_integral(integral, &grid, config.sigma, config.resolution().doubled())?;
        let change = (fine.ratio_max - base.ratio_max).abs() / base.ratio_max.abs();
        base.notes.push(format!(
            "ratio_max at doubled resolution: {:.15e}",
            fine.ratio_max
        ));
        out.push(
            Record::at_most(
                &format!("inequalities.remainder.p{p}.a{a}.b{b}.m{m}"),
                change,
                config.tolerance,
                format!(
                    "relative change of ratio_max {:.6e} under doubled resolution",
                    base.ratio_max
                ),
            )
            .with_bounds(base),
        );
    }
    let rejected = matches!(
        RemainderIntegral::new(1.0, 1.0, -4.0, 2),
        Err(Error::Domain(_))
    );
    out.push(Record::at_most(
        "inequalities.remainder-hypothesis",
        if rejected { 0.0 } else { 1.0 },
        0.0,
        "b = -(mp + 2) is rejected".into(),
    ));
    Ok(out)
}

pub fn pointwise_records(config: &Config) -> Result<Vec<Record>> {
    let family = random_family(config.seed, config.family_size, config.degree_cap);
    let grid = disk_grid(6.0, 12, 4);
    let mut out = Vec::new();
    let one = EntireFunction::constant(c(1.0, 0.0));
    let anchor = check_pointwise_bound(
        &[one],
        2.0,
        &[c(0.0, 0.0)],
        config.resolution(),
        config.tolerance,
    )?;
    out.push(Record::at_most(
        "inequalities.pointwise-anchor",
        (anchor.ratio_max - 1.0).abs(),
        config.tolerance,
        "f = 1, p = 2, z = 0 attains equality".into(),
    ));
    for p in [0.5, 1.0, 2.0] {
        let mut report =
            check_pointwise_bound(&family, p, &grid, config.resolution(), config.tolerance)?;
        report.seed = Some(config.seed);
        out.push(
            Record::at_most(
                &format!("inequalities.pointwise.p{p}"),
                report.ratio_max,
                1.0 + config.tolerance,
                "max |f(z)| e^{-|z|^2/2} / ‖f‖_p over the family".into(),
            )
            .with_bounds(report),
        );
    }
    Ok(out)
}

pub const DISK_NODE_BUDGET: usize = 1024;

pub fn disk_records(config: &Config) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let one = EntireFunction::constant(c(1.0, 0.0));
    let anchor = check_disk_mean_value(&[one], 2.0, 1.0, &[c(0.0, 0.0)], DISK_NODE_BUDGET)?;
    let want = 1.0 / (PI * (1.0 - (-1.0f64).exp()));
    out.push(Record::at_most(
        "inequalities.disk-anchor",
        (anchor.ratio_max - want).abs() / want,
        config.basis_tolerance,
        format!("f = 1, p = 2, t = 1, z = 0: ratio {:.12}", anchor.ratio_max),
    ));
    let family = random_family(config.seed.wrapping_add(4), 40, config.degree_cap);
    let grid = disk_grid(4.0, 4, 6);
    for p in [1.0, 2.0] {
        let small = check_disk_mean_value(&family[..20], p, 1.0, &grid, DISK_NODE_BUDGET)?;
        let mut large = check_disk_mean_value(&family, p, 1.0, &grid, DISK_NODE_BUDGET)?;
        large.seed = Some(config.seed.wrapping_add(4));
        let growth = large.ratio_max / small.ratio_max - 1.0;
        out.push(
            Record::at_most(
                &format!("inequalities.disk.p{p}"),
                growth,
                config.band_widening,
                format!(
                    "relative growth of the max ratio from 20 to 40 functions ({:.6e} to {:.6e}), t = 1",
                    small.ratio_max, large.ratio_max
                ),
            )
            .with_bounds(large),
        );
    }
    Ok(out)
}

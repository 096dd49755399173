//! Carleson measures for `F^{p,m}`: the geometric disk-counting test
//! `μ(B(a,r)) ≤ C (1+|a|)^{mp}`, the embedding estimate on normalized kernel
//! test functions, and the radial profile of the vanishing condition.
//!
//! No finite computation certifies a supremum over the whole plane, so
//! every verdict refers to a window `|a| ≤ W`. The ratio is declared
//! stabilized when its maximum over the outer half of the window is at most
//! a growth factor (default 1.05) times its maximum over the inner half.

pub mod measure;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_plane_shifted, PlaneQuadrature, Resolution};
use crate::spaces::{normalizer, SpaceParams};
use crate::special::ln_abs_kernel;

pub use measure::{Atom, DiscreteMeasure};

use crate::quadrature::DiskRegion;

pub const DEFAULT_GROWTH_FACTOR: f64 = 1.05;
/// A profile vanishes when its last shell is at most this fraction of its peak.
pub const VANISHING_DROP: f64 = 0.5;
pub const DEFAULT_SHELL_COUNT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Carleson,
    NotCarlesonWithinWindow,
    Vanishing,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Carleson => "carleson",
            Verdict::NotCarlesonWithinWindow => "not-carleson-within-window",
            Verdict::Vanishing => "vanishing",
        }
    }

    fn from_halves(inner: f64, outer: f64, growth_factor: f64) -> Self {
        if outer <= growth_factor * inner {
            Verdict::Carleson
        } else {
            Verdict::NotCarlesonWithinWindow
        }
    }
}

/// `μ(B)`, summing the masses of atoms strictly inside the disk.
pub fn disk_mass(mu: &DiscreteMeasure, region: &DiskRegion) -> f64 {
    mu.atoms()
        .iter()
        .filter(|a| region.contains(a.position))
        .fold(0.0, |acc, a| acc + a.mass)
}

/// Atoms sorted by `(re, im)` for range queries on the real part.
struct SortedAtoms {
    atoms: Vec<Atom>,
}

impl SortedAtoms {
    fn new(mu: &DiscreteMeasure) -> Self {
        let mut atoms = mu.atoms().to_vec();
        atoms.sort_by(|a, b| {
            a.position
                .re
                .total_cmp(&b.position.re)
                .then(a.position.im.total_cmp(&b.position.im))
                .then(a.mass.total_cmp(&b.mass))
        });
        Self { atoms }
    }

    fn disk_mass(&self, center: Complex64, r: f64) -> f64 {
        // The margin keeps rounding in the bounds from dropping an atom the
        // exact distance test would accept.
        let margin = 1e-9 * (1.0 + r + center.re.abs());
        let start = self
            .atoms
            .partition_point(|a| a.position.re < center.re - r - margin);
        self.atoms[start..]
            .iter()
            .take_while(|a| a.position.re <= center.re + r + margin)
            .filter(|a| (a.position - center).norm() < r)
            .fold(0.0, |acc, a| acc + a.mass)
    }
}

/// Largest value with its center; equal values resolve to the
/// lexicographically smallest `(re, im)`.
fn argmax(values: impl IntoIterator<Item = (Complex64, f64)>) -> Option<(Complex64, f64)> {
    values.into_iter().fold(None, |best, (a, v)| match best {
        None => Some((a, v)),
        Some((b, w)) => {
            let better = v > w || (v == w && (a.re, a.im) < (b.re, b.im));
            Some(if better { (a, v) } else { (b, w) })
        }
    })
}

/// Centers of `spacing·ℤ²` with `|a| ≤ window`, row by row.
pub fn lattice_centers(window: f64, spacing: f64) -> Vec<Complex64> {
    let n = (window / spacing).floor() as i64;
    let limit = window * (1.0 + 1e-12);
    let mut out = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let a = Complex64::new(i as f64 * spacing, j as f64 * spacing);
            if a.norm() <= limit {
                out.push(a);
            }
        }
    }
    out
}

/// Default window: the support radius of `μ`, at least `2r`.
pub fn default_window(mu: &DiscreteMeasure, r: f64) -> f64 {
    mu.support_radius().max(2.0 * r)
}

/// Default lattice spacing `r/2`.
pub fn default_spacing(r: f64) -> f64 {
    r / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSettings {
    pub r: f64,
    pub window: Option<f64>,
    pub spacing: Option<f64>,
    pub growth_factor: f64,
}

impl SweepSettings {
    pub fn new(r: f64) -> Self {
        Self {
            r,
            window: None,
            spacing: None,
            growth_factor: DEFAULT_GROWTH_FACTOR,
        }
    }
}

/// Outcome of the lattice sweep of `μ(B(a,r)) / (1+|a|)^{mp}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricSweep {
    pub sup_ratio: f64,
    pub argmax_center: Complex64,
    pub lattice_spacing: f64,
    pub radius: f64,
    pub window: f64,
    pub inner_max: f64,
    pub outer_max: f64,
    pub growth_factor: f64,
    pub center_count: usize,
    pub verdict: Verdict,
}

fn check_sweep(params: SpaceParams, r: f64, spacing: f64, window: f64) -> Result<()> {
    if params.is_infinite() {
        return Err(Error::Domain(
            "the Carleson sweep is not defined for p = ∞".into(),
        ));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!(
            "disk radius must be positive, got {r}"
        )));
    }
    if !(spacing > 0.0) || spacing > r {
        return Err(Error::Config(format!(
            "lattice spacing must lie in (0, r] so the disks cover the window; got {spacing} with r = {r}"
        )));
    }
    if !(window > 0.0) || !window.is_finite() {
        return Err(Error::Domain(format!(
            "window must be positive, got {window}"
        )));
    }
    Ok(())
}

/// Sup over the lattice window of `μ(B(a,r)) / (1+|a|)^{mp}` with its
/// maximizing center and the window-qualified verdict.
pub fn carleson_sup(
    mu: &DiscreteMeasure,
    params: SpaceParams,
    r: f64,
    window: f64,
    spacing: f64,
) -> Result<GeometricSweep> {
    carleson_sup_with(mu, params, r, window, spacing, DEFAULT_GROWTH_FACTOR)
}

pub fn carleson_sup_with(
    mu: &DiscreteMeasure,
    params: SpaceParams,
    r: f64,
    window: f64,
    spacing: f64,
    growth_factor: f64,
) -> Result<GeometricSweep> {
    check_sweep(params, r, spacing, window)?;
    let centers = lattice_centers(window, spacing);
    let ratios = geometric_ratios(mu, params, r, &centers);
    let (argmax_center, sup_ratio) = if mu.is_empty() {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        argmax(centers.iter().copied().zip(ratios.iter().copied())).unwrap_or_default()
    };
    let (inner_max, outer_max) = halves(&centers, &ratios, window);
    Ok(GeometricSweep {
        sup_ratio,
        argmax_center,
        lattice_spacing: spacing,
        radius: r,
        window,
        inner_max,
        outer_max,
        growth_factor,
        center_count: centers.len(),
        verdict: Verdict::from_halves(inner_max, outer_max, growth_factor),
    })
}

fn geometric_ratios(
    mu: &DiscreteMeasure,
    params: SpaceParams,
    r: f64,
    centers: &[Complex64],
) -> Vec<f64> {
    let sorted = SortedAtoms::new(mu);
    let mp = params.mp();
    centers
        .par_iter()
        .with_min_len(64)
        .map(|&a| sorted.disk_mass(a, r) / (1.0 + a.norm()).powf(mp))
        .collect()
}

/// Maxima over `|a| ≤ window/2` and over `|a| > window/2`.
fn halves(centers: &[Complex64], values: &[f64], window: f64) -> (f64, f64) {
    let mut inner = 0.0f64;
    let mut outer = 0.0f64;
    for (a, &v) in centers.iter().zip(values) {
        if a.norm() <= window / 2.0 {
            inner = inner.max(v);
        } else {
            outer = outer.max(v);
        }
    }
    (inner, outer)
}

/// `ln ‖K_m(·, a)‖_{p,m}^p`, integrated with the rule shifted to `a` so the
/// Gaussian bump of the kernel sits on the nodes for every `|a|`.
///
/// The rule must have rate `p/2` and no radial power.
pub fn ln_kernel_norm_power(
    a: Complex64,
    params: SpaceParams,
    rule: &PlaneQuadrature,
) -> Result<f64> {
    rule.require_rate(params.p / 2.0, "the kernel test-function norm")?;
    let p = params.p;
    let m = params.m as f64;
    // |z^m K|^p e^{−p|z|²/2} = e^{L(z)} e^{p|a|²/2} e^{−p|z−a|²/2}.
    let log_integrand = |z: Complex64| {
        let lz = if params.m == 0 {
            0.0
        } else {
            m * z.norm().ln()
        };
        p * (lz + ln_abs_kernel(z, a, params.m) - (z * a.conj()).re)
    };
    let shift = if a.norm() > 0.0 || params.m == 0 {
        log_integrand(a)
    } else {
        0.0
    };
    let integral: f64 = integrate_plane_shifted(rule, a, |z| (log_integrand(z) - shift).exp())?;
    Ok(normalizer(params)?.ln() + p * a.norm_sqr() / 2.0 + shift + integral.ln())
}

/// Per-center values of `∫ |f_a e^{−|z|²/2}|^p dμ` for the normalized test
/// functions `f_a = K_m(·, a)/‖K_m(·, a)‖_{p,m}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbeddingEstimate {
    pub value: f64,
    pub argmax_center: Complex64,
    pub per_center: Vec<(Complex64, f64)>,
    pub skipped: usize,
}

/// The embedding integral in its `p`-th-power form, maximized over
/// `centers`. Centers whose test-function norm is not finite are skipped
/// and counted.
pub fn embedding_estimate(
    mu: &DiscreteMeasure,
    params: SpaceParams,
    centers: &[Complex64],
    rule: &PlaneQuadrature,
) -> Result<EmbeddingEstimate> {
    if params.is_infinite() {
        return Err(Error::Domain(
            "the embedding estimate is not defined for p = ∞".into(),
        ));
    }
    if mu.is_empty() {
        return Ok(EmbeddingEstimate {
            value: 0.0,
            argmax_center: Complex64::new(0.0, 0.0),
            per_center: centers.iter().map(|&a| (a, 0.0)).collect(),
            skipped: 0,
        });
    }
    let p = params.p;
    let results: Vec<Option<f64>> = centers
        .par_iter()
        .map(|&a| {
            let ln_norm = ln_kernel_norm_power(a, params, rule)?;
            if !ln_norm.is_finite() {
                return Ok(None);
            }
            let sum: f64 = mu.atoms().iter().fold(0.0, |acc, atom| {
                let z = atom.position;
                acc + atom.mass
                    * (p * (ln_abs_kernel(z, a, params.m) - z.norm_sqr() / 2.0) - ln_norm).exp()
            });
            Ok(Some(sum))
        })
        .collect::<Result<_>>()?;
    let skipped = results.iter().filter(|v| v.is_none()).count();
    let per_center: Vec<(Complex64, f64)> = centers
        .iter()
        .zip(&results)
        .filter_map(|(&a, v)| v.map(|v| (a, v)))
        .collect();
    let (argmax_center, value) = argmax(per_center.iter().copied()).unwrap_or_default();
    Ok(EmbeddingEstimate {
        value,
        argmax_center,
        per_center,
        skipped,
    })
}

/// Maximum ratio over the lattice centers of one annulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Shell {
    pub inner: f64,
    pub outer: f64,
    pub max_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingProfile {
    pub shells: Vec<Shell>,
    pub vanishing: bool,
}

/// `count` equally spaced shell boundaries up to `window`.
pub fn default_shell_radii(window: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| window * i as f64 / count as f64)
        .collect()
}

/// Per-shell maxima of `μ(B(a,r))/(1+|a|)^{mp}`; shell `i` holds the
/// centers with `radii[i−1] < |a| ≤ radii[i]` (the first starts at 0).
///
/// The profile is classified as vanishing when every shell is zero, or when
/// the last shell is at most half the peak and the outer half of the shell
/// maxima is non-increasing up to the growth factor.
pub fn vanishing_profile(
    mu: &DiscreteMeasure,
    params: SpaceParams,
    r: f64,
    radii: &[f64],
    spacing: Option<f64>,
) -> Result<VanishingProfile> {
    vanishing_profile_with(mu, params, r, radii, spacing, DEFAULT_GROWTH_FACTOR)
}

pub fn vanishing_profile_with(
    mu: &DiscreteMeasure,
    params: SpaceParams,
    r: f64,
    radii: &[f64],
    spacing: Option<f64>,
    growth_factor: f64,
) -> Result<VanishingProfile> {
    let spacing = spacing.unwrap_or_else(|| default_spacing(r));
    let Some(&window) = radii.last() else {
        return Err(Error::Domain(
            "at least one shell radius is required".into(),
        ));
    };
    if radii[0] <= 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "shell radii must be positive and increasing".into(),
        ));
    }
    check_sweep(params, r, spacing, window)?;
    let centers = lattice_centers(window, spacing);
    let ratios = geometric_ratios(mu, params, r, &centers);
    let mut maxima = vec![0.0f64; radii.len()];
    for (a, &v) in centers.iter().zip(&ratios) {
        let d = a.norm();
        let shell = radii.partition_point(|&b| b < d).min(radii.len() - 1);
        maxima[shell] = maxima[shell].max(v);
    }
    let shells = maxima
        .iter()
        .enumerate()
        .map(|(i, &max_ratio)| Shell {
            inner: if i == 0 { 0.0 } else { radii[i - 1] },
            outer: radii[i],
            max_ratio,
        })
        .collect();
    Ok(VanishingProfile {
        shells,
        vanishing: profile_vanishes(&maxima, growth_factor),
    })
}

fn profile_vanishes(maxima: &[f64], growth_factor: f64) -> bool {
    let peak = maxima.iter().copied().fold(0.0, f64::max);
    if peak == 0.0 {
        return true;
    }
    let last = *maxima.last().unwrap_or(&0.0);
    let outer = &maxima[maxima.len() / 2..];
    last <= VANISHING_DROP * peak && outer.windows(2).all(|w| w[1] <= growth_factor * w[0])
}

/// Geometric sweep, embedding estimate and vanishing profile of one measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlesonReport {
    pub p: f64,
    pub m: usize,
    pub atom_count: usize,
    pub sup_ratio: f64,
    pub argmax_center: Complex64,
    pub lattice_spacing: f64,
    pub radius: f64,
    pub window: f64,
    pub inner_max: f64,
    pub outer_max: f64,
    pub growth_factor: f64,
    pub verdict: Verdict,
    pub embedding_estimate: f64,
    pub embedding_argmax: Complex64,
    pub embedding_inner_max: f64,
    pub embedding_outer_max: f64,
    pub embedding_verdict: Verdict,
    pub skipped_centers: usize,
    pub comparability: Option<f64>,
    pub vanishing: bool,
    pub profile: Vec<Shell>,
    pub resolution: Resolution,
}

/// Runs the complete Carleson analysis. Test-function centers are the atom
/// positions plus the ratio-maximizing lattice center.
pub fn analyze(
    mu: &DiscreteMeasure,
    params: SpaceParams,
    settings: SweepSettings,
    resolution: Resolution,
) -> Result<CarlesonReport> {
    let r = settings.r;
    let window = settings.window.unwrap_or_else(|| default_window(mu, r));
    let spacing = settings.spacing.unwrap_or_else(|| default_spacing(r));
    let sweep = carleson_sup_with(mu, params, r, window, spacing, settings.growth_factor)?;

    let mut centers: Vec<Complex64> = mu.atoms().iter().map(|a| a.position).collect();
    centers.push(sweep.argmax_center);
    centers.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    centers.dedup();
    let rule = resolution.rule(params.p / 2.0, 0.0)?;
    let embedding = embedding_estimate(mu, params, &centers, &rule)?;
    let (emb_centers, emb_values): (Vec<Complex64>, Vec<f64>) =
        embedding.per_center.iter().copied().unzip();
    let (embedding_inner_max, embedding_outer_max) = halves(&emb_centers, &emb_values, window);

    let profile = vanishing_profile_with(
        mu,
        params,
        r,
        &default_shell_radii(window, DEFAULT_SHELL_COUNT),
        Some(spacing),
        settings.growth_factor,
    )?;
    let comparability = (sweep.sup_ratio > 0.0).then(|| embedding.value / sweep.sup_ratio);
    Ok(CarlesonReport {
        p: params.p,
        m: params.m,
        atom_count: mu.atoms().len(),
        sup_ratio: sweep.sup_ratio,
        argmax_center: sweep.argmax_center,
        lattice_spacing: spacing,
        radius: r,
        window,
        inner_max: sweep.inner_max,
        outer_max: sweep.outer_max,
        growth_factor: settings.growth_factor,
        verdict: sweep.verdict,
        embedding_estimate: embedding.value,
        embedding_argmax: embedding.argmax_center,
        embedding_inner_max,
        embedding_outer_max,
        embedding_verdict: Verdict::from_halves(
            embedding_inner_max,
            embedding_outer_max,
            settings.growth_factor,
        ),
        skipped_centers: embedding.skipped,
        comparability,
        vanishing: profile.vanishing,
        profile: profile.shells,
        resolution,
    })
}

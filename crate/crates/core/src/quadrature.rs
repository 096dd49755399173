//! Deterministic quadrature over the plane against Gaussian weights and over
//! Euclidean disks.
//!
//! A [`PlaneQuadrature`] approximates `∫_ℂ g(z) |z|^{2α} e^{−c|z|²} dA(z)`.
//! In polar form with `t = |z|²` this is
//! `½ ∫_0^{2π} ∫_0^∞ g(√t e^{iθ}) t^α e^{−ct} dt dθ`, so a generalized
//! Gauss–Laguerre rule in `t` is paired with the trapezoid rule in `θ`.
//! The factor `|z|^{2α}` lets callers absorb radial powers (including the
//! integrable singularities `|w|^b`, `b > −2`) into the rule itself.

use std::f64::consts::PI;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

pub const DEFAULT_RADIAL_DEGREE: usize = 60;
pub const DEFAULT_ANGULAR_COUNT: usize = 128;
pub const MAX_RADIAL_NODES: usize = 512;
pub const MIN_DISK_BUDGET: usize = 16;

/// Values a quadrature rule can accumulate.
pub trait QuadValue: Copy + Send + Sync + Add<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn is_finite_value(&self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Sum in a fixed binary-tree order, independent of how the terms were
/// produced.
pub fn pairwise_sum<T: QuadValue>(values: &[T]) -> T {
    const BLOCK: usize = 8;
    if values.len() <= BLOCK {
        return values.iter().fold(T::zero(), |acc, &v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Radial node count and angular node count of a plane rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Resolution {
    pub radial_degree: usize,
    pub angular_count: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Self {
            radial_degree: DEFAULT_RADIAL_DEGREE,
            angular_count: DEFAULT_ANGULAR_COUNT,
        }
    }
}

impl Resolution {
    pub fn new(radial_degree: usize, angular_count: usize) -> Self {
        Self {
            radial_degree,
            angular_count,
        }
    }

    pub fn doubled(self) -> Self {
        Self {
            radial_degree: (2 * self.radial_degree).min(MAX_RADIAL_NODES),
            angular_count: 2 * self.angular_count,
        }
    }

    /// Rule for `∫ g |z|^{2α} e^{−c|z|²} dA`.
    pub fn rule(self, c: f64, alpha: f64) -> Result<PlaneQuadrature> {
        build_weighted_plane_rule(c, alpha, self.radial_degree, self.angular_count)
    }
}

/// Node/weight scheme for `∫_ℂ g(z) |z|^{2α} e^{−c|z|²} dA(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneQuadrature {
    c: f64,
    alpha: f64,
    radial_nodes: Vec<(f64, f64)>,
    angular_count: usize,
    nodes: Vec<(Complex64, f64)>,
}

impl PlaneQuadrature {
    /// Gaussian rate `c`.
    pub fn rate(&self) -> f64 {
        self.c
    }

    /// Exponent `α` of the radial factor `t^α = |z|^{2α}` built into the rule.
    pub fn radial_power(&self) -> f64 {
        self.alpha
    }

    /// Pairs `(t, weight)` of the one-dimensional rule for `t^α e^{−ct}`.
    pub fn radial_nodes(&self) -> &[(f64, f64)] {
        &self.radial_nodes
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    /// Number of Gauss nodes in `t`; the radial rule is exact for
    /// polynomials in `t` of degree below twice this number.
    pub fn radial_degree(&self) -> usize {
        self.radial_nodes.len()
    }

    pub fn resolution(&self) -> Resolution {
        Resolution::new(self.radial_nodes.len(), self.angular_count)
    }

    /// Plane nodes with their weights, radial index major.
    pub fn nodes(&self) -> &[(Complex64, f64)] {
        &self.nodes
    }

    pub fn require_rate(&self, c: f64, what: &str) -> Result<()> {
        if (self.c - c).abs() > 1e-14 * c.abs() {
            return Err(Error::Config(format!(
                "{what} needs a rule with Gaussian rate {c}, got {}",
                self.c
            )));
        }
        Ok(())
    }
}

/// Rule for `∫ g(z) e^{−c|z|²} dA`.
pub fn build_plane_rule(
    c: f64,
    radial_degree: usize,
    angular_count: usize,
) -> Result<PlaneQuadrature> {
    build_weighted_plane_rule(c, 0.0, radial_degree, angular_count)
}

/// Rule for `∫ g(z) |z|^{2α} e^{−c|z|²} dA`, `α > −1`.
pub fn build_weighted_plane_rule(
    c: f64,
    alpha: f64,
    radial_degree: usize,
    angular_count: usize,
) -> Result<PlaneQuadrature> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain(format!(
            "Gaussian rate must be positive, got {c}"
        )));
    }
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "radial power must exceed −1, got {alpha}"
        )));
    }
    if radial_degree == 0 || angular_count == 0 {
        return Err(Error::Domain(
            "radial degree and angular count must be positive".into(),
        ));
    }
    if radial_degree > MAX_RADIAL_NODES {
        return Err(Error::Range(format!(
            "radial degree {radial_degree} exceeds the cap {MAX_RADIAL_NODES}"
        )));
    }
    let scale = (-(alpha + 1.0) * c.ln()).exp();
    let radial_nodes: Vec<(f64, f64)> = gauss_laguerre(radial_degree, alpha)
        .into_iter()
        .map(|(u, w)| (u / c, w * scale))
        .filter(|&(_, w)| w > 0.0)
        .collect();
    let angular_weight = PI / angular_count as f64;
    let rays: Vec<Complex64> = (0..angular_count)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / angular_count as f64))
        .collect();
    let nodes = radial_nodes
        .iter()
        .flat_map(|&(t, w)| {
            let r = t.sqrt();
            rays.iter().map(move |&e| (e * r, w * angular_weight))
        })
        .collect();
    Ok(PlaneQuadrature {
        c,
        alpha,
        radial_nodes,
        angular_count,
        nodes,
    })
}

/// Generalized Gauss–Laguerre rule for `∫_0^∞ h(u) u^α e^{−u} du`.
///
/// Nodes are the eigenvalues of the Jacobi matrix (diagonal `2k+α+1`,
/// off-diagonal `√(k(k+α))`) located by Sturm-sequence bisection; weights
/// come from the Christoffel function `1/Σ_k p_k(x)²` of the orthonormal
/// polynomials, accumulated with a running exponent so large nodes do not
/// overflow.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Vec<(f64, f64)> {
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off2: Vec<f64> = (0..n).map(|k| k as f64 * (k as f64 + alpha)).collect();
    let upper = 4.0 * n as f64 + 2.0 * alpha.abs() + 10.0;
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for k in 0..n {
            d = if k == 0 {
                diag[0] - x
            } else {
                let prev = if d == 0.0 { f64::EPSILON } else { d };
                diag[k] - x - off2[k] / prev
            };
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    let ln_p0 = -0.5 * ln_gamma(alpha + 1.0);
    (0..n)
        .into_par_iter()
        .map(|i| {
            // The i-th eigenvalue is the smallest x with more than i below it.
            let (mut lo, mut hi) = (0.0, upper);
            loop {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if count_below(mid) > i {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let x = 0.5 * (lo + hi);
            (x, christoffel_weight(x, n, alpha, ln_p0))
        })
        .collect()
}

fn christoffel_weight(x: f64, n: usize, alpha: f64, ln_p0: f64) -> f64 {
    const BIG: f64 = 1e150;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut sum = 1.0;
    // Values are stored as cur·e^{log_scale}; p_0 = e^{ln_p0}.
    let mut log_scale = ln_p0;
    for k in 0..n.saturating_sub(1) {
        let a = 2.0 * k as f64 + alpha + 1.0;
        let b_k = (k as f64 * (k as f64 + alpha)).sqrt();
        let b_next = ((k + 1) as f64 * (k as f64 + 1.0 + alpha)).sqrt();
        let next = ((x - a) * cur - b_k * prev) / b_next;
        prev = cur;
        cur = next;
        sum += cur * cur;
        if cur.abs() > BIG {
            prev /= BIG;
            cur /= BIG;
            sum /= BIG * BIG;
            log_scale += BIG.ln();
        }
    }
    (-sum.ln() - 2.0 * log_scale).exp()
}

/// `∫ g(z) |z|^{2α} e^{−c|z|²} dA` with the rule's `(c, α)`.
///
/// Integrand values are produced in parallel into node order and then
/// summed pairwise, so the result does not depend on the thread schedule.
pub fn integrate_plane<T, G>(rule: &PlaneQuadrature, g: G) -> Result<T>
where
    T: QuadValue,
    G: Fn(Complex64) -> T + Sync,
{
    weighted_sum(&rule.nodes, Complex64::new(0.0, 0.0), g)
}

/// `∫ g(z) e^{−c|z − center|²} dA`, using the rule's nodes shifted to the
/// center. Requires a rule without radial power.
pub fn integrate_plane_shifted<T, G>(rule: &PlaneQuadrature, center: Complex64, g: G) -> Result<T>
where
    T: QuadValue,
    G: Fn(Complex64) -> T + Sync,
{
    if rule.alpha != 0.0 {
        return Err(Error::Config(
            "shifted integration needs a rule with radial power 0".into(),
        ));
    }
    weighted_sum(&rule.nodes, center, g)
}

fn weighted_sum<T, G>(nodes: &[(Complex64, f64)], shift: Complex64, g: G) -> Result<T>
where
    T: QuadValue,
    G: Fn(Complex64) -> T + Sync,
{
    let values: Vec<T> = nodes
        .par_iter()
        .with_min_len(256)
        .map(|&(z, w)| g(z + shift) * w)
        .collect();
    if let Some(index) = values.iter().position(|v| !v.is_finite_value()) {
        return Err(Error::NonFinite {
            index,
            z: nodes[index].0 + shift,
        });
    }
    Ok(pairwise_sum(&values))
}

/// Open Euclidean disk `B(center, radius)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskRegion {
    center: Complex64,
    radius: f64,
}

impl DiskRegion {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Domain(format!(
                "disk radius must be positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }
}

/// `∫_{B} g dA` by a Gauss–Legendre rule in the radius (weight `r dr`) times
/// the trapezoid rule in angle, about the disk center.
///
/// The budget is split as `n_r ≈ √(budget/2)` radial and
/// `budget / n_r` angular nodes.
pub fn integrate_disk<T, G>(region: &DiskRegion, g: G, node_budget: usize) -> Result<T>
where
    T: QuadValue,
    G: Fn(Complex64) -> T + Sync,
{
    if node_budget < MIN_DISK_BUDGET {
        return Err(Error::Domain(format!(
            "disk node budget must be at least {MIN_DISK_BUDGET}, got {node_budget}"
        )));
    }
    let n_r = ((node_budget as f64 / 2.0).sqrt().round() as usize).max(2);
    let n_theta = (node_budget / n_r).max(4);
    let radius = region.radius;
    let angular_weight = 2.0 * PI / n_theta as f64;
    let nodes: Vec<(Complex64, f64)> = gauss_legendre(n_r)
        .into_iter()
        .flat_map(|(x, w)| {
            let r = 0.5 * radius * (x + 1.0);
            let wr = 0.5 * radius * w * r * angular_weight;
            (0..n_theta).map(move |k| {
                let theta = 2.0 * PI * k as f64 / n_theta as f64;
                (Complex64::from_polar(r, theta), wr)
            })
        })
        .collect();
    weighted_sum(&nodes, region.center, g)
}

/// Gauss–Legendre nodes and weights on `[−1, 1]` by Newton iteration from
/// Chebyshev-like starting points.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1e-3) {
                    dp = legendre_with_derivative(n, x).1;
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Adaptive bisection with an `n`-point Gauss–Legendre panel rule on `[a, b]`.
///
/// A panel is accepted when its estimate and the sum over its two halves
/// differ by at most its share of `tolerance`; refinement stops at
/// `MAX_ADAPTIVE_DEPTH` levels. Every returned value is the finer estimate.
#[derive(Debug, Clone)]
pub struct AdaptiveGauss {
    nodes: Vec<(f64, f64)>,
}

pub const MAX_ADAPTIVE_DEPTH: usize = 60;
/// Panel differences below this multiple of the panel magnitude are roundoff.
const ROUNDOFF_FLOOR: f64 = 64.0 * f64::EPSILON;

impl AdaptiveGauss {
    pub fn new(order: usize) -> Self {
        Self {
            nodes: gauss_legendre(order.max(2)),
        }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    fn panel<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        let values: Vec<f64> = self
            .nodes
            .iter()
            .map(|&(x, w)| w * f(mid + half * x))
            .collect();
        half * pairwise_sum(&values)
    }

    /// `∫_a^b f` to absolute `tolerance`; `breakpoints` inside `(a, b)` start
    /// new panels, which keeps known kinks on panel edges.
    pub fn integrate<F: Fn(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
        breakpoints: &[f64],
        tolerance: f64,
    ) -> f64 {
        let mut edges = vec![a];
        let mut inner: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&x| x > a && x < b)
            .collect();
        inner.sort_by(f64::total_cmp);
        edges.extend(inner);
        edges.push(b);
        let width = b - a;
        let parts: Vec<f64> = edges
            .windows(2)
            .map(|e| {
                let whole = self.panel(&f, e[0], e[1]);
                self.refine(&f, e[0], e[1], whole, tolerance * (e[1] - e[0]) / width, 0)
            })
            .collect();
        pairwise_sum(&parts)
    }

    fn refine<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        whole: f64,
        tolerance: f64,
        depth: usize,
    ) -> f64 {
        let mid = 0.5 * (a + b);
        let left = self.panel(f, a, mid);
        let right = self.panel(f, mid, b);
        let diff = (left + right - whole).abs();
        if diff <= tolerance
            || diff <= ROUNDOFF_FLOOR * (left.abs() + right.abs())
            || depth >= MAX_ADAPTIVE_DEPTH
            || mid <= a
            || mid >= b
        {
            return left + right;
        }
        self.refine(f, a, mid, left, 0.5 * tolerance, depth + 1)
            + self.refine(f, mid, b, right, 0.5 * tolerance, depth + 1)
    }
}

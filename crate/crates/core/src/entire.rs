//! Entire functions represented by finite Taylor data.
//!
//! Every function handled by the laboratory is a polynomial truncation
//! `f(z) = Σ coeffs[n] z^n`. Trailing zero coefficients are trimmed on
//! construction, so the zero function is the empty coefficient list.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Largest degree produced by constructors that take a cap into account
/// (currently [`crate::special::basis`]).
pub const DEFAULT_DEGREE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EntireFunction {
    coeffs: Vec<Complex64>,
}

impl EntireFunction {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs
            .last()
            .is_some_and(|c| *c == Complex64::new(0.0, 0.0))
        {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `c z^n`.
    pub fn monomial(n: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`; zero beyond the stored range.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Largest index with a nonzero coefficient, `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation, highest degree first.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// The `m`-th derivative. Coefficient `n` of the result is
    /// `coeffs[n+m] (n+m)!/n!`, with the factorial ratio accumulated as a
    /// running product.
    pub fn derivative(&self, m: usize) -> Self {
        if m == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= m {
            return Self::zero();
        }
        let out = (0..self.coeffs.len() - m)
            .map(|n| self.coeffs[n + m] * falling_factorial(n + m, m))
            .collect();
        Self::new(out)
    }

    /// `z^m f(z)`.
    pub fn monomial_shift(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); m];
        out.extend_from_slice(&self.coeffs);
        Self { coeffs: out }
    }

    /// Truncation to degree `≤ m − 1`; `m = 0` gives the zero function.
    pub fn taylor_section(&self, m: usize) -> Self {
        Self::new(self.coeffs.iter().take(m).copied().collect())
    }

    /// `f^{(k)}(0) = k! coeffs[k]`.
    pub fn derivative_at_zero(&self, k: usize) -> Complex64 {
        self.coefficient(k) * falling_factorial(k, k)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }
}

/// `n!/(n−k)! = n (n−1) ⋯ (n−k+1)` as a running product.
pub(crate) fn falling_factorial(n: usize, k: usize) -> f64 {
    ((n + 1 - k)..=n).fold(1.0, |acc, j| acc * j as f64)
}

fn combine(a: &EntireFunction, b: &EntireFunction, sign: f64) -> EntireFunction {
    let len = a.coeffs.len().max(b.coeffs.len());
    EntireFunction::new(
        (0..len)
            .map(|n| a.coefficient(n) + b.coefficient(n) * sign)
            .collect(),
    )
}

impl Add for &EntireFunction {
    type Output = EntireFunction;
    fn add(self, rhs: Self) -> EntireFunction {
        combine(self, rhs, 1.0)
    }
}

impl Sub for &EntireFunction {
    type Output = EntireFunction;
    fn sub(self, rhs: Self) -> EntireFunction {
        combine(self, rhs, -1.0)
    }
}

impl Neg for &EntireFunction {
    type Output = EntireFunction;
    fn neg(self) -> EntireFunction {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &EntireFunction {
    type Output = EntireFunction;
    fn mul(self, rhs: Complex64) -> EntireFunction {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluate_examples() {
        let f = EntireFunction::from_real(&[1.0, 1.0]);
        assert_eq!(f.evaluate(c(0.0, 1.0)), c(1.0, 1.0));
        let g = EntireFunction::monomial(2, c(1.0, 0.0));
        assert_eq!(g.evaluate(c(2.0, 0.0)), c(4.0, 0.0));
        let e4 = EntireFunction::from_real(&[1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0]);
        let v = e4.evaluate(c(1.0, 0.0));
        assert!((v.re - 65.0 / 24.0).abs() < 1e-15 && v.im == 0.0);
    }

    #[test]
    fn derivative_examples() {
        let z3 = EntireFunction::monomial(3, c(1.0, 0.0));
        assert_eq!(z3.derivative(1), EntireFunction::monomial(2, c(3.0, 0.0)));
        assert_eq!(z3.derivative(3), EntireFunction::constant(c(6.0, 0.0)));
        let five = EntireFunction::constant(c(5.0, 0.0));
        assert!(five.derivative(2).is_zero());
        assert_eq!(z3.derivative(0), z3);
    }

    #[test]
    fn shift_and_section_examples() {
        let one = EntireFunction::constant(c(1.0, 0.0));
        assert_eq!(
            one.monomial_shift(2),
            EntireFunction::monomial(2, c(1.0, 0.0))
        );
        let f = EntireFunction::from_real(&[1.0, 1.0]);
        assert_eq!(
            f.monomial_shift(1),
            EntireFunction::from_real(&[0.0, 1.0, 1.0])
        );

        let g = EntireFunction::from_real(&[1.0, 1.0, 1.0]);
        assert_eq!(g.taylor_section(2), EntireFunction::from_real(&[1.0, 1.0]));
        let z3 = EntireFunction::monomial(3, c(1.0, 0.0));
        assert!(z3.taylor_section(3).is_zero());
        assert!(g.taylor_section(0).is_zero());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let f = EntireFunction::from_real(&[1.0, 2.0, 0.0, 0.0]);
        assert_eq!(f.degree(), Some(1));
        assert_eq!(EntireFunction::from_real(&[0.0, 0.0]).degree(), None);
        assert_eq!(f.evaluate(c(3.0, 0.0)), c(7.0, 0.0));
    }

    #[test]
    fn derivative_degree_drops_by_one() {
        let f = EntireFunction::from_real(&[1.0, -2.0, 0.5, 4.0]);
        assert_eq!(f.derivative(1).degree(), Some(2));
        assert_eq!(f.derivative_at_zero(3), c(24.0, 0.0));
    }

    /// Neumaier-compensated sum of `c_n z^n` with powers formed by repeated
    /// multiplication, independent of the Horner recursion.
    fn compensated_power_sum(coeffs: &[Complex64], z: Complex64) -> (Complex64, f64) {
        let (mut sr, mut cr, mut si, mut ci) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
        let mut scale = 0.0;
        let mut pow = c(1.0, 0.0);
        for &a in coeffs {
            let t = a * pow;
            scale += t.norm();
            for (s, comp, x) in [(&mut sr, &mut cr, t.re), (&mut si, &mut ci, t.im)] {
                let u = *s + x;
                if s.abs() >= x.abs() {
                    *comp += (*s - u) + x;
                } else {
                    *comp += (x - u) + *s;
                }
                *s = u;
            }
            pow *= z;
        }
        (c(sr + cr, si + ci), scale)
    }

    fn coeff_strategy(max_len: usize) -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=max_len)
            .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
    }

    proptest! {
        #[test]
        fn horner_matches_compensated_sum(
            coeffs in coeff_strategy(51),
            r in 0.0..10.0f64,
            theta in 0.0..std::f64::consts::TAU,
        ) {
            let z = Complex64::from_polar(r, theta);
            let f = EntireFunction::new(coeffs.clone());
            let (reference, scale) = compensated_power_sum(&coeffs, z);
            let err = (f.evaluate(z) - reference).norm();
            prop_assert!(err <= 1e-13 * scale.max(f64::MIN_POSITIVE), "err {err} scale {scale}");
        }

        #[test]
        fn shift_multiplies_by_power(
            coeffs in coeff_strategy(12),
            m in 0usize..6,
            re in -2.0..2.0f64,
            im in -2.0..2.0f64,
        ) {
            let z = c(re, im);
            let f = EntireFunction::new(coeffs);
            let lhs = f.monomial_shift(m).evaluate(z);
            let rhs = z.powu(m as u32) * f.evaluate(z);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }

        #[test]
        fn section_splits_coefficients(coeffs in coeff_strategy(15), m in 0usize..18) {
            let f = EntireFunction::new(coeffs);
            let head = f.taylor_section(m);
            let tail = &f - &head;
            for n in 0..m {
                prop_assert_eq!(tail.coefficient(n), c(0.0, 0.0));
            }
            prop_assert_eq!(&head + &tail, f);
        }

        #[test]
        fn product_rule(coeffs in coeff_strategy(12), re in -3.0..3.0f64, im in -3.0..3.0f64) {
            let z = c(re, im);
            let f = EntireFunction::new(coeffs);
            let lhs = f.monomial_shift(1).derivative(1).evaluate(z);
            let rhs = f.evaluate(z) + z * f.derivative(1).evaluate(z);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
        }
    }
}

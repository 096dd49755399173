//! Run configuration. Every default lives in [`Config::default`]:
//!
//! | key                | default | meaning                                          |
//! |--------------------|---------|--------------------------------------------------|
//! | `seed`             | 1       | random polynomial families                       |
//! | `radial_degree`    | 60      | radial Gauss–Laguerre nodes                      |
//! | `angular_count`    | 128     | angular trapezoid nodes                          |
//! | `tolerance`        | 1e-8    | quadrature-level identities (relative)           |
//! | `kernel_tolerance` | 1e-12   | kernel and series identities                     |
//! | `basis_tolerance`  | 1e-10   | Gram matrix and series/closed-form agreement     |
//! | `norm_tolerance`   | 1e-9    | unit norm of the constant function               |
//! | `family_size`      | 200     | random polynomials per family                    |
//! | `degree_cap`       | 20      | largest random degree                            |
//! | `narrow_cap`       | 15      | degree cap of the truncated comparison family    |
//! | `band_widening`    | 0.1     | allowed relative growth of the equivalence band  |
//! | `sigma`            | 0.5     | lower end of the series and remainder grids      |
//! | `x_max`            | 40      | upper end of the series grid                     |
//! | `r`                | 1       | Carleson disk radius                             |
//! | `window`           | none    | Carleson window (none: max(support radius, 2r))  |
//! | `spacing`          | none    | lattice spacing (none: r/2)                      |
//! | `growth_factor`    | 1.05    | Carleson stabilization factor                    |
//!
//! A TOML file may set any subset of the keys; unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{Resolution, MAX_RADIAL_NODES};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub radial_degree: usize,
    pub angular_count: usize,
    pub tolerance: f64,
    pub kernel_tolerance: f64,
    pub basis_tolerance: f64,
    pub norm_tolerance: f64,
    pub family_size: usize,
    pub degree_cap: usize,
    pub narrow_cap: usize,
    pub band_widening: f64,
    pub sigma: f64,
    pub x_max: f64,
    pub r: f64,
    pub window: Option<f64>,
    pub spacing: Option<f64>,
    pub growth_factor: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 1,
            radial_degree: 60,
            angular_count: 128,
            tolerance: 1e-8,
            kernel_tolerance: 1e-12,
            basis_tolerance: 1e-10,
            norm_tolerance: 1e-9,
            family_size: 200,
            degree_cap: 20,
            narrow_cap: 15,
            band_widening: 0.1,
            sigma: 0.5,
            x_max: 40.0,
            r: 1.0,
            window: None,
            spacing: None,
            growth_factor: 1.05,
        }
    }
}

impl Config {
    /// Defaults overlaid with the file at `path`, if any.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let config = match path {
            Some(path) => Self::parse(&std::fs::read_to_string(path)?)?,
            None => Self::default(),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn resolution(&self) -> Resolution {
        Resolution::new(self.radial_degree, self.angular_count)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tolerance", self.tolerance),
            ("kernel_tolerance", self.kernel_tolerance),
            ("basis_tolerance", self.basis_tolerance),
            ("norm_tolerance", self.norm_tolerance),
            ("band_widening", self.band_widening),
            ("sigma", self.sigma),
            ("r", self.r),
            ("window", self.window.unwrap_or(1.0)),
            ("spacing", self.spacing.unwrap_or(1.0)),
        ];
        for (key, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Config(format!(
                    "`{key}` must be positive and finite, got {value}"
                )));
            }
        }
        if !(self.x_max > self.sigma) || !self.x_max.is_finite() {
            return Err(Error::Config(format!(
                "`x_max` must exceed `sigma`, got {}",
                self.x_max
            )));
        }
        if !(self.growth_factor >= 1.0) || !self.growth_factor.is_finite() {
            return Err(Error::Config(format!(
                "`growth_factor` must be at least 1, got {}",
                self.growth_factor
            )));
        }
        if self.radial_degree < 2 || self.radial_degree > MAX_RADIAL_NODES || self.angular_count < 8
        {
            return Err(Error::Config(format!(
                "resolution out of range: {} radial, {} angular nodes",
                self.radial_degree, self.angular_count
            )));
        }
        if self.family_size == 0 || self.narrow_cap >= self.degree_cap {
            return Err(Error::Config(format!(
                "need a non-empty family and narrow_cap < degree_cap, got {} functions, caps {} and {}",
                self.family_size, self.narrow_cap, self.degree_cap
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults() {
        let c = Config::parse("seed = 9\nradial_degree = 80\n").unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.resolution(), Resolution::new(80, 128));
        assert_eq!(c.tolerance, 1e-8);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(matches!(Config::parse("sed = 9"), Err(Error::Config(_))));
        assert!(matches!(
            Config::parse("tolerance = -1.0"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            Config::parse("narrow_cap = 30"),
            Err(Error::Config(_))
        ));
        assert!(Config::default().validate().is_ok());
    }
}

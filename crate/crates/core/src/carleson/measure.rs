//! Finite atomic measures and their file formats.
//!
//! Text format: one atom per line, `x y mass`, whitespace separated; blank
//! lines and lines starting with `#` are ignored. Structured format: a JSON
//! document `{"atoms": [{"x": .., "y": .., "mass": ..}, ..]}`, recognized by
//! a leading `{`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub position: Complex64,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            check_atom(a.position.re, a.position.im, a.mass)
                .map_err(|message| Error::Domain(format!("atom #{i}: {message}")))?;
        }
        Ok(Self { atoms })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().fold(0.0, |acc, a| acc + a.mass)
    }

    /// Largest `|position|` over the atoms; 0 for the empty measure.
    pub fn support_radius(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.position.norm())
            .fold(0.0, f64::max)
    }

    /// Every mass multiplied by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(
            self.atoms
                .iter()
                .map(|a| Atom {
                    position: a.position,
                    mass: a.mass * lambda,
                })
                .collect(),
        )
    }

    /// Every atom moved by `tau`.
    pub fn translated(&self, tau: Complex64) -> Self {
        Self {
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    position: a.position + tau,
                    mass: a.mass,
                })
                .collect(),
        }
    }

    /// Unit point mass at `position`.
    pub fn point(position: Complex64) -> Self {
        Self {
            atoms: vec![Atom {
                position,
                mass: 1.0,
            }],
        }
    }

    /// Atoms of mass `mass` on the integer lattice points with `|z| ≤ radius`.
    pub fn lattice(radius: f64, mass: f64) -> Result<Self> {
        let n = radius.floor() as i64;
        let mut atoms = Vec::new();
        for x in -n..=n {
            for y in -n..=n {
                let position = Complex64::new(x as f64, y as f64);
                if position.norm() <= radius {
                    atoms.push(Atom { position, mass });
                }
            }
        }
        Self::new(atoms)
    }

    /// Atoms of mass `1/(1+|n|)` at the integers `|n| ≤ count` on the real axis.
    pub fn decaying_line(count: i64) -> Self {
        Self {
            atoms: (-count..=count)
                .map(|n| Atom {
                    position: Complex64::new(n as f64, 0.0),
                    mass: 1.0 / (1.0 + n.abs() as f64),
                })
                .collect(),
        }
    }

    /// Atoms of mass `e^{n²}` at `z = n`, `n = 1..=count`.
    pub fn exponential_line(count: u32) -> Self {
        Self {
            atoms: (1..=count)
                .map(|n| Atom {
                    position: Complex64::new(n as f64, 0.0),
                    mass: ((n * n) as f64).exp(),
                })
                .collect(),
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            parse_json(text)
        } else {
            parse_text(text)
        }
    }

    /// The text format, one atom per line.
    pub fn to_text(&self) -> String {
        self.atoms
            .iter()
            .map(|a| format!("{:?} {:?} {:?}\n", a.position.re, a.position.im, a.mass))
            .collect()
    }
}

fn check_atom(x: f64, y: f64, mass: f64) -> std::result::Result<(), String> {
    if !x.is_finite() || !y.is_finite() {
        return Err(format!("coordinates must be finite, got ({x}, {y})"));
    }
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(format!("mass must be positive and finite, got {mass}"));
    }
    Ok(())
}

fn parse_text(text: &str) -> Result<DiscreteMeasure> {
    let mut atoms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected `x y mass`, found {} fields", fields.len()),
            });
        }
        let mut values = [0.0; 3];
        for (slot, field) in values.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| Error::Parse {
                line,
                message: format!("`{field}` is not a decimal number"),
            })?;
        }
        let [x, y, mass] = values;
        check_atom(x, y, mass).map_err(|message| Error::Parse { line, message })?;
        atoms.push(Atom {
            position: Complex64::new(x, y),
            mass,
        });
    }
    Ok(DiscreteMeasure { atoms })
}

#[derive(Serialize, Deserialize)]
struct AtomRecord {
    x: f64,
    y: f64,
    mass: f64,
}

#[derive(Serialize, Deserialize)]
struct MeasureDocument {
    atoms: Vec<AtomRecord>,
}

fn parse_json(text: &str) -> Result<DiscreteMeasure> {
    let doc: MeasureDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let mut atoms = Vec::with_capacity(doc.atoms.len());
    for (i, a) in doc.atoms.iter().enumerate() {
        check_atom(a.x, a.y, a.mass).map_err(|message| Error::Parse {
            line: line_of_atom(text, i).unwrap_or(0),
            message: format!("atom #{i}: {message}"),
        })?;
        atoms.push(Atom {
            position: Complex64::new(a.x, a.y),
            mass: a.mass,
        });
    }
    Ok(DiscreteMeasure { atoms })
}

/// Line of the `index`-th occurrence of a `"mass"` key, for error messages.
fn line_of_atom(text: &str, index: usize) -> Option<usize> {
    let mut seen = 0;
    for (i, line) in text.lines().enumerate() {
        for _ in line.matches("\"mass\"") {
            if seen == index {
                return Some(i + 1);
            }
            seen += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_with_comments() {
        let mu = DiscreteMeasure::parse("# header\n0 0 1\n\n 1.5 -2 0.25\n").unwrap();
        assert_eq!(mu.atoms().len(), 2);
        assert_eq!(mu.atoms()[1].position, Complex64::new(1.5, -2.0));
        assert_eq!(mu.atoms()[1].mass, 0.25);
    }

    #[test]
    fn rejects_bad_lines_with_line_numbers() {
        let err = DiscreteMeasure::parse("0 0 1\n1 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = DiscreteMeasure::parse("0 0 1\n\n1 inf 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = DiscreteMeasure::parse("0 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = DiscreteMeasure::parse("0 0 -1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = DiscreteMeasure::parse("a 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn parses_json() {
        let text = "{\n  \"atoms\": [\n    {\"x\": 1, \"y\": 2, \"mass\": 3}\n  ]\n}";
        let mu = DiscreteMeasure::parse(text).unwrap();
        assert_eq!(mu.atoms()[0].position, Complex64::new(1.0, 2.0));
        let bad = "{\n\"atoms\": [\n{\"x\": 1, \"y\": 2, \"mass\": 3},\n{\"x\": 1, \"y\": 2, \"mass\": 0}\n]}";
        assert!(matches!(
            DiscreteMeasure::parse(bad),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            DiscreteMeasure::parse("{\"atoms\": 3}"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let mu = DiscreteMeasure::decaying_line(3);
        assert_eq!(DiscreteMeasure::parse(&mu.to_text()).unwrap(), mu);
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(DiscreteMeasure::lattice(1.0, 1.0).unwrap().atoms().len(), 5);
        assert_eq!(
            DiscreteMeasure::lattice(10.0, 1.0).unwrap().atoms().len(),
            317
        );
    }
}

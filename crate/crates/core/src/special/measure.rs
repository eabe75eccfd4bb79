use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point mass `weight * δ(location)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// A finite positive measure on `(0, ∞)` stored as atoms with strictly
/// increasing locations. The empty list is the zero measure.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds the canonical form from `(location, weight)` pairs: sorted by
    /// location, with weights at repeated locations summed.
    pub fn new(atoms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut parsed = Vec::new();
        for (location, weight) in atoms {
            if !(location.is_finite() && location > 0.0) {
                return Err(Error::parameter(format!(
                    "atom location must be a positive finite real, got {location}"
                )));
            }
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::parameter(format!(
                    "atom weight must be a positive finite real, got {weight}"
                )));
            }
            parsed.push(Atom { location, weight });
        }
        parsed.sort_by(|a, b| a.location.total_cmp(&b.location));
        let mut merged: Vec<Atom> = Vec::with_capacity(parsed.len());
        for atom in parsed {
            match merged.last_mut() {
                Some(last) if last.location == atom.location => last.weight += atom.weight,
                _ => merged.push(atom),
            }
        }
        Ok(Self { atoms: merged })
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// `Σ w_i k(s_i)`.
    pub fn integrate(&self, kernel: impl Fn(f64) -> f64) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.weight * kernel(a.location))
            .sum()
    }
}

impl TryFrom<Vec<(f64, f64)>> for DiscreteMeasure {
    type Error = Error;

    fn try_from(atoms: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(atoms)
    }
}

impl From<DiscreteMeasure> for Vec<(f64, f64)> {
    fn from(measure: DiscreteMeasure) -> Self {
        measure
            .atoms
            .into_iter()
            .map(|a| (a.location, a.weight))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_sorts_and_merges() {
        let m = DiscreteMeasure::new([(3.0, 1.0), (1.0, 2.0), (3.0, 0.5)]).unwrap();
        assert_eq!(
            m.atoms(),
            &[
                Atom {
                    location: 1.0,
                    weight: 2.0
                },
                Atom {
                    location: 3.0,
                    weight: 1.5
                }
            ]
        );
    }

    #[test]
    fn rejects_nonpositive_atoms() {
        assert!(DiscreteMeasure::new([(0.0, 1.0)]).is_err());
        assert!(DiscreteMeasure::new([(1.0, -1.0)]).is_err());
        assert!(DiscreteMeasure::new([(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn empty_is_zero() {
        assert!(DiscreteMeasure::new([]).unwrap().is_zero());
        assert_eq!(DiscreteMeasure::zero().total_mass(), 0.0);
    }
}

//! Loader for structures given in ambient z-coordinates.
//!
//! This is the on-disk interchange format and the form in which the
//! catalog stores its table rows: Σ as covectors, Σ∨ as vectors, ℓ as a
//! covector, and generators as matrices acting on points. Everything is
//! converted to Σ/Σ∨-coordinates before any computation; downstream
//! modules never see the ambient space (which may be a proper subspace
//! of ℂ^m).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::{LinearForm, Rational, Weight};
use crate::{Error, Result};

use super::builder::{OrbitLabel, StructureSpec};
use super::group::{GroupElement, DEFAULT_GROUP_BOUND};
use super::StructureData;

/// Sign relation of a Σ element to its ±W-orbit representative:
/// `Plain` (ω ∈ W·rep), `Minus` (−ω ∈ W·rep), or `PlusMinus`
/// (−ω ∈ W·ω, so the sign is immaterial).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignMark {
    Plain,
    Minus,
    PlusMinus,
}

impl SignMark {
    pub fn parse(label: &str) -> (SignMark, &str) {
        if let Some(rest) = label.strip_prefix("+-") {
            (SignMark::PlusMinus, rest)
        } else if let Some(rest) = label.strip_prefix('-') {
            (SignMark::Minus, rest)
        } else {
            (SignMark::Plain, label)
        }
    }

    pub fn render(self, base: &str) -> String {
        match self {
            SignMark::Plain => base.to_string(),
            SignMark::Minus => format!("-{base}"),
            SignMark::PlusMinus => format!("+-{base}"),
        }
    }
}

/// A structure in ambient coordinates, serializable as JSON.
///
/// `sigma` rows are covectors (coefficients of the z_i), `sigma_check`
/// rows are vectors, `generators` act on points v ↦ A·v. `orbit_labels`
/// use the prefixes `-` and `+-` for the sign relation. `k` assigns a
/// rational parameter to each orbit label; `rho_params`, when present,
/// overrides `k` for the construction of ρ. `delta_plus`, `phi_plus`
/// and `rho` are optional cross-check rows: loading fails if the
/// derived data disagrees with them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmbientStructure {
    pub ambient_dim: usize,
    pub sigma: Vec<Vec<Rational>>,
    pub sigma_check: Vec<Vec<Rational>>,
    pub ell: Vec<Rational>,
    pub generators: Vec<Vec<Vec<Rational>>>,
    pub orbit_labels: Vec<String>,
    #[serde(default)]
    pub k: BTreeMap<String, Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_params: Option<BTreeMap<String, Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_plus: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_plus: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Vec<Rational>>,
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn mat_apply(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| dot(row, v)).collect()
}

impl AmbientStructure {
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// Σ-coordinates of an ambient covector: its values on Σ∨.
    pub fn form_to_sigma(&self, covector: &[Rational]) -> LinearForm {
        LinearForm::new(
            self.sigma_check
                .iter()
                .map(|v| dot(covector, v))
                .collect(),
        )
    }

    /// Σ∨-coordinates of an ambient point: the values of Σ on it.
    pub fn point_to_sigma_check(&self, point: &[Rational]) -> Weight {
        Weight::new(self.sigma.iter().map(|u| dot(u, point)).collect())
    }

    /// Ambient coordinates of a weight given in Σ∨-coordinates.
    pub fn weight_to_ambient(&self, w: &Weight) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (j, v) in self.sigma_check.iter().enumerate() {
            for (i, c) in v.iter().enumerate() {
                out[i] += w.coord(j) * c;
            }
        }
        out
    }

    fn validate_shapes(&self) -> Result<()> {
        let r = self.rank();
        let m = self.ambient_dim;
        let ok = self.sigma.iter().all(|u| u.len() == m)
            && self.sigma_check.len() == r
            && self.sigma_check.iter().all(|v| v.len() == m)
            && self.ell.len() == m
            && self.orbit_labels.len() == r
            && self
                .generators
                .iter()
                .all(|a| a.len() == m && a.iter().all(|row| row.len() == m));
        if !ok {
            return Err(Error::InvalidStructure(
                "ambient data shapes are inconsistent".into(),
            ));
        }
        Ok(())
    }

    /// Convert to a Σ-coordinate spec, checking duality and that every
    /// generator preserves the span of Σ∨ and both lattices.
    pub fn to_spec(&self, group_bound: usize) -> Result<StructureSpec> {
        self.validate_shapes()?;
        let r = self.rank();
        for (i, u) in self.sigma.iter().enumerate() {
            for (j, v) in self.sigma_check.iter().enumerate() {
                let expected = if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if dot(u, v) != expected {
                    return Err(Error::InvalidStructure(format!(
                        "Σ/Σ∨ are not dual bases at ({i},{j})"
                    )));
                }
            }
        }
        let mut generators = Vec::with_capacity(self.generators.len());
        for a in &self.generators {
            // weight action in Σ∨-coordinates: column j = coords of A·η_j
            let mut nw = vec![vec![0i64; r]; r];
            for j in 0..r {
                let image = mat_apply(a, &self.sigma_check[j]);
                let coords = self.point_to_sigma_check(&image);
                // A must preserve V = span(Σ∨): the image must reconstruct
                let recon = self.weight_to_ambient(&coords);
                if recon != image {
                    return Err(Error::InvalidStructure(
                        "a generator does not preserve the span of Σ∨".into(),
                    ));
                }
                for i in 0..r {
                    nw[i][j] = coords.coord(i).as_i64().ok_or_else(|| {
                        Error::InvalidStructure(
                            "a generator does not preserve the dual lattice Γ∨".into(),
                        )
                    })?;
                }
            }
            generators.push(GroupElement::from_weight_matrix(nw)?);
        }
        let labels = self
            .orbit_labels
            .iter()
            .map(|l| {
                let (sign, base) = SignMark::parse(l);
                OrbitLabel {
                    base: base.to_string(),
                    sign,
                }
            })
            .collect();
        Ok(StructureSpec {
            rank: r,
            generators,
            ell: self.form_to_sigma(&self.ell),
            labels,
            k: self.k.clone(),
            rho_params: self.rho_params.clone(),
            group_bound,
        })
    }

    /// Build the validated structure and run every cross-check the
    /// ambient data carries (Δ⁺, Φ⁺, ρ row).
    pub fn build(&self, group_bound: usize) -> Result<StructureData> {
        let spec = self.to_spec(group_bound)?;
        let s = spec.build()?;
        if let Some(delta_rows) = &self.delta_plus {
            let mut expected: Vec<LinearForm> = delta_rows
                .iter()
                .map(|row| {
                    self.form_to_sigma(row)
                        .primitive_part()
                        .ok_or_else(|| {
                            Error::InvalidStructure("Δ⁺ cross-check row is zero on V".into())
                        })
                })
                .collect::<Result<_>>()?;
            expected.sort();
            expected.dedup();
            let mut derived: Vec<LinearForm> = s
                .delta_plus
                .iter()
                .map(|rd| rd.root.clone())
                .collect();
            derived.sort();
            if expected != derived {
                return Err(Error::OrbitMismatch(
                    "stored Δ⁺ rows disagree with the roots derived from W".into(),
                ));
            }
        }
        if let Some(phi_rows) = &self.phi_plus {
            let mut expected: Vec<LinearForm> =
                phi_rows.iter().map(|row| self.form_to_sigma(row)).collect();
            expected.sort();
            expected.dedup();
            let mut derived = s.phi_plus.clone();
            derived.sort();
            if expected != derived {
                return Err(Error::OrbitMismatch(
                    "stored Φ⁺ rows disagree with the derived orbit WΣ".into(),
                ));
            }
        }
        if let Some(rho_row) = &self.rho {
            let expected = self.point_to_sigma_check(rho_row);
            if self.weight_to_ambient(&expected) != *rho_row {
                return Err(Error::InvalidStructure(
                    "stored ρ row does not lie in the span of Σ∨".into(),
                ));
            }
            if expected != *s.rho() {
                return Err(Error::OrbitMismatch(
                    "stored ρ row disagrees with the ρ built from the parameters".into(),
                ));
            }
        }
        Ok(s)
    }

    pub fn build_default(&self) -> Result<StructureData> {
        self.build(DEFAULT_GROUP_BOUND)
    }
}

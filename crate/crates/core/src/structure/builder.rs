//! Assembly of a `StructureData` from Σ-coordinate input.

use std::collections::BTreeMap;

use crate::exact::{LinearForm, Rational, Weight};
use crate::{Error, Result};

use super::ambient::SignMark;
use super::group::{close_group, orbit, orbit_weight, GroupElement};
use super::{extract_roots, StructureData};

/// The ±W-orbit label of one Σ element: a class name plus the sign
/// relation of this element to the class representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLabel {
    pub base: String,
    pub sign: SignMark,
}

/// Σ-coordinate construction input. The basis forms are the unit
/// vectors, so only the group, ℓ, the orbit labels and the parameter
/// assignment need to be given.
pub struct StructureSpec {
    pub rank: usize,
    /// Generators of W as Γ-action matrices; each must be a reflection.
    pub generators: Vec<GroupElement>,
    pub ell: LinearForm,
    pub labels: Vec<OrbitLabel>,
    /// Parameter per orbit label; ρ is the point with ω_i(ρ) = k(label_i).
    pub k: BTreeMap<String, Rational>,
    /// Optional override for the ρ construction, keyed like `k`.
    pub rho_params: Option<BTreeMap<String, Rational>>,
    pub group_bound: usize,
}

impl StructureSpec {
    pub fn build(&self) -> Result<StructureData> {
        let r = self.rank;
        if self.ell.rank() != r || self.labels.len() != r {
            return Err(Error::InvalidStructure(
                "ℓ and orbit labels must match the rank".into(),
            ));
        }
        if !self.ell.is_integral() {
            return Err(Error::InvalidStructure("ℓ must lie in Γ".into()));
        }
        for g in &self.generators {
            if g.rank() != r {
                return Err(Error::InvalidStructure("generator rank mismatch".into()));
            }
            g.reflection_data()
                .map_err(|e| Error::NotAReflection(format!("generator {g:?}: {e}")))?;
        }
        let generators = self.generators.clone();
        let group = if generators.is_empty() {
            vec![GroupElement::identity(r)]
        } else {
            close_group(&generators, self.group_bound)?
        };

        let delta_plus = extract_roots(&group);

        // Φ = WΣ and Φ⁺ = {ω ∈ Φ : ω(Σ∨) ≥ 0}
        let mut phi_set = std::collections::BTreeSet::new();
        for j in 0..r {
            for w in orbit(&group, &LinearForm::unit(r, j), false) {
                phi_set.insert(w);
            }
        }
        let phi: Vec<LinearForm> = phi_set.into_iter().collect();
        let phi_plus: Vec<LinearForm> = phi
            .iter()
            .filter(|w| w.is_nonnegative())
            .cloned()
            .collect();

        // Derived ±W-orbit classes of Σ, validated against the labels.
        let plain_orbits: Vec<Vec<LinearForm>> = (0..r)
            .map(|j| orbit(&group, &LinearForm::unit(r, j), false))
            .collect();
        for i in 0..r {
            for j in 0..r {
                let same_label = self.labels[i].base == self.labels[j].base;
                let unit_i = LinearForm::unit(r, i);
                let in_plus = plain_orbits[j].contains(&unit_i);
                let in_minus = plain_orbits[j].contains(&(-&unit_i));
                if same_label != (in_plus || in_minus) {
                    return Err(Error::OrbitMismatch(format!(
                        "Σ elements {i} and {j}: label partition disagrees with ±W-orbits"
                    )));
                }
                if !same_label {
                    continue;
                }
                let self_negating = in_plus && in_minus;
                let marked_pm = self.labels[i].sign == SignMark::PlusMinus
                    && self.labels[j].sign == SignMark::PlusMinus;
                if i == j {
                    if self_negating != marked_pm {
                        return Err(Error::OrbitMismatch(format!(
                            "Σ element {i}: self-negation flag disagrees with orbit"
                        )));
                    }
                } else if !self_negating {
                    let same_sign = self.labels[i].sign == self.labels[j].sign;
                    if same_sign != in_plus {
                        return Err(Error::OrbitMismatch(format!(
                            "Σ elements {i} and {j}: sign relation disagrees with orbit"
                        )));
                    }
                }
            }
        }

        // ρ from the per-label parameters: ω_i(ρ) = value(label_i).
        let rho_source = self.rho_params.as_ref().unwrap_or(&self.k);
        let mut rho_coords = Vec::with_capacity(r);
        for l in &self.labels {
            let v = rho_source.get(&l.base).ok_or_else(|| {
                Error::InvalidCaseParams(format!("missing parameter for orbit label {:?}", l.base))
            })?;
            rho_coords.push(v.clone());
        }
        let rho = Weight::new(rho_coords);

        // ρ ∈ V₀ re-verified: equal values across each ±W-class.
        for i in 0..r {
            for j in 0..r {
                if self.labels[i].base == self.labels[j].base && rho.coord(i) != rho.coord(j) {
                    return Err(Error::InvalidStructure(format!(
                        "ρ is not in V₀: Σ elements {i} and {j} share an orbit but differ at ρ"
                    )));
                }
            }
        }

        // k_ω on all of Φ ∪ (−Φ), constant on ±W-orbits.
        let mut orbit_class: BTreeMap<LinearForm, (String, Rational)> = BTreeMap::new();
        for (j, label) in self.labels.iter().enumerate() {
            let k = self.k.get(&label.base).cloned().unwrap_or_else(|| {
                rho_source
                    .get(&label.base)
                    .expect("validated above")
                    .clone()
            });
            for w in orbit(&group, &LinearForm::unit(r, j), true) {
                match orbit_class.get(&w) {
                    Some((l, kk)) => {
                        if l != &label.base || kk != &k {
                            return Err(Error::OrbitMismatch(format!(
                                "Φ element {w:?} lies in two differently-labelled orbits"
                            )));
                        }
                    }
                    None => {
                        orbit_class.insert(w, (label.base.clone(), k.clone()));
                    }
                }
            }
        }

        // Σ₁∨ and Λ₁ = WΣ₁∨.
        let mut sigma1_check = Vec::new();
        for j in 0..r {
            if self.ell.coord(j) == &Rational::one() {
                sigma1_check.push(Weight::unit(r, j));
            }
        }
        let mut lambda1_set = std::collections::BTreeSet::new();
        for eta in &sigma1_check {
            for w in orbit_weight(&group, eta) {
                lambda1_set.insert(w);
            }
        }

        Ok(StructureData {
            rank: r,
            group,
            generators,
            delta_plus,
            phi,
            phi_plus,
            ell: self.ell.clone(),
            orbit_class,
            rho,
            sigma1_check,
            lambda1: lambda1_set.into_iter().collect(),
            labels: self.labels.clone(),
        })
    }
}

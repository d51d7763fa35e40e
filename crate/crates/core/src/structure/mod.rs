//! The validated quadruple (Γ, Σ, W, ℓ) with its derived data: roots,
//! Φ-orbits, parameter assignment k_ω, ρ, and the axiom suite.
//!
//! Everything internal lives in Σ-coordinates: the basis forms ω_i are
//! unit vectors, dual weights η_i are unit weights, and ambient
//! z-coordinates appear only in the loader ([`ambient`]).

mod ambient;
mod axioms;
mod builder;
mod group;

pub use ambient::{AmbientStructure, SignMark};
pub use axioms::{check_axioms, AxiomCheck, AxiomReport};
pub use builder::{OrbitLabel, StructureSpec};
pub use group::{close_group, orbit, orbit_weight, GroupElement, DEFAULT_GROUP_BOUND};

use std::collections::BTreeMap;

use crate::exact::{LinearForm, Polynomial, Rational, Weight};

/// A root of W with its coroot and Δ⁺-positivity flag. The root is a
/// primitive vector of Γ spanning the (−1)-eigenspace of a reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub root: LinearForm,
    pub coroot: Weight,
    /// root(Σ∨) ≥ 0, i.e. the stored representative lies in Δ⁺.
    pub positive: bool,
}

/// Exact arithmetic classification of ρ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhoClassification {
    /// α(ρ) ≠ 0 for all α ∈ Δ⁺.
    pub regular: bool,
    /// α(ρ) ∉ ℤ_{<0} for all α ∈ Δ⁺.
    pub dominant: bool,
    /// regular, dominant, and ω(ρ)−k_ω ∉ ℤ_{<0}, ω(ρ)+k_ω ∉ ℤ_{≤0}
    /// for all ω ∈ Φ⁺.
    pub strongly_dominant: bool,
    /// α(ρ) ∉ ℤ for all α ∈ Δ.
    pub non_integral: bool,
}

/// A validated structure: the group closure, derived root and Φ data,
/// the ±W-orbit classes of Σ with their parameters, and ρ ∈ V₀.
/// Immutable after construction; all operations on it are pure.
#[derive(Clone)]
pub struct StructureData {
    pub(crate) rank: usize,
    pub(crate) group: Vec<GroupElement>,
    pub(crate) generators: Vec<GroupElement>,
    pub(crate) delta_plus: Vec<RootDatum>,
    pub(crate) phi: Vec<LinearForm>,
    pub(crate) phi_plus: Vec<LinearForm>,
    pub(crate) ell: LinearForm,
    /// ω ∈ Φ ∪ (−Φ) ↦ (±W-orbit label, k_ω).
    pub(crate) orbit_class: BTreeMap<LinearForm, (String, Rational)>,
    pub(crate) rho: Weight,
    pub(crate) sigma1_check: Vec<Weight>,
    pub(crate) lambda1: Vec<Weight>,
    /// Per-basis-index orbit labels, as validated against the derived
    /// ±W-orbit partition.
    pub(crate) labels: Vec<OrbitLabel>,
}

impl StructureData {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group(&self) -> &[GroupElement] {
        &self.group
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Δ⁺ as root data (one entry per reflection).
    pub fn delta_plus(&self) -> &[RootDatum] {
        &self.delta_plus
    }

    /// All of Δ = Δ⁺ ∪ (−Δ⁺).
    pub fn delta(&self) -> Vec<LinearForm> {
        let mut out = Vec::with_capacity(2 * self.delta_plus.len());
        for rd in &self.delta_plus {
            out.push(rd.root.clone());
            out.push(-&rd.root);
        }
        out
    }

    /// Positive coroots α∨, α ∈ Δ⁺.
    pub fn positive_coroots(&self) -> Vec<Weight> {
        self.delta_plus.iter().map(|rd| rd.coroot.clone()).collect()
    }

    /// Φ = WΣ as a deduplicated set.
    pub fn phi(&self) -> &[LinearForm] {
        &self.phi
    }

    pub fn phi_plus(&self) -> &[LinearForm] {
        &self.phi_plus
    }

    pub fn ell(&self) -> &LinearForm {
        &self.ell
    }

    pub fn ell_value(&self, w: &Weight) -> Rational {
        self.ell.apply(w)
    }

    /// ℓ(w) for an integral weight, as i64.
    pub fn ell_int(&self, w: &Weight) -> i64 {
        self.ell_value(w)
            .as_i64()
            .expect("ℓ is integral on lattice weights")
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Σ₁∨ = {η ∈ Σ∨ : ℓ(η) = 1}.
    pub fn sigma1_check(&self) -> &[Weight] {
        &self.sigma1_check
    }

    /// Λ₁ = WΣ₁∨.
    pub fn lambda1(&self) -> &[Weight] {
        &self.lambda1
    }

    pub fn labels(&self) -> &[OrbitLabel] {
        &self.labels
    }

    /// The parameter k_ω attached to the ±W-orbit of ω ∈ Φ ∪ (−Φ).
    pub fn k_of(&self, omega: &LinearForm) -> Option<&Rational> {
        self.orbit_class.get(omega).map(|(_, k)| k)
    }

    pub fn orbit_label_of(&self, omega: &LinearForm) -> Option<&str> {
        self.orbit_class.get(omega).map(|(l, _)| l.as_str())
    }

    /// Distinct orbit labels in basis-index order.
    pub fn orbit_labels(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for l in &self.labels {
            if !seen.contains(&l.base) {
                seen.push(l.base.clone());
            }
        }
        seen
    }

    /// W-invariance under substitution by every generator.
    pub fn is_invariant(&self, p: &Polynomial) -> bool {
        self.generators
            .iter()
            .all(|g| p.substitute(&g.basis_images()) == *p)
    }

    /// Symmetrization Σ_{w∈W} w·p (no 1/|W| factor).
    pub fn symmetrize(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.rank);
        for w in &self.group {
            acc = acc + p.substitute(&w.basis_images());
        }
        acc
    }

    /// Partition a W-stable set of weights into orbits. Each entry is
    /// the minimal representative together with every orbit member and
    /// one group element carrying the representative onto it. Errors if
    /// the set is not W-stable.
    pub fn weight_orbit_maps(
        &self,
        keys: &std::collections::BTreeSet<Weight>,
    ) -> crate::Result<Vec<(Weight, Vec<(Weight, &GroupElement)>)>> {
        let mut assigned: std::collections::BTreeSet<Weight> = Default::default();
        let mut out = Vec::new();
        for rep in keys {
            if assigned.contains(rep) {
                continue;
            }
            let mut members: Vec<(Weight, &GroupElement)> = Vec::new();
            for w in &self.group {
                let image = w.apply_weight(rep);
                if !keys.contains(&image) {
                    return Err(crate::Error::InvalidStructure(format!(
                        "weight set is not W-stable: {image} missing from the orbit of {rep}"
                    )));
                }
                if assigned.insert(image.clone()) {
                    members.push((image, w));
                }
            }
            out.push((rep.clone(), members));
        }
        Ok(out)
    }

    /// Σ_{α∈Δ⁺} α; strictly positive on positive coroots in all valid
    /// structures, which grades the coroot-monoid search in `lattice`.
    pub fn positive_root_sum(&self) -> LinearForm {
        let mut acc = LinearForm::zero(self.rank);
        for rd in &self.delta_plus {
            acc = &acc + &rd.root;
        }
        acc
    }
}

/// Exact tests on ρ: regular, dominant, strongly dominant, non-integral.
pub fn classify_rho(s: &StructureData) -> RhoClassification {
    let alpha_values: Vec<Rational> = s
        .delta_plus
        .iter()
        .map(|rd| rd.root.apply(&s.rho))
        .collect();
    let regular = alpha_values.iter().all(|v| !v.is_zero());
    let dominant = alpha_values.iter().all(|v| !v.is_negative_integer());
    let non_integral = alpha_values.iter().all(|v| !v.is_integer());
    let mut strongly_dominant = regular && dominant;
    if strongly_dominant {
        for omega in &s.phi_plus {
            let k = s
                .k_of(omega)
                .expect("every element of Φ carries a parameter")
                .clone();
            let v = omega.apply(&s.rho);
            let minus = &v - &k;
            let plus = v + k;
            if minus.is_negative_integer() || plus.is_nonpositive_integer() {
                strongly_dominant = false;
                break;
            }
        }
    }
    RhoClassification {
        regular,
        dominant,
        strongly_dominant,
        non_integral,
    }
}

/// Δ (both signs) from the group's reflections: one `RootDatum` per
/// reflection, canonical representative preferring the Δ⁺ side.
pub fn extract_roots(group: &[GroupElement]) -> Vec<RootDatum> {
    let mut out: Vec<RootDatum> = Vec::new();
    for w in group {
        if w.is_identity() || w.order() != 2 {
            continue;
        }
        let Ok((root, coroot)) = w.reflection_data() else {
            continue; // order-2 elements of codimension > 1 are not roots
        };
        if out.iter().any(|rd| rd.root == root) {
            continue;
        }
        let positive = root.is_nonnegative();
        out.push(RootDatum {
            root,
            coroot,
            positive,
        });
    }
    out.sort_by(|a, b| a.root.cmp(&b.root));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_case, CaseSpec};

    fn case_i_n2(r: (i64, i64), s: (i64, i64)) -> StructureData {
        build_case(&CaseSpec::new("I").size("n", 2).k("R", r).k("S", s)).unwrap()
    }

    #[test]
    fn rho_flags_geometric_case_i_n2() {
        // r=1, s=1/2: regular, dominant, strongly dominant, but α(ρ)=1 ∈ ℤ
        let s = case_i_n2((1, 1), (1, 2));
        let c = classify_rho(&s);
        assert!(c.regular && c.dominant && c.strongly_dominant);
        assert!(!c.non_integral);
    }

    #[test]
    fn rho_flags_generic_case_i_n2() {
        // r=5/7, s=3/11: all four flags hold
        let s = case_i_n2((5, 7), (3, 11));
        let c = classify_rho(&s);
        assert!(c.regular && c.dominant && c.strongly_dominant && c.non_integral);
    }

    #[test]
    fn equal_parameters_are_strongly_dominant() {
        // all k_ω = t = 1/3 produces a strongly dominant ρ
        let s = case_i_n2((1, 3), (1, 3));
        assert!(classify_rho(&s).strongly_dominant);
    }

    #[test]
    fn extract_roots_case_i_n2() {
        let s = case_i_n2((1, 1), (1, 2));
        let roots = extract_roots(s.group());
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].root, LinearForm::from_integers(&[1, 0]));
        assert_eq!(roots[0].coroot, Weight::from_integers(&[2, -1]));
        assert!(roots[0].positive);
    }

    #[test]
    fn extract_roots_trivial_group() {
        let roots = extract_roots(&[GroupElement::identity(2)]);
        assert!(roots.is_empty());
    }

    #[test]
    fn symmetrize_produces_invariants() {
        let s = case_i_n2((1, 1), (1, 2));
        let p = Polynomial::variable(2, 0);
        let sym = s.symmetrize(&p);
        assert!(s.is_invariant(&sym));
    }
}

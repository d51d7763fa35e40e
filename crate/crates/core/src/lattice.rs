//! Enumeration and order structure on the weight monoids Λ₊, Λ, Λ₁.
//!
//! The grading ℓ ≡ 1 on Λ₁ does all the work here: monoid membership
//! and path enumeration are exact-depth searches, no Hilbert-basis
//! machinery. Everything returns deterministic orderings.

use std::collections::{BTreeMap, BTreeSet};

use crate::exact::{Rational, Weight};
use crate::structure::StructureData;

/// A Λ₁-step walk τ₀, τ₁, …, τ_d between weights.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub steps: Vec<Weight>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All vertices lie in Λ₊.
    pub fn is_positive(&self) -> bool {
        self.steps.iter().all(Weight::is_dominant_integral)
    }
}

/// All λ ∈ ℕ^r with ℓ(λ) ≤ d, sorted by (ℓ(λ), coordinates).
/// Termination uses ℓ(η_i) > 0 for every i (axiom C3′).
pub fn enumerate_lambda_plus(s: &StructureData, d: i64) -> Vec<Weight> {
    let r = s.rank();
    let ell: Vec<i64> = (0..r)
        .map(|i| {
            s.ell()
                .coord(i)
                .as_i64()
                .expect("ℓ has integer coordinates")
        })
        .collect();
    assert!(ell.iter().all(|&v| v > 0), "ℓ must be positive on Σ∨");
    let mut out = Vec::new();
    let mut current = vec![0i64; r];
    fn rec(ell: &[i64], current: &mut Vec<i64>, i: usize, remaining: i64, out: &mut Vec<Weight>) {
        if i == ell.len() {
            out.push(Weight::from_integers(current));
            return;
        }
        let mut c = 0;
        while c * ell[i] <= remaining {
            current[i] = c;
            rec(ell, current, i + 1, remaining - c * ell[i], out);
            c += 1;
        }
        current[i] = 0;
    }
    if d >= 0 {
        rec(&ell, &mut current, 0, d, &mut out);
    }
    out.sort_by_key(|w| {
        (
            s.ell_int(w),
            w.coords().iter().map(|c| c.as_i64().unwrap()).collect::<Vec<_>>(),
        )
    });
    out
}

/// Membership in Λ, the monoid generated by Λ₁. Any representation of τ
/// uses exactly ℓ(τ) steps, so the search has exact depth.
pub fn in_lambda(s: &StructureData, tau: &Weight) -> bool {
    if !tau.is_integral() {
        return false;
    }
    let d = s.ell_value(tau);
    let Some(d) = d.as_i64() else { return false };
    if d < 0 {
        return false;
    }
    let mut failed: BTreeSet<Weight> = BTreeSet::new();
    search_lambda(s, tau, d, &mut failed)
}

fn search_lambda(s: &StructureData, tau: &Weight, depth: i64, failed: &mut BTreeSet<Weight>) -> bool {
    if depth == 0 {
        return tau.is_zero();
    }
    if failed.contains(tau) {
        return false;
    }
    for eta in s.lambda1() {
        let prev = tau - eta;
        if search_lambda(s, &prev, depth - 1, failed) {
            return true;
        }
    }
    failed.insert(tau.clone());
    false
}

/// Λ ∩ {ℓ ≤ max_ell}, built level by level from Λ₁.
pub fn lambda_elements(s: &StructureData, max_ell: i64) -> Vec<Weight> {
    let mut levels: Vec<BTreeSet<Weight>> = vec![BTreeSet::new()];
    levels[0].insert(Weight::zero(s.rank()));
    for d in 1..=max_ell {
        let mut next = BTreeSet::new();
        let prev = levels[(d - 1) as usize].clone();
        for tau in prev {
            for eta in s.lambda1() {
                next.insert(&tau + eta);
            }
        }
        levels.push(next);
    }
    let mut out = Vec::new();
    for level in levels {
        out.extend(level);
    }
    out
}

/// All paths (or all positive paths) from `from` to `to`; each has
/// exactly ℓ(to − from) steps. Empty when that grade is negative or
/// the difference is unreachable.
pub fn enumerate_paths(
    s: &StructureData,
    from: &Weight,
    to: &Weight,
    positive_only: bool,
) -> Vec<Path> {
    let d = s.ell_value(&(to - from));
    let Some(d) = d.as_i64() else { return Vec::new() };
    if d < 0 {
        return Vec::new();
    }
    if positive_only && !(from.is_dominant_integral() && to.is_dominant_integral()) {
        return Vec::new();
    }
    // memoized recursion over the last step, keyed by (endpoint,
    // remaining length); desk-scale path counts stay tiny
    let mut memo: BTreeMap<(Weight, i64), Vec<Vec<Weight>>> = BTreeMap::new();
    let prefixes = paths_to(s, from, to, d, positive_only, &mut memo);
    prefixes
        .into_iter()
        .map(|steps| Path { steps })
        .collect()
}

fn paths_to(
    s: &StructureData,
    from: &Weight,
    to: &Weight,
    d: i64,
    positive_only: bool,
    memo: &mut BTreeMap<(Weight, i64), Vec<Vec<Weight>>>,
) -> Vec<Vec<Weight>> {
    if d == 0 {
        if from == to {
            return vec![vec![from.clone()]];
        }
        return Vec::new();
    }
    if let Some(hit) = memo.get(&(to.clone(), d)) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for eta in s.lambda1() {
        let prev = to - eta;
        if positive_only && !prev.is_dominant_integral() {
            continue;
        }
        if s.ell_value(&(&prev - from)) != Rational::from_integer(d - 1) {
            continue;
        }
        for mut prefix in paths_to(s, from, &prev, d - 1, positive_only, memo) {
            prefix.push(to.clone());
            out.push(prefix);
        }
    }
    memo.insert((to.clone(), d), out.clone());
    out
}

/// The order τ₁ ≤ τ₂: ℓ(τ₁) < ℓ(τ₂), or equal ℓ and τ₂ − τ₁ an
/// ℕ-combination of positive coroots.
pub fn leq(s: &StructureData, tau1: &Weight, tau2: &Weight) -> bool {
    let l1 = s.ell_value(tau1);
    let l2 = s.ell_value(tau2);
    if l1 < l2 {
        return true;
    }
    if l1 > l2 {
        return false;
    }
    is_coroot_combination(s, &(tau2 - tau1))
}

/// τ ∈ ℕ{α∨ : α ∈ Δ⁺}? Depth-first search graded by Σ_{Δ⁺}α, which is
/// strictly positive on every positive coroot.
fn is_coroot_combination(s: &StructureData, tau: &Weight) -> bool {
    if tau.is_zero() {
        return true;
    }
    if !tau.is_integral() {
        return false;
    }
    let grading = s.positive_root_sum();
    let coroots = s.positive_coroots();
    for c in &coroots {
        let g = grading.apply(c);
        assert!(
            g.is_positive(),
            "positive-root sum fails to grade coroot {c}"
        );
    }
    let mut failed = BTreeSet::new();
    fn rec(
        tau: &Weight,
        coroots: &[Weight],
        grading: &crate::exact::LinearForm,
        failed: &mut BTreeSet<Weight>,
    ) -> bool {
        if tau.is_zero() {
            return true;
        }
        if grading.apply(tau).is_negative() || failed.contains(tau) {
            return false;
        }
        for c in coroots {
            if rec(&(tau - c), coroots, grading, failed) {
                return true;
            }
        }
        failed.insert(tau.clone());
        false
    }
    rec(tau, &coroots, &grading, &mut failed)
}

/// The degree defect j(τ) = Σ_{ω∈Φ} ω(τ)₊ − Σ_{α∈Δ⁺} α(τ) − ℓ(τ).
pub fn degree_defect(s: &StructureData, tau: &Weight) -> i64 {
    let mut acc = Rational::zero();
    for omega in s.phi() {
        let v = omega.apply(tau);
        if v.is_positive() {
            acc += v;
        }
    }
    for rd in s.delta_plus() {
        acc -= rd.root.apply(tau);
    }
    acc -= s.ell_value(tau);
    acc.as_i64().expect("degree defect is an integer")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_case, CaseSpec};

    fn case_i_n2() -> StructureData {
        build_case(&CaseSpec::new("I").size("n", 2).k("R", (1, 1)).k("S", (1, 2))).unwrap()
    }

    fn w(coords: &[i64]) -> Weight {
        Weight::from_integers(coords)
    }

    #[test]
    fn lambda_plus_up_to_degree_two() {
        let s = case_i_n2();
        // ℓ-values 0,1,2,2 from ℓ(η1)=1, ℓ(η2)=2
        let got = enumerate_lambda_plus(&s, 2);
        assert_eq!(got, vec![w(&[0, 0]), w(&[1, 0]), w(&[0, 1]), w(&[2, 0])]);
        assert_eq!(enumerate_lambda_plus(&s, 0), vec![w(&[0, 0])]);
        // exactly one λ with ℓ(λ) = 1
        let d1 = enumerate_lambda_plus(&s, 1);
        assert_eq!(d1, vec![w(&[0, 0]), w(&[1, 0])]);
    }

    #[test]
    fn lambda_membership() {
        let s = case_i_n2();
        // e₂ = (−1,1) is in Λ₁ ⊂ Λ but not in Λ₊
        assert!(in_lambda(&s, &w(&[-1, 1])));
        assert!(!w(&[-1, 1]).is_dominant_integral());
        // 0 ∈ Λ via the empty sum
        assert!(in_lambda(&s, &w(&[0, 0])));
        // −e₁ has ℓ = −1 < 0
        assert!(!in_lambda(&s, &w(&[-1, 0])));
        // e₁ − e₂ = (2,−1) has ℓ = 0 but is nonzero
        assert!(!in_lambda(&s, &w(&[2, -1])));
    }

    #[test]
    fn path_enumeration() {
        let s = case_i_n2();
        // e₁ to e₁+e₂ (= η₂ = (0,1)): single positive path via step e₂
        let p = enumerate_paths(&s, &w(&[1, 0]), &w(&[0, 1]), true);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].steps, vec![w(&[1, 0]), w(&[0, 1])]);
        // length-0 path
        let p0 = enumerate_paths(&s, &w(&[1, 0]), &w(&[1, 0]), false);
        assert_eq!(p0.len(), 1);
        assert!(p0[0].is_empty());
        // 0 to e₁+e₂: two paths in general, one positive
        let all = enumerate_paths(&s, &w(&[0, 0]), &w(&[0, 1]), false);
        assert_eq!(all.len(), 2);
        let pos = enumerate_paths(&s, &w(&[0, 0]), &w(&[0, 1]), true);
        assert_eq!(pos.len(), 1);
        for path in &all {
            assert_eq!(path.len(), 2);
            for pair in path.steps.windows(2) {
                assert!(s.lambda1().contains(&(&pair[1] - &pair[0])));
            }
        }
    }

    #[test]
    fn order_relation() {
        let s = case_i_n2();
        // e₂ ≤ e₁ since e₁ − e₂ = (z₁−z₂)∨ = (2,−1)
        assert!(leq(&s, &w(&[-1, 1]), &w(&[1, 0])));
        assert!(!leq(&s, &w(&[1, 0]), &w(&[-1, 1])));
        // reflexive
        assert!(leq(&s, &w(&[1, 0]), &w(&[1, 0])));
        // ℓ strictly increasing
        assert!(leq(&s, &w(&[1, 0]), &w(&[0, 1])));
    }

    #[test]
    fn degree_defect_values() {
        let s = case_i_n2();
        // τ ∈ Λ₊ → 0
        for tau in enumerate_lambda_plus(&s, 3) {
            assert_eq!(degree_defect(&s, &tau), 0, "τ = {tau}");
        }
        // τ = e₂ → 2
        assert_eq!(degree_defect(&s, &w(&[-1, 1])), 2);
    }

    #[test]
    fn defect_nonnegative_on_dominant_box_with_equality_on_lambda_plus() {
        let s = case_i_n2();
        // exhaustive over the box ‖τ‖∞ ≤ 3 in Σ∨-coordinates
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let tau = w(&[a, b]);
                let dominant = s
                    .delta_plus()
                    .iter()
                    .all(|rd| !rd.root.apply(&tau).is_negative());
                if !dominant {
                    continue;
                }
                let j = degree_defect(&s, &tau);
                assert!(j >= 0, "j({tau}) = {j}");
                assert_eq!(j == 0, tau.is_dominant_integral(), "τ = {tau}");
            }
        }
    }

    #[test]
    fn leq_is_partial_order_on_small_lambda_plus() {
        let s = case_i_n2();
        let pts = enumerate_lambda_plus(&s, 4);
        for a in &pts {
            assert!(leq(&s, a, a));
            for b in &pts {
                if leq(&s, a, b) && leq(&s, b, a) {
                    assert_eq!(a, b);
                }
                for c in &pts {
                    if leq(&s, a, b) && leq(&s, b, c) {
                        assert!(leq(&s, a, c));
                    }
                }
            }
        }
    }
}

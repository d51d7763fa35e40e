//! Pieri coefficients a_τ^h(μ) by three independent routes, the virtual
//! dimension d_λ, and the duality identities tying them together.
//!
//! `pieri_direct` is the reference oracle: it only uses the defining
//! interpolation property, expanding h·p_μ in the p-basis. The two
//! path-based routes are the methods under test everywhere.

use std::collections::BTreeMap;

use crate::diffop::{f_tau_value, falling_factorial};
use crate::exact::{Polynomial, Rational, Weight};
use crate::interp::{self, ExpansionBasis};
use crate::lattice;
use crate::structure::StructureData;
use crate::{Error, Result};

/// The expansion h·p_μ = Σ_τ a_τ^h(μ)·p_{μ+τ}, re-indexed by the shift
/// τ = ν − μ. Support is confined to τ ∈ Λ with ℓ(τ) ≤ deg h and
/// μ+τ ∈ Λ₊.
#[derive(Clone, Debug)]
pub struct PieriTable {
    pub h: Polynomial,
    pub mu: Weight,
    pub coeffs: BTreeMap<Weight, Rational>,
}

impl PieriTable {
    pub fn coefficient(&self, tau: &Weight) -> Rational {
        self.coeffs.get(tau).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Reference route: expand h·p_μ via the p-basis at degree ℓ(μ)+deg h.
pub fn pieri_direct(s: &StructureData, h: &Polynomial, mu: &Weight) -> Result<PieriTable> {
    if !mu.is_dominant_integral() {
        return Err(Error::Undefined(format!("μ = {mu} is not in Λ₊")));
    }
    let p_mu = interp::interpolate_p(s, mu)?;
    let product = h * &p_mu.poly;
    let d = s.ell_int(mu) + h.degree() as i64;
    let expansion = interp::expand_in_basis(s, &product, ExpansionBasis::InterpolationP, d)?;
    let coeffs = expansion
        .into_iter()
        .map(|(nu, c)| (&nu - mu, c))
        .collect();
    Ok(PieriTable {
        h: h.clone(),
        mu: mu.clone(),
        coeffs,
    })
}

/// Path route: a_τ^h(μ) as a weighted sum over positive paths from μ to
/// μ+τ, with the alternating bracket Σ_i (−1)^{d−i}/(i!(d−i)!)·h(ρ+τ_i).
pub fn pieri_path_formula(
    s: &StructureData,
    h: &Polynomial,
    mu: &Weight,
    tau: &Weight,
) -> Result<Rational> {
    let target = mu + tau;
    if !mu.is_dominant_integral() || !target.is_dominant_integral() {
        return Err(Error::Undefined("μ and μ+τ must lie in Λ₊".into()));
    }
    let Some(d) = s.ell_value(tau).as_i64() else {
        return Err(Error::Undefined("ℓ(τ) must be an integer".into()));
    };
    if d < 0 {
        return Ok(Rational::zero());
    }
    if d == 0 {
        return Ok(if tau.is_zero() {
            h.evaluate(&(s.rho() + mu))
        } else {
            Rational::zero()
        });
    }
    let rho = s.rho();
    let mut total = Rational::zero();
    for path in lattice::enumerate_paths(s, mu, &target, true) {
        let mut bracket = Rational::zero();
        for (i, tau_i) in path.steps.iter().enumerate() {
            let sign = if (d as usize - i) % 2 == 1 {
                -Rational::one()
            } else {
                Rational::one()
            };
            let coef = sign
                / (Rational::factorial(i as u32) * Rational::factorial((d as usize - i) as u32));
            bracket += coef * h.evaluate(&(rho + tau_i));
        }
        let mut prod = bracket;
        for i in 1..path.steps.len() {
            let step = &path.steps[i] - &path.steps[i - 1];
            let v = f_tau_value(s, &step, &(rho + &path.steps[i])).ok_or_else(|| {
                Error::Undefined("path factor undefined; is ρ regular dominant?".into())
            })?;
            prod *= v;
        }
        total += prod;
    }
    Ok(total)
}

/// Alternating route: a_τ^h(μ) = Σ_η (−1)^{ℓ(τ−η)} h(ρ+μ+η)
/// p_μ(ρ+μ+η) p_{μ+η}(ρ+μ+τ) over η ∈ Λ with τ−η ∈ Λ, μ+η ∈ Λ₊.
/// The p-values come from `p_value_by_paths`, so the route is fully
/// interpolation-free.
pub fn pieri_alternating(
    s: &StructureData,
    h: &Polynomial,
    mu: &Weight,
    tau: &Weight,
) -> Result<Rational> {
    let target = mu + tau;
    if !mu.is_dominant_integral() || !target.is_dominant_integral() {
        return Err(Error::Undefined("μ and μ+τ must lie in Λ₊".into()));
    }
    let Some(d) = s.ell_value(tau).as_i64() else {
        return Err(Error::Undefined("ℓ(τ) must be an integer".into()));
    };
    if d < 0 {
        return Ok(Rational::zero());
    }
    let rho = s.rho();
    let mut total = Rational::zero();
    for eta in lattice::lambda_elements(s, d) {
        let rest = tau - &eta;
        if !lattice::in_lambda(s, &rest) {
            continue;
        }
        let mid = mu + &eta;
        if !mid.is_dominant_integral() {
            continue;
        }
        let sign = if s.ell_int(&rest) % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        let node = rho + &mid;
        let term = sign
            * h.evaluate(&node)
            * interp::p_value_by_paths(s, mu, &mid)?
            * interp::p_value_by_paths(s, &mid, &target)?;
        total += term;
    }
    Ok(total)
}

/// The virtual dimension d_λ = (−1)^{ℓ(λ)} f_λ(−ρ)/f_λ(ρ+λ), computed
/// both from the defining quotient and from the Weyl-type product over
/// Δ⁺ and Φ⁺; the two routes must agree exactly.
pub fn virtual_dimension(s: &StructureData, lambda: &Weight) -> Result<Rational> {
    if !lambda.is_dominant_integral() {
        return Err(Error::Undefined(format!("λ = {lambda} is not in Λ₊")));
    }
    let rho = s.rho();
    let numer = f_tau_value(s, lambda, &(-rho)).ok_or_else(|| {
        Error::UndefinedNormalizer("f_λ(−ρ) undefined; ρ is not strongly dominant".into())
    })?;
    let denom = interp::normalizer(s, lambda)?;
    let sign = if s.ell_int(lambda) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    };
    let quotient_route = sign * numer / denom;
    let product_route = virtual_dimension_product(s, lambda)?;
    if quotient_route != product_route {
        return Err(Error::Undefined(format!(
            "virtual dimension routes disagree at λ = {lambda}: {quotient_route} vs {product_route}"
        )));
    }
    Ok(quotient_route)
}

/// The product form of d_λ: Π_{α∈Δ⁺} α(ρ+λ)/α(ρ) ·
/// Π_{ω∈Φ⁺} [ω(ρ+λ)+k_ω−1 ↓ ω(λ)] / [ω(ρ+λ)−k_ω ↓ ω(λ)].
pub fn virtual_dimension_product(s: &StructureData, lambda: &Weight) -> Result<Rational> {
    let rho = s.rho();
    let at = rho + lambda;
    let mut acc = Rational::one();
    for rd in s.delta_plus() {
        let den = rd.root.apply(rho);
        if den.is_zero() {
            return Err(Error::UndefinedNormalizer("α(ρ) = 0; ρ is not regular".into()));
        }
        acc *= rd.root.apply(&at) / den;
    }
    for omega in s.phi_plus() {
        let k = s.k_of(omega).expect("Φ carries parameters");
        let m = omega
            .apply(lambda)
            .as_i64()
            .expect("integral pairing on Λ₊");
        let top = falling_factorial(&(&(omega.apply(&at)) + &(k - &Rational::one())), m)
            .ok_or_else(|| Error::UndefinedNormalizer("numerator factorial undefined".into()))?;
        let bottom = falling_factorial(&(omega.apply(&at) - k), m)
            .ok_or_else(|| Error::UndefinedNormalizer("denominator factorial undefined".into()))?;
        if bottom.is_zero() {
            return Err(Error::UndefinedNormalizer(
                "denominator factorial vanishes; ρ is not strongly dominant".into(),
            ));
        }
        acc *= top / bottom;
    }
    Ok(acc)
}

/// Half-integer specialization: when every k_ω ∈ ½ℤ_{>0}, d_λ equals
/// the double product Π_{α∈Δ⁺} α(ρ+λ)/α(ρ) ·
/// Π_{ω∈Φ⁺} Π_{s=−k_ω+1}^{k_ω−1} (ω(ρ+λ)+s)/(ω(ρ)+s), the inner index
/// stepping by 1 through half-integers.
pub fn virtual_dimension_half_integer(s: &StructureData, lambda: &Weight) -> Result<Rational> {
    let rho = s.rho();
    let at = rho + lambda;
    let mut acc = Rational::one();
    for rd in s.delta_plus() {
        let den = rd.root.apply(rho);
        if den.is_zero() {
            return Err(Error::UndefinedNormalizer("α(ρ) = 0".into()));
        }
        acc *= rd.root.apply(&at) / den;
    }
    let half = Rational::new(1, 2);
    for omega in s.phi_plus() {
        let k = s.k_of(omega).expect("Φ carries parameters").clone();
        let twice = (&k + &k).as_i64().ok_or_else(|| {
            Error::Undefined(format!("k_ω = {k} is not a half-integer"))
        })?;
        if twice <= 0 {
            return Err(Error::Undefined(format!("k_ω = {k} is not positive")));
        }
        // s runs from −k+1 to k−1 in integer steps
        let mut sval = -&k + Rational::one();
        while sval <= &k - &Rational::one() {
            let den = omega.apply(rho) + sval.clone();
            if den.is_zero() {
                return Err(Error::UndefinedNormalizer("product factor vanishes".into()));
            }
            acc *= (omega.apply(&at) + sval.clone()) / den;
            sval += Rational::one();
        }
        let _ = half;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_case, CaseSpec};
    use crate::diffop::b_coeff_paths;
    use crate::structure::classify_rho;

    fn case_i_n2() -> StructureData {
        build_case(&CaseSpec::new("I").size("n", 2).k("R", (1, 1)).k("S", (1, 2))).unwrap()
    }

    fn case_i_n2_generic() -> StructureData {
        build_case(&CaseSpec::new("I").size("n", 2).k("R", (1, 3)).k("S", (1, 5))).unwrap()
    }

    fn w(coords: &[i64]) -> Weight {
        Weight::from_integers(coords)
    }

    #[test]
    fn direct_route_examples() {
        let s = case_i_n2();
        let p1 = interp::interpolate_p(&s, &w(&[1, 0])).unwrap().poly;
        // h·p₀ = h is already a basis element: a_{e₁} = 1, a₀ = p_{e₁}(ρ) = 0
        let t = pieri_direct(&s, &p1, &w(&[0, 0])).unwrap();
        assert_eq!(t.coefficient(&w(&[1, 0])), Rational::one());
        assert_eq!(t.coefficient(&w(&[0, 0])), Rational::zero());
        assert_eq!(t.coeffs.len(), 1);
        // deg h = 0: h·p_μ = c·p_μ
        let c = Polynomial::constant(2, Rational::new(5, 3));
        let t = pieri_direct(&s, &c, &w(&[1, 0])).unwrap();
        assert_eq!(t.coeffs.len(), 1);
        assert_eq!(t.coefficient(&w(&[0, 0])), Rational::new(5, 3));
        // h = p_{e₁}, μ = e₁: a₀ = p_{e₁}(ρ+e₁) = 1, support in {0, e₁, e₂}
        let t = pieri_direct(&s, &p1, &w(&[1, 0])).unwrap();
        assert_eq!(t.coefficient(&w(&[0, 0])), Rational::one());
        for tau in t.coeffs.keys() {
            assert!(lattice::in_lambda(&s, tau));
            assert!(s.ell_int(tau) <= 1);
        }
    }

    #[test]
    fn support_obeys_vanishing_bounds() {
        let s = case_i_n2();
        let p1 = interp::interpolate_p(&s, &w(&[1, 0])).unwrap().poly;
        let h = &p1 * &p1;
        let mu = w(&[1, 0]);
        let t = pieri_direct(&s, &h, &mu).unwrap();
        // a₀ = h(ρ+μ)
        assert_eq!(
            t.coefficient(&w(&[0, 0])),
            h.evaluate(&(s.rho() + &mu))
        );
        for tau in t.coeffs.keys() {
            assert!(lattice::in_lambda(&s, tau), "τ = {tau} outside Λ");
            assert!(s.ell_int(tau) <= h.degree() as i64);
            assert!((&mu + tau).is_dominant_integral());
        }
    }

    #[test]
    fn path_route_examples() {
        let s = case_i_n2();
        let p1 = interp::interpolate_p(&s, &w(&[1, 0])).unwrap().poly;
        // τ = 0 → h(ρ+μ)
        let a0 = pieri_path_formula(&s, &p1, &w(&[1, 0]), &w(&[0, 0])).unwrap();
        assert_eq!(a0, p1.evaluate(&(s.rho() + &w(&[1, 0]))));
        // constant h, τ ≠ 0 → 0 (alternating binomial sum telescopes)
        let c = Polynomial::constant(2, Rational::new(7, 2));
        let v = pieri_path_formula(&s, &c, &w(&[1, 0]), &w(&[-1, 1])).unwrap();
        assert!(v.is_zero());
        // agreement with the direct route on (h = p_{e₁}, μ = e₁, τ = e₂)
        let direct = pieri_direct(&s, &p1, &w(&[1, 0])).unwrap();
        let via_paths = pieri_path_formula(&s, &p1, &w(&[1, 0]), &w(&[-1, 1])).unwrap();
        assert_eq!(via_paths, direct.coefficient(&w(&[-1, 1])));
    }

    #[test]
    fn alternating_route_examples() {
        let s = case_i_n2();
        let p1 = interp::interpolate_p(&s, &w(&[1, 0])).unwrap().poly;
        // τ = 0: single η = 0 term h(ρ+μ)·1·1
        let a0 = pieri_alternating(&s, &p1, &w(&[1, 0]), &w(&[0, 0])).unwrap();
        assert_eq!(a0, p1.evaluate(&(s.rho() + &w(&[1, 0]))));
        // h = ℓ − ℓ(ρ), μ = 0, τ = e₁ → 1
        let a = pieri_alternating(&s, &p1, &w(&[0, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(a, Rational::one());
    }

    #[test]
    fn three_routes_agree_on_small_cases() {
        for s in [case_i_n2(), case_i_n2_generic()] {
            let p1 = interp::interpolate_p(&s, &w(&[1, 0])).unwrap().poly;
            let h = &p1 * &p1;
            for mu in lattice::enumerate_lambda_plus(&s, 2) {
                let direct = pieri_direct(&s, &h, &mu).unwrap();
                for tau in lattice::lambda_elements(&s, 2) {
                    if !(&mu + &tau).is_dominant_integral() {
                        continue;
                    }
                    let a_direct = direct.coefficient(&tau);
                    let a_paths = pieri_path_formula(&s, &h, &mu, &tau).unwrap();
                    let a_alt = pieri_alternating(&s, &h, &mu, &tau).unwrap();
                    assert_eq!(a_direct, a_paths, "paths route at μ={mu}, τ={tau}");
                    assert_eq!(a_direct, a_alt, "alternating route at μ={mu}, τ={tau}");
                }
            }
        }
    }

    #[test]
    fn virtual_dimension_examples() {
        let s = case_i_n2();
        // λ = 0 → 1
        assert_eq!(virtual_dimension(&s, &w(&[0, 0])).unwrap(), Rational::one());
        // λ = e₁ → 2(r+2s) = 4 at r=1, s=1/2 (dim C²⊗C²)
        assert_eq!(
            virtual_dimension(&s, &w(&[1, 0])).unwrap(),
            Rational::from_integer(4)
        );
        // generic parameters: 2(r+2s) = 2(1/3 + 2/5) = 22/15
        let g = case_i_n2_generic();
        assert_eq!(
            virtual_dimension(&g, &w(&[1, 0])).unwrap(),
            Rational::new(22, 15)
        );
    }

    #[test]
    fn half_integer_product_agrees() {
        // r=1, s=1/2 are both in ½ℤ_{>0}
        let s = case_i_n2();
        for lambda in lattice::enumerate_lambda_plus(&s, 3) {
            assert_eq!(
                virtual_dimension(&s, &lambda).unwrap(),
                virtual_dimension_half_integer(&s, &lambda).unwrap(),
                "λ = {lambda}"
            );
        }
    }

    #[test]
    fn duality_identity() {
        // d_λ/d_μ = (−1)^{ℓ(τ)} f_τ(−ρ−μ)/f_τ(ρ+λ) for τ = λ−μ ∈ Λ
        let s = case_i_n2_generic();
        assert!(classify_rho(&s).strongly_dominant);
        let pts = lattice::enumerate_lambda_plus(&s, 3);
        for lambda in &pts {
            for mu in &pts {
                let tau = lambda - mu;
                if !lattice::in_lambda(&s, &tau) {
                    continue;
                }
                let dl = virtual_dimension(&s, lambda).unwrap();
                let dm = virtual_dimension(&s, mu).unwrap();
                let lhs = dl / dm;
                let sign = if s.ell_int(&tau) % 2 == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let num = f_tau_value(&s, &tau, &(-&(s.rho() + mu))).unwrap();
                let den = f_tau_value(&s, &tau, &(s.rho() + lambda)).unwrap();
                assert_eq!(lhs, sign * num / den, "λ={lambda}, μ={mu}");
            }
        }
    }

    #[test]
    fn falling_factorial_composition_identity() {
        // [z↓a−b]·[z−(a−b)↓b] = [z↓a] on random rational z, 0 ≤ b ≤ a ≤ 4
        let zs = [
            Rational::new(17, 5),
            Rational::new(-3, 7),
            Rational::new(22, 3),
            Rational::new(-15, 2),
        ];
        for z in &zs {
            for a in 0i64..=4 {
                for b in 0..=a {
                    let lhs = falling_factorial(z, a - b).unwrap()
                        * falling_factorial(&(z - &Rational::from_integer(a - b)), b).unwrap();
                    assert_eq!(lhs, falling_factorial(z, a).unwrap());
                }
            }
        }
    }

    #[test]
    fn p_equation_links_b_coefficients_to_pieri() {
        // b_τ^h(−ρ−μ) = (−1)^{ℓ(τ)} (d_λ/d_μ) a_τ^{h⁻}(μ) with λ = μ+τ,
        // at strongly dominant non-integral ρ
        let s = case_i_n2_generic();
        let cls = classify_rho(&s);
        assert!(cls.strongly_dominant && cls.non_integral);
        let p1 = interp::interpolate_p(&s, &w(&[1, 0])).unwrap().poly;
        let h = &p1 * &p1;
        let h_flip = h.flip();
        for mu in lattice::enumerate_lambda_plus(&s, 2) {
            for tau in lattice::lambda_elements(&s, 2) {
                let lambda = &mu + &tau;
                if !lambda.is_dominant_integral() {
                    continue;
                }
                let b = b_coeff_paths(&s, &h, &tau).unwrap();
                let lhs = b
                    .evaluate(&(-&(s.rho() + &mu)))
                    .expect("non-integral ρ keeps the denominators nonzero");
                let a = pieri_path_formula(&s, &h_flip, &mu, &tau).unwrap();
                let dl = virtual_dimension(&s, &lambda).unwrap();
                let dm = virtual_dimension(&s, &mu).unwrap();
                let sign = if s.ell_int(&tau) % 2 == 1 {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                assert_eq!(lhs, sign * (dl / dm) * a, "μ={mu}, τ={tau}");
            }
        }
    }
}

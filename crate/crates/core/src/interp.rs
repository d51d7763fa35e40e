//! W-invariant polynomial bases and the interpolation polynomials p_λ.
//!
//! p_λ is the unique W-invariant polynomial of degree ≤ ℓ(λ) with
//! p_λ(ρ+μ) = δ_{λμ} for all μ ∈ Λ₊ with ℓ(μ) ≤ ℓ(λ). It comes from an
//! exact square linear solve over an invariant basis; its special
//! values are independently computable as sums over positive paths,
//! and the two routes cross-validate each other throughout the tests.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::diffop::f_tau_value;
use crate::exact::{solve_exact, Polynomial, Rational, Weight};
use crate::lattice;
use crate::structure::StructureData;
use crate::{Error, Result};

/// A basis of the W-invariant polynomials of degree ≤ degree_bound:
/// symmetrized monomials, kept when they enlarge the span (exact rank
/// extraction in lexicographic monomial order, so the outcome is
/// deterministic).
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub degree_bound: u32,
    /// Exponent tuple of the monomial generating each element.
    pub reps: Vec<Vec<u32>>,
    pub elements: Vec<Polynomial>,
}

impl InvariantBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn monomials_up_to(rank: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; rank];
    fn rec(current: &mut Vec<u32>, i: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        for c in 0..=remaining {
            current[i] = c;
            rec(current, i + 1, remaining - c, out);
        }
        current[i] = 0;
    }
    rec(&mut current, 0, degree, &mut out);
    out.sort_by_key(|k| (k.iter().sum::<u32>(), k.clone()));
    out
}

/// Span of the W-symmetrized monomials of total degree ≤ d, one basis
/// element per rank-increasing symmetrization, with W-invariance
/// verified on every element.
pub fn invariant_basis(s: &StructureData, d: u32) -> InvariantBasis {
    let r = s.rank();
    let monos = monomials_up_to(r, d);
    let col_index: BTreeMap<Vec<u32>, usize> =
        monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let ncols = monos.len();

    let symmetrized: Vec<(Vec<u32>, Polynomial)> = monos
        .par_iter()
        .map(|mono| {
            let p = Polynomial::from_terms(r, [(mono.clone(), Rational::one())]);
            (mono.clone(), s.symmetrize(&p))
        })
        .collect();

    // incremental row reduction: keep the symmetrizations that enlarge
    // the span
    let mut pivots: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut reps = Vec::new();
    let mut elements = Vec::new();
    for (mono, sym) in symmetrized {
        if sym.is_zero() {
            continue;
        }
        let mut row = vec![Rational::zero(); ncols];
        for (exp, c) in sym.terms() {
            row[col_index[exp]] = c.clone();
        }
        for (pcol, prow) in &pivots {
            if !row[*pcol].is_zero() {
                let factor = row[*pcol].clone();
                for j in 0..ncols {
                    let delta = &factor * &prow[j];
                    row[j] -= delta;
                }
            }
        }
        if let Some(pcol) = (0..ncols).find(|&j| !row[j].is_zero()) {
            let inv = row[pcol].recip();
            for v in row.iter_mut() {
                *v = &*v * &inv;
            }
            pivots.push((pcol, row));
            debug_assert!(s.is_invariant(&sym));
            reps.push(mono);
            elements.push(sym);
        }
    }
    InvariantBasis {
        degree_bound: d,
        reps,
        elements,
    }
}

/// An interpolation polynomial: W-invariant, deg ≤ ℓ(λ), value 1 at
/// ρ+λ and 0 at every other ρ+μ with ℓ(μ) ≤ ℓ(λ).
#[derive(Clone, Debug)]
pub struct CapelliPolynomial {
    pub lambda: Weight,
    pub poly: Polynomial,
    pub rho: Weight,
}

impl CapelliPolynomial {
    /// Re-verify the defining conditions, for tests and round trips.
    pub fn verify(&self, s: &StructureData) -> bool {
        let d = s.ell_int(&self.lambda);
        if (self.poly.degree() as i64) > d || !s.is_invariant(&self.poly) {
            return false;
        }
        for mu in lattice::enumerate_lambda_plus(s, d) {
            let expected = if mu == self.lambda {
                Rational::one()
            } else {
                Rational::zero()
            };
            if self.poly.evaluate(&(s.rho() + &mu)) != expected {
                return false;
            }
        }
        true
    }
}

/// The unique p_λ from the exact square solve over
/// `invariant_basis(s, ℓ(λ))` against p(ρ+μ) = δ_{λμ}.
pub fn interpolate_p(s: &StructureData, lambda: &Weight) -> Result<CapelliPolynomial> {
    if !lambda.is_dominant_integral() {
        return Err(Error::Undefined(format!("λ = {lambda} is not in Λ₊")));
    }
    let d = s.ell_int(lambda);
    let basis = invariant_basis(s, d as u32);
    let points = lattice::enumerate_lambda_plus(s, d);
    if basis.len() != points.len() {
        return Err(Error::SingularSystem(format!(
            "dim P^W_{d} = {} but #Λ₊({d}) = {}; the interpolation problem is not square",
            basis.len(),
            points.len()
        )));
    }
    let matrix: Vec<Vec<Rational>> = points
        .par_iter()
        .map(|mu| {
            let at = s.rho() + mu;
            basis.elements.iter().map(|b| b.evaluate(&at)).collect()
        })
        .collect();
    let rhs: Vec<Rational> = points
        .iter()
        .map(|mu| {
            if mu == lambda {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let solution = solve_exact(&matrix, &rhs)?;
    let mut poly = Polynomial::zero(s.rank());
    for (c, b) in solution.iter().zip(&basis.elements) {
        if !c.is_zero() {
            poly = poly + b.scale(c);
        }
    }
    Ok(CapelliPolynomial {
        lambda: lambda.clone(),
        poly,
        rho: s.rho().clone(),
    })
}

/// The special value p_λ(ρ+μ) as a sum over positive paths from λ to μ:
/// (1/d!) Σ_paths f_{τ₁−τ₀}(ρ+τ₁) ⋯ f_{τ_d−τ_{d−1}}(ρ+τ_d). Weights
/// with μ−λ outside Λ yield an empty sum, matching extra vanishing.
pub fn p_value_by_paths(s: &StructureData, lambda: &Weight, mu: &Weight) -> Result<Rational> {
    let Some(d) = s.ell_value(&(mu - lambda)).as_i64() else {
        return Err(Error::Undefined("ℓ(μ−λ) must be an integer".into()));
    };
    if d < 0 {
        return Ok(Rational::zero());
    }
    if d == 0 {
        return Ok(if lambda == mu {
            Rational::one()
        } else {
            Rational::zero()
        });
    }
    let paths = lattice::enumerate_paths(s, lambda, mu, true);
    let rho = s.rho();
    let mut total = Rational::zero();
    for path in &paths {
        let mut prod = Rational::one();
        for i in 1..path.steps.len() {
            let step = &path.steps[i] - &path.steps[i - 1];
            let v = f_tau_value(s, &step, &(rho + &path.steps[i])).ok_or_else(|| {
                Error::Undefined(format!(
                    "path factor undefined at ρ+{}; is ρ regular dominant?",
                    path.steps[i]
                ))
            })?;
            prod *= v;
        }
        total += prod;
    }
    Ok(total / Rational::factorial(d as u32))
}

/// P_λ = f_λ(ρ+λ)·p_λ, defined whenever the normalizer is a nonzero
/// rational (ρ strongly dominant).
pub fn normalize_p(s: &StructureData, lambda: &Weight) -> Result<Polynomial> {
    let c = normalizer(s, lambda)?;
    let p = interpolate_p(s, lambda)?;
    Ok(p.poly.scale(&c))
}

/// f_λ(ρ+λ), the leading normalizer; `UndefinedNormalizer` when it has
/// a vanishing denominator or value.
pub fn normalizer(s: &StructureData, lambda: &Weight) -> Result<Rational> {
    let v = f_tau_value(s, lambda, &(s.rho() + lambda)).ok_or_else(|| {
        Error::UndefinedNormalizer(format!(
            "f_λ(ρ+λ) has a vanishing denominator at λ = {lambda}"
        ))
    })?;
    if v.is_zero() {
        return Err(Error::UndefinedNormalizer(format!(
            "f_λ(ρ+λ) = 0 at λ = {lambda}; ρ is not strongly dominant"
        )));
    }
    Ok(v)
}

/// Expansion bases for W-invariant polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionBasis {
    /// The interpolation basis p_λ.
    InterpolationP,
    /// The normalization P_λ = f_λ(ρ+λ)·p_λ.
    NormalizedP,
    /// The monomial basis e_λ = Π_i P_{η_i}^{ω_i(λ)}.
    MonomialE,
}

impl std::str::FromStr for ExpansionBasis {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "p" => Ok(ExpansionBasis::InterpolationP),
            "P" => Ok(ExpansionBasis::NormalizedP),
            "e" => Ok(ExpansionBasis::MonomialE),
            other => Err(format!("unknown basis {other:?} (expected p, P or e)")),
        }
    }
}

/// Coefficients of a W-invariant g in the chosen basis over Λ₊(d).
///
/// The p-coefficients come from triangular evaluation at the nodes ρ+μ
/// in increasing ℓ-order (no dense solve), and the expansion is
/// re-summed and compared against g before returning, so a degenerate
/// basis surfaces as `SingularSystem` rather than a wrong answer.
pub fn expand_in_basis(
    s: &StructureData,
    g: &Polynomial,
    basis: ExpansionBasis,
    d: i64,
) -> Result<BTreeMap<Weight, Rational>> {
    if !s.is_invariant(g) {
        return Err(Error::NotInvariant("expand_in_basis input".into()));
    }
    if (g.degree() as i64) > d {
        return Err(Error::Undefined(format!(
            "degree {} exceeds the expansion bound {d}",
            g.degree()
        )));
    }
    match basis {
        ExpansionBasis::InterpolationP => expand_in_p(s, g, d),
        ExpansionBasis::NormalizedP => {
            let mut out = BTreeMap::new();
            for (mu, c) in expand_in_p(s, g, d)? {
                let n = normalizer(s, &mu)?;
                out.insert(mu, c / n);
            }
            Ok(out)
        }
        ExpansionBasis::MonomialE => expand_in_e(s, g, d),
    }
}

fn expand_in_p(s: &StructureData, g: &Polynomial, d: i64) -> Result<BTreeMap<Weight, Rational>> {
    let points = lattice::enumerate_lambda_plus(s, d);
    let polys: Vec<CapelliPolynomial> = points
        .par_iter()
        .map(|mu| interpolate_p(s, mu))
        .collect::<Result<_>>()?;
    let rho = s.rho();
    let mut coeffs: Vec<Rational> = Vec::with_capacity(points.len());
    for (i, mu) in points.iter().enumerate() {
        let node = rho + mu;
        let mut value = g.evaluate(&node);
        for j in 0..i {
            if s.ell_int(&points[j]) < s.ell_int(mu) {
                let pj = polys[j].poly.evaluate(&node);
                value -= &coeffs[j] * &pj;
            }
        }
        coeffs.push(value);
    }
    // exact round trip doubles as the basis-property check
    let mut resum = Polynomial::zero(s.rank());
    for (c, p) in coeffs.iter().zip(&polys) {
        if !c.is_zero() {
            resum = resum + p.poly.scale(c);
        }
    }
    if resum != *g {
        return Err(Error::SingularSystem(
            "p-basis expansion failed to reproduce the input".into(),
        ));
    }
    Ok(points
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

fn expand_in_e(s: &StructureData, g: &Polynomial, d: i64) -> Result<BTreeMap<Weight, Rational>> {
    let r = s.rank();
    let points = lattice::enumerate_lambda_plus(s, d);
    let unit_p: Vec<Polynomial> = (0..r)
        .map(|i| normalize_p(s, &Weight::unit(r, i)))
        .collect::<Result<_>>()?;
    let e_basis: Vec<Polynomial> = points
        .iter()
        .map(|lambda| {
            let mut acc = Polynomial::one(r);
            for (i, up) in unit_p.iter().enumerate() {
                let e = lambda.coord(i).as_i64().unwrap() as u32;
                if e > 0 {
                    acc = &acc * &up.pow(e);
                }
            }
            acc
        })
        .collect();
    // exact rectangular solve over the monomial coordinates
    let mut mono_index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for p in e_basis.iter().chain([g]) {
        for (exp, _) in p.terms() {
            let next = mono_index.len();
            mono_index.entry(exp.clone()).or_insert(next);
        }
    }
    let nrows = mono_index.len();
    let ncols = e_basis.len();
    let mut matrix = vec![vec![Rational::zero(); ncols]; nrows];
    for (j, p) in e_basis.iter().enumerate() {
        for (exp, c) in p.terms() {
            matrix[mono_index[exp]][j] = c.clone();
        }
    }
    let mut rhs = vec![Rational::zero(); nrows];
    for (exp, c) in g.terms() {
        rhs[mono_index[exp]] = c.clone();
    }
    let coeffs = crate::exact::solve_unique_rectangular(&matrix, &rhs).map_err(|e| {
        Error::SingularSystem(format!("monomial basis expansion failed: {e}"))
    })?;
    Ok(points
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .collect())
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
    fn basis_counts_match_lambda_plus() {
        let s = case_i_n2();
        // degree ≤ 2: {1, m₍₁₎, m₍₂₎, m₍₁,₁₎} — four elements
        let b = invariant_basis(&s, 2);
        assert_eq!(b.len(), 4);
        assert_eq!(b.len(), lattice::enumerate_lambda_plus(&s, 2).len());
        let b0 = invariant_basis(&s, 0);
        assert_eq!(b0.len(), 1);
        assert!(b0.elements[0].is_constant());
        for e in &b.elements {
            assert!(s.is_invariant(e));
        }
    }

    #[test]
    fn p_zero_is_one() {
        let s = case_i_n2();
        let p = interpolate_p(&s, &w(&[0, 0])).unwrap();
        assert_eq!(p.poly, Polynomial::one(2));
        assert!(p.verify(&s));
    }

    #[test]
    fn p_e1_is_shifted_ell() {
        // p_{e₁} = ℓ(z) − ℓ(ρ) = x₁ + 2x₂ − 2 at r=1, s=1/2
        let s = case_i_n2();
        let p = interpolate_p(&s, &w(&[1, 0])).unwrap();
        let expected = s.ell().to_polynomial()
            - &Polynomial::constant(2, Rational::from_integer(2));
        assert_eq!(p.poly, expected);
        assert!(p.verify(&s));
    }

    #[test]
    fn p_e1_plus_e2_satisfies_vanishing_table() {
        let s = case_i_n2();
        let p = interpolate_p(&s, &w(&[0, 1])).unwrap();
        assert_eq!(p.poly.degree(), 2);
        assert!(p.verify(&s));
        let rho = s.rho();
        assert_eq!(p.poly.evaluate(&(rho + &w(&[0, 1]))), Rational::one());
        for other in [w(&[0, 0]), w(&[1, 0]), w(&[2, 0])] {
            assert!(p.poly.evaluate(&(rho + &other)).is_zero());
        }
    }

    #[test]
    fn path_value_matches_interpolation() {
        // single path (e₁, e₁+e₂): f_{e₂}(ρ+e₁+e₂) = 2 and ℓ(μ) = 2
        let s = case_i_n2();
        let v = p_value_by_paths(&s, &w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(v, Rational::from_integer(2));
        let p = interpolate_p(&s, &w(&[1, 0])).unwrap();
        assert_eq!(p.poly.evaluate(&(s.rho() + &w(&[0, 1]))), v);
        // λ = μ: the empty path
        assert_eq!(
            p_value_by_paths(&s, &w(&[1, 0]), &w(&[1, 0])).unwrap(),
            Rational::one()
        );
        // extra vanishing: μ − λ ∉ Λ
        assert_eq!(
            p_value_by_paths(&s, &w(&[0, 1]), &w(&[2, 0])).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn normalized_p_for_e1_is_unchanged() {
        // f_{e₁}(ρ+e₁) = 1 at r=1, s=1/2, so P_{e₁} = p_{e₁}
        let s = case_i_n2();
        let p = interpolate_p(&s, &w(&[1, 0])).unwrap().poly;
        let cap = normalize_p(&s, &w(&[1, 0])).unwrap();
        assert_eq!(cap, p);
        // λ = 0 → P₀ = 1
        assert_eq!(normalize_p(&s, &w(&[0, 0])).unwrap(), Polynomial::one(2));
    }

    #[test]
    fn expansion_examples() {
        let s = case_i_n2();
        // g = p_{e₁} in the p-basis is a single coefficient
        let p1 = interpolate_p(&s, &w(&[1, 0])).unwrap().poly;
        let exp = expand_in_basis(&s, &p1, ExpansionBasis::InterpolationP, 1).unwrap();
        assert_eq!(exp.len(), 1);
        assert_eq!(exp[&w(&[1, 0])], Rational::one());
        // g = C(ℓ(z)−2, 2) = Σ_{ℓ(τ)=2} p_τ
        let ell_shift = s.ell().to_polynomial()
            - &Polynomial::constant(2, Rational::from_integer(2));
        let g = Polynomial::binomial_of(&ell_shift, 2);
        let exp = expand_in_basis(&s, &g, ExpansionBasis::InterpolationP, 2).unwrap();
        assert_eq!(exp.len(), 2);
        assert_eq!(exp[&w(&[2, 0])], Rational::one());
        assert_eq!(exp[&w(&[0, 1])], Rational::one());
    }

    #[test]
    fn normalized_product_is_triangular_with_unit_leading_term() {
        // P_{e₁}·P_{e₁} expands with coefficient 1 on P_{2e₁}
        let s = case_i_n2();
        let cap = normalize_p(&s, &w(&[1, 0])).unwrap();
        let prod = &cap * &cap;
        let exp = expand_in_basis(&s, &prod, ExpansionBasis::NormalizedP, 2).unwrap();
        assert_eq!(exp[&w(&[2, 0])], Rational::one());
        for (nu, _) in &exp {
            assert!(lattice::leq(&s, nu, &w(&[2, 0])));
        }
    }

    #[test]
    fn monomial_basis_round_trip() {
        let s = case_i_n2();
        let p1 = normalize_p(&s, &w(&[1, 0])).unwrap();
        let p2 = normalize_p(&s, &w(&[0, 1])).unwrap();
        let g = (&p1 * &p1) + p2.scale(&Rational::new(3, 7));
        let exp = expand_in_basis(&s, &g, ExpansionBasis::MonomialE, 2).unwrap();
        // e_λ = P_{η₁}^{λ₁}·P_{η₂}^{λ₂}: re-sum and compare
        let unit1 = normalize_p(&s, &Weight::unit(2, 0)).unwrap();
        let unit2 = normalize_p(&s, &Weight::unit(2, 1)).unwrap();
        let mut resum = Polynomial::zero(2);
        for (lam, c) in &exp {
            let e1 = lam.coord(0).as_i64().unwrap() as u32;
            let e2 = lam.coord(1).as_i64().unwrap() as u32;
            let term = &unit1.pow(e1) * &unit2.pow(e2);
            resum = resum + term.scale(c);
        }
        assert_eq!(resum, g);
    }

    #[test]
    fn non_invariant_input_is_rejected() {
        let s = case_i_n2();
        let err = expand_in_basis(
            &s,
            &Polynomial::variable(2, 0),
            ExpansionBasis::InterpolationP,
            2,
        );
        assert!(matches!(err, Err(Error::NotInvariant(_))));
    }
}

//! Rational functions with factored numerators and denominators.
//!
//! The denominator is a multiset of integer-shifted linear forms
//! `form(z) − shift`, never an expanded polynomial. The numerator is a
//! cofactor polynomial times a multiset of rational-shifted linear
//! factors: the coefficient functions of difference operators are
//! products of such factors with small cofactors, and keeping the
//! factorization makes products, argument shifts and W-pullbacks cheap.
//! Only sums force expansion. Reduction cancels matching factors
//! directly and otherwise divides exactly or not at all.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use crate::{Error, Result};

use super::{LinearForm, Polynomial, Rational, Weight};

/// A linear factor `form(z) − shift`, sign-canonical: the first nonzero
/// coordinate of `form` is positive. Denominators require integral
/// shifts; numerator factors may shift by arbitrary rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DenominatorFactor {
    pub form: LinearForm,
    pub shift: Rational,
}

impl DenominatorFactor {
    pub fn to_polynomial(&self) -> Polynomial {
        self.form.to_polynomial()
            - &Polynomial::constant(self.form.rank(), self.shift.clone())
    }

    pub fn evaluate(&self, w: &Weight) -> Rational {
        self.form.apply(w) - self.shift.clone()
    }

    pub fn shift_i64(&self) -> i64 {
        self.shift
            .as_i64()
            .expect("denominator shifts are integral")
    }
}

impl fmt::Display for DenominatorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_polynomial())
    }
}

impl fmt::Debug for DenominatorFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

type FactorMap = BTreeMap<DenominatorFactor, u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct FactoredRationalFunction {
    cofactor: Polynomial,
    num_factors: FactorMap,
    denominator: FactorMap,
}

fn insert_factor(map: &mut FactorMap, factor: DenominatorFactor, mult: u32) {
    if mult > 0 {
        *map.entry(factor).or_insert(0) += mult;
    }
}

impl FactoredRationalFunction {
    pub fn from_polynomial(p: Polynomial) -> Self {
        FactoredRationalFunction {
            cofactor: p,
            num_factors: BTreeMap::new(),
            denominator: BTreeMap::new(),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(Polynomial::one(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.cofactor.nvars()
    }

    /// The numerator as an expanded polynomial.
    pub fn expanded_numerator(&self) -> Polynomial {
        let mut num = self.cofactor.clone();
        for (factor, m) in &self.num_factors {
            let fp = factor.to_polynomial();
            for _ in 0..*m {
                num = &num * &fp;
            }
        }
        num
    }

    pub fn numerator_degree(&self) -> u32 {
        if self.cofactor.is_zero() {
            return 0;
        }
        self.cofactor.degree() + self.num_factors.values().sum::<u32>()
    }

    pub fn denominator(&self) -> &FactorMap {
        &self.denominator
    }

    pub fn numerator_factors(&self) -> &FactorMap {
        &self.num_factors
    }

    pub fn cofactor(&self) -> &Polynomial {
        &self.cofactor
    }

    pub fn is_zero(&self) -> bool {
        self.cofactor.is_zero()
    }

    /// True when the denominator multiset is empty.
    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.is_polynomial() {
            Some(self.expanded_numerator())
        } else {
            None
        }
    }

    /// Degree as a rational function: numerator degree − Σ denominator
    /// multiplicities.
    pub fn rational_degree(&self) -> i64 {
        self.numerator_degree() as i64 - self.denominator_degree() as i64
    }

    pub fn denominator_degree(&self) -> u32 {
        self.denominator.values().sum()
    }

    fn canonicalize(&mut self, form: LinearForm, shift: Rational, mult: u32) -> DenominatorFactor {
        assert!(!form.is_zero(), "zero linear form as a factor");
        if form.leading_sign() < 0 {
            // −form(z) + shift = −(form(z) − shift)
            if mult % 2 == 1 {
                self.cofactor = self.cofactor.clone().neg();
            }
            DenominatorFactor {
                form: -&form,
                shift: -shift,
            }
        } else {
            DenominatorFactor { form, shift }
        }
    }

    /// Push a numerator factor `form(z) − shift`.
    pub fn push_numerator_factor(&mut self, form: LinearForm, shift: &Rational, mult: u32) {
        if mult == 0 {
            return;
        }
        let factor = self.canonicalize(form, shift.clone(), mult);
        insert_factor(&mut self.num_factors, factor, mult);
    }

    /// Push a denominator factor `form(z) − shift`; the shift must be
    /// an integer.
    pub fn push_denominator_factor(&mut self, form: LinearForm, shift: &Rational, mult: u32) {
        if mult == 0 {
            return;
        }
        assert!(
            shift.is_integer(),
            "denominator shifts must be integers, got {shift}"
        );
        let factor = self.canonicalize(form, shift.clone(), mult);
        insert_factor(&mut self.denominator, factor, mult);
    }

    pub fn neg(&self) -> Self {
        FactoredRationalFunction {
            cofactor: self.cofactor.clone().neg(),
            num_factors: self.num_factors.clone(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        FactoredRationalFunction {
            cofactor: self.cofactor.scale(c),
            num_factors: self.num_factors.clone(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        let mut out = FactoredRationalFunction {
            cofactor: &self.cofactor * &other.cofactor,
            num_factors: self.num_factors.clone(),
            denominator: self.denominator.clone(),
        };
        for (f, m) in &other.num_factors {
            insert_factor(&mut out.num_factors, f.clone(), *m);
        }
        for (f, m) in &other.denominator {
            insert_factor(&mut out.denominator, f.clone(), *m);
        }
        out.cancel_matching_factors();
        out
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        if p.is_zero() || self.is_zero() {
            return Self::zero(self.nvars());
        }
        FactoredRationalFunction {
            cofactor: &self.cofactor * p,
            num_factors: self.num_factors.clone(),
            denominator: self.denominator.clone(),
        }
    }

    /// Cancel equal factors between numerator and denominator.
    fn cancel_matching_factors(&mut self) {
        let keys: Vec<DenominatorFactor> = self
            .num_factors
            .keys()
            .filter(|f| self.denominator.contains_key(*f))
            .cloned()
            .collect();
        for key in keys {
            let n = self.num_factors[&key];
            let d = self.denominator[&key];
            let c = n.min(d);
            if n == c {
                self.num_factors.remove(&key);
            } else {
                self.num_factors.insert(key.clone(), n - c);
            }
            if d == c {
                self.denominator.remove(&key);
            } else {
                self.denominator.insert(key, d - c);
            }
        }
    }

    /// Pairwise sum; see [`FactoredRationalFunction::sum`].
    pub fn add(&self, other: &Self) -> Self {
        Self::sum(self.nvars(), vec![self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::sum(self.nvars(), vec![self.clone(), other.neg()])
    }

    /// Sum over one upfront common denominator: each part is expanded
    /// and lifted exactly once.
    pub fn sum(nvars: usize, parts: Vec<Self>) -> Self {
        let parts: Vec<Self> = parts.into_iter().filter(|p| !p.is_zero()).collect();
        if parts.is_empty() {
            return Self::zero(nvars);
        }
        if parts.len() == 1 {
            return parts.into_iter().next().unwrap();
        }
        let mut den: FactorMap = BTreeMap::new();
        for p in &parts {
            for (f, m) in &p.denominator {
                let e = den.entry(f.clone()).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        let mut numerator = Polynomial::zero(nvars);
        for p in parts {
            let mut n = p.expanded_numerator();
            for (factor, m) in &den {
                let have = p.denominator.get(factor).copied().unwrap_or(0);
                if have < *m {
                    let fp = factor.to_polynomial();
                    for _ in have..*m {
                        n = &n * &fp;
                    }
                }
            }
            numerator = numerator + n;
        }
        if numerator.is_zero() {
            return Self::zero(nvars);
        }
        FactoredRationalFunction {
            cofactor: numerator,
            num_factors: BTreeMap::new(),
            denominator: den,
        }
    }

    /// The function z ↦ f(z − η). Denominator shifts must stay
    /// integral, so η has to pair integrally with every denominator
    /// form.
    pub fn shift_argument(&self, eta: &Weight) -> Result<Self> {
        let mut out = FactoredRationalFunction::from_polynomial(self.cofactor.shift_argument(eta));
        for (factor, m) in &self.num_factors {
            let moved = &factor.shift + &factor.form.apply(eta);
            out.push_numerator_factor(factor.form.clone(), &moved, *m);
        }
        for (factor, m) in &self.denominator {
            let moved = &factor.shift + &factor.form.apply(eta);
            if !moved.is_integer() {
                return Err(Error::Undefined(format!(
                    "shift of denominator factor {factor} by {eta} is not integral"
                )));
            }
            out.push_denominator_factor(factor.form.clone(), &moved, *m);
        }
        Ok(out)
    }

    /// The pullback z ↦ f(w⁻¹z) for a group element with basis images
    /// wω_i: the cofactor is substituted, every factor form α becomes
    /// wα with its shift unchanged.
    pub fn transform(&self, images: &[LinearForm]) -> Self {
        let map_form = |form: &LinearForm| -> LinearForm {
            let rank = form.rank();
            let mut coords = vec![Rational::zero(); rank];
            for (j, a) in form.coords().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i, c) in images[j].coords().iter().enumerate() {
                    if !c.is_zero() {
                        coords[i] += a * c;
                    }
                }
            }
            LinearForm::new(coords)
        };
        let mut out = FactoredRationalFunction::from_polynomial(self.cofactor.substitute(images));
        for (factor, m) in &self.num_factors {
            out.push_numerator_factor(map_form(&factor.form), &factor.shift, *m);
        }
        for (factor, m) in &self.denominator {
            out.push_denominator_factor(map_form(&factor.form), &factor.shift, *m);
        }
        out
    }

    /// Cancel every denominator factor that divides the numerator:
    /// first factor-for-factor, then by exact division of the expanded
    /// cofactor. Evaluation agrees with the input wherever both are
    /// defined.
    pub fn reduce(&self) -> Self {
        if self.is_zero() {
            return Self::zero(self.nvars());
        }
        let mut out = self.clone();
        out.cancel_matching_factors();
        if out.denominator.is_empty() {
            return out;
        }
        // remaining denominators must divide the expanded numerator
        let mut num = out.expanded_numerator();
        let mut den = FactorMap::new();
        for (factor, &mult) in &out.denominator {
            let fp = factor.to_polynomial();
            let mut remaining = mult;
            while remaining > 0 {
                match num.divide_exact(&fp) {
                    Some(q) => {
                        num = q;
                        remaining -= 1;
                    }
                    None => break,
                }
            }
            if remaining > 0 {
                den.insert(factor.clone(), remaining);
            }
        }
        if num.is_zero() {
            return Self::zero(self.nvars());
        }
        FactoredRationalFunction {
            cofactor: num,
            num_factors: BTreeMap::new(),
            denominator: den,
        }
    }

    /// Move the candidate linear factors that exactly divide the
    /// cofactor out into the factored numerator part. Dividing by the
    /// sign-canonical factor keeps the value unchanged with no extra
    /// bookkeeping.
    pub fn extract_numerator_factors(&mut self, candidates: &[(LinearForm, Rational)]) {
        if self.is_zero() {
            return;
        }
        for (form, shift) in candidates {
            if form.is_zero() {
                continue;
            }
            let factor = if form.leading_sign() < 0 {
                DenominatorFactor {
                    form: -form,
                    shift: -shift.clone(),
                }
            } else {
                DenominatorFactor {
                    form: form.clone(),
                    shift: shift.clone(),
                }
            };
            let fp = factor.to_polynomial();
            while let Some(q) = self.cofactor.divide_exact(&fp) {
                self.cofactor = q;
                insert_factor(&mut self.num_factors, factor.clone(), 1);
            }
        }
    }

    /// Exact zero test for a sum of parts, without expanding over ℚ:
    /// dense expansion modulo enough word-sized primes, with the height
    /// bound computed from L1 norms certifying the conclusion in both
    /// directions. Falls back to the symbolic sum when the prime table
    /// cannot cover the bound.
    pub fn sum_is_zero(nvars: usize, parts: &[Self]) -> bool {
        use super::modular::{
            poly_denominator_lcm, poly_l1, primes_for_bound, rational_mod, ModDense, SimplexIndex,
        };
        use num_integer::Integer;

        let parts: Vec<&Self> = parts.iter().filter(|p| !p.is_zero()).collect();
        if parts.is_empty() {
            return true;
        }
        let mut den: FactorMap = BTreeMap::new();
        for p in &parts {
            for (f, m) in &p.denominator {
                let e = den.entry(f.clone()).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        // expansion plans: cofactor, then numerator factors and lifts
        struct Plan<'a> {
            cofactor: &'a Polynomial,
            factors: Vec<(&'a DenominatorFactor, u32)>,
        }
        let mut plans = Vec::with_capacity(parts.len());
        let mut bound = 0u32;
        let mut height = Rational::zero();
        let mut d0 = num_bigint::BigInt::from(1);
        let factor_l1 = |f: &DenominatorFactor| -> Rational {
            let mut acc = f.shift.abs();
            for c in f.form.coords() {
                acc += c.abs();
            }
            acc
        };
        let factor_den = |f: &DenominatorFactor| -> num_bigint::BigInt {
            let mut acc = f.shift.denominator().clone();
            for c in f.form.coords() {
                acc = acc.lcm(c.denominator());
            }
            acc
        };
        for p in &parts {
            let mut factors: Vec<(&DenominatorFactor, u32)> = Vec::new();
            for (f, m) in &p.num_factors {
                factors.push((f, *m));
            }
            for (f, m) in &den {
                let have = p.denominator.get(f).copied().unwrap_or(0);
                if have < *m {
                    factors.push((f, m - have));
                }
            }
            let deg = p.cofactor.degree() + factors.iter().map(|(_, m)| m).sum::<u32>();
            bound = bound.max(deg);
            let mut h = poly_l1(&p.cofactor);
            let mut dpart = poly_denominator_lcm(&p.cofactor);
            for (f, m) in &factors {
                let l1 = factor_l1(f);
                for _ in 0..*m {
                    h *= l1.clone();
                    dpart = dpart.lcm(&factor_den(f));
                }
            }
            height += h;
            d0 = d0.lcm(&dpart);
            plans.push(Plan {
                cofactor: &p.cofactor,
                factors,
            });
        }
        let Some(primes) = primes_for_bound(&height, &d0) else {
            return Self::sum(nvars, parts.into_iter().cloned().collect()).is_zero();
        };
        let idx = SimplexIndex::new(nvars, bound);
        for p in primes {
            let mut total = ModDense::zero(&idx, p);
            for plan in &plans {
                let Some(mut dense) = ModDense::from_polynomial(&idx, p, plan.cofactor) else {
                    // denominator hit: covered by p ∤ D₀, but stay safe
                    return Self::sum(nvars, parts.iter().map(|x| (*x).clone()).collect())
                        .is_zero();
                };
                for (f, m) in &plan.factors {
                    let form: Vec<u64> = f
                        .form
                        .coords()
                        .iter()
                        .map(|c| rational_mod(c, p).expect("p does not divide D₀"))
                        .collect();
                    let shift = rational_mod(&f.shift, p).expect("p does not divide D₀");
                    for _ in 0..*m {
                        dense.mul_linear(&form, shift);
                    }
                }
                total.add_assign(&dense);
            }
            if !total.is_zero() {
                return false;
            }
        }
        true
    }

    /// Exact value at a weight; `None` when a denominator factor
    /// vanishes there.
    pub fn evaluate(&self, w: &Weight) -> Option<Rational> {
        let mut den = Rational::one();
        for (factor, m) in &self.denominator {
            let v = factor.evaluate(w);
            if v.is_zero() {
                return None;
            }
            den *= v.pow(*m);
        }
        let mut num = self.cofactor.evaluate(w);
        for (factor, m) in &self.num_factors {
            num *= factor.evaluate(w).pow(*m);
        }
        Some(num / den)
    }

    /// Functional equality via cross multiplication and reduction.
    pub fn eq_as_function(&self, other: &Self) -> bool {
        self.sub(other).reduce().is_zero()
    }
}

impl fmt::Display for FactoredRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.cofactor)?;
        for (factor, m) in &self.num_factors {
            write!(f, "{factor}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        if !self.denominator.is_empty() {
            write!(f, " / ")?;
            for (factor, m) in &self.denominator {
                write!(f, "{factor}")?;
                if *m > 1 {
                    write!(f, "^{m}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FactoredRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::variable(2, i)
    }

    fn frf(num: Polynomial, dens: &[(LinearForm, i64)]) -> FactoredRationalFunction {
        let mut f = FactoredRationalFunction::from_polynomial(num);
        for (form, s) in dens {
            f.push_denominator_factor(form.clone(), &Rational::from_integer(*s), 1);
        }
        f
    }

    #[test]
    fn reduce_cancels_exact_factor() {
        // (ω1−ω2)(ω1+ω2) / (ω1−ω2) → ω1+ω2
        let num = &(x(0) - x(1)) * &(x(0) + x(1));
        let f = frf(num, &[(LinearForm::from_integers(&[1, -1]), 0)]);
        let red = f.reduce();
        assert!(red.is_polynomial());
        assert_eq!(red.expanded_numerator(), x(0) + x(1));
    }

    #[test]
    fn reduce_leaves_nondivisible_untouched() {
        // (ω1−ω2−1)(ω1−1/2) / (ω1−ω2) is already reduced
        let a = x(0) - x(1) - Polynomial::one(2);
        let b = x(0) - Polynomial::constant(2, Rational::new(1, 2));
        let f = frf(&a * &b, &[(LinearForm::from_integers(&[1, -1]), 0)]);
        let red = f.reduce();
        assert_eq!(red.expanded_numerator(), f.expanded_numerator());
        assert_eq!(red.denominator(), f.denominator());
    }

    #[test]
    fn reduce_zero_clears_denominator() {
        let f = frf(Polynomial::zero(2), &[(LinearForm::from_integers(&[1, 0]), 3)]);
        let red = f.reduce();
        assert!(red.is_zero() && red.is_polynomial());
    }

    #[test]
    fn factor_level_cancellation() {
        // (ω1−3)·p / (ω1−3) cancels without any division
        let mut f = FactoredRationalFunction::from_polynomial(x(1).pow(2));
        f.push_numerator_factor(LinearForm::from_integers(&[1, 0]), &Rational::from_integer(3), 1);
        f.push_denominator_factor(LinearForm::from_integers(&[1, 0]), &Rational::from_integer(3), 1);
        let red = f.reduce();
        assert!(red.is_polynomial());
        assert_eq!(red.expanded_numerator(), x(1).pow(2));
    }

    #[test]
    fn sign_canonicalization() {
        // 1/(−ω1 + 2) equals −1/(ω1 − 2)
        let mut f = FactoredRationalFunction::one(2);
        f.push_denominator_factor(
            LinearForm::from_integers(&[-1, 0]),
            &Rational::from_integer(-2),
            1,
        );
        let w = Weight::from_integers(&[3, 0]);
        assert_eq!(f.evaluate(&w).unwrap(), Rational::from_integer(-1));
    }

    #[test]
    fn addition_agrees_with_values() {
        let f = frf(x(0), &[(LinearForm::from_integers(&[1, -1]), 0)]);
        let g = frf(x(1), &[(LinearForm::from_integers(&[0, 1]), 1)]);
        let sum = f.add(&g);
        let w = Weight::from_integers(&[5, 3]);
        assert_eq!(
            sum.evaluate(&w).unwrap(),
            f.evaluate(&w).unwrap() + g.evaluate(&w).unwrap()
        );
    }

    #[test]
    fn shift_moves_factor_shifts() {
        let mut f = frf(x(0), &[(LinearForm::from_integers(&[1, -1]), 0)]);
        f.push_numerator_factor(
            LinearForm::from_integers(&[1, 1]),
            &Rational::new(1, 2),
            1,
        );
        let shifted = f.shift_argument(&Weight::from_integers(&[1, 0])).unwrap();
        let w = Weight::from_integers(&[4, 1]);
        let back = Weight::from_integers(&[3, 1]);
        assert_eq!(shifted.evaluate(&w), f.evaluate(&back));
    }

    #[test]
    fn extraction_factors_the_cofactor() {
        let a = x(0) - Polynomial::constant(2, Rational::new(1, 5));
        let b = x(0) + x(1).scale(&Rational::from_integer(2)) - Polynomial::one(2);
        let mut f = FactoredRationalFunction::from_polynomial(&(&a * &b) * &b);
        f.extract_numerator_factors(&[
            (LinearForm::from_integers(&[1, 0]), Rational::new(1, 5)),
            (LinearForm::from_integers(&[1, 2]), Rational::one()),
            (LinearForm::from_integers(&[0, 1]), Rational::one()),
        ]);
        assert_eq!(f.numerator_factors().len(), 2);
        assert_eq!(f.numerator_degree(), 3);
        assert!(f.cofactor().is_constant());
        // value is unchanged
        let w = Weight::from_integers(&[2, 5]);
        let expected = (&(&a * &b) * &b).evaluate(&w);
        assert_eq!(f.evaluate(&w).unwrap(), expected);
    }

    #[test]
    fn transform_by_group_images() {
        // s₁₂ of Case I n=2: ω1 ↦ −ω1, ω2 ↦ ω1+ω2
        let images = vec![
            LinearForm::from_integers(&[-1, 0]),
            LinearForm::from_integers(&[1, 1]),
        ];
        let mut f = frf(
            x(0) + x(1).pow(2),
            &[(LinearForm::from_integers(&[1, 0]), 1)],
        );
        f.push_numerator_factor(LinearForm::from_integers(&[0, 1]), &Rational::new(1, 2), 1);
        let g = f.transform(&images);
        // g(z) = f(w⁻¹z) and w is an involution, so g(z) = f(wz) with
        // the contragredient action wz = (−z₁, z₁+z₂) in Σ∨-coordinates
        let z = Weight::from_integers(&[5, 2]);
        let wz = Weight::new(vec![-z.coord(0), z.coord(0) + z.coord(1)]);
        assert_eq!(g.evaluate(&z), f.evaluate(&wz));
    }
}

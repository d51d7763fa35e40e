//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a BTreeMap keyed by exponent tuples, so iteration
//! order (and serialized output) is lexicographic and byte-stable. No
//! zero coefficients are ever stored; the zero polynomial has an empty
//! term map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{LinearForm, Rational, Weight};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Polynomial { nvars, terms }
    }

    /// The variable x_i, representing the basis form ω_i.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exp, Rational::one());
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (exp, c) in it {
            p.add_term(exp, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation under the Σ/Σ∨ pairing: substitute x_i = ω_i(w).
    pub fn evaluate(&self, w: &Weight) -> Rational {
        assert_eq!(w.rank(), self.nvars);
        let mut total = Rational::zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in exp.iter().enumerate() {
                if e > 0 {
                    term *= w.coord(i).pow(e);
                }
            }
            total += term;
        }
        total
    }

    /// The shifted polynomial q with q(z) = p(z − η), same degree.
    pub fn shift_argument(&self, eta: &Weight) -> Polynomial {
        assert_eq!(eta.rank(), self.nvars);
        if eta.is_zero() {
            return self.clone();
        }
        // x_i ↦ x_i − ω_i(η), expanded per term by the binomial theorem.
        let mut out = Polynomial::zero(self.nvars);
        for (exp, c) in &self.terms {
            let mut expanded = Polynomial::constant(self.nvars, c.clone());
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let shift = -eta.coord(i);
                let mut factor = Polynomial::zero(self.nvars);
                // (x_i + shift)^e
                for k in 0..=e {
                    let coef = Rational::binomial(e, k) * shift.pow(e - k);
                    if !coef.is_zero() {
                        let mut mono = vec![0; self.nvars];
                        mono[i] = k;
                        factor.add_term(mono, coef);
                    }
                }
                expanded = &expanded * &factor;
            }
            out = out + expanded;
        }
        out
    }

    /// Substitute x_i ↦ forms[i]; used for the W-action on polynomials.
    pub fn substitute(&self, forms: &[LinearForm]) -> Polynomial {
        assert_eq!(forms.len(), self.nvars);
        let images: Vec<Polynomial> = forms.iter().map(LinearForm::to_polynomial).collect();
        let mut out = Polynomial::zero(self.nvars);
        for (exp, c) in &self.terms {
            let mut term = Polynomial::constant(self.nvars, c.clone());
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &images[i];
                }
            }
            out = out + term;
        }
        out
    }

    /// h⁻(z) = h(−z): negate every variable.
    pub fn flip(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let deg: u32 = e.iter().sum();
                    let c = if deg % 2 == 1 { -c } else { c.clone() };
                    (e.clone(), c)
                })
                .collect(),
        }
    }

    /// Exact division; `None` when the remainder is nonzero. Single
    /// divisor, lexicographic leading terms, so a zero remainder is
    /// decisive.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lead_exp, lead_coef) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while !rem.is_zero() {
            let (rexp, rcoef) = rem.terms.iter().next_back().unwrap();
            let mut qexp = vec![0u32; self.nvars];
            let mut divisible = true;
            for i in 0..self.nvars {
                if rexp[i] < lead_exp[i] {
                    divisible = false;
                    break;
                }
                qexp[i] = rexp[i] - lead_exp[i];
            }
            if !divisible {
                return None;
            }
            let qcoef = rcoef / lead_coef;
            let mut mono = Polynomial::zero(self.nvars);
            mono.add_term(qexp, qcoef);
            rem = rem - &mono * divisor;
            quot = quot + mono;
        }
        Some(quot)
    }

    /// Generalized binomial coefficient C(p, k) = p(p−1)⋯(p−k+1)/k!.
    pub fn binomial_of(p: &Polynomial, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(p.nvars);
        for j in 0..k {
            let shifted = p.clone() - &Polynomial::constant(p.nvars, Rational::from_integer(j as i64));
            acc = &acc * &shifted;
        }
        acc.scale(&Rational::factorial(k).recip())
    }

    /// Terms in the serialized wire format, sorted lexicographically by
    /// exponent.
    pub fn serial_terms(&self) -> Vec<(Vec<u32>, String)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.to_string()))
            .collect()
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Add<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + rhs.neg()
    }
}

impl Sub<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
        self
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.terms.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ac = c.abs();
            let is_const = exp.iter().all(|&e| e == 0);
            if !ac.is_one() || is_const {
                write!(f, "{ac}")?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut started = false;
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if started {
                    write!(f, "*")?;
                }
                started = true;
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
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

    #[test]
    fn shift_univariate_square() {
        // (x1)² shifted by η1 becomes (x1 − 1)² = x1² − 2x1 + 1
        let p = x(0).pow(2);
        let shifted = p.shift_argument(&Weight::unit(2, 0));
        let expected = x(0).pow(2) - x(0).scale(&Rational::from_integer(2)) + Polynomial::one(2);
        assert_eq!(shifted, expected);
    }

    #[test]
    fn constants_are_shift_invariant() {
        let p = Polynomial::constant(2, Rational::new(3, 5));
        assert_eq!(p.shift_argument(&Weight::from_integers(&[4, -1])), p);
    }

    #[test]
    fn shift_of_linear_form_subtracts_value() {
        // ℓ = x1 + 2x2 (Case I n=2 in Σ-coordinates), ℓ(η1) = 1
        let ell = x(0) + x(1).scale(&Rational::from_integer(2));
        let shifted = ell.shift_argument(&Weight::unit(2, 0));
        assert_eq!(shifted, ell - Polynomial::one(2));
    }

    #[test]
    fn evaluation_is_dual_pairing() {
        // p = ω1², w = η1 → 1
        let p = x(0).pow(2);
        assert_eq!(p.evaluate(&Weight::unit(2, 0)), Rational::one());
        // p = 1 at anything → 1
        assert_eq!(
            Polynomial::one(2).evaluate(&Weight::from_integers(&[7, -3])),
            Rational::one()
        );
    }

    #[test]
    fn evaluate_ell_at_rho_case_i_n2() {
        // ℓ = ω1 + 2ω2, ρ has Σ∨-coordinates (r, s) = (1, 1/2): ℓ(ρ) = r + 2s = 2
        let ell = x(0) + x(1).scale(&Rational::from_integer(2));
        let rho = Weight::new(vec![Rational::one(), Rational::new(1, 2)]);
        assert_eq!(ell.evaluate(&rho), Rational::from_integer(2));
    }

    #[test]
    fn exact_division() {
        let a = x(0) - x(1);
        let b = x(0) + x(1);
        let prod = &a * &b;
        assert_eq!(prod.divide_exact(&a).unwrap(), b);
        // remainder path
        let c = x(0) - Polynomial::constant(2, Rational::new(1, 2));
        assert!((&a * &c + Polynomial::one(2)).divide_exact(&a).is_none());
    }

    #[test]
    fn flip_negates_odd_degrees() {
        let p = x(0).pow(2) + x(1).scale(&Rational::from_integer(3)) + Polynomial::one(2);
        let f = p.flip();
        assert_eq!(
            f,
            x(0).pow(2) - x(1).scale(&Rational::from_integer(3)) + Polynomial::one(2)
        );
    }

    #[test]
    fn binomial_of_linear() {
        // C(x1, 2) = x1(x1−1)/2
        let b = Polynomial::binomial_of(&x(0), 2);
        let expected = (&x(0) * &(x(0) - Polynomial::one(2))).scale(&Rational::new(1, 2));
        assert_eq!(b, expected);
    }
}

//! Linear forms (Σ-coordinates of Γ⊗ℚ) and weights (Σ∨-coordinates of V).

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{Polynomial, Rational};

/// An element of Γ⊗ℚ in the Σ basis. Integer coordinates mean the form
/// lies in Γ; coordinate i is the value on the dual basis weight η_i.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coords: Vec<Rational>,
}

/// A point of V in Σ∨-coordinates. Integer coordinates mean the weight
/// lies in Γ∨; nonnegative integer coordinates mean Λ₊.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    coords: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coords: Vec<Rational>) -> Self {
        LinearForm { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        LinearForm::new(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LinearForm::new(vec![Rational::zero(); rank])
    }

    /// The basis form ω_i.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); rank];
        coords[i] = Rational::one();
        LinearForm { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// Bilinear pairing with a weight.
    pub fn apply(&self, w: &Weight) -> Rational {
        self.coords
            .iter()
            .zip(w.coords())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// True when all coordinates are integers, i.e. the form is in Γ.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rational::is_integer)
    }

    /// All coordinates ≥ 0, i.e. nonnegative on Σ∨.
    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn is_nonpositive(&self) -> bool {
        self.coords.iter().all(|c| !c.is_positive())
    }

    /// Integer coordinates with gcd 1 (primitive vector of Γ).
    pub fn is_primitive(&self) -> bool {
        if !self.is_integral() || self.is_zero() {
            return false;
        }
        let mut g = BigInt::zero();
        for c in &self.coords {
            g = g.gcd(&c.as_integer().unwrap());
        }
        g == BigInt::from(1)
    }

    /// Scale an integral form to its primitive representative, keeping
    /// the direction.
    pub fn primitive_part(&self) -> Option<LinearForm> {
        if !self.is_integral() || self.is_zero() {
            return None;
        }
        let mut g = BigInt::zero();
        for c in &self.coords {
            g = g.gcd(&c.as_integer().unwrap());
        }
        let g = Rational::from_bigint(g);
        Some(LinearForm::new(
            self.coords.iter().map(|c| c / &g).collect(),
        ))
    }

    /// The degree-one polynomial representing this form.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.rank());
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                p = p + Polynomial::variable(self.rank(), i).scale(c);
            }
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> LinearForm {
        LinearForm::new(self.coords.iter().map(|a| a * c).collect())
    }

    /// Sign of the first nonzero coordinate; 0 for the zero form.
    pub fn leading_sign(&self) -> i32 {
        for c in &self.coords {
            if c.is_positive() {
                return 1;
            }
            if c.is_negative() {
                return -1;
            }
        }
        0
    }
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Weight::new(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![Rational::zero(); rank])
    }

    /// The dual basis weight η_i.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); rank];
        coords[i] = Rational::one();
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rational::is_integer)
    }

    /// Membership in Λ₊ = ℕΣ∨: all coordinates nonnegative integers.
    pub fn is_dominant_integral(&self) -> bool {
        self.coords
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn integer_coords(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(Rational::as_i64).collect()
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight::new(self.coords.iter().map(|a| a * c).collect())
    }
}

macro_rules! vec_ops {
    ($ty:ident) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                assert_eq!(self.coords.len(), rhs.coords.len());
                $ty::new(
                    self.coords
                        .iter()
                        .zip(&rhs.coords)
                        .map(|(a, b)| a + b)
                        .collect(),
                )
            }
        }
        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                assert_eq!(self.coords.len(), rhs.coords.len());
                $ty::new(
                    self.coords
                        .iter()
                        .zip(&rhs.coords)
                        .map(|(a, b)| a - b)
                        .collect(),
                )
            }
        }
        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty::new(self.coords.iter().map(|a| -a).collect())
            }
        }
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{self}")
            }
        }
    };
}

vec_ops!(LinearForm);
vec_ops!(Weight);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_is_dual_basis() {
        let w = LinearForm::unit(3, 1);
        assert_eq!(w.apply(&Weight::unit(3, 1)), Rational::one());
        assert_eq!(w.apply(&Weight::unit(3, 2)), Rational::zero());
    }

    #[test]
    fn primitivity() {
        assert!(LinearForm::from_integers(&[0, 2, 1]).is_primitive());
        assert!(!LinearForm::from_integers(&[0, 2, 4]).is_primitive());
        assert_eq!(
            LinearForm::from_integers(&[0, 2, 4]).primitive_part().unwrap(),
            LinearForm::from_integers(&[0, 1, 2])
        );
    }

    #[test]
    fn lambda_plus_membership() {
        assert!(Weight::from_integers(&[2, 0]).is_dominant_integral());
        assert!(!Weight::from_integers(&[-1, 1]).is_dominant_integral());
        assert!(!Weight::new(vec![Rational::new(1, 2), Rational::zero()]).is_dominant_integral());
    }
}

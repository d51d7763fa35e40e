//! Exact zero-testing of sums of factored rational functions through
//! modular images.
//!
//! A sum of parts over a common denominator is zero iff the combined
//! numerator polynomial vanishes. Rather than expanding that numerator
//! over ℚ (it can run to hundreds of thousands of terms), we expand it
//! in dense form modulo word-sized primes and use an a-priori height
//! bound: with D₀ the common denominator of all coefficients and H a
//! bound on the integer coefficients of D₀·N computed from L1 norms,
//! vanishing mod p₁⋯p_m with p₁⋯p_m > 2H and p_i ∤ D₀ forces N = 0.
//! Both directions are exact: a nonzero image certifies a nonzero sum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{Polynomial, Rational};

/// Primes just below 2³¹, so products of two residues fit in u64.
pub(crate) const PRIMES: [u64; 36] = [
    2147483647,
    2147483629,
    2147483587,
    2147483579,
    2147483563,
    2147483549,
    2147483543,
    2147483497,
    2147483489,
    2147483477,
    2147483423,
    2147483399,
    2147483353,
    2147483323,
    2147483269,
    2147483249,
    2147483237,
    2147483179,
    2147483171,
    2147483137,
    2147483123,
    2147483077,
    2147483069,
    2147483059,
    2147483053,
    2147483033,
    2147483029,
    2147482951,
    2147482949,
    2147482943,
    2147482937,
    2147482921,
    2147482877,
    2147482873,
    2147482867,
    2147482859,
];

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    Some(pow_mod(a, p - 2, p))
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Residue of a rational mod p; `None` when the denominator vanishes.
pub(crate) fn rational_mod(q: &Rational, p: u64) -> Option<u64> {
    let num = bigint_mod(q.numerator(), p);
    let den = inv_mod(bigint_mod(q.denominator(), p), p)?;
    Some(num * den % p)
}

/// Shared indexing of the monomials of total degree ≤ bound in `rank`
/// variables, ordered by (degree, lexicographic), together with the
/// index maps for multiplying by one variable.
pub(crate) struct SimplexIndex {
    pub bound: u32,
    /// Number of monomials of degree ≤ d, for each d ≤ bound.
    pub prefix: Vec<usize>,
    pub exponents: Vec<Vec<u32>>,
    /// shift[i][idx] = index of the exponent + e_i (valid below bound).
    pub shift: Vec<Vec<u32>>,
}

impl SimplexIndex {
    pub fn new(rank: usize, bound: u32) -> SimplexIndex {
        let mut exponents = Vec::new();
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
        rec(&mut current, 0, bound, &mut exponents);
        exponents.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
        let index: std::collections::BTreeMap<Vec<u32>, u32> = exponents
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let mut prefix = vec![0usize; bound as usize + 1];
        for e in &exponents {
            let d = e.iter().sum::<u32>() as usize;
            for entry in prefix.iter_mut().skip(d) {
                *entry += 1;
            }
        }
        let mut shift = vec![vec![u32::MAX; exponents.len()]; rank];
        for (idx, e) in exponents.iter().enumerate() {
            let d: u32 = e.iter().sum();
            if d >= bound {
                continue;
            }
            for (i, table) in shift.iter_mut().enumerate() {
                let mut up = e.clone();
                up[i] += 1;
                table[idx] = index[&up];
            }
        }
        SimplexIndex {
            bound,
            prefix,
            exponents,
            shift,
        }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    /// Index of an exponent tuple via binary search in (degree, lex)
    /// order.
    pub fn find(&self, exp: &[u32]) -> Option<usize> {
        let d: u32 = exp.iter().sum();
        self.exponents
            .binary_search_by(|probe| {
                let pd: u32 = probe.iter().sum();
                pd.cmp(&d).then_with(|| probe.as_slice().cmp(exp))
            })
            .ok()
    }
}

/// Dense polynomial modulo p over a shared simplex index.
pub(crate) struct ModDense<'a> {
    idx: &'a SimplexIndex,
    p: u64,
    coeffs: Vec<u64>,
    degree: u32,
}

impl<'a> ModDense<'a> {
    /// Reduce a sparse polynomial; `None` when a coefficient denominator
    /// vanishes mod p.
    pub fn from_polynomial(idx: &'a SimplexIndex, p: u64, poly: &Polynomial) -> Option<Self> {
        let mut coeffs = vec![0u64; idx.len()];
        let mut degree = 0;
        for (exp, c) in poly.terms() {
            let d: u32 = exp.iter().sum();
            degree = degree.max(d);
            let slot = idx.find(exp).expect("exponent within the bound");
            coeffs[slot] = (coeffs[slot] + rational_mod(c, p)?) % p;
        }
        Some(ModDense {
            idx,
            p,
            coeffs,
            degree,
        })
    }

    /// Multiply in place by `Σ form_i x_i − shift`, residues given.
    pub fn mul_linear(&mut self, form: &[u64], shift: u64) {
        let p = self.p;
        let n = self.idx.prefix[self.degree.min(self.idx.bound) as usize];
        let mut out = vec![0u64; self.idx.prefix[(self.degree + 1).min(self.idx.bound) as usize]];
        let neg_shift = (p - shift % p) % p;
        for i in 0..n {
            let v = self.coeffs[i];
            if v == 0 {
                continue;
            }
            if neg_shift != 0 {
                out[i] = (out[i] + v * neg_shift) % p;
            }
            for (var, a) in form.iter().enumerate() {
                if *a == 0 {
                    continue;
                }
                let target = self.idx.shift[var][i];
                debug_assert!(target != u32::MAX, "degree bound exceeded");
                let t = target as usize;
                out[t] = (out[t] + v * a) % p;
            }
        }
        self.coeffs.resize(out.len().max(self.coeffs.len()), 0);
        self.coeffs[..out.len()].copy_from_slice(&out);
        for c in self.coeffs[out.len()..].iter_mut() {
            *c = 0;
        }
        self.degree += 1;
    }

    pub fn add_assign(&mut self, other: &ModDense) {
        let p = self.p;
        if other.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), 0);
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = (*a + *b) % p;
        }
        self.degree = self.degree.max(other.degree);
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn zero(idx: &'a SimplexIndex, p: u64) -> Self {
        ModDense {
            idx,
            p,
            coeffs: Vec::new(),
            degree: 0,
        }
    }
}

/// L1 norm of a polynomial's coefficients.
pub(crate) fn poly_l1(p: &Polynomial) -> Rational {
    let mut acc = Rational::zero();
    for (_, c) in p.terms() {
        acc += c.abs();
    }
    acc
}

/// Least common multiple of the coefficient denominators.
pub(crate) fn poly_denominator_lcm(p: &Polynomial) -> BigInt {
    let mut acc = BigInt::from(1);
    for (_, c) in p.terms() {
        acc = acc.lcm(c.denominator());
    }
    acc
}

/// Enough primes (none dividing d0) for the height bound: the product
/// must exceed 2·h·d0.
pub(crate) fn primes_for_bound(h: &Rational, d0: &BigInt) -> Option<Vec<u64>> {
    let mut target = h.numerator().abs() / h.denominator() + BigInt::from(1);
    target = target * d0.abs() * BigInt::from(2) + BigInt::from(1);
    let mut acc = BigInt::from(1);
    let mut out = Vec::new();
    for &p in PRIMES.iter() {
        if (d0 % BigInt::from(p)).is_zero() {
            continue;
        }
        out.push(p);
        acc *= BigInt::from(p);
        if acc > target {
            return Some(out);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_index_shapes() {
        let idx = SimplexIndex::new(3, 4);
        assert_eq!(idx.len(), 35); // C(7,3)
        assert_eq!(idx.prefix[0], 1);
        assert_eq!(idx.prefix[1], 4);
        assert_eq!(idx.prefix[4], 35);
        // shifting x^0 by variable 2 lands on the e_2 monomial
        let base = idx.shift[2][0] as usize;
        assert_eq!(idx.exponents[base], vec![0, 0, 1]);
    }

    #[test]
    fn modular_expansion_matches_exact() {
        // (x1 + 2x2 − 1/2)(x1 − 3) expanded mod p equals the residue of
        // the exact expansion
        let p = PRIMES[0];
        let idx = SimplexIndex::new(2, 3);
        let one = Polynomial::one(2);
        let mut dense = ModDense::from_polynomial(&idx, p, &one).unwrap();
        dense.mul_linear(
            &[1, 2],
            rational_mod(&Rational::new(1, 2), p).unwrap(),
        );
        dense.mul_linear(&[1, 0], 3);
        let x1 = Polynomial::variable(2, 0);
        let x2 = Polynomial::variable(2, 1);
        let exact = &(x1.clone() + x2.scale(&Rational::from_integer(2))
            - Polynomial::constant(2, Rational::new(1, 2)))
            * &(x1 - Polynomial::constant(2, Rational::from_integer(3)));
        let expected = ModDense::from_polynomial(&idx, p, &exact).unwrap();
        let mut diff = dense;
        // subtract: add p−1 times expected
        let mut neg = ModDense::zero(&idx, p);
        neg.add_assign(&expected);
        for c in neg.coeffs.iter_mut() {
            *c = (p - *c) % p;
        }
        diff.add_assign(&neg);
        assert!(diff.is_zero());
    }

    #[test]
    fn prime_selection_respects_bound() {
        let h = Rational::from_integer(10_000_000);
        let d0 = BigInt::from(30);
        let primes = primes_for_bound(&h, &d0).unwrap();
        let mut acc = BigInt::from(1);
        for p in &primes {
            acc *= BigInt::from(*p);
        }
        assert!(acc > BigInt::from(2) * BigInt::from(10_000_000i64) * BigInt::from(30));
    }
}

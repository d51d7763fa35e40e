//! Integer matrix group elements acting on Γ, closure and reflections.

use num_integer::Integer;

use crate::exact::{nullspace, rank as matrix_rank, LinearForm, Rational, Weight};
use crate::{Error, Result};

/// An element of W ⊆ Aut(Γ). `on_forms` is the action on Γ in the Σ
/// basis (column j = Σ-coordinates of w(ω_j)); `on_weights` is the
/// contragredient action on Γ∨ in the Σ∨ basis (column j = coordinates
/// of w(η_j)). Both must be integral: w preserves Γ and Γ∨.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    on_forms: Vec<Vec<i64>>,
    on_weights: Vec<Vec<i64>>,
}

impl GroupElement {
    /// Build from the Γ-action matrix; fails unless the matrix is
    /// invertible over ℤ (and then the weight action is integral too).
    pub fn from_form_matrix(m: Vec<Vec<i64>>) -> Result<Self> {
        let r = m.len();
        if m.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidStructure("group matrix is not square".into()));
        }
        let inv = integer_inverse(&m).ok_or_else(|| {
            Error::InvalidStructure(
                "group matrix is not invertible over the integers".into(),
            )
        })?;
        // on_weights = (M^{-1})^T
        let mut on_weights = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                on_weights[i][j] = inv[j][i];
            }
        }
        Ok(GroupElement {
            on_forms: m,
            on_weights,
        })
    }

    /// Build from the contragredient Γ∨-action matrix instead.
    pub fn from_weight_matrix(nw: Vec<Vec<i64>>) -> Result<Self> {
        let r = nw.len();
        if nw.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidStructure("group matrix is not square".into()));
        }
        let inv = integer_inverse(&nw).ok_or_else(|| {
            Error::InvalidStructure(
                "group matrix is not invertible over the integers".into(),
            )
        })?;
        let mut on_forms = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                on_forms[i][j] = inv[j][i];
            }
        }
        Ok(GroupElement {
            on_forms,
            on_weights: nw,
        })
    }

    pub fn identity(rank: usize) -> Self {
        let mut m = vec![vec![0i64; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        GroupElement {
            on_forms: m.clone(),
            on_weights: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.on_forms.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElement::identity(self.rank())
    }

    pub fn form_matrix(&self) -> &Vec<Vec<i64>> {
        &self.on_forms
    }

    /// Images of the basis forms ω_j under this element, used to test
    /// polynomial invariance by substitution.
    pub fn basis_images(&self) -> Vec<LinearForm> {
        let r = self.rank();
        (0..r)
            .map(|j| {
                LinearForm::new((0..r).map(|i| Rational::from_integer(self.on_forms[i][j])).collect())
            })
            .collect()
    }

    pub fn apply_form(&self, v: &LinearForm) -> LinearForm {
        let r = self.rank();
        assert_eq!(v.rank(), r);
        LinearForm::new(
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| Rational::from_integer(self.on_forms[i][j]) * v.coord(j))
                        .sum()
                })
                .collect(),
        )
    }

    pub fn apply_weight(&self, v: &Weight) -> Weight {
        let r = self.rank();
        assert_eq!(v.rank(), r);
        Weight::new(
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| Rational::from_integer(self.on_weights[i][j]) * v.coord(j))
                        .sum()
                })
                .collect(),
        )
    }

    pub fn compose(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            on_forms: mat_mul(&self.on_forms, &rhs.on_forms),
            on_weights: mat_mul(&self.on_weights, &rhs.on_weights),
        }
    }

    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.compose(self);
            n += 1;
            assert!(n <= 1 << 20, "element of unexpectedly large order");
        }
        n
    }

    /// Reflection data: for an order-2 element whose fixed space has
    /// codimension 1, the primitive root spanning the (−1)-eigenspace
    /// of the Γ-action and the coroot with root(coroot) = 2.
    pub fn reflection_data(&self) -> Result<(LinearForm, Weight)> {
        let r = self.rank();
        if self.is_identity() || self.order() != 2 {
            return Err(Error::NotAReflection("element has order ≠ 2".into()));
        }
        let m_minus_i: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut v = Rational::from_integer(self.on_forms[i][j]);
                        if i == j {
                            v -= Rational::one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        if matrix_rank(&m_minus_i) != 1 {
            return Err(Error::NotAReflection(
                "fixed space has codimension ≠ 1".into(),
            ));
        }
        // root: kernel of (M + I) on form coordinates
        let m_plus_i: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let mut v = Rational::from_integer(self.on_forms[i][j]);
                        if i == j {
                            v += Rational::one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let kernel = nullspace(&m_plus_i, r);
        if kernel.len() != 1 {
            return Err(Error::NotAReflection(
                "(−1)-eigenspace is not one-dimensional".into(),
            ));
        }
        // clear denominators, make primitive
        let mut denom = num_bigint::BigInt::from(1);
        for c in &kernel[0] {
            denom = denom.lcm(c.denominator());
        }
        let scale = Rational::from_bigint(denom);
        let root = LinearForm::new(kernel[0].iter().map(|c| c * &scale).collect())
            .primitive_part()
            .expect("kernel vector is nonzero");
        // canonical sign: prefer the Δ⁺ side (nonnegative on Σ∨)
        let root = if root.is_nonnegative() {
            root
        } else if (-&root).is_nonnegative() {
            -&root
        } else if root.leading_sign() > 0 {
            root
        } else {
            -&root
        };
        // coroot from s(v) = v − root(v)·coroot at a basis weight
        let j = (0..r)
            .find(|&j| !root.coord(j).is_zero())
            .expect("primitive root is nonzero");
        let eta = Weight::unit(r, j);
        let diff = &eta - &self.apply_weight(&eta);
        let coroot = diff.scale(&root.coord(j).recip());
        debug_assert_eq!(root.apply(&coroot), Rational::from_integer(2));
        Ok((root, coroot))
    }
}

impl std::fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.on_forms)
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Inverse of an integer matrix when it exists over ℤ (det = ±1).
fn integer_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let a: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| row.iter().map(|&v| Rational::from_integer(v)).collect())
        .collect();
    let mut inv = vec![vec![0i64; n]; n];
    for col in 0..n {
        let mut rhs = vec![Rational::zero(); n];
        rhs[col] = Rational::one();
        let x = crate::exact::solve_exact(&a, &rhs).ok()?;
        for (i, v) in x.into_iter().enumerate() {
            inv[i][col] = v.as_i64()?;
        }
    }
    Some(inv)
}

/// Breadth-first closure of a generator list, deduplicated and sorted
/// for determinism. Errors once the closure exceeds `bound`.
pub fn close_group(generators: &[GroupElement], bound: usize) -> Result<Vec<GroupElement>> {
    let rank = generators
        .first()
        .map(GroupElement::rank)
        .unwrap_or_else(|| panic!("close_group needs the rank; pass at least the identity"));
    let mut seen = std::collections::BTreeSet::new();
    let id = GroupElement::identity(rank);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(w) = frontier.pop() {
        for g in generators {
            let next = w.compose(g);
            if seen.insert(next.clone()) {
                if seen.len() > bound {
                    return Err(Error::GroupTooLarge { bound });
                }
                frontier.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Default bound for group closure; desk-scale cases stay below 720.
pub const DEFAULT_GROUP_BOUND: usize = 10_080;

/// The W-orbit (or ±W-orbit) of a linear form, deduplicated, in
/// deterministic order.
pub fn orbit(group: &[GroupElement], v: &LinearForm, with_negation: bool) -> Vec<LinearForm> {
    let mut out = std::collections::BTreeSet::new();
    for w in group {
        let img = w.apply_form(v);
        if with_negation {
            out.insert(-&img);
        }
        out.insert(img);
    }
    out.into_iter().collect()
}

/// The W-orbit of a weight under the contragredient action.
pub fn orbit_weight(group: &[GroupElement], v: &Weight) -> Vec<Weight> {
    let mut out = std::collections::BTreeSet::new();
    for w in group {
        out.insert(w.apply_weight(v));
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// s₁₂ of Case I n=2 in Σ-coordinates: ω1 ↦ −ω1, ω2 ↦ ω1 + ω2.
    fn s12() -> GroupElement {
        GroupElement::from_form_matrix(vec![vec![-1, 1], vec![0, 1]]).unwrap()
    }

    #[test]
    fn closure_of_single_reflection() {
        let g = close_group(&[s12()], DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn closure_of_empty_generators_is_identity() {
        let g = close_group(&[GroupElement::identity(3)], DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn closure_bound_is_enforced() {
        // S3 on Case I n=3 has order 6; bound 5 must fail.
        let s12 = GroupElement::from_form_matrix(vec![
            vec![-1, 1, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ])
        .unwrap();
        let s23 = GroupElement::from_form_matrix(vec![
            vec![1, 0, 0],
            vec![1, -1, 1],
            vec![0, 0, 1],
        ])
        .unwrap();
        assert!(matches!(
            close_group(&[s12.clone(), s23.clone()], 5),
            Err(Error::GroupTooLarge { .. })
        ));
        assert_eq!(close_group(&[s12, s23], 10).unwrap().len(), 6);
    }

    #[test]
    fn reflection_root_and_coroot_case_i_n2() {
        // root z1−z2 = ω1 ↦ Σ-coordinates (1,0); coroot e1−e2 = 2η1−η2.
        let (root, coroot) = s12().reflection_data().unwrap();
        assert_eq!(root, LinearForm::from_integers(&[1, 0]));
        assert_eq!(coroot, Weight::from_integers(&[2, -1]));
    }

    #[test]
    fn non_reflection_is_rejected() {
        assert!(matches!(
            GroupElement::identity(2).reflection_data(),
            Err(Error::NotAReflection(_))
        ));
        // −1 on a rank-2 lattice: order 2 but codimension 2
        let minus = GroupElement::from_form_matrix(vec![vec![-1, 0], vec![0, -1]]).unwrap();
        assert!(matches!(
            minus.reflection_data(),
            Err(Error::NotAReflection(_))
        ));
    }

    #[test]
    fn orbit_of_sigma_element() {
        // W-orbit of ω2 = z2 under s₁₂ is {z1, z2}: Σ-coords {(1,1),(0,1)}
        let g = close_group(&[s12()], DEFAULT_GROUP_BOUND).unwrap();
        let o = orbit(&g, &LinearForm::from_integers(&[0, 1]), false);
        assert_eq!(o.len(), 2);
        assert!(o.contains(&LinearForm::from_integers(&[0, 1])));
        assert!(o.contains(&LinearForm::from_integers(&[1, 1])));
        // fixed form: orbit is a singleton
        let fixed = orbit(&g, &LinearForm::from_integers(&[1, 2]), false);
        assert_eq!(fixed.len(), 1);
        // ±W-orbit of z1−z2 is {±(z1−z2)}
        let pm = orbit(&g, &LinearForm::from_integers(&[1, 0]), true);
        assert_eq!(pm.len(), 2);
        assert!(pm.contains(&LinearForm::from_integers(&[-1, 0])));
    }
}

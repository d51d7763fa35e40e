//! Exact linear algebra: pivoted rational Gaussian elimination.
//!
//! Pivot choice is the first nonzero entry in column order, which makes
//! every run deterministic. Speed is irrelevant at desk scale; what
//! matters is that a zero pivot column is reported as `SingularSystem`
//! rather than papered over.

use crate::{Error, Result};

use super::Rational;

/// Solve `matrix · x = rhs` exactly. The matrix must be square.
pub fn solve_exact(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>> {
    let n = matrix.len();
    assert!(
        matrix.iter().all(|row| row.len() == n) && rhs.len() == n,
        "solve_exact requires a square system"
    );
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut b: Vec<Rational> = rhs.to_vec();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r][col].is_zero()).ok_or_else(|| {
            Error::SingularSystem(format!("zero pivot in column {col}"))
        })?;
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
            let delta = factor * b[col].clone();
            b[r] -= delta;
        }
    }

    let mut x = vec![Rational::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for c in (row + 1)..n {
            acc -= &a[row][c] * &x[c];
        }
        x[row] = acc / a[row][row].clone();
    }
    Ok(x)
}

/// Solve a rectangular system with a unique solution required: full
/// column rank and consistency, else `SingularSystem`.
pub fn solve_unique_rectangular(
    matrix: &[Vec<Rational>],
    rhs: &[Rational],
) -> Result<Vec<Rational>> {
    let nrows = matrix.len();
    assert_eq!(nrows, rhs.len());
    let ncols = matrix.first().map(|r| r.len()).unwrap_or(0);
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut b: Vec<Rational> = rhs.to_vec();
    let mut pivot_rows: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(p) = (next_row..nrows).find(|&i| !a[i][col].is_zero()) else {
            return Err(Error::SingularSystem(format!(
                "rectangular system is rank-deficient at column {col}"
            )));
        };
        a.swap(next_row, p);
        b.swap(next_row, p);
        let pivot = a[next_row][col].clone();
        for i in 0..nrows {
            if i != next_row && !a[i][col].is_zero() {
                let factor = &a[i][col] / &pivot;
                for c in col..ncols {
                    let delta = &factor * &a[next_row][c];
                    a[i][c] -= delta;
                }
                let delta = factor * b[next_row].clone();
                b[i] -= delta;
            }
        }
        pivot_rows.push((next_row, col));
        next_row += 1;
    }
    for i in next_row..nrows {
        if !b[i].is_zero() {
            return Err(Error::SingularSystem(
                "rectangular system is inconsistent".into(),
            ));
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, col) in pivot_rows {
        x[col] = &b[row] / &a[row][col];
    }
    Ok(x)
}

/// Rank of a rational matrix (rows × cols), by elimination.
pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    if matrix.is_empty() {
        return 0;
    }
    let cols = matrix[0].len();
    let mut rows: Vec<Vec<Rational>> = matrix.to_vec();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in (r + 1)..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &pivot;
            for c in col..cols {
                let delta = &factor * &rows[r][c];
                rows[i][c] -= delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Basis of the joint kernel of a list of square matrices minus the
/// identity: the vectors fixed by every matrix. Matrices act by
/// `v ↦ M v` on column coordinate vectors.
pub fn invariant_subspace(mats: &[Vec<Vec<Rational>>], dim: usize) -> Vec<Vec<Rational>> {
    let mut stacked: Vec<Vec<Rational>> = Vec::new();
    for m in mats {
        for i in 0..dim {
            let mut row: Vec<Rational> = Vec::with_capacity(dim);
            for j in 0..dim {
                let mut v = m[i][j].clone();
                if i == j {
                    v -= Rational::one();
                }
                row.push(v);
            }
            stacked.push(row);
        }
    }
    nullspace(&stacked, dim)
}

/// Basis of {x : A x = 0} for a rows×dim rational matrix A.
pub fn nullspace(a: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = a.to_vec();
    let nrows = rows.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for c in 0..dim {
            rows[r][c] = &rows[r][c] / &pivot;
        }
        for i in 0..nrows {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in 0..dim {
                    let delta = &factor * &rows[r][c];
                    rows[i][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..dim).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Rational::zero(); dim];
        v[fc] = Rational::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&rows[ri][fc];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn identity_system() {
        let m = vec![
            vec![q(1, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1)],
        ];
        let rhs = vec![q(3, 2), q(1, 2)];
        assert_eq!(solve_exact(&m, &rhs).unwrap(), rhs);
    }

    #[test]
    fn interpolation_system_case_i_n2() {
        // The 2×2 system behind p_{η1} at r=1, s=1/2 over the basis
        // {ℓ(z), 1}: ℓ(ρ) = 2, ℓ(ρ+η1) = 3, conditions p(ρ)=0, p(ρ+η1)=1.
        // Hand elimination gives (1, −2).
        let m = vec![
            vec![q(2, 1), q(1, 1)],
            vec![q(3, 1), q(1, 1)],
        ];
        let rhs = vec![q(0, 1), q(1, 1)];
        assert_eq!(solve_exact(&m, &rhs).unwrap(), vec![q(1, 1), q(-2, 1)]);
    }

    #[test]
    fn rank_deficient_is_singular() {
        let m = vec![
            vec![q(1, 1), q(1, 1)],
            vec![q(1, 1), q(1, 1)],
        ];
        let rhs = vec![q(0, 1), q(1, 1)];
        assert!(matches!(
            solve_exact(&m, &rhs),
            Err(Error::SingularSystem(_))
        ));
    }

    #[test]
    fn rank_and_nullspace() {
        let m = vec![
            vec![q(1, 1), q(2, 1), q(3, 1)],
            vec![q(2, 1), q(4, 1), q(6, 1)],
        ];
        assert_eq!(rank(&m), 1);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Rational = (0..3).map(|i| &m[0][i] * &v[i]).sum();
            assert!(dot.is_zero());
        }
    }
}

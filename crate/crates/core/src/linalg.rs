//! Dense exact linear algebra over the rationals, sized for the small
//! systems that arise per degree level.

use num_traits::Zero;

use crate::path_algebra::{rat, Rational};

/// Reduced row echelon form. Pivot columns are chosen left to right, so
/// earlier columns are preferred as pivots.
pub fn rref(mut rows: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rat(1) / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, p) in other.iter_mut().zip(pivot_row.iter()) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// Solves `a x = b` with every free variable set to zero, or `None` when
/// the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let augmented: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let (rows, pivots) = rref(augmented, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[ncols].clone();
    }
    Some(x)
}

/// A basis of the solution space of `a x = 0`.
pub fn nullspace(a: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (rows, pivots) = rref(a.to_vec(), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = rat(1);
        for (row, &c) in rows.iter().zip(&pivots) {
            v[c] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Moves a solution of a consistent system into the orthogonal complement
/// of the given kernel basis: the solution of least Euclidean norm.
pub fn project_out(x: &[Rational], kernel: &[Vec<Rational>]) -> Vec<Rational> {
    if kernel.is_empty() {
        return x.to_vec();
    }
    let k = kernel.len();
    let gram: Vec<Vec<Rational>> = kernel.iter().map(|u| kernel.iter().map(|v| dot(u, v)).collect()).collect();
    let rhs: Vec<Rational> = kernel.iter().map(|u| dot(u, x)).collect();
    let c = solve(&gram, &rhs, k).expect("Gram matrix of a basis is invertible");
    let mut out = x.to_vec();
    for (coef, u) in c.iter().zip(kernel) {
        for (o, ui) in out.iter_mut().zip(u) {
            *o -= coef * ui;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn solves_with_free_variables_zero() {
        let a = vec![row(&[1, 1, 0]), row(&[0, 0, 1])];
        let x = solve(&a, &row(&[2, 3]), 3).unwrap();
        assert_eq!(x, row(&[2, 0, 3]));
        assert!(solve(&[row(&[0, 0])], &row(&[1]), 2).is_none());
    }

    #[test]
    fn least_norm_projection() {
        let kernel = nullspace(&[row(&[1, -1])], 2);
        assert_eq!(kernel.len(), 1);
        let y = project_out(&row(&[-2, 0]), &kernel);
        assert_eq!(y, row(&[-1, 1]));
    }
}

use super::matrix::PolyMatrix;
use super::poly::Poly;

/// `M = U * D * P_sigma * V` with `U, V` in `B_n`, `D` diagonal and
/// `P_sigma[i][sigma[i]] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithFactorization {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    /// 0-based: row `i` of the permutation matrix has its one in column
    /// `sigma[i]`.
    pub sigma: Vec<usize>,
    pub v: PolyMatrix,
    pub steps: Vec<EliminationStep>,
}

/// One elimination round `U0 * M * V0` on a (possibly deflated) matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationStep {
    /// Recursion depth; 0 is the input matrix.
    pub depth: usize,
    /// 0-based pivot in the matrix at this depth.
    pub pivot: (usize, usize),
    pub left: PolyMatrix,
    pub right: PolyMatrix,
    pub result: PolyMatrix,
}

impl SmithFactorization {
    pub fn permutation_matrix(&self) -> PolyMatrix {
        PolyMatrix::permutation(&self.sigma)
    }

    pub fn reconstruct(&self) -> PolyMatrix {
        &(&(&self.u * &self.d) * &self.permutation_matrix()) * &self.v
    }

    pub fn sigma_is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Sign of the permutation.
    pub fn sigma_sign(&self) -> i64 {
        let mut seen = vec![false; self.sigma.len()];
        let mut sign = 1;
        for start in 0..self.sigma.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.sigma[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

/// Pivot ordering key: lowest degree, then lowest row from the bottom,
/// then leftmost column.
fn pivot_measure(n: usize, m: &PolyMatrix, i: usize, j: usize) -> (usize, usize, usize) {
    (m.get(i, j).degree().expect("pivot is nonzero"), n - 1 - i, j)
}

fn choose_pivot(m: &PolyMatrix) -> Option<(usize, usize)> {
    let n = m.n();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !m.get(i, j).is_zero())
        .min_by_key(|&(i, j)| pivot_measure(n, m, i, j))
}

fn is_isolated(m: &PolyMatrix, i0: usize, j0: usize) -> bool {
    (0..m.n()).all(|k| k == i0 || m.get(k, j0).is_zero()) && (0..m.n()).all(|l| l == j0 || m.get(i0, l).is_zero())
}

/// Quotient of `entry` by the pivot, with its constant term dropped when
/// the multiplier must vanish at zero to stay in `B_n`.
fn multiplier(entry: &Poly, pivot: &Poly, drop_constant: bool) -> Poly {
    entry.quotient(pivot, drop_constant)
}

struct Parts {
    u: PolyMatrix,
    d: Vec<Poly>,
    sigma: Vec<usize>,
    v: PolyMatrix,
}

/// One recursion level: `m = l * cur * r` with `l, r` in `B_n` throughout.
fn factor(m: &PolyMatrix, depth: usize, steps: &mut Vec<EliminationStep>) -> Parts {
    let n = m.n();
    let Some(mut pivot) = choose_pivot(m) else {
        return Parts {
            u: PolyMatrix::identity(n),
            d: vec![Poly::zero(); n],
            sigma: (0..n).collect(),
            v: PolyMatrix::identity(n),
        };
    };
    let mut cur = m.clone();
    let mut l = PolyMatrix::identity(n);
    let mut r = PolyMatrix::identity(n);
    let mut last = pivot_measure(n, &cur, pivot.0, pivot.1);
    loop {
        let (i0, j0) = pivot;
        if is_isolated(&cur, i0, j0) {
            break;
        }
        let p = cur.get(i0, j0).clone();
        let mut left = PolyMatrix::identity(n);
        let mut right = PolyMatrix::identity(n);
        let row_mult: Vec<Poly> =
            (0..n).map(|k| if k == i0 { Poly::zero() } else { multiplier(cur.get(k, j0), &p, k > i0) }).collect();
        let col_mult: Vec<Poly> =
            (0..n).map(|c| if c == j0 { Poly::zero() } else { multiplier(cur.get(i0, c), &p, c < j0) }).collect();

        // cur <- left * cur * right as row then column operations
        for k in (0..n).filter(|&k| !row_mult[k].is_zero()) {
            left.set(k, i0, -&row_mult[k]);
            for c in 0..n {
                let e = cur.get(k, c).sub_mul(&row_mult[k], cur.get(i0, c));
                cur.set(k, c, e);
            }
        }
        for c in (0..n).filter(|&c| !col_mult[c].is_zero()) {
            right.set(j0, c, -&col_mult[c]);
            for k in 0..n {
                let e = cur.get(k, c).sub_mul(cur.get(k, j0), &col_mult[c]);
                cur.set(k, c, e);
            }
        }
        // l <- l * left^-1 and r <- right^-1 * r; each inverse is 2I - E
        for k in (0..n).filter(|&k| !row_mult[k].is_zero()) {
            for row in 0..n {
                let e = l.get(row, i0).add_mul(l.get(row, k), &row_mult[k]);
                l.set(row, i0, e);
            }
        }
        for c in (0..n).filter(|&c| !col_mult[c].is_zero()) {
            for col in 0..n {
                let e = r.get(j0, col).add_mul(&col_mult[c], r.get(c, col));
                r.set(j0, col, e);
            }
        }
        steps.push(EliminationStep { depth, pivot, left, right, result: cur.clone() });

        pivot = choose_pivot(&cur).expect("eliminations are invertible, so a nonzero matrix stays nonzero");
        let measure = pivot_measure(n, &cur, pivot.0, pivot.1);
        assert!(
            measure < last || (measure == last && is_isolated(&cur, pivot.0, pivot.1)),
            "pivot measure failed to decrease"
        );
        last = measure;
    }

    let (i0, j0) = pivot;
    let p = cur.get(i0, j0).clone();
    let (u_hat, d, sigma, v_hat) = if n == 1 {
        (PolyMatrix::identity(1), vec![p], vec![0], PolyMatrix::identity(1))
    } else {
        let sub = factor(&cur.minor(i0, j0), depth + 1, steps);
        let mut d = Vec::with_capacity(n);
        let mut sigma = Vec::with_capacity(n);
        for row in 0..n {
            if row == i0 {
                d.push(p.clone());
                sigma.push(j0);
            } else {
                let sr = row - usize::from(row > i0);
                d.push(sub.d[sr].clone());
                let c = sub.sigma[sr];
                sigma.push(c + usize::from(c >= j0));
            }
        }
        (sub.u.insert_unit(i0, i0), d, sigma, sub.v.insert_unit(j0, j0))
    };
    Parts { u: &l * &u_hat, d, sigma, v: &v_hat * &r }
}

/// Factors any square polynomial matrix as `U * D * P_sigma * V` with
/// `U, V` in `B_n`, recording every elimination round.
pub fn modified_smith(m: &PolyMatrix) -> SmithFactorization {
    let mut steps = Vec::new();
    let parts = factor(m, 0, &mut steps);
    SmithFactorization { u: parts.u, d: PolyMatrix::diagonal(parts.d), sigma: parts.sigma, v: parts.v, steps }
}

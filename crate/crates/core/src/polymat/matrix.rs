use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::poly::{parse_poly, Poly};
use crate::error::{Error, Result};
use crate::path_algebra::{rat, Rational};

/// Square matrix over `Q[x]`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    /// The `n x n` zero matrix. Panics when `n == 0`.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "matrices have dimension at least one");
        PolyMatrix { n, entries: vec![Poly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse { line: 1, message: "matrix has no rows".into() });
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("row {} has {} entries, expected {n}", i + 1, r.len()),
            });
        }
        Ok(PolyMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from ascending integer coefficient lists.
    pub fn from_int_rows(rows: &[&[&[i64]]]) -> Self {
        PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|c| Poly::from_ints(c)).collect()).collect())
            .expect("square integer matrix")
    }

    pub fn diagonal(d: Vec<Poly>) -> Self {
        let mut m = PolyMatrix::zero(d.len());
        for (i, p) in d.into_iter().enumerate() {
            m.set(i, i, p);
        }
        m
    }

    /// The matrix with `m[i][sigma[i]] = 1`.
    pub fn permutation(sigma: &[usize]) -> Self {
        let mut m = PolyMatrix::zero(sigma.len());
        for (i, &j) in sigma.iter().enumerate() {
            m.set(i, j, Poly::one());
        }
        m
    }

    /// Matrix unit `E_ij` scaled by `p`.
    pub fn unit(n: usize, i: usize, j: usize, p: Poly) -> Self {
        let mut m = PolyMatrix::zero(n);
        m.set(i, j, p);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.n + j] = p;
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        self.entries.chunks(self.n).map(<[Poly]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        PolyMatrix { n: self.n, entries: self.entries.iter().map(|e| e * p).collect() }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Constant terms of every entry.
    pub fn at_zero(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).constant_term()).collect()).collect()
    }

    /// Membership in `B_n`: the value at zero is upper triangular with
    /// unit diagonal.
    pub fn in_bn(&self) -> bool {
        let z = self.at_zero();
        (0..self.n).all(|i| {
            (0..=i).all(|j| if i == j { z[i][j].is_one() } else { z[i][j].is_zero() })
        })
    }

    /// Matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> PolyMatrix {
        let rows = (0..self.n)
            .filter(|&r| r != i)
            .map(|r| (0..self.n).filter(|&c| c != j).map(|c| self.get(r, c).clone()).collect())
            .collect();
        PolyMatrix::from_rows(rows).expect("minor of a matrix with n >= 2")
    }

    /// Inverse of [`PolyMatrix::minor`]: embeds `self` with a new row `i`
    /// and column `j` that are zero except for a `1` at `(i, j)`.
    pub fn insert_unit(&self, i: usize, j: usize) -> PolyMatrix {
        let n = self.n + 1;
        let mut m = PolyMatrix::zero(n);
        for r in 0..n {
            for c in 0..n {
                if r == i || c == j {
                    continue;
                }
                let (sr, sc) = (r - usize::from(r > i), c - usize::from(c > j));
                m.set(r, c, self.get(sr, sc).clone());
            }
        }
        m.set(i, j, Poly::one());
        m
    }

    /// Fraction-free Bareiss elimination.
    pub fn det(&self) -> Poly {
        let n = self.n;
        let mut m = self.rows();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Poly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev);
                }
                m[i][k] = Poly::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    pub fn adjugate(&self) -> PolyMatrix {
        let n = self.n;
        if n == 1 {
            return PolyMatrix::identity(1);
        }
        let mut adj = PolyMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                adj.set(j, i, if (i + j) % 2 == 0 { c } else { -c });
            }
        }
        adj
    }

    /// Inverse over `Q[x]`; exists iff the determinant is a nonzero constant.
    pub fn inverse(&self) -> Result<PolyMatrix> {
        let d = self.det();
        if d.is_zero() || !d.is_constant() {
            return Err(Error::NotInvertible(format!("determinant is {d}")));
        }
        let inv = rat(1) / d.constant_term();
        Ok(self.adjugate().scale(&Poly::constant(inv)))
    }

    /// One row per line, entries separated by `, ` and rows ended by `;`.
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(Poly::to_string).collect::<Vec<_>>().join(", "))
            .collect();
        rows.join(";\n")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(Poly::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Parses rows separated by `;` with entries separated by `,`. Line breaks
/// are insignificant and `#` starts a comment running to end of line.
pub fn parse_matrix(text: &str) -> Result<PolyMatrix> {
    let cleaned: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let mut rows = Vec::new();
    for (i, row) in cleaned.split(';').enumerate() {
        if row.trim().is_empty() {
            continue;
        }
        let entries = row
            .split(',')
            .map(|e| parse_poly(e).map_err(|m| Error::Parse { line: i + 1, message: format!("row {}: {m}", i + 1) }))
            .collect::<Result<Vec<_>>>()?;
        rows.push(entries);
    }
    PolyMatrix::from_rows(rows)
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut out = PolyMatrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, Poly::sum_of_products((0..n).map(|k| (self.get(i, k), o.get(k, j)))));
            }
        }
        out
    }
}

impl Add for &PolyMatrix {
    type Output = PolyMatrix;
    fn add(self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        PolyMatrix { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        PolyMatrix { n: self.n, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() }
    }
}

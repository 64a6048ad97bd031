use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::kpoly::KPoly;
use super::rational::Rational;
use super::ring::CoeffRing;
use crate::error::{domain, Result};

/// Dense row-major matrix of polynomials in κ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<KPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![KPoly::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<KPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &KPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: KPoly) {
        self.entries[i * self.cols + j] = v;
    }

    /// Submatrix on the given column indices (all rows kept).
    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }
}

/// Fraction-free (Bareiss) determinant over ℚ[κ].
pub fn bareiss_det(m: &PolyMatrix) -> Result<KPoly> {
    if m.rows != m.cols {
        return domain(format!("determinant of non-square {}x{} matrix", m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(KPoly::one());
    }
    let mut a: Vec<Vec<KPoly>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut sign = false;
    let mut prev = KPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Ok(KPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Fraction-free determinant of an integer matrix.
pub fn bareiss_det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Solves a square system given as an augmented `n × (n+1)` rational matrix.
/// Returns `None` when singular.
pub fn solve_augmented(mut a: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = a.len();
    for k in 0..n {
        let piv = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(piv, k);
        let inv = Rational::one() / &a[k][k];
        for j in k..=n {
            a[k][j] = &a[k][j] * &inv;
        }
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in k..=n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Reduced row echelon form over a field given as a [`CoeffRing`] whose nonzero
/// elements are invertible. Returns the pivot columns.
pub fn rref<R: CoeffRing>(r: &R, a: &mut [Vec<R::Elem>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |x| x.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&i| !r.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(piv, row);
        let inv = r.inv(&a[row][col]).expect("field element invertible");
        for j in col..cols {
            a[row][j] = r.mul(&a[row][j], &inv);
        }
        for i in 0..rows {
            if i != row && !r.is_zero(&a[i][col]) {
                let f = a[i][col].clone();
                for j in col..cols {
                    let t = r.mul(&f, &a[row][j]);
                    a[i][j] = r.sub(&a[i][j], &t);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<R: CoeffRing>(r: &R, a: &[Vec<R::Elem>]) -> usize {
    let mut b = a.to_vec();
    rref(r, &mut b).len()
}

/// Basis of the right null space `{v : A v = 0}`.
pub fn nullspace<R: CoeffRing>(r: &R, a: &[Vec<R::Elem>], cols: usize) -> Vec<Vec<R::Elem>> {
    let mut b = a.to_vec();
    let pivots = rref(r, &mut b);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![r.zero(); cols];
            v[f] = r.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = r.neg(&b[i][f]);
            }
            v
        })
        .collect()
}

/// Determinant mod a word prime by Gaussian elimination.
pub fn det_mod(mut a: Vec<Vec<u64>>, q: u64) -> u64 {
    use crate::ffield::{inv_mod, mul_mod};
    let n = a.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            det = (q - det) % q;
        }
        det = mul_mod(det, a[k][k], q);
        let inv = inv_mod(a[k][k], q).unwrap();
        for i in k + 1..n {
            if a[i][k] == 0 {
                continue;
            }
            let f = mul_mod(a[i][k], inv, q);
            for j in k..n {
                let t = mul_mod(f, a[k][j], q);
                a[i][j] = if a[i][j] >= t { a[i][j] - t } else { a[i][j] + q - t };
            }
        }
    }
    det
}

/// Rank mod a word prime.
pub fn rank_mod(a: &[Vec<u64>], q: u64) -> usize {
    let r = crate::exact_rings::ring::FpK { p: q, kappa: 0 };
    rank(&r, a)
}

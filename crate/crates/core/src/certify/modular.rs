//! Exact determinants of integer polynomial matrices by evaluation, interpolation
//! and Chinese remaindering over word-size primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::exact_rings::matrix::det_mod;
use crate::exact_rings::ZPoly;
use crate::ffield::{add_mod, inv_mod, is_prime, mul_mod, sub_mod};

/// The `count` largest primes below `2^62`, decreasing.
pub fn word_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// Upper bound on `deg det` from row and column degree sums.
pub fn det_degree_bound(m: &[Vec<ZPoly>]) -> usize {
    let deg = |p: &ZPoly| p.degree().unwrap_or(0);
    let n = m.len();
    let rows: usize = m.iter().map(|r| r.iter().map(deg).max().unwrap_or(0)).sum();
    let cols: usize = (0..n).map(|j| m.iter().map(|r| deg(&r[j])).max().unwrap_or(0)).sum();
    rows.min(cols)
}

/// Bits bounding `log2` of every coefficient of `det`: Hadamard's inequality on
/// the unit circle with entries bounded by their 1-norms.
pub fn det_coeff_bits(m: &[Vec<ZPoly>]) -> u64 {
    let n = m.len();
    let mut bits = 0u64;
    for j in 0..n {
        let col: BigInt = m.iter().map(|r| {
            let a = r[j].norm1();
            &a * &a
        }).sum();
        bits += col.bits().div_ceil(2);
    }
    bits + 1
}

/// Reduces a square polynomial matrix mod `q`, entries as coefficient vectors.
pub fn reduce_matrix(m: &[Vec<ZPoly>], q: u64) -> Vec<Vec<Vec<u64>>> {
    m.iter().map(|r| r.iter().map(|p| p.mod_q(q)).collect()).collect()
}

fn horner(c: &[u64], x: u64, q: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| add_mod(mul_mod(acc, x, q), a, q))
}

/// Coefficients of the polynomial of degree `≤ n` through `(i, ys[i])`, `i = 0..=n`.
pub fn interpolate(ys: &[u64], q: u64) -> Vec<u64> {
    let n = ys.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        let inv = inv_mod(k as u64 % q, q).expect("q > degree");
        for i in (k..n).rev() {
            dd[i] = mul_mod(sub_mod(dd[i], dd[i - 1], q), inv, q);
        }
    }
    let mut out = vec![0u64; n];
    for k in (0..n).rev() {
        // out = out·(x − k) + dd[k]
        let mut next = vec![0u64; n];
        for i in 0..n - 1 {
            next[i + 1] = add_mod(next[i + 1], out[i], q);
            next[i] = sub_mod(next[i], mul_mod(out[i], k as u64 % q, q), q);
        }
        next[0] = add_mod(next[0], dd[k], q);
        out = next;
    }
    out
}

/// `det` of a reduced matrix over 𝔽_q[κ], given a degree bound.
pub fn det_poly_mod(m: &[Vec<Vec<u64>>], deg: usize, q: u64) -> Vec<u64> {
    let ys: Vec<u64> = (0..=deg as u64)
        .map(|x| {
            let a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|c| horner(c, x, q)).collect()).collect();
            det_mod(a, q)
        })
        .collect();
    interpolate(&ys, q)
}

/// Incremental CRT accumulator with symmetric lift.
struct Crt {
    modulus: BigInt,
    residues: Vec<BigInt>,
}

impl Crt {
    fn new(len: usize) -> Self {
        Crt { modulus: BigInt::one(), residues: vec![BigInt::zero(); len] }
    }

    fn add(&mut self, r: &[u64], q: u64) {
        let qb = BigInt::from(q);
        let m_mod_q = (&self.modulus % &qb).to_u64_digits().1.first().copied().unwrap_or(0);
        let inv = inv_mod(m_mod_q, q).expect("distinct primes");
        for (acc, &ri) in self.residues.iter_mut().zip(r) {
            let a_mod_q = acc.mod_floor(&qb).to_u64_digits().1.first().copied().unwrap_or(0);
            let t = mul_mod(sub_mod(ri, a_mod_q, q), inv, q);
            *acc += &self.modulus * BigInt::from(t);
        }
        self.modulus *= qb;
    }

    fn lift(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.residues.iter().map(|x| if x > &half { x - &self.modulus } else { x.clone() }).collect()
    }
}

/// Exact determinant of a square matrix over ℤ[κ].
pub fn det_poly(m: &[Vec<ZPoly>]) -> ZPoly {
    if m.is_empty() {
        return ZPoly::one();
    }
    let deg = det_degree_bound(m);
    let bits = det_coeff_bits(m);
    let nprimes = (bits as usize + 1).div_ceil(61) + 1;
    let primes = word_primes(nprimes);
    let images: Vec<(u64, Vec<u64>)> = primes
        .par_iter()
        .map(|&q| {
            let r = reduce_matrix(m, q);
            (q, det_poly_mod(&r, deg, q))
        })
        .collect();
    let mut crt = Crt::new(deg + 1);
    for (q, img) in &images {
        crt.add(img, *q);
    }
    ZPoly::from_coeffs(crt.lift())
}

/// `det` at a single point of 𝔽_q.
pub fn det_at(m: &[Vec<ZPoly>], x: u64, q: u64) -> u64 {
    let a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|p| p.eval_mod(x, q)).collect()).collect();
    det_mod(a, q)
}

/// Largest absolute coefficient, in bits.
pub fn max_bits(p: &ZPoly) -> u64 {
    p.coeffs().iter().map(|c| c.abs().bits()).max().unwrap_or(0)
}

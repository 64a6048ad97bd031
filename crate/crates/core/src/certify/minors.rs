use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::modular::word_primes;
use crate::exact_rings::ZPoly;
use crate::ffield::{inv_mod, mul_mod, sub_mod};

/// Matrix evaluated at `κ = x` over 𝔽_q.
pub fn eval_matrix(m: &[Vec<ZPoly>], x: u64, q: u64) -> Vec<Vec<u64>> {
    m.iter().map(|r| r.iter().map(|p| p.eval_mod(x, q)).collect()).collect()
}

/// Greedy column rank profile of a numeric matrix: indices of the first maximal
/// independent set of columns, scanning left to right.
pub fn column_profile(a: &[Vec<u64>], q: u64) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut picked = Vec::new();
    for j in 0..cols {
        let mut v: Vec<u64> = (0..rows).map(|i| a[i][j]).collect();
        for (piv, b) in &basis {
            if v[*piv] != 0 {
                let f = v[*piv];
                for (x, y) in v.iter_mut().zip(b) {
                    *x = sub_mod(*x, mul_mod(f, *y, q), q);
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[piv], q).unwrap();
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, q);
            }
            for (_, b) in basis.iter_mut() {
                if b[piv] != 0 {
                    let f = b[piv];
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = sub_mod(*x, mul_mod(f, *y, q), q);
                    }
                }
            }
            basis.push((piv, v));
            picked.push(j);
            if picked.len() == rows {
                break;
            }
        }
    }
    picked
}

/// Where generic rank is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    pub prime: u64,
    pub kappa: u64,
}

pub fn probe(seed: u64) -> Probe {
    let prime = word_primes(1)[0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Probe { prime, kappa: rng.gen_range(5..prime) }
}

/// Generic rank and the rank-profile columns.
pub fn rank_profile(m: &[Vec<ZPoly>], pr: Probe) -> Vec<usize> {
    column_profile(&eval_matrix(m, pr.kappa, pr.prime), pr.prime)
}

/// Column sets of full rank at the probe: the rank profile first, then seeded
/// random resamplings, each distinct.
pub fn minor_candidates(m: &[Vec<ZPoly>], pr: Probe, alternates: usize, seed: u64) -> Vec<Vec<usize>> {
    let rows = m.len();
    let a = eval_matrix(m, pr.kappa, pr.prime);
    let first = column_profile(&a, pr.prime);
    if first.len() < rows {
        return Vec::new();
    }
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = vec![first];
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut tries = 0;
    while out.len() < alternates + 1 && tries < 50 * (alternates + 1) {
        tries += 1;
        let mut order: Vec<usize> = (0..cols).collect();
        order.shuffle(&mut rng);
        let sub: Vec<Vec<u64>> = a.iter().map(|r| order.iter().map(|&j| r[j]).collect()).collect();
        let prof = column_profile(&sub, pr.prime);
        if prof.len() < rows {
            continue;
        }
        let mut set: Vec<usize> = prof.iter().map(|&k| order[k]).collect();
        set.sort_unstable();
        if !out.contains(&set) {
            out.push(set);
        }
    }
    out
}

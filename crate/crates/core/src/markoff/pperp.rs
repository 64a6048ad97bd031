use serde::Serialize;

use super::classify::golden_roots;
use super::orbits::decompose;
use super::{Generators, Surface};
use crate::error::{domain, Result};
use crate::exact_rings::matrix::rank_mod;
use crate::ffield::{add_mod, inv_mod, mul_mod, pow_mod, sqrt_raw};

/// `x_α = Σ αⁱ eᵢ` for i = 0..(p−1)/2, with `0⁰ = 1`.
pub fn span_vector_x(p: u64, alpha: u64) -> Vec<u64> {
    (0..=(p - 1) / 2).map(|i| pow_mod(alpha, i, p)).collect()
}

/// `y_𝓜 = Σ binom(2i, i) eᵢ` mod p.
pub fn span_vector_y_m(p: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for i in 1..=(p - 1) / 2 {
        // binom(2i, i) = binom(2i−2, i−1)·(2i)(2i−1)/i²
        let prev = *out.last().unwrap();
        let num = mul_mod(mul_mod(2 * i % p, (2 * i - 1) % p, p), prev, p);
        out.push(mul_mod(num, inv_mod(mul_mod(i, i, p), p).unwrap(), p));
    }
    out
}

/// The vector `Σ_α c_𝓜(α)·x_{α²}` of the whole surface: `y_𝓜 + e_{(p−1)/2}`.
pub fn span_vector_m(p: u64) -> Vec<u64> {
    let mut v = span_vector_y_m(p);
    let top = v.len() - 1;
    v[top] = add_mod(v[top], 1, p);
    v
}

fn combo(p: u64, terms: &[(u64, Vec<u64>)]) -> Vec<u64> {
    let mut out = vec![0u64; ((p + 1) / 2) as usize];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v) {
            *o = add_mod(*o, mul_mod(*c, *x, p), p);
        }
    }
    out
}

/// Comparison of the computed orthogonal complement with the predicted span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PperpReport {
    pub p: u64,
    pub kappa: u64,
    /// Cases of the κ classification that apply (1 through 5).
    pub cases: Vec<u8>,
    pub computed_dim: usize,
    pub predicted_dim: usize,
    pub equal: bool,
}

/// Predicted spanning vectors of 𝒫^⊥(𝔽_p) together with the applicable cases.
pub fn predicted_span(s: &Surface) -> (Vec<u8>, Vec<Vec<u64>>) {
    let p = s.p;
    let k = s.kappa;
    let x = |a: u64| span_vector_x(p, a);
    let mut cases = Vec::new();
    let mut vecs = vec![span_vector_m(p)];
    if sqrt_raw(k, p).is_some() {
        vecs.push(combo(p, &[(2, x(0)), (1, x(k))]));
    }
    let golden = golden_roots(p);
    if k == 2 % p {
        cases.push(2);
        vecs.push(combo(p, &[(1, x(0)), (3, x(1))]));
    }
    if let Some((f, g)) = golden {
        for (case, phi) in [(3u8, f), (4u8, g)] {
            if k == add_mod(2, phi, p) {
                cases.push(case);
                vecs.push(combo(p, &[(2, x(0)), (3, x(1)), (5, x(mul_mod(phi, phi, p)))]));
            }
        }
    }
    if k == 3 % p {
        cases.push(5);
        if sqrt_raw(2, p).is_some() {
            vecs.push(combo(p, &[(2, x(0)), (3, x(1)), (4, x(2 % p))]));
        }
        if let Some((f, g)) = golden {
            vecs.push(combo(
                p,
                &[(2, x(0)), (5, x(mul_mod(f, f, p))), (5, x(mul_mod(g, g, p))), (6, x(1))],
            ));
        }
    }
    if cases.is_empty() {
        cases.push(1);
    }
    (cases, vecs)
}

/// Vectors `Σ_α c_𝒪(α)·x_{α²}` for every Γ-orbit.
pub fn orbit_span(s: &Surface) -> Vec<Vec<u64>> {
    let p = s.p;
    decompose(s, Generators::Full)
        .iter()
        .map(|o| {
            let mut c = vec![0u64; p as usize];
            for t in o {
                c[t[0] as usize] += 1;
            }
            let terms: Vec<(u64, Vec<u64>)> = (0..p)
                .filter(|&a| c[a as usize] % p != 0)
                .map(|a| (c[a as usize] % p, span_vector_x(p, mul_mod(a, a, p))))
                .collect();
            combo(p, &terms)
        })
        .collect()
}

/// Computes 𝒫^⊥(𝔽_p) from the Γ-orbits and compares it with the predicted span.
pub fn pperp_check(p: u64, kappa: i64) -> Result<PperpReport> {
    let s = Surface::new(p, kappa)?;
    if s.kappa == 4 % p {
        return domain("κ = 4 is excluded");
    }
    let computed = orbit_span(&s);
    let (cases, predicted) = predicted_span(&s);
    let rc = rank_mod(&computed, p);
    let rp = rank_mod(&predicted, p);
    let mut both = computed;
    both.extend(predicted);
    let ru = rank_mod(&both, p);
    Ok(PperpReport { p, kappa: s.kappa, cases, computed_dim: rc, predicted_dim: rp, equal: rc == ru && rp == ru })
}

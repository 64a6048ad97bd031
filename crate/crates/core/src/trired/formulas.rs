//! Closed forms for the top coefficients of Φ and the Λ̂-sums they use.

use num_traits::{One, Zero};

use super::phi::Reducer;
use super::tripoly::TriPoly;
use crate::error::{domain, Result};
use crate::exact_rings::rational::{binomial, int, rat};
use crate::exact_rings::ring::QKappa;
use crate::exact_rings::{CycloElem, KPoly, Rational};

/// Coefficients of `b_n(x) = Σ_i binom(2i, i) x^{n-i} / (1 - 2i)`, ascending in x.
pub fn b_poly(n: u32) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); n as usize + 1];
    for i in 0..=n as i64 {
        c[(n as i64 - i) as usize] = Rational::from_integer(binomial(2 * i as u64, i as u64)) / int(1 - 2 * i);
    }
    c
}

/// `Σ_i w_i b_{n-i}(x²)` as coefficients of `x^{2t}`, `t = 0..=n`.
pub fn combine_b(w: &[KPoly], n: u32) -> Vec<KPoly> {
    let mut out = vec![KPoly::zero(); n as usize + 1];
    for (i, wi) in w.iter().enumerate().take(n as usize + 1) {
        for (t, c) in b_poly(n - i as u32).iter().enumerate() {
            out[t] = &out[t] + &wi.scale(c);
        }
    }
    out
}

/// Even part of a dense x-polynomial as coefficients of `x^{2t}`.
pub fn even_coeffs(v: &[KPoly]) -> Vec<KPoly> {
    v.iter().step_by(2).cloned().collect()
}

/// Predicted expansion of `Φ(x^{2n} y^{2m})` in the `b_{n-i}(x²)`; agrees with
/// the true value in the coefficients of `x^{2t}` for `t > m`.
pub fn gen_form_prediction(n: u32, m: u32) -> Vec<KPoly> {
    let mk = -KPoly::kappa();
    let w: Vec<KPoly> = (0..=n as u64)
        .map(|i| {
            let mut acc = KPoly::zero();
            for j in 0..=i {
                let m = m as u64;
                let c = binomial(2 * m + 2 * j, m + j) * binomial(m + j, m) * binomial(m, i - j);
                acc = &acc + &mk.pow((i - j) as u32).scale(&Rational::from_integer(c));
            }
            acc
        })
        .collect();
    combine_b(&w, n)
}

/// `Φ(x^{2n} y^{2m})` over ℚ[κ] as coefficients of `x^{2t}`.
pub fn phi_even_monomial(red: &mut Reducer<QKappa>, n: u32, m: u32) -> Vec<KPoly> {
    even_coeffs(&red.phi_monomial((2 * n, 2 * m, 0)))
}

/// `Φ((x²−κ)^{n−m} (x²−4)^m y^{2m}) − binom(2m, m)(x²−κ)^n`, as coefficients of `x^{2t}`.
pub fn spec_form_remainder(red: &mut Reducer<QKappa>, n: u32, m: u32) -> Result<Vec<KPoly>> {
    if m > n {
        return domain(format!("spec_form needs m <= n, got m={m} n={n}"));
    }
    let r = QKappa;
    let x2k = TriPoly::mono(r.clone(), 2, 0, 0).sub(&TriPoly::constant(r.clone(), KPoly::kappa()));
    let x24 = TriPoly::mono(r.clone(), 2, 0, 0).sub(&TriPoly::constant(r.clone(), KPoly::from_int(4)));
    let f = x2k.pow(n - m).mul(&x24.pow(m)).shift(0, 2 * m, 0);
    let mut v = red.phi(&f);
    let top = x2k.pow(n).scale(&KPoly::constant(Rational::from_integer(binomial(2 * m as u64, m as u64))));
    for ((a, _, _), c) in top.terms() {
        let a = *a as usize;
        if v.len() <= a {
            v.resize(a + 1, KPoly::zero());
        }
        v[a] = &v[a] - c;
    }
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    Ok(even_coeffs(&v))
}

/// `λ_j = ζ^j + ζ^{-j}` for `j = 1..=n`, ζ a primitive `2n`-th root: the multiset Λ̂_n.
pub fn lambda_hat(n: u32) -> Vec<CycloElem> {
    (1..=n as i64).map(|j| CycloElem::lambda(2 * n as u64, j)).collect()
}

/// `Σ_{λ∈Λ̂_n} λ^{2t}` for `t = 0..=tmax`.
pub fn lambda_hat_power_sums(n: u32, tmax: u32) -> Vec<Rational> {
    let m = 2 * n as u64;
    let sq: Vec<CycloElem> = lambda_hat(n).iter().map(|l| l.mul(l)).collect();
    let mut pw: Vec<CycloElem> = vec![CycloElem::one(m); sq.len()];
    let mut out = Vec::with_capacity(tmax as usize + 1);
    for _ in 0..=tmax {
        let s = pw.iter().fold(CycloElem::zero(m), |a, b| a.add(b));
        out.push(s.to_rational().expect("power sum over a Galois-stable set is rational"));
        for (p, q) in pw.iter_mut().zip(&sq) {
            *p = p.mul(q);
        }
    }
    out
}

/// Same sums over Λ̂̂_n = Λ̂_n ∖ {−2}.
pub fn lambda_hathat_power_sums(n: u32, tmax: u32) -> Vec<Rational> {
    let mut four = Rational::one();
    lambda_hat_power_sums(n, tmax)
        .into_iter()
        .map(|s| {
            let v = s - &four;
            four *= int(4);
            v
        })
        .collect()
}

/// Replaces `u^t` by `sums[t]` in `Σ_t w_t u^t`.
pub fn apply_sums(w: &[KPoly], sums: &[Rational]) -> KPoly {
    w.iter().zip(sums).fold(KPoly::zero(), |a, (c, s)| &a + &c.scale(s))
}

/// Coefficient of `x^i` in the series of `(1 − 4x)^{m − 1/2}`.
pub fn mclaurin_coeff(m: i64, i: u32) -> Rational {
    let a = rat(2 * m - 1, 2);
    let mut acc = Rational::one();
    for k in 0..i as i64 {
        acc = acc * (&a - int(k)) * int(-4) / int(k + 1);
    }
    acc
}

/// `(1/n) Σ_{λ∈Λ̂_n} λ^{2ℓ} (λ² − 4)^m`.
pub fn special_coef_sum(l: u32, m: u32, n: u32) -> Rational {
    let mm = 2 * n as u64;
    let four = CycloElem::from_int(mm, 4);
    let s = lambda_hat(n).iter().fold(CycloElem::zero(mm), |acc, lam| {
        let sq = lam.mul(lam);
        acc.add(&sq.pow(l as u64).mul(&sq.sub(&four).pow(m as u64)))
    });
    s.to_rational().expect("rational sum") / int(n as i64)
}

/// `base^e` for a polynomial in u with coefficients in ℚ[κ].
pub fn poly_u_pow(base: &[KPoly], e: u32) -> Vec<KPoly> {
    let mut acc = vec![KPoly::one()];
    for _ in 0..e {
        let mut next = vec![KPoly::zero(); acc.len() + base.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] = &next[i + j] + &(a * b);
            }
        }
        acc = next;
    }
    acc
}

/// Product of a ℚ[κ]-coefficient polynomial in u with a rational one.
pub fn poly_u_mul_rat(a: &[KPoly], b: &KPoly) -> Vec<KPoly> {
    let bc: Vec<Rational> = (0..=b.degree().unwrap_or(0)).map(|i| b.coeff(i)).collect();
    let mut out = vec![KPoly::zero(); a.len() + bc.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in bc.iter().enumerate() {
            out[i + j] = &out[i + j] + &x.scale(y);
        }
    }
    out
}

/// Predicted top part of `Φ(x^{2n} f(y²))` for `(y² − 4)^m | f`, with `f` given
/// as rational coefficients in `u = y²`, summed over Λ̂_ñ.
pub fn spec_form_prediction(n: u32, f: &KPoly, m: u32, ntilde: u32) -> Result<Vec<KPoly>> {
    if ntilde < n || ntilde == 0 {
        return domain("spec_form prediction needs ñ >= n, ñ > 0");
    }
    let u4 = KPoly::from_coeffs(vec![int(-4), int(1)]);
    let uk = [-KPoly::kappa(), KPoly::one()];
    let deg = f.degree().unwrap_or(0) as u32 + m + 1;
    let sums = lambda_hat_power_sums(ntilde, deg + 1);
    let mut w = Vec::new();
    for i in 0..=m.min(n) {
        let Some(h) = f.div_exact(&u4.pow(i)) else {
            return domain(format!("(y²−4)^{i} does not divide f"));
        };
        let prod = poly_u_mul_rat(&poly_u_pow(&uk, i), &h);
        let c = Rational::from_integer(binomial(2 * i as u64, i as u64)) / int(ntilde as i64);
        w.push(apply_sums(&prod, &sums).scale(&c));
    }
    Ok(combine_b(&w, n))
}

/// Degree bound on the remainder in [`spec_form_prediction`], in x.
pub fn spec_form_bound(n: u32, f: &KPoly, m: u32) -> u32 {
    let df = 2 * f.degree().unwrap_or(0) as u32;
    df.max((2 * n).saturating_sub(2 * m + 2))
}

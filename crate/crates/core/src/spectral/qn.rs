use num_traits::{One, Zero};
use serde::Serialize;

use super::basis::{gen_eigen_lambda2, GenEigenSet};
use crate::error::{domain, Error, Result};
use crate::exact_rings::matrix::det_mod;
use crate::exact_rings::rational::{binomial, binomial_signed, int, rat};
use crate::exact_rings::ring::{FpK, FpKappa, QKappa};
use crate::exact_rings::{CoeffRing, KPoly, Rational};
use crate::ffield::{inv_mod, is_prime, mul_mod, pow_mod, quad_char, Fp};
use crate::markoff::golden_roots;
use crate::trired::{Reducer, TriPoly};

/// Whether κ is a free variable or fixed in 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KappaMode {
    Symbolic,
    At(u64),
}

/// An even polynomial mod `x^{p+1} − x²` as its `(p+1)/2` coefficients of `x^{2i}`,
/// each an element of 𝔽_p[κ] (constant when κ is fixed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QnVector {
    pub p: u64,
    pub kappa: KappaMode,
    pub coords: Vec<Vec<u64>>,
}

impl QnVector {
    pub fn specialize(&self, k: u64) -> QnVector {
        let r = FpKappa { p: self.p };
        let coords = self
            .coords
            .iter()
            .map(|c| {
                let v = r.eval(c, k);
                if v == 0 {
                    Vec::new()
                } else {
                    vec![v]
                }
            })
            .collect();
        QnVector { p: self.p, kappa: KappaMode::At(k % self.p), coords }
    }

    /// Coordinate values when κ is fixed.
    pub fn values(&self) -> Option<Vec<u64>> {
        match self.kappa {
            KappaMode::Symbolic => None,
            KappaMode::At(_) => Some(self.coords.iter().map(|c| c.first().copied().unwrap_or(0)).collect()),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return domain(format!("{p} is not a prime >= 5"));
    }
    Ok(())
}

fn half_len(p: u64) -> usize {
    (p as usize + 1) / 2
}

fn qkappa_to_fp(r: &FpKappa, c: &KPoly) -> Result<Vec<u64>> {
    r.from_kpoly(c).ok_or_else(|| Error::Domain(format!("coefficient {c} has a denominator divisible by {}", r.p)))
}

/// Folds the even part of a dense x-polynomial over 𝔽_p[κ] modulo `x^{p+1} − x²`
/// into a [`QnVector`].
fn fold_even(p: u64, v: &[Vec<u64>]) -> Result<QnVector> {
    let r = FpKappa { p };
    let mut out = vec![Vec::new(); half_len(p)];
    for (e, c) in v.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        let mut e = e as u64;
        while e > p {
            e -= p - 1;
        }
        if e % 2 == 1 {
            continue;
        }
        let i = (e / 2) as usize;
        out[i] = r.add(&out[i], c);
    }
    Ok(QnVector { p, kappa: KappaMode::Symbolic, coords: out })
}

fn to_fp_tripoly(r: &FpKappa, f: &TriPoly<QKappa>) -> Result<TriPoly<FpKappa>> {
    let mut out = TriPoly::zero(*r);
    for (e, c) in f.terms() {
        out.add_term(*e, qkappa_to_fp(r, c)?);
    }
    Ok(out)
}

/// `q_n` by direct reduction of `(x² − x^{p+1}) 𝓅_n` over 𝔽_p[κ].
pub fn qn_direct_symbolic(n: u32, p: u64) -> Result<QnVector> {
    check_prime(p)?;
    if n == 0 || n > 6 {
        return domain(format!("q_n supports 1 <= n <= 6, got {n}"));
    }
    let ge = gen_eigen_lambda2(n)?;
    let r = FpKappa { p };
    let pn = to_fp_tripoly(&r, &ge.poly_own_basis(n))?;
    let f = pn.shift(2, 0, 0).sub(&pn.shift(p as u32 + 1, 0, 0));
    let mut red = Reducer::new(r);
    fold_even(p, &red.phi(&f))
}

pub fn qn_direct(n: u32, p: u64, kappa: i64) -> Result<QnVector> {
    let k = kappa.rem_euclid(p as i64) as u64;
    Ok(qn_direct_symbolic(n, p)?.specialize(k))
}

/// `e_j` as a symbolic vector.
pub fn e_vec(p: u64, j: usize) -> Vec<Vec<u64>> {
    let mut v = vec![Vec::new(); half_len(p)];
    v[j] = vec![1];
    v
}

/// `f_j = (4−κ)^{j+1} Σ_{i≥j} binom(i, j) e_i / 4^i` as a symbolic vector.
pub fn f_vec(p: u64, j: usize) -> Vec<Vec<u64>> {
    let r = FpKappa { p };
    let four_k = r.sub(&r.from_int(4), &r.kappa());
    let pre = r.pow(&four_k, j as u64 + 1);
    let inv4 = inv_mod(4, p).unwrap();
    (0..half_len(p))
        .map(|i| {
            if i < j {
                return Vec::new();
            }
            let b = r.from_bigint(&binomial(i as u64, j as u64));
            r.mul(&r.mul(&pre, &b), &vec![pow_mod(inv4, i as u64, p)])
        })
        .collect()
}

fn axpy(r: &FpKappa, acc: &mut [Vec<u64>], c: &[u64], v: &[Vec<u64>]) {
    let c = c.to_vec();
    for (a, x) in acc.iter_mut().zip(v) {
        *a = r.add(a, &r.mul(&c, x));
    }
}

/// `q_n = Σ_j F_j f_j + (4−κ) Σ_j E_j e_j` with the matrices of the published
/// table (n ≤ 4), over ℚ[κ].
pub fn published_qn_coefficients(n: u32) -> Result<(Vec<KPoly>, Vec<KPoly>)> {
    let k = |c: &[(i64, i64)]| KPoly::from_coeffs(c.iter().map(|&(a, b)| rat(a, b)).collect());
    let (f, e) = match n {
        1 => (vec![k(&[(-2, 1)])], vec![k(&[(2, 1)])]),
        2 => (vec![k(&[(-16, 1)]), k(&[(2, 1)])], vec![k(&[(16, 1), (-1, 1)]), k(&[(2, 1)])]),
        3 => (
            vec![k(&[(-120, 1), (6, 1)]), k(&[(18, 1), (3, 2)]), k(&[(-2, 1)])],
            vec![k(&[(120, 1), (-46, 3)]), k(&[(20, 1), (-4, 3)]), k(&[(4, 3)])],
        ),
        4 => (
            vec![k(&[(-896, 1), (96, 1)]), k(&[(144, 1), (8, 1), (1, 1)]), k(&[(-20, 1), (-3, 1)]), k(&[(2, 1)])],
            vec![
                k(&[(896, 1), (-7816, 45), (166, 45)]),
                k(&[(2596, 15), (-967, 45), (7, 45)]),
                k(&[(604, 45), (-11, 9)]),
                k(&[(16, 15)]),
            ],
        ),
        _ => return domain(format!("published q_n table covers n <= 4, got {n}")),
    };
    Ok((f, e))
}

/// Assembles `Σ_j F_j f_j + (4−κ) Σ_j E_j e_j` in 𝔽_p[κ].
pub fn assemble_ef(p: u64, f: &[KPoly], e: &[KPoly]) -> Result<QnVector> {
    check_prime(p)?;
    let r = FpKappa { p };
    let mut acc = vec![Vec::new(); half_len(p)];
    for (j, c) in f.iter().enumerate() {
        axpy(&r, &mut acc, &qkappa_to_fp(&r, c)?, &f_vec(p, j));
    }
    let four_k = KPoly::from_ints(&[4, -1]);
    for (j, c) in e.iter().enumerate() {
        axpy(&r, &mut acc, &qkappa_to_fp(&r, &(&four_k * c))?, &e_vec(p, j));
    }
    Ok(QnVector { p, kappa: KappaMode::Symbolic, coords: acc })
}

/// `q_n` from the published table (n ≤ 4).
pub fn qn_published(n: u32, p: u64) -> Result<QnVector> {
    let (f, e) = published_qn_coefficients(n)?;
    assemble_ef(p, &f, &e)
}

/// Coefficients `a_t` of `2Φ((x²−κ)𝓅_{n−1}) + Φ((x²−κ)²𝓅_{n−2})` over ℚ[κ].
pub fn small_poly(ge: &GenEigenSet, n: u32) -> Vec<KPoly> {
    let mut f = TriPoly::zero(QKappa);
    let x2k = TriPoly::mono(QKappa, 2, 0, 0).sub(&TriPoly::constant(QKappa, KPoly::kappa()));
    if n >= 1 {
        f = f.add(&x2k.mul(&ge.poly_own_basis(n - 1)).scale(&KPoly::from_int(2)));
    }
    if n >= 2 {
        f = f.add(&x2k.pow(2).mul(&ge.poly_own_basis(n - 2)));
    }
    Reducer::new(QKappa).phi(&f)
}

fn kpoly_coeff(v: &[KPoly], t: usize) -> KPoly {
    v.get(t).cloned().unwrap_or_else(KPoly::zero)
}

/// The "large" entry `2^{2−n−2i} Σ_j binom(n,j) binom(2i−2j+n−2, n−1)(−4)^j κ^{n−j}`,
/// binomials with negative top being zero.
pub fn large_coef(n: u32, i: u32) -> KPoly {
    let mut acc = KPoly::zero();
    for j in 0..=n {
        let top = 2 * i as i64 - 2 * j as i64 + n as i64 - 2;
        if top < 0 {
            continue;
        }
        let b = binomial(top as u64, n as u64 - 1);
        let c = Rational::from_integer(binomial(n as u64, j as u64) * b * num_bigint::BigInt::from(-4).pow(j));
        acc = &acc + &KPoly::kappa().pow(n - j).scale(&c);
    }
    acc.scale(&two_pow(2 - n as i64 - 2 * i as i64))
}

/// The wrapped tail `2^{2−n−2i} Σ_j binom(n,j) binom(2j−2i+1, n−1) 4^j (−κ)^{n−j}`
/// of `x^{p+1}𝓅_n` landing in coordinate `i ≥ 1`; binomials with negative top are zero.
pub fn wrap_coef(n: u32, i: u32) -> KPoly {
    let mut acc = KPoly::zero();
    if i == 0 {
        return acc;
    }
    for j in 0..=n {
        let top = 2 * j as i64 - 2 * i as i64 + 1;
        if top < 0 {
            continue;
        }
        let b = binomial(top as u64, n as u64 - 1);
        let c = Rational::from_integer(binomial(n as u64, j as u64) * b * num_bigint::BigInt::from(4).pow(j));
        acc = &acc + &(-KPoly::kappa()).pow(n - j).scale(&c);
    }
    acc.scale(&two_pow(2 - n as i64 - 2 * i as i64))
}

/// Coefficient of `x^{2i}` in `2^{2−n}(x²−κ)^n Σ_{t≤2−n} binom(1−t, n−1) x^t/2^t`, the
/// tail of `x²𝓅_n`, for `n = 2`. For `n = 1` it cancels against the left-side terms.
pub fn head_coef(n: u32, i: u32) -> KPoly {
    if n != 2 {
        return KPoly::zero();
    }
    let x2k = [-KPoly::kappa(), KPoly::one()];
    let pw = super::super::trired::formulas::poly_u_pow(&x2k, n);
    let mut acc = KPoly::zero();
    for t in (0..=2 - n).step_by(2) {
        let Some(c) = (i as usize).checked_sub(t as usize / 2).and_then(|d| pw.get(d)) else {
            continue;
        };
        let b = binomial(1 - t as u64, n as u64 - 1);
        acc = &acc + &c.scale(&(Rational::from_integer(b) * two_pow(2 - n as i64 - t as i64)));
    }
    acc
}

/// The correction `a_{2i} − wrap` for `i < n`.
pub fn small_coef(a: &[KPoly], n: u32, i: u32) -> KPoly {
    &kpoly_coeff(a, 2 * i as usize) - &wrap_coef(n, i)
}

fn two_pow(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(num_bigint::BigInt::from(2).pow(e as u32))
    } else {
        Rational::one() / Rational::from_integer(num_bigint::BigInt::from(2).pow((-e) as u32))
    }
}

/// Entry `i` of `q_n` from the two-regime closed form, over ℚ[κ]. For `n ≤ 2` the
/// wrapped tail also reaches coordinates `i ≥ n` and is subtracted there.
pub fn qn_entry_formula(n: u32, i: u32, a: &[KPoly]) -> Result<KPoly> {
    if n == 1 && i == 0 {
        return Ok(KPoly::zero());
    }
    if n == 2 && i < 2 {
        let v = &KPoly::kappa() * &KPoly::from_ints(&[4, -1]);
        return Ok(if i == 0 { -v } else { v.scale(&rat(-1, 2)) });
    }
    if i >= n {
        return Ok(&(&large_coef(n, i) - &wrap_coef(n, i)) + &head_coef(n, i));
    }
    Ok(&large_coef(n, i) + &small_coef(a, n, i))
}

/// `q_n` from the two-regime closed form.
pub fn qn_closed_form(n: u32, p: u64) -> Result<QnVector> {
    check_prime(p)?;
    if n == 0 || n as u64 > (p - 1) / 2 {
        return domain(format!("closed form needs 1 <= n <= (p−1)/2, got n={n}"));
    }
    let ge = gen_eigen_lambda2(n)?;
    let a = small_poly(&ge, n);
    let r = FpKappa { p };
    let coords = (0..half_len(p) as u32)
        .map(|i| qkappa_to_fp(&r, &qn_entry_formula(n, i, &a)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(QnVector { p, kappa: KappaMode::Symbolic, coords })
}

/// `q_n` from the closed formulas: the published table for `n ≤ 4`, the
/// two-regime form otherwise.
pub fn qn_formula(n: u32, p: u64, kappa: i64) -> Result<QnVector> {
    let k = kappa.rem_euclid(p as i64) as u64;
    let v = if n <= 4 { qn_published(n, p)? } else { qn_closed_form(n, p)? };
    Ok(v.specialize(k))
}

/// `F_j` and `E_j` over ℚ[κ] derived from the two-regime form by rewriting the
/// large entries in the `f_j` basis; comparable with the published table.
pub fn derive_ef_coefficients(n: u32) -> Result<(Vec<KPoly>, Vec<KPoly>)> {
    if n == 0 {
        return domain("n >= 1");
    }
    // binom(2i−2k+n−2, n−1) = Σ_j a_{j,k} binom(i, j)
    let g = |s: i64, k: i64| Rational::from_integer(binomial_signed(2 * s - 2 * k + n as i64 - 2, n as u64 - 1));
    let four_k = KPoly::from_ints(&[4, -1]);
    let mut f = Vec::new();
    for j in 0..n as i64 {
        let mut acc = KPoly::zero();
        for k in 0..=n as i64 {
            let mut a = Rational::zero();
            for s in 0..=j {
                let t = Rational::from_integer(binomial(j as u64, s as u64)) * g(s, k);
                if (j - s) % 2 == 0 {
                    a += t;
                } else {
                    a -= t;
                }
            }
            let c = a * Rational::from_integer(binomial(n as u64, k as u64) * num_bigint::BigInt::from(-4).pow(k as u32));
            acc = &acc + &KPoly::kappa().pow((n as i64 - k) as u32).scale(&c);
        }
        let acc = acc.scale(&two_pow(2 - n as i64));
        let q = acc
            .div_exact(&four_k.pow(j as u32 + 1))
            .ok_or_else(|| Error::Validation(vec![format!("F_{j} for n={n} is not a polynomial")]))?;
        f.push(q);
    }
    let ge = gen_eigen_lambda2(n)?;
    let a = small_poly(&ge, n);
    let mut e = Vec::new();
    for i in 0..n {
        let entry = qn_entry_formula(n, i, &a)?;
        let mut fpart = KPoly::zero();
        for (j, fj) in f.iter().enumerate() {
            let b = binomial(i as u64, j as u64);
            if b.is_zero() {
                continue;
            }
            let coef = four_k.pow(j as u32 + 1).scale(&(Rational::from_integer(b) / int(4).pow(i as i32)));
            fpart = &fpart + &(fj * &coef);
        }
        let rest = &entry - &fpart;
        let q = rest
            .div_exact(&four_k)
            .ok_or_else(|| Error::Validation(vec![format!("E_{i} for n={n} is not divisible by 4−κ")]))?;
        e.push(q);
    }
    Ok((f, e))
}

fn x_vec(p: u64, t: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(half_len(p));
    let mut pw = 1 % p;
    for _ in 0..half_len(p) {
        v.push(pw);
        pw = mul_mod(pw, t % p, p);
    }
    v
}

fn lin(p: u64, terms: &[(u64, &[u64])]) -> Vec<u64> {
    let mut out = vec![0u64; half_len(p)];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o = (*o + mul_mod(*c % p, *x, p)) % p;
        }
    }
    out
}

/// The target vectors used against the q_n, over 𝔽_p at a fixed κ. The
/// subscript of `x_t` is the value of α², so `x_t = (t^i)_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YVectors {
    pub p: u64,
    pub kappa: u64,
    pub y_m: Vec<u64>,
    pub y_kappa: Vec<u64>,
    pub y_1: Vec<u64>,
    pub y_phi: Option<Vec<u64>>,
    pub y_phibar: Option<Vec<u64>>,
    pub y_2: Vec<u64>,
    pub y_5: Option<Vec<u64>>,
    pub y_0: Vec<u64>,
    pub y_p: Option<Vec<u64>>,
    pub y_r: Vec<u64>,
    /// Names of vectors omitted because a square root is missing or κ = 4.
    pub omitted: Vec<String>,
}

pub fn y_vectors(p: u64, kappa: i64) -> Result<YVectors> {
    check_prime(p)?;
    let k = kappa.rem_euclid(p as i64) as u64;
    let h = half_len(p);
    let x0 = x_vec(p, 0);
    let x1 = x_vec(p, 1);
    let mut omitted = Vec::new();
    let mut y_m = vec![0u64; h];
    let mut b = 1u64;
    for (i, v) in y_m.iter_mut().enumerate() {
        if i > 0 {
            let i = i as u64;
            b = mul_mod(mul_mod(b, (2 * i) * (2 * i - 1) % p, p), inv_mod(i * i % p, p).unwrap(), p);
        }
        *v = b;
    }
    let y_kappa = lin(p, &[(2, &x0), (1, &x_vec(p, k))]);
    let y_1 = lin(p, &[(1, &x0), (3, &x1)]);
    let y_2 = lin(p, &[(2, &x0), (3, &x1), (4, &x_vec(p, 2))]);
    let (y_phi, y_phibar, y_5) = match golden_roots(p) {
        Some((f, g)) => {
            let xf = x_vec(p, mul_mod(f, f, p));
            let xg = x_vec(p, mul_mod(g, g, p));
            (
                Some(lin(p, &[(2, &x0), (3, &x1), (5, &xf)])),
                Some(lin(p, &[(2, &x0), (3, &x1), (5, &xg)])),
                Some(lin(p, &[(2, &x0), (5, &xf), (5, &xg), (6, &x1)])),
            )
        }
        None => {
            omitted.extend(["y_phi".to_string(), "y_phibar".into(), "y_5".into()]);
            (None, None, None)
        }
    };
    let mut y_0 = vec![0u64; h];
    y_0[1] = 1;
    y_0[2] = (p - 12 % p) % p;
    let y_p = match inv_mod((4 + p - k) % p, p) {
        Some(c) => {
            let mut v = vec![0u64; h];
            v[h - 1] = c;
            Some(v)
        }
        None => {
            omitted.push("y_p".into());
            None
        }
    };
    let mut y_r = vec![0u64; h];
    let mut inner = 0u64;
    let mut cb = 1u64;
    for (i, v) in y_r.iter_mut().enumerate().skip(1) {
        let i = i as u64;
        cb = mul_mod(mul_mod(cb, (2 * i) * (2 * i - 1) % p, p), inv_mod(i * i % p, p).unwrap(), p);
        let term = mul_mod(mul_mod(inv_mod(cb, p).unwrap(), pow_mod(k, i - 1, p), p), inv_mod(i, p).unwrap(), p);
        inner = (inner + term) % p;
        *v = (p - mul_mod(cb, inner, p)) % p;
    }
    Ok(YVectors { p, kappa: k, y_m, y_kappa, y_1, y_phi, y_phibar, y_2, y_5, y_0, y_p, y_r, omitted })
}

/// `⟨u, v⟩ = Σ u_i v_i` in 𝔽_p.
pub fn pair(p: u64, u: &[u64], v: &[u64]) -> u64 {
    u.iter().zip(v).fold(0, |a, (x, y)| (a + mul_mod(*x, *y, p)) % p)
}

/// Evaluates a symbolic vector at κ.
pub fn at_kappa(p: u64, v: &[Vec<u64>], k: u64) -> Vec<u64> {
    let r = FpKappa { p };
    v.iter().map(|c| r.eval(c, k)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalDeterminants {
    pub p: u64,
    pub kappa: u64,
    pub chi: i32,
    /// `det([q_1; q_2][y_ℝ y_p])`.
    pub det2: u64,
    /// `−(8/3)(4−κ)`.
    pub expected2: u64,
    /// `det([q_1; q_2; q̃_3][y_ℝ y_p y_κ])`, `q̃_3 = 15(272+72κ−3κ²)q_3 − 105(4+κ)q_4`.
    pub det3: u64,
    /// `2^19 κ`.
    pub expected3: u64,
    pub lemma_7_7: bool,
    pub lemma_7_8: bool,
}

/// Both sides of `4^n Σ_{i=j}^n binom(2i,i) binom(i,j)/4^i = ((2n+1)/(2j+1)) binom(n,j) binom(2n,n)`.
pub fn centbinom_sides(n: u64, j: u64) -> (Rational, Rational) {
    let mut lhs = Rational::zero();
    for i in j..=n {
        lhs += Rational::from_integer(binomial(2 * i, i) * binomial(i, j) * num_bigint::BigInt::from(4).pow((n - i) as u32));
    }
    let rhs = Rational::from_integer(binomial(n, j) * binomial(2 * n, n)) * int(2 * n as i64 + 1) / int(2 * j as i64 + 1);
    (lhs, rhs)
}

/// Closed form for `f_j · x_t` (`x_t = (t^i)_i`), `t ∉ {0, 4}`.
pub fn fj_at_x_closed(p: u64, kappa: u64, j: u64, t: u64) -> Option<u64> {
    let f = FpK::new(p, kappa as i64);
    let h = (p - 1) / 2;
    let four_k = f.sub(&4, &f.kappa());
    let q = f.mul(&four_k, &f.inv(&f.sub(&4, &t))?);
    let mut s = 0u64;
    let w = f.sub(&f.inv(&4)?, &f.inv(&t)?);
    let mut wp = 1u64;
    for i in 0..=j {
        s = f.add(&s, &f.mul(&f.from_bigint(&binomial(2 * i, i)), &wp));
        wp = f.mul(&wp, &w);
    }
    let th = f.pow(&t, h);
    let first = f.mul(&f.mul(&4, &f.pow(&t, j)), &f.mul(&f.pow(&q, j + 1), &f.sub(&1, &f.mul(&th, &s))));
    let km = f.sub(&f.mul(&f.kappa(), &f.inv(&4)?), &1);
    let second = f.mul(&f.mul(&4, &th), &f.mul(&f.pow(&km, j + 1), &f.from_bigint(&binomial(2 * j, j))));
    Some(f.sub(&first, &second))
}

/// Checks the closed form for `f_j · x_t` against the direct pairing for all
/// `t ∉ {0, 4}` and `j ≤ jmax`.
pub fn check_lemma_7_8(p: u64, kappa: u64, jmax: u64) -> bool {
    let h = (p - 1) / 2;
    for j in 0..=jmax.min(h) {
        let fj = at_kappa(p, &f_vec(p, j as usize), kappa);
        for t in 1..p {
            if t == 4 % p {
                continue;
            }
            if fj_at_x_closed(p, kappa, j, t) != Some(pair(p, &fj, &x_vec(p, t))) {
                return false;
            }
        }
    }
    true
}

/// The pairing determinants used for the local rank argument at λ = 2.
pub fn local_determinants(p: u64, kappa: i64) -> Result<LocalDeterminants> {
    check_prime(p)?;
    let k = kappa.rem_euclid(p as i64) as u64;
    if k == 4 % p {
        return domain("κ = 4 is excluded");
    }
    let f = FpK::new(p, k as i64);
    let y = y_vectors(p, kappa)?;
    let yp = y.y_p.clone().expect("κ ≠ 4");
    let q: Vec<Vec<u64>> = (1..=4).map(|n| qn_formula(n, p, kappa).map(|v| v.values().unwrap())).collect::<Result<_>>()?;
    let c3 = f.add(&f.from_int(15 * 272), &f.mul(&1080, &k));
    let c3 = f.sub(&c3, &f.mul(&45, &f.mul(&k, &k)));
    let c4 = f.from_int(105 * (4 + k as i64));
    let qt3: Vec<u64> = q[2].iter().zip(&q[3]).map(|(a, b)| f.sub(&f.mul(&c3, a), &f.mul(&c4, b))).collect();
    let cols = [&y.y_r, &yp, &y.y_kappa];
    let m2 = vec![vec![pair(p, &q[0], cols[0]), pair(p, &q[0], cols[1])], vec![pair(p, &q[1], cols[0]), pair(p, &q[1], cols[1])]];
    let rows3 = [&q[0], &q[1], &qt3];
    let m3: Vec<Vec<u64>> = rows3.iter().map(|r| cols.iter().map(|c| pair(p, r, c)).collect()).collect();
    let expected2 = f.neg(&f.mul(&f.mul(&8, &f.inv(&3).unwrap()), &f.sub(&4, &k)));
    let expected3 = f.mul(&pow_mod(2, 19, p), &k);
    let (l, r) = centbinom_sides(3, 1);
    Ok(LocalDeterminants {
        p,
        kappa: k,
        chi: quad_char(Fp::new(p, k as i64)),
        det2: det_mod(m2, p),
        expected2,
        det3: det_mod(m3, p),
        expected3,
        lemma_7_7: l == r,
        lemma_7_8: check_lemma_7_8(p, k, 6),
    })
}

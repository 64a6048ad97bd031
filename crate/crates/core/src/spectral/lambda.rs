use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact_rings::rational::{binomial, int};
use crate::exact_rings::{chebyshev_u, euler_phi, CoeffRing, CycloElem, KPoly, Rational, ZPoly};
use crate::ffield::prime_factors;
use crate::trired::formulas::{apply_sums, combine_b, lambda_hathat_power_sums, poly_u_mul_rat, poly_u_pow};
use crate::trired::TriPoly;

/// Rotation order of `λ = ζ^k + ζ^{−k}`, ζ a primitive `2n`-th root: the order
/// `o` of `ζ^k` when `o` is even, `2o` when it is odd.
pub fn class_order(n: u32, k: u32) -> u64 {
    let m = 2 * n as u64;
    let o = m / (k as u64).gcd(&m);
    if o % 2 == 0 {
        o
    } else {
        2 * o
    }
}

/// A class `{±λ}` in Λ̂̂_n, represented by `λ = 2cos(πk/n)` with `1 ≤ k ≤ n/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaClass {
    pub k: u32,
    pub ord: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaClasses {
    pub d: u32,
    pub n: u32,
    pub classes: Vec<LambdaClass>,
    /// `⌈¼ Σ_{d̃ | n/d} φ(2n/d̃)⌉`, zero when `d ∤ n`.
    pub printed_m: u64,
}

/// All classes `{±λ}` in Λ̂̂_n.
pub fn all_classes(n: u32) -> Vec<LambdaClass> {
    (1..=n / 2).filter(|&k| 2 * k <= n).map(|k| LambdaClass { k, ord: class_order(n, k) }).collect()
}

pub fn printed_m(d: u32, n: u32) -> u64 {
    if d == 0 || n % d != 0 {
        return 0;
    }
    let q = n / d;
    let s: u64 = (1..=q).filter(|t| q % t == 0).map(|t| euler_phi(2 * n as u64 / t as u64)).sum();
    s.div_ceil(4)
}

/// Classes `{±λ}` in Λ̂̂_n with `2d | ord(λ)`.
pub fn lambda_classes(d: u32, n: u32) -> LambdaClasses {
    let classes = all_classes(n).into_iter().filter(|c| c.ord % (2 * d as u64) == 0).collect();
    LambdaClasses { d, n, classes, printed_m: printed_m(d, n) }
}

/// `(prime, exponent)` when `d` is a prime power.
pub fn prime_power(d: u32) -> Option<(u64, u32)> {
    let f = prime_factors(d as u64);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut a = 0;
    let mut t = d as u64;
    while t % p == 0 {
        t /= p;
        a += 1;
    }
    (t == 1).then_some((p, a))
}

/// `n_d`: `4d`, or `5d` when d is a power of 3, or `6d` when d is a power of 2.
pub fn n_d(d: u32) -> Result<u32> {
    let Some((p, _)) = prime_power(d) else {
        return domain(format!("{d} is not a prime power"));
    };
    Ok(match p {
        2 => 6 * d,
        3 => 5 * d,
        _ => 4 * d,
    })
}

/// `g_{d,n}`: `x^δ Π (x − λ)` over λ ∈ Λ̂̂_n with `2d ∤ ord(λ)`, made even.
pub fn g_dn_poly(d: u32, n: u32) -> Result<ZPoly> {
    if d < 2 || n < 1 {
        return domain(format!("g_{{d,n}} needs d >= 2, n >= 1 (d={d}, n={n})"));
    }
    let m = 2 * n as u64;
    let mut acc: Vec<CycloElem> = vec![CycloElem::one(m)];
    let mut zero_bad = false;
    for k in 1..n {
        if class_order(n, k) % (2 * d as u64) == 0 {
            continue;
        }
        if 2 * k == n {
            zero_bad = true;
        }
        let lam = CycloElem::lambda(m, k as i64);
        let mut next = vec![CycloElem::zero(m); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(&lam));
        }
        acc = next;
    }
    if zero_bad {
        acc.insert(0, CycloElem::zero(m));
    }
    let mut coeffs = Vec::with_capacity(acc.len());
    for c in &acc {
        let q = c.to_rational().ok_or_else(|| Error::Validation(vec!["g_{d,n} coefficient not rational".into()]))?;
        if !q.is_integer() {
            return Err(Error::Validation(vec!["g_{d,n} coefficient not integral".into()]));
        }
        coeffs.push(q.to_integer());
    }
    Ok(ZPoly::from_coeffs(coeffs))
}

/// The Chebyshev form of `g_{d,n}` for prime-power `d` with `d | 2n`:
/// `u_{m p^{a−1}}` where `2n = m p^b`, `p ∤ m`. `None` when `d` is not a prime power.
pub fn g_dn_chebyshev(d: u32, n: u32) -> Result<Option<ZPoly>> {
    let Some((p, a)) = prime_power(d) else {
        return Ok(None);
    };
    if (2 * n) % d != 0 {
        return domain(format!("{d} does not divide 2n = {}", 2 * n));
    }
    let mut m = 2 * n as u64;
    while m % p == 0 {
        m /= p;
    }
    let idx = m * p.pow(a - 1);
    Ok(Some(chebyshev_u(idx as usize)?))
}

fn eval_at(g: &ZPoly, lam: &CycloElem) -> CycloElem {
    let m = lam.conductor();
    g.coeffs().iter().rev().fold(CycloElem::zero(m), |acc, c| {
        acc.mul(lam).add(&CycloElem::from_rational(m, Rational::from_integer(c.clone())))
    })
}

/// Root-set check of a candidate `g` on Λ̂̂_n: zero on every class with `2d ∤ ord`,
/// nonzero on every class with `2d | ord`. Returns the offending `k` values.
pub fn g_root_violations(g: &ZPoly, d: u32, n: u32) -> Vec<u32> {
    let m = 2 * n as u64;
    (1..n)
        .filter(|&k| {
            let good = class_order(n, k) % (2 * d as u64) == 0;
            let v = eval_at(g, &CycloElem::lambda(m, k as i64));
            v.is_zero() == good
        })
        .collect()
}

/// Both constructions of `g_{d,n}` with their guards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdnCheck {
    pub root_product: ZPoly,
    pub chebyshev: Option<ZPoly>,
    /// Bad classes the Chebyshev form misses, or good classes it kills.
    pub chebyshev_violations: Vec<u32>,
}

pub fn g_dn_check(d: u32, n: u32) -> Result<GdnCheck> {
    let root_product = g_dn_poly(d, n)?;
    let v = g_root_violations(&root_product, d, n);
    if !v.is_empty() {
        return Err(Error::Validation(vec![format!("g_{{{d},{n}}} root set wrong at k={v:?}")]));
    }
    let chebyshev = if (2 * n) % d == 0 { g_dn_chebyshev(d, n)? } else { None };
    let chebyshev_violations = chebyshev.as_ref().map(|c| g_root_violations(c, d, n)).unwrap_or_default();
    Ok(GdnCheck { root_product, chebyshev, chebyshev_violations })
}

/// `f_n = Σ_i (n/(n+i)) (−1)^i binom(n+i, 2i) (x²−4)^i (x²−κ)^{n−i} y^{2i}`.
pub fn fn_poly<R: CoeffRing>(ring: &R, n: u32) -> Result<TriPoly<R>> {
    if n == 0 {
        return domain("f_n needs n >= 1");
    }
    let x2 = TriPoly::mono(ring.clone(), 2, 0, 0);
    let x2k = x2.sub(&TriPoly::constant(ring.clone(), ring.kappa()));
    let x24 = x2.sub(&TriPoly::constant(ring.clone(), ring.from_int(4)));
    let mut out = TriPoly::zero(ring.clone());
    for i in 0..=n {
        let c = Rational::from_integer(binomial((n + i) as u64, 2 * i as u64)) * int(n as i64) / int((n + i) as i64);
        let c = if i % 2 == 1 { -c } else { c };
        let Some(c) = ring.from_rational(&c) else {
            return domain("f_n coefficient not representable in the ring");
        };
        out = out.add(&x24.pow(i).mul(&x2k.pow(n - i)).shift(0, 2 * i, 0).scale(&c));
    }
    Ok(out)
}

/// Predicted `Φ(g f_n)` modulo degree `≤ 2⌈3n/4⌉`, for `g` a polynomial in `u = x²`,
/// as coefficients of `x^{2t}`. Uses `c_{λ,n} = ½(−1)^n g(λ²)(λ²−4)^n`, read off the
/// `y^{2n}` coefficient of `f_n`.
pub fn gfn_prediction(n: u32, g: &KPoly) -> Vec<KPoly> {
    let dg = g.degree().unwrap_or(0) as u32;
    let sums = lambda_hathat_power_sums(n, 2 * n + dg + 1);
    let uk = [-KPoly::kappa(), KPoly::one()];
    let u4 = KPoly::from_ints(&[-4, 1]);
    let w: Vec<KPoly> = (0..=n)
        .map(|i| {
            let b = binomial((2 * n - i) as u64 - 1, i as u64);
            if b.is_zero() {
                return KPoly::zero();
            }
            let prod = poly_u_mul_rat(&poly_u_pow(&uk, i), &(g * &u4.pow(n - i)));
            let mut c = Rational::from_integer(b) / int(2 * n as i64);
            if (i + n) % 2 == 1 {
                c = -c;
            }
            apply_sums(&prod, &sums).scale(&c)
        })
        .collect();
    combine_b(&w, n)
        .into_iter()
        .chain(std::iter::repeat(KPoly::zero()))
        .take((n + dg) as usize + 1)
        .collect()
}

/// `⌈3n/4⌉`, the remainder bound (in x²) for [`gfn_prediction`].
pub fn gfn_bound(n: u32) -> u32 {
    (3 * n).div_ceil(4)
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::kpoly::KPoly;
use super::rational::{lcm_denoms, Rational};
use super::zpoly::ZPoly;
use crate::error::{domain, Result};

/// `clear·g = h1·a + h2·b` with `g` primitive in ℤ[κ] and `h1`, `h2` integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Xgcd {
    pub g: KPoly,
    pub h1: KPoly,
    pub h2: KPoly,
    pub clear: BigInt,
}

impl Xgcd {
    /// Checks the identity by expansion.
    pub fn verify(&self, a: &KPoly, b: &KPoly) -> bool {
        let lhs = self.g.scale(&Rational::from_integer(self.clear.clone()));
        let rhs = &(&self.h1 * a) + &(&self.h2 * b);
        lhs == rhs
    }
}

/// Extended gcd over ℚ[κ] with all denominators folded into one integer.
pub fn kpoly_xgcd(a: &KPoly, b: &KPoly) -> Result<Xgcd> {
    if a.is_zero() && b.is_zero() {
        return domain("xgcd of two zero polynomials");
    }
    let (mut r0, mut s0, mut t0) = (a.clone(), KPoly::one(), KPoly::zero());
    let (mut r1, mut s1, mut t1) = (b.clone(), KPoly::zero(), KPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        // keep remainders small by rescaling each triple consistently
        let (c, _) = r.content_primitive();
        let inv = if c.is_zero() { Rational::one() } else { Rational::one() / c };
        r0 = std::mem::replace(&mut r1, r.scale(&inv));
        s0 = std::mem::replace(&mut s1, s.scale(&inv));
        t0 = std::mem::replace(&mut t1, t.scale(&inv));
    }
    let (c, g) = r0.content_primitive();
    let inv = Rational::one() / c;
    let h1 = s0.scale(&inv);
    let h2 = t0.scale(&inv);
    let d = lcm_denoms(h1.coeffs().iter().chain(h2.coeffs()));
    let dq = Rational::from_integer(d.clone());
    let mut out = Xgcd { g: g.to_kpoly(), h1: h1.scale(&dq), h2: h2.scale(&dq), clear: d };
    normalize(&mut out);
    if let Some(better) = lattice_refine(a, b, &g) {
        if better.clear < out.clear {
            out = better;
        }
    }
    Ok(out)
}

fn normalize(x: &mut Xgcd) {
    let mut g = x.clear.clone();
    for q in x.h1.coeffs().iter().chain(x.h2.coeffs()) {
        g = g.gcd(q.numer());
    }
    if g > BigInt::one() {
        let inv = Rational::new(BigInt::one(), g.clone());
        x.h1 = x.h1.scale(&inv);
        x.h2 = x.h2.scale(&inv);
        x.clear /= g;
    }
}

/// Searches the lattice `{h1·a' + h2·b'}` (with `a = g·a'`, `b = g·b'`) for its
/// smallest positive constant. Only attempted for small inputs.
fn lattice_refine(a: &KPoly, b: &KPoly, g: &ZPoly) -> Option<Xgcd> {
    let az = a.to_zpoly()?;
    let bz = b.to_zpoly()?;
    let ap = if az.is_zero() { ZPoly::zero() } else { az.div_exact(g)? };
    let bp = if bz.is_zero() { ZPoly::zero() } else { bz.div_exact(g)? };
    let da = ap.degree().unwrap_or(0);
    let db = bp.degree().unwrap_or(0);
    let bits = ap.max_abs().bits().max(bp.max_abs().bits());
    if da + db > 24 || bits > 256 {
        return None;
    }
    let width = da + db + 1;
    let mut rows: Vec<(Vec<BigInt>, Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    let shifted = |p: &ZPoly, k: usize| {
        let mut v = vec![BigInt::zero(); width];
        for (i, c) in p.coeffs().iter().enumerate() {
            if i + k < width {
                v[i + k] = c.clone();
            }
        }
        v
    };
    if !ap.is_zero() {
        for i in 0..=db {
            if ap.degree().unwrap() + i >= width {
                break;
            }
            let mut u = vec![BigInt::zero(); db + 1];
            u[i] = BigInt::one();
            rows.push((shifted(&ap, i), u, vec![BigInt::zero(); da + 1]));
        }
    }
    if !bp.is_zero() {
        for j in 0..=da {
            if bp.degree().unwrap() + j >= width {
                break;
            }
            let mut v = vec![BigInt::zero(); da + 1];
            v[j] = BigInt::one();
            rows.push((shifted(&bp, j), vec![BigInt::zero(); db + 1], v));
        }
    }
    let combine = |x: &(Vec<BigInt>, Vec<BigInt>, Vec<BigInt>),
                   y: &(Vec<BigInt>, Vec<BigInt>, Vec<BigInt>),
                   p: &BigInt,
                   q: &BigInt| {
        let f = |u: &[BigInt], v: &[BigInt]| -> Vec<BigInt> { u.iter().zip(v).map(|(s, t)| p * s + q * t).collect() };
        (f(&x.0, &y.0), f(&x.1, &y.1), f(&x.2, &y.2))
    };
    for col in (0..width).rev() {
        let mut idx: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].0[col].is_zero()).collect();
        while idx.len() > 1 {
            let (i, j) = (idx[0], idx[1]);
            let (x, y) = (rows[i].0[col].clone(), rows[j].0[col].clone());
            let e = x.extended_gcd(&y);
            let new_i = combine(&rows[i], &rows[j], &e.x, &e.y);
            let new_j = combine(&rows[i], &rows[j], &(-&y / &e.gcd), &(&x / &e.gcd));
            rows[i] = new_i;
            rows[j] = new_j;
            idx.remove(1);
        }
        if col > 0 {
            if let Some(&i) = idx.first() {
                rows.remove(i);
            }
        }
    }
    let mut best = rows.into_iter().find(|r| !r.0[0].is_zero())?;
    if best.0[0].is_negative() {
        best = (best.0.iter().map(|x| -x).collect(), best.1.iter().map(|x| -x).collect(), best.2.iter().map(|x| -x).collect());
    }
    let to_k = |v: &[BigInt]| KPoly::from_coeffs(v.iter().map(|x| Rational::from_integer(x.clone())).collect());
    let mut out = Xgcd { g: g.to_kpoly(), h1: to_k(&best.1), h2: to_k(&best.2), clear: best.0[0].clone() };
    normalize(&mut out);
    out.verify(a, b).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_case() {
        let a = KPoly::from_ints(&[-4, 0, 1]);
        let b = KPoly::from_ints(&[-2, 1]);
        let x = kpoly_xgcd(&a, &b).unwrap();
        assert_eq!(x.g, b);
        assert_eq!(x.clear, BigInt::one());
        assert!(x.verify(&a, &b));
    }

    #[test]
    fn coprime_linear() {
        let a = KPoly::kappa();
        let b = KPoly::from_ints(&[2, 1]);
        let x = kpoly_xgcd(&a, &b).unwrap();
        assert_eq!(x.g, KPoly::one());
        assert_eq!(x.clear, BigInt::from(2));
        assert_eq!((x.h1.clone(), x.h2.clone()), (KPoly::from_int(-1), KPoly::from_int(1)));
    }

    #[test]
    fn both_zero() {
        assert!(kpoly_xgcd(&KPoly::zero(), &KPoly::zero()).is_err());
    }
}

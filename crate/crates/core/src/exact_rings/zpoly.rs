use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::kpoly::{owned_ops, KPoly};
use super::rational::Rational;

/// Univariate polynomial over ℤ, dense, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigInt::one()])
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `κ - a`.
    pub fn linear(a: i64) -> Self {
        Self::from_ints(&[-a, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZPoly { c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for q in self.c.iter().rev() {
            acc = acc * x + q;
        }
        acc
    }

    /// Coefficients reduced into `[0, q)`.
    pub fn mod_q(&self, q: u64) -> Vec<u64> {
        let qb = BigInt::from(q);
        self.c
            .iter()
            .map(|x| x.mod_floor(&qb).to_u64().unwrap())
            .collect()
    }

    pub fn eval_mod(&self, x: u64, q: u64) -> u64 {
        let mut acc: u64 = 0;
        for r in self.mod_q(q).iter().rev() {
            acc = ((acc as u128 * x as u128 + *r as u128) % q as u128) as u64;
        }
        acc
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |a, x| a.gcd(x))
    }

    /// Divides by the content and fixes the sign so the lead is positive.
    pub fn primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), Self::zero());
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        (g.clone(), ZPoly { c: self.c.iter().map(|x| x / &g).collect() })
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<ZPoly> {
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            let (q, r) = x.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(ZPoly { c: out })
    }

    /// Quotient in ℤ[κ] when `d` divides `self` there.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let dd = d.c.len() - 1;
        let lc = d.lead();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let (t, rem) = r[i + dd].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            if !t.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[i + j] -= &t * dj;
                }
            }
            q[i] = t;
        }
        r.iter().all(|x| x.is_zero()).then(|| Self::from_coeffs(q))
    }

    /// Divides out `(κ - a)` as many times as possible, returning the multiplicity.
    pub fn strip_linear(&self, a: i64) -> (u32, ZPoly) {
        let lin = Self::linear(a);
        let mut cur = self.clone();
        let mut b = 0;
        if cur.is_zero() {
            return (0, cur);
        }
        while let Some(q) = cur.div_exact(&lin) {
            cur = q;
            b += 1;
        }
        (b, cur)
    }

    pub fn to_kpoly(&self) -> KPoly {
        KPoly::from_coeffs(self.c.iter().map(|x| Rational::from_integer(x.clone())).collect())
    }

    /// Sum of absolute values of the coefficients.
    pub fn norm1(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).sum()
    }

    pub fn max_abs(&self) -> BigInt {
        self.c.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        self.to_kpoly().fmt_var(var)
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("k"))
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("k"))
    }
}

impl<'a> Add<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn add(self, o: &ZPoly) -> ZPoly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, q) in short.c.iter().enumerate() {
            c[i] += q;
        }
        ZPoly::from_coeffs(c)
    }
}

impl<'a> Sub<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn sub(self, o: &ZPoly) -> ZPoly {
        let mut c = self.c.clone();
        if c.len() < o.c.len() {
            c.resize(o.c.len(), BigInt::zero());
        }
        for (i, q) in o.c.iter().enumerate() {
            c[i] -= q;
        }
        ZPoly::from_coeffs(c)
    }
}

impl<'a> Mul<&'a ZPoly> for &'a ZPoly {
    type Output = ZPoly;
    fn mul(self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(c)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { c: self.c.iter().map(|q| -q).collect() }
    }
}

owned_ops!(ZPoly);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_linear_factor() {
        let p = &ZPoly::linear(4).pow(3) * &ZPoly::from_ints(&[1, 1]);
        let (b, r) = p.strip_linear(4);
        assert_eq!(b, 3);
        assert_eq!(r, ZPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn exact_division_rejects_fractions() {
        let a = ZPoly::from_ints(&[1, 1]);
        let b = ZPoly::from_ints(&[1, 2]);
        assert!(a.div_exact(&b).is_none());
        assert_eq!(ZPoly::from_ints(&[2, 4]).div_exact(&b), Some(ZPoly::from_ints(&[2])));
    }
}

impl serde::Serialize for ZPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.c.iter().map(|x| x.to_string()))
    }
}

impl<'de> serde::Deserialize<'de> for ZPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = serde::Deserialize::deserialize(d)?;
        let c = v
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(ZPoly::from_coeffs(c))
    }
}

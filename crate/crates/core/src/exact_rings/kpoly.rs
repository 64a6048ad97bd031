use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use super::zpoly::ZPoly;

/// Univariate polynomial over ℚ in the variable κ, stored densely.
/// Index `i` holds the coefficient of κ^i; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KPoly {
    c: Vec<Rational>,
}

impl KPoly {
    pub fn zero() -> Self {
        KPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_coeffs(vec![q])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// The polynomial κ.
    pub fn kappa() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        KPoly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    /// `c·κ^k`.
    pub fn monomial(q: Rational, k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = q;
        Self::from_coeffs(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        KPoly { c: self.c.iter().map(|x| x * q).collect() }
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); k];
        c.extend(self.c.iter().cloned());
        KPoly { c }
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

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for q in self.c.iter().rev() {
            acc = acc * x + q;
        }
        acc
    }

    /// Substitutes κ ↦ `x` in a generic ring.
    pub fn eval_in<R: super::ring::CoeffRing>(&self, ring: &R, x: &R::Elem) -> Option<R::Elem> {
        let mut acc = ring.zero();
        for q in self.c.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), &ring.from_rational(q)?);
        }
        Some(acc)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &KPoly) -> (KPoly, KPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let lc = d.lead();
        let mut r = self.c.clone();
        if r.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let t = &r[i + dd] / &lc;
            if !t.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[i + j] -= &t * dj;
                }
            }
            q[i] = t;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &KPoly) -> Option<KPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> KPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.lead();
        self.scale(&(Rational::one() / l))
    }

    /// Monic gcd over ℚ (zero if both are zero).
    pub fn gcd(&self, other: &KPoly) -> KPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Rescaled to integer coefficients with unit content and positive leading coefficient.
    pub fn primitive_rational(&self) -> KPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let (_, p) = self.content_primitive();
        p.to_kpoly()
    }

    /// Splits `self = content · primitive` with primitive integral and positive lead.
    pub fn content_primitive(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), ZPoly::zero());
        }
        let den = self.c.iter().fold(BigInt::one(), |a, q| a.lcm(q.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|q| (q * &den).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
        (Rational::new(g, den), ZPoly::from_coeffs(prim))
    }

    /// `Some` when every coefficient is an integer.
    pub fn to_zpoly(&self) -> Option<ZPoly> {
        if self.c.iter().all(|q| q.is_integer()) {
            Some(ZPoly::from_coeffs(self.c.iter().map(|q| q.to_integer()).collect()))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> KPoly {
        Self::from_coeffs(
            self.c.iter().enumerate().skip(1).map(|(i, q)| q * int(i as i64)).collect(),
        )
    }

    /// Formats with the given variable name.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, q) in self.c.iter().enumerate().rev() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let a = q.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if body.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{a}*{body}"));
            }
        }
        out
    }
}

impl fmt::Debug for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("k"))
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("k"))
    }
}

impl<'a> Add<&'a KPoly> for &'a KPoly {
    type Output = KPoly;
    fn add(self, o: &KPoly) -> KPoly {
        let (long, short) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = long.c.clone();
        for (i, q) in short.c.iter().enumerate() {
            c[i] += q;
        }
        KPoly::from_coeffs(c)
    }
}

impl<'a> Sub<&'a KPoly> for &'a KPoly {
    type Output = KPoly;
    fn sub(self, o: &KPoly) -> KPoly {
        let mut c = self.c.clone();
        if c.len() < o.c.len() {
            c.resize(o.c.len(), Rational::zero());
        }
        for (i, q) in o.c.iter().enumerate() {
            c[i] -= q;
        }
        KPoly::from_coeffs(c)
    }
}

impl<'a> Mul<&'a KPoly> for &'a KPoly {
    type Output = KPoly;
    fn mul(self, o: &KPoly) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return KPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        KPoly::from_coeffs(c)
    }
}

impl Neg for &KPoly {
    type Output = KPoly;
    fn neg(self) -> KPoly {
        KPoly { c: self.c.iter().map(|q| -q).collect() }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;
owned_ops!(KPoly);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_rings::rational::rat;

    #[test]
    fn division_roundtrip() {
        let a = KPoly::from_ints(&[-4, 0, 1]);
        let b = KPoly::from_ints(&[-2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, KPoly::from_ints(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        let a = KPoly::from_ints(&[6, -5, 1]).scale(&rat(3, 2));
        let b = KPoly::from_ints(&[-6, 1, 1]);
        assert_eq!(a.gcd(&b), KPoly::from_ints(&[-2, 1]));
    }

    #[test]
    fn content_split() {
        let a = KPoly::from_coeffs(vec![rat(1, 2), rat(-3, 4)]);
        let (c, p) = a.content_primitive();
        assert_eq!(c, rat(-1, 4));
        assert_eq!(p, ZPoly::from_ints(&[-2, 3]));
    }

    #[test]
    fn display() {
        assert_eq!(KPoly::from_ints(&[-8, 24, 0, -1]).to_string(), "-k^3 + 24*k - 8");
    }
}

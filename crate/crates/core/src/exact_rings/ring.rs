use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};


use super::cyclo::CycloElem;
use super::kpoly::KPoly;
use super::rational::{int, Rational};
use crate::ffield::{inv_mod, mul_mod};

/// Coefficient ring for trivariate polynomials. `kappa()` is the ring's κ,
/// either a free variable or a fixed value.
pub trait CoeffRing: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// `None` when the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn kappa(&self) -> Self::Elem;
    /// Inverse when it exists in the ring.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Characteristic (0 for characteristic zero).
    fn characteristic(&self) -> u64;

    fn half(&self, a: &Self::Elem) -> Option<Self::Elem> {
        let h = self.inv(&self.from_int(2))?;
        Some(self.mul(a, &h))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn scale_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_int(n))
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.from_rational(&Rational::from_integer(n.clone())).expect("integers embed")
    }

    fn from_kpoly(&self, p: &KPoly) -> Option<Self::Elem> {
        p.eval_in(self, &self.kappa())
    }
}

/// ℚ[κ] with κ symbolic.
#[derive(Clone, Debug, Default)]
pub struct QKappa;

impl CoeffRing for QKappa {
    type Elem = KPoly;
    fn zero(&self) -> KPoly {
        KPoly::zero()
    }
    fn one(&self) -> KPoly {
        KPoly::one()
    }
    fn from_int(&self, n: i64) -> KPoly {
        KPoly::from_int(n)
    }
    fn from_rational(&self, q: &Rational) -> Option<KPoly> {
        Some(KPoly::constant(q.clone()))
    }
    fn add(&self, a: &KPoly, b: &KPoly) -> KPoly {
        a + b
    }
    fn sub(&self, a: &KPoly, b: &KPoly) -> KPoly {
        a - b
    }
    fn mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        a * b
    }
    fn neg(&self, a: &KPoly) -> KPoly {
        -a
    }
    fn is_zero(&self, a: &KPoly) -> bool {
        a.is_zero()
    }
    fn kappa(&self) -> KPoly {
        KPoly::kappa()
    }
    fn inv(&self, a: &KPoly) -> Option<KPoly> {
        if a.degree() == Some(0) {
            Some(KPoly::constant(Rational::one() / a.lead()))
        } else {
            None
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn from_kpoly(&self, p: &KPoly) -> Option<KPoly> {
        Some(p.clone())
    }
}

/// ℚ with κ fixed to a rational value.
#[derive(Clone, Debug)]
pub struct QAt {
    pub kappa: Rational,
}

impl CoeffRing for QAt {
    type Elem = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: i64) -> Rational {
        int(n)
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn kappa(&self) -> Rational {
        self.kappa.clone()
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| Rational::one() / a)
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// 𝔽_p with κ fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpK {
    pub p: u64,
    pub kappa: u64,
}

impl FpK {
    pub fn new(p: u64, kappa: i64) -> Self {
        FpK { p, kappa: kappa.rem_euclid(p as i64) as u64 }
    }
}

impl CoeffRing for FpK {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let pb = BigInt::from(self.p);
        let n = q.numer().mod_floor(&pb).to_u64()?;
        let d = q.denom().mod_floor(&pb).to_u64()?;
        Some(mul_mod(n, inv_mod(d, self.p)?, self.p))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn kappa(&self) -> u64 {
        self.kappa
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// ℚ(ζ_m) with κ fixed.
#[derive(Clone, Debug)]
pub struct CycloAt {
    pub m: u64,
    pub kappa: CycloElem,
}

impl CoeffRing for CycloAt {
    type Elem = CycloElem;
    fn zero(&self) -> CycloElem {
        CycloElem::zero(self.m)
    }
    fn one(&self) -> CycloElem {
        CycloElem::one(self.m)
    }
    fn from_int(&self, n: i64) -> CycloElem {
        CycloElem::from_int(self.m, n)
    }
    fn from_rational(&self, q: &Rational) -> Option<CycloElem> {
        Some(CycloElem::from_rational(self.m, q.clone()))
    }
    fn add(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        a.add(b)
    }
    fn sub(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        a.sub(b)
    }
    fn mul(&self, a: &CycloElem, b: &CycloElem) -> CycloElem {
        a.mul(b)
    }
    fn neg(&self, a: &CycloElem) -> CycloElem {
        a.neg()
    }
    fn is_zero(&self, a: &CycloElem) -> bool {
        a.is_zero()
    }
    fn kappa(&self) -> CycloElem {
        self.kappa.clone()
    }
    fn inv(&self, a: &CycloElem) -> Option<CycloElem> {
        a.inv()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// ℚ(ζ_m)[κ] with κ symbolic; elements are coefficient lists in κ.
#[derive(Clone, Debug)]
pub struct CycloKappa {
    pub m: u64,
}

impl CycloKappa {
    fn trim(&self, mut v: Vec<CycloElem>) -> Vec<CycloElem> {
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
        v
    }

    /// Evaluates at a concrete value of κ.
    pub fn eval(&self, a: &[CycloElem], k: &CycloElem) -> CycloElem {
        let mut acc = CycloElem::zero(self.m);
        for c in a.iter().rev() {
            acc = acc.mul(k).add(c);
        }
        acc
    }
}

impl CoeffRing for CycloKappa {
    type Elem = Vec<CycloElem>;
    fn zero(&self) -> Vec<CycloElem> {
        Vec::new()
    }
    fn one(&self) -> Vec<CycloElem> {
        vec![CycloElem::one(self.m)]
    }
    fn from_int(&self, n: i64) -> Vec<CycloElem> {
        self.trim(vec![CycloElem::from_int(self.m, n)])
    }
    fn from_rational(&self, q: &Rational) -> Option<Vec<CycloElem>> {
        Some(self.trim(vec![CycloElem::from_rational(self.m, q.clone())]))
    }
    fn add(&self, a: &Vec<CycloElem>, b: &Vec<CycloElem>) -> Vec<CycloElem> {
        let n = a.len().max(b.len());
        let z = CycloElem::zero(self.m);
        let v = (0..n).map(|i| a.get(i).unwrap_or(&z).add(b.get(i).unwrap_or(&z))).collect();
        self.trim(v)
    }
    fn sub(&self, a: &Vec<CycloElem>, b: &Vec<CycloElem>) -> Vec<CycloElem> {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Vec<CycloElem>, b: &Vec<CycloElem>) -> Vec<CycloElem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![CycloElem::zero(self.m); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] = v[i + j].add(&x.mul(y));
            }
        }
        self.trim(v)
    }
    fn neg(&self, a: &Vec<CycloElem>) -> Vec<CycloElem> {
        a.iter().map(|x| x.neg()).collect()
    }
    fn is_zero(&self, a: &Vec<CycloElem>) -> bool {
        a.is_empty()
    }
    fn kappa(&self) -> Vec<CycloElem> {
        vec![CycloElem::zero(self.m), CycloElem::one(self.m)]
    }
    fn inv(&self, a: &Vec<CycloElem>) -> Option<Vec<CycloElem>> {
        if a.len() == 1 {
            Some(vec![a[0].inv()?])
        } else {
            None
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Embeds a constant cyclotomic value into ℚ(ζ_m)[κ].
pub fn cyclo_const(r: &CycloKappa, c: &CycloElem) -> Vec<CycloElem> {
    if c.is_zero() {
        r.zero()
    } else {
        vec![c.clone()]
    }
}

/// True when `n` is invertible in the ring.
pub fn invertible_int<R: CoeffRing>(r: &R, n: i64) -> bool {
    r.inv(&r.from_int(n)).is_some()
}

/// 𝔽_p[κ] with κ symbolic; elements are coefficient lists in κ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpKappa {
    pub p: u64,
}

impl FpKappa {
    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Evaluates at κ = `k`.
    pub fn eval(&self, a: &[u64], k: u64) -> u64 {
        a.iter().rev().fold(0, |acc, c| (mul_mod(acc, k % self.p, self.p) + c) % self.p)
    }
}

impl CoeffRing for FpKappa {
    type Elem = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        Vec::new()
    }
    fn one(&self) -> Vec<u64> {
        Self::trim(vec![1 % self.p])
    }
    fn from_int(&self, n: i64) -> Vec<u64> {
        Self::trim(vec![n.rem_euclid(self.p as i64) as u64])
    }
    fn from_rational(&self, q: &Rational) -> Option<Vec<u64>> {
        FpK { p: self.p, kappa: 0 }.from_rational(q).map(|c| Self::trim(vec![c]))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        Self::trim(v)
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(*x, *y, self.p)) % self.p;
            }
        }
        Self::trim(v)
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.is_empty()
    }
    fn kappa(&self) -> Vec<u64> {
        Self::trim(vec![0, 1 % self.p])
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if a.len() == 1 {
            Some(vec![inv_mod(a[0], self.p)?])
        } else {
            None
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

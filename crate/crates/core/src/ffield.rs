//! Prime fields, their quadratic extensions, square roots and rotation orders.

use std::fmt;

use crate::error::{domain, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo `p` (any modulus, via extended Euclid).
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes in `[lo, hi]`, increasing.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Distinct prime factors by trial division (word-size inputs).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Element of 𝔽_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    pub p: u64,
    pub v: u64,
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Self {
        Fp { p, v: v.rem_euclid(p as i64) as u64 }
    }
    pub fn add(self, o: Fp) -> Fp {
        Fp { p: self.p, v: add_mod(self.v, o.v, self.p) }
    }
    pub fn sub(self, o: Fp) -> Fp {
        Fp { p: self.p, v: sub_mod(self.v, o.v, self.p) }
    }
    pub fn mul(self, o: Fp) -> Fp {
        Fp { p: self.p, v: mul_mod(self.v, o.v, self.p) }
    }
    pub fn neg(self) -> Fp {
        Fp { p: self.p, v: sub_mod(0, self.v, self.p) }
    }
    pub fn inv(self) -> Option<Fp> {
        inv_mod(self.v, self.p).map(|v| Fp { p: self.p, v })
    }
    pub fn pow(self, e: u64) -> Fp {
        Fp { p: self.p, v: pow_mod(self.v, e, self.p) }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

/// A checked odd prime with its fixed nonresidue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
    pub nonresidue: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return domain(format!("{p} is not an odd prime"));
        }
        let nonresidue = (2..p).find(|&r| legendre(r, p) == -1).unwrap();
        Ok(PrimeField { p, nonresidue })
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp::new(self.p, v)
    }
}

fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Quadratic character χ(α) ∈ {-1, 0, 1}.
pub fn quad_char(a: Fp) -> i32 {
    legendre(a.v, a.p)
}

/// Square root with the smaller canonical representative, or `None` for nonresidues.
pub fn sqrt_mod(a: Fp) -> Option<Fp> {
    sqrt_raw(a.v, a.p).map(|v| Fp { p: a.p, v })
}

pub fn sqrt_raw(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let r = tonelli_shanks(a, p);
    Some(r.min(p - r))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| legendre(z, p) == -1).unwrap();
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Element `a + b√r` of 𝔽_{p²}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp2 {
    pub p: u64,
    pub r: u64,
    pub a: u64,
    pub b: u64,
}

impl Fp2 {
    pub fn new(f: &PrimeField, a: u64, b: u64) -> Self {
        Fp2 { p: f.p, r: f.nonresidue, a: a % f.p, b: b % f.p }
    }
    pub fn from_base(f: &PrimeField, a: u64) -> Self {
        Self::new(f, a, 0)
    }
    pub fn one(f: &PrimeField) -> Self {
        Self::new(f, 1, 0)
    }
    pub fn add(self, o: Fp2) -> Fp2 {
        Fp2 { a: add_mod(self.a, o.a, self.p), b: add_mod(self.b, o.b, self.p), ..self }
    }
    pub fn sub(self, o: Fp2) -> Fp2 {
        Fp2 { a: sub_mod(self.a, o.a, self.p), b: sub_mod(self.b, o.b, self.p), ..self }
    }
    pub fn neg(self) -> Fp2 {
        Fp2 { a: sub_mod(0, self.a, self.p), b: sub_mod(0, self.b, self.p), ..self }
    }
    pub fn mul(self, o: Fp2) -> Fp2 {
        let p = self.p;
        let ac = mul_mod(self.a, o.a, p);
        let bdr = mul_mod(mul_mod(self.b, o.b, p), self.r, p);
        let ad = mul_mod(self.a, o.b, p);
        let bc = mul_mod(self.b, o.a, p);
        Fp2 { a: add_mod(ac, bdr, p), b: add_mod(ad, bc, p), ..self }
    }
    pub fn scale(self, k: u64) -> Fp2 {
        Fp2 { a: mul_mod(self.a, k, self.p), b: mul_mod(self.b, k, self.p), ..self }
    }
    pub fn norm(self) -> u64 {
        let p = self.p;
        sub_mod(mul_mod(self.a, self.a, p), mul_mod(mul_mod(self.b, self.b, p), self.r, p), p)
    }
    pub fn conj(self) -> Fp2 {
        Fp2 { b: sub_mod(0, self.b, self.p), ..self }
    }
    pub fn inv(self) -> Option<Fp2> {
        let n = inv_mod(self.norm(), self.p)?;
        Some(self.conj().scale(n))
    }
    pub fn pow(self, mut e: u64) -> Fp2 {
        let mut base = self;
        let mut acc = Fp2 { a: 1, b: 0, ..self };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }
    pub fn is_one(self) -> bool {
        self.a == 1 % self.p && self.b == 0
    }
    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
    /// `Some(a)` when the element lies in 𝔽_p.
    pub fn base(self) -> Option<u64> {
        (self.b == 0).then_some(self.a)
    }
}

/// Square root in 𝔽_{p²} of a base-field element (always exists).
pub fn sqrt_in_fp2(f: &PrimeField, a: u64) -> Fp2 {
    match sqrt_raw(a, f.p) {
        Some(s) => Fp2::from_base(f, s),
        None => {
            // a = r·c² with c = sqrt(a/r)
            let c = sqrt_raw(mul_mod(a, inv_mod(f.nonresidue, f.p).unwrap(), f.p), f.p).unwrap();
            Fp2::new(f, 0, c)
        }
    }
}

/// A root ζ of `t² - αt + 1` in 𝔽_p or 𝔽_{p²}.
pub fn zeta_of(f: &PrimeField, alpha: u64) -> Fp2 {
    let p = f.p;
    let disc = sub_mod(mul_mod(alpha, alpha, p), 4 % p, p);
    let s = sqrt_in_fp2(f, disc);
    let half = inv_mod(2, p).unwrap();
    Fp2::from_base(f, alpha).add(s).scale(half)
}

/// Multiplicative order of a nonzero element of 𝔽_{p²} whose order divides `n`.
fn order_dividing(z: Fp2, n: u64) -> u64 {
    let mut ord = n;
    for q in prime_factors(n) {
        while ord % q == 0 && z.pow(ord / q).is_one() {
            ord /= q;
        }
    }
    ord
}

/// Rotation order of α: the even order of ζ with ζ + ζ⁻¹ = ±α and -1 ∈ ⟨ζ⟩.
pub fn rotation_order(a: Fp) -> u64 {
    let f = PrimeField::new(a.p).expect("odd prime field");
    rotation_order_in(&f, a.v)
}

pub fn rotation_order_in(f: &PrimeField, alpha: u64) -> u64 {
    let p = f.p;
    let z = zeta_of(f, alpha);
    let n = if z.b == 0 { p - 1 } else { p + 1 };
    let k = order_dividing(z, n);
    if k % 2 == 0 {
        k
    } else {
        2 * k
    }
}

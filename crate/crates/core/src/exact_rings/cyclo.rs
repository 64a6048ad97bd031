use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{int, Rational};
use super::zpoly::ZPoly;

pub fn euler_phi(mut m: u64) -> u64 {
    let mut res = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            res -= res / p;
        }
        p += 1;
    }
    if m > 1 {
        res -= res / m;
    }
    res
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Arc<ZPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<ZPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `m`-th cyclotomic polynomial in an abstract variable `t`.
pub fn cyclotomic_poly(m: u64) -> ZPoly {
    (*cyclotomic_arc(m)).clone()
}

fn cyclotomic_arc(m: u64) -> Arc<ZPoly> {
    assert!(m >= 1, "cyclotomic_poly needs m >= 1");
    if let Some(p) = cyclo_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut acc = ZPoly::from_coeffs(num);
    for d in 1..m {
        if m % d == 0 {
            acc = acc.div_exact(&cyclotomic_arc(d)).expect("cyclotomic division is exact");
        }
    }
    let arc = Arc::new(acc);
    cyclo_cache().lock().unwrap().insert(m, arc.clone());
    arc
}

/// Element of ℚ(ζ_m), stored as coordinates in the power basis `1, ζ, …, ζ^{φ(m)-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    m: u64,
    coords: Vec<Rational>,
}

impl CycloElem {
    pub fn zero(m: u64) -> Self {
        CycloElem { m, coords: vec![Rational::zero(); euler_phi(m) as usize] }
    }

    pub fn from_rational(m: u64, q: Rational) -> Self {
        let mut e = Self::zero(m);
        e.coords[0] = q;
        e
    }

    pub fn from_int(m: u64, n: i64) -> Self {
        Self::from_rational(m, int(n))
    }

    pub fn one(m: u64) -> Self {
        Self::from_int(m, 1)
    }

    /// ζ_m^k for any integer `k`.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::reduce(m, c)
    }

    pub fn zeta(m: u64) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// ζ^k + ζ^{-k}.
    pub fn lambda(m: u64, k: i64) -> Self {
        Self::zeta_pow(m, k).add(&Self::zeta_pow(m, -k))
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    fn reduce(m: u64, mut c: Vec<Rational>) -> Self {
        let phi = cyclotomic_arc(m);
        let d = phi.coeffs().len() - 1;
        let pc: Vec<Rational> = phi.coeffs().iter().map(|x| Rational::from_integer(x.clone())).collect();
        let mut i = c.len();
        while i > d {
            i -= 1;
            let t = std::mem::replace(&mut c[i], Rational::zero());
            if !t.is_zero() {
                for j in 0..d {
                    c[i - d + j] -= &t * &pc[j];
                }
            }
        }
        c.resize(d, Rational::zero());
        CycloElem { m, coords: c }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.m, o.m, "mixed cyclotomic conductors");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        CycloElem { m: self.m, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        CycloElem { m: self.m, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        CycloElem { m: self.m, coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloElem { m: self.m, coords: self.coords.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.coords.len();
        let mut c = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.m, c)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|q| q.is_zero())
    }

    /// `Some(q)` when the element lies in ℚ.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coords[1..].iter().all(|q| q.is_zero()).then(|| self.coords[0].clone())
    }

    /// Multiplicative inverse, via the multiplication-by-self matrix.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.coords.len();
        // column j = self · ζ^j
        let mut a: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n + 1]; n];
        let mut col = self.clone();
        let z = Self::zeta(self.m);
        for j in 0..n {
            for i in 0..n {
                a[i][j] = col.coords[i].clone();
            }
            col = col.mul(&z);
        }
        a[0][n] = Rational::one();
        let x = super::matrix::solve_augmented(a)?;
        Some(CycloElem { m: self.m, coords: x })
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| format!("({q})z^{i}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0[z{}]", self.m)
        } else {
            write!(f, "{}[z{}]", parts.join(" + "), self.m)
        }
    }
}

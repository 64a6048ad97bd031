use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::fold::split_smooth;
use crate::error::{domain, Result};
use crate::exact_rings::ZPoly;

/// Largest leftover content handed to the factoring routine.
pub const FACTOR_BITS: u64 = 256;

/// A prime dividing the content beyond the smooth part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualPrime {
    #[serde(with = "super::dec")]
    pub prime: BigInt,
    pub exponent: u32,
    /// `prime ≡ ±1 mod 2d`, outside the theorem's scope.
    pub exempt: bool,
}

/// `g = ±a·r·(κ−4)^b·residual`, `a` smooth and `r` the product of residual primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stripped {
    pub residual: ZPoly,
    #[serde(with = "super::dec")]
    pub a: BigInt,
    pub a_factors: Vec<(u64, u32)>,
    pub b: u32,
    pub residual_primes: Vec<ResidualPrime>,
    /// Cofactors that could not be split.
    #[serde(with = "super::dec::vec")]
    pub unfactored: Vec<BigInt>,
}

/// `(κ−3)²(κ−2)(κ²−5κ+5)`.
pub fn target_poly() -> ZPoly {
    &(&ZPoly::linear(3).pow(2) * &ZPoly::linear(2)) * &ZPoly::from_ints(&[5, -5, 1])
}

fn exempt(p: &BigInt, d: u32) -> bool {
    let r = (p % BigInt::from(2 * d)).to_u32().unwrap_or(0);
    r == 1 || r == 2 * d - 1
}

/// Divides out `(κ−4)^b` and the `2n_d`-smooth content; factors what is left.
pub fn strip_factors(g: &ZPoly, d: u32, n_d: u32) -> Result<Stripped> {
    if g.is_zero() {
        return domain("cannot strip the zero polynomial");
    }
    let (c, prim) = g.primitive();
    let (b, residual) = prim.strip_linear(4);
    let (a_factors, rest) = split_smooth(&c, 2 * n_d as u64);
    let a = a_factors.iter().fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e));
    let mut residual_primes = Vec::new();
    let mut unfactored = Vec::new();
    if !rest.is_one() {
        if rest.bits() > FACTOR_BITS {
            unfactored.push(rest);
        } else {
            let n: BigUint = rest.magnitude().clone();
            let (fac, left) = num_prime::nt_funcs::factors(n, None);
            for (p, e) in fac {
                let p = BigInt::from(p);
                residual_primes.push(ResidualPrime { exempt: exempt(&p, d), prime: p, exponent: e as u32 });
            }
            unfactored.extend(left.unwrap_or_default().into_iter().map(BigInt::from));
        }
    }
    Ok(Stripped { residual, a, a_factors, b, residual_primes, unfactored })
}

/// The verdict rule: the residual divides the target and every leftover
/// prime is exempt.
pub fn verdict_holds(s: &Stripped) -> bool {
    !s.residual.is_zero()
        && target_poly().div_exact(&s.residual).is_some()
        && s.unfactored.is_empty()
        && s.residual_primes.iter().all(|r| r.exempt)
}

/// Independent check that a strip record is a faithful factorization of `g`.
pub fn strip_consistent(g: &ZPoly, d: u32, n_d: u32, s: &Stripped) -> bool {
    let bound = 2 * n_d as u64;
    if s.a_factors.iter().any(|&(p, e)| p > bound || e == 0 || !crate::ffield::is_prime(p)) {
        return false;
    }
    if s.a_factors.windows(2).any(|w| w[0].0 >= w[1].0) {
        return false;
    }
    let a = s.a_factors.iter().fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e));
    if a != s.a {
        return false;
    }
    let mut r = BigInt::one();
    for rp in &s.residual_primes {
        let pb = rp.prime.magnitude();
        let small = rp.prime.to_u64().is_some_and(|p| p <= bound);
        if small || rp.exponent == 0 || rp.exempt != exempt(&rp.prime, d) || !num_prime::nt_funcs::is_prime(pb, None).probably() {
            return false;
        }
        r *= rp.prime.pow(rp.exponent);
    }
    for u in &s.unfactored {
        if !u.is_positive() || split_smooth(u, bound).1 != *u {
            return false;
        }
        r *= u;
    }
    if s.residual_primes.windows(2).any(|w| w[0].prime >= w[1].prime) || g.is_zero() {
        return false;
    }
    let (c, prim) = g.primitive();
    if c.abs() != &a * &r {
        return false;
    }
    let (b, residual) = prim.strip_linear(4);
    b == s.b && residual == s.residual
}

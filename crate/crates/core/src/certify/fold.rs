use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::error::{domain, Result};
use crate::exact_rings::{kpoly_xgcd, ZPoly};

/// `element = prev·(previous element) + Σ multiplier·minor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoldStep {
    pub prev: ZPoly,
    pub terms: Vec<(usize, ZPoly)>,
    pub element: ZPoly,
}

/// Splits `e = c·g` with `g` primitive and positive leading coefficient.
pub fn split_content(e: &ZPoly) -> (BigInt, ZPoly) {
    e.primitive()
}

/// Checks one step identity exactly.
pub fn verify_step(previous: Option<&ZPoly>, minors: &[ZPoly], s: &FoldStep) -> bool {
    let mut acc = match previous {
        Some(p) => &s.prev * p,
        None if s.prev.is_zero() => ZPoly::zero(),
        None => return false,
    };
    for (i, h) in &s.terms {
        let Some(m) = minors.get(*i) else { return false };
        acc = &acc + &(h * m);
    }
    acc == s.element
}

/// Primitive gcd over ℚ[κ] of the nonzero minors.
pub fn common_factor(minors: &[ZPoly]) -> Option<ZPoly> {
    let mut g: Option<crate::exact_rings::KPoly> = None;
    for m in minors.iter().filter(|m| !m.is_zero()) {
        let k = m.to_kpoly();
        g = Some(match g {
            None => k,
            Some(h) => h.gcd(&k),
        });
    }
    g.map(|k| k.content_primitive().1)
}

fn xgcd_z(a: &ZPoly, b: &ZPoly) -> Result<(ZPoly, ZPoly, ZPoly, BigInt)> {
    let x = kpoly_xgcd(&a.to_kpoly(), &b.to_kpoly())?;
    let z = |k: &crate::exact_rings::KPoly| {
        k.to_zpoly().ok_or_else(|| crate::Error::Validation(vec!["non-integral Bézout cofactor".into()]))
    };
    Ok((z(&x.h1)?, z(&x.h2)?, z(&x.g)?, x.clear))
}

fn cofactor(m: &ZPoly, g: &ZPoly) -> Result<ZPoly> {
    match m.div_exact(g) {
        Some(r) => Ok(r),
        None => domain("common factor does not divide a minor"),
    }
}

/// Result of [`fold_minors`].
#[derive(Clone, Debug)]
pub struct Folded {
    pub steps: Vec<FoldStep>,
    pub common: ZPoly,
    /// The deadline passed before the pairs ran out.
    pub timed_out: bool,
}

/// Folds minors into an element `c·G` of their ideal, `G` the common factor.
///
/// First reaches `G` by successive xgcds, then lowers `c` with xgcds of
/// cofactor pairs whose constants are merged by integer Bézout. Stops once
/// `done(c)` holds, the pairs run out or the deadline passes.
pub fn fold_minors(minors: &[ZPoly], done: impl Fn(&BigInt) -> bool, deadline: Option<Instant>) -> Result<Folded> {
    let Some(g) = common_factor(minors) else {
        return domain("all minors vanish");
    };
    let idx: Vec<usize> = (0..minors.len()).filter(|&i| !minors[i].is_zero()).collect();
    let cof: Vec<Option<ZPoly>> =
        minors.iter().map(|m| if m.is_zero() { Ok(None) } else { cofactor(m, &g).map(Some) }).collect::<Result<_>>()?;

    let first = idx[0];
    let mut steps = vec![FoldStep { prev: ZPoly::zero(), terms: vec![(first, ZPoly::one())], element: minors[first].clone() }];
    let mut cur = cof[first].clone().unwrap_or_default();
    for &k in &idx[1..] {
        if cur.degree() == Some(0) {
            break;
        }
        let (h1, h2, r, clear) = xgcd_z(&cur, cof[k].as_ref().unwrap())?;
        cur = r.scale(&clear);
        let element = &cur * &g;
        steps.push(FoldStep { prev: h1, terms: vec![(k, h2)], element });
    }
    if cur.degree() != Some(0) {
        return domain("fold did not reach the common factor");
    }
    let mut c = cur.coeff(0);
    if done(&c) {
        return Ok(Folded { steps, common: g, timed_out: false });
    }
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            if deadline.is_some_and(|t| Instant::now() > t) {
                return Ok(Folded { steps, common: g, timed_out: true });
            }
            let (h1, h2, r, clear) = xgcd_z(cof[i].as_ref().unwrap(), cof[j].as_ref().unwrap())?;
            if r.degree() != Some(0) {
                continue;
            }
            let cij = &clear * r.coeff(0);
            if (&cij % &c).is_zero() {
                continue;
            }
            let e = c.abs().extended_gcd(&cij);
            let u = if c.is_negative() { -e.x } else { e.x };
            c = e.gcd;
            let element = g.scale(&c);
            let terms = vec![(i, h1.scale(&e.y)), (j, h2.scale(&e.y))];
            steps.push(FoldStep { prev: ZPoly::from_coeffs(vec![u]), terms, element });
            if done(&c) {
                return Ok(Folded { steps, common: g, timed_out: false });
            }
        }
    }
    Ok(Folded { steps, common: g, timed_out: false })
}

/// `true` when `a` is `bound`-smooth (every prime factor at most `bound`).
pub fn is_smooth(a: &BigInt, bound: u64) -> bool {
    let (_, rest) = split_smooth(a, bound);
    rest.is_one()
}

/// `(smooth part, rest)` of `|a|` for primes `≤ bound`, with the smooth part's
/// factorization.
pub fn split_smooth(a: &BigInt, bound: u64) -> (Vec<(u64, u32)>, BigInt) {
    let mut rest = a.abs();
    let mut fac = Vec::new();
    if rest.is_zero() {
        return (fac, rest);
    }
    for p in 2..=bound {
        if !crate::ffield::is_prime(p) {
            continue;
        }
        let pb = BigInt::from(p);
        let mut e = 0;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        if e > 0 {
            fac.push((p, e));
        }
    }
    (fac, rest)
}

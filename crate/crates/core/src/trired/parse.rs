use num_traits::One;

use super::tripoly::TriPoly;
use crate::error::{Error, Result};
use crate::exact_rings::rational::{parse_rational, Rational};
use crate::exact_rings::CoeffRing;

/// Parses `c*x^a*y^b*z^c` terms joined by `+`/`-`; `k` denotes κ.
pub fn parse_tripoly<R: CoeffRing>(s: &str, ring: R) -> Result<TriPoly<R>> {
    let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = TriPoly::zero(ring.clone());
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut sign = 1i64;
    for (i, ch) in src.chars().enumerate() {
        if (ch == '+' || ch == '-') && !(i > 0 && src[..i].ends_with('^')) {
            if !cur.is_empty() {
                terms.push((sign, std::mem::take(&mut cur)));
            } else if i > 0 {
                return Err(Error::Parse(format!("dangling operator in {s:?}")));
            }
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("trailing operator in {s:?}")));
    }
    terms.push((sign, cur));
    for (sign, t) in terms {
        let mut coef = Rational::from_integer(sign.into());
        let mut exps = [0u32; 4];
        for factor in t.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {t:?}")));
            }
            let (base, pow) = match factor.split_once('^') {
                Some((b, p)) => {
                    let p: u32 = p.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (b, p)
                }
                None => (factor, 1),
            };
            match base {
                "x" => exps[0] += pow,
                "y" => exps[1] += pow,
                "z" => exps[2] += pow,
                "k" => exps[3] += pow,
                _ => {
                    let q = parse_rational(base)?;
                    let mut qp = Rational::one();
                    for _ in 0..pow {
                        qp *= &q;
                    }
                    coef *= qp;
                }
            }
        }
        let c = ring
            .from_rational(&coef)
            .ok_or_else(|| Error::Parse(format!("coefficient {coef} not representable")))?;
        let c = ring.mul(&c, &ring.pow(&ring.kappa(), exps[3] as u64));
        out.add_term((exps[0], exps[1], exps[2]), c);
    }
    Ok(out)
}

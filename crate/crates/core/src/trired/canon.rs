use super::tripoly::TriPoly;
use crate::error::{domain, Result};
use crate::exact_rings::chebyshev::chebyshev_half_table;
use crate::exact_rings::rational::binomial;
use crate::exact_rings::CoeffRing;

/// Power sums `z^c + z'^c` of the roots of `t² - xy·t + (x² + y² - κ)`, as polynomials in x, y.
fn power_sums<R: CoeffRing>(r: &R, max: u32) -> Vec<TriPoly<R>> {
    let e1 = TriPoly::mono(r.clone(), 1, 1, 0);
    let e2 = TriPoly::mono(r.clone(), 2, 0, 0)
        .add(&TriPoly::mono(r.clone(), 0, 2, 0))
        .sub(&TriPoly::constant(r.clone(), r.kappa()));
    let mut p = vec![TriPoly::constant(r.clone(), r.from_int(2))];
    if max >= 1 {
        p.push(e1.clone());
    }
    for c in 2..=max as usize {
        let next = e1.mul(&p[c - 1]).sub(&e2.mul(&p[c - 2]));
        p.push(next);
    }
    p
}

/// Canonical form f*(x, y) = ½(f(x, y, z) + f(x, y, xy - z)) on the Markoff surface.
pub fn canonical_form<R: CoeffRing>(f: &TriPoly<R>) -> Result<TriPoly<R>> {
    let r = &f.ring;
    let Some(half) = r.inv(&r.from_int(2)) else {
        return domain("canonical form needs 2 invertible");
    };
    let maxc = f.terms().keys().map(|e| e.2).max().unwrap_or(0);
    let ps = power_sums(r, maxc);
    let mut out = TriPoly::zero(r.clone());
    for ((a, b, c), v) in f.terms() {
        if *c == 0 {
            out.add_term((*a, *b, 0), v.clone());
        } else {
            let t = ps[*c as usize].shift(*a, *b, 0).scale(&r.mul(v, &half));
            out = out.add(&t);
        }
    }
    Ok(out)
}

/// True when λ ∈ Λ̂̂_n, i.e. λ = ζ + ζ⁻¹ with ζ^{2n} = 1 and λ ≠ ±2.
pub fn in_lambda_hathat<R: CoeffRing>(r: &R, lambda: &R::Elem, n: u32) -> bool {
    if n == 0 {
        return false;
    }
    let two = r.from_int(2);
    if r.is_zero(&r.sub(lambda, &two)) || r.is_zero(&r.add(lambda, &two)) {
        return false;
    }
    // U_{n-1}(λ/2) vanishes exactly on 2cos(πk/n), 0 < k < n
    let u = chebyshev_half_table(n as usize - 1).pop().unwrap();
    let mut acc = r.zero();
    for c in u.coeffs().iter().rev() {
        acc = r.add(&r.mul(&acc, lambda), &r.from_bigint(c));
    }
    r.is_zero(&acc)
}

/// The coefficient c_{λ,n}(f) for even f: c_0 when `n = 0`, `n·c_n` when
/// λ ∈ Λ̂̂_n, and 0 otherwise.
pub fn c_coeff<R: CoeffRing>(f: &TriPoly<R>, lambda: &R::Elem, n: u32) -> Result<R::Elem> {
    if !f.is_even() {
        return domain("c_coeff requires an even polynomial");
    }
    let r = &f.ring;
    if n > 0 && !in_lambda_hathat(r, lambda, n) {
        return Ok(r.zero());
    }
    let fs = canonical_form(f)?;
    let l2 = r.mul(lambda, lambda);
    // f_j(λ²): coefficient of y^{2j} evaluated at x² = λ²
    let maxj = fs.terms().keys().map(|e| e.1 / 2).max().unwrap_or(0);
    let mut fj = vec![r.zero(); maxj as usize + 1];
    for ((a, b, _), v) in fs.terms() {
        let t = r.mul(v, &r.pow(&l2, (*a / 2) as u64));
        let j = (*b / 2) as usize;
        fj[j] = r.add(&fj[j], &t);
    }
    let i = n as usize;
    if i > maxj as usize {
        return Ok(r.zero());
    }
    let k = r.kappa();
    let ci = if r.is_zero(&r.sub(&l2, &k)) {
        fj[i].clone()
    } else {
        let Some(den) = r.inv(&r.sub(&l2, &r.from_int(4))) else {
            return domain("λ² - 4 is not invertible");
        };
        let ratio = r.mul(&r.sub(&l2, &k), &den);
        let mut acc = r.zero();
        let mut rp = r.one();
        for (j, fv) in fj.iter().enumerate().skip(i) {
            let b = r.from_bigint(&binomial(2 * j as u64, (j - i) as u64));
            acc = r.add(&acc, &r.mul(&r.mul(&b, &rp), fv));
            rp = r.mul(&rp, &ratio);
        }
        acc
    };
    Ok(if n == 0 { ci } else { r.scale_int(&ci, n as i64) })
}

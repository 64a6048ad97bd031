use crate::error::{domain, Result};

use super::zpoly::ZPoly;

/// `U_k(x/2)` for `k = 0..=n`, as integer polynomials in `x`.
pub fn chebyshev_half_table(n: usize) -> Vec<ZPoly> {
    let x = ZPoly::from_ints(&[0, 1]);
    let mut t = vec![ZPoly::one()];
    if n >= 1 {
        t.push(x.clone());
    }
    for k in 1..n {
        let next = &(&x * &t[k]) - &t[k - 1];
        t.push(next);
    }
    t
}

/// The even polynomial `u_n` in `x`: `U_{n-1}(x/2)` for odd `n`, `x·U_{n-1}(x/2)` for even `n`.
/// Its roots are `2cos(mπ/n)` for `1 ≤ m ≤ n-1`, plus `0` when `n` is even.
pub fn chebyshev_u(n: usize) -> Result<ZPoly> {
    if n == 0 {
        return domain("chebyshev_u requires n >= 1");
    }
    let v = chebyshev_half_table(n - 1).pop().unwrap();
    Ok(if n % 2 == 1 { v } else { &ZPoly::from_ints(&[0, 1]) * &v })
}

/// Rewrites an even polynomial in `x` as a polynomial in `x²`.
pub fn even_to_square(p: &ZPoly) -> Option<ZPoly> {
    let c = p.coeffs();
    if c.iter().skip(1).step_by(2).any(|v| v != &num_bigint::BigInt::from(0)) {
        return None;
    }
    Some(ZPoly::from_coeffs(c.iter().step_by(2).cloned().collect()))
}

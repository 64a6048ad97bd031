use std::collections::BTreeMap;

use crate::exact_rings::CoeffRing;

/// Exponent triple `(a, b, c)` of `x^a y^b z^c`.
pub type Exp = (u32, u32, u32);

/// Polynomial in x, y, z over a coefficient ring. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct TriPoly<R: CoeffRing> {
    pub ring: R,
    terms: BTreeMap<Exp, R::Elem>,
}

impl<R: CoeffRing> PartialEq for TriPoly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl<R: CoeffRing> TriPoly<R> {
    pub fn zero(ring: R) -> Self {
        TriPoly { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::monomial(ring, c, (0, 0, 0))
    }

    pub fn monomial(ring: R, c: R::Elem, e: Exp) -> Self {
        let mut t = Self::zero(ring);
        t.add_term(e, c);
        t
    }

    /// `x^a y^b z^c` with coefficient 1.
    pub fn mono(ring: R, a: u32, b: u32, c: u32) -> Self {
        let one = ring.one();
        Self::monomial(ring, one, (a, b, c))
    }

    pub fn x(ring: R) -> Self {
        Self::mono(ring, 1, 0, 0)
    }
    pub fn y(ring: R) -> Self {
        Self::mono(ring, 0, 1, 0)
    }
    pub fn z(ring: R) -> Self {
        Self::mono(ring, 0, 0, 1)
    }

    /// Builds `Σ c_i(κ) x^{2i}`-style univariate polynomials in x.
    pub fn from_x_coeffs(ring: R, c: &[R::Elem]) -> Self {
        let mut t = Self::zero(ring);
        for (i, v) in c.iter().enumerate() {
            t.add_term((i as u32, 0, 0), v.clone());
        }
        t
    }

    pub fn terms(&self) -> &BTreeMap<Exp, R::Elem> {
        &self.terms
    }

    pub fn coeff(&self, e: Exp) -> R::Elem {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exp, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = self.ring.add(v, &c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let r = &self.ring;
        TriPoly { ring: r.clone(), terms: self.terms.iter().map(|(e, c)| (*e, r.neg(c))).collect() }
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone());
        for (e, c) in &self.terms {
            out.add_term(*e, self.ring.mul(c, k));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.ring.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term((e1.0 + e2.0, e1.1 + e2.1, e1.2 + e2.2), self.ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.ring.clone(), self.ring.one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by `x^a y^b z^c`.
    pub fn shift(&self, a: u32, b: u32, c: u32) -> Self {
        TriPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| ((e.0 + a, e.1 + b, e.2 + c), v.clone())).collect(),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0 + e.1 + e.2).max()
    }

    /// True when every exponent is even.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|e| e.0 % 2 == 0 && e.1 % 2 == 0 && e.2 % 2 == 0)
    }

    pub fn eval(&self, x: &R::Elem, y: &R::Elem, z: &R::Elem) -> R::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for ((a, b, c), v) in &self.terms {
            let t = r.mul(
                &r.mul(&r.pow(x, *a as u64), &r.pow(y, *b as u64)),
                &r.mul(&r.pow(z, *c as u64), v),
            );
            acc = r.add(&acc, &t);
        }
        acc
    }

    /// Maps coefficients into another ring.
    pub fn map_ring<S: CoeffRing>(&self, s: S, f: impl Fn(&R::Elem) -> S::Elem) -> TriPoly<S> {
        let mut out = TriPoly::zero(s);
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Applies the coordinate permutation `(x, y, z) ↦ (σ0, σ1, σ2)` to exponents.
    pub fn permute(&self, perm: [usize; 3]) -> Self {
        let mut out = Self::zero(self.ring.clone());
        for (e, c) in &self.terms {
            let src = [e.0, e.1, e.2];
            let mut dst = [0u32; 3];
            for i in 0..3 {
                dst[perm[i]] = src[i];
            }
            out.add_term((dst[0], dst[1], dst[2]), c.clone());
        }
        out
    }
}

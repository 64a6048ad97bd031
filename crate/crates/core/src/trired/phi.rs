use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Signed};

use super::tripoly::{Exp, TriPoly};
use crate::exact_rings::ring::QKappa;
use crate::error::{check_deadline, Result};
use crate::exact_rings::{CoeffRing, KPoly};

/// Dense univariate polynomial in x; index `t` is the coefficient of `x^t`.
pub type UPoly<R> = Vec<<R as CoeffRing>::Elem>;

/// Output of Φ_x: a polynomial in x plus a polynomial in y, z whose monomials
/// all have y-degree at least their z-degree.
#[derive(Clone, Debug)]
pub struct PhiXResult<R: CoeffRing> {
    pub xpart: UPoly<R>,
    pub yzpart: BTreeMap<(u32, u32), R::Elem>,
}

impl<R: CoeffRing> PartialEq for PhiXResult<R> {
    fn eq(&self, o: &Self) -> bool {
        self.xpart == o.xpart && self.yzpart == o.yzpart
    }
}

impl<R: CoeffRing> PhiXResult<R> {
    pub fn zero() -> Self {
        PhiXResult { xpart: Vec::new(), yzpart: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.xpart.is_empty() && self.yzpart.is_empty()
    }

    fn add_scaled(&mut self, r: &R, o: &PhiXResult<R>, k: &R::Elem) {
        upoly_add_scaled(r, &mut self.xpart, &o.xpart, k);
        for (e, c) in &o.yzpart {
            let t = r.mul(c, k);
            let v = match self.yzpart.get(e) {
                Some(old) => r.add(old, &t),
                None => t,
            };
            if r.is_zero(&v) {
                self.yzpart.remove(e);
            } else {
                self.yzpart.insert(*e, v);
            }
        }
    }

    pub fn to_tripoly(&self, r: &R) -> TriPoly<R> {
        let mut t = TriPoly::from_x_coeffs(r.clone(), &self.xpart);
        for ((b, c), v) in &self.yzpart {
            t.add_term((0, *b, *c), v.clone());
        }
        t
    }
}

pub(crate) fn upoly_trim<R: CoeffRing>(r: &R, v: &mut UPoly<R>) {
    while v.last().is_some_and(|x| r.is_zero(x)) {
        v.pop();
    }
}

pub(crate) fn upoly_add_scaled<R: CoeffRing>(r: &R, acc: &mut UPoly<R>, src: &[R::Elem], k: &R::Elem) {
    if src.len() > acc.len() {
        acc.resize(src.len(), r.zero());
    }
    for (i, s) in src.iter().enumerate() {
        if !r.is_zero(s) {
            acc[i] = r.add(&acc[i], &r.mul(s, k));
        }
    }
    upoly_trim(r, acc);
}

fn sort3(e: Exp) -> Exp {
    let mut v = [e.0, e.1, e.2];
    v.sort_unstable_by(|a, b| b.cmp(a));
    (v[0], v[1], v[2])
}

/// Memoizing reducer for Φ and Φ_x over a fixed coefficient ring.
pub struct Reducer<R: CoeffRing> {
    pub ring: R,
    phi_memo: HashMap<Exp, Arc<UPoly<R>>>,
    phix_memo: HashMap<Exp, Arc<PhiXResult<R>>>,
}

impl<R: CoeffRing> Reducer<R> {
    pub fn new(ring: R) -> Self {
        Reducer { ring, phi_memo: HashMap::new(), phix_memo: HashMap::new() }
    }

    /// Φ of a single monomial.
    pub fn phi_monomial(&mut self, e: Exp) -> Arc<UPoly<R>> {
        let key = sort3(e);
        if let Some(v) = self.phi_memo.get(&key) {
            return v.clone();
        }
        let r = self.ring.clone();
        let (a, b, c) = key;
        let out = if c >= 1 {
            let mut acc = Vec::new();
            let one = r.one();
            let mk = r.neg(&r.kappa());
            for (sub, k) in [
                ((a + 1, b - 1, c - 1), &one),
                ((a - 1, b + 1, c - 1), &one),
                ((a - 1, b - 1, c + 1), &one),
                ((a - 1, b - 1, c - 1), &mk),
            ] {
                let s = self.phi_monomial(sub);
                upoly_add_scaled(&r, &mut acc, &s, k);
            }
            acc
        } else if b >= 1 {
            let s = self.phi_monomial((a - 1, b - 1, 1));
            let mut acc = Vec::new();
            upoly_add_scaled(&r, &mut acc, &s, &r.from_int(2));
            acc
        } else {
            let mut v = vec![r.zero(); a as usize + 1];
            v[a as usize] = r.one();
            upoly_trim(&r, &mut v);
            v
        };
        let arc = Arc::new(out);
        self.phi_memo.insert(key, arc.clone());
        arc
    }

    pub fn phi(&mut self, f: &TriPoly<R>) -> UPoly<R> {
        let mut acc = Vec::new();
        for (e, c) in f.terms() {
            let s = self.phi_monomial(*e);
            let r = self.ring.clone();
            upoly_add_scaled(&r, &mut acc, &s, c);
        }
        acc
    }

    /// Φ_x of a single monomial.
    pub fn phi_x_monomial(&mut self, e: Exp) -> Arc<PhiXResult<R>> {
        let key = (e.0, e.1.max(e.2), e.1.min(e.2));
        if let Some(v) = self.phix_memo.get(&key) {
            return v.clone();
        }
        let r = self.ring.clone();
        let (a, b, c) = key;
        let mut out = PhiXResult::zero();
        if a == 0 {
            if b == 0 {
                out.xpart = vec![r.one()];
                upoly_trim(&r, &mut out.xpart);
            } else {
                out.yzpart.insert((b, c), r.one());
            }
        } else if c >= 1 {
            let one = r.one();
            let mk = r.neg(&r.kappa());
            for (sub, k) in [
                ((a + 1, b - 1, c - 1), &one),
                ((a - 1, b + 1, c - 1), &one),
                ((a - 1, b - 1, c + 1), &one),
                ((a - 1, b - 1, c - 1), &mk),
            ] {
                let s = self.phi_x_monomial(sub);
                out.add_scaled(&r, &s, k);
            }
        } else if b >= 1 {
            let s = self.phi_x_monomial((a - 1, b - 1, 1));
            out.add_scaled(&r, &s, &r.from_int(2));
        } else {
            let mut v = vec![r.zero(); a as usize + 1];
            v[a as usize] = r.one();
            upoly_trim(&r, &mut v);
            out.xpart = v;
        }
        let arc = Arc::new(out);
        self.phix_memo.insert(key, arc.clone());
        arc
    }

    pub fn phi_x(&mut self, f: &TriPoly<R>) -> PhiXResult<R> {
        let mut acc = PhiXResult::zero();
        for (e, c) in f.terms() {
            let s = self.phi_x_monomial(*e);
            let r = self.ring.clone();
            acc.add_scaled(&r, &s, c);
        }
        acc
    }

    pub fn memo_len(&self) -> usize {
        self.phi_memo.len()
    }
}

/// Φ(f): the univariate reduction preserving sums over Γ-invariant sets.
pub fn phi<R: CoeffRing>(f: &TriPoly<R>) -> UPoly<R> {
    Reducer::new(f.ring.clone()).phi(f)
}

/// Φ_x(f): the reduction preserving sums over first-coordinate orbits.
pub fn phi_x<R: CoeffRing>(f: &TriPoly<R>) -> PhiXResult<R> {
    Reducer::new(f.ring.clone()).phi_x(f)
}

/// Table of Φ(x^{2m} y^{2n}) over ℚ[κ].
#[derive(Clone, Debug, PartialEq)]
pub struct PhiTable {
    pub m_max: u32,
    pub n_max: u32,
    pub entries: BTreeMap<(u32, u32), Vec<KPoly>>,
}

impl PhiTable {
    pub fn get(&self, m: u32, n: u32) -> Option<&Vec<KPoly>> {
        self.entries.get(&(m, n))
    }

    /// Φ of an even z-free polynomial from table entries only; `None` if some
    /// monomial is outside the table.
    pub fn phi_even(&self, f: &TriPoly<QKappa>) -> Option<Vec<KPoly>> {
        let r = QKappa;
        let mut acc = Vec::new();
        for ((a, b, c), k) in f.terms() {
            if a % 2 != 0 || b % 2 != 0 || *c != 0 {
                return None;
            }
            let e = self.get(a / 2, b / 2)?;
            upoly_add_scaled(&r, &mut acc, e, k);
        }
        Some(acc)
    }
}

/// Precomputes Φ(x^{2m} y^{2n}) for `m ≤ m_max`, `n ≤ n_max` with symbolic κ.
pub fn cache_build(m_max: u32, n_max: u32) -> PhiTable {
    cache_build_until(m_max, n_max, None).expect("no deadline")
}

/// As [`cache_build`], giving up with a resource error once `deadline` passes.
pub fn cache_build_until(m_max: u32, n_max: u32, deadline: Option<Instant>) -> Result<PhiTable> {
    let mut red = Reducer::new(QKappa);
    let mut entries = BTreeMap::new();
    for m in 0..=m_max {
        for n in 0..=n_max {
            check_deadline(deadline, "building the Φ table")?;
            entries.insert((m, n), (*red.phi_monomial((2 * m, 2 * n, 0))).clone());
        }
    }
    Ok(PhiTable { m_max, n_max, entries })
}

/// Formats a univariate polynomial in `var` whose coefficients lie in ℚ[κ].
pub fn fmt_upoly(c: &[KPoly], var: &str) -> String {
    let mut out = String::new();
    for (t, k) in c.iter().enumerate().rev() {
        if k.is_zero() {
            continue;
        }
        let mono = match t {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{t}"),
        };
        let (neg, body) = if k.is_constant() {
            let q = k.lead();
            let a = q.abs();
            let s = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                mono.clone()
            } else {
                format!("{a}*{mono}")
            };
            (q.is_negative(), s)
        } else {
            let s = if mono.is_empty() { format!("({k})") } else { format!("({k})*{mono}") };
            (false, s)
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

//! Pairs in SL₂(𝔽_p), trace triples, generation tests and Nielsen orbits.

use std::collections::{BTreeMap, HashMap, HashSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::ffield::{add_mod, is_prime, mul_mod, sub_mod};

/// Largest p for which `generates` runs a closure computation by default.
pub const GENERATES_BOUND: u64 = 13;
/// Largest p for which `nielsen_orbits` runs by default.
pub const ORBIT_BOUND: u64 = 11;

/// A matrix `[[a, b], [c, d]]` with `ad − bc = 1` over 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Mat {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl Sl2Mat {
    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let r = |v: i64| v.rem_euclid(p as i64) as u64;
        let m = Sl2Mat { p, a: r(a), b: r(b), c: r(c), d: r(d) };
        if m.det() != 1 % p {
            return domain(format!("determinant of [[{a}, {b}], [{c}, {d}]] is not 1 mod {p}"));
        }
        Ok(m)
    }

    pub fn identity(p: u64) -> Self {
        Sl2Mat { p, a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn det(&self) -> u64 {
        sub_mod(mul_mod(self.a, self.d, self.p), mul_mod(self.b, self.c, self.p), self.p)
    }

    pub fn trace(&self) -> u64 {
        add_mod(self.a, self.d, self.p)
    }

    pub fn mul(&self, o: &Sl2Mat) -> Sl2Mat {
        let p = self.p;
        let f = |x: u64, y: u64, z: u64, w: u64| add_mod(mul_mod(x, y, p), mul_mod(z, w, p), p);
        Sl2Mat {
            p,
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    pub fn inv(&self) -> Sl2Mat {
        let p = self.p;
        Sl2Mat { p, a: self.d, b: sub_mod(0, self.b, p), c: sub_mod(0, self.c, p), d: self.a }
    }

    fn pack(&self) -> usize {
        let p = self.p as usize;
        ((self.a as usize * p + self.b as usize) * p + self.c as usize) * p + self.d as usize
    }
}

/// An ordered pair `(A, B)` of SL₂(𝔽_p) matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sl2Pair {
    pub a: Sl2Mat,
    pub b: Sl2Mat,
}

impl Sl2Pair {
    pub fn commutator(&self) -> Sl2Mat {
        self.a.mul(&self.b).mul(&self.a.inv()).mul(&self.b.inv())
    }
}

/// `(tr A, tr B, tr AB)`.
pub fn trace_triple(pr: &Sl2Pair) -> (u64, u64, u64) {
    (pr.a.trace(), pr.b.trace(), pr.a.mul(&pr.b).trace())
}

/// Order of the subgroup generated by `A` and `B`, by closure.
pub fn subgroup_order(pr: &Sl2Pair) -> usize {
    let p = pr.a.p;
    let mut seen = HashSet::new();
    let mut stack = vec![Sl2Mat::identity(p)];
    seen.insert(Sl2Mat::identity(p));
    while let Some(g) = stack.pop() {
        for h in [g.mul(&pr.a), g.mul(&pr.b)] {
            if seen.insert(h) {
                stack.push(h);
            }
        }
    }
    seen.len()
}

fn sl2_order(p: u64) -> usize {
    (p * (p * p - 1)) as usize
}

/// True iff `{A, B}` generates SL₂(𝔽_p). Uses the default bound.
pub fn generates(pr: &Sl2Pair) -> Result<bool> {
    generates_bounded(pr, GENERATES_BOUND)
}

pub fn generates_bounded(pr: &Sl2Pair, bound: u64) -> Result<bool> {
    let p = pr.a.p;
    if p > bound {
        return Err(Error::Resource(format!("closure over SL2(F_{p}) exceeds bound {bound}")));
    }
    Ok(subgroup_order(pr) == sl2_order(p))
}

/// SL₂(𝔽_p) with dense multiplication and inversion tables.
pub struct Sl2Group {
    pub p: u64,
    pub elems: Vec<Sl2Mat>,
    index: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl Sl2Group {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return domain(format!("{p} is not an odd prime"));
        }
        let mut elems = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        let m = Sl2Mat { p, a, b, c, d };
                        if m.det() == 1 {
                            elems.push(m);
                        }
                    }
                }
            }
        }
        let mut index = vec![u32::MAX; (p * p * p * p) as usize];
        for (i, m) in elems.iter().enumerate() {
            index[m.pack()] = i as u32;
        }
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = index[elems[i].mul(&elems[j]).pack()];
            }
        }
        let inv = elems.iter().map(|m| index[m.inv().pack()]).collect();
        Ok(Sl2Group { p, elems, index, mul, inv })
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, m: &Sl2Mat) -> usize {
        self.index[m.pack()] as usize
    }

    fn m(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.elems.len() + j] as usize
    }

    fn generates_idx(&self, a: usize, b: usize) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        let id = self.index_of(&Sl2Mat::identity(self.p));
        seen[id] = true;
        let mut stack = vec![id];
        let mut count = 1;
        while let Some(g) = stack.pop() {
            for h in [self.m(g, a), self.m(g, b)] {
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        count == n
    }
}

/// Nielsen orbits of generating pairs with `tr[A, B] = κ − 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NielsenReport {
    pub p: u64,
    pub kappa: u64,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
}

/// Union-find over all pairs under the three Nielsen moves; a pair
/// `(A, B)` has index `idx(A)·|G| + idx(B)`.
fn nielsen_components(g: &Sl2Group) -> UnionFind<u32> {
    let n = g.order();
    let mut uf = UnionFind::<u32>::new(n * n);
    for a in 0..n {
        let ai = g.inv[a] as usize;
        for b in 0..n {
            let here = (a * n + b) as u32;
            uf.union(here, (a * n + g.m(a, b)) as u32);
            uf.union(here, (b * n + a) as u32);
            uf.union(here, (ai * n + b) as u32);
        }
    }
    uf
}

fn census_group(p: u64, bound: u64) -> Result<Sl2Group> {
    if p > bound {
        return Err(Error::Resource(format!("Nielsen census over SL2(F_{p}) exceeds bound {bound}")));
    }
    Sl2Group::new(p)
}

/// Nielsen orbits for every κ ≠ 4 at once, keyed by κ.
pub fn nielsen_census(p: u64, bound: u64) -> Result<BTreeMap<u64, NielsenReport>> {
    let g = census_group(p, bound)?;
    let n = g.order();
    let uf = nielsen_components(&g);
    let mut comps: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for idx in 0..n * n {
        let r = uf.find(idx as u32);
        comps.entry(r).or_insert((idx, 0)).1 += 1;
    }
    let mut out: BTreeMap<u64, NielsenReport> = BTreeMap::new();
    for k in 0..p {
        if k != 4 % p {
            out.insert(k, NielsenReport { p, kappa: k, orbit_count: 0, orbit_sizes: Vec::new() });
        }
    }
    for (rep, size) in comps.values() {
        let (a, b) = (rep / n, rep % n);
        if !g.generates_idx(a, b) {
            continue;
        }
        let pr = Sl2Pair { a: g.elems[a], b: g.elems[b] };
        let kappa = add_mod(pr.commutator().trace(), 2, p);
        let e = out.get_mut(&kappa).expect("generating pairs have κ ≠ 4");
        e.orbit_count += 1;
        e.orbit_sizes.push(*size);
    }
    for e in out.values_mut() {
        e.orbit_sizes.sort_unstable();
    }
    Ok(out)
}

/// Trace triples of all generating pairs, i.e. the essential Markoff triples.
pub fn essential_trace_triples(p: u64, bound: u64) -> Result<HashSet<[u64; 3]>> {
    let g = census_group(p, bound)?;
    let n = g.order();
    let uf = nielsen_components(&g);
    let mut gen: HashMap<u32, bool> = HashMap::new();
    let mut out = HashSet::new();
    for a in 0..n {
        for b in 0..n {
            let r = uf.find((a * n + b) as u32);
            let ok = *gen.entry(r).or_insert_with(|| g.generates_idx(a, b));
            if ok {
                let t = trace_triple(&Sl2Pair { a: g.elems[a], b: g.elems[b] });
                out.insert([t.0, t.1, t.2]);
            }
        }
    }
    Ok(out)
}

/// Number and sizes of Nielsen orbits of generating pairs with `tr[A, B] = κ − 2`.
pub fn nielsen_orbits(p: u64, kappa: i64) -> Result<NielsenReport> {
    let k = kappa.rem_euclid(p as i64) as u64;
    if k == 4 % p {
        return domain("κ = 4 is excluded");
    }
    let mut all = nielsen_census(p, ORBIT_BOUND)?;
    Ok(all.remove(&k).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_pair() {
        let a = Sl2Mat::new(5, 1, 1, 0, 1).unwrap();
        let b = Sl2Mat::new(5, 1, 0, 1, 1).unwrap();
        let pr = Sl2Pair { a, b };
        assert_eq!(trace_triple(&pr), (2, 2, 3));
        assert_eq!(subgroup_order(&pr), 120);
        assert!(generates(&pr).unwrap());
        let id = Sl2Mat::identity(5);
        let pr = Sl2Pair { a: id, b: id };
        assert_eq!(trace_triple(&pr), (2, 2, 2));
        assert!(!generates(&pr).unwrap());
    }

    #[test]
    fn bound_enforced() {
        let id = Sl2Mat::identity(17);
        assert!(matches!(generates(&Sl2Pair { a: id, b: id }), Err(Error::Resource(_))));
        assert!(matches!(nielsen_orbits(13, 0), Err(Error::Resource(_))));
    }

    #[test]
    fn group_order() {
        assert_eq!(Sl2Group::new(5).unwrap().order(), 120);
        assert_eq!(Sl2Group::new(7).unwrap().order(), 336);
    }
}

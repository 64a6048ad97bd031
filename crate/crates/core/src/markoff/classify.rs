use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{Coords, MarkoffTriple, Surface};
use crate::ffield::{add_mod, inv_mod, mul_mod, sqrt_raw, sub_mod};

/// Nonessential categories of Markoff triples over a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    C1,
    C2,
    C3,
    C4,
    C5a,
    C5b,
}

impl Category {
    pub fn tag(&self) -> &'static str {
        match self {
            Category::C1 => "1",
            Category::C2 => "2",
            Category::C3 => "3",
            Category::C4 => "4",
            Category::C5a => "5a",
            Category::C5b => "5b",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Category {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// `(φ, φ̄) = (½(1 + √5), ½(1 − √5))` with √5 the smaller root, if 5 is a square.
pub fn golden_roots(p: u64) -> Option<(u64, u64)> {
    let s = sqrt_raw(5, p)?;
    let half = inv_mod(2, p)?;
    Some((mul_mod(add_mod(1, s, p), half, p), mul_mod(sub_mod(1, s, p), half, p)))
}

/// The listed nonessential triples for this κ, before normalization. The
/// φ-categories are omitted at p = 5, where √5 = 0.
pub fn exceptional_triples(s: &Surface) -> Vec<(Category, Coords)> {
    let p = s.p;
    let k = s.kappa;
    let m1 = p - 1;
    let mut out = Vec::new();
    if let Some(r) = sqrt_raw(k, p) {
        out.push((Category::C1, [r, 0, 0]));
    }
    if k == 2 % p {
        out.push((Category::C2, [1, 1, 0]));
        out.push((Category::C2, [1, 1, 1]));
    }
    let golden = golden_roots(p).filter(|_| p != 5);
    if let Some((f, g)) = golden {
        for (cat, phi) in [(Category::C3, f), (Category::C4, g)] {
            if k == add_mod(2, phi, p) {
                out.push((cat, [phi, phi, phi]));
                out.push((cat, [phi, phi, 1]));
                out.push((cat, [phi, 0, 1]));
            }
        }
    }
    if k == 3 % p {
        if let Some(r2) = sqrt_raw(2, p) {
            out.push((Category::C5a, [r2, 0, 1]));
            out.push((Category::C5a, [r2, r2, 1]));
        }
        if let Some((f, g)) = golden {
            out.push((Category::C5b, [f, g, 0]));
            out.push((Category::C5b, [f, g, m1]));
            out.push((Category::C5b, [f, 1, 1]));
            out.push((Category::C5b, [g, 1, 1]));
        }
    }
    out
}

/// All images of `c` under coordinate permutations and double sign changes.
pub(crate) fn normal_variants(s: &Surface, c: Coords) -> Vec<Coords> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    const SIGNS: [[bool; 3]; 4] = [[false; 3], [true, true, false], [true, false, true], [false, true, true]];
    let mut out = Vec::with_capacity(24);
    for perm in PERMS {
        for sg in SIGNS {
            let mut v = [0; 3];
            for i in 0..3 {
                let e = c[perm[i]];
                v[i] = if sg[i] { s.neg(e) } else { e };
            }
            out.push(v);
        }
    }
    out
}

/// Lookup table from every normalized variant of a listed triple to its category.
pub(crate) fn category_table(s: &Surface) -> HashMap<Coords, Category> {
    let mut table = HashMap::new();
    for (cat, c) in exceptional_triples(s) {
        debug_assert!(s.contains(c));
        for v in normal_variants(s, c) {
            table.entry(v).or_insert(cat);
        }
    }
    table
}

/// Category of a nonessential triple, or `None` when the triple is essential.
pub fn classify_nonessential(t: &MarkoffTriple) -> Option<Category> {
    let s = Surface { p: t.p, kappa: t.kappa };
    category_table(&s).get(&t.coords()).copied()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_triples_are_markoff() {
        for p in [5u64, 7, 11, 19, 29, 31, 41, 59, 61, 71] {
            for k in 0..p {
                let s = Surface { p, kappa: k };
                for (_, c) in exceptional_triples(&s) {
                    assert!(s.contains(c), "p={p} k={k} {c:?}");
                }
            }
        }
    }

    #[test]
    fn examples() {
        let t = MarkoffTriple::new(11, 5, 4, 0, 0).unwrap();
        assert_eq!(classify_nonessential(&t), Some(Category::C1));
        let t = MarkoffTriple::new(11, 2, 0, 1, 1).unwrap();
        assert_eq!(classify_nonessential(&t), Some(Category::C2));
        let t = MarkoffTriple::new(11, 2, 10, 10, 1).unwrap();
        assert_eq!(classify_nonessential(&t), Some(Category::C2));
    }
}

//! Markoff triples over 𝔽_p, the Γ and Γ_x actions and orbit decompositions.

mod classify;
mod orbits;
mod param;
mod pperp;

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{domain, Result};
use crate::ffield::{add_mod, inv_mod, is_prime, mul_mod, sqrt_raw, sub_mod};

pub use classify::{classify_nonessential, exceptional_triples, golden_roots, Category};
pub use orbits::{decompose, enumerate_orbits, orbit_report, verify_main1, Main1Report, OrbitEntry, OrbitReport};
pub use param::{first_coord_parameterize, FirstCoordParam, ParamKind};
pub use pperp::{orbit_span, pperp_check, predicted_span, span_vector_m, span_vector_x, span_vector_y_m, PperpReport};

/// Coordinates `[x, y, z]` as residues in `0..p`.
pub type Coords = [u64; 3];

/// A solution of `x² + y² + z² = xyz + κ` over 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MarkoffTriple {
    pub p: u64,
    pub kappa: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl MarkoffTriple {
    /// Reduces the inputs mod p and checks the Markoff equation.
    pub fn new(p: u64, kappa: i64, x: i64, y: i64, z: i64) -> Result<Self> {
        let s = Surface::new(p, kappa)?;
        let c = [s.reduce(x), s.reduce(y), s.reduce(z)];
        if !s.contains(c) {
            return domain(format!("({x}, {y}, {z}) is not a Markoff triple mod {p} with κ = {kappa}"));
        }
        Ok(s.triple(c))
    }

    pub fn coords(&self) -> Coords {
        [self.x, self.y, self.z]
    }
}

/// Which coordinate a Vieta involution replaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Generator sets for orbit computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generators {
    /// The three Vieta involutions.
    VietaOnly,
    /// Γ: Vieta involutions, coordinate permutations and double sign changes.
    Full,
    /// Γ_x: `τ_x`, `σ_y` and `(x, -y, -z)`.
    FirstCoord,
}

/// `(yz − x, y, z)`, `(x, xz − y, z)` or `(x, y, xy − z)`.
pub fn vieta_move(t: &MarkoffTriple, axis: Axis) -> MarkoffTriple {
    let s = Surface { p: t.p, kappa: t.kappa };
    s.triple(s.vieta(t.coords(), axis))
}

/// BFS closure of a single triple under the chosen generators.
pub fn gamma_orbit(t: &MarkoffTriple, gens: Generators) -> BTreeSet<Coords> {
    let s = Surface { p: t.p, kappa: t.kappa };
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.coords());
    queue.push_back(t.coords());
    while let Some(c) = queue.pop_front() {
        for n in s.neighbors(c, gens) {
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}

/// The affine surface `x² + y² + z² = xyz + κ` over 𝔽_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Surface {
    pub p: u64,
    pub kappa: u64,
}

impl Surface {
    pub fn new(p: u64, kappa: i64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return domain(format!("{p} is not an odd prime"));
        }
        Ok(Surface { p, kappa: kappa.rem_euclid(p as i64) as u64 })
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn triple(&self, c: Coords) -> MarkoffTriple {
        MarkoffTriple { p: self.p, kappa: self.kappa, x: c[0], y: c[1], z: c[2] }
    }

    pub fn contains(&self, c: Coords) -> bool {
        let p = self.p;
        let sq = |v: u64| mul_mod(v, v, p);
        let lhs = add_mod(add_mod(sq(c[0]), sq(c[1]), p), sq(c[2]), p);
        let rhs = add_mod(mul_mod(mul_mod(c[0], c[1], p), c[2], p), self.kappa, p);
        lhs == rhs
    }

    pub fn neg(&self, v: u64) -> u64 {
        sub_mod(0, v, self.p)
    }

    pub fn vieta(&self, c: Coords, axis: Axis) -> Coords {
        let p = self.p;
        let [x, y, z] = c;
        match axis {
            Axis::X => [sub_mod(mul_mod(y, z, p), x, p), y, z],
            Axis::Y => [x, sub_mod(mul_mod(x, z, p), y, p), z],
            Axis::Z => [x, y, sub_mod(mul_mod(x, y, p), z, p)],
        }
    }

    /// Images of `c` under each generator of the set.
    pub fn neighbors(&self, c: Coords, gens: Generators) -> Vec<Coords> {
        let [x, y, z] = c;
        match gens {
            Generators::VietaOnly => {
                vec![self.vieta(c, Axis::X), self.vieta(c, Axis::Y), self.vieta(c, Axis::Z)]
            }
            Generators::Full => vec![
                self.vieta(c, Axis::X),
                self.vieta(c, Axis::Y),
                self.vieta(c, Axis::Z),
                [y, x, z],
                [x, z, y],
                [self.neg(x), self.neg(y), z],
                [x, self.neg(y), self.neg(z)],
            ],
            Generators::FirstCoord => {
                vec![[x, z, y], self.vieta(c, Axis::Y), [x, self.neg(y), self.neg(z)]]
            }
        }
    }

    /// All points of the surface in lexicographic order.
    pub fn points(&self) -> Vec<Coords> {
        let p = self.p;
        let half = inv_mod(2, p).unwrap();
        let roots: Vec<Option<u64>> = (0..p).map(|v| sqrt_raw(v, p)).collect();
        let mut out = Vec::new();
        for x in 0..p {
            for y in 0..p {
                let xy = mul_mod(x, y, p);
                let c = sub_mod(add_mod(mul_mod(x, x, p), mul_mod(y, y, p), p), self.kappa, p);
                let disc = sub_mod(mul_mod(xy, xy, p), mul_mod(4, c, p), p);
                if let Some(s) = roots[disc as usize] {
                    let z1 = mul_mod(add_mod(xy, s, p), half, p);
                    let z2 = mul_mod(sub_mod(xy, s, p), half, p);
                    if z1 == z2 {
                        out.push([x, y, z1]);
                    } else {
                        out.push([x, y, z1.min(z2)]);
                        out.push([x, y, z1.max(z2)]);
                    }
                }
            }
        }
        out
    }
}

/// Dense or hashed lookup from coordinates to point indices.
pub(crate) struct PointIndex {
    p: u64,
    dense: Vec<u32>,
    sparse: HashMap<Coords, u32>,
}

impl PointIndex {
    const DENSE_LIMIT: u64 = 400;

    pub(crate) fn new(p: u64, pts: &[Coords]) -> Self {
        let mut idx = PointIndex { p, dense: Vec::new(), sparse: HashMap::new() };
        if p <= Self::DENSE_LIMIT {
            idx.dense = vec![u32::MAX; (p * p * p) as usize];
            for (i, c) in pts.iter().enumerate() {
                let k = idx.key(*c);
                idx.dense[k] = i as u32;
            }
        } else {
            idx.sparse = pts.iter().enumerate().map(|(i, c)| (*c, i as u32)).collect();
        }
        idx
    }

    fn key(&self, c: Coords) -> usize {
        ((c[0] * self.p + c[1]) * self.p + c[2]) as usize
    }

    pub(crate) fn get(&self, c: Coords) -> Option<usize> {
        if self.dense.is_empty() {
            self.sparse.get(&c).map(|&i| i as usize)
        } else {
            let v = self.dense[self.key(c)];
            (v != u32::MAX).then_some(v as usize)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vieta_examples() {
        let t = MarkoffTriple::new(7, 0, 3, 3, 3).unwrap();
        let u = vieta_move(&t, Axis::X);
        assert_eq!(u.coords(), [6, 3, 3]);
        assert_eq!(vieta_move(&u, Axis::X), t);
        let o = MarkoffTriple::new(7, 0, 0, 0, 0).unwrap();
        assert_eq!(vieta_move(&o, Axis::Z), o);
    }

    #[test]
    fn rejects_off_surface() {
        assert!(MarkoffTriple::new(7, 0, 1, 0, 0).is_err());
        assert!(Surface::new(9, 0).is_err());
    }

    #[test]
    fn points_lie_on_surface() {
        let s = Surface::new(11, 3).unwrap();
        let pts = s.points();
        assert!(pts.iter().all(|c| s.contains(*c)));
        let brute = (0..11u64 * 11 * 11)
            .map(|i| [i / 121, (i / 11) % 11, i % 11])
            .filter(|c| s.contains(*c))
            .count();
        assert_eq!(pts.len(), brute);
    }
}

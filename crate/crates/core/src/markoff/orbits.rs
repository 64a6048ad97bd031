use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::classify::{category_table, golden_roots, Category};
use super::{Coords, Generators, PointIndex, Surface};
use crate::error::{domain, Result};
use crate::ffield::{add_mod, sqrt_raw};

/// Decomposes the surface into orbits of the chosen generators. Orbits are
/// sorted by their lexicographically least member, and members are sorted.
pub fn enumerate_orbits(p: u64, kappa: i64, gens: Generators) -> Result<Vec<Vec<Coords>>> {
    let s = Surface::new(p, kappa)?;
    if s.kappa == 4 % p {
        return domain("κ = 4 is excluded");
    }
    Ok(decompose(&s, gens))
}

pub fn decompose(s: &Surface, gens: Generators) -> Vec<Vec<Coords>> {
    let pts = s.points();
    let idx = PointIndex::new(s.p, &pts);
    let mut uf = UnionFind::<u32>::new(pts.len());
    for (i, c) in pts.iter().enumerate() {
        for n in s.neighbors(*c, gens) {
            let j = idx.get(n).expect("generator images stay on the surface");
            uf.union(i as u32, j as u32);
        }
    }
    let mut groups: BTreeMap<u32, Vec<Coords>> = BTreeMap::new();
    for (i, c) in pts.iter().enumerate() {
        groups.entry(uf.find(i as u32)).or_default().push(*c);
    }
    let mut out: Vec<Vec<Coords>> = groups.into_values().collect();
    out.sort_by_key(|o| o[0]);
    out
}

/// One orbit in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitEntry {
    pub rep: Coords,
    pub size: usize,
    pub essential: bool,
    pub category: Option<Category>,
}

/// Orbit decomposition with first-coordinate counts `c_𝒪(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub p: u64,
    pub kappa: u64,
    pub orbits: Vec<OrbitEntry>,
    /// Orbit index ↦ occurrences of each α = 0..p as a first coordinate.
    pub counts: BTreeMap<String, Vec<u64>>,
}

impl OrbitReport {
    pub fn total_points(&self) -> usize {
        self.orbits.iter().map(|o| o.size).sum()
    }
}

/// Orbit report under the given generators, tagged with nonessential categories.
pub fn orbit_report(p: u64, kappa: i64, gens: Generators) -> Result<OrbitReport> {
    let s = Surface::new(p, kappa)?;
    let orbits = enumerate_orbits(p, kappa, gens)?;
    let table = category_table(&s);
    let mut entries = Vec::new();
    let mut counts = BTreeMap::new();
    for (i, o) in orbits.iter().enumerate() {
        let category = o.iter().find_map(|c| table.get(c).copied());
        entries.push(OrbitEntry { rep: o[0], size: o.len(), essential: category.is_none(), category });
        let mut c = vec![0u64; p as usize];
        for t in o {
            c[t[0] as usize] += 1;
        }
        counts.insert(i.to_string(), c);
    }
    Ok(OrbitReport { p, kappa: s.kappa, orbits: entries, counts })
}

/// Outcome of checking the single-orbit theorem for one (p, κ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Main1Report {
    pub p: u64,
    pub kappa: u64,
    pub vieta_orbits: usize,
    /// Orbits containing a listed exceptional seed.
    pub exceptional_orbits: usize,
    /// Orbits containing no exceptional seed.
    pub main_orbits: usize,
    /// Every triple in an exceptional orbit is nonessential (informational).
    pub exceptions_nonessential: bool,
    pub holds: bool,
}

fn exceptional_seeds(s: &Surface) -> Vec<Coords> {
    let p = s.p;
    let k = s.kappa;
    let mut base = Vec::new();
    if let Some(r) = sqrt_raw(k, p) {
        base.push([r, 0, 0]);
        base.push([s.neg(r), 0, 0]);
    }
    if k == 2 % p {
        base.push([1, 1, 1]);
    }
    if let Some((f, g)) = golden_roots(p) {
        for phi in [f, g] {
            if k == add_mod(2, phi, p) {
                base.push([1, 0, phi]);
            }
        }
        if k == 3 % p {
            base.push([f, 1, 1]);
            base.push([g, 1, 1]);
        }
    }
    if k == 3 % p {
        if let Some(r2) = sqrt_raw(2, p) {
            base.push([1, 0, r2]);
            base.push([1, 0, s.neg(r2)]);
        }
    }
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = BTreeSet::new();
    for c in base {
        for pm in PERMS {
            let v = [c[pm[0]], c[pm[1]], c[pm[2]]];
            if s.contains(v) {
                out.insert(v);
            }
        }
    }
    out.into_iter().collect()
}

/// Decomposes the surface under Vieta involutions alone and checks that all
/// orbits except those of the listed exceptions form one orbit.
pub fn verify_main1(p: u64, kappa: i64) -> Result<Main1Report> {
    let s = Surface::new(p, kappa)?;
    let orbits = enumerate_orbits(p, kappa, Generators::VietaOnly)?;
    let seeds: BTreeSet<Coords> = exceptional_seeds(&s).into_iter().collect();
    let table = category_table(&s);
    let mut exceptional = 0;
    let mut main = 0;
    let mut nonessential = true;
    for o in &orbits {
        if o.iter().any(|c| seeds.contains(c)) {
            exceptional += 1;
            nonessential &= o.iter().all(|c| table.contains_key(c));
        } else {
            main += 1;
        }
    }
    Ok(Main1Report {
        p,
        kappa: s.kappa,
        vieta_orbits: orbits.len(),
        exceptional_orbits: exceptional,
        main_orbits: main,
        exceptions_nonessential: nonessential,
        holds: main <= 1,
    })
}

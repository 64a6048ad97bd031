use std::collections::BTreeSet;

use super::{Coords, MarkoffTriple, Surface};
use crate::ffield::{add_mod, mul_mod, sqrt_in_fp2, sub_mod, zeta_of, Fp2, PrimeField};

/// Which parameterization of a first-coordinate orbit applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    /// α² ∉ {4, κ}: `s(ζⁿη + ζ⁻ⁿη⁻¹)` with `s² = (α² − κ)/(α² − 4)`.
    Generic { zeta: Fp2, eta: Fp2, scale: Fp2 },
    /// α² = κ: `(α, ζⁿβ, ζ^{n±1}β)`.
    SqrtKappa { zeta: Fp2, beta: u64 },
    /// α = ±2: `(α, β + n·t, ±(β + (n ± 1)·t))` with `t² = κ − 4`.
    Parabolic { beta: u64, step: u64 },
}

/// Parameterization of the Γ_x-orbit through a seed triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FirstCoordParam {
    pub p: u64,
    pub kappa: u64,
    pub alpha: u64,
    pub kind: ParamKind,
}

/// Describes the first-coordinate orbit of `t` by its (ζ, η) data.
pub fn first_coord_parameterize(t: &MarkoffTriple) -> FirstCoordParam {
    let p = t.p;
    let f = PrimeField::new(p).expect("odd prime");
    let [a, b, g] = t.coords();
    let a2 = mul_mod(a, a, p);
    let kind = if a2 == 4 % p {
        let sigma = if a == 2 % p { 1 } else { p - 1 };
        ParamKind::Parabolic { beta: b, step: sub_mod(mul_mod(sigma, g, p), b, p) }
    } else {
        let zeta = zeta_of(&f, a);
        if a2 == t.kappa {
            ParamKind::SqrtKappa { zeta, beta: b }
        } else {
            let d = zeta.scale(2).sub(Fp2::from_base(&f, a));
            let r = sqrt_in_fp2(&f, sub_mod(a2, t.kappa, p));
            let scale = r.mul(d.inv().expect("α² ≠ 4"));
            let u = sub_mod(mul_mod(2, g, p), mul_mod(a, b, p), p);
            let num = d.scale(b).add(Fp2::from_base(&f, u));
            let eta = num.mul(r.scale(2).inv().expect("α² ≠ κ"));
            ParamKind::Generic { zeta, eta, scale }
        }
    };
    FirstCoordParam { p, kappa: t.kappa, alpha: a, kind }
}

fn order(z: Fp2) -> u64 {
    let mut w = z;
    let mut n = 1;
    while !w.is_one() {
        w = w.mul(z);
        n += 1;
    }
    n
}

impl FirstCoordParam {
    /// All triples of the parameterized orbit.
    pub fn enumerate(&self) -> BTreeSet<Coords> {
        let p = self.p;
        let s = Surface { p, kappa: self.kappa };
        let a = self.alpha;
        let mut out = BTreeSet::new();
        let base = |v: Fp2| v.base().expect("orbit coordinates lie in the prime field");
        match self.kind {
            ParamKind::Generic { zeta, eta, scale } => {
                let zi = zeta.inv().unwrap();
                let ord = order(zeta);
                let mut w0 = eta;
                for _ in 0..ord {
                    for w in [w0, w0.neg()] {
                        let y = base(scale.mul(w.add(w.inv().unwrap())));
                        for w2 in [w.mul(zeta), w.mul(zi)] {
                            let z = base(scale.mul(w2.add(w2.inv().unwrap())));
                            out.insert([a, y, z]);
                        }
                    }
                    w0 = w0.mul(zeta);
                }
            }
            ParamKind::SqrtKappa { zeta, beta } => {
                let zi = zeta.inv().unwrap();
                let ord = order(zeta);
                let mut w0 = Fp2 { a: beta, b: 0, ..zeta };
                for _ in 0..ord {
                    for w in [w0, w0.neg()] {
                        for w2 in [w.mul(zeta), w.mul(zi)] {
                            out.insert([a, base(w), base(w2)]);
                        }
                    }
                    w0 = w0.mul(zeta);
                }
            }
            ParamKind::Parabolic { beta, step } => {
                let sigma = if a == 2 % p { 1 } else { p - 1 };
                for n in 0..p {
                    let y = add_mod(beta, mul_mod(n, step, p), p);
                    for z in [add_mod(y, step, p), sub_mod(y, step, p)] {
                        for e in [1, p - 1] {
                            out.insert([a, mul_mod(e, y, p), mul_mod(mul_mod(e, sigma, p), z, p)]);
                        }
                    }
                }
            }
        }
        debug_assert!(out.iter().all(|c| s.contains(*c)));
        out
    }

}

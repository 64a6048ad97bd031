//! Built-in checks: `fast` covers the anchor values, `full` adds the
//! exhaustive sweeps and a d = 5 certification.

use std::time::Instant;

use clap::ValueEnum;
use markoff_core::certify::{self, Overrides, Verdict};
use markoff_core::exact_rings::rational::int;
use markoff_core::exact_rings::ring::QAt;
use markoff_core::exact_rings::ZPoly;
use markoff_core::ffield::{is_prime, quad_char, sqrt_raw, Fp};
use markoff_core::markoff::{enumerate_orbits, verify_main1, Generators, Surface};
use markoff_core::nielsen::nielsen_census;
use markoff_core::spectral::{local_determinants, qn_direct, qn_published};
use markoff_core::trired::{parse_tripoly, phi, phi_x, TriPoly};
use num_bigint::BigInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: Option<String>,
    pub millis: u128,
}

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Nielsen orbit count predicted for generating pairs with `tr[A, B] = κ − 2`.
pub fn expected_nielsen(p: u64, kappa: u64) -> usize {
    if kappa == 0 && p % 4 == 1 {
        2
    } else {
        1
    }
}

pub fn phi_anchors() -> Result<(), String> {
    let r = QAt { kappa: int(0) };
    let f = parse_tripoly("y^4 - y^2*z^2 + 1/2*x^2*y^2", r.clone()).map_err(|e| e.to_string())?;
    ensure(phi(&f) == vec![int(0), int(0), int(-3), int(0), int(1)], || "Φ(y⁴−y²z²+½x²y²) ≠ x⁴−3x²".into())?;
    ensure(phi_x(&f.shift(1, 0, 0)).is_zero(), || "Φ_x(x·f) ≠ 0".into())?;
    ensure(phi(&TriPoly::mono(r.clone(), 4, 2, 0)) == vec![int(0), int(0), int(24), int(0), int(2)], || "Φ(x⁴y²) ≠ 2x⁴+24x²".into())?;
    ensure(phi(&TriPoly::mono(r, 2, 2, 2)) == vec![int(0), int(0), int(36), int(0), int(3)], || "Φ(x²y²z²) ≠ 3x⁴+36x²".into())
}

pub fn qn_table() -> Result<(), String> {
    for p in [13u64, 101] {
        for n in 1..=4 {
            let want = qn_published(n, p).map_err(|e| e.to_string())?;
            for k in [0i64, 1, 2, 3, 5, 7] {
                let got = qn_direct(n, p, k).map_err(|e| e.to_string())?;
                ensure(got == want.specialize(k as u64), || format!("q_{n} at p={p} κ={k}"))?;
            }
        }
    }
    Ok(())
}

pub fn local_dets() -> Result<(), String> {
    let mut seen = (false, false);
    for p in [101u64, 103] {
        for k in [1i64, 2, 5, 6, 7, 8] {
            let d = local_determinants(p, k).map_err(|e| e.to_string())?;
            if d.chi == 1 {
                ensure(d.det2 == d.expected2, || format!("det2 at p={p} κ={k}"))?;
                seen.0 = true;
            } else if d.chi == -1 {
                ensure(d.det3 == d.expected3, || format!("det3 at p={p} κ={k}"))?;
                seen.1 = true;
            }
        }
    }
    ensure(seen.0 && seen.1, || "both χ branches must be exercised".into())
}

pub fn strip_example() -> Result<(), String> {
    let g = (&ZPoly::linear(4).pow(2) * &ZPoly::linear(2)).scale(&BigInt::from(12));
    let s = certify::strip_factors(&g, 5, 20).map_err(|e| e.to_string())?;
    ensure(s.residual == ZPoly::linear(2) && s.a == BigInt::from(12) && s.b == 2, || format!("{s:?}"))
}

fn first_coordinate_counts_upto(pmax: u64) -> Result<(), String> {
    for p in (5..=pmax).filter(|&p| is_prime(p)) {
        for k in 0..p {
            let s = Surface::new(p, k as i64).map_err(|e| e.to_string())?;
            let mut count = vec![0u64; p as usize];
            for c in s.points() {
                count[c[0] as usize] += 1;
            }
            let r = sqrt_raw(k, p);
            for a in 0..p {
                let skip = a == 2 || a == p - 2 || r.is_some_and(|r| a == r || a == (p - r) % p);
                if skip {
                    continue;
                }
                let chi = quad_char(Fp::new(p, (a * a) as i64 - 4)) as i64;
                ensure(count[a as usize] as i64 == p as i64 - chi, || format!("p={p} κ={k} α={a}"))?;
            }
        }
    }
    Ok(())
}

pub fn first_coordinate_counts() -> Result<(), String> {
    first_coordinate_counts_upto(13)
}

fn main1_upto(pmax: u64) -> Result<(), String> {
    for p in (5..=pmax).filter(|&p| is_prime(p)) {
        for k in (0..p as i64).filter(|&k| k != 4 % p as i64) {
            let r = verify_main1(p, k).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("p={p} κ={k}: {r:?}"))?;
        }
    }
    Ok(())
}

pub fn main1_small() -> Result<(), String> {
    main1_upto(13)
}

fn nielsen_for(p: u64) -> Result<(), String> {
    for (k, r) in nielsen_census(p, 13).map_err(|e| e.to_string())? {
        ensure(r.orbit_count == 0 || r.orbit_count == expected_nielsen(p, k), || format!("p={p} κ={k}: {} orbits", r.orbit_count))?;
    }
    Ok(())
}

pub fn nielsen_p5() -> Result<(), String> {
    nielsen_for(5)
}

pub fn nielsen_upto_11() -> Result<(), String> {
    for p in [5, 7, 11] {
        nielsen_for(p)?;
    }
    Ok(())
}

pub fn main1_upto_31() -> Result<(), String> {
    main1_upto(31)
}

pub fn counts_upto_31() -> Result<(), String> {
    first_coordinate_counts_upto(31)
}

pub fn orbit_sums() -> Result<(), String> {
    use markoff_core::exact_rings::ring::FpK;
    use markoff_core::ffield::{add_mod, mul_mod};
    for p in (5..=13u64).filter(|&p| is_prime(p)) {
        for k in (0..p as i64).filter(|&k| k != 4 % p as i64) {
            let r = FpK::new(p, k);
            let mut f = TriPoly::zero(r);
            for (i, e) in [(2, 2, 2), (4, 1, 3), (0, 5, 1), (3, 3, 0), (1, 0, 6)].into_iter().enumerate() {
                f.add_term(e, (i as u64 * 7 + 3) % p);
            }
            let g = phi(&f);
            for o in enumerate_orbits(p, k, Generators::Full).map_err(|e| e.to_string())? {
                let lhs = o.iter().fold(0, |s, t| add_mod(s, f.eval(&t[0], &t[1], &t[2]), p));
                let rhs = o.iter().fold(0, |s, t| add_mod(s, g.iter().rev().fold(0, |a, &c| add_mod(mul_mod(a, t[0], p), c, p)), p));
                ensure(lhs == rhs, || format!("p={p} κ={k}"))?;
            }
        }
    }
    Ok(())
}

pub fn certify_d5() -> Result<(), String> {
    let c = certify::certify(5, &Overrides::default()).map_err(|e| e.to_string())?;
    ensure(c.verdict == Verdict::True, || "verdict inconclusive".into())?;
    ensure(certify::recheck(&c).map_err(|e| e.to_string())?, || "recheck failed".into())
}

pub fn checks(level: Level) -> Vec<(&'static str, Check)> {
    let mut v: Vec<(&'static str, Check)> = vec![
        ("reduction anchors", phi_anchors),
        ("q_1..q_4 table vs direct reduction", qn_table),
        ("local determinants", local_dets),
        ("strip example", strip_example),
        ("first-coordinate counts p ≤ 13", first_coordinate_counts),
        ("single orbit p ≤ 13", main1_small),
        ("Nielsen orbits p = 5", nielsen_p5),
    ];
    if level == Level::Full {
        v.extend([
            ("orbit sums preserved p ≤ 13", orbit_sums as Check),
            ("first-coordinate counts p ≤ 31", counts_upto_31),
            ("single orbit p ≤ 31", main1_upto_31),
            ("Nielsen orbits p ∈ {5, 7, 11}", nielsen_upto_11),
            ("certification d = 5", certify_d5),
        ]);
    }
    v
}

pub fn run(level: Level) -> Vec<CheckResult> {
    checks(level)
        .into_iter()
        .map(|(name, f)| {
            let t = Instant::now();
            let r = f();
            CheckResult { name, pass: r.is_ok(), detail: r.err(), millis: t.elapsed().as_millis() }
        })
        .collect()
}

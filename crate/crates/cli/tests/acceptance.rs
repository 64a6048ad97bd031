//! The nine acceptance criteria, one PASS/FAIL line each.

use std::process::Command;
use std::time::Instant;

use markoff_core::certify::{recheck, target_poly, Certificate, Verdict};
use markoff_core::exact_rings::rational::{binomial, int};
use markoff_core::exact_rings::ring::{FpK, QAt, QKappa};
use markoff_core::exact_rings::{KPoly, Rational};
use markoff_core::ffield::{add_mod, is_prime, mul_mod, quad_char, sqrt_raw, Fp};
use markoff_core::markoff::{enumerate_orbits, verify_main1, Generators, Surface};
use markoff_core::nielsen::nielsen_census;
use markoff_core::spectral::qn::{at_kappa, centbinom_sides, f_vec, fj_at_x_closed, pair};
use markoff_core::spectral::{local_determinants, qn_direct_symbolic, qn_published};
use markoff_core::trired::formulas::{gen_form_prediction, mclaurin_coeff, phi_even_monomial, spec_form_remainder, special_coef_sum};
use markoff_core::trired::{parse_tripoly, phi, phi_x, Reducer, TriPoly};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn odd_primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(3)..=hi).filter(|&p| is_prime(p))
}

fn c1_reduction_anchors() -> Outcome {
    let r = QAt { kappa: int(0) };
    let f = parse_tripoly("y^4 - y^2*z^2 + 1/2*x^2*y^2", r.clone()).map_err(|e| e.to_string())?;
    ensure(phi(&f) == vec![int(0), int(0), int(-3), int(0), int(1)], || "Φ(f) ≠ x⁴−3x²".into())?;
    ensure(phi_x(&f.shift(1, 0, 0)).is_zero(), || "Φ_x(x·f) ≠ 0".into())?;
    ensure(phi(&TriPoly::mono(r.clone(), 4, 2, 0)) == vec![int(0), int(0), int(24), int(0), int(2)], || "Φ(x⁴y²)".into())?;
    ensure(phi(&TriPoly::mono(r, 2, 2, 2)) == vec![int(0), int(0), int(36), int(0), int(3)], || "Φ(x²y²z²)".into())?;
    Ok("4 anchors".into())
}

fn random_poly(r: FpK, rng: &mut ChaCha8Rng) -> TriPoly<FpK> {
    let mut f = TriPoly::zero(r);
    for _ in 0..12 {
        let a = rng.gen_range(0..=8);
        let b = rng.gen_range(0..=8 - a);
        let c = rng.gen_range(0..=8 - a - b);
        f.add_term((a, b, c), rng.gen_range(0..r.p));
    }
    f
}

fn orbit_sum(o: &[[u64; 3]], p: u64, f: impl Fn(&[u64; 3]) -> u64) -> u64 {
    o.iter().fold(0, |s, t| add_mod(s, f(t), p))
}

fn c2_orbit_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut cases = 0;
    for p in odd_primes(3, 31) {
        for k in (0..p as i64).filter(|&k| k != 4 % p as i64) {
            let full = enumerate_orbits(p, k, Generators::Full).map_err(|e| e.to_string())?;
            let first = enumerate_orbits(p, k, Generators::FirstCoord).map_err(|e| e.to_string())?;
            let r = FpK::new(p, k);
            for _ in 0..50 {
                let f = random_poly(r, &mut rng);
                let g = phi(&f);
                let ev = |t: &[u64; 3]| f.eval(&t[0], &t[1], &t[2]);
                for o in &full {
                    let rhs = orbit_sum(o, p, |t| g.iter().rev().fold(0, |a, &c| add_mod(mul_mod(a, t[0], p), c, p)));
                    ensure(orbit_sum(o, p, ev) == rhs, || format!("Φ: p={p} κ={k} orbit {:?}", o[0]))?;
                }
                let gx = phi_x(&f).to_tripoly(&r);
                for o in &first {
                    let rhs = orbit_sum(o, p, |t| gx.eval(&t[0], &t[1], &t[2]));
                    ensure(orbit_sum(o, p, ev) == rhs, || format!("Φ_x: p={p} κ={k} orbit {:?}", o[0]))?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (p, κ, f) cases"))
}

fn c3_counting() -> Outcome {
    let mut checked = 0;
    for p in odd_primes(3, 31) {
        for k in 0..p {
            let s = Surface::new(p, k as i64).map_err(|e| e.to_string())?;
            let mut count = vec![0i64; p as usize];
            for c in s.points() {
                count[c[0] as usize] += 1;
            }
            let r = sqrt_raw(k, p);
            for a in 0..p {
                if a == 2 % p || a == p - 2 || r.is_some_and(|r| a == r || a == (p - r) % p) {
                    continue;
                }
                let chi = quad_char(Fp::new(p, (a * a) as i64 - 4)) as i64;
                ensure(count[a as usize] == p as i64 - chi, || format!("p={p} κ={k} α={a}: {}", count[a as usize]))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (p, κ, α) counts"))
}

fn c4_main1() -> Outcome {
    let mut n = 0;
    for p in odd_primes(5, 101) {
        for k in (0..p as i64).filter(|&k| k != 4 % p as i64) {
            let r = verify_main1(p, k).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("p={p} κ={k}: {r:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} (p, κ) pairs"))
}

fn c5_nielsen() -> Outcome {
    let mut lines = Vec::new();
    for p in [5u64, 7, 11] {
        for (k, r) in nielsen_census(p, 11).map_err(|e| e.to_string())? {
            let want = if k == 0 && p % 4 == 1 { 2 } else { 1 };
            ensure(r.orbit_count == want || r.orbit_count == 0, || format!("p={p} κ={k}: {} orbits", r.orbit_count))?;
            if r.orbit_count > 0 {
                lines.push(format!("{p}:{k}→{}", r.orbit_count));
            }
        }
    }
    Ok(lines.join(" "))
}

fn at(v: &[KPoly], t: usize) -> KPoly {
    v.get(t).cloned().unwrap_or_else(KPoly::zero)
}

fn laurent_constant(l: u32, m: u32) -> Rational {
    let k = (l + m) as i64;
    (0..=k).fold(Rational::zero(), |acc, i| {
        let s = if i % 2 == 0 { 1 } else { -1 };
        acc + Rational::from_integer(binomial(2 * l as u64, (k - i) as u64) * binomial(2 * m as u64, i as u64) * s)
    })
}

fn c6_formulas() -> Outcome {
    let mut red = Reducer::new(QKappa);
    for n in 0..=8u32 {
        for m in 0..=3u32 {
            let got = phi_even_monomial(&mut red, n, m);
            let want = gen_form_prediction(n, m);
            for t in (m as usize + 1)..got.len().max(want.len()) {
                ensure(at(&got, t) == at(&want, t), || format!("top coefficients n={n} m={m} t={t}"))?;
            }
        }
    }
    for n in 0..=8u32 {
        for m in 0..=n {
            let r = spec_form_remainder(&mut red, n, m).map_err(|e| e.to_string())?;
            ensure(r.len() <= m as usize + 1, || format!("remainder degree n={n} m={m}"))?;
        }
    }
    for n in 1..=10u32 {
        for l in 0..n {
            for m in 0..(n - l) {
                let s = special_coef_sum(l, m, n);
                ensure(s == mclaurin_coeff(m as i64, l + m) && s == laurent_constant(l, m), || format!("coefficient sum l={l} m={m} n={n}"))?;
            }
        }
    }
    for n in 0..=6u64 {
        for j in 0..=6u64 {
            let (l, r) = centbinom_sides(n, j);
            ensure(l == r, || format!("central binomial identity n={n} j={j}"))?;
        }
    }
    for p in [101u64, 103] {
        for k in [1u64, 5, 7, 10] {
            for j in 0..=6u64 {
                let fj = at_kappa(p, &f_vec(p, j as usize), k);
                for t in [1u64, 2, 3, 9, 50] {
                    let mut x = vec![1u64];
                    for _ in 1..fj.len() {
                        x.push(x.last().unwrap() * t % p);
                    }
                    ensure(fj_at_x_closed(p, k, j, t) == Some(pair(p, &fj, &x)), || format!("f_j closed form p={p} κ={k} j={j} t={t}"))?;
                }
            }
        }
    }
    Ok("top coefficients, remainder bound, sums, identity, closed form".into())
}

fn c7_qn() -> Outcome {
    for p in [13u64, 101] {
        for n in 1..=4 {
            let direct = qn_direct_symbolic(n, p).map_err(|e| e.to_string())?;
            let table = qn_published(n, p).map_err(|e| e.to_string())?;
            ensure(direct == table, || format!("q_{n} symbolic at p={p}"))?;
            for k in 0..p.min(20) {
                ensure(direct.specialize(k) == table.specialize(k), || format!("q_{n} at p={p} κ={k}"))?;
            }
        }
    }
    let (mut n2, mut n3) = (0, 0);
    for p in [101u64, 103] {
        for k in 1..=12i64 {
            if k == 4 {
                continue;
            }
            let d = local_determinants(p, k).map_err(|e| e.to_string())?;
            match d.chi {
                1 => {
                    ensure(d.det2 == d.expected2, || format!("det2 p={p} κ={k}"))?;
                    n2 += 1;
                }
                -1 => {
                    ensure(d.det3 == d.expected3, || format!("det3 p={p} κ={k}"))?;
                    n3 += 1;
                }
                _ => {}
            }
        }
    }
    ensure(n2 > 0 && n3 > 0, || "a χ branch was not exercised".into())?;
    Ok(format!("q_1..q_4 at p ∈ {{13, 101}}; {n2} det2 and {n3} det3 evaluations"))
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_markoff")
}

fn cert_path() -> std::path::PathBuf {
    std::env::temp_dir().join(format!("markoff-acceptance-{}.json", std::process::id()))
}

fn c8_certify() -> Outcome {
    let path = cert_path();
    let st = Command::new(bin()).args(["certify", "--d", "5", "--out"]).arg(&path).output().map_err(|e| e.to_string())?;
    ensure(st.status.code() == Some(0), || format!("exit {:?}: {}", st.status.code(), String::from_utf8_lossy(&st.stderr)))?;
    let c = Certificate::from_json(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(c.verdict == Verdict::True, || "verdict".into())?;
    let s = c.strip.as_ref().ok_or("no strip record")?;
    ensure(target_poly().div_exact(&s.residual).is_some(), || format!("residual {} does not divide the target", s.residual))?;
    ensure(s.unfactored.is_empty() && s.residual_primes.iter().all(|r| r.exempt), || "residual primes".into())?;
    Ok(format!("b={} residual={} a is {}-smooth", s.b, s.residual, 2 * c.plan.n_d))
}

fn c9_integrity() -> Outcome {
    let path = cert_path();
    let text = std::fs::read_to_string(&path).map_err(|e| format!("certificate from criterion 8 missing: {e}"))?;
    let st = Command::new(bin()).args(["recheck", "--cert"]).arg(&path).output().map_err(|e| e.to_string())?;
    ensure(st.status.code() == Some(0), || format!("recheck exit {:?}", st.status.code()))?;
    let c = Certificate::from_json(&text).map_err(|e| e.to_string())?;
    ensure(matches!(recheck(&c), Ok(true)), || "recheck(certify(5)) is not true".into())?;
    let bytes = text.as_bytes();
    let mut positions: Vec<usize> = Vec::new();
    for key in ["\"hash\"", "\"verdict\"", "\"residual\"", "\"b\"", "\"a\"", "\"element\""] {
        if let Some(i) = text.find(key) {
            positions.extend(i..(i + 80).min(bytes.len()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    positions.extend((0..600).map(|_| rng.gen_range(0..bytes.len())));
    let mut flips = 0;
    for &pos in &positions {
        for bit in [0u8, 3, 6] {
            let mut t = bytes.to_vec();
            t[pos] ^= 1 << bit;
            let caught = match std::str::from_utf8(&t).ok().map(Certificate::from_json) {
                Some(Ok(c)) => !matches!(recheck(&c), Ok(true)),
                _ => true,
            };
            ensure(caught, || format!("flip of bit {bit} at byte {pos} undetected"))?;
            flips += 1;
        }
    }
    let _ = std::fs::remove_file(&path);
    Ok(format!("{flips} single-bit tampers detected"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 reduction anchors", c1_reduction_anchors),
        ("2 orbit-sum preservation", c2_orbit_sums),
        ("3 first-coordinate counts", c3_counting),
        ("4 single-orbit theorem p ≤ 101", c4_main1),
        ("5 Nielsen orbits p ∈ {5, 7, 11}", c5_nielsen),
        ("6 formula oracles", c6_formulas),
        ("7 q-vector anchors and local determinants", c7_qn),
        ("8 certification d = 5", c8_certify),
        ("9 certificate integrity", c9_integrity),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("PASS criterion {name} ({secs:.1} s): {d}"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1} s): {e}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

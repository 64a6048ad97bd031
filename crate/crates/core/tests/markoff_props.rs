use std::collections::BTreeSet;

use markoff_core::ffield::{mul_mod, primes_in, quad_char, rotation_order, sqrt_raw, Fp};
use markoff_core::markoff::*;
use proptest::prelude::*;

fn chi(p: u64, v: u64) -> i64 {
    quad_char(Fp::new(p, v as i64)) as i64
}

fn kappas(p: u64) -> impl Iterator<Item = i64> {
    (0..p as i64).filter(move |&k| k as u64 != 4 % p)
}

#[test]
fn first_coordinate_counts() {
    for p in primes_in(3, 31) {
        for k in 0..p {
            let s = Surface::new(p, k as i64).unwrap();
            let mut c = vec![0i64; p as usize];
            for t in s.points() {
                c[t[0] as usize] += 1;
            }
            for a in 0..p {
                let a2 = mul_mod(a, a, p);
                if a2 == 4 % p || a2 == k {
                    continue;
                }
                assert_eq!(c[a as usize], p as i64 - chi(p, (a2 + p - 4 % p) % p), "p={p} k={k} a={a}");
            }
        }
    }
}

#[test]
fn first_coordinate_orbit_sizes_divide() {
    for p in primes_in(5, 23) {
        for k in kappas(p) {
            for o in enumerate_orbits(p, k, Generators::FirstCoord).unwrap() {
                let a = o[0][0];
                assert!(o.iter().all(|t| t[0] == a));
                let a2 = mul_mod(a, a, p);
                let bound = 2 * (p as i64 - chi(p, (a2 + p - 4 % p) % p));
                assert_eq!(bound % o.len() as i64, 0, "p={p} k={k} a={a} size={}", o.len());
            }
        }
    }
}

#[test]
fn parameterization_matches_bfs() {
    for p in primes_in(5, 23) {
        for k in kappas(p) {
            for o in enumerate_orbits(p, k, Generators::FirstCoord).unwrap() {
                let t = Surface::new(p, k).unwrap().triple(o[0]);
                let param = first_coord_parameterize(&t);
                let bfs = gamma_orbit(&t, Generators::FirstCoord);
                let want: BTreeSet<Coords> = o.iter().copied().collect();
                assert_eq!(bfs, want);
                assert_eq!(param.enumerate(), want, "p={p} k={k} seed={:?} {:?}", o[0], param.kind);
            }
        }
    }
}

#[test]
fn parameterization_cases() {
    let t = MarkoffTriple::new(13, 3, 4, 0, 0).unwrap();
    assert!(matches!(first_coord_parameterize(&t).kind, ParamKind::SqrtKappa { .. }));
    let s = Surface::new(13, 1).unwrap();
    let t = s.points().into_iter().find(|c| c[0] == 2).map(|c| s.triple(c)).unwrap();
    match first_coord_parameterize(&t).kind {
        ParamKind::Parabolic { step, .. } => assert_eq!(mul_mod(step, step, 13), 10),
        k => panic!("{k:?}"),
    }
}

#[test]
fn max_rotation_order_gives_one_orbit() {
    for p in primes_in(5, 31) {
        for k in kappas(p) {
            let orbits = enumerate_orbits(p, k, Generators::FirstCoord).unwrap();
            for a in 0..p {
                if mul_mod(a, a, p) == k as u64 {
                    continue;
                }
                let ord = rotation_order(Fp::new(p, a as i64));
                if ord != p - 1 && ord != p + 1 {
                    continue;
                }
                let n = orbits.iter().filter(|o| o[0][0] == a).count();
                assert!(n <= 1, "p={p} k={k} a={a} orbits={n}");
            }
        }
    }
}

#[test]
fn whole_surface_vector() {
    for p in primes_in(5, 31) {
        let m = span_vector_m(p);
        let y = span_vector_y_m(p);
        for k in kappas(p) {
            let s = Surface::new(p, k).unwrap();
            let mut v = vec![0u64; (p as usize + 1) / 2];
            for t in s.points() {
                let a2 = mul_mod(t[0], t[0], p);
                let mut pw = 1;
                for e in v.iter_mut() {
                    *e = (*e + pw) % p;
                    pw = mul_mod(pw, a2, p);
                }
            }
            assert_eq!(v, m, "p={p} k={k}");
            let top = v.len() - 1;
            assert_eq!(v[..top], y[..top]);
        }
    }
}

#[test]
fn y_m_binomials() {
    let y = span_vector_y_m(31);
    let mut b = 1u128;
    for (i, v) in y.iter().enumerate() {
        if i > 0 {
            b = b * (2 * i as u128) * (2 * i as u128 - 1) / (i as u128 * i as u128);
        }
        assert_eq!(*v as u128, b % 31);
    }
}

#[test]
fn mixed_parity_monomials_vanish_on_orbits() {
    for p in primes_in(5, 17) {
        for k in kappas(p) {
            for o in enumerate_orbits(p, k, Generators::Full).unwrap() {
                for e in [(1u64, 0u64, 0u64), (2, 1, 0), (1, 1, 2), (3, 2, 2), (0, 0, 1)] {
                    let mut acc = 0;
                    for t in &o {
                        let v = mul_mod(
                            mul_mod(t[0].pow(e.0 as u32) % p, t[1].pow(e.1 as u32) % p, p),
                            t[2].pow(e.2 as u32) % p,
                            p,
                        );
                        acc = (acc + v) % p;
                    }
                    assert_eq!(acc, 0, "p={p} k={k} e={e:?}");
                }
            }
        }
    }
}

#[test]
fn sign_pair_reachable_by_vieta_when_four_divides_order() {
    for p in [13u64, 17, 29, 37] {
        for k in [0i64, 1, 5, 7] {
            let s = Surface::new(p, k).unwrap();
            for t in s.points().into_iter().step_by(7) {
                let a = t[0];
                if mul_mod(a, a, p) == 4 % p || rotation_order(Fp::new(p, a as i64)) % 4 != 0 {
                    continue;
                }
                let orbit = gamma_orbit(&s.triple(t), Generators::VietaOnly);
                assert!(orbit.contains(&[a, s.neg(t[1]), s.neg(t[2])]), "p={p} k={k} t={t:?}");
            }
        }
    }
}

#[test]
fn baragar_and_exception_orbits() {
    let o = enumerate_orbits(7, 0, Generators::Full).unwrap();
    assert_eq!(o.len(), 2);
    let r = orbit_report(5, 2, Generators::Full).unwrap();
    let t = MarkoffTriple::new(5, 2, 1, 1, 1).unwrap();
    let g = gamma_orbit(&t, Generators::Full);
    assert!(r.orbits.iter().any(|e| e.rep == *g.iter().next().unwrap() && e.size == g.len()));
    let r = orbit_report(7, 3, Generators::Full).unwrap();
    let r2 = sqrt_raw(2, 7).unwrap();
    assert_eq!(r2, 3);
    let t = MarkoffTriple::new(7, 3, 1, 0, 3).unwrap();
    let g = gamma_orbit(&t, Generators::Full);
    let e = r.orbits.iter().find(|e| e.rep == *g.iter().next().unwrap()).unwrap();
    assert_eq!(e.category, Some(Category::C5a));
}

#[test]
fn sqrt_kappa_orbit_closed() {
    for (p, k) in [(11u64, 3i64), (13, 10), (29, 5)] {
        let r = sqrt_raw(k as u64, p).unwrap();
        let t = MarkoffTriple::new(p, k, r as i64, 0, 0).unwrap();
        let orbit = gamma_orbit(&t, Generators::Full);
        let s = Surface::new(p, k).unwrap();
        for c in &orbit {
            for n in s.neighbors(*c, Generators::Full) {
                assert!(orbit.contains(&n));
            }
            assert_eq!(classify_nonessential(&s.triple(*c)), Some(Category::C1));
        }
    }
}

#[test]
fn category_two_orbit_vector() {
    // independent count over {0, ±1}³ at κ = 2
    let p = 13u64;
    let s = Surface::new(p, 2).unwrap();
    let vals = [0, 1, p - 1];
    let mut c0 = 0;
    let mut c1 = 0;
    for x in vals {
        for y in vals {
            for z in vals {
                if s.contains([x, y, z]) {
                    if x == 0 {
                        c0 += 1
                    } else {
                        c1 += 1
                    }
                }
            }
        }
    }
    assert_eq!((c0, c1), (4, 12));
    let (_, vecs) = predicted_span(&s);
    let want: Vec<u64> = span_vector_x(p, 0).iter().zip(span_vector_x(p, 1)).map(|(a, b)| (a + 3 * b) % p).collect();
    assert!(vecs.contains(&want));
}

#[test]
fn pperp_examples() {
    let r = pperp_check(7, 0).unwrap();
    assert!(r.equal);
    let r = pperp_check(11, 5).unwrap();
    assert!(r.equal);
    assert_eq!(r.predicted_dim, 2);
    let r = pperp_check(11, 7).unwrap();
    assert!(r.equal && r.cases == vec![1]);
    assert_eq!(r.predicted_dim, 1);
    let r = pperp_check(11, 6).unwrap();
    assert!(r.equal && r.cases == vec![4]);
    let r = pperp_check(13, 2).unwrap();
    assert!(r.equal && r.cases == vec![2]);
}

#[test]
fn main1_small_primes() {
    for p in primes_in(5, 31) {
        for k in kappas(p) {
            let r = verify_main1(p, k).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }
}

#[test]
fn report_json_shape() {
    let r = orbit_report(7, 0, Generators::Full).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["orbits"][0]["rep"], serde_json::json!([0, 0, 0]));
    assert_eq!(v["orbits"][0]["category"], serde_json::json!("1"));
    assert_eq!(v["orbits"][1]["essential"], serde_json::json!(true));
    assert_eq!(v["counts"]["1"].as_array().unwrap().len(), 7);
}

proptest! {
    #[test]
    fn vieta_is_involution(pi in 0usize..10, k in 0i64..200, seed in 0usize..10_000) {
        let p = primes_in(5, 41)[pi];
        prop_assume!(k as u64 % p != 4 % p);
        let s = Surface::new(p, k).unwrap();
        let pts = s.points();
        let c = pts[seed % pts.len()];
        for ax in [Axis::X, Axis::Y, Axis::Z] {
            let t = s.triple(c);
            let u = vieta_move(&t, ax);
            prop_assert!(s.contains(u.coords()));
            prop_assert_eq!(vieta_move(&u, ax), t);
        }
    }

    #[test]
    fn orbit_sizes_sum(pi in 0usize..8, k in 0i64..50) {
        let p = primes_in(5, 31)[pi];
        prop_assume!(k as u64 % p != 4 % p);
        let r = orbit_report(p, k, Generators::Full).unwrap();
        prop_assert_eq!(r.total_points(), Surface::new(p, k).unwrap().points().len());
        for c in r.counts.values() {
            for a in 0..p {
                let a2 = mul_mod(a, a, p);
                if a2 == 4 % p || a2 == k as u64 % p { continue; }
                prop_assert!(c[a as usize] as i64 <= p as i64 - chi(p, (a2 + p - 4) % p));
            }
        }
    }
}

use markoff_core::ffield::{add_mod, mul_mod, rotation_order, sub_mod, Fp};
use markoff_core::markoff::{classify_nonessential, golden_roots, Surface};
use markoff_core::nielsen::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sl2(p: u64, rng: &mut ChaCha8Rng) -> Sl2Mat {
    loop {
        let v: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..p as i64));
        if let Ok(m) = Sl2Mat::new(p, v[0], v[1], v[2], v[3]) {
            return m;
        }
    }
}

#[test]
fn fricke_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let p = [5u64, 7, 11, 13, 101][i % 5];
        let pr = Sl2Pair { a: random_sl2(p, &mut rng), b: random_sl2(p, &mut rng) };
        let (x, y, z) = trace_triple(&pr);
        let lhs = add_mod(add_mod(mul_mod(x, x, p), mul_mod(y, y, p), p), mul_mod(z, z, p), p);
        let rhs = add_mod(add_mod(mul_mod(mul_mod(x, y, p), z, p), pr.commutator().trace(), p), 2, p);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn moves_project_to_markoff_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let p = 13;
        let (a, b) = (random_sl2(p, &mut rng), random_sl2(p, &mut rng));
        let (x, y, z) = trace_triple(&Sl2Pair { a, b });
        let k = pr_kappa(a, b);
        // (A, B) ↦ (A, AB): (x, y, z) ↦ (x, z, xz − y)
        assert_eq!(trace_triple(&Sl2Pair { a, b: a.mul(&b) }), (x, z, sub_mod(mul_mod(x, z, p), y, p)));
        // (A, B) ↦ (B, A): transposition of x and y
        assert_eq!(trace_triple(&Sl2Pair { a: b, b: a }), (y, x, z));
        // (A, B) ↦ (A⁻¹, B): (x, y, z) ↦ (x, y, xy − z)
        assert_eq!(trace_triple(&Sl2Pair { a: a.inv(), b }), (x, y, sub_mod(mul_mod(x, y, p), z, p)));
        for (a2, b2) in [(a, a.mul(&b)), (b, a), (a.inv(), b)] {
            assert_eq!(pr_kappa(a2, b2), k);
        }
    }
}

fn pr_kappa(a: Sl2Mat, b: Sl2Mat) -> u64 {
    Sl2Pair { a, b }.commutator().trace()
}

#[test]
fn generation_examples() {
    let a = Sl2Mat::new(5, 1, 1, 0, 1).unwrap();
    let b = Sl2Mat::new(5, 1, 0, 1, 1).unwrap();
    assert!(generates(&Sl2Pair { a, b }).unwrap());
    // (√κ, 0, 0) with κ = 1 in 𝔽_7: category 1, never generating
    let ess = essential_trace_triples(7, 11).unwrap();
    assert!(!ess.contains(&[1, 0, 0]));
    let a = Sl2Mat::new(7, 1, 1, 0, 1).unwrap();
    let b = Sl2Mat::new(7, 0, 1, 6, 0).unwrap();
    let t = trace_triple(&Sl2Pair { a, b });
    assert_eq!(classify_nonessential(&Surface::new(7, 0).unwrap().triple([t.0, t.1, t.2])).is_some(), !ess.contains(&[t.0, t.1, t.2]));
}

#[test]
fn classification_matches_generating_pairs() {
    for p in [5u64, 7, 11] {
        let ess = essential_trace_triples(p, 11).unwrap();
        for k in 0..p {
            if k == 4 % p {
                continue;
            }
            let s = Surface::new(p, k as i64).unwrap();
            for c in s.points() {
                let predicted = classify_nonessential(&s.triple(c)).is_none();
                assert_eq!(predicted, ess.contains(&c), "p={p} k={k} t={c:?}");
            }
        }
    }
}

#[test]
fn orbit_counts_small() {
    assert_eq!(nielsen_orbits(5, 0).unwrap().orbit_count, 2);
    assert_eq!(nielsen_orbits(7, 0).unwrap().orbit_count, 1);
    assert_eq!(nielsen_orbits(5, 3).unwrap().orbit_count, 1);
    assert!(nielsen_orbits(5, 4).is_err());
}

#[test]
fn commutator_trace_constant_on_orbits() {
    let g = Sl2Group::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let a = g.elems[rng.gen_range(0..g.order())];
        let b = g.elems[rng.gen_range(0..g.order())];
        let k = pr_kappa(a, b);
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(a, b)];
        seen.insert((a, b));
        while let Some((x, y)) = stack.pop() {
            assert_eq!(pr_kappa(x, y), k);
            for n in [(x, x.mul(&y)), (y, x), (x.inv(), y)] {
                if seen.insert(n) {
                    stack.push(n);
                }
            }
        }
    }
}

#[test]
fn json_shape() {
    let r = nielsen_orbits(5, 0).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["orbit_count"], 2);
    assert_eq!(v["orbit_sizes"].as_array().unwrap().len(), 2);
}

#[test]
fn max_rotation_order_triples_are_essential() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [11u64, 13] {
        let ess = essential_trace_triples(p, 13).unwrap();
        for _ in 0..200 {
            let k = rng.gen_range(0..p);
            if k == 4 {
                continue;
            }
            let s = Surface::new(p, k as i64).unwrap();
            let pts = s.points();
            let c = pts[rng.gen_range(0..pts.len())];
            let excluded = |a: u64| {
                let a2 = mul_mod(a, a, p);
                [0, 1, 2, k].contains(&a2) || golden_roots(p).is_some_and(|(f, g)| a == f || a == g || a == p - f || a == p - g)
            };
            let full = c.iter().any(|&a| {
                let o = rotation_order(Fp::new(p, a as i64));
                (o == p - 1 || o == p + 1) && !excluded(a)
            });
            if full {
                assert!(ess.contains(&c), "p={p} k={k} {c:?}");
                assert!(classify_nonessential(&s.triple(c)).is_none());
            }
        }
    }
}

use markoff_core::exact_rings::ring::FpK;
use markoff_core::exact_rings::CoeffRing;
use markoff_core::ffield::{add_mod, is_prime, mul_mod};
use markoff_core::markoff::{enumerate_orbits, Generators};
use markoff_core::trired::{phi, phi_x, TriPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(r: FpK, deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> TriPoly<FpK> {
    let mut f = TriPoly::zero(r);
    for _ in 0..terms {
        let a = rng.gen_range(0..=deg);
        let b = rng.gen_range(0..=deg - a);
        let c = rng.gen_range(0..=deg - a - b);
        f.add_term((a, b, c), rng.gen_range(0..r.p));
    }
    f
}

fn horner(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| add_mod(mul_mod(acc, x, p), a, p))
}

fn check_sums(p: u64, kappa: i64, f: &TriPoly<FpK>) -> Result<(), String> {
    let r = f.ring;
    let g = phi(f);
    for o in enumerate_orbits(p, kappa, Generators::Full).unwrap() {
        let lhs = o.iter().fold(0, |s, t| add_mod(s, f.eval(&t[0], &t[1], &t[2]), p));
        let rhs = o.iter().fold(0, |s, t| add_mod(s, horner(&g, t[0], p), p));
        if lhs != rhs {
            return Err(format!("Φ: p={p} κ={kappa} orbit of {:?}", o[0]));
        }
    }
    let gx = phi_x(f).to_tripoly(&r);
    for o in enumerate_orbits(p, kappa, Generators::FirstCoord).unwrap() {
        let lhs = o.iter().fold(0, |s, t| add_mod(s, f.eval(&t[0], &t[1], &t[2]), p));
        let rhs = o.iter().fold(0, |s, t| add_mod(s, gx.eval(&t[0], &t[1], &t[2]), p));
        if lhs != rhs {
            return Err(format!("Φ_x: p={p} κ={kappa} orbit of {:?}", o[0]));
        }
    }
    Ok(())
}

#[test]
fn orbit_sums_preserved_small_primes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in (3..=13).filter(|&p| is_prime(p)) {
        for k in (0..p as i64).filter(|&k| k != 4 % p as i64) {
            for _ in 0..6 {
                let f = random_poly(FpK::new(p, k), 8, 10, &mut rng);
                check_sums(p, k, &f).unwrap();
            }
        }
    }
}

#[test]
fn phi_is_identity_on_x_polynomials() {
    let r = FpK::new(31, 7);
    let f = TriPoly::from_x_coeffs(r, &[3, 0, 5, 1, 30]);
    assert_eq!(phi(&f), vec![3, 0, 5, 1, 30]);
    assert_eq!(phi_x(&f).xpart, vec![3, 0, 5, 1, 30]);
}

#[test]
fn phi_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let r = FpK::new(29, 11);
    for _ in 0..20 {
        let f = random_poly(r, 7, 6, &mut rng);
        for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            assert_eq!(phi(&f.permute(perm)), phi(&f));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn orbit_sums_preserved(pi in 0usize..10, k in 0i64..31, seed in any::<u64>()) {
        let p = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31][pi];
        let k = k % p as i64;
        prop_assume!(k != 4 % p as i64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(FpK::new(p, k), 8, 12, &mut rng);
        prop_assert!(check_sums(p, k, &f).is_ok(), "{:?}", check_sums(p, k, &f));
    }

    #[test]
    fn phi_linear(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = FpK::new(23, 5);
        let f = random_poly(r, 8, 8, &mut rng);
        let g = random_poly(r, 8, 8, &mut rng);
        let s = phi(&f.add(&g));
        let mut want = phi(&f);
        let pg = phi(&g);
        want.resize(want.len().max(pg.len()), 0);
        for (i, v) in pg.iter().enumerate() {
            want[i] = r.add(&want[i], v);
        }
        while want.last() == Some(&0) {
            want.pop();
        }
        prop_assert_eq!(s, want);
    }
}

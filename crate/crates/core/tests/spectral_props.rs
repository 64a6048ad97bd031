use markoff_core::exact_rings::rational::{int, rat};
use markoff_core::exact_rings::ring::{CycloKappa, FpK, FpKappa, QKappa};
use markoff_core::exact_rings::{CoeffRing, CycloElem, KPoly, Rational, ZPoly};
use markoff_core::ffield::{primes_in, quad_char, Fp};
use markoff_core::markoff::{enumerate_orbits, Generators};
use markoff_core::spectral::qn::{at_kappa, e_vec, f_vec, fj_at_x_closed, pair, published_qn_coefficients};
use markoff_core::spectral::*;
use markoff_core::trired::{phi, phi_x, Reducer, TriPoly};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn mn_small_blocks() {
    assert_eq!(build_mn(0), vec![vec![2]]);
    assert_eq!(a_block(1), vec![vec![0, 2], vec![2, 0]]);
    assert_eq!(a_block(2), vec![vec![0, 1, 0], vec![2, 0, 2], vec![0, 1, 0]]);
    let m1 = build_mn(1);
    assert_eq!(m1, vec![vec![0, 2, 0], vec![2, 0, 0], vec![0, 1, 2]]);
    for n in 0..8u32 {
        assert_eq!(build_mn(n).len() as u32, (n * n + 3 * n + 2) / 2);
        assert_eq!(BnBasis::new(n).dim() as u32, (n * n + 3 * n + 2) / 2);
    }
}

#[test]
fn an_eigen_examples() {
    let i = CycloElem::zeta(4);
    let v = an_eigenvector(2, &i).unwrap();
    assert_eq!(v, vec![CycloElem::one(4), CycloElem::zero(4), CycloElem::from_int(4, -1)]);
    assert!(verify_an_eigen(2, &i).unwrap());
    let m1 = CycloElem::from_int(2, -1);
    assert_eq!(an_eigenvector(1, &m1).unwrap(), vec![CycloElem::one(2), m1.clone()]);
    assert!(verify_an_eigen(1, &m1).unwrap());
    assert!(verify_an_eigen(3, &CycloElem::zeta(6)).unwrap());
    assert!(verify_an_eigen(3, &CycloElem::zeta(8)).is_err());
    for n in 1..=8u32 {
        for k in 0..2 * n as i64 {
            assert!(verify_an_eigen(n, &CycloElem::zeta_pow(2 * n as u64, k)).unwrap());
        }
    }
}

#[test]
fn generalized_eigenvectors_first_three() {
    let s = gen_eigen_lambda2(4).unwrap();
    let d = s.vectors[0].len();
    let tail = |v: &Vec<Rational>, k: usize| v[d - k..].to_vec();
    assert_eq!(tail(&s.vectors[0], 3), vec![int(0), int(0), int(1)]);
    assert!(s.vectors[0][..d - 1].iter().all(|x| x.is_zero()));
    assert_eq!(tail(&s.vectors[1], 3), vec![int(1), int(1), int(0)]);
    let six = |n| rat(n, 6);
    assert_eq!(tail(&s.vectors[2], 6), vec![six(4), six(8), six(4), six(1), six(0), six(0)]);
    assert!(s.vectors[2][..d - 6].iter().all(|x| x.is_zero()));
}

#[test]
fn generalized_eigen_recursion_as_polynomials() {
    // Φ_x(x𝓅_n) = 2𝓅_n + (x²−κ)𝓅_{n−1}, with both sides reduced by Φ_x
    for n in 1..=4u32 {
        let s = gen_eigen_lambda2(n).unwrap();
        let pn = s.poly_own_basis(n);
        let pm = s.poly_own_basis(n - 1);
        let x2k = TriPoly::mono(QKappa, 2, 0, 0).sub(&TriPoly::constant(QKappa, KPoly::kappa()));
        let mut red = Reducer::new(QKappa);
        let lhs = red.phi_x(&pn.shift(1, 0, 0));
        let rhs = red.phi_x(&pn.scale(&KPoly::from_int(2)).add(&x2k.mul(&pm)));
        assert_eq!(lhs, rhs, "n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn phi_to_mat(n in 1u32..=4, seed in proptest::collection::vec(-3i64..4, 15)) {
        let d = BnBasis::new(n).dim();
        let mut v: Vec<KPoly> = (0..d).map(|i| KPoly::from_int(seed[i % seed.len()] + i as i64 % 3)).collect();
        v[d - 1] = KPoly::zero();
        prop_assert!(check_phi_to_mat(n, &v).unwrap());
    }

    #[test]
    fn kernel_form_vanishes(c in proptest::collection::vec(-5i64..6, 1..4)) {
        let r = QKappa;
        let ft = c.iter().enumerate().fold(TriPoly::zero(r.clone()), |acc, (i, v)| {
            acc.add(&TriPoly::mono(r.clone(), 2 * i as u32, 0, 0).scale(&KPoly::from_int(*v)))
        });
        let x24 = TriPoly::mono(r.clone(), 2, 0, 0).sub(&TriPoly::constant(r.clone(), KPoly::from_int(4)));
        let x2k = TriPoly::mono(r.clone(), 2, 0, 0).sub(&TriPoly::constant(r.clone(), KPoly::kappa()));
        let f = ft.mul(&x24).shift(0, 2, 0).sub(&ft.mul(&x2k).scale(&KPoly::from_int(2)));
        prop_assert!(phi_x(&f).is_zero());
    }
}

#[test]
fn phi_to_mat_rejects_nonzero_last_entry() {
    let d = BnBasis::new(2).dim();
    assert!(check_phi_to_mat(2, &vec![KPoly::one(); d]).is_err());
}

#[test]
fn eigen_poly_n2_lambda0() {
    // ζ = i: y⁴ − y²z² + ½(x²−κ)y²
    let v = mn_eigenvector(2, 1).unwrap();
    let want = [1i64, 0, -1];
    for (a, b) in v.iter().zip(want) {
        assert_eq!(*a, CycloElem::from_int(4, b));
    }
    assert_eq!(v[3], CycloElem::from_rational(4, rat(1, 2)));
    assert!(v[4].is_zero() && v[5].is_zero());
}

#[test]
fn eigen_poly_plus_is_monic_degree_2n() {
    for n in 2..=5u32 {
        for k in 1..2 * n as i64 {
            if num_integer::gcd(k, 2 * n as i64) != 1 {
                assert!(mn_eigenvector(n, k).is_err());
                continue;
            }
            let p = even_part(&eigen_poly(n, k).unwrap());
            let r = CycloKappa { m: 2 * n as u64 };
            let v = phi(&p);
            assert_eq!(v.len(), 2 * n as usize + 1, "n={n} k={k}");
            assert_eq!(v[2 * n as usize], r.one(), "n={n} k={k}");
        }
    }
}

#[test]
fn eigen_polynomial_orbit_sums_vanish() {
    for p in primes_in(5, 31) {
        for k in 0..p as i64 {
            if k as u64 == 4 {
                continue;
            }
            let r = FpK::new(p, k);
            let half = r.inv(&2).unwrap();
            let f = TriPoly::mono(r, 0, 4, 0)
                .sub(&TriPoly::mono(r, 0, 2, 2))
                .add(&TriPoly::mono(r, 2, 2, 0).sub(&TriPoly::mono(r, 0, 2, 0).scale(&(k.rem_euclid(p as i64) as u64))).scale(&half));
            for o in enumerate_orbits(p, k, Generators::FirstCoord).unwrap() {
                if o[0][0] == 0 {
                    continue;
                }
                let s = o.iter().fold(0u64, |acc, t| r.add(&acc, &f.eval(&t[0], &t[1], &t[2])));
                assert_eq!(s, 0, "p={p} k={k} α={}", o[0][0]);
            }
        }
    }
}

#[test]
fn f_n_examples() {
    let r = QKappa;
    let x2 = TriPoly::mono(r.clone(), 2, 0, 0);
    let x2k = x2.sub(&TriPoly::constant(r.clone(), KPoly::kappa()));
    let x24 = x2.sub(&TriPoly::constant(r.clone(), KPoly::from_int(4)));
    let half = KPoly::constant(rat(1, 2));
    let f1 = x2k.sub(&x24.shift(0, 2, 0).scale(&half));
    assert_eq!(fn_poly(&r, 1).unwrap(), f1);
    let f2 = x2k
        .pow(2)
        .sub(&x24.mul(&x2k).shift(0, 2, 0).scale(&KPoly::from_int(2)))
        .add(&x24.pow(2).shift(0, 4, 0).scale(&half));
    assert_eq!(fn_poly(&r, 2).unwrap(), f2);
    assert!(phi(&f1).is_empty());
}

#[test]
fn gfn_top_coefficients() {
    for n in 2..=7u32 {
        for g in [KPoly::one(), KPoly::from_ints(&[0, 1]), KPoly::from_ints(&[1, -2, 1])] {
            let r = QKappa;
            let mut gx = TriPoly::zero(r.clone());
            for (i, c) in g.coeffs().iter().enumerate() {
                gx.add_term((2 * i as u32, 0, 0), KPoly::constant(c.clone()));
            }
            let got: Vec<KPoly> = phi(&gx.mul(&fn_poly(&r, n).unwrap())).into_iter().step_by(2).collect();
            let want = gfn_prediction(n, &g);
            let b = gfn_bound(n) as usize;
            for t in b + 1..got.len().max(want.len()) {
                let a = got.get(t).cloned().unwrap_or_else(KPoly::zero);
                let w = want.get(t).cloned().unwrap_or_else(KPoly::zero);
                assert_eq!(a, w, "n={n} g={g} t={t}");
            }
        }
    }
}

#[test]
fn lambda_class_examples() {
    let c = lambda_classes(5, 5);
    assert_eq!(c.classes.len(), 2);
    assert!(c.classes.iter().all(|x| x.ord == 10));
    let c = lambda_classes(5, 10);
    assert_eq!(c.classes.len(), 4);
    assert_eq!(c.printed_m, 3);
    assert_eq!(class_order(2, 1), 4);
    assert_eq!(n_d(5).unwrap(), 20);
    assert_eq!(n_d(9).unwrap(), 45);
    assert_eq!(n_d(8).unwrap(), 48);
    assert!(n_d(6).is_err());
}

/// Brute-force order of `e^{iπk/n}` in the rotation convention.
fn brute_class_order(n: u32, k: u32) -> u64 {
    let m = 2 * n as u64;
    let o = (1..=m).find(|t| (k as u64 * t) % m == 0).unwrap();
    if o % 2 == 1 {
        2 * o
    } else {
        o
    }
}

#[test]
fn class_orders_match_brute_force() {
    for n in 1..40u32 {
        for k in 1..n {
            assert_eq!(class_order(n, k), brute_class_order(n, k));
        }
    }
}

#[test]
fn g_dn_examples() {
    assert_eq!(g_dn_poly(5, 5).unwrap(), ZPoly::one());
    assert_eq!(g_dn_poly(2, 2).unwrap(), ZPoly::one());
    let g = g_dn_poly(8, 8).unwrap();
    assert_eq!(g, ZPoly::from_ints(&[0, 0, -2, 0, 1]));
    let c = g_dn_check(5, 5).unwrap();
    assert_eq!(c.chebyshev, Some(ZPoly::from_ints(&[0, 0, 1])));
    assert!(c.chebyshev_violations.is_empty());
}

#[test]
fn g_dn_root_sets_and_chebyshev_guard() {
    for d in [2u32, 3, 4, 5, 7, 8, 9] {
        let nd = n_d(d).unwrap();
        for n in 1..=nd.min(40) {
            if (2 * n) % d != 0 {
                continue;
            }
            let c = g_dn_check(d, n).unwrap();
            assert!(c.root_product.coeffs().iter().skip(1).step_by(2).all(|x| x.is_zero()), "odd g d={d} n={n}");
            assert!(c.chebyshev_violations.is_empty(), "d={d} n={n} {:?}", c.chebyshev_violations);
        }
    }
}

#[test]
fn qn_examples() {
    for p in [13u64, 17] {
        let q1 = qn_direct_symbolic(1, p).unwrap();
        assert!(q1.coords[0].is_empty());
        let r = FpKappa { p };
        let want: Vec<Vec<u64>> = f_vec(p, 0)
            .iter()
            .zip(e_vec(p, 0))
            .map(|(f, e)| r.add(&r.scale_int(f, -2), &r.mul(&r.from_int(2), &r.mul(&e, &KPoly::from_ints(&[4, -1]).coeffs().iter().map(|c| r.from_rational(c).unwrap().first().copied().unwrap_or(0)).collect()))))
            .collect();
        assert_eq!(q1.coords, want, "p={p}");
        let q2 = qn_direct_symbolic(2, p).unwrap();
        let k4 = r.mul(&r.kappa(), &r.sub(&r.from_int(4), &r.kappa()));
        assert_eq!(q2.coords[0], r.neg(&k4));
        assert_eq!(q2.coords[1], r.neg(&r.half(&k4).unwrap()));
    }
}

#[test]
fn qn_direct_matches_published_table() {
    for p in [13u64, 101] {
        for n in 1..=4u32 {
            assert_eq!(qn_direct_symbolic(n, p).unwrap(), qn_published(n, p).unwrap(), "n={n} p={p}");
        }
    }
    let d = qn_direct(4, 101, 10).unwrap();
    assert_eq!(d, qn_formula(4, 101, 10).unwrap());
}

#[test]
fn qn_direct_matches_closed_form() {
    for p in [13u64, 17, 101] {
        for n in 1..=6u32 {
            if n as u64 > (p - 1) / 2 {
                continue;
            }
            assert_eq!(qn_direct_symbolic(n, p).unwrap(), qn_closed_form(n, p).unwrap(), "n={n} p={p}");
        }
    }
}

#[test]
fn published_table_rederived() {
    for n in 1..=4u32 {
        assert_eq!(derive_ef_coefficients(n).unwrap(), published_qn_coefficients(n).unwrap(), "n={n}");
    }
}

#[test]
fn y_vector_examples() {
    for p in [101u64, 103] {
        for k in [1i64, 2, 5, 7, 10] {
            let y = y_vectors(p, k).unwrap();
            assert_eq!(y.y_0[1], 1);
            assert_eq!(y.y_0[2], p - 12);
            assert!(y.y_0.iter().enumerate().all(|(i, v)| i == 1 || i == 2 || *v == 0));
            let ku = k as u64;
            let f = FpK::new(p, k);
            // e_j(y_κ) = κ^j, e_0(y_κ) = 3
            assert_eq!(y.y_kappa[0], 3);
            for j in 1..y.y_kappa.len() {
                assert_eq!(y.y_kappa[j], f.pow(&ku, j as u64));
            }
            let yp = y.y_p.clone().unwrap();
            let chi = quad_char(Fp::new(p, k)) as i64;
            let quarter = f.inv(&4).unwrap();
            for j in 0..8usize {
                let fj = at_kappa(p, &f_vec(p, j), ku);
                let cb = f.from_bigint(&markoff_core::exact_rings::rational::binomial(2 * j as u64, j as u64));
                // f_j(y_p) = (κ/4 − 1)^j binom(2j, j)
                let want = f.mul(&f.pow(&f.sub(&f.mul(&ku, &quarter), &1), j as u64), &cb);
                assert_eq!(pair(p, &fj, &yp), want, "p={p} k={k} j={j}");
                // f_j(y_ℝ) = (2κ^j/(2j+1))(1 − χ Σ_{i≤j} binom(2i,i)(1/4 − 1/κ)^i)
                let w = f.sub(&quarter, &f.inv(&ku).unwrap());
                let mut s = 0;
                for i in 0..=j as u64 {
                    let c = f.from_bigint(&markoff_core::exact_rings::rational::binomial(2 * i, i));
                    s = f.add(&s, &f.mul(&c, &f.pow(&w, i)));
                }
                let inner = f.sub(&1, &f.mul(&f.from_int(chi), &s));
                let fr = f.mul(&f.mul(&f.mul(&2, &f.pow(&ku, j as u64)), &f.inv(&f.from_int(2 * j as i64 + 1)).unwrap()), &inner);
                assert_eq!(pair(p, &fj, &y.y_r), fr, "p={p} k={k} j={j}");
                if j == 0 {
                    continue;
                }
                // f_j(y_κ) = (4j+2) f_j(y_ℝ) + χ(4−κ) f_j(y_p)
                let rhs = f.add(&f.mul(&f.from_int(4 * j as i64 + 2), &fr), &f.mul(&f.from_int(chi), &f.mul(&f.sub(&4, &ku), &want)));
                assert_eq!(pair(p, &fj, &y.y_kappa), rhs, "p={p} k={k} j={j}");
            }
            // f_0(y_κ) = 12 − (2 + χ)κ
            let f0 = at_kappa(p, &f_vec(p, 0), ku);
            assert_eq!(pair(p, &f0, &y.y_kappa), f.sub(&12, &f.mul(&f.from_int(2 + chi), &ku)));
        }
    }
}

#[test]
fn centbinom_identity() {
    let (l, r) = centbinom_sides(3, 1);
    assert_eq!(l, int(140));
    assert_eq!(r, int(140));
    for n in 0..=6u64 {
        for j in 0..=n {
            let (l, r) = centbinom_sides(n, j);
            assert_eq!(l, r, "n={n} j={j}");
        }
    }
}

#[test]
fn lemma_7_8_closed_form() {
    for p in [101u64, 103] {
        for k in [1u64, 5, 7, 10] {
            for j in [0u64, 1, 2, 5] {
                let fj = at_kappa(p, &f_vec(p, j as usize), k);
                for t in [1u64, 2, 3, 9, 50] {
                    let mut x = vec![1u64];
                    for _ in 1..fj.len() {
                        x.push(x.last().unwrap() * t % p);
                    }
                    assert_eq!(fj_at_x_closed(p, k, j, t), Some(pair(p, &fj, &x)), "p={p} k={k} j={j} t={t}");
                }
            }
        }
    }
}

#[test]
fn local_determinant_values() {
    for p in [101u64, 103] {
        for k in [1i64, 5, 7] {
            let d = local_determinants(p, k).unwrap();
            assert!(d.lemma_7_7 && d.lemma_7_8);
            if d.chi == 1 {
                assert_eq!(d.det2, d.expected2, "p={p} k={k}");
            } else {
                assert_eq!(d.det3, d.expected3, "p={p} k={k}");
            }
        }
    }
}

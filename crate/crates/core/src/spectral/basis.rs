use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::exact_rings::ring::{CycloAt, CycloKappa, QKappa};
use crate::exact_rings::{CoeffRing, CycloElem, KPoly, PolyMatrix, Rational};
use crate::trired::{PhiXResult, Reducer, TriPoly};

/// The basis 𝓑ⁿ: `(x²−κ)^{n−i} y^j z^k` with `j + k = 2i`, `j ≥ k`, listed by
/// decreasing i, then decreasing j. Entries are `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnBasis {
    pub n: u32,
    pub elems: Vec<(u32, u32, u32)>,
}

impl BnBasis {
    pub fn new(n: u32) -> Self {
        let mut elems = Vec::new();
        for i in (0..=n).rev() {
            for k in 0..=i {
                elems.push((i, 2 * i - k, k));
            }
        }
        BnBasis { n, elems }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    /// Index of the first element of block `i`.
    pub fn offset(&self, i: u32) -> usize {
        (i + 1..=self.n).map(|b| b as usize + 1).sum()
    }

    /// The polynomial with coefficient vector `v`.
    pub fn to_tripoly<R: CoeffRing>(&self, ring: &R, v: &[R::Elem]) -> TriPoly<R> {
        assert_eq!(v.len(), self.dim(), "coefficient vector length");
        let x2k = TriPoly::mono(ring.clone(), 2, 0, 0).sub(&TriPoly::constant(ring.clone(), ring.kappa()));
        let pows: Vec<TriPoly<R>> = (0..=self.n).map(|e| x2k.pow(e)).collect();
        let mut out = TriPoly::zero(ring.clone());
        for (&(i, j, k), c) in self.elems.iter().zip(v) {
            if ring.is_zero(c) {
                continue;
            }
            out = out.add(&pows[(self.n - i) as usize].shift(0, j, k).scale(c));
        }
        out
    }
}

/// The block `A_i` as an `(i+1) × (i+1)` integer matrix.
pub fn a_block(i: u32) -> Vec<Vec<i64>> {
    let s = i as usize + 1;
    let mut a = vec![vec![0i64; s]; s];
    if i == 0 {
        a[0][0] = 2;
        return a;
    }
    for c in 0..s {
        if c == 0 {
            a[1][0] = 2;
        } else if c == s - 1 {
            a[s - 2][c] = 2;
        } else {
            a[c - 1][c] = 1;
            a[c + 1][c] = 1;
        }
    }
    a
}

/// `M_n` as a dense integer matrix in 𝓑ⁿ coordinates.
pub fn build_mn(n: u32) -> Vec<Vec<i64>> {
    let b = BnBasis::new(n);
    let d = b.dim();
    let mut m = vec![vec![0i64; d]; d];
    for i in 0..=n {
        let o = b.offset(i);
        for (r, row) in a_block(i).iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m[o + r][o + c] = *v;
            }
        }
        if i >= 1 {
            let below = b.offset(i - 1);
            for c in 1..=i as usize {
                m[below + c - 1][o + c] = 1;
            }
        }
    }
    m
}

/// `M_n` as a [`PolyMatrix`] of constants.
pub fn mn_poly_matrix(n: u32) -> PolyMatrix {
    PolyMatrix::from_rows(
        build_mn(n).into_iter().map(|r| r.into_iter().map(KPoly::from_int).collect()).collect(),
    )
}

/// `M v` over any coefficient ring.
pub fn mat_vec<R: CoeffRing>(r: &R, m: &[Vec<i64>], v: &[R::Elem]) -> Vec<R::Elem> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(r.zero(), |acc, (a, x)| if *a == 0 { acc } else { r.add(&acc, &r.scale_int(x, *a)) })
        })
        .collect()
}

/// Order of ζ as a root of unity in ℚ(ζ_m), if it is one.
fn root_order(z: &CycloElem) -> Option<u64> {
    let m = z.conductor();
    let lim = 2 * m;
    let mut acc = z.clone();
    for k in 1..=lim {
        if acc == CycloElem::one(m) {
            return Some(k);
        }
        acc = acc.mul(z);
    }
    None
}

/// `(1, ζ+ζ⁻¹, …, ζ^{n−1}+ζ^{1−n}, ζⁿ)`.
pub fn an_eigenvector(n: u32, zeta: &CycloElem) -> Result<Vec<CycloElem>> {
    if n == 0 {
        return domain("A_n eigenvector needs n >= 1");
    }
    let m = zeta.conductor();
    if zeta.pow(2 * n as u64) != CycloElem::one(m) {
        return domain(format!("ζ is not a {}-th root of unity", 2 * n));
    }
    let inv = zeta.inv().expect("root of unity is invertible");
    let mut v = vec![CycloElem::one(m)];
    for k in 1..n as u64 {
        v.push(zeta.pow(k).add(&inv.pow(k)));
    }
    v.push(zeta.pow(n as u64));
    Ok(v)
}

/// Checks `A_n v = (ζ+ζ⁻¹) v` for the eigenvector of [`an_eigenvector`].
pub fn verify_an_eigen(n: u32, zeta: &CycloElem) -> Result<bool> {
    let v = an_eigenvector(n, zeta)?;
    let r = CycloAt { m: zeta.conductor(), kappa: CycloElem::zero(zeta.conductor()) };
    let lam = zeta.add(&zeta.inv().unwrap());
    let av = mat_vec(&r, &a_block(n), &v);
    Ok(av.iter().zip(&v).all(|(a, x)| *a == lam.mul(x)))
}

/// Solves `A x = b` over a field; `None` when singular.
pub fn solve_square<R: CoeffRing>(r: &R, a: &[Vec<R::Elem>], b: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let n = a.len();
    let mut m: Vec<Vec<R::Elem>> = a.iter().zip(b).map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect()).collect();
    for k in 0..n {
        let piv = (k..n).find(|&i| !r.is_zero(&m[i][k]))?;
        m.swap(piv, k);
        let inv = r.inv(&m[k][k])?;
        for j in k..=n {
            m[k][j] = r.mul(&m[k][j], &inv);
        }
        for i in 0..n {
            if i != k && !r.is_zero(&m[i][k]) {
                let f = m[i][k].clone();
                for j in k..=n {
                    let t = r.mul(&f, &m[k][j]);
                    m[i][j] = r.sub(&m[i][j], &t);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Eigenvector of `M_n` for `λ = ζ + ζ⁻¹` with ζ a primitive `2n`-th root
/// (`ζ = ζ_{2n}^k`, `gcd(k, 2n) = 1`), over ℚ(ζ_{2n}). The final entry is zero.
pub fn mn_eigenvector(n: u32, k: i64) -> Result<Vec<CycloElem>> {
    if !(1..=12).contains(&n) {
        return domain(format!("eigenvector construction supports 1 <= n <= 12, got {n}"));
    }
    let m = 2 * n as u64;
    let zeta = CycloElem::zeta_pow(m, k);
    if root_order(&zeta) != Some(m) {
        return domain(format!("ζ_{m}^{k} is not primitive"));
    }
    let lam = zeta.add(&zeta.inv().unwrap());
    let r = CycloAt { m, kappa: CycloElem::zero(m) };
    let basis = BnBasis::new(n);
    let mut v = vec![CycloElem::zero(m); basis.dim()];
    for (t, x) in an_eigenvector(n, &zeta)?.into_iter().enumerate() {
        v[t] = x;
    }
    for i in (0..n).rev() {
        let o = basis.offset(i);
        let up = basis.offset(i + 1);
        let s = i as usize + 1;
        let rhs: Vec<CycloElem> = (0..s).map(|row| v[up + row + 1].neg()).collect();
        let a: Vec<Vec<CycloElem>> = a_block(i)
            .iter()
            .enumerate()
            .map(|(ri, row)| {
                row.iter()
                    .enumerate()
                    .map(|(ci, x)| {
                        let e = CycloElem::from_int(m, *x);
                        if ri == ci {
                            e.sub(&lam)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        if i == 0 {
            if !rhs[0].is_zero() {
                return Err(Error::Validation(vec![format!("eigenvector for n={n}, k={k} has nonzero final entry")]));
            }
            break;
        }
        let x = solve_square(&r, &a, &rhs).ok_or_else(|| Error::Domain(format!("A_{i} − λ singular")))?;
        for (t, e) in x.into_iter().enumerate() {
            v[o + t] = e;
        }
    }
    Ok(v)
}

/// The eigen-polynomial 𝓅 over ℚ(ζ_{2n})[κ].
pub fn eigen_poly(n: u32, k: i64) -> Result<TriPoly<CycloKappa>> {
    let v = mn_eigenvector(n, k)?;
    let r = CycloKappa { m: 2 * n as u64 };
    let coeffs: Vec<Vec<CycloElem>> = v.iter().map(|c| crate::exact_rings::ring::cyclo_const(&r, c)).collect();
    Ok(BnBasis::new(n).to_tripoly(&r, &coeffs))
}

/// Even part `𝓅⁺`: the monomials with even powers of y and z.
pub fn even_part<R: CoeffRing>(f: &TriPoly<R>) -> TriPoly<R> {
    let mut out = TriPoly::zero(f.ring.clone());
    for (e, c) in f.terms() {
        if e.1 % 2 == 0 && e.2 % 2 == 0 {
            out.add_term(*e, c.clone());
        }
    }
    out
}

/// Checks `Φ_x(x f) = Φ_x(g) + ω x(x²−κ)ⁿ` with `g ↔ M_n v`, for `v` with final entry `ω = 0`.
pub fn check_phi_to_mat(n: u32, v: &[KPoly]) -> Result<bool> {
    let basis = BnBasis::new(n);
    if v.len() != basis.dim() {
        return domain(format!("vector length {} does not match dim 𝓑^{n} = {}", v.len(), basis.dim()));
    }
    if !v.last().unwrap().is_zero() {
        return domain("final entry must be zero (combination of 𝓑ⁿ ∖ 𝓑ⁿ_0)");
    }
    let r = QKappa;
    let f = basis.to_tripoly(&r, v);
    let g = basis.to_tripoly(&r, &mat_vec(&r, &build_mn(n), v));
    let mut red = Reducer::new(r.clone());
    let lhs: PhiXResult<QKappa> = red.phi_x(&f.shift(1, 0, 0));
    let rhs = red.phi_x(&g);
    Ok(lhs == rhs)
}

/// Generalized eigenvectors of `M_n` for λ = 2: `M p_0 = 2p_0`, `M p_i = 2p_i + p_{i−1}`,
/// normalized by `p_{i,i} ∝ (1, 2, …, 2, 1)` and `p_{i,0} = 0` for `i ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenEigenSet {
    pub n: u32,
    pub vectors: Vec<Vec<Rational>>,
}

impl GenEigenSet {
    /// `𝓅_i` written in 𝓑^i, over ℚ[κ].
    pub fn poly_own_basis(&self, i: u32) -> TriPoly<QKappa> {
        let big = BnBasis::new(self.n);
        let small = BnBasis::new(i);
        let o = big.offset(i);
        let v: Vec<KPoly> = self.vectors[i as usize][o..].iter().map(|q| KPoly::constant(q.clone())).collect();
        small.to_tripoly(&QKappa, &v)
    }

    /// `𝓅_i` written in 𝓑ⁿ, i.e. `(x²−κ)^{n−i} 𝓅_i`.
    pub fn poly(&self, i: u32) -> TriPoly<QKappa> {
        let v: Vec<KPoly> = self.vectors[i as usize].iter().map(|q| KPoly::constant(q.clone())).collect();
        BnBasis::new(self.n).to_tripoly(&QKappa, &v)
    }
}

fn kernel_head(i: u32) -> Vec<Rational> {
    (0..=i).map(|k| if k == 0 || k == i { Rational::one() } else { Rational::from_integer(2.into()) }).collect()
}

pub fn gen_eigen_lambda2(n: u32) -> Result<GenEigenSet> {
    let basis = BnBasis::new(n);
    let d = basis.dim();
    let mn = build_mn(n);
    let mut vectors: Vec<Vec<Rational>> = Vec::new();
    let mut p0 = vec![Rational::zero(); d];
    p0[d - 1] = Rational::one();
    vectors.push(p0);
    for i in 1..=n {
        // unknowns: scale a, then blocks i−1..1 (block 0 is zero)
        let head = kernel_head(i);
        let oi = basis.offset(i);
        let lo = oi + i as usize + 1;
        let hi = basis.offset(0);
        let nunk = 1 + (hi - lo);
        let rows: Vec<usize> = (lo..d).collect();
        let prev = &vectors[i as usize - 1];
        let mut aug: Vec<Vec<Rational>> = Vec::new();
        for &r in &rows {
            let mut row = vec![Rational::zero(); nunk + 1];
            for (t, h) in head.iter().enumerate() {
                let c = mn[r][oi + t];
                if c != 0 {
                    row[0] += h * Rational::from_integer(c.into());
                }
            }
            for u in lo..hi {
                let mut c = mn[r][u];
                if r == u {
                    c -= 2;
                }
                if c != 0 {
                    row[1 + u - lo] = Rational::from_integer(c.into());
                }
            }
            row[nunk] = prev[r].clone();
            aug.push(row);
        }
        if aug.len() != nunk {
            return Err(Error::Validation(vec![format!("system for p_{i} is {}x{}", aug.len(), nunk)]));
        }
        let sol = crate::exact_rings::matrix::solve_augmented(aug)
            .ok_or_else(|| Error::Validation(vec![format!("singular system for p_{i}")]))?;
        let mut p = vec![Rational::zero(); d];
        for (t, h) in head.iter().enumerate() {
            p[oi + t] = h * &sol[0];
        }
        for u in lo..hi {
            p[u] = sol[1 + u - lo].clone();
        }
        vectors.push(p);
    }
    let set = GenEigenSet { n, vectors };
    verify_gen_eigen(&set)?;
    Ok(set)
}

/// Checks the defining relations of a [`GenEigenSet`].
pub fn verify_gen_eigen(s: &GenEigenSet) -> Result<()> {
    let mn = build_mn(s.n);
    let two = Rational::from_integer(2.into());
    let mut errs = Vec::new();
    for (i, p) in s.vectors.iter().enumerate() {
        let mp: Vec<Rational> = mn
            .iter()
            .map(|row| row.iter().zip(p).map(|(a, x)| x * Rational::from_integer((*a).into())).sum())
            .collect();
        for (r, v) in mp.iter().enumerate() {
            let mut want = &two * &p[r];
            if i > 0 {
                want += &s.vectors[i - 1][r];
            }
            if *v != want {
                errs.push(format!("p_{i} fails row {r}"));
                break;
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(errs))
    }
}

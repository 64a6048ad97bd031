use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_deadline, domain, Result};
use crate::exact_rings::rational::lcm_denoms;
use crate::exact_rings::ring::{FpK, QKappa};
use crate::exact_rings::{CoeffRing, KPoly, PolyMatrix, Rational, ZPoly};
use crate::spectral::{fn_poly, g_dn_poly, lambda_classes, n_d};
use crate::trired::{cache_build_until, PhiTable, Reducer, TriPoly};

/// One polynomial `x^{2m} g_{d,n} f_n` to reduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub n: u32,
    pub m: u32,
}

/// A value of n that contributes no columns, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipEntry {
    pub n: u32,
    pub reason: String,
}

/// Tunables for planning and minor selection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overrides {
    /// First and last coefficient index (of `x^{2i}`) kept as rows.
    pub rows: Option<(u32, u32)>,
    /// Extra `m` values per n beyond the class budget.
    pub extra_m: u32,
    /// Column ceiling; defaults to `n_d`.
    pub max_columns: Option<usize>,
    /// Randomized minors tried after the rank-profile minor.
    pub alternates: usize,
    /// Seed for the randomized choices.
    pub seed: u64,
    /// Stop folding once the extracted element verifies.
    pub stop_when_true: bool,
    /// Wall-clock budget for the fold, in seconds.
    #[serde(default)]
    pub time_limit_secs: Option<u64>,
}

impl Default for Overrides {
    fn default() -> Self {
        Overrides { rows: None, extra_m: 0, max_columns: None, alternates: 16, seed: 0x6d61726b6f6666, stop_when_true: true, time_limit_secs: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnPlan {
    pub d: u32,
    pub n_d: u32,
    pub row_lo: u32,
    pub row_hi: u32,
    pub columns: Vec<ColumnSpec>,
    pub skipped: Vec<SkipEntry>,
}

impl ColumnPlan {
    pub fn rows(&self) -> usize {
        (self.row_hi + 1).saturating_sub(self.row_lo) as usize
    }
}

/// Columns for `n ≤ n_d` with `d | 2n`, `m` below the number of classes
/// `{±λ} ⊂ Λ̂̂_n` with `2d | ord(λ)`, capped at `n_d` columns.
pub fn plan(d: u32, ov: &Overrides) -> Result<ColumnPlan> {
    if d < 2 {
        return domain(format!("certification needs d >= 2, got {d}"));
    }
    let nd = n_d(d)?;
    let (row_lo, row_hi) = ov.rows.unwrap_or((3, nd));
    if row_lo > row_hi {
        return domain(format!("empty row range {row_lo}..={row_hi}"));
    }
    let cap = ov.max_columns.unwrap_or(nd as usize);
    let mut columns = Vec::new();
    let mut skipped = Vec::new();
    for n in 1..=nd {
        if (2 * n) % d != 0 {
            continue;
        }
        let budget = lambda_classes(d, n).classes.len() as u32;
        if budget == 0 {
            skipped.push(SkipEntry { n, reason: format!("no class in Λ̂̂_{n} has order divisible by {}", 2 * d) });
            continue;
        }
        for m in 0..budget + ov.extra_m {
            if columns.len() < cap {
                columns.push(ColumnSpec { n, m });
            }
        }
    }
    Ok(ColumnPlan { d, n_d: nd, row_lo, row_hi, columns, skipped })
}

/// `x^{2m} g_{d,n}(x) f_n` over a coefficient ring.
pub fn column_poly<R: CoeffRing>(ring: &R, d: u32, c: ColumnSpec) -> Result<TriPoly<R>> {
    let g = g_dn_poly(d, c.n)?;
    let mut gx = TriPoly::zero(ring.clone());
    for (i, a) in g.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let Some(v) = ring.from_rational(&Rational::from_integer(a.clone())) else {
            return domain("g_{d,n} coefficient not representable");
        };
        gx.add_term((i as u32 + 2 * c.m, 0, 0), v);
    }
    Ok(gx.mul(&fn_poly(ring, c.n)?))
}

/// The integer matrix with its per-column scale factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltMatrix {
    pub rows: Vec<Vec<ZPoly>>,
    /// Column `j` equals `scales[j]` times the true coefficients.
    pub scales: Vec<BigInt>,
}

impl BuiltMatrix {
    pub fn ncols(&self) -> usize {
        self.scales.len()
    }

    pub fn select(&self, cols: &[usize]) -> Vec<Vec<ZPoly>> {
        self.rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect()
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_rows(self.rows.iter().map(|r| r.iter().map(|p| p.to_kpoly()).collect()).collect())
    }
}

fn x2_coeff(v: &[KPoly], i: u32) -> KPoly {
    v.get(2 * i as usize).cloned().unwrap_or_else(KPoly::zero)
}

/// Reduces every planned column with κ a variable and clears denominators per column.
/// A supplied table is used when it covers the needed monomials.
pub fn build_columns(p: &ColumnPlan, table: Option<&PhiTable>) -> Result<BuiltMatrix> {
    build_columns_until(p, table, None)
}

/// As [`build_columns`], giving up with a resource error once `deadline` passes.
pub fn build_columns_until(p: &ColumnPlan, table: Option<&PhiTable>, deadline: Option<Instant>) -> Result<BuiltMatrix> {
    let owned;
    let table = match table {
        Some(t) => Some(t),
        None => {
            let (mm, nn) = table_bounds(p)?;
            owned = cache_build_until(mm, nn, deadline)?;
            Some(&owned)
        }
    };
    let mut red = Reducer::new(QKappa);
    let nrows = p.rows();
    let mut rows = vec![Vec::with_capacity(p.columns.len()); nrows];
    let mut scales = Vec::with_capacity(p.columns.len());
    for &c in &p.columns {
        check_deadline(deadline, "building the matrix")?;
        let f = column_poly(&QKappa, p.d, c)?;
        let v = match table.and_then(|t| t.phi_even(&f)) {
            Some(v) => v,
            None => red.phi(&f),
        };
        let entries: Vec<KPoly> = (p.row_lo..=p.row_hi).map(|i| x2_coeff(&v, i)).collect();
        let l = lcm_denoms(entries.iter().flat_map(|e| e.coeffs()));
        let lq = Rational::from_integer(l.clone());
        for (r, e) in rows.iter_mut().zip(&entries) {
            r.push(e.scale(&lq).to_zpoly().expect("denominators cleared"));
        }
        scales.push(l);
    }
    Ok(BuiltMatrix { rows, scales })
}

/// One column reduced natively over 𝔽_p at a fixed κ, times the recorded scale.
pub fn build_column_at(p: &ColumnPlan, c: ColumnSpec, scale: &BigInt, prime: u64, kappa: i64) -> Result<Vec<u64>> {
    let ring = FpK::new(prime, kappa);
    let f = column_poly(&ring, p.d, c)?;
    let v = Reducer::new(ring).phi(&f);
    let s = ring.from_bigint(scale);
    Ok((p.row_lo..=p.row_hi)
        .map(|i| v.get(2 * i as usize).map(|x| ring.mul(x, &s)).unwrap_or(0))
        .collect())
}

/// Table bounds `(m_max, n_max)` covering every planned column.
pub fn table_bounds(p: &ColumnPlan) -> Result<(u32, u32)> {
    let mut mm = 0;
    let mut nn = 0;
    for c in &p.columns {
        let g = g_dn_poly(p.d, c.n)?;
        let dg = g.degree().unwrap_or(0) as u32 / 2;
        mm = mm.max(c.m + dg + c.n);
        nn = nn.max(c.n);
    }
    Ok((mm, nn))
}

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::fold::{fold_minors, split_smooth, verify_step, FoldStep};
use super::minors::{minor_candidates, probe, rank_profile, Probe};
use super::modular::det_poly;
use super::plan::{build_column_at, build_columns_until, plan, BuiltMatrix, ColumnPlan, Overrides};
use super::strip::{strip_consistent, strip_factors, verdict_holds, Stripped};
use crate::error::{check_deadline, Error, Result};
use crate::exact_rings::ZPoly;
use crate::spectral::printed_m;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinorRecord {
    pub columns: Vec<usize>,
    pub det: ZPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostics {
    pub rows: usize,
    pub columns: usize,
    /// Rank at the probe point.
    pub rank: usize,
    /// `(n, printed m_{d,n})` next to the enumerated budget used by the plan.
    pub printed_m: Vec<(u32, u64)>,
    pub common_factor: ZPoly,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub build_ms: u64,
    pub minors_ms: u64,
    pub fold_ms: u64,
}

/// Outcome of the certification algorithm with everything needed to re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema: u32,
    pub d: u32,
    pub overrides: Overrides,
    pub plan: ColumnPlan,
    #[serde(with = "super::dec::vec")]
    pub scales: Vec<BigInt>,
    pub matrix: Vec<Vec<ZPoly>>,
    pub fingerprint: String,
    pub probe: Probe,
    pub minors: Vec<MinorRecord>,
    pub steps: Vec<FoldStep>,
    pub element: ZPoly,
    pub strip: Option<Stripped>,
    pub verdict: Verdict,
    pub diagnostics: Diagnostics,
    pub timing: Timing,
    pub hash: String,
}

fn canon(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => out.push_str(&serde_json::to_string(&n.to_string()).unwrap()),
        Value::String(s) => out.push_str(&serde_json::to_string(s).unwrap()),
        Value::Array(a) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                canon(x, out);
            }
            out.push(']');
        }
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).unwrap());
                out.push(':');
                canon(&m[k], out);
            }
            out.push('}');
        }
    }
}

/// Canonical JSON: sorted keys, no whitespace, every number as a decimal string.
pub fn canonical_json<T: Serialize>(x: &T) -> Result<String> {
    let v = serde_json::to_value(x)?;
    let mut s = String::new();
    canon(&v, &mut s);
    Ok(s)
}

fn sha_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

/// Content hash of the matrix entries and column scales.
pub fn matrix_fingerprint(matrix: &[Vec<ZPoly>], scales: &[BigInt]) -> Result<String> {
    let scales: Vec<String> = scales.iter().map(|s| s.to_string()).collect();
    Ok(sha_hex(&canonical_json(&(matrix, scales))?))
}

impl Certificate {
    /// SHA-256 of the canonical form with the hash field blanked.
    pub fn content_hash(&self) -> Result<String> {
        let mut c = self.clone();
        c.hash.clear();
        Ok(sha_hex(&canonical_json(&c)?))
    }

    /// Hash of everything except timing and the hash itself; equal across
    /// reruns with the same inputs.
    pub fn reproducible_hash(&self) -> Result<String> {
        let mut c = self.clone();
        c.hash.clear();
        c.timing = Timing::default();
        Ok(sha_hex(&canonical_json(&c)?))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Certificate> {
        Ok(serde_json::from_str(s)?)
    }

    fn seal(mut self) -> Result<Certificate> {
        self.hash = self.content_hash()?;
        Ok(self)
    }
}

fn ms(d: Duration) -> u64 {
    d.as_millis() as u64
}

/// Runs the full pipeline for `d`. The time limit covers every phase; running
/// out before folding is a resource error, during folding an inconclusive verdict.
pub fn certify(d: u32, ov: &Overrides) -> Result<Certificate> {
    let p = plan(d, ov)?;
    let t0 = Instant::now();
    let m = build_columns_until(&p, None, ov.time_limit_secs.map(|s| t0 + Duration::from_secs(s)))?;
    let build_ms = ms(t0.elapsed());
    certify_matrix(p, m, ov, build_ms)
}

/// The pipeline after the matrix is built; `build_ms` counts against the time limit.
pub fn certify_matrix(p: ColumnPlan, m: BuiltMatrix, ov: &Overrides, build_ms: u64) -> Result<Certificate> {
    let d = p.d;
    let deadline = ov.time_limit_secs.map(|s| Instant::now() + Duration::from_millis((s * 1000).saturating_sub(build_ms)));
    let pr = probe(ov.seed);
    let rank = rank_profile(&m.rows, pr).len();
    let mut notes = Vec::new();
    let t1 = Instant::now();
    let cands = if m.rows.is_empty() { Vec::new() } else { minor_candidates(&m.rows, pr, ov.alternates, ov.seed) };
    let mut minors = Vec::with_capacity(cands.len());
    for c in cands {
        check_deadline(deadline, "computing minors")?;
        minors.push(MinorRecord { det: det_poly(&m.select(&c)), columns: c });
    }
    let minors_ms = ms(t1.elapsed());
    if minors.is_empty() {
        notes.push(format!("rank {rank} below {} rows: no invertible maximal minor", p.rows()));
    }

    let t2 = Instant::now();
    let dets: Vec<ZPoly> = minors.iter().map(|r| r.det.clone()).collect();
    let bound = 2 * p.n_d as u64;
    let stop = ov.stop_when_true;
    let folded = if dets.iter().any(|x| !x.is_zero()) {
        Some(fold_minors(&dets, |c| stop && split_smooth(c, bound).1 == BigInt::from(1), deadline)?)
    } else {
        None
    };
    let fold_ms = ms(t2.elapsed());
    let (steps, common) = match folded {
        Some(f) => {
            if f.timed_out {
                notes.push("time limit reached during the fold".into());
            }
            (f.steps, f.common)
        }
        None => (Vec::new(), ZPoly::zero()),
    };
    let element = steps.last().map(|s| s.element.clone()).unwrap_or_default();
    let strip = if element.is_zero() { None } else { Some(strip_factors(&element, d, p.n_d)?) };
    let verdict = if strip.as_ref().is_some_and(verdict_holds) { Verdict::True } else { Verdict::Inconclusive };
    let mut ns: Vec<u32> = p.columns.iter().map(|c| c.n).chain(p.skipped.iter().map(|s| s.n)).collect();
    ns.sort_unstable();
    ns.dedup();
    let diagnostics = Diagnostics {
        rows: p.rows(),
        columns: m.ncols(),
        rank,
        printed_m: ns.iter().map(|&n| (n, printed_m(d, n))).collect(),
        common_factor: common,
        notes,
    };
    let fingerprint = matrix_fingerprint(&m.rows, &m.scales)?;
    Certificate {
        schema: SCHEMA,
        d,
        overrides: ov.clone(),
        plan: p,
        scales: m.scales,
        matrix: m.rows,
        fingerprint,
        probe: pr,
        minors,
        steps,
        element,
        strip,
        verdict,
        diagnostics,
        timing: Timing { build_ms, minors_ms, fold_ms },
        hash: String::new(),
    }
    .seal()
}

fn shape_errors(c: &Certificate) -> Vec<String> {
    let mut errs = Vec::new();
    if c.schema != SCHEMA {
        errs.push(format!("schema {} unsupported", c.schema));
    }
    let rows = c.plan.rows();
    let cols = c.plan.columns.len();
    if c.matrix.len() != rows || c.matrix.iter().any(|r| r.len() != cols) {
        errs.push(format!("matrix is not {rows}×{cols}"));
    }
    if c.scales.len() != cols {
        errs.push("one scale per column expected".into());
    }
    for (k, mr) in c.minors.iter().enumerate() {
        let set: BTreeSet<usize> = mr.columns.iter().copied().collect();
        if mr.columns.len() != rows || set.len() != rows || set.iter().any(|&j| j >= cols) {
            errs.push(format!("minor {k} does not select {rows} distinct columns"));
        }
    }
    for (k, s) in c.steps.iter().enumerate() {
        if s.terms.iter().any(|(i, _)| *i >= c.minors.len()) {
            errs.push(format!("step {k} references a missing minor"));
        }
    }
    errs
}

/// Re-verifies a certificate from its recorded data, without reducing
/// anything: hash, matrix fingerprint, every minor determinant, every fold
/// identity, the strip and the verdict. Structural problems are a
/// validation error; a false claim gives `Ok(false)`.
pub fn recheck(c: &Certificate) -> Result<bool> {
    let errs = shape_errors(c);
    if !errs.is_empty() {
        return Err(Error::Validation(errs));
    }
    if c.content_hash()? != c.hash {
        return Ok(false);
    }
    if c.d != c.plan.d || plan(c.d, &c.overrides)? != c.plan {
        return Ok(false);
    }
    if matrix_fingerprint(&c.matrix, &c.scales)? != c.fingerprint {
        return Ok(false);
    }
    let bm = BuiltMatrix { rows: c.matrix.clone(), scales: c.scales.clone() };
    for mr in &c.minors {
        if det_poly(&bm.select(&mr.columns)) != mr.det {
            return Ok(false);
        }
    }
    let dets: Vec<ZPoly> = c.minors.iter().map(|r| r.det.clone()).collect();
    let mut prev: Option<&ZPoly> = None;
    for s in &c.steps {
        if !verify_step(prev, &dets, s) {
            return Ok(false);
        }
        prev = Some(&s.element);
    }
    if prev.cloned().unwrap_or_default() != c.element {
        return Ok(false);
    }
    let holds = match (&c.strip, c.element.is_zero()) {
        (None, true) => false,
        (Some(s), false) => {
            if !strip_consistent(&c.element, c.d, c.plan.n_d, s) {
                return Ok(false);
            }
            verdict_holds(s)
        }
        _ => return Ok(false),
    };
    Ok(holds == (c.verdict == Verdict::True))
}

/// Rebuilds sampled columns natively over 𝔽_p at the given κ values and
/// compares them with the recorded matrix reduced mod p.
pub fn spot_check(c: &Certificate, prime: u64, kappas: &[i64], columns: &[usize]) -> Result<bool> {
    for &j in columns {
        let Some(&spec) = c.plan.columns.get(j) else {
            return Err(Error::Validation(vec![format!("column {j} out of range")]));
        };
        for &k in kappas {
            let native = build_column_at(&c.plan, spec, &c.scales[j], prime, k)?;
            let x = k.rem_euclid(prime as i64) as u64;
            let recorded: Vec<u64> = c.matrix.iter().map(|r| r[j].eval_mod(x, prime)).collect();
            if native != recorded {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

//! Command-line front end for the Markoff reduction, orbit and certification tools.

pub mod cache;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use markoff_core::certify::{self, Certificate, Overrides, Verdict};
use markoff_core::exact_rings::rational::parse_rational;
use markoff_core::exact_rings::ring::{FpK, QAt, QKappa};
use markoff_core::exact_rings::{CoeffRing, KPoly, Rational};
use markoff_core::markoff::{orbit_report, verify_main1, Generators};
use markoff_core::nielsen::{nielsen_census, nielsen_orbits};
use markoff_core::spectral;
use markoff_core::trired::{fmt_upoly, parse_tripoly, Reducer};
use markoff_core::Error;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "markoff", version, about = "Markoff triples mod p: reduction, orbits and certification")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Reduce a polynomial in x, y, z with Φ (or Φ_x).
    Reduce {
        /// `sym` or a rational value.
        #[arg(long, default_value = "sym")]
        kappa: String,
        #[arg(long)]
        poly: String,
        /// Work over 𝔽_p (κ must then be a value).
        #[arg(long)]
        p: Option<u64>,
        /// Use Φ_x instead of Φ.
        #[arg(long)]
        x: bool,
    },
    /// Orbit decomposition of the surface mod p.
    Orbits {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        kappa: i64,
        #[arg(long, value_enum, default_value = "vieta")]
        gens: Gens,
    },
    /// Check the single-orbit theorem for every κ (or one κ) mod p.
    VerifyMain1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        kappa: Option<i64>,
    },
    /// Nielsen orbits of generating pairs of SL₂(𝔽_p).
    VerifyNielsen {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        kappa: Option<i64>,
        /// Largest p attempted.
        #[arg(long, default_value_t = 13)]
        bound: u64,
    },
    /// Spectral objects: q_n vectors, local determinants, λ classes, column plans.
    Spectral {
        #[command(subcommand)]
        what: SpectralCmd,
    },
    /// Run the certification algorithm for d.
    Certify {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        alternates: Option<usize>,
        /// Row range `lo,hi` of coefficient indices.
        #[arg(long, value_parser = parse_range)]
        rows: Option<(u32, u32)>,
        #[arg(long)]
        extra_m: Option<u32>,
        #[arg(long)]
        max_columns: Option<usize>,
        /// Fold every candidate minor instead of stopping at the first success.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        time_limit: Option<u64>,
        /// Load or store the Φ table at this path (default: $MARKOFF_CACHE).
        #[arg(long)]
        cache: bool,
    },
    /// Re-verify a certificate file.
    Recheck {
        #[arg(long)]
        cert: PathBuf,
        /// Also rebuild every column natively mod this prime at a few κ.
        #[arg(long)]
        spot_prime: Option<u64>,
    },
    /// Build, verify or describe the Φ table cache.
    Cache {
        #[command(subcommand)]
        what: CacheCmd,
    },
    /// Run the built-in checks.
    Selftest {
        #[arg(long, value_enum, default_value = "fast")]
        level: selftest::Level,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpectralCmd {
    /// q_n over 𝔽_p, symbolic in κ or at a value.
    Qn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "sym")]
        kappa: String,
        /// Use the closed form instead of direct reduction.
        #[arg(long)]
        formula: bool,
    },
    /// The 2×2 and 3×3 local determinants.
    Det {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        kappa: i64,
    },
    /// The spanning vectors y_*.
    Yvec {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        kappa: i64,
    },
    /// Classes {±λ} of Λ̂̂_n with 2d | ord(λ).
    Classes {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
    },
    /// The certification column plan.
    Plan {
        #[arg(long)]
        d: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum CacheCmd {
    Build {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        path: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        path: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Gens {
    Vieta,
    Full,
    First,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    Ok((a.trim().parse().map_err(|e| format!("{e}"))?, b.trim().parse().map_err(|e| format!("{e}"))?))
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
    #[error("{0}")]
    Usage(String),
    #[error("check failed: {0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Core(Error::Resource(_)) => EXIT_RESOURCE,
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        }
    }
}

type Out<'a> = &'a mut dyn Write;

/// Sorted-key pretty JSON.
pub fn json<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

/// Parses `argv` and runs; returns the exit code.
pub fn run<I, T>(argv: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(err, "--threads must be positive");
            return EXIT_USAGE;
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(cli: &Cli, out: Out, err: Out) -> Result<i32, CliError> {
    match &cli.cmd {
        Cmd::Reduce { kappa, poly, p, x } => reduce(kappa, poly, *p, *x, cli.json, out),
        Cmd::Orbits { p, kappa, gens } => {
            let g = match gens {
                Gens::Vieta => Generators::VietaOnly,
                Gens::Full => Generators::Full,
                Gens::First => Generators::FirstCoord,
            };
            let r = orbit_report(*p, *kappa, g)?;
            if cli.json {
                writeln!(out, "{}", json(&r))?;
            } else {
                writeln!(out, "p={} κ={} orbits={} points={}", r.p, r.kappa, r.orbits.len(), r.total_points())?;
                for o in &r.orbits {
                    let cat = o.category.map(|c| c.to_string()).unwrap_or_else(|| "essential".into());
                    writeln!(out, "  {:?} size {} {}", o.rep, o.size, cat)?;
                }
            }
            Ok(EXIT_OK)
        }
        Cmd::VerifyMain1 { p, kappa } => {
            let ks: Vec<i64> = match kappa {
                Some(k) => vec![*k],
                None => (0..*p as i64).filter(|&k| k != 4 % *p as i64).collect(),
            };
            let reports = ks.iter().map(|&k| verify_main1(*p, k)).collect::<Result<Vec<_>, _>>()?;
            if cli.json {
                writeln!(out, "{}", json(&reports))?;
            } else {
                writeln!(out, "{:>5} {:>7} {:>12} {:>5} {:>6}", "κ", "orbits", "exceptional", "main", "holds")?;
                for r in &reports {
                    writeln!(out, "{:>5} {:>7} {:>12} {:>5} {:>6}", r.kappa, r.vieta_orbits, r.exceptional_orbits, r.main_orbits, r.holds)?;
                }
            }
            let bad: Vec<u64> = reports.iter().filter(|r| !r.holds).map(|r| r.kappa).collect();
            if bad.is_empty() {
                Ok(EXIT_OK)
            } else {
                Err(CliError::Failed(format!("single-orbit statement fails for κ ∈ {bad:?}")))
            }
        }
        Cmd::VerifyNielsen { p, kappa, bound } => {
            let reports = match kappa {
                Some(k) => vec![nielsen_orbits(*p, *k)?],
                None => nielsen_census(*p, *bound)?.into_values().collect(),
            };
            let mut bad = Vec::new();
            for r in &reports {
                let expected = selftest::expected_nielsen(r.p, r.kappa);
                if r.orbit_count != expected && r.orbit_count != 0 {
                    bad.push(r.kappa);
                }
            }
            if cli.json {
                writeln!(out, "{}", json(&reports))?;
            } else {
                writeln!(out, "{:>5} {:>7}  sizes", "κ", "orbits")?;
                for r in &reports {
                    writeln!(out, "{:>5} {:>7}  {:?}", r.kappa, r.orbit_count, r.orbit_sizes)?;
                }
            }
            if bad.is_empty() {
                Ok(EXIT_OK)
            } else {
                Err(CliError::Failed(format!("unexpected Nielsen orbit counts for κ ∈ {bad:?}")))
            }
        }
        Cmd::Spectral { what } => spectral_cmd(what, cli.json, out),
        Cmd::Certify { d, out: path, seed, alternates, rows, extra_m, max_columns, exhaustive, time_limit, cache } => {
            let mut ov = Overrides::default();
            if let Some(s) = seed {
                ov.seed = *s;
            }
            if let Some(a) = alternates {
                ov.alternates = *a;
            }
            ov.rows = *rows;
            if let Some(e) = extra_m {
                ov.extra_m = *e;
            }
            ov.max_columns = *max_columns;
            ov.stop_when_true = !exhaustive;
            ov.time_limit_secs = *time_limit;
            let cert = if *cache {
                let p = certify::plan(*d, &ov)?;
                let (m, n) = certify::table_bounds(&p)?;
                let t = cache::load_or_build(&cache::default_path(), m, n, &mut |w| {
                    let _ = writeln!(err, "warning: {w}");
                })?;
                let start = std::time::Instant::now();
                let deadline = time_limit.map(|s| start + std::time::Duration::from_secs(s));
                let built = certify::build_columns_until(&p, Some(&t), deadline)?;
                certify::certify_matrix(p, built, &ov, start.elapsed().as_millis() as u64)?
            } else {
                certify::certify(*d, &ov)?
            };
            if let Some(path) = path {
                std::fs::write(path, cert.to_json()?)?;
            }
            report_cert(&cert, cli.json, out)?;
            let timed_out = cert.diagnostics.notes.iter().any(|n| n.contains("time limit"));
            Ok(match cert.verdict {
                Verdict::True => EXIT_OK,
                Verdict::Inconclusive if timed_out => EXIT_RESOURCE,
                Verdict::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Cmd::Recheck { cert, spot_prime } => {
            let text = std::fs::read_to_string(cert)?;
            let c = Certificate::from_json(&text)?;
            let mut ok = certify::recheck(&c)?;
            if let (true, Some(q)) = (ok, spot_prime) {
                let cols: Vec<usize> = (0..c.plan.columns.len()).collect();
                ok = certify::spot_check(&c, *q, &[0, 1, 7], &cols)?;
            }
            if cli.json {
                writeln!(out, "{}", json(&serde_json::json!({"consistent": ok, "verdict": c.verdict, "hash": c.hash})))?;
            } else {
                writeln!(out, "consistent: {ok}")?;
                writeln!(out, "verdict: {}", verdict_str(c.verdict))?;
            }
            Ok(match (ok, c.verdict) {
                (false, _) => EXIT_DOMAIN,
                (true, Verdict::True) => EXIT_OK,
                (true, Verdict::Inconclusive) => EXIT_INCONCLUSIVE,
            })
        }
        Cmd::Cache { what } => match what {
            CacheCmd::Build { m, n, path } => {
                let path = path.clone().unwrap_or_else(cache::default_path);
                let t = markoff_core::trired::cache_build(*m, *n);
                cache::save(&path, &t)?;
                writeln!(out, "wrote {} entries to {}", t.entries.len(), path.display())?;
                Ok(EXIT_OK)
            }
            CacheCmd::Verify { path } => {
                let path = path.clone().unwrap_or_else(cache::default_path);
                let t = cache::load(&path)?;
                writeln!(out, "ok: m_max={} n_max={} entries={}", t.m_max, t.n_max, t.entries.len())?;
                Ok(EXIT_OK)
            }
        },
        Cmd::Selftest { level } => {
            let results = selftest::run(*level);
            let mut failed = 0;
            for r in &results {
                writeln!(out, "{} {} ({} ms){}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.millis, r.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default())?;
                failed += usize::from(!r.pass);
            }
            writeln!(out, "{} passed, {failed} failed", results.len() - failed)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_DOMAIN })
        }
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::True => "true",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn report_cert(c: &Certificate, as_json: bool, out: Out) -> Result<(), CliError> {
    if as_json {
        #[derive(Serialize)]
        struct Summary<'a> {
            d: u32,
            verdict: Verdict,
            hash: &'a str,
            rows: usize,
            columns: usize,
            rank: usize,
            minors: usize,
            steps: usize,
            b: Option<u32>,
            a: Option<String>,
            residual: Option<String>,
            notes: &'a [String],
        }
        let s = c.strip.as_ref();
        let sum = Summary {
            d: c.d,
            verdict: c.verdict,
            hash: &c.hash,
            rows: c.diagnostics.rows,
            columns: c.diagnostics.columns,
            rank: c.diagnostics.rank,
            minors: c.minors.len(),
            steps: c.steps.len(),
            b: s.map(|s| s.b),
            a: s.map(|s| s.a.to_string()),
            residual: s.map(|s| s.residual.to_string()),
            notes: &c.diagnostics.notes,
        };
        writeln!(out, "{}", json(&sum))?;
        return Ok(());
    }
    writeln!(out, "d = {}  n_d = {}", c.d, c.plan.n_d)?;
    writeln!(out, "matrix {}×{}  rank {}", c.diagnostics.rows, c.diagnostics.columns, c.diagnostics.rank)?;
    writeln!(out, "minors {}  fold steps {}", c.minors.len(), c.steps.len())?;
    if let Some(s) = &c.strip {
        writeln!(out, "b = {}  a = {}", s.b, s.a)?;
        writeln!(out, "a factors: {}", s.a_factors.iter().map(|(p, e)| format!("{p}^{e}")).collect::<Vec<_>>().join(" "))?;
        writeln!(out, "residual = {}", s.residual)?;
        for r in &s.residual_primes {
            writeln!(out, "residual prime {}^{} exempt={}", r.prime, r.exponent, r.exempt)?;
        }
        for u in &s.unfactored {
            writeln!(out, "unfactored cofactor ({} bits)", u.bits())?;
        }
    }
    for n in &c.diagnostics.notes {
        writeln!(out, "note: {n}")?;
    }
    writeln!(out, "hash {}", c.hash)?;
    writeln!(out, "verdict: {}", verdict_str(c.verdict))?;
    Ok(())
}

fn parse_kappa(s: &str) -> Result<Option<Rational>, CliError> {
    if s == "sym" {
        return Ok(None);
    }
    Ok(Some(parse_rational(s)?))
}

fn reduce_in<R: CoeffRing>(ring: R, poly: &str, x: bool, conv: impl Fn(&R::Elem) -> KPoly) -> Result<String, CliError> {
    let f = parse_tripoly(poly, ring.clone())?;
    let mut red = Reducer::new(ring.clone());
    if !x {
        let v: Vec<KPoly> = red.phi(&f).iter().map(&conv).collect();
        return Ok(fmt_upoly(&v, "x"));
    }
    let r = red.phi_x(&f);
    let v: Vec<KPoly> = r.xpart.iter().map(&conv).collect();
    let mut s = if r.xpart.is_empty() { String::new() } else { fmt_upoly(&v, "x") };
    for ((b, c), k) in r.yzpart.iter().rev() {
        let k = conv(k);
        let mono = [("y", *b), ("z", *c)]
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*");
        let term = if k.is_constant() { format!("{}*{mono}", k.lead()) } else { format!("({k})*{mono}") };
        if !s.is_empty() {
            s.push_str(" + ");
        }
        s.push_str(&term);
    }
    Ok(if s.is_empty() { "0".into() } else { s })
}

fn reduce(kappa: &str, poly: &str, p: Option<u64>, x: bool, as_json: bool, out: Out) -> Result<i32, CliError> {
    let k = parse_kappa(kappa)?;
    let s = match (p, k) {
        (None, None) => reduce_in(QKappa, poly, x, |e: &KPoly| e.clone())?,
        (None, Some(k)) => reduce_in(QAt { kappa: k }, poly, x, |e: &Rational| KPoly::constant(e.clone()))?,
        (Some(p), Some(k)) => {
            if !markoff_core::ffield::is_prime(p) {
                return Err(Error::Domain(format!("{p} is not prime")).into());
            }
            let ring = FpK::new(p, 0);
            let kv = ring.from_rational(&k).ok_or_else(|| Error::Domain("κ not defined mod p".into()))?;
            reduce_in(FpK { p, kappa: kv }, poly, x, |e: &u64| KPoly::from_int(*e as i64))?
        }
        (Some(_), None) => return Err(CliError::Usage("--p needs a numeric --kappa".into())),
    };
    if as_json {
        writeln!(out, "{}", json(&serde_json::json!({ "result": s })))?;
    } else {
        writeln!(out, "{s}")?;
    }
    Ok(EXIT_OK)
}

fn spectral_cmd(what: &SpectralCmd, as_json: bool, out: Out) -> Result<i32, CliError> {
    match what {
        SpectralCmd::Qn { n, p, kappa, formula } => {
            let v = match (parse_kappa(kappa)?, formula) {
                (None, false) => spectral::qn_direct_symbolic(*n, *p)?,
                (None, true) => spectral::qn_closed_form(*n, *p)?,
                (Some(k), f) => {
                    let k = FpK::new(*p, 0).from_rational(&k).ok_or_else(|| Error::Domain("κ not defined mod p".into()))? as i64;
                    if *f {
                        spectral::qn_formula(*n, *p, k)?
                    } else {
                        spectral::qn_direct(*n, *p, k)?
                    }
                }
            };
            if as_json {
                writeln!(out, "{}", json(&v))?;
            } else {
                for (i, c) in v.coords.iter().enumerate() {
                    let terms: Vec<String> = c.iter().enumerate().filter(|(_, a)| **a != 0).map(|(j, a)| format!("{a}·κ^{j}")).collect();
                    writeln!(out, "x^{}: {}", 2 * i, if terms.is_empty() { "0".into() } else { terms.join(" + ") })?;
                }
            }
        }
        SpectralCmd::Det { p, kappa } => {
            let d = spectral::local_determinants(*p, *kappa)?;
            if as_json {
                writeln!(out, "{}", json(&d))?;
            } else {
                writeln!(out, "p={} κ={} χ(κ)={}", d.p, d.kappa, d.chi)?;
                writeln!(out, "det2 = {} (−(8/3)(4−κ) = {})", d.det2, d.expected2)?;
                writeln!(out, "det3 = {} (2^19·κ = {})", d.det3, d.expected3)?;
            }
        }
        SpectralCmd::Yvec { p, kappa } => {
            let y = spectral::y_vectors(*p, *kappa)?;
            writeln!(out, "{}", json(&y))?;
        }
        SpectralCmd::Classes { d, n } => {
            let c = spectral::lambda_classes(*d, *n);
            if as_json {
                writeln!(out, "{}", json(&c))?;
            } else {
                writeln!(out, "d={} n={} classes={} printed m={}", c.d, c.n, c.classes.len(), c.printed_m)?;
                for l in &c.classes {
                    writeln!(out, "  k={} ord={}", l.k, l.ord)?;
                }
            }
        }
        SpectralCmd::Plan { d } => {
            let p = certify::plan(*d, &Overrides::default())?;
            writeln!(out, "{}", json(&p))?;
        }
    }
    Ok(EXIT_OK)
}

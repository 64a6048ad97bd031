use std::path::PathBuf;
use std::process::Command;

use markoff_cli::{cache, run, EXIT_DOMAIN, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE};
use markoff_core::exact_rings::ring::QKappa;
use markoff_core::trired::{cache_build, Reducer};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("markoff").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("markoff-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn reduce_example() {
    let (code, out, _) = call(&["reduce", "--kappa", "0", "--poly", "y^4 - y^2*z^2 + 1/2*x^2*y^2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "x^4 - 3*x^2");
}

#[test]
fn reduce_x_variant_kills_multiple_of_x() {
    let (code, out, _) = call(&["reduce", "--x", "--kappa", "0", "--poly", "x*y^4 - x*y^2*z^2 + 1/2*x^3*y^2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "0");
}

#[test]
fn verify_main1_table() {
    let (code, out, _) = call(&["verify-main1", "--p", "7"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().count() >= 6, "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["verify-main1", "--p", "7", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(call(&["no-such-command"]).0, EXIT_USAGE);
    assert_eq!(call(&["certify"]).0, EXIT_USAGE);
}

#[test]
fn domain_error_exit() {
    assert_eq!(call(&["verify-main1", "--p", "9"]).0, EXIT_DOMAIN);
}

#[test]
fn json_keys_are_sorted() {
    let (code, out, _) = call(&["--json", "verify-main1", "--p", "7", "--kappa", "1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    fn sorted(v: &serde_json::Value) -> bool {
        match v {
            serde_json::Value::Object(m) => {
                let keys: Vec<_> = m.keys().collect();
                keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(sorted)
            }
            serde_json::Value::Array(a) => a.iter().all(sorted),
            _ => true,
        }
    }
    assert!(sorted(&v));
}

#[test]
fn cache_roundtrip_is_bit_exact() {
    let t = cache_build(3, 2);
    let s = cache::to_string(&t);
    let back = cache::from_str(&s).unwrap();
    assert_eq!(back, t);
    assert_eq!(cache::to_string(&back), s);
    let path = scratch("roundtrip.json");
    cache::save(&path, &t).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), s);
    assert_eq!(cache::load(&path).unwrap(), t);
}

#[test]
fn cache_entry_matches_fresh_reduction() {
    let t = cache_build(2, 2);
    let back = cache::from_str(&cache::to_string(&t)).unwrap();
    let mut red = Reducer::new(QKappa);
    assert_eq!(back.get(2, 1).unwrap(), &*red.phi_monomial((4, 2, 0)));
}

#[test]
fn corrupted_cache_fails_checksum() {
    let s = cache::to_string(&cache_build(2, 1));
    let i = s.find("\"coeffs\"").unwrap() + 12;
    let mut b = s.into_bytes();
    let j = (i..b.len()).find(|&j| b[j].is_ascii_digit()).unwrap();
    b[j] = if b[j] == b'7' { b'8' } else { b'7' };
    let bad = String::from_utf8(b).unwrap();
    assert!(matches!(cache::from_str(&bad), Err(cache::CacheError::Checksum)));
    let path = scratch("corrupt.json");
    std::fs::write(&path, &bad).unwrap();
    let mut warned = Vec::new();
    assert!(cache::load_or_build(&path, 1, 1, &mut |w| warned.push(w)).is_err());
    let p = path.to_str().unwrap();
    assert_ne!(call(&["cache", "verify", "--path", p]).0, EXIT_OK);
}

#[test]
fn stale_version_rebuilds_with_warning() {
    let s = cache::to_string(&cache_build(1, 1));
    let stale = s.replacen(&format!("\"version\":\"{}\"", cache::VERSION), "\"version\":\"0\"", 1);
    assert_ne!(stale, s);
    assert!(matches!(cache::from_str(&stale), Err(cache::CacheError::Version { found: 0 })));
    let path = scratch("stale.json");
    std::fs::write(&path, stale).unwrap();
    let mut warned = Vec::new();
    let t = cache::load_or_build(&path, 2, 1, &mut |w| warned.push(w)).unwrap();
    assert_eq!(warned.len(), 1);
    assert!(warned[0].contains("stale"));
    assert_eq!(t, cache_build(2, 1));
    assert_eq!(cache::load(&path).unwrap(), t);
}

#[test]
fn undersized_cache_is_extended() {
    let path = scratch("small.json");
    cache::save(&path, &cache_build(1, 1)).unwrap();
    let mut warned = Vec::new();
    let t = cache::load_or_build(&path, 2, 2, &mut |w| warned.push(w)).unwrap();
    assert_eq!((t.m_max, t.n_max), (2, 2));
    assert_eq!(warned.len(), 1);
}

#[test]
fn env_var_overrides_cache_path() {
    let path = scratch("from-env.json");
    let st = Command::new(env!("CARGO_BIN_EXE_markoff"))
        .args(["cache", "build", "--m", "1", "--n", "1"])
        .env(cache::ENV_VAR, &path)
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(EXIT_OK));
    assert_eq!(cache::load(&path).unwrap(), cache_build(1, 1));
    let st = Command::new(env!("CARGO_BIN_EXE_markoff")).args(["cache", "verify"]).env(cache::ENV_VAR, &path).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_OK));
}

#[test]
fn certify_d2_is_inconclusive() {
    let path = scratch("d2.json");
    let p = path.to_str().unwrap();
    let (code, _, _) = call(&["certify", "--d", "2", "--out", p]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert_eq!(call(&["recheck", "--cert", p]).0, EXIT_INCONCLUSIVE);
}

#[test]
fn recheck_rejects_garbage() {
    let path = scratch("garbage.json");
    std::fs::write(&path, "{\"schema\":\"1\"}").unwrap();
    let code = call(&["recheck", "--cert", path.to_str().unwrap()]).0;
    assert!(code != EXIT_OK && code != EXIT_INCONCLUSIVE);
}

#[test]
fn spectral_det_runs() {
    let (code, out, _) = call(&["spectral", "det", "--p", "101", "--kappa", "5"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn selftest_fast_passes() {
    let (code, out, _) = call(&["selftest", "--level", "fast"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("0 failed"));
}

#[test]
fn time_limit_covers_matrix_build() {
    let start = std::time::Instant::now();
    let (code, _, err) = call(&["certify", "--d", "7", "--time-limit", "1"]);
    assert_eq!(code, markoff_cli::EXIT_RESOURCE, "{err}");
    assert!(err.contains("time limit"), "{err}");
    assert!(start.elapsed().as_secs() < 120);
}

//! Checks shared by the acceptance run and the focused integration tests.
//! Each returns a short summary on success and a description of the first
//! failure otherwise.
#![allow(dead_code)]

use gzcoeff::heckechar::{build_char, AlgebraicValue, HeckeChar, ValueMode};
use gzcoeff::quadfield::{discriminant_factors, primitive_ideals_of_norm, ramified_ideal, Discriminant};
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

pub type Check = Result<String, String>;

/// Mode used for a field: exact arithmetic when h = 1, 40-digit complex otherwise.
pub fn char_for(d: i64, ell: u32) -> HeckeChar {
    let exact = build_char(d, ell, ValueMode::Exact);
    exact.unwrap_or_else(|_| build_char(d, ell, ValueMode::Complex { digits: 40 }).unwrap())
}

/// Exact equality, or |a − b| ≤ 10⁻³⁰·max(1, |a|, |b|) for complex values.
pub fn same(a: &AlgebraicValue, b: &AlgebraicValue) -> bool {
    match (a.abs_f64(), b.abs_f64()) {
        (Some(x), Some(y)) => a.close_to(b, 1e-30 * x.max(y).max(1.0), 0).unwrap(),
        _ => a.close_to(b, 0.0, 0).unwrap(),
    }
}

/// r(A·[𝒟₁]⁻¹, j) = χ(𝒟₂)⁻¹·r(A, j|D₂|) for every coprime factorisation D = D₁D₂.
pub fn genus_lemma(d: i64, jmax: i64) -> Check {
    let ch = char_for(d, 2);
    let g = ch.group();
    let disc = Discriminant::new(d).unwrap();
    let mut checked = 0;
    for (d1, d2) in discriminant_factors(disc) {
        let c1 = g.class_of_ideal(&ramified_ideal(disc, d1).unwrap());
        let chi2 = ch.chi_value(&ramified_ideal(disc, d2).unwrap()).inv().unwrap();
        for a in 0..g.h() {
            let shifted = g.mul(a, g.inv(c1));
            for j in 1..=jmax {
                let lhs = ch.r_chi(shifted, j);
                let rhs = chi2.mul(&ch.r_chi(a, j * d2.abs()));
                if !same(&lhs, &rhs) {
                    return Err(format!("D={d} D1={d1} class {a} j={j}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("D={d}: {checked} cases"))
}

/// Relations (1)–(3) between r_{A,χ} at m, mp, mp², m/p and m/p² for a split p.
pub fn hecke_relations(d: i64, p: u64, mmax: i64) -> Check {
    let ch = char_for(d, 2);
    let g = ch.group();
    let disc = Discriminant::new(d).unwrap();
    let primes = primitive_ideals_of_norm(disc, p);
    if primes.len() != 2 {
        return Err(format!("{p} does not split in Q(√{d})"));
    }
    let (fp, fpb) = (&primes[0], &primes[1]);
    let (cp, cpb) = (g.class_of_ideal(fp), g.class_of_ideal(fpb));
    let (xp, xpb) = (ch.chi_value(fp), ch.chi_value(fpb));
    let (xp2, xpb2) = (xp.mul(&xp), xpb.mul(&xpb));
    let emb = ch.embedding();
    let pl = emb.embed_int((p * p) as i64);
    let p2l = pl.mul(&pl);
    let pi = p as i64;
    let r = |c: usize, num: i64, den: i64| ch.r_chi_frac(c, num, den);
    for a in 0..g.h() {
        let (ap, apb) = (g.mul(a, cp), g.mul(a, cpb));
        let (ap2, apb2) = (g.mul(ap, cp), g.mul(apb, cpb));
        for m in 1..=mmax {
            let lhs1 = r(a, m * pi, 1).add(&pl.mul(&r(a, m, pi)));
            let rhs1 = xpb.mul(&r(ap, m, 1)).add(&xp.mul(&r(apb, m, 1)));
            if !same(&lhs1, &rhs1) {
                return Err(format!("D={d} p={p} (1) class {a} m={m}"));
            }
            let rhs2 = xpb2.mul(&r(ap2, m, 1)).add(&xp2.mul(&r(apb2, m, 1)));
            let lhs = if m % pi == 0 {
                r(a, m * pi * pi, 1).add(&p2l.mul(&r(a, m, pi * pi)))
            } else {
                r(a, m * pi * pi, 1).sub(&pl.mul(&r(a, m, 1)))
            };
            if !same(&lhs, &rhs2) {
                let part = if m % pi == 0 { 2 } else { 3 };
                return Err(format!("D={d} p={p} ({part}) class {a} m={m}"));
            }
        }
    }
    Ok(format!("D={d}, p={p}: m ≤ {mmax}, {} classes", g.h()))
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_gzcoeff"))
}

pub fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

/// Run the binary; returns (exit code, stdout, stderr).
pub fn gz(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin()).args(args).output().expect("run gzcoeff");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

pub fn validate(schema_name: &str, doc: &Value) -> Result<(), String> {
    let path = schema_dir().join(format!("{schema_name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let v = jsonschema::validator_for(&schema).map_err(|e| format!("{schema_name}: bad schema: {e}"))?;
    let errs: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    if errs.is_empty() {
        Ok(())
    } else {
        Err(format!("{schema_name}: {}", errs.join("; ")))
    }
}

/// (schema, argv, expected exit code) for a pass over every subcommand.
pub fn tour() -> Vec<(&'static str, Vec<&'static str>, i32)> {
    let ctx = ["--disc", "-7", "--level", "23", "--p", "11", "--r", "2", "--k", "1", "--prec", "12"];
    let with = |cmd: &'static str, extra: &[&'static str]| {
        let mut v = vec![cmd];
        v.extend_from_slice(&ctx);
        v.extend_from_slice(extra);
        v
    };
    vec![
        ("classgroup", vec!["classgroup", "--disc", "-23"], 0),
        ("classgroup", vec!["classgroup", "--disc", "-47"], 0),
        ("ideals", vec!["ideals", "--disc", "-23", "--norm", "36"], 0),
        ("theta", vec!["theta", "--disc", "-7", "--ell", "2", "--class", "0", "--bound", "20", "--mode", "exact"], 0),
        (
            "theta",
            vec!["theta", "--disc", "-23", "--ell", "4", "--class", "1", "--bound", "20", "--mode", "complex", "--prec", "30"],
            0,
        ),
        (
            "theta",
            vec!["theta", "--disc", "-23", "--ell", "2", "--class", "2", "--bound", "10", "--mode", "padic", "--p", "29", "--prec", "8"],
            0,
        ),
        ("hpoly", vec!["hpoly", "--m", "1", "--k", "1"], 0),
        ("hpoly", vec!["hpoly", "--m", "4", "--k", "2", "--check", "combo"], 0),
        ("hpoly", vec!["hpoly", "--m", "5", "--k", "1", "--check", "recur"], 0),
        ("hpoly", vec!["hpoly", "--m", "3", "--k", "3", "--check", "jacobi"], 0),
        ("sigma", vec!["sigma", "--disc", "-23", "--level", "101", "--class", "1", "--n", "90", "--p", "29", "--prec", "10"], 0),
        ("bc-check", with("bc-check", &["--mmax", "3"]), 0),
        ("bc-check", with("bc-check", &["--mmax", "3", "--jobs", "3"]), 0),
        ("fourier", with("fourier", &["--m", "33"]), 0),
        ("heightsum", with("heightsum", &["--m", "33"]), 0),
        ("crosscheck", with("crosscheck", &["--m", "33"]), 0),
        ("params", vec!["params", "--disc", "-7"], 0),
        ("params", vec!["params", "--disc", "-23", "--padic-values", "--level-at-least", "100"], 0),
    ]
}

/// Run the tour twice: byte-identical output, schema-valid JSON, identity
/// round trip, expected exit codes, and the documented usage errors.
pub fn cli_tour() -> Check {
    let mut docs = 0;
    for (schema, args, code) in tour() {
        let (c1, o1, e1) = gz(&args);
        let (c2, o2, _) = gz(&args);
        let tag = args.join(" ");
        if c1 != code || c2 != code {
            return Err(format!("`{tag}` exited {c1}, expected {code}: {e1}"));
        }
        if o1 != o2 {
            return Err(format!("`{tag}` is not deterministic"));
        }
        let doc: Value = serde_json::from_str(&o1).map_err(|e| format!("`{tag}`: {e}"))?;
        validate(schema, &doc).map_err(|e| format!("`{tag}`: {e}"))?;
        if serde_json::to_string_pretty(&doc).unwrap() + "\n" != o1 {
            return Err(format!("`{tag}`: parse/re-emit is not the identity"));
        }
        docs += 1;
    }
    // --jobs does not change the result
    let base = ["bc-check", "--disc", "-23", "--level", "101", "--p", "29", "--r", "2", "--k", "1", "--mmax", "2", "--prec", "10"];
    let one = gz(&base);
    let mut par = base.to_vec();
    par.extend(["--jobs", "4"]);
    if gz(&par).1 != one.1 || one.0 != 0 {
        return Err("bc-check output depends on --jobs".into());
    }
    // CSV for flat tables
    let (c, csv, _) = gz(&["hpoly", "--m", "1", "--k", "1", "--format", "csv"]);
    if c != 0 || csv != "i,coeff\n0,-1/1\n1,2/1\n" {
        return Err(format!("hpoly csv: {csv:?}"));
    }
    // usage errors: exit 2 with a one-line diagnostic naming the problem
    for (args, needle) in [
        (vec!["bc-check", "--disc", "-7", "--level", "23", "--p", "5", "--r", "2", "--k", "1", "--mmax", "2"], "split"),
        (vec!["classgroup", "--disc", "-8"], "discriminant"),
        (vec!["classgroup", "--disc", "-7", "--bogus"], "--bogus"),
        (vec!["hpoly", "--m", "1"], "--k"),
        (vec!["fourier", "--disc", "-7", "--level", "23", "--p", "11", "--r", "2", "--k", "1", "--m", "33", "--format", "csv"], "csv"),
    ] {
        let (c, out, err) = gz(&args);
        if c != 2 || !out.is_empty() || err.lines().count() != 1 || !err.contains(needle) {
            return Err(format!("`{}`: exit {c}, stderr {err:?}", args.join(" ")));
        }
    }
    Ok(format!("{docs} documents"))
}

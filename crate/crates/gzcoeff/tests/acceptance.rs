//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//!
//! Expected values that are not read off a formula in the library are
//! recomputed here from first principles (reduced-form enumeration, Bonnet's
//! recurrence, direct series, brute-force element sums).

mod common;

use common::Check;
use gzcoeff::heckechar::{build_char, lattice_theta_coeffs, theta_coeffs, AlgebraicValue, ValueMode};
use gzcoeff::heights::{
    fourier_am, fourier_am_direct, height_fourier_residual, height_fourier_residual_with, mainid_residual,
    mainid_residual_with, slack, ConstantVariant, HeightContext, Mutation, OperatorVariant,
};
use gzcoeff::hpfloat;
use gzcoeff::padic::{iwasawa_log, teichmuller, PadicNumber};
use gzcoeff::polykit::{
    coeff_identity_check, combo_residual, h_poly, jacobi_residual, laplace_closed_form, laplace_integral_oracle,
    recur_residual, RationalPoly,
};
use gzcoeff::quadfield::{ClassGroup, Discriminant, IdealRep};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Legendre polynomials by Bonnet's recurrence (n+1)P_{n+1} = (2n+1)tP_n − nP_{n−1}.
fn legendre(m: u32) -> RationalPoly {
    let (mut a, mut b) = (RationalPoly::one(), RationalPoly::t());
    if m == 0 {
        return a;
    }
    for n in 1..m as i64 {
        let next = &(&RationalPoly::t() * &b).scale(&q(2 * n + 1, n + 1)) - &a.scale(&q(n, n + 1));
        a = b;
        b = next;
    }
    b
}

fn c1_polynomials() -> Check {
    let mut n = 0;
    for m in 0..=8 {
        for k in 0..=5 {
            ensure(combo_residual(m, k).map_err(|e| e.to_string())?.is_zero(), || format!("combo m={m} k={k}"))?;
            ensure(jacobi_residual(m, k).map_err(|e| e.to_string())?.is_zero(), || format!("jacobi m={m} k={k}"))?;
            n += 2;
        }
        ensure(h_poly(m, 0).unwrap() == legendre(m), || format!("H_{{{m},0}} is not P_{m}"))?;
        n += 1;
    }
    for m in 1..=10 {
        for k in 0..=5 {
            ensure(recur_residual(m, k).map_err(|e| e.to_string())?.is_zero(), || format!("recur m={m} k={k}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} exact identities"))
}

fn c2_laplace() -> Check {
    let bits = hpfloat::bits_for_digits(40);
    let tol = hpfloat::ten_pow_neg(25, bits);
    let mut n = 0;
    for m in 0..=3 {
        for k in 0..=3 {
            for i in 1..=5 {
                for j in 0..=5 {
                    let a = laplace_integral_oracle(m, k, i, j, bits).map_err(|e| e.to_string())?;
                    let b = laplace_closed_form(m, k, i, j, bits).map_err(|e| e.to_string())?;
                    let rel = hpfloat::rel_diff(&a, &b, bits);
                    ensure(hpfloat::le(&rel, &tol), || format!("m={m} k={k} i={i} j={j}: rel {}", hpfloat::to_f64(&rel)))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} integrals within 1e-25"))
}

/// Coefficient of x^{m+2k} in (ax+b)^{m+2k}(cx+d)^m by the binomial theorem.
fn extract(m: u32, k: u32, a: &BigRational, b: &BigRational, c: &BigRational, d: &BigRational) -> BigRational {
    let binom = |n: u32, r: u32| -> BigRational {
        BigRational::from_integer((0..r).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1)))
    };
    let e = m + 2 * k;
    let pw = |x: &BigRational, n: u32| num_traits::pow(x.clone(), n as usize);
    let mut s = BigRational::zero();
    for i in 0..=e {
        // x^i from the first factor, x^{e-i} from the second
        if e - i > m {
            continue;
        }
        let jj = e - i;
        s += binom(e, i) * pw(a, i) * pw(b, e - i) * binom(m, jj) * pw(c, jj) * pw(d, m - jj);
    }
    s
}

fn c3_extraction() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut done = 0;
    while done < 100 {
        let mut r = || q(rng.gen_range(-40..=40), rng.gen_range(1..=12));
        let (a, b, c, d) = (r(), r(), r(), r());
        if (&a * &d - &b * &c).is_zero() {
            continue;
        }
        let (m, k) = (rng.gen_range(0..=6u32), rng.gen_range(0..=6u32));
        let res = coeff_identity_check(m, k, &a, &b, &c, &d).map_err(|e| e.to_string())?;
        ensure(res.is_zero(), || format!("residual {res} at m={m} k={k}"))?;
        // the closed form against a direct binomial expansion
        let det = &a * &d - &b * &c;
        let closed = num_traits::pow(a.clone(), 2 * k as usize)
            * num_traits::pow(det.clone(), m as usize)
            * h_poly(m, k).unwrap().eval(&((&a * &d + &b * &c) / &det));
        ensure(extract(m, k, &a, &b, &c, &d) == closed, || format!("expansion mismatch at m={m} k={k}"))?;
        done += 1;
    }
    Ok("100 random tuples, residual 0".into())
}

/// Reduced forms (a, b, c): |b| ≤ a ≤ c, b ≥ 0 if |b| = a or a = c.
fn reduced_form_count(d: i64) -> usize {
    let n = -d;
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let t = b * b - d;
            if t % (4 * a) != 0 {
                continue;
            }
            let c = t / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

fn c4_classgroups() -> Check {
    for (d, h) in [(-7, 1), (-11, 1), (-23, 3), (-47, 5)] {
        ensure(reduced_form_count(d) == h, || format!("oracle h({d}) ≠ {h}"))?;
        let g = ClassGroup::new(Discriminant::new(d).unwrap()).unwrap();
        ensure(g.h() == h, || format!("h({d}) = {}, expected {h}", g.h()))?;
    }
    let mut fields = 0;
    let mut d = -7i64;
    while d > -1500 {
        if let Ok(disc) = Discriminant::new(d) {
            let g = ClassGroup::new(disc).unwrap();
            ensure(g.h() == reduced_form_count(d), || format!("h({d}) disagrees with the oracle"))?;
            if g.h() <= 12 {
                fields += 1;
                let h = g.h();
                for x in 0..h {
                    ensure(g.mul(0, x) == x && g.mul(x, g.inv(x)) == 0, || format!("identity/inverse D={d} x={x}"))?;
                    for y in 0..h {
                        ensure(g.mul(x, y) == g.mul(y, x), || format!("commutativity D={d}"))?;
                        // composition agrees with ideal multiplication
                        let prod = IdealRep::mul(&g.representative(x), &g.representative(y)).unwrap();
                        ensure(g.class_of_ideal(&prod) == g.mul(x, y), || format!("ideal product D={d} {x}·{y}"))?;
                        for z in 0..h {
                            ensure(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)), || format!("associativity D={d}"))?;
                        }
                    }
                }
            }
        }
        d -= 4;
    }
    Ok(format!("h(−7, −11, −23, −47) = 1, 1, 3, 5; axioms on {fields} groups with h ≤ 12"))
}

fn c5_theta() -> Check {
    // oracle for r(2) at (−7, 2): α = (x + y√−7)/2 of norm 2, Σ α²/w
    let mut s = (0i64, 0i64); // twice the components of Σ α², over 4
    for x in -6i64..=6 {
        for y in -6i64..=6 {
            if x * x + 7 * y * y == 8 {
                // α² = (x² − 7y² + 2xy√−7)/4
                s.0 += x * x - 7 * y * y;
                s.1 += 2 * x * y;
            }
        }
    }
    ensure(s == (-24, 0), || format!("oracle sum {s:?}"))?; // (−24/4)/w = −3 with w = 2
    let ch = build_char(-7, 2, ValueMode::Exact).unwrap();
    let emb = ch.embedding();
    ensure(ch.r_chi(0, 2).close_to(&emb.embed_int(-3), 0.0, 0).unwrap(), || "r(2) ≠ −3 for (−7, 2)".into())?;
    let two = emb.embed_int(2);
    let lat = lattice_theta_coeffs(&ch, &ch.group().representative(0), 500).unwrap();
    let th = theta_coeffs(&ch, 0, 500).unwrap();
    for n in 1..=500 {
        ensure(lat.get(n).close_to(&th.get(n).mul(&two), 0.0, 0).unwrap(), || format!("D=−7 exact, n={n}"))?;
    }
    for d in [-11, -23] {
        for ell in [2, 4] {
            let ch = build_char(d, ell, ValueMode::Complex { digits: 40 }).unwrap();
            let two = ch.embedding().embed_int(2);
            for a in 0..ch.group().h() {
                let lat = lattice_theta_coeffs(&ch, &ch.group().representative(a), 500).unwrap();
                let th = theta_coeffs(&ch, a, 500).unwrap();
                for n in 1..=500 {
                    let want: AlgebraicValue = th.get(n).mul(&two);
                    ensure(common::same(lat.get(n), &want), || format!("D={d} ℓ={ell} class {a} n={n}"))?;
                }
            }
        }
    }
    Ok("exact for D = −7, 1e-30 for D ∈ {−11, −23}, ℓ ∈ {2, 4}, n ≤ 500; r(2) = −3".into())
}

fn c6_lemmas() -> Check {
    let mut notes = Vec::new();
    for d in [-7, -15, -23] {
        notes.push(common::genus_lemma(d, 300)?);
    }
    for (d, p) in [(-7, 11), (-15, 17), (-23, 13)] {
        notes.push(common::hecke_relations(d, p, 200)?);
    }
    Ok(notes.join("; "))
}

const CONTEXTS: [(i64, u64, u64, u32, u32); 5] =
    [(-7, 11, 23, 2, 1), (-7, 23, 11, 2, 1), (-7, 23, 11, 3, 1), (-7, 23, 11, 3, 2), (-23, 101, 29, 2, 1)];

fn c7_mainid() -> Check {
    let mut lines = Vec::new();
    let mut worst = u32::MAX;
    for (d, level, p, r, k) in CONTEXTS {
        let ctx = HeightContext::new(d, level, p, r, k, 30).map_err(|e| e.to_string())?;
        let sl = slack(&ctx);
        ensure(sl.total <= 10, || format!("slack {} > 10", sl.total))?;
        let mut broken = [false; 2];
        for m in 1..=20 {
            for class in 0..ctx.h() {
                let res = mainid_residual(&ctx, class, m).map_err(|e| e.to_string())?;
                ensure(res.pass, || format!("{:?} class {class} m={m}: v = {} < {}", (d, level, p, r, k), res.valuation, res.target))?;
                ensure(!PadicNumber::from_json(&res.lhs).unwrap().is_zero(), || "zero left side".into())?;
                worst = worst.min(res.valuation as u32);
                if m <= 3 {
                    for (i, v) in [OperatorVariant::PerturbedChi, OperatorVariant::DroppedSquare].into_iter().enumerate() {
                        broken[i] |= !mainid_residual_with(&ctx, class, m, v).map_err(|e| e.to_string())?.pass;
                    }
                }
            }
        }
        ensure(broken == [true, true], || format!("{:?}: a χ/square mutation survived", (d, level, p, r, k)))?;
        lines.push(format!("({d},{level},{p},{r},{k}) slack {}", sl.total));
    }
    // perturbed H: the weight m^R·H(1 − 2nN/(m|D|)) plus 1 (H + 1 alone keeps the
    // weight homogeneous and the identity linear in it, so it cannot fail)
    let ctx = HeightContext::new(-7, 23, 11, 3, 1, 30).unwrap();
    let bad = ctx.mutated(Mutation::WeightPlusOne).unwrap();
    let fails = (1..=3).filter(|&m| !mainid_residual(&bad, 0, m).unwrap().pass).count();
    ensure(fails > 0, || "perturbed weight survived".into())?;
    let shifted = ctx.mutated(Mutation::HPlusOne).unwrap();
    let h1 = (1..=3).all(|m| mainid_residual(&shifted, 0, m).unwrap().pass);
    Ok(format!(
        "all classes, m ≤ 20, min valuation {worst}; [{}]; mutations χ, square, weight fail (H+1 alone {})",
        lines.join(", "),
        if h1 { "passes, as linearity predicts" } else { "fails" }
    ))
}

fn c8_fourier_heights() -> Check {
    let mut notes = Vec::new();
    for ((d, level, p, r, k), m) in CONTEXTS.into_iter().zip([69u64, 33, 33, 33, 145]) {
        let ctx = HeightContext::new(d, level, p, r, k, 30).map_err(|e| e.to_string())?;
        let tag = format!("({d},{level},{p},{r},{k}) m={m}");
        for class in 0..ctx.h() {
            let a = fourier_am(&ctx, class, m * p).map_err(|e| e.to_string())?;
            let b = fourier_am_direct(&ctx, class, m * p).map_err(|e| e.to_string())?;
            ensure(a.diff_valuation(&b) >= 30, || format!("{tag}: fourier paths differ"))?;
        }
        let rep = height_fourier_residual(&ctx, 0, m).map_err(|e| e.to_string())?;
        let doubled = height_fourier_residual_with(&ctx, 0, m, ConstantVariant::Doubled).map_err(|e| e.to_string())?;
        ensure(!doubled.verbatim.pass && !doubled.sign_flipped.pass, || format!("{tag}: doubled constant passes"))?;
        if rep.verbatim.pass {
            notes.push(format!("{tag} verbatim v={}", rep.verbatim.valuation));
        } else if rep.sign_flipped.pass {
            notes.push(format!(
                "{tag} SIGN DISCREPANCY: verbatim v={}, sign-flipped v={}",
                rep.verbatim.valuation, rep.sign_flipped.valuation
            ));
        } else {
            return Err(format!("{tag}: neither sign convention holds ({} / {})", rep.verbatim.valuation, rep.sign_flipped.valuation));
        }
    }
    Ok(notes.join("; "))
}

fn c9_padic() -> Check {
    // oracles: log(1 + 5) = Σ (−1)^{n+1} 5^n/n, and ω(2) = lim 2^{5^n}
    let mut s = BigRational::zero();
    for n in 1..=30i64 {
        let t = BigRational::new(BigInt::from(5).pow(n as u32), n.into());
        s += if n % 2 == 1 { t } else { -t };
    }
    let m = BigInt::from(125);
    let oracle = (s.numer() * s.denom().extended_gcd(&m).x).mod_floor(&m);
    ensure(oracle == BigInt::from(55), || format!("series oracle {oracle}"))?;
    let l = iwasawa_log(5, &q(6, 1), 3).map_err(|e| e.to_string())?;
    ensure(l.residue(3).unwrap().to_u64() == Some(55), || "log_5(6) mod 125".into())?;
    let mut w = 2u64;
    for _ in 0..4 {
        w = (0..5).fold(1, |acc, _| acc * w % 25);
    }
    ensure(w == 7, || format!("ω oracle {w}"))?;
    let t = teichmuller(5, &BigInt::from(2), 2).map_err(|e| e.to_string())?;
    ensure(t.residue(2).unwrap().to_u64() == Some(7), || "ω(2) mod 25".into())?;
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    for i in 0..200 {
        let p = [3u64, 5, 7, 11, 23][i % 5];
        let mut r = || {
            let x = q(rng.gen_range(1..100_000), rng.gen_range(1..1000));
            if rng.gen_bool(0.5) {
                -x
            } else {
                x
            }
        };
        let (x, y) = (r(), r());
        let n = 20;
        let lx = iwasawa_log(p, &x, n).map_err(|e| e.to_string())?;
        let ly = iwasawa_log(p, &y, n).map_err(|e| e.to_string())?;
        let lxy = iwasawa_log(p, &(&x * &y), n).map_err(|e| e.to_string())?;
        let sum = lx.add(&ly);
        let target = sum.abs_prec().min(lxy.abs_prec());
        ensure(sum.diff_valuation(&lxy) >= target, || format!("additivity p={p} x={x} y={y}"))?;
        let fine = iwasawa_log(p, &x, n + 5).map_err(|e| e.to_string())?;
        ensure(fine.with_abs_prec(lx.abs_prec()) == lx, || format!("truncation p={p} x={x}"))?;
    }
    Ok("log_5(6) ≡ 55 mod 125, ω(2) ≡ 7 mod 25, 200 additive pairs, truncation exact".into())
}

fn c10_cli() -> Check {
    common::cli_tour()
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("polynomial identities", c1_polynomials),
        ("Laplace integrals", c2_laplace),
        ("coefficient extraction", c3_extraction),
        ("class groups", c4_classgroups),
        ("theta lattice/ideal identity", c5_theta),
        ("genus and Hecke relations", c6_lemmas),
        ("main identity residuals", c7_mainid),
        ("Fourier paths and height relation", c8_fourier_heights),
        ("p-adic suite", c9_padic),
        ("CLI determinism and schemas", c10_cli),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(note) => println!("criterion {:>2} PASS [{name}] ({secs:.1}s) {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{name}] ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

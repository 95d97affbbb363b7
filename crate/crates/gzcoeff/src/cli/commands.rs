use super::{Check, Command, ContextArgs, Mode, Report};
use crate::error::{pre, Result};
use crate::heckechar::{theta_coeffs, HeckeChar, ValueMode};
use crate::heights::{self, HeightContext};
use crate::padic::{sigma_a, sigma_log_coefficients};
use crate::polykit::{combo_residual, h_poly, jacobi_residual, rat_string, recur_residual};
use crate::quadfield::{admissible_params, ClassGroup, Discriminant, ParamConstraints};
use serde_json::{json, Value};
use std::sync::atomic::{AtomicUsize, Ordering};

pub(super) fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Classgroup { disc } => classgroup(*disc),
        Command::Ideals { disc, norm } => ideals(*disc, *norm),
        Command::Theta { disc, ell, class, bound, mode, p, prec } => theta(*disc, *ell, *class, *bound, *mode, *p, *prec),
        Command::Hpoly { m, k, check } => hpoly(*m, *k, *check),
        Command::Sigma { disc, level, class, n, p, prec } => sigma(*disc, *level, *class, *n, *p, *prec),
        Command::BcCheck { ctx, mmax, jobs } => bc_check(ctx, *mmax, *jobs),
        Command::Fourier { ctx, m, class } => fourier(ctx, *m, *class),
        Command::Heightsum { ctx, m, class } => heightsum(ctx, *m, *class),
        Command::Crosscheck { ctx, m, class } => crosscheck(ctx, *m, *class),
        Command::Params { disc, p, level_at_least, padic_values } => params(*disc, *p, *level_at_least, *padic_values),
    }
}

fn ok(json: Value, table: Option<(Vec<String>, Vec<Vec<String>>)>) -> Result<Report> {
    Ok(Report { json, table, ok: true })
}

fn head(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn classgroup(d: i64) -> Result<Report> {
    let g = ClassGroup::new(Discriminant::new(d)?)?;
    let classes: Vec<Value> = (0..g.h())
        .map(|i| {
            let f = g.form(i);
            json!({
                "index": i,
                "form": [f.a.to_string(), f.b.to_string(), f.c.to_string()],
                "order": g.order(i),
                "norm": g.class_norm(i),
            })
        })
        .collect();
    let rows = (0..g.h())
        .map(|i| {
            let f = g.form(i);
            vec![i.to_string(), f.a.to_string(), f.b.to_string(), f.c.to_string(), g.order(i).to_string(), g.class_norm(i).to_string()]
        })
        .collect();
    let gens: Vec<Value> = g.generators().iter().map(|&(c, o)| json!({"class": c, "order": o})).collect();
    ok(
        json!({"command": "classgroup", "disc": d, "h": g.h(), "classes": classes, "generators": gens}),
        Some((head(&["index", "a", "b", "c", "order", "norm"]), rows)),
    )
}

fn ideals(d: i64, norm: u64) -> Result<Report> {
    if norm == 0 {
        return pre("norm must be positive");
    }
    let g = ClassGroup::new(Discriminant::new(d)?)?;
    let list = g.ideals_of_norm(norm);
    let rows: Vec<Vec<String>> =
        list.iter().map(|(id, c)| vec![id.scale.to_string(), id.a.to_string(), id.b.to_string(), c.to_string()]).collect();
    let items: Vec<Value> = list
        .iter()
        .map(|(id, c)| json!({"scale": id.scale.to_string(), "a": id.a.to_string(), "b": id.b.to_string(), "class": c}))
        .collect();
    ok(
        json!({"command": "ideals", "disc": d, "norm": norm, "count": list.len(), "ideals": items}),
        Some((head(&["scale", "a", "b", "class"]), rows)),
    )
}

fn theta(d: i64, ell: u32, class: usize, bound: usize, mode: Mode, p: Option<u64>, prec: u32) -> Result<Report> {
    let vm = match (mode, p) {
        (Mode::Exact, _) => ValueMode::Exact,
        (Mode::Complex, _) => ValueMode::Complex { digits: prec },
        (Mode::Padic, Some(p)) => ValueMode::Padic { p, prec },
        (Mode::Padic, None) => return pre("padic mode needs --p"),
    };
    let ch = HeckeChar::build(Discriminant::new(d)?, ell, vm)?;
    if class >= ch.group().h() {
        return pre(format!("class {class} out of range (h = {})", ch.group().h()));
    }
    let s = theta_coeffs(&ch, class, bound)?;
    let digits = prec as usize;
    let values: Vec<Value> = (1..=bound).map(|n| s.get(n).to_json(digits)).collect();
    let (cols, rows) = theta_table(&values);
    ok(
        json!({
            "command": "theta", "disc": d, "ell": ell, "class": class, "bound": bound,
            "mode": vm.name(), "coefficients": values,
        }),
        Some((cols, rows)),
    )
}

/// Flat columns for a coefficient list: a/b, re/im, or p-adic parts as
/// valuation plus space-separated digits.
fn theta_table(values: &[Value]) -> (Vec<String>, Vec<Vec<String>>) {
    let flat = |v: &Value| -> Vec<(String, String)> {
        let mut out = Vec::new();
        for key in ["a", "b", "re", "im"] {
            match v.get(key) {
                Some(Value::String(s)) => out.push((key.to_string(), s.clone())),
                Some(o @ Value::Object(_)) => {
                    out.push((format!("{key}_val"), o["val"].to_string()));
                    let digits: Vec<String> =
                        o["unit"].as_array().into_iter().flatten().map(|d| d.to_string()).collect();
                    out.push((format!("{key}_unit"), digits.join(" ")));
                }
                _ => {}
            }
        }
        out
    };
    let mut cols = vec!["n".to_string()];
    if let Some(v) = values.first() {
        cols.extend(flat(v).into_iter().map(|(k, _)| k));
    }
    let rows = values
        .iter()
        .enumerate()
        .map(|(i, v)| std::iter::once((i + 1).to_string()).chain(flat(v).into_iter().map(|(_, x)| x)).collect())
        .collect();
    (cols, rows)
}

fn hpoly(m: u32, k: u32, check: Option<Check>) -> Result<Report> {
    let h = h_poly(m, k)?;
    let coeffs: Vec<String> = h.coeffs().iter().map(rat_string).collect();
    let rows = coeffs.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.clone()]).collect();
    let mut doc = json!({"coeffs": coeffs});
    let mut holds = true;
    if let Some(c) = check {
        let (name, res) = match c {
            Check::Combo => ("combo", combo_residual(m, k)?),
            Check::Recur => ("recur", recur_residual(m, k)?),
            Check::Jacobi => ("jacobi", jacobi_residual(m, k)?),
        };
        holds = res.is_zero();
        doc["check"] = json!({"identity": name, "holds": holds, "residual": res.coeffs().iter().map(rat_string).collect::<Vec<_>>()});
    }
    Ok(Report { json: doc, table: Some((head(&["i", "coeff"]), rows)), ok: holds })
}

fn sigma(d: i64, level: u64, class: usize, n: u64, p: u64, prec: u32) -> Result<Report> {
    let g = ClassGroup::new(Discriminant::new(d)?)?;
    if class >= g.h() {
        return pre(format!("class {class} out of range (h = {})", g.h()));
    }
    if n == 0 {
        return pre("n must be positive");
    }
    if !crate::arith::is_prime(p) || p == 2 {
        return pre(format!("p = {p} must be an odd prime"));
    }
    let cn = g.class_norm(class);
    let v = sigma_a(d, level, cn, n, p, prec)?;
    let coeffs: serde_json::Map<String, Value> =
        sigma_log_coefficients(d, level, cn, n)?.into_iter().map(|(q, c)| (q.to_string(), json!(c))).collect();
    ok(
        json!({
            "command": "sigma", "disc": d, "level": level, "class": class, "n": n, "p": p, "prec": prec,
            "sigma": v.to_json(), "log_coefficients": coeffs,
        }),
        None,
    )
}

fn context(a: &ContextArgs) -> Result<HeightContext> {
    HeightContext::new(a.disc, a.level, a.p, a.r, a.k, a.prec)
}

fn context_json(c: &HeightContext) -> Value {
    json!({"disc": c.disc().value(), "level": c.level(), "p": c.p(), "r": c.r(), "k": c.k(), "prec": c.prec(), "h": c.h()})
}

fn classes(c: &HeightContext, class: Option<usize>) -> Result<Vec<usize>> {
    match class {
        Some(a) if a >= c.h() => pre(format!("class {a} out of range (h = {})", c.h())),
        Some(a) => Ok(vec![a]),
        None => Ok((0..c.h()).collect()),
    }
}

fn bc_check(a: &ContextArgs, mmax: u64, jobs: usize) -> Result<Report> {
    let c = context(a)?;
    if mmax == 0 {
        return pre("mmax must be positive");
    }
    let cells: Vec<(usize, u64)> = (1..=mmax).flat_map(|m| (0..c.h()).map(move |a| (a, m))).collect();
    let mut slots: Vec<Option<Result<heights::Residual>>> = (0..cells.len()).map(|_| None).collect();
    let next = AtomicUsize::new(0);
    let jobs = jobs.clamp(1, 64);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                s.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= cells.len() {
                            break;
                        }
                        let (a, m) = cells[i];
                        done.push((i, heights::mainid_residual(&c, a, m)));
                    }
                    done
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    let results: Vec<heights::Residual> = slots.into_iter().map(|r| r.expect("filled")).collect::<Result<_>>()?;
    let pass = results.iter().all(|r| r.pass);
    let rows = results
        .iter()
        .map(|r| vec![r.class.to_string(), r.m.to_string(), r.valuation.to_string(), r.target.to_string(), r.pass.to_string()])
        .collect();
    Ok(Report {
        json: json!({
            "command": "bc-check",
            "context": context_json(&c),
            "slack": heights::slack(&c),
            "residuals": results,
            "pass": pass,
        }),
        table: Some((head(&["class", "m", "valuation", "target", "pass"]), rows)),
        ok: pass,
    })
}

fn fourier(a: &ContextArgs, m: u64, class: Option<usize>) -> Result<Report> {
    let c = context(a)?;
    let mut items = Vec::new();
    let mut all_agree = true;
    for cl in classes(&c, class)? {
        let fast = heights::fourier_am(&c, cl, m)?;
        let slow = heights::fourier_am_direct(&c, cl, m)?;
        let agree = fast.diff_valuation(&slow) >= c.prec() as i64;
        all_agree &= agree;
        items.push(json!({"class": cl, "a_m": fast.with_abs_prec(c.prec() as i64).to_json(), "paths_agree": agree}));
    }
    Ok(Report {
        json: json!({"command": "fourier", "context": context_json(&c), "m": m, "values": items}),
        table: None,
        ok: all_agree,
    })
}

fn heightsum(a: &ContextArgs, m: u64, class: Option<usize>) -> Result<Report> {
    let c = context(a)?;
    let mut items = Vec::new();
    for cl in classes(&c, class)? {
        let v = heights::local_height_sum(&c, cl, m)?;
        items.push(json!({"class": cl, "value": v.with_abs_prec(c.prec() as i64).to_json()}));
    }
    ok(json!({"command": "heightsum", "context": context_json(&c), "m": m, "values": items}), None)
}

fn crosscheck(a: &ContextArgs, m: u64, class: Option<usize>) -> Result<Report> {
    let c = context(a)?;
    let mut items = Vec::new();
    let mut pass = true;
    for cl in classes(&c, class)? {
        let rep = heights::height_fourier_residual(&c, cl, m)?;
        pass &= rep.verbatim.pass;
        let discrepancy = !rep.verbatim.pass && rep.sign_flipped.pass;
        let mut v = serde_json::to_value(&rep).expect("serialisable");
        v["sign_discrepancy"] = json!(discrepancy);
        items.push(v);
    }
    Ok(Report {
        json: json!({"command": "crosscheck", "context": context_json(&c), "m": m, "reports": items, "pass": pass}),
        table: None,
        ok: pass,
    })
}

fn params(d: i64, p: Option<u64>, level_at_least: Option<u64>, padic_values: bool) -> Result<Report> {
    let disc = Discriminant::new(d)?;
    let has_values = |q: u64| {
        HeckeChar::build(disc, 2, ValueMode::Padic { p: q, prec: 4 }).map(|c| c.values_in_qp()).unwrap_or(false)
    };
    let cons = ParamConstraints {
        fixed_p: p,
        level_at_least,
        p_filter: if padic_values { Some(&has_values) } else { None },
        ..Default::default()
    };
    let (level, pp) = admissible_params(disc, &cons)?;
    ok(json!({"command": "params", "disc": d, "level": level, "p": pp}), None)
}

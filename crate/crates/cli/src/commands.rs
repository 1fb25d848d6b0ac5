use std::io::Write;
use std::sync::Arc;

use gaussrel::arith::{checked_pow, prime_power};
use gaussrel::characters::MultCharacter;
use gaussrel::dft::DEFAULT_CHIRP_THRESHOLD;
use gaussrel::charsums::{gauss_all_with, gauss_sum, GaussTable};
use gaussrel::equidist::{
    corollary_experiment, sweep_primes, weyl_series, window_vectors, MonomialConfig, Preset, PresetKind, SweepConfig,
};
use gaussrel::identities::run_suite;
use gaussrel::relations::{
    constancy_spread, decompose as decide, numeric_crosscheck, parse_monomial, verify_decomposition, Verdict,
};
use serde_json::json;

use crate::output::{emit, float, sink, tuple};
use crate::{cache, parse};
use crate::{DecomposeArgs, Failure, GaussArgs, Globals, JacobiArgs, SweepArgs, VerifyArgs, WeylArgs};

type Res = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn field(q: u64) -> Result<(u64, u32), Failure> {
    Ok(prime_power(q)?)
}

fn tables(q: u64, levels: &[u32]) -> Result<Vec<GaussTable>, Failure> {
    let (p, f) = field(q)?;
    levels.iter().map(|&m| Ok(cache::table(p, f, m)?)).collect()
}

pub fn verify(args: &VerifyArgs, _g: &Globals) -> Res {
    let fields: Vec<u64> = parse::list(&args.fields).map_err(usage)?;
    if fields.is_empty() {
        return Err(usage("the field list is empty"));
    }
    if args.tol <= 0.0 {
        return Err(usage("tolerance must be positive"));
    }
    let mut all = Vec::new();
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for &q in &fields {
        let (p, f) = field(q)?;
        let base = cache::table(p, f, 1)?;
        let mut lifts = Vec::new();
        for m in 2..=args.lift {
            match checked_pow(q, m) {
                Ok(order) if order <= args.max_order => lifts.push(cache::table(p, f, m)?),
                _ => break,
            }
        }
        for rep in run_suite(&base, &lifts)? {
            let ok = rep.passes(args.tol);
            let _ = writeln!(
                out,
                "q={q:<6} {:<24} order={:<8} residual={:.3e} sweep={:<8} ms={:.1} {}",
                rep.identity,
                rep.order,
                rep.max_residual,
                rep.sweep_size,
                rep.wall_ms,
                if ok { "PASS" } else { "FAIL" }
            );
            if !ok {
                failed.push(format!("{} at q^m = {}", rep.identity, rep.order));
            }
            all.push(json!({ "q": q, "report": rep }));
        }
    }
    if let Some(path) = &args.json {
        let doc = json!({ "tol": args.tol, "fields": fields, "reports": all });
        std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap() + "\n")
            .map_err(|e| usage(format!("{path}: {e}")))?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Tolerance(failed.join(", ")))
    }
}

fn monomial_config(entries: &[String], q: u64) -> Result<MonomialConfig, Failure> {
    let entries = entries.iter().map(|e| parse::entry(e)).collect::<Result<Vec<_>, _>>().map_err(usage)?;
    let r = entries[0].a.len();
    let config = MonomialConfig::new(r, entries)?;
    config.check_base(q)?;
    Ok(config)
}

pub fn weyl(args: &WeylArgs, g: &Globals) -> Res {
    let config = monomial_config(&args.entries, args.q)?;
    let mut cs: Vec<Vec<i64>> = args.cs.iter().map(|c| parse::ints(c)).collect::<Result<_, _>>().map_err(usage)?;
    if let Some(k) = args.cmax {
        if k < 1 {
            return Err(usage("cmax must be positive"));
        }
        cs.extend(window_vectors(config.len(), k));
    }
    if cs.is_empty() {
        return Err(usage("give at least one --c or --cmax"));
    }
    if let Some(c) = cs.iter().find(|c| c.len() != config.len()) {
        return Err(usage(format!("c = ({}) needs {} coordinates", tuple(c), config.len())));
    }
    let levels = parse::levels(&args.levels).map_err(usage)?;
    let calibration = parse::levels(&args.calibrate).map_err(usage)?;
    let tabs = tables(args.q, &levels)?;
    let mut rows = Vec::new();
    for c in &cs {
        for rep in weyl_series(&config, c, &tabs, &calibration)? {
            rows.push(vec![
                rep.m.to_string(),
                rep.q.to_string(),
                tuple(&rep.c),
                float(rep.sigma.re),
                float(rep.sigma.im),
                float(rep.sigma.norm()),
                rep.s_size.to_string(),
                rep.a_const.to_string(),
                rep.rhs.map(float).unwrap_or_default(),
            ]);
        }
    }
    emit(
        &args.out,
        "weyl",
        args,
        g,
        json!({ "sum": "compensated, fixed chunk order" }),
        &["m", "q", "c", "re", "im", "abs", "s_size", "a", "rhs"],
        &rows,
    )
}

pub fn sweep_q(args: &SweepArgs, g: &Globals) -> Res {
    let entries =
        args.entries.iter().map(|e| parse::sweep_entry(e)).collect::<Result<Vec<_>, _>>().map_err(usage)?;
    let r = entries[0].a.len();
    if entries.iter().any(|e| e.a.len() != r) {
        return Err(usage("entries have different dimensions"));
    }
    let cfg = SweepConfig { r, entries, cap: args.cap };
    let c = parse::ints(&args.c).map_err(usage)?;
    let primes = parse::primes(&args.primes).map_err(usage)?;
    let rows: Vec<Vec<String>> = sweep_primes(&cfg, &c, &primes)?
        .into_iter()
        .map(|row| vec![row.q.to_string(), float(row.abs_sigma), float(row.scaled), row.s_size.to_string()])
        .collect();
    emit(&args.out, "sweep-q", args, g, json!({ "cap": args.cap }), &["q", "abs", "scaled", "s_size"], &rows)
}

pub fn decompose(args: &DecomposeArgs, g: &Globals) -> Res {
    let x = parse_monomial(&args.monomial, args.r, args.q)?;
    let (p, f) = field(args.q)?;
    let base = cache::table(p, f, 1)?;
    let verdict = decide(&x, base.ctx())?;
    let mut doc = json!({ "q": args.q, "r": x.r(), "input": x.to_string(), "result": verdict });
    let mut worst: Option<f64> = None;
    match &verdict {
        Verdict::InH(dec) => {
            let ok = verify_decomposition(&x, dec)?;
            doc["verified"] = json!(ok);
            if !ok {
                return Err(Failure::Tolerance("certificate does not reproduce the input".into()));
            }
        }
        Verdict::NotInH(_) => doc["verified"] = json!(null),
    }
    if args.crosscheck {
        let levels = parse::levels(&args.levels).map_err(usage)?;
        let mut checks = Vec::new();
        for m in levels {
            let table = cache::table(p, f, m)?;
            match &verdict {
                Verdict::InH(dec) => {
                    let rep = numeric_crosscheck(&x, dec, &table, &base, args.sample.map(|n| (n, g.seed)))?;
                    worst = Some(worst.unwrap_or(0.0).max(rep.max_deviation));
                    checks.push(json!(rep));
                }
                Verdict::NotInH(_) => {
                    checks.push(json!({ "m": m, "spread": constancy_spread(&x, &table)? }));
                }
            }
        }
        doc["crosscheck"] = json!({ "tol": args.tol, "seed": g.seed, "sample": args.sample, "levels": checks });
    }
    let mut w = sink(&args.out)?;
    writeln!(w, "{}", serde_json::to_string_pretty(&doc).unwrap()).map_err(|e| usage(e.to_string()))?;
    match worst {
        Some(d) if d > args.tol => Err(Failure::Tolerance(format!("numeric deviation {d:.3e} exceeds {:.1e}", args.tol))),
        _ => Ok(()),
    }
}

fn preset(args: &JacobiArgs) -> Result<Preset, Failure> {
    let kind: PresetKind = args.preset.parse()?;
    Ok(match kind {
        PresetKind::JacobiAllFree => Preset::AllFree { n: args.n.ok_or_else(|| usage("jacobi_all_free needs --n"))? },
        PresetKind::JacobiFixedTail => Preset::FixedTail {
            d: args.d.ok_or_else(|| usage("jacobi_fixed_tail needs --d"))?,
            tails: args.tails.iter().map(|t| parse::characters(t)).collect::<Result<_, _>>().map_err(usage)?,
        },
        PresetKind::JacobiPowers => Preset::Powers {
            ds: parse::list(args.ds.as_deref().ok_or_else(|| usage("jacobi_powers needs --ds"))?).map_err(usage)?,
        },
    })
}

pub fn jacobi(args: &JacobiArgs, g: &Globals) -> Res {
    let preset = preset(args)?;
    if args.cmax < 1 {
        return Err(usage("cmax must be positive"));
    }
    let levels = parse::levels(&args.levels).map_err(usage)?;
    let mut rows = Vec::new();
    for table in tables(args.q, &levels)? {
        let rep = match corollary_experiment(&preset, &table, args.cmax) {
            Err(gaussrel::Error::EmptySet(_)) => continue,
            other => other?,
        };
        for (c, s) in &rep.sums {
            rows.push(vec![
                rep.m.to_string(),
                rep.q.to_string(),
                rep.preset.to_string(),
                tuple(c),
                float(s.re),
                float(s.im),
                float(s.norm()),
                rep.s_size.to_string(),
                float(rep.max_modulus_dev),
                float(rep.discrepancy_proxy),
            ]);
        }
    }
    emit(
        &args.out,
        "jacobi",
        args,
        g,
        json!({ "cmax": args.cmax }),
        &["m", "q", "preset", "c", "re", "im", "abs", "s_size", "max_modulus_dev", "discrepancy"],
        &rows,
    )
}

pub fn gauss(args: &GaussArgs, g: &Globals) -> Res {
    let (p, f) = field(args.q)?;
    if args.m == 0 {
        return Err(usage("m must be positive"));
    }
    let rows: Vec<Vec<String>> = match (args.index, args.alpha_log) {
        (Some(e), alpha) => {
            let ctx = gaussrel::field::make_field(p, f, args.m, args.m)?;
            let alpha = ctx.exp_gen(alpha.unwrap_or(0));
            let chi = MultCharacter::new(&ctx, e as i128);
            let v = gauss_sum(&ctx, &chi, &alpha)?;
            vec![vec![chi.index.to_string(), float(v.re), float(v.im), float(v.norm())]]
        }
        (None, None) if args.threshold == DEFAULT_CHIRP_THRESHOLD => row_all(cache::table(p, f, args.m)?.values()),
        (None, alpha) => {
            let ctx = Arc::new(gaussrel::field::make_field(p, f, args.m, args.m)?);
            row_all(&gauss_all_with(&ctx, &ctx.exp_gen(alpha.unwrap_or(0)), args.threshold)?)
        }
    };
    emit(&args.out, "gauss", args, g, json!({}), &["e", "re", "im", "abs"], &rows)
}

fn row_all(values: &[num_complex::Complex64]) -> Vec<Vec<String>> {
    values
        .iter()
        .enumerate()
        .map(|(e, v)| vec![e.to_string(), float(v.re), float(v.im), float(v.norm())])
        .collect()
}

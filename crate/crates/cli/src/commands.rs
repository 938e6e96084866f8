//! `shadow`, `scan`, `converge`, `tree` and `iterate`.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use shadowcf::experiments;
use shadowcf::farey::{farey_shadow, farey_tree};
use shadowcf::rational::{format_compact, format_fraction, parse_rational, to_decimal, to_f64};
use shadowcf::shadows::{
    cf_expand, iterated_shadow_experiment, irrational_shadow, super_cf, CFExpansion,
    ConvergentShadows,
};
use shadowcf::{Error, Rational, SuperVector3};

use crate::stream::StreamSpec;
use crate::svg::{self, Series};
use crate::{
    usage, CliError, CliResult, ConvergeArgs, IterateArgs, ScanArgs, ShadowArgs, TreeArgs,
    TreeFormat,
};

fn vector(v: &SuperVector3, ascii: bool) -> String {
    if ascii {
        let [a, b, c] = &v.entries;
        format!("({a:#}, {b:#}, {c:#})")
    } else {
        v.to_string()
    }
}

fn exact_and_decimal(x: &Rational, digits: usize) -> String {
    format!("{} ({})", format_compact(x), to_decimal(x, digits))
}

fn parse_positive(s: &str, what: &str) -> CliResult<Rational> {
    let x = parse_rational(s).map_err(|e| usage(format!("{what}: {e}")))?;
    if !x.is_positive() {
        return Err(usage(format!("{what} must be positive, got {}", format_compact(&x))));
    }
    Ok(x)
}

fn parse_coefficients(s: &str) -> CliResult<CFExpansion> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    let coefficients = body
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| usage(format!("`{}` is not an integer", t.trim())))
        })
        .collect::<CliResult<Vec<_>>>()?;
    CFExpansion::new(coefficients).map_err(|e| usage(e.to_string()))
}

pub fn shadow(args: &ShadowArgs, out: &mut dyn Write) -> CliResult {
    let d = args.digits;
    let is_list = args.input.contains(',') || args.input.trim_start().starts_with('[');
    let value = if is_list {
        let expansion = parse_coefficients(&args.input)?;
        let v = super_cf(&expansion)?;
        writeln!(out, "expansion: {expansion}")?;
        writeln!(out, "value: {}", exact_and_decimal(&v.classical, d))?;
        writeln!(out, "shadow: {}", exact_and_decimal(&v.shadow, d))?;
        writeln!(out, "vector: {}", vector(&v.raw_vector, args.ascii))?;
        if !v.classical.is_positive() {
            // even, odd and Farey shadows need a positive value
            return Ok(());
        }
        v.classical
    } else {
        let x = parse_rational(&args.input).map_err(|e| usage(e.to_string()))?;
        if !x.is_positive() {
            return Err(usage(format!(
                "shadows are defined for positive rationals, got {}",
                format_compact(&x)
            )));
        }
        writeln!(out, "value: {}", exact_and_decimal(&x, d))?;
        x
    };
    let (p, q) = (value.numer(), value.denom());
    let (even, odd) = cf_expand(p, q)?;
    let (ev, ov) = (super_cf(&even)?, super_cf(&odd)?);
    writeln!(out, "even form: {even}")?;
    writeln!(out, "odd form: {odd}")?;
    writeln!(out, "ES: {}", exact_and_decimal(&ev.shadow, d))?;
    writeln!(out, "OS: {}", exact_and_decimal(&ov.shadow, d))?;
    match farey_shadow(p.clone(), q.clone(), args.fs_depth)? {
        Some(f) => {
            writeln!(out, "FS: {} at depth {}", exact_and_decimal(&f.fs, d), f.depth)?;
            writeln!(out, "even vector: {}", vector(&ev.raw_vector, args.ascii))?;
            writeln!(out, "odd vector: {}", vector(&ov.raw_vector, args.ascii))?;
            writeln!(out, "Farey vector: {}", vector(&f.vector, args.ascii))?;
        }
        None => {
            writeln!(out, "FS: not reached within depth {}", args.fs_depth)?;
            writeln!(out, "even vector: {}", vector(&ev.raw_vector, args.ascii))?;
            writeln!(out, "odd vector: {}", vector(&ov.raw_vector, args.ascii))?;
        }
    }
    Ok(())
}

pub fn scan(args: &ScanArgs, out: &mut dyn Write) -> CliResult {
    if args.qmax == 0 {
        return Err(usage("--qmax must be at least 1"));
    }
    let lo = parse_rational(&args.lo).map_err(|e| usage(format!("--lo: {e}")))?;
    let hi = parse_rational(&args.hi).map_err(|e| usage(format!("--hi: {e}")))?;
    if lo >= hi {
        return Err(usage("--lo must be smaller than --hi"));
    }
    let rows = experiments::scan(args.qmax, &lo, &hi, args.fs_depth)?;
    writeln!(out, "p,q,value,es,os,fs")?;
    for r in &rows {
        let fs = r.fs.as_ref().map(format_fraction).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.p,
            r.q,
            to_decimal(&r.value(), args.digits),
            format_fraction(&r.es),
            format_fraction(&r.os),
            fs
        )?;
    }
    if let Some(path) = &args.svg {
        let points = |f: &dyn Fn(&experiments::ScanEntry) -> Option<Rational>| {
            rows.iter()
                .filter_map(|r| f(r).map(|y| (to_f64(&r.value()), to_f64(&y))))
                .collect::<Vec<_>>()
        };
        let mut series = vec![
            Series {
                name: "ES",
                color: "#c0392b",
                points: points(&|r| Some(r.es.clone())),
            },
            Series {
                name: "OS",
                color: "#2471a3",
                points: points(&|r| Some(r.os.clone())),
            },
        ];
        if args.fs_depth.is_some() {
            series.push(Series {
                name: "FS",
                color: "#229954",
                points: points(&|r| r.fs.clone()),
            });
        }
        let title = format!(
            "shadows of p/q, q <= {}, {} <= p/q <= {}",
            args.qmax,
            format_compact(&lo),
            format_compact(&hi)
        );
        let doc = svg::scatter(&title, (to_f64(&lo), to_f64(&hi)), &series);
        std::fs::write(path, doc)?;
    }
    Ok(())
}

pub fn converge(args: &ConvergeArgs, out: &mut dyn Write) -> CliResult {
    let spec = StreamSpec::parse(&args.stream)?;
    let tol = parse_positive(&args.tol, "--tol")?;
    if args.max_terms == 0 {
        return Err(usage("--max-terms must be at least 1"));
    }
    let result = irrational_shadow(spec.iter(), &tol, args.max_terms);
    let rows = match &result {
        Ok(l) => l.n_used,
        Err(Error::NotConverged(l)) => l.n_used,
        Err(Error::InvalidCoefficient { .. }) => {
            return Err(usage(result.unwrap_err().to_string()));
        }
        Err(_) => return Err(result.unwrap_err().into()),
    };

    writeln!(out, "n,a_n,shadow,decimal,delta")?;
    let mut prev: Option<Rational> = None;
    for c in ConvergentShadows::new(spec.iter()).take(rows) {
        let c = c?;
        let delta = prev
            .as_ref()
            .map(|p| format_fraction(&(&c.shadow - p).abs()))
            .unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{}",
            c.n,
            c.a_n,
            format_fraction(&c.shadow),
            to_decimal(&c.shadow, args.digits),
            delta
        )?;
        prev = Some(c.shadow);
    }

    let limit = match result {
        Ok(l) => l,
        Err(Error::NotConverged(l)) => {
            writeln!(out, "# not converged after {} terms", l.n_used)?;
            writeln!(out, "# last value = {}", to_decimal(&l.value, args.digits))?;
            writeln!(out, "# last delta = {:.3e}", to_f64(&l.last_delta))?;
            return Err(CliError::NotConverged(format!(
                "no convergence to {} within {} terms",
                args.tol, args.max_terms
            )));
        }
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "# limit = {}", format_fraction(&limit.value))?;
    writeln!(out, "# decimal = {}", to_decimal(&limit.value, args.digits))?;
    writeln!(out, "# terms = {}", limit.n_used)?;
    writeln!(out, "# last delta = {:.3e}", to_f64(&limit.last_delta))?;
    if let Some(r) = limit.max_tail_ratio(10) {
        writeln!(out, "# max tail ratio (n >= 10) = {r:.4}")?;
    }
    if !limit.last_delta.is_zero() {
        let a1 = to_f64(&Rational::from_integer(spec.first()));
        writeln!(out, "# fitted C = {:.4}", limit.fitted_constant(a1))?;
    }
    Ok(())
}

pub fn tree(args: &TreeArgs, out: &mut dyn Write) -> CliResult {
    if args.depth > args.limit {
        return Err(usage(format!(
            "--depth {} is over the limit {}",
            args.depth, args.limit
        )));
    }
    let tree = farey_tree(args.depth);
    match args.format {
        TreeFormat::Text => write!(out, "{}", tree.to_text())?,
        TreeFormat::Dot => write!(out, "{}", tree.to_dot())?,
        TreeFormat::Json => {
            let s = serde_json::to_string_pretty(&tree.to_json()).expect("tree JSON");
            writeln!(out, "{s}")?;
        }
    }
    Ok(())
}

pub fn iterate(args: &IterateArgs, out: &mut dyn Write) -> CliResult {
    let spec = StreamSpec::parse(&args.stream)?;
    let tol = parse_positive(&args.tol, "--tol")?;
    let trajectory = iterated_shadow_experiment(|| spec.iter(), args.depth, &tol, args.max_terms)?;
    writeln!(out, "level,value,decimal,error_bar,n_used,input_digits")?;
    for s in &trajectory.steps {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            s.level,
            format_fraction(&s.value),
            to_decimal(&s.value, args.digits),
            format_fraction(&s.error_bar),
            s.n_used,
            s.input_digits.map(|n| n.to_string()).unwrap_or_default()
        )?;
    }
    match &trajectory.stopped {
        Some(reason) => writeln!(out, "# stopped: {reason}")?,
        None => writeln!(out, "# completed {} levels", trajectory.steps.len())?,
    }
    Ok(())
}

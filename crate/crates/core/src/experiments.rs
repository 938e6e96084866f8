//! Scans over rationals and the reports built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::Result;
use crate::farey::farey_shadow;
use crate::rational::Rational;
use crate::shadows::{odd_shadow, shadows_of};

/// Reduced `p/q` with `1 ≤ q ≤ qmax` and `lo ≤ p/q ≤ hi`, sorted by value.
pub fn reduced_fractions(qmax: u64, lo: &Rational, hi: &Rational) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for q in 1..=qmax {
        let qr = Rational::from_integer(BigInt::from(q));
        let pmin = (lo * &qr).ceil().to_integer();
        let pmax = (hi * &qr).floor().to_integer();
        let (Ok(pmin), Ok(pmax)) = (i128::try_from(pmin), i128::try_from(pmax)) else {
            continue;
        };
        for p in pmin.max(0)..=pmax {
            let p = p as u64;
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out.sort_by(|a, b| (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub p: u64,
    pub q: u64,
    pub es: Rational,
    pub os: Rational,
    /// `None` when not requested or deeper than the depth limit.
    pub fs: Option<Rational>,
}

impl ScanEntry {
    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.p), BigInt::from(self.q))
    }
}

/// Shadows of every positive reduced fraction in the range. Work is spread
/// over the current rayon pool; the output order is always by value.
pub fn scan(qmax: u64, lo: &Rational, hi: &Rational, fs_depth: Option<usize>) -> Result<Vec<ScanEntry>> {
    reduced_fractions(qmax, lo, hi)
        .into_par_iter()
        .filter(|&(p, _)| p > 0)
        .map(|(p, q)| {
            let (es, os) = shadows_of(p, q)?;
            let fs = match fs_depth {
                Some(d) => farey_shadow(p, q, d)?.map(|v| v.fs),
                None => None,
            };
            Ok(ScanEntry { p, q, es, os, fs })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub p: u64,
    pub q: u64,
    pub relation: &'static str,
    pub es: Rational,
    pub os: Rational,
    pub fs: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub checked: usize,
    /// Fractions whose Farey shadow was not reached within the depth limit.
    pub fs_missing: usize,
    pub violations: Vec<Violation>,
}

impl ConjectureReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.fs_missing == 0
    }
}

/// Checks `ES > OS` and `ES ≥ FS ≥ OS` on every reduced `p/q` in the range.
pub fn conjecture_report(qmax: u64, lo: &Rational, hi: &Rational, fs_depth: usize) -> Result<ConjectureReport> {
    let rows = scan(qmax, lo, hi, Some(fs_depth))?;
    let mut report = ConjectureReport {
        checked: rows.len(),
        fs_missing: 0,
        violations: Vec::new(),
    };
    for r in rows {
        let mut flag = |relation| {
            report.violations.push(Violation {
                p: r.p,
                q: r.q,
                relation,
                es: r.es.clone(),
                os: r.os.clone(),
                fs: r.fs.clone(),
            })
        };
        if r.es <= r.os {
            flag("ES > OS");
        }
        match &r.fs {
            Some(fs) => {
                if &r.es < fs {
                    flag("ES >= FS");
                }
                if fs < &r.os {
                    flag("FS >= OS");
                }
            }
            None => report.fs_missing += 1,
        }
    }
    Ok(report)
}

/// `(OS((2n+1)/n), (n−1)(2n−1)/n²)`; the two agree for `n ≥ 2`.
pub fn discontinuity_witness(n: u64) -> Result<(Rational, Rational)> {
    let os = odd_shadow(2 * n + 1, n)?;
    let n = BigInt::from(n);
    let closed = Rational::new((&n - 1) * (&n * 2 - 1), &n * &n);
    Ok((os, closed))
}

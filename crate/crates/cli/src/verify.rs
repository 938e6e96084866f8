//! Invariant suites behind `verify`.
//!
//! Each suite returns a list of named checks; a failed check carries the
//! first counterexample found, in enumeration order (smallest first).

use std::io::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use shadowcf::continuants::{
    big, continuant, det_d_direct, det_d_recurrence, nbar, shadow_continuant,
};
use shadowcf::experiments::{conjecture_report, discontinuity_witness, reduced_fractions};
use shadowcf::farey::{farey_shadow, farey_tree, fibonacci_branch, Half};
use shadowcf::grassmann::EvenElem;
use shadowcf::rational::{format_compact, int, ratio, Rational};
use shadowcf::sequences::{a001629, a004524, a054454};
use shadowcf::shadows::{
    accordance_check, cf_expand, constant_stream, even_shadow, irrational_shadow, odd_shadow,
    shadow_via_continuants, shadow_via_euler, shadows_of, super_cf, CFExpansion,
    ConvergentShadows,
};
use shadowcf::{Generator, RingElem, SuperMatrix3};

use crate::{CliError, CliResult, Suite};

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    /// `None` when the check passed, else a counterexample.
    pub failure: Option<String>,
    /// Informational checks never affect the exit status.
    pub hard: bool,
}

struct Collector {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Collector {
    fn new(suite: &'static str) -> Self {
        Collector {
            suite,
            checks: Vec::new(),
        }
    }

    fn add(&mut self, name: impl Into<String>, failure: Option<String>) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            failure,
            hard: true,
        });
    }

    fn expect(&mut self, name: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        let failure = (!ok).then(detail);
        self.add(name, failure);
    }

    fn note(&mut self, name: impl Into<String>, failure: Option<String>) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            failure,
            hard: false,
        });
    }
}

/// Runs `suite` and writes one line per check, then a summary.
pub fn run(suite: Suite, out: &mut dyn Write) -> CliResult {
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![
            Suite::Ring,
            Suite::Group,
            Suite::Continuants,
            Suite::Shadows,
            Suite::Farey,
            Suite::Conjectures,
        ],
        s => vec![s],
    };
    let results: Vec<Vec<Check>> = suites.par_iter().map(|&s| checks(s)).collect();
    let mut failed = 0;
    let mut total = 0;
    for check in results.iter().flatten() {
        let tag = match (&check.failure, check.hard) {
            (None, _) => "ok",
            (Some(_), true) => "FAIL",
            (Some(_), false) => "found",
        };
        match &check.failure {
            None => writeln!(out, "[{tag}] {}: {}", check.suite, check.name)?,
            Some(why) => writeln!(out, "[{tag}] {}: {}: {why}", check.suite, check.name)?,
        }
        if check.hard {
            total += 1;
            if check.failure.is_some() {
                failed += 1;
            }
        }
    }
    writeln!(out, "verify: {total} hard checks, {failed} failed")?;
    if failed > 0 {
        return Err(CliError::Invariant(format!("{failed} of {total} hard checks failed")));
    }
    Ok(())
}

pub fn checks(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::All => [
            Suite::Ring,
            Suite::Group,
            Suite::Continuants,
            Suite::Shadows,
            Suite::Farey,
            Suite::Conjectures,
        ]
        .into_iter()
        .flat_map(checks)
        .collect(),
        Suite::Ring => ring(),
        Suite::Group => group(),
        Suite::Continuants => continuants(),
        Suite::Shadows => shadows(),
        Suite::Farey => farey(),
        Suite::Conjectures => conjectures(),
    }
}

fn random_elem(rng: &mut ChaCha8Rng) -> RingElem {
    let mut c = || ratio(rng.random_range(-6..=6), rng.random_range(1..=3));
    RingElem::new(c(), c(), c(), c())
}

/// First element of `items` (in order) for which `test` reports a problem.
fn first_failure<T, F>(items: &[T], test: F) -> Option<String>
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    items.par_iter().find_map_first(test)
}

fn ring() -> Vec<Check> {
    let mut c = Collector::new("ring");
    let mut rng = ChaCha8Rng::seed_from_u64(0x0123);
    let triples: Vec<[RingElem; 3]> = (0..300)
        .map(|_| [random_elem(&mut rng), random_elem(&mut rng), random_elem(&mut rng)])
        .collect();
    let show = |t: &[RingElem; 3]| format!("a = {}, b = {}, c = {}", t[0], t[1], t[2]);

    let (x, e) = (RingElem::xi(), RingElem::eta());
    c.expect("xi^2 = eta^2 = 0", (&x * &x).is_zero() && (&e * &e).is_zero(), String::new);
    c.expect("xi eta = -eta xi", &x * &e == -(&e * &x), String::new);
    c.add(
        "associativity",
        first_failure(&triples, |[a, b, d]| {
            ((&(a * b) * d) != (a * &(b * d))).then(|| show(&[a.clone(), b.clone(), d.clone()]))
        }),
    );
    c.add(
        "distributivity",
        first_failure(&triples, |t @ [a, b, d]| {
            let left = a * &(b + d) != &(a * b) + &(a * d);
            let right = &(a + b) * d != &(a * d) + &(b * d);
            (left || right).then(|| show(t))
        }),
    );
    c.add(
        "even parts are central",
        first_failure(&triples, |t @ [a, b, _]| {
            let ev = RingElem::from(a.even_part());
            (&ev * b != b * &ev).then(|| show(t))
        }),
    );
    c.add(
        "odd parts anticommute and square to zero",
        first_failure(&triples, |t @ [a, b, _]| {
            let (x, y) = (RingElem::from(a.odd_part()), RingElem::from(b.odd_part()));
            (&x * &y != -(&y * &x) || !(&x * &x).is_zero()).then(|| show(t))
        }),
    );
    c.add(
        "tau is multiplicative, tau^2 is the grade involution",
        first_failure(&triples, |t @ [a, b, _]| {
            let mult = (a * b).tau() != &a.tau() * &b.tau();
            let square = a.tau().tau() != a.grade_involution();
            let four = a.tau().tau().tau().tau() != *a;
            (mult || square || four).then(|| show(t))
        }),
    );
    c.add(
        "text round trip",
        first_failure(&triples, |[a, _, _]| {
            let plain = a.to_string().parse::<RingElem>().ok();
            let ascii = format!("{a:#}").parse::<RingElem>().ok();
            (plain.as_ref() != Some(a) || ascii.as_ref() != Some(a)).then(|| a.to_string())
        }),
    );
    c.add(
        "even division inverts multiplication",
        first_failure(&triples, |t @ [a, b, _]| {
            let (x, y) = (a.even_part(), b.even_part());
            if y.body.is_zero() {
                return None;
            }
            let ok = x.checked_div(&y).map(|z| &z * &y == x).unwrap_or(false);
            (!ok).then(|| show(t))
        }),
    );
    let zero_body = EvenElem::ints(0, 1);
    c.expect(
        "division by a zero-body element is refused",
        EvenElem::ints(1, 0).checked_div(&zero_body).is_err(),
        String::new,
    );
    c.checks
}

fn group() -> Vec<Check> {
    use Generator::*;
    let mut c = Collector::new("group");
    let g = |x: Generator| x.matrix();
    let id = SuperMatrix3::identity();
    let pow = |x: Generator, k| g(x).pow(k).expect("generators are invertible");
    c.expect("U^3 = I", pow(U, 3) == id, || format!("{}", pow(U, 3)));
    c.expect("V^3 = I", pow(V, 3) == id, || format!("{}", pow(V, 3)));
    c.expect(
        "S^2 = diag(-1,-1,1), S^4 = I",
        pow(S, 2) == SuperMatrix3::diag(-1, -1, 1) && pow(S, 4) == id,
        || format!("{}", pow(S, 2)),
    );
    c.expect("V = R S", &g(R) * &g(S) == g(V), String::new);
    let l_inv = g(L).inverse().expect("L is invertible");
    c.expect("U = L^-1 S", &l_inv * &g(S) == g(U), String::new);
    c.expect("L L^-1 = I", &g(L) * &l_inv == id, String::new);
    c.expect("tau(S) = S", g(S).tau() == g(S), String::new);
    let j = g(J);
    let bad = Generator::ALL
        .iter()
        .find(|&&x| g(x).tau().tau() != &(&j * &g(x)) * &j);
    c.expect("tau^2 = conjugation by J", bad.is_none(), || {
        bad.map(|x| x.name().to_string()).unwrap_or_default()
    });
    let s_inv = g(S).inverse().expect("S is invertible");
    c.expect("tau(S U S^-1) = V", (&(&g(S) * &g(U)) * &s_inv).tau() == g(V), String::new);
    for x in Generator::ALL {
        let failure = g(x).osp_check().err().map(|v| v.to_string());
        c.add(format!("is_osp({})", x.name()), failure);
    }
    let mut pool = Vec::new();
    for x in [R, L, U, V, S, E] {
        pool.push((x.name().to_string(), g(x)));
        pool.push((format!("{}^-1", x.name()), g(x).inverse().expect("invertible")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let words: Vec<Vec<usize>> = (0..1000)
        .map(|_| {
            let len = rng.random_range(1..=20);
            (0..len).map(|_| rng.random_range(0..pool.len())).collect()
        })
        .collect();
    c.add(
        "is_osp on 1000 random words of length <= 20",
        first_failure(&words, |w| {
            let m = w.iter().fold(id.clone(), |m, &i| &m * &pool[i].1);
            (!m.is_osp()).then(|| {
                w.iter().map(|&i| pool[i].0.as_str()).collect::<Vec<_>>().join(" ")
            })
        }),
    );
    c.checks
}

/// Lists of length `n`, `a₁ ∈ first`, later entries in `1..=max`.
fn lists(n: usize, first: std::ops::RangeInclusive<i64>, max: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = first.map(|a| vec![a]).collect();
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn all_lists(first: std::ops::RangeInclusive<i64>) -> Vec<Vec<i64>> {
    (1..=8).flat_map(|n| lists(n, first.clone(), 4)).collect()
}

fn continuants() -> Vec<Check> {
    let mut c = Collector::new("continuants");
    let cases = all_lists(1..=4);
    let long: Vec<&Vec<i64>> = cases.iter().filter(|a| a.len() >= 2).collect();
    c.add(
        "K_n K_{n-2}(a2..a_{n-1}) - K_{n-1}(a1..a_{n-1}) K_{n-1}(a2..an) = (-1)^n",
        first_failure(&long, |a| {
            let b = big(a);
            let n = b.len();
            let det = continuant(&b).k * continuant(&b[1..n - 1]).k
                - continuant(&b[..n - 1]).k * continuant(&b[1..]).k;
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            (det != sign).then(|| format!("{a:?}"))
        }),
    );
    c.add(
        "K'_n = a1 K_{n-1} + a1 K'_{n-1} + K'_{n-2} - a1 nbar",
        first_failure(&long, |a| {
            let b = big(a);
            let rec = &b[0] * continuant(&b[1..]).k
                + &b[0] * shadow_continuant(&b[1..]).kprime
                + shadow_continuant(&b[2..]).kprime
                - &b[0] * nbar(b.len());
            (shadow_continuant(&b).kprime != rec).then(|| format!("{a:?}"))
        }),
    );
    c.add(
        "D_n direct = D_n recurrence, and D_n > 0",
        first_failure(&long, |a| {
            let b = big(a);
            let (d, r) = (det_d_direct(&b).ok()?, det_d_recurrence(&b).ok()?);
            (d != r || !d.is_positive()).then(|| format!("{a:?}: {d} vs {r}"))
        }),
    );
    c.add(
        "shadow from the Euler operator matches the matrix product",
        first_failure(&cases, |a| {
            let x = CFExpansion::from_i64(a).ok()?;
            let m = super_cf(&x).ok()?.shadow;
            let e = shadow_via_euler(&x).ok()?;
            (m != e).then(|| format!("{a:?}: {} vs {}", format_compact(&m), format_compact(&e)))
        }),
    );
    let mut fib = (BigInt::one(), BigInt::one());
    let mut bad = None;
    for n in 1..=25usize {
        if continuant(&vec![BigInt::one(); n]).k != fib.1 {
            bad = Some(n);
            break;
        }
        fib = (fib.1.clone(), &fib.0 + &fib.1);
    }
    c.expect("K_n(1,...,1) = F_{n+1} for n <= 25", bad.is_none(), || {
        format!("n = {}", bad.unwrap_or(0))
    });
    c.checks
}

/// Whether `|x − (a + b√c)| < tol`, exactly, for `b > 0`.
fn near_surd(x: &Rational, a: &Rational, b: &Rational, c: i64, tol: &Rational) -> bool {
    let c = int(c);
    let lo = (x - a - tol) / b;
    let hi = (x - a + tol) / b;
    let below = !lo.is_positive() || &lo * &lo < c;
    let above = hi.is_positive() && &hi * &hi > c;
    below && above
}

fn shadows() -> Vec<Check> {
    let mut c = Collector::new("shadows");
    let es = |p: i64, q: i64| even_shadow(p, q).ok();
    let os = |p: i64, q: i64| odd_shadow(p, q).ok();
    c.expect(
        "ES(5/2) = 2, OS(5/2) = 3/4, OS(7/2) = 5/4",
        es(5, 2) == Some(int(2)) && os(5, 2) == Some(ratio(3, 4)) && os(7, 2) == Some(ratio(5, 4)),
        String::new,
    );
    let bad = (1..=100).find(|&n| es(n, 1) != Some(int(n - 1)) || os(n, 1) != Some(int(0)));
    c.expect("(n)_ES = n - 1 and (n)_OS = 0 for n <= 100", bad.is_none(), || {
        format!("n = {}", bad.unwrap_or(0))
    });

    let cases = all_lists(0..=4);
    c.add(
        "matrix product and continuant quotient agree (n <= 8, a_i <= 4)",
        first_failure(&cases, |a| {
            let x = CFExpansion::from_i64(a).ok()?;
            let m = super_cf(&x).ok()?;
            let k = shadow_via_continuants(&x).ok()?;
            let b = big(a);
            let classical = Rational::new(continuant(&b).k, continuant(&b[1..]).k);
            (m.shadow != k || m.classical != classical).then(|| format!("{a:?}"))
        }),
    );

    let grid: Vec<(u64, u64)> = reduced_fractions(40, &ratio(1, 1000), &int(10));
    let values: Vec<(u64, u64, Rational, Rational)> = grid
        .par_iter()
        .map(|&(p, q)| {
            let (e, o) = shadows_of(p, q).expect("positive input");
            (p, q, e, o)
        })
        .collect();
    c.add(
        "ES(p/q + 1) = ES(p/q) + 1 (q <= 40, p/q <= 10)",
        first_failure(&values, |(p, q, e, _)| {
            let shifted = even_shadow(p + q, *q).ok()?;
            (shifted != e + int(1)).then(|| format!("{p}/{q}"))
        }),
    );
    c.add(
        "p/q in [n, n+1] puts ES in [n-1, n]",
        first_failure(&values, |(p, q, e, _)| {
            let n = int((p / q) as i64);
            (e < &(&n - int(1)) || e > &n).then(|| format!("ES({p}/{q}) = {}", format_compact(e)))
        }),
    );
    c.add(
        "both shadows positive above 1 (non-integral), negative below 1",
        first_failure(&values, |(p, q, e, o)| {
            let ok = if p % q == 0 {
                true
            } else if p > q {
                e.is_positive() && o.is_positive()
            } else {
                e.is_negative() && o.is_negative()
            };
            (!ok).then(|| {
                format!("{p}/{q}: ES = {}, OS = {}", format_compact(e), format_compact(o))
            })
        }),
    );
    let small = reduced_fractions(20, &ratio(1, 1000), &int(5));
    c.add(
        "accordance of the two expansions (q <= 20, p/q <= 5)",
        first_failure(&small, |&(p, q)| {
            let (even, odd) = cf_expand(&BigInt::from(p), &BigInt::from(q)).ok()?;
            (!accordance_check(&even, &odd).holds()).then(|| format!("{p}/{q}"))
        }),
    );

    let tol = ratio(1, 1_000_000_000_000);
    let golden = irrational_shadow(constant_stream(1), &tol, 80);
    c.add(
        "golden shadow within 1e-12 of (5 + sqrt 5)/10 in <= 80 terms",
        match &golden {
            Ok(l) if near_surd(&l.value, &ratio(1, 2), &ratio(1, 10), 5, &tol) => None,
            Ok(l) => Some(format!("limit {}", shadowcf::rational::to_decimal(&l.value, 15))),
            Err(e) => Some(e.to_string()),
        },
    );
    let silver = irrational_shadow(constant_stream(2), &tol, 60);
    c.add(
        "silver shadow within 1e-12 of 1 + sqrt 2/2 in <= 60 terms",
        match &silver {
            Ok(l) if near_surd(&l.value, &int(1), &ratio(1, 2), 2, &tol) => None,
            Ok(l) => Some(format!("limit {}", shadowcf::rational::to_decimal(&l.value, 15))),
            Err(e) => Some(e.to_string()),
        },
    );
    let ratios: Vec<f64> = [&golden, &silver]
        .iter()
        .filter_map(|r| r.as_ref().ok()?.max_tail_ratio(10))
        .collect();
    c.expect(
        "certificate tail ratios <= 0.75 from n = 10",
        ratios.len() == 2 && ratios.iter().all(|&r| r <= 0.75),
        || format!("{ratios:?}"),
    );
    let mut alternation = None;
    for k in [1, 2] {
        let xs: Vec<Rational> = ConvergentShadows::new(constant_stream(k).take(40))
            .filter_map(|c| c.ok().map(|c| c.shadow))
            .collect();
        if let Some(n) = (3..=40usize).find(|&n| {
            let d = &xs[n - 1] - &xs[n - 3];
            if n % 2 == 1 {
                !d.is_positive()
            } else {
                !d.is_negative()
            }
        }) {
            alternation = Some(format!("stream of {k}s at n = {n}"));
            break;
        }
    }
    c.add("x'_n - x'_{n-2} alternates in sign (n <= 40)", alternation);
    let bad = (2..=50u64).find(|&n| {
        discontinuity_witness(n)
            .map(|(a, b)| a != b)
            .unwrap_or(true)
    });
    c.expect(
        "OS((2n+1)/n) = (n-1)(2n-1)/n^2 for n <= 50",
        bad.is_none(),
        || format!("n = {}", bad.unwrap_or(0)),
    );
    c.checks
}

fn farey() -> Vec<Check> {
    let mut c = Collector::new("farey");
    let tree = farey_tree(5);
    let mut bad_vertex = None;
    let mut bad_edge = None;
    let mut bad_descent = None;
    for (i, node) in tree.nodes.iter().enumerate() {
        if node.element.order(6) != Some(3) || !node.element.is_osp() {
            bad_vertex.get_or_insert(i);
        }
        let cl: Vec<(Rational, Rational)> = node.regions.iter().map(|r| r.classical()).collect();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            let det = &cl[a].0 * &cl[b].1 - &cl[b].0 * &cl[a].1;
            if det.abs() != int(1) {
                bad_edge.get_or_insert(i);
            }
        }
        if node.half == Half::Down {
            let (p, q) = node.outer().classical();
            let found = farey_shadow(p.to_integer(), q.to_integer(), 5).ok().flatten();
            if found.map(|f| &f.vector != node.outer()).unwrap_or(true) {
                bad_descent.get_or_insert(i);
            }
        }
    }
    let at = |i: Option<usize>| {
        let n = &tree.nodes[i.unwrap_or(0)];
        format!("vertex at depth {} with outer region {}", n.depth, n.outer())
    };
    c.expect("vertices have order 3 and lie in OSp (depth <= 5)", bad_vertex.is_none(), || {
        at(bad_vertex)
    });
    c.expect("adjacent regions are unimodular (depth <= 5)", bad_edge.is_none(), || {
        at(bad_edge)
    });
    c.expect("descent by value reaches the tree's regions", bad_descent.is_none(), || {
        at(bad_descent)
    });

    let bad = (1..=14u64).find(|&n| {
        let fs = farey_shadow(n, 1u64, 64).ok().flatten().map(|f| f.fs);
        fs != Some(Rational::from_integer(BigInt::from(a004524(n - 1))))
    });
    c.expect("(n)_FS = A004524(n-1) for n <= 14", bad.is_none(), || {
        format!("n = {}", bad.unwrap_or(0))
    });
    let branch = fibonacci_branch(50);
    let bad = (1..=20usize).find(|&n| {
        let u = &branch[n - 1];
        let first = u.entries[0].soul != Rational::from_integer(a054454(n - 1));
        let second = n >= 2 && u.entries[1].soul != Rational::from_integer(a054454(n - 2));
        first || second
    });
    c.expect("Fibonacci branch souls follow A054454 (n <= 20)", bad.is_none(), || {
        format!("u_{}", bad.unwrap_or(0))
    });
    let bad = (0..=20usize).find(|&n| {
        let s: BigInt = (0..=(n + 1) / 2).map(|k| a001629(n + 1 - 2 * k)).sum();
        s != a054454(n)
    });
    c.expect("A054454(n) = sum_k A001629(n + 1 - 2k) (n <= 20)", bad.is_none(), || {
        format!("n = {}", bad.unwrap_or(0))
    });
    let u = &branch[49];
    let fs = farey_shadow(u.entries[0].body.to_integer(), u.entries[1].body.to_integer(), 64)
        .ok()
        .flatten()
        .map(|f| f.fs);
    let ok = fs
        .as_ref()
        .is_some_and(|x| near_surd(x, &ratio(1, 2), &ratio(1, 10), 5, &ratio(1, 10_000_000_000)));
    c.expect("Farey shadow of u_50 within 1e-10 of (5 + sqrt 5)/10", ok, || {
        fs.map(|x| shadowcf::rational::to_decimal(&x, 15)).unwrap_or_else(|| "not found".into())
    });
    c.checks
}

fn conjectures() -> Vec<Check> {
    let mut c = Collector::new("conjectures");
    match conjecture_report(12, &int(1), &int(2), 64) {
        Ok(report) => {
            for relation in ["ES > OS", "ES >= FS", "FS >= OS"] {
                let found: Vec<String> = report
                    .violations
                    .iter()
                    .filter(|v| v.relation == relation)
                    .map(|v| {
                        let fs = v.fs.as_ref().map(format_compact).unwrap_or_default();
                        format!(
                            "{}/{} (ES {}, FS {fs}, OS {})",
                            v.p,
                            v.q,
                            format_compact(&v.es),
                            format_compact(&v.os)
                        )
                    })
                    .collect();
                let name = format!("{relation} on {} fractions, q <= 12, 1 <= p/q <= 2", report.checked);
                let failure = (!found.is_empty())
                    .then(|| format!("{} counterexamples: {}", found.len(), found.join(", ")));
                c.note(name, failure);
            }
            if report.fs_missing > 0 {
                c.note(
                    "Farey shadows reached",
                    Some(format!("{} fractions deeper than 64", report.fs_missing)),
                );
            }
        }
        Err(e) => c.note("conjecture scan", Some(e.to_string())),
    }
    let witness = discontinuity_witness(50).map(|w| w.0).ok();
    let near_two = witness
        .as_ref()
        .is_some_and(|w| (w - int(2)).abs() < ratio(1, 10));
    c.note(
        "OS((2n+1)/n) tends to 2 while OS(2) = 0",
        (!near_two).then(|| format!("{witness:?}")),
    );
    c.checks
}

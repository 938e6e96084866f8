//! Continued-fraction expansions, supersymmetric continued fractions and
//! shadows.
//!
//! A finite expansion `[a₁,…,aₙ]` is lifted by applying the word
//! `ℛ^{a₁}ℒ^{a₂}ℛ^{a₃}⋯` to `e₁` (even `n`) or `e₂` (odd `n`). The result has
//! the shape `(p + p′ξη, q + q′ξη, λξ + μη)` and the shadow is the `ξη`
//! coefficient of `(p + p′ξη)/(q + q′ξη)`, namely `(p′q − pq′)/q²`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::continuants::{continuant, det_d, suffix_continuants};
use crate::error::{Error, Result};
use crate::grassmann::{Parity, RingElem};
use crate::rational::{format_compact, Rational};
use crate::supermatrix::{SuperMatrix3, SuperVector3};

/// A finite continued fraction. `a₁` may be any integer, later entries are
/// at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CFExpansion {
    coefficients: Vec<BigInt>,
}

impl CFExpansion {
    pub fn new(coefficients: Vec<BigInt>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::EmptyExpansion);
        }
        if let Some((i, a)) = coefficients
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, a)| !a.is_positive())
        {
            return Err(Error::InvalidCoefficient {
                index: i + 1,
                value: a.clone(),
            });
        }
        Ok(CFExpansion { coefficients })
    }

    pub fn from_i64(a: &[i64]) -> Result<Self> {
        CFExpansion::new(a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn parity(&self) -> Parity {
        if self.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The expansion of the same number with the opposite parity, using
    /// `[…, aₙ] = […, aₙ − 1, 1]`.
    pub fn other_form(&self) -> CFExpansion {
        let mut a = self.coefficients.clone();
        let n = a.len();
        if n > 1 && a[n - 1].is_one() {
            a.pop();
            a[n - 2] += 1;
        } else {
            a[n - 1] -= 1;
            a.push(BigInt::one());
        }
        CFExpansion { coefficients: a }
    }

    /// Classical value by folding from the tail.
    pub fn classical_value(&self) -> Result<Rational> {
        let k = continuant(&self.coefficients).k;
        let k1 = continuant(&self.coefficients[1..]).k;
        if k1.is_zero() {
            return Err(Error::ProjectiveInfinity);
        }
        Ok(Rational::new(k, k1))
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// Canonical expansion of `p/q` (floor digits, last digit at least 2 unless
/// the length is 1), as a plain list.
pub fn cf_digits(p: &BigInt, q: &BigInt) -> Result<Vec<BigInt>> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let (mut p, mut q) = if q.is_negative() {
        (-p, -q)
    } else {
        (p.clone(), q.clone())
    };
    let mut digits = Vec::new();
    loop {
        let (a, r) = p.div_mod_floor(&q);
        digits.push(a);
        if r.is_zero() {
            break;
        }
        p = std::mem::replace(&mut q, r);
    }
    Ok(digits)
}

/// Both expansions of `p/q`, returned as `(even_form, odd_form)`.
pub fn cf_expand(p: &BigInt, q: &BigInt) -> Result<(CFExpansion, CFExpansion)> {
    let canonical = CFExpansion::new(cf_digits(p, q)?)?;
    let other = canonical.other_form();
    Ok(match canonical.parity() {
        Parity::Even => (canonical, other),
        Parity::Odd => (other, canonical),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperCFValue {
    pub classical: Rational,
    pub shadow: Rational,
    pub raw_vector: SuperVector3,
}

/// `ℛ^k v` using the closed form of `ℛ^k`.
pub fn apply_r_pow(k: &BigInt, v: &SuperVector3) -> SuperVector3 {
    if k.is_zero() {
        return v.clone();
    }
    let kq = Rational::from_integer(k.clone());
    let kxi = RingElem::new(Rational::zero(), Rational::zero(), kq.clone(), Rational::zero());
    let [v0, v1, v2] = &v.entries;
    let mut p = v0 + &v1.scale(&kq);
    if !v2.is_zero() {
        p += &(&kxi * v2);
    }
    let mut l = v2.clone();
    if !v1.is_zero() {
        l += &(&kxi * v1);
    }
    SuperVector3::new(p, v1.clone(), l)
}

/// `ℒ^k v` using the closed form of `ℒ^k`.
pub fn apply_l_pow(k: &BigInt, v: &SuperVector3) -> SuperVector3 {
    if k.is_zero() {
        return v.clone();
    }
    let kq = Rational::from_integer(k.clone());
    let keta = RingElem::new(Rational::zero(), Rational::zero(), Rational::zero(), kq.clone());
    let [v0, v1, v2] = &v.entries;
    let mut q = v1 + &v0.scale(&kq);
    if !v2.is_zero() {
        q -= &(&keta * v2);
    }
    let mut l = v2.clone();
    if !v0.is_zero() {
        l += &(&keta * v0);
    }
    SuperVector3::new(v0.clone(), q, l)
}

fn start_vector(parity: Parity) -> SuperVector3 {
    match parity {
        Parity::Even => SuperVector3::basis(0),
        Parity::Odd => SuperVector3::basis(1),
    }
}

/// Applies the word of `a` to `start`, innermost factor first.
fn apply_word(a: &CFExpansion, start: SuperVector3, mut each: impl FnMut(&SuperVector3)) -> SuperVector3 {
    let mut v = start;
    for (i, k) in a.coefficients.iter().enumerate().rev() {
        v = if i % 2 == 0 {
            apply_r_pow(k, &v)
        } else {
            apply_l_pow(k, &v)
        };
        each(&v);
    }
    v
}

/// The word `ℛ^{a₁}ℒ^{a₂}⋯` as a matrix.
pub fn word_matrix(a: &CFExpansion) -> SuperMatrix3 {
    let mut m = SuperMatrix3::identity();
    for (i, k) in a.coefficients.iter().enumerate() {
        let factor = if i % 2 == 0 {
            SuperMatrix3::r_pow(k)
        } else {
            SuperMatrix3::l_pow(k)
        };
        m = &m * &factor;
    }
    m
}

/// Partial vectors, innermost factor first; the last one is the full result.
pub fn super_cf_trace(a: &CFExpansion) -> Vec<SuperVector3> {
    let mut out = Vec::with_capacity(a.len());
    apply_word(a, start_vector(a.parity()), |v| out.push(v.clone()));
    out
}

/// Value and shadow read off a vector `(p + p′ξη, q + q′ξη, ·)`.
pub fn value_from_vector(v: &SuperVector3) -> Result<(Rational, Rational)> {
    let (num, den, _) = v.split()?;
    if den.body.is_zero() {
        return Err(Error::ProjectiveInfinity);
    }
    let quotient = num.checked_div(&den)?;
    Ok((quotient.body, quotient.soul))
}

pub fn super_cf(a: &CFExpansion) -> Result<SuperCFValue> {
    let even = a.parity() == Parity::Even;
    let v = apply_word(a, start_vector(a.parity()), |v| {
        if even {
            debug_assert_eq!(v.entries[1].body, v.entries[2].eta, "μ ≠ q in {v}");
        }
    });
    let (classical, shadow) = value_from_vector(&v)?;
    Ok(SuperCFValue {
        classical,
        shadow,
        raw_vector: v,
    })
}

/// `Dₙ / K_{n−1}(a₂,…,aₙ)²`, or 0 for a single coefficient.
pub fn shadow_via_continuants(a: &CFExpansion) -> Result<Rational> {
    let c = a.coefficients();
    if c.len() == 1 {
        return Ok(Rational::zero());
    }
    let k = continuant(&c[1..]).k;
    if k.is_zero() {
        return Err(Error::ProjectiveInfinity);
    }
    Ok(Rational::new(det_d(c)?, &k * &k))
}

/// The quotient-rule form
/// `(ℰKₙK_{n−1} − KₙℰK_{n−1})/K_{n−1}² + (1 − n̄)/K_{n−1} − n̄Kₙ/K_{n−1}²`.
pub fn shadow_via_euler(a: &CFExpansion) -> Result<Rational> {
    let c = a.coefficients();
    let s = suffix_continuants(c);
    let (full, tail) = (&s[0], &s[1]);
    if tail.k.is_zero() {
        return Err(Error::ProjectiveInfinity);
    }
    let kk = Rational::from_integer(&tail.k * &tail.k);
    let odd = c.len() % 2 == 1;
    let mut x = Rational::new(&full.ek * &tail.k - &full.k * &tail.ek, BigInt::one()) / &kk;
    if odd {
        x -= Rational::from_integer(full.k.clone()) / &kk;
    } else {
        x += Rational::new(BigInt::one(), tail.k.clone());
    }
    Ok(x)
}

fn positive_pair(p: BigInt, q: BigInt) -> Result<(BigInt, BigInt)> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let r = Rational::new(p, q);
    if !r.is_positive() {
        return Err(Error::NonPositive(format_compact(&r)));
    }
    Ok((r.numer().clone(), r.denom().clone()))
}

/// Even and odd shadows of `p/q > 0`, as `(es, os)`.
pub fn shadows_of(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<(Rational, Rational)> {
    let (p, q) = positive_pair(p.into(), q.into())?;
    let (even, odd) = cf_expand(&p, &q)?;
    Ok((super_cf(&even)?.shadow, super_cf(&odd)?.shadow))
}

pub fn even_shadow(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Rational> {
    let (p, q) = positive_pair(p.into(), q.into())?;
    Ok(super_cf(&cf_expand(&p, &q)?.0)?.shadow)
}

pub fn odd_shadow(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Rational> {
    let (p, q) = positive_pair(p.into(), q.into())?;
    Ok(super_cf(&cf_expand(&p, &q)?.1)?.shadow)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Accordance {
    Holds,
    Fails {
        even_side: SuperVector3,
        odd_side: SuperVector3,
    },
    /// Arguments have the wrong parities or different classical values.
    Precondition(String),
}

impl Accordance {
    pub fn holds(&self) -> bool {
        matches!(self, Accordance::Holds)
    }
}

/// Compares `word_even · (1, 0, −η)ᵗ` with `word_odd · (0, 1, −ξ)ᵗ`.
pub fn accordance_check(even_form: &CFExpansion, odd_form: &CFExpansion) -> Accordance {
    if even_form.parity() != Parity::Even || odd_form.parity() != Parity::Odd {
        return Accordance::Precondition("expected an even-length and an odd-length form".into());
    }
    match (even_form.classical_value(), odd_form.classical_value()) {
        (Ok(x), Ok(y)) if x == y => {}
        (Ok(x), Ok(y)) => {
            return Accordance::Precondition(format!(
                "forms evaluate to {} and {}",
                format_compact(&x),
                format_compact(&y)
            ))
        }
        _ => return Accordance::Precondition("a form lies at infinity".into()),
    }
    let e1 = SuperVector3::new(RingElem::one(), RingElem::zero(), -RingElem::eta());
    let e2 = SuperVector3::new(RingElem::zero(), RingElem::one(), -RingElem::xi());
    let even_side = apply_word(even_form, e1, |_| {});
    let odd_side = apply_word(odd_form, e2, |_| {});
    if even_side == odd_side {
        Accordance::Holds
    } else {
        Accordance::Fails {
            even_side,
            odd_side,
        }
    }
}

/// One truncation `[a₁,…,aₙ]` of an infinite expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub n: usize,
    pub a_n: BigInt,
    pub classical: Rational,
    pub shadow: Rational,
}

/// Convergents and their shadows, maintaining the running word matrix.
pub struct ConvergentShadows<I> {
    stream: I,
    matrix: SuperMatrix3,
    n: usize,
}

impl<I: Iterator<Item = BigInt>> ConvergentShadows<I> {
    pub fn new(stream: I) -> Self {
        ConvergentShadows {
            stream,
            matrix: SuperMatrix3::identity(),
            n: 0,
        }
    }
}

impl<I: Iterator<Item = BigInt>> Iterator for ConvergentShadows<I> {
    type Item = Result<Convergent>;

    fn next(&mut self) -> Option<Result<Convergent>> {
        let a = self.stream.next()?;
        if self.n > 0 && !a.is_positive() {
            return Some(Err(Error::InvalidCoefficient {
                index: self.n + 1,
                value: a,
            }));
        }
        let factor = if self.n % 2 == 0 {
            SuperMatrix3::r_pow(&a)
        } else {
            SuperMatrix3::l_pow(&a)
        };
        self.matrix = &self.matrix * &factor;
        self.n += 1;
        // odd n starts from e₂, even n from e₁
        let column = self.matrix.column(if self.n % 2 == 0 { 0 } else { 1 });
        Some(value_from_vector(&column).map(|(classical, shadow)| Convergent {
            n: self.n,
            a_n: a,
            classical,
            shadow,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowLimit {
    pub value: Rational,
    pub n_used: usize,
    pub last_delta: Rational,
    /// `(n, |x′ₙ − x′ₙ₋₁|)` for every `n ≥ 2` reached.
    pub decay_certificate: Vec<(usize, Rational)>,
}

impl ShadowLimit {
    /// Ratios of successive certificate deltas, for `n ≥ from`.
    pub fn tail_ratios(&self, from: usize) -> Vec<(usize, f64)> {
        self.decay_certificate
            .windows(2)
            .filter(|w| w[1].0 >= from && !w[0].1.is_zero())
            .map(|w| (w[1].0, crate::rational::to_f64(&(&w[1].1 / &w[0].1))))
            .collect()
    }

    /// Largest successive-delta ratio for `n ≥ from`, if any.
    pub fn max_tail_ratio(&self, from: usize) -> Option<f64> {
        self.tail_ratios(from)
            .into_iter()
            .map(|(_, r)| r)
            .reduce(f64::max)
    }

    /// Smallest `C` with `|x′ₙ − x′ₙ₋₁| ≤ C(a₁ + 1)φ^{−n}` over the certificate.
    pub fn fitted_constant(&self, a1: f64) -> f64 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        self.decay_certificate
            .iter()
            .map(|(n, d)| crate::rational::to_f64(d) * phi.powi(*n as i32) / (a1 + 1.0))
            .fold(0.0, f64::max)
    }
}

/// Runs convergent shadows until two successive ones differ by less than
/// `tol`, from the third convergent on. A finite stream ends the iteration
/// with its exact value.
pub fn irrational_shadow<I>(stream: I, tol: &Rational, max_terms: usize) -> Result<ShadowLimit>
where
    I: IntoIterator<Item = BigInt>,
{
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let mut limit = ShadowLimit {
        value: Rational::zero(),
        n_used: 0,
        last_delta: Rational::zero(),
        decay_certificate: Vec::new(),
    };
    let mut prev: Option<Rational> = None;
    for c in ConvergentShadows::new(stream.into_iter()).take(max_terms) {
        let c = c?;
        limit.n_used = c.n;
        if let Some(p) = prev {
            let delta = (&c.shadow - p).abs();
            limit.decay_certificate.push((c.n, delta.clone()));
            limit.last_delta = delta;
            // x′₁ = 0 and x′₂ = a₁, so with a₁ = 0 the first difference is a
            // spurious zero; never stop before n = 3
            if c.n >= 3 && limit.last_delta < *tol {
                limit.value = c.shadow;
                return Ok(limit);
            }
        }
        limit.value = c.shadow.clone();
        prev = Some(c.shadow);
    }
    if limit.n_used == max_terms {
        return Err(Error::NotConverged(Box::new(limit)));
    }
    if limit.n_used == 0 {
        return Err(Error::EmptyExpansion);
    }
    // finite stream: the last convergent is the exact value
    limit.last_delta = Rational::zero();
    Ok(limit)
}

pub fn constant_stream(k: i64) -> impl Iterator<Item = BigInt> + Clone {
    std::iter::repeat(BigInt::from(k))
}

/// `a₁,…` followed by `b₁,…` repeated forever.
pub fn periodic_stream(
    prefix: Vec<BigInt>,
    period: Vec<BigInt>,
) -> Result<impl Iterator<Item = BigInt> + Clone> {
    if period.is_empty() {
        return Err(Error::EmptyExpansion);
    }
    Ok(prefix.into_iter().chain(period.into_iter().cycle()))
}

/// One level of the iterated shadow map.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationStep {
    pub level: usize,
    pub value: Rational,
    /// Uncertainty assigned to `value`: the stopping tolerance.
    pub error_bar: Rational,
    pub n_used: usize,
    /// Number of certified expansion digits the level was computed from;
    /// `None` at level 1, which reads the input stream.
    pub input_digits: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationTrajectory {
    pub steps: Vec<IterationStep>,
    /// Why the trajectory ended before the requested depth.
    pub stopped: Option<String>,
}

/// Digits of the expansion shared by every number in `[lo, hi]`: the common
/// prefix of both expansions, less its last entry.
pub fn certified_digits(lo: &Rational, hi: &Rational, limit: usize) -> Vec<BigInt> {
    let (a, b) = (
        cf_digits(lo.numer(), lo.denom()).expect("positive denominator"),
        cf_digits(hi.numer(), hi.denom()).expect("positive denominator"),
    );
    let mut common: Vec<BigInt> = a
        .into_iter()
        .zip(b)
        .take_while(|(x, y)| x == y)
        .map(|(x, _)| x)
        .take(limit + 1)
        .collect();
    common.pop();
    common
}

enum LevelOutcome {
    Converged(IterationStep),
    Starved,
    Failed(String),
}

/// Iterates `x ↦ (x)_S` starting from the number with expansion `stream`.
///
/// Each level is computed to `tol`; the expansion of an intermediate value
/// is only trusted on the digits shared by its whole error interval. When
/// too few digits are certified, all inner levels are recomputed with the
/// inner tolerance squared, until `max_terms` convergents no longer suffice.
pub fn iterated_shadow_experiment<F, I>(
    make_stream: F,
    depth: usize,
    tol: &Rational,
    max_terms: usize,
) -> Result<IterationTrajectory>
where
    F: Fn() -> I,
    I: Iterator<Item = BigInt>,
{
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let mut trajectory = IterationTrajectory {
        steps: Vec::new(),
        stopped: None,
    };
    let mut inner_tol = tol.clone();
    let mut level = 1;
    while level <= depth {
        match run_levels(&make_stream, level, tol, &inner_tol, max_terms) {
            LevelOutcome::Converged(step) => {
                let positive = (&step.value - tol).is_positive();
                trajectory.steps.push(step);
                if level < depth && !positive {
                    trajectory.stopped = Some(format!(
                        "level {level} value is not positive; the shadow map needs a positive input"
                    ));
                    break;
                }
                level += 1;
            }
            LevelOutcome::Starved => {
                inner_tol = &inner_tol * &inner_tol;
            }
            LevelOutcome::Failed(reason) => {
                trajectory.stopped = Some(reason);
                break;
            }
        }
    }
    Ok(trajectory)
}

fn run_levels<F, I>(
    make_stream: &F,
    target: usize,
    tol: &Rational,
    inner_tol: &Rational,
    max_terms: usize,
) -> LevelOutcome
where
    F: Fn() -> I,
    I: Iterator<Item = BigInt>,
{
    let mut digits: Option<Vec<BigInt>> = None;
    for level in 1..=target {
        let level_tol = if level == target { tol } else { inner_tol };
        let input_digits = digits.as_ref().map(Vec::len);
        let result = match digits.take() {
            None => irrational_shadow(make_stream(), level_tol, max_terms),
            Some(d) => irrational_shadow(d, level_tol, max_terms),
        };
        let limit = match result {
            Ok(l) => l,
            Err(Error::NotConverged(l)) => {
                return LevelOutcome::Failed(format!(
                    "level {level} did not converge within {} terms (last delta {})",
                    l.n_used,
                    crate::rational::to_decimal(&l.last_delta, 20)
                ))
            }
            Err(e) => return LevelOutcome::Failed(format!("level {level}: {e}")),
        };
        // A finite certified input that never got within tolerance means the
        // previous level was not precise enough.
        let converged = limit.last_delta < *level_tol
            && !(input_digits.is_some() && limit.last_delta.is_zero());
        if !converged {
            return if inner_tol.numer().bits() + inner_tol.denom().bits() > 1 << 16 {
                LevelOutcome::Failed(format!("level {level}: certified precision exhausted"))
            } else {
                LevelOutcome::Starved
            };
        }
        if level == target {
            return LevelOutcome::Converged(IterationStep {
                level,
                value: limit.value,
                error_bar: tol.clone(),
                n_used: limit.n_used,
                input_digits,
            });
        }
        let lo = &limit.value - inner_tol;
        let hi = &limit.value + inner_tol;
        if !lo.is_positive() {
            return LevelOutcome::Failed(format!(
                "level {level} value {} is not positive",
                crate::rational::to_decimal(&limit.value, 15)
            ));
        }
        let d = certified_digits(&lo, &hi, max_terms);
        if d.is_empty() {
            return LevelOutcome::Starved;
        }
        digits = Some(d);
    }
    unreachable!("the target level returns inside the loop")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn cf(a: &[i64]) -> CFExpansion {
        CFExpansion::from_i64(a).unwrap()
    }

    fn vec3(e: [(i64, i64, i64, i64); 3]) -> SuperVector3 {
        SuperVector3 {
            entries: e.map(|(a, b, c, d)| RingElem::ints(a, b, c, d)),
        }
    }

    #[test]
    fn expansions() {
        let (b5, b2) = (BigInt::from(5), BigInt::from(2));
        assert_eq!(cf_expand(&b5, &b2).unwrap(), (cf(&[2, 2]), cf(&[2, 1, 1])));
        let (b7, b5) = (BigInt::from(7), BigInt::from(5));
        assert_eq!(cf_expand(&b7, &b5).unwrap(), (cf(&[1, 2, 1, 1]), cf(&[1, 2, 2])));
        for n in 1..6 {
            let (e, o) = cf_expand(&BigInt::from(n), &BigInt::one()).unwrap();
            assert_eq!(o, cf(&[n]));
            assert_eq!(e, cf(&[n - 1, 1]));
        }
        let (e, o) = cf_expand(&BigInt::from(10), &BigInt::from(4)).unwrap();
        assert_eq!((e, o), (cf(&[2, 2]), cf(&[2, 1, 1])));
        assert!(cf_expand(&b5, &BigInt::zero()).is_err());
        assert_eq!(cf(&[2, 1, 1]).classical_value().unwrap(), ratio(5, 2));
        assert!(CFExpansion::from_i64(&[]).is_err());
        assert!(CFExpansion::from_i64(&[1, 0]).is_err());
        assert_eq!(cf(&[-2, 3]).to_string(), "[-2,3]");
    }

    #[test]
    fn worked_examples() {
        let v = super_cf(&cf(&[2, 2])).unwrap();
        assert_eq!((v.classical, v.shadow), (ratio(5, 2), int(2)));
        assert_eq!(v.raw_vector, vec3([(5, 4, 0, 0), (2, 0, 0, 0), (0, 0, 4, 2)]));
        let v = super_cf(&cf(&[2, 1, 1])).unwrap();
        assert_eq!((v.classical, v.shadow), (ratio(5, 2), ratio(3, 4)));
        assert_eq!(v.raw_vector, vec3([(5, 4, 0, 0), (2, 1, 0, 0), (0, 0, 5, 1)]));
        let v = super_cf(&cf(&[1, 1])).unwrap();
        assert_eq!((v.classical, v.shadow), (int(2), int(1)));
        assert_eq!(v.raw_vector, vec3([(2, 1, 0, 0), (1, 0, 0, 0), (0, 0, 1, 1)]));
        let v = super_cf(&cf(&[0, 2, 2])).unwrap();
        assert_eq!((v.classical, v.shadow), (ratio(2, 5), ratio(-8, 25)));
        assert_eq!(super_cf(&cf(&[1])).unwrap().shadow, int(0));
        assert_eq!(super_cf(&cf(&[0, 1])).unwrap().shadow, int(0));
    }

    #[test]
    fn named_shadows() {
        assert_eq!(even_shadow(5, 2).unwrap(), int(2));
        assert_eq!(odd_shadow(5, 2).unwrap(), ratio(3, 4));
        assert_eq!(odd_shadow(7, 2).unwrap(), ratio(5, 4));
        assert_eq!(even_shadow(7, 5).unwrap(), ratio(22, 25));
        assert_eq!(odd_shadow(7, 5).unwrap(), ratio(12, 25));
        assert_eq!(shadows_of(14, 10).unwrap(), (ratio(22, 25), ratio(12, 25)));
        for n in 1..20 {
            assert_eq!(even_shadow(n, 1).unwrap(), int(n - 1));
            assert_eq!(odd_shadow(n, 1).unwrap(), int(0));
        }
        assert!(matches!(even_shadow(0, 1), Err(Error::NonPositive(_))));
        assert!(matches!(odd_shadow(-3, 2), Err(Error::NonPositive(_))));
        assert!(matches!(odd_shadow(3, 0), Err(Error::ZeroDenominator)));
        assert_eq!(odd_shadow(-3, -2).unwrap(), odd_shadow(3, 2).unwrap());
    }

    #[test]
    fn continuant_routes() {
        assert_eq!(shadow_via_continuants(&cf(&[2, 2])).unwrap(), int(2));
        assert_eq!(shadow_via_continuants(&cf(&[2, 1, 1])).unwrap(), ratio(3, 4));
        assert_eq!(shadow_via_continuants(&cf(&[7])).unwrap(), int(0));
        for a in [&[3][..], &[2, 2], &[2, 1, 1], &[0, 2, 2], &[1, 4, 1, 3, 2]] {
            let x = cf(a);
            let v = super_cf(&x).unwrap().shadow;
            assert_eq!(shadow_via_continuants(&x).unwrap(), v, "{x}");
            assert_eq!(shadow_via_euler(&x).unwrap(), v, "{x}");
        }
    }

    #[test]
    fn negative_leading_coefficient() {
        let x = cf(&[-2, 3]);
        let via_matrix = word_matrix(&x).column(0);
        assert_eq!(super_cf(&x).unwrap().raw_vector, via_matrix);
        assert_eq!(super_cf(&x).unwrap().classical, ratio(-5, 3));
    }

    #[test]
    fn trace_keeps_mu_equal_to_q() {
        let x = cf(&[3, 1, 4, 1, 5, 9]);
        let trace = super_cf_trace(&x);
        assert_eq!(trace.len(), 6);
        for v in &trace {
            assert_eq!(v.entries[1].body, v.entries[2].eta);
            assert!(v.has_standard_shape());
        }
        assert_eq!(trace.last().unwrap(), &super_cf(&x).unwrap().raw_vector);
    }

    #[test]
    fn accordance() {
        assert!(accordance_check(&cf(&[2, 2]), &cf(&[2, 1, 1])).holds());
        assert!(accordance_check(&cf(&[1, 1]), &cf(&[2])).holds());
        assert!(matches!(
            accordance_check(&cf(&[2, 2]), &cf(&[3, 1, 1])),
            Accordance::Precondition(_)
        ));
        assert!(matches!(
            accordance_check(&cf(&[2, 1, 1]), &cf(&[2, 2])),
            Accordance::Precondition(_)
        ));
    }

    #[test]
    fn convergents_match_finite_evaluation() {
        let digits = [2i64, 1, 3, 1, 1, 4, 2];
        let conv: Vec<_> = ConvergentShadows::new(digits.iter().map(|&d| BigInt::from(d)))
            .map(Result::unwrap)
            .collect();
        for c in &conv {
            let v = super_cf(&cf(&digits[..c.n])).unwrap();
            assert_eq!((&c.classical, &c.shadow), (&v.classical, &v.shadow));
        }
    }

    #[test]
    fn golden_limit() {
        let tol = ratio(1, 1_000_000_000_000);
        let limit = irrational_shadow(constant_stream(1), &tol, 80).unwrap();
        let target = (5.0 + 5f64.sqrt()) / 10.0;
        assert!((crate::rational::to_f64(&limit.value) - target).abs() < 1e-12);
        assert!(limit.max_tail_ratio(10).unwrap() <= 0.75);
        assert!(matches!(
            irrational_shadow(constant_stream(1), &tol, 10),
            Err(Error::NotConverged(_))
        ));
        assert!(matches!(
            irrational_shadow(constant_stream(1), &int(0), 10),
            Err(Error::NonPositiveTolerance)
        ));
    }

    #[test]
    fn finite_stream_gives_exact_value() {
        let limit = irrational_shadow(vec![BigInt::from(2), BigInt::from(2)], &ratio(1, 100), 10)
            .unwrap();
        assert_eq!(limit.value, int(2));
        assert!(limit.last_delta.is_zero());
    }

    #[test]
    fn certified_prefix() {
        // 5/2 = [2;2] and 7/3 = [2;3]: only "2" is shared and it is dropped
        assert!(certified_digits(&ratio(7, 3), &ratio(5, 2), 10).is_empty());
        let d = certified_digits(&ratio(1597, 987), &ratio(2584, 1597), 100);
        assert!(d.iter().all(|x| x.is_one()));
        assert!(d.len() > 10);
    }

    #[test]
    fn iteration_depths() {
        let tol = ratio(1, 1_000_000);
        let t = iterated_shadow_experiment(|| constant_stream(1), 0, &tol, 200).unwrap();
        assert!(t.steps.is_empty() && t.stopped.is_none());
        let t = iterated_shadow_experiment(|| constant_stream(1), 2, &tol, 400).unwrap();
        assert_eq!(t.steps.len(), 2, "{t:?}");
        let target = (5.0 + 5f64.sqrt()) / 10.0;
        assert!((crate::rational::to_f64(&t.steps[0].value) - target).abs() < 1e-6);
        let t = iterated_shadow_experiment(|| constant_stream(1), 3, &tol, 400).unwrap();
        assert_eq!(t.steps.len(), 2);
        assert!(t.stopped.unwrap().contains("not positive"));
    }
}

//! Continuants `Kₙ(a₁,…,aₙ)`, their Euler-operator companions `ℰKₙ`, the shadow
//! parts `K′ₙ` and the determinant `Dₙ`.
//!
//! All values are computed from the tail of the argument list, using
//! `Kₙ = a₁K_{n−1}(a₂,…) + K_{n−2}(a₃,…)` and the derivation rule
//! `ℰKₙ = a₁K_{n−1} + a₁ℰK_{n−1} + ℰK_{n−2}` with `ℰ = Σ aᵢ∂/∂aᵢ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuantPair {
    pub k: BigInt,
    pub ek: BigInt,
}

impl ContinuantPair {
    fn empty() -> Self {
        ContinuantPair {
            k: BigInt::one(),
            ek: BigInt::zero(),
        }
    }

    /// The seed `K₋₁ = 0`.
    fn seed() -> Self {
        ContinuantPair {
            k: BigInt::zero(),
            ek: BigInt::zero(),
        }
    }

    /// `K′ = ℰK − K + [n even]` for a continuant of length `n`.
    pub fn kprime(&self, n: usize) -> BigInt {
        &self.ek - &self.k + even_indicator(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowContinuantValue {
    pub k: BigInt,
    pub kprime: BigInt,
}

fn even_indicator(n: usize) -> BigInt {
    BigInt::from(u8::from(n % 2 == 0))
}

/// `n̄`: 0 for even `n`, 1 for odd `n`.
pub fn nbar(n: usize) -> BigInt {
    BigInt::from(n % 2)
}

/// Continuants of every suffix: entry `i` holds `K(aᵢ₊₁,…,aₙ)`, so entry 0 is
/// the full continuant and entry `n` the empty one.
pub fn suffix_continuants(a: &[BigInt]) -> Vec<ContinuantPair> {
    let n = a.len();
    let mut out = vec![ContinuantPair::empty(); n + 1];
    let mut next = ContinuantPair::seed();
    for i in (0..n).rev() {
        let (cur, tail) = out.split_at_mut(i + 1);
        let k1 = &tail[0];
        let ai = &a[i];
        let k = ai * &k1.k + &next.k;
        let ek = ai * &k1.k + ai * &k1.ek + &next.ek;
        next = k1.clone();
        cur[i] = ContinuantPair { k, ek };
    }
    out
}

pub fn continuant(a: &[BigInt]) -> ContinuantPair {
    let mut k1 = ContinuantPair::empty();
    let mut k2 = ContinuantPair::seed();
    for ai in a.iter().rev() {
        let k = ai * &k1.k + &k2.k;
        let ek = ai * &k1.k + ai * &k1.ek + &k2.ek;
        k2 = std::mem::replace(&mut k1, ContinuantPair { k, ek });
    }
    k1
}

pub fn shadow_continuant(a: &[BigInt]) -> ShadowContinuantValue {
    let pair = continuant(a);
    ShadowContinuantValue {
        kprime: pair.kprime(a.len()),
        k: pair.k,
    }
}

/// `Dₙ = K′ₙ(a₁..aₙ)K_{n−1}(a₂..aₙ) − Kₙ(a₁..aₙ)K′_{n−1}(a₂..aₙ)`.
///
/// Also evaluated through `Dₙ = a₁K_{n−1}(K_{n−1} − n̄) − D_{n−1}(a₂..aₙ)`;
/// the two must agree, and disagreement is a bug, so it panics.
pub fn det_d(a: &[BigInt]) -> Result<BigInt> {
    let direct = det_d_direct(a)?;
    let recursive = det_d_recurrence(a)?;
    assert_eq!(
        direct, recursive,
        "D_n disagrees between the direct and recursive forms at {a:?}"
    );
    Ok(direct)
}

pub fn det_d_direct(a: &[BigInt]) -> Result<BigInt> {
    let n = a.len();
    if n < 2 {
        return Err(Error::ShortExpansion { len: n, min: 2 });
    }
    let full = continuant(a);
    let tail = continuant(&a[1..]);
    Ok(full.kprime(n) * &tail.k - full.k * tail.kprime(n - 1))
}

pub fn det_d_recurrence(a: &[BigInt]) -> Result<BigInt> {
    let n = a.len();
    if n < 2 {
        return Err(Error::ShortExpansion { len: n, min: 2 });
    }
    let suffix = suffix_continuants(a);
    // D over the length-1 suffix is 0; walk outwards to the full list.
    let mut d = BigInt::zero();
    for i in (0..n - 1).rev() {
        let m = n - i;
        let k = &suffix[i + 1].k;
        d = &a[i] * k * (k - nbar(m)) - d;
    }
    Ok(d)
}

/// Converts a slice of machine integers.
pub fn big(a: &[i64]) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use proptest::prelude::*;

    fn k(a: &[i64]) -> BigInt {
        continuant(&big(a)).k
    }

    fn kp(a: &[i64]) -> BigInt {
        shadow_continuant(&big(a)).kprime
    }

    /// Every list of length `n` with entries in `1..=max`.
    fn lists(n: usize, max: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
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

    /// Continuant as the sum over monomials left after deleting disjoint
    /// adjacent pairs, weighted by degree for the Euler operator.
    fn oracle(a: &[i64]) -> (i64, i64) {
        fn go(a: &[i64], prod: i64, deg: i64, acc: &mut (i64, i64)) {
            match a {
                [] => {
                    acc.0 += prod;
                    acc.1 += deg * prod;
                }
                [x, rest @ ..] => {
                    go(rest, prod * x, deg + 1, acc);
                    if !rest.is_empty() {
                        go(&rest[1..], prod, deg, acc);
                    }
                }
            }
        }
        let mut acc = (0, 0);
        go(a, 1, 0, &mut acc);
        acc
    }

    #[test]
    fn small_values() {
        assert_eq!(k(&[1, 1, 1]), BigInt::from(3));
        assert_eq!(continuant(&[]), ContinuantPair::empty());
        assert_eq!(continuant(&big(&[1, 1])).ek, BigInt::from(2));
        assert_eq!(kp(&[2, 3]), BigInt::from(6));
        assert_eq!(kp(&[5]), BigInt::zero());
        assert_eq!(kp(&[1, 1, 1, 1]), BigInt::from(6));
        assert_eq!(kp(&[]), BigInt::zero());
    }

    #[test]
    fn short_lists_match_expansions() {
        for a in lists(3, 5) {
            let (a1, a2, a3) = (a[0], a[1], a[2]);
            assert_eq!(k(&a), BigInt::from(a1 + a3 + a1 * a2 * a3));
            assert_eq!(kp(&a), BigInt::from(2 * a1 * a2 * a3));
        }
        for a in lists(4, 4) {
            let (a1, a2, a3, a4) = (a[0], a[1], a[2], a[3]);
            let expect = a1 * a2 + a1 * a4 + a3 * a4 + 3 * a1 * a2 * a3 * a4;
            assert_eq!(kp(&a), BigInt::from(expect));
        }
    }

    #[test]
    fn matches_monomial_oracle() {
        for n in 0..=7 {
            for a in lists(n, 3) {
                let pair = continuant(&big(&a));
                let (ko, eko) = oracle(&a);
                assert_eq!(pair.k, BigInt::from(ko), "{a:?}");
                assert_eq!(pair.ek, BigInt::from(eko), "{a:?}");
            }
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det_d(&big(&[2, 2])).unwrap(), BigInt::from(8));
        assert_eq!(det_d(&big(&[2, 1, 1])).unwrap(), BigInt::from(3));
        assert_eq!(det_d(&big(&[0, 2, 2])).unwrap(), BigInt::from(-8));
        assert!(matches!(
            det_d(&big(&[3])),
            Err(Error::ShortExpansion { len: 1, min: 2 })
        ));
        for a in lists(3, 4) {
            let (a1, a2, a3) = (a[0], a[1], a[2]);
            let expect = a2 * a3 * (a1 + a3 * (a1 * a2 - 1));
            assert_eq!(det_d(&big(&a)).unwrap(), BigInt::from(expect));
        }
    }

    #[test]
    fn exhaustive_identities() {
        for n in 2..=8 {
            for a in lists(n, 4) {
                let b = big(&a);
                // classical determinant identity
                if n >= 2 {
                    let lhs = continuant(&b).k * continuant(&b[1..n - 1]).k
                        - continuant(&b[..n - 1]).k * continuant(&b[1..]).k;
                    let sign = if n % 2 == 0 { 1 } else { -1 };
                    assert_eq!(lhs, BigInt::from(sign), "{a:?}");
                }
                // super recurrence
                let rec = &b[0] * continuant(&b[1..]).k
                    + &b[0] * shadow_continuant(&b[1..]).kprime
                    + shadow_continuant(&b[2..]).kprime
                    - &b[0] * nbar(n);
                assert_eq!(shadow_continuant(&b).kprime, rec, "{a:?}");
                let d = det_d(&b).unwrap();
                assert!(d > BigInt::zero(), "{a:?}");
            }
        }
    }

    #[test]
    fn fibonacci_values() {
        let (mut f0, mut f1) = (BigInt::one(), BigInt::one());
        assert_eq!(continuant(&[]).k, f0);
        for n in 1..=25usize {
            assert_eq!(continuant(&vec![BigInt::one(); n]).k, f1);
            let f2 = &f0 + &f1;
            f0 = std::mem::replace(&mut f1, f2);
        }
    }

    #[test]
    fn suffixes_agree_with_direct_evaluation() {
        let a = big(&[3, 1, 4, 1, 5, 9, 2, 6]);
        let s = suffix_continuants(&a);
        for i in 0..=a.len() {
            assert_eq!(s[i], continuant(&a[i..]));
        }
    }

    proptest! {
        #[test]
        fn quotient_is_classical_fraction(a in proptest::collection::vec(1i64..20, 1..12)) {
            let b = big(&a);
            let mut value = Rational::from_integer(b[b.len() - 1].clone());
            for x in b.iter().rev().skip(1) {
                value = Rational::from_integer(x.clone()) + value.recip();
            }
            let q = Rational::new(continuant(&b).k, continuant(&b[1..]).k);
            prop_assert_eq!(q, value);
        }
    }
}

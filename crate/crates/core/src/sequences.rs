//! Integer sequences attached to the Farey shadows.
//!
//! Fibonacci numbers here use the standard indexing `F₀ = 0, F₁ = F₂ = 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `Fₙ` with `F₀ = 0`, `F₁ = 1`.
pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

/// A004524: `2⌊n/4⌋ + (0, 1, 2, 2)[n mod 4]`.
pub fn a004524(n: u64) -> u64 {
    2 * (n / 4) + [0, 1, 2, 2][(n % 4) as usize]
}

/// A054454 through `aₙ = aₙ₋₁ + aₙ₋₂ + Fₙ₊₁ − [n even]`, `a₀ = 0`, `a₁ = 1`.
pub fn a054454(n: usize) -> BigInt {
    a054454_prefix(n + 1).pop().expect("nonempty prefix")
}

/// The first `len` terms of A054454.
pub fn a054454_prefix(len: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        let next = match n {
            0 => BigInt::zero(),
            1 => BigInt::one(),
            _ => {
                let even = BigInt::from(u8::from(n % 2 == 0));
                &out[n - 1] + &out[n - 2] + fibonacci(n + 1) - even
            }
        };
        out.push(next);
    }
    out
}

/// A001629, the Fibonacci self-convolution `Σᵢ Fᵢ Fₙ₋ᵢ` (offset 0).
pub fn a001629(n: usize) -> BigInt {
    (0..=n).map(|i| fibonacci(i) * fibonacci(n - i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn prefixes() {
        let a: Vec<u64> = (0..14).map(a004524).collect();
        assert_eq!(a, [0, 1, 2, 2, 2, 3, 4, 4, 4, 5, 6, 6, 6, 7]);
        assert_eq!(
            a054454_prefix(12),
            ints(&[0, 1, 2, 6, 12, 26, 50, 97, 180, 332, 600, 1076])
        );
        let c: Vec<BigInt> = (0..9).map(a001629).collect();
        assert_eq!(c, ints(&[0, 0, 1, 2, 5, 10, 20, 38, 71]));
        assert_eq!(fibonacci(0), BigInt::zero());
        assert_eq!(fibonacci(12), BigInt::from(144));
        assert_eq!(a054454(5), BigInt::from(26));
    }

    #[test]
    fn lacunary_sum() {
        for n in 0..=20usize {
            let s: BigInt = (0..=(n + 1) / 2).map(|k| a001629(n + 1 - 2 * k)).sum();
            assert_eq!(s, a054454(n), "n = {n}");
        }
    }
}

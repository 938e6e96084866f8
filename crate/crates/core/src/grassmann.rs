//! The supercommutative ring `R ⊗ ℚ`, `R = (ℤ ⊕ ℤξη) ⊕ (ℤξ ⊕ ℤη)`.
//!
//! An element is `a + a′ξη + λξ + μη` with `ξ² = η² = 0` and `ξη = −ηξ`.
//! The even part `a + a′ξη` behaves like a dual number; the odd part
//! `λξ + μη` squares to zero.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_compact, format_fraction, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElem {
    /// Coefficient of `1`.
    pub body: Rational,
    /// Coefficient of `ξη`.
    pub soul: Rational,
    /// Coefficient of `ξ`.
    pub xi: Rational,
    /// Coefficient of `η`.
    pub eta: Rational,
}

impl RingElem {
    pub fn new(body: Rational, soul: Rational, xi: Rational, eta: Rational) -> Self {
        RingElem { body, soul, xi, eta }
    }

    /// Integer coefficients, in the order `body, soul, xi, eta`.
    pub fn ints(body: i64, soul: i64, xi: i64, eta: i64) -> Self {
        RingElem::new(body.into_q(), soul.into_q(), xi.into_q(), eta.into_q())
    }

    pub fn scalar(body: Rational) -> Self {
        RingElem {
            body,
            ..Default::default()
        }
    }

    pub fn from_int(n: i64) -> Self {
        RingElem::ints(n, 0, 0, 0)
    }

    pub fn xi() -> Self {
        RingElem::ints(0, 0, 1, 0)
    }

    pub fn eta() -> Self {
        RingElem::ints(0, 0, 0, 1)
    }

    pub fn xi_eta() -> Self {
        RingElem::ints(0, 1, 0, 0)
    }

    pub fn is_even(&self) -> bool {
        self.xi.is_zero() && self.eta.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.body.is_zero() && self.soul.is_zero()
    }

    /// Parity of a homogeneous element; `None` when both parts are present.
    /// Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        if self.is_even() {
            Some(Parity::Even)
        } else if self.is_odd() {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    /// True when the element lies in the nilpotent ideal (zero body).
    pub fn is_nilpotent(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        [&self.body, &self.soul, &self.xi, &self.eta]
            .iter()
            .all(|c| c.is_integer())
    }

    pub fn even_part(&self) -> EvenElem {
        EvenElem::new(self.body.clone(), self.soul.clone())
    }

    pub fn odd_part(&self) -> OddElem {
        OddElem::new(self.xi.clone(), self.eta.clone())
    }

    pub fn to_even(&self) -> Result<EvenElem> {
        if self.is_even() {
            Ok(self.even_part())
        } else {
            Err(Error::NotEven(self.to_string()))
        }
    }

    pub fn to_odd(&self) -> Result<OddElem> {
        if self.is_odd() {
            Ok(self.odd_part())
        } else {
            Err(Error::NotOdd(self.to_string()))
        }
    }

    /// The element with its body removed.
    pub fn nilpotent_part(&self) -> RingElem {
        RingElem {
            body: Rational::zero(),
            ..self.clone()
        }
    }

    /// Sign flip of the odd coefficients, the grading automorphism.
    pub fn grade_involution(&self) -> RingElem {
        RingElem::new(
            self.body.clone(),
            self.soul.clone(),
            -&self.xi,
            -&self.eta,
        )
    }

    /// The substitution `ξ ↦ −η`, `η ↦ ξ`. It fixes `ξη`.
    pub fn tau(&self) -> RingElem {
        RingElem::new(
            self.body.clone(),
            self.soul.clone(),
            self.eta.clone(),
            -&self.xi,
        )
    }

    pub fn scale(&self, k: &Rational) -> RingElem {
        RingElem::new(
            &self.body * k,
            &self.soul * k,
            &self.xi * k,
            &self.eta * k,
        )
    }

    /// ASCII rendering `a + a'*xe + l*x + m*e`.
    pub fn to_ascii(&self) -> String {
        format!("{self:#}")
    }
}

trait IntoQ {
    fn into_q(self) -> Rational;
}

impl IntoQ for i64 {
    fn into_q(self) -> Rational {
        Rational::from_integer(self.into())
    }
}

// acc += a * b, skipping zero factors. Generator matrices are sparse, so this
// avoids most big-number multiplications in long words.
#[inline]
fn mul_acc(acc: &mut Rational, a: &Rational, b: &Rational) {
    if !a.is_zero() && !b.is_zero() {
        *acc += a * b;
    }
}

#[inline]
fn mul_sub(acc: &mut Rational, a: &Rational, b: &Rational) {
    if !a.is_zero() && !b.is_zero() {
        *acc -= a * b;
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;

    /// `(a + sξη + λξ + μη)(b + tξη + λ′ξ + μ′η)
    ///   = ab + (at + sb + λμ′ − μλ′)ξη + (aλ′ + λb)ξ + (aμ′ + μb)η`
    fn mul(self, y: &'a RingElem) -> RingElem {
        let x = self;
        let mut body = Rational::zero();
        mul_acc(&mut body, &x.body, &y.body);
        let mut soul = Rational::zero();
        mul_acc(&mut soul, &x.body, &y.soul);
        mul_acc(&mut soul, &x.soul, &y.body);
        mul_acc(&mut soul, &x.xi, &y.eta);
        mul_sub(&mut soul, &x.eta, &y.xi);
        let mut xi = Rational::zero();
        mul_acc(&mut xi, &x.body, &y.xi);
        mul_acc(&mut xi, &x.xi, &y.body);
        let mut eta = Rational::zero();
        mul_acc(&mut eta, &x.body, &y.eta);
        mul_acc(&mut eta, &x.eta, &y.body);
        RingElem { body, soul, xi, eta }
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;

    fn add(self, y: &'a RingElem) -> RingElem {
        RingElem::new(
            &self.body + &y.body,
            &self.soul + &y.soul,
            &self.xi + &y.xi,
            &self.eta + &y.eta,
        )
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;

    fn sub(self, y: &'a RingElem) -> RingElem {
        RingElem::new(
            &self.body - &y.body,
            &self.soul - &y.soul,
            &self.xi - &y.xi,
            &self.eta - &y.eta,
        )
    }
}

impl Neg for &RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        RingElem::new(-&self.body, -&self.soul, -&self.xi, -&self.eta)
    }
}

impl Neg for RingElem {
    type Output = RingElem;

    fn neg(self) -> RingElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $f:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: &'a $ty) -> $ty {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(RingElem, Add, add);
forward_owned!(RingElem, Sub, sub);
forward_owned!(RingElem, Mul, mul);

impl AddAssign<&RingElem> for RingElem {
    fn add_assign(&mut self, rhs: &RingElem) {
        self.body += &rhs.body;
        self.soul += &rhs.soul;
        self.xi += &rhs.xi;
        self.eta += &rhs.eta;
    }
}

impl SubAssign<&RingElem> for RingElem {
    fn sub_assign(&mut self, rhs: &RingElem) {
        self.body -= &rhs.body;
        self.soul -= &rhs.soul;
        self.xi -= &rhs.xi;
        self.eta -= &rhs.eta;
    }
}

impl Zero for RingElem {
    fn zero() -> Self {
        RingElem::default()
    }

    fn is_zero(&self) -> bool {
        self.body.is_zero() && self.soul.is_zero() && self.xi.is_zero() && self.eta.is_zero()
    }
}

impl One for RingElem {
    fn one() -> Self {
        RingElem::from_int(1)
    }
}

impl From<Rational> for RingElem {
    fn from(body: Rational) -> Self {
        RingElem::scalar(body)
    }
}

impl From<i64> for RingElem {
    fn from(n: i64) -> Self {
        RingElem::from_int(n)
    }
}

/// Even element `body + soul·ξη`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EvenElem {
    pub body: Rational,
    pub soul: Rational,
}

impl EvenElem {
    pub fn new(body: Rational, soul: Rational) -> Self {
        EvenElem { body, soul }
    }

    pub fn ints(body: i64, soul: i64) -> Self {
        EvenElem::new(body.into_q(), soul.into_q())
    }

    /// `x / y = x.body/y.body + ((x.soul·y.body − x.body·y.soul)/y.body²)·ξη`.
    pub fn checked_div(&self, y: &EvenElem) -> Result<EvenElem> {
        if y.body.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let body = &self.body / &y.body;
        let soul = (&self.soul * &y.body - &self.body * &y.soul) / (&y.body * &y.body);
        Ok(EvenElem { body, soul })
    }
}

/// Quotient of even elements; fails when the divisor has zero body.
pub fn even_div(x: &EvenElem, y: &EvenElem) -> Result<EvenElem> {
    x.checked_div(y)
}

impl<'a> Mul<&'a EvenElem> for &'a EvenElem {
    type Output = EvenElem;

    fn mul(self, y: &'a EvenElem) -> EvenElem {
        EvenElem::new(
            &self.body * &y.body,
            &self.body * &y.soul + &self.soul * &y.body,
        )
    }
}

impl<'a> Add<&'a EvenElem> for &'a EvenElem {
    type Output = EvenElem;

    fn add(self, y: &'a EvenElem) -> EvenElem {
        EvenElem::new(&self.body + &y.body, &self.soul + &y.soul)
    }
}

impl<'a> Sub<&'a EvenElem> for &'a EvenElem {
    type Output = EvenElem;

    fn sub(self, y: &'a EvenElem) -> EvenElem {
        EvenElem::new(&self.body - &y.body, &self.soul - &y.soul)
    }
}

forward_owned!(EvenElem, Add, add);
forward_owned!(EvenElem, Sub, sub);
forward_owned!(EvenElem, Mul, mul);

impl From<EvenElem> for RingElem {
    fn from(e: EvenElem) -> Self {
        RingElem::new(e.body, e.soul, Rational::zero(), Rational::zero())
    }
}

impl TryFrom<RingElem> for EvenElem {
    type Error = Error;

    fn try_from(x: RingElem) -> Result<Self> {
        x.to_even()
    }
}

impl fmt::Display for EvenElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: RingElem = self.clone().into();
        fmt::Display::fmt(&r, f)
    }
}

/// Odd element `xi·ξ + eta·η`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OddElem {
    pub xi: Rational,
    pub eta: Rational,
}

impl OddElem {
    pub fn new(xi: Rational, eta: Rational) -> Self {
        OddElem { xi, eta }
    }

    pub fn ints(xi: i64, eta: i64) -> Self {
        OddElem::new(xi.into_q(), eta.into_q())
    }
}

impl<'a> Mul<&'a OddElem> for &'a OddElem {
    type Output = EvenElem;

    fn mul(self, y: &'a OddElem) -> EvenElem {
        EvenElem::new(Rational::zero(), &self.xi * &y.eta - &self.eta * &y.xi)
    }
}

impl<'a> Add<&'a OddElem> for &'a OddElem {
    type Output = OddElem;

    fn add(self, y: &'a OddElem) -> OddElem {
        OddElem::new(&self.xi + &y.xi, &self.eta + &y.eta)
    }
}

impl From<OddElem> for RingElem {
    fn from(o: OddElem) -> Self {
        RingElem::new(Rational::zero(), Rational::zero(), o.xi, o.eta)
    }
}

impl TryFrom<RingElem> for OddElem {
    type Error = Error;

    fn try_from(x: RingElem) -> Result<Self> {
        x.to_odd()
    }
}

impl fmt::Display for OddElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: RingElem = self.clone().into();
        fmt::Display::fmt(&r, f)
    }
}

impl fmt::Display for RingElem {
    /// `2 + ξη`, `3ξ - η`, `-1/2ξη`. The alternate flag (`{:#}`) selects the
    /// ASCII grammar `2 + xe`, `3*x - e`, `-1/2*xe`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ascii = f.alternate();
        let symbols: [&str; 3] = if ascii {
            ["xe", "x", "e"]
        } else {
            ["ξη", "ξ", "η"]
        };
        let mut terms: Vec<(bool, String)> = Vec::new();
        if !self.body.is_zero() {
            terms.push((self.body.is_negative(), format_compact(&self.body.abs())));
        }
        for (coef, sym) in [&self.soul, &self.xi, &self.eta].into_iter().zip(symbols) {
            if coef.is_zero() {
                continue;
            }
            let mag = coef.abs();
            let text = if mag.is_one() {
                sym.to_string()
            } else if ascii {
                format!("{}*{sym}", format_compact(&mag))
            } else {
                format!("{}{sym}", format_compact(&mag))
            };
            terms.push((coef.is_negative(), text));
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (neg, text)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{text}")?,
                (0, false) => f.write_str(text)?,
                (_, true) => write!(f, " - {text}")?,
                (_, false) => write!(f, " + {text}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for RingElem {
    type Err = Error;

    /// Accepts both renderings produced by `Display`, with any spacing, and
    /// repeated terms (which are summed).
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty ring element".into()));
        }
        let mut out = RingElem::zero();
        let mut rest = cleaned.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                b'+' => {
                    rest = &rest[1..];
                    false
                }
                _ if first => false,
                _ => return Err(Error::Parse(format!("expected sign in `{s}`"))),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let (coef, slot) = parse_term(term, s)?;
            let coef = if negative { -coef } else { coef };
            match slot {
                0 => out.body += coef,
                1 => out.soul += coef,
                2 => out.xi += coef,
                _ => out.eta += coef,
            }
        }
        Ok(out)
    }
}

fn parse_term(term: &str, whole: &str) -> Result<(Rational, usize)> {
    const SYMBOLS: [(&str, usize); 6] =
        [("ξη", 1), ("xe", 1), ("ξ", 2), ("x", 2), ("η", 3), ("e", 3)];
    for (sym, slot) in SYMBOLS {
        if let Some(coef) = term.strip_suffix(sym) {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let value = if coef.is_empty() {
                Rational::one()
            } else {
                parse_rational(coef)?
            };
            return Ok((value, slot));
        }
    }
    if term.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{whole}`")));
    }
    Ok((parse_rational(term)?, 0))
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.body, &self.soul, &self.xi, &self.eta]
            .map(format_fraction)
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingElem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = <[String; 4]>::deserialize(deserializer)?;
        let [b, s, x, e] = parts.map(|p| parse_rational(&p));
        let conv = |r: Result<Rational>| r.map_err(serde::de::Error::custom);
        Ok(RingElem::new(conv(b)?, conv(s)?, conv(x)?, conv(e)?))
    }
}

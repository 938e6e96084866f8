//! 3×3 supermatrices over [`RingElem`], the named generators and the
//! orthosymplectic group `OSp(1|2)`.
//!
//! Matrices act on column vectors `(even, even, odd)ᵗ`. A matrix is
//! *OSp-shaped* when its upper-left 2×2 block and corner are even and its
//! borders are odd; such matrices preserve the vector shape.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{EvenElem, OddElem, RingElem};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SuperVector3 {
    pub entries: [RingElem; 3],
}

impl SuperVector3 {
    pub fn new(a: RingElem, b: RingElem, c: RingElem) -> Self {
        SuperVector3 { entries: [a, b, c] }
    }

    pub fn basis(i: usize) -> Self {
        let mut entries: [RingElem; 3] = Default::default();
        entries[i] = RingElem::one();
        SuperVector3 { entries }
    }

    /// Entries one and two even, entry three odd.
    pub fn has_standard_shape(&self) -> bool {
        self.entries[0].is_even() && self.entries[1].is_even() && self.entries[2].is_odd()
    }

    /// The `(p + p′ξη, q + q′ξη, λξ + μη)` decomposition.
    pub fn split(&self) -> Result<(EvenElem, EvenElem, OddElem)> {
        let err = || Error::BadShape(self.to_string());
        Ok((
            self.entries[0].to_even().map_err(|_| err())?,
            self.entries[1].to_even().map_err(|_| err())?,
            self.entries[2].to_odd().map_err(|_| err())?,
        ))
    }

    pub fn neg(&self) -> SuperVector3 {
        SuperVector3 {
            entries: [
                -&self.entries[0],
                -&self.entries[1],
                -&self.entries[2],
            ],
        }
    }

    /// Classical pair `(p, q)` from the bodies of the first two entries.
    pub fn classical(&self) -> (Rational, Rational) {
        (self.entries[0].body.clone(), self.entries[1].body.clone())
    }
}

impl fmt::Display for SuperVector3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            write!(
                f,
                "({:#}, {:#}, {:#})",
                self.entries[0], self.entries[1], self.entries[2]
            )
        } else {
            write!(
                f,
                "({}, {}, {})",
                self.entries[0], self.entries[1], self.entries[2]
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SuperMatrix3 {
    pub entries: [[RingElem; 3]; 3],
}

/// Even and odd blocks of an `OSp(1|2)` element:
///
/// ```text
/// ( a  b  γ )
/// ( c  d  δ )
/// ( α  β  e )
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OspWitness {
    pub a: EvenElem,
    pub b: EvenElem,
    pub c: EvenElem,
    pub d: EvenElem,
    pub e: EvenElem,
    pub alpha: OddElem,
    pub beta: OddElem,
    pub gamma: OddElem,
    pub delta: OddElem,
}

/// Why a matrix failed the `OSp(1|2)` test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OspViolation {
    /// Entry `(row, col)` has the wrong parity.
    Parity { row: usize, col: usize },
    /// One of the four defining equations fails; the string names it.
    Equation(&'static str),
}

impl fmt::Display for OspViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OspViolation::Parity { row, col } => {
                write!(f, "entry ({}, {}) has the wrong parity", row + 1, col + 1)
            }
            OspViolation::Equation(eq) => write!(f, "condition `{eq}` fails"),
        }
    }
}

fn ints_row(row: [(i64, i64, i64, i64); 3]) -> [RingElem; 3] {
    row.map(|(b, s, x, e)| RingElem::ints(b, s, x, e))
}

impl SuperMatrix3 {
    pub fn new(entries: [[RingElem; 3]; 3]) -> Self {
        SuperMatrix3 { entries }
    }

    /// Rows of `(body, soul, xi, eta)` integer tuples.
    pub fn from_ints(rows: [[(i64, i64, i64, i64); 3]; 3]) -> Self {
        SuperMatrix3 {
            entries: rows.map(ints_row),
        }
    }

    pub fn identity() -> Self {
        Self::diag(1, 1, 1)
    }

    pub fn diag(a: i64, b: i64, c: i64) -> Self {
        let z = (0, 0, 0, 0);
        SuperMatrix3::from_ints([
            [(a, 0, 0, 0), z, z],
            [z, (b, 0, 0, 0), z],
            [z, z, (c, 0, 0, 0)],
        ])
    }

    pub fn is_identity(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let x = &self.entries[i][j];
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn column(&self, j: usize) -> SuperVector3 {
        SuperVector3 {
            entries: [
                self.entries[0][j].clone(),
                self.entries[1][j].clone(),
                self.entries[2][j].clone(),
            ],
        }
    }

    pub fn mul_vec(&self, v: &SuperVector3) -> SuperVector3 {
        let row = |i: usize| {
            let mut acc = RingElem::zero();
            for k in 0..3 {
                if !self.entries[i][k].is_zero() && !v.entries[k].is_zero() {
                    acc += &(&self.entries[i][k] * &v.entries[k]);
                }
            }
            acc
        };
        SuperVector3 {
            entries: [row(0), row(1), row(2)],
        }
    }

    /// Entry-wise bodies.
    pub fn body_matrix(&self) -> [[Rational; 3]; 3] {
        self.entries
            .clone()
            .map(|row| row.map(|x| x.body))
    }

    fn from_body(m: &[[Rational; 3]; 3]) -> SuperMatrix3 {
        SuperMatrix3 {
            entries: m.clone().map(|row| row.map(RingElem::scalar)),
        }
    }

    /// Exact inverse. With `B` the body matrix and `N = B⁻¹(A − B)`, the
    /// entries of `N` lie in the nilpotent ideal, whose cube vanishes, so
    /// `A⁻¹ = (I − N + N²)B⁻¹`.
    pub fn inverse(&self) -> Result<SuperMatrix3> {
        let body = self.body_matrix();
        let body_inv = SuperMatrix3::from_body(&invert_rational(&body)?);
        let nilpotent = SuperMatrix3 {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| self.entries[i][j].nilpotent_part())
            }),
        };
        let n = &body_inv * &nilpotent;
        let n2 = &n * &n;
        let series = SuperMatrix3 {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let id = if i == j {
                        RingElem::one()
                    } else {
                        RingElem::zero()
                    };
                    &(&id - &n.entries[i][j]) + &n2.entries[i][j]
                })
            }),
        };
        Ok(&series * &body_inv)
    }

    /// `A^k`; negative powers go through [`SuperMatrix3::inverse`].
    pub fn pow(&self, k: i64) -> Result<SuperMatrix3> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_unsigned(k.unsigned_abs()))
    }

    fn pow_unsigned(&self, mut k: u64) -> SuperMatrix3 {
        let mut result = SuperMatrix3::identity();
        let mut square = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &square;
            }
            k >>= 1;
            if k > 0 {
                square = &square * &square;
            }
        }
        result
    }

    /// Smallest `k ≤ bound` with `A^k = I`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut power = SuperMatrix3::identity();
        for k in 1..=bound {
            power = &power * self;
            if power.is_identity() {
                return Some(k);
            }
        }
        None
    }

    /// Entry-wise action of `ξ ↦ −η, η ↦ ξ`.
    pub fn tau(&self) -> SuperMatrix3 {
        SuperMatrix3 {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].tau())),
        }
    }

    /// Decomposes the matrix and checks the `OSp(1|2)` relations
    ///
    /// ```text
    /// ad − bc = 1 − αβ,   e = 1 + αβ,   −aδ + cγ = α,   −bδ + dγ = β.
    /// ```
    pub fn osp_check(&self) -> Result<OspWitness, OspViolation> {
        let m = &self.entries;
        let even = |i: usize, j: usize| {
            m[i][j]
                .to_even()
                .map_err(|_| OspViolation::Parity { row: i, col: j })
        };
        let odd = |i: usize, j: usize| {
            m[i][j]
                .to_odd()
                .map_err(|_| OspViolation::Parity { row: i, col: j })
        };
        let w = OspWitness {
            a: even(0, 0)?,
            b: even(0, 1)?,
            c: even(1, 0)?,
            d: even(1, 1)?,
            e: even(2, 2)?,
            gamma: odd(0, 2)?,
            delta: odd(1, 2)?,
            alpha: odd(2, 0)?,
            beta: odd(2, 1)?,
        };
        let (a, b, c, d, e) = (&m[0][0], &m[0][1], &m[1][0], &m[1][1], &m[2][2]);
        let (gamma, delta, alpha, beta) = (&m[0][2], &m[1][2], &m[2][0], &m[2][1]);
        let one = RingElem::one();
        let ab = alpha * beta;
        if &(a * d) - &(b * c) != &one - &ab {
            return Err(OspViolation::Equation("ad - bc = 1 - αβ"));
        }
        if *e != &one + &ab {
            return Err(OspViolation::Equation("e = 1 + αβ"));
        }
        if &(c * gamma) - &(a * delta) != *alpha {
            return Err(OspViolation::Equation("-aδ + cγ = α"));
        }
        if &(d * gamma) - &(b * delta) != *beta {
            return Err(OspViolation::Equation("-bδ + dγ = β"));
        }
        Ok(w)
    }

    pub fn is_osp(&self) -> bool {
        self.osp_check().is_ok()
    }

    /// `ℛ^k = [[1, k, kξ], [0, 1, 0], [0, kξ, 1]]` for every integer `k`.
    pub fn r_pow(k: &BigInt) -> SuperMatrix3 {
        let k = Rational::from_integer(k.clone());
        let z = Rational::zero;
        let kxi = RingElem::new(z(), z(), k.clone(), z());
        SuperMatrix3::new([
            [RingElem::one(), RingElem::scalar(k), kxi.clone()],
            [RingElem::zero(), RingElem::one(), RingElem::zero()],
            [RingElem::zero(), kxi, RingElem::one()],
        ])
    }

    /// `ℒ^k = [[1, 0, 0], [k, 1, −kη], [kη, 0, 1]]` for every integer `k`.
    pub fn l_pow(k: &BigInt) -> SuperMatrix3 {
        let k = Rational::from_integer(k.clone());
        let z = Rational::zero;
        let keta = RingElem::new(z(), z(), z(), k.clone());
        SuperMatrix3::new([
            [RingElem::one(), RingElem::zero(), RingElem::zero()],
            [RingElem::scalar(k), RingElem::one(), -&keta],
            [keta, RingElem::zero(), RingElem::one()],
        ])
    }

    /// `A_k = ℛ^k S̃`.
    pub fn a_block(k: &BigInt) -> SuperMatrix3 {
        &SuperMatrix3::r_pow(k) * &Generator::STilde.matrix()
    }

    /// `B_ℓ = S̃ ℒ^ℓ`.
    pub fn b_block(l: &BigInt) -> SuperMatrix3 {
        &Generator::STilde.matrix() * &SuperMatrix3::l_pow(l)
    }
}

fn invert_rational(m: &[[Rational; 3]; 3]) -> Result<[[Rational; 3]; 3]> {
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    let det = (0..3)
        .map(|j| &m[0][j] * cof(0, j))
        .fold(Rational::zero(), |acc, t| acc + t);
    if det.is_zero() {
        return Err(Error::SingularBody);
    }
    // cyclic cofactors carry their sign already; inverse is the transposed
    // cofactor matrix over det
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| cof(j, i) / &det)
    }))
}

impl<'a> Mul<&'a SuperMatrix3> for &'a SuperMatrix3 {
    type Output = SuperMatrix3;

    fn mul(self, rhs: &'a SuperMatrix3) -> SuperMatrix3 {
        SuperMatrix3 {
            entries: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    let mut acc = RingElem::zero();
                    for k in 0..3 {
                        let (x, y) = (&self.entries[i][k], &rhs.entries[k][j]);
                        if !x.is_zero() && !y.is_zero() {
                            acc += &(x * y);
                        }
                    }
                    acc
                })
            }),
        }
    }
}

impl Mul for SuperMatrix3 {
    type Output = SuperMatrix3;

    fn mul(self, rhs: SuperMatrix3) -> SuperMatrix3 {
        &self * &rhs
    }
}

impl<'a> Mul<&'a SuperVector3> for &'a SuperMatrix3 {
    type Output = SuperVector3;

    fn mul(self, v: &'a SuperVector3) -> SuperVector3 {
        self.mul_vec(v)
    }
}

impl fmt::Display for SuperMatrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" / ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                if f.alternate() {
                    write!(f, "{x:#}")?;
                } else {
                    write!(f, "{x}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    R,
    L,
    U,
    V,
    S,
    STilde,
    E,
    J,
}

impl Generator {
    pub const ALL: [Generator; 8] = [
        Generator::R,
        Generator::L,
        Generator::U,
        Generator::V,
        Generator::S,
        Generator::STilde,
        Generator::E,
        Generator::J,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::R => "R",
            Generator::L => "L",
            Generator::U => "U",
            Generator::V => "V",
            Generator::S => "S",
            Generator::STilde => "Stilde",
            Generator::E => "E",
            Generator::J => "J",
        }
    }

    pub fn matrix(self) -> SuperMatrix3 {
        let z = (0, 0, 0, 0);
        let one = (1, 0, 0, 0);
        let m_one = (-1, 0, 0, 0);
        let xi = (0, 0, 1, 0);
        let eta = (0, 0, 0, 1);
        let m_xi = (0, 0, -1, 0);
        let m_eta = (0, 0, 0, -1);
        let rows = match self {
            Generator::R => [[one, one, xi], [z, one, z], [z, xi, one]],
            Generator::L => [[one, z, z], [one, one, m_eta], [eta, z, one]],
            Generator::U => [[z, one, z], [m_one, m_one, eta], [z, m_eta, one]],
            Generator::V => [[m_one, one, xi], [m_one, z, z], [m_xi, z, one]],
            Generator::S => [[z, one, z], [m_one, z, z], [z, z, one]],
            Generator::STilde => [[z, one, z], [one, z, z], [z, z, one]],
            Generator::E => [[one, z, xi], [z, one, z], [z, xi, one]],
            Generator::J => [[m_one, z, z], [z, m_one, z], [z, z, one]],
        };
        SuperMatrix3::from_ints(rows)
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// Looks a generator up by name (`R`, `L`, `U`, `V`, `S`, `Stilde`, `E`, `J`).
pub fn generator(name: &str) -> Result<SuperMatrix3> {
    Ok(name.parse::<Generator>()?.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn g(x: Generator) -> SuperMatrix3 {
        x.matrix()
    }

    fn v(e: [(i64, i64, i64, i64); 3]) -> SuperVector3 {
        SuperVector3 {
            entries: ints_row(e),
        }
    }

    #[test]
    fn relations_between_generators() {
        use Generator::*;
        assert_eq!(&g(R) * &g(S), g(V));
        let l_inv = g(L).inverse().unwrap();
        assert_eq!(&l_inv * &g(S), g(U));
        assert_eq!(&g(L) * &l_inv, SuperMatrix3::identity());
        assert_eq!(&l_inv * &g(L), SuperMatrix3::identity());
        assert_eq!(&g(S) * &g(S), g(J));
    }

    #[test]
    fn orders() {
        use Generator::*;
        assert_eq!(g(U).order(12), Some(3));
        assert_eq!(g(V).order(12), Some(3));
        assert_eq!(g(S).order(12), Some(4));
        assert_eq!(SuperMatrix3::identity().order(1), Some(1));
        assert_eq!(g(R).order(50), None);
        assert_eq!(g(U).pow(3).unwrap(), SuperMatrix3::identity());
        assert_eq!(g(U).pow(0).unwrap(), SuperMatrix3::identity());
        assert_eq!(g(R).pow(2).unwrap(), &g(R) * &g(R));
        assert_eq!(g(S).inverse().unwrap(), g(S).pow(3).unwrap());
        assert_eq!(SuperMatrix3::identity().inverse().unwrap(), SuperMatrix3::identity());
    }

    #[test]
    fn closed_form_powers() {
        for k in -6i64..=6 {
            let big = BigInt::from(k);
            assert_eq!(SuperMatrix3::r_pow(&big), g(Generator::R).pow(k).unwrap());
            assert_eq!(SuperMatrix3::l_pow(&big), g(Generator::L).pow(k).unwrap());
        }
    }

    #[test]
    fn vector_actions() {
        use Generator::*;
        let two = BigInt::from(2);
        let word = &(&SuperMatrix3::r_pow(&two) * &SuperMatrix3::l_pow(&two));
        assert_eq!(
            word.mul_vec(&SuperVector3::basis(0)),
            v([(5, 4, 0, 0), (2, 0, 0, 0), (0, 0, 4, 2)])
        );
        let word = &(&(&SuperMatrix3::r_pow(&two) * &g(L)) * &g(R));
        assert_eq!(
            word.mul_vec(&SuperVector3::basis(1)),
            v([(5, 4, 0, 0), (2, 1, 0, 0), (0, 0, 5, 1)])
        );
        let sum = v([(1, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0)]);
        assert_eq!(g(L).mul_vec(&v([(1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, -1)])), sum);
        assert_eq!(g(R).mul_vec(&v([(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, -1, 0)])), sum);
        let x = v([(3, 1, 0, 0), (2, -1, 0, 0), (0, 0, 1, 5)]);
        assert_eq!(SuperMatrix3::identity().mul_vec(&x), x);
    }

    #[test]
    fn osp_membership() {
        use Generator::*;
        for x in [R, L, U, V, S, E, J] {
            assert!(g(x).is_osp(), "{x:?}");
        }
        let w = g(R).osp_check().unwrap();
        assert_eq!(w.beta, OddElem::ints(1, 0));
        assert_eq!(w.gamma, OddElem::ints(1, 0));
        assert_eq!(w.e, EvenElem::ints(1, 0));
        assert!(SuperMatrix3::identity().is_osp());
        assert_eq!(
            SuperMatrix3::diag(2, 1, 1).osp_check(),
            Err(OspViolation::Equation("ad - bc = 1 - αβ"))
        );
        // S̃ swaps the even coordinates: its body block has determinant −1.
        assert!(!g(STilde).is_osp());
        let mut bad = SuperMatrix3::identity();
        bad.entries[0][2] = RingElem::one();
        assert_eq!(bad.osp_check(), Err(OspViolation::Parity { row: 0, col: 2 }));
    }

    #[test]
    fn tau_action() {
        use Generator::*;
        assert_eq!(g(S).tau(), g(S));
        let s_inv = g(S).inverse().unwrap();
        assert_eq!((&(&g(S) * &g(U)) * &s_inv).tau(), g(V));
        let j = g(J);
        for x in [R, L, U, V, E] {
            assert_eq!(g(x).tau().tau(), &(&j * &g(x)) * &j);
        }
        assert_eq!(RingElem::xi_eta().tau(), RingElem::xi_eta());
    }

    #[test]
    fn s_tilde_blocks() {
        let st = g(Generator::STilde);
        assert!((&st * &st).is_identity());
        for k in 0..4i64 {
            for l in 0..4i64 {
                let (k, l) = (BigInt::from(k), BigInt::from(l));
                assert_eq!(
                    &SuperMatrix3::a_block(&k) * &SuperMatrix3::b_block(&l),
                    &SuperMatrix3::r_pow(&k) * &SuperMatrix3::l_pow(&l)
                );
            }
        }
        let a2 = SuperMatrix3::a_block(&BigInt::from(2));
        assert_eq!(a2, SuperMatrix3::from_ints([
            [(2, 0, 0, 0), (1, 0, 0, 0), (0, 0, 2, 0)],
            [(1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)],
            [(0, 0, 2, 0), (0, 0, 0, 0), (1, 0, 0, 0)],
        ]));
    }

    #[test]
    fn singular_body_is_rejected() {
        let m = SuperMatrix3::diag(1, 0, 1);
        assert!(matches!(m.inverse(), Err(Error::SingularBody)));
        assert!(m.pow(-1).is_err());
        assert!(m.pow(2).is_ok());
    }

    #[test]
    fn generator_lookup() {
        assert_eq!(generator("V").unwrap(), SuperMatrix3::from_ints([
            [(-1, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0)],
            [(-1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)],
            [(0, 0, -1, 0), (0, 0, 0, 0), (1, 0, 0, 0)],
        ]));
        assert_eq!(generator("stilde").unwrap(), g(Generator::STilde));
        assert!(matches!(generator("W"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn inverse_of_non_integral_matrix() {
        let mut m = g(Generator::V);
        m.entries[0][0] = RingElem::new(int(2), int(3), int(0), int(0));
        m.entries[2][2] = RingElem::new(int(1), int(-1), int(0), int(0));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
    }

    #[test]
    fn json_layout() {
        let json = serde_json::to_value(g(Generator::R)).unwrap();
        assert_eq!(json[0][2], serde_json::json!(["0/1", "0/1", "1/1", "0/1"]));
        let back: SuperMatrix3 = serde_json::from_value(json).unwrap();
        assert_eq!(back, g(Generator::R));
        let vjson = serde_json::to_string(&SuperVector3::basis(1)).unwrap();
        assert_eq!(
            vjson,
            r#"[["0/1","0/1","0/1","0/1"],["1/1","0/1","0/1","0/1"],["0/1","0/1","0/1","0/1"]]"#
        );
    }
}

//! Exact arithmetic for supersymmetric continued fractions.
//!
//! Numbers are lifted to the supercommutative ring `ℤ[ξ,η]` (coefficients
//! widened to `ℚ`), where every even quantity has a classical part and a
//! nilpotent `ξη` part, its *shadow*. The crate provides:
//!
//! * [`grassmann`]: the ring itself, with even/odd views;
//! * [`supermatrix`]: 3×3 supermatrices, the generators `ℛ, ℒ, 𝒰, 𝒱, S, S̃, E, J`,
//!   inversion and the orthosymplectic membership test;
//! * [`continuants`]: classical continuants, their Euler-operator companions and
//!   shadow parts;
//! * [`shadows`]: even, odd and limit shadows of rationals and irrationals;
//! * [`farey`]: the shadowed Farey tree, Farey shadows and the related integer
//!   sequences.
//!
//! ```
//! use shadowcf::shadows::{even_shadow, odd_shadow};
//! use shadowcf::rational::ratio;
//!
//! assert_eq!(even_shadow(5, 2).unwrap(), ratio(2, 1));
//! assert_eq!(odd_shadow(5, 2).unwrap(), ratio(3, 4));
//! ```

pub mod continuants;
pub mod error;
pub mod experiments;
pub mod farey;
pub mod grassmann;
pub mod rational;
pub mod sequences;
pub mod shadows;
pub mod supermatrix;

pub use error::{Error, Result};
pub use grassmann::{EvenElem, OddElem, RingElem};
pub use rational::Rational;
pub use supermatrix::{Generator, SuperMatrix3, SuperVector3};

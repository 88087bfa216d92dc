//! Bicomplex and hyperbolic numbers.
//!
//! A bicomplex number is `Z = z1 + j z2` with `z1, z2 ∈ ℂ(i)` and commuting
//! units `i² = j² = −1`. Multiplication is diagonalised by the idempotents
//!
//! ```text
//! e⁺ = (1 + ij)/2,   e⁻ = (1 − ij)/2,   Z = β⁺ e⁺ + β⁻ e⁻,   β± = z1 ∓ i z2.
//! ```
//!
//! In idempotent coordinates the three conjugations act as follows:
//! `Z* = z̄1 − j z̄2` conjugates both components, `Z̄ = z̄1 + j z̄2` swaps and
//! conjugates, and `Z† = z1 − j z2` swaps.
//!
//! The two abstract imaginary units of the companion planes are realised as
//! the ordinary complex unit, so the companion of `Z` is simply the pair
//! `(z1, z2)` read as two independent complex coordinates.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::report::Sig17;
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Z = z1 + j z2`. Equality is exact on the four real coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bicomplex {
    pub z1: Complex64,
    pub z2: Complex64,
}

/// Components of a bicomplex number in the idempotent basis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdempotentPair {
    pub beta_plus: Complex64,
    pub beta_minus: Complex64,
}

/// `a⁺ e⁺ + a⁻ e⁻` with real components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Hyperbolic {
    pub a_plus: f64,
    pub a_minus: f64,
}

/// The companion variable `w⁺ e⁺ + w⁻ e⁻` with `w⁺ = x1 + i y1`, `w⁻ = x2 + i y2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Companion {
    pub w_plus: Complex64,
    pub w_minus: Complex64,
}

/// The three conjugates of a bicomplex number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conjugates {
    pub star: Bicomplex,
    pub bar: Bicomplex,
    pub dagger: Bicomplex,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex { z1: ZERO, z2: ZERO };
    pub const ONE: Bicomplex = Bicomplex {
        z1: Complex64::new(1.0, 0.0),
        z2: ZERO,
    };
    pub const I: Bicomplex = Bicomplex { z1: I, z2: ZERO };
    pub const J: Bicomplex = Bicomplex {
        z1: ZERO,
        z2: Complex64::new(1.0, 0.0),
    };
    pub const E_PLUS: Bicomplex = Bicomplex {
        z1: Complex64::new(0.5, 0.0),
        z2: Complex64::new(0.0, 0.5),
    };
    pub const E_MINUS: Bicomplex = Bicomplex {
        z1: Complex64::new(0.5, 0.0),
        z2: Complex64::new(0.0, -0.5),
    };

    pub const fn new(z1: Complex64, z2: Complex64) -> Self {
        Self { z1, z2 }
    }

    /// Builds `Z` from its four real coordinates `(x1, y1, x2, y2)`.
    pub const fn from_coords(x1: f64, y1: f64, x2: f64, y2: f64) -> Self {
        Self {
            z1: Complex64::new(x1, y1),
            z2: Complex64::new(x2, y2),
        }
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.z1.re, self.z1.im, self.z2.re, self.z2.im]
    }

    /// `β⁺ e⁺ + β⁻ e⁻`.
    pub fn from_components(beta_plus: Complex64, beta_minus: Complex64) -> Self {
        Self::from_idempotent(IdempotentPair {
            beta_plus,
            beta_minus,
        })
    }

    pub fn from_idempotent(pair: IdempotentPair) -> Self {
        let IdempotentPair {
            beta_plus,
            beta_minus,
        } = pair;
        Self {
            z1: (beta_plus + beta_minus) * 0.5,
            z2: (beta_plus - beta_minus) * (I * 0.5),
        }
    }

    pub fn to_idempotent(&self) -> IdempotentPair {
        IdempotentPair {
            beta_plus: self.z1 - I * self.z2,
            beta_minus: self.z1 + I * self.z2,
        }
    }

    pub fn plus(&self) -> Complex64 {
        self.z1 - I * self.z2
    }

    pub fn minus(&self) -> Complex64 {
        self.z1 + I * self.z2
    }

    /// `Z* = z̄1 − j z̄2`.
    pub fn star(&self) -> Self {
        Self::new(self.z1.conj(), -self.z2.conj())
    }

    /// `Z̄ = z̄1 + j z̄2`.
    pub fn bar(&self) -> Self {
        Self::new(self.z1.conj(), self.z2.conj())
    }

    /// `Z† = z1 − j z2`.
    pub fn dagger(&self) -> Self {
        Self::new(self.z1, -self.z2)
    }

    pub fn conjugations(&self) -> Conjugates {
        Conjugates {
            star: self.star(),
            bar: self.bar(),
            dagger: self.dagger(),
        }
    }

    pub fn companion(&self) -> Companion {
        Companion {
            w_plus: self.z1,
            w_minus: self.z2,
        }
    }

    /// `Z Z*`, always hyperbolic: `|β⁺|² e⁺ + |β⁻|² e⁻`.
    pub fn self_product(&self) -> Hyperbolic {
        let p = self.to_idempotent();
        Hyperbolic::new(p.beta_plus.norm_sqr(), p.beta_minus.norm_sqr())
    }

    /// Largest modulus of the two idempotent components.
    pub fn max_abs(&self) -> f64 {
        let p = self.to_idempotent();
        p.beta_plus.norm().max(p.beta_minus.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }

    /// Applies `f` to each idempotent component.
    pub fn map_components(&self, mut f: impl FnMut(Complex64) -> Complex64) -> Self {
        let p = self.to_idempotent();
        Self::from_components(f(p.beta_plus), f(p.beta_minus))
    }

    /// Component-wise exponential, `exp(β⁺) e⁺ + exp(β⁻) e⁻`.
    pub fn exp(&self) -> Self {
        self.map_components(|c| c.exp())
    }

    pub fn powu(&self, n: u32) -> Self {
        self.map_components(|c| c.powu(n))
    }
}

impl IdempotentPair {
    pub const fn new(beta_plus: Complex64, beta_minus: Complex64) -> Self {
        Self {
            beta_plus,
            beta_minus,
        }
    }

    pub fn to_bicomplex(self) -> Bicomplex {
        Bicomplex::from_idempotent(self)
    }
}

impl Hyperbolic {
    pub const fn new(a_plus: f64, a_minus: f64) -> Self {
        Self { a_plus, a_minus }
    }

    /// Swaps the two components.
    pub fn dagger(&self) -> Self {
        Self::new(self.a_minus, self.a_plus)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a_plus >= 0.0 && self.a_minus >= 0.0
    }

    /// Scalar squared modulus of a nonnegative hyperbolic value: the average
    /// of its two components. Negative components mean the input did not come
    /// from a self inner product and are rejected.
    pub fn modulus_sq(&self) -> Result<f64> {
        if !self.is_nonnegative() {
            return Err(Error::NegativeHyperbolic(self.a_plus, self.a_minus));
        }
        Ok(0.5 * (self.a_plus + self.a_minus))
    }

    /// Diagnostic alternative to [`modulus_sq`](Self::modulus_sq):
    /// `√((a⁺² + a⁻²)/2)`.
    pub fn euclidean_modulus(&self) -> f64 {
        (0.5 * (self.a_plus * self.a_plus + self.a_minus * self.a_minus)).sqrt()
    }

    pub fn to_bicomplex(self) -> Bicomplex {
        Bicomplex::from_components(self.a_plus.into(), self.a_minus.into())
    }

    /// Real parts of the idempotent components of `z`.
    pub fn from_bicomplex_re(z: &Bicomplex) -> Self {
        let p = z.to_idempotent();
        Self::new(p.beta_plus.re, p.beta_minus.re)
    }
}

impl Companion {
    /// `|Z^e|²` as it appears in the Gaussian envelopes: `(|w⁺|² + |w⁻|²)/2`.
    pub fn mixed_abs_sq(&self) -> f64 {
        0.5 * (self.w_plus.norm_sqr() + self.w_minus.norm_sqr())
    }

    /// `w⁺ e⁺ + w⁻ e⁻` as a bicomplex number.
    pub fn to_bicomplex(&self) -> Bicomplex {
        Bicomplex::from_components(self.w_plus, self.w_minus)
    }

    /// `Z` with `z1 = w⁺`, `z2 = w⁻`.
    pub fn to_point(&self) -> Bicomplex {
        Bicomplex::new(self.w_plus, self.w_minus)
    }
}

impl Add for Bicomplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, rhs: Self) {
        self.z1 += rhs.z1;
        self.z2 += rhs.z2;
    }
}

impl Sub for Bicomplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Neg for Bicomplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.z1, -self.z2)
    }
}

impl Mul for Bicomplex {
    type Output = Self;
    // (a + jb)(c + jd) = (ac − bd) + j(ad + bc)
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.z1 * rhs.z1 - self.z2 * rhs.z2,
            self.z1 * rhs.z2 + self.z2 * rhs.z1,
        )
    }
}

impl Mul<Complex64> for Bicomplex {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        Self::new(self.z1 * rhs, self.z2 * rhs)
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.z1 * rhs, self.z2 * rhs)
    }
}

impl Div<f64> for Bicomplex {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        Self::new(self.z1 / rhs, self.z2 / rhs)
    }
}

impl From<Complex64> for Bicomplex {
    fn from(z: Complex64) -> Self {
        Self::new(z, ZERO)
    }
}

impl From<f64> for Bicomplex {
    fn from(x: f64) -> Self {
        Self::new(x.into(), ZERO)
    }
}

impl From<Hyperbolic> for Bicomplex {
    fn from(h: Hyperbolic) -> Self {
        h.to_bicomplex()
    }
}

impl Sum for Bicomplex {
    fn sum<It: Iterator<Item = Self>>(iter: It) -> Self {
        iter.fold(Self::ZERO, |acc, z| acc + z)
    }
}

impl fmt::Display for Bicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + j({})", self.z1, self.z2)
    }
}

impl Serialize for Bicomplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Bicomplex", 2)?;
        s.serialize_field("z1", &[Sig17(self.z1.re), Sig17(self.z1.im)])?;
        s.serialize_field("z2", &[Sig17(self.z2.re), Sig17(self.z2.im)])?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Bicomplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            z1: [f64; 2],
            z2: [f64; 2],
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(Self::from_coords(raw.z1[0], raw.z1[1], raw.z2[0], raw.z2[1]))
    }
}

impl Serialize for Hyperbolic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Hyperbolic", 2)?;
        s.serialize_field("plus", &Sig17(self.a_plus))?;
        s.serialize_field("minus", &Sig17(self.a_minus))?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Hyperbolic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            plus: f64,
            minus: f64,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(Self::new(raw.plus, raw.minus))
    }
}

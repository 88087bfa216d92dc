//! Identity-check records and their JSON form.
//!
//! Every verification in the crate produces an [`IdentityReport`]: the two
//! sides of an identity, the residuals and the quadrature configuration
//! that produced them. Reports serialize to the `bcfwt-report/1` schema with
//! every floating-point number written with 17 significant digits.

use num_complex::Complex64;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::Bicomplex;

pub const SCHEMA: &str = "bcfwt-report/1";

/// Smallest denominator used for relative residuals.
pub const REL_FLOOR: f64 = 1e-300;

/// An `f64` that serializes with 17 significant digits (`null` when not finite).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig17(pub f64);

impl Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format_sig17(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

/// Formats `x` in scientific notation with 17 significant digits.
pub fn format_sig17(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn ser_f64<S: Serializer>(x: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    Sig17(*x).serialize(serializer)
}

fn ser_opt_f64<S: Serializer>(x: &Option<f64>, serializer: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => Sig17(*v).serialize(serializer),
        None => serializer.serialize_none(),
    }
}

fn ser_f64_vec<S: Serializer>(xs: &[f64], serializer: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Sig17> = xs.iter().copied().map(Sig17).collect();
    v.serialize(serializer)
}

/// One side of an identity: complex for the classical transforms, bicomplex
/// for everything on 𝔹ℂ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Complex(Complex64),
    Bicomplex(Bicomplex),
}

impl Value {
    pub fn abs(&self) -> f64 {
        match self {
            Value::Complex(c) => c.norm(),
            Value::Bicomplex(z) => z.max_abs(),
        }
    }

    fn scaled(&self, c: f64) -> Value {
        match self {
            Value::Complex(z) => Value::Complex(z * c),
            Value::Bicomplex(z) => Value::Bicomplex(*z * c),
        }
    }

    fn distance(&self, other: &Value) -> f64 {
        match (self, other) {
            (Value::Complex(a), Value::Complex(b)) => (a - b).norm(),
            (a, b) => (a.as_bicomplex() - b.as_bicomplex()).max_abs(),
        }
    }

    pub fn as_bicomplex(&self) -> Bicomplex {
        match self {
            Value::Complex(c) => Bicomplex::from(*c),
            Value::Bicomplex(z) => *z,
        }
    }
}

impl From<Complex64> for Value {
    fn from(c: Complex64) -> Self {
        Value::Complex(c)
    }
}

impl From<Bicomplex> for Value {
    fn from(z: Bicomplex) -> Self {
        Value::Bicomplex(z)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Complex(c) => [Sig17(c.re), Sig17(c.im)].serialize(serializer),
            Value::Bicomplex(z) => z.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Complex([f64; 2]),
            Bicomplex(Bicomplex),
        }
        Ok(match Raw::deserialize(deserializer)? {
            Raw::Complex([re, im]) => Value::Complex(Complex64::new(re, im)),
            Raw::Bicomplex(z) => Value::Bicomplex(z),
        })
    }
}

/// Quadrature orders per dimension. Unused dimensions are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Orders {
    pub order1d: usize,
    pub order2d: usize,
    pub order4d: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ReportConfig {
    pub orders: Orders,
    #[serde(serialize_with = "ser_f64")]
    pub sigma: f64,
    pub indices: Vec<usize>,
    /// Evaluation point, when the identity is pointwise.
    #[serde(default, serialize_with = "ser_f64_vec")]
    pub point: Vec<f64>,
    /// Convention constant `c` in `lhs = c · rhs`.
    #[serde(serialize_with = "ser_f64")]
    pub constant: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportConfig {
    pub fn new(orders: Orders, sigma: f64) -> Self {
        Self {
            orders,
            sigma,
            constant: 1.0,
            ..Default::default()
        }
    }

    pub fn with_indices(mut self, indices: &[usize]) -> Self {
        self.indices = indices.to_vec();
        self
    }

    pub fn with_point(mut self, point: &[f64]) -> Self {
        self.point = point.to_vec();
        self
    }

    pub fn with_constant(mut self, c: f64) -> Self {
        self.constant = c;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Outcome of checking `lhs = c · rhs`.
///
/// `rel_residual = abs_residual / max(|lhs|, |c·rhs|, scale, 1e-300)`. The
/// optional `scale` is an a-priori magnitude bound for the identity (for
/// instance the Cauchy–Schwarz product of input norms); it keeps identities
/// whose exact value is zero from reporting meaningless relative errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub schema: String,
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    #[serde(serialize_with = "ser_f64")]
    pub abs_residual: f64,
    #[serde(serialize_with = "ser_f64")]
    pub rel_residual: f64,
    #[serde(default, serialize_with = "ser_opt_f64")]
    pub scale: Option<f64>,
    pub config: ReportConfig,
}

impl IdentityReport {
    pub fn new(
        name: impl Into<String>,
        lhs: impl Into<Value>,
        rhs: impl Into<Value>,
        scale: Option<f64>,
        config: ReportConfig,
    ) -> Self {
        let lhs = lhs.into();
        let rhs = rhs.into();
        let target = rhs.scaled(config.constant);
        let abs_residual = lhs.distance(&target);
        let denom = lhs
            .abs()
            .max(target.abs())
            .max(scale.unwrap_or(0.0))
            .max(REL_FLOOR);
        let rel_residual = if abs_residual.is_nan() {
            f64::INFINITY
        } else {
            abs_residual / denom
        };
        Self {
            schema: SCHEMA.to_string(),
            name: name.into(),
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            scale,
            config,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.rel_residual <= tol
    }
}

/// Serializes reports as a JSON array.
pub fn to_json(reports: &[IdentityReport]) -> serde_json::Result<String> {
    serde_json::to_string_pretty(reports)
}

//! Rescaled real Hermite functions and polyanalytic complex Hermite functions.
//!
//! Real case: `h^σ_n(t) = (−1)ⁿ e^{σt²/2} dⁿ/dtⁿ e^{−σt²} = σ^{n/2} H_n(√σ t) e^{−σt²/2}`.
//!
//! Complex case: `h^α_{m,n}(z, z̄) = (−1)^{m+n} e^{α|z|²/2} ∂^{m+n}/∂z̄^m ∂z^n e^{−α|z|²}`,
//! evaluated as `G^α_{m,n}(z, z̄) e^{−α|z|²/2}` where the polynomial part obeys
//!
//! ```text
//! G_{0,0} = 1
//! G_{m+1,n} = α (z G_{m,n} − n G_{m,n−1})
//! G_{m,n+1} = α (z̄ G_{m,n} − m G_{m−1,n})
//! ```
//!
//! Both recurrences come from applying `−∂z̄` (resp. `−∂z`) to
//! `G_{m,n} e^{−α|z|²}` and using `∂z̄ G_{m,n} = α n G_{m,n−1}`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quadrature::{gauss_hermite, TensorRule};
use crate::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 12;

/// Default per-axis order for the cached complex norms.
pub const NORM_QUADRATURE_ORDER: usize = 48;

/// Largest `s²/2` for which `e^{−s²/2}` is a normal double.
const GAUSSIAN_EXPONENT_LIMIT: f64 = 708.0;

/// Positive scale `σ` (or `α` where the formulas rescale).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ScaleParam(f64);

impl ScaleParam {
    pub fn new(sigma: f64) -> Result<Self> {
        if sigma.is_finite() && sigma > 0.0 {
            Ok(Self(sigma))
        } else {
            Err(Error::NonPositiveScale(sigma))
        }
    }

    pub const ONE: ScaleParam = ScaleParam(1.0);

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `σ/2`, the scale of the complex Hermite functions produced by the transforms.
    pub fn half(self) -> Self {
        Self(self.0 * 0.5)
    }
}

impl TryFrom<f64> for ScaleParam {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ScaleParam> for f64 {
    fn from(s: ScaleParam) -> f64 {
        s.0
    }
}

/// Index pair `(m, n)` of a complex Hermite function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HermiteIndex {
    pub m: usize,
    pub n: usize,
}

impl HermiteIndex {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Self::with_max(m, n, DEFAULT_MAX_ORDER)
    }

    pub fn with_max(m: usize, n: usize, max: usize) -> Result<Self> {
        for index in [m, n] {
            if index > max {
                return Err(Error::IndexTooLarge { index, max });
            }
        }
        Ok(Self { m, n })
    }
}

/// `h^σ_n(t)`; returns 0 where the Gaussian factor underflows.
pub fn hermite_real(n: usize, sigma: ScaleParam, t: f64) -> f64 {
    hermite_real_flagged(n, sigma, t).0
}

/// `h^σ_n(t)` together with an underflow flag.
///
/// Evaluates the orthonormal recurrence
/// `ψ_{k+1} = √(2/(k+1)) s ψ_k − √(k/(k+1)) ψ_{k−1}` with `ψ_0 = e^{−s²/2}`,
/// `s = √σ t`, and rescales by `σ^{n/2} √(2ⁿ n!)`. This never forms the
/// polynomial and the Gaussian separately.
pub fn hermite_real_flagged(n: usize, sigma: ScaleParam, t: f64) -> (f64, bool) {
    let s = sigma.get().sqrt() * t;
    if 0.5 * s * s > GAUSSIAN_EXPONENT_LIMIT || !s.is_finite() {
        return (0.0, true);
    }
    let mut prev = 0.0;
    let mut cur = (-0.5 * s * s).exp();
    // factor accumulates √(2^k k!) σ^{k/2}
    let mut factor = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * s * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        factor *= (2.0 * (kf + 1.0) * sigma.get()).sqrt();
    }
    (factor * cur, false)
}

/// `‖h^σ_n‖² = √(π/σ) 2ⁿ σⁿ n!`.
pub fn hermite_real_norm_sq(n: usize, sigma: ScaleParam) -> f64 {
    let s = sigma.get();
    let mut v = (PI / s).sqrt();
    for k in 1..=n {
        v *= 2.0 * s * k as f64;
    }
    v
}

/// Polynomial parts `G^α_{a,b}(z, z̄)` for all `a ≤ max_m`, `b ≤ max_n`,
/// indexed `[a][b]`.
pub fn complex_hermite_poly_table(
    max_m: usize,
    max_n: usize,
    alpha: ScaleParam,
    z: Complex64,
) -> Vec<Vec<Complex64>> {
    let a = alpha.get();
    let zero = Complex64::new(0.0, 0.0);
    let mut g = vec![vec![zero; max_n + 1]; max_m + 1];
    g[0][0] = Complex64::new(1.0, 0.0);
    for n in 1..=max_n {
        g[0][n] = g[0][n - 1] * z.conj() * a;
    }
    for m in 0..max_m {
        for n in 0..=max_n {
            let lower = if n > 0 { g[m][n - 1] * n as f64 } else { zero };
            g[m + 1][n] = (z * g[m][n] - lower) * a;
        }
    }
    g
}

/// Polynomial part `G^α_{m,n}(z, z̄)` of the complex Hermite function.
pub fn complex_hermite_poly(idx: HermiteIndex, alpha: ScaleParam, z: Complex64) -> Complex64 {
    complex_hermite_poly_table(idx.m, idx.n, alpha, z)[idx.m][idx.n]
}

/// `h^α_{m,n}(z, z̄)`.
pub fn hermite_complex(idx: HermiteIndex, alpha: ScaleParam, z: Complex64) -> Complex64 {
    complex_hermite_poly(idx, alpha, z) * (-0.5 * alpha.get() * z.norm_sqr()).exp()
}

type NormKey = (usize, usize, u64, usize);

fn norm_cache() -> &'static RwLock<HashMap<NormKey, f64>> {
    static CACHE: OnceLock<RwLock<HashMap<NormKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `∫_ℂ |h^α_{m,n}|² dλ`, by 2-d Gauss–Hermite quadrature of the given order
/// per axis. Not cached.
pub fn hermite_complex_norm_sq_with_order(
    idx: HermiteIndex,
    alpha: ScaleParam,
    order: usize,
) -> Result<f64> {
    let rule = TensorRule::uniform(2, gauss_hermite(order)?, 1.0 / alpha.get().sqrt());
    let v = rule.integrate_2d(|x, y| {
        Complex64::from(hermite_complex(idx, alpha, Complex64::new(x, y)).norm_sqr())
    });
    if v.re.is_finite() {
        Ok(v.re)
    } else {
        Err(Error::NonFinite("hermite_complex_norm_sq"))
    }
}

/// `∫_ℂ |h^α_{m,n}|² dλ`, computed once per `(m, n, α)` and cached.
pub fn hermite_complex_norm_sq(idx: HermiteIndex, alpha: ScaleParam) -> Result<f64> {
    let key = (idx.m, idx.n, alpha.get().to_bits(), NORM_QUADRATURE_ORDER);
    if let Some(v) = norm_cache().read().expect("norm cache poisoned").get(&key) {
        return Ok(*v);
    }
    let v = hermite_complex_norm_sq_with_order(idx, alpha, NORM_QUADRATURE_ORDER)?;
    // A concurrent fill computes the same value; first write wins.
    Ok(*norm_cache()
        .write()
        .expect("norm cache poisoned")
        .entry(key)
        .or_insert(v))
}

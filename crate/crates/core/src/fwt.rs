//! Classical and bicomplex Fourier–Wigner transforms.
//!
//! The classical transform at scale `σ` is
//!
//! ```text
//! V^σ(f, g)(p, q) = (σ/2π)^{1/2} ∫ e^{iσ(x − p/2)q} f(x) ḡ(x − p) dx
//! ```
//!
//! and its two-dimensional analogue carries the prefactor `(1/2π)^{1/2}`.
//! The one-dimensional bicomplex transform is evaluated through its
//! idempotent splitting
//!
//! ```text
//! V(φ, ψ)(Z) = √(2σ/π) e^{−σ|w⁻|²/4} V^σ(φ⁺, ψ⁺)(w⁺) e⁺
//!            + √(2σ/π) e^{−σ|w⁺|²/4} V^σ(φ⁻, ψ⁻)(w⁻) e⁻,
//! ```
//!
//! with `(w⁺, w⁻)` the companion of `Z`. The defining bicomplex integral is
//! kept as a diagnostic path ([`fwt_bc_1d_direct`]). The two-dimensional
//! bicomplex transform applies the classical 2-d transform to each
//! idempotent component at the phase point `X = (x1, x2)`, `Y = (y1, y2)`.
//!
//! All imaginary units of the companion planes are realized as `i`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hermite::{hermite_complex, hermite_real, hermite_real_norm_sq};
use crate::quadrature::{
    inner_product_bc_1d, inner_product_bc_2d, pairwise_sum, BCFunction1D, BCFunction2D, PhaseSpaceGrid,
    SampledField, Signal1D, Signal2D, TensorRule, MAX_ORDER,
};
use crate::report::{IdentityReport, Orders, ReportConfig};
use crate::{Bicomplex, Error, HermiteIndex, Hyperbolic, Result, ScaleParam};

/// Relative change under node doubling above which a result is flagged.
pub const ENVELOPE_DRIFT_TOL: f64 = 1e-6;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point `(p, q)` of the classical phase plane, `z = p + iq`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhasePoint1D {
    pub p: f64,
    pub q: f64,
}

impl PhasePoint1D {
    pub fn new(p: f64, q: f64) -> Self {
        Self { p, q }
    }

    pub fn from_z(z: Complex64) -> Self {
        Self { p: z.re, q: z.im }
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.p, self.q)
    }
}

/// A point `(X, Y)` of the 2-d phase space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhasePoint2D {
    pub x: [f64; 2],
    pub y: [f64; 2],
}

impl PhasePoint2D {
    pub fn new(x: [f64; 2], y: [f64; 2]) -> Self {
        Self { x, y }
    }

    /// `X = (x1, x2)`, `Y = (y1, y2)` from `z_ℓ = x_ℓ + i y_ℓ`.
    pub fn from_bicomplex(z: &Bicomplex) -> Self {
        Self {
            x: [z.z1.re, z.z2.re],
            y: [z.z1.im, z.z2.im],
        }
    }

    pub fn to_bicomplex(&self) -> Bicomplex {
        Bicomplex::from_coords(self.x[0], self.y[0], self.x[1], self.y[1])
    }
}

/// A value together with its relative change when the node count doubles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checked<T> {
    pub value: T,
    pub drift: f64,
}

impl<T> Checked<T> {
    /// True when the quadrature envelope does not resolve the integrand.
    pub fn envelope_warning(&self) -> bool {
        self.drift.is_nan() || self.drift > ENVELOPE_DRIFT_TOL
    }
}

fn finite(v: Complex64, what: &'static str) -> Result<Complex64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what))
    }
}

fn finite_bc(v: Bicomplex, what: &'static str) -> Result<Bicomplex> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(what))
    }
}

fn doubled(rule: &TensorRule) -> Result<TensorRule> {
    rule.with_order((2 * rule.order()).min(MAX_ORDER))
}

/// `h^σ_n` as a signal.
pub fn hermite_signal(n: usize, sigma: ScaleParam) -> Signal1D {
    Arc::new(move |t| hermite_real(n, sigma, t).into())
}

/// `h^σ_{m,n}` on ℝ² ≅ ℂ as a signal.
pub fn complex_hermite_signal(idx: HermiteIndex, sigma: ScaleParam) -> Signal2D {
    Arc::new(move |u, v| hermite_complex(idx, sigma, Complex64::new(u, v)))
}

/// `f^σ_{m,n} = h^σ_m e⁺ + h^σ_n e⁻`.
pub fn elementary(m: usize, n: usize, sigma: ScaleParam) -> BCFunction1D {
    BCFunction1D {
        f_plus: hermite_signal(m, sigma),
        f_minus: hermite_signal(n, sigma),
    }
}

/// `h^σ_{m,n}` placed in both idempotent components.
pub fn complex_hermite_bc(idx: HermiteIndex, sigma: ScaleParam) -> BCFunction2D {
    let f = complex_hermite_signal(idx, sigma);
    BCFunction2D {
        f_plus: Arc::clone(&f),
        f_minus: f,
    }
}

/// `V^σ(f, g)(p, q)` by quadrature centred at `p/2`.
pub fn fwt1d(
    f: impl Fn(f64) -> Complex64,
    g: impl Fn(f64) -> Complex64,
    sigma: ScaleParam,
    pt: PhasePoint1D,
    rule: &TensorRule,
) -> Result<Complex64> {
    rule.require_dim(1)?;
    let s = sigma.get();
    let PhasePoint1D { p, q } = pt;
    let v = rule.integrate_1d_centered(0.5 * p, |x| {
        Complex64::from_polar(1.0, s * (x - 0.5 * p) * q) * f(x) * g(x - p).conj()
    });
    finite(v * (s / (2.0 * PI)).sqrt(), "fwt1d")
}

/// `√(σ/2π) ‖f‖ ‖g‖`, the Cauchy–Schwarz bound for `|V^σ(f, g)|`.
pub fn fwt1d_bound(
    f: impl Fn(f64) -> Complex64,
    g: impl Fn(f64) -> Complex64,
    sigma: ScaleParam,
    rule: &TensorRule,
) -> f64 {
    let nf = rule.integrate_1d(|t| f(t).norm_sqr().into()).re;
    let ng = rule.integrate_1d(|t| g(t).norm_sqr().into()).re;
    (sigma.get() / (2.0 * PI)).sqrt() * (nf * ng).sqrt()
}

/// [`fwt1d`] with the drift against a rule of twice the order.
pub fn fwt1d_checked(
    f: impl Fn(f64) -> Complex64,
    g: impl Fn(f64) -> Complex64,
    sigma: ScaleParam,
    pt: PhasePoint1D,
    rule: &TensorRule,
) -> Result<Checked<Complex64>> {
    let a = fwt1d(&f, &g, sigma, pt, rule)?;
    let b = fwt1d(&f, &g, sigma, pt, &doubled(rule)?)?;
    let denom = a.norm().max(b.norm()).max(fwt1d_bound(&f, &g, sigma, rule)).max(1e-300);
    Ok(Checked {
        value: a,
        drift: (a - b).norm() / denom,
    })
}

/// `V^σ(h^σ_m, h^σ_n)(p, q) = (−1)ⁿ 2^{m+n}/√2 · h^{σ/2}_{m,n}(z)`, `z = p + iq`.
pub fn fwt1d_hermite_closed(idx: HermiteIndex, sigma: ScaleParam, pt: PhasePoint1D) -> Complex64 {
    let sign = if idx.n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let c = sign * 2f64.powi((idx.m + idx.n) as i32) / 2f64.sqrt();
    hermite_complex(idx, sigma.half(), pt.z()) * c
}

/// `(1/2π)^{1/2} ∫_ℝ² e^{iσ⟨U − X/2, Y⟩} f(U) ḡ(U − X) dU`.
pub fn fwt2d(
    f: impl Fn(f64, f64) -> Complex64,
    g: impl Fn(f64, f64) -> Complex64,
    sigma: ScaleParam,
    pt: PhasePoint2D,
    rule: &TensorRule,
) -> Result<Complex64> {
    rule.require_dim(2)?;
    let s = sigma.get();
    let PhasePoint2D { x, y } = pt;
    let v = rule.integrate_2d_centered([0.5 * x[0], 0.5 * x[1]], |u1, u2| {
        let phase = s * ((u1 - 0.5 * x[0]) * y[0] + (u2 - 0.5 * x[1]) * y[1]);
        Complex64::from_polar(1.0, phase) * f(u1, u2) * g(u1 - x[0], u2 - x[1]).conj()
    });
    finite(v / (2.0 * PI).sqrt(), "fwt2d")
}

/// [`fwt2d`] with the drift against a rule of twice the order.
pub fn fwt2d_checked(
    f: impl Fn(f64, f64) -> Complex64,
    g: impl Fn(f64, f64) -> Complex64,
    sigma: ScaleParam,
    pt: PhasePoint2D,
    rule: &TensorRule,
) -> Result<Checked<Complex64>> {
    let a = fwt2d(&f, &g, sigma, pt, rule)?;
    let b = fwt2d(&f, &g, sigma, pt, &doubled(rule)?)?;
    let nf = rule.integrate_2d(|u, v| f(u, v).norm_sqr().into()).re;
    let ng = rule.integrate_2d(|u, v| g(u, v).norm_sqr().into()).re;
    let bound = (nf * ng).sqrt() / (2.0 * PI).sqrt();
    let denom = a.norm().max(b.norm()).max(bound).max(1e-300);
    Ok(Checked {
        value: a,
        drift: (a - b).norm() / denom,
    })
}

/// `fwt2d(f1⊗f2, g1⊗g2) / (V^σ(f1,g1) · V^σ(f2,g2))`.
pub fn tensor_prefactor_ratio(sigma: ScaleParam) -> f64 {
    (2.0 * PI).sqrt() / sigma.get()
}

/// The one-dimensional bicomplex transform through its idempotent splitting.
pub fn fwt_bc_1d(
    phi: &BCFunction1D,
    psi: &BCFunction1D,
    sigma: ScaleParam,
    z: Bicomplex,
    rule: &TensorRule,
) -> Result<Bicomplex> {
    let w = z.companion();
    let s = sigma.get();
    let vp = fwt1d(&*phi.f_plus, &*psi.f_plus, sigma, PhasePoint1D::from_z(w.w_plus), rule)?;
    let vm = fwt1d(&*phi.f_minus, &*psi.f_minus, sigma, PhasePoint1D::from_z(w.w_minus), rule)?;
    let c = (2.0 * s / PI).sqrt();
    Ok(Bicomplex::from_components(
        vp * (c * (-0.25 * s * w.w_minus.norm_sqr()).exp()),
        vm * (c * (-0.25 * s * w.w_plus.norm_sqr()).exp()),
    ))
}

/// Direct and split evaluations of the 1-d bicomplex transform at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectComparison {
    pub direct: Bicomplex,
    pub normative: Bicomplex,
}

impl DirectComparison {
    /// Component-wise `direct / normative`, `None` where the normative
    /// component is below `floor` in modulus.
    pub fn ratio(&self, floor: f64) -> [Option<Complex64>; 2] {
        let d = self.direct.to_idempotent();
        let n = self.normative.to_idempotent();
        let r = |a: Complex64, b: Complex64| (b.norm() > floor).then(|| a / b);
        [r(d.beta_plus, n.beta_plus), r(d.beta_minus, n.beta_minus)]
    }
}

fn integrate_bc_1d(rule: &TensorRule, center: f64, f: impl Fn(f64) -> Bicomplex) -> Bicomplex {
    let pts = rule.axis_points(0, center);
    pairwise_sum(pts.len(), |k| f(pts[k].0) * pts[k].1)
}

/// The defining bicomplex integral of the 1-d transform,
///
/// ```text
/// (σ/π) e^{−σ((X_e†)² + (Y_e†)²)/4} ∫ φ(t) M_{X_e,Y_e}((T_{X_e} ψ)(t))* dt,
/// ```
///
/// evaluated in bicomplex arithmetic, alongside the split path.
pub fn fwt_bc_1d_direct(
    phi: &BCFunction1D,
    psi: &BCFunction1D,
    sigma: ScaleParam,
    z: Bicomplex,
    rule: &TensorRule,
) -> Result<DirectComparison> {
    rule.require_dim(1)?;
    let s = sigma.get();
    let [x1, y1, x2, y2] = z.coords();
    // X_e† = x2 e⁺ + x1 e⁻, likewise Y_e†
    let gauss = Hyperbolic::new(x2 * x2 + y2 * y2, x1 * x1 + y1 * y1).to_bicomplex() * (-0.25 * s);
    let pre = gauss.exp() * (s / PI);
    let unit = Bicomplex::from_components(I, I);
    let integrand = |t: f64| {
        let shifted = Bicomplex::from_components((psi.f_plus)(t - x1), (psi.f_minus)(t - x2));
        let arg = Hyperbolic::new((t - 0.5 * x1) * y1, (t - 0.5 * x2) * y2).to_bicomplex();
        let modulation = (unit * arg * s).exp();
        phi.eval(t) * (modulation * shifted.star())
    };
    // the two components have envelopes centred at x1/2 and x2/2
    let plus = integrate_bc_1d(rule, 0.5 * x1, integrand).plus();
    let minus = integrate_bc_1d(rule, 0.5 * x2, integrand).minus();
    let direct = finite_bc(pre * Bicomplex::from_components(plus, minus), "fwt_bc_1d_direct")?;
    Ok(DirectComparison {
        direct,
        normative: fwt_bc_1d(phi, psi, sigma, z, rule)?,
    })
}

/// `V(f^σ_{m,n}, f^σ_{r,s})(Z)` in closed form.
pub fn fwt_bc_1d_hermite(m: usize, n: usize, r: usize, s: usize, sigma: ScaleParam, z: Bicomplex) -> Bicomplex {
    let w = z.companion();
    let sg = sigma.get();
    let half = sigma.half();
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let c = (sg / PI).sqrt();
    let plus = hermite_complex(HermiteIndex { m, n: r }, half, w.w_plus)
        * (c * sign(r) * 2f64.powi((m + r) as i32) * (-0.25 * sg * w.w_minus.norm_sqr()).exp());
    let minus = hermite_complex(HermiteIndex { m: n, n: s }, half, w.w_minus)
        * (c * sign(s) * 2f64.powi((n + s) as i32) * (-0.25 * sg * w.w_plus.norm_sqr()).exp());
    Bicomplex::from_components(plus, minus)
}

/// The two-dimensional bicomplex transform, component by component.
pub fn fwt_bc_2d(
    phi: &BCFunction2D,
    psi: &BCFunction2D,
    sigma: ScaleParam,
    z: Bicomplex,
    rule: &TensorRule,
) -> Result<Bicomplex> {
    let pt = PhasePoint2D::from_bicomplex(&z);
    Ok(Bicomplex::from_components(
        fwt2d(&*phi.f_plus, &*psi.f_plus, sigma, pt, rule)?,
        fwt2d(&*phi.f_minus, &*psi.f_minus, sigma, pt, rule)?,
    ))
}

/// `(1/2π)^{1/2} ∫ e^{σ(νe⁺ + μe⁻)⟨U − X/2, Y⟩} Φ(U) Ψ*(U − X) dU` in bicomplex
/// arithmetic.
pub fn fwt_bc_2d_direct(
    phi: &BCFunction2D,
    psi: &BCFunction2D,
    sigma: ScaleParam,
    z: Bicomplex,
    rule: &TensorRule,
) -> Result<Bicomplex> {
    rule.require_dim(2)?;
    let s = sigma.get();
    let PhasePoint2D { x, y } = PhasePoint2D::from_bicomplex(&z);
    let unit = Bicomplex::from_components(I, I);
    let n = rule.order();
    let u = rule.axis_points(0, 0.5 * x[0]);
    let v = rule.axis_points(1, 0.5 * x[1]);
    let sum = pairwise_sum(n * n, |k| {
        let (u1, w1) = u[k / n];
        let (u2, w2) = v[k % n];
        let arg = s * ((u1 - 0.5 * x[0]) * y[0] + (u2 - 0.5 * x[1]) * y[1]);
        (unit * arg).exp() * phi.eval(u1, u2) * psi.eval(u1 - x[0], u2 - x[1]).star() * (w1 * w2)
    });
    finite_bc(sum / (2.0 * PI).sqrt(), "fwt_bc_2d_direct")
}

/// Samples the 1-d bicomplex transform on a 4-d grid.
///
/// The classical transforms are evaluated once per companion-plane node and
/// combined with the cross Gaussians.
pub fn sample_fwt_bc_1d(
    phi: &BCFunction1D,
    psi: &BCFunction1D,
    sigma: ScaleParam,
    grid: &PhaseSpaceGrid,
    rule: &TensorRule,
) -> Result<SampledField> {
    use rayon::prelude::*;
    rule.require_dim(1)?;
    let n = grid.n();
    let x = grid.axis();
    let s = sigma.get();
    let plane = |f: &Signal1D, g: &Signal1D| -> Result<Vec<Complex64>> {
        (0..n * n)
            .into_par_iter()
            .map(|k| fwt1d(&**f, &**g, sigma, PhasePoint1D::new(x[k / n], x[k % n]), rule))
            .collect()
    };
    let vp = plane(&phi.f_plus, &psi.f_plus)?;
    let vm = plane(&phi.f_minus, &psi.f_minus)?;
    let c = (2.0 * s / PI).sqrt();
    let gauss: Vec<f64> = (0..n * n)
        .map(|k| c * (-0.25 * s * (x[k / n].powi(2) + x[k % n].powi(2))).exp())
        .collect();
    Ok(grid.sample_slices(|a, cc, out| {
        for b in 0..n {
            for d in 0..n {
                out[b * n + d] = Bicomplex::from_components(
                    vp[a * n + b] * gauss[cc * n + d],
                    vm[cc * n + d] * gauss[a * n + b],
                );
            }
        }
    }))
}

/// Samples the 2-d bicomplex transform on a 4-d grid.
///
/// For fixed `X` the transform is a 2-d Fourier sum over the quadrature
/// nodes, evaluated at all `Y` nodes with separable phase tables.
pub fn sample_fwt_bc_2d(
    phi: &BCFunction2D,
    psi: &BCFunction2D,
    sigma: ScaleParam,
    grid: &PhaseSpaceGrid,
    rule: &TensorRule,
) -> Result<SampledField> {
    rule.require_dim(2)?;
    let n = grid.n();
    let x = grid.axis();
    let s = sigma.get();
    let order = rule.order();
    let nodes = rule.base().nodes();
    let weights = rule.base().scaled_weights();
    let [s0, s1] = [rule.scale()[0], rule.scale()[1]];
    // E_k[i][b] = e^{iσ s_k u_i y_b}
    let table = |sk: f64| -> Vec<Complex64> {
        (0..order * n)
            .map(|ib| Complex64::from_polar(1.0, s * sk * nodes[ib / n] * x[ib % n]))
            .collect()
    };
    let (e0, e1) = (table(s0), table(s1));
    let shared = Arc::ptr_eq(&phi.f_plus, &phi.f_minus) && Arc::ptr_eq(&psi.f_plus, &psi.f_minus);
    let norm = 1.0 / (2.0 * PI).sqrt();

    let slice = |f: &Signal2D, g: &Signal2D, x1: f64, x2: f64, out: &mut [Complex64]| {
        let mut amp = vec![Complex64::new(0.0, 0.0); order * order];
        for i in 0..order {
            let u1 = 0.5 * x1 + s0 * nodes[i];
            for j in 0..order {
                let u2 = 0.5 * x2 + s1 * nodes[j];
                let w = norm * s0 * weights[i] * s1 * weights[j];
                amp[i * order + j] = f(u1, u2) * g(u1 - x1, u2 - x2).conj() * w;
            }
        }
        let mut partial = vec![Complex64::new(0.0, 0.0); order * n];
        for i in 0..order {
            for d in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..order {
                    acc += amp[i * order + j] * e1[j * n + d];
                }
                partial[i * n + d] = acc;
            }
        }
        for b in 0..n {
            for d in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..order {
                    acc += e0[i * n + b] * partial[i * n + d];
                }
                out[b * n + d] = acc;
            }
        }
    };

    let field = grid.sample_slices(|a, c, out| {
        let mut plus = vec![Complex64::new(0.0, 0.0); n * n];
        slice(&phi.f_plus, &psi.f_plus, x[a], x[c], &mut plus);
        let minus = if shared {
            plus.clone()
        } else {
            let mut m = vec![Complex64::new(0.0, 0.0); n * n];
            slice(&phi.f_minus, &psi.f_minus, x[a], x[c], &mut m);
            m
        };
        for k in 0..n * n {
            out[k] = Bicomplex::from_components(plus[k], minus[k]);
        }
    });
    if field.values.iter().all(Bicomplex::is_finite) {
        Ok(field)
    } else {
        Err(Error::NonFinite("sample_fwt_bc_2d"))
    }
}

/// `⟨φ, φ⟩` on ℝ as a hyperbolic number.
pub fn norm_sq_bc_1d(phi: &BCFunction1D, rule: &TensorRule) -> Result<Hyperbolic> {
    Ok(Hyperbolic::from_bicomplex_re(&inner_product_bc_1d(phi, phi, rule)?))
}

/// `⟨Φ, Φ⟩` on ℝ² as a hyperbolic number.
pub fn norm_sq_bc_2d(phi: &BCFunction2D, rule: &TensorRule) -> Result<Hyperbolic> {
    Ok(Hyperbolic::from_bicomplex_re(&inner_product_bc_2d(phi, phi, rule)?))
}

fn cauchy_schwarz(norms: [Hyperbolic; 4]) -> f64 {
    let plus: f64 = norms.iter().map(|h| h.a_plus.max(0.0)).product();
    let minus: f64 = norms.iter().map(|h| h.a_minus.max(0.0)).product();
    plus.sqrt().max(minus.sqrt())
}

/// Moyal identity for the 1-d bicomplex transform:
/// `⟨V(φ1,ψ1), V(φ2,ψ2)⟩ = ⟨φ1,φ2⟩ ⟨ψ1,ψ2⟩*`.
///
/// The left side is a 4-d quadrature over 𝔹ℂ; the right side uses 1-d inner
/// products. For real-valued windows `⟨ψ1,ψ2⟩* = ⟨ψ1,ψ2⟩`.
pub fn moyal_check_1d(
    phi1: &BCFunction1D,
    psi1: &BCFunction1D,
    phi2: &BCFunction1D,
    psi2: &BCFunction1D,
    sigma: ScaleParam,
    grid: &PhaseSpaceGrid,
    rule1d: &TensorRule,
) -> Result<IdentityReport> {
    let v1 = sample_fwt_bc_1d(phi1, psi1, sigma, grid, rule1d)?;
    let v2 = sample_fwt_bc_1d(phi2, psi2, sigma, grid, rule1d)?;
    let lhs = grid.inner(&v1, &v2)?;
    let rhs = inner_product_bc_1d(phi1, phi2, rule1d)? * inner_product_bc_1d(psi1, psi2, rule1d)?.star();
    let scale = cauchy_schwarz([
        norm_sq_bc_1d(phi1, rule1d)?,
        norm_sq_bc_1d(psi1, rule1d)?,
        norm_sq_bc_1d(phi2, rule1d)?,
        norm_sq_bc_1d(psi2, rule1d)?,
    ]);
    let orders = Orders {
        order1d: rule1d.order(),
        order4d: grid.n(),
        ..Default::default()
    };
    Ok(IdentityReport::new(
        "moyal1d",
        lhs,
        rhs,
        Some(scale),
        ReportConfig::new(orders, sigma.get()),
    ))
}

/// `∫_𝔹ℂ |V(φ,ψ)|² / (‖φ‖² ‖ψ‖²)` for the 2-d bicomplex transform:
/// `(1/4)(2π/σ²)`.
pub fn moyal_constant_2d(sigma: ScaleParam) -> f64 {
    PI / (2.0 * sigma.get().powi(2))
}

/// Moyal identity for the 2-d bicomplex transform:
/// `⟨V(Φ1,Ψ1), V(Φ2,Ψ2)⟩ = κ ⟨Φ1,Φ2⟩ ⟨Ψ1,Ψ2⟩*` with inner products over ℝ²
/// and `κ = π/(2σ²)` recorded as the report constant.
pub fn moyal_check_2d(
    phi1: &BCFunction2D,
    psi1: &BCFunction2D,
    phi2: &BCFunction2D,
    psi2: &BCFunction2D,
    sigma: ScaleParam,
    grid: &PhaseSpaceGrid,
    rule2d: &TensorRule,
) -> Result<IdentityReport> {
    let v1 = sample_fwt_bc_2d(phi1, psi1, sigma, grid, rule2d)?;
    let v2 = sample_fwt_bc_2d(phi2, psi2, sigma, grid, rule2d)?;
    let lhs = grid.inner(&v1, &v2)?;
    let rhs = inner_product_bc_2d(phi1, phi2, rule2d)? * inner_product_bc_2d(psi1, psi2, rule2d)?.star();
    let kappa = moyal_constant_2d(sigma);
    let scale = kappa
        * cauchy_schwarz([
            norm_sq_bc_2d(phi1, rule2d)?,
            norm_sq_bc_2d(psi1, rule2d)?,
            norm_sq_bc_2d(phi2, rule2d)?,
            norm_sq_bc_2d(psi2, rule2d)?,
        ]);
    let orders = Orders {
        order2d: rule2d.order(),
        order4d: grid.n(),
        ..Default::default()
    };
    Ok(IdentityReport::new(
        "moyal2d",
        lhs,
        rhs,
        Some(scale),
        ReportConfig::new(orders, sigma.get()).with_constant(kappa),
    ))
}

/// Outcome of sweeping the direct/split ratio of the 1-d bicomplex transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioSweep {
    /// Ratio at the first admissible sample.
    pub ratio: [f64; 2],
    /// Largest deviation of any sampled ratio from `ratio`.
    pub drift: f64,
    pub samples: usize,
    /// Samples skipped because the split value was negligible.
    pub skipped: usize,
}

/// Compares [`fwt_bc_1d_direct`] with [`fwt_bc_1d`] over all
/// `f^σ_{m,n}, f^σ_{r,s}` with indices `≤ max_index` at every `Z` whose four
/// real coordinates are drawn from `axis`.
pub fn prefactor_ratio_sweep(
    sigma: ScaleParam,
    max_index: usize,
    axis: &[f64],
    rule: &TensorRule,
) -> Result<RatioSweep> {
    use rayon::prelude::*;
    let k = max_index + 1;
    let na = axis.len();
    let points: Vec<Bicomplex> = (0..na.pow(4))
        .map(|i| Bicomplex::from_coords(axis[i / na.pow(3)], axis[(i / na.pow(2)) % na], axis[(i / na) % na], axis[i % na]))
        .collect();
    let cases: Vec<[usize; 4]> = (0..k.pow(4))
        .map(|i| [i / k.pow(3), (i / k.pow(2)) % k, (i / k) % k, i % k])
        .collect();
    let per_case: Vec<Vec<[Option<Complex64>; 2]>> = cases
        .par_iter()
        .map(|&[m, n, r, s]| {
            let phi = elementary(m, n, sigma);
            let psi = elementary(r, s, sigma);
            let bound = (2.0 * sigma.get() / PI).sqrt()
                * fwt1d_bound(&*phi.f_plus, &*psi.f_plus, sigma, rule)
                    .max(fwt1d_bound(&*phi.f_minus, &*psi.f_minus, sigma, rule));
            points
                .iter()
                .map(|&z| Ok(fwt_bc_1d_direct(&phi, &psi, sigma, z, rule)?.ratio(1e-6 * bound)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut reference: Option<Complex64> = None;
    let mut drift = 0.0f64;
    let mut samples = 0;
    let mut skipped = 0;
    for r in per_case.iter().flatten().flatten() {
        match r {
            Some(v) => {
                let r0 = *reference.get_or_insert(*v);
                drift = drift.max((v - r0).norm());
                samples += 1;
            }
            None => skipped += 1,
        }
    }
    let r0 = reference.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    Ok(RatioSweep {
        ratio: [r0.re, r0.im],
        drift,
        samples,
        skipped,
    })
}

/// `√(π/σ) 2ⁿ σⁿ n!`, re-exported for the transform normalizations.
pub fn window_norm_sq(n: usize, sigma: ScaleParam) -> f64 {
    hermite_real_norm_sq(n, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{DEFAULT_ORDER_1D, DEFAULT_ORDER_2D};

    fn rule1(sigma: ScaleParam) -> TensorRule {
        TensorRule::for_signals(1, DEFAULT_ORDER_1D, sigma).unwrap()
    }

    fn rule2(sigma: ScaleParam) -> TensorRule {
        TensorRule::for_signals(2, DEFAULT_ORDER_2D, sigma).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
    }

    #[test]
    fn gaussian_fwt1d() {
        let s = ScaleParam::ONE;
        let h0 = hermite_signal(0, s);
        let v = fwt1d(&*h0, &*h0, s, PhasePoint1D::new(0.0, 0.0), &rule1(s)).unwrap();
        assert!(close(v, Complex64::from(0.5f64.sqrt()), 1e-14));
        let h1 = hermite_signal(1, s);
        let v = fwt1d(&*h0, &*h1, s, PhasePoint1D::new(0.0, 0.0), &rule1(s)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn closed_form_examples() {
        let s = ScaleParam::ONE;
        let pt = PhasePoint1D::new(1.0, 0.5);
        let h0 = hermite_signal(0, s);
        let h1 = hermite_signal(1, s);
        let q = fwt1d(&*h1, &*h0, s, pt, &rule1(s)).unwrap();
        let c = fwt1d_hermite_closed(HermiteIndex { m: 1, n: 0 }, s, pt);
        assert!(close(q, c, 1e-12), "{q} vs {c}");
        let origin = PhasePoint1D::default();
        assert!(close(
            fwt1d_hermite_closed(HermiteIndex { m: 0, n: 0 }, s, origin),
            Complex64::from(0.5f64.sqrt()),
            1e-15
        ));
        assert_eq!(fwt1d_hermite_closed(HermiteIndex { m: 1, n: 0 }, s, origin).norm(), 0.0);

        let s2 = ScaleParam::new(2.0).unwrap();
        let h1 = hermite_signal(1, s2);
        let pt = PhasePoint1D::new(1.0, 1.0);
        let q = fwt1d(&*h1, &*h1, s2, pt, &rule1(s2)).unwrap();
        let c = fwt1d_hermite_closed(HermiteIndex { m: 1, n: 1 }, s2, pt);
        assert!(close(q, c, 1e-12), "{q} vs {c}");
    }

    #[test]
    fn envelope_check() {
        let s = ScaleParam::ONE;
        let h2 = hermite_signal(2, s);
        let ok = fwt1d_checked(&*h2, &*h2, s, PhasePoint1D::new(0.3, -0.7), &rule1(s)).unwrap();
        assert!(!ok.envelope_warning());
        // a wide signal is not resolved by a 4-node rule matched to σ = 1
        let wide = |t: f64| Complex64::from((-0.01 * t * t).exp());
        let tiny = TensorRule::for_signals(1, 4, s).unwrap();
        let bad = fwt1d_checked(wide, wide, s, PhasePoint1D::new(0.0, 1.0), &tiny).unwrap();
        assert!(bad.envelope_warning());
    }

    #[test]
    fn fwt2d_examples() {
        let s = ScaleParam::ONE;
        let g = complex_hermite_signal(HermiteIndex { m: 0, n: 0 }, s);
        let v = fwt2d(&*g, &*g, s, PhasePoint2D::default(), &rule2(s)).unwrap();
        assert!(close(v, Complex64::from(PI / (2.0 * PI).sqrt()), 1e-14));
        let odd = |u: f64, v: f64| Complex64::from(hermite_real(1, s, u) * hermite_real(0, s, v));
        let v = fwt2d(odd, &*g, s, PhasePoint2D::default(), &rule2(s)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn bc_1d_examples() {
        let s = ScaleParam::ONE;
        let f = elementary(0, 0, s);
        let v = fwt_bc_1d(&f, &f, s, Bicomplex::ZERO, &rule1(s)).unwrap();
        assert!((v - Bicomplex::from(1.0 / PI.sqrt())).max_abs() < 1e-14);
        let z = Bicomplex::new(Complex64::new(0.5, 0.2), Complex64::new(0.1, -0.3));
        let q = fwt_bc_1d(&elementary(1, 0, s), &elementary(0, 1, s), s, z, &rule1(s)).unwrap();
        let c = fwt_bc_1d_hermite(1, 0, 0, 1, s, z);
        assert!((q - c).max_abs() < 1e-12 * c.max_abs().max(1.0));
        assert!((fwt_bc_1d_hermite(0, 0, 0, 0, s, Bicomplex::ZERO) - Bicomplex::from(1.0 / PI.sqrt())).max_abs() < 1e-15);
    }

    #[test]
    fn direct_path_matches_split() {
        let s = ScaleParam::new(1.5).unwrap();
        let z = Bicomplex::from_coords(0.4, -0.9, 1.1, 0.3);
        let cmp = fwt_bc_1d_direct(&elementary(2, 1, s), &elementary(0, 2, s), s, z, &rule1(s)).unwrap();
        for r in cmp.ratio(1e-12) {
            let r = r.unwrap();
            assert!((r - 1.0).norm() < 1e-12, "{r}");
        }
    }

    #[test]
    fn bc_2d_direct_matches_split() {
        let s = ScaleParam::ONE;
        let phi = BCFunction2D {
            f_plus: complex_hermite_signal(HermiteIndex { m: 1, n: 0 }, s),
            f_minus: complex_hermite_signal(HermiteIndex { m: 0, n: 2 }, s),
        };
        let psi = BCFunction2D {
            f_plus: complex_hermite_signal(HermiteIndex { m: 1, n: 1 }, s),
            f_minus: complex_hermite_signal(HermiteIndex { m: 0, n: 0 }, s),
        };
        let z = Bicomplex::from_coords(0.3, -0.4, 0.8, 0.5);
        let a = fwt_bc_2d(&phi, &psi, s, z, &rule2(s)).unwrap();
        let b = fwt_bc_2d_direct(&phi, &psi, s, z, &rule2(s)).unwrap();
        assert!((a - b).max_abs() <= 1e-12 * a.max_abs().max(1e-3));
    }

    #[test]
    fn sampled_fields_match_pointwise() {
        let s = ScaleParam::ONE;
        let grid = PhaseSpaceGrid::new(6, s, false).unwrap();
        let r1 = rule1(s);
        let phi = elementary(1, 2, s);
        let psi = elementary(0, 1, s);
        let field = sample_fwt_bc_1d(&phi, &psi, s, &grid, &r1).unwrap();
        for k in [0, 17, 301, 1295] {
            let direct = fwt_bc_1d(&phi, &psi, s, grid.point(k), &r1).unwrap();
            assert!((field.values[k] - direct).max_abs() < 1e-14);
        }
        let r2 = TensorRule::for_signals(2, 16, s).unwrap();
        let a = complex_hermite_bc(HermiteIndex { m: 1, n: 0 }, s);
        let b = BCFunction2D {
            f_plus: complex_hermite_signal(HermiteIndex { m: 0, n: 1 }, s),
            f_minus: complex_hermite_signal(HermiteIndex { m: 1, n: 1 }, s),
        };
        let field = sample_fwt_bc_2d(&a, &b, s, &grid, &r2).unwrap();
        for k in [0, 17, 301, 1295] {
            let direct = fwt_bc_2d(&a, &b, s, grid.point(k), &r2).unwrap();
            assert!((field.values[k] - direct).max_abs() < 1e-13);
        }
    }

    #[test]
    fn gaussian_moyal() {
        let s = ScaleParam::ONE;
        let grid = PhaseSpaceGrid::new(16, s, false).unwrap();
        let f = elementary(0, 0, s);
        let r = moyal_check_1d(&f, &f, &f, &f, s, &grid, &rule1(s)).unwrap();
        assert!((r.rhs.as_bicomplex() - Bicomplex::from(PI)).max_abs() < 1e-12);
        assert!(r.passes(1e-12), "{r:?}");
    }
}

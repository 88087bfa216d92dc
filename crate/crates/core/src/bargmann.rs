//! Companion Bargmann spaces inside `L²(𝔹ℂ)`.
//!
//! Functions here are written on the companion `Z^e = w⁺ e⁺ + w⁻ e⁻` of
//! `Z = z1 + j z2` (`w⁺ = z1`, `w⁻ = z2`) and evaluated component-wise. The
//! mixed Gaussian `e^{−σ|Z^e|²/2}` is `e^{−σ(|w⁺|² + |w⁻|²)/4}` in both
//! components.
//!
//! Contents: the bases `φ_n` and `ψ_{m,n}`, the reproducing kernel, the
//! isometries `S_0` and `S_n`, the four-index basis built from the 2-d
//! transform, the strictness witness and a finite-difference checker for
//! polyanalytic order.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fwt::{
    complex_hermite_bc, elementary, fwt_bc_1d, fwt_bc_1d_hermite, fwt_bc_2d, norm_sq_bc_1d,
    sample_fwt_bc_1d, sample_fwt_bc_2d, PhasePoint2D,
};
use crate::hermite::{complex_hermite_poly, hermite_complex_norm_sq, hermite_real, hermite_real_norm_sq};
use crate::quadrature::{BCFunction1D, BCFunction2D, PhaseSpaceGrid, SampledField, TensorRule};
use crate::report::{IdentityReport, Orders, ReportConfig};
use crate::{Bicomplex, Error, HermiteIndex, Hyperbolic, Result, ScaleParam};

/// Relative singular-value cutoff for projections.
pub const PINV_CUTOFF: f64 = 1e-10;

pub const DEFAULT_FD_STEP: f64 = 1e-2;
pub const MIN_FD_STEP: f64 = 1e-3;
pub const MAX_FD_STEP: f64 = 1e-1;

/// Constant `c` printed in front of the Gaussian-window display of the 2-d
/// transform.
pub const REMARK_PRINTED_CONSTANT: f64 = 0.631_618_777_746_064_7; // (2π)^{−1/4}

/// Indices `(m, n, m′, n′)` of `V(h^σ_{m,n}, h^σ_{m′,n′})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourIndex {
    pub m: usize,
    pub n: usize,
    pub mp: usize,
    pub np: usize,
}

impl FourIndex {
    pub fn new(m: usize, n: usize, mp: usize, np: usize) -> Result<Self> {
        Self::with_max(m, n, mp, np, crate::hermite::DEFAULT_MAX_ORDER)
    }

    pub fn with_max(m: usize, n: usize, mp: usize, np: usize, max: usize) -> Result<Self> {
        HermiteIndex::with_max(m, n, max)?;
        HermiteIndex::with_max(mp, np, max)?;
        Ok(Self { m, n, mp, np })
    }

    pub fn signal(&self) -> HermiteIndex {
        HermiteIndex { m: self.m, n: self.n }
    }

    pub fn window(&self) -> HermiteIndex {
        HermiteIndex { m: self.mp, n: self.np }
    }

    /// All indices with every entry `≤ max`, in lexicographic order.
    pub fn all(max: usize) -> Vec<Self> {
        let k = max + 1;
        (0..k.pow(4))
            .map(|i| Self {
                m: i / k.pow(3),
                n: (i / k.pow(2)) % k,
                mp: (i / k) % k,
                np: i % k,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    PhiN(usize),
    PsiMn(HermiteIndex),
    FourIndex(FourIndex),
}

/// One element of the bases on 𝔹ℂ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub sigma: ScaleParam,
}

impl BasisElement {
    /// `rule2d` is only used by the four-index basis.
    pub fn eval(&self, z: Bicomplex, rule2d: &TensorRule) -> Result<Bicomplex> {
        match self.kind {
            BasisKind::PhiN(n) => Ok(phi_n(n, self.sigma, z)),
            BasisKind::PsiMn(idx) => Ok(psi_mn(idx, self.sigma, z)),
            BasisKind::FourIndex(idx) => four_index_basis(idx, self.sigma, z, rule2d),
        }
    }

    pub fn sample(&self, grid: &PhaseSpaceGrid, rule2d: &TensorRule) -> Result<SampledField> {
        match self.kind {
            BasisKind::FourIndex(idx) => sample_four_index(idx, self.sigma, grid, rule2d),
            _ => Ok(grid.sample(|z| self.eval(z, rule2d).expect("closed-form basis"))),
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            BasisKind::PhiN(n) => format!("phi_{n}"),
            BasisKind::PsiMn(i) => format!("psi_{}_{}", i.m, i.n),
            BasisKind::FourIndex(i) => format!("h_{}_{}_{}_{}", i.m, i.n, i.mp, i.np),
        }
    }
}

fn mixed_gaussian(sigma: ScaleParam, z: &Bicomplex) -> f64 {
    (-0.5 * sigma.get() * z.companion().mixed_abs_sq()).exp()
}

/// `φ_n(Z) = (σ/π)^{3/4} σⁿ (Z^e)ⁿ e^{−σ|Z^e|²/2}`.
pub fn phi_n(n: usize, sigma: ScaleParam, z: Bicomplex) -> Bicomplex {
    let s = sigma.get();
    let w = z.companion();
    let c = (s / PI).powf(0.75) * s.powi(n as i32) * mixed_gaussian(sigma, &z);
    Bicomplex::from_components(w.w_plus.powu(n as u32) * c, w.w_minus.powu(n as u32) * c)
}

/// Which exponent sign the kernel uses on the pairing term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelVariant {
    /// `e^{−σ(|Z^e|² + |W^e|² + Z^e (W^e)*)/2}`.
    Printed,
    /// `e^{−σ(|Z^e|² + |W^e|²)/2 + σ Z^e (W^e)*/2}`.
    Corrected,
}

impl KernelVariant {
    pub const ALL: [KernelVariant; 2] = [KernelVariant::Printed, KernelVariant::Corrected];

    pub fn name(&self) -> &'static str {
        match self {
            KernelVariant::Printed => "printed",
            KernelVariant::Corrected => "corrected",
        }
    }
}

/// The kernel `K_σ(Z^e, W^e)`, component-wise on the companions.
pub fn kernel_k(sigma: ScaleParam, z: Bicomplex, w: Bicomplex, variant: KernelVariant) -> Bicomplex {
    let s = sigma.get();
    let (zc, wc) = (z.companion(), w.companion());
    let envelope = -0.5 * s * (zc.mixed_abs_sq() + wc.mixed_abs_sq());
    let sign = match variant {
        KernelVariant::Printed => -1.0,
        KernelVariant::Corrected => 1.0,
    };
    let pair = |a: Complex64, b: Complex64| (a * b.conj() * (0.5 * s * sign) + envelope).exp();
    Bicomplex::from_components(pair(zc.w_plus, wc.w_plus), pair(zc.w_minus, wc.w_minus))
}

/// `S_0 φ = (σ/π)^{1/4} V(φ, ψ_0)` with `ψ_0(t) = e^{−σt²/2}`.
pub fn transform_s0(phi: &BCFunction1D, sigma: ScaleParam, z: Bicomplex, rule: &TensorRule) -> Result<Bicomplex> {
    transform_sn(phi, 0, sigma, z, rule)
}

/// `S_n φ = (σ/π)^{1/4} (2ⁿσⁿn!)^{−1/2} V(φ, h^σ_n)`.
pub fn transform_sn(
    phi: &BCFunction1D,
    n: usize,
    sigma: ScaleParam,
    z: Bicomplex,
    rule: &TensorRule,
) -> Result<Bicomplex> {
    Ok(fwt_bc_1d(phi, &elementary(n, n, sigma), sigma, z, rule)? * sn_constant(n, sigma))
}

fn sn_constant(n: usize, sigma: ScaleParam) -> f64 {
    let s = sigma.get();
    // (σ/π)^{1/4} / √(2ⁿσⁿn!) = (σ/π)^{1/2} / √‖h_n‖²
    (s / PI).powf(0.25) * ((PI / s).sqrt() / hermite_real_norm_sq(n, sigma)).sqrt()
}

/// Samples `S_n φ` on a 4-d grid.
pub fn sample_sn(
    phi: &BCFunction1D,
    n: usize,
    sigma: ScaleParam,
    grid: &PhaseSpaceGrid,
    rule: &TensorRule,
) -> Result<SampledField> {
    let mut field = sample_fwt_bc_1d(phi, &elementary(n, n, sigma), sigma, grid, rule)?;
    let c = sn_constant(n, sigma);
    field.values.iter_mut().for_each(|v| *v = *v * c);
    Ok(field)
}

/// The Segal–Bargmann integral form
/// `(σ/π) e^{−σ|Z^e|²/2} ∫ e^{−σ(t − Z^e/2)²} e^{σt²/2} φ(t) dt`,
/// component-wise. It equals `(π/σ)^{1/4} S_0 φ`.
pub fn transform_s0_integral(
    phi: &BCFunction1D,
    sigma: ScaleParam,
    z: Bicomplex,
    rule: &TensorRule,
) -> Result<Bicomplex> {
    rule.require_dim(1)?;
    let s = sigma.get();
    let w = z.companion();
    let pre = (s / PI) * mixed_gaussian(sigma, &z);
    let comp = |f: &dyn Fn(f64) -> Complex64, wc: Complex64| {
        rule.integrate_1d_centered(0.5 * wc.re, |t| {
            let d = t - 0.5 * wc;
            (-(d * d) * s + 0.5 * s * t * t).exp() * f(t)
        }) * pre
    };
    let v = Bicomplex::from_components(comp(&*phi.f_plus, w.w_plus), comp(&*phi.f_minus, w.w_minus));
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("transform_s0_integral"))
    }
}

/// Polynomial parts `H^{σ/2}_{m,n}(w⁺) e⁺ + H^{σ/2}_{m,n}(w⁻) e⁻`.
pub fn psi_mn_stripped(idx: HermiteIndex, sigma: ScaleParam, z: Bicomplex) -> Bicomplex {
    let w = z.companion();
    let half = sigma.half();
    Bicomplex::from_components(complex_hermite_poly(idx, half, w.w_plus), complex_hermite_poly(idx, half, w.w_minus))
}

/// `ψ_{m,n}(Z) = e^{−σ|Z^e|²/2} (H^{σ/2}_{m,n}(w⁺) e⁺ + H^{σ/2}_{m,n}(w⁻) e⁻)`.
pub fn psi_mn(idx: HermiteIndex, sigma: ScaleParam, z: Bicomplex) -> Bicomplex {
    psi_mn_stripped(idx, sigma, z) * mixed_gaussian(sigma, &z)
}

/// `ψ_{m,n}` recovered from the closed form of `V(h^σ_m, h^σ_n)`:
/// `(−1)ⁿ 2^{−(m+n)} (π/σ)^{1/2} V(h^σ_m, h^σ_n)`.
pub fn psi_mn_via_transform(idx: HermiteIndex, sigma: ScaleParam, z: Bicomplex) -> Bicomplex {
    let HermiteIndex { m, n } = idx;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let c = sign * 2f64.powi(-((m + n) as i32)) * (PI / sigma.get()).sqrt();
    fwt_bc_1d_hermite(m, m, n, n, sigma, z) * c
}

/// `ψ_{m,n}` with the Rodrigues-type display taken literally:
/// `e^{−σ|Z^e|²/2} (−1)^{m+n} e^{σ Z^e (Z^e)*/4} ∂^{m+n}_{(Z^e)*^m (Z^e)^n} e^{−σ Z^e (Z^e)*/2}`.
///
/// Component-wise the derivative evaluates to `H^{σ/2}_{m,n}(w±) e^{−σ|w±|²/2}`,
/// so this differs from [`psi_mn`] by the factor `e^{−σ|w±|²/4}`.
pub fn psi_mn_printed(idx: HermiteIndex, sigma: ScaleParam, z: Bicomplex) -> Bicomplex {
    let s = sigma.get();
    let w = z.companion();
    let base = psi_mn(idx, sigma, z);
    Bicomplex::from_components(
        base.plus() * (-0.25 * s * w.w_plus.norm_sqr()).exp(),
        base.minus() * (-0.25 * s * w.w_minus.norm_sqr()).exp(),
    )
}

/// `V(h^σ_{m,n}, h^σ_{m′,n′})(Z)` with the complex Hermite functions placed in
/// both idempotent components.
pub fn four_index_basis(idx: FourIndex, sigma: ScaleParam, z: Bicomplex, rule2d: &TensorRule) -> Result<Bicomplex> {
    fwt_bc_2d(
        &complex_hermite_bc(idx.signal(), sigma),
        &complex_hermite_bc(idx.window(), sigma),
        sigma,
        z,
        rule2d,
    )
}

pub fn sample_four_index(
    idx: FourIndex,
    sigma: ScaleParam,
    grid: &PhaseSpaceGrid,
    rule2d: &TensorRule,
) -> Result<SampledField> {
    sample_fwt_bc_2d(
        &complex_hermite_bc(idx.signal(), sigma),
        &complex_hermite_bc(idx.window(), sigma),
        sigma,
        grid,
        rule2d,
    )
}

/// `(σ^m (w⁻)^m e⁺ + σⁿ (w⁺)ⁿ e⁻) e^{−σ|Z^e|²/2}`, square-integrable but
/// outside the range of the 1-d transform when `m ≠ n`.
pub fn strictness_witness(m: usize, n: usize, sigma: ScaleParam, z: Bicomplex) -> Result<Bicomplex> {
    if m == n {
        return Err(Error::EqualIndices(m));
    }
    let s = sigma.get();
    let w = z.companion();
    let g = mixed_gaussian(sigma, &z);
    Ok(Bicomplex::from_components(
        w.w_minus.powu(m as u32) * (s.powi(m as i32) * g),
        w.w_plus.powu(n as u32) * (s.powi(n as i32) * g),
    ))
}

/// Squared norms of a function and of its residual after orthogonal
/// projection onto a finite family, per idempotent component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Projection {
    pub norm_sq: Hyperbolic,
    pub residual_sq: Hyperbolic,
}

impl Projection {
    /// `|residual|² / |f|²` with the idempotent-average modulus.
    pub fn residual_fraction(&self) -> Result<f64> {
        Ok(self.residual_sq.modulus_sq()? / self.norm_sq.modulus_sq()?)
    }
}

fn component(z: &Bicomplex, plus: bool) -> Complex64 {
    if plus {
        z.plus()
    } else {
        z.minus()
    }
}

/// Projects `target` onto the span of `basis` through the Gram system,
/// solved with a pseudo-inverse at relative cutoff [`PINV_CUTOFF`].
pub fn project(target: &SampledField, basis: &[SampledField], grid: &PhaseSpaceGrid) -> Result<Projection> {
    let gram = grid.gram(basis)?;
    let rhs: Vec<Bicomplex> = basis.iter().map(|b| grid.inner(target, b)).collect::<Result<_>>()?;
    let norm = Hyperbolic::from_bicomplex_re(&grid.inner(target, target)?);
    let k = basis.len();
    let mut captured = [0.0; 2];
    for (slot, plus) in [(0, true), (1, false)] {
        // M a = b with M_ij = ⟨B_j, B_i⟩, b_i = ⟨T, B_i⟩
        let m = DMatrix::from_fn(k, k, |i, j| component(&gram[j][i], plus));
        let b = DMatrix::from_fn(k, 1, |i, _| component(&rhs[i], plus));
        let svd = m.svd(true, true);
        let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let pinv = svd
            .pseudo_inverse(PINV_CUTOFF * smax.max(f64::MIN_POSITIVE))
            .map_err(|_| Error::NonFinite("projection pseudo-inverse"))?;
        let a = pinv * &b;
        // ‖P T‖² = Σ a_j ⟨B_j, T⟩ = Σ a_j conj(b_j)
        captured[slot] = (0..k).map(|j| a[(j, 0)] * b[(j, 0)].conj()).sum::<Complex64>().re;
    }
    Ok(Projection {
        norm_sq: norm,
        residual_sq: Hyperbolic::new(
            (norm.a_plus - captured[0]).max(0.0),
            (norm.a_minus - captured[1]).max(0.0),
        ),
    })
}

/// Projection of the strictness witness onto `{ψ_{a,b} : a, b ≤ max_order}`.
pub fn strictness_projection(
    m: usize,
    n: usize,
    sigma: ScaleParam,
    max_order: usize,
    grid: &PhaseSpaceGrid,
) -> Result<Projection> {
    strictness_witness(m, n, sigma, Bicomplex::ZERO)?;
    let target = grid.sample(|z| strictness_witness(m, n, sigma, z).expect("distinct indices"));
    let basis: Vec<SampledField> = (0..=max_order)
        .flat_map(|a| (0..=max_order).map(move |b| HermiteIndex { m: a, n: b }))
        .map(|idx| grid.sample(|z| psi_mn(idx, sigma, z)))
        .collect();
    project(&target, &basis, grid)
}

/// Gram matrix normalized by its diagonal,
/// `N_ij = G_ij / √(|G_ii| |G_jj|)` with the idempotent-average modulus.
pub fn normalized_gram(gram: &[Vec<Bicomplex>]) -> Result<Vec<Vec<Bicomplex>>> {
    let d: Vec<f64> = gram
        .iter()
        .enumerate()
        .map(|(i, row)| Hyperbolic::from_bicomplex_re(&row[i]).modulus_sq())
        .collect::<Result<_>>()?;
    Ok(gram
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, g)| *g / (d[i] * d[j]).sqrt()).collect())
        .collect())
}

/// `max_ij |N_ij − δ_ij|`.
pub fn identity_deviation(normalized: &[Vec<Bicomplex>]) -> f64 {
    normalized
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, g)| (*g - if i == j { Bicomplex::ONE } else { Bicomplex::ZERO }).max_abs())
        })
        .fold(0.0, f64::max)
}

/// Basis families available to Gram assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Phi,
    Psi,
    Four,
}

impl Family {
    pub fn elements(&self, max_order: usize, sigma: ScaleParam) -> Vec<BasisElement> {
        let kinds: Vec<BasisKind> = match self {
            Family::Phi => (0..=max_order).map(BasisKind::PhiN).collect(),
            Family::Psi => (0..=max_order)
                .flat_map(|m| (0..=max_order).map(move |n| BasisKind::PsiMn(HermiteIndex { m, n })))
                .collect(),
            Family::Four => FourIndex::all(max_order).into_iter().map(BasisKind::FourIndex).collect(),
        };
        kinds.into_iter().map(|kind| BasisElement { kind, sigma }).collect()
    }
}

/// Bicomplex Gram matrix of a basis family on the grid.
pub fn family_gram(
    family: Family,
    max_order: usize,
    sigma: ScaleParam,
    grid: &PhaseSpaceGrid,
    rule2d: &TensorRule,
) -> Result<(Vec<BasisElement>, Vec<Vec<Bicomplex>>)> {
    let elements = family.elements(max_order, sigma);
    let fields: Vec<SampledField> = elements.iter().map(|e| e.sample(grid, rule2d)).collect::<Result<_>>()?;
    let gram = grid.gram(&fields)?;
    Ok((elements, gram))
}

/// Reproducing test `⟨φ_n, K(·, W)⟩ / ‖K(·, 0)‖² = φ_n(W)`.
///
/// The report scale is the Cauchy–Schwarz bound `‖φ_n‖ ‖K(·,W)‖ / ‖K(·,0)‖²`.
pub fn kernel_reproduction(
    variant: KernelVariant,
    n: usize,
    sigma: ScaleParam,
    w: Bicomplex,
    grid: &PhaseSpaceGrid,
) -> Result<IdentityReport> {
    let phi = grid.sample(|z| phi_n(n, sigma, z));
    let kw = grid.sample(|z| kernel_k(sigma, z, w, variant));
    let k0 = grid.sample(|z| kernel_k(sigma, z, Bicomplex::ZERO, variant));
    let norm0 = Hyperbolic::from_bicomplex_re(&grid.inner(&k0, &k0)?);
    let raw = grid.inner(&phi, &kw)?;
    let lhs = Bicomplex::from_components(raw.plus() / norm0.a_plus, raw.minus() / norm0.a_minus);
    let rhs = phi_n(n, sigma, w);
    let nphi = Hyperbolic::from_bicomplex_re(&grid.inner(&phi, &phi)?);
    let nkw = Hyperbolic::from_bicomplex_re(&grid.inner(&kw, &kw)?);
    let scale = ((nphi.a_plus * nkw.a_plus).sqrt() / norm0.a_plus).max((nphi.a_minus * nkw.a_minus).sqrt() / norm0.a_minus);
    let [x1, y1, x2, y2] = w.coords();
    let cfg = ReportConfig::new(
        Orders {
            order4d: grid.n(),
            ..Default::default()
        },
        sigma.get(),
    )
    .with_indices(&[n])
    .with_point(&[x1, y1, x2, y2])
    .with_note(variant.name());
    Ok(IdentityReport::new(format!("kernel_{}", variant.name()), lhs, rhs, Some(scale), cfg))
}

/// Outcome of testing both kernel variants on the same points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelAdjudication {
    pub worst_printed: f64,
    pub worst_corrected: f64,
    /// The single variant that reproduces within tolerance, if exactly one does.
    pub normative: Option<KernelVariant>,
    pub reports: Vec<IdentityReport>,
}

pub fn kernel_adjudication(
    sigma: ScaleParam,
    max_n: usize,
    points: &[Bicomplex],
    tol: f64,
    grid: &PhaseSpaceGrid,
) -> Result<KernelAdjudication> {
    let mut reports = Vec::new();
    let mut worst = [0.0f64; 2];
    for (slot, variant) in KernelVariant::ALL.into_iter().enumerate() {
        for n in 0..=max_n {
            for &w in points {
                let r = kernel_reproduction(variant, n, sigma, w, grid)?;
                worst[slot] = worst[slot].max(r.rel_residual);
                reports.push(r);
            }
        }
    }
    let passing: Vec<KernelVariant> = KernelVariant::ALL
        .into_iter()
        .zip(worst)
        .filter(|(_, w)| *w <= tol)
        .map(|(v, _)| v)
        .collect();
    Ok(KernelAdjudication {
        worst_printed: worst[0],
        worst_corrected: worst[1],
        normative: (passing.len() == 1).then(|| passing[0]),
        reports,
    })
}

/// `‖S_n φ‖² = ‖φ‖²` with both sides reduced by the idempotent-average
/// modulus. `S_0` is the case `n = 0`.
pub fn isometry_check(
    phi: &BCFunction1D,
    n: usize,
    sigma: ScaleParam,
    grid: &PhaseSpaceGrid,
    rule1d: &TensorRule,
) -> Result<IdentityReport> {
    let field = sample_sn(phi, n, sigma, grid, rule1d)?;
    let lhs = Hyperbolic::from_bicomplex_re(&grid.inner(&field, &field)?).modulus_sq()?;
    let rhs = norm_sq_bc_1d(phi, rule1d)?.modulus_sq()?;
    let cfg = ReportConfig::new(
        Orders {
            order1d: rule1d.order(),
            order4d: grid.n(),
            ..Default::default()
        },
        sigma.get(),
    )
    .with_indices(&[n]);
    Ok(IdentityReport::new(
        format!("isometry_s{n}"),
        Complex64::from(lhs),
        Complex64::from(rhs),
        None,
        cfg,
    ))
}

/// Conjugate companion direction of a Wirtinger-type derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `∂_{w̄⁺} e⁺ + ∂_{w̄⁻} e⁻`.
    Star,
    /// `∂_{w̄⁻} e⁺ + ∂_{w̄⁺} e⁻`.
    Bar,
    /// `∂_{w⁻} e⁺ + ∂_{w⁺} e⁻`.
    Dagger,
}

impl Direction {
    /// For each idempotent component: (differentiate in the `w⁺` plane?, conjugate?).
    fn parts(&self) -> [(bool, bool); 2] {
        match self {
            Direction::Star => [(true, true), (false, true)],
            Direction::Bar => [(false, true), (true, true)],
            Direction::Dagger => [(false, false), (true, false)],
        }
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `∂^d_{w̄}` (or `∂^d_w`) of one component, by tensor central differences.
fn wirtinger_fd(
    f: &dyn Fn(Bicomplex) -> Complex64,
    z0: Bicomplex,
    in_plus_plane: bool,
    conj: bool,
    d: usize,
    h: f64,
    max_seen: &mut f64,
) -> Complex64 {
    let shift = |dx: f64, dy: f64| {
        let delta = Complex64::new(dx, dy);
        if in_plus_plane {
            Bicomplex::new(z0.z1 + delta, z0.z2)
        } else {
            Bicomplex::new(z0.z1, z0.z2 + delta)
        }
    };
    let unit = if conj { Complex64::new(0.0, 1.0) } else { Complex64::new(0.0, -1.0) };
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..=d {
        // ∂x^{d−j} ∂y^j
        let (a, b) = (d - j, j);
        let mut mixed = Complex64::new(0.0, 0.0);
        for p in 0..=a {
            for q in 0..=b {
                let sign = if (p + q) % 2 == 0 { 1.0 } else { -1.0 };
                let v = f(shift((a as f64 / 2.0 - p as f64) * h, (b as f64 / 2.0 - q as f64) * h));
                *max_seen = max_seen.max(v.norm());
                mixed += v * (sign * binomial(a, p) * binomial(b, q));
            }
        }
        total += mixed * unit.powu(j as u32) * binomial(d, j);
    }
    total / (2f64.powi(d as i32) * h.powi(d as i32))
}

/// Finite-difference estimate of `|∂^{k+1} f / ∂(direction)^{k+1}|` at `z0`,
/// the largest over the two idempotent components.
///
/// Central differences at steps `h, h/2, h/4` are combined by two Richardson
/// levels. A result near zero certifies polyanalytic order `≤ k` in that
/// direction. Fails with [`Error::StepTooSmall`] when the three levels
/// diverge at a step where roundoff is significant.
pub fn polyanalytic_order(
    f: impl Fn(Bicomplex) -> Bicomplex,
    direction: Direction,
    order_k: usize,
    z0: Bicomplex,
    h: f64,
) -> Result<f64> {
    if !(MIN_FD_STEP..=MAX_FD_STEP).contains(&h) {
        return Err(Error::StepOutOfRange(h));
    }
    let d = order_k + 1;
    let mut worst = 0.0f64;
    for (slot, (plane, conj)) in direction.parts().into_iter().enumerate() {
        let comp = |z: Bicomplex| component(&f(z), slot == 0);
        let mut max_seen = 0.0f64;
        let levels: Vec<Complex64> = [h, h / 2.0, h / 4.0]
            .iter()
            .map(|&step| wirtinger_fd(&comp, z0, plane, conj, d, step, &mut max_seen))
            .collect();
        let r1a = (levels[1] * 4.0 - levels[0]) / 3.0;
        let r1b = (levels[2] * 4.0 - levels[1]) / 3.0;
        let r2 = (r1b * 16.0 - r1a) / 15.0;
        let coarse = (levels[1] - levels[0]).norm();
        let fine = (levels[2] - levels[1]).norm();
        let roundoff = f64::EPSILON * max_seen.max(1.0) * 2f64.powi(d as i32) / (h / 4.0).powi(d as i32);
        if fine > coarse && roundoff > 1e-6 * max_seen.max(1.0) {
            return Err(Error::StepTooSmall(h));
        }
        worst = worst.max(r2.norm());
    }
    if worst.is_finite() {
        Ok(worst)
    } else {
        Err(Error::NonFinite("polyanalytic_order"))
    }
}

/// The Gaussian-window display of the 2-d transform,
///
/// ```text
/// c e^{−σ(X² + Y²)/4} e^{σ S²/4} ∫_ℝ² e^{−σ(U − S)²/2} φ(U) dU,   S = X + iY,
/// ```
///
/// with `c` = [`REMARK_PRINTED_CONSTANT`]. The 2-d transform with window
/// `h^σ_{0,0}` equals `(2π)^{−1/4}` times this value.
pub fn window_remark_display(phi: &BCFunction2D, sigma: ScaleParam, z: Bicomplex, rule2d: &TensorRule) -> Result<Bicomplex> {
    rule2d.require_dim(2)?;
    let s = sigma.get();
    let PhasePoint2D { x, y } = PhasePoint2D::from_bicomplex(&z);
    let sv = [Complex64::new(x[0], y[0]), Complex64::new(x[1], y[1])];
    let s_sq = sv[0] * sv[0] + sv[1] * sv[1];
    let real_sq = x[0] * x[0] + x[1] * x[1] + y[0] * y[0] + y[1] * y[1];
    let pre = (s_sq * (0.25 * s) - 0.25 * s * real_sq).exp() * REMARK_PRINTED_CONSTANT;
    let comp = |f: &dyn Fn(f64, f64) -> Complex64| {
        rule2d.integrate_2d_centered([0.5 * x[0], 0.5 * x[1]], |u1, u2| {
            let d1 = u1 - sv[0];
            let d2 = u2 - sv[1];
            (-(d1 * d1 + d2 * d2) * (0.5 * s)).exp() * f(u1, u2)
        }) * pre
    };
    let v = Bicomplex::from_components(comp(&*phi.f_plus), comp(&*phi.f_minus));
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("window_remark_display"))
    }
}

/// Ratio of the 2-d transform with window `h^σ_{0,0}` to
/// [`window_remark_display`].
pub fn window_remark_ratio() -> f64 {
    (2.0 * PI).powf(-0.25)
}

/// Reconstructs `F = Σ c_k V(h_k, h_window)` as the transform of the single
/// pair `(Σ c_k h_k, h_window)` and compares both at `points`.
pub fn surjectivity_check(
    coeffs: &[(HermiteIndex, Bicomplex)],
    window: HermiteIndex,
    sigma: ScaleParam,
    points: &[Bicomplex],
    rule2d: &TensorRule,
) -> Result<Vec<IdentityReport>> {
    let terms: Vec<(Bicomplex, BCFunction2D)> =
        coeffs.iter().map(|(idx, c)| (*c, complex_hermite_bc(*idx, sigma))).collect();
    let preimage = BCFunction2D::combination(&terms);
    let win = complex_hermite_bc(window, sigma);
    let wnorm = hermite_complex_norm_sq(window, sigma)?.sqrt();
    let mut bound = 0.0;
    for (idx, c) in coeffs {
        bound += c.max_abs() * hermite_complex_norm_sq(*idx, sigma)?.sqrt() * wnorm / (2.0 * PI).sqrt();
    }
    points
        .iter()
        .map(|&z| {
            let mut target = Bicomplex::ZERO;
            for (idx, c) in coeffs {
                let basis = four_index_basis(
                    FourIndex {
                        m: idx.m,
                        n: idx.n,
                        mp: window.m,
                        np: window.n,
                    },
                    sigma,
                    z,
                    rule2d,
                )?;
                target += *c * basis;
            }
            let rebuilt = fwt_bc_2d(&preimage, &win, sigma, z, rule2d)?;
            let [x1, y1, x2, y2] = z.coords();
            let cfg = ReportConfig::new(
                Orders {
                    order2d: rule2d.order(),
                    ..Default::default()
                },
                sigma.get(),
            )
            .with_indices(&[window.m, window.n])
            .with_point(&[x1, y1, x2, y2]);
            Ok(IdentityReport::new("surjectivity", rebuilt, target, Some(bound), cfg))
        })
        .collect()
}

/// For the four-index function `idx`, the smallest over all real tensor
/// products `h^σ_a(x1) h^σ_b(y1) h^σ_c(x2) h^σ_d(y2)` (entries `≤ max_deg`) of
/// the relative misfit at `test_points`, after a least-squares fit of one
/// complex coefficient per idempotent component on `fit_points`.
pub fn tensor_product_misfit(
    idx: FourIndex,
    sigma: ScaleParam,
    max_deg: usize,
    fit_points: &[Bicomplex],
    test_points: &[Bicomplex],
    rule2d: &TensorRule,
) -> Result<f64> {
    let eval = |pts: &[Bicomplex]| -> Result<Vec<Bicomplex>> {
        pts.iter().map(|&z| four_index_basis(idx, sigma, z, rule2d)).collect()
    };
    let fit_vals = eval(fit_points)?;
    let test_vals = eval(test_points)?;
    let product = |deg: [usize; 4], z: &Bicomplex| -> f64 {
        z.coords()
            .iter()
            .zip(deg)
            .map(|(&x, k)| hermite_real(k, sigma, x))
            .product()
    };
    let k = max_deg + 1;
    let mut best = f64::INFINITY;
    for i in 0..k.pow(4) {
        let deg = [i / k.pow(3), (i / k.pow(2)) % k, (i / k) % k, i % k];
        let mut worst = 0.0f64;
        for plus in [true, false] {
            let (mut num, mut den) = (Complex64::new(0.0, 0.0), 0.0);
            for (z, v) in fit_points.iter().zip(&fit_vals) {
                let p = product(deg, z);
                num += component(v, plus) * p;
                den += p * p;
            }
            let c = if den > 0.0 { num / den } else { Complex64::new(0.0, 0.0) };
            let scale = test_vals.iter().map(|v| component(v, plus).norm()).fold(0.0, f64::max);
            let miss = test_points
                .iter()
                .zip(&test_vals)
                .map(|(z, v)| (component(v, plus) - c * product(deg, z)).norm())
                .fold(0.0, f64::max);
            worst = worst.max(miss / scale.max(1e-300));
        }
        best = best.min(worst);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{DEFAULT_ORDER_1D, DEFAULT_ORDER_2D};

    const S: ScaleParam = ScaleParam::ONE;

    fn z() -> Bicomplex {
        Bicomplex::from_coords(0.7, -0.4, 0.2, 1.1)
    }

    #[test]
    fn phi_at_origin() {
        let v = phi_n(0, S, Bicomplex::ZERO);
        assert!((v - Bicomplex::from(PI.powf(-0.75))).max_abs() < 1e-15);
    }

    #[test]
    fn kernel_basics() {
        for v in KernelVariant::ALL {
            assert_eq!(kernel_k(S, Bicomplex::ZERO, Bicomplex::ZERO, v), Bicomplex::ONE);
            let a = kernel_k(S, z(), Bicomplex::from_coords(0.1, 0.5, -0.3, 0.2), v);
            let b = kernel_k(S, Bicomplex::from_coords(0.1, 0.5, -0.3, 0.2), z(), v);
            assert!((a - b.star()).max_abs() < 1e-15);
        }
    }

    #[test]
    fn s0_of_hermite_is_phi() {
        let rule = TensorRule::for_signals(1, DEFAULT_ORDER_1D, S).unwrap();
        for n in 0..4 {
            let h = elementary(n, n, S);
            let a = transform_s0(&h, S, z(), &rule).unwrap();
            let b = phi_n(n, S, z());
            assert!((a - b).max_abs() < 1e-12 * b.max_abs().max(1e-3), "n={n}");
            let c = transform_s0_integral(&h, S, z(), &rule).unwrap();
            assert!((c - a * (PI / S.get()).powf(0.25)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn psi_paths_agree() {
        for m in 0..3 {
            for n in 0..3 {
                let idx = HermiteIndex { m, n };
                let a = psi_mn(idx, S, z());
                let b = psi_mn_via_transform(idx, S, z());
                assert!((a - b).max_abs() <= 1e-13 * a.max_abs().max(1e-3));
            }
        }
        assert_eq!(psi_mn(HermiteIndex { m: 0, n: 0 }, S, Bicomplex::ZERO), Bicomplex::ONE);
    }

    #[test]
    fn four_index_at_origin() {
        let rule = TensorRule::for_signals(2, DEFAULT_ORDER_2D, S).unwrap();
        let v = four_index_basis(FourIndex::new(0, 0, 0, 0).unwrap(), S, Bicomplex::ZERO, &rule).unwrap();
        assert!((v - Bicomplex::from(PI / (2.0 * PI).sqrt())).max_abs() < 1e-14);
    }

    #[test]
    fn witness() {
        assert_eq!(strictness_witness(1, 1, S, z()), Err(Error::EqualIndices(1)));
        let v = strictness_witness(1, 0, S, Bicomplex::ZERO).unwrap();
        assert_eq!(v.plus(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn fd_checks() {
        let holo = |z: Bicomplex| z.companion().to_bicomplex().powu(3);
        for dir in [Direction::Bar, Direction::Dagger] {
            assert!(polyanalytic_order(holo, dir, 0, z(), 1e-2).unwrap() < 1e-6);
        }
        let anti = |z: Bicomplex| z.companion().to_bicomplex().star().powu(3);
        assert!(polyanalytic_order(anti, Direction::Star, 2, z(), 0.1).unwrap() > 1e-2);
        assert!(polyanalytic_order(anti, Direction::Star, 3, z(), 0.1).unwrap() < 1e-6);
        assert_eq!(polyanalytic_order(holo, Direction::Star, 0, z(), 0.5), Err(Error::StepOutOfRange(0.5)));
        assert_eq!(
            polyanalytic_order(anti, Direction::Star, 3, z(), 1e-3),
            Err(Error::StepTooSmall(1e-3))
        );
    }

    #[test]
    fn window_remark() {
        let rule = TensorRule::for_signals(2, DEFAULT_ORDER_2D, S).unwrap();
        let phi = complex_hermite_bc(HermiteIndex { m: 1, n: 2 }, S);
        let win = complex_hermite_bc(HermiteIndex { m: 0, n: 0 }, S);
        let a = fwt_bc_2d(&phi, &win, S, z(), &rule).unwrap();
        let b = window_remark_display(&phi, S, z(), &rule).unwrap();
        assert!((a - b * window_remark_ratio()).max_abs() < 1e-12 * a.max_abs().max(1e-3));
    }
}

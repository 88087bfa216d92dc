//! Gauss–Hermite rules, tensor products and inner products.
//!
//! Every integral in the crate runs over an unbounded domain with a
//! Gaussian-decaying integrand. A rule of order `N` for the weight `e^{−x²}`
//! is mapped onto an integrand with envelope centred at `c` and width `s` by
//!
//! ```text
//! ∫ F(x) dx ≈ s Σ_i W_i F(c + s x_i),    W_i = w_i e^{x_i²},
//! ```
//!
//! which is exact whenever `F(c + s u) e^{u²}` is a polynomial of degree
//! below `2N`. The scaled weights `W_i` are computed directly from the
//! orthonormal Hermite functions so they keep full relative precision at the
//! outermost nodes.
//!
//! Sums over tensor grids use pairwise summation with a split that depends
//! only on the node count, so results are identical for any thread count.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::ops::Add;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::{Bicomplex, Error, Result, ScaleParam};

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 256;

pub const DEFAULT_ORDER_1D: usize = 80;
pub const DEFAULT_ORDER_2D: usize = 48;
pub const DEFAULT_ORDER_4D: usize = 24;

/// Refuse 4-d grids with more nodes than this unless forced.
pub const NODE_BUDGET: u128 = 1 << 26;

/// Measure on 𝔹ℂ ≅ ℝ⁴ relative to Lebesgue measure `dλ(z1) dλ(z2)`.
///
/// Square-integrable functions on the two companion planes and on 𝔹ℂ are
/// related by `L²(ℂ × ℂ) = 4 L²(𝔹ℂ)`, so `dλ(Z) = dλ(z1) dλ(z2) / 4`.
pub const BC_MEASURE_SCALE: f64 = 0.25;

const PAIRWISE_BLOCK: usize = 64;
const PARALLEL_GRAIN: usize = 1 << 14;

/// Nodes and weights for `∫ f(x) e^{−x²} dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    scaled_weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `w_i e^{x_i²}`.
    pub fn scaled_weights(&self) -> &[f64] {
        &self.scaled_weights
    }

    /// `Σ w_i f(x_i) ≈ ∫ f(x) e^{−x²} dx`.
    pub fn integrate_weighted(&self, f: impl Fn(f64) -> f64) -> f64 {
        pairwise_sum(self.order, |i| self.weights[i] * f(self.nodes[i]))
    }

    /// `∫ F(x) dx` for `F` with envelope centred at `center`, width `scale`.
    pub fn integrate(&self, center: f64, scale: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
        pairwise_sum(self.order, |i| {
            f(center + scale * self.nodes[i]) * (scale * self.scaled_weights[i])
        })
    }
}

/// Orthonormal Hermite functions `φ_{n−1}(x), φ_n(x)` with
/// `φ_0 = π^{−1/4} e^{−x²/2}`.
fn hermite_functions_top(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}

fn hermite_functions_sum_sq(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    let mut acc = cur * cur;
    for k in 0..n.saturating_sub(1) {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        acc += cur * cur;
    }
    acc
}

fn compute_rule(order: usize) -> QuadratureRule {
    // Golub–Welsch: eigenvalues of the Jacobi matrix with off-diagonal √(k/2).
    let jacobi = DMatrix::from_fn(order, order, |r, c| {
        if r + 1 == c || c + 1 == r {
            (r.max(c) as f64 * 0.5).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    // Newton polish on p_n, using p_n' = √(2n) p_{n−1}.
    let two_n = (2.0 * order as f64).sqrt();
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (pm1, p) = hermite_functions_top(order, *x);
            if pm1 == 0.0 {
                break;
            }
            *x -= p / (two_n * pm1);
        }
    }
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let half = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -half;
        nodes[j] = half;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }

    // Christoffel numbers: W_i = 1 / Σ_{k<n} φ_k(x_i)².
    let mut scaled_weights: Vec<f64> = nodes
        .iter()
        .map(|&x| 1.0 / hermite_functions_sum_sq(order, x))
        .collect();
    for i in 0..order / 2 {
        let j = order - 1 - i;
        let w = 0.5 * (scaled_weights[i] + scaled_weights[j]);
        scaled_weights[i] = w;
        scaled_weights[j] = w;
    }
    let weights = nodes
        .iter()
        .zip(&scaled_weights)
        .map(|(&x, &w)| w * (-x * x).exp())
        .collect();

    QuadratureRule {
        order,
        nodes,
        weights,
        scaled_weights,
    }
}

/// Gauss–Hermite rule of the given order, `2 ≤ order ≤ 256`.
///
/// Rules are deterministic and cached per order.
pub fn gauss_hermite(order: usize) -> Result<Arc<QuadratureRule>> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(Error::OrderOutOfRange(order));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(rule) = cache.lock().expect("rule cache poisoned").get(&order) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(compute_rule(order));
    Ok(Arc::clone(
        cache
            .lock()
            .expect("rule cache poisoned")
            .entry(order)
            .or_insert(rule),
    ))
}

/// Sum of `f(0), …, f(n−1)` by pairwise summation.
pub fn pairwise_sum<T, F>(n: usize, f: F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    fn rec<T: Copy + Default + Add<Output = T>>(lo: usize, hi: usize, f: &dyn Fn(usize) -> T) -> T {
        if hi - lo <= PAIRWISE_BLOCK {
            (lo..hi).fold(T::default(), |acc, i| acc + f(i))
        } else {
            let mid = lo + (hi - lo) / 2;
            rec(lo, mid, f) + rec(mid, hi, f)
        }
    }
    rec(0, n, &f)
}

/// [`pairwise_sum`] with the two halves of large ranges evaluated in
/// parallel. The summation tree is the same as the sequential one.
pub fn par_pairwise_sum<T, F>(n: usize, f: F) -> T
where
    T: Copy + Default + Add<Output = T> + Send,
    F: Fn(usize) -> T + Sync,
{
    fn rec<T, F>(lo: usize, hi: usize, f: &F) -> T
    where
        T: Copy + Default + Add<Output = T> + Send,
        F: Fn(usize) -> T + Sync,
    {
        if hi - lo <= PAIRWISE_BLOCK {
            (lo..hi).fold(T::default(), |acc, i| acc + f(i))
        } else {
            let mid = lo + (hi - lo) / 2;
            let (a, b) = if hi - lo >= PARALLEL_GRAIN {
                rayon::join(|| rec(lo, mid, f), || rec(mid, hi, f))
            } else {
                (rec(lo, mid, f), rec(mid, hi, f))
            };
            a + b
        }
    }
    rec(0, n, &f)
}

/// Tensor product of a Gauss–Hermite rule in 1, 2 or 4 dimensions, with a
/// per-axis width matching the integrand's Gaussian envelope.
#[derive(Debug, Clone)]
pub struct TensorRule {
    dim: usize,
    base: Arc<QuadratureRule>,
    scale: Vec<f64>,
}

impl TensorRule {
    pub fn new(dim: usize, base: Arc<QuadratureRule>, scale: Vec<f64>) -> Result<Self> {
        if !matches!(dim, 1 | 2 | 4) || scale.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: scale.len(),
            });
        }
        if let Some(&s) = scale.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::NonPositiveScale(s));
        }
        Ok(Self { dim, base, scale })
    }

    pub fn uniform(dim: usize, base: Arc<QuadratureRule>, scale: f64) -> Self {
        Self::new(dim, base, vec![scale; dim]).expect("valid uniform tensor rule")
    }

    /// Rule for signals built from `h^σ_n`: envelope of `f ḡ` is `e^{−σx²}`.
    pub fn for_signals(dim: usize, order: usize, sigma: ScaleParam) -> Result<Self> {
        Ok(Self::uniform(dim, gauss_hermite(order)?, 1.0 / sigma.get().sqrt()))
    }

    /// Rule for products of transforms: envelope `e^{−σ|·|²/2}` per axis.
    pub fn for_phase_space(dim: usize, order: usize, sigma: ScaleParam) -> Result<Self> {
        Ok(Self::uniform(dim, gauss_hermite(order)?, (2.0 / sigma.get()).sqrt()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> &QuadratureRule {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.order
    }

    pub fn scale(&self) -> &[f64] {
        &self.scale
    }

    pub fn node_count(&self) -> u128 {
        (self.base.order as u128).pow(self.dim as u32)
    }

    /// Same widths, different order.
    pub fn with_order(&self, order: usize) -> Result<Self> {
        Self::new(self.dim, gauss_hermite(order)?, self.scale.clone())
    }

    pub(crate) fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim,
            })
        }
    }

    /// `(x, weight)` pairs along one axis around `center`.
    pub fn axis_points(&self, axis: usize, center: f64) -> Vec<(f64, f64)> {
        let s = self.scale[axis];
        self.base
            .nodes
            .iter()
            .zip(&self.base.scaled_weights)
            .map(|(&x, &w)| (center + s * x, s * w))
            .collect()
    }

    pub fn integrate_1d(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.integrate_1d_centered(0.0, f)
    }

    pub fn integrate_1d_centered(&self, center: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.base.integrate(center, self.scale[0], f)
    }

    pub fn integrate_2d(&self, f: impl Fn(f64, f64) -> Complex64) -> Complex64 {
        self.integrate_2d_centered([0.0, 0.0], f)
    }

    pub fn integrate_2d_centered(
        &self,
        center: [f64; 2],
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Complex64 {
        let n = self.base.order;
        let u = self.axis_points(0, center[0]);
        let v = self.axis_points(1, center[1]);
        pairwise_sum(n * n, |k| {
            let (x, wx) = u[k / n];
            let (y, wy) = v[k % n];
            f(x, y) * (wx * wy)
        })
    }
}

/// A complex-valued signal on ℝ.
pub type Signal1D = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
/// A complex-valued signal on ℝ² ≅ ℂ.
pub type Signal2D = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// Bicomplex-valued signal on ℝ given by its idempotent components.
#[derive(Clone)]
pub struct BCFunction1D {
    pub f_plus: Signal1D,
    pub f_minus: Signal1D,
}

/// Bicomplex-valued signal on ℝ² given by its idempotent components.
#[derive(Clone)]
pub struct BCFunction2D {
    pub f_plus: Signal2D,
    pub f_minus: Signal2D,
}

impl BCFunction1D {
    pub fn new(
        f_plus: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        f_minus: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            f_plus: Arc::new(f_plus),
            f_minus: Arc::new(f_minus),
        }
    }

    /// The same complex signal in both components.
    pub fn scalar(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        let f: Signal1D = Arc::new(f);
        Self {
            f_plus: Arc::clone(&f),
            f_minus: f,
        }
    }

    pub fn eval(&self, t: f64) -> Bicomplex {
        Bicomplex::from_components((self.f_plus)(t), (self.f_minus)(t))
    }

    /// `Σ c_k φ_k` with bicomplex coefficients acting component-wise.
    pub fn combination(terms: &[(Bicomplex, BCFunction1D)]) -> Self {
        let terms: Arc<Vec<(Complex64, Complex64, BCFunction1D)>> = Arc::new(
            terms
                .iter()
                .map(|(c, f)| (c.plus(), c.minus(), f.clone()))
                .collect(),
        );
        let tp = Arc::clone(&terms);
        Self::new(
            move |t| tp.iter().map(|(cp, _, f)| cp * (f.f_plus)(t)).sum(),
            move |t| terms.iter().map(|(_, cm, f)| cm * (f.f_minus)(t)).sum(),
        )
    }

    /// Square-integrability check: `∫|f±|²` at two orders drifts by at most 1e−6.
    pub fn is_square_integrable(&self, rule: &TensorRule) -> Result<bool> {
        let finer = rule.with_order((2 * rule.order()).min(MAX_ORDER))?;
        let drift = |f: &Signal1D| {
            let a = rule.integrate_1d(|t| Complex64::from(f(t).norm_sqr())).re;
            let b = finer.integrate_1d(|t| Complex64::from(f(t).norm_sqr())).re;
            a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-6 * b.abs().max(f64::MIN_POSITIVE)
        };
        Ok(drift(&self.f_plus) && drift(&self.f_minus))
    }
}

impl BCFunction2D {
    pub fn new(
        f_plus: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
        f_minus: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            f_plus: Arc::new(f_plus),
            f_minus: Arc::new(f_minus),
        }
    }

    pub fn scalar(f: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static) -> Self {
        let f: Signal2D = Arc::new(f);
        Self {
            f_plus: Arc::clone(&f),
            f_minus: f,
        }
    }

    pub fn eval(&self, u: f64, v: f64) -> Bicomplex {
        Bicomplex::from_components((self.f_plus)(u, v), (self.f_minus)(u, v))
    }

    pub fn combination(terms: &[(Bicomplex, BCFunction2D)]) -> Self {
        let terms: Arc<Vec<(Complex64, Complex64, BCFunction2D)>> = Arc::new(
            terms
                .iter()
                .map(|(c, f)| (c.plus(), c.minus(), f.clone()))
                .collect(),
        );
        let tp = Arc::clone(&terms);
        Self::new(
            move |u, v| tp.iter().map(|(cp, _, f)| cp * (f.f_plus)(u, v)).sum(),
            move |u, v| terms.iter().map(|(_, cm, f)| cm * (f.f_minus)(u, v)).sum(),
        )
    }

    pub fn is_square_integrable(&self, rule: &TensorRule) -> Result<bool> {
        let finer = rule.with_order((2 * rule.order()).min(MAX_ORDER))?;
        let drift = |f: &Signal2D| {
            let a = rule.integrate_2d(|u, v| Complex64::from(f(u, v).norm_sqr())).re;
            let b = finer.integrate_2d(|u, v| Complex64::from(f(u, v).norm_sqr())).re;
            a.is_finite() && b.is_finite() && (a - b).abs() <= 1e-6 * b.abs().max(f64::MIN_POSITIVE)
        };
        Ok(drift(&self.f_plus) && drift(&self.f_minus))
    }
}

fn finite_c(v: Complex64, what: &'static str) -> Result<Complex64> {
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

/// `⟨f, g⟩ = ∫_ℝ f ḡ dt`.
pub fn inner_product_l2r(
    f: impl Fn(f64) -> Complex64,
    g: impl Fn(f64) -> Complex64,
    rule: &TensorRule,
) -> Result<Complex64> {
    rule.require_dim(1)?;
    finite_c(rule.integrate_1d(|t| f(t) * g(t).conj()), "inner_product_l2r")
}

/// `⟨f, g⟩ = ∫_ℝ² f ḡ dλ`.
pub fn inner_product_l2r2(
    f: impl Fn(f64, f64) -> Complex64,
    g: impl Fn(f64, f64) -> Complex64,
    rule: &TensorRule,
) -> Result<Complex64> {
    rule.require_dim(2)?;
    finite_c(
        rule.integrate_2d(|u, v| f(u, v) * g(u, v).conj()),
        "inner_product_l2r2",
    )
}

/// `⟨φ, ψ⟩ = ⟨φ⁺, ψ⁺⟩ e⁺ + ⟨φ⁻, ψ⁻⟩ e⁻`.
pub fn inner_product_bc_1d(phi: &BCFunction1D, psi: &BCFunction1D, rule: &TensorRule) -> Result<Bicomplex> {
    let plus = inner_product_l2r(&*phi.f_plus, &*psi.f_plus, rule)?;
    let minus = inner_product_l2r(&*phi.f_minus, &*psi.f_minus, rule)?;
    Ok(Bicomplex::from_components(plus, minus))
}

/// Component-wise inner product on ℝ².
pub fn inner_product_bc_2d(phi: &BCFunction2D, psi: &BCFunction2D, rule: &TensorRule) -> Result<Bicomplex> {
    let plus = inner_product_l2r2(&*phi.f_plus, &*psi.f_plus, rule)?;
    let minus = inner_product_l2r2(&*phi.f_minus, &*psi.f_minus, rule)?;
    Ok(Bicomplex::from_components(plus, minus))
}

/// Tensor grid on 𝔹ℂ ≅ ℝ⁴ in the coordinates `(x1, y1, x2, y2)`.
///
/// The flat node index is `((a·n + b)·n + c)·n + d` for axis indices
/// `a, b, c, d`. Weights include [`BC_MEASURE_SCALE`].
#[derive(Debug, Clone)]
pub struct PhaseSpaceGrid {
    rule: TensorRule,
    coords: Vec<f64>,
    axis_weights: Vec<f64>,
}

/// Values of a bicomplex function on a [`PhaseSpaceGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub values: Vec<Bicomplex>,
}

impl PhaseSpaceGrid {
    /// Grid for products of transforms at scale `σ` (width `√(2/σ)`).
    pub fn new(order: usize, sigma: ScaleParam, force: bool) -> Result<Self> {
        Self::from_rule(TensorRule::for_phase_space(4, order, sigma)?, force)
    }

    pub fn from_rule(rule: TensorRule, force: bool) -> Result<Self> {
        rule.require_dim(4)?;
        let nodes = rule.node_count();
        if nodes > NODE_BUDGET && !force {
            return Err(Error::NodeBudget {
                nodes,
                budget: NODE_BUDGET,
            });
        }
        if rule.scale.iter().any(|&s| s != rule.scale[0]) {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: rule.dim,
            });
        }
        let points = rule.axis_points(0, 0.0);
        Ok(Self {
            coords: points.iter().map(|p| p.0).collect(),
            axis_weights: points.iter().map(|p| p.1).collect(),
            rule,
        })
    }

    pub fn rule(&self) -> &TensorRule {
        &self.rule
    }

    /// Nodes per axis.
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn len(&self) -> usize {
        self.n().pow(4)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node coordinates along any axis.
    pub fn axis(&self) -> &[f64] {
        &self.coords
    }

    pub fn split_index(&self, k: usize) -> [usize; 4] {
        let n = self.n();
        [k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n]
    }

    pub fn point(&self, k: usize) -> Bicomplex {
        let [a, b, c, d] = self.split_index(k);
        Bicomplex::from_coords(self.coords[a], self.coords[b], self.coords[c], self.coords[d])
    }

    pub fn weight(&self, k: usize) -> f64 {
        let [a, b, c, d] = self.split_index(k);
        let w = &self.axis_weights;
        BC_MEASURE_SCALE * w[a] * w[b] * w[c] * w[d]
    }

    pub fn sample(&self, f: impl Fn(Bicomplex) -> Bicomplex + Sync) -> SampledField {
        use rayon::prelude::*;
        let values = (0..self.len())
            .into_par_iter()
            .map(|k| f(self.point(k)))
            .collect();
        SampledField { values }
    }

    /// Builds a field slice by slice: `fill(a, c, out)` receives the `x1`,
    /// `x2` axis indices and must write the `n²` values for all `(y1, y2)` in
    /// row-major order.
    pub fn sample_slices(&self, fill: impl Fn(usize, usize, &mut [Bicomplex]) + Sync) -> SampledField {
        use rayon::prelude::*;
        let n = self.n();
        let mut values = vec![Bicomplex::ZERO; self.len()];
        let mut slices: Vec<Vec<Bicomplex>> = (0..n * n)
            .into_par_iter()
            .map(|ac| {
                let mut out = vec![Bicomplex::ZERO; n * n];
                fill(ac / n, ac % n, &mut out);
                out
            })
            .collect();
        for (ac, slice) in slices.iter_mut().enumerate() {
            let (a, c) = (ac / n, ac % n);
            for b in 0..n {
                for d in 0..n {
                    values[((a * n + b) * n + c) * n + d] = slice[b * n + d];
                }
            }
        }
        SampledField { values }
    }

    /// `∫_𝔹ℂ F G* dλ` for sampled fields.
    pub fn inner(&self, f: &SampledField, g: &SampledField) -> Result<Bicomplex> {
        let v = par_pairwise_sum(self.len(), |k| f.values[k] * g.values[k].star() * self.weight(k));
        finite_bc(v, "inner_product_bc_c2")
    }

    /// Bicomplex Gram matrix `G_ij = ⟨F_i, F_j⟩`.
    pub fn gram(&self, fields: &[SampledField]) -> Result<Vec<Vec<Bicomplex>>> {
        let m = fields.len();
        let mut g = vec![vec![Bicomplex::ZERO; m]; m];
        for i in 0..m {
            for j in i..m {
                let v = self.inner(&fields[i], &fields[j])?;
                g[i][j] = v;
                // ⟨F_j, F_i⟩ is the component-wise conjugate
                g[j][i] = v.star();
            }
        }
        Ok(g)
    }
}

/// `∫_𝔹ℂ F G* dλ` for pointwise functions.
pub fn inner_product_bc_c2(
    f: impl Fn(Bicomplex) -> Bicomplex + Sync,
    g: impl Fn(Bicomplex) -> Bicomplex + Sync,
    grid: &PhaseSpaceGrid,
) -> Result<Bicomplex> {
    let v = par_pairwise_sum(grid.len(), |k| {
        let z = grid.point(k);
        f(z) * g(z).star() * grid.weight(k)
    });
    finite_bc(v, "inner_product_bc_c2")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_range() {
        assert_eq!(gauss_hermite(1).unwrap_err(), Error::OrderOutOfRange(1));
        assert_eq!(gauss_hermite(257).unwrap_err(), Error::OrderOutOfRange(257));
        assert!(gauss_hermite(256).is_ok());
    }

    #[test]
    fn order_two() {
        let r = gauss_hermite(2).unwrap();
        let h = 0.5f64.sqrt();
        assert!((r.nodes()[0] + h).abs() < 1e-15 && (r.nodes()[1] - h).abs() < 1e-15);
        for w in r.weights() {
            assert!((w - PI.sqrt() / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn weight_sums_and_symmetry() {
        for order in [2, 3, 10, 24, 48, 80, 128, 256] {
            let r = gauss_hermite(order).unwrap();
            let sum = pairwise_sum(order, |i| r.weights()[i]);
            assert!((sum - PI.sqrt()).abs() <= 1e-14 * PI.sqrt(), "order {order}: {sum}");
            for i in 0..order {
                assert_eq!(r.nodes()[i], -r.nodes()[order - 1 - i]);
                assert!(r.weights()[i] > 0.0 && r.scaled_weights()[i] > 0.0);
            }
        }
    }

    #[test]
    fn moments_against_gamma() {
        // ∫ x^{2k} e^{−x²} = Γ(k + 1/2) = (2k−1)!! √π / 2^k
        let r = gauss_hermite(10).unwrap();
        let m8 = r.integrate_weighted(|x| x.powi(8));
        let expect = 105.0 * PI.sqrt() / 16.0;
        assert!((m8 - expect).abs() <= 1e-12 * expect);
        for d in 0..=6 {
            let r = gauss_hermite(4).unwrap();
            let m = r.integrate_weighted(|x| x.powi(d));
            let expect = if d % 2 == 1 {
                0.0
            } else {
                let k = d / 2;
                (1..=k).fold(PI.sqrt(), |acc, j| acc * (2 * j - 1) as f64 / 2.0)
            };
            assert!((m - expect).abs() <= 1e-13, "degree {d}");
        }
    }

    #[test]
    fn pairwise_matches_parallel() {
        let f = |i: usize| Complex64::new((i as f64).sin(), 1.0 / (1.0 + i as f64));
        let a = pairwise_sum(100_000, f);
        let b = par_pairwise_sum(100_000, f);
        assert_eq!(a, b);
    }

    #[test]
    fn scaled_gaussian() {
        let sigma = ScaleParam::new(2.5).unwrap();
        let rule = TensorRule::for_signals(1, 20, sigma).unwrap();
        let v = rule.integrate_1d_centered(1.5, |t| Complex64::from((-2.5 * (t - 1.5) * (t - 1.5)).exp()));
        assert!((v.re - (PI / 2.5).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn dimension_checks() {
        let rule = TensorRule::for_signals(2, 10, ScaleParam::ONE).unwrap();
        assert!(inner_product_l2r(|_| 1.0.into(), |_| 1.0.into(), &rule).is_err());
        assert!(TensorRule::new(3, gauss_hermite(4).unwrap(), vec![1.0; 3]).is_err());
        assert!(TensorRule::new(1, gauss_hermite(4).unwrap(), vec![0.0]).is_err());
    }

    #[test]
    fn nan_is_flagged() {
        let rule = TensorRule::for_signals(1, 10, ScaleParam::ONE).unwrap();
        let r = inner_product_l2r(|_| Complex64::new(f64::NAN, 0.0), |_| 1.0.into(), &rule);
        assert_eq!(r, Err(Error::NonFinite("inner_product_l2r")));
    }

    #[test]
    fn node_budget() {
        let sigma = ScaleParam::ONE;
        assert!(matches!(
            PhaseSpaceGrid::new(91, sigma, false),
            Err(Error::NodeBudget { .. })
        ));
        assert!(PhaseSpaceGrid::new(90, sigma, false).is_ok());
    }

    #[test]
    fn four_dim_gaussian() {
        // ∫_ℝ⁴ e^{−|Z|²/2} dλ = 4π², and the 𝔹ℂ measure carries a factor 1/4
        let grid = PhaseSpaceGrid::new(12, ScaleParam::ONE, false).unwrap();
        let g = |z: Bicomplex| {
            let [a, b, c, d] = z.coords();
            Bicomplex::from((-0.25 * (a * a + b * b + c * c + d * d)).exp())
        };
        let v = inner_product_bc_c2(g, g, &grid).unwrap();
        let expect = BC_MEASURE_SCALE * 4.0 * PI * PI;
        assert!((v - Bicomplex::from(expect)).max_abs() < 1e-13);
    }

    #[test]
    fn sampled_slices_match_pointwise() {
        let grid = PhaseSpaceGrid::new(6, ScaleParam::ONE, false).unwrap();
        let f = |z: Bicomplex| z * z.bar() + Bicomplex::J;
        let direct = grid.sample(f);
        let sliced = grid.sample_slices(|a, c, out| {
            let n = grid.n();
            let x = grid.axis();
            for b in 0..n {
                for d in 0..n {
                    out[b * n + d] = f(Bicomplex::from_coords(x[a], x[b], x[c], x[d]));
                }
            }
        });
        assert_eq!(direct, sliced);
    }
}

//! Independent oracles for the special functions and transforms: symbolic
//! Rodrigues derivatives, explicit sums and closed-form integrals.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use bcfwt_core::fwt::{fwt1d, fwt1d_hermite_closed, fwt_bc_1d, elementary, hermite_signal, PhasePoint1D};
use bcfwt_core::hermite::{complex_hermite_poly, hermite_complex, hermite_complex_norm_sq, hermite_real};
use bcfwt_core::quadrature::{gauss_hermite, TensorRule};
use bcfwt_core::sampling::Sampler;
use bcfwt_core::{Bicomplex, Complex64, HermiteIndex, ScaleParam};

/// Polynomial in `z, z̄` as `(i, j) ↦ coefficient of z^i z̄^j`.
type Poly = BTreeMap<(usize, usize), f64>;

fn add(p: &mut Poly, key: (usize, usize), c: f64) {
    *p.entry(key).or_insert(0.0) += c;
}

/// `e^{α z z̄} ∂_{z̄} (P e^{−α z z̄}) = ∂_{z̄} P − α z P`.
fn d_zbar(p: &Poly, alpha: f64) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), &c) in p {
        if j > 0 {
            add(&mut out, (i, j - 1), c * j as f64);
        }
        add(&mut out, (i + 1, j), -alpha * c);
    }
    out
}

/// `e^{α z z̄} ∂_z (P e^{−α z z̄}) = ∂_z P − α z̄ P`.
fn d_z(p: &Poly, alpha: f64) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), &c) in p {
        if i > 0 {
            add(&mut out, (i - 1, j), c * i as f64);
        }
        add(&mut out, (i, j + 1), -alpha * c);
    }
    out
}

fn rodrigues_poly(m: usize, n: usize, alpha: f64) -> Poly {
    let mut p = Poly::from([((0, 0), 1.0)]);
    for _ in 0..m {
        p = d_zbar(&p, alpha);
    }
    for _ in 0..n {
        p = d_z(&p, alpha);
    }
    let sign = if (m + n).is_multiple_of(2) { 1.0 } else { -1.0 };
    p.values_mut().for_each(|c| *c *= sign);
    p
}

fn eval_poly(p: &Poly, z: Complex64) -> Complex64 {
    p.iter().map(|(&(i, j), &c)| z.powu(i as u32) * z.conj().powu(j as u32) * c).sum()
}

#[test]
fn complex_hermite_matches_rodrigues() {
    let mut s = Sampler::new(11);
    for alpha in [0.5, 1.0, 2.0] {
        let a = ScaleParam::new(alpha).unwrap();
        for m in 0..=6 {
            for n in 0..=(6 - m) {
                let p = rodrigues_poly(m, n, alpha);
                for _ in 0..5 {
                    let z = s.complex(1.5);
                    let want = eval_poly(&p, z) * (-0.5 * alpha * z.norm_sqr()).exp();
                    let got = hermite_complex(HermiteIndex { m, n }, a, z);
                    let scale = want.norm().max(1.0);
                    assert!((got - want).norm() <= 1e-12 * scale, "m={m} n={n} α={alpha}");
                }
            }
        }
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[test]
fn complex_hermite_explicit_sum() {
    let a = 0.75;
    let alpha = ScaleParam::new(a).unwrap();
    let z = Complex64::new(0.4, -1.3);
    for m in 0..=5 {
        for n in 0..=5 {
            let want: Complex64 = (0..=m.min(n))
                .map(|k| {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    z.powu((m - k) as u32)
                        * z.conj().powu((n - k) as u32)
                        * (sign * factorial(k) * binom(m, k) * binom(n, k) * a.powi((m + n - k) as i32))
                })
                .sum();
            let got = complex_hermite_poly(HermiteIndex { m, n }, alpha, z);
            assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0));
        }
    }
}

#[test]
fn complex_hermite_norms() {
    for alpha in [0.5, 1.0, 2.0] {
        let a = ScaleParam::new(alpha).unwrap();
        for m in 0..=4 {
            for n in 0..=4 {
                let want = PI * alpha.powi((m + n) as i32 - 1) * factorial(m) * factorial(n);
                let got = hermite_complex_norm_sq(HermiteIndex { m, n }, a).unwrap();
                assert!((got - want).abs() <= 1e-10 * want);
            }
        }
    }
}

/// `(−1)ⁿ e^{σt²/2} dⁿ/dtⁿ e^{−σt²}` through the polynomial recursion
/// `P_{k+1} = P_k′ − 2σ t P_k`.
fn real_rodrigues(n: usize, sigma: f64, t: f64) -> f64 {
    let mut p = vec![1.0];
    for _ in 0..n {
        let mut next = vec![0.0; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            if i > 0 {
                next[i - 1] += c * i as f64;
            }
            next[i + 1] -= 2.0 * sigma * c;
        }
        p = next;
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let poly: f64 = p.iter().rev().fold(0.0, |acc, c| acc * t + c);
    sign * poly * (-0.5 * sigma * t * t).exp()
}

#[test]
fn real_hermite_matches_rodrigues() {
    for sigma in [0.5, 1.0, 2.0] {
        let s = ScaleParam::new(sigma).unwrap();
        for n in 0..=10 {
            for t in [-2.3, -0.7, 0.0, 0.4, 1.9] {
                let want = real_rodrigues(n, sigma, t);
                let got = hermite_real(n, s, t);
                assert!((got - want).abs() <= 1e-11 * want.abs().max(1.0), "n={n} t={t}");
            }
        }
    }
}

#[test]
fn gauss_hermite_moments() {
    // ∫ t^{2k} e^{−t²} dt = Γ(k + 1/2)
    let rule = gauss_hermite(20).unwrap();
    let mut gamma = PI.sqrt();
    for k in 0..20 {
        let got = rule.integrate_weighted(|t| t.powi(2 * k));
        assert!((got - gamma).abs() <= 1e-12 * gamma, "k={k}");
        gamma *= k as f64 + 0.5;
    }
}

#[test]
fn gaussian_pair_closed_form() {
    // V^σ(g, g)(p, q) with g = e^{−σt²/2}:
    // √(σ/2π) ∫ e^{iσ(t−p/2)q} e^{−σt²/2} e^{−σ(t−p)²/2} dt = √(1/2) e^{−σ(p²+q²)/4}
    let mut s = Sampler::new(3);
    for sigma in [0.5, 1.0, 2.0] {
        let sg = ScaleParam::new(sigma).unwrap();
        let rule = TensorRule::for_signals(1, 80, sg).unwrap();
        let g = hermite_signal(0, sg);
        for _ in 0..10 {
            let (p, q) = (s.uniform(-2.0, 2.0), s.uniform(-2.0, 2.0));
            let want = (0.5f64).sqrt() * (-0.25 * sigma * (p * p + q * q)).exp();
            let got = fwt1d(&*g, &*g, sg, PhasePoint1D::new(p, q), &rule).unwrap();
            assert!((got - want).norm() <= 1e-13);
            let closed = fwt1d_hermite_closed(HermiteIndex { m: 0, n: 0 }, sg, PhasePoint1D::new(p, q));
            assert!((closed - want).norm() <= 1e-14);
        }
    }
}

#[test]
fn bicomplex_gaussian_pair() {
    // both components Gaussian: √(2σ/π) · √(1/2) e^{−σ(|w⁺|²+|w⁻|²)/4}
    let sigma = ScaleParam::ONE;
    let rule = TensorRule::for_signals(1, 80, sigma).unwrap();
    let f = elementary(0, 0, sigma);
    let z = Bicomplex::from_coords(0.3, -0.8, 1.2, 0.1);
    let w = z.companion();
    let want = (1.0 / PI).sqrt() * (-0.25 * (w.w_plus.norm_sqr() + w.w_minus.norm_sqr())).exp();
    let got = fwt_bc_1d(&f, &f, sigma, z, &rule).unwrap();
    assert!((got - Bicomplex::from(want)).max_abs() <= 1e-14);
    let origin = fwt_bc_1d(&f, &f, sigma, Bicomplex::ZERO, &rule).unwrap();
    assert!((origin - Bicomplex::from(1.0 / PI.sqrt())).max_abs() <= 1e-15);
}

#[test]
fn rescaling_identity() {
    // V^σ(h^σ_m, h^σ_n)(p, q) = σ^{(m+n)/2} V^1(h^1_m, h^1_n)(√σ p, √σ q)
    let mut s = Sampler::new(30);
    let one = ScaleParam::ONE;
    let rule1 = TensorRule::for_signals(1, 80, one).unwrap();
    for _ in 0..30 {
        let sigma = s.uniform(0.5, 2.5);
        let sg = ScaleParam::new(sigma).unwrap();
        let rule = TensorRule::for_signals(1, 80, sg).unwrap();
        let (m, n) = (s.index(4), s.index(4));
        let (p, q) = (s.uniform(-2.0, 2.0), s.uniform(-2.0, 2.0));
        let lhs = fwt1d(&*hermite_signal(m, sg), &*hermite_signal(n, sg), sg, PhasePoint1D::new(p, q), &rule).unwrap();
        let rhs = fwt1d(
            &*hermite_signal(m, one),
            &*hermite_signal(n, one),
            one,
            PhasePoint1D::new(sigma.sqrt() * p, sigma.sqrt() * q),
            &rule1,
        )
        .unwrap()
            * sigma.powf((m + n) as f64 / 2.0);
        let scale = (sigma.powi((m + n) as i32) * factorial(m) * factorial(n) * 2f64.powi((m + n) as i32)).sqrt();
        assert!((lhs - rhs).norm() <= 1e-8 * scale.max(lhs.norm()));
    }
}

use std::f64::consts::PI;

use bcfwt_core::bargmann::{
    four_index_basis, kernel_k, phi_n, polyanalytic_order, psi_mn, psi_mn_printed, psi_mn_stripped,
    psi_mn_via_transform, strictness_projection, strictness_witness, surjectivity_check, tensor_product_misfit,
    transform_s0, window_remark_display, window_remark_ratio, Direction, Family, FourIndex, KernelVariant,
};
use bcfwt_core::fwt::{complex_hermite_bc, elementary, fwt_bc_2d, moyal_check_1d, moyal_check_2d};
use bcfwt_core::quadrature::{BCFunction2D, PhaseSpaceGrid, TensorRule};
use bcfwt_core::report::Orders;
use bcfwt_core::sampling::Sampler;
use bcfwt_core::suites::{self, Settings};
use bcfwt_core::{Bicomplex, Complex64, Error, HermiteIndex, Hyperbolic, ScaleParam};

const S: ScaleParam = ScaleParam::ONE;

fn settings(order4d: usize) -> Settings {
    Settings {
        orders: Orders {
            order1d: 80,
            order2d: 48,
            order4d,
        },
        ..Default::default()
    }
}

#[test]
fn phi_values() {
    let v = phi_n(0, S, Bicomplex::ZERO);
    assert!((v - Bicomplex::from(PI.powf(-0.75))).max_abs() < 1e-15);
    let grid = PhaseSpaceGrid::new(20, S, false).unwrap();
    let f: Vec<_> = (0..=3).map(|n| grid.sample(|z| phi_n(n, S, z))).collect();
    for m in 0..=3 {
        for n in 0..=3 {
            if m != n {
                let g = grid.inner(&f[m], &f[n]).unwrap();
                assert!(g.max_abs() <= 1e-8);
            }
        }
    }
}

#[test]
fn kernel_at_zero_is_envelope() {
    let mut s = Sampler::new(1);
    for _ in 0..10 {
        let z = s.bicomplex(2.0);
        let env = (-0.5 * z.companion().mixed_abs_sq()).exp();
        for v in KernelVariant::ALL {
            assert!((kernel_k(S, z, Bicomplex::ZERO, v) - Bicomplex::from(env)).max_abs() < 1e-15);
        }
    }
}

#[test]
fn s0_of_gaussian_at_origin() {
    for sigma in [0.5, 1.0, 2.0] {
        let sg = ScaleParam::new(sigma).unwrap();
        let rule = TensorRule::for_signals(1, 80, sg).unwrap();
        let v = transform_s0(&elementary(0, 0, sg), sg, Bicomplex::ZERO, &rule).unwrap();
        let want = (sigma / PI).powf(0.75);
        assert!((v - Bicomplex::from(want)).max_abs() < 1e-14);
    }
}

#[test]
fn psi_two_paths() {
    let mut s = Sampler::new(20);
    for _ in 0..20 {
        let z = s.bicomplex(1.5);
        for m in 0..=3 {
            for n in 0..=3 {
                let idx = HermiteIndex { m, n };
                let a = psi_mn(idx, S, z);
                let b = psi_mn_via_transform(idx, S, z);
                assert!((a - b).max_abs() <= 1e-10 * a.max_abs().max(1e-2));
            }
        }
    }
}

#[test]
fn printed_psi_ratio_is_not_constant() {
    let idx = HermiteIndex { m: 1, n: 1 };
    let ratio = |z: Bicomplex| (psi_mn_printed(idx, S, z).plus() / psi_mn(idx, S, z).plus()).norm();
    let a = ratio(Bicomplex::from_coords(0.2, 0.1, 0.3, 0.0));
    let b = ratio(Bicomplex::from_coords(1.4, -0.9, 0.3, 0.0));
    assert!((a - b).abs() > 1e-2);
}

#[test]
fn psi_cross_level_orthogonality() {
    let g = suites::gram(Family::Psi, 2, &settings(24)).unwrap();
    assert_eq!(g.labels.len(), 9);
    assert!(g.deviation <= 1e-6, "{}", g.deviation);
}

#[test]
fn four_index_values() {
    let rule = TensorRule::for_signals(2, 48, S).unwrap();
    let v = four_index_basis(FourIndex::new(0, 0, 0, 0).unwrap(), S, Bicomplex::ZERO, &rule).unwrap();
    assert!((v - Bicomplex::from(PI / (2.0 * PI).sqrt())).max_abs() < 1e-14);
}

#[test]
fn four_index_not_factorizable() {
    let rule = TensorRule::for_signals(2, 48, S).unwrap();
    let axis = [-1.5, -0.5, 0.5, 1.5];
    let fit: Vec<Bicomplex> = (0..256)
        .map(|i| Bicomplex::from_coords(axis[i / 64], axis[(i / 16) % 4], axis[(i / 4) % 4], axis[i % 4]))
        .collect();
    let mut s = Sampler::new(5);
    let test: Vec<Bicomplex> = (0..5).map(|_| s.bicomplex(1.0)).collect();
    let misfit = tensor_product_misfit(FourIndex::new(1, 1, 0, 1).unwrap(), S, 3, &fit, &test, &rule).unwrap();
    assert!(misfit > 1e-3, "{misfit}");
}

#[test]
fn surjectivity_proxy() {
    let rule = TensorRule::for_signals(2, 48, S).unwrap();
    let coeffs = [
        (HermiteIndex { m: 0, n: 0 }, Bicomplex::from_coords(1.0, 0.5, -0.2, 0.3)),
        (HermiteIndex { m: 1, n: 2 }, Bicomplex::from_coords(-0.4, 0.1, 0.7, 0.0)),
        (HermiteIndex { m: 2, n: 1 }, Bicomplex::from_coords(0.2, -0.6, 0.0, 0.9)),
    ];
    let axis = [-1.0, 0.0, 1.0];
    let points: Vec<Bicomplex> = (0..81)
        .map(|i| Bicomplex::from_coords(axis[i / 27], axis[(i / 9) % 3], axis[(i / 3) % 3], axis[i % 3]))
        .collect();
    let reports = surjectivity_check(&coeffs, HermiteIndex { m: 1, n: 0 }, S, &points, &rule).unwrap();
    assert!(reports.iter().all(|r| r.passes(1e-6)));
}

#[test]
fn window_remark_random() {
    let rule = TensorRule::for_signals(2, 48, S).unwrap();
    let gauss = complex_hermite_bc(HermiteIndex { m: 0, n: 0 }, S);
    let mut s = Sampler::new(10);
    for _ in 0..10 {
        let z = s.bicomplex(1.5);
        let terms: Vec<(Bicomplex, BCFunction2D)> = (0..2)
            .map(|_| {
                let idx = HermiteIndex {
                    m: s.index(2),
                    n: s.index(2),
                };
                (s.bicomplex(1.0), complex_hermite_bc(idx, S))
            })
            .collect();
        let phi = BCFunction2D::combination(&terms);
        let a = fwt_bc_2d(&phi, &gauss, S, z, &rule).unwrap();
        let b = window_remark_display(&phi, S, z, &rule).unwrap() * window_remark_ratio();
        assert!((a - b).max_abs() <= 1e-6 * a.max_abs().max(1e-3));
    }
}

#[test]
fn strictness() {
    assert_eq!(strictness_witness(2, 2, S, Bicomplex::ZERO), Err(Error::EqualIndices(2)));
    let at0 = strictness_witness(1, 0, S, Bicomplex::ZERO).unwrap();
    assert_eq!(at0.plus(), Complex64::new(0.0, 0.0));

    let norm = |order| {
        let grid = PhaseSpaceGrid::new(order, S, false).unwrap();
        let f = grid.sample(|z| strictness_witness(2, 0, S, z).unwrap());
        Hyperbolic::from_bicomplex_re(&grid.inner(&f, &f).unwrap())
    };
    let (a, b) = (norm(20), norm(24));
    assert!((a.a_plus - b.a_plus).abs() <= 1e-6 * b.a_plus);
    assert!((a.a_minus - b.a_minus).abs() <= 1e-6 * b.a_minus);
    // ‖σ²(w⁻)² e^{…}‖² = 8π², ‖e^{…}‖² = π² with the 𝔹ℂ measure
    assert!((b.a_plus - 8.0 * PI * PI).abs() <= 1e-8 * b.a_plus);
    assert!((b.a_minus - PI * PI).abs() <= 1e-8 * b.a_minus);

    let grid = PhaseSpaceGrid::new(24, S, false).unwrap();
    let p = strictness_projection(2, 0, S, 4, &grid).unwrap();
    let frac = p.residual_fraction().unwrap();
    assert!(frac >= 0.5);
    assert!((frac - 8.0 / 9.0).abs() < 1e-6, "{frac}");
}

fn companion_power(n: u32) -> impl Fn(Bicomplex) -> Bicomplex {
    move |z: Bicomplex| {
        let w = z.companion();
        Bicomplex::from_components(w.w_plus.powu(n), w.w_minus.powu(n))
    }
}

#[test]
fn polyorder_examples() {
    let mut s = Sampler::new(8);
    for _ in 0..5 {
        let z0 = s.bicomplex_annulus(0.5, 1.5);
        for dir in [Direction::Bar, Direction::Dagger] {
            assert!(polyanalytic_order(companion_power(4), dir, 0, z0, 1e-2).unwrap() <= 1e-6);
        }
        let conj3 = |z: Bicomplex| {
            let w = z.companion();
            Bicomplex::from_components(w.w_plus.conj().powu(3), w.w_minus.conj().powu(3))
        };
        assert!(polyanalytic_order(conj3, Direction::Star, 2, z0, 0.05).unwrap() >= 1e-2);
        assert!(polyanalytic_order(conj3, Direction::Star, 3, z0, 0.05).unwrap() <= 1e-6);
    }
}

#[test]
fn stripped_psi_star_order_is_second_index() {
    let mut s = Sampler::new(9);
    for _ in 0..5 {
        let z0 = s.bicomplex_annulus(1.0, 2.0);
        for k in 0..=3 {
            for m in 1..=3 {
                let idx = HermiteIndex { m: k, n: m };
                let f = |z: Bicomplex| psi_mn_stripped(idx, S, z);
                assert!(polyanalytic_order(f, Direction::Star, m, z0, 0.05).unwrap() <= 1e-4);
                assert!(polyanalytic_order(f, Direction::Star, m - 1, z0, 0.05).unwrap() >= 1e-2);
            }
        }
    }
}

#[test]
fn fd_step_errors() {
    let f = companion_power(2);
    assert_eq!(
        polyanalytic_order(&f, Direction::Star, 0, Bicomplex::ONE, 2e-1),
        Err(Error::StepOutOfRange(2e-1))
    );
    assert_eq!(
        polyanalytic_order(&f, Direction::Star, 0, Bicomplex::ONE, 1e-4),
        Err(Error::StepOutOfRange(1e-4))
    );
}

#[test]
fn moyal_examples() {
    let grid = PhaseSpaceGrid::new(24, S, false).unwrap();
    let r1 = TensorRule::for_signals(1, 80, S).unwrap();
    // component-wise orthogonal windows: both sides vanish
    let (f, w1, w2) = (elementary(1, 2, S), elementary(0, 1, S), elementary(1, 0, S));
    let r = moyal_check_1d(&f, &w1, &f, &w2, S, &grid, &r1).unwrap();
    assert!(r.rhs.abs() < 1e-14 && r.passes(1e-12));

    let r2 = TensorRule::for_signals(2, 48, S).unwrap();
    let g = complex_hermite_bc(HermiteIndex { m: 0, n: 0 }, S);
    assert!(moyal_check_2d(&g, &g, &g, &g, S, &grid, &r2).unwrap().passes(1e-8));
    let h = complex_hermite_bc(HermiteIndex { m: 1, n: 0 }, S);
    let r = moyal_check_2d(&g, &g, &g, &h, S, &grid, &r2).unwrap();
    assert!(r.passes(1e-12));

    let reports = suites::moyal2d(S, 7, 10, 1, &settings(24)).unwrap();
    assert!(reports.iter().all(|r| r.passes(1e-6)));
}

#[test]
fn node_budget_guard() {
    assert!(matches!(PhaseSpaceGrid::new(91, S, false), Err(Error::NodeBudget { .. })));
}

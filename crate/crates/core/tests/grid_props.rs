mod common;

use common::*;
use proptest::prelude::*;
use triwave::grid::{Discretization, Field};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integrate_is_linear(seed in 0u64..10_000, a in -5.0f64..5.0, b in -5.0f64..5.0, dim in 1usize..=3, d in 0usize..2) {
        let g = grid(dim, 4.0, 16, DISCS[d]);
        let f = noise(&g, seed);
        let h = noise(&g, seed + 1);
        let mut comb = f.scaled(a);
        comb.axpy(b, &h);
        let lhs = comb.integrate();
        let rhs = a * f.integrate() + b * h.integrate();
        let scale = a.abs() * f.map(f64::abs).integrate() + b.abs() * h.map(f64::abs).integrate();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * scale.max(1.0));
    }

    #[test]
    fn integrate_is_monotone(seed in 0u64..10_000, shift in 0.0f64..2.0) {
        let g = grid(2, 3.0, 16, Discretization::FdDirichlet);
        let f = noise(&g, seed);
        let bump = f.map(|v| v + shift);
        prop_assert!(f.integrate() <= bump.integrate());
        // pointwise dominance through abs
        prop_assert!(f.integrate() <= f.abs().integrate());
    }

    #[test]
    fn laplacian_is_self_adjoint(seed in 0u64..10_000, dim in 1usize..=3, d in 0usize..2) {
        let g = grid(dim, 5.0, 16, DISCS[d]);
        let f = noise(&g, seed);
        let h = noise(&g, seed + 7);
        let lhs = h.inner(&f.laplacian());
        let rhs = f.inner(&h.laplacian());
        // the pairing is against Δ, so scale by the operator norm as well
        let scale = f.l2_norm() * h.l2_norm() * 4.0 * dim as f64 / g.spacing().powi(2);
        prop_assert!((lhs - rhs).abs() < 1e-12 * scale, "{lhs} {rhs}");
    }

    #[test]
    fn summation_by_parts(seed in 0u64..10_000, dim in 1usize..=3, d in 0usize..2) {
        let g = grid(dim, 5.0, 16, DISCS[d]);
        let f = noise(&g, seed);
        let k = f.grad_sq_integral();
        let pair = -f.inner(&f.laplacian());
        prop_assert!(k >= 0.0);
        prop_assert!(rel(k, pair) < 1e-10, "{k} {pair}");
    }

    #[test]
    fn spectral_round_trip(seed in 0u64..10_000, dim in 1usize..=3, d in 0usize..2) {
        let g = grid(dim, 2.0, 16, DISCS[d]);
        let f = noise(&g, seed);
        let back = g.inverse_transform(&g.forward_transform(f.values()));
        let err = back.iter().zip(f.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-12 * f.max_abs());
    }
}

#[test]
fn grad_sq_vanishes_only_for_constants_or_zero() {
    let sp = grid(2, 3.0, 16, Discretization::SpectralPeriodic);
    assert!(Field::constant(sp.clone(), 2.5).grad_sq_integral().abs() < 1e-24);
    let fd = grid(2, 3.0, 16, Discretization::FdDirichlet);
    assert!(Field::constant(fd.clone(), 2.5).grad_sq_integral() > 0.0);
    assert_eq!(Field::zeros(fd).grad_sq_integral(), 0.0);
}

#[test]
fn reductions_are_bit_reproducible() {
    let g = grid(3, 4.0, 24, Discretization::SpectralPeriodic);
    let f = noise(&g, 3);
    let a = (f.integrate(), f.grad_sq_integral(), f.lq_power(2.7));
    let b = (f.clone().integrate(), f.clone().grad_sq_integral(), f.clone().lq_power(2.7));
    assert_eq!(a, b);
    // reduction order is fixed, so a thread pool of any size gives the same bits
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let c = pool.install(|| (f.integrate(), f.grad_sq_integral(), f.lq_power(2.7)));
    assert_eq!(a, c);
}

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use specmeans::spaces::{
    besov_norm_lp, besov_norm_modulus, build_partition, classical_besov_norm, liouville_norm, modulus_of_continuity,
    nikolskii_norm,
};
use specmeans::*;

fn grid(dim: usize, n: usize) -> GridSpec {
    GridSpec::new(dim, n, 2.0 * PI).unwrap()
}

fn from_values(spec: GridSpec, re: &[f64], im: &[f64]) -> GridFunction {
    let v = (0..spec.len())
        .map(|i| Complex64::new(re[i % re.len()], im[(i * 7 + 3) % im.len()]))
        .collect();
    GridFunction::new(spec, v).unwrap()
}

/// Small trig polynomial with a smooth envelope, sampled on `spec`.
fn smooth_field(spec: GridSpec, coef: &[f64]) -> GridFunction {
    GridFunction::from_real_fn(spec, |x| {
        let mut v = 0.0;
        for (k, c) in coef.iter().enumerate() {
            let kk = (k + 1) as f64;
            v += c * (kk * x[0] + 0.3 * kk).cos();
            if x.len() > 1 {
                v += 0.5 * c * (kk * x[1]).sin();
            }
        }
        v * (-x.iter().map(|t| t * t).sum::<f64>()).exp()
    })
    .unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip_and_parseval(
        dim in 1usize..=2,
        log_n in 3u32..=8,
        re in prop::collection::vec(-1.0f64..1.0, 1..64),
        im in prop::collection::vec(-1.0f64..1.0, 1..64),
        period in 0.5f64..40.0,
    ) {
        let spec = GridSpec::new(dim, 1 << log_n, period).unwrap();
        let f = from_values(spec, &re, &im);
        let s = forward_transform(&f);
        let back = inverse_transform(&s);
        let scale = f.max_abs().max(1e-300);
        prop_assert!(back.sub(&f).unwrap().max_abs() / scale <= 1e-12);
        let l2 = lp_norm(&f, 2.0).unwrap();
        prop_assert!(rel(spectral_l2_norm(&s), l2) <= 1e-10);
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        re in prop::collection::vec(-1.0f64..1.0, 1..40),
        im in prop::collection::vec(-1.0f64..1.0, 1..40),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let spec = grid(1, 64);
        let f = from_values(spec, &re, &im);
        let g = from_values(spec, &im, &re);
        let h = smooth_field(spec, &[1.0, 0.5]);
        let fg = pair(&f, &g).unwrap();
        prop_assert!((fg - pair(&g, &f).unwrap()).norm() <= 1e-12 * (1.0 + fg.norm()));
        let ca = Complex64::new(a, 0.0);
        let cb = Complex64::new(b, 0.0);
        let lhs = pair(&f.scale(ca).add(&g.scale(cb)).unwrap(), &h).unwrap();
        let rhs = ca * pair(&f, &h).unwrap() + cb * pair(&g, &h).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * (1.0 + lhs.norm()));
    }

    #[test]
    fn lp_norm_axioms(
        re in prop::collection::vec(-1.0f64..1.0, 1..40),
        im in prop::collection::vec(-1.0f64..1.0, 1..40),
        c in -5.0f64..5.0,
        p in prop_oneof![Just(1.0), Just(2.0), 1.0f64..8.0, Just(f64::INFINITY)],
    ) {
        let spec = grid(1, 32);
        let f = from_values(spec, &re, &im);
        let g = from_values(spec, &im, &re);
        let nf = lp_norm(&f, p).unwrap();
        let ng = lp_norm(&g, p).unwrap();
        prop_assert!(nf >= 0.0);
        prop_assert!(rel(lp_norm(&f.scale(Complex64::new(c, 0.0)), p).unwrap(), c.abs() * nf) <= 1e-12 || c == 0.0);
        prop_assert!(lp_norm(&f.add(&g).unwrap(), p).unwrap() <= nf + ng + 1e-12);
    }

    #[test]
    fn symbol_homogeneity_and_positivity(
        y in prop::collection::vec(-10.0f64..10.0, 1..=3),
        lambda in 0.01f64..100.0,
        kind in 0usize..3,
    ) {
        let sigma = match kind {
            0 => HomogeneousSymbol::laplacian(),
            1 => HomogeneousSymbol::radial(1.5).unwrap(),
            _ => HomogeneousSymbol::quartic(),
        };
        let v = sigma.evaluate(&y);
        let scaled: Vec<f64> = y.iter().map(|t| lambda * t).collect();
        let m = sigma.degree();
        prop_assert!(rel(sigma.evaluate(&scaled), lambda.powf(m) * v) <= 1e-10 || v == 0.0);
        if y.iter().any(|t| *t != 0.0) {
            prop_assert!(v > 0.0);
        }
    }

    #[test]
    fn riesz_profile_continuity(s in 0.01f64..4.0, x in 0.0f64..0.999) {
        let p = make_riesz_mean(s).unwrap();
        let v = p.evaluate(x);
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert_eq!(p.evaluate(1.0), 0.0);
        prop_assert_eq!(p.evaluate(1.0 + x), 0.0);
        prop_assert!((p.evaluate(x + 1e-9) - v).abs() <= 1e-6);
    }

    #[test]
    fn rescaled_profiles_keep_decay_constants(t in 0.05f64..=1.0) {
        let g = make_gaussian_mean();
        let base = check_derivative_decay(&g, 2);
        let scaled = check_derivative_decay(&g.rescaled(t).unwrap(), 2);
        prop_assert!(base.pass && scaled.pass);
        for (a, b) in scaled.constants.iter().zip(&base.constants) {
            prop_assert!(*a <= b * (1.0 + 1e-6) + 1e-12, "{} > {}", a, b);
        }
    }

    #[test]
    fn spectral_means_act_diagonally(
        k0 in -15i64..16,
        k1 in -15i64..16,
        t in 1e-3f64..1.0,
        which in 0usize..4,
        sym in 0usize..3,
    ) {
        let spec = grid(2, 32);
        let p = match which {
            0 => make_gaussian_mean(),
            1 => make_riesz_mean(1.0).unwrap(),
            2 => make_riesz_mean(0.0).unwrap(),
            _ => make_smooth_cutoff_mean(0.5).unwrap(),
        };
        let sigma = match sym {
            0 => HomogeneousSymbol::laplacian(),
            1 => HomogeneousSymbol::radial(1.0).unwrap(),
            _ => HomogeneousSymbol::quartic(),
        };
        let e = GridFunction::exponential(spec, &[k0, k1]);
        let y = [k0 as f64, k1 as f64];
        let expect = e.scale(Complex64::new(p.evaluate(t * sigma.evaluate(&y)), 0.0));
        let got = spectral_mean(&p, t, &sigma, &e).unwrap();
        prop_assert!(got.sub(&expect).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn spectral_means_are_self_adjoint(
        c1 in prop::collection::vec(-1.0f64..1.0, 1..6),
        c2 in prop::collection::vec(-1.0f64..1.0, 1..6),
        t in 1e-3f64..1.0,
    ) {
        let spec = grid(1, 64);
        let f = smooth_field(spec, &c1);
        let g = smooth_field(spec, &c2);
        let sigma = HomogeneousSymbol::laplacian();
        for p in [make_gaussian_mean(), make_riesz_mean(1.5).unwrap()] {
            let a = pair(&spectral_mean(&p, t, &sigma, &f).unwrap(), &g).unwrap();
            let b = pair(&f, &spectral_mean(&p, t, &sigma, &g).unwrap()).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn gaussian_semigroup(
        c in prop::collection::vec(-1.0f64..1.0, 1..6),
        t in 1e-3f64..0.5,
        s in 1e-3f64..0.5,
    ) {
        let spec = grid(1, 64);
        let f = smooth_field(spec, &c);
        let sigma = HomogeneousSymbol::laplacian();
        let g = make_gaussian_mean();
        let two = spectral_mean(&g, t, &sigma, &spectral_mean(&g, s, &sigma, &f).unwrap()).unwrap();
        let one = spectral_mean(&g, t + s, &sigma, &f).unwrap();
        prop_assert!(two.sub(&one).unwrap().max_abs() <= 1e-10 * (1.0 + f.max_abs()));
    }

    #[test]
    fn sharp_projector_is_idempotent(c in prop::collection::vec(-1.0f64..1.0, 1..6), t in 1e-3f64..0.5) {
        let spec = grid(1, 64);
        let f = smooth_field(spec, &c);
        let sigma = HomogeneousSymbol::laplacian();
        let p = make_riesz_mean(0.0).unwrap();
        let once = spectral_mean(&p, t, &sigma, &f).unwrap();
        let twice = spectral_mean(&p, t, &sigma, &once).unwrap();
        prop_assert!(twice.sub(&once).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn partition_identity(dim in 1usize..=3, log_n in 3u32..=6, period in 1.0f64..50.0) {
        let spec = GridSpec::new(dim, 1 << log_n, period).unwrap();
        let part = build_partition(spec).unwrap();
        prop_assert!(part.partition_defect() <= 1e-10);
        prop_assert!(spec.max_frequency() < 2f64.powi(part.k_max() as i32));
    }

    #[test]
    fn modulus_bounded_by_binomial_mass(
        c in prop::collection::vec(-1.0f64..1.0, 1..6),
        m in 1u32..4,
        t in 0.01f64..3.0,
    ) {
        let spec = grid(1, 64);
        let f = smooth_field(spec, &c);
        let w = modulus_of_continuity(&f, t, m, 2.0).unwrap();
        prop_assert!(w.value <= 2f64.powi(m as i32) * lp_norm(&f, 2.0).unwrap() * (1.0 + 1e-12));
    }
}

/// Homogeneity and triangle inequality for the five Besov/Liouville routes.
mod norm_axioms {
    use super::*;

    fn routes(f: &GridFunction) -> Vec<f64> {
        let bp = BesovParams::new(0.7, 2.0, 2.0).unwrap();
        let part = build_partition(*f.spec()).unwrap();
        vec![
            liouville_norm(f, 0.7, 2.0).unwrap(),
            besov_norm_lp(f, &bp, &part).unwrap(),
            besov_norm_modulus(f, &bp, 2, 0).unwrap(),
            classical_besov_norm(f, &bp).unwrap(),
            nikolskii_norm(f, 0.7, 2.0).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn homogeneous_and_subadditive(
            c1 in prop::collection::vec(-1.0f64..1.0, 1..6),
            c2 in prop::collection::vec(-1.0f64..1.0, 1..6),
            lambda in -4.0f64..4.0,
        ) {
            let spec = grid(1, 64);
            let f = smooth_field(spec, &c1);
            let g = smooth_field(spec, &c2);
            let nf = routes(&f);
            let ng = routes(&g);
            let nsum = routes(&f.add(&g).unwrap());
            let nscaled = routes(&f.scale(Complex64::new(lambda, 0.0)));
            for i in 0..nf.len() {
                prop_assert!(nsum[i] <= nf[i] + ng[i] + 1e-10, "route {}", i);
                prop_assert!((nscaled[i] - lambda.abs() * nf[i]).abs() <= 1e-10 * (1.0 + nf[i]), "route {}", i);
            }
        }
    }
}

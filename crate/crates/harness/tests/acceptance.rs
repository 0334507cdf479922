//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs as a plain binary (`harness = false`).

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specmeans::hypotheses::{Target, TheoremId};
use specmeans::spaces::{
    annulus_profile, besov_norm_lp, besov_norm_modulus, build_partition, classical_besov_norm, liouville_norm,
    nikolskii_norm,
};
use specmeans::*;
use specmeans_harness::config::{ExperimentConfig, ExperimentKind, SpaceParams};
use specmeans_harness::experiments::desk_space;
use specmeans_harness::{make_signal, run_convergence_distribution, run_convergence_function, run_equivalence, Signal};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn random_field(spec: GridSpec, rng: &mut ChaCha8Rng) -> GridFunction {
    let v = (0..spec.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    GridFunction::new(spec, v).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_round = 0.0f64;
    let mut worst_parseval = 0.0f64;
    let mut slowest = Duration::ZERO;
    for dim in [1, 2] {
        for n in [8, 16, 64, 128, 256] {
            for period in [1.0, 2.0 * PI, 37.5] {
                let spec = GridSpec::new(dim, n, period).unwrap();
                let f = random_field(spec, &mut rng);
                let start = Instant::now();
                let s = forward_transform(&f);
                let back = inverse_transform(&s);
                let round = back.sub(&f).unwrap().max_abs() / f.max_abs();
                let parseval = rel(spectral_l2_norm(&s), lp_norm(&f, 2.0).unwrap());
                slowest = slowest.max(start.elapsed());
                worst_round = worst_round.max(round);
                worst_parseval = worst_parseval.max(parseval);
            }
        }
    }
    outcome(
        worst_round <= 1e-12 && worst_parseval <= 1e-10 && slowest < Duration::from_secs(1),
        format!("round trip {worst_round:.2e}, Parseval {worst_parseval:.2e}, slowest check {slowest:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let dim = rng.gen_range(1..=3);
        let n = [8, 16, 32][rng.gen_range(0..3)];
        let spec = GridSpec::new(dim, n, rng.gen_range(1.0..20.0)).unwrap();
        let half = (n / 2) as i64;
        let k: Vec<i64> = (0..dim).map(|_| rng.gen_range(-half..half)).collect();
        let p = match rng.gen_range(0..3) {
            0 => make_gaussian_mean(),
            1 => make_riesz_mean(rng.gen_range(0.0..3.0)).unwrap(),
            _ => make_smooth_cutoff_mean(rng.gen_range(0.2..2.0)).unwrap(),
        };
        let sigma = match rng.gen_range(0..3) {
            0 => HomogeneousSymbol::laplacian(),
            1 => HomogeneousSymbol::radial(rng.gen_range(1.0..4.0)).unwrap(),
            _ => HomogeneousSymbol::quartic(),
        };
        let t = 10f64.powf(rng.gen_range(-4.0..0.0));
        let e = GridFunction::exponential(spec, &k);
        let y: Vec<f64> = k.iter().map(|&v| v as f64 * spec.frequency_step()).collect();
        let expect = e.scale(Complex64::new(p.evaluate(t * sigma.evaluate(&y)), 0.0));
        let got = spectral_mean(&p, t, &sigma, &e).unwrap();
        worst = worst.max(got.sub(&expect).unwrap().max_abs());
    }
    outcome(worst <= 1e-12, format!("max deviation {worst:.2e} over 100 exponentials"))
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    let mut support_violations = 0usize;
    for (dim, n, period) in [(1, 256, 2.0 * PI), (1, 64, 50.0), (2, 64, 2.0 * PI), (3, 32, 2.0 * PI), (2, 32, 3.0)] {
        let spec = GridSpec::new(dim, n, period).unwrap();
        let part = build_partition(spec).unwrap();
        worst = worst.max(part.partition_defect());
        for k in 1..=part.k_max() {
            let lo = 2f64.powi(k as i32 - 1);
            let hi = 2f64.powi(k as i32 + 1);
            for i in 0..spec.len() {
                let r = spec.frequency_norm(i);
                if (r <= lo || r >= hi) && part.shell(k)[i] != 0.0 {
                    support_violations += 1;
                }
            }
        }
    }
    outcome(
        worst <= 1e-10 && support_violations == 0,
        format!("max defect {worst:.2e}, shell support violations {support_violations}"),
    )
}

fn duality_corpus(spec: GridSpec) -> Vec<CompactDistribution> {
    let density = GridFunction::from_real_fn(spec, |x| (-4.0 * x[0] * x[0]).exp()).unwrap();
    vec![
        CompactDistribution::delta(&[0.0]),
        CompactDistribution::atom(&[0.4], &[2], Complex64::new(-0.5, 0.25)),
        CompactDistribution::new(
            vec![Atom {
                x: vec![-0.3],
                alpha: vec![1],
                c: Complex64::new(2.0, 0.0),
            }],
            Some(density),
        )
        .unwrap(),
    ]
}

fn criterion_4() -> Outcome {
    let spec = GridSpec::new(1, 128, 2.0 * PI).unwrap();
    let phi = GridFunction::from_real_fn(spec, |x| (-4.0 * x[0] * x[0]).exp() * (1.0 + x[0])).unwrap();
    let means = [
        make_gaussian_mean(),
        make_riesz_mean(0.0).unwrap(),
        make_riesz_mean(1.0).unwrap(),
        make_riesz_mean(2.5).unwrap(),
        make_smooth_cutoff_mean(0.5).unwrap(),
    ];
    let sigma = HomogeneousSymbol::laplacian();
    let mut worst = 0.0f64;
    let mut count = 0;
    for f in duality_corpus(spec) {
        for p in &means {
            for t in [0.3, 0.05, 0.01, 0.001] {
                worst = worst.max(verify_duality(p, t, &sigma, &f, &phi).unwrap());
                count += 1;
            }
        }
    }
    outcome(worst <= 1e-9, format!("max |<p(tA)f,phi> - <f,p(tA)phi>| = {worst:.2e} over {count} cases"))
}

/// `(2π)^{-1} h Σ_j u(x_j) e^{-iξ x_j}` by direct summation, `N = 1`.
fn direct_modes(u: &GridFunction) -> Vec<(f64, f64)> {
    let spec = u.spec();
    let n = spec.points_per_axis() as i64;
    (-n / 2..n / 2)
        .map(|k| {
            let xi = spec.frequency_step() * k as f64;
            let c: Complex64 = (0..spec.len())
                .map(|j| u.values()[j] * Complex64::from_polar(1.0, -xi * spec.point(j)[0]))
                .sum();
            (xi, (c * spec.spacing() / (2.0 * PI)).norm_sqr())
        })
        .collect()
}

/// Closed-form errors of the Gaussian mean, per mode, in `L_2^α` and in
/// the dyadic `B^α_{2,2}` norm built from the annulus profile directly.
fn gaussian_oracle(spec: GridSpec, modes: &[(f64, f64)], t: f64, alpha: f64) -> (f64, f64) {
    let weight = 2.0 * PI * spec.frequency_step();
    let damp = |xi: f64| (1.0 - (-t * xi * xi).exp()).powi(2);
    let liouville = (modes.iter().map(|(xi, a)| (1.0 + xi * xi).powf(alpha) * damp(*xi) * a).sum::<f64>() * weight).sqrt();
    let k_max = (spec.max_frequency().log2().ceil() + 1.0).max(1.0) as i32;
    let shell = |k: i32, xi: f64| annulus_profile(xi.abs() / 2f64.powi(k));
    let base = (modes
        .iter()
        .map(|(xi, a)| {
            let psi = 1.0 - (1..=k_max).map(|k| shell(k, *xi)).sum::<f64>();
            psi * psi * damp(*xi) * a
        })
        .sum::<f64>()
        * weight)
        .sqrt();
    let shells: f64 = (1..=k_max)
        .map(|k| {
            let e2 = modes.iter().map(|(xi, a)| shell(k, *xi).powi(2) * damp(*xi) * a).sum::<f64>() * weight;
            2f64.powf(2.0 * alpha * k as f64) * e2
        })
        .sum();
    (liouville, base + shells.sqrt())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    let mut config = ExperimentConfig::default();
    let spec = config.grid;
    let u = make_signal(&Signal::Bump, spec).unwrap();
    let modes = direct_modes(&u);
    let mut runs = Vec::new();
    for target in [Target::Liouville, Target::Besov] {
        config.space = desk_space(target);
        let r = run_convergence_function(&config).unwrap();
        runs.push(r);
    }
    let elapsed = start.elapsed();
    for (r, idx) in runs.iter().zip([0usize, 1]) {
        let errors: Vec<f64> = r.records.iter().map(|x| x.error).collect();
        let ratio = errors.last().unwrap() / errors[0];
        let oracle_dev = r
            .records
            .iter()
            .map(|x| {
                let o = gaussian_oracle(spec, &modes, x.t, 0.5);
                rel(x.error, if idx == 0 { o.0 } else { o.1 })
            })
            .fold(0.0, f64::max);
        let ok = strictly_decreasing(&errors) && ratio <= 1e-3 && oracle_dev <= 1e-8 && r.hypotheses.all_pass();
        pass &= ok;
        lines.push(format!(
            "{}: final/initial {ratio:.2e}, oracle dev {oracle_dev:.1e}, hypotheses {}",
            r.space,
            if r.hypotheses.all_pass() { "pass" } else { "FAIL" }
        ));
    }
    pass &= elapsed < Duration::from_secs(10);
    lines.push(format!("t {:.1e}..{:.2e}, {elapsed:.2?}", runs[0].records[0].t, runs[0].records.last().unwrap().t));
    outcome(pass, lines.join("; "))
}

fn criterion_6() -> Outcome {
    let mut config = ExperimentConfig {
        mean: "riesz:0".into(),
        theorem: TheoremId::T2,
        ..ExperimentConfig::default()
    };
    config.space = SpaceParams {
        alpha: 0.5,
        beta: 1.5,
        p: 2.0,
        p0: Some(2.0),
        alpha0: Some(0.6),
        tau: Some(0.5),
        ..SpaceParams::default()
    };
    let r = run_convergence_function(&config).unwrap();
    let reached = r.floor_validated && r.floor <= 2.0 * r.band_truncation.max(r.roundoff);
    let t2_ok = r.hypotheses.all_pass();
    config.theorem = TheoremId::T1;
    config.space.alpha0 = Some(0.5);
    let t1 = run_convergence_function(&config).unwrap();
    let decay_fails = t1
        .hypotheses
        .checks
        .iter()
        .any(|c| c.condition == "derivative decay" && !c.pass);
    outcome(
        reached && t2_ok && decay_fails && t1.label == "counterexample",
        format!(
            "T2 checks {}, floor {:.2e} (band {:.1e}, roundoff {:.1e}); T1 derivative decay {}",
            if t2_ok { "pass" } else { "FAIL" },
            r.floor,
            r.band_truncation,
            r.roundoff,
            if decay_fails { "fails as expected" } else { "UNEXPECTEDLY PASSES" }
        ),
    )
}

fn criterion_7() -> Outcome {
    let spec = GridSpec::new(1, 32, 8.0 * PI).unwrap();
    let config = ExperimentConfig {
        kind: ExperimentKind::ConvergeDistribution,
        grid: spec,
        distribution: Some(CompactDistribution::delta(&[0.0])),
        space: SpaceParams {
            target: Target::Distribution,
            alpha: 1.0,
            p: 2.0,
            ..SpaceParams::default()
        },
        ..ExperimentConfig::default()
    };
    let member = classify_membership(&CompactDistribution::delta(&[0.0]), 1.0, 2.0, &spec).unwrap();
    let r = run_convergence_distribution(&config).unwrap();
    let errors: Vec<f64> = r.records.iter().map(|x| x.error).collect();
    let weight = 2.0 * PI * spec.frequency_step();
    let n = spec.points_per_axis() as i64;
    let oracle_dev = r
        .records
        .iter()
        .map(|x| {
            let e2: f64 = (-n / 2..n / 2)
                .map(|k| {
                    let xi = k as f64 * spec.frequency_step();
                    (1.0 + xi * xi).recip() * (1.0 - (-x.t * xi * xi).exp()).powi(2) / (4.0 * PI * PI)
                })
                .sum::<f64>()
                * weight;
            rel(x.error, e2.sqrt())
        })
        .fold(0.0, f64::max);
    let slope = r.slope.unwrap_or(f64::NAN);
    outcome(
        member.member && strictly_decreasing(&errors) && (slope - 1.0).abs() <= 0.15 && oracle_dev <= 1e-8,
        format!(
            "member {}, slope {slope:.4} on {} points, oracle dev {oracle_dev:.1e}",
            member.member, r.slope_points
        ),
    )
}

fn criterion_8() -> Outcome {
    let base = GridSpec::new(1, 512, 2.0 * PI).unwrap();
    let d = CompactDistribution::delta(&[0.0]);
    let low = classify_membership(&d, 0.3, 2.0, &base).unwrap();
    let high = classify_membership(&d, 0.75, 2.0, &base).unwrap();
    outcome(
        !low.member && high.member && low.refinement_ratio > 1.2 && high.refinement_ratio < 1.02,
        format!(
            "alpha 0.3: ratio {:.4} member {}; alpha 0.75: ratio {:.4} member {}",
            low.refinement_ratio, low.member, high.refinement_ratio, high.member
        ),
    )
}

fn criterion_9() -> Outcome {
    let config = ExperimentConfig {
        kind: ExperimentKind::Equivalence,
        ..ExperimentConfig::default()
    };
    let r = run_equivalence(&config).unwrap();
    let lm = r.ratios.iter().find(|x| x.pair == "besov_lp/besov_modulus").unwrap();
    let stable = (lm.stability - 1.0).abs() <= 0.2 && lm.drift <= 0.2;
    outcome(
        lm.bracket <= 20.0 && stable && r.liouville_sobolev_deviation <= 1e-8 && r.corpus == 20,
        format!(
            "LP/modulus bracket {:.3} (n={}) -> {:.3} (n={}), drift {:.3}; Liouville/Sobolev dev {:.1e}",
            lm.bracket, r.points[0], lm.fine_bracket, r.points[1], lm.drift, r.liouville_sobolev_deviation
        ),
    )
}

fn criterion_10() -> Outcome {
    let spec = GridSpec::new(1, 128, 2.0 * PI).unwrap();
    let bp = BesovParams::new(0.7, 2.0, 2.0).unwrap();
    let part = build_partition(spec).unwrap();
    let routes = |f: &GridFunction| -> [f64; 5] {
        [
            liouville_norm(f, 0.7, 2.0).unwrap(),
            besov_norm_lp(f, &bp, &part).unwrap(),
            besov_norm_modulus(f, &bp, 2, 0).unwrap(),
            classical_besov_norm(f, &bp).unwrap(),
            nikolskii_norm(f, 0.7, 2.0).unwrap(),
        ]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut violations = 0;
    for i in 0..50u64 {
        let sig = |s| Signal::RandomBandlimited {
            seed: s,
            band: 1 + (s % 10) as usize,
        };
        let f = make_signal(&sig(1000 + i), spec).unwrap();
        let g = make_signal(&sig(2000 + i), spec).unwrap().scale(Complex64::new(rng.gen_range(0.1..10.0), 0.0));
        let lambda = rng.gen_range(-5.0..5.0);
        let nf = routes(&f);
        let ng = routes(&g);
        let nsum = routes(&f.add(&g).unwrap());
        let nscaled = routes(&f.scale(Complex64::new(lambda, 0.0)));
        for r in 0..5 {
            let slack = 1e-10 * nf[r].max(ng[r]).max(1.0);
            if nsum[r] > nf[r] + ng[r] + slack {
                violations += 1;
            }
            if (nscaled[r] - lambda.abs() * nf[r]).abs() > slack * lambda.abs().max(1.0) {
                violations += 1;
            }
        }
    }
    outcome(violations == 0, format!("{violations} violations over 50 pairs x 5 routes"))
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, args: &[&str]| -> Vec<u8> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_specmeans"))
            .args(args)
            .arg("--out")
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success(), "{args:?}: {status}");
        std::fs::read(path).unwrap()
    };
    let converge = ["converge", "--signal", "random_bandlimited:42:8", "--format", "csv"];
    let dist = ["converge-dist", "--grid", "1:32:8pi", "--alpha", "1", "--format", "csv"];
    let a = run("a.csv", &converge);
    let b = run("b.csv", &converge);
    let c = run("c.csv", &dist);
    let d = run("d.csv", &dist);
    outcome(
        a == b && c == d && !a.is_empty() && !c.is_empty(),
        format!("converge {} bytes, converge-dist {} bytes, byte-identical: {}", a.len(), c.len(), a == b && c == d),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("transform round trip and Parseval", criterion_1),
        ("diagonal action on exponentials", criterion_2),
        ("dyadic partition of unity", criterion_3),
        ("duality of distribution means", criterion_4),
        ("smooth-mean desk check", criterion_5),
        ("sharp projector desk check", criterion_6),
        ("delta convergence slope", criterion_7),
        ("membership classifier", criterion_8),
        ("norm equivalence", criterion_9),
        ("norm axioms", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} — {} [{:.2?}]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            start.elapsed()
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

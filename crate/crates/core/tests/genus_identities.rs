//! Identity tests for the genus families: Baker-Akhiezer addition laws,
//! Todd/degenerate closed forms, level-d structure, and monodromy factors.

use std::sync::Arc;

use genera_core::coeff::Coeff;
use genera_core::cx::Cx;
use genera_core::elliptic::Lattice;
use genera_core::genus::{todd_series, BakerAkhiezer, GenusFunction, Scalar};
use genera_core::series::TruncatedSeries;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Rat = BigRational;

const PREC: u32 = 256;

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn rq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn square_lattice() -> Arc<Lattice> {
    Arc::new(Lattice::normalized(Cx::i(PREC), PREC).unwrap())
}

fn generic_lattice() -> Arc<Lattice> {
    Arc::new(Lattice::normalized(Cx::from_f64(0.23, 1.12, PREC), PREC).unwrap())
}

fn sample_points(lat: &Lattice, count: usize, seed: u64) -> Vec<Cx> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = lat.omega1().abs() * rug::Float::with_val(PREC, 0.35);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let re: f64 = rng.gen_range(-1.0..1.0);
        let im: f64 = rng.gen_range(-1.0..1.0);
        let n2 = re * re + im * im;
        if n2 > 1.0 || n2 < 0.02 {
            continue;
        }
        out.push(Cx::from_f64(re, im, PREC).scale(&radius));
    }
    out
}

#[test]
fn baker_akhiezer_normalization() {
    let lat = square_lattice();
    let s = Cx::from_f64(1.1, 0.6, PREC);
    let phi = BakerAkhiezer::new(s, lat.clone()).unwrap();
    // t * Phi_s(t) -> 1 as t -> 0
    let t = lat.omega1().scale(&rug::Float::with_val(PREC, 1e-6));
    let v = phi.eval(&t).unwrap();
    assert!(
        (&(&t * &v) - &Cx::one(PREC)).abs().to_f64() < 1e-10,
        "normalization residual {:e}",
        (&(&t * &v) - &Cx::one(PREC)).abs().to_f64()
    );
    // Laurent series: valuation -1, leading coefficient 1, matches eval
    let series = phi.laurent_series(48).unwrap();
    assert_eq!(series.valuation(), -1);
    assert!((&series.coeff(-1) - &Cx::one(PREC)).abs().to_f64() < 1e-70);
    let t = Cx::from_f64(0.21, -0.13, PREC);
    let direct = phi.eval(&t).unwrap();
    let from_series = series.evaluate(&t).unwrap();
    assert!(
        (&direct - &from_series).abs().to_f64() < 1e-30,
        "series residual {:e}",
        (&direct - &from_series).abs().to_f64()
    );
}

#[test]
fn phi_zero_at_minus_s() {
    let lat = square_lattice();
    let s = Cx::from_f64(0.9, 0.5, PREC);
    let phi = BakerAkhiezer::new(s.clone(), lat.clone()).unwrap();
    let v = phi.eval(&s.neg_c()).unwrap();
    assert!(v.abs().to_f64() < 1e-70, "|Phi(-s)| = {:e}", v.abs().to_f64());
    // pole at the lattice errors out
    assert!(phi.eval(&lat.omega1().mul_int(2)).is_err());
}

#[test]
fn phi_minus_identity() {
    // Phi_s(x) Phi_s(-x) = wp(s) - wp(x) at 50 random (s, x)
    let lat = generic_lattice();
    let pts = sample_points(&lat, 100, 11);
    let mut worst = 0f64;
    for pair in pts.chunks_exact(2) {
        let (s, x) = (&pair[0], &pair[1]);
        let phi = BakerAkhiezer::new(s.clone(), lat.clone()).unwrap();
        let lhs = &phi.eval(x).unwrap() * &phi.eval(&x.neg_c()).unwrap();
        let rhs = &lat.wp(s).unwrap() - &lat.wp(x).unwrap();
        let r = (&lhs - &rhs).abs().to_f64();
        if r > worst {
            worst = r;
        }
    }
    assert!(worst < 1e-38, "worst residual {:e}", worst);
}

#[test]
fn phi_addition_law() {
    // Phi_s(x+y)(wp(y) - wp(x)) = Phi_s'(x)Phi_s(y) - Phi_s'(y)Phi_s(x)
    let lat = generic_lattice();
    let pts = sample_points(&lat, 150, 17);
    let mut worst = 0f64;
    for triple in pts.chunks_exact(3) {
        let (s, x, y) = (&triple[0], &triple[1], &triple[2]);
        if (&(x + y)).abs().to_f64() < 1e-3 {
            continue;
        }
        let phi = BakerAkhiezer::new(s.clone(), lat.clone()).unwrap();
        let lhs = &phi.eval(&(x + y)).unwrap() * &(&lat.wp(y).unwrap() - &lat.wp(x).unwrap());
        let rhs = &(&phi.eval_prime(x).unwrap() * &phi.eval(y).unwrap())
            - &(&phi.eval_prime(y).unwrap() * &phi.eval(x).unwrap());
        let r = (&lhs - &rhs).abs().to_f64();
        if r > worst {
            worst = r;
        }
    }
    assert!(worst < 1e-35, "worst residual {:e}", worst);
}

#[test]
fn phi_log_derivative_relation() {
    // (ln Phi_s)'(t) = (wp'(t) - wp'(s)) / (2 (wp(t) - wp(s)))
    let lat = generic_lattice();
    let pts = sample_points(&lat, 100, 23);
    let mut worst = 0f64;
    for pair in pts.chunks_exact(2) {
        let (s, t) = (&pair[0], &pair[1]);
        let phi = BakerAkhiezer::new(s.clone(), lat.clone()).unwrap();
        let lhs = &phi.eval_prime(t).unwrap() / &phi.eval(t).unwrap();
        let (wp_t, wpp_t) = lat.wp_both(t).unwrap();
        let (wp_s, wpp_s) = lat.wp_both(s).unwrap();
        let rhs = &(&wpp_t - &wpp_s) / &(&wp_t - &wp_s).mul_int(2);
        let r = (&lhs - &rhs).abs().to_f64();
        if r > worst {
            worst = r;
        }
    }
    assert!(worst < 1e-35, "worst residual {:e}", worst);
}

fn det3(m: [[Cx; 3]; 3]) -> Cx {
    let t1 = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
    let t2 = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
    let t3 = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
    &(&t1 - &t2) + &t3
}

/// Determinant form of Phi_s(x+y)/(Phi_s(x)Phi_s(y)); the bottom-right entry
/// selects between the wp'(s) reading and the literal wp(s) one.
fn phi_add2_det(lat: &Lattice, s: &Cx, x: &Cx, y: &Cx, use_wp_prime: bool) -> Cx {
    let one = Cx::one(PREC);
    let (wp_x, wpp_x) = lat.wp_both(x).unwrap();
    let (wp_y, wpp_y) = lat.wp_both(y).unwrap();
    let (wp_s, wpp_s) = lat.wp_both(s).unwrap();
    let corner = if use_wp_prime { wpp_s } else { wp_s.clone() };
    let num = det3([
        [one.clone(), one.clone(), one.clone()],
        [wp_x.clone(), wp_y.clone(), wp_s.clone()],
        [wpp_x, wpp_y, corner],
    ]);
    let den = det3([
        [one.clone(), one.clone(), one.clone()],
        [wp_x.clone(), wp_y.clone(), wp_s.clone()],
        [&wp_x * &wp_x, &wp_y * &wp_y, &wp_s * &wp_s],
    ]);
    (&(&num / &den)).div_int(2).neg_c()
}

#[test]
fn phi_addition_determinant_form() {
    let lat = generic_lattice();
    let pts = sample_points(&lat, 150, 31);
    let mut worst_good = 0f64;
    let mut best_wrong = f64::INFINITY;
    for triple in pts.chunks_exact(3) {
        let (s, x, y) = (&triple[0], &triple[1], &triple[2]);
        if (&(x + y)).abs().to_f64() < 1e-3 {
            continue;
        }
        let phi = BakerAkhiezer::new(s.clone(), lat.clone()).unwrap();
        let direct =
            &phi.eval(&(x + y)).unwrap() / &(&phi.eval(x).unwrap() * &phi.eval(y).unwrap());
        let good = phi_add2_det(&lat, s, x, y, true);
        let wrong = phi_add2_det(&lat, s, x, y, false);
        let rg = (&direct - &good).abs().to_f64();
        let rw = (&direct - &wrong).abs().to_f64();
        if rg > worst_good {
            worst_good = rg;
        }
        if rw < best_wrong {
            best_wrong = rw;
        }
    }
    assert!(worst_good < 1e-35, "wp'(s) reading residual {:e}", worst_good);
    // the literal wp(s) variant must fail decisively
    assert!(best_wrong > 1e-5, "wp(s) variant came out too small: {:e}", best_wrong);
}

#[test]
fn todd_series_examples() {
    // alpha = 0: f = (e^{beta t} - 1)/beta
    let beta = rat(3);
    let f = todd_series(&rat(0), &beta, 12).unwrap();
    let eb = TruncatedSeries::monomial(beta.clone(), 1, 12).exp().unwrap();
    let want = eb
        .sub(&TruncatedSeries::one(12, Rat::zero()))
        .scale(&rq(1, 3));
    assert!(f.eq_to_truncation(&want));

    // alpha = -beta = eta: f = tanh(eta t)/eta
    let eta = rat(2);
    let f = todd_series(&eta, &rat(-2), 14).unwrap();
    let ep = TruncatedSeries::monomial(eta.clone(), 1, 14).exp().unwrap();
    let em = TruncatedSeries::monomial(rat(-2), 1, 14).exp().unwrap();
    let tanh = ep.sub(&em).mul(&ep.add(&em).invert().unwrap());
    let want = tanh.scale(&rq(1, 2));
    assert!(f.eq_to_truncation(&want));

    // coefficient of t^2 is (alpha + beta)/2 for random rational parameters
    for (a, b) in [(rq(3, 7), rq(-2, 5)), (rat(1), rat(4)), (rq(-1, 2), rq(1, 3))] {
        let f = todd_series(&a, &b, 8).unwrap();
        let want = (a.clone() + b.clone()) * rq(1, 2);
        assert_eq!(f.coeff(2), want, "t^2 coefficient for ({}, {})", a, b);
    }

    // equal-parameter limit: t/(1 - alpha t) is the geometric series
    let f = todd_series(&rq(5, 3), &rq(5, 3), 9).unwrap();
    let mut p = rat(1);
    for k in 1..=9i64 {
        assert_eq!(f.coeff(k), p);
        p *= rq(5, 3);
    }
}

#[test]
fn sing_series_examples() {
    // lambda = 0, q = 0, mu = 1: f = tanh t
    let f = GenusFunction::sing_krichever(
        Scalar::integer(0),
        Scalar::integer(0),
        Scalar::integer(1),
        14,
        PREC,
    )
    .unwrap();
    let se = f.series_exact.as_ref().unwrap();
    let ep = TruncatedSeries::monomial(rat(1), 1, 14).exp().unwrap();
    let em = TruncatedSeries::monomial(rat(-1), 1, 14).exp().unwrap();
    let tanh = ep.sub(&em).mul(&ep.add(&em).invert().unwrap());
    assert!(se.eq_to_truncation(&tanh));

    // lambda = 0: exact agreement with the Todd genus at alpha = 1-q, beta = -1-q
    for q in [rq(1, 2), rat(2), rq(-3, 4)] {
        let f = GenusFunction::sing_krichever(
            Scalar::integer(0),
            Scalar::Rational(q.clone()),
            Scalar::integer(1),
            16,
            PREC,
        )
        .unwrap();
        let todd = todd_series(&(rat(1) - q.clone()), &(rat(-1) - q.clone()), 16).unwrap();
        assert!(
            f.series_exact.as_ref().unwrap().eq_to_truncation(&todd),
            "q = {}",
            q
        );
    }

    // limit family: t/(1+qt) = t - q t^2 + q^2 t^3 - ...
    let f = GenusFunction::sing_limit(Scalar::integer(0), Scalar::integer(2), 10, PREC).unwrap();
    let se = f.series_exact.as_ref().unwrap();
    let mut p = rat(1);
    for k in 1..=10i64 {
        assert_eq!(se.coeff(k), p);
        p *= rat(-2);
    }
}

#[test]
fn genus_series_evaluator_consistency() {
    // numeric evaluator vs series inside the trust region, several families
    let todd = GenusFunction::todd(Scalar::rational(1, 3), Scalar::integer(-1), 64, PREC).unwrap();
    let sing = GenusFunction::sing_krichever(
        Scalar::rational(1, 2),
        Scalar::rational(1, 3),
        Scalar::integer(1),
        64,
        PREC,
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in [&todd, &sing] {
        for _ in 0..40 {
            let re: f64 = rng.gen_range(-0.4..0.4);
            let im: f64 = rng.gen_range(-0.4..0.4);
            let t = Cx::from_f64(re, im, PREC);
            let direct = f.eval(&t).unwrap();
            let series = f.series.evaluate(&t).unwrap();
            assert!(
                (&direct - &series).abs().to_f64() < 1e-30,
                "residual {:e}",
                (&direct - &series).abs().to_f64()
            );
        }
    }
}

#[test]
fn krichever_normalization_and_consistency() {
    let lat = generic_lattice();
    let s = Cx::from_f64(1.3, 0.9, PREC);
    let alpha = Cx::from_f64(0.0, 0.0, PREC);
    let f = GenusFunction::krichever(alpha, s, lat.clone(), 96).unwrap();
    assert_eq!(f.series.valuation(), 1);
    assert!((&f.series.coeff(1) - &Cx::one(PREC)).abs().to_f64() < 1e-70);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    // stay well inside the convergence disc (nearest pole of f at t = -s)
    let r = 0.25 * 1.58;
    for _ in 0..30 {
        let re: f64 = rng.gen_range(-r..r);
        let im: f64 = rng.gen_range(-r..r);
        let t = Cx::from_f64(re, im, PREC);
        if t.abs().to_f64() < 1e-3 {
            continue;
        }
        let direct = f.eval(&t).unwrap();
        let series = f.series.evaluate(&t).unwrap();
        assert!(
            (&direct - &series).abs().to_f64() < 1e-30,
            "residual {:e} at |t| = {:.3}",
            (&direct - &series).abs().to_f64(),
            t.abs().to_f64()
        );
    }
}

#[test]
fn level_d_construction_and_root() {
    let lat = square_lattice();
    for (d, k, l) in [(2u32, 1i64, 0i64), (3, 1, 0), (3, 1, 1), (4, 1, 0)] {
        let f = GenusFunction::level_d(lat.clone(), d, (k, l), 40).unwrap();
        assert_eq!(f.series.valuation(), 1, "d = {}", d);
        assert!((&f.series.coeff(1) - &Cx::one(PREC)).abs().to_f64() < 1e-70);
        // f^d reproduces g as series: check via evaluation inside the radius
        let t = Cx::from_f64(0.11, 0.07, PREC);
        let fd = f.eval(&t).unwrap().powi(d as i64);
        let g = f.eval_g(&t).unwrap();
        assert!(
            (&fd - &g).abs().to_f64() < 1e-60,
            "f^d vs g residual {:e}",
            (&fd - &g).abs().to_f64()
        );
    }
}

#[test]
fn level_d_torsion_preconditions() {
    let lat = square_lattice();
    assert!(GenusFunction::level_d(lat.clone(), 1, (1, 0), 16).is_err());
    assert!(GenusFunction::level_d(lat.clone(), 2, (0, 0), 16).is_err());
    assert!(GenusFunction::level_d(lat.clone(), 2, (2, 4), 16).is_err());
}

#[test]
fn level_d_g_is_elliptic() {
    let lat = generic_lattice();
    let f = GenusFunction::level_d(lat.clone(), 3, (1, 0), 24).unwrap();
    let pts = sample_points(&lat, 20, 41);
    let mut worst = 0f64;
    for t in &pts {
        let g0 = f.eval_g(t).unwrap();
        for l in [1, 2] {
            let shifted = t + &lat.half_period(l).mul_int(2);
            let g1 = f.eval_g(&shifted).unwrap();
            let r = (&g0 - &g1).abs().to_f64();
            if r > worst {
                worst = r;
            }
        }
    }
    assert!(worst < 1e-38, "ellipticity residual {:e}", worst);
}

#[test]
fn level_d_series_matches_krichever_form() {
    // dual route: the level-d series equals the Krichever series with
    // s = -P and alpha = zeta(P) - (2k eta1 + 2l eta2)/d
    let lat = generic_lattice();
    let f = GenusFunction::level_d(lat.clone(), 3, (1, 1), 40).unwrap();
    let (s, alpha) = f.krichever_parameters().unwrap();
    let g = GenusFunction::krichever(alpha, s, lat.clone(), 40).unwrap();
    let resid = f.series.residual(&g.series);
    assert!(
        resid.to_f64() < 1e-55,
        "series residual {:e}",
        resid.to_f64()
    );
}

#[test]
fn level_d_series_evaluator_consistency() {
    let lat = square_lattice();
    let f = GenusFunction::level_d(lat.clone(), 2, (1, 0), 128).unwrap();
    let radius = f.reliability_radius().to_f64();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut count = 0;
    while count < 30 {
        let re: f64 = rng.gen_range(-1.0..1.0);
        let im: f64 = rng.gen_range(-1.0..1.0);
        if re * re + im * im > 1.0 || re * re + im * im < 0.01 {
            continue;
        }
        count += 1;
        let t = Cx::from_f64(re * radius, im * radius, PREC);
        let direct = f.eval(&t).unwrap();
        let series = f.series.evaluate(&t).unwrap();
        assert!(
            (&direct - &series).abs().to_f64() < 1e-30,
            "residual {:e} at |t|/r = {:.2}",
            (&direct - &series).abs().to_f64(),
            t.abs().to_f64() / radius
        );
    }
}

#[test]
fn level_2_series_is_odd_for_half_period_torsion() {
    let lat = square_lattice();
    let f = GenusFunction::level_d(lat.clone(), 2, (1, 0), 24).unwrap();
    for k in (2..=24i64).step_by(2) {
        assert!(
            f.series.coeff(k).abs().to_f64() < 1e-60,
            "even coefficient t^{} = {:e}",
            k,
            f.series.coeff(k).abs().to_f64()
        );
    }
}

#[test]
fn level_d_periodicity_by_continuation() {
    // f_2 is periodic with respect to 2d omega1 = 4 omega1
    let lat = square_lattice();
    let f = GenusFunction::level_d(lat.clone(), 2, (1, 0), 24).unwrap();
    let t0 = Cx::from_f64(0.13, 0.09, PREC);
    let base = f.eval(&t0).unwrap();
    let target = &t0 + &lat.omega1().mul_int(4);
    // go sideways into the corridor x = pi, up past 4 omega1, and back:
    // keeps the path away from the zeros (x in 2 pi Z) and poles
    let side = Cx::from_f64(3.0, 0.0, PREC);
    let mid = &t0 + &side;
    let mid2 = &mid + &lat.omega1().mul_int(4);
    let continued = f
        .eval_continued(&[t0.clone(), mid, mid2, target])
        .unwrap();
    assert!(
        (&continued - &base).abs().to_f64() < 1e-30,
        "periodicity residual {:e}",
        (&continued - &base).abs().to_f64()
    );
}

#[test]
fn monodromy_analytic_matches_numeric_and_roots_of_unity() {
    let lat = square_lattice();
    // level 2 at (k, l) = (1, 0): eps_1 = 1, eps_2 = -1
    let f = GenusFunction::level_d(lat.clone(), 2, (1, 0), 24).unwrap();
    let m = f.monodromy_factors(5, 99).unwrap();
    assert!(m.deviation.to_f64() < 1e-35, "deviation {:e}", m.deviation.to_f64());
    assert!((&m.analytic[0] - &Cx::one(PREC)).abs().to_f64() < 1e-35);
    assert!((&m.analytic[1] + &Cx::one(PREC)).abs().to_f64() < 1e-35);
    assert_eq!(m.detected_order(16, 1e-30), Some(2));

    // level 3 at (1, 1): eps_1 = exp(-2 pi i/3), eps_2 = exp(2 pi i/3)
    let f3 = GenusFunction::level_d(lat.clone(), 3, (1, 1), 24).unwrap();
    let m3 = f3.monodromy_factors(5, 7).unwrap();
    let w = (&Cx::i(PREC) * &Cx::pi(PREC).mul_int(2).div_int(3)).exp();
    assert!((&m3.analytic[0] - &w.recip()).abs().to_f64() < 1e-35);
    assert!((&m3.analytic[1] - &w).abs().to_f64() < 1e-35);
    assert_eq!(m3.detected_order(16, 1e-30), Some(3));

    // generic non-torsion s: eps_l^{n+1} far from 1 for n = 2
    let s = Cx::from_f64(1.23, 0.71, PREC);
    let fk = GenusFunction::krichever(Cx::zero(PREC), s, lat, 24).unwrap();
    let mk = fk.monodromy_factors(5, 3).unwrap();
    assert!(mk.deviation.to_f64() < 1e-35);
    let p = mk.analytic[0].powi(3);
    assert!(
        (&p - &Cx::one(PREC)).abs().to_f64() > 1e-5,
        "non-torsion eps^3 unexpectedly close to 1"
    );
}

#[test]
fn scaled_genus_stays_normalized() {
    let f = GenusFunction::todd(Scalar::integer(0), Scalar::integer(-1), 32, PREC).unwrap();
    let mu = Cx::from_f64(1.3, 0.4, PREC);
    let g = f.scaled(mu.clone()).unwrap();
    assert_eq!(g.series.valuation(), 1);
    assert!((&g.series.coeff(1) - &Cx::one(PREC)).abs().to_f64() < 1e-70);
    // g(t) = mu f(t/mu) pointwise
    let t = Cx::from_f64(0.21, -0.17, PREC);
    let inner = GenusFunction::todd(Scalar::integer(0), Scalar::integer(-1), 32, PREC).unwrap();
    let want = &inner.eval(&(&t / &mu)).unwrap() * &mu;
    assert!((&g.eval(&t).unwrap() - &want).abs().to_f64() < 1e-70);
}

#[test]
fn shifted_genus_at_a_zero_reproduces_f() {
    // Todd(0,-1) vanishes at t0 = 2 pi i/(alpha - beta) = 2 pi i; the
    // normalized shift reproduces f exactly, but through a different
    // evaluation path.
    let f = GenusFunction::todd(Scalar::integer(0), Scalar::integer(-1), 32, PREC).unwrap();
    let t0 = Cx::pi_i(PREC).mul_int(2);
    let g = GenusFunction::todd(Scalar::integer(0), Scalar::integer(-1), 32, PREC)
        .unwrap()
        .shifted(t0)
        .unwrap();
    assert_eq!(g.series.valuation(), 1);
    assert!((&g.series.coeff(1) - &Cx::one(PREC)).abs().to_f64() < 1e-50);
    let t = Cx::from_f64(0.19, 0.23, PREC);
    let r = (&g.eval(&t).unwrap() - &f.eval(&t).unwrap()).abs().to_f64();
    assert!(r < 1e-50, "shift residual {:e}", r);
    // series route agrees with the evaluator route
    let rs = (&g.series.evaluate(&t).unwrap() - &f.eval(&t).unwrap()).abs().to_f64();
    assert!(rs < 1e-25, "shifted series residual {:e}", rs);
}

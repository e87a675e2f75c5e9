//! Complex-domain series checks: evaluation accuracy, Laurent inversion of a
//! genus series, and the argument-principle count of zeros and poles of a
//! Krichever genus in its period cell.

use std::sync::Arc;

use genera_core::coeff::Coeff;
use genera_core::cx::Cx;
use genera_core::elliptic::Lattice;
use genera_core::genus::{todd_series, GenusFunction};
use genera_core::series::TruncatedSeries;
use num_rational::BigRational;

const PREC: u32 = 256;

#[test]
fn exp_series_evaluates_to_forty_digits() {
    // exp series to order 40 evaluated at t = 0.1 against the direct value
    let t = TruncatedSeries::t(40, Cx::zero(PREC));
    let e = t.exp().unwrap();
    let x = Cx::from_f64(0.1, 0.0, PREC);
    let from_series = e.evaluate(&x).unwrap();
    let direct = x.exp();
    let resid = (&from_series - &direct).abs().to_f64();
    assert!(resid < 1e-40, "residual {:e}", resid);
}

#[test]
fn todd_series_inverse_multiplies_back() {
    // 1/f for the Todd genus at (alpha, beta) = (1, 0): valuation -1,
    // constant coefficient -(alpha+beta)/2 = -1/2, and f * (1/f) = 1
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::from_integer(0.into());
    let f = todd_series(&one, &zero, 24).unwrap();
    let inv = f.invert().unwrap();
    assert_eq!(inv.valuation(), -1);
    assert_eq!(inv.coeff(0), BigRational::new((-1).into(), 2.into()));
    let prod = f.mul(&inv);
    assert!(prod.eq_to_truncation(&TruncatedSeries::one(prod.order(), zero)));
}

#[test]
fn krichever_pole_structure_by_argument_principle() {
    // f = e^{alpha t}/Phi_s has exactly one zero (t = 0) and one pole
    // (t = -s) in the period cell; f'/f = (alpha + zeta(s)) + zeta(t) - zeta(s+t)
    let lat = Arc::new(Lattice::normalized(Cx::i(PREC), PREC).unwrap());
    let s = Cx::from_f64(1.31, 0.57, PREC);
    let alpha = Cx::zero(PREC);
    let zeta_s = lat.zeta(&s).unwrap();
    let log_deriv = {
        let lat = lat.clone();
        let s = s.clone();
        let c = &alpha + &zeta_s;
        move |t: &Cx| -> Cx {
            &(&c + &lat.zeta(t).unwrap()) - &lat.zeta(&(&s + t)).unwrap()
        }
    };

    // winding around the zero at 0: +1
    let w0 = winding_value(&log_deriv, &Cx::zero(PREC), 0.5, 192);
    assert!((w0 - 1.0).abs() < 1e-6, "zero winding {:.8}", w0);

    // winding around the pole at -s: -1
    let ws = winding_value(&log_deriv, &s.neg_c(), 0.5, 192);
    assert!((ws + 1.0).abs() < 1e-6, "pole winding {:.8}", ws);

    // whole-cell boundary: zeros minus poles = 0. The cell is centered
    // to keep 0 and -s inside and the boundary clear of both.
    let center = Cx::from_f64(-0.6, -0.2, PREC);
    let corner = |x: f64, y: f64| -> Cx {
        &(&center + &lat.omega1().scale(&rug::Float::with_val(PREC, 2.0 * x)))
            + &lat.omega2().scale(&rug::Float::with_val(PREC, 2.0 * y))
    };
    let corners = [
        corner(-0.5, -0.5),
        corner(0.5, -0.5),
        corner(0.5, 0.5),
        corner(-0.5, 0.5),
    ];
    let prec = PREC;
    let mut acc = Cx::zero(prec);
    let steps = 256;
    for e in 0..4 {
        let a = &corners[e];
        let b = &corners[(e + 1) % 4];
        let seg = b - a;
        for j in 0..steps {
            let frac = (j as f64 + 0.5) / steps as f64;
            let z = a + &seg.scale(&rug::Float::with_val(prec, frac));
            let dz = seg.scale(&rug::Float::with_val(prec, 1.0 / steps as f64));
            acc = &acc + &(&log_deriv(&z) * &dz);
        }
    }
    let total = &acc / &(&Cx::i(prec) * &Cx::from_f64(2.0 * std::f64::consts::PI, 0.0, prec));
    assert!(
        total.abs().to_f64() < 1e-3,
        "cell boundary winding {:e}",
        total.abs().to_f64()
    );

    // the verifier genus agrees with the sigma-form log-derivative at a point
    let f = GenusFunction::krichever(alpha, s, lat, 24).unwrap();
    let t = Cx::from_f64(0.4, 0.2, PREC);
    let h = Cx::from_f64(1e-30, 0.0, PREC);
    let num = (&f.eval(&(&t + &h)).unwrap() - &f.eval(&(&t - &h)).unwrap()).mul_c(&h.mul_int(2).recip());
    let want = &num / &f.eval(&t).unwrap();
    let direct = log_deriv(&t);
    assert!((&want - &direct).abs().to_f64() < 1e-25);
}

/// `(1/2 pi i) oint g dz` around a circle; returns the real part.
fn winding_value(g: &dyn Fn(&Cx) -> Cx, center: &Cx, radius: f64, points: usize) -> f64 {
    let prec = center.prec().max(PREC);
    let mut acc = Cx::zero(prec);
    for j in 0..points {
        let ang = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / points as f64;
        let dir = Cx::from_f64(radius * ang.cos(), radius * ang.sin(), prec);
        let z = center + &dir;
        // dz/dtheta = i * dir
        acc = &acc + &(&g(&z) * &(&Cx::i(prec) * &dir));
    }
    let dtheta = 2.0 * std::f64::consts::PI / points as f64;
    let integral = acc.scale(&rug::Float::with_val(prec, dtheta));
    let val = &integral / &(&Cx::i(prec) * &Cx::from_f64(2.0 * std::f64::consts::PI, 0.0, prec));
    val.re().to_f64()
}

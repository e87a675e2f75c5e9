//! Genus functions: two-parametric Todd, Baker-Akhiezer/Krichever, level-d
//! elliptic, and the degenerate families.
//!
//! Every genus function is normalized to `f(t) = t + ...`. A
//! [`GenusFunction`] carries the truncated series at the origin, a numeric
//! evaluator, and (for the lattice families) the monodromy data. Exact
//! rational parameters additionally produce an exact series.
//!
//! Conventions fixed here once and used everywhere:
//!
//! * The Baker-Akhiezer function is
//!   `Phi_s(t) = sigma(s+t) / (sigma(s) sigma(t)) * exp(-zeta(s) t)`,
//!   with a simple pole at `t = 0` and zeros at `t = -s` modulo the lattice.
//!   With this choice the log-derivative identity
//!   `(ln Phi_s)'(t) = (wp'(t) - wp'(s)) / (2 (wp(t) - wp(s)))`
//!   and the determinant form of the addition law hold with `wp'(s)` in the
//!   bottom-right entry (the variant with `wp(s)` fails; see the tests).
//! * Under `t -> t + 2 omega_l` the reciprocal transforms as
//!   `1/f(t + 2 omega_l) = eps_l / f(t)` with
//!   `eps_l = exp(2 (eta_l s - omega_l zeta(s) - alpha omega_l))`,
//!   derived from the sigma quasi-periodicity; a numeric ratio cross-check
//!   guards the derivation permanently.
//! * The level-d genus with pole `P = (2k omega1 + 2l omega2)/d` is the
//!   Krichever genus with `s = -P` and
//!   `alpha = zeta(P) - (2k eta1 + 2l eta2)/d`, which makes
//!   `eps_1 = exp(-2 pi i l / d)` and `eps_2 = exp(2 pi i k / d)`.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rug::ops::Pow;
use rug::Float;

use crate::coeff::{rational_from_string, rational_to_string, Coeff};
use crate::cx::Cx;
use crate::elliptic::Lattice;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

type Rat = BigRational;
type RatSeries = TruncatedSeries<Rat>;
type CxSeries = TruncatedSeries<Cx>;

/// Exact-or-numeric scalar parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rat),
    Complex(Cx),
}

impl Scalar {
    pub fn rational(n: i64, d: i64) -> Self {
        Scalar::Rational(Rat::new(n.into(), d.into()))
    }

    pub fn integer(n: i64) -> Self {
        Scalar::Rational(Rat::from_integer(n.into()))
    }

    pub fn to_cx(&self, prec: u32) -> Cx {
        match self {
            Scalar::Rational(q) => Cx::from_rational(q, prec),
            Scalar::Complex(z) => z.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Complex(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Complex(z) => z.is_zero(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(q) => serde_json::Value::String(rational_to_string(q)),
            Scalar::Complex(z) => {
                let (re, im) = z.to_decimal_strings();
                serde_json::json!({"re": re, "im": im})
            }
        }
    }

    pub fn from_json(v: &serde_json::Value, prec: u32) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => rational_from_string(s)
                .map(Scalar::Rational)
                .ok_or_else(|| Error::Parse(format!("bad rational scalar {:?}", s))),
            serde_json::Value::Object(o) => {
                let re = o.get("re").and_then(|x| x.as_str()).unwrap_or("0");
                let im = o.get("im").and_then(|x| x.as_str()).unwrap_or("0");
                Cx::from_decimal_strings(re, im, prec)
                    .map(Scalar::Complex)
                    .ok_or_else(|| Error::Parse("bad complex scalar".into()))
            }
            _ => Err(Error::Parse("scalar must be string or {re,im}".into())),
        }
    }

    /// Parse `"p/q"`, `"1.5"`, `"2+3i"`, `"-0.5i"`, `"i"`.
    pub fn parse(s: &str, prec: u32) -> Result<Self> {
        let s = s.trim();
        if !s.contains('i') {
            return rational_from_string(s)
                .map(Scalar::Rational)
                .ok_or_else(|| Error::Parse(format!("bad scalar {:?}", s)));
        }
        // complex literal: optional real part followed by signed imaginary part
        let body = s.strip_suffix('i').ok_or_else(|| Error::Parse(format!("bad scalar {:?}", s)))?;
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (re_str, im_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im_str = match im_str {
            "" | "+" => "1".to_string(),
            "-" => "-1".to_string(),
            other => other.to_string(),
        };
        let re = rational_from_string(re_str)
            .ok_or_else(|| Error::Parse(format!("bad real part {:?}", re_str)))?;
        let im = rational_from_string(&im_str)
            .ok_or_else(|| Error::Parse(format!("bad imaginary part {:?}", im_str)))?;
        let z = Cx::from_floats(
            Cx::from_rational(&re, prec).re().clone(),
            Cx::from_rational(&im, prec).re().clone(),
        );
        Ok(Scalar::Complex(z))
    }
}

/// Variant record selecting a genus family.
#[derive(Debug, Clone)]
pub enum GenusSpec {
    Todd {
        alpha: Scalar,
        beta: Scalar,
    },
    Krichever {
        lattice: Arc<Lattice>,
        s: Cx,
        alpha: Cx,
    },
    LevelD {
        lattice: Arc<Lattice>,
        d: u32,
        torsion: (i64, i64),
    },
    SingKrichever {
        lambda: Scalar,
        q: Scalar,
        mu: Scalar,
    },
    SingLimit {
        lambda: Scalar,
        q: Scalar,
    },
}

impl GenusSpec {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            GenusSpec::Todd { alpha, beta } => serde_json::json!({
                "type": "todd", "alpha": alpha.to_json(), "beta": beta.to_json(),
            }),
            GenusSpec::Krichever { lattice, s, alpha } => {
                let (sre, sim) = s.to_decimal_strings();
                let (are, aim) = alpha.to_decimal_strings();
                serde_json::json!({
                    "type": "krichever",
                    "lattice": lattice.to_json(),
                    "s": {"re": sre, "im": sim},
                    "alpha": {"re": are, "im": aim},
                })
            }
            GenusSpec::LevelD { lattice, d, torsion } => serde_json::json!({
                "type": "level_d",
                "lattice": lattice.to_json(),
                "d": d, "k": torsion.0, "l": torsion.1,
            }),
            GenusSpec::SingKrichever { lambda, q, mu } => serde_json::json!({
                "type": "sing",
                "lambda": lambda.to_json(), "q": q.to_json(), "mu": mu.to_json(),
            }),
            GenusSpec::SingLimit { lambda, q } => serde_json::json!({
                "type": "sing_limit",
                "lambda": lambda.to_json(), "q": q.to_json(),
            }),
        }
    }
}

enum Evaluator {
    /// Closed form of the two-parametric Todd genus; `a == b` handled as the
    /// limit `t/(1 - a t)`.
    Todd { a: Cx, b: Cx },
    /// `exp(l t) sinh(m t) / (q sinh(m t) + m cosh(m t))`.
    Sing { l: Cx, q: Cx, m: Cx },
    /// `t exp(l t) / (1 + q t)`.
    SingLimit { l: Cx, q: Cx },
    /// `exp((alpha + zeta(s)) t) sigma(s) sigma(t) / sigma(s + t)`.
    Krichever {
        lat: Arc<Lattice>,
        s: Cx,
        alpha: Cx,
        sigma_s: Cx,
        zeta_s: Cx,
    },
    /// Principal-branch `t (g(t)/t^d)^{1/d}` inside the reliability disc.
    LevelD {
        lat: Arc<Lattice>,
        d: u32,
        pole: Cx,
        pole2: Cx,
        c_norm: Cx,
        /// Baker-Akhiezer parameter `-P` and normalizing exponent.
        s_ba: Cx,
        alpha: Cx,
    },
    /// `mu * f(t/mu)`.
    Scaled { inner: Box<GenusFunction>, mu: Cx },
    /// `(f(t + t0) - f(t0)) / f'(t0)`.
    Shifted {
        inner: Box<GenusFunction>,
        t0: Cx,
        f_t0: Cx,
        fp_t0: Cx,
    },
}

/// A normalized genus function `f(t) = t + ...` with series and evaluator.
pub struct GenusFunction {
    pub spec: GenusSpec,
    /// Exact series when every parameter is rational.
    pub series_exact: Option<RatSeries>,
    /// Numeric series at working precision.
    pub series: CxSeries,
    /// Branch-safe evaluation radius (infinite for the non-level families).
    reliability_radius: Float,
    eval: Evaluator,
    prec: u32,
}

/// Series of the two-parametric Todd genus over any coefficient domain.
pub fn todd_series<C: Coeff>(alpha: &C, beta: &C, order: i64) -> Result<TruncatedSeries<C>> {
    let witness = alpha.zero_like();
    if alpha.sub_c(beta).is_zero_coeff() {
        // limit case: t / (1 - alpha t)
        let den = TruncatedSeries::one(order, witness.clone())
            .sub(&TruncatedSeries::monomial(alpha.clone(), 1, order));
        return Ok(TruncatedSeries::t(order + 1, witness).mul(&den.invert()?));
    }
    let ea = TruncatedSeries::monomial(alpha.clone(), 1, order).exp()?;
    let eb = TruncatedSeries::monomial(beta.clone(), 1, order).exp()?;
    let num = ea.sub(&eb);
    let den = eb.scale(alpha).sub(&ea.scale(beta));
    num.mul(&den.invert()?).truncate(order).into_ok()
}

/// Series of `exp(lambda t) / (q + mu coth(mu t))`, `mu != 0`.
pub fn sing_series<C: Coeff>(
    lambda: &C,
    q: &C,
    mu: &C,
    order: i64,
) -> Result<TruncatedSeries<C>> {
    if mu.is_zero_coeff() {
        return Err(Error::Precondition("sing_krichever requires mu != 0".into()));
    }
    let witness = lambda.zero_like();
    let ep = TruncatedSeries::monomial(mu.clone(), 1, order + 1).exp()?;
    let em = TruncatedSeries::monomial(mu.neg_c(), 1, order + 1).exp()?;
    let cosh2 = ep.add(&em); // 2 cosh(mu t)
    let sinh2 = ep.sub(&em); // 2 sinh(mu t), valuation 1
    // denominator q sinh + mu cosh, divided by sinh:
    // f = e^{lambda t} sinh / (q sinh + mu cosh)
    let den = sinh2.scale(q).add(&cosh2.scale(mu));
    let el = TruncatedSeries::monomial(lambda.clone(), 1, order + 1).exp()?;
    let f = el.mul(&sinh2).mul(&den.invert()?);
    let _ = witness;
    Ok(f.truncate(order))
}

/// Series of the limit form `t exp(lambda t) / (1 + q t)`.
pub fn sing_limit_series<C: Coeff>(lambda: &C, q: &C, order: i64) -> Result<TruncatedSeries<C>> {
    let witness = lambda.zero_like();
    let el = TruncatedSeries::monomial(lambda.clone(), 1, order).exp()?;
    let den = TruncatedSeries::one(order, witness.clone())
        .add(&TruncatedSeries::monomial(q.clone(), 1, order));
    Ok(TruncatedSeries::t(order + 1, witness)
        .mul(&el)
        .mul(&den.invert()?)
        .truncate(order + 1))
}

trait IntoOk: Sized {
    fn into_ok(self) -> Result<Self> {
        Ok(self)
    }
}
impl<C: Coeff> IntoOk for TruncatedSeries<C> {}

impl GenusFunction {
    /// Two-parametric Todd genus.
    pub fn todd(alpha: Scalar, beta: Scalar, order: i64, prec: u32) -> Result<GenusFunction> {
        let a = alpha.to_cx(prec);
        let b = beta.to_cx(prec);
        let series = todd_series(&a, &b, order)?;
        let series_exact = match (alpha.as_rational(), beta.as_rational()) {
            (Some(ar), Some(br)) => Some(todd_series(ar, br, order)?),
            _ => None,
        };
        let f = GenusFunction {
            spec: GenusSpec::Todd { alpha, beta },
            series_exact,
            series,
            reliability_radius: Float::with_val(prec, f64::INFINITY),
            eval: Evaluator::Todd { a, b },
            prec,
        };
        f.check_normalization()?;
        Ok(f)
    }

    /// Degenerate Krichever genus `exp(lambda t) / (q + mu coth(mu t))`.
    pub fn sing_krichever(
        lambda: Scalar,
        q: Scalar,
        mu: Scalar,
        order: i64,
        prec: u32,
    ) -> Result<GenusFunction> {
        if mu.is_zero() {
            return Err(Error::Precondition("sing_krichever requires mu != 0".into()));
        }
        let l = lambda.to_cx(prec);
        let qq = q.to_cx(prec);
        let m = mu.to_cx(prec);
        let series = sing_series(&l, &qq, &m, order)?;
        let series_exact = match (lambda.as_rational(), q.as_rational(), mu.as_rational()) {
            (Some(lr), Some(qr), Some(mr)) => Some(sing_series(lr, qr, mr, order)?),
            _ => None,
        };
        let f = GenusFunction {
            spec: GenusSpec::SingKrichever { lambda, q, mu },
            series_exact,
            series,
            reliability_radius: Float::with_val(prec, f64::INFINITY),
            eval: Evaluator::Sing { l, q: qq, m },
            prec,
        };
        f.check_normalization()?;
        Ok(f)
    }

    /// Limit form `t exp(lambda t) / (1 + q t)`.
    pub fn sing_limit(lambda: Scalar, q: Scalar, order: i64, prec: u32) -> Result<GenusFunction> {
        let l = lambda.to_cx(prec);
        let qq = q.to_cx(prec);
        let series = sing_limit_series(&l, &qq, order)?;
        let series_exact = match (lambda.as_rational(), q.as_rational()) {
            (Some(lr), Some(qr)) => Some(sing_limit_series(lr, qr, order)?),
            _ => None,
        };
        let f = GenusFunction {
            spec: GenusSpec::SingLimit { lambda, q },
            series_exact,
            series,
            reliability_radius: Float::with_val(prec, f64::INFINITY),
            eval: Evaluator::SingLimit { l, q: qq },
            prec,
        };
        f.check_normalization()?;
        Ok(f)
    }

    /// Krichever genus `exp(alpha t) / Phi_s(t)`.
    pub fn krichever(
        alpha: Cx,
        s: Cx,
        lattice: Arc<Lattice>,
        order: i64,
    ) -> Result<GenusFunction> {
        let prec = lattice.prec();
        let tol = lattice.shortest_vector().clone() * Float::with_val(prec, 1e-8);
        if lattice.distance_to_lattice(&s) < tol {
            return Err(Error::Precondition("Krichever parameter s must avoid the lattice".into()));
        }
        let sigma_s = lattice.sigma(&s);
        let zeta_s = lattice.zeta(&s)?;
        let series = krichever_series(&lattice, &s, &alpha, &sigma_s, &zeta_s, order)?;
        let f = GenusFunction {
            spec: GenusSpec::Krichever {
                lattice: lattice.clone(),
                s: s.clone(),
                alpha: alpha.clone(),
            },
            series_exact: None,
            series,
            reliability_radius: Float::with_val(prec, f64::INFINITY),
            eval: Evaluator::Krichever {
                lat: lattice,
                s,
                alpha,
                sigma_s,
                zeta_s,
            },
            prec,
        };
        f.check_normalization()?;
        Ok(f)
    }

    /// Level-d elliptic genus: d-th root of the elliptic function with zero
    /// divisor `d*(0)` and pole divisor `d*(P)`, `P = (2k omega1 + 2l omega2)/d`.
    pub fn level_d(
        lattice: Arc<Lattice>,
        d: u32,
        torsion: (i64, i64),
        order: i64,
    ) -> Result<GenusFunction> {
        if d < 2 {
            return Err(Error::Precondition("level must satisfy d > 1".into()));
        }
        let (k, l) = torsion;
        if k.rem_euclid(d as i64) == 0 && l.rem_euclid(d as i64) == 0 {
            return Err(Error::Precondition(
                "torsion point (k, l) must not be congruent to (0, 0) mod d".into(),
            ));
        }
        let prec = lattice.prec();
        let pole = &(&lattice.omega1().mul_int(2 * k) + &lattice.omega2().mul_int(2 * l))
            .div_int(d as i64)
            + &Cx::zero(prec);
        // second denominator point P - Omega = -(d-1) P
        let pole2 = pole.mul_int(-(d as i64 - 1));

        // g(t) = c sigma(t)^d / (sigma(t - P)^{d-1} sigma(t - P + Omega))
        let origin = lattice.origin_series(order + d as i64);
        let mut num = TruncatedSeries::one(order + d as i64, Cx::zero(prec));
        for _ in 0..d {
            num = num.mul(&origin.sigma);
        }
        // sigma(t - P) = sigma((-P) + t), sigma(t - P + Omega) = sigma((d-1)P + t)
        let e_mp = lattice.expansion_at(&pole.neg_c(), order + d as i64)?;
        let e_dp = lattice.expansion_at(&pole2.neg_c(), order + d as i64)?;
        let mut den = TruncatedSeries::one(order + d as i64, Cx::zero(prec));
        for _ in 0..(d - 1) {
            den = den.mul(&e_mp.sigma);
        }
        den = den.mul(&e_dp.sigma);
        let g_raw = num.mul(&den.invert()?);
        if g_raw.valuation() != d as i64 {
            return Err(Error::Precondition(format!(
                "level-d construction produced valuation {}, expected {}",
                g_raw.valuation(),
                d
            )));
        }
        let lead = g_raw
            .leading_coeff()
            .cloned()
            .ok_or(Error::ZeroSeries)?;
        let c_norm = lead.recip();
        // divide rather than multiply by the reciprocal so the leading
        // coefficient becomes exactly one
        let g = g_raw.map_coeffs(Cx::zero(prec), |c| c / &lead);
        let series = g.nth_root(d)?.truncate(order);

        // Krichever parameters of the same function (series cross-checked in tests)
        let h = &lattice.eta(1).mul_int(2 * k) + &lattice.eta(2).mul_int(2 * l);
        let alpha = &lattice.zeta(&pole)? - &h.div_int(d as i64);
        let s_ba = pole.neg_c();

        let radius = level_d_radius(&lattice, d, &pole, &pole2, &c_norm, prec)?;
        let f = GenusFunction {
            spec: GenusSpec::LevelD {
                lattice: lattice.clone(),
                d,
                torsion,
            },
            series_exact: None,
            series,
            reliability_radius: radius,
            eval: Evaluator::LevelD {
                lat: lattice,
                d,
                pole,
                pole2,
                c_norm,
                s_ba,
                alpha,
            },
            prec,
        };
        f.check_normalization()?;
        Ok(f)
    }

    /// `mu f(t/mu)`; stays normalized.
    pub fn scaled(self, mu: Cx) -> Result<GenusFunction> {
        if mu.is_zero() {
            return Err(Error::Precondition("scaling constant must be nonzero".into()));
        }
        let prec = self.prec;
        let mu_inv = mu.recip();
        let series = self.series.compose_scale(&mu_inv).scale(&mu);
        let radius = self.reliability_radius.clone() * mu.abs();
        let spec = self.spec.clone();
        Ok(GenusFunction {
            spec,
            series_exact: None,
            series,
            reliability_radius: radius,
            eval: Evaluator::Scaled {
                inner: Box::new(self),
                mu,
            },
            prec,
        })
    }

    /// Normalized shift `(f(t + t0) - f(t0)) / f'(t0)`.
    ///
    /// Supported for the closed-form families (Todd, degenerate); the series
    /// of the shifted function is rebuilt analytically around `t0`.
    pub fn shifted(self, t0: Cx) -> Result<GenusFunction> {
        let prec = self.prec;
        let series = self.series_at(&t0, self.series.order())?;
        let f_t0 = self.eval(&t0)?;
        // central difference at a step balancing truncation against rounding
        let h_mag = Float::with_val(prec, 2f64).pow((-(prec as i32) / 3) as i32);
        let h = Cx::from_real(h_mag);
        let fp_t0 = (&self.eval(&(&t0 + &h))? - &self.eval(&(&t0 - &h))?).mul_c(&h.mul_int(2).recip());
        if fp_t0.is_zero() {
            return Err(Error::Precondition("f'(t0) = 0: shift cannot be normalized".into()));
        }
        // normalize the analytic series the same way
        let shifted_series = series
            .sub(&TruncatedSeries::constant(f_t0.clone(), series.order()))
            .scale(&fp_t0.recip());
        let spec = self.spec.clone();
        let radius = self.reliability_radius.clone();
        let f = GenusFunction {
            spec,
            series_exact: None,
            series: shifted_series,
            reliability_radius: radius,
            eval: Evaluator::Shifted {
                inner: Box::new(self),
                t0,
                f_t0,
                fp_t0,
            },
            prec,
        };
        Ok(f)
    }

    /// Analytic series of `f(t0 + t)` for the closed-form families.
    fn series_at(&self, t0: &Cx, order: i64) -> Result<CxSeries> {
        let prec = self.prec;
        let witness = Cx::zero(prec);
        match &self.eval {
            Evaluator::Todd { a, b } => {
                if a.sub_c(b).is_zero_coeff() {
                    // f(t0+t) = (t0 + t)/(1 - a t0 - a t)
                    let num = TruncatedSeries::new(
                        0,
                        vec![t0.clone(), Cx::one(prec)],
                        order,
                        witness.clone(),
                    );
                    let c = &Cx::one(prec) - &(a * t0);
                    let den = TruncatedSeries::new(
                        0,
                        vec![c, a.neg_c()],
                        order,
                        witness,
                    );
                    return num.mul(&den.invert()?).truncate(order).into_ok();
                }
                let ea0 = (a * t0).exp();
                let eb0 = (b * t0).exp();
                let ea = TruncatedSeries::monomial(a.clone(), 1, order).exp()?.scale(&ea0);
                let eb = TruncatedSeries::monomial(b.clone(), 1, order).exp()?.scale(&eb0);
                let num = ea.sub(&eb);
                let den = eb.scale(a).sub(&ea.scale(b));
                num.mul(&den.invert()?).truncate(order).into_ok()
            }
            Evaluator::Sing { l, q, m } => {
                // sinh(m(t0+t)) = sinh(m t0) cosh(m t) + cosh(m t0) sinh(m t)
                let ep0 = (m * t0).exp();
                let em0 = ep0.recip();
                let sh0 = (&ep0 - &em0).div_int(2);
                let ch0 = (&ep0 + &em0).div_int(2);
                let ep = TruncatedSeries::monomial(m.clone(), 1, order + 1).exp()?;
                let em = TruncatedSeries::monomial(m.neg_c(), 1, order + 1).exp()?;
                let sh = ep.sub(&em).map_coeffs(witness.clone(), |c| c.div_int(2));
                let ch = ep.add(&em).map_coeffs(witness.clone(), |c| c.div_int(2));
                let sh_shift = sh.scale(&ch0).add(&ch.scale(&sh0));
                let ch_shift = ch.scale(&ch0).add(&sh.scale(&sh0));
                let el0 = (l * t0).exp();
                let el = TruncatedSeries::monomial(l.clone(), 1, order + 1)
                    .exp()?
                    .scale(&el0);
                let den = sh_shift.scale(q).add(&ch_shift.scale(m));
                el.mul(&sh_shift).mul(&den.invert()?).truncate(order).into_ok()
            }
            Evaluator::SingLimit { l, q } => {
                let num = TruncatedSeries::new(
                    0,
                    vec![t0.clone(), Cx::one(prec)],
                    order,
                    witness.clone(),
                );
                let el0 = (l * t0).exp();
                let el = TruncatedSeries::monomial(l.clone(), 1, order).exp()?.scale(&el0);
                let c0 = &Cx::one(prec) + &(q * t0);
                let den = TruncatedSeries::new(0, vec![c0, q.clone()], order, witness);
                num.mul(&el).mul(&den.invert()?).truncate(order).into_ok()
            }
            _ => Err(Error::Precondition(
                "argument shift is supported for the closed-form families only".into(),
            )),
        }
    }

    fn check_normalization(&self) -> Result<()> {
        let ok_numeric = self.series.valuation() == 1 && {
            let lead = self.series.coeff(1);
            (&lead - &Cx::one(self.prec)).abs()
                < Float::with_val(self.prec, 1e-40)
        };
        if !ok_numeric {
            return Err(Error::Precondition(
                "genus series does not satisfy f(0) = 0, f'(0) = 1".into(),
            ));
        }
        if let Some(se) = &self.series_exact {
            let one = Rat::from_integer(1.into());
            if se.valuation() != 1 || se.coeff(1) != one {
                return Err(Error::Precondition(
                    "exact genus series does not satisfy f(0) = 0, f'(0) = 1".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn reliability_radius(&self) -> &Float {
        &self.reliability_radius
    }

    /// Lattice of the function, when it has one.
    pub fn lattice(&self) -> Option<&Arc<Lattice>> {
        match &self.eval {
            Evaluator::Krichever { lat, .. } | Evaluator::LevelD { lat, .. } => Some(lat),
            Evaluator::Scaled { inner, .. } | Evaluator::Shifted { inner, .. } => inner.lattice(),
            _ => None,
        }
    }

    /// Baker-Akhiezer parameter and exponent `(s, alpha)` for the lattice
    /// families (level-d reports its Krichever parameters).
    pub fn krichever_parameters(&self) -> Option<(Cx, Cx)> {
        match &self.eval {
            Evaluator::Krichever { s, alpha, .. } => Some((s.clone(), alpha.clone())),
            Evaluator::LevelD { s_ba, alpha, .. } => Some((s_ba.clone(), alpha.clone())),
            _ => None,
        }
    }

    /// Sampling radius for the functional-equation verifier.
    pub fn sampling_radius(&self) -> Float {
        match &self.eval {
            Evaluator::LevelD { .. } => self.reliability_radius.clone() / 3u32,
            Evaluator::Krichever { lat, .. } => {
                lat.omega1().abs() * Float::with_val(self.prec, 0.3)
            }
            Evaluator::Todd { .. } | Evaluator::Sing { .. } | Evaluator::SingLimit { .. } => {
                Float::with_val(self.prec, 0.5)
            }
            Evaluator::Scaled { inner, mu } => inner.sampling_radius() * mu.abs(),
            Evaluator::Shifted { inner, .. } => inner.sampling_radius(),
        }
    }

    /// Evaluate `f(t)`.
    pub fn eval(&self, t: &Cx) -> Result<Cx> {
        match &self.eval {
            Evaluator::Todd { a, b } => {
                if a.sub_c(b).is_zero_coeff() {
                    let den = &Cx::one(self.prec) - &(a * t);
                    if den.is_zero() {
                        return Err(Error::PoleProximity("Todd limit pole".into()));
                    }
                    return Ok(&t.clone() / &den);
                }
                let ea = (a * t).exp();
                let eb = (b * t).exp();
                let den = &(a * &eb) - &(b * &ea);
                if den.is_zero() {
                    return Err(Error::PoleProximity("Todd pole".into()));
                }
                Ok(&(&ea - &eb) / &den)
            }
            Evaluator::Sing { l, q, m } => {
                let ep = (m * t).exp();
                let em = ep.recip();
                let sh = (&ep - &em).div_int(2);
                let ch = (&ep + &em).div_int(2);
                let den = &(q * &sh) + &(m * &ch);
                if den.is_zero() {
                    return Err(Error::PoleProximity("sing pole".into()));
                }
                Ok(&(&(l * t).exp() * &sh) / &den)
            }
            Evaluator::SingLimit { l, q } => {
                let den = &Cx::one(self.prec) + &(q * t);
                if den.is_zero() {
                    return Err(Error::PoleProximity("sing limit pole".into()));
                }
                Ok(&(t * &(l * t).exp()) / &den)
            }
            Evaluator::Krichever {
                lat,
                s,
                alpha,
                sigma_s,
                zeta_s,
            } => {
                let num = &(&(&(alpha + zeta_s) * t).exp() * sigma_s) * &lat.sigma(t);
                let den = lat.sigma(&(s + t));
                if den.is_zero() {
                    return Err(Error::PoleProximity("Krichever pole (t = -s mod lattice)".into()));
                }
                Ok(&num / &den)
            }
            Evaluator::LevelD { lat, d, .. } => {
                if t.abs() > self.reliability_radius {
                    return Err(Error::OutsideReliabilityRadius {
                        t_abs: format!("{:.3e}", t.abs().to_f64()),
                        radius: format!("{:.3e}", self.reliability_radius.to_f64()),
                    });
                }
                let _ = lat;
                let w = &self.eval_g(t)? / &t.powi(*d as i64);
                Ok(t * &w.ln().div_int(*d as i64).exp())
            }
            Evaluator::Scaled { inner, mu } => {
                Ok(&inner.eval(&(t / mu))? * mu)
            }
            Evaluator::Shifted {
                inner,
                t0,
                f_t0,
                fp_t0,
            } => {
                let v = inner.eval(&(t + t0))?;
                Ok(&(&v - f_t0) / fp_t0)
            }
        }
    }

    /// Evaluate `1/f(t)`.
    pub fn eval_inv(&self, t: &Cx) -> Result<Cx> {
        let v = self.eval(t)?;
        if v.is_zero() {
            return Err(Error::PoleProximity("1/f at a zero of f".into()));
        }
        Ok(v.recip())
    }

    /// The elliptic function `g = f^d` of a level-d genus, evaluated anywhere
    /// (it is globally single-valued).
    pub fn eval_g(&self, t: &Cx) -> Result<Cx> {
        match &self.eval {
            Evaluator::LevelD {
                lat,
                d,
                pole,
                pole2,
                c_norm,
                ..
            } => {
                let num = lat.sigma(t).powi(*d as i64);
                let den1 = lat.sigma(&(t - pole)).powi(*d as i64 - 1);
                let den2 = lat.sigma(&(t - pole2));
                let den = &den1 * &den2;
                if den.is_zero() {
                    return Err(Error::PoleProximity("g pole".into()));
                }
                Ok(&(c_norm * &num) / &den)
            }
            _ => Err(Error::Precondition("eval_g requires a level-d genus".into())),
        }
    }

    /// Analytic continuation of a level-d genus along a polyline. The first
    /// point must lie inside the reliability disc; the d-th root of `g` is
    /// tracked continuously from there.
    pub fn eval_continued(&self, path: &[Cx]) -> Result<Cx> {
        let d = match &self.eval {
            Evaluator::LevelD { d, .. } => *d,
            _ => return self.eval(path.last().ok_or_else(|| Error::Precondition("empty path".into()))?),
        };
        let start = path
            .first()
            .ok_or_else(|| Error::Precondition("empty path".into()))?;
        let mut current = self.eval(start)?;
        let mut at = start.clone();
        let prec = self.prec;
        let steps = 64usize;
        for target in path.iter().skip(1) {
            for j in 1..=steps {
                let frac = Cx::from_f64(j as f64 / steps as f64, 0.0, prec);
                let z = &at + &(&(target - &at) * &frac);
                let g = self.eval_g(&z)?;
                // candidate roots of g at z, branch chosen by continuity
                let principal = g.ln().div_int(d as i64).exp();
                let mut best: Option<Cx> = None;
                let mut best_dist = Float::with_val(prec, f64::INFINITY);
                for r in 0..d {
                    let angle = Cx::pi(prec).mul_int(2 * r as i64).div_int(d as i64);
                    let rot = (&Cx::i(prec) * &angle).exp();
                    let cand = &principal * &rot;
                    let dist = (&cand - &current).abs();
                    if dist < best_dist {
                        best_dist = dist;
                        best = Some(cand);
                    }
                }
                let chosen = best.expect("at least one root");
                let margin = current.abs() * Float::with_val(prec, 0.75);
                if best_dist > margin {
                    return Err(Error::MonodromyInconsistency(
                        "continuation step too coarse near a zero or pole".into(),
                    ));
                }
                current = chosen;
            }
            at = target.clone();
        }
        Ok(current)
    }

    /// Monodromy factors `(eps_1, eps_2)` with `1/f(t + 2 omega_l) = eps_l / f(t)`.
    ///
    /// Computed analytically from the frozen sigma-quasi-periodicity exponent
    /// and numerically as averaged ratios; both are returned along with their
    /// deviation and the per-sample scatter.
    pub fn monodromy_factors(&self, samples: usize, seed: u64) -> Result<MonodromyFactors> {
        let (s, alpha) = self.krichever_parameters().ok_or_else(|| {
            Error::Precondition("monodromy requires a Krichever or level-d genus".into())
        })?;
        let lat = self.lattice().expect("lattice families carry a lattice").clone();
        let prec = self.prec;
        let mut analytic = Vec::with_capacity(2);
        for l in [1usize, 2usize] {
            let w = lat.half_period(l);
            let eta = lat.eta(l);
            let expo = &(&(eta * &s) - &(w * &lat.zeta(&s)?)) - &(&alpha * w);
            analytic.push(expo.mul_int(2).exp());
        }

        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let base_r = self.sampling_radius();
        let mut numeric = Vec::with_capacity(2);
        let mut scatter = Float::new(prec);
        for l in [1usize, 2usize] {
            let w2 = lat.half_period(l).mul_int(2);
            let mut ratios: Vec<Cx> = Vec::new();
            let mut guard = 0;
            while ratios.len() < samples && guard < 50 * samples {
                guard += 1;
                let re: f64 = rng.gen_range(-1.0..1.0);
                let im: f64 = rng.gen_range(-1.0..1.0);
                if re * re + im * im > 1.0 || re * re + im * im < 0.05 {
                    continue;
                }
                let t = Cx::from_f64(re, im, prec).scale(&(base_r.clone() * 0.9f64));
                let ft = match self.eval(&t) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let shifted_t = &t + &w2;
                let fs = match &self.eval {
                    Evaluator::LevelD { .. } => {
                        match self.eval_continued(&[t.clone(), shifted_t]) {
                            Ok(v) => v,
                            Err(_) => continue,
                        }
                    }
                    _ => match self.eval(&shifted_t) {
                        Ok(v) => v,
                        Err(_) => continue,
                    },
                };
                if fs.is_zero() {
                    continue;
                }
                // 1/f(t+2w) = eps/f(t)  =>  eps = f(t)/f(t+2w)
                ratios.push(&ft / &fs);
            }
            if ratios.len() < samples.max(1) {
                return Err(Error::Sampling("too few admissible monodromy samples".into()));
            }
            let mean = {
                let mut acc = Cx::zero(prec);
                for r in &ratios {
                    acc = &acc + r;
                }
                acc.div_int(ratios.len() as i64)
            };
            for r in &ratios {
                let d = (r - &mean).abs();
                if d > scatter {
                    scatter = d;
                }
            }
            numeric.push(mean);
        }
        let deviation = {
            let d1 = (&analytic[0] - &numeric[0]).abs();
            let d2 = (&analytic[1] - &numeric[1]).abs();
            if d1 > d2 {
                d1
            } else {
                d2
            }
        };
        if scatter.clone().to_f64() > 1e-30 {
            return Err(Error::MonodromyInconsistency(format!(
                "sample scatter {:e} exceeds 1e-30",
                scatter.to_f64()
            )));
        }
        Ok(MonodromyFactors {
            analytic: [analytic[0].clone(), analytic[1].clone()],
            numeric: [numeric[0].clone(), numeric[1].clone()],
            deviation,
            scatter,
        })
    }
}

fn krichever_series(
    lat: &Lattice,
    s: &Cx,
    alpha: &Cx,
    sigma_s: &Cx,
    zeta_s: &Cx,
    order: i64,
) -> Result<CxSeries> {
    let prec = lat.prec();
    // f = exp((alpha + zeta(s)) t) sigma(s) sigma(t) / sigma(s + t)
    let origin = lat.origin_series(order + 1);
    let e = TruncatedSeries::monomial(alpha.add_c(zeta_s), 1, order + 1).exp()?;
    let sig_st = lat.expansion_at(s, order + 1)?.sigma;
    let f = e
        .mul(&origin.sigma)
        .scale(sigma_s)
        .mul(&sig_st.invert()?);
    let _ = prec;
    Ok(f.truncate(order))
}

/// Probe-based reliability radius for the principal-branch level-d formula:
/// the largest radius `<= 0.4 min(|P|, shortest vector)` on which
/// `Re(g/t^d) > 0` along a 64-point circle, halving until the probe passes.
fn level_d_radius(
    lat: &Lattice,
    d: u32,
    pole: &Cx,
    pole2: &Cx,
    c_norm: &Cx,
    prec: u32,
) -> Result<Float> {
    let mut r = {
        let pa = pole.abs();
        let sv = lat.shortest_vector().clone();
        let m = if pa < sv { pa } else { sv };
        m * Float::with_val(prec, 0.4)
    };
    let g_at = |t: &Cx| -> Result<Cx> {
        let num = lat.sigma(t).powi(d as i64);
        let den1 = lat.sigma(&(t - pole)).powi(d as i64 - 1);
        let den2 = lat.sigma(&(t - pole2));
        Ok(&(c_norm * &num) / &(&den1 * &den2))
    };
    for _ in 0..48 {
        let mut ok = true;
        for j in 0..64 {
            let ang = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / 64.0;
            let t = Cx::from_f64(ang.cos(), ang.sin(), prec).scale(&r);
            let w = &g_at(&t)? / &t.powi(d as i64);
            if !(w.re().clone() > 0) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(r);
        }
        r = r / 2u32;
    }
    Err(Error::Precondition(
        "could not find a branch-safe reliability radius".into(),
    ))
}

/// Analytic and numeric monodromy factors with their agreement data.
pub struct MonodromyFactors {
    pub analytic: [Cx; 2],
    pub numeric: [Cx; 2],
    /// max |analytic - numeric| over both periods
    pub deviation: Float,
    /// max per-sample deviation of the numeric ratios from their mean
    pub scatter: Float,
}

impl MonodromyFactors {
    /// Smallest `r <= bound` with `|eps_l^r - 1| < tol` for both factors.
    pub fn detected_order(&self, bound: u32, tol: f64) -> Option<u32> {
        let prec = self.analytic[0].prec();
        let tolf = Float::with_val(prec, tol);
        'outer: for r in 1..=bound {
            for e in &self.analytic {
                let p = e.powi(r as i64);
                if (&p - &Cx::one(prec)).abs() > tolf {
                    continue 'outer;
                }
            }
            return Some(r);
        }
        None
    }
}

/// Pointwise Baker-Akhiezer function
/// `Phi_s(t) = sigma(s+t) / (sigma(s) sigma(t)) exp(-zeta(s) t)`.
pub struct BakerAkhiezer {
    lat: Arc<Lattice>,
    pub s: Cx,
    sigma_s: Cx,
    zeta_s: Cx,
}

impl BakerAkhiezer {
    pub fn new(s: Cx, lat: Arc<Lattice>) -> Result<Self> {
        let prec = lat.prec();
        let tol = lat.shortest_vector().clone() * Float::with_val(prec, 1e-8);
        if lat.distance_to_lattice(&s) < tol {
            return Err(Error::Precondition("Baker-Akhiezer parameter s must avoid the lattice".into()));
        }
        let sigma_s = lat.sigma(&s);
        let zeta_s = lat.zeta(&s)?;
        Ok(BakerAkhiezer {
            lat,
            s,
            sigma_s,
            zeta_s,
        })
    }

    /// `Phi_s(t)`; errors at the pole `t` in the lattice, returns 0 at the
    /// zeros `t = -s` mod lattice.
    pub fn eval(&self, t: &Cx) -> Result<Cx> {
        let prec = self.lat.prec();
        let tol = self.lat.shortest_vector().clone() * Float::with_val(prec, 1e-10);
        if self.lat.distance_to_lattice(t) < tol {
            return Err(Error::PoleProximity("Phi_s pole at the lattice".into()));
        }
        let num = self.lat.sigma(&(&self.s + t));
        let den = &self.sigma_s * &self.lat.sigma(t);
        Ok(&(&num / &den) * &(&self.zeta_s.neg_c() * t).exp())
    }

    /// `Phi_s'(t) = Phi_s(t) (zeta(s+t) - zeta(t) - zeta(s))`.
    pub fn eval_prime(&self, t: &Cx) -> Result<Cx> {
        let phi = self.eval(t)?;
        let log_deriv = &(&self.lat.zeta(&(&self.s + t))? - &self.lat.zeta(t)?) - &self.zeta_s;
        Ok(&phi * &log_deriv)
    }

    /// Laurent series at the origin: valuation -1, leading coefficient 1.
    pub fn laurent_series(&self, order: i64) -> Result<CxSeries> {
        let origin = self.lat.origin_series(order + 2);
        let sig_st = self.lat.expansion_at(&self.s, order + 2)?.sigma;
        // t*Phi = [sigma(s+t)/sigma(s)] * [t/sigma(t)] * exp(-zeta(s) t)
        let t_over_sigma = origin.sigma.shift_exponents(-1).invert()?;
        let e = TruncatedSeries::monomial(self.zeta_s.neg_c(), 1, order + 2).exp()?;
        let t_phi = sig_st
            .scale(&self.sigma_s.recip())
            .mul(&t_over_sigma)
            .mul(&e);
        Ok(t_phi.shift_exponents(-1).truncate(order))
    }
}

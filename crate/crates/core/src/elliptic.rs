//! High-precision Weierstrass functions and lattice bookkeeping.
//!
//! A [`Lattice`] is constructed from half-periods `omega1`, `omega2` with
//! `Im(omega2/omega1) > 0`. Construction computes the invariants `g2`, `g3`
//! from Eisenstein q-series, the quasi-period `eta1` from theta derivatives
//! at zero, and `eta2` from the Legendre relation
//! `eta1*omega2 - eta2*omega1 = pi*i/2`.
//!
//! Pointwise evaluation of `sigma`, `zeta`, `wp`, `wp'` goes through the
//! `theta1` q-series after reducing the argument into the fundamental cell;
//! the quasi-periodicity factors are accumulated exactly in the exponent, so
//! large arguments lose no accuracy to cancellation. The series converge like
//! `|q|^(k^2)`, which at 256 bits means a dozen terms or so.
//!
//! Truncated lattice sums are also provided; they converge far too slowly for
//! production use and exist as an independent cross-check oracle for tests.

use rug::ops::Pow;
use rug::Float;

use crate::coeff::Coeff;
use crate::cx::{float_pi, Cx};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::series::TruncatedSeries;

/// Residual tolerance at a given working precision: `2^-(bits-120)`.
/// Empirically 40 decimal digits of headroom below 256-bit arithmetic.
pub fn identity_tolerance(prec: u32) -> Float {
    Float::with_val(prec.max(64), 2).pow(-((prec as i64) - 120))
}

/// Period pair with derived invariants.
#[derive(Debug, Clone)]
pub struct Lattice {
    prec: u32,
    omega1: Cx,
    omega2: Cx,
    tau: Cx,
    /// Nome squared, `Q = exp(2*pi*i*tau)`; all series here use integer powers of `Q`.
    q_sq: Cx,
    g2: Cx,
    g3: Cx,
    eta1: Cx,
    eta2: Cx,
    theta1_prime0: Cx,
    shortest: Float,
}

impl Lattice {
    /// Build a lattice from half-periods. Periods are `2*omega1`, `2*omega2`.
    pub fn from_periods(omega1: Cx, omega2: Cx, prec: u32) -> Result<Self> {
        let tau = &omega2 / &omega1;
        let im_tau = tau.im().clone();
        if !(im_tau > 0) {
            return Err(Error::Lattice("Im(omega2/omega1) must be positive".into()));
        }
        // |q| = exp(-pi Im tau); past ~0.9 the series need too many terms for
        // the requested precision to be honest.
        if im_tau.to_f64() < 0.035 {
            return Err(Error::Lattice(format!(
                "nome too close to 1 for requested precision (Im tau = {})",
                im_tau.to_f64()
            )));
        }
        let pi = float_pi(prec);
        let two_pi_i_tau = Cx::from_floats(Float::new(prec), pi.clone() * 2u32).mul_c(&tau);
        let q_sq = two_pi_i_tau.exp();

        let (e2, e4, e6) = eisenstein_series(&q_sq, prec);
        // g2 = pi^4 E4 / (12 omega1^4), g3 = pi^6 E6 / (216 omega1^6)
        let pi_c = Cx::from_real(pi.clone());
        let om1_4 = omega1.powi(4);
        let om1_6 = omega1.powi(6);
        let g2 = &(&pi_c.powi(4) * &e4).div_int(12) / &om1_4;
        let g3 = &(&pi_c.powi(6) * &e6).div_int(216) / &om1_6;
        // eta1 = pi^2 E2 / (12 omega1); cross-checked against theta
        // derivatives below.
        let eta1 = &(&pi_c.powi(2) * &e2).div_int(12) / &omega1;
        // Legendre: eta1 omega2 - eta2 omega1 = pi*i/2
        let half_pi_i = Cx::from_floats(Float::new(prec), pi / 2u32);
        let eta2 = &(&(&eta1 * &omega2) - &half_pi_i) / &omega1;

        let mut shortest = Float::with_val(prec, f64::INFINITY);
        for (m, n) in [(1i64, 0i64), (0, 1), (1, 1), (1, -1)] {
            let w = lattice_point(&omega1, &omega2, m, n);
            let a = w.abs();
            if a < shortest {
                shortest = a;
            }
        }

        let mut lat = Lattice {
            prec,
            omega1,
            omega2,
            tau,
            q_sq,
            g2,
            g3,
            eta1,
            eta2,
            theta1_prime0: Cx::one(prec),
            shortest,
        };

        // theta-derivative route for eta1:
        // eta1 = -pi^2 theta1'''(0) / (12 omega1 theta1'(0))
        //      = -(pi/(2 omega1))^2 * omega1 * (theta1'''(0)/theta1'(0)) / 3
        let t0 = lat.theta_suite(&Cx::zero(prec));
        lat.theta1_prime0 = t0.d1.clone();
        let s = lat.pi_over_2om1();
        let eta1_theta = (&(&s.powi(2) * &lat.omega1) * &(&t0.d3 / &t0.d1))
            .div_int(3)
            .neg_c();
        let diff = (&eta1_theta - &lat.eta1).abs();
        let tol = identity_tolerance(prec);
        if diff > tol * Float::with_val(prec, 1e12) {
            return Err(Error::Lattice(format!(
                "eta1 routes disagree by {:e}",
                diff.to_f64()
            )));
        }
        Ok(lat)
    }

    /// Paper-normalized lattice `2*pi*i*(Z + tau*Z)`, i.e. `omega1 = pi*i`.
    pub fn normalized(tau: Cx, prec: u32) -> Result<Self> {
        let omega1 = Cx::pi_i(prec);
        let omega2 = &omega1 * &tau;
        Lattice::from_periods(omega1, omega2, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn omega1(&self) -> &Cx {
        &self.omega1
    }

    pub fn omega2(&self) -> &Cx {
        &self.omega2
    }

    /// Half-period by index: `1 -> omega1`, `2 -> omega2`.
    pub fn half_period(&self, l: usize) -> &Cx {
        match l {
            1 => &self.omega1,
            2 => &self.omega2,
            _ => panic!("half-period index must be 1 or 2"),
        }
    }

    /// Quasi-period `eta_l = zeta(omega_l)` by index.
    pub fn eta(&self, l: usize) -> &Cx {
        match l {
            1 => &self.eta1,
            2 => &self.eta2,
            _ => panic!("quasi-period index must be 1 or 2"),
        }
    }

    pub fn tau(&self) -> &Cx {
        &self.tau
    }

    pub fn g2(&self) -> &Cx {
        &self.g2
    }

    pub fn g3(&self) -> &Cx {
        &self.g3
    }

    /// Length of the shortest nonzero lattice vector.
    pub fn shortest_vector(&self) -> &Float {
        &self.shortest
    }

    /// `eta1*omega2 - eta2*omega1 - pi*i/2`; should vanish to working precision.
    pub fn legendre_residual(&self) -> Float {
        let pi = float_pi(self.prec);
        let half_pi_i = Cx::from_floats(Float::new(self.prec), pi / 2u32);
        (&(&(&self.eta1 * &self.omega2) - &(&self.eta2 * &self.omega1)) - &half_pi_i).abs()
    }

    fn pi_over_2om1(&self) -> Cx {
        let pi_c = Cx::from_real(float_pi(self.prec));
        &pi_c / &self.omega1.mul_int(2)
    }

    /// Reduce `z = 2m*omega1 + 2n*omega2 + z0` with `z0` in the fundamental
    /// cell (coefficients rounded to nearest).
    pub fn reduce(&self, z: &Cx) -> (Cx, i64, i64) {
        let p = self.prec;
        let a = Float::with_val(p, self.omega1.re()) * 2u32;
        let b = Float::with_val(p, self.omega1.im()) * 2u32;
        let c = Float::with_val(p, self.omega2.re()) * 2u32;
        let d = Float::with_val(p, self.omega2.im()) * 2u32;
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        let e = Float::with_val(p, z.re());
        let f = Float::with_val(p, z.im());
        let x = (e.clone() * d - f.clone() * c) / det.clone();
        let y = (a * f - b * e) / det;
        let m = x.to_f64().round() as i64;
        let n = y.to_f64().round() as i64;
        if m == 0 && n == 0 {
            return (z.clone(), 0, 0);
        }
        let shift = lattice_point(&self.omega1, &self.omega2, m, n);
        (z - &shift, m, n)
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn distance_to_lattice(&self, z: &Cx) -> Float {
        let (z0, _, _) = self.reduce(z);
        let mut best = z0.abs();
        for (m, n) in [
            (1i64, 0i64),
            (-1, 0),
            (0, 1),
            (0, -1),
            (1, 1),
            (1, -1),
            (-1, 1),
            (-1, -1),
        ] {
            let w = lattice_point(&self.omega1, &self.omega2, m, n);
            let d = (&z0 - &w).abs();
            if d < best {
                best = d;
            }
        }
        best
    }

    fn pole_threshold(&self) -> Float {
        self.omega1.abs() * Float::with_val(self.prec, 1e-8)
    }

    fn check_pole(&self, z: &Cx, what: &str) -> Result<()> {
        if self.distance_to_lattice(z) < self.pole_threshold() {
            return Err(Error::PoleProximity(format!(
                "{} evaluated within 1e-8*|omega1| of a lattice point",
                what
            )));
        }
        Ok(())
    }

    /// `theta1` and its first three derivatives at `u`, all divided by the
    /// common factor `2 q^{1/4}` (which cancels in every formula used here).
    fn theta_suite(&self, u: &Cx) -> ThetaSuite {
        let p = self.prec;
        let i_u = &Cx::i(p) * u;
        let w = i_u.exp(); // e^{iu}
        let w2 = &w * &w;
        let w2_inv = w2.recip();
        let mut wp = w.clone(); // w^{2k+1}
        let mut wm = w.recip();
        let mut qt = Cx::one(p); // Q^{k(k+1)/2}
        let mut qk = Cx::one(p); // Q^k
        let two_i = Cx::from_f64(0.0, 2.0, p);

        let mut s0 = Cx::zero(p);
        let mut s1 = Cx::zero(p);
        let mut s2 = Cx::zero(p);
        let mut s3 = Cx::zero(p);
        let stop = Float::with_val(p, 2f64).pow(-((p as i64) + 48));
        let mut k: i64 = 0;
        loop {
            let sin_t = &(&wp - &wm) / &two_i;
            let cos_t = (&wp + &wm).div_int(2);
            let m = 2 * k + 1;
            let base = if k % 2 == 0 { qt.clone() } else { qt.neg_c() };
            s0 = &s0 + &(&base * &sin_t);
            s1 = &s1 + &(&base.mul_int(m) * &cos_t);
            s2 = &s2 - &(&base.mul_int(m * m) * &sin_t);
            s3 = &s3 - &(&base.mul_int(m * m * m) * &cos_t);

            // next term magnitude estimate
            let mag = qt.abs() * self.q_sq.abs().pow((k + 1) as u32)
                * (wp.abs() + wm.abs())
                * Float::with_val(p, ((m + 2).pow(3)) as f64);
            if k >= 2 && mag < stop {
                break;
            }
            k += 1;
            qk = &qk * &self.q_sq;
            qt = &qt * &qk;
            wp = &wp * &w2;
            wm = &wm * &w2_inv;
            if k > 10_000 {
                break;
            }
        }
        ThetaSuite {
            d0: s0,
            d1: s1,
            d2: s2,
            d3: s3,
        }
    }

    /// Weierstrass sigma. Entire; no pole error.
    pub fn sigma(&self, z: &Cx) -> Cx {
        let (z0, m, n) = self.reduce(z);
        let base = self.sigma_cell(&z0);
        if m == 0 && n == 0 {
            return base;
        }
        // sigma(z + 2m w1 + 2n w2) = (-1)^{m+n+mn} sigma(z) e^{(2m eta1 + 2n eta2)(z + m w1 + n w2)}
        let h = &self.eta1.mul_int(2 * m) + &self.eta2.mul_int(2 * n);
        let mid = &z0 + &(&self.omega1.mul_int(m) + &self.omega2.mul_int(n));
        let factor = (&h * &mid).exp();
        let sign = if (m + n + m * n) % 2 == 0 { 1 } else { -1 };
        (&base * &factor).mul_int(sign)
    }

    fn sigma_cell(&self, z0: &Cx) -> Cx {
        let p = self.prec;
        if z0.is_zero() {
            return Cx::zero(p);
        }
        let u = &self.pi_over_2om1() * z0;
        let t = self.theta_suite(&u);
        // sigma(z) = (2 omega1 / pi) e^{eta1 z^2/(2 omega1)} theta1(u)/theta1'(0)
        let quad = &(&(&self.eta1 * z0) * z0) / &self.omega1.mul_int(2);
        let pref = &self.omega1.mul_int(2) / &Cx::pi(p);
        &(&pref * &quad.exp()) * &(&t.d0 / &self.theta1_prime0)
    }

    /// Weierstrass zeta. Errors on pole proximity.
    pub fn zeta(&self, z: &Cx) -> Result<Cx> {
        self.check_pole(z, "zeta")?;
        let (z0, m, n) = self.reduce(z);
        let u = &self.pi_over_2om1() * &z0;
        let t = self.theta_suite(&u);
        // zeta(z0) = eta1 z0 / omega1 + pi/(2 omega1) * theta1'(u)/theta1(u)
        let lin = &(&self.eta1 * &z0) / &self.omega1;
        let log_deriv = &(&t.d1 / &t.d0) * &self.pi_over_2om1();
        let mut out = &lin + &log_deriv;
        if m != 0 || n != 0 {
            out = &out + &(&self.eta1.mul_int(2 * m) + &self.eta2.mul_int(2 * n));
        }
        Ok(out)
    }

    /// Weierstrass p-function. Errors on pole proximity.
    pub fn wp(&self, z: &Cx) -> Result<Cx> {
        Ok(self.wp_both(z)?.0)
    }

    /// Derivative of the p-function. Errors on pole proximity.
    pub fn wp_prime(&self, z: &Cx) -> Result<Cx> {
        Ok(self.wp_both(z)?.1)
    }

    /// `(wp, wp')` in one theta pass.
    pub fn wp_both(&self, z: &Cx) -> Result<(Cx, Cx)> {
        self.check_pole(z, "wp")?;
        let (z0, _, _) = self.reduce(z);
        let u = &self.pi_over_2om1() * &z0;
        let t = self.theta_suite(&u);
        let g = &t.d1 / &t.d0; // theta'/theta at u
        let gp = &(&t.d2 / &t.d0) - &(&g * &g);
        let gpp_raw = &(&t.d3 / &t.d0) - &(&(&(&t.d2 / &t.d0) * &g).mul_int(3)) ;
        let gpp = &gpp_raw + &(&(&g * &g) * &g).mul_int(2);
        let s = self.pi_over_2om1();
        let wp = &(&self.eta1 / &self.omega1).neg_c() - &(&s.powi(2) * &gp);
        let wp_p = (&s.powi(3) * &gpp).neg_c();
        Ok((wp, wp_p))
    }

    /// Taylor data of `wp`, `zeta`, `sigma` around a regular point `c`:
    /// series in `t` for `wp(c+t)`, `zeta(c+t)`, `sigma(c+t)`.
    pub fn expansion_at(&self, c: &Cx, order: i64) -> Result<PointExpansion> {
        self.check_pole(c, "expansion point")?;
        let p = self.prec;
        let wp_c = self.wp(c)?;
        let wp_p_c = self.wp_prime(c)?;
        let zeta_c = self.zeta(c)?;
        let sigma_c = self.sigma(c);
        // v'' = 6 v^2 - g2/2 with v(0) = wp(c), v'(0) = wp'(c)
        let n = order.max(2) as usize;
        let mut v = vec![Cx::zero(p); n + 1];
        v[0] = wp_c;
        v[1] = wp_p_c;
        for j in 0..n - 1 {
            // (j+2)(j+1) v_{j+2} = 6 sum_{a+b=j} v_a v_b - (g2/2) [j=0]
            let mut acc = Cx::zero(p);
            for a in 0..=j {
                acc = &acc + &(&v[a] * &v[j - a]);
            }
            acc = acc.mul_int(6);
            if j == 0 {
                acc = &acc - &self.g2.div_int(2);
            }
            v[j + 2] = acc.div_int(((j + 2) * (j + 1)) as i64);
        }
        let wp_series = TruncatedSeries::new(0, v, order, Cx::zero(p));
        // zeta(c+t) = zeta(c) - int wp
        let zeta_series =
            TruncatedSeries::constant(zeta_c, order + 1).add(&wp_series.integrate()?.neg());
        // sigma(c+t) = sigma(c) exp(int zeta)
        let log_rel = zeta_series.integrate()?;
        let sigma_series = log_rel.exp()?.scale(&sigma_c);
        Ok(PointExpansion {
            wp: wp_series,
            zeta: zeta_series,
            sigma: sigma_series,
        })
    }

    /// Numeric Laurent data at the origin: series of `wp`, `wp'`, `zeta` and
    /// `sigma` with complex coefficients, to the given order.
    pub fn origin_series(&self, order: i64) -> WeierstrassNumericSeries {
        let p = self.prec;
        let witness = Cx::zero(p);
        let coeffs = wp_laurent_coefficients(&self.g2, &self.g3, order);
        let wp = wp_series_from_coeffs(&coeffs, order, &witness);
        let wp_prime = wp.derivative();
        let zeta = zeta_series_from_coeffs(&coeffs, order, &witness);
        let sigma = sigma_series_from_coeffs(&coeffs, order, &witness);
        WeierstrassNumericSeries {
            wp,
            wp_prime,
            zeta,
            sigma,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (o1re, o1im) = self.omega1.to_decimal_strings();
        let (o2re, o2im) = self.omega2.to_decimal_strings();
        serde_json::json!({
            "omega1": {"re": o1re, "im": o1im},
            "omega2": {"re": o2re, "im": o2im},
            "precision_bits": self.prec,
        })
    }

    /// Rebuild from JSON; derived data is recomputed, never trusted from the file.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let prec = v
            .get("precision_bits")
            .and_then(|x| x.as_u64())
            .unwrap_or(256) as u32;
        let getc = |key: &str| -> Result<Cx> {
            let o = v
                .get(key)
                .ok_or_else(|| Error::Parse(format!("lattice JSON missing {}", key)))?;
            let re = o.get("re").and_then(|x| x.as_str()).unwrap_or("0");
            let im = o.get("im").and_then(|x| x.as_str()).unwrap_or("0");
            Cx::from_decimal_strings(re, im, prec)
                .ok_or_else(|| Error::Parse(format!("bad complex strings in {}", key)))
        };
        Lattice::from_periods(getc("omega1")?, getc("omega2")?, prec)
    }
}

struct ThetaSuite {
    d0: Cx,
    d1: Cx,
    d2: Cx,
    d3: Cx,
}

/// Series data of the Weierstrass functions around the origin, numeric domain.
pub struct WeierstrassNumericSeries {
    pub wp: TruncatedSeries<Cx>,
    pub wp_prime: TruncatedSeries<Cx>,
    pub zeta: TruncatedSeries<Cx>,
    pub sigma: TruncatedSeries<Cx>,
}

/// Taylor series of the Weierstrass functions around a regular point.
pub struct PointExpansion {
    pub wp: TruncatedSeries<Cx>,
    pub zeta: TruncatedSeries<Cx>,
    pub sigma: TruncatedSeries<Cx>,
}

fn lattice_point(omega1: &Cx, omega2: &Cx, m: i64, n: i64) -> Cx {
    &omega1.mul_int(2 * m) + &omega2.mul_int(2 * n)
}

/// `E2`, `E4`, `E6` as q-series in `Q = exp(2 pi i tau)`.
fn eisenstein_series(q_sq: &Cx, prec: u32) -> (Cx, Cx, Cx) {
    // number of terms: |Q|^N below the precision floor with slack for sigma_5(n)
    let qa = q_sq.abs().to_f64();
    let need = (prec as f64 + 48.0) * std::f64::consts::LN_2;
    let n_terms = (need / (-qa.ln())).ceil() as usize + 8;
    let sigmas = divisor_sums(n_terms);
    let mut e2 = Cx::one(prec);
    let mut e4 = Cx::one(prec);
    let mut e6 = Cx::one(prec);
    let mut qn = Cx::one(prec);
    for n in 1..=n_terms {
        qn = &qn * q_sq;
        let (s1, s3, s5) = sigmas[n];
        e2 = &e2 - &qn.mul_int(24 * s1);
        e4 = &e4 + &qn.mul_int(240 * s3);
        e6 = &e6 - &qn.mul_int(504 * s5);
    }
    (e2, e4, e6)
}

/// `(sigma_1(n), sigma_3(n), sigma_5(n))` for `n <= max_n` by divisor sieve.
fn divisor_sums(max_n: usize) -> Vec<(i64, i64, i64)> {
    let mut out = vec![(0i64, 0i64, 0i64); max_n + 1];
    for d in 1..=max_n {
        let d1 = d as i64;
        let d3 = d1 * d1 * d1;
        let d5 = d3 * d1 * d1;
        let mut m = d;
        while m <= max_n {
            out[m].0 += d1;
            out[m].1 += d3;
            out[m].2 += d5;
            m += d;
        }
    }
    out
}

/// Laurent coefficients `a_k` of `wp = t^-2 + sum a_k t^{2k}` over any
/// coefficient ring containing `g2/20` and `g3/28`.
fn wp_laurent_coefficients<C: Coeff>(g2: &C, g3: &C, order: i64) -> Vec<C> {
    let kmax = ((order.max(0)) / 2) as usize;
    let mut a: Vec<C> = Vec::with_capacity(kmax + 1);
    a.push(g2.zero_like()); // unused slot a_0
    if kmax >= 1 {
        a.push(g2.div_int(20));
    }
    if kmax >= 2 {
        a.push(g3.div_int(28));
    }
    for k in 3..=kmax {
        let mut acc = g2.zero_like();
        for m in 1..=(k - 2) {
            acc = acc.add_c(&a[m].mul_c(&a[k - 1 - m]));
        }
        let denom = (2 * k as i64 + 3) * (k as i64 - 2);
        a.push(acc.mul_int(3).div_int(denom));
    }
    a
}

fn wp_series_from_coeffs<C: Coeff>(a: &[C], order: i64, witness: &C) -> TruncatedSeries<C> {
    let mut s = TruncatedSeries::monomial(witness.one_like(), -2, order);
    for (k, ak) in a.iter().enumerate().skip(1) {
        if 2 * k as i64 <= order {
            s = s.add(&TruncatedSeries::monomial(ak.clone(), 2 * k as i64, order));
        }
    }
    s
}

fn zeta_series_from_coeffs<C: Coeff>(a: &[C], order: i64, witness: &C) -> TruncatedSeries<C> {
    // zeta = 1/t - sum a_k t^{2k+1}/(2k+1)
    let mut s = TruncatedSeries::monomial(witness.one_like(), -1, order);
    for (k, ak) in a.iter().enumerate().skip(1) {
        let e = 2 * k as i64 + 1;
        if e <= order {
            s = s.add(&TruncatedSeries::monomial(
                ak.div_int(e).neg_c(),
                e,
                order,
            ));
        }
    }
    s
}

fn sigma_series_from_coeffs<C: Coeff>(a: &[C], order: i64, witness: &C) -> TruncatedSeries<C> {
    // log(sigma/t) = - sum a_k t^{2k+2} / ((2k+1)(2k+2))
    let mut logs = TruncatedSeries::zero(order.max(0), witness.clone());
    for (k, ak) in a.iter().enumerate().skip(1) {
        let e = 2 * k as i64 + 2;
        if e <= logs.order() {
            let denom = (2 * k as i64 + 1) * (2 * k as i64 + 2);
            logs = logs.add(&TruncatedSeries::monomial(
                ak.div_int(denom).neg_c(),
                e,
                logs.order(),
            ));
        }
    }
    logs.exp().expect("valuation >= 1").shift_exponents(1)
}

/// Exact Weierstrass series with `g2`, `g3` adjoined as formal parameters.
pub struct WeierstrassSeries {
    pub wp: TruncatedSeries<MultiPoly>,
    pub wp_prime: TruncatedSeries<MultiPoly>,
    pub zeta: TruncatedSeries<MultiPoly>,
    pub sigma: TruncatedSeries<MultiPoly>,
}

/// Parametric series of `wp`, `wp'`, `zeta`, `sigma` around the origin, exact
/// in `Q[g2, g3]`. Requires `order >= 4`.
pub fn wp_series(order: i64) -> Result<WeierstrassSeries> {
    if order < 4 {
        return Err(Error::Precondition("wp series order must be >= 4".into()));
    }
    let ring = MultiPoly::zero(0, vec!["g2".into(), "g3".into()]);
    let g2 = ring.var(0);
    let g3 = ring.var(1);
    let a = wp_laurent_coefficients(&g2, &g3, order);
    let witness = ring.zero_like();
    let wp = wp_series_from_coeffs(&a, order, &witness);
    let wp_prime = wp.derivative();
    let zeta = zeta_series_from_coeffs(&a, order, &witness);
    let sigma = sigma_series_from_coeffs(&a, order, &witness);
    Ok(WeierstrassSeries {
        wp,
        wp_prime,
        zeta,
        sigma,
    })
}

/// Truncated lattice sum for `wp(z)`: slow test oracle, O(1/M^2) accurate.
pub fn wp_lattice_sum(lat: &Lattice, z: &Cx, m_max: i64) -> Cx {
    let mut acc = z.powi(-2);
    for m in -m_max..=m_max {
        for n in -m_max..=m_max {
            if m == 0 && n == 0 {
                continue;
            }
            let w = lattice_point(lat.omega1(), lat.omega2(), m, n);
            let t = &(z - &w).powi(-2) - &w.powi(-2);
            acc = &acc + &t;
        }
    }
    acc
}

/// Truncated lattice sums for the invariants: `g2 = 60 S4`, `g3 = 140 S6`.
pub fn invariants_lattice_sum(lat: &Lattice, m_max: i64) -> (Cx, Cx) {
    let mut s4 = Cx::zero(lat.prec());
    let mut s6 = Cx::zero(lat.prec());
    for m in -m_max..=m_max {
        for n in -m_max..=m_max {
            if m == 0 && n == 0 {
                continue;
            }
            let w = lattice_point(lat.omega1(), lat.omega2(), m, n);
            s4 = &s4 + &w.powi(-4);
            s6 = &s6 + &w.powi(-6);
        }
    }
    (s4.mul_int(60), s6.mul_int(140))
}

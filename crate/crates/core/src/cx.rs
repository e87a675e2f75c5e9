//! Arbitrary-precision complex scalars.
//!
//! Thin wrapper over `rug::Complex` (MPC) that fixes the result precision of
//! every binary operation to the larger operand precision, so a computation
//! started at `p` bits stays at `p` bits throughout. All transcendental
//! functions (exp, ln, sin, cos, sqrt) come from MPC and are correctly
//! rounded.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Complex, Float, Integer};

/// Default working precision in bits.
pub const DEFAULT_PREC: u32 = 256;

/// A complex number with explicit binary precision.
#[derive(Debug, Clone, PartialEq)]
pub struct Cx(pub Complex);

impl Cx {
    pub fn new(prec: u32) -> Self {
        Cx(Complex::new(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Cx(Complex::with_val(prec, (re, im)))
    }

    pub fn from_int(k: i64, prec: u32) -> Self {
        Cx(Complex::with_val(prec, (k, 0)))
    }

    pub fn from_floats(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        Cx(Complex::with_val(prec, (re, im)))
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Cx(Complex::with_val(prec, (re, Float::new(prec))))
    }

    /// Exact embedding of a rational number at the given precision.
    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let n = Integer::from_str_radix(&q.numer().to_string(), 10).expect("bigint digits");
        let d = Integer::from_str_radix(&q.denom().to_string(), 10).expect("bigint digits");
        let num = Float::with_val(prec, n);
        let den = Float::with_val(prec, d);
        Cx(Complex::with_val(prec, num / den))
    }

    pub fn zero(prec: u32) -> Self {
        Cx(Complex::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Cx(Complex::with_val(prec, (1, 0)))
    }

    /// The imaginary unit.
    pub fn i(prec: u32) -> Self {
        Cx(Complex::with_val(prec, (0, 1)))
    }

    /// pi as a complex value.
    pub fn pi(prec: u32) -> Self {
        Cx(Complex::with_val(prec, (Float::with_val(prec, Constant::Pi), 0)))
    }

    /// pi*i, the half-period of the normalized lattice 2*pi*i*(Z + tau*Z).
    pub fn pi_i(prec: u32) -> Self {
        Cx(Complex::with_val(prec, (0, Float::with_val(prec, Constant::Pi))))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec().0.max(self.0.prec().1)
    }

    pub fn re(&self) -> &Float {
        self.0.real()
    }

    pub fn im(&self) -> &Float {
        self.0.imag()
    }

    pub fn is_zero(&self) -> bool {
        self.0.real().is_zero() && self.0.imag().is_zero()
    }

    pub fn abs(&self) -> Float {
        self.0.clone().abs().into_real_imag().0
    }

    /// |z|^2 without the square root.
    pub fn norm_sqr(&self) -> Float {
        self.0.clone().norm().into_real_imag().0
    }

    pub fn conj(&self) -> Self {
        Cx(self.0.clone().conj())
    }

    pub fn exp(&self) -> Self {
        Cx(self.0.clone().exp())
    }

    /// Principal branch logarithm.
    pub fn ln(&self) -> Self {
        Cx(self.0.clone().ln())
    }

    pub fn sqrt(&self) -> Self {
        Cx(self.0.clone().sqrt())
    }

    pub fn sin(&self) -> Self {
        Cx(self.0.clone().sin())
    }

    pub fn cos(&self) -> Self {
        Cx(self.0.clone().cos())
    }

    pub fn recip(&self) -> Self {
        Cx(self.0.clone().recip())
    }

    pub fn scale(&self, f: &Float) -> Self {
        let prec = self.prec().max(f.prec());
        Cx((&self.0 * f).complete((prec, prec)))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let prec = self.prec();
        Cx((&self.0 * k).complete((prec, prec)))
    }

    pub fn div_int(&self, k: i64) -> Self {
        let prec = self.prec();
        Cx((&self.0 / k).complete((prec, prec)))
    }

    /// Integer power by binary exponentiation (negative exponents via recip).
    pub fn powi(&self, e: i64) -> Self {
        let prec = self.prec();
        if e == 0 {
            return Cx::one(prec);
        }
        let (mut base, mut e_abs) = if e < 0 {
            (self.recip(), (-e) as u64)
        } else {
            (self.clone(), e as u64)
        };
        let mut acc = Cx::one(prec);
        while e_abs > 0 {
            if e_abs & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e_abs >>= 1;
        }
        acc
    }

    /// Round to the nearest Gaussian integer pair (used by argument reduction).
    pub fn to_f64_parts(&self) -> (f64, f64) {
        (self.0.real().to_f64(), self.0.imag().to_f64())
    }

    /// Decimal rendering with enough digits for the stored precision.
    pub fn to_decimal_strings(&self) -> (String, String) {
        let digits = digits_for_prec(self.prec());
        (
            float_to_decimal(self.0.real(), digits),
            float_to_decimal(self.0.imag(), digits),
        )
    }

    pub fn from_decimal_strings(re: &str, im: &str, prec: u32) -> Option<Self> {
        let re = Float::parse(re).ok()?;
        let im = Float::parse(im).ok()?;
        Some(Cx(Complex::with_val(
            prec,
            (Float::with_val(prec, re), Float::with_val(prec, im)),
        )))
    }
}

/// Number of significant decimal digits carried by `prec` bits.
pub fn digits_for_prec(prec: u32) -> usize {
    (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 4
}

/// Render a Float in plain decimal scientific form.
pub fn float_to_decimal(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let (sign, mantissa, exp) = f.to_sign_string_exp(10, Some(digits));
    let s = if sign { "-" } else { "" };
    format!("{}0.{}e{}", s, mantissa, exp.unwrap_or(0))
}

pub fn float_pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

impl Add for &Cx {
    type Output = Cx;
    fn add(self, rhs: &Cx) -> Cx {
        let prec = self.prec().max(rhs.prec());
        Cx((&self.0 + &rhs.0).complete((prec, prec)))
    }
}

impl Sub for &Cx {
    type Output = Cx;
    fn sub(self, rhs: &Cx) -> Cx {
        let prec = self.prec().max(rhs.prec());
        Cx((&self.0 - &rhs.0).complete((prec, prec)))
    }
}

impl Mul for &Cx {
    type Output = Cx;
    fn mul(self, rhs: &Cx) -> Cx {
        let prec = self.prec().max(rhs.prec());
        Cx((&self.0 * &rhs.0).complete((prec, prec)))
    }
}

impl Div for &Cx {
    type Output = Cx;
    fn div(self, rhs: &Cx) -> Cx {
        let prec = self.prec().max(rhs.prec());
        Cx((&self.0 / &rhs.0).complete((prec, prec)))
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx((-&self.0).complete((self.prec(), self.prec())))
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_decimal_strings();
        write!(f, "({} + {}i)", re, im)
    }
}

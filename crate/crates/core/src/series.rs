//! Truncated univariate Laurent/power series.
//!
//! A series stores coefficients for exponents `valuation ..= order` where
//! `order` is the truncation order. Truncation propagates as the minimum
//! through every operation; nothing is ever padded, so an identity that holds
//! "to truncation" really was computed to that order. Valuations may be
//! negative (finite-order poles only). The coefficient domain is a type
//! parameter: exact rationals, high-precision complex numbers, or exact
//! polynomials in adjoined parameters all flow through the same code.

use crate::coeff::Coeff;
use crate::cx::Cx;
use crate::error::{Error, Result};
use rug::Float;

/// A truncated Laurent series over the coefficient domain `C`.
///
/// Invariants: `coeffs.len() == order - valuation + 1` and the leading
/// coefficient is nonzero, or the series is identically zero and `coeffs` is
/// empty. The `witness` is a zero of the domain and carries its context
/// (precision, arity).
#[derive(Debug, Clone)]
pub struct TruncatedSeries<C: Coeff> {
    valuation: i64,
    order: i64,
    coeffs: Vec<C>,
    witness: C,
}

impl<C: Coeff> TruncatedSeries<C> {
    /// Build from raw coefficients for exponents `valuation..`, truncated at `order`.
    pub fn new(valuation: i64, coeffs: Vec<C>, order: i64, witness: C) -> Self {
        let mut s = TruncatedSeries {
            valuation,
            order,
            coeffs,
            witness: witness.zero_like(),
        };
        s.normalize();
        s
    }

    pub fn zero(order: i64, witness: C) -> Self {
        TruncatedSeries {
            valuation: 0,
            order,
            coeffs: Vec::new(),
            witness: witness.zero_like(),
        }
    }

    pub fn constant(c: C, order: i64) -> Self {
        let witness = c.zero_like();
        TruncatedSeries::new(0, vec![c], order, witness)
    }

    pub fn one(order: i64, witness: C) -> Self {
        TruncatedSeries::constant(witness.one_like(), order)
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: C, k: i64, order: i64) -> Self {
        let witness = c.zero_like();
        TruncatedSeries::new(k, vec![c], order, witness)
    }

    /// The identity series `t`.
    pub fn t(order: i64, witness: C) -> Self {
        TruncatedSeries::monomial(witness.one_like(), 1, order)
    }

    fn normalize(&mut self) {
        // drop anything beyond the truncation order
        if self.valuation + self.coeffs.len() as i64 - 1 > self.order {
            let keep = (self.order - self.valuation + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        // strip leading zeros, renormalizing the valuation
        let lead = self.coeffs.iter().position(|c| !c.is_zero_coeff());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = 0;
                return;
            }
        }
        // pad so the stored length always equals order - valuation + 1
        let want = (self.order - self.valuation + 1).max(0) as usize;
        while self.coeffs.len() < want {
            self.coeffs.push(self.witness.zero_like());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest stored exponent. Meaningless for the zero series.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Truncation order: coefficients are known for exponents up to this.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn witness(&self) -> &C {
        &self.witness
    }

    /// Effective valuation used by order bookkeeping: a zero series known to
    /// order N is O(t^{N+1}).
    fn eff_valuation(&self) -> i64 {
        if self.is_zero() {
            self.order + 1
        } else {
            self.valuation
        }
    }

    /// Coefficient of `t^k` (zero if not stored; `k` must not exceed the order).
    pub fn coeff(&self, k: i64) -> C {
        if k > self.order {
            panic!("coefficient {} beyond truncation order {}", k, self.order);
        }
        if self.is_zero() || k < self.valuation {
            return self.witness.zero_like();
        }
        let idx = (k - self.valuation) as usize;
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| self.witness.zero_like())
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.first()
    }

    /// Iterate `(exponent, coefficient)` over stored nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero_coeff())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    pub fn truncate(&self, new_order: i64) -> Self {
        let mut s = self.clone();
        s.order = s.order.min(new_order);
        s.normalize();
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        if self.is_zero() {
            return other.truncate(order);
        }
        if other.is_zero() {
            return self.truncate(order);
        }
        let val = self.valuation.min(other.valuation);
        let len = (order - val + 1).max(0) as usize;
        let mut coeffs = Vec::with_capacity(len);
        for k in val..=order {
            let a = if k >= self.valuation && k <= self.order {
                self.coeff(k)
            } else {
                self.witness.zero_like()
            };
            let b = if k >= other.valuation && k <= other.order {
                other.coeff(k)
            } else {
                self.witness.zero_like()
            };
            coeffs.push(a.add_c(&b));
        }
        TruncatedSeries::new(val, coeffs, order, self.witness.clone())
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c = c.neg_c();
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product. Valuations add; the result order is
    /// `min(order_a + val_b, order_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.eff_valuation()).min(other.order + self.eff_valuation());
        if self.is_zero() || other.is_zero() {
            return TruncatedSeries::zero(order, self.witness.clone());
        }
        let val = self.valuation + other.valuation;
        let len = (order - val + 1).max(0) as usize;
        let mut coeffs = vec![self.witness.zero_like(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_coeff() {
                continue;
            }
            let ei = self.valuation + i as i64;
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = ei + other.valuation + j as i64;
                if e > order {
                    break;
                }
                let idx = (e - val) as usize;
                coeffs[idx] = coeffs[idx].add_c(&a.mul_c(b));
            }
        }
        TruncatedSeries::new(val, coeffs, order, self.witness.clone())
    }

    /// Multiply every coefficient by a domain constant.
    pub fn scale(&self, c: &C) -> Self {
        let mut s = self.clone();
        for a in &mut s.coeffs {
            *a = a.mul_c(c);
        }
        s.normalize();
        s
    }

    /// Shift exponents by `m`, i.e. multiply by `t^m`. The order shifts too.
    pub fn shift_exponents(&self, m: i64) -> Self {
        let mut s = self.clone();
        s.valuation += m;
        s.order += m;
        s
    }

    /// Laurent inverse: `mul(a, invert(a)) = 1` to the available order.
    ///
    /// The result has valuation `-val(a)` and carries the same number of
    /// known coefficients past the leading one.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let lead = self.coeffs[0].clone();
        let lead_inv = lead.try_inv().ok_or_else(|| {
            Error::Precondition("leading coefficient is not invertible in the domain".into())
        })?;
        let rel = (self.order - self.valuation) as usize;
        // u_k = a_{v+k} / a_v for k = 1..=rel; (1+u)^(-1) = 1 + w
        let mut u = Vec::with_capacity(rel + 1);
        u.push(self.witness.one_like());
        for k in 1..=rel {
            u.push(self.coeffs[k].mul_c(&lead_inv));
        }
        let mut w = vec![self.witness.zero_like(); rel + 1];
        w[0] = self.witness.one_like();
        for k in 1..=rel {
            let mut acc = u[k].clone();
            for j in 1..k {
                acc = acc.add_c(&u[j].mul_c(&w[k - j]));
            }
            w[k] = acc.neg_c();
        }
        let coeffs: Vec<C> = w.into_iter().map(|c| c.mul_c(&lead_inv)).collect();
        Ok(TruncatedSeries::new(
            -self.valuation,
            coeffs,
            -self.valuation + rel as i64,
            self.witness.clone(),
        ))
    }

    /// Substitute `inner` into `self` (Horner). Requires `val(inner) >= 1`
    /// and `val(self) >= 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.is_zero() && inner.valuation < 1 {
            return Err(Error::Precondition(
                "composition requires inner series with zero constant term".into(),
            ));
        }
        if !self.is_zero() && self.valuation < 0 {
            return Err(Error::Precondition(
                "composition requires outer series without pole".into(),
            ));
        }
        let m = inner.eff_valuation().max(1);
        let order = inner.order.min(m * (self.order + 1) - 1);
        if self.is_zero() {
            return Ok(TruncatedSeries::zero(order, self.witness.clone()));
        }
        let mut acc = TruncatedSeries::zero(order, self.witness.clone());
        for k in (0..=self.order).rev() {
            acc = acc.mul(inner).truncate(order);
            acc.order = order; // mul may report a larger provable order; cap uniformly
            let c = self.coeff(k);
            if !c.is_zero_coeff() {
                acc = acc.add(&TruncatedSeries::constant(c, order));
            }
        }
        Ok(acc)
    }

    /// Substitute `c*t` for `t`: coefficient of `t^k` picks up `c^k`.
    pub fn compose_scale(&self, c: &C) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut p = if self.valuation >= 0 {
            pow_coeff(c, self.valuation as u64)
        } else {
            let inv = c.try_inv().expect("scaling constant must be invertible");
            pow_coeff(&inv, (-self.valuation) as u64)
        };
        for a in &self.coeffs {
            coeffs.push(a.mul_c(&p));
            p = p.mul_c(c);
        }
        TruncatedSeries::new(self.valuation, coeffs, self.order, self.witness.clone())
    }

    /// Termwise derivative. The truncation order drops by one.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return TruncatedSeries::zero(self.order - 1, self.witness.clone());
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.valuation + i as i64;
            coeffs.push(c.mul_int(k));
        }
        TruncatedSeries::new(self.valuation - 1, coeffs, self.order - 1, self.witness.clone())
    }

    /// Termwise antiderivative with zero constant term. Fails on a `t^{-1}` term.
    pub fn integrate(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(TruncatedSeries::zero(self.order + 1, self.witness.clone()));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.valuation + i as i64;
            if k == -1 {
                if c.is_zero_coeff() {
                    coeffs.push(c.clone());
                } else {
                    return Err(Error::Precondition(
                        "cannot integrate a t^{-1} term inside the series domain".into(),
                    ));
                }
            } else {
                coeffs.push(c.div_int(k + 1));
            }
        }
        Ok(TruncatedSeries::new(
            self.valuation + 1,
            coeffs,
            self.order + 1,
            self.witness.clone(),
        ))
    }

    /// Formal exponential of a series with valuation >= 1.
    pub fn exp(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(TruncatedSeries::one(self.order, self.witness.clone()));
        }
        if self.valuation < 1 {
            return Err(Error::Precondition(
                "exp requires a series with valuation >= 1".into(),
            ));
        }
        // y' = a' y termwise: k y_k = sum_{j=1..k} j a_j y_{k-j}
        let n = self.order;
        let mut y = vec![self.witness.zero_like(); (n + 1) as usize];
        y[0] = self.witness.one_like();
        for k in 1..=n {
            let mut acc = self.witness.zero_like();
            for j in 1..=k.min(self.order) {
                if j >= self.valuation {
                    let aj = self.coeff(j);
                    if !aj.is_zero_coeff() {
                        acc = acc.add_c(&aj.mul_int(j).mul_c(&y[(k - j) as usize]));
                    }
                }
            }
            y[k as usize] = acc.div_int(k);
        }
        Ok(TruncatedSeries::new(0, y, n, self.witness.clone()))
    }

    /// Formal logarithm of a series with constant term exactly one.
    pub fn log(&self) -> Result<Self> {
        let ok = !self.is_zero()
            && self.valuation == 0
            && self.coeffs[0].sub_c(&self.witness.one_like()).is_zero_coeff();
        if !ok {
            return Err(Error::Precondition(
                "log requires constant term exactly 1".into(),
            ));
        }
        let inv = self.invert()?;
        let lp = self.derivative().mul(&inv);
        lp.integrate()
    }

    /// Unique d-th root of `g = t^{dm}(1 + ...)` with leading coefficient one,
    /// normalized so the root again has leading coefficient one.
    pub fn nth_root(&self, d: u32) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        if d == 0 {
            return Err(Error::Precondition("0th root".into()));
        }
        if self.valuation % d as i64 != 0 {
            return Err(Error::Precondition(format!(
                "valuation {} not divisible by root degree {}",
                self.valuation, d
            )));
        }
        if !self.coeffs[0].sub_c(&self.witness.one_like()).is_zero_coeff() {
            return Err(Error::Precondition(
                "nth_root requires leading coefficient exactly 1".into(),
            ));
        }
        let h = self.shift_exponents(-self.valuation);
        let l = h.log()?;
        let root = l
            .coeffs
            .iter()
            .cloned()
            .map(|c| c.div_int(d as i64))
            .collect::<Vec<_>>();
        let l_over_d = TruncatedSeries::new(l.valuation, root, l.order, self.witness.clone());
        let f = l_over_d.exp()?;
        Ok(f.shift_exponents(self.valuation / d as i64))
    }

    /// Exact equality of all coefficients up to the common truncation order.
    pub fn eq_to_truncation(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        let d = self.truncate(order).sub(&other.truncate(order));
        d.is_zero()
    }

    /// Convert coefficients into another domain.
    pub fn map_coeffs<D: Coeff>(&self, witness: D, f: impl Fn(&C) -> D) -> TruncatedSeries<D> {
        let coeffs = self.coeffs.iter().map(|c| f(c)).collect();
        TruncatedSeries::new(self.valuation, coeffs, self.order, witness)
    }
}

fn pow_coeff<C: Coeff>(c: &C, e: u64) -> C {
    let mut acc = c.one_like();
    let mut base = c.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_c(&base);
        }
        base = base.mul_c(&base);
        e >>= 1;
    }
    acc
}

impl TruncatedSeries<Cx> {
    /// Horner evaluation at a complex point, including negative powers.
    pub fn evaluate(&self, t0: &Cx) -> Result<Cx> {
        if self.is_zero() {
            return Ok(self.witness.zero_like());
        }
        if self.valuation < 0 && t0.is_zero() {
            return Err(Error::PoleProximity(
                "evaluation at 0 with negative valuation".into(),
            ));
        }
        let mut acc = Cx::zero(t0.prec().max(self.witness.prec()));
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t0) + c;
        }
        Ok(&acc * &t0.powi(self.valuation))
    }

    /// Largest coefficient magnitude; zero series gives 0.
    pub fn max_coeff_abs(&self) -> Float {
        let mut best = Float::new(self.witness.prec().max(2));
        for c in &self.coeffs {
            let a = c.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Residual between two complex series: max coefficient magnitude of the
    /// difference up to the common order.
    pub fn residual(&self, other: &Self) -> Float {
        let order = self.order.min(other.order);
        self.truncate(order).sub(&other.truncate(order)).max_coeff_abs()
    }
}

impl<C: Coeff + std::fmt::Display> std::fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(t^{})", self.order + 1);
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*t", c)?,
                _ => write!(f, "({})*t^{}", c, k)?,
            }
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Rat = BigRational;
    type RS = TruncatedSeries<Rat>;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn rs(valuation: i64, coeffs: &[(i64, i64)], order: i64) -> RS {
        let v: Vec<Rat> = coeffs.iter().map(|&(n, d)| r(n, d)).collect();
        RS::new(valuation, v, order, Rat::zero())
    }

    #[test]
    fn add_cancellation_gives_zero() {
        let t = RS::t(8, Rat::zero());
        let s = t.add(&t.neg());
        assert!(s.is_zero());
        assert_eq!(s.order(), 8);
    }

    #[test]
    fn add_constants() {
        // (1+t) + (1-t) = 2
        let a = rs(0, &[(1, 1), (1, 1)], 8);
        let b = rs(0, &[(1, 1), (-1, 1)], 8);
        let s = a.add(&b);
        assert_eq!(s.coeff(0), r(2, 1));
        assert_eq!(s.valuation(), 0);
        assert!(s.coeff(1).is_zero());
    }

    #[test]
    fn add_laurent() {
        // (t^-1 + 1) + t = t^-1 + 1 + t
        let a = rs(-1, &[(1, 1), (1, 1)], 8);
        let b = RS::t(8, Rat::zero());
        let s = a.add(&b);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.coeff(-1), r(1, 1));
        assert_eq!(s.coeff(0), r(1, 1));
        assert_eq!(s.coeff(1), r(1, 1));
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = rs(0, &[(1, 1), (1, 1)], 8);
        let b = rs(0, &[(1, 1), (-1, 1)], 8);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), r(1, 1));
        assert!(p.coeff(1).is_zero());
        assert_eq!(p.coeff(2), r(-1, 1));
    }

    #[test]
    fn mul_laurent_units() {
        let a = rs(-1, &[(1, 1)], 6);
        let b = RS::t(8, Rat::zero());
        let p = a.mul(&b);
        assert_eq!(p.valuation(), 0);
        assert_eq!(p.coeff(0), r(1, 1));
        // order = min(6 + 1, 8 + (-1)) = 7
        assert_eq!(p.order(), 7);
    }

    #[test]
    fn mul_telescoping() {
        // (1 + t + t^2)(1 - t) = 1 - t^3
        let a = rs(0, &[(1, 1), (1, 1), (1, 1)], 10);
        let b = rs(0, &[(1, 1), (-1, 1)], 10);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), r(1, 1));
        assert!(p.coeff(1).is_zero() && p.coeff(2).is_zero());
        assert_eq!(p.coeff(3), r(-1, 1));
    }

    #[test]
    fn invert_geometric() {
        let a = rs(0, &[(1, 1), (-1, 1)], 8);
        let inv = a.invert().unwrap();
        for k in 0..=8 {
            assert_eq!(inv.coeff(k), r(1, 1), "coefficient {}", k);
        }
        assert!(a.mul(&inv).eq_to_truncation(&RS::one(8, Rat::zero())));
    }

    #[test]
    fn invert_laurent() {
        // 1/(t + t^2) = t^-1 - 1 + t - t^2 + ...
        let a = rs(1, &[(1, 1), (1, 1)], 8);
        let inv = a.invert().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.coeff(-1), r(1, 1));
        assert_eq!(inv.coeff(0), r(-1, 1));
        assert_eq!(inv.coeff(1), r(1, 1));
        assert_eq!(inv.coeff(2), r(-1, 1));
        let prod = a.mul(&inv);
        assert!(prod.eq_to_truncation(&RS::one(prod.order(), Rat::zero())));
    }

    #[test]
    fn invert_zero_fails() {
        assert!(matches!(RS::zero(5, Rat::zero()).invert(), Err(Error::ZeroSeries)));
    }

    #[test]
    fn compose_geometric_with_t_plus_t2() {
        // 1/(1-t) o (t + t^2) = 1 + t + 2t^2 + 3t^3 + 5t^4 ... (Fibonacci-like)
        let outer = rs(0, &[(1, 1)], 8).invert().unwrap(); // placeholder; use explicit geometric
        let geo = rs(0, &[(1, 1), (-1, 1)], 8).invert().unwrap();
        assert!(outer.coeff(0) == r(1, 1));
        let inner = rs(1, &[(1, 1), (1, 1)], 8);
        let c = geo.compose(&inner).unwrap();
        assert_eq!(c.coeff(0), r(1, 1));
        assert_eq!(c.coeff(1), r(1, 1));
        assert_eq!(c.coeff(2), r(2, 1));
        // direct substitution oracle: sum_{k} (t+t^2)^k
        let mut acc = RS::zero(8, Rat::zero());
        let mut p = RS::one(8, Rat::zero());
        for _ in 0..=8 {
            acc = acc.add(&p.truncate(8));
            p = p.mul(&inner).truncate(8);
        }
        assert!(c.eq_to_truncation(&acc));
    }

    #[test]
    fn compose_rejects_nonzero_constant_term() {
        let outer = RS::t(8, Rat::zero());
        let inner = rs(0, &[(1, 1), (1, 1)], 8);
        assert!(outer.compose(&inner).is_err());
    }

    #[test]
    fn exp_log_roundtrip() {
        // exp(log(1+2t)) = 1+2t
        let a = rs(0, &[(1, 1), (2, 1)], 12);
        let l = a.log().unwrap();
        assert_eq!(l.coeff(1), r(2, 1));
        assert_eq!(l.coeff(2), r(-2, 1)); // -(2t)^2/2
        let back = l.exp().unwrap();
        assert!(back.eq_to_truncation(&a));
    }

    #[test]
    fn exp_of_t_is_factorials() {
        let e = RS::t(10, Rat::zero()).exp().unwrap();
        let mut fact = r(1, 1);
        for k in 1..=10i64 {
            fact = fact * r(k, 1);
            assert_eq!(e.coeff(k), fact.recip(), "1/{}!", k);
        }
    }

    #[test]
    fn log_of_one_plus_t() {
        let a = rs(0, &[(1, 1), (1, 1)], 9);
        let l = a.log().unwrap();
        for k in 1..=9i64 {
            let expect = r(if k % 2 == 1 { 1 } else { -1 }, k);
            assert_eq!(l.coeff(k), expect);
        }
    }

    #[test]
    fn nth_root_square() {
        let g = rs(2, &[(1, 1)], 10);
        let f = g.nth_root(2).unwrap();
        assert!(f.eq_to_truncation(&RS::t(9, Rat::zero())));
    }

    #[test]
    fn nth_root_square_back() {
        // sqrt(t^2 + t^3) = t + t/2*t - t^2/8 ... ; squared back reproduces input
        let g = rs(2, &[(1, 1), (1, 1)], 12);
        let f = g.nth_root(2).unwrap();
        assert_eq!(f.coeff(1), r(1, 1));
        assert_eq!(f.coeff(2), r(1, 2));
        assert_eq!(f.coeff(3), r(-1, 8));
        assert!(f.mul(&f).eq_to_truncation(&g));
    }

    #[test]
    fn nth_root_cube_back() {
        // cbrt(t^3(1+3t))
        let g = rs(3, &[(1, 1), (3, 1)], 12);
        let f = g.nth_root(3).unwrap();
        assert_eq!(f.coeff(1), r(1, 1));
        assert_eq!(f.coeff(2), r(1, 1));
        assert_eq!(f.coeff(3), r(-1, 1));
        let cube = f.mul(&f).mul(&f);
        assert!(cube.eq_to_truncation(&g));
    }

    #[test]
    fn nth_root_rejects_bad_valuation() {
        let g = rs(3, &[(1, 1)], 10);
        assert!(g.nth_root(2).is_err());
    }

    #[test]
    fn derivative_drops_order() {
        let a = rs(0, &[(5, 1), (0, 1), (1, 1)], 9); // 5 + t^2
        let d = a.derivative();
        assert_eq!(d.valuation(), 1);
        assert_eq!(d.coeff(1), r(2, 1));
        assert_eq!(d.order(), 8);
    }

    #[test]
    fn scale_argument_homogeneity() {
        let f = rs(0, &[(1, 1), (1, 1), (1, 1), (1, 1)], 6);
        let c = r(3, 1);
        let g = f.compose_scale(&c);
        for k in 0..=3i64 {
            let mut p = r(1, 1);
            for _ in 0..k {
                p = p * c.clone();
            }
            assert_eq!(g.coeff(k), p);
        }
    }
}

//! Exact sparse multivariate polynomials and symmetric-function operators.
//!
//! A [`MultiPoly`] lives in variables `x_0..x_{nx-1}` (the "alternation"
//! variables acted on by the symmetric group) followed by formal parameters
//! (such as `q`, `eta` or `g2`, `g3`) that commute along as a coefficient
//! ring and are never permuted. Coefficients are exact rationals; addition
//! and multiplication never truncate.
//!
//! On top of the ring sit the operators used throughout:
//! adjacent-transposition divided differences `delta_i`, the Vandermonde
//! product, the alternation operator `L` (computed two independent ways),
//! Schur polynomials as alternant ratios, and the exponent-multiset
//! bookkeeping for Schur-Puiseux expressions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{rational_from_string, rational_to_string, Coeff};
use crate::cx::Cx;
use crate::error::{Error, Result};

type Rat = BigRational;
type Exps = Vec<u16>;

/// Sparse exact multivariate polynomial.
///
/// `nx` is the count of leading variables subject to permutation operators;
/// the remaining variables are adjoined parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    nx: usize,
    vars: Vec<String>,
    terms: BTreeMap<Exps, Rat>,
}

impl MultiPoly {
    pub fn zero(nx: usize, vars: Vec<String>) -> Self {
        assert!(nx <= vars.len());
        MultiPoly {
            nx,
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// Standard ring with variables `x0..x{n}` plus the given parameters.
    pub fn ring(n_plus_one: usize, params: &[&str]) -> Self {
        let mut vars: Vec<String> = (0..n_plus_one).map(|i| format!("x{}", i)).collect();
        for p in params {
            vars.push(p.to_string());
        }
        MultiPoly::zero(n_plus_one, vars)
    }

    pub fn constant_like(&self, c: Rat) -> Self {
        let mut p = MultiPoly::zero(self.nx, self.vars.clone());
        if !c.is_zero() {
            p.terms.insert(vec![0; self.vars.len()], c);
        }
        p
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(Rat::one())
    }

    /// The variable with the given index as a polynomial.
    pub fn var(&self, idx: usize) -> Self {
        assert!(idx < self.vars.len());
        let mut e = vec![0u16; self.vars.len()];
        e[idx] = 1;
        let mut p = MultiPoly::zero(self.nx, self.vars.clone());
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn insert_term(&mut self, exps: Exps, c: Rat) {
        assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += c;
        // re-borrow to drop zeros without a second lookup cost in the common case
        if entry.is_zero() {
            let key: Vec<Exps> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomial rings differ");
        assert_eq!(self.nx, other.nx, "alternation arity differs");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = MultiPoly::zero(self.nx, self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                let entry = out.terms.entry(e).or_insert_with(Rat::zero);
                *entry += c;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nx, self.vars.clone());
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Apply a permutation of the alternation variables: variable `i` is
    /// renamed to `perm[i]`.
    pub fn permute_x(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nx);
        let mut out = MultiPoly::zero(self.nx, self.vars.clone());
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            for i in 0..self.nx {
                ne[perm[i]] = e[i];
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// The adjacent transposition `tau_i`, swapping `x_{i-1}` and `x_i`.
    pub fn tau(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.nx, "tau index out of range");
        let mut out = MultiPoly::zero(self.nx, self.vars.clone());
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne.swap(i - 1, i);
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Whether the polynomial is invariant under every adjacent transposition
    /// of its alternation variables.
    pub fn is_symmetric(&self) -> bool {
        (1..self.nx).all(|i| self.tau(i) == *self)
    }

    /// Whether every adjacent transposition negates the polynomial.
    pub fn is_skew_symmetric(&self) -> bool {
        (1..self.nx).all(|i| self.tau(i) == self.neg())
    }

    /// Exact division by the binomial `x_a - x_b` via synthetic division in
    /// `x_a` at the "root" `x_b`. Fails if the division is not exact.
    pub fn div_binomial_exact(&self, a: usize, b: usize) -> Result<Self> {
        assert!(a != b && a < self.vars.len() && b < self.vars.len());
        if self.is_zero() {
            return Ok(self.clone());
        }
        // split into coefficient layers by the exponent of x_a
        let mut layers: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[a];
            let mut ne = e.clone();
            ne[a] = 0;
            layers
                .entry(k)
                .or_insert_with(|| MultiPoly::zero(self.nx, self.vars.clone()))
                .terms
                .insert(ne, c.clone());
        }
        let top = *layers.keys().next_back().unwrap();
        let zero = MultiPoly::zero(self.nx, self.vars.clone());
        let xb = self.var(b);
        // Q_{k-1} = A_k + x_b * Q_k, downward from k = top
        let mut out = MultiPoly::zero(self.nx, self.vars.clone());
        let mut q = zero.clone();
        for k in (1..=top).rev() {
            let a_k = layers.get(&k).unwrap_or(&zero);
            q = a_k.add(&xb.mul(&q));
            for (e, c) in &q.terms {
                let mut ne = e.clone();
                ne[a] += k - 1;
                out.terms.insert(ne, c.clone());
            }
        }
        // remainder = A_0 + x_b * Q_0
        let a_0 = layers.get(&0).cloned().unwrap_or_else(|| zero.clone());
        let rem = a_0.add(&xb.mul(&q));
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!(
                "remainder with {} terms dividing by {} - {}",
                rem.num_terms(),
                self.vars[a],
                self.vars[b]
            )));
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Exact division by the Vandermonde product of the alternation variables.
    pub fn div_vandermonde_exact(&self) -> Result<Self> {
        let mut p = self.clone();
        for i in 0..self.nx {
            for j in (i + 1)..self.nx {
                p = p.div_binomial_exact(i, j)?;
            }
        }
        Ok(p)
    }

    /// Maximum exponent of variable `idx` across all terms.
    pub fn degree_in(&self, idx: usize) -> u16 {
        self.terms.keys().map(|e| e[idx]).max().unwrap_or(0)
    }

    /// Extend/rename into a larger ring. `mapping[i]` gives the index of old
    /// variable `i` among `new_vars`.
    pub fn embed(&self, new_nx: usize, new_vars: Vec<String>, mapping: &[usize]) -> Self {
        assert_eq!(mapping.len(), self.vars.len());
        let mut out = MultiPoly::zero(new_nx, new_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0u16; out.vars.len()];
            for (i, &xi) in e.iter().enumerate() {
                ne[mapping[i]] = xi;
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Evaluate at a complex point (one value per variable).
    pub fn eval_cx(&self, at: &[Cx], prec: u32) -> Cx {
        assert_eq!(at.len(), self.vars.len());
        let mut acc = Cx::zero(prec);
        for (e, c) in &self.terms {
            let mut term = Cx::from_rational(c, prec);
            for (i, &xi) in e.iter().enumerate() {
                if xi > 0 {
                    term = &term * &at[i].powi(xi as i64);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// The constant term, if the polynomial is constant in the alternation
    /// variables (parameters may appear).
    pub fn as_x_constant(&self) -> Option<MultiPoly> {
        if self.terms.keys().all(|e| e[..self.nx].iter().all(|&x| x == 0)) {
            Some(self.clone())
        } else {
            None
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "exps": e,
                    "coeff": rational_to_string(c),
                })
            })
            .collect();
        serde_json::json!({
            "vars": self.vars,
            "alternating": self.nx,
            "terms": terms,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let vars: Vec<String> = v
            .get("vars")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("polynomial JSON missing vars".into()))?
            .iter()
            .map(|s| s.as_str().unwrap_or_default().to_string())
            .collect();
        let nx = v
            .get("alternating")
            .and_then(|x| x.as_u64())
            .unwrap_or(vars.len() as u64) as usize;
        let mut p = MultiPoly::zero(nx.min(vars.len()), vars);
        for t in v
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("polynomial JSON missing terms".into()))?
        {
            let exps: Exps = t
                .get("exps")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Parse("term missing exps".into()))?
                .iter()
                .map(|x| x.as_u64().unwrap_or(0) as u16)
                .collect();
            let coeff = t
                .get("coeff")
                .and_then(|x| x.as_str())
                .and_then(rational_from_string)
                .ok_or_else(|| Error::Parse("term missing coeff".into()))?;
            if exps.len() != p.vars.len() {
                return Err(Error::Parse("exponent arity mismatch".into()));
            }
            p.insert_term(exps, coeff);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ca = c.abs();
            let mut wrote = false;
            if !ca.is_one() || e.iter().all(|&x| x == 0) {
                write!(f, "{}", rational_to_string(&ca))?;
                wrote = true;
            }
            for (i, &xi) in e.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if xi == 1 {
                    write!(f, "{}", self.vars[i])?;
                } else {
                    write!(f, "{}^{}", self.vars[i], xi)?;
                }
            }
        }
        Ok(())
    }
}

impl Coeff for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.nx, self.vars.clone())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one_like(self)
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_c(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn neg_c(&self) -> Self {
        self.neg()
    }
    fn mul_c(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale(&Rat::from_integer(k.into()))
    }
    fn div_int(&self, k: i64) -> Self {
        assert!(k != 0);
        self.scale(&Rat::new(1.into(), k.into()))
    }
    fn try_inv(&self) -> Option<Self> {
        // only constants are units
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&x| x == 0) {
                return Some(self.constant_like(c.recip()));
            }
        }
        None
    }
    fn from_int_like(&self, k: i64) -> Self {
        self.constant_like(Rat::from_integer(k.into()))
    }
}

/// All permutations of `0..n` with their signs (Heap's algorithm; each step
/// performs exactly one transposition, so the sign alternates).
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::with_capacity((1..=n).product::<usize>().max(1));
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i8;
    out.push((a.clone(), sign));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// The Vandermonde product of the alternation variables of `ring`,
/// `prod_{i<j} (x_i - x_j)`.
pub fn vandermonde(ring: &MultiPoly) -> MultiPoly {
    let n = ring.nx();
    assert!(n >= 2, "vandermonde needs at least two variables");
    let mut acc = ring.one_like();
    for i in 0..n {
        for j in (i + 1)..n {
            acc = acc.mul(&ring.var(i).sub(&ring.var(j)));
        }
    }
    acc
}

/// Divided difference `delta_i(P) = (P - tau_i P) / (x_i - x_{i-1})`.
///
/// The quotient of a polynomial is always a polynomial; an inexact division
/// here is an implementation bug and fails hard.
pub fn divided_difference(p: &MultiPoly, i: usize) -> Result<MultiPoly> {
    if i < 1 || i >= p.nx() {
        return Err(Error::Precondition(format!(
            "divided difference index {} out of 1..{}",
            i,
            p.nx()
        )));
    }
    let num = p.sub(&p.tau(i));
    num.div_binomial_exact(i, i - 1)
}

/// Signed sum over all permutations of the alternation variables,
/// `sum_sigma sgn(sigma) sigma(P)`.
///
/// Terms are grouped by the descending-sorted exponent signature first, so
/// each distinct alternant is expanded only once; monomials with repeated
/// exponents vanish.
pub fn alternate(p: &MultiPoly) -> MultiPoly {
    let nx = p.nx();
    // signature -> (param exponents -> coefficient)
    let mut groups: BTreeMap<Exps, BTreeMap<Exps, Rat>> = BTreeMap::new();
    for (e, c) in p.terms() {
        let xpart = &e[..nx];
        let (sig, sign, zero) = sort_descending_with_sign(xpart);
        if zero {
            continue;
        }
        let param: Exps = e[nx..].to_vec();
        let entry = groups
            .entry(sig)
            .or_default()
            .entry(param)
            .or_insert_with(Rat::zero);
        if sign > 0 {
            *entry += c;
        } else {
            *entry -= c;
        }
    }
    let perms = permutations_with_sign(nx);
    let mut out = MultiPoly::zero(nx, p.vars().to_vec());
    for (sig, params) in groups {
        let params: Vec<(Exps, Rat)> = params.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if params.is_empty() {
            continue;
        }
        for (perm, sign) in &perms {
            let mut xexps = vec![0u16; nx];
            for i in 0..nx {
                xexps[i] = sig[perm[i]];
            }
            for (param, c) in &params {
                let mut e = xexps.clone();
                e.extend_from_slice(param);
                let signed = if *sign > 0 { c.clone() } else { -c.clone() };
                let entry = out.terms.entry(e).or_insert_with(Rat::zero);
                *entry += signed;
            }
        }
    }
    out.terms.retain(|_, c| !c.is_zero());
    out
}

fn sort_descending_with_sign(xpart: &[u16]) -> (Exps, i8, bool) {
    let mut idx: Vec<usize> = (0..xpart.len()).collect();
    // insertion sort counting swaps keeps the parity exact
    let mut sign = 1i8;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && xpart[idx[j - 1]] < xpart[idx[j]] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    let sorted: Exps = idx.iter().map(|&i| xpart[i]).collect();
    let zero = sorted.windows(2).any(|w| w[0] == w[1]);
    (sorted, sign, zero)
}

/// The alternation operator `L(P) = Delta^{-1} sum_sigma sgn(sigma) sigma(P)`
/// by explicit permutation enumeration. This is the reference implementation;
/// [`alternation_l_factored`] is the fast path.
pub fn alternation_l(p: &MultiPoly) -> Result<MultiPoly> {
    let num = alternate(p);
    num.div_vandermonde_exact()
}

/// `L` computed through the divided-difference factorization
/// `(delta_1..delta_n)(delta_1..delta_{n-1})...(delta_1 delta_2) delta_1`.
pub fn alternation_l_factored(p: &MultiPoly) -> Result<MultiPoly> {
    let n = p.nx() - 1;
    let mut acc = p.clone();
    for k in 1..=n {
        for i in (1..=k).rev() {
            acc = divided_difference(&acc, i)?;
        }
    }
    // the delta chain reproduces the enumeration L up to the sign of the
    // denominator convention, one flip per factor
    if (n * (n + 1) / 2) % 2 == 1 {
        acc = acc.neg();
    }
    Ok(acc)
}

/// Schur polynomial `s_lambda = Delta_{lambda+delta} / Delta_delta` for an
/// integer partition (non-increasing, possibly padded with zeros).
///
/// A repeated entry in `lambda + delta` makes the alternant vanish; the zero
/// polynomial is returned in that case.
pub fn schur(ring: &MultiPoly, lambda: &[i64]) -> Result<MultiPoly> {
    let n1 = ring.nx();
    if lambda.len() > n1 {
        return Err(Error::Precondition(format!(
            "partition with {} parts in {} variables",
            lambda.len(),
            n1
        )));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition("partition parts must be non-increasing".into()));
    }
    if lambda.iter().any(|&l| l < 0) {
        return Err(Error::Precondition("partition parts must be non-negative".into()));
    }
    let mut mu: Vec<u16> = Vec::with_capacity(n1);
    for i in 0..n1 {
        let li = lambda.get(i).copied().unwrap_or(0);
        mu.push((li + (n1 - 1 - i) as i64) as u16);
    }
    if mu.windows(2).any(|w| w[0] == w[1]) {
        return Ok(ring.zero_like());
    }
    let mut mono = ring.one_like();
    let mut e = vec![0u16; ring.vars().len()];
    e[..n1].copy_from_slice(&mu);
    mono.terms.clear();
    mono.terms.insert(e, Rat::one());
    alternation_l(&mono)
}

/// Schur polynomial indexed by a [`YoungIndex`]; the parts must be integers.
pub fn schur_young(ring: &MultiPoly, lambda: &YoungIndex) -> Result<MultiPoly> {
    let parts = lambda.integer_parts().ok_or_else(|| {
        Error::Precondition("Schur polynomials need integer partition parts".into())
    })?;
    schur(ring, &parts)
}

/// Sorted signature of an exponent multiset for Schur-Puiseux bookkeeping.
///
/// Returns the descending-sorted entries, the sign of the permutation that
/// sorts the input, and whether two entries coincide (which kills the
/// alternant). No series expansion is performed; two monomials give
/// proportional Schur-Puiseux functions exactly when the signatures match.
pub fn schur_puiseux_signature(entries: &[Rat]) -> (Vec<Rat>, i8, bool) {
    let mut idx: Vec<usize> = (0..entries.len()).collect();
    let mut sign = 1i8;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && entries[idx[j - 1]] < entries[idx[j]] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    let sorted: Vec<Rat> = idx.iter().map(|&i| entries[i].clone()).collect();
    let zero = sorted.windows(2).any(|w| w[0] == w[1]);
    (sorted, sign, zero)
}

/// Divide a skew-symmetric polynomial by the Vandermonde product.
///
/// Returns the quotient and an exactness flag. For skew-symmetric input the
/// division is exact; `false` signals that it was not (and the quotient slot
/// holds zero).
pub fn skew_symmetric_reduce(p: &MultiPoly) -> Result<(MultiPoly, bool)> {
    if !p.is_skew_symmetric() {
        return Err(Error::Precondition("polynomial is not skew-symmetric".into()));
    }
    match p.div_vandermonde_exact() {
        Ok(q) => Ok((q, true)),
        Err(_) => Ok((p.zero_like(), false)),
    }
}

/// Non-increasing sequence of exact rationals indexing a (possibly Puiseux)
/// Schur expression; the staircase `(n-1, ..., 1, 0)` is the distinguished
/// instance.
#[derive(Debug, Clone, PartialEq)]
pub struct YoungIndex {
    parts: Vec<Rat>,
}

impl YoungIndex {
    pub fn new(parts: Vec<Rat>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Precondition("parts must be non-increasing".into()));
        }
        Ok(YoungIndex { parts })
    }

    pub fn staircase(n: usize) -> Self {
        YoungIndex {
            parts: (0..n).rev().map(|k| Rat::from_integer((k as i64).into())).collect(),
        }
    }

    pub fn parts(&self) -> &[Rat] {
        &self.parts
    }

    pub fn integer_parts(&self) -> Option<Vec<i64>> {
        self.parts
            .iter()
            .map(|p| {
                if p.denom().is_one() {
                    p.numer().try_into().ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Fixed-size multiset of exact rational exponents (the degree rows of the
/// degenerate-classification analysis).
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentMultiset {
    entries: Vec<Rat>,
}

impl ExponentMultiset {
    pub fn new(entries: Vec<Rat>) -> Self {
        ExponentMultiset { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// Signature as in [`schur_puiseux_signature`].
    pub fn signature(&self) -> (Vec<Rat>, i8, bool) {
        schur_puiseux_signature(&self.entries)
    }

    /// Same multiset up to permutation.
    pub fn matches(&self, other: &Self) -> bool {
        if self.entries.len() != other.entries.len() {
            return false;
        }
        let (a, _, _) = self.signature();
        let (b, _, _) = other.signature();
        a == b
    }

    /// Two entries coincide.
    pub fn has_repeat(&self) -> bool {
        self.signature().2
    }
}

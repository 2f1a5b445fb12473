//! Sparse multivariate polynomials over the integers.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors in graded
//! lexicographic order, with zero coefficients never stored, so two
//! polynomials are equal exactly when their term maps are.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("substitution plan covers {got} variables, polynomial has {want}")]
    PlanLength { got: usize, want: usize },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exponent vector, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Naming scheme for rendering and parsing variables: `prefix` followed by
/// `index + offset`, e.g. `q1, q2, …` or `z0, z1, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vars {
    pub prefix: &'static str,
    pub offset: usize,
}

impl Vars {
    pub const Q: Vars = Vars { prefix: "q", offset: 1 };
    pub const Z0: Vars = Vars { prefix: "z", offset: 0 };
    pub const Z1: Vars = Vars { prefix: "z", offset: 1 };
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Outcome of a coefficientwise comparison `f ⩾ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dominance {
    pub holds: bool,
    pub witness: Option<CoeffWitness>,
}

/// An exponent where `f` has a smaller coefficient than `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffWitness {
    pub exponent: Vec<u32>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Per-variable substitution: a constant, or `q^c` for one fresh variable `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subst {
    Const(BigInt),
    Power(u32),
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(arity);
        p.add_term(Monomial::one(arity), c.into());
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, 1)
    }

    /// The monomial `c · x^exponents`.
    pub fn monomial(exponents: Vec<u32>, c: impl Into<BigInt>) -> Self {
        let arity = exponents.len();
        let mut p = MultiPoly::zero(arity);
        p.add_term(Monomial(exponents), c.into());
        p
    }

    /// The variable `x_i` among `arity` variables.
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        MultiPoly::monomial(e, 1)
    }

    /// Builds a polynomial from possibly repeated terms.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = MultiPoly::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector length must equal arity");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Univariate polynomial from its coefficient list, constant term first.
    pub fn from_coeffs(coeffs: &[BigInt]) -> Self {
        MultiPoly::from_terms(1, coeffs.iter().enumerate().map(|(d, c)| (vec![d as u32], c.clone())))
    }

    /// Adds `c · m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn check_arity(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.arity == other.arity {
            Ok(())
        } else {
            Err(PolyError::ArityMismatch(self.arity, other.arity))
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_arity(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(self.arity));
        }
        Ok(self.mul_packed(other).unwrap_or_else(|| self.mul_general(other)))
    }

    fn mul_general(&self, other: &MultiPoly) -> MultiPoly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        MultiPoly::from_terms(self.arity, acc.into_iter().map(|(m, c)| (m.0, c)))
    }

    /// Multiplication with exponent vectors packed into a `u128` key and
    /// coefficients accumulated in `i128`. Returns `None` when either packing
    /// or the coefficient bound does not fit.
    fn mul_packed(&self, other: &MultiPoly) -> Option<MultiPoly> {
        let n = self.arity;
        let mut widths = Vec::with_capacity(n);
        let mut total = 0u32;
        for i in 0..n {
            let top = self.max_exponent(i) as u64 + other.max_exponent(i) as u64;
            let w = 64 - top.leading_zeros();
            widths.push(w);
            total += w;
        }
        if total > 128 {
            return None;
        }
        let bound = |p: &MultiPoly| -> Option<i128> {
            p.terms
                .values()
                .map(|c| c.to_i64().map(|v| (v as i128).abs()))
                .max()
                .flatten()
        };
        let (b1, b2) = (bound(self)?, bound(other)?);
        let terms = self.len().min(other.len()) as i128;
        b1.checked_mul(b2)?.checked_mul(terms)?;

        let pack = |m: &Monomial| -> u128 {
            let mut key = 0u128;
            for (e, &w) in m.0.iter().zip(&widths) {
                key = (key << w) | *e as u128;
            }
            key
        };
        let lhs: Vec<(u128, i128)> = self
            .terms
            .iter()
            .map(|(m, c)| (pack(m), c.to_i64().unwrap() as i128))
            .collect();
        let rhs: Vec<(u128, i128)> = other
            .terms
            .iter()
            .map(|(m, c)| (pack(m), c.to_i64().unwrap() as i128))
            .collect();
        let mut acc: HashMap<u128, i128> = HashMap::with_capacity(lhs.len() * 2);
        for &(k1, c1) in &lhs {
            for &(k2, c2) in &rhs {
                *acc.entry(k1 + k2).or_insert(0) += c1 * c2;
            }
        }
        let unpack = |mut key: u128| -> Vec<u32> {
            let mut e = vec![0u32; n];
            for i in (0..n).rev() {
                let w = widths[i];
                e[i] = (key & ((1u128 << w) - 1)) as u32;
                key >>= w;
            }
            e
        };
        Some(MultiPoly::from_terms(
            n,
            acc.into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(k, c)| (unpack(k), BigInt::from(c))),
        ))
    }

    fn max_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.arity);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        MultiPoly::from_terms(self.arity, self.terms.iter().map(|(m, v)| (m.0.clone(), v * c)))
    }

    /// Multiplies by the monomial `x^exponents`.
    pub fn shift(&self, exponents: &[u32]) -> MultiPoly {
        assert_eq!(exponents.len(), self.arity);
        let m = Monomial(exponents.to_vec());
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect(),
        }
    }

    /// Re-embeds into `arity` variables, sending variable `i` to `map[i]`.
    pub fn embed(&self, arity: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.arity);
        MultiPoly::from_terms(
            arity,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; arity];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] += x;
                }
                (e, c.clone())
            }),
        )
    }

    /// Keeps the terms of total degree at most `degree`.
    pub fn truncate(&self, degree: u64) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients of a univariate polynomial, constant term first.
    pub fn univariate_coeffs(&self) -> Vec<BigInt> {
        assert_eq!(self.arity, 1, "univariate_coeffs on arity {}", self.arity);
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            out[m.0[0] as usize] = c.clone();
        }
        out
    }

    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.arity);
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Value at the all-ones point.
    pub fn sum_coeffs(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Applies `plan` variable by variable. With at least one
    /// [`Subst::Power`] the result is univariate; otherwise a constant of
    /// arity 0.
    pub fn substitute(&self, plan: &[Subst]) -> Result<MultiPoly, PolyError> {
        if plan.len() != self.arity {
            return Err(PolyError::PlanLength {
                got: plan.len(),
                want: self.arity,
            });
        }
        let out_arity = usize::from(plan.iter().any(|s| matches!(s, Subst::Power(_))));
        let mut out = MultiPoly::zero(out_arity);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut degree = 0u32;
            for (&e, s) in m.0.iter().zip(plan) {
                match s {
                    Subst::Const(v) => coeff *= num_traits::pow(v.clone(), e as usize),
                    Subst::Power(k) => degree += k * e,
                }
            }
            let key = if out_arity == 1 { vec![degree] } else { vec![] };
            out.add_term(Monomial(key), coeff);
        }
        Ok(out)
    }

    /// All variables to `q`; always univariate, even from arity 0.
    pub fn specialize_diagonal(&self) -> MultiPoly {
        let s = self.substitute(&vec![Subst::Power(1); self.arity]).unwrap();
        if s.arity == 0 {
            s.embed(1, &[])
        } else {
            s
        }
    }

    /// All variables to 1, as an integer.
    pub fn specialize_ones(&self) -> BigInt {
        self.sum_coeffs()
    }

    /// Coefficientwise `self ⩾ other`. On failure the witness is the
    /// lexicographically least exponent vector where `self` falls short.
    pub fn geq_coeffwise(&self, other: &MultiPoly) -> Result<Dominance, PolyError> {
        let diff = self.try_sub(other)?;
        let witness = diff
            .terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(m, _)| m)
            .min_by(|a, b| a.0.cmp(&b.0))
            .map(|m| CoeffWitness {
                exponent: m.0.clone(),
                lhs: self.coeff(&m.0),
                rhs: other.coeff(&m.0),
            });
        Ok(Dominance {
            holds: witness.is_none(),
            witness,
        })
    }

    /// Canonical text, e.g. `1 + 2 * q1 + 1 * q1^2 q2`.
    pub fn display(&self, vars: Vars) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&mag.to_string());
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let name = format!("{}{}", vars.prefix, i + vars.offset);
                        if e == 1 {
                            name
                        } else {
                            format!("{name}^{e}")
                        }
                    })
                    .collect();
            if !factors.is_empty() {
                out.push_str(" * ");
                out.push_str(&factors.join(" "));
            }
        }
        out
    }

    /// Parses the text produced by [`MultiPoly::display`] (and slightly more:
    /// arbitrary term order, repeated monomials, omitted `1 *`).
    pub fn parse(text: &str, vars: Vars, arity: usize) -> Result<MultiPoly, PolyError> {
        let err = |m: String| PolyError::Parse(m);
        let mut out = MultiPoly::zero(arity);
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(err("empty input".into()));
        }
        let mut i = 0;
        let mut sign = BigInt::one();
        let mut expect_term = true;
        while i < tokens.len() {
            let tok = tokens[i];
            if !expect_term {
                match tok {
                    "+" => sign = BigInt::one(),
                    "-" => sign = -BigInt::one(),
                    _ => return Err(err(format!("expected + or -, found {tok:?}"))),
                }
                expect_term = true;
                i += 1;
                continue;
            }
            let (neg, body) = match tok.strip_prefix('-') {
                Some(rest) if !rest.is_empty() => (true, rest),
                _ => (false, tok),
            };
            let mut coeff = BigInt::one();
            let mut exps = vec![0u32; arity];
            let mut pos = i;
            let mut body = body;
            if body.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                coeff = body.parse().map_err(|_| err(format!("bad coefficient {body:?}")))?;
                pos += 1;
                if tokens.get(pos) == Some(&"*") {
                    pos += 1;
                    body = tokens.get(pos).copied().ok_or_else(|| err("dangling *".into()))?;
                } else {
                    body = "";
                }
            }
            while !body.is_empty() {
                let rest = body
                    .strip_prefix(vars.prefix)
                    .ok_or_else(|| err(format!("unknown factor {body:?}")))?;
                let (idx, pow) = match rest.split_once('^') {
                    Some((a, b)) => (
                        a,
                        b.parse::<u32>().map_err(|_| err(format!("bad exponent in {body:?}")))?,
                    ),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| err(format!("bad variable {body:?}")))?;
                let slot = idx
                    .checked_sub(vars.offset)
                    .filter(|&s| s < arity)
                    .ok_or_else(|| err(format!("variable {body:?} out of range")))?;
                exps[slot] = exps[slot]
                    .checked_add(pow)
                    .ok_or_else(|| err("exponent overflow".into()))?;
                pos += 1;
                body = match tokens.get(pos) {
                    Some(t) if t.starts_with(vars.prefix) => t,
                    _ => "",
                };
            }
            if pos == i {
                return Err(err(format!("expected a term, found {tok:?}")));
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(Monomial(exps), &sign * coeff);
            i = pos;
            expect_term = false;
        }
        if expect_term {
            return Err(err("trailing operator".into()));
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Vars::Q))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.arity, self)
    }
}

// Operators panic on arity mismatch; the `try_*` methods report it.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

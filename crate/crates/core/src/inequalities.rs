//! One verifier per inequality family.
//!
//! Each verifier computes both sides from definitions, recomputes every
//! factor with the brute-force [`oracle`](crate::oracle) and refuses to
//! issue a verdict if the two disagree. Sides are oriented so that the
//! inequality reads `lhs ≥ rhs` (numerically) or `lhs ⩾ rhs`
//! (coefficientwise).
//!
//! The `*Table` and [`Checker`] types cache factors across the many
//! instances a suite runs on one poset; the free functions are one-shot
//! wrappers around them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumeration::{
    count_linear_extensions, count_p_partitions, linear_extensions, major_index, EnumError, MajConvention,
    SliceConstraint,
};
use crate::genfun::{order_poly, profile_gf, schur_poly, Flavor};
use crate::instances::IdealQuad;
use crate::lattice::LatticeError;
use crate::oracle::{self, Weight};
use crate::poly::{MultiPoly, Subst, Vars};
use crate::poset::{ElemSet, IdealKind, Poset, PosetError};
use crate::young::{Partition, SkewShape};

/// The descent convention under which the maj identity holds for
/// order-preserving P-partitions: a descent at position `i` of a word of
/// length `n` contributes `n - i`.
pub const STANLEY_CONVENTION: MajConvention = MajConvention::Comajor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{set} is not a {kind} ideal")]
    NotIdeal { set: String, kind: &'static str },
    #[error("disjointness fails: A∩C = {ac}, B∩D = {bd}")]
    NotDisjoint { ac: String, bd: String },
    #[error("N = {n} is below the required {need} variables")]
    TooFewVariables { n: u32, need: usize },
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("elements must be distinct")]
    NotDistinct,
    #[error("integrity error: fast and brute-force values of {0} disagree")]
    OracleMismatch(String),
    #[error("integrity error: identity {0} fails")]
    Identity(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Fishburn,
    GeneralizedFishburn,
    OrderPolynomial,
    Profile,
    LpSchur,
    Ddp,
    DdpLogConcave,
    CrossProduct,
    Stanley,
    HookLength,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::Fishburn,
        TheoremId::GeneralizedFishburn,
        TheoremId::OrderPolynomial,
        TheoremId::Profile,
        TheoremId::LpSchur,
        TheoremId::Ddp,
        TheoremId::DdpLogConcave,
        TheoremId::CrossProduct,
        TheoremId::Stanley,
        TheoremId::HookLength,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Fishburn => "fishburn",
            TheoremId::GeneralizedFishburn => "gen-fishburn",
            TheoremId::OrderPolynomial => "order-poly",
            TheoremId::Profile => "profile",
            TheoremId::LpSchur => "lp-schur",
            TheoremId::Ddp => "ddp",
            TheoremId::DdpLogConcave => "ddp-log-concave",
            TheoremId::CrossProduct => "cross-product",
            TheoremId::Stanley => "stanley",
            TheoremId::HookLength => "hook-length",
        }
    }

    pub fn from_name(s: &str) -> Option<TheoremId> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One side of a comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Side {
    Number(BigRational),
    Poly { poly: MultiPoly, vars: Vars },
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Number(r) => write!(f, "{r}"),
            Side::Poly { poly, vars } => f.write_str(&poly.display(*vars)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Least exponent at which the lhs coefficient is below (or, for
    /// identities, differs from) the rhs coefficient.
    Exponent {
        exponent: Vec<u32>,
        lhs: BigInt,
        rhs: BigInt,
    },
    /// `lhs - rhs`, negative on failure.
    Gap(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub flavor: Option<Flavor>,
    pub instance: String,
    pub lhs: Side,
    pub rhs: Side,
    pub holds: bool,
    pub equality: bool,
    pub witness: Option<Witness>,
}

impl VerificationReport {
    fn numeric(theorem: TheoremId, instance: String, lhs: BigRational, rhs: BigRational) -> Self {
        let holds = lhs >= rhs;
        VerificationReport {
            theorem,
            flavor: None,
            instance,
            witness: (!holds).then(|| Witness::Gap(&lhs - &rhs)),
            equality: lhs == rhs,
            holds,
            lhs: Side::Number(lhs),
            rhs: Side::Number(rhs),
        }
    }

    fn identity(theorem: TheoremId, instance: String, lhs: BigRational, rhs: BigRational) -> Self {
        let mut r = Self::numeric(theorem, instance, lhs, rhs);
        r.holds = r.equality;
        if !r.holds {
            let (Side::Number(a), Side::Number(b)) = (&r.lhs, &r.rhs) else {
                unreachable!()
            };
            r.witness = Some(Witness::Gap(a - b));
        }
        r
    }

    fn dominance(theorem: TheoremId, instance: String, lhs: MultiPoly, rhs: MultiPoly, vars: Vars) -> Self {
        let d = lhs.geq_coeffwise(&rhs).expect("sides share an arity");
        VerificationReport {
            theorem,
            flavor: None,
            instance,
            equality: lhs == rhs,
            holds: d.holds,
            witness: d.witness.map(|w| Witness::Exponent {
                exponent: w.exponent,
                lhs: w.lhs,
                rhs: w.rhs,
            }),
            lhs: Side::Poly { poly: lhs, vars },
            rhs: Side::Poly { poly: rhs, vars },
        }
    }

    fn poly_identity(theorem: TheoremId, instance: String, lhs: MultiPoly, rhs: MultiPoly, vars: Vars) -> Self {
        let diff = lhs.try_sub(&rhs).expect("sides share an arity");
        let witness = diff.terms().next().map(|(m, _)| Witness::Exponent {
            exponent: m.exponents().to_vec(),
            lhs: lhs.coeff(m.exponents()),
            rhs: rhs.coeff(m.exponents()),
        });
        let equality = witness.is_none();
        VerificationReport {
            theorem,
            flavor: None,
            instance,
            holds: equality,
            equality,
            witness,
            lhs: Side::Poly { poly: lhs, vars },
            rhs: Side::Poly { poly: rhs, vars },
        }
    }

    /// Plain sides become numbers, others polynomials in `vars`.
    fn flavored(
        theorem: TheoremId,
        flavor: Flavor,
        instance: String,
        lhs: MultiPoly,
        rhs: MultiPoly,
        vars: Vars,
    ) -> Self {
        let mut r = match flavor {
            Flavor::Plain => Self::numeric(theorem, instance, as_number(&lhs), as_number(&rhs)),
            _ => Self::dominance(theorem, instance, lhs, rhs, vars),
        };
        r.flavor = Some(flavor);
        r
    }

    /// One JSON object, with sides and witness in canonical text.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn as_number(p: &MultiPoly) -> BigRational {
    BigRational::from_integer(p.sum_coeffs())
}

#[derive(Serialize)]
struct Record<'a> {
    theorem: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    flavor: Option<&'static str>,
    instance: &'a str,
    lhs: String,
    rhs: String,
    verdict: &'static str,
    equality: bool,
    witness: Option<String>,
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let witness = self.witness.as_ref().map(|w| match w {
            Witness::Gap(g) => g.to_string(),
            Witness::Exponent { exponent, lhs, rhs } => {
                let e: Vec<String> = exponent.iter().map(u32::to_string).collect();
                format!("[{}]: {lhs} < {rhs}", e.join(","))
            }
        });
        Record {
            theorem: self.theorem.name(),
            flavor: self.flavor.map(Flavor::name),
            instance: &self.instance,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            verdict: if self.holds { "holds" } else { "fails" },
            equality: self.equality,
            witness,
        }
        .serialize(s)
    }
}

/// `P[n; covers]` with 1-based element names.
pub fn describe_poset(p: &Poset) -> String {
    let covers: Vec<String> = p
        .covers()
        .iter()
        .map(|&(a, b)| format!("{}<{}", p.element_name(a), p.element_name(b)))
        .collect();
    format!("P[{}; {}]", p.len(), covers.join(","))
}

fn describe_quad(p: &Poset, q: &IdealQuad) -> String {
    format!(
        "{} A={} B={} C={} D={}",
        describe_poset(p),
        p.set_names(q.a),
        p.set_names(q.b),
        p.set_names(q.c),
        p.set_names(q.d)
    )
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

fn flavor_vars(flavor: Flavor) -> Vars {
    match flavor {
        Flavor::MultiQ | Flavor::Q | Flavor::Plain => Vars::Q,
    }
}

fn oracle_weight(flavor: Flavor) -> Weight {
    match flavor {
        Flavor::Plain => Weight::Count,
        Flavor::Q => Weight::Q,
        Flavor::MultiQ => Weight::MultiQ,
    }
}

/// The four sets `X−V, X−W, X−A−C, X−B−D` of a quadruple.
fn quad_sets(p: &Poset, q: &IdealQuad) -> [ElemSet; 4] {
    let x = p.ground();
    let v = (q.a & q.b) | q.c | q.d;
    let w = q.a | q.b | (q.c & q.d);
    [x - v, x - w, x - q.a - q.c, x - q.b - q.d]
}

/// Per-poset cache of extension counts and generating functions of
/// subposets, each confirmed against the oracle when first computed.
pub struct Checker<'a> {
    poset: &'a Poset,
    ext: HashMap<ElemSet, BigUint>,
    gf: HashMap<(ElemSet, u32, Flavor), MultiPoly>,
    profile: HashMap<(ElemSet, u32), MultiPoly>,
}

impl<'a> Checker<'a> {
    pub fn new(poset: &'a Poset) -> Self {
        Checker {
            poset,
            ext: HashMap::new(),
            gf: HashMap::new(),
            profile: HashMap::new(),
        }
    }

    pub fn poset(&self) -> &Poset {
        self.poset
    }

    /// `e(S)` for the subposet on `s`.
    pub fn extensions(&mut self, s: ElemSet) -> Result<BigUint, VerifyError> {
        if let Some(e) = self.ext.get(&s) {
            return Ok(e.clone());
        }
        let fast = count_linear_extensions(&self.poset.induced(s)?);
        if fast != oracle::extension_count(self.poset, s) {
            return Err(VerifyError::OracleMismatch(format!("e({})", self.poset.set_names(s))));
        }
        self.ext.insert(s, fast.clone());
        Ok(fast)
    }

    /// `ρ(S) = e(S)/|S|!`.
    pub fn rho(&mut self, s: ElemSet) -> Result<BigRational, VerifyError> {
        let e = BigInt::from(self.extensions(s)?);
        Ok(BigRational::new(e, BigInt::from(factorial(s.len()))))
    }

    /// `Ω(S,t)` in the given flavor; plain values are constants of arity 0.
    pub fn omega(&mut self, s: ElemSet, t: u32, flavor: Flavor) -> Result<MultiPoly, VerifyError> {
        if let Some(g) = self.gf.get(&(s, t, flavor)) {
            return Ok(g.clone());
        }
        let sub = self.poset.induced(s)?;
        let fast = match flavor {
            Flavor::Plain => MultiPoly::constant(0, BigInt::from(count_p_partitions(&sub, t, None)?)),
            _ => order_poly(&sub, t, flavor, None)?,
        };
        if fast != oracle::p_partition_gf(self.poset, s, t, oracle_weight(flavor), None) {
            return Err(VerifyError::OracleMismatch(format!(
                "Ω({}, {t}) [{}]",
                self.poset.set_names(s),
                flavor.name()
            )));
        }
        self.gf.insert((s, t, flavor), fast.clone());
        Ok(fast)
    }

    /// `K_z(S,N)` over `z_0..z_N`.
    pub fn profile(&mut self, s: ElemSet, n: u32) -> Result<MultiPoly, VerifyError> {
        if let Some(g) = self.profile.get(&(s, n)) {
            return Ok(g.clone());
        }
        let fast = profile_gf(&self.poset.induced(s)?, n);
        if fast != oracle::p_partition_gf(self.poset, s, n, Weight::Profile, None) {
            return Err(VerifyError::OracleMismatch(format!(
                "K({}, {n})",
                self.poset.set_names(s)
            )));
        }
        self.profile.insert((s, n), fast.clone());
        Ok(fast)
    }

    fn check_lower(&self, a: ElemSet) -> Result<(), VerifyError> {
        if self.poset.is_ideal(a, IdealKind::Lower)? {
            Ok(())
        } else {
            Err(VerifyError::NotIdeal {
                set: self.poset.set_names(a),
                kind: "lower",
            })
        }
    }

    fn check_quad(&self, q: &IdealQuad) -> Result<(), VerifyError> {
        self.check_lower(q.a)?;
        self.check_lower(q.b)?;
        for c in [q.c, q.d] {
            if !self.poset.is_ideal(c, IdealKind::Upper)? {
                return Err(VerifyError::NotIdeal {
                    set: self.poset.set_names(c),
                    kind: "upper",
                });
            }
        }
        if !(q.a.is_disjoint(q.c) && q.b.is_disjoint(q.d)) {
            return Err(VerifyError::NotDisjoint {
                ac: self.poset.set_names(q.a & q.c),
                bd: self.poset.set_names(q.b & q.d),
            });
        }
        Ok(())
    }

    /// `ρ(A∪B)·ρ(A∩B) ≥ ρ(A)·ρ(B)`.
    pub fn fishburn(&mut self, a: ElemSet, b: ElemSet) -> Result<VerificationReport, VerifyError> {
        self.check_lower(a)?;
        self.check_lower(b)?;
        let lhs = self.rho(a | b)? * self.rho(a & b)?;
        let rhs = self.rho(a)? * self.rho(b)?;
        let instance = format!(
            "{} A={} B={}",
            describe_poset(self.poset),
            self.poset.set_names(a),
            self.poset.set_names(b)
        );
        Ok(VerificationReport::numeric(TheoremId::Fishburn, instance, lhs, rhs))
    }

    /// `ρ(X−V)·ρ(X−W) ≥ ρ(X−A−C)·ρ(X−B−D)`.
    pub fn generalized_fishburn(&mut self, q: &IdealQuad) -> Result<VerificationReport, VerifyError> {
        self.check_quad(q)?;
        let [xv, xw, xac, xbd] = quad_sets(self.poset, q);
        let lhs = self.rho(xv)? * self.rho(xw)?;
        let rhs = self.rho(xac)? * self.rho(xbd)?;
        Ok(VerificationReport::numeric(
            TheoremId::GeneralizedFishburn,
            describe_quad(self.poset, q),
            lhs,
            rhs,
        ))
    }

    /// `Ω(X−V,t)·Ω(X−W,t) ≥ Ω(X−A−C,t)·Ω(X−B−D,t)` in the given flavor.
    pub fn order_polynomial(
        &mut self,
        q: &IdealQuad,
        t: u32,
        flavor: Flavor,
    ) -> Result<VerificationReport, VerifyError> {
        self.check_quad(q)?;
        let [xv, xw, xac, xbd] = quad_sets(self.poset, q);
        let lhs = &self.omega(xv, t, flavor)? * &self.omega(xw, t, flavor)?;
        let rhs = &self.omega(xac, t, flavor)? * &self.omega(xbd, t, flavor)?;
        let instance = format!("{} t={t}", describe_quad(self.poset, q));
        Ok(VerificationReport::flavored(
            TheoremId::OrderPolynomial,
            flavor,
            instance,
            lhs,
            rhs,
            flavor_vars(flavor),
        ))
    }

    /// `K_z(X−V,N)·K_z(X−W,N) ⩾ K_z(X−A−C,N)·K_z(X−B−D,N)`.
    pub fn profile_family(&mut self, q: &IdealQuad, n: u32) -> Result<VerificationReport, VerifyError> {
        self.check_quad(q)?;
        let [xv, xw, xac, xbd] = quad_sets(self.poset, q);
        let lhs = &self.profile(xv, n)? * &self.profile(xw, n)?;
        let rhs = &self.profile(xac, n)? * &self.profile(xbd, n)?;
        let instance = format!("{} N={n}", describe_quad(self.poset, q));
        Ok(VerificationReport::dominance(
            TheoremId::Profile,
            instance,
            lhs,
            rhs,
            Vars::Z0,
        ))
    }
}

pub fn verify_fishburn(p: &Poset, a: ElemSet, b: ElemSet) -> Result<VerificationReport, VerifyError> {
    Checker::new(p).fishburn(a, b)
}

pub fn verify_generalized_fishburn(p: &Poset, q: &IdealQuad) -> Result<VerificationReport, VerifyError> {
    Checker::new(p).generalized_fishburn(q)
}

/// The same statement on the dual poset: `(A,C)` and `(B,D)` trade roles,
/// so `A' = C, B' = D, C' = A, D' = B` (relabeled into `P*`).
pub fn dual_instance(p: &Poset, q: &IdealQuad) -> (Poset, IdealQuad) {
    let d = p.dual();
    let map = |s: ElemSet| s.iter().map(|i| d.perm[i]).collect::<ElemSet>();
    let quad = IdealQuad {
        a: map(q.c),
        b: map(q.d),
        c: map(q.a),
        d: map(q.b),
    };
    (d.poset, quad)
}

pub fn verify_op_family(p: &Poset, q: &IdealQuad, t: u32, flavor: Flavor) -> Result<VerificationReport, VerifyError> {
    Checker::new(p).order_polynomial(q, t, flavor)
}

pub fn verify_k_family(p: &Poset, q: &IdealQuad, n: u32) -> Result<VerificationReport, VerifyError> {
    Checker::new(p).profile_family(q, n)
}

/// Skew Schur polynomials by shape, each confirmed against the oracle.
#[derive(Default)]
pub struct SchurTable {
    cache: HashMap<(SkewShape, u32), MultiPoly>,
}

impl SchurTable {
    pub fn new() -> Self {
        SchurTable::default()
    }

    pub fn get(&mut self, shape: &SkewShape, n: u32) -> Result<MultiPoly, VerifyError> {
        if let Some(s) = self.cache.get(&(shape.clone(), n)) {
            return Ok(s.clone());
        }
        let fast = schur_poly(shape, n);
        if fast != oracle::schur(shape, n) {
            return Err(VerifyError::OracleMismatch(format!("s_{{{shape}}}")));
        }
        self.cache.insert((shape.clone(), n), fast.clone());
        Ok(fast)
    }

    /// `s_{μ/α ∨ ν/β}·s_{μ/α ∧ ν/β} ⩾ s_{μ/α}·s_{ν/β}` in `z_1..z_N`.
    pub fn lp_schur(&mut self, s1: &SkewShape, s2: &SkewShape, n: u32) -> Result<VerificationReport, VerifyError> {
        let need = s1.outer().length().max(s2.outer().length());
        if (n as usize) < need {
            return Err(VerifyError::TooFewVariables { n, need });
        }
        let lhs = &self.get(&s1.join(s2), n)? * &self.get(&s1.meet(s2), n)?;
        let rhs = &self.get(s1, n)? * &self.get(s2, n)?;
        let instance = format!("{s1} | {s2} N={n}");
        Ok(VerificationReport::dominance(
            TheoremId::LpSchur,
            instance,
            lhs,
            rhs,
            Vars::Z1,
        ))
    }
}

pub fn verify_lp_schur(s1: &SkewShape, s2: &SkewShape, n: u32) -> Result<VerificationReport, VerifyError> {
    SchurTable::new().lp_schur(s1, s2, n)
}

/// The slices `Ω(P,t;z,j)`, `j = 0..=t`, of one `(P, z, t)` in one flavor.
pub struct DdpTable {
    label: String,
    z: usize,
    t: u32,
    flavor: Flavor,
    slices: Vec<MultiPoly>,
    products: HashMap<(u32, u32), MultiPoly>,
}

impl DdpTable {
    pub fn new(p: &Poset, z: usize, t: u32, flavor: Flavor) -> Result<Self, VerifyError> {
        if z >= p.len() {
            return Err(VerifyError::Range(format!("z = {z} is not an element")));
        }
        let mut slices = Vec::new();
        for j in 0..=t {
            let c = SliceConstraint::fix(z, j);
            let fast = order_poly(p, t, flavor, Some(&c))?;
            if fast != oracle::p_partition_gf(p, p.ground(), t, oracle_weight(flavor), Some(&c)) {
                return Err(VerifyError::OracleMismatch(format!("Ω(P,{t};z,{j})")));
            }
            slices.push(fast);
        }
        Ok(DdpTable {
            label: describe_poset(p),
            z,
            t,
            flavor,
            slices,
            products: HashMap::new(),
        })
    }

    /// `Ω(P,t;z,j)`.
    pub fn slice(&self, j: u32) -> &MultiPoly {
        &self.slices[j as usize]
    }

    fn product(&mut self, i: u32, j: u32) -> MultiPoly {
        let key = (i.min(j), i.max(j));
        if let Some(p) = self.products.get(&key) {
            return p.clone();
        }
        let p = &self.slices[i as usize] * &self.slices[j as usize];
        self.products.insert(key, p.clone());
        p
    }

    /// `Ω(k+a)·Ω(k+b) ≥ Ω(k)·Ω(k+a+b)`; requires `a, b ≥ 1`, `k+a+b ≤ t`.
    pub fn check(&mut self, k: u32, a: u32, b: u32) -> Result<VerificationReport, VerifyError> {
        if a == 0 || b == 0 || k + a + b > self.t {
            return Err(VerifyError::Range(format!(
                "need a, b ≥ 1 and k+a+b ≤ t; got k={k}, a={a}, b={b}, t={}",
                self.t
            )));
        }
        let lhs = self.product(k + a, k + b);
        let rhs = self.product(k, k + a + b);
        let instance = format!("{} z=x{} t={} k={k} a={a} b={b}", self.label, self.z + 1, self.t);
        Ok(VerificationReport::flavored(
            TheoremId::Ddp,
            self.flavor,
            instance,
            lhs,
            rhs,
            flavor_vars(self.flavor),
        ))
    }
}

#[allow(clippy::too_many_arguments)]
pub fn verify_ddp_family(
    p: &Poset,
    z: usize,
    t: u32,
    k: u32,
    a: u32,
    b: u32,
    flavor: Flavor,
) -> Result<VerificationReport, VerifyError> {
    DdpTable::new(p, z, t, flavor)?.check(k, a, b)
}

/// `Ω_𝐪(P,t+a)·Ω_𝐪(P,t+b) ⩾ Ω_𝐪(P,t)·Ω_𝐪(P,t+a+b)`, obtained from the
/// slice inequality on `P ⊕ z` at level `T = t+a+b`. The slice identity
/// `Ω_𝐪(P⊕z,T;z,ℓ) = Ω_𝐪(P,ℓ)·q_{n+1}^ℓ` is checked for each `ℓ` used,
/// and the verdict of the slice inequality must match the direct one.
pub fn verify_ddp_log_concavity(p: &Poset, t: u32, a: u32, b: u32) -> Result<VerificationReport, VerifyError> {
    if a == 0 || b == 0 {
        return Err(VerifyError::Range("need a, b ≥ 1".into()));
    }
    let p = p.detached();
    let n = p.len();
    let ext = p.linear_sum(&Poset::chain(1));
    let top = t + a + b;
    let mut table = DdpTable::new(&ext, n, top, Flavor::MultiQ)?;
    let mut direct = HashMap::new();
    let identity: Vec<usize> = (0..n).collect();
    for l in [t, t + a, t + b, top] {
        let omega = order_poly(&p, l, Flavor::MultiQ, None)?;
        if omega != oracle::p_partition_gf(&p, p.ground(), l, Weight::MultiQ, None) {
            return Err(VerifyError::OracleMismatch(format!("Ω_q(P,{l})")));
        }
        let mut shift = vec![0; n + 1];
        shift[n] = l;
        if table.slice(l) != &omega.embed(n + 1, &identity).shift(&shift) {
            return Err(VerifyError::Identity(format!(
                "Ω(P⊕z,{top};z,{l}) = Ω(P,{l})·q{}^{l}",
                n + 1
            )));
        }
        direct.insert(l, omega);
    }
    let via = table.check(t, a, b)?;
    let lhs = &direct[&(t + a)] * &direct[&(t + b)];
    let rhs = &direct[&t] * &direct[&top];
    let instance = format!("{} t={t} a={a} b={b}", describe_poset(&p));
    let mut report = VerificationReport::dominance(TheoremId::DdpLogConcave, instance, lhs, rhs, Vars::Q);
    report.flavor = Some(Flavor::MultiQ);
    if report.holds != via.holds {
        return Err(VerifyError::Identity(
            "log-concavity verdict matches the slice verdict on P⊕z".into(),
        ));
    }
    Ok(report)
}

/// The slices `Λ(k,ℓ)` for `k, ℓ ≤ t+1` of one `(P, x, y, z, t)`.
pub struct CrossTable {
    label: String,
    t: u32,
    flavor: Flavor,
    lambda: Vec<Vec<MultiPoly>>,
}

impl CrossTable {
    pub fn new(p: &Poset, (x, y, z): (usize, usize, usize), t: u32, flavor: Flavor) -> Result<Self, VerifyError> {
        if x == y || y == z || x == z {
            return Err(VerifyError::NotDistinct);
        }
        let mut lambda = Vec::new();
        for k in 0..=t + 1 {
            let mut row = Vec::new();
            for l in 0..=t + 1 {
                let c = SliceConstraint::gaps(x, y, z, k, l);
                let fast = order_poly(p, t, flavor, Some(&c))?;
                if fast != oracle::p_partition_gf(p, p.ground(), t, oracle_weight(flavor), Some(&c)) {
                    return Err(VerifyError::OracleMismatch(format!("Λ({k},{l})")));
                }
                row.push(fast);
            }
            lambda.push(row);
        }
        let name = |i: usize| p.element_name(i);
        Ok(CrossTable {
            label: format!("{} x={} y={} z={} t={t}", describe_poset(p), name(x), name(y), name(z)),
            t,
            flavor,
            lambda,
        })
    }

    pub fn lambda(&self, k: u32, l: u32) -> &MultiPoly {
        &self.lambda[k as usize][l as usize]
    }

    /// `Λ(k,ℓ+1)·Λ(k+1,ℓ) ≥ Λ(k,ℓ)·Λ(k+1,ℓ+1)` for `k, ℓ ≤ t`.
    pub fn check(&self, k: u32, l: u32) -> Result<VerificationReport, VerifyError> {
        if k > self.t || l > self.t {
            return Err(VerifyError::Range(format!("k, ℓ must be at most t = {}", self.t)));
        }
        let lhs = self.lambda(k, l + 1) * self.lambda(k + 1, l);
        let rhs = self.lambda(k, l) * self.lambda(k + 1, l + 1);
        Ok(VerificationReport::flavored(
            TheoremId::CrossProduct,
            self.flavor,
            format!("{} k={k} l={l}", self.label),
            lhs,
            rhs,
            flavor_vars(self.flavor),
        ))
    }
}

/// Slices with `k` or `ℓ` above `t` are empty, so larger values are 0 ≥ 0.
#[allow(clippy::too_many_arguments)]
pub fn verify_cross_product(
    p: &Poset,
    xyz: (usize, usize, usize),
    t: u32,
    k: u32,
    l: u32,
    flavor: Flavor,
) -> Result<VerificationReport, VerifyError> {
    let table = CrossTable::new(p, xyz, t, flavor)?;
    if k > t || l > t {
        let zero = MultiPoly::zero(table.lambda(0, 0).arity());
        return Ok(VerificationReport::flavored(
            TheoremId::CrossProduct,
            flavor,
            format!("{} k={k} l={l}", table.label),
            zero.clone(),
            zero,
            flavor_vars(flavor),
        ));
    }
    table.check(k, l)
}

/// `Σ_L q^{maj(L)}` over linear extensions, checked against the oracle.
pub fn maj_polynomial(p: &Poset, convention: MajConvention) -> Result<MultiPoly, VerifyError> {
    let mut out = MultiPoly::zero(1);
    for w in linear_extensions(p) {
        out.add_term(
            crate::poly::Monomial::new(vec![major_index(p, &w, convention)?]),
            BigInt::one(),
        );
    }
    if out != oracle::maj_generating_function(p, convention) {
        return Err(VerifyError::OracleMismatch("Σ q^maj".into()));
    }
    Ok(out)
}

/// `Σ_L q^{maj(L)} / Π_{i≤n}(1−q^i)` through degree `t`.
fn maj_series(p: &Poset, t: u32, convention: MajConvention) -> Result<MultiPoly, VerifyError> {
    let mut series = maj_polynomial(p, convention)?.truncate(t as u64);
    for i in 1..=p.len() as u32 {
        let geometric = MultiPoly::from_terms(1, (0..=t / i).map(|k| (vec![k * i], BigInt::one())));
        series = (&series * &geometric).truncate(t as u64);
    }
    Ok(series)
}

/// Compares `Ω_q(P,t)` with the maj series through degree `t`; every
/// P-partition of size at most `t` has entries at most `t`.
pub fn verify_stanley_identity(
    p: &Poset,
    t: u32,
    convention: MajConvention,
) -> Result<VerificationReport, VerifyError> {
    let omega = order_poly(p, t, Flavor::Q, None)?;
    if omega != oracle::p_partition_gf(p, p.ground(), t, Weight::Q, None) {
        return Err(VerifyError::OracleMismatch(format!("Ω_q(P,{t})")));
    }
    let lhs = omega.truncate(t as u64);
    let rhs = maj_series(p, t, convention)?;
    let conv = match convention {
        MajConvention::Major => "maj",
        MajConvention::Comajor => "comaj",
    };
    let instance = format!("{} t={t} {conv}", describe_poset(p));
    Ok(VerificationReport::poly_identity(
        TheoremId::Stanley,
        instance,
        lhs,
        rhs,
        Vars::Q,
    ))
}

/// `n!/Π h(c) = e(P_λ)`.
pub fn verify_hook_length(shape: &Partition) -> Result<VerificationReport, VerifyError> {
    let p = Poset::from_skew_shape(&SkewShape::straight(shape.clone()));
    let e = Checker::new(&p).extensions(p.ground())?;
    let hook = shape.hook_length_count();
    let big = |u: BigUint| BigRational::from_integer(BigInt::from(u));
    Ok(VerificationReport::identity(
        TheoremId::HookLength,
        format!("λ={shape}"),
        big(hook),
        big(e),
    ))
}

/// `z_i ← q^i` applied to a profile polynomial over `z_0..z_N`.
pub fn profile_to_q(k: &MultiPoly) -> MultiPoly {
    let plan: Vec<Subst> = (0..k.arity() as u32).map(Subst::Power).collect();
    let s = k.substitute(&plan).expect("plan matches arity");
    if s.arity() == 0 {
        s.embed(1, &[])
    } else {
        s
    }
}

/// The sides of a report as polynomials (numbers become constants of
/// arity 0).
pub fn sides(r: &VerificationReport) -> (MultiPoly, MultiPoly) {
    let conv = |s: &Side| match s {
        Side::Number(n) => {
            assert!(n.is_integer(), "rational sides have no polynomial form");
            MultiPoly::constant(0, n.to_integer())
        }
        Side::Poly { poly, .. } => poly.clone(),
    };
    (conv(&r.lhs), conv(&r.rhs))
}

/// `Ω(P,t)·n!/tⁿ`, which tends to `e(P)`.
pub fn scaled_order_polynomial(p: &Poset, t: u32) -> BigRational {
    let omega = BigInt::from(count_p_partitions(p, t, None).expect("no constraint"));
    let n = p.len();
    let tn = num_traits::pow(BigInt::from(t), n);
    if tn.is_zero() {
        return BigRational::from_integer(omega);
    }
    BigRational::new(omega * BigInt::from(factorial(n)), tn)
}

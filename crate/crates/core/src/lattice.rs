//! Explicit finite lattices and the four-functions checkers.
//!
//! Elements are integer vectors (one coordinate per poset element) kept in
//! lexicographic order, so element `0` of a function lattice is its bottom.
//! Join and meet are tabulated when the lattice is small enough and
//! computed from the states otherwise.

use std::cell::{Cell, OnceCell};
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::enumeration::for_each_p_partition;
use crate::instances::IdealQuad;
use crate::poly::{Dominance, Monomial, MultiPoly};
use crate::poset::Poset;

/// Lattices up to this size get join and meet tables.
pub const TABLE_LIMIT: usize = 4096;
/// Largest lattice [`LatticeInstance`] builders will materialize.
pub const BUILD_LIMIT: usize = 200_000;
/// Default size cap for exhaustive triple checks in [`verify_lattice`].
pub const DEFAULT_VERIFY_CAP: usize = 1100;
/// Default size cap for exhaustive pair checks of the four-functions
/// hypothesis.
pub const DEFAULT_PAIR_CAP: usize = 2000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("lattice would have more than {limit} elements")]
    TooLarge { limit: usize },
    #[error("exhaustive check refused: {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("{size} elements exceeds the pair cap of {cap}; pass a sampling budget to check a sample")]
    SamplingRequired { size: usize, cap: usize },
    #[error("the lattice has no bottom or top element")]
    NoBounds,
    #[error("join or meet of {0} and {1} leaves the element set")]
    NotClosed(usize, usize),
    #[error("element {x} has complements {first} and {second}")]
    NotUnique { x: usize, first: usize, second: usize },
    #[error(
        "integrity error: element {x} has two complements {first} and {second} in a lattice verified distributive"
    )]
    Integrity { x: usize, first: usize, second: usize },
    #[error("function {function} of family {family:?} is not modular on the pair ({x}, {y})")]
    NotModular {
        family: String,
        function: usize,
        x: usize,
        y: usize,
    },
    #[error("weight functions must have one value per element ({want}), got {got}")]
    WeightLength { got: usize, want: usize },
    #[error("element index {0} out of range")]
    BadElement(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    /// Coordinatewise max and min.
    Pointwise,
    /// `[S∨T](w) = max{S(w)−S(y), T(w)−T(y)} + min{S(y), T(y)}` and dually,
    /// for the anchor `y`.
    Anchored { anchor: usize },
    /// Given by explicit tables only.
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    PPartition { t: u32 },
    Ddp { t: u32, b: u32 },
    Shepp { t: u32, anchor: usize },
    Explicit,
}

#[derive(Debug, Clone)]
pub struct LatticeInstance {
    kind: LatticeKind,
    op: Operation,
    states: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u32>,
    tables: OnceCell<Tables>,
    bounds: OnceCell<(Option<usize>, Option<usize>)>,
    distributive: Cell<Option<bool>>,
}

/// Row-major join and meet tables; [`NONE`] marks results outside the set.
#[derive(Debug, Clone)]
struct Tables {
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl LatticeInstance {
    fn from_states(kind: LatticeKind, op: Operation, mut states: Vec<Vec<i64>>) -> Self {
        states.sort();
        states.dedup();
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        LatticeInstance {
            kind,
            op,
            states,
            index,
            tables: OnceCell::new(),
            bounds: OnceCell::new(),
            distributive: Cell::new(None),
        }
    }

    /// A lattice given by its tables; element `i` gets the state `[i]`.
    pub fn from_tables(join: Vec<Vec<usize>>, meet: Vec<Vec<usize>>) -> Result<Self, LatticeError> {
        let n = join.len();
        if n > TABLE_LIMIT {
            return Err(LatticeError::TooLarge { limit: TABLE_LIMIT });
        }
        let flat = |t: Vec<Vec<usize>>| -> Result<Vec<u32>, LatticeError> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(LatticeError::Range("tables must be square and of equal size".into()));
            }
            Ok(t.into_iter()
                .flatten()
                .map(|k| if k < n { k as u32 } else { NONE })
                .collect())
        };
        let tables = Tables {
            join: flat(join)?,
            meet: flat(meet)?,
        };
        Ok(LatticeInstance {
            kind: LatticeKind::Explicit,
            op: Operation::Table,
            states: (0..n as i64).map(|i| vec![i]).collect(),
            index: (0..n as i64).map(|i| (vec![i], i as u32)).collect(),
            tables: OnceCell::from(tables),
            bounds: OnceCell::new(),
            distributive: Cell::new(None),
        })
    }

    /// Tabulates join and meet, once. Only called for lattices within
    /// [`TABLE_LIMIT`].
    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| {
            let n = self.len();
            let mut join = vec![NONE; n * n];
            let mut meet = vec![NONE; n * n];
            for i in 0..n {
                for j in 0..n {
                    join[i * n + j] = self.compute(i, j, true).map_or(NONE, |k| k as u32);
                    meet[i * n + j] = self.compute(i, j, false).map_or(NONE, |k| k as u32);
                }
            }
            Tables { join, meet }
        })
    }

    fn bounds(&self) -> (Option<usize>, Option<usize>) {
        *self.bounds.get_or_init(|| {
            let n = self.len();
            if self.op == Operation::Pointwise && n > 0 {
                let width = self.states[0].len();
                let pick = |max: bool| {
                    let s: Vec<i64> = (0..width)
                        .map(|i| {
                            let col = self.states.iter().map(|s| s[i]);
                            if max { col.max() } else { col.min() }.unwrap()
                        })
                        .collect();
                    self.index_of(&s)
                };
                return (pick(false), pick(true));
            }
            let absorbs = |x: usize, join: bool| (0..n).all(|y| self.op_index(x, y, join) == Some(x));
            ((0..n).find(|&x| absorbs(x, false)), (0..n).find(|&x| absorbs(x, true)))
        })
    }

    fn compute(&self, i: usize, j: usize, join: bool) -> Option<usize> {
        let (s, t) = (&self.states[i], &self.states[j]);
        let state: Vec<i64> = match self.op {
            Operation::Pointwise => s
                .iter()
                .zip(t)
                .map(|(&a, &b)| if join { a.max(b) } else { a.min(b) })
                .collect(),
            Operation::Anchored { anchor } => {
                let (sy, ty) = (s[anchor], t[anchor]);
                let base = if join { sy.min(ty) } else { sy.max(ty) };
                s.iter()
                    .zip(t)
                    .map(|(&a, &b)| {
                        let (u, v) = (a - sy, b - ty);
                        base + if join { u.max(v) } else { u.min(v) }
                    })
                    .collect()
            }
            Operation::Table => return None,
        };
        self.index.get(&state).map(|&k| k as usize)
    }

    fn op_index(&self, i: usize, j: usize, join: bool) -> Option<usize> {
        let Some(t) = self.tables.get() else {
            return self.compute(i, j, join);
        };
        let n = self.len();
        let k = if join { t.join[i * n + j] } else { t.meet[i * n + j] };
        (k != NONE).then_some(k as usize)
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.op_index(i, j, true)
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.op_index(i, j, false)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn operation(&self) -> Operation {
        self.op
    }

    /// Element `i` as a map, in the coordinates of the construction (DDP
    /// values may be negative).
    pub fn state(&self, i: usize) -> &[i64] {
        &self.states[i]
    }

    pub fn states(&self) -> &[Vec<i64>] {
        &self.states
    }

    pub fn index_of(&self, state: &[i64]) -> Option<usize> {
        self.index.get(state).map(|&k| k as usize)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bounds().0
    }

    pub fn top(&self) -> Option<usize> {
        self.bounds().1
    }

    /// Result of the last distributivity check, if any ran.
    pub fn known_distributive(&self) -> Option<bool> {
        self.distributive.get()
    }

    fn join_set(&self, xs: &[usize], ys: &[usize], join: bool) -> Result<Vec<usize>, LatticeError> {
        let mut out = BTreeSet::new();
        for &x in xs {
            for &y in ys {
                out.insert(self.op_index(x, y, join).ok_or(LatticeError::NotClosed(x, y))?);
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn p_partition_states(p: &Poset, t: u32, shift: i64) -> Result<Vec<Vec<i64>>, LatticeError> {
    let mut states = Vec::new();
    let mut overflow = false;
    for_each_p_partition(p, t, None, |v| {
        if states.len() == BUILD_LIMIT {
            overflow = true;
        } else if !overflow {
            states.push(v.iter().map(|&x| x as i64 - shift).collect());
        }
    })
    .expect("no constraint");
    if overflow {
        Err(LatticeError::TooLarge { limit: BUILD_LIMIT })
    } else {
        Ok(states)
    }
}

/// All P-partitions into `{0..t}` under pointwise max and min.
pub fn ppartition_lattice(p: &Poset, t: u32) -> Result<LatticeInstance, LatticeError> {
    let states = p_partition_states(p, t, 0)?;
    Ok(LatticeInstance::from_states(
        LatticeKind::PPartition { t },
        Operation::Pointwise,
        states,
    ))
}

/// Order-preserving maps into `{−b..t}` under pointwise max and min.
pub fn ddp_lattice(p: &Poset, t: u32, b: u32) -> Result<LatticeInstance, LatticeError> {
    let hi = t
        .checked_add(b)
        .ok_or_else(|| LatticeError::Range(format!("t + b overflows ({t} + {b})")))?;
    let states = p_partition_states(p, hi, b as i64)?;
    Ok(LatticeInstance::from_states(
        LatticeKind::Ddp { t, b },
        Operation::Pointwise,
        states,
    ))
}

/// P-partitions into `{0..t}` under the join and meet anchored at `anchor`.
pub fn shepp_lattice(p: &Poset, t: u32, anchor: usize) -> Result<LatticeInstance, LatticeError> {
    if anchor >= p.len() {
        return Err(LatticeError::Range(format!(
            "anchor {anchor} out of range for a poset on {} elements",
            p.len()
        )));
    }
    let states = p_partition_states(p, t, 0)?;
    Ok(LatticeInstance::from_states(
        LatticeKind::Shepp { t, anchor },
        Operation::Anchored { anchor },
        states,
    ))
}

/// The subsets of an `m`-set as 0/1 vectors.
pub fn boolean_lattice(m: usize) -> LatticeInstance {
    ppartition_lattice(&Poset::antichain(m), 1).expect("small")
}

/// The chain `0 < 1 < … < len-1`.
pub fn chain_lattice(len: usize) -> LatticeInstance {
    assert!(len >= 1);
    ppartition_lattice(&Poset::chain(1), len as u32 - 1).expect("small")
}

/// The diamond `M₃`: bottom `0`, atoms `1, 2, 3`, top `4`.
pub fn diamond() -> LatticeInstance {
    let n = 5;
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            (join[i][j], meet[i][j]) = match (i, j) {
                _ if i == j => (i, i),
                (0, _) => (j, 0),
                (_, 0) => (i, 0),
                (4, _) | (_, 4) => (4, i.min(j)),
                _ => (4, 0),
            };
        }
    }
    LatticeInstance::from_tables(join, meet).expect("well-formed tables")
}

/// Nonnegative integer functions `r_1..r_ℓ` on the elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularFamily {
    pub name: String,
    /// `values[i][x] = r_i(x)`.
    pub values: Vec<Vec<u32>>,
}

impl ModularFamily {
    fn offset(l: &LatticeInstance) -> i64 {
        l.states.iter().flatten().copied().min().unwrap_or(0)
    }

    /// `r_i(T) = T(x_i)`, shifted so the smallest value in the lattice is 0.
    pub fn element_values(l: &LatticeInstance) -> Self {
        let off = Self::offset(l);
        let width = l.states.first().map_or(0, Vec::len);
        ModularFamily {
            name: "element-value".into(),
            values: (0..width)
                .map(|i| l.states.iter().map(|s| (s[i] - off) as u32).collect())
                .collect(),
        }
    }

    /// `r_v(T) = #{x : T(x) = v}` for each value `v` that occurs.
    pub fn value_counts(l: &LatticeInstance) -> Self {
        let off = Self::offset(l);
        let top = l.states.iter().flatten().copied().max().unwrap_or(0);
        ModularFamily {
            name: "value-count".into(),
            values: (off..=top)
                .map(|v| {
                    l.states
                        .iter()
                        .map(|s| s.iter().filter(|&&x| x == v).count() as u32)
                        .collect()
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn exponent(&self, x: usize) -> Vec<u32> {
        self.values.iter().map(|r| r[x]).collect()
    }

    fn first_violation(&self, l: &LatticeInstance) -> Result<Option<(usize, usize, usize)>, LatticeError> {
        let n = l.len();
        for x in 0..n {
            for y in x..n {
                let j = l.join(x, y).ok_or(LatticeError::NotClosed(x, y))?;
                let m = l.meet(x, y).ok_or(LatticeError::NotClosed(x, y))?;
                for (i, r) in self.values.iter().enumerate() {
                    if r[x] as u64 + r[y] as u64 != r[j] as u64 + r[m] as u64 {
                        return Ok(Some((i, x, y)));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// First failure found by [`verify_lattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeViolation {
    NotClosed {
        x: usize,
        y: usize,
    },
    Commutativity {
        x: usize,
        y: usize,
    },
    Idempotence {
        x: usize,
    },
    Absorption {
        x: usize,
        y: usize,
    },
    Associativity {
        x: usize,
        y: usize,
        z: usize,
    },
    /// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    Distributivity {
        x: usize,
        y: usize,
        z: usize,
    },
    Modularity {
        family: String,
        function: usize,
        x: usize,
        y: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub elements: usize,
    pub violation: Option<LatticeViolation>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Exhaustively checks closure, the lattice axioms, distributivity and the
/// modularity of each family. Refuses lattices larger than `cap`.
pub fn verify_lattice(
    l: &LatticeInstance,
    families: &[ModularFamily],
    cap: usize,
) -> Result<LatticeReport, LatticeError> {
    let n = l.len();
    if n > cap.min(TABLE_LIMIT) {
        return Err(LatticeError::CapExceeded {
            size: n,
            cap: cap.min(TABLE_LIMIT),
        });
    }
    let report = |v| {
        Ok(LatticeReport {
            elements: n,
            violation: v,
        })
    };
    let tables = l.tables();
    let (jt, mt) = (&tables.join, &tables.meet);
    let j = |a: usize, b: usize| jt[a * n + b] as usize;
    let m = |a: usize, b: usize| mt[a * n + b] as usize;
    for x in 0..n {
        if j(x, x) != x || m(x, x) != x {
            return report(Some(LatticeViolation::Idempotence { x }));
        }
        for y in 0..n {
            if jt[x * n + y] == NONE || mt[x * n + y] == NONE {
                return report(Some(LatticeViolation::NotClosed { x, y }));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if j(x, y) != j(y, x) || m(x, y) != m(y, x) {
                return report(Some(LatticeViolation::Commutativity { x, y }));
            }
            if j(x, m(x, y)) != x || m(x, j(x, y)) != x {
                return report(Some(LatticeViolation::Absorption { x, y }));
            }
        }
    }
    for x in 0..n {
        let (jx, mx) = (&jt[x * n..(x + 1) * n], &mt[x * n..(x + 1) * n]);
        for y in 0..n {
            let (xy_j, xy_m) = (jx[y] as usize, mx[y] as usize);
            let (jxy, mxy) = (&jt[xy_j * n..(xy_j + 1) * n], &mt[xy_m * n..(xy_m + 1) * n]);
            let (jy, my) = (&jt[y * n..(y + 1) * n], &mt[y * n..(y + 1) * n]);
            for z in 0..n {
                if jxy[z] != jx[jy[z] as usize] || mxy[z] != mx[my[z] as usize] {
                    return report(Some(LatticeViolation::Associativity { x, y, z }));
                }
            }
        }
    }
    for x in 0..n {
        let mx = &mt[x * n..(x + 1) * n];
        for y in 0..n {
            let xy = mx[y] as usize;
            let (jy, jxy) = (&jt[y * n..(y + 1) * n], &jt[xy * n..(xy + 1) * n]);
            for z in y + 1..n {
                if mx[jy[z] as usize] != jxy[mx[z] as usize] {
                    l.distributive.set(Some(false));
                    return report(Some(LatticeViolation::Distributivity { x, y, z }));
                }
            }
        }
    }
    l.distributive.set(Some(true));
    for fam in families {
        if let Some((function, x, y)) = fam.first_violation(l)? {
            return report(Some(LatticeViolation::Modularity {
                family: fam.name.clone(),
                function,
                x,
                y,
            }));
        }
    }
    report(None)
}

/// The element `y` with `x∧y = bottom` and `x∨y = top`, if there is one.
pub fn complement(l: &LatticeInstance, x: usize) -> Result<Option<usize>, LatticeError> {
    let (bot, top) = l.bottom().zip(l.top()).ok_or(LatticeError::NoBounds)?;
    if x >= l.len() {
        return Err(LatticeError::BadElement(x));
    }
    let mut found = None;
    for y in 0..l.len() {
        if l.meet(x, y) == Some(bot) && l.join(x, y) == Some(top) {
            if let Some(first) = found {
                let (first, second) = (first, y);
                return Err(if l.known_distributive() == Some(true) {
                    LatticeError::Integrity { x, first, second }
                } else {
                    LatticeError::NotUnique { x, first, second }
                });
            }
            found = Some(y);
        }
    }
    Ok(found)
}

/// A nonnegative rational value per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction(Vec<BigRational>);

impl WeightFunction {
    pub fn new(values: Vec<BigRational>) -> Result<Self, LatticeError> {
        if let Some(i) = values.iter().position(|v| v.is_negative()) {
            return Err(LatticeError::Range(format!("weight at element {i} is negative")));
        }
        Ok(WeightFunction(values))
    }

    pub fn ones(n: usize) -> Self {
        WeightFunction(vec![BigRational::one(); n])
    }

    pub fn indicator(n: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        WeightFunction(
            (0..n)
                .map(|i| {
                    if pred(i) {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.0[i]
    }

    pub fn set(&mut self, i: usize, v: BigRational) -> Result<(), LatticeError> {
        if v.is_negative() {
            return Err(LatticeError::Range(format!("weight at element {i} is negative")));
        }
        self.0[i] = v;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ρ(X) = Σ_{x∈X} ρ(x)`.
    pub fn sum(&self, xs: &[usize]) -> BigRational {
        xs.iter().map(|&x| &self.0[x]).sum()
    }
}

/// The functions `α, β, γ, δ` of a four-functions inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourFunctions {
    pub alpha: WeightFunction,
    pub beta: WeightFunction,
    pub gamma: WeightFunction,
    pub delta: WeightFunction,
}

impl FourFunctions {
    fn all(&self) -> [&WeightFunction; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    fn check_len(&self, n: usize) -> Result<(), LatticeError> {
        match self.all().iter().find(|w| w.len() != n) {
            Some(w) => Err(LatticeError::WeightLength { got: w.len(), want: n }),
            None => Ok(()),
        }
    }
}

/// Indicator functions for the generalized Fishburn inequality on a
/// P-partition lattice with values in `{0..t}`: `α` requires zeros on `A`
/// and `t` on `C`, `β` likewise with `B, D`, `γ` with `A∩B, C∪D`, `δ` with
/// `A∪B, C∩D`.
pub fn fishburn_indicators(l: &LatticeInstance, quad: &IdealQuad, t: u32) -> FourFunctions {
    let t = t as i64;
    let ind = |low: crate::poset::ElemSet, high: crate::poset::ElemSet| {
        WeightFunction::indicator(l.len(), |i| {
            let s = l.state(i);
            low.iter().all(|x| s[x] == 0) && high.iter().all(|y| s[y] == t)
        })
    };
    FourFunctions {
        alpha: ind(quad.a, quad.c),
        beta: ind(quad.b, quad.d),
        gamma: ind(quad.a & quad.b, quad.c | quad.d),
        delta: ind(quad.a | quad.b, quad.c & quad.d),
    }
}

/// Indicator functions for the DDP inequality on the lattice of maps into
/// `{−b..t}`: `α`: `T(z)=k`, `T ≥ 0`; `β`: `T(z)=k+a`, `T ≤ t−b`;
/// `γ`: `T(z)=k+a`, `T ≥ 0`; `δ`: `T(z)=k`, `T ≤ t−b`.
pub fn ddp_indicators(l: &LatticeInstance, z: usize, t: u32, k: u32, a: u32, b: u32) -> FourFunctions {
    let (t, k, a, b) = (t as i64, k as i64, a as i64, b as i64);
    let ind = |at: i64, nonneg: bool| {
        WeightFunction::indicator(l.len(), |i| {
            let s = l.state(i);
            s[z] == at
                && if nonneg {
                    s.iter().all(|&v| v >= 0)
                } else {
                    s.iter().all(|&v| v <= t - b)
                }
        })
    };
    FourFunctions {
        alpha: ind(k, true),
        beta: ind(k + a, false),
        gamma: ind(k + a, true),
        delta: ind(k, false),
    }
}

/// Indicator functions for the cross-product inequality on a Shepp
/// lattice: `T(y)−T(x)` and `T(z)−T(y)` equal `(k,ℓ)`, `(k+1,ℓ+1)`,
/// `(k,ℓ+1)` and `(k+1,ℓ)` respectively.
pub fn cross_product_indicators(l: &LatticeInstance, x: usize, y: usize, z: usize, k: u32, ell: u32) -> FourFunctions {
    let (k, ell) = (k as i64, ell as i64);
    let ind = |dk: i64, dl: i64| {
        WeightFunction::indicator(l.len(), |i| {
            let s = l.state(i);
            s[y] - s[x] == k + dk && s[z] - s[y] == ell + dl
        })
    };
    FourFunctions {
        alpha: ind(0, 0),
        beta: ind(1, 1),
        gamma: ind(0, 1),
        delta: ind(1, 0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdMode {
    Hypothesis,
    Conclusion,
    Both,
}

/// How many pairs the hypothesis check may look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairBudget {
    /// Lattices up to this size are checked on every pair.
    pub cap: usize,
    /// Above the cap, check this many uniformly drawn pairs with this seed.
    /// Without it, larger lattices are refused.
    pub sample: Option<(u64, u64)>,
}

impl Default for PairBudget {
    fn default() -> Self {
        PairBudget {
            cap: DEFAULT_PAIR_CAP,
            sample: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisOutcome {
    pub exhaustive: bool,
    pub pairs_checked: u64,
    /// The lexicographically least pair `(x, y)` with
    /// `α(x)β(y) > γ(x∨y)δ(x∧y)`, among those checked.
    pub witness: Option<(usize, usize)>,
}

impl HypothesisOutcome {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// `lhs = γ(X∨Y)·δ(X∧Y)` against `rhs = α(X)·β(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConclusionOutcome {
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl ConclusionOutcome {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs
    }

    pub fn equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdReport {
    pub hypothesis: Option<HypothesisOutcome>,
    pub conclusion: Option<ConclusionOutcome>,
}

fn dedup(xs: &[usize], n: usize) -> Result<Vec<usize>, LatticeError> {
    if let Some(&bad) = xs.iter().find(|&&x| x >= n) {
        return Err(LatticeError::BadElement(bad));
    }
    let set: BTreeSet<usize> = xs.iter().copied().collect();
    Ok(set.into_iter().collect())
}

fn violates(l: &LatticeInstance, f: &FourFunctions, x: usize, y: usize) -> Result<bool, LatticeError> {
    let (a, b) = (f.alpha.get(x), f.beta.get(y));
    if a.is_zero() || b.is_zero() {
        return Ok(false);
    }
    let j = l.join(x, y).ok_or(LatticeError::NotClosed(x, y))?;
    let m = l.meet(x, y).ok_or(LatticeError::NotClosed(x, y))?;
    Ok(a * b > f.gamma.get(j) * f.delta.get(m))
}

fn hypothesis(l: &LatticeInstance, f: &FourFunctions, budget: PairBudget) -> Result<HypothesisOutcome, LatticeError> {
    let n = l.len();
    if n <= budget.cap {
        let mut pairs = 0;
        for x in 0..n {
            if f.alpha.get(x).is_zero() {
                pairs += n as u64;
                continue;
            }
            for y in 0..n {
                pairs += 1;
                if violates(l, f, x, y)? {
                    return Ok(HypothesisOutcome {
                        exhaustive: true,
                        pairs_checked: pairs,
                        witness: Some((x, y)),
                    });
                }
            }
        }
        return Ok(HypothesisOutcome {
            exhaustive: true,
            pairs_checked: pairs,
            witness: None,
        });
    }
    let (samples, seed) = budget.sample.ok_or(LatticeError::SamplingRequired {
        size: n,
        cap: budget.cap,
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witness: Option<(usize, usize)> = None;
    for _ in 0..samples {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if violates(l, f, x, y)? && witness.is_none_or(|w| (x, y) < w) {
            witness = Some((x, y));
        }
    }
    Ok(HypothesisOutcome {
        exhaustive: false,
        pairs_checked: samples,
        witness,
    })
}

/// Checks `α(x)β(y) ≤ γ(x∨y)δ(x∧y)` over pairs of elements and/or the set
/// inequality `α(X)β(Y) ≤ γ(X∨Y)δ(X∧Y)`.
pub fn ad_check(
    l: &LatticeInstance,
    f: &FourFunctions,
    xs: &[usize],
    ys: &[usize],
    mode: AdMode,
    budget: PairBudget,
) -> Result<AdReport, LatticeError> {
    let n = l.len();
    f.check_len(n)?;
    let hyp = match mode {
        AdMode::Conclusion => None,
        _ => Some(hypothesis(l, f, budget)?),
    };
    let conclusion = match mode {
        AdMode::Hypothesis => None,
        _ => {
            let (xs, ys) = (dedup(xs, n)?, dedup(ys, n)?);
            let joins = l.join_set(&xs, &ys, true)?;
            let meets = l.join_set(&xs, &ys, false)?;
            Some(ConclusionOutcome {
                lhs: f.gamma.sum(&joins) * f.delta.sum(&meets),
                rhs: f.alpha.sum(&xs) * f.beta.sum(&ys),
            })
        }
    };
    Ok(AdReport {
        hypothesis: hyp,
        conclusion,
    })
}

/// Polynomial sides `γ_{⟨q,r⟩}(X∨Y)·δ_{⟨q,r⟩}(X∧Y)` (lhs) and
/// `α_{⟨q,r⟩}(X)·β_{⟨q,r⟩}(Y)` (rhs), each multiplied by `denominator²`
/// so the coefficients are integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdMultiReport {
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub denominator: BigInt,
    pub dominance: Dominance,
}

/// The multivariate four-functions inequality over variables `q_1..q_ℓ`,
/// one per function of `r`, compared coefficientwise.
pub fn ad_multi_check(
    l: &LatticeInstance,
    f: &FourFunctions,
    r: &ModularFamily,
    xs: &[usize],
    ys: &[usize],
    cap: usize,
) -> Result<AdMultiReport, LatticeError> {
    let n = l.len();
    f.check_len(n)?;
    if r.values.iter().any(|v| v.len() != n) {
        return Err(LatticeError::Range(
            "modular family must have one value per element".into(),
        ));
    }
    if n > cap {
        return Err(LatticeError::CapExceeded { size: n, cap });
    }
    if let Some((function, x, y)) = r.first_violation(l)? {
        return Err(LatticeError::NotModular {
            family: r.name.clone(),
            function,
            x,
            y,
        });
    }
    let denominator = f
        .all()
        .iter()
        .flat_map(|w| w.values())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled = |w: &WeightFunction, set: &[usize]| {
        let mut p = MultiPoly::zero(r.len());
        for &x in set {
            let c = w.get(x) * BigRational::from_integer(denominator.clone());
            p.add_term(Monomial::new(r.exponent(x)), c.to_integer());
        }
        p
    };
    let (xs, ys) = (dedup(xs, n)?, dedup(ys, n)?);
    let joins = l.join_set(&xs, &ys, true)?;
    let meets = l.join_set(&xs, &ys, false)?;
    let lhs = &scaled(&f.gamma, &joins) * &scaled(&f.delta, &meets);
    let rhs = &scaled(&f.alpha, &xs) * &scaled(&f.beta, &ys);
    let dominance = lhs.geq_coeffwise(&rhs).expect("same arity");
    Ok(AdMultiReport {
        lhs,
        rhs,
        denominator,
        dominance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::count_p_partitions;
    use crate::instances::{all_posets, IdealQuad};
    use crate::poly::Vars;
    use crate::poset::ElemSet;
    use num_bigint::BigUint;

    fn all(l: &LatticeInstance) -> Vec<usize> {
        (0..l.len()).collect()
    }

    #[test]
    fn small_builds() {
        let l = ppartition_lattice(&Poset::chain(1), 1).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!((l.bottom(), l.top()), (Some(0), Some(1)));
        let d = ddp_lattice(&Poset::chain(2), 2, 1).unwrap();
        assert_eq!(d.state(0), &[-1, -1]);
        assert_eq!(d.len(), 10);
        assert!(shepp_lattice(&Poset::chain(2), 1, 2).is_err());
    }

    #[test]
    fn sizes_are_order_polynomial_values() {
        for n in 0..=4 {
            for p in all_posets(n) {
                for t in 0..=2 {
                    let l = ppartition_lattice(&p, t).unwrap();
                    assert_eq!(BigUint::from(l.len()), count_p_partitions(&p, t, None).unwrap());
                }
            }
        }
    }

    #[test]
    fn verification_passes_on_function_lattices() {
        let l = ppartition_lattice(&Poset::chain(2), 2).unwrap();
        assert_eq!(l.len(), 6);
        let fams = [ModularFamily::element_values(&l), ModularFamily::value_counts(&l)];
        assert!(verify_lattice(&l, &fams, DEFAULT_VERIFY_CAP).unwrap().passed());
        let s = shepp_lattice(&Poset::antichain(2), 1, 0).unwrap();
        assert_eq!(s.len(), 4);
        assert!(verify_lattice(&s, &[], DEFAULT_VERIFY_CAP).unwrap().passed());
        let d = ddp_lattice(&Poset::chain(2), 2, 1).unwrap();
        let fams = [ModularFamily::element_values(&d), ModularFamily::value_counts(&d)];
        assert!(verify_lattice(&d, &fams, DEFAULT_VERIFY_CAP).unwrap().passed());
    }

    #[test]
    fn shepp_lattices_are_distributive() {
        for n in 1..=4 {
            for p in all_posets(n) {
                for t in 0..=2 {
                    for y in 0..n {
                        let s = shepp_lattice(&p, t, y).unwrap();
                        let rep = verify_lattice(&s, &[], DEFAULT_VERIFY_CAP).unwrap();
                        assert!(rep.passed(), "{:?}", rep.violation);
                    }
                }
            }
        }
    }

    #[test]
    fn diamond_is_not_distributive() {
        let m3 = diamond();
        let rep = verify_lattice(&m3, &[], DEFAULT_VERIFY_CAP).unwrap();
        let Some(LatticeViolation::Distributivity { x, y, z }) = rep.violation else {
            panic!("expected a distributivity failure, got {:?}", rep.violation);
        };
        assert_ne!(
            m3.meet(x, m3.join(y, z).unwrap()),
            m3.join(m3.meet(x, y).unwrap(), m3.meet(x, z).unwrap())
        );
        assert_eq!((x, y, z), (1, 2, 3));
        assert!(matches!(complement(&m3, 1), Err(LatticeError::NotUnique { .. })));
    }

    #[test]
    fn broken_tables_are_reported() {
        // Two elements whose join is not commutative.
        let join = vec![vec![0, 1], vec![0, 1]];
        let meet = vec![vec![0, 0], vec![0, 1]];
        let l = LatticeInstance::from_tables(join, meet).unwrap();
        let rep = verify_lattice(&l, &[], 10).unwrap();
        assert!(!rep.passed());
        let l = ppartition_lattice(&Poset::antichain(4), 3).unwrap();
        assert!(matches!(
            verify_lattice(&l, &[], 100),
            Err(LatticeError::CapExceeded { .. })
        ));
    }

    #[test]
    fn non_modular_family_is_caught() {
        let l = boolean_lattice(2);
        let fam = ModularFamily {
            name: "squares".into(),
            values: vec![l.states().iter().map(|s| (s[0] + s[1]).pow(2) as u32).collect()],
        };
        let rep = verify_lattice(&l, &[fam], 10).unwrap();
        assert!(matches!(rep.violation, Some(LatticeViolation::Modularity { .. })));
    }

    #[test]
    fn complements() {
        let b2 = boolean_lattice(2);
        verify_lattice(&b2, &[], 10).unwrap();
        let one = b2.index_of(&[1, 0]).unwrap();
        let two = b2.index_of(&[0, 1]).unwrap();
        assert_eq!(complement(&b2, one).unwrap(), Some(two));
        assert_eq!(complement(&b2, 0).unwrap(), Some(3));
        assert_eq!(complement(&b2, 3).unwrap(), Some(0));
        let c3 = chain_lattice(3);
        assert_eq!(complement(&c3, 1).unwrap(), None);
    }

    #[test]
    fn complements_are_unique_in_distributive_lattices() {
        for n in 1..=3 {
            for p in all_posets(n) {
                let l = ppartition_lattice(&p, 2).unwrap();
                assert!(verify_lattice(&l, &[], DEFAULT_VERIFY_CAP).unwrap().passed());
                for x in 0..l.len() {
                    complement(&l, x).unwrap();
                }
            }
        }
    }

    #[test]
    fn ad_all_ones() {
        let l = ppartition_lattice(&Poset::antichain(2), 2).unwrap();
        let f = FourFunctions {
            alpha: WeightFunction::ones(l.len()),
            beta: WeightFunction::ones(l.len()),
            gamma: WeightFunction::ones(l.len()),
            delta: WeightFunction::ones(l.len()),
        };
        let rep = ad_check(&l, &f, &all(&l), &all(&l), AdMode::Both, PairBudget::default()).unwrap();
        assert!(rep.hypothesis.unwrap().holds());
        let c = rep.conclusion.unwrap();
        assert!(c.equality());
        assert_eq!(c.lhs, BigRational::from_integer(81.into()));
    }

    #[test]
    fn doubled_top_is_a_violation() {
        let l = boolean_lattice(2);
        let mut f = FourFunctions {
            alpha: WeightFunction::ones(4),
            beta: WeightFunction::ones(4),
            gamma: WeightFunction::ones(4),
            delta: WeightFunction::ones(4),
        };
        let top = l.top().unwrap();
        f.alpha.set(top, BigRational::from_integer(2.into())).unwrap();
        let rep = ad_check(&l, &f, &[], &[], AdMode::Hypothesis, PairBudget::default()).unwrap();
        // Every pair (top, y) fails; the least one pairs top with bottom.
        assert_eq!(rep.hypothesis.unwrap().witness, Some((top, 0)));
        assert!(WeightFunction::new(vec![BigRational::from_integer((-1).into())]).is_err());
    }

    #[test]
    fn sampling_must_be_requested() {
        let l = boolean_lattice(3);
        let f = FourFunctions {
            alpha: WeightFunction::ones(8),
            beta: WeightFunction::ones(8),
            gamma: WeightFunction::ones(8),
            delta: WeightFunction::ones(8),
        };
        let tight = PairBudget { cap: 4, sample: None };
        assert!(matches!(
            ad_check(&l, &f, &[], &[], AdMode::Hypothesis, tight),
            Err(LatticeError::SamplingRequired { .. })
        ));
        let sampled = PairBudget {
            cap: 4,
            sample: Some((50, 3)),
        };
        let h = ad_check(&l, &f, &[], &[], AdMode::Hypothesis, sampled)
            .unwrap()
            .hypothesis
            .unwrap();
        assert!(!h.exhaustive && h.holds());
    }

    #[test]
    fn fishburn_indicators_satisfy_hypothesis() {
        for n in 1..=3 {
            for p in all_posets(n) {
                let ideals = p.lower_ideals();
                let uppers = p.upper_ideals();
                let l = ppartition_lattice(&p, 2).unwrap();
                for &a in &ideals {
                    for &b in &ideals {
                        for &c in uppers.iter().filter(|c| c.is_disjoint(a)) {
                            let quad = IdealQuad {
                                a,
                                b,
                                c,
                                d: ElemSet::EMPTY,
                            };
                            let f = fishburn_indicators(&l, &quad, 2);
                            let rep =
                                ad_check(&l, &f, &all(&l), &all(&l), AdMode::Both, PairBudget::default()).unwrap();
                            assert!(rep.hypothesis.unwrap().holds());
                            assert!(rep.conclusion.unwrap().holds());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multi_fishburn_on_two_chain() {
        let p = Poset::chain(2);
        let l = ppartition_lattice(&p, 1).unwrap();
        assert_eq!(l.len(), 3);
        let quad = IdealQuad {
            a: ElemSet::from_iter([0]),
            b: ElemSet::EMPTY,
            c: ElemSet::EMPTY,
            d: ElemSet::from_iter([1]),
        };
        let f = fishburn_indicators(&l, &quad, 1);
        let r = ModularFamily::element_values(&l);
        let rep = ad_multi_check(&l, &f, &r, &all(&l), &all(&l), DEFAULT_PAIR_CAP).unwrap();
        // α: T(x1)=0 → {00, 01}; β: T(x2)=1 → {01, 11}; γ: T(x2)=1; δ: T(x1)=0.
        let alpha = MultiPoly::parse("1 + q2", Vars::Q, 2).unwrap();
        let beta = MultiPoly::parse("q2 + q1 q2", Vars::Q, 2).unwrap();
        assert_eq!(rep.rhs, &alpha * &beta);
        assert_eq!(rep.lhs, &beta * &alpha);
        assert!(rep.dominance.holds);
        let plain = ad_check(&l, &f, &all(&l), &all(&l), AdMode::Conclusion, PairBudget::default()).unwrap();
        let c = plain.conclusion.unwrap();
        assert_eq!(BigRational::from_integer(rep.lhs.sum_coeffs()), c.lhs);
        assert_eq!(BigRational::from_integer(rep.rhs.sum_coeffs()), c.rhs);
    }

    #[test]
    fn multi_ddp_on_two_chain() {
        let p = Poset::chain(2);
        let l = ddp_lattice(&p, 2, 1).unwrap();
        let f = ddp_indicators(&l, 0, 2, 0, 1, 1);
        assert!(ad_check(&l, &f, &[], &[], AdMode::Hypothesis, PairBudget::default())
            .unwrap()
            .hypothesis
            .unwrap()
            .holds());
        let r = ModularFamily::element_values(&l);
        let rep = ad_multi_check(&l, &f, &r, &all(&l), &all(&l), DEFAULT_PAIR_CAP).unwrap();
        assert!(rep.dominance.holds);
        // Slices of C_2 at t=2 by A(x1): 3, 2, 1. α·β ↔ Ω(0)·Ω(2), γ·δ ↔ Ω(1)·Ω(1).
        assert_eq!(rep.rhs.sum_coeffs(), BigInt::from(3));
        assert_eq!(rep.lhs.sum_coeffs(), BigInt::from(4));
    }

    #[test]
    fn multi_rejects_non_modular() {
        let l = boolean_lattice(2);
        let f = FourFunctions {
            alpha: WeightFunction::ones(4),
            beta: WeightFunction::ones(4),
            gamma: WeightFunction::ones(4),
            delta: WeightFunction::ones(4),
        };
        let bad = ModularFamily {
            name: "top-only".into(),
            values: vec![vec![0, 0, 0, 1]],
        };
        let err = ad_multi_check(&l, &f, &bad, &[0], &[0], 10).unwrap_err();
        assert!(matches!(err, LatticeError::NotModular { x: 1, y: 2, .. }), "{err}");
    }

    #[test]
    fn rational_weights_are_cleared() {
        let l = chain_lattice(2);
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let f = FourFunctions {
            alpha: WeightFunction::new(vec![half.clone(), half.clone()]).unwrap(),
            beta: WeightFunction::new(vec![third.clone(), third.clone()]).unwrap(),
            gamma: WeightFunction::ones(2),
            delta: WeightFunction::ones(2),
        };
        let r = ModularFamily::element_values(&l);
        let rep = ad_multi_check(&l, &f, &r, &[0, 1], &[0, 1], 10).unwrap();
        assert_eq!(rep.denominator, BigInt::from(6));
        assert!(rep.dominance.holds);
        assert_eq!(rep.rhs, MultiPoly::parse("6 + 12 * q1 + 6 * q1^2", Vars::Q, 1).unwrap());
    }
}

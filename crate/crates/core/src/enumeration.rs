//! Linear extensions and P-partitions, listed and counted.
//!
//! The listing routines are the brute-force ground truth for everything
//! else; the counting routines have faster paths (dynamic programming over
//! the lattice of lower ideals) that are tested against the listings.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poset::{ElemSet, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("element {index} out of range for a poset on {n} elements")]
    BadElement { index: usize, n: usize },
    #[error("slice constraint references element {0} more than once")]
    RepeatedElement(usize),
    #[error("{0:?} is not a linear extension")]
    NotAnExtension(Vec<usize>),
}

/// Ideal-lattice size above which extension counting switches from dynamic
/// programming to plain backtracking.
pub const DEFAULT_IDEAL_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountStrategy {
    /// Sum over the lower-ideal lattice, giving up past `cap` ideals.
    IdealDp {
        cap: usize,
    },
    Backtrack,
}

/// Every linear extension, as a sequence of element indices, in
/// lexicographic order.
pub fn linear_extensions(p: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(p.len());
    extend_lex(p, ElemSet::EMPTY, &mut word, &mut out);
    out
}

fn extend_lex(p: &Poset, placed: ElemSet, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if word.len() == p.len() {
        out.push(word.clone());
        return;
    }
    for x in (p.ground() - placed).iter() {
        if p.below(x).is_subset(placed) {
            word.push(x);
            let mut next = placed;
            next.insert(x);
            extend_lex(p, next, word, out);
            word.pop();
        }
    }
}

/// `e(P)`: the ideal-lattice count, falling back to backtracking when the
/// lattice exceeds [`DEFAULT_IDEAL_CAP`].
pub fn count_linear_extensions(p: &Poset) -> BigUint {
    count_linear_extensions_with(p, CountStrategy::IdealDp { cap: DEFAULT_IDEAL_CAP })
}

pub fn count_linear_extensions_with(p: &Poset, strategy: CountStrategy) -> BigUint {
    match strategy {
        CountStrategy::IdealDp { cap } => ideal_dp_count(p, cap).unwrap_or_else(|| backtrack_count(p, ElemSet::EMPTY)),
        CountStrategy::Backtrack => backtrack_count(p, ElemSet::EMPTY),
    }
}

/// Number of saturated chains from the empty ideal to the full one, layer by
/// layer. `None` once more than `cap` ideals have been seen.
fn ideal_dp_count(p: &Poset, cap: usize) -> Option<BigUint> {
    let mut layer: HashMap<ElemSet, BigUint> = HashMap::from([(ElemSet::EMPTY, BigUint::one())]);
    let mut seen = 1usize;
    for _ in 0..p.len() {
        let mut next: HashMap<ElemSet, BigUint> = HashMap::new();
        for (ideal, ways) in &layer {
            for x in (p.ground() - *ideal).iter() {
                if p.below(x).is_subset(*ideal) {
                    let mut grown = *ideal;
                    grown.insert(x);
                    *next.entry(grown).or_default() += ways;
                }
            }
        }
        seen += next.len();
        if seen > cap {
            return None;
        }
        layer = next;
    }
    Some(layer.remove(&p.ground()).unwrap_or_else(BigUint::one))
}

fn backtrack_count(p: &Poset, placed: ElemSet) -> BigUint {
    if placed == p.ground() {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    for x in (p.ground() - placed).iter() {
        if p.below(x).is_subset(placed) {
            let mut next = placed;
            next.insert(x);
            total += backtrack_count(p, next);
        }
    }
    total
}

pub fn is_linear_extension(p: &Poset, word: &[usize]) -> bool {
    if word.len() != p.len() {
        return false;
    }
    let mut placed = ElemSet::EMPTY;
    for &x in word {
        if x >= p.len() || placed.contains(x) || !p.below(x).is_subset(placed) {
            return false;
        }
        placed.insert(x);
    }
    true
}

/// Where a descent `w_i > w_{i+1}` of an extension word contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MajConvention {
    /// Contributes its position `i`.
    Major,
    /// Contributes `n - i`.
    Comajor,
}

/// Major index of a linear extension, read as the word of natural labels.
pub fn major_index(p: &Poset, word: &[usize], convention: MajConvention) -> Result<u32, EnumError> {
    if !is_linear_extension(p, word) {
        return Err(EnumError::NotAnExtension(word.to_vec()));
    }
    let n = word.len() as u32;
    Ok(word
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| match convention {
            MajConvention::Major => i as u32 + 1,
            MajConvention::Comajor => n - (i as u32 + 1),
        })
        .sum())
}

/// An order-preserving map into `{0, …, bound}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PPartition {
    pub values: Vec<u32>,
    pub bound: u32,
}

impl PPartition {
    /// `|A|`, the sum of entries.
    pub fn size(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }
}

/// Gaps required by a cross-product slice: `A(y) - A(x) = k` and
/// `A(z) - A(y) = l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gaps {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub k: u32,
    pub l: u32,
}

/// Restricts P-partitions to a slice: some entries fixed, and optionally a
/// pair of prescribed gaps.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SliceConstraint {
    pub fixed: Vec<(usize, u32)>,
    pub gaps: Option<Gaps>,
}

impl SliceConstraint {
    pub fn fix(element: usize, value: u32) -> Self {
        SliceConstraint {
            fixed: vec![(element, value)],
            gaps: None,
        }
    }

    pub fn gaps(x: usize, y: usize, z: usize, k: u32, l: u32) -> Self {
        SliceConstraint {
            fixed: Vec::new(),
            gaps: Some(Gaps { x, y, z, k, l }),
        }
    }

    pub fn validate(&self, n: usize) -> Result<(), EnumError> {
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(EnumError::BadElement { index: i, n })
            }
        };
        let mut seen = ElemSet::EMPTY;
        for &(e, _) in &self.fixed {
            check(e)?;
            if seen.contains(e) {
                return Err(EnumError::RepeatedElement(e));
            }
            seen.insert(e);
        }
        if let Some(g) = self.gaps {
            let mut local = ElemSet::EMPTY;
            for e in [g.x, g.y, g.z] {
                check(e)?;
                if local.contains(e) {
                    return Err(EnumError::RepeatedElement(e));
                }
                local.insert(e);
            }
        }
        Ok(())
    }

    /// Whether a complete assignment satisfies the constraint.
    pub fn admits(&self, values: &[u32]) -> bool {
        self.fixed.iter().all(|&(e, v)| values[e] == v)
            && self.gaps.is_none_or(|g| {
                values[g.y] as i64 - values[g.x] as i64 == g.k as i64
                    && values[g.z] as i64 - values[g.y] as i64 == g.l as i64
            })
    }
}

/// Range and strictness data for the P-partition walker.
#[derive(Debug, Clone)]
pub(crate) struct Walk<'a> {
    pub poset: &'a Poset,
    pub lo: u32,
    pub hi: u32,
    /// `strict[j]`: elements `i ≺ j` that must satisfy `A(i) < A(j)`.
    pub strict: Option<&'a [ElemSet]>,
    pub constraint: Option<&'a SliceConstraint>,
}

impl Walk<'_> {
    pub fn new(poset: &Poset, hi: u32) -> Walk<'_> {
        Walk {
            poset,
            lo: 0,
            hi,
            strict: None,
            constraint: None,
        }
    }

    /// Calls `f` on every admissible assignment, values assigned in natural
    /// order, smallest first.
    pub fn for_each(&self, f: &mut dyn FnMut(&[u32])) {
        let n = self.poset.len();
        let mut fixed = vec![None; n];
        // Links (a, b, d): A(b) = A(a) + d.
        let mut links: Vec<(usize, usize, u32)> = Vec::new();
        if let Some(c) = self.constraint {
            for &(e, v) in &c.fixed {
                fixed[e] = Some(v);
            }
            if let Some(g) = c.gaps {
                links.push((g.x, g.y, g.k));
                links.push((g.y, g.z, g.l));
            }
        }
        let mut values = vec![0u32; n];
        self.descend(0, &fixed, &links, &mut values, f);
    }

    fn descend(
        &self,
        i: usize,
        fixed: &[Option<u32>],
        links: &[(usize, usize, u32)],
        values: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32]),
    ) {
        if i == values.len() {
            f(values);
            return;
        }
        let mut lo = self.lo;
        for j in self.poset.below(i).iter() {
            let strict = self.strict.is_some_and(|s| s[i].contains(j));
            lo = lo.max(values[j] + u32::from(strict));
        }
        let mut lo = lo as i64;
        let mut hi = self.hi as i64;
        let mut pin = |v: i64| {
            lo = lo.max(v);
            hi = hi.min(v);
        };
        if let Some(v) = fixed[i] {
            pin(v as i64);
        }
        for &(a, b, d) in links {
            if b == i && a < i {
                pin(values[a] as i64 + d as i64);
            } else if a == i && b < i {
                pin(values[b] as i64 - d as i64);
            }
        }
        for v in lo..=hi {
            values[i] = v as u32;
            self.descend(i + 1, fixed, links, values, f);
        }
    }
}

fn validated<'a>(p: &'a Poset, t: u32, c: Option<&'a SliceConstraint>) -> Result<Walk<'a>, EnumError> {
    if let Some(c) = c {
        c.validate(p.len())?;
    }
    let mut w = Walk::new(p, t);
    w.constraint = c;
    Ok(w)
}

/// Visits every P-partition with values at most `t` satisfying `c`.
pub fn for_each_p_partition(
    p: &Poset,
    t: u32,
    c: Option<&SliceConstraint>,
    mut f: impl FnMut(&[u32]),
) -> Result<(), EnumError> {
    validated(p, t, c)?.for_each(&mut f);
    Ok(())
}

pub fn p_partitions(p: &Poset, t: u32, c: Option<&SliceConstraint>) -> Result<Vec<PPartition>, EnumError> {
    let mut out = Vec::new();
    for_each_p_partition(p, t, c, |v| {
        out.push(PPartition {
            values: v.to_vec(),
            bound: t,
        })
    })?;
    Ok(out)
}

/// `Ω(P,t)`, optionally restricted to a slice. Unconstrained counts use the
/// ideal-multichain recurrence; constrained ones walk the slice.
pub fn count_p_partitions(p: &Poset, t: u32, c: Option<&SliceConstraint>) -> Result<BigUint, EnumError> {
    match c {
        None => Ok(order_polynomial_value(p, t)),
        Some(_) => {
            let mut count = 0u64;
            for_each_p_partition(p, t, c, |_| count += 1)?;
            Ok(BigUint::from(count))
        }
    }
}

/// `Ω(P,t)` as the number of multichains `L_0 ⊆ … ⊆ L_{t-1}` of lower
/// ideals, where `L_v = {x : A(x) ≤ v}`.
pub fn order_polynomial_value(p: &Poset, t: u32) -> BigUint {
    let ideals = p.lower_ideals();
    // chains[k]: multichains of the current length ending at ideals[k].
    let mut chains = vec![BigUint::one(); ideals.len()];
    for _ in 1..t {
        let mut next = vec![BigUint::zero(); ideals.len()];
        for (k, top) in ideals.iter().enumerate() {
            for (m, sub) in ideals.iter().enumerate() {
                if sub.is_subset(*top) {
                    next[k] += &chains[m];
                }
            }
        }
        chains = next;
    }
    if t == 0 {
        BigUint::one()
    } else {
        chains.into_iter().sum()
    }
}

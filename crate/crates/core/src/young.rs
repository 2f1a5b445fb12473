//! Integer partitions and skew shapes with the componentwise lattice.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YoungError {
    #[error("parts {0:?} are not weakly decreasing")]
    NotDecreasing(Vec<u32>),
    #[error("inner shape {inner} is not contained in outer shape {outer}")]
    NotContained { outer: Partition, inner: Partition },
    #[error("cannot parse {input:?}: {msg}")]
    Parse { input: String, msg: String },
    #[error("partition {0:?} is too large")]
    TooLarge(Vec<u32>),
}

/// Bound on `n(λ)` (hence on the weight), small enough that the join of two
/// partitions stays within `u32`.
pub const MAX_N_STAT: u64 = u32::MAX as u64 / 2;

/// A weakly decreasing sequence of positive parts. Trailing zeros are
/// dropped on construction, so equality is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, YoungError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(YoungError::NotDecreasing(parts));
        }
        let n_stat: u64 = parts.iter().enumerate().map(|(i, &p)| (i as u64 + 1) * p as u64).sum();
        if n_stat > MAX_N_STAT {
            return Err(YoungError::TooLarge(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_i` for 0-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts, `ℓ(λ)`.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition(
            (1..=width)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Componentwise `self ≤ other`, i.e. the diagram of `self` sits inside
    /// the diagram of `other`.
    pub fn is_subshape_of(&self, other: &Partition) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `n(λ) = Σ_{(i,j)∈λ} i` with rows numbered from 1.
    pub fn n_stat(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| (i as u32 + 1) * p).sum()
    }

    /// Componentwise maximum (union of diagrams).
    pub fn join(&self, other: &Partition) -> Partition {
        self.zip_with(other, u32::max)
    }

    /// Componentwise minimum (intersection of diagrams).
    pub fn meet(&self, other: &Partition) -> Partition {
        self.zip_with(other, u32::min)
    }

    fn zip_with(&self, other: &Partition, f: impl Fn(u32, u32) -> u32) -> Partition {
        let len = self.length().max(other.length());
        let parts = (0..len).map(|i| f(self.part(i), other.part(i))).collect();
        Partition::new(parts).expect("componentwise max/min of partitions is a partition")
    }

    /// Hook length of the 1-based cell `(i, j)`.
    pub fn hook(&self, i: usize, j: usize) -> u32 {
        let conj = self.conjugate();
        self.part(i - 1) - j as u32 + conj.part(j - 1) - i as u32 + 1
    }

    /// `|SYT(λ)| = n! / Π hooks`.
    pub fn hook_length_count(&self) -> BigUint {
        let conj = self.conjugate();
        let mut num = BigUint::one();
        for k in 1..=self.weight() {
            num *= k;
        }
        let mut den = BigUint::one();
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                den *= row - j + conj.part(j as usize) - i as u32 - 1;
            }
        }
        num / den
    }

    /// All partitions whose diagram fits in a `rows × cols` box, in
    /// increasing lexicographic order of parts.
    pub fn in_box(rows: usize, cols: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        box_rec(rows, cols, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All partitions of `n`.
    pub fn of_weight(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        weight_rec(n, n, &mut cur, &mut out);
        out.sort();
        out
    }
}

fn box_rec(rows: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition(cur.clone()));
    if cur.len() == rows {
        return;
    }
    for p in 1..=max_part {
        cur.push(p);
        box_rec(rows, p, cur, out);
        cur.pop();
    }
}

fn weight_rec(rest: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in 1..=max_part.min(rest) {
        cur.push(p);
        weight_rec(rest - p, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = YoungError;

    /// `"3,1"`; the empty partition is `""`, `"0"` or `"∅"`.
    fn from_str(s: &str) -> Result<Self, YoungError> {
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim().parse::<u32>().map_err(|e| YoungError::Parse {
                    input: s.to_string(),
                    msg: format!("part {p:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// A skew shape `λ/μ` with `μ ⊆ λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, YoungError> {
        if !inner.is_subshape_of(&outer) {
            return Err(YoungError::NotContained { outer, inner });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> u32 {
        self.outer.weight() - self.inner.weight()
    }

    /// Cells `(i, j)`, 1-based, row-major.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.outer.parts().iter().enumerate() {
            for j in self.inner.part(i) + 1..=row {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    /// `(μ∨ν)/(α∨β)`; containment is preserved by componentwise max.
    pub fn join(&self, other: &SkewShape) -> SkewShape {
        SkewShape {
            outer: self.outer.join(&other.outer),
            inner: self.inner.join(&other.inner),
        }
    }

    /// `(μ∧ν)/(α∧β)`.
    pub fn meet(&self, other: &SkewShape) -> SkewShape {
        SkewShape {
            outer: self.outer.meet(&other.outer),
            inner: self.inner.meet(&other.inner),
        }
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl FromStr for SkewShape {
    type Err = YoungError;

    /// `"3,1/1"` or a straight shape `"3,1"`.
    fn from_str(s: &str) -> Result<Self, YoungError> {
        match s.split_once('/') {
            Some((outer, inner)) => SkewShape::new(outer.parse()?, inner.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

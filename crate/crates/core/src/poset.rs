//! Finite naturally labeled posets.
//!
//! A [`Poset`] stores its strict order transitively closed, one bitmask per
//! element, so comparisons are single bit tests. Every constructor relabels
//! elements so that `i ≺ j` implies `i < j`.
//!
//! Each element also carries an *identity*: the index it had in the poset it
//! was cut out of. Induced subposets keep the identities of their parent,
//! which keeps per-element variables `q_i` aligned across subposets.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use thiserror::Error;

use crate::young::SkewShape;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover relation has a cycle through elements {0:?}")]
    Cycle(Vec<usize>),
    #[error("element index {index} out of range for a poset on {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("posets are limited to {MAX_ELEMENTS} elements, got {0}")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad poset spec {spec:?}: {msg}")]
    Spec { spec: String, msg: String },
}

/// A subset of the ground set `{0, …, n-1}` of a poset, as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ElemSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElemSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest member plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> ElemIter {
        ElemIter(self.0)
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl BitOr for ElemSet {
    type Output = ElemSet;
    fn bitor(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElemSet {
    type Output = ElemSet;
    fn bitand(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & rhs.0)
    }
}

impl Sub for ElemSet {
    type Output = ElemSet;
    fn sub(self, rhs: ElemSet) -> ElemSet {
        ElemSet(self.0 & !rhs.0)
    }
}

impl Not for ElemSet {
    type Output = ElemSet;
    fn not(self) -> ElemSet {
        ElemSet(!self.0)
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct ElemIter(u64);

impl Iterator for ElemIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElemIter {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealKind {
    Lower,
    Upper,
}

/// A poset together with the relabeling applied while building it:
/// `perm[old] = new`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub poset: Poset,
    pub perm: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    ids: Vec<usize>,
    universe: usize,
    below: Vec<ElemSet>,
    above: Vec<ElemSet>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<(usize, usize)> = self.relation_pairs().collect();
        f.debug_struct("Poset")
            .field("ids", &self.ids)
            .field("rel", &rel)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from cover (or any generating) pairs, 0-based.
    ///
    /// Elements are renumbered by a topological sort that always takes the
    /// smallest available original index, so an already natural labeling is
    /// left untouched.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Relabeled, PosetError> {
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in covers {
            for i in [a, b] {
                if i >= n {
                    return Err(PosetError::IndexOutOfRange { index: i, n });
                }
            }
            if a == b {
                return Err(PosetError::Cycle(vec![a]));
            }
            if !succ[a].contains(&b) {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }

        let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut perm = vec![usize::MAX; n];
        let mut next = 0;
        while let Some(Reverse(v)) = heap.pop() {
            perm[v] = next;
            next += 1;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if next < n {
            return Err(PosetError::Cycle(find_cycle(&succ, &perm)));
        }

        let mut cover_new = vec![ElemSet::EMPTY; n];
        for &(a, b) in covers {
            cover_new[perm[b]].insert(perm[a]);
        }
        let poset = Poset::from_lower_covers(cover_new);
        Ok(Relabeled { poset, perm })
    }

    /// `lower[j]` lists elements below `j`; every member must be `< j`.
    fn from_lower_covers(lower: Vec<ElemSet>) -> Poset {
        let n = lower.len();
        let mut below = vec![ElemSet::EMPTY; n];
        for j in 0..n {
            let mut acc = ElemSet::EMPTY;
            for i in lower[j].iter() {
                debug_assert!(i < j);
                acc = acc | below[i] | ElemSet::singleton(i);
            }
            below[j] = acc;
        }
        Poset::from_closed(below, (0..n).collect(), n)
    }

    fn from_closed(below: Vec<ElemSet>, ids: Vec<usize>, universe: usize) -> Poset {
        let n = below.len();
        let mut above = vec![ElemSet::EMPTY; n];
        for (j, b) in below.iter().enumerate() {
            for i in b.iter() {
                above[i].insert(j);
            }
        }
        let p = Poset {
            ids,
            universe,
            below,
            above,
        };
        debug_assert!(p.is_naturally_labeled());
        p
    }

    pub fn empty() -> Poset {
        Poset::antichain(0)
    }

    pub fn chain(n: usize) -> Poset {
        assert!(n <= MAX_ELEMENTS);
        let below = (0..n).map(ElemSet::full).collect();
        Poset::from_closed(below, (0..n).collect(), n)
    }

    pub fn antichain(n: usize) -> Poset {
        assert!(n <= MAX_ELEMENTS);
        Poset::from_closed(vec![ElemSet::EMPTY; n], (0..n).collect(), n)
    }

    /// The dual poset, relabeled back to a natural labeling.
    pub fn dual(&self) -> Relabeled {
        let pairs: Vec<(usize, usize)> = self.relation_pairs().map(|(a, b)| (b, a)).collect();
        Poset::from_covers(self.len(), &pairs).expect("dual of a poset is acyclic")
    }

    /// `self ⊕ other`: every element of `self` lies below every element of `other`.
    pub fn linear_sum(&self, other: &Poset) -> Poset {
        self.disjoint_union(other, true)
    }

    /// `self + other`: disjoint union with no relations across.
    pub fn parallel_sum(&self, other: &Poset) -> Poset {
        self.disjoint_union(other, false)
    }

    fn disjoint_union(&self, other: &Poset, stacked: bool) -> Poset {
        let (m, n) = (self.len(), other.len());
        assert!(m + n <= MAX_ELEMENTS, "sum exceeds {MAX_ELEMENTS} elements");
        let mut below = self.below.clone();
        let lower_block = if stacked { ElemSet::full(m) } else { ElemSet::EMPTY };
        for b in &other.below {
            below.push(ElemSet::from_bits(b.bits() << m) | lower_block);
        }
        Poset::from_closed(below, (0..m + n).collect(), m + n)
    }

    /// One element per cell of `shape`, in row-major order, with
    /// `(i,j) ≼ (i',j')` iff `i ≤ i'` and `j ≤ j'`.
    pub fn from_skew_shape(shape: &SkewShape) -> Poset {
        let cells = shape.cells();
        assert!(cells.len() <= MAX_ELEMENTS, "skew shape too large");
        let below = cells
            .iter()
            .enumerate()
            .map(|(k, &(r, c))| {
                cells[..k]
                    .iter()
                    .enumerate()
                    .filter(|(_, &(r2, c2))| r2 <= r && c2 <= c)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let n = cells.len();
        Poset::from_closed(below, (0..n).collect(), n)
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// Identity (parent index) of element `i`.
    pub fn id(&self, i: usize) -> usize {
        self.ids[i]
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// Number of identities in the root poset; the arity of per-element
    /// generating functions.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn ground(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// `i ≺ j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.below[j].contains(i)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    /// Strict down-set of `j`.
    pub fn below(&self, j: usize) -> ElemSet {
        self.below[j]
    }

    /// Strict up-set of `i`.
    pub fn above(&self, i: usize) -> ElemSet {
        self.above[i]
    }

    /// All pairs `(i, j)` with `i ≺ j`.
    pub fn relation_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |j| self.below[j].iter().map(move |i| (i, j)))
    }

    pub fn relation_count(&self) -> usize {
        self.below.iter().map(|b| b.len()).sum()
    }

    /// Cover pairs (transitive reduction), sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in self.below[j].iter() {
                if (self.above[i] & self.below[j]).is_empty() {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_naturally_labeled(&self) -> bool {
        self.relation_pairs().all(|(i, j)| i < j)
    }

    fn check_range(&self, s: ElemSet) -> Result<(), PosetError> {
        if s.is_subset(self.ground()) {
            Ok(())
        } else {
            Err(PosetError::IndexOutOfRange {
                index: s.span() - 1,
                n: self.len(),
            })
        }
    }

    pub fn is_ideal(&self, s: ElemSet, kind: IdealKind) -> Result<bool, PosetError> {
        self.check_range(s)?;
        let closure = match kind {
            IdealKind::Lower => &self.below,
            IdealKind::Upper => &self.above,
        };
        Ok(s.iter().all(|x| closure[x].is_subset(s)))
    }

    /// Every lower ideal once, sorted by bitmask.
    pub fn lower_ideals(&self) -> Vec<ElemSet> {
        let mut out = Vec::new();
        self.ideals_from(0, ElemSet::EMPTY, &mut out);
        out.sort_unstable();
        out
    }

    fn ideals_from(&self, i: usize, acc: ElemSet, out: &mut Vec<ElemSet>) {
        if i == self.len() {
            out.push(acc);
            return;
        }
        self.ideals_from(i + 1, acc, out);
        if self.below[i].is_subset(acc) {
            let mut with = acc;
            with.insert(i);
            self.ideals_from(i + 1, with, out);
        }
    }

    /// Every upper ideal once, sorted by bitmask.
    pub fn upper_ideals(&self) -> Vec<ElemSet> {
        let full = self.ground();
        let mut out: Vec<ElemSet> = self.lower_ideals().into_iter().map(|s| full - s).collect();
        out.sort_unstable();
        out
    }

    /// Subposet induced on `s`. Elements keep increasing parent order and
    /// their parent identities.
    pub fn induced(&self, s: ElemSet) -> Result<Poset, PosetError> {
        self.check_range(s)?;
        let members: Vec<usize> = s.iter().collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &m) in members.iter().enumerate() {
            pos[m] = k;
        }
        let below = members
            .iter()
            .map(|&m| (self.below[m] & s).iter().map(|i| pos[i]).collect())
            .collect();
        let ids = members.iter().map(|&m| self.ids[m]).collect();
        Ok(Poset::from_closed(below, ids, self.universe))
    }

    /// Forgets parent identities: ids become `0..n` and the universe `n`.
    pub fn detached(&self) -> Poset {
        Poset::from_closed(self.below.clone(), (0..self.len()).collect(), self.len())
    }

    /// Canonical isomorphism invariant for small posets: the least relation
    /// bitmask over all relabelings. Exhaustive over `n!` orders, so only
    /// meant for `n ≤ 8`.
    pub fn canonical_form(&self) -> (usize, u64) {
        let n = self.len();
        assert!(n <= 8, "canonical form is exhaustive; n = {n} too large");
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        loop {
            let mut code = 0u64;
            for (i, j) in self.relation_pairs() {
                code |= 1u64 << (perm[i] * n + perm[j]);
            }
            best = best.min(code);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        (n, if n == 0 { 0 } else { best })
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.len() == other.len()
            && self.relation_count() == other.relation_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// Text form: `n` on the first line, then one `i j` cover pair per line
    /// (1-based, sorted).
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.len());
        for (i, j) in self.covers() {
            s.push_str(&format!("{} {}\n", i + 1, j + 1));
        }
        s
    }

    /// Parses the text form produced by [`Poset::to_text`]. Blank lines and
    /// lines starting with `#` are ignored; pairs need not be covers.
    pub fn parse_text(text: &str) -> Result<Relabeled, PosetError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first, header) = lines.next().ok_or(PosetError::Parse {
            line: 1,
            msg: "missing element count".into(),
        })?;
        let n: usize = header.parse().map_err(|_| PosetError::Parse {
            line: first,
            msg: format!("bad element count {header:?}"),
        })?;
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n));
        }
        let mut pairs = Vec::new();
        for (line, l) in lines {
            let mut it = l.split_whitespace();
            let mut field = || -> Result<usize, PosetError> {
                let tok = it.next().ok_or(PosetError::Parse {
                    line,
                    msg: "expected two indices".into(),
                })?;
                let v: usize = tok.parse().map_err(|_| PosetError::Parse {
                    line,
                    msg: format!("bad index {tok:?}"),
                })?;
                if v == 0 || v > n {
                    return Err(PosetError::Parse {
                        line,
                        msg: format!("index {v} outside 1..={n}"),
                    });
                }
                Ok(v - 1)
            };
            let a = field()?;
            let b = field()?;
            if it.next().is_some() {
                return Err(PosetError::Parse {
                    line,
                    msg: "trailing tokens".into(),
                });
            }
            pairs.push((a, b));
        }
        Poset::from_covers(n, &pairs)
    }

    /// The built-in constructors `chain:n`, `antichain:n` and `skew:λ/μ`.
    /// Returns `None` when `spec` names none of them.
    pub fn from_builtin(spec: &str) -> Option<Result<Poset, PosetError>> {
        let (kind, arg) = spec.split_once(':')?;
        let err = |msg: String| PosetError::Spec {
            spec: spec.to_string(),
            msg,
        };
        let size = |arg: &str| -> Result<usize, PosetError> {
            let n: usize = arg.trim().parse().map_err(|_| err(format!("bad size {arg:?}")))?;
            if n > MAX_ELEMENTS {
                return Err(PosetError::TooLarge(n));
            }
            Ok(n)
        };
        Some(match kind {
            "chain" => size(arg).map(Poset::chain),
            "antichain" => size(arg).map(Poset::antichain),
            "skew" => arg
                .parse::<SkewShape>()
                .map_err(|e| err(e.to_string()))
                .and_then(|shape| {
                    let n = shape.size() as usize;
                    if n > MAX_ELEMENTS {
                        Err(PosetError::TooLarge(n))
                    } else {
                        Ok(Poset::from_skew_shape(&shape))
                    }
                }),
            _ => return None,
        })
    }

    /// `x{id}` with 1-based identities.
    pub fn element_name(&self, i: usize) -> String {
        format!("x{}", self.ids[i] + 1)
    }

    pub fn set_names(&self, s: ElemSet) -> String {
        let names: Vec<String> = s.iter().map(|i| self.element_name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn find_cycle(succ: &[Vec<usize>], perm: &[usize]) -> Vec<usize> {
    // Vertices the sort never reached each keep an unreached predecessor, so
    // walking backwards through them must revisit a vertex.
    let stuck: Vec<bool> = perm.iter().map(|&p| p == usize::MAX).collect();
    let mut pred = vec![Vec::new(); succ.len()];
    for (v, ws) in succ.iter().enumerate() {
        for &w in ws {
            if stuck[v] && stuck[w] {
                pred[w].push(v);
            }
        }
    }
    let start = stuck.iter().position(|&s| s).expect("called with a stuck vertex");
    let mut seen = vec![usize::MAX; succ.len()];
    let mut path = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = path.len();
        path.push(v);
        v = *pred[v].iter().min().expect("stuck vertex has a stuck predecessor");
    }
    let mut cycle = path[seen[v]..].to_vec();
    cycle.reverse();
    cycle
}

/// Lexicographic next permutation in place; false when `p` was the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

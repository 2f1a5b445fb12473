//! Deterministic instance generators for the verification suites.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::poset::{ElemSet, Poset};
use crate::young::{Partition, SkewShape};

/// Every naturally labeled poset on `n` elements: each transitively closed
/// subset of `{(i,j) : i < j}`. Grows fast; meant for `n ≤ 5`.
pub fn all_labeled_posets(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    assert!(pairs.len() < 32, "n = {n} too large for exhaustive enumeration");
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let p = Poset::from_covers(n, &chosen).expect("pairs i<j are acyclic").poset;
        if p.relation_count() == chosen.len() {
            out.push(p);
        }
    }
    out
}

/// One representative per isomorphism class of posets on `n` elements, in a
/// fixed order.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let mut seen = HashSet::new();
    all_labeled_posets(n)
        .into_iter()
        .filter(|p| seen.insert(p.canonical_form()))
        .collect()
}

/// A random poset on `n` elements: each pair `i < j` becomes a cover
/// candidate with probability `density`, then the relation is closed.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_covers(n, &pairs).expect("pairs i<j are acyclic").poset
}

pub fn random_lower_ideal<R: Rng>(rng: &mut R, p: &Poset) -> ElemSet {
    *p.lower_ideals().choose(rng).expect("every poset has an ideal")
}

/// Lower ideals `A, B` and upper ideals `C, D` with `A∩C = B∩D = ∅`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IdealQuad {
    pub a: ElemSet,
    pub b: ElemSet,
    pub c: ElemSet,
    pub d: ElemSet,
}

impl IdealQuad {
    pub fn lower_only(a: ElemSet, b: ElemSet) -> Self {
        IdealQuad {
            a,
            b,
            c: ElemSet::EMPTY,
            d: ElemSet::EMPTY,
        }
    }
}

/// Uniform lower ideals `A, B`; `C` is the complement of a uniformly chosen
/// lower ideal containing `A` (likewise `D` for `B`), which makes the
/// disjointness hold by construction.
pub fn random_ideal_quad<R: Rng>(rng: &mut R, p: &Poset) -> IdealQuad {
    let ideals = p.lower_ideals();
    let full = p.ground();
    let pick_pair = |rng: &mut R| {
        let low = *ideals.choose(rng).unwrap();
        let covering: Vec<ElemSet> = ideals.iter().copied().filter(|i| low.is_subset(*i)).collect();
        let up = full - *covering.choose(rng).unwrap();
        (low, up)
    };
    let (a, c) = pick_pair(rng);
    let (b, d) = pick_pair(rng);
    IdealQuad { a, b, c, d }
}

/// A random skew shape `μ/α` with `μ` inside a `rows × cols` box.
pub fn random_skew_in_box<R: Rng>(rng: &mut R, rows: usize, cols: u32) -> SkewShape {
    let shapes = Partition::in_box(rows, cols);
    let outer = shapes.choose(rng).unwrap().clone();
    let inners: Vec<&Partition> = shapes.iter().filter(|s| s.is_subshape_of(&outer)).collect();
    let inner = (*inners.choose(rng).unwrap()).clone();
    SkewShape::new(outer, inner).expect("inner chosen inside outer")
}

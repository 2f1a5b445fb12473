//! Brute-force recomputation of every quantity the verifiers compare.
//!
//! Nothing here shares code with the fast paths: extensions are found by
//! filtering all permutations, P-partitions and tableaux by filtering the
//! full box of assignments. Only the order relation `lt` and the polynomial
//! container are reused.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};

use crate::enumeration::{MajConvention, SliceConstraint};
use crate::poly::MultiPoly;
use crate::poset::{ElemSet, Poset};
use crate::young::SkewShape;

/// Calls `f` on every sequence in `{lo..=hi}^len`.
fn each_assignment(len: usize, lo: u32, hi: u32, mut f: impl FnMut(&[u32])) {
    if hi < lo {
        if len == 0 {
            f(&[]);
        }
        return;
    }
    let mut v = vec![lo; len];
    loop {
        f(&v);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            if v[i] < hi {
                v[i] += 1;
                break;
            }
            v[i] = lo;
            i += 1;
        }
    }
}

fn each_permutation(items: &[usize], mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..items.len()).collect();
    let mut word = vec![0; items.len()];
    loop {
        for (w, &k) in word.iter_mut().zip(&perm) {
            *w = items[k];
        }
        f(&word);
        if !crate::poset::next_permutation(&mut perm) {
            return;
        }
    }
}

/// `e(S)`: orderings of `s` in which no later element lies below an
/// earlier one.
pub fn extension_count(p: &Poset, s: ElemSet) -> BigUint {
    let items: Vec<usize> = s.iter().collect();
    let mut count = 0u64;
    each_permutation(&items, |w| {
        let ok = (0..w.len()).all(|i| (i + 1..w.len()).all(|j| !p.lt(w[j], w[i])));
        if ok {
            count += 1;
        }
    });
    BigUint::from(count)
}

/// `Σ q^{maj(L)}` over the linear extensions of `p`.
pub fn maj_generating_function(p: &Poset, convention: MajConvention) -> MultiPoly {
    let items: Vec<usize> = (0..p.len()).collect();
    let n = p.len() as u32;
    let mut out = MultiPoly::zero(1);
    each_permutation(&items, |w| {
        let ok = (0..w.len()).all(|i| (i + 1..w.len()).all(|j| !p.lt(w[j], w[i])));
        if !ok {
            return;
        }
        let maj: u32 = (1..w.len())
            .filter(|&i| w[i - 1] > w[i])
            .map(|i| match convention {
                MajConvention::Major => i as u32,
                MajConvention::Comajor => n - i as u32,
            })
            .sum();
        out = &out + &MultiPoly::monomial(vec![maj], 1);
    });
    out
}

/// The weight attached to each P-partition when summing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// Arity 0: counts.
    Count,
    /// `q^{|A|}`.
    Q,
    /// `Π q_{id(x)}^{A(x)}` over the root's identities.
    MultiQ,
    /// `Π z_v^{m_v(A)}` over `z_0..z_t`.
    Profile,
}

/// Generating function of P-partitions of the subposet on `s`, values in
/// `0..=t`, optionally restricted to a slice (element indices refer to `p`).
pub fn p_partition_gf(p: &Poset, s: ElemSet, t: u32, weight: Weight, c: Option<&SliceConstraint>) -> MultiPoly {
    let items: Vec<usize> = s.iter().collect();
    let relations: Vec<(usize, usize)> = (0..items.len())
        .flat_map(|a| (0..items.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| p.lt(items[a], items[b]))
        .collect();
    let arity = match weight {
        Weight::Count => 0,
        Weight::Q => 1,
        Weight::MultiQ => p.universe(),
        Weight::Profile => t as usize + 1,
    };
    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut full = vec![0u32; p.len()];
    each_assignment(items.len(), 0, t, |v| {
        if relations.iter().any(|&(a, b)| v[a] > v[b]) {
            return;
        }
        if let Some(c) = c {
            for (&i, &x) in items.iter().zip(v) {
                full[i] = x;
            }
            if !c.admits(&full) {
                return;
            }
        }
        let key = match weight {
            Weight::Count => Vec::new(),
            Weight::Q => vec![v.iter().sum()],
            Weight::MultiQ => {
                let mut e = vec![0; arity];
                for (&i, &x) in items.iter().zip(v) {
                    e[p.id(i)] = x;
                }
                e
            }
            Weight::Profile => {
                let mut e = vec![0; arity];
                for &x in v {
                    e[x as usize] += 1;
                }
                e
            }
        };
        *acc.entry(key).or_default() += 1;
    });
    MultiPoly::from_terms(arity, acc.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

/// Skew Schur polynomial in `z_1..z_n` by filtering all fillings of the
/// cells with `1..=n`.
pub fn schur(shape: &SkewShape, n: u32) -> MultiPoly {
    let cells = shape.cells();
    let pos: HashMap<(u32, u32), usize> = cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
    each_assignment(cells.len(), 1, n, |v| {
        for (k, &(r, c)) in cells.iter().enumerate() {
            if let Some(&left) = pos.get(&(r, c.wrapping_sub(1))) {
                if v[left] > v[k] {
                    return;
                }
            }
            if let Some(&up) = pos.get(&(r.wrapping_sub(1), c)) {
                if v[up] >= v[k] {
                    return;
                }
            }
        }
        let mut e = vec![0; n as usize];
        for &x in v {
            e[x as usize - 1] += 1;
        }
        *acc.entry(e).or_default() += 1;
    });
    MultiPoly::from_terms(n as usize, acc.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

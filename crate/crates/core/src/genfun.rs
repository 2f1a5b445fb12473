//! Generating functions of P-partitions as [`MultiPoly`] values.
//!
//! Variable conventions:
//! - `Q`: one variable `q`, weight `q^{|A|}`.
//! - `MultiQ`: one variable per element *identity* of the root poset, so
//!   generating functions of different subposets multiply over a shared
//!   variable set.
//! - profile: variables `z_0..z_N`, weight `Π z_v^{m_v(A)}` where `m_v(A)`
//!   counts entries equal to `v`.
//! - Schur: variables `z_1..z_N` stored at indices `0..N`.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::enumeration::{EnumError, SliceConstraint, Walk};
use crate::poly::MultiPoly;
use crate::poset::{ElemSet, Poset};
use crate::young::{Partition, SkewShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Plain,
    Q,
    MultiQ,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Plain, Flavor::Q, Flavor::MultiQ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Plain => "plain",
            Flavor::Q => "q",
            Flavor::MultiQ => "multi-q",
        }
    }
}

fn collect(arity: usize, walk: &Walk<'_>, key: impl Fn(&[u32]) -> Vec<u32>) -> MultiPoly {
    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
    walk.for_each(&mut |v| *acc.entry(key(v)).or_insert(0) += 1);
    MultiPoly::from_terms(arity, acc.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

/// `Ω(P,t)`, `Ω_q(P,t)` or `Ω_𝐪(P,t)`, restricted to a slice when `c` is
/// given. The plain flavor is a constant of arity 0.
pub fn order_poly(p: &Poset, t: u32, flavor: Flavor, c: Option<&SliceConstraint>) -> Result<MultiPoly, EnumError> {
    if let Some(c) = c {
        c.validate(p.len())?;
    }
    let mut walk = Walk::new(p, t);
    walk.constraint = c;
    Ok(match flavor {
        Flavor::Plain => collect(0, &walk, |_| Vec::new()),
        Flavor::Q => collect(1, &walk, |v| vec![v.iter().sum()]),
        Flavor::MultiQ => {
            let arity = p.universe();
            collect(arity, &walk, |v| {
                let mut e = vec![0; arity];
                for (i, &x) in v.iter().enumerate() {
                    e[p.id(i)] = x;
                }
                e
            })
        }
    })
}

/// `K_z(P,N)` over `z_0..z_N`.
pub fn profile_gf(p: &Poset, n: u32) -> MultiPoly {
    let walk = Walk::new(p, n);
    collect(n as usize + 1, &walk, |v| value_profile(v, n))
}

/// `m_v(A)` for `v = 0..=n`.
pub fn value_profile(values: &[u32], n: u32) -> Vec<u32> {
    let mut e = vec![0; n as usize + 1];
    for &x in values {
        e[x as usize] += 1;
    }
    e
}

/// For each cell of `shape` (row-major), the cells above it in the same
/// column; these comparisons are strict in a semistandard tableau.
pub fn column_strict_sets(shape: &SkewShape) -> Vec<ElemSet> {
    let cells = shape.cells();
    cells
        .iter()
        .map(|&(r, c)| {
            cells
                .iter()
                .enumerate()
                .filter(|(_, &(r2, c2))| c2 == c && r2 < r)
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// Skew Schur polynomial `s_{λ/μ}(z_1..z_N)`: semistandard tableaux are
/// walked as P-partitions of the skew poset with entries in `1..=N` and
/// strict columns.
pub fn schur_poly(shape: &SkewShape, n: u32) -> MultiPoly {
    let p = Poset::from_skew_shape(shape);
    let strict = column_strict_sets(shape);
    let walk = Walk {
        poset: &p,
        lo: 1,
        hi: n,
        strict: Some(&strict),
        constraint: None,
    };
    collect(n as usize, &walk, |v| {
        let mut e = vec![0; n as usize];
        for &x in v {
            e[x as usize - 1] += 1;
        }
        e
    })
}

/// Coefficients of `s_λ(q, q², q³, …)` through degree `d`, as
/// `Ω_q(P_λ, d) · q^{n(λ)}` truncated at `d`.
pub fn principal_specialization(shape: &Partition, d: u32) -> MultiPoly {
    let p = Poset::from_skew_shape(&SkewShape::straight(shape.clone()));
    let omega = order_poly(&p, d, Flavor::Q, None).expect("no constraint");
    omega.shift(&[shape.n_stat()]).truncate(d as u64)
}

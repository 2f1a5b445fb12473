use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use posetcorr::enumeration::count_p_partitions;
use posetcorr::genfun::{order_poly, Flavor};
use posetcorr::inequalities::{
    dual_instance, sides, verify_cross_product, verify_ddp_family, verify_generalized_fishburn, verify_op_family,
    verify_stanley_identity, SchurTable, Side, STANLEY_CONVENTION,
};
use posetcorr::instances::{all_posets, IdealQuad};
use posetcorr::poly::Subst;
use posetcorr::{ElemSet, IdealKind, MultiPoly, Partition, Poset, SkewShape};

fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (0..=max_n, prop::collection::vec(any::<bool>(), 21)).prop_map(|(n, bits)| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .zip(bits)
            .filter(|(_, b)| *b)
            .map(|(p, _)| p)
            .collect();
        Poset::from_covers(n, &pairs).unwrap().poset
    })
}

/// A quadruple picked by index from the poset's ideals, kept only if it
/// meets the disjointness precondition.
fn quad(p: &Poset, picks: [usize; 4]) -> Option<IdealQuad> {
    let lows = p.lower_ideals();
    let ups = p.upper_ideals();
    let q = IdealQuad {
        a: lows[picks[0] % lows.len()],
        b: lows[picks[1] % lows.len()],
        c: ups[picks[2] % ups.len()],
        d: ups[picks[3] % ups.len()],
    };
    (q.a.is_disjoint(q.c) && q.b.is_disjoint(q.d)).then_some(q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generalized_fishburn_holds_and_is_self_dual(p in poset(6), picks in any::<[usize; 4]>()) {
        let Some(q) = quad(&p, picks) else { return Ok(()) };
        let r = verify_generalized_fishburn(&p, &q).unwrap();
        prop_assert!(r.holds);
        let (dp, dq) = dual_instance(&p, &q);
        prop_assert!(dp.is_ideal(dq.a, IdealKind::Lower).unwrap());
        prop_assert!(dp.is_ideal(dq.c, IdealKind::Upper).unwrap());
        let d = verify_generalized_fishburn(&dp, &dq).unwrap();
        prop_assert_eq!((&r.lhs, &r.rhs), (&d.lhs, &d.rhs));
    }

    #[test]
    fn op_verdicts_specialize(p in poset(4), picks in any::<[usize; 4]>(), t in 0u32..=3) {
        let Some(q) = quad(&p, picks) else { return Ok(()) };
        let multi = verify_op_family(&p, &q, t, Flavor::MultiQ).unwrap();
        let uni = verify_op_family(&p, &q, t, Flavor::Q).unwrap();
        let plain = verify_op_family(&p, &q, t, Flavor::Plain).unwrap();
        prop_assert!(multi.holds && uni.holds && plain.holds);
        let (ml, mr) = sides(&multi);
        let (ql, qr) = sides(&uni);
        prop_assert_eq!(ml.specialize_diagonal(), ql.clone());
        prop_assert_eq!(mr.specialize_diagonal(), qr.clone());
        prop_assert_eq!(plain.lhs, Side::Number(BigRational::from_integer(ql.sum_coeffs())));
        prop_assert_eq!(plain.rhs, Side::Number(BigRational::from_integer(qr.sum_coeffs())));
    }

    #[test]
    fn ddp_multi_at_one_is_plain(p in poset(4), z in any::<usize>(), t in 2u32..=4, k in 0u32..3, a in 1u32..3, b in 1u32..3) {
        prop_assume!(!p.is_empty() && k + a + b <= t);
        let z = z % p.len();
        let multi = verify_ddp_family(&p, z, t, k, a, b, Flavor::MultiQ).unwrap();
        let plain = verify_ddp_family(&p, z, t, k, a, b, Flavor::Plain).unwrap();
        prop_assert!(multi.holds && plain.holds);
        let (ml, mr) = sides(&multi);
        prop_assert_eq!(plain.lhs, Side::Number(BigRational::from_integer(ml.sum_coeffs())));
        prop_assert_eq!(plain.rhs, Side::Number(BigRational::from_integer(mr.sum_coeffs())));
    }

    #[test]
    fn cross_product_flavors_agree(p in poset(5), xyz in any::<[usize; 3]>(), t in 0u32..=2, k in 0u32..=2, l in 0u32..=2) {
        prop_assume!(p.len() >= 3);
        let n = p.len();
        let (x, y, z) = (xyz[0] % n, xyz[1] % n, xyz[2] % n);
        prop_assume!(x != y && y != z && x != z);
        let multi = verify_cross_product(&p, (x, y, z), t, k, l, Flavor::MultiQ).unwrap();
        let uni = verify_cross_product(&p, (x, y, z), t, k, l, Flavor::Q).unwrap();
        prop_assert!(multi.holds && uni.holds);
        prop_assert_eq!(sides(&multi).0.specialize_diagonal(), sides(&uni).0);
        prop_assert_eq!(sides(&multi).1.specialize_diagonal(), sides(&uni).1);
    }

    #[test]
    fn stanley_identity_on_random_posets(p in poset(5), t in 0u32..=5) {
        prop_assert!(verify_stanley_identity(&p, t, STANLEY_CONVENTION).unwrap().holds);
    }
}

/// `X−V, X−W, X−A−C, X−B−D`.
fn quad_sets(p: &Poset, q: &IdealQuad) -> [ElemSet; 4] {
    let x = p.ground();
    let v = (q.a & q.b) | q.c | q.d;
    let w = q.a | q.b | (q.c & q.d);
    [x - v, x - w, x - q.a - q.c, x - q.b - q.d]
}

#[test]
fn fishburn_agrees_with_large_t_order_polynomials() {
    // Both products have the same total size, so Ω/t^{|S|} → ρ turns the
    // order-polynomial inequality into the extension-count one.
    let t = 200;
    let mut strict = 0;
    for n in 0..=4 {
        for p in all_posets(n) {
            let lows = p.lower_ideals();
            let ups = p.upper_ideals();
            for (i, &a) in lows.iter().enumerate() {
                for &c in ups.iter().filter(|c| c.is_disjoint(a)) {
                    let q = IdealQuad {
                        a,
                        b: lows[(i * 7 + 3) % lows.len()],
                        c,
                        d: ElemSet::EMPTY,
                    };
                    let r = verify_generalized_fishburn(&p, &q).unwrap();
                    let omega = |s: ElemSet| BigInt::from(count_p_partitions(&p.induced(s).unwrap(), t, None).unwrap());
                    let [xv, xw, xac, xbd] = quad_sets(&p, &q);
                    let lhs = omega(xv) * omega(xw);
                    let rhs = omega(xac) * omega(xbd);
                    assert!(r.holds && lhs >= rhs);
                    if !r.equality {
                        assert!(lhs > rhs, "strict in the limit but not at t = {t}: {}", r.instance);
                        strict += 1;
                    }
                }
            }
        }
    }
    assert!(strict > 0);
}

#[test]
fn lp_schur_specializes_to_rpp_inequality() {
    // s_λ(q, q², …, q^N) agrees with q^{n(λ)} Ω_q(λ, ∞) below degree N + 1.
    let big_n = 14u32;
    let mut table = SchurTable::new();
    let spec = |table: &mut SchurTable, lam: &Partition| -> MultiPoly {
        let s = table.get(&SkewShape::straight(lam.clone()), big_n).unwrap();
        let plan: Vec<Subst> = (1..=big_n).map(Subst::Power).collect();
        s.substitute(&plan).unwrap().truncate(big_n as u64)
    };
    let omega = |lam: &Partition, d: u32| {
        let p = Poset::from_skew_shape(&SkewShape::straight(lam.clone()));
        order_poly(&p, d, Flavor::Q, None).unwrap()
    };
    let shapes = Partition::in_box(2, 2);
    for mu in &shapes {
        for nu in &shapes {
            let (j, m) = (mu.join(nu), mu.meet(nu));
            let shift = mu.n_stat() + nu.n_stat();
            assert_eq!(j.n_stat() + m.n_stat(), shift);
            let d = big_n - shift;
            let lhs_s = (&spec(&mut table, &j) * &spec(&mut table, &m)).truncate(big_n as u64);
            let rhs_s = (&spec(&mut table, mu) * &spec(&mut table, nu)).truncate(big_n as u64);
            let lhs_o = (&omega(&j, d) * &omega(&m, d)).truncate(d as u64);
            let rhs_o = (&omega(mu, d) * &omega(nu, d)).truncate(d as u64);
            assert_eq!(lhs_s, lhs_o.shift(&[shift]));
            assert_eq!(rhs_s, rhs_o.shift(&[shift]));
            let straight = |l: &Partition| SkewShape::straight(l.clone());
            let lp = table.lp_schur(&straight(mu), &straight(nu), 2).unwrap();
            assert_eq!(lp.holds, lhs_o.geq_coeffwise(&rhs_o).unwrap().holds);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parsers_never_panic(s in "[0-9,/: a-z#\n^*+\\-∅]{0,40}", arity in 0usize..5) {
        let _ = Poset::parse_text(&s);
        let _ = Poset::from_builtin(&s);
        let _ = s.parse::<Partition>();
        let _ = s.parse::<SkewShape>();
        let _ = MultiPoly::parse(&s, posetcorr::Vars::Q, arity);
        let _ = MultiPoly::parse(&s, posetcorr::Vars::Z0, arity);
    }

    #[test]
    fn number_heavy_inputs_never_panic(parts in prop::collection::vec(any::<u32>(), 0..4), e in any::<u32>(), c in any::<i64>()) {
        let joined: Vec<String> = parts.iter().map(u32::to_string).collect();
        let _ = joined.join(",").parse::<Partition>();
        let _ = Poset::from_builtin(&format!("skew:{}", joined.join(",")));
        let _ = Poset::from_builtin(&format!("chain:{e}"));
        let _ = Poset::parse_text(&format!("{e}\n1 2\n"));
        let _ = MultiPoly::parse(&format!("{c} * q1^{e} + {c}"), posetcorr::Vars::Q, 1);
    }
}

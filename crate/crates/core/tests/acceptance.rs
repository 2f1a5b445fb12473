//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Arithmetic is exact everywhere except criterion 12, whose tolerance is
//! pinned at 5%. Every criterion draws its random instances from a fresh
//! ChaCha8 generator seeded with 0.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetcorr::enumeration::count_linear_extensions;
use posetcorr::genfun::Flavor;
use posetcorr::inequalities::{
    dual_instance, profile_to_q, scaled_order_polynomial, sides, verify_ddp_log_concavity, verify_hook_length,
    verify_stanley_identity, Checker, CrossTable, DdpTable, SchurTable, VerificationReport, STANLEY_CONVENTION,
};
use posetcorr::instances::{
    all_posets, random_ideal_quad, random_lower_ideal, random_poset, random_skew_in_box, IdealQuad,
};
use posetcorr::lattice::{
    ad_check, boolean_lattice, chain_lattice, diamond, fishburn_indicators, ppartition_lattice, shepp_lattice,
    verify_lattice, AdMode, FourFunctions, LatticeInstance, ModularFamily, PairBudget, WeightFunction,
    DEFAULT_VERIFY_CAP,
};
use posetcorr::{Partition, Poset, SkewShape};

const SEED: u64 = 0;
const DENSITY: f64 = 0.3;
const ASYMPTOTIC_T: u32 = 200;
const ASYMPTOTIC_TOLERANCE: f64 = 0.05;
const AD_LATTICE_LIMIT: usize = 2000;

type Outcome = Result<String, String>;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn holds(r: &VerificationReport) -> Result<(), String> {
    ensure(r.holds, || format!("fails: {}", r.to_json()))
}

fn small_posets(max_n: usize) -> Vec<Poset> {
    (0..=max_n).flat_map(all_posets).collect()
}

/// A `(P, t, quad)` triple for the four-functions check of criterion 9.
struct AdSource {
    poset: Poset,
    quad: IdealQuad,
    t: u32,
}

fn criterion_1(ad: &mut Vec<AdSource>) -> Outcome {
    let mut instances = 0;
    let mut antichain_equalities = 0;
    for p in small_posets(4) {
        let mut ck = Checker::new(&p);
        let ideals = p.lower_ideals();
        for &a in &ideals {
            for &b in &ideals {
                let r = ck.fishburn(a, b).map_err(|e| e.to_string())?;
                holds(&r)?;
                if p.relation_count() == 0 {
                    ensure(r.equality, || format!("antichain instance is strict: {}", r.to_json()))?;
                    antichain_equalities += 1;
                }
                instances += 1;
                ad.push(AdSource {
                    poset: p.clone(),
                    quad: IdealQuad::lower_only(a, b),
                    t: 2,
                });
            }
        }
    }
    let mut rng = rng();
    for _ in 0..200 {
        let n = rng.gen_range(5..=7);
        let p = random_poset(&mut rng, n, DENSITY);
        let mut ck = Checker::new(&p);
        for _ in 0..2 {
            let (a, b) = (random_lower_ideal(&mut rng, &p), random_lower_ideal(&mut rng, &p));
            holds(&ck.fishburn(a, b).map_err(|e| e.to_string())?)?;
            instances += 1;
            ad.push(AdSource {
                poset: p.clone(),
                quad: IdealQuad::lower_only(a, b),
                t: 2,
            });
        }
    }
    Ok(format!(
        "{instances} instances, {antichain_equalities} antichain equalities"
    ))
}

fn criterion_2(ad: &mut Vec<AdSource>) -> Outcome {
    let mut rng = rng();
    let mut strict = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let p = random_poset(&mut rng, n, DENSITY);
        let q = random_ideal_quad(&mut rng, &p);
        let r = Checker::new(&p).generalized_fishburn(&q).map_err(|e| e.to_string())?;
        holds(&r)?;
        let (dp, dq) = dual_instance(&p, &q);
        let d = Checker::new(&dp).generalized_fishburn(&dq).map_err(|e| e.to_string())?;
        ensure(d.holds == r.holds && d.lhs == r.lhs && d.rhs == r.rhs, || {
            format!("self-duality fails: {} vs {}", r.to_json(), d.to_json())
        })?;
        strict += usize::from(!r.equality);
        ad.push(AdSource {
            poset: p,
            quad: q,
            t: 2,
        });
    }
    Ok(format!("500 instances with duals, {strict} strict"))
}

fn criterion_3(ad: &mut Vec<AdSource>) -> Outcome {
    let mut rng = rng();
    for _ in 0..120 {
        let n = rng.gen_range(1..=5);
        let t = rng.gen_range(0..=3);
        let p = random_poset(&mut rng, n, DENSITY);
        let q = random_ideal_quad(&mut rng, &p);
        let mut ck = Checker::new(&p);
        let run = |ck: &mut Checker, f| ck.order_polynomial(&q, t, f).map_err(|e| e.to_string());
        let (multi, uni, plain) = (
            run(&mut ck, Flavor::MultiQ)?,
            run(&mut ck, Flavor::Q)?,
            run(&mut ck, Flavor::Plain)?,
        );
        for r in [&multi, &uni, &plain] {
            holds(r)?;
        }
        let (ml, mr) = sides(&multi);
        let (ql, qr) = sides(&uni);
        let (pl, pr) = sides(&plain);
        ensure(ml.specialize_diagonal() == ql && mr.specialize_diagonal() == qr, || {
            format!("q_i <- q does not give the q sides: {}", multi.to_json())
        })?;
        ensure(
            ql.sum_coeffs() == pl.sum_coeffs() && qr.sum_coeffs() == pr.sum_coeffs(),
            || format!("q <- 1 does not give the plain sides: {}", uni.to_json()),
        )?;
        ensure(!multi.holds || uni.holds && plain.holds, || {
            "specialization verdicts disagree".into()
        })?;
        ad.push(AdSource { poset: p, quad: q, t });
    }
    Ok("120 instances, three flavors each".into())
}

fn criterion_4() -> Outcome {
    let mut rng = rng();
    for _ in 0..120 {
        let n = rng.gen_range(1..=5);
        let big_n = rng.gen_range(0..=3);
        let p = random_poset(&mut rng, n, DENSITY);
        let q = random_ideal_quad(&mut rng, &p);
        let mut ck = Checker::new(&p);
        let k = ck.profile_family(&q, big_n).map_err(|e| e.to_string())?;
        holds(&k)?;
        let op = ck.order_polynomial(&q, big_n, Flavor::Q).map_err(|e| e.to_string())?;
        let (kl, kr) = sides(&k);
        let (ql, qr) = sides(&op);
        ensure(profile_to_q(&kl) == ql && profile_to_q(&kr) == qr, || {
            format!("z_i <- q^i does not give the q sides: {}", k.to_json())
        })?;
        let specialized = profile_to_q(&kl).geq_coeffwise(&profile_to_q(&kr)).expect("same arity");
        ensure(specialized.holds == op.holds && (!k.holds || op.holds), || {
            format!("verdicts disagree: {} vs {}", k.to_json(), op.to_json())
        })?;
    }
    Ok("120 instances with q-specialization".into())
}

fn criterion_5() -> Outcome {
    let mut table = SchurTable::new();
    let shapes = Partition::in_box(3, 3);
    let mut pairs = 0;
    for mu in &shapes {
        for nu in &shapes {
            let (a, b) = (SkewShape::straight(mu.clone()), SkewShape::straight(nu.clone()));
            holds(&table.lp_schur(&a, &b, 4).map_err(|e| e.to_string())?)?;
            pairs += 1;
        }
    }
    let mut rng = rng();
    for _ in 0..100 {
        let (a, b) = (random_skew_in_box(&mut rng, 3, 3), random_skew_in_box(&mut rng, 3, 3));
        holds(&table.lp_schur(&a, &b, 4).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{pairs} straight pairs and 100 skew pairs at N=4"))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for n in 0..=8 {
        for lam in Partition::of_weight(n) {
            let r = verify_hook_length(&lam).map_err(|e| e.to_string())?;
            holds(&r)?;
            count += 1;
        }
    }
    Ok(format!("{count} partitions"))
}

fn criterion_7() -> Outcome {
    let mut checks = 0;
    for p in small_posets(5) {
        for z in 0..p.len() {
            for t in 0..=4 {
                for flavor in [Flavor::Plain, Flavor::MultiQ] {
                    let mut table = DdpTable::new(&p, z, t, flavor).map_err(|e| e.to_string())?;
                    for a in 1..=t {
                        for b in 1..=t - a {
                            for k in 0..=t - a - b {
                                holds(&table.check(k, a, b).map_err(|e| e.to_string())?)?;
                                checks += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut log_concave = 0;
    for p in small_posets(4) {
        for top in 2..=4u32 {
            for a in 1..top {
                for b in 1..=top - a {
                    let t = top - a - b;
                    holds(&verify_ddp_log_concavity(&p, t, a, b).map_err(|e| e.to_string())?)?;
                    log_concave += 1;
                }
            }
        }
    }
    Ok(format!(
        "{checks} slice checks, {log_concave} log-concavity checks through P+z"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = rng();
    let mut largest = 0;
    for _ in 0..50 {
        let n = rng.gen_range(3..=5);
        let t = rng.gen_range(0..=3);
        let p = random_poset(&mut rng, n, DENSITY);
        let xyz: Vec<usize> = (0..n).choose_multiple(&mut rng, 3);
        let mut xyz = xyz;
        xyz.shuffle(&mut rng);
        let (x, y, z) = (xyz[0], xyz[1], xyz[2]);
        let tables: Vec<CrossTable> = Flavor::ALL
            .iter()
            .map(|&f| CrossTable::new(&p, (x, y, z), t, f))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        for k in 0..=t {
            for l in 0..=t {
                let reports: Vec<VerificationReport> = tables
                    .iter()
                    .map(|tb| tb.check(k, l))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                for r in &reports {
                    holds(r)?;
                }
            }
        }
        let lattice = shepp_lattice(&p, t, y).map_err(|e| e.to_string())?;
        largest = largest.max(lattice.len());
        let report = verify_lattice(&lattice, &[], DEFAULT_VERIFY_CAP).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("Shepp lattice fails: {:?}", report.violation)
        })?;
    }
    Ok(format!(
        "50 triples, three flavors; Shepp lattices up to {largest} elements distributive"
    ))
}

/// The lexicographically least pair violating the four-functions
/// hypothesis, by direct scan.
fn least_violation(l: &LatticeInstance, f: &FourFunctions) -> Option<(usize, usize)> {
    let n = l.len();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| {
        let (j, m) = (l.join(x, y).unwrap(), l.meet(x, y).unwrap());
        f.alpha.get(x) * f.beta.get(y) > f.gamma.get(j) * f.delta.get(m)
    })
}

fn rational(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `α = μf, β = μg, γ = μfg, δ = μ` on a Boolean lattice with product
/// measure `μ` and increasing `f, g`.
fn fkg_instance(rng: &mut ChaCha8Rng) -> (LatticeInstance, FourFunctions) {
    let m = rng.gen_range(1..=6);
    let l = boolean_lattice(m);
    let odds: Vec<(i64, i64)> = (0..m).map(|_| (rng.gen_range(1..=5), rng.gen_range(1..=5))).collect();
    let mu: Vec<BigRational> = l
        .states()
        .iter()
        .map(|s| {
            s.iter()
                .zip(&odds)
                .map(|(&bit, &(p, q))| {
                    if bit == 1 {
                        rational(p, p + q)
                    } else {
                        rational(q, p + q)
                    }
                })
                .product()
        })
        .collect();
    let increasing = |rng: &mut ChaCha8Rng| -> Vec<BigRational> {
        let gens: Vec<(usize, i64)> = (0..rng.gen_range(1..=3))
            .map(|_| (rng.gen_range(0..l.len()), rng.gen_range(1..=4)))
            .collect();
        l.states()
            .iter()
            .map(|s| {
                let v = gens
                    .iter()
                    .filter(|&&(u, _)| l.state(u).iter().zip(s).all(|(a, b)| a <= b))
                    .map(|&(_, c)| c)
                    .max()
                    .unwrap_or(0);
                BigRational::from_integer(v.into())
            })
            .collect()
    };
    let (f, g) = (increasing(rng), increasing(rng));
    let w = |v: Vec<BigRational>| WeightFunction::new(v).expect("nonnegative");
    let funcs = FourFunctions {
        alpha: w(mu.iter().zip(&f).map(|(a, b)| a * b).collect()),
        beta: w(mu.iter().zip(&g).map(|(a, b)| a * b).collect()),
        gamma: w(mu.iter().zip(f.iter().zip(&g)).map(|(a, (b, c))| a * b * c).collect()),
        delta: w(mu),
    };
    (l, funcs)
}

fn criterion_9(ad: &[AdSource]) -> Outcome {
    let mut checked = 0;
    for src in ad {
        let l = ppartition_lattice(&src.poset, src.t).map_err(|e| e.to_string())?;
        if l.len() > AD_LATTICE_LIMIT {
            continue;
        }
        let f = fishburn_indicators(&l, &src.quad, src.t);
        let all: Vec<usize> = (0..l.len()).collect();
        let r = ad_check(&l, &f, &all, &all, AdMode::Both, PairBudget::default()).map_err(|e| e.to_string())?;
        let hyp = r.hypothesis.expect("requested");
        let conc = r.conclusion.expect("requested");
        ensure(hyp.exhaustive && hyp.holds() && conc.holds(), || {
            format!(
                "Fishburn indicators fail on {} t={}: {:?}",
                src.poset.to_text(),
                src.t,
                hyp.witness
            )
        })?;
        checked += 1;
    }
    let mut rng = rng();
    for i in 0..100 {
        let (l, f) = fkg_instance(&mut rng);
        let all: Vec<usize> = (0..l.len()).collect();
        let r = ad_check(&l, &f, &all, &all, AdMode::Both, PairBudget::default()).map_err(|e| e.to_string())?;
        let (hyp, conc) = (r.hypothesis.unwrap(), r.conclusion.unwrap());
        ensure(hyp.holds() && conc.holds(), || format!("FKG instance {i} fails"))?;
    }

    let one = |n| WeightFunction::ones(n);
    let mut violations = Vec::new();
    let b2 = boolean_lattice(2);
    let top = b2.top().unwrap();
    let mut alpha = one(4);
    alpha.set(top, rational(2, 1)).unwrap();
    violations.push((
        "doubled top",
        b2,
        FourFunctions {
            alpha,
            beta: one(4),
            gamma: one(4),
            delta: one(4),
        },
    ));
    let c3 = chain_lattice(3);
    let mut gamma = one(3);
    gamma.set(2, BigRational::zero()).unwrap();
    violations.push((
        "chain, gamma zero at top",
        c3,
        FourFunctions {
            alpha: one(3),
            beta: one(3),
            gamma,
            delta: one(3),
        },
    ));
    let m3 = diamond();
    let atoms = WeightFunction::indicator(5, |i| (1..=3).contains(&i));
    let mut gamma = one(5);
    gamma.set(4, rational(1, 2)).unwrap();
    violations.push((
        "diamond, halved top",
        m3,
        FourFunctions {
            alpha: atoms.clone(),
            beta: atoms,
            gamma,
            delta: one(5),
        },
    ));
    for (name, l, f) in &violations {
        let r = ad_check(l, f, &[], &[], AdMode::Hypothesis, PairBudget::default()).map_err(|e| e.to_string())?;
        let got = r.hypothesis.unwrap().witness;
        let want = least_violation(l, f);
        ensure(got.is_some() && got == want, || {
            format!("{name}: witness {got:?}, expected {want:?}")
        })?;
    }
    Ok(format!(
        "{checked} Fishburn lattices, 100 FKG instances, {} violations caught",
        violations.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut lattices = 0;
    for p in small_posets(4) {
        for t in 0..=3 {
            let l = ppartition_lattice(&p, t).map_err(|e| e.to_string())?;
            let families = [ModularFamily::element_values(&l), ModularFamily::value_counts(&l)];
            let r = verify_lattice(&l, &families, DEFAULT_VERIFY_CAP).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{} t={t}: {:?}", p.to_text(), r.violation))?;
            lattices += 1;
        }
    }
    Ok(format!("{lattices} lattices, both families"))
}

fn criterion_11() -> Outcome {
    let mut count = 0;
    for p in small_posets(4) {
        for t in 0..=6 {
            let r = verify_stanley_identity(&p, t, STANLEY_CONVENTION).map_err(|e| e.to_string())?;
            holds(&r)?;
            count += 1;
        }
    }
    Ok(format!("{count} (P, t) pairs under {STANLEY_CONVENTION:?}"))
}

fn criterion_12() -> Outcome {
    let mut rng = rng();
    let mut worst = (0.0f64, String::new());
    let mut misses = Vec::new();
    for _ in 0..20 {
        let n = rng.gen_range(1..=5);
        let p = random_poset(&mut rng, n, DENSITY);
        let e = count_linear_extensions(&p).to_f64().unwrap();
        let scaled = scaled_order_polynomial(&p, ASYMPTOTIC_T).to_f64().unwrap();
        let err = (scaled / e - 1.0).abs();
        if err > worst.0 {
            worst = (err, p.to_text().replace('\n', " "));
        }
        if err > ASYMPTOTIC_TOLERANCE {
            misses.push(format!("{} (ratio {:.4})", p.to_text().replace('\n', " "), scaled / e));
        }
    }
    if misses.is_empty() {
        Ok(format!("20 posets, worst relative error {:.4} on {}", worst.0, worst.1))
    } else {
        Err(format!("{} of 20 outside 5%: {}", misses.len(), misses.join("; ")))
    }
}

fn main() -> ExitCode {
    let mut ad_sources = Vec::new();
    let mut failed = 0;
    let mut run = |n: usize, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n:>2}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL ({secs:.1}s) {detail}");
            }
        }
    };
    run(1, &mut || criterion_1(&mut ad_sources));
    run(2, &mut || criterion_2(&mut ad_sources));
    run(3, &mut || criterion_3(&mut ad_sources));
    run(4, &mut criterion_4);
    run(5, &mut criterion_5);
    run(6, &mut criterion_6);
    run(7, &mut criterion_7);
    run(8, &mut criterion_8);
    run(9, &mut || criterion_9(&ad_sources));
    run(10, &mut criterion_10);
    run(11, &mut criterion_11);
    run(12, &mut criterion_12);
    if failed == 0 {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 12 criteria fail");
        ExitCode::FAILURE
    }
}

//! Instance generation and execution for `verify`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use posetcorr::genfun::Flavor;
use posetcorr::inequalities::{
    describe_poset, verify_ddp_log_concavity, verify_hook_length, verify_stanley_identity, Checker, CrossTable,
    DdpTable, SchurTable, TheoremId, VerificationReport, VerifyError, STANLEY_CONVENTION,
};
use posetcorr::instances::{all_posets, random_ideal_quad, random_poset, random_skew_in_box};
use posetcorr::{Partition, Poset, SkewShape};

/// Posets up to this size are enumerated exhaustively; larger ones are drawn.
const EXHAUSTIVE_N: usize = 4;
const RANDOM_PER_SIZE: usize = 10;
const DENSITY: f64 = 0.3;
const QUADS_PER_POSET: usize = 3;
const FISHBURN_PAIR_LIMIT: usize = 64;
const RANDOM_SKEW_PAIRS: usize = 20;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub theorems: Vec<TheoremId>,
    pub seed: u64,
    pub max_n: usize,
    pub max_t: u32,
    pub max_big_n: u32,
}

/// One output record.
pub enum Record {
    Report(VerificationReport),
    Error {
        theorem: TheoremId,
        context: String,
        error: VerifyError,
    },
}

impl Record {
    pub fn passed(&self) -> bool {
        matches!(self, Record::Report(r) if r.holds)
    }

    pub fn to_json(&self) -> String {
        match self {
            Record::Report(r) => r.to_json(),
            Record::Error {
                theorem,
                context,
                error,
            } => json!({
                "theorem": theorem.name(),
                "instance": context,
                "verdict": "error",
                "error": error.to_string(),
            })
            .to_string(),
        }
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Tally {
    pub instances: usize,
    pub failed: usize,
}

struct Runner<'a> {
    theorem: TheoremId,
    emit: &'a mut dyn FnMut(&Record),
    tally: Tally,
}

impl Runner<'_> {
    fn push(&mut self, context: impl FnOnce() -> String, r: Result<VerificationReport, VerifyError>) {
        let record = match r {
            Ok(report) => Record::Report(report),
            Err(error) => Record::Error {
                theorem: self.theorem,
                context: context(),
                error,
            },
        };
        self.tally.instances += 1;
        if !record.passed() {
            self.tally.failed += 1;
        }
        (self.emit)(&record);
    }
}

/// Exhaustive posets up to `EXHAUSTIVE_N` elements, then seeded random ones.
fn posets(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<Poset> {
    let mut out: Vec<Poset> = (0..=max_n.min(EXHAUSTIVE_N)).flat_map(all_posets).collect();
    for n in EXHAUSTIVE_N + 1..=max_n {
        out.extend((0..RANDOM_PER_SIZE).map(|_| random_poset(rng, n, DENSITY)));
    }
    out
}

fn stream(seed: u64, theorem: TheoremId) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(TheoremId::ALL.iter().position(|&t| t == theorem).unwrap() as u64);
    rng
}

/// Runs every selected suite in order, passing each record to `emit`.
pub fn run(config: &RunConfig, emit: &mut dyn FnMut(&Record)) -> Vec<(TheoremId, Tally)> {
    let mut tallies = Vec::new();
    for &theorem in &config.theorems {
        let mut rng = stream(config.seed, theorem);
        let mut runner = Runner {
            theorem,
            emit: &mut *emit,
            tally: Tally::default(),
        };
        suite(config, theorem, &mut rng, &mut runner);
        tallies.push((theorem, runner.tally));
    }
    tallies
}

fn suite(config: &RunConfig, theorem: TheoremId, rng: &mut ChaCha8Rng, out: &mut Runner) {
    let (max_n, max_t, max_big_n) = (config.max_n, config.max_t, config.max_big_n);
    match theorem {
        TheoremId::Fishburn => {
            for p in posets(rng, max_n) {
                let ideals = p.lower_ideals();
                let mut pairs: Vec<_> = ideals
                    .iter()
                    .flat_map(|&a| ideals.iter().map(move |&b| (a, b)))
                    .collect();
                if pairs.len() > FISHBURN_PAIR_LIMIT {
                    pairs.shuffle(rng);
                    pairs.truncate(FISHBURN_PAIR_LIMIT);
                }
                let mut ck = Checker::new(&p);
                for (a, b) in pairs {
                    out.push(|| describe_poset(&p), ck.fishburn(a, b));
                }
            }
        }
        TheoremId::GeneralizedFishburn => {
            for p in posets(rng, max_n) {
                let mut ck = Checker::new(&p);
                for _ in 0..QUADS_PER_POSET {
                    let q = random_ideal_quad(rng, &p);
                    out.push(|| describe_poset(&p), ck.generalized_fishburn(&q));
                }
            }
        }
        TheoremId::OrderPolynomial => {
            for p in posets(rng, max_n) {
                let mut ck = Checker::new(&p);
                for _ in 0..QUADS_PER_POSET {
                    let q = random_ideal_quad(rng, &p);
                    for t in 0..=max_t {
                        for flavor in Flavor::ALL {
                            out.push(|| describe_poset(&p), ck.order_polynomial(&q, t, flavor));
                        }
                    }
                }
            }
        }
        TheoremId::Profile => {
            for p in posets(rng, max_n) {
                let mut ck = Checker::new(&p);
                for _ in 0..QUADS_PER_POSET {
                    let q = random_ideal_quad(rng, &p);
                    for big_n in 0..=max_big_n {
                        out.push(|| describe_poset(&p), ck.profile_family(&q, big_n));
                    }
                }
            }
        }
        TheoremId::LpSchur => {
            let mut table = SchurTable::new();
            let rows = max_big_n as usize;
            let shapes = Partition::in_box(rows, max_t);
            for mu in &shapes {
                for nu in &shapes {
                    let (a, b) = (SkewShape::straight(mu.clone()), SkewShape::straight(nu.clone()));
                    out.push(|| format!("{a} | {b}"), table.lp_schur(&a, &b, max_big_n));
                }
            }
            for _ in 0..RANDOM_SKEW_PAIRS {
                let a = random_skew_in_box(rng, rows, max_t);
                let b = random_skew_in_box(rng, rows, max_t);
                out.push(|| format!("{a} | {b}"), table.lp_schur(&a, &b, max_big_n));
            }
        }
        TheoremId::Ddp => {
            for p in posets(rng, max_n) {
                for z in 0..p.len() {
                    for t in 2..=max_t {
                        for flavor in [Flavor::Plain, Flavor::MultiQ] {
                            let context = || format!("{} z=x{} t={t}", describe_poset(&p), z + 1);
                            let mut table = match DdpTable::new(&p, z, t, flavor) {
                                Ok(table) => table,
                                Err(e) => {
                                    out.push(context, Err(e));
                                    continue;
                                }
                            };
                            for a in 1..t {
                                for b in 1..=t - a {
                                    for k in 0..=t - a - b {
                                        out.push(context, table.check(k, a, b));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        TheoremId::DdpLogConcave => {
            for p in posets(rng, max_n.saturating_sub(1)) {
                for top in 2..=max_t {
                    for a in 1..top {
                        for b in 1..=top - a {
                            let t = top - a - b;
                            out.push(|| describe_poset(&p), verify_ddp_log_concavity(&p, t, a, b));
                        }
                    }
                }
            }
        }
        TheoremId::CrossProduct => {
            for p in posets(rng, max_n).into_iter().filter(|p| p.len() >= 3) {
                let mut elems: Vec<usize> = (0..p.len()).collect();
                elems.shuffle(rng);
                let xyz = (elems[0], elems[1], elems[2]);
                for t in 0..=max_t {
                    for flavor in Flavor::ALL {
                        let context = || format!("{} t={t}", describe_poset(&p));
                        match CrossTable::new(&p, xyz, t, flavor) {
                            Ok(table) => {
                                for k in 0..=t {
                                    for l in 0..=t {
                                        out.push(context, table.check(k, l));
                                    }
                                }
                            }
                            Err(e) => out.push(context, Err(e)),
                        }
                    }
                }
            }
        }
        TheoremId::Stanley => {
            for p in posets(rng, max_n) {
                for t in 0..=2 * max_t {
                    out.push(
                        || describe_poset(&p),
                        verify_stanley_identity(&p, t, STANLEY_CONVENTION),
                    );
                }
            }
        }
        TheoremId::HookLength => {
            for n in 0..=max_n as u32 {
                for lam in Partition::of_weight(n) {
                    out.push(|| format!("λ={lam}"), verify_hook_length(&lam));
                }
            }
        }
    }
}

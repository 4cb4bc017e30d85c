//! Seeded Monte Carlo verification of the exact posteriors.
//!
//! Trials are partitioned into fixed-size chunks; chunk i always runs on
//! substream i of the master seed regardless of how many workers execute the
//! chunks. Counters are therefore bit-identical for any worker count, and
//! parallelism only changes scheduling. The hot loop is all-integer: sexes
//! are single bits, names and selections come from exact rejection sampling,
//! and nothing allocates per trial.

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::family::NamingModel;
use crate::protocol::Protocol;
use crate::rational::Rational;
use crate::rng::{bernoulli_ratio, substream, uniform_below, Xoshiro256StarStar};
use crate::scenario::{wiring, ScenarioId, ScenarioParams, Wiring};

/// Trials per substream chunk. Fixed so that the trial-to-randomness mapping
/// never depends on the worker count.
pub const CHUNK_TRIALS: u64 = 1 << 16;

#[derive(Clone, Copy, Debug)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParams("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Streaming counters: `a` trials satisfied query and observation, `b`
/// satisfied the observation. The ratio is undefined until `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McEstimate {
    pub a: u64,
    pub b: u64,
    pub trials: u64,
}

impl McEstimate {
    pub fn zero() -> Self {
        McEstimate { a: 0, b: 0, trials: 0 }
    }

    /// Counter addition; associative and commutative with `zero` as unit.
    pub fn merge(self, other: McEstimate) -> McEstimate {
        McEstimate {
            a: self.a + other.a,
            b: self.b + other.b,
            trials: self.trials + other.trials,
        }
    }

    /// a/b as an exact fraction, when any observation came up.
    pub fn ratio(&self) -> Option<Rational> {
        (self.b > 0).then(|| Rational::ratio_u64(self.a, self.b).expect("b > 0"))
    }

    /// Plug-in binomial standard error sqrt(r(1-r)/b).
    pub fn stderr(&self) -> Option<f64> {
        (self.b > 0).then(|| {
            let r = self.a as f64 / self.b as f64;
            (r * (1.0 - r) / self.b as f64).sqrt()
        })
    }
}

/// True with probability exactly `p`.
///
/// Exactness requires `p`'s parts to fit in 64 bits; every scenario default
/// does by a wide margin.
pub fn bernoulli_draw<R: RngCore>(rng: &mut R, p: &Rational) -> bool {
    let (num, den) = p
        .as_u64_ratio()
        .expect("probability parts must fit in u64");
    assert!(num <= den, "probability above 1");
    bernoulli_ratio(rng, num, den)
}

/// Integer name plan for one trial family.
enum NamingSpec {
    /// Protocol never reads names; skip the draws entirely.
    NoNames,
    /// Collapsed alphabet: 0 is the distinguished name, 1 everything else.
    Bernoulli { num: u64, den: u64, no_dup: bool },
    /// Names 0..n uniformly, second boy avoiding the first's name.
    Uniform { n: u64 },
    /// Integer weights over a common denominator; second boy redraws over
    /// the remaining names (which is exactly the 1/(1-p_k) boost).
    Weighted { weights: Vec<u64>, total: u64, target: u64 },
}

enum ProtocolSpec {
    AtLeastOneBoy,
    NamedBoy,
    /// Per-child selection weights: `boy_w` for a boy, `girl_w` for a girl.
    /// `named` distinguishes the plain walk from the named one.
    Walk { boy_w: u64, girl_w: u64, named: bool },
    Draft,
    FirstbornNamed,
}

/// A compiled scenario: everything the hot loop needs, in integers.
pub struct TrialSampler {
    naming: NamingSpec,
    protocol: ProtocolSpec,
    target: u64,
}

const NAME_COLLAPSED_TARGET: u64 = 0;
const NAME_COLLAPSED_OTHER: u64 = 1;

impl TrialSampler {
    pub fn compile(w: &Wiring) -> Result<TrialSampler> {
        let too_large = |what: &str| {
            Error::ParameterTooLarge(format!(
                "{what} does not fit the 64-bit sampler; use smaller numerators/denominators"
            ))
        };
        let protocol = match &w.protocol {
            Protocol::OracleAtLeastOneBoy | Protocol::SchoolMeeting => ProtocolSpec::AtLeastOneBoy,
            Protocol::OracleNamedBoy => ProtocolSpec::NamedBoy,
            Protocol::OracleFirstbornBoyNamed => ProtocolSpec::FirstbornNamed,
            Protocol::Draft => ProtocolSpec::Draft,
            Protocol::Walk { girl_weight } | Protocol::WalkNamed { girl_weight } => {
                let (girl_num, girl_den) =
                    girl_weight.as_u64_ratio().ok_or_else(|| too_large("girl_weight"))?;
                // Selection total is at most two boy weights.
                if girl_den > u64::MAX / 2 {
                    return Err(too_large("girl_weight denominator"));
                }
                ProtocolSpec::Walk {
                    boy_w: girl_den,
                    girl_w: girl_num,
                    named: matches!(w.protocol, Protocol::WalkNamed { .. }),
                }
            }
        };
        let reads_names = !matches!(
            protocol,
            ProtocolSpec::AtLeastOneBoy | ProtocolSpec::Walk { named: false, .. }
        );
        let naming = if !reads_names {
            NamingSpec::NoNames
        } else {
            match &w.model {
                NamingModel::BernoulliNoDup { p } | NamingModel::BernoulliDupAllowed { p } => {
                    let (num, den) = p.as_u64_ratio().ok_or_else(|| too_large("p"))?;
                    NamingSpec::Bernoulli {
                        num,
                        den,
                        no_dup: matches!(w.model, NamingModel::BernoulliNoDup { .. }),
                    }
                }
                NamingModel::UniformWithoutReplacement { n } => {
                    NamingSpec::Uniform { n: *n as u64 }
                }
                NamingModel::WeightedBoost { weights, target } => {
                    let scaled = scale_to_common_denominator(weights)
                        .ok_or_else(|| too_large("weight vector"))?;
                    let total = scaled.iter().sum();
                    NamingSpec::Weighted { weights: scaled, total, target: *target as u64 }
                }
            }
        };
        let target = match &naming {
            NamingSpec::Weighted { target, .. } => *target,
            _ => NAME_COLLAPSED_TARGET,
        };
        Ok(TrialSampler { naming, protocol, target })
    }

    fn draw_first_boy_name(&self, rng: &mut Xoshiro256StarStar) -> u64 {
        match &self.naming {
            NamingSpec::NoNames => NAME_COLLAPSED_OTHER,
            NamingSpec::Bernoulli { num, den, .. } => {
                if bernoulli_ratio(rng, *num, *den) {
                    NAME_COLLAPSED_TARGET
                } else {
                    NAME_COLLAPSED_OTHER
                }
            }
            NamingSpec::Uniform { n } => uniform_below(rng, *n),
            NamingSpec::Weighted { weights, total, .. } => {
                weighted_pick(rng, weights, *total, None)
            }
        }
    }

    fn draw_second_boy_name(&self, rng: &mut Xoshiro256StarStar, first: u64) -> u64 {
        match &self.naming {
            NamingSpec::NoNames => NAME_COLLAPSED_OTHER,
            NamingSpec::Bernoulli { num, den, no_dup } => {
                if *no_dup && first == NAME_COLLAPSED_TARGET {
                    NAME_COLLAPSED_OTHER
                } else if bernoulli_ratio(rng, *num, *den) {
                    NAME_COLLAPSED_TARGET
                } else {
                    NAME_COLLAPSED_OTHER
                }
            }
            NamingSpec::Uniform { n } => {
                let j = uniform_below(rng, n - 1);
                if j >= first {
                    j + 1
                } else {
                    j
                }
            }
            NamingSpec::Weighted { weights, total, .. } => {
                weighted_pick(rng, weights, *total, Some(first))
            }
        }
    }

    /// One trial: (observation held, observation and two-boys query held).
    fn run_trial(&self, rng: &mut Xoshiro256StarStar) -> (bool, bool) {
        let boy1 = rng.next_u64() & 1 == 1;
        let boy2 = rng.next_u64() & 1 == 1;
        let two_boys = boy1 && boy2;
        // Girls keep a sentinel that never equals a real name draw's target
        // check because observation code always tests boy-ness first.
        let name1 = if boy1 { self.draw_first_boy_name(rng) } else { u64::MAX };
        let name2 = if boy2 {
            if boy1 {
                self.draw_second_boy_name(rng, name1)
            } else {
                self.draw_first_boy_name(rng)
            }
        } else {
            u64::MAX
        };

        let observed = match &self.protocol {
            ProtocolSpec::AtLeastOneBoy => boy1 || boy2,
            ProtocolSpec::NamedBoy => {
                (boy1 && name1 == self.target) || (boy2 && name2 == self.target)
            }
            ProtocolSpec::FirstbornNamed => {
                if boy1 {
                    name1 == self.target
                } else {
                    boy2 && name2 == self.target
                }
            }
            ProtocolSpec::Walk { boy_w, girl_w, named } => {
                let w1 = if boy1 { *boy_w } else { *girl_w };
                let w2 = if boy2 { *boy_w } else { *girl_w };
                if w1 + w2 == 0 {
                    false
                } else {
                    let first = uniform_below(rng, w1 + w2) < w1;
                    let (sel_boy, sel_name) = if first { (boy1, name1) } else { (boy2, name2) };
                    if *named {
                        sel_boy && sel_name == self.target
                    } else {
                        sel_boy
                    }
                }
            }
            ProtocolSpec::Draft => match (boy1, boy2) {
                (false, false) => false,
                (true, false) => name1 == self.target,
                (false, true) => name2 == self.target,
                (true, true) => {
                    if rng.next_u64() & 1 == 1 {
                        name1 == self.target
                    } else {
                        name2 == self.target
                    }
                }
            },
        };
        (observed, observed && two_boys)
    }

    /// Runs `count` trials on the substream assigned to `chunk`.
    fn run_chunk(&self, seed: u64, chunk: u64, count: u64) -> McEstimate {
        let mut rng = substream(seed, chunk);
        let mut est = McEstimate { a: 0, b: 0, trials: count };
        for _ in 0..count {
            let (obs, hit) = self.run_trial(&mut rng);
            est.b += u64::from(obs);
            est.a += u64::from(hit);
        }
        est
    }
}

/// Rescales exact rational weights to integers over their common
/// denominator; `None` when that leaves u64 range.
fn scale_to_common_denominator(weights: &[Rational]) -> Option<Vec<u64>> {
    use num::bigint::BigInt;
    use num::{Integer, ToPrimitive};
    let mut lcm = BigInt::from(1u8);
    for w in weights {
        lcm = lcm.lcm(w.denom());
    }
    let mut scaled = Vec::with_capacity(weights.len());
    let mut total = BigInt::from(0u8);
    for w in weights {
        let s = w.numer() * (&lcm / w.denom());
        total += &s;
        scaled.push(s.to_u64()?);
    }
    total.to_u64()?;
    Some(scaled)
}

fn weighted_pick(
    rng: &mut Xoshiro256StarStar,
    weights: &[u64],
    total: u64,
    skip: Option<u64>,
) -> u64 {
    let (total, skip) = match skip {
        Some(k) => (total - weights[k as usize], k as usize),
        None => (total, usize::MAX),
    };
    let mut u = uniform_below(rng, total);
    for (k, w) in weights.iter().enumerate() {
        if k == skip {
            continue;
        }
        if u < *w {
            return k as u64;
        }
        u -= w;
    }
    unreachable!("weights sum to the sampled total");
}

/// Simulates the scenario and returns the merged counters.
///
/// Deterministic in (scenario, params, trials, seed) and independent of
/// `workers`. A run whose observation never fired returns counters with
/// `b = 0`; the undefined ratio is the caller's to report.
pub fn simulate(s: ScenarioId, params: &ScenarioParams, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let sampler = TrialSampler::compile(&wiring(s, params)?)?;
    let chunks = cfg.trials.div_ceil(CHUNK_TRIALS);
    let count_of = |chunk: u64| {
        let start = chunk * CHUNK_TRIALS;
        CHUNK_TRIALS.min(cfg.trials - start)
    };
    if cfg.workers == 1 || chunks == 1 {
        let mut est = McEstimate::zero();
        for chunk in 0..chunks {
            est = est.merge(sampler.run_chunk(cfg.seed, chunk, count_of(chunk)));
        }
        return Ok(est);
    }
    let workers = cfg.workers.min(chunks as usize);
    let est = std::thread::scope(|scope| {
        let sampler = &sampler;
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                scope.spawn(move || {
                    let mut est = McEstimate::zero();
                    let mut chunk = w;
                    while chunk < chunks {
                        est = est.merge(sampler.run_chunk(cfg.seed, chunk, count_of(chunk)));
                        chunk += workers as u64;
                    }
                    est
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .fold(McEstimate::zero(), McEstimate::merge)
    });
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn cfg(trials: u64, seed: u64, workers: usize) -> McConfig {
        McConfig { trials, seed, workers }
    }

    fn sigma_ok(est: &McEstimate, exact: &Rational) -> bool {
        let ratio = est.ratio().unwrap().to_f64();
        let err = est.stderr().unwrap();
        (ratio - exact.to_f64()).abs() <= 4.0 * err
    }

    #[test]
    fn merge_adds_counters() {
        let x = McEstimate { a: 1, b: 2, trials: 4 };
        let y = McEstimate { a: 2, b: 3, trials: 6 };
        assert_eq!(x.merge(y), McEstimate { a: 3, b: 5, trials: 10 });
        assert_eq!(x.merge(McEstimate::zero()), x);
        assert_eq!(x.merge(y), y.merge(x));
    }

    #[test]
    fn ratio_undefined_until_b_positive() {
        let e = McEstimate { a: 0, b: 0, trials: 5 };
        assert_eq!(e.ratio(), None);
        assert_eq!(e.stderr(), None);
        let e = McEstimate { a: 1, b: 4, trials: 5 };
        assert_eq!(e.ratio(), Some(r(1, 4)));
    }

    #[test]
    fn bernoulli_draw_edges() {
        let mut rng = substream(0, 0);
        for _ in 0..32 {
            assert!(!bernoulli_draw(&mut rng, &Rational::zero()));
            assert!(bernoulli_draw(&mut rng, &Rational::one()));
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let params = ScenarioParams::default();
        let a = simulate(ScenarioId::TwoChild, &params, &cfg(100_000, 11, 1)).unwrap();
        let b = simulate(ScenarioId::TwoChild, &params, &cfg(100_000, 11, 1)).unwrap();
        assert_eq!(a, b);
        let c = simulate(ScenarioId::TwoChild, &params, &cfg(100_000, 12, 1)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn counters_do_not_depend_on_worker_count() {
        let params = ScenarioParams::default();
        for s in [ScenarioId::TwoChild, ScenarioId::Adam, ScenarioId::Draft] {
            let one = simulate(s, &params, &cfg(300_000, 9, 1)).unwrap();
            let two = simulate(s, &params, &cfg(300_000, 9, 2)).unwrap();
            let eight = simulate(s, &params, &cfg(300_000, 9, 8)).unwrap();
            assert_eq!(one, two);
            assert_eq!(one, eight);
        }
    }

    #[test]
    fn trials_are_distributed_exactly() {
        let params = ScenarioParams::default();
        let est = simulate(ScenarioId::TwoChild, &params, &cfg(CHUNK_TRIALS * 3 + 17, 1, 8))
            .unwrap();
        assert_eq!(est.trials, CHUNK_TRIALS * 3 + 17);
        assert!(est.b <= est.trials && est.a <= est.b);
    }

    #[test]
    fn two_child_concentrates_on_a_third() {
        let est = simulate(
            ScenarioId::TwoChild,
            &ScenarioParams::default(),
            &cfg(1_000_000, 2024, 4),
        )
        .unwrap();
        assert!(sigma_ok(&est, &r(1, 3)), "{est:?}");
    }

    #[test]
    fn named_scenario_concentrates_on_its_posterior() {
        let est = simulate(
            ScenarioId::Adam,
            &ScenarioParams::default(),
            &cfg(1_000_000, 7, 4),
        )
        .unwrap();
        assert!(sigma_ok(&est, &r(99, 199)), "{est:?}");
    }

    #[test]
    fn degenerate_p_matches_two_child() {
        let params = ScenarioParams { p: r(1, 1), ..Default::default() };
        let est = simulate(ScenarioId::Adam, &params, &cfg(100_000, 3, 2)).unwrap();
        assert!(sigma_ok(&est, &r(1, 3)), "{est:?}");
    }

    #[test]
    fn weighted_and_without_replacement_simulate() {
        let params = ScenarioParams::default();
        for s in [ScenarioId::AdamWithoutReplacement, ScenarioId::AdamWeighted] {
            let est = simulate(s, &params, &cfg(400_000, 5, 2)).unwrap();
            assert!(sigma_ok(&est, &r(1, 2)), "{s}: {est:?}");
        }
    }

    #[test]
    fn walk_variants_simulate() {
        let params = ScenarioParams::default();
        let est = simulate(ScenarioId::Walk, &params, &cfg(400_000, 6, 2)).unwrap();
        assert!(sigma_ok(&est, &r(1, 2)), "{est:?}");
        let est = simulate(ScenarioId::WalkBiased, &params, &cfg(400_000, 6, 2)).unwrap();
        assert!(sigma_ok(&est, &r(1, 3)), "{est:?}");
        let params = ScenarioParams { girl_weight: Some(r(1, 2)), ..Default::default() };
        let est = simulate(ScenarioId::Walk, &params, &cfg(400_000, 6, 2)).unwrap();
        assert!(sigma_ok(&est, &r(3, 7)), "{est:?}");
    }

    #[test]
    fn rename_equivalence_holds_statistically() {
        // The dup-allowed model must land on the no-dup posterior: renaming
        // the younger duplicate never changes whether a family has the name.
        let w = Wiring {
            model: NamingModel::BernoulliDupAllowed { p: r(1, 5) },
            protocol: Protocol::OracleNamedBoy,
            target: crate::family::NameId::TARGET,
        };
        let sampler = TrialSampler::compile(&w).unwrap();
        let mut est = McEstimate::zero();
        for chunk in 0..8 {
            est = est.merge(sampler.run_chunk(77, chunk, CHUNK_TRIALS));
        }
        let exact = r(9, 19); // (1 - p/2)/(2 - p/2) at p = 1/5
        assert!(sigma_ok(&est, &exact), "{est:?}");
    }

    #[test]
    fn darts_cannot_be_simulated() {
        let err = simulate(
            ScenarioId::DartsOverlapping,
            &ScenarioParams::default(),
            &cfg(10, 0, 1),
        )
        .unwrap_err();
        assert!(matches!(err, Error::UnsupportedScenario(_)));
    }

    #[test]
    fn zero_b_is_reported_not_erred() {
        // One trial of the named scenario at tiny p almost surely misses.
        let params = ScenarioParams { p: r(1, 1_000_000), ..Default::default() };
        let est = simulate(ScenarioId::Adam, &params, &cfg(1, 0, 1)).unwrap();
        assert_eq!(est.b, 0);
        assert_eq!(est.ratio(), None);
    }

    #[test]
    fn invalid_config_rejected() {
        let params = ScenarioParams::default();
        assert!(simulate(ScenarioId::TwoChild, &params, &cfg(0, 0, 1)).is_err());
        assert!(simulate(ScenarioId::TwoChild, &params, &cfg(10, 0, 0)).is_err());
    }
}

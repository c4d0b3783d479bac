//! Seeded Monte Carlo simulation of the memoryless erasure channel with
//! maximum-likelihood erasure decoding.
//!
//! Trial `t` of a run with seed `s` draws all of its randomness from
//! `ChaCha8Rng::seed_from_u64(s)` switched to stream `t`. Trials are therefore
//! independent of each other and of scheduling, and the aggregate counts are
//! identical for any thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::matrix::GfMatrix;

pub const DEFAULT_TRIAL_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelConfig {
    /// Per-coordinate erasure probability.
    pub p: f64,
    pub seed: u64,
    pub trials: u64,
}

impl ChannelConfig {
    pub fn new(p: f64, seed: u64, trials: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange(format!("erasure probability {p} is not in [0, 1]")));
        }
        if trials == 0 {
            return Err(Error::InvalidParams("at least one trial is required".into()));
        }
        Ok(ChannelConfig { p, seed, trials })
    }

    /// The analysis assumes `0 < p < 1/2`; other values are allowed but flagged.
    pub fn outside_usual_range(&self) -> bool {
        !(self.p > 0.0 && self.p < 0.5)
    }

    /// Random source for trial `index`.
    pub fn trial_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Received word: `None` marks an erasure.
pub type Received = Vec<Option<Elem>>;

/// Erases each coordinate of the encoded message independently with probability `p`.
pub fn transmit<R: Rng>(code: &LinearCode, message: &[Elem], p: f64, rng: &mut R) -> Received {
    code.encode(message).into_iter().map(|x| if rng.random_bool(p) { None } else { Some(x) }).collect()
}

pub fn erasure_mask(received: &[Option<Elem>]) -> u64 {
    received.iter().enumerate().fold(0, |m, (i, y)| if y.is_none() { m | 1 << i } else { m })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    /// More than one codeword agrees with the received word.
    pub ambiguous: bool,
    /// Dimension of the zero class; the candidate set has `q^dim` codewords.
    pub zero_class_dim: usize,
    pub candidates: u128,
    pub codeword: Vec<Elem>,
}

/// Maximum-likelihood decoding: solves `m G = y` on the unerased coordinates
/// and returns a codeword chosen uniformly among all solutions.
pub fn ml_erasure_decode<R: Rng>(code: &LinearCode, received: &[Option<Elem>], rng: &mut R) -> Result<Decoded> {
    if received.len() != code.n() {
        return Err(Error::DimensionMismatch(format!("received {} symbols for n = {}", received.len(), code.n())));
    }
    let f = code.field();
    let k = code.k();
    let g = code.generator();
    let kept: Vec<usize> = (0..code.n()).filter(|&c| received[c].is_some()).collect();
    // augmented system G_kept^T m^T = y_kept^T, one equation per kept coordinate
    let mut data = Vec::with_capacity(kept.len() * (k + 1));
    for &c in &kept {
        data.extend((0..k).map(|r| g.get(r, c)));
        data.push(received[c].unwrap_or(0));
    }
    let rref = GfMatrix::from_elems(f, kept.len(), k + 1, data).rref();
    if rref.pivots.last() == Some(&k) {
        return Err(Error::Inadmissible);
    }
    let free: Vec<usize> = (0..k).filter(|c| !rref.pivots.contains(c)).collect();
    let q = f.order();
    let mut message = vec![0 as Elem; k];
    for &c in &free {
        message[c] = rng.random_range(0..q) as Elem;
    }
    for (row, &pc) in rref.pivots.iter().enumerate() {
        let mut v = rref.matrix.get(row, k);
        for &c in &free {
            v = f.sub(v, f.mul(rref.matrix.get(row, c), message[c]));
        }
        message[pc] = v;
    }
    let dim = free.len();
    Ok(Decoded {
        ambiguous: dim > 0,
        zero_class_dim: dim,
        candidates: (q as u128).pow(dim as u32),
        codeword: code.encode(&message),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub erased: u64,
    pub zero_class_dim: usize,
    pub ambiguous: bool,
    pub decode_correct: bool,
}

/// One channel use with a uniformly drawn message.
pub fn run_trial(code: &LinearCode, cfg: &ChannelConfig, index: u64) -> Result<TrialOutcome> {
    let mut rng = cfg.trial_rng(index);
    let q = code.q();
    let message: Vec<Elem> = (0..code.k()).map(|_| rng.random_range(0..q) as Elem).collect();
    let sent = code.encode(&message);
    let received = transmit(code, &message, cfg.p, &mut rng);
    let decoded = ml_erasure_decode(code, &received, &mut rng)?;
    Ok(TrialOutcome {
        erased: erasure_mask(&received),
        zero_class_dim: decoded.zero_class_dim,
        ambiguous: decoded.ambiguous,
        decode_correct: decoded.codeword == sent,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub trials: u64,
    pub ambiguous: u64,
    pub errors: u64,
    /// `(trials, correct decodes)` per zero-class dimension.
    pub by_dimension: Vec<(u64, u64)>,
}

impl Tally {
    fn add(mut self, t: &TrialOutcome) -> Self {
        self.trials += 1;
        self.ambiguous += u64::from(t.ambiguous);
        self.errors += u64::from(!t.decode_correct);
        let bucket = &mut self.by_dimension[t.zero_class_dim];
        bucket.0 += 1;
        bucket.1 += u64::from(t.decode_correct);
        self
    }

    fn merge(mut self, other: Self) -> Self {
        self.trials += other.trials;
        self.ambiguous += other.ambiguous;
        self.errors += other.errors;
        for (a, b) in self.by_dimension.iter_mut().zip(other.by_dimension) {
            a.0 += b.0;
            a.1 += b.1;
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    #[serde(rename = "P_amb_hat")]
    pub amb_hat: f64,
    #[serde(rename = "P_dec_hat")]
    pub dec_hat: f64,
    pub se_amb: f64,
    pub se_dec: f64,
    pub tally: Tally,
}

fn binomial_se(p_hat: f64, n: u64) -> f64 {
    (p_hat * (1.0 - p_hat) / n as f64).sqrt()
}

pub fn estimate(code: &LinearCode, cfg: &ChannelConfig) -> Result<Estimate> {
    estimate_with_budget(code, cfg, DEFAULT_TRIAL_BUDGET)
}

pub fn estimate_with_budget(code: &LinearCode, cfg: &ChannelConfig, budget: u64) -> Result<Estimate> {
    if cfg.trials > budget {
        return Err(Error::BudgetExceeded {
            what: "simulation trials",
            needed: cfg.trials.into(),
            limit: budget.into(),
        });
    }
    let empty = || Tally { by_dimension: vec![(0, 0); code.k() + 1], ..Tally::default() };
    let tally = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(code, cfg, t))
        .try_fold(empty, |acc, t| t.map(|t| acc.add(&t)))
        .try_reduce(empty, |a, b| Ok(a.merge(b)))?;
    let n = tally.trials;
    let amb_hat = tally.ambiguous as f64 / n as f64;
    let dec_hat = tally.errors as f64 / n as f64;
    Ok(Estimate {
        p: cfg.p,
        trials: n,
        seed: cfg.seed,
        amb_hat,
        dec_hat,
        se_amb: binomial_se(amb_hat, n),
        se_dec: binomial_se(dec_hat, n),
        tally,
    })
}

/// Distance of an estimate from the exact value in units of the exact
/// binomial standard deviation `sqrt(P(1-P)/N)`.
pub fn z_score(hat: f64, exact: f64, trials: u64) -> f64 {
    let sigma = binomial_se(exact, trials);
    if sigma == 0.0 {
        if hat == exact {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (hat - exact) / sigma
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    #[serde(rename = "P_amb_hat")]
    pub amb_hat: f64,
    #[serde(rename = "P_dec_hat")]
    pub dec_hat: f64,
    pub se_amb: f64,
    pub se_dec: f64,
    #[serde(rename = "P_amb_exact")]
    pub amb_exact: Option<f64>,
    #[serde(rename = "P_dec_exact")]
    pub dec_exact: Option<f64>,
    pub z_amb: Option<f64>,
    pub z_dec: Option<f64>,
    pub outside_usual_range: bool,
}

impl SimulationReport {
    pub fn new(est: &Estimate, exact: Option<(f64, f64)>) -> Self {
        SimulationReport {
            p: est.p,
            trials: est.trials,
            seed: est.seed,
            amb_hat: est.amb_hat,
            dec_hat: est.dec_hat,
            se_amb: est.se_amb,
            se_dec: est.se_dec,
            amb_exact: exact.map(|e| e.0),
            dec_exact: exact.map(|e| e.1),
            z_amb: exact.map(|e| z_score(est.amb_hat, e.0, est.trials)),
            z_dec: exact.map(|e| z_score(est.dec_hat, e.1, est.trials)),
            outside_usual_range: !(est.p > 0.0 && est.p < 0.5),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn worked_code() -> LinearCode {
        LinearCode::from_generator(&make_field(2).unwrap(), &[[1u32, 0, 0], [0, 1, 1]]).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn config_validation() {
        assert!(ChannelConfig::new(1.5, 0, 1).is_err());
        assert!(ChannelConfig::new(0.5, 0, 0).is_err());
        assert!(ChannelConfig::new(0.0, 0, 1).unwrap().outside_usual_range());
        assert!(!ChannelConfig::new(0.25, 0, 1).unwrap().outside_usual_range());
    }

    #[test]
    fn channel_extremes() {
        let c = worked_code();
        let msg = [1, 1];
        let sent: Vec<Option<Elem>> = c.encode(&msg).into_iter().map(Some).collect();
        assert_eq!(transmit(&c, &msg, 0.0, &mut rng()), sent);
        assert_eq!(transmit(&c, &msg, 1.0, &mut rng()), vec![None; 3]);
    }

    #[test]
    fn same_seed_same_patterns() {
        let c = worked_code();
        let cfg = ChannelConfig::new(0.3, 99, 50).unwrap();
        let a: Vec<_> = (0..50).map(|t| run_trial(&c, &cfg, t).unwrap()).collect();
        let b: Vec<_> = (0..50).map(|t| run_trial(&c, &cfg, t).unwrap()).collect();
        assert_eq!(a, b);
        let other = ChannelConfig { seed: 100, ..cfg };
        let d: Vec<_> = (0..50).map(|t| run_trial(&c, &other, t).unwrap().erased).collect();
        assert_ne!(a.iter().map(|t| t.erased).collect::<Vec<_>>(), d);
    }

    #[test]
    fn decoding_examples() {
        let c = worked_code();
        let word = c.encode(&[1, 1]);
        let clean: Vec<Option<Elem>> = word.iter().copied().map(Some).collect();
        let d = ml_erasure_decode(&c, &clean, &mut rng()).unwrap();
        assert!(!d.ambiguous);
        assert_eq!(d.codeword, word);
        // erase coordinates 2 and 3 (1-based)
        let partial = vec![Some(word[0]), None, None];
        let d = ml_erasure_decode(&c, &partial, &mut rng()).unwrap();
        assert_eq!((d.ambiguous, d.candidates), (true, 2));
        let none = vec![None; 3];
        assert_eq!(ml_erasure_decode(&c, &none, &mut rng()).unwrap().candidates, 4);
        // 0 1 0 is not consistent with any codeword
        let bad = vec![Some(0), Some(1), Some(0)];
        assert!(matches!(ml_erasure_decode(&c, &bad, &mut rng()), Err(Error::Inadmissible)));
    }

    #[test]
    fn ambiguous_decoding_picks_every_candidate() {
        let f = make_field(3).unwrap();
        let c = LinearCode::from_generator(&f, &[[1u32, 0, 1], [0, 1, 1]]).unwrap();
        let received = vec![None, None, Some(0)];
        let mut seen = std::collections::BTreeSet::new();
        let mut r = rng();
        for _ in 0..200 {
            let d = ml_erasure_decode(&c, &received, &mut r).unwrap();
            assert_eq!(d.candidates, 3);
            assert_eq!(d.codeword[2], 0);
            seen.insert(d.codeword);
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn zero_probability_gives_zero_estimates() {
        let est = estimate(&worked_code(), &ChannelConfig::new(0.0, 1, 1000).unwrap()).unwrap();
        assert_eq!((est.amb_hat, est.dec_hat), (0.0, 0.0));
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = ChannelConfig::new(0.1, 1, 1000).unwrap();
        assert!(matches!(estimate_with_budget(&worked_code(), &cfg, 999), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn estimate_is_thread_count_independent() {
        let c = worked_code();
        let cfg = ChannelConfig::new(0.4, 5, 20_000).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| estimate(&c, &cfg).unwrap());
        let b = four.install(|| estimate(&c, &cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn worked_code_estimate_near_exact() {
        let cfg = ChannelConfig::new(0.5, 2024, 200_000).unwrap();
        let est = estimate(&worked_code(), &cfg).unwrap();
        assert!(z_score(est.amb_hat, 0.625, est.trials).abs() <= 3.0, "{est:?}");
    }

    #[test]
    fn z_scores() {
        assert_eq!(z_score(0.0, 0.0, 10), 0.0);
        assert!(z_score(0.1, 0.0, 10).is_infinite());
        assert!((z_score(0.6, 0.5, 100) - 2.0).abs() < 1e-12);
    }
}

//! The compact genetic algorithm.
//!
//! A [`FrequencyModel`] holds one marginal probability per bit. Each
//! iteration samples two offspring, ranks them by fitness (the first sample
//! wins ties), and moves every frequency where they disagree by `1/K`
//! towards the winner, clamped into `[1/n, 1 - 1/n]`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::fitness::Unitation;

/// Iterations between from-scratch recomputations of the cached sums.
const REFRESH_INTERVAL: u32 = 1 << 16;

/// A sampled offspring with its cached one-count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitstring {
    bits: Vec<bool>,
    ones: usize,
}

impl Bitstring {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        let ones = bits.iter().filter(|&&b| b).count();
        Self { bits, ones }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
            ones: 0,
        }
    }

    #[inline]
    pub fn ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Location of the two offspring relative to the cliff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventClass {
    /// Both at most `threshold` ones.
    L,
    /// Both above `threshold`.
    R,
    /// One on each side.
    M,
}

impl EventClass {
    pub fn classify(ones_x: usize, ones_y: usize, threshold: usize) -> Self {
        match (ones_x > threshold, ones_y > threshold) {
            (false, false) => EventClass::L,
            (true, true) => EventClass::R,
            _ => EventClass::M,
        }
    }

    pub fn index(self) -> usize {
        match self {
            EventClass::L => 0,
            EventClass::R => 1,
            EventClass::M => 2,
        }
    }

    pub const ALL: [EventClass; 3] = [EventClass::L, EventClass::R, EventClass::M];
}

impl fmt::Display for EventClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EventClass::L => "L",
            EventClass::R => "R",
            EventClass::M => "M",
        };
        f.write_str(s)
    }
}

/// Trace of one iteration.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub t: u64,
    pub potential_before: f64,
    pub potential_after: f64,
    pub variance_before: f64,
    pub variance_after: f64,
    /// One-count of the reinforced offspring.
    pub ones_x: usize,
    /// One-count of the other offspring.
    pub ones_y: usize,
    /// Relative to `2n/3`.
    pub event_class: EventClass,
    pub delta_potential: f64,
    pub optimum_sampled: bool,
    pub evaluations_used: u32,
}

/// Outcome of a run until the optimum is sampled or the budget runs out.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    /// Fitness evaluations up to and including the first optimal sample,
    /// or the full budget when censored.
    pub evaluations: u64,
    pub censored: bool,
    /// Iterations started, including a final partial one.
    pub iterations: u64,
    /// Seed of the stream the run used, when known.
    pub seed: Option<u64>,
    pub final_potential: f64,
    pub final_variance: f64,
}

/// The cGA's probabilistic model.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyModel {
    n: usize,
    k: f64,
    step_size: f64,
    lower: f64,
    upper: f64,
    freqs: Vec<f64>,
    potential: f64,
    variance: f64,
    iteration: u64,
    since_refresh: u32,
}

impl FrequencyModel {
    /// All frequencies at 1/2.
    pub fn new(n: usize, k: f64) -> Result<Self> {
        Self::check_params(n, k)?;
        Ok(Self::from_valid(n, k, vec![0.5; n]))
    }

    /// A model with explicit frequencies, each within `[1/n, 1 - 1/n]`.
    pub fn from_frequencies(freqs: Vec<f64>, k: f64) -> Result<Self> {
        let n = freqs.len();
        Self::check_params(n, k)?;
        let (lower, upper) = borders(n);
        if let Some((i, p)) = freqs
            .iter()
            .enumerate()
            .find(|(_, &p)| !(lower..=upper).contains(&p))
        {
            return Err(Error::param(format!(
                "frequency {i} = {p} outside [{lower}, {upper}]"
            )));
        }
        Ok(Self::from_valid(n, k, freqs))
    }

    fn check_params(n: usize, k: f64) -> Result<()> {
        if n < 2 {
            return Err(Error::param(format!("n must be at least 2 (got {n})")));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::param(format!(
                "update strength K must be positive and finite (got {k})"
            )));
        }
        Ok(())
    }

    fn from_valid(n: usize, k: f64, freqs: Vec<f64>) -> Self {
        let (lower, upper) = borders(n);
        let mut model = Self {
            n,
            k,
            step_size: 1.0 / k,
            lower,
            upper,
            freqs,
            potential: 0.0,
            variance: 0.0,
            iteration: 0,
            since_refresh: 0,
        };
        model.refresh();
        model
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.freqs
    }

    pub fn borders(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    /// Iterations performed on this model so far.
    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// Sum of frequencies (maintained incrementally).
    #[inline]
    pub fn potential(&self) -> f64 {
        self.potential
    }

    /// `sum p_i (1 - p_i)` (maintained incrementally).
    #[inline]
    pub fn sampling_variance(&self) -> f64 {
        self.variance
    }

    /// Recomputes the cached potential and variance from the frequencies.
    pub fn refresh(&mut self) {
        self.potential = crate::analytics::potential(&self.freqs);
        self.variance = crate::analytics::sampling_variance(&self.freqs);
        self.since_refresh = 0;
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Bitstring {
        let mut x = Bitstring::zeros(self.n);
        self.sample_into(rng, &mut x);
        x
    }

    /// Samples into an existing buffer, resizing it if necessary.
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, x: &mut Bitstring) {
        x.bits.resize(self.n, false);
        let mut ones = 0;
        for (bit, &p) in x.bits.iter_mut().zip(&self.freqs) {
            let b = rng.gen::<f64>() < p;
            *bit = b;
            ones += b as usize;
        }
        x.ones = ones;
    }

    #[inline]
    fn moved(&self, p: f64, up: bool) -> f64 {
        let q = if up { p + self.step_size } else { p - self.step_size };
        q.clamp(self.lower, self.upper)
    }

    /// Change of potential if `winner` were reinforced against `loser`.
    fn update_delta(&self, winner: &Bitstring, loser: &Bitstring) -> f64 {
        let mut delta = 0.0;
        for ((&p, &a), &b) in self.freqs.iter().zip(&winner.bits).zip(&loser.bits) {
            if a != b {
                delta += self.moved(p, a) - p;
            }
        }
        delta
    }

    fn apply_update(&mut self, winner: &Bitstring, loser: &Bitstring) -> f64 {
        let mut delta = 0.0;
        let mut dvar = 0.0;
        for i in 0..self.n {
            let a = winner.bits[i];
            if a != loser.bits[i] {
                let p = self.freqs[i];
                let q = self.moved(p, a);
                self.freqs[i] = q;
                delta += q - p;
                dvar += q * (1.0 - q) - p * (1.0 - p);
            }
        }
        self.potential += delta;
        self.variance += dvar;
        delta
    }

    #[inline]
    fn cliff_threshold(&self) -> usize {
        2 * self.n / 3
    }

    /// Ranks and reinforces two given offspring (`x` sampled first).
    ///
    /// On return `x` holds the reinforced offspring.
    pub fn step_with_offspring<F: Unitation + ?Sized>(
        &mut self,
        f: &F,
        x: &mut Bitstring,
        y: &mut Bitstring,
    ) -> StepRecord {
        assert_eq!(f.n(), self.n, "fitness function and model disagree on n");
        assert!(x.len() == self.n && y.len() == self.n, "offspring length != n");
        let optimum_sampled = f.is_optimal(x.ones) || f.is_optimal(y.ones);
        if f.value(x.ones) < f.value(y.ones) {
            std::mem::swap(x, y);
        }
        let t = self.iteration;
        let potential_before = self.potential;
        let variance_before = self.variance;
        let delta = self.apply_update(x, y);
        self.iteration += 1;
        self.since_refresh += 1;
        if self.since_refresh >= REFRESH_INTERVAL {
            self.refresh();
        }
        StepRecord {
            t,
            potential_before,
            potential_after: potential_before + delta,
            variance_before,
            variance_after: self.variance,
            ones_x: x.ones,
            ones_y: y.ones,
            event_class: EventClass::classify(x.ones, y.ones, self.cliff_threshold()),
            delta_potential: delta,
            optimum_sampled,
            evaluations_used: 2,
        }
    }

    /// One full iteration using caller-provided offspring buffers.
    pub fn step_reusing<F: Unitation + ?Sized, R: Rng + ?Sized>(
        &mut self,
        f: &F,
        rng: &mut R,
        x: &mut Bitstring,
        y: &mut Bitstring,
    ) -> StepRecord {
        self.sample_into(rng, x);
        self.sample_into(rng, y);
        self.step_with_offspring(f, x, y)
    }

    /// One full iteration: sample two offspring, rank, reinforce.
    pub fn step<F: Unitation + ?Sized, R: Rng + ?Sized>(&mut self, f: &F, rng: &mut R) -> StepRecord {
        let mut x = Bitstring::zeros(self.n);
        let mut y = Bitstring::zeros(self.n);
        self.step_reusing(f, rng, &mut x, &mut y)
    }

    /// Samples one iteration from the current state without changing it.
    ///
    /// The event class is taken relative to `threshold`.
    pub fn preview_step<F: Unitation + ?Sized, R: Rng + ?Sized>(
        &self,
        f: &F,
        rng: &mut R,
        x: &mut Bitstring,
        y: &mut Bitstring,
        threshold: usize,
    ) -> (f64, EventClass) {
        self.sample_into(rng, x);
        self.sample_into(rng, y);
        let (winner, loser) = if f.value(x.ones) < f.value(y.ones) {
            (&*y, &*x)
        } else {
            (&*x, &*y)
        };
        (
            self.update_delta(winner, loser),
            EventClass::classify(winner.ones, loser.ones, threshold),
        )
    }

    /// Runs until an offspring is optimal or `max_evaluations` is spent.
    ///
    /// Each offspring is checked as soon as it is sampled, so the first
    /// offspring of iteration `t` (0-based) is evaluation `2t + 1`. The run
    /// stops right there; the iteration is not completed.
    pub fn run<F: Unitation + ?Sized, R: Rng + ?Sized>(
        &mut self,
        f: &F,
        rng: &mut R,
        max_evaluations: u64,
    ) -> Result<RunResult> {
        self.run_observed(f, rng, max_evaluations, |_| {})
    }

    /// [`run`](Self::run) with a freshly seeded [`CgaRng`](crate::rng::CgaRng).
    pub fn run_seeded<F: Unitation + ?Sized>(
        &mut self,
        f: &F,
        seed: u64,
        max_evaluations: u64,
    ) -> Result<RunResult> {
        let mut rng = crate::rng::rng_from_seed(seed);
        let mut result = self.run(f, &mut rng, max_evaluations)?;
        result.seed = Some(seed);
        Ok(result)
    }

    /// [`run`](Self::run), handing every completed iteration to `observe`.
    pub fn run_observed<F, R, O>(
        &mut self,
        f: &F,
        rng: &mut R,
        max_evaluations: u64,
        mut observe: O,
    ) -> Result<RunResult>
    where
        F: Unitation + ?Sized,
        R: Rng + ?Sized,
        O: FnMut(&StepRecord),
    {
        if max_evaluations < 2 {
            return Err(Error::param(format!(
                "max_evaluations must be at least 2 (got {max_evaluations})"
            )));
        }
        assert_eq!(f.n(), self.n, "fitness function and model disagree on n");
        let mut x = Bitstring::zeros(self.n);
        let mut y = Bitstring::zeros(self.n);
        let mut evaluations = 0u64;
        let mut iterations = 0u64;
        let censored = loop {
            if evaluations >= max_evaluations {
                break true;
            }
            iterations += 1;
            self.sample_into(rng, &mut x);
            evaluations += 1;
            if f.is_optimal(x.ones) {
                break false;
            }
            if evaluations >= max_evaluations {
                break true;
            }
            self.sample_into(rng, &mut y);
            evaluations += 1;
            if f.is_optimal(y.ones) {
                break false;
            }
            let record = self.step_with_offspring(f, &mut x, &mut y);
            observe(&record);
        };
        Ok(RunResult {
            evaluations,
            censored,
            iterations,
            seed: None,
            final_potential: self.potential,
            final_variance: self.variance,
        })
    }

    /// Like [`run`](Self::run) with a budget of `max_iterations` iterations,
    /// returning every `record_every`-th record counted from the start of the
    /// trace.
    pub fn trace_run<F: Unitation + ?Sized, R: Rng + ?Sized>(
        &mut self,
        f: &F,
        rng: &mut R,
        max_iterations: u64,
        record_every: u64,
    ) -> Result<Vec<StepRecord>> {
        if record_every == 0 {
            return Err(Error::param("record_every must be at least 1"));
        }
        if max_iterations == 0 {
            return Ok(Vec::new());
        }
        let start = self.iteration;
        let mut records = Vec::new();
        self.run_observed(f, rng, 2 * max_iterations, |rec| {
            if (rec.t - start).is_multiple_of(record_every) {
                records.push(rec.clone());
            }
        })?;
        Ok(records)
    }
}

fn borders(n: usize) -> (f64, f64) {
    let lower = 1.0 / n as f64;
    (lower, 1.0 - lower)
}

//! Seeded randomized cross-checks between the exact closed forms and the
//! dense-matrix oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exactnum::Rational;
use crate::io::pair_file_json;
use crate::minimax::{classify, full_report, minimax_entangled, minimax_no_ancilla};
use crate::oracle::{apply_channel, bell_output, helstrom_risk, minimax_states};
use crate::pauli::{ChannelPair, PauliChannel};
use crate::pwa::MaxPoint;
use crate::risk::{bayes_risk_bloch, bayes_risk_entangled, bayes_risk_no_ancilla, Axis, BlochVector};

pub const BELL_TOL: f64 = 1e-12;
pub const QUBIT_TOL: f64 = 1e-9;
pub const EQUALIZER_RISK_TOL: f64 = 1e-8;
pub const EQUALIZER_RESIDUAL_TOL: f64 = 1e-7;
pub const PRIOR_TOL: f64 = 1e-6;
pub const EIGENSTATE_TOL: f64 = 1e-12;
pub const STRUCTURAL_GRID: i64 = 200;

/// Random weights k/n with a random small denominator, so ties and zeros occur often.
pub fn random_channel<R: Rng>(rng: &mut R) -> PauliChannel {
    let n: i64 = rng.gen_range(2..=24);
    let mut cuts = [rng.gen_range(0..=n), rng.gen_range(0..=n), rng.gen_range(0..=n)];
    cuts.sort();
    let counts = [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], n - cuts[2]];
    PauliChannel::new(counts.map(|k| Rational::new(k, n).expect("nonzero denominator"))).expect("valid weights")
}

pub fn random_pair<R: Rng>(rng: &mut R) -> ChannelPair {
    ChannelPair::new(random_channel(rng), random_channel(rng)).expect("valid pair")
}

/// Channel 1 avoids Pauli β entirely (all other weights positive); channel 2 is σ_β.
pub fn random_perfect_pair<R: Rng>(rng: &mut R) -> ChannelPair {
    let beta = rng.gen_range(0..4usize);
    let n: i64 = rng.gen_range(3..=30);
    let a = rng.gen_range(1..=n - 2);
    let b = rng.gen_range(1..=n - a - 1);
    let mut rest = [a, b, n - a - b].into_iter();
    let q1 =
        std::array::from_fn(
            |i| if i == beta { Rational::ZERO } else { Rational::new(rest.next().unwrap(), n).unwrap() },
        );
    let q2 = std::array::from_fn(|i| if i == beta { Rational::ONE } else { Rational::ZERO });
    ChannelPair::from_probabilities(q1, q2).expect("valid pair")
}

pub fn random_bloch<R: Rng>(rng: &mut R) -> BlochVector {
    let theta = (1.0 - 2.0 * rng.gen::<f64>()).clamp(-1.0, 1.0).acos();
    BlochVector::from_angles(theta, 2.0 * std::f64::consts::PI * rng.gen::<f64>())
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    /// Used as the first trial instead of a random pair.
    pub pair: Option<ChannelPair>,
    pub priors_per_pair: usize,
    pub bloch_states_per_pair: usize,
}

impl VerifyConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        VerifyConfig { trials, seed, pair: None, priors_per_pair: 20, bloch_states_per_pair: 50 }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub tolerance: f64,
    pub checks: usize,
    pub passed: usize,
    pub max_deviation: f64,
    /// The first failing pair as pair-file JSON, with the reason.
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str, tolerance: f64) -> Self {
        SuiteResult { name, tolerance, ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.passed == self.checks
    }

    fn record(&mut self, deviation: f64, pass: bool, pair: &ChannelPair, why: impl FnOnce() -> String) {
        self.checks += 1;
        if deviation.is_finite() {
            self.max_deviation = self.max_deviation.max(deviation);
        }
        if pass {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(format!("{} ({})", pair_file_json(None, pair), why()));
        }
    }

    fn within(&mut self, deviation: f64, pair: &ChannelPair, what: &str) {
        let tol = self.tolerance;
        self.record(deviation, deviation < tol, pair, || format!("{what}: deviation {deviation:e} ≥ {tol:e}"));
    }

    fn holds(&mut self, pass: bool, pair: &ChannelPair, why: impl FnOnce() -> String) {
        self.record(0.0, pass, pair, why);
    }

    fn merge(&mut self, other: SuiteResult) {
        self.checks += other.checks;
        self.passed += other.passed;
        self.max_deviation = self.max_deviation.max(other.max_deviation);
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub trials: usize,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = format!("verify: {} trials, seed {}\n", self.trials, self.seed);
        for s in &self.suites {
            out.push_str(&format!(
                "{:<5} {:<26} {:>7}/{:<7} max deviation {:.3e} (tolerance {:.0e})\n",
                if s.ok() { "PASS" } else { "FAIL" },
                s.name,
                s.passed,
                s.checks,
                s.max_deviation,
                s.tolerance
            ));
            if let Some(f) = &s.first_failure {
                out.push_str(&format!("      first failure: {f}\n"));
            }
        }
        out
    }
}

fn fresh_suites() -> Vec<SuiteResult> {
    vec![
        SuiteResult::new("entangled_vs_bell_oracle", BELL_TOL),
        SuiteResult::new("bloch_vs_qubit_oracle", QUBIT_TOL),
        SuiteResult::new("case_analysis_vs_exact", 0.0),
        SuiteResult::new("structural", 0.0),
        SuiteResult::new("equalizer_vs_exact", EQUALIZER_RISK_TOL),
        SuiteResult::new("no_ancilla_inputs", QUBIT_TOL),
        SuiteResult::new("bloch_floor", QUBIT_TOL),
        SuiteResult::new("perfect_family", 0.0),
    ]
}

fn priors<R: Rng>(rng: &mut R, pair: &ChannelPair, count: usize) -> Vec<f64> {
    let mut ps: Vec<f64> = pair.breakpoints().map(|(_, p)| p.to_f64()).take(count).collect();
    while ps.len() < count {
        ps.push(rng.gen());
    }
    ps
}

fn swapped_max(m: &MaxPoint) -> Result<(Rational, Rational)> {
    let hi = m.right_end();
    Ok((Rational::ONE.checked_sub(hi)?, Rational::ONE.checked_sub(m.p_star)?))
}

fn check_structural(s: &mut SuiteResult, pair: &ChannelPair) -> Result<()> {
    let entangled = bayes_risk_entangled(pair)?;
    let no_ancilla = bayes_risk_no_ancilla(pair)?;
    let first = pair.entries()[0].p_alpha.expect("some slope is positive");
    let last = pair.breakpoints().map(|(_, p)| p).last().expect("some slope is positive");
    for i in 0..STRUCTURAL_GRID {
        let p = Rational::new(i, STRUCTURAL_GRID - 1)?;
        let (rb, rpb) = (entangled.eval(p)?, no_ancilla.eval(p)?);
        let floor = p.min(p.complement()?);
        s.holds(rb <= rpb && rpb <= floor, pair, || format!("ordering fails at p = {p}: {rb}, {rpb}, {floor}"));
        if p.is_positive() && p < first {
            s.holds(rb == p, pair, || format!("R_B({p}) = {rb}, expected p"));
        }
        if p < Rational::ONE && p > last {
            let want = p.complement()?;
            s.holds(rb == want, pair, || format!("R_B({p}) = {rb}, expected 1 − p"));
        }
    }
    for (name, f) in [("R_B", &entangled), ("R'_B", &no_ancilla)] {
        let bad = f.concavity_violation()?;
        s.holds(bad.is_none(), pair, || format!("{name} not concave at {}", bad.unwrap()));
    }
    let swapped = pair.swapped()?;
    for (name, m, ms) in [
        ("R_M", minimax_entangled(pair)?, minimax_entangled(&swapped)?),
        ("R'_M", minimax_no_ancilla(pair)?, minimax_no_ancilla(&swapped)?),
    ] {
        let (want_lo, want_hi) = swapped_max(&m)?;
        s.holds(ms.value == m.value && ms.p_star == want_lo && ms.right_end() == want_hi, pair, || {
            format!("{name} swap: [{}, {}] did not map to [{want_lo}, {want_hi}]", ms.p_star, ms.right_end())
        });
    }
    Ok(())
}

fn check_pair(pair: &ChannelPair, seed: u64, config: &VerifyConfig) -> Vec<SuiteResult> {
    let mut suites = fresh_suites();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Err(e) = check_pair_into(&mut suites, pair, &mut rng, config) {
        // Any library error on a valid pair is itself a failure.
        let s = &mut suites[2];
        s.holds(false, pair, || format!("error: {e}"));
    }
    suites
}

fn check_pair_into(
    suites: &mut [SuiteResult],
    pair: &ChannelPair,
    rng: &mut ChaCha8Rng,
    config: &VerifyConfig,
) -> Result<()> {
    let (b1, b2) = (bell_output(pair.channel1()), bell_output(pair.channel2()));
    let entangled = bayes_risk_entangled(pair)?;
    for p in priors(rng, pair, config.priors_per_pair) {
        let dev = (entangled.eval_f64(p) - helstrom_risk(&b1, &b2, p)?).abs();
        suites[0].within(dev, pair, &format!("p = {p}"));
    }

    for _ in 0..config.priors_per_pair {
        let (state, p) = (random_bloch(rng), rng.gen::<f64>());
        let oracle =
            helstrom_risk(&apply_channel(pair.channel1(), &state), &apply_channel(pair.channel2(), &state), p)?;
        let dev = (bayes_risk_bloch(pair, p, &state) - oracle).abs();
        suites[1].within(dev, pair, &format!("p = {p}, n = {:?}", state.n));
    }

    let report = full_report(pair);
    let (rm, rpm) = (minimax_entangled(pair)?, minimax_no_ancilla(pair)?);
    let helps_exact = rm.value < rpm.value;
    let label = classify(pair)?;
    suites[2].holds(label.entanglement_required() == helps_exact, pair, || {
        format!("case {label} disagrees with R_M = {}, R'_M = {}", rm.value, rpm.value)
    });
    let swapped = classify(&pair.swapped()?)?;
    suites[2].holds(swapped.entanglement_required() == helps_exact, pair, || {
        format!("swapped case {swapped} disagrees with R_M = {}, R'_M = {}", rm.value, rpm.value)
    });
    let report = report?;

    check_structural(&mut suites[3], pair)?;

    let m = minimax_states(&b1, &b2)?;
    suites[4].within((m.risk - rm.value.to_f64()).abs(), pair, "minimax risk");
    let (lo, hi) = (rm.p_star.to_f64(), rm.right_end().to_f64());
    let prior_dev = (lo - m.p_star).max(m.p_star - hi).max(0.0);
    suites[4].record(prior_dev, prior_dev < PRIOR_TOL, pair, || format!("p_star {} outside [{lo}, {hi}]", m.p_star));
    let residual = m.equalizer_residual;
    suites[4].record(residual, residual < EQUALIZER_RESIDUAL_TOL, pair, || format!("equalizer residual {residual:e}"));
    let povm_ok = m.povm.check();
    suites[4].holds(povm_ok.is_ok(), pair, || format!("{:?}", povm_ok.err()));

    let inputs = &report.optimal_inputs_no_ancilla;
    let target = rpm.value.to_f64();
    let p = inputs.p_star_prime.to_f64();
    suites[5].holds(!inputs.states.is_empty(), pair, || "no optimal inputs".into());
    for state in &inputs.states {
        let closed = bayes_risk_bloch(pair, p, state);
        suites[5].within((closed - target).abs(), pair, "closed-form risk at p'*");
        let oracle = helstrom_risk(&apply_channel(pair.channel1(), state), &apply_channel(pair.channel2(), state), p)?;
        suites[5].within((oracle - target).abs(), pair, "oracle risk at p'*");
    }

    let no_ancilla = bayes_risk_no_ancilla(pair)?;
    let p: f64 = rng.gen();
    let floor = no_ancilla.eval_f64(p);
    for _ in 0..config.bloch_states_per_pair {
        let state = random_bloch(rng);
        let below = floor - bayes_risk_bloch(pair, p, &state);
        suites[6].within(below.max(0.0), pair, &format!("state beats R'_B at p = {p}"));
    }
    let best = Axis::ALL
        .iter()
        .flat_map(|&a| [true, false].map(|s| BlochVector::eigenstate(a, s)))
        .map(|s| bayes_risk_bloch(pair, p, &s))
        .fold(f64::INFINITY, f64::min);
    let dev = (best - floor).abs();
    suites[6].record(dev, dev < EIGENSTATE_TOL, pair, || format!("eigenstates miss R'_B by {dev:e}"));

    let perfect = random_perfect_pair(rng);
    let (pm, ppm) = (minimax_entangled(&perfect)?, minimax_no_ancilla(&perfect)?);
    suites[7].holds(pm.value.is_zero() && ppm.value.is_positive(), &perfect, || {
        format!("R_M = {}, R'_M = {}", pm.value, ppm.value)
    });
    Ok(())
}

/// Run every suite on `config.trials` pairs. Deterministic for a given seed.
pub fn run(config: &VerifyConfig) -> VerifySummary {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let jobs: Vec<(ChannelPair, u64)> = (0..config.trials)
        .map(|i| {
            let pair = match (&config.pair, i) {
                (Some(p), 0) => p.clone(),
                _ => random_pair(&mut rng),
            };
            (pair, rng.gen())
        })
        .collect();
    let per_pair: Vec<Vec<SuiteResult>> = jobs.par_iter().map(|(pair, seed)| check_pair(pair, *seed, config)).collect();
    let mut suites = fresh_suites();
    for results in per_pair {
        for (total, part) in suites.iter_mut().zip(results) {
            total.merge(part);
        }
    }
    VerifySummary { trials: config.trials, seed: config.seed, suites }
}

//! Qubit Pauli channels and the breakpoint/slope data of a channel pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::pwa::Affine;

/// Labels for the Pauli index α = 0..3.
pub const PAULI_LABELS: [&str; 4] = ["I", "X", "Y", "Z"];

/// ρ ↦ Σ_α q_α σ_α ρ σ_α, with weights over (I, σx, σy, σz).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliChannel {
    q: [Rational; 4],
}

impl PauliChannel {
    /// Validate a probability 4-vector; `name` appears in error messages.
    pub fn new_named(q: [Rational; 4], name: &str) -> Result<Self> {
        if let Some((alpha, value)) = q.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::InvalidDistribution {
                channel: name.to_string(),
                reason: format!("q[{alpha}] = {value} is negative"),
            });
        }
        let total = Rational::sum(q)?;
        if total != Rational::ONE {
            return Err(Error::InvalidDistribution {
                channel: name.to_string(),
                reason: format!("weights sum to {total}, not 1"),
            });
        }
        Ok(PauliChannel { q })
    }

    pub fn new(q: [Rational; 4]) -> Result<Self> {
        Self::new_named(q, "channel")
    }

    pub fn identity() -> Self {
        PauliChannel { q: [Rational::ONE, Rational::ZERO, Rational::ZERO, Rational::ZERO] }
    }

    pub fn q(&self) -> &[Rational; 4] {
        &self.q
    }

    pub fn q_f64(&self) -> [f64; 4] {
        self.q.map(Rational::to_f64)
    }
}

/// One Pauli index of a pair: its slope t_α and (unless t_α = 0) the prior
/// p^(α) at which r_α vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BreakpointEntry {
    pub original_index: usize,
    pub t_alpha: Rational,
    /// `None` marks a degenerate index (t_α = 0, r_α ≡ 0).
    pub p_alpha: Option<Rational>,
}

/// Two channels plus their breakpoint entries sorted by ascending p^(α).
///
/// Ties are broken by ascending original index; degenerate entries sort last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelPair {
    ch1: PauliChannel,
    ch2: PauliChannel,
    sorted: [BreakpointEntry; 4],
}

impl ChannelPair {
    pub fn new(ch1: PauliChannel, ch2: PauliChannel) -> Result<Self> {
        let mut entries = Vec::with_capacity(4);
        for alpha in 0..4 {
            let t = ch1.q[alpha].checked_add(ch2.q[alpha])?;
            let p = if t.is_zero() { None } else { Some(ch2.q[alpha].checked_div(t)?) };
            entries.push(BreakpointEntry { original_index: alpha, t_alpha: t, p_alpha: p });
        }
        entries.sort_by(|a, b| match (a.p_alpha, b.p_alpha) {
            (Some(x), Some(y)) => x.cmp(&y).then(a.original_index.cmp(&b.original_index)),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.original_index.cmp(&b.original_index),
        });
        let sorted = [entries[0], entries[1], entries[2], entries[3]];
        Ok(ChannelPair { ch1, ch2, sorted })
    }

    /// Validate both weight vectors and build the pair.
    pub fn from_probabilities(q1: [Rational; 4], q2: [Rational; 4]) -> Result<Self> {
        let ch1 = PauliChannel::new_named(q1, "channel1")?;
        let ch2 = PauliChannel::new_named(q2, "channel2")?;
        Self::new(ch1, ch2)
    }

    pub fn channel1(&self) -> &PauliChannel {
        &self.ch1
    }

    pub fn channel2(&self) -> &PauliChannel {
        &self.ch2
    }

    /// All four entries in sorted order.
    pub fn entries(&self) -> &[BreakpointEntry; 4] {
        &self.sorted
    }

    /// Non-degenerate entries as (t_α, p^(α)), ascending in p^(α).
    pub fn breakpoints(&self) -> impl Iterator<Item = (Rational, Rational)> + '_ {
        self.sorted.iter().filter_map(|e| e.p_alpha.map(|p| (e.t_alpha, p)))
    }

    pub fn has_degenerate_index(&self) -> bool {
        self.sorted.iter().any(|e| e.p_alpha.is_none())
    }

    pub fn is_identical(&self) -> bool {
        self.ch1 == self.ch2
    }

    /// The same pair with the channels exchanged (p ↦ 1 − p).
    pub fn swapped(&self) -> Result<ChannelPair> {
        ChannelPair::new(self.ch2, self.ch1)
    }

    /// r_α as an affine function of the prior: slope t_α, intercept −q_α^(2).
    pub fn r_affine(&self, alpha: usize) -> Result<Affine> {
        let slope = self.ch1.q[alpha].checked_add(self.ch2.q[alpha])?;
        Ok(Affine::new(slope, -self.ch2.q[alpha]))
    }

    /// r_α(p) = p·q_α^(1) − (1 − p)·q_α^(2), in original index order.
    pub fn r_vector(&self, p: Rational) -> Result<[Rational; 4]> {
        check_prior(p)?;
        let mut r = [Rational::ZERO; 4];
        for (alpha, slot) in r.iter_mut().enumerate() {
            *slot = self.r_affine(alpha)?.eval(p)?;
        }
        Ok(r)
    }

    /// Floating-point r_α for the Bloch-input risk.
    pub fn r_vector_f64(&self, p: f64) -> [f64; 4] {
        let q1 = self.ch1.q_f64();
        let q2 = self.ch2.q_f64();
        std::array::from_fn(|alpha| p * q1[alpha] - (1.0 - p) * q2[alpha])
    }
}

pub(crate) fn check_prior(p: Rational) -> Result<()> {
    if p.is_negative() || p > Rational::ONE {
        return Err(Error::PriorOutOfRange(p.to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(values: [&str; 4]) -> [Rational; 4] {
        values.map(|s| s.parse().unwrap())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn worked_example() -> ChannelPair {
        ChannelPair::from_probabilities(q(["0.3", "0.4", "0.2", "0.1"]), q(["0.1", "0.3", "0.15", "0.45"])).unwrap()
    }

    #[test]
    fn worked_example_breakpoints_and_slopes() {
        let pair = worked_example();
        let p: Vec<_> = pair.entries().iter().map(|e| e.p_alpha.unwrap()).collect();
        let t: Vec<_> = pair.entries().iter().map(|e| e.t_alpha).collect();
        let idx: Vec<_> = pair.entries().iter().map(|e| e.original_index).collect();
        assert_eq!(p, vec![r(1, 4), r(3, 7), r(3, 7), r(9, 11)]);
        assert_eq!(t, vec![r(2, 5), r(7, 10), r(7, 20), r(11, 20)]);
        assert_eq!(idx, vec![0, 1, 2, 3]);
    }

    #[test]
    fn identical_identity_channels_are_mostly_degenerate() {
        let id = PauliChannel::identity();
        let pair = ChannelPair::new(id, id).unwrap();
        let bps: Vec<_> = pair.breakpoints().collect();
        assert_eq!(bps, vec![(r(2, 1), r(1, 2))]);
        assert!(pair.has_degenerate_index());
        assert!(pair.entries()[1..].iter().all(|e| e.p_alpha.is_none()));
    }

    #[test]
    fn tie_break_uses_original_index() {
        // p^(α) = 1/2 for α = 3 and α = 1; sorted order must list 1 before 3.
        let pair =
            ChannelPair::from_probabilities(q(["0.1", "0.2", "0.3", "0.4"]), q(["0.3", "0.2", "0.1", "0.4"])).unwrap();
        let idx: Vec<_> = pair.entries().iter().map(|e| e.original_index).collect();
        assert_eq!(idx, vec![2, 1, 3, 0]);
        let pair =
            ChannelPair::from_probabilities(q(["0.25", "0.25", "0.25", "0.25"]), q(["0.25", "0.25", "0.25", "0.25"]))
                .unwrap();
        let idx: Vec<_> = pair.entries().iter().map(|e| e.original_index).collect();
        assert_eq!(idx, vec![0, 1, 2, 3]);
    }

    #[test]
    fn r_vector_at_worked_prior() {
        let pair = worked_example();
        assert_eq!(pair.r_vector(r(3, 7)).unwrap(), [r(1, 14), r(0, 1), r(0, 1), r(-3, 14)]);
        assert_eq!(pair.r_vector(Rational::ZERO).unwrap(), pair.channel2().q().map(|x| -x));
        assert_eq!(pair.r_vector(Rational::ONE).unwrap(), *pair.channel1().q());
        assert!(matches!(pair.r_vector(r(3, 2)), Err(Error::PriorOutOfRange(_))));
    }

    #[test]
    fn rejects_invalid_distributions() {
        let err =
            ChannelPair::from_probabilities(q(["0.5", "0.5", "0", "0"]), q(["0.5", "0.6", "0", "0"])).unwrap_err();
        match err {
            Error::InvalidDistribution { channel, .. } => assert_eq!(channel, "channel2"),
            other => panic!("unexpected {other:?}"),
        }
        let err = ChannelPair::from_probabilities(q(["1.5", "-0.5", "0", "0"]), q(["1", "0", "0", "0"])).unwrap_err();
        assert!(matches!(err, Error::InvalidDistribution { ref channel, .. } if channel == "channel1"));
    }
}

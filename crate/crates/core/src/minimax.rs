//! Minimax risks, the entanglement-necessity case analysis, and optimal
//! single-qubit inputs.
//!
//! With an entangled input the minimax risk is the maximum of the entangled
//! Bayes curve over the prior; without ancilla it is the maximum of the
//! no-ancilla curve. The case analysis decides from the sorted breakpoint
//! data alone whether the two maxima coincide. [`full_report`] runs both the
//! case analysis and the direct comparison and insists they agree.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::pauli::ChannelPair;
use crate::pwa::{Affine, MaxPoint, PwaFunction};
use crate::risk::{bayes_risk_bloch, bayes_risk_eigenstate, bayes_risk_entangled, AbcdCoefficients, Axis, BlochVector};

/// Worst prior and minimax risk with a maximally entangled input.
pub fn minimax_entangled(pair: &ChannelPair) -> Result<MaxPoint> {
    bayes_risk_entangled(pair)?.max_point()
}

/// Worst prior and minimax risk with no ancilla.
pub fn minimax_no_ancilla(pair: &ChannelPair) -> Result<MaxPoint> {
    crate::risk::bayes_risk_no_ancilla(pair)?.max_point()
}

/// Configuration of the worst prior among the sorted breakpoints
/// p^(0) ≤ p^(1) ≤ p^(2) ≤ p^(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// Both channels are the same map.
    Identical,
    /// Some t_α = 0, so r_α ≡ 0 and the two curves coincide everywhere.
    DegenerateSlope,
    /// p* = p^(0) < p^(1): entanglement always needed.
    P0StrictlyFirst,
    /// p* = p^(0) = p^(1) < p^(2): entanglement never needed.
    DoubleLeft,
    /// p* = p^(0) = p^(1) = p^(2) < p^(3), tested by t3 + 2·min(t0,t1,t2) ≤ t0+t1+t2.
    TripleLeft,
    /// p^(0) < p* = p^(1) < p^(2), tested by t0 + t1 = t2 + t3.
    MiddleEqualSlopes,
    /// p^(0) < p* = p^(1) = p^(2) < p^(3), tested by |t0 − t3| ≤ |t1 − t2|.
    MiddleDouble,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Identical => "Identical",
            CaseTag::DegenerateSlope => "Degenerate_slope",
            CaseTag::P0StrictlyFirst => "T5_p0_strictly_first",
            CaseTag::DoubleLeft => "T5_double_left",
            CaseTag::TripleLeft => "T5_triple_left",
            CaseTag::MiddleEqualSlopes => "T5_middle_equal_slopes",
            CaseTag::MiddleDouble => "T5_middle_double",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseLabel {
    pub tag: CaseTag,
    /// Detected on the channel-swapped pair.
    pub mirrored: bool,
    /// True when entanglement is NOT needed for the minimax risk.
    pub condition_holds: bool,
}

impl CaseLabel {
    pub fn entanglement_required(&self) -> bool {
        !self.condition_holds
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mirrored {
            f.write_str("Mirror_")?;
        }
        f.write_str(self.tag.name())
    }
}

/// Case pattern of `p` within sorted breakpoints, for the left-anchored
/// configurations only.
fn detect(breakpoints: &[(Rational, Rational)], p: Rational) -> Result<Option<(CaseTag, bool)>> {
    if breakpoints.len() != 4 {
        return Err(Error::InternalInconsistency("case detection needs four breakpoints".into()));
    }
    let first = breakpoints
        .iter()
        .position(|&(_, b)| b == p)
        .ok_or_else(|| Error::InternalInconsistency(format!("worst prior {p} is not a breakpoint")))?;
    let last = breakpoints.iter().rposition(|&(_, b)| b == p).unwrap();
    let t: Vec<Rational> = breakpoints.iter().map(|&(t, _)| t).collect();
    let found = match (first, last) {
        (0, 0) => Some((CaseTag::P0StrictlyFirst, false)),
        (0, 1) => Some((CaseTag::DoubleLeft, true)),
        (0, 2) => {
            let smallest = t[0].min(t[1]).min(t[2]);
            let lhs = t[3].checked_add(smallest.checked_add(smallest)?)?;
            Some((CaseTag::TripleLeft, lhs <= Rational::sum([t[0], t[1], t[2]])?))
        }
        (0, 3) => Some((CaseTag::Identical, true)),
        (1, 1) => Some((CaseTag::MiddleEqualSlopes, t[0].checked_add(t[1])? == t[2].checked_add(t[3])?)),
        (1, 2) => Some((CaseTag::MiddleDouble, t[0].checked_sub(t[3])?.abs() <= t[1].checked_sub(t[2])?.abs())),
        _ => None,
    };
    Ok(found)
}

fn label_at(pair: &ChannelPair, p: Rational) -> Result<CaseLabel> {
    let bps: Vec<_> = pair.breakpoints().collect();
    if let Some((tag, condition_holds)) = detect(&bps, p)? {
        return Ok(CaseLabel { tag, mirrored: false, condition_holds });
    }
    let swapped = pair.swapped()?;
    let bps: Vec<_> = swapped.breakpoints().collect();
    match detect(&bps, p.complement()?)? {
        Some((tag, condition_holds)) => Ok(CaseLabel { tag, mirrored: true, condition_holds }),
        None => {
            Err(Error::InternalInconsistency(format!("no case pattern matches worst prior {p} directly or mirrored")))
        }
    }
}

/// Decide from breakpoints and slopes whether entanglement is needed for
/// the minimax risk.
pub fn classify(pair: &ChannelPair) -> Result<CaseLabel> {
    if pair.is_identical() {
        return Ok(CaseLabel { tag: CaseTag::Identical, mirrored: false, condition_holds: true });
    }
    if pair.has_degenerate_index() {
        return Ok(CaseLabel { tag: CaseTag::DegenerateSlope, mirrored: false, condition_holds: true });
    }
    let worst = minimax_entangled(pair)?;
    let label = label_at(pair, worst.p_star)?;
    if let Some((lo, hi)) = worst.plateau {
        // Every maximizer is a valid anchor; both ends must tell the same story.
        let other = label_at(pair, hi)?;
        if other.condition_holds != label.condition_holds {
            return Err(Error::AmbiguousPlateau { lo: lo.to_string(), hi: hi.to_string() });
        }
    }
    Ok(label)
}

/// How the optimal no-ancilla inputs were obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputConstruction {
    /// The worst prior is a maximum of this eigenstate curve.
    Eigenstate { axis: Axis },
    /// Exactly two eigenstate curves cross at the worst prior; the input
    /// mixes the two axes with tan²(angle) = `tan_squared`.
    Crossing { axes: [Axis; 2], tan_squared: Rational },
    /// More than two curves meet with mixed slopes; every verified pairwise
    /// candidate is listed but the set is not known to be complete.
    MultiCrossing { crossings: Vec<([Axis; 2], Rational)> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimalInputs {
    pub p_star_prime: Rational,
    pub construction: InputConstruction,
    pub states: Vec<BlochVector>,
}

impl OptimalInputs {
    pub fn is_unique(&self) -> bool {
        !matches!(self.construction, InputConstruction::MultiCrossing { .. })
    }
}

const VERIFY_GRID: usize = 2000;
const VERIFY_TOL: f64 = 1e-9;

/// Check that `state` has its worst-prior risk at `p_star` with value `target`.
fn verify_state(pair: &ChannelPair, state: &BlochVector, p_star: f64, target: f64) -> bool {
    let risk = |p: f64| bayes_risk_bloch(pair, p, state);
    let grid_max = (0..=VERIFY_GRID).map(|k| risk(k as f64 / VERIFY_GRID as f64)).fold(risk(p_star), f64::max);
    if (grid_max - target).abs() > VERIFY_TOL {
        return false;
    }
    let h = 1e-7;
    let at = risk(p_star);
    let left_ok = p_star < h || (at - risk(p_star - h)) / h >= -1e-6;
    let right_ok = p_star > 1.0 - h || (risk(p_star + h) - at) / h <= 1e-6;
    left_ok && right_ok
}

/// |F| for the square-root term that the eigenstate curve of `axis` carries.
fn axis_form(abcd: &AbcdCoefficients, axis: Axis) -> Result<Affine> {
    match axis {
        Axis::X => abcd.c_plus_d(),
        Axis::Y => abcd.c_minus_d(),
        Axis::Z => abcd.a_minus_b(),
    }
}

/// Candidate tan² values mixing `u` (weight cos²) and `v` (weight sin²).
fn crossing_ratios(abcd: &AbcdCoefficients, u: Axis, v: Axis, p: Rational) -> Result<Vec<Rational>> {
    let (ul, ur) = axis_form(abcd, u)?.abs_slopes_at(p)?;
    let (vl, vr) = axis_form(abcd, v)?.abs_slopes_at(p)?;
    let mut out = Vec::new();
    for (du, dv) in [(ul, vl), (ur, vr)] {
        if dv.is_zero() {
            continue;
        }
        let ratio = (-du).checked_div(dv)?;
        if !ratio.is_negative() && !out.contains(&ratio) {
            out.push(ratio);
        }
    }
    Ok(out)
}

/// The four states ±cosψ·e_u ± sinψ·e_v with tan²ψ = `tan_squared`.
fn mixed_states(u: Axis, v: Axis, tan_squared: Rational) -> Result<Vec<BlochVector>> {
    let denom = Rational::ONE.checked_add(tan_squared)?;
    let cos = Rational::ONE.checked_div(denom)?.to_f64().sqrt();
    let sin = tan_squared.checked_div(denom)?.to_f64().sqrt();
    let (eu, ev) = (u.unit(), v.unit());
    let mut states = Vec::with_capacity(4);
    for su in [1.0, -1.0] {
        for sv in [1.0, -1.0] {
            let n = std::array::from_fn(|i| su * cos * eu[i] + sv * sin * ev[i]);
            states.push(BlochVector::from_vector(n)?);
        }
    }
    Ok(states)
}

/// Optimal no-ancilla inputs, reporting multi-curve crossings as
/// [`InputConstruction::MultiCrossing`] instead of failing.
pub fn optimal_inputs_detailed(pair: &ChannelPair) -> Result<OptimalInputs> {
    let curves: Vec<(Axis, PwaFunction)> =
        Axis::ALL.iter().map(|&axis| Ok((axis, bayes_risk_eigenstate(pair, axis)?))).collect::<Result<_>>()?;
    let envelope = PwaFunction::min_of(&curves.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>())?;
    let worst = envelope.max_point()?;
    let p = worst.p_star;
    let (p_f, target) = (p.to_f64(), worst.value.to_f64());

    let mut active = Vec::new();
    for (axis, curve) in &curves {
        if curve.eval(p)? == worst.value {
            let (left, right) = curve.one_sided_slopes(p)?;
            active.push((*axis, left, right));
        }
    }

    for preferred in [Axis::Z, Axis::X, Axis::Y] {
        let Some(&(axis, left, right)) = active.iter().find(|(a, _, _)| *a == preferred) else {
            continue;
        };
        let peaks_here = left.is_none_or(|s| !s.is_negative()) && right.is_none_or(|s| !s.is_positive());
        if peaks_here {
            let states = vec![BlochVector::eigenstate(axis, true), BlochVector::eigenstate(axis, false)];
            if !states.iter().all(|s| verify_state(pair, s, p_f, target)) {
                return Err(Error::InternalInconsistency(format!(
                    "eigenstates of sigma_{axis} fail the worst-prior check at {p}"
                )));
            }
            return Ok(OptimalInputs { p_star_prime: p, construction: InputConstruction::Eigenstate { axis }, states });
        }
    }

    let increasing: Vec<Axis> =
        active.iter().filter(|(_, _, right)| right.is_some_and(|s| s.is_positive())).map(|&(a, _, _)| a).collect();
    let decreasing: Vec<Axis> =
        active.iter().filter(|(_, left, _)| left.is_some_and(|s| s.is_negative())).map(|&(a, _, _)| a).collect();

    let abcd = AbcdCoefficients::of(pair)?;
    let mut crossings = Vec::new();
    let mut states = Vec::new();
    for &inc in &increasing {
        for &dec in &decreasing {
            // Canonical order: x before y, z before x/y.
            let (u, v) = match (inc, dec) {
                (Axis::Z, o) | (o, Axis::Z) => (Axis::Z, o),
                _ => (Axis::X, Axis::Y),
            };
            for ratio in crossing_ratios(&abcd, u, v, p)? {
                let candidates = mixed_states(u, v, ratio)?;
                if candidates.iter().all(|s| verify_state(pair, s, p_f, target))
                    && !crossings.iter().any(|(axes, t)| *axes == [u, v] && *t == ratio)
                {
                    crossings.push(([u, v], ratio));
                    states.extend(candidates);
                }
            }
        }
    }

    match crossings.len() {
        0 => Err(Error::InconsistentCrossing {
            at: p.to_string(),
            reason: format!(
                "active curves {:?}, none of the pairwise mixtures attains the worst-prior risk",
                active.iter().map(|(a, _, _)| a.to_string()).collect::<Vec<_>>()
            ),
        }),
        1 if active.len() == 2 => {
            let (axes, tan_squared) = crossings.remove(0);
            Ok(OptimalInputs {
                p_star_prime: p,
                construction: InputConstruction::Crossing { axes, tan_squared },
                states,
            })
        }
        _ => {
            Ok(OptimalInputs { p_star_prime: p, construction: InputConstruction::MultiCrossing { crossings }, states })
        }
    }
}

/// Optimal input states for minimax discrimination without ancilla.
///
/// Fails with [`Error::ThreeWayCrossing`] (carrying the verified candidates)
/// when more than two eigenstate curves meet at the worst prior.
pub fn optimal_input_no_ancilla(pair: &ChannelPair) -> Result<OptimalInputs> {
    let inputs = optimal_inputs_detailed(pair)?;
    if let InputConstruction::MultiCrossing { crossings } = &inputs.construction {
        return Err(Error::ThreeWayCrossing {
            at: inputs.p_star_prime.to_string(),
            count: crossings.len(),
            candidates: inputs.states,
        });
    }
    Ok(inputs)
}

pub const ENTANGLED_INPUT: &str = "any maximally entangled state";

#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminationReport {
    pub pair: ChannelPair,
    /// R_M with its worst prior.
    pub entangled: MaxPoint,
    /// R'_M with its worst prior.
    pub no_ancilla: MaxPoint,
    pub case: CaseLabel,
    pub entanglement_strictly_helps: bool,
    pub optimal_inputs_no_ancilla: OptimalInputs,
    pub optimal_input_entangled: &'static str,
}

impl DiscriminationReport {
    pub fn risk_entangled(&self) -> Rational {
        self.entangled.value
    }

    pub fn risk_no_ancilla(&self) -> Rational {
        self.no_ancilla.value
    }
}

/// Run every analysis on a pair and cross-check the two necessity routes.
pub fn full_report(pair: &ChannelPair) -> Result<DiscriminationReport> {
    let entangled = minimax_entangled(pair)?;
    let no_ancilla = minimax_no_ancilla(pair)?;
    if entangled.value > no_ancilla.value {
        return Err(Error::InternalInconsistency(format!(
            "entangled minimax risk {} exceeds the no-ancilla one {}",
            entangled.value, no_ancilla.value
        )));
    }
    let helps = entangled.value < no_ancilla.value;
    let case = classify(pair)?;
    if case.entanglement_required() != helps {
        return Err(Error::InternalInconsistency(format!(
            "case {case} says entanglement {} but R_M = {} and R'_M = {}",
            if case.entanglement_required() { "needed" } else { "not needed" },
            entangled.value,
            no_ancilla.value
        )));
    }
    let inputs = optimal_inputs_detailed(pair)?;
    Ok(DiscriminationReport {
        pair: pair.clone(),
        entangled,
        no_ancilla,
        case,
        entanglement_strictly_helps: helps,
        optimal_inputs_no_ancilla: inputs,
        optimal_input_entangled: ENTANGLED_INPUT,
    })
}

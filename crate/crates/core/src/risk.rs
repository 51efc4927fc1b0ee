//! Bayes-risk curves for discriminating two Pauli channels.
//!
//! The entangled curve and the three Pauli-eigenstate curves are exact
//! [`PwaFunction`]s in the prior `p`; the risk for an arbitrary Bloch input
//! involves a square root and is evaluated in floating point.
//!
//! All index arithmetic here uses the ORIGINAL Pauli labels (0 = I, 1 = X,
//! 2 = Y, 3 = Z). Only the minimax classifier works in sorted order.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::pauli::{check_prior, ChannelPair};
use crate::pwa::{Affine, PwaFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// The two index pairs whose r-sums appear in this axis' risk.
    fn pairing(self) -> [(usize, usize); 2] {
        match self {
            Axis::Z => [(0, 3), (1, 2)],
            Axis::X => [(0, 1), (2, 3)],
            Axis::Y => [(0, 2), (1, 3)],
        }
    }

    pub fn unit(self) -> [f64; 3] {
        match self {
            Axis::X => [1.0, 0.0, 0.0],
            Axis::Y => [0.0, 1.0, 0.0],
            Axis::Z => [0.0, 0.0, 1.0],
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Pure qubit input ½(I + n·σ) with n = (sinθ cosφ, sinθ sinφ, cosθ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BlochVector {
    pub n: [f64; 3],
    pub theta: f64,
    pub phi: f64,
}

impl BlochVector {
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        BlochVector { n: [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()], theta, phi }
    }

    /// From Cartesian components; the vector must be unit within 1e-12.
    pub fn from_vector(n: [f64; 3]) -> Result<Self> {
        let norm = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("Bloch vector norm {norm} is not 1")));
        }
        Ok(BlochVector { n, theta: n[2].clamp(-1.0, 1.0).acos(), phi: n[1].atan2(n[0]) })
    }

    /// The `+` or `−` eigenstate of σ_axis.
    pub fn eigenstate(axis: Axis, positive: bool) -> Self {
        let s = if positive { 1.0 } else { -1.0 };
        let u = axis.unit();
        Self::from_vector([s * u[0], s * u[1], s * u[2]]).expect("unit axis")
    }
}

/// a = r0 + r3, b = r1 + r2, c = r0 − r3, d = r1 − r2 as exact affine forms in p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbcdCoefficients {
    pub a: Affine,
    pub b: Affine,
    pub c: Affine,
    pub d: Affine,
}

impl AbcdCoefficients {
    pub fn of(pair: &ChannelPair) -> Result<Self> {
        let r: Vec<Affine> = (0..4).map(|alpha| pair.r_affine(alpha)).collect::<Result<_>>()?;
        Ok(AbcdCoefficients {
            a: r[0].checked_add(&r[3])?,
            b: r[1].checked_add(&r[2])?,
            c: r[0].checked_sub(&r[3])?,
            d: r[1].checked_sub(&r[2])?,
        })
    }

    pub fn c_plus_d(&self) -> Result<Affine> {
        self.c.checked_add(&self.d)
    }

    pub fn c_minus_d(&self) -> Result<Affine> {
        self.c.checked_sub(&self.d)
    }

    pub fn a_minus_b(&self) -> Result<Affine> {
        self.a.checked_sub(&self.b)
    }
}

/// R_B(p) = ½(1 − Σ_α |r_α(p)|), reached with a maximally entangled input.
pub fn bayes_risk_entangled(pair: &ChannelPair) -> Result<PwaFunction> {
    let terms: Vec<_> = pair.breakpoints().collect();
    PwaFunction::from_abs_terms(&terms, Rational::HALF)
}

/// The two affine sums whose absolute values enter the eigenstate risk for `axis`.
pub fn eigenstate_terms(pair: &ChannelPair, axis: Axis) -> Result<[Affine; 2]> {
    let [(i, j), (k, l)] = axis.pairing();
    Ok([pair.r_affine(i)?.checked_add(&pair.r_affine(j)?)?, pair.r_affine(k)?.checked_add(&pair.r_affine(l)?)?])
}

/// Risk when an eigenstate of σ_axis is sent through the channel.
pub fn bayes_risk_eigenstate(pair: &ChannelPair, axis: Axis) -> Result<PwaFunction> {
    let mut terms = Vec::with_capacity(2);
    for form in eigenstate_terms(pair, axis)? {
        if let Some(term) = form.as_abs_term()? {
            terms.push(term);
        }
    }
    PwaFunction::from_abs_terms(&terms, Rational::HALF)
}

/// R'_B(p): the best single-qubit input, i.e. the minimum of the three
/// eigenstate curves.
pub fn bayes_risk_no_ancilla(pair: &ChannelPair) -> Result<PwaFunction> {
    let curves: Vec<_> = Axis::ALL.iter().map(|&axis| bayes_risk_eigenstate(pair, axis)).collect::<Result<_>>()?;
    PwaFunction::min_of(&curves)
}

/// Risk for an arbitrary pure input state at prior `p`.
pub fn bayes_risk_bloch(pair: &ChannelPair, p: f64, state: &BlochVector) -> f64 {
    let r = pair.r_vector_f64(p);
    let (a, b) = (r[0] + r[3], r[1] + r[2]);
    let (c, d) = (r[0] - r[3], r[1] - r[2]);
    let (st, ct) = state.theta.sin_cos();
    let radicand = ct * ct * (a - b) * (a - b) + st * st * (c * c + d * d + 2.0 * c * d * (2.0 * state.phi).cos());
    let spread = (a + b).abs().max(radicand.max(0.0).sqrt());
    0.5 * (1.0 - spread)
}

/// Whether an ancilla strictly lowers the Bayes risk at `p`: Π_α r_α(p) < 0.
pub fn bayes_entanglement_needed(pair: &ChannelPair, p: Rational) -> Result<bool> {
    check_prior(p)?;
    let r = pair.r_vector(p)?;
    // Sign of the product without forming it.
    if r.iter().any(|x| x.is_zero()) {
        return Ok(false);
    }
    let negatives = r.iter().filter(|x| x.is_negative()).count();
    Ok(negatives % 2 == 1)
}

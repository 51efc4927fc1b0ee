//! Exact piecewise-affine functions on [0, 1].
//!
//! A [`PwaFunction`] is a list of knots `(p, value)` with strictly increasing
//! `p`, starting at 0 and ending at 1, linearly interpolated in between.
//! Collinear interior knots are always removed, so two functions are equal
//! exactly when their knot lists are equal.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// `slope·p + intercept` with exact coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Affine {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        Affine { slope, intercept }
    }

    pub fn eval(&self, p: Rational) -> Result<Rational> {
        self.slope.checked_mul(p)?.checked_add(self.intercept)
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        self.slope.to_f64() * p + self.intercept.to_f64()
    }

    pub fn checked_add(&self, other: &Affine) -> Result<Affine> {
        Ok(Affine::new(self.slope.checked_add(other.slope)?, self.intercept.checked_add(other.intercept)?))
    }

    pub fn checked_sub(&self, other: &Affine) -> Result<Affine> {
        Ok(Affine::new(self.slope.checked_sub(other.slope)?, self.intercept.checked_sub(other.intercept)?))
    }

    /// Left and right derivatives of `|self|` at `p`.
    pub fn abs_slopes_at(&self, p: Rational) -> Result<(Rational, Rational)> {
        let v = self.eval(p)?;
        Ok(match v.signum() {
            1 => (self.slope, self.slope),
            -1 => (-self.slope, -self.slope),
            _ => (-self.slope.abs(), self.slope.abs()),
        })
    }

    /// Rewrite `|self|` as `t·|p − p0|`; `None` when the form is identically zero.
    pub fn as_abs_term(&self) -> Result<Option<(Rational, Rational)>> {
        if self.slope.is_zero() {
            if !self.intercept.is_zero() {
                return Err(Error::InvalidArgument(format!("constant form {} has no kink", self.intercept)));
            }
            return Ok(None);
        }
        let root = (-self.intercept).checked_div(self.slope)?;
        Ok(Some((self.slope.abs(), root)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Knot {
    pub p: Rational,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PwaFunction {
    knots: Vec<Knot>,
}

/// Location of the maximum of a concave function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MaxPoint {
    /// Left end of the maximizing set; always a knot.
    pub p_star: Rational,
    pub value: Rational,
    /// Full maximizing interval when the maximum is flat.
    pub plateau: Option<(Rational, Rational)>,
}

impl MaxPoint {
    /// Right end of the maximizing set.
    pub fn right_end(&self) -> Rational {
        self.plateau.map_or(self.p_star, |(_, hi)| hi)
    }
}

fn slope(a: &Knot, b: &Knot) -> Result<Rational> {
    b.value.checked_sub(a.value)?.checked_div(b.p.checked_sub(a.p)?)
}

impl PwaFunction {
    /// Build from explicit knots; they must run strictly increasing from 0 to 1.
    pub fn from_knots(knots: Vec<Knot>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidArgument("need at least two knots".into()));
        }
        if knots[0].p != Rational::ZERO || knots[knots.len() - 1].p != Rational::ONE {
            return Err(Error::InvalidArgument("knots must span [0, 1]".into()));
        }
        if knots.windows(2).any(|w| w[0].p >= w[1].p) {
            return Err(Error::InvalidArgument("knots must be strictly increasing".into()));
        }
        let mut f = PwaFunction { knots };
        f.normalize()?;
        Ok(f)
    }

    pub fn constant(value: Rational) -> Self {
        PwaFunction { knots: vec![Knot { p: Rational::ZERO, value }, Knot { p: Rational::ONE, value }] }
    }

    /// `p ↦ constant − ½·Σ t_i·|p − p0_i|`, knotted at 0, every p0_i, and 1.
    pub fn from_abs_terms(terms: &[(Rational, Rational)], constant: Rational) -> Result<Self> {
        for &(t, p0) in terms {
            if t.is_negative() {
                return Err(Error::InvalidArgument(format!("negative weight {t}")));
            }
            if p0.is_negative() || p0 > Rational::ONE {
                return Err(Error::InvalidArgument(format!("kink {p0} outside [0, 1]")));
            }
        }
        let mut points: Vec<Rational> = terms.iter().map(|&(_, p0)| p0).collect();
        points.push(Rational::ZERO);
        points.push(Rational::ONE);
        points.sort();
        points.dedup();
        let knots = points
            .into_iter()
            .map(|p| {
                let spread = Rational::sum(
                    terms
                        .iter()
                        .map(|&(t, p0)| p.checked_sub(p0).and_then(|d| t.checked_mul(d.abs())))
                        .collect::<Result<Vec<_>>>()?,
                )?;
                let value = constant.checked_sub(Rational::HALF.checked_mul(spread)?)?;
                Ok(Knot { p, value })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_knots(knots)
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    fn normalize(&mut self) -> Result<()> {
        let mut kept: Vec<Knot> = Vec::with_capacity(self.knots.len());
        for &k in &self.knots {
            while kept.len() >= 2 {
                let (a, b) = (&kept[kept.len() - 2], &kept[kept.len() - 1]);
                if slope(a, b)? == slope(b, &k)? {
                    kept.pop();
                } else {
                    break;
                }
            }
            kept.push(k);
        }
        self.knots = kept;
        Ok(())
    }

    /// Index of the segment `[knots[i], knots[i+1]]` containing `p`.
    fn segment_of(&self, p: Rational) -> usize {
        let idx = self.knots.partition_point(|k| k.p <= p);
        idx.saturating_sub(1).min(self.knots.len() - 2)
    }

    pub fn eval(&self, p: Rational) -> Result<Rational> {
        if p.is_negative() || p > Rational::ONE {
            return Err(Error::PriorOutOfRange(p.to_string()));
        }
        let i = self.segment_of(p);
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        if p == a.p {
            return Ok(a.value);
        }
        if p == b.p {
            return Ok(b.value);
        }
        a.value.checked_add(slope(a, b)?.checked_mul(p.checked_sub(a.p)?)?)
    }

    pub fn eval_f64(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        let i = self.knots.partition_point(|k| k.p.to_f64() <= p).saturating_sub(1).min(self.knots.len() - 2);
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        let (pa, pb) = (a.p.to_f64(), b.p.to_f64());
        let (va, vb) = (a.value.to_f64(), b.value.to_f64());
        va + (vb - va) * (p - pa) / (pb - pa)
    }

    /// Slopes of each segment, left to right.
    pub fn segment_slopes(&self) -> Result<Vec<Rational>> {
        self.knots.windows(2).map(|w| slope(&w[0], &w[1])).collect()
    }

    /// Left and right derivatives at `p`; `None` outside [0, 1].
    pub fn one_sided_slopes(&self, p: Rational) -> Result<(Option<Rational>, Option<Rational>)> {
        if p.is_negative() || p > Rational::ONE {
            return Err(Error::PriorOutOfRange(p.to_string()));
        }
        let slopes = self.segment_slopes()?;
        let i = self.segment_of(p);
        let right = if p == Rational::ONE { None } else { Some(slopes[i]) };
        let left = if p.is_zero() {
            None
        } else if p == self.knots[i].p {
            Some(slopes[i - 1])
        } else {
            Some(slopes[i])
        };
        Ok((left, right))
    }

    /// First knot where the chord slopes increase, if any.
    pub fn concavity_violation(&self) -> Result<Option<Rational>> {
        let slopes = self.segment_slopes()?;
        Ok(slopes.windows(2).position(|w| w[1] > w[0]).map(|i| self.knots[i + 1].p))
    }

    pub fn is_concave(&self) -> Result<bool> {
        Ok(self.concavity_violation()?.is_none())
    }

    /// Pointwise minimum, with every crossing inserted as an exact knot.
    pub fn min_of(fs: &[PwaFunction]) -> Result<PwaFunction> {
        let first = fs.first().ok_or_else(|| Error::InvalidArgument("minimum of no functions".into()))?;
        if fs.len() == 1 {
            return Ok(first.clone());
        }
        let mut grid: Vec<Rational> = fs.iter().flat_map(|f| f.knots.iter().map(|k| k.p)).collect();
        grid.sort();
        grid.dedup();

        let values: Vec<Vec<Rational>> =
            fs.iter().map(|f| grid.iter().map(|&p| f.eval(p)).collect()).collect::<Result<_>>()?;

        let mut points = grid.clone();
        for seg in 0..grid.len() - 1 {
            let width = grid[seg + 1].checked_sub(grid[seg])?;
            for i in 0..fs.len() {
                for j in i + 1..fs.len() {
                    let left = values[i][seg].checked_sub(values[j][seg])?;
                    let right = values[i][seg + 1].checked_sub(values[j][seg + 1])?;
                    if left.signum() * right.signum() < 0 {
                        let frac = left.checked_div(left.checked_sub(right)?)?;
                        points.push(grid[seg].checked_add(width.checked_mul(frac)?)?);
                    }
                }
            }
        }
        points.sort();
        points.dedup();
        let knots = points
            .into_iter()
            .map(|p| {
                let mut best = first.eval(p)?;
                for f in &fs[1..] {
                    best = best.min(f.eval(p)?);
                }
                Ok(Knot { p, value: best })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_knots(knots)
    }

    /// Exact maximum of a concave function.
    pub fn max_point(&self) -> Result<MaxPoint> {
        if let Some(at) = self.concavity_violation()? {
            return Err(Error::NotConcave { at: at.to_string() });
        }
        let value = self.knots.iter().map(|k| k.value).max().expect("at least two knots");
        let first = self.knots.iter().position(|k| k.value == value).unwrap();
        let last = self.knots.iter().rposition(|k| k.value == value).unwrap();
        Ok(MaxPoint {
            p_star: self.knots[first].p,
            value,
            plateau: (last > first).then(|| (self.knots[first].p, self.knots[last].p)),
        })
    }
}

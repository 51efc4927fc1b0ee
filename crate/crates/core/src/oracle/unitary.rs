//! Discrimination of two unitaries through the eigenvalues of `U1† U2`.

use super::linalg::C64;
use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

fn cross(o: C64, a: C64, b: C64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn convex_hull(mut points: Vec<C64>) -> Vec<C64> {
    points.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    points.dedup_by(|a, b| (*a - *b).norm() < 1e-15);
    if points.len() < 3 {
        return points;
    }
    let mut hull: Vec<C64> = Vec::with_capacity(2 * points.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &C64>> =
            if pass == 0 { Box::new(points.iter()) } else { Box::new(points.iter().rev()) };
        for &pt in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0.0 {
                hull.pop();
            }
            hull.push(pt);
        }
        hull.pop();
    }
    hull
}

fn segment_distance(a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return a.norm();
    }
    let t = (-(a.re * ab.re + a.im * ab.im) / len2).clamp(0.0, 1.0);
    (a + ab * t).norm()
}

/// Distance from the origin to the convex hull of the points; zero when inside.
pub fn origin_distance(points: &[C64]) -> f64 {
    let hull = convex_hull(points.to_vec());
    match hull.len() {
        0 => 0.0,
        1 => hull[0].norm(),
        2 => segment_distance(hull[0], hull[1]),
        n => {
            let inside = (0..n).all(|k| cross(hull[k], hull[(k + 1) % n], C64::new(0.0, 0.0)) >= 0.0);
            if inside {
                0.0
            } else {
                (0..n).map(|k| segment_distance(hull[k], hull[(k + 1) % n])).fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// ½(1 − √(1 − 4p(1−p)D²)) for eigenvalues `z_k` of `U1† U2`.
pub fn unitary_bayes_risk(eigenvalues: &[C64], p: f64) -> Result<f64> {
    if eigenvalues.is_empty() {
        return Err(Error::InvalidArgument("no eigenvalues".into()));
    }
    if let Some(z) = eigenvalues.iter().find(|z| (z.norm() - 1.0).abs() > UNIT_TOL) {
        return Err(Error::NonUnitModulus(format!("{z}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::PriorOutOfRange(p.to_string()));
    }
    let d = origin_distance(eigenvalues);
    let inner = (1.0 - 4.0 * p * (1.0 - p) * d * d).max(0.0);
    Ok(0.5 * (1.0 - inner.sqrt()))
}

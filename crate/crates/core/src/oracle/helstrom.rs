//! Helstrom measurements, equalizer weighting and the worst-case prior.

use serde::Serialize;

use super::linalg::{eigh, HermitianMatrix, C64};
use crate::error::{Error, Result};

const PSD_TOL: f64 = 1e-9;
const COMPLETENESS_TOL: f64 = 1e-12;
const KERNEL_REL_TOL: f64 = 1e-11;
const DENSITY_TOL: f64 = 1e-9;
/// Golden-section bracket width at termination.
pub const PRIOR_TOL: f64 = 1e-10;

/// Two-outcome measurement; outcome `i` guesses hypothesis `i`.
#[derive(Clone, Debug)]
pub struct Povm2 {
    pub b1: HermitianMatrix,
    pub b2: HermitianMatrix,
}

impl Povm2 {
    /// Requires both elements positive semidefinite within 1e-9 and summing to the identity within 1e-12.
    pub fn new(b1: HermitianMatrix, b2: HermitianMatrix) -> Result<Self> {
        if b1.dim() != b2.dim() {
            return Err(Error::DimensionMismatch(format!("{} vs {}", b1.dim(), b2.dim())));
        }
        let povm = Povm2 { b1, b2 };
        povm.check()?;
        Ok(povm)
    }

    pub fn check(&self) -> Result<()> {
        for (name, b) in [("B1", &self.b1), ("B2", &self.b2)] {
            let low = eigh(b)?.values.last().copied().unwrap_or(0.0);
            if low < -PSD_TOL {
                return Err(Error::InternalInconsistency(format!("{name} has eigenvalue {low:e}")));
            }
        }
        let sum = self.b1.combine(1.0, &self.b2, 1.0)?;
        let gap = sum.max_abs_diff(&HermitianMatrix::identity(sum.dim()));
        if gap > COMPLETENESS_TOL {
            return Err(Error::InternalInconsistency(format!("B1 + B2 misses identity by {gap:e}")));
        }
        Ok(())
    }

    /// p·Tr[ρ1 B2] + (1−p)·Tr[ρ2 B1].
    pub fn bayes_risk(&self, rho1: &HermitianMatrix, rho2: &HermitianMatrix, p: f64) -> f64 {
        p * rho1.trace_product(&self.b2) + (1.0 - p) * rho2.trace_product(&self.b1)
    }

    /// |Tr[ρ1 B2] − Tr[ρ2 B1]|, zero for an equalizer.
    pub fn equalizer_residual(&self, rho1: &HermitianMatrix, rho2: &HermitianMatrix) -> f64 {
        (rho1.trace_product(&self.b2) - rho2.trace_product(&self.b1)).abs()
    }
}

/// Checks unit trace and positivity, both within 1e-9.
pub fn check_density(rho: &HermitianMatrix) -> Result<()> {
    let tr = rho.trace();
    if (tr - 1.0).abs() > DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("trace {tr}")));
    }
    let low = eigh(rho)?.values.last().copied().unwrap_or(0.0);
    if low < -DENSITY_TOL {
        return Err(Error::NotDensityMatrix(format!("eigenvalue {low:e}")));
    }
    Ok(())
}

fn check_inputs(rho1: &HermitianMatrix, rho2: &HermitianMatrix, p: f64) -> Result<()> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", rho1.dim(), rho2.dim())));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::PriorOutOfRange(p.to_string()));
    }
    Ok(())
}

fn helstrom_operator(rho1: &HermitianMatrix, rho2: &HermitianMatrix, p: f64) -> Result<HermitianMatrix> {
    rho1.combine(p, rho2, -(1.0 - p))
}

/// ½(1 − ‖p·ρ1 − (1−p)·ρ2‖₁).
pub fn helstrom_risk(rho1: &HermitianMatrix, rho2: &HermitianMatrix, p: f64) -> Result<f64> {
    check_inputs(rho1, rho2, p)?;
    Ok(0.5 * (1.0 - eigh(&helstrom_operator(rho1, rho2, p)?)?.trace_norm()))
}

/// Helstrom measurement with `B1 = P₊ + λ·P₀`. When `equalizer_weight` is
/// `None`, λ is solved so that both correct-detection probabilities agree,
/// then clamped to [0, 1].
pub fn helstrom_povm(
    rho1: &HermitianMatrix,
    rho2: &HermitianMatrix,
    p: f64,
    equalizer_weight: Option<f64>,
) -> Result<Povm2> {
    helstrom_povm_with_kernel_tol(rho1, rho2, p, equalizer_weight, 0.0)
}

/// As [`helstrom_povm`], with eigenvalues below `max(1e-11·‖M‖, kernel_tol)` counted as kernel.
pub fn helstrom_povm_with_kernel_tol(
    rho1: &HermitianMatrix,
    rho2: &HermitianMatrix,
    p: f64,
    equalizer_weight: Option<f64>,
    kernel_tol: f64,
) -> Result<Povm2> {
    check_inputs(rho1, rho2, p)?;
    if let Some(w) = equalizer_weight {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::InvalidArgument(format!("equalizer weight {w} outside [0, 1]")));
        }
    }
    let m = helstrom_operator(rho1, rho2, p)?;
    let eig = eigh(&m)?;
    let tol = (KERNEL_REL_TOL * eig.spectral_radius()).max(kernel_tol);
    let mut plus: Vec<&[C64]> = Vec::new();
    let mut kernel: Vec<&[C64]> = Vec::new();
    for (value, vector) in eig.values.iter().zip(&eig.vectors) {
        if value.abs() <= tol {
            kernel.push(vector);
        } else if *value > 0.0 {
            plus.push(vector);
        }
    }
    let dim = m.dim();
    let p_plus = HermitianMatrix::from_projectors(dim, &plus, &vec![1.0; plus.len()]);
    let p_zero = HermitianMatrix::from_projectors(dim, &kernel, &vec![1.0; kernel.len()]);
    let lambda = match equalizer_weight {
        Some(w) => w,
        None => {
            let denom = rho1.trace_product(&p_zero) + rho2.trace_product(&p_zero);
            if denom <= f64::EPSILON {
                0.0
            } else {
                let num = 1.0 - rho2.trace_product(&p_plus) - rho1.trace_product(&p_plus);
                (num / denom).clamp(0.0, 1.0)
            }
        }
    };
    let b1 = p_plus.combine(1.0, &p_zero, lambda)?;
    let b2 = HermitianMatrix::identity(dim).combine(1.0, &b1, -1.0)?;
    Povm2::new(b1, b2)
}

/// Worst-case prior and its equalizer measurement.
#[derive(Clone, Debug)]
pub struct MinimaxStates {
    pub risk: f64,
    pub p_star: f64,
    pub povm: Povm2,
    pub equalizer_residual: f64,
}

impl Serialize for MinimaxStates {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MinimaxStates", 5)?;
        st.serialize_field("R_M", &self.risk)?;
        st.serialize_field("p_star", &self.p_star)?;
        st.serialize_field("B1", &matrix_pairs(&self.povm.b1))?;
        st.serialize_field("B2", &matrix_pairs(&self.povm.b2))?;
        st.serialize_field("equalizer_residual", &self.equalizer_residual)?;
        st.end()
    }
}

/// Rows of `[re, im]` pairs.
pub fn matrix_pairs(m: &HermitianMatrix) -> Vec<Vec<[f64; 2]>> {
    m.rows().iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn golden_section_max<F: FnMut(f64) -> Result<f64>>(mut f: F, tol: f64) -> Result<f64> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Maximize the Helstrom risk over the prior and build the equalizer there.
///
/// The search stops within [`PRIOR_TOL`] of a kink, so eigenvalues of the
/// Helstrom operator that vanish at the true optimum can be as large as
/// `‖ρ1 + ρ2‖·PRIOR_TOL`; those are treated as kernel.
pub fn minimax_states(rho1: &HermitianMatrix, rho2: &HermitianMatrix) -> Result<MinimaxStates> {
    check_inputs(rho1, rho2, 0.5)?;
    let p_star = golden_section_max(|p| helstrom_risk(rho1, rho2, p), PRIOR_TOL)?;
    let risk = helstrom_risk(rho1, rho2, p_star)?;
    let drift = eigh(&rho1.combine(1.0, rho2, 1.0)?)?.spectral_radius();
    let povm = helstrom_povm_with_kernel_tol(rho1, rho2, p_star, None, 2.0 * drift * PRIOR_TOL)?;
    let equalizer_residual = povm.equalizer_residual(rho1, rho2);
    Ok(MinimaxStates { risk, p_star, povm, equalizer_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::channel::{bell_output, density_from_bloch};
    use crate::pauli::PauliChannel;
    use crate::risk::{Axis, BlochVector};
    use crate::Rational;

    fn ket0() -> HermitianMatrix {
        density_from_bloch(&BlochVector::eigenstate(Axis::Z, true))
    }

    fn ket1() -> HermitianMatrix {
        density_from_bloch(&BlochVector::eigenstate(Axis::Z, false))
    }

    fn plus() -> HermitianMatrix {
        density_from_bloch(&BlochVector::eigenstate(Axis::X, true))
    }

    fn worked_bell() -> (HermitianMatrix, HermitianMatrix) {
        let ch = |v: [&str; 4]| PauliChannel::new(v.map(|s| s.parse::<Rational>().unwrap())).unwrap();
        (bell_output(&ch(["0.3", "0.4", "0.2", "0.1"])), bell_output(&ch(["0.1", "0.3", "0.15", "0.45"])))
    }

    #[test]
    fn risk_of_trivial_cases() {
        assert!(helstrom_risk(&ket0(), &ket1(), 0.5).unwrap().abs() < 1e-15);
        assert!((helstrom_risk(&plus(), &plus(), 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((helstrom_risk(&plus(), &plus(), 0.2).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn worked_bell_risk() {
        let (r1, r2) = worked_bell();
        assert!((helstrom_risk(&r1, &r2, 3.0 / 7.0).unwrap() - 5.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_povm_projects_on_first_state() {
        let povm = helstrom_povm(&ket0(), &ket1(), 0.5, None).unwrap();
        assert!(povm.b1.max_abs_diff(&ket0()) < 1e-12);
    }

    #[test]
    fn equal_states_accept_any_weight() {
        for w in [0.0, 0.3, 1.0] {
            let povm = helstrom_povm(&plus(), &plus(), 0.5, Some(w)).unwrap();
            assert!((povm.bayes_risk(&plus(), &plus(), 0.5) - 0.5).abs() < 1e-12);
        }
        let povm = helstrom_povm(&plus(), &plus(), 0.3, None).unwrap();
        assert!((povm.bayes_risk(&plus(), &plus(), 0.3) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn worked_bell_equalizer_at_prior() {
        let (r1, r2) = worked_bell();
        let p = 3.0 / 7.0;
        let povm = helstrom_povm(&r1, &r2, p, None).unwrap();
        assert!((r1.trace_product(&povm.b1) - r2.trace_product(&povm.b2)).abs() < 1e-9);
        assert!((povm.bayes_risk(&r1, &r2, p) - helstrom_risk(&r1, &r2, p).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_weight_and_prior() {
        assert!(matches!(helstrom_povm(&ket0(), &ket1(), 0.5, Some(1.5)), Err(Error::InvalidArgument(_))));
        assert!(matches!(helstrom_risk(&ket0(), &ket1(), -0.1), Err(Error::PriorOutOfRange(_))));
    }

    #[test]
    fn minimax_examples() {
        let same = minimax_states(&plus(), &plus()).unwrap();
        assert!((same.risk - 0.5).abs() < 1e-9);
        let orth = minimax_states(&ket0(), &ket1()).unwrap();
        assert!(orth.risk.abs() < 1e-12);
        let m = minimax_states(&ket0(), &plus()).unwrap();
        assert!((m.risk - 0.5 * (1.0 - 0.5f64.sqrt())).abs() < 1e-12);
        assert!((m.p_star - 0.5).abs() < 1e-6);
        assert!(m.equalizer_residual < 1e-7);
    }

    #[test]
    fn minimax_on_worked_bell() {
        let (r1, r2) = worked_bell();
        let m = minimax_states(&r1, &r2).unwrap();
        assert!((m.risk - 5.0 / 14.0).abs() < 1e-8);
        assert!((m.p_star - 3.0 / 7.0).abs() < 1e-6);
        assert!(m.equalizer_residual < 1e-7, "residual {}", m.equalizer_residual);
    }

    #[test]
    fn density_checks() {
        assert!(check_density(&ket0()).is_ok());
        let doubled = ket0().combine(2.0, &ket1(), 0.0).unwrap();
        assert!(matches!(check_density(&doubled), Err(Error::NotDensityMatrix(_))));
        let negative = ket0().combine(1.5, &ket1(), -0.5).unwrap();
        assert!(matches!(check_density(&negative), Err(Error::NotDensityMatrix(_))));
    }
}

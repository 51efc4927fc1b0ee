//! Output states of Pauli channels, built from explicit matrices.

use super::linalg::{HermitianMatrix, C64};
use crate::pauli::PauliChannel;
use crate::risk::BlochVector;

type Mat = Vec<C64>;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// σ_0 = I, σ_1 = X, σ_2 = Y, σ_3 = Z as row-major 2×2 matrices.
pub fn pauli(alpha: usize) -> Mat {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match alpha {
        0 => vec![l, o, o, l],
        1 => vec![o, l, l, o],
        2 => vec![o, -i, i, o],
        3 => vec![l, o, o, -l],
        _ => panic!("Pauli index {alpha} out of range"),
    }
}

fn matmul(a: &[C64], b: &[C64], n: usize) -> Mat {
    let mut out = vec![c(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn kron(a: &[C64], b: &[C64], n: usize, m: usize) -> Mat {
    let dim = n * m;
    let mut out = vec![c(0.0, 0.0); dim * dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[(i * m + k) * dim + (j * m + l)] = a[i * n + j] * b[k * m + l];
                }
            }
        }
    }
    out
}

/// Σ_α q_α (σ_α ⊗ I_extra) ρ (σ_α ⊗ I_extra)†.
fn conjugation_sum(q: [f64; 4], rho: &[C64], extra: usize) -> Mat {
    let dim = 2 * extra;
    let id_extra = HermitianMatrix::identity(extra).entries().to_vec();
    let mut out = vec![c(0.0, 0.0); dim * dim];
    for (alpha, &weight) in q.iter().enumerate() {
        if weight == 0.0 {
            continue;
        }
        let s = if extra == 1 { pauli(alpha) } else { kron(&pauli(alpha), &id_extra, 2, extra) };
        // Pauli matrices are Hermitian, so σ† = σ.
        let term = matmul(&matmul(&s, rho, dim), &s, dim);
        for (o, t) in out.iter_mut().zip(term) {
            *o += t * weight;
        }
    }
    out
}

/// ½(I + n·σ).
pub fn density_from_bloch(state: &BlochVector) -> HermitianMatrix {
    let [x, y, z] = state.n;
    HermitianMatrix::symmetrized(
        2,
        vec![c(0.5 * (1.0 + z), 0.0), c(0.5 * x, -0.5 * y), c(0.5 * x, 0.5 * y), c(0.5 * (1.0 - z), 0.0)],
    )
}

pub fn apply_channel(ch: &PauliChannel, state: &BlochVector) -> HermitianMatrix {
    let rho = density_from_bloch(state);
    HermitianMatrix::symmetrized(2, conjugation_sum(ch.q_f64(), rho.entries(), 1))
}

/// (E ⊗ I)(|Φ⟩⟨Φ|) with |Φ⟩ = (|00⟩ + |11⟩)/√2.
pub fn bell_output(ch: &PauliChannel) -> HermitianMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let phi = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
    let projector = HermitianMatrix::from_projectors(4, &[&phi], &[1.0]);
    HermitianMatrix::symmetrized(4, conjugation_sum(ch.q_f64(), projector.entries(), 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::oracle::linalg::eigh;
    use crate::risk::Axis;

    fn channel(values: [&str; 4]) -> PauliChannel {
        PauliChannel::new(values.map(|s| s.parse::<Rational>().unwrap())).unwrap()
    }

    #[test]
    fn identity_channel_keeps_state() {
        let state = BlochVector::from_angles(1.1, 0.4);
        let out = apply_channel(&PauliChannel::identity(), &state);
        assert!(out.max_abs_diff(&density_from_bloch(&state)) < 1e-15);
    }

    #[test]
    fn phase_flip_fixes_z_eigenstate() {
        let up = BlochVector::eigenstate(Axis::Z, true);
        let out = apply_channel(&channel(["0", "0", "0", "1"]), &up);
        assert!(out.max_abs_diff(&density_from_bloch(&up)) < 1e-15);
    }

    #[test]
    fn depolarizing_twirls_to_maximally_mixed() {
        let out = apply_channel(&channel(["1/4", "1/4", "1/4", "1/4"]), &BlochVector::from_angles(0.3, 2.0));
        let half = HermitianMatrix::identity(2).combine(0.5, &HermitianMatrix::identity(2), 0.0).unwrap();
        assert!(out.max_abs_diff(&half) < 1e-15);
        assert!((out.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bell_output_of_identity_is_bell_projector() {
        let out = bell_output(&PauliChannel::identity());
        let h = 0.5;
        for (i, j, want) in [(0, 0, h), (0, 3, h), (3, 0, h), (3, 3, h), (1, 1, 0.0), (0, 1, 0.0)] {
            assert!((out.get(i, j) - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn bell_output_spectrum_is_weights() {
        let e = eigh(&bell_output(&channel(["0.3", "0.4", "0.2", "0.1"]))).unwrap();
        for (got, want) in e.values.iter().zip([0.4, 0.3, 0.2, 0.1]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}

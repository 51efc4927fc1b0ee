//! Dense complex Hermitian matrices and their eigen-decomposition.
//!
//! Dimension 2 uses the closed form; larger matrices use cyclic complex
//! Jacobi rotations, stopped once the off-diagonal Frobenius norm drops below
//! 1e-13 relative to the matrix norm, or after 100 sweeps.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const HERMITIAN_TOL: f64 = 1e-12;
const OFFDIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Row-major `dim × dim` Hermitian matrix, `dim ∈ {2, 4}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<C64>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("unsupported dimension {dim}")))
    }
}

impl HermitianMatrix {
    /// Validate a row-major matrix; entries must be Hermitian within 1e-12.
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!("{} entries for dimension {dim}", data.len())));
        }
        let scale = data.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                worst = worst.max((data[i * dim + j] - data[j * dim + i].conj()).norm());
            }
        }
        if worst > HERMITIAN_TOL * scale {
            return Err(Error::NotHermitian(worst));
        }
        Ok(Self::symmetrized(dim, data))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Self::new(dim, rows.concat())
    }

    /// (A + A†)/2 for a matrix built by trusted arithmetic.
    pub(crate) fn symmetrized(dim: usize, mut data: Vec<C64>) -> Self {
        for i in 0..dim {
            data[i * dim + i] = C64::new(data[i * dim + i].re, 0.0);
            for j in i + 1..dim {
                let avg = (data[i * dim + j] + data[j * dim + i].conj()) * 0.5;
                data[i * dim + j] = avg;
                data[j * dim + i] = avg.conj();
            }
        }
        HermitianMatrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C64::new(1.0, 0.0);
        }
        HermitianMatrix { dim, data }
    }

    /// `Σ_k w_k v_k v_k†` over the given columns.
    pub fn from_projectors(dim: usize, vectors: &[&[C64]], weights: &[f64]) -> Self {
        let mut data = vec![C64::new(0.0, 0.0); dim * dim];
        for (v, &w) in vectors.iter().zip(weights) {
            for i in 0..dim {
                for j in 0..dim {
                    data[i * dim + j] += v[i] * v[j].conj() * w;
                }
            }
        }
        Self::symmetrized(dim, data)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &HermitianMatrix, b: f64) -> Result<HermitianMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.dim, other.dim)));
        }
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x * a + y * b).collect();
        Ok(HermitianMatrix { dim: self.dim, data })
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).sum()
    }

    /// Re Tr[self · other].
    pub fn trace_product(&self, other: &HermitianMatrix) -> f64 {
        let n = self.dim;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc.re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector for `values[k]`.
    pub vectors: Vec<Vec<C64>>,
}

impl Eigen {
    /// Σ |λ_k|.
    pub fn trace_norm(&self) -> f64 {
        self.values.iter().map(|l| l.abs()).sum()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().map(|l| l.abs()).fold(0.0, f64::max)
    }

    /// V Λ V†.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let n = self.values.len();
        let refs: Vec<&[C64]> = self.vectors.iter().map(|v| v.as_slice()).collect();
        HermitianMatrix::from_projectors(n, &refs, &self.values)
    }
}

pub fn eigh(h: &HermitianMatrix) -> Result<Eigen> {
    let mut pairs = if h.dim == 2 { eigh2(h) } else { jacobi(h)? };
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(Eigen { values, vectors })
}

fn normalized(v: [C64; 2]) -> Vec<C64> {
    let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    vec![v[0] / norm, v[1] / norm]
}

fn eigh2(h: &HermitianMatrix) -> Vec<(f64, Vec<C64>)> {
    let (a, b, d) = (h.get(0, 0).re, h.get(0, 1), h.get(1, 1).re);
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let scale = a.abs().max(d.abs()).max(b.norm()).max(f64::MIN_POSITIVE);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    if b.norm() <= 1e-15 * scale {
        return vec![(a, vec![one, zero]), (d, vec![zero, one])];
    }
    [mean + radius, mean - radius]
        .into_iter()
        .map(|lambda| {
            // Two null vectors of (H − λ); keep the better-conditioned one.
            let u = [b, C64::new(lambda - a, 0.0)];
            let w = [C64::new(lambda - d, 0.0), b.conj()];
            let pick = if u[0].norm_sqr() + u[1].norm_sqr() >= w[0].norm_sqr() + w[1].norm_sqr() { u } else { w };
            (lambda, normalized(pick))
        })
        .collect()
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[i * n + j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi: each rotation is a phase on column q followed by a real
/// plane rotation that zeroes a[p][q].
fn jacobi(h: &HermitianMatrix) -> Result<Vec<(f64, Vec<C64>)>> {
    let n = h.dim;
    let mut a = h.data.clone();
    let mut v = HermitianMatrix::identity(n).data;
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= OFFDIAG_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let magnitude = apq.norm();
                if magnitude <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / magnitude; // e^{iα}
                let (app, aqq) = (a[p * n + p].re, a[q * n + q].re);
                let theta = (aqq - app) / (2.0 * magnitude);
                let t = if theta == 0.0 { 1.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U restricted to (p, q).
                let u_pp = C64::new(c, 0.0);
                let u_pq = C64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                // A ← A U (columns p, q).
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = akp * u_pp + akq * u_qp;
                    a[k * n + q] = akp * u_pq + akq * u_qq;
                }
                // A ← U† A (rows p, q).
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[p * n + q] = C64::new(0.0, 0.0);
                a[q * n + p] = C64::new(0.0, 0.0);
                // V ← V U.
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = vkp * u_pp + vkq * u_qp;
                    v[k * n + q] = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a, n) > OFFDIAG_TOL * scale {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    Ok((0..n).map(|k| (a[k * n + k].re, (0..n).map(|i| v[i * n + k]).collect())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<C64>> {
        // Gram–Schmidt on random complex columns.
        let mut cols: Vec<Vec<C64>> = Vec::new();
        while cols.len() < n {
            let mut v: Vec<C64> = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            for u in &cols {
                let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for i in 0..n {
                    v[i] -= u[i] * overlap;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-3 {
                cols.push(v.into_iter().map(|z| z / norm).collect());
            }
        }
        cols
    }

    #[test]
    fn diagonal_and_pauli_x() {
        let d = HermitianMatrix::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]).unwrap();
        let e = eigh(&d).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0]);
        assert!((e.vectors[0][1].norm() - 1.0).abs() < 1e-15);
        let x = HermitianMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let e = eigh(&x).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15 && (e.values[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = HermitianMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        assert!(matches!(m, Err(Error::NotHermitian(_))));
        assert!(HermitianMatrix::new(3, vec![c(0.0, 0.0); 9]).is_err());
    }

    #[test]
    fn recovers_constructed_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2usize, 4] {
            for _ in 0..50 {
                let frame = random_unitary(&mut rng, n);
                let mut lambdas: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let refs: Vec<&[C64]> = frame.iter().map(|v| v.as_slice()).collect();
                let h = HermitianMatrix::from_projectors(n, &refs, &lambdas);
                let e = eigh(&h).unwrap();
                lambdas.sort_by(|a, b| b.total_cmp(a));
                for (got, want) in e.values.iter().zip(&lambdas) {
                    assert!((got - want).abs() < 1e-10, "n={n}: {got} vs {want}");
                }
                assert!(e.reconstruct().max_abs_diff(&h) < 1e-10);
                for k in 0..n {
                    for l in 0..n {
                        let dot: C64 = e.vectors[k].iter().zip(&e.vectors[l]).map(|(a, b)| a.conj() * b).sum();
                        let want = if k == l { 1.0 } else { 0.0 };
                        assert!((dot - c(want, 0.0)).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_four_by_four() {
        // Bell projector: eigenvalues (1, 0, 0, 0).
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        let h = HermitianMatrix::from_projectors(4, &[&phi], &[1.0]);
        let e = eigh(&h).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!(e.values[1..].iter().all(|l| l.abs() < 1e-14));
        assert!(eigh(&HermitianMatrix::identity(4)).unwrap().values.iter().all(|&l| l == 1.0));
    }
}

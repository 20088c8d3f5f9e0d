//! Dense complex Hermitian matrices and a cyclic Jacobi eigensolver.
//!
//! The Floquet matrices in this crate are tiny (n ≤ 12), so instead of
//! pulling in a LAPACK binding we diagonalize with cyclic Jacobi rotations
//! on the complex matrix. Each rotation annihilates one off-diagonal pair
//! exactly; the off-diagonal Frobenius norm decreases monotonically and the
//! iteration converges quadratically. Eigenvalues come out accurate to well
//! below 1e-11 absolute for entries of magnitude up to 10.
//!
//! The finite-torus oracle in [`crate::torus`] deliberately uses a different
//! eigensolver (nalgebra's symmetric QR), so Floquet/torus comparisons
//! cross-check two independent implementations.

use num_complex::Complex64;

/// Relative off-diagonal Frobenius threshold at which the sweep stops.
const SWEEP_TOL: f64 = 1e-15;
/// Hard cap on Jacobi sweeps; small Hermitian matrices converge in < 10.
const MAX_SWEEPS: usize = 64;

/// Dense n×n complex Hermitian matrix, row-major.
///
/// Construction goes through [`HermitianMatrix::add_hermitian_pair`], which
/// writes an entry and its conjugate transpose together, so the matrix is
/// Hermitian by construction (defect exactly zero up to the rounding of
/// `z + conj(z)` on the diagonal).
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::ZERO; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, z: Complex64) {
        self.data[i * self.n + j] = z;
    }

    /// Add `z` at (i, j) and `conj(z)` at (j, i). For i == j this adds
    /// `z + conj(z)` (used by self-connecting edge classes, which contribute
    /// both translation directions to the diagonal).
    pub fn add_hermitian_pair(&mut self, i: usize, j: usize, z: Complex64) {
        if i == j {
            let d = self.data[i * self.n + i];
            self.set(i, i, d + z + z.conj());
        } else {
            let a = self.get(i, j);
            let b = self.get(j, i);
            self.set(i, j, a + z);
            self.set(j, i, b + z.conj());
        }
    }

    /// Real diagonal entry (imaginary part is zero by construction).
    pub fn diag(&self, i: usize) -> f64 {
        self.get(i, i).re
    }

    /// Largest entrywise deviation from conjugate symmetry,
    /// `|H[i][j] − conj(H[j][i])|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// All eigenvalues in ascending order, by cyclic Jacobi.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![self.diag(0)];
        }

        let mut a = self.data.clone();
        let scale = self.frobenius_norm().max(1.0);
        let stop = (SWEEP_TOL * scale).powi(2);

        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
                .map(|(p, q)| a[p * n + q].norm_sqr())
                .sum();
            if off <= stop {
                break;
            }
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, n, p, q);
                }
            }
        }

        let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
        eigs.sort_by(f64::total_cmp);
        eigs
    }
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
///
/// With b = a[p][q] = |b|·e^{iφ}, the unitary
///   J = [[c, −s·e^{iφ}], [s·e^{−iφ}, c]]
/// acting on coordinates (p, q) zeroes the pivot when t = s/c solves
/// t² − 2τt − 1 = 0 with τ = (a[q][q] − a[p][p]) / (2|b|); we take the
/// smaller-magnitude root for stability.
fn jacobi_rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let abs = apq.norm();
    if abs == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let phase = apq / abs;

    let tau = (aqq - app) / (2.0 * abs);
    let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    for i in 0..n {
        if i == p || i == q {
            continue;
        }
        let aip = a[i * n + p];
        let aiq = a[i * n + q];
        let new_ip = c * aip + s * phase.conj() * aiq;
        let new_iq = -s * phase * aip + c * aiq;
        a[i * n + p] = new_ip;
        a[i * n + q] = new_iq;
        a[p * n + i] = new_ip.conj();
        a[q * n + i] = new_iq.conj();
    }

    let new_pp = c * c * app + 2.0 * c * s * abs + s * s * aqq;
    let new_qq = s * s * app - 2.0 * c * s * abs + c * c * aqq;
    a[p * n + p] = Complex64::new(new_pp, 0.0);
    a[q * n + q] = Complex64::new(new_qq, 0.0);
    a[p * n + q] = Complex64::ZERO;
    a[q * n + p] = Complex64::ZERO;
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn from_rows(rows: &[&[Complex64]]) -> HermitianMatrix {
        let n = rows.len();
        let mut h = HermitianMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &z) in row.iter().enumerate() {
                h.data[i * n + j] = z;
            }
        }
        assert!(h.hermiticity_defect() < 1e-14);
        h
    }

    /// Independent oracle: embed H = A + iB into the real symmetric
    /// [[A, −B], [B, A]] of doubled dimension and diagonalize with nalgebra.
    /// Its 2n eigenvalues are those of H, each twice.
    fn embedding_eigenvalues(h: &HermitianMatrix) -> Vec<f64> {
        let n = h.n();
        let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = h.get(i, j);
                m[(i, j)] = z.re;
                m[(n + i, n + j)] = z.re;
                m[(i, n + j)] = -z.im;
                m[(n + i, j)] = z.im;
            }
        }
        let mut eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eigs.sort_by(f64::total_cmp);
        // pairs (2k, 2k+1) agree; keep one of each
        eigs.into_iter().step_by(2).collect()
    }

    fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianMatrix {
        let mut h = HermitianMatrix::zeros(n);
        for i in 0..n {
            h.add_hermitian_pair(i, i, Complex64::new(rng.random_range(-5.0..5.0), 0.0));
            for j in (i + 1)..n {
                let z = Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
                h.add_hermitian_pair(i, j, z);
            }
        }
        h
    }

    #[test]
    fn identity_eigenvalues() {
        let mut h = HermitianMatrix::zeros(3);
        for i in 0..3 {
            h.add_hermitian_pair(i, i, Complex64::new(1.0, 0.0));
        }
        // diagonal pairs add z + conj(z) = 2, so halve
        let mut id = HermitianMatrix::zeros(3);
        for i in 0..3 {
            id.add_hermitian_pair(i, i, Complex64::new(0.5, 0.0));
        }
        assert_eq!(id.eigenvalues(), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn constant_offdiagonal_3x3() {
        // all off-diagonal entries 2: eigenvalues (−2, −2, 4)
        let two = Complex64::new(2.0, 0.0);
        let zero = Complex64::ZERO;
        let h = from_rows(&[&[zero, two, two], &[two, zero, two], &[two, two, zero]]);
        let e = h.eigenvalues();
        assert!((e[0] + 2.0).abs() < 1e-13);
        assert!((e[1] + 2.0).abs() < 1e-13);
        assert!((e[2] - 4.0).abs() < 1e-13);
    }

    #[test]
    fn pauli_y_type() {
        let i = Complex64::new(0.0, 1.0);
        let zero = Complex64::ZERO;
        let h = from_rows(&[&[zero, i], &[-i, zero]]);
        let e = h.eigenvalues();
        assert!((e[0] + 1.0).abs() < 1e-14);
        assert!((e[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trace_and_frobenius_are_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=12 {
            let h = random_hermitian(&mut rng, n);
            let e = h.eigenvalues();
            let trace: f64 = (0..n).map(|i| h.diag(i)).sum();
            let fro2: f64 = h.frobenius_norm().powi(2);
            let sum: f64 = e.iter().sum();
            let sq: f64 = e.iter().map(|x| x * x).sum();
            assert!((trace - sum).abs() < 1e-10 * (1.0 + trace.abs()));
            assert!((fro2 - sq).abs() < 1e-9 * (1.0 + fro2));
        }
    }

    #[test]
    fn matches_real_embedding_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.random_range(1..=12);
            let h = random_hermitian(&mut rng, n);
            let mine = h.eigenvalues();
            let oracle = embedding_eigenvalues(&h);
            for (a, b) in mine.iter().zip(oracle.iter()) {
                assert!((a - b).abs() < 1e-11, "n={n}: {a} vs {b}");
            }
        }
    }

    proptest! {
        #[test]
        fn prop_eigenvalues_match_embedding(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(2..=8);
            let h = random_hermitian(&mut rng, n);
            let mine = h.eigenvalues();
            let oracle = embedding_eigenvalues(&h);
            for (a, b) in mine.iter().zip(oracle.iter()) {
                prop_assert!((a - b).abs() < 1e-11);
            }
        }
    }
}

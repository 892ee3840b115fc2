//! Dense complex numerical kernels.
//!
//! Everything here acts on normal matrices, so a Hermitian eigensolver
//! carries the whole module: the exponential of a skew-Hermitian operator and
//! the principal logarithm of a unitary both reduce to it. The eigensolver is
//! a cyclic Jacobi iteration, which is dependency-free and entirely adequate
//! for the dimensions a feature map produces (at most 1024).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{DenseMatrix, SkewHermitianOp};

/// Iteration cap for the Jacobi sweeps.
const MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius tolerance, relative to the input scale.
const OFF_TOL: f64 = 1e-12;
/// Unitarity certificate threshold for [`UnitaryMatrix`].
const UNITARY_TOL: f64 = 1e-9;
/// Eigenphases closer than this to the -pi branch cut are rejected.
const BRANCH_TOL: f64 = 1e-10;

/// Result of a Hermitian eigendecomposition `H = V diag(lambda) V^dagger`
/// with eigenvalues ascending and orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DenseMatrix,
}

impl EigenDecomposition {
    /// Rebuild `V diag(f(lambda)) V^dagger`.
    pub fn assemble(&self, f: impl Fn(f64) -> Complex64) -> DenseMatrix {
        let v = &self.eigenvectors;
        let n = v.dim();
        let mut scaled = DenseMatrix::zeros(n);
        for c in 0..n {
            let d = f(self.eigenvalues[c]);
            for r in 0..n {
                scaled.set(r, c, v.get(r, c) * d);
            }
        }
        scaled.mul(&v.adjoint()).expect("same dimension")
    }
}

/// A dense matrix together with the certified property `U^dagger U = I`.
#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    matrix: DenseMatrix,
}

impl UnitaryMatrix {
    pub fn new(matrix: DenseMatrix) -> Result<UnitaryMatrix> {
        let gram = matrix.adjoint().mul(&matrix)?;
        let residual = gram.sub(&DenseMatrix::identity(matrix.dim()))?.fro_norm();
        if residual >= UNITARY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(UnitaryMatrix { matrix })
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix { matrix: self.matrix.adjoint() }
    }

    pub fn determinant(&self) -> Result<Complex64> {
        let (phases, _) = unitary_eig(self)?;
        let total: f64 = phases.iter().sum();
        Ok(Complex64::new(0.0, total).exp())
    }
}

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Each rotation annihilates one off-diagonal entry with a complex plane
/// rotation; sweeps repeat until the off-diagonal Frobenius norm falls below
/// `1e-12` relative to the input norm.
pub fn herm_eig(h: &DenseMatrix) -> Result<EigenDecomposition> {
    let scale = h.fro_norm().max(1.0);
    let herm_residual = h.hermitian_residual();
    if herm_residual >= 1e-10 * scale {
        return Err(Error::NotHermitian { residual: herm_residual });
    }

    let n = h.dim();
    let mut a = h.clone();
    let mut v = DenseMatrix::identity(n);

    let off_norm = |a: &DenseMatrix| -> f64 {
        let mut sum = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                sum += a.get(p, q).norm_sqr();
            }
        }
        (2.0 * sum).sqrt()
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) < OFF_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let h_pq = a.get(p, q);
                let ah = h_pq.norm();
                if ah == 0.0 {
                    continue;
                }
                // Annihilate (p, q): t solves t^2 - 2*tau*t - 1 = 0 with
                // tau = (a_qq - a_pp) / (2|h|); the smaller root keeps the
                // rotation angle below pi/4.
                let alpha = h_pq.arg();
                let tau = (a.get(q, q).re - a.get(p, p).re) / (2.0 * ah);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = Complex64::from_polar(t * c, -alpha);

                rotate_columns(&mut a, p, q, c, s);
                rotate_rows(&mut a, p, q, c, s);
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                rotate_columns(&mut v, p, q, c, s);
            }
        }
    }
    if !converged && off_norm(&a) >= OFF_TOL * scale {
        return Err(Error::NoConvergence { residual: off_norm(&a) });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.partial_cmp(&a.get(j, j).re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let eigenvectors = DenseMatrix::from_fn(n, |r, c| v.get(r, order[c]));
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// Apply the rotation `U = [[c, -conj(s)], [s, c]]` on columns `p`, `q`.
fn rotate_columns(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: Complex64) {
    let n = m.dim();
    for r in 0..n {
        let mp = m.get(r, p);
        let mq = m.get(r, q);
        m.set(r, p, c * mp + s * mq);
        m.set(r, q, -s.conj() * mp + c * mq);
    }
}

/// Apply the adjoint rotation on rows `p`, `q`.
fn rotate_rows(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: Complex64) {
    let n = m.dim();
    for col in 0..n {
        let mp = m.get(p, col);
        let mq = m.get(q, col);
        m.set(p, col, c * mp + s.conj() * mq);
        m.set(q, col, -s * mp + c * mq);
    }
}

/// Exponential of a skew-Hermitian operator: writes `A = -iH` with `H`
/// Hermitian and returns `V diag(e^{-i lambda}) V^dagger`.
pub fn expm_skew(a: &SkewHermitianOp) -> Result<UnitaryMatrix> {
    let eig = herm_eig(&a.hermitian_part())?;
    let u = eig.assemble(|lambda| Complex64::new(0.0, -lambda).exp());
    UnitaryMatrix::new(u)
}

/// Cluster width for the first stage of the joint diagonalization. Wide on
/// purpose: anything grouped here is split exactly by a later stage, while
/// pairs outside a cluster are separated with eigenvector error bounded by
/// (Jacobi residual) / CLUSTER_TOL.
const CLUSTER_TOL: f64 = 1e-3;
/// Width for the final stage, which must only touch sin-eigenvalues that are
/// degenerate at working precision; re-diagonalizing across genuinely
/// distinct sines would undo the previous stage's separation.
const DEGENERATE_TOL: f64 = 1e-10;

/// Eigendecomposition of a unitary: phases in `(-pi, pi]` plus orthonormal
/// eigenvectors.
///
/// A unitary is normal, so its Hermitian `cos` part `(U + U^dagger)/2` and
/// `sin` part `(U - U^dagger)/(2i)` commute and share an eigenbasis. Three
/// alternating stages find it: diagonalize the cos part, diagonalize the
/// sin part inside each cos-eigenvalue cluster, then diagonalize the cos
/// residue inside each remaining (cos, sin) cluster. The last stage matters
/// for phase pairs mirrored about `+-pi/2`, whose sines coincide while the
/// cosines only nearly do. Phases come from Rayleigh quotients of the final
/// basis, which are second-order accurate in any leftover mixing.
pub fn unitary_eig(u: &UnitaryMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let m = u.matrix();
    let n = m.dim();
    let adj = m.adjoint();
    let cos_part = m.add(&adj)?.scaled(Complex64::new(0.5, 0.0));
    let sin_part = m.sub(&adj)?.scaled(Complex64::new(0.0, -0.5));

    let cos_eig = herm_eig(&cos_part)?;
    let mut v = cos_eig.eigenvectors.clone();

    // stage 2: split sin inside each cos cluster
    let mut sin_diag = vec![0.0; n];
    {
        let sin_rotated = v.adjoint().mul(&sin_part)?.mul(&v)?;
        for (c, value) in sin_diag.iter_mut().enumerate() {
            *value = sin_rotated.get(c, c).re;
        }
        for (start, end) in clusters(&cos_eig.eigenvalues, CLUSTER_TOL) {
            diagonalize_block(&mut v, &sin_rotated, start, end, &mut sin_diag)?;
        }
    }

    // stage 3: split the cos residue inside each (cos, sin) cluster
    {
        let cos_rotated = v.adjoint().mul(&cos_part)?.mul(&v)?;
        let mut cos_diag = vec![0.0; n];
        for (c, value) in cos_diag.iter_mut().enumerate() {
            *value = cos_rotated.get(c, c).re;
        }
        for (outer_start, outer_end) in clusters(&cos_eig.eigenvalues, CLUSTER_TOL) {
            // stage 2 sorted each cos cluster by ascending sin eigenvalue
            for (start, end) in clusters(&sin_diag[outer_start..outer_end], DEGENERATE_TOL) {
                diagonalize_block(
                    &mut v,
                    &cos_rotated,
                    outer_start + start,
                    outer_start + end,
                    &mut cos_diag,
                )?;
            }
        }
    }

    // Rayleigh-quotient phases from the settled basis
    let cos_final = v.adjoint().mul(&cos_part)?.mul(&v)?;
    let sin_final = v.adjoint().mul(&sin_part)?.mul(&v)?;
    let phases = (0..n)
        .map(|c| f64::atan2(sin_final.get(c, c).re, cos_final.get(c, c).re))
        .collect();
    Ok((phases, v))
}

/// Maximal runs of consecutive values closer than `tol`; the input is
/// ascending within the ranges this is called on.
fn clusters(values: &[f64], tol: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[i] - values[i - 1]).abs() >= tol {
            out.push((start, i));
            start = i;
        }
    }
    out
}

/// Diagonalize `rotated[start..end)` (a Hermitian block in the current
/// basis) and fold its eigenvectors into the corresponding columns of `v`,
/// updating the tracked diagonal.
fn diagonalize_block(
    v: &mut DenseMatrix,
    rotated: &DenseMatrix,
    start: usize,
    end: usize,
    diag: &mut [f64],
) -> Result<()> {
    let block = end - start;
    if block < 2 {
        return Ok(());
    }
    let n = v.dim();
    let mut sub = DenseMatrix::from_fn(block, |r, c| rotated.get(start + r, start + c));
    // symmetrize away the rotation residue before the inner solve
    sub = sub.add(&sub.adjoint())?.scaled(Complex64::new(0.5, 0.0));
    let sub_eig = herm_eig(&sub)?;
    let old: Vec<Vec<Complex64>> =
        (0..n).map(|r| (0..block).map(|c| v.get(r, start + c)).collect()).collect();
    for (r, old_row) in old.iter().enumerate() {
        for c in 0..block {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, value) in old_row.iter().enumerate() {
                acc += value * sub_eig.eigenvectors.get(k, c);
            }
            v.set(r, start + c, acc);
        }
    }
    diag[start..end].copy_from_slice(&sub_eig.eigenvalues);
    Ok(())
}

/// Principal logarithm of a unitary: eigenphases taken in `(-pi, pi]`.
///
/// Phases within `1e-10` of `-pi` sit on the branch cut and are rejected;
/// the caller must perturb the input.
pub fn logm_unitary(u: &UnitaryMatrix) -> Result<DenseMatrix> {
    let (phases, v) = unitary_eig(u)?;
    for &phase in &phases {
        if phase <= -std::f64::consts::PI + BRANCH_TOL {
            return Err(Error::BranchAmbiguity { phase });
        }
    }
    let n = v.dim();
    let mut scaled = DenseMatrix::zeros(n);
    for (c, phase) in phases.iter().enumerate() {
        let d = Complex64::new(0.0, *phase);
        for r in 0..n {
            scaled.set(r, c, v.get(r, c) * d);
        }
    }
    scaled.mul(&v.adjoint())
}

/// Geodesic distance on `SU(N)`: `||log(U1^dagger U2)||_F`.
pub fn dist_su(u1: &UnitaryMatrix, u2: &UnitaryMatrix) -> Result<f64> {
    if u1.dim() != u2.dim() {
        return Err(Error::DimMismatch { left: u1.dim(), right: u2.dim() });
    }
    let w = UnitaryMatrix::new(u1.matrix().adjoint().mul(u2.matrix())?)?;
    Ok(logm_unitary(&w)?.fro_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliString;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_hermitian(rng: &mut StdRng, n: usize) -> DenseMatrix {
        let raw = DenseMatrix::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        raw.add(&raw.adjoint()).unwrap().scaled(Complex64::new(0.5, 0.0))
    }

    fn op(terms: &[(&str, f64)]) -> SkewHermitianOp {
        let qubits = terms[0].0.len();
        SkewHermitianOp::from_terms(
            qubits,
            terms.iter().map(|(s, c)| (s.parse::<PauliString>().unwrap(), *c)),
        )
        .unwrap()
    }

    #[test]
    fn eig_identity() {
        let eig = herm_eig(&DenseMatrix::identity(8)).unwrap();
        for lambda in eig.eigenvalues {
            assert!((lambda - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eig_pauli_x() {
        let x = "X".parse::<PauliString>().unwrap().to_matrix();
        let eig = herm_eig(&x).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, Complex64::new(1.0, 0.0));
        assert!(matches!(herm_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_reconstructs_random_8x8() {
        let mut rng = StdRng::seed_from_u64(31);
        let h = random_hermitian(&mut rng, 8);
        let eig = herm_eig(&h).unwrap();
        let rec = eig.assemble(|l| Complex64::new(l, 0.0));
        assert!(rec.fro_dist(&h) / h.fro_norm().max(1.0) < 1e-9);
    }

    #[test]
    fn eig_orthonormal_eigenvectors_up_to_dim_64() {
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..100 {
            let n = rng.gen_range(2..=64);
            let h = random_hermitian(&mut rng, n);
            let eig = herm_eig(&h).unwrap();
            let gram = eig.eigenvectors.adjoint().mul(&eig.eigenvectors).unwrap();
            assert!(gram.sub(&DenseMatrix::identity(n)).unwrap().fro_norm() < 1e-10);
        }
    }

    #[test]
    fn expm_zero_is_identity() {
        let u = expm_skew(&SkewHermitianOp::zero(2)).unwrap();
        assert!(u.matrix().fro_dist(&DenseMatrix::identity(4)) < 1e-14);
    }

    #[test]
    fn expm_pi_x_is_minus_identity() {
        let u = expm_skew(&op(&[("X", std::f64::consts::PI)])).unwrap();
        let minus_i2 = DenseMatrix::identity(2).scaled(Complex64::new(-1.0, 0.0));
        assert!(u.matrix().fro_dist(&minus_i2) < 1e-12);
    }

    #[test]
    fn expm_matches_taylor_series() {
        // exp(-i theta X) at theta = 0.3 against a term-by-term Taylor oracle
        let theta = 0.3;
        let u = expm_skew(&op(&[("X", theta)])).unwrap();
        let a = op(&[("X", theta)]).to_dense();
        let mut oracle = DenseMatrix::identity(2);
        let mut term = DenseMatrix::identity(2);
        for k in 1..40 {
            term = term.mul(&a).unwrap().scaled(Complex64::new(1.0 / k as f64, 0.0));
            oracle = oracle.add(&term).unwrap();
        }
        assert!(u.matrix().fro_dist(&oracle) < 1e-12);
        // and against the closed form cos(theta) I - i sin(theta) X
        let x = "X".parse::<PauliString>().unwrap().to_matrix();
        let closed = DenseMatrix::identity(2)
            .scaled(Complex64::new(theta.cos(), 0.0))
            .add(&x.scaled(Complex64::new(0.0, -theta.sin())))
            .unwrap();
        assert!(u.matrix().fro_dist(&closed) < 1e-12);
    }

    #[test]
    fn expm_determinant_one_for_traceless() {
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..10 {
            let a = op(&[
                ("XI", rng.gen_range(-1.0..1.0)),
                ("ZY", rng.gen_range(-1.0..1.0)),
                ("YY", rng.gen_range(-1.0..1.0)),
            ]);
            let u = expm_skew(&a).unwrap();
            let det = u.determinant().unwrap();
            assert!((det - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn log_identity_is_zero() {
        let u = UnitaryMatrix::new(DenseMatrix::identity(4)).unwrap();
        assert!(logm_unitary(&u).unwrap().fro_norm() < 1e-12);
    }

    #[test]
    fn log_recovers_generator() {
        let a = op(&[("X", 0.4)]);
        let u = expm_skew(&a).unwrap();
        let log = logm_unitary(&u).unwrap();
        assert!(log.fro_dist(&a.to_dense()) < 1e-9);
    }

    #[test]
    fn log_diagonal_principal_branch() {
        let m = DenseMatrix::from_fn(2, |r, c| {
            if r != c {
                Complex64::new(0.0, 0.0)
            } else if r == 0 {
                Complex64::new(0.0, 3.0).exp()
            } else {
                Complex64::new(0.0, -3.0).exp()
            }
        });
        let log = logm_unitary(&UnitaryMatrix::new(m).unwrap()).unwrap();
        assert!((log.get(0, 0) - Complex64::new(0.0, 3.0)).norm() < 1e-12);
        assert!((log.get(1, 1) - Complex64::new(0.0, -3.0)).norm() < 1e-12);
    }

    #[test]
    fn log_branch_cut_rejected() {
        let m = DenseMatrix::from_fn(2, |r, c| {
            if r != c {
                Complex64::new(0.0, 0.0)
            } else if r == 0 {
                Complex64::new(0.0, -(std::f64::consts::PI - 1e-13)).exp()
            } else {
                Complex64::new(1.0, 0.0)
            }
        });
        let res = logm_unitary(&UnitaryMatrix::new(m).unwrap());
        assert!(matches!(res, Err(Error::BranchAmbiguity { .. })));
    }

    /// A unitary with prescribed eigenphases, conjugated by a random basis.
    fn unitary_with_phases(rng: &mut StdRng, phases: &[f64]) -> UnitaryMatrix {
        let n = phases.len();
        let raw = DenseMatrix::from_fn(n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let h = raw.add(&raw.adjoint()).unwrap().scaled(Complex64::new(0.5, 0.0));
        let basis = herm_eig(&h).unwrap().eigenvectors;
        let mut scaled = DenseMatrix::zeros(n);
        for (c, phase) in phases.iter().enumerate() {
            let d = Complex64::new(0.0, *phase).exp();
            for r in 0..n {
                scaled.set(r, c, basis.get(r, c) * d);
            }
        }
        UnitaryMatrix::new(scaled.mul(&basis.adjoint()).unwrap()).unwrap()
    }

    #[test]
    fn log_handles_near_degenerate_phase_pairs() {
        // adversarial spectra: phases mirrored about pi/2 (equal sines,
        // nearby cosines), phases mirrored about 0 (equal cosines, nearby
        // sines), and combinations at several proximity scales
        let mut rng = StdRng::seed_from_u64(42);
        let pi = std::f64::consts::PI;
        for u in [1e-4, 1e-6, 1e-9, 1e-12] {
            let spectra: Vec<Vec<f64>> = vec![
                vec![pi / 2.0 - u, pi / 2.0 + u],
                vec![-pi / 2.0 - u, -pi / 2.0 + u, 0.3],
                vec![0.7, 0.7 + u, -0.7, -0.7 - u],
                vec![u, -u, pi / 2.0 - u, pi / 2.0 + u],
                vec![2.0, -2.0 + u, 1.0, 1.0 + u],
            ];
            for phases in spectra {
                let w = unitary_with_phases(&mut rng, &phases);
                let log = logm_unitary(&w).unwrap();
                // rebuild and compare against the original unitary
                let eig = herm_eig(&log.scaled(Complex64::new(0.0, -1.0))).unwrap();
                let back = eig.assemble(|l| Complex64::new(0.0, l).exp());
                assert!(
                    back.fro_dist(w.matrix()) < 1e-10,
                    "phases {phases:?} u={u}: {}",
                    back.fro_dist(w.matrix())
                );
            }
        }
    }

    #[test]
    fn exp_log_roundtrip_random() {
        let mut rng = StdRng::seed_from_u64(43);
        for _ in 0..30 {
            // scale so all eigenphases stay inside (-pi, pi)
            let a = op(&[
                ("XY", rng.gen_range(-0.4..0.4)),
                ("ZI", rng.gen_range(-0.4..0.4)),
                ("YZ", rng.gen_range(-0.4..0.4)),
            ]);
            let u = expm_skew(&a).unwrap();
            let log = logm_unitary(&u).unwrap();
            assert!(log.fro_dist(&a.to_dense()) < 1e-8);
        }
    }

    #[test]
    fn dist_su_zero_on_equal() {
        let u = expm_skew(&op(&[("XZ", 0.7)])).unwrap();
        assert!(dist_su(&u, &u).unwrap() < 1e-9);
    }

    #[test]
    fn dist_su_single_rotation() {
        // dist(I, exp(-i theta X)) = ||diag(theta, -theta)||_F = theta*sqrt(2)
        let theta = 0.5;
        let id = UnitaryMatrix::new(DenseMatrix::identity(2)).unwrap();
        let u = expm_skew(&op(&[("X", theta)])).unwrap();
        let d = dist_su(&id, &u).unwrap();
        assert!((d - theta * 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn dist_su_left_invariant_and_symmetric() {
        let mut rng = StdRng::seed_from_u64(47);
        for _ in 0..10 {
            let u1 = expm_skew(&op(&[
                ("XI", rng.gen_range(-0.5..0.5)),
                ("YZ", rng.gen_range(-0.5..0.5)),
            ]))
            .unwrap();
            let u2 = expm_skew(&op(&[
                ("ZZ", rng.gen_range(-0.5..0.5)),
                ("IX", rng.gen_range(-0.5..0.5)),
            ]))
            .unwrap();
            let v = expm_skew(&op(&[
                ("XX", rng.gen_range(-0.5..0.5)),
                ("ZI", rng.gen_range(-0.5..0.5)),
            ]))
            .unwrap();
            let d12 = dist_su(&u1, &u2).unwrap();
            let d21 = dist_su(&u2, &u1).unwrap();
            assert!((d12 - d21).abs() < 1e-9);
            let vu1 = UnitaryMatrix::new(v.matrix().mul(u1.matrix()).unwrap()).unwrap();
            let vu2 = UnitaryMatrix::new(v.matrix().mul(u2.matrix()).unwrap()).unwrap();
            assert!((dist_su(&vu1, &vu2).unwrap() - d12).abs() < 1e-9);
        }
    }

    #[test]
    fn unitary_certificate_rejects_non_unitary() {
        let m = DenseMatrix::identity(2).scaled(Complex64::new(2.0, 0.0));
        assert!(matches!(UnitaryMatrix::new(m), Err(Error::NotUnitary { .. })));
    }
}

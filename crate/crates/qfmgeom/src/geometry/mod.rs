//! The Riemannian structure on the image of a feature map.
//!
//! All curvature quantities are computed on the `bar` parts of tangent
//! vectors: the unitary prefactor `e^{L(p)}` commutes through and cancels
//! inside every trace, so it never enters a number. On Pauli sums the metric
//! collapses to the dot product of coefficient vectors, which keeps the whole
//! curvature pipeline exact up to the bracket arithmetic.
//!
//! The connection is `nabla_X Y = [X, Y]/2` and the curvature tensor its
//! quarter-bracket form `R_XY = ad([X,Y])/4`; sectional, Ricci, and scalar
//! curvature are the usual contractions against an orthonormal frame.

mod frame;
mod nearest;

pub use frame::{frame_builder, frame_builders, CoordinateFrame, Frame, FrameBuilder, LieBasisFrame};
pub use nearest::{nearest_on_geodesic, NearestResult};

use crate::error::{Error, Result};
use crate::feature_map::FeatureMapSpec;
use crate::pauli::{commutator, DenseMatrix, PauliString, SkewHermitianOp};

/// Riemannian metric `(Tr(H^dag K) + Tr(K^dag H)) / (2 * 2^N)`.
///
/// Pauli strings are orthogonal under the normalized trace pairing, so on the
/// symbolic representation this is exactly the dot product of coefficient
/// vectors: real, symmetric, bilinear, positive definite.
pub fn metric(a: &SkewHermitianOp, b: &SkewHermitianOp) -> Result<f64> {
    if a.qubits() != b.qubits() {
        return Err(Error::QubitMismatch { left: a.qubits(), right: b.qubits() });
    }
    let mut sum = 0.0;
    for (string, coeff) in a.terms() {
        let other = b.coeff(string);
        if other != 0.0 {
            sum += coeff * other;
        }
    }
    Ok(sum)
}

/// The same metric evaluated on dense matrices; used by the oracles and for
/// vectors that carry their unitary prefactor explicitly.
pub fn metric_dense(h: &DenseMatrix, k: &DenseMatrix) -> Result<f64> {
    if h.dim() != k.dim() {
        return Err(Error::DimMismatch { left: h.dim(), right: k.dim() });
    }
    let t1 = h.adjoint().mul(k)?.trace();
    let t2 = k.adjoint().mul(h)?.trace();
    Ok((t1 + t2).re / (2.0 * h.dim() as f64))
}

/// Levi-Civita connection on bar parts: `nabla_X Y = [X, Y] / 2`.
pub fn levi_civita(x: &SkewHermitianOp, y: &SkewHermitianOp) -> Result<SkewHermitianOp> {
    Ok(commutator(x, y)?.scaled(0.5))
}

/// Curvature tensor `R_XY(Z) = [[X, Y], Z] / 4`.
pub fn curvature_tensor(
    x: &SkewHermitianOp,
    y: &SkewHermitianOp,
    z: &SkewHermitianOp,
) -> Result<SkewHermitianOp> {
    Ok(commutator(&commutator(x, y)?, z)?.scaled(0.25))
}

/// Sectional curvature
/// `<R_XY(X), Y> / (<X,X><Y,Y> - <X,Y>^2)`.
///
/// For orthonormal inputs this coincides with `<[X,Y],[X,Y]>/4`.
pub fn sectional(x: &SkewHermitianOp, y: &SkewHermitianOp) -> Result<f64> {
    let gxx = metric(x, x)?;
    let gyy = metric(y, y)?;
    let gxy = metric(x, y)?;
    let denominator = gxx * gyy - gxy * gxy;
    if denominator <= 1e-14 {
        return Err(Error::DegeneratePair { denominator });
    }
    let numerator = metric(&curvature_tensor(x, y, x)?, y)?;
    Ok(numerator / denominator)
}

/// Ricci curvature `Ric(X, Y) = sum_i <R_{E_i X}(E_i), Y>` over an
/// orthonormal frame; on the diagonal this sums the sectional curvatures
/// `Ric(E_j, E_j) = sum_{i != j} kappa(E_i, E_j)` and its trace is the
/// scalar curvature.
pub fn ricci(frame: &Frame, x: &SkewHermitianOp, y: &SkewHermitianOp) -> Result<f64> {
    let mut sum = 0.0;
    for e in frame.vectors() {
        sum += metric(&curvature_tensor(e, x, e)?, y)?;
    }
    Ok(sum)
}

/// Full Ricci matrix of a frame: entries `Ric(E_i, E_j)`.
pub fn ricci_matrix(frame: &Frame) -> Result<Vec<Vec<f64>>> {
    let vectors = frame.vectors();
    let r = vectors.len();
    let mut out = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in 0..r {
            out[i][j] = ricci(frame, &vectors[i], &vectors[j])?;
        }
    }
    Ok(out)
}

/// Scalar curvature `2 * sum_{i<j} kappa(E_i, E_j)` of an orthonormal frame.
pub fn scalar_curvature(frame: &Frame) -> Result<f64> {
    let vectors = frame.vectors();
    let mut sum = 0.0;
    for i in 0..vectors.len() {
        for j in (i + 1)..vectors.len() {
            sum += sectional(&vectors[i], &vectors[j])?;
        }
    }
    Ok(2.0 * sum)
}

/// Matrix of the adjoint action `ad_X` in a closure-string basis.
///
/// Column `j` holds the coefficients of `[X, B_j]` over the basis, where
/// `B_j` is the unit-coefficient operator of the `j`-th string. Both `X` and
/// every bracket must decompose over the basis.
pub fn adjoint_matrix(x: &SkewHermitianOp, basis: &[PauliString]) -> Result<Vec<Vec<f64>>> {
    for string in x.strings() {
        if !basis.contains(string) {
            return Err(Error::NotInSpan { string: string.to_string() });
        }
    }
    let r = basis.len();
    let mut out = vec![vec![0.0; r]; r];
    for (j, string) in basis.iter().enumerate() {
        let bracket = commutator(x, &SkewHermitianOp::single(string.clone(), 1.0))?;
        for (s, coeff) in bracket.terms() {
            match basis.iter().position(|b| b == s) {
                Some(i) => out[i][j] = coeff,
                None => return Err(Error::NotInSpan { string: s.to_string() }),
            }
        }
    }
    Ok(out)
}

/// Killing form `B(X, Y) = Tr(ad_X ad_Y)` over a closure basis.
///
/// When the basis is the full root set of `su(2^N)` this equals the closed
/// form `2 * 2^N * Tr(dense(X) dense(Y))`.
pub fn killing(x: &SkewHermitianOp, y: &SkewHermitianOp, basis: &[PauliString]) -> Result<f64> {
    let ax = adjoint_matrix(x, basis)?;
    let ay = adjoint_matrix(y, basis)?;
    let r = basis.len();
    let mut trace = 0.0;
    for i in 0..r {
        for j in 0..r {
            trace += ax[i][j] * ay[j][i];
        }
    }
    Ok(trace)
}

/// Step used by the finite-difference checks.
pub const COMPAT_STEP: f64 = 1e-5;

/// Finite-difference metric-compatibility residual along a path.
///
/// For coordinate fields `Y`, `Z` transported along `path` with velocity
/// field `X`, metric compatibility of the half-bracket connection states
/// `d/dt g(Y, Z) = g(D_t Y, Z) + g(Y, D_t Z)` with
/// `D_t Y = dY/dt + [X, Y]/2`. The time derivatives are taken by central
/// difference at `t = 0`; the returned residual is the absolute gap, which
/// vanishes exactly when the bracket terms pair to zero (skew-symmetry of the
/// adjoint action).
pub fn metric_compatibility_check(
    spec: &FeatureMapSpec,
    path: impl Fn(f64) -> Vec<f64>,
    field_y: usize,
    field_z: usize,
    order: usize,
) -> Result<f64> {
    let m = spec.input_dim();
    if field_y >= m || field_z >= m {
        return Err(Error::PointDim { expected: m, got: field_y.max(field_z) });
    }
    let h = COMPAT_STEP;
    let bar_at = |t: f64, field: usize| -> Result<SkewHermitianOp> {
        let mut v = vec![0.0; m];
        v[field] = 1.0;
        Ok(spec.tangent(&path(t), &v, order)?.into_bar())
    };
    let velocity = |t: f64| -> Vec<f64> {
        let plus = path(t + h);
        let minus = path(t - h);
        plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * h)).collect()
    };

    let p0 = path(0.0);
    let x_bar = spec.tangent(&p0, &velocity(0.0), order)?.into_bar();

    let y0 = bar_at(0.0, field_y)?;
    let z0 = bar_at(0.0, field_z)?;
    let y_plus = bar_at(h, field_y)?;
    let y_minus = bar_at(-h, field_y)?;
    let z_plus = bar_at(h, field_z)?;
    let z_minus = bar_at(-h, field_z)?;

    let dg_dt = (metric(&y_plus, &z_plus)? - metric(&y_minus, &z_minus)?) / (2.0 * h);
    let y_dot = y_plus.sub(&y_minus)?.scaled(1.0 / (2.0 * h));
    let z_dot = z_plus.sub(&z_minus)?.scaled(1.0 / (2.0 * h));
    let dt_y = y_dot.add(&levi_civita(&x_bar, &y0)?)?;
    let dt_z = z_dot.add(&levi_civita(&x_bar, &z0)?)?;

    Ok((dg_dt - metric(&dt_y, &z0)? - metric(&y0, &dt_z)?).abs())
}

/// Metric-compatibility residual along the coordinate line through `p` in
/// direction `field_x`.
pub fn metric_compatibility_coordinate(
    spec: &FeatureMapSpec,
    p: &[f64],
    field_x: usize,
    field_y: usize,
    field_z: usize,
    order: usize,
) -> Result<f64> {
    let m = spec.input_dim();
    if field_x >= m {
        return Err(Error::PointDim { expected: m, got: field_x });
    }
    let base = p.to_vec();
    metric_compatibility_check(
        spec,
        move |t| {
            let mut q = base.clone();
            q[field_x] += t;
            q
        },
        field_y,
        field_z,
        order,
    )
}

/// Per-point curvature summary for one frame.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    pub base: Vec<f64>,
    pub frame_label: &'static str,
    pub rank: usize,
    /// Sectional curvatures for pairs `(i, j)`, `i < j`, in lexicographic
    /// order.
    pub sectional: Vec<((usize, usize), f64)>,
    pub ricci: Vec<Vec<f64>>,
    pub scalar: f64,
}

/// Compute the full curvature report at a point for the chosen frame.
pub fn curvature_report(
    spec: &FeatureMapSpec,
    builder: &dyn FrameBuilder,
    p: &[f64],
    order: usize,
) -> Result<CurvatureReport> {
    let frame = builder.build(spec, p, order)?;
    let vectors = frame.vectors();
    let r = vectors.len();
    let mut pairs = Vec::with_capacity(r * (r - 1) / 2);
    let mut scalar = 0.0;
    for i in 0..r {
        for j in (i + 1)..r {
            let kappa = sectional(&vectors[i], &vectors[j])?;
            scalar += 2.0 * kappa;
            pairs.push(((i, j), kappa));
        }
    }
    let ricci = ricci_matrix(&frame)?;
    Ok(CurvatureReport {
        base: p.to_vec(),
        frame_label: builder.name(),
        rank: r,
        sectional: pairs,
        ricci,
        scalar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feature_map::reference::{angle, iqp};
    use crate::pauli::lie_closure;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn op(terms: &[(&str, f64)]) -> SkewHermitianOp {
        let qubits = terms[0].0.len();
        SkewHermitianOp::from_terms(qubits, terms.iter().map(|(s, c)| (ps(s), *c))).unwrap()
    }

    fn random_op(rng: &mut StdRng, qubits: usize, terms: usize) -> SkewHermitianOp {
        let strings = ["XI", "IX", "YI", "IY", "ZI", "IZ", "XX", "YY", "ZZ", "XY", "YZ", "ZX"];
        SkewHermitianOp::from_terms(
            qubits,
            (0..terms).map(|_| {
                (ps(strings[rng.gen_range(0..strings.len())]), rng.gen_range(-2.0..2.0))
            }),
        )
        .unwrap()
    }

    #[test]
    fn metric_normalized_paulis() {
        assert_eq!(metric(&op(&[("X", 1.0)]), &op(&[("X", 1.0)])).unwrap(), 1.0);
        assert_eq!(metric(&op(&[("X", 1.0)]), &op(&[("Y", 1.0)])).unwrap(), 0.0);
    }

    #[test]
    fn metric_matches_dense_and_prefactor_cancels() {
        let spec = iqp();
        let mut rng = StdRng::seed_from_u64(73);
        for _ in 0..10 {
            let p = [rng.gen_range(-1.0..1.0), rng.gen_range(0.1..1.1)];
            let v = random_op(&mut rng, 2, 3);
            let w = random_op(&mut rng, 2, 3);
            let g_sym = metric(&v, &w).unwrap();
            let g_dense = metric_dense(&v.to_dense(), &w.to_dense()).unwrap();
            assert!((g_sym - g_dense).abs() < 1e-12);

            // prefixed vectors e^L V, e^L W have the same inner product
            let u = spec.eval_u(&p).unwrap();
            let uv = u.matrix().mul(&v.to_dense()).unwrap();
            let uw = u.matrix().mul(&w.to_dense()).unwrap();
            assert!((metric_dense(&uv, &uw).unwrap() - g_sym).abs() < 1e-10);
        }
    }

    #[test]
    fn metric_axioms_on_random_operators() {
        let mut rng = StdRng::seed_from_u64(79);
        for _ in 0..200 {
            let a = random_op(&mut rng, 2, 4);
            let b = random_op(&mut rng, 2, 4);
            let gaa = metric(&a, &a).unwrap();
            assert!(gaa.is_finite());
            assert!(gaa >= 0.0);
            if !a.is_zero() {
                assert!(gaa > 0.0);
            }
            assert_eq!(metric(&a, &b).unwrap(), metric(&b, &a).unwrap());
        }
        // definiteness: g(H, H) = 0 implies H = 0
        let zero = SkewHermitianOp::zero(2);
        assert_eq!(metric(&zero, &zero).unwrap(), 0.0);
    }

    #[test]
    fn metric_dimension_mismatch() {
        assert!(matches!(
            metric(&op(&[("X", 1.0)]), &op(&[("XX", 1.0)])),
            Err(Error::QubitMismatch { .. })
        ));
    }

    #[test]
    fn levi_civita_examples() {
        assert!(levi_civita(&op(&[("XI", 1.0)]), &op(&[("IX", 1.0)])).unwrap().is_zero());
        let x = random_op(&mut StdRng::seed_from_u64(83), 2, 4);
        assert!(levi_civita(&x, &x).unwrap().is_zero());
        let half = levi_civita(&op(&[("YI", 1.0)]), &op(&[("XX", 1.0)])).unwrap();
        assert_eq!(half, op(&[("ZX", -1.0)]));
    }

    #[test]
    fn curvature_tensor_matches_unsimplified_connection() {
        // R_XY Z = nabla_[X,Y] Z - nabla_X nabla_Y Z + nabla_Y nabla_X Z,
        // the ordering consistent with the quarter-bracket form (the
        // opposite ordering would give 3/4 [[X,Y],Z] by the Jacobi identity)
        let mut rng = StdRng::seed_from_u64(89);
        for _ in 0..25 {
            let x = random_op(&mut rng, 2, 3);
            let y = random_op(&mut rng, 2, 3);
            let z = random_op(&mut rng, 2, 3);
            let simplified = curvature_tensor(&x, &y, &z).unwrap();
            let direct = levi_civita(&commutator(&x, &y).unwrap(), &z)
                .unwrap()
                .sub(&levi_civita(&x, &levi_civita(&y, &z).unwrap()).unwrap())
                .unwrap()
                .add(&levi_civita(&y, &levi_civita(&x, &z).unwrap()).unwrap())
                .unwrap();
            assert!(simplified.sub(&direct).unwrap().coeff_norm() < 1e-12);

            // antisymmetry in the first two slots
            let swapped = curvature_tensor(&y, &x, &z).unwrap();
            assert!(simplified.add(&swapped).unwrap().coeff_norm() < 1e-10);
        }
    }

    #[test]
    fn curvature_tensor_commuting_pair_is_zero() {
        let z = random_op(&mut StdRng::seed_from_u64(97), 2, 3);
        assert!(curvature_tensor(&op(&[("XI", 1.0)]), &op(&[("IX", 1.0)]), &z).unwrap().is_zero());
    }

    #[test]
    fn sectional_matches_orthonormal_form() {
        // the general ratio form equals the quarter-bracket form on orthonormal pairs
        let mut rng = StdRng::seed_from_u64(101);
        for _ in 0..50 {
            let raw_x = random_op(&mut rng, 2, 4);
            let raw_y = random_op(&mut rng, 2, 4);
            // orthonormalize the pair
            let nx = metric(&raw_x, &raw_x).unwrap().sqrt();
            if nx < 1e-7 {
                continue;
            }
            let ex = raw_x.scaled(1.0 / nx);
            let proj = metric(&ex, &raw_y).unwrap();
            let res = raw_y.add_scaled(&ex, -proj).unwrap();
            let ny = metric(&res, &res).unwrap().sqrt();
            if ny < 1e-7 {
                continue;
            }
            let ey = res.scaled(1.0 / ny);
            let general = sectional(&ex, &ey).unwrap();
            let bracket = commutator(&ex, &ey).unwrap();
            let ortho = 0.25 * metric(&bracket, &bracket).unwrap();
            assert!((general - ortho).abs() < 1e-12);
        }
    }

    #[test]
    fn sectional_scale_invariance() {
        let mut rng = StdRng::seed_from_u64(103);
        let x = op(&[("YI", 1.0), ("XX", 0.5)]);
        let y = op(&[("IY", 1.0), ("XX", 0.7)]);
        let base = sectional(&x, &y).unwrap();
        for _ in 0..10 {
            let a: f64 = rng.gen_range(0.1..3.0);
            let b: f64 = rng.gen_range(0.1..3.0);
            let scaled = sectional(&x.scaled(a), &y.scaled(-b)).unwrap();
            assert!((scaled - base).abs() < 1e-12);
        }
    }

    #[test]
    fn sectional_rejects_degenerate_pair() {
        let x = op(&[("XI", 1.0)]);
        assert!(matches!(
            sectional(&x, &x.scaled(2.0)),
            Err(Error::DegeneratePair { .. })
        ));
    }

    #[test]
    fn sectional_iqp_leading_order_closed_form() {
        // coordinate tangents at Q=0 give kappa = (p1^2+p2^2)/(1+p1^2+p2^2)
        let spec = iqp();
        for (p1, p2) in [(0.5, 0.5), (1.0, 0.1), (-1.0, 1.1)] {
            let tangents = spec.coordinate_tangents(&[p1, p2], 0).unwrap();
            let kappa = sectional(tangents[0].bar(), tangents[1].bar()).unwrap();
            let expected = (p1 * p1 + p2 * p2) / (1.0 + p1 * p1 + p2 * p2);
            assert!((kappa - expected).abs() < 1e-12, "({p1},{p2}): {kappa} vs {expected}");
        }
    }

    #[test]
    fn sectional_angle_is_flat() {
        let spec = angle();
        let tangents = spec.coordinate_tangents(&[0.4, 0.9], 3).unwrap();
        assert_eq!(sectional(tangents[0].bar(), tangents[1].bar()).unwrap(), 0.0);
    }

    #[test]
    fn ricci_diagonal_sums_sectionals() {
        let spec = iqp();
        let mut rng = StdRng::seed_from_u64(107);
        let builder = LieBasisFrame;
        for _ in 0..5 {
            let p = [rng.gen_range(-1.0..1.0), rng.gen_range(0.1..1.1)];
            let frame = builder.build(&spec, &p, 0).unwrap();
            let vectors = frame.vectors();
            for j in 0..vectors.len() {
                let diag = ricci(&frame, &vectors[j], &vectors[j]).unwrap();
                let mut sum = 0.0;
                for i in 0..vectors.len() {
                    if i != j {
                        sum += sectional(&vectors[i], &vectors[j]).unwrap();
                    }
                }
                assert!((diag - sum).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ricci_symmetry_and_commutative_vanishing() {
        let spec = iqp();
        let p = [0.3, 0.7];
        let frame = CoordinateFrame.build(&spec, &p, 0).unwrap();
        let mut rng = StdRng::seed_from_u64(109);
        for _ in 0..20 {
            let x = random_op(&mut rng, 2, 3);
            let y = random_op(&mut rng, 2, 3);
            let rxy = ricci(&frame, &x, &y).unwrap();
            let ryx = ricci(&frame, &y, &x).unwrap();
            assert!((rxy - ryx).abs() < 1e-10);
        }

        let flat = angle();
        let fframe = CoordinateFrame.build(&flat, &p, 0).unwrap();
        for _ in 0..10 {
            let x = op(&[("XI", rng.gen_range(-1.0..1.0)), ("IX", rng.gen_range(-1.0..1.0))]);
            let y = op(&[("XI", rng.gen_range(-1.0..1.0)), ("IX", rng.gen_range(-1.0..1.0))]);
            assert_eq!(ricci(&fframe, &x, &y).unwrap(), 0.0);
        }
    }

    #[test]
    fn scalar_equals_ricci_trace() {
        let spec = iqp();
        let frame = LieBasisFrame.build(&spec, &[0.5, 0.5], 0).unwrap();
        let scal = scalar_curvature(&frame).unwrap();
        let ric = ricci_matrix(&frame).unwrap();
        let trace: f64 = (0..frame.rank()).map(|i| ric[i][i]).sum();
        assert!((scal - trace).abs() < 1e-10);

        // single-vector frames have an empty pair sum
        let single = FeatureMapSpec::new(
            1,
            vec!["t".into()],
            vec![("t".into(), SkewHermitianOp::single(ps("Z"), 1.0))],
        )
        .unwrap();
        let sframe = CoordinateFrame.build(&single, &[0.2], 0).unwrap();
        assert_eq!(scalar_curvature(&sframe).unwrap(), 0.0);
    }

    #[test]
    fn scalar_angle_is_zero() {
        let spec = angle();
        let frame = CoordinateFrame.build(&spec, &[-0.6, 0.2], 3).unwrap();
        assert_eq!(scalar_curvature(&frame).unwrap(), 0.0);
    }

    #[test]
    fn adjoint_matrix_zero_operator() {
        let basis: Vec<PauliString> = ["X", "Y", "Z"].iter().map(|s| ps(s)).collect();
        let m = adjoint_matrix(&SkewHermitianOp::zero(1), &basis).unwrap();
        assert!(m.iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn adjoint_rejects_out_of_span() {
        let basis: Vec<PauliString> = ["XI", "IX"].iter().map(|s| ps(s)).collect();
        assert!(matches!(
            adjoint_matrix(&op(&[("YI", 1.0)]), &basis),
            Err(Error::NotInSpan { .. })
        ));
        // brackets leaving the span are also rejected
        let basis2: Vec<PauliString> = ["YI", "XX"].iter().map(|s| ps(s)).collect();
        assert!(matches!(
            adjoint_matrix(&op(&[("YI", 1.0)]), &basis2),
            Err(Error::NotInSpan { .. })
        ));
    }

    #[test]
    fn adjoint_skew_symmetry_and_homomorphism() {
        let spec = iqp();
        let closure = lie_closure(&spec.generators()).unwrap();
        let basis: Vec<PauliString> = closure.into_iter().collect();
        let mut rng = StdRng::seed_from_u64(113);
        let random_in_span = |rng: &mut StdRng| {
            SkewHermitianOp::from_terms(
                2,
                basis.iter().map(|s| (s.clone(), rng.gen_range(-1.0..1.0))),
            )
            .unwrap()
        };
        for _ in 0..20 {
            let x = random_in_span(&mut rng);
            let y = random_in_span(&mut rng);
            let z = random_in_span(&mut rng);

            // <[X,Y], Z> = -<Y, [X,Z]>
            let lhs = metric(&commutator(&x, &y).unwrap(), &z).unwrap();
            let rhs = -metric(&y, &commutator(&x, &z).unwrap()).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);

            // ad_[X,Y] = [ad_X, ad_Y] as matrices
            let ad_bracket = adjoint_matrix(&commutator(&x, &y).unwrap(), &basis).unwrap();
            let ax = adjoint_matrix(&x, &basis).unwrap();
            let ay = adjoint_matrix(&y, &basis).unwrap();
            let r = basis.len();
            for i in 0..r {
                for j in 0..r {
                    let mut commuted = 0.0;
                    for k in 0..r {
                        commuted += ax[i][k] * ay[k][j] - ay[i][k] * ax[k][j];
                    }
                    assert!((ad_bracket[i][j] - commuted).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn killing_su2_closed_form() {
        // B({X:1},{X:1}) over the full su(2) root set equals 2*2*Tr((-iX)^2) = -8
        let basis: Vec<PauliString> = ["X", "Y", "Z"].iter().map(|s| ps(s)).collect();
        let x = op(&[("X", 1.0)]);
        let b = killing(&x, &x, &basis).unwrap();
        assert!((b - (-8.0)).abs() < 1e-12);
        let dense = x.to_dense().mul(&x.to_dense()).unwrap().trace().re;
        assert!((b - 2.0 * 2.0 * dense).abs() < 1e-12);
    }

    #[test]
    fn killing_matches_closed_form_on_full_root_set() {
        // all 15 non-identity strings of su(4)
        let axes = ["I", "X", "Y", "Z"];
        let mut basis = Vec::new();
        for a in axes {
            for b in axes {
                let s = format!("{a}{b}");
                if s != "II" {
                    basis.push(ps(&s));
                }
            }
        }
        basis.sort();
        let mut rng = StdRng::seed_from_u64(127);
        for _ in 0..10 {
            let x = random_op(&mut rng, 2, 4);
            let y = random_op(&mut rng, 2, 4);
            let b = killing(&x, &y, &basis).unwrap();
            let closed =
                2.0 * 4.0 * x.to_dense().mul(&y.to_dense()).unwrap().trace().re;
            assert!((b - closed).abs() < 1e-8, "{b} vs {closed}");
        }
    }

    #[test]
    fn killing_disjoint_supports_vanish_and_bilinearity() {
        let basis: Vec<PauliString> =
            ["XI", "YI", "ZI", "IX", "IY", "IZ"].iter().map(|s| ps(s)).collect();
        // ad images of single-wire operators live on disjoint string sets
        let b = killing(&op(&[("XI", 1.0)]), &op(&[("IX", 1.0)]), &basis).unwrap();
        assert_eq!(b, 0.0);

        let mut rng = StdRng::seed_from_u64(131);
        let random_in_span = |rng: &mut StdRng| {
            SkewHermitianOp::from_terms(
                2,
                basis.iter().map(|s| (s.clone(), rng.gen_range(-1.0..1.0))),
            )
            .unwrap()
        };
        for _ in 0..10 {
            let x = random_in_span(&mut rng);
            let y = random_in_span(&mut rng);
            let z = random_in_span(&mut rng);
            let (a_w, b_w) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let lhs = killing(&x.scaled(a_w).add_scaled(&y, b_w).unwrap(), &z, &basis).unwrap();
            let rhs =
                a_w * killing(&x, &z, &basis).unwrap() + b_w * killing(&y, &z, &basis).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn metric_compatibility_residuals() {
        // commutative map: everything cancels exactly
        let flat = angle();
        let res = metric_compatibility_coordinate(&flat, &[0.3, 0.4], 0, 0, 1, 3).unwrap();
        assert!(res < 1e-8, "{res}");

        // IQP along a straight-line path
        let spec = iqp();
        let dir = [2.0 / 5.0f64.sqrt(), 1.0 / 5.0f64.sqrt()];
        let res = metric_compatibility_check(
            &spec,
            |t| vec![0.3 + t * dir[0], 0.4 + t * dir[1]],
            0,
            1,
            3,
        )
        .unwrap();
        assert!(res < 1e-5, "{res}");

        // zero-velocity path: residual is exactly 0
        let res = metric_compatibility_check(&spec, |_| vec![0.3, 0.4], 0, 1, 3).unwrap();
        assert_eq!(res, 0.0);
    }

    #[test]
    fn bi_invariance_under_powers_of_the_prefactor() {
        let spec = iqp();
        let p = [0.4, 0.6];
        let u = spec.eval_u(&p).unwrap();
        let mut rng = StdRng::seed_from_u64(137);
        let h = random_op(&mut rng, 2, 3);
        let k = random_op(&mut rng, 2, 3);
        let g = metric(&h, &k).unwrap();
        let mut power = crate::pauli::DenseMatrix::identity(4);
        for _ in 1..=3 {
            power = power.mul(u.matrix()).unwrap();
            let lh = power.mul(&h.to_dense()).unwrap();
            let lk = power.mul(&k.to_dense()).unwrap();
            assert!((metric_dense(&lh, &lk).unwrap() - g).abs() < 1e-10);
        }
    }
}

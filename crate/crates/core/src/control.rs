//! Single-input state-feedback design over the quaternions.
//!
//! For a controllable pair `(A, B)` the controllable companion form is built
//! directly from the controllability matrix `C = [B, AB, …, Aⁿ⁻¹B]`:
//!
//! * the companion coefficients solve `AⁿB = −Σ AᵏB·a_k` (one linear solve
//!   against `C`, unknowns acting from the right);
//! * `t = e_nᵀ C⁻¹` and `T⁻¹` stacks `t, tA, …, tAⁿ⁻¹`;
//! * `A_c = T⁻¹AT`, `B_c = T⁻¹B = e_n`.
//!
//! Gains then follow either by coefficient matching in companion coordinates,
//! `K = (d − a)·T⁻¹`, which works for any monic quaternionic target, or by the
//! Ackermann expression `K = e_nᵀ C⁻¹ a_d(A)`, which is only valid when the
//! target has real coefficients.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::format;

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, DEFAULT_PIVOT_TOL};
use crate::poly::QPoly;
use crate::quaternion::Quaternion;
use crate::spectral::{right_spectrum, spectra_match, Spectrum};

/// Condition estimate `‖C‖·‖C⁻¹‖` above which reports carry a warning.
pub const CONDITION_WARNING: f64 = 1e8;

/// `ẋ = A x + B u` with a single quaternionic input.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemHx {
    a: QMatrix,
    b: QMatrix,
}

impl SystemHx {
    pub fn new(a: QMatrix, b: QMatrix) -> Result<Self> {
        let n = a.require_square()?;
        if b.shape() != (n, 1) {
            return Err(Error::DimensionMismatch {
                op: "system",
                left: a.shape(),
                right: b.shape(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &QMatrix {
        &self.a
    }

    pub fn b(&self) -> &QMatrix {
        &self.b
    }

    pub fn order(&self) -> usize {
        self.a.rows()
    }

    /// `A − B·K` for a `1×n` gain.
    pub fn closed_loop(&self, k: &QMatrix) -> Result<QMatrix> {
        if k.shape() != (1, self.order()) {
            return Err(Error::DimensionMismatch {
                op: "closed_loop",
                left: (1, self.order()),
                right: k.shape(),
            });
        }
        self.a.try_sub(&self.b.matmul(k)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Matching,
    Ackermann,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Matching => "matching",
            Method::Ackermann => "ackermann",
        }
    }
}

/// Tolerances for design and verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignOptions {
    /// Relative pivot threshold for controllability and solves.
    pub pivot_tol: f64,
    /// Per-class distance allowed when comparing achieved and target spectra.
    pub match_tol: f64,
    /// Required distance of every class from the imaginary axis.
    pub stability_margin: f64,
}

impl Default for DesignOptions {
    fn default() -> Self {
        Self {
            pivot_tol: DEFAULT_PIVOT_TOL,
            match_tol: 1e-6,
            stability_margin: 0.0,
        }
    }
}

/// Controllable companion form of a pair and the similarity producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct CompanionTransform {
    pub t: QMatrix,
    pub t_inv: QMatrix,
    pub a_c: QMatrix,
    pub b_c: QMatrix,
    /// Companion polynomial `a(λ)`, monic of degree n.
    pub poly: QPoly,
    /// First row of `T⁻¹`, `e_nᵀ C⁻¹`.
    pub first_row: QMatrix,
    pub ctrb: QMatrix,
    pub ctrb_inv: QMatrix,
}

impl CompanionTransform {
    /// `‖a(A_c)‖`, zero up to rounding.
    pub fn annihilation_residual(&self) -> f64 {
        self.poly
            .eval_matrix(&self.a_c)
            .map(|m| m.max_norm())
            .unwrap_or(f64::INFINITY)
    }

    /// Distance of `A_c` from the exact companion matrix of `a(λ)`.
    pub fn structure_residual(&self) -> f64 {
        self.poly
            .companion_matrix()
            .and_then(|c| c.max_diff(&self.a_c))
            .unwrap_or(f64::INFINITY)
    }

    /// Companion coefficients `a_0 … a_{n−1}`.
    pub fn coefficients(&self) -> &[Quaternion] {
        let c = self.poly.coeffs();
        &c[..c.len() - 1]
    }
}

/// Both residuals are divided by `max(1, max_k |d_k|)` so that they do not
/// grow with the size of the target coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Residuals {
    /// `‖a_d(T⁻¹ A_cl T)‖`: zero when the closed loop has companion
    /// polynomial `a_d`.
    pub annihilation: f64,
    /// Largest coefficient gap between the closed-loop companion polynomial
    /// and `a_d`. `NaN` when no target polynomial is involved.
    pub placement: f64,
}

fn coefficient_scale(p: &QPoly) -> f64 {
    p.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max)
}

/// Outcome of a design or verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignReport {
    pub k: QMatrix,
    /// `None` for a gain supplied from outside.
    pub method: Option<Method>,
    pub target_poly: Option<QPoly>,
    pub target: Spectrum,
    /// Recomputed from `A − B·K`.
    pub achieved: Spectrum,
    pub closed_loop: QMatrix,
    pub matched: bool,
    pub stable: bool,
    pub residuals: Residuals,
    pub warnings: Vec<String>,
}

/// `[B, AB, …, Aⁿ⁻¹B]`.
pub fn controllability_matrix(sys: &SystemHx) -> QMatrix {
    let n = sys.order();
    let mut cols = Vec::with_capacity(n);
    let mut col = sys.b.clone();
    for _ in 0..n {
        let next = &sys.a * &col;
        cols.push(col);
        col = next;
    }
    QMatrix::from_columns(&cols).expect("columns share the state dimension")
}

pub fn is_controllable(sys: &SystemHx) -> bool {
    is_controllable_with_tol(sys, DEFAULT_PIVOT_TOL)
}

pub fn is_controllable_with_tol(sys: &SystemHx, pivot_tol: f64) -> bool {
    controllability_matrix(sys).rank_with_tol(pivot_tol) == sys.order()
}

pub fn companion_transform(sys: &SystemHx) -> Result<CompanionTransform> {
    companion_transform_with_tol(sys, DEFAULT_PIVOT_TOL)
}

pub fn companion_transform_with_tol(sys: &SystemHx, pivot_tol: f64) -> Result<CompanionTransform> {
    let n = sys.order();
    let ctrb = controllability_matrix(sys);
    let uncontrollable = |e: Error| match e {
        Error::Singular { rank, .. } => Error::Uncontrollable { rank, order: n },
        other => other,
    };
    let an_b = &sys.a.pow(n)? * &sys.b;
    let coeffs = ctrb.solve_with_tol(&(-&an_b), pivot_tol).map_err(uncontrollable)?;
    let ctrb_inv = ctrb.inverse_with_tol(pivot_tol).map_err(uncontrollable)?;

    let first_row = ctrb_inv.row(n - 1);
    let mut rows = Vec::with_capacity(n);
    let mut row = first_row.clone();
    for _ in 0..n {
        let next = &row * &sys.a;
        rows.push(row);
        row = next;
    }
    let t_inv = QMatrix::from_row_blocks(&rows)?;
    let t = t_inv.inverse_with_tol(pivot_tol).map_err(uncontrollable)?;
    let a_c = &(&t_inv * &sys.a) * &t;
    let b_c = &t_inv * &sys.b;
    let lower: Vec<Quaternion> = (0..n).map(|k| coeffs[(k, 0)]).collect();

    Ok(CompanionTransform {
        t,
        t_inv,
        a_c,
        b_c,
        poly: QPoly::monic(&lower),
        first_row,
        ctrb,
        ctrb_inv,
    })
}

fn check_target(sys: &SystemHx, a_d: &QPoly) -> Result<()> {
    let n = sys.order();
    match a_d.degree() {
        Some(d) if d == n => {}
        found => {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: found.unwrap_or(0),
            })
        }
    }
    if !a_d.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(())
}

/// Coefficient matching in companion coordinates:
/// `K_c = [d_0 − a_0, …, d_{n−1} − a_{n−1}]`, `K = K_c·T⁻¹`.
/// Any monic degree-n target is accepted, including quaternionic ones.
pub fn place_matching(sys: &SystemHx, a_d: &QPoly, opts: &DesignOptions) -> Result<DesignReport> {
    check_target(sys, a_d)?;
    let ct = companion_transform_with_tol(sys, opts.pivot_tol)?;
    let k = matching_gain(&ct, a_d);
    let target = a_d.right_zero_classes()?;
    let mut report = verify_with(sys, &k, target, Some(a_d), &ct, opts)?;
    report.method = Some(Method::Matching);
    Ok(report)
}

/// Gain in companion coordinates, `d − a` entrywise.
pub fn companion_gain(ct: &CompanionTransform, a_d: &QPoly) -> QMatrix {
    let n = ct.a_c.rows();
    QMatrix::from_fn(1, n, |_, j| a_d.coeff(j) - ct.poly.coeff(j))
}

fn matching_gain(ct: &CompanionTransform, a_d: &QPoly) -> QMatrix {
    &companion_gain(ct, a_d) * &ct.t_inv
}

/// Ackermann formula `K = e_nᵀ C⁻¹ a_d(A)`.
///
/// Only valid for real target coefficients; anything else is rejected with
/// [`Error::NonRealTarget`] unless `allow_nonreal` is set, in which case the
/// gain is computed anyway and the report records whether the target
/// classes were reached.
pub fn place_ackermann(
    sys: &SystemHx,
    a_d: &QPoly,
    allow_nonreal: bool,
    opts: &DesignOptions,
) -> Result<DesignReport> {
    check_target(sys, a_d)?;
    if !a_d.is_real() && !allow_nonreal {
        return Err(Error::NonRealTarget);
    }
    let ct = companion_transform_with_tol(sys, opts.pivot_tol)?;
    let k = ackermann_gain(&ct, sys, a_d)?;
    let target = a_d.right_zero_classes()?;
    let mut report = verify_with(sys, &k, target, Some(a_d), &ct, opts)?;
    report.method = Some(Method::Ackermann);
    if !a_d.is_real() {
        report
            .warnings
            .push("target has nonreal coefficients; Ackermann gain is outside its validity range".into());
    }
    Ok(report)
}

fn ackermann_gain(ct: &CompanionTransform, sys: &SystemHx, a_d: &QPoly) -> Result<QMatrix> {
    let n = sys.order();
    let last_row = ct.ctrb_inv.row(n - 1);
    Ok(&last_row * &a_d.eval_matrix(&sys.a)?)
}

/// Recomputes the right spectrum of `A − B·K` and compares it with `targets`.
pub fn verify_placement(
    sys: &SystemHx,
    k: &QMatrix,
    targets: &Spectrum,
    opts: &DesignOptions,
) -> Result<DesignReport> {
    let acl = sys.closed_loop(k)?;
    let achieved = right_spectrum(&acl)?;
    let matched = spectra_match(&achieved, targets, opts.match_tol);
    let stable = achieved.is_stable(opts.stability_margin);
    let mut warnings = Vec::new();
    let annihilation = match companion_transform_with_tol(sys, opts.pivot_tol) {
        Ok(ct) => {
            push_condition_warning(&ct, &mut warnings);
            let acl_c = &(&ct.t_inv * &acl) * &ct.t;
            // Without a target polynomial, use the one implied by the targets
            // when they have real coefficients.
            match real_poly_of(targets) {
                Some(p) => p.eval_matrix(&acl_c)?.max_norm() / coefficient_scale(&p),
                None => f64::NAN,
            }
        }
        Err(_) => {
            warnings.push("pair is not controllable; companion residuals unavailable".into());
            f64::NAN
        }
    };
    Ok(DesignReport {
        k: k.clone(),
        method: None,
        target_poly: None,
        target: targets.clone(),
        achieved,
        closed_loop: acl,
        matched,
        stable,
        residuals: Residuals {
            annihilation,
            placement: f64::NAN,
        },
        warnings,
    })
}

fn real_poly_of(targets: &Spectrum) -> Option<QPoly> {
    let mut real = alloc::vec![1.0f64];
    for c in targets.classes() {
        let factor = [-c.re, 1.0];
        let mut out = alloc::vec![0.0; real.len() + 1];
        for (i, x) in real.iter().enumerate() {
            for (j, y) in factor.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        real = out;
        if c.im_norm != 0.0 {
            return None;
        }
    }
    Some(QPoly::from_real(&real))
}

fn push_condition_warning(ct: &CompanionTransform, warnings: &mut Vec<String>) {
    let cond = ct.ctrb.max_norm() * ct.ctrb_inv.max_norm();
    if cond > CONDITION_WARNING {
        warnings.push(format!(
            "controllability matrix is ill-conditioned (estimate {cond:.3e}); results may be inaccurate"
        ));
    }
}

fn verify_with(
    sys: &SystemHx,
    k: &QMatrix,
    target: Spectrum,
    a_d: Option<&QPoly>,
    ct: &CompanionTransform,
    opts: &DesignOptions,
) -> Result<DesignReport> {
    let acl = sys.closed_loop(k)?;
    let achieved = right_spectrum(&acl)?;
    let matched = spectra_match(&achieved, &target, opts.match_tol);
    let stable = achieved.is_stable(opts.stability_margin);
    let mut warnings = Vec::new();
    push_condition_warning(ct, &mut warnings);

    let mut residuals = Residuals {
        annihilation: f64::NAN,
        placement: f64::NAN,
    };
    if let Some(a_d) = a_d {
        let acl_c = &(&ct.t_inv * &acl) * &ct.t;
        let scale = coefficient_scale(a_d);
        residuals.annihilation = a_d.eval_matrix(&acl_c)?.max_norm() / scale;
        let closed = SystemHx::new(acl, sys.b.clone())?;
        residuals.placement = match companion_transform_with_tol(&closed, opts.pivot_tol) {
            Ok(cl) => (0..=sys.order())
                .map(|j| cl.poly.coeff(j).max_abs_diff(a_d.coeff(j)))
                .fold(0.0, f64::max)
                / scale,
            Err(_) => f64::INFINITY,
        };
    }
    Ok(DesignReport {
        k: k.clone(),
        method: None,
        target_poly: a_d.cloned(),
        target,
        achieved,
        closed_loop: sys.closed_loop(k)?,
        matched,
        stable,
        residuals,
        warnings,
    })
}

/// `‖p(A)·T − T·p(T⁻¹AT)‖`. Vanishes for real `p`; generally not otherwise.
pub fn intertwining_check(p: &QPoly, a: &QMatrix, t: &QMatrix) -> Result<f64> {
    let t_inv = t.inverse()?;
    let a_c = &(&t_inv * a) * t;
    let lhs = p.eval_matrix(a)?.matmul(t)?;
    let rhs = t.matmul(&p.eval_matrix(&a_c)?)?;
    lhs.max_diff(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::SimilarityClass;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    fn rand_q(rng: &mut impl Rng) -> Quaternion {
        q(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }

    fn example() -> SystemHx {
        let a = QMatrix::from_rows(&[[Quaternion::ONE, I], [J, K]]).unwrap();
        let b = QMatrix::column_vector(&[Quaternion::ONE, K]);
        SystemHx::new(a, b).unwrap()
    }

    fn rand_system(rng: &mut impl Rng, n: usize) -> SystemHx {
        let a = QMatrix::from_fn(n, n, |_, _| rand_q(rng));
        let b = QMatrix::from_fn(n, 1, |_, _| rand_q(rng));
        SystemHx::new(a, b).unwrap()
    }

    fn mat(rows: &[[Quaternion; 2]]) -> QMatrix {
        QMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn system_shape_checks() {
        let err = SystemHx::new(QMatrix::zeros(2, 2), QMatrix::zeros(3, 1)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        assert!(matches!(SystemHx::new(QMatrix::zeros(2, 3), QMatrix::zeros(2, 1)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn controllability_examples() {
        let c = controllability_matrix(&example());
        assert_eq!(c, mat(&[[Quaternion::ONE, q(1.0, 0.0, -1.0, 0.0)], [K, q(-1.0, 0.0, 1.0, 0.0)]]));
        assert!(is_controllable(&example()));

        let b = QMatrix::column_vector(&[q(0.3, 1.0, 0.0, -2.0)]);
        let sys = SystemHx::new(QMatrix::from_rows(&[[J]]).unwrap(), b.clone()).unwrap();
        assert_eq!(controllability_matrix(&sys), b);

        let sys = SystemHx::new(QMatrix::identity(2), QMatrix::column_vector(&[Quaternion::ONE, Quaternion::ZERO])).unwrap();
        assert!(!is_controllable(&sys));
        assert_eq!(companion_transform(&sys).unwrap_err(), Error::Uncontrollable { rank: 1, order: 2 });
    }

    #[test]
    fn controllability_recursion_and_embedding_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 1..=5 {
            let mut sys = rand_system(&mut rng, n);
            // upper-triangular A
            let a = QMatrix::from_fn(n, n, |i, j| if j >= i { sys.a()[(i, j)] } else { Quaternion::ZERO });
            sys = SystemHx::new(a, sys.b().clone()).unwrap();
            let c = controllability_matrix(&sys);
            for k in 1..n {
                assert!(c.column(k).max_diff(&(sys.a() * &c.column(k - 1))).unwrap() < 1e-14);
            }
            assert_eq!(is_controllable(&sys), c.complex_adjoint().rank() == 2 * n);
        }
    }

    #[test]
    fn example_companion_form() {
        let ct = companion_transform(&example()).unwrap();
        let quarter = |m: QMatrix| m.map(|e| e / 4.0);
        let t_inv = quarter(mat(&[[q(1.0, 1.0, 1.0, 1.0), q(-1.0, 1.0, -1.0, 1.0)], [q(2.0, 0.0, 0.0, 2.0), q(-2.0, 0.0, 0.0, -2.0)]]));
        let t = mat(&[[q(0.0, -1.0, 0.0, -1.0), Quaternion::ONE], [q(0.0, -1.0, 0.0, -1.0), K]]);
        let a_c = mat(&[[Quaternion::ZERO, Quaternion::ONE], [q(1.0, -1.0, 1.0, -1.0), q(1.0, 1.0, -1.0, 1.0)]]);
        assert!(ct.t_inv.max_diff(&t_inv).unwrap() < 1e-12);
        assert!(ct.t.max_diff(&t).unwrap() < 1e-12);
        assert!(ct.a_c.max_diff(&a_c).unwrap() < 1e-12);
        assert!(ct.b_c.max_diff(&QMatrix::column_vector(&[Quaternion::ZERO, Quaternion::ONE])).unwrap() < 1e-12);
        assert!(ct.coefficients()[0].max_abs_diff(q(-1.0, 1.0, -1.0, 1.0)) < 1e-12);
        assert!(ct.coefficients()[1].max_abs_diff(q(-1.0, -1.0, 1.0, -1.0)) < 1e-12);
        assert!(ct.annihilation_residual() < 1e-12);
        assert!(ct.structure_residual() < 1e-12);
        // a(A_c) = 0 but a(A) ≠ 0
        assert!(ct.poly.eval_matrix(example().a()).unwrap().max_norm() > 0.1);
    }

    #[test]
    fn companion_pair_maps_to_itself() {
        let a_poly = QPoly::monic(&[q(0.5, 1.0, -2.0, 0.0), q(-1.0, 0.0, 0.5, 3.0), q(2.0, 0.0, 0.0, -1.0)]);
        let a_c = a_poly.companion_matrix().unwrap();
        let sys = SystemHx::new(a_c.clone(), QMatrix::column_vector(&[Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE]))
            .unwrap();
        let ct = companion_transform(&sys).unwrap();
        assert!(ct.t.max_diff(&QMatrix::identity(3)).unwrap() < 1e-12);
        for k in 0..3 {
            assert!(ct.poly.coeff(k).max_abs_diff(a_poly.coeff(k)) < 1e-12);
        }
    }

    #[test]
    fn random_companion_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in 2..=6 {
            let sys = rand_system(&mut rng, n);
            let ct = companion_transform(&sys).unwrap();
            assert!((&ct.t * &ct.t_inv).max_diff(&QMatrix::identity(n)).unwrap() < 1e-8);
            assert!(ct.annihilation_residual() < 1e-8);
            assert!(ct.structure_residual() < 1e-8);
            // unit anti-triangular T⁻¹C
            let tc = &ct.t_inv * &ct.ctrb;
            for i in 0..n {
                for j in 0..n {
                    let e = tc[(i, j)];
                    if i + j + 1 < n {
                        assert!(e.norm() < 1e-10);
                    } else if i + j + 1 == n {
                        assert!(e.max_abs_diff(Quaternion::ONE) < 1e-10);
                    }
                }
            }
            // deterministic
            assert_eq!(companion_transform(&sys).unwrap(), ct);
        }
    }

    #[test]
    fn companion_classes_do_not_depend_on_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let sys = rand_system(&mut rng, 3);
        let other_b = QMatrix::from_fn(3, 1, |i, _| sys.b()[(i, 0)] + rand_q(&mut rng) * 0.3);
        let sys2 = SystemHx::new(sys.a().clone(), other_b).unwrap();
        let p1 = companion_transform(&sys).unwrap().poly;
        let p2 = companion_transform(&sys2).unwrap().poly;
        assert!(p1.coeff(0).max_abs_diff(p2.coeff(0)) > 1e-6);
        assert!(spectra_match(&p1.right_zero_classes().unwrap(), &p2.right_zero_classes().unwrap(), 1e-8));
    }

    #[test]
    fn matching_examples() {
        let opts = DesignOptions::default();
        let r = place_matching(&example(), &QPoly::from_real(&[2.0, 3.0, 1.0]), &opts).unwrap();
        let k = QMatrix::row_vector(&[q(2.5, 1.0, 0.0, 2.5), q(-1.5, 1.0, 0.0, -1.5)]);
        assert!(r.k.max_diff(&k).unwrap() < 1e-12);
        let acl = mat(&[[q(-1.5, -1.0, 0.0, -2.5), q(1.5, 0.0, 0.0, 1.5)], [q(2.5, 0.0, 0.0, -2.5), q(-1.5, 0.0, -1.0, 2.5)]]);
        assert!(r.closed_loop.max_diff(&acl).unwrap() < 1e-12);
        assert!(r.matched && r.stable);
        assert!(r.residuals.annihilation < 1e-12 && r.residuals.placement < 1e-12);
        assert_eq!(r.method, Some(Method::Matching));

        let r = place_matching(&example(), &QPoly::from_real(&[2.0, 2.0, 1.0]), &opts).unwrap();
        let k = QMatrix::row_vector(&[q(2.0, 1.0, 0.0, 2.0), q(-1.0, 1.0, 0.0, -1.0)]);
        assert!(r.k.max_diff(&k).unwrap() < 1e-12);
        assert!(r.matched && r.stable);
    }

    #[test]
    fn matching_quaternionic_target() {
        let a_d = QPoly::from_right_zeros(&[q(-1.0, 0.0, 1.0, 0.0), q(-2.0, 0.0, 0.0, 1.0)]).unwrap();
        let r = place_matching(&example(), &a_d, &DesignOptions::default()).unwrap();
        let third = 1.0 / 3.0;
        let k = QMatrix::row_vector(&[q(10.0 * third, 0.0, third, 8.0 * third), q(-2.0, 5.0 * third, third, -2.0 * third)]);
        assert!(r.k.max_diff(&k).unwrap() < 1e-12);
        let expected = Spectrum::from_classes([SimilarityClass::new(-1.0, 1.0), SimilarityClass::new(-2.0, 1.0)]);
        assert!(spectra_match(&r.achieved, &expected, 1e-6));
        assert!(r.matched && r.stable);
    }

    #[test]
    fn ackermann_examples() {
        let opts = DesignOptions::default();
        let a_d = QPoly::from_real(&[2.0, 3.0, 1.0]);
        let r = place_ackermann(&example(), &a_d, false, &opts).unwrap();
        let m = place_matching(&example(), &a_d, &opts).unwrap();
        assert!(r.k.max_diff(&m.k).unwrap() < 1e-12);
        assert_eq!(r.method, Some(Method::Ackermann));

        let a_d = QPoly::from_real(&[2.0, 2.0, 1.0]);
        assert_eq!(
            a_d.eval_matrix(example().a()).unwrap(),
            mat(&[[q(5.0, 0.0, 0.0, 1.0), q(0.0, 3.0, -1.0, 0.0)], [q(0.0, -1.0, 3.0, 0.0), q(1.0, 0.0, 0.0, 1.0)]])
        );
        let r = place_ackermann(&example(), &a_d, false, &opts).unwrap();
        let k = QMatrix::row_vector(&[q(2.0, 1.0, 0.0, 2.0), q(-1.0, 1.0, 0.0, -1.0)]);
        assert!(r.k.max_diff(&k).unwrap() < 1e-12);
    }

    #[test]
    fn ackermann_rejects_or_fails_on_quaternionic_target() {
        let opts = DesignOptions::default();
        let a_d = QPoly::from_right_zeros(&[q(-1.0, 0.0, 1.0, 0.0), q(-2.0, 0.0, 0.0, 1.0)]).unwrap();
        assert_eq!(place_ackermann(&example(), &a_d, false, &opts).unwrap_err(), Error::NonRealTarget);
        let r = place_ackermann(&example(), &a_d, true, &opts).unwrap();
        assert!(!r.matched);
        assert!(r.stable);
        assert!(!r.warnings.is_empty());
        let reps = r.achieved.classes();
        assert!((reps[0].re + 3.7).abs() < 0.05 && (reps[0].im_norm - 2.4).abs() < 0.05);
        assert!((reps[1].re + 0.48).abs() < 0.05 && (reps[1].im_norm - 0.85).abs() < 0.05);
    }

    #[test]
    fn target_must_be_monic_of_system_degree() {
        let opts = DesignOptions::default();
        let err = place_matching(&example(), &QPoly::from_real(&[1.0, 1.0]), &opts).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { expected: 2, found: 1 });
        let err = place_matching(&example(), &QPoly::from_real(&[1.0, 1.0, 2.0]), &opts).unwrap_err();
        assert_eq!(err, Error::NotMonic);
        let sys = SystemHx::new(QMatrix::identity(2), QMatrix::column_vector(&[Quaternion::ONE, Quaternion::ZERO])).unwrap();
        let err = place_matching(&sys, &QPoly::from_real(&[2.0, 3.0, 1.0]), &opts).unwrap_err();
        assert!(matches!(err, Error::Uncontrollable { .. }));
    }

    #[test]
    fn verification_examples() {
        let opts = DesignOptions::default();
        let k = QMatrix::row_vector(&[q(2.5, 1.0, 0.0, 2.5), q(-1.5, 1.0, 0.0, -1.5)]);
        let targets = Spectrum::from_classes([SimilarityClass::new(-1.0, 0.0), SimilarityClass::new(-2.0, 0.0)]);
        let r = verify_placement(&example(), &k, &targets, &opts).unwrap();
        assert!(r.matched && r.stable);
        assert!(r.residuals.annihilation < 1e-12);
        assert_eq!(r.method, None);

        let open = right_spectrum(example().a()).unwrap();
        let r = verify_placement(&example(), &QMatrix::zeros(1, 2), &open, &opts).unwrap();
        assert!(r.matched);
    }

    #[test]
    fn intertwining_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let a = QMatrix::from_fn(3, 3, |_, _| rand_q(&mut rng));
        let t = &QMatrix::from_fn(3, 3, |_, _| rand_q(&mut rng)) + &QMatrix::real_identity_scaled(3, 2.0);
        let p = QPoly::from_real(&[0.5, -1.0, 2.0, 1.0]);
        assert!(intertwining_check(&p, &a, &t).unwrap() < 1e-9);
        assert_eq!(intertwining_check(&QPoly::from_real(&[3.0]), &a, &t).unwrap(), 0.0);

        let a = QMatrix::from_rows(&[[I]]).unwrap();
        let t = QMatrix::from_rows(&[[K]]).unwrap();
        let p = QPoly::new(alloc::vec![I, Quaternion::ONE]);
        assert_eq!(intertwining_check(&p, &a, &t).unwrap(), 2.0);
        assert!(matches!(intertwining_check(&p, &a, &QMatrix::zeros(1, 1)), Err(Error::Singular { .. })));
    }
}

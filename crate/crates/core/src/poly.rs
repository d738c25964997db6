//! Quaternionic polynomials with a central indeterminate.
//!
//! `p(λ) = Σ p_k λᵏ` with coefficients stored in ascending order. Because
//! coefficients do not commute with the argument, evaluation is side
//! sensitive: [`QPoly::eval_right`] keeps coefficients on the left of the
//! powers, [`QPoly::eval_left`] puts them on the right. Matrix evaluation
//! always uses the left-coefficient form `Σ p_k Mᵏ`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::quaternion::{Quaternion, SimilarityClass, DEFAULT_CLASS_TOL};
use crate::spectral::{right_spectrum, Spectrum};

/// Tolerance on the leading coefficient for monicity checks.
pub const MONIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct QPoly {
    coeffs: Vec<Quaternion>,
}

impl QPoly {
    /// Ascending coefficients; exact trailing zeros are dropped.
    pub fn new(coeffs: impl Into<Vec<Quaternion>>) -> Self {
        let mut coeffs = coeffs.into();
        while coeffs.last() == Some(&Quaternion::ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![Quaternion::ONE])
    }

    /// Monic polynomial `lower[0] + lower[1]·λ + … + λⁿ`.
    pub fn monic(lower: &[Quaternion]) -> Self {
        let mut c = lower.to_vec();
        c.push(Quaternion::ONE);
        Self::new(c)
    }

    /// Polynomial with real coefficients, ascending.
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Quaternion::real(c)).collect::<Vec<_>>())
    }

    /// `χ_q(λ) = λ² − 2·Re(q)·λ + |q|²`, the real quadratic vanishing on the
    /// whole class of `q`.
    pub fn chi(q: Quaternion) -> Self {
        Self::from_real(&[q.norm_sqr(), -2.0 * q.w, 1.0])
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// `p_k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Quaternion {
        self.coeffs.get(k).copied().unwrap_or(Quaternion::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Quaternion> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading()
            .is_some_and(|c| c.max_abs_diff(Quaternion::ONE) <= MONIC_TOL)
    }

    /// All coefficients real, hence central.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    /// Right value `Σ p_k qᵏ`.
    pub fn eval_right(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &c| acc * q + c)
    }

    /// Left value `Σ qᵏ p_k`.
    pub fn eval_left(&self, q: Quaternion) -> Quaternion {
        self.coeffs
            .iter()
            .rev()
            .fold(Quaternion::ZERO, |acc, &c| q * acc + c)
    }

    /// `p_0·I + p_1·M + … + p_n·Mⁿ`, coefficients multiplying from the left.
    pub fn eval_matrix(&self, m: &QMatrix) -> Result<QMatrix> {
        let n = m.require_square()?;
        let mut acc = QMatrix::zeros(n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.matmul(m)?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    /// `(λ − q)·self`.
    pub fn mul_linear_left(&self, q: Quaternion) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Quaternion::ZERO; n + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= q * c;
        }
        Self::new(out)
    }

    /// Lower controllable companion matrix: unit superdiagonal and last row
    /// `−(p_0, …, p_{n−1})`.
    pub fn companion_matrix(&self) -> Result<QMatrix> {
        let n = self.require_monic()?;
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = Quaternion::ONE;
        }
        for j in 0..n {
            m[(n - 1, j)] = -self.coeffs[j];
        }
        Ok(m)
    }

    fn require_monic(&self) -> Result<usize> {
        match self.degree() {
            Some(d) if d >= 1 && self.is_monic() => Ok(d),
            Some(0) | None => Err(Error::InvalidArgument("polynomial must have degree at least 1")),
            _ => Err(Error::NotMonic),
        }
    }

    /// Monic real polynomial whose zeros are the given classes: `(λ − r)` for
    /// each real class and `χ_q` for each nonreal one. The total degree must
    /// equal `order`.
    pub fn from_real_poles(classes: &[SimilarityClass], order: usize) -> Result<Self> {
        let degree: usize = classes
            .iter()
            .map(|c| if c.is_real(DEFAULT_CLASS_TOL) { 1 } else { 2 })
            .sum();
        if degree != order {
            return Err(Error::DegreeMismatch {
                expected: order,
                found: degree,
            });
        }
        let mut real = vec![1.0];
        for c in classes {
            let factor: Vec<f64> = if c.is_real(DEFAULT_CLASS_TOL) {
                vec![-c.re, 1.0]
            } else {
                vec![c.re * c.re + c.im_norm * c.im_norm, -2.0 * c.re, 1.0]
            };
            real = real_poly_mul(&real, &factor);
        }
        Ok(Self::from_real(&real))
    }

    /// Monic polynomial having every given quaternion as a right zero.
    ///
    /// Roots are processed in order. With the current product `p`, the next
    /// root `q` is moved to `q' = v·q·v⁻¹` where `v = p(q)` (right value) and
    /// `p ← (λ − q')·p`, which keeps all earlier right zeros and adds `q`.
    /// Different orders give different polynomials with the same zero
    /// classes. An exact repetition of an earlier root raises its
    /// multiplicity; a root similar to but different from an earlier one is
    /// rejected.
    pub fn from_right_zeros(roots: &[Quaternion]) -> Result<Self> {
        let tol = DEFAULT_CLASS_TOL;
        let mut p = Self::one();
        for (index, &q) in roots.iter().enumerate() {
            let earlier = &roots[..index];
            if earlier.iter().any(|&r| r.similar(q, tol) && r.max_abs_diff(q) > tol) {
                return Err(Error::DuplicateClass { index });
            }
            let repeated = earlier.iter().any(|&r| r.max_abs_diff(q) <= tol);
            let shifted = if repeated {
                q
            } else {
                let v = p.eval_right(q);
                let scale = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.norm() * libm::pow(q.norm(), k as f64))
                    .sum::<f64>();
                if v.norm() <= 1e-12 * scale.max(1.0) {
                    return Err(Error::DuplicateClass { index });
                }
                v * q * v.inv()?
            };
            p = p.mul_linear_left(shifted);
        }
        Ok(p)
    }

    /// Right-zero classes of a monic polynomial, with multiplicity, computed
    /// as the right spectrum of its companion matrix.
    pub fn right_zero_classes(&self) -> Result<Spectrum> {
        right_spectrum(&self.companion_matrix()?)
    }

    /// Whether `χ_q` divides `self` to within `tol`, i.e. the whole class of
    /// `q` consists of zeros.
    pub fn has_spherical_zero(&self, q: Quaternion, tol: f64) -> bool {
        if q.im_norm() <= tol {
            return false;
        }
        let (_, rem) = self.div_rem_real_monic(&[q.norm_sqr(), -2.0 * q.w]);
        rem.iter().all(|r| r.norm() <= tol)
    }

    /// Division by the central monic quadratic `λ² + d[1]·λ + d[0]`.
    fn div_rem_real_monic(&self, d: &[f64; 2]) -> (Self, [Quaternion; 2]) {
        let mut r = self.coeffs.clone();
        if r.len() < 3 {
            r.resize(2, Quaternion::ZERO);
            return (Self::default(), [r[0], r[1]]);
        }
        let mut quot = vec![Quaternion::ZERO; r.len() - 2];
        for k in (2..r.len()).rev() {
            let lead = r[k];
            quot[k - 2] = lead;
            r[k] = Quaternion::ZERO;
            r[k - 1] -= lead * d[1];
            r[k - 2] -= lead * d[0];
        }
        (Self::new(quot), [r[0], r[1]])
    }
}

fn real_poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == Quaternion::ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let unit = k > 0 && *c == Quaternion::ONE;
            if !unit {
                match f.precision() {
                    Some(p) => write!(f, "({:.*})", p, c)?,
                    None => write!(f, "({})", c)?,
                }
            }
            match k {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{}", k)?,
            }
        }
        Ok(())
    }
}

//! Quaternion scalars and right-eigenvalue similarity classes.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default absolute tolerance for class equality.
pub const DEFAULT_CLASS_TOL: f64 = 1e-9;

/// A quaternion `w + x·i + y·j + z·k` with `i² = j² = k² = ijk = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds a complex number `a + b·i` as the quaternion `a + b·i`.
    #[inline]
    pub fn from_complex(c: Complex64) -> Self {
        Self::new(c.re, c.im, 0.0, 0.0)
    }

    #[inline]
    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part `x·i + y·j + z·k` as a quaternion.
    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn norm(self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// `|Im(q)|`.
    #[inline]
    pub fn im_norm(self) -> f64 {
        libm::sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
    }

    #[inline]
    pub fn is_real(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// `conj(q) / |q|²`. Zero has no inverse.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj() / n2)
    }

    /// `self^k` for a nonnegative integer exponent.
    pub fn powi(self, k: usize) -> Self {
        (0..k).fold(Self::ONE, |acc, _| acc * self)
    }

    /// `α⁻¹ · self · α`.
    pub fn conjugate_by(self, alpha: Self) -> Result<Self> {
        Ok(alpha.inv()? * self * alpha)
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    /// Representative `Re(q) + i·|Im(q)|` of the similarity class of `q`.
    pub fn standard_rep(self) -> Complex64 {
        Complex64::new(self.w, self.im_norm())
    }

    pub fn class(self) -> SimilarityClass {
        SimilarityClass::of(self)
    }

    /// `q ∼ r` up to `tol`: equal real parts and equal imaginary magnitudes.
    pub fn similar(self, other: Self, tol: f64) -> bool {
        (self.w - other.w).abs() <= tol && (self.im_norm() - other.im_norm()).abs() <= tol
    }
}

/// Free-function form of [`Quaternion::similar`].
pub fn similar(q: Quaternion, r: Quaternion, tol: f64) -> bool {
    q.similar(r, tol)
}

/// Free-function form of [`Quaternion::standard_rep`].
pub fn standard_rep(q: Quaternion) -> Complex64 {
    q.standard_rep()
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, r: Self) -> Self {
        let (a, b) = (self, r);
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, r: Self) {
        *self = *self * r;
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::from_array(a)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (v, unit) in [(self.w, ""), (self.x, "i"), (self.y, "j"), (self.z, "k")] {
            if v == 0.0 {
                continue;
            }
            if wrote {
                write!(f, "{}", if v < 0.0 { "-" } else { "+" })?;
            } else if v < 0.0 {
                write!(f, "-")?;
            }
            let a = v.abs();
            if unit.is_empty() || a != 1.0 {
                match f.precision() {
                    Some(p) => write!(f, "{:.*}", p, a)?,
                    None => write!(f, "{}", a)?,
                }
            }
            write!(f, "{}", unit)?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A right-eigenvalue similarity class `[q]`, stored by its invariants.
///
/// Real classes are single points; nonreal classes are 2-spheres meeting the
/// complex line in `re ± i·im_norm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityClass {
    pub re: f64,
    pub im_norm: f64,
}

impl SimilarityClass {
    /// Builds a class from its invariants; a negative imaginary magnitude is
    /// folded onto the nonnegative half-line.
    pub fn new(re: f64, im_norm: f64) -> Self {
        Self {
            re,
            im_norm: im_norm.abs(),
        }
    }

    pub fn of(q: Quaternion) -> Self {
        Self::new(q.w, q.im_norm())
    }

    pub fn from_complex(c: Complex64) -> Self {
        Self::new(c.re, c.im)
    }

    pub fn representative(self) -> Complex64 {
        Complex64::new(self.re, self.im_norm)
    }

    /// The complex representative embedded as a quaternion.
    pub fn quaternion(self) -> Quaternion {
        Quaternion::new(self.re, self.im_norm, 0.0, 0.0)
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.im_norm <= tol
    }

    pub fn contains(self, q: Quaternion, tol: f64) -> bool {
        (q.w - self.re).abs() <= tol && (q.im_norm() - self.im_norm).abs() <= tol
    }

    /// Euclidean distance between standard representatives.
    pub fn distance(self, other: Self) -> f64 {
        libm::hypot(self.re - other.re, self.im_norm - other.im_norm)
    }

    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self.re - other.re).abs() <= tol && (self.im_norm - other.im_norm).abs() <= tol
    }
}

impl fmt::Display for SimilarityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.quaternion();
        match f.precision() {
            Some(p) => write!(f, "[{:.*}]", p, q),
            None => write!(f, "[{}]", q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const I: Quaternion = Quaternion::I;
    const J: Quaternion = Quaternion::J;
    const K: Quaternion = Quaternion::K;

    fn q(w: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(w, x, y, z)
    }

    /// Left-multiplication by `a` as a real 4x4 matrix acting on (w, x, y, z).
    fn left_mul_matrix(a: Quaternion) -> [[f64; 4]; 4] {
        [
            [a.w, -a.x, -a.y, -a.z],
            [a.x, a.w, -a.z, a.y],
            [a.y, a.z, a.w, -a.x],
            [a.z, -a.y, a.x, a.w],
        ]
    }

    fn apply(m: [[f64; 4]; 4], v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for r in 0..4 {
            out[r] = (0..4).map(|c| m[r][c] * v[c]).sum();
        }
        out
    }

    #[test]
    fn unit_products() {
        assert_eq!(I * J, K);
        assert_eq!(J * I, -K);
        assert_eq!(J * K, I);
        assert_eq!(K * I, J);
        assert_eq!(I * J * K, Quaternion::real(-1.0));
        assert_eq!(I * I, Quaternion::real(-1.0));
    }

    #[test]
    fn identity_product() {
        let a = q(0.3, -1.2, 2.5, 4.0);
        assert_eq!(a * Quaternion::ONE, a);
        assert_eq!(Quaternion::ONE * a, a);
    }

    #[test]
    fn product_against_real_representation() {
        let a = q(1.0, 1.0, 0.0, 0.0);
        let b = q(1.0, -1.0, 0.0, 0.0);
        let oracle = apply(left_mul_matrix(a), b.to_array());
        assert_eq!(oracle, [2.0, 0.0, 0.0, 0.0]);
        assert_eq!((a * b).to_array(), oracle);

        let c = q(0.5, -2.0, 1.5, 3.0);
        let d = q(-1.0, 0.25, 4.0, -0.5);
        let oracle = apply(left_mul_matrix(c), d.to_array());
        for (x, y) in (c * d).to_array().iter().zip(oracle) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(K.inv().unwrap(), -K);
        assert_eq!(Quaternion::real(2.0).inv().unwrap(), Quaternion::real(0.5));
        let a = q(-1.0, 0.0, -1.0, 1.0);
        let ai = a.inv().unwrap();
        assert!(ai.max_abs_diff(q(-1.0, 0.0, 1.0, -1.0) / 3.0) < 1e-15);
        assert!((a * ai).max_abs_diff(Quaternion::ONE) < 1e-15);
        assert!((ai * a).max_abs_diff(Quaternion::ONE) < 1e-15);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Quaternion::ZERO.inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn similarity_examples() {
        assert!(similar(K, I, DEFAULT_CLASS_TOL));
        assert!(!similar(Quaternion::real(3.0), Quaternion::real(3.5), DEFAULT_CLASS_TOL));
        assert!(similar(q(1.0, 2.0, 0.0, 0.0), q(1.0, -2.0, 0.0, 0.0), DEFAULT_CLASS_TOL));
        // 1 - 2i = j⁻¹ (1 + 2i) j
        let c = q(1.0, 2.0, 0.0, 0.0).conjugate_by(J).unwrap();
        assert!(c.max_abs_diff(q(1.0, -2.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn standard_rep_examples() {
        assert_eq!(standard_rep(K), Complex64::new(0.0, 1.0));
        assert_eq!(standard_rep(q(-1.0, 0.0, 1.0, 0.0)), Complex64::new(-1.0, 1.0));
        assert_eq!(standard_rep(Quaternion::real(3.0)), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn class_folds_sign() {
        let c = SimilarityClass::new(-1.0, -2.0);
        assert_eq!(c.im_norm, 2.0);
        assert!(c.contains(q(-1.0, 0.0, 0.0, -2.0), 1e-12));
    }

    #[test]
    fn display() {
        assert_eq!(q(-1.0, 1.0, -1.0, 1.0).to_string(), "-1+i-j+k");
        assert_eq!(q(2.5, 0.0, 0.0, -1.5).to_string(), "2.5-1.5k");
        assert_eq!(Quaternion::ZERO.to_string(), "0");
        assert_eq!(q(0.0, 0.0, -1.0, 0.0).to_string(), "-j");
    }

    fn arb_q() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-3.0..3.0f64).prop_map(Quaternion::from_array)
    }

    fn arb_nonzero_q() -> impl Strategy<Value = Quaternion> {
        arb_q().prop_filter("nonzero", |q| q.norm() > 1e-3)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in arb_q(), b in arb_q()) {
            prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() < 1e-12);
        }

        #[test]
        fn conj_times_self_is_norm(a in arb_q()) {
            let p = a.conj() * a;
            prop_assert!(p.max_abs_diff(Quaternion::real(a.norm_sqr())) < 1e-12);
        }

        #[test]
        fn inverse_is_two_sided(a in arb_nonzero_q()) {
            let ai = a.inv().unwrap();
            prop_assert!((a * ai).max_abs_diff(Quaternion::ONE) < 1e-12);
            prop_assert!((ai * a).max_abs_diff(Quaternion::ONE) < 1e-12);
        }

        #[test]
        fn associativity(a in arb_q(), b in arb_q(), c in arb_q()) {
            prop_assert!(((a * b) * c).max_abs_diff(a * (b * c)) < 1e-12);
        }

        #[test]
        fn conj_reverses_products(a in arb_q(), b in arb_q()) {
            prop_assert!((a * b).conj().max_abs_diff(b.conj() * a.conj()) < 1e-12);
        }

        #[test]
        fn standard_rep_is_conjugation_invariant(a in arb_q(), r in arb_nonzero_q()) {
            let b = a.conjugate_by(r).unwrap();
            let (sa, sb) = (a.standard_rep(), b.standard_rep());
            prop_assert!((sa - sb).norm() < 1e-12);
            prop_assert!(sb.im >= 0.0);
            prop_assert!(similar(a, b, 1e-12));
        }

        #[test]
        fn similar_iff_reps_close(a in arb_q(), b in arb_q()) {
            let tol = 1e-9;
            let (sa, sb) = (a.standard_rep(), b.standard_rep());
            let reps_close = (sa.re - sb.re).abs() <= tol && (sa.im - sb.im).abs() <= tol;
            prop_assert_eq!(similar(a, b, tol), reps_close);
        }
    }
}

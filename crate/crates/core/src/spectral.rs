//! Right spectra of quaternionic matrices.
//!
//! The right spectrum of `M` is read off the complex adjoint `Φ(M)`: its
//! eigenvalues come in conjugate pairs `(λ, conj λ)` and every pair stands for
//! one right-eigenvalue class `[λ]`. Eigenvalues of `Φ(M)` are computed by a
//! Hessenberg reduction followed by Wilkinson-shifted QR with deflation.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, QMatrix};
use crate::quaternion::SimilarityClass;

/// Relative deflation threshold of the QR iteration.
pub const QR_TOL: f64 = 1e-12;

/// Conjugate-pairing tolerance for eigenvalues of `Φ(M)`, relative to
/// `max(1, max|λ|)`.
pub const PAIR_TOL: f64 = 1e-6;

/// Representatives closer than this are reported as one class with
/// multiplicity.
pub const MERGE_TOL: f64 = 1e-6;

/// All eigenvalues of a square complex matrix, with multiplicity.
///
/// Iteration stops with [`Error::NoConvergence`] after `100·n²` QR sweeps.
pub fn complex_eigenvalues(z: &CMatrix) -> Result<Vec<Complex64>> {
    let n = z.require_square()?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = z.clone();
    hessenberg_in_place(&mut h);
    hessenberg_qr(h, 100 * n * n)
}

fn hessenberg_in_place(h: &mut CMatrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let zero = Complex64::new(0.0, 0.0);
    for k in 0..n - 2 {
        let alpha = libm::sqrt((k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>());
        if alpha == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * alpha;
        let vv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if vv == 0.0 {
            continue;
        }
        // P = I - 2 v vᴴ / (vᴴ v), applied on both sides.
        for j in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * h[(k + 1 + t, j)]).sum();
            let f = dot * (2.0 / vv);
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= vi * f;
            }
        }
        for i in 0..n {
            let dot: Complex64 = v.iter().enumerate().map(|(t, vj)| h[(i, k + 1 + t)] * vj).sum();
            let f = dot * (2.0 / vv);
            for (t, vj) in v.iter().enumerate() {
                h[(i, k + 1 + t)] -= f * vj.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = zero;
        }
    }
}

/// Rotation `[[c, s], [-conj s, c]]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let (na, nb) = (a.norm(), b.norm());
    if nb == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = libm::hypot(na, nb);
    (na / r, (a / na) * b.conj() / r)
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let m = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let (m1, m2) = (m + disc, m - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

fn hessenberg_qr(mut h: CMatrix, cap: usize) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let scale = h.max_norm();
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eigs.push(h[(0, 0)]);
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = scale;
            }
            if h[(lo, lo - 1)].norm() <= QR_TOL * s {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs.push(h[(hi, hi)]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if total >= cap {
            return Err(Error::NoConvergence { iterations: total });
        }
        total += 1;
        since_deflation += 1;

        let mu = if since_deflation.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for k in lo..=hi {
            h[(k, k)] -= mu;
        }
        rotations.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let (x, y) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = Complex64::new(0.0, 0.0);
            rotations.push((c, s));
        }
        for (t, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + t;
            for i in lo..=(k + 1).min(hi) {
                let (x, y) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += mu;
        }
    }
    Ok(eigs)
}

/// One class of a spectrum together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassEntry {
    pub class: SimilarityClass,
    pub multiplicity: usize,
}

/// Multiset of right-eigenvalue classes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Spectrum {
    entries: Vec<ClassEntry>,
}

fn lex(a: &SimilarityClass, b: &SimilarityClass) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im_norm.total_cmp(&b.im_norm))
}

impl Spectrum {
    /// Groups classes closer than [`MERGE_TOL`] into one entry.
    pub fn from_classes(classes: impl IntoIterator<Item = SimilarityClass>) -> Self {
        Self::from_classes_with_tol(classes, MERGE_TOL)
    }

    pub fn from_classes_with_tol(classes: impl IntoIterator<Item = SimilarityClass>, merge_tol: f64) -> Self {
        let mut sorted: Vec<SimilarityClass> = classes.into_iter().collect();
        sorted.sort_by(lex);
        let mut entries: Vec<ClassEntry> = Vec::new();
        for c in sorted {
            match entries.iter_mut().find(|e| e.class.approx_eq(c, merge_tol)) {
                Some(e) => {
                    let m = e.multiplicity as f64;
                    e.class = SimilarityClass::new(
                        (e.class.re * m + c.re) / (m + 1.0),
                        (e.class.im_norm * m + c.im_norm) / (m + 1.0),
                    );
                    e.multiplicity += 1;
                }
                None => entries.push(ClassEntry {
                    class: c,
                    multiplicity: 1,
                }),
            }
        }
        Self { entries }
    }

    pub fn from_entries(mut entries: Vec<ClassEntry>) -> Self {
        entries.retain(|e| e.multiplicity > 0);
        entries.sort_by(|a, b| lex(&a.class, &b.class));
        Self { entries }
    }

    pub fn entries(&self) -> &[ClassEntry] {
        &self.entries
    }

    /// Classes repeated by multiplicity, sorted by real then imaginary part.
    pub fn classes(&self) -> Vec<SimilarityClass> {
        let mut out: Vec<SimilarityClass> = self
            .entries
            .iter()
            .flat_map(|e| core::iter::repeat_n(e.class, e.multiplicity))
            .collect();
        out.sort_by(lex);
        out
    }

    /// Sum of multiplicities.
    pub fn order(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Every representative has real part below `-margin`.
    pub fn is_stable(&self, margin: f64) -> bool {
        self.entries.iter().all(|e| e.class.re < -margin)
    }

    /// See [`spectra_match`].
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        spectra_match(self, other, tol)
    }
}

/// Pairs eigenvalues of `Φ(M)` into conjugate pairs, one class per pair.
pub fn pair_conjugates(eigs: &[Complex64]) -> Result<Vec<SimilarityClass>> {
    if !eigs.len().is_multiple_of(2) {
        return Err(Error::InvalidArgument("complex adjoint spectrum has odd length"));
    }
    let scale = eigs.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = PAIR_TOL * scale;
    let mut rest: Vec<Complex64> = eigs.to_vec();
    let mut classes = Vec::with_capacity(eigs.len() / 2);
    while !rest.is_empty() {
        // Largest imaginary part first, so nonreal pairs are never split.
        let top = (0..rest.len())
            .max_by(|&a, &b| rest[a].im.total_cmp(&rest[b].im))
            .expect("nonempty");
        let z = rest.swap_remove(top);
        let target = z.conj();
        let partner = (0..rest.len())
            .min_by(|&a, &b| (rest[a] - target).norm().total_cmp(&(rest[b] - target).norm()))
            .ok_or(Error::UnpairedEigenvalue { re: z.re, im: z.im })?;
        if (rest[partner] - target).norm() > tol {
            return Err(Error::UnpairedEigenvalue { re: z.re, im: z.im });
        }
        let w = rest.swap_remove(partner);
        classes.push(SimilarityClass::new((z.re + w.re) * 0.5, (z.im - w.im) * 0.5));
    }
    Ok(classes)
}

/// Right spectrum of a square quaternionic matrix.
pub fn right_spectrum(m: &QMatrix) -> Result<Spectrum> {
    m.require_square()?;
    let eigs = complex_eigenvalues(&m.complex_adjoint())?;
    Ok(Spectrum::from_classes(pair_conjugates(&eigs)?))
}

/// Asymptotic stability of `ẋ = M x`: every class representative has real
/// part below `-margin`.
pub fn is_stable(m: &QMatrix, margin: f64) -> Result<bool> {
    Ok(right_spectrum(m)?.is_stable(margin))
}

/// Greedy matching of class representatives.
///
/// Both multisets are expanded by multiplicity and sorted; each class of
/// `s1` in turn takes the nearest unmatched class of `s2`. Succeeds iff every
/// pair is within `tol`.
pub fn spectra_match(s1: &Spectrum, s2: &Spectrum, tol: f64) -> bool {
    let a = s1.classes();
    let mut b = s2.classes();
    if a.len() != b.len() {
        return false;
    }
    for c in a {
        let nearest = (0..b.len()).min_by(|&x, &y| c.distance(b[x]).total_cmp(&c.distance(b[y])));
        match nearest {
            Some(idx) if c.distance(b[idx]) <= tol => {
                b.swap_remove(idx);
            }
            _ => return false,
        }
    }
    true
}

//! Two-component spinors, 2x2 matrices and their epsilon contractions.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::linalg::Scalar;

/// `(λ¹, λ²)`.
pub type Spinor<S> = [S; 2];

/// Sign relating the literal contraction `⟨i|x_ik x_kj|j⟩` to
/// `P_{i,k-1,k,j} / ⟨k-1,k⟩` with `ε = [[0,1],[-1,0]]`.
pub const BRACKET_CHAIN_SIGN: i64 = -1;

/// Sign relating `[[p_a, p_b]]` to `⟨a,b⟩²` when `p = λλᵀ`.
pub const TWO_POINT_TRACE_SIGN: i64 = -1;

/// Sign relating the six-entry trace `S` to its factorized forms.
pub const SIX_POINT_TRACE_SIGN: i64 = 1;

/// A 2x2 matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<S>(pub [[S; 2]; 2]);

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Self([[a, b], [c, d]])
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn identity() -> Self {
        Self::new(S::one(), S::zero(), S::zero(), S::one())
    }

    /// `[[0, 1], [-1, 0]]`
    pub fn epsilon() -> Self {
        Self::new(S::zero(), S::one(), -S::one(), S::zero())
    }

    /// `a bᵀ`
    pub fn outer(a: &Spinor<S>, b: &Spinor<S>) -> Self {
        Self::new(
            a[0].clone() * b[0].clone(),
            a[0].clone() * b[1].clone(),
            a[1].clone() * b[0].clone(),
            a[1].clone() * b[1].clone(),
        )
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.0[r][c]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self::new(m[0][0].clone(), m[1][0].clone(), m[0][1].clone(), m[1][1].clone())
    }

    pub fn det(&self) -> S {
        let m = &self.0;
        m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
    }

    pub fn trace(&self) -> S {
        self.0[0][0].clone() + self.0[1][1].clone()
    }

    pub fn scale(&self, t: &S) -> Self {
        let m = &self.0;
        Self::new(
            m[0][0].clone() * t.clone(),
            m[0][1].clone() * t.clone(),
            m[1][0].clone() * t.clone(),
            m[1][1].clone() * t.clone(),
        )
    }

    pub fn apply(&self, v: &Spinor<S>) -> Spinor<S> {
        let m = &self.0;
        [
            m[0][0].clone() * v[0].clone() + m[0][1].clone() * v[1].clone(),
            m[1][0].clone() * v[0].clone() + m[1][1].clone() * v[1].clone(),
        ]
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let m = &self.0;
        Some(Self::new(
            m[1][1].clone() / d.clone(),
            -m[0][1].clone() / d.clone(),
            -m[1][0].clone() / d.clone(),
            m[0][0].clone() / d,
        ))
    }

    pub fn is_symmetric(&self) -> bool {
        self.0[0][1] == self.0[1][0]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.magnitude().powi(2)).sum::<f64>().sqrt()
    }
}

impl<S: Scalar> Add for &Mat2<S> {
    type Output = Mat2<S>;

    fn add(self, o: &Mat2<S>) -> Mat2<S> {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(
            a[0][0].clone() + b[0][0].clone(),
            a[0][1].clone() + b[0][1].clone(),
            a[1][0].clone() + b[1][0].clone(),
            a[1][1].clone() + b[1][1].clone(),
        )
    }
}

impl<S: Scalar> Sub for &Mat2<S> {
    type Output = Mat2<S>;

    fn sub(self, o: &Mat2<S>) -> Mat2<S> {
        let (a, b) = (&self.0, &o.0);
        Mat2::new(
            a[0][0].clone() - b[0][0].clone(),
            a[0][1].clone() - b[0][1].clone(),
            a[1][0].clone() - b[1][0].clone(),
            a[1][1].clone() - b[1][1].clone(),
        )
    }
}

impl<S: Scalar> Mul for &Mat2<S> {
    type Output = Mat2<S>;

    fn mul(self, o: &Mat2<S>) -> Mat2<S> {
        let (a, b) = (&self.0, &o.0);
        let e = |r: usize, c: usize| a[r][0].clone() * b[0][c].clone() + a[r][1].clone() * b[1][c].clone();
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

/// `⟨a,b⟩ = Σ ε^{αβ} a^α b^β = a¹b² - a²b¹`
pub fn angle<S: Scalar>(a: &Spinor<S>, b: &Spinor<S>) -> S {
    a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()
}

pub fn minkowski(p: &[f64; 4], q: &[f64; 4]) -> f64 {
    -p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3]
}

/// `p^{αβ} = Σ η^{μν} p^μ (σ^ν)^{αβ}` with `η = diag(-1,1,1,1)`.
pub fn pauli_encode(p: &[f64; 4]) -> Mat2<Complex64> {
    let [e, x, y, z] = *p;
    Mat2::new(
        Complex64::new(-e + z, 0.0),
        Complex64::new(x, -y),
        Complex64::new(x, y),
        Complex64::new(-e - z, 0.0),
    )
}

/// `[[m_1, ..., m_k]] = tr(m_1 εᵀ m_2 εᵀ ... m_k εᵀ)`.
pub fn trace_contract<S: Scalar>(ms: &[Mat2<S>]) -> S {
    let et = Mat2::<S>::epsilon().transpose();
    ms.iter().fold(Mat2::identity(), |acc, m| &(&acc * m) * &et).trace()
}

/// `Σ ε^{α1α2} ε^{β1β2} ε^{γ1γ2} a^{α2} x^{α1γ1} y^{γ2β1} b^{β2}`, i.e.
/// `(εa)ᵀ x ε y (εb)`.
pub fn bracket_chain<S: Scalar>(a: &Spinor<S>, x: &Mat2<S>, y: &Mat2<S>, b: &Spinor<S>) -> S {
    let e = Mat2::<S>::epsilon();
    let ea = e.apply(a);
    let eb = e.apply(b);
    let mid = &(x * &e) * y;
    let v = mid.apply(&eb);
    ea[0].clone() * v[0].clone() + ea[1].clone() * v[1].clone()
}

/// Signs observed on one sample, to be compared with the frozen constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignCalibration {
    pub bracket_chain: i64,
    pub two_point_trace: i64,
    pub six_point_trace: i64,
}

pub(crate) fn sign_of_ratio(num: Complex64, den: Complex64) -> Option<i64> {
    let r = num / den;
    if (r - 1.0).norm() < 1e-6 {
        Some(1)
    } else if (r + 1.0).norm() < 1e-6 {
        Some(-1)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn pauli_examples() {
        let m = pauli_encode(&[2.0, 0.0, 0.0, 0.0]);
        assert_eq!(m, Mat2::new(c(-2.0), c(0.0), c(0.0), c(-2.0)));
        let m = pauli_encode(&[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(m, Mat2::new(c(0.0), c(0.0), c(0.0), c(-2.0)));
        for p in [[1.5, -0.3, 2.0, 0.7], [0.1, 4.0, -1.0, 2.5]] {
            let d = pauli_encode(&p).det();
            assert!((d.re + minkowski(&p, &p)).abs() < 1e-12 && d.im.abs() < 1e-12);
        }
    }

    #[test]
    fn angle_basics() {
        let a = [3.0, -2.0];
        assert_eq!(angle(&a, &a), 0.0);
        assert_eq!(angle(&[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert_eq!(angle(&[1.0, 2.0], &[3.0, 4.0]), -angle(&[3.0, 4.0], &[1.0, 2.0]));
    }

    #[test]
    fn two_point_trace_is_minus_angle_squared() {
        let a = [1.0, 2.0];
        let b = [-3.0, 5.0];
        let t = trace_contract(&[Mat2::outer(&a, &a), Mat2::outer(&b, &b)]);
        let ab = angle(&a, &b);
        assert_eq!(t, TWO_POINT_TRACE_SIGN as f64 * ab * ab);
    }

    #[test]
    fn trace_contract_matches_index_sum() {
        // Direct evaluation of the defining index sum for three matrices.
        let ms = [
            Mat2::new(1.0, 2.0, -1.0, 0.5),
            Mat2::new(0.0, 3.0, 2.0, 1.0),
            Mat2::new(-2.0, 1.0, 4.0, 1.5),
        ];
        let e = Mat2::<f64>::epsilon();
        let mut sum = 0.0;
        for a1 in 0..2 {
            for b1 in 0..2 {
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        for a3 in 0..2 {
                            for b3 in 0..2 {
                                sum += ms[0].get(a1, b1)
                                    * ms[1].get(a2, b2)
                                    * ms[2].get(a3, b3)
                                    * e.get(a1, b3)
                                    * e.get(a2, b1)
                                    * e.get(a3, b2);
                            }
                        }
                    }
                }
            }
        }
        assert!((trace_contract(&ms) - sum).abs() < 1e-12);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn bracket_chain_matches_index_sum() {
        let a = [1.0, -2.0];
        let b = [0.5, 3.0];
        let x = Mat2::new(1.0, 2.0, 3.0, 4.0);
        let y = Mat2::new(-1.0, 0.0, 2.0, 5.0);
        let e = Mat2::<f64>::epsilon();
        let mut sum = 0.0;
        for a1 in 0..2 {
            for a2 in 0..2 {
                for b1 in 0..2 {
                    for b2 in 0..2 {
                        for g1 in 0..2 {
                            for g2 in 0..2 {
                                sum += e.get(a1, a2)
                                    * e.get(b1, b2)
                                    * e.get(g1, g2)
                                    * a[a2]
                                    * x.get(a1, g1)
                                    * y.get(g2, b1)
                                    * b[b2];
                            }
                        }
                    }
                }
            }
        }
        assert!((bracket_chain(&a, &x, &y, &b) - sum).abs() < 1e-12);
    }

    #[test]
    fn matrix_algebra() {
        let m = Mat2::new(1.0, 2.0, 0.0, 1.0);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Mat2::identity());
        assert!(Mat2::new(1.0, 2.0, 2.0, 4.0).inverse().is_none());
        assert!(!m.is_symmetric());
        assert!(Mat2::new(2.0, 1.0, 1.0, 3.0).is_symmetric());
        assert_eq!(Mat2::outer(&[1.0, 2.0], &[1.0, 2.0]).det(), 0.0);
    }
}

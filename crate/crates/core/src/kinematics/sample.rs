//! Kinematic samples: spinors, dual coordinates and momentum twistors.

use std::collections::HashMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{sort_sign, Matrix, Scalar};

use super::spinor::{angle, Mat2, Spinor};

/// Relative bound on `|Σ p_i|` accepted as momentum conservation.
pub const CONSERVATION_TOL: f64 = 1e-10;
/// Cyclic brackets below this fraction of the spinor scale are rejected.
pub const BRACKET_FLOOR: f64 = 1e-3;
/// Pluecker coordinates below this fraction of their Hadamard bound are rejected.
pub const PLUCKER_FLOOR: f64 = 1e-6;
pub const DEFAULT_RESAMPLE_LIMIT: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dim {
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4")]
    Four,
}

impl Dim {
    pub fn value(self) -> u8 {
        match self {
            Dim::Three => 3,
            Dim::Four => 4,
        }
    }
}

/// A point of `n`-particle kinematics: spinors `λ_i`, dual coordinates `x_i`,
/// and the `4 x n` twistor matrix with all its maximal minors.
#[derive(Clone, Debug)]
pub struct KinematicsSample<S: Scalar> {
    pub dim: Dim,
    pub n: usize,
    pub lambdas: Vec<Spinor<S>>,
    pub duals: Vec<Mat2<S>>,
    pub twistors: Matrix<S>,
    /// False for open chains, where `x_{n+1} ≠ x_1`.
    pub closed: bool,
    pluckers: HashMap<[u32; 4], S>,
}

pub(crate) fn four_subsets(n: usize) -> impl Iterator<Item = [u32; 4]> {
    let n = n as u32;
    (1..=n).flat_map(move |a| {
        (a + 1..=n).flat_map(move |b| (b + 1..=n).flat_map(move |c| (c + 1..=n).map(move |d| [a, b, c, d])))
    })
}

impl<S: Scalar> KinematicsSample<S> {
    /// Builds the twistors `Z_i = (λ_i, x_i ε λ_i)` and caches every minor.
    pub fn new(dim: Dim, lambdas: Vec<Spinor<S>>, duals: Vec<Mat2<S>>, closed: bool) -> Result<Self> {
        if lambdas.len() != duals.len() {
            return Err(Error::Malformed("spinor and dual-coordinate counts differ".into()));
        }
        let twistors = twistors_from(&lambdas, &duals);
        Ok(Self::with_twistors(dim, lambdas, duals, twistors, closed))
    }

    fn with_twistors(dim: Dim, lambdas: Vec<Spinor<S>>, duals: Vec<Mat2<S>>, twistors: Matrix<S>, closed: bool) -> Self {
        let n = lambdas.len();
        let pluckers = four_subsets(n)
            .map(|s| {
                let cols: Vec<usize> = s.iter().map(|&i| i as usize - 1).collect();
                (s, twistors.minor(&cols))
            })
            .collect();
        Self {
            dim,
            n,
            lambdas,
            duals,
            twistors,
            closed,
            pluckers,
        }
    }

    fn wrap(&self, i: i64) -> usize {
        (i - 1).rem_euclid(self.n as i64) as usize
    }

    /// `λ_i`, index taken mod `n`.
    pub fn lambda(&self, i: i64) -> &Spinor<S> {
        &self.lambdas[self.wrap(i)]
    }

    /// `x_i`, index taken mod `n`.
    pub fn dual(&self, i: i64) -> &Mat2<S> {
        &self.duals[self.wrap(i)]
    }

    /// `x_{i,j} = x_i - x_j`
    pub fn x(&self, i: i64, j: i64) -> Mat2<S> {
        self.dual(i) - self.dual(j)
    }

    /// `p_i = x_{i+1} - x_i`
    pub fn momentum(&self, i: i64) -> Mat2<S> {
        self.x(i + 1, i)
    }

    /// `⟨i,j⟩`, indices mod `n`.
    pub fn angle(&self, i: i64, j: i64) -> S {
        angle(self.lambda(i), self.lambda(j))
    }

    /// `P_{i,j,k,l}` in the given column order, indices mod `n`; zero on a
    /// repeated index.
    pub fn plucker(&self, raw: &[i64; 4]) -> S {
        let idx = raw.map(|i| self.wrap(i) as u32 + 1);
        let Some(sign) = sort_sign(&idx) else {
            return S::zero();
        };
        let mut sorted = idx;
        sorted.sort_unstable();
        let v = self.pluckers[&sorted].clone();
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    pub fn pluckers(&self) -> impl Iterator<Item = (&[u32; 4], &S)> {
        self.pluckers.iter()
    }

    /// Hadamard bound of the minor on these columns.
    pub fn plucker_bound(&self, raw: &[i64; 4]) -> f64 {
        let cols: Vec<usize> = raw.iter().map(|&i| self.wrap(i)).collect();
        self.twistors.hadamard_bound(&cols)
    }

    /// Largest `|λ_i|²`.
    pub fn spinor_scale(&self) -> f64 {
        self.lambdas
            .iter()
            .map(|l| l.iter().map(|c| c.magnitude().powi(2)).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `λ_i → t_i λ_i`, `Z_i → t_i Z_i`, dual coordinates unchanged.
    pub fn rescale_columns(&self, t: &[S]) -> Result<Self> {
        if t.len() != self.n {
            return Err(Error::Arity {
                expected: self.n,
                got: t.len(),
            });
        }
        let lambdas = self
            .lambdas
            .iter()
            .zip(t)
            .map(|(l, s)| [l[0].clone() * s.clone(), l[1].clone() * s.clone()])
            .collect();
        let mut z = self.twistors.clone();
        for (c, s) in t.iter().enumerate() {
            z.scale_column(c, s);
        }
        Ok(Self::with_twistors(self.dim, lambdas, self.duals.clone(), z, self.closed))
    }

    /// `λ → tλ`, `x → t²x`: the physical rescaling of all momenta by `t²`.
    pub fn rescale_uniform(&self, t: &S) -> Result<Self> {
        let t2 = t.clone() * t.clone();
        let lambdas = self
            .lambdas
            .iter()
            .map(|l| [l[0].clone() * t.clone(), l[1].clone() * t.clone()])
            .collect();
        let duals = self.duals.iter().map(|x| x.scale(&t2)).collect();
        Self::new(self.dim, lambdas, duals, self.closed)
    }
}

/// `Z_i = (λ_i¹, λ_i², (x_i ε λ_i)¹, (x_i ε λ_i)²)`.
pub fn twistors_from<S: Scalar>(lambdas: &[Spinor<S>], duals: &[Mat2<S>]) -> Matrix<S> {
    let e = Mat2::<S>::epsilon();
    let mu: Vec<Spinor<S>> = lambdas
        .iter()
        .zip(duals)
        .map(|(l, x)| (x * &e).apply(l))
        .collect();
    Matrix::from_fn(4, lambdas.len(), |r, c| match r {
        0 | 1 => lambdas[c][r].clone(),
        _ => mu[c][r - 2].clone(),
    })
}

/// `x_1 = 0`, `x_{i+1} = x_i + λ_i λ̃_iᵀ`; fails unless `x_{n+1} ≈ x_1`
/// relative to the largest momentum.
pub fn dual_from_spinors<S: Scalar>(lambdas: &[Spinor<S>], tildes: &[Spinor<S>], tol: f64) -> Result<Vec<Mat2<S>>> {
    let (duals, end) = open_duals(lambdas, tildes);
    let scale = lambdas
        .iter()
        .zip(tildes)
        .map(|(l, t)| Mat2::outer(l, t).norm())
        .fold(0.0, f64::max);
    let residual = if scale > 0.0 { end.norm() / scale } else { end.norm() };
    if residual > tol {
        return Err(Error::Closure(residual));
    }
    Ok(duals)
}

/// Dual coordinates without closure, plus `x_{n+1}`.
pub fn open_duals<S: Scalar>(lambdas: &[Spinor<S>], tildes: &[Spinor<S>]) -> (Vec<Mat2<S>>, Mat2<S>) {
    let mut x = Mat2::zero();
    let mut out = Vec::with_capacity(lambdas.len());
    for (l, t) in lambdas.iter().zip(tildes) {
        out.push(x.clone());
        x = &x + &Mat2::outer(l, t);
    }
    (out, x)
}

fn grid_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-9..=9) as f64, rng.random_range(-9..=9) as f64)
}

/// `n` spinors with `Σ λ_i λ_iᵀ = 0`: the first `n-2` on the integer grid,
/// `λ_{n-1}` on the conic that makes the remainder rank one, `λ_n` its root.
pub fn sample_d3_spinors<R: Rng + ?Sized>(n: usize, rng: &mut R, max_attempts: usize) -> Result<Vec<Spinor<Complex64>>> {
    if n < 6 {
        return Err(Error::InvalidParameters {
            k: 4,
            n,
            reason: "kinematics need n >= 6".into(),
        });
    }
    for _ in 0..max_attempts {
        if let Some(l) = try_d3_spinors(n, rng) {
            if cyclic_brackets_generic(&l) {
                return Ok(l);
            }
        }
    }
    Err(Error::SamplingFailed(max_attempts))
}

fn try_d3_spinors<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Option<Vec<Spinor<Complex64>>> {
    let mut lambdas: Vec<Spinor<Complex64>> = (0..n - 2).map(|_| [grid_complex(rng), grid_complex(rng)]).collect();
    let sum = lambdas
        .iter()
        .fold(Mat2::zero(), |acc, l| &acc + &Mat2::outer(l, l));
    let m = sum.scale(&Complex64::new(-1.0, 0.0));
    let (m11, m12, m22) = (m.0[0][0], m.0[0][1], m.0[1][1]);
    let det = m.det();
    let u1 = grid_complex(rng);
    // m11 u2² - 2 m12 u1 u2 + (m22 u1² - det M) = 0
    let (a, b, c) = (m11, -2.0 * m12 * u1, m22 * u1 * u1 - det);
    if a.norm() < 1e-9 {
        return None;
    }
    let disc = (b * b - 4.0 * a * c).sqrt();
    let u2 = (-b + disc) / (2.0 * a);
    let u = [u1, u2];
    let rest = &m - &Mat2::outer(&u, &u);
    let pivot = if rest.0[0][0].norm() >= rest.0[1][1].norm() { 0 } else { 1 };
    let root = rest.0[pivot][pivot].sqrt();
    if root.norm() < 1e-9 {
        return None;
    }
    let v = [rest.0[0][pivot] / root, rest.0[1][pivot] / root];
    lambdas.push(u);
    lambdas.push(v);
    Some(lambdas)
}

fn cyclic_brackets_generic(l: &[Spinor<Complex64>]) -> bool {
    let scale = l
        .iter()
        .map(|s| s[0].norm_sqr() + s[1].norm_sqr())
        .fold(0.0, f64::max);
    (0..l.len()).all(|i| angle(&l[i], &l[(i + 1) % l.len()]).norm() >= BRACKET_FLOOR * scale)
}

/// Largest relative momentum-conservation violation `|Σ λλᵀ| / max |λλᵀ|`.
pub fn conservation_residual(l: &[Spinor<Complex64>]) -> f64 {
    let ps: Vec<_> = l.iter().map(|s| Mat2::outer(s, s)).collect();
    let sum = ps.iter().fold(Mat2::zero(), |acc, p| &acc + p);
    sum.norm() / ps.iter().map(Mat2::norm).fold(0.0, f64::max)
}

fn pluckers_generic<S: Scalar>(s: &KinematicsSample<S>) -> bool {
    s.pluckers().all(|(idx, v)| {
        let raw = idx.map(i64::from);
        if S::EXACT {
            !v.is_zero()
        } else {
            v.magnitude() >= PLUCKER_FLOOR * s.plucker_bound(&raw)
        }
    })
}

/// A generic D=3 sample: conserved null momenta, closed dual coordinates,
/// all cyclic brackets and all Pluecker coordinates away from zero.
pub fn sample_d3<R: Rng + ?Sized>(n: usize, rng: &mut R, max_attempts: usize) -> Result<(KinematicsSample<Complex64>, usize)> {
    for attempt in 0..max_attempts {
        let lambdas = sample_d3_spinors(n, rng, max_attempts)?;
        let Ok(duals) = dual_from_spinors(&lambdas, &lambdas, CONSERVATION_TOL) else {
            continue;
        };
        let s = KinematicsSample::new(Dim::Three, lambdas, duals, true)?;
        if pluckers_generic(&s) {
            return Ok((s, attempt));
        }
    }
    Err(Error::SamplingFailed(max_attempts))
}

/// Integer `4 x n` twistor matrix, entries in `[-9, 9]`, with every maximal
/// minor and every cyclic bracket nonzero.
pub fn sample_d4_twistors<R: Rng + ?Sized>(n: usize, rng: &mut R, max_attempts: usize) -> Result<(Matrix<BigRational>, usize)> {
    if n < 6 {
        return Err(Error::InvalidParameters {
            k: 4,
            n,
            reason: "kinematics need n >= 6".into(),
        });
    }
    for attempt in 0..max_attempts {
        let z = Matrix::from_fn(4, n, |_, _| BigRational::from_i64(rng.random_range(-9..=9)));
        let brackets_ok = (0..n).all(|i| {
            let j = (i + 1) % n;
            let a = [z.get(0, i).clone(), z.get(1, i).clone()];
            let b = [z.get(0, j).clone(), z.get(1, j).clone()];
            !angle(&a, &b).is_zero()
        });
        if brackets_ok && four_subsets(n).all(|s| !z.minor(&s.map(|i| i as usize - 1)).is_zero()) {
            return Ok((z, attempt));
        }
    }
    Err(Error::SamplingFailed(max_attempts))
}

/// Recovers `λ_i` and `x_i` from twistors: `x_i` is the unique matrix with
/// `x_i ε λ_{i-1} = μ_{i-1}` and `x_i ε λ_i = μ_i`.
pub fn sample_from_twistors<S: Scalar>(z: Matrix<S>) -> Result<KinematicsSample<S>> {
    let n = z.cols();
    let lambdas: Vec<Spinor<S>> = (0..n).map(|c| [z.get(0, c).clone(), z.get(1, c).clone()]).collect();
    let mus: Vec<Spinor<S>> = (0..n).map(|c| [z.get(2, c).clone(), z.get(3, c).clone()]).collect();
    let e = Mat2::<S>::epsilon();
    let mut duals = Vec::with_capacity(n);
    for i in 0..n {
        let prev = (i + n - 1) % n;
        let lam = Mat2::new(
            lambdas[prev][0].clone(),
            lambdas[i][0].clone(),
            lambdas[prev][1].clone(),
            lambdas[i][1].clone(),
        );
        let mu = Mat2::new(mus[prev][0].clone(), mus[i][0].clone(), mus[prev][1].clone(), mus[i][1].clone());
        let el = &e * &lam;
        let inv = el
            .inverse()
            .ok_or_else(|| Error::DegenerateSample(format!("<{},{}> = 0", prev + 1, i + 1)))?;
        duals.push(&mu * &inv);
    }
    Ok(KinematicsSample::with_twistors(Dim::Four, lambdas, duals, z, true))
}

/// Rational open chain: `p_i = λ_i λ_iᵀ` without momentum conservation.
/// Identities hold exactly as long as no index wraps past `n`.
pub fn open_chain_sample(lambdas: Vec<Spinor<BigRational>>) -> Result<KinematicsSample<BigRational>> {
    let (duals, _) = open_duals(&lambdas, &lambdas);
    KinematicsSample::new(Dim::Three, lambdas, duals, false)
}

pub fn random_open_chain<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<KinematicsSample<BigRational>> {
    let lambdas = (0..n)
        .map(|_| {
            [
                BigRational::from_i64(rng.random_range(-9..=9)),
                BigRational::from_i64(rng.random_range(-9..=9)),
            ]
        })
        .collect();
    open_chain_sample(lambdas)
}

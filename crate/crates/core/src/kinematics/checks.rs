//! Identities between spinors, dual coordinates and twistor minors.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::folding::EquationForm;
use crate::linalg::Scalar;

use super::sample::{Dim, KinematicsSample};
use super::spinor::{
    bracket_chain, sign_of_ratio, trace_contract, Mat2, SignCalibration, BRACKET_CHAIN_SIGN, SIX_POINT_TRACE_SIGN,
    TWO_POINT_TRACE_SIGN,
};

/// Both sides of one identity instance.
#[derive(Clone, Debug)]
pub struct IdentityValue<S> {
    pub lhs: S,
    pub rhs: S,
    /// The right side vanishes identically (a repeated twistor index).
    pub structural: bool,
    /// Natural size of the left side, used when the right side is a
    /// structural zero.
    pub scale: f64,
}

impl<S: Scalar> IdentityValue<S> {
    pub fn residual(&self) -> f64 {
        if self.structural {
            if self.lhs.is_zero() {
                0.0
            } else if self.scale > 0.0 {
                self.lhs.magnitude() / self.scale
            } else {
                f64::INFINITY
            }
        } else {
            relative_residual(&self.lhs, &self.rhs)
        }
    }

    pub fn holds_exactly(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `|l - r| / max(|l|, |r|)`, zero when both vanish. Computed in `S`, so the
/// value is exact for rational inputs.
pub fn relative_residual<S: Scalar>(l: &S, r: &S) -> f64 {
    if l.is_zero() && r.is_zero() {
        return 0.0;
    }
    let denom = match l.magnitude_cmp(r) {
        Ordering::Less => r,
        _ => l,
    };
    ((l.clone() - r.clone()) / denom.clone()).magnitude()
}

fn signed<S: Scalar>(v: S, sign: i64) -> S {
    if sign < 0 {
        -v
    } else {
        v
    }
}

fn has_repeat(n: usize, idx: &[i64]) -> bool {
    let mut r: Vec<i64> = idx.iter().map(|&i| (i - 1).rem_euclid(n as i64)).collect();
    r.sort_unstable();
    r.windows(2).any(|w| w[0] == w[1])
}

fn nonzero_bracket<S: Scalar>(s: &KinematicsSample<S>, i: i64, j: i64) -> Result<S> {
    let b = s.angle(i, j);
    if b.is_zero() {
        return Err(Error::DegenerateSample(format!("<{i},{j}> = 0")));
    }
    Ok(b)
}

fn spinor_norm<S: Scalar>(l: &[S; 2]) -> f64 {
    (l[0].magnitude().powi(2) + l[1].magnitude().powi(2)).sqrt()
}

/// `x_{i,j}² = P_{i-1,i,j-1,j} / (⟨i-1,i⟩⟨j-1,j⟩)`, with `x² = det x`.
pub fn check_xij<S: Scalar>(s: &KinematicsSample<S>, i: i64, j: i64) -> Result<IdentityValue<S>> {
    let x = s.x(i, j);
    let idx = [i - 1, i, j - 1, j];
    let den = nonzero_bracket(s, i - 1, i)? * nonzero_bracket(s, j - 1, j)?;
    Ok(IdentityValue {
        lhs: x.det(),
        rhs: s.plucker(&idx) / den,
        structural: has_repeat(s.n, &idx),
        scale: x.norm().powi(2),
    })
}

/// `⟨i|x_{i,k} x_{k,j}|j⟩ = P_{i,k-1,k,j} / ⟨k-1,k⟩`.
pub fn check_bracket_identity<S: Scalar>(s: &KinematicsSample<S>, i: i64, k: i64, j: i64) -> Result<IdentityValue<S>> {
    let (xik, xkj) = (s.x(i, k), s.x(k, j));
    let lhs = signed(bracket_chain(s.lambda(i), &xik, &xkj, s.lambda(j)), BRACKET_CHAIN_SIGN);
    let idx = [i, k - 1, k, j];
    let rhs = s.plucker(&idx) / nonzero_bracket(s, k - 1, k)?;
    Ok(IdentityValue {
        lhs,
        rhs,
        structural: has_repeat(s.n, &idx),
        scale: spinor_norm(s.lambda(i)) * spinor_norm(s.lambda(j)) * xik.norm() * xkj.norm(),
    })
}

/// `⟨a-1,a⟩⟨a+1,a+2⟩⟨a,a+1⟩² = P_{a-1,a,a+1,a+2}` on any sample. Holds only
/// when `λ̃ = λ`.
pub fn consecutive_identity<S: Scalar>(s: &KinematicsSample<S>, a: i64) -> IdentityValue<S> {
    let mid = s.angle(a, a + 1);
    IdentityValue {
        lhs: s.angle(a - 1, a) * s.angle(a + 1, a + 2) * mid.clone() * mid,
        rhs: s.plucker(&[a - 1, a, a + 1, a + 2]),
        structural: false,
        scale: 0.0,
    }
}

/// [`consecutive_identity`], restricted to D=3 samples.
pub fn check_d3_consecutive<S: Scalar>(s: &KinematicsSample<S>, a: i64) -> Result<IdentityValue<S>> {
    if s.dim != Dim::Three {
        return Err(Error::Inapplicable("the consecutive-bracket identity needs D=3 kinematics"));
    }
    Ok(consecutive_identity(s, a))
}

/// `[[p_a, p_b]] = -⟨a,b⟩²` for `p = λλᵀ`.
pub fn check_two_point_trace<S: Scalar>(s: &KinematicsSample<S>, a: i64, b: i64) -> Result<IdentityValue<S>> {
    if s.dim != Dim::Three {
        return Err(Error::Inapplicable("the two-point trace identity needs D=3 kinematics"));
    }
    let t = trace_contract(&[s.momentum(a), s.momentum(b)]);
    let ab = s.angle(a, b);
    Ok(IdentityValue {
        lhs: signed(t, TWO_POINT_TRACE_SIGN),
        rhs: ab.clone() * ab,
        structural: false,
        scale: 0.0,
    })
}

fn momentum_sum<S: Scalar>(s: &KinematicsSample<S>, from: i64, to: i64) -> Mat2<S> {
    (from..=to).fold(Mat2::zero(), |acc, t| &acc + &s.momentum(t))
}

/// The trace `S = [[p_a, p_{a+1}, Σ p, p_c, p_{c+1}, Σ p]]` and its two
/// factorized forms.
#[derive(Clone, Debug)]
pub struct SQuantity<S> {
    pub direct: S,
    pub form_a: S,
    pub form_b: S,
}

pub fn s_quantity<S: Scalar>(s: &KinematicsSample<S>, a: i64, c: i64) -> Result<SQuantity<S>> {
    if s.dim != Dim::Three {
        return Err(Error::Inapplicable("the six-point trace needs D=3 kinematics"));
    }
    let n = s.n as i64;
    let gap = (c - a).rem_euclid(n);
    if !(3..=n - 3).contains(&gap) {
        return Err(Error::Malformed(format!("c - a = {gap} outside [3, {}]", n - 3)));
    }
    let c = a + gap;
    let direct = trace_contract(&[
        s.momentum(a),
        s.momentum(a + 1),
        momentum_sum(s, a + 2, c - 1),
        s.momentum(c),
        s.momentum(c + 1),
        momentum_sum(s, c + 2, a - 1 + n),
    ]);
    let br = |i, j| nonzero_bracket(s, i, j);
    let form_a = s.plucker(&[c, c + 1, c + 2, a]) * s.angle(a, a + 1) * s.plucker(&[a + 1, c - 1, c, c + 1])
        / (br(c - 1, c)? * br(c + 1, c + 2)? * br(c, c + 1)?);
    let form_b = s.plucker(&[a, a + 1, a + 2, c]) * s.angle(c, c + 1) * s.plucker(&[c + 1, a - 1, a, a + 1])
        / (br(a - 1, a)? * br(a + 1, a + 2)? * br(a, a + 1)?);
    Ok(SQuantity {
        direct: signed(direct, SIX_POINT_TRACE_SIGN),
        form_a,
        form_b,
    })
}

fn nonzero_plucker<S: Scalar>(s: &KinematicsSample<S>, idx: &[i64; 4]) -> Result<S> {
    let v = s.plucker(idx);
    if v.is_zero() {
        return Err(Error::DegenerateSample(format!("P{idx:?} = 0")));
    }
    Ok(v)
}

/// Both sides of the constraint at `(a, c)`, evaluated as written, extra
/// factor `P_{a,a+1,c,c+1}` included.
pub fn folding_identity<S: Scalar>(s: &KinematicsSample<S>, a: i64, c: i64) -> Result<IdentityValue<S>> {
    let extra = nonzero_plucker(s, &[a, a + 1, c, c + 1])?;
    let lhs = s.plucker(&[a, a + 1, a + 2, c]) * s.plucker(&[a - 1, a, a + 1, c + 1])
        / (nonzero_plucker(s, &[a - 1, a, a + 1, a + 2])? * extra.clone());
    let rhs = s.plucker(&[a + 1, c - 1, c, c + 1]) * s.plucker(&[a, c, c + 1, c + 2])
        / (nonzero_plucker(s, &[c - 1, c, c + 1, c + 2])? * extra);
    Ok(IdentityValue {
        lhs,
        rhs,
        structural: false,
        scale: 0.0,
    })
}

pub fn folding_residual<S: Scalar>(s: &KinematicsSample<S>, a: i64, c: i64) -> Result<f64> {
    folding_identity(s, a, c).map(|v| v.residual())
}

/// Both sides of a symbolic equation on the sample's Pluecker coordinates.
pub fn evaluate_equation<S: Scalar>(s: &KinematicsSample<S>, eq: &EquationForm) -> Result<IdentityValue<S>> {
    let side = |m: &crate::monomial::Monomial<crate::folding::PluckerSymbol>| -> Result<S> {
        let mut v = S::one();
        for (sym, e) in m.iter() {
            let idx = sym.indices();
            let raw = [idx[0], idx[1], idx[2], idx[3]].map(i64::from);
            let p = nonzero_plucker(s, &raw)?;
            for _ in 0..e.unsigned_abs() {
                v = if e > 0 { v * p.clone() } else { v / p.clone() };
            }
        }
        Ok(v)
    };
    let lhs = side(eq.lhs())?;
    let rhs = signed(side(eq.rhs())?, i64::from(eq.net_sign()));
    Ok(IdentityValue {
        lhs,
        rhs,
        structural: false,
        scale: 0.0,
    })
}

/// Reads off the three contraction signs on a D=3 sample.
pub fn calibrate_signs(s: &KinematicsSample<Complex64>) -> Option<SignCalibration> {
    let bracket = check_bracket_identity(s, 1, 3, 5).ok()?;
    let two = check_two_point_trace(s, 1, 3).ok()?;
    let six = s_quantity(s, 1, 4).ok()?;
    Some(SignCalibration {
        bracket_chain: sign_of_ratio(bracket.lhs, bracket.rhs)? * BRACKET_CHAIN_SIGN,
        two_point_trace: sign_of_ratio(two.lhs, two.rhs)? * TWO_POINT_TRACE_SIGN,
        six_point_trace: sign_of_ratio(six.direct, six.form_a)? * SIX_POINT_TRACE_SIGN,
    })
}

//! The half-infinite ladder. Even vertices `0, 2, 4, …` form the rails
//! joined by unit inductors; each rung `2k−1 - 2k` carries `(0, L, D)` and
//! its odd end is grounded. The source is `0`.
//!
//! Writing `μ = λ²/(Lλ² + D)`, the voltages along the rail satisfy
//! `v_{k+1} − (2 + μ) v_k + v_{k−1} = 0`, whose characteristic roots
//! `ψ₁ψ₂ = 1` give the partial admittances in closed form.

use crate::dirichlet::{AdmittanceValue, UndefinedReason};
use crate::error::{Error, Result};
use crate::network::{EdgeParams, ROOT_TOLERANCE};
use crate::Complex;

use super::{FamilyConstants, InfiniteNetwork};

/// `|μ + 4|` below which the double root `ψ = −1` is used.
pub const MU_DOUBLE_ROOT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ladder {
    l: f64,
    d: f64,
}

pub fn make_ladder(l: f64, d: f64) -> Result<Ladder> {
    for (name, v) in [("L", l), ("D", d)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::InvalidParam(format!("ladder {name} must be positive and finite, got {v}")));
        }
    }
    Ok(Ladder { l, d })
}

impl Ladder {
    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    fn rail() -> EdgeParams {
        EdgeParams::inductor(1.0).expect("unit inductor")
    }

    fn rung(&self) -> EdgeParams {
        EdgeParams::new(0.0, self.l, self.d).expect("validated at construction")
    }
}

impl InfiniteNetwork for Ladder {
    fn source(&self) -> usize {
        0
    }

    fn neighbors(&self, vertex: usize) -> Vec<(usize, EdgeParams)> {
        if vertex % 2 == 1 {
            return vec![(vertex + 1, self.rung())];
        }
        let mut out = Vec::with_capacity(3);
        if vertex >= 2 {
            out.push((vertex - 2, Self::rail()));
            out.push((vertex - 1, self.rung()));
        }
        out.push((vertex + 2, Self::rail()));
        out
    }

    fn is_ground(&self, vertex: usize) -> bool {
        vertex % 2 == 1
    }

    fn declared_constants(&self) -> Option<FamilyConstants> {
        // Rails have D = 0 and count as ratio 0.
        Some(FamilyConstants {
            s_d: self.d / self.l,
            s_d_star: 0.0,
            s_r: 0.0,
            approximate: false,
        })
    }

    fn partial_oracle(&self, n: usize, lambda: Complex) -> Option<AdmittanceValue> {
        Some(ladder_partial_oracle(self.l, self.d, n, lambda).unwrap_or(AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden)))
    }

    fn limit_oracle(&self, lambda: Complex) -> Option<AdmittanceValue> {
        Some(ladder_limit_oracle(self.l, self.d, lambda))
    }
}

/// `μ = λ²/(Lλ² + D)`; fails when the rung impedance vanishes.
pub fn ladder_mu(l: f64, d: f64, lambda: Complex) -> Result<Complex> {
    let lam2 = lambda * lambda;
    let den = lam2 * l + d;
    if den.norm() <= ROOT_TOLERANCE * (l * lam2.norm() + d) {
        return Err(Error::VerticalEdgeShort);
    }
    Ok(lam2 / den)
}

/// Roots of `ψ² − (2 + μ)ψ + 1 = 0` ordered by `|ψ₁| ≤ |ψ₂|`.
pub fn ladder_psi_roots(mu: Complex) -> Result<(Complex, Complex)> {
    if mu == Complex::new(0.0, 0.0) {
        return Err(Error::MuZero);
    }
    let b = mu + 2.0;
    let s = (mu * (mu + 4.0)).sqrt();
    // Take the larger root without cancellation; the other is its inverse.
    let big = if (b + s).norm() >= (b - s).norm() { (b + s) * 0.5 } else { (b - s) * 0.5 };
    Ok((big.inv(), big))
}

/// `P_n(λ) = (ψ₁^{2n−1} + 1)(ψ₁ − 1) / (λ(ψ₁^{2n} − 1))`, or
/// `(2n − 1)/(λn)` at the double root `μ = −4`.
pub fn ladder_partial_oracle(l: f64, d: f64, n: usize, lambda: Complex) -> Result<AdmittanceValue> {
    if n == 0 {
        return Err(Error::InvalidParam("layer index must be at least 1".into()));
    }
    if lambda == Complex::new(0.0, 0.0) {
        return Ok(AdmittanceValue::Undefined(UndefinedReason::LambdaZero));
    }
    let mu = ladder_mu(l, d, lambda)?;
    if (mu + 4.0).norm() <= MU_DOUBLE_ROOT_TOLERANCE {
        let n = n as f64;
        return Ok(AdmittanceValue::Finite(Complex::new(2.0 * n - 1.0, 0.0) / (lambda * n)));
    }
    let (psi, _) = ladder_psi_roots(mu)?;
    let odd = psi.powu(2 * n as u32 - 1);
    let even = odd * psi;
    let den = lambda * (even - 1.0);
    if (even - 1.0).norm() <= ROOT_TOLERANCE {
        return Ok(AdmittanceValue::Infinite);
    }
    Ok(AdmittanceValue::Finite((odd + 1.0) * (psi - 1.0) / den))
}

/// `lim P_n(λ) = (1 − ψ₁)/λ` where `|ψ₁| < 1`, `2/λ` at the double root, and
/// undefined on the open segment `(−i w, i w)`, `w = √(D/(L + 1/4))`,
/// where both roots lie on the unit circle.
pub fn ladder_limit_oracle(l: f64, d: f64, lambda: Complex) -> AdmittanceValue {
    if lambda == Complex::new(0.0, 0.0) {
        return AdmittanceValue::Undefined(UndefinedReason::LambdaZero);
    }
    let mu = match ladder_mu(l, d, lambda) {
        Ok(mu) => mu,
        Err(_) => return AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden),
    };
    if (mu + 4.0).norm() <= MU_DOUBLE_ROOT_TOLERANCE {
        return AdmittanceValue::Finite(Complex::new(2.0, 0.0) / lambda);
    }
    let w = (d / (l + 0.25)).sqrt();
    if lambda.re == 0.0 && lambda.im.abs() < w {
        return AdmittanceValue::Undefined(UndefinedReason::NoLimit);
    }
    match ladder_psi_roots(mu) {
        Ok((psi, _)) => AdmittanceValue::Finite((Complex::new(1.0, 0.0) - psi) / lambda),
        Err(_) => AdmittanceValue::Undefined(UndefinedReason::NoLimit),
    }
}

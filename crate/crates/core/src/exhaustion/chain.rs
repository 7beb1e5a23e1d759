//! The one-sided chain `0 - 1 - 2 - …` with edge `k - k+1` carrying
//! `(R_k, L_k, D_k)`, source `0` and no ground. Layer `n` is a series
//! connection of the first `n` edges grounded at vertex `n`.

use std::fmt;
use std::str::FromStr;

use crate::dirichlet::{AdmittanceValue, UndefinedReason};
use crate::error::{Error, Result};
use crate::network::{EdgeParams, ROOT_TOLERANCE};
use crate::Complex;

use super::{FamilyConstants, InfiniteNetwork};

/// An index-dependent edge parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SequenceRule {
    Constant(f64),
    /// `base − amplitude · ratio^k`.
    Geometric { base: f64, amplitude: f64, ratio: f64 },
}

impl SequenceRule {
    pub fn geometric(base: f64, amplitude: f64, ratio: f64) -> Self {
        SequenceRule::Geometric { base, amplitude, ratio }
    }

    pub fn at(&self, k: usize) -> f64 {
        match *self {
            SequenceRule::Constant(c) => c,
            SequenceRule::Geometric { base, amplitude, ratio } => {
                base - amplitude * ratio.powi(k.min(i32::MAX as usize) as i32)
            }
        }
    }

    /// `Σ_{k<n}` of the rule.
    pub fn partial_sum(&self, n: usize) -> f64 {
        (0..n).map(|k| self.at(k)).sum()
    }

    /// Greatest lower bound over all `k ≥ 0`.
    pub fn infimum(&self) -> f64 {
        match *self {
            SequenceRule::Constant(c) => c,
            SequenceRule::Geometric { base, amplitude, .. } => base.min(base - amplitude),
        }
    }

    /// Least upper bound over all `k ≥ 0`.
    pub fn supremum(&self) -> f64 {
        match *self {
            SequenceRule::Constant(c) => c,
            SequenceRule::Geometric { base, amplitude, .. } => base.max(base - amplitude),
        }
    }

    pub fn limit(&self) -> f64 {
        match *self {
            SequenceRule::Constant(c) => c,
            SequenceRule::Geometric { base, .. } => base,
        }
    }

    /// `Σ_k (value_k − limit)`.
    pub fn deviation_sum(&self) -> f64 {
        match *self {
            SequenceRule::Constant(_) => 0.0,
            SequenceRule::Geometric { amplitude, ratio, .. } => -amplitude / (1.0 - ratio),
        }
    }

    /// `(base, amplitude, ratio)`; a constant has zero amplitude.
    fn parts(&self) -> (f64, f64, f64) {
        match *self {
            SequenceRule::Constant(c) => (c, 0.0, 0.0),
            SequenceRule::Geometric { base, amplitude, ratio } => (base, amplitude, ratio),
        }
    }

    fn reaches_limit(&self) -> bool {
        match *self {
            SequenceRule::Constant(_) => true,
            SequenceRule::Geometric { amplitude, ratio, .. } => amplitude == 0.0 || ratio == 0.0,
        }
    }

    /// Index from which every value equals the limit to working precision.
    fn settled_len(&self) -> usize {
        match *self {
            SequenceRule::Constant(_) => 0,
            SequenceRule::Geometric { amplitude: 0.0, .. } => 0,
            SequenceRule::Geometric { ratio: 0.0, .. } => 1,
            SequenceRule::Geometric { ratio, .. } => {
                let k = (1e-3 * f64::EPSILON).ln() / ratio.ln();
                (k.ceil() as usize).clamp(1, 1_000_000)
            }
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let finite = match *self {
            SequenceRule::Constant(c) => c.is_finite(),
            SequenceRule::Geometric { base, amplitude, ratio } => {
                if !(0.0..1.0).contains(&ratio) {
                    return Err(Error::InvalidRule(format!("{name}: ratio must lie in [0, 1), got {ratio}")));
                }
                base.is_finite() && amplitude.is_finite()
            }
        };
        if !finite {
            return Err(Error::InvalidRule(format!("{name}: values must be finite")));
        }
        if self.infimum() < 0.0 {
            return Err(Error::InvalidRule(format!("{name}: values must be nonnegative")));
        }
        Ok(())
    }
}

impl fmt::Display for SequenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceRule::Constant(c) => write!(f, "const:{c}"),
            SequenceRule::Geometric { base, amplitude, ratio } => write!(f, "geom:{base},{amplitude},{ratio}"),
        }
    }
}

/// Parses `const:c` or `geom:base,amplitude,ratio`.
impl FromStr for SequenceRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRule(format!("expected const:c or geom:base,amplitude,ratio, got {s:?}"));
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        match (kind.trim(), nums.as_slice()) {
            ("const", &[c]) => Ok(SequenceRule::Constant(c)),
            ("geom", &[b, a, r]) => Ok(SequenceRule::geometric(b, a, r)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    r: SequenceRule,
    l: SequenceRule,
    d: SequenceRule,
}

/// Lossless chain with inductance rule `l` and elastance rule `d`.
pub fn make_chain(l: SequenceRule, d: SequenceRule) -> Result<Chain> {
    make_chain_with_resistance(SequenceRule::Constant(0.0), l, d)
}

pub fn make_chain_with_resistance(r: SequenceRule, l: SequenceRule, d: SequenceRule) -> Result<Chain> {
    r.validate("R")?;
    l.validate("L")?;
    d.validate("D")?;
    // Each infimum is attained or approached, so a zero sum admits edges
    // whose parameters all vanish or come arbitrarily close.
    if r.infimum() + l.infimum() + d.infimum() <= 0.0 {
        return Err(Error::InvalidRule("edge parameters may not all vanish".into()));
    }
    Ok(Chain { r, l, d })
}

impl Chain {
    pub fn rules(&self) -> (SequenceRule, SequenceRule, SequenceRule) {
        (self.r, self.l, self.d)
    }

    pub fn edge(&self, k: usize) -> EdgeParams {
        EdgeParams::new(self.r.at(k), self.l.at(k), self.d.at(k)).expect("rules validated at construction")
    }

    fn is_lossless(&self) -> bool {
        self.r == SequenceRule::Constant(0.0)
    }

    /// Edges from this index on equal the limit edge to working precision.
    fn settled_len(&self) -> usize {
        [self.r, self.l, self.d].iter().map(SequenceRule::settled_len).max().unwrap_or(0)
    }

    /// The distinct edges: those before `settled_len` and the limit edge.
    fn distinct_edges(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let tail = (self.r.limit(), self.l.limit(), self.d.limit());
        (0..self.settled_len())
            .map(|k| (self.r.at(k), self.l.at(k), self.d.at(k)))
            .chain(std::iter::once(tail))
    }
}

impl InfiniteNetwork for Chain {
    fn source(&self) -> usize {
        0
    }

    fn neighbors(&self, vertex: usize) -> Vec<(usize, EdgeParams)> {
        let mut out = Vec::with_capacity(2);
        if vertex > 0 {
            out.push((vertex - 1, self.edge(vertex - 1)));
        }
        out.push((vertex + 1, self.edge(vertex)));
        out
    }

    fn is_ground(&self, _vertex: usize) -> bool {
        false
    }

    fn declared_constants(&self) -> Option<FamilyConstants> {
        let mut s_d = f64::NEG_INFINITY;
        let mut s_d_star = f64::INFINITY;
        let mut s_r = f64::NEG_INFINITY;
        for (r, l, d) in self.distinct_edges() {
            let q = if d == 0.0 {
                0.0
            } else if l == 0.0 {
                f64::INFINITY
            } else {
                d / l
            };
            s_d = s_d.max(q);
            s_d_star = s_d_star.min(q);
            s_r = s_r.max(r);
        }
        Some(FamilyConstants {
            s_d,
            s_d_star,
            s_r,
            approximate: false,
        })
    }

    fn partial_oracle(&self, n: usize, lambda: Complex) -> Option<AdmittanceValue> {
        Some(series_admittance(self.r.partial_sum(n), self.l.partial_sum(n), self.d.partial_sum(n), lambda))
    }

    fn limit_oracle(&self, lambda: Complex) -> Option<AdmittanceValue> {
        if !self.is_lossless() {
            return None;
        }
        if lambda == Complex::new(0.0, 0.0) {
            return Some(AdmittanceValue::Undefined(UndefinedReason::LambdaZero));
        }
        // L_k λ² + D_k splits into a base part and a geometric deviation;
        // comparing them keeps edges whose D_k/L_k merely rounds to -λ² in Λ.
        let lam2 = lambda * lambda;
        let (l, d) = (self.l.parts(), self.d.parts());
        let base = lam2 * l.0 + d.0;
        let deviation = |k: usize| {
            let k = k.min(i32::MAX as usize) as i32;
            lam2 * (l.1 * l.2.powi(k)) + d.1 * d.2.powi(k)
        };
        let exact_tail = [self.r, self.l, self.d].iter().all(SequenceRule::reaches_limit);
        let shorted = (0..self.settled_len()).any(|k| base == deviation(k))
            || (exact_tail && base == Complex::new(0.0, 0.0));
        if shorted {
            return Some(AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden));
        }
        // λ·(l_n λ + d_n/λ) = Σ_{k<n} (L_k λ² + D_k). The terms tend to
        // L∞ λ² + D∞; when that is nonzero the sum diverges and P_n → 0.
        let (l_inf, d_inf) = (self.l.limit(), self.d.limit());
        let step = lambda * lambda * l_inf + d_inf;
        if step.norm() > ROOT_TOLERANCE * (l_inf * lambda.norm_sqr() + d_inf) {
            return Some(AdmittanceValue::Finite(Complex::new(0.0, 0.0)));
        }
        // Balanced: only the summable deviations from the limit remain.
        Some(series_admittance(0.0, self.l.deviation_sum(), self.d.deviation_sum(), lambda))
    }
}

/// `1/(r + lλ + d/λ)`, infinite when the series impedance vanishes.
fn series_admittance(r: f64, l: f64, d: f64, lambda: Complex) -> AdmittanceValue {
    if lambda == Complex::new(0.0, 0.0) {
        return AdmittanceValue::Undefined(UndefinedReason::LambdaZero);
    }
    let z = lambda * l + lambda.inv() * d + r;
    let scale = r.abs() + l.abs() * lambda.norm() + d.abs() / lambda.norm();
    if z.norm() <= ROOT_TOLERANCE * scale {
        AdmittanceValue::Infinite
    } else {
        AdmittanceValue::Finite(z.inv())
    }
}

/// `P_n(λ) = 1/(l_n λ + d_n/λ)` with `l_n = Σ_{k<n} L_k`, `d_n = Σ_{k<n} D_k`.
pub fn chain_partial_oracle(l: &SequenceRule, d: &SequenceRule, n: usize, lambda: Complex) -> AdmittanceValue {
    series_admittance(0.0, l.partial_sum(n), d.partial_sum(n), lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eps_chain() -> Chain {
        make_chain(SequenceRule::Constant(1.0), SequenceRule::geometric(1.0, 0.5, 0.5)).unwrap()
    }

    #[test]
    fn rules_evaluate_and_parse() {
        let g = SequenceRule::geometric(1.0, 0.5, 0.5);
        assert_eq!(g.at(0), 0.5);
        assert_eq!(g.at(1), 0.75);
        assert_eq!(g.limit(), 1.0);
        assert_eq!(g.deviation_sum(), -1.0);
        assert_eq!("geom:1,0.5,0.5".parse::<SequenceRule>().unwrap(), g);
        assert_eq!(" const: 2.5 ".parse::<SequenceRule>().unwrap(), SequenceRule::Constant(2.5));
        assert_eq!(g.to_string().parse::<SequenceRule>().unwrap(), g);
        for bad in ["", "const", "const:", "const:1,2", "geom:1,2", "lin:1", "const:x"] {
            assert!(matches!(bad.parse::<SequenceRule>(), Err(Error::InvalidRule(_))), "{bad}");
        }
    }

    #[test]
    fn invalid_rules() {
        let zero = SequenceRule::Constant(0.0);
        assert!(matches!(make_chain(zero, zero), Err(Error::InvalidRule(_))));
        assert!(matches!(make_chain(SequenceRule::Constant(-1.0), zero), Err(Error::InvalidRule(_))));
        assert!(matches!(
            make_chain(SequenceRule::Constant(1.0), SequenceRule::geometric(1.0, 2.0, 0.5)),
            Err(Error::InvalidRule(_))
        ));
        assert!(matches!(
            make_chain(SequenceRule::Constant(1.0), SequenceRule::geometric(1.0, 0.5, 1.0)),
            Err(Error::InvalidRule(_))
        ));
        assert!(matches!(make_chain(SequenceRule::Constant(f64::NAN), zero), Err(Error::InvalidRule(_))));
        // L_0 = 0 and D_0 = 0 on the first edge.
        assert!(matches!(
            make_chain(SequenceRule::geometric(1.0, 1.0, 0.5), SequenceRule::Constant(0.0)),
            Err(Error::InvalidRule(_))
        ));
    }

    #[test]
    fn constants_of_eps_chain() {
        let k = eps_chain().declared_constants().unwrap();
        assert_eq!(k.s_d_star, 0.5);
        assert_eq!(k.s_d, 1.0);
        assert_eq!(k.s_r, 0.0);
        assert!(!k.approximate);
    }

    #[test]
    fn partial_oracle_examples() {
        let (l, d) = (SequenceRule::Constant(1.0), SequenceRule::Constant(1.0));
        let p = chain_partial_oracle(&l, &d, 4, Complex::new(1.0, 0.0));
        assert_eq!(p, AdmittanceValue::Finite(Complex::new(0.125, 0.0)));
        assert_eq!(chain_partial_oracle(&l, &d, 4, Complex::new(0.0, 1.0)), AdmittanceValue::Infinite);
        assert_eq!(
            chain_partial_oracle(&l, &d, 4, Complex::new(0.0, 0.0)),
            AdmittanceValue::Undefined(UndefinedReason::LambdaZero)
        );
    }

    #[test]
    fn limit_oracle_examples() {
        let chain = eps_chain();
        let at_i = chain.limit_oracle(Complex::new(0.0, 1.0)).unwrap().finite().unwrap();
        assert!((at_i - Complex::new(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(chain.limit_oracle(Complex::new(1.0, 0.0)), Some(AdmittanceValue::Finite(Complex::new(0.0, 0.0))));
        let constant = make_chain(SequenceRule::Constant(1.0), SequenceRule::Constant(1.0)).unwrap();
        assert_eq!(
            constant.limit_oracle(Complex::new(0.0, 1.0)),
            Some(AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden))
        );
    }
}

//! Network constants, upper bounds on `|P(λ)|`, and domain membership.
//!
//! Unbounded constants are stored as `f64::INFINITY`. Bounds whose
//! hypotheses need them finite (`L > 0` everywhere) refuse with an error
//! instead of returning an infinite bound.

use crate::error::{Error, Result};
use crate::network::{edge_admittance, lambda_in_lambda, EdgeParams, Network};
use crate::Complex;

/// Constants entering the admittance bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConstants {
    /// `sup D/L` over edges.
    pub s_d: f64,
    /// `inf D/L` over edges.
    pub s_d_star: f64,
    /// `sup R/L` over edges.
    pub s_r: f64,
    /// `Σ_{x∼a} 1/(R_xa + L_xa + D_xa)`.
    pub c: f64,
    /// `Σ_{x∼a} 1/L_xa`.
    pub c_prime: f64,
    /// `sup 1/(C L)`; coincides with `s_d`.
    pub s: f64,
    pub all_l_positive: bool,
    pub all_r_zero: bool,
}

/// `num/den` for nonnegative inputs with `0/0 = 0` and `x/0 = ∞`.
fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

impl NetworkConstants {
    /// Constants over the given edges; `source_edges` are those at `a`.
    pub fn from_edges<'a>(
        edges: impl IntoIterator<Item = &'a EdgeParams>,
        source_edges: impl IntoIterator<Item = &'a EdgeParams>,
    ) -> Self {
        let mut s_d: f64 = 0.0;
        let mut s_d_star = f64::INFINITY;
        let mut s_r: f64 = 0.0;
        let mut all_l_positive = true;
        let mut all_r_zero = true;
        for p in edges {
            let dl = ratio(p.d(), p.l());
            s_d = s_d.max(dl);
            s_d_star = s_d_star.min(dl);
            s_r = s_r.max(ratio(p.r(), p.l()));
            all_l_positive &= p.l() > 0.0;
            all_r_zero &= p.r() == 0.0;
        }
        let (mut c, mut c_prime) = (0.0, 0.0);
        for p in source_edges {
            c += 1.0 / (p.r() + p.l() + p.d());
            c_prime += if p.l() > 0.0 { 1.0 / p.l() } else { f64::INFINITY };
        }
        NetworkConstants {
            s_d,
            s_d_star,
            s_r,
            c,
            c_prime,
            s: s_d,
            all_l_positive,
            all_r_zero,
        }
    }
}

pub fn network_constants(network: &Network) -> NetworkConstants {
    NetworkConstants::from_edges(
        network.edges().iter().map(|e| &e.params),
        network.source_edges().map(|(_, p)| p),
    )
}

fn source_admittance_sum(network: &Network, lambda: Complex) -> Result<f64> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::LambdaZero);
    }
    if !lambda_in_lambda(network, lambda) {
        return Err(Error::ForbiddenLambda(lambda));
    }
    network
        .source_edges()
        .map(|(_, p)| edge_admittance(p, lambda).map(|r| r.norm()))
        .sum()
}

/// `(1/ε²) Σ_{x∼a} |ρ_xa|`, valid whenever one of `Re ρ/|ρ|`, `Im ρ/|ρ|`,
/// `−Im ρ/|ρ|` is at least `ε` on every edge.
pub fn epsilon_bound(network: &Network, lambda: Complex, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::NonpositiveEpsilon(epsilon));
    }
    Ok(source_admittance_sum(network, lambda)? / (epsilon * epsilon))
}

/// The largest `ε` for which the ratio hypothesis of [`epsilon_bound`]
/// holds at `λ`: the best of `inf Re ρ/|ρ|`, `inf Im ρ/|ρ|` and
/// `inf −Im ρ/|ρ|` over all edges, or `None` if none is positive.
pub fn certified_epsilon(network: &Network, lambda: Complex) -> Result<Option<f64>> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::LambdaZero);
    }
    let rho = network.edge_admittances(lambda)?;
    let inf = |f: fn(Complex) -> f64| rho.iter().map(|&r| f(r) / r.norm()).fold(f64::INFINITY, f64::min);
    let best = inf(|r| r.re).max(inf(|r| r.im)).max(inf(|r| -r.im));
    Ok((best > 0.0).then_some(best))
}

/// `Re λ / |λ|`, a lower bound for both `Re z/|z|` and `Re ρ/|ρ|`.
pub fn ratio_lower_bound(params: &EdgeParams, lambda: Complex) -> Result<f64> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::LambdaZero);
    }
    if params.shorts_at(lambda) {
        return Err(Error::ForbiddenLambda(lambda));
    }
    Ok(lambda.re / lambda.norm())
}

/// The right half-plane bounds, each valid on its own.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfplaneBounds {
    /// `|λ|²/(Re λ)² Σ|ρ_xa|`.
    pub via_admittances: f64,
    /// `C |λ|²(1+|λ|²)/(Re λ)³`.
    pub via_c: f64,
    /// `C′ |λ|²/(Re λ)³`, when every source edge has `L > 0`.
    pub via_c_prime: Option<f64>,
}

impl HalfplaneBounds {
    pub fn best(&self) -> f64 {
        let b = self.via_admittances.min(self.via_c);
        self.via_c_prime.map_or(b, |c| b.min(c))
    }
}

pub fn halfplane_bounds(network: &Network, lambda: Complex) -> Result<HalfplaneBounds> {
    if !(lambda.re > 0.0) {
        return Err(Error::NotInRightHalfplane);
    }
    let k = network_constants(network);
    let m2 = lambda.norm_sqr();
    let re = lambda.re;
    let sum = source_admittance_sum(network, lambda)?;
    Ok(HalfplaneBounds {
        via_admittances: m2 / (re * re) * sum,
        via_c: k.c * m2 * (1.0 + m2) / (re * re * re),
        via_c_prime: k.c_prime.is_finite().then(|| k.c_prime * m2 / (re * re * re)),
    })
}

/// Tightest right half-plane bound on `|P(λ)|`.
pub fn halfplane_bound(network: &Network, lambda: Complex) -> Result<f64> {
    halfplane_bounds(network, lambda).map(|b| b.best())
}

/// Bound on `Ω = {Im λ ≠ 0, |λ|² > S_D}` for networks with `L > 0`:
/// `C′(2|λ|+S_R)²|λ|⁶ / ((|λ|²−S_D)³ |Im λ|³)`.
pub fn large_im_bound(network: &Network, lambda: Complex) -> Result<f64> {
    let k = network_constants(network);
    if !k.all_l_positive {
        return Err(Error::RequiresPositiveL);
    }
    let m2 = lambda.norm_sqr();
    if lambda.im == 0.0 || !(m2 > k.s_d) {
        return Err(Error::OutsideOmega);
    }
    let m = lambda.norm();
    let im = lambda.im.abs();
    Ok(k.c_prime * (2.0 * m + k.s_r).powi(2) * m2.powi(3) / ((m2 - k.s_d).powi(3) * im.powi(3)))
}

/// Bound on `Ω* = {Im λ ≠ 0, |λ|² < S_D*}` for networks with `L > 0`:
/// `C′(|λ|²+S_R|λ|+S_D)²|λ|⁴ / ((S_D*−|λ|²)³ |Im λ|³)`.
pub fn small_im_bound(network: &Network, lambda: Complex) -> Result<f64> {
    let k = network_constants(network);
    if !k.all_l_positive {
        return Err(Error::RequiresPositiveL);
    }
    if k.s_d_star == 0.0 {
        return Err(Error::EmptyOmegaStar);
    }
    let m2 = lambda.norm_sqr();
    if lambda.im == 0.0 || !(m2 < k.s_d_star) {
        return Err(Error::OutsideOmegaStar);
    }
    let m = lambda.norm();
    let im = lambda.im.abs();
    Ok(k.c_prime * (m2 + k.s_r * m + k.s_d).powi(2) * m2.powi(2)
        / ((k.s_d_star - m2).powi(3) * im.powi(3)))
}

/// Membership of `λ` in the domains where bounds and holomorphy are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainTags {
    pub in_right_halfplane: bool,
    pub in_lambda: bool,
    pub in_omega: bool,
    pub in_omega_star: bool,
    /// `λ ∈ [−i√S_D, i√S_D]`; only meaningful when all `R = 0`.
    pub in_j: bool,
    /// `λ ∈ [−i√S_D, −i√S_D*] ∪ [i√S_D*, i√S_D] ∪ {0}`; only meaningful when
    /// all `R = 0`.
    pub in_j_star: bool,
}

pub fn classify_domain(network: &Network, lambda: Complex) -> DomainTags {
    classify_with(&network_constants(network), lambda_in_lambda(network, lambda), lambda)
}

/// Domain tags from precomputed constants.
pub fn classify_with(k: &NetworkConstants, in_lambda: bool, lambda: Complex) -> DomainTags {
    let m2 = lambda.norm_sqr();
    let off_axis = lambda.im != 0.0;
    let on_axis = lambda.re == 0.0;
    let im2 = lambda.im * lambda.im;
    let in_j = k.all_r_zero && on_axis && im2 <= k.s_d;
    let in_j_star = k.all_r_zero && on_axis && ((im2 >= k.s_d_star && im2 <= k.s_d) || lambda.im == 0.0);
    DomainTags {
        in_right_halfplane: lambda.re > 0.0,
        in_lambda,
        in_omega: k.all_l_positive && k.s_d.is_finite() && off_axis && m2 > k.s_d,
        in_omega_star: k.all_l_positive && off_axis && m2 < k.s_d_star,
        in_j,
        in_j_star,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::effective_admittance;
    use crate::exhaustion::{ball, make_chain, make_ladder, SequenceRule};
    use crate::network::{five_vertex_example, NetworkBuilder};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn ladder10() -> Network {
        ball(&make_ladder(1.0, 1.0).unwrap(), 10).unwrap().network
    }

    fn chain10() -> Network {
        let chain = make_chain(SequenceRule::Constant(1.0), SequenceRule::geometric(1.0, 0.5, 0.5)).unwrap();
        ball(&chain, 10).unwrap().network
    }

    fn unit_resistor() -> Network {
        NetworkBuilder::new()
            .vertices(["a", "b"])
            .edge("a", "b", EdgeParams::resistor(1.0).unwrap())
            .source("a")
            .ground(["b"])
            .build()
            .unwrap()
    }

    #[test]
    fn constants_examples() {
        let k = network_constants(&ladder10());
        assert_eq!((k.s_d, k.s_d_star, k.s_r), (1.0, 0.0, 0.0));
        assert!(k.all_r_zero && k.all_l_positive);
        assert_eq!(k.c_prime, 1.0);

        let k = network_constants(&chain10());
        assert_eq!(k.s_d_star, 0.5);
        assert!(k.s_d < 1.0 && k.s_d > 0.999);

        let k = network_constants(&unit_resistor());
        assert_eq!(k.c, 1.0);
        assert_eq!(k.c_prime, f64::INFINITY);
        assert!(!k.all_l_positive);
        assert!(k.s_d_star <= k.s_d);
    }

    #[test]
    fn epsilon_bound_examples() {
        let net = five_vertex_example();
        assert!((epsilon_bound(&net, c(1.0, 0.0), 1.0).unwrap() - 3.0).abs() < 1e-14);
        let lambda = c(1.0, 1.0);
        // Independent evaluation of Σ|ρ_xa| at 1+i: inductors give 1/|λ|, capacitors |λ|.
        let sum = 1.0 / lambda.norm() + lambda.norm() + 1.0 / lambda.norm();
        let eps = std::f64::consts::FRAC_1_SQRT_2;
        assert!((epsilon_bound(&net, lambda, eps).unwrap() - 2.0 * sum).abs() < 1e-12);
        assert_eq!(epsilon_bound(&net, lambda, 0.0), Err(Error::NonpositiveEpsilon(0.0)));
    }

    #[test]
    fn ratio_bound_examples() {
        let p = EdgeParams::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(ratio_lower_bound(&p, c(3.0, 0.0)).unwrap(), 1.0);
        assert!((ratio_lower_bound(&p, c(1.0, 1.0)).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(ratio_lower_bound(&p, c(0.0, 2.0)).unwrap(), 0.0);
        assert_eq!(ratio_lower_bound(&p, c(0.0, 0.0)), Err(Error::LambdaZero));
    }

    #[test]
    fn halfplane_examples() {
        let net = five_vertex_example();
        let b = halfplane_bounds(&net, c(1.0, 0.0)).unwrap();
        assert!((b.via_admittances - 3.0).abs() < 1e-14);
        assert!((b.via_c - 6.0).abs() < 1e-14);
        assert_eq!(b.via_c_prime, None);
        assert!((b.best() - 3.0).abs() < 1e-14);
        assert_eq!(halfplane_bound(&net, c(-1.0, 0.0)), Err(Error::NotInRightHalfplane));

        let b = halfplane_bounds(&ladder10(), c(2.0, 0.0)).unwrap();
        assert_eq!(b.via_c_prime, Some(0.5));
        assert!((b.via_admittances - 0.5).abs() < 1e-15);
        assert!((b.via_c - 2.5).abs() < 1e-15);
        assert!((b.best() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn large_im_examples() {
        let net = ladder10();
        let b = large_im_bound(&net, c(0.0, 2.0)).unwrap();
        assert!((b - 1024.0 / 216.0).abs() < 1e-12);
        assert_eq!(large_im_bound(&net, c(0.0, 0.5)), Err(Error::OutsideOmega));
        assert_eq!(large_im_bound(&five_vertex_example(), c(0.0, 2.0)), Err(Error::RequiresPositiveL));

        let chain = chain10();
        let b = large_im_bound(&chain, c(0.0, 2.0)).unwrap();
        let p = effective_admittance(&chain, c(0.0, 2.0)).finite().unwrap();
        assert!(p.norm() <= b);
    }

    #[test]
    fn small_im_examples() {
        let chain = chain10();
        let b = small_im_bound(&chain, c(0.0, 0.5)).unwrap();
        assert!(b.is_finite() && b > 0.0);
        let p = effective_admittance(&chain, c(0.0, 0.5)).finite().unwrap();
        assert!(p.norm() <= b);
        assert_eq!(small_im_bound(&ladder10(), c(0.1, 0.1)), Err(Error::EmptyOmegaStar));
        assert_eq!(small_im_bound(&chain, c(0.0, 1.0)), Err(Error::OutsideOmegaStar));
    }

    #[test]
    fn domain_examples() {
        let net = ladder10();
        let t = classify_domain(&net, c(0.0, 2.0));
        assert!(t.in_omega && !t.in_j && !t.in_j_star);
        let t = classify_domain(&net, c(0.0, 0.5));
        assert!(t.in_j_star && t.in_j && !t.in_omega && !t.in_omega_star);
        let t = classify_domain(&net, c(1.0, 0.0));
        assert!(t.in_right_halfplane && !t.in_j && t.in_lambda);
        // The circle |λ|² = S_D is excluded from Ω.
        assert!(!classify_domain(&net, c(0.6, 0.8)).in_omega);

        let chain = chain10();
        assert!(classify_domain(&chain, c(0.0, 0.5)).in_omega_star);
        assert!(classify_domain(&chain, c(0.0, 0.9)).in_j_star);
        assert!(!classify_domain(&chain, c(0.0, 0.6)).in_j_star);
        assert!(classify_domain(&chain, c(0.0, 0.0)).in_j_star);

        // Resistive network: J and J* do not apply.
        let t = classify_domain(&five_vertex_example(), c(0.0, 0.5));
        assert!(!t.in_j && !t.in_j_star && !t.in_omega);
    }
}

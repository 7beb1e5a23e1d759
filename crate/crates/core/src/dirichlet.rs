//! The discrete Dirichlet problem and effective admittance of a finite
//! network.
//!
//! For `λ ∈ Λ` the voltage `v` satisfies `Δ_ρ v = 0` on interior vertices,
//! `v(a) = 1` and `v|_B = 0`. Writing the interior equations as `AX = P`
//! (`A_ii = Σ ρ`, `A_ij = −ρ_ij`, `P_i = ρ_{x_i a}`) gives a complex
//! symmetric system that is solved by [`crate::linalg::Elimination`].
//! The effective admittance is `P(λ) = Σ_{x∼a} (1 − v(x)) ρ_xa`; it is
//! infinite exactly when the system has no solution.

use crate::error::{Error, Result};
use crate::linalg::{Elimination, Rank};
use crate::network::{lambda_in_lambda, Network};
use crate::Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Interior equations `A X = P` of the Dirichlet problem at one `λ`.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    dim: usize,
    /// Row-major `dim × dim`.
    matrix: Vec<Complex>,
    rhs: Vec<Complex>,
    /// Vertex index of each unknown.
    unknowns: Vec<usize>,
}

impl LinearSystem {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.matrix[row * self.dim + col]
    }

    pub fn matrix(&self) -> &[Complex] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Complex] {
        &self.rhs
    }

    pub fn unknowns(&self) -> &[usize] {
        &self.unknowns
    }
}

fn check_lambda(network: &Network, lambda: Complex) -> Result<()> {
    if lambda == ZERO {
        return Err(Error::LambdaZero);
    }
    if !lambda_in_lambda(network, lambda) {
        return Err(Error::ForbiddenLambda(lambda));
    }
    Ok(())
}

/// Builds `A X = P` over `V ∖ (B ∪ {a})`.
pub fn assemble_system(network: &Network, lambda: Complex) -> Result<LinearSystem> {
    check_lambda(network, lambda)?;
    if network.ground().is_empty() {
        return Err(Error::EmptyGround);
    }
    let rho = network.edge_admittances(lambda)?;
    let unknowns = network.interior();
    let mut slot = vec![usize::MAX; network.vertex_count()];
    for (i, &x) in unknowns.iter().enumerate() {
        slot[x] = i;
    }
    let dim = unknowns.len();
    let mut matrix = vec![ZERO; dim * dim];
    let mut rhs = vec![ZERO; dim];
    for (i, &x) in unknowns.iter().enumerate() {
        for &(y, e) in network.neighbors(x) {
            matrix[i * dim + i] += rho[e];
            if y == network.source() {
                rhs[i] += rho[e];
            } else if slot[y] != usize::MAX {
                matrix[i * dim + slot[y]] -= rho[e];
            }
        }
    }
    Ok(LinearSystem {
        dim,
        matrix,
        rhs,
        unknowns,
    })
}

/// Vertex potentials indexed like the network's vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Voltage(Vec<Complex>);

impl Voltage {
    fn from_interior(network: &Network, unknowns: &[usize], values: &[Complex]) -> Self {
        let mut v = vec![ZERO; network.vertex_count()];
        v[network.source()] = ONE;
        for (&x, &value) in unknowns.iter().zip(values) {
            v[x] = value;
        }
        Voltage(v)
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.0
    }

    pub fn at(&self, network: &Network, label: &str) -> Result<Complex> {
        Ok(self.0[network.vertex(label)?])
    }

    pub fn into_inner(self) -> Vec<Complex> {
        self.0
    }
}

/// Classification of the Dirichlet system at one `λ`.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Unique(Voltage),
    /// Solvable with a nontrivial kernel. `voltage` sets the free unknowns
    /// to 0 and is not canonical; `alternate` sets them to 1.
    ConsistentDeficient {
        voltage: Voltage,
        alternate: Voltage,
        rank: usize,
    },
    Inconsistent {
        rank: usize,
    },
}

impl SolveOutcome {
    pub fn voltage(&self) -> Option<&Voltage> {
        match self {
            SolveOutcome::Unique(v) | SolveOutcome::ConsistentDeficient { voltage: v, .. } => Some(v),
            SolveOutcome::Inconsistent { .. } => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SolveOutcome::Unique(_) => "unique",
            SolveOutcome::ConsistentDeficient { .. } => "deficient",
            SolveOutcome::Inconsistent { .. } => "inconsistent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveDiagnostics {
    pub dimension: usize,
    pub rank: usize,
    /// `log10 |det A|`, `-∞` when singular.
    pub log10_abs_det: f64,
    /// Smallest over largest pivot magnitude.
    pub pivot_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSolution {
    pub outcome: SolveOutcome,
    pub diagnostics: SolveDiagnostics,
}

/// Solves the Dirichlet problem at `λ ∈ Λ`.
pub fn solve_dirichlet(network: &Network, lambda: Complex) -> Result<DirichletSolution> {
    let system = assemble_system(network, lambda)?;
    let elim = Elimination::new(system.dim, &system.matrix, &system.rhs);
    let diagnostics = SolveDiagnostics {
        dimension: system.dim,
        rank: elim.rank(),
        log10_abs_det: elim.log10_abs_det(),
        pivot_ratio: elim.pivot_ratio(),
    };
    let to_voltage = |free: Complex| {
        let x = elim.solve(free).expect("consistent system has a solution");
        Voltage::from_interior(network, &system.unknowns, &x)
    };
    let outcome = match elim.classification() {
        Rank::Full => SolveOutcome::Unique(to_voltage(ZERO)),
        Rank::Deficient(rank) => SolveOutcome::ConsistentDeficient {
            voltage: to_voltage(ZERO),
            alternate: to_voltage(ONE),
            rank,
        },
        Rank::Inconsistent(rank) => SolveOutcome::Inconsistent { rank },
    };
    Ok(DirichletSolution {
        outcome,
        diagnostics,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UndefinedReason {
    LambdaForbidden,
    LambdaZero,
    /// The partial admittances of an exhaustion have no limit at `λ`.
    NoLimit,
}

/// Effective admittance or impedance: finite, the point at infinity, or
/// undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AdmittanceValue {
    Finite(Complex),
    Infinite,
    Undefined(UndefinedReason),
}

impl AdmittanceValue {
    pub fn finite(&self) -> Option<Complex> {
        match *self {
            AdmittanceValue::Finite(z) => Some(z),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, AdmittanceValue::Finite(_))
    }

    /// `1/P` with `1/∞ = 0` and `1/0 = ∞`.
    pub fn reciprocal(&self) -> AdmittanceValue {
        match *self {
            AdmittanceValue::Finite(z) if z == ZERO => AdmittanceValue::Infinite,
            AdmittanceValue::Finite(z) => AdmittanceValue::Finite(z.inv()),
            AdmittanceValue::Infinite => AdmittanceValue::Finite(ZERO),
            undefined => undefined,
        }
    }

    pub fn conj(&self) -> AdmittanceValue {
        match *self {
            AdmittanceValue::Finite(z) => AdmittanceValue::Finite(z.conj()),
            other => other,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            AdmittanceValue::Finite(_) => "finite",
            AdmittanceValue::Infinite => "infinite",
            AdmittanceValue::Undefined(_) => "undefined",
        }
    }
}

fn undefined_for(network: &Network, lambda: Complex) -> Option<AdmittanceValue> {
    if lambda == ZERO {
        Some(AdmittanceValue::Undefined(UndefinedReason::LambdaZero))
    } else if !lambda_in_lambda(network, lambda) {
        Some(AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden))
    } else {
        None
    }
}

/// `Σ_{x∼a} (1 − v(x)) ρ_xa` for a given voltage.
pub fn source_current(network: &Network, v: &[Complex], lambda: Complex) -> Result<Complex> {
    check_len(network, v)?;
    let rho = network.edge_admittances(lambda)?;
    let a = network.source();
    Ok(network
        .neighbors(a)
        .iter()
        .map(|&(x, e)| (ONE - v[x]) * rho[e])
        .sum())
}

/// Full evaluation at one `λ` with cross-check residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub lambda: Complex,
    pub admittance: AdmittanceValue,
    pub impedance: AdmittanceValue,
    /// `None` when `λ ∉ Λ`.
    pub solution: Option<DirichletSolution>,
    /// `|Σ_B Δv − P| / (1 + |P|)`.
    pub flux_residual: Option<f64>,
    /// `|Σ_E |∇v|² ρ − P| / (1 + |P|)`.
    pub power_residual: Option<f64>,
    /// Relative gap between the admittances of two distinct solutions in the
    /// deficient case.
    pub independence_gap: Option<f64>,
}

/// Evaluates `P(λ)`, `Z(λ)`, the solve classification and the identities
/// that should agree with `P`.
pub fn evaluate(network: &Network, lambda: Complex) -> Evaluation {
    if let Some(undef) = undefined_for(network, lambda) {
        return Evaluation {
            lambda,
            admittance: undef,
            impedance: undef,
            solution: None,
            flux_residual: None,
            power_residual: None,
            independence_gap: None,
        };
    }
    let solution = match solve_dirichlet(network, lambda) {
        Ok(s) => s,
        // λ ∈ Λ was checked above; the only remaining failure is B = ∅.
        Err(_) => {
            let undef = AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden);
            return Evaluation {
                lambda,
                admittance: undef,
                impedance: undef,
                solution: None,
                flux_residual: None,
                power_residual: None,
                independence_gap: None,
            };
        }
    };
    let current = |v: &Voltage| source_current(network, v.as_slice(), lambda).expect("λ ∈ Λ");
    let (admittance, flux, power, gap) = match &solution.outcome {
        SolveOutcome::Inconsistent { .. } => (AdmittanceValue::Infinite, None, None, None),
        outcome => {
            let v = outcome.voltage().expect("solvable");
            let p = current(v);
            let scale = 1.0 + p.norm();
            let flux = boundary_flux(network, v.as_slice(), lambda).expect("λ ∈ Λ");
            let power = admittance_via_power(network, v.as_slice(), lambda).expect("λ ∈ Λ");
            let gap = match outcome {
                SolveOutcome::ConsistentDeficient { alternate, .. } => {
                    Some((current(alternate) - p).norm() / scale)
                }
                _ => None,
            };
            (
                AdmittanceValue::Finite(p),
                Some((flux - p).norm() / scale),
                Some((power - p).norm() / scale),
                gap,
            )
        }
    };
    Evaluation {
        lambda,
        admittance,
        impedance: admittance.reciprocal(),
        solution: Some(solution),
        flux_residual: flux,
        power_residual: power,
        independence_gap: gap,
    }
}

/// Effective admittance `P(λ)`; total over all `λ`.
pub fn effective_admittance(network: &Network, lambda: Complex) -> AdmittanceValue {
    if let Some(undef) = undefined_for(network, lambda) {
        return undef;
    }
    match solve_dirichlet(network, lambda) {
        Ok(solution) => match solution.outcome.voltage() {
            Some(v) => AdmittanceValue::Finite(
                source_current(network, v.as_slice(), lambda).expect("λ ∈ Λ"),
            ),
            None => AdmittanceValue::Infinite,
        },
        Err(_) => AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden),
    }
}

/// Effective impedance `Z(λ) = 1/P(λ)`, with `Z = 0` where `P = ∞`.
pub fn effective_impedance(network: &Network, lambda: Complex) -> AdmittanceValue {
    effective_admittance(network, lambda).reciprocal()
}

fn check_len(network: &Network, f: &[Complex]) -> Result<()> {
    if f.len() != network.vertex_count() {
        return Err(Error::IncompleteFunction);
    }
    Ok(())
}

fn laplacian_at(network: &Network, f: &[Complex], rho: &[Complex], x: usize) -> Complex {
    network
        .neighbors(x)
        .iter()
        .map(|&(y, e)| (f[y] - f[x]) * rho[e])
        .sum()
}

/// Physical Laplacian `Δ_ρ f(x) = Σ_{y∼x} (f(y) − f(x)) ρ_xy`.
pub fn laplacian_apply(network: &Network, f: &[Complex], lambda: Complex, x: &str) -> Result<Complex> {
    check_lambda(network, lambda)?;
    check_len(network, f)?;
    let x = network.vertex(x)?;
    let rho = network.edge_admittances(lambda)?;
    Ok(laplacian_at(network, f, &rho, x))
}

/// `Σ_{xy∈E} |v(y) − v(x)|² ρ_xy`, the complex power form of `P`.
pub fn admittance_via_power(network: &Network, v: &[Complex], lambda: Complex) -> Result<Complex> {
    check_lambda(network, lambda)?;
    check_len(network, v)?;
    let rho = network.edge_admittances(lambda)?;
    Ok(network
        .edges()
        .iter()
        .zip(&rho)
        .map(|(e, &r)| r * (v[e.v] - v[e.u]).norm_sqr())
        .sum())
}

/// `Σ_{b∈B} Δ_ρ v(b)`, which equals `P` for any solution `v`.
pub fn boundary_flux(network: &Network, v: &[Complex], lambda: Complex) -> Result<Complex> {
    check_lambda(network, lambda)?;
    check_len(network, v)?;
    let rho = network.edge_admittances(lambda)?;
    Ok(network
        .ground()
        .iter()
        .map(|&b| laplacian_at(network, v, &rho, b))
        .sum())
}

/// `|Σ_E (∇f)(∇g) ρ + Σ_V Δ_ρ f · g|`, which vanishes by Green's formula.
pub fn greens_residual(network: &Network, f: &[Complex], g: &[Complex], lambda: Complex) -> Result<f64> {
    check_lambda(network, lambda)?;
    check_len(network, f)?;
    check_len(network, g)?;
    let rho = network.edge_admittances(lambda)?;
    let edge_side: Complex = network
        .edges()
        .iter()
        .zip(&rho)
        .map(|(e, &r)| (f[e.v] - f[e.u]) * (g[e.v] - g[e.u]) * r)
        .sum();
    let vertex_side: Complex = (0..network.vertex_count())
        .map(|x| laplacian_at(network, f, &rho, x) * g[x])
        .sum();
    Ok((edge_side + vertex_side).norm())
}

/// [`greens_residual`] divided by `Σ_E |∇f||∇g||ρ| + Σ_V |Δ_ρ f||g|`, the
/// size of the terms that cancel; suited to fixed relative tolerances near
/// resonances where `|ρ|` is large.
pub fn greens_residual_relative(network: &Network, f: &[Complex], g: &[Complex], lambda: Complex) -> Result<f64> {
    let residual = greens_residual(network, f, g, lambda)?;
    let rho = network.edge_admittances(lambda)?;
    let edge_scale: f64 = network
        .edges()
        .iter()
        .zip(&rho)
        .map(|(e, &r)| (f[e.v] - f[e.u]).norm() * (g[e.v] - g[e.u]).norm() * r.norm())
        .sum();
    let vertex_scale: f64 = (0..network.vertex_count())
        .map(|x| laplacian_at(network, f, &rho, x).norm() * g[x].norm())
        .sum();
    let scale = edge_scale + vertex_scale;
    Ok(if scale > 0.0 { residual / scale } else { residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{five_vertex_example, EdgeParams, NetworkBuilder};

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn unit_path() -> Network {
        let r = EdgeParams::resistor(1.0).unwrap();
        NetworkBuilder::new()
            .vertices(["a", "x", "b"])
            .edge("a", "x", r)
            .edge("x", "b", r)
            .source("a")
            .ground(["b"])
            .build()
            .unwrap()
    }

    fn unit_pair() -> Network {
        NetworkBuilder::new()
            .vertices(["a", "b"])
            .edge("a", "b", EdgeParams::resistor(1.0).unwrap())
            .source("a")
            .ground(["b"])
            .build()
            .unwrap()
    }

    #[test]
    fn assembles_five_vertex_system_at_one() {
        let sys = assemble_system(&five_vertex_example(), c(1.0, 0.0)).unwrap();
        assert_eq!(sys.dimension(), 3);
        let expected = [[3.0, -1.0, 0.0], [-1.0, 3.0, 0.0], [0.0, 0.0, 2.0]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &val) in row.iter().enumerate() {
                assert!(close(sys.get(i, j), c(val, 0.0), 1e-15), "A[{i}][{j}]");
                assert_eq!(sys.get(i, j), sys.get(j, i));
            }
            assert!(close(sys.rhs()[i], c(1.0, 0.0), 1e-15));
        }
    }

    #[test]
    fn assembles_trivial_systems() {
        let sys = assemble_system(&unit_pair(), c(0.3, 2.0)).unwrap();
        assert_eq!(sys.dimension(), 0);
        let sys = assemble_system(&unit_path(), c(1.0, 0.0)).unwrap();
        assert_eq!(sys.matrix(), &[c(2.0, 0.0)]);
        assert_eq!(sys.rhs(), &[c(1.0, 0.0)]);
        assert_eq!(assemble_system(&unit_path(), c(0.0, 0.0)).unwrap_err(), Error::LambdaZero);
    }

    #[test]
    fn five_vertex_solutions() {
        let net = five_vertex_example();
        let s = solve_dirichlet(&net, c(1.0, 0.0)).unwrap();
        let SolveOutcome::Unique(v) = &s.outcome else { panic!("expected unique") };
        for label in ["2", "3", "4"] {
            assert!(close(v.at(&net, label).unwrap(), c(0.5, 0.0), 1e-14));
        }
        assert_eq!(v.at(&net, "1").unwrap(), c(1.0, 0.0));
        assert_eq!(v.at(&net, "0").unwrap(), c(0.0, 0.0));

        let s = solve_dirichlet(&net, c(0.0, 1.0)).unwrap();
        assert!(matches!(s.outcome, SolveOutcome::Inconsistent { .. }));

        let s = solve_dirichlet(&net, c(-1.0, 0.0)).unwrap();
        let SolveOutcome::ConsistentDeficient { rank, .. } = s.outcome else {
            panic!("expected deficient, got {:?}", s.outcome)
        };
        assert!(rank < 3);
    }

    #[test]
    fn five_vertex_admittance_values() {
        let net = five_vertex_example();
        let p = |re, im| effective_admittance(&net, c(re, im));
        assert!(close(p(1.0, 0.0).finite().unwrap(), c(1.5, 0.0), 1e-14));
        assert!(close(p(-1.0, 0.0).finite().unwrap(), c(-1.5, 0.0), 1e-12));
        assert!(close(p(2.0, 0.0).finite().unwrap(), c(1.4, 0.0), 1e-14));
        assert_eq!(p(0.0, 1.0), AdmittanceValue::Infinite);
        assert_eq!(p(0.0, -1.0), AdmittanceValue::Infinite);
        assert_eq!(p(0.0, 0.0), AdmittanceValue::Undefined(UndefinedReason::LambdaZero));
    }

    #[test]
    fn impedance_values() {
        let net = five_vertex_example();
        let z = |re, im| effective_impedance(&net, c(re, im));
        assert!(close(z(1.0, 0.0).finite().unwrap(), c(2.0 / 3.0, 0.0), 1e-14));
        assert_eq!(z(0.0, 1.0), AdmittanceValue::Finite(c(0.0, 0.0)));
        assert_eq!(z(0.0, 0.0), AdmittanceValue::Undefined(UndefinedReason::LambdaZero));
        assert_eq!(AdmittanceValue::Finite(c(0.0, 0.0)).reciprocal(), AdmittanceValue::Infinite);
    }

    #[test]
    fn forbidden_lambda_is_undefined() {
        let lc = NetworkBuilder::new()
            .vertices(["a", "b"])
            .edge("a", "b", EdgeParams::new(0.0, 1.0, 1.0).unwrap())
            .source("a")
            .ground(["b"])
            .build()
            .unwrap();
        assert_eq!(
            effective_admittance(&lc, c(0.0, 1.0)),
            AdmittanceValue::Undefined(UndefinedReason::LambdaForbidden)
        );
        assert!(matches!(solve_dirichlet(&lc, c(0.0, 1.0)), Err(Error::ForbiddenLambda(_))));
    }

    #[test]
    fn deficient_case_is_independent_of_solution() {
        let e = evaluate(&five_vertex_example(), c(-1.0, 0.0));
        assert_eq!(e.solution.as_ref().unwrap().outcome.label(), "deficient");
        assert!(e.independence_gap.unwrap() < 1e-12);
        assert!(e.flux_residual.unwrap() < 1e-12);
        assert!(e.power_residual.unwrap() < 1e-12);
    }

    #[test]
    fn laplacian_examples() {
        let net = five_vertex_example();
        let constant = vec![c(2.5, -1.0); 5];
        for label in ["0", "1", "2", "3", "4"] {
            assert_eq!(laplacian_apply(&net, &constant, c(0.7, 0.2), label).unwrap(), c(0.0, 0.0));
        }
        let s = solve_dirichlet(&net, c(1.0, 0.0)).unwrap();
        let v = s.outcome.voltage().unwrap().as_slice().to_vec();
        assert!(laplacian_apply(&net, &v, c(1.0, 0.0), "2").unwrap().norm() < 1e-14);

        let path = unit_path();
        let f = [c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)];
        assert_eq!(laplacian_apply(&path, &f, c(1.0, 0.0), "a").unwrap(), c(-0.5, 0.0));
        assert_eq!(
            laplacian_apply(&path, &f, c(1.0, 0.0), "q").unwrap_err(),
            Error::UnknownVertex("q".into())
        );
        assert_eq!(
            laplacian_apply(&path, &f[..2], c(1.0, 0.0), "a").unwrap_err(),
            Error::IncompleteFunction
        );
    }

    #[test]
    fn power_form_examples() {
        let net = five_vertex_example();
        for (lambda, expected) in [(1.0, 1.5), (2.0, 1.4)] {
            let s = solve_dirichlet(&net, c(lambda, 0.0)).unwrap();
            let v = s.outcome.voltage().unwrap();
            let p = admittance_via_power(&net, v.as_slice(), c(lambda, 0.0)).unwrap();
            assert!(close(p, c(expected, 0.0), 1e-14));
        }
        let pair = unit_pair();
        let p = admittance_via_power(&pair, &[c(1.0, 0.0), c(0.0, 0.0)], c(3.0, 1.0)).unwrap();
        assert_eq!(p, c(1.0, 0.0));
    }

    #[test]
    fn greens_examples() {
        let net = five_vertex_example();
        let ones = vec![c(1.0, 0.0); 5];
        assert_eq!(greens_residual(&net, &ones, &ones, c(0.4, -2.0)).unwrap(), 0.0);
        let f: Vec<Complex> = [3.0, -1.0, 4.0, 1.0, -5.0].iter().map(|&x| c(x, 0.0)).collect();
        let g: Vec<Complex> = [2.0, 7.0, -1.0, 8.0, 2.0].iter().map(|&x| c(x, 0.0)).collect();
        assert!(greens_residual(&net, &f, &g, c(1.0, 1.0)).unwrap() < 1e-10);

        let path = unit_path();
        let ia = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let ib = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(greens_residual(&path, &ia, &ib, c(0.5, 0.5)).unwrap() < 1e-12);
    }

    #[test]
    fn voltage_invariants_hold() {
        let net = five_vertex_example();
        for lambda in [c(0.3, 0.9), c(2.0, -1.0), c(-0.5, 3.0)] {
            let s = solve_dirichlet(&net, lambda).unwrap();
            let v = s.outcome.voltage().unwrap().as_slice();
            assert_eq!(v[net.source()], c(1.0, 0.0));
            for &b in net.ground() {
                assert_eq!(v[b], c(0.0, 0.0));
            }
        }
    }
}

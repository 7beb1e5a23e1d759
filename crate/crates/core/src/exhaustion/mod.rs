//! Exhaustion of infinite networks by balls around the source.
//!
//! Layer `n` keeps the vertices within graph distance `n` of `a` and all
//! edges among them, and grounds `B_n = (B ∩ V_n) ∪ ∂V_n`. The partial
//! admittances `P_n(λ)` of the layers approximate the admittance of the
//! infinite network, defined as their limit where it exists.

mod chain;
mod classify;
mod graph;
mod ladder;

use std::collections::{HashMap, VecDeque};

use crate::dirichlet::{effective_admittance, AdmittanceValue};
use crate::error::{Error, Result};
use crate::network::{EdgeParams, Network, NetworkBuilder};
use crate::Complex;

pub use chain::{chain_partial_oracle, make_chain, make_chain_with_resistance, Chain, SequenceRule};
pub use classify::{ConvergenceOptions, NotConvergedReason, SequenceClassifier, Verdict};
pub use graph::GraphGenerator;
pub use ladder::{
    ladder_limit_oracle, ladder_mu, ladder_partial_oracle, ladder_psi_roots, make_ladder, Ladder,
    MU_DOUBLE_ROOT_TOLERANCE,
};

/// `S_D`, `S_D*`, `S_R` of an infinite network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyConstants {
    pub s_d: f64,
    pub s_d_star: f64,
    pub s_r: f64,
    /// Computed from a finite ball rather than known in closed form.
    pub approximate: bool,
}

/// A locally finite, connected infinite network given by its neighborhoods.
pub trait InfiniteNetwork: Send + Sync {
    fn source(&self) -> usize;

    /// Neighbors of `vertex` with the parameters of the connecting edge.
    fn neighbors(&self, vertex: usize) -> Vec<(usize, EdgeParams)>;

    fn is_ground(&self, vertex: usize) -> bool;

    fn label(&self, vertex: usize) -> String {
        vertex.to_string()
    }

    /// Constants known in closed form, if any.
    fn declared_constants(&self) -> Option<FamilyConstants> {
        None
    }

    /// Closed-form `P_n(λ)`, when the family has one.
    fn partial_oracle(&self, _n: usize, _lambda: Complex) -> Option<AdmittanceValue> {
        None
    }

    /// Closed-form `lim P_n(λ)`, when the family has one.
    fn limit_oracle(&self, _lambda: Complex) -> Option<AdmittanceValue> {
        None
    }
}

/// One finite approximation `Γ_n`.
#[derive(Debug, Clone)]
pub struct ExhaustionLayer {
    pub n: usize,
    pub network: Network,
    /// Generator ids of the layer's vertices, in network index order.
    pub vertices: Vec<usize>,
    /// Generator ids of `∂V_n`.
    pub boundary: Vec<usize>,
}

impl ExhaustionLayer {
    /// Generator ids of the layer's ground set `B_n`.
    pub fn ground_ids(&self) -> Vec<usize> {
        self.network.ground().iter().map(|&i| self.vertices[i]).collect()
    }
}

/// Builds layer `n ≥ 1` by breadth-first search from the source.
pub fn ball(inf: &dyn InfiniteNetwork, n: usize) -> Result<ExhaustionLayer> {
    if n == 0 {
        return Err(Error::InvalidParam("exhaustion radius must be at least 1".into()));
    }
    let a = inf.source();
    let mut dist: HashMap<usize, usize> = HashMap::from([(a, 0)]);
    let mut order = vec![a];
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[&x];
        if dx == n {
            continue;
        }
        for (y, _) in inf.neighbors(x) {
            if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(y) {
                slot.insert(dx + 1);
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    let boundary: Vec<usize> = order.iter().copied().filter(|v| dist[v] == n).collect();
    if boundary.is_empty() {
        return Err(Error::GeneratorExhausted(n));
    }

    let position: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let labels: Vec<String> = order.iter().map(|&v| inf.label(v)).collect();
    let mut builder = NetworkBuilder::new().vertices(labels.iter().cloned());
    for (i, &x) in order.iter().enumerate() {
        for (y, params) in inf.neighbors(x) {
            // Each edge once, from the endpoint discovered first.
            if let Some(&j) = position.get(&y) {
                if j > i {
                    builder = builder.edge(labels[i].clone(), labels[j].clone(), params);
                }
            }
        }
    }
    let ground = order
        .iter()
        .zip(&labels)
        .filter(|(v, _)| dist[v] == n || inf.is_ground(**v))
        .map(|(_, l)| l.clone());
    let network = builder.source(inf.label(a)).ground(ground).build()?;
    Ok(ExhaustionLayer {
        n,
        network,
        vertices: order,
        boundary,
    })
}

/// `P_1(λ), …, P_{n_max}(λ)`, one Dirichlet solve per layer.
pub fn admittance_sequence(inf: &dyn InfiniteNetwork, lambda: Complex, n_max: usize) -> Result<Vec<AdmittanceValue>> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::LambdaZero);
    }
    if n_max == 0 {
        return Err(Error::InvalidParam("n_max must be at least 1".into()));
    }
    (1..=n_max)
        .map(|n| ball(inf, n).map(|layer| effective_admittance(&layer.network, lambda)))
        .collect()
}

/// The partial admittances at one `λ` with a convergence verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct ExhaustionReport {
    pub lambda: Complex,
    /// `values[k]` is `P_{k+1}(λ)`.
    pub values: Vec<AdmittanceValue>,
    pub verdict: Verdict,
    pub tolerance: f64,
}

/// Computes `P_n(λ)` layer by layer until the classifier reaches a verdict
/// or the budget `n_max` runs out.
pub fn limit_admittance(inf: &dyn InfiniteNetwork, lambda: Complex, options: &ConvergenceOptions) -> Result<ExhaustionReport> {
    options.validate()?;
    let mut classifier = SequenceClassifier::new(*options);
    let mut verdict = None;
    for n in 1..=options.n_max {
        let layer = ball(inf, n)?;
        let value = effective_admittance(&layer.network, lambda);
        if let Some(v) = classifier.push(value) {
            verdict = Some(v);
            break;
        }
    }
    let verdict = verdict.unwrap_or_else(|| classifier.finish());
    Ok(ExhaustionReport {
        lambda,
        values: classifier.into_values(),
        verdict,
        tolerance: options.tol,
    })
}

/// `S_D`, `S_D*`, `S_R`: the declared values, or those of layer `n` marked
/// approximate.
pub fn family_constants(inf: &dyn InfiniteNetwork, n: usize) -> Result<FamilyConstants> {
    if let Some(k) = inf.declared_constants() {
        return Ok(k);
    }
    let layer = ball(inf, n)?;
    let k = crate::bounds::network_constants(&layer.network);
    Ok(FamilyConstants {
        s_d: k.s_d,
        s_d_star: k.s_d_star,
        s_r: k.s_r,
        approximate: true,
    })
}

//! Finite RLC networks and per-edge impedance/admittance.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::Complex;

/// Relative tolerance for deciding that an impedance (or a root) is zero.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Vertex label, unique within a network.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(VertexId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Resistance `R`, inductance `L` and inverse capacitance `D = 1/C` of one
/// edge. All three are finite and nonnegative, and `R + L + D > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeParams {
    r: f64,
    l: f64,
    d: f64,
}

impl EdgeParams {
    pub fn new(r: f64, l: f64, d: f64) -> Result<Self> {
        for (name, value) in [("R", r), ("L", l), ("D", d)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidEdgeParam { name, value });
            }
        }
        if r + l + d <= 0.0 {
            return Err(Error::ZeroEdgeParams(String::new(), String::new()));
        }
        Ok(EdgeParams { r, l, d })
    }

    /// Parameters from a capacitance; `C = ∞` (no capacitor) maps to `D = 0`.
    pub fn with_capacitance(r: f64, l: f64, c: f64) -> Result<Self> {
        if c.is_nan() || c <= 0.0 {
            return Err(Error::InvalidEdgeParam { name: "C", value: c });
        }
        let d = if c == f64::INFINITY { 0.0 } else { 1.0 / c };
        Self::new(r, l, d)
    }

    pub fn resistor(r: f64) -> Result<Self> {
        Self::new(r, 0.0, 0.0)
    }

    pub fn inductor(l: f64) -> Result<Self> {
        Self::new(0.0, l, 0.0)
    }

    pub fn capacitor(c: f64) -> Result<Self> {
        Self::with_capacitance(0.0, 0.0, c)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Natural magnitude of `z` at `λ`, used to scale the zero test.
    fn magnitude_scale(&self, lambda: Complex) -> f64 {
        let m = lambda.norm();
        self.r + self.l * m + self.d / m + 1.0
    }

    /// `z = R + Lλ + D/λ`, without checking for a vanishing result.
    fn raw_impedance(&self, lambda: Complex) -> Complex {
        Complex::new(self.r, 0.0) + lambda * self.l + lambda.inv() * self.d
    }

    /// Whether `z(λ)` is zero under the scaled tolerance.
    pub fn shorts_at(&self, lambda: Complex) -> bool {
        lambda == Complex::new(0.0, 0.0)
            || self.raw_impedance(lambda).norm() <= ROOT_TOLERANCE * self.magnitude_scale(lambda)
    }

    /// Roots of `Lλ² + Rλ + D`, i.e. the nonzero `λ` where `z` vanishes
    /// together with `0` when `D = 0`.
    pub fn impedance_roots(&self) -> Vec<Complex> {
        let (r, l, d) = (self.r, self.l, self.d);
        if l == 0.0 {
            return if r > 0.0 {
                vec![Complex::new(-d / r, 0.0)]
            } else {
                Vec::new()
            };
        }
        let disc = r * r - 4.0 * l * d;
        if disc >= 0.0 {
            // q = -(R + sqrt(disc))/2 avoids cancellation; roots are q/L and D/q.
            let q = -0.5 * (r + disc.sqrt());
            if q == 0.0 {
                vec![Complex::new(0.0, 0.0)]
            } else {
                vec![Complex::new(q / l, 0.0), Complex::new(d / q, 0.0)]
            }
        } else {
            let re = -r / (2.0 * l);
            let im = (-disc).sqrt() / (2.0 * l);
            vec![Complex::new(re, im), Complex::new(re, -im)]
        }
    }
}

/// Impedance `z = R + Lλ + D/λ` of an edge.
pub fn edge_impedance(params: &EdgeParams, lambda: Complex) -> Result<Complex> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::LambdaZero);
    }
    Ok(params.raw_impedance(lambda))
}

/// Admittance `ρ = 1/z = λ/(Lλ² + Rλ + D)` of an edge.
pub fn edge_admittance(params: &EdgeParams, lambda: Complex) -> Result<Complex> {
    let z = edge_impedance(params, lambda)?;
    if params.shorts_at(lambda) {
        return Err(Error::ForbiddenLambda(lambda));
    }
    Ok(z.inv())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub params: EdgeParams,
}

/// A validated finite network: connected graph, edge parameters, source
/// vertex `a` and ground set `B`.
///
/// Immutable after construction. Vertices are addressed either by label or
/// by their dense index in declaration order.
#[derive(Debug, Clone)]
pub struct Network {
    labels: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    source: usize,
    ground: Vec<usize>,
    is_ground: Vec<bool>,
}

impl Network {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> &VertexId {
        &self.labels[vertex]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Dense index of a label, or `UnknownVertex`.
    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs incident to `vertex`.
    pub fn neighbors(&self, vertex: usize) -> &[(usize, usize)] {
        &self.adjacency[vertex]
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn is_ground(&self, vertex: usize) -> bool {
        self.is_ground[vertex]
    }

    /// Vertices outside `B ∪ {a}`, in index order.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&x| x != self.source && !self.is_ground[x])
            .collect()
    }

    /// Edges incident to the source, as `(neighbor, params)`.
    pub fn source_edges(&self) -> impl Iterator<Item = (usize, &EdgeParams)> + '_ {
        self.adjacency[self.source]
            .iter()
            .map(move |&(y, e)| (y, &self.edges[e].params))
    }

    /// Admittance of every edge at `λ`, indexed like [`Network::edges`].
    pub fn edge_admittances(&self, lambda: Complex) -> Result<Vec<Complex>> {
        self.edges
            .iter()
            .map(|e| edge_admittance(&e.params, lambda))
            .collect()
    }
}

/// Whether `λ ∈ Λ`: `λ ≠ 0` and no edge impedance vanishes.
pub fn lambda_in_lambda(network: &Network, lambda: Complex) -> bool {
    lambda != Complex::new(0.0, 0.0) && network.edges.iter().all(|e| !e.params.shorts_at(lambda))
}

/// The finite set `ℂ∖Λ`: zero plus every root of `Lλ² + Rλ + D` over all
/// edges, with near-duplicates merged.
pub fn forbidden_lambdas(network: &Network) -> Vec<Complex> {
    let mut out = vec![Complex::new(0.0, 0.0)];
    for edge in &network.edges {
        for root in edge.params.impedance_roots() {
            debug_assert!(root.re <= ROOT_TOLERANCE, "impedance root {root} in Re λ > 0");
            let merged = out
                .iter()
                .any(|&known| (known - root).norm() <= ROOT_TOLERANCE * (1.0 + root.norm()));
            if !merged {
                out.push(root);
            }
        }
    }
    out
}

/// Collects a raw network description and validates it.
///
/// ```
/// use netadmit::{EdgeParams, NetworkBuilder};
///
/// let net = NetworkBuilder::new()
///     .vertices(["a", "x", "b"])
///     .edge("a", "x", EdgeParams::resistor(1.0).unwrap())
///     .edge("x", "b", EdgeParams::resistor(1.0).unwrap())
///     .source("a")
///     .ground(["b"])
///     .build()
///     .unwrap();
/// assert_eq!(net.interior().len(), 1);
/// ```
#[derive(Debug, Clone, Default)]
pub struct NetworkBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, RawParams)>,
    source: Option<String>,
    ground: Vec<String>,
    allow_empty_ground: bool,
}

#[derive(Debug, Clone, Copy)]
enum RawParams {
    Checked(EdgeParams),
    Unchecked { r: f64, l: f64, d: f64 },
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, label: impl Into<String>) -> Self {
        self.vertices.push(label.into());
        self
    }

    pub fn vertices<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(labels.into_iter().map(Into::into));
        self
    }

    pub fn edge(mut self, u: impl Into<String>, v: impl Into<String>, params: EdgeParams) -> Self {
        self.edges.push((u.into(), v.into(), RawParams::Checked(params)));
        self
    }

    /// Edge from raw `(R, L, D)`; validated by [`NetworkBuilder::build`].
    pub fn edge_rld(
        mut self,
        u: impl Into<String>,
        v: impl Into<String>,
        r: f64,
        l: f64,
        d: f64,
    ) -> Self {
        self.edges
            .push((u.into(), v.into(), RawParams::Unchecked { r, l, d }));
        self
    }

    pub fn source(mut self, label: impl Into<String>) -> Self {
        self.source = Some(label.into());
        self
    }

    pub fn ground<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.ground.extend(labels.into_iter().map(Into::into));
        self
    }

    /// Permit `B = ∅`, for networks that only serve as an infinite-network
    /// base whose ground is constructed per exhaustion layer.
    pub fn allow_empty_ground(mut self, allow: bool) -> Self {
        self.allow_empty_ground = allow;
        self
    }

    pub fn build(self) -> Result<Network> {
        let mut labels = Vec::with_capacity(self.vertices.len());
        let mut index = HashMap::with_capacity(self.vertices.len());
        for raw in self.vertices {
            let id = VertexId::new(raw)?;
            if index.contains_key(&id) {
                return Err(Error::DuplicateVertex(id.0));
            }
            index.insert(id.clone(), labels.len());
            labels.push(id);
        }
        if labels.len() < 2 {
            return Err(Error::TooFewVertices);
        }
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| Error::UnknownEndpoint(label.to_string()))
        };

        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut seen = std::collections::HashSet::new();
        for (u_label, v_label, raw) in &self.edges {
            let u = lookup(u_label)?;
            let v = lookup(v_label)?;
            if u == v {
                return Err(Error::SelfLoop(u_label.clone()));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::ParallelEdge(u_label.clone(), v_label.clone()));
            }
            let params = match *raw {
                RawParams::Checked(p) => p,
                RawParams::Unchecked { r, l, d } => match EdgeParams::new(r, l, d) {
                    Err(Error::ZeroEdgeParams(..)) => {
                        return Err(Error::ZeroEdgeParams(u_label.clone(), v_label.clone()))
                    }
                    other => other?,
                },
            };
            adjacency[u].push((v, edges.len()));
            adjacency[v].push((u, edges.len()));
            edges.push(Edge { u, v, params });
        }

        let source_label = self.source.ok_or(Error::UnknownEndpoint(String::new()))?;
        let source = lookup(&source_label)?;
        let mut is_ground = vec![false; n];
        let mut ground = Vec::new();
        for g in &self.ground {
            let x = lookup(g)?;
            if !is_ground[x] {
                is_ground[x] = true;
                ground.push(x);
            }
        }
        ground.sort_unstable();
        if is_ground[source] {
            return Err(Error::SourceInGround(source_label));
        }
        if ground.is_empty() && !self.allow_empty_ground {
            return Err(Error::EmptyGround);
        }
        if !is_connected(&adjacency) {
            return Err(Error::Disconnected);
        }

        Ok(Network {
            labels,
            index,
            edges,
            adjacency,
            source,
            ground,
            is_ground,
        })
    }
}

fn is_connected(adjacency: &[Vec<(usize, usize)>]) -> bool {
    let mut visited = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([0]);
    visited[0] = true;
    let mut count = 1;
    while let Some(x) = queue.pop_front() {
        for &(y, _) in &adjacency[x] {
            if !visited[y] {
                visited[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    count == adjacency.len()
}

/// The five-vertex network used as the standard finite example: unit
/// capacitors on 0–3, 2–1, 0–4, unit inductors on 3–1, 0–2, 4–1 and a unit
/// resistor on 2–3, with source 1 and ground {0}.
///
/// Its admittance is `(λ²+λ+1)/(λ²+1)` away from `λ ∈ {−1, ±i}`.
pub fn five_vertex_example() -> Network {
    let c = EdgeParams::capacitor(1.0).expect("valid");
    let l = EdgeParams::inductor(1.0).expect("valid");
    let r = EdgeParams::resistor(1.0).expect("valid");
    NetworkBuilder::new()
        .vertices(["0", "1", "2", "3", "4"])
        .edge("0", "3", c)
        .edge("3", "1", l)
        .edge("0", "2", l)
        .edge("2", "3", r)
        .edge("2", "1", c)
        .edge("0", "4", c)
        .edge("4", "1", l)
        .source("1")
        .ground(["0"])
        .build()
        .expect("five-vertex example is valid")
}

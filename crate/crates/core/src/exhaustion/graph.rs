use crate::network::{EdgeParams, Network};

use super::InfiniteNetwork;

/// A finite network served through the generator interface. Balls past its
/// eccentricity report [`Error::GeneratorExhausted`](crate::Error::GeneratorExhausted).
#[derive(Debug, Clone)]
pub struct GraphGenerator {
    network: Network,
}

impl GraphGenerator {
    pub fn new(network: Network) -> Self {
        GraphGenerator { network }
    }

    pub fn network(&self) -> &Network {
        &self.network
    }
}

impl InfiniteNetwork for GraphGenerator {
    fn source(&self) -> usize {
        self.network.source()
    }

    fn neighbors(&self, vertex: usize) -> Vec<(usize, EdgeParams)> {
        self.network
            .neighbors(vertex)
            .iter()
            .map(|&(y, e)| (y, self.network.edges()[e].params))
            .collect()
    }

    fn is_ground(&self, vertex: usize) -> bool {
        self.network.is_ground(vertex)
    }

    fn label(&self, vertex: usize) -> String {
        self.network.label(vertex).to_string()
    }
}

//! k-token graphs and digraphs: vertices are k-subsets of the original
//! vertices, and one arc per single-token move along an original arc.

use thiserror::Error;

use crate::exec::Execution;
use crate::graph::{Digraph, Graph, Label};
use crate::subsets::{binomial, combinations, rank};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TokenError {
    #[error("k = {k} is outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
}

/// A k-subset of vertex indices, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenConfig(Vec<usize>);

impl TokenConfig {
    /// Sorts and rejects repeated vertices.
    pub fn new(mut vertices: Vec<usize>) -> Option<Self> {
        vertices.sort_unstable();
        let before = vertices.len();
        vertices.dedup();
        (vertices.len() == before).then_some(TokenConfig(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Moves the token on `from` to the empty vertex `to`.
    pub fn moved(&self, from: usize, to: usize) -> TokenConfig {
        let mut v: Vec<usize> = self
            .0
            .iter()
            .map(|&x| if x == from { to } else { x })
            .collect();
        v.sort_unstable();
        TokenConfig(v)
    }
}

/// For each configuration (in lexicographic order), the moves
/// `(target rank, source arc index)` sorted by source arc.
type Moves = (Vec<Vec<usize>>, Vec<Vec<(usize, usize)>>);

fn moves(d: &Digraph, k: usize, exec: Execution) -> Result<Moves, TokenError> {
    let n = d.order();
    if k == 0 || k > n {
        return Err(TokenError::KOutOfRange { k, n });
    }
    let configs: Vec<Vec<usize>> = combinations(n, k).collect();
    let out = exec.map(&configs, |c| {
        let config = TokenConfig(c.clone());
        d.arcs()
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| config.contains(u) && !config.contains(v))
            .map(|(a, &(u, v))| (rank(config.moved(u, v).vertices(), n), a))
            .collect()
    });
    Ok((configs, out))
}

fn labels(configs: Vec<Vec<usize>>) -> Vec<Label> {
    configs.into_iter().map(Label::Set).collect()
}

/// `F_k(D)`: arc `A -> B` for each arc `u -> v` of `D` with `u in A`, `v not in A`,
/// `B = A - u + v`. Multi-arcs carry over.
pub fn token_digraph(d: &Digraph, k: usize) -> Result<Digraph, TokenError> {
    token_digraph_with(d, k, Execution::default())
}

pub fn token_digraph_with(d: &Digraph, k: usize, exec: Execution) -> Result<Digraph, TokenError> {
    let (configs, moves) = moves(d, k, exec)?;
    let arcs = moves
        .iter()
        .enumerate()
        .flat_map(|(i, m)| m.iter().map(move |&(j, _)| (i, j)))
        .collect();
    Ok(Digraph::new(labels(configs), arcs).expect("token arcs stay in range"))
}

/// `F_k(G)`: configurations adjacent when their symmetric difference is an edge.
/// Vertex order is lexicographic on sorted subsets.
pub fn token_graph(g: &Graph, k: usize) -> Result<Graph, TokenError> {
    token_graph_with(g, k, Execution::default())
}

pub fn token_graph_with(g: &Graph, k: usize, exec: Execution) -> Result<Graph, TokenError> {
    let (configs, moves) = moves(g.digraph(), k, exec)?;
    let mut offsets = Vec::with_capacity(moves.len() + 1);
    offsets.push(0);
    for m in &moves {
        offsets.push(offsets.last().unwrap() + m.len());
    }
    let mut arcs = Vec::with_capacity(*offsets.last().unwrap());
    let mut pairing = Vec::with_capacity(arcs.capacity());
    for (i, m) in moves.iter().enumerate() {
        for &(j, a) in m {
            arcs.push((i, j));
            // The reverse move uses the paired source arc from configuration j.
            let back = g.pairing()[a];
            let pos = moves[j]
                .binary_search_by_key(&back, |&(_, b)| b)
                .expect("reverse move exists");
            pairing.push(offsets[j] + pos);
        }
    }
    let d = Digraph::new(labels(configs), arcs).expect("token arcs stay in range");
    Ok(Graph::from_pairing(d, pairing).expect("token moves pair up"))
}

/// `C(n, k)`, the number of configurations.
pub fn config_count(n: usize, k: usize) -> usize {
    binomial(n, k)
}

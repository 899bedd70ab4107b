//! Seeded random instances shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use voltlift::{Group, Label, VoltageGraph};

/// Abelian group of order at most `max_order`, rank 1 or 2.
pub fn random_abelian(rng: &mut ChaCha8Rng, max_order: usize) -> Group {
    let n1 = rng.gen_range(1..=max_order);
    if rng.gen_bool(0.4) && max_order / n1 >= 2 {
        let n2 = rng.gen_range(2..=max_order / n1);
        Group::abelian(&[n1, n2]).unwrap()
    } else {
        Group::cyclic(n1).unwrap()
    }
}

/// Undirected voltage graph: up to `max_vertices` base vertices and
/// `max_arcs / 2` edges; loops never carry a non-identity involution.
pub fn random_undirected(
    rng: &mut ChaCha8Rng,
    group: &Group,
    max_vertices: usize,
    max_arcs: usize,
) -> VoltageGraph {
    let n = rng.gen_range(1..=max_vertices);
    let edges = rng.gen_range(1..=max_arcs / 2);
    let mut b = VoltageGraph::builder(group, (0..n).map(Label::Index).collect());
    for _ in 0..edges {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let mut g = rng.gen_range(0..group.order());
        if u == v && group.inv(g) == g {
            g = group.identity();
        }
        b = b.edge(u, v, g);
    }
    b.build().unwrap()
}

/// Directed voltage graph with up to `max_arcs` arcs.
pub fn random_directed(
    rng: &mut ChaCha8Rng,
    group: &Group,
    max_vertices: usize,
    max_arcs: usize,
) -> VoltageGraph {
    let n = rng.gen_range(1..=max_vertices);
    let arcs = rng.gen_range(1..=max_arcs);
    let mut b = VoltageGraph::builder(group, (0..n).map(Label::Index).collect());
    for _ in 0..arcs {
        b = b.arc(
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..group.order()),
        );
    }
    b.build().unwrap()
}

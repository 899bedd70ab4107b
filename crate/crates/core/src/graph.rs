//! Digraphs with multi-arcs and loops, graphs as digraphs with a digon
//! pairing, standard constructors, and adjacency/universal matrices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Group, GroupElement};
use crate::linalg::RealMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("arc ({tail},{head}) has an endpoint outside 0..{n}")]
    ArcOutOfRange { tail: usize, head: usize, n: usize },
    #[error("invalid arc pairing: {0}")]
    InvalidPairing(String),
    #[error("connection set is empty")]
    EmptyConnectionSet,
    #[error("connection set contains the identity")]
    IdentityInS,
    #[error("connection set is not closed under inverses (missing inverse of {0})")]
    NotInverseClosed(String),
    #[error("connection set element from a different group")]
    MismatchedGroups,
    #[error("line graphs of graphs with loops are not supported")]
    LoopsUnsupported,
    #[error("universal matrix needs c1 != 0")]
    ZeroAdjacencyCoefficient,
    #[error("malformed graph file: {0}")]
    Format(String),
}

/// Vertex label. Token configurations and line-graph vertices carry the
/// underlying vertex set; lift vertices carry (base label, group element index).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Index(usize),
    Set(Vec<usize>),
    Lift(Box<Label>, usize),
    Name(String),
}

impl Label {
    pub fn as_set(&self) -> Option<&[usize]> {
        match self {
            Label::Set(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Index(i) => write!(f, "{i}"),
            Label::Set(s) => {
                let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Label::Lift(base, g) => write!(f, "({base};{g})"),
            Label::Name(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for Label {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Ok(i) = t.parse::<usize>() {
            return Ok(Label::Index(i));
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let parsed: Result<Vec<usize>, _> = if inner.trim().is_empty() {
                Ok(Vec::new())
            } else {
                inner.split(',').map(|x| x.trim().parse()).collect()
            };
            if let Ok(v) = parsed {
                return Ok(Label::Set(v));
            }
        }
        if let Some(inner) = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            if let Some((base, g)) = inner.rsplit_once(';') {
                if let Ok(g) = g.trim().parse() {
                    let base: Label = base.parse()?;
                    return Ok(Label::Lift(Box::new(base), g));
                }
            }
        }
        Ok(Label::Name(t.to_string()))
    }
}

impl Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(usize),
            Text(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Num(i) => Label::Index(i),
            Raw::Text(t) => t.parse().unwrap(),
        })
    }
}

/// Vertex-indexed arc multiset. Vertex order fixes matrix row order.
#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    labels: Vec<Label>,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(labels: Vec<Label>, arcs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let n = labels.len();
        if let Some(&(tail, head)) = arcs.iter().find(|&&(t, h)| t >= n || h >= n) {
            return Err(GraphError::ArcOutOfRange { tail, head, n });
        }
        Ok(Digraph { labels, arcs })
    }

    pub fn with_indices(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        Self::new((0..n).map(Label::Index).collect(), arcs)
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.order()];
        for &(t, _) in &self.arcs {
            d[t] += 1;
        }
        d
    }

    /// Heads of the arcs leaving `v`, with repetition.
    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.arcs.iter().filter(|a| a.0 == v).map(|a| a.1).collect()
    }

    /// Arc multiplicities keyed by `(tail, head)`.
    pub fn arc_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut m = HashMap::new();
        for &a in &self.arcs {
            *m.entry(a).or_insert(0) += 1;
        }
        m
    }

    pub fn adjacency_matrix(&self) -> RealMatrix {
        let mut a = RealMatrix::zeros(self.order());
        for &(t, h) in &self.arcs {
            a[(t, h)] += 1.0;
        }
        a
    }

    /// `c1 A + c2 D + c3 I + c4 J`, with `D` the out-degree diagonal.
    pub fn universal_matrix(&self, c: UniversalCoefficients) -> RealMatrix {
        let mut u = self.adjacency_matrix();
        let deg = self.out_degrees();
        let n = self.order();
        for i in 0..n {
            for j in 0..n {
                u[(i, j)] = c.c1 * u[(i, j)] + c.c4;
            }
            u[(i, i)] += c.c2 * deg[i] as f64 + c.c3;
        }
        u
    }

    /// Graphviz rendering; `undirected` prints one `--` line per arc pair.
    pub fn to_dot(&self, name: &str) -> String {
        dot(self, None, name)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.labels.clone(),
            arcs: self.arcs.iter().map(|&(t, h)| [t, h]).collect(),
            undirected: false,
        }
    }
}

/// A digraph whose arcs are paired into digons by a fixed-point-free
/// involution; a loop is a pair of two loop arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    digraph: Digraph,
    pairing: Vec<usize>,
}

impl Graph {
    /// Validates that `pairing` is a fixed-point-free involution pairing mutually reversed arcs.
    pub fn from_pairing(digraph: Digraph, pairing: Vec<usize>) -> Result<Self, GraphError> {
        validate_pairing(digraph.arcs(), &pairing)?;
        Ok(Graph { digraph, pairing })
    }

    /// Each edge `{u,v}` becomes arcs `u->v` (index 2i) and `v->u` (index 2i+1).
    pub fn from_edges(labels: Vec<Label>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut arcs = Vec::with_capacity(2 * edges.len());
        let mut pairing = Vec::with_capacity(2 * edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            arcs.push((u, v));
            arcs.push((v, u));
            pairing.push(2 * i + 1);
            pairing.push(2 * i);
        }
        Ok(Graph {
            digraph: Digraph::new(labels, arcs)?,
            pairing,
        })
    }

    /// Pairs each arc with the earliest unpaired reversed arc; fails when some arc has no partner.
    pub fn pair_arcs(digraph: Digraph) -> Result<Self, GraphError> {
        let mut open: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut pairing = vec![usize::MAX; digraph.arc_count()];
        for (i, &(t, h)) in digraph.arcs().iter().enumerate() {
            let partner = open.get_mut(&(h, t)).and_then(|stack| {
                if stack.is_empty() {
                    None
                } else {
                    Some(stack.remove(0))
                }
            });
            match partner {
                Some(j) => {
                    pairing[i] = j;
                    pairing[j] = i;
                }
                None => open.entry((t, h)).or_default().push(i),
            }
        }
        if let Some(i) = pairing.iter().position(|&p| p == usize::MAX) {
            let (t, h) = digraph.arcs()[i];
            return Err(GraphError::InvalidPairing(format!(
                "arc ({t},{h}) has no reverse partner"
            )));
        }
        Ok(Graph { digraph, pairing })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn into_digraph(self) -> Digraph {
        self.digraph
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn order(&self) -> usize {
        self.digraph.order()
    }

    pub fn labels(&self) -> &[Label] {
        self.digraph.labels()
    }

    /// Edges as `(u, v)` taken from the lower-indexed arc of each pair, in arc order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.pairing
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, _)| self.digraph.arcs()[i])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.digraph.arc_count() / 2
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.digraph.out_degrees()
    }

    pub fn has_loops(&self) -> bool {
        self.digraph.arcs().iter().any(|&(t, h)| t == h)
    }

    pub fn adjacency_matrix(&self) -> RealMatrix {
        self.digraph.adjacency_matrix()
    }

    pub fn universal_matrix(&self, c: UniversalCoefficients) -> RealMatrix {
        self.digraph.universal_matrix(c)
    }

    pub fn to_dot(&self, name: &str) -> String {
        dot(&self.digraph, Some(&self.pairing), name)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            undirected: true,
            ..self.digraph.to_json()
        }
    }
}

pub(crate) fn validate_pairing(
    arcs: &[(usize, usize)],
    pairing: &[usize],
) -> Result<(), GraphError> {
    if pairing.len() != arcs.len() {
        return Err(GraphError::InvalidPairing(format!(
            "{} partners for {} arcs",
            pairing.len(),
            arcs.len()
        )));
    }
    for (i, &j) in pairing.iter().enumerate() {
        if j >= arcs.len() {
            return Err(GraphError::InvalidPairing(format!(
                "arc {i} paired with missing arc {j}"
            )));
        }
        if j == i {
            return Err(GraphError::InvalidPairing(format!(
                "arc {i} is paired with itself"
            )));
        }
        if pairing[j] != i {
            return Err(GraphError::InvalidPairing(format!(
                "pairing is not an involution at arc {i}"
            )));
        }
        let (t, h) = arcs[i];
        if arcs[j] != (h, t) {
            return Err(GraphError::InvalidPairing(format!(
                "arcs {i} and {j} are not mutually reversed"
            )));
        }
    }
    Ok(())
}

/// Either kind of graph, for operations that accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyGraph {
    Undirected(Graph),
    Directed(Digraph),
}

impl AnyGraph {
    pub fn digraph(&self) -> &Digraph {
        match self {
            AnyGraph::Undirected(g) => g.digraph(),
            AnyGraph::Directed(d) => d,
        }
    }

    pub fn is_undirected(&self) -> bool {
        matches!(self, AnyGraph::Undirected(_))
    }

    pub fn as_graph(&self) -> Option<&Graph> {
        match self {
            AnyGraph::Undirected(g) => Some(g),
            AnyGraph::Directed(_) => None,
        }
    }

    pub fn to_json(&self) -> GraphJson {
        match self {
            AnyGraph::Undirected(g) => g.to_json(),
            AnyGraph::Directed(d) => d.to_json(),
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        match self {
            AnyGraph::Undirected(g) => g.to_dot(name),
            AnyGraph::Directed(d) => d.to_dot(name),
        }
    }
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Undirected(g)
    }
}

impl From<Digraph> for AnyGraph {
    fn from(d: Digraph) -> Self {
        AnyGraph::Directed(d)
    }
}

/// `{"vertices": [labels], "arcs": [[tail, head], ...], "undirected": bool}`.
/// Undirected graphs list both arcs of every edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<Label>,
    pub arcs: Vec<[usize; 2]>,
    #[serde(default)]
    pub undirected: bool,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<AnyGraph, GraphError> {
        let d = Digraph::new(
            self.vertices,
            self.arcs.iter().map(|a| (a[0], a[1])).collect(),
        )?;
        if self.undirected {
            Graph::pair_arcs(d).map(AnyGraph::Undirected)
        } else {
            Ok(AnyGraph::Directed(d))
        }
    }
}

fn dot(d: &Digraph, pairing: Option<&[usize]>, name: &str) -> String {
    let (kind, edge) = if pairing.is_some() {
        ("graph", "--")
    } else {
        ("digraph", "->")
    };
    let mut out = format!("{kind} \"{name}\" {{\n");
    for (i, l) in d.labels().iter().enumerate() {
        out.push_str(&format!("  {i} [label=\"{l}\"];\n"));
    }
    for (i, &(t, h)) in d.arcs().iter().enumerate() {
        if pairing.is_some_and(|p| p[i] < i) {
            continue;
        }
        out.push_str(&format!("  {t} {edge} {h};\n"));
    }
    out.push_str("}\n");
    out
}

/// Coefficients of `U = c1 A + c2 D + c3 I + c4 J`; `c1 != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniversalCoefficients {
    c1: f64,
    c2: f64,
    c3: f64,
    c4: f64,
}

impl UniversalCoefficients {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self, GraphError> {
        if c1 == 0.0 || !c1.is_finite() {
            return Err(GraphError::ZeroAdjacencyCoefficient);
        }
        Ok(UniversalCoefficients { c1, c2, c3, c4 })
    }

    pub fn adjacency() -> Self {
        UniversalCoefficients {
            c1: 1.0,
            c2: 0.0,
            c3: 0.0,
            c4: 0.0,
        }
    }

    /// `D - A`
    pub fn laplacian() -> Self {
        Self::new(-1.0, 1.0, 0.0, 0.0).unwrap()
    }

    /// `D + A`
    pub fn signless_laplacian() -> Self {
        Self::new(1.0, 1.0, 0.0, 0.0).unwrap()
    }

    /// `J - I - 2A`
    pub fn seidel() -> Self {
        Self::new(-2.0, 0.0, -1.0, 1.0).unwrap()
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn c3(&self) -> f64 {
        self.c3
    }

    pub fn c4(&self) -> f64 {
        self.c4
    }

    pub fn is_adjacency(&self) -> bool {
        *self == Self::adjacency()
    }
}

impl Default for UniversalCoefficients {
    fn default() -> Self {
        Self::adjacency()
    }
}

pub fn complete_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::from_edges((0..n).map(Label::Index).collect(), &edges).unwrap()
}

/// Undirected cycle `0 - 1 - ... - (n-1) - 0`; needs `n >= 3`.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "an undirected cycle needs at least 3 vertices");
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges((0..n).map(Label::Index).collect(), &edges).unwrap()
}

/// Arcs `i -> i+1 mod n`.
pub fn directed_cycle(n: usize) -> Digraph {
    assert!(n >= 1, "a directed cycle needs at least one vertex");
    Digraph::with_indices(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
}

fn connection_set(group: &Group, s: &[GroupElement]) -> Result<Vec<usize>, GraphError> {
    if s.is_empty() {
        return Err(GraphError::EmptyConnectionSet);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for e in s {
        if e.group() != group {
            return Err(GraphError::MismatchedGroups);
        }
        if e.is_identity() {
            return Err(GraphError::IdentityInS);
        }
        if seen.insert(e.index()) {
            out.push(e.index());
        }
    }
    Ok(out)
}

/// `Cay(G, S)` with arcs `g -> g s`; vertices in group enumeration order.
/// Arc `g*|S| + i` uses the i-th (deduplicated) generator.
pub fn cayley_digraph(group: &Group, s: &[GroupElement]) -> Result<Digraph, GraphError> {
    let gens = connection_set(group, s)?;
    let arcs = (0..group.order())
        .flat_map(|g| gens.iter().map(move |&x| (g, x)))
        .map(|(g, x)| (g, group.op(g, x)))
        .collect();
    Digraph::with_indices(group.order(), arcs)
}

/// Undirected `Cay(G, S)`; `S` must be inverse-closed.
pub fn cayley_graph(group: &Group, s: &[GroupElement]) -> Result<Graph, GraphError> {
    let gens = connection_set(group, s)?;
    let position: HashMap<usize, usize> = gens.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let inverse_pos: Vec<usize> = gens
        .iter()
        .map(|&x| {
            position
                .get(&group.inv(x))
                .copied()
                .ok_or_else(|| GraphError::NotInverseClosed(group.label(x)))
        })
        .collect::<Result<_, _>>()?;
    let d = cayley_digraph(group, s)?;
    let k = gens.len();
    let pairing = (0..group.order())
        .flat_map(|g| (0..k).map(move |i| (g, i)))
        .map(|(g, i)| group.op(g, gens[i]) * k + inverse_pos[i])
        .collect();
    Graph::from_pairing(d, pairing)
}

/// Vertices are the edges of `g` (labelled by their endpoint set); two are
/// adjacent when they share exactly one endpoint.
pub fn line_graph(g: &Graph) -> Result<Graph, GraphError> {
    if g.has_loops() {
        return Err(GraphError::LoopsUnsupported);
    }
    let edges = g.edges();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for (e, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let ends = |e: usize| {
        let (u, v) = edges[e];
        (u.min(v), u.max(v))
    };
    let mut adj = BTreeSet::new();
    for list in &incident {
        for (i, &e) in list.iter().enumerate() {
            for &f in &list[i + 1..] {
                let (a, b) = (ends(e), ends(f));
                let shared = [a.0, a.1]
                    .iter()
                    .filter(|x| **x == b.0 || **x == b.1)
                    .count();
                if shared == 1 {
                    adj.insert((e.min(f), e.max(f)));
                }
            }
        }
    }
    let labels = (0..edges.len())
        .map(|e| {
            let (u, v) = ends(e);
            Label::Set(vec![u, v])
        })
        .collect();
    let adj: Vec<(usize, usize)> = adj.into_iter().collect();
    Graph::from_edges(labels, &adj)
}

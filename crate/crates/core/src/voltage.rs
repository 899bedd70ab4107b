//! Voltage graphs over finite groups, their lifts, and base matrices.
//!
//! A base arc `a: u -> v` with voltage `g` lifts to the arcs
//! `(u, h) -> (v, h g)` for every `h` in the group. The base matrix collects,
//! at entry `(u, v)`, the voltages of all arcs `u -> v` as a group-algebra
//! element; evaluating it at a character (or applying a representation)
//! gives a small complex matrix whose spectrum is part of the lift spectrum.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    AlgebraError, Character, GenericGroup, GenericGroupSpec, Group, GroupAlgebraElement,
    GroupElement, Representation,
};
use crate::graph::{
    validate_pairing, AnyGraph, Digraph, Graph, GraphError, Label, UniversalCoefficients,
};
use crate::linalg::{CMatrix, C64};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VoltageError {
    #[error("operands belong to different groups")]
    MismatchedGroups,
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("paired arcs {0} and {1} do not carry mutually inverse voltages")]
    VoltageNotInverse(usize, usize),
    #[error(
        "undirected loop arc {0} carries an involution; semi-edge semantics are not supported"
    )]
    InvolutionLoop(usize),
    #[error("expected {expected} voltages/components, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed voltage graph file: {0}")]
    Format(String),
}

/// Base digraph plus one voltage per arc. With a pairing the voltage graph is
/// undirected and paired arcs carry mutually inverse voltages.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageGraph {
    group: Group,
    base: Digraph,
    voltages: Vec<usize>,
    pairing: Option<Vec<usize>>,
}

impl VoltageGraph {
    /// Voltages are group element indices, one per arc of `base`.
    pub fn from_indices(
        group: &Group,
        base: Digraph,
        voltages: Vec<usize>,
        pairing: Option<Vec<usize>>,
    ) -> Result<Self, VoltageError> {
        if voltages.len() != base.arc_count() {
            return Err(VoltageError::LengthMismatch {
                expected: base.arc_count(),
                got: voltages.len(),
            });
        }
        if let Some(&bad) = voltages.iter().find(|&&g| g >= group.order()) {
            return Err(VoltageError::Format(format!(
                "voltage index {bad} outside the group"
            )));
        }
        if let Some(p) = &pairing {
            validate_pairing(base.arcs(), p).map_err(|e| match e {
                GraphError::InvalidPairing(m) => VoltageError::InvalidPairing(m),
                other => other.into(),
            })?;
            for (i, &j) in p.iter().enumerate() {
                if voltages[j] != group.inv(voltages[i]) {
                    return Err(VoltageError::VoltageNotInverse(i, j));
                }
                let (u, v) = base.arcs()[i];
                let g = voltages[i];
                if u == v && g != group.identity() && group.inv(g) == g {
                    return Err(VoltageError::InvolutionLoop(i));
                }
            }
        }
        Ok(VoltageGraph {
            group: group.clone(),
            base,
            voltages,
            pairing,
        })
    }

    pub fn new(
        group: &Group,
        base: Digraph,
        voltages: &[GroupElement],
        pairing: Option<Vec<usize>>,
    ) -> Result<Self, VoltageError> {
        if voltages.iter().any(|v| v.group() != group) {
            return Err(VoltageError::MismatchedGroups);
        }
        Self::from_indices(
            group,
            base,
            voltages.iter().map(GroupElement::index).collect(),
            pairing,
        )
    }

    pub fn builder(group: &Group, labels: Vec<Label>) -> VoltageGraphBuilder {
        VoltageGraphBuilder {
            group: group.clone(),
            labels,
            arcs: Vec::new(),
            voltages: Vec::new(),
            pairing: Vec::new(),
            directed_arcs: false,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn base(&self) -> &Digraph {
        &self.base
    }

    pub fn voltages(&self) -> &[usize] {
        &self.voltages
    }

    pub fn pairing(&self) -> Option<&[usize]> {
        self.pairing.as_deref()
    }

    pub fn is_undirected(&self) -> bool {
        self.pairing.is_some()
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    /// Replaces one arc's voltage without re-validating; for negative controls.
    pub fn with_corrupted_voltage(&self, arc: usize, voltage: usize) -> VoltageGraph {
        let mut out = self.clone();
        out.voltages[arc] = voltage;
        out.pairing = None;
        out
    }

    /// Lift vertex index of `(u, g)`: base-major, then group order.
    pub fn lift_index(&self, u: usize, g: usize) -> usize {
        u * self.group.order() + g
    }

    pub fn lift(&self) -> AnyGraph {
        let n = self.group.order();
        let labels = (0..self.order())
            .flat_map(|u| (0..n).map(move |g| (u, g)))
            .map(|(u, g)| Label::Lift(Box::new(self.base.labels()[u].clone()), g))
            .collect();
        let arcs = self
            .base
            .arcs()
            .iter()
            .zip(&self.voltages)
            .flat_map(|(&(u, v), &a)| (0..n).map(move |g| (u, g, v, a)))
            .map(|(u, g, v, a)| {
                (
                    self.lift_index(u, g),
                    self.lift_index(v, self.group.op(g, a)),
                )
            })
            .collect();
        let d = Digraph::new(labels, arcs).expect("lift arcs stay in range");
        match &self.pairing {
            None => AnyGraph::Directed(d),
            Some(p) => {
                let pairing = (0..self.base.arc_count())
                    .flat_map(|a| (0..n).map(move |g| (a, g)))
                    .map(|(a, g)| p[a] * n + self.group.op(g, self.voltages[a]))
                    .collect();
                AnyGraph::Undirected(
                    Graph::from_pairing(d, pairing).expect("lifted pairing is valid"),
                )
            }
        }
    }

    pub fn base_matrix(&self) -> BaseMatrix {
        let n = self.order();
        let mut entries = vec![GroupAlgebraElement::zero(&self.group); n * n];
        for (&(u, v), &g) in self.base.arcs().iter().zip(&self.voltages) {
            entries[u * n + v].add_term(g, 1);
        }
        BaseMatrix {
            group: self.group.clone(),
            n,
            entries,
            undirected: self.is_undirected(),
        }
    }

    /// `phi_(u,g) = chi(g) x_u`.
    pub fn lift_eigenvector(
        &self,
        x: &[C64],
        chi: &Character,
    ) -> Result<LiftedVector, VoltageError> {
        if x.len() != self.order() {
            return Err(VoltageError::LengthMismatch {
                expected: self.order(),
                got: x.len(),
            });
        }
        if *chi.group() != self.group {
            return Err(VoltageError::MismatchedGroups);
        }
        let values = chi.values();
        Ok(LiftedVector {
            values: x
                .iter()
                .flat_map(|&xu| values.iter().map(move |&c| c * xu))
                .collect(),
        })
    }

    pub fn to_json(&self) -> VoltageGraphJson {
        let group = match &self.group {
            Group::Abelian(a) => GroupJson::Abelian {
                orders: a.orders().to_vec(),
            },
            Group::Generic(g) => GroupJson::Generic(g.to_spec()),
        };
        let arcs = self
            .base
            .arcs()
            .iter()
            .enumerate()
            .map(|(i, &(tail, head))| ArcJson {
                tail,
                head,
                voltage: self
                    .group
                    .coords(self.voltages[i])
                    .into_iter()
                    .map(|c| c as i64)
                    .collect(),
                paired_with: self.pairing.as_ref().map(|p| p[i]),
            })
            .collect();
        VoltageGraphJson {
            group,
            vertices: self.base.labels().to_vec(),
            arcs,
        }
    }
}

/// Accumulates arcs and edges for a [`VoltageGraph`].
#[derive(Debug, Clone)]
pub struct VoltageGraphBuilder {
    group: Group,
    labels: Vec<Label>,
    arcs: Vec<(usize, usize)>,
    voltages: Vec<usize>,
    pairing: Vec<usize>,
    directed_arcs: bool,
}

impl VoltageGraphBuilder {
    /// Unpaired arc; any directed arc makes the result a directed voltage graph.
    pub fn arc(mut self, tail: usize, head: usize, voltage: usize) -> Self {
        self.pairing.push(usize::MAX);
        self.arcs.push((tail, head));
        self.voltages.push(voltage);
        self.directed_arcs = true;
        self
    }

    /// Edge as two paired arcs: `u -> v` with `voltage`, `v -> u` with its inverse.
    /// A loop becomes two loop arcs.
    pub fn edge(mut self, u: usize, v: usize, voltage: usize) -> Self {
        let i = self.arcs.len();
        self.arcs.push((u, v));
        self.arcs.push((v, u));
        self.voltages.push(voltage);
        self.voltages
            .push(self.group.inv(voltage % self.group.order()));
        self.pairing.push(i + 1);
        self.pairing.push(i);
        self
    }

    pub fn build(self) -> Result<VoltageGraph, VoltageError> {
        let base = Digraph::new(self.labels, self.arcs)?;
        let pairing = (!self.directed_arcs).then_some(self.pairing);
        VoltageGraph::from_indices(&self.group, base, self.voltages, pairing)
    }
}

/// Lift-vertex values, indexed base-major then by group element.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedVector {
    pub values: Vec<C64>,
}

/// Square matrix over the group algebra, indexed by base vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseMatrix {
    group: Group,
    n: usize,
    entries: Vec<GroupAlgebraElement>,
    undirected: bool,
}

impl BaseMatrix {
    pub fn from_entries(
        group: &Group,
        rows: Vec<Vec<GroupAlgebraElement>>,
    ) -> Result<Self, VoltageError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(VoltageError::Format("base matrix must be square".into()));
        }
        let entries: Vec<GroupAlgebraElement> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.group() != group) {
            return Err(VoltageError::MismatchedGroups);
        }
        let mut out = BaseMatrix {
            group: group.clone(),
            n,
            entries,
            undirected: false,
        };
        out.undirected = out.is_inverse_symmetric();
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn entry(&self, u: usize, v: usize) -> &GroupAlgebraElement {
        &self.entries[u * self.n + v]
    }

    /// Entry `(v,u)` is the image of entry `(u,v)` under `g -> g^-1` for all `u, v`.
    pub fn is_inverse_symmetric(&self) -> bool {
        (0..self.n)
            .all(|u| (u..self.n).all(|v| *self.entry(v, u) == self.entry(u, v).inverse_image()))
    }

    /// Out-degree of each base vertex (the row sums at the trivial character).
    pub fn degrees(&self) -> Vec<i64> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.entry(u, v).augmentation()).sum())
            .collect()
    }

    pub fn evaluate(&self, chi: &Character) -> Result<CMatrix, VoltageError> {
        if *chi.group() != self.group {
            return Err(VoltageError::MismatchedGroups);
        }
        let values = chi.values();
        Ok(CMatrix::from_fn(self.n, self.n, |u, v| {
            self.entry(u, v)
                .terms()
                .map(|(g, c)| values[g] * c as f64)
                .sum()
        }))
    }

    /// Block matrix with block `(u, v) = sum_g c_g rho(g)`.
    pub fn represent(&self, rho: &Representation) -> Result<CMatrix, VoltageError> {
        if *rho.group() != self.group {
            return Err(VoltageError::MismatchedGroups);
        }
        let d = rho.dim();
        let mut out = CMatrix::zeros(d * self.n, d * self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                let block = self.entry(u, v).represent(rho)?;
                out.set_block(u, v, &block);
            }
        }
        Ok(out)
    }

    /// Base-side form of the lift's universal matrix at `chi`:
    /// `c1 B(chi) + c2 D + c3 I + c4 sigma(chi) J`, where `sigma` is the sum of
    /// all group elements (`|G|` at the trivial character, 0 elsewhere).
    pub fn evaluate_universal(
        &self,
        chi: &Character,
        c: UniversalCoefficients,
    ) -> Result<CMatrix, VoltageError> {
        let b = self.evaluate(chi)?;
        let sigma = if chi.is_trivial() {
            self.group.order() as f64
        } else {
            0.0
        };
        Ok(self.universal_from(b, 1, sigma, c))
    }

    /// Representation analogue of [`evaluate_universal`](Self::evaluate_universal);
    /// `rho(sigma)` is `|G| I` for the trivial representation and 0 for other irreducibles.
    pub fn represent_universal(
        &self,
        rho: &Representation,
        c: UniversalCoefficients,
    ) -> Result<CMatrix, VoltageError> {
        let b = self.represent(rho)?;
        let sigma = GroupAlgebraElement::group_sum(&self.group).represent(rho)?;
        let d = rho.dim();
        let mut out = self.universal_from(b, d, 0.0, c);
        if c.c4() != 0.0 {
            let block = sigma.scale(C64::new(c.c4(), 0.0));
            for u in 0..self.n {
                for v in 0..self.n {
                    for i in 0..d {
                        for j in 0..d {
                            out[(u * d + i, v * d + j)] += block[(i, j)];
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn universal_from(
        &self,
        b: CMatrix,
        d: usize,
        sigma: f64,
        c: UniversalCoefficients,
    ) -> CMatrix {
        let mut out = b.scale(C64::new(c.c1(), 0.0));
        let deg = self.degrees();
        for u in 0..self.n {
            for i in 0..d {
                out[(u * d + i, u * d + i)] += C64::new(c.c2() * deg[u] as f64 + c.c3(), 0.0);
            }
        }
        if c.c4() != 0.0 && sigma != 0.0 {
            let add = C64::new(c.c4() * sigma, 0.0);
            for i in 0..out.rows() {
                for j in 0..out.cols() {
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// Text rendering, one bracketed row per line, entries in `z^j` / `1/z^j` notation.
    pub fn to_text(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width: Vec<usize> = (0..self.n)
            .map(|v| {
                (0..self.n)
                    .map(|u| cells[u * self.n + v].len())
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let mut out = String::new();
        for u in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|v| format!("{:<w$}", cells[u * self.n + v], w = width[v]))
                .collect();
            out.push_str(&format!("[ {} ]\n", row.join("  ")));
        }
        out
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }
}

impl fmt::Display for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Group description inside voltage-graph files.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Abelian { orders: Vec<usize> },
    Generic(GenericGroupSpec),
}

impl GroupJson {
    pub fn into_group(self) -> Result<Group, AlgebraError> {
        match self {
            GroupJson::Abelian { orders } => Group::abelian(&orders),
            GroupJson::Generic(spec) => GenericGroup::from_spec(spec).map(Group::from),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcJson {
    pub tail: usize,
    pub head: usize,
    pub voltage: Vec<i64>,
    #[serde(default)]
    pub paired_with: Option<usize>,
}

/// `{"group": ..., "vertices": [...], "arcs": [{"tail", "head", "voltage": [coords], "paired_with"}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VoltageGraphJson {
    pub group: GroupJson,
    pub vertices: Vec<Label>,
    pub arcs: Vec<ArcJson>,
}

impl VoltageGraphJson {
    pub fn into_voltage_graph(self) -> Result<VoltageGraph, VoltageError> {
        let group = self.group.into_group()?;
        let paired = self.arcs.iter().filter(|a| a.paired_with.is_some()).count();
        if paired != 0 && paired != self.arcs.len() {
            return Err(VoltageError::InvalidPairing(
                "either every arc or no arc must name a partner".into(),
            ));
        }
        let voltages = self
            .arcs
            .iter()
            .map(|a| group.element_from_coords(&a.voltage).map(|e| e.index()))
            .collect::<Result<Vec<_>, _>>()?;
        let pairing =
            (paired != 0).then(|| self.arcs.iter().map(|a| a.paired_with.unwrap()).collect());
        let base = Digraph::new(
            self.vertices,
            self.arcs.iter().map(|a| (a.tail, a.head)).collect(),
        )?;
        VoltageGraph::from_indices(&group, base, voltages, pairing)
    }
}

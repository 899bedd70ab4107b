//! Token graphs of Cayley graphs as lifts of voltage graphs.
//!
//! The crate builds Cayley graphs and their k-token graphs, recognises the
//! token graph as the lift of a small voltage graph over the same group, and
//! computes the lift spectrum from the base matrix evaluated at every
//! character (or irreducible representation). A direct dense eigensolver is
//! provided for cross-checks.

pub mod algebra;
pub mod exec;
pub mod graph;
pub mod linalg;
pub mod orbits;
pub mod spectra;
pub mod subsets;
pub mod token;
pub mod voltage;

pub use algebra::{
    enumerate_characters, AbelianGroup, AlgebraError, Character, GenericGroup, Group,
    GroupAlgebraElement, GroupElement, Representation,
};
pub use exec::Execution;
pub use graph::{AnyGraph, Digraph, Graph, GraphError, Label, UniversalCoefficients};
pub use linalg::{CMatrix, C64};
pub use orbits::{
    circulant_linegraph_base, johnson_base, k_set_decomposition, necklace_representatives,
    token_base_graph, verify_natural_isomorphism, KSetDecomposition, OrbitError,
};
pub use spectra::{
    direct_spectrum, johnson_spectrum, lift_spectrum, line_graph_spectrum_transform,
    multiset_equal, rep_spectrum, SpectraError, Spectrum,
};
pub use token::{token_digraph, token_graph, TokenError};
pub use voltage::{BaseMatrix, VoltageError, VoltageGraph};

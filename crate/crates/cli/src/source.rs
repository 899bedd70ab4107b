//! Input objects named on the command line: a construction that has a voltage
//! graph, a target graph, or both.

use std::path::PathBuf;

use clap::Args;
use voltlift::exec::Execution;
use voltlift::graph::{
    cayley_digraph, cayley_graph, complete_graph, cycle_graph, directed_cycle, line_graph,
    GraphJson,
};
use voltlift::orbits::{circulant_graph, circulant_linegraph_base_with, token_base_graph_with};
use voltlift::token::{token_digraph_with, token_graph_with};
use voltlift::voltage::VoltageGraphJson;
use voltlift::{johnson_base, k_set_decomposition, AnyGraph, Group, VoltageGraph};

use crate::error::{usage, CliResult};
use crate::parse::{inverse_closure, parse_generators, parse_group, parse_usize_list};

#[derive(Debug, Clone, Default, Args)]
pub struct SourceArgs {
    /// Graph JSON or voltage-graph JSON file.
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Johnson graph J(n,k) with its voltage graph over Z_n.
    #[arg(long, num_args = 2, value_names = ["N", "K"], alias = "johnson-base")]
    pub johnson: Option<Vec<usize>>,
    /// Line graph of Cay(Z_m, {±a_i}) with its voltage graph, e.g. `12 2,3`.
    #[arg(long, num_args = 2, value_names = ["M", "A"])]
    pub circulant_linegraph: Option<Vec<String>>,
    /// k-token graph of Cay(GROUP, gens) with its voltage graph; needs --gens and --k.
    #[arg(long, value_name = "GROUP")]
    pub token_cayley: Option<String>,
    /// Cayley graph of GROUP; needs --gens.
    #[arg(long, value_name = "GROUP", alias = "group")]
    pub cayley: Option<String>,
    /// Complete graph K_n.
    #[arg(long, value_name = "N")]
    pub complete: Option<usize>,
    /// Cycle C_n.
    #[arg(long, value_name = "N")]
    pub cycle: Option<usize>,
    /// Directed cycle 0 -> 1 -> ... -> n-1 -> 0.
    #[arg(long, value_name = "N")]
    pub directed_cycle: Option<usize>,
    /// Generators, e.g. `10,01`, `±1,±2`, `(1,11)`; closed under inverses unless --directed.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    pub gens: Option<String>,
    /// Use the generator list as given (Cayley digraph).
    #[arg(long)]
    pub directed: bool,
    /// Number of tokens; on a plain graph source this takes the k-token graph.
    #[arg(long, value_name = "K")]
    pub k: Option<usize>,
}

/// A parsed source.
pub enum Source {
    /// A voltage graph paired with the graph it should lift to.
    Construction {
        base: VoltageGraph,
        target: AnyGraph,
        name: String,
    },
    /// A voltage graph file; the target is its own lift.
    Base(VoltageGraph),
    Graph {
        graph: AnyGraph,
        name: String,
    },
}

impl Source {
    pub fn base(&self) -> CliResult<&VoltageGraph> {
        match self {
            Source::Construction { base, .. } | Source::Base(base) => Ok(base),
            Source::Graph { name, .. } => Err(usage(format!(
                "{name} has no voltage-graph form; use --method direct"
            ))),
        }
    }

    pub fn graph(&self) -> AnyGraph {
        match self {
            Source::Construction { target, .. } => target.clone(),
            Source::Base(base) => base.lift(),
            Source::Graph { graph, .. } => graph.clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Source::Construction { name, .. } | Source::Graph { name, .. } => name.clone(),
            Source::Base(_) => "lift".into(),
        }
    }
}

fn pair(v: &[usize]) -> (usize, usize) {
    (v[0], v[1])
}

fn generators(group: &Group, args: &SourceArgs) -> CliResult<Vec<usize>> {
    let text = args
        .gens
        .as_deref()
        .ok_or_else(|| usage("--gens is required for Cayley sources"))?;
    let gens = parse_generators(group, text).map_err(usage)?;
    Ok(if args.directed {
        gens
    } else {
        inverse_closure(group, &gens)
    })
}

fn cayley(group: &Group, gens: &[usize], directed: bool) -> CliResult<AnyGraph> {
    let elems: Vec<_> = gens.iter().map(|&i| group.element(i)).collect();
    Ok(if directed {
        cayley_digraph(group, &elems)?.into()
    } else {
        cayley_graph(group, &elems)?.into()
    })
}

fn token_of(graph: AnyGraph, k: usize, exec: Execution) -> CliResult<AnyGraph> {
    Ok(match graph {
        AnyGraph::Undirected(g) => token_graph_with(&g, k, exec)?.into(),
        AnyGraph::Directed(d) => token_digraph_with(&d, k, exec)?.into(),
    })
}

/// Graph JSON file.
pub fn read_graph(path: &PathBuf) -> CliResult<AnyGraph> {
    match read_file(path)? {
        Source::Graph { graph, .. } => Ok(graph),
        _ => Err(usage(format!(
            "{} is a voltage graph, not a graph",
            path.display()
        ))),
    }
}

fn read_file(path: &PathBuf) -> CliResult<Source> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("group").is_some() {
        let json: VoltageGraphJson = serde_json::from_value(value)?;
        Ok(Source::Base(json.into_voltage_graph()?))
    } else {
        let json: GraphJson = serde_json::from_value(value)?;
        Ok(Source::Graph {
            graph: json.into_graph()?,
            name: path.display().to_string(),
        })
    }
}

impl SourceArgs {
    pub fn resolve(&self, exec: Execution) -> CliResult<Source> {
        let chosen = [
            self.input.is_some(),
            self.johnson.is_some(),
            self.circulant_linegraph.is_some(),
            self.token_cayley.is_some(),
            self.cayley.is_some(),
            self.complete.is_some(),
            self.cycle.is_some(),
            self.directed_cycle.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if chosen != 1 {
            return Err(usage(
                "give exactly one of --in, --johnson, --circulant-linegraph, --token-cayley, --cayley, --complete, --cycle, --directed-cycle",
            ));
        }
        let source = if let Some(path) = &self.input {
            read_file(path)?
        } else if let Some(nk) = &self.johnson {
            let (n, k) = pair(nk);
            Source::Construction {
                base: johnson_base(n, k)?,
                target: token_graph_with(&complete_graph(n), k, exec)?.into(),
                name: format!("J({n},{k})"),
            }
        } else if let Some(ma) = &self.circulant_linegraph {
            let m: usize = ma[0]
                .parse()
                .map_err(|_| usage(format!("'{}' is not a modulus", ma[0])))?;
            let a = parse_usize_list(&ma[1]).map_err(usage)?;
            Source::Construction {
                base: circulant_linegraph_base_with(m, &a, exec)?,
                target: line_graph(&circulant_graph(m, &a)?)?.into(),
                name: format!("L(Cay(Z{m};{}))", ma[1]),
            }
        } else if let Some(g) = &self.token_cayley {
            let group = parse_group(g).map_err(usage)?;
            let gens = generators(&group, self)?;
            let k = self.k.ok_or_else(|| usage("--token-cayley needs --k"))?;
            let dec = k_set_decomposition(&group, k)?;
            Source::Construction {
                base: token_base_graph_with(&dec, &gens, exec)?,
                target: token_of(cayley(&group, &gens, self.directed)?, k, exec)?,
                name: format!("F{k}(Cay({group}))"),
            }
        } else if let Some(g) = &self.cayley {
            let group = parse_group(g).map_err(usage)?;
            let gens = generators(&group, self)?;
            Source::Graph {
                graph: cayley(&group, &gens, self.directed)?,
                name: format!("Cay({group})"),
            }
        } else if let Some(n) = self.complete {
            Source::Graph {
                graph: complete_graph(n).into(),
                name: format!("K{n}"),
            }
        } else if let Some(n) = self.cycle {
            if n < 3 {
                return Err(usage("--cycle needs at least 3 vertices"));
            }
            Source::Graph {
                graph: cycle_graph(n).into(),
                name: format!("C{n}"),
            }
        } else {
            let n = self.directed_cycle.expect("one source chosen");
            if n == 0 {
                return Err(usage("--directed-cycle needs at least 1 vertex"));
            }
            Source::Graph {
                graph: directed_cycle(n).into(),
                name: format!("directed C{n}"),
            }
        };
        match (source, self.k) {
            (Source::Graph { graph, name }, Some(k)) => Ok(Source::Graph {
                graph: token_of(graph, k, exec)?,
                name: format!("F{k}({name})"),
            }),
            (s, _) => Ok(s),
        }
    }
}

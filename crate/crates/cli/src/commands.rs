use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use voltlift::algebra::{symmetric3_irreps, RepresentationJson};
use voltlift::exec::Execution;
use voltlift::graph::complete_graph;
use voltlift::linalg::format_real;
use voltlift::orbits::IsomorphismOutcome;
use voltlift::spectra::{lift_spectrum_detail, rep_spectrum_detail};
use voltlift::token::token_graph_with;
use voltlift::{
    direct_spectrum, enumerate_characters, johnson_spectrum, multiset_equal,
    verify_natural_isomorphism, AnyGraph, GenericGroup, Group, Representation, Spectrum,
    UniversalCoefficients, VoltageGraph,
};

use crate::error::{usage, CliResult, Failure};
use crate::source::{read_graph, Source, SourceArgs};

pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    /// Cayley graph or digraph (`--group`/`--cayley` with `--gens`).
    Cayley,
    /// k-token graph of a graph source (`--k`).
    Token,
    /// Lift of a voltage graph.
    Lift,
    /// Voltage graph of a construction.
    Base,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub kind: GenerateKind,
    #[command(flatten)]
    pub source: SourceArgs,
    /// Output JSON path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also write Graphviz DOT.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
}

pub fn generate(args: &GenerateArgs, exec: Execution) -> CliResult<()> {
    let src = args.source.resolve(exec)?;
    let (json, dot) = match args.kind {
        GenerateKind::Base => {
            let base = src.base()?;
            (to_json(&base.to_json()), base.base().to_dot("base"))
        }
        GenerateKind::Lift => {
            let lift = src.base()?.lift();
            (to_json(&lift.to_json()), lift.to_dot("lift"))
        }
        GenerateKind::Cayley | GenerateKind::Token => {
            if args.kind == GenerateKind::Cayley && args.source.cayley.is_none() {
                return Err(usage("generate cayley needs --group and --gens"));
            }
            if args.kind == GenerateKind::Token && args.source.k.is_none() {
                return Err(usage("generate token needs --k"));
            }
            let g = src.graph();
            (to_json(&g.to_json()), g.to_dot(&src.name()))
        }
    };
    emit(args.out.as_deref(), &json)?;
    if let Some(p) = &args.dot {
        emit(Some(p), &dot)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Base matrix at every character (abelian groups).
    Characters,
    /// Dense eigenvalues of the whole graph.
    Direct,
    /// Base matrix under irreducible representations.
    Irreps,
}

#[derive(Debug, Default, Args)]
#[group(multiple = false)]
pub struct CoefficientArgs {
    /// Laplacian D - A.
    #[arg(long)]
    pub laplacian: bool,
    /// Signless Laplacian D + A.
    #[arg(long)]
    pub signless_laplacian: bool,
    /// Universal matrix c1 A + c2 D + c3 I + c4 J.
    #[arg(long, value_name = "C1,C2,C3,C4", allow_hyphen_values = true)]
    pub universal: Option<String>,
}

impl CoefficientArgs {
    pub fn coefficients(&self) -> CliResult<UniversalCoefficients> {
        if self.laplacian {
            Ok(UniversalCoefficients::laplacian())
        } else if self.signless_laplacian {
            Ok(UniversalCoefficients::signless_laplacian())
        } else if let Some(text) = &self.universal {
            let [c1, c2, c3, c4] = crate::parse::parse_coefficients(text).map_err(usage)?;
            Ok(UniversalCoefficients::new(c1, c2, c3, c4)?)
        } else {
            Ok(UniversalCoefficients::adjacency())
        }
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value = "characters")]
    pub method: Method,
    #[command(flatten)]
    pub coefficients: CoefficientArgs,
    /// Also print the per-character (or per-representation) table.
    #[arg(long)]
    pub per_character: bool,
    /// JSON array of representations, each mapping element index to a row-major matrix of [re, im].
    #[arg(long, value_name = "PATH")]
    pub irreps: Option<PathBuf>,
    /// Spectrum CSV path (stdout when omitted).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Per-character table path (appended to stdout when omitted).
    #[arg(long, value_name = "PATH")]
    pub table_out: Option<PathBuf>,
}

fn is_builtin_s3(group: &Group) -> bool {
    let s3: Group = GenericGroup::symmetric3().into();
    group.as_abelian().is_none()
        && group.order() == 6
        && (0..6).all(|a| (0..6).all(|b| group.op(a, b) == s3.op(a, b)))
}

pub fn irreps_for(base: &VoltageGraph, path: Option<&Path>) -> CliResult<Vec<Representation>> {
    let group = base.group();
    if let Some(p) = path {
        let text =
            std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        let maps: Vec<RepresentationJson> = serde_json::from_str(&text)?;
        return maps
            .iter()
            .map(|m| Representation::from_json_map(group, m).map_err(Failure::from))
            .collect();
    }
    if group.as_abelian().is_some() {
        Ok(enumerate_characters(group)?
            .iter()
            .map(Representation::from_character)
            .collect())
    } else if is_builtin_s3(group) {
        Ok(symmetric3_irreps(group))
    } else {
        Err(usage(
            "non-abelian group without built-in representations; pass --irreps",
        ))
    }
}

pub fn spectrum(args: &SpectrumArgs, exec: Execution) -> CliResult<()> {
    let src = args.source.resolve(exec)?;
    let c = args.coefficients.coefficients()?;
    let (spec, table) = match args.method {
        Method::Direct => (direct_spectrum(src.graph().digraph(), c)?, None),
        Method::Characters => {
            let detail = lift_spectrum_detail(src.base()?, c, exec)?;
            let table = detail.table_csv();
            (detail.total, Some(table))
        }
        Method::Irreps => {
            let base = src.base()?;
            let irreps = irreps_for(base, args.irreps.as_deref())?;
            let detail = rep_spectrum_detail(base, &irreps, c, exec)?;
            if let Some(w) = &detail.warning {
                eprintln!("warning: {w}");
            }
            let mut table = String::from("representation,dim,re,im,multiplicity\n");
            for (i, part) in detail.parts.iter().enumerate() {
                for (z, m) in part.spectrum.groups() {
                    table.push_str(&format!(
                        "{i},{},{},{},{m}\n",
                        part.dim,
                        format_real(z.re),
                        format_real(z.im)
                    ));
                }
            }
            (detail.total, Some(table))
        }
    };
    emit(args.out.as_deref(), &spec.to_csv())?;
    if args.per_character {
        let table =
            table.ok_or_else(|| usage("--per-character needs --method characters or irreps"))?;
        match &args.table_out {
            Some(p) => emit(Some(p), &table)?,
            None => {
                if args.out.is_none() {
                    println!();
                }
                print!("{table}");
            }
        }
    }
    Ok(())
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// The natural map (beta, g) -> g.beta is an isomorphism from the lift onto the target.
    Isomorphism {
        #[command(flatten)]
        source: SourceArgs,
        /// Graph JSON to compare against instead of the construction's own graph.
        #[arg(long, value_name = "PATH")]
        target: Option<PathBuf>,
        /// Write the certificate (or the counterexample) as JSON.
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Spectrum through the base matrix equals the dense spectrum of the target.
    SpectrumEquivalence {
        #[command(flatten)]
        source: SourceArgs,
        /// Graph JSON to compare against instead of the construction's own graph.
        #[arg(long, value_name = "PATH")]
        target: Option<PathBuf>,
        #[command(flatten)]
        coefficients: CoefficientArgs,
        #[arg(long, value_name = "PATH")]
        irreps: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Closed-form Johnson spectrum equals the dense spectrum of F_k(K_n).
    JohnsonClosedForm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

fn compare(label: &str, via: &Spectrum, direct: &Spectrum, tol: f64) -> CliResult<()> {
    let r = multiset_equal(via, direct, tol);
    if r.equal {
        println!(
            "PASS {label}: {} eigenvalues agree (max distance {:.2e})",
            via.len(),
            r.max_distance
        );
        Ok(())
    } else if via.len() != direct.len() {
        Err(Failure::Mismatch(format!(
            "FAIL {label}: {} eigenvalues versus {}",
            via.len(),
            direct.len()
        )))
    } else {
        Err(Failure::Mismatch(format!(
            "FAIL {label}: {via} versus {direct} (max distance {:.3e})",
            r.max_distance
        )))
    }
}

fn target_graph(src: &Source, target: Option<&PathBuf>) -> CliResult<AnyGraph> {
    match target {
        Some(p) => read_graph(p),
        None => Ok(src.graph()),
    }
}

pub fn verify(cmd: &VerifyCommand, exec: Execution) -> CliResult<()> {
    match cmd {
        VerifyCommand::Isomorphism {
            source,
            target,
            certificate,
        } => {
            let src = source.resolve(exec)?;
            let outcome =
                verify_natural_isomorphism(src.base()?, &target_graph(&src, target.as_ref())?);
            if let Some(p) = certificate {
                emit(Some(p), &to_json(&outcome))?;
            }
            match outcome {
                IsomorphismOutcome::Certificate(c) => {
                    let saved = certificate
                        .as_ref()
                        .map(|p| format!(", certificate {}", p.display()))
                        .unwrap_or_default();
                    println!(
                        "PASS {}: {} vertices and {} arcs mapped bijectively{saved}",
                        src.name(),
                        c.vertices,
                        c.arcs
                    );
                    Ok(())
                }
                IsomorphismOutcome::Failure(f) => Err(Failure::Mismatch(format!(
                    "FAIL {}: {}",
                    src.name(),
                    serde_json::to_string(&f).expect("plain data serializes")
                ))),
            }
        }
        VerifyCommand::SpectrumEquivalence {
            source,
            target,
            coefficients,
            irreps,
            tol,
        } => {
            let src = source.resolve(exec)?;
            let c = coefficients.coefficients()?;
            let base = src.base()?;
            let via = if base.group().as_abelian().is_some() && irreps.is_none() {
                lift_spectrum_detail(base, c, exec)?.total
            } else {
                rep_spectrum_detail(base, &irreps_for(base, irreps.as_deref())?, c, exec)?.total
            };
            let direct = direct_spectrum(target_graph(&src, target.as_ref())?.digraph(), c)?;
            compare(&src.name(), &via, &direct, *tol)
        }
        VerifyCommand::JohnsonClosedForm { n, k, tol } => {
            let closed = johnson_spectrum(*n, *k)?;
            let g = token_graph_with(&complete_graph(*n), *k, exec)?;
            let direct = direct_spectrum(g.digraph(), UniversalCoefficients::adjacency())?;
            compare(
                &format!("J({n},{k}) closed form {closed}"),
                &closed,
                &direct,
                *tol,
            )
        }
    }
}

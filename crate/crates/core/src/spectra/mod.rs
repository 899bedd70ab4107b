//! Spectra of lifts from their base matrices, direct dense spectra, and the
//! closed forms for Johnson graphs and line graphs of regular graphs.

mod eigen;
mod spectrum;

use thiserror::Error;

pub use eigen::{eigenpairs, eigenvalues, residual, EigenError, EigenPair, HERMITIAN_TOL, MAX_DIM};
pub use spectrum::{
    format_complex, multiset_equal, spectral_order, Comparison, Spectrum, GROUPING_TOL,
};

use crate::algebra::{
    completeness_warning, enumerate_characters, AlgebraError, Character, Representation,
};
use crate::exec::Execution;
use crate::graph::{Digraph, UniversalCoefficients};
use crate::linalg::{format_real, C64};
use crate::subsets::binomial;
use crate::voltage::{VoltageError, VoltageGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error("the group is not abelian; use irreducible representations instead of characters")]
    NonAbelianGroup,
    #[error("representations give {got} eigenvalues but the lift has {expected} vertices")]
    IncompleteIrreps { expected: usize, got: usize },
    #[error("k = {k} is outside 1..={max} for n = {n}")]
    KOutOfRange { n: usize, k: usize, max: usize },
    #[error("not the spectrum of a regular graph: {0}")]
    NotRegularSpectrum(String),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Spectrum of the base matrix at one character.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSpectrum {
    pub character: Character,
    pub spectrum: Spectrum,
}

/// Per-character spectra (in character enumeration order) and their union.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftSpectrum {
    pub parts: Vec<CharacterSpectrum>,
    pub total: Spectrum,
}

/// Characters sharing one row of a per-character table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub characters: Vec<Character>,
    pub spectrum: Spectrum,
}

impl LiftSpectrum {
    /// One row per character, merged with its conjugate when both give the
    /// same spectrum (always the case for undirected voltage graphs).
    pub fn table_rows(&self) -> Vec<TableRow> {
        let mut done = vec![false; self.parts.len()];
        let mut rows = Vec::new();
        for i in 0..self.parts.len() {
            if done[i] {
                continue;
            }
            done[i] = true;
            let part = &self.parts[i];
            let mut characters = vec![part.character.clone()];
            let conj = part.character.conjugate();
            if let Some(j) = self.parts.iter().position(|p| p.character == conj) {
                if !done[j] && multiset_equal(&part.spectrum, &self.parts[j].spectrum, 1e-8).equal {
                    done[j] = true;
                    characters.push(conj);
                }
            }
            rows.push(TableRow {
                characters,
                spectrum: part.spectrum.clone(),
            });
        }
        rows
    }

    /// `characters,re,im,multiplicity`, one line per grouped eigenvalue of each table row.
    pub fn table_csv(&self) -> String {
        let mut out = String::from("characters,re,im,multiplicity\n");
        for row in self.table_rows() {
            let names: Vec<String> = row.characters.iter().map(|c| c.to_string()).collect();
            let name = names.join("=");
            for (z, m) in row.spectrum.groups() {
                out.push_str(&format!(
                    "\"{name}\",{},{},{m}\n",
                    format_real(z.re),
                    format_real(z.im)
                ));
            }
        }
        out
    }
}

/// Lift spectrum from the base matrix at every character.
pub fn lift_spectrum(vg: &VoltageGraph) -> Result<Spectrum, SpectraError> {
    Ok(lift_spectrum_detail(vg, UniversalCoefficients::adjacency(), Execution::default())?.total)
}

/// Spectrum of the lift's universal matrix `c1 A + c2 D + c3 I + c4 J`,
/// one eigenproblem per character.
pub fn lift_spectrum_detail(
    vg: &VoltageGraph,
    c: UniversalCoefficients,
    exec: Execution,
) -> Result<LiftSpectrum, SpectraError> {
    let chars = enumerate_characters(vg.group()).map_err(|e| match e {
        AlgebraError::NotAbelian => SpectraError::NonAbelianGroup,
        other => other.into(),
    })?;
    let b = vg.base_matrix();
    let parts = exec.try_map(&chars, |chi| {
        let m = b.evaluate_universal(chi, c)?;
        Ok::<_, SpectraError>(CharacterSpectrum {
            character: chi.clone(),
            spectrum: Spectrum::new(eigenvalues(&m)?),
        })
    })?;
    let total = Spectrum::union(parts.iter().map(|p| &p.spectrum));
    Ok(LiftSpectrum { parts, total })
}

/// Spectrum of one representation's block matrix, counted `dim` times.
#[derive(Debug, Clone, PartialEq)]
pub struct RepresentationSpectrum {
    pub dim: usize,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepSpectrum {
    pub parts: Vec<RepresentationSpectrum>,
    pub total: Spectrum,
    /// Set when the squared dimensions do not add up to the group order.
    pub warning: Option<String>,
}

/// Lift spectrum as the union over representations of `d` copies of `spec(rho(B))`.
pub fn rep_spectrum(
    vg: &VoltageGraph,
    irreps: &[Representation],
) -> Result<Spectrum, SpectraError> {
    Ok(rep_spectrum_detail(
        vg,
        irreps,
        UniversalCoefficients::adjacency(),
        Execution::default(),
    )?
    .total)
}

pub fn rep_spectrum_detail(
    vg: &VoltageGraph,
    irreps: &[Representation],
    c: UniversalCoefficients,
    exec: Execution,
) -> Result<RepSpectrum, SpectraError> {
    let n = vg.order();
    let expected = n * vg.group().order();
    let got: usize = irreps.iter().map(|r| r.dim() * r.dim() * n).sum();
    if got != expected {
        return Err(SpectraError::IncompleteIrreps { expected, got });
    }
    let warning = completeness_warning(vg.group(), irreps);
    let b = vg.base_matrix();
    let parts = exec.try_map(irreps, |rho| {
        let m = b.represent_universal(rho, c)?;
        Ok::<_, SpectraError>(RepresentationSpectrum {
            dim: rho.dim(),
            spectrum: Spectrum::new(eigenvalues(&m)?),
        })
    })?;
    let total = Spectrum::new(
        parts
            .iter()
            .flat_map(|p| (0..p.dim).flat_map(move |_| p.spectrum.values().iter().copied()))
            .collect(),
    );
    Ok(RepSpectrum {
        parts,
        total,
        warning,
    })
}

/// Spectrum of the universal matrix of `d` by dense eigendecomposition.
pub fn direct_spectrum(d: &Digraph, c: UniversalCoefficients) -> Result<Spectrum, SpectraError> {
    if d.order() > MAX_DIM {
        return Err(EigenError::DimensionTooLarge {
            dim: d.order(),
            max: MAX_DIM,
        }
        .into());
    }
    Ok(Spectrum::new(eigenvalues(
        &d.universal_matrix(c).to_complex(),
    )?))
}

/// Closed form for `J(n, k)`: `(k-j)(n-k-j) - j` with multiplicity
/// `C(n,j) - C(n,j-1)`, for `j = 0..=k`.
pub fn johnson_spectrum(n: usize, k: usize) -> Result<Spectrum, SpectraError> {
    if k == 0 || 2 * k > n {
        return Err(SpectraError::KOutOfRange { n, k, max: n / 2 });
    }
    let entries: Vec<(f64, usize)> = (0..=k)
        .map(|j| {
            let value = ((k - j) * (n - k - j)) as f64 - j as f64;
            let mult = binomial(n, j) - if j == 0 { 0 } else { binomial(n, j - 1) };
            (value, mult)
        })
        .collect();
    Ok(Spectrum::from_multiplicities(&entries))
}

/// Line-graph spectrum of a `k`-regular graph with `n` vertices and `m` edges:
/// each eigenvalue `lambda` becomes `lambda + k - 2`, and `-2` gains `m - n`
/// copies (or loses `n - m` when `m < n`).
pub fn line_graph_spectrum_transform(
    spec: &Spectrum,
    k: usize,
    n: usize,
    m: usize,
) -> Result<Spectrum, SpectraError> {
    if spec.len() != n {
        return Err(SpectraError::NotRegularSpectrum(format!(
            "{} eigenvalues for {n} vertices",
            spec.len()
        )));
    }
    if n * k != 2 * m {
        return Err(SpectraError::NotRegularSpectrum(format!(
            "{n} vertices of degree {k} cannot have {m} edges"
        )));
    }
    let top = spec.max_real().unwrap_or(0.0);
    if n > 0 && (top - k as f64).abs() > GROUPING_TOL {
        return Err(SpectraError::NotRegularSpectrum(format!(
            "largest eigenvalue {} differs from the degree {k}",
            format_real(top)
        )));
    }
    let shift = k as f64 - 2.0;
    let mut values: Vec<C64> = spec.values().iter().map(|z| z + shift).collect();
    let minus_two = C64::new(-2.0, 0.0);
    if m >= n {
        values.extend(std::iter::repeat_n(minus_two, m - n));
    } else {
        for _ in 0..n - m {
            let (pos, d) = values
                .iter()
                .enumerate()
                .map(|(i, z)| (i, (z - minus_two).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("values remain");
            if d > GROUPING_TOL {
                return Err(SpectraError::NotRegularSpectrum(
                    "fewer eigenvalues -k than the incidence rank requires".into(),
                ));
            }
            values.swap_remove(pos);
        }
    }
    Ok(Spectrum::with_tolerance(values, spec.tolerance()))
}

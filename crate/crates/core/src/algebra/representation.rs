use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::{CMatrix, C64};

use super::{AlgebraError, Character, Group};

const UNITARY_TOL: f64 = 1e-10;

/// A unitary matrix representation `g -> rho(g)`, one `d x d` matrix per element.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    group: Group,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl Representation {
    /// Matrices must be supplied for every element, in enumeration order.
    pub fn new(group: &Group, matrices: Vec<CMatrix>) -> Result<Self, AlgebraError> {
        if matrices.len() != group.order() {
            return Err(AlgebraError::IncompleteRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices.first().map_or(0, CMatrix::rows);
        if dim == 0 || matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(AlgebraError::IncompleteRepresentation(
                "matrices must all be square of one positive dimension".into(),
            ));
        }
        Ok(Representation {
            group: group.clone(),
            dim,
            matrices,
        })
    }

    pub fn trivial(group: &Group) -> Self {
        Self::new(group, vec![CMatrix::identity(1); group.order()]).unwrap()
    }

    pub fn from_character(chi: &Character) -> Self {
        let mats = chi
            .values()
            .into_iter()
            .map(|v| CMatrix::from_row_major(1, 1, vec![v]))
            .collect();
        Self::new(chi.group(), mats).unwrap()
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, element: usize) -> &CMatrix {
        &self.matrices[element]
    }

    /// JSON form: object from element index to the row-major matrix as `[re, im]` pairs.
    pub fn from_json_map(group: &Group, map: &RepresentationJson) -> Result<Self, AlgebraError> {
        let mut mats = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let flat = map.get(&g.to_string()).ok_or_else(|| {
                AlgebraError::IncompleteRepresentation(format!("no matrix for element {g}"))
            })?;
            let d = (flat.len() as f64).sqrt().round() as usize;
            if d * d != flat.len() || d == 0 {
                return Err(AlgebraError::IncompleteRepresentation(format!(
                    "matrix for element {g} has {} entries, not a perfect square",
                    flat.len()
                )));
            }
            mats.push(CMatrix::from_row_major(
                d,
                d,
                flat.iter().map(|&[re, im]| C64::new(re, im)).collect(),
            ));
        }
        if map.len() != group.order() {
            return Err(AlgebraError::IncompleteRepresentation(format!(
                "{} entries for a group of order {}",
                map.len(),
                group.order()
            )));
        }
        Self::new(group, mats)
    }

    pub fn to_json_map(&self) -> RepresentationJson {
        self.matrices
            .iter()
            .enumerate()
            .map(|(g, m)| {
                (
                    g.to_string(),
                    m.data().iter().map(|z| [z.re, z.im]).collect(),
                )
            })
            .collect()
    }
}

pub type RepresentationJson = BTreeMap<String, Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentationReport {
    /// max over g,h of |rho(gh) - rho(g) rho(h)|
    pub homomorphism_error: f64,
    /// max over g of |rho(g) rho(g)^H - I|
    pub unitarity_error: f64,
    pub is_homomorphism: bool,
    pub is_unitary: bool,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.is_homomorphism && self.is_unitary
    }
}

/// Checks homomorphism and unitarity within 1e-10. Irreducibility is not checked.
pub fn check_representation(
    group: &Group,
    rho: &Representation,
) -> Result<RepresentationReport, AlgebraError> {
    if rho.group() != group {
        return Err(AlgebraError::MismatchedGroups);
    }
    let n = group.order();
    let id = CMatrix::identity(rho.dim());
    let mut hom: f64 = 0.0;
    let mut unit: f64 = 0.0;
    for g in 0..n {
        let m = rho.matrix(g);
        unit = unit.max(m.matmul(&m.adjoint()).max_abs_diff(&id));
        for h in 0..n {
            let lhs = rho.matrix(group.op(g, h));
            hom = hom.max(lhs.max_abs_diff(&m.matmul(rho.matrix(h))));
        }
    }
    Ok(RepresentationReport {
        homomorphism_error: hom,
        unitarity_error: unit,
        is_homomorphism: hom <= UNITARY_TOL,
        is_unitary: unit <= UNITARY_TOL,
    })
}

/// Warning text when `sum d^2 != |G|`, the count a complete set of irreducibles must meet.
pub fn completeness_warning(group: &Group, irreps: &[Representation]) -> Option<String> {
    let total: usize = irreps.iter().map(|r| r.dim() * r.dim()).sum();
    (total != group.order()).then(|| {
        format!(
            "sum of squared dimensions is {total} but the group has order {}; the list is not a complete set of irreducibles",
            group.order()
        )
    })
}

/// The three irreducible representations of S3 as built by
/// [`GenericGroup::symmetric3`](super::GenericGroup::symmetric3): trivial, sign, standard.
pub fn symmetric3_irreps(group: &Group) -> Vec<Representation> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let sign = |p: &[usize; 3]| {
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        if inversions % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    // Standard representation: permutation matrices restricted to the plane
    // orthogonal to (1,1,1), in the orthonormal basis u1=(1,-1,0)/sqrt2, u2=(1,1,-2)/sqrt6.
    let s2 = 2f64.sqrt();
    let s6 = 6f64.sqrt();
    let basis = [[1.0 / s2, -1.0 / s2, 0.0], [1.0 / s6, 1.0 / s6, -2.0 / s6]];
    let standard: Vec<CMatrix> = perms
        .iter()
        .map(|p| {
            // permutation matrix P e_x = e_{p(x)}
            CMatrix::from_fn(2, 2, |i, j| {
                let mut v = [0.0; 3];
                for x in 0..3 {
                    v[p[x]] += basis[j][x];
                }
                C64::new((0..3).map(|y| basis[i][y] * v[y]).sum(), 0.0)
            })
        })
        .collect();
    vec![
        Representation::trivial(group),
        Representation::new(
            group,
            perms
                .iter()
                .map(|p| CMatrix::from_row_major(1, 1, vec![C64::new(sign(p), 0.0)]))
                .collect(),
        )
        .unwrap(),
        Representation::new(group, standard).unwrap(),
    ]
}

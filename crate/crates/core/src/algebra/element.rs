use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{CMatrix, C64};

use super::{AlgebraError, Character, Group, GroupElement, Representation};

/// Formal integer combination of group elements, the entries of a base matrix.
///
/// For abelian groups this is a Laurent polynomial in `z1..zr` with exponents
/// taken modulo the factor orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    group: Group,
    terms: BTreeMap<usize, i64>,
}

impl GroupAlgebraElement {
    pub fn zero(group: &Group) -> Self {
        GroupAlgebraElement {
            group: group.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: &Group) -> Self {
        Self::monomial(group, group.identity(), 1)
    }

    pub fn monomial(group: &Group, element: usize, coeff: i64) -> Self {
        let mut out = Self::zero(group);
        out.add_term(element, coeff);
        out
    }

    pub fn from_element(element: &GroupElement) -> Self {
        Self::monomial(element.group(), element.index(), 1)
    }

    /// Sum of every group element (`sigma`); evaluates to `|G|` at the trivial
    /// character and to zero at every other one.
    pub fn group_sum(group: &Group) -> Self {
        let mut out = Self::zero(group);
        for g in 0..group.order() {
            out.add_term(g, 1);
        }
        out
    }

    /// Builds from `(element index, coefficient)` pairs; repeated elements merge.
    pub fn from_terms(group: &Group, terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out = Self::zero(group);
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn add_term(&mut self, element: usize, coeff: i64) {
        assert!(
            element < self.group.order(),
            "element {element} out of range"
        );
        let entry = self.terms.entry(element).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&element);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&g, &c)| (g, c))
    }

    pub fn coefficient(&self, element: usize) -> i64 {
        self.terms.get(&element).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients: the value at the trivial character.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(AlgebraError::MismatchedGroups)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElement {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(&g, &c)| (g, -c)).collect(),
        }
    }

    /// Convolution product `sum a_g b_h (gh)`.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(&self.group);
        for (g, a) in self.terms() {
            for (h, b) in other.terms() {
                out.add_term(self.group.op(g, h), a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> Self {
        Self::from_terms(&self.group, self.terms().map(|(g, c)| (g, c * s)))
    }

    /// Image under `g -> g^-1`.
    pub fn inverse_image(&self) -> Self {
        Self::from_terms(
            &self.group,
            self.terms().map(|(g, c)| (self.group.inv(g), c)),
        )
    }

    pub fn evaluate(&self, chi: &Character) -> Result<C64, AlgebraError> {
        if *chi.group() != self.group {
            return Err(AlgebraError::MismatchedGroups);
        }
        Ok(self.terms().map(|(g, c)| chi.value(g) * c as f64).sum())
    }

    /// `sum c_g rho(g)` as a `d x d` matrix.
    pub fn represent(&self, rho: &Representation) -> Result<CMatrix, AlgebraError> {
        if *rho.group() != self.group {
            return Err(AlgebraError::MismatchedGroups);
        }
        let d = rho.dim();
        let mut out = CMatrix::zeros(d, d);
        for (g, c) in self.terms() {
            out = out.add(&rho.matrix(g).scale(C64::new(c as f64, 0.0)));
        }
        Ok(out)
    }
}

fn signed_exponent(e: usize, n: usize) -> i64 {
    let e = e as i64;
    let n = n as i64;
    if 2 * e > n {
        e - n
    } else {
        e
    }
}

fn cyclic_monomial(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        -1 => format!("1/{var}"),
        e if e > 0 => format!("{var}^{e}"),
        e => format!("1/{var}^{}", -e),
    }
}

/// Renders with `z^j` / `1/z^j` notation in rank 1 and `z1^a*z2^b` (signed
/// exponents) in higher rank; generic groups print `g<index>` terms.
impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // (sort key, monomial text, coefficient)
        type Piece = ((i64, i64, Vec<i64>), String, i64);
        let mut pieces: Vec<Piece> = Vec::new();
        for (g, c) in self.terms() {
            let (key, mono) = match &self.group {
                Group::Abelian(a) => {
                    let exps: Vec<i64> = a
                        .coords(g)
                        .iter()
                        .zip(a.orders())
                        .map(|(&x, &n)| signed_exponent(x, n))
                        .collect();
                    let mono = if a.rank() == 1 {
                        cyclic_monomial("z", exps[0])
                    } else {
                        exps.iter()
                            .enumerate()
                            .filter(|(_, &e)| e != 0)
                            .map(|(i, &e)| {
                                if e == 1 {
                                    format!("z{}", i + 1)
                                } else {
                                    format!("z{}^{}", i + 1, e)
                                }
                            })
                            .collect::<Vec<_>>()
                            .join("*")
                    };
                    let total: i64 = exps.iter().map(|e| e.abs()).sum();
                    let neg = exps
                        .iter()
                        .find(|&&e| e != 0)
                        .map_or(0, |&e| i64::from(e < 0));
                    ((total, neg, exps.iter().map(|e| e.abs()).collect()), mono)
                }
                Group::Generic(gg) => {
                    let mono = if g == gg.identity() {
                        String::new()
                    } else {
                        format!("g{g}")
                    };
                    ((i64::from(g != gg.identity()), 0, vec![g as i64]), mono)
                }
            };
            pieces.push((key, mono, c));
        }
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (_, mono, c)) in pieces.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            let body = match (mono.is_empty(), mag) {
                (true, m) => m.to_string(),
                (false, 1) => mono.clone(),
                (false, m) => format!("{m}{mono}"),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

//! Eigenvalue multisets with grouped multiplicities.

use std::cmp::Ordering;
use std::fmt;

use crate::linalg::{format_real, C64};

/// Eigenvalues closer than this are reported as one value with multiplicity.
pub const GROUPING_TOL: f64 = 1e-6;

/// Real part descending, then imaginary part ascending.
pub fn spectral_order(a: &C64, b: &C64) -> Ordering {
    b.re.total_cmp(&a.re).then(a.im.total_cmp(&b.im))
}

/// A multiset of complex eigenvalues. Raw values are kept sorted; grouped
/// `(value, multiplicity)` entries are derived with the grouping tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<C64>,
    groups: Vec<(C64, usize)>,
    tol: f64,
}

impl Spectrum {
    pub fn new(values: Vec<C64>) -> Self {
        Self::with_tolerance(values, GROUPING_TOL)
    }

    pub fn with_tolerance(mut values: Vec<C64>, tol: f64) -> Self {
        values.sort_by(spectral_order);
        let groups = group(&values, tol);
        Spectrum {
            values,
            groups,
            tol,
        }
    }

    pub fn from_real(values: impl IntoIterator<Item = f64>) -> Self {
        Self::new(values.into_iter().map(|x| C64::new(x, 0.0)).collect())
    }

    /// Expands `(value, multiplicity)` pairs.
    pub fn from_multiplicities(entries: &[(f64, usize)]) -> Self {
        Self::from_real(entries.iter().flat_map(|&(x, m)| std::iter::repeat_n(x, m)))
    }

    pub fn from_complex_multiplicities(entries: &[(C64, usize)]) -> Self {
        Self::new(
            entries
                .iter()
                .flat_map(|&(x, m)| std::iter::repeat_n(x, m))
                .collect(),
        )
    }

    pub fn union<'a>(parts: impl IntoIterator<Item = &'a Spectrum>) -> Self {
        Self::new(
            parts
                .into_iter()
                .flat_map(|s| s.values.iter().copied())
                .collect(),
        )
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn groups(&self) -> &[(C64, usize)] {
        &self.groups
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn trace(&self) -> C64 {
        self.values.iter().sum()
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn min_real(&self) -> Option<f64> {
        self.values.iter().map(|z| z.re).min_by(f64::total_cmp)
    }

    pub fn max_real(&self) -> Option<f64> {
        self.values.iter().map(|z| z.re).max_by(f64::total_cmp)
    }

    /// Every value mapped through `f`.
    pub fn map(&self, f: impl Fn(C64) -> C64) -> Spectrum {
        Self::with_tolerance(self.values.iter().map(|&z| f(z)).collect(), self.tol)
    }

    /// `re,im,multiplicity` rows after grouping.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,multiplicity\n");
        for (z, m) in &self.groups {
            out.push_str(&format!(
                "{},{},{}\n",
                format_real(z.re),
                format_real(z.im),
                m
            ));
        }
        out
    }
}

/// Cluster-based grouping of sorted values: each value joins the first
/// existing group whose centre is within `tol`; centres are running means.
fn group(values: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut groups: Vec<(C64, C64, usize)> = Vec::new();
    for &z in values {
        match groups.iter_mut().find(|(c, _, _)| (*c - z).norm() < tol) {
            Some(g) => {
                g.1 += z;
                g.2 += 1;
                g.0 = g.1 / g.2 as f64;
            }
            None => groups.push((z, z, 1)),
        }
    }
    let mut out: Vec<(C64, usize)> = groups.into_iter().map(|(c, _, m)| (c, m)).collect();
    out.sort_by(|a, b| spectral_order(&a.0, &b.0));
    out
}

/// Formats a complex value for display: real values print without an imaginary part.
pub fn format_complex(z: C64) -> String {
    let re = format_real(z.re);
    if z.im.abs() < 1e-11 {
        return re;
    }
    let im = format_real(z.im.abs());
    let sign = if z.im < 0.0 { '-' } else { '+' };
    if re == "0" {
        format!("{}{im}i", if z.im < 0.0 { "-" } else { "" })
    } else {
        format!("{re}{sign}{im}i")
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|&(z, m)| {
                if m == 1 {
                    format_complex(z)
                } else {
                    format!("{}^{m}", format_complex(z))
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Outcome of a multiset comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub equal: bool,
    /// Largest distance between paired values; infinite when the sizes differ.
    pub max_distance: f64,
}

/// Pairs each value of `a` (in spectral order) with the nearest unused value
/// of `b` and reports the largest pair distance.
pub fn multiset_equal(a: &Spectrum, b: &Spectrum, tol: f64) -> Comparison {
    if a.len() != b.len() {
        return Comparison {
            equal: false,
            max_distance: f64::INFINITY,
        };
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for z in a.values() {
        let mut best: Option<(usize, f64)> = None;
        for (j, w) in b.values().iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (z - w).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("sizes match");
        used[j] = true;
        worst = worst.max(d);
    }
    Comparison {
        equal: worst <= tol,
        max_distance: worst,
    }
}

use std::f64::consts::TAU;
use std::fmt;

use crate::linalg::C64;

use super::{AlgebraError, Group};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A character of `Z_{n1} x ... x Z_{nr}`, indexed by `(j1, ..., jr)`:
/// `g -> prod_k exp(2 pi i j_k g_k / n_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    group: Group,
    index: Vec<usize>,
    /// lcm of the factor orders; values are `exp(2 pi i p / period)`.
    period: usize,
}

impl Character {
    pub fn new(group: &Group, index: &[usize]) -> Result<Self, AlgebraError> {
        let a = group.as_abelian().ok_or(AlgebraError::NotAbelian)?;
        if index.len() != a.rank() {
            return Err(AlgebraError::RankMismatch {
                expected: a.rank(),
                got: index.len(),
            });
        }
        let index: Vec<usize> = index.iter().zip(a.orders()).map(|(&j, &n)| j % n).collect();
        let period = a.orders().iter().fold(1, |l, &n| l / gcd(l, n) * n);
        Ok(Character {
            group: group.clone(),
            index,
            period,
        })
    }

    pub fn trivial(group: &Group) -> Result<Self, AlgebraError> {
        let rank = group.as_abelian().ok_or(AlgebraError::NotAbelian)?.rank();
        Self::new(group, &vec![0; rank])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn index(&self) -> &[usize] {
        &self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index.iter().all(|&j| j == 0)
    }

    /// The complex-conjugate character (index `-j`).
    pub fn conjugate(&self) -> Character {
        let a = self
            .group
            .as_abelian()
            .expect("characters live on abelian groups");
        let index: Vec<usize> = self
            .index
            .iter()
            .zip(a.orders())
            .map(|(&j, &n)| (n - j) % n)
            .collect();
        Character {
            group: self.group.clone(),
            index,
            period: self.period,
        }
    }

    /// Phase numerator `p` with `chi(g) = exp(2 pi i p / period)`.
    fn phase(&self, element: usize) -> usize {
        let a = self
            .group
            .as_abelian()
            .expect("characters live on abelian groups");
        let coords = a.coords(element);
        let mut p = 0usize;
        for ((&j, &g), &n) in self.index.iter().zip(&coords).zip(a.orders()) {
            p = (p + (j * g % n) * (self.period / n)) % self.period;
        }
        p
    }

    pub fn value(&self, element: usize) -> C64 {
        root_of_unity(self.phase(element), self.period)
    }

    /// Values on every group element, in enumeration order.
    pub fn values(&self) -> Vec<C64> {
        (0..self.group.order()).map(|g| self.value(g)).collect()
    }
}

/// `exp(2 pi i p / q)`, with `conj(w^p) == w^(q-p)` holding bit for bit.
pub fn root_of_unity(p: usize, q: usize) -> C64 {
    let p = p % q;
    if p == 0 {
        return C64::new(1.0, 0.0);
    }
    if 2 * p > q {
        return root_of_unity(q - p, q).conj();
    }
    if 2 * p == q {
        return C64::new(-1.0, 0.0);
    }
    if 4 * p == q {
        return C64::new(0.0, 1.0);
    }
    let theta = TAU * p as f64 / q as f64;
    C64::new(theta.cos(), theta.sin())
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index.len() == 1 {
            write!(f, "{}", self.index[0])
        } else {
            let parts: Vec<String> = self.index.iter().map(|j| j.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// Every character of an abelian group, in lexicographic index order.
pub fn enumerate_characters(group: &Group) -> Result<Vec<Character>, AlgebraError> {
    let a = group.as_abelian().ok_or(AlgebraError::NotAbelian)?;
    (0..a.size())
        .map(|i| Character::new(group, &a.coords(i)))
        .collect()
}

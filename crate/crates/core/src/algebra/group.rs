use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Orders at or below this bound get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY_MAX: usize = 64;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;

/// `Z_{n1} x ... x Z_{nr}`, elements enumerated lexicographically by coordinates
/// (first coordinate most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl AbelianGroup {
    pub fn new(orders: &[usize]) -> Result<Self, AlgebraError> {
        if orders.is_empty() {
            return Err(AlgebraError::InvalidOrder(0));
        }
        if let Some(&bad) = orders.iter().find(|&&n| n == 0) {
            return Err(AlgebraError::InvalidOrder(bad));
        }
        let mut strides = vec![1; orders.len()];
        for i in (0..orders.len() - 1).rev() {
            strides[i] = strides[i + 1] * orders[i + 1];
        }
        Ok(AbelianGroup {
            orders: orders.to_vec(),
            size: orders.iter().product(),
            strides,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self, AlgebraError> {
        Self::new(&[n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (index / s) % n)
            .collect()
    }

    /// Index of the element with the given (possibly unreduced, possibly negative) coordinates.
    pub fn index_of(&self, coords: &[i64]) -> Result<usize, AlgebraError> {
        if coords.len() != self.rank() {
            return Err(AlgebraError::RankMismatch {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        Ok(coords
            .iter()
            .zip(self.orders.iter().zip(&self.strides))
            .map(|(&c, (&n, &s))| (c.rem_euclid(n as i64) as usize) * s)
            .sum())
    }

    fn combine(&self, a: usize, b: usize, sign: i64) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let x = (a / s) % n;
            let y = (b / s) % n;
            let z = if sign > 0 {
                (x + y) % n
            } else {
                (x + n - y) % n
            };
            out += z * s;
        }
        out
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, 1)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.combine(0, a, -1)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericGroup {
    size: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    name: Option<String>,
}

/// JSON form: `{"size": n, "table": [row-major indices], "name": optional}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenericGroupSpec {
    pub size: usize,
    pub table: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GenericGroup {
    /// Validates the table: Latin square, two-sided identity, associativity
    /// (exhaustive up to order 64, 10^4 sampled triples above).
    pub fn from_table(
        size: usize,
        table: Vec<usize>,
        name: Option<String>,
    ) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::InvalidOrder(0));
        }
        if table.len() != size * size {
            return Err(AlgebraError::InvalidTable(format!(
                "expected {} entries, found {}",
                size * size,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= size) {
            return Err(AlgebraError::InvalidTable(format!(
                "entry {bad} out of range"
            )));
        }
        let at = |a: usize, b: usize| table[a * size + b];
        for a in 0..size {
            let mut row = vec![false; size];
            let mut col = vec![false; size];
            for b in 0..size {
                row[at(a, b)] = true;
                col[at(b, a)] = true;
            }
            if row.iter().chain(&col).any(|seen| !seen) {
                return Err(AlgebraError::InvalidTable(format!(
                    "row/column {a} is not a permutation (not a Latin square)"
                )));
            }
        }
        let identity = (0..size)
            .find(|&e| (0..size).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| AlgebraError::InvalidTable("no identity element".into()))?;
        let mut inverses = vec![0; size];
        for (a, inv) in inverses.iter_mut().enumerate() {
            let b = (0..size)
                .find(|&b| at(a, b) == identity)
                .expect("Latin square has an inverse in every row");
            if at(b, a) != identity {
                return Err(AlgebraError::InvalidTable(format!(
                    "left and right inverses of {a} differ"
                )));
            }
            *inv = b;
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if size <= EXHAUSTIVE_ASSOCIATIVITY_MAX {
            for a in 0..size {
                for b in 0..size {
                    for c in 0..size {
                        if !assoc(a, b, c) {
                            return Err(AlgebraError::InvalidTable(format!(
                                "not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(size as u64);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..size),
                    rng.gen_range(0..size),
                    rng.gen_range(0..size),
                );
                if !assoc(a, b, c) {
                    return Err(AlgebraError::InvalidTable(format!(
                        "not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(GenericGroup {
            size,
            table,
            identity,
            inverses,
            name,
        })
    }

    pub fn from_spec(spec: GenericGroupSpec) -> Result<Self, AlgebraError> {
        Self::from_table(spec.size, spec.table, spec.name)
    }

    pub fn to_spec(&self) -> GenericGroupSpec {
        GenericGroupSpec {
            size: self.size,
            table: self.table.clone(),
            name: self.name.clone(),
        }
    }

    /// The multiplication table of any group, re-read as a generic group.
    pub fn from_group(group: &Group) -> Self {
        let n = group.order();
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| group.op(a, b))
            .collect();
        Self::from_table(n, table, Some(group.to_string())).expect("group tables are valid")
    }

    /// Symmetric group on three letters, elements as permutations of `[0,1,2]`
    /// listed lexicographically.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let mut table = Vec::with_capacity(36);
        for a in &perms {
            for b in &perms {
                // (a*b)(x) = a(b(x))
                table.push(index([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        Self::from_table(6, table, Some("S3".into())).unwrap()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// A finite group; cheap to clone.
#[derive(Debug, Clone)]
pub enum Group {
    Abelian(Arc<AbelianGroup>),
    Generic(Arc<GenericGroup>),
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Group::Abelian(a), Group::Abelian(b)) => Arc::ptr_eq(a, b) || a == b,
            (Group::Generic(a), Group::Generic(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Group {}

impl From<AbelianGroup> for Group {
    fn from(g: AbelianGroup) -> Self {
        Group::Abelian(Arc::new(g))
    }
}

impl From<GenericGroup> for Group {
    fn from(g: GenericGroup) -> Self {
        Group::Generic(Arc::new(g))
    }
}

impl Group {
    pub fn abelian(orders: &[usize]) -> Result<Self, AlgebraError> {
        AbelianGroup::new(orders).map(Group::from)
    }

    pub fn cyclic(n: usize) -> Result<Self, AlgebraError> {
        Self::abelian(&[n])
    }

    pub fn order(&self) -> usize {
        match self {
            Group::Abelian(g) => g.size(),
            Group::Generic(g) => g.size(),
        }
    }

    pub fn identity(&self) -> usize {
        match self {
            Group::Abelian(_) => 0,
            Group::Generic(g) => g.identity(),
        }
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        match self {
            Group::Abelian(g) => g.op(a, b),
            Group::Generic(g) => g.op(a, b),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match self {
            Group::Abelian(g) => g.inv(a),
            Group::Generic(g) => g.inv(a),
        }
    }

    pub fn as_abelian(&self) -> Option<&AbelianGroup> {
        match self {
            Group::Abelian(g) => Some(g),
            Group::Generic(_) => None,
        }
    }

    pub fn element(&self, index: usize) -> GroupElement {
        assert!(index < self.order(), "element index {index} out of range");
        GroupElement {
            group: self.clone(),
            index,
        }
    }

    /// Coordinates for abelian groups; the single table index for generic groups.
    pub fn element_from_coords(&self, coords: &[i64]) -> Result<GroupElement, AlgebraError> {
        let index = match self {
            Group::Abelian(g) => g.index_of(coords)?,
            Group::Generic(g) => match coords {
                [i] if *i >= 0 && (*i as usize) < g.size() => *i as usize,
                [_] => {
                    return Err(AlgebraError::InvalidTable(format!(
                        "element {coords:?} out of range"
                    )))
                }
                _ => {
                    return Err(AlgebraError::RankMismatch {
                        expected: 1,
                        got: coords.len(),
                    })
                }
            },
        };
        Ok(self.element(index))
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        match self {
            Group::Abelian(g) => g.coords(index),
            Group::Generic(_) => vec![index],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, AlgebraError> {
        if a.group != *self || b.group != *self {
            return Err(AlgebraError::MismatchedGroups);
        }
        Ok(self.element(self.op(a.index, b.index)))
    }

    /// Compact element label: concatenated digits when every factor has order
    /// at most 10 (`"21"` for (2,1)), a bracketed tuple otherwise.
    pub fn label(&self, index: usize) -> String {
        match self {
            Group::Abelian(g) => {
                let c = g.coords(index);
                if g.rank() == 1 {
                    c[0].to_string()
                } else if g.orders().iter().all(|&n| n <= 10) {
                    c.iter().map(|x| x.to_string()).collect()
                } else {
                    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    format!("({})", parts.join(","))
                }
            }
            Group::Generic(_) => index.to_string(),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Abelian(g) => write!(f, "{g}"),
            Group::Generic(g) => match g.name() {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "G{}", g.size()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    group: Group,
    index: usize,
}

impl GroupElement {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> Vec<usize> {
        self.group.coords(self.index)
    }

    pub fn inverse(&self) -> GroupElement {
        self.group.element(self.group.inv(self.index))
    }

    pub fn is_identity(&self) -> bool {
        self.index == self.group.identity()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group.label(self.index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_addition_wraps() {
        let z5 = Group::cyclic(5).unwrap();
        let s = z5.mul(&z5.element(3), &z5.element(4)).unwrap();
        assert_eq!(s.index(), 2);
    }

    #[test]
    fn product_group_inverse_pair() {
        let g = Group::abelian(&[3, 3]).unwrap();
        let a = g.element_from_coords(&[2, 1]).unwrap();
        let b = g.element_from_coords(&[1, 2]).unwrap();
        let c = g.mul(&a, &b).unwrap();
        assert!(c.is_identity());
        assert_eq!(c.coords(), vec![0, 0]);
    }

    #[test]
    fn generic_table_agrees_with_abelian() {
        let z5 = Group::cyclic(5).unwrap();
        let generic: Group = GenericGroup::from_group(&z5).into();
        assert_eq!(generic.op(3, 4), 2);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(generic.op(a, b), z5.op(a, b));
            }
        }
    }

    #[test]
    fn mismatched_groups_rejected() {
        let z5 = Group::cyclic(5).unwrap();
        let z7 = Group::cyclic(7).unwrap();
        assert_eq!(
            z5.mul(&z5.element(1), &z7.element(1)),
            Err(AlgebraError::MismatchedGroups)
        );
    }

    #[test]
    fn coordinates_normalize() {
        let g = Group::abelian(&[3, 4]).unwrap();
        let e = g.element_from_coords(&[-1, 9]).unwrap();
        assert_eq!(e.coords(), vec![2, 1]);
        assert_eq!(e.index(), 2 * 4 + 1);
        assert_eq!(g.label(e.index()), "21");
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(
            AbelianGroup::new(&[3, 0]),
            Err(AlgebraError::InvalidOrder(0))
        );
        assert!(AbelianGroup::new(&[]).is_err());
    }

    #[test]
    fn table_validation() {
        // Not a Latin square.
        assert!(GenericGroup::from_table(2, vec![0, 0, 1, 1], None).is_err());
        // Order-5 loop where every element is its own inverse; no such group exists.
        let loop5 = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let err = GenericGroup::from_table(5, loop5, None).unwrap_err();
        assert!(matches!(err, AlgebraError::InvalidTable(_)));
    }

    #[test]
    fn symmetric_group_is_nonabelian() {
        let s3: Group = GenericGroup::symmetric3().into();
        assert_eq!(s3.order(), 6);
        let commutes = (0..6).all(|a| (0..6).all(|b| s3.op(a, b) == s3.op(b, a)));
        assert!(!commutes);
        for a in 0..6 {
            assert_eq!(s3.op(a, s3.inv(a)), s3.identity());
        }
    }

    #[test]
    fn large_generic_group_uses_sampling() {
        let z70 = Group::cyclic(70).unwrap();
        let g = GenericGroup::from_group(&z70);
        assert_eq!(g.size(), 70);
        assert_eq!(g.op(69, 2), 1);
    }
}

//! Finite groups, group-algebra elements (base-matrix entries), abelian
//! characters and user-supplied unitary representations.

mod character;
mod element;
mod group;
mod representation;

use thiserror::Error;

pub use character::{enumerate_characters, root_of_unity, Character};
pub use element::GroupAlgebraElement;
pub use group::{AbelianGroup, GenericGroup, GenericGroupSpec, Group, GroupElement};
pub use representation::{
    check_representation, completeness_warning, symmetric3_irreps, Representation,
    RepresentationJson, RepresentationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different groups")]
    MismatchedGroups,
    #[error("invalid cyclic factor order {0}")]
    InvalidOrder(usize),
    #[error("expected {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("group is not given as a product of cyclic groups")]
    NotAbelian,
    #[error("incomplete representation: {0}")]
    IncompleteRepresentation(String),
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::linalg::C64;

    type Terms = Vec<(usize, i64)>;

    fn group_and_elements() -> impl Strategy<Value = (Vec<usize>, Terms, Terms, usize)> {
        prop::collection::vec(1usize..6, 1..3).prop_flat_map(|orders| {
            let n: usize = orders.iter().product();
            let term = (0..n, -3i64..4);
            (
                Just(orders),
                prop::collection::vec(term.clone(), 0..6),
                prop::collection::vec(term, 0..6),
                0..n,
            )
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative((orders, p, q, chi_idx) in group_and_elements()) {
            let g = Group::abelian(&orders).unwrap();
            let p = GroupAlgebraElement::from_terms(&g, p);
            let q = GroupAlgebraElement::from_terms(&g, q);
            let chi = enumerate_characters(&g).unwrap().swap_remove(chi_idx);
            let lhs = p.mul(&q).unwrap().evaluate(&chi).unwrap();
            let rhs = p.evaluate(&chi).unwrap() * q.evaluate(&chi).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
        }

        #[test]
        fn character_orthogonality(orders in prop::collection::vec(1usize..8, 1..4)) {
            let g = Group::abelian(&orders).unwrap();
            for chi in enumerate_characters(&g).unwrap() {
                let total: C64 = chi.values().into_iter().sum();
                if chi.is_trivial() {
                    prop_assert!((total - C64::new(g.order() as f64, 0.0)).norm() < 1e-10);
                } else {
                    prop_assert!(total.norm() < 1e-10);
                }
            }
        }

        #[test]
        fn generic_copy_agrees(orders in prop::collection::vec(1usize..6, 1..3)) {
            let g = Group::abelian(&orders).unwrap();
            let generic: Group = GenericGroup::from_group(&g).into();
            for a in 0..g.order() {
                prop_assert_eq!(generic.inv(a), g.inv(a));
                for b in 0..g.order() {
                    prop_assert_eq!(generic.op(a, b), g.op(a, b));
                }
            }
        }
    }
}

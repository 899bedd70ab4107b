//! Independent cross-checks: nalgebra eigenvalues against the in-crate
//! kernel, and base-matrix spectra against dense spectra of the lift.

mod common;

use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use voltlift::algebra::{enumerate_characters, symmetric3_irreps, Representation};
use voltlift::exec::Execution;
use voltlift::graph::{complete_graph, UniversalCoefficients};
use voltlift::linalg::{CMatrix, C64};
use voltlift::spectra::{eigenpairs, eigenvalues, lift_spectrum_detail, residual};
use voltlift::{
    direct_spectrum, johnson_spectrum, lift_spectrum, multiset_equal, rep_spectrum, token_graph,
    GenericGroup, Group, Spectrum,
};

fn to_nalgebra(m: &CMatrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

fn oracle_hermitian(m: &CMatrix) -> Spectrum {
    let e = to_nalgebra(m).symmetric_eigen();
    Spectrum::from_real(e.eigenvalues.iter().copied())
}

/// `None` when nalgebra's Schur iteration does not converge within its budget.
fn oracle_general(m: &CMatrix) -> Option<Spectrum> {
    let s = to_nalgebra(m).try_schur(1e-15, 20_000)?;
    let (_, t) = s.unpack();
    Some(Spectrum::new((0..t.nrows()).map(|i| t[(i, i)]).collect()))
}

/// `max_p |tr(M^p) - sum lambda^p|` for `p = 1..=max_power`, relative to the size of the terms.
fn power_sum_defect(m: &CMatrix, spec: &Spectrum, max_power: u32) -> f64 {
    let mut power = m.clone();
    let mut worst: f64 = 0.0;
    for p in 1..=max_power {
        let from_values: C64 = spec.values().iter().map(|z| z.powu(p)).sum();
        let scale = 1.0
            + spec
                .values()
                .iter()
                .map(|z| z.norm().powi(p as i32))
                .sum::<f64>();
        worst = worst.max((power.trace() - from_values).norm() / scale);
        power = power.matmul(m);
    }
    worst
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    use rand::Rng;
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = C64::new(rng.gen_range(-3.0..3.0), 0.0);
        for j in i + 1..n {
            let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

#[test]
fn kernel_agrees_with_nalgebra_on_hermitian_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [1, 2, 3, 5, 8, 13, 30, 64] {
        let m = random_hermitian(&mut rng, n);
        let ours = Spectrum::new(eigenvalues(&m).unwrap());
        let r = multiset_equal(&ours, &oracle_hermitian(&m), 1e-9);
        assert!(r.equal, "n={n}: distance {}", r.max_distance);
    }
}

#[test]
fn kernel_agrees_with_nalgebra_on_general_matrices() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3, 4, 7, 12, 25, 40] {
        let m = CMatrix::from_fn(n, n, |_, _| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let ours = Spectrum::new(eigenvalues(&m).unwrap());
        let r = multiset_equal(&ours, &oracle_general(&m).unwrap(), 1e-8);
        assert!(r.equal, "n={n}: distance {}", r.max_distance);
        for p in eigenpairs(&m).unwrap() {
            assert!(residual(&m, p.value, &p.vector) < 1e-8);
        }
    }
}

#[test]
fn johnson_token_graphs_against_nalgebra() {
    for (n, k) in [(6, 2), (8, 3), (9, 4)] {
        let g = token_graph(&complete_graph(n), k).unwrap();
        let m = g.adjacency_matrix().to_complex();
        let r = multiset_equal(
            &oracle_hermitian(&m),
            &johnson_spectrum(n, k).unwrap(),
            1e-8,
        );
        assert!(r.equal, "J({n},{k})");
    }
}

#[test]
fn character_sum_equals_dense_lift_spectrum_for_seeded_digraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..30 {
        let group = common::random_abelian(&mut rng, 12);
        let vg = common::random_directed(&mut rng, &group, 4, 8);
        let lift = lift_spectrum(&vg).unwrap();
        let a = vg.lift().digraph().adjacency_matrix().to_complex();
        assert!(power_sum_defect(&a, &lift, 8) < 1e-9, "{}", vg.group());
        // Directed lifts may be defective; the comparison tolerance reflects
        // eigenvalue conditioning, not the identity itself.
        if let Some(oracle) = oracle_general(&a) {
            let r = multiset_equal(&lift, &oracle, 1e-4);
            assert!(r.equal, "{}: distance {}", vg.group(), r.max_distance);
        }
    }
}

#[test]
fn symmetric_group_token_base_via_representations() {
    let s3: Group = GenericGroup::symmetric3().into();
    let irreps = symmetric3_irreps(&s3);
    // The two 3-cycles; transpositions would produce semi-edges at k = 5.
    let conn = [3, 4];
    let elems: Vec<_> = conn.iter().map(|&i| s3.element(i)).collect();
    let cay = voltlift::graph::cayley_graph(&s3, &elems).unwrap();
    let dec = voltlift::orbits::k_set_decomposition(&s3, 5).unwrap();
    assert_eq!(dec.len(), 1);
    let vg = voltlift::orbits::token_base_graph_with(&dec, &conn, Execution::Sequential).unwrap();
    let target = token_graph(&cay, 5).unwrap();
    assert!(voltlift::verify_natural_isomorphism(&vg, &target.clone().into()).is_certificate());
    let rep = rep_spectrum(&vg, &irreps).unwrap();
    let direct = direct_spectrum(target.digraph(), UniversalCoefficients::adjacency()).unwrap();
    assert!(multiset_equal(&rep, &direct, 1e-9).equal);
    let semi = voltlift::orbits::token_base_graph_with(&dec, &[1, 2, 5], Execution::Sequential);
    assert!(matches!(
        semi,
        Err(voltlift::OrbitError::Voltage(
            voltlift::VoltageError::InvalidPairing(_)
        ))
    ));
    assert!(matches!(
        voltlift::orbits::k_set_decomposition(&s3, 2),
        Err(voltlift::OrbitError::NotFreeAction { .. })
    ));
}

#[test]
fn random_symmetric_group_voltage_graphs() {
    let s3: Group = GenericGroup::symmetric3().into();
    let irreps = symmetric3_irreps(&s3);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..20 {
        let vg = common::random_undirected(&mut rng, &s3, 5, 12);
        let rep = rep_spectrum(&vg, &irreps).unwrap();
        let direct =
            direct_spectrum(vg.lift().digraph(), UniversalCoefficients::adjacency()).unwrap();
        let r = multiset_equal(&rep, &direct, 1e-8);
        assert!(r.equal, "distance {}", r.max_distance);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn lift_spectrum_matches_direct_spectrum(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = common::random_abelian(&mut rng, 24);
        let vg = common::random_undirected(&mut rng, &group, 6, 14);
        let lift = lift_spectrum(&vg).unwrap();
        let direct = direct_spectrum(vg.lift().digraph(), UniversalCoefficients::adjacency()).unwrap();
        let r = multiset_equal(&lift, &direct, 1e-8);
        prop_assert!(r.equal, "distance {}", r.max_distance);
        prop_assert!(lift.max_abs_imag() < 1e-9);
    }

    #[test]
    fn lifted_eigenvectors_are_eigenvectors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = common::random_abelian(&mut rng, 24);
        let vg = common::random_undirected(&mut rng, &group, 6, 14);
        let a = vg.lift().digraph().adjacency_matrix().to_complex();
        let b = vg.base_matrix();
        for chi in enumerate_characters(&group).unwrap() {
            for p in eigenpairs(&b.evaluate(&chi).unwrap()).unwrap() {
                let phi = vg.lift_eigenvector(&p.vector, &chi).unwrap();
                prop_assert!(residual(&a, p.value, &phi.values) < 1e-8);
            }
        }
    }

    #[test]
    fn characters_as_representations_reproduce_lift_spectrum(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = common::random_abelian(&mut rng, 16);
        let vg = common::random_undirected(&mut rng, &group, 5, 12);
        let irreps: Vec<Representation> = enumerate_characters(&group)
            .unwrap()
            .iter()
            .map(Representation::from_character)
            .collect();
        let r = multiset_equal(&rep_spectrum(&vg, &irreps).unwrap(), &lift_spectrum(&vg).unwrap(), 1e-10);
        prop_assert!(r.equal, "distance {}", r.max_distance);
    }

    #[test]
    fn universal_spectra_through_the_base(seed in any::<u64>(), c1 in 0.5f64..3.0, c2 in -2.0f64..2.0, c3 in -2.0f64..2.0, c4 in -1.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let group = common::random_abelian(&mut rng, 12);
        let vg = common::random_undirected(&mut rng, &group, 4, 10);
        let c = UniversalCoefficients::new(c1, c2, c3, c4).unwrap();
        let via_base = lift_spectrum_detail(&vg, c, Execution::default()).unwrap().total;
        let direct = direct_spectrum(vg.lift().digraph(), c).unwrap();
        let r = multiset_equal(&via_base, &direct, 1e-8);
        prop_assert!(r.equal, "distance {}", r.max_distance);
    }
}

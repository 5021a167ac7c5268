mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use steklov::harmonics::{
    check_reality, coeff_conjugate_transform, eval_harmonic, multiplicity, sphere_area,
    sphere_quadrature, triple_product, wigner_3j, Angles, Basis, CoeffMap, Direction,
    HarmonicIndex, TripleMethod, C64,
};

#[test]
fn multiplicity_and_area() {
    assert_eq!(multiplicity(0, 5).unwrap(), 1);
    assert_eq!(multiplicity(3, 2).unwrap(), 2);
    assert_eq!(multiplicity(2, 3).unwrap(), 5);
    assert_eq!(multiplicity(2, 4).unwrap(), 9);
    assert!(multiplicity(1, 1).is_err());
    assert!((sphere_area(2).unwrap() - 2.0 * PI).abs() < 1e-15);
    assert!((sphere_area(3).unwrap() - 4.0 * PI).abs() < 1e-15);
    assert!((sphere_area(4).unwrap() - 2.0 * PI * PI).abs() < 1e-14);
    assert!(sphere_area(1).is_err());
}

#[test]
fn index_counts_match_multiplicity() {
    for d in [2, 3] {
        for l in 0..12 {
            let n = HarmonicIndex::degree_indices(l, d).unwrap().len() as u64;
            assert_eq!(n, multiplicity(l, d).unwrap());
        }
    }
}

#[test]
fn addition_theorem() {
    for d in [2, 3] {
        let e = common::addition_theorem_error(d, 10, 100, 7);
        assert!(e < 1e-12, "d={d}: {e:e}");
    }
}

#[test]
fn gram_identity() {
    for d in [2, 3] {
        for basis in [Basis::Complex, Basis::Real] {
            let e = common::gram_error(d, 8, basis);
            assert!(e < 1e-12, "d={d} {basis:?}: {e:e}");
        }
    }
}

#[test]
fn integrals_of_basis_elements() {
    for d in [2, 3] {
        assert!(common::integral_error(d, 8) < 1e-12);
    }
}

#[test]
fn conjugation_relation() {
    assert!(common::conjugation_error(8, 50, 11) < 1e-14);
}

#[test]
fn gradient_triple_identity() {
    for d in [2, 3] {
        let e = common::gradient_identity_error(d, 4);
        assert!(e < 1e-10, "d={d}: {e:e}");
    }
}

#[test]
fn selection_rules() {
    for d in [2, 3] {
        assert!(common::selection_rule_error(d, 3) < 1e-12);
    }
}

#[test]
fn wigner_matches_exact_rationals() {
    let (e, count) = common::wigner_oracle_error(10);
    assert!(count > 10_000);
    assert!(e < 1e-13, "{e:e}");
    assert!((wigner_3j(1, 1, 0, 0, 0, 0) + 1.0 / 3f64.sqrt()).abs() < 1e-15);
    assert!((wigner_3j(2, 2, 0, 0, 0, 0) - 1.0 / 5f64.sqrt()).abs() < 1e-15);
    assert_eq!(wigner_3j(1, 1, 1, 0, 0, 0), 0.0);
}

#[test]
fn triple_product_methods_agree() {
    assert!(common::triple_methods_error(2, 8, 0, 0) < 1e-12);
    assert!(common::triple_methods_error(3, 8, 300, 5) < 1e-12);
}

#[test]
fn triple_product_examples() {
    for d in [2, 3] {
        let a = HarmonicIndex::degree_indices(2, d).unwrap()[0];
        let t = triple_product(
            a,
            a,
            HarmonicIndex::constant(d),
            d,
            TripleMethod::ClosedForm,
        )
        .unwrap();
        assert!((t.re - 1.0 / sphere_area(d).unwrap().sqrt()).abs() < 1e-15);
    }
    let z = HarmonicIndex::new(2, 0);
    let t = triple_product(z, z, HarmonicIndex::new(1, 0), 3, TripleMethod::ClosedForm).unwrap();
    assert_eq!(t.norm(), 0.0);
    let (a, c) = (HarmonicIndex::new(1, 0), HarmonicIndex::new(2, 0));
    let x = triple_product(a, a, c, 3, TripleMethod::ClosedForm).unwrap();
    let y = triple_product(a, a, c, 3, TripleMethod::Quadrature).unwrap();
    assert!(x.re > 0.1 && (x - y).norm() < 1e-14);
}

#[test]
fn quadrature_examples() {
    let r = sphere_quadrature(2, 0).unwrap();
    assert!((r.weights.iter().sum::<f64>() - 2.0 * PI).abs() < 1e-14);
    let r = sphere_quadrature(3, 16).unwrap();
    let y = |i| move |a: Angles| eval_harmonic(i, 3, a, Basis::Complex).unwrap();
    assert!(r.integrate(y(HarmonicIndex::new(8, 3))).norm() < 1e-13);
    let f = y(HarmonicIndex::new(5, 2));
    assert!((r.integrate_real(|a| f(a).norm_sqr()) - 1.0).abs() < 1e-13);
}

#[test]
fn eval_examples() {
    let a = Angles::sphere(0.7, 2.1);
    let c = eval_harmonic(HarmonicIndex::new(0, 0), 3, a, Basis::Complex).unwrap();
    assert!((c.re - 1.0 / (4.0 * PI).sqrt()).abs() < 1e-15 && c.im == 0.0);
    let c = eval_harmonic(
        HarmonicIndex::new(1, 0),
        3,
        Angles::sphere(0.0, 0.0),
        Basis::Complex,
    )
    .unwrap();
    assert!((c.re - (3.0 / (4.0 * PI)).sqrt()).abs() < 1e-15);
    let c = eval_harmonic(
        HarmonicIndex::new(2, 1),
        2,
        Angles::circle(PI / 2.0),
        Basis::Complex,
    )
    .unwrap();
    assert!((c - C64::new(-1.0 / (2.0 * PI).sqrt(), 0.0)).norm() < 1e-15);
    assert!(eval_harmonic(HarmonicIndex::new(1, 3), 3, a, Basis::Complex).is_err());
    assert!(eval_harmonic(HarmonicIndex::new(0, 0), 4, a, Basis::Complex).is_err());
}

#[test]
fn transform_examples() {
    let mut c = CoeffMap::new();
    c.insert(HarmonicIndex::new(0, 1), C64::new(3.0, 0.0));
    assert_eq!(
        coeff_conjugate_transform(&c, Direction::RealToComplex, 2).unwrap(),
        c
    );

    let mut cos6 = CoeffMap::new();
    cos6.insert(HarmonicIndex::new(6, 1), C64::new(2.0 * PI.sqrt(), 0.0));
    let z = coeff_conjugate_transform(&cos6, Direction::RealToComplex, 2).unwrap();
    let s = (2.0 * PI).sqrt();
    for m in [1, 2] {
        assert!((z[&HarmonicIndex::new(6, m)] - C64::new(s, 0.0)).norm() < 1e-14);
    }

    let mut y81 = CoeffMap::new();
    y81.insert(HarmonicIndex::new(8, 1), C64::new(1.0, 0.0));
    let z = coeff_conjugate_transform(&y81, Direction::RealToComplex, 3).unwrap();
    let mut r = common::rng(3);
    for _ in 0..100 {
        let a = common::random_angles(&mut r, 3);
        let real = eval_harmonic(HarmonicIndex::new(8, 1), 3, a, Basis::Real).unwrap();
        let sum: C64 = z
            .iter()
            .map(|(&i, &c)| c * eval_harmonic(i, 3, a, Basis::Complex).unwrap())
            .sum();
        assert!((sum - real).norm() < 1e-14);
    }

    let mut bad = CoeffMap::new();
    bad.insert(HarmonicIndex::new(2, 1), C64::new(1.0, 0.0));
    assert!(check_reality(&bad, 3, Basis::Complex).is_err());
    assert!(coeff_conjugate_transform(&bad, Direction::ComplexToReal, 3).is_err());
}

fn real_coeffs(dim: usize) -> impl Strategy<Value = CoeffMap> {
    let idx = HarmonicIndex::up_to_degree(6, dim).unwrap();
    prop::collection::vec(-2.0..2.0f64, idx.len()).prop_map(move |v| {
        idx.iter()
            .zip(v)
            .filter(|(_, x)| x.abs() > 0.5)
            .map(|(&i, x)| (i, C64::new(x, 0.0)))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_round_trip((d, real) in (2usize..=3).prop_flat_map(|d| (Just(d), real_coeffs(d)))) {
        let z = coeff_conjugate_transform(&real, Direction::RealToComplex, d).unwrap();
        prop_assert!(check_reality(&z, d, Basis::Complex).is_ok());
        let back = coeff_conjugate_transform(&z, Direction::ComplexToReal, d).unwrap();
        for (i, c) in &real {
            prop_assert!((back.get(i).copied().unwrap_or_default() - c).norm() < 1e-14);
        }
    }

    #[test]
    fn transform_preserves_point_values(real in real_coeffs(3), theta in 0.0..PI, phi in 0.0..2.0 * PI) {
        let a = Angles::sphere(theta, phi);
        let z = coeff_conjugate_transform(&real, Direction::RealToComplex, 3).unwrap();
        let f_real: C64 = real.iter().map(|(&i, &c)| c * eval_harmonic(i, 3, a, Basis::Real).unwrap()).sum();
        let f_cplx: C64 = z.iter().map(|(&i, &c)| c * eval_harmonic(i, 3, a, Basis::Complex).unwrap()).sum();
        prop_assert!((f_real - f_cplx).norm() < 1e-12);
        prop_assert!(f_cplx.im.abs() < 1e-12);
    }

    #[test]
    fn wigner_symmetries(l1 in 0u32..8, l2 in 0u32..8, l3 in 0u32..8, m1 in -7i32..8, m2 in -7i32..8) {
        prop_assume!(m1.unsigned_abs() <= l1 && m2.unsigned_abs() <= l2);
        let m3 = -m1 - m2;
        prop_assume!(m3.unsigned_abs() <= l3);
        let w = wigner_3j(l1, l2, l3, m1, m2, m3);
        let parity = if (l1 + l2 + l3) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((wigner_3j(l2, l3, l1, m2, m3, m1) - w).abs() < 1e-13);
        prop_assert!((wigner_3j(l2, l1, l3, m2, m1, m3) - parity * w).abs() < 1e-13);
        prop_assert!((wigner_3j(l1, l2, l3, -m1, -m2, -m3) - parity * w).abs() < 1e-13);
    }
}

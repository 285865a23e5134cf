use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cartan_forge::cartan::{
    christoffel_to_spin, random_frame, random_gl_spin, transversality_check, vielbein_to_christoffel,
};
use cartan_forge::forms::random::{random_form, random_polynomial};
use cartan_forge::forms::{ChartBox, Pairing, ValueSpace};
use cartan_forge::lie::{adjoint_aff, aff_inverse, AffAlgElement, AffElement, GlElement};

fn entries(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, n)
}

fn group_element() -> impl Strategy<Value = AffElement> {
    (entries(9), entries(3)).prop_map(|(a, xi)| {
        let m = DMatrix::identity(3, 3) + DMatrix::from_row_slice(3, 3, &a) * 0.3;
        AffElement::new(GlElement(m), DVector::from_vec(xi)).expect("near the identity")
    })
}

fn algebra_element() -> impl Strategy<Value = AffAlgElement> {
    (entries(9), entries(3))
        .prop_map(|(b, z)| AffAlgElement::new(GlElement::from_row_major(3, &b), DVector::from_vec(z)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_is_a_homomorphism(g in group_element(), h in group_element(), x in algebra_element()) {
        let lhs = adjoint_aff(&g.compose(&h), &x).unwrap();
        let rhs = adjoint_aff(&g, &adjoint_aff(&h, &x).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).max_abs() < 1e-10);
    }

    #[test]
    fn adjoint_preserves_brackets(g in group_element(), x in algebra_element(), y in algebra_element()) {
        let lhs = adjoint_aff(&g, &x.bracket(&y)).unwrap();
        let rhs = adjoint_aff(&g, &x).unwrap().bracket(&adjoint_aff(&g, &y).unwrap());
        prop_assert!(lhs.sub(&rhs).max_abs() < 1e-10);
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(x in algebra_element(), y in algebra_element(), z in algebra_element()) {
        prop_assert!(x.bracket(&y).add(&y.bracket(&x)).max_abs() < 1e-14);
        let j = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(j.max_abs() < 1e-12);
    }

    #[test]
    fn inverse_composes_to_identity(g in group_element()) {
        let id = AffElement::identity(3);
        prop_assert!(g.compose(&aff_inverse(&g).unwrap()).distance(&id) < 1e-12);
        prop_assert!(aff_inverse(&g).unwrap().compose(&g).distance(&id) < 1e-12);
    }

    #[test]
    fn product_rule_for_polynomial_partials(seed in any::<u64>(), mu in 0usize..3, x in entries(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (p, q) = (random_polynomial(&mut rng, 3, 3, 1.0), random_polynomial(&mut rng, 3, 2, 1.0));
        let lhs = p.mul(&q).partial(mu).eval(&x);
        let rhs = p.partial(mu).eval(&x) * q.eval(&x) + p.eval(&x) * q.partial(mu).eval(&x);
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn box_integral_of_a_partial_is_a_boundary_difference(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_polynomial(&mut rng, 1, 4, 1.0);
        let integral = p.partial(0).integrate_box(&[0.0], &[1.0]);
        prop_assert!((integral - (p.eval(&[1.0]) - p.eval(&[0.0]))).abs() < 1e-12);
    }

    #[test]
    fn exterior_derivative_squares_to_zero(seed in any::<u64>(), degree in 0usize..3, x in entries(4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_form(&mut rng, 4, degree, ValueSpace::Gl(2), 3, 1.0).eval(&x, 2);
        prop_assert!(a.exterior_derivative().exterior_derivative().max_abs_value() < 1e-10);
    }

    #[test]
    fn wedge_is_graded_commutative_and_leibniz(seed in any::<u64>(), p in 0usize..3, q in 0usize..2, x in entries(4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_form(&mut rng, 4, p, ValueSpace::Scalar, 2, 1.0).eval(&x, 2);
        let b = random_form(&mut rng, 4, q, ValueSpace::Scalar, 2, 1.0).eval(&x, 2);
        let sign = if p * q % 2 == 0 { 1.0 } else { -1.0 };
        let ab = a.wedge_pair(&b, &Pairing::Scalar).unwrap();
        let ba = b.wedge_pair(&a, &Pairing::Scalar).unwrap();
        prop_assert!(ab.sub(&ba.scale(sign)).max_abs_value() < 1e-12);
        let lhs = ab.exterior_derivative();
        let dp = if p % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = a.exterior_derivative().wedge_pair(&b, &Pairing::Scalar).unwrap()
            .add(&a.wedge_pair(&b.exterior_derivative(), &Pairing::Scalar).unwrap().scale(dp));
        prop_assert!(lhs.sub(&rhs).max_abs_value() < 1e-10);
    }

    #[test]
    fn vielbein_postulate_round_trips(seed in any::<u64>()) {
        let chart = ChartBox::unit(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_frame(&mut rng, &chart, 2, 0.3).unwrap();
        let w = random_gl_spin(&mut rng, &chart, 2, 0.8).unwrap();
        let back = christoffel_to_spin(&e, &vielbein_to_christoffel(&e, &w).unwrap()).unwrap();
        for x in chart.sample_points(4, seed) {
            for (a, b) in back.entries().iter().zip(w.entries()) {
                prop_assert!((a.value(&x) - b.value(&x)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn transversality_is_symmetric(n in 2usize..8, seed in any::<u64>()) {
        let mut runner_rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let k1 = runner_rng.gen_range(1..n);
        let k2 = runner_rng.gen_range(1..=n - k1);
        let rows = |k: usize, r: &mut ChaCha8Rng| -> Vec<Vec<f64>> {
            (0..k).map(|_| (0..n).map(|_| r.gen_range(-1.0..1.0)).collect()).collect()
        };
        let (v1, mut v2) = (rows(k1, &mut runner_rng), rows(k2, &mut runner_rng));
        prop_assert!(transversality_check(&v1, &v2, n).transverse);
        prop_assert_eq!(transversality_check(&v1, &v2, n).transverse, transversality_check(&v2, &v1, n).transverse);
        v2[0] = v1[0].iter().map(|c| 2.0 * c).collect();
        prop_assert!(!transversality_check(&v1, &v2, n).transverse);
        prop_assert!(!transversality_check(&v2, &v1, n).transverse);
    }
}

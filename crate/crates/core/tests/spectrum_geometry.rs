use num_traits::Zero;
use proptest::prelude::*;
use strichartz_core::orthopoly::gegenbauer_values;
use strichartz_core::rational::int;
use strichartz_core::spectrum::{
    diagonal_dominates, eigenvector_poly, epsilon_multinomial_identity, gegenbauer_index, lambda_direct,
    solid_harmonic_check,
};
use strichartz_core::Error;

#[test]
fn eigenvector_diagonal_value_is_unnormalized_eigenvalue() {
    for d in 3..=5 {
        for kappa in 0..=d {
            for n in 0..=20 {
                let lambda = lambda_direct(d, kappa, n).unwrap();
                let c1 = gegenbauer_values(&int(1), &gegenbauer_index(d), n).pop().unwrap();
                match eigenvector_poly(d, kappa, n) {
                    Ok(e) => assert_eq!(e.value_at_diagonal(), lambda * c1, "d={d} kappa={kappa} n={n}"),
                    Err(Error::DegenerateEigenvector { .. }) => assert!(lambda.is_zero()),
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn eigenvectors_are_harmonic_in_low_dimension() {
    for d in 3..=5 {
        for kappa in 0..=d {
            for n in 0..=12 {
                assert!(solid_harmonic_check(d, kappa, n).unwrap(), "d={d} kappa={kappa} n={n}");
            }
        }
    }
}

#[test]
fn eigenvector_parity_matches_class() {
    let e = eigenvector_poly(4, 2, 6).unwrap();
    for (exps, _) in e.poly.terms() {
        assert_eq!(exps[0] % 2, 1);
        assert_eq!(exps[1] % 2, 1);
        assert_eq!(exps[2] % 2, 0);
        assert_eq!(exps[3] % 2, 0);
    }
}

// Exploratory only: the diagonal eigenvalue dominates every other one for
// small dimensions and indices.
#[test]
fn diagonal_dominates_in_small_scan() {
    for d in 3..=8 {
        for kappa in 0..=d {
            assert!(diagonal_dominates(d, kappa, 30).unwrap(), "d={d} kappa={kappa}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multinomial_identity(d in 1usize..7, kappa in 0usize..7, m in 0usize..9) {
        prop_assume!(kappa <= d);
        prop_assert!(epsilon_multinomial_identity(d, kappa, m).unwrap().holds());
    }

    #[test]
    fn eigenvalues_bounded_by_one(d in 3usize..7, kappa in 0usize..7, n in 0usize..40) {
        prop_assume!(kappa <= d);
        let v = lambda_direct(d, kappa, n).unwrap();
        prop_assert!(v.clone() * v <= int(1));
    }
}

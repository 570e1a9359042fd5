use killing_core::killing::{
    class_matrix, class_matrix_brute_force, killing_matrix, universal_killing, AnalysisOptions, KillingError,
};
use killing_core::{build_named_group, Group};
use num_rational::BigRational;
use proptest::prelude::*;

fn group(spec: &str) -> Group {
    build_named_group(spec, 100_000).unwrap()
}

const SMALL: [&str; 8] = ["S3", "S4", "A4", "A5", "S5", "PSL(2,7)", "A6", "PSL(3,2)"];

#[test]
fn section_method_matches_definition() {
    for spec in SMALL {
        let g = group(spec);
        for c in g.classes().classes().iter().filter(|c| !c.is_trivial()) {
            assert_eq!(class_matrix(c), class_matrix_brute_force(c), "{spec} {}", c.label);
        }
    }
}

#[test]
fn theta_is_top_eigenvector() {
    for spec in SMALL {
        let g = group(spec);
        for j in 1..g.classes().len() {
            let f = killing_matrix(&g, j, 4096).unwrap().analyze(&g, AnalysisOptions::default()).unwrap();
            let lambda = f.analysis().lambda_max.unwrap();
            let theta = f.theta_vector();
            assert_eq!(f.apply(&theta), theta.scaled(&BigRational::from_integer(lambda.into())));
            let s = f.analysis().signature;
            assert_eq!(s.dim(), f.basis.len());
        }
    }
}

#[test]
fn s3_examples() {
    let g = group("S3");
    let rows: Vec<(String, bool)> = (1..g.classes().len())
        .map(|j| {
            let f = killing_matrix(&g, j, 4096).unwrap().analyze(&g, AnalysisOptions::default()).unwrap();
            (f.label.clone(), f.analysis().nondegenerate)
        })
        .collect();
    assert_eq!(rows, vec![("2A".to_string(), true), ("3A".to_string(), false)]);
}

#[test]
fn caps_and_trivial_class() {
    let g = group("A5");
    assert_eq!(killing_matrix(&g, 0, 4096).unwrap_err(), KillingError::TrivialClass);
    assert!(matches!(killing_matrix(&g, 2, 10), Err(KillingError::CapExceeded { dim: 20, cap: 10 })));
    assert!(matches!(universal_killing(&g, 10, false), Err(KillingError::CapExceeded { .. })));
}

#[test]
fn universal_form() {
    let g = group("S3");
    let u = universal_killing(&g, 100, false).unwrap();
    assert_eq!(u.matrix.dim(), 5);
    let with_e = universal_killing(&g, 100, true).unwrap();
    assert_eq!(with_e.matrix.dim(), 6);
    // K[e][e] = |Z(e)| - 1
    assert_eq!(with_e.matrix.get(0, 0), 5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ad_invariance(spec_idx in 0usize..SMALL.len(), class_pick in 0usize..32, g_pick in 0usize..400) {
        let g = group(SMALL[spec_idx]);
        let j = 1 + class_pick % (g.classes().len() - 1);
        let f = killing_matrix(&g, j, 4096).unwrap();
        let class = &g.classes().classes()[j];
        let x = &g.elements()[g_pick % g.order()];
        let pi: Vec<usize> = f.basis.iter().map(|a| class.position(&x.conjugate(a)).unwrap()).collect();
        let n = f.basis.len();
        for a in 0..n {
            prop_assert!(f.matrix.get(a, a) >= 1);
            for b in 0..n {
                prop_assert_eq!(f.matrix.get(pi[a], pi[b]), f.matrix.get(a, b));
            }
        }
    }
}

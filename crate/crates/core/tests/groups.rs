use killing_core::named::parse_group_file;
use killing_core::{build_named_group, Group, Perm};
use proptest::prelude::*;

fn group(spec: &str) -> Group {
    build_named_group(spec, 100_000).unwrap()
}

#[test]
fn orders_and_class_counts() {
    let cases = [
        ("A5", 60, 5),
        ("PSL(2,7)", 168, 6),
        ("A6", 360, 7),
        ("PSL(2,8)", 504, 9),
        ("PSL(2,11)", 660, 8),
        ("PSL(2,16)", 4080, 17),
        ("PSL(3,3)", 5616, 12),
        ("PSU(3,3)", 6048, 14),
        ("M11", 7920, 10),
    ];
    for (spec, order, classes) in cases {
        let g = group(spec);
        assert_eq!(g.order(), order, "{spec}");
        assert_eq!(g.classes().len(), classes, "{spec}");
        let total: usize = g.classes().classes().iter().map(|c| c.size()).sum();
        assert_eq!(total, order, "{spec} class equation");
        assert!(g.is_simple_via_classes(), "{spec}");
    }
}

#[test]
fn class_labels_follow_order_and_size() {
    let g = group("S4");
    let labels: Vec<(String, usize)> = g.classes().classes().iter().map(|c| (c.label.clone(), c.size())).collect();
    let want = [("1A", 1), ("2A", 3), ("2B", 6), ("3A", 8), ("4A", 6)];
    assert_eq!(labels, want.map(|(l, s)| (l.to_string(), s)));
    assert!(!g.is_simple_via_classes());
}

#[test]
fn group_file_format() {
    let g = parse_group_file("# S3\ndegree 3\n(1,2)\n(1,2,3)\n", 100).unwrap();
    assert_eq!(g.order(), 6);
    assert!(parse_group_file("degree 3\n(1,4)\n", 100).is_err());
    assert!(build_named_group("S9", 1000).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classes_are_conjugation_orbits(spec in prop::sample::select(vec!["A5", "S5", "PSL(2,7)", "A6"]), i in 0usize..720, x in 0usize..720) {
        let g = group(spec);
        let a = &g.elements()[i % g.order()];
        let x = &g.elements()[x % g.order()];
        let table = g.classes();
        let j = table.class_index(&g, a);
        prop_assert_eq!(table.class_index(&g, &x.conjugate(a)), j);
        let c = &table.classes()[j];
        prop_assert_eq!(c.element_order, a.order());
        prop_assert_eq!(table.class_index(&g, &a.inverse()), table.inverse_class(j));
        prop_assert_eq!(c.is_real, table.inverse_class(j) == j);
        let s = c.section(c.position(a).unwrap());
        prop_assert_eq!(&s.conjugate(c.representative()), a);
    }

    #[test]
    fn permutation_laws(a in Just((0..7).collect::<Vec<usize>>()).prop_shuffle(),
                        b in Just((0..7).collect::<Vec<usize>>()).prop_shuffle()) {
        let a = Perm::from_images(a).unwrap();
        let b = Perm::from_images(b).unwrap();
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        prop_assert_eq!(a.sign(), if a.inversions().is_multiple_of(2) { 1 } else { -1 });
        prop_assert!(a.pow(a.order()).is_identity());
        prop_assert_eq!(Perm::parse_cycles(&a.to_string(), 7).unwrap(), a.clone());
        prop_assert_eq!(a.conjugate(&b).cycle_type(), b.cycle_type());
    }
}

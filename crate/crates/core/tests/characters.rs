mod support;

use killing_core::characters::{
    character_table, conjugation_character, full_conjugation_character, regular_character, roth_check,
    CharTable,
};
use killing_core::specht::Partition;
use killing_core::{build_named_group, Group};
use num_complex::Complex64;
use proptest::prelude::*;
use support::mn_character;

fn group(spec: &str) -> Group {
    build_named_group(spec, 100_000).unwrap()
}

fn oracle_row(g: &Group, lambda: &Partition) -> Vec<i64> {
    g.classes()
        .classes()
        .iter()
        .map(|c| mn_character(lambda, &Partition::new(c.cycle_type()).unwrap()))
        .collect()
}

fn row_index(t: &CharTable, row: &[i64]) -> Option<usize> {
    t.chars
        .iter()
        .position(|chi| chi.iter().zip(row).all(|(x, &y)| (x - Complex64::new(y as f64, 0.0)).norm() < 1e-9))
}

#[test]
fn symmetric_group_tables_match_murnaghan_nakayama() {
    for n in 2..=7 {
        let g = group(&format!("S{n}"));
        let t = character_table(&g).unwrap();
        let partitions = Partition::all(n);
        assert_eq!(t.len(), partitions.len());
        let mut seen = vec![false; t.len()];
        for lambda in &partitions {
            let i = row_index(&t, &oracle_row(&g, lambda)).unwrap_or_else(|| panic!("S{n}: {lambda} missing"));
            assert!(!seen[i]);
            seen[i] = true;
            assert_eq!(t.degrees[i] as u128, lambda.dimension());
        }
    }
}

#[test]
fn orthogonality_relations() {
    for spec in ["A5", "PSL(2,7)", "A6", "PSL(2,8)", "M11"] {
        let g = group(spec);
        let t = character_table(&g).unwrap();
        let order = g.order() as f64;
        for (i, a) in t.chars.iter().enumerate() {
            for (j, b) in t.chars.iter().enumerate() {
                let ip = t.inner(a, b);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-8, "{spec} rows {i},{j}");
            }
        }
        for k in 0..t.class_sizes.len() {
            for l in 0..t.class_sizes.len() {
                let s: Complex64 = t.chars.iter().map(|c| c[k] * c[l].conj()).sum();
                let want = if k == l { order / t.class_sizes[k] as f64 } else { 0.0 };
                assert!((s - Complex64::new(want, 0.0)).norm() < 1e-6, "{spec} columns {k},{l}");
            }
        }
        let sq: usize = t.degrees.iter().map(|d| d * d).sum();
        assert_eq!(sq, g.order());
    }
}

#[test]
fn known_degrees() {
    let t = character_table(&group("M11")).unwrap();
    assert_eq!(t.degrees, vec![1, 10, 10, 10, 11, 16, 16, 44, 45, 55]);
    let t = character_table(&group("PSU(3,3)")).unwrap();
    let mut d = t.degrees.clone();
    d.sort();
    assert_eq!(d, vec![1, 6, 7, 7, 7, 14, 21, 21, 21, 27, 28, 28, 32, 32]);
}

#[test]
fn regular_and_conjugation_multiplicities() {
    for spec in ["A5", "PSL(2,7)", "S5"] {
        let g = group(spec);
        let t = character_table(&g).unwrap();
        assert_eq!(t.multiplicities(&regular_character(&g)).unwrap(), t.degrees);
        let full = t.multiplicities(&full_conjugation_character(&g)).unwrap();
        let by_class: Vec<usize> = (0..g.classes().len())
            .map(|j| t.multiplicities(&conjugation_character(&g, j)).unwrap())
            .fold(vec![0; t.len()], |acc, m| acc.iter().zip(&m).map(|(a, b)| a + b).collect());
        assert_eq!(full, by_class, "{spec}");
    }
}

#[test]
fn roth_property_for_simple_groups() {
    for spec in ["A5", "PSL(2,7)", "A6"] {
        let g = group(spec);
        let t = character_table(&g).unwrap();
        assert!(roth_check(&g, &t).unwrap().0, "{spec}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_character_counts_fixed_points(n in 3usize..=6, pick in 0usize..64) {
        let g = group(&format!("S{n}"));
        let classes = g.classes();
        let j = pick % classes.len();
        let chi = conjugation_character(&g, j);
        let class = &classes.classes()[j];
        for (k, c) in classes.classes().iter().enumerate() {
            let x = c.representative();
            let fixed = class.members().iter().filter(|a| &x.conjugate(a) == *a).count();
            prop_assert_eq!(chi.values[k].re as usize, fixed);
        }
    }
}

//! Symmetric-group machinery: partitions, Young tableaux, Young symmetrizers
//! and their images in conjugation representations.
//!
//! Tableau entries and printed permutations are 1-based; the underlying
//! [`Perm`] values act on `0..n`, so entry `k` is point `k - 1`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraVector;
use crate::killing::KillingForm;
use crate::perm::Perm;

/// Largest n accepted by [`specht_occurs`] unless the caller raises it.
pub const DEFAULT_SPECHT_CAP: usize = 8;

/// Largest `|R(T)|·|C(T)|` that [`young_symmetrizer`] will expand.
pub const MAX_SYMMETRIZER_TERMS: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpechtError {
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("invalid tableau: {0}")]
    BadTableau(String),
    #[error("partitions of {n} exceed the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("partitions {0} and {1} have different sizes")]
    SizeMismatch(Partition, Partition),
    #[error("Young symmetrizer would have {0} terms")]
    ExpansionTooLarge(usize),
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not an eigenvector of the Killing form")]
    NotAnEigenvector,
}

/// A partition of n, parts in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, SpechtError> {
        if parts.is_empty() {
            return Err(SpechtError::BadPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(SpechtError::BadPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SpechtError::BadPartition(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts first, so a cycle type in any order is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self, SpechtError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn of_perm(p: &Perm) -> Self {
        Partition {
            parts: p.cycle_type(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// All partitions of n, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                rec(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.parts[0])
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    pub fn has_distinct_odd_parts(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1) && self.parts.windows(2).all(|w| w[0] != w[1])
    }

    /// Whether permutations of this cycle type are even.
    pub fn is_even_class(&self) -> bool {
        (self.n() - self.len()).is_multiple_of(2)
    }

    /// The permutation `(1..μ₁)(μ₁+1..μ₁+μ₂)...`.
    pub fn class_representative(&self) -> Perm {
        let mut start = 0;
        let cycles: Vec<Vec<usize>> = self
            .parts
            .iter()
            .map(|&len| {
                let c = (start..start + len).collect();
                start += len;
                c
            })
            .collect();
        Perm::from_cycles(self.n(), &cycles).expect("consecutive cycles form a permutation")
    }

    /// Dimension of the Specht module, by the hook length formula.
    pub fn dimension(&self) -> u128 {
        let conj = self.conjugate();
        let hooks: u128 = self
            .parts
            .iter()
            .enumerate()
            .flat_map(|(i, &row)| {
                let conj = &conj;
                (0..row).map(move |j| (row - j + conj.parts[j] - i - 1) as u128)
            })
            .product();
        (1..=self.n() as u128).product::<u128>() / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

impl FromStr for Partition {
    type Err = SpechtError;

    /// Comma-separated parts, optionally parenthesised: `2,1,1` or `(2,1,1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| SpechtError::BadPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// A bijective filling of a Young diagram by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, SpechtError> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())
            .map_err(|e| SpechtError::BadTableau(e.to_string()))?;
        let n = shape.n();
        let mut seen = vec![false; n + 1];
        for &k in rows.iter().flatten() {
            if k == 0 || k > n || seen[k] {
                return Err(SpechtError::BadTableau(format!(
                    "entries must be a bijection onto 1..={n}"
                )));
            }
            seen[k] = true;
        }
        Ok(Tableau { shape, rows })
    }

    /// Fills the boxes with `1..=n` row by row.
    pub fn row_reading(shape: &Partition) -> Tableau {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        Tableau {
            shape: shape.clone(),
            rows,
        }
    }

    /// `1 2 ... n-1 / n`, shape `(n-1,1)`.
    pub fn t1(n: usize) -> Tableau {
        Tableau::new(vec![(1..n).collect(), vec![n]]).expect("n >= 2")
    }

    /// `1 2 ... n-2 / n-1 n`, shape `(n-2,2)`.
    pub fn t2(n: usize) -> Tableau {
        Tableau::new(vec![(1..n - 1).collect(), vec![n - 1, n]]).expect("n >= 4")
    }

    /// Every standard tableau of the shape, the row-reading one first.
    pub fn standard(shape: &Partition) -> Vec<Tableau> {
        fn rec(k: usize, n: usize, shape: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
            if k > n {
                out.push(rows.clone());
                return;
            }
            for i in 0..shape.len() {
                let len = rows[i].len();
                let fits_above = i == 0 || rows[i - 1].len() > len;
                if len < shape[i] && fits_above {
                    rows[i].push(k);
                    rec(k + 1, n, shape, rows, out);
                    rows[i].pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(1, shape.n(), shape.parts(), &mut vec![Vec::new(); shape.len()], &mut out);
        out.into_iter()
            .map(|rows| Tableau {
                shape: shape.clone(),
                rows,
            })
            .collect()
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.rows[0].len())
            .map(|j| self.rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect())
            .collect()
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]));
        rows_ok && cols_ok
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows.iter().map(|r| r.iter().join(" ")).join(" / ");
        write!(f, "{rows}")
    }
}

/// All permutations of `0..n` preserving each of the given 1-based sets.
fn set_stabilizer(n: usize, sets: &[Vec<usize>]) -> Vec<Perm> {
    sets.iter()
        .map(|set| {
            set.iter()
                .copied()
                .permutations(set.len())
                .map(|image| (set.clone(), image))
                .collect::<Vec<_>>()
        })
        .multi_cartesian_product()
        .map(|choice| {
            let mut images: Vec<usize> = (0..n).collect();
            for (set, image) in choice {
                for (from, to) in set.iter().zip(image) {
                    images[from - 1] = to - 1;
                }
            }
            Perm::from_images(images).expect("product of set permutations")
        })
        .collect()
}

/// Row group `R(T)` and column group `C(T)`.
pub fn row_and_column_groups(t: &Tableau) -> (Vec<Perm>, Vec<Perm>) {
    let n = t.n();
    (set_stabilizer(n, t.rows()), set_stabilizer(n, &t.columns()))
}

fn length_sign(p: &Perm) -> BigRational {
    if p.inversions().is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `c_T = b_T a_T`, with `a_T = Σ_{τ ∈ R(T)} τ` and
/// `b_T = Σ_{σ ∈ C(T)} (-1)^{ℓ(σ)} σ`.
pub fn young_symmetrizer(t: &Tableau) -> Result<AlgebraVector<Perm>, SpechtError> {
    let (rows, cols) = row_and_column_groups(t);
    let terms = rows.len() * cols.len();
    if terms > MAX_SYMMETRIZER_TERMS {
        return Err(SpechtError::ExpansionTooLarge(terms));
    }
    let a = AlgebraVector::sum_of(&rows);
    let b = AlgebraVector::from_terms(cols.iter().map(|s| (s.clone(), length_sign(s))));
    Ok(b.mul(&a))
}

/// `π(Σ c_σ σ) = Σ c_σ σ a σ^-1`, the image of a group-algebra element in
/// the span of the class of `a`.
pub fn project_to_class(v: &AlgebraVector<Perm>, a: &Perm) -> AlgebraVector<Perm> {
    v.conjugate_action(&AlgebraVector::sum_of([a]))
}

/// `π(c_T)` computed as `b_T · (a_T · a)`, without expanding `c_T`.
pub fn symmetrizer_image(t: &Tableau, a: &Perm) -> AlgebraVector<Perm> {
    let (rows, cols) = row_and_column_groups(t);
    let inner = AlgebraVector::sum_of(&rows).conjugate_action(&AlgebraVector::sum_of([a]));
    AlgebraVector::from_terms(cols.iter().map(|s| (s.clone(), length_sign(s)))).conjugate_action(&inner)
}

/// Whether the Specht module `S^λ` occurs in the conjugation representation
/// on the class of cycle type μ: some standard tableau T has `π(c_T) ≠ 0`.
pub fn specht_occurs(lambda: &Partition, mu: &Partition, cap: usize) -> Result<bool, SpechtError> {
    if lambda.n() != mu.n() {
        return Err(SpechtError::SizeMismatch(lambda.clone(), mu.clone()));
    }
    if lambda.n() > cap {
        return Err(SpechtError::CapExceeded { n: lambda.n(), cap });
    }
    let a = mu.class_representative();
    let first = Tableau::row_reading(lambda);
    if !symmetrizer_image(&first, &a).is_zero() {
        return Ok(true);
    }
    Ok(Tableau::standard(lambda)
        .par_iter()
        .skip(1)
        .any(|t| !symmetrizer_image(t, &a).is_zero()))
}

/// The sign representation occurs in the class of cycle type μ exactly when
/// μ has distinct odd parts.
pub fn sign_rep_occurs(mu: &Partition) -> bool {
    mu.has_distinct_odd_parts()
}

/// (partitions of n into distinct odd parts, even classes minus odd classes
/// of `S_n`). The two agree by Euler's identity.
pub fn euler_count(n: usize) -> (usize, i64) {
    let all = Partition::all(n);
    let distinct_odd = all.iter().filter(|p| p.has_distinct_odd_parts()).count();
    let signed = all.iter().map(|p| if p.is_even_class() { 1 } else { -1 }).sum();
    (distinct_odd, signed)
}

/// Eigenvalues of the 2-cycles Killing form of `S_n` on the trivial,
/// standard and `(n-2,2)` summands.
pub fn two_cycles_eigenvalues(n: i64) -> (i64, i64, i64) {
    let trivial = (n.pow(4) - 10 * n.pow(3) + 41 * n * n - 72 * n + 48) / 4;
    (trivial, n * n - 6 * n + 12, 2 * n)
}

fn transposition(n: usize, i: usize, j: usize) -> Perm {
    Perm::from_cycles(n, &[vec![i - 1, j - 1]]).expect("points in range")
}

/// `(12) + (13) + ... + (1,n-1) - (2,n) - ... - (n-1,n)`.
pub fn v_t1(n: usize) -> AlgebraVector<Perm> {
    let one = BigRational::one();
    AlgebraVector::from_terms(
        (2..n)
            .map(|j| (transposition(n, 1, j), one.clone()))
            .chain((2..n).map(|j| (transposition(n, j, n), -one.clone()))),
    )
}

/// `(12) - (2,n-1) - (1,n) + (n-1,n)`.
pub fn v_t2(n: usize) -> AlgebraVector<Perm> {
    let one = BigRational::one();
    AlgebraVector::from_terms([
        (transposition(n, 1, 2), one.clone()),
        (transposition(n, 2, n - 1), -one.clone()),
        (transposition(n, 1, n), -one.clone()),
        (transposition(n, n - 1, n), one),
    ])
}

/// The exact eigenvalue of `K` on `v`, checked over every coordinate.
pub fn eigenvalue_from_vector(form: &KillingForm, v: &AlgebraVector<Perm>) -> Result<BigRational, SpechtError> {
    if v.is_zero() {
        return Err(SpechtError::ZeroVector);
    }
    let image = form.apply(v);
    if image.is_zero() {
        return Ok(BigRational::zero());
    }
    image.ratio_to(v).ok_or(SpechtError::NotAnEigenvector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn p(s: &str, n: usize) -> Perm {
        Perm::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn partitions() {
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(20).len(), 627);
        let lambda: Partition = "4,2,1".parse().unwrap();
        assert_eq!(lambda.conjugate().parts(), &[3, 2, 1, 1]);
        assert_eq!(lambda.dimension(), 35);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 2]).unwrap().to_string(), "(2,1)");
    }

    #[test]
    fn standard_tableaux_count_matches_hook_formula() {
        for n in 1..=6 {
            for lambda in Partition::all(n) {
                let tabs = Tableau::standard(&lambda);
                assert_eq!(tabs.len() as u128, lambda.dimension());
                assert!(tabs.iter().all(Tableau::is_standard));
                assert_eq!(tabs[0], Tableau::row_reading(&lambda));
            }
        }
    }

    #[test]
    fn row_and_column_group_orders() {
        let t = Tableau::new(vec![vec![4, 2, 1, 3], vec![5, 6], vec![7]]).unwrap();
        assert!(!t.is_standard());
        let (r, c) = row_and_column_groups(&t);
        assert_eq!(r.len(), 48);
        assert_eq!(c.len(), 12);
        assert!(c.contains(&p("(4,5,7)(2,6)", 7)));
    }

    #[test]
    fn symmetrizer_on_double_transposition() {
        let t = Tableau::new(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let c = young_symmetrizer(&t).unwrap();
        let got = project_to_class(&c, &p("(1,2)(3,4)", 4));
        let want = AlgebraVector::from_terms([
            (p("(1,2)(3,4)", 4), rational(8, 1)),
            (p("(2,3)(1,4)", 4), rational(-8, 1)),
        ]);
        assert_eq!(got, want);
        assert_eq!(symmetrizer_image(&t, &p("(1,2)(3,4)", 4)), want);
    }

    fn combo(n: usize, terms: &[(&str, i64)]) -> AlgebraVector<Perm> {
        AlgebraVector::from_terms(terms.iter().map(|(c, k)| (p(c, n), rational(*k, 1))))
    }

    #[test]
    fn symmetrizer_images_in_s4() {
        let cases: [(Vec<Vec<usize>>, &str, Vec<(&str, i64)>); 5] = [
            (
                vec![vec![1, 2, 3], vec![4]],
                "(1,2,3)",
                vec![("(1,2,3)", 1), ("(1,3,2)", 1), ("(2,3,4)", -1), ("(2,4,3)", -1)],
            ),
            (
                vec![vec![1, 4], vec![2], vec![3]],
                "(1,2,3)",
                vec![
                    ("(1,2,3)", 3),
                    ("(1,3,2)", -3),
                    ("(1,2,4)", 1),
                    ("(1,4,2)", -1),
                    ("(1,4,3)", 1),
                    ("(1,3,4)", -1),
                    ("(2,3,4)", 1),
                    ("(2,4,3)", -1),
                ],
            ),
            (
                vec![vec![1], vec![2], vec![3], vec![4]],
                "(1,2,3)",
                vec![
                    ("(1,2,3)", 1),
                    ("(1,3,2)", -1),
                    ("(2,3,4)", -1),
                    ("(2,4,3)", 1),
                    ("(1,3,4)", 1),
                    ("(1,4,3)", -1),
                    ("(1,2,4)", -1),
                    ("(1,4,2)", 1),
                ],
            ),
            (
                vec![vec![1, 2], vec![3, 4]],
                "(1,2,3,4)",
                vec![("(1,3,4,2)", 1), ("(1,2,4,3)", 1), ("(1,4,2,3)", -1), ("(1,3,2,4)", -1)],
            ),
            (
                vec![vec![1, 4], vec![2], vec![3]],
                "(1,2,3,4)",
                vec![
                    ("(1,2,3,4)", 1),
                    ("(1,2,4,3)", 1),
                    ("(1,4,2,3)", 1),
                    ("(1,3,4,2)", -1),
                    ("(1,3,2,4)", -1),
                    ("(1,4,3,2)", -1),
                ],
            ),
        ];
        for (rows, a, want) in cases {
            let t = Tableau::new(rows).unwrap();
            let got = symmetrizer_image(&t, &p(a, 4));
            assert!(got.ratio_to(&combo(4, &want)).is_some(), "{t} on {a}: {got}");
        }
    }

    #[test]
    fn canonical_tableaux_give_printed_vectors() {
        for n in 4..=7 {
            let a = p("(1,2)", n);
            let x = symmetrizer_image(&Tableau::t1(n), &a);
            assert!(x.ratio_to(&v_t1(n)).is_some(), "n = {n}");
            let y = symmetrizer_image(&Tableau::t2(n), &a);
            assert!(y.ratio_to(&v_t2(n)).is_some(), "n = {n}");
        }
    }

    #[test]
    fn occurrence_examples() {
        let four: Partition = "4".parse().unwrap();
        assert!(specht_occurs(&"2,2".parse().unwrap(), &four, 8).unwrap());
        assert!(!specht_occurs(&"1,1,1,1".parse().unwrap(), &four, 8).unwrap());
        assert!(specht_occurs(&four, &"2,1,1".parse().unwrap(), 8).unwrap());
        assert_eq!(
            specht_occurs(&"9".parse().unwrap(), &"9".parse().unwrap(), 8),
            Err(SpechtError::CapExceeded { n: 9, cap: 8 })
        );
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_count(1), (1, 1));
        assert_eq!(euler_count(4), (1, 1));
        assert_eq!(euler_count(8), (2, 2));
        assert!(sign_rep_occurs(&"5,3,1".parse().unwrap()));
        assert!(!sign_rep_occurs(&"4".parse().unwrap()));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(two_cycles_eigenvalues(7), (131, 19, 14));
        assert_eq!(two_cycles_eigenvalues(4), (8, 4, 8));
        let (_, s, t) = two_cycles_eigenvalues(6);
        assert_eq!(s, t);
    }
}

//! Killing forms `K(x_a, x_b) = |Z(ab) ∩ C|` of conjugacy-class calculi and
//! of the universal calculus.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::AlgebraVector;
use crate::group::{ConjClass, Group};
use crate::linalg::{
    exact_inverse, signature_with, IntSymMatrix, LinalgError, Signature, DEFAULT_EXACT_CAP,
};
use crate::perm::Perm;

pub const DEFAULT_MATRIX_CAP: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KillingError {
    #[error("matrix dimension {dim} exceeds the cap of {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("the trivial class carries no calculus")]
    TrivialClass,
    #[error("row {row} sums to {found}, row 0 to {expected}")]
    RowSumMismatch { row: usize, expected: i64, found: i64 },
    #[error("degenerate Killing form: {0}")]
    Degenerate(String),
    #[error("Casimir is not central: coefficients differ on class {0}")]
    NotCentral(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Calculus {
    /// Index into the group's class table.
    Class(usize),
    Universal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub is_real: bool,
    /// Common row sum; `None` for the universal calculus.
    pub lambda_max: Option<i64>,
    pub components: Vec<Vec<usize>>,
    pub signature: Signature,
    pub nondegenerate: bool,
    /// `|Z(rep) ∩ C|`; `None` for the universal calculus.
    pub chi_on_class: Option<usize>,
}

impl Analysis {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn irreducible(&self) -> bool {
        self.components.len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct KillingForm {
    pub calculus: Calculus,
    pub label: String,
    /// Basis elements, in matrix index order.
    pub basis: Vec<Perm>,
    pub matrix: IntSymMatrix,
    pub analysis: Option<Analysis>,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub exact_cap: usize,
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            exact_cap: DEFAULT_EXACT_CAP,
            seed: 0,
        }
    }
}

/// Killing matrix of the class at `class_index`, built by the section method.
pub fn killing_matrix(group: &Group, class_index: usize, cap: usize) -> Result<KillingForm, KillingError> {
    let class = &group.classes().classes()[class_index];
    if class.is_trivial() {
        return Err(KillingError::TrivialClass);
    }
    if class.size() > cap {
        return Err(KillingError::CapExceeded { dim: class.size(), cap });
    }
    Ok(KillingForm {
        calculus: Calculus::Class(class_index),
        label: class.label.clone(),
        basis: class.members().to_vec(),
        matrix: class_matrix(class),
        analysis: None,
    })
}

/// Section method: with representative g, tabulate f(h) = |Z(gh) ∩ C| once,
/// then K[a][b] = f(s(a)^-1 b s(a)) since ab is conjugate to g s(a)^-1 b s(a).
pub fn class_matrix(class: &ConjClass) -> IntSymMatrix {
    let members = class.members();
    let n = members.len();
    let g = class.representative();
    let f: Vec<i64> = members
        .par_iter()
        .map(|h| {
            let gh = g.compose(h);
            members.iter().filter(|c| c.commutes_with(&gh)).count() as i64
        })
        .collect();
    let rows: Vec<Vec<i64>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let s_inv = class.section(a).inverse();
            members
                .iter()
                .map(|b| {
                    let h = s_inv.conjugate(b);
                    f[class.position(&h).expect("class is closed under conjugation")]
                })
                .collect()
        })
        .collect();
    IntSymMatrix::new(n, rows.concat()).expect("Killing matrix is symmetric")
}

/// Direct evaluation of the definition, for cross-checking.
pub fn class_matrix_brute_force(class: &ConjClass) -> IntSymMatrix {
    let members = class.members();
    IntSymMatrix::from_fn(members.len(), |a, b| {
        let ab = members[a].compose(&members[b]);
        members.iter().filter(|c| c.commutes_with(&ab)).count() as i64
    })
}

/// Killing form of the universal calculus, `K[a][b] = |Z(ab)| - 1` on
/// `G \ {e}`; with `include_identity` the identity row and column are kept.
/// Basis order follows the class table.
pub fn universal_killing(group: &Group, cap: usize, include_identity: bool) -> Result<KillingForm, KillingError> {
    let order = group.order();
    let dim = if include_identity { order } else { order.saturating_sub(1) };
    if dim > cap {
        return Err(KillingError::CapExceeded { dim, cap });
    }
    let table = group.classes();
    let basis: Vec<Perm> = table
        .classes()
        .iter()
        .flat_map(|c| c.members().iter().cloned())
        .filter(|g| include_identity || !g.is_identity())
        .collect();
    let class_sizes: Vec<usize> = table.classes().iter().map(|c| c.size()).collect();
    let rows: Vec<Vec<i64>> = basis
        .par_iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let ab = a.compose(b);
                    let j = table.class_index(group, &ab);
                    (order / class_sizes[j]) as i64 - 1
                })
                .collect()
        })
        .collect();
    Ok(KillingForm {
        calculus: Calculus::Universal,
        label: "universal".into(),
        basis,
        matrix: IntSymMatrix::new(dim, rows.concat())?,
        analysis: None,
    })
}

impl KillingForm {
    pub fn analysis(&self) -> &Analysis {
        self.analysis.as_ref().expect("analyze() has been called")
    }

    pub fn class<'g>(&self, group: &'g Group) -> Option<&'g ConjClass> {
        match self.calculus {
            Calculus::Class(j) => Some(&group.classes().classes()[j]),
            Calculus::Universal => None,
        }
    }

    /// Fills in the analysis bundle.
    pub fn analyze(mut self, group: &Group, opts: AnalysisOptions) -> Result<KillingForm, KillingError> {
        let m = &self.matrix;
        let n = m.dim();
        let sums: Vec<i64> = (0..n).map(|i| m.row(i).iter().sum()).collect();
        let class = self.class(group);
        let lambda_max = match class {
            Some(_) => {
                if let Some((row, &found)) = sums.iter().enumerate().find(|(_, s)| **s != sums[0]) {
                    return Err(KillingError::RowSumMismatch {
                        row,
                        expected: sums[0],
                        found,
                    });
                }
                sums.first().copied()
            }
            None => None,
        };
        let signature = signature_with(m, opts.exact_cap, opts.seed)?;
        let chi_on_class = class.map(|c| {
            let g = c.representative();
            c.members().iter().filter(|h| h.commutes_with(g)).count()
        });
        self.analysis = Some(Analysis {
            is_real: class.is_none_or(|c| c.is_real),
            lambda_max,
            components: m.connected_components(),
            nondegenerate: signature.zero == 0,
            signature,
            chi_on_class,
        });
        Ok(self)
    }

    /// The all-ones vector over the basis.
    pub fn theta_vector(&self) -> AlgebraVector<Perm> {
        AlgebraVector::sum_of(&self.basis)
    }

    /// `K v` for a vector over the basis.
    pub fn apply(&self, v: &AlgebraVector<Perm>) -> AlgebraVector<Perm> {
        let index: std::collections::HashMap<&Perm, usize> =
            self.basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let x: Vec<(usize, &BigRational)> = v
            .iter()
            .map(|(p, c)| (*index.get(p).expect("vector lies in the span of the basis"), c))
            .collect();
        AlgebraVector::from_terms(self.basis.iter().enumerate().map(|(i, b)| {
            let s = x
                .iter()
                .fold(BigRational::zero(), |acc, (j, c)| acc + *c * BigRational::from_integer(self.matrix.get(i, *j).into()));
            (b.clone(), s)
        }))
    }

    /// Quadratic Casimir `Σ K^{ab} ab`, expanded over class sums.
    pub fn casimir(&self, group: &Group, inverse_cap: usize) -> Result<Casimir, KillingError> {
        let inv = exact_inverse(&self.matrix, inverse_cap).map_err(|e| match e {
            LinalgError::SingularMatrix => KillingError::Degenerate(format!(
                "the Killing form on {} is degenerate, so it has no inverse",
                self.label
            )),
            other => other.into(),
        })?;
        let n = self.basis.len();
        let mut element = AlgebraVector::new();
        for a in 0..n {
            for b in 0..n {
                let c = inv.get(a, b);
                if !c.is_zero() {
                    element.add_term(self.basis[a].compose(&self.basis[b]), c.clone());
                }
            }
        }
        let table = group.classes();
        let mut terms = Vec::new();
        for (j, class) in table.classes().iter().enumerate() {
            let c = element.coeff(class.representative());
            if class.members().iter().any(|h| element.coeff(h) != c) {
                return Err(KillingError::NotCentral(class.label.clone()));
            }
            if !c.is_zero() {
                terms.push(CasimirTerm {
                    class_index: j,
                    label: class.label.clone(),
                    is_identity: class.is_trivial(),
                    coeff: c,
                });
            }
        }
        Ok(Casimir { element, terms })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirTerm {
    pub class_index: usize,
    pub label: String,
    pub is_identity: bool,
    pub coeff: BigRational,
}

/// Central element of the group algebra with its class-sum expansion.
#[derive(Clone, Debug)]
pub struct Casimir {
    pub element: AlgebraVector<Perm>,
    pub terms: Vec<CasimirTerm>,
}

impl fmt::Display for Casimir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " − ")?,
                (_, false) => write!(f, " + ")?,
            }
            let basis = if t.is_identity {
                "e".to_string()
            } else {
                format!("θ_{{{}}}", t.label)
            };
            let a = t.coeff.abs();
            if a.is_one() {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{a}·{basis}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::named::build_named_group;
    use crate::DEFAULT_ELEMENT_CAP;

    fn group(spec: &str) -> Group {
        build_named_group(spec, DEFAULT_ELEMENT_CAP).unwrap()
    }

    fn form(g: &Group, label: &str) -> KillingForm {
        let (j, _) = g.classes().by_label(label).unwrap();
        killing_matrix(g, j, DEFAULT_MATRIX_CAP)
            .unwrap()
            .analyze(g, AnalysisOptions::default())
            .unwrap()
    }

    #[test]
    fn s3_classes() {
        let g = group("S3");
        let t = form(&g, "2A");
        assert_eq!(t.matrix, IntSymMatrix::from_fn(3, |i, j| 3 * (i == j) as i64));
        assert!(t.analysis().nondegenerate);
        let r = form(&g, "3A");
        assert_eq!(r.matrix, IntSymMatrix::from_fn(2, |_, _| 2));
        assert_eq!(r.analysis().signature, Signature { positive: 1, negative: 0, zero: 1 });
        assert_eq!(r.analysis().lambda_max, Some(4));
    }

    #[test]
    fn a5_rows() {
        let g = group("A5");
        let a = form(&g, "3A");
        let an = a.analysis();
        assert_eq!((an.lambda_max, an.chi_on_class, an.component_count()), (Some(34), Some(2), 1));
        assert_eq!(an.signature, Signature { positive: 10, negative: 10, zero: 0 });
        let b = form(&g, "2A");
        assert_eq!(b.analysis().component_count(), 5);
        let theta = b.theta_vector();
        assert_eq!(b.apply(&theta), theta.scaled(&rational(21, 1)));
    }

    #[test]
    fn trivial_class_and_cap() {
        let g = group("S3");
        assert_eq!(killing_matrix(&g, 0, 10).unwrap_err(), KillingError::TrivialClass);
        assert_eq!(
            killing_matrix(&g, 1, 2).unwrap_err(),
            KillingError::CapExceeded { dim: 3, cap: 2 }
        );
    }

    #[test]
    fn universal_forms() {
        let s3 = group("S3");
        let full = universal_killing(&s3, 100, true).unwrap();
        assert_eq!(full.matrix.get(0, 0), 5);
        let u = universal_killing(&s3, 100, false).unwrap();
        assert_eq!(u.matrix.dim(), 5);
        assert_eq!(u.matrix, full.matrix.submatrix(&[1, 2, 3, 4, 5]));
        let c2 = group("S2");
        let k = universal_killing(&c2, 10, false).unwrap().analyze(&c2, AnalysisOptions::default()).unwrap();
        assert_eq!(k.matrix.entries(), &[1]);
        assert!(k.analysis().nondegenerate);
    }

    #[test]
    fn casimir_of_diagonal_form() {
        let g = group("S3");
        let c = form(&g, "2A").casimir(&g, 16).unwrap();
        assert_eq!(c.to_string(), "e");
        let err = form(&g, "3A").casimir(&g, 16).unwrap_err();
        assert!(matches!(err, KillingError::Degenerate(_)));
    }
}

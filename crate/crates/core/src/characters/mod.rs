//! Character tables, conjugation characters and the decomposition of Killing
//! eigenspaces into irreducibles.

mod dixon;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraVector;
use crate::group::Group;
use crate::killing::KillingForm;
use crate::linalg::SpectrumEntry;
use crate::perm::Perm;

pub const DEFAULT_CLASS_CAP: usize = 64;

const ORTHOGONALITY_TOL: f64 = 1e-8;
const INTEGER_TOL: f64 = 1e-6;
const PROJECTOR_TOL: f64 = 1e-4;

#[derive(Debug, Error, PartialEq)]
pub enum CharacterError {
    #[error("{classes} classes exceed the character-table cap of {cap}")]
    TooManyClasses { classes: usize, cap: usize },
    #[error("no prime p = 1 mod exponent found below 2^31")]
    NoSuitablePrime,
    #[error("class matrices did not split into one-dimensional eigenspaces")]
    SplitFailure,
    #[error("eigenvalue multiplicities out of range while lifting characters")]
    LiftFailure,
    #[error("orthogonality fails: {0}")]
    OrthogonalityFailure(String),
    #[error("inner product with {irrep} is {value}, not a non-negative integer")]
    NotACharacter { irrep: String, value: f64 },
    #[error("group has a nontrivial centre")]
    NontrivialCentre,
    #[error("irrep {0} has multiplicity zero")]
    ZeroMultiplicity(String),
    #[error("m-vector value on class {0} is not rational")]
    IrrationalValue(String),
    #[error("projector trace {value} for {irrep} at eigenvalue {eigenvalue} is not an integer")]
    ProjectorMismatch {
        irrep: String,
        eigenvalue: f64,
        value: f64,
    },
    #[error("character table does not match the group: {0}")]
    TableMismatch(String),
    #[error("invalid character table JSON: {0}")]
    Json(String),
}

/// A complex value per conjugacy class, in class-table order.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<Complex64>,
}

impl ClassFunction {
    pub fn from_ints(values: impl IntoIterator<Item = i64>) -> Self {
        ClassFunction {
            values: values.into_iter().map(|v| Complex64::new(v as f64, 0.0)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CharTable {
    pub name: String,
    pub group_order: usize,
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<usize>,
    /// Class of the inverse of each class representative.
    pub inverse_class: Vec<usize>,
    pub degrees: Vec<usize>,
    /// Row per irrep, column per class.
    pub chars: Vec<Vec<Complex64>>,
    pub labels: Vec<String>,
    pub rational: Vec<bool>,
    pub real: Vec<bool>,
    pub dual_index: Vec<usize>,
    pub provenance: String,
}

#[derive(Serialize, Deserialize)]
struct CharTableJson {
    name: String,
    class_labels: Vec<String>,
    class_sizes: Vec<usize>,
    degrees: Vec<usize>,
    chars: Vec<Vec<[f64; 2]>>,
    provenance: String,
}

/// Character table of `group` by the Dixon-Schneider method.
pub fn character_table(group: &Group) -> Result<CharTable, CharacterError> {
    character_table_with_cap(group, DEFAULT_CLASS_CAP)
}

pub fn character_table_with_cap(group: &Group, class_cap: usize) -> Result<CharTable, CharacterError> {
    let raw = dixon::dixon(group, class_cap)?;
    CharTable::assemble(
        group,
        raw.degrees,
        raw.chars,
        "computed by the Dixon-Schneider method".into(),
    )
}

impl CharTable {
    /// Sorts, labels and validates a table given in the group's class order.
    fn assemble(
        group: &Group,
        degrees: Vec<usize>,
        chars: Vec<Vec<Complex64>>,
        provenance: String,
    ) -> Result<CharTable, CharacterError> {
        let table = group.classes();
        let r = table.len();
        let mut rows: Vec<(usize, Vec<Complex64>)> = degrees.into_iter().zip(chars).collect();
        let is_rational = |row: &[Complex64]| {
            row.iter()
                .all(|z| z.im.abs() < ORTHOGONALITY_TOL && (z.re - z.re.round()).abs() < ORTHOGONALITY_TOL)
        };
        let is_real = |row: &[Complex64]| row.iter().all(|z| z.im.abs() < ORTHOGONALITY_TOL);
        let is_trivial = |row: &[Complex64]| row.iter().all(|z| (z - 1.0).norm() < ORTHOGONALITY_TOL);
        rows.sort_by(|(da, a), (db, b)| {
            is_trivial(b)
                .cmp(&is_trivial(a))
                .then(da.cmp(db))
                .then(is_rational(b).cmp(&is_rational(a)))
                .then(is_real(b).cmp(&is_real(a)))
                .then(fingerprint_cmp(b, a))
        });
        let degrees: Vec<usize> = rows.iter().map(|r| r.0).collect();
        let chars: Vec<Vec<Complex64>> = rows.into_iter().map(|r| r.1).collect();
        let n = chars.len();
        let dual_index: Vec<usize> = (0..n)
            .map(|i| {
                (0..n)
                    .find(|&k| {
                        chars[k]
                            .iter()
                            .zip(&chars[i])
                            .all(|(a, b)| (a - b.conj()).norm() < 1e-6)
                    })
                    .unwrap_or(i)
            })
            .collect();
        let mut out = CharTable {
            name: group.name().to_string(),
            group_order: group.order(),
            class_labels: table.classes().iter().map(|c| c.label.clone()).collect(),
            class_sizes: table.classes().iter().map(|c| c.size()).collect(),
            inverse_class: (0..r).map(|j| table.inverse_class(j)).collect(),
            rational: chars.iter().map(|c| is_rational(c)).collect(),
            real: chars.iter().map(|c| is_real(c)).collect(),
            labels: Vec::new(),
            degrees,
            chars,
            dual_index,
            provenance,
        };
        out.labels = out.make_labels();
        out.validate()?;
        Ok(out)
    }

    /// Degree plus suffix: within one degree the real characters are `d`,
    /// `d̄`, `d'`, `d̄'`, ... and complex pairs `d*`/`d̄*` (or `d`/`d̄` when
    /// the degree has no real character).
    fn make_labels(&self) -> Vec<String> {
        let n = self.degrees.len();
        let mut labels = vec![String::new(); n];
        let bar = '\u{0304}';
        let mut i = 0;
        while i < n {
            let d = self.degrees[i];
            let block: Vec<usize> = (i..n).take_while(|&k| self.degrees[k] == d).collect();
            let reals: Vec<usize> = block.iter().copied().filter(|&k| self.real[k]).collect();
            for (pos, &k) in reals.iter().enumerate() {
                let primes = "'".repeat(pos / 2);
                labels[k] = if pos % 2 == 0 {
                    format!("{d}{primes}")
                } else {
                    format!("{d}{bar}{primes}")
                };
            }
            let mut pair = 0;
            for &k in block.iter().filter(|&&k| !self.real[k]) {
                let dual = self.dual_index[k];
                if !labels[k].is_empty() {
                    continue;
                }
                // unbarred member: first nonzero imaginary part positive
                let positive = self.chars[k]
                    .iter()
                    .find(|z| z.im.abs() > ORTHOGONALITY_TOL)
                    .is_some_and(|z| z.im > 0.0);
                let (plain, barred) = if positive { (k, dual) } else { (dual, k) };
                let stars = if reals.is_empty() && pair == 0 {
                    String::new()
                } else {
                    "*".repeat(if reals.is_empty() { pair } else { pair + 1 })
                };
                labels[plain] = format!("{d}{stars}");
                labels[barred] = format!("{d}{bar}{stars}");
                pair += 1;
            }
            i += block.len();
        }
        labels
    }

    fn validate(&self) -> Result<(), CharacterError> {
        let n = self.degrees.len();
        let r = self.class_sizes.len();
        let order = self.group_order as f64;
        if n != r {
            return Err(CharacterError::OrthogonalityFailure(format!("{n} irreps for {r} classes")));
        }
        let sum_sq: usize = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.group_order {
            return Err(CharacterError::OrthogonalityFailure(format!(
                "sum of squared degrees {sum_sq} != {}",
                self.group_order
            )));
        }
        for i in 0..n {
            for k in 0..n {
                let ip = self.inner(&self.chars[i], &self.chars[k]);
                let want = if i == k { 1.0 } else { 0.0 };
                if (ip - want).norm() > ORTHOGONALITY_TOL {
                    return Err(CharacterError::OrthogonalityFailure(format!(
                        "<chi_{i}, chi_{k}> = {ip}"
                    )));
                }
            }
        }
        for j in 0..r {
            for l in 0..r {
                let s: Complex64 = (0..n).map(|i| self.chars[i][j] * self.chars[i][l].conj()).sum();
                let want = if j == l { order / self.class_sizes[j] as f64 } else { 0.0 };
                if (s - want).norm() > ORTHOGONALITY_TOL * order {
                    return Err(CharacterError::OrthogonalityFailure(format!(
                        "column sum ({j}, {l}) = {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `(1/|G|) Σ_j |C_j| f(g_j) conj(h(g_j))`.
    pub fn inner(&self, f: &[Complex64], h: &[Complex64]) -> Complex64 {
        let s: Complex64 = f
            .iter()
            .zip(h)
            .zip(&self.class_sizes)
            .map(|((a, b), &size)| a * b.conj() * size as f64)
            .sum();
        s / self.group_order as f64
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn to_json(&self) -> String {
        let j = CharTableJson {
            name: self.name.clone(),
            class_labels: self.class_labels.clone(),
            class_sizes: self.class_sizes.clone(),
            degrees: self.degrees.clone(),
            chars: self
                .chars
                .iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            provenance: self.provenance.clone(),
        };
        serde_json::to_string_pretty(&j).expect("table serialises")
    }

    /// Imports a table, matching its classes to `group` by label and size.
    pub fn from_json(text: &str, group: &Group) -> Result<CharTable, CharacterError> {
        let j: CharTableJson =
            serde_json::from_str(text).map_err(|e| CharacterError::Json(e.to_string()))?;
        if j.provenance.trim().is_empty() {
            return Err(CharacterError::Json("provenance is mandatory".into()));
        }
        let table = group.classes();
        let mut column_of = Vec::with_capacity(table.len());
        for c in table.classes() {
            let pos = j
                .class_labels
                .iter()
                .position(|l| l == &c.label)
                .ok_or_else(|| CharacterError::TableMismatch(format!("no column for class {}", c.label)))?;
            if j.class_sizes.get(pos) != Some(&c.size()) {
                return Err(CharacterError::TableMismatch(format!("size of class {}", c.label)));
            }
            column_of.push(pos);
        }
        if j.class_labels.len() != table.len() || j.chars.len() != j.degrees.len() {
            return Err(CharacterError::TableMismatch("shape".into()));
        }
        let chars = j
            .chars
            .iter()
            .map(|row| {
                column_of
                    .iter()
                    .map(|&pos| row.get(pos).map(|v| Complex64::new(v[0], v[1])))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| CharacterError::TableMismatch("short row".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CharTable::assemble(group, j.degrees, chars, j.provenance)
    }

    /// `|C| χ_i(g) / χ_i(e)`, the scalar by which the class sum acts on irrep i.
    pub fn central_character(&self, class_index: usize, irrep: usize) -> Complex64 {
        self.chars[irrep][class_index] * self.class_sizes[class_index] as f64 / self.degrees[irrep] as f64
    }

    /// Inner products of `f` with every irrep, rounded with a hard gate.
    pub fn multiplicities(&self, f: &ClassFunction) -> Result<Vec<usize>, CharacterError> {
        self.chars
            .iter()
            .enumerate()
            .map(|(i, chi)| {
                let ip = self.inner(&f.values, chi);
                let k = ip.re.round();
                if ip.im.abs() > INTEGER_TOL || (ip.re - k).abs() > INTEGER_TOL || k < 0.0 {
                    Err(CharacterError::NotACharacter {
                        irrep: self.labels[i].clone(),
                        value: ip.re,
                    })
                } else {
                    Ok(k as usize)
                }
            })
            .collect()
    }
}

/// Lexicographic comparison of value vectors, real part then imaginary.
fn fingerprint_cmp(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        for (u, v) in [(x.re, y.re), (x.im, y.im)] {
            if (u - v).abs() > 1e-6 {
                return u.total_cmp(&v);
            }
        }
    }
    Ordering::Equal
}

/// Character of the conjugation action on the span of class `class_index`:
/// the value at g is `|Z(g) ∩ C|`.
pub fn conjugation_character(group: &Group, class_index: usize) -> ClassFunction {
    let table = group.classes();
    let class = &table.classes()[class_index];
    ClassFunction::from_ints(table.classes().iter().map(|c| {
        let g = c.representative();
        class.members().iter().filter(|h| h.commutes_with(g)).count() as i64
    }))
}

/// Character of conjugation on the whole group algebra, `g -> |Z(g)|`.
pub fn full_conjugation_character(group: &Group) -> ClassFunction {
    let order = group.order() as i64;
    ClassFunction::from_ints(group.classes().classes().iter().map(|c| order / c.size() as i64))
}

/// Character of W = span of G \ {e} under conjugation: `|Z(g)| - 1`.
pub fn universal_character(group: &Group) -> ClassFunction {
    let order = group.order() as i64;
    ClassFunction::from_ints(group.classes().classes().iter().map(|c| order / c.size() as i64 - 1))
}

/// Character of the left regular representation.
pub fn regular_character(group: &Group) -> ClassFunction {
    ClassFunction::from_ints(
        group
            .classes()
            .classes()
            .iter()
            .map(|c| if c.is_trivial() { group.order() as i64 } else { 0 }),
    )
}

/// Roth property for a centreless group: does every irrep occur in the
/// conjugation representation on the group algebra?
pub fn roth_check(group: &Group, table: &CharTable) -> Result<(bool, Vec<usize>), CharacterError> {
    if group.centre().len() > 1 {
        return Err(CharacterError::NontrivialCentre);
    }
    let mults = table.multiplicities(&full_conjugation_character(group))?;
    Ok((mults.iter().all(|&m| m > 0), mults))
}

/// The class function `m(g) = Σ_i d_i² conj(χ_i(g)) / n_i` for a
/// representation W with irrep multiplicities `n_i`, returned as exact
/// rationals per class.
pub fn m_vector(table: &CharTable, w_multiplicities: &[usize]) -> Result<Vec<BigRational>, CharacterError> {
    if let Some(i) = w_multiplicities.iter().position(|&n| n == 0) {
        return Err(CharacterError::ZeroMultiplicity(table.labels[i].clone()));
    }
    let lcm = w_multiplicities.iter().fold(1u64, |acc, &n| num_integer::lcm(acc, n as u64));
    (0..table.class_sizes.len())
        .map(|j| {
            let v: Complex64 = (0..table.len())
                .map(|i| {
                    let d = table.degrees[i] as f64;
                    table.chars[i][j].conj() * (d * d) * (lcm as f64 / w_multiplicities[i] as f64)
                })
                .sum();
            let k = v.re.round();
            if v.im.abs() > INTEGER_TOL || (v.re - k).abs() > INTEGER_TOL * v.norm().max(1.0) {
                return Err(CharacterError::IrrationalValue(table.class_labels[j].clone()));
            }
            Ok(BigRational::new(BigInt::from(k as i64), BigInt::from(lcm)))
        })
        .collect()
}

/// The m-vector spread over group elements.
pub fn m_vector_element(group: &Group, values: &[BigRational]) -> AlgebraVector<Perm> {
    let table = group.classes();
    AlgebraVector::from_terms(
        table
            .classes()
            .iter()
            .zip(values)
            .flat_map(|(c, v)| c.members().iter().map(move |g| (g.clone(), v.clone()))),
    )
}

/// `K_W(m, x_a) = Σ_g m(g) χ_W(g a)` for one representative a of each class,
/// computed exactly. Entry 0 (a = e) is `Σ_g m(g) χ_W(g)`.
pub fn m_vector_pairings(group: &Group, m: &[BigRational], chi_w: &[i64]) -> Vec<BigRational> {
    let table = group.classes();
    let classes = table.classes();
    classes
        .iter()
        .map(|ca| {
            let a = ca.representative();
            let mut acc = BigRational::zero();
            for (j, c) in classes.iter().enumerate() {
                if m[j].is_zero() {
                    continue;
                }
                let s: i64 = c
                    .members()
                    .iter()
                    .map(|g| chi_w[table.class_index(group, &g.compose(a))])
                    .sum();
                acc += &m[j] * BigRational::from_integer(s.into());
            }
            acc
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct DecompositionEntry {
    pub eigenvalue: f64,
    pub dim: usize,
    /// Multiplicity of each irrep (table order) inside the eigenspace.
    pub multiplicities: Vec<usize>,
}

impl DecompositionEntry {
    pub fn integral(&self) -> Option<i64> {
        let k = self.eigenvalue.round();
        ((self.eigenvalue - k).abs() < INTEGER_TOL).then_some(k as i64)
    }

    pub fn eigenvalue_text(&self) -> String {
        match self.integral() {
            Some(k) => k.to_string(),
            None => format!("{:.6}", self.eigenvalue),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub class_label: String,
    /// Sorted by decreasing eigenvalue.
    pub entries: Vec<DecompositionEntry>,
    pub labels: Vec<String>,
}

impl Decomposition {
    /// Irrep labels with eigenvalues, one per copy, e.g. `("4", 21.0)`.
    pub fn terms(&self) -> Vec<(String, f64)> {
        let mut out = Vec::new();
        for e in &self.entries {
            for (i, &m) in e.multiplicities.iter().enumerate() {
                for _ in 0..m {
                    out.push((self.labels[i].clone(), e.eigenvalue));
                }
            }
        }
        out
    }

    pub fn totals(&self) -> Vec<usize> {
        let mut t = vec![0; self.labels.len()];
        for e in &self.entries {
            for (x, m) in t.iter_mut().zip(&e.multiplicities) {
                *x += m;
            }
        }
        t
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            let value = e.eigenvalue_text();
            for (i, &m) in e.multiplicities.iter().enumerate() {
                for _ in 0..m {
                    if !first {
                        write!(f, " ⊕ ")?;
                    }
                    first = false;
                    write!(f, "{}({})", self.labels[i], value)?;
                }
            }
        }
        Ok(())
    }
}

/// Decomposes each eigenspace of a class Killing form into irreducibles via
/// traces of isotypic projectors against the eigenprojector.
///
/// `trace(ρ(g) E)` is a class function of g, so one representative per class
/// suffices: `t_j = Σ_b <V[b], V[g_j b g_j^-1]>` with V the eigenbasis rows.
pub fn eigenspace_decomposition(
    group: &Group,
    form: &KillingForm,
    table: &CharTable,
    spectrum: &[SpectrumEntry],
) -> Result<Decomposition, CharacterError> {
    let class = form
        .class(group)
        .ok_or_else(|| CharacterError::TableMismatch("decomposition needs a class calculus".into()))?;
    let classes = group.classes().classes();
    let perms: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let g = c.representative();
            class
                .members()
                .iter()
                .map(|b| class.position(&g.conjugate(b)).expect("class is closed"))
                .collect()
        })
        .collect();
    let order = group.order() as f64;
    let mut entries = Vec::with_capacity(spectrum.len());
    for entry in spectrum {
        let traces: Vec<f64> = perms
            .iter()
            .map(|pi| {
                pi.iter()
                    .enumerate()
                    .map(|(b, &c)| entry.eigenbasis.iter().map(|v| v[b] * v[c]).sum::<f64>())
                    .sum()
            })
            .collect();
        let mut multiplicities = Vec::with_capacity(table.len());
        for (i, chi) in table.chars.iter().enumerate() {
            let s: Complex64 = chi
                .iter()
                .zip(&traces)
                .zip(&table.class_sizes)
                .map(|((x, t), &h)| x.conj() * *t * h as f64)
                .sum();
            let m = s / order;
            let k = m.re.round();
            if (m.re - k).abs() > PROJECTOR_TOL || m.im.abs() > PROJECTOR_TOL || k < 0.0 {
                return Err(CharacterError::ProjectorMismatch {
                    irrep: table.labels[i].clone(),
                    eigenvalue: entry.eigenvalue,
                    value: m.re,
                });
            }
            multiplicities.push(k as usize);
        }
        let dim: usize = multiplicities.iter().zip(&table.degrees).map(|(m, d)| m * d).sum();
        if dim != entry.multiplicity {
            return Err(CharacterError::ProjectorMismatch {
                irrep: "(all)".into(),
                eigenvalue: entry.eigenvalue,
                value: dim as f64,
            });
        }
        entries.push(DecompositionEntry {
            eigenvalue: entry.eigenvalue,
            dim,
            multiplicities,
        });
    }
    let decomposition = Decomposition {
        class_label: class.label.clone(),
        entries,
        labels: table.labels.clone(),
    };
    let expected = table.multiplicities(&conjugation_character(group, form_class_index(form)))?;
    if decomposition.totals() != expected {
        return Err(CharacterError::ProjectorMismatch {
            irrep: "(totals)".into(),
            eigenvalue: f64::NAN,
            value: f64::NAN,
        });
    }
    Ok(decomposition)
}

fn form_class_index(form: &KillingForm) -> usize {
    match form.calculus {
        crate::killing::Calculus::Class(j) => j,
        crate::killing::Calculus::Universal => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub kind: FindingKind,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FindingKind {
    NonIntegralEigenvalue,
    DualMismatch,
}

/// Checks that rational irreps confined to one eigenspace have integral
/// eigenvalue, and that each eigenspace holds an irrep and its dual equally
/// often (eigenspaces are real, so their characters are real).
pub fn integrality_audit(d: &Decomposition, table: &CharTable) -> Vec<Finding> {
    let mut findings = Vec::new();
    let totals = d.totals();
    for (i, &total) in totals.iter().enumerate() {
        if total == 0 || !table.rational[i] {
            continue;
        }
        if let Some(e) = d.entries.iter().find(|e| e.multiplicities[i] == total) {
            if e.integral().is_none() {
                findings.push(Finding {
                    kind: FindingKind::NonIntegralEigenvalue,
                    message: format!(
                        "rational irrep {} lies in the eigenspace {} which is not integral",
                        table.labels[i], e.eigenvalue
                    ),
                });
            }
        }
    }
    for e in &d.entries {
        for i in 0..table.len() {
            let j = table.dual_index[i];
            if i < j && e.multiplicities[i] != e.multiplicities[j] {
                findings.push(Finding {
                    kind: FindingKind::DualMismatch,
                    message: format!(
                        "eigenvalue {}: {} occurs {} times but its dual {} occurs {} times",
                        e.eigenvalue_text(),
                        table.labels[i],
                        e.multiplicities[i],
                        table.labels[j],
                        e.multiplicities[j]
                    ),
                });
            }
        }
    }
    findings
}

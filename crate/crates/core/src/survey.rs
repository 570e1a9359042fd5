//! Report assembly for the command-line front end: per-class surveys,
//! eigenspace decompositions, Casimir elements and spectrogram data.
//!
//! Every command takes an already-built [`Group`] and returns a [`Report`],
//! which renders to CSV, JSON or Markdown. Rendering is deterministic: rows
//! follow class-table order and no timestamps are written.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::characters::{
    character_table, eigenspace_decomposition, integrality_audit, CharTable, CharacterError,
};
use crate::group::Group;
use crate::killing::{killing_matrix, AnalysisOptions, KillingError, KillingForm, DEFAULT_MATRIX_CAP};
use crate::linalg::{certify_spectrum, spectrum, DEFAULT_EXACT_CAP, DEFAULT_INVERSE_CAP, DEFAULT_MERGE_TOL};
use crate::perm::Perm;
use crate::specht::Partition;

pub const SURVEY_CSV_HEADER: &str =
    "class,size,chi,real,irreducible,components,lambda_max,sig_pos,sig_neg,sig_zero,nondegenerate";

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("no conjugacy class matches {0:?}")]
    UnknownClass(String),
    #[error("{selector:?} matches several classes: {labels}")]
    AmbiguousClass { selector: String, labels: String },
    #[error("unknown format {0:?} (expected csv, json or md)")]
    UnknownFormat(String),
    #[error(transparent)]
    Killing(#[from] KillingError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Markdown,
}

impl FromStr for Format {
    type Err = SurveyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            _ => Err(SurveyError::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub matrix_cap: usize,
    pub exact_cap: usize,
    pub inverse_cap: usize,
    /// Worker threads for per-class work; 0 uses every core.
    pub jobs: usize,
    pub seed: u64,
    /// Imported table, used instead of computing one.
    pub char_table: Option<CharTable>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            matrix_cap: DEFAULT_MATRIX_CAP,
            exact_cap: DEFAULT_EXACT_CAP,
            inverse_cap: DEFAULT_INVERSE_CAP,
            jobs: 0,
            seed: 0,
            char_table: None,
        }
    }
}

impl Options {
    fn analysis(&self) -> AnalysisOptions {
        AnalysisOptions {
            exact_cap: self.exact_cap,
            seed: self.seed,
        }
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, SurveyError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| SurveyError::Pool(e.to_string()))?;
        Ok(pool.install(f))
    }

    fn table(&self, group: &Group) -> Result<CharTable, SurveyError> {
        match &self.char_table {
            Some(t) => Ok(t.clone()),
            None => Ok(character_table(group)?),
        }
    }
}

/// One row of the per-class survey.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub class: String,
    pub size: usize,
    pub chi: usize,
    pub real: bool,
    pub irreducible: bool,
    pub components: usize,
    pub lambda_max: i64,
    pub sig_pos: usize,
    pub sig_neg: usize,
    pub sig_zero: usize,
    pub nondegenerate: bool,
}

impl SurveyRow {
    fn from_form(form: &KillingForm, size: usize) -> Self {
        let a = form.analysis();
        SurveyRow {
            class: form.label.clone(),
            size,
            chi: a.chi_on_class.unwrap_or(0),
            real: a.is_real,
            irreducible: a.irreducible(),
            components: a.component_count(),
            lambda_max: a.lambda_max.unwrap_or(0),
            sig_pos: a.signature.positive,
            sig_neg: a.signature.negative,
            sig_zero: a.signature.zero,
            nondegenerate: a.nondegenerate,
        }
    }

    pub fn signature_text(&self) -> String {
        format!("({}, {}, {})", self.sig_pos, self.sig_neg, self.sig_zero)
    }

    pub fn irreducible_text(&self) -> String {
        if self.irreducible {
            "True".into()
        } else {
            format!("False ({})", self.components)
        }
    }
}

/// A class whose computation failed; the rest of the report is still valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFailure {
    pub class: String,
    pub size: usize,
    pub error: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepCount {
    pub irrep: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenspaceBlock {
    pub eigenvalue: String,
    pub exact: Option<i64>,
    pub irrational: bool,
    pub dim: usize,
    pub irreps: Vec<IrrepCount>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionBlock {
    pub class: String,
    pub size: usize,
    pub text: String,
    pub irrational: bool,
    pub eigenspaces: Vec<EigenspaceBlock>,
    pub findings: Vec<String>,
    pub table_provenance: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CasimirCoefficient {
    /// `e` for the identity, otherwise the class label.
    pub class: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CasimirBlock {
    pub class: String,
    pub text: String,
    pub coefficients: Vec<CasimirCoefficient>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrogramRow {
    pub class: String,
    pub eigenvalue: String,
    pub multiplicity: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Survey,
    Decompose,
    Casimir,
    Spectrogram,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub kind: ReportKind,
    pub group: String,
    pub order: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<SurveyRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub casimir: Option<CasimirBlock>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub spectrogram: Vec<SpectrogramRow>,
    pub warnings: Vec<String>,
    pub failures: Vec<ClassFailure>,
}

impl Report {
    fn new(kind: ReportKind, group: &Group, seed: u64) -> Self {
        Report {
            kind,
            group: group.name().to_string(),
            order: group.order(),
            seed,
            rows: Vec::new(),
            decomposition: None,
            casimir: None,
            spectrogram: Vec::new(),
            warnings: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Markdown => self.render_markdown(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = format!("# group={} order={} seed={}\n", self.group, self.order, self.seed);
        match self.kind {
            ReportKind::Survey => {
                out.push_str(SURVEY_CSV_HEADER);
                out.push('\n');
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},{},{}",
                        r.class,
                        r.size,
                        r.chi,
                        r.real,
                        r.irreducible,
                        r.components,
                        r.lambda_max,
                        r.sig_pos,
                        r.sig_neg,
                        r.sig_zero,
                        r.nondegenerate
                    );
                }
            }
            ReportKind::Decompose => {
                out.push_str("class,eigenvalue,irrational,irrep,multiplicity\n");
                if let Some(d) = &self.decomposition {
                    for e in &d.eigenspaces {
                        for i in &e.irreps {
                            let _ = writeln!(out, "{},{},{},{},{}", d.class, e.eigenvalue, e.irrational, i.irrep, i.multiplicity);
                        }
                    }
                }
            }
            ReportKind::Casimir => {
                out.push_str("class,coefficient\n");
                if let Some(c) = &self.casimir {
                    for t in &c.coefficients {
                        let _ = writeln!(out, "{},{}", t.class, t.coefficient);
                    }
                }
            }
            ReportKind::Spectrogram => {
                out.push_str("class,eigenvalue,multiplicity\n");
                for r in &self.spectrogram {
                    let _ = writeln!(out, "{},{},{}", r.class, r.eigenvalue, r.multiplicity);
                }
            }
        }
        for f in &self.failures {
            let _ = writeln!(out, "# error {}: {}", f.class, f.error);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "# warning: {w}");
        }
        out
    }

    fn render_markdown(&self) -> String {
        let mut out = format!("## {}, order {}\n\nseed: {}\n\n", self.group, self.order, self.seed);
        match self.kind {
            ReportKind::Survey => {
                out.push_str("| Class | Size | χ | Real | Irred | λmax | Signature |\n");
                out.push_str("|---|---|---|---|---|---|---|\n");
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} | {} |",
                        r.class,
                        r.size,
                        r.chi,
                        if r.real { "True" } else { "False" },
                        r.irreducible_text(),
                        r.lambda_max,
                        r.signature_text()
                    );
                }
            }
            ReportKind::Decompose => {
                if let Some(d) = &self.decomposition {
                    let _ = writeln!(out, "{} (size {}): {}", d.class, d.size, d.text);
                    if d.irrational {
                        out.push_str("\nirrational eigenvalues present (shown to 6 decimals)\n");
                    }
                    for f in &d.findings {
                        let _ = writeln!(out, "\nfinding: {f}");
                    }
                    let _ = writeln!(out, "\ncharacter table: {}", d.table_provenance);
                }
            }
            ReportKind::Casimir => {
                if let Some(c) = &self.casimir {
                    let _ = writeln!(out, "Casimir for {}: {}", c.class, c.text);
                }
            }
            ReportKind::Spectrogram => {
                out.push_str("| Class | Eigenvalue | Multiplicity |\n|---|---|---|\n");
                for r in &self.spectrogram {
                    let _ = writeln!(out, "| {} | {} | {} |", r.class, r.eigenvalue, r.multiplicity);
                }
            }
        }
        if !self.failures.is_empty() {
            out.push_str("\n### Errors\n\n");
            for f in &self.failures {
                let _ = writeln!(out, "- {}: {}", f.class, f.error);
            }
        }
        if !self.warnings.is_empty() {
            out.push_str("\n### Warnings\n\n");
            for w in &self.warnings {
                let _ = writeln!(out, "- {w}");
            }
        }
        out
    }
}

/// Integers exactly, anything else to six decimals.
pub fn eigenvalue_text(value: f64, exact: Option<i64>) -> String {
    match exact {
        Some(k) => k.to_string(),
        None if (value - value.round()).abs() < 1e-6 => format!("{}", value.round() as i64),
        None => format!("{value:.6}"),
    }
}

/// Resolves a class selector: a label such as `2A`, a cycle type such as
/// `2,1,1`, `k-cycles` for a single k-cycle, or a representative written as
/// `(1,2,3)` or `123`.
pub fn resolve_class(group: &Group, selector: &str) -> Result<usize, SurveyError> {
    let table = group.classes();
    let s = selector.trim();
    if let Some((j, _)) = table.by_label(s) {
        return Ok(j);
    }
    let unknown = || SurveyError::UnknownClass(selector.to_string());
    let n = group.degree();
    let by_type = |parts: Partition| -> Result<usize, SurveyError> {
        let hits: Vec<usize> = table
            .classes()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.cycle_type() == parts.parts())
            .map(|(j, _)| j)
            .collect();
        match hits.as_slice() {
            [] => Err(unknown()),
            [j] => Ok(*j),
            _ => Err(SurveyError::AmbiguousClass {
                selector: selector.to_string(),
                labels: hits.iter().map(|&j| table.classes()[j].label.as_str()).collect::<Vec<_>>().join(", "),
            }),
        }
    };
    let by_perm = |p: Perm| -> Result<usize, SurveyError> {
        if group.contains(&p) {
            Ok(table.class_index(group, &p))
        } else {
            Err(unknown())
        }
    };
    if let Some(k) = s.strip_suffix("-cycles") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        if k < 2 || k > n {
            return Err(unknown());
        }
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, n - k));
        return by_type(Partition::new(parts).map_err(|_| unknown())?);
    }
    if s.starts_with('(') {
        return by_perm(Perm::parse_cycles(s, n).map_err(|_| unknown())?);
    }
    if s.contains(',') {
        let parts = Partition::from_str(s).map_err(|_| unknown())?;
        if parts.n() != n {
            return Err(unknown());
        }
        return by_type(parts);
    }
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit()) {
        let cycle = s.chars().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        return by_perm(Perm::parse_cycles(&format!("({cycle})"), n).map_err(|_| unknown())?);
    }
    Err(unknown())
}

fn conjecture_warnings(group: &Group, rows: &[SurveyRow]) -> Vec<String> {
    if !group.is_simple_via_classes() {
        return Vec::new();
    }
    let classes = group.classes();
    let mut out = Vec::new();
    for r in rows {
        if !r.real {
            continue;
        }
        let order = classes.by_label(&r.class).map_or(0, |(_, c)| c.element_order);
        if !r.nondegenerate {
            out.push(format!("{}: real class with degenerate Killing form", r.class));
        }
        if order == 2 && r.sig_pos != r.size {
            out.push(format!("{}: involution class is not positive definite {}", r.class, r.signature_text()));
        }
        if order > 2 && r.sig_pos != r.sig_neg {
            out.push(format!("{}: real class with nonzero signature {}", r.class, r.signature_text()));
        }
    }
    out
}

/// One row per nontrivial class, plus conjecture warnings for simple groups.
pub fn cmd_survey(group: &Group, opts: &Options) -> Result<Report, SurveyError> {
    let classes = group.classes().classes();
    let nontrivial: Vec<usize> = (0..classes.len()).filter(|&j| !classes[j].is_trivial()).collect();
    let results: Vec<Result<SurveyRow, ClassFailure>> = opts.run(|| {
        nontrivial
            .par_iter()
            .map(|&j| {
                let c = &classes[j];
                killing_matrix(group, j, opts.matrix_cap)
                    .and_then(|f| f.analyze(group, opts.analysis()))
                    .map(|f| SurveyRow::from_form(&f, c.size()))
                    .map_err(|e| ClassFailure {
                        class: c.label.clone(),
                        size: c.size(),
                        error: e.to_string(),
                    })
            })
            .collect()
    })?;
    let mut report = Report::new(ReportKind::Survey, group, opts.seed);
    for r in results {
        match r {
            Ok(row) => report.rows.push(row),
            Err(f) => report.failures.push(f),
        }
    }
    report.warnings = conjecture_warnings(group, &report.rows);
    Ok(report)
}

/// Eigenspaces of the class Killing form, each split into irreducibles.
pub fn cmd_decompose(group: &Group, selector: &str, opts: &Options) -> Result<Report, SurveyError> {
    let j = resolve_class(group, selector)?;
    let form = killing_matrix(group, j, opts.matrix_cap)?;
    let table = opts.table(group)?;
    let (spec, exact) = opts.run(|| {
        let mut spec = spectrum(&form.matrix, DEFAULT_MERGE_TOL);
        certify_spectrum(&form.matrix, &mut spec, opts.seed);
        let exact: Vec<Option<i64>> = spec.iter().map(|e| e.exact).collect();
        (spec, exact)
    })?;
    let d = eigenspace_decomposition(group, &form, &table, &spec)?;
    let findings = integrality_audit(&d, &table).into_iter().map(|f| f.message).collect();
    let eigenspaces: Vec<EigenspaceBlock> = d
        .entries
        .iter()
        .zip(&exact)
        .map(|(e, &x)| EigenspaceBlock {
            eigenvalue: eigenvalue_text(e.eigenvalue, x),
            exact: x,
            irrational: e.integral().is_none(),
            dim: e.dim,
            irreps: e
                .multiplicities
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| IrrepCount {
                    irrep: table.labels[i].clone(),
                    multiplicity: m,
                })
                .collect(),
        })
        .collect();
    let mut report = Report::new(ReportKind::Decompose, group, opts.seed);
    report.decomposition = Some(DecompositionBlock {
        class: form.label.clone(),
        size: form.basis.len(),
        text: d.to_string(),
        irrational: eigenspaces.iter().any(|e| e.irrational),
        eigenspaces,
        findings,
        table_provenance: table.provenance.clone(),
    });
    Ok(report)
}

/// Quadratic Casimir of a nondegenerate class Killing form.
pub fn cmd_casimir(group: &Group, selector: &str, opts: &Options) -> Result<Report, SurveyError> {
    let j = resolve_class(group, selector)?;
    let form = killing_matrix(group, j, opts.matrix_cap)?;
    let casimir = form.casimir(group, opts.inverse_cap)?;
    let mut report = Report::new(ReportKind::Casimir, group, opts.seed);
    report.casimir = Some(CasimirBlock {
        class: form.label.clone(),
        text: casimir.to_string(),
        coefficients: casimir
            .terms
            .iter()
            .map(|t| CasimirCoefficient {
                class: if t.is_identity { "e".into() } else { t.label.clone() },
                coefficient: t.coeff.to_string(),
            })
            .collect(),
    });
    Ok(report)
}

/// (class, eigenvalue, multiplicity) for every nontrivial class.
pub fn cmd_spectrogram(group: &Group, opts: &Options) -> Result<Report, SurveyError> {
    let classes = group.classes().classes();
    let nontrivial: Vec<usize> = (0..classes.len()).filter(|&j| !classes[j].is_trivial()).collect();
    let results: Vec<Result<Vec<SpectrogramRow>, ClassFailure>> = opts.run(|| {
        nontrivial
            .par_iter()
            .map(|&j| {
                let c = &classes[j];
                killing_matrix(group, j, opts.matrix_cap)
                    .map(|f| {
                        let mut spec = spectrum(&f.matrix, DEFAULT_MERGE_TOL);
                        certify_spectrum(&f.matrix, &mut spec, opts.seed);
                        spec.iter()
                            .map(|e| SpectrogramRow {
                                class: c.label.clone(),
                                eigenvalue: eigenvalue_text(e.eigenvalue, e.exact),
                                multiplicity: e.multiplicity,
                            })
                            .collect()
                    })
                    .map_err(|e| ClassFailure {
                        class: c.label.clone(),
                        size: c.size(),
                        error: e.to_string(),
                    })
            })
            .collect()
    })?;
    let mut report = Report::new(ReportKind::Spectrogram, group, opts.seed);
    for r in results {
        match r {
            Ok(rows) => report.spectrogram.extend(rows),
            Err(f) => report.failures.push(f),
        }
    }
    Ok(report)
}

//! Constructors for the groups named on the command line, and the plain-text
//! generator file format.
//!
//! ```text
//! name M11
//! degree 11
//! (2,10)(4,11)(5,7)(8,9)
//! (1,4,3,8)(2,5,6,9)
//! ```

use std::path::Path;

use thiserror::Error;

use crate::field::{FieldElem, FieldError, GaloisField};
use crate::group::{Group, GroupError};
use crate::perm::{Perm, PermError};

const M11_FILE: &str = include_str!("../../../data/m11.grp");
const PSU33_FILE: &str = include_str!("../../../data/psu33.grp");

#[derive(Debug, Error)]
pub enum NamedGroupError {
    #[error("unknown group spec {0:?}")]
    UnknownSpec(String),
    #[error("bad field: {0}")]
    BadField(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("group file line {line}: {message}")]
    File { line: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Builds a group from a spec such as `S4`, `A5`, `PSL(2,8)`, `PSL(3,3)`,
/// `M11`, `PSU(3,3)` or `file:data/m11.grp`.
pub fn build_named_group(spec: &str, cap: usize) -> Result<Group, NamedGroupError> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(path) = compact.strip_prefix("file:") {
        return read_group_file(Path::new(path), cap);
    }
    let upper = compact.to_ascii_uppercase();
    match upper.as_str() {
        "M11" => return parse_group_file(M11_FILE, cap),
        "PSU(3,3)" | "U3(3)" => return parse_group_file(PSU33_FILE, cap),
        _ => {}
    }
    let unknown = || NamedGroupError::UnknownSpec(spec.to_string());
    if let Some(n) = upper.strip_prefix('S').and_then(|s| s.parse::<usize>().ok()) {
        return symmetric(n, cap);
    }
    if let Some(n) = upper.strip_prefix('A').and_then(|s| s.parse::<usize>().ok()) {
        return alternating(n, cap);
    }
    let psl = |dim: &str| -> Option<u32> {
        upper
            .strip_prefix(&format!("PSL({dim},"))
            .or_else(|| upper.strip_prefix(&format!("L{dim}(")))
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.parse().ok())
    };
    if let Some(q) = psl("2") {
        return psl2(q, cap);
    }
    if let Some(q) = psl("3") {
        return psl3(q, cap);
    }
    Err(unknown())
}

/// S_n on points 0..n.
pub fn symmetric(n: usize, cap: usize) -> Result<Group, NamedGroupError> {
    if n == 0 {
        return Err(NamedGroupError::UnknownSpec("S0".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm(n, &[vec![0, 1]]));
    }
    if n >= 3 {
        gens.push(perm(n, &[(0..n).collect()]));
    }
    Ok(Group::generate(&format!("S{n}"), n, gens, cap)?)
}

/// A_n on points 0..n.
pub fn alternating(n: usize, cap: usize) -> Result<Group, NamedGroupError> {
    if n == 0 {
        return Err(NamedGroupError::UnknownSpec("A0".into()));
    }
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(perm(n, &[vec![0, 1, 2]]));
    }
    if n >= 4 {
        let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
        gens.push(perm(n, &[long]));
    }
    Ok(Group::generate(&format!("A{n}"), n, gens, cap)?)
}

/// PSL(2,q) on the q+1 points of the projective line, point q being infinity.
///
/// Generators are x -> x+1, x -> w^2 x and x -> -1/x with w primitive. The
/// square keeps the diagonal part inside PSL for odd q.
pub fn psl2(q: u32, cap: usize) -> Result<Group, NamedGroupError> {
    let f = GaloisField::new(q)?;
    let inf = q as usize;
    let n = inf + 1;
    let w2 = f.pow(f.primitive_element(), 2);
    let mobius = |map: &dyn Fn(FieldElem) -> Option<FieldElem>, at_inf: usize| -> Perm {
        let mut images: Vec<usize> = f
            .elements()
            .map(|x| map(x).map_or(inf, |y| y.0 as usize))
            .collect();
        images.push(at_inf);
        Perm::from_images(images).expect("Mobius maps are bijective")
    };
    let translate = mobius(&|x| Some(f.add(x, f.one())), inf);
    let scale = mobius(&|x| Some(f.mul(w2, x)), inf);
    let invert = mobius(&|x| f.inv(x).map(|y| f.neg(y)), 0);
    let gens = vec![translate, scale, invert];
    Ok(Group::generate(&format!("PSL(2,{q})"), n, gens, cap)?)
}

/// PSL(3,q) on the q^2+q+1 points of the projective plane.
///
/// SL(3,q) is generated by the elementary transvections I + t E_ij with t
/// running over a basis of GF(q) over its prime field.
pub fn psl3(q: u32, cap: usize) -> Result<Group, NamedGroupError> {
    let f = GaloisField::new(q)?;
    let mut points: Vec<[FieldElem; 3]> = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            points.push([f.one(), a, b]);
        }
    }
    for b in f.elements() {
        points.push([f.zero(), f.one(), b]);
    }
    points.push([f.zero(), f.zero(), f.one()]);
    let normalise = |v: [FieldElem; 3]| -> [FieldElem; 3] {
        let lead = *v.iter().find(|c| **c != f.zero()).expect("nonzero vector");
        let inv = f.inv(lead).expect("nonzero lead");
        v.map(|c| f.mul(inv, c))
    };
    let index = |v: [FieldElem; 3]| -> usize {
        points.iter().position(|p| *p == v).expect("point on the plane")
    };

    let mut basis = vec![f.one()];
    let g = f.generator();
    for _ in 1..f.degree() {
        let last = *basis.last().unwrap();
        basis.push(f.mul(last, g));
    }
    let mut gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for &t in &basis {
                // row vector v -> v (I + t E_ij): adds t*v_i to coordinate j
                let images: Vec<usize> = points
                    .iter()
                    .map(|p| {
                        let mut v = *p;
                        v[j] = f.add(v[j], f.mul(t, p[i]));
                        index(normalise(v))
                    })
                    .collect();
                gens.push(Perm::from_images(images).expect("transvections are bijective"));
            }
        }
    }
    Ok(Group::generate(&format!("PSL(3,{q})"), points.len(), gens, cap)?)
}

pub fn read_group_file(path: &Path, cap: usize) -> Result<Group, NamedGroupError> {
    let text = std::fs::read_to_string(path).map_err(|source| NamedGroupError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_group_file(&text, cap)
}

pub fn parse_group_file(text: &str, cap: usize) -> Result<Group, NamedGroupError> {
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    let err = |line: usize, message: String| NamedGroupError::File { line, message };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("degree") {
            let d = rest
                .trim()
                .parse()
                .map_err(|_| err(line_no, format!("bad degree {:?}", rest.trim())))?;
            degree = Some(d);
        } else {
            let d = degree.ok_or_else(|| err(line_no, "generator before degree line".into()))?;
            let p = Perm::parse_cycles(line, d)
                .map_err(|e: PermError| err(line_no, e.to_string()))?;
            gens.push(p);
        }
    }
    let degree = degree.ok_or_else(|| err(0, "missing degree line".into()))?;
    let name = name.unwrap_or_else(|| "unnamed".into());
    Ok(Group::generate(&name, degree, gens, cap)?)
}

fn perm(n: usize, cycles: &[Vec<usize>]) -> Perm {
    Perm::from_cycles(n, cycles).expect("valid built-in cycles")
}

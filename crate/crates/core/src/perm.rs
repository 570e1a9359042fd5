//! Permutations of the points `0..degree`.
//!
//! Composition follows the function convention: `a * b` applies `b` first,
//! then `a`. Conjugation `g.conjugate(x)` is `g x g^-1`, which relabels every
//! cycle `(i j ...)` of `x` as `(g(i) g(j) ...)`.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("images do not form a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("degree {0} exceeds the supported maximum of 65535")]
    DegreeTooLarge(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("malformed cycle notation: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= u16::MAX as usize, "degree too large");
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::NotBijective(n));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p >= degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if touched[p] {
                    return Err(PermError::NotBijective(degree));
                }
                touched[p] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    /// Parses 1-based cycle notation such as `(1,2,3)(4,5)` or `()`.
    ///
    /// Inside a cycle, points may be separated by commas or whitespace. A
    /// cycle with no separators and only digits, like `(1234)`, is read one
    /// digit per point.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let text = text.trim();
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| PermError::Parse(text.to_string()))?;
            if !rest[..open].trim().is_empty() {
                return Err(PermError::Parse(text.to_string()));
            }
            let close = rest[open..]
                .find(')')
                .map(|c| c + open)
                .ok_or_else(|| PermError::Parse(text.to_string()))?;
            let body = rest[open + 1..close].trim();
            if !body.is_empty() {
                let tokens: Vec<&str> = if body.contains(',') || body.contains(char::is_whitespace)
                {
                    body.split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|t| !t.is_empty())
                        .collect()
                } else {
                    body.char_indices().map(|(i, c)| &body[i..i + c.len_utf8()]).collect()
                };
                let mut cycle = Vec::with_capacity(tokens.len());
                for tok in tokens {
                    let point: usize = tok
                        .parse()
                        .map_err(|_| PermError::Parse(text.to_string()))?;
                    if point == 0 {
                        return Err(PermError::Parse(text.to_string()));
                    }
                    cycle.push(point - 1);
                }
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm { images: inv.into() }
    }

    /// `self * x * self^-1`.
    pub fn conjugate(&self, x: &Perm) -> Perm {
        let mut out = vec![0u16; self.degree()];
        for (i, &xi) in x.images.iter().enumerate() {
            out[self.images[i] as usize] = self.images[xi as usize];
        }
        Perm { images: out.into() }
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        other
            .images
            .iter()
            .enumerate()
            .all(|(i, &oi)| self.images[oi as usize] == other.images[self.images[i] as usize])
    }

    pub fn pow(&self, mut exp: usize) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            exp >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.apply(p);
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycle_type()
            .into_iter()
            .fold(1, num_integer::lcm)
    }

    pub fn inversions(&self) -> usize {
        let imgs = &self.images;
        let mut count = 0;
        for i in 0..imgs.len() {
            for j in i + 1..imgs.len() {
                if imgs[i] > imgs[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        let odd = self.cycle_type().iter().map(|&l| l - 1).sum::<usize>() % 2 == 1;
        if odd {
            -1
        } else {
            1
        }
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl fmt::Display for Perm {
    /// 1-based disjoint cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

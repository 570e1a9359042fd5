//! Permutation groups held as a fully enumerated element list.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::perm::Perm;

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the element cap of {0}")]
    CapExceeded(usize),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("element {0} is not in the group")]
    ElementNotInGroup(String),
}

pub struct Group {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    classes: OnceLock<ClassTable>,
}

/// A conjugacy class together with a section `s` satisfying
/// `s(h) * rep * s(h)^-1 = h` for every member `h`.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub label: String,
    pub element_order: usize,
    pub is_real: bool,
    representative: Perm,
    members: Vec<Perm>,
    sections: Vec<Perm>,
    position: HashMap<Perm, u32>,
}

/// All conjugacy classes of a group plus the class of every element.
#[derive(Debug)]
pub struct ClassTable {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    inverse_class: Vec<usize>,
}

impl Group {
    /// Closes `generators` under composition. An empty generating set gives
    /// the trivial group of the stated degree.
    pub fn generate(
        name: &str,
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Group, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        let elements = closure(degree, &[Perm::identity(degree)], &gens, cap)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        Ok(Group {
            name: name.to_string(),
            degree,
            generators,
            elements,
            index,
            classes: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Elements in breadth-first order from the identity, which comes first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn identity(&self) -> &Perm {
        &self.elements[0]
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    /// Conjugacy classes, computed on first use.
    pub fn classes(&self) -> &ClassTable {
        self.classes.get_or_init(|| ClassTable::build(self))
    }

    /// The conjugacy class of `g`, computed as an orbit without building the
    /// full class table.
    pub fn class_of(&self, g: &Perm) -> Result<ConjClass, GroupError> {
        if !self.contains(g) {
            return Err(GroupError::ElementNotInGroup(g.to_string()));
        }
        let mut class = ConjClass::orbit(&self.generators, g.clone());
        let inv = g.inverse();
        class.is_real = class.contains(&inv);
        class.label = format!("{}?", class.element_order);
        Ok(class)
    }

    /// `|Z(g)|`, or `|Z(g) ∩ within|` when a class is given.
    pub fn centralizer_count(
        &self,
        g: &Perm,
        within: Option<&ConjClass>,
    ) -> Result<usize, GroupError> {
        if !self.contains(g) {
            return Err(GroupError::ElementNotInGroup(g.to_string()));
        }
        Ok(match within {
            Some(c) => c.members.iter().filter(|h| h.commutes_with(g)).count(),
            None => {
                let table = self.classes();
                self.order() / table.class_of_element(self, g).size()
            }
        })
    }

    /// True iff the members of `class` generate the whole group.
    pub fn class_generates(&self, class: &ConjClass) -> bool {
        self.subgroup_order(class.members()) == self.order()
    }

    /// Order of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[Perm]) -> usize {
        let mut chosen: Vec<Perm> = Vec::new();
        let mut current: Vec<Perm> = vec![Perm::identity(self.degree)];
        let mut members: std::collections::HashSet<Perm> = current.iter().cloned().collect();
        for g in gens {
            if members.contains(g) {
                continue;
            }
            chosen.push(g.clone());
            current = closure(self.degree, &current, &chosen, usize::MAX)
                .expect("subgroup closure is bounded by the group");
            members = current.iter().cloned().collect();
            if current.len() == self.order() {
                break;
            }
        }
        current.len()
    }

    /// A group is simple iff every nontrivial class generates it.
    pub fn is_simple_via_classes(&self) -> bool {
        if self.order() <= 1 {
            return false;
        }
        self.classes()
            .classes()
            .iter()
            .skip(1)
            .all(|c| self.class_generates(c))
    }

    /// Elements of the centre.
    pub fn centre(&self) -> Vec<&Perm> {
        self.classes()
            .classes()
            .iter()
            .filter(|c| c.size() == 1)
            .map(|c| c.representative())
            .collect()
    }
}

/// Breadth-first closure of `seed ∪ gens` under right multiplication by `gens`.
/// `seed` must already be a subgroup (or just the identity).
fn closure(
    degree: usize,
    seed: &[Perm],
    gens: &[Perm],
    cap: usize,
) -> Result<Vec<Perm>, GroupError> {
    let _ = degree;
    let mut seen: std::collections::HashSet<Perm> = seed.iter().cloned().collect();
    let mut order: Vec<Perm> = seed.to_vec();
    let mut queue: VecDeque<usize> = (0..order.len()).collect();
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let next = order[i].compose(g);
            if !seen.contains(&next) {
                if order.len() >= cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                seen.insert(next.clone());
                order.push(next);
                queue.push_back(order.len() - 1);
            }
        }
    }
    Ok(order)
}

impl ConjClass {
    /// Orbit of `rep` under conjugation by `gens`, with sections.
    /// Members are stored in increasing lexicographic order of their images.
    pub(crate) fn orbit(gens: &[Perm], rep: Perm) -> ConjClass {
        let degree = rep.degree();
        let mut found: HashMap<Perm, Perm> = HashMap::new();
        found.insert(rep.clone(), Perm::identity(degree));
        let mut queue = VecDeque::from([rep.clone()]);
        while let Some(h) = queue.pop_front() {
            let s = found[&h].clone();
            for x in gens {
                let next = x.conjugate(&h);
                if !found.contains_key(&next) {
                    found.insert(next.clone(), x.compose(&s));
                    queue.push_back(next);
                }
            }
        }
        let mut pairs: Vec<(Perm, Perm)> = found.into_iter().collect();
        pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let (members, sections): (Vec<Perm>, Vec<Perm>) = pairs.into_iter().unzip();
        let position = members
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        ConjClass {
            label: String::new(),
            element_order: rep.order(),
            is_real: false,
            representative: rep,
            members,
            sections,
            position,
        }
    }

    pub fn representative(&self) -> &Perm {
        &self.representative
    }

    pub fn members(&self) -> &[Perm] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.representative.is_identity()
    }

    /// Section value for the member at `index`.
    pub fn section(&self, index: usize) -> &Perm {
        &self.sections[index]
    }

    pub fn position(&self, h: &Perm) -> Option<usize> {
        self.position.get(h).map(|&i| i as usize)
    }

    pub fn contains(&self, h: &Perm) -> bool {
        self.position.contains_key(h)
    }

    /// Cycle type of the members (meaningful for symmetric groups).
    pub fn cycle_type(&self) -> Vec<usize> {
        self.representative.cycle_type()
    }
}

impl ClassTable {
    fn build(group: &Group) -> ClassTable {
        let n = group.order();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<ConjClass> = Vec::new();
        for i in 0..n {
            if class_of[i] != u32::MAX {
                continue;
            }
            let orbit = ConjClass::orbit(&group.generators, group.elements[i].clone());
            // re-root at the smallest member so sections are canonical
            let smallest = orbit.members[0].clone();
            let class = if smallest == orbit.representative {
                orbit
            } else {
                ConjClass::orbit(&group.generators, smallest)
            };
            let id = raw.len() as u32;
            for m in &class.members {
                class_of[group.index[m] as usize] = id;
            }
            raw.push(class);
        }

        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| {
            let (ca, cb) = (&raw[a], &raw[b]);
            (ca.element_order, ca.size(), &ca.members[0]).cmp(&(
                cb.element_order,
                cb.size(),
                &cb.members[0],
            ))
        });
        let mut remap = vec![0u32; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = remap[*c as usize];
        }
        let mut slots: Vec<Option<ConjClass>> = raw.into_iter().map(Some).collect();
        let mut classes: Vec<ConjClass> = order.iter().map(|&o| slots[o].take().unwrap()).collect();

        // ATLAS-style letters within each element order
        let mut letter_counter: HashMap<usize, usize> = HashMap::new();
        for c in classes.iter_mut() {
            let k = letter_counter.entry(c.element_order).or_insert(0);
            c.label = format!("{}{}", c.element_order, letters(*k));
            *k += 1;
        }

        let mut inverse_class = vec![0usize; classes.len()];
        for (j, c) in classes.iter().enumerate() {
            let inv = c.representative.inverse();
            inverse_class[j] = class_of[group.index[&inv] as usize] as usize;
        }
        for (j, c) in classes.iter_mut().enumerate() {
            c.is_real = inverse_class[j] == j;
        }
        ClassTable {
            classes,
            class_of,
            inverse_class,
        }
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing the element with group index `element`.
    pub fn class_index_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    pub fn class_of_element(&self, group: &Group, g: &Perm) -> &ConjClass {
        &self.classes[self.class_index(group, g)]
    }

    pub fn class_index(&self, group: &Group, g: &Perm) -> usize {
        self.class_of[group.index[g] as usize] as usize
    }

    pub fn inverse_class(&self, j: usize) -> usize {
        self.inverse_class[j]
    }

    pub fn by_label(&self, label: &str) -> Option<(usize, &ConjClass)> {
        self.classes
            .iter()
            .enumerate()
            .find(|(_, c)| c.label.eq_ignore_ascii_case(label))
    }
}

/// 0 -> "A", 25 -> "Z", 26 -> "AA", ...
fn letters(mut k: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push((b'A' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    out.iter().rev().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Group {
        let t = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        Group::generate(&format!("S{n}"), n, vec![t, c], DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn letters_sequence() {
        assert_eq!(letters(0), "A");
        assert_eq!(letters(25), "Z");
        assert_eq!(letters(26), "AA");
        assert_eq!(letters(27), "AB");
    }

    #[test]
    fn s3_generation_and_classes() {
        let g = sym(3);
        assert_eq!(g.order(), 6);
        let table = g.classes();
        let labels: Vec<&str> = table.classes().iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, vec!["1A", "2A", "3A"]);
        assert!(table.classes().iter().all(|c| c.is_real));
    }

    #[test]
    fn trivial_group_from_empty_generators() {
        let g = Group::generate("1", 4, vec![], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.classes().len(), 1);
        assert!(g.classes().classes()[0].is_trivial());
    }

    #[test]
    fn cap_and_degree_errors() {
        let t = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(5, &[(0..5).collect()]).unwrap();
        assert_eq!(
            Group::generate("S5", 5, vec![t.clone(), c], 50).err(),
            Some(GroupError::CapExceeded(50))
        );
        let bad = Perm::identity(4);
        assert!(matches!(
            Group::generate("x", 5, vec![t, bad], 100),
            Err(GroupError::DegreeMismatch { expected: 5, found: 4 })
        ));
    }

    #[test]
    fn sections_conjugate_representative() {
        let g = sym(5);
        for c in g.classes().classes() {
            for (i, h) in c.members().iter().enumerate() {
                assert_eq!(&c.section(i).conjugate(c.representative()), h);
            }
        }
    }

    #[test]
    fn centralizer_counts() {
        let g = sym(3);
        let table = g.classes();
        let (_, transpositions) = table.by_label("2A").unwrap();
        let e = Perm::identity(3);
        assert_eq!(g.centralizer_count(&e, Some(transpositions)).unwrap(), 3);
        assert_eq!(g.centralizer_count(&e, None).unwrap(), 6);
        let r = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(g.centralizer_count(&r, None).unwrap(), 3);
        let outside = Perm::identity(4);
        assert!(matches!(
            g.centralizer_count(&outside, None),
            Err(GroupError::ElementNotInGroup(_))
        ));
    }

    #[test]
    fn class_generation_in_s3() {
        let g = sym(3);
        let t = g.classes();
        assert!(g.class_generates(t.by_label("2A").unwrap().1));
        assert!(!g.class_generates(t.by_label("3A").unwrap().1));
        assert!(!g.is_simple_via_classes());
    }

    #[test]
    fn orbit_stabilizer_and_partition_s5() {
        let g = sym(5);
        let t = g.classes();
        let total: usize = t.classes().iter().map(|c| c.size()).sum();
        assert_eq!(total, 120);
        for c in t.classes() {
            let z = g.centralizer_count(c.representative(), None).unwrap();
            assert_eq!(z * c.size(), 120);
            assert_eq!(c.is_real, c.members().iter().all(|h| c.contains(&h.inverse())));
        }
    }
}

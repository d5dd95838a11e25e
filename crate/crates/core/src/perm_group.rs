//! Finite permutation groups by full element enumeration.
//!
//! Products act on the right: `p * q` applies `p` first, then `q`, so the
//! image of point `i` under `p * q` is `q(p(i))`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};

/// Largest group order that [`group_closure`] will enumerate.
pub const MAX_GROUP_ORDER: usize = 100_000;

/// Default cap on intersection states explored by [`min_core_conjugates`].
pub const DEFAULT_CORE_SEARCH_CAP: usize = 100_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(DepthError::invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(DepthError::invalid(format!("bad cycle {cycle:?}")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Perm) -> Self {
        &(&g.inverse() * self) * g
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&i| rhs.images[i]).collect(),
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, `()` for the identity.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Perm::new(images).map_err(serde::de::Error::custom)
    }
}

/// A finite permutation group with all elements enumerated.
///
/// Element 0 is the identity. Every other element `i` is recorded as
/// `elements[parent] * generators[gen]`, which lets actions be evaluated on
/// all elements in one sweep.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    parent: Vec<(usize, usize)>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.elements.iter().all(|g| other.contains(g))
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Breadth-first closure of `generators` with the default order cap.
pub fn group_closure(degree: usize, generators: &[Perm]) -> Result<PermGroup> {
    group_closure_capped(degree, generators, MAX_GROUP_ORDER)
}

pub fn group_closure_capped(degree: usize, generators: &[Perm], cap: usize) -> Result<PermGroup> {
    if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
        return Err(DepthError::DimensionMismatch(format!(
            "generator {g} has degree {} but the group has degree {degree}",
            g.degree()
        )));
    }
    let id = Perm::identity(degree);
    let mut elements = vec![id.clone()];
    let mut lookup = HashMap::from([(id, 0)]);
    let mut parent = vec![(0, usize::MAX)];
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        for (k, s) in generators.iter().enumerate() {
            let next = &elements[i] * s;
            if !lookup.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(DepthError::cap("group order", cap));
                }
                lookup.insert(next.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(next);
                parent.push((i, k));
            }
        }
    }
    Ok(PermGroup {
        degree,
        generators: generators.to_vec(),
        elements,
        lookup,
        parent,
    })
}

/// Greedy generating set for a list of elements already known to be closed.
pub fn subgroup_from_elements(degree: usize, elements: &[Perm]) -> PermGroup {
    let mut gens: Vec<Perm> = Vec::new();
    let mut group = group_closure(degree, &gens).expect("trivial group");
    let mut sorted: Vec<&Perm> = elements.iter().collect();
    sorted.sort();
    for g in sorted {
        if !group.contains(g) {
            gens.push(g.clone());
            group = group_closure(degree, &gens).expect("subset of a closed set");
        }
    }
    group
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.lookup.get(g).copied()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.lookup.contains_key(g)
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.lookup[&(&self.elements[i] * &self.elements[j])]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.lookup[&self.elements[i].inverse()]
    }

    /// `(parent, generator)` with `elements[i] = elements[parent] * generators[generator]`;
    /// the identity reports `(0, usize::MAX)`.
    pub fn parent(&self, i: usize) -> (usize, usize) {
        self.parent[i]
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.generators.iter().all(|s| g.contains(s))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn trivial_subgroup(&self) -> PermGroup {
        group_closure(self.degree, &[]).expect("trivial group")
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(DepthError::invalid(format!("{g} is not an element of the group")));
        }
        group_closure(self.degree, gens)
    }

    /// `g^-1 H g`.
    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let gens: Vec<Perm> = self.generators.iter().map(|s| s.conjugate_by(g)).collect();
        group_closure(self.degree, &gens).expect("conjugate has the same order")
    }

    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        g.generators
            .iter()
            .all(|x| self.generators.iter().all(|s| self.contains(&s.conjugate_by(x))))
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let common: Vec<Perm> = self.elements.iter().filter(|g| other.contains(g)).cloned().collect();
        subgroup_from_elements(self.degree, &common)
    }

    pub fn sorted_elements(&self) -> Vec<Perm> {
        let mut v = self.elements.clone();
        v.sort();
        v
    }

    /// Images of one point under every element, indexed like `elements`,
    /// given the action of each generator as a table `gen_action[gen][point]`.
    pub fn orbit_images(&self, gen_action: &[Vec<usize>], point: usize) -> Vec<usize> {
        let mut img = vec![0; self.order()];
        img[0] = point;
        for i in 1..self.order() {
            let (p, s) = self.parent[i];
            img[i] = gen_action[s][img[p]];
        }
        img
    }

    /// Conjugacy classes of elements in order of first appearance.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for i in 0..self.order() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = BTreeSet::new();
            for g in &self.elements {
                members.insert(self.lookup[&self.elements[i].conjugate_by(g)]);
            }
            for &m in &members {
                class_of[m] = id;
            }
            classes.push(members.into_iter().collect());
        }
        classes
    }
}

fn check_subgroup(g: &PermGroup, h: &PermGroup, name: &str) -> Result<()> {
    if !h.is_subgroup_of(g) {
        return Err(DepthError::invalid(format!("{name} is not a subgroup of the group")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    /// Least member in the enumeration order of the big group.
    pub representative: Perm,
    /// Member indices into the big group, ascending.
    pub members: Vec<usize>,
}

impl DoubleCoset {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// The `(H1, H2)`-double cosets `H1 x H2` partitioning `G`.
pub fn double_cosets(g: &PermGroup, h1: &PermGroup, h2: &PermGroup) -> Result<Vec<DoubleCoset>> {
    check_subgroup(g, h1, "H1")?;
    check_subgroup(g, h2, "H2")?;
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::new();
    for x in 0..g.order() {
        if assigned[x] {
            continue;
        }
        let xp = g.element(x);
        let mut members = BTreeSet::new();
        for a in h1.elements() {
            let ax = a * xp;
            for b in h2.elements() {
                members.insert(g.lookup[&(&ax * b)]);
            }
        }
        for &m in &members {
            assigned[m] = true;
        }
        out.push(DoubleCoset {
            representative: xp.clone(),
            members: members.into_iter().collect(),
        });
    }
    Ok(out)
}

/// Distinct conjugates `x^-1 H x`, as sorted element lists, in order of first
/// appearance over `G`.
pub fn conjugates(g: &PermGroup, h: &PermGroup) -> Result<Vec<Vec<Perm>>> {
    check_subgroup(g, h, "H")?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in g.elements() {
        let mut els: Vec<Perm> = h.elements().iter().map(|s| s.conjugate_by(x)).collect();
        els.sort();
        if seen.insert(els.clone()) {
            out.push(els);
        }
    }
    Ok(out)
}

/// Intersection of all conjugates of `H`.
pub fn core(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let conj = conjugates(g, h)?;
    let common: Vec<Perm> = h
        .elements()
        .iter()
        .filter(|p| conj.iter().all(|c| c.binary_search(p).is_ok()))
        .cloned()
        .collect();
    Ok(subgroup_from_elements(g.degree(), &common))
}

/// Conjugacy label of a subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: PermGroup,
    /// Sorted elements of the lexicographically least conjugate.
    pub key: Vec<Perm>,
}

impl PartialEq for SubgroupClass {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for SubgroupClass {}

pub fn subgroup_class_key(g: &PermGroup, h: &PermGroup) -> Result<SubgroupClass> {
    let key = conjugates(g, h)?.into_iter().min().expect("H is its own conjugate");
    Ok(SubgroupClass {
        representative: h.clone(),
        key,
    })
}

/// Least number of conjugates of `H` whose intersection is the core.
///
/// Level `t` holds every distinct intersection of `t` conjugates; the search
/// stops at the first level containing the core.
pub fn min_core_conjugates(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<usize> {
    let conj = conjugates(g, h)?;
    let core_size = core(g, h)?.order();
    let sets: Vec<BTreeSet<&Perm>> = conj.iter().map(|c| c.iter().collect()).collect();
    let mut level: BTreeSet<BTreeSet<&Perm>> = sets.iter().cloned().collect();
    let mut explored = level.len();
    for t in 1..=conj.len() {
        if level.iter().any(|s| s.len() == core_size) {
            return Ok(t);
        }
        let mut next = BTreeSet::new();
        for s in &level {
            for c in &sets {
                let i: BTreeSet<&Perm> = s.intersection(c).copied().collect();
                if i.len() < s.len() {
                    next.insert(i);
                }
            }
        }
        explored += next.len();
        if explored > cap {
            return Err(DepthError::cap("conjugate intersection states", cap));
        }
        level = next;
    }
    unreachable!("the intersection of all conjugates is the core")
}

/// Number of conjugacy classes of subgroups among the intersections of
/// conjugates of `H` (the index set of the constituent chain of `V`).
pub fn intersection_class_count(g: &PermGroup, h: &PermGroup) -> Result<usize> {
    let conj = conjugates(g, h)?;
    let mut all: BTreeSet<Vec<Perm>> = conj.iter().cloned().collect();
    let mut frontier: Vec<Vec<Perm>> = all.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for c in &conj {
            let i: Vec<Perm> = s.iter().filter(|p| c.binary_search(p).is_ok()).cloned().collect();
            if all.insert(i.clone()) {
                frontier.push(i);
            }
        }
    }
    let mut keys = BTreeSet::new();
    for s in &all {
        let sub = subgroup_from_elements(g.degree(), s);
        keys.insert(subgroup_class_key(g, &sub)?.key);
    }
    Ok(keys.len())
}

/// JSON group description `{"degree": k, "generators": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupSpec {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| DepthError::Parse {
            position: e.column(),
            message: e.to_string(),
        })
    }

    pub fn build(&self) -> Result<PermGroup> {
        group_closure(self.degree, &self.generators)
    }
}

/// Named fixtures used by tests and the command line.
pub mod fixtures {
    use super::*;

    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            let cycle: Vec<usize> = (0..n).collect();
            gens.push(Perm::from_cycles(n, &[&cycle]).unwrap());
        }
        group_closure(n.max(1), &gens).unwrap()
    }

    pub fn alternating(n: usize) -> PermGroup {
        let gens: Vec<Perm> = (2..n)
            .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).unwrap())
            .collect();
        group_closure(n.max(1), &gens).unwrap()
    }

    pub fn cyclic(n: usize) -> PermGroup {
        let cycle: Vec<usize> = (0..n).collect();
        let gens = if n >= 2 {
            vec![Perm::from_cycles(n, &[&cycle]).unwrap()]
        } else {
            vec![]
        };
        group_closure(n.max(1), &gens).unwrap()
    }

    /// Symmetries of the square on its vertices `0..4`.
    pub fn dihedral4() -> PermGroup {
        let r = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let s = Perm::from_cycles(4, &[&[1, 3]]).unwrap();
        group_closure(4, &[r, s]).unwrap()
    }

    /// `S_m` embedded in `S_n` on the first `m` points.
    pub fn symmetric_in(m: usize, n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if m >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if m >= 3 {
            let cycle: Vec<usize> = (0..m).collect();
            gens.push(Perm::from_cycles(n, &[&cycle]).unwrap());
        }
        group_closure(n, &gens).unwrap()
    }

    /// Shifts `p` to act on points `offset..offset+deg(p)` of a set of size `degree`.
    pub fn shifted(p: &Perm, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<usize> = (0..degree).collect();
        for (i, &j) in p.images().iter().enumerate() {
            images[offset + i] = offset + j;
        }
        Perm::new(images).unwrap()
    }

    /// `A x B` acting on the disjoint union of their points.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
        let n = a.degree() + b.degree();
        let mut gens: Vec<Perm> = a.generators().iter().map(|p| shifted(p, 0, n)).collect();
        gens.extend(b.generators().iter().map(|p| shifted(p, a.degree(), n)));
        group_closure(n, &gens).unwrap()
    }

    /// Every subgroup of a small group, one per distinct element set.
    pub fn all_subgroups(g: &PermGroup) -> Vec<PermGroup> {
        let mut found: BTreeSet<Vec<Perm>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut frontier = vec![g.trivial_subgroup()];
        found.insert(frontier[0].sorted_elements());
        out.push(frontier[0].clone());
        while let Some(h) = frontier.pop() {
            for x in g.elements() {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.generators().to_vec();
                gens.push(x.clone());
                let k = group_closure(g.degree(), &gens).unwrap();
                if found.insert(k.sorted_elements()) {
                    out.push(k.clone());
                    frontier.push(k);
                }
            }
        }
        out.sort_by_key(|k| (k.order(), k.sorted_elements()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn cyc(n: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, c).unwrap()
    }

    #[test]
    fn right_action_convention() {
        let a = cyc(3, &[&[0, 1]]);
        let b = cyc(3, &[&[1, 2]]);
        assert_eq!((&a * &b).apply(0), b.apply(a.apply(0)));
        assert_eq!(format!("{}", &a * &b), "(0 2 1)");
        assert!(Perm::new(vec![0, 0]).is_err());
    }

    #[test]
    fn closures() {
        assert_eq!(group_closure(3, &[cyc(3, &[&[0, 1]])]).unwrap().order(), 2);
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(group_closure(3, &[cyc(3, &[&[0, 1, 2]])]).unwrap().order(), 3);
        assert_eq!(symmetric(5).order(), 120);
        assert!(matches!(
            group_closure_capped(5, symmetric(5).generators(), 50),
            Err(DepthError::CapExceeded { limit: 50, .. })
        ));
    }

    #[test]
    fn double_coset_examples() {
        let g = symmetric(3);
        assert_eq!(double_cosets(&g, &g, &g).unwrap().len(), 1);
        let h = g.subgroup(&[cyc(3, &[&[0, 1]])]).unwrap();
        let mut sizes: Vec<usize> = double_cosets(&g, &h, &h).unwrap().iter().map(DoubleCoset::size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let e = g.trivial_subgroup();
        assert_eq!(double_cosets(&g, &e, &e).unwrap().len(), 6);
        assert!(double_cosets(&g, &symmetric(4), &e).is_err());
    }

    #[test]
    fn core_examples() {
        let g = symmetric(3);
        let a3 = alternating(3);
        assert_eq!(core(&g, &a3).unwrap(), a3);
        let h = g.subgroup(&[cyc(3, &[&[0, 1]])]).unwrap();
        assert!(core(&g, &h).unwrap().is_trivial());
        assert!(core(&g, &g.trivial_subgroup()).unwrap().is_trivial());
    }

    #[test]
    fn class_keys() {
        let g = symmetric(3);
        let h1 = g.subgroup(&[cyc(3, &[&[0, 1]])]).unwrap();
        let h2 = g.subgroup(&[cyc(3, &[&[1, 2]])]).unwrap();
        let a3 = alternating(3);
        assert_eq!(subgroup_class_key(&g, &h1).unwrap(), subgroup_class_key(&g, &h2).unwrap());
        assert_ne!(subgroup_class_key(&g, &h1).unwrap(), subgroup_class_key(&g, &a3).unwrap());
        assert_eq!(subgroup_class_key(&g, &h1).unwrap(), subgroup_class_key(&g, &h1).unwrap());
    }

    #[test]
    fn core_conjugate_counts() {
        let g = symmetric(3);
        assert_eq!(min_core_conjugates(&g, &alternating(3), 100).unwrap(), 1);
        let h = g.subgroup(&[cyc(3, &[&[0, 1]])]).unwrap();
        assert_eq!(min_core_conjugates(&g, &h, 100).unwrap(), 2);
        assert_eq!(min_core_conjugates(&g, &g.trivial_subgroup(), 100).unwrap(), 1);
        assert_eq!(intersection_class_count(&g, &alternating(3)).unwrap(), 1);
        assert_eq!(intersection_class_count(&g, &h).unwrap(), 2);
    }

    #[test]
    fn subgroup_lattice_sizes() {
        assert_eq!(all_subgroups(&symmetric(3)).len(), 6);
        assert_eq!(all_subgroups(&dihedral4()).len(), 10);
        assert_eq!(all_subgroups(&symmetric(4)).len(), 30);
        let mut sizes: Vec<usize> = symmetric(4).conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn json_spec() {
        let spec = GroupSpec::from_json_str(r#"{"degree":3,"generators":[[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 6);
        assert!(GroupSpec::from_json_str(r#"{"degree":3,"generators":[[1,1,2]]}"#).is_err());
        assert!(GroupSpec::from_json_str(r#"{"degree":3,"gens":[]}"#).is_err());
    }
}

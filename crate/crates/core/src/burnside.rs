//! Finite G-sets, their products and the Burnside-ring depth chain.
//!
//! A G-set stores the action of each generator of its group as a table.
//! Transitive constituents are labeled by the conjugacy class of a point
//! stabilizer. Tensor powers of a permutation module are realized as
//! products of G-sets, which gives an upper bound for module depth over any
//! ground field.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{DepthError, Result};
use crate::perm_group::{
    core, intersection_class_count, subgroup_class_key, subgroup_from_elements, Perm, PermGroup,
};
use crate::report::{DepthReport, Quantity};

/// Default cap on the number of tensor powers examined by the chain.
pub const DEFAULT_CHAIN_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct GSet<'g> {
    group: &'g PermGroup,
    size: usize,
    /// `gen_action[s][x]` is the image of point `x` under generator `s`.
    gen_action: Vec<Vec<usize>>,
}

/// Conjugacy label of a stabilizer: its order and canonical key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassLabel {
    pub order: usize,
    #[serde(serialize_with = "serialize_key")]
    pub key: Vec<Perm>,
}

fn serialize_key<S: serde::Serializer>(key: &[Perm], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(key.iter().map(ToString::to_string))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub label: ClassLabel,
    /// A stabilizer in the class, taken at the least point of the first orbit.
    pub stabilizer: PermGroup,
    pub orbit_size: usize,
    pub multiplicity: usize,
}

/// A formal nonnegative combination of transitive G-sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BurnsideElement {
    terms: BTreeMap<ClassLabel, BigUint>,
}

#[derive(Serialize)]
struct TermJson<'a> {
    #[serde(flatten)]
    label: &'a ClassLabel,
    #[serde(serialize_with = "serialize_count")]
    multiplicity: &'a BigUint,
}

/// A plain number when it fits in `u64`, a decimal string otherwise.
fn serialize_count<S: serde::Serializer>(n: &&BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(*n) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&n.to_string()),
    }
}

/// Serialized as a list of terms, since JSON keys must be strings.
impl Serialize for BurnsideElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(label, multiplicity)| TermJson { label, multiplicity }))
    }
}

impl BurnsideElement {
    pub fn add(&mut self, label: ClassLabel, mult: BigUint) {
        if !mult.is_zero() {
            *self.terms.entry(label).or_default() += mult;
        }
    }

    pub fn labels(&self) -> BTreeSet<ClassLabel> {
        self.terms.keys().cloned().collect()
    }

    pub fn terms(&self) -> &BTreeMap<ClassLabel, BigUint> {
        &self.terms
    }

    pub fn multiplicity(&self, label: &ClassLabel) -> BigUint {
        self.terms.get(label).cloned().unwrap_or_default()
    }

    /// Number of points, `sum of multiplicity * index`.
    pub fn cardinality(&self, group_order: usize) -> BigUint {
        self.terms
            .iter()
            .map(|(l, m)| m * BigUint::from(group_order / l.order))
            .sum()
    }
}

impl<'g> GSet<'g> {
    /// Validating constructor: each table must be a permutation of the
    /// points, and the induced action must respect the group's relations.
    pub fn from_generator_action(
        group: &'g PermGroup,
        size: usize,
        gen_action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if gen_action.len() != group.generators().len() {
            return Err(DepthError::DimensionMismatch(format!(
                "{} action tables for {} generators",
                gen_action.len(),
                group.generators().len()
            )));
        }
        for table in &gen_action {
            let mut seen = vec![false; size];
            if table.len() != size {
                return Err(DepthError::DimensionMismatch("action table length".into()));
            }
            for &y in table {
                if y >= size || seen[y] {
                    return Err(DepthError::invalid("generator action is not a bijection"));
                }
                seen[y] = true;
            }
        }
        let set = Self {
            group,
            size,
            gen_action,
        };
        for x in 0..size {
            let img = group.orbit_images(&set.gen_action, x);
            for g in 0..group.order() {
                for (s, gen) in group.generators().iter().enumerate() {
                    let gs = group.index_of(&(group.element(g) * gen)).expect("closed");
                    if img[gs] != set.gen_action[s][img[g]] {
                        return Err(DepthError::invalid("generator tables do not define a group action"));
                    }
                }
            }
        }
        Ok(set)
    }

    /// The one-point G-set.
    pub fn point(group: &'g PermGroup) -> Self {
        Self {
            group,
            size: 1,
            gen_action: vec![vec![0]; group.generators().len()],
        }
    }

    pub fn group(&self) -> &'g PermGroup {
        self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Image of `point` under the group element with index `elem`.
    pub fn act(&self, point: usize, elem: usize) -> usize {
        let mut word = Vec::new();
        let mut i = elem;
        while i != 0 {
            let (p, s) = self.group.parent(i);
            word.push(s);
            i = p;
        }
        word.iter().rev().fold(point, |x, &s| self.gen_action[s][x])
    }

    pub fn is_fixed_point_set(&self) -> bool {
        self.gen_action
            .iter()
            .all(|t| t.iter().enumerate().all(|(i, &j)| i == j))
    }

    /// Orbits as ascending point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for t in &self.gen_action {
                    if !seen[t[x]] {
                        seen[t[x]] = true;
                        orbit.push(t[x]);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let img = self.group.orbit_images(&self.gen_action, point);
        let fixing: Vec<Perm> = img
            .iter()
            .enumerate()
            .filter(|(_, &y)| y == point)
            .map(|(g, _)| self.group.element(g).clone())
            .collect();
        subgroup_from_elements(self.group.degree(), &fixing)
    }

    /// Number of points fixed by the element with index `elem`.
    pub fn fixed_points(&self, elem: usize) -> usize {
        (0..self.size).filter(|&x| self.act(x, elem) == x).count()
    }

    /// Transitive constituents with multiplicities, sorted by label.
    pub fn constituents(&self) -> Result<Vec<Constituent>> {
        let mut labels = LabelCache::default();
        let mut by_label: BTreeMap<ClassLabel, Constituent> = BTreeMap::new();
        for orbit in self.orbits() {
            let stab = self.stabilizer(orbit[0]);
            let label = labels.label(self.group, &stab)?;
            by_label
                .entry(label.clone())
                .and_modify(|c| c.multiplicity += 1)
                .or_insert(Constituent {
                    label,
                    stabilizer: stab,
                    orbit_size: orbit.len(),
                    multiplicity: 1,
                });
        }
        Ok(by_label.into_values().collect())
    }

    pub fn decomposition(&self) -> Result<BurnsideElement> {
        let mut e = BurnsideElement::default();
        for c in self.constituents()? {
            e.add(c.label, BigUint::from(c.multiplicity));
        }
        Ok(e)
    }

    /// The same points with the action restricted to a subgroup.
    pub fn restrict<'r>(&self, r: &'r PermGroup) -> Result<GSet<'r>> {
        if !r.is_subgroup_of(self.group) {
            return Err(DepthError::invalid("restriction target is not a subgroup"));
        }
        let gen_action = r
            .generators()
            .iter()
            .map(|s| {
                let e = self.group.index_of(s).expect("checked membership");
                (0..self.size).map(|x| self.act(x, e)).collect()
            })
            .collect();
        Ok(GSet {
            group: r,
            size: self.size,
            gen_action,
        })
    }
}

#[derive(Default)]
struct LabelCache {
    by_elements: HashMap<Vec<Perm>, ClassLabel>,
}

impl LabelCache {
    fn label(&mut self, g: &PermGroup, h: &PermGroup) -> Result<ClassLabel> {
        let els = h.sorted_elements();
        if let Some(l) = self.by_elements.get(&els) {
            return Ok(l.clone());
        }
        let key = subgroup_class_key(g, h)?.key;
        let label = ClassLabel {
            order: h.order(),
            key,
        };
        self.by_elements.insert(els, label.clone());
        Ok(label)
    }
}

/// Right cosets `H g` with `G` acting by right translation.
pub fn coset_gset<'g>(g: &'g PermGroup, h: &PermGroup) -> Result<GSet<'g>> {
    if !h.is_subgroup_of(g) {
        return Err(DepthError::invalid("H is not a subgroup of G"));
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for a in h.elements() {
            let ax = g.index_of(&(a * g.element(x))).expect("closed");
            coset_of[ax] = reps.len();
        }
        reps.push(x);
    }
    let gen_action = g
        .generators()
        .iter()
        .map(|s| {
            reps.iter()
                .map(|&x| coset_of[g.index_of(&(g.element(x) * s)).expect("closed")])
                .collect()
        })
        .collect();
    Ok(GSet {
        group: g,
        size: reps.len(),
        gen_action,
    })
}

/// Cartesian product with the diagonal action; pair `(a, b)` is point
/// `a * |B| + b`.
pub fn gset_product<'g>(a: &GSet<'g>, b: &GSet<'g>) -> Result<GSet<'g>> {
    if !std::ptr::eq(a.group, b.group) && a.group != b.group {
        return Err(DepthError::invalid("G-sets over different groups"));
    }
    let gen_action = a
        .gen_action
        .iter()
        .zip(&b.gen_action)
        .map(|(ta, tb)| {
            let mut t = Vec::with_capacity(a.size * b.size);
            for x in 0..a.size {
                for y in 0..b.size {
                    t.push(ta[x] * b.size + tb[y]);
                }
            }
            t
        })
        .collect();
    Ok(GSet {
        group: a.group,
        size: a.size * b.size,
        gen_action,
    })
}

/// Which category the permutation module is read in.
#[derive(Clone, Copy, Debug)]
pub enum Over<'a> {
    /// Modules over the big group.
    Big,
    /// Modules over a subgroup, by restriction.
    Sub(&'a PermGroup),
}

/// One power in the constituent chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub power: usize,
    pub constituents: BurnsideElement,
    /// Labels of `T_power = V + ... + V^power`.
    pub accumulated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideChain {
    /// Least `n` with the labels of `T_(n+1)` contained in those of `T_n`.
    pub bound: usize,
    pub steps: Vec<ChainStep>,
}

/// Products of transitive G-sets, memoized by label pair.
struct ProductTable<'g> {
    group: &'g PermGroup,
    reps: BTreeMap<ClassLabel, PermGroup>,
    products: HashMap<(ClassLabel, ClassLabel), BurnsideElement>,
}

impl<'g> ProductTable<'g> {
    fn product(&mut self, a: &ClassLabel, b: &ClassLabel) -> Result<BurnsideElement> {
        if let Some(p) = self.products.get(&(a.clone(), b.clone())) {
            return Ok(p.clone());
        }
        let xa = coset_gset(self.group, &self.reps[a])?;
        let xb = coset_gset(self.group, &self.reps[b])?;
        let prod = gset_product(&xa, &xb)?;
        let mut out = BurnsideElement::default();
        for c in prod.constituents()? {
            self.reps.entry(c.label.clone()).or_insert(c.stabilizer);
            out.add(c.label, BigUint::from(c.multiplicity));
        }
        self.products.insert((a.clone(), b.clone()), out.clone());
        Ok(out)
    }
}

/// Constituent chain of the permutation module on `H\G`, read over `G` or
/// over a subgroup.
pub fn burnside_chain(g: &PermGroup, h: &PermGroup, over: Over<'_>, cap: usize) -> Result<BurnsideChain> {
    let v_big = coset_gset(g, h)?;
    match over {
        Over::Big => chain_of(&v_big, cap),
        Over::Sub(r) => chain_of(&v_big.restrict(r)?, cap),
    }
}

fn chain_of(v: &GSet<'_>, cap: usize) -> Result<BurnsideChain> {
    let group = v.group;
    let mut table = ProductTable {
        group,
        reps: BTreeMap::new(),
        products: HashMap::new(),
    };
    let mut base = BurnsideElement::default();
    for c in v.constituents()? {
        table.reps.entry(c.label.clone()).or_insert(c.stabilizer);
        base.add(c.label, BigUint::from(c.multiplicity));
    }
    let mut steps = vec![];
    if v.is_fixed_point_set() {
        steps.push(ChainStep {
            power: 1,
            accumulated: 1,
            constituents: base,
        });
        return Ok(BurnsideChain { bound: 0, steps });
    }
    let mut seen = base.labels();
    let mut power = base.clone();
    steps.push(ChainStep {
        power: 1,
        accumulated: seen.len(),
        constituents: base.clone(),
    });
    for n in 1..=cap {
        let mut next = BurnsideElement::default();
        for (la, ma) in power.terms() {
            for (lb, mb) in base.terms() {
                for (lc, mc) in table.product(la, lb)?.terms() {
                    next.add(lc.clone(), ma * mb * mc);
                }
            }
        }
        let fresh = next.labels().difference(&seen).count();
        seen.extend(next.labels());
        steps.push(ChainStep {
            power: n + 1,
            accumulated: seen.len(),
            constituents: next.clone(),
        });
        if fresh == 0 {
            return Ok(BurnsideChain { bound: n, steps });
        }
        power = next;
    }
    Err(DepthError::cap("Burnside chain powers", cap))
}

/// Upper bound for the module depth of `V = k[H\G]` over `G` or a subgroup.
pub fn burnside_module_depth_bound(g: &PermGroup, h: &PermGroup, over: Over<'_>) -> Result<DepthReport> {
    let chain = burnside_chain(g, h, over, DEFAULT_CHAIN_CAP)?;
    let quantity = match over {
        Over::Big => Quantity::ModuleDepthH,
        Over::Sub(_) => Quantity::ModuleDepthR,
    };
    let sizes: Vec<usize> = chain.steps.iter().map(|s| s.accumulated).collect();
    Ok(DepthReport::single(
        quantity,
        chain.bound as u64,
        false,
        chain.bound as u64,
        format!("Burnside constituent chain, accumulated label counts {sizes:?}"),
    ))
}

/// Depth bounds for `k[H] in k[G]` from the Burnside chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupDepthBound {
    pub module_depth_over_sub: usize,
    pub module_depth_over_big: usize,
    pub normal: bool,
    pub reports: Vec<DepthReport>,
}

impl SubgroupDepthBound {
    /// Best upper bound on the minimum depth.
    pub fn depth_upper(&self) -> u64 {
        self.reports
            .iter()
            .filter(|r| matches!(r.quantity, Quantity::EvenDepthUpperBound | Quantity::DepthInterval))
            .map(DepthReport::value)
            .min()
            .expect("at least one depth report")
    }

    pub fn h_depth_upper(&self) -> u64 {
        self.reports
            .iter()
            .find(|r| r.quantity == Quantity::HDepth)
            .map(DepthReport::value)
            .expect("h-depth report")
    }
}

pub fn subgroup_depth_bound(g: &PermGroup, h: &PermGroup) -> Result<SubgroupDepthBound> {
    let b_sub = burnside_chain(g, h, Over::Sub(h), DEFAULT_CHAIN_CAP)?.bound;
    let b_big = burnside_chain(g, h, Over::Big, DEFAULT_CHAIN_CAP)?.bound;
    let normal = h.is_normal_in(g);
    let mut reports = vec![
        DepthReport::single(
            Quantity::EvenDepthUpperBound,
            2 * b_sub as u64 + 2,
            false,
            b_sub as u64,
            format!("2 d(V, M_R) + 2 with Burnside bound d(V, M_R) <= {b_sub}"),
        ),
        DepthReport::single(
            Quantity::HDepth,
            2 * b_big as u64 + 1,
            false,
            b_big as u64,
            format!("2 d(V, M_H) + 1 with Burnside bound d(V, M_H) <= {b_big}"),
        ),
    ];
    if h.order() == g.order() {
        reports.push(DepthReport::interval(1, 2, 0, "V is a single point, subalgebra equals algebra")?);
    } else if normal {
        reports.push(DepthReport::single(
            Quantity::EvenDepthUpperBound,
            2,
            false,
            0,
            "normal subgroup",
        ));
    }
    Ok(SubgroupDepthBound {
        module_depth_over_sub: b_sub,
        module_depth_over_big: b_big,
        normal,
        reports,
    })
}

/// Fixed-coset counts per conjugacy class and the Brauer–Burnside bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaProfile {
    /// One value per conjugacy class of `G`, classes in order of first appearance.
    pub values: Vec<usize>,
    pub class_sizes: Vec<usize>,
    /// Number of distinct values.
    pub m: usize,
    pub corefree: bool,
    /// `d(V, M_CG) <= m - 1`, present when corefree.
    pub module_depth_bound: Option<usize>,
    /// `d(H, G) <= 2m`, present when corefree.
    pub subgroup_depth_bound: Option<usize>,
}

pub fn eta_profile(g: &PermGroup, h: &PermGroup) -> Result<EtaProfile> {
    let v = coset_gset(g, h)?;
    let classes = g.conjugacy_classes();
    let values: Vec<usize> = classes.iter().map(|c| v.fixed_points(c[0])).collect();
    let m = values.iter().collect::<BTreeSet<_>>().len();
    let corefree = core(g, h)?.is_trivial();
    Ok(EtaProfile {
        class_sizes: classes.iter().map(Vec::len).collect(),
        values,
        m,
        corefree,
        module_depth_bound: corefree.then(|| m - 1),
        subgroup_depth_bound: corefree.then_some(2 * m),
    })
}

/// `|I|`: conjugacy classes among intersections of conjugates of `H`.
pub fn intersection_index_count(g: &PermGroup, h: &PermGroup) -> Result<usize> {
    intersection_class_count(g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm_group::fixtures::*;
    use crate::perm_group::Perm;

    fn s3_transposition(g: &PermGroup) -> PermGroup {
        g.subgroup(&[Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap()
    }

    #[test]
    fn coset_sizes() {
        let g = symmetric(3);
        assert_eq!(coset_gset(&g, &g).unwrap().size(), 1);
        assert_eq!(coset_gset(&g, &g.trivial_subgroup()).unwrap().size(), 6);
        let h = s3_transposition(&g);
        let v = coset_gset(&g, &h).unwrap();
        assert_eq!(v.size(), 3);
        let cons = v.constituents().unwrap();
        assert_eq!(cons.len(), 1);
        assert_eq!(cons[0].label.order, 2);
    }

    #[test]
    fn product_examples() {
        let g = symmetric(3);
        let h = s3_transposition(&g);
        let v = coset_gset(&g, &h).unwrap();
        let unit = gset_product(&v, &GSet::point(&g)).unwrap();
        assert_eq!(unit.decomposition().unwrap(), v.decomposition().unwrap());
        let vv = gset_product(&v, &v).unwrap();
        assert_eq!(vv.size(), 9);
        let orders: Vec<(usize, usize)> = vv
            .constituents()
            .unwrap()
            .iter()
            .map(|c| (c.label.order, c.multiplicity))
            .collect();
        assert_eq!(orders, vec![(1, 1), (2, 1)]);
        let a3 = alternating(3);
        let w = coset_gset(&g, &a3).unwrap();
        let ww = gset_product(&w, &w).unwrap().constituents().unwrap();
        assert_eq!(ww.len(), 1);
        assert_eq!((ww[0].label.order, ww[0].multiplicity), (3, 2));
    }

    #[test]
    fn chain_bounds() {
        let g = symmetric(3);
        let a3 = alternating(3);
        assert_eq!(burnside_chain(&g, &a3, Over::Big, 8).unwrap().bound, 1);
        let h = s3_transposition(&g);
        assert_eq!(burnside_chain(&g, &h, Over::Big, 8).unwrap().bound, 2);
        assert_eq!(burnside_chain(&g, &g.trivial_subgroup(), Over::Big, 8).unwrap().bound, 1);
        assert_eq!(burnside_chain(&g, &g, Over::Big, 8).unwrap().bound, 0);
        let r = burnside_module_depth_bound(&g, &h, Over::Big).unwrap();
        assert!(!r.exact);
    }

    #[test]
    fn subgroup_bounds() {
        let g = symmetric(3);
        let a3 = alternating(3);
        let b = subgroup_depth_bound(&g, &a3).unwrap();
        assert!(b.normal);
        assert_eq!(b.depth_upper(), 2);
        assert!(b.depth_upper() >= 2);
        let eq = subgroup_depth_bound(&g, &g).unwrap();
        assert!(eq
            .reports
            .iter()
            .any(|r| r.value == crate::report::DepthValue::Interval([1, 2])));
        let s2 = subgroup_depth_bound(&g, &s3_transposition(&g)).unwrap();
        assert!(s2.depth_upper() >= 3);
    }

    #[test]
    fn eta_examples() {
        let g = symmetric(3);
        let e = eta_profile(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(e.values[0], 6);
        assert_eq!((e.m, e.module_depth_bound), (2, Some(1)));
        let p = eta_profile(&g, &s3_transposition(&g)).unwrap();
        assert_eq!(p.values, vec![3, 1, 0]);
        assert_eq!((p.m, p.module_depth_bound, p.subgroup_depth_bound), (3, Some(2), Some(6)));
        let n = eta_profile(&g, &alternating(3)).unwrap();
        assert!(!n.corefree);
        assert_eq!(n.module_depth_bound, None);
    }

    #[test]
    fn validated_actions() {
        let g = symmetric(3);
        let perm_action: Vec<Vec<usize>> = g.generators().iter().map(|p| p.images().to_vec()).collect();
        let natural = GSet::from_generator_action(&g, 3, perm_action).unwrap();
        assert_eq!(natural.orbits().len(), 1);
        assert_eq!(natural.stabilizer(2).order(), 2);
        // (0 1) acting trivially while the 3-cycle moves points breaks the relations.
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0]];
        assert!(GSet::from_generator_action(&g, 3, bad).is_err());
    }
}

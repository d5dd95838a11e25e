use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};
use crate::exact_matrix::{sparse_axpy, CoordinateMap, ScalarMatrix, SparseVec};
use crate::scalars::Cyclotomic;

/// An algebra element as sparse coordinates in the basis.
pub type Elem = SparseVec;
/// An element of `H (x) H`, keyed by basis index pairs.
pub type Tensor2 = BTreeMap<(usize, usize), Cyclotomic>;

/// Axioms are checked on every basis triple up to this dimension.
pub const MAX_VALIDATED_DIM: usize = 64;

pub(crate) fn add_term<K: Ord>(map: &mut BTreeMap<K, Cyclotomic>, key: K, c: Cyclotomic) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

pub(crate) fn basis_elem(i: usize) -> Elem {
    Elem::from([(i, Cyclotomic::one())])
}

pub(crate) fn scaled(v: &Elem, c: &Cyclotomic) -> Elem {
    if c.is_zero() {
        return Elem::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// A finite-dimensional Hopf algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    dim: usize,
    conductor: u32,
    labels: Vec<String>,
    /// `mult[i * dim + j] = b_i b_j`.
    mult: Vec<Elem>,
    unit: Elem,
    coproduct: Vec<Tensor2>,
    counit: Vec<Cyclotomic>,
    antipode: Vec<Elem>,
    /// Basis indices generating the algebra.
    generators: Vec<usize>,
}

/// Raw structure data for [`HopfAlgebra::new`].
#[derive(Clone, Debug)]
pub struct HopfParts {
    pub conductor: u32,
    pub labels: Vec<String>,
    pub mult: Vec<Elem>,
    pub unit: Elem,
    pub coproduct: Vec<Tensor2>,
    pub counit: Vec<Cyclotomic>,
    pub antipode: Vec<Elem>,
    pub generators: Vec<usize>,
}

impl HopfAlgebra {
    /// Builds and, for `dim <= MAX_VALIDATED_DIM`, validates every axiom.
    pub fn new(parts: HopfParts) -> Result<Self> {
        let h = Self::unchecked(parts)?;
        if h.dim <= MAX_VALIDATED_DIM {
            h.verify_axioms()?;
        }
        Ok(h)
    }

    pub(crate) fn unchecked(parts: HopfParts) -> Result<Self> {
        let dim = parts.labels.len();
        if dim == 0 {
            return Err(DepthError::invalid("algebra must have positive dimension"));
        }
        if parts.mult.len() != dim * dim
            || parts.coproduct.len() != dim
            || parts.counit.len() != dim
            || parts.antipode.len() != dim
        {
            return Err(DepthError::DimensionMismatch(format!(
                "structure tensors do not match dimension {dim}"
            )));
        }
        let in_range = |v: &Elem| v.keys().all(|&k| k < dim);
        if !parts.mult.iter().all(in_range)
            || !in_range(&parts.unit)
            || !parts.antipode.iter().all(in_range)
            || !parts.coproduct.iter().all(|t| t.keys().all(|&(a, b)| a < dim && b < dim))
            || parts.generators.iter().any(|&g| g >= dim)
        {
            return Err(DepthError::invalid("basis index out of range"));
        }
        let lift = |c: &Cyclotomic| c.lift(parts.conductor);
        let lift_elem = |v: &Elem| -> Result<Elem> {
            v.iter()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| Ok((*k, lift(x)?)))
                .collect()
        };
        Ok(Self {
            dim,
            conductor: parts.conductor,
            mult: parts.mult.iter().map(lift_elem).collect::<Result<_>>()?,
            unit: lift_elem(&parts.unit)?,
            coproduct: parts
                .coproduct
                .iter()
                .map(|t| {
                    t.iter()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| Ok((*k, lift(x)?)))
                        .collect()
                })
                .collect::<Result<_>>()?,
            counit: parts.counit.iter().map(lift).collect::<Result<_>>()?,
            antipode: parts.antipode.iter().map(lift_elem).collect::<Result<_>>()?,
            generators: if parts.generators.is_empty() {
                (0..dim).collect()
            } else {
                parts.generators
            },
            labels: parts.labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    pub fn scalar(&self, c: &Cyclotomic) -> Cyclotomic {
        c.lift(self.conductor).expect("scalar lies in the algebra's field")
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Elem {
        &self.mult[i * self.dim + j]
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::new();
        for (i, x) in a {
            for (j, y) in b {
                let c = x * y;
                if !c.is_zero() {
                    sparse_axpy(&mut out, &c, self.mul_basis(*i, *j));
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Elem, e: usize) -> Elem {
        (0..e).fold(self.unit.clone(), |acc, _| self.mul(&acc, a))
    }

    pub fn delta_basis(&self, i: usize) -> &Tensor2 {
        &self.coproduct[i]
    }

    pub fn delta(&self, a: &Elem) -> Tensor2 {
        let mut out = Tensor2::new();
        for (i, x) in a {
            for (k, y) in &self.coproduct[*i] {
                add_term(&mut out, *k, x * y);
            }
        }
        out
    }

    pub fn counit_basis(&self, i: usize) -> &Cyclotomic {
        &self.counit[i]
    }

    pub fn eps(&self, a: &Elem) -> Cyclotomic {
        let mut out = Cyclotomic::zero();
        for (i, x) in a {
            out += &(x * &self.counit[*i]);
        }
        out
    }

    pub fn antipode_basis(&self, i: usize) -> &Elem {
        &self.antipode[i]
    }

    pub fn antipode(&self, a: &Elem) -> Elem {
        let mut out = Elem::new();
        for (i, x) in a {
            sparse_axpy(&mut out, x, &self.antipode[*i]);
        }
        out
    }

    /// `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul_tensor(&self, s: &Tensor2, t: &Tensor2) -> Tensor2 {
        let mut out = Tensor2::new();
        for ((a, b), x) in s {
            for ((c, d), y) in t {
                let xy = x * y;
                let left = self.mul_basis(*a, *c);
                let right = self.mul_basis(*b, *d);
                for (p, u) in left {
                    let xyu = &xy * u;
                    for (q, v) in right {
                        add_term(&mut out, (*p, *q), &xyu * v);
                    }
                }
            }
        }
        out
    }

    pub fn is_grouplike(&self, i: usize) -> bool {
        let t = &self.coproduct[i];
        t.len() == 1 && t.get(&(i, i)).is_some_and(Cyclotomic::is_one)
    }

    /// Least `o >= 1` with `b_i^o = 1`, if any up to `dim + 1`.
    pub fn order_of(&self, i: usize) -> Option<usize> {
        let b = basis_elem(i);
        let mut p = b.clone();
        for o in 1..=self.dim + 1 {
            if p == self.unit {
                return Some(o);
            }
            p = self.mul(&p, &b);
        }
        None
    }

    /// Right regular action in the row convention: row `k` holds `b_k a`.
    pub fn right_mult_matrix(&self, a: &Elem) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            for (j, x) in self.mul(&basis_elem(k), a) {
                m.set(k, j, x);
            }
        }
        m
    }

    /// Left multiplication in the row convention: row `k` holds `a b_k`.
    pub fn left_mult_matrix(&self, a: &Elem) -> ScalarMatrix {
        let mut m = ScalarMatrix::zeros(self.dim, self.dim);
        for k in 0..self.dim {
            for (j, x) in self.mul(a, &basis_elem(k)) {
                m.set(k, j, x);
            }
        }
        m
    }

    /// Checks associativity, unit, coassociativity, counit, bialgebra and
    /// antipode identities on the basis.
    pub fn verify_axioms(&self) -> Result<()> {
        let d = self.dim;
        let fail = |what: &str| Err(DepthError::AxiomViolation(what.to_string()));
        for i in 0..d {
            let b = basis_elem(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return fail(&format!("unit law fails on {}", self.labels[i]));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul_basis(i, j);
                for k in 0..d {
                    let left = self.mul(ij, &basis_elem(k));
                    let right = self.mul(&basis_elem(i), self.mul_basis(j, k));
                    if left != right {
                        return fail(&format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        ));
                    }
                }
            }
        }
        let unit_delta = self.delta(&self.unit);
        let mut one_one = Tensor2::new();
        for (a, x) in &self.unit {
            for (b, y) in &self.unit {
                add_term(&mut one_one, (*a, *b), x * y);
            }
        }
        if unit_delta != one_one || !self.eps(&self.unit).is_one() {
            return fail("coproduct or counit is not unital");
        }
        for i in 0..d {
            let t = &self.coproduct[i];
            let mut left: BTreeMap<(usize, usize, usize), Cyclotomic> = BTreeMap::new();
            let mut right: BTreeMap<(usize, usize, usize), Cyclotomic> = BTreeMap::new();
            for ((a, b), x) in t {
                for ((p, q), y) in &self.coproduct[*a] {
                    add_term(&mut left, (*p, *q, *b), x * y);
                }
                for ((p, q), y) in &self.coproduct[*b] {
                    add_term(&mut right, (*a, *p, *q), x * y);
                }
            }
            if left != right {
                return fail(&format!("coassociativity fails on {}", self.labels[i]));
            }
            let mut l = Elem::new();
            let mut r = Elem::new();
            for ((a, b), x) in t {
                add_term(&mut l, *b, x * &self.counit[*a]);
                add_term(&mut r, *a, x * &self.counit[*b]);
            }
            if l != basis_elem(i) || r != basis_elem(i) {
                return fail(&format!("counit law fails on {}", self.labels[i]));
            }
            let mut sl = Elem::new();
            let mut sr = Elem::new();
            for ((a, b), x) in t {
                sparse_axpy(&mut sl, x, &self.mul(&self.antipode[*a], &basis_elem(*b)));
                sparse_axpy(&mut sr, x, &self.mul(&basis_elem(*a), &self.antipode[*b]));
            }
            sl.retain(|_, x| !x.is_zero());
            sr.retain(|_, x| !x.is_zero());
            let expected = scaled(&self.unit, &self.counit[i]);
            if sl != expected || sr != expected {
                return fail(&format!("antipode identity fails on {}", self.labels[i]));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul_basis(i, j);
                if self.delta(ij) != self.mul_tensor(&self.coproduct[i], &self.coproduct[j]) {
                    return fail(&format!(
                        "coproduct is not multiplicative on ({}, {})",
                        self.labels[i], self.labels[j]
                    ));
                }
                if self.eps(ij) != &self.counit[i] * &self.counit[j] {
                    return fail(&format!(
                        "counit is not multiplicative on ({}, {})",
                        self.labels[i], self.labels[j]
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> HopfJson {
        let mut mult = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.mul_basis(i, j) {
                    mult.push((i, j, *k, c.clone()));
                }
            }
        }
        let mut coproduct = Vec::new();
        for (i, t) in self.coproduct.iter().enumerate() {
            for ((a, b), c) in t {
                coproduct.push((i, *a, *b, c.clone()));
            }
        }
        let mut antipode = Vec::new();
        for (i, s) in self.antipode.iter().enumerate() {
            for (j, c) in s {
                antipode.push((i, *j, c.clone()));
            }
        }
        HopfJson {
            dim: self.dim,
            conductor: self.conductor,
            labels: Some(self.labels.clone()),
            mult,
            unit: Some(self.unit.iter().map(|(k, c)| (*k, c.clone())).collect()),
            coproduct,
            counit: self.counit.clone(),
            antipode,
            generators: Some(self.generators.clone()),
        }
    }
}

/// Sparse JSON form of a Hopf algebra. `mult` entries `[i, j, k, c]` mean
/// `b_i b_j` has coefficient `c` on `b_k`; `coproduct` entries `[i, a, b, c]`
/// put `c` on `b_a (x) b_b` in `D(b_i)`; `antipode` entries `[i, j, c]` put
/// `c` on `b_j` in `S(b_i)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfJson {
    pub dim: usize,
    pub conductor: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub mult: Vec<(usize, usize, usize, Cyclotomic)>,
    /// Defaults to basis element 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<(usize, Cyclotomic)>>,
    pub coproduct: Vec<(usize, usize, usize, Cyclotomic)>,
    pub counit: Vec<Cyclotomic>,
    pub antipode: Vec<(usize, usize, Cyclotomic)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
}

impl HopfJson {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| DepthError::Parse {
            position: e.column(),
            message: format!("line {}: {e}", e.line()),
        })
    }

    pub fn build(&self) -> Result<HopfAlgebra> {
        let d = self.dim;
        if d == 0 {
            return Err(DepthError::invalid("dim must be positive"));
        }
        let check = |i: usize| -> Result<()> {
            if i >= d {
                Err(DepthError::invalid(format!("basis index {i} out of range for dim {d}")))
            } else {
                Ok(())
            }
        };
        let mut mult = vec![Elem::new(); d * d];
        for (i, j, k, c) in &self.mult {
            check(*i)?;
            check(*j)?;
            check(*k)?;
            add_term(&mut mult[i * d + j], *k, c.clone());
        }
        let mut coproduct = vec![Tensor2::new(); d];
        for (i, a, b, c) in &self.coproduct {
            check(*i)?;
            check(*a)?;
            check(*b)?;
            add_term(&mut coproduct[*i], (*a, *b), c.clone());
        }
        let mut antipode = vec![Elem::new(); d];
        for (i, j, c) in &self.antipode {
            check(*i)?;
            check(*j)?;
            add_term(&mut antipode[*i], *j, c.clone());
        }
        let mut unit = Elem::new();
        match &self.unit {
            Some(u) => {
                for (k, c) in u {
                    check(*k)?;
                    add_term(&mut unit, *k, c.clone());
                }
            }
            None => unit = basis_elem(0),
        }
        if self.counit.len() != d {
            return Err(DepthError::DimensionMismatch("counit length".into()));
        }
        let labels = match &self.labels {
            Some(l) if l.len() == d => l.clone(),
            Some(_) => return Err(DepthError::DimensionMismatch("label count".into())),
            None => (0..d).map(|i| format!("b{i}")).collect(),
        };
        HopfAlgebra::new(HopfParts {
            conductor: self.conductor,
            labels,
            mult,
            unit,
            coproduct,
            counit: self.counit.clone(),
            antipode,
            generators: self.generators.clone().unwrap_or_default(),
        })
    }
}

/// A Hopf subalgebra, carried both as its own Hopf algebra and as a span
/// inside the parent.
#[derive(Clone, Debug)]
pub struct HopfSubalgebra {
    algebra: HopfAlgebra,
    embedding: Vec<Elem>,
    coords: CoordinateMap,
}

impl HopfSubalgebra {
    /// Checks that the span of `basis` contains 1 and is closed under
    /// product, coproduct and antipode, then builds its structure constants.
    pub fn new(parent: &HopfAlgebra, basis: Vec<Elem>, labels: Option<Vec<String>>) -> Result<Self> {
        let d = parent.dim();
        if basis.is_empty() {
            return Err(DepthError::invalid("subalgebra basis is empty"));
        }
        let dense: Vec<Vec<Cyclotomic>> = basis
            .iter()
            .map(|v| {
                let mut row = vec![Cyclotomic::zero(); d];
                for (k, x) in v {
                    if *k >= d {
                        return Err(DepthError::invalid("subalgebra basis index out of range"));
                    }
                    row[*k] = parent.scalar(x);
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        let coords = CoordinateMap::new(dense)?;
        let embedding: Vec<Elem> = coords.basis().to_vec();
        let k = embedding.len();
        let within = |v: &Elem, what: &str| -> Result<Elem> {
            let c = coords
                .coords(v)
                .ok_or_else(|| DepthError::invalid(format!("subalgebra is not closed under {what}")))?;
            Ok(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
        };
        let unit = within(parent.unit(), "the unit")?;
        let mut mult = Vec::with_capacity(k * k);
        for a in &embedding {
            for b in &embedding {
                mult.push(within(&parent.mul(a, b), "multiplication")?);
            }
        }
        let mut coproduct = Vec::with_capacity(k);
        for a in &embedding {
            coproduct.push(tensor_coords(&coords, &parent.delta(a))?);
        }
        let counit = embedding.iter().map(|a| parent.eps(a)).collect();
        let antipode = embedding
            .iter()
            .map(|a| within(&parent.antipode(a), "the antipode"))
            .collect::<Result<_>>()?;
        let labels = match labels {
            Some(l) if l.len() == k => l,
            _ => embedding
                .iter()
                .map(|v| describe(parent, v))
                .collect(),
        };
        let algebra = HopfAlgebra::unchecked(HopfParts {
            conductor: parent.conductor(),
            labels,
            mult,
            unit,
            coproduct,
            counit,
            antipode,
            generators: vec![],
        })?;
        Ok(Self {
            algebra,
            embedding,
            coords,
        })
    }

    /// `R = H`.
    pub fn whole(parent: &HopfAlgebra) -> Result<Self> {
        Self::new(parent, (0..parent.dim()).map(basis_elem).collect(), Some(parent.labels().to_vec()))
    }

    /// `R = k 1`.
    pub fn trivial(parent: &HopfAlgebra) -> Result<Self> {
        Self::new(parent, vec![parent.unit().clone()], Some(vec!["1".into()]))
    }

    pub fn algebra(&self) -> &HopfAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.embedding.len()
    }

    /// Image of sub-basis element `i` in the parent.
    pub fn embed_basis(&self, i: usize) -> &Elem {
        &self.embedding[i]
    }

    pub fn embedding(&self) -> &[Elem] {
        &self.embedding
    }

    pub fn embed(&self, v: &Elem) -> Elem {
        let mut out = Elem::new();
        for (i, x) in v {
            sparse_axpy(&mut out, x, &self.embedding[*i]);
        }
        out
    }

    /// Sub-basis coordinates of a parent element, if it lies in the span.
    pub fn to_sub(&self, v: &Elem) -> Option<Elem> {
        self.coords
            .coords(v)
            .map(|c| c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
    }

    /// Augmentation ideal `R^+` as parent elements `r - eps(r) 1`.
    pub fn augmentation_basis(&self, parent: &HopfAlgebra) -> Vec<Elem> {
        self.embedding
            .iter()
            .map(|r| {
                let mut v = r.clone();
                sparse_axpy(&mut v, &-parent.eps(r), parent.unit());
                v.retain(|_, x| !x.is_zero());
                v
            })
            .filter(|v| !v.is_empty())
            .collect()
    }
}

fn tensor_coords(coords: &CoordinateMap, t: &Tensor2) -> Result<Tensor2> {
    let mut by_left: BTreeMap<usize, Elem> = BTreeMap::new();
    for ((a, b), x) in t {
        add_term(by_left.entry(*a).or_default(), *b, x.clone());
    }
    // Contract the left factor, then the right one.
    let mut half: BTreeMap<usize, Elem> = BTreeMap::new();
    for (a, right) in &by_left {
        let ca = coords.coords_unchecked(&basis_elem(*a));
        for (i, x) in ca.iter().enumerate() {
            if !x.is_zero() {
                sparse_axpy(half.entry(i).or_default(), x, right);
            }
        }
    }
    let mut out = Tensor2::new();
    for (i, right) in &half {
        let c = coords
            .coords(right)
            .ok_or_else(|| DepthError::invalid("subalgebra is not a subcoalgebra"))?;
        for (j, x) in c.into_iter().enumerate() {
            add_term(&mut out, (*i, j), x);
        }
    }
    let mut back = Tensor2::new();
    for ((i, j), x) in &out {
        for (a, y) in coords.basis()[*i].iter() {
            for (b, z) in coords.basis()[*j].iter() {
                add_term(&mut back, (*a, *b), &(x * y) * z);
            }
        }
    }
    if &back != t {
        return Err(DepthError::invalid("subalgebra is not a subcoalgebra"));
    }
    Ok(out)
}

/// Human-readable linear combination of parent basis labels.
pub fn describe(parent: &HopfAlgebra, v: &Elem) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(k, x)| {
            if x.is_one() {
                parent.labels()[*k].clone()
            } else {
                format!("({x})*{}", parent.labels()[*k])
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

use num_traits::Zero;

use super::algebra::{basis_elem, Elem, HopfAlgebra, HopfSubalgebra};
use crate::error::{DepthError, Result};
use crate::exact_matrix::{Quotient, ScalarMatrix};
use crate::scalars::Cyclotomic;

/// A finite-dimensional right module: `v . b_i = v A_i` for row vectors `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleRep {
    dim: usize,
    actions: Vec<ScalarMatrix>,
    module_coalgebra: bool,
}

impl ModuleRep {
    /// Wraps action matrices, one per basis element of `alg`, checking the
    /// unit and multiplication laws.
    pub fn new(alg: &HopfAlgebra, actions: Vec<ScalarMatrix>) -> Result<Self> {
        let m = Self::unchecked(alg, actions)?;
        m.validate(alg)?;
        Ok(m)
    }

    pub(crate) fn unchecked(alg: &HopfAlgebra, actions: Vec<ScalarMatrix>) -> Result<Self> {
        if actions.len() != alg.dim() {
            return Err(DepthError::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                actions.len(),
                alg.dim()
            )));
        }
        let dim = actions.first().map_or(0, |a| a.rows());
        if actions.iter().any(|a| a.shape() != (dim, dim)) {
            return Err(DepthError::DimensionMismatch("action matrices differ in shape".into()));
        }
        Ok(Self {
            dim,
            actions,
            module_coalgebra: false,
        })
    }

    pub fn validate(&self, alg: &HopfAlgebra) -> Result<()> {
        if self.act_elem(alg.unit()) != ScalarMatrix::identity(self.dim) {
            return Err(DepthError::AxiomViolation("unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.actions[i].mul(&self.actions[j])?;
                if lhs != self.act_elem(alg.mul_basis(i, j)) {
                    return Err(DepthError::AxiomViolation(format!(
                        "action does not respect {} * {}",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The trivial module `k_eps`.
    pub fn trivial(alg: &HopfAlgebra) -> Self {
        let actions = (0..alg.dim())
            .map(|i| ScalarMatrix::filled(1, 1, alg.counit_basis(i).clone()))
            .collect();
        Self {
            dim: 1,
            actions,
            module_coalgebra: true,
        }
    }

    /// `H` acting on itself by right multiplication.
    pub fn regular(alg: &HopfAlgebra) -> Self {
        let actions = (0..alg.dim()).map(|i| alg.right_mult_matrix(&basis_elem(i))).collect();
        Self {
            dim: alg.dim(),
            actions,
            module_coalgebra: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &ScalarMatrix {
        &self.actions[i]
    }

    pub fn actions(&self) -> &[ScalarMatrix] {
        &self.actions
    }

    /// Action matrix of an arbitrary element.
    pub fn act_elem(&self, v: &Elem) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(self.dim, self.dim);
        for (i, c) in v {
            out = out.add(&self.actions[*i].scale(c)).expect("square matrices");
        }
        out
    }

    /// Whether the module was certified to be a module coalgebra.
    pub fn is_module_coalgebra(&self) -> bool {
        self.module_coalgebra
    }

    /// Restriction along the inclusion `R -> H`.
    pub fn restrict(&self, sub: &HopfSubalgebra) -> ModuleRep {
        ModuleRep {
            dim: self.dim,
            actions: sub.embedding().iter().map(|r| self.act_elem(r)).collect(),
            module_coalgebra: self.module_coalgebra,
        }
    }

    /// Direct sum of `k` copies.
    pub fn multiple(&self, k: usize) -> ModuleRep {
        let actions = self
            .actions
            .iter()
            .map(|a| ScalarMatrix::identity(k).kron(a))
            .collect();
        ModuleRep {
            dim: self.dim * k,
            actions,
            module_coalgebra: false,
        }
    }
}

/// Diagonal action on `U (x) W`: `(u (x) w) h = u h_(1) (x) w h_(2)`.
pub fn tensor_module(alg: &HopfAlgebra, u: &ModuleRep, w: &ModuleRep) -> ModuleRep {
    let dim = u.dim * w.dim;
    let actions = (0..alg.dim())
        .map(|i| {
            let mut out = ScalarMatrix::zeros(dim, dim);
            for ((a, b), c) in alg.delta_basis(i) {
                let term = u.actions[*a].kron(&w.actions[*b]).scale(c);
                out = out.add(&term).expect("same shape");
            }
            out
        })
        .collect();
    ModuleRep {
        dim,
        actions,
        module_coalgebra: u.module_coalgebra && w.module_coalgebra,
    }
}

/// `k`-th tensor power; the zeroth power is the trivial module.
pub fn tensor_power(alg: &HopfAlgebra, v: &ModuleRep, k: usize) -> ModuleRep {
    let mut out = ModuleRep::trivial(alg);
    for i in 0..k {
        out = if i == 0 { v.clone() } else { tensor_module(alg, &out, v) };
    }
    out
}

/// The generalized permutation module `V = H / R^+ H`.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub module: ModuleRep,
    pub quotient: Quotient,
    /// `D_V` as a `dim V x (dim V)^2` matrix in the row convention.
    pub coproduct: ScalarMatrix,
}

impl QuotientModule {
    /// Parent basis indices of the coset representatives.
    pub fn reps(&self) -> &[usize] {
        self.quotient.reps()
    }
}

/// Right ideal `R^+ H` spanned by `r b_j`.
pub fn augmentation_ideal(h: &HopfAlgebra, r: &HopfSubalgebra) -> Vec<Elem> {
    let mut out = Vec::new();
    for rp in r.augmentation_basis(h) {
        for j in 0..h.dim() {
            let v = h.mul(&rp, &basis_elem(j));
            if !v.is_empty() {
                out.push(v);
            }
        }
    }
    out
}

/// Builds `V = H / R^+ H` with its induced right action and coproduct, and
/// certifies that it is a module coalgebra.
pub fn quotient_module_v(h: &HopfAlgebra, r: &HopfSubalgebra) -> Result<QuotientModule> {
    let quotient = Quotient::new(h.dim(), augmentation_ideal(h, r));
    let m = quotient.dim();
    if m * r.dim() != h.dim() {
        return Err(DepthError::AxiomViolation(format!(
            "dim V = {m} but dim H / dim R = {}/{}",
            h.dim(),
            r.dim()
        )));
    }
    let reps = quotient.reps().to_vec();
    let mut actions = Vec::with_capacity(h.dim());
    for i in 0..h.dim() {
        let mut a = ScalarMatrix::zeros(m, m);
        for (k, &rep) in reps.iter().enumerate() {
            for (j, x) in quotient.project_sparse(h.mul_basis(rep, i)) {
                a.set(k, j, x);
            }
        }
        actions.push(a);
    }
    let mut module = ModuleRep::unchecked(h, actions)?;
    if h.dim() <= super::algebra::MAX_VALIDATED_DIM {
        module.validate(h)?;
    }

    let project_tensor = |t: &super::algebra::Tensor2| -> Vec<Cyclotomic> {
        let mut row = vec![Cyclotomic::zero(); m * m];
        for ((a, b), c) in t {
            let pa = quotient.project_sparse(&basis_elem(*a));
            if pa.is_empty() {
                continue;
            }
            let pb = quotient.project_sparse(&basis_elem(*b));
            for (i, x) in &pa {
                for (j, y) in &pb {
                    row[i * m + j] += &(&(c * x) * y);
                }
            }
        }
        row
    };
    let mut coproduct = ScalarMatrix::zeros(m, m * m);
    for (k, &rep) in reps.iter().enumerate() {
        for (j, x) in project_tensor(h.delta_basis(rep)).into_iter().enumerate() {
            coproduct.set(k, j, x);
        }
    }
    // D_V is well defined because R^+ H is a coideal, and H-linear.
    for rel in augmentation_ideal(h, r) {
        if project_tensor(&h.delta(&rel)).iter().any(|x| !x.is_zero()) {
            return Err(DepthError::AxiomViolation("R^+ H is not a coideal".into()));
        }
    }
    let vv = tensor_module(h, &module, &module);
    for i in 0..h.dim() {
        let lhs = module.actions[i].mul(&coproduct)?;
        let rhs = coproduct.mul(&vv.actions[i])?;
        if lhs != rhs {
            return Err(DepthError::AxiomViolation(format!(
                "coproduct of V is not linear for {}",
                h.labels()[i]
            )));
        }
    }
    module.module_coalgebra = true;
    Ok(QuotientModule {
        module,
        quotient,
        coproduct,
    })
}

/// Counit of `V`, `eps(h bar) = eps(h)`, on the representative basis.
pub fn quotient_counit(h: &HopfAlgebra, v: &QuotientModule) -> Vec<Cyclotomic> {
    v.reps().iter().map(|&i| h.counit_basis(i).clone()).collect()
}

/// Checks `(D_V (x) id) D_V`-style split: `D_V` followed by `id (x) eps` is
/// the identity, exhibiting `V` as a direct summand of `V (x) V`.
pub fn coalgebra_split_holds(h: &HopfAlgebra, v: &QuotientModule) -> bool {
    let m = v.module.dim();
    let eps = quotient_counit(h, v);
    let mut contract = ScalarMatrix::zeros(m * m, m);
    for i in 0..m {
        for j in 0..m {
            contract.set(i * m + j, i, eps[j].clone());
        }
    }
    v.coproduct
        .mul(&contract)
        .map(|p| p == ScalarMatrix::identity(m))
        .unwrap_or(false)
}

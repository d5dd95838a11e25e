//! Finite-dimensional Hopf algebras given by structure constants, the
//! generalized permutation module `V = H / R^+ H` of a Hopf subalgebra and
//! its module depth.

mod algebra;
pub mod depth;
pub mod families;
pub mod module;
pub mod structure;
pub mod tensor_iso;

pub(crate) use algebra::add_term;
pub use algebra::{
    describe, Elem, HopfAlgebra, HopfJson, HopfParts, HopfSubalgebra, Tensor2, MAX_VALIDATED_DIM,
};
pub use depth::{
    depth_interval, module_depth, module_depth_detail, module_depth_over_h, module_depth_over_r,
    restriction_monotonicity, weight_decomposition, weight_isomorphism, LadderCheck, ModuleDepthDetail,
    WeightDecomposition,
};
pub use families::{group_algebra, group_subalgebra, small_quantum, taft};
pub use module::{quotient_module_v, tensor_module, tensor_power, ModuleRep, QuotientModule};
pub use structure::{integral_and_normality, radical_and_chevalley, right_integral, Integral, IntegralReport, RadicalReport};
pub use tensor_iso::{tensor_over_r_iso, TensorIsoReport};

/// Sub-basis JSON: each entry lists `[parent_index, coefficient]` pairs.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubalgebraJson {
    pub basis: Vec<Vec<(usize, crate::scalars::Cyclotomic)>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl SubalgebraJson {
    pub fn from_json_str(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::DepthError::Parse {
            position: e.column(),
            message: format!("line {}: {e}", e.line()),
        })
    }

    pub fn build(&self, parent: &HopfAlgebra) -> crate::Result<HopfSubalgebra> {
        let basis = self
            .basis
            .iter()
            .map(|v| v.iter().cloned().collect::<Elem>())
            .collect();
        HopfSubalgebra::new(parent, basis, self.labels.clone())
    }
}

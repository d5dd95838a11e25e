use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};

/// Which depth quantity a report carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    #[serde(rename = "odd_depth")]
    OddDepth,
    #[serde(rename = "h_depth")]
    HDepth,
    /// Module depth of V over the overalgebra.
    #[serde(rename = "module_depth_H")]
    ModuleDepthH,
    /// Module depth of V over the subalgebra.
    #[serde(rename = "module_depth_R")]
    ModuleDepthR,
    #[serde(rename = "even_depth_upper_bound")]
    EvenDepthUpperBound,
    #[serde(rename = "depth_interval")]
    DepthInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DepthValue {
    Single(u64),
    Interval([u64; 2]),
}

impl DepthValue {
    pub fn lo(&self) -> u64 {
        match self {
            DepthValue::Single(v) => *v,
            DepthValue::Interval([lo, _]) => *lo,
        }
    }

    pub fn hi(&self) -> u64 {
        match self {
            DepthValue::Single(v) => *v,
            DepthValue::Interval([_, hi]) => *hi,
        }
    }
}

/// Outcome of a depth computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub quantity: Quantity,
    pub value: DepthValue,
    /// False when `value` is only an upper bound.
    pub exact: bool,
    pub stabilization_step: u64,
    pub method: String,
}

impl DepthReport {
    pub fn single(
        quantity: Quantity,
        value: u64,
        exact: bool,
        stabilization_step: u64,
        method: impl Into<String>,
    ) -> Self {
        Self {
            quantity,
            value: DepthValue::Single(value),
            exact,
            stabilization_step,
            method: method.into(),
        }
    }

    /// An interval report; the width is at most one.
    pub fn interval(lo: u64, hi: u64, stabilization_step: u64, method: impl Into<String>) -> Result<Self> {
        if lo > hi || hi - lo > 1 {
            return Err(DepthError::invalid(format!("depth interval [{lo}, {hi}] wider than 1")));
        }
        Ok(Self {
            quantity: Quantity::DepthInterval,
            value: DepthValue::Interval([lo, hi]),
            exact: true,
            stabilization_step,
            method: method.into(),
        })
    }

    pub fn value(&self) -> u64 {
        self.value.hi()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_width_is_checked() {
        assert!(DepthReport::interval(3, 4, 1, "").is_ok());
        assert!(DepthReport::interval(3, 5, 1, "").is_err());
        assert!(DepthReport::interval(4, 3, 1, "").is_err());
    }

    #[test]
    fn serialized_shape() {
        let r = DepthReport::interval(3, 4, 1, "weights").unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["quantity"], "depth_interval");
        assert_eq!(v["value"], serde_json::json!([3, 4]));
        let r = DepthReport::single(Quantity::ModuleDepthH, 2, true, 1, "support");
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["quantity"], "module_depth_H");
        assert_eq!(v["value"], 2);
    }
}

//! Pass/fail records attached to every report, each tagged with the claim it checks.

use serde::Serialize;

/// Claim tags carried by output rows and checks.
pub mod claim {
    pub const COCYCLE_CLOSED_FORM: &str = "cocycle-closed-form";
    pub const COCYCLE_IDENTITY: &str = "cocycle-identity";
    pub const COCYCLE_ANTISYMMETRY: &str = "cocycle-antisymmetry";
    pub const CURVATURE_INVARIANCE: &str = "curvature-invariance";
    pub const TORUS_COMMUTATION: &str = "torus-commutation";
    pub const TRACE_PROPERTY: &str = "trace-property";
    pub const INVOLUTION: &str = "involution";
    pub const REGULAR_REPRESENTATION: &str = "regular-representation";
    pub const REDUCED_NORM: &str = "reduced-norm";
    pub const GRAM_VACUUM: &str = "gram-vacuum";
    pub const MODULE_POSITIVITY: &str = "module-positivity";
    pub const MODULE_TRACE: &str = "module-trace";
    pub const PROJECTIVE_ACTION: &str = "projective-action";
    pub const HOLOMORPHIC_INDEX: &str = "holomorphic-index";
    pub const SPECTRAL_GAP: &str = "spectral-gap";
    pub const PARAMETRIX: &str = "parametrix";
    pub const SUSY_PAIRING: &str = "susy-pairing";
    pub const WEITZENBOCK: &str = "weitzenbock";
    pub const KERNEL_ORTHONORMAL: &str = "kernel-orthonormal";
    pub const PRODUCT_DECAY: &str = "product-decay";
    pub const COMMUTATOR_DECAY: &str = "commutator-decay";
    pub const FIRST_ORDER_DECAY: &str = "first-order-decay";
    pub const TRACE_LIMIT: &str = "trace-limit";
    pub const WEYL_RELATION: &str = "weyl-relation";
    pub const BARGMANN_FORMULA: &str = "bargmann-formula";
    pub const HEISENBERG_COMMUTATOR: &str = "heisenberg-commutator";
    pub const GROUP_COMMUTATOR: &str = "group-commutator";
    pub const ZERO_MODE: &str = "zero-mode";
    pub const L2_INDEX: &str = "l2-index";
    pub const GENUS_TRACE: &str = "genus-trace";
    pub const INDEX_CROSSCHECK: &str = "index-crosscheck";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub claim: &'static str,
    pub quantity: String,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(claim: &'static str, quantity: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { claim, quantity: quantity.into(), value, relation: Relation::AtMost, bound, pass: value <= bound }
    }

    pub fn at_least(claim: &'static str, quantity: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { claim, quantity: quantity.into(), value, relation: Relation::AtLeast, bound, pass: value >= bound }
    }

    /// A boolean condition, recorded as `1 >= 1` or `0 >= 1`.
    pub fn holds(claim: &'static str, quantity: impl Into<String>, ok: bool) -> Self {
        Self::at_least(claim, quantity, if ok { 1.0 } else { 0.0 }, 1.0)
    }
}

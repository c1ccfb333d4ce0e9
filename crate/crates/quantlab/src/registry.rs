//! Which subcommand exercises each library operation.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Operation {
    pub module: &'static str,
    pub operation: &'static str,
    /// Subcommand path, e.g. `algebra mult`.
    pub invocation: &'static str,
}

const fn op(module: &'static str, operation: &'static str, invocation: &'static str) -> Operation {
    Operation { module, operation, invocation }
}

pub const OPERATIONS: &[Operation] = &[
    op("algebra", "multiply", "algebra mult"),
    op("algebra", "involution", "algebra star"),
    op("algebra", "trace", "algebra trace"),
    op("algebra", "regular_representation", "algebra rep"),
    op("algebra", "norm_estimate", "algebra norm"),
    op("algebra", "norm_profile", "algebra norm-profile"),
    op("symplectic", "exterior_derivative", "cocycle-check"),
    op("symplectic", "pullback", "cocycle-check"),
    op("symplectic", "solve_phi", "cocycle-check"),
    op("symplectic", "derive_cocycle", "cocycle-check"),
    op("symplectic", "cocycle_table", "cocycle-check"),
    op("sections", "project_act", "module-gram"),
    op("sections", "l2_inner", "module-gram"),
    op("sections", "module_inner", "module-gram"),
    op("sections", "module_trace", "module-gram"),
    op("sections", "gram_positivity", "module-gram"),
    op("dolbeault", "build_dolbeault", "spectral"),
    op("dolbeault", "kernel_dimension", "spectral"),
    op("dolbeault", "spectral_report", "spectral"),
    op("dolbeault", "weitzenbock_residual", "spectral"),
    op("dolbeault", "kernel_basis", "spectral"),
    op("toeplitz", "toeplitz", "toeplitz-sweep"),
    op("toeplitz", "product_defect", "toeplitz-sweep"),
    op("toeplitz", "commutator_defect", "toeplitz-sweep"),
    op("toeplitz", "first_order_defect", "toeplitz-sweep"),
    op("toeplitz", "trace_limit_defect", "toeplitz-sweep"),
    op("toeplitz", "weyl_relation", "weyl"),
    op("fock", "bargmann_matrix_element", "bargmann"),
    op("fock", "heisenberg_generator_check", "heisenberg"),
    op("index", "l2_index", "index"),
    op("index", "natsume_nest_trace", "index"),
    op("index", "numeric_index_crosscheck", "index"),
];

use std::collections::BTreeSet;

use clap::Parser;
use quantlab::cli::Cli;
use quantlab::registry::OPERATIONS;

/// Public operations of the library modules, listed independently of the registry.
const EXPECTED: &[(&str, &str)] = &[
    ("algebra", "multiply"),
    ("algebra", "involution"),
    ("algebra", "trace"),
    ("algebra", "regular_representation"),
    ("algebra", "norm_estimate"),
    ("algebra", "norm_profile"),
    ("symplectic", "exterior_derivative"),
    ("symplectic", "pullback"),
    ("symplectic", "solve_phi"),
    ("symplectic", "derive_cocycle"),
    ("symplectic", "cocycle_table"),
    ("sections", "project_act"),
    ("sections", "l2_inner"),
    ("sections", "module_inner"),
    ("sections", "module_trace"),
    ("sections", "gram_positivity"),
    ("dolbeault", "build_dolbeault"),
    ("dolbeault", "kernel_dimension"),
    ("dolbeault", "spectral_report"),
    ("dolbeault", "weitzenbock_residual"),
    ("dolbeault", "kernel_basis"),
    ("toeplitz", "toeplitz"),
    ("toeplitz", "product_defect"),
    ("toeplitz", "commutator_defect"),
    ("toeplitz", "first_order_defect"),
    ("toeplitz", "trace_limit_defect"),
    ("toeplitz", "weyl_relation"),
    ("fock", "bargmann_matrix_element"),
    ("fock", "heisenberg_generator_check"),
    ("index", "l2_index"),
    ("index", "natsume_nest_trace"),
    ("index", "numeric_index_crosscheck"),
];

#[test]
fn registry_covers_every_operation() {
    let expected: BTreeSet<_> = EXPECTED.iter().copied().collect();
    let listed: BTreeSet<_> = OPERATIONS.iter().map(|o| (o.module, o.operation)).collect();
    assert_eq!(listed.len(), OPERATIONS.len(), "duplicate registry entries");
    assert_eq!(listed, expected);
}

#[test]
fn every_invocation_parses() {
    for op in OPERATIONS {
        let argv = std::iter::once("quantlab").chain(op.invocation.split_whitespace());
        if let Err(e) = Cli::try_parse_from(argv) {
            panic!("{} does not parse: {e}", op.invocation);
        }
    }
}

#[test]
fn registry_subcommand_lists_the_table() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_quantlab")).arg("registry").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), OPERATIONS.len() + 1);
    assert!(text.starts_with("module,operation,invocation"));
}

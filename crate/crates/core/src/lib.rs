//! Numerical laboratory for twisted group algebras, lattice Dolbeault operators and Toeplitz operators on the flat torus.
//!
//! The crate is `no_std` and needs only `alloc`. It covers:
//!
//! * [`algebra`]: the twisted group algebra `ℂ[ℤ², σ_s]`, its trace, involution and
//!   truncated regular representations.
//! * [`symplectic`]: group cocycles derived from polynomial symplectic potentials.
//! * [`sections`]: Gaussian sections on the covering plane with the projective `ℤ²`
//!   action and the algebra-valued inner product.
//! * [`dolbeault`]: a lattice Dolbeault operator of flux `N` with exact index `N`.
//! * [`toeplitz`]: Toeplitz matrices on the holomorphic sections and their asymptotics.
//! * [`fock`]: the vacuum matrix elements and Heisenberg generators on the plane.
//! * [`index`]: closed-form `L²`-index values for surfaces.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod dolbeault;
mod error;
pub mod fock;
pub mod index;
pub mod linalg;
pub mod poly;
pub mod quadrature;
pub mod sections;
pub mod symplectic;
pub mod toeplitz;
pub mod trig;

pub use error::Error;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

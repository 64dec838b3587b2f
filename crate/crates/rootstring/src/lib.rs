//! Exact combinatorics of abstract root systems and their Phi-strings.
//!
//! Given a (possibly non-reduced) root system `Sigma` with simple basis `Pi`,
//! a subset `Phi` of `Pi`, and a root `lambda`, the Phi-string of `lambda` is
//! the set of elements of `Sigma ∪ {0}` of the form
//! `lambda + sum_{alpha in Phi} n_alpha alpha` with integer `n_alpha`.
//!
//! The crate computes these strings two independent ways and checks that the
//! results agree:
//!
//! * brute force — closure-generated root sets plus a definitional scan
//!   ([`strings::phi_string`]);
//! * closed form — per-family member formulas for classical extensions and
//!   transcribed member tables for exceptional ones ([`closedform`]).
//!
//! All arithmetic is exact: roots are integer vectors over the simple basis
//! and geometry enters only through a rational Gram matrix. [`stringgraph`]
//! turns a string into its oriented labeled diagram, and [`verify`] drives
//! the catalog-wide equivalence checks.

pub mod closedform;
pub mod error;
pub mod rootsys;
pub mod stringgraph;
pub mod strings;
pub mod verify;

pub use error::{Error, Result};
pub use rootsys::{
    build_root_system, DynkinGraph, Family, Rat, Root, RootSystem, RootSystemType,
};
pub use strings::{phi_string, span_subsystem, StringSet, Subsystem};

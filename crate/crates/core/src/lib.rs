//! Exact combinatorics of birational self-maps of projective space.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`]: sparse polynomials over the rationals with substitution and GCD;
//! * [`maps`]: homogeneous representatives of rational self-maps of `P^n`,
//!   composition, projective equality, restriction and contraction tests,
//!   and affine polynomial maps;
//! * [`leading`]: leading pairs, the valuation `v`, G-form recognition and
//!   the exponent matrix `rho(f)`;
//! * [`lattice`]: integer matrices carrying `rho` and `SL'_n(Z)`;
//! * [`families`]: constructors for diagonal, monomial, sigma and shear maps;
//! * [`group`]: free-group words, freeness certificates, conjugation actions;
//! * [`newton`]: Newton polytopes, Newton bodies and lattice volume;
//! * [`text`], [`report`], [`corpus`], [`cli`]: the command-line surface.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod families;
pub mod group;
pub mod lattice;
pub mod leading;
pub mod maps;
pub mod newton;
pub mod poly;
pub mod report;
pub mod text;

pub use error::{Error, ErrorKind, Result};

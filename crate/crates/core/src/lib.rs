//! Exact computation in finite projective spaces PG(n, q).
//!
//! The crate is `no_std` (with `alloc`) and covers:
//!
//! - [`galois`]: arithmetic in GF(p^h) with integer-encoded elements,
//! - [`projective`]: canonical points, hyperplanes and subspaces, plus the
//!   bitset incidence table ([`Geometry`]) every other module leans on,
//! - [`covers`]: holes, essential hyperplanes, blocking sets, tangents and
//!   minimal reduction of covers,
//! - [`constructions`]: pencils and the sharp partial covers with a known
//!   number of holes,
//! - [`verify`]: exhaustive and sampled enumeration kernels that check the
//!   hole, tangent, structure and reduction theorems instance by instance.
//!
//! IO, timing, threading and the command line live in the companion
//! `pgcover` crate.

#![no_std]
#![warn(rust_2018_idioms, unused_qualifications)]

extern crate alloc;

pub mod bits;
pub mod combinatorics;
pub mod constructions;
pub mod covers;
mod error;
pub mod galois;
pub mod projective;
pub mod verify;

pub use error::{Error, Result};
pub use galois::{FieldElement, FieldSpec};
pub use projective::{Geometry, Hyperplane, ProjPoint, Subspace};
pub use covers::{PartialCover, PointSet};

//! Classical blowup of `F^n` (`F = R` or `C`) at the origin, as a numerical
//! library: the incidence model `X ⊂ F^n × P(F^n)`, the blowdown `q`, lifts of
//! origin-fixing maps through `q`, dynamics on the exceptional locus `Σ`,
//! finite-difference detection of the regularity loss of lifted maps, and
//! conjugacy-induced variant blowups together with a constructive witness that
//! homeomorphisms need not lift.
//!
//! The crate is `no_std` (with `alloc`); all IO, serialization, and the
//! experiment CLI live in the companion `blowup-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod map;
pub mod model;
pub mod projective;
pub mod regularity;
pub mod rng;
pub mod topology;
pub mod variant;

pub use error::Error;
pub use linalg::{EigenComponent, Field, Matrix};
pub use model::BlowupPoint;
pub use projective::ProjPoint;

/// Default tolerance used by every operation that accepts an override.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Below this distance from the origin, point lifting is refused and lifted
/// map evaluation switches to derivative data.
pub const SIGMA_CUTOFF: f64 = 1e-13;

pub type Result<T> = core::result::Result<T, Error>;

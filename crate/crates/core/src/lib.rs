//! Random walks on finitely generated groups and the semigroups their tails
//! generate.
//!
//! The crate covers exact group arithmetic ([`group`]), symmetric step
//! measures and reproducible traces ([`walk`]), budget-bounded semigroup
//! closure ([`closure`]), subsemigroups of `Z^d` ([`lattice`]), statistics
//! specific to free groups ([`free`]) and a scenario runner
//! ([`experiment`]).
//!
//! ```
//! use algrec::group::{commutator, GroupElement};
//!
//! let a = GroupElement::heisenberg(1, 0, 0);
//! let b = GroupElement::heisenberg(0, 1, 0);
//! let z = commutator(&a, &b).unwrap();
//! assert_eq!(z.to_string(), "H(0,0,1)");
//! ```

pub mod closure;
pub mod error;
pub mod experiment;
pub mod free;
pub mod group;
pub mod lattice;
pub mod walk;

pub use error::{Error, Result};

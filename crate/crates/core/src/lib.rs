//! Schur multipliers of pairs of finite p-groups and machine checks of
//! exponent bounds for them.
//!
//! The crate is organised bottom-up:
//!
//! - [`group`]: concrete finite groups on dense indices, subgroups,
//!   commutator series of pairs, agemo subgroups, power-structure predicates.
//! - [`pc`]: polycyclic presentations, collection and consistency.
//! - [`zlinalg`]: exact integer matrices, Smith normal form, finitely
//!   generated abelian groups.
//! - [`multiplier`]: `M(G)` through the normalized bar resolution and through
//!   the tails method, and `M(G,N)` for split pairs.
//! - [`verify`]: bound formulas, the built-in corpus and the report harness.
//! - [`groupfile`]: the JSON group definition format.

pub mod caps;
pub mod error;
pub mod group;
pub mod groupfile;
pub mod multiplier;
pub mod pc;
pub mod verify;
pub mod zlinalg;

pub use caps::Caps;
pub use error::{Error, Result};

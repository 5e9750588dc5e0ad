//! Schur multipliers `M(G)` and `M(G, N)` for split pairs.

mod bar;
mod pair;
mod tails;

pub use bar::{boundary_in, h2_bar, induced_h2, H2Result};
pub use pair::{
    pair_multiplier, pair_multiplier_using, presentation_for, retraction, schur_multiplier,
    Backend, BackendChoice, PairMultiplier,
};
pub use tails::{multiplier_pc_tails, tails_module};

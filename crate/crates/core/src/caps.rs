//! Resource caps. None of these affect results; they only bound the work a
//! single call is allowed to do.

use std::env;

pub const DEFAULT_MAX_CAYLEY: usize = 4096;
pub const DEFAULT_MAX_BAR: usize = 32;
pub const DEFAULT_MAX_COMPLEMENT: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order for which a full multiplication table is stored.
    pub cayley: usize,
    /// Largest group order accepted by the bar-resolution backend.
    pub bar: usize,
    /// Largest group order for which complements are searched.
    pub complement: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            cayley: DEFAULT_MAX_CAYLEY,
            bar: DEFAULT_MAX_BAR,
            complement: DEFAULT_MAX_COMPLEMENT,
        }
    }
}

impl Caps {
    /// Defaults overridden by `PAIRMULT_MAX_CAYLEY`, `PAIRMULT_MAX_BAR` and
    /// `PAIRMULT_MAX_COMPLEMENT` when they parse as integers.
    pub fn from_env() -> Self {
        fn read(key: &str, default: usize) -> usize {
            env::var(key)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(default)
        }
        Caps {
            cayley: read("PAIRMULT_MAX_CAYLEY", DEFAULT_MAX_CAYLEY),
            bar: read("PAIRMULT_MAX_BAR", DEFAULT_MAX_BAR),
            complement: read("PAIRMULT_MAX_COMPLEMENT", DEFAULT_MAX_COMPLEMENT),
        }
    }
}

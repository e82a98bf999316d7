//! Desk-scale bounds for the exhaustive routines.
//!
//! Every exhaustive search checks its input against these bounds up front and
//! refuses with a named error instead of truncating the search.

use std::sync::OnceLock;

/// Environment variable that overrides [`Limits::enum_words`].
pub const ENUM_BOUND_ENV: &str = "SEYMOUR_ENUM_BOUND";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of codewords an enumeration may visit.
    pub enum_words: u64,
    /// Maximum length for the exhaustive separation search.
    pub separation_len: usize,
    /// Maximum length for graph realization by backtracking.
    pub realization_len: usize,
    /// Maximum length for permutation-equivalence and minor searches.
    pub equivalence_len: usize,
    /// Maximum number of inequalities in a fundamental-polytope LP.
    pub lp_rows: usize,
    /// Maximum number of odd vertices handled by the T-join matching.
    pub tjoin_terminals: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            enum_words: 1 << 24,
            separation_len: 20,
            realization_len: 16,
            equivalence_len: 14,
            lp_rows: 1_000_000,
            tjoin_terminals: 20,
        }
    }
}

impl Limits {
    /// Defaults with the enumeration bound taken from `SEYMOUR_ENUM_BOUND` if set.
    ///
    /// The variable holds a word count, e.g. `65536`. Unparseable values are ignored.
    #[must_use]
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(v) = std::env::var(ENUM_BOUND_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            limits.enum_words = v;
        }
        limits
    }

    /// Process-wide limits, read from the environment on first use.
    pub fn global() -> &'static Limits {
        static GLOBAL: OnceLock<Limits> = OnceLock::new();
        GLOBAL.get_or_init(Limits::from_env)
    }

    /// True if enumerating `2^dimension` words stays within the bound.
    #[must_use]
    pub fn allows_enumeration(&self, dimension: usize) -> bool {
        dimension < 64 && (1u64 << dimension) <= self.enum_words
    }
}

//! Fault injection for the mutation-sensitivity tests.
//!
//! Each flag corrupts one core convention at runtime. They exist so the
//! test battery can demonstrate that it would notice such a bug; nothing
//! in the library sets them outside of tests and the hidden CLI flag.
//! The flags are process-global, so tests that use them must not run
//! concurrently with tests that expect sane arithmetic.

use std::sync::atomic::{AtomicBool, Ordering};

static TMINUS_INF: AtomicBool = AtomicBool::new(false);
static SKIP_TRIANGLE_REPAIR: AtomicBool = AtomicBool::new(false);
static NONSTRICT_BPLUS: AtomicBool = AtomicBool::new(false);

/// The three seeded core mutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// `∞ ⊖ ∞` evaluates to `∞` instead of `0`.
    TminusInfConvention,
    /// The instance generator skips the shortest-path triangle repair.
    SkipTriangleRepair,
    /// `B⁺φ` membership uses `φ(x) ≤ r` instead of the strict `φ(x) < r`.
    NonstrictBplus,
}

impl Mutation {
    pub fn parse(s: &str) -> Option<Mutation> {
        match s {
            "tminus-inf" => Some(Mutation::TminusInfConvention),
            "skip-triangle-repair" => Some(Mutation::SkipTriangleRepair),
            "nonstrict-bplus" => Some(Mutation::NonstrictBplus),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mutation::TminusInfConvention => "tminus-inf",
            Mutation::SkipTriangleRepair => "skip-triangle-repair",
            Mutation::NonstrictBplus => "nonstrict-bplus",
        }
    }

    fn flag(&self) -> &'static AtomicBool {
        match self {
            Mutation::TminusInfConvention => &TMINUS_INF,
            Mutation::SkipTriangleRepair => &SKIP_TRIANGLE_REPAIR,
            Mutation::NonstrictBplus => &NONSTRICT_BPLUS,
        }
    }

    pub fn set(&self, on: bool) {
        self.flag().store(on, Ordering::SeqCst);
    }

    /// Enables the mutation until the guard is dropped.
    pub fn enable(&self) -> MutationGuard {
        self.set(true);
        MutationGuard(*self)
    }
}

/// Clears every mutation flag.
pub fn clear_all() {
    for m in [
        Mutation::TminusInfConvention,
        Mutation::SkipTriangleRepair,
        Mutation::NonstrictBplus,
    ] {
        m.set(false);
    }
}

pub(crate) fn tminus_inf_corrupted() -> bool {
    TMINUS_INF.load(Ordering::Relaxed)
}

pub(crate) fn triangle_repair_skipped() -> bool {
    SKIP_TRIANGLE_REPAIR.load(Ordering::Relaxed)
}

pub(crate) fn bplus_nonstrict() -> bool {
    NONSTRICT_BPLUS.load(Ordering::Relaxed)
}

/// RAII guard returned by [`Mutation::enable`].
pub struct MutationGuard(Mutation);

impl Drop for MutationGuard {
    fn drop(&mut self) {
        self.0.set(false);
    }
}

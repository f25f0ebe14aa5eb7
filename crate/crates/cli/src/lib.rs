//! Session language, report assembly and the example harness on top of
//! `char2forms-core`.

pub mod report;
pub mod eval;
pub mod examples;
pub mod sampling;
pub mod session;
pub mod suites;

/// Settings shared by sessions and examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub degree_bound: u32,
    /// Record wall-clock time per check; off by default so reports are reproducible.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, degree_bound: 2, timing: false }
    }
}

//! Exact Betti-number bounds for sets defined by quadratic inequalities,
//! together with a GF(2) cubical homology engine and a set of audits that
//! check the bounds against concrete, grid-approximated semi-algebraic sets.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command line live in the companion `quadbetti` crate.
//!
//! Module map:
//! - [`bounds`]: closed formulas and recurrences (complete-intersection
//!   Betti totals, the quadratic-inequality bounds).
//! - [`gf2`], [`cubical`], [`mayer_vietoris`]: homology over the two-element
//!   field for cubical complexes.
//! - [`quadratic`], [`grid`], [`probe`]: exact quadratic polynomials and
//!   forms, grid approximation of their sublevel/zero sets, and a numeric
//!   nonsingularity probe.
//! - [`harness`]: curated scenarios with known topology and the audits.
#![no_std]
#![allow(clippy::needless_range_loop, clippy::manual_is_multiple_of)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod cubical;
pub mod error;
pub mod gf2;
pub mod grid;
pub mod harness;
pub mod mayer_vietoris;
pub mod probe;
pub mod quadratic;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Violation,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Violation => "VIOLATION",
        }
    }

    /// Combine two verdicts: any violation dominates, then any inconclusive.
    pub fn and(self, other: Verdict) -> Verdict {
        core::cmp::max(self, other)
    }

    pub fn all<I: IntoIterator<Item = Verdict>>(verdicts: I) -> Verdict {
        verdicts.into_iter().fold(Verdict::Pass, Verdict::and)
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

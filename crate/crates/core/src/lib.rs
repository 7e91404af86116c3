//! Minimal free resolutions and related invariants of monomial ideals.
//!
//! Betti numbers come from the Taylor complex (with an Eliahou–Kervaire
//! shortcut for stable ideals), Hilbert functions from inclusion–exclusion,
//! generic initial ideals from exact Buchberger runs after random changes
//! of coordinates. The [`verdict`] module checks statements about these on
//! single ideals and [`suite`] runs them over whole families.

pub mod betti;
pub mod binomial;
pub mod cli;
pub mod ek;
pub mod error;
pub mod families;
pub mod format;
pub mod gin;
pub mod hilbert;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod suite;
pub mod taylor;
pub mod verdict;

pub use betti::{betti_table, multigraded_betti, total_betti, BettiTable};
pub use ek::{ek_graded_betti, ek_total_betti, ek_via_m_counts};
pub use error::{Error, Result};
pub use format::{parse_ideal, render_ideal};
pub use gin::{gin_revlex, GinConfig, GinResult};
pub use hilbert::{hilbert_function, is_gotzmann, lexify, lexsegment_class, LexClass};
pub use ideal::{Limits, MonomialIdeal, StabilityClass};
pub use linalg::Field;
pub use monomial::{Monomial, MonomialOrder};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
pub use taylor::{is_taylor_minimal, TaylorComplex};
pub use verdict::{verdict, verdicts, Statement, Verdict, VerdictContext};

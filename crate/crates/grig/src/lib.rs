//! Construction, exact language enumeration and aperiodic-order metrics for
//! l-Grigorchuk subshifts.
//!
//! An l-Grigorchuk subshift is generated by the infinite word η over
//! {a, x, y, z} built from the elementary substitutions τ_x, τ_y, τ_z
//! (a ↦ aβa, fixing the other letters) applied in blocks of lengths
//! l_1, l_2, …, the filler cycling x → y → z per block. The crate constructs
//! these words for configurable sequences, enumerates their language exactly
//! through covering words, computes the aperiodic-order metrics — factor
//! complexity p(n), maximal powers Q(n), the repetitive function R(n), the
//! repulsiveness statistic A_{α,n} — classifies sequences against the
//! α-finite/α-repulsive/α-repetitive boundedness criteria, and verifies the
//! closed-form identities relating all of these to the sequence l against
//! brute-force oracles.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p grig --release --example generate_words
//! cargo run -p grig --release --example enumerate_language
//! cargo run -p grig --release --example powers_and_repetition
//! cargo run -p grig --release --example classify_families
//! cargo run -p grig --release --example verification_suite
//! ```
//!
//! The same functionality is scriptable through the thin `grig` binary; see
//! `grig --help`.
//!
//! # Quick start
//!
//! ```
//! use grig::{LSpec, Session};
//!
//! let spec: LSpec = "const:1".parse().unwrap();
//! let mut session = Session::new(spec);
//! assert_eq!(session.eta_prefix_word(7).unwrap().to_string(), "axayaxa");
//! assert_eq!(grig::metrics::complexity(&mut session, 4).unwrap(), 10);
//! ```

pub mod classifier;
mod error;
pub mod language;
pub mod lspec;
pub mod metrics;
pub mod report;
pub mod session;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use language::{ExtSet, FactorTable};
pub use lspec::{
    block_decompose, derived_spec, filler_letter, BlockPos, ExtendPolicy, LFamily, LSpec,
    ValidationMode,
};
pub use session::{tau_image, Session, SessionConfig};
pub use word::{kappa, tau, Letter, Word};

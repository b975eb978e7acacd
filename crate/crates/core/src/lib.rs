//! Coded caching with shared helper caches and private caches, driven by
//! placement delivery arrays.
//!
//! - [`pda`]: PDA arrays, the C1–C3 checker, the MaN and Construction A families.
//! - [`sppda`]: shared-and-private PDAs, the D1–D2 checker and the two-PDA construction.
//! - [`perm`]: column permutations that minimize the number of transmissions.
//! - [`sim`]: bit-exact placement, XOR delivery and decoding.
//! - [`analysis`]: closed-form rate and subpacketization comparisons and sweeps.
//! - [`format`]: text and JSON formats for arrays, logs and reports.

pub mod analysis;
pub mod binom;
pub mod error;
pub mod format;
pub mod pda;
pub mod perm;
pub mod profile;
pub mod random;
pub mod sim;
pub mod sppda;

pub use error::{Error, Result};
pub use pda::{construction_a_pda, man_pda, Entry, Grid, PdaArray, PdaParams};
pub use profile::AssociationProfile;
pub use sppda::{construct_sppda, s_count, SpPdaArray, SpPdaParams};

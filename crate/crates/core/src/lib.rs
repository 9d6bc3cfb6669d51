//! Pair-flip spin chain toolkit.
//!
//! Exact word combinatorics, pair statistics, Schmidt spectra, restricted
//! Hamiltonians and Markov-chain gap bounds for the pair-flip model and the
//! Motzkin and Fredkin comparison chains.

pub mod counting;
pub mod entanglement;
pub mod error;
pub mod markov;
pub mod paircount;
pub mod repro;
pub mod spectra;
pub mod words;

pub use error::{Error, Result};

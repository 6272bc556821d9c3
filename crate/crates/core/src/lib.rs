//! Syndrome fuzzy hashing with LDPC codes.
//!
//! Error-tolerant authentication stores a conventional hash of a binary
//! template together with error-correction side information, so a noisy
//! re-acquisition can be matched without keeping the template itself. This
//! crate implements the two classic schemes (fuzzy commitment and syndrome
//! fuzzy hashing) along with everything needed to run and evaluate them:
//!
//! - bit-packed GF(2) vectors and sparse parity-check matrices ([`bits`],
//!   [`sparse`], [`alist`]);
//! - almost-regular ensemble design and Gallager-A density evolution
//!   ([`ensemble`], [`de`]);
//! - Progressive Edge Growth code construction with optional lower-triangular
//!   form ([`peg`]);
//! - hard-decision (Gallager A/B) and sum-product decoding, in codeword and
//!   syndrome form ([`decoder`]);
//! - BSC Monte Carlo simulation with deterministic parallel aggregation
//!   ([`channel`]);
//! - the enroll/verify protocols ([`fuzzy`]);
//! - discrimination-entropy analysis of template sets ([`entropy`]).

pub mod alist;
pub mod bits;
pub mod channel;
pub mod de;
pub mod decoder;
pub mod ensemble;
pub mod entropy;
pub mod error;
pub mod fuzzy;
pub mod peg;
pub mod sparse;

#[cfg(test)]
pub(crate) mod testutil;

pub use alist::{alist_read, alist_write};
pub use bits::{hamming_distance, BitVector};
pub use channel::{bsc_apply, run_montecarlo, BscChannel, SimulationReport};
pub use de::{evolve, ga_step, threshold, DeTrace};
pub use decoder::{
    gallager_codeword_decode, gallager_decode, spa_decode, spa_syndrome_decode, DecodeResult,
    DecoderConfig, DecoderVariant,
};
pub use ensemble::{
    edge_distributions, feasibility, row_weight_profile, DegreeDistribution, EnsembleSpec,
};
pub use entropy::{
    dof, pairwise_distances, pseudomask_from_masks, synth_generate, syndrome_set_analysis,
    transition_probabilities, DofReport, Pseudomask, TemplateSet,
};
pub use error::{Error, Result};
pub use fuzzy::{fc_enroll, fc_verify, fh_enroll, fh_verify, EnrollmentRecord, VerifyOutcome};
pub use peg::{girth_histogram, peg_construct, GirthReport, PegConfig};
pub use sparse::{encode_systematic, LdpcCode, SparseParityCheck};

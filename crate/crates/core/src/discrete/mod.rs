//! Finite-alphabet channels with a random state known at both encoders:
//! exact pentagon evaluation for a given auxiliary scheme, and an exhaustive
//! search over quantized schemes.

mod bounds;
mod brute;
mod channel;
mod joint;
mod scheme;

pub use bounds::{macce_bounds, maccm_c_pentagon, maccm_nc_pentagon};
pub use brute::{
    brute_force_frontier, AuxCaps, SchemeSpace, MAX_ALPHABET, MAX_QUANTIZATION, MAX_SCHEMES,
};
pub use channel::{validate_channel, DmcState, Issue, ValidationReport};
pub use joint::{joint_distribution, mutual_information, JointDist, Var};
pub use scheme::AuxScheme;

//! Exact Casson-Walker-Lescop invariants of 3-manifolds given by rational
//! surgery on framed links in S^3.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate.

pub mod cli;
pub mod dedekind;
pub mod error;
pub mod lens;
pub mod lescop;
pub mod linalg;
pub mod link;
pub mod moves;

pub use dedekind::{dedekind_direct, dedekind_fast, sawtooth};
pub use error::{Error, Result};
pub use lens::{
    chain_to_lens, lens_lambda, lens_lambda_alt, tn_lens_condition, verify_sweeps,
    ChainPresentation, LensSpace, SweepReport,
};
pub use lescop::{
    h1_order, lescop_lambda, lk_c, path_sum, reduced_matrix, theta, theta_b, walker_lambda,
    PathSumCache,
};
pub use linalg::{
    det_exact, inertia, matrix_sign, signature, Inertia, RatMatrix, Rational, SymRatMatrix,
};
pub use link::{parse_link, FramedLink, SubsetIndex};
pub use moves::{
    a1_delta, crossing_matrix, cw_delta, lambda_delta, mirror_lambda, parse_path, path_delta,
    tn_path, CrossingStep, HomotopyPath,
};

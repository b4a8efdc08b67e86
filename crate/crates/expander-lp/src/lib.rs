//! LP decoding of expander codes, end to end and in exact arithmetic:
//! Tanner graphs with brute-force expansion certificates, q-matchings,
//! the dual-witness construction (error-set dilation, matching-derived
//! edge weights), a from-scratch simplex solver over rationals, the
//! fundamental-polytope LP decoder with a bit-flipping baseline, and an
//! experiment harness that reproduces the decoding radius
//! (3ε−2)/(2ε−1)·(⌊δn⌋−1) on desk-scale instances.

pub mod code_core;
mod combi;
pub mod decoders;
pub mod harness;
pub mod lp_solver;
pub mod matching;
pub mod ratio;
pub mod witness;

//! Exact tilt-stability computations on polarized threefolds.
//!
//! Classes are handled through their H-degrees `(e0, e1, e2, e3)`, all
//! arithmetic is over arbitrary-precision rationals, and the upper half plane
//! is parametrized by `(s, β)` with `s = α²` so that every wall is a rational
//! conic. The crate is `no_std` (it needs `alloc`); the `std` feature only
//! adds threaded candidate evaluation.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod chern;
mod error;
pub mod rational;
pub mod search;
pub mod variety;
pub mod walls;

pub use chern::{slope_cmp, ChernVector, Slope, SlopeOrdering, TiltPoint};
pub use error::Error;
pub use rational::{int, parse_rational, rat, Rational, Surd};
pub use search::{
    heart_bounds, heart_interval_on_wall, solve_e2_for_wall, verify_class, verify_counterexample, vertical_ray_stable,
    CandidateReport, Conclusion, E2Solutions, HeartInterval, VerificationReport, VerifyOptions,
    VerticalRayResult,
};
pub use variety::{DivisorClass, Lattice, TripleForm, Variety};
pub use walls::{point_on_wall, q_wall, wall_between, walls_nested, Nesting, WallLocus, WallShape};

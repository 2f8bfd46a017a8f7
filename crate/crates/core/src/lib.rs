//! Exact numerical intersection theory on threefolds: Chern characters, tilt
//! stability walls, the generalized Bogomolov–Gieseker inequality, and central
//! charges on point blow-ups.

pub mod blowup;
pub mod bmt;
pub mod chern;
pub mod error;
pub mod rational;
pub mod ring;
pub mod tilt;

pub use blowup::{
    bridgeland_slope, central_charge, make_blowup_geometry, transport_through_blowup, BlowupGeometry,
    BridgelandSlope, ComplexRational, FactorThree,
};
pub use bmt::{
    bmt_defect, check_divisor_counterexample, contraction_margin, contraction_scenario, minimal_m,
    positivity_check, weierstrass_margin, weierstrass_scenario, weierstrass_threshold_ok, CounterexampleReport,
    Positivity, Scenario,
};
pub use chern::{
    ch_algebra_b, ch_exceptional_twist, ch_ideal_point, ch_pushforward_minus_two_exceptional, ch_skyscraper,
    ch_structure_sheaf, ch_structure_sheaf_divisor, exp_divisor, multiply, twist, ChernCharacter,
};
pub use error::{Error, Result};
pub use rational::{approx_decimal, format_rational, int, parse_rational, rat, sign, Rational, Slope};
pub use ring::{
    blow_up_point, is_del_pezzo_degree, make_blowup_ring, make_contraction_ring, make_weierstrass_ring, BlowupRing,
    CurveClass, DivisorClass, IntersectionRing, RingMorphism, ValidationReport, Violation,
};
pub use tilt::{
    discriminant, enumerate_candidate_walls, nu_zero_alpha_sq, radius_bound_higher_rank, slope_mu, slope_nu,
    to_lambda, vertical_wall, wall, CandidateWall, Caps, LambdaVector, NuZero, Region, StabilityParams, Wall,
    WallEquation,
};

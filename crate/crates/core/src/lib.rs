//! Root norms of trinomials `z^(s+t) + p·z^t + q`.
//!
//! Counting roots below a radius without solving, classifying which gaps
//! between consecutive root norms are nonempty, the trochoids and ray fans that
//! organize coefficient space, the closed-form discriminant, and torus-knot
//! sampling. A simultaneous-iteration root finder serves as the reference
//! oracle for all of it.

pub mod bohl;
pub mod discriminant;
pub mod egervary;
pub mod error;
pub mod fan;
pub mod rootfinder;
pub mod topology;
pub mod trochoid;
pub mod types;
pub mod verify;

pub use bohl::{
    bohl_interval, bohl_triangle, count_roots_below, lopsided_at, BohlInterval, CountMethod,
    Degeneracy, Dominant, LopsidedResult, RootCountResult, TriangleData,
};
pub use discriminant::{
    amoeba_line, coamoeba_samples, discriminant_slice_points, discriminant_value, has_double_root,
    AmoebaLine, DiscriminantValue,
};
pub use egervary::{equivalent, field_residual, polytopes, EquivalenceVerdict, PolytopePair, SignBranch};
pub use error::{Error, Result};
pub use fan::{
    build_fan, classify_uj, critical_radius, double_root_norm, fan_coordinate, fan_membership,
    same_norm_pair_exists, Fan, FanMembership, Parity, SameNormPair, UjMembership,
};
pub use rootfinder::{
    complement_components, find_roots, norm_spectrum, ComplementComponent, NormSpectrum, RootSet,
    SolverConfig,
};
pub use topology::{
    gamma_path, group_act, knot_path, retract_to_unit_torus, winding_numbers, KnotPath, TorusPoint,
    WindingNumbers,
};
pub use trochoid::{
    curve_point, epitrochoid_params, hypotrochoid_params, sample_curve, singularities, CurveKind,
    CurveSample, SingularityKind, SingularityReport, TrochoidParams,
};
pub use types::{
    make_trinomial, reduce_angle, reduce_support, Angle, ComplexValue, Support, Tolerances,
    Trinomial, MAX_DEGREE,
};
pub use verify::{run_verify, Fault, VerifyConfig, VerifyReport};

//! Bigraded form calculus, superconnection curvature, Chern–Simons descent
//! and the two worked index computations.

mod curvature;
mod descent;
mod examples;
mod forms;
mod grid;

pub use curvature::{
    brute_force_curvature, chern_simons, chern_simons_point, supercurvature, transition_residual, SuperConn,
    Supercurvature, CS_NODES,
};
pub use descent::{
    cech_pairing, partition_connection, partition_connection_at, partition_curvature_at, sphere_overlap_samples,
    sphere_samples, ChartComplex, Face, LocalChart, PointFn, TransitionFn,
};
pub use examples::*;
pub use forms::{delta_apply, increasing_tuples, sort_with_sign, BigradedForm, PointForm, ScalarForm};
pub use grid::{gauss_legendre, pairwise_sum, Axis, AxisKind, BaseGrid};

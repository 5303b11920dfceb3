//! Gauge theory on the circle: fields, gauge maps, the connection form on
//! the space of fields, a two-chart moduli model and loop families in SU(2).

mod connection;
mod field;
mod group;
mod json;
mod loops;
mod moduli;

pub use connection::{
    adjoint_action, as_connection_theta, covariant_derivative, fd4_derivative, gauge_action,
    horizontal_projection, SOLVE_TOL,
};
pub use field::{pauli, project, Algebra, GaugeField, ALGEBRA_TOL};
pub use group::{exp_field, Group, GroupMap, GROUP_TOL};
pub use json::GridJson;
pub use loops::{loop_su2, mat2_adjoint, mat2_mul, mat2_to_cmat, LoopFamily, LoopProfile, LoopVariant, Mat2};
pub use moduli::{Chart, U1ModuliModel};

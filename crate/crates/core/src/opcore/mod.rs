//! Truncated operator algebra on `L²(S¹, ℂ^d)`.

mod basic;
mod context;
mod decay;
mod expm;
mod fourier;
mod index;
mod op;

pub use basic::{
    conditional_supertrace, dirac_is_invertible, make_dirac, make_grading, make_polarization,
    schatten_from_singular_values, schatten_norm,
};
pub use context::{ModeConvention, TruncationContext};
pub use decay::{corner_profile, ls_slope, DecayProfile, FIT_R_MIN};
pub use expm::{expm_mat, matrix_exp};
pub use fourier::{grid_phi, mult_op, GridFunction, MatrixSymbol, Multiplier, TRIM_TOL};
pub use index::{
    approx_sign, approx_sign_scalar, fredholm_index, kernel_dimension, KERNEL_GAP,
    KERNEL_THRESHOLD,
};
pub use op::{op_norm_of, CMat, TruncOp, FLAG_TOL};

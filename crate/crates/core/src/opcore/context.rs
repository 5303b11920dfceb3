use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How Fourier modes are labelled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModeConvention {
    /// Modes `k ∈ ℤ + ½`, `|k| ≤ N − ½`. The free Dirac operator is invertible.
    HalfInteger,
    /// Modes `k ∈ ℤ`, `|k| ≤ N`, with `sign(0) = +1`.
    IntegerNonnegPlus,
}

/// A finite Fourier truncation of `L²(S¹, ℂ^d)`.
///
/// Basis vectors are ordered with modes ascending and the internal index
/// fastest: basis index `i = mode_index * d + a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncationContext {
    cutoff: usize,
    internal_dim: usize,
    convention: ModeConvention,
    graded: bool,
}

impl TruncationContext {
    pub fn new(cutoff: usize, internal_dim: usize, convention: ModeConvention) -> Result<Self> {
        if cutoff == 0 || internal_dim == 0 {
            return Err(Error::InvalidParameter(
                "cutoff and internal dimension must be positive".into(),
            ));
        }
        Ok(Self { cutoff, internal_dim, convention, graded: false })
    }

    pub fn half_integer(cutoff: usize, internal_dim: usize) -> Result<Self> {
        Self::new(cutoff, internal_dim, ModeConvention::HalfInteger)
    }

    pub fn integer(cutoff: usize, internal_dim: usize) -> Result<Self> {
        Self::new(cutoff, internal_dim, ModeConvention::IntegerNonnegPlus)
    }

    /// Installs the grading `Γ = 1 ⊗ diag(1,…,1,−1,…,−1)` on the internal
    /// components. Requires an even internal dimension.
    pub fn with_grading(mut self) -> Result<Self> {
        if self.internal_dim % 2 != 0 {
            return Err(Error::InvalidParameter(
                "graded context needs an even internal dimension".into(),
            ));
        }
        self.graded = true;
        Ok(self)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn internal_dim(&self) -> usize {
        self.internal_dim
    }

    pub fn convention(&self) -> ModeConvention {
        self.convention
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn num_modes(&self) -> usize {
        match self.convention {
            ModeConvention::HalfInteger => 2 * self.cutoff,
            ModeConvention::IntegerNonnegPlus => 2 * self.cutoff + 1,
        }
    }

    /// Number of basis vectors.
    pub fn dim(&self) -> usize {
        self.num_modes() * self.internal_dim
    }

    /// Value of the Fourier mode with the given mode index.
    pub fn mode_value(&self, mode_index: usize) -> f64 {
        let shifted = mode_index as f64 - self.cutoff as f64;
        match self.convention {
            ModeConvention::HalfInteger => shifted + 0.5,
            ModeConvention::IntegerNonnegPlus => shifted,
        }
    }

    /// `sign(k)` with `sign(0) = +1`.
    pub fn mode_sign(&self, mode_index: usize) -> f64 {
        if self.mode_value(mode_index) >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn basis_index(&self, mode_index: usize, component: usize) -> usize {
        mode_index * self.internal_dim + component
    }

    pub fn mode_of(&self, basis: usize) -> usize {
        basis / self.internal_dim
    }

    pub fn component_of(&self, basis: usize) -> usize {
        basis % self.internal_dim
    }

    /// Grading eigenvalue of an internal component (first half `+1`).
    pub fn grading_sign(&self, component: usize) -> f64 {
        if component < self.internal_dim / 2 {
            1.0
        } else {
            -1.0
        }
    }

    /// Whether a mode lies in the interior window of half-width `window`.
    ///
    /// The window of width `W` keeps exactly the modes a context of cutoff `W`
    /// would keep.
    pub fn mode_in_window(&self, mode_index: usize, window: usize) -> bool {
        let k = self.mode_value(mode_index).abs();
        match self.convention {
            ModeConvention::HalfInteger => k <= window as f64 - 0.5,
            ModeConvention::IntegerNonnegPlus => k <= window as f64,
        }
    }

    /// Basis indices of the interior window, in basis order.
    pub fn window_basis(&self, window: usize) -> Result<Vec<usize>> {
        if window > self.cutoff {
            return Err(Error::WindowTooLarge { window, limit: self.cutoff });
        }
        Ok((0..self.dim())
            .filter(|&i| self.mode_in_window(self.mode_of(i), window))
            .collect())
    }

    /// Same truncation with a different cutoff.
    pub fn with_cutoff(&self, cutoff: usize) -> Result<Self> {
        let mut ctx = Self::new(cutoff, self.internal_dim, self.convention)?;
        ctx.graded = self.graded;
        Ok(ctx)
    }
}

//! Thresholds shared by both scaling algorithms.

use crate::graph::UncapInstance;
use crate::rational::{from_big, int, Rational};
use num_bigint::BigInt;

/// Factor applied to Δ after each contraction.
pub const CONTRACTION_FACTOR: i64 = 16;

/// Size-dependent constants. `nodes`, `arcs` and `bound` always describe the
/// instance the run started from; per-node degrees are taken from whichever
/// instance is current.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constants {
    pub nodes: usize,
    pub arcs: usize,
    pub bound: BigInt,
}

impl Constants {
    pub fn for_instance(inst: &UncapInstance) -> Self {
        Constants { nodes: inst.node_count(), arcs: inst.arc_count(), bound: inst.bound().clone() }
    }

    /// Excess level below which a node joins N.
    pub fn lo(degree: usize) -> Rational {
        int(degree as i64 + 1)
    }

    /// Excess level a node of T0 must keep.
    pub fn mid(degree: usize) -> Rational {
        int(degree as i64 + 2)
    }

    /// Excess level at which a node enters T0.
    pub fn hi(degree: usize) -> Rational {
        int(4 * (degree as i64 + 2))
    }

    pub fn abundant_factor(&self) -> Rational {
        int(17 * self.arcs as i64)
    }

    pub fn delta_start_bound(&self) -> Rational {
        let b = from_big(self.bound.clone());
        int(self.nodes as i64) * &b * &b
    }

    pub fn termination_threshold(&self) -> Rational {
        let b = from_big(self.bound.clone());
        (int(9 * self.arcs as i64 + 8 * self.nodes as i64) * &b * &b * &b).recip()
    }

    pub fn filtration_divisor(&self, kappa: u32) -> Rational {
        int(self.nodes as i64) * num_traits::pow(int(CONTRACTION_FACTOR), kappa as usize)
    }

    /// `32 m n`, the level of `|b^mu_i| / Δ` that forces an abundant arc.
    pub fn gamma_scale(&self) -> Rational {
        int(32 * self.arcs as i64 * self.nodes as i64)
    }
}

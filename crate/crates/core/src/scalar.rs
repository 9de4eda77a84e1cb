//! Numeric traits the algorithms are generic over.
//!
//! Combinatorial quantities (vertex ids, degrees, multiplicities) are plain
//! `usize`. Anything that is a *measured* quantity is generic: flow
//! capacities over [`Capacity`], exact matching counts over [`ExactCount`],
//! and densities / real-valued bounds over [`Real`].

use std::fmt::Debug;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, PrimInt, Signed, ToPrimitive};

/// Integer type usable as an arc capacity in a flow network.
pub trait Capacity: PrimInt + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + Sum {}

impl<T> Capacity for T where T: PrimInt + FromPrimitive + ToPrimitive + Debug + Default + Send + Sync + Sum {}

/// Signed integer type wide enough to accumulate an inclusion-exclusion sum.
pub trait ExactCount: PrimInt + Signed + FromPrimitive + ToPrimitive + Debug + Send + Sync {}

impl<T> ExactCount for T where T: PrimInt + Signed + FromPrimitive + ToPrimitive + Debug + Send + Sync {}

/// Floating point type for densities, tolerances and log-space bounds.
pub trait Real: Float + FromPrimitive + Debug + Default + Send + Sync + Sum {
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize is representable in every float type")
    }
}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Default + Send + Sync + Sum {}

/// Neumaier-compensated sum. Log-factorial sums over a few thousand terms
/// keep ~1e-15 relative error with it, instead of drifting with the term count.
pub fn compensated_sum<F: Real>(terms: impl IntoIterator<Item = F>) -> F {
    let mut sum = F::zero();
    let mut comp = F::zero();
    for t in terms {
        let next = sum + t;
        if sum.abs() >= t.abs() {
            comp = comp + ((sum - next) + t);
        } else {
            comp = comp + ((t - next) + sum);
        }
        sum = next;
    }
    sum + comp
}

/// `ln(k!)` by direct compensated summation; exact enough for `k` in the
/// thousands, which is all the permanent bounds ever need.
pub fn ln_factorial<F: Real>(k: usize) -> F {
    compensated_sum((2..=k).map(|i| F::from_usize_lossy(i).ln()))
}

/// `floor(numerator / (denominator * quantum))` computed without the float
/// rounding that would turn `0.6 / 0.3` into `1.9999999`.
pub fn floor_ratio(numerator: usize, denominator: usize, quantum: f64) -> usize {
    if denominator == 0 || quantum <= 0.0 {
        return 0;
    }
    let q = numerator as f64 / (denominator as f64 * quantum);
    let rounded = q.round();
    if (q - rounded).abs() < 1e-9 {
        rounded as usize
    } else {
        q.floor() as usize
    }
}

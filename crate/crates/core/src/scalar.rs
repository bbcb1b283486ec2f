//! Numeric abstraction for estimator outputs.
//!
//! Counting is done in `u64`; only the final scaling by the sampling
//! probabilities happens in a caller-chosen scalar type `S`. `f64` is the
//! default, `f32` works for compact reports, and `Ratio<i128>` gives exact
//! rational estimates when the probabilities are themselves rational.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Scalar:
    Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in scalar type")
    }

    fn approx_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static
{
}

/// Exact rational scalar.
pub type Rational = Ratio<i128>;

/// Converts a probability given as a decimal into a rational with at most
/// 10^12 as denominator.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    const DEN: i128 = 1_000_000_000_000;
    if !x.is_finite() {
        return None;
    }
    Some(Rational::new((x * DEN as f64).round() as i128, DEN))
}

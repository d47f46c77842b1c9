//! Coefficient rings: exact Laurent polynomials in (s, a) over Z and their
//! localization at the q-numbers and skein eigenvalues.

mod gamma;
mod laurent;
mod poly;
mod rational;

pub use gamma::parse_scalar_expr;
pub use laurent::LaurentSA;
pub use rational::{CoeffError, RationalSA};

use num_traits::{One, Zero};
use std::ops::Neg;

/// Scalar type the series and quantum-torus containers are generic over.
///
/// Implemented by [`LaurentSA`] (polynomial coefficients) and [`RationalSA`]
/// (localized coefficients); the concrete aliases live at the crate root.
pub trait Coeff:
    Clone + PartialEq + std::fmt::Debug + Zero + One + Neg<Output = Self> + serde::Serialize
{
    /// Multiply by `s^k`; `s = q^{1/2}` is invertible in every coefficient ring here.
    fn mul_s_pow(&self, k: i64) -> Self;

    /// Multiplicative inverse when one exists in the ring.
    fn try_invert(&self) -> Option<Self>;
}

impl Coeff for LaurentSA {
    fn mul_s_pow(&self, k: i64) -> Self {
        LaurentSA::mul_s_pow(self, k)
    }
    fn try_invert(&self) -> Option<Self> {
        self.invert_unit()
    }
}

impl Coeff for RationalSA {
    fn mul_s_pow(&self, k: i64) -> Self {
        RationalSA::mul_s_pow(self, k)
    }
    fn try_invert(&self) -> Option<Self> {
        self.invert().ok()
    }
}

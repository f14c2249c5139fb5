//! First- and second-order Melnikov functions for perturbations of the
//! harmonic center `H = (x^2 + y^2)/2`.
//!
//! Orbits are parameterized as `x = sqrt(2h) cos t`, `y = -sqrt(2h) sin t`,
//! which is the Hamiltonian direction `x' = H_y`, `y' = -H_x`.

mod first;
mod roots;
mod second;
mod trig;
pub mod wallis;

pub use first::{b_coeffs, closed_form_coeff, han_jacobian, melnikov1, melnikov1_closed_form};
pub use roots::isolate_real_roots;
pub use second::{decompose_form, francoise_decompose, line_integral_dx, melnikov2, FrancoiseDecomposition};
pub use trig::orbit_integral;
pub use wallis::wallis;

use crate::algebra::HPiPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct MelnikovResult {
    pub m: HPiPoly,
    pub order: u8,
    /// Inherited from the rescaling: the function is computed for the
    /// time-reversed field.
    pub time_reversed: bool,
}

impl MelnikovResult {
    pub(crate) fn new(m: HPiPoly, order: u8, time_reversed: bool) -> Result<Self> {
        if !m.coeff(0).is_zero() {
            return Err(Error::Internal("Melnikov function with nonzero value at h = 0".into()));
        }
        Ok(MelnikovResult {
            m,
            order,
            time_reversed,
        })
    }

    /// Sign relating `M` to the displacement of the original system on the
    /// positive x-axis: `d(x) ~ sign * eps^order * M(x^2/2) / x`.
    pub fn displacement_sign(&self) -> i32 {
        if self.time_reversed {
            -1
        } else {
            1
        }
    }

    pub fn convention(&self) -> serde_json::Value {
        serde_json::json!({
            "parameterization": "x = sqrt(2h) cos t, y = -sqrt(2h) sin t",
            "time_reversed": self.time_reversed,
            "displacement_sign": self.displacement_sign(),
        })
    }
}

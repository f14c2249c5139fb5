//! Floating-point verification: integration, return maps, cycle search and
//! quadrature oracles.

mod dopri;
mod poincare;
mod quadrature;
mod system;

pub use dopri::{check_tolerance, integrate, integrate_within, Step, Trajectory, BLOWUP_NORM};
pub use poincare::{
    displacement, find_cycles, poincare_return, poincare_return_with, scan, CycleEstimate, CycleSearch, Return,
    Stability, RETURN_T_MAX,
};
pub use quadrature::{integrate_adaptive, melnikov_quadrature};
pub use system::{float_point, FloatPoint, NumericPoly, NumericSystem};

/// Default integrator tolerance, overridden by `CYCLELAB_TOL`.
pub const DEFAULT_TOL: f64 = 1e-10;

pub fn default_tolerance() -> crate::Result<f64> {
    match std::env::var("CYCLELAB_TOL") {
        Ok(v) => {
            let t: f64 = v
                .trim()
                .parse()
                .map_err(|_| crate::Error::InvalidRange(format!("CYCLELAB_TOL = `{v}` is not a number")))?;
            check_tolerance(t)?;
            Ok(t)
        }
        Err(_) => Ok(DEFAULT_TOL),
    }
}

use crate::algebra::univariate::{self, RootInterval, UPoly};
use crate::algebra::{HPiPoly, Point, Rat};
use crate::error::Result;

/// Real roots in `(lo, hi]` of `M` with parameters bound at `point` and the
/// pi factor divided out. `hi = None` means +infinity.
pub fn isolate_real_roots(m: &HPiPoly, point: &Point, lo: &Rat, hi: Option<&Rat>) -> Result<Vec<RootInterval>> {
    let coeffs = m.rational_coeffs_at(point)?;
    Ok(univariate::isolate_real_roots(&UPoly::new(coeffs), lo, hi))
}

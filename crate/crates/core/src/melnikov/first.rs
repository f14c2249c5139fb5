use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::trig::orbit_integral;
use super::MelnikovResult;
use crate::algebra::linalg::RatMatrix;
use crate::algebra::rat::factorial;
use crate::algebra::{int, HPiPoly, ParamPoly, Point, Rat, Symbols};
use crate::error::{Error, Result};
use crate::sysdef::PerturbedSystem;

/// `M_1(h) = int_0^{2 pi} (f1 H_x + g1 H_y) dt` along `H = h`.
pub fn melnikov1(ps: &PerturbedSystem) -> Result<MelnikovResult> {
    let s = &ps.symbols;
    let integrand = &ps.f1.mul_monomial(1, 0) + &ps.g1.mul_monomial(0, 1);
    let m = orbit_integral(&integrand.in_universe(s))?;
    MelnikovResult::new(m, 1, ps.time_reversed)
}

/// `c_ij = (2i)! (2j)! (2j+1) / (2^{i+j-1} i! j! (i+j+1)!)`.
pub fn closed_form_coeff(i: u32, j: u32) -> Rat {
    let num = factorial(2 * i) * factorial(2 * j) * BigInt::from(2 * j + 1) * BigInt::from(2);
    let den = BigInt::from(2).pow(i + j) * factorial(i) * factorial(j) * factorial(i + j + 1);
    Rat::new(num, den)
}

/// `h (2h - 1) (sum_{i+j<=n} c_ij b_{2i,2j} h^{i+j}) pi` for the odd family
/// rescaled with time reversal. Keys are `(2i, 2j)`.
pub fn melnikov1_closed_form(n: u32, b: &BTreeMap<(u32, u32), ParamPoly>) -> Result<HPiPoly> {
    let symbols = b.values().fold(Symbols::empty(), |s, c| s.union(c.symbols()));
    let mut inner = HPiPoly::zero(&symbols, 1);
    for (&(e1, e2), c) in b {
        if e1 % 2 == 1 || e2 % 2 == 1 || e1 / 2 + e2 / 2 > n {
            return Err(Error::BadIndex(e1, e2));
        }
        let (i, j) = (e1 / 2, e2 / 2);
        inner.add_coeff(i + j, c.scale(&closed_form_coeff(i, j)));
    }
    let factor = HPiPoly::from_coeffs(
        &Symbols::empty(),
        0,
        [(2, ParamPoly::from_rat(int(2))), (1, ParamPoly::from_rat(int(-1)))],
    );
    Ok(factor.mul(&inner))
}

/// `M = h sum_s b_s h^s`; returns `b_0, b_1, ..` (pi factor kept aside).
pub fn b_coeffs(m: &HPiPoly) -> Result<Vec<ParamPoly>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    if !m.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    Ok((1..=m.degree()).map(|k| m.coeff(k)).collect())
}

/// Determinant of `d(b_0..b_{k-1}) / d(delta_1..delta_k)` at `point`.
pub fn han_jacobian(b: &[ParamPoly], delta: &[&str], point: &Point) -> Result<Rat> {
    let k = delta.len();
    if k == 0 || k > b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{k} parameters for {} coefficients",
            b.len()
        )));
    }
    let mut rows = Vec::with_capacity(k);
    for bi in &b[..k] {
        let mut row = Vec::with_capacity(k);
        for d in delta {
            let der = if bi.symbols().contains(d) {
                bi.derivative(d)?
            } else {
                ParamPoly::zero(bi.symbols())
            };
            row.push(der.eval(point)?);
        }
        rows.push(row);
    }
    Ok(RatMatrix::from_rows(rows).determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn closed_form_small_coefficients() {
        assert_eq!(closed_form_coeff(0, 0), int(2));
        assert_eq!(closed_form_coeff(1, 0), int(1));
        assert_eq!(closed_form_coeff(0, 1), int(3));
        assert_eq!(closed_form_coeff(1, 1), int(1));
        assert_eq!(closed_form_coeff(0, 2), int(5));
        assert_eq!(closed_form_coeff(2, 1), rat(3, 4));
        assert_eq!(closed_form_coeff(0, 3), rat(35, 4));
    }

    #[test]
    fn b_coefficients_of_product() {
        let s = Symbols::new(["c"]);
        let c = ParamPoly::var(&s, "c").unwrap();
        let m = HPiPoly::from_coeffs(&s, 1, [(2, c.scale(&int(4))), (1, c.scale(&int(-2)))]);
        let b = b_coeffs(&m).unwrap();
        assert_eq!(b, vec![c.scale(&int(-2)), c.scale(&int(4))]);
        let mut pt = Point::new();
        pt.insert("c".into(), int(5));
        assert_eq!(han_jacobian(&b, &["c"], &pt).unwrap(), int(-2));
        assert!(matches!(han_jacobian(&b, &[], &pt), Err(Error::DimensionMismatch(_))));
        let with_const = m.add(&HPiPoly::from_coeffs(&s, 1, [(0, c)])).unwrap();
        assert_eq!(b_coeffs(&with_const), Err(Error::NonzeroConstantTerm));
    }
}

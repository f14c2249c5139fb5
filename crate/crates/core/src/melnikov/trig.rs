//! Polynomials in `cos t`, `sin t` and `s = sqrt(2h)` along the orbit
//! `x = s cos t`, `y = -s sin t` of the harmonic center.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::wallis::wallis;
use crate::algebra::{HPiPoly, ParamPoly, PlanarPoly, Rat, Symbols};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub(crate) struct TrigPoly {
    /// `(cos power, sin power, s power)`.
    terms: BTreeMap<(u32, u32, u32), ParamPoly>,
}

impl TrigPoly {
    /// Restriction of a phase polynomial to the orbit.
    pub fn on_orbit(p: &PlanarPoly) -> TrigPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            let (i, j) = (m.x(), m.y());
            let c = if j % 2 == 1 { -c } else { c.clone() };
            terms.insert((i, j, i + j), c);
        }
        TrigPoly { terms }
    }

    /// `int_0^{2 pi} dt`, as a polynomial in `h` times pi.
    pub fn integrate(&self, symbols: &Symbols) -> Result<HPiPoly> {
        let mut out = HPiPoly::zero(symbols, 1);
        let mut half_residue = false;
        for (&(a, b, s), c) in &self.terms {
            let w = wallis(a, b);
            if w.is_zero() {
                continue;
            }
            if s % 2 == 1 {
                half_residue = true;
                continue;
            }
            let k = s / 2;
            let factor = w * Rat::from_integer(BigInt::from(2).pow(k));
            out.add_coeff(k, c.scale(&factor));
        }
        if half_residue {
            return Err(Error::HalfPowerResidue);
        }
        Ok(out)
    }
}

/// `int_0^{2 pi} p(x(t), y(t)) dt` along the level `H = h`.
pub fn orbit_integral(p: &PlanarPoly) -> Result<HPiPoly> {
    TrigPoly::on_orbit(p).integrate(p.symbols())
}

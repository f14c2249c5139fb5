use super::first::melnikov1;
use super::trig::orbit_integral;
use super::MelnikovResult;
use crate::algebra::linalg::{solve_poly_rhs, RatMatrix};
use crate::algebra::{int, HPiPoly, PlanarPoly, Symbols};
use crate::error::{Error, Result};
use crate::sysdef::PerturbedSystem;

/// `omega_1 = dS + R dH` with the residual one-form `(dx, dy)` parts.
#[derive(Clone, Debug, PartialEq)]
pub struct FrancoiseDecomposition {
    pub s: PlanarPoly,
    pub r: PlanarPoly,
    pub residual: (PlanarPoly, PlanarPoly),
    /// Degree of the ansatz that succeeded.
    pub ansatz_degree: u32,
}

impl FrancoiseDecomposition {
    pub fn is_exact(&self) -> bool {
        self.residual.0.is_zero() && self.residual.1.is_zero()
    }
}

fn monomials_up_to(lo: u32, hi: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for d in lo..=hi {
        for j in 0..=d {
            out.push((d - j, j));
        }
    }
    out
}

/// Solves `a dx + b dy = dS + R (x dx + y dy)` with `deg S <= n + 1`,
/// `deg R <= n`.
fn try_decompose(a: &PlanarPoly, b: &PlanarPoly, n: u32, symbols: &Symbols) -> Option<(PlanarPoly, PlanarPoly)> {
    let s_monos = monomials_up_to(1, n + 1);
    let r_monos = monomials_up_to(0, n);
    let eq_monos = monomials_up_to(0, n + 1);
    let cols = s_monos.len() + r_monos.len();
    let rows = 2 * eq_monos.len();
    let row_of = |p: u32, q: u32| eq_monos.iter().position(|&m| m == (p, q));
    let mut m = RatMatrix::zeros(rows, cols);
    for (c, &(i, j)) in s_monos.iter().enumerate() {
        if i > 0 {
            let r = row_of(i - 1, j).expect("in range");
            m.set(r, c, int(i as i64));
        }
        if j > 0 {
            let r = row_of(i, j - 1).expect("in range");
            m.set(eq_monos.len() + r, c, int(j as i64));
        }
    }
    for (k, &(i, j)) in r_monos.iter().enumerate() {
        let c = s_monos.len() + k;
        let r = row_of(i + 1, j).expect("in range");
        m.set(r, c, int(1));
        let r = row_of(i, j + 1).expect("in range");
        m.set(eq_monos.len() + r, c, int(1));
    }
    let mut rhs = Vec::with_capacity(rows);
    for &(p, q) in &eq_monos {
        rhs.push(a.coeff(p, q).in_universe(symbols));
    }
    for &(p, q) in &eq_monos {
        rhs.push(b.coeff(p, q).in_universe(symbols));
    }
    let sol = solve_poly_rhs(&m, &rhs);
    if !sol.inconsistencies.is_empty() {
        return None;
    }
    let s = PlanarPoly::from_terms(
        symbols,
        s_monos.iter().zip(&sol.values).map(|(&(i, j), c)| ((i, j), c.clone())),
    );
    let r = PlanarPoly::from_terms(
        symbols,
        r_monos
            .iter()
            .zip(&sol.values[s_monos.len()..])
            .map(|(&(i, j), c)| ((i, j), c.clone())),
    );
    Some((s, r))
}

/// Writes `omega_1 = g1 dx - f1 dy` as `dS + R dH`, escalating the ansatz
/// degree up to `deg(omega_1) + 4`. Requires `M_1 = 0`.
pub fn francoise_decompose(ps: &PerturbedSystem) -> Result<FrancoiseDecomposition> {
    let m1 = melnikov1(ps)?;
    if !m1.m.is_zero() {
        return Err(Error::FirstOrderNotZero(m1.m.to_string()));
    }
    decompose_form(&ps.g1, &-&ps.f1, &ps.symbols)
}

/// Decomposes an arbitrary one-form `a dx + b dy` whose integral over every
/// level circle vanishes.
pub fn decompose_form(a: &PlanarPoly, b: &PlanarPoly, symbols: &Symbols) -> Result<FrancoiseDecomposition> {
    let d = a.total_degree().max(b.total_degree());
    let x = PlanarPoly::x(symbols);
    let y = PlanarPoly::y(symbols);
    for n in d..=d + 4 {
        if let Some((s, r)) = try_decompose(a, b, n, symbols) {
            let res_dx = &(a - &s.dx()) - &(&r * &x);
            let res_dy = &(b - &s.dy()) - &(&r * &y);
            let out = FrancoiseDecomposition {
                s,
                r,
                residual: (res_dx, res_dy),
                ansatz_degree: n,
            };
            if !out.is_exact() {
                return Err(Error::Internal("decomposition residual is not zero".into()));
            }
            return Ok(out);
        }
    }
    Err(Error::DecompositionNotFound(d as usize + 4))
}

/// `M_2(h) = oint_{H=h} R omega_1`.
pub fn melnikov2(ps: &PerturbedSystem) -> Result<(MelnikovResult, FrancoiseDecomposition)> {
    let dec = francoise_decompose(ps)?;
    let along = &ps.f1.mul_monomial(1, 0) + &ps.g1.mul_monomial(0, 1);
    let m = orbit_integral(&(&dec.r * &along).in_universe(&ps.symbols))?;
    Ok((MelnikovResult::new(m, 2, ps.time_reversed)?, dec))
}

/// `oint_{H=h} S y^{-k} dx = int_0^{2 pi} S y^{1-k} dt` for `k` in {0, 1}.
pub fn line_integral_dx(s: &PlanarPoly, y_pole_order: u32) -> Result<HPiPoly> {
    match y_pole_order {
        0 => orbit_integral(&s.mul_monomial(0, 1)),
        1 => orbit_integral(s),
        k => Err(Error::UnsupportedPoleOrder(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn exact_forms_decompose() {
        let s = Symbols::empty();
        let x = PlanarPoly::x(&s);
        let y = PlanarPoly::y(&s);
        let dec = decompose_form(&x, &PlanarPoly::zero(&s), &s).unwrap();
        assert_eq!(dec.s, (&x * &x).scale_rat(&rat(1, 2)));
        assert!(dec.r.is_zero());
        let dec = decompose_form(&x, &y, &s).unwrap();
        assert!(dec.is_exact());
    }

    #[test]
    fn area_form_does_not_decompose() {
        let s = Symbols::empty();
        let y = PlanarPoly::y(&s);
        assert_eq!(
            decompose_form(&y, &PlanarPoly::zero(&s), &s).unwrap_err(),
            Error::DecompositionNotFound(5)
        );
    }

    #[test]
    fn line_integrals() {
        let s = Symbols::empty();
        let y = PlanarPoly::y(&s);
        let x = PlanarPoly::x(&s);
        assert_eq!(line_integral_dx(&y, 0).unwrap().to_string(), "pi*(2*h)");
        assert!(line_integral_dx(&x, 0).unwrap().is_zero());
        assert_eq!(
            line_integral_dx(&PlanarPoly::from_rat(&s, int(1)), 1)
                .unwrap()
                .to_string(),
            "pi*(2)"
        );
        assert_eq!(line_integral_dx(&x, 2).unwrap_err(), Error::UnsupportedPoleOrder(2));
    }
}

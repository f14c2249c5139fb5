use super::PlanarSystem;
use crate::algebra::{rat, ParamPoly, PlanarPoly, Symbols};
use crate::error::{Error, Result};

/// `x' = H_y + eps f1`, `y' = -H_x + eps g1` with `H = (x^2 + y^2)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbedSystem {
    pub h: PlanarPoly,
    pub f1: PlanarPoly,
    pub g1: PlanarPoly,
    pub eps_params: Vec<String>,
    /// Whether time was reversed to reach the Hamiltonian orientation.
    pub time_reversed: bool,
    /// Whether `f1` and `g1` vanish at the origin.
    pub origin_fixed: bool,
    pub symbols: Symbols,
}

impl PerturbedSystem {
    /// Builds a perturbed harmonic center from given first-order terms.
    pub fn from_parts(f1: PlanarPoly, g1: PlanarPoly, time_reversed: bool) -> Self {
        let symbols = f1.symbols().union(g1.symbols());
        let f1 = f1.in_universe(&symbols);
        let g1 = g1.in_universe(&symbols);
        let origin_fixed = f1.coeff(0, 0).is_zero() && g1.coeff(0, 0).is_zero();
        PerturbedSystem {
            h: harmonic(&symbols),
            f1,
            g1,
            eps_params: Vec::new(),
            time_reversed,
            origin_fixed,
            symbols,
        }
    }

    /// `dH` orientation field plus the perturbation at `eps = 1`, with the
    /// time reversal undone.
    pub fn reassemble(&self) -> PlanarSystem {
        let s = &self.symbols;
        let p = &PlanarPoly::y(s) + &self.f1;
        let q = &-PlanarPoly::x(s) + &self.g1;
        let (p, q) = if self.time_reversed { (-p, -q) } else { (p, q) };
        PlanarSystem::new(p, q, s.clone())
    }

    /// `omega_1 = g1 dx - f1 dy` as `(dx, dy)` coefficients.
    pub fn omega1(&self) -> (PlanarPoly, PlanarPoly) {
        (self.g1.clone(), -&self.f1)
    }
}

fn harmonic(s: &Symbols) -> PlanarPoly {
    let x = PlanarPoly::x(s);
    let y = PlanarPoly::y(s);
    (&(&x * &x) + &(&y * &y)).scale_rat(&rat(1, 2))
}

/// Splits a coefficient into its parts of degree 0 and 1 in the chosen
/// parameters; a term of higher degree is returned as the error.
fn split(c: &ParamPoly, idx: &[usize]) -> std::result::Result<(ParamPoly, ParamPoly), ParamPoly> {
    let s = c.symbols().clone();
    let mut p0 = ParamPoly::zero(&s);
    let mut p1 = ParamPoly::zero(&s);
    for (m, v) in c.terms() {
        let d: u32 = idx.iter().map(|&i| m.exp(i) as u32).sum();
        let t = ParamPoly::from_terms(&s, [(m.clone(), v.clone())]);
        match d {
            0 => p0 = &p0 + &t,
            1 => p1 = &p1 + &t,
            _ => return Err(t),
        }
    }
    Ok((p0, p1))
}

fn split_poly(p: &PlanarPoly, idx: &[usize]) -> Result<(PlanarPoly, PlanarPoly)> {
    let s = p.symbols().clone();
    let mut p0 = PlanarPoly::zero(&s);
    let mut p1 = PlanarPoly::zero(&s);
    for (m, c) in p.terms() {
        let (c0, c1) =
            split(c, idx).map_err(|t| Error::NonlinearInEps(PlanarPoly::monomial(&s, m.x(), m.y(), t).to_string()))?;
        p0 = &p0 + &PlanarPoly::monomial(&s, m.x(), m.y(), c0);
        p1 = &p1 + &PlanarPoly::monomial(&s, m.x(), m.y(), c1);
    }
    Ok((p0, p1))
}

/// Rescales `eps_params` by a small `eps` and collects the first-order part.
///
/// The unperturbed field must be `(y, -x)`, or `(-y, x)` when
/// `reverse_time` is set.
pub fn eps_rescale(sys: &PlanarSystem, eps_params: &[&str], reverse_time: bool) -> Result<PerturbedSystem> {
    let s = sys.params.clone();
    let mut idx = Vec::new();
    for n in eps_params {
        idx.push(s.index_of(n).ok_or_else(|| Error::UnknownSymbol(n.to_string()))?);
    }
    let (p, q) = if reverse_time {
        (-&sys.p, -&sys.q)
    } else {
        (sys.p.clone(), sys.q.clone())
    };
    let (p0, p1) = split_poly(&p.in_universe(&s), &idx)?;
    let (q0, q1) = split_poly(&q.in_universe(&s), &idx)?;
    let want_p = PlanarPoly::y(&s);
    let want_q = -PlanarPoly::x(&s);
    if p0 != want_p || q0 != want_q {
        let hint = if !reverse_time && p0 == -&want_p && q0 == -&want_q {
            " (orientation is (-y, x); rescale with time reversal)"
        } else {
            ""
        };
        return Err(Error::NotPerturbationOfLinearCenter(format!(
            "unperturbed part after orientation is ({p0}, {q0}), expected (y, -x){hint}"
        )));
    }
    let mut out = PerturbedSystem::from_parts(p1, q1, reverse_time);
    out.symbols = s.clone();
    out.h = harmonic(&s);
    out.f1 = out.f1.in_universe(&s);
    out.g1 = out.g1.in_universe(&s);
    out.eps_params = eps_params.iter().map(|n| n.to_string()).collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysdef::{kukles_deg4_symbolic, kukles_odd_symbolic, parse_expr};

    #[test]
    fn degree_four_rescaled() {
        let sys = kukles_deg4_symbolic();
        let ps = eps_rescale(&sys, &["a", "b", "c"], true).unwrap();
        assert!(ps.f1.is_zero());
        let want = parse_expr("y*(1-x^2-y^2)*(a*x+b*y+c)", &sys.params).unwrap();
        assert_eq!(ps.g1, want);
        assert!(ps.time_reversed);
        assert_eq!(ps.reassemble(), sys);
    }

    #[test]
    fn linear_center_has_no_perturbation() {
        let ps = eps_rescale(&PlanarSystem::linear_center(), &[], true).unwrap();
        assert!(ps.g1.is_zero() && ps.f1.is_zero());
        assert!(matches!(
            eps_rescale(&PlanarSystem::linear_center(), &[], false),
            Err(Error::NotPerturbationOfLinearCenter(_))
        ));
    }

    #[test]
    fn odd_family_rescaled() {
        let sys = kukles_odd_symbolic(1);
        let ps = eps_rescale(&sys, &["b00", "b20", "b02"], true).unwrap();
        let want = parse_expr("y*(1-x^2-y^2)*(b00+b20*x^2+b02*y^2)", &sys.params).unwrap();
        assert_eq!(ps.g1, -want);
    }

    #[test]
    fn unscaled_symbol_breaks_center() {
        let sys = kukles_deg4_symbolic();
        assert!(matches!(
            eps_rescale(&sys, &["a", "b"], true),
            Err(Error::NotPerturbationOfLinearCenter(_))
        ));
    }

    #[test]
    fn quadratic_in_eps_is_rejected() {
        let s = Symbols::new(["a"]);
        let p = -PlanarPoly::y(&s);
        let q = &PlanarPoly::x(&s) + &parse_expr("a^2*x^2", &s).unwrap();
        let sys = PlanarSystem::new(p, q, s);
        assert!(matches!(eps_rescale(&sys, &["a"], true), Err(Error::NonlinearInEps(_))));
    }
}

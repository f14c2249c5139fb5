//! Invariant algebraic curves, Dulac functions, reversibility and
//! reciprocal integrating factors.

use serde_json::{json, Value};

use crate::algebra::{PhaseMono, PlanarPoly, Rat};
use crate::error::{Error, Result};
use crate::sysdef::PlanarSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisionStrategy {
    UnivariateY,
    UnivariateX,
    Graded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CofactorResult {
    pub invariant: bool,
    pub cofactor: Option<PlanarPoly>,
    pub remainder: Option<PlanarPoly>,
    pub strategy: DivisionStrategy,
}

impl CofactorResult {
    pub fn to_json(&self) -> Value {
        json!({
            "invariant": self.invariant,
            "cofactor": self.cofactor.as_ref().map(|k| k.to_string()),
            "remainder": self.remainder.as_ref().map(|r| r.to_string()),
        })
    }
}

/// `C_x P + C_y Q`.
pub fn lie_derivative(sys: &PlanarSystem, c: &PlanarPoly) -> PlanarPoly {
    let c = c.in_universe(&sys.params);
    &(&c.dx() * &sys.p) + &(&c.dy() * &sys.q)
}

/// Picks a monomial of `C` whose coefficient is a nonzero rational and which
/// dominates every other term in the chosen sense.
fn division_lead(c: &PlanarPoly) -> Option<(DivisionStrategy, PhaseMono, Rat)> {
    let constant_lc = |m: &PhaseMono| {
        c.coeff(m.x(), m.y())
            .constant_value()
            .filter(|v| *v != Rat::from_integer(0.into()))
    };
    let dy = c.degree_y();
    let top_y: Vec<&PhaseMono> = c.terms().map(|(m, _)| m).filter(|m| m.y() == dy).collect();
    if dy > 0 && top_y.len() == 1 {
        if let Some(r) = constant_lc(top_y[0]) {
            if top_y[0].x() == 0 {
                return Some((DivisionStrategy::UnivariateY, *top_y[0], r));
            }
        }
    }
    let dx = c.terms().map(|(m, _)| m.x()).max().unwrap_or(0);
    let top_x: Vec<&PhaseMono> = c.terms().map(|(m, _)| m).filter(|m| m.x() == dx).collect();
    if dx > 0 && top_x.len() == 1 && top_x[0].y() == 0 {
        if let Some(r) = constant_lc(top_x[0]) {
            return Some((DivisionStrategy::UnivariateX, *top_x[0], r));
        }
    }
    let (m, _) = c.leading()?;
    constant_lc(m).map(|r| (DivisionStrategy::Graded, *m, r))
}

/// Exact division `f = q C + r` by reduction against one lead monomial.
fn reduce(
    f: &PlanarPoly,
    c: &PlanarPoly,
    strategy: DivisionStrategy,
    lead: PhaseMono,
    lc: &Rat,
) -> (PlanarPoly, PlanarPoly) {
    let s = f.symbols().clone();
    let divides = |m: &PhaseMono| match strategy {
        DivisionStrategy::UnivariateY => m.y() >= lead.y(),
        DivisionStrategy::UnivariateX => m.x() >= lead.x(),
        DivisionStrategy::Graded => m.x() >= lead.x() && m.y() >= lead.y(),
    };
    let key = |m: &PhaseMono| match strategy {
        DivisionStrategy::UnivariateY => (m.y(), m.x(), 0),
        DivisionStrategy::UnivariateX => (m.x(), m.y(), 0),
        DivisionStrategy::Graded => (m.degree(), m.y(), m.x()),
    };
    let inv = Rat::from_integer(1.into()) / lc;
    let mut rem = f.clone();
    let mut quot = PlanarPoly::zero(&s);
    loop {
        let pick = rem
            .terms()
            .filter(|(m, _)| divides(m))
            .max_by_key(|(m, _)| key(m))
            .map(|(m, v)| (*m, v.clone()));
        let Some((m, v)) = pick else { break };
        let t = PlanarPoly::monomial(&s, m.x() - lead.x(), m.y() - lead.y(), v.scale(&inv));
        rem = &rem - &(&t * c);
        quot = &quot + &t;
    }
    (quot, rem)
}

/// Tests whether `C = 0` is invariant and returns the cofactor `K` with
/// `C_x P + C_y Q = C K`.
pub fn cofactor(sys: &PlanarSystem, c: &PlanarPoly) -> Result<CofactorResult> {
    if c.is_zero() {
        return Err(Error::ZeroCurve);
    }
    let c = c.in_universe(&sys.params);
    let dot = lie_derivative(sys, &c);
    let (strategy, lead, lc) = division_lead(&c).ok_or_else(|| Error::NonMonicUndividable(c.to_string()))?;
    let (k, rem) = reduce(&dot, &c, strategy, lead, &lc);
    if rem.is_zero() {
        if !(&dot - &(&c * &k)).is_zero() {
            return Err(Error::Internal("cofactor reconstruction failed".into()));
        }
        Ok(CofactorResult {
            invariant: true,
            cofactor: Some(k),
            remainder: None,
            strategy,
        })
    } else {
        Ok(CofactorResult {
            invariant: false,
            cofactor: None,
            remainder: Some(rem),
            strategy,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DulacResult {
    /// `C (P_x + Q_y) - (C_x P + C_y Q)`.
    pub numerator: PlanarPoly,
    pub denominator_power: u32,
    pub is_constant: bool,
    /// The constant value of `div(X / C)` when `is_constant`.
    pub value: Option<PlanarPoly>,
}

impl DulacResult {
    pub fn to_json(&self) -> Value {
        json!({
            "numerator": self.numerator.to_string(),
            "denominator_power": self.denominator_power,
            "is_constant": self.is_constant,
            "value": self.value.as_ref().map(|v| v.to_string()),
        })
    }
}

pub fn divergence(sys: &PlanarSystem) -> PlanarPoly {
    &sys.p.dx() + &sys.q.dy()
}

/// `div(X / C) = numerator / C^2`.
pub fn dulac_divergence(sys: &PlanarSystem, c: &PlanarPoly) -> Result<DulacResult> {
    if c.is_zero() {
        return Err(Error::ZeroCurve);
    }
    let c = c.in_universe(&sys.params);
    let numerator = &(&c * &divergence(sys)) - &lie_derivative(sys, &c);
    let c2 = &c * &c;
    let value = if numerator.is_zero() {
        Some(PlanarPoly::zero(&sys.params))
    } else {
        division_lead(&c2).and_then(|(st, lead, lc)| {
            let (q, r) = reduce(&numerator, &c2, st, lead, &lc);
            (r.is_zero() && q.total_degree() == 0).then_some(q)
        })
    };
    Ok(DulacResult {
        numerator,
        denominator_power: 2,
        is_constant: value.is_some(),
        value,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryFlags {
    /// `P(x,-y) = -P(x,y)`, `Q(x,-y) = Q(x,y)`.
    pub x_axis_reversible: bool,
    /// `P(-x,y) = P(x,y)`, `Q(-x,y) = -Q(x,y)`.
    pub y_axis_reversible: bool,
    /// Linear part at the origin is a rotation with rational rates of
    /// opposite sign.
    pub linear_center_focus: bool,
}

impl SymmetryFlags {
    pub fn certifies_center(&self) -> bool {
        self.linear_center_focus && (self.x_axis_reversible || self.y_axis_reversible)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x_axis_reversible": self.x_axis_reversible,
            "y_axis_reversible": self.y_axis_reversible,
            "center": self.certifies_center(),
        })
    }
}

pub fn symmetry_center_check(sys: &PlanarSystem) -> SymmetryFlags {
    let (p, q) = (&sys.p, &sys.q);
    let x_axis = p.reflect_y() == -p && q.reflect_y() == *q;
    let y_axis = p.reflect_x() == *p && q.reflect_x() == -q;
    let [[p10, p01], [q10, q01]] = sys.linear_part();
    let zero = Rat::from_integer(0.into());
    let rotation = match (
        p10.constant_value(),
        p01.constant_value(),
        q10.constant_value(),
        q01.constant_value(),
    ) {
        (Some(a), Some(b), Some(c), Some(d)) => a == zero && d == zero && b * c < zero,
        _ => false,
    };
    SymmetryFlags {
        x_axis_reversible: x_axis,
        y_axis_reversible: y_axis,
        linear_center_focus: rotation,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RifResult {
    pub residual: PlanarPoly,
    /// `V = 0` satisfies the equation trivially.
    pub degenerate: bool,
}

impl RifResult {
    pub fn is_rif(&self) -> bool {
        self.residual.is_zero() && !self.degenerate
    }

    pub fn to_json(&self) -> Value {
        json!({
            "residual": self.residual.to_string(),
            "is_rif": self.is_rif(),
            "degenerate": self.degenerate,
        })
    }
}

/// `P V_x + Q V_y - (P_x + Q_y) V`.
pub fn rif_check(sys: &PlanarSystem, v: &PlanarPoly) -> RifResult {
    let v = v.in_universe(&sys.params);
    let residual = &lie_derivative(sys, &v) - &(&divergence(sys) * &v);
    RifResult {
        residual,
        degenerate: v.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Symbols;
    use crate::sysdef::{kukles_deg4_symbolic, parse_expr};

    fn circle(s: &Symbols, r2: i64) -> PlanarPoly {
        parse_expr(&format!("x^2+y^2-{r2}"), s).unwrap()
    }

    #[test]
    fn degree_four_circle_is_invariant() {
        let sys = kukles_deg4_symbolic();
        let res = cofactor(&sys, &circle(&sys.params, 1)).unwrap();
        assert!(res.invariant);
        assert_eq!(res.strategy, DivisionStrategy::UnivariateY);
        assert_eq!(
            res.cofactor.unwrap(),
            parse_expr("2*y^2*(a*x+b*y+c)", &sys.params).unwrap()
        );
        let res = cofactor(&sys, &circle(&sys.params, 2)).unwrap();
        assert!(!res.invariant);
        assert!(!res.remainder.unwrap().is_zero());
    }

    #[test]
    fn graded_fallback() {
        let s = Symbols::empty();
        let sys = PlanarSystem::new(
            PlanarPoly::x(&s),
            PlanarPoly::y(&s).scale_rat(&Rat::from_integer(2.into())),
            s.clone(),
        );
        let res = cofactor(&sys, &parse_expr("x*y + x^2*y^2", &s).unwrap()).unwrap();
        assert_eq!(res.strategy, DivisionStrategy::Graded);
        assert!(!res.invariant);
        let res = cofactor(&sys, &parse_expr("x*y", &s).unwrap()).unwrap();
        assert!(res.invariant);
        assert_eq!(res.cofactor.unwrap().to_string(), "3");
        assert_eq!(cofactor(&sys, &PlanarPoly::zero(&s)).unwrap_err(), Error::ZeroCurve);
    }

    #[test]
    fn non_monic_curve_is_reported() {
        let s = Symbols::new(["a"]);
        let sys = PlanarSystem::new(-PlanarPoly::y(&s), PlanarPoly::x(&s), s.clone());
        let c = parse_expr("a*x^2 + a*y^2", &s).unwrap();
        assert!(matches!(cofactor(&sys, &c), Err(Error::NonMonicUndividable(_))));
    }

    #[test]
    fn linear_center_checks() {
        let sys = PlanarSystem::linear_center();
        let s = sys.params.clone();
        let d = dulac_divergence(&sys, &circle(&s, 1)).unwrap();
        assert!(d.is_constant);
        assert!(d.numerator.is_zero());
        assert!(rif_check(&sys, &parse_expr("x^2+y^2", &s).unwrap()).is_rif());
        let z = rif_check(&sys, &PlanarPoly::zero(&s));
        assert!(z.residual.is_zero() && z.degenerate && !z.is_rif());
        let f = symmetry_center_check(&sys);
        assert!(f.x_axis_reversible && f.y_axis_reversible && f.certifies_center());
    }
}

//! Planar systems: text format, canonical Kukles families, classical
//! condition checkers and the rescaling into a perturbed harmonic center.

mod conditions;
mod families;
mod parser;
mod perturb;

pub use conditions::{cubic_symbols, kukles_conditions, kukles_polynomials, JinWangBranch, KuklesConditionReport};
pub use families::{
    kukles_cubic, kukles_cubic_symbolic, kukles_deg4, kukles_deg4_symbolic, kukles_odd, kukles_odd_symbolic,
    odd_coeff_name, odd_index_pairs,
};
pub use parser::{parse_expr, parse_param_expr, parse_system};
pub use perturb::{eps_rescale, PerturbedSystem};

use crate::algebra::{ParamPoly, PlanarPoly, Point, Symbols};
use crate::error::Result;

/// `x' = P(x, y)`, `y' = Q(x, y)` with declared parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanarSystem {
    pub p: PlanarPoly,
    pub q: PlanarPoly,
    pub params: Symbols,
    pub perturbation_params: Vec<String>,
}

impl PlanarSystem {
    pub fn new(p: PlanarPoly, q: PlanarPoly, params: Symbols) -> Self {
        let u = params.union(p.symbols()).union(q.symbols());
        PlanarSystem {
            p: p.in_universe(&u),
            q: q.in_universe(&u),
            params: u,
            perturbation_params: Vec::new(),
        }
    }

    pub fn with_perturbation(mut self, names: &[&str]) -> Self {
        self.perturbation_params = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn degree(&self) -> u32 {
        self.p.total_degree().max(self.q.total_degree())
    }

    /// Simultaneous substitution of parameters; the declared universe is kept.
    pub fn substitute(&self, bindings: &[(String, ParamPoly)]) -> Result<PlanarSystem> {
        let p = self.p.substitute(bindings)?;
        let q = self.q.substitute(bindings)?;
        let mut out = PlanarSystem::new(p, q, self.params.clone());
        out.perturbation_params = self.perturbation_params.clone();
        Ok(out)
    }

    /// Binds parameters to exact values.
    pub fn bind(&self, point: &Point) -> PlanarSystem {
        let mut out = PlanarSystem::new(
            self.p.partial_eval(point),
            self.q.partial_eval(point),
            self.params.clone(),
        );
        out.perturbation_params = self.perturbation_params.clone();
        out
    }

    /// Jacobian at the origin, rows (P, Q), columns (x, y).
    pub fn linear_part(&self) -> [[ParamPoly; 2]; 2] {
        [
            [self.p.coeff(1, 0), self.p.coeff(0, 1)],
            [self.q.coeff(1, 0), self.q.coeff(0, 1)],
        ]
    }

    pub fn origin_is_singular(&self) -> bool {
        self.p.coeff(0, 0).is_zero() && self.q.coeff(0, 0).is_zero()
    }

    /// Round-trippable text form accepted by [`parse_system`].
    pub fn render(&self) -> String {
        let mut s = format!("params: {}\n", self.params.names().join(", "));
        s.push_str(&format!("dx = {}\n", self.p));
        s.push_str(&format!("dy = {}\n", self.q));
        if !self.perturbation_params.is_empty() {
            s.push_str(&format!("perturb: {}\n", self.perturbation_params.join(", ")));
        }
        s
    }

    /// The linear center `x' = -y, y' = x` with no parameters.
    pub fn linear_center() -> PlanarSystem {
        let s = Symbols::empty();
        PlanarSystem::new(-PlanarPoly::y(&s), PlanarPoly::x(&s), s)
    }
}

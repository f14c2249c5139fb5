//! Polynomials in the phase variables x, y with [`ParamPoly`] coefficients.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::param::{forward_owned, join_terms, ParamPoly, Point};
use super::rat::Rat;
use super::symbols::Symbols;
use crate::error::{Error, Result};

/// `x^x * y^y`; ordered graded-lex with y > x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhaseMono {
    deg: u32,
    y: u32,
    x: u32,
}

impl PhaseMono {
    pub fn new(x: u32, y: u32) -> Self {
        PhaseMono { deg: x + y, y, x }
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    pub fn y(&self) -> u32 {
        self.y
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    fn mul(self, o: PhaseMono) -> PhaseMono {
        PhaseMono::new(self.x + o.x, self.y + o.y)
    }

    fn factors(&self) -> Vec<String> {
        let mut f = Vec::new();
        match self.x {
            0 => {}
            1 => f.push("x".to_string()),
            e => f.push(format!("x^{e}")),
        }
        match self.y {
            0 => {}
            1 => f.push("y".to_string()),
            e => f.push(format!("y^{e}")),
        }
        f
    }
}

/// Phase-plane polynomial. All coefficients live in one parameter universe.
#[derive(Clone, Debug)]
pub struct PlanarPoly {
    symbols: Symbols,
    terms: BTreeMap<PhaseMono, ParamPoly>,
}

impl PlanarPoly {
    pub fn zero(symbols: &Symbols) -> Self {
        PlanarPoly {
            symbols: symbols.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(symbols: &Symbols, x: u32, y: u32, c: ParamPoly) -> Self {
        let mut p = PlanarPoly::zero(&symbols.union(c.symbols()));
        p.add_term(PhaseMono::new(x, y), c);
        p
    }

    pub fn constant(symbols: &Symbols, c: ParamPoly) -> Self {
        PlanarPoly::monomial(symbols, 0, 0, c)
    }

    pub fn from_rat(symbols: &Symbols, c: Rat) -> Self {
        PlanarPoly::constant(symbols, ParamPoly::from_rat(c))
    }

    pub fn x(symbols: &Symbols) -> Self {
        PlanarPoly::monomial(symbols, 1, 0, ParamPoly::one(symbols))
    }

    pub fn y(symbols: &Symbols) -> Self {
        PlanarPoly::monomial(symbols, 0, 1, ParamPoly::one(symbols))
    }

    pub fn param(symbols: &Symbols, name: &str) -> Result<Self> {
        Ok(PlanarPoly::constant(symbols, ParamPoly::var(symbols, name)?))
    }

    pub fn from_terms<I>(symbols: &Symbols, terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), ParamPoly)>,
    {
        let mut p = PlanarPoly::zero(symbols);
        for ((x, y), c) in terms {
            p.add_term(PhaseMono::new(x, y), c);
        }
        p
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&PhaseMono, &ParamPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.deg).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.deg).min().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    pub fn coeff(&self, x: u32, y: u32) -> ParamPoly {
        self.terms
            .get(&PhaseMono::new(x, y))
            .cloned()
            .unwrap_or_else(|| ParamPoly::zero(&self.symbols))
    }

    pub fn leading(&self) -> Option<(&PhaseMono, &ParamPoly)> {
        self.terms.iter().next_back()
    }

    /// Re-expresses the coefficients over a (super-)universe.
    pub fn in_universe(&self, target: &Symbols) -> PlanarPoly {
        if &self.symbols == target {
            return self.clone();
        }
        PlanarPoly {
            symbols: target.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.in_universe(target))).collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: PhaseMono, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        if !self.symbols.is_superset_of(c.symbols()) {
            let u = self.symbols.union(c.symbols());
            *self = self.in_universe(&u);
        }
        let c = c.in_universe(&self.symbols);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn aligned<'a>(a: &'a PlanarPoly, b: &'a PlanarPoly) -> (Cow<'a, PlanarPoly>, Cow<'a, PlanarPoly>) {
        if a.symbols == b.symbols {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let u = a.symbols.union(&b.symbols);
        let a2 = if a.symbols == u {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.in_universe(&u))
        };
        let b2 = if b.symbols == u {
            Cow::Borrowed(b)
        } else {
            Cow::Owned(b.in_universe(&u))
        };
        (a2, b2)
    }

    pub fn scale(&self, c: &ParamPoly) -> PlanarPoly {
        let mut out = PlanarPoly::zero(&self.symbols.union(c.symbols()));
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> PlanarPoly {
        if c.is_zero() {
            return PlanarPoly::zero(&self.symbols);
        }
        PlanarPoly {
            symbols: self.symbols.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v.scale(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, x: u32, y: u32) -> PlanarPoly {
        let s = PhaseMono::new(x, y);
        PlanarPoly {
            symbols: self.symbols.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.mul(s), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> PlanarPoly {
        let mut result = PlanarPoly::from_rat(&self.symbols, Rat::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Product keeping only monomials of total degree `<= max_deg`.
    pub fn mul_truncated(&self, other: &PlanarPoly, max_deg: u32) -> PlanarPoly {
        let (a, b) = PlanarPoly::aligned(self, other);
        let mut out = PlanarPoly::zero(&a.symbols);
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                if ma.deg + mb.deg > max_deg {
                    continue;
                }
                out.add_term(ma.mul(*mb), ca * cb);
            }
        }
        out
    }

    pub fn homogeneous_part(&self, k: u32) -> PlanarPoly {
        PlanarPoly {
            symbols: self.symbols.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.deg == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drops monomials of total degree above `k`.
    pub fn truncate(&self, k: u32) -> PlanarPoly {
        PlanarPoly {
            symbols: self.symbols.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.deg <= k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn dx(&self) -> PlanarPoly {
        let mut out = PlanarPoly::zero(&self.symbols);
        for (m, c) in &self.terms {
            if m.x > 0 {
                out.add_term(
                    PhaseMono::new(m.x - 1, m.y),
                    c.scale(&Rat::from_integer(BigInt::from(m.x))),
                );
            }
        }
        out
    }

    pub fn dy(&self) -> PlanarPoly {
        let mut out = PlanarPoly::zero(&self.symbols);
        for (m, c) in &self.terms {
            if m.y > 0 {
                out.add_term(
                    PhaseMono::new(m.x, m.y - 1),
                    c.scale(&Rat::from_integer(BigInt::from(m.y))),
                );
            }
        }
        out
    }

    /// Partial derivative with respect to `x`, `y`, or a parameter symbol.
    pub fn derivative(&self, var: &str) -> Result<PlanarPoly> {
        match var {
            "x" => Ok(self.dx()),
            "y" => Ok(self.dy()),
            name => {
                if !self.symbols.contains(name) {
                    return Err(Error::UnknownSymbol(name.to_string()));
                }
                let mut out = PlanarPoly::zero(&self.symbols);
                for (m, c) in &self.terms {
                    out.add_term(*m, c.derivative(name)?);
                }
                Ok(out)
            }
        }
    }

    /// `p(x, -y)`.
    pub fn reflect_y(&self) -> PlanarPoly {
        self.map_signs(|m| m.y % 2 == 1)
    }

    /// `p(-x, y)`.
    pub fn reflect_x(&self) -> PlanarPoly {
        self.map_signs(|m| m.x % 2 == 1)
    }

    fn map_signs(&self, negate: impl Fn(&PhaseMono) -> bool) -> PlanarPoly {
        PlanarPoly {
            symbols: self.symbols.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if negate(m) { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn substitute(&self, bindings: &[(String, ParamPoly)]) -> Result<PlanarPoly> {
        for (name, _) in bindings {
            if !self.symbols.contains(name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        Ok(self.substitute_lenient(bindings))
    }

    pub fn substitute_lenient(&self, bindings: &[(String, ParamPoly)]) -> PlanarPoly {
        let mut out = PlanarPoly::zero(&self.symbols);
        for (m, c) in &self.terms {
            out.add_term(*m, c.substitute_lenient(bindings));
        }
        out
    }

    /// Binds parameters to exact values, keeping any symbols left unbound.
    pub fn partial_eval(&self, point: &Point) -> PlanarPoly {
        let mut out = PlanarPoly::zero(&self.symbols);
        for (m, c) in &self.terms {
            out.add_term(*m, c.partial_eval(point));
        }
        out
    }

    /// Exact value at a phase point with all parameters bound.
    pub fn eval(&self, point: &Point, x: &Rat, y: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let v = c.eval(point)?;
            acc += v * num_traits::pow(x.clone(), m.x as usize) * num_traits::pow(y.clone(), m.y as usize);
        }
        Ok(acc)
    }

    /// Coefficients that are constants (after evaluation at `point`) as
    /// `(x_exp, y_exp, value)` triples.
    pub fn bind_all(&self, point: &Point) -> Result<Vec<(u32, u32, Rat)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let v = c.eval(point)?;
            if !v.is_zero() {
                out.push((m.x, m.y, v));
            }
        }
        Ok(out)
    }

    /// Union of the parameter names occurring in any coefficient.
    pub fn used_symbols(&self) -> Vec<String> {
        let mut used: Vec<String> = Vec::new();
        for c in self.terms.values() {
            for s in c.used_symbols() {
                if !used.contains(&s) {
                    used.push(s);
                }
            }
        }
        self.symbols
            .names()
            .iter()
            .filter(|n| used.contains(n))
            .cloned()
            .collect()
    }

    /// Whether every coefficient is a rational constant.
    pub fn is_parameter_free(&self) -> bool {
        self.terms.values().all(ParamPoly::is_constant)
    }

    /// The rational `c` with `self == c * other`, if one exists.
    pub fn rational_ratio(&self, other: &PlanarPoly) -> Option<Rat> {
        let (om, oc) = other.leading()?;
        let sc = self.terms.get(om)?;
        let (omono, ol) = oc.leading()?;
        let (_, sl) = sc.terms().find(|(m, _)| *m == omono)?;
        let ratio = sl / ol;
        if &other.scale_rat(&ratio) == self {
            Some(ratio)
        } else {
            None
        }
    }
}

impl PartialEq for PlanarPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = PlanarPoly::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for PlanarPoly {}

impl<'a> Add<&'a PlanarPoly> for &'a PlanarPoly {
    type Output = PlanarPoly;
    fn add(self, rhs: &'a PlanarPoly) -> PlanarPoly {
        let (a, b) = PlanarPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PlanarPoly> for &'a PlanarPoly {
    type Output = PlanarPoly;
    fn sub(self, rhs: &'a PlanarPoly) -> PlanarPoly {
        let (a, b) = PlanarPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a PlanarPoly> for &'a PlanarPoly {
    type Output = PlanarPoly;
    fn mul(self, rhs: &'a PlanarPoly) -> PlanarPoly {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl Neg for &PlanarPoly {
    type Output = PlanarPoly;
    fn neg(self) -> PlanarPoly {
        PlanarPoly {
            symbols: self.symbols.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for PlanarPoly {
    type Output = PlanarPoly;
    fn neg(self) -> PlanarPoly {
        -&self
    }
}

forward_owned!(PlanarPoly, Add, add);
forward_owned!(PlanarPoly, Sub, sub);
forward_owned!(PlanarPoly, Mul, mul);

impl fmt::Display for PlanarPoly {
    /// Fully expanded: each (parameter monomial, phase monomial) pair is one
    /// term, ordered by phase monomial then parameter monomial, descending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            terms.extend(c.rendered_terms(&m.factors()));
        }
        f.write_str(&join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::int;

    fn s() -> Symbols {
        Symbols::new(["a", "b", "c"])
    }

    fn x() -> PlanarPoly {
        PlanarPoly::x(&s())
    }

    fn y() -> PlanarPoly {
        PlanarPoly::y(&s())
    }

    fn p(name: &str) -> PlanarPoly {
        PlanarPoly::param(&s(), name).unwrap()
    }

    fn one() -> PlanarPoly {
        PlanarPoly::from_rat(&s(), int(1))
    }

    #[test]
    fn binomial_square() {
        let r2 = &x().pow(2) + &y().pow(2);
        let sq = &r2 * &r2;
        assert_eq!(sq.to_string(), "y^4 + 2*x^2*y^2 + x^4");
    }

    #[test]
    fn cancellation() {
        let q = &(&(&p("a") * &x()) + &(&p("b") * &y())) - &(&p("a") * &x());
        assert_eq!(q, &p("b") * &y());
    }

    #[test]
    fn circle_factor_expansion() {
        let circle = &(&one() - &x().pow(2)) - &y().pow(2);
        let lin = &(&(&p("a") * &x()) + &(&p("b") * &y())) + &p("c");
        let prod = &circle * &lin;
        let count: usize = prod.terms().map(|(_, c)| c.len()).sum();
        assert_eq!(count, 9);
        // independent naive expansion
        let mut naive = PlanarPoly::zero(&s());
        for (cm, cc) in circle.terms() {
            for (lm, lc) in lin.terms() {
                naive = &naive + &PlanarPoly::monomial(&s(), cm.x() + lm.x(), cm.y() + lm.y(), cc * lc);
            }
        }
        assert_eq!(prod, naive);
    }

    #[test]
    fn derivatives() {
        let c = &(&x().pow(2) + &y().pow(2)) - &one();
        assert_eq!(c.dx(), x().scale_rat(&int(2)));
        assert_eq!(c.dy(), y().scale_rat(&int(2)));
        assert!(matches!(c.derivative("q"), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn display_orders_y_before_x() {
        let e = &(&x() + &y()) + &(&(&p("a") * &x()) * &y().pow(2));
        assert_eq!(e.to_string(), "a*x*y^2 + y + x");
    }
}

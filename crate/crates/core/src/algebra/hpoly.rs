//! Polynomials in the energy level `h` times a symbolic power of pi.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::param::{join_terms, ParamPoly, Point};
use super::rat::{to_f64, Rat};
use super::symbols::Symbols;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HPiPoly {
    symbols: Symbols,
    coeffs: BTreeMap<u32, ParamPoly>,
    pi_power: u32,
}

impl HPiPoly {
    pub fn zero(symbols: &Symbols, pi_power: u32) -> Self {
        HPiPoly {
            symbols: symbols.clone(),
            coeffs: BTreeMap::new(),
            pi_power,
        }
    }

    pub fn from_coeffs<I>(symbols: &Symbols, pi_power: u32, coeffs: I) -> Self
    where
        I: IntoIterator<Item = (u32, ParamPoly)>,
    {
        let mut p = HPiPoly::zero(symbols, pi_power);
        for (k, c) in coeffs {
            p.add_coeff(k, c);
        }
        p
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn coeff(&self, k: u32) -> ParamPoly {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| ParamPoly::zero(&self.symbols))
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = (&u32, &ParamPoly)> {
        self.coeffs.iter()
    }

    pub(crate) fn add_coeff(&mut self, k: u32, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        if !self.symbols.is_superset_of(c.symbols()) {
            self.symbols = self.symbols.union(c.symbols());
            let s = self.symbols.clone();
            for v in self.coeffs.values_mut() {
                *v = v.in_universe(&s);
            }
        }
        let c = c.in_universe(&self.symbols);
        let e = self
            .coeffs
            .entry(k)
            .or_insert_with(|| ParamPoly::zero(&c.symbols().clone()));
        *e = &*e + &c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    /// Sum of polynomials carrying the same pi power. A zero operand adopts
    /// the other's power.
    pub fn add(&self, other: &HPiPoly) -> Result<HPiPoly> {
        let power = match (self.is_zero(), other.is_zero()) {
            (true, _) => other.pi_power,
            (_, true) => self.pi_power,
            _ if self.pi_power == other.pi_power => self.pi_power,
            _ => return Err(Error::PiPowerMismatch(self.pi_power, other.pi_power)),
        };
        let mut out = self.clone();
        out.pi_power = power;
        for (k, c) in &other.coeffs {
            out.add_coeff(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HPiPoly) -> Result<HPiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HPiPoly {
        HPiPoly {
            symbols: self.symbols.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
            pi_power: self.pi_power,
        }
    }

    /// Product; pi powers add.
    pub fn mul(&self, other: &HPiPoly) -> HPiPoly {
        let mut out = HPiPoly::zero(&self.symbols.union(&other.symbols), self.pi_power + other.pi_power);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_coeff(i + j, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> HPiPoly {
        let mut out = HPiPoly::from_coeffs(&self.symbols, 0, [(0, ParamPoly::one(&self.symbols))]);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &ParamPoly) -> HPiPoly {
        let mut out = HPiPoly::zero(&self.symbols.union(c.symbols()), self.pi_power);
        for (k, v) in &self.coeffs {
            out.add_coeff(*k, v * c);
        }
        out
    }

    pub fn substitute(&self, bindings: &[(String, ParamPoly)]) -> Result<HPiPoly> {
        for (name, _) in bindings {
            if !self.symbols.contains(name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        let mut out = HPiPoly::zero(&self.symbols, self.pi_power);
        for (k, c) in &self.coeffs {
            out.add_coeff(*k, c.substitute_lenient(bindings));
        }
        Ok(out)
    }

    /// Drops the pi factor.
    pub fn without_pi(&self) -> HPiPoly {
        HPiPoly {
            pi_power: 0,
            ..self.clone()
        }
    }

    /// Exact value; only defined when no pi factor remains.
    pub fn eval_exact(&self, point: &Point, h: &Rat) -> Result<Rat> {
        if self.pi_power != 0 && !self.is_zero() {
            return Err(Error::PiInExactMode(self.pi_power));
        }
        self.eval_rational_part(point, h)
    }

    /// Value of the polynomial with the pi factor omitted.
    pub fn eval_rational_part(&self, point: &Point, h: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (k, c) in &self.coeffs {
            acc += c.eval(point)? * num_traits::pow(h.clone(), *k as usize);
        }
        Ok(acc)
    }

    /// Floating value with pi expanded.
    pub fn eval_float(&self, point: &Point, h: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (k, c) in self.coeffs.iter().rev() {
            acc += to_f64(&c.eval(point)?) * h.powi(*k as i32);
        }
        Ok(acc * std::f64::consts::PI.powi(self.pi_power as i32))
    }

    /// Coefficients bound at `point`, pi omitted; index = power of h.
    pub fn rational_coeffs_at(&self, point: &Point) -> Result<Vec<Rat>> {
        let mut out = vec![Rat::zero(); self.degree() as usize + 1];
        for (k, c) in &self.coeffs {
            out[*k as usize] = c.eval(point)?;
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        Ok(out)
    }

    /// Reinterprets `h` as an ordinary parameter named `h_name`.
    pub fn to_param_poly(&self, h_name: &str) -> ParamPoly {
        let hsym = ParamPoly::symbol(h_name);
        let mut acc = ParamPoly::zero(&self.symbols);
        for (k, c) in &self.coeffs {
            acc = &acc + &(c * &hsym.pow(*k));
        }
        acc
    }

    pub fn equals_up_to_sign(&self, other: &HPiPoly) -> bool {
        self == other || self == &other.neg()
    }
}

impl PartialEq for HPiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.pi_power == other.pi_power
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .all(|((i, a), (j, b))| i == j && a == b)
    }
}

impl Eq for HPiPoly {}

impl fmt::Display for HPiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().rev() {
            let hf = match *k {
                0 => vec![],
                1 => vec!["h".to_string()],
                e => vec![format!("h^{e}")],
            };
            terms.extend(c.rendered_terms(&hf));
        }
        let inner = join_terms(terms);
        match self.pi_power {
            0 => f.write_str(&inner),
            1 => write!(f, "pi*({inner})"),
            p => write!(f, "pi^{p}*({inner})"),
        }
    }
}

use std::collections::BTreeMap;

use crate::algebra::{to_f64, ParamPoly, PlanarPoly, Point};
use crate::error::{Error, Result};
use crate::sysdef::PlanarSystem;

/// Parameter values for floating-point evaluation.
pub type FloatPoint = BTreeMap<String, f64>;

pub fn float_point(point: &Point) -> FloatPoint {
    point.iter().map(|(k, v)| (k.clone(), to_f64(v))).collect()
}

fn eval_param(c: &ParamPoly, values: &[Option<f64>]) -> Result<f64> {
    let names = c.symbols().names();
    let mut acc = 0.0;
    for (m, v) in c.terms() {
        let mut t = to_f64(v);
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let val = values[i].ok_or_else(|| Error::UnboundSymbol(names[i].clone()))?;
            t *= val.powi(e as i32);
        }
        acc += t;
    }
    Ok(acc)
}

/// A phase polynomial with floating coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPoly {
    terms: Vec<(u32, u32, f64)>,
    degree: u32,
}

impl NumericPoly {
    pub fn compile(p: &PlanarPoly, params: &FloatPoint) -> Result<Self> {
        let values: Vec<Option<f64>> = p.symbols().names().iter().map(|n| params.get(n).copied()).collect();
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let v = eval_param(c, &values)?;
            if v != 0.0 {
                terms.push((m.x(), m.y(), v));
            }
        }
        Ok(NumericPoly {
            degree: terms.iter().map(|t| t.0 + t.1).max().unwrap_or(0),
            terms,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let n = self.degree as usize + 1;
        let mut px = [1.0f64; 32];
        let mut py = [1.0f64; 32];
        if n > 32 {
            return self
                .terms
                .iter()
                .map(|&(i, j, c)| c * x.powi(i as i32) * y.powi(j as i32))
                .sum();
        }
        for k in 1..n {
            px[k] = px[k - 1] * x;
            py[k] = py[k - 1] * y;
        }
        self.terms
            .iter()
            .map(|&(i, j, c)| c * px[i as usize] * py[j as usize])
            .sum()
    }
}

/// `x' = P`, `y' = Q` with every parameter bound to a float.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSystem {
    pub p: NumericPoly,
    pub q: NumericPoly,
    pub params: FloatPoint,
}

impl NumericSystem {
    pub fn compile(sys: &PlanarSystem, params: &FloatPoint) -> Result<Self> {
        // Bindings for symbols the field does not use are harmless; unknown
        // names are not.
        for k in params.keys() {
            if !sys.params.contains(k) {
                return Err(Error::UnknownSymbol(k.clone()));
            }
        }
        Ok(NumericSystem {
            p: NumericPoly::compile(&sys.p, params)?,
            q: NumericPoly::compile(&sys.q, params)?,
            params: params.clone(),
        })
    }

    pub fn from_exact(sys: &PlanarSystem, point: &Point) -> Result<Self> {
        Self::compile(sys, &float_point(point))
    }

    pub fn degree(&self) -> u32 {
        self.p.degree().max(self.q.degree())
    }

    #[inline]
    pub fn field(&self, x: f64, y: f64) -> [f64; 2] {
        [self.p.eval(x, y), self.q.eval(x, y)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::sysdef::kukles_deg4_symbolic;
    use rand::{Rng, SeedableRng};

    #[test]
    fn agrees_with_exact_evaluation() {
        let sys = kukles_deg4_symbolic();
        let point: Point = [("a", rat(1, 3)), ("b", rat(-2, 7)), ("c", rat(5, 4))]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        let ns = NumericSystem::from_exact(&sys, &point).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x = rat(rng.gen_range(-2000..=2000), 1000);
            let y = rat(rng.gen_range(-2000..=2000), 1000);
            let exact = to_f64(&sys.q.eval(&point, &x, &y).unwrap());
            let num = ns.field(to_f64(&x), to_f64(&y))[1];
            assert!((exact - num).abs() <= 1e-14 * exact.abs().max(1.0), "{exact} vs {num}");
        }
    }

    #[test]
    fn unbound_and_unknown_symbols() {
        let sys = kukles_deg4_symbolic();
        let mut p = FloatPoint::new();
        p.insert("a".into(), 1.0);
        assert!(matches!(NumericSystem::compile(&sys, &p), Err(Error::UnboundSymbol(_))));
        p.insert("z".into(), 1.0);
        assert_eq!(
            NumericSystem::compile(&sys, &p).unwrap_err(),
            Error::UnknownSymbol("z".into())
        );
    }
}

use std::collections::BTreeMap;

use super::PlanarSystem;
use crate::algebra::{int, ParamPoly, PlanarPoly, Symbols};
use crate::error::{Error, Result};

fn phase(symbols: &Symbols) -> (PlanarPoly, PlanarPoly) {
    (PlanarPoly::x(symbols), PlanarPoly::y(symbols))
}

fn universe(coeffs: &[&ParamPoly]) -> Symbols {
    coeffs.iter().fold(Symbols::empty(), |s, c| s.union(c.symbols()))
}

/// `x' = -y`, `y' = x + a1 x^2 + a2 xy + a3 y^2 + a4 x^3 + a5 x^2 y + a6 x y^2 + a7 y^3`.
pub fn kukles_cubic(a: &[ParamPoly; 7]) -> PlanarSystem {
    let s = universe(&a.iter().collect::<Vec<_>>());
    let (x, _) = phase(&s);
    let exps = [(2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];
    let mut q = x;
    for (c, (i, j)) in a.iter().zip(exps) {
        q = &q + &PlanarPoly::monomial(&s, i, j, c.clone());
    }
    PlanarSystem::new(-PlanarPoly::y(&s), q, s)
}

pub fn kukles_cubic_symbolic() -> PlanarSystem {
    let s = Symbols::new((1..=7).map(|i| format!("a{i}")));
    let a: [ParamPoly; 7] = std::array::from_fn(|i| ParamPoly::var(&s, &format!("a{}", i + 1)).expect("declared"));
    let mut sys = kukles_cubic(&a);
    sys.params = s.clone();
    sys.p = sys.p.in_universe(&s);
    sys.q = sys.q.in_universe(&s);
    sys
}

/// `x' = -y`, `y' = x + y (x^2 + y^2 - 1)(a x + b y + c)`.
pub fn kukles_deg4(a: &ParamPoly, b: &ParamPoly, c: &ParamPoly) -> PlanarSystem {
    let s = universe(&[a, b, c]);
    let (x, y) = phase(&s);
    let one = PlanarPoly::from_rat(&s, int(1));
    let circle = &(&(&x * &x) + &(&y * &y)) - &one;
    let lin = &(&x.scale(a) + &y.scale(b)) + &PlanarPoly::constant(&s, c.clone());
    let q = &x + &(&(&y * &circle) * &lin);
    PlanarSystem::new(-y, q, s)
}

pub fn kukles_deg4_symbolic() -> PlanarSystem {
    let s = Symbols::new(["a", "b", "c"]);
    let v = |n: &str| ParamPoly::var(&s, n).expect("declared");
    let mut sys = kukles_deg4(&v("a"), &v("b"), &v("c"));
    sys.params = s;
    sys
}

/// Symbol name of the coefficient of `x^{2i} y^{2j}` in the odd family.
pub fn odd_coeff_name(i: u32, j: u32) -> String {
    let (a, b) = (2 * i, 2 * j);
    if a >= 10 || b >= 10 {
        format!("b{a}_{b}")
    } else {
        format!("b{a}{b}")
    }
}

/// `(i, j)` with `i + j <= n`, by total degree then decreasing `i`.
pub fn odd_index_pairs(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for k in 0..=n {
        for i in (0..=k).rev() {
            out.push((i, k - i));
        }
    }
    out
}

/// `x' = -y`, `y' = x + y (1 - x^2 - y^2)(sum b_{2i,2j} x^{2i} y^{2j})` over
/// `i + j <= n`. Keys are the even exponents `(2i, 2j)`; missing keys are zero.
pub fn kukles_odd(n: u32, b: &BTreeMap<(u32, u32), ParamPoly>) -> Result<PlanarSystem> {
    for &(e1, e2) in b.keys() {
        if e1 % 2 == 1 || e2 % 2 == 1 || e1 / 2 + e2 / 2 > n {
            return Err(Error::BadIndex(e1, e2));
        }
    }
    let s = universe(&b.values().collect::<Vec<_>>());
    let (x, y) = phase(&s);
    let one = PlanarPoly::from_rat(&s, int(1));
    let circle = &(&one - &(&x * &x)) - &(&y * &y);
    let mut sum = PlanarPoly::zero(&s);
    for (&(e1, e2), c) in b {
        sum = &sum + &PlanarPoly::monomial(&s, e1, e2, c.clone());
    }
    let q = &x + &(&(&y * &circle) * &sum);
    Ok(PlanarSystem::new(-y, q, s))
}

/// The odd family with every coefficient symbolic, declared in
/// [`odd_index_pairs`] order.
pub fn kukles_odd_symbolic(n: u32) -> PlanarSystem {
    let pairs = odd_index_pairs(n);
    let s = Symbols::new(pairs.iter().map(|&(i, j)| odd_coeff_name(i, j)));
    let b: BTreeMap<(u32, u32), ParamPoly> = pairs
        .iter()
        .map(|&(i, j)| {
            (
                (2 * i, 2 * j),
                ParamPoly::var(&s, &odd_coeff_name(i, j)).expect("declared"),
            )
        })
        .collect();
    let mut sys = kukles_odd(n, &b).expect("valid indices");
    sys.params = s.clone();
    sys.p = sys.p.in_universe(&s);
    sys.q = sys.q.in_universe(&s);
    sys
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn cubic_has_eight_terms() {
        let sys = kukles_cubic_symbolic();
        assert_eq!(sys.q.len(), 8);
        assert_eq!(sys.q.total_degree(), 3);
        let zero: [ParamPoly; 7] = std::array::from_fn(|_| ParamPoly::from_rat(int(0)));
        assert_eq!(kukles_cubic(&zero), PlanarSystem::linear_center());
    }

    #[test]
    fn jin_wang_instance_is_concrete() {
        let vals = [int(1), int(0), int(-2), rat(-1, 3), int(-1), int(0), rat(1, 3)];
        let a: [ParamPoly; 7] = std::array::from_fn(|i| ParamPoly::from_rat(vals[i].clone()));
        let sys = kukles_cubic(&a);
        assert!(sys.q.is_parameter_free());
        assert_eq!(sys.q.len(), 6);
    }

    #[test]
    fn odd_family_degrees_and_indices() {
        assert_eq!(kukles_odd_symbolic(3).degree(), 9);
        assert_eq!(kukles_odd_symbolic(3).params.len(), 10);
        let mut b = BTreeMap::new();
        b.insert((2, 2), ParamPoly::symbol("b22"));
        assert_eq!(kukles_odd(2, &b).unwrap().degree(), 7);
        b.insert((1, 0), ParamPoly::symbol("z"));
        assert_eq!(kukles_odd(2, &b).unwrap_err(), Error::BadIndex(1, 0));
        let mut b = BTreeMap::new();
        b.insert((4, 2), ParamPoly::symbol("z"));
        assert_eq!(kukles_odd(2, &b).unwrap_err(), Error::BadIndex(4, 2));
    }

    #[test]
    fn deg4_specialization() {
        let c = ParamPoly::symbol("c");
        let z = ParamPoly::from_rat(int(0));
        let sys = kukles_deg4(&z, &z, &c);
        assert_eq!(sys.q.to_string(), "c*y^3 + c*x^2*y - c*y + x");
    }
}

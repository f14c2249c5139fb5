//! Adaptive Gauss–Kronrod (7, 15) quadrature.

use super::system::{FloatPoint, NumericPoly};
use crate::error::{Error, Result};
use crate::sysdef::PerturbedSystem;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = hl * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * hl, ((k - g) * hl).abs())
}

/// `int_a^b f` to absolute error `abs_tol` or relative error `rel_tol`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    let mut parts = vec![(a, b, gk15(&f, a, b))];
    for _ in 0..2000 {
        let total: f64 = parts.iter().map(|p| p.2 .0).sum();
        let err: f64 = parts.iter().map(|p| p.2 .1).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        let (i, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2 .1.total_cmp(&y.1 .2 .1))
            .expect("nonempty");
        let (lo, hi, _) = parts.swap_remove(i);
        let mid = 0.5 * (lo + hi);
        parts.push((lo, mid, gk15(&f, lo, mid)));
        parts.push((mid, hi, gk15(&f, mid, hi)));
    }
    let err: f64 = parts.iter().map(|p| p.2 .1).sum();
    Err(Error::QuadratureNonConvergence(err))
}

/// `int_0^{2 pi} (f1 H_x + g1 H_y) dt` along `x = sqrt(2h) cos t`,
/// `y = -sqrt(2h) sin t`.
pub fn melnikov_quadrature(ps: &PerturbedSystem, params: &FloatPoint, h: f64) -> Result<f64> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidRange(format!("energy level h = {h} must be positive")));
    }
    let f1 = NumericPoly::compile(&ps.f1, params)?;
    let g1 = NumericPoly::compile(&ps.g1, params)?;
    let s = (2.0 * h).sqrt();
    let integrand = |t: f64| {
        let (x, y) = (s * t.cos(), -s * t.sin());
        f1.eval(x, y) * x + g1.eval(x, y) * y
    };
    integrate_adaptive(integrand, 0.0, 2.0 * std::f64::consts::PI, 1e-14, 1e-13)
}

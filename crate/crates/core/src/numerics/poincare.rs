//! First-return map on the section `{y = 0, x > 0}` crossed upwards.

use rayon::prelude::*;
use serde::Serialize;

use super::dopri::{check_tolerance, Dopri};
use super::system::NumericSystem;
use crate::error::{Error, Result};

pub const RETURN_T_MAX: f64 = 1e4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Return {
    pub x1: f64,
    pub period: f64,
}

/// Locates `y(t) = 0` inside one step by safeguarded secant iteration.
fn locate(step: &super::dopri::Step, event_tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (step.t0, step.t1());
    let (mut ya, mut yb) = (step.start()[1], step.end()[1]);
    let mut t = b;
    let mut p = step.end();
    for _ in 0..200 {
        let sec = if yb != ya {
            b - yb * (b - a) / (yb - ya)
        } else {
            0.5 * (a + b)
        };
        t = if sec > a && sec < b { sec } else { 0.5 * (a + b) };
        p = step.eval(t);
        if p[1].abs() < event_tol || b - a < 1e-15 * t.abs().max(1.0) {
            break;
        }
        if p[1] < 0.0 {
            a = t;
            ya = p[1];
            // keep the bracket shrinking from both sides
            yb *= 0.5;
        } else {
            b = t;
            yb = p[1];
            ya *= 0.5;
        }
    }
    (t, p[0])
}

/// `x`-coordinate and time of the first return of `(x0, 0)`.
pub fn poincare_return(sys: &NumericSystem, x0: f64, tol: f64) -> Result<Return> {
    poincare_return_with(sys, x0, tol, 1e-12)
}

pub fn poincare_return_with(sys: &NumericSystem, x0: f64, tol: f64, event_tol: f64) -> Result<Return> {
    if x0.is_nan() || x0 <= 0.0 {
        return Err(Error::InvalidRange(format!("section point x0 = {x0} must be positive")));
    }
    let mut d = Dopri::new(sys, 0.0, [x0, 0.0], tol)?;
    while d.t < RETURN_T_MAX {
        let step = d.step(RETURN_T_MAX)?;
        let (y0, y1) = (step.start()[1], step.end()[1]);
        if y0 < 0.0 && y1 >= 0.0 {
            let (t, x) = locate(&step, event_tol);
            if x > 0.0 {
                return Ok(Return { x1: x, period: t });
            }
        }
    }
    Err(Error::NoReturn(x0))
}

pub fn displacement(sys: &NumericSystem, x0: f64, tol: f64) -> Result<f64> {
    Ok(poincare_return(sys, x0, tol)?.x1 - x0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stability {
    Attracting,
    Repelling,
    SemiStable,
    Inconclusive,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Attracting => "attracting",
            Stability::Repelling => "repelling",
            Stability::SemiStable => "semi-stable",
            Stability::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CycleEstimate {
    #[serde(rename = "x")]
    pub x_cross: f64,
    pub period: f64,
    pub stability: Stability,
    pub residual: f64,
    /// Found as an extremum of the displacement rather than a sign change.
    pub tangential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CycleSearch {
    pub grid: usize,
    /// Integrator tolerance.
    pub tol: f64,
    /// Final bracket width.
    pub width: f64,
}

impl Default for CycleSearch {
    fn default() -> Self {
        CycleSearch {
            grid: 64,
            tol: 1e-10,
            width: 1e-8,
        }
    }
}

fn sign(d: f64, ztol: f64) -> i32 {
    if d.abs() <= ztol {
        0
    } else if d > 0.0 {
        1
    } else {
        -1
    }
}

/// Displacement `d(x)` scanned on a grid of `grid + 1` points over
/// `[lo, hi]`, computed in parallel.
pub fn scan(sys: &NumericSystem, lo: f64, hi: f64, grid: usize, tol: f64) -> Result<Vec<(f64, f64)>> {
    (0..=grid)
        .into_par_iter()
        .map(|k| {
            let x = if k == grid {
                hi
            } else {
                lo + (hi - lo) * k as f64 / grid as f64
            };
            displacement(sys, x, tol).map(|d| (x, d))
        })
        .collect()
}

fn classify(left: i32, right: i32) -> Stability {
    match (left, right) {
        (1, -1) => Stability::Attracting,
        (-1, 1) => Stability::Repelling,
        (1, 1) | (-1, -1) => Stability::SemiStable,
        _ => Stability::Inconclusive,
    }
}

struct Finder<'a> {
    sys: &'a NumericSystem,
    opts: CycleSearch,
    ztol: f64,
    fine_tol: f64,
}

impl Finder<'_> {
    fn d_fine(&self, x: f64) -> Result<f64> {
        displacement(self.sys, x, self.fine_tol)
    }

    fn bisect(&self, mut a: f64, mut b: f64, sa: i32) -> Result<f64> {
        while b - a > self.opts.width {
            let m = 0.5 * (a + b);
            let dm = self.d_fine(m)?;
            let s = sign(dm, self.ztol * 1e-2);
            if s == 0 {
                return Ok(m);
            }
            if s == sa {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }

    /// Five-point derivative of the displacement.
    fn dd(&self, x: f64, h: f64) -> Result<f64> {
        let f = |u: f64| self.d_fine(u);
        Ok((f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h))
    }

    /// Extremum of `d` in `[a, b]`: root of `d'` when bracketed, else a
    /// golden-section minimum of `|d|`.
    fn extremum(&self, a: f64, b: f64) -> Result<f64> {
        let h = (1e-2f64).min((b - a) / 4.0).min(0.25 * a);
        let (ga, gb) = (self.dd(a, h)?, self.dd(b, h)?);
        if ga.signum() != gb.signum() {
            let (mut a, mut b, sa) = (a, b, ga.signum());
            while b - a > self.opts.width {
                let m = 0.5 * (a + b);
                let g = self.dd(m, h)?;
                if g == 0.0 {
                    return Ok(m);
                }
                if g.signum() == sa {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Ok(0.5 * (a + b));
        }
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        let (mut a, mut b) = (a, b);
        let mut c = b - phi * (b - a);
        let mut e = a + phi * (b - a);
        let mut fc = self.d_fine(c)?.abs();
        let mut fe = self.d_fine(e)?.abs();
        while b - a > self.opts.width {
            if fc < fe {
                b = e;
                e = c;
                fe = fc;
                c = b - phi * (b - a);
                fc = self.d_fine(c)?.abs();
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + phi * (b - a);
                fe = self.d_fine(e)?.abs();
            }
        }
        Ok(0.5 * (a + b))
    }

    fn estimate(&self, x: f64, stability: Stability, tangential: bool) -> Result<Option<CycleEstimate>> {
        let r = poincare_return(self.sys, x, self.fine_tol)?;
        let residual = (r.x1 - x).abs();
        if residual > self.ztol {
            return Ok(None);
        }
        Ok(Some(CycleEstimate {
            x_cross: x,
            period: r.period,
            stability,
            residual,
            tangential,
        }))
    }
}

/// Limit cycles crossing `(lo, hi)` on the positive x-axis.
///
/// Sign changes of `d` are bisected; a local extremum of `|d|` without a
/// sign change, or a short run of grid values within `10 tol` of zero, is
/// refined as a tangential zero. Longer zero runs are treated as a period
/// annulus and not reported.
pub fn find_cycles(sys: &NumericSystem, lo: f64, hi: f64, opts: CycleSearch) -> Result<Vec<CycleEstimate>> {
    check_tolerance(opts.tol)?;
    if !(lo > 0.0 && lo < hi) || opts.grid < 2 {
        return Err(Error::InvalidRange(format!(
            "need 0 < lo < hi and grid >= 2, got ({lo}, {hi}), {}",
            opts.grid
        )));
    }
    let f = Finder {
        sys,
        opts,
        ztol: 10.0 * opts.tol,
        fine_tol: (opts.tol * 1e-2).max(1e-13),
    };
    let pts = scan(sys, lo, hi, opts.grid, opts.tol)?;
    let s: Vec<i32> = pts.iter().map(|&(_, d)| sign(d, f.ztol)).collect();
    let n = pts.len();
    let mut out = Vec::new();
    let mut k = 0;
    while k < n {
        if s[k] == 0 {
            let start = k;
            while k < n && s[k] == 0 {
                k += 1;
            }
            let end = k - 1;
            if end - start >= 2 {
                continue;
            }
            let left = if start > 0 { s[start - 1] } else { 0 };
            let right = if end + 1 < n { s[end + 1] } else { 0 };
            let a = pts[start.saturating_sub(1)].0;
            let b = pts[(end + 1).min(n - 1)].0;
            let st = classify(left, right);
            let x = if left != 0 && right != 0 && left != right {
                f.bisect(a, b, left)?
            } else if left != 0 && right != 0 {
                f.extremum(a, b)?
            } else {
                0.5 * (pts[start].0 + pts[end].0)
            };
            if let Some(c) = f.estimate(x, st, left == right)? {
                out.push(c);
            }
            continue;
        }
        if k + 1 < n && s[k + 1] == -s[k] {
            let x = f.bisect(pts[k].0, pts[k + 1].0, s[k])?;
            if let Some(c) = f.estimate(x, classify(s[k], s[k + 1]), false)? {
                out.push(c);
            }
        } else if k > 0
            && k + 1 < n
            && s[k - 1] == s[k]
            && s[k + 1] == s[k]
            && pts[k].1.abs() < pts[k - 1].1.abs()
            && pts[k].1.abs() < pts[k + 1].1.abs()
        {
            let x = f.extremum(pts[k - 1].0, pts[k + 1].0)?;
            if let Some(c) = f.estimate(x, Stability::SemiStable, true)? {
                out.push(c);
            }
        }
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysdef::PlanarSystem;

    #[test]
    fn linear_center_identity_return() {
        let ns = NumericSystem::compile(&PlanarSystem::linear_center(), &Default::default()).unwrap();
        let tol = 1e-10;
        let r = poincare_return(&ns, 0.7, tol).unwrap();
        assert!((r.x1 - 0.7).abs() < 10.0 * tol);
        assert!((r.period - 2.0 * std::f64::consts::PI).abs() < 1e-8);
        let cycles = find_cycles(&ns, 0.2, 1.8, CycleSearch::default()).unwrap();
        assert!(cycles.is_empty());
        assert!(matches!(poincare_return(&ns, -1.0, tol), Err(Error::InvalidRange(_))));
    }
}

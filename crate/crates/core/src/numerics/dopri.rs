//! Dormand–Prince 5(4) with Hairer's continuous extension of order 4.

use super::system::NumericSystem;
use crate::error::{Error, Result};

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

pub const BLOWUP_NORM: f64 = 1e6;

type V = [f64; 2];

#[inline]
fn axpy(y: &V, h: f64, terms: &[(f64, &V)]) -> V {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

pub fn check_tolerance(tol: f64) -> Result<()> {
    if !(1e-13..=1e-3).contains(&tol) {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(())
}

/// One accepted step with its interpolation data.
#[derive(Clone, Debug)]
pub struct Step {
    pub t0: f64,
    pub h: f64,
    rcont: [V; 5],
}

impl Step {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    pub fn start(&self) -> V {
        self.rcont[0]
    }

    pub fn end(&self) -> V {
        [self.rcont[0][0] + self.rcont[1][0], self.rcont[0][1] + self.rcont[1][1]]
    }

    /// Dense output at `t` in `[t0, t0 + h]`.
    pub fn eval(&self, t: f64) -> V {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        let r = &self.rcont;
        let mut out = [0.0; 2];
        for i in 0..2 {
            out[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        }
        out
    }
}

/// Adaptive integrator state.
pub struct Dopri<'a> {
    sys: &'a NumericSystem,
    pub t: f64,
    pub y: V,
    k1: V,
    h: f64,
    rtol: f64,
    atol: f64,
    pub steps: usize,
}

impl<'a> Dopri<'a> {
    pub fn new(sys: &'a NumericSystem, t0: f64, y0: V, tol: f64) -> Result<Self> {
        check_tolerance(tol)?;
        let k1 = sys.field(y0[0], y0[1]);
        let mut d = Dopri {
            sys,
            t: t0,
            y: y0,
            k1,
            h: 0.0,
            rtol: tol,
            atol: tol,
            steps: 0,
        };
        d.h = d.initial_step();
        Ok(d)
    }

    fn f(&self, y: &V) -> V {
        self.sys.field(y[0], y[1])
    }

    fn scale(&self, a: f64, b: f64) -> f64 {
        self.atol + self.rtol * a.abs().max(b.abs())
    }

    fn initial_step(&self) -> f64 {
        let sc = [self.scale(self.y[0], 0.0), self.scale(self.y[1], 0.0)];
        let d0 = ((self.y[0] / sc[0]).powi(2) + (self.y[1] / sc[1]).powi(2)).sqrt() / 2f64.sqrt();
        let d1 = ((self.k1[0] / sc[0]).powi(2) + (self.k1[1] / sc[1]).powi(2)).sqrt() / 2f64.sqrt();
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let y1 = axpy(&self.y, h0, &[(1.0, &self.k1)]);
        let f1 = self.f(&y1);
        let d2 =
            (((f1[0] - self.k1[0]) / sc[0]).powi(2) + ((f1[1] - self.k1[1]) / sc[1]).powi(2)).sqrt() / 2f64.sqrt() / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        (100.0 * h0).min(h1).min(0.1)
    }

    /// Advances by one accepted step, not beyond `t_end`.
    pub fn step(&mut self, t_end: f64) -> Result<Step> {
        let mut rejected = false;
        loop {
            let mut h = self.h.min(t_end - self.t);
            if h <= 1e-14 * self.t.abs().max(1.0) {
                if t_end - self.t <= 1e-14 * self.t.abs().max(1.0) {
                    h = t_end - self.t;
                } else {
                    return Err(Error::StepSizeUnderflow(self.t));
                }
            }
            let y = self.y;
            let k1 = self.k1;
            let k2 = self.f(&axpy(&y, h, &[(A21, &k1)]));
            let k3 = self.f(&axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = self.f(&axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = self.f(&axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
            let k6 = self.f(&axpy(
                &y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ));
            let y1 = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
            let k7 = self.f(&y1);
            let mut err = 0.0;
            for i in 0..2 {
                let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = self.scale(y[i], y1[i]);
                err += (e / sc).powi(2);
            }
            let err = (err / 2.0).sqrt();
            if !err.is_finite() {
                return Err(Error::Blowup(self.t));
            }
            let fac = if err == 0.0 {
                10.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 10.0)
            };
            if err <= 1.0 {
                let mut rcont = [[0.0; 2]; 5];
                for i in 0..2 {
                    let ydiff = y1[i] - y[i];
                    let bspl = h * k1[i] - ydiff;
                    rcont[0][i] = y[i];
                    rcont[1][i] = ydiff;
                    rcont[2][i] = bspl;
                    rcont[3][i] = ydiff - h * k7[i] - bspl;
                    rcont[4][i] = h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
                }
                let step = Step { t0: self.t, h, rcont };
                self.t += h;
                self.y = y1;
                self.k1 = k7;
                self.steps += 1;
                self.h = if rejected { h * fac.min(1.0) } else { h * fac };
                if y1[0].hypot(y1[1]) > BLOWUP_NORM {
                    return Err(Error::Blowup(self.t));
                }
                return Ok(step);
            }
            rejected = true;
            self.h = h * fac;
        }
    }
}

/// Dense trajectory on `[t0, t_end]`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub steps: Vec<Step>,
}

impl Trajectory {
    pub fn t_end(&self) -> f64 {
        self.steps.last().map(|s| s.t1()).unwrap_or(0.0)
    }

    pub fn end(&self) -> V {
        self.steps.last().map(|s| s.end()).unwrap_or([0.0; 2])
    }

    pub fn eval(&self, t: f64) -> Option<V> {
        let i = self.steps.partition_point(|s| s.t1() < t);
        self.steps.get(i).filter(|s| s.t0 <= t).map(|s| s.eval(t))
    }

    /// `samples + 1` equally spaced points of the dense output.
    pub fn sample(&self, samples: usize) -> Vec<(f64, V)> {
        let (Some(first), Some(_)) = (self.steps.first(), self.steps.last()) else {
            return Vec::new();
        };
        let (t0, t1) = (first.t0, self.t_end());
        (0..=samples)
            .map(|k| {
                let t = if k == samples {
                    t1
                } else {
                    t0 + (t1 - t0) * k as f64 / samples as f64
                };
                (t, self.eval(t).expect("inside the trajectory"))
            })
            .collect()
    }

    pub fn to_csv(&self, samples: usize) -> String {
        let mut out = String::from("t,x,y\n");
        for (t, [x, y]) in self.sample(samples) {
            out.push_str(&format!("{t},{x},{y}\n"));
        }
        out
    }
}

/// Integrates from `x0` over `[0, t_max]` keeping the dense output.
pub fn integrate(sys: &NumericSystem, x0: V, t_max: f64, tol: f64) -> Result<Trajectory> {
    let mut d = Dopri::new(sys, 0.0, x0, tol)?;
    let mut steps = Vec::new();
    while d.t < t_max {
        steps.push(d.step(t_max)?);
    }
    Ok(Trajectory { steps })
}

/// Like [`integrate`], but stops without error once the state leaves the
/// disk of radius `radius`.
pub fn integrate_within(sys: &NumericSystem, x0: V, t_max: f64, tol: f64, radius: f64) -> Result<Trajectory> {
    let mut d = Dopri::new(sys, 0.0, x0, tol)?;
    let mut steps = Vec::new();
    while d.t < t_max {
        let s = d.step(t_max)?;
        let [x, y] = s.end();
        steps.push(s);
        if x.hypot(y) > radius {
            break;
        }
    }
    Ok(Trajectory { steps })
}

//! Focal values and Lyapunov quantities at a weak focus.
//!
//! For `x' = -y + p`, `y' = x + q` a formal Lyapunov function
//! `V = (x^2+y^2)/2 + V_3 + V_4 + ...` is built degree by degree so that
//! `V' = sum eta_{2k} (x^2+y^2)^k`. On each degree the rotation operator
//! `-y d/dx + x d/dy` is inverted; for even degrees the component of `V_k`
//! with zero mean on the unit circle is kept and `eta_k` absorbs the rest.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::linalg::RatMatrix;
use crate::algebra::{int, rat, ParamPoly, PlanarPoly, Rat, Symbols};
use crate::error::{Error, Result};
use crate::melnikov::wallis::circle_mean;
use crate::sysdef::PlanarSystem;

/// `V_3 .. V_N` and `eta_2, eta_4, .. eta_N` with the residual identity checked.
#[derive(Clone, Debug)]
pub struct LyapunovCertificate {
    /// `v_parts[i]` is the homogeneous part of degree `i + 3`.
    pub v_parts: Vec<PlanarPoly>,
    /// `etas[i]` is `eta_{2i+2}`.
    pub etas: Vec<ParamPoly>,
    pub residual_ok: bool,
}

impl LyapunovCertificate {
    pub fn eta(&self, k: usize) -> Option<&ParamPoly> {
        if k < 2 || k % 2 == 1 {
            return None;
        }
        self.etas.get(k / 2 - 1)
    }
}

fn binom(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Inverse of the degree-`k` system: unknowns `v_0..v_k` (coefficients of
/// `x^{k-j} y^j`) and, for even `k`, `eta`; the extra row is the gauge.
fn degree_inverse(k: u32) -> RatMatrix {
    let n = k as usize + 1;
    let even = k.is_multiple_of(2);
    let size = if even { n + 1 } else { n };
    let mut m = RatMatrix::zeros(size, size);
    for j in 0..n {
        if j + 1 < n {
            m.set(j + 1, j, int(-((k as i64) - j as i64)));
        }
        if j >= 1 {
            m.set(j - 1, j, int(j as i64));
        }
    }
    if even {
        for i in 0..=(k / 2) {
            m.set(2 * i as usize, n, -Rat::from_integer(binom(k / 2, i)));
        }
        for j in 0..n {
            m.set(n, j, circle_mean(k - j as u32, j as u32));
        }
    }
    m.inverse()
        .expect("rotation operator is invertible on the gauged space")
}

fn inverse_cache() -> &'static std::sync::Mutex<HashMap<u32, Arc<RatMatrix>>> {
    static CACHE: std::sync::OnceLock<std::sync::Mutex<HashMap<u32, Arc<RatMatrix>>>> = std::sync::OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn inverse_for(k: u32) -> Arc<RatMatrix> {
    if let Some(m) = inverse_cache().lock().expect("cache lock").get(&k) {
        return m.clone();
    }
    let m = Arc::new(degree_inverse(k));
    inverse_cache().lock().expect("cache lock").insert(k, m.clone());
    m
}

/// Half the trace of the linearization at the origin.
pub fn lyapunov_l0(sys: &PlanarSystem) -> Result<ParamPoly> {
    let [[p10, p01], [q10, q01]] = sys.linear_part();
    if p01 != ParamPoly::from_rat(int(-1)) || q10 != ParamPoly::from_rat(int(1)) {
        return Err(Error::NotCenterFocus(format!(
            "linearization [[{p10}, {p01}], [{q10}, {q01}]]"
        )));
    }
    Ok((&p10 + &q01).scale(&rat(1, 2)))
}

fn check_normal_form(sys: &PlanarSystem) -> Result<()> {
    let [[p10, p01], [q10, q01]] = sys.linear_part();
    let wrong = || Error::WrongLinearPart(format!("[[{p10}, {p01}], [{q10}, {q01}]]"));
    if !sys.origin_is_singular() {
        return Err(Error::WrongLinearPart("origin is not a singular point".into()));
    }
    if p01 != ParamPoly::from_rat(int(-1)) || q10 != ParamPoly::from_rat(int(1)) {
        return Err(wrong());
    }
    let lambda = (&p10 + &q01).scale(&rat(1, 2));
    if !lambda.is_zero() {
        return Err(Error::NonzeroLinearTrace(lambda.to_string()));
    }
    if !p10.is_zero() {
        return Err(wrong());
    }
    Ok(())
}

/// Incremental focal-value computation that survives parameter substitution.
///
/// Substitution is a ring homomorphism and the gauge is linear, so the
/// stored `V_j` and `eta_j` transform into the solution for the substituted
/// system; only higher degrees are solved afresh.
#[derive(Clone, Debug)]
pub struct FocalEngine {
    sys: PlanarSystem,
    p_parts: Vec<PlanarPoly>,
    q_parts: Vec<PlanarPoly>,
    /// `v[j]` homogeneous of degree `j`; `v[0], v[1]` unused zeros.
    v: Vec<PlanarPoly>,
    dv: Vec<(PlanarPoly, PlanarPoly)>,
    /// `eta[k]` for every computed degree (zero for odd `k`).
    eta: Vec<ParamPoly>,
}

impl FocalEngine {
    pub fn new(sys: &PlanarSystem) -> Result<Self> {
        check_normal_form(sys)?;
        let s = sys.params.clone();
        let d = sys.degree();
        let p_parts = (0..=d).map(|m| sys.p.homogeneous_part(m)).collect();
        let q_parts = (0..=d).map(|m| sys.q.homogeneous_part(m)).collect();
        let x = PlanarPoly::x(&s);
        let y = PlanarPoly::y(&s);
        let v2 = (&(&x * &x) + &(&y * &y)).scale_rat(&rat(1, 2));
        let zero = PlanarPoly::zero(&s);
        let zp = ParamPoly::zero(&s);
        Ok(FocalEngine {
            sys: sys.clone(),
            p_parts,
            q_parts,
            v: vec![zero.clone(), zero.clone(), v2.clone()],
            dv: vec![(zero.clone(), zero.clone()), (zero.clone(), zero), (v2.dx(), v2.dy())],
            eta: vec![zp.clone(), zp.clone(), zp],
        })
    }

    pub fn system(&self) -> &PlanarSystem {
        &self.sys
    }

    pub fn symbols(&self) -> &Symbols {
        &self.sys.params
    }

    /// Highest degree solved so far.
    pub fn degree(&self) -> u32 {
        self.v.len() as u32 - 1
    }

    fn part(parts: &[PlanarPoly], m: u32) -> Option<&PlanarPoly> {
        parts.get(m as usize).filter(|p| !p.is_zero())
    }

    fn solve_degree(&mut self, k: u32) {
        let s = self.sys.params.clone();
        let mut sum = PlanarPoly::zero(&s);
        for j in 2..k {
            let m = k - j + 1;
            let (dx, dy) = &self.dv[j as usize];
            if let Some(pm) = Self::part(&self.p_parts, m) {
                if !dx.is_zero() {
                    sum = &sum + &(dx * pm);
                }
            }
            if let Some(qm) = Self::part(&self.q_parts, m) {
                if !dy.is_zero() {
                    sum = &sum + &(dy * qm);
                }
            }
        }
        let n = k as usize + 1;
        let even = k.is_multiple_of(2);
        let mut rhs: Vec<ParamPoly> = (0..n).map(|j| -sum.coeff(k - j as u32, j as u32)).collect();
        if even {
            rhs.push(ParamPoly::zero(&s));
        }
        let sol = inverse_for(k).apply(&rhs);
        let vk = PlanarPoly::from_terms(&s, (0..n).map(|j| ((k - j as u32, j as u32), sol[j].clone())));
        let eta = if even { sol[n].clone() } else { ParamPoly::zero(&s) };
        self.dv.push((vk.dx(), vk.dy()));
        self.v.push(vk);
        self.eta.push(eta.in_universe(&s));
    }

    /// Solves every degree up to `n`.
    pub fn extend_to(&mut self, n: u32) {
        while self.degree() < n {
            let k = self.degree() + 1;
            self.solve_degree(k);
        }
    }

    /// `eta_k`, solving as needed.
    pub fn eta(&mut self, k: u32) -> ParamPoly {
        self.extend_to(k);
        self.eta[k as usize].clone()
    }

    /// Lyapunov quantity `L(k) = eta_{2k+2}` for `k >= 1`.
    pub fn quantity(&mut self, k: usize) -> ParamPoly {
        self.eta(2 * k as u32 + 2)
    }

    pub fn substitute(&mut self, bindings: &[(String, ParamPoly)]) -> Result<()> {
        let sys = self.sys.substitute(bindings)?;
        check_normal_form(&sys)?;
        let s = sys.params.clone();
        let sub = |p: &PlanarPoly| p.substitute_lenient(bindings).in_universe(&s);
        self.p_parts = self.p_parts.iter().map(sub).collect();
        self.q_parts = self.q_parts.iter().map(sub).collect();
        self.v = self.v.iter().map(sub).collect();
        self.dv = self.dv.iter().map(|(a, b)| (sub(a), sub(b))).collect();
        self.eta = self
            .eta
            .iter()
            .map(|e| e.substitute_lenient(bindings).in_universe(&s))
            .collect();
        self.sys = sys;
        Ok(())
    }

    /// Checks `V' - sum eta_k r^k` has no terms of degree `<=` the solved degree.
    pub fn residual_ok(&self) -> bool {
        let n = self.degree();
        let s = &self.sys.params;
        let mut v = PlanarPoly::zero(s);
        for part in &self.v {
            v = &v + part;
        }
        let vdot = &v.dx().mul_truncated(&self.sys.p, n) + &v.dy().mul_truncated(&self.sys.q, n);
        let x = PlanarPoly::x(s);
        let y = PlanarPoly::y(s);
        let r2 = &(&x * &x) + &(&y * &y);
        let mut target = PlanarPoly::zero(s);
        let mut rk = PlanarPoly::from_rat(s, Rat::one());
        for k in (2..=n).step_by(2) {
            rk = &rk * &r2;
            target = &target + &rk.scale(&self.eta[k as usize]);
        }
        (&vdot - &target).truncate(n).is_zero()
    }

    pub fn certificate(&self) -> Result<LyapunovCertificate> {
        let ok = self.residual_ok();
        if !ok {
            return Err(Error::Internal("Lyapunov residual identity failed".into()));
        }
        let n = self.degree();
        Ok(LyapunovCertificate {
            v_parts: self.v.iter().skip(3).cloned().collect(),
            etas: (2..=n).step_by(2).map(|k| self.eta[k as usize].clone()).collect(),
            residual_ok: ok,
        })
    }
}

/// Focal values up to `eta_{max_eta}`; `max_eta` must be even and `>= 2`.
pub fn focal_values(sys: &PlanarSystem, max_eta: usize) -> Result<LyapunovCertificate> {
    if max_eta < 2 || max_eta % 2 == 1 {
        return Err(Error::InvalidOrder(max_eta));
    }
    let mut e = FocalEngine::new(sys)?;
    e.extend_to(max_eta as u32);
    e.certificate()
}

/// One reported Lyapunov quantity.
#[derive(Clone, Debug, PartialEq)]
pub struct FocalEntry {
    pub k: usize,
    pub value: ParamPoly,
    /// Positive rational content (zero when the value vanishes).
    pub content: Rat,
    /// Primitive part; zero when the value vanishes.
    pub primitive: ParamPoly,
    /// Powers of single symbols dividing the value, e.g. `b02^2`.
    pub monomial_factors: Vec<(String, u32)>,
    /// Whether this entry was recorded just before a restriction step.
    pub before_restriction: bool,
}

impl FocalEntry {
    fn new(k: usize, value: ParamPoly, before_restriction: bool) -> Self {
        let (content, primitive) = value
            .content_and_primitive()
            .unwrap_or_else(|_| (Rat::zero(), value.clone()));
        FocalEntry {
            k,
            monomial_factors: value.monomial_factor(),
            value,
            content,
            primitive,
            before_restriction,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Monomial factors of even exponent, reported but not removed.
    pub fn even_factors(&self) -> Vec<(String, u32)> {
        self.monomial_factors
            .iter()
            .filter(|(_, e)| e % 2 == 0)
            .cloned()
            .collect()
    }
}

/// A step of the interactive reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainStep {
    /// Index `k` whose quantity the bindings must annihilate; `None` for a
    /// restriction that is applied without a vanishing requirement.
    pub vanishes: Option<usize>,
    pub bindings: Vec<(String, ParamPoly)>,
}

impl ChainStep {
    pub fn vanishing(k: usize, bindings: Vec<(String, ParamPoly)>) -> Self {
        ChainStep {
            vanishes: Some(k),
            bindings,
        }
    }

    pub fn restriction(bindings: Vec<(String, ParamPoly)>) -> Self {
        ChainStep {
            vanishes: None,
            bindings,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FocalSequence {
    /// `L(0) = lambda` of the input system.
    pub l0: ParamPoly,
    /// Reported quantities `L(k)`, `k >= 1`, in the order computed.
    pub entries: Vec<FocalEntry>,
    pub steps: Vec<ChainStep>,
    pub residual_ok: bool,
    /// System after all substitutions.
    pub reduced: PlanarSystem,
    /// Highest focal degree solved.
    pub max_eta: u32,
}

/// Resolves bindings that mention other symbols bound in the same step, so
/// that `b04 = 2*b02 + b40, b40 = 0` means what it says.
pub fn close_bindings(bindings: &[(String, ParamPoly)]) -> Vec<(String, ParamPoly)> {
    let mut out: Vec<(String, ParamPoly)> = bindings.to_vec();
    for _ in 0..=bindings.len() {
        let snapshot = out.clone();
        let mut changed = false;
        for (name, img) in out.iter_mut() {
            let others: Vec<(String, ParamPoly)> = snapshot.iter().filter(|(n, _)| n != name).cloned().collect();
            let next = img.substitute_lenient(&others);
            if &next != img {
                *img = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    out
}

/// Replays a reduction: L(0) then, per step, the quantity it annihilates.
/// After the last step, quantities are reported up to the first nonzero one
/// or `max_k`.
pub fn lyapunov_chain(sys: &PlanarSystem, steps: &[ChainStep], max_k: usize) -> Result<FocalSequence> {
    let l0 = lyapunov_l0(sys)?;
    let mut current = sys.clone();
    let mut entries = Vec::new();
    let mut engine: Option<FocalEngine> = None;
    let mut next_k = 0usize;
    for (idx, step) in steps.iter().enumerate() {
        let step_no = idx + 1;
        let bindings = close_bindings(&step.bindings);
        for (name, _) in &bindings {
            if !current.params.contains(name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        let lambda = lyapunov_l0(&current)?;
        let target = match step.vanishes {
            Some(k) => k,
            None => next_k,
        };
        if target == 0 {
            if step.vanishes.is_some() {
                let rem = lambda.substitute(&bindings)?;
                if !rem.is_zero() {
                    return Err(Error::SubstitutionDoesNotVanish {
                        step: step_no,
                        k: 0,
                        remainder: rem.to_string(),
                    });
                }
                next_k = 1;
            }
            current = current.substitute(&bindings)?;
            if let Some(e) = engine.as_mut() {
                e.substitute(&bindings)?;
            }
            continue;
        }
        if !lambda.is_zero() {
            return Err(Error::SubstitutionDoesNotVanish {
                step: step_no,
                k: 0,
                remainder: lambda.to_string(),
            });
        }
        let e = match engine.as_mut() {
            Some(e) => e,
            None => engine.insert(FocalEngine::new(&current)?),
        };
        for j in next_k.max(1)..target {
            let earlier = e.quantity(j);
            if !earlier.is_zero() {
                return Err(Error::SubstitutionDoesNotVanish {
                    step: step_no,
                    k: j,
                    remainder: earlier.to_string(),
                });
            }
        }
        let value = e.quantity(target);
        entries.push(FocalEntry::new(target, value.clone(), step.vanishes.is_none()));
        if step.vanishes.is_some() {
            let rem = value.substitute(&bindings)?;
            if !rem.is_zero() {
                return Err(Error::SubstitutionDoesNotVanish {
                    step: step_no,
                    k: target,
                    remainder: rem.to_string(),
                });
            }
            next_k = target + 1;
        } else {
            next_k = target;
        }
        e.substitute(&bindings)?;
        current = current.substitute(&bindings)?;
    }
    let lambda = lyapunov_l0(&current)?;
    if !lambda.is_zero() {
        // Nothing beyond L(0) is defined while the trace is nonzero.
        return Ok(FocalSequence {
            l0,
            entries,
            steps: steps.to_vec(),
            residual_ok: true,
            reduced: current,
            max_eta: 0,
        });
    }
    let e = match engine.as_mut() {
        Some(e) => e,
        None => engine.insert(FocalEngine::new(&current)?),
    };
    let mut k = next_k.max(1);
    while k <= max_k {
        let value = e.quantity(k);
        let nonzero = !value.is_zero();
        entries.push(FocalEntry::new(k, value, false));
        if nonzero {
            break;
        }
        k += 1;
    }
    let residual_ok = e.residual_ok();
    if !residual_ok {
        return Err(Error::Internal("Lyapunov residual identity failed".into()));
    }
    Ok(FocalSequence {
        l0,
        entries,
        steps: steps.to_vec(),
        residual_ok,
        reduced: current,
        max_eta: e.degree(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakFocusOrder {
    Order(usize),
    CenterUpTo(usize),
}

/// Smallest `k` with `L(k)` not identically zero, up to `max_k`.
pub fn weak_focus_order(sys: &PlanarSystem, max_k: usize) -> Result<WeakFocusOrder> {
    if max_k == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mut e = FocalEngine::new(sys)?;
    for k in 1..=max_k {
        if !e.quantity(k).is_zero() {
            return Ok(WeakFocusOrder::Order(k));
        }
    }
    if !e.residual_ok() {
        return Err(Error::Internal("Lyapunov residual identity failed".into()));
    }
    Ok(WeakFocusOrder::CenterUpTo(max_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysdef::{kukles_deg4_symbolic, parse_param_expr};

    fn bind(sys: &PlanarSystem, name: &str, expr: &str) -> (String, ParamPoly) {
        (name.to_string(), parse_param_expr(expr, &sys.params).unwrap())
    }

    #[test]
    fn rotation_solve_reproduces_rhs() {
        for k in 3..12u32 {
            let inv = degree_inverse(k);
            let n = k as usize + 1;
            let size = inv.rows();
            // forward matrix from the inverse, then check the operator rows
            let fwd = inv.inverse().unwrap();
            for j in 0..n {
                for i in 0..n {
                    let want = if i == j + 1 {
                        int(-((k as i64) - j as i64))
                    } else if i + 1 == j {
                        int(j as i64)
                    } else {
                        int(0)
                    };
                    assert_eq!(fwd.get(i, j), &want);
                }
            }
            assert_eq!(size, if k.is_multiple_of(2) { n + 1 } else { n });
        }
    }

    #[test]
    fn degree_four_weak_focus() {
        let sys = kukles_deg4_symbolic();
        let c0 = sys.substitute(&[bind(&sys, "c", "0")]).unwrap();
        let cert = focal_values(&c0, 4).unwrap();
        assert!(cert.residual_ok);
        assert!(cert.eta(2).unwrap().is_zero());
        assert_eq!(cert.eta(4).unwrap().to_string(), "-1/8*a*b");
    }

    #[test]
    fn trace_must_vanish_first() {
        let sys = kukles_deg4_symbolic();
        assert_eq!(lyapunov_l0(&sys).unwrap().to_string(), "-1/2*c");
        assert!(matches!(focal_values(&sys, 4), Err(Error::NonzeroLinearTrace(_))));
        assert_eq!(focal_values(&sys, 3).unwrap_err(), Error::InvalidOrder(3));
    }

    #[test]
    fn linear_center_is_center() {
        let sys = PlanarSystem::linear_center();
        assert_eq!(weak_focus_order(&sys, 6).unwrap(), WeakFocusOrder::CenterUpTo(6));
        assert!(lyapunov_l0(&sys).unwrap().is_zero());
    }

    #[test]
    fn close_bindings_resolves_same_step_references() {
        let s = Symbols::new(["b04", "b02", "b40"]);
        let b = vec![
            ("b04".to_string(), parse_param_expr("2*b02+b40", &s).unwrap()),
            ("b40".to_string(), parse_param_expr("0", &s).unwrap()),
        ];
        let c = close_bindings(&b);
        assert_eq!(c[0].1.to_string(), "2*b02");
    }
}

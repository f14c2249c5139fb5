use std::fmt::Write;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use serde_json::{json, Value};

use cyclelab::algebra::univariate::{self, RootInterval, UPoly};
use cyclelab::algebra::{fmt_rat, parse_rat, HPiPoly, ParamPoly, PlanarPoly, Point, Rat};
use cyclelab::invariants::{cofactor, dulac_divergence, symmetry_center_check};
use cyclelab::lyapunov::{lyapunov_chain, weak_focus_order, WeakFocusOrder};
use cyclelab::melnikov::{b_coeffs, melnikov1, melnikov2, MelnikovResult};
use cyclelab::numerics::{
    check_tolerance, default_tolerance, find_cycles, integrate, integrate_within, CycleSearch, NumericSystem,
};
use cyclelab::reproduce::{Golden, Suite};
use cyclelab::sysdef::{eps_rescale, kukles_conditions, parse_expr, parse_system, PerturbedSystem, PlanarSystem};
use cyclelab::Error;

use crate::args;
use crate::svg::Portrait;
use crate::Failure;

/// Human-readable text plus the JSON form of the same result.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Set when the command completed but its verdict is negative.
    pub failed: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            failed: false,
        }
    }
}

pub fn load_system(path: &Path) -> Result<PlanarSystem, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_system(&text)?)
}

fn substituted(sys: PlanarSystem, subst: Option<&str>) -> Result<PlanarSystem, Failure> {
    match subst {
        Some(s) => Ok(sys.substitute(&args::substitutions(&sys, s)?)?),
        None => Ok(sys),
    }
}

fn tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    match flag {
        Some(t) => {
            check_tolerance(t)?;
            Ok(t)
        }
        None => Ok(default_tolerance()?),
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), Failure> {
    std::fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn lyap(file: &Path, max_order: usize, subst: Option<&str>, steps: &[String]) -> Result<Report, Failure> {
    if max_order == 0 {
        return Err(Error::InvalidOrder(0).into());
    }
    let sys = substituted(load_system(file)?, subst)?;
    let steps = steps
        .iter()
        .map(|s| args::chain_step(&sys, s))
        .collect::<Result<Vec<_>, _>>()?;
    let seq = lyapunov_chain(&sys, &steps, max_order)?;
    let mut text = format!("L(0) = {}\n", seq.l0);
    let mut entries = Vec::new();
    for e in &seq.entries {
        let _ = write!(text, "L({}) = {}", e.k, e.value);
        if !e.is_zero() {
            let _ = write!(text, "    [= {} * ({})]", fmt_rat(&e.content), e.primitive);
        }
        text.push('\n');
        entries.push(json!({
            "k": e.k,
            "value": e.value.to_string(),
            "content": fmt_rat(&e.content),
            "primitive": e.primitive.to_string(),
            "monomial_factors": e.monomial_factors,
        }));
    }
    let last_reduced = seq.entries.last().filter(|e| !e.before_restriction);
    let all_zero = seq.l0.is_zero() && seq.entries.iter().all(|e| e.is_zero());
    let verdict = if !seq.l0.is_zero() && seq.entries.is_empty() {
        "L(0) is nonzero".to_string()
    } else if all_zero {
        format!("all quantities up to L({max_order}) vanish identically")
    } else {
        match last_reduced {
            Some(e) if !e.is_zero() => format!("first nonzero quantity: L({})", e.k),
            _ => "chain ended before the final system was examined".to_string(),
        }
    };
    let _ = writeln!(text, "{verdict}");
    let json = json!({
        "l0": seq.l0.to_string(),
        "entries": entries,
        "all_zero": all_zero,
        "max_eta": seq.max_eta,
        "residual_ok": seq.residual_ok,
        "reduced": {"dx": seq.reduced.p.to_string(), "dy": seq.reduced.q.to_string()},
    });
    Ok(Report::ok(text, json))
}

/// Rescales the named parameters, trying time reversal when the linear part
/// has the opposite orientation.
fn perturbed(sys: &PlanarSystem, eps: Option<&str>) -> Result<PerturbedSystem, Failure> {
    let names: Vec<String> = match eps {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
        None if !sys.perturbation_params.is_empty() => sys.perturbation_params.clone(),
        None => sys.params.names().to_vec(),
    };
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    match eps_rescale(sys, &refs, false) {
        Ok(ps) => Ok(ps),
        Err(Error::NotPerturbationOfLinearCenter(msg)) => match eps_rescale(sys, &refs, true) {
            Ok(ps) => Ok(ps),
            Err(Error::NotPerturbationOfLinearCenter(_)) => Err(Error::NotPerturbationOfLinearCenter(msg).into()),
            Err(e) => Err(e.into()),
        },
        Err(e) => Err(e.into()),
    }
}

fn ratio(c: &ParamPoly, base: &ParamPoly) -> Option<Rat> {
    let (m, v) = base.leading()?;
    let (mc, vc) = c.leading()?;
    if m != mc {
        return None;
    }
    let r = vc / v;
    (c == &base.scale(&r)).then_some(r)
}

/// Positive real roots of `M`, after binding `point`. When parameters remain
/// but factor out of every coefficient, the factor is removed and named.
fn melnikov_roots(m: &HPiPoly, point: &Point) -> (Option<Vec<RootInterval>>, Option<String>) {
    let zero = Rat::zero();
    if let Ok(coeffs) = m.rational_coeffs_at(point) {
        return (
            Some(univariate::isolate_real_roots(&UPoly::new(coeffs), &zero, None)),
            None,
        );
    }
    let bound: Vec<(u32, ParamPoly)> = m.coeffs().map(|(k, c)| (*k, c.partial_eval(point))).collect();
    let Some(base) = bound.iter().map(|(_, c)| c).find(|c| !c.is_zero()).cloned() else {
        return (Some(Vec::new()), None);
    };
    let mut coeffs = vec![Rat::zero(); m.degree() as usize + 1];
    for (k, c) in &bound {
        match ratio(c, &base) {
            Some(r) => coeffs[*k as usize] = r,
            None if c.is_zero() => {}
            None => return (None, None),
        }
    }
    (
        Some(univariate::isolate_real_roots(&UPoly::new(coeffs), &zero, None)),
        Some(base.to_string()),
    )
}

fn root_text(r: &RootInterval) -> String {
    let mult = match r.multiplicity {
        1 => "simple".to_string(),
        2 => "double".to_string(),
        k => format!("multiplicity {k}"),
    };
    if r.is_exact() {
        format!("h = {} ({mult})", fmt_rat(&r.lo))
    } else {
        format!("h in ({}, {}) ({mult})", fmt_rat(&r.lo), fmt_rat(&r.hi))
    }
}

fn root_json(r: &RootInterval) -> Value {
    json!({"lo": fmt_rat(&r.lo), "hi": fmt_rat(&r.hi), "multiplicity": r.multiplicity, "exact": r.is_exact()})
}

pub fn mel(
    file: &Path,
    order: u8,
    subst: Option<&str>,
    eps: Option<&str>,
    at: Option<&str>,
) -> Result<Report, Failure> {
    let sys = substituted(load_system(file)?, subst)?;
    let point = match at {
        Some(a) => args::point(Some(&sys), a)?,
        None => Point::new(),
    };
    let ps = perturbed(&sys, eps)?;
    let (res, decomposition): (MelnikovResult, Option<Value>) = if order == 1 {
        (melnikov1(&ps)?, None)
    } else {
        let (res, fd) = melnikov2(&ps)?;
        let d = json!({
            "S": fd.s.to_string(),
            "R": fd.r.to_string(),
            "ansatz_degree": fd.ansatz_degree,
            "exact": fd.is_exact(),
        });
        (res, Some(d))
    };
    let mut text = format!("M{order}(h) = {}\n", res.m);
    let sign = if res.displacement_sign() < 0 { "-" } else { "" };
    let _ = writeln!(
        text,
        "orbits x = sqrt(2h) cos t, y = -sqrt(2h) sin t; time reversed: {}; d(x) ~ {sign}eps^{order} M(x^2/2) / x",
        if res.time_reversed { "yes" } else { "no" }
    );
    let mut json = json!({
        "order": order,
        "M": res.m.to_string(),
        "sign_convention": res.convention(),
    });
    if order == 1 {
        let b = b_coeffs(&res.m)?;
        json["b"] = json!(b.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    }
    if let Some(d) = decomposition {
        let _ = writeln!(
            text,
            "S = {}\nR = {}",
            d["S"].as_str().unwrap_or(""),
            d["R"].as_str().unwrap_or("")
        );
        json["decomposition"] = d;
    }
    let (roots, factor) = melnikov_roots(&res.m, &point);
    match &roots {
        Some(rs) => {
            let head = match &factor {
                Some(f) => format!("positive roots (common factor {f} removed)"),
                None => "positive roots".to_string(),
            };
            if rs.is_empty() {
                let _ = writeln!(text, "{head}: none");
            } else {
                let list: Vec<String> = rs.iter().map(root_text).collect();
                let _ = writeln!(text, "{head}: {}", list.join(", "));
            }
        }
        None => text.push_str("positive roots: depend on the parameters; bind them with --at\n"),
    }
    json["roots"] = match roots {
        Some(rs) => json!(rs.iter().map(root_json).collect::<Vec<_>>()),
        None => Value::Null,
    };
    json["root_factor"] = json!(factor);
    Ok(Report::ok(text, json))
}

fn curve(sys: &PlanarSystem, expr: &str) -> Result<PlanarPoly, Failure> {
    Ok(parse_expr(expr, &sys.params)?)
}

pub fn cofactor_cmd(file: &Path, curve_expr: &str, subst: Option<&str>) -> Result<Report, Failure> {
    let sys = substituted(load_system(file)?, subst)?;
    let c = curve(&sys, curve_expr)?;
    let r = cofactor(&sys, &c)?;
    let mut text = format!("curve C = {c}\ninvariant: {}\n", if r.invariant { "yes" } else { "no" });
    if let Some(k) = &r.cofactor {
        let _ = writeln!(text, "cofactor K = {k}");
    }
    if let Some(rem) = &r.remainder {
        let _ = writeln!(text, "remainder = {rem}");
    }
    let mut json = r.to_json();
    json["curve"] = json!(c.to_string());
    Ok(Report::ok(text, json))
}

pub fn dulac(file: &Path, curve_expr: &str, subst: Option<&str>) -> Result<Report, Failure> {
    let sys = substituted(load_system(file)?, subst)?;
    let c = curve(&sys, curve_expr)?;
    let r = dulac_divergence(&sys, &c)?;
    let mut text = format!("div(X / C^{}) numerator = {}\n", r.denominator_power, r.numerator);
    match &r.value {
        Some(v) => {
            let _ = writeln!(text, "div(X / C) is constant: {v}");
        }
        None => text.push_str("div(X / C) is not constant\n"),
    }
    let mut json = r.to_json();
    json["curve"] = json!(c.to_string());
    Ok(Report::ok(text, json))
}

pub fn center_check(file: &Path, subst: Option<&str>, max_order: usize) -> Result<Report, Failure> {
    if max_order == 0 {
        return Err(Error::InvalidOrder(0).into());
    }
    let sys = substituted(load_system(file)?, subst)?;
    let flags = symmetry_center_check(&sys);
    let order = weak_focus_order(&sys, max_order)?;
    let mut text = format!(
        "x-axis reversible: {}\ny-axis reversible: {}\nlinear part is a rotation: {}\nsymmetry certifies a center: {}\n",
        flags.x_axis_reversible,
        flags.y_axis_reversible,
        flags.linear_center_focus,
        flags.certifies_center()
    );
    let focus = match order {
        WeakFocusOrder::Order(k) => {
            let _ = writeln!(text, "L({k}) is the first quantity not identically zero");
            json!({"first_nonzero": k})
        }
        WeakFocusOrder::CenterUpTo(k) => {
            let _ = writeln!(text, "L(1) .. L({k}) vanish identically");
            json!({"vanish_up_to": k})
        }
    };
    let mut json = flags.to_json();
    json["lyapunov"] = focus;
    json["certifies_center"] = json!(flags.certifies_center());
    Ok(Report::ok(text, json))
}

pub fn kukles(at: &str) -> Result<Report, Failure> {
    let point = args::point(None, at)?;
    let mut a: [Rat; 7] = Default::default();
    for (i, slot) in a.iter_mut().enumerate() {
        let name = format!("a{}", i + 1);
        *slot = point.get(&name).cloned().ok_or(Error::UnboundSymbol(name))?;
    }
    if let Some(extra) = point.keys().find(|k| !(1..=7).any(|i| **k == format!("a{i}"))) {
        return Err(Error::UnknownSymbol(extra.clone()).into());
    }
    let r = kukles_conditions(&a);
    let json = r.to_json();
    let mut text = format!(
        "lambda = {}\nk_alpha = {}\nk_beta = {}\nk_gamma = {}\nk_delta = {}\n",
        fmt_rat(&r.lambda_k),
        fmt_rat(&r.k_alpha),
        fmt_rat(&r.k_beta),
        fmt_rat(&r.k_gamma),
        fmt_rat(&r.k_delta)
    );
    for (name, ok) in [
        ("K1", r.k1),
        ("K2", r.k2),
        ("K3", r.k3),
        ("K4", r.k4),
        ("Jin-Wang", r.jin_wang),
    ] {
        let _ = writeln!(text, "{name}: {}", if ok { "satisfied" } else { "not satisfied" });
    }
    Ok(Report::ok(text, json))
}

/// Binds `at`; with `eps`, the values of the perturbation parameters (all
/// parameters when the file names none) are multiplied by it.
fn numeric(file: &Path, at: Option<&str>, eps: Option<&str>) -> Result<(PlanarSystem, NumericSystem), Failure> {
    let sys = load_system(file)?;
    let mut point = match at {
        Some(a) => args::point(Some(&sys), a)?,
        None => Point::new(),
    };
    if let Some(e) = eps {
        let e = parse_rat(e).ok_or_else(|| Failure::Usage(format!("`{e}` is not a rational number")))?;
        for (name, v) in point.iter_mut() {
            if sys.perturbation_params.is_empty() || sys.perturbation_params.contains(name) {
                *v = &*v * &e;
            }
        }
    }
    let exact = sys.bind(&point);
    let num = NumericSystem::from_exact(&sys, &point)?;
    Ok((exact, num))
}

/// Whether `x^2 + y^2 = 1` is invariant for the bound system.
fn unit_circle_invariant(sys: &PlanarSystem) -> bool {
    let s = &sys.params;
    let (x, y) = (PlanarPoly::x(s), PlanarPoly::y(s));
    let c = &(&(&x * &x) + &(&y * &y)) - &PlanarPoly::from_rat(s, Rat::from_integer(1.into()));
    cofactor(sys, &c).map(|r| r.invariant).unwrap_or(false)
}

fn orbit_points(num: &NumericSystem, x0: [f64; 2], t_max: f64, tol: f64) -> Vec<[f64; 2]> {
    match integrate_within(num, x0, t_max, tol, 4.0) {
        Ok(tr) => tr.sample(2000).into_iter().map(|(_, p)| p).collect(),
        Err(_) => Vec::new(),
    }
}

pub struct SimulateArgs<'a> {
    pub file: &'a Path,
    pub at: Option<&'a str>,
    pub eps: Option<&'a str>,
    pub x0: &'a str,
    pub t_max: f64,
    pub tol: Option<f64>,
    pub samples: usize,
    pub csv: Option<&'a PathBuf>,
    pub portrait: Option<&'a PathBuf>,
}

pub fn simulate(a: SimulateArgs) -> Result<Report, Failure> {
    let x0 = args::state(a.x0)?;
    if !(a.t_max > 0.0 && a.t_max.is_finite()) {
        return Err(Error::InvalidRange(format!("--t-max must be positive, got {}", a.t_max)).into());
    }
    if a.samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let tol = tolerance(a.tol)?;
    let (exact, num) = numeric(a.file, a.at, a.eps)?;
    let tr = integrate(&num, x0, a.t_max, tol)?;
    let csv = tr.to_csv(a.samples);
    if let Some(p) = a.portrait {
        let mut portrait = Portrait::new(unit_circle_invariant(&exact));
        portrait.cycle(tr.sample(a.samples.max(2000)).into_iter().map(|(_, p)| p).collect());
        write_file(p, &portrait.render())?;
    }
    let end = tr.end();
    let json = json!({"t_end": tr.t_end(), "end": end, "steps": tr.steps.len(), "samples": a.samples});
    let text = match a.csv {
        Some(path) => {
            write_file(path, &csv)?;
            format!(
                "t = {} reached in {} steps; end state ({}, {})\n",
                tr.t_end(),
                tr.steps.len(),
                end[0],
                end[1]
            )
        }
        None => csv,
    };
    Ok(Report::ok(text, json))
}

pub struct CyclesArgs<'a> {
    pub file: &'a Path,
    pub at: Option<&'a str>,
    pub eps: Option<&'a str>,
    pub range: &'a str,
    pub grid: usize,
    pub tol: Option<f64>,
    pub portrait: Option<&'a PathBuf>,
}

pub fn cycles(a: CyclesArgs) -> Result<Report, Failure> {
    let (lo, hi) = args::range(a.range)?;
    if a.grid < 2 {
        return Err(Failure::Usage("--grid must be at least 2".into()));
    }
    let tol = tolerance(a.tol)?;
    let (exact, num) = numeric(a.file, a.at, a.eps)?;
    let opts = CycleSearch {
        grid: a.grid,
        tol,
        ..CycleSearch::default()
    };
    let found = find_cycles(&num, lo, hi, opts)?;
    let mut text = format!(
        "{} limit cycle(s) crossing the positive x-axis in ({lo}, {hi})\n",
        found.len()
    );
    for c in &found {
        let _ = writeln!(
            text,
            "x = {:.10}  period = {:.8}  {}{}",
            c.x_cross,
            c.period,
            c.stability.as_str(),
            if c.tangential {
                " (tangential zero of the displacement)"
            } else {
                ""
            }
        );
    }
    if let Some(p) = a.portrait {
        let mut portrait = Portrait::new(unit_circle_invariant(&exact));
        let n = 6;
        for k in 0..n {
            let x = lo + (hi - lo) * (k as f64 + 0.5) / n as f64;
            portrait.orbit(orbit_points(&num, [x, 0.0], 40.0, tol.max(1e-8)));
        }
        for c in &found {
            portrait.cycle(orbit_points(&num, [c.x_cross, 0.0], c.period, tol));
        }
        write_file(p, &portrait.render())?;
    }
    let json = json!({
        "cycles": found.iter().map(|c| json!({
            "x": c.x_cross,
            "period": c.period,
            "stability": c.stability.as_str(),
            "tangential": c.tangential,
            "residual": c.residual,
        })).collect::<Vec<_>>(),
    });
    Ok(Report::ok(text, json))
}

pub fn reproduce(filter: Option<&str>, golden: Option<&Path>, seed: Option<u64>) -> Result<Report, Failure> {
    let golden = match golden {
        Some(p) => Golden::load(p)?,
        None => Golden::builtin(),
    };
    let mut suite = Suite::new(golden);
    if let Some(s) = seed {
        suite.seed = s;
    }
    let rows = suite.run(filter);
    if rows.is_empty() {
        return Err(Failure::Usage(format!("no rows match `{}`", filter.unwrap_or(""))));
    }
    let mut text = String::new();
    let mut failed = 0;
    for r in &rows {
        let _ = writeln!(text, "{}", r.line());
        for d in &r.details {
            let _ = writeln!(text, "        {d}");
        }
        if !r.passed {
            failed += 1;
        }
    }
    let _ = writeln!(text, "{} passed, {failed} failed", rows.len() - failed);
    let json = json!({"rows": rows, "passed": rows.len() - failed, "failed": failed});
    Ok(Report {
        text,
        json,
        failed: failed > 0,
    })
}

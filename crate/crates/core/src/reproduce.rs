//! The reproduction suite: one row per published claim, checked against a
//! golden file of reference values.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{fmt_rat, int, parse_rat, rat, to_f64, ParamPoly, PlanarPoly, Point, Rat, Symbols};
use crate::error::{Error, Result};
use crate::invariants::{cofactor, symmetry_center_check};
use crate::lyapunov::{focal_values, lyapunov_chain, ChainStep, FocalEngine};
use crate::melnikov::{francoise_decompose, isolate_real_roots, melnikov1, melnikov1_closed_form, melnikov2};
use crate::numerics::{find_cycles, float_point, melnikov_quadrature, CycleSearch, NumericSystem};
use crate::sysdef::{
    eps_rescale, kukles_conditions, kukles_deg4_symbolic, kukles_odd_symbolic, odd_coeff_name, odd_index_pairs,
    parse_expr, parse_param_expr, PlanarSystem,
};

const BUILTIN_GOLDEN: &str = include_str!("../golden/targets.txt");

pub const DEFAULT_SEED: u64 = 20_240_521;

/// `key = value` reference table.
#[derive(Clone, Debug, PartialEq)]
pub struct Golden {
    entries: BTreeMap<String, String>,
}

impl Golden {
    pub fn builtin() -> Golden {
        Golden::parse(BUILTIN_GOLDEN).expect("builtin golden file is well formed")
    }

    pub fn parse(text: &str) -> Result<Golden> {
        let mut entries = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Syntax {
                line: i + 1,
                col: 1,
                message: "expected `key = value`".into(),
            })?;
            let k = k.trim().to_string();
            if entries.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(Error::DuplicateDefinition { name: k, line: i + 1 });
            }
        }
        Ok(Golden { entries })
    }

    pub fn load(path: &Path) -> Result<Golden> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidRange(format!("cannot read {}: {e}", path.display())))?;
        Golden::parse(&text)
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.entries
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::UnknownSymbol(format!("golden key {key}")))
    }

    fn param(&self, key: &str, universe: &Symbols) -> Result<ParamPoly> {
        parse_param_expr(self.get(key)?, universe)
    }

    fn planar(&self, key: &str, universe: &Symbols) -> Result<PlanarPoly> {
        parse_expr(self.get(key)?, universe)
    }

    fn rational(&self, key: &str) -> Result<Rat> {
        parse_rat(self.get(key)?).ok_or_else(|| Error::InvalidRange(format!("golden {key} is not a rational")))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RowSpec {
    pub id: usize,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub limit: Duration,
}

pub const ROWS: [RowSpec; 11] = [
    row(1, "lyapunov-deg4-first-quantity", &["lyap"], 1),
    row(2, "lyapunov-odd-chain", &["lyap"], 600),
    row(3, "melnikov1-deg4", &["mel"], 1),
    row(4, "melnikov1-odd", &["mel"], 5),
    row(5, "melnikov2-deg4", &["mel"], 30),
    row(6, "cofactors", &["inv", "cofactor"], 1),
    row(7, "center-certificates", &["inv", "center", "lyap"], 60),
    row(8, "numerical-cycle", &["num", "cycles"], 30),
    row(9, "oracle-agreement", &["num", "mel", "oracle"], 120),
    row(10, "degree-and-count-bounds", &["mel", "bounds"], 120),
    row(11, "kukles-conditions", &["kukles"], 1),
];

const fn row(id: usize, name: &'static str, tags: &'static [&'static str], secs: u64) -> RowSpec {
    RowSpec {
        id,
        name,
        tags,
        limit: Duration::from_secs(secs),
    }
}

impl RowSpec {
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.trim().to_ascii_lowercase();
        f.is_empty()
            || self.tags.iter().any(|t| *t == f)
            || self.name.contains(&f)
            || f == self.id.to_string()
            || f == format!("ac{}", self.id)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Passed with a recorded discrepancy.
    pub flagged: bool,
    pub details: Vec<String>,
    pub elapsed_ms: f64,
    pub limit_s: f64,
}

impl RowResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let flag = if self.flagged { " [flagged]" } else { "" };
        format!(
            "[{status}] AC{:<2} {:<30} {:>10.1} ms (limit {} s){flag}",
            self.id, self.name, self.elapsed_ms, self.limit_s
        )
    }
}

#[derive(Default)]
struct Outcome {
    ok: bool,
    flagged: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            ..Default::default()
        }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        if cond {
            self.details.push(format!("ok: {what}"));
        } else {
            self.ok = false;
            self.details.push(format!("MISMATCH: {what}"));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.details.push(s.into());
    }
}

pub struct Suite {
    pub golden: Golden,
    pub seed: u64,
}

impl Suite {
    pub fn new(golden: Golden) -> Self {
        Suite {
            golden,
            seed: DEFAULT_SEED,
        }
    }

    pub fn run(&self, filter: Option<&str>) -> Vec<RowResult> {
        ROWS.iter()
            .filter(|r| filter.is_none_or(|f| r.matches(f)))
            .map(|r| self.run_row(r))
            .collect()
    }

    pub fn run_row(&self, spec: &RowSpec) -> RowResult {
        let start = Instant::now();
        let res = match spec.id {
            1 => self.ac1(),
            2 => self.ac2(),
            3 => self.ac3(),
            4 => self.ac4(),
            5 => self.ac5(),
            6 => self.ac6(),
            7 => self.ac7(),
            8 => self.ac8(),
            9 => self.ac9(),
            10 => self.ac10(),
            11 => self.ac11(),
            _ => Err(Error::Internal(format!("no row {}", spec.id))),
        };
        let elapsed = start.elapsed();
        let mut out = match res {
            Ok(o) => o,
            Err(e) => Outcome {
                ok: false,
                flagged: false,
                details: vec![format!("error: {e}")],
            },
        };
        if elapsed > spec.limit {
            out.ok = false;
            out.details
                .push(format!("runtime {elapsed:?} exceeds {:?}", spec.limit));
        }
        RowResult {
            id: spec.id,
            name: spec.name,
            passed: out.ok,
            flagged: out.flagged,
            details: out.details,
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            limit_s: spec.limit.as_secs_f64(),
        }
    }

    fn ac1(&self) -> Result<Outcome> {
        let sys = bind_zero(&kukles_deg4_symbolic(), &["c"])?;
        let mut e = FocalEngine::new(&sys)?;
        let l1 = e.quantity(1);
        let target = self.golden.param("ac1.L1", &sys.params)?;
        let mut o = Outcome::new();
        o.check(l1 == target, format!("L(1) = {l1}, reference {target}"));
        o.check(e.residual_ok(), "residual identity");
        Ok(o)
    }

    fn ac2(&self) -> Result<Outcome> {
        let sys = kukles_odd_symbolic(3);
        let b = |n: &str, e: &str| -> Result<(String, ParamPoly)> {
            Ok((n.to_string(), parse_param_expr(e, &sys.params)?))
        };
        let steps = vec![
            ChainStep::vanishing(0, vec![b("b00", "0")?]),
            ChainStep::vanishing(1, vec![b("b20", "-3*b02")?]),
            ChainStep::vanishing(2, vec![b("b22", "-5*b04-b40")?]),
            ChainStep::vanishing(3, vec![b("b42", "(6*b02^3-35*b06-5*b24-5*b60)/3")?]),
            ChainStep::vanishing(4, vec![b("b04", "2*b02+b40")?]),
            ChainStep::restriction(vec![b("b40", "0")?]),
            ChainStep::vanishing(5, vec![b("b24", "-(48*b02+7*b60)/3")?]),
            ChainStep::vanishing(6, vec![b("b60", "(246*b02+9*b02^3-183*b06)/5")?]),
        ];
        let seq = lyapunov_chain(&sys, &steps, 7)?;
        let keys = ["L1", "L2", "L3", "L4", "L5", "L5r", "L6", "L7"];
        let mut o = Outcome::new();
        o.check(
            seq.entries.len() == keys.len(),
            format!("{} quantities reported, {} expected", seq.entries.len(), keys.len()),
        );
        for (entry, key) in seq.entries.iter().zip(keys) {
            let target = self.golden.param(&format!("ac2.{key}"), &sys.params)?;
            let label = format!(
                "L({}){}",
                entry.k,
                if entry.before_restriction {
                    " before b40 = 0"
                } else {
                    ""
                }
            );
            if entry.value.is_positive_multiple_of(&target) {
                o.note(format!(
                    "ok: {label} = {} * ({})",
                    fmt_rat(&entry.content),
                    entry.primitive
                ));
            } else if entry.value.is_positive_multiple_of(&-&target) {
                o.flagged = true;
                o.note(format!(
                    "flagged: {label} = {} * ({}) is a negative multiple of the reference {target}",
                    fmt_rat(&entry.content),
                    entry.primitive
                ));
            } else {
                o.ok = false;
                o.note(format!("MISMATCH: {label}"));
                o.note(format!("  computed  {}", entry.primitive));
                match target.content_and_primitive() {
                    Ok((_, tp)) => {
                        o.note(format!("  reference {tp}"));
                        o.note(format!("  difference {}", &entry.primitive - &tp));
                    }
                    Err(_) => o.note("  reference 0"),
                }
            }
        }
        o.check(seq.residual_ok, "residual identity V' = sum eta r^2k");
        Ok(o)
    }

    fn ac3(&self) -> Result<Outcome> {
        let sys = kukles_deg4_symbolic();
        let ps = eps_rescale(&sys, &["a", "b", "c"], true)?;
        let m1 = melnikov1(&ps)?;
        let mut o = Outcome::new();
        let target = self.golden.param("ac3.M1", &with_h(&sys.params))?;
        o.check(
            matches_up_to_sign(&m1.m, &target),
            format!("M1 = {}, reference ±pi*({target})", m1.m),
        );
        let pt = point(&[("a", int(0)), ("b", int(0)), ("c", int(1))]);
        let roots = isolate_real_roots(&m1.m, &pt, &int(0), None)?;
        let want = self.golden.rational("ac3.root")?;
        o.check(
            roots.len() == 1 && roots[0].is_exact() && roots[0].hi == want && roots[0].multiplicity == 1,
            format!("roots on (0, inf) at c = 1: {}", fmt_roots(&roots)),
        );
        Ok(o)
    }

    fn ac4(&self) -> Result<Outcome> {
        let mut o = Outcome::new();
        for n in 0..=4 {
            let sys = kukles_odd_symbolic(n);
            let ps = rescale_all(&sys)?;
            let m1 = melnikov1(&ps)?;
            if n == 3 {
                let target = self.golden.param("ac4.M1", &with_h(&sys.params))?;
                o.check(matches_up_to_sign(&m1.m, &target), format!("M1 = {}", m1.m));
            }
            let b: BTreeMap<(u32, u32), ParamPoly> = odd_index_pairs(n)
                .into_iter()
                .map(|(i, j)| Ok(((2 * i, 2 * j), ParamPoly::var(&sys.params, &odd_coeff_name(i, j))?)))
                .collect::<Result<_>>()?;
            let closed = melnikov1_closed_form(n, &b)?;
            o.check(
                m1.m.equals_up_to_sign(&closed),
                format!("n = {n}: integral equals closed form"),
            );
        }
        Ok(o)
    }

    fn ac5(&self) -> Result<Outcome> {
        let sys = bind_zero(&kukles_deg4_symbolic(), &["c"])?;
        let ps = eps_rescale(&sys, &["a", "b"], true)?;
        let (m2, dec) = melnikov2(&ps)?;
        let mut o = Outcome::new();
        o.check(dec.is_exact(), "decomposition residual is zero");
        let hs = with_h(&sys.params);
        let target = self.golden.param("ac5.M2", &hs)?;
        let computed = m2.m.to_param_poly("h");
        o.check(
            matches_up_to_sign(&m2.m, &target),
            format!("M2 = pi*({computed}), reference ±pi*({target})"),
        );
        o.note(format!("S = {}", dec.s));
        o.note(format!("R = {}", dec.r));
        let pt = point(&[("a", int(1)), ("b", int(1))]);
        // Root structure of the reference expression.
        let ref_coeffs = h_coeffs(&target, &pt)?;
        let ref_roots = crate::algebra::univariate::isolate_real_roots(
            &crate::algebra::univariate::UPoly::new(ref_coeffs),
            &int(0),
            None,
        );
        let want = self.golden.rational("ac5.root")?;
        o.check(
            ref_roots.len() == 1 && ref_roots[0].is_exact() && ref_roots[0].hi == want,
            format!("reference roots on (0, inf): {}", fmt_roots(&ref_roots)),
        );
        let roots = isolate_real_roots(&m2.m, &pt, &int(0), None)?;
        o.note(format!(
            "computed roots on (0, inf) at a = b = 1: {}",
            fmt_roots(&roots)
        ));
        Ok(o)
    }

    fn ac6(&self) -> Result<Outcome> {
        let mut o = Outcome::new();
        let sys = kukles_deg4_symbolic();
        let c = parse_expr("x^2+y^2-1", &sys.params)?;
        let k = cofactor(&sys, &c)?;
        let target = self.golden.planar("ac6.K41", &sys.params)?;
        o.check(
            k.cofactor.as_ref() == Some(&target),
            format!("degree-4 family: K = {}", show(&k.cofactor)),
        );
        let sys = kukles_odd_symbolic(3);
        let c = parse_expr("1-x^2-y^2", &sys.params)?;
        let k = cofactor(&sys, &c)?;
        let target = self.golden.planar("ac6.K51", &sys.params)?;
        o.check(
            k.cofactor.as_ref() == Some(&target),
            format!("odd family n = 3: K = {}", show(&k.cofactor)),
        );
        Ok(o)
    }

    fn ac7(&self) -> Result<Outcome> {
        let mut o = Outcome::new();
        let sys = kukles_deg4_symbolic();
        for (names, axis) in [(["c", "a"], "x"), (["c", "b"], "y")] {
            let s = bind_zero(&sys, &names)?;
            let f = symmetry_center_check(&s);
            let flag = if axis == "x" {
                f.x_axis_reversible
            } else {
                f.y_axis_reversible
            };
            o.check(
                flag && f.certifies_center(),
                format!("{} = {} = 0: reversible about the {axis}-axis", names[0], names[1]),
            );
            let cert = focal_values(&s, 12)?;
            o.check(
                cert.residual_ok && cert.etas.iter().all(ParamPoly::is_zero),
                format!("{} = {} = 0: eta_2 .. eta_12 vanish identically", names[0], names[1]),
            );
        }
        Ok(o)
    }

    fn ac8(&self) -> Result<Outcome> {
        let sys = kukles_deg4_symbolic();
        let mut p = crate::numerics::FloatPoint::new();
        p.insert("a".into(), 0.05);
        p.insert("b".into(), 0.05);
        p.insert("c".into(), 0.0);
        let ns = NumericSystem::compile(&sys, &p)?;
        let cycles = find_cycles(&ns, 0.2, 1.8, CycleSearch::default())?;
        let want = to_f64(&self.golden.rational("ac8.x_cross")?);
        let mut o = Outcome::new();
        o.check(
            cycles.len() == 1,
            format!("{} cycle(s) found on (0.2, 1.8)", cycles.len()),
        );
        for c in &cycles {
            o.check(
                (c.x_cross - want).abs() < 1e-6,
                format!(
                    "x_cross = {:.12}, period {:.9}, {}, residual {:.2e}",
                    c.x_cross,
                    c.period,
                    c.stability.as_str(),
                    c.residual
                ),
            );
        }
        Ok(o)
    }

    fn ac9(&self) -> Result<Outcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut o = Outcome::new();
        let hs = [0.1, 0.3, 0.7, 1.2];
        let mut worst = 0.0f64;
        let instances = 24;
        for n in 1..=3u32 {
            let sys = kukles_odd_symbolic(n);
            let ps = rescale_all(&sys)?;
            let m1 = melnikov1(&ps)?;
            for _ in 0..instances / 3 {
                let pt = random_point(&mut rng, &sys.params, 200, 20);
                let fp = float_point(&pt);
                for &h in &hs {
                    let sym = m1.m.eval_float(&pt, h)?;
                    let num = melnikov_quadrature(&ps, &fp, h)?;
                    let rel = (sym - num).abs() / sym.abs();
                    worst = worst.max(rel);
                }
            }
        }
        o.check(
            worst < 1e-8,
            format!(
                "{instances} instances x {} levels: max relative error {worst:.2e}",
                hs.len()
            ),
        );
        let sys = bind_zero(&kukles_deg4_symbolic(), &["c"])?;
        let mut runs = 0;
        let mut exact = true;
        let symbolic = eps_rescale(&sys, &["a", "b"], true)?;
        exact &= francoise_decompose(&symbolic)?.is_exact();
        runs += 1;
        for _ in 0..5 {
            let pt = random_point(&mut rng, &Symbols::new(["a", "b"]), 50, 10);
            let bound = sys.bind(&pt);
            // after binding, the perturbation is carried by an explicit eps
            let eps = Symbols::new(["eps"]);
            let e = ParamPoly::var(&eps, "eps")?;
            let scaled = scale_nonlinear(&bound, &e)?;
            let ps = eps_rescale(&scaled, &["eps"], true)?;
            let (_, dec) = melnikov2(&ps)?;
            exact &= dec.is_exact();
            runs += 1;
        }
        o.check(exact, format!("Francoise identity exact on {runs} second-order runs"));
        Ok(o)
    }

    fn ac10(&self) -> Result<Outcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x5eed);
        let mut o = Outcome::new();
        let per_n = 50;
        for n in 1..=4u32 {
            let sys = kukles_odd_symbolic(n);
            let m1 = melnikov1(&rescale_all(&sys)?)?;
            let mut bad_degree = 0;
            let mut max_roots = 0;
            for _ in 0..per_n {
                let pt = random_point(&mut rng, &sys.params, 1000, 50);
                let coeffs = m1.m.rational_coeffs_at(&pt)?;
                if coeffs.len() != n as usize + 3 {
                    bad_degree += 1;
                }
                let roots = isolate_real_roots(&m1.m, &pt, &int(0), None)?;
                let count: u32 = roots.iter().map(|r| r.multiplicity).sum();
                max_roots = max_roots.max(count);
            }
            o.check(
                bad_degree == 0 && max_roots <= n + 1,
                format!("n = {n}: {per_n} instances, degree n+2 in all but {bad_degree}, at most {max_roots} positive roots"),
            );
        }
        Ok(o)
    }

    fn ac11(&self) -> Result<Outcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ 0x11);
        let mut o = Outcome::new();
        let jw: Vec<Rat> = self
            .golden
            .get("ac11.jin_wang")?
            .split(',')
            .map(|s| parse_rat(s.trim()).ok_or_else(|| Error::InvalidRange(format!("bad rational `{s}`"))))
            .collect::<Result<_>>()?;
        let jw: [Rat; 7] = jw
            .try_into()
            .map_err(|_| Error::DimensionMismatch("Jin-Wang instance needs 7 values".into()))?;
        let r = kukles_conditions(&jw);
        o.check(
            r.jin_wang,
            format!("Jin-Wang instance accepted ({:?})", r.jin_wang_branch),
        );
        let mut k2 = 0;
        for _ in 0..20 {
            let mut a: [Rat; 7] = std::array::from_fn(|_| random_rat(&mut rng, 50, 10, true));
            for i in [1, 4, 6] {
                a[i] = int(0);
            }
            if kukles_conditions(&a).k2 {
                k2 += 1;
            }
        }
        o.check(k2 == 20, format!("{k2}/20 sets with a2 = a5 = a7 = 0 accepted by K2"));
        let mut rejected = 0;
        for _ in 0..100 {
            let a: [Rat; 7] = std::array::from_fn(|_| random_rat(&mut rng, 50, 10, true));
            if !kukles_conditions(&a).any() {
                rejected += 1;
            }
        }
        o.check(rejected == 100, format!("{rejected}/100 generic sets rejected"));
        Ok(o)
    }
}

fn point(pairs: &[(&str, Rat)]) -> Point {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn with_h(s: &Symbols) -> Symbols {
    s.union(&Symbols::new(["h"]))
}

fn show(p: &Option<PlanarPoly>) -> String {
    p.as_ref()
        .map_or_else(|| "none (not invariant)".into(), |k| k.to_string())
}

fn fmt_roots(roots: &[crate::algebra::univariate::RootInterval]) -> String {
    if roots.is_empty() {
        return "none".into();
    }
    roots
        .iter()
        .map(|r| {
            if r.is_exact() {
                format!("{} (mult {})", fmt_rat(&r.hi), r.multiplicity)
            } else {
                format!("({}, {}] (mult {})", fmt_rat(&r.lo), fmt_rat(&r.hi), r.multiplicity)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn matches_up_to_sign(m: &crate::algebra::HPiPoly, target: &ParamPoly) -> bool {
    if m.pi_power() != 1 {
        return false;
    }
    let got = m.to_param_poly("h");
    got == *target || got == -target
}

fn h_coeffs(p: &ParamPoly, pt: &Point) -> Result<Vec<Rat>> {
    let deg = p.degree_in("h");
    (0..=deg).map(|k| p.coefficient_of("h", k as u16).eval(pt)).collect()
}

fn bind_zero(sys: &PlanarSystem, names: &[&str]) -> Result<PlanarSystem> {
    let b: Vec<(String, ParamPoly)> = names
        .iter()
        .map(|n| (n.to_string(), ParamPoly::zero(&sys.params)))
        .collect();
    sys.substitute(&b)
}

fn rescale_all(sys: &PlanarSystem) -> Result<crate::sysdef::PerturbedSystem> {
    let names: Vec<&str> = sys.params.names().iter().map(String::as_str).collect();
    eps_rescale(sys, &names, true)
}

/// Multiplies every term of degree >= 2 of `(P, Q)` by `e`.
fn scale_nonlinear(sys: &PlanarSystem, e: &ParamPoly) -> Result<PlanarSystem> {
    let u = sys.params.union(e.symbols());
    let lift = |p: &PlanarPoly| {
        let p = p.in_universe(&u);
        let lin = &p.homogeneous_part(1) + &p.homogeneous_part(0);
        &lin + &(&p - &lin).scale(&e.in_universe(&u))
    };
    Ok(PlanarSystem::new(lift(&sys.p), lift(&sys.q), u))
}

fn random_rat(rng: &mut ChaCha8Rng, num: i64, den: i64, nonzero: bool) -> Rat {
    loop {
        let n = rng.gen_range(-num..=num);
        if nonzero && n == 0 {
            continue;
        }
        return rat(n, rng.gen_range(1..=den));
    }
}

fn random_point(rng: &mut ChaCha8Rng, s: &Symbols, num: i64, den: i64) -> Point {
    s.names()
        .iter()
        .map(|n| (n.clone(), random_rat(rng, num, den, true) / int(num)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_parses_and_rejects_duplicates() {
        let g = Golden::builtin();
        assert_eq!(g.get("ac3.root").unwrap(), "1/2");
        assert!(matches!(
            Golden::parse("a = 1\na = 2"),
            Err(Error::DuplicateDefinition { .. })
        ));
        assert!(matches!(Golden::parse("nonsense"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn filters() {
        let lyap: Vec<usize> = ROWS.iter().filter(|r| r.matches("lyap")).map(|r| r.id).collect();
        assert_eq!(lyap, vec![1, 2, 7]);
        assert!(ROWS[7].matches("ac8"));
        assert!(ROWS.iter().all(|r| r.matches("")));
    }

    #[test]
    fn perturbed_golden_fails_its_row() {
        let text = BUILTIN_GOLDEN.replace("ac1.L1 = -1/8*a*b", "ac1.L1 = -1/4*a*b");
        let suite = Suite::new(Golden::parse(&text).unwrap());
        let r = suite.run(Some("ac1"));
        assert_eq!(r.len(), 1);
        assert!(!r[0].passed);
        assert!(r[0].details.iter().any(|d| d.contains("MISMATCH")));
    }
}

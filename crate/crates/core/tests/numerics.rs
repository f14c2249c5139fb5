use cyclelab::algebra::{parse_rat, rat, to_f64, Point};
use cyclelab::lyapunov::{lyapunov_chain, lyapunov_l0};
use cyclelab::melnikov::melnikov1;
use cyclelab::numerics::{displacement, find_cycles, integrate, CycleSearch, NumericSystem, Stability};
use cyclelab::sysdef::{eps_rescale, kukles_deg4_symbolic, PlanarSystem};

fn point(pairs: &[(&str, &str)]) -> Point {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), parse_rat(v).unwrap()))
        .collect()
}

fn deg4(a: &str, b: &str, c: &str) -> (PlanarSystem, NumericSystem) {
    let sys = kukles_deg4_symbolic();
    let p = point(&[("a", a), ("b", b), ("c", c)]);
    let exact = sys.bind(&p);
    (exact, NumericSystem::from_exact(&sys, &p).unwrap())
}

#[test]
fn dopri_tracks_the_rotation() {
    let sys = NumericSystem::compile(&PlanarSystem::linear_center(), &Default::default()).unwrap();
    let tr = integrate(&sys, [1.0, 0.0], 10.0, 1e-11).unwrap();
    for (t, [x, y]) in tr.sample(50) {
        assert!((x - t.cos()).abs() < 1e-8 && (y - t.sin()).abs() < 1e-8, "t = {t}");
    }
}

/// Small cycle amplitude from `L(0)` and `L(1)` at a weak focus: with
/// `L(0)` of the opposite sign to `L(1)`, one cycle of radius about
/// `sqrt(-L(0) / L(1))` appears, stable when `L(1) < 0`.
#[test]
fn hopf_consistency_at_sampled_points() {
    for (a, b, c) in [
        ("1", "1", "-0.01"),
        ("2", "1/2", "-0.005"),
        ("-1", "-3/2", "-0.008"),
        ("1", "-1", "0.01"),
    ] {
        let (exact, num) = deg4(a, b, c);
        let l0 = to_f64(&lyapunov_l0(&exact).unwrap().constant_value().unwrap());
        let at_weak = kukles_deg4_symbolic().bind(&point(&[("a", a), ("b", b), ("c", "0")]));
        let seq = lyapunov_chain(&at_weak, &[], 2).unwrap();
        let l1 = to_f64(&seq.entries[0].value.constant_value().unwrap());
        assert!(l0 * l1 < 0.0, "{a} {b} {c}");
        let r = (-l0 / l1).sqrt();
        let found = find_cycles(&num, 0.3 * r, (2.5 * r).min(0.8), CycleSearch::default()).unwrap();
        assert_eq!(found.len(), 1, "{a} {b} {c}: {found:?}");
        let cyc = &found[0];
        assert!((cyc.x_cross / r - 1.0).abs() < 0.4, "amplitude {} vs {r}", cyc.x_cross);
        let want = if l1 < 0.0 {
            Stability::Attracting
        } else {
            Stability::Repelling
        };
        assert_eq!(cyc.stability, want);
    }
}

#[test]
fn no_small_cycle_when_signs_agree() {
    let (exact, num) = deg4("1", "1", "0.01");
    let l0 = to_f64(&lyapunov_l0(&exact).unwrap().constant_value().unwrap());
    assert!(l0 < 0.0);
    let found = find_cycles(&num, 0.02, 0.8, CycleSearch::default()).unwrap();
    assert!(found.is_empty(), "{found:?}");
}

#[test]
fn displacement_follows_first_order_melnikov() {
    // with a = b = 0 only c perturbs: d(x) ~ -eps M1(x^2/2) / x
    let sys = kukles_deg4_symbolic();
    let m1 = melnikov1(&eps_rescale(&sys, &["a", "b", "c"], true).unwrap()).unwrap();
    let eps = 1e-4;
    let p: Point = point(&[("a", "0"), ("b", "0")])
        .into_iter()
        .chain([("c".to_string(), rat(1, 10_000))])
        .collect();
    let num = NumericSystem::from_exact(&sys, &p).unwrap();
    let unit = point(&[("a", "0"), ("b", "0"), ("c", "1")]);
    for x in [0.4, 0.8, 1.3] {
        let pred = m1.displacement_sign() as f64 * eps * m1.m.eval_float(&unit, x * x / 2.0).unwrap() / x;
        let d = displacement(&num, x, 1e-12).unwrap();
        assert!((d - pred).abs() < 1e-2 * pred.abs() + 1e-10, "x = {x}: {d} vs {pred}");
    }
}

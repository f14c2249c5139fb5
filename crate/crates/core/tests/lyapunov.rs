use cyclelab::algebra::{int, rat, ParamPoly, PlanarPoly, Rat, Symbols};
use cyclelab::lyapunov::{focal_values, lyapunov_chain, ChainStep, FocalEngine};
use cyclelab::sysdef::{kukles_deg4_symbolic, kukles_odd_symbolic, parse_param_expr, PlanarSystem};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

/// `x' = -y + f`, `y' = x + g` with `f`, `g` of degrees 2 and 3.
fn field(cf: &[Rat], cg: &[Rat]) -> (PlanarSystem, [[Rat; 7]; 2]) {
    let s = Symbols::empty();
    let monos = [(2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)];
    let build = |c: &[Rat]| {
        let mut p = PlanarPoly::zero(&s);
        for ((i, j), v) in monos.iter().zip(c) {
            p = &p + &PlanarPoly::monomial(&s, *i, *j, ParamPoly::from_rat(v.clone()));
        }
        p
    };
    let p = &-PlanarPoly::y(&s) + &build(cf);
    let q = &PlanarPoly::x(&s) + &build(cg);
    let arr = |c: &[Rat]| -> [Rat; 7] { std::array::from_fn(|k| c[k].clone()) };
    (PlanarSystem::new(p, q, s), [arr(cf), arr(cg)])
}

/// Classical first Lyapunov coefficient of a Hopf point from second and
/// third derivatives at the origin.
fn hopf_coefficient([f, g]: &[[Rat; 7]; 2]) -> Rat {
    // derivatives from the monomial coefficients
    let (fxx, fxy, fyy) = (&f[0] * int(2), f[1].clone(), &f[2] * int(2));
    let (gxx, gxy, gyy) = (&g[0] * int(2), g[1].clone(), &g[2] * int(2));
    let (fxxx, fxyy) = (&f[3] * int(6), &f[5] * int(2));
    let (gxxy, gyyy) = (&g[4] * int(2), &g[6] * int(6));
    let cubic = fxxx + fxyy + gxxy + gyyy;
    let quad = &fxy * (&fxx + &fyy) - &gxy * (&gxx + &gyy) - &fxx * &gxx + &fyy * &gyy;
    (cubic + quad) / int(16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l1_matches_hopf_coefficient(
        cf in proptest::collection::vec(small_rat(), 7),
        cg in proptest::collection::vec(small_rat(), 7),
    ) {
        let (sys, coeffs) = field(&cf, &cg);
        let mut e = FocalEngine::new(&sys).unwrap();
        let l1 = e.quantity(1).constant_value().unwrap();
        prop_assert_eq!(l1, hopf_coefficient(&coeffs));
        prop_assert!(e.residual_ok());
    }

    #[test]
    fn time_reversal_flips_every_quantity(
        cf in proptest::collection::vec(small_rat(), 7),
        cg in proptest::collection::vec(small_rat(), 7),
    ) {
        // (x, y, t) -> (x, -y, -t) maps the field to one with the same
        // orientation and negated focal values
        let (sys, _) = field(&cf, &cg);
        let mirrored = PlanarSystem::new(-sys.p.reflect_y(), sys.q.reflect_y(), sys.params.clone());
        let a = focal_values(&sys, 6).unwrap();
        let b = focal_values(&mirrored, 6).unwrap();
        for k in [2, 4, 6] {
            prop_assert_eq!(a.eta(k).unwrap(), &-b.eta(k).unwrap());
        }
    }
}

#[test]
fn degree_four_l1_closed_form() {
    let sys = kukles_deg4_symbolic();
    let c0 = sys.substitute(&[("c".into(), ParamPoly::zero(&sys.params))]).unwrap();
    let seq = lyapunov_chain(&c0, &[], 4).unwrap();
    assert!(seq.l0.is_zero());
    assert_eq!(seq.entries.len(), 1);
    assert_eq!(seq.entries[0].value, parse_param_expr("-a*b/8", &sys.params).unwrap());
}

#[test]
fn chain_rejects_non_annihilating_binding() {
    let sys = kukles_odd_symbolic(1);
    let bad = ChainStep::vanishing(1, vec![("b20".into(), parse_param_expr("b02", &sys.params).unwrap())]);
    let zero = ChainStep::vanishing(0, vec![("b00".into(), ParamPoly::zero(&sys.params))]);
    assert!(lyapunov_chain(&sys, &[zero.clone(), bad], 4).is_err());
    let good = ChainStep::vanishing(
        1,
        vec![("b20".into(), parse_param_expr("-3*b02", &sys.params).unwrap())],
    );
    let seq = lyapunov_chain(&sys, &[zero, good], 6).unwrap();
    assert_eq!(seq.entries[0].k, 1);
    assert!(seq.residual_ok);
}

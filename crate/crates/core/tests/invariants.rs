use cyclelab::algebra::{int, rat, ParamPoly, PlanarPoly};
use cyclelab::invariants::{cofactor, dulac_divergence, rif_check, symmetry_center_check};
use cyclelab::lyapunov::focal_values;
use cyclelab::sysdef::{kukles_deg4_symbolic, kukles_odd_symbolic, parse_expr, PlanarSystem};
use proptest::prelude::*;

fn zero(sys: &PlanarSystem, names: &[&str]) -> PlanarSystem {
    let b: Vec<(String, ParamPoly)> = names
        .iter()
        .map(|n| (n.to_string(), ParamPoly::zero(&sys.params)))
        .collect();
    sys.substitute(&b).unwrap()
}

#[test]
fn odd_family_circle_cofactor() {
    for n in 0..=3 {
        let sys = kukles_odd_symbolic(n);
        let c = parse_expr("1-x^2-y^2", &sys.params).unwrap();
        let res = cofactor(&sys, &c).unwrap();
        assert!(res.invariant);
        // y' = x + y C S, so K C = -2 y (y' - x)
        let k = res.cofactor.unwrap();
        let rhs = (&sys.q - &PlanarPoly::x(&sys.params))
            .mul_monomial(0, 1)
            .scale_rat(&int(-2));
        assert_eq!(&k * &c, rhs);
        assert!(k.total_degree() < sys.degree());
    }
}

#[test]
fn degree_four_dulac() {
    let sys = kukles_deg4_symbolic();
    let c = parse_expr("x^2+y^2-1", &sys.params).unwrap();
    let d = dulac_divergence(&zero(&sys, &["a", "b"]), &c).unwrap();
    assert!(d.is_constant);
    assert_eq!(d.value.unwrap(), parse_expr("c", &sys.params).unwrap());
    assert!(!dulac_divergence(&sys, &c).unwrap().is_constant);
    assert!(!rif_check(&sys, &c).residual.is_zero());
}

#[test]
fn degree_four_centers_by_symmetry() {
    let sys = kukles_deg4_symbolic();
    let ca = zero(&sys, &["c", "a"]);
    let cb = zero(&sys, &["c", "b"]);
    let f = symmetry_center_check(&ca);
    assert!(f.x_axis_reversible && f.certifies_center());
    let f = symmetry_center_check(&cb);
    assert!(f.y_axis_reversible && f.certifies_center());
    let f = symmetry_center_check(&sys);
    assert!(!f.x_axis_reversible && !f.y_axis_reversible);
    for s in [ca, cb] {
        let cert = focal_values(&s, 12).unwrap();
        assert!(cert.residual_ok);
        assert!(cert.etas.iter().all(|e| e.is_zero()));
    }
}

fn small_rat() -> impl Strategy<Value = cyclelab::algebra::Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cofactor_is_scale_invariant(l in small_rat().prop_filter("nonzero", |l| *l != int(0))) {
        let sys = kukles_deg4_symbolic();
        let c = parse_expr("x^2+y^2-1", &sys.params).unwrap();
        let k1 = cofactor(&sys, &c).unwrap().cofactor.unwrap();
        let k2 = cofactor(&sys, &c.scale_rat(&l)).unwrap().cofactor.unwrap();
        prop_assert_eq!(k1, k2);
    }

    #[test]
    fn reversible_cubics_have_vanishing_focal_values(
        coeffs in proptest::collection::vec(small_rat(), 4)
    ) {
        // y' = x + a x^2 + b y^2 + c x^3 + d x y^2 is x-axis reversible
        let s = cyclelab::algebra::Symbols::empty();
        let q = parse_expr(
            &format!("x + ({})*x^2 + ({})*y^2 + ({})*x^3 + ({})*x*y^2",
                cyclelab::algebra::fmt_rat(&coeffs[0]), cyclelab::algebra::fmt_rat(&coeffs[1]),
                cyclelab::algebra::fmt_rat(&coeffs[2]), cyclelab::algebra::fmt_rat(&coeffs[3])),
            &s,
        ).unwrap();
        let sys = PlanarSystem::new(-PlanarPoly::y(&s), q, s);
        prop_assert!(symmetry_center_check(&sys).certifies_center());
        let cert = focal_values(&sys, 12).unwrap();
        prop_assert!(cert.residual_ok);
        prop_assert!(cert.etas.iter().all(|e| e.is_zero()));
    }
}

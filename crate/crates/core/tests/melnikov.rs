use std::collections::BTreeMap;

use cyclelab::algebra::{int, rat, HPiPoly, ParamPoly, Point, Symbols};
use cyclelab::melnikov::{
    b_coeffs, francoise_decompose, han_jacobian, isolate_real_roots, melnikov1, melnikov1_closed_form, melnikov2,
    wallis,
};
use cyclelab::sysdef::{
    eps_rescale, kukles_deg4_symbolic, kukles_odd_symbolic, odd_coeff_name, odd_index_pairs, parse_param_expr,
};

fn with_h(s: &Symbols) -> Symbols {
    s.union(&Symbols::new(["h"]))
}

fn as_h_poly(m: &HPiPoly) -> ParamPoly {
    assert_eq!(m.pi_power(), 1);
    m.to_param_poly("h")
}

fn up_to_sign(m: &HPiPoly, expr: &str) -> bool {
    let got = as_h_poly(m);
    let want = parse_param_expr(expr, &with_h(m.symbols())).unwrap();
    let got = got.in_universe(want.symbols());
    got == want || got == -&want
}

#[test]
fn wallis_matches_quadrature() {
    for m in 0..=12u32 {
        for n in 0..=12u32 {
            let steps = 20_000;
            let dt = 2.0 * std::f64::consts::PI / steps as f64;
            let num: f64 = (0..steps)
                .map(|k| {
                    let t = k as f64 * dt;
                    t.cos().powi(m as i32) * t.sin().powi(n as i32)
                })
                .sum::<f64>()
                * dt;
            let exact = cyclelab::algebra::to_f64(&wallis(m, n)) * std::f64::consts::PI;
            assert!((num - exact).abs() < 1e-10, "wallis({m},{n}) {num} vs {exact}");
        }
    }
}

#[test]
fn degree_four_first_order() {
    let sys = kukles_deg4_symbolic();
    let ps = eps_rescale(&sys, &["a", "b", "c"], true).unwrap();
    let m1 = melnikov1(&ps).unwrap();
    assert!(up_to_sign(&m1.m, "2*h*(2*h-1)*c"));
    // direct evaluation of the integral in our orientation
    assert!(as_h_poly(&m1.m) == parse_param_expr("-2*h*(2*h-1)*c", &with_h(m1.m.symbols())).unwrap());
    assert_eq!(m1.displacement_sign(), -1);

    let b = b_coeffs(&m1.m).unwrap();
    assert_eq!(b.len(), 2);
    let pt: Point = [("a", 0), ("b", 0), ("c", 1)]
        .iter()
        .map(|(k, v)| (k.to_string(), int(*v)))
        .collect();
    assert_eq!(
        cyclelab::algebra::rat::abs(&han_jacobian(&b, &["c"], &pt).unwrap()),
        int(2)
    );
    assert_eq!(han_jacobian(&b, &["a"], &pt).unwrap(), int(0));

    let roots = isolate_real_roots(&m1.m, &pt, &int(0), None).unwrap();
    assert_eq!(roots.len(), 1);
    assert!(roots[0].is_exact());
    assert_eq!(roots[0].hi, rat(1, 2));
    assert_eq!(roots[0].multiplicity, 1);
}

#[test]
fn odd_family_first_order_matches_closed_form() {
    let sys = kukles_odd_symbolic(3);
    let names: Vec<String> = sys.params.names().to_vec();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ps = eps_rescale(&sys, &refs, true).unwrap();
    let m1 = melnikov1(&ps).unwrap();
    assert!(up_to_sign(
        &m1.m,
        "1/4*h*(2*h-1)*(8*b00+4*(3*b02+b20)*h+4*(5*b04+b22+b40)*h^2+(35*b06+5*b24+3*b42+5*b60)*h^3)"
    ));
    for n in 0..=4 {
        let sys = kukles_odd_symbolic(n);
        let names: Vec<String> = sys.params.names().to_vec();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let ps = eps_rescale(&sys, &refs, true).unwrap();
        let m1 = melnikov1(&ps).unwrap();
        let b: BTreeMap<(u32, u32), ParamPoly> = odd_index_pairs(n)
            .into_iter()
            .map(|(i, j)| {
                (
                    (2 * i, 2 * j),
                    ParamPoly::var(&sys.params, &odd_coeff_name(i, j)).unwrap(),
                )
            })
            .collect();
        let closed = melnikov1_closed_form(n, &b).unwrap();
        assert!(m1.m.equals_up_to_sign(&closed), "n = {n}");
        assert_eq!(m1.m.degree(), n + 2);
    }
}

#[test]
fn odd_family_jacobian_at_origin() {
    let sys = kukles_odd_symbolic(3);
    let names: Vec<String> = sys.params.names().to_vec();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ps = eps_rescale(&sys, &refs, true).unwrap();
    let b = b_coeffs(&melnikov1(&ps).unwrap().m).unwrap();
    let origin: Point = names.iter().map(|n| (n.clone(), int(0))).collect();
    let det = han_jacobian(&b, &["b00", "b20", "b40", "b60"], &origin).unwrap();
    assert_ne!(det, int(0));
}

#[test]
fn degree_four_second_order() {
    let sys = kukles_deg4_symbolic();
    let zero_c = vec![("c".to_string(), ParamPoly::zero(&sys.params))];
    let sys = sys.substitute(&zero_c).unwrap();
    let ps = eps_rescale(&sys, &["a", "b"], true).unwrap();
    let dec = francoise_decompose(&ps).unwrap();
    assert!(dec.is_exact());
    let (m2, _) = melnikov2(&ps).unwrap();
    assert_eq!(m2.order, 2);
    // exact second-order function of this field
    assert!(as_h_poly(&m2.m) == parse_param_expr("a*b*h^2*(2*h-1)^2", &with_h(m2.m.symbols())).unwrap());

    let ps_a0 = eps_rescale(
        &sys.substitute(&[("a".to_string(), ParamPoly::zero(&sys.params))])
            .unwrap(),
        &["b"],
        true,
    )
    .unwrap();
    assert!(melnikov2(&ps_a0).unwrap().0.m.is_zero());
}

#[test]
fn second_order_needs_vanishing_first_order() {
    let sys = kukles_deg4_symbolic();
    let ps = eps_rescale(&sys, &["a", "b", "c"], true).unwrap();
    assert!(matches!(
        francoise_decompose(&ps),
        Err(cyclelab::Error::FirstOrderNotZero(_))
    ));
}

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{fmt_rat, int, rat, ParamPoly, Rat, Symbols};

/// Which sign choice of `a7^2 = a4^2` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JinWangBranch {
    /// `a7 = a4` (and `a7 = -a4` if both vanish).
    Equal,
    /// `a7 = -a4`.
    Opposite,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KuklesConditionReport {
    pub lambda_k: Rat,
    pub k_alpha: Rat,
    pub k_beta: Rat,
    pub k_gamma: Rat,
    pub k_delta: Rat,
    pub k1: bool,
    pub k2: bool,
    pub k3: bool,
    pub k4: bool,
    pub jin_wang: bool,
    pub jin_wang_branch: Option<JinWangBranch>,
}

impl KuklesConditionReport {
    pub fn any(&self) -> bool {
        self.k1 || self.k2 || self.k3 || self.k4 || self.jin_wang
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lambda": fmt_rat(&self.lambda_k),
            "k_alpha": fmt_rat(&self.k_alpha),
            "k_beta": fmt_rat(&self.k_beta),
            "k_gamma": fmt_rat(&self.k_gamma),
            "k_delta": fmt_rat(&self.k_delta),
            "satisfied": {
                "K1": self.k1,
                "K2": self.k2,
                "K3": self.k3,
                "K4": self.k4,
                "JinWang": self.jin_wang,
            },
            "jin_wang_branch": self.jin_wang_branch,
        })
    }
}

/// `[lambda, k_alpha, k_beta, k_gamma, k_delta]` as polynomials in `a1..a7`.
pub fn kukles_polynomials(a: &[ParamPoly; 7]) -> [ParamPoly; 5] {
    let [a1, a2, a3, a4, a5, a6, a7] = a;
    let c = |n: i64| ParamPoly::from_rat(int(n));
    let lambda = &(a2 * a3) + &(&c(3) * a7);
    let a2sq = a2 * a2;
    let k_alpha = &(a4 * &a2sq) + &(a5 * &lambda);
    let lam2 = &lambda * &lambda;
    let k_beta = &(&(&(&(&c(3) * a7) * &lambda) + &lam2) + &(a6 * &a2sq)) * a5;
    let k_beta = &(&k_beta - &(&(&c(3) * a7) * &lam2)) - &(&(a6 * &a2sq) * &lambda);
    let k_gamma = &(&lambda + &(a1 * a2)) + a5;
    let k_delta =
        &(&(&(&c(9) * &(a6 * &a2sq)) + &(&c(2) * &(a4 * a4))) + &(&c(9) * &lam2)) + &(&(&c(27) * a7) * &lambda);
    [lambda, k_alpha, k_beta, k_gamma, k_delta]
}

/// Evaluates the classical center conditions at concrete coefficients.
pub fn kukles_conditions(a: &[Rat; 7]) -> KuklesConditionReport {
    let polys: [ParamPoly; 7] = std::array::from_fn(|i| ParamPoly::from_rat(a[i].clone()));
    let vals: Vec<Rat> = kukles_polynomials(&polys).iter().map(|p| p.constant_term()).collect();
    let [a1, a2, a3, a4, a5, a6, a7] = a;
    let z = |r: &Rat| r.is_zero();
    let (lambda_k, k_alpha, k_beta, k_gamma, k_delta) = (
        vals[0].clone(),
        vals[1].clone(),
        vals[2].clone(),
        vals[3].clone(),
        vals[4].clone(),
    );
    let k1 = z(&k_alpha) && z(&k_beta) && z(&k_gamma) && z(a7);
    let k2 = z(a7) && z(a2) && z(a5);
    let k3 = z(a7) && z(a5) && z(a3) && z(a1);
    let k4 = z(&k_alpha) && z(&k_beta) && z(&k_gamma) && z(&k_delta);
    let jin_wang = z(a2)
        && z(a6)
        && *a3 == -(a1 * int(2))
        && *a5 == -(a7 * int(3))
        && a7 * a7 == a4 * a4
        && -a4.clone() == a1 * a1 * rat(1, 3);
    let jin_wang_branch = jin_wang.then(|| {
        if a7 == a4 {
            JinWangBranch::Equal
        } else {
            JinWangBranch::Opposite
        }
    });
    KuklesConditionReport {
        lambda_k,
        k_alpha,
        k_beta,
        k_gamma,
        k_delta,
        k1,
        k2,
        k3,
        k4,
        jin_wang,
        jin_wang_branch,
    }
}

/// Symbols `a1..a7` for symbolic use of [`kukles_polynomials`].
pub fn cubic_symbols() -> Symbols {
    Symbols::new((1..=7).map(|i| format!("a{i}")))
}

//! Parsing of binding lists, ranges and points given on the command line.

use cyclelab::algebra::{parse_rat, ParamPoly, Point};
use cyclelab::lyapunov::ChainStep;
use cyclelab::sysdef::{parse_param_expr, PlanarSystem};

use crate::Failure;

fn pairs(text: &str, seps: &[char]) -> Result<Vec<(String, String)>, Failure> {
    let mut out: Vec<(String, String)> = Vec::new();
    for item in text.split(seps).map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected `name=value`, got `{item}`")))?;
        let name = name.trim().to_string();
        if name.is_empty() {
            return Err(Failure::Usage(format!("missing name in `{item}`")));
        }
        if out.iter().any(|(n, _)| *n == name) {
            return Err(Failure::Usage(format!("`{name}` is bound twice")));
        }
        out.push((name, value.trim().to_string()));
    }
    Ok(out)
}

fn check_declared(sys: &PlanarSystem, name: &str) -> Result<(), Failure> {
    if sys.params.contains(name) {
        Ok(())
    } else {
        Err(cyclelab::Error::UnknownSymbol(name.to_string()).into())
    }
}

/// `sym=expr;sym=expr`, right-hand sides over the declared parameters.
pub fn substitutions(sys: &PlanarSystem, text: &str) -> Result<Vec<(String, ParamPoly)>, Failure> {
    let mut out = Vec::new();
    for (name, expr) in pairs(text, &[';'])? {
        check_declared(sys, &name)?;
        out.push((name, parse_param_expr(&expr, &sys.params)?));
    }
    Ok(out)
}

/// `a=0.05,b=1/3`: exact values, decimals read as the rational they spell.
pub fn point(sys: Option<&PlanarSystem>, text: &str) -> Result<Point, Failure> {
    let mut out = Point::new();
    for (name, value) in pairs(text, &[',', ';'])? {
        if let Some(sys) = sys {
            check_declared(sys, &name)?;
        }
        let v = parse_rat(&value).ok_or_else(|| Failure::Usage(format!("`{value}` is not a rational number")))?;
        out.insert(name, v);
    }
    Ok(out)
}

/// `k:sym=expr;...` annihilates `L(k)`; without a `k:` prefix the bindings
/// are a plain restriction.
pub fn chain_step(sys: &PlanarSystem, text: &str) -> Result<ChainStep, Failure> {
    if let Some((head, rest)) = text.split_once(':') {
        let k: usize = head
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("`{head}` is not a quantity index")))?;
        Ok(ChainStep::vanishing(k, substitutions(sys, rest)?))
    } else {
        Ok(ChainStep::restriction(substitutions(sys, text)?))
    }
}

pub fn range(text: &str) -> Result<(f64, f64), Failure> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("expected `lo:hi`, got `{text}`")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Failure::Usage(format!("`{s}` is not a number")))
    };
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(cyclelab::Error::InvalidRange(format!("need 0 < lo < hi, got {lo}:{hi}")).into());
    }
    Ok((lo, hi))
}

pub fn state(text: &str) -> Result<[f64; 2], Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [x, y] = parts[..] else {
        return Err(Failure::Usage(format!("expected `x,y`, got `{text}`")));
    };
    let parse = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Failure::Usage(format!("`{s}` is not a finite number")))
    };
    Ok([parse(x)?, parse(y)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use cyclelab::algebra::rat;
    use cyclelab::sysdef::kukles_deg4_symbolic;

    #[test]
    fn point_reads_decimals_exactly() {
        let sys = kukles_deg4_symbolic();
        let p = point(Some(&sys), "a=0.05, b=1/3,c=-2").unwrap();
        assert_eq!(p["a"], rat(1, 20));
        assert_eq!(p["b"], rat(1, 3));
        assert_eq!(p["c"], rat(-2, 1));
        assert!(matches!(point(Some(&sys), "z=1"), Err(Failure::Usage(_))));
        assert!(matches!(point(Some(&sys), "a=1,a=2"), Err(Failure::Usage(_))));
    }

    #[test]
    fn chain_steps_and_ranges() {
        let sys = kukles_deg4_symbolic();
        let s = chain_step(&sys, "1: a=0").unwrap();
        assert_eq!(s.vanishes, Some(1));
        assert_eq!(chain_step(&sys, "c=0;a=b").unwrap().vanishes, None);
        assert_eq!(range("0.2:1.8").unwrap(), (0.2, 1.8));
        assert!(range("1:0.5").is_err());
        assert!(state("1,2,3").is_err());
    }
}

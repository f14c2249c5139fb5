//! Dense univariate polynomials over Q and exact real-root isolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::{lcm_int, Rat};

/// Coefficients in increasing powers; no trailing zeros (zero poly is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Rat>);

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.0.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        UPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![Rat::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] -= c;
        }
        UPoly::new(v)
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dn = d.degree();
        let dl = d.lc();
        if self.0.len() < d.0.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); self.0.len() - dn];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dn);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = lc * prod f_i^i`; returns
    /// `(f_i, i)` pairs with nonconstant `f_i`.
    pub fn square_free(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain
    }

    /// Integer-coefficient multiple with coprime coefficients.
    fn integer_primitive(&self) -> Vec<BigInt> {
        let l = self.0.iter().fold(BigInt::one(), |acc, c| lcm_int(&acc, c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Rational roots by the rational root theorem, when the end
    /// coefficients are small enough to enumerate divisors.
    pub fn rational_roots(&self) -> Vec<Rat> {
        let mut roots = Vec::new();
        if self.degree() == 0 {
            return roots;
        }
        let mut p = self.clone();
        let mut zero_mult = 0;
        while p.0.first().is_some_and(Zero::is_zero) {
            p = UPoly::new(p.0[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push(Rat::zero());
        }
        if p.degree() == 0 {
            return roots;
        }
        let ints = p.integer_primitive();
        let (Some(a0), Some(an)) = (divisors(&ints[0]), divisors(ints.last().expect("nonzero"))) else {
            return roots;
        };
        if a0.len() * an.len() > MAX_RATIONAL_CANDIDATES {
            return roots;
        }
        let mut cands = std::collections::BTreeSet::new();
        for n in &a0 {
            for d in &an {
                for s in [1, -1] {
                    cands.insert(Rat::new(BigInt::from(s) * n, d.clone()));
                }
            }
        }
        for r in cands {
            if p.eval(&r).is_zero() {
                roots.push(r);
            }
        }
        roots.sort();
        roots
    }

    /// Upper bound on the modulus of every root.
    pub fn cauchy_bound(&self) -> Rat {
        let l = self.lc().abs();
        let m = self.0[..self.degree()]
            .iter()
            .map(|c| c.abs() / &l)
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }
}

/// Beyond this many divisor pairs, roots are left to Sturm isolation.
const MAX_RATIONAL_CANDIDATES: usize = 20_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}

fn sign_variations(chain: &[UPoly], at: &Rat) -> usize {
    count_variations(chain.iter().map(|p| p.eval(at)))
}

fn sign_variations_pos_inf(chain: &[UPoly]) -> usize {
    count_variations(chain.iter().map(|p| p.lc()))
}

fn count_variations(values: impl Iterator<Item = Rat>) -> usize {
    let mut last: Option<bool> = None;
    let mut n = 0;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                n += 1;
            }
        }
        last = Some(pos);
    }
    n
}

/// A real root isolated in `[lo, hi]`; `lo == hi` for an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
    pub multiplicity: u32,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }
}

/// All real roots in `(lo, hi]` (`hi = None` means +infinity) with exact
/// multiplicities, sorted ascending. Non-exact intervals are half-open
/// `(lo, hi]` and pairwise disjoint.
pub fn isolate_real_roots(p: &UPoly, lo: &Rat, hi: Option<&Rat>) -> Vec<RootInterval> {
    let mut found: Vec<(RootInterval, usize)> = Vec::new();
    if p.is_zero() {
        return Vec::new();
    }
    let mut factors: Vec<UPoly> = Vec::new();
    for (f, mult) in p.square_free() {
        let mut rest = f.clone();
        for r in f.rational_roots() {
            if &r > lo && hi.is_none_or(|h| &r <= h) {
                found.push((
                    RootInterval {
                        lo: r.clone(),
                        hi: r.clone(),
                        multiplicity: mult,
                    },
                    usize::MAX,
                ));
            }
            rest = rest.div_rem(&UPoly::new(vec![-r, Rat::one()])).0;
        }
        if rest.degree() == 0 {
            continue;
        }
        let chain = rest.sturm_chain();
        let top = match hi {
            Some(h) => h.clone(),
            None => rest.cauchy_bound(),
        };
        if &top <= lo {
            continue;
        }
        let v_hi = if hi.is_some() {
            sign_variations(&chain, &top)
        } else {
            sign_variations_pos_inf(&chain)
        };
        let count = sign_variations(&chain, lo).saturating_sub(v_hi);
        let mut out = Vec::new();
        bisect(&rest, &chain, lo.clone(), top, count, mult, &mut out);
        let idx = factors.len();
        factors.push(rest);
        found.extend(out.into_iter().map(|r| (r, idx)));
    }
    separate(&mut found, &factors);
    let mut out: Vec<RootInterval> = found.into_iter().map(|(r, _)| r).collect();
    out.sort_by(|a, b| a.hi.cmp(&b.hi));
    out
}

fn overlaps(a: &RootInterval, b: &RootInterval) -> bool {
    match (a.is_exact(), b.is_exact()) {
        (true, true) => a.lo == b.lo,
        (true, false) => b.lo < a.lo && a.lo <= b.hi,
        (false, true) => a.lo < b.lo && b.lo <= a.hi,
        (false, false) => a.lo < b.hi && b.lo < a.hi,
    }
}

/// Halves non-exact intervals until no two intervals intersect.
fn separate(found: &mut [(RootInterval, usize)], factors: &[UPoly]) {
    let two = Rat::from_integer(BigInt::from(2));
    let chains: Vec<Vec<UPoly>> = factors.iter().map(UPoly::sturm_chain).collect();
    loop {
        let mut changed = false;
        for i in 0..found.len() {
            for j in 0..found.len() {
                if i == j || !overlaps(&found[i].0, &found[j].0) {
                    continue;
                }
                for k in [i, j] {
                    let (iv, fi) = &mut found[k];
                    if iv.is_exact() {
                        continue;
                    }
                    let f = &factors[*fi];
                    let mid = (&iv.lo + &iv.hi) / &two;
                    if f.eval(&mid).is_zero() {
                        iv.lo = mid.clone();
                        iv.hi = mid;
                    } else if sign_variations(&chains[*fi], &iv.lo) > sign_variations(&chains[*fi], &mid) {
                        iv.hi = mid;
                    } else {
                        iv.lo = mid;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

fn bisect(p: &UPoly, chain: &[UPoly], lo: Rat, hi: Rat, count: usize, mult: u32, out: &mut Vec<RootInterval>) {
    if count == 0 {
        return;
    }
    if count == 1 {
        if p.eval(&hi).is_zero() {
            out.push(RootInterval {
                lo: hi.clone(),
                hi,
                multiplicity: mult,
            });
        } else {
            out.push(RootInterval {
                lo,
                hi,
                multiplicity: mult,
            });
        }
        return;
    }
    let mid = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
    let v_mid = sign_variations(chain, &mid);
    let left = sign_variations(chain, &lo).saturating_sub(v_mid);
    bisect(p, chain, lo, mid.clone(), left, mult, out);
    bisect(p, chain, mid, hi, count - left, mult, out);
}

/// Narrows an isolating interval of a square-free factor to width `< eps`.
pub fn refine_root(p: &UPoly, root: &RootInterval, eps: &Rat) -> RootInterval {
    if root.is_exact() {
        return root.clone();
    }
    let (mut lo, mut hi) = (root.lo.clone(), root.hi.clone());
    let two = Rat::from_integer(BigInt::from(2));
    let sf: UPoly = p
        .square_free()
        .into_iter()
        .fold(UPoly::new(vec![Rat::one()]), |acc, (f, _)| acc.mul(&f));
    let chain = sf.sturm_chain();
    while &hi - &lo >= *eps {
        let mid = (&lo + &hi) / &two;
        if sf.eval(&mid).is_zero() {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
                multiplicity: root.multiplicity,
            };
        }
        if sign_variations(&chain, &lo) > sign_variations(&chain, &mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootInterval {
        lo,
        hi,
        multiplicity: root.multiplicity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn simple_root_at_half() {
        // 4h^2 - 2h
        let roots = isolate_real_roots(&up(&[0, -2, 4]), &int(0), None);
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].lo, rat(1, 2));
        assert!(roots[0].is_exact());
        assert_eq!(roots[0].multiplicity, 1);
    }

    #[test]
    fn quadratic_without_real_roots() {
        // h(2h-1)(28h^2 - 7h + 6)
        let p = up(&[0, -1, 2]).mul(&up(&[6, -7, 28]));
        let roots = isolate_real_roots(&p, &int(0), None);
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].lo, rat(1, 2));
    }

    #[test]
    fn root_at_zero_is_excluded() {
        assert!(isolate_real_roots(&up(&[0, 0, 1]), &int(0), None).is_empty());
    }

    #[test]
    fn multiplicities_and_irrational_roots() {
        // (h - 1/2)^2 (h^2 - 2)
        let p = up(&[-1, 2]).mul(&up(&[-1, 2])).mul(&up(&[-2, 0, 1]));
        let roots = isolate_real_roots(&p, &int(-10), Some(&int(10)));
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1].lo, rat(1, 2));
        assert_eq!(roots[1].multiplicity, 2);
        let r = refine_root(&up(&[-2, 0, 1]), &roots[2], &rat(1, 1_000_000));
        let mid = crate::algebra::rat::to_f64(&r.midpoint());
        assert!((mid - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn square_free_reconstructs() {
        let p = up(&[1, 1]).mul(&up(&[1, 1])).mul(&up(&[1, 1])).mul(&up(&[-3, 0, 1]));
        let sf = p.square_free();
        let mut acc = UPoly::new(vec![int(1)]);
        for (f, i) in &sf {
            for _ in 0..*i {
                acc = acc.mul(f);
            }
        }
        assert_eq!(acc, p.monic());
    }
}

//! Sparse multivariate polynomials over Q in the declared parameter symbols.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rat::{fmt_rat, gcd_int, lcm_int, Rat};
use super::symbols::Symbols;
use crate::error::{Error, Result};

/// Assignment of exact values to symbols.
pub type Point = BTreeMap<String, Rat>;

/// Exponent vector over a [`Symbols`] universe.
///
/// Field order gives the derived graded-lex ordering: total degree first,
/// then exponents compared in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    deg: u32,
    exps: SmallVec<[u16; 12]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, n),
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e += *o;
        }
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    fn remap(&self, embedding: &[usize], n: usize) -> Monomial {
        let mut exps = SmallVec::from_elem(0, n);
        for (i, &e) in self.exps.iter().enumerate() {
            exps[embedding[i]] = e;
        }
        Monomial { deg: self.deg, exps }
    }

    fn without(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.deg -= m.exps[i] as u32;
        m.exps[i] = 0;
        m
    }

    fn render(&self, symbols: &Symbols) -> Vec<String> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = &symbols.names()[i];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect()
    }
}

/// Polynomial in parameter symbols with exact rational coefficients.
///
/// Zero coefficients are never stored. Operands over different universes are
/// unified by name before any arithmetic.
#[derive(Clone, Debug)]
pub struct ParamPoly {
    symbols: Symbols,
    terms: BTreeMap<Monomial, Rat>,
}

impl ParamPoly {
    pub fn zero(symbols: &Symbols) -> Self {
        ParamPoly {
            symbols: symbols.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(symbols: &Symbols, c: Rat) -> Self {
        let mut p = ParamPoly::zero(symbols);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(symbols.len()), c);
        }
        p
    }

    pub fn one(symbols: &Symbols) -> Self {
        ParamPoly::constant(symbols, Rat::one())
    }

    /// Constant over the empty universe; unifies with anything.
    pub fn from_rat(c: Rat) -> Self {
        ParamPoly::constant(&Symbols::empty(), c)
    }

    pub fn var(symbols: &Symbols, name: &str) -> Result<Self> {
        let i = symbols
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        let mut p = ParamPoly::zero(symbols);
        p.terms.insert(Monomial::var(symbols.len(), i), Rat::one());
        Ok(p)
    }

    /// A lone symbol in its own one-element universe.
    pub fn symbol(name: &str) -> Self {
        ParamPoly::var(&Symbols::new([name]), name).expect("symbol is in its own universe")
    }

    pub fn from_terms<I>(symbols: &Symbols, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = ParamPoly::zero(symbols);
        for (m, c) in terms {
            assert_eq!(m.exps.len(), symbols.len(), "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Largest term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.symbols.index_of(name) {
            Some(i) => self.terms.keys().map(|m| m.exp(i) as u32).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Names of the symbols that actually occur.
    pub fn used_symbols(&self) -> Vec<String> {
        (0..self.symbols.len())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .map(|i| self.symbols.names()[i].clone())
            .collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Same polynomial expressed over a larger universe.
    pub fn in_universe(&self, target: &Symbols) -> ParamPoly {
        if &self.symbols == target {
            return self.clone();
        }
        let emb = self.symbols.embedding_into(target);
        let n = target.len();
        ParamPoly {
            symbols: target.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.remap(&emb, n), c.clone())).collect(),
        }
    }

    fn aligned<'a>(a: &'a ParamPoly, b: &'a ParamPoly) -> (Cow<'a, ParamPoly>, Cow<'a, ParamPoly>) {
        if a.symbols == b.symbols {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let u = a.symbols.union(&b.symbols);
        let a2 = if a.symbols == u {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.in_universe(&u))
        };
        let b2 = if b.symbols == u {
            Cow::Borrowed(b)
        } else {
            Cow::Owned(b.in_universe(&u))
        };
        (a2, b2)
    }

    pub fn scale(&self, c: &Rat) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero(&self.symbols);
        }
        ParamPoly {
            symbols: self.symbols.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// `self += c * other` in place.
    pub fn add_scaled(&mut self, other: &ParamPoly, c: &Rat) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        if self.symbols != other.symbols {
            let u = self.symbols.union(&other.symbols);
            if self.symbols != u {
                *self = self.in_universe(&u);
            }
            let o = other.in_universe(&u);
            for (m, v) in o.terms {
                self.add_term(m, v * c);
            }
            return;
        }
        for (m, v) in other.terms.iter() {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut result = ParamPoly::one(&self.symbols);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, name: &str) -> Result<ParamPoly> {
        let i = self
            .symbols
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        let mut out = ParamPoly::zero(&self.symbols);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exps[i] -= 1;
            dm.deg -= 1;
            out.add_term(dm, c * Rat::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Simultaneous substitution; every bound name must belong to the universe.
    pub fn substitute(&self, bindings: &[(String, ParamPoly)]) -> Result<ParamPoly> {
        for (name, _) in bindings {
            if !self.symbols.contains(name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        Ok(self.substitute_lenient(bindings))
    }

    /// Simultaneous substitution ignoring bindings for absent names.
    pub fn substitute_lenient(&self, bindings: &[(String, ParamPoly)]) -> ParamPoly {
        let mut images: Vec<(usize, &ParamPoly)> = Vec::new();
        for (name, img) in bindings {
            if let Some(i) = self.symbols.index_of(name) {
                if !images.iter().any(|(j, _)| *j == i) {
                    images.push((i, img));
                }
            }
        }
        if images.is_empty() {
            return self.clone();
        }
        let mut universe = self.symbols.clone();
        for (_, img) in &images {
            universe = universe.union(img.symbols());
        }
        let images: Vec<(usize, ParamPoly)> = images
            .into_iter()
            .map(|(i, img)| (i, img.in_universe(&universe)))
            .collect();
        let emb = self.symbols.embedding_into(&universe);
        let n = universe.len();
        let mut cache: HashMap<(usize, u16), ParamPoly> = HashMap::new();
        let mut out = ParamPoly::zero(&universe);
        for (m, c) in &self.terms {
            let mut free = m.clone();
            let mut factors: Vec<(usize, u16)> = Vec::new();
            for (slot, (i, _)) in images.iter().enumerate() {
                let e = m.exp(*i);
                if e > 0 {
                    free = free.without(*i);
                    factors.push((slot, e));
                }
            }
            let mut term = ParamPoly::zero(&universe);
            term.terms.insert(free.remap(&emb, n), c.clone());
            for (slot, e) in factors {
                let pw = cache.entry((slot, e)).or_insert_with(|| images[slot].1.pow(e as u32));
                term = &term * &*pw;
                if term.is_zero() {
                    break;
                }
            }
            out.add_scaled(&term, &Rat::one());
        }
        out
    }

    /// Splits `p = content * primitive` with positive rational content and a
    /// primitive part with coprime integer coefficients.
    pub fn content_and_primitive(&self) -> Result<(Rat, ParamPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = gcd_int(&num_gcd, c.numer());
            den_lcm = lcm_int(&den_lcm, c.denom());
        }
        let content = Rat::new(num_gcd.abs(), den_lcm);
        let inv = Rat::one() / &content;
        Ok((content, self.scale(&inv)))
    }

    pub fn eval(&self, point: &Point) -> Result<Rat> {
        let mut values: Vec<Option<&Rat>> = Vec::with_capacity(self.symbols.len());
        for name in self.symbols.names() {
            values.push(point.get(name));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values[i].ok_or_else(|| Error::UnboundSymbol(self.symbols.names()[i].clone()))?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Binds the given subset of symbols to values.
    pub fn partial_eval(&self, point: &Point) -> ParamPoly {
        let b: Vec<(String, ParamPoly)> = point
            .iter()
            .filter(|(k, _)| self.symbols.contains(k))
            .map(|(k, v)| (k.clone(), ParamPoly::from_rat(v.clone())))
            .collect();
        self.substitute_lenient(&b)
    }

    /// Coefficient of `name^k` as a polynomial in the remaining symbols.
    pub fn coefficient_of(&self, name: &str, k: u16) -> ParamPoly {
        let mut out = ParamPoly::zero(&self.symbols);
        if let Some(i) = self.symbols.index_of(name) {
            for (m, c) in &self.terms {
                if m.exp(i) == k {
                    out.add_term(m.without(i), c.clone());
                }
            }
        } else if k == 0 {
            return self.clone();
        }
        out
    }

    /// Largest power of each symbol dividing every term, as `(name, exponent)`.
    pub fn monomial_factor(&self) -> Vec<(String, u32)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        for (i, name) in self.symbols.names().iter().enumerate() {
            let e = self.terms.keys().map(|m| m.exp(i)).min().unwrap_or(0);
            if e > 0 {
                out.push((name.clone(), e as u32));
            }
        }
        out
    }

    /// Whether `self == c * other` for some positive rational `c`.
    pub fn is_positive_multiple_of(&self, other: &ParamPoly) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            _ => {
                let (_, a) = self.content_and_primitive().expect("nonzero");
                let (_, b) = other.content_and_primitive().expect("nonzero");
                a == b
            }
        }
    }

    /// Whether `self == ±c * other` for some positive rational `c`.
    pub fn is_multiple_of_up_to_sign(&self, other: &ParamPoly) -> bool {
        self.is_positive_multiple_of(other) || self.is_positive_multiple_of(&-other)
    }

    pub(crate) fn mul_monomial(&self, mono: &Monomial, c: &Rat) -> ParamPoly {
        let mut out = ParamPoly::zero(&self.symbols);
        for (m, v) in &self.terms {
            out.terms.insert(m.mul(mono), v * c);
        }
        out
    }
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = ParamPoly::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for ParamPoly {}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let (a, b) = ParamPoly::aligned(self, rhs);
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = big.into_owned();
        for (m, c) in small.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let (a, b) = ParamPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (m, c) in b.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let (a, b) = ParamPoly::aligned(self, rhs);
        let mut out = ParamPoly::zero(&a.symbols);
        if a.is_zero() || b.is_zero() {
            return out;
        }
        if a.len() == 1 {
            let (m, c) = a.terms.iter().next().expect("one term");
            return b.mul_monomial(m, c);
        }
        if b.len() == 1 {
            let (m, c) = b.terms.iter().next().expect("one term");
            return a.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in a.terms.iter() {
            for (mb, cb) in b.terms.iter() {
                let m = ma.mul(mb);
                let v = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(v);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += v;
                    }
                }
            }
        }
        out.terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            symbols: self.symbols.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(mut self) -> ParamPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<$ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned;

forward_owned!(ParamPoly, Add, add);
forward_owned!(ParamPoly, Sub, sub);
forward_owned!(ParamPoly, Mul, mul);

/// Renders `coefficient * factors` in canonical form, returning the sign
/// separately so callers can join terms with ` + ` / ` - `.
pub(crate) fn render_term(c: &Rat, factors: &[String]) -> (bool, String) {
    let negative = c.is_negative();
    let mag = c.abs();
    let body = if factors.is_empty() {
        fmt_rat(&mag)
    } else if mag.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", fmt_rat(&mag), factors.join("*"))
    };
    (negative, body)
}

pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl ParamPoly {
    /// Terms in descending monomial order with their factor strings.
    pub(crate) fn rendered_terms(&self, extra: &[String]) -> Vec<(bool, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut f = m.render(&self.symbols);
                f.extend(extra.iter().cloned());
                render_term(c, &f)
            })
            .collect()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(self.rendered_terms(&[])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{int, rat};

    fn syms() -> Symbols {
        Symbols::new(["a", "b", "c"])
    }

    fn v(name: &str) -> ParamPoly {
        ParamPoly::var(&syms(), name).unwrap()
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &v("a") + &v("b");
        let q = &p - &v("a");
        assert_eq!(q, v("b"));
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn substitution_matches_chain_example() {
        let s = Symbols::new(["b00", "b20", "b02"]);
        let b20 = ParamPoly::var(&s, "b20").unwrap();
        let b02 = ParamPoly::var(&s, "b02").unwrap();
        let l1 = (&b02.scale(&int(3)) + &b20).scale(&rat(1, 8));
        let out = l1.substitute(&[("b20".into(), b02.scale(&int(-3)))]).unwrap();
        assert!(out.is_zero());
        assert_eq!(l1.substitute(&[]).unwrap(), l1);
        assert!(matches!(
            l1.substitute(&[("zz".into(), b02.clone())]),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn derivative_of_linear_form() {
        let s = Symbols::new(["b02", "b20"]);
        let p = &ParamPoly::var(&s, "b02").unwrap().scale(&int(3)) + &ParamPoly::var(&s, "b20").unwrap();
        assert_eq!(p.derivative("b02").unwrap(), ParamPoly::from_rat(int(3)));
    }

    #[test]
    fn content_extraction() {
        let ab = &v("a") * &v("b");
        let (c, q) = ab.scale(&rat(-1, 8)).content_and_primitive().unwrap();
        assert_eq!(c, rat(1, 8));
        assert_eq!(q, -&ab);
        let (c, q) = ParamPoly::from_rat(int(7)).content_and_primitive().unwrap();
        assert_eq!(c, int(7));
        assert_eq!(q, ParamPoly::from_rat(int(1)));
        assert_eq!(
            ParamPoly::zero(&syms()).content_and_primitive(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn eval_and_binding_errors() {
        let p = (&v("a") * &v("b")).scale(&rat(-1, 8));
        let mut pt = Point::new();
        pt.insert("a".into(), int(2));
        assert_eq!(p.eval(&pt), Err(Error::UnboundSymbol("b".into())));
        pt.insert("b".into(), int(4));
        assert_eq!(p.eval(&pt).unwrap(), int(-1));
    }

    #[test]
    fn rendering_is_descending_grlex() {
        let p = &(&v("c") + &v("a").pow(2)) - &(&v("a") * &v("b")).scale(&rat(1, 3));
        assert_eq!(p.to_string(), "a^2 - 1/3*a*b + c");
        assert_eq!(ParamPoly::zero(&syms()).to_string(), "0");
    }

    #[test]
    fn universes_unify_by_name() {
        let a = ParamPoly::symbol("a");
        let b = ParamPoly::symbol("b");
        let s = &a + &b;
        assert_eq!(s.symbols().names(), &["a", "b"]);
        assert_eq!(&s - &b, a);
    }
}

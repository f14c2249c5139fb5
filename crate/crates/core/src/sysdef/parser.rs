//! Line-oriented system files and a small recursive-descent expression parser.
//!
//! ```text
//! # comment
//! params: a, b, c
//! dx = -y
//! dy = x + y*(x^2+y^2-1)*(a*x+b*y+c)
//! perturb: a, b, c
//! ```
//!
//! Unary minus applies to the whole following factor, so `-x^2` is `-(x^2)`.
//! Division is accepted only by a nonzero rational constant, as in `(a+b)/3`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::PlanarSystem;
use crate::algebra::{ParamPoly, PlanarPoly, Rat, Symbols};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Lexed> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                continue;
            }
            '#' => break,
            '+' => toks.push((Tok::Plus, col)),
            '-' => toks.push((Tok::Minus, col)),
            '*' => toks.push((Tok::Star, col)),
            '/' => toks.push((Tok::Slash, col)),
            '^' => toks.push((Tok::Caret, col)),
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i < chars.len() && chars[i] == '.' {
                    return Err(Error::Syntax {
                        line,
                        col: col0 + i,
                        message: "decimal literals are not allowed; write p/q".into(),
                    });
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().expect("digits")), col));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(Lexed {
        toks,
        end_col: col0 + chars.len(),
    })
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
    symbols: &'a Symbols,
    allow_phase: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            col: self.col(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<PlanarPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PlanarPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.factor()?;
                    let c = match d.terms().next() {
                        None => None,
                        Some((m, c)) if d.len() == 1 && m.degree() == 0 => c.constant_value(),
                        Some(_) => None,
                    };
                    match c {
                        Some(c) if !c.is_zero() => acc = acc.scale_rat(&(Rat::from_integer(1.into()) / c)),
                        _ => {
                            return Err(Error::Syntax {
                                line: self.line,
                                col,
                                message: "division only by a nonzero rational constant".into(),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<PlanarPoly> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<PlanarPoly> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut r = Rat::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            r /= Rat::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return Err(self.err("zero denominator")),
                        _ => return Err(self.err("expected an integer denominator")),
                    }
                }
                Ok(PlanarPoly::from_rat(self.symbols, r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "x" | "y" if !self.allow_phase => Err(Error::Syntax {
                        line: self.line,
                        col,
                        message: format!("phase variable `{name}` not allowed here"),
                    }),
                    "x" => Ok(PlanarPoly::x(self.symbols)),
                    "y" => Ok(PlanarPoly::y(self.symbols)),
                    _ if self.symbols.contains(&name) => PlanarPoly::param(self.symbols, &name),
                    _ => Err(Error::UndeclaredIdentifier {
                        name,
                        line: self.line,
                        col,
                    }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(_) => Err(self.err("expected a number, identifier or `(`")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

fn parse_full(text: &str, symbols: &Symbols, line: usize, col0: usize, allow_phase: bool) -> Result<PlanarPoly> {
    let lexed = lex(text, line, col0)?;
    let mut p = Parser {
        toks: &lexed.toks,
        pos: 0,
        line,
        end_col: lexed.end_col,
        symbols,
        allow_phase,
    };
    let e = p.expr()?;
    if p.pos != lexed.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e.in_universe(symbols))
}

/// Parses a polynomial in `x`, `y` and the given parameters.
pub fn parse_expr(text: &str, symbols: &Symbols) -> Result<PlanarPoly> {
    parse_full(text, symbols, 1, 1, true)
}

/// Parses a polynomial in the parameters only.
pub fn parse_param_expr(text: &str, symbols: &Symbols) -> Result<ParamPoly> {
    let p = parse_full(text, symbols, 1, 1, false)?;
    Ok(p.coeff(0, 0).in_universe(symbols))
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

fn parse_name_list(body: &str, line: usize, col0: usize) -> Result<Vec<(String, usize)>> {
    let mut out = Vec::new();
    if body.trim().is_empty() {
        return Ok(out);
    }
    let mut offset = 0;
    for piece in body.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let name = piece.trim();
        let col = col0 + offset + lead;
        if !is_ident(name) {
            return Err(Error::Syntax {
                line,
                col,
                message: format!("expected an identifier, found `{name}`"),
            });
        }
        out.push((name.to_string(), col));
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Parses a system file.
pub fn parse_system(text: &str) -> Result<PlanarSystem> {
    let mut params: Option<Symbols> = None;
    let mut dx: Option<(usize, usize, String)> = None;
    let mut dy: Option<(usize, usize, String)> = None;
    let mut perturb: Option<(usize, Vec<(String, usize)>)> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let trimmed = content.trim_start();
        let (key, rest, sep_col) = if let Some(pos) = trimmed.find(':').filter(|p| {
            let k = trimmed[..*p].trim();
            k == "params" || k == "perturb"
        }) {
            (trimmed[..pos].trim(), &trimmed[pos + 1..], lead + pos + 2)
        } else if let Some(pos) = trimmed.find('=') {
            (trimmed[..pos].trim(), &trimmed[pos + 1..], lead + pos + 2)
        } else {
            return Err(Error::Syntax {
                line,
                col: lead + 1,
                message: "expected `params:`, `dx =`, `dy =` or `perturb:`".into(),
            });
        };
        match key {
            "params" => {
                if params.is_some() {
                    return Err(Error::DuplicateDefinition {
                        name: "params".into(),
                        line,
                    });
                }
                let names = parse_name_list(rest, line, sep_col)?;
                let mut seen: Vec<String> = Vec::new();
                for (n, col) in &names {
                    if n == "x" || n == "y" {
                        return Err(Error::Syntax {
                            line,
                            col: *col,
                            message: format!("`{n}` is a reserved phase variable"),
                        });
                    }
                    if seen.contains(n) {
                        return Err(Error::DuplicateDefinition { name: n.clone(), line });
                    }
                    seen.push(n.clone());
                }
                params = Some(Symbols::new(seen));
            }
            "perturb" => {
                if perturb.is_some() {
                    return Err(Error::DuplicateDefinition {
                        name: "perturb".into(),
                        line,
                    });
                }
                perturb = Some((line, parse_name_list(rest, line, sep_col)?));
            }
            "dx" | "dy" => {
                let slot = if key == "dx" { &mut dx } else { &mut dy };
                if slot.is_some() {
                    return Err(Error::DuplicateDefinition {
                        name: key.to_string(),
                        line,
                    });
                }
                *slot = Some((line, sep_col, rest.to_string()));
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    col: lead + 1,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let params = params.unwrap_or_else(Symbols::empty);
    let missing = |what: &str| Error::Syntax {
        line: last_line + 1,
        col: 1,
        message: format!("missing `{what} =` line"),
    };
    let (l, c, t) = dx.ok_or_else(|| missing("dx"))?;
    let p = parse_full(&t, &params, l, c, true)?;
    let (l, c, t) = dy.ok_or_else(|| missing("dy"))?;
    let q = parse_full(&t, &params, l, c, true)?;
    let mut sys = PlanarSystem::new(p, q, params.clone());
    if let Some((line, names)) = perturb {
        for (n, col) in &names {
            if !params.contains(n) {
                return Err(Error::UndeclaredIdentifier {
                    name: n.clone(),
                    line,
                    col: *col,
                });
            }
        }
        sys.perturbation_params = names.into_iter().map(|(n, _)| n).collect();
    }
    Ok(sys)
}

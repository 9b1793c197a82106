//! Curve files and the component expression grammar.
//!
//! ```text
//! # comment
//! dim 2
//! exp mu 1
//! assert-proper
//! 2*z - cosh(2*z) + 1
//! 4*z + cosh(2*z)
//! ```
//!
//! Expressions use `+ - * / ^`, implicit multiplication, integer literals,
//! `z`, `t = exp(mu z)` and `i`. `exp`, `cosh`, `sinh`, `cos` and `sin` of
//! `k z` are rewritten to powers of `t` and need an `exp mu` line.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::curve::Curve;
use crate::exact::{Gr, RatFunc, Var};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
    text: String,
}

fn lex(s: &str, line: usize, col0: usize) -> Result<Vec<Token>, Error> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = col0 + k + 1;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            out.push(Token { tok: Tok::Num(text.parse().unwrap()), col, text });
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            out.push(Token { tok: Tok::Ident(text.clone()), col, text });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), col, text: c.to_string() });
            k += 1;
        } else {
            return Err(Error::Parse { line, col, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
    mu: Option<&'a Gr>,
    uses_t: bool,
}

impl Parser<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end_col, |t| t.col)
    }

    fn is_op(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Op(o), .. }) if *o == c)
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.is_op(c) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.peek().map_or("end of line".to_string(), |t| format!("'{}'", t.text));
            Err(self.err(self.here(), format!("expected '{c}', found {found}")))
        }
    }

    fn expr(&mut self) -> Result<RatFunc, Error> {
        let mut acc = self.term()?;
        loop {
            if self.is_op('+') {
                self.pos += 1;
                acc = acc.add(&self.term()?);
            } else if self.is_op('-') {
                self.pos += 1;
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Num(_) | Tok::Ident(_), .. })) || self.is_op('(')
    }

    fn term(&mut self) -> Result<RatFunc, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.is_op('*') {
                self.pos += 1;
                acc = acc.mul(&self.unary()?);
            } else if self.is_op('/') {
                let col = self.here();
                self.pos += 1;
                let d = self.unary()?;
                acc = acc.div(&d).ok_or_else(|| self.err(col, "division by zero"))?;
            } else if self.starts_primary() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, Error> {
        if self.is_op('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if self.is_op('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i32, Error> {
        let neg = if self.is_op('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let paren = self.is_op('(');
        if paren {
            self.pos += 1;
            let e = self.exponent()?;
            self.expect(')')?;
            return Ok(if neg { -e } else { e });
        }
        match self.peek().cloned() {
            Some(Token { tok: Tok::Num(n), col, text }) => {
                self.pos += 1;
                let e: i32 = n.try_into().map_err(|_| self.err(col, format!("exponent '{text}' is too large")))?;
                Ok(if neg { -e } else { e })
            }
            Some(t) => Err(self.err(t.col, format!("malformed exponent '{}'", t.text))),
            None => Err(self.err(self.end_col, "missing exponent")),
        }
    }

    fn power(&mut self) -> Result<RatFunc, Error> {
        let base = self.primary()?;
        if self.is_op('^') {
            let col = self.here();
            self.pos += 1;
            let e = self.exponent()?;
            if e < 0 && base.is_zero() {
                return Err(self.err(col, "negative power of zero"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<RatFunc, Error> {
        let Some(t) = self.peek().cloned() else {
            return Err(self.err(self.end_col, "unexpected end of expression"));
        };
        self.pos += 1;
        match t.tok {
            Tok::Num(n) => Ok(RatFunc::constant(Gr::from_bigint(n))),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Op(_) => Err(self.err(t.col, format!("unexpected '{}'", t.text))),
            Tok::Ident(name) => match name.as_str() {
                "z" => Ok(RatFunc::var(Var::Z)),
                "i" => Ok(RatFunc::constant(Gr::i())),
                "t" => {
                    if self.mu.is_none() {
                        return Err(self.err(t.col, "'t' needs an 'exp mu' line"));
                    }
                    self.uses_t = true;
                    Ok(RatFunc::var(Var::T))
                }
                "exp" | "cosh" | "sinh" | "cos" | "sin" => self.function(&name, t.col),
                _ => Err(self.err(t.col, format!("unknown identifier '{name}'"))),
            },
        }
    }

    /// `f(k z)` rewritten through `t = e^{mu z}`.
    fn function(&mut self, name: &str, col: usize) -> Result<RatFunc, Error> {
        self.expect('(')?;
        let arg_col = self.here();
        let arg = self.expr()?;
        self.expect(')')?;
        let Some(mu) = self.mu else {
            return Err(self.err(col, format!("'{name}' needs an 'exp mu' line")));
        };
        let linear = arg.is_polynomial()
            && arg.num().vars() == vec![Var::Z]
            && arg.num().degree_in(Var::Z) == 1
            && arg.num().constant_term().is_zero();
        if !linear {
            return Err(self.err(arg_col, format!("argument of '{name}' must be k*z")));
        }
        let k = arg.num().to_univariate(Var::Z)[1].clone();
        let k = if matches!(name, "cos" | "sin") { &k * &Gr::i() } else { k };
        let m = &k / mu;
        if !m.is_real() || !m.re.is_integer() {
            return Err(self.err(arg_col, format!("frequency {k} is not an integer multiple of mu = {mu}")));
        }
        let m: i32 = m.re.to_integer().try_into().map_err(|_| self.err(arg_col, "frequency too large"))?;
        self.uses_t = true;
        let tp = RatFunc::var(Var::T).pow(m);
        let tm = RatFunc::var(Var::T).pow(-m);
        let half = Gr::from_frac(1, 2);
        Ok(match name {
            "exp" => tp,
            "cosh" | "cos" => tp.add(&tm).scale(&half),
            "sinh" => tp.sub(&tm).scale(&half),
            _ => tp.sub(&tm).scale(&(&half * &(-Gr::i()))),
        })
    }
}

/// Parses one expression; `line` only labels errors.
pub fn parse_expr(s: &str, mu: Option<&Gr>, line: usize) -> Result<RatFunc, Error> {
    let toks = lex(s, line, 0)?;
    let mut p = Parser { toks, pos: 0, line, end_col: s.chars().count() + 1, mu, uses_t: false };
    if p.toks.is_empty() {
        return Err(p.err(1, "empty expression"));
    }
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.err(t.col, format!("unexpected '{}'", t.text)));
    }
    Ok(e)
}

/// A Gaussian rational constant written as an expression.
pub fn parse_constant(s: &str, line: usize) -> Result<Gr, Error> {
    let e = parse_expr(s, None, line)?;
    e.constant_value().ok_or_else(|| Error::Parse { line, col: 1, msg: format!("'{s}' is not a constant") })
}

/// Parses a curve file.
pub fn parse_curve(text: &str) -> Result<Curve, Error> {
    let mut dim: Option<usize> = None;
    let mut mu: Option<Gr> = None;
    let mut proper = false;
    let mut comps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let lead = raw.len() - raw.trim_start().len();
        if let Some(rest) = body.strip_prefix("dim ") {
            if dim.is_some() || !comps.is_empty() {
                return Err(Error::Parse { line, col: 1, msg: "'dim' must come first and only once".into() });
            }
            let n = rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                line,
                col: lead + 5,
                msg: format!("bad dimension '{}'", rest.trim()),
            })?;
            if n < 2 {
                return Err(Error::Parse { line, col: lead + 5, msg: "dimension must be at least 2".into() });
            }
            dim = Some(n);
        } else if let Some(rest) = body.strip_prefix("exp mu ") {
            let m = parse_constant(rest, line)?;
            if m.is_zero() {
                return Err(Error::Parse { line, col: lead + 8, msg: "mu must be nonzero".into() });
            }
            mu = Some(m);
        } else if body == "assert-proper" {
            proper = true;
        } else {
            if dim.is_none() {
                return Err(Error::Parse { line, col: 1, msg: "missing 'dim n' header".into() });
            }
            let e = parse_expr(body, mu.as_ref(), line).map_err(|e| match e {
                Error::Parse { line, col, msg } => Error::Parse { line, col: col + lead, msg },
                e => e,
            })?;
            comps.push(e);
        }
    }
    let Some(n) = dim else {
        return Err(Error::Parse { line: 1, col: 1, msg: "missing 'dim n' header".into() });
    };
    if comps.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: comps.len() });
    }
    let c = match mu {
        Some(m) => Curve::exp_type(comps, m)?,
        None => Curve::rational(comps)?,
    };
    Ok(c.with_proper_assertion(proper))
}

/// Canonical file text; `parse_curve` reads it back to the same curve.
pub fn print_curve(c: &Curve) -> String {
    let mut s = format!("dim {}\n", c.dim());
    if let Some(mu) = c.mu() {
        s.push_str(&format!("exp mu {mu}\n"));
    }
    if c.proper_asserted() {
        s.push_str("assert-proper\n");
    }
    for comp in c.components() {
        s.push_str(&comp.to_string());
        s.push('\n');
    }
    s
}

/// Reads a curve file from disk.
pub fn read_curve(path: &std::path::Path) -> Result<Curve, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_curve(&text)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_parabola() {
        let c = parse_curve("dim 2\nz\nz^2\n").unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.components()[1], RatFunc::var(Var::Z).pow(2));
    }

    #[test]
    fn spiral_rewrites_to_t() {
        let c = parse_curve("dim 3\nexp mu i\nz*cos(z)\nz*sin(z)\nz\n").unwrap();
        assert_eq!(c.mu(), Some(&Gr::i()));
        let t = RatFunc::var(Var::T);
        let want = RatFunc::var(Var::Z).mul(&t.add(&t.pow(-1))).scale(&Gr::from_frac(1, 2));
        assert_eq!(c.components()[0], want);
    }

    #[test]
    fn errors_name_the_token() {
        match parse_curve("dim 2\nz\nz^x\n") {
            Err(Error::Parse { line: 3, col: 3, msg }) => assert!(msg.contains("'x'"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_curve("dim 2\nz\n"), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_curve("dim 2\nz\n1/(z-z)\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn print_then_parse() {
        let c = parse_curve("dim 2\nexp mu 1\nassert-proper\n(2+i/3)*z - cosh(2z) + 1\n4z/(z^2+1) + sinh(2 z)\n").unwrap();
        let text = print_curve(&c);
        assert_eq!(parse_curve(&text).unwrap(), c);
        assert_eq!(print_curve(&parse_curve(&text).unwrap()), text);
    }
}

//! On-disk template cache: one s-expression file per dimension.
//!
//! ```text
//! (templates 3
//!   (template 1 (pow (+ (* 6 I0) (* -5 (^ I3 2))) 1) (pow (+ (* 4 I2) (* 1 (^ I3 2))) 1))
//!   ...)
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use num_rational::BigRational;

use super::templates::{generate_templates, InvariantTemplate};
use crate::exact::{Gr, Mono, MultiPoly, Var};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn tokenize(s: &str) -> Vec<String> {
    s.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn parse_sexp(tokens: &[String], pos: &mut usize) -> Result<Sexp, Error> {
    let bad = |m: &str| Error::Parse { line: 0, col: 0, msg: format!("template cache: {m}") };
    let t = tokens.get(*pos).ok_or_else(|| bad("unexpected end"))?;
    *pos += 1;
    match t.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(parse_sexp(tokens, pos)?),
                    None => return Err(bad("unbalanced parentheses")),
                }
            }
        }
        ")" => Err(bad("unexpected ')'")),
        a => Ok(Sexp::Atom(a.to_string())),
    }
}

fn rational_str(q: &BigRational) -> String {
    if q.is_integer() { q.numer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) }
}

fn coeff_str(c: &Gr) -> String {
    if c.is_real() {
        rational_str(&c.re)
    } else {
        format!("(gauss {} {})", rational_str(&c.re), rational_str(&c.im))
    }
}

fn poly_str(p: &MultiPoly) -> String {
    let mut s = String::from("(+");
    for (m, c) in p.terms() {
        s.push_str(" (* ");
        s.push_str(&coeff_str(c));
        for &(v, e) in m.0.iter() {
            let k = v.inv_index().expect("template symbol");
            if e == 1 {
                s.push_str(&format!(" I{k}"));
            } else {
                s.push_str(&format!(" (^ I{k} {e})"));
            }
        }
        s.push(')');
    }
    s.push(')');
    s
}

pub fn templates_to_sexp(n: usize, ts: &[InvariantTemplate]) -> String {
    let mut s = format!("(templates {n}\n");
    for t in ts {
        s.push_str(&format!(
            "  (template {} (pow {} {}) (pow {} {}))\n",
            t.j,
            poly_str(&t.num),
            t.num_exp,
            poly_str(&t.den),
            t.den_exp
        ));
    }
    s.push_str(")\n");
    s
}

fn atom(s: &Sexp) -> Result<&str, Error> {
    match s {
        Sexp::Atom(a) => Ok(a),
        _ => Err(Error::Parse { line: 0, col: 0, msg: "template cache: expected an atom".into() }),
    }
}

fn list(s: &Sexp) -> Result<&[Sexp], Error> {
    match s {
        Sexp::List(l) => Ok(l),
        _ => Err(Error::Parse { line: 0, col: 0, msg: "template cache: expected a list".into() }),
    }
}

fn bad(m: String) -> Error {
    Error::Parse { line: 0, col: 0, msg: format!("template cache: {m}") }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    s.parse::<BigRational>().map_err(|_| bad(format!("bad number {s}")))
}

fn parse_coeff(s: &Sexp) -> Result<Gr, Error> {
    match s {
        Sexp::Atom(a) => Ok(Gr::real(parse_rational(a)?)),
        Sexp::List(l) if l.len() == 3 && atom(&l[0])? == "gauss" => {
            Ok(Gr::new(parse_rational(atom(&l[1])?)?, parse_rational(atom(&l[2])?)?))
        }
        _ => Err(bad("bad coefficient".into())),
    }
}

fn parse_symbol(s: &str) -> Result<Var, Error> {
    let k: usize = s.strip_prefix('I').and_then(|x| x.parse().ok()).ok_or_else(|| bad(format!("bad symbol {s}")))?;
    if k >= 32 {
        return Err(bad(format!("symbol index {k} too large")));
    }
    Ok(Var::inv(k))
}

fn parse_poly(s: &Sexp) -> Result<MultiPoly, Error> {
    let l = list(s)?;
    if l.is_empty() || atom(&l[0])? != "+" {
        return Err(bad("expected (+ ...)".into()));
    }
    let mut terms = Vec::new();
    for t in &l[1..] {
        let tl = list(t)?;
        if tl.len() < 2 || atom(&tl[0])? != "*" {
            return Err(bad("expected (* c ...)".into()));
        }
        let c = parse_coeff(&tl[1])?;
        let mut m = Mono::one();
        for f in &tl[2..] {
            match f {
                Sexp::Atom(a) => m = m.mul(&Mono::var(parse_symbol(a)?, 1)),
                Sexp::List(pl) if pl.len() == 3 && atom(&pl[0])? == "^" => {
                    let e: u32 = atom(&pl[2])?.parse().map_err(|_| bad("bad exponent".into()))?;
                    m = m.mul(&Mono::var(parse_symbol(atom(&pl[1])?)?, e));
                }
                _ => return Err(bad("bad factor".into())),
            }
        }
        terms.push((m, c));
    }
    Ok(MultiPoly::from_terms(terms))
}

fn parse_pow(s: &Sexp) -> Result<(MultiPoly, u32), Error> {
    let l = list(s)?;
    if l.len() != 3 || atom(&l[0])? != "pow" {
        return Err(bad("expected (pow base e)".into()));
    }
    let e: u32 = atom(&l[2])?.parse().map_err(|_| bad("bad exponent".into()))?;
    Ok((parse_poly(&l[1])?, e))
}

pub fn templates_from_sexp(text: &str) -> Result<(usize, Vec<InvariantTemplate>), Error> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let top = parse_sexp(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(bad("trailing input".into()));
    }
    let l = list(&top)?;
    if l.len() < 2 || atom(&l[0])? != "templates" {
        return Err(bad("expected (templates n ...)".into()));
    }
    let n: usize = atom(&l[1])?.parse().map_err(|_| bad("bad dimension".into()))?;
    let mut out = Vec::new();
    for t in &l[2..] {
        let tl = list(t)?;
        if tl.len() != 4 || atom(&tl[0])? != "template" {
            return Err(bad("expected (template j num den)".into()));
        }
        let j: usize = atom(&tl[1])?.parse().map_err(|_| bad("bad index".into()))?;
        let (num, num_exp) = parse_pow(&tl[2])?;
        let (den, den_exp) = parse_pow(&tl[3])?;
        out.push(InvariantTemplate { n, j, num, num_exp, den, den_exp });
    }
    Ok((n, out))
}

/// Directory of cached template files.
#[derive(Clone, Debug)]
pub struct TemplateCache {
    dir: PathBuf,
}

impl TemplateCache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        Self { dir: dir.as_ref().to_path_buf() }
    }

    /// Beside the running executable.
    pub fn default_location() -> Self {
        let dir = std::env::current_exe()
            .ok()
            .and_then(|p| p.parent().map(|d| d.join("template-cache")))
            .unwrap_or_else(|| PathBuf::from("template-cache"));
        Self { dir }
    }

    pub fn path_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("templates-n{n}.sexp"))
    }

    /// Reads the cached templates, generating and storing them when absent or unreadable.
    pub fn load_or_generate(&self, n: usize) -> Result<Vec<InvariantTemplate>, Error> {
        let path = self.path_for(n);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok((m, ts)) = templates_from_sexp(&text) {
                if m == n && ts.len() == n - 1 {
                    return Ok(ts);
                }
            }
        }
        let ts = generate_templates(n)?;
        fs::create_dir_all(&self.dir)?;
        // write then rename, so concurrent writers never expose a partial file
        let tmp = self.dir.join(format!(".templates-n{n}.{}.tmp", std::process::id()));
        fs::write(&tmp, templates_to_sexp(n, &ts))?;
        fs::rename(&tmp, &path)?;
        Ok(ts)
    }
}

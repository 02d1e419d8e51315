//! Reader for the presentation language.
//!
//! ```text
//! field Q                # or GF(p)
//! param q = 2;
//! vertex v1;
//! arrow x: v1 -> v1;
//! arrow y: v1 -> v1;
//! relation x*x;
//! relation x*y - q*y*x;
//! relation y*y;
//! ```
//!
//! Statements end at `;` or at the end of a line. Paths are written in
//! diagrammatic order, so `x*y` is "x, then y".

use std::collections::BTreeMap;

use super::presentation::{Presentation, Relation};
use super::quiver::{Arrow, Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldElem, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let s = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || "_.@'".contains(chars[i])) {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[s..i].iter().collect()), line, col });
                continue;
            }
            if c.is_ascii_digit() {
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token { tok: Tok::Num(chars[s..i].iter().collect()), line, col });
                continue;
            }
            let sym = match c {
                '-' if chars.get(i + 1) == Some(&'>') => "->",
                ';' => ";",
                ',' => ",",
                ':' => ":",
                '*' => "*",
                '+' => "+",
                '-' => "-",
                '/' => "/",
                '(' => "(",
                ')' => ")",
                '=' => "=",
                _ => return Err(syntax(line, col, format!("unexpected character {c:?}"))),
            };
            i += sym.len();
            out.push(Token { tok: Tok::Sym(sym), line, col });
        }
        out.push(Token { tok: Tok::End, line, col: chars.len() + 1 });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Rational),
    Name(String),
    Neg(Box<Expr>),
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug)]
struct Located<T> {
    value: T,
    line: usize,
    col: usize,
}

#[derive(Default)]
struct Ast {
    field: Option<Located<String>>,
    params: Vec<Located<(String, Rational)>>,
    vertices: Vec<Located<String>>,
    arrows: Vec<Located<(String, String, String)>>,
    relations: Vec<Located<Vec<Located<(bool, Vec<Located<Expr>>)>>>>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, s: &'static str) -> Result<Token> {
        let t = self.next();
        if t.tok == Tok::Sym(s) {
            Ok(t)
        } else {
            Err(syntax(t.line, t.col, format!("expected `{s}`, found {}", describe(&t.tok))))
        }
    }

    fn ident(&mut self) -> Result<Located<String>> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok(Located { value: s, line: t.line, col: t.col }),
            other => Err(syntax(t.line, t.col, format!("expected a name, found {}", describe(&other)))),
        }
    }

    fn end_statement(&mut self) -> Result<()> {
        let t = self.next();
        match t.tok {
            Tok::End => Ok(()),
            Tok::Sym(";") => {
                if self.peek().tok == Tok::End {
                    self.next();
                }
                Ok(())
            }
            other => {
                Err(syntax(t.line, t.col, format!("expected end of statement, found {}", describe(&other))))
            }
        }
    }

    fn number(&mut self) -> Result<Rational> {
        let neg = if self.peek().tok == Tok::Sym("-") {
            self.next();
            true
        } else {
            false
        };
        let t = self.next();
        let Tok::Num(n) = t.tok else {
            return Err(syntax(t.line, t.col, "expected a number"));
        };
        let mut text = n;
        if self.peek().tok == Tok::Sym("/") {
            self.next();
            let d = self.next();
            let Tok::Num(d) = d.tok else {
                return Err(syntax(d.line, d.col, "expected a denominator"));
            };
            if d.trim_start_matches('0').is_empty() {
                return Err(syntax(t.line, t.col, "zero denominator"));
            }
            text = format!("{text}/{d}");
        }
        if neg {
            text = format!("-{text}");
        }
        text.parse::<Rational>().map_err(|_| syntax(t.line, t.col, "malformed number"))
    }

    fn statement(&mut self, ast: &mut Ast) -> Result<()> {
        let t = self.next();
        let kw = match &t.tok {
            Tok::End => return Ok(()),
            Tok::Sym(";") => return Ok(()),
            Tok::Ident(s) => s.clone(),
            other => {
                return Err(syntax(t.line, t.col, format!("expected a keyword, found {}", describe(other))))
            }
        };
        match kw.as_str() {
            "field" => {
                let f = self.ident()?;
                let mut text = f.value.clone();
                if self.peek().tok == Tok::Sym("(") || self.peek().tok == Tok::Sym(":") {
                    let open = self.next();
                    let n = self.next();
                    let Tok::Num(p) = n.tok else {
                        return Err(syntax(n.line, n.col, "expected a prime"));
                    };
                    if open.tok == Tok::Sym("(") {
                        self.expect_sym(")")?;
                    }
                    text = format!("{text}({p})");
                }
                if ast.field.is_some() {
                    return Err(syntax(t.line, t.col, "field declared twice"));
                }
                ast.field = Some(Located { value: text, line: f.line, col: f.col });
            }
            "param" => {
                let name = self.ident()?;
                self.expect_sym("=")?;
                let v = self.number()?;
                ast.params.push(Located { value: (name.value, v), line: name.line, col: name.col });
            }
            "vertex" | "vertices" => loop {
                ast.vertices.push(self.ident()?);
                if self.peek().tok == Tok::Sym(",") {
                    self.next();
                } else {
                    break;
                }
            },
            "arrow" | "arrows" => loop {
                let name = self.ident()?;
                self.expect_sym(":")?;
                let s = self.ident()?;
                self.expect_sym("->")?;
                let e = self.ident()?;
                ast.arrows.push(Located {
                    value: (name.value, s.value, e.value),
                    line: name.line,
                    col: name.col,
                });
                if self.peek().tok == Tok::Sym(",") {
                    self.next();
                } else {
                    break;
                }
            },
            "relation" | "relations" => loop {
                let start = self.peek().clone();
                let terms = self.sum()?;
                ast.relations.push(Located { value: terms, line: start.line, col: start.col });
                if self.peek().tok == Tok::Sym(",") {
                    self.next();
                } else {
                    break;
                }
            },
            other => return Err(syntax(t.line, t.col, format!("unknown keyword `{other}`"))),
        }
        self.end_statement()
    }

    /// A signed sum of products; each term keeps its factors.
    fn sum(&mut self) -> Result<Vec<Located<(bool, Vec<Located<Expr>>)>>> {
        let mut terms = Vec::new();
        let mut negative = false;
        let first = self.peek().clone();
        if matches!(first.tok, Tok::Sym("-") | Tok::Sym("+")) {
            negative = first.tok == Tok::Sym("-");
            self.next();
        }
        loop {
            let at = self.peek().clone();
            let factors = self.product()?;
            terms.push(Located { value: (negative, factors), line: at.line, col: at.col });
            match self.peek().tok {
                Tok::Sym("+") => negative = false,
                Tok::Sym("-") => negative = true,
                _ => break,
            }
            self.next();
        }
        Ok(terms)
    }

    fn product(&mut self) -> Result<Vec<Located<Expr>>> {
        let mut factors = vec![self.factor()?];
        while self.peek().tok == Tok::Sym("*") {
            self.next();
            factors.push(self.factor()?);
        }
        Ok(factors)
    }

    fn factor(&mut self) -> Result<Located<Expr>> {
        let t = self.peek().clone();
        let value = match &t.tok {
            Tok::Num(_) => Expr::Num(self.number()?),
            Tok::Ident(s) => {
                self.next();
                Expr::Name(s.clone())
            }
            Tok::Sym("(") => {
                self.next();
                let inner = self.sum()?;
                self.expect_sym(")")?;
                fold_sum(inner)
            }
            Tok::Sym("-") => {
                self.next();
                let f = self.factor()?;
                Expr::Neg(Box::new(f.value))
            }
            other => {
                return Err(syntax(t.line, t.col, format!("expected a term, found {}", describe(other))))
            }
        };
        Ok(Located { value, line: t.line, col: t.col })
    }
}

fn fold_sum(terms: Vec<Located<(bool, Vec<Located<Expr>>)>>) -> Expr {
    let mut acc: Option<Expr> = None;
    for t in terms {
        let (neg, factors) = t.value;
        let mut prod: Option<Expr> = None;
        for f in factors {
            prod = Some(match prod {
                None => f.value,
                Some(p) => Expr::Prod(Box::new(p), Box::new(f.value)),
            });
        }
        let prod = prod.expect("products are non-empty");
        acc = Some(match (acc, neg) {
            (None, false) => prod,
            (None, true) => Expr::Neg(Box::new(prod)),
            (Some(a), false) => Expr::Sum(Box::new(a), Box::new(prod)),
            (Some(a), true) => Expr::Diff(Box::new(a), Box::new(prod)),
        });
    }
    acc.expect("sums are non-empty")
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(s) => format!("`{s}`"),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::End => "end of line".into(),
    }
}

/// Overrides applied while binding a presentation.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    pub field: Option<Field>,
    /// `(name, value)` pairs replacing declared parameter values.
    pub params: Vec<(String, String)>,
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    parse_presentation_with(text, &ParseOptions::default())
}

pub fn parse_presentation_with(text: &str, opts: &ParseOptions) -> Result<Presentation> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut ast = Ast::default();
    while p.pos < p.toks.len() {
        p.statement(&mut ast)?;
    }
    bind(ast, opts)
}

/// An element of the free path algebra, or a plain scalar.
enum Value {
    Scalar(FieldElem),
    Comb(BTreeMap<Path, FieldElem>),
}

fn bind(ast: Ast, opts: &ParseOptions) -> Result<Presentation> {
    let field = match (&opts.field, &ast.field) {
        (Some(f), _) => *f,
        (None, Some(f)) => f.value.parse::<Field>().map_err(|e| syntax(f.line, f.col, e.to_string()))?,
        (None, None) => Field::Rational,
    };
    let mut params: Vec<(String, FieldElem)> = Vec::new();
    for p in &ast.params {
        let (name, v) = &p.value;
        if params.iter().any(|(n, _)| n == name) {
            return Err(syntax(p.line, p.col, format!("parameter `{name}` declared twice")));
        }
        let e = field.from_rational(v).map_err(|e| syntax(p.line, p.col, e.to_string()))?;
        params.push((name.clone(), e));
    }
    for (name, text) in &opts.params {
        let slot = params
            .iter_mut()
            .find(|(n, _)| n == name)
            .ok_or_else(|| Error::Input(format!("parameter `{name}` is not declared by the presentation")))?;
        slot.1 = field.parse_elem(text)?;
    }

    let mut vertices: Vec<String> = Vec::new();
    for v in &ast.vertices {
        if vertices.contains(&v.value) {
            return Err(syntax(v.line, v.col, format!("vertex `{}` declared twice", v.value)));
        }
        vertices.push(v.value.clone());
    }
    let mut arrows = Vec::new();
    for a in &ast.arrows {
        let (name, s, t) = &a.value;
        let find = |n: &str| {
            vertices
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| syntax(a.line, a.col, format!("unknown vertex `{n}`")))
        };
        let (source, target) = (find(s)?, find(t)?);
        if arrows.iter().any(|x: &Arrow| &x.name == name) || vertices.contains(name) {
            return Err(syntax(a.line, a.col, format!("name `{name}` declared twice")));
        }
        arrows.push(Arrow { name: name.clone(), source, target });
    }
    if let Some(p) = ast
        .params
        .iter()
        .find(|p| vertices.contains(&p.value.0) || arrows.iter().any(|a| a.name == p.value.0))
    {
        return Err(syntax(p.line, p.col, format!("parameter `{}` clashes with a quiver name", p.value.0)));
    }
    let quiver = Quiver::new(vertices, arrows)?;

    let mut relations = Vec::new();
    for r in ast.relations {
        let expr = fold_sum(r.value);
        let value = eval(&expr, &quiver, &params, field).map_err(|msg| syntax(r.line, r.col, msg))?;
        let comb = match value {
            Value::Comb(c) => c,
            Value::Scalar(_) => return Err(syntax(r.line, r.col, "relation has no path terms")),
        };
        let rel = Relation::normalized(comb.into_iter().map(|(p, c)| (c, p)).collect());
        if rel.is_zero() {
            return Err(syntax(r.line, r.col, "relation is identically zero"));
        }
        if rel.endpoints(&quiver).is_none() {
            return Err(syntax(r.line, r.col, "non-parallel relation terms"));
        }
        relations.push(rel);
    }
    Ok(Presentation { field, quiver, params, relations })
}

fn eval(
    e: &Expr,
    q: &Quiver,
    params: &[(String, FieldElem)],
    field: Field,
) -> std::result::Result<Value, String> {
    Ok(match e {
        Expr::Num(r) => Value::Scalar(field.from_rational(r).map_err(|e| e.to_string())?),
        Expr::Name(n) => {
            if let Some((_, v)) = params.iter().find(|(p, _)| p == n) {
                Value::Scalar(v.clone())
            } else if let Some(a) = q.arrow_index(n) {
                let p = Path { start: q.arrows[a].source, arrows: vec![a] };
                Value::Comb(BTreeMap::from([(p, field.one())]))
            } else if let Some(v) = q.vertex_index(n) {
                Value::Comb(BTreeMap::from([(Path::trivial(v), field.one())]))
            } else {
                return Err(format!("unknown vertex, arrow or parameter `{n}`"));
            }
        }
        Expr::Neg(x) => scale(eval(x, q, params, field)?, &-field.one()),
        Expr::Sum(a, b) => add(eval(a, q, params, field)?, eval(b, q, params, field)?)?,
        Expr::Diff(a, b) => {
            add(eval(a, q, params, field)?, scale(eval(b, q, params, field)?, &-field.one()))?
        }
        Expr::Prod(a, b) => mul(eval(a, q, params, field)?, eval(b, q, params, field)?, q),
    })
}

fn scale(v: Value, c: &FieldElem) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(&s * c),
        Value::Comb(m) => Value::Comb(m.into_iter().map(|(p, x)| (p, &x * c)).collect()),
    }
}

fn add(a: Value, b: Value) -> std::result::Result<Value, String> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
        (Value::Comb(mut x), Value::Comb(y)) => {
            for (p, c) in y {
                match x.get_mut(&p) {
                    Some(v) => *v += &c,
                    None => {
                        x.insert(p, c);
                    }
                }
            }
            Ok(Value::Comb(x))
        }
        _ => Err("cannot add a scalar to a path; write scalars as coefficients".into()),
    }
}

fn mul(a: Value, b: Value, q: &Quiver) -> Value {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
        (Value::Scalar(x), v) | (v, Value::Scalar(x)) => scale(v, &x),
        (Value::Comb(x), Value::Comb(y)) => {
            let mut out: BTreeMap<Path, FieldElem> = BTreeMap::new();
            for (p, c) in &x {
                for (r, d) in &y {
                    if let Some(pr) = p.concat(r, q) {
                        let v = c * d;
                        match out.get_mut(&pr) {
                            Some(s) => *s += &v,
                            None => {
                                out.insert(pr, v);
                            }
                        }
                    }
                }
            }
            Value::Comb(out)
        }
    }
}

//! Parser, evaluator, and symbolic differentiator for the smooth
//! pre-processing functions of a feature map.
//!
//! The grammar is small: `+ - * /`, `^` with a constant exponent, unary
//! minus, parentheses, and the functions `sin cos arcsin arccos sqrt log
//! exp`. Precedence is `^` > unary `-` > `* /` > `+ -`, all binary operators
//! left associative. Variables must be declared up front; they are stored by
//! index so evaluation in the grid sweeps is allocation-free.
//!
//! Derivatives are built symbolically with no simplification beyond constant
//! folding and 0/1 elimination; derivative trees can be large but evaluating
//! them is negligible at grid scale.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Unary function names accepted by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Arcsin,
    Arccos,
    Sqrt,
    Log,
    Exp,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Arcsin => "arcsin",
            Func::Arccos => "arccos",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
            Func::Exp => "exp",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        match name {
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "arcsin" => Some(Func::Arcsin),
            "arccos" => Some(Func::Arccos),
            "sqrt" => Some(Func::Sqrt),
            "log" => Some(Func::Log),
            "exp" => Some(Func::Exp),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Expression tree. Variables are indices into the declared coordinate list;
/// `Pow` exponents are constants by construction.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(usize),
    Neg(Box<Expr>),
    Fun(Func, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
}

impl Expr {
    pub fn is_const_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if *c == 0.0)
    }

    /// IEEE double evaluation with domain checks at every node.
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        let value = match self {
            Expr::Const(c) => *c,
            Expr::Var(i) => {
                if *i >= point.len() {
                    return Err(Error::PointDim { expected: *i + 1, got: point.len() });
                }
                point[*i]
            }
            Expr::Neg(e) => -e.eval(point)?,
            Expr::Fun(f, e) => {
                let u = e.eval(point)?;
                match f {
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Arcsin => {
                        if !(-1.0..=1.0).contains(&u) {
                            return Err(Error::Domain { node: "arcsin", value: u });
                        }
                        u.asin()
                    }
                    Func::Arccos => {
                        if !(-1.0..=1.0).contains(&u) {
                            return Err(Error::Domain { node: "arccos", value: u });
                        }
                        u.acos()
                    }
                    Func::Sqrt => {
                        if u < 0.0 {
                            return Err(Error::Domain { node: "sqrt", value: u });
                        }
                        u.sqrt()
                    }
                    Func::Log => {
                        if u <= 0.0 {
                            return Err(Error::Domain { node: "log", value: u });
                        }
                        u.ln()
                    }
                    Func::Exp => u.exp(),
                }
            }
            Expr::Bin(op, l, r) => {
                let a = l.eval(point)?;
                let b = r.eval(point)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(Error::Domain { node: "/", value: b });
                        }
                        a / b
                    }
                }
            }
            Expr::Pow(base, exponent) => {
                let u = base.eval(point)?;
                if u < 0.0 && exponent.fract() != 0.0 {
                    return Err(Error::Domain { node: "^", value: u });
                }
                if u == 0.0 && *exponent < 0.0 {
                    return Err(Error::Domain { node: "^", value: u });
                }
                u.powf(*exponent)
            }
        };
        if !value.is_finite() {
            return Err(Error::Domain { node: "non-finite result", value });
        }
        Ok(value)
    }

    /// Symbolic partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var(i) => Expr::Const(if *i == var { 1.0 } else { 0.0 }),
            Expr::Neg(e) => neg(e.differentiate(var)),
            Expr::Fun(f, e) => {
                let du = e.differentiate(var);
                let u = e.as_ref().clone();
                let outer = match f {
                    Func::Sin => Expr::Fun(Func::Cos, Box::new(u)),
                    Func::Cos => neg(Expr::Fun(Func::Sin, Box::new(u))),
                    Func::Arcsin => {
                        return div(du, sqrt_one_minus_sq(u));
                    }
                    Func::Arccos => {
                        return neg(div(du, sqrt_one_minus_sq(u)));
                    }
                    Func::Sqrt => {
                        return div(du, mul(Expr::Const(2.0), Expr::Fun(Func::Sqrt, Box::new(u))));
                    }
                    Func::Log => {
                        return div(du, u);
                    }
                    Func::Exp => Expr::Fun(Func::Exp, Box::new(u)),
                };
                mul(outer, du)
            }
            Expr::Bin(op, l, r) => {
                let dl = l.differentiate(var);
                let dr = r.differentiate(var);
                match op {
                    BinOp::Add => add(dl, dr),
                    BinOp::Sub => sub(dl, dr),
                    BinOp::Mul => {
                        add(mul(dl, r.as_ref().clone()), mul(l.as_ref().clone(), dr))
                    }
                    BinOp::Div => {
                        let num =
                            sub(mul(dl, r.as_ref().clone()), mul(l.as_ref().clone(), dr));
                        div(num, powc(r.as_ref().clone(), 2.0))
                    }
                }
            }
            Expr::Pow(base, exponent) => {
                let db = base.differentiate(var);
                mul(
                    mul(Expr::Const(*exponent), powc(base.as_ref().clone(), exponent - 1.0)),
                    db,
                )
            }
        }
    }

    /// Canonical rendering; `parse` of the output reproduces the tree.
    pub fn print(&self, vars: &[String]) -> String {
        let mut out = String::new();
        self.print_prec(vars, &mut out, 0);
        out
    }

    fn print_prec(&self, vars: &[String], out: &mut String, parent: u8) {
        let prec = self.precedence();
        let needs_parens = prec < parent;
        if needs_parens {
            out.push('(');
        }
        match self {
            Expr::Const(c) => {
                if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) {
                    // negative literals only arise from folding; render as a
                    // parenthesized unary minus so the text reparses
                    let _ = write!(out, "(-{})", -c);
                } else {
                    let _ = write!(out, "{c}");
                }
            }
            Expr::Var(i) => out.push_str(&vars[*i]),
            Expr::Neg(e) => {
                out.push('-');
                e.print_prec(vars, out, 4);
            }
            Expr::Fun(f, e) => {
                out.push_str(f.name());
                out.push('(');
                e.print_prec(vars, out, 0);
                out.push(')');
            }
            Expr::Bin(op, l, r) => {
                let (sym, my) = match op {
                    BinOp::Add => ('+', 1),
                    BinOp::Sub => ('-', 1),
                    BinOp::Mul => ('*', 2),
                    BinOp::Div => ('/', 2),
                };
                l.print_prec(vars, out, my);
                out.push(sym);
                // left associativity: a-(b-c) keeps parentheses on the right
                r.print_prec(vars, out, my + 1);
            }
            Expr::Pow(base, exponent) => {
                base.print_prec(vars, out, 6);
                out.push('^');
                if *exponent < 0.0 {
                    let _ = write!(out, "(-{})", -exponent);
                } else {
                    let _ = write!(out, "{exponent}");
                }
            }
        }
        if needs_parens {
            out.push(')');
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 5,
            Expr::Const(_) | Expr::Var(_) | Expr::Fun(..) => 7,
        }
    }
}

// smart constructors: constant folding and 0/1 elimination only
// (float comparisons stay in match guards: literal float patterns are not allowed)

fn add(l: Expr, r: Expr) -> Expr {
    match (l, r) {
        (Expr::Const(a), Expr::Const(b)) => Expr::Const(a + b),
        (l, r) if l.is_const_zero() => r,
        (l, r) if r.is_const_zero() => l,
        (l, r) => Expr::Bin(BinOp::Add, Box::new(l), Box::new(r)),
    }
}

fn sub(l: Expr, r: Expr) -> Expr {
    match (l, r) {
        (Expr::Const(a), Expr::Const(b)) => Expr::Const(a - b),
        (l, r) if r.is_const_zero() => l,
        (l, r) if l.is_const_zero() => neg(r),
        (l, r) => Expr::Bin(BinOp::Sub, Box::new(l), Box::new(r)),
    }
}

#[allow(clippy::redundant_guards)]
fn mul(l: Expr, r: Expr) -> Expr {
    match (l, r) {
        (Expr::Const(a), Expr::Const(b)) => Expr::Const(a * b),
        (l, _) if l.is_const_zero() => Expr::Const(0.0),
        (_, r) if r.is_const_zero() => Expr::Const(0.0),
        (Expr::Const(c), r) if c == 1.0 => r,
        (l, Expr::Const(c)) if c == 1.0 => l,
        (l, r) => Expr::Bin(BinOp::Mul, Box::new(l), Box::new(r)),
    }
}

#[allow(clippy::redundant_guards)]
fn div(l: Expr, r: Expr) -> Expr {
    match (l, r) {
        (l, _) if l.is_const_zero() => Expr::Const(0.0),
        (l, Expr::Const(c)) if c == 1.0 => l,
        (Expr::Const(a), Expr::Const(b)) if b != 0.0 => Expr::Const(a / b),
        (l, r) => Expr::Bin(BinOp::Div, Box::new(l), Box::new(r)),
    }
}

fn neg(e: Expr) -> Expr {
    match e {
        Expr::Const(c) => Expr::Const(-c),
        e => Expr::Neg(Box::new(e)),
    }
}

fn powc(base: Expr, exponent: f64) -> Expr {
    if exponent == 0.0 {
        Expr::Const(1.0)
    } else if exponent == 1.0 {
        base
    } else if let Expr::Const(c) = base {
        Expr::Const(c.powf(exponent))
    } else {
        Expr::Pow(Box::new(base), exponent)
    }
}

fn sqrt_one_minus_sq(u: Expr) -> Expr {
    Expr::Fun(Func::Sqrt, Box::new(sub(Expr::Const(1.0), powc(u, 2.0))))
}

/// Parse `text` against the declared variable names.
pub fn parse(text: &str, vars: &[String]) -> Result<Expr> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0, vars, text_len: text.len() };
    let expr = parser.expression()?;
    match parser.peek() {
        None => Ok(expr),
        Some(t) => Err(Error::Parse {
            offset: t.offset,
            message: format!("unexpected {}", t.kind.describe()),
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Number(n) => format!("number {n}"),
            TokenKind::Ident(s) => format!("identifier '{s}'"),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Slash => "'/'".into(),
            TokenKind::Caret => "'^'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let offset = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                let kind = match b {
                    b'+' => TokenKind::Plus,
                    b'-' => TokenKind::Minus,
                    b'*' => TokenKind::Star,
                    b'/' => TokenKind::Slash,
                    b'^' => TokenKind::Caret,
                    b'(' => TokenKind::LParen,
                    _ => TokenKind::RParen,
                };
                tokens.push(Token { kind, offset });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let slice = &text[start..i];
                let value: f64 = slice.parse().map_err(|_| Error::Parse {
                    offset: start,
                    message: format!("invalid number '{slice}'"),
                })?;
                tokens.push(Token { kind: TokenKind::Number(value), offset: start });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text[start..i].to_string()),
                    offset: start,
                });
            }
            _ => {
                return Err(Error::Parse {
                    offset,
                    message: format!(
                        "unexpected character '{}'",
                        text[i..].chars().next().unwrap()
                    ),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eof_offset(&self) -> usize {
        self.text_len
    }

    fn expression(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(t) = self.peek() {
            let op = match t.kind {
                TokenKind::Plus => BinOp::Add,
                TokenKind::Minus => BinOp::Sub,
                _ => break,
            };
            self.next();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(t) = self.peek() {
            let op = match t.kind {
                TokenKind::Star => BinOp::Mul,
                TokenKind::Slash => BinOp::Div,
                _ => break,
            };
            self.next();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(t) = self.peek() {
            if t.kind == TokenKind::Minus {
                self.next();
                return Ok(Expr::Neg(Box::new(self.unary()?)));
            }
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while let Some(t) = self.peek() {
            if t.kind != TokenKind::Caret {
                break;
            }
            self.next();
            let exp_offset = self.peek().map(|t| t.offset).unwrap_or(self.eof_offset());
            let exponent = self.atom()?;
            let value = fold_constant(&exponent).ok_or(Error::Parse {
                offset: exp_offset,
                message: "exponent must be a constant".into(),
            })?;
            base = Expr::Pow(Box::new(base), value);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.next().ok_or(Error::Parse {
            offset: self.eof_offset(),
            message: "unexpected end of input".into(),
        })?;
        match t.kind {
            TokenKind::Number(value) => Ok(Expr::Const(value)),
            TokenKind::Ident(name) => {
                if let Some(func) = Func::from_name(&name) {
                    let open = self.next().ok_or(Error::Parse {
                        offset: self.eof_offset(),
                        message: format!("expected '(' after {name}"),
                    })?;
                    if open.kind != TokenKind::LParen {
                        return Err(Error::Parse {
                            offset: open.offset,
                            message: format!("expected '(' after {name}"),
                        });
                    }
                    let arg = self.expression()?;
                    self.expect_rparen()?;
                    Ok(Expr::Fun(func, Box::new(arg)))
                } else if let Some(index) = self.vars.iter().position(|v| v == &name) {
                    Ok(Expr::Var(index))
                } else {
                    Err(Error::Parse {
                        offset: t.offset,
                        message: format!("undeclared variable '{name}'"),
                    })
                }
            }
            TokenKind::LParen => {
                let inner = self.expression()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            other => Err(Error::Parse {
                offset: t.offset,
                message: format!("unexpected {}", other.describe()),
            }),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.next() {
            Some(t) if t.kind == TokenKind::RParen => Ok(()),
            Some(t) => Err(Error::Parse {
                offset: t.offset,
                message: format!("expected ')', found {}", t.kind.describe()),
            }),
            None => {
                Err(Error::Parse { offset: self.eof_offset(), message: "expected ')'".into() })
            }
        }
    }
}

/// Fold a variable-free subtree to its value; used for `^` exponents.
fn fold_constant(e: &Expr) -> Option<f64> {
    match e {
        Expr::Const(c) => Some(*c),
        Expr::Var(_) => None,
        Expr::Neg(inner) => fold_constant(inner).map(|v| -v),
        Expr::Fun(_, _) => None,
        Expr::Bin(op, l, r) => {
            let a = fold_constant(l)?;
            let b = fold_constant(r)?;
            Some(match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => a / b,
            })
        }
        Expr::Pow(base, exponent) => fold_constant(base).map(|v| v.powf(*exponent)),
    }
}

//! Tiny expression language for graph hypersurfaces `u₄ = φ(u₁, u₂, u₃)`.
//!
//! Grammar: `+ - * / ^`, parentheses, unary minus, numeric literals, the
//! variables `u1 u2 u3`, and the functions `sin cos exp ln sqrt tanh`.
//! Evaluation is generic over [`Real`], so the parsed expression can be
//! differentiated exactly.

use serde::{Deserialize, Serialize};

use crate::autodiff::Real;
use crate::error::{Result, SpinlabError};

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Num(f64),
    Var(usize),
    Neg(Box<Node>),
    Bin(Op, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Tanh,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Expr {
    source: String,
    root: Node,
}

impl TryFrom<String> for Expr {
    type Error = SpinlabError;
    fn try_from(s: String) -> Result<Self> {
        Expr::parse(&s)
    }
}

impl From<Expr> for String {
    fn from(e: Expr) -> String {
        e.source
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part, e.g. 1e-3
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let save = i;
                i += 1;
                if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                    i += 1;
                }
                if i < chars.len() && chars[i].is_ascii_digit() {
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                } else {
                    i = save;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let v = lit.parse::<f64>().map_err(|_| SpinlabError::Expression(format!("bad number `{lit}`")))?;
            out.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(SpinlabError::Expression(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Node> {
        let mut lhs = self.product()?;
        loop {
            let op = if self.eat('+') {
                Op::Add
            } else if self.eat('-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.product()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                Op::Mul
            } else if self.eat('/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    // right-associative, binds tighter than unary minus on its left: -x^2 = -(x^2)
    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Node::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Node::Num(v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(SpinlabError::Expression("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "u1" => return Ok(Node::Var(0)),
                    "u2" => return Ok(Node::Var(1)),
                    "u3" => return Ok(Node::Var(2)),
                    "pi" => return Ok(Node::Num(std::f64::consts::PI)),
                    _ => {}
                }
                let func = match name.as_str() {
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    "exp" => Func::Exp,
                    "ln" | "log" => Func::Ln,
                    "sqrt" => Func::Sqrt,
                    "tanh" => Func::Tanh,
                    other => return Err(SpinlabError::Expression(format!("unknown identifier `{other}`"))),
                };
                if !self.eat('(') {
                    return Err(SpinlabError::Expression(format!("`{name}` needs an argument in parentheses")));
                }
                let arg = self.sum()?;
                if !self.eat(')') {
                    return Err(SpinlabError::Expression("missing `)`".into()));
                }
                Ok(Node::Call(func, Box::new(arg)))
            }
            Some(t) => Err(SpinlabError::Expression(format!("unexpected token {t:?}"))),
            None => Err(SpinlabError::Expression("unexpected end of input".into())),
        }
    }
}

impl Expr {
    pub fn parse(source: &str) -> Result<Expr> {
        let mut p = Parser { toks: tokenize(source)?, pos: 0 };
        let root = p.sum()?;
        if p.pos != p.toks.len() {
            return Err(SpinlabError::Expression(format!("trailing input in `{source}`")));
        }
        Ok(Expr { source: source.to_string(), root })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval<T: Real>(&self, u: &[T; 3]) -> T {
        eval_node(&self.root, u)
    }
}

fn eval_node<T: Real>(n: &Node, u: &[T; 3]) -> T {
    match n {
        Node::Num(v) => T::cst(*v),
        Node::Var(k) => u[*k],
        Node::Neg(a) => -eval_node(a, u),
        Node::Bin(op, a, b) => {
            let x = eval_node(a, u);
            match op {
                Op::Add => x + eval_node(b, u),
                Op::Sub => x - eval_node(b, u),
                Op::Mul => x * eval_node(b, u),
                Op::Div => x / eval_node(b, u),
                Op::Pow => match constant_integer(b) {
                    Some(k) => x.powi(k),
                    None => (x.ln() * eval_node(b, u)).exp(),
                },
            }
        }
        Node::Call(f, a) => {
            let x = eval_node(a, u);
            match f {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Exp => x.exp(),
                Func::Ln => x.ln(),
                Func::Sqrt => x.sqrt(),
                Func::Tanh => x.tanh(),
            }
        }
    }
}

fn constant_integer(n: &Node) -> Option<i32> {
    if has_var(n) {
        return None;
    }
    let v = eval_node::<f64>(n, &[0.0; 3]);
    (v.fract() == 0.0 && v.abs() < 1e6).then_some(v as i32)
}

fn has_var(n: &Node) -> bool {
    match n {
        Node::Num(_) => false,
        Node::Var(_) => true,
        Node::Neg(a) | Node::Call(_, a) => has_var(a),
        Node::Bin(_, a, b) => has_var(a) || has_var(b),
    }
}

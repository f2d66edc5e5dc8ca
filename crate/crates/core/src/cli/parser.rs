//! Terms of the three-sorted language and their canonical printing.

use std::fmt;

use num_bigint::BigInt;

use super::lexer::{tokenize, Tok, Token};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

impl CmpOp {
    fn symbol(self) -> &'static str {
        match self {
            CmpOp::Le => "<=",
            CmpOp::Lt => "<",
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
            CmpOp::Eq => "=",
        }
    }
}

pub const FUNCTIONS: [&str; 6] = ["rv", "v", "ac", "res", "oplus", "lambda"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative integer literal.
    Int(BigInt),
    Var(i64),
    /// The difference variable `X`.
    X,
    /// The group generator `g`.
    Gen,
    Infinity,
    /// `T^(γ)`.
    TPow(Box<Expr>),
    /// `O(T^(δ))`.
    BigO(Box<Expr>),
    /// `s^k(e)`.
    Sigma(u32, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(String, Vec<Expr>),
    Cmp(CmpOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Int(BigInt::from(n))
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Cmp(..) => 0,
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

fn fmt_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({})", e)
    } else {
        write!(f, "{}", e)
    }
}

fn fmt_t(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Int(n) if n == &BigInt::from(1) => write!(f, "T"),
        Expr::Int(n) => write!(f, "T^{}", n),
        other => write!(f, "T^({})", other),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{}", n),
            Expr::Var(k) if *k >= 0 => write!(f, "u{}", k),
            Expr::Var(k) => write!(f, "u_{{{}}}", k),
            Expr::X => write!(f, "X"),
            Expr::Gen => write!(f, "g"),
            Expr::Infinity => write!(f, "oo"),
            Expr::TPow(e) => fmt_t(f, e),
            Expr::BigO(e) => {
                write!(f, "O(")?;
                fmt_t(f, e)?;
                write!(f, ")")
            }
            Expr::Sigma(1, e) => write!(f, "s({})", e),
            Expr::Sigma(k, e) => write!(f, "s^{}({})", k, e),
            Expr::Neg(e) => {
                write!(f, "-")?;
                fmt_child(f, e, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                fmt_child(f, a, 1)?;
                write!(
                    f,
                    " {} ",
                    if matches!(self, Expr::Add(..)) {
                        "+"
                    } else {
                        "-"
                    }
                )?;
                fmt_child(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                fmt_child(f, a, 2)?;
                write!(
                    f,
                    "{}",
                    if matches!(self, Expr::Mul(..)) {
                        "*"
                    } else {
                        "/"
                    }
                )?;
                fmt_child(f, b, 3)
            }
            Expr::Pow(b, n) => {
                // `T^2` already carries an exponent
                if matches!(**b, Expr::TPow(_)) {
                    write!(f, "({})", b)?;
                } else {
                    fmt_child(f, b, 5)?;
                }
                if *n < 0 {
                    write!(f, "^({})", n)
                } else {
                    write!(f, "^{}", n)
                }
            }
            Expr::Call(name, args) => {
                write!(f, "{}(", name)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", a)?;
                }
                write!(f, ")")
            }
            Expr::Cmp(op, a, b) => {
                fmt_child(f, a, 1)?;
                write!(f, " {} ", op.symbol())?;
                fmt_child(f, b, 1)
            }
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax {
            line: t.line,
            col: t.col,
            expected: format!("{}, found {}", expected, t.tok.describe()),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == &tok {
            self.bump();
            Ok(())
        } else {
            self.fail(what)
        }
    }

    fn top(&mut self) -> Result<Expr> {
        let lhs = self.sum()?;
        let op = match self.peek() {
            Tok::Le => CmpOp::Le,
            Tok::Lt => CmpOp::Lt,
            Tok::Ge => CmpOp::Ge,
            Tok::Gt => CmpOp::Gt,
            Tok::Eq => CmpOp::Eq,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.sum()?;
        Ok(Expr::Cmp(op, Box::new(lhs), Box::new(rhs)))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                // juxtaposition, as in `2g^2`
                Tok::Ident(_) | Tok::Var(_) | Tok::LParen | Tok::LAngle => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == &Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.peek() != &Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let n = self.exponent()?;
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn small_int(&mut self) -> Result<i64> {
        let neg = if self.peek() == &Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Int(n) => match i64::try_from(&n) {
                Ok(k) => {
                    self.bump();
                    Ok(if neg { -k } else { k })
                }
                Err(_) => self.fail("an exponent that fits 64 bits"),
            },
            _ => self.fail("an integer exponent"),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() == &Tok::LParen {
            self.bump();
            let n = self.small_int()?;
            self.expect(Tok::RParen, "')'")?;
            Ok(n)
        } else {
            self.small_int()
        }
    }

    /// After `T`: nothing, `^n` or `^(γ)`.
    fn t_exponent(&mut self) -> Result<Expr> {
        if self.peek() != &Tok::Caret {
            return Ok(Expr::int(1));
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            _ => self.fail("an exponent after 'T^'"),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>> {
        self.expect(Tok::LParen, "'('")?;
        let mut out = vec![self.top()?];
        while self.peek() == &Tok::Comma {
            self.bump();
            out.push(self.top()?);
        }
        self.expect(Tok::RParen, "')' or ','")?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Var(k) => {
                self.bump();
                Ok(Expr::Var(k))
            }
            Tok::LParen => {
                self.bump();
                let e = self.top()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::LAngle => {
                self.bump();
                let c = self.sum()?;
                self.expect(Tok::Semi, "';'")?;
                let g = self.sum()?;
                self.expect(Tok::RAngle, "'⟩'")?;
                Ok(Expr::Call("rv".into(), vec![c, g]))
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "X" => Ok(Expr::X),
                    "g" => Ok(Expr::Gen),
                    "oo" => Ok(Expr::Infinity),
                    "T" => Ok(Expr::TPow(Box::new(self.t_exponent()?))),
                    "O" => {
                        self.expect(Tok::LParen, "'(' after 'O'")?;
                        if self.peek() != &Tok::Ident("T".into()) {
                            return self.fail("'T' inside 'O(...)'");
                        }
                        self.bump();
                        let e = self.t_exponent()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::BigO(Box::new(e)))
                    }
                    "s" => {
                        let k = if self.peek() == &Tok::Caret {
                            self.bump();
                            let k = self.small_int()?;
                            match u32::try_from(k) {
                                Ok(k) => k,
                                Err(_) => {
                                    self.pos -= 1;
                                    return self.fail(
                                        "a non-negative iterate (negative iterates are not terms)",
                                    );
                                }
                            }
                        } else {
                            1
                        };
                        self.expect(Tok::LParen, "'(' after 's'")?;
                        let e = self.top()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Expr::Sigma(k, Box::new(e)))
                    }
                    "forall" | "exists" => {
                        self.pos -= 1;
                        self.fail("a quantifier-free term (quantified sentences have no constructive evaluation here)")
                    }
                    f if FUNCTIONS.contains(&f) => Ok(Expr::Call(name.clone(), self.args()?)),
                    _ => {
                        self.pos -= 1;
                        self.fail("a term")
                    }
                }
            }
            _ => self.fail("a term"),
        }
    }
}

/// Parses one term, up to end of input.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.top()?;
    if p.peek() != &Tok::Eof {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

/// Parses a comma-separated list of terms.
pub fn parse_list(text: &str) -> Result<Vec<Expr>> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let mut out = vec![p.top()?];
    while p.peek() == &Tok::Comma {
        p.bump();
        out.push(p.top()?);
    }
    if p.peek() != &Tok::Eof {
        return p.fail("',' or end of input");
    }
    Ok(out)
}

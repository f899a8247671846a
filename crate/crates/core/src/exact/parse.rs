//! Text grammar shared by `eval` and the catalog renderings.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?        exponent must fold to a rational
//! atom    := number | 'pi' | call | '(' expr ')'
//! call    := name '(' args ')'
//! ```
//!
//! Functions: `phi psi fneg chi` take a nome (`qpoint(sign, r)` or any
//! expression), `f(a, b)`, `agm(a, b)`, `hyp(x)`, `sqrt(x)`, `gamma(r)` and
//! `cospi(r)` with rational `r`, `classinv(n)`, `yih(k, n)`, `yihp(k, n)`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modular::YiQuotient;
use crate::qseries::QPoint;

use super::expr::Expr;
use super::number::parse_decimal_rational;
use super::theta_expr::{NomeArg, ThetaExpr};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    len: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() {
                let ch = chars[i].1;
                let exp_sign = (ch == '+' || ch == '-') && i > start && matches!(chars[i - 1].1, 'e' | 'E');
                if ch.is_ascii_digit() || ch == '.' || ch == 'e' || ch == 'E' || exp_sign {
                    i += 1;
                } else {
                    break;
                }
            }
            let text: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Num(text)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|p| p.1).collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else if c == '−' {
            out.push((pos, Tok::Sym('-')));
            i += 1;
        } else {
            return Err(err(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// Parses the expression grammar into a [`ThetaExpr`].
pub fn parse_theta_expr(s: &str) -> Result<ThetaExpr> {
    let mut p = Parser { toks: lex(s)?, at: 0, len: s.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(err(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parses text that must not contain theta functions.
pub fn parse_expr(s: &str) -> Result<Expr> {
    parse_theta_expr(s)?.as_expr().ok_or_else(|| err(0, "expected a closed-form constant"))
}

fn fold_rational(e: &ThetaExpr) -> Option<BigRational> {
    match e {
        ThetaExpr::Const(Expr::Int(v)) => Some(BigRational::from(v.clone())),
        ThetaExpr::Const(Expr::Rat(r)) => Some(r.clone()),
        ThetaExpr::Neg(a) => Some(-fold_rational(a)?),
        ThetaExpr::Add(a, b) => Some(fold_rational(a)? + fold_rational(b)?),
        ThetaExpr::Sub(a, b) => Some(fold_rational(a)? - fold_rational(b)?),
        ThetaExpr::Mul(a, b) => Some(fold_rational(a)? * fold_rational(b)?),
        ThetaExpr::Div(a, b) => {
            let d = fold_rational(b)?;
            (!d.is_zero()).then(|| fold_rational(a).map(|n| n / d))?
        }
        ThetaExpr::Pow(a, e) if e.is_integer() => {
            let k: i32 = e.to_integer().try_into().ok()?;
            let base = fold_rational(a)?;
            (k >= 0 || !base.is_zero()).then(|| num_traits::Pow::pow(base, k))
        }
        _ => None,
    }
}

fn bx(e: ThetaExpr) -> Box<ThetaExpr> {
    Box::new(e)
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.len)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<ThetaExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ThetaExpr::Add(bx(lhs), bx(self.term()?));
            } else if self.eat('-') {
                lhs = ThetaExpr::Sub(bx(lhs), bx(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ThetaExpr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = ThetaExpr::Mul(bx(lhs), bx(self.unary()?));
            } else if self.eat('/') {
                let rhs = self.unary()?;
                // a literal fraction stays a single rational leaf
                lhs = match (&lhs, &rhs) {
                    (ThetaExpr::Const(Expr::Int(a)), ThetaExpr::Const(Expr::Int(b))) if !b.is_zero() => {
                        ThetaExpr::Const(Expr::Rat(BigRational::new(a.clone(), b.clone())))
                    }
                    _ => ThetaExpr::Div(bx(lhs), bx(rhs)),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<ThetaExpr> {
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(match inner {
                ThetaExpr::Const(Expr::Int(v)) => ThetaExpr::Const(Expr::Int(-v)),
                ThetaExpr::Const(Expr::Rat(r)) => ThetaExpr::Const(Expr::Rat(-r)),
                e => ThetaExpr::Neg(bx(e)),
            });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<ThetaExpr> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            let e = self.unary()?;
            let r = fold_rational(&e).ok_or_else(|| err(pos, "exponent must be a rational constant"))?;
            return Ok(ThetaExpr::Pow(bx(base), r));
        }
        Ok(base)
    }

    fn rational_arg(&mut self) -> Result<BigRational> {
        let pos = self.pos();
        let e = self.expr()?;
        fold_rational(&e).ok_or_else(|| err(pos, "expected a rational constant"))
    }

    fn args_end(&mut self) -> Result<()> {
        self.expect(')')
    }

    fn nome_arg(&mut self) -> Result<NomeArg> {
        if self.peek() == Some(&Tok::Ident("qpoint".into())) {
            let pos = self.pos();
            self.at += 1;
            self.expect('(')?;
            let s = self.rational_arg()?;
            self.expect(',')?;
            let rpos = self.pos();
            let r = self.rational_arg()?;
            self.args_end()?;
            let sign = if s == BigRational::one() {
                1
            } else if s == -BigRational::one() {
                -1
            } else {
                return Err(err(pos, "qpoint sign must be +1 or -1"));
            };
            if !r.is_positive() {
                return Err(err(rpos, "qpoint r must be positive"));
            }
            let q = QPoint::new(sign, r).map_err(|e| err(pos, e.to_string()))?;
            return Ok(NomeArg::Point(q));
        }
        Ok(NomeArg::Value(bx(self.expr()?)))
    }

    fn atom(&mut self) -> Result<ThetaExpr> {
        let pos = self.pos();
        let tok = self.peek().cloned().ok_or_else(|| err(pos, "unexpected end of input"))?;
        self.at += 1;
        match tok {
            Tok::Num(text) => {
                let r = parse_decimal_rational(&text).ok_or_else(|| err(pos, format!("bad number '{text}'")))?;
                Ok(ThetaExpr::Const(if r.is_integer() { Expr::Int(r.to_integer()) } else { Expr::Rat(r) }))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(c) => Err(err(pos, format!("unexpected '{c}'"))),
            Tok::Ident(name) => self.call(&name, pos),
        }
    }

    fn call(&mut self, name: &str, pos: usize) -> Result<ThetaExpr> {
        if name == "pi" {
            return Ok(ThetaExpr::Const(Expr::Pi));
        }
        self.expect('(')?;
        let e = match name {
            "phi" => ThetaExpr::Phi(self.nome_arg()?),
            "psi" => ThetaExpr::Psi(self.nome_arg()?),
            "fneg" => ThetaExpr::FNeg(self.nome_arg()?),
            "chi" => ThetaExpr::Chi(self.nome_arg()?),
            "f" | "agm" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                if name == "f" {
                    ThetaExpr::F(bx(a), bx(b))
                } else {
                    ThetaExpr::Agm(bx(a), bx(b))
                }
            }
            "hyp" => ThetaExpr::Hyp(bx(self.expr()?)),
            "sqrt" => ThetaExpr::Pow(bx(self.expr()?), BigRational::new(1.into(), 2.into())),
            "gamma" => ThetaExpr::Const(Expr::GammaRat(self.rational_arg()?)),
            "cospi" => ThetaExpr::Const(Expr::CosPiRat(self.rational_arg()?)),
            "classinv" => {
                let n = self.rational_arg()?;
                if !n.is_positive() {
                    return Err(err(pos, "classinv needs n > 0"));
                }
                ThetaExpr::ClassInv(n)
            }
            "yih" | "yihp" => {
                let k = self.rational_arg()?;
                self.expect(',')?;
                let n = self.rational_arg()?;
                if !k.is_positive() || !n.is_positive() {
                    return Err(err(pos, "yih needs k, n > 0"));
                }
                ThetaExpr::YiH(if name == "yih" { YiQuotient::new(k, n) } else { YiQuotient::primed(k, n) })
            }
            "qpoint" => return Err(err(pos, "qpoint is only valid as a theta-function argument")),
            _ => return Err(err(pos, format!("unknown function '{name}'"))),
        };
        self.args_end()?;
        Ok(e)
    }
}

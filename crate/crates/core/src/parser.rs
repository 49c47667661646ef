//! Expressions over `z1, z2, z1c, z2c` with Gaussian-rational coefficients.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor | '/' uint)*
//! factor   := '-' factor | base ('^' uint)?
//! base     := rational | 'i' | 'z1' | 'z2' | 'z1c' | 'z2c'
//!           | 'conj' '(' expr ')' | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Division is only by a positive integer literal. Columns in errors are
//! 1-based character positions.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{SpherePoly, Var};
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Rational(BigRational),
    I,
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a positive integer literal.
    Div(Box<Expr>, BigInt),
    Pow(Box<Expr>, u32),
    Conj(Box<Expr>),
    Group(Box<Expr>),
}

impl Expr {
    pub fn eval(&self) -> SpherePoly {
        match self {
            Expr::Rational(q) => SpherePoly::constant(GaussianRational::real(q.clone())),
            Expr::I => SpherePoly::constant(GaussianRational::i()),
            Expr::Var(v) => SpherePoly::var(*v),
            Expr::Neg(e) => -e.eval(),
            Expr::Add(a, b) => a.eval() + b.eval(),
            Expr::Sub(a, b) => a.eval() - b.eval(),
            Expr::Mul(a, b) => a.eval() * b.eval(),
            Expr::Div(a, n) => a.eval().scale(&GaussianRational::real(BigRational::new(1.into(), n.clone()))),
            Expr::Pow(a, e) => a.eval().pow(*e),
            Expr::Conj(a) => a.eval().conj(),
            Expr::Group(a) => a.eval(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational(q) => write!(f, "{q}"),
            Expr::I => f.write_str("i"),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, n) => write!(f, "({a} / {n})"),
            Expr::Pow(a, e) => write!(f, "({a}^{e})"),
            Expr::Conj(a) => write!(f, "conj({a})"),
            Expr::Group(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(&'static str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const IDENTS: [&str; 6] = ["i", "z1", "z2", "z1c", "z2c", "conj"];

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push((Tok::Num(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            match IDENTS.iter().find(|&&id| id == s) {
                Some(id) => out.push((Tok::Ident(id), col)),
                None => return Err(Error::Lex { token: s, column: col }),
            }
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::Lex { token: c.to_string(), column: col }),
        };
        out.push((tok, col));
        k += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { column: self.col(), message: message.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {}, found {}", want.describe(), self.peek().describe()))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
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
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    let n = self.denominator()?;
                    lhs = Expr::Div(Box::new(lhs), n);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn denominator(&mut self) -> Result<BigInt> {
        match self.bump() {
            (Tok::Num(n), _) if n.is_zero() => Err(Error::ZeroDenominator(format!("division by {n}"))),
            (Tok::Num(n), _) => Ok(n),
            (t, col) => Err(Error::Syntax {
                column: col,
                message: format!("expected an integer denominator, found {}", t.describe()),
            }),
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let col = self.col();
            return match self.bump().0 {
                Tok::Num(n) => {
                    n.to_u32().map(|e| Expr::Pow(Box::new(base), e)).ok_or(Error::BadExponent { column: col })
                }
                _ => Err(Error::BadExponent { column: col }),
            };
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Num(n) => {
                if *self.peek() == Tok::Slash && matches!(self.toks[self.pos + 1].0, Tok::Num(_)) {
                    self.bump();
                    let d = self.denominator()?;
                    Ok(Expr::Rational(BigRational::new(n, d)))
                } else {
                    Ok(Expr::Rational(BigRational::from_integer(n)))
                }
            }
            Tok::Ident("i") => Ok(Expr::I),
            Tok::Ident("z1") => Ok(Expr::Var(Var::Z1)),
            Tok::Ident("z2") => Ok(Expr::Var(Var::Z2)),
            Tok::Ident("z1c") => Ok(Expr::Var(Var::Z1c)),
            Tok::Ident("z2c") => Ok(Expr::Var(Var::Z2c)),
            Tok::Ident("conj") => {
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Conj(Box::new(e)))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Group(Box::new(e)))
            }
            t => Err(Error::Syntax { column: col, message: format!("unexpected {}", t.describe()) }),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax(format!("unexpected {}", p.peek().describe()));
    }
    Ok(e)
}

pub fn parse_poly(src: &str) -> Result<SpherePoly> {
    Ok(parse(src)?.eval())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> SpherePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let i_third = GaussianRational::new(BigRational::zero(), BigRational::new(1.into(), 3.into()));
        assert_eq!(p("z1^2*z2c - i/3"), SpherePoly::z1().pow(2) * SpherePoly::z2c() - SpherePoly::constant(i_third));
        let z1 = SpherePoly::z1();
        let z1c = SpherePoly::z1c();
        assert_eq!(p("(z1+z1c)^2"), z1.pow(2) + (&z1 * &z1c).scale_int(2) + z1c.pow(2));
        assert_eq!(parse("z3"), Err(Error::Lex { token: "z3".into(), column: 1 }));
        assert_eq!(parse("z1 + z3"), Err(Error::Lex { token: "z3".into(), column: 6 }));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p("i*i"), SpherePoly::constant(GaussianRational::from_int(-1)));
        assert_eq!(p("2/4 * z1"), SpherePoly::z1().scale(&GaussianRational::ratio(1, 2)));
        assert!(p("z1*z1c + z2*z2c").sphere_eq(&SpherePoly::one()));
        assert_eq!(p("conj(z1 + i*z2)"), SpherePoly::z1c() - SpherePoly::z2c().scale(&GaussianRational::i()));
    }

    #[test]
    fn precedence() {
        assert_eq!(p("-z1^2"), -SpherePoly::z1().pow(2));
        assert_eq!(p("2*3 - 4 - 1"), SpherePoly::constant(GaussianRational::from_int(1)));
        assert_eq!(p("2/3^2"), SpherePoly::constant(GaussianRational::ratio(4, 9)));
        assert_eq!(p("--z1"), SpherePoly::z1());
        assert_eq!(p("z1/2/3"), SpherePoly::z1().scale(&GaussianRational::ratio(1, 6)));
    }

    #[test]
    fn errors() {
        assert_eq!(parse("z1^-1"), Err(Error::BadExponent { column: 4 }));
        assert_eq!(parse("z1^z2"), Err(Error::BadExponent { column: 4 }));
        assert!(matches!(parse("1/0"), Err(Error::ZeroDenominator(_))));
        assert!(matches!(parse("(z1 + z2"), Err(Error::Syntax { column: 9, .. })));
        assert!(matches!(parse("z1 z2"), Err(Error::Syntax { column: 4, .. })));
        assert!(matches!(parse("1.5"), Err(Error::Lex { .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { column: 1, .. })));
        assert!(matches!(parse("z1 * "), Err(Error::Syntax { .. })));
    }

    fn arb_coeff() -> impl Strategy<Value = GaussianRational> {
        (-9i64..10, 1i64..7, -9i64..10, 1i64..7).prop_map(|(a, b, c, d)| {
            GaussianRational::new(BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()))
        })
    }

    fn arb_poly() -> impl Strategy<Value = SpherePoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..3), arb_coeff()), 0..6).prop_map(|ts| {
            SpherePoly::from_terms(ts.into_iter().map(|((a, b, c, d), k)| (crate::poly::Monomial::new(a, b, c, d), k)))
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(x in arb_poly()) {
            prop_assert_eq!(parse_poly(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn whitespace_insensitive(x in arb_poly()) {
            let s = x.to_string();
            let squeezed: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            let spaced = s.replace('*', " * ").replace('^', " ^ ");
            prop_assert_eq!(parse_poly(&squeezed).unwrap(), x.clone());
            prop_assert_eq!(parse_poly(&spaced).unwrap(), x);
        }
    }
}

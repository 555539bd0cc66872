//! A small expression language for identity sides.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | postfix ('^' int)?
//! postfix := primary ('(' q-monomial ')')?        substitution q -> q^r
//! primary := integer | 'i' | q-monomial | prod[...] | label
//!          | dsum(M, r, w, chi) | sigma(w, chi, psi)
//!          | lambert(w, M, chi, psi, c@s, ...) | omega(M, k, expr)
//!          | '(' expr ')'
//! ```
//!
//! `dsum(M, r, w, chi)` is `sum_{n>=0} (sum_{d | Mn+r} chi(d) d^w) q^n`;
//! `sigma(w, chi, psi)` is `sum_{n>=1} (sum_{d | n} chi(d) psi(n/d) d^w) q^n`;
//! `omega(M, k, f)` keeps the coefficients of `f` at `q^{Mn+k}` as `q^n`.
//! Characters are `triv`, `one3`, `chi3`, `chi5`; `psi` may be `none`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{sigma_twisted, DirichletCharacter};
use crate::error::{Error, Result};
use crate::forms::FormLabel;
use crate::qfactory::{
    eta_quotient, lambert_series, parse_factor_list, split_top_level, EtaQuotientSpec, LambertSpec,
};
use crate::scalar::ExactScalar;
use crate::series::{GradedSeries, Precision, SupportClass, GRADING};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(ExactScalar),
    /// `t^e`.
    QMono(usize),
    Prod(EtaQuotientSpec),
    Label(FormLabel),
    DSum {
        modulus: u64,
        residue: u64,
        weight: u32,
        chi: DirichletCharacter,
    },
    Sigma {
        weight: u32,
        chi: DirichletCharacter,
        psi: DirichletCharacter,
    },
    Lambert(LambertSpec),
    Omega {
        modulus: usize,
        residue: usize,
        inner: Box<Expr>,
    },
    Subst(Box<Expr>, BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < src.len() {
            return Err(Error::parse(p.pos, format!("unexpected `{}`", &src[p.pos..])));
        }
        Ok(e)
    }

    /// Cache key for leaf builders.
    fn key(&self) -> Option<String> {
        Some(match self {
            Expr::Prod(s) => format!("prod:{s}"),
            Expr::Label(l) => format!("label:{l}"),
            Expr::DSum {
                modulus,
                residue,
                weight,
                chi,
            } => format!("dsum:{modulus},{residue},{weight},{chi}"),
            Expr::Sigma { weight, chi, psi } => format!("sigma:{weight},{chi},{psi}"),
            Expr::Lambert(s) => format!("lambert:{s:?}"),
            _ => return None,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => {
                if c.is_real() {
                    write!(f, "{c}")
                } else {
                    write!(f, "({c})")
                }
            }
            Expr::QMono(e) => write!(f, "q^({e}/{GRADING})"),
            Expr::Prod(s) => {
                let body: Vec<String> = s
                    .factors()
                    .iter()
                    .map(|x| format!("({},{},{})", x.offset, x.modulus, x.exponent))
                    .collect();
                write!(f, "{}*q^({}/{GRADING})*prod[{}]", Expr::Num(s.prefactor().clone()), s.prefactor_t_exponent(), body.join(","))
            }
            Expr::Label(l) => write!(f, "{l}"),
            Expr::DSum {
                modulus,
                residue,
                weight,
                chi,
            } => write!(f, "dsum({modulus},{residue},{weight},{chi})"),
            Expr::Sigma { weight, chi, psi } => write!(f, "sigma({weight},{chi},{psi})"),
            Expr::Lambert(s) => {
                let psi = s.psi.as_ref().map_or("none", DirichletCharacter::name);
                write!(f, "lambert({},{},{},{psi}", s.weight, s.modulus, s.chi)?;
                for (c, sh) in &s.terms {
                    write!(f, ",{}@{sh}", Expr::Num(c.clone()))?;
                }
                f.write_str(")")
            }
            Expr::Omega {
                modulus,
                residue,
                inner,
            } => write!(f, "omega({modulus},{residue},{inner})"),
            Expr::Subst(e, r) => write!(f, "({e})(q^({r}))"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
            Expr::Pow(a, n) => write!(f, "({a})^({n})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.postfix()?;
        if self.eat('^') {
            let n = self.signed_int()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn signed_int(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let start = self.pos;
        let v = self.digits()?;
        let v = i64::try_from(v).map_err(|_| Error::parse(start, "exponent too large"))?;
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Result<u64> {
        self.skip_ws();
        let r = self.rest();
        let len = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        if len == 0 {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        let v = r[..len]
            .parse()
            .map_err(|_| Error::parse(self.pos, "integer out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let first = r.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = r
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(r.len());
        self.pos += len;
        Some(&r[..len])
    }

    /// After a consumed `q`: optional `^n`, `^(n)` or `^(a/b)`.
    fn q_exponent(&mut self) -> Result<usize> {
        if !self.eat('^') {
            return Ok(GRADING);
        }
        let at = self.pos;
        let (num, den) = if self.eat('(') {
            let n = self.digits()?;
            let d = if self.eat('/') { self.digits()? } else { 1 };
            self.expect(')')?;
            (n, d)
        } else {
            (self.digits()?, 1)
        };
        let g = GRADING as u64;
        if den == 0 || (num * g) % den != 0 {
            return Err(Error::parse(at, format!("q^({num}/{den}) is not a power of q^(1/{g})")));
        }
        Ok((num * g / den) as usize)
    }

    /// `(q...)` following a primary, as a substitution ratio.
    fn substitution(&mut self) -> Result<Option<BigRational>> {
        let save = self.pos;
        if !self.eat('(') {
            return Ok(None);
        }
        if self.ident() != Some("q") {
            self.pos = save;
            return Ok(None);
        }
        let e = self.q_exponent()?;
        self.expect(')')?;
        if e == 0 {
            return Err(Error::parse(save, "substitution q -> q^0"));
        }
        Ok(Some(BigRational::new(BigInt::from(e), BigInt::from(GRADING))))
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut e = self.primary()?;
        while let Some(r) = self.substitution()? {
            e = Expr::Subst(Box::new(e), r);
        }
        Ok(e)
    }

    /// Raw comma-separated arguments inside `( ... )`.
    fn raw_args(&mut self) -> Result<Vec<(usize, &'a str)>> {
        self.expect('(')?;
        let start = self.pos;
        let mut depth = 1;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        let body = &self.src[start..start + i];
                        self.pos = start + i + 1;
                        return Ok(split_top_level(body, ',')
                            .into_iter()
                            .map(|(o, s)| (start + o, s))
                            .collect());
                    }
                }
                _ => {}
            }
        }
        Err(Error::parse(start, "unclosed `(`"))
    }

    fn primary(&mut self) -> Result<Expr> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => return Err(Error::parse(at, "unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                return Ok(e);
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.digits()?;
                return Ok(Expr::Num(ExactScalar::from_bigint(BigInt::from(v))));
            }
            _ => {}
        }
        let Some(name) = self.ident() else {
            return Err(Error::parse(at, format!("unexpected `{}`", self.rest())));
        };
        match name {
            "q" => Ok(Expr::QMono(self.q_exponent()?)),
            "i" => Ok(Expr::Num(ExactScalar::i())),
            "prod" => {
                if !self.rest().starts_with('[') {
                    return Err(Error::parse(self.pos, "expected `[` after prod"));
                }
                let body_start = self.pos + 1;
                let close = self.rest().find(']').ok_or_else(|| Error::parse(self.pos, "unclosed `[`"))?;
                let body = &self.src[body_start..self.pos + close];
                self.pos += close + 1;
                let triples = parse_factor_list(body, body_start)?;
                Ok(Expr::Prod(EtaQuotientSpec::from_signed(&triples, ExactScalar::one(), 0)?))
            }
            "dsum" => {
                let args = self.raw_args()?;
                arity(&args, 4, at, "dsum")?;
                let modulus = int_arg(args[0])?;
                let residue = int_arg(args[1])?;
                if modulus == 0 {
                    return Err(Error::parse(args[0].0, "modulus must be positive"));
                }
                Ok(Expr::DSum {
                    modulus,
                    residue,
                    weight: int_arg(args[2])? as u32,
                    chi: char_arg(args[3])?,
                })
            }
            "sigma" => {
                let args = self.raw_args()?;
                arity(&args, 3, at, "sigma")?;
                Ok(Expr::Sigma {
                    weight: int_arg(args[0])? as u32,
                    chi: char_arg(args[1])?,
                    psi: char_arg(args[2])?,
                })
            }
            "lambert" => {
                let args = self.raw_args()?;
                if args.len() < 5 {
                    return Err(Error::parse(at, "lambert needs w, M, chi, psi and at least one c@s term"));
                }
                let psi = match args[3].1.trim() {
                    "none" => None,
                    _ => Some(char_arg(args[3])?),
                };
                let mut terms = Vec::new();
                for &(pos, t) in &args[4..] {
                    let (c, s) = t
                        .split_once('@')
                        .ok_or_else(|| Error::parse(pos, format!("expected `c@s`, found `{}`", t.trim())))?;
                    let c: ExactScalar = c
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(pos, format!("invalid coefficient `{}`", c.trim())))?;
                    terms.push((c, int_arg((pos, s))?));
                }
                let spec = LambertSpec {
                    weight: int_arg(args[0])? as u32,
                    terms,
                    modulus: int_arg(args[1])?,
                    chi: char_arg(args[2])?,
                    psi,
                };
                if spec.modulus == 0 || spec.terms.iter().any(|t| t.1 == 0) {
                    return Err(Error::parse(at, "lambert shifts and modulus must be positive"));
                }
                Ok(Expr::Lambert(spec))
            }
            "omega" => {
                self.expect('(')?;
                let m_at = self.pos;
                let modulus = self.digits()? as usize;
                self.expect(',')?;
                let residue = self.digits()? as usize;
                self.expect(',')?;
                SupportClass::new(modulus, residue).map_err(|_| {
                    Error::parse(m_at, format!("{residue} is not a residue modulo {modulus}"))
                })?;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Omega {
                    modulus,
                    residue,
                    inner: Box::new(inner),
                })
            }
            other => Ok(Expr::Label(other.parse()?)),
        }
    }
}

fn arity(args: &[(usize, &str)], n: usize, at: usize, name: &str) -> Result<()> {
    if args.len() != n {
        return Err(Error::parse(at, format!("{name} takes {n} arguments, got {}", args.len())));
    }
    Ok(())
}

fn int_arg((pos, s): (usize, &str)) -> Result<u64> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(pos, format!("expected a nonnegative integer, found `{}`", s.trim())))
}

fn char_arg((pos, s): (usize, &str)) -> Result<DirichletCharacter> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(pos, format!("unknown character `{}`", s.trim())))
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(ExactScalar),
    Series(GradedSeries),
}

impl Value {
    pub fn into_series(self, prec: Precision) -> GradedSeries {
        match self {
            Value::Scalar(c) => GradedSeries::constant(c, prec),
            Value::Series(s) => s,
        }
    }
}

/// `sum_{n>=0} (sum_{d | Mn+r} chi(d) d^w) q^n`.
pub fn dissected_divisor_sum(
    modulus: u64,
    residue: u64,
    weight: u32,
    chi: &DirichletCharacter,
    prec: Precision,
) -> GradedSeries {
    let triv = DirichletCharacter::trivial();
    let coeffs = (0..=prec.q_order() as u64).map(|n| {
        let big_n = modulus * n + residue;
        if big_n == 0 {
            ExactScalar::zero()
        } else {
            sigma_twisted(big_n, weight, chi, &triv)
        }
    });
    GradedSeries::from_q_coeffs(coeffs, prec)
}

/// Evaluates expressions, caching leaf series by key and order.
#[derive(Default)]
pub struct Evaluator {
    cache: HashMap<(String, usize), GradedSeries>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn series(&mut self, e: &Expr, prec: Precision) -> Result<GradedSeries> {
        Ok(self.eval(e, prec)?.into_series(prec))
    }

    pub fn eval(&mut self, e: &Expr, prec: Precision) -> Result<Value> {
        if let Some(key) = e.key() {
            let k = (key, prec.order_t());
            if let Some(s) = self.cache.get(&k) {
                return Ok(Value::Series(s.clone()));
            }
            let s = self.leaf(e, prec)?;
            self.cache.insert(k, s.clone());
            return Ok(Value::Series(s));
        }
        Ok(match e {
            Expr::Num(c) => Value::Scalar(c.clone()),
            Expr::QMono(t) => Value::Series(GradedSeries::monomial(ExactScalar::one(), *t, prec)),
            Expr::Omega {
                modulus,
                residue,
                inner,
            } => {
                let inner_prec = Precision::q(modulus * prec.q_order() + residue);
                let s = self.series(inner, inner_prec)?;
                Value::Series(s.omega(SupportClass::new(*modulus, *residue)?)?)
            }
            Expr::Subst(inner, r) => {
                let t = BigRational::from_integer(BigInt::from(prec.order_t()));
                let need = (t / r).ceil().to_integer();
                let need: usize = need
                    .try_into()
                    .map_err(|_| Error::InvalidInput("substitution order overflows".into()))?;
                match self.eval(inner, Precision::t(need))? {
                    Value::Scalar(c) => Value::Scalar(c),
                    Value::Series(s) => {
                        Value::Series(s.substitute_q_power(r)?.truncate(prec.order_t()))
                    }
                }
            }
            Expr::Neg(a) => match self.eval(a, prec)? {
                Value::Scalar(c) => Value::Scalar(-c),
                Value::Series(s) => Value::Series(-&s),
            },
            Expr::Add(a, b) => self.binary(a, b, prec, |x, y| x + y, |x, y| x.add(y))?,
            Expr::Sub(a, b) => self.binary(a, b, prec, |x, y| x - y, |x, y| x.sub(y))?,
            Expr::Mul(a, b) => {
                let (x, y) = (self.eval(a, prec)?, self.eval(b, prec)?);
                match (x, y) {
                    (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
                    (Value::Scalar(c), Value::Series(s)) | (Value::Series(s), Value::Scalar(c)) => {
                        Value::Series(s.scale(&c))
                    }
                    (Value::Series(x), Value::Series(y)) => Value::Series(x.mul(&y)),
                }
            }
            Expr::Div(a, b) => {
                let (x, y) = (self.eval(a, prec)?, self.eval(b, prec)?);
                match y {
                    Value::Scalar(d) => {
                        let inv = d
                            .inv()
                            .ok_or_else(|| Error::InvalidInput("division by zero".into()))?;
                        match x {
                            Value::Scalar(x) => Value::Scalar(&x * &inv),
                            Value::Series(s) => Value::Series(s.scale(&inv)),
                        }
                    }
                    Value::Series(d) => {
                        let inv = d.invert()?;
                        Value::Series(x.into_series(prec).mul(&inv))
                    }
                }
            }
            Expr::Pow(a, n) => match self.eval(a, prec)? {
                Value::Scalar(c) => {
                    if *n >= 0 {
                        Value::Scalar(c.pow(*n as u32))
                    } else {
                        let inv = c
                            .inv()
                            .ok_or_else(|| Error::InvalidInput("zero to a negative power".into()))?;
                        Value::Scalar(inv.pow(n.unsigned_abs() as u32))
                    }
                }
                Value::Series(s) => Value::Series(s.pow(*n)?),
            },
            _ => unreachable!("leaf expressions are handled through the cache"),
        })
    }

    fn binary(
        &mut self,
        a: &Expr,
        b: &Expr,
        prec: Precision,
        scalar: impl Fn(ExactScalar, ExactScalar) -> ExactScalar,
        series: impl Fn(&GradedSeries, &GradedSeries) -> GradedSeries,
    ) -> Result<Value> {
        let (x, y) = (self.eval(a, prec)?, self.eval(b, prec)?);
        Ok(match (x, y) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(scalar(x, y)),
            (x, y) => Value::Series(series(&x.into_series(prec), &y.into_series(prec))),
        })
    }

    fn leaf(&mut self, e: &Expr, prec: Precision) -> Result<GradedSeries> {
        match e {
            Expr::Prod(spec) => Ok(eta_quotient(spec, prec)),
            Expr::Label(l) => l.build(prec),
            Expr::DSum {
                modulus,
                residue,
                weight,
                chi,
            } => Ok(dissected_divisor_sum(*modulus, *residue, *weight, chi, prec)),
            Expr::Sigma { weight, chi, psi } => {
                let coeffs = (0..=prec.q_order() as u64).map(|n| {
                    if n == 0 {
                        ExactScalar::zero()
                    } else {
                        sigma_twisted(n, *weight, chi, psi)
                    }
                });
                Ok(GradedSeries::from_q_coeffs(coeffs, prec))
            }
            Expr::Lambert(spec) => lambert_series(spec, prec),
            _ => unreachable!("not a leaf"),
        }
    }
}

/// Parses and expands an expression in one step.
pub fn expand(src: &str, prec: Precision) -> Result<GradedSeries> {
    Evaluator::new().series(&Expr::parse(src)?, prec)
}

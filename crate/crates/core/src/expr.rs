//! Expression language.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' signed-int)?
//! atom   := q | int | T<d> | T[i] | Tinv<d> | Tinv[i] | rho | rhoinv
//!         | b<digits> | b[i] | bs(i, j, ...) | y<d> | y[i] | u<k> | u'<k> | '(' expr ')'
//! ```
//!
//! At rank 2 `b0101` is the KL basis element of that alternating word; at
//! other ranks `b` takes a single index.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::example_n2::{u_act_elt_multiply, UBasis, UVec, DEFAULT_BOUND};
use crate::hecke::HeckeElt;
use crate::kl::{kl_to_std, KLLabel};
use crate::laurent::LaurentPoly;
use crate::parabolic::{bernstein_y, bernstein_y_inv};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Q,
    Int(BigInt),
    T(usize),
    TInv(usize),
    Rho,
    RhoInv,
    B(Vec<usize>),
    Bs(Vec<usize>),
    Y(usize),
    U(usize),
    UPrime(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        let idx = |i: &usize| if *i < 10 { i.to_string() } else { format!("[{i}]") };
        match self {
            Expr::Q => write!(f, "q"),
            Expr::Int(k) => write!(f, "{k}"),
            Expr::T(i) => write!(f, "T{}", idx(i)),
            Expr::TInv(i) => write!(f, "Tinv{}", idx(i)),
            Expr::Rho => write!(f, "rho"),
            Expr::RhoInv => write!(f, "rhoinv"),
            Expr::B(w) if w.len() == 1 && w[0] >= 10 => write!(f, "b[{}]", w[0]),
            Expr::B(w) if w.is_empty() => write!(f, "b_e"),
            Expr::B(w) => write!(f, "b{}", w.iter().map(|i| i.to_string()).collect::<String>()),
            Expr::Bs(w) => write!(f, "bs({})", w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")),
            Expr::Y(i) => write!(f, "y{}", idx(i)),
            Expr::U(k) => write!(f, "u{k}"),
            Expr::UPrime(k) => write!(f, "u'{k}"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "{}", if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, "*")?;
                b.write_at(f, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn number(&mut self) -> Result<usize> {
        let at = self.pos;
        match self.digits() {
            Some(d) => d.parse().or_else(|_| {
                self.pos = at;
                self.err("index too large")
            }),
            None => self.err("expected a number"),
        }
    }

    /// A single digit, or `[digits]`.
    fn index(&mut self) -> Result<usize> {
        match self.src.get(self.pos) {
            Some(b'[') => {
                self.pos += 1;
                self.skip_ws();
                let i = self.number()?;
                self.expect(b']')?;
                Ok(i)
            }
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok((c - b'0') as usize)
            }
            _ => self.err("expected an index"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let neg = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let at = self.pos;
            let Some(d) = self.digits() else {
                return self.err("expected an integer exponent");
            };
            let e: i64 = match d.parse() {
                Ok(e) => e,
                Err(_) => {
                    self.pos = at;
                    return self.err("exponent too large");
                }
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of input");
        };
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let d = self.digits().unwrap();
            return Ok(Expr::Int(d.parse().expect("digits")));
        }
        if !c.is_ascii_alphabetic() {
            return self.err(format!("unexpected character '{}'", c as char));
        }
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match word {
            "q" => Ok(Expr::Q),
            "rho" => Ok(Expr::Rho),
            "rhoinv" => Ok(Expr::RhoInv),
            "T" => Ok(Expr::T(self.index()?)),
            "Tinv" => Ok(Expr::TInv(self.index()?)),
            "y" => Ok(Expr::Y(self.index()?)),
            "b" => {
                if self.src.get(self.pos) == Some(&b'[') {
                    return Ok(Expr::B(vec![self.index()?]));
                }
                if self.src[self.pos..].starts_with(b"_e") {
                    self.pos += 2;
                    return Ok(Expr::B(Vec::new()));
                }
                match self.digits() {
                    Some(d) => Ok(Expr::B(d.bytes().map(|c| (c - b'0') as usize).collect())),
                    None => self.err("expected a label after 'b'"),
                }
            }
            "bs" => {
                self.expect(b'(')?;
                let mut list = Vec::new();
                if !self.eat(b')') {
                    loop {
                        self.skip_ws();
                        list.push(self.number()?);
                        if self.eat(b')') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(Expr::Bs(list))
            }
            "u" => {
                let prime = self.src.get(self.pos) == Some(&b'\'');
                if prime {
                    self.pos += 1;
                }
                let k = self.number()?;
                Ok(if prime { Expr::UPrime(k) } else { Expr::U(k) })
            }
            _ => {
                self.pos = start;
                self.err(format!("unknown identifier '{word}'"))
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// Evaluation settings: the rank, the truncation bound for `U`, and whether
/// to apply `rho^2 -> 1` afterwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalContext {
    pub n: usize,
    pub bound: usize,
    pub mod_rho2: bool,
}

impl EvalContext {
    pub fn new(n: usize) -> Self {
        Self { n, bound: DEFAULT_BOUND, mod_rho2: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(LaurentPoly),
    Hecke(HeckeElt),
    U(UVec),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Hecke(h) => write!(f, "{h}"),
            Value::U(u) => write!(f, "{u}"),
        }
    }
}

impl Value {
    /// Scalars are promoted to multiples of the identity.
    pub fn into_hecke(self, n: usize) -> Result<HeckeElt> {
        match self {
            Value::Scalar(c) => Ok(HeckeElt::scalar(n, c)),
            Value::Hecke(h) => Ok(h),
            Value::U(_) => Err(Error::Type("expected an algebra element, got an element of U".into())),
        }
    }

    pub fn into_uvec(self) -> Result<UVec> {
        match self {
            Value::U(u) => Ok(u),
            Value::Scalar(c) if c.is_zero() => Ok(UVec::zero(DEFAULT_BOUND)),
            _ => Err(Error::Type("expected an element of U".into())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(c) => c.is_zero(),
            Value::Hecke(h) => h.is_zero(),
            Value::U(u) => u.is_zero(),
        }
    }

    /// Hecke values equal to a scalar multiple of 1 collapse to scalars.
    fn normalize(self) -> Value {
        match self {
            Value::Hecke(h) if h.terms().all(|(w, _)| w.is_identity()) => {
                let n = h.n();
                Value::Scalar(h.coeff(&crate::weyl::AffinePerm::identity(n)))
            }
            v => v,
        }
    }
}

fn add(ctx: &EvalContext, a: Value, b: Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
        (Value::U(x), Value::U(y)) => Value::U(x.add(&y)),
        (Value::U(x), s) | (s, Value::U(x)) if s.is_zero() => Value::U(x),
        (Value::U(_), _) | (_, Value::U(_)) => {
            return Err(Error::Type("cannot add an element of U and an algebra element".into()))
        }
        (x, y) => Value::Hecke(x.into_hecke(ctx.n)?.try_add(&y.into_hecke(ctx.n)?)?),
    })
}

fn neg(v: Value) -> Value {
    let m1 = -LaurentPoly::one();
    match v {
        Value::Scalar(x) => Value::Scalar(-x),
        Value::Hecke(h) => Value::Hecke(-&h),
        Value::U(u) => Value::U(u.scale(&m1)),
    }
}

fn mul(ctx: &EvalContext, a: Value, b: Value) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
        (Value::Scalar(x), Value::Hecke(h)) | (Value::Hecke(h), Value::Scalar(x)) => Value::Hecke(h.scale(&x)),
        (Value::Hecke(x), Value::Hecke(y)) => Value::Hecke(x.try_mul(&y)?),
        (Value::Scalar(x), Value::U(u)) => Value::U(u.scale(&x)),
        (Value::Hecke(h), Value::U(u)) => {
            let h = if ctx.mod_rho2 { h.reduce_rho_power(2)? } else { h };
            Value::U(u_act_elt_multiply(&h, &u)?)
        }
        (Value::U(_), _) => return Err(Error::Type("elements of U can only be multiplied on the left".into())),
    })
}

fn pow(ctx: &EvalContext, base: &Expr, e: i64) -> Result<Value> {
    let n = ctx.n;
    if e < 0 {
        if let Expr::Y(i) = base {
            return Ok(Value::Hecke(bernstein_y_inv(n, *i)?.pow(e.unsigned_abs() as u32)));
        }
    }
    let v = eval_inner(ctx, base)?;
    let (v, k) = if e < 0 { (inverse(v)?, e.unsigned_abs()) } else { (v, e as u64) };
    let k = u32::try_from(k).map_err(|_| Error::Type("exponent too large".into()))?;
    Ok(match v {
        Value::Scalar(c) => Value::Scalar(c.pow(k)),
        Value::Hecke(h) => Value::Hecke(h.pow(k)),
        Value::U(_) => return Err(Error::Type("cannot raise an element of U to a power".into())),
    })
}

fn inverse(v: Value) -> Result<Value> {
    match v {
        Value::Scalar(c) => c.unit_inverse().map(Value::Scalar).ok_or_else(|| Error::NotInvertible(c.to_string())),
        Value::Hecke(h) => Ok(Value::Hecke(h.try_inverse()?)),
        Value::U(_) => Err(Error::NotInvertible("element of U".into())),
    }
}

fn u_atom(ctx: &EvalContext, b: UBasis) -> Result<Value> {
    if ctx.n != 2 {
        return Err(Error::RankUnsupported { n: ctx.n });
    }
    Ok(Value::U(UVec::basis(b, ctx.bound)?))
}

fn eval_inner(ctx: &EvalContext, e: &Expr) -> Result<Value> {
    let n = ctx.n;
    let h = |x: Result<HeckeElt>| x.map(Value::Hecke);
    match e {
        Expr::Q => Ok(Value::Scalar(LaurentPoly::q())),
        Expr::Int(k) => Ok(Value::Scalar(LaurentPoly::constant(k.clone()))),
        Expr::T(i) => h(HeckeElt::t(n, *i)),
        Expr::TInv(i) => h(HeckeElt::t_inv(n, *i)),
        Expr::Rho => Ok(Value::Hecke(HeckeElt::rho(n, 1))),
        Expr::RhoInv => Ok(Value::Hecke(HeckeElt::rho(n, -1))),
        Expr::B(w) if n == 2 => Ok(Value::Hecke(kl_to_std(&KLLabel::new(0, w.clone())?))),
        Expr::B(w) if w.len() == 1 => h(HeckeElt::b(n, w[0])),
        Expr::B(_) => Err(Error::RankUnsupported { n }),
        Expr::Bs(w) => {
            let mut acc = HeckeElt::one(n);
            for &i in w {
                acc = &acc * &HeckeElt::b(n, i)?;
            }
            Ok(Value::Hecke(acc))
        }
        Expr::Y(i) => h(bernstein_y(n, *i)),
        Expr::U(k) => u_atom(ctx, UBasis::U(*k)),
        Expr::UPrime(k) => u_atom(ctx, UBasis::UPrime(*k)),
        Expr::Add(a, b) => add(ctx, eval_inner(ctx, a)?, eval_inner(ctx, b)?),
        Expr::Sub(a, b) => add(ctx, eval_inner(ctx, a)?, neg(eval_inner(ctx, b)?)),
        Expr::Mul(a, b) => mul(ctx, eval_inner(ctx, a)?, eval_inner(ctx, b)?),
        Expr::Neg(a) => Ok(neg(eval_inner(ctx, a)?)),
        Expr::Pow(a, k) => pow(ctx, a, *k),
    }
}

pub fn eval(ctx: &EvalContext, e: &Expr) -> Result<Value> {
    if ctx.n == 0 {
        return Err(Error::BadIndex { index: 0, n: 0 });
    }
    let v = eval_inner(ctx, e)?;
    let v = match v {
        Value::Hecke(h) if ctx.mod_rho2 => Value::Hecke(h.reduce_rho_power(2)?),
        v => v,
    };
    Ok(v.normalize())
}

/// Parse and evaluate.
pub fn eval_str(ctx: &EvalContext, src: &str) -> Result<Value> {
    eval(ctx, &parse(src)?)
}

/// A random algebra-valued expression of the given depth at rank `n`.
pub fn random_expr<R: Rng>(rng: &mut R, n: usize, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        let kl = |rng: &mut R| {
            let len = rng.gen_range(1..=4);
            let start = rng.gen_range(0..2);
            Expr::B((0..len).map(|t| (start + t) % 2).collect())
        };
        let pick = rng.gen_range(0..9);
        return match pick {
            0 => Expr::Q,
            1 => Expr::Int(rng.gen_range(0..5).into()),
            2 => Expr::T(rng.gen_range(0..n)),
            3 => Expr::TInv(rng.gen_range(0..n)),
            4 => Expr::Rho,
            5 => Expr::RhoInv,
            6 if n == 2 => kl(rng),
            6 => Expr::B(vec![rng.gen_range(0..n)]),
            7 => Expr::Bs((0..rng.gen_range(0..=3)).map(|_| rng.gen_range(0..n)).collect()),
            _ => Expr::Y(rng.gen_range(1..=n)),
        };
    }
    let sub = |rng: &mut R| Box::new(random_expr(rng, n, depth - 1));
    match rng.gen_range(0..6) {
        0 => Expr::Add(sub(rng), sub(rng)),
        1 => Expr::Sub(sub(rng), sub(rng)),
        2 | 3 => Expr::Mul(sub(rng), sub(rng)),
        4 => Expr::Neg(sub(rng)),
        _ => {
            // Negative powers only on invertible atoms.
            let atom = match rng.gen_range(0..4) {
                0 => Expr::T(rng.gen_range(0..n)),
                1 => Expr::Rho,
                2 => Expr::Y(rng.gen_range(1..=n)),
                _ => Expr::Q,
            };
            Expr::Pow(Box::new(atom), rng.gen_range(-2..=2))
        }
    }
}

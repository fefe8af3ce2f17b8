//! Expression trees for single-variable real functions.
//!
//! Functions are parsed from text (see [`parse`]), evaluated in IEEE double
//! precision, differentiated symbolically and, when they are built only from
//! field operations and integer powers, converted to exact rational functions.

mod diff;
mod parse;
mod print;
mod rational;
mod simplify;

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::{rational_int, rational_to_f64, Rational};

pub use parse::{parse, SyntaxError};
pub use rational::NotRational;

/// Named constants kept symbolic until evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }
}

/// Built-in functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Sin, Func::Cos, Func::Tan, Func::Exp, Func::Ln, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Expression in the single free variable `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Exact rational literal.
    Num(Rational),
    Const(Constant),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Apply(Func, Box<Expr>),
}

/// Reasons an evaluation has no real value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("logarithm of a non-positive number")]
    LogOfNonPositive,
    #[error("square root of a negative number")]
    SqrtOfNegative,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("negative base with a non-integer exponent")]
    NegativeBase,
    #[error("result is not finite")]
    NonFinite,
}

impl Expr {
    pub fn num(v: i64) -> Expr {
        Expr::Num(rational_int(v))
    }

    pub fn ratio(num: i64, den: i64) -> Expr {
        Expr::Num(crate::poly::rational_frac(num, den))
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        Expr::Apply(f, Box::new(arg))
    }

    pub fn pow(self, exp: Expr) -> Expr {
        Expr::Pow(Box::new(self), Box::new(exp))
    }

    pub fn powi(self, n: i64) -> Expr {
        self.pow(Expr::num(n))
    }

    pub fn is_num(&self, v: i64) -> bool {
        matches!(self, Expr::Num(r) if *r == rational_int(v))
    }

    /// True when the variable does not occur.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Const(_) => true,
            Expr::Var => false,
            Expr::Neg(a) | Expr::Apply(_, a) => a.is_constant(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::Var => 1,
            Expr::Neg(a) | Expr::Apply(_, a) => 1 + a.size(),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Replaces every occurrence of the variable by `inner`, giving `self ∘ inner`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        let sub = |e: &Expr| Box::new(e.substitute(inner));
        match self {
            Expr::Var => inner.clone(),
            Expr::Num(_) | Expr::Const(_) => self.clone(),
            Expr::Neg(a) => Expr::Neg(sub(a)),
            Expr::Apply(f, a) => Expr::Apply(*f, sub(a)),
            Expr::Add(a, b) => Expr::Add(sub(a), sub(b)),
            Expr::Sub(a, b) => Expr::Sub(sub(a), sub(b)),
            Expr::Mul(a, b) => Expr::Mul(sub(a), sub(b)),
            Expr::Div(a, b) => Expr::Div(sub(a), sub(b)),
            Expr::Pow(a, b) => Expr::Pow(sub(a), sub(b)),
        }
    }

    /// Evaluates at `x` in double precision.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Num(r) => rational_to_f64(r),
            Expr::Const(c) => c.value(),
            Expr::Var => x,
            Expr::Neg(a) => -a.eval(x)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Div(a, b) => {
                let num = a.eval(x)?;
                let den = b.eval(x)?;
                if den == 0.0 {
                    return Err(EvalError::DivisionByZero);
                }
                num / den
            }
            Expr::Pow(base, exp) => eval_pow(base.eval(x)?, exp, x)?,
            Expr::Apply(f, a) => {
                let v = a.eval(x)?;
                match f {
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                    Func::Tan => v.tan(),
                    Func::Exp => v.exp(),
                    Func::Ln if v <= 0.0 => return Err(EvalError::LogOfNonPositive),
                    Func::Ln => v.ln(),
                    Func::Sqrt if v < 0.0 => return Err(EvalError::SqrtOfNegative),
                    Func::Sqrt => v.sqrt(),
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite)
        }
    }

    /// Symbolic derivative with respect to the variable, cleaned up.
    pub fn differentiate(&self) -> Expr {
        diff::derivative(self).simplify()
    }

    /// Constant folding and 0/1 identities, bottom-up.
    pub fn simplify(&self) -> Expr {
        simplify::simplify(self)
    }
}

fn eval_pow(base: f64, exp: &Expr, x: f64) -> Result<f64, EvalError> {
    if let Expr::Num(r) = exp {
        if r.is_integer() {
            let n = rational_to_f64(r);
            if base == 0.0 && n < 0.0 {
                return Err(EvalError::ZeroToNegativePower);
            }
            if n.abs() <= i32::MAX as f64 {
                return Ok(base.powi(n as i32));
            }
            return Ok(base.powf(n));
        }
    }
    let e = exp.eval(x)?;
    if base == 0.0 && e < 0.0 {
        return Err(EvalError::ZeroToNegativePower);
    }
    if base < 0.0 && e.fract() != 0.0 {
        return Err(EvalError::NegativeBase);
    }
    Ok(base.powf(e))
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl std::ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binary_op!(Add, add, Add);
binary_op!(Sub, sub, Sub);
binary_op!(Mul, mul, Mul);
binary_op!(Div, div, Div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print(self))
    }
}

impl std::str::FromStr for Expr {
    type Err = SyntaxError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// A named function, `name(x) = body`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionDef {
    pub name: String,
    pub body: Expr,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DefinitionError {
    #[error("expected `name(x) = expression` or `name = expression`")]
    Malformed,
    #[error("invalid function name `{0}`")]
    BadName(String),
    #[error("function `{0}` is already defined")]
    Duplicate(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

impl FunctionDef {
    /// Parses `f(x) = x^2` (or `f = x^2`).
    pub fn parse(text: &str) -> Result<FunctionDef, DefinitionError> {
        let (head, body) = text.split_once('=').ok_or(DefinitionError::Malformed)?;
        let head = head.trim();
        let name = match head.split_once('(') {
            Some((name, rest)) => {
                let arg = rest.trim().strip_suffix(')').ok_or(DefinitionError::Malformed)?;
                if !matches!(arg.trim(), "x" | "t") {
                    return Err(DefinitionError::Malformed);
                }
                name.trim()
            }
            None => head,
        };
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || Func::from_name(name).is_some() || matches!(name, "x" | "t" | "pi" | "e") {
            return Err(DefinitionError::BadName(name.to_string()));
        }
        // Offsets in syntax errors refer to the body text.
        let body = parse(body.trim())?;
        Ok(FunctionDef { name: name.to_string(), body })
    }
}

/// Set of named functions with unique names.
#[derive(Clone, Debug, Default)]
pub struct Session {
    defs: BTreeMap<String, FunctionDef>,
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn define(&mut self, def: FunctionDef) -> Result<(), DefinitionError> {
        if self.defs.contains_key(&def.name) {
            return Err(DefinitionError::Duplicate(def.name));
        }
        self.defs.insert(def.name.clone(), def);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&FunctionDef> {
        self.defs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn evaluates_basic_expressions() {
        assert_eq!(p("x^2").eval(3.0), Ok(9.0));
        assert_eq!(p("x + 1/x").eval(2.0), Ok(2.5));
        assert_eq!(p("2pi").eval(0.0), Ok(2.0 * std::f64::consts::PI));
    }

    #[test]
    fn domain_errors_are_values() {
        assert_eq!(p("sqrt(x)").eval(-1.0), Err(EvalError::SqrtOfNegative));
        assert_eq!(p("ln(x)").eval(0.0), Err(EvalError::LogOfNonPositive));
        assert_eq!(p("1/x").eval(0.0), Err(EvalError::DivisionByZero));
        assert_eq!(p("x^-1").eval(0.0), Err(EvalError::ZeroToNegativePower));
        assert_eq!(p("x^0.5").eval(-4.0), Err(EvalError::NegativeBase));
        assert_eq!(p("exp(x)").eval(1000.0), Err(EvalError::NonFinite));
    }

    #[test]
    fn substitution_composes() {
        let g = p("2x + 3");
        let f = p("2x - 2");
        let gf = g.substitute(&f);
        assert_eq!(gf.eval(1.5), Ok(5.0));
    }

    #[test]
    fn session_rejects_duplicates() {
        let mut s = Session::new();
        s.define(FunctionDef::parse("f(x) = x^2").unwrap()).unwrap();
        let again = FunctionDef::parse("f = sin x").unwrap();
        assert_eq!(s.define(again), Err(DefinitionError::Duplicate("f".into())));
        assert!(matches!(FunctionDef::parse("sin(x) = x"), Err(DefinitionError::BadName(_))));
        assert!(matches!(FunctionDef::parse("g(y) = x"), Err(DefinitionError::Malformed)));
        assert_eq!(s.names().collect::<Vec<_>>(), vec!["f"]);
    }
}

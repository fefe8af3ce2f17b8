use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Expr;
use crate::poly::Rational;

fn num(r: Rational) -> Expr {
    Expr::Num(r)
}

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Num(r) if r.is_zero())
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Num(r) if r.is_one())
}

pub(super) fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) | Expr::Const(_) | Expr::Var => e.clone(),
        Expr::Neg(a) => match simplify(a) {
            Expr::Num(r) => num(-r),
            Expr::Neg(inner) => *inner,
            a => -a,
        },
        Expr::Add(a, b) => match (simplify(a), simplify(b)) {
            (Expr::Num(x), Expr::Num(y)) => num(x + y),
            (a, b) if is_zero(&a) => b,
            (a, b) if is_zero(&b) => a,
            (a, b) => a + b,
        },
        Expr::Sub(a, b) => match (simplify(a), simplify(b)) {
            (Expr::Num(x), Expr::Num(y)) => num(x - y),
            (a, b) if is_zero(&b) => a,
            (a, b) if is_zero(&a) => simplify(&-b),
            (a, b) => a - b,
        },
        Expr::Mul(a, b) => match (simplify(a), simplify(b)) {
            (Expr::Num(x), Expr::Num(y)) => num(x * y),
            (a, b) if is_zero(&a) || is_zero(&b) => Expr::num(0),
            (a, b) if is_one(&a) => b,
            (a, b) if is_one(&b) => a,
            (a, b) => a * b,
        },
        Expr::Div(a, b) => match (simplify(a), simplify(b)) {
            (Expr::Num(x), Expr::Num(y)) if !y.is_zero() => num(x / y),
            (a, b) if is_one(&b) => a,
            (a, b) if is_zero(&a) && !is_zero(&b) => Expr::num(0),
            (a, b) => a / b,
        },
        Expr::Pow(a, b) => match (simplify(a), simplify(b)) {
            (a, b) if is_one(&b) => a,
            (_, b) if is_zero(&b) => Expr::num(1),
            (a, _) if is_one(&a) => Expr::num(1),
            (Expr::Num(x), Expr::Num(y)) => match fold_pow(&x, &y) {
                Some(r) => num(r),
                None => Expr::Num(x).pow(Expr::Num(y)),
            },
            (a, b) => a.pow(b),
        },
        Expr::Apply(f, a) => Expr::apply(*f, simplify(a)),
    }
}

fn fold_pow(base: &Rational, exp: &Rational) -> Option<Rational> {
    if !exp.is_integer() {
        return None;
    }
    let n = exp.to_integer().to_i32().filter(|n| n.abs() <= 64)?;
    if base.is_zero() && n < 0 {
        return None;
    }
    let p = num_traits::pow(base.clone(), n.unsigned_abs() as usize);
    Some(if n.is_negative() { p.recip() } else { p })
}

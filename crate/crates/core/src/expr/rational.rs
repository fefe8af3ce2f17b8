use num_traits::ToPrimitive;

use super::Expr;
use crate::algebra::RationalFunction;
use crate::poly::{Poly1, Ring};

/// The expression is not a quotient of polynomials with exact coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expression is not a rational function with exact coefficients")]
pub struct NotRational;

type Fraction = (Poly1, Poly1);

fn fraction(e: &Expr) -> Result<Fraction, NotRational> {
    Ok(match e {
        Expr::Num(r) => (Poly1::constant(r.clone()), Poly1::one()),
        Expr::Var => (Poly1::var(), Poly1::one()),
        Expr::Const(_) | Expr::Apply(..) => return Err(NotRational),
        Expr::Neg(a) => {
            let (p, q) = fraction(a)?;
            (p.neg(), q)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (p1, q1) = fraction(a)?;
            let (p2, q2) = fraction(b)?;
            let (l, r) = (p1.mul(&q2), p2.mul(&q1));
            let num = if matches!(e, Expr::Add(..)) { l.add(&r) } else { l.sub(&r) };
            (num, q1.mul(&q2))
        }
        Expr::Mul(a, b) => {
            let (p1, q1) = fraction(a)?;
            let (p2, q2) = fraction(b)?;
            (p1.mul(&p2), q1.mul(&q2))
        }
        Expr::Div(a, b) => {
            let (p1, q1) = fraction(a)?;
            let (p2, q2) = fraction(b)?;
            if p2.is_zero() {
                return Err(NotRational);
            }
            (p1.mul(&q2), q1.mul(&p2))
        }
        Expr::Pow(a, b) => {
            let Expr::Num(n) = b.simplify() else {
                return Err(NotRational);
            };
            if !n.is_integer() {
                return Err(NotRational);
            }
            let n = n.to_integer().to_i64().filter(|n| n.abs() <= 64).ok_or(NotRational)?;
            let (p, q) = fraction(a)?;
            let k = n.unsigned_abs() as u32;
            if n >= 0 {
                (p.pow(k), q.pow(k))
            } else if p.is_zero() {
                return Err(NotRational);
            } else {
                (q.pow(k), p.pow(k))
            }
        }
    })
}

impl Expr {
    /// Exact `P/Q` in lowest terms, or [`NotRational`].
    pub fn to_rational_function(&self) -> Result<RationalFunction, NotRational> {
        let (p, q) = fraction(self)?;
        RationalFunction::new(p, q).ok_or(NotRational)
    }
}

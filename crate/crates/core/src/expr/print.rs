use num_traits::Signed;

use super::Expr;
use crate::poly::terminating_decimal;

// Binding strength of the printed form; higher binds tighter.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Neg(_) => UNARY,
        Expr::Pow(..) => POWER,
        Expr::Num(_) | Expr::Const(_) | Expr::Var | Expr::Apply(..) => ATOM,
    }
}

/// Prints with explicit `*` and the fewest parentheses that reparse to the
/// same tree.
pub(super) fn print(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn write_at_least(e: &Expr, min: u8, out: &mut String) {
    if level(e) < min {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

fn write_expr(e: &Expr, out: &mut String) {
    match e {
        Expr::Num(r) => match terminating_decimal(r) {
            Some(s) if !r.is_negative() => out.push_str(&s),
            Some(s) => {
                out.push('(');
                out.push_str(&s);
                out.push(')');
            }
            None => {
                out.push('(');
                out.push_str(&format!("{}/{}", r.numer(), r.denom()));
                out.push(')');
            }
        },
        Expr::Const(c) => out.push_str(c.name()),
        Expr::Var => out.push('x'),
        Expr::Neg(a) => {
            out.push('-');
            write_at_least(a, UNARY, out);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at_least(a, SUM, out);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            write_at_least(b, PRODUCT, out);
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            write_at_least(a, PRODUCT, out);
            out.push_str(if matches!(e, Expr::Mul(..)) { "*" } else { "/" });
            write_at_least(b, UNARY, out);
        }
        Expr::Pow(a, b) => {
            write_at_least(a, ATOM, out);
            out.push('^');
            write_at_least(b, UNARY, out);
        }
        Expr::Apply(f, a) => {
            out.push_str(f.name());
            out.push('(');
            write_expr(a, out);
            out.push(')');
        }
    }
}

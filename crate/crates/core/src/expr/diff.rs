use super::{Expr, Func};

/// Raw derivative; the caller simplifies.
pub(super) fn derivative(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) | Expr::Const(_) => Expr::num(0),
        Expr::Var => Expr::num(1),
        Expr::Neg(a) => -derivative(a),
        Expr::Add(a, b) => derivative(a) + derivative(b),
        Expr::Sub(a, b) => derivative(a) - derivative(b),
        Expr::Mul(a, b) => derivative(a) * (**b).clone() + (**a).clone() * derivative(b),
        Expr::Div(a, b) => {
            let (u, v) = ((**a).clone(), (**b).clone());
            if u.is_constant() {
                // (c/v)' = -c v' / v^2
                return -(u * derivative(b)) / v.powi(2);
            }
            (derivative(a) * v.clone() - u * derivative(b)) / v.powi(2)
        }
        Expr::Pow(a, b) => {
            let (u, v) = ((**a).clone(), (**b).clone());
            if v.is_constant() {
                // n u^(n-1) u'
                let reduced = (v.clone() - Expr::num(1)).simplify();
                return v * u.pow(reduced) * derivative(a);
            }
            let ln_u = Expr::apply(Func::Ln, u.clone());
            if u.is_constant() {
                return e.clone() * ln_u * derivative(b);
            }
            // (u^v)' = u^v (v' ln u + v u'/u)
            e.clone() * (derivative(b) * ln_u + v * derivative(a) / u)
        }
        Expr::Apply(f, a) => {
            let u = (**a).clone();
            let du = derivative(a);
            let outer = match f {
                Func::Sin => Expr::apply(Func::Cos, u),
                Func::Cos => -Expr::apply(Func::Sin, u),
                Func::Tan => Expr::num(1) / Expr::apply(Func::Cos, u).powi(2),
                Func::Exp => Expr::apply(Func::Exp, u),
                Func::Ln => return du / u,
                Func::Sqrt => return du / (Expr::num(2) * Expr::apply(Func::Sqrt, u)),
            };
            outer * du
        }
    }
}

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{rational_to_f64, GcdRing, Poly1, Rational, Ring, UPoly};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Poly2Error {
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
    #[error("term ({dx}, {dy}) has an invalid coefficient {num}/{den}")]
    Coefficient {
        dx: u32,
        dy: u32,
        num: String,
        den: String,
    },
}

/// Bivariate polynomial `G(x, y)` with exact rational coefficients.
///
/// Stored as a polynomial in `y` whose coefficients are polynomials in `x`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    inner: UPoly<Poly1>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    dx: u32,
    dy: u32,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct Poly2Json {
    terms: Vec<TermJson>,
}

impl Poly2 {
    pub fn from_nested(inner: UPoly<Poly1>) -> Self {
        Poly2 { inner }
    }

    pub fn nested(&self) -> &UPoly<Poly1> {
        &self.inner
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_nested(UPoly::constant(Poly1::constant(c)))
    }

    pub fn x() -> Self {
        Self::from_nested(UPoly::constant(Poly1::var()))
    }

    pub fn y() -> Self {
        Self::from_nested(UPoly::var())
    }

    /// Univariate polynomial in `x` lifted to two variables.
    pub fn from_x_poly(p: &Poly1) -> Self {
        Self::from_nested(UPoly::constant(p.clone()))
    }

    /// Univariate polynomial in `y` lifted to two variables.
    pub fn from_y_poly(p: &Poly1) -> Self {
        Self::from_nested(p.map(|c| Poly1::constant(c.clone())))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (dx, dy, c) in terms {
            if rows.len() <= dy {
                rows.resize(dy + 1, Vec::new());
            }
            let row = &mut rows[dy];
            if row.len() <= dx {
                row.resize(dx + 1, <Rational as Ring>::zero());
            }
            row[dx] += c;
        }
        Self::from_nested(UPoly::new(rows.into_iter().map(UPoly::new).collect()))
    }

    pub fn from_int_terms(terms: &[(usize, usize, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(dx, dy, c)| (dx, dy, super::rational_int(c))))
    }

    pub fn coeff(&self, dx: usize, dy: usize) -> Rational {
        self.inner.coeff(dy).coeff(dx)
    }

    /// Nonzero terms `(dx, dy, coefficient)` in graded-lex order with `x > y`,
    /// leading term first.
    pub fn terms(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (dy, row) in self.inner.coeffs().iter().enumerate() {
            for (dx, c) in row.coeffs().iter().enumerate() {
                if !Ring::is_zero(c) {
                    out.push((dx, dy, c.clone()));
                }
            }
        }
        out.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        out
    }

    pub fn is_zero(&self) -> bool {
        Ring::is_zero(&self.inner)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().first().map(|(dx, dy, _)| dx + dy)
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.inner.coeffs().iter().filter_map(UPoly::degree).max()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.inner.degree()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.inner.coeffs().iter().rev().fold(<Rational as Ring>::zero(), |acc, row| {
            acc * y + row.eval(x)
        })
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.inner
            .coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, row| acc * y + row.eval_f64(x))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms()
            .iter()
            .map(|(_, _, c)| rational_to_f64(c).abs())
            .fold(0.0, f64::max)
    }

    /// `G(x, y)` divided by the largest absolute coefficient of `G`.
    pub fn scaled_residual(&self, x: f64, y: f64) -> f64 {
        let m = self.max_abs_coeff();
        if m == 0.0 {
            return 0.0;
        }
        self.eval_f64(x, y) / m
    }

    /// `G(x0, y)` as a polynomial in `y`.
    pub fn at_x(&self, x0: &Rational) -> Poly1 {
        UPoly::new(self.inner.coeffs().iter().map(|row| row.eval(x0)).collect())
    }

    /// `G(x, y0)` as a polynomial in `x`.
    pub fn at_y(&self, y0: &Rational) -> Poly1 {
        self.inner.eval(&Poly1::constant(y0.clone()))
    }

    pub fn partial_x(&self) -> Self {
        Self::from_nested(self.inner.map(UPoly::derivative))
    }

    pub fn partial_y(&self) -> Self {
        Self::from_nested(self.inner.derivative())
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swapped(&self) -> Self {
        Self::from_terms(self.terms().into_iter().map(|(dx, dy, c)| (dy, dx, c)))
    }

    /// Substitutes `x := u`, `y := v`.
    pub fn substitute(&self, u: &Poly2, v: &Poly2) -> Poly2 {
        let mut acc = Poly2::zero();
        let deg_x = self.degree_x().unwrap_or(0);
        let deg_y = self.degree_y().unwrap_or(0);
        let upow: Vec<Poly2> = powers(u, deg_x);
        let vpow: Vec<Poly2> = powers(v, deg_y);
        for (dx, dy, c) in self.terms() {
            let term = upow[dx].mul(&vpow[dy]).scale(&c);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_nested(self.inner.map(|row| row.scale(c)))
    }

    /// Gcd of the coefficients seen as polynomials in `x` (the factor of `G`
    /// that does not involve `y`), made monic.
    pub fn content_in_x(&self) -> Poly1 {
        self.inner.content()
    }

    /// Factor of `G` that does not involve `x`, as a monic polynomial in `y`.
    pub fn content_in_y(&self) -> Poly1 {
        self.swapped().inner.content()
    }

    /// Canonical scaling: integer coefficients with gcd 1, leading coefficient
    /// (graded-lex, `x > y`) positive.
    pub fn normalize(&self) -> Self {
        let terms = self.terms();
        let Some((_, _, lead)) = terms.first() else {
            return self.clone();
        };
        let lcm_den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, _, c)| acc.lcm(c.denom()));
        let gcd_num = terms
            .iter()
            .fold(BigInt::zero(), |acc, (_, _, c)| acc.gcd(c.numer()));
        let mut factor = Rational::new(lcm_den, gcd_num);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Exact quotient, `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly2) -> Option<Poly2> {
        self.inner.exact_div(&divisor.inner).map(Self::from_nested)
    }

    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        Self::from_nested(self.inner.gcd(&other.inner))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = Poly2Json {
            terms: self
                .terms()
                .into_iter()
                .map(|(dx, dy, c)| TermJson {
                    dx: dx as u32,
                    dy: dy as u32,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, Poly2Error> {
        let doc: Poly2Json =
            serde_json::from_str(text).map_err(|e| Poly2Error::Json(e.to_string()))?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            let bad = || Poly2Error::Coefficient {
                dx: t.dx,
                dy: t.dy,
                num: t.num.clone(),
                den: t.den.clone(),
            };
            let num: BigInt = t.num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = t.den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            terms.push((t.dx as usize, t.dy as usize, Rational::new(num, den)));
        }
        Ok(Self::from_terms(terms))
    }
}

fn powers(p: &Poly2, n: usize) -> Vec<Poly2> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly2::one());
    for i in 0..n {
        let next = out[i].mul(p);
        out.push(next);
    }
    out
}

impl Ring for Poly2 {
    fn zero() -> Self {
        Self::from_nested(UPoly::zero())
    }
    fn one() -> Self {
        Self::from_nested(UPoly::one())
    }
    fn from_int(n: i64) -> Self {
        Self::from_nested(UPoly::from_int(n))
    }
    fn is_zero(&self) -> bool {
        Ring::is_zero(&self.inner)
    }
    fn add(&self, other: &Self) -> Self {
        Self::from_nested(self.inner.add(&other.inner))
    }
    fn sub(&self, other: &Self) -> Self {
        Self::from_nested(self.inner.sub(&other.inner))
    }
    fn mul(&self, other: &Self) -> Self {
        Self::from_nested(self.inner.mul(&other.inner))
    }
    fn neg(&self) -> Self {
        Self::from_nested(self.inner.neg())
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        Poly2::exact_div(self, other)
    }
}

/// If `p` (a polynomial in one variable) equals `c * (v - r)^k` with `k >= 2`
/// and `r != 0`, returns `(c, r, k)`.
fn as_linear_power(p: &Poly1) -> Option<(Rational, Rational, usize)> {
    let k = p.degree()?;
    if k < 2 {
        return None;
    }
    let lc = p.lc();
    let r = -(p.coeff(k - 1) / (&lc * Rational::from_integer(BigInt::from(k))));
    if Ring::is_zero(&r) {
        return None;
    }
    let candidate = Poly1::new(vec![-r.clone(), <Rational as Ring>::one()]).pow(k as u32).scale(&lc);
    (candidate == *p).then_some((lc, r, k))
}

fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Joins `coefficient * var^pow * ...` terms into `a*x^2 - b*y + c`.
pub(crate) fn format_terms(terms: &[(Rational, Vec<(&str, usize)>)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let pieces: Vec<(bool, String)> = terms
        .iter()
        .map(|(c, vars)| {
            let factors: Vec<String> = vars
                .iter()
                .filter(|(_, p)| *p > 0)
                .map(|(v, p)| if *p == 1 { v.to_string() } else { format!("{v}^{p}") })
                .collect();
            (c.is_negative(), render_monomial(&c.abs(), &factors.join("*")))
        })
        .collect();
    join_signed(&pieces)
}

fn render_monomial(abs_coeff: &Rational, body: &str) -> String {
    if body.is_empty() {
        format_rational(abs_coeff)
    } else if abs_coeff.is_one() {
        body.to_string()
    } else {
        format!("{}*{}", format_rational(abs_coeff), body)
    }
}

fn join_signed(pieces: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in pieces.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

impl fmt::Display for Poly2 {
    /// Expanded form in graded-lex order, except that a part depending on a
    /// single variable of the form `c*(v - r)^k` is printed collapsed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let x_only = Poly1::new(
            (0..=self.degree_x().unwrap_or(0))
                .map(|dx| self.coeff(dx, 0))
                .collect(),
        );
        let y_only = self.at_x(&<Rational as Ring>::zero());
        let collapsed = as_linear_power(&x_only)
            .map(|g| (g, "x", true))
            .or_else(|| as_linear_power(&y_only).map(|g| (g, "y", false)));

        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut group_done = false;
        for (dx, dy, c) in &terms {
            if let Some(((lc, r, k), var, is_x)) = &collapsed {
                let in_group = if *is_x { *dy == 0 } else { *dx == 0 };
                if in_group {
                    if !group_done {
                        group_done = true;
                        let shift = if r.is_negative() {
                            format!("{var}+{}", format_rational(&r.abs()))
                        } else {
                            format!("{var}-{}", format_rational(r))
                        };
                        let body = format!("({shift})^{k}");
                        pieces.push((lc.is_negative(), render_monomial(&lc.abs(), &body)));
                    }
                    continue;
                }
            }
            let mut factors = Vec::new();
            for (v, p) in [("x", *dx), ("y", *dy)] {
                match p {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{p}")),
                }
            }
            pieces.push((c.is_negative(), render_monomial(&c.abs(), &factors.join("*"))));
        }
        f.write_str(&join_signed(&pieces))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rational_frac, rational_int};

    fn hyperbola() -> Poly2 {
        // x^2 + 4xy - 2x + 1
        Poly2::from_int_terms(&[(2, 0, 1), (1, 1, 4), (1, 0, -2), (0, 0, 1)])
    }

    #[test]
    fn display_collapses_linear_powers() {
        assert_eq!(hyperbola().to_string(), "(x-1)^2 + 4*x*y");
        let circle = Poly2::from_int_terms(&[(2, 0, 1), (0, 2, 1), (1, 0, -1)]);
        assert_eq!(circle.to_string(), "x^2 + y^2 - x");
        let parabola = Poly2::from_int_terms(&[(0, 2, 1), (1, 0, -4)]);
        assert_eq!(parabola.to_string(), "y^2 - 4*x");
    }

    #[test]
    fn normalize_clears_denominators_and_sign() {
        let g = Poly2::from_terms([
            (2, 0, rational_frac(-1, 2)),
            (0, 2, rational_frac(-1, 2)),
            (1, 0, rational_frac(1, 2)),
        ]);
        let n = g.normalize();
        assert_eq!(n.coeff(2, 0), rational_int(1));
        assert_eq!(n.coeff(1, 0), rational_int(-1));
        let scaled = hyperbola().scale(&rational_int(-6));
        assert_eq!(scaled.normalize(), hyperbola());
    }

    #[test]
    fn json_round_trip() {
        let g = hyperbola().scale(&rational_frac(3, 7));
        let back = Poly2::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(Poly2::from_json(r#"{"terms":[{"dx":1,"dy":0,"num":"1","den":"0"}]}"#).is_err());
        assert!(Poly2::from_json("[]").is_err());
    }

    #[test]
    fn substitution_and_contents() {
        // G(x, y - 2x) for G = y gives y - 2x
        let g = Poly2::y();
        let shifted = g.substitute(&Poly2::x(), &Poly2::y().sub(&Poly2::x().scale(&rational_int(2))));
        assert_eq!(shifted, Poly2::from_int_terms(&[(0, 1, 1), (1, 0, -2)]));
        // (x - 1)(y^2 + x)
        let p = Poly2::from_int_terms(&[(1, 0, 1), (0, 0, -1)])
            .mul(&Poly2::from_int_terms(&[(0, 2, 1), (1, 0, 1)]));
        assert_eq!(p.content_in_x(), Poly1::from_ints(&[-1, 1]));
        assert!(p.content_in_y().is_constant());
    }

    #[test]
    fn evaluation_agrees() {
        let g = hyperbola();
        let (x, y) = (rational_frac(1, 3), rational_frac(-1, 3));
        assert!(Ring::is_zero(&g.eval(&x, &y)));
        assert!(g.eval_f64(1.0 / 3.0, -1.0 / 3.0).abs() < 1e-15);
        assert_eq!(g.total_degree(), Some(2));
    }
}

use std::fmt;

use super::{GcdRing, Rational, Ring};

/// Dense univariate polynomial; `coeffs[i]` multiplies `t^i`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and `degree()` is `None` for it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> UPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^n`.
    pub fn monomial(c: R, n: usize) -> Self {
        let mut coeffs = vec![R::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(at).add(c))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_int(i as i64)))
                .collect(),
        )
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    /// Pseudo-remainder: `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo-remainder by zero polynomial");
        let Some(mut rd) = self.degree() else {
            return self.clone();
        };
        if rd < dd {
            return self.clone();
        }
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut steps = rd - dd + 1;
        while rem.len() > dd && !rem.is_empty() {
            let top = rem[rd].clone();
            for c in rem.iter_mut() {
                *c = c.mul(&lc);
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let k = rd - dd + j;
                rem[k] = rem[k].sub(&top.mul(dc));
            }
            steps -= 1;
            while rem.last().is_some_and(Ring::is_zero) {
                rem.pop();
            }
            match rem.len().checked_sub(1) {
                Some(d) if d >= dd => rd = d,
                _ => break,
            }
        }
        let r = Self::new(rem);
        if steps > 0 {
            r.scale(&lc.pow(steps as u32))
        } else {
            r
        }
    }

    /// Exact quotient and remainder when the leading coefficient of `divisor`
    /// divides every intermediate leading term; `None` otherwise.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![R::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let rd = rem.len() - 1;
            let q = rem[rd].exact_div(&lc)?;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let k = rd - dd + j;
                rem[k] = rem[k].sub(&q.mul(dc));
            }
            quot[rd - dd] = q;
            while rem.last().is_some_and(Ring::is_zero) {
                rem.pop();
            }
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Resultant with respect to the polynomial variable, by the
    /// subresultant remainder sequence. Every division performed is exact.
    pub fn resultant(&self, other: &Self) -> R {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return R::zero();
        };
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut sign_neg = false;
        if da < db {
            std::mem::swap(&mut a, &mut b);
            sign_neg = da % 2 == 1 && db % 2 == 1;
        }
        if b.deg0() == 0 {
            let r = b.lc().pow(a.deg0() as u32);
            return if sign_neg { r.neg() } else { r };
        }
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let (deg_a, deg_b) = (a.deg0(), b.deg0());
            let delta = (deg_a - deg_b) as u32;
            if deg_a % 2 == 1 && deg_b % 2 == 1 {
                sign_neg = !sign_neg;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            let divisor = g.mul(&h.pow(delta));
            b = r.map(|c| c.exact_div(&divisor).expect("subresultant division is exact"));
            g = a.lc();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta)
                    .exact_div(&h.pow(delta - 1))
                    .expect("subresultant division is exact")
            };
            match b.degree() {
                None => return R::zero(),
                Some(0) => break,
                Some(_) => {}
            }
        }
        let deg_a = a.deg0() as u32;
        let r = b
            .lc()
            .pow(deg_a)
            .exact_div(&h.pow(deg_a - 1))
            .expect("subresultant division is exact");
        if sign_neg {
            r.neg()
        } else {
            r
        }
    }
}

impl<R: GcdRing> UPoly<R> {
    /// Gcd of the coefficients.
    pub fn content(&self) -> R {
        self.coeffs
            .iter()
            .fold(R::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let c = self.content();
        self.map(|a| a.exact_div(&c).expect("content divides"))
    }

    /// Yun's square-free decomposition of a primitive polynomial: returns
    /// `(factor, multiplicity)` pairs with non-constant, pairwise coprime factors.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let a = self.primitive_part();
        let da = a.derivative();
        let c = a.gcd(&da);
        let mut w = a.exact_div(&c).expect("gcd divides");
        let mut y = da.exact_div(&c).expect("gcd divides");
        let mut z = y.sub(&w.derivative());
        let mut i = 1;
        while !w.is_constant() {
            let g = w.gcd(&z);
            if !g.is_constant() {
                out.push((g.clone(), i));
            }
            w = w.exact_div(&g).expect("gcd divides");
            y = z.exact_div(&g).expect("gcd divides");
            z = y.sub(&w.derivative());
            i += 1;
        }
        out
    }

    /// Product of the distinct non-constant square-free factors.
    pub fn square_free_part(&self) -> Self {
        self.square_free_decomposition()
            .into_iter()
            .fold(Self::one(), |acc, (f, _)| acc.mul(&f))
    }
}

impl<R: Ring> Ring for UPoly<R> {
    fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        Self::constant(R::one())
    }

    fn from_int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    fn exact_div(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other)?;
        r.is_zero().then_some(q)
    }
}

impl<R: GcdRing> GcdRing for UPoly<R> {
    fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg0() < b.deg0() {
            std::mem::swap(&mut a, &mut b);
        }
        // Subresultant remainder sequence; only the last term is made primitive.
        let (mut g, mut h) = (R::one(), R::one());
        loop {
            let delta = (a.deg0() - b.deg0()) as u32;
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.deg0() == 0 {
                return Self::constant(content).normalized();
            }
            a = b;
            let divisor = g.mul(&h.pow(delta));
            b = r.map(|c| c.exact_div(&divisor).expect("subresultant division is exact"));
            g = a.lc();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta)
                    .exact_div(&h.pow(delta - 1))
                    .expect("subresultant division is exact")
            };
        }
        b.primitive_part().scale(&content).normalized()
    }

    fn unit_part(&self) -> Self {
        Self::constant(self.lc().unit_part())
    }
}

impl<R: Ring> Default for UPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> fmt::Debug for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl UPoly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rational_int(c)).collect())
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + super::rational_to_f64(c))
    }

    /// Real roots in increasing order, found by bisection between the real
    /// roots of the derivative. Repeated roots are reported once.
    pub fn real_roots(&self) -> Vec<f64> {
        let sf = self.square_free_part();
        let Some(deg) = sf.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        if deg == 1 {
            let r = -(sf.coeff(0) / sf.coeff(1));
            return vec![super::rational_to_f64(&r)];
        }
        // Cauchy bound on the root magnitude.
        let lc = super::rational_to_f64(&sf.lc()).abs();
        let bound = 1.0
            + sf.coeffs[..deg]
                .iter()
                .map(|c| super::rational_to_f64(c).abs() / lc)
                .fold(0.0, f64::max);
        let mut cuts = vec![-bound];
        cuts.extend(sf.derivative().real_roots().into_iter().filter(|r| r.abs() < bound));
        cuts.push(bound);
        let mut roots: Vec<f64> = Vec::new();
        for w in cuts.windows(2) {
            let (mut lo, mut hi) = (w[0], w[1]);
            let (flo, fhi) = (sf.eval_f64(lo), sf.eval_f64(hi));
            if flo == 0.0 {
                push_root(&mut roots, lo);
                continue;
            }
            if fhi == 0.0 {
                push_root(&mut roots, hi);
                continue;
            }
            if flo.signum() == fhi.signum() {
                continue;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = sf.eval_f64(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            push_root(&mut roots, 0.5 * (lo + hi));
        }
        roots
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        let terms: Vec<(Rational, Vec<(&str, usize)>)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !Ring::is_zero(*c))
            .map(|(i, c)| (c.clone(), vec![(var, i)]))
            .collect();
        super::poly2::format_terms(&terms)
    }
}

fn push_root(roots: &mut Vec<f64>, r: f64) {
    if roots.last().is_none_or(|&last| (r - last).abs() > 1e-12 * (1.0 + r.abs())) {
        roots.push(r);
    }
}

impl fmt::Display for UPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rational_int, Poly1};

    fn p(c: &[i64]) -> Poly1 {
        Poly1::from_ints(c)
    }

    /// Sylvester determinant by cofactor-free Gaussian elimination over Q.
    fn sylvester_resultant(a: &Poly1, b: &Poly1) -> Rational {
        let (m, n) = (a.deg0(), b.deg0());
        let size = m + n;
        let mut rows = Vec::new();
        for i in 0..n {
            let mut row = vec![rational_int(0); size];
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![rational_int(0); size];
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        let mut det = rational_int(1);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !Ring::is_zero(&rows[r][col])) else {
                return rational_int(0);
            };
            if piv != col {
                rows.swap(piv, col);
                det = -det;
            }
            let pv = rows[col][col].clone();
            det *= &pv;
            for r in col + 1..size {
                let factor = &rows[r][col] / &pv;
                for c in col..size {
                    let v = &rows[col][c] * &factor;
                    rows[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let cases = [
            (p(&[1, 0, 1]), p(&[-1, 1])),
            (p(&[3, -2, 0, 5]), p(&[1, 4, -1])),
            (p(&[-1, 1]), p(&[2, 0, 0, 1])),
            (p(&[1, 2, 3, 4, 5]), p(&[5, 0, 1, 0, 0, 2])),
            (p(&[0, 1, 1]), p(&[0, 2, 1])),
            (p(&[7]), p(&[1, 1, 1])),
        ];
        for (a, b) in cases {
            assert_eq!(a.resultant(&b), sylvester_resultant(&a, &b), "{a:?} {b:?}");
        }
    }

    #[test]
    fn resultant_vanishes_on_common_root() {
        // (t - 2)(t + 1) and (t - 2)(t^2 + 3)
        let a = p(&[-2, -1, 1]);
        let b = p(&[-6, 3, -2, 1]);
        assert!(Ring::is_zero(&a.resultant(&b)));
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[-1, 0, 1]).mul(&p(&[2, 1])); // (t^2 - 1)(t + 2)
        let b = p(&[1, 1]).mul(&p(&[0, 3])); // (t + 1) 3t
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let sq = p(&[1, 1]).pow(3).mul(&p(&[0, 1]));
        let dec = sq.square_free_decomposition();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (p(&[1, 1]), 3)]);
    }

    #[test]
    fn real_roots_by_bisection() {
        // (t - 1)^2 (t + 2) (t^2 - 3)
        let f = p(&[-1, 1]).pow(2).mul(&p(&[2, 1])).mul(&p(&[-3, 0, 1]));
        let roots = f.real_roots();
        let expected = [-2.0, -(3f64.sqrt()), 1.0, 3f64.sqrt()];
        assert_eq!(roots.len(), 4);
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).abs() < 1e-12, "{r} vs {e}");
        }
        assert!(p(&[1, 0, 1]).real_roots().is_empty());
    }

    #[test]
    fn exact_division_detects_remainders() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.exact_div(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.exact_div(&p(&[2, 1])), None);
    }

    #[test]
    fn nested_resultant_eliminates() {
        // Res_t(t - x, t^2 - y) = x^2 - y over Q[x][y]... built as polynomials in t
        // with coefficients in Q[y][x]-free form: use UPoly<UPoly<Q>> with inner variable s.
        type P2 = UPoly<Poly1>;
        let s = Poly1::var();
        let f = P2::new(vec![s.neg(), Poly1::one()]); // t - s
        let g = P2::new(vec![Poly1::from_ints(&[-3]), Poly1::zero(), Poly1::one()]); // t^2 - 3
        assert_eq!(f.resultant(&g), p(&[-3, 0, 1]));
    }
}

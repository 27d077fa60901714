use std::fmt;

use num_traits::Zero;

use crate::exactalg::{poly_gcd, rat, Field, Rational, UniPoly};

/// Element of Q(T) in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    numer: UniPoly,
    denom: UniPoly,
}

impl RatFunc {
    /// `numer / denom`; panics on a zero denominator.
    pub fn new(numer: UniPoly, denom: UniPoly) -> Self {
        assert!(!denom.is_zero(), "zero denominator in Q(T)");
        if numer.is_zero() {
            return Self::from_poly(UniPoly::zero());
        }
        let g = poly_gcd(&numer, &denom).expect("denominator is nonzero");
        let (mut n, mut d) = if g.deg() > 0 {
            (numer.exact_div(&g).unwrap(), denom.exact_div(&g).unwrap())
        } else {
            (numer, denom)
        };
        let lc = d.leading().unwrap().clone();
        if lc != rat(1) {
            let inv = rat(1) / lc;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { numer: n, denom: d }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { numer: p, denom: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The variable T.
    pub fn t() -> Self {
        Self::from_poly(UniPoly::x())
    }

    pub fn numer(&self) -> &UniPoly {
        &self.numer
    }

    pub fn denom(&self) -> &UniPoly {
        &self.denom
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.deg() == 0
    }

    /// Value at `t`, or `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.denom.eval(t);
        if Zero::is_zero(&d) {
            return None;
        }
        Some(self.numer.eval(t) / d)
    }

    pub fn to_expr(&self, var: &str) -> String {
        if self.is_polynomial() {
            return self.numer.to_expr(var);
        }
        format!("({})/({})", self.numer.to_expr(var), self.denom.to_expr(var))
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
    fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }
    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        if self.denom == rhs.denom {
            return RatFunc::new(&self.numer + &rhs.numer, self.denom.clone());
        }
        RatFunc::new(
            &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom),
            &self.denom * &rhs.denom,
        )
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_polynomial() && rhs.is_polynomial() {
            return Self::from_poly(&self.numer * &rhs.numer);
        }
        RatFunc::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
    }
    fn negated(&self) -> Self {
        RatFunc { numer: -&self.numer, denom: self.denom.clone() }
    }
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(T)");
        RatFunc::new(self.denom.clone(), self.numer.clone())
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr("T"))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr("T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let p = |c: &[i64]| UniPoly::from_ints(c);
        // (2T^2 - 2) / (4T + 4) = (T - 1)/2
        let r = RatFunc::new(p(&[-2, 0, 2]), p(&[4, 4]));
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &UniPoly::new(vec![crate::exactalg::ratio(-1, 2), crate::exactalg::ratio(1, 2)]));
        let s = RatFunc::new(p(&[1]), p(&[0, 3]));
        assert_eq!(s.denom(), &p(&[0, 1]));
        assert_eq!(s.times(&s.inverse()), RatFunc::one());
        assert_eq!(s.minus(&s), RatFunc::zero());
        assert_eq!(s.eval(&rat(0)), None);
    }
}

//! Exact rational arithmetic and dense univariate polynomials over Q.
//!
//! gcd and resultant run on primitive integer images (primitive PRS and
//! the subresultant algorithm) so intermediate coefficients stay small;
//! results are returned over Q with the usual monic conventions.

mod poly;
mod rational;

pub use poly::{Field, Poly};
pub use rational::*;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense polynomial over Q.
pub type UniPoly = Poly<Rational>;

impl Poly<Rational> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Poly::new(coeffs.to_vec())
    }

    /// Write `self = c * f` with `f` a primitive integer polynomial of
    /// positive leading coefficient. Panics on zero.
    pub fn to_primitive_int(&self) -> (Rational, Vec<BigInt>) {
        assert!(!self.is_zero(), "primitive part of zero");
        let den = lcm_of_denominators(self.coeffs());
        let ints: Vec<BigInt> = self
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = int_content(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    pub fn from_int_coeffs(coeffs: &[BigInt]) -> Self {
        Poly::new(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    /// Monic gcd via primitive polynomial remainder sequences.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        poly_gcd(self, other)
    }

    /// Render in the parser's syntax, e.g. `X^2+3/4*X-2`.
    pub fn to_expr(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mag = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&rational_to_string(&mag));
            } else if One::is_one(&mag) {
                out.push_str(&mono);
            } else {
                out.push_str(&rational_to_string(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// `c * f(X / c)` scaled so that a polynomial `f` of degree `n` becomes
    /// `c^n f(X/c)`; used by model changes.
    pub fn scale_variable(&self, s: &Rational) -> Self {
        // coefficient i gets multiplied by s^i
        let mut pow = rat(1);
        let mut out = Vec::with_capacity(self.coeffs().len());
        for c in self.coeffs() {
            out.push(c * &pow);
            pow *= s;
        }
        Poly::new(out)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_integer())
    }
}

impl std::fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_expr("X"))
    }
}

pub(crate) fn int_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn int_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn int_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = int_content(v);
    if g.is_zero() {
        return Vec::new();
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a = q b + r`.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut e = (a.len() - 1) as i64 - db as i64 + 1;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        r = int_trim(r);
        e -= 1;
    }
    if e > 0 {
        let f = num_traits::pow(lb, e as usize);
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Monic gcd of two polynomials over Q (not both zero).
pub fn poly_gcd(p: &UniPoly, q: &UniPoly) -> Result<UniPoly> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Err(Error::DegenerateInput("gcd of two zero polynomials".into())),
        (true, false) => Ok(q.monic()),
        (false, true) => Ok(p.monic()),
        (false, false) => {
            let (_, mut a) = p.to_primitive_int();
            let (_, mut b) = q.to_primitive_int();
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            while !b.is_empty() {
                if b.len() == 1 {
                    return Ok(UniPoly::one());
                }
                let r = int_primitive(&int_prem(&a, &b));
                a = b;
                b = r;
            }
            Ok(UniPoly::from_int_coeffs(&a).monic())
        }
    }
}

/// Subresultant resultant of two nonzero integer polynomials.
fn int_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    let mut sign = BigInt::one();
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if db == 0 {
        return sign * num_traits::pow(b[0].clone(), da);
    }
    let ca = int_content(&a);
    let cb = int_content(&b);
    a = a.iter().map(|c| c / &ca).collect();
    b = b.iter().map(|c| c / &cb).collect();
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = int_prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        // h <- h^(1-delta) g^delta
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.len() == 1 {
            let da = a.len() - 1;
            let lb = b[0].clone();
            let hh = if da == 0 {
                h.clone()
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h.clone(), da - 1)
            };
            return sign * t * hh;
        }
    }
}

/// Resultant of two polynomials over Q, including constant arguments
/// (`Res(c, q) = c^deg q`). Zero arguments give zero.
pub(crate) fn resultant_any(p: &UniPoly, q: &UniPoly) -> Rational {
    if p.is_zero() || q.is_zero() {
        return rat(0);
    }
    let (dp, dq) = (p.deg(), q.deg());
    if dp == 0 && dq == 0 {
        return rat(1);
    }
    let (cp, ip) = p.to_primitive_int();
    let (cq, iq) = q.to_primitive_int();
    let r = Rational::from_integer(int_resultant(&ip, &iq));
    r * pow_rational(&cp, dq as u32) * pow_rational(&cq, dp as u32)
}

/// Resultant of two nonzero polynomials.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::DegenerateInput("resultant with the zero polynomial".into()));
    }
    Ok(resultant_any(p, q))
}

/// `(-1)^(d(d-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &UniPoly) -> Result<Rational> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegenerateInput("discriminant of a constant".into())),
    };
    if d == 1 {
        return Ok(rat(1));
    }
    let r = resultant_any(p, &p.derivative());
    let sign = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(r * rat(sign) / p.leading().unwrap())
}

/// Monic product of the distinct irreducible factors (`P*`).
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("squarefree part of zero".into()));
    }
    if p.deg() == 0 {
        return Ok(UniPoly::one());
    }
    let g = poly_gcd(p, &p.derivative())?;
    Ok(p.exact_div(&g).expect("gcd divides").monic())
}

/// Yun's squarefree decomposition: monic, pairwise coprime `(a_i, i)` with
/// `p = lc(p) * prod a_i^i`. Constant input yields an empty list.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("squarefree decomposition of zero".into()));
    }
    let mut out = Vec::new();
    if p.deg() == 0 {
        return Ok(out);
    }
    let f = p.monic();
    let fp = f.derivative();
    let a0 = poly_gcd(&f, &fp)?;
    let mut b = f.exact_div(&a0).unwrap();
    let mut c = fp.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    loop {
        let a = poly_gcd(&b, &d)?;
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).unwrap();
        if b.deg() == 0 {
            break;
        }
        c = d.exact_div(&a).unwrap();
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// Lagrange interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate(points: &[(Rational, Rational)]) -> UniPoly {
    // Newton divided differences
    let n = points.len();
    let mut coef: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&points[i].0 - &points[i - j].0);
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &UniPoly::linear_root(points[i].0.clone())) + &UniPoly::constant(coef[i].clone());
    }
    acc
}

/// Largest absolute value among the integer images of numerators, used in
/// bounds. Returns the primitive integer image's max-norm.
pub fn int_max_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    /// Sylvester determinant oracle, Gaussian elimination over Q.
    fn sylvester(a: &UniPoly, b: &UniPoly) -> Rational {
        let (m, n) = (a.deg(), b.deg());
        let size = m + n;
        let mut mat = vec![vec![rat(0); size]; size];
        for i in 0..n {
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        let mut det = rat(1);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !Zero::is_zero(&mat[r][col])) else {
                return rat(0);
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            let pv = mat[col][col].clone();
            det *= &pv;
            for r in col + 1..size {
                let f = &mat[r][col] / &pv;
                if Zero::is_zero(&f) {
                    continue;
                }
                for c in col..size {
                    let v = &mat[col][c] * &f;
                    mat[r][c] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[1, 1, 1]), &p(&[-4, 0, 0, 1])).unwrap(), p(&[1]));
        let q = p(&[6, 0, 3]);
        assert_eq!(poly_gcd(&q, &UniPoly::zero()).unwrap(), p(&[2, 0, 1]));
        assert!(matches!(
            poly_gcd(&UniPoly::zero(), &UniPoly::zero()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn resultant_examples() {
        // Res(X - a, Q) = Q(a)
        let q = p(&[3, -2, 0, 5]);
        assert_eq!(resultant(&p(&[-2, 1]), &q).unwrap(), q.eval(&rat(2)));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[-1, 0, 1])).unwrap(), rat(4));
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[1, 1])).unwrap(), rat(0));
        assert!(resultant(&p(&[1, 1]), &UniPoly::zero()).is_err());
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (p(&[1, -3, 0, 2]), p(&[5, 7, -1])),
            (p(&[-4, 0, 0, 1]), p(&[1, 1, 1])),
            (p(&[3, 1, 4, 1, 5]), p(&[9, 2, 6])),
            (p(&[2, 0, 0, 0, 0, 7]), p(&[1, 1, 0, 3])),
        ];
        for (a, b) in cases {
            assert_eq!(resultant(&a, &b).unwrap(), sylvester(&a, &b), "{a} {b}");
        }
        let a = UniPoly::new(vec![ratio(1, 2), ratio(-3, 4), rat(2)]);
        let b = UniPoly::new(vec![ratio(5, 3), rat(0), ratio(1, 7), rat(1)]);
        assert_eq!(resultant(&a, &b).unwrap(), sylvester(&a, &b));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), rat(-4));
        assert_eq!(discriminant(&p(&[1, 1, 1])).unwrap(), rat(-3));
        assert_eq!(discriminant(&p(&[1, -2, 1])).unwrap(), rat(0));
        // x^3 + a x + b: -4a^3 - 27b^2
        assert_eq!(discriminant(&p(&[-2, 1, 0, 1])).unwrap(), rat(-4 - 27 * 4));
        assert!(discriminant(&p(&[5])).is_err());
    }

    #[test]
    fn squarefree_examples() {
        // (X-1)^2 (X+2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(squarefree_part(&f).unwrap(), &p(&[-1, 1]) * &p(&[2, 1]));
        let q = p(&[4, 44, 5, -22, 1]);
        assert_eq!(squarefree_part(&q).unwrap(), q);
        assert_eq!(squarefree_part(&p(&[7])).unwrap(), p(&[1]));
        let dec = squarefree_decomposition(&f.scale(&rat(3))).unwrap();
        assert_eq!(dec, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn expr_rendering() {
        assert_eq!(p(&[-2, 3, 1]).to_expr("X"), "X^2+3*X-2");
        let q = UniPoly::new(vec![rat(9), ratio(3, 4), rat(-1)]);
        assert_eq!(q.to_expr("T"), "-T^2+3/4*T+9");
        assert_eq!(UniPoly::zero().to_expr("X"), "0");
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, -1, 0, 2, 5]);
        let pts: Vec<_> = (0..5).map(|i| (rat(i), f.eval(&rat(i)))).collect();
        assert_eq!(interpolate(&pts), f);
    }
}

//! Factorization over F_p and over Q, and the counting invariants built on it.

pub mod fp;
mod zassenhaus;

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{
    inv_mod, is_nonzero_square, rat, rational_sqrt, squarefree_decomposition, Rational, UniPoly,
};

/// `content * prod factor^mult` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    /// Number of irreducible factors counted with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Number of distinct irreducible factors.
    pub fn small_omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn is_square(&self) -> bool {
        is_nonzero_square(&self.content) && self.factors.iter().all(|(_, m)| m % 2 == 0)
    }

    pub fn expand(&self) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(self.content.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn distinct(&self) -> impl Iterator<Item = &UniPoly> {
        self.factors.iter().map(|(f, _)| f)
    }

    /// Human-readable form, e.g. `-4*(X-4)*(X^2-52*X+284)`.
    pub fn to_expr(&self, var: &str) -> String {
        let mut parts = vec![crate::exactalg::rational_to_string(&self.content)];
        for (f, m) in &self.factors {
            let base = format!("({})", f.to_expr(var));
            parts.push(if *m == 1 { base } else { format!("{base}^{m}") });
        }
        parts.join("*")
    }
}

/// JSON view of a factorization.
#[derive(Serialize)]
pub struct FactorizationView {
    pub content: String,
    pub factors: Vec<(String, u32)>,
}

impl From<&Factorization> for FactorizationView {
    fn from(f: &Factorization) -> Self {
        FactorizationView {
            content: crate::exactalg::rational_to_string(&f.content),
            factors: f.factors.iter().map(|(g, m)| (g.to_expr("X"), *m)).collect(),
        }
    }
}

/// Factorization over F_p: leading coefficient and monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFactorization {
    pub prime: u64,
    pub leading: u64,
    pub factors: Vec<(fp::FpPoly, u32)>,
}

impl FpFactorization {
    /// Number of distinct irreducible factors of degree `k`.
    pub fn count_of_degree(&self, k: usize) -> usize {
        self.factors.iter().filter(|(g, _)| g.len() == k + 1).count()
    }
}

pub fn factor_over_fp(p: &UniPoly, prime: u64) -> Result<FpFactorization> {
    if prime < 2 || !crate::exactalg::is_probable_prime_small(prime) {
        return Err(Error::BadPrime { prime, reason: "not a prime".into() });
    }
    let f = fp::reduce(p, prime)?;
    if f.is_empty() {
        return Err(Error::BadPrime { prime, reason: "polynomial vanishes mod p".into() });
    }
    let (leading, factors) = fp::factor(&f, prime);
    debug_assert!(inv_mod(leading, prime).is_some());
    Ok(FpFactorization { prime, leading, factors })
}

pub(crate) fn cmp_poly(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Factor a nonzero polynomial over Q. Factors are monic and sorted by
/// degree, then by coefficients from the top down.
pub fn factor_over_q(p: &UniPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("factorization of zero".into()));
    }
    let content = p.leading().unwrap().clone();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(p)? {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { content, factors })
}

/// Monic irreducible factors of a monic squarefree polynomial.
fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    match f.deg() {
        0 => Vec::new(),
        1 => vec![f.clone()],
        2 => {
            let (b, c) = (f.coeff(1), f.coeff(0));
            let disc = &b * &b - rat(4) * &c;
            match rational_sqrt(&disc) {
                Some(s) => {
                    let half = Rational::new(1.into(), 2.into());
                    let r1 = (-&b + &s) * &half;
                    let r2 = (-&b - &s) * &half;
                    vec![UniPoly::linear_root(r1), UniPoly::linear_root(r2)]
                }
                None => vec![f.clone()],
            }
        }
        _ => zassenhaus::factor_squarefree_int(f),
    }
}

pub fn big_omega(p: &UniPoly) -> Result<u32> {
    Ok(factor_over_q(p)?.big_omega())
}

pub fn small_omega(p: &UniPoly) -> Result<u32> {
    Ok(factor_over_q(p)?.small_omega())
}

/// `□(P)`: 1 when `P` is a nonzero square in Q[X].
pub fn is_square_poly(p: &UniPoly) -> u32 {
    if p.is_zero() {
        return 0;
    }
    factor_over_q(p).map(|f| f.is_square() as u32).unwrap_or(0)
}

/// Test whether a monic polynomial is irreducible over Q.
pub fn is_irreducible(p: &UniPoly) -> bool {
    !p.is_constant()
        && factor_over_q(p).is_ok_and(|f| f.factors.len() == 1 && f.factors[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn example_three_discriminant() {
        let f = p(&[40896, -14304, 5084, -1836, 221, -4]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.content, rat(-4));
        let quad = UniPoly::new(vec![rat(9), ratio(3, 4), rat(1)]);
        assert_eq!(
            fac.factors,
            vec![(p(&[-4, 1]), 1), (p(&[284, -52, 1]), 1), (quad, 1)]
        );
        assert_eq!(fac.expand(), f);
        assert_eq!(fac.small_omega(), 3);
    }

    #[test]
    fn irreducible_quartic() {
        let f = p(&[4, 44, 5, -22, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.factors, vec![(f, 1)]);
    }

    #[test]
    fn small_cases() {
        let fac = factor_over_q(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(big_omega(&f).unwrap(), 3);
        assert_eq!(small_omega(&f).unwrap(), 2);
        assert_eq!(is_square_poly(&p(&[-1, 1]).pow(2).scale(&rat(4))), 1);
        assert_eq!(is_square_poly(&-p(&[-1, 1]).pow(2)), 0);
        assert_eq!(is_square_poly(&UniPoly::zero()), 0);
        assert!(big_omega(&UniPoly::zero()).is_err());
        assert_eq!(big_omega(&p(&[5])).unwrap(), 0);
    }

    #[test]
    fn hard_recombination() {
        // Swinnerton-Dyer style: X^4 - 10X^2 + 1 is irreducible but splits mod every prime
        let f = p(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&f));
        // X^8 - 40X^6 + 352X^4 - 960X^2 + 576 (sqrt2+sqrt3+sqrt5 minimal polynomial)
        let g = p(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert!(is_irreducible(&g));
        let prod = &f * &p(&[-3, 0, 0, 1]);
        let fac = factor_over_q(&prod).unwrap();
        assert_eq!(fac.factors, vec![(p(&[-3, 0, 0, 1]), 1), (f, 1)]);
    }

    #[test]
    fn fp_examples() {
        let f = factor_over_fp(&p(&[1, 0, 1]), 5).unwrap();
        assert_eq!(f.factors, vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        let f = factor_over_fp(&p(&[1, 0, 1]), 7).unwrap();
        assert_eq!(f.count_of_degree(2), 1);
        assert!(matches!(
            factor_over_fp(&UniPoly::new(vec![ratio(1, 7), rat(1)]), 7),
            Err(Error::BadPrime { .. })
        ));
        assert!(factor_over_fp(&p(&[7, 14]), 7).is_err());
    }
}

//! Arithmetic in K = Q[X]/F and exact square tests with certificates.
//!
//! A square root of `g` in K is found by factoring the norm of
//! `(x - sθ)^2 - g(θ)` over Q for a shift `s` making that norm squarefree;
//! a degree-`deg F` factor whose remainder modulo the quadratic is linear
//! gives the root. Negative answers come with a prime witness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{
    interpolate, is_probable_prime_small, legendre, rat, rational_mod_p, rational_sqrt,
    resultant_any, Rational, UniPoly,
};
use crate::factor::{factor_over_q, fp, is_irreducible};

/// Element of Q[X]/F in reduced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    modulus: UniPoly,
    repr: UniPoly,
}

impl FieldElem {
    /// Reduce `repr` modulo `modulus`. The modulus is made monic and must
    /// be irreducible.
    pub fn new(modulus: &UniPoly, repr: &UniPoly) -> Result<Self> {
        let modulus = checked_modulus(modulus)?;
        let repr = repr.rem(&modulus);
        Ok(FieldElem { modulus, repr })
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn repr(&self) -> &UniPoly {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        FieldElem {
            modulus: self.modulus.clone(),
            repr: (&self.repr * &other.repr).rem(&self.modulus),
        }
    }
}

fn checked_modulus(f: &UniPoly) -> Result<UniPoly> {
    if f.is_constant() {
        return Err(Error::InvalidModulus("constant modulus".into()));
    }
    let f = f.monic();
    if !is_irreducible(&f) {
        return Err(Error::InvalidModulus(format!("{f} is reducible")));
    }
    Ok(f)
}

/// Inverse in K; zero gives `DivisionByZero`.
pub fn field_inverse(e: &FieldElem) -> Result<FieldElem> {
    Ok(FieldElem {
        modulus: e.modulus.clone(),
        repr: inverse_mod(&e.repr, &e.modulus)?,
    })
}

/// Inverse of `a` modulo an irreducible `f`.
pub fn inverse_mod(a: &UniPoly, f: &UniPoly) -> Result<UniPoly> {
    let a = a.rem(f);
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (g, s, _) = UniPoly::ext_gcd(&a, f);
    if g.deg() != 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(s.rem(f))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum SquareOutcome {
    Zero,
    /// `c` with `c^2 = G mod F`.
    Square { certificate: UniPoly },
    /// A root `x0` of F mod `prime` at which G is a non-residue.
    NonSquare { prime: u64, residue: u64 },
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_expr("X"))
    }
}

impl SquareOutcome {
    pub fn is_square(&self) -> bool {
        matches!(self, SquareOutcome::Square { .. })
    }
}

const WITNESS_LIMIT: u64 = 1_000_000;

/// Decide whether `G` is a square in Q[X]/F, with a certificate either way.
pub fn square_in_field(f: &UniPoly, g: &UniPoly) -> Result<SquareOutcome> {
    let f = checked_modulus(f)?;
    let r = g.rem(&f);
    if r.is_zero() {
        return Ok(SquareOutcome::Zero);
    }
    if let Some(c) = sqrt_mod(&f, &r) {
        return Ok(SquareOutcome::Square { certificate: c });
    }
    let (prime, residue) = find_witness(&f, g)?;
    Ok(SquareOutcome::NonSquare { prime, residue })
}

/// Square root of a nonzero reduced `g` in Q[X]/F (F monic irreducible),
/// normalized to a positive leading coefficient and verified.
pub(crate) fn sqrt_mod(f: &UniPoly, g: &UniPoly) -> Option<UniPoly> {
    let c = sqrt_unnormalized(f, g)?;
    let c = if c.leading().is_some_and(|l| l < &rat(0)) { -c } else { c };
    assert!((&(&c * &c) - g).rem(f).is_zero(), "square root certificate failed");
    Some(c)
}

fn sqrt_unnormalized(f: &UniPoly, g: &UniPoly) -> Option<UniPoly> {
    if g.is_constant() {
        let v = g.coeff(0);
        if let Some(s) = rational_sqrt(&v) {
            return Some(UniPoly::constant(s));
        }
        if f.deg() == 1 {
            return None;
        }
    }
    let d = f.deg();
    for s in 0..(4 * d as i64 + 8) {
        let sr = rat(s);
        // (x - s θ)^2 - g(θ) as a polynomial in θ, evaluated at x = x0
        let norm_at = |x0: &Rational| {
            let lin = UniPoly::new(vec![x0.clone(), -sr.clone()]);
            resultant_any(f, &(&(&lin * &lin) - g))
        };
        let pts: Vec<(Rational, Rational)> = (0..=2 * d as i64)
            .map(|i| {
                let x0 = rat(i);
                let v = norm_at(&x0);
                (x0, v)
            })
            .collect();
        let norm = interpolate(&pts);
        if norm.deg() != 2 * d || !norm.gcd(&norm.derivative()).is_ok_and(|h| h.deg() == 0) {
            continue;
        }
        let theta = UniPoly::x();
        let alpha = theta.scale(&rat(2 * s));
        let beta = (g - &(&theta * &theta).scale(&(&sr * &sr))).rem(f);
        let fac = factor_over_q(&norm).ok()?;
        for (ni, _) in &fac.factors {
            if ni.deg() != d {
                continue;
            }
            // x^i = a x + b mod (x^2 - alpha x - beta)
            let (mut a, mut b) = (UniPoly::zero(), UniPoly::one());
            let (mut u, mut v) = (UniPoly::zero(), UniPoly::zero());
            for coef in ni.coeffs() {
                u = &u + &a.scale(coef);
                v = &v + &b.scale(coef);
                let na = (&(&a * &alpha) + &b).rem(f);
                let nb = (&a * &beta).rem(f);
                a = na;
                b = nb;
            }
            let u = u.rem(f);
            if u.is_zero() {
                continue;
            }
            let root = (&-&v * &inverse_mod(&u, f).ok()?).rem(f);
            let c = (&root - &theta.scale(&sr)).rem(f);
            if (&(&c * &c) - g).rem(f).is_zero() {
                return Some(c);
            }
        }
        return None;
    }
    None
}

fn find_witness(f: &UniPoly, g: &UniPoly) -> Result<(u64, u64)> {
    let disc = if f.deg() >= 2 {
        crate::exactalg::discriminant(f)?
    } else {
        rat(1)
    };
    let mut p = 3u64;
    while p < WITNESS_LIMIT {
        if is_probable_prime_small(p) && good_for_witness(f, g, &disc, p) {
            let fbar = fp::reduce(f, p).expect("checked denominators");
            let gbar = fp::reduce(g, p).expect("checked denominators");
            for x0 in fp::roots(&fbar, p) {
                if legendre(fp::eval(&gbar, x0, p), p) == -1 {
                    return Ok((p, x0));
                }
            }
        }
        p += 2;
    }
    Err(Error::NoWitnessFound(WITNESS_LIMIT))
}

fn good_for_witness(f: &UniPoly, g: &UniPoly, disc: &Rational, p: u64) -> bool {
    let denominators_ok = f
        .coeffs()
        .iter()
        .chain(g.coeffs())
        .all(|c| rational_mod_p(c, p).is_some());
    denominators_ok && rational_mod_p(disc, p).is_some_and(|r| r != 0)
}

/// σ(k, P): number of distinct irreducible factors of P modulo which `k`
/// is a square.
pub fn sigma(k: &Rational, p: &UniPoly) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("sigma of the zero polynomial".into()));
    }
    if num_traits::Zero::is_zero(k) {
        return Err(Error::DegenerateInput("sigma with k = 0".into()));
    }
    let fac = factor_over_q(p)?;
    let kpoly = UniPoly::constant(k.clone());
    Ok(fac
        .distinct()
        .filter(|f| sqrt_mod(f, &kpoly).is_some())
        .count() as u32)
}

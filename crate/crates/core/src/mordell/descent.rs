//! Galois orbits of points with X-coordinate a root of an irreducible F,
//! and their traces in E(Q(T)).

use super::{rhs_poly, PointQT, RatFunc};
use crate::error::{Error, Result};
use crate::exactalg::{rat, rational_sqrt, Field, Poly, UniPoly};
use crate::factor::factor_over_q;
use crate::numberfield::{inverse_mod, sqrt_mod};
use crate::rankformula::SurfaceABC;

/// Points `(θ, h(θ))` for the roots θ of `f`, with `h` in Q(T)[X].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub f: UniPoly,
    pub h: Poly<RatFunc>,
    /// `"A"` when built from a square root of A, `"C"` from a root of C.
    pub source: &'static str,
}

fn lift(p: &UniPoly) -> Poly<RatFunc> {
    p.map(|c| RatFunc::constant(c.clone()))
}

/// Check `h^2 = A T^2 + B T + C mod F`.
pub fn verify_orbit(s: &SurfaceABC, o: &Orbit) -> bool {
    let e = &(&o.h * &o.h) - &rhs_poly(s);
    e.rem(&lift(&o.f)).is_zero()
}

/// `R` with `R^2 = P` when P is a nonzero square in Q[X].
fn poly_sqrt(p: &UniPoly) -> Result<Option<UniPoly>> {
    if p.is_zero() {
        return Ok(None);
    }
    let fac = factor_over_q(p)?;
    let Some(c) = rational_sqrt(&fac.content) else { return Ok(None) };
    let mut r = UniPoly::constant(c);
    for (f, e) in &fac.factors {
        if e % 2 != 0 {
            return Ok(None);
        }
        r = &r * &f.pow(e / 2);
    }
    Ok(Some(r))
}

/// One orbit per irreducible factor F of B^2 - 4AC at which A is a nonzero
/// square, plus factors dividing A (hence B) at which C is a nonzero square.
///
/// When A is a square in Q[X] every orbit uses the same global root of A,
/// oriented by the certificate of the first such orbit, so that the orbit
/// sums satisfy the multiplicity-weighted relation.
pub fn build_orbits(s: &SurfaceABC) -> Result<Vec<Orbit>> {
    let d = s.delta();
    if d.is_zero() {
        return Ok(Vec::new());
    }
    let mut global = poly_sqrt(&s.a)?;
    let mut out = Vec::new();
    for f in factor_over_q(&d)?.distinct() {
        let a = s.a.rem(f);
        let orbit = if a.is_zero() {
            let c = s.c.rem(f);
            if c.is_zero() {
                continue;
            }
            match sqrt_mod(f, &c) {
                Some(r) => Orbit { f: f.clone(), h: lift(&r), source: "C" },
                None => continue,
            }
        } else {
            let r = match global.as_mut() {
                Some(g) => {
                    let r = g.rem(f);
                    if out.iter().all(|o: &Orbit| o.source != "A")
                        && r.leading().is_some_and(|l| l < &rat(0))
                    {
                        *g = -&*g;
                        -r
                    } else {
                        r
                    }
                }
                None => match sqrt_mod(f, &a) {
                    Some(r) => r,
                    None => continue,
                },
            };
            let inv = inverse_mod(&r.scale(&rat(2)), f)?;
            let q = (&s.b * &inv).rem(f);
            let n = f.deg();
            let h = Poly::new(
                (0..n)
                    .map(|i| RatFunc::from_poly(UniPoly::new(vec![q.coeff(i), r.coeff(i)])))
                    .collect(),
            );
            Orbit { f: f.clone(), h, source: "A" }
        };
        if !verify_orbit(s, &orbit) {
            return Err(Error::InvariantViolation(format!("orbit over {} fails", orbit.f)));
        }
        out.push(orbit);
    }
    Ok(out)
}

/// Sum of the `deg F` conjugate points of an orbit, as a point of E(Q(T)).
///
/// The curve `Y = h(X)` meets E in the orbit and a residual divisor cut out
/// by `(h^2 - rhs) / q`; the orbit sum is minus the residual sum, so the
/// state `(q, h)` is replaced by `(q', -h mod q')` until `deg q' <= 1`.
pub fn trace_descent(s: &SurfaceABC, o: &Orbit) -> Result<PointQT> {
    if !verify_orbit(s, o) {
        return Err(Error::InvariantViolation("orbit invariant fails".into()));
    }
    let rhs = rhs_poly(s);
    let mut q = lift(&o.f.monic());
    let mut h = o.h.rem(&q);
    while q.deg() >= 2 {
        let e = &(&h * &h) - &rhs;
        let qn = e
            .exact_div(&q)
            .ok_or_else(|| Error::InvariantViolation("residual division is inexact".into()))?
            .monic();
        h = (-&h).rem(&qn);
        q = qn;
    }
    if q.deg() == 0 {
        return Ok(PointQT::Infinity);
    }
    let x = q.coeff(0).negated();
    let y = h.eval(&x);
    Ok(PointQT::affine(x, y))
}

//! Points on `Y^2 = A(X)T^2 + B(X)T + C(X)` over Q(T): chord-tangent law,
//! torsion detection, specialization, and conjugate-orbit descent.

mod descent;
mod ratfunc;

pub use descent::{build_orbits, trace_descent, verify_orbit, Orbit};
pub use ratfunc::RatFunc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{rat, Field, Poly, Rational, UniPoly};
use crate::rankformula::SurfaceABC;

/// Point of E(Q(T)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointQT {
    Infinity,
    Affine { x: RatFunc, y: RatFunc },
}

impl PointQT {
    pub fn affine(x: RatFunc, y: RatFunc) -> Self {
        PointQT::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointQT::Infinity)
    }

    pub fn neg(&self) -> Self {
        match self {
            PointQT::Infinity => PointQT::Infinity,
            PointQT::Affine { x, y } => PointQT::Affine { x: x.clone(), y: y.negated() },
        }
    }

    pub fn coords(&self) -> Option<(&RatFunc, &RatFunc)> {
        match self {
            PointQT::Infinity => None,
            PointQT::Affine { x, y } => Some((x, y)),
        }
    }
}

/// Serialized point: strings in T, `"O"` for the point at infinity.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PointView {
    pub x: String,
    pub y: String,
}

impl From<&PointQT> for PointView {
    fn from(p: &PointQT) -> Self {
        match p {
            PointQT::Infinity => PointView { x: "O".into(), y: "O".into() },
            PointQT::Affine { x, y } => PointView { x: x.to_expr("T"), y: y.to_expr("T") },
        }
    }
}

/// Coefficients `a_0..a_3` of the right-hand side as elements of Q(T).
pub fn rhs_coeffs(s: &SurfaceABC) -> [RatFunc; 4] {
    s.coeffs_in_x().map(RatFunc::from_poly)
}

/// Right-hand side as a polynomial in X over Q(T).
pub fn rhs_poly(s: &SurfaceABC) -> Poly<RatFunc> {
    Poly::new(rhs_coeffs(s).to_vec())
}

pub fn is_on_curve(s: &SurfaceABC, p: &PointQT) -> bool {
    match p {
        PointQT::Infinity => true,
        PointQT::Affine { x, y } => y.times(y) == rhs_poly(s).eval(x),
    }
}

fn check(s: &SurfaceABC, p: &PointQT) -> Result<()> {
    if is_on_curve(s, p) {
        Ok(())
    } else {
        Err(Error::PointNotOnCurve)
    }
}

pub fn add(s: &SurfaceABC, p: &PointQT, q: &PointQT) -> Result<PointQT> {
    check(s, p)?;
    check(s, q)?;
    Ok(add_unchecked(&rhs_coeffs(s), p, q))
}

fn add_unchecked(a: &[RatFunc; 4], p: &PointQT, q: &PointQT) -> PointQT {
    let (x1, y1, x2, y2) = match (p, q) {
        (PointQT::Infinity, _) => return q.clone(),
        (_, PointQT::Infinity) => return p.clone(),
        (PointQT::Affine { x: x1, y: y1 }, PointQT::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
    };
    let lambda = if x1 == x2 {
        if y1.plus(y2).is_zero() {
            return PointQT::Infinity;
        }
        // tangent slope (3 a3 x^2 + 2 a2 x + a1) / (2 y)
        let num = a[3]
            .times(&RatFunc::from_int(3))
            .times(x1)
            .times(x1)
            .plus(&a[2].times(&RatFunc::from_int(2)).times(x1))
            .plus(&a[1]);
        num.quo(&y1.times(&RatFunc::from_int(2)))
    } else {
        y2.minus(y1).quo(&x2.minus(x1))
    };
    let nu = y1.minus(&lambda.times(x1));
    let x3 = lambda.times(&lambda).minus(&a[2]).quo(&a[3]).minus(x1).minus(x2);
    let y3 = lambda.times(&x3).plus(&nu).negated();
    PointQT::Affine { x: x3, y: y3 }
}

/// `n P` for `n >= 0`.
pub fn multiply(s: &SurfaceABC, p: &PointQT, n: u64) -> Result<PointQT> {
    check(s, p)?;
    let a = rhs_coeffs(s);
    let mut acc = PointQT::Infinity;
    let mut base = p.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            acc = add_unchecked(&a, &acc, &base);
        }
        n >>= 1;
        if n > 0 {
            base = add_unchecked(&a, &base, &base);
        }
    }
    Ok(acc)
}

pub const TORSION_BOUND: u32 = 12;

/// Smallest `n <= bound` with `n P = O`.
///
/// Candidates are screened on two smooth fibers over Q (a torsion relation
/// specializes) before the exact check over Q(T).
pub fn torsion_order(s: &SurfaceABC, p: &PointQT, bound: u32) -> Result<Option<u32>> {
    check(s, p)?;
    let (x, y) = match p {
        PointQT::Infinity => return Ok(Some(1)),
        PointQT::Affine { x, y } => (x, y),
    };
    let fibers: Vec<(CurveQ, PointQ)> = (1i64..)
        .flat_map(|k| [k, -k])
        .filter_map(|t| {
            let t = rat(t);
            let curve = specialize(s, &t).ok()?;
            Some((curve, PointQ::Affine(x.eval(&t)?, y.eval(&t)?)))
        })
        .take(2)
        .collect();
    let orders: Vec<Option<u32>> = fibers
        .iter()
        .map(|(c, q)| c.order(q, bound))
        .collect();
    for n in 1..=bound {
        if orders.iter().all(|o| o.is_some_and(|m| n % m == 0))
            && multiply(s, p, n as u64)?.is_infinity()
        {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// The curve `y^2 = a3 x^3 + a2 x^2 + a1 x + a0` over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveQ {
    pub coeffs: [Rational; 4],
}

impl CurveQ {
    pub fn rhs(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(rat(0), |acc, c| acc * x + c)
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        y * y == self.rhs(x)
    }

    pub fn as_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.to_vec())
    }

    pub fn add(&self, p: &PointQ, q: &PointQ) -> PointQ {
        let (x1, y1, x2, y2) = match (p, q) {
            (PointQ::Infinity, _) => return q.clone(),
            (_, PointQ::Infinity) => return p.clone(),
            (PointQ::Affine(x1, y1), PointQ::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let a = &self.coeffs;
        let lambda = if x1 == x2 {
            if Zero::is_zero(&(y1 + y2)) {
                return PointQ::Infinity;
            }
            (rat(3) * &a[3] * x1 * x1 + rat(2) * &a[2] * x1 + &a[1]) / (rat(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let nu = y1 - &lambda * x1;
        let x3 = (&lambda * &lambda - &a[2]) / &a[3] - x1 - x2;
        let y3 = -(&lambda * &x3 + nu);
        PointQ::Affine(x3, y3)
    }

    /// Smallest `n <= bound` with `n P = O`.
    pub fn order(&self, p: &PointQ, bound: u32) -> Option<u32> {
        let mut acc = PointQ::Infinity;
        for n in 1..=bound {
            acc = self.add(&acc, p);
            if acc == PointQ::Infinity {
                return Some(n);
            }
        }
        None
    }
}

/// Point of a curve over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointQ {
    Infinity,
    Affine(Rational, Rational),
}

/// Fiber at `T = t`; fails when the fiber is singular.
pub fn specialize(s: &SurfaceABC, t: &Rational) -> Result<CurveQ> {
    if Zero::is_zero(&s.disc_t().eval(t)) {
        return Err(Error::BadSpecialization(format!("singular fiber at T = {t}")));
    }
    Ok(CurveQ { coeffs: s.coeffs_in_x().map(|c| c.eval(t)) })
}

/// Image of a point on the fiber at `t`; a pole specializes to O.
pub fn specialize_point(s: &SurfaceABC, p: &PointQT, t: &Rational) -> Result<PointQ> {
    specialize(s, t)?;
    Ok(match p {
        PointQT::Infinity => PointQ::Infinity,
        PointQT::Affine { x, y } => match (x.eval(t), y.eval(t)) {
            (Some(x), Some(y)) => PointQ::Affine(x, y),
            _ => PointQ::Infinity,
        },
    })
}

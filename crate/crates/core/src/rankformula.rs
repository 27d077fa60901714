//! Exact rank of `Y^2 = A(X)T^2 + B(X)T + C(X)` over Q(T) from the
//! factorization data of A, B, C.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{
    discriminant, interpolate, is_nonzero_square, poly_gcd, rat, rational_sqrt, squarefree_part,
    Rational, UniPoly,
};
use crate::factor::{factor_over_q, is_square_poly, Factorization, FactorizationView};
use crate::numberfield::{sigma, sqrt_mod};

/// The surface `Y^2 = A(X) T^2 + B(X) T + C(X)`.
///
/// Standard surfaces have `deg A, deg B <= 2` and `C` monic cubic. Cube
/// surfaces have `A = L^3` with `L` linear and `B`, `C` of degree at most 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceABC {
    pub a: UniPoly,
    pub b: UniPoly,
    pub c: UniPoly,
    cube_root: Option<UniPoly>,
}

impl SurfaceABC {
    pub fn new(a: UniPoly, b: UniPoly, c: UniPoly) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateInput("A and B are both zero".into()));
        }
        if a.deg() > 2 || b.deg() > 2 {
            return Err(Error::DegenerateInput("deg A and deg B must be at most 2".into()));
        }
        if c.degree() != Some(3) || !c.is_monic() {
            return Err(Error::DegenerateInput("C must be a monic cubic".into()));
        }
        let s = SurfaceABC { a, b, c, cube_root: None };
        s.check_nondegenerate()?;
        Ok(s)
    }

    /// `Y^2 = L^3 T^2 + B T + C`.
    pub fn cube(l: UniPoly, b: UniPoly, c: UniPoly) -> Result<Self> {
        if l.degree() != Some(1) {
            return Err(Error::UnsupportedShape("L must be linear".into()));
        }
        if b.deg() > 3 || c.deg() > 3 {
            return Err(Error::UnsupportedShape("B and C must have degree at most 3".into()));
        }
        let s = SurfaceABC { a: l.pow(3), b, c, cube_root: Some(l) };
        s.check_nondegenerate()?;
        Ok(s)
    }

    fn check_nondegenerate(&self) -> Result<()> {
        if self.disc_t().is_zero() {
            return Err(Error::DegenerateInput("the cubic discriminant vanishes identically".into()));
        }
        Ok(())
    }

    pub fn cube_root(&self) -> Option<&UniPoly> {
        self.cube_root.as_ref()
    }

    /// `B^2 - 4AC`.
    pub fn delta(&self) -> UniPoly {
        &(&self.b * &self.b) - &(&self.a * &self.c).scale(&rat(4))
    }

    /// Coefficients of `X^0..X^3` as polynomials in T.
    pub fn coeffs_in_x(&self) -> [UniPoly; 4] {
        std::array::from_fn(|i| {
            UniPoly::new(vec![self.c.coeff(i), self.b.coeff(i), self.a.coeff(i)])
        })
    }

    /// Discriminant of the cubic in X, as a polynomial in T.
    pub fn disc_t(&self) -> UniPoly {
        let [d, c, b, a] = self.coeffs_in_x();
        if a.is_zero() {
            return UniPoly::zero();
        }
        let t = |x: &UniPoly, y: &UniPoly| x * y;
        let bc = t(&b, &c);
        let terms = [
            (t(&bc, &bc), 1),
            (t(&a, &t(&c, &t(&c, &c))), -4),
            (t(&t(&b, &b), &t(&b, &d)), -4),
            (t(&t(&a, &a), &t(&d, &d)), -27),
            (t(&t(&a, &b), &t(&c, &d)), 18),
        ];
        terms
            .iter()
            .fold(UniPoly::zero(), |acc, (p, k)| &acc + &p.scale(&rat(*k)))
    }

    /// Right-hand side evaluated at a rational `t`, as a polynomial in X.
    pub fn rhs_at(&self, t: &Rational) -> UniPoly {
        let t2 = t * t;
        &(&self.a.scale(&t2) + &self.b.scale(t)) + &self.c
    }
}

/// Model change making the cubic coefficient monic:
/// `(A, B, C) -> (c^2 A(X/c), c^2 B(X/c), c^2 C(X/c))` with `c = lc(C)`.
pub fn normalize_triple(a: &UniPoly, b: &UniPoly, c: &UniPoly) -> Result<SurfaceABC> {
    if c.degree() != Some(3) {
        return Err(Error::DegenerateInput("C must have degree 3".into()));
    }
    let lc = c.leading().unwrap().clone();
    if lc == rat(1) {
        return SurfaceABC::new(a.clone(), b.clone(), c.clone());
    }
    let inv = rat(1) / &lc;
    let sq = &lc * &lc;
    let f = |p: &UniPoly| p.scale_variable(&inv).scale(&sq);
    SurfaceABC::new(f(a), f(b), f(c))
}

/// Regroup `Y^2 = X^3 + a2(T) X^2 + a4(T) X + a6(T)` by powers of T.
pub fn normalize(a2: &UniPoly, a4: &UniPoly, a6: &UniPoly) -> Result<SurfaceABC> {
    if a2.deg() > 2 || a4.deg() > 2 || a6.deg() > 2 {
        return Err(Error::DegenerateInput("Weierstrass coefficients must have degree <= 2 in T".into()));
    }
    let part = |i: usize| UniPoly::new(vec![a6.coeff(i), a4.coeff(i), a2.coeff(i)]);
    let a = part(2);
    let b = part(1);
    let c = &part(0) + &UniPoly::monomial(rat(1), 3);
    normalize_triple(&a, &b, &c)
}

/// The model of the twist `w Y^2 = A T^2 + B T + C`:
/// `(w A(X/w), w^2 B(X/w), w^3 C(X/w))`.
pub fn twist(s: &SurfaceABC, w: &Rational) -> Result<SurfaceABC> {
    if w.is_zero() {
        return Err(Error::DegenerateInput("twist by zero".into()));
    }
    let inv = rat(1) / w;
    let f = |p: &UniPoly, k: i32| p.scale_variable(&inv).scale(&crate::exactalg::pow_rational(w, k as u32));
    SurfaceABC::new(f(&s.a, 1), f(&s.b, 2), f(&s.c, 3))
}

/// `M_{P1,P2}(X) = Res_Y(P1(Y), X^2 - P2(Y))`.
pub fn m_resultant(p1: &UniPoly, p2: &UniPoly) -> Result<UniPoly> {
    if p1.is_zero() {
        return Err(Error::DegenerateInput("M with P1 = 0".into()));
    }
    let d = p1.deg();
    // m(z) = Res_Y(P1, z - P2(Y)) has degree deg P1 in z
    let pts: Vec<(Rational, Rational)> = (0..=d as i64)
        .map(|i| {
            let z = rat(i);
            let q = &UniPoly::constant(z.clone()) - p2;
            (z, crate::exactalg::resultant_any(p1, &q))
        })
        .collect();
    let m = interpolate(&pts);
    let mut coeffs = vec![rat(0); 2 * m.coeffs().len()];
    for (i, c) in m.coeffs().iter().enumerate() {
        coeffs[2 * i] = c.clone();
    }
    Ok(UniPoly::new(coeffs))
}

fn omega_m(p1: &UniPoly, p2: &UniPoly) -> Result<(u32, UniPoly, Factorization)> {
    let m = m_resultant(p1, p2)?;
    let f = factor_over_q(&m)?;
    Ok((f.big_omega(), m, f))
}

fn big_omega_of(p: &UniPoly) -> Result<u32> {
    Ok(factor_over_q(p)?.big_omega())
}

fn small_omega_of(p: &UniPoly) -> Result<u32> {
    Ok(factor_over_q(p)?.small_omega())
}

/// Result of the Υ correction with a flag for the composed quartic branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Upsilon {
    pub value: i64,
    pub composed_branch: bool,
}

/// Υ_{P1,P2}, summed over the irreducible factors of P1.
pub fn upsilon(p1: &UniPoly, p2: &UniPoly) -> Result<i64> {
    Ok(upsilon_detail(p1, p2)?.value)
}

pub fn upsilon_detail(p1: &UniPoly, p2: &UniPoly) -> Result<Upsilon> {
    if p2.is_constant() {
        return Err(Error::UnsupportedShape("Υ needs a nonconstant P2".into()));
    }
    if p1.is_zero() {
        return Err(Error::DegenerateInput("Υ with P1 = 0".into()));
    }
    let mut out = Upsilon { value: 0, composed_branch: false };
    for f in factor_over_q(p1)?.distinct() {
        if f.deg() > 5 || f.deg().min(p2.deg()) > 2 {
            return Err(Error::UnsupportedShape(format!(
                "factor {f} of degree {} with deg P2 = {}",
                f.deg(),
                p2.deg()
            )));
        }
        let u = upsilon_irreducible(f, p2)?;
        out.value += u.value;
        out.composed_branch |= u.composed_branch;
    }
    Ok(out)
}

fn sq(q: &Rational) -> i64 {
    is_nonzero_square(q) as i64
}

fn upsilon_irreducible(f: &UniPoly, p2: &UniPoly) -> Result<Upsilon> {
    let plain = |value| Upsilon { value, composed_branch: false };
    match f.deg() {
        2 => {
            let (q, r) = p2.div_rem(f);
            if q.is_zero() || !r.coeff(1).is_zero() {
                return Ok(plain(0));
            }
            let u = r.coeff(0);
            if u.is_zero() {
                return Ok(plain(0));
            }
            let d = discriminant(f)?;
            Ok(plain(1 + sq(&u) - sq(&(&u * &d))))
        }
        4 if p2.deg() == 2 => {
            let Some(upoly) = compose_inverse(f, p2) else {
                return Ok(plain(0));
            };
            let s = p2.leading().unwrap().clone();
            let dp2 = discriminant(p2)?;
            let w = UniPoly::new(vec![rat(0), dp2.clone(), &s * rat(4)]);
            let inner = upsilon_detail(&upoly, &w)?.value;
            let om = big_omega_of(&m_resultant(&upoly, &w)?)?;
            let x2 = UniPoly::monomial(rat(1), 2);
            let o1 = big_omega_of(&upoly.compose(&x2))?;
            let shifted = (&x2 - &UniPoly::constant(dp2)).scale(&(rat(1) / (&s * rat(4))));
            let o2 = big_omega_of(&upoly.compose(&shifted))?;
            Ok(Upsilon {
                value: inner + 2 - om as i64 + o1 as i64 - o2 as i64,
                composed_branch: true,
            })
        }
        _ => Ok(plain(0)),
    }
}

/// `U` with `F = U(G)`, found from the G-adic expansion, if it exists.
pub fn compose_inverse(f: &UniPoly, g: &UniPoly) -> Option<UniPoly> {
    if g.is_constant() || !f.deg().is_multiple_of(g.deg()) {
        return None;
    }
    let mut coeffs = Vec::new();
    let mut r = f.clone();
    while !r.is_zero() {
        let (q, rem) = r.div_rem(g);
        if !rem.is_constant() {
            return None;
        }
        coeffs.push(rem.coeff(0));
        r = q;
    }
    Some(UniPoly::new(coeffs))
}

/// Ξ_{A,P1,P2} for linear A.
pub fn xi(a: &UniPoly, p1: &UniPoly, p2: &UniPoly) -> Result<i64> {
    if a.degree() != Some(1) {
        return Err(Error::UnsupportedShape("Ξ needs a linear A".into()));
    }
    if !a.divides(p1) {
        return Ok(0);
    }
    let alpha = -(a.coeff(0) / a.coeff(1));
    Ok(1 - sq(&p2.eval(&alpha)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankCase {
    A0,
    ConstSquare,
    ConstNonSquare,
    Deg1,
    Deg2,
    CubeL3,
}

impl RankCase {
    pub fn max_rank(self) -> i64 {
        match self {
            RankCase::A0 => 2,
            RankCase::ConstSquare => 3,
            RankCase::ConstNonSquare => 2,
            RankCase::Deg1 => 4,
            RankCase::Deg2 => 5,
            RankCase::CubeL3 => 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub case: RankCase,
    pub rank: i64,
    pub intermediates: BTreeMap<String, Value>,
    pub bound_rplus: Option<i64>,
    pub warnings: Vec<String>,
}

struct Recorder(BTreeMap<String, Value>);

impl Recorder {
    fn int(&mut self, key: &str, v: i64) -> i64 {
        self.0.insert(key.into(), json!(v));
        v
    }
    fn poly(&mut self, key: &str, p: &UniPoly) {
        self.0.insert(key.into(), json!(p.to_expr("X")));
    }
    fn factors(&mut self, key: &str, f: &Factorization) {
        self.0.insert(key.into(), serde_json::to_value(FactorizationView::from(f)).unwrap());
    }
}

/// Monic gcd with `gcd(P, 0) = P` and `gcd(0, 0) = 0`.
fn gcd0(p: &UniPoly, q: &UniPoly) -> UniPoly {
    if p.is_zero() && q.is_zero() {
        return UniPoly::zero();
    }
    poly_gcd(p, q).expect("not both zero")
}

fn radical(p: &UniPoly) -> Result<UniPoly> {
    squarefree_part(p)
}

pub fn rank(s: &SurfaceABC) -> Result<RankReport> {
    if s.cube_root.is_some() {
        return rank_cube_surface(s);
    }
    let mut rec = Recorder(BTreeMap::new());
    let mut warnings = Vec::new();
    let (case, r) = if s.a.is_zero() {
        (RankCase::A0, rank_a0(s, &mut rec, &mut warnings)?)
    } else if s.a.deg() == 0 {
        let k = s.a.coeff(0);
        let d = s.delta();
        rec.poly("delta", &d);
        let fd = factor_over_q(&d)?;
        rec.factors("delta_factors", &fd);
        let omega_d = rec.int("omega_delta", fd.small_omega() as i64);
        if rational_sqrt(&k).is_some() {
            rec.int("square_A", 1);
            (RankCase::ConstSquare, omega_d - 1)
        } else {
            rec.int("square_A", 0);
            (RankCase::ConstNonSquare, rec.int("sigma", sigma(&k, &d)? as i64))
        }
    } else if s.a.deg() == 1 {
        let d = s.delta();
        if d.is_zero() {
            return Err(Error::DegenerateInput("B^2 - 4AC vanishes".into()));
        }
        rec.poly("delta", &d);
        let fd = factor_over_q(&d)?;
        rec.factors("delta_factors", &fd);
        let (om, m, mf) = omega_m(&radical(&d)?, &s.a)?;
        rec.poly("M_poly", &m);
        rec.factors("M_factors", &mf);
        let om = rec.int("Omega_M_deltastar_A", om as i64);
        let od = rec.int("omega_delta", fd.small_omega() as i64);
        let x = rec.int("xi", xi(&s.a, &s.b, &s.c)?);
        rec.int("r_plus", om - od);
        (RankCase::Deg1, om - od - x)
    } else {
        (RankCase::Deg2, rank_deg2(s, &mut rec, &mut warnings)?)
    };
    finish(case, r, rec, warnings, s)
}

fn finish(
    case: RankCase,
    r: i64,
    rec: Recorder,
    warnings: Vec<String>,
    s: &SurfaceABC,
) -> Result<RankReport> {
    if r < 0 || r > case.max_rank() {
        return Err(Error::InvariantViolation(format!(
            "rank {r} outside [0, {}] for case {case:?}",
            case.max_rank()
        )));
    }
    let bound_rplus = match case {
        RankCase::Deg1 | RankCase::Deg2 => Some(rank_upper(s)?),
        _ => None,
    };
    Ok(RankReport { case, rank: r, intermediates: rec.0, bound_rplus, warnings })
}

fn rank_a0(s: &SurfaceABC, rec: &mut Recorder, warnings: &mut Vec<String>) -> Result<i64> {
    if s.b.is_constant() {
        rec.0.insert("note".into(), json!("B is a nonzero constant"));
        return Ok(0);
    }
    let bs = radical(&s.b)?;
    rec.poly("Bstar", &bs);
    let (om, m, mf) = omega_m(&bs, &s.c)?;
    rec.poly("M_poly", &m);
    rec.factors("M_factors", &mf);
    let om = rec.int("Omega_M_Bstar_C", om as i64);
    let g1 = gcd0(&bs, &s.c);
    rec.poly("gcd_Bstar_C", &g1);
    let g2 = gcd0(&s.b, &s.c);
    rec.poly("gcd_B_C", &g2);
    let w2 = rec.int("omega_gcd_B_C", small_omega_of(&g2)? as i64);
    let wb = rec.int("omega_B", small_omega_of(&s.b)? as i64);
    let u = upsilon_detail(&s.b, &s.c)?;
    if u.composed_branch {
        warnings.push("upsilon composed quartic branch used".into());
    }
    let u = rec.int("upsilon_B_C", u.value);
    Ok(om - 2 * g1.deg() as i64 + w2 - wb - u)
}

fn rank_deg2(s: &SurfaceABC, rec: &mut Recorder, warnings: &mut Vec<String>) -> Result<i64> {
    let d = s.delta();
    if d.is_zero() {
        return Err(Error::DegenerateInput("B^2 - 4AC vanishes".into()));
    }
    rec.poly("delta", &d);
    let fd = factor_over_q(&d)?;
    rec.factors("delta_factors", &fd);
    let gab = gcd0(&s.a, &s.b);
    rec.poly("gcd_A_B", &gab);
    let gab_star = radical(&gab)?;
    rec.poly("gcd_A_Bstar", &gab_star);
    let (om1, m1, mf1) = omega_m(&gab_star, &s.c)?;
    rec.poly("M_poly_gcdAB_C", &m1);
    rec.factors("M_factors_gcdAB_C", &mf1);
    let om1 = rec.int("Omega_M_gcdABstar_C", om1 as i64);
    let (om2, m2, mf2) = omega_m(&radical(&d)?, &s.a)?;
    rec.poly("M_poly", &m2);
    rec.factors("M_factors", &mf2);
    let om2 = rec.int("Omega_M_deltastar_A", om2 as i64);
    let gabc = gcd0(&gab, &s.c);
    rec.poly("gcd_A_B_C", &gabc);
    let w_abc = rec.int("omega_gcd_A_B_C", small_omega_of(&gabc)? as i64);
    let mut ups = |p1: &UniPoly, p2: &UniPoly| -> Result<i64> {
        let u = upsilon_detail(p1, p2)?;
        if u.composed_branch {
            warnings.push("upsilon composed quartic branch used".into());
        }
        Ok(u.value)
    };
    let u1 = rec.int("upsilon_gcdAB_C", ups(&gab, &s.c)?);
    let u2 = rec.int("upsilon_delta_A", ups(&d, &s.a)?);
    let od = rec.int("omega_delta", fd.small_omega() as i64);
    let g3 = gcd0(&gab_star, &s.c);
    rec.poly("gcd_A_Bstar_C", &g3);
    let sa = rec.int("square_A", is_square_poly(&s.a) as i64);
    rec.int("r_plus", om2 - od - u2);
    Ok(om1 + om2 + w_abc - u1 - u2 - od - 2 * g3.deg() as i64 - 2 * gab_star.deg() as i64 - sa)
}

fn rank_cube_surface(s: &SurfaceABC) -> Result<RankReport> {
    let l = s.cube_root.clone().unwrap();
    let mut rec = Recorder(BTreeMap::new());
    let d = s.delta();
    if d.is_zero() {
        return Err(Error::DegenerateInput("B^2 - 4AC vanishes".into()));
    }
    rec.poly("delta", &d);
    let fd = factor_over_q(&d)?;
    rec.factors("delta_factors", &fd);
    let ds = radical(&d)?;
    let (om, m, mf) = omega_m(&ds, &l)?;
    rec.poly("M_poly", &m);
    rec.factors("M_factors", &mf);
    let om = rec.int("Omega_M_deltastar_L", om as i64);
    let od = rec.int("omega_delta", fd.small_omega() as i64);
    let x = rec.int("xi", xi(&l, &s.b, &s.c)?);
    rec.int("bound_deg_deltastar_minus_xi", ds.deg() as i64 - x);
    finish(RankCase::CubeL3, om - od - x, rec, Vec::new(), s)
}

/// Rank of `Y^2 = L^3 T^2 + B T + C`.
pub fn rank_cube(l: &UniPoly, b: &UniPoly, c: &UniPoly) -> Result<RankReport> {
    rank_cube_surface(&SurfaceABC::cube(l.clone(), b.clone(), c.clone())?)
}

/// r₊ = Ω(M_{Δ*,A}) − ω(Δ) − Υ_{Δ,A} for `deg A ∈ {1, 2}`.
pub fn rank_upper(s: &SurfaceABC) -> Result<i64> {
    if s.cube_root.is_some() || !(1..=2).contains(&s.a.degree().unwrap_or(0)) || s.a.is_zero() {
        return Err(Error::UnsupportedShape("r+ needs deg A in {1, 2}".into()));
    }
    let d = s.delta();
    let om = big_omega_of(&m_resultant(&radical(&d)?, &s.a)?)? as i64;
    let od = small_omega_of(&d)? as i64;
    Ok(om - od - upsilon(&d, &s.a)?)
}

/// Number of Galois classes of roots θ of B with C(θ) a nonzero square.
pub fn rank_a0_by_classes(s: &SurfaceABC) -> Result<i64> {
    if !s.a.is_zero() || s.b.is_constant() {
        return Err(Error::UnsupportedShape("needs A = 0 and B nonconstant".into()));
    }
    let fb = factor_over_q(&s.b)?;
    let mut count = 0;
    for f in fb.distinct() {
        let g = s.c.rem(f);
        if !g.is_zero() && sqrt_mod(f, &g).is_some() {
            count += 1;
        }
    }
    Ok(count)
}

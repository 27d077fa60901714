//! Parametric families with promised points, and point searches on curves
//! over Q through auxiliary surfaces.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{
    legendre, rat, rational_mod_p, rational_sqrt, Rational, UniPoly,
};
use crate::mordell::{
    build_orbits, is_on_curve, specialize_point, torsion_order, trace_descent, PointQ, PointQT,
    RatFunc, TORSION_BOUND,
};
use crate::numberfield::sqrt_mod;
use crate::rankformula::{rank, SurfaceABC};

/// What a generator guarantees about its output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Promise {
    Rank(i64),
    /// Rank 0 with the first promised point of this exact order.
    Torsion(u32),
}

#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub surface: SurfaceABC,
    pub points: Vec<PointQT>,
    pub promise: Promise,
}

fn degenerate(msg: impl Into<String>) -> Error {
    Error::DegenerateParameters(msg.into())
}

fn surface(a: UniPoly, b: UniPoly, c: UniPoly) -> Result<SurfaceABC> {
    SurfaceABC::new(a, b, c).map_err(|e| degenerate(format!("degenerate surface: {e}")))
}

/// `(x, s T + c)`.
fn point(x: Rational, s: Rational, c: Rational) -> PointQT {
    PointQT::affine(
        RatFunc::constant(x),
        RatFunc::from_poly(UniPoly::new(vec![c, s])),
    )
}

/// `(x, s T + B(x) / (2 s))`, the point over a root x of B^2 - 4AC with
/// `A(x) = s^2`.
fn point_over_root(b: &UniPoly, x: Rational, s: Rational) -> PointQT {
    let c = b.eval(&x) / (rat(2) * &s);
    point(x, s, c)
}

/// Check every promised point and the promised rank or torsion order.
pub fn verify(inst: &FamilyInstance) -> Result<()> {
    for p in &inst.points {
        if !is_on_curve(&inst.surface, p) {
            return Err(Error::InvariantViolation(format!("promised point {p:?} is off the curve")));
        }
    }
    let r = rank(&inst.surface)?.rank;
    match inst.promise {
        Promise::Rank(n) if r != n => Err(degenerate(format!("rank is {r}, expected {n}"))),
        Promise::Torsion(n) => {
            if r != 0 {
                return Err(degenerate(format!("rank is {r}, expected 0")));
            }
            let got = torsion_order(&inst.surface, &inst.points[0], TORSION_BOUND)?;
            if got != Some(n) {
                return Err(degenerate(format!("torsion order is {got:?}, expected {n}")));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn checked(inst: FamilyInstance) -> Result<FamilyInstance> {
    verify(&inst)?;
    Ok(inst)
}

/// `Y^2 = X^3 + T X^2 - (T + k^2 + 1 - l^2) X + k^2` with points (0, k), (1, l).
pub fn gen_rank2_a0(k: &Rational, l: &Rational) -> Result<FamilyInstance> {
    if k.is_zero() || l.is_zero() {
        return Err(degenerate("k and l must be nonzero"));
    }
    let b = UniPoly::from_ints(&[0, -1, 1]);
    let c = UniPoly::new(vec![k * k, -(k * k) - rat(1) + l * l, rat(0), rat(1)]);
    let s = surface(UniPoly::zero(), b, c)?;
    let points = vec![point(rat(0), rat(0), k.clone()), point(rat(1), rat(0), l.clone())];
    checked(FamilyInstance { surface: s, points, promise: Promise::Rank(2) })
}

/// `A = k^2`, `B = b1 X + b0`, with `B^2 - 4k^2 C` a cube and a point of order 3.
pub fn gen_torsion3(b0: &Rational, b1: &Rational, k: &Rational) -> Result<FamilyInstance> {
    if k.is_zero() {
        return Err(degenerate("k must be nonzero"));
    }
    let k2 = k * k;
    let k4 = &k2 * &k2;
    let k6 = &k4 * &k2;
    let b1_2 = b1 * b1;
    let c1 = (rat(24) * b0 * b1 * &k2 + &b1_2 * &b1_2) / (rat(48) * &k4);
    let c0 = (rat(432) * b0 * b0 * &k4 - &b1_2 * &b1_2 * &b1_2) / (rat(1728) * &k6);
    let a = UniPoly::constant(k2.clone());
    let b = UniPoly::new(vec![b0.clone(), b1.clone()]);
    let c = UniPoly::new(vec![c0, c1, rat(0), rat(1)]);
    let s = surface(a, b, c)?;
    let x = &b1_2 / (rat(12) * &k2);
    let y0 = (rat(12) * b0 * &k2 + &b1_2 * b1) / (rat(24) * &k2 * k);
    let points = vec![point(x, k.clone(), y0)];
    checked(FamilyInstance { surface: s, points, promise: Promise::Torsion(3) })
}

/// `A = k^2`, `deg B = 2`, with `B^2 - 4k^2 C` a fourth power and a point of order 4.
pub fn gen_torsion4(b2: &Rational, b1: &Rational, k: &Rational) -> Result<FamilyInstance> {
    if b2.is_zero() || k.is_zero() {
        return Err(degenerate("b2 and k must be nonzero"));
    }
    let k2 = k * k;
    let k4 = &k2 * &k2;
    let k6 = &k4 * &k2;
    let p = |e: u32| crate::exactalg::pow_rational(b2, e);
    let b0 = (rat(12) * p(3) * &k4 - rat(12) * p(4) * b1 * &k2 + p(5) * b1 * b1) / (rat(4) * p(6));
    let c1 = (rat(4) * &k4 - rat(3) * p(2) * b1 * b1) / (rat(4) * p(4));
    let c0 = (rat(8) * &k6 - rat(16) * b2 * b1 * &k4 + rat(9) * p(2) * b1 * b1 * &k2
        - p(3) * b1 * b1 * b1)
        / (rat(4) * p(6));
    let a = UniPoly::constant(k2.clone());
    let b = UniPoly::new(vec![b0, b1.clone(), b2.clone()]);
    let c = UniPoly::new(vec![c0, c1, rat(0), rat(1)]);
    let s = surface(a, b, c)?;
    let x = (rat(2) * &k2 - b2 * b1) / (rat(2) * p(2));
    let y0 = (rat(4) * &k2 * k - rat(3) * b2 * b1 * k) / (rat(2) * p(3));
    let points = vec![point(x, k.clone(), y0)];
    checked(FamilyInstance { surface: s, points, promise: Promise::Torsion(4) })
}

/// `r = (2mk + 1) / (1 - m^2)` and `s(r) = ((1 + m^2)k + m) / (1 - m^2)`,
/// so that `r(r - 1) + k^2 = s(r)^2`.
fn root_and_sqrt(m: &Rational, k: &Rational) -> Option<(Rational, Rational)> {
    let den = rat(1) - m * m;
    if den.is_zero() {
        return None;
    }
    let r = (rat(2) * m * k + rat(1)) / &den;
    let s = ((rat(1) + m * m) * k + m) / &den;
    Some((r, s))
}

/// Four-parameter family with `A = X(X - 1) + k^2` and
/// `B^2 - 4AC = -4 X (X - 1)(X - r3)(X - r4)(X - r5)`, carrying five points.
pub fn gen_rank5(k: &Rational, b1: &Rational, b2: &Rational, m3: &Rational) -> Result<FamilyInstance> {
    if k.is_zero() {
        return Err(degenerate("k must be nonzero"));
    }
    let sb = b1 + b2;
    if sb.is_zero() {
        return Err(degenerate("b1 + b2 must be nonzero"));
    }
    if m3.is_zero() || m3.abs().is_one() {
        return Err(degenerate("m3 must avoid 0, 1, -1"));
    }
    let m2 = m3 * m3;
    let u = (&m2 - rat(1)) * (&m2 - rat(1));
    let k2 = k * k;
    let p = rat(4) * (&m2 + rat(1)) * (&m2 + rat(1)) * &k2 * &k2
        + rat(8) * (&m2 * m3 + m3) * &k2 * k
        + rat(4) * &m2 * &k2;
    let q = &u * &sb * &sb * (rat(1) - rat(2) * k);
    if (&q + &p).is_zero() {
        return Err(degenerate("q + p must be nonzero"));
    }
    let m5 = (&q - &p) / (&q + &p);
    let m4 = rat(1) / m3;
    let mut roots = vec![(rat(0), k.clone()), (rat(1), k.clone())];
    for (name, m) in [("r3", m3), ("r4", &m4), ("r5", &m5)] {
        let (r, s) = root_and_sqrt(m, k).ok_or_else(|| degenerate(format!("{name} has a zero denominator")))?;
        if s.is_zero() {
            return Err(degenerate(format!("s({name}) vanishes")));
        }
        roots.push((r, s));
    }
    for i in 0..roots.len() {
        for j in 0..i {
            if roots[i].0 == roots[j].0 {
                return Err(degenerate("the five roots must be pairwise distinct"));
            }
        }
    }
    let b0 = (-&p + rat(2) * &u * b2 * &sb * &k2 - &u * &sb * &sb) / (rat(2) * &sb * &u);
    let b = UniPoly::new(vec![b0, b1.clone(), b2.clone()]);
    let a = UniPoly::new(vec![k2.clone(), rat(-1), rat(1)]);
    let delta = roots
        .iter()
        .fold(UniPoly::constant(rat(-4)), |acc, (r, _)| &acc * &UniPoly::linear_root(r.clone()));
    let num = &(&b * &b) - &delta;
    let c = num
        .exact_div(&a.scale(&rat(4)))
        .ok_or_else(|| degenerate("4A does not divide B^2 - Delta"))?;
    let s = surface(a, b.clone(), c)?;
    let points = roots.into_iter().map(|(r, sr)| point_over_root(&b, r, sr)).collect();
    checked(FamilyInstance { surface: s, points, promise: Promise::Rank(5) })
}

/// Cube-case family `A = X^3` with `B^2 - 4AC = l * prod (X - r_i^2)`,
/// solved by matching coefficients from the constant term upwards.
pub fn gen_rank6(b3: &Rational, b0: &Rational, r: &[i64; 6]) -> Result<FamilyInstance> {
    if b3.is_zero() || b0.is_zero() {
        return Err(degenerate("b3 and b0 must be nonzero"));
    }
    if r.iter().any(|&x| x <= 0) {
        return Err(degenerate("the r_i must be positive"));
    }
    for i in 0..6 {
        if r[..i].contains(&r[i]) {
            return Err(degenerate("the r_i must be pairwise distinct"));
        }
    }
    let prod = r
        .iter()
        .fold(UniPoly::one(), |acc, &x| &acc * &UniPoly::linear_root(rat(x * x)));
    let d = |j: usize| prod.coeff(j);
    // coefficient j of B^2 - 4 X^3 C is linear in the single new unknown
    let l = b0 * b0 / d(0);
    if l.is_zero() {
        return Err(degenerate("l vanishes"));
    }
    let b1 = &l * d(1) / (rat(2) * b0);
    let b2 = (&l * d(2) - &b1 * &b1) / (rat(2) * b0);
    let c0 = (rat(2) * b3 * b0 + rat(2) * &b2 * &b1 - &l * d(3)) / rat(4);
    let c1 = (rat(2) * b3 * &b1 + &b2 * &b2 - &l * d(4)) / rat(4);
    let c2 = (rat(2) * b3 * &b2 - &l * d(5)) / rat(4);
    let c3 = (b3 * b3 - &l) / rat(4);
    let b = UniPoly::new(vec![b0.clone(), b1, b2, b3.clone()]);
    let c = UniPoly::new(vec![c0, c1, c2, c3]);
    let s = SurfaceABC::cube(UniPoly::x(), b.clone(), c)
        .map_err(|e| degenerate(format!("degenerate surface: {e}")))?;
    if s.delta() != prod.scale(&l) {
        return Err(Error::InvariantViolation("elimination residual is nonzero".into()));
    }
    let points = r
        .iter()
        .map(|&x| point_over_root(&b, rat(x * x), rat(x * x * x)))
        .collect();
    checked(FamilyInstance { surface: s, points, promise: Promise::Rank(6) })
}

/// A rational point on `y^2 = C(x)` found through an auxiliary surface.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub surface: SurfaceABC,
    pub point_qt: PointQT,
    pub x: Rational,
    pub y: Rational,
}

/// Integer vectors of length `n` with max-norm exactly `m`, lexicographic.
fn shell(n: usize, m: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-m; n];
    loop {
        if cur.iter().any(|c| c.abs() == m) {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < m {
                cur[i] += 1;
                break;
            }
            cur[i] = -m;
        }
    }
}

fn check_cubic(c: &UniPoly) -> Result<()> {
    if c.degree() != Some(3) || !c.is_monic() {
        return Err(Error::DegenerateInput("C must be a monic cubic".into()));
    }
    if crate::exactalg::discriminant(c)?.is_zero() {
        return Err(Error::DegenerateInput("y^2 = C(x) is singular".into()));
    }
    Ok(())
}

const SCREEN_PRIMES: [u64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Cheap necessary condition for `C(θ)` to be a square in Q(θ) for a root
/// θ of the integer polynomial B: at every split prime with B squarefree
/// mod p, C takes square values at the roots.
fn screen(b: &[i64], c: &UniPoly) -> bool {
    let mut tested = 0;
    for &p in &SCREEN_PRIMES {
        let pi = p as i64;
        let bm: Vec<u64> = b.iter().map(|v| v.rem_euclid(pi) as u64).collect();
        if bm[2] == 0 {
            continue;
        }
        let Some(cm) = c.coeffs().iter().map(|q| rational_mod_p(q, p)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let roots: Vec<u64> = (0..p)
            .filter(|&x| (bm[2] * x % p * x + bm[1] * x + bm[0]).is_multiple_of(p))
            .collect();
        if roots.len() != 2 {
            continue;
        }
        tested += 1;
        let cval = |x: u64| cm.iter().rev().fold(0, |acc, &k| (acc * x + k) % p);
        if roots.iter().any(|&x| legendre(cval(x), p) == -1) {
            return false;
        }
        if tested >= 4 {
            break;
        }
    }
    true
}

/// Descend every orbit of `s` and specialize at T = 0; first affine point
/// accepted by `keep`.
fn specialized_points(
    s: &SurfaceABC,
    keep: impl Fn(&Rational, &Rational) -> bool,
) -> Option<(PointQT, Rational, Rational)> {
    let orbits = build_orbits(s).ok()?;
    for o in &orbits {
        let Ok(pt) = trace_descent(s, o) else { continue };
        if let Ok(PointQ::Affine(x, y)) = specialize_point(s, &pt, &rat(0)) {
            if keep(&x, &y) {
                return Some((pt, x, y));
            }
        }
    }
    None
}

/// A candidate `B` gives a point when some factor F of B has C mod F a
/// nonzero square in Q[X]/F.
fn a0_candidate(b: &[i64], c: &UniPoly) -> Option<SearchHit> {
    let bp = UniPoly::from_ints(b);
    if bp.is_constant() {
        return None;
    }
    if b[2] != 0 {
        let disc = b[1] * b[1] - 4 * b[2] * b[0];
        let split = disc >= 0 && rational_sqrt(&rat(disc)).is_some();
        if !split && !screen(b, c) {
            return None;
        }
    }
    let s = SurfaceABC::new(UniPoly::zero(), bp, c.clone()).ok()?;
    let f = crate::factor::factor_over_q(&s.b).ok()?;
    let any = f.distinct().any(|fi| {
        let g = c.rem(fi);
        !g.is_zero() && sqrt_mod(fi, &g).is_some()
    });
    if !any {
        return None;
    }
    let (point_qt, x, y) = specialized_points(&s, |_, _| true)?;
    Some(SearchHit { surface: s, point_qt, x, y })
}

/// Search `Y^2 = B(X) T + C(X)` over integer `B` of degree at most 2 with
/// coefficients bounded by `bound`, by increasing max-norm and
/// lexicographically within a norm, for a surface of positive rank whose
/// orbit traces specialize at T = 0 to an affine point of `y^2 = C(x)`.
pub fn search_point(c: &UniPoly, bound: u32) -> Result<Option<SearchHit>> {
    check_cubic(c)?;
    for m in 1..=bound as i64 {
        // coefficient order (b2, b1, b0)
        let cands = shell(3, m);
        let hit = cands.par_iter().find_map_first(|v| {
            let b = [v[2], v[1], v[0]];
            a0_candidate(&b, c)
        });
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

/// Search `A = (X + a0)^2`, `B = (X - x0)(b1 X + b0) + 2 (x0 + a0) y0`
/// for a surface of rank at least 2; the known point is
/// `(x0, (x0 + a0) T + y0)`. Returns the first specialized orbit trace
/// with `x != x0`.
///
/// The linear factor of A is taken monic: `T -> λT` maps `(A, B)` to
/// `(λ^2 A, λ B)` and leaves the fiber at T = 0 unchanged.
pub fn search_second_point(
    c: &UniPoly,
    known: (&Rational, &Rational),
    bound: u32,
) -> Result<Option<SearchHit>> {
    check_cubic(c)?;
    let (x0, y0) = known;
    if y0 * y0 != c.eval(x0) {
        return Err(Error::PointNotOnCurve);
    }
    for m in 1..=bound as i64 {
        // coefficient order (a0, b1, b0)
        let cands = shell(3, m);
        let hit = cands
            .par_iter()
            .find_map_first(|v| second_candidate(c, x0, y0, [v[0], v[1], v[2]]));
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

fn second_candidate(c: &UniPoly, x0: &Rational, y0: &Rational, v: [i64; 3]) -> Option<SearchHit> {
    let [a0, b1, b0] = v;
    let al = UniPoly::from_ints(&[a0, 1]);
    let lin = UniPoly::new(vec![-x0.clone(), rat(1)]);
    let b = &(&lin * &UniPoly::from_ints(&[b0, b1]))
        + &UniPoly::constant(rat(2) * al.eval(x0) * y0);
    let s = SurfaceABC::new(&al * &al, b, c.clone()).ok()?;
    // rank >= 2 needs at least three distinct factors of B^2 - 4AC
    let rest = s.delta().exact_div(&lin)?;
    if rest.is_zero() || crate::factor::is_irreducible(&rest) {
        return None;
    }
    if crate::factor::small_omega(&s.delta()).ok()? < 3 {
        return None;
    }
    if rank(&s).ok()?.rank < 2 {
        return None;
    }
    let (point_qt, x, y) = specialized_points(&s, |x, _| x != x0)?;
    Some(SearchHit { surface: s, point_qt, x, y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    #[test]
    fn shells_are_ordered() {
        let s = shell(2, 1);
        assert_eq!(s, vec![vec![-1, -1], vec![-1, 0], vec![-1, 1], vec![0, -1], vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
        assert_eq!(shell(3, 2).len(), 125 - 27);
    }

    #[test]
    fn rank2_a0_example() {
        let inst = gen_rank2_a0(&rat(1), &rat(2)).unwrap();
        assert_eq!(inst.surface.c, UniPoly::from_ints(&[1, 2, 0, 1]));
        assert!(gen_rank2_a0(&rat(1), &rat(1)).is_ok());
        assert!(matches!(gen_rank2_a0(&rat(0), &rat(1)), Err(Error::DegenerateParameters(_))));
    }

    #[test]
    fn torsion_examples() {
        let t3 = gen_torsion3(&rat(0), &rat(1), &rat(1)).unwrap();
        assert_eq!(t3.points[0], point(ratio(1, 12), rat(1), ratio(1, 24)));
        assert!(gen_torsion3(&rat(1), &rat(0), &rat(1)).is_ok());
        assert!(gen_torsion3(&rat(1), &rat(1), &rat(0)).is_err());
        let t4 = gen_torsion4(&rat(1), &rat(1), &rat(1)).unwrap();
        assert_eq!(t4.points[0], point(ratio(1, 2), rat(1), ratio(1, 2)));
        assert!(gen_torsion4(&rat(2), &rat(0), &rat(1)).is_ok());
        assert!(gen_torsion4(&rat(0), &rat(1), &rat(1)).is_err());
    }

    #[test]
    fn rank5_example() {
        let inst = gen_rank5(&rat(1), &rat(1), &rat(1), &rat(2)).unwrap();
        assert_eq!(inst.points.len(), 5);
        assert_eq!(inst.surface.a, UniPoly::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn rank6_matches_display() {
        let inst = gen_rank6(&rat(1), &rat(1), &[1, 2, 3, 4, 5, 6]).unwrap();
        let b = &inst.surface.b;
        assert_eq!(b.coeff(2), ratio(9919, 1_280_000));
        assert_eq!(b.coeff(1), ratio(-5369, 7200));
        let c = &inst.surface.c;
        assert_eq!(c.coeff(3), ratio(1, 4) - ratio(1, 2_073_600));
        assert!(gen_rank6(&rat(1), &rat(1), &[1, 1, 3, 4, 5, 6]).is_err());
    }
}

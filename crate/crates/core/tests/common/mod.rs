//! Shared strategies, fixtures and property checks. Each check returns
//! `Err(description)` on a counterexample so proptest and the seeded
//! acceptance batteries can drive the same code.
#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use surfrank_core::exactalg::{rat, ratio, Rational, UniPoly};
use surfrank_core::factor::{factor_over_q, is_irreducible};
use surfrank_core::mordell::{add, build_orbits, multiply, trace_descent, PointQT};
use surfrank_core::rankformula::{
    compose_inverse, m_resultant, normalize_triple, rank, rank_a0_by_classes, rank_upper, twist,
    SurfaceABC,
};

pub fn p(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

pub fn surf(a: &[i64], b: &[i64], c: &[i64]) -> SurfaceABC {
    SurfaceABC::new(p(a), p(b), p(c)).unwrap()
}

/// `A = 0`, `B = X^2 + X + 1`, `C = X^3 - 4`.
pub fn exemple_1() -> SurfaceABC {
    surf(&[], &[1, 1, 1], &[-4, 0, 0, 1])
}

pub fn example_2() -> SurfaceABC {
    surf(&[7], &[-2, 3, 1], &[0, -2, 0, 1])
}

pub fn example_3() -> SurfaceABC {
    surf(&[144, -24, 1], &[-48, 52, -11], &[-67, 5, -1, 1])
}

/// A rank-0 surface with `A = 0`.
pub fn rank_zero_a0() -> SurfaceABC {
    surf(&[], &[1, 0, 1], &[3, 1, 0, 1])
}

// ---------------------------------------------------------------- strategies

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |q| *q != rat(0))
}

pub fn poly_up_to(deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(small_rational(), 0..=deg + 1).prop_map(UniPoly::new)
}

pub fn int_poly_up_to(deg: usize, bound: i64) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-bound..=bound, 0..=deg + 1).prop_map(|c| p(&c))
}

pub fn nonzero_poly_up_to(deg: usize) -> impl Strategy<Value = UniPoly> {
    poly_up_to(deg).prop_filter("nonzero", |q| !q.is_zero())
}

pub fn monic_cubic() -> impl Strategy<Value = UniPoly> {
    (-6i64..=6, -6i64..=6, -6i64..=6).prop_map(|(c0, c1, c2)| p(&[c0, c1, c2, 1]))
}

pub fn monic_irreducible(min_deg: usize, max_deg: usize) -> impl Strategy<Value = UniPoly> {
    (min_deg..=max_deg)
        .prop_flat_map(|d| prop::collection::vec(-6i64..=6, d))
        .prop_map(|mut c| {
            c.push(1);
            p(&c)
        })
        .prop_filter("irreducible", is_irreducible)
}

pub fn surface_with(
    a: impl Strategy<Value = UniPoly>,
    b: impl Strategy<Value = UniPoly>,
) -> impl Strategy<Value = SurfaceABC> {
    (a, b, monic_cubic()).prop_filter_map("nondegenerate", |(a, b, c)| SurfaceABC::new(a, b, c).ok())
}

pub fn a0_surface() -> impl Strategy<Value = SurfaceABC> {
    surface_with(Just(UniPoly::zero()), int_poly_up_to(2, 6))
}

/// Surfaces with `deg A` in `{1, 2}`.
pub fn deg12_surface() -> impl Strategy<Value = SurfaceABC> {
    let a = (1usize..=2)
        .prop_flat_map(|d| prop::collection::vec(-5i64..=5, d + 1))
        .prop_filter_map("exact degree", |c| {
            let q = p(&c);
            (q.deg() >= 1).then_some(q)
        });
    surface_with(a, int_poly_up_to(2, 5))
}

pub fn any_surface() -> impl Strategy<Value = SurfaceABC> {
    surface_with(int_poly_up_to(2, 4), int_poly_up_to(2, 4))
}

/// `A = k^2` surfaces.
pub fn square_const_surface() -> impl Strategy<Value = SurfaceABC> {
    (1i64..=4).prop_flat_map(|k| surface_with(Just(p(&[k * k])), int_poly_up_to(2, 6)))
}

// ----------------------------------------------------- seeded generators

pub fn rng_int(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn rng_nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let v = rng_int(rng, bound);
        if v != 0 {
            return v;
        }
    }
}

pub fn rng_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    ratio(rng_int(rng, bound), rng.gen_range(1..=4))
}

pub fn rng_poly(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> UniPoly {
    p(&(0..=deg).map(|_| rng_int(rng, bound)).collect::<Vec<_>>())
}

pub fn rng_cubic(rng: &mut ChaCha8Rng) -> UniPoly {
    p(&[rng_int(rng, 6), rng_int(rng, 6), rng_int(rng, 6), 1])
}

/// Draw until `f` yields a value.
pub fn draw<T>(rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> Option<T>) -> T {
    loop {
        if let Some(v) = f(rng) {
            return v;
        }
    }
}

pub fn rng_surface(rng: &mut ChaCha8Rng, a_deg: Option<usize>) -> SurfaceABC {
    draw(rng, |r| {
        let a = match a_deg {
            None => UniPoly::zero(),
            Some(d) => {
                let a = rng_poly(r, d, 5);
                if a.degree() != Some(d) {
                    return None;
                }
                a
            }
        };
        let b = rng_poly(r, 2, 6);
        SurfaceABC::new(a, b, rng_cubic(r)).ok()
    })
}

pub fn rng_irreducible(rng: &mut ChaCha8Rng, min_deg: usize, max_deg: usize) -> UniPoly {
    draw(rng, |r| {
        let d = r.gen_range(min_deg..=max_deg);
        let mut c: Vec<i64> = (0..d).map(|_| rng_int(r, 6)).collect();
        c.push(1);
        let f = p(&c);
        is_irreducible(&f).then_some(f)
    })
}

// ------------------------------------------------------------ properties

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The A = 0 formula agrees with the count of Galois classes of roots of B
/// at which C is a nonzero square.
pub fn check_theoconjclass(s: &SurfaceABC) -> Check {
    if s.b.is_constant() {
        return Ok(());
    }
    let formula = rank(s).map_err(|e| e.to_string())?.rank;
    let classes = rank_a0_by_classes(s).map_err(|e| e.to_string())?;
    ensure(formula == classes, || format!("{s:?}: formula {formula}, classes {classes}"))
}

/// `M_{F,G}` is `K(X)^e K(-X)^e` or `K(X^2)^e`, and a repeated factor
/// occurs exactly when `F = P(G)`.
pub fn check_lemma_factors(f: &UniPoly, g: &UniPoly) -> Check {
    if g.rem(f).is_zero() {
        // G(ρ) = 0: M has the factor X^2 outside the lemma's setting
        return Ok(());
    }
    let m = m_resultant(f, g).map_err(|e| e.to_string())?;
    let fac = factor_over_q(&m).map_err(|e| e.to_string())?;
    let reflect = |h: &UniPoly| {
        let r = h.compose(&p(&[0, -1]));
        r.monic()
    };
    let mults: Vec<u32> = fac.factors.iter().map(|(_, e)| *e).collect();
    let e = mults[0];
    ensure(mults.iter().all(|&x| x == e), || format!("unequal multiplicities in {}", fac.to_expr("X")))?;
    match fac.factors.as_slice() {
        [(h, _)] => ensure(reflect(h) == *h, || format!("single factor {} is not even", h.to_expr("X")))?,
        [(h1, _), (h2, _)] => ensure(reflect(h1) == *h2, || {
            format!("factors {} and {} are not reflections", h1.to_expr("X"), h2.to_expr("X"))
        })?,
        _ => return Err(format!("{} factors in {}", mults.len(), fac.to_expr("X"))),
    }
    ensure([1, 2, 4].contains(&e), || format!("multiplicity {e}"))?;
    let composed = g.deg() == 2 && compose_inverse(f, g).is_some();
    ensure((e >= 2) == composed, || {
        format!("F = {}, G = {}: multiplicity {e}, composition {composed}", f.to_expr("X"), g.to_expr("X"))
    })
}

/// `rank <= r+ <= deg (B^2 - 4AC)*`, and the rank stays in its case range.
pub fn check_rplus(s: &SurfaceABC) -> Check {
    let r = rank(s).map_err(|e| e.to_string())?;
    let rp = rank_upper(s).map_err(|e| e.to_string())?;
    let dstar = surfrank_core::exactalg::squarefree_part(&s.delta()).map_err(|e| e.to_string())?;
    ensure(0 <= r.rank && r.rank <= rp && rp <= dstar.deg() as i64, || {
        format!("{s:?}: rank {}, r+ {rp}, deg D* {}", r.rank, dstar.deg())
    })?;
    ensure(r.rank <= r.case.max_rank(), || format!("{s:?}: rank {} above case maximum", r.rank))
}

pub fn check_rank_range(s: &SurfaceABC) -> Check {
    let r = rank(s).map_err(|e| e.to_string())?;
    ensure((0..=r.case.max_rank()).contains(&r.rank), || {
        format!("{s:?}: rank {} outside [0, {}] for {:?}", r.rank, r.case.max_rank(), r.case)
    })
}

/// The twist by `w` has the same rank computed from two models, and a
/// twist by a square is the original curve.
pub fn check_twist(s: &SurfaceABC, w: &Rational, u: &Rational) -> Check {
    let r = |x: &SurfaceABC| rank(x).map(|r| r.rank).map_err(|e| e.to_string());
    let t = twist(s, w).map_err(|e| e.to_string())?;
    let scaled = |q: &UniPoly| q.scale(w);
    let other = normalize_triple(&scaled(&s.a), &scaled(&s.b), &scaled(&s.c)).map_err(|e| e.to_string())?;
    ensure(r(&t)? == r(&other)?, || format!("{s:?} twisted by {w}: {} vs {}", r(&t).unwrap(), r(&other).unwrap()))?;
    let sq = twist(s, &(u * u)).map_err(|e| e.to_string())?;
    ensure(r(&sq)? == r(s)?, || format!("{s:?} twisted by the square of {u} changes the rank"))
}

/// For `A = k^2`, the multiplicity-weighted sum of the descended orbit
/// points over all factors of `B^2 - 4k^2 C` is O.
pub fn check_sum_points(s: &SurfaceABC) -> Check {
    let err = |e: surfrank_core::Error| e.to_string();
    let fac = factor_over_q(&s.delta()).map_err(err)?;
    let orbits = build_orbits(s).map_err(err)?;
    ensure(orbits.len() == fac.factors.len(), || format!("{s:?}: missing orbits"))?;
    let mut total = PointQT::Infinity;
    for o in &orbits {
        let m = fac.factors.iter().find(|(f, _)| *f == o.f).map(|(_, m)| *m).ok_or("orbit factor not in D")?;
        let pt = trace_descent(s, o).map_err(err)?;
        total = add(s, &total, &multiply(s, &pt, m as u64).map_err(err)?).map_err(err)?;
    }
    ensure(total.is_infinity(), || format!("{s:?}: weighted sum is {total:?}"))
}

//! Zassenhaus factorization of squarefree integer polynomials: factor mod a
//! small prime, Hensel-lift, recombine subsets by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::{self, FpPoly};
use crate::exactalg::{int_content, UniPoly};

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn to_fp(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    fp::trim(
        a.iter()
            .map(|c| u64::try_from(c.mod_floor(&pb)).unwrap())
            .collect(),
    )
}

fn from_fp(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    let mut out: Vec<BigInt> = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Lift `f = g h mod p` (g monic, lc(h) = lc(f)) to `mod p^k`.
fn lift_pair(f: &[BigInt], g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, s, t) = fp::ext_gcd(g0, h0, p);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    *h.last_mut().unwrap() = f.last().unwrap().clone();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = int_mul(&g, &h);
        let diff: Vec<BigInt> = (0..f.len())
            .map(|i| f[i].clone() - gh.get(i).cloned().unwrap_or_default())
            .collect();
        let e: Vec<BigInt> = diff.iter().map(|c| c / &pj).collect();
        let e = to_fp(&e, p);
        if !e.is_empty() {
            let (q, r) = fp::div_rem(&fp::mul(&t, &e, p), g0, p);
            let dh = fp::add(&fp::mul(&s, &e, p), &fp::mul(&q, h0, p), p);
            for (i, c) in r.iter().enumerate() {
                g[i] += &pj * c;
            }
            for (i, c) in dh.iter().enumerate() {
                h[i] += &pj * c;
            }
        }
        pj *= &pb;
    }
    (g, h)
}

fn choose_prime(f: &[BigInt]) -> u64 {
    let lc = f.last().unwrap();
    let mut p = 3u64;
    loop {
        if crate::exactalg::is_probable_prime_small(p) && !(lc % p).is_zero() {
            let fb = to_fp(f, p);
            if fp::is_squarefree(&fb, p) {
                return p;
            }
        }
        p += 2;
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn primitive(mut a: Vec<BigInt>) -> Vec<BigInt> {
    let mut c = int_content(&a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    for x in a.iter_mut() {
        *x = &*x / &c;
    }
    a
}

/// Exact division of integer polynomials; `None` if `b` does not divide `a`.
fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let (c, m) = r[i + db].div_rem(lb);
        if !m.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[i + j] -= &c * bc;
            }
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then_some(q)
}

/// Monic irreducible factors of a monic squarefree polynomial over Q of
/// degree at least 2.
pub(super) fn factor_squarefree_int(f: &UniPoly) -> Vec<UniPoly> {
    let (_, fi) = f.to_primitive_int();
    let p = choose_prime(&fi);
    let lc = fi.last().unwrap().clone();
    let fbar = fp::monic(&to_fp(&fi, p), p);
    let (_, mod_factors) = fp::factor(&fbar, p);
    let gs: Vec<FpPoly> = mod_factors.into_iter().map(|(g, _)| g).collect();
    if gs.len() == 1 {
        return vec![f.monic()];
    }

    // p^k > 2 |lc| 2^n ||f||_2
    let n = fi.len() - 1;
    let norm2: BigInt = fi.iter().map(|c| c * c).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * (norm2.sqrt() + 1);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }

    let lc_bar = u64::try_from(lc.mod_floor(&pb)).unwrap();
    let mut lifted: Vec<Vec<BigInt>> = Vec::with_capacity(gs.len());
    let mut cur = fi.clone();
    for i in 0..gs.len() - 1 {
        let rest = gs[i + 1..]
            .iter()
            .fold(vec![lc_bar], |acc, g| fp::mul(&acc, g, p));
        let (g, h) = lift_pair(&cur, &gs[i], &rest, p, k);
        lifted.push(symmetric(&g, &pk));
        cur = h;
    }
    let inv = lc.extended_gcd(&pk).x;
    let last: Vec<BigInt> = cur.iter().map(|c| c * &inv).collect();
    lifted.push(symmetric(&last, &pk));

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut frem = fi;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for combo in combinations(remaining.len(), size) {
            let lr = frem.last().unwrap().clone();
            let prod = combo
                .iter()
                .fold(vec![lr], |acc, &i| symmetric(&int_mul(&acc, &lifted[remaining[i]]), &pk));
            let cand = primitive(prod);
            if let Some(q) = int_exact_div(&frem, &cand) {
                found.push(cand);
                frem = q;
                hit = Some(combo);
                break;
            }
        }
        match hit {
            Some(combo) => {
                let mut idx = 0;
                remaining.retain(|_| {
                    let keep = !combo.contains(&idx);
                    idx += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if frem.len() > 1 {
        found.push(frem);
    }
    found
        .iter()
        .map(|g| UniPoly::from_int_coeffs(g).monic())
        .collect()
}

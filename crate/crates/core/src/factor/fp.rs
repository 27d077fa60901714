//! Polynomials over a prime field F_p, coefficients as `u64` lowest first.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{inv_mod, mulmod, rational_mod_p, UniPoly};

pub type FpPoly = Vec<u64>;

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn deg(f: &[u64]) -> usize {
    f.len().saturating_sub(1)
}

/// Image of a rational polynomial mod `p`; `BadPrime` if `p` divides a
/// denominator.
pub fn reduce(f: &UniPoly, p: u64) -> Result<FpPoly> {
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        out.push(rational_mod_p(c, p).ok_or_else(|| Error::BadPrime {
            prime: p,
            reason: "divides a coefficient denominator".into(),
        })?);
    }
    Ok(trim(out))
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> FpPoly {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

pub fn monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p).expect("nonzero leading coefficient"), p),
    }
}

/// Euclidean division; panics on a zero divisor.
pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = deg(b);
    let inv = inv_mod(*b.last().unwrap(), p).unwrap();
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = mulmod(r[i + db], inv, p);
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulmod(c, bc, p)) % p;
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    div_rem(a, b, p).1
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().unwrap(), p).unwrap();
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub fn derivative(a: &[u64], p: u64) -> FpPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

/// `base^e mod modulus`.
pub fn pow_mod(base: &[u64], e: &BigUint, modulus: &[u64], p: u64) -> FpPoly {
    let mut acc = rem(&[1], modulus, p);
    let b = rem(base, modulus, p);
    for i in (0..e.bits()).rev() {
        acc = rem(&mul(&acc, &acc, p), modulus, p);
        if e.bit(i) {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
    }
    acc
}

fn pow_mod_u64(base: &[u64], e: u64, modulus: &[u64], p: u64) -> FpPoly {
    pow_mod(base, &BigUint::from(e), modulus, p)
}

pub fn is_squarefree(a: &[u64], p: u64) -> bool {
    deg(&gcd(a, &derivative(a, p), p)) == 0
}

/// Squarefree decomposition in characteristic `p` of a monic polynomial.
pub fn squarefree_decomposition(f: &[u64], p: u64) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    if deg(f) == 0 {
        return out;
    }
    let f = monic(f, p);
    let mut c = gcd(&f, &derivative(&f, p), p);
    let mut w = div_rem(&f, &c, p).0;
    let mut i = 1u32;
    while deg(&w) > 0 {
        let y = gcd(&w, &c, p);
        let z = div_rem(&w, &y, p).0;
        if deg(&z) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = div_rem(&c, &w, p).0;
    }
    if deg(&c) > 0 {
        // c is a polynomial in X^p
        let root: FpPoly = c.iter().step_by(p as usize).copied().collect();
        for (g, j) in squarefree_decomposition(&root, p) {
            out.push((g, j * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while deg(&f) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod_u64(&h, p, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if deg(&g) > 0 {
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if deg(&f) > 0 {
        let n = deg(&f);
        out.push((f, n));
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, p: u64) -> FpPoly {
    trim((0..n).map(|_| rng.gen_range(0..p)).collect())
}

/// Cantor-Zassenhaus splitting of a monic squarefree product of degree-`d`
/// irreducibles.
pub fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = deg(f);
    if n == d {
        return vec![f.to_vec()];
    }
    let exp = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = random_poly(rng, n, p);
        if deg(&a) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut acc = Vec::new();
            let mut t = rem(&a, f, p);
            for _ in 0..d {
                acc = add(&acc, &t, p);
                t = rem(&mul(&t, &t, p), f, p);
            }
            acc
        } else {
            sub(&pow_mod(&a, &exp, f, p), &[1], p)
        };
        let g = gcd(f, &b, p);
        if deg(&g) > 0 && deg(&g) < n {
            let h = div_rem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

fn seed_from(f: &[u64], p: u64) -> u64 {
    f.iter()
        .fold(p ^ 0x9e37_79b9_7f4a_7c15, |h, &c| h.wrapping_mul(0x100_0000_01b3) ^ c)
}

fn cmp_poly(a: &FpPoly, b: &FpPoly) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Complete factorization over F_p: leading coefficient and monic
/// irreducible factors with multiplicities, sorted by degree.
pub fn factor(f: &[u64], p: u64) -> (u64, Vec<(FpPoly, u32)>) {
    let f = trim(f.to_vec());
    assert!(!f.is_empty(), "factoring zero mod p");
    let lc = *f.last().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from(&f, p));
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&f, p) {
        for (block, d) in distinct_degree(&part, p) {
            for g in equal_degree(&block, d, p, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    (lc, out)
}

/// Distinct roots in `[0, p)` of a nonzero polynomial, sorted.
pub fn roots(f: &[u64], p: u64) -> Vec<u64> {
    let f = monic(f, p);
    if deg(&f) == 0 {
        return Vec::new();
    }
    if p < 64 {
        return (0..p).filter(|&x| eval(&f, x, p) == 0).collect();
    }
    let xp = pow_mod_u64(&[0, 1], p, &f, p);
    let g = gcd(&f, &sub(&xp, &[0, 1], p), p);
    let mut out = Vec::new();
    split_linear(&g, p, &mut out);
    out.sort_unstable();
    out
}

fn split_linear(g: &[u64], p: u64, out: &mut Vec<u64>) {
    match deg(g) {
        0 => {}
        1 => out.push((p - g[0]) % p),
        n => {
            let e = (p - 1) / 2;
            for delta in 0..p {
                let t = pow_mod_u64(&[delta, 1], e, g, p);
                let h = gcd(g, &sub(&t, &[1], p), p);
                if deg(&h) > 0 && deg(&h) < n {
                    let q = div_rem(g, &h, p).0;
                    split_linear(&h, p, out);
                    split_linear(&q, p, out);
                    return;
                }
            }
            unreachable!("a product of distinct linear factors always splits");
        }
    }
}

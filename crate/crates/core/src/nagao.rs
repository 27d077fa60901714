//! Character-sum oracle: per-prime Nagao averages, partial-sum rank
//! estimates, and Chebotarev density checks. Everything here is numerical
//! evidence; the exact rank comes from `rankformula`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{legendre, legendre_rational, squarefree_part, Rational, UniPoly};
use crate::factor::fp::{self, FpPoly};
use crate::factor::{big_omega, small_omega};
use crate::numberfield::sigma;
use crate::rankformula::{m_resultant, rank, upsilon, SurfaceABC};

/// Primes up to `q`, sorted (sieve of Eratosthenes).
pub fn primes_up_to(q: u64) -> Vec<u64> {
    let n = q as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        for j in (i * i..=n).step_by(i) {
            composite[j] = true;
        }
    }
    out
}

fn deg(f: &[u64]) -> usize {
    f.len().saturating_sub(1)
}

fn eval_leg(f: &[u64], x: u64, p: u64) -> i64 {
    legendre(fp::eval(f, x, p), p)
}

/// `S_{P1,P2}(p)`: sum of `(P2(x)/p)` over the distinct roots x of P1 mod p;
/// zero when either polynomial is not defined mod p or P1 vanishes mod p.
pub fn s_sum(p1: &UniPoly, p2: &UniPoly, p: u64) -> i64 {
    if p == 2 {
        return 0;
    }
    let (Ok(a), Ok(b)) = (fp::reduce(p1, p), fp::reduce(p2, p)) else { return 0 };
    if a.is_empty() {
        return 0;
    }
    fp::roots(&a, p).into_iter().map(|x| eval_leg(&b, x, p)).sum()
}

/// Reductions of A, B, C, B^2 - 4AC and the T-discriminant modulo p.
struct Reduced {
    a: FpPoly,
    b: FpPoly,
    c: FpPoly,
    d: FpPoly,
    disc: FpPoly,
}

/// The rational polynomials a per-prime computation reduces.
struct Prepared<'a> {
    s: &'a SurfaceABC,
    d: UniPoly,
    disc: UniPoly,
}

impl<'a> Prepared<'a> {
    fn new(s: &'a SurfaceABC) -> Self {
        Prepared { s, d: s.delta(), disc: s.disc_t() }
    }
}

fn reduce_surface(s: &SurfaceABC, p: u64) -> Result<Reduced> {
    reduce_prepared(&Prepared::new(s), p)
}

fn reduce_prepared(pr: &Prepared, p: u64) -> Result<Reduced> {
    if p == 2 {
        return Err(Error::BadPrime { prime: p, reason: "p = 2".into() });
    }
    let r = Reduced {
        a: fp::reduce(&pr.s.a, p)?,
        b: fp::reduce(&pr.s.b, p)?,
        c: fp::reduce(&pr.s.c, p)?,
        d: fp::reduce(&pr.d, p)?,
        disc: fp::reduce(&pr.disc, p)?,
    };
    if r.disc.is_empty() {
        return Err(Error::BadPrime { prime: p, reason: "every fiber is singular mod p".into() });
    }
    Ok(r)
}

/// Odd primes at which the coefficients are p-integral and the reduced
/// surface still has smooth fibers.
pub fn is_good_prime(s: &SurfaceABC, p: u64) -> bool {
    reduce_surface(s, p).is_ok()
}

/// `Σ_x (A(x)/p)` in closed form for the shapes that occur, by scanning
/// otherwise.
fn full_sum_a(a: &[u64], p: u64) -> i64 {
    match a.len() {
        0 => 0,
        1 => p as i64 * legendre(a[0], p),
        2 => 0,
        3 => {
            let disc = (a[1] * a[1] % p + p - 4 * a[2] % p * a[0] % p) % p;
            let l = legendre(a[2], p);
            if disc == 0 {
                (p as i64 - 1) * l
            } else {
                -l
            }
        }
        _ => (0..p).map(|x| eval_leg(a, x, p)).sum(),
    }
}

/// `p · (−A_E(p))` where `−A_E(p) = (1/p) Σ_{x,t} ((A(x)t^2 + B(x)t + C(x))/p)`,
/// evaluated from the roots of `gcd(A, B)` and `B^2 - 4AC` mod p.
pub fn nagao_term(s: &SurfaceABC, p: u64) -> Result<i64> {
    term_prepared(&Prepared::new(s), p)
}

fn term_prepared(pr: &Prepared, p: u64) -> Result<i64> {
    let r = reduce_prepared(pr, p)?;
    let pi = p as i64;
    // x with A(x) = B(x) = 0 contribute p (C(x)/p)
    let s1: i64 = if r.a.is_empty() && r.b.is_empty() {
        (0..p).map(|x| eval_leg(&r.c, x, p)).sum()
    } else {
        let g = fp::gcd(&r.a, &r.b, p);
        fp::roots(&g, p).into_iter().map(|x| eval_leg(&r.c, x, p)).sum()
    };
    // x with A(x) != 0: the t-sum is p [D(x) = 0] (A(x)/p) - (A(x)/p)
    let total_a = full_sum_a(&r.a, p);
    let s2: i64 = if r.d.is_empty() {
        total_a
    } else {
        fp::roots(&r.d, p).into_iter().map(|x| eval_leg(&r.a, x, p)).sum()
    };
    Ok(pi * s1 + pi * s2 - total_a)
}

/// O(p^2) double sums, both scaled by p: the unrestricted sum over all
/// (x, t), and the sum restricted to t with a smooth fiber.
pub fn nagao_term_bruteforce(s: &SurfaceABC, p: u64) -> Result<(i64, i64)> {
    let r = reduce_surface(s, p)?;
    let (mut all, mut smooth) = (0i64, 0i64);
    for t in 0..p {
        let fiber: i64 = (0..p)
            .map(|x| {
                let (a, b, c) = (fp::eval(&r.a, x, p), fp::eval(&r.b, x, p), fp::eval(&r.c, x, p));
                let v = ((a * t % p) * t % p + b * t % p + c) % p;
                legendre(v, p)
            })
            .sum();
        all += fiber;
        if fp::eval(&r.disc, t, p) != 0 {
            smooth += fiber;
        }
    }
    Ok((all, smooth))
}

/// Partial sums `R(Q') = (log Q'/Q') Σ_{p <= Q', good} −A_E(p)`.
#[derive(Clone, Debug, Serialize)]
pub struct EstimateTrace {
    pub checkpoints: Vec<(u64, f64)>,
    pub target: i64,
}

impl EstimateTrace {
    pub fn last(&self) -> Option<f64> {
        self.checkpoints.last().map(|c| c.1)
    }

    pub fn at(&self, q: u64) -> Option<f64> {
        self.checkpoints.iter().find(|c| c.0 == q).map(|c| c.1)
    }

    /// CSV with columns `Q,partial_sum,target_rank`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["Q", "partial_sum", "target_rank"]).expect("in-memory write");
        for (q, r) in &self.checkpoints {
            w.serialize((q, r, self.target)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
    }
}

/// Decades `10^3, 10^4, ...` up to `q`, plus `q` itself.
fn checkpoints(q: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(1000u64), |c| c.checked_mul(10))
        .take_while(|&c| c <= q)
        .collect();
    if out.last() != Some(&q) {
        out.push(q);
    }
    out
}

pub fn estimate_rank(s: &SurfaceABC, q: u64) -> Result<EstimateTrace> {
    if q < 1000 {
        return Err(Error::DegenerateInput("estimate_rank needs Q >= 1000".into()));
    }
    let target = rank(s)?.rank;
    let primes = primes_up_to(q);
    let pr = Prepared::new(s);
    let terms: Vec<f64> = primes
        .par_iter()
        .map(|&p| term_prepared(&pr, p).map_or(0.0, |n| n as f64 / p as f64))
        .collect();
    Ok(EstimateTrace { checkpoints: partial_sums(&primes, &terms, q), target })
}

/// Ordered partial sums at each checkpoint, scaled by `log Q' / Q'`.
fn partial_sums(primes: &[u64], terms: &[f64], q: u64) -> Vec<(u64, f64)> {
    let mut out = Vec::new();
    let mut sum = 0.0;
    let mut i = 0;
    for c in checkpoints(q) {
        while i < primes.len() && primes[i] <= c {
            sum += terms[i];
            i += 1;
        }
        out.push((c, sum * (c as f64).ln() / c as f64));
    }
    out
}

/// One empirical average against its predicted limit.
#[derive(Clone, Debug, Serialize)]
pub struct DensityCheck {
    pub name: String,
    /// `(1/π(Q)) Σ_{p <= Q} f(p)`.
    pub observed: f64,
    /// `(log Q / Q) Σ_{p <= Q} f(p)`.
    pub observed_log_normalized: f64,
    pub expected: i64,
    /// Largest deviation over checkpoints in `[Q/2, Q]`.
    pub window_deviation: f64,
}

impl DensityCheck {
    pub fn deviation(&self) -> f64 {
        (self.observed - self.expected as f64).abs()
    }
}

fn average(name: &str, q: u64, expected: i64, f: impl Fn(u64) -> i64 + Sync) -> DensityCheck {
    let primes = primes_up_to(q);
    let terms: Vec<i64> = primes.par_iter().map(|&p| f(p)).collect();
    let total: i64 = terms.iter().sum();
    let n = primes.len().max(1) as f64;
    let half = primes.partition_point(|&p| p <= q / 2);
    let mut partial: i64 = terms[..half].iter().sum();
    let mut window_deviation: f64 = 0.0;
    for (j, t) in terms.iter().enumerate().skip(half) {
        partial += t;
        let dev = (partial as f64 / (j + 1) as f64 - expected as f64).abs();
        window_deviation = window_deviation.max(dev);
    }
    DensityCheck {
        name: name.into(),
        observed: total as f64 / n,
        observed_log_normalized: total as f64 * (q as f64).ln() / q as f64,
        expected,
        window_deviation,
    }
}

/// `N_P(p)`: roots of P mod p with multiplicity, zero when p divides P or
/// a denominator.
pub fn root_count(p_: &UniPoly, p: u64) -> i64 {
    let Ok(f) = fp::reduce(p_, p) else { return 0 };
    if f.is_empty() {
        return 0;
    }
    let mut count = 0;
    for x in fp::roots(&f, p) {
        let lin = [(p - x) % p, 1];
        let mut g = f.clone();
        loop {
            let (q, r) = fp::div_rem(&g, &lin, p);
            if !r.is_empty() {
                break;
            }
            count += 1;
            g = q;
        }
    }
    count
}

/// Average of `N_P(p)` against Ω(P).
pub fn omega_check(poly: &UniPoly, q: u64) -> Result<DensityCheck> {
    let expected = big_omega(poly)? as i64;
    Ok(average("omega", q, expected, |p| root_count(poly, p)))
}

/// Average of `N_P(p) (k/p)` against σ(k, P) for irreducible P.
pub fn sigma_check(poly: &UniPoly, k: &Rational, q: u64) -> Result<DensityCheck> {
    let expected = sigma(k, poly)? as i64;
    Ok(average("sigma", q, expected, |p| {
        legendre_rational(k, p).map_or(0, |l| root_count(poly, p) * l)
    }))
}

/// Closed form of the average of `S_{P1,P2}(p)`:
/// `Ω(M_{P1*,P2}) + ω(gcd(P1,P2)) − 2 deg gcd(P1*,P2) − Υ_{P1,P2} − ω(P1)`.
pub fn s_sum_limit(p1: &UniPoly, p2: &UniPoly) -> Result<i64> {
    let star = squarefree_part(p1)?;
    let g = p1.gcd(p2)?;
    let gstar = star.gcd(p2)?;
    let om = big_omega(&m_resultant(&star, p2)?)? as i64;
    let wg = if g.is_constant() { 0 } else { small_omega(&g)? as i64 };
    Ok(om + wg - 2 * gstar.deg() as i64 - upsilon(p1, p2)? - small_omega(p1)? as i64)
}

/// Average of `S_{P1,P2}(p)` against its closed form.
pub fn s_sum_check(p1: &UniPoly, p2: &UniPoly, q: u64) -> Result<DensityCheck> {
    let expected = s_sum_limit(p1, p2)?;
    Ok(average("s_sum", q, expected, |p| s_sum(p1, p2, p)))
}

/// At sampled good primes and nonzero l: the multiplicity of l as a root
/// of `M_{P1,P2}` mod p equals `deg gcd(P1, P2 - l^2)` mod p. Returns the
/// number of (p, l) pairs checked, or the first failing pair.
pub fn lemma_mult_check(p1: &UniPoly, p2: &UniPoly, samples: usize, seed: u64) -> Result<std::result::Result<usize, (u64, u64)>> {
    let m = m_resultant(p1, p2)?;
    let disc = crate::exactalg::discriminant(p1)?;
    let lc = p1.leading().cloned().unwrap_or_default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<u64> = primes_up_to(2000).into_iter().filter(|&p| p > 50).collect();
    let mut checked = 0;
    for _ in 0..samples {
        let p = *pool.choose(&mut rng).expect("nonempty prime pool");
        let good = [&disc, &lc].iter().all(|v| crate::exactalg::rational_mod_p(v, p).is_some_and(|r| r != 0));
        let (Ok(mb), Ok(a), Ok(b)) = (fp::reduce(&m, p), fp::reduce(p1, p), fp::reduce(p2, p)) else { continue };
        if !good || mb.is_empty() {
            continue;
        }
        let l = rand::Rng::gen_range(&mut rng, 1..p);
        let l2 = l * l % p;
        let shifted = fp::sub(&b, &[l2], p);
        let predicted = if shifted.is_empty() { deg(&a) } else { deg(&fp::gcd(&a, &shifted, p)) };
        let lin = [(p - l) % p, 1];
        let (mut g, mut mult) = (mb, 0);
        loop {
            let (q, r) = fp::div_rem(&g, &lin, p);
            if !r.is_empty() {
                break;
            }
            mult += 1;
            g = q;
        }
        if mult != predicted {
            return Ok(Err((p, l)));
        }
        checked += 1;
    }
    Ok(Ok(checked))
}

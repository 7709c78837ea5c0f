//! Factorization of polynomials over ℚ.
//!
//! Squarefree decomposition uses Yun's algorithm. Squarefree parts are
//! factored over ℤ by the Zassenhaus method: factor modulo a small prime
//! (distinct-degree then Cantor–Zassenhaus equal-degree splitting), Hensel
//! lift to a modulus above the Mignotte bound, then recombine.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ratfield::{Poly, Q};

/// Squarefree decomposition `p = c·∏ s_i^i` with monic, pairwise coprime,
/// squarefree `s_i`. Constants yield an empty list.
pub fn squarefree_decomposition(p: &Poly<Q>) -> Vec<(Poly<Q>, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a);
        let c = d.exact_div(&a);
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

pub fn is_squarefree(p: &Poly<Q>) -> bool {
    p.gcd(&p.derivative()).degree().unwrap_or(0) == 0
}

/// Monic irreducible factors over ℚ with multiplicities, sorted canonically.
pub fn factor(p: &Poly<Q>) -> Vec<(Poly<Q>, usize)> {
    let mut out = Vec::new();
    for (s, mult) in squarefree_decomposition(p) {
        for fac in factor_squarefree_integer(primitive_integer(&s)) {
            out.push((integer_to_monic(&fac), mult));
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    out
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn irreducible_factors(p: &Poly<Q>) -> Vec<Poly<Q>> {
    factor(p).into_iter().map(|(f, _)| f).collect()
}

/// Clears denominators and content; the result has positive leading coefficient.
pub fn primitive_integer(p: &Poly<Q>) -> Vec<BigInt> {
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut ints {
            *c /= &g;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in &mut ints {
            *c = -&*c;
        }
    }
    ints
}

/// Monic gcd in ℚ[x] via the primitive remainder sequence over ℤ.
pub fn rational_gcd(a: &Poly<Q>, b: &Poly<Q>) -> Poly<Q> {
    let (mut f, mut g) = (primitive_integer(a), primitive_integer(b));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_empty() {
        let r = primitive(pseudo_rem(&f, &g));
        f = std::mem::replace(&mut g, r);
    }
    integer_to_monic(&f)
}

/// lc(g)^k·f mod g, for the smallest k that keeps the arithmetic in ℤ.
fn pseudo_rem(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let dg = degree(g);
    let lc = g.last().expect("nonzero divisor");
    let mut r = f.to_vec();
    while r.len() > dg {
        let k = r.len() - 1;
        let c = r[k].clone();
        if !lc.is_one() {
            for x in r.iter_mut() {
                *x *= lc;
            }
        }
        for (j, gj) in g.iter().enumerate() {
            r[k - dg + j] -= &c * gj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

pub fn integer_to_monic(f: &[BigInt]) -> Poly<Q> {
    Poly::new(f.iter().map(|c| Q::from_integer(c.clone())).collect()).monic()
}

fn degree(f: &[BigInt]) -> usize {
    f.len().saturating_sub(1)
}

/// Exact division in ℤ[x]; `None` if `g` does not divide `f`.
fn exact_div_int(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = degree(g);
    if f.len() < g.len() {
        return None;
    }
    let lc = g.last()?;
    let mut rem = f.to_vec();
    let mut quot = vec![BigInt::zero(); f.len() - dg];
    for k in (0..quot.len()).rev() {
        let (q, r) = rem[k + dg].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        if q.is_zero() {
            continue;
        }
        for (j, c) in g.iter().enumerate() {
            rem[k + j] -= &q * c;
        }
        quot[k] = q;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

fn primitive_part(mut f: Vec<BigInt>) -> Vec<BigInt> {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    let g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut f {
            *c /= &g;
        }
    }
    if f.last().is_some_and(|c| c.is_negative()) {
        for c in &mut f {
            *c = -&*c;
        }
    }
    f
}

/// Factors a primitive squarefree integer polynomial into irreducibles.
fn factor_squarefree_integer(f: Vec<BigInt>) -> Vec<Vec<BigInt>> {
    let n = degree(&f);
    if n <= 1 {
        return vec![f];
    }
    let lc = f[n].clone();
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();

    // pick the prime (among a few admissible ones) giving the fewest modular factors
    let mut best: Option<(u64, Vec<zp::P>)> = None;
    let mut tried = 0;
    for p in small_odd_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = zp::monic(&zp::from_int(&f, p), p);
        let dfp = zp::from_int(&df, p);
        if zp::gcd(&fp, &dfp, p).len() != 1 {
            continue;
        }
        let facs = zp::factor_squarefree(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 4 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("some prime keeps the polynomial squarefree");
    if modular.len() == 1 {
        return vec![f];
    }

    // Mignotte-style bound on lc·(coefficients of any factor), doubled for the symmetric range
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = lc.abs() * (norm2.sqrt() + 1u32) * (BigInt::one() << n) * 2u32;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }

    let lc_inv = mod_inverse(&lc, &modulus);
    let monic_f: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&modulus)).collect();
    let mut lifted = hensel_lift(&monic_f, &modular, p, k, &modulus);

    let half = &modulus >> 1u32;
    let mut f = f;
    let mut result = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        for subset in (0..lifted.len()).combinations(s) {
            let lcf = f.last().expect("nonzero").clone();
            let mut cand = vec![lcf];
            for &i in &subset {
                cand = mul_mod(&cand, &lifted[i], &modulus);
            }
            let cand: Vec<BigInt> = cand
                .into_iter()
                .map(|c| {
                    let c = c.mod_floor(&modulus);
                    if c > half {
                        c - &modulus
                    } else {
                        c
                    }
                })
                .collect();
            let cand = primitive_part(cand);
            if let Some(quot) = exact_div_int(&f, &cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                result.push(cand);
                f = primitive_part(quot);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    result.push(f);
    result
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.into_iter().map(|c| c.mod_floor(m)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts a monic modular factorization of `f` (monic mod p^k) to mod p^k.
fn hensel_lift(f: &[BigInt], factors: &[zp::P], p: u64, k: u32, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.iter().map(|c| c.mod_floor(modulus)).collect()];
    }
    let mid = factors.len() / 2;
    let g = factors[..mid].iter().fold(vec![1u64], |acc, x| zp::mul(&acc, x, p));
    let h = factors[mid..].iter().fold(vec![1u64], |acc, x| zp::mul(&acc, x, p));
    let (gl, hl) = lift_pair(f, &g, &h, p, k);
    let mut out = hensel_lift(&gl, &factors[..mid], p, k, modulus);
    out.extend(hensel_lift(&hl, &factors[mid..], p, k, modulus));
    out
}

/// Linear Hensel lifting of f ≡ g·h (mod p) to mod p^k; g, h monic.
fn lift_pair(f: &[BigInt], g: &zp::P, h: &zp::P, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s, t) = zp::ext_gcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let to_int = |v: &zp::P| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let mut gl = to_int(g);
    let mut hl = to_int(h);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    for _ in 1..k {
        let mp = &m * &pb;
        let prod = mul_mod(&gl, &hl, &mp);
        let len = f.len().max(prod.len());
        let e: Vec<u64> = (0..len)
            .map(|i| {
                let fi = f.get(i).cloned().unwrap_or_default();
                let pi = prod.get(i).cloned().unwrap_or_default();
                let diff = (fi - pi).mod_floor(&mp);
                (diff / &m).to_u64().expect("reduced mod p")
            })
            .collect();
        let e = zp::trimmed(e);
        let (quot, dh) = zp::divrem(&zp::mul(&s, &e, p), h, p);
        let dg = zp::add(&zp::mul(&t, &e, p), &zp::mul(&quot, g, p), p);
        for (i, c) in dg.iter().enumerate() {
            gl[i] += &m * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            hl[i] += &m * BigInt::from(*c);
        }
        m = mp;
    }
    (gl, hl)
}

/// Resultant of two nonzero integer polynomials (coefficients low to high),
/// by Euclid modulo word-sized primes and Chinese remaindering up to the
/// Hadamard bound.
pub fn integer_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let a = trim_int(a);
    let b = trim_int(b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    let norm2 = |v: &[BigInt]| v.iter().map(|c| c * c).sum::<BigInt>();
    // |Res| ≤ ‖a‖^db · ‖b‖^da; stop once M² > 4·bound²
    let bound2 = num_traits::pow::pow(norm2(&a), db) * num_traits::pow::pow(norm2(&b), da);
    let target = bound2 * 4u32;
    let mut acc = BigInt::zero();
    let mut modulus = BigInt::one();
    for &p in resultant_primes() {
        let (ap, bp) = (zp::from_int(&a, p), zp::from_int(&b, p));
        if ap.len() != a.len() || bp.len() != b.len() {
            continue;
        }
        let r = zp::resultant(&ap, &bp, p);
        let pb = BigInt::from(p);
        let cur = acc.mod_floor(&pb).to_u64().expect("reduced");
        let minv = zp::inv_scalar(modulus.mod_floor(&pb).to_u64().expect("reduced"), p);
        let t = (r + p - cur) % p * minv % p;
        acc += &modulus * BigInt::from(t);
        modulus *= pb;
        if &modulus * &modulus > target {
            if &acc * 2u32 > modulus {
                acc -= &modulus;
            }
            return acc;
        }
    }
    euclid_resultant(a, b)
}

/// Fallback when the prime table is exhausted: Euclid over ℚ.
fn euclid_resultant(a: Vec<BigInt>, b: Vec<BigInt>) -> BigInt {
    let to_q = |v: Vec<BigInt>| Poly::new(v.into_iter().map(Q::from_integer).collect());
    let (mut a, mut b) = (to_q(a), to_q(b));
    let mut acc = Q::one();
    loop {
        let da = a.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        if db == 0 {
            return (acc * num_traits::pow::pow(b.leading_coeff(), da)).to_integer();
        }
        let r = a.rem(&b);
        let Some(dr) = r.degree() else { return BigInt::zero() };
        acc *= num_traits::pow::pow(b.leading_coeff(), da - dr);
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        a = b;
        b = r;
    }
}

fn trim_int(v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Primes just below 2^31, so products of residues fit in u64.
fn resultant_primes() -> &'static [u64] {
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| (1u64 << 30..1u64 << 31).rev().filter(|&n| is_prime_u31(n)).take(1024).collect())
}

/// Miller-Rabin with bases 2, 3, 5, 7, deterministic below 3.2·10⁹.
fn is_prime_u31(n: u64) -> bool {
    if n < 2 || n.is_multiple_of(2) {
        return n == 2;
    }
    let mulmod = |a: u64, b: u64| a * b % n;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    [2u64, 3, 5, 7].iter().all(|&w| {
        if w % n == 0 {
            return true;
        }
        let mut x = powmod(w, d);
        if x == 1 || x == n - 1 {
            return true;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                return true;
            }
        }
        false
    })
}

fn small_odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Polynomial arithmetic over ℤ/p for small odd primes p.
mod zp {
    use super::*;

    pub type P = Vec<u64>;

    pub fn trimmed(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn from_int(f: &[BigInt], p: u64) -> P {
        let pb = BigInt::from(p);
        trimmed(f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect())
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn inv_scalar(a: u64, p: u64) -> u64 {
        inv(a, p)
    }

    /// Res(a, b) mod p for a, b of full degree mod p.
    pub fn resultant(a: &P, b: &P, p: u64) -> u64 {
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut acc = 1u64;
        loop {
            let (da, db) = (a.len() - 1, b.len() - 1);
            let lb = *b.last().expect("nonzero");
            if db == 0 {
                return acc * pow(lb, da as u64, p) % p;
            }
            let r = rem(&a, &b, p);
            if r.is_empty() {
                return 0;
            }
            let dr = r.len() - 1;
            acc = acc * pow(lb, (da - dr) as u64, p) % p;
            if da * db % 2 == 1 {
                acc = (p - acc) % p;
            }
            a = b;
            b = r;
        }
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        acc
    }

    pub fn add(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        trimmed((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
    }

    pub fn sub(a: &P, b: &P, p: u64) -> P {
        let n = a.len().max(b.len());
        trimmed((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
    }

    pub fn mul(a: &P, b: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trimmed(out)
    }

    pub fn monic(a: &P, p: u64) -> P {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => {
                let li = inv(lc, p);
                a.iter().map(|c| c * li % p).collect()
            }
        }
    }

    pub fn divrem(a: &P, b: &P, p: u64) -> (P, P) {
        let db = b.len() - 1;
        if a.len() <= db {
            return (Vec::new(), a.clone());
        }
        let li = inv(*b.last().expect("nonzero divisor"), p);
        let mut rem = a.clone();
        let mut quot = vec![0u64; a.len() - db];
        for k in (0..quot.len()).rev() {
            let c = rem[k + db] * li % p;
            if c == 0 {
                continue;
            }
            for (j, d) in b.iter().enumerate() {
                rem[k + j] = (rem[k + j] + p - c * d % p) % p;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (trimmed(quot), trimmed(rem))
    }

    pub fn rem(a: &P, b: &P, p: u64) -> P {
        divrem(a, b, p).1
    }

    pub fn gcd(a: &P, b: &P, p: u64) -> P {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    /// (g, s, t) with s·a + t·b = g monic.
    pub fn ext_gcd(a: &P, b: &P, p: u64) -> (P, P, P) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            let t = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let li = inv(*r0.last().expect("nonzero gcd"), p);
        let sc = |v: &P| trimmed(v.iter().map(|c| c * li % p).collect());
        (sc(&r0), sc(&s0), sc(&t0))
    }

    fn powmod(base: &P, e: &BigUint, m: &P, p: u64) -> P {
        let mut acc = vec![1u64];
        let b = rem(base, m, p);
        for i in (0..e.bits()).rev() {
            acc = rem(&mul(&acc, &acc, p), m, p);
            if e.bit(i) {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
        }
        acc
    }

    /// Monic irreducible factors of a monic squarefree polynomial mod p.
    pub fn factor_squarefree(f: &P, p: u64) -> Vec<P> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5167_6d61);
        let mut out = Vec::new();
        for (g, d) in distinct_degree(f, p) {
            equal_degree(&g, d, p, &mut rng, &mut out);
        }
        out.sort();
        out
    }

    fn distinct_degree(f: &P, p: u64) -> Vec<(P, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x = vec![0u64, 1];
        let mut h = rem(&x, &f, p);
        let pe = BigUint::from(p);
        let mut i = 1;
        while f.len() > 2 * i {
            h = powmod(&h, &pe, &f, p);
            let g = gcd(&sub(&h, &x, p), &f, p);
            if g.len() > 1 {
                f = divrem(&f, &g, p).0;
                h = rem(&h, &f, p);
                out.push((g, i));
            }
            i += 1;
        }
        if f.len() > 1 {
            let d = f.len() - 1;
            out.push((f, d));
        }
        out
    }

    fn equal_degree(g: &P, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<P>) {
        let n = g.len() - 1;
        if n == d {
            out.push(g.clone());
            return;
        }
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = trimmed((0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = sub(&powmod(&a, &e, g, p), &vec![1u64], p);
            let h = gcd(&b, g, p);
            if h.len() > 1 && h.len() < g.len() {
                let other = divrem(g, &h, p).0;
                equal_degree(&h, d, p, rng, out);
                equal_degree(&monic(&other, p), d, p, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::int;

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&n| int(n)).collect())
    }

    fn product(factors: &[(Poly<Q>, usize)]) -> Poly<Q> {
        factors.iter().fold(Poly::one(), |acc, (f, e)| acc.mul(&f.pow(*e as u32)))
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^3 (x+2)^2 (x^2+1)
        let f = p(&[-1, 1]).pow(3).mul(&p(&[2, 1]).pow(2)).mul(&p(&[1, 0, 1]));
        let sq = squarefree_decomposition(&f);
        assert_eq!(sq, vec![(p(&[1, 0, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn factors_products_of_known_irreducibles() {
        let f = p(&[-2, 0, 1]).mul(&p(&[1, 1, 1])).mul(&p(&[3, 2])).mul(&p(&[0, 1]));
        let facs = factor(&f);
        assert_eq!(facs.len(), 4);
        assert_eq!(product(&facs), f.monic());
        assert!(facs.iter().all(|(u, e)| *e == 1 && u.leading_coeff() == int(1)));
    }

    #[test]
    fn swinnerton_dyer_style_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
        let f = p(&[1, 0, -10, 0, 1]);
        assert_eq!(factor(&f), vec![(f.clone(), 1)]);
    }

    #[test]
    fn mahler_images_and_cyclotomics() {
        // x^8 - 3 irreducible (Eisenstein)
        let f = p(&[-3, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(factor(&f).len(), 1);
        // x^8 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)
        let g = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let facs = factor(&g);
        assert_eq!(facs.iter().map(|(u, _)| u.degree().unwrap()).collect::<Vec<_>>(), vec![1, 1, 2, 4]);
        assert_eq!(product(&facs), g);
    }

    #[test]
    fn non_monic_leading_coefficients() {
        // (6x^2 + 1)(10x^3 - 7)(3x + 5)
        let f = p(&[1, 0, 6]).mul(&p(&[-7, 0, 0, 10])).mul(&p(&[5, 3]));
        let facs = factor(&f);
        assert_eq!(facs.len(), 3);
        assert_eq!(product(&facs), f.monic());
    }

    #[test]
    fn primitive_integer_clears_denominators() {
        let f = Poly::new(vec![crate::ratfield::rat(-1, 2), crate::ratfield::rat(-1, 3)]);
        assert_eq!(primitive_integer(&f), vec![BigInt::from(3), BigInt::from(2)]);
    }
}

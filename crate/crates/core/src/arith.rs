//! Integer arithmetic: primality, factoring, modular helpers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    if m <= 1 << 32 && a < m && b < m {
        return a * b % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, m: u64) -> u64 {
    if a < m && b < m {
        let s = a.wrapping_add(b);
        return if s >= m || s < a { s.wrapping_sub(m) } else { s };
    }
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Reduce a big integer into `[0, m)`.
pub fn mod_u64(a: &BigInt, m: u64) -> u64 {
    let r = a % BigInt::from(m);
    if r.is_negative() {
        (r + BigInt::from(m)).to_u64().unwrap()
    } else {
        r.to_u64().unwrap()
    }
}

/// Reduce a rational number modulo `m`; `None` when the denominator is not invertible.
pub fn rat_mod_u64(a: &BigRational, m: u64) -> Option<u64> {
    let n = mod_u64(a.numer(), m);
    let d = mod_u64(a.denom(), m);
    invmod(d, m).map(|di| mulmod(n, di, m))
}

fn mr_witness(n: u64, d: u64, s: u32, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let mut x = powmod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022]
        .iter()
        .all(|&a| mr_witness(n, d, s, a))
}

/// Miller-Rabin with a fixed set of bases; deterministic below 2^64.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.is_negative() || n.is_zero() || n.is_one() {
        return false;
    }
    if let Some(m) = n.to_u64() {
        return is_prime(m);
    }
    for p in small_primes() {
        if (n % BigInt::from(*p)).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| primes_up_to(1 << 16))
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}

/// Iterator over primes in increasing order, starting after `start`.
pub struct PrimeIter {
    cur: u64,
}

impl PrimeIter {
    pub fn after(start: u64) -> Self {
        PrimeIter { cur: start }
    }
}

impl Iterator for PrimeIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        self.cur = next_prime(self.cur);
        Some(self.cur)
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn isqrt_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while (x as u128) * (x as u128) > n as u128 {
        x -= 1;
    }
    while ((x + 1) as u128) * ((x + 1) as u128) <= n as u128 {
        x += 1;
    }
    x
}

fn pollard_brent_u64(n: u64, seed: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let c = seed % (n - 1) + 1;
    let f = |x: u64| addmod(mulmod(x, x, n), c, n);
    let mut y = seed % n;
    let m = 128u64;
    let mut g = 1u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    g
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut seed = 2;
    loop {
        let d = pollard_brent_u64(n, seed);
        if d != n && d != 1 {
            factor_u64_into(d, out);
            factor_u64_into(n / d, out);
            return;
        }
        seed += 1;
    }
}

/// Factorisation of a positive 64-bit integer as sorted `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut ps = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n.is_multiple_of(p) {
            ps.push(p);
            n /= p;
        }
    }
    factor_u64_into(n, &mut ps);
    group_sorted(ps)
}

fn group_sorted<T: Ord + Clone>(mut v: Vec<T>) -> Vec<(T, u32)> {
    v.sort();
    let mut out: Vec<(T, u32)> = Vec::new();
    for p in v {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn pollard_brent_big(n: &BigInt, seed: u64) -> BigInt {
    let c = BigInt::from(seed);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(seed + 1);
    let m = 64u64;
    let mut g = BigInt::one();
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > (1 << 26) {
            return n.clone();
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    g
}

fn factor_big_into(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if let Some(m) = n.to_u64() {
        let mut v = Vec::new();
        factor_u64_into(m, &mut v);
        out.extend(v.into_iter().map(BigInt::from));
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let mut seed = 1;
    loop {
        let d = pollard_brent_big(&n, seed);
        if d != n && !d.is_one() {
            let e = &n / &d;
            factor_big_into(d, out);
            factor_big_into(e, out);
            return;
        }
        seed += 1;
    }
}

/// Factorisation of `|n|` (nonzero) as sorted `(prime, exponent)` pairs.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs();
    let mut ps: Vec<BigInt> = Vec::new();
    for &p in small_primes().iter().take(1000) {
        let bp = BigInt::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            ps.push(bp.clone());
        }
        if m.is_one() {
            break;
        }
    }
    factor_big_into(m, &mut ps);
    group_sorted(ps)
}

/// Prime divisors of `n` that fit in 64 bits; larger factors are returned separately.
pub fn prime_divisors_u64(n: &BigInt) -> Vec<u64> {
    factor(n)
        .into_iter()
        .filter_map(|(p, _)| p.to_u64())
        .collect()
}

/// `p`-adic valuation; `u32::MAX` for zero.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Kronecker symbol `(a/n)` for `n > 0`.
pub fn kronecker(a: &BigInt, n: u64) -> i32 {
    assert!(n > 0);
    let mut n = n;
    let mut result = 1i32;
    let mut a_mod: u64;
    let v2 = n.trailing_zeros();
    if v2 > 0 {
        if a.is_even() {
            return 0;
        }
        let a8 = mod_u64(a, 8);
        if v2 % 2 == 1 && (a8 == 3 || a8 == 5) {
            result = -result;
        }
        n >>= v2;
    }
    if n == 1 {
        return result;
    }
    a_mod = mod_u64(a, n);
    let mut m = n;
    while a_mod != 0 {
        while a_mod.is_multiple_of(2) {
            a_mod /= 2;
            let r = m % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a_mod, &mut m);
        if a_mod % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a_mod %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

pub fn kronecker_i64(a: i64, n: u64) -> i32 {
    kronecker(&BigInt::from(a), n)
}

/// Legendre symbol `(a/p)` for an odd prime `p`, with `a` already reduced.
pub fn legendre_u64(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if powmod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root modulo an odd prime by Tonelli-Shanks.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if legendre_u64(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while legendre_u64(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Smallest quadratic non-residue modulo an odd prime.
pub fn nonresidue(p: u64) -> u64 {
    let mut g = 2;
    while legendre_u64(g, p) != -1 {
        g += 1;
    }
    g
}

/// `p* = (-1)^((p-1)/2) p` for an odd prime.
pub fn p_star(p: u64) -> i64 {
    if p % 4 == 1 {
        p as i64
    } else {
        -(p as i64)
    }
}

/// Squarefree part of a nonzero integer, sign preserved.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let mut r = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (p, e) in factor(n) {
        if e % 2 == 1 {
            r *= p;
        }
    }
    r
}

/// Squarefree representative of a nonzero rational modulo squares.
pub fn squarefree_part_rat(q: &BigRational) -> BigInt {
    squarefree_part(&(q.numer() * q.denom()))
}

/// Whether a rational number is a square in Q.
pub fn is_rational_square(q: &BigRational) -> bool {
    if q.is_zero() {
        return true;
    }
    if q.is_negative() {
        return false;
    }
    is_square(q.numer()) && is_square(q.denom())
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Integer cube root when `n` is a perfect cube.
pub fn exact_cbrt(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    if &(&r * &r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn is_rational_cube(q: &BigRational) -> bool {
    exact_cbrt(q.numer()).is_some() && exact_cbrt(q.denom()).is_some()
}

/// Inverse modulo a big modulus.
pub fn invmod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Symmetric residue in `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Find `n/d` with `|n| <= nb`, `0 < d <= db` and `n = a d (mod m)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt, nb: &BigInt, db: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > nb {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > db {
        return None;
    }
    let q = BigRational::new(r1, t1);
    if !(q.denom().gcd(m)).is_one() {
        return None;
    }
    Some(q)
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: &BigInt) -> BigInt {
    factor(n).into_iter().fold(BigInt::one(), |acc, (p, _)| acc * p)
}

pub fn biguint_of(n: u64) -> BigUint {
    BigUint::from(n)
}

pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive_prime(n), "{n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
        assert!(!is_prime(3825123056546413051));
    }

    #[test]
    fn factor_big_roundtrip() {
        let n: BigInt = "2516182631903110787298020637311191353245413".parse().unwrap();
        let f = factor(&n);
        let expect: Vec<(BigInt, u32)> = vec![
            (BigInt::from(7), 4),
            (BigInt::from(2381), 7),
            (BigInt::from(134177), 3),
        ];
        assert_eq!(f, expect);
        let m: BigInt = "1000000000000000003000000000000000002".parse().unwrap();
        let prod = factor(&m)
            .into_iter()
            .fold(BigInt::one(), |a, (p, e)| a * p.pow(e));
        assert_eq!(prod, m);
    }

    #[test]
    fn kronecker_matches_euler() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for a in -50i64..50 {
                let e = legendre_u64(a.rem_euclid(p as i64) as u64, p);
                assert_eq!(kronecker_i64(a, p), e, "({a}/{p})");
            }
        }
        assert_eq!(kronecker_i64(5, 8), -1);
        assert_eq!(kronecker_i64(-7, 2), 1);
        assert_eq!(kronecker_i64(5, 2), -1);
    }

    #[test]
    fn reconstruct_small_fraction() {
        let m = BigInt::from(1_000_000_007u64);
        let a = BigInt::from(3) * invmod_big(&BigInt::from(7), &m).unwrap() % &m;
        let b = BigInt::from(1000);
        let q = rational_reconstruct(&a, &m, &b, &b).unwrap();
        assert_eq!(q, BigRational::new(3.into(), 7.into()));
    }

    proptest! {
        #[test]
        fn sqrt_mod_squares(x in 1u64..100000, pi in 1usize..200) {
            let p = primes_up_to(2000)[pi];
            let a = mulmod(x, x, p);
            let r = sqrt_mod(a, p).unwrap();
            prop_assert_eq!(mulmod(r, r, p), a);
        }

        #[test]
        fn factor_u64_product(n in 1u64..u64::MAX / 2) {
            let f = factor_u64(n);
            let prod: u128 = f.iter().map(|(p, e)| (*p as u128).pow(*e)).product();
            prop_assert_eq!(prod, n as u128);
            for (p, _) in f { prop_assert!(is_prime(p)); }
        }
    }
}

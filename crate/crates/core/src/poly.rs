//! Dense univariate polynomials over Z and F_q, modular factoring, Hensel lifting.

use crate::arith::{self, invmod, mod_u64, mulmod, primes_up_to};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(a: BigInt) -> Self {
        Self::new(vec![a])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut r = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::new(r)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        self.c
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, a| acc * x + BigRational::from(a.clone()))
    }

    pub fn eval_mod(&self, x: u64, q: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, a| (mulmod(acc, x, q) + mod_u64(a, q)) % q)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(self.c.iter().map(|a| a / &g).collect())
    }

    /// `f(a x + b)`.
    pub fn compose_linear(&self, a: &BigInt, b: &BigInt) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        self.compose(&lin)
    }

    pub fn compose(&self, g: &Self) -> Self {
        self.c
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(g).add(&Self::constant(a.clone())))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dn = d.degree();
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let t = r[i + dn].clone();
            if t.is_zero() {
                continue;
            }
            for j in 0..=dn {
                r[i + j] -= &t * &d.c[j];
            }
            q[i] = t;
        }
        r.truncate(dn);
        (Self::new(q), Self::new(r))
    }

    /// Exact quotient over Z, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let dn = d.degree();
        let lc = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len() - dn];
        for i in (0..q.len()).rev() {
            let (t, rem) = r[i + dn].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            if t.is_zero() {
                continue;
            }
            for j in 0..=dn {
                r[i + j] -= &t * &d.c[j];
            }
            q[i] = t;
        }
        if r.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// Pseudo-remainder `lc(d)^k * self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dn = d.degree();
        let lc = d.lc();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= dn {
            let shift = r.degree() - dn;
            let t = r.lc();
            let mut sh = vec![BigInt::zero(); shift];
            sh.extend(d.c.iter().map(|x| x * &t));
            r = r.scale(&lc).sub(&Self::new(sh));
        }
        r
    }

    /// Greatest common divisor over Q, returned primitive.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = o.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Squarefree part over Q, primitive.
    pub fn squarefree(&self) -> Self {
        let p = self.primitive();
        let g = p.gcd(&p.derivative());
        if g.degree() == 0 {
            p
        } else {
            p.div_exact(&g)
                .expect("gcd divides polynomial")
                .primitive()
        }
    }

    pub fn to_fp(&self, q: u64) -> FpPoly {
        FpPoly::new(q, self.c.iter().map(|a| mod_u64(a, q)).collect())
    }

    /// Coefficients reduced into the symmetric range modulo `m`.
    pub fn reduce_sym(&self, m: &BigInt) -> Self {
        Self::new(self.c.iter().map(|a| arith::symmetric_mod(a, m)).collect())
    }

    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        Self::new(self.c.iter().map(|a| a.mod_floor(m)).collect())
    }

    /// `lc^(n-1) f(x / lc)`, a monic polynomial with the same splitting field.
    pub fn monic_transform(&self) -> Self {
        let n = self.degree();
        let lc = self.lc();
        let mut c = Vec::with_capacity(n + 1);
        let mut pw = BigInt::one();
        let mut pows = vec![BigInt::one(); n + 1];
        for p in pows.iter_mut().take(n) {
            *p = pw.clone();
            pw *= &lc;
        }
        for i in 0..=n {
            if i == n {
                c.push(BigInt::one());
            } else {
                c.push(&self.c[i] * &pows[n - 1 - i]);
            }
        }
        Self::new(c)
    }

    /// Inverse of `monic_transform` on a factor: primitive part of `g(lc x)`.
    pub fn undo_monic_transform(&self, lc: &BigInt) -> Self {
        self.compose_linear(lc, &BigInt::zero()).primitive()
    }

    pub fn l2_norm_bound(&self) -> BigInt {
        let s: BigInt = self.c.iter().map(|a| a * a).sum();
        s.sqrt() + 1
    }

    /// Discriminant-free check that reduction mod `q` is squarefree of full degree.
    pub fn is_good_prime(&self, q: u64) -> bool {
        if mod_u64(&self.lc(), q) == 0 {
            return false;
        }
        let f = self.to_fp(q);
        f.gcd(&f.derivative()).degree() == 0
    }
}

/// Polynomial over F_q, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub q: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(q: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= q;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { q, c }
    }

    pub fn zero(q: u64) -> Self {
        FpPoly { q, c: Vec::new() }
    }

    pub fn one(q: u64) -> Self {
        Self::new(q, vec![1])
    }

    pub fn x(q: u64) -> Self {
        Self::new(q, vec![0, 1])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            self.q,
            (0..n)
                .map(|i| arith::addmod(self.coeff(i), o.coeff(i), self.q))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            self.q,
            (0..n)
                .map(|i| arith::submod(self.coeff(i), o.coeff(i), self.q))
                .collect(),
        )
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.q, self.c.iter().map(|&a| mulmod(a, k, self.q)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.q);
        }
        let q = self.q as u128;
        let mut r = vec![0u128; self.c.len() + o.c.len() - 1];
        let small = self.q < (1 << 31);
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                if small {
                    r[i + j] += a as u128 * b as u128;
                } else {
                    r[i + j] = (r[i + j] + a as u128 * b as u128) % q;
                }
            }
        }
        Self::new(self.q, r.into_iter().map(|x| (x % q) as u64).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.q).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.c.len() < d.c.len() {
            return (Self::zero(self.q), self.clone());
        }
        let q = self.q;
        let inv = invmod(d.lc(), q).expect("invertible leading coefficient");
        let dn = d.degree();
        let mut r = self.c.clone();
        let mut quo = vec![0u64; r.len() - dn];
        for i in (0..quo.len()).rev() {
            let t = mulmod(r[i + dn], inv, q);
            if t == 0 {
                continue;
            }
            for j in 0..=dn {
                r[i + j] = arith::submod(r[i + j], mulmod(t, d.c[j], q), q);
            }
            quo[i] = t;
        }
        r.truncate(dn);
        (Self::new(q, quo), Self::new(q, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s a + t b = g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let q = self.q;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(q), Self::zero(q));
        let (mut t0, mut t1) = (Self::zero(q), Self::one(q));
        while !r1.is_zero() {
            let (qq, r2) = r0.divrem(&r1);
            let s2 = s0.sub(&qq.mul(&s1));
            let t2 = t0.sub(&qq.mul(&t1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = invmod(r0.lc(), q).unwrap_or(1);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.q,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, i as u64 % self.q, self.q))
                .collect(),
        )
    }

    pub fn mulmod_poly(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut r = Self::one(self.q).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            r = r.mulmod_poly(&r, m);
            if e.bit(i) {
                r = r.mulmod_poly(&base, m);
            }
        }
        r
    }

    pub fn powmod_u64(&self, e: u64, m: &Self) -> Self {
        self.powmod(&BigUint::from(e), m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &a| arith::addmod(mulmod(acc, x, self.q), a, self.q))
    }

    /// Distinct-degree factorisation of a monic squarefree polynomial.
    pub fn ddf(&self) -> Vec<(FpPoly, usize)> {
        let q = self.q;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(q);
        let mut h = x.clone();
        let mut d = 0;
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.powmod_u64(q, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree() > 0 {
                f = f.divrem(&g).0.monic();
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if f.degree() > 0 {
            let dd = f.degree();
            out.push((f, dd));
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus), odd `q` only.
    pub fn edf(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let q = self.q;
        let n = self.degree();
        if n == d {
            return vec![self.monic()];
        }
        if q == 2 {
            return self.edf_char2(d, rng);
        }
        let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a = Self::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect());
            if a.degree() == 0 {
                continue;
            }
            let b = a.powmod(&e, self).sub(&Self::one(q));
            let g = self.gcd(&b);
            if g.degree() > 0 && g.degree() < n {
                let h = self.divrem(&g).0.monic();
                let mut r = g.edf(d, rng);
                r.extend(h.edf(d, rng));
                return r;
            }
        }
    }

    fn edf_char2(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = self.degree();
        loop {
            let a = Self::new(2, (0..n).map(|_| rng.gen_range(0..2)).collect());
            if a.degree() == 0 {
                continue;
            }
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mulmod_poly(&t, self);
                acc = acc.add(&t);
            }
            let g = self.gcd(&acc);
            if g.degree() > 0 && g.degree() < n {
                let h = self.divrem(&g).0.monic();
                let mut r = g.edf_char2(d, rng);
                r.extend(h.edf_char2(d, rng));
                return r;
            }
            if d == 1 && n > 1 {
                for root in 0..2 {
                    if self.eval(root) == 0 {
                        let lin = Self::new(2, vec![root, 1]);
                        let h = self.divrem(&lin).0;
                        let mut r = vec![lin];
                        r.extend(h.edf_char2(1, rng));
                        return r;
                    }
                }
            }
        }
    }

    /// Irreducible monic factors of a squarefree polynomial.
    pub fn factor_squarefree(&self) -> Vec<FpPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.q);
        let mut out = Vec::new();
        for (g, d) in self.ddf() {
            out.extend(g.edf(d, &mut rng));
        }
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.c.cmp(&b.c)));
        out
    }

    /// Sorted multiset of irreducible factor degrees of a squarefree polynomial.
    pub fn degree_pattern(&self) -> Vec<usize> {
        let mut v = Vec::new();
        for (g, d) in self.ddf() {
            for _ in 0..g.degree() / d {
                v.push(d);
            }
        }
        v.sort_unstable();
        v
    }

    /// Distinct roots in F_q.
    pub fn roots(&self) -> Vec<u64> {
        let q = self.q;
        if self.is_zero() {
            return Vec::new();
        }
        if q <= 64 {
            return (0..q).filter(|&x| self.eval(x) == 0).collect();
        }
        let f = self.monic();
        let xq = Self::x(q).powmod_u64(q, &f);
        let g = f.gcd(&xq.sub(&Self::x(q)));
        if g.degree() == 0 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        let mut r: Vec<u64> = g
            .edf(1, &mut rng)
            .into_iter()
            .map(|l| (q - l.coeff(0)) % q)
            .collect();
        r.sort_unstable();
        r
    }

    pub fn to_zpoly(&self) -> ZPoly {
        ZPoly::new(self.c.iter().map(|&a| BigInt::from(a)).collect())
    }
}

/// Reduce a Z-polynomial modulo `m` after multiplication.
fn mul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    a.mul(b).reduce_mod(m)
}

fn divrem_mod(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let (q, r) = a.divrem_monic(d);
    (q.reduce_mod(m), r.reduce_mod(m))
}

/// Lift a monic factorisation `f = g h (mod q)` to modulus `q^(2^steps)`.
fn hensel_pair(f: &ZPoly, g: &FpPoly, h: &FpPoly, target: &BigInt) -> ZPoly {
    let q = g.q;
    let (one, s, t) = g.xgcd(h);
    debug_assert_eq!(one.degree(), 0);
    let mut m = BigInt::from(q);
    let mut g = g.to_zpoly();
    let mut h = h.to_zpoly();
    let mut s = s.to_zpoly();
    let mut t = t.to_zpoly();
    while &m < target {
        let m2 = &m * &m;
        let e = f.sub(&g.mul(&h)).reduce_mod(&m2);
        let (qq, r) = divrem_mod(&mul_mod(&s, &e, &m2), &h, &m2);
        let gs = g.add(&t.mul(&e)).add(&qq.mul(&g)).reduce_mod(&m2);
        let hs = h.add(&r).reduce_mod(&m2);
        let b = s
            .mul(&gs)
            .add(&t.mul(&hs))
            .sub(&ZPoly::one())
            .reduce_mod(&m2);
        let (c, d) = divrem_mod(&mul_mod(&s, &b, &m2), &hs, &m2);
        s = s.sub(&d).reduce_mod(&m2);
        t = t.sub(&t.mul(&b)).sub(&c.mul(&gs)).reduce_mod(&m2);
        g = gs;
        h = hs;
        m = m2;
    }
    g
}

/// Lift each monic modular factor of a monic `f` to modulus at least `target`.
/// Returns the lifted factors and the modulus reached.
pub fn hensel_lift_all(f: &ZPoly, factors: &[FpPoly], target: &BigInt) -> (Vec<ZPoly>, BigInt) {
    assert!(f.is_monic());
    let q = factors[0].q;
    let mut m = BigInt::from(q);
    while &m < target {
        m = &m * &m;
    }
    let fq = f.to_fp(q);
    let lifted = factors
        .iter()
        .map(|g| {
            let h = fq.divrem(g).0;
            hensel_pair(f, g, &h, &m).reduce_mod(&m)
        })
        .collect();
    (lifted, m)
}

/// Newton lift of a simple root of `f` modulo `q` to modulus `q^k`.
pub fn lift_root(f: &ZPoly, r: u64, q: u64, k: u32) -> BigInt {
    let df = f.derivative();
    let target = BigInt::from(q).pow(k);
    let mut m = BigInt::from(q);
    let mut x = BigInt::from(r);
    while m < target {
        m = (&m * &m).min(target.clone());
        let fx = f.eval(&x).mod_floor(&m);
        let dfx = df.eval(&x).mod_floor(&m);
        let inv = arith::invmod_big(&dfx, &m).expect("simple root");
        x = (x - fx * inv).mod_floor(&m);
    }
    x
}

fn good_primes(f: &ZPoly, count: usize) -> Vec<u64> {
    primes_up_to(100_000)
        .into_iter()
        .skip(1)
        .filter(|&q| f.is_good_prime(q))
        .take(count)
        .collect()
}

fn try_combination(
    cur: &ZPoly,
    lifted: &[(ZPoly, usize)],
    idx: &[usize],
    m: &BigInt,
) -> Option<(ZPoly, ZPoly)> {
    let c0 = idx
        .iter()
        .fold(BigInt::one(), |a, &i| (a * lifted[i].0.coeff(0)).mod_floor(m));
    let c0 = arith::symmetric_mod(&c0, m);
    let f0 = cur.coeff(0);
    if c0.is_zero() || !(&f0 % &c0).is_zero() {
        return None;
    }
    let cand = idx
        .iter()
        .fold(ZPoly::one(), |a, &i| mul_mod(&a, &lifted[i].0, m))
        .reduce_sym(m);
    cur.div_exact(&cand).map(|q| (cand, q))
}

/// Advance `idx` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Distinct irreducible factors over Q of degree at most `maxdeg`, as primitive
/// integer polynomials with positive leading coefficient.
pub fn rational_factors_up_to(f: &ZPoly, maxdeg: usize) -> Vec<ZPoly> {
    let g = f.squarefree();
    if g.degree() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut g = g;
    // Strip powers of x so the constant-term test is informative.
    if g.coeff(0).is_zero() {
        out.push(ZPoly::x());
        g = g.div_exact(&ZPoly::x()).unwrap();
        if g.degree() == 0 {
            return out;
        }
    }
    if g.degree() <= maxdeg && g.degree() == 1 {
        out.push(g.primitive());
        return out;
    }
    let lc = g.lc();
    let big = g.monic_transform();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    for q in good_primes(&big, 8) {
        let facs = big.to_fp(q).factor_squarefree();
        let small = facs.iter().filter(|h| h.degree() <= maxdeg).count();
        if facs.len() == 1 {
            if big.degree() <= maxdeg {
                out.push(g.primitive());
            }
            return out;
        }
        if best.as_ref().is_none_or(|(_, b)| {
            small < b.iter().filter(|h| h.degree() <= maxdeg).count()
        }) {
            best = Some((q, facs));
        }
    }
    let (_, facs) = best.expect("a good prime exists");
    let bound = big.l2_norm_bound() * BigInt::from(2u64).pow(big.degree() as u32 + 1) * 2;
    let (lifted, m) = hensel_lift_all(&big, &facs, &bound);
    let mut remaining: Vec<(ZPoly, usize)> = lifted
        .into_iter()
        .map(|h| {
            let d = h.degree();
            (h, d)
        })
        .collect();
    let mut cur = big;
    let mut size = 1;
    'sizes: while size <= maxdeg && size <= remaining.len() {
        let n = remaining.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| remaining[i].1).sum();
            if deg <= maxdeg && deg < cur.degree() {
                if let Some((cand, quo)) = try_combination(&cur, &remaining, &idx, &m) {
                    out.push(cand.undo_monic_transform(&lc));
                    cur = quo;
                    remaining = remaining
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| !idx.contains(i))
                        .map(|(_, h)| h)
                        .collect();
                    continue 'sizes;
                }
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        size += 1;
    }
    if !remaining.is_empty() && cur.degree() <= maxdeg {
        out.push(cur.undo_monic_transform(&lc));
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.cmp(b)));
    out.dedup();
    out
}

/// Distinct rational roots.
pub fn rational_roots(f: &ZPoly) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = rational_factors_up_to(f, 1)
        .into_iter()
        .map(|l| BigRational::new(-l.coeff(0), l.coeff(1)))
        .collect();
    r.sort();
    r
}

/// Irreducibility over Q of a polynomial with nonzero discriminant.
pub fn is_irreducible(f: &ZPoly) -> bool {
    let n = f.degree();
    if n <= 1 {
        return n == 1;
    }
    if f.squarefree().degree() != n {
        return false;
    }
    // Degree-pattern obstruction: a factor of degree k must appear as a subset sum mod every good q.
    let mut possible = vec![true; n];
    possible[0] = false;
    for q in good_primes(f, 40) {
        let pat = f.to_fp(q).degree_pattern();
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in pat {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for (k, p) in possible.iter_mut().enumerate() {
            *p = *p && sums[k];
        }
        if !possible.iter().any(|&b| b) {
            return true;
        }
    }
    rational_factors_up_to(f, n / 2).is_empty()
}

/// Evaluate a rational-coefficient relation by clearing denominators: is `f(g(t))` divisible by `h(t)`?
/// `g` is given as `num / den` with integer `num`.
pub fn composes_to_zero_mod(f: &ZPoly, num: &ZPoly, den: &BigInt, h: &ZPoly) -> bool {
    assert!(h.is_monic());
    let n = f.degree();
    let mut acc = ZPoly::zero();
    let mut gp = ZPoly::one();
    for i in 0..=n {
        let dpow = den.pow((n - i) as u32);
        acc = acc.add(&gp.scale(&(f.coeff(i) * dpow)));
        gp = gp.mul(num).divrem_monic(h).1;
    }
    acc.divrem_monic(h).1.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn factor_mod_q_recombines() {
        let f = z(&[-1, 0, 0, 0, 0, 0, 0, 1]).to_fp(29);
        let facs = f.factor_squarefree();
        let prod = facs.iter().fold(FpPoly::one(29), |a, b| a.mul(b));
        assert_eq!(prod, f.monic());
        assert_eq!(f.degree_pattern(), vec![1, 1, 1, 1, 1, 1, 1]);
        let g = z(&[1, 1, 0, 1]).to_fp(2);
        assert_eq!(g.degree_pattern(), vec![3]);
    }

    #[test]
    fn rational_factors_found() {
        // (x - 2)(2x + 3)(x^2 + 1)(x^3 - 5)
        let f = z(&[-2, 1])
            .mul(&z(&[3, 2]))
            .mul(&z(&[1, 0, 1]))
            .mul(&z(&[-5, 0, 0, 1]));
        let fs = rational_factors_up_to(&f, 3);
        assert_eq!(fs.len(), 4);
        assert!(fs.contains(&z(&[3, 2])));
        assert!(fs.contains(&z(&[-5, 0, 0, 1])));
        let roots = rational_roots(&f.mul(&f));
        assert_eq!(
            roots,
            vec![
                BigRational::new((-3).into(), 2.into()),
                BigRational::from_integer(2.into())
            ]
        );
    }

    #[test]
    fn swinnerton_dyer_has_no_small_factors() {
        // x^4 - 10x^2 + 1 is irreducible but splits mod every prime.
        let f = z(&[1, 0, -10, 0, 1]);
        assert!(rational_factors_up_to(&f, 3).is_empty());
        assert!(is_irreducible(&f));
        assert!(!is_irreducible(&z(&[1, 0, -10, 0, 1]).mul(&z(&[1, 1]))));
    }

    #[test]
    fn root_lifting() {
        let f = z(&[-2, 0, 1]);
        // 3^2 = 9 = 2 mod 7
        let r = lift_root(&f, 3, 7, 10);
        let m = BigInt::from(7).pow(10);
        assert!(f.eval(&r).mod_floor(&m).is_zero());
    }

    #[test]
    fn composition_check() {
        let f = z(&[-2, 0, 1]);
        // g(t) = -t maps a root of t^2 - 2 to another root.
        assert!(composes_to_zero_mod(&f, &z(&[0, -1]), &BigInt::one(), &f));
        assert!(!composes_to_zero_mod(&f, &z(&[1, -1]), &BigInt::one(), &f));
    }
}

//! Traces of Frobenius: character sums for small primes, baby-step giant-step above.

use crate::arith::{self, addmod, isqrt_u64, mod_u64, mulmod};
use crate::curve::RationalEC;
use crate::error::{Error, Result};
use crate::tate::{self, ReductionType};
use num_bigint::BigInt;
use rayon::prelude::*;

/// Primes at or below this bound are counted by a character sum.
pub const NAIVE_LIMIT: u64 = 2000;

/// `a_l` at a prime; bad primes carry the multiplicative sign or 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrobTrace {
    Good(i64),
    Bad(i8),
}

impl FrobTrace {
    pub fn value(&self) -> i64 {
        match *self {
            FrobTrace::Good(a) => a,
            FrobTrace::Bad(e) => e as i64,
        }
    }

    pub fn is_good(&self) -> bool {
        matches!(self, FrobTrace::Good(_))
    }

    /// Residue in `[0, p)`.
    pub fn residue(&self, p: u64) -> u64 {
        self.value().rem_euclid(p as i64) as u64
    }
}

/// Per-curve state for repeated trace computations.
#[derive(Clone, Debug)]
pub struct FrobeniusEngine {
    curve: RationalEC,
    short: (BigInt, BigInt),
    /// Fundamental discriminant (absolute value) of the CM field, if any.
    cm_field: Option<u64>,
}

impl FrobeniusEngine {
    pub fn new(e: &RationalEC) -> Self {
        let cm_field = e.cm_discriminant().map(|d| fundamental_cm(d.unsigned_abs()));
        FrobeniusEngine {
            curve: e.clone(),
            short: e.short_integral(),
            cm_field,
        }
    }

    pub fn curve(&self) -> &RationalEC {
        &self.curve
    }

    /// `a_l(E)` for a model minimal at `l`.
    pub fn ap(&self, ell: u64) -> FrobTrace {
        let e = &self.curve;
        if mod_u64(e.discriminant(), ell) != 0 {
            return FrobTrace::Good(self.ap_good(ell));
        }
        if mod_u64(e.c4(), ell) == 0 {
            return FrobTrace::Bad(0);
        }
        let split = if ell == 2 {
            match tate::local_data(e, 2).reduction {
                ReductionType::Multiplicative { split } => split,
                _ => unreachable!("c4 is a unit at a multiplicative prime"),
            }
        } else {
            arith::kronecker(&-e.c6().clone(), ell) == 1
        };
        FrobTrace::Bad(if split { 1 } else { -1 })
    }

    /// `a_l` at a prime of good reduction.
    pub fn ap_good(&self, ell: u64) -> i64 {
        let e = &self.curve;
        if ell < 5 {
            return ell as i64 + 1 - count_points_long(e, ell) as i64;
        }
        if ell <= NAIVE_LIMIT {
            return ap_character_sum(e, ell);
        }
        let a = mod_u64(&self.short.0, ell);
        let b = mod_u64(&self.short.1, ell);
        if let Some(d) = self.cm_field {
            if arith::kronecker_i64(-(d as i64), ell) == -1 {
                return 0;
            }
            if let Some(ts) = cm_trace_candidates(d, ell) {
                if let Some(n) = count_from_candidates(a, b, ell, &ts) {
                    return ell as i64 + 1 - n as i64;
                }
            }
        }
        ell as i64 + 1 - count_bsgs(a, b, ell) as i64
    }
}

fn fundamental_cm(d: u64) -> u64 {
    match d {
        12 | 27 => 3,
        16 => 4,
        28 => 7,
        _ => d,
    }
}

/// Possible Frobenius traces `t` with `t^2 + d v^2 = 4l` for a CM field of discriminant `-d`.
pub fn cm_trace_candidates(d: u64, ell: u64) -> Option<Vec<i64>> {
    let (x, y) = cornacchia4(d, ell)?;
    let (x, y) = (x as i64, y as i64);
    let mut ts = vec![x, -x];
    match d {
        3 => {
            for t in [(x + 3 * y) / 2, (x - 3 * y) / 2] {
                ts.push(t);
                ts.push(-t);
            }
        }
        4 => {
            ts.push(2 * y);
            ts.push(-2 * y);
        }
        _ => {}
    }
    Some(ts)
}

/// Solve `x^2 + d y^2 = 4 l` for a discriminant `-d`.
fn cornacchia4(d: u64, ell: u64) -> Option<(u64, u64)> {
    let dm = (ell - d % ell) % ell;
    let mut x0 = arith::sqrt_mod(dm, ell)?;
    if x0 % 2 != d % 2 {
        x0 = ell - x0;
    }
    let (mut a, mut b) = (2 * ell, x0);
    let l = isqrt_u64(4 * ell);
    while b > l {
        let r = a % b;
        a = b;
        b = r;
    }
    let rest = 4 * ell - b * b;
    if !rest.is_multiple_of(d) {
        return None;
    }
    let c = rest / d;
    let s = isqrt_u64(c);
    (s * s == c).then_some((b, s))
}

/// `a_l(E)` for a model minimal at `l`.
pub fn ap(e: &RationalEC, ell: u64) -> FrobTrace {
    FrobeniusEngine::new(e).ap(ell)
}

/// `a_l` at a prime of good reduction.
pub fn ap_good(e: &RationalEC, ell: u64) -> i64 {
    FrobeniusEngine::new(e).ap_good(ell)
}

#[cfg(test)]
fn short_coeffs(e: &RationalEC, ell: u64) -> (u64, u64) {
    let (a, b) = e.short_integral();
    (mod_u64(&a, ell), mod_u64(&b, ell))
}

/// Brute-force count of projective points over `F_l` on the long model.
pub fn count_points_long(e: &RationalEC, ell: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = e.a_invariants().clone().map(|x| mod_u64(&x, ell));
    let mut n = 1;
    for x in 0..ell {
        for y in 0..ell {
            let lhs = (y * y + a1 * x * y + a3 * y) % ell;
            let rhs = (x * x * x + a2 * x * x + a4 * x + a6) % ell;
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

/// `-sum chi(4x^3 + b2 x^2 + 2 b4 x + b6)` for odd `l`.
pub fn ap_character_sum(e: &RationalEC, ell: u64) -> i64 {
    let mut chi = vec![-1i8; ell as usize];
    chi[0] = 0;
    for x in 1..ell {
        chi[mulmod(x, x, ell) as usize] = 1;
    }
    let b2 = mod_u64(e.b2(), ell);
    let b4 = mod_u64(e.b4(), ell);
    let b6 = mod_u64(e.b6(), ell);
    let c3 = 4 % ell;
    let c1 = mulmod(2, b4, ell);
    let mut s = 0i64;
    for x in 0..ell {
        let mut v = addmod(mulmod(c3, x, ell), b2, ell);
        v = addmod(mulmod(v, x, ell), c1, ell);
        v = addmod(mulmod(v, x, ell), b6, ell);
        s += chi[v as usize] as i64;
    }
    -s
}

/// Montgomery arithmetic modulo an odd `n < 2^63`.
#[derive(Clone, Copy, Debug)]
pub struct Mont {
    n: u64,
    ninv: u64,
    r2: u64,
}

impl Mont {
    pub fn new(n: u64) -> Self {
        assert!(n % 2 == 1 && n < 1 << 63);
        let mut x = n;
        for _ in 0..6 {
            x = x.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(x)));
        }
        let r = ((1u128 << 64) % n as u128) as u64;
        let r2 = ((r as u128 * r as u128) % n as u128) as u64;
        Mont {
            n,
            ninv: x.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.ninv);
        let u = ((t + m as u128 * self.n as u128) >> 64) as u64;
        if u >= self.n {
            u - self.n
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    pub fn to(&self, a: u64) -> u64 {
        self.mul(a % self.n, self.r2)
    }

    pub fn from(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.to(inv(self.from(a), self.n))
    }
}

/// Jacobian point `(X : Y : Z)` in Montgomery form, `Z = 0` at infinity.
type Jac = (u64, u64, u64);

const INF: Jac = (1, 1, 0);

#[derive(Clone, Copy)]
struct ShortFp {
    m: Mont,
    /// Plain residues.
    a: u64,
    b: u64,
    /// Montgomery form of `a`.
    am: u64,
    p: u64,
}

#[inline]
fn inv(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u64
}

/// Inverses of nonzero Montgomery residues with one modular inversion.
fn batch_inv(m: &Mont, v: &[u64]) -> Vec<u64> {
    let mut prefix = Vec::with_capacity(v.len());
    let mut acc = m.to(1);
    for &x in v {
        prefix.push(acc);
        acc = m.mul(acc, x);
    }
    let mut inv_acc = m.inv(acc);
    let mut out = vec![0u64; v.len()];
    for i in (0..v.len()).rev() {
        out[i] = m.mul(inv_acc, prefix[i]);
        inv_acc = m.mul(inv_acc, v[i]);
    }
    out
}

impl ShortFp {
    fn new(a: u64, b: u64, p: u64) -> Self {
        let m = Mont::new(p);
        ShortFp {
            m,
            a,
            b,
            am: m.to(a),
            p,
        }
    }

    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        addmod(mulmod(addmod(mulmod(x, x, p), self.a, p), x, p), self.b, p)
    }

    fn double(&self, q: Jac) -> Jac {
        let m = &self.m;
        let (x, y, z) = q;
        if z == 0 || y == 0 {
            return INF;
        }
        let xx = m.mul(x, x);
        let yy = m.mul(y, y);
        let yyyy = m.mul(yy, yy);
        let zz = m.mul(z, z);
        let xyy = m.mul(x, yy);
        let s2 = m.add(xyy, xyy);
        let s = m.add(s2, s2);
        let xx3 = m.add(m.add(xx, xx), xx);
        let mm = m.add(xx3, m.mul(self.am, m.mul(zz, zz)));
        let x3 = m.sub(m.mul(mm, mm), m.add(s, s));
        let y8 = {
            let t = m.add(yyyy, yyyy);
            let t = m.add(t, t);
            m.add(t, t)
        };
        let y3 = m.sub(m.mul(mm, m.sub(s, x3)), y8);
        let z3 = m.mul(m.add(y, y), z);
        (x3, y3, z3)
    }

    fn add(&self, u: Jac, v: Jac) -> Jac {
        let m = &self.m;
        if u.2 == 0 {
            return v;
        }
        if v.2 == 0 {
            return u;
        }
        let (x1, y1, z1) = u;
        let (x2, y2, z2) = v;
        let z1z1 = m.mul(z1, z1);
        let z2z2 = m.mul(z2, z2);
        let u1 = m.mul(x1, z2z2);
        let u2 = m.mul(x2, z1z1);
        let s1 = m.mul(y1, m.mul(z2, z2z2));
        let s2 = m.mul(y2, m.mul(z1, z1z1));
        if u1 == u2 {
            return if s1 == s2 { self.double(u) } else { INF };
        }
        let h = m.sub(u2, u1);
        let r = m.sub(s2, s1);
        let hh = m.mul(h, h);
        let hhh = m.mul(h, hh);
        let v = m.mul(u1, hh);
        let x3 = m.sub(m.sub(m.mul(r, r), hhh), m.add(v, v));
        let y3 = m.sub(m.mul(r, m.sub(v, x3)), m.mul(s1, hhh));
        let z3 = m.mul(m.mul(z1, z2), h);
        (x3, y3, z3)
    }

    fn mul(&self, mut k: u64, u: Jac) -> Jac {
        let mut r = INF;
        let mut base = u;
        while k > 0 {
            if k & 1 == 1 {
                r = self.add(r, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(base);
            }
        }
        r
    }

    fn kills(&self, k: u64, u: Jac) -> bool {
        self.mul(k, u).2 == 0
    }

    /// Affine coordinates (Montgomery form) of finite Jacobian points.
    fn affine(&self, pts: &[Jac]) -> Vec<(u64, u64)> {
        let m = &self.m;
        let zi = batch_inv(m, &pts.iter().map(|q| q.2).collect::<Vec<_>>());
        pts.iter()
            .zip(zi)
            .map(|(q, zi)| {
                let zi2 = m.mul(zi, zi);
                (m.mul(q.0, zi2), m.mul(q.1, m.mul(zi2, zi)))
            })
            .collect()
    }

    /// Deterministic point with affine `x >= start`, in Jacobian form.
    fn point_from(&self, start: u64) -> (Jac, u64) {
        let mut x = start % self.p;
        loop {
            let r = self.rhs(x);
            if let Some(y) = arith::sqrt_mod(r, self.p) {
                let one = self.m.to(1);
                return ((self.m.to(x), self.m.to(y), one), x + 1);
            }
            x = (x + 1) % self.p;
        }
    }

    /// All `k` in `[lo, hi]` with `[k] pt = O`, or `None` when `pt` has small order.
    fn multiples_in(&self, pt: Jac, lo: u64, hi: u64) -> Option<Vec<u64>> {
        let w = hi - lo + 1;
        let m = isqrt_u64(w / 2) + 1;
        let mut baby = Vec::with_capacity(m as usize);
        let mut cur = INF;
        for _ in 1..=m {
            cur = self.add(cur, pt);
            if cur.2 == 0 {
                return None;
            }
            baby.push(cur);
        }
        let mut table: Vec<(u64, u64, u64)> = self
            .affine(&baby)
            .into_iter()
            .enumerate()
            .map(|(i, (x, y))| (x, y, i as u64 + 1))
            .collect();
        table.sort_unstable();
        if table.windows(2).any(|t| t[0].0 == t[1].0) {
            return None;
        }
        let step = 2 * m + 1;
        let giant = self.mul(step, pt);
        let start = lo.saturating_sub(m).max(1);
        let mut r = self.mul(start + m, pt);
        let mut bases = Vec::new();
        let mut pts = Vec::new();
        let mut out = Vec::new();
        let mut base = start + m;
        while base <= hi + m {
            if r.2 == 0 {
                out.push(base);
            } else {
                bases.push(base);
                pts.push(r);
            }
            r = self.add(r, giant);
            base += step;
        }
        for (b, (x, y)) in bases.iter().zip(self.affine(&pts)) {
            if let Ok(i) = table.binary_search_by_key(&x, |e| e.0) {
                let (_, yj, j) = table[i];
                // [b]P = -[r]P: same y means r = -j.
                out.push(if yj == y { b - j } else { b + j });
            }
        }
        out.retain(|&k| k >= lo && k <= hi);
        out.sort_unstable();
        Some(out)
    }

    /// Exact order of `pt`, given the group order lies in `[lo, hi]`.
    fn order(&self, pt: Jac, lo: u64, hi: u64) -> u64 {
        let multiple = match self.multiples_in(pt, lo, hi) {
            Some(v) if !v.is_empty() => v[0],
            _ => {
                let mut q = INF;
                let mut k = 0u64;
                loop {
                    q = self.add(q, pt);
                    k += 1;
                    if q.2 == 0 {
                        break k;
                    }
                    assert!(k <= 4 * (hi - lo + 2), "order search overran");
                }
            }
        };
        let mut n = multiple;
        for (q, _) in arith::factor_u64(multiple) {
            while n % q == 0 && self.kills(n / q, pt) {
                n /= q;
            }
        }
        n
    }
}

/// `#E(F_p)` for `y^2 = x^3 + a x + b`, `p > 3` prime and the curve nonsingular.
pub fn count_bsgs(a: u64, b: u64, p: u64) -> u64 {
    let e = ShortFp::new(a, b, p);
    let w = isqrt_u64(4 * p);
    let lo = p + 1 - w;
    let hi = p + 1 + w;
    let (pt, mut x1) = e.point_from(0);
    if let Some(v) = e.multiples_in(pt, lo, hi) {
        if v.len() == 1 {
            return v[0];
        }
    }
    let g = arith::nonresidue(p);
    let g2 = mulmod(g, g, p);
    let tw = ShortFp::new(mulmod(a, g2, p), mulmod(b, mulmod(g2, g, p), p), p);
    let total = 2 * p + 2;
    let mut l1 = e.order(pt, lo, hi);
    let mut l2 = 1u64;
    let mut x2 = 0u64;
    for attempt in 0..64 {
        if let Some(n) = unique_candidate(lo, hi, total, l1, l2) {
            return n;
        }
        if attempt % 2 == 0 {
            let (pt, nx) = tw.point_from(x2);
            x2 = nx;
            l2 = lcm(l2, tw.order(pt, lo, hi));
        } else {
            let (pt, nx) = e.point_from(x1);
            x1 = nx;
            l1 = lcm(l1, e.order(pt, lo, hi));
        }
    }
    count_exhaustive(a, b, p)
}

/// `#E(F_p)` chosen among candidate traces by testing which kills random points.
pub fn count_from_candidates(a: u64, b: u64, p: u64, traces: &[i64]) -> Option<u64> {
    let e = ShortFp::new(a, b, p);
    let mut live: Vec<u64> = traces
        .iter()
        .map(|&t| (p as i64 + 1 - t) as u64)
        .collect();
    live.sort_unstable();
    live.dedup();
    let mut x = 0;
    for _ in 0..8 {
        if live.len() <= 1 {
            break;
        }
        let (pt, nx) = e.point_from(x);
        x = nx;
        live.retain(|&n| e.kills(n, pt));
    }
    match live.len() {
        1 => Some(live[0]),
        _ => None,
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / arith::gcd_u64(a, b) * b
}

fn unique_candidate(lo: u64, hi: u64, total: u64, l1: u64, l2: u64) -> Option<u64> {
    let width = hi - lo;
    let mut found = None;
    if width / l1 <= 1_000_000 {
        let mut n = lo.div_ceil(l1) * l1;
        while n <= hi {
            if (total - n).is_multiple_of(l2) {
                if found.is_some() {
                    return None;
                }
                found = Some(n);
            }
            n += l1;
        }
        found
    } else if width / l2 <= 1_000_000 {
        let tlo = total - hi;
        let mut m = tlo.div_ceil(l2) * l2;
        while m <= total - lo {
            let n = total - m;
            if n.is_multiple_of(l1) {
                if found.is_some() {
                    return None;
                }
                found = Some(n);
            }
            m += l2;
        }
        found
    } else {
        None
    }
}

/// Point count by summing Legendre symbols; `O(p log p)`.
pub fn count_exhaustive(a: u64, b: u64, p: u64) -> u64 {
    let e = ShortFp::new(a, b, p);
    let mut n = 1u64;
    for x in 0..p {
        n += (1 + arith::legendre_u64(e.rhs(x), p)) as u64;
    }
    n
}

/// Traces at a fixed ordered list of primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceVector {
    pub primes: Vec<u64>,
    pub values: Vec<FrobTrace>,
}

impl TraceVector {
    pub fn compute(e: &RationalEC, primes: &[u64]) -> Self {
        let eng = FrobeniusEngine::new(e);
        TraceVector {
            primes: primes.to_vec(),
            values: primes.iter().map(|&l| eng.ap(l)).collect(),
        }
    }

    pub fn compute_par(e: &RationalEC, primes: &[u64]) -> Self {
        let eng = FrobeniusEngine::new(e);
        TraceVector {
            primes: primes.to_vec(),
            values: primes.par_iter().map(|&l| eng.ap(l)).collect(),
        }
    }

    /// Values reduced mod `p`.
    pub fn residues(&self, p: u64) -> Vec<u64> {
        self.values.iter().map(|t| t.residue(p)).collect()
    }

    pub fn all_good(&self) -> bool {
        self.values.iter().all(|t| t.is_good())
    }

    pub fn check_window(&self, other: &Self) -> Result<()> {
        if self.primes != other.primes {
            return Err(Error::WindowMismatch);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ec(a: [i64; 5]) -> RationalEC {
        RationalEC::from_i64(a).unwrap()
    }

    #[test]
    fn traces_of_11a1() {
        let e = ec([0, -1, 1, -10, -20]);
        let expect = [(2, -2), (3, -1), (5, 1), (7, -2), (13, 4), (17, -2), (19, 0), (23, -1)];
        for (l, a) in expect {
            assert_eq!(ap(&e, l), FrobTrace::Good(a), "l = {l}");
        }
        assert_eq!(ap(&e, 11), FrobTrace::Bad(1));
    }

    #[test]
    fn multiplicative_signs_of_14a1() {
        let e = ec([1, 0, 1, 4, -6]);
        assert_eq!(ap(&e, 2), FrobTrace::Bad(-1));
        assert_eq!(ap(&e, 7), FrobTrace::Bad(1));
        assert_eq!(ap(&e, 3), FrobTrace::Good(-2));
    }

    #[test]
    fn bsgs_matches_character_sum_across_threshold() {
        let curves = [
            ec([0, -1, 1, -10, -20]),
            ec([0, 0, 1, -7, 6]),
            ec([1, -1, 1, -3, 3]),
            ec([0, 0, 0, -1, 0]),
            ec([0, 0, 1, 0, 0]),
        ];
        for e in &curves {
            for l in arith::primes_up_to(6000).into_iter().filter(|&l| l > 5) {
                if mod_u64(e.discriminant(), l) == 0 {
                    continue;
                }
                let (a, b) = short_coeffs(e, l);
                let n = count_bsgs(a, b, l);
                assert_eq!(l as i64 + 1 - n as i64, ap_character_sum(e, l), "{e} at {l}");
            }
        }
    }

    #[test]
    fn large_prime_count_consistent_with_twist() {
        let e = ec([0, 0, 1, -7, 6]);
        for l in [1_000_003u64, 998_244_353, 1_000_000_000_039] {
            let (a, b) = short_coeffs(&e, l);
            let n = count_bsgs(a, b, l);
            let g = arith::nonresidue(l);
            let g2 = mulmod(g, g, l);
            let nt = count_bsgs(mulmod(a, g2, l), mulmod(b, mulmod(g2, g, l), l), l);
            assert_eq!(n + nt, 2 * l + 2);
            let c = ShortFp::new(a, b, l);
            assert!(c.kills(n, c.point_from(3).0));
        }
        let l = 1_000_003u64;
        let (a, b) = short_coeffs(&e, l);
        assert_eq!(count_bsgs(a, b, l), count_exhaustive(a, b, l));
    }

    #[test]
    fn cm_fast_path_matches_bsgs() {
        for (d, _) in crate::curve::CM_J_TABLE {
            let e = crate::curve::cm_j(d)
                .map(|j| RationalEC::from_j(&j.into()).unwrap())
                .unwrap();
            let eng = FrobeniusEngine::new(&e);
            let (a, b) = e.short_model();
            for l in arith::primes_up_to(40000).into_iter().filter(|&l| l > NAIVE_LIMIT).step_by(7) {
                if mod_u64(e.discriminant(), l) == 0 {
                    continue;
                }
                let n = count_bsgs(mod_u64(&a, l), mod_u64(&b, l), l);
                assert_eq!(eng.ap_good(l), l as i64 + 1 - n as i64, "D = {d}, l = {l}");
            }
        }
    }

    fn arb_curve() -> impl Strategy<Value = RationalEC> {
        prop::array::uniform5(-50i64..50)
            .prop_filter_map("singular", |a| RationalEC::from_i64(a).ok())
    }

    proptest! {
        #[test]
        fn hasse_bound(e in arb_curve(), i in 0usize..300) {
            let l = arith::primes_up_to(40000)[i * 13 + 1];
            let e = e.minimal_model();
            let a = ap(&e, l).value();
            prop_assert!((a * a) as u64 <= 4 * l);
        }

        #[test]
        fn naive_count_agrees(e in arb_curve(), i in 0usize..30) {
            let l = arith::primes_up_to(200)[i + 2];
            if mod_u64(e.discriminant(), l) != 0 {
                prop_assert_eq!(ap_character_sum(&e, l), l as i64 + 1 - count_points_long(&e, l) as i64);
            }
        }

        #[test]
        fn twist_relation(e in arb_curve(), d in prop::sample::select(vec![-1i64, 2, -3, 5, -7, 13])) {
            let e = e.minimal_model();
            let t = e.quadratic_twist(&d.into()).unwrap();
            for l in arith::primes_up_to(3000).into_iter().skip(2).step_by(17) {
                let (x, y) = (ap(&e, l), ap(&t, l));
                if x.is_good() && y.is_good() {
                    let k = arith::kronecker_i64(d, l) as i64;
                    prop_assert_eq!(y.value(), k * x.value());
                }
            }
        }
    }
}

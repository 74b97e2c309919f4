//! Weierstrass models over Q, invariants, minimal models and twists.

use crate::arith::{self, valuation};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Integral long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalEC {
    a: [BigInt; 5],
    b2: BigInt,
    b4: BigInt,
    b6: BigInt,
    b8: BigInt,
    c4: BigInt,
    c6: BigInt,
    disc: BigInt,
}

impl fmt::Debug for RationalEC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalEC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

impl RationalEC {
    pub fn new(a: [BigInt; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = &a;
        let b2 = a1 * a1 + 4 * a2;
        let b4 = a1 * a3 + 2 * a4;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - 24 * &b4;
        let b2cube: BigInt = &b2 * &b2 * &b2;
        let c6 = -b2cube + 36 * &b2 * &b4 - 216 * &b6;
        let t1: BigInt = &b2 * &b2 * &b8;
        let disc: BigInt = -t1 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6
            + 9 * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(Error::Singular);
        }
        Ok(RationalEC {
            a,
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
        })
    }

    pub fn from_i64(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(BigInt::from))
    }

    /// Integral model of `y^2 = x^3 + a x + b` for rational `a`, `b`, not necessarily minimal.
    pub fn from_short_unreduced(a: &BigRational, b: &BigRational) -> Result<Self> {
        let mut u = BigInt::one();
        for den in [a.denom(), b.denom()] {
            if !den.is_one() {
                for (p, _) in arith::factor(den) {
                    let pi = p.to_u64().map(|q| {
                        let va = if a.is_zero() { 0 } else { valuation(a.denom(), q) };
                        let vb = if b.is_zero() { 0 } else { valuation(b.denom(), q) };
                        va.div_ceil(4).max(vb.div_ceil(6))
                    });
                    let e = pi.unwrap_or(1);
                    u *= p.pow(e);
                }
            }
        }
        let u2 = &u * &u;
        let u4 = &u2 * &u2;
        let u6 = &u4 * &u2;
        let aa = a * BigRational::from(u4);
        let bb = b * BigRational::from(u6);
        debug_assert!(aa.is_integer() && bb.is_integer());
        Self::new([
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            aa.to_integer(),
            bb.to_integer(),
        ])
    }

    /// Minimal model of `y^2 = x^3 + a x + b`.
    pub fn from_short(a: &BigRational, b: &BigRational) -> Result<Self> {
        Ok(Self::from_short_unreduced(a, b)?.minimal_model())
    }

    pub fn from_short_int(a: &BigInt, b: &BigInt) -> Result<Self> {
        Self::from_short(&BigRational::from(a.clone()), &BigRational::from(b.clone()))
    }

    /// Minimal model of a curve with the given `j`-invariant.
    pub fn from_j(j: &BigRational) -> Result<Self> {
        if j.is_zero() {
            return Self::from_i64([0, 0, 1, 0, 0]);
        }
        let k = BigRational::from_integer(1728.into());
        if *j == k {
            return Self::from_i64([0, 0, 0, -1, 0]);
        }
        let t = &k - j;
        let a = BigRational::from_integer(3.into()) * j * &t;
        let b = BigRational::from_integer(2.into()) * j * &t * &t;
        Self::from_short(&a, &b)
    }

    pub fn a_invariants(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn a1(&self) -> &BigInt {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigInt {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigInt {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigInt {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigInt {
        &self.a[4]
    }
    pub fn b2(&self) -> &BigInt {
        &self.b2
    }
    pub fn b4(&self) -> &BigInt {
        &self.b4
    }
    pub fn b6(&self) -> &BigInt {
        &self.b6
    }
    pub fn b8(&self) -> &BigInt {
        &self.b8
    }
    pub fn c4(&self) -> &BigInt {
        &self.c4
    }
    pub fn c6(&self) -> &BigInt {
        &self.c6
    }
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn j_invariant(&self) -> BigRational {
        BigRational::new(&self.c4 * &self.c4 * &self.c4, self.disc.clone())
    }

    /// Coefficients `(A, B)` of the isomorphic model `y^2 = x^3 - 27 c4 x - 54 c6`.
    pub fn short_integral(&self) -> (BigInt, BigInt) {
        (-27 * &self.c4, -54 * &self.c6)
    }

    /// `(-27 c4, -54 c6)` of the minimal model, divided by `(u^4, u^6)` for the largest integer `u`
    /// that keeps both integral.
    pub fn short_model(&self) -> (BigInt, BigInt) {
        let (mut a, mut b) = self.minimal_model().short_integral();
        for q in [2u32, 3] {
            let (q4, q6) = (BigInt::from(q.pow(4)), BigInt::from(q.pow(6)));
            while !(a.is_zero() && b.is_zero()) && (&a % &q4).is_zero() && (&b % &q6).is_zero() {
                a /= &q4;
                b /= &q6;
            }
        }
        (a, b)
    }

    /// Change of variables `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t` with integral result.
    pub fn transform(&self, u: &BigInt, r: &BigInt, s: &BigInt, t: &BigInt) -> Option<Self> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let n1 = a1 + 2 * s;
        let n2 = a2 - s * a1 + 3 * r - s * s;
        let n3 = a3 + r * a1 + 2 * t;
        let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let mut out = [n1, n2, n3, n4, n6];
        if !u.is_one() {
            for (c, e) in out.iter_mut().zip([1u32, 2, 3, 4, 6]) {
                let (q, rem) = c.div_rem(&u.pow(e));
                if !rem.is_zero() {
                    return None;
                }
                *c = q;
            }
        }
        Self::new(out).ok()
    }

    pub fn rst(&self, r: &BigInt, s: &BigInt, t: &BigInt) -> Self {
        self.transform(&BigInt::one(), r, s, t)
            .expect("unit transform preserves integrality")
    }

    /// Reduced global minimal model, determined by `(c4, c6)`.
    pub fn minimal_model(&self) -> Self {
        let (c4, c6) = (&self.c4, &self.c6);
        let g = c4.gcd(c6);
        let g = if g.is_zero() { self.disc.clone() } else { g };
        let mut primes: Vec<BigInt> = arith::factor(&g).into_iter().map(|(p, _)| p).collect();
        for s in [2, 3] {
            let s = BigInt::from(s);
            if !primes.contains(&s) {
                primes.push(s);
            }
        }
        let mut u = BigInt::one();
        let mut u2 = BigInt::one();
        let mut u3 = BigInt::one();
        for p in primes {
            let Some(pq) = p.to_u64() else {
                // Any prime dividing the gcd beyond 64 bits is handled through raw valuations.
                let d = big_prime_scale(c4, c6, &self.disc, &p);
                u *= p.pow(d);
                continue;
            };
            let v4 = valuation(c4, pq);
            let v6 = valuation(c6, pq);
            let vd = valuation(&self.disc, pq);
            let d = (v4 / 4).min(v6 / 6).min(vd / 12);
            match pq {
                2 => u2 = p.pow(d),
                3 => u3 = p.pow(d),
                _ => u *= p.pow(d),
            }
        }
        // Kraus conditions at 3 and 2.
        loop {
            let uu: BigInt = &u * &u2 * &u3;
            let c6p = c6 / uu.pow(6);
            if !c6p.is_zero() && valuation(&c6p, 3) == 2 && !u3.is_one() {
                u3 /= 3;
                continue;
            }
            break;
        }
        loop {
            let uu: BigInt = &u * &u2 * &u3;
            let c4p = c4 / uu.pow(4);
            let c6p = c6 / uu.pow(6);
            if kraus2(&c4p, &c6p) || u2.is_one() {
                break;
            }
            u2 /= 2;
        }
        let uu: BigInt = &u * &u2 * &u3;
        let c4p = c4 / uu.pow(4);
        let c6p = c6 / uu.pow(6);
        let m = from_c4c6(&c4p, &c6p).expect("minimal model reconstruction");
        debug_assert_eq!(m.c4, c4p);
        m
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal_model().disc.abs() == self.disc.abs()
    }

    /// Isomorphism over Q.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.minimal_model() == other.minimal_model()
    }

    /// Quadratic twist by `d`, returned minimal.
    pub fn quadratic_twist(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let d = arith::squarefree_part(d);
        let c4 = &self.c4 * &d * &d;
        let c6 = &self.c6 * &d * &d * &d;
        Self::from_short_int(&(-27 * c4), &(-54 * c6))
    }

    /// Quartic twist of a `j = 1728` curve: `E_{a,0} -> E_{a u, 0}`.
    pub fn quartic_twist(&self, u: &BigRational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let (a, b) = self.short_model();
        if !b.is_zero() || a.is_zero() {
            return Err(Error::UnsupportedJ(self.j_invariant().to_string()));
        }
        Self::from_short(&(BigRational::from(a) * u), &BigRational::zero())
    }

    /// Sextic twist of a `j = 0` curve: `E_{0,b} -> E_{0, b u}`.
    pub fn sextic_twist(&self, u: &BigRational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroTwist);
        }
        let (a, b) = self.short_model();
        if !a.is_zero() || b.is_zero() {
            return Err(Error::UnsupportedJ(self.j_invariant().to_string()));
        }
        Self::from_short(&BigRational::zero(), &(BigRational::from(b) * u))
    }

    /// Negated CM discriminant when the `j`-invariant is a rational CM value.
    pub fn cm_discriminant(&self) -> Option<i64> {
        let j = self.j_invariant();
        if !j.is_integer() {
            return None;
        }
        let j = j.to_integer();
        CM_J_TABLE
            .iter()
            .find(|(_, js)| js.parse::<BigInt>().unwrap() == j)
            .map(|(d, _)| *d)
    }

    pub fn has_cm(&self) -> bool {
        self.cm_discriminant().is_some()
    }
}

/// Rational CM `j`-invariants with their (negated) discriminants.
pub const CM_J_TABLE: [(i64, &str); 13] = [
    (-3, "0"),
    (-4, "1728"),
    (-7, "-3375"),
    (-8, "8000"),
    (-11, "-32768"),
    (-12, "54000"),
    (-16, "287496"),
    (-19, "-884736"),
    (-27, "-12288000"),
    (-28, "16581375"),
    (-43, "-884736000"),
    (-67, "-147197952000"),
    (-163, "-262537412640768000"),
];

/// The `j`-invariant attached to a CM discriminant in the table.
pub fn cm_j(disc: i64) -> Option<BigInt> {
    CM_J_TABLE
        .iter()
        .find(|(d, _)| *d == disc)
        .map(|(_, j)| j.parse().unwrap())
}

fn kraus2(c4: &BigInt, c6: &BigInt) -> bool {
    let c6m4 = c6.mod_floor(&BigInt::from(4));
    if c6m4 == BigInt::from(3) {
        return true;
    }
    let v4 = valuation(c4, 2);
    let c6m32 = c6.mod_floor(&BigInt::from(32));
    v4 >= 4 && (c6m32.is_zero() || c6m32 == BigInt::from(8))
}

fn big_prime_scale(c4: &BigInt, c6: &BigInt, disc: &BigInt, p: &BigInt) -> u32 {
    let val = |n: &BigInt| -> u32 {
        if n.is_zero() {
            return u32::MAX;
        }
        let mut m = n.clone();
        let mut v = 0;
        while (&m % p).is_zero() {
            m /= p;
            v += 1;
        }
        v
    };
    (val(c4) / 4).min(val(c6) / 6).min(val(disc) / 12)
}

/// Reduced model with the given `c4`, `c6`, if they come from an integral model.
pub fn from_c4c6(c4: &BigInt, c6: &BigInt) -> Option<RationalEC> {
    let twelve = BigInt::from(12);
    let mut b2 = (-c6).mod_floor(&twelve);
    if b2 > BigInt::from(6) {
        b2 -= &twelve;
    }
    let b4n = &b2 * &b2 - c4;
    if !(&b4n % BigInt::from(24)).is_zero() {
        return None;
    }
    let b4: BigInt = b4n / 24;
    let b2cube: BigInt = &b2 * &b2 * &b2;
    let b6n: BigInt = -b2cube + 36 * &b2 * &b4 - c6;
    if !(&b6n % BigInt::from(216)).is_zero() {
        return None;
    }
    let b6: BigInt = b6n / 216;
    let two = BigInt::from(2);
    let a1 = b2.mod_floor(&two);
    let a3 = b6.mod_floor(&two);
    let a2n = &b2 - &a1;
    let a4n = &b4 - &a1 * &a3;
    let a6n = &b6 - &a3;
    if !(&a2n % BigInt::from(4)).is_zero()
        || !(&a4n % BigInt::from(2)).is_zero()
        || !(&a6n % BigInt::from(4)).is_zero() {
        return None;
    }
    let e = RationalEC::new([a1, a2n / 4, a3, a4n / 2, a6n / 4]).ok()?;
    (e.c4() == c4 && e.c6() == c6).then_some(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ec(a: [i64; 5]) -> RationalEC {
        RationalEC::from_i64(a).unwrap()
    }

    #[test]
    fn invariants_of_11a1() {
        let e = ec([0, -1, 1, -10, -20]);
        assert_eq!(*e.c4(), BigInt::from(496));
        assert_eq!(*e.c6(), BigInt::from(20008));
        assert_eq!(*e.discriminant(), BigInt::from(-161051));
        assert_eq!(e.j_invariant(), BigRational::new((-122023936).into(), 161051.into()));
    }

    #[test]
    fn short_models_keep_j() {
        let (a, b) = ec([0, 0, 0, 1, 0]).short_model();
        assert!(b.is_zero() && !a.is_zero());
        let (a, b) = ec([0, 0, 0, 0, 1]).short_model();
        assert!(a.is_zero() && !b.is_zero());
        let big = RationalEC::new([
            0.into(),
            (-1).into(),
            1.into(),
            "-74988699621831".parse().unwrap(),
            "238006866237979285299".parse().unwrap(),
        ])
        .unwrap();
        let (a, b) = big.short_model();
        let s = RationalEC::from_short_int(&a, &b).unwrap();
        assert_eq!(s.j_invariant(), big.j_invariant());
        assert_eq!(ec([0, 0, 0, 16, 0]).short_model(), ec([0, 0, 0, 1, 0]).short_model());
    }

    #[test]
    fn minimal_model_of_scaled_curve() {
        let e = ec([0, -1, 1, -10, -20]);
        let (a, b) = e.short_model();
        let big = RationalEC::from_short_unreduced(&a.into(), &b.into()).unwrap();
        assert!(!big.is_minimal());
        assert_eq!(big.minimal_model(), e);
        let y2x3p1 = ec([0, 0, 0, 0, 1]);
        assert_eq!(y2x3p1.minimal_model(), y2x3p1);
    }

    #[test]
    fn cm_curves_from_j() {
        for (d, j) in CM_J_TABLE {
            let j: BigInt = j.parse().unwrap();
            let e = RationalEC::from_j(&BigRational::from(j.clone())).unwrap();
            assert_eq!(e.j_invariant(), BigRational::from(j));
            assert_eq!(e.cm_discriminant(), Some(d));
        }
    }

    #[test]
    fn twist_by_square_class_is_isomorphic() {
        let e = ec([1, 0, 1, 4, -6]);
        let t1 = e.quadratic_twist(&BigInt::from(-3)).unwrap();
        let t2 = e.quadratic_twist(&BigInt::from(-12)).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(t1.quadratic_twist(&BigInt::from(-3)).unwrap(), e.minimal_model());
    }

    fn arb_curve() -> impl Strategy<Value = RationalEC> {
        prop::array::uniform5(-60i64..60)
            .prop_filter_map("singular", |a| RationalEC::from_i64(a).ok())
    }

    proptest! {
        #[test]
        fn c4_c6_discriminant_identity(e in arb_curve()) {
            let lhs = e.c4().pow(3) - e.c6().pow(2);
            prop_assert_eq!(lhs, BigInt::from(1728) * e.discriminant());
        }

        #[test]
        fn minimal_model_idempotent(e in arb_curve(), u in 1i64..7, r in -5i64..5, s in -3i64..3, t in -5i64..5) {
            let m = e.minimal_model();
            prop_assert_eq!(m.minimal_model(), m.clone());
            // Inverse change of variables with u scales up; the minimal model must not move.
            let u = BigInt::from(u);
            let scaled = e.rst(&r.into(), &s.into(), &t.into());
            let [a1, a2, a3, a4, a6] = scaled.a_invariants().clone();
            let up = RationalEC::new([a1 * &u, a2 * u.pow(2), a3 * u.pow(3), a4 * u.pow(4), a6 * u.pow(6)]).unwrap();
            prop_assert_eq!(up.minimal_model(), m.clone());
            prop_assert!(m.discriminant().abs() <= e.discriminant().abs());
            prop_assert_eq!(m.j_invariant(), e.j_invariant());
        }

        #[test]
        fn double_twist_returns(e in arb_curve(), d in prop::sample::select(vec![-1i64, 2, -3, 5, -7, 10, 13])) {
            let t = e.quadratic_twist(&d.into()).unwrap();
            prop_assert_eq!(t.quadratic_twist(&d.into()).unwrap(), e.minimal_model());
        }
    }
}

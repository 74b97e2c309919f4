//! Local reduction data by Tate's algorithm; conductor.

use crate::arith::{self, invmod, mod_u64, valuation};
use crate::curve::RationalEC;
use crate::poly::ZPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Number of irreducible components of the special fibre.
    pub fn components(&self) -> u32 {
        match self {
            Kodaira::I0 => 1,
            Kodaira::I(n) => *n,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::I0Star => 5,
            Kodaira::IStar(n) => 5 + n,
            Kodaira::IVStar => 7,
            Kodaira::IIIStar => 8,
            Kodaira::IIStar => 9,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionType {
    Good,
    Multiplicative { split: bool },
    Additive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub p: u64,
    /// Exponent of `p` in the conductor.
    pub f: u32,
    pub kodaira: Kodaira,
    pub reduction: ReductionType,
    /// Tamagawa number.
    pub cp: u32,
    /// Valuation of the minimal discriminant.
    pub min_disc_val: u32,
    /// Whether the input model was already minimal at `p`.
    pub was_minimal: bool,
}

struct Local {
    p: u64,
    pb: BigInt,
}

impl Local {
    fn val(&self, x: &BigInt) -> u32 {
        valuation(x, self.p)
    }
    fn divides(&self, x: &BigInt) -> bool {
        (x % &self.pb).is_zero()
    }
    fn red(&self, x: &BigInt) -> u64 {
        mod_u64(x, self.p)
    }
    fn inv(&self, x: &BigInt) -> BigInt {
        BigInt::from(invmod(self.red(x), self.p).expect("unit mod p"))
    }
    /// Square or cube root modulo 2 or 3, where Frobenius is the identity.
    fn root(&self, x: &BigInt) -> BigInt {
        BigInt::from(self.red(x))
    }
    fn exact(&self, x: &BigInt, e: u32) -> BigInt {
        let d = self.pb.pow(e);
        let (q, r) = x.div_rem(&d);
        debug_assert!(r.is_zero(), "exact division in Tate's algorithm");
        q
    }
    fn quad_has_root(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
        let p = self.p;
        let (a, b, c) = (self.red(a), self.red(b), self.red(c));
        if p <= 1000 {
            return (0..p).any(|x| {
                (arith::mulmod(arith::mulmod(a, x, p), x, p) + arith::mulmod(b, x, p) + c).is_multiple_of(p)
            });
        }
        if a == 0 {
            return b != 0 || c == 0;
        }
        let disc = arith::submod(arith::mulmod(b, b, p), arith::mulmod(4 * a % p, c, p), p);
        arith::legendre_u64(disc, p) >= 0
    }
    fn cubic_roots(&self, b: &BigInt, c: &BigInt, d: &BigInt) -> u32 {
        let f = ZPoly::new(vec![d.clone(), c.clone(), b.clone(), BigInt::from(1)]);
        f.to_fp(self.p).roots().len() as u32
    }
}

/// Tate's algorithm at the prime `p` for an integral model.
pub fn local_data(e: &RationalEC, p: u64) -> LocalData {
    let lc = Local {
        p,
        pb: BigInt::from(p),
    };
    let mut c = e.clone();
    let mut was_minimal = true;
    let p2 = p == 2;
    let p3 = p == 3;
    let two_inv = if p2 { BigInt::zero() } else { BigInt::from(p.div_ceil(2)) };
    let pi = lc.pb.clone();
    let pi2 = &pi * &pi;
    loop {
        let vd = lc.val(c.discriminant());
        if vd == 0 {
            return LocalData {
                p,
                f: 0,
                kodaira: Kodaira::I0,
                reduction: ReductionType::Good,
                cp: 1,
                min_disc_val: 0,
                was_minimal,
            };
        }
        // Move the singular point to (0,0).
        let (r, t) = {
            let [a1, a2, a3, a4, a6] = c.a_invariants();
            let (b2, b4, b6) = (c.b2(), c.b4(), c.b6());
            if p2 {
                if lc.divides(b2) {
                    let r = lc.root(a4);
                    let t = lc.root(&(((&r + a2) * &r + a4) * &r + a6));
                    (r, t)
                } else {
                    let ai = lc.inv(a1);
                    let r = &ai * a3;
                    let t = &ai * (a4 + &r * &r);
                    (r, t)
                }
            } else if p3 {
                let r = if lc.divides(b2) {
                    lc.root(&-b6)
                } else {
                    -lc.inv(b2) * b4
                };
                let t = a1 * &r + a3;
                (r, t)
            } else {
                let c4 = c.c4();
                let r = if lc.divides(c4) {
                    -lc.inv(&BigInt::from(12)) * b2
                } else {
                    -lc.inv(&(BigInt::from(12) * c4)) * (c.c6() + b2 * c4)
                };
                let r = BigInt::from(lc.red(&r));
                let t = -&two_inv * (a1 * &r + a3);
                (r, t)
            }
        };
        let r = BigInt::from(lc.red(&r));
        let t = BigInt::from(lc.red(&t));
        c = c.rst(&r, &BigInt::zero(), &t);

        if !lc.divides(c.c4()) {
            let split = lc.quad_has_root(&BigInt::from(1), c.a1(), &-c.a2());
            let cp = if split {
                vd
            } else if vd.is_multiple_of(2) {
                2
            } else {
                1
            };
            return LocalData {
                p,
                f: 1,
                kodaira: Kodaira::I(vd),
                reduction: ReductionType::Multiplicative { split },
                cp,
                min_disc_val: vd,
                was_minimal,
            };
        }
        let additive = |k: Kodaira, f: u32, cp: u32, was_minimal: bool| LocalData {
            p,
            f,
            kodaira: k,
            reduction: ReductionType::Additive,
            cp,
            min_disc_val: vd,
            was_minimal,
        };
        if lc.val(c.a6()) < 2 {
            return additive(Kodaira::II, vd, 1, was_minimal);
        }
        if lc.val(c.b8()) < 3 {
            return additive(Kodaira::III, vd - 1, 2, was_minimal);
        }
        if lc.val(c.b6()) < 3 {
            let a3t = lc.exact(c.a3(), 1);
            let a6t = lc.exact(c.a6(), 2);
            let cp = if lc.quad_has_root(&BigInt::from(1), &a3t, &-a6t) { 3 } else { 1 };
            return additive(Kodaira::IV, vd - 2, cp, was_minimal);
        }
        let (s, t) = if p2 {
            (lc.root(c.a2()), &pi * lc.root(&lc.exact(c.a6(), 2)))
        } else if p3 {
            (c.a1().clone(), c.a3().clone())
        } else {
            (-c.a1() * &two_inv, -c.a3() * &two_inv)
        };
        c = c.rst(&BigInt::zero(), &s, &t);
        let b = BigInt::from(lc.red(&lc.exact(c.a2(), 1)));
        let cc = BigInt::from(lc.red(&lc.exact(c.a4(), 2)));
        let d = BigInt::from(lc.red(&lc.exact(c.a6(), 3)));
        let bb = &b * &b;
        let ccc = &cc * &cc;
        let bc = &b * &cc;
        let w = 27 * &d * &d - &bb * &ccc + 4 * &b * &bb * &d - 18 * &bc * &d + 4 * &cc * &ccc;
        let x = 3 * &cc - &bb;
        let sw = if lc.divides(&w) {
            if lc.divides(&x) {
                3
            } else {
                2
            }
        } else {
            1
        };
        if sw == 1 {
            let cp = 1 + lc.cubic_roots(&b, &cc, &d);
            return additive(Kodaira::I0Star, vd - 4, cp, was_minimal);
        }
        if sw == 2 {
            let r = if p2 {
                lc.root(&cc)
            } else if p3 {
                &cc * lc.inv(&b)
            } else {
                (&bc - 9 * &d) * lc.inv(&(2 * &x))
            };
            let r = &pi * BigInt::from(lc.red(&r));
            c = c.rst(&r, &BigInt::zero(), &BigInt::zero());
            let mut ix = 3u32;
            let mut iy = 3u32;
            let mut mx = pi2.clone();
            let mut my = pi2.clone();
            let cp;
            loop {
                let a3t = BigInt::from(lc.red(&(c.a3() / &my)));
                let a6t = BigInt::from(lc.red(&(c.a6() / (&mx * &my))));
                if lc.divides(&(&a3t * &a3t + 4 * &a6t)) {
                    let t = if p2 {
                        &my * lc.root(&a6t)
                    } else {
                        &my * BigInt::from(lc.red(&(-&a3t * &two_inv)))
                    };
                    c = c.rst(&BigInt::zero(), &BigInt::zero(), &t);
                    my = &my * &pi;
                    iy += 1;
                    let a2t = BigInt::from(lc.red(&(c.a2() / &pi)));
                    let a4t = BigInt::from(lc.red(&(c.a4() / (&pi * &mx))));
                    let a6t = BigInt::from(lc.red(&(c.a6() / (&mx * &my))));
                    if lc.divides(&(&a4t * &a4t - 4 * &a6t * &a2t)) {
                        let r = if p2 {
                            &mx * lc.root(&(&a6t * lc.inv(&a2t)))
                        } else {
                            &mx * BigInt::from(lc.red(&(-&a4t * lc.inv(&(2 * &a2t)))))
                        };
                        c = c.rst(&r, &BigInt::zero(), &BigInt::zero());
                        mx = &mx * &pi;
                        ix += 1;
                    } else {
                        cp = if lc.quad_has_root(&a2t, &a4t, &a6t) { 4 } else { 2 };
                        break;
                    }
                } else {
                    cp = if lc.quad_has_root(&BigInt::from(1), &a3t, &-a6t) { 4 } else { 2 };
                    break;
                }
            }
            let n = ix + iy - 5;
            return additive(Kodaira::IStar(n), vd - ix - iy + 1, cp, was_minimal);
        }
        // Triple root.
        let r = if p2 {
            b.clone()
        } else if p3 {
            lc.root(&-&d)
        } else {
            -&b * lc.inv(&BigInt::from(3))
        };
        let r = &pi * BigInt::from(lc.red(&r));
        c = c.rst(&r, &BigInt::zero(), &BigInt::zero());
        let a3t = BigInt::from(lc.red(&lc.exact(c.a3(), 2)));
        let a6t = BigInt::from(lc.red(&lc.exact(c.a6(), 4)));
        if !lc.divides(&(&a3t * &a3t + 4 * &a6t)) {
            let cp = if lc.quad_has_root(&BigInt::from(1), &a3t, &-&a6t) { 3 } else { 1 };
            return additive(Kodaira::IVStar, vd - 6, cp, was_minimal);
        }
        let t = if p2 {
            -&pi2 * lc.root(&a6t)
        } else {
            &pi2 * BigInt::from(lc.red(&(-&a3t * &two_inv)))
        };
        c = c.rst(&BigInt::zero(), &BigInt::zero(), &t);
        if lc.val(c.a4()) < 4 {
            return additive(Kodaira::IIIStar, vd - 7, 2, was_minimal);
        }
        if lc.val(c.a6()) < 6 {
            return additive(Kodaira::IIStar, vd - 8, 1, was_minimal);
        }
        // Non-minimal at p: scale down and restart.
        c = c
            .transform(&pi, &BigInt::zero(), &BigInt::zero(), &BigInt::zero())
            .expect("non-minimal model rescales integrally");
        was_minimal = false;
    }
}

/// Bad primes of a model: primes dividing the discriminant.
pub fn bad_primes(e: &RationalEC) -> Vec<u64> {
    arith::factor(e.discriminant())
        .into_iter()
        .map(|(p, _)| p.to_u64().expect("bad prime fits in 64 bits"))
        .collect()
}

/// Local data at every bad prime of the minimal model.
pub fn all_local_data(e: &RationalEC) -> Vec<LocalData> {
    let m = e.minimal_model();
    bad_primes(&m).into_iter().map(|p| local_data(&m, p)).collect()
}

/// Conductor of the curve.
pub fn conductor(e: &RationalEC) -> BigInt {
    all_local_data(e)
        .into_iter()
        .fold(BigInt::from(1), |n, ld| n * BigInt::from(ld.p).pow(ld.f))
}

/// Conductor as `u64` when it fits.
pub fn conductor_u64(e: &RationalEC) -> Option<u64> {
    conductor(e).to_u64()
}

//! Division polynomials, rational kernel polynomials and Vélu's formulas on `y^2 = x^3 + A x + B`.

use crate::curve::RationalEC;
use crate::error::{Error, Result};
use crate::poly::{self, ZPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Division polynomials of a short model, in the normalisation `f_n = psi_n` for odd `n`
/// and `f_n = psi_n / psi_2` for even `n`, so every `f_n` lies in `Z[x]`.
#[derive(Clone, Debug)]
pub struct DivisionPolys {
    pub a: BigInt,
    pub b: BigInt,
    f: Vec<ZPoly>,
}

impl DivisionPolys {
    pub fn new(a: &BigInt, b: &BigInt) -> Self {
        let zero = BigInt::zero();
        let f3 = ZPoly::new(vec![-(a * a), 12 * b, 6 * a, zero.clone(), BigInt::from(3)]);
        let f4 = ZPoly::new(vec![
            -8 * b * b - a * a * a,
            -4 * a * b,
            -5 * a * a,
            20 * b,
            5 * a,
            zero,
            BigInt::one(),
        ])
        .scale(&BigInt::from(2));
        DivisionPolys {
            a: a.clone(),
            b: b.clone(),
            f: vec![ZPoly::zero(), ZPoly::one(), ZPoly::one(), f3, f4],
        }
    }

    pub fn of_curve(e: &RationalEC) -> Self {
        let (a, b) = e.short_integral();
        Self::new(&a, &b)
    }

    /// `psi_2^2 = 4 (x^3 + A x + B)`.
    pub fn psi2_sq(&self) -> ZPoly {
        ZPoly::new(vec![4 * &self.b, 4 * &self.a, BigInt::zero(), BigInt::from(4)])
    }

    pub fn get(&mut self, n: usize) -> ZPoly {
        while self.f.len() <= n {
            let k = self.f.len();
            let m = k / 2;
            let f = &self.f;
            let next = if k % 2 == 1 {
                let (s, t) = (f[m + 2].mul(&f[m].pow(3)), f[m - 1].mul(&f[m + 1].pow(3)));
                let ff = self.psi2_sq().pow(2);
                if m.is_multiple_of(2) {
                    ff.mul(&s).sub(&t)
                } else {
                    s.sub(&ff.mul(&t))
                }
            } else {
                let s = f[m + 2].mul(&f[m - 1].pow(2));
                let t = f[m - 2].mul(&f[m + 1].pow(2));
                f[m].mul(&s.sub(&t))
            };
            self.f.push(next);
        }
        self.f[n].clone()
    }

    /// `x([n]P) = num(x) / den(x)`.
    pub fn mult_x_map(&mut self, n: usize) -> (ZPoly, ZPoly) {
        assert!(n >= 1);
        let fm = self.get(n - 1);
        let fp = self.get(n + 1);
        let fnn = self.get(n);
        let (cross, den) = if n % 2 == 1 {
            (self.psi2_sq().mul(&fm).mul(&fp), fnn.pow(2))
        } else {
            (fm.mul(&fp), self.psi2_sq().mul(&fnn.pow(2)))
        };
        (ZPoly::x().mul(&den).sub(&cross), den)
    }
}

/// `h(num/den) * den^deg(h)`.
fn homogenised_compose(h: &ZPoly, num: &ZPoly, den: &ZPoly) -> ZPoly {
    let n = h.degree();
    let mut acc = ZPoly::zero();
    for i in 0..=n {
        let term = num.pow(i as u32).mul(&den.pow((n - i) as u32)).scale(&h.coeff(i));
        acc = acc.add(&term);
    }
    acc
}

/// Does `h` divide the numerator of `h(x([2]P))`, i.e. is its root set closed under doubling?
fn closed_under_doubling(dp: &mut DivisionPolys, h: &ZPoly) -> bool {
    let (num, den) = dp.mult_x_map(2);
    homogenised_compose(h, &num, &den).pseudo_rem(h).is_zero()
}

/// Kernel polynomials of rational cyclic `p`-isogenies for odd prime `p`, on the short model
/// `y^2 = x^3 - 27 c4 x - 54 c6`; for `p = 2` the linear factors of the 2-division cubic.
pub fn kernel_polynomials(e: &RationalEC, p: u64) -> Vec<ZPoly> {
    let mut dp = DivisionPolys::of_curve(e);
    if p == 2 {
        let cubic = dp.psi2_sq();
        return poly::rational_factors_up_to(&cubic, 1);
    }
    let half = ((p - 1) / 2) as usize;
    let psi = dp.get(p as usize);
    let facs = poly::rational_factors_up_to(&psi, half);
    let mut out = Vec::new();
    let n = facs.len();
    for mask in 1u32..(1 << n) {
        let deg: usize = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| facs[i].degree()).sum();
        if deg != half {
            continue;
        }
        let h = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(ZPoly::one(), |acc, i| acc.mul(&facs[i]));
        if p == 3 || closed_under_doubling(&mut dp, &h) {
            out.push(h.primitive());
        }
    }
    out.sort();
    out
}

/// Power sums `sum x^k`, `k = 1..=3`, of the roots of `h`, by Newton's identities.
fn power_sums(h: &ZPoly) -> [BigRational; 3] {
    let d = h.degree();
    let lc = BigRational::from(h.lc());
    let e = |k: usize| -> BigRational {
        if k > d {
            return BigRational::zero();
        }
        let sign = if k.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
        sign * BigRational::from(h.coeff(d - k)) / &lc
    };
    let (e1, e2, e3) = (e(1), e(2), e(3));
    let p1 = e1.clone();
    let p2 = &e1 * &p1 - BigRational::from_integer(2.into()) * &e2;
    let p3 = &e1 * &p2 - &e2 * &p1 + BigRational::from_integer(3.into()) * &e3;
    [p1, p2, p3]
}

/// Codomain of the isogeny with the given kernel polynomial (short-model coordinates), minimal.
pub fn velu(e: &RationalEC, h: &ZPoly) -> Result<RationalEC> {
    let (a, b) = e.short_integral();
    let dp = DivisionPolys::new(&a, &b);
    let ar = BigRational::from(a.clone());
    let br = BigRational::from(b.clone());
    let r = |n: i64| BigRational::from_integer(n.into());
    let (v, w) = if h.degree() == 1 && dp.psi2_sq().pseudo_rem(h).is_zero() {
        let x0 = BigRational::new(-h.coeff(0), h.coeff(1));
        let v = r(3) * &x0 * &x0 + &ar;
        let w = &x0 * &v;
        (v, w)
    } else {
        let d = r(h.degree() as i64);
        let [s1, s2, s3] = power_sums(h);
        let v = r(6) * s2 + r(2) * &ar * &d;
        let w = r(10) * s3 + r(6) * &ar * s1 + r(4) * &br * &d;
        (v, w)
    };
    let a2 = ar - r(5) * v;
    let b2 = br - r(7) * w;
    RationalEC::from_short(&a2, &b2).map_err(|_| Error::Invalid(format!("kernel {h:?} is not a subgroup")))
}

/// Curves linked to `e` by a rational cyclic `p`-isogeny, with their kernel polynomials.
pub fn isogenous_curves(e: &RationalEC, p: u64) -> Vec<(ZPoly, RationalEC)> {
    kernel_polynomials(e, p)
        .into_iter()
        .filter_map(|h| velu(e, &h).ok().map(|c| (h, c)))
        .collect()
}

//! Reducible mod-7 congruences: isogeny characters, the degree-7 second-isogeny field and
//! field isomorphism certificates.

use crate::arith::{self, PrimeIter};
use crate::curve::RationalEC;
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusEngine;
use crate::isogeny;
use crate::poly::{self, FpPoly, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// `(t^2 + 13t + 49)(t^2 + 5t + 1)^3 - t j`, cleared of denominators and made primitive.
pub fn fricke_polynomial(j: &BigRational) -> ZPoly {
    let quad = ZPoly::from_i64(&[49, 13, 1]);
    let cube = ZPoly::from_i64(&[1, 5, 1]).pow(3);
    let base = quad.mul(&cube).scale(j.denom());
    let tj = ZPoly::x().scale(j.numer());
    let f = base.sub(&tj).primitive();
    if f.lc().is_negative() {
        f.neg()
    } else {
        f
    }
}

/// Degree-7 factor of the Fricke polynomial after removing the rational root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SevenIsogenyField {
    /// Monic integral generator.
    pub f: ZPoly,
    /// The primitive factor of the Fricke polynomial it was obtained from.
    pub factor: ZPoly,
    /// The rational root that was removed.
    pub t: BigRational,
}

pub fn second_isogeny_field(e: &RationalEC) -> Result<SevenIsogenyField> {
    let fr = fricke_polynomial(&e.j_invariant());
    let roots = poly::rational_roots(&fr);
    let t = match roots.as_slice() {
        [] => return Err(Error::NoRationalIsogeny(7)),
        [t] => t.clone(),
        _ => return Err(Error::DegenerateField("more than one rational root")),
    };
    let lin = ZPoly::new(vec![-t.numer().clone(), t.denom().clone()]);
    let rest = fr
        .div_exact(&lin)
        .ok_or(Error::DegenerateField("root does not divide"))?
        .primitive();
    if rest.degree() != 7 || !poly::is_irreducible(&rest) {
        return Err(Error::DegenerateField("degree-7 factor is reducible"));
    }
    Ok(SevenIsogenyField {
        f: rest.monic_transform(),
        factor: rest,
        t,
    })
}

/// A curve with a rational 7-isogeny, with its kernel polynomial on the short model.
#[derive(Clone, Debug)]
pub struct SevenIsogeny {
    curve: RationalEC,
    a: BigInt,
    b: BigInt,
    kernel: ZPoly,
    engine: FrobeniusEngine,
}

impl SevenIsogeny {
    pub fn new(e: &RationalEC) -> Result<Self> {
        let curve = e.minimal_model();
        let ks = isogeny::kernel_polynomials(&curve, 7);
        let kernel = match ks.as_slice() {
            [] => return Err(Error::NoRationalIsogeny(7)),
            [k] => k.clone(),
            _ => return Err(Error::DegenerateField("more than one rational 7-isogeny")),
        };
        let (a, b) = curve.short_integral();
        Ok(SevenIsogeny {
            engine: FrobeniusEngine::new(&curve),
            curve,
            a,
            b,
            kernel,
        })
    }

    pub fn curve(&self) -> &RationalEC {
        &self.curve
    }

    pub fn kernel(&self) -> &ZPoly {
        &self.kernel
    }

    /// The 7-isogenous curve.
    pub fn partner(&self) -> Result<RationalEC> {
        isogeny::velu(&self.curve, &self.kernel)
    }

    /// `chi_1(l)`: Frobenius at `l` acts on the kernel as multiplication by this value mod 7.
    pub fn chi1(&self, l: u64) -> Result<u64> {
        if l < 5 || l == 7 || arith::mod_u64(self.curve.discriminant(), l) == 0 {
            return Err(Error::BadPrime {
                p: l,
                reason: "isogeny character needs a good prime l >= 5, l != 7",
            });
        }
        let h = self.kernel.to_fp(l).monic();
        let r = KernelRing::new(h, arith::mod_u64(&self.a, l), arith::mod_u64(&self.b, l));
        let p1 = (FpPoly::x(l).rem(&r.h), FpPoly::one(l));
        let p2 = r.double(&p1)?;
        let p3 = r.add(&p2, &p1)?;
        let fx = r.f.clone();
        let frob = (
            FpPoly::x(l).powmod_u64(l, &r.h),
            fx.powmod_u64((l - 1) / 2, &r.h),
        );
        let neg = |y: &FpPoly| FpPoly::zero(l).sub(y);
        for (k, pk) in [(1u64, &p1), (2, &p2), (3, &p3)] {
            if frob.0 == pk.0 {
                if frob.1 == pk.1 {
                    return Ok(k);
                }
                if frob.1 == neg(&pk.1) {
                    return Ok(7 - k);
                }
            }
        }
        Err(Error::CharacterMismatch(format!("Frobenius at {l} does not preserve the kernel")))
    }

    /// `(chi_1(l), chi_2(l))`, checked against `chi_1 chi_2 = l` and `chi_1 + chi_2 = a_l`.
    pub fn characters(&self, l: u64) -> Result<(u64, u64)> {
        let c1 = self.chi1(l)?;
        let c2 = (l % 7) * arith::invmod(c1, 7).expect("unit") % 7;
        let a = self.engine.ap_good(l).rem_euclid(7) as u64;
        if (c1 + c2) % 7 != a {
            return Err(Error::CharacterMismatch(format!(
                "chi1 + chi2 = {} but a_{l} = {a} mod 7",
                (c1 + c2) % 7
            )));
        }
        Ok((c1, c2))
    }
}

/// `F_l[x] / h(x)` with points written `(X(x), y Y(x))` on `y^2 = f(x)`.
struct KernelRing {
    h: FpPoly,
    f: FpPoly,
    a: u64,
}

type RingPoint = (FpPoly, FpPoly);

impl KernelRing {
    fn new(h: FpPoly, a: u64, b: u64) -> Self {
        let l = h.q;
        let f = FpPoly::new(l, vec![b, a, 0, 1]).rem(&h);
        KernelRing { h, f, a }
    }

    fn inv(&self, u: &FpPoly) -> Result<FpPoly> {
        let (g, s, _) = u.xgcd(&self.h);
        if g.degree() != 0 || g.is_zero() {
            return Err(Error::CharacterMismatch("kernel point collision mod l".into()));
        }
        Ok(s.rem(&self.h))
    }

    fn mul(&self, u: &FpPoly, v: &FpPoly) -> FpPoly {
        u.mulmod_poly(v, &self.h)
    }

    fn finish(&self, lam: FpPoly, x1: &FpPoly, x2: &FpPoly, y1: &FpPoly) -> RingPoint {
        let x3 = self.mul(&self.f, &self.mul(&lam, &lam)).sub(x1).sub(x2);
        let y3 = self.mul(&lam, &x1.sub(&x3)).sub(y1);
        (x3, y3)
    }

    fn double(&self, p: &RingPoint) -> Result<RingPoint> {
        let l = self.h.q;
        let (x, y) = p;
        let num = self.mul(x, x).scale(3).add(&FpPoly::new(l, vec![self.a]));
        let den = self.mul(&self.f, y).scale(2);
        let lam = self.mul(&num, &self.inv(&den)?);
        Ok(self.finish(lam, x, x, y))
    }

    fn add(&self, p: &RingPoint, q: &RingPoint) -> Result<RingPoint> {
        let lam = self.mul(&q.1.sub(&p.1), &self.inv(&q.0.sub(&p.0))?);
        Ok(self.finish(lam, &p.0, &q.0, &p.1))
    }
}

/// Sampled values of the isogeny character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyCharacter {
    pub values: BTreeMap<u64, u64>,
    /// Order of the subgroup of `F_7^*` generated by the sampled values.
    pub order: u64,
}

pub fn isogeny_character(e: &RationalEC, primes: &[u64]) -> Result<IsogenyCharacter> {
    let s = SevenIsogeny::new(e)?;
    let mut values = BTreeMap::new();
    for &l in primes {
        values.insert(l, s.characters(l)?.0);
    }
    let order = values.values().map(|&v| mult_order(v)).fold(1, |a, o| a.lcm(&o));
    Ok(IsogenyCharacter { values, order })
}

fn mult_order(v: u64) -> u64 {
    (1..=6).find(|&k| arith::powmod(v, k, 7) == 1).unwrap()
}

/// Good primes `l >= 5`, `l != 7`, for both curves.
fn character_primes(curves: &[&RationalEC], count: usize) -> Vec<u64> {
    PrimeIter::after(4)
        .filter(|&l| l != 7 && curves.iter().all(|e| arith::mod_u64(e.discriminant(), l) != 0))
        .take(count)
        .collect()
}

/// Number of primes compared by `align_characters`.
pub const ALIGN_SAMPLES: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alignment {
    Keep,
    Swap,
}

/// Match the isogeny characters of two curves with congruent semisimplifications.
pub fn align_characters(e1: &RationalEC, e2: &RationalEC) -> Result<Alignment> {
    let s1 = SevenIsogeny::new(e1)?;
    let s2 = SevenIsogeny::new(e2)?;
    align_isogenies(&s1, &s2)
}

fn align_isogenies(s1: &SevenIsogeny, s2: &SevenIsogeny) -> Result<Alignment> {
    let (mut keep, mut swap) = (true, true);
    for l in character_primes(&[s1.curve(), s2.curve()], ALIGN_SAMPLES) {
        let (a1, _) = s1.characters(l)?;
        let (b1, b2) = s2.characters(l)?;
        keep &= a1 == b1;
        swap &= a1 == b2;
    }
    match (keep, swap) {
        (true, _) => Ok(Alignment::Keep),
        (false, true) => Ok(Alignment::Swap),
        (false, false) => Err(Error::CharacterMismatch(
            "neither chi1' nor chi2' matches chi1".into(),
        )),
    }
}

/// Outcome of comparing two degree-7 fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldIso {
    /// `num(t) / den` is a root of `f2` in `Q[t]/(f1)` (monic generators).
    Yes { num: ZPoly, den: BigInt },
    /// Modulo this prime the two polynomials factor with different degree patterns.
    No { witness: u64 },
    Undetermined,
}

/// Primes scanned for degree-pattern witnesses.
const PATTERN_PRIMES: usize = 400;
/// Largest modulus tried for the isomorphism certificate, in bits.
const MAX_CERT_BITS: u64 = 8192;

pub fn fields_isomorphic(f1: &SevenIsogenyField, f2: &SevenIsogenyField) -> Result<FieldIso> {
    fields_isomorphic_poly(&f1.f, &f2.f)
}

/// Isomorphism test for the fields cut out by two monic irreducible integer polynomials.
pub fn fields_isomorphic_poly(f1: &ZPoly, f2: &ZPoly) -> Result<FieldIso> {
    for f in [f1, f2] {
        if !f.is_monic() || !poly::is_irreducible(f) {
            return Err(Error::Invalid("field generators must be monic and irreducible".into()));
        }
    }
    if f1.degree() != f2.degree() {
        return Ok(FieldIso::No { witness: 0 });
    }
    if f1 == f2 {
        return Ok(FieldIso::Yes {
            num: ZPoly::x(),
            den: BigInt::one(),
        });
    }
    let n = f1.degree();
    let mut split = Vec::new();
    let mut scanned = 0;
    for q in PrimeIter::after(2) {
        if scanned >= PATTERN_PRIMES && !split.is_empty() || scanned >= 20 * PATTERN_PRIMES {
            break;
        }
        if !f1.is_good_prime(q) || !f2.is_good_prime(q) {
            continue;
        }
        scanned += 1;
        let (p1, p2) = (f1.to_fp(q).degree_pattern(), f2.to_fp(q).degree_pattern());
        if p1 != p2 {
            return Ok(FieldIso::No { witness: q });
        }
        if p1.len() == n && split.len() < 3 {
            split.push(q);
        }
    }
    for q in split {
        if let Some((num, den)) = certify_by_interpolation(f1, f2, q) {
            return Ok(FieldIso::Yes { num, den });
        }
    }
    Ok(FieldIso::Undetermined)
}

/// With `f1`, `f2` split into linear factors mod `q`, lift all roots and interpolate every
/// bijection between them; a bijection coming from a field isomorphism interpolates to a
/// polynomial of small height.
fn certify_by_interpolation(f1: &ZPoly, f2: &ZPoly, q: u64) -> Option<(ZPoly, BigInt)> {
    let n = f1.degree();
    let r1 = f1.to_fp(q).roots();
    let r2 = f2.to_fp(q).roots();
    if r1.len() != n || r2.len() != n {
        return None;
    }
    let mut bits = 256u64;
    while bits <= MAX_CERT_BITS {
        let k = (bits as f64 / (q as f64).log2()).ceil() as u32;
        let m = BigInt::from(q).pow(k);
        let a: Vec<BigInt> = r1.iter().map(|&r| poly::lift_root(f1, r, q, k)).collect();
        let b: Vec<BigInt> = r2.iter().map(|&r| poly::lift_root(f2, r, q, k)).collect();
        let basis = lagrange_basis(&a, &m);
        // table[i][j][c]: coefficient c of b_j * L_i.
        let table: Vec<Vec<Vec<BigInt>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| basis[i].iter().map(|c| (c * &b[j]).mod_floor(&m)).collect())
                    .collect()
            })
            .collect();
        let bound = (&m >> 70u32).sqrt();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if let Some(g) = try_permutation(&table, &perm, &m, &bound) {
                if poly::composes_to_zero_mod(f2, &g.0, &g.1, f1) {
                    return Some(g);
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        bits *= 4;
    }
    None
}

fn try_permutation(table: &[Vec<Vec<BigInt>>], perm: &[usize], m: &BigInt, bound: &BigInt) -> Option<(ZPoly, BigInt)> {
    let n = perm.len();
    let mut fracs = Vec::with_capacity(n);
    for c in 0..n {
        let s = (0..n).fold(BigInt::zero(), |acc, i| acc + &table[i][perm[i]][c]).mod_floor(m);
        fracs.push(arith::rational_reconstruct(&s, m, bound, bound)?);
    }
    let den = fracs.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let num = fracs
        .iter()
        .map(|r| r.numer() * (&den / r.denom()))
        .collect();
    Some((ZPoly::new(num), den))
}

/// Coefficient vectors of the Lagrange basis at the nodes `a` modulo `m`.
fn lagrange_basis(a: &[BigInt], m: &BigInt) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            let mut c = vec![BigInt::one()];
            let mut denom = BigInt::one();
            for j in (0..n).filter(|&j| j != i) {
                let mut next = vec![BigInt::zero(); c.len() + 1];
                for (k, ck) in c.iter().enumerate() {
                    next[k + 1] += ck;
                    next[k] -= ck * &a[j];
                }
                c = next.into_iter().map(|x| x.mod_floor(m)).collect();
                denom = (denom * (&a[i] - &a[j])).mod_floor(m);
            }
            let inv = arith::invmod_big(&denom, m).expect("distinct roots mod q");
            c.into_iter().map(|x| (x * &inv).mod_floor(m)).collect()
        })
        .collect()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Verdict on a genuine (not only semisimplified) mod-7 congruence.
#[derive(Clone, Debug)]
pub struct ReducibleVerdict {
    /// `None` when the field comparison was inconclusive.
    pub congruent: Option<bool>,
    pub alignment: Alignment,
    /// The member of the second curve's 7-isogeny pair that was compared.
    pub representative: RationalEC,
    pub fields: FieldIso,
}

pub fn reducible_congruent(e1: &RationalEC, e2: &RationalEC) -> Result<ReducibleVerdict> {
    let s1 = SevenIsogeny::new(e1)?;
    let s2 = SevenIsogeny::new(e2)?;
    let alignment = align_isogenies(&s1, &s2)?;
    let representative = match alignment {
        Alignment::Keep => s2.curve().clone(),
        Alignment::Swap => s2.partner()?,
    };
    let f1 = second_isogeny_field(s1.curve())?;
    let f2 = second_isogeny_field(&representative)?;
    let fields = fields_isomorphic(&f1, &f2)?;
    let congruent = match fields {
        FieldIso::Yes { .. } => Some(true),
        FieldIso::No { .. } => Some(false),
        FieldIso::Undetermined => None,
    };
    Ok(ReducibleVerdict {
        congruent,
        alignment,
        representative,
        fields,
    })
}

/// Upper-triangular `[[a, b], [0, d]]` over `F_p`.
type Tri = (u64, u64, u64);

fn tri_mul(x: Tri, y: Tri, p: u64) -> Tri {
    (x.0 * y.0 % p, (x.0 * y.1 + x.1 * y.2) % p, x.2 * y.2 % p)
}

fn tri_inv(x: Tri, p: u64) -> Tri {
    let ai = arith::invmod(x.0, p).unwrap();
    let di = arith::invmod(x.2, p).unwrap();
    (ai, (p - x.1) % p * ai % p * di % p, di)
}

fn closure(gens: &[Tri], p: u64) -> BTreeSet<Tri> {
    let mut seen: BTreeSet<Tri> = BTreeSet::from([(1, 0, 1)]);
    let mut queue: VecDeque<Tri> = VecDeque::from([(1, 0, 1)]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = tri_mul(x, g, p);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Extend generator images to a homomorphism of the group generated by `gens`, if one exists.
fn extend_hom(gens: &[Tri], images: &[Tri], p: u64) -> Option<HashMap<Tri, Tri>> {
    let mut map: HashMap<Tri, Tri> = HashMap::from([((1, 0, 1), (1, 0, 1))]);
    let mut queue: VecDeque<Tri> = VecDeque::from([(1, 0, 1)]);
    while let Some(x) = queue.pop_front() {
        let fx = map[&x];
        for (&g, &fg) in gens.iter().zip(images) {
            let y = tri_mul(x, g, p);
            let fy = tri_mul(fx, fg, p);
            match map.get(&y) {
                Some(&v) if v != fy => return None,
                Some(_) => {}
                None => {
                    map.insert(y, fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}

/// Summary of the exhaustive check that unipotent-coset-preserving automorphisms of
/// subgroups `D U` of the Borel are inner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelReport {
    pub p: u64,
    pub subgroups: usize,
    pub automorphisms: usize,
    pub inner: usize,
}

impl BorelReport {
    pub fn passed(&self) -> bool {
        self.automorphisms == self.inner
    }
}

pub fn borel_conjugation_oracle(p: u64) -> BorelReport {
    assert!(arith::is_prime(p) && p <= 13, "oracle is exhaustive; keep p small");
    let units: Vec<u64> = (1..p).collect();
    let torus: Vec<Tri> = units
        .iter()
        .flat_map(|&a| units.iter().map(move |&d| (a, 0, d)))
        .collect();
    let borel: Vec<Tri> = torus
        .iter()
        .flat_map(|&(a, _, d)| (0..p).map(move |b| (a, b, d)))
        .collect();
    let u: Tri = (1, 1, 1);
    let mut seen_d: BTreeSet<Vec<Tri>> = BTreeSet::new();
    let mut report = BorelReport {
        p,
        subgroups: 0,
        automorphisms: 0,
        inner: 0,
    };
    for &g1 in &torus {
        for &g2 in &torus {
            let d: Vec<Tri> = closure(&[g1, g2], p).into_iter().collect();
            if !seen_d.insert(d.clone()) {
                continue;
            }
            report.subgroups += 1;
            let gens = [g1, g2, u];
            let h = closure(&gens, p);
            debug_assert_eq!(h.len(), d.len() * p as usize);
            let coset = |g: Tri| -> Vec<Tri> { (0..p).map(|k| tri_mul(g, (1, k, 1), p)).collect() };
            let (c1, c2, c3) = (coset(g1), coset(g2), coset(u));
            for &x1 in &c1 {
                for &x2 in &c2 {
                    for &x3 in &c3 {
                        let images = [x1, x2, x3];
                        let Some(map) = extend_hom(&gens, &images, p) else {
                            continue;
                        };
                        let image: BTreeSet<Tri> = map.values().copied().collect();
                        if image.len() != h.len() {
                            continue;
                        }
                        let preserves_cosets = map.iter().all(|(&x, &y)| x.0 == y.0 && x.2 == y.2);
                        if !preserves_cosets {
                            continue;
                        }
                        report.automorphisms += 1;
                        let inner = borel.iter().any(|&a| {
                            let ai = tri_inv(a, p);
                            gens.iter()
                                .zip(&images)
                                .all(|(&g, &img)| tri_mul(tri_mul(a, g, p), ai, p) == img)
                        });
                        if inner {
                            report.inner += 1;
                        }
                    }
                }
            }
        }
    }
    report
}

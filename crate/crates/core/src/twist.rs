//! Congruences between an elliptic curve and its twists, with their symplectic type.

use crate::arith;
use crate::curve::RationalEC;
use crate::error::{Error, Result};
use crate::galois::{CartanClass, CartanKind, DihedralWitness};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeValue {
    Symplectic,
    Antisymplectic,
    Both,
    Undetermined,
}

/// The criterion that decided a type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    IsogenyCriterion,
    QuadraticTwist,
    HigherTwist,
    CmTwist,
    ExternalOracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticType {
    pub value: TypeValue,
    pub basis: Basis,
}

impl SymplecticType {
    pub fn new(value: TypeValue, basis: Basis) -> Self {
        SymplecticType { value, basis }
    }

    pub fn from_sign(symplectic: bool, basis: Basis) -> Self {
        let value = if symplectic {
            TypeValue::Symplectic
        } else {
            TypeValue::Antisymplectic
        };
        SymplecticType { value, basis }
    }

    pub fn undetermined(basis: Basis) -> Self {
        SymplecticType::new(TypeValue::Undetermined, basis)
    }

    pub fn is_determined(&self) -> bool {
        matches!(self.value, TypeValue::Symplectic | TypeValue::Antisymplectic)
    }

    /// Type of the composite of two isomorphisms; the basis of `self` is kept.
    pub fn compose(&self, other: &SymplecticType) -> SymplecticType {
        use TypeValue::*;
        let value = match (self.value, other.value) {
            (Undetermined, _) | (_, Undetermined) => Undetermined,
            (Both, _) | (_, Both) => Both,
            (a, b) if a == b => Symplectic,
            _ => Antisymplectic,
        };
        SymplecticType::new(value, self.basis)
    }

    /// Combine two verdicts on the same pair. Conflicting determined types give `Both` only
    /// when `E[p]` admits antisymplectic automorphisms.
    pub fn merge(&self, other: &SymplecticType, condition_s: bool) -> Result<SymplecticType> {
        use TypeValue::*;
        match (self.value, other.value) {
            (_, Undetermined) => Ok(*self),
            (Undetermined, _) => Ok(*other),
            (a, b) if a == b => Ok(*self),
            _ if condition_s => Err(Error::Inconsistent(format!(
                "{:?} ({:?}) against {:?} ({:?})",
                self.value, self.basis, other.value, other.basis
            ))),
            _ => Ok(SymplecticType::new(Both, self.basis)),
        }
    }
}

impl fmt::Display for TypeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeValue::Symplectic => "symplectic",
            TypeValue::Antisymplectic => "antisymplectic",
            TypeValue::Both => "both",
            TypeValue::Undetermined => "undetermined",
        })
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::IsogenyCriterion => "isogeny",
            Basis::QuadraticTwist => "quadratic-twist",
            Basis::HigherTwist => "higher-twist",
            Basis::CmTwist => "cm-twist",
            Basis::ExternalOracle => "oracle",
        })
    }
}

/// A congruence `E[p] = E'[p]` with `E'` a twist of `E` of order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCongruence {
    pub partner: RationalEC,
    pub n: u32,
    pub param: BigRational,
    pub p: u64,
    pub kind: SymplecticType,
}

/// An isogeny of degree `n` prime to `p` induces a symplectic isomorphism iff `n` is a square mod `p`.
pub fn isogeny_criterion(n: u64, p: u64) -> Result<SymplecticType> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n.is_multiple_of(p) {
        return Err(Error::IsogenyDegreeDivisibleByP { n, p });
    }
    let sym = p == 2 || arith::legendre_u64(n % p, p) == 1;
    Ok(SymplecticType::from_sign(sym, Basis::IsogenyCriterion))
}

pub fn quadratic_twist_type(cartan: &CartanClass, p: u64) -> SymplecticType {
    let sym = match cartan.kind {
        CartanKind::Split => p % 4 == 1,
        CartanKind::NonSplit => p % 4 == 3,
        CartanKind::Undetermined => return SymplecticType::undetermined(Basis::QuadraticTwist),
    };
    SymplecticType::from_sign(sym, Basis::QuadraticTwist)
}

/// Partners coming from a dihedral projective image.
pub fn find_quadratic_twist_congruence(e: &RationalEC, p: u64, w: &DihedralWitness) -> Result<Vec<TwistCongruence>> {
    if w.projective_order_4 {
        let pstar = BigInt::from(arith::p_star(p));
        return w
            .candidates
            .iter()
            .map(|d| {
                let kind = SymplecticType::from_sign(*d == pstar, Basis::QuadraticTwist);
                quadratic_partner(e, d, p, kind)
            })
            .collect();
    }
    let kind = quadratic_twist_type(&w.cartan, p);
    Ok(vec![quadratic_partner(e, &w.d, p, kind)?])
}

fn quadratic_partner(e: &RationalEC, d: &BigInt, p: u64, kind: SymplecticType) -> Result<TwistCongruence> {
    let j1728 = e.j_invariant() == BigRational::from_integer(1728.into());
    if j1728 && *d == -BigInt::one() {
        let u = BigRational::from_integer((-4).into());
        let kind = SymplecticType { basis: Basis::CmTwist, ..isogeny_criterion(2, p)? };
        return Ok(TwistCongruence {
            partner: e.quartic_twist(&u)?,
            n: 4,
            param: u,
            p,
            kind,
        });
    }
    Ok(TwistCongruence {
        partner: e.quadratic_twist(d)?,
        n: 2,
        param: BigRational::from_integer(d.clone()),
        p,
        kind,
    })
}

/// Congruence between a CM curve and its twist by the CM field (for `D = 4`, the quartic twist
/// by `-4`). `d` is the absolute value of the CM discriminant.
pub fn cm_twist_congruence(e: &RationalEC, d: u64, p: u64) -> Result<TwistCongruence> {
    let disc = e
        .cm_discriminant()
        .ok_or_else(|| Error::UnsupportedJ(e.j_invariant().to_string()))?;
    if disc != -(d as i64) {
        return Err(Error::Invalid(format!("curve has CM discriminant {disc}, not -{d}")));
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::BadPrime { p, reason: "CM twist criterion needs p >= 5" });
    }
    if d.is_multiple_of(p) {
        return Err(Error::BadPrime { p, reason: "p ramifies in the CM field" });
    }
    if d == 3 && p % 9 != 1 && p % 9 != 8 {
        return Err(Error::BadPrime { p, reason: "D = 3 needs p = +-1 mod 9" });
    }
    let sym = match d {
        4 => arith::legendre_u64(2, p) == 1,
        _ => arith::legendre_u64(d % p, p) == 1,
    };
    let kind = SymplecticType::from_sign(sym, Basis::CmTwist);
    if d == 4 {
        let u = BigRational::from_integer((-4).into());
        return Ok(TwistCongruence {
            partner: e.quartic_twist(&u)?,
            n: 4,
            param: u,
            p,
            kind,
        });
    }
    let dd = BigInt::from(-(d as i64));
    Ok(TwistCongruence {
        partner: e.quadratic_twist(&dd)?,
        n: 2,
        param: BigRational::from_integer(dd),
        p,
        kind,
    })
}

/// Pairs `(j, p)` with explicit higher-twist partners.
pub const HIGHER_TWIST_CASES: [(i64, u64); 4] = [(1728, 3), (1728, 5), (0, 5), (0, 7)];

/// The explicit higher-twist partners of a `j = 0` or `j = 1728` curve.
pub fn higher_twist_partner(e: &RationalEC, p: u64) -> Result<Vec<TwistCongruence>> {
    let (a, b) = e.short_model();
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let sym = |v: bool| SymplecticType::from_sign(v, Basis::HigherTwist);
    // Each entry: twist order, the partner's coefficient as a function of `c`, and whether the
    // congruence is symplectic.
    let (c, n, table): (BigRational, u32, Vec<(BigRational, bool)>) = match (a.is_zero(), b.is_zero(), p) {
        (false, true, 3) => {
            let c = BigRational::from(a);
            let s = -r(1, 3) / &c;
            (c.clone(), 4, vec![(s.clone(), true), (&c * r(-4, 1), false), (s * r(-4, 1), false)])
        }
        (false, true, 5) => {
            let c = BigRational::from(a);
            let s = r(5, 1) / &c;
            (c.clone(), 4, vec![(s.clone(), true), (&c * r(-4, 1), false), (s * r(-4, 1), false)])
        }
        (true, false, 5) => {
            let c = BigRational::from(b);
            let s = r(4, 5) / &c;
            (c.clone(), 6, vec![(s.clone(), true), (&c * r(-27, 1), false), (s * r(-27, 1), false)])
        }
        (true, false, 7) => {
            let c = BigRational::from(b);
            let s = r(-28, 1) / &c;
            (c.clone(), 6, vec![(s.clone(), true), (&c * r(-27, 1), false), (s * r(-27, 1), false)])
        }
        (false, false, _) => return Err(Error::UnsupportedJ(e.j_invariant().to_string())),
        _ => return Ok(Vec::new()),
    };
    table
        .into_iter()
        .map(|(coef, s)| {
            let partner = if n == 4 {
                RationalEC::from_short(&coef, &BigRational::zero())?
            } else {
                RationalEC::from_short(&BigRational::zero(), &coef)?
            };
            Ok(TwistCongruence {
                partner,
                n,
                param: coef / &c,
                p,
                kind: sym(s),
            })
        })
        .collect()
}

/// Type of the congruence between `E` and its twist of order `n` by `u` (over `Q`).
pub fn higher_twist_type(n: u32, u: &BigRational, p: u64) -> Result<SymplecticType> {
    if u.is_zero() {
        return Err(Error::ZeroTwist);
    }
    if !arith::is_prime(p) || p == 2 {
        return Err(Error::BadPrime { p, reason: "higher twist type needs an odd prime" });
    }
    let class = arith::squarefree_part_rat(u);
    let one = BigInt::one();
    match n {
        3 => {
            if class == one || class == BigInt::from(-3) {
                return Err(Error::ExcludedTwist("u is 1 or -3 times a square"));
            }
            return Ok(SymplecticType::from_sign(false, Basis::HigherTwist));
        }
        4 => {
            if class.abs() == one {
                return Err(Error::ExcludedTwist("u is +-1 times a square"));
            }
            if p % 8 != 3 && p % 8 != 5 {
                return Err(Error::BadPrime { p, reason: "quartic twist congruence needs p = +-3 mod 8" });
            }
        }
        6 => {
            if class == one || class == BigInt::from(-3) {
                return Err(Error::ExcludedTwist("u is 1 or -3 times a square"));
            }
            if p % 12 != 5 && p % 12 != 7 {
                return Err(Error::BadPrime { p, reason: "sextic twist congruence needs p = +-5 mod 12" });
            }
        }
        _ => return Err(Error::Invalid(format!("twist order {n} is not 3, 4 or 6"))),
    }
    let upstar = u * BigRational::from_integer(arith::p_star(p).into());
    Ok(SymplecticType::from_sign(arith::is_rational_square(&upstar), Basis::HigherTwist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::FrobeniusEngine;
    use crate::galois::{self, SampleConfig};
    use crate::isogeny;

    fn short(a: i64, b: i64) -> RationalEC {
        RationalEC::from_short_int(&a.into(), &b.into()).unwrap()
    }

    fn sym(v: bool) -> TypeValue {
        if v {
            TypeValue::Symplectic
        } else {
            TypeValue::Antisymplectic
        }
    }

    /// `a_l(E) = a_l(E') mod p` at the first `count` primes good for both.
    fn traces_congruent(e: &RationalEC, f: &RationalEC, p: u64, count: usize) -> bool {
        let (ee, fe) = (FrobeniusEngine::new(e), FrobeniusEngine::new(f));
        let mut seen = 0;
        for l in arith::PrimeIter::after(1) {
            if seen == count {
                return true;
            }
            let (x, y) = (ee.ap(l), fe.ap(l));
            if !x.is_good() || !y.is_good() || l == p {
                continue;
            }
            seen += 1;
            if (x.value() - y.value()).rem_euclid(p as i64) != 0 {
                return false;
            }
        }
        unreachable!()
    }

    #[test]
    fn isogeny_criterion_matches_squares() {
        assert_eq!(isogeny_criterion(1, 11).unwrap().value, TypeValue::Symplectic);
        assert_eq!(isogeny_criterion(2, 7).unwrap().value, TypeValue::Symplectic);
        assert_eq!(isogeny_criterion(3, 7).unwrap().value, TypeValue::Antisymplectic);
        assert!(isogeny_criterion(14, 7).is_err());
        for p in [3u64, 5, 7, 11, 13, 17] {
            let squares: Vec<u64> = (1..p).map(|x| x * x % p).collect();
            for n in 1..60 {
                if n % p == 0 {
                    continue;
                }
                let t = isogeny_criterion(n, p).unwrap();
                assert_eq!(t.value, sym(squares.contains(&(n % p))), "n = {n}, p = {p}");
            }
        }
    }

    #[test]
    fn quadratic_type_dichotomy() {
        let c = |kind| CartanClass { kind, split_votes: 10, nonsplit_votes: 0 };
        assert_eq!(quadratic_twist_type(&c(CartanKind::NonSplit), 7).value, TypeValue::Symplectic);
        assert_eq!(quadratic_twist_type(&c(CartanKind::Split), 5).value, TypeValue::Symplectic);
        assert_eq!(quadratic_twist_type(&c(CartanKind::Split), 7).value, TypeValue::Antisymplectic);
        assert_eq!(quadratic_twist_type(&c(CartanKind::Undetermined), 7).value, TypeValue::Undetermined);
        for p in arith::primes_up_to(200).into_iter().skip(1) {
            assert_ne!(
                quadratic_twist_type(&c(CartanKind::Split), p),
                quadratic_twist_type(&c(CartanKind::NonSplit), p)
            );
        }
    }

    #[test]
    fn composition_and_merge() {
        let s = SymplecticType::from_sign(true, Basis::QuadraticTwist);
        let a = SymplecticType::from_sign(false, Basis::IsogenyCriterion);
        assert_eq!(s.compose(&a).value, TypeValue::Antisymplectic);
        assert_eq!(a.compose(&a).value, TypeValue::Symplectic);
        assert_eq!(s.compose(&a).basis, Basis::QuadraticTwist);
        assert_eq!(s.merge(&a, false).unwrap().value, TypeValue::Both);
        assert!(s.merge(&a, true).is_err());
        let u = SymplecticType::undetermined(Basis::ExternalOracle);
        assert_eq!(u.merge(&a, true).unwrap(), a);
    }

    #[test]
    fn cm_twist_types() {
        let e7 = RationalEC::from_j(&BigRational::from_integer((-3375).into())).unwrap();
        let t = cm_twist_congruence(&e7, 7, 11).unwrap();
        assert_eq!(t.kind.value, TypeValue::Antisymplectic);
        assert!(traces_congruent(&e7, &t.partner, 11, 200));
        let e4 = short(1, 0);
        let t = cm_twist_congruence(&e4, 4, 7).unwrap();
        assert_eq!(t.kind.value, TypeValue::Symplectic);
        assert_eq!(t.partner, short(-4, 0));
        let e3 = short(0, 1);
        let t = cm_twist_congruence(&e3, 3, 17).unwrap();
        assert_eq!(t.kind.value, TypeValue::Antisymplectic);
        assert!(traces_congruent(&e3, &t.partner, 17, 200));
        assert!(cm_twist_congruence(&e3, 3, 7).is_err());
        assert!(cm_twist_congruence(&e7, 7, 7).is_err());
        assert!(cm_twist_congruence(&e7, 7, 3).is_err());
        assert!(cm_twist_congruence(&e4, 7, 11).is_err());
    }

    #[test]
    fn cm_twist_type_agrees_with_the_cm_isogeny() {
        // E^{-D} is D-isogenous to E, so the isogeny criterion gives the same answer.
        for (d, j) in curve_cm_table() {
            let e = RationalEC::from_j(&j).unwrap();
            for p in arith::primes_up_to(60).into_iter().filter(|&p| p >= 5) {
                let Ok(t) = cm_twist_congruence(&e, d, p) else {
                    continue;
                };
                let deg = if d == 4 { 2 } else { d };
                assert_eq!(t.kind.value, isogeny_criterion(deg, p).unwrap().value, "D = {d}, p = {p}");
                assert!(traces_congruent(&e, &t.partner, p, 200), "D = {d}, p = {p}");
            }
        }
    }

    fn curve_cm_table() -> Vec<(u64, BigRational)> {
        crate::curve::CM_J_TABLE
            .iter()
            .map(|(d, j)| ((-d) as u64, BigRational::from_integer(j.parse().unwrap())))
            .collect()
    }

    #[test]
    fn explicit_higher_twist_partners() {
        let got = higher_twist_partner(&short(0, 1), 7).unwrap();
        let want = [(short(0, -28), true), (short(0, -27), false), (short(0, 756), false)];
        assert_eq!(got.len(), 3);
        for (t, (c, s)) in got.iter().zip(want) {
            assert_eq!(t.partner, c);
            assert_eq!(t.kind.value, sym(s));
        }
        let got = higher_twist_partner(&short(1, 0), 5).unwrap();
        let want = [(short(5, 0), true), (short(-4, 0), false), (short(-20, 0), false)];
        for (t, (c, s)) in got.iter().zip(want) {
            assert_eq!(t.partner, c);
            assert_eq!(t.kind.value, sym(s));
        }
        assert!(higher_twist_partner(&short(1, 0), 7).unwrap().is_empty());
        assert!(higher_twist_partner(&short(-1, 1), 7).is_err());
    }

    fn higher_twist_family() -> Vec<(RationalEC, u64)> {
        let mut out = Vec::new();
        for a in [1, -1, 2, 3, -5, 6, 7, 10, -11, 13] {
            out.push((short(a, 0), 3));
            out.push((short(a, 0), 5));
        }
        for b in [1, -1, 2, 3, 5, -7, 10, 11, -13, 17] {
            out.push((short(0, b), 5));
            out.push((short(0, b), 7));
        }
        out
    }

    #[test]
    fn higher_twist_partners_are_congruent() {
        for (e, p) in higher_twist_family() {
            for t in higher_twist_partner(&e, p).unwrap() {
                assert!(traces_congruent(&e, &t.partner, p, 200), "{e} ~ {} mod {p}", t.partner);
            }
        }
    }

    #[test]
    fn higher_twist_types_close_under_isogenies() {
        for (e, p) in higher_twist_family() {
            let ts = higher_twist_partner(&e, p).unwrap();
            let (deg, n) = if ts[0].n == 4 { (2, 4) } else { (3, 6) };
            let flip = isogeny_criterion(deg, p).unwrap();
            // ts[1] is the image of E and ts[2] the image of ts[0] under the deg-isogeny.
            let ker = isogeny::kernel_polynomials(&e, deg);
            assert!(isogeny::isogenous_curves(&e, deg).iter().any(|(_, c)| *c == ts[1].partner));
            assert!(isogeny::isogenous_curves(&ts[0].partner, deg).iter().any(|(_, c)| *c == ts[2].partner));
            assert!(!ker.is_empty());
            let identity = SymplecticType::from_sign(true, Basis::IsogenyCriterion);
            assert_eq!(identity.compose(&flip).value, ts[1].kind.value);
            assert_eq!(ts[0].kind.compose(&flip).value, ts[2].kind.value);
            let direct = higher_twist_type(n, &ts[0].param, p).unwrap();
            assert_eq!(direct.value, ts[0].kind.value, "{e} mod {p}");
        }
    }

    #[test]
    fn higher_twist_type_rules() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(higher_twist_type(6, &r(-28, 9), 7).unwrap().value, TypeValue::Symplectic);
        assert_eq!(higher_twist_type(4, &r(5, 4), 5).unwrap().value, TypeValue::Symplectic);
        assert_eq!(higher_twist_type(4, &r(-5, 4), 5).unwrap().value, TypeValue::Antisymplectic);
        assert_eq!(higher_twist_type(3, &r(2, 1), 7).unwrap().value, TypeValue::Antisymplectic);
        assert!(matches!(higher_twist_type(4, &r(-4, 1), 5), Err(Error::ExcludedTwist(_))));
        assert!(matches!(higher_twist_type(6, &r(-27, 1), 7), Err(Error::ExcludedTwist(_))));
        assert!(matches!(higher_twist_type(3, &r(4, 1), 7), Err(Error::ExcludedTwist(_))));
        assert!(matches!(higher_twist_type(4, &r(5, 1), 7), Err(Error::BadPrime { .. })));
        assert!(matches!(higher_twist_type(6, &r(2, 1), 11), Err(Error::BadPrime { .. })));
    }

    #[test]
    fn dihedral_example_gives_symplectic_quadratic_twist() {
        let e = RationalEC::new([
            0.into(),
            (-1).into(),
            1.into(),
            "-74988699621831".parse().unwrap(),
            "238006866237979285299".parse().unwrap(),
        ])
        .unwrap();
        let cfg = SampleConfig::default();
        let traces = galois::sample_traces(&e, 7, cfg.window);
        let w = galois::trace_zero_quadratic(&e, 7, &traces, &cfg).unwrap();
        let ts = find_quadratic_twist_congruence(&e, 7, &w).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].param, BigRational::from_integer((-939239).into()));
        assert_eq!(ts[0].kind.value, TypeValue::Symplectic);
        assert!(traces_congruent(&e, &ts[0].partner, 7, 200));
    }

    #[test]
    fn projective_klein_image_gives_three_partners() {
        let e = short(-6, -8);
        let psi3 = isogeny::DivisionPolys::of_curve(&e).get(3);
        let factors = crate::poly::rational_factors_up_to(&psi3, 2);
        assert!(factors.iter().all(|g| g.degree() == 2) && factors.len() == 2);
        let cfg = SampleConfig::default();
        let traces = galois::sample_traces(&e, 3, cfg.window);
        let w = galois::trace_zero_quadratic(&e, 3, &traces, &cfg).unwrap();
        assert!(w.projective_order_4);
        let ts = find_quadratic_twist_congruence(&e, 3, &w).unwrap();
        let mut got: Vec<(BigRational, TypeValue)> = ts.iter().map(|t| (t.param.clone(), t.kind.value)).collect();
        got.sort();
        let r = |d: i64| BigRational::from_integer(d.into());
        assert_eq!(
            got,
            vec![(r(-3), TypeValue::Symplectic), (r(-2), TypeValue::Antisymplectic), (r(6), TypeValue::Antisymplectic)]
        );
        for t in &ts {
            assert!(traces_congruent(&e, &t.partner, 3, 200));
        }
    }

    #[test]
    fn j1728_minus_one_uses_the_two_isogenous_quartic_partner() {
        let e = short(3, 0);
        let w = DihedralWitness {
            d: BigInt::from(-1),
            cartan: CartanClass { kind: CartanKind::Split, split_votes: 20, nonsplit_votes: 0 },
            projective_order_4: false,
            candidates: vec![BigInt::from(-1)],
        };
        let ts = find_quadratic_twist_congruence(&e, 5, &w).unwrap();
        assert_eq!(ts[0].n, 4);
        assert_eq!(ts[0].partner, short(-12, 0));
        assert_eq!(ts[0].kind.value, TypeValue::Antisymplectic);
        assert_eq!(ts[0].kind.value, isogeny_criterion(2, 5).unwrap().value);
        assert!(traces_congruent(&e, &ts[0].partner, 5, 200));
    }

    #[test]
    fn no_higher_twists_for_generic_j() {
        let e = RationalEC::from_i64([0, 0, 1, -1, 0]).unwrap();
        assert!(higher_twist_partner(&e, 5).is_err());
    }
}

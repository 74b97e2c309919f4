//! Trace-hash sieving of isogeny classes and Sturm-bound certification of congruences.

use crate::arith::{self, PrimeIter};
use crate::curve::RationalEC;
use crate::error::{Error, Result};
use crate::frobenius::{FrobTrace, FrobeniusEngine, TraceVector};
use crate::tate;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Default number of primes in the hash window.
pub const DEFAULT_WINDOW: usize = 50;

/// Largest Sturm bound `ko_certify` will scan before giving up.
pub const DEFAULT_KO_CAP: u64 = 20_000_000;

/// Wrapped 64-bit value of `sum a_i p^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HashKey {
    pub value: u64,
}

/// Hash of the residues `a_l mod p` over a prime window.
pub fn hash_curve(t: &TraceVector, p: u64) -> Result<HashKey> {
    let mut value = 0u64;
    let mut pw = 1u64;
    for (&ell, a) in t.primes.iter().zip(&t.values) {
        let FrobTrace::Good(_) = a else {
            return Err(Error::BadPrime {
                p: ell,
                reason: "bad reduction inside the hash window",
            });
        };
        value = value.wrapping_add(a.residue(p).wrapping_mul(pw));
        pw = pw.wrapping_mul(p);
    }
    Ok(HashKey { value })
}

/// The unwrapped hash, kept only while it fits in 512 bits.
pub fn hash_exact(t: &TraceVector, p: u64) -> Option<BigUint> {
    let bits = t.values.len() as f64 * (p as f64).log2();
    if bits > 512.0 {
        return None;
    }
    let bp = BigUint::from(p);
    let mut acc = BigUint::zero();
    for a in t.values.iter().rev() {
        acc = acc * &bp + BigUint::from(a.residue(p));
    }
    Some(acc)
}

/// The `b` smallest primes strictly greater than `bound`.
pub fn build_prime_window(bound: u64, b: usize) -> Vec<u64> {
    PrimeIter::after(bound).take(b).collect()
}

/// As `build_prime_window`, skipping `p`.
pub fn prime_window_avoiding(bound: u64, b: usize, p: u64) -> Vec<u64> {
    PrimeIter::after(bound).filter(|&l| l != p).take(b).collect()
}

/// Isogeny classes sharing a hash key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SieveBucket {
    pub key: HashKey,
    pub exact: Option<BigUint>,
    pub members: Vec<String>,
}

impl SieveBucket {
    pub fn is_nontrivial(&self) -> bool {
        self.members.len() >= 2
    }
}

/// Hash-partition labelled curves, one per isogeny class.
pub fn partition(classes: &[(String, RationalEC)], p: u64, window: &[u64]) -> Result<Vec<SieveBucket>> {
    let traces: Vec<(String, TraceVector)> = classes
        .par_iter()
        .map(|(l, e)| (l.clone(), TraceVector::compute(&e.minimal_model(), window)))
        .collect();
    partition_traces(&traces, p)
}

/// Partition from precomputed trace vectors; buckets come out sorted by their first label.
pub fn partition_traces(traces: &[(String, TraceVector)], p: u64) -> Result<Vec<SieveBucket>> {
    let mut by_key: BTreeMap<HashKey, (Option<BigUint>, Vec<String>)> = BTreeMap::new();
    for (label, t) in traces {
        let key = hash_curve(t, p)?;
        let slot = by_key.entry(key).or_insert_with(|| (hash_exact(t, p), Vec::new()));
        slot.1.push(label.clone());
    }
    let mut out: Vec<SieveBucket> = by_key
        .into_iter()
        .map(|(key, (exact, mut members))| {
            members.sort();
            SieveBucket { key, exact, members }
        })
        .collect();
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// `floor(mu(N) / 6)` with `mu(N) = N prod_{q | N} (1 + 1/q)`.
pub fn sturm_bound(n: &BigInt) -> BigInt {
    assert!(n.sign() == Sign::Plus, "level must be positive");
    let f = arith::factor(n);
    sturm_from_factors(&f)
}

fn sturm_from_factors(f: &[(BigInt, u32)]) -> BigInt {
    let mu = f.iter().fold(BigInt::one(), |acc, (q, e)| {
        acc * q.pow(e - 1) * (q + 1u32)
    });
    mu / 6
}

/// Result of comparing traces up to the Sturm bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KoOutcome {
    Certified,
    /// A prime where the traces differ mod `p`.
    Refuted { witness: u64 },
    /// The bound is larger than the configured cap; nothing was proved.
    BoundExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoCertificate {
    pub outcome: KoOutcome,
    pub level: BigInt,
    pub bound: BigInt,
}

impl KoCertificate {
    pub fn certified(&self) -> bool {
        self.outcome == KoOutcome::Certified
    }

    pub fn witness(&self) -> Option<u64> {
        match self.outcome {
            KoOutcome::Refuted { witness } => Some(witness),
            _ => None,
        }
    }
}

/// Level `lcm(N, N') p^2` and its Sturm bound.
pub fn ko_level(e1: &RationalEC, e2: &RationalEC, p: u64) -> (BigInt, BigInt) {
    let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
    for e in [e1, e2] {
        for ld in tate::all_local_data(e) {
            let x = exps.entry(ld.p).or_insert(0);
            *x = (*x).max(ld.f);
        }
    }
    *exps.entry(p).or_insert(0) += 2;
    let f: Vec<(BigInt, u32)> = exps
        .into_iter()
        .filter(|&(_, e)| e > 0)
        .map(|(q, e)| (BigInt::from(q), e))
        .collect();
    let level = f.iter().fold(BigInt::one(), |a, (q, e)| a * q.pow(*e));
    let bound = sturm_from_factors(&f);
    (level, bound)
}

pub fn ko_certify(e1: &RationalEC, e2: &RationalEC, p: u64) -> KoCertificate {
    ko_certify_capped(e1, e2, p, DEFAULT_KO_CAP)
}

/// Check `a_l(E1) = a_l(E2) mod p` for every prime `l <= bound` not dividing `p N1 N2`.
pub fn ko_certify_capped(e1: &RationalEC, e2: &RationalEC, p: u64, cap: u64) -> KoCertificate {
    let (level, bound) = ko_level(e1, e2, p);
    let Some(b) = bound.to_u64().filter(|&b| b <= cap) else {
        return KoCertificate {
            outcome: KoOutcome::BoundExceeded,
            level,
            bound,
        };
    };
    let m1 = e1.minimal_model();
    let m2 = e2.minimal_model();
    let bad: BigInt = tate::conductor(&m1) * tate::conductor(&m2) * p;
    let outcome = match first_disagreement(&m1, &m2, p, &bad, b) {
        Some(witness) => KoOutcome::Refuted { witness },
        None => KoOutcome::Certified,
    };
    KoCertificate { outcome, level, bound }
}

/// Smallest prime `l <= bound`, `l` coprime to `bad`, with `a_l(E1) != a_l(E2) mod p`.
pub fn first_disagreement(e1: &RationalEC, e2: &RationalEC, p: u64, bad: &BigInt, bound: u64) -> Option<u64> {
    const CHUNK: usize = 1 << 13;
    let g1 = FrobeniusEngine::new(e1);
    let g2 = FrobeniusEngine::new(e2);
    let primes: Vec<u64> = arith::primes_up_to(bound)
        .into_iter()
        .filter(|&l| !arith::mod_u64(bad, l).is_zero())
        .collect();
    let differs = |&l: &u64| (g1.ap_good(l) - g2.ap_good(l)).mod_floor(&(p as i64)) != 0;
    let head = primes.len().min(256);
    if let Some(&l) = primes[..head].iter().find(|l| differs(l)) {
        return Some(l);
    }
    primes[head..]
        .par_chunks(CHUNK)
        .find_map_first(|c| c.iter().find(|l| differs(l)).copied())
}

/// Classes whose hashes collide, with their KO verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSet {
    pub p: u64,
    pub classes: Vec<String>,
    pub certified: bool,
    pub reducible: bool,
    /// Sturm bound used for each certified link, largest first.
    pub sturm_bounds: Vec<BigInt>,
    /// Primes refuting a hash collision.
    pub witnesses: Vec<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn e0(b: i64) -> RationalEC {
        RationalEC::from_short_int(&BigInt::zero(), &BigInt::from(b)).unwrap()
    }

    fn e1728(a: i64) -> RationalEC {
        RationalEC::from_short_int(&BigInt::from(a), &BigInt::zero()).unwrap()
    }

    #[test]
    fn hash_matches_direct_evaluation() {
        let t = TraceVector {
            primes: vec![11, 13, 17],
            values: vec![FrobTrace::Good(3), FrobTrace::Good(-7), FrobTrace::Good(-2)],
        };
        assert_eq!(hash_curve(&t, 7).unwrap().value, 248);
        assert_eq!(hash_exact(&t, 7).unwrap(), BigUint::from(248u32));
        let z = TraceVector {
            primes: vec![11; 40],
            values: vec![FrobTrace::Good(0); 40],
        };
        assert_eq!(hash_curve(&z, 97).unwrap().value, 0);
    }

    #[test]
    fn bad_prime_in_window_is_rejected() {
        let t = TraceVector {
            primes: vec![11],
            values: vec![FrobTrace::Bad(1)],
        };
        assert!(hash_curve(&t, 7).is_err());
    }

    #[test]
    fn wrapping_hash_agrees_with_exact_value_mod_2_64() {
        let primes = build_prime_window(1000, 20);
        let t = TraceVector::compute(&e0(7), &primes);
        let exact = hash_exact(&t, 13).unwrap();
        let low: BigUint = exact % (BigUint::one() << 64);
        let low = low.to_u64().unwrap();
        assert_eq!(hash_curve(&t, 13).unwrap().value, low);
    }

    #[test]
    fn prime_windows() {
        assert_eq!(build_prime_window(10, 3), vec![11, 13, 17]);
        assert_eq!(build_prime_window(500000, 2), vec![500009, 500029]);
        assert!(*build_prime_window(400000, 35).last().unwrap() < 400457);
        assert_eq!(prime_window_avoiding(6, 2, 7), vec![11, 13]);
    }

    #[test]
    fn sturm_bounds() {
        assert_eq!(sturm_bound(&BigInt::from(11)), BigInt::from(2));
        assert_eq!(sturm_bound(&BigInt::from(1)), BigInt::zero());
        assert_eq!(sturm_bound(&BigInt::from(36)), BigInt::from(12));
    }

    #[test]
    fn sturm_bound_against_divisor_sum_oracle() {
        // mu(N) = #P^1(Z/N): primitive pairs (c, d) mod N up to units.
        for n in 1u64..120 {
            let units = (0..n).filter(|&u| arith::gcd_u64(u, n) == 1).count() as u64;
            let mut pairs = 0u64;
            for c in 0..n {
                for d in 0..n {
                    if arith::gcd_u64(arith::gcd_u64(c, d), n) == 1 {
                        pairs += 1;
                    }
                }
            }
            let mu = pairs / units;
            assert_eq!(sturm_bound(&BigInt::from(n)), BigInt::from(mu / 6), "N = {n}");
        }
    }

    #[test]
    fn ko_reflexive_and_symmetric() {
        let e = e0(2);
        assert!(ko_certify(&e, &e, 7).certified());
        let a = e0(1);
        let b = e1728(1);
        let ab = ko_certify(&a, &b, 7);
        let ba = ko_certify(&b, &a, 7);
        assert_eq!(ab.witness(), ba.witness());
        assert_eq!(ab.bound, ba.bound);
    }

    #[test]
    fn theorem_pair_is_certified_and_unrelated_pair_refuted() {
        let c = ko_certify(&e0(1), &e0(-28), 7);
        assert!(c.certified(), "{c:?}");
        let w = ko_certify(&e0(1), &e1728(1), 7).witness().unwrap();
        assert!(w < 50);
        let g1 = FrobeniusEngine::new(&e0(1));
        let g2 = FrobeniusEngine::new(&e1728(1));
        assert_ne!((g1.ap_good(w) - g2.ap_good(w)).rem_euclid(7), 0);
    }

    #[test]
    fn huge_levels_are_not_scanned() {
        let e = RationalEC::from_short(
            &BigRational::from_integer(BigInt::from(-3)),
            &BigRational::from_integer(BigInt::from(1_000_003)),
        )
        .unwrap();
        let c = ko_certify_capped(&e, &e.quadratic_twist(&BigInt::from(-7)).unwrap(), 7, 1000);
        assert_eq!(c.outcome, KoOutcome::BoundExceeded);
    }

    #[test]
    fn twist_partner_shares_bucket() {
        let window = prime_window_avoiding(1000, 50, 7);
        let classes = vec![
            ("a".to_string(), e0(1)),
            ("b".to_string(), e0(-28)),
            ("c".to_string(), e1728(3)),
        ];
        let buckets = partition(&classes, 7, &window).unwrap();
        let nontrivial: Vec<_> = buckets.iter().filter(|b| b.is_nontrivial()).collect();
        assert_eq!(nontrivial.len(), 1);
        assert_eq!(nontrivial[0].members, vec!["a", "b"]);
    }
}

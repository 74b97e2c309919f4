//! Audit for large congruence primes: the pairs `(q, p)` with `q` multiplicative and
//! `p | v_q(Delta_min)`, and the gcd of trace differences between classes sharing a conductor.

use crate::classes::group_classes;
use crate::ingest::CurveRecord;
use ecsym_core::arith::{self, PrimeIter};
use ecsym_core::frobenius::FrobeniusEngine;
use ecsym_core::tate::{self, ReductionType};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// The gcd loop stops once the gcd is at most this.
pub const GCD_TARGET: u64 = 17;
/// Largest prime bound tried by the gcd loop.
pub const MAX_GCD_BOUND: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorGcd {
    pub conductor: BigInt,
    pub classes: (String, String),
    /// `gcd(a_l(E1) - a_l(E2))` over `l <= bound` good for both curves.
    pub gcd: BigInt,
    pub bound: u64,
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreyMazurReport {
    pub p_min: u64,
    /// Curves with a nonempty set, by label.
    pub pairs: BTreeMap<String, Vec<(u64, u64)>>,
    pub max_p: Option<u64>,
    pub same_conductor: Vec<ConductorGcd>,
}

/// `{(q, p) : q multiplicative, p >= p_min prime, p | v_q(Delta_min)}`.
pub fn frey_mazur_pairs(e: &ecsym_core::RationalEC, p_min: u64) -> Vec<(u64, u64)> {
    let m = e.minimal_model();
    let mut out = Vec::new();
    for ld in tate::all_local_data(&m) {
        if !matches!(ld.reduction, ReductionType::Multiplicative { .. }) {
            continue;
        }
        for (p, _) in arith::factor_u64(ld.min_disc_val as u64) {
            if p >= p_min {
                out.push((ld.p, p));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Increase the prime bound geometrically from `start` until the gcd of trace differences is at
/// most `GCD_TARGET`.
pub fn stabilized_gcd(e1: &ecsym_core::RationalEC, e2: &ecsym_core::RationalEC, start: u64) -> (BigInt, u64, bool) {
    let (f1, f2) = (FrobeniusEngine::new(&e1.minimal_model()), FrobeniusEngine::new(&e2.minimal_model()));
    let mut g = BigInt::zero();
    let mut done = 1;
    let mut bound = start.max(2);
    loop {
        for l in PrimeIter::after(done).take_while(|&l| l <= bound) {
            let (a, b) = (f1.ap(l), f2.ap(l));
            if a.is_good() && b.is_good() {
                g = g.gcd(&BigInt::from(a.value() - b.value()));
            }
        }
        done = bound;
        if !g.is_zero() && g <= BigInt::from(GCD_TARGET) {
            return (g, bound, true);
        }
        if bound >= MAX_GCD_BOUND {
            return (g, bound, false);
        }
        bound = (bound * 2).min(MAX_GCD_BOUND);
    }
}

pub fn freymazur_audit(records: &[CurveRecord], p_min: u64, start_bound: u64) -> FreyMazurReport {
    let per_curve: Vec<(String, Vec<(u64, u64)>)> = records
        .par_iter()
        .map(|r| (r.label.clone(), frey_mazur_pairs(&r.curve, p_min)))
        .collect();
    let max_p = per_curve.iter().flat_map(|(_, v)| v.iter().map(|x| x.1)).max();
    let pairs = per_curve.into_iter().filter(|(_, v)| !v.is_empty()).collect();
    let classes = group_classes(records);
    let mut by_conductor: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        by_conductor.entry(records[c.representative()].conductor.clone()).or_default().push(i);
    }
    let jobs: Vec<(BigInt, usize, usize)> = by_conductor
        .iter()
        .flat_map(|(n, cs)| {
            cs.iter()
                .enumerate()
                .flat_map(move |(i, &a)| cs[i + 1..].iter().map(move |&b| (n.clone(), a, b)))
        })
        .collect();
    let same_conductor = jobs
        .par_iter()
        .map(|(n, a, b)| {
            let e1 = &records[classes[*a].representative()].curve;
            let e2 = &records[classes[*b].representative()].curve;
            let (gcd, bound, stabilized) = stabilized_gcd(e1, e2, start_bound);
            ConductorGcd {
                conductor: n.clone(),
                classes: (classes[*a].id.clone(), classes[*b].id.clone()),
                gcd,
                bound,
                stabilized,
            }
        })
        .collect();
    FreyMazurReport {
        p_min,
        pairs,
        max_p,
        same_conductor,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_allcurves;
    use ecsym_core::RationalEC;

    #[test]
    fn valuation_divisible_by_a_large_prime() {
        // y^2 + xy = x^3 + 2^38: c4 = 1 and Delta = -2^38 (1 + 432 * 2^38).
        let e = RationalEC::new([1.into(), 0.into(), 0.into(), 0.into(), BigInt::from(2).pow(38u32)]).unwrap();
        let ld = tate::local_data(&e, 2);
        assert!(matches!(ld.reduction, ReductionType::Multiplicative { .. }));
        assert_eq!(ld.min_disc_val, 38);
        assert!(frey_mazur_pairs(&e, 19).contains(&(2, 19)));
    }

    #[test]
    fn small_valuations_give_nothing() {
        let e = RationalEC::from_i64([0, -1, 1, -10, -20]).unwrap();
        assert!(frey_mazur_pairs(&e, 19).is_empty());
        assert_eq!(frey_mazur_pairs(&e, 5), vec![(11, 5)]);
    }

    #[test]
    fn same_conductor_gcd_is_small() {
        let rs = parse_allcurves("37 a 1 0 0 1 -1 0\n37 b 1 0 1 1 -23 -50\n").unwrap();
        crate::ingest::audit_conductors(&rs).unwrap();
        let r = freymazur_audit(&rs, 19, 50);
        assert_eq!(r.same_conductor.len(), 1);
        let g = &r.same_conductor[0];
        assert!(g.stabilized, "{g:?}");
        assert!(g.gcd <= BigInt::from(GCD_TARGET));
        let (e1, e2) = (rs[0].curve.minimal_model(), rs[1].curve.minimal_model());
        let direct = PrimeIter::after(1)
            .take_while(|&l| l <= g.bound)
            .filter(|&l| l != 37)
            .fold(BigInt::zero(), |acc, l| {
                let d = ecsym_core::frobenius::ap_good(&e1, l) - ecsym_core::frobenius::ap_good(&e2, l);
                acc.gcd(&BigInt::from(d))
            });
        assert_eq!(g.gcd, direct);
        assert!(r.pairs.is_empty());
        assert_eq!(r.max_p, None);
    }
}

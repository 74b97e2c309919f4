//! Reducibility of `E[p]` and dihedral (Cartan-normaliser) structure of the projective image.

use crate::arith::{self, PrimeIter};
use crate::curve::RationalEC;
use crate::error::{Error, Result};
use crate::frobenius::{FrobTrace, FrobeniusEngine, TraceVector};
use crate::isogeny;
use crate::poly;
use crate::reducible::fricke_polynomial;
use crate::tate;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Sampling thresholds for the Frobenius heuristics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    /// Good primes sampled when the caller does not supply traces.
    pub window: usize,
    /// Minimum number of primes on each side of a quadratic character.
    pub min_side: usize,
    /// Minimum number of informative Frobenius elements behind a Cartan call.
    pub min_evidence: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            window: 500,
            min_side: 30,
            min_evidence: 10,
        }
    }
}

/// Traces at the first `count` odd primes of good reduction other than `p`.
pub fn sample_traces(e: &RationalEC, p: u64, count: usize) -> TraceVector {
    let m = e.minimal_model();
    let eng = FrobeniusEngine::new(&m);
    let mut primes = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count);
    for l in PrimeIter::after(2) {
        if primes.len() == count {
            break;
        }
        if l == p {
            continue;
        }
        let t = eng.ap(l);
        if t.is_good() {
            primes.push(l);
            values.push(t);
        }
    }
    TraceVector { primes, values }
}

/// `(l, a_l)` at odd good primes `l != p`.
fn good_samples(t: &TraceVector, p: u64) -> Vec<(u64, i64)> {
    t.primes
        .iter()
        .zip(&t.values)
        .filter_map(|(&l, v)| match v {
            FrobTrace::Good(a) if l != p && l != 2 => Some((l, *a)),
            _ => None,
        })
        .collect()
}

/// Quadratic character of `a^2 - 4l` modulo `p`: `1` split, `-1` irreducible, `0` repeated root.
fn charpoly_disc_class(a: i64, l: u64, p: u64) -> i32 {
    let pi = p as i64;
    let d = (a * a - 4 * l as i64).rem_euclid(pi) as u64;
    arith::legendre_u64(d, p)
}

/// A rational root `t` of the Fricke polynomial over `j(E)`, if any.
pub fn has_rational_7_isogeny(e: &RationalEC) -> Option<BigRational> {
    let f = fricke_polynomial(&e.j_invariant());
    poly::rational_roots(&f).into_iter().next()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reducibility {
    Reducible,
    Irreducible {
        witness: Option<u64>,
    },
    /// Frobenius sampling only; `witness` is a prime whose characteristic polynomial is
    /// irreducible mod `p`, which proves irreducibility on its own.
    Heuristic {
        reducible_compatible: bool,
        witness: Option<u64>,
    },
}

impl Reducibility {
    pub fn is_reducible(&self) -> bool {
        matches!(
            self,
            Reducibility::Reducible
                | Reducibility::Heuristic {
                    reducible_compatible: true,
                    ..
                }
        )
    }

    pub fn is_rigorous(&self) -> bool {
        !matches!(
            self,
            Reducibility::Heuristic {
                reducible_compatible: true,
                ..
            }
        )
    }
}

/// First sampled prime whose Frobenius has irreducible characteristic polynomial mod `p`.
pub fn irreducibility_witness(t: &TraceVector, p: u64) -> Option<u64> {
    good_samples(t, p)
        .into_iter()
        .find(|&(l, a)| charpoly_disc_class(a, l, p) == -1)
        .map(|(l, _)| l)
}

/// Decide whether `E[p]` is reducible.
pub fn reducibility(e: &RationalEC, p: u64, traces: &TraceVector) -> Result<Reducibility> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = good_samples(traces, p).len();
    if n < 100 {
        return Err(Error::InsufficientPrimes { needed: 100, got: n });
    }
    let witness = irreducibility_witness(traces, p);
    let exact = match p {
        7 => Some(has_rational_7_isogeny(e).is_some()),
        2 | 3 | 5 => Some(!isogeny::kernel_polynomials(e, p).is_empty()),
        _ => None,
    };
    Ok(match exact {
        Some(true) => {
            if let Some(l) = witness {
                return Err(Error::Inconsistent(format!(
                    "rational {p}-isogeny but Frobenius at {l} is irreducible mod {p}"
                )));
            }
            Reducibility::Reducible
        }
        Some(false) => Reducibility::Irreducible { witness },
        None => Reducibility::Heuristic {
            reducible_compatible: witness.is_none(),
            witness,
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanKind {
    Split,
    NonSplit,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanClass {
    pub kind: CartanKind,
    pub split_votes: usize,
    pub nonsplit_votes: usize,
}

impl CartanClass {
    pub fn evidence_count(&self) -> usize {
        self.split_votes.max(self.nonsplit_votes)
    }

    /// Both kinds observed, which rules the character out.
    pub fn is_contradictory(&self) -> bool {
        self.split_votes > 0 && self.nonsplit_votes > 0
    }
}

/// Classify the Cartan cut out by `Q(sqrt d)` from Frobenius elements inside it.
pub fn cartan_type(p: u64, d: &BigInt, traces: &TraceVector, cfg: &SampleConfig) -> CartanClass {
    let (mut split_votes, mut nonsplit_votes) = (0, 0);
    for (l, a) in good_samples(traces, p) {
        if arith::kronecker(d, l) != 1 || a.rem_euclid(p as i64) == 0 {
            continue;
        }
        match charpoly_disc_class(a, l, p) {
            1 => split_votes += 1,
            -1 => nonsplit_votes += 1,
            _ => {}
        }
    }
    let kind = if split_votes > 0 && nonsplit_votes > 0 {
        CartanKind::Undetermined
    } else if split_votes >= cfg.min_evidence {
        CartanKind::Split
    } else if nonsplit_votes >= cfg.min_evidence {
        CartanKind::NonSplit
    } else {
        CartanKind::Undetermined
    };
    CartanClass {
        kind,
        split_votes,
        nonsplit_votes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DihedralWitness {
    pub d: BigInt,
    pub cartan: CartanClass,
    /// Projective image `C2 x C2`: three quadratic characters survive.
    pub projective_order_4: bool,
    /// Every surviving `d`, smallest `|d|` first.
    pub candidates: Vec<BigInt>,
}

/// Squarefree `d != 1` supported on `-1` and the primes dividing `p N`.
pub fn candidate_discriminants(e: &RationalEC, p: u64) -> Vec<BigInt> {
    let mut support: Vec<BigInt> = vec![BigInt::from(-1)];
    let mut primes = tate::bad_primes(&e.minimal_model());
    if !primes.contains(&p) {
        primes.push(p);
    }
    primes.sort_unstable();
    support.extend(primes.into_iter().map(BigInt::from));
    let mut out = Vec::new();
    for mask in 1u64..(1 << support.len()) {
        let d = (0..support.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(BigInt::one(), |acc, i| acc * &support[i]);
        out.push(d);
    }
    out.sort_by(|a, b| a.abs().cmp(&b.abs()).then(a.cmp(b)));
    out
}

/// Does `a_l = 0 mod p` hold at every sampled `l` inert in `Q(sqrt d)`, with enough samples?
fn kills_nonsquare_traces(d: &BigInt, samples: &[(u64, i64)], p: u64, min_side: usize) -> bool {
    let (mut minus, mut plus) = (0, 0);
    for &(l, a) in samples {
        match arith::kronecker(d, l) {
            -1 => {
                if a.rem_euclid(p as i64) != 0 {
                    return false;
                }
                minus += 1;
            }
            1 => plus += 1,
            _ => {}
        }
    }
    minus >= min_side && plus >= min_side
}

/// Search for a quadratic character whose nontrivial coset carries only trace-zero Frobenius.
pub fn trace_zero_quadratic(
    e: &RationalEC,
    p: u64,
    traces: &TraceVector,
    cfg: &SampleConfig,
) -> Option<DihedralWitness> {
    let samples = good_samples(traces, p);
    let survivors: Vec<(BigInt, CartanClass)> = candidate_discriminants(e, p)
        .into_iter()
        .filter(|d| kills_nonsquare_traces(d, &samples, p, cfg.min_side))
        .map(|d| {
            let c = cartan_type(p, &d, traces, cfg);
            (d, c)
        })
        .filter(|(_, c)| !c.is_contradictory())
        .collect();
    if survivors.is_empty() {
        return None;
    }
    let candidates: Vec<BigInt> = survivors.iter().map(|(d, _)| d.clone()).collect();
    let projective_order_4 = candidates.len() == 3 && {
        let prod = candidates.iter().fold(BigInt::one(), |a, d| a * d);
        arith::is_square(&prod)
    };
    let pstar = BigInt::from(arith::p_star(p));
    let (d, cartan) = survivors
        .iter()
        .find(|(d, _)| projective_order_4 && *d == pstar)
        .unwrap_or(&survivors[0])
        .clone();
    Some(DihedralWitness {
        d,
        cartan,
        projective_order_4,
        candidates,
    })
}

/// Does `E[p]` admit no antisymplectic automorphism?
pub fn condition_s(e: &RationalEC, p: u64) -> bool {
    condition_s_with(e, p, &SampleConfig::default())
}

pub fn condition_s_with(e: &RationalEC, p: u64, cfg: &SampleConfig) -> bool {
    if p == 2 || p >= 7 {
        return true;
    }
    if isogeny::kernel_polynomials(e, p).len() >= 2 {
        return false;
    }
    let t = sample_traces(e, p, cfg.window);
    let all_nonsplit_or_scalar = good_samples(&t, p)
        .iter()
        .all(|&(l, a)| charpoly_disc_class(a, l, p) != 1);
    !all_nonsplit_or_scalar
}

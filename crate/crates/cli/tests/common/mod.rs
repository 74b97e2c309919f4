#![allow(dead_code)]

use ecsym_cli::ingest::CurveRecord;
use ecsym_core::{tate, RationalEC};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn short(a: i64, b: i64) -> RationalEC {
    RationalEC::from_short_int(&a.into(), &b.into()).unwrap()
}

/// `y^2 = x^3 + n/d`, minimal.
pub fn j0(n: i64, d: i64) -> RationalEC {
    RationalEC::from_short(&BigRational::from_integer(0.into()), &BigRational::new(n.into(), d.into())).unwrap()
}

fn class_name(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        i /= 26;
        if i == 0 {
            break;
        }
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

/// Records for a list of isogeny classes, with computed conductors and distinct class names.
pub struct CorpusBuilder {
    pub records: Vec<CurveRecord>,
    classes: usize,
}

impl CorpusBuilder {
    pub fn new() -> Self {
        CorpusBuilder {
            records: Vec::new(),
            classes: 0,
        }
    }

    pub fn contains(&self, e: &RationalEC) -> bool {
        let m = e.minimal_model();
        self.records.iter().any(|r| r.curve == m)
    }

    /// Add one class; returns its id.
    pub fn class(&mut self, curves: &[RationalEC]) -> String {
        let name = class_name(self.classes);
        self.classes += 1;
        let conductor: BigInt = tate::conductor(&curves[0].minimal_model());
        for (i, e) in curves.iter().enumerate() {
            let m = e.minimal_model();
            assert_eq!(tate::conductor(&m), conductor, "class members share a conductor");
            let line = self.records.len() + 1;
            self.records.push(CurveRecord {
                label: format!("{conductor}{name}{}", i + 1),
                conductor: conductor.clone(),
                iso_class: name.clone(),
                class_index: i as u32 + 1,
                curve: m,
                isogeny_row: None,
                line,
            });
        }
        format!("{conductor}{name}")
    }
}

/// Theorem-1.2 planted classes for `b`: `{E_b, E_{-27b}}` and `{E_{-28/b}, E_{756/b}}`.
pub fn plant_j0(c: &mut CorpusBuilder, b: i64) -> (String, String) {
    let first = c.class(&[j0(b, 1), j0(-27 * b, 1)]);
    let second = c.class(&[j0(-28, b), j0(756, b)]);
    (first, second)
}

/// A random nonsingular curve with small coefficients, `j` not 0 or 1728.
pub fn random_curve(rng: &mut ChaCha8Rng) -> RationalEC {
    loop {
        let a = [
            rng.gen_range(0..2),
            rng.gen_range(-1..2),
            rng.gen_range(0..2),
            rng.gen_range(-40..41),
            rng.gen_range(-40..41),
        ];
        let Ok(e) = RationalEC::from_i64(a) else { continue };
        if !e.has_cm() && !e.c4().is_zero() && !e.c6().is_zero() {
            return e.minimal_model();
        }
    }
}

pub struct SyntheticCorpus {
    pub records: Vec<CurveRecord>,
    /// Planted congruent class pairs at p = 7, as sorted class ids.
    pub planted: Vec<Vec<String>>,
}

/// Sixty curves: four Theorem-1.2 families (sixteen curves in eight classes), the `-1` twists of
/// their base curves, twenty random curves and one quadratic twist of each.
pub fn synthetic_corpus(seed: u64) -> SyntheticCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = CorpusBuilder::new();
    let mut planted = Vec::new();
    for b in [1, 2, 3, -5] {
        let (x, y) = plant_j0(&mut c, b);
        let mut v = vec![x, y];
        v.sort();
        planted.push(v);
    }
    for b in [1, 2, 3, -5] {
        c.class(&[j0(-b, 1)]);
    }
    let twists = [-1i64, 2, -3, 5, -7, 3];
    let mut added = 0;
    while added < 20 {
        let e = random_curve(&mut rng);
        let d = BigInt::from(twists[rng.gen_range(0..twists.len())]);
        let t = e.quadratic_twist(&d).unwrap();
        if c.contains(&e) || c.contains(&t) || e == t {
            continue;
        }
        c.class(&[e]);
        c.class(&[t]);
        added += 1;
    }
    planted.sort();
    assert_eq!(c.records.len(), 60);
    SyntheticCorpus {
        records: c.records,
        planted,
    }
}

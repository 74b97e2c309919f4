mod common;

use common::{j0, plant_j0, random_curve, CorpusBuilder};
use ecsym_cli::oracle::{NoOracle, TableOracle};
use ecsym_cli::pipeline::{run_pipeline, with_jobs, PipelineConfig, PipelineOutput, SetKind};
use ecsym_cli::report;
use ecsym_cli::step4::{step4_partition, TypedEdge};
use ecsym_core::twist::{Basis, SymplecticType, TypeValue};
use ecsym_core::RationalEC;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn render(out: &PipelineOutput) -> Vec<u8> {
    let mut v = Vec::new();
    report::write_sets(out, &mut v).unwrap();
    report::write_summary(out, &mut v).unwrap();
    v
}

fn label_of(c: &CorpusBuilder, e: &RationalEC) -> String {
    let m = e.minimal_model();
    c.records.iter().find(|r| r.curve == m).unwrap().label.clone()
}

#[test]
fn j0_family_blocks_at_seven() {
    let mut c = CorpusBuilder::new();
    let (x, y) = plant_j0(&mut c, 2);
    let out = run_pipeline(&c.records, &PipelineConfig::new(7), &NoOracle);
    assert_eq!(out.sets.len(), 1);
    let s = &out.sets[0];
    let mut classes = vec![x, y];
    classes.sort();
    assert_eq!(s.classes, classes);
    assert_eq!(s.kind, SetKind::Irreducible { rigorous: true });
    assert!(s.certified);
    assert!(s.error.is_none(), "{:?}", s.error);
    let p = s.partition.as_ref().unwrap();
    assert!(p.is_determined());
    let mut blocks: Vec<Vec<String>> = p.blocks().unwrap().iter().map(|b| {
        let mut b = b.clone();
        b.sort();
        b
    }).collect();
    blocks.sort();
    let mut sym = vec![label_of(&c, &j0(2, 1)), label_of(&c, &j0(-14, 1))];
    let mut anti = vec![label_of(&c, &j0(-54, 1)), label_of(&c, &j0(378, 1))];
    sym.sort();
    anti.sort();
    let mut expected = vec![sym, anti];
    expected.sort();
    assert_eq!(blocks, expected);
    assert_eq!(s.class_pairs.len(), 1);
    assert_eq!(s.class_pairs[0].2, TypeValue::Symplectic);
    assert_eq!(out.distinct_j, 1);
}

#[test]
fn example_curve_and_its_twist_form_one_block() {
    let e = RationalEC::new([
        0.into(),
        (-1).into(),
        1.into(),
        "-74988699621831".parse().unwrap(),
        "238006866237979285299".parse().unwrap(),
    ])
    .unwrap();
    let t = e.quadratic_twist(&BigInt::from(-939239)).unwrap();
    let mut c = CorpusBuilder::new();
    c.class(&[e]);
    c.class(&[t]);
    let out = run_pipeline(&c.records, &PipelineConfig::new(7), &NoOracle);
    assert_eq!(out.sets.len(), 1);
    let s = &out.sets[0];
    assert!(s.error.is_none(), "{:?}", s.error);
    assert!(matches!(s.kind, SetKind::Irreducible { .. }));
    // The Sturm bound for this pair is far above the scanning cap.
    assert!(!s.certified);
    let p = s.partition.as_ref().unwrap();
    assert!(p.is_determined());
    assert_eq!(p.blocks().unwrap().len(), 1);
    assert_eq!(s.decisions.len(), 1);
    assert_eq!(s.decisions[0].kind, SymplecticType::new(TypeValue::Symplectic, Basis::QuadraticTwist));
}

#[test]
fn random_corpus_has_no_23_congruences() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut c = CorpusBuilder::new();
    while c.records.len() < 30 {
        let e = random_curve(&mut rng);
        if !c.contains(&e) {
            c.class(&[e]);
        }
    }
    let out = run_pipeline(&c.records, &PipelineConfig::new(23), &NoOracle);
    assert_eq!(out.classes_sieved, 30);
    assert_eq!(out.nontrivial_buckets, 0);
    assert!(out.sets.is_empty());
    let mut v = Vec::new();
    report::write_sets(&out, &mut v).unwrap();
    assert_eq!(String::from_utf8(v).unwrap(), format!("{}\n", report::SETS_HEADER));
}

#[test]
fn output_is_independent_of_thread_count() {
    let mut c = CorpusBuilder::new();
    plant_j0(&mut c, 1);
    plant_j0(&mut c, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..6 {
        c.class(&[random_curve(&mut rng)]);
    }
    let cfg = PipelineConfig::new(7);
    let one = with_jobs(1, || render(&run_pipeline(&c.records, &cfg, &NoOracle)));
    let four = with_jobs(4, || render(&run_pipeline(&c.records, &cfg, &NoOracle)));
    assert_eq!(one, four);
    assert_eq!(one, render(&run_pipeline(&c.records, &cfg, &NoOracle)));
}

#[test]
fn disagreeing_oracle_is_a_hard_error() {
    let mut c = CorpusBuilder::new();
    plant_j0(&mut c, 1);
    let mut oracle = TableOracle::default();
    // The twist theorem makes E_1 and E_{-28} symplectic; the table claims otherwise.
    oracle.insert(7, &j0(1, 1), &j0(-28, 1), TypeValue::Antisymplectic);
    let out = run_pipeline(&c.records, &PipelineConfig::new(7), &oracle);
    assert!(out.has_hard_errors());
    assert!(out.sets[0].error.as_deref().unwrap().contains("oracle"));
    let mut agree = TableOracle::default();
    agree.insert(7, &j0(1, 1), &j0(-28, 1), TypeValue::Symplectic);
    assert!(!run_pipeline(&c.records, &PipelineConfig::new(7), &agree).has_hard_errors());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn colouring_respects_every_edge(signs in prop::collection::vec(any::<bool>(), 2..12), raw in prop::collection::vec((0usize..12, 0usize..12), 0..30)) {
        let n = signs.len();
        let edges: Vec<TypedEdge> = raw
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| TypedEdge { a, b, kind: SymplecticType::from_sign(signs[a] == signs[b], Basis::IsogenyCriterion) })
            .collect();
        let col = step4_partition(n, &edges).unwrap();
        for e in &edges {
            prop_assert_eq!(col.relation(e.a, e.b), Some(e.kind.value));
        }
        for a in 0..n {
            for b in 0..n {
                if let Some(t) = col.relation(a, b) {
                    prop_assert_eq!(t == TypeValue::Symplectic, signs[a] == signs[b]);
                }
            }
        }
        let covered: usize = (0..col.components()).map(|k| col.blocks(k).iter().map(Vec::len).sum::<usize>()).sum();
        prop_assert_eq!(covered, n);
    }

    #[test]
    fn flipping_one_edge_of_a_cycle_is_detected(len in 3usize..9, flip in 0usize..9) {
        let flip = flip % len;
        let edges: Vec<TypedEdge> = (0..len)
            .map(|i| TypedEdge { a: i, b: (i + 1) % len, kind: SymplecticType::from_sign(i != flip, Basis::IsogenyCriterion) })
            .collect();
        prop_assert!(step4_partition(len, &edges).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn determinism_on_random_corpora(seed in any::<u64>(), p in prop::sample::select(vec![7u64, 11, 13])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = CorpusBuilder::new();
        while c.records.len() < 12 {
            let e = random_curve(&mut rng);
            if !c.contains(&e) {
                let t = e.quadratic_twist(&BigInt::from(-1)).unwrap();
                c.class(&[e]);
                if !c.contains(&t) {
                    c.class(&[t]);
                }
            }
        }
        let cfg = PipelineConfig::new(p);
        let one = with_jobs(1, || render(&run_pipeline(&c.records, &cfg, &NoOracle)));
        let four = with_jobs(4, || render(&run_pipeline(&c.records, &cfg, &NoOracle)));
        prop_assert_eq!(one, four);
    }
}

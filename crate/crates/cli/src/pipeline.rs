//! The five-step classification: sieve, certify, split by reducibility, type the irreducible sets
//! and resolve the reducible ones at p = 7.

use crate::classes::{connect, group_classes, IsogenyClass};
use crate::ingest::CurveRecord;
use crate::oracle::SymplecticOracle;
use crate::step4::{step4_partition, Coloring, TypedEdge};
use ecsym_core::frobenius::TraceVector;
use ecsym_core::galois::{self, Reducibility, SampleConfig};
use ecsym_core::reducible;
use ecsym_core::sieve::{self, KoOutcome, SieveBucket, DEFAULT_KO_CAP, DEFAULT_WINDOW};
use ecsym_core::twist::{self, SymplecticType, TwistCongruence, TypeValue};
use ecsym_core::RationalEC;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub p: u64,
    pub b: usize,
    pub window_bound: Option<u64>,
    pub ko_cap: u64,
    pub sample: SampleConfig,
}

impl PipelineConfig {
    pub fn new(p: u64) -> Self {
        PipelineConfig {
            p,
            b: DEFAULT_WINDOW,
            window_bound: None,
            ko_cap: DEFAULT_KO_CAP,
            sample: SampleConfig::default(),
        }
    }
}

/// Something that could not be processed; the rest of the run is unaffected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub subject: String,
    pub message: String,
}

/// Output of the hash sieve.
#[derive(Clone, Debug)]
pub struct SieveOutcome {
    pub p: u64,
    pub window: Vec<u64>,
    pub classes: Vec<IsogenyClass>,
    /// Every bucket, trivial ones included; members are class ids.
    pub buckets: Vec<SieveBucket>,
    pub failures: Vec<Failure>,
}

impl SieveOutcome {
    pub fn nontrivial(&self) -> impl Iterator<Item = &SieveBucket> {
        self.buckets.iter().filter(|b| b.is_nontrivial())
    }
}

/// A group of classes whose traces agree up to the Sturm bound (or up to the cap).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedGroup {
    /// Class indices; the first is the reference the others were compared with.
    pub classes: Vec<usize>,
    /// False when some link hit the Sturm-bound cap.
    pub certified: bool,
    pub sturm_bounds: Vec<BigInt>,
    /// Primes refuting collisions inside the originating bucket.
    pub witnesses: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct CertifyOutcome {
    pub sieve: SieveOutcome,
    pub groups: Vec<CertifiedGroup>,
    /// Hash collisions refuted by a witness prime.
    pub false_positives: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    Irreducible { rigorous: bool },
    Reducible { rigorous: bool },
}

/// One typed relation between two curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub a: String,
    pub b: String,
    pub kind: SymplecticType,
}

/// Blocks of each connected piece of the decision graph; one piece means the set is fully typed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticPartition {
    pub components: Vec<Vec<Vec<String>>>,
}

impl SymplecticPartition {
    pub fn is_determined(&self) -> bool {
        self.components.len() == 1
    }

    pub fn blocks(&self) -> Option<&Vec<Vec<String>>> {
        self.is_determined().then(|| &self.components[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetReport {
    pub id: usize,
    pub p: u64,
    pub classes: Vec<String>,
    pub curves: Vec<String>,
    pub kind: SetKind,
    pub certified: bool,
    pub sturm_bounds: Vec<BigInt>,
    pub witnesses: Vec<u64>,
    pub decisions: Vec<Decision>,
    pub partition: Option<SymplecticPartition>,
    /// Class pairs with their type, when both ends are in one piece.
    pub class_pairs: Vec<(String, String, TypeValue)>,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub p: u64,
    pub window: Vec<u64>,
    pub classes_sieved: usize,
    pub nontrivial_buckets: usize,
    pub false_positives: usize,
    pub certified_groups: usize,
    /// Reducible groups before Step 5 splitting.
    pub reducible_groups: usize,
    pub sets: Vec<SetReport>,
    pub failures: Vec<Failure>,
    pub distinct_j: usize,
}

impl PipelineOutput {
    pub fn has_hard_errors(&self) -> bool {
        self.sets.iter().any(|s| s.error.is_some())
    }
}

/// Step 1: hash one curve per isogeny class over a window of primes above the conductors.
pub fn sieve_step(records: &[CurveRecord], cfg: &PipelineConfig) -> SieveOutcome {
    let classes = group_classes(records);
    let mut failures = Vec::new();
    let bound = cfg.window_bound.unwrap_or_else(|| {
        records
            .iter()
            .filter_map(|r| r.conductor.to_u64())
            .max()
            .unwrap_or(0)
    });
    let window = sieve::prime_window_avoiding(bound, cfg.b, cfg.p);
    let traces: Vec<(String, Result<TraceVector, String>)> = classes
        .par_iter()
        .map(|c| {
            let rep = &records[c.representative()];
            let t = TraceVector::compute(&rep.curve.minimal_model(), &window);
            let r = if t.all_good() {
                Ok(t)
            } else {
                Err(format!("bad reduction inside the prime window above {bound}"))
            };
            (c.id.clone(), r)
        })
        .collect();
    let mut good = Vec::new();
    for (id, t) in traces {
        match t {
            Ok(t) => good.push((id, t)),
            Err(message) => failures.push(Failure { subject: id, message }),
        }
    }
    let buckets = sieve::partition_traces(&good, cfg.p).expect("window traces are all good");
    SieveOutcome {
        p: cfg.p,
        window,
        classes,
        buckets,
        failures,
    }
}

/// Step 2: split each nontrivial bucket into groups of classes certified congruent.
pub fn certify_step(records: &[CurveRecord], cfg: &PipelineConfig) -> CertifyOutcome {
    let sieve = sieve_step(records, cfg);
    let index: BTreeMap<&str, usize> = sieve.classes.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
    let buckets: Vec<Vec<usize>> = sieve
        .nontrivial()
        .map(|b| b.members.iter().map(|m| index[m.as_str()]).collect())
        .collect();
    let split: Vec<(Vec<CertifiedGroup>, usize)> = buckets
        .par_iter()
        .map(|members| {
            let mut groups: Vec<CertifiedGroup> = Vec::new();
            let mut refuted = 0;
            for &c in members {
                let e = &records[sieve.classes[c].representative()].curve;
                let mut placed = false;
                for g in groups.iter_mut() {
                    let reference = &records[sieve.classes[g.classes[0]].representative()].curve;
                    let cert = sieve::ko_certify_capped(reference, e, cfg.p, cfg.ko_cap);
                    match cert.outcome {
                        KoOutcome::Certified => {}
                        KoOutcome::BoundExceeded => g.certified = false,
                        KoOutcome::Refuted { witness } => {
                            g.witnesses.push(witness);
                            refuted += 1;
                            continue;
                        }
                    }
                    g.classes.push(c);
                    g.sturm_bounds.push(cert.bound);
                    placed = true;
                    break;
                }
                if !placed {
                    groups.push(CertifiedGroup {
                        classes: vec![c],
                        certified: true,
                        sturm_bounds: Vec::new(),
                        witnesses: Vec::new(),
                    });
                }
            }
            let all_witnesses: Vec<u64> = groups.iter().flat_map(|g| g.witnesses.clone()).collect();
            let mut kept: Vec<CertifiedGroup> = groups.into_iter().filter(|g| g.classes.len() >= 2).collect();
            for g in kept.iter_mut() {
                g.witnesses = all_witnesses.clone();
                g.witnesses.sort_unstable();
                g.witnesses.dedup();
                g.sturm_bounds.sort_by(|a, b| b.cmp(a));
            }
            (kept, refuted)
        })
        .collect();
    let false_positives = split.iter().map(|s| s.1).sum();
    let groups = split.into_iter().flat_map(|s| s.0).collect();
    CertifyOutcome {
        sieve,
        groups,
        false_positives,
    }
}

/// Steps 1-5.
pub fn run_pipeline(records: &[CurveRecord], cfg: &PipelineConfig, oracle: &dyn SymplecticOracle) -> PipelineOutput {
    let cert = certify_step(records, cfg);
    let mut classes = cert.sieve.classes.clone();
    let in_groups: BTreeSet<usize> = cert.groups.iter().flat_map(|g| g.classes.iter().copied()).collect();
    let connected: Vec<(usize, IsogenyClass)> = in_groups
        .par_iter()
        .map(|&c| {
            let mut class = classes[c].clone();
            connect(&mut class, records);
            (c, class)
        })
        .collect();
    for (c, class) in connected {
        classes[c] = class;
    }
    let ctx = Context {
        records,
        classes: &classes,
        cfg,
        oracle,
    };
    let staged: Vec<(Vec<SetReport>, bool)> = cert.groups.par_iter().map(|g| ctx.resolve_group(g)).collect();
    let reducible_groups = staged.iter().filter(|s| s.1).count();
    let mut sets: Vec<SetReport> = staged.into_iter().flat_map(|s| s.0).collect();
    sets.sort_by(|a, b| a.classes.cmp(&b.classes));
    for (i, s) in sets.iter_mut().enumerate() {
        s.id = i + 1;
    }
    let label_index: BTreeMap<&str, usize> = records.iter().enumerate().map(|(i, r)| (r.label.as_str(), i)).collect();
    let js: BTreeSet<String> = sets
        .iter()
        .flat_map(|s| s.curves.iter())
        .map(|l| records[label_index[l.as_str()]].curve.j_invariant().to_string())
        .collect();
    PipelineOutput {
        p: cfg.p,
        window: cert.sieve.window.clone(),
        classes_sieved: cert.sieve.classes.len() - cert.sieve.failures.len(),
        nontrivial_buckets: cert.sieve.nontrivial().count(),
        false_positives: cert.false_positives,
        certified_groups: cert.groups.len(),
        reducible_groups,
        sets,
        failures: cert.sieve.failures,
        distinct_j: js.len(),
    }
}

struct Context<'a> {
    records: &'a [CurveRecord],
    classes: &'a [IsogenyClass],
    cfg: &'a PipelineConfig,
    oracle: &'a dyn SymplecticOracle,
}

impl Context<'_> {
    fn rep(&self, class: usize) -> &RationalEC {
        &self.records[self.classes[class].representative()].curve
    }

    fn blank(&self, group: &CertifiedGroup, classes: Vec<usize>, kind: SetKind) -> SetReport {
        let curves = classes
            .iter()
            .flat_map(|&c| self.classes[c].members.iter().map(|&m| self.records[m].label.clone()))
            .collect();
        SetReport {
            id: 0,
            p: self.cfg.p,
            classes: classes.iter().map(|&c| self.classes[c].id.clone()).collect(),
            curves,
            kind,
            certified: group.certified,
            sturm_bounds: group.sturm_bounds.clone(),
            witnesses: group.witnesses.clone(),
            decisions: Vec::new(),
            partition: None,
            class_pairs: Vec::new(),
            error: None,
        }
    }

    /// Steps 3-5 for one certified group; the flag records a reducible group.
    fn resolve_group(&self, group: &CertifiedGroup) -> (Vec<SetReport>, bool) {
        let p = self.cfg.p;
        let rep = self.rep(group.classes[0]).minimal_model();
        let traces = galois::sample_traces(&rep, p, self.cfg.sample.window);
        let red = match galois::reducibility(&rep, p, &traces) {
            Ok(r) => r,
            Err(e) => {
                let mut s = self.blank(group, group.classes.clone(), SetKind::Irreducible { rigorous: false });
                s.error = Some(format!("reducibility: {e}"));
                return (vec![s], false);
            }
        };
        let rigorous = red.is_rigorous();
        let reducible = match red {
            Reducibility::Reducible => true,
            Reducibility::Irreducible { .. } => false,
            Reducibility::Heuristic { reducible_compatible, .. } => reducible_compatible,
        };
        if !reducible {
            let mut s = self.blank(group, group.classes.clone(), SetKind::Irreducible { rigorous });
            self.type_set(&mut s, &group.classes, true);
            return (vec![s], false);
        }
        let kind = SetKind::Reducible { rigorous };
        if p != 7 {
            let mut s = self.blank(group, group.classes.clone(), kind);
            self.type_set(&mut s, &group.classes, false);
            return (vec![s], true);
        }
        let mut out = Vec::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        for &c in &group.classes {
            let mut placed = false;
            for sub in subsets.iter_mut() {
                match reducible::reducible_congruent(self.rep(sub[0]), self.rep(c)) {
                    Ok(v) if v.congruent == Some(true) => {
                        sub.push(c);
                        placed = true;
                        break;
                    }
                    Ok(v) if v.congruent == Some(false) => {}
                    Ok(_) => {
                        let mut s = self.blank(group, vec![sub[0], c], kind);
                        s.error = Some("degree-7 field comparison was inconclusive".into());
                        out.push(s);
                    }
                    Err(e) => {
                        let mut s = self.blank(group, vec![sub[0], c], kind);
                        s.error = Some(format!("reducible congruence: {e}"));
                        out.push(s);
                    }
                }
            }
            if !placed {
                subsets.push(vec![c]);
            }
        }
        for sub in subsets.into_iter().filter(|s| s.len() >= 2) {
            let mut s = self.blank(group, sub.clone(), kind);
            self.type_set(&mut s, &sub, false);
            out.push(s);
        }
        (out, true)
    }

    /// Step 4: collect typed edges between the curves of `classes` and colour them.
    fn type_set(&self, set: &mut SetReport, classes: &[usize], irreducible: bool) {
        let p = self.cfg.p;
        let nodes: Vec<usize> = classes.iter().flat_map(|&c| self.classes[c].members.iter().copied()).collect();
        let pos: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let minimal: Vec<RationalEC> = nodes.iter().map(|&m| self.records[m].curve.minimal_model()).collect();
        let mut edges: BTreeMap<(usize, usize), SymplecticType> = BTreeMap::new();
        let mut error: Option<String> = None;
        let mut add = |a: usize, b: usize, kind: SymplecticType, error: &mut Option<String>| {
            if a == b {
                return;
            }
            let k = (a.min(b), a.max(b));
            match edges.get(&k) {
                None => {
                    edges.insert(k, kind);
                }
                Some(prev) => match prev.merge(&kind, true) {
                    Ok(m) => {
                        edges.insert(k, m);
                    }
                    Err(e) => {
                        error.get_or_insert_with(|| {
                            format!("{} ~ {}: {e}", self.records[nodes[k.0]].label, self.records[nodes[k.1]].label)
                        });
                    }
                },
            }
        };
        for &c in classes {
            for e in &self.classes[c].edges {
                if let Ok(kind) = twist::isogeny_criterion(e.degree, p) {
                    add(pos[&e.a], pos[&e.b], kind, &mut error);
                }
            }
        }
        let partners: Vec<Vec<TwistCongruence>> = minimal
            .par_iter()
            .map(|e| self.twist_partners(e, irreducible))
            .collect();
        for (i, ps) in partners.iter().enumerate() {
            for t in ps {
                if let Some(j) = minimal.iter().position(|m| *m == t.partner) {
                    add(i, j, t.kind, &mut error);
                }
            }
        }
        for (&(a, b), kind) in &edges {
            let o = self.oracle.decide(&minimal[a], &minimal[b], p);
            if o.is_determined() && kind.is_determined() && o.value != kind.value {
                error.get_or_insert_with(|| {
                    format!(
                        "{} ~ {}: oracle says {} but {} says {}",
                        self.records[nodes[a]].label, self.records[nodes[b]].label, o.value, kind.basis, kind.value
                    )
                });
            }
        }
        let typed = |edges: &BTreeMap<(usize, usize), SymplecticType>| -> Vec<TypedEdge> {
            edges.iter().map(|(&(a, b), &kind)| TypedEdge { a, b, kind }).collect()
        };
        let mut coloring = step4_partition(nodes.len(), &typed(&edges));
        let reps: Vec<usize> = classes.iter().map(|&c| pos[&self.classes[c].representative()]).collect();
        if let Ok(col) = &coloring {
            let mut col = col.clone();
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    if col.relation(reps[i], reps[j]).is_some() {
                        continue;
                    }
                    let o = self.oracle.decide(&minimal[reps[i]], &minimal[reps[j]], p);
                    if !o.is_determined() {
                        continue;
                    }
                    edges.insert((reps[i], reps[j]), o);
                    match step4_partition(nodes.len(), &typed(&edges)) {
                        Ok(c) => col = c,
                        Err(e) => {
                            coloring = Err(e);
                            break;
                        }
                    }
                }
            }
            if coloring.is_ok() {
                coloring = Ok(col);
            }
        }
        set.decisions = edges
            .iter()
            .map(|(&(a, b), &kind)| Decision {
                a: self.records[nodes[a]].label.clone(),
                b: self.records[nodes[b]].label.clone(),
                kind,
            })
            .collect();
        match coloring {
            Err(e) => {
                error.get_or_insert_with(|| format!("step 4: {e}"));
            }
            Ok(col) => {
                set.partition = Some(self.partition_labels(&col, &nodes));
                for i in 0..reps.len() {
                    for j in i + 1..reps.len() {
                        if let Some(t) = col.relation(reps[i], reps[j]) {
                            set.class_pairs.push((self.classes[classes[i]].id.clone(), self.classes[classes[j]].id.clone(), t));
                        }
                    }
                }
            }
        }
        if error.is_some() {
            set.error = error;
        }
    }

    fn twist_partners(&self, e: &RationalEC, irreducible: bool) -> Vec<TwistCongruence> {
        let p = self.cfg.p;
        let mut out = Vec::new();
        if irreducible {
            let traces = galois::sample_traces(e, p, self.cfg.sample.window);
            if let Some(w) = galois::trace_zero_quadratic(e, p, &traces, &self.cfg.sample) {
                if let Ok(ts) = twist::find_quadratic_twist_congruence(e, p, &w) {
                    out.extend(ts);
                }
            }
        }
        if let Some(d) = e.cm_discriminant() {
            if let Ok(t) = twist::cm_twist_congruence(e, d.unsigned_abs(), p) {
                out.push(t);
            }
            if let Ok(ts) = twist::higher_twist_partner(e, p) {
                out.extend(ts);
            }
        }
        out
    }

    fn partition_labels(&self, col: &Coloring, nodes: &[usize]) -> SymplecticPartition {
        let components = (0..col.components())
            .map(|k| {
                col.blocks(k)
                    .into_iter()
                    .map(|b| b.into_iter().map(|i| self.records[nodes[i]].label.clone()).collect())
                    .collect()
            })
            .collect();
        SymplecticPartition { components }
    }
}

/// Run `f` on a pool with `jobs` threads (0 means one per core).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

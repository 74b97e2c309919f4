//! Tab-separated writers for every subcommand. Output depends only on the input, never on the
//! thread count or the clock.

use crate::freymazur::FreyMazurReport;
use crate::pipeline::{CertifyOutcome, PipelineOutput, SetKind, SetReport, SieveOutcome};
use ecsym_core::twist::TypeValue;
use std::collections::BTreeMap;
use std::io::{self, Write};

pub const SETS_HEADER: &str = "p\tset\tkind\tclasses\tcurves\tblocks\tstatus\tdecisions\tsturm_bounds\twitnesses\tnote";

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    if xs.is_empty() {
        "-".into()
    } else {
        xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
    }
}

fn one_line(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

pub fn kind_label(kind: SetKind) -> &'static str {
    match kind {
        SetKind::Irreducible { rigorous: true } => "irreducible",
        SetKind::Irreducible { rigorous: false } => "irreducible?",
        SetKind::Reducible { rigorous: true } => "reducible",
        SetKind::Reducible { rigorous: false } => "reducible?",
    }
}

/// `typed` when one piece covers every curve, `partial` when some relations are unknown.
pub fn status(s: &SetReport) -> &'static str {
    match (&s.error, &s.partition) {
        (Some(_), _) => "error",
        _ if !s.certified => "uncertified",
        (None, Some(p)) if p.is_determined() => "typed",
        _ => "partial",
    }
}

/// Blocks as `a,b|c`, pieces of an undetermined set separated by `;`.
pub fn blocks_field(s: &SetReport) -> String {
    match &s.partition {
        None => "-".into(),
        Some(p) => p
            .components
            .iter()
            .map(|c| c.iter().map(|b| b.join(",")).collect::<Vec<_>>().join("|"))
            .collect::<Vec<_>>()
            .join(";"),
    }
}

pub fn write_sets<W: Write>(out: &PipelineOutput, mut w: W) -> io::Result<()> {
    writeln!(w, "{SETS_HEADER}")?;
    write_set_rows(out, w)
}

/// The rows of `write_sets` without the header, for several primes in one file.
pub fn write_set_rows<W: Write>(out: &PipelineOutput, mut w: W) -> io::Result<()> {
    for s in &out.sets {
        let decisions: Vec<String> = s
            .decisions
            .iter()
            .map(|d| format!("{}~{}:{}:{}", d.a, d.b, d.kind.value, d.kind.basis))
            .collect();
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.p,
            s.id,
            kind_label(s.kind),
            join(&s.classes, ","),
            join(&s.curves, ","),
            blocks_field(s),
            status(s),
            join(&decisions, ","),
            join(&s.sturm_bounds, ","),
            join(&s.witnesses, ","),
            s.error.as_deref().map_or("-".into(), one_line),
        )?;
    }
    Ok(())
}

/// Aggregate counts as `key <TAB> value` lines.
pub fn write_summary<W: Write>(out: &PipelineOutput, mut w: W) -> io::Result<()> {
    let window = match (out.window.first(), out.window.last()) {
        (Some(a), Some(b)) => format!("{a}..{b} ({} primes)", out.window.len()),
        _ => "-".into(),
    };
    let irreducible: Vec<&SetReport> = out
        .sets
        .iter()
        .filter(|s| matches!(s.kind, SetKind::Irreducible { .. }))
        .collect();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &irreducible {
        *sizes.entry(s.classes.len()).or_default() += 1;
    }
    let (mut sym, mut anti, mut undetermined) = (0, 0, 0);
    for s in &out.sets {
        let n = s.classes.len();
        let typed = s.class_pairs.len();
        sym += s.class_pairs.iter().filter(|c| c.2 == TypeValue::Symplectic).count();
        anti += s.class_pairs.iter().filter(|c| c.2 == TypeValue::Antisymplectic).count();
        undetermined += n * (n - 1) / 2 - typed;
    }
    let rows: Vec<(String, String)> = vec![
        ("p".into(), out.p.to_string()),
        ("window".into(), window),
        ("classes_sieved".into(), out.classes_sieved.to_string()),
        ("nontrivial_buckets".into(), out.nontrivial_buckets.to_string()),
        ("false_positives".into(), out.false_positives.to_string()),
        ("certified_groups".into(), out.certified_groups.to_string()),
        ("irreducible_sets".into(), irreducible.len().to_string()),
        ("reducible_groups".into(), out.reducible_groups.to_string()),
        ("reducible_sets".into(), (out.sets.len() - irreducible.len()).to_string()),
    ];
    for (k, v) in rows {
        writeln!(w, "{k}\t{v}")?;
    }
    for (size, count) in sizes {
        writeln!(w, "irreducible_sets_of_size_{size}\t{count}")?;
    }
    let blocks: Vec<usize> = irreducible
        .iter()
        .filter(|s| s.error.is_none())
        .filter_map(|s| s.partition.as_ref()?.blocks().map(Vec::len))
        .collect();
    let all_sym = blocks.iter().filter(|&&n| n == 1).count();
    writeln!(w, "irreducible_sets_all_symplectic\t{all_sym}")?;
    writeln!(w, "irreducible_sets_with_antisymplectic\t{}", blocks.len() - all_sym)?;
    writeln!(w, "symplectic_class_pairs\t{sym}")?;
    writeln!(w, "antisymplectic_class_pairs\t{anti}")?;
    writeln!(w, "undetermined_class_pairs\t{undetermined}")?;
    writeln!(w, "sets_with_errors\t{}", out.sets.iter().filter(|s| s.error.is_some()).count())?;
    writeln!(w, "distinct_j\t{}", out.distinct_j)?;
    writeln!(w, "failures\t{}", out.failures.len())?;
    for f in &out.failures {
        writeln!(w, "failure\t{}: {}", f.subject, one_line(&f.message))?;
    }
    Ok(())
}

pub fn write_sieve<W: Write>(s: &SieveOutcome, mut w: W) -> io::Result<()> {
    writeln!(w, "p\tbucket\tclasses")?;
    for (i, b) in s.nontrivial().enumerate() {
        writeln!(w, "{}\t{}\t{}", s.p, i + 1, join(&b.members, ","))?;
    }
    for f in &s.failures {
        writeln!(w, "# skipped {}: {}", f.subject, one_line(&f.message))?;
    }
    Ok(())
}

pub fn write_certify<W: Write>(c: &CertifyOutcome, mut w: W) -> io::Result<()> {
    writeln!(w, "p\tgroup\tclasses\tcertified\tsturm_bounds\twitnesses")?;
    for (i, g) in c.groups.iter().enumerate() {
        let ids: Vec<&str> = g.classes.iter().map(|&k| c.sieve.classes[k].id.as_str()).collect();
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}",
            c.sieve.p,
            i + 1,
            join(&ids, ","),
            if g.certified { "yes" } else { "cap" },
            join(&g.sturm_bounds, ","),
            join(&g.witnesses, ","),
        )?;
    }
    writeln!(w, "# false_positives\t{}", c.false_positives)?;
    Ok(())
}

pub fn write_freymazur<W: Write>(r: &FreyMazurReport, mut w: W) -> io::Result<()> {
    writeln!(w, "curve\tpairs")?;
    for (label, pairs) in &r.pairs {
        let v: Vec<String> = pairs.iter().map(|(q, p)| format!("({q},{p})")).collect();
        writeln!(w, "{label}\t{}", v.join(","))?;
    }
    writeln!(w, "# p_min\t{}", r.p_min)?;
    writeln!(w, "# max_p\t{}", r.max_p.map_or("-".into(), |p| p.to_string()))?;
    writeln!(w, "conductor\tclass_a\tclass_b\tgcd\tbound\tstabilized")?;
    for g in &r.same_conductor {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}\t{}",
            g.conductor,
            g.classes.0,
            g.classes.1,
            g.gcd,
            g.bound,
            if g.stabilized { "yes" } else { "no" }
        )?;
    }
    Ok(())
}

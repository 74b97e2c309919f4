mod common;

use common::{plant_j0, short, CorpusBuilder};
use std::fmt::Write as _;
use std::path::Path;
use std::process::{Command, Output};

fn ecsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecsym")).args(args).output().unwrap()
}

fn write_corpus(path: &Path, c: &CorpusBuilder) {
    let mut text = String::from("# conductor class index [a1,a2,a3,a4,a6]\n");
    for r in &c.records {
        let a: Vec<String> = r.curve.a_invariants().iter().map(|x| x.to_string()).collect();
        writeln!(text, "{} {} {} [{}]", r.conductor, r.iso_class, r.class_index, a.join(",")).unwrap();
    }
    std::fs::write(path, text).unwrap();
}

fn corpus() -> CorpusBuilder {
    let mut c = CorpusBuilder::new();
    plant_j0(&mut c, 1);
    c.class(&[short(-2, 3)]);
    c
}

#[test]
fn classify_writes_blocks_and_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("curves.txt");
    write_corpus(&input, &corpus());
    let run = || ecsym(&["classify", input.to_str().unwrap(), "--p", "7", "--audit", "--jobs", "2"]);
    let first = run();
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 2, "{text}");
    assert!(rows[1].starts_with("7\t1\tirreducible\t"));
    assert!(rows[1].contains("\ttyped\t"));
    assert!(rows[1].contains("\t1764b1,36a1|1764b2,36a2\t"), "{}", rows[1]);
    assert_eq!(run().stdout, first.stdout);
}

#[test]
fn report_directory_and_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("curves.txt");
    write_corpus(&input, &corpus());
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "p = [7, 19]\nB = 40\n").unwrap();
    let out = dir.path().join("out");
    let o = ecsym(&["report", input.to_str().unwrap(), "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let sets7 = std::fs::read_to_string(out.join("sets_p7.tsv")).unwrap();
    assert_eq!(sets7.lines().count(), 2);
    let sets19 = std::fs::read_to_string(out.join("sets_p19.tsv")).unwrap();
    assert_eq!(sets19.lines().count(), 1);
    let summary = std::fs::read_to_string(out.join("summary_p7.tsv")).unwrap();
    assert!(summary.contains("window\t"));
    assert!(summary.contains("(40 primes)"));
    assert!(summary.contains("symplectic_class_pairs\t1\n"));
}

#[test]
fn sieve_certify_and_freymazur_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("curves.txt");
    write_corpus(&input, &corpus());
    let o = ecsym(&["sieve", input.to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "7\t1\t1764b,36a");
    let o = ecsym(&["certify", input.to_str().unwrap()]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains("\tyes\t"), "{text}");
    let o = ecsym(&["freymazur", input.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("# max_p\t-"));
}

#[test]
fn bad_input_fails_with_a_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("curves.txt");
    std::fs::write(&input, "11 a 1 0 -1 1 -10 -20\n11 a 2 0 -1 1 x 0\n").unwrap();
    let o = ecsym(&["classify", input.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::write(&input, "12 a 1 0 -1 1 -10 -20\n").unwrap();
    let o = ecsym(&["classify", input.to_str().unwrap(), "--audit"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("conductor 11"));
    let o = ecsym(&["classify", input.to_str().unwrap(), "--p", "5"]);
    assert!(!o.status.success());
}

#[test]
fn csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("curves.csv");
    std::fs::write(
        &input,
        "label,conductor,iso_class,class_index,a1,a2,a3,a4,a6\n11a1,11,a,1,0,-1,1,-10,-20\n37a1,37,a,1,0,0,1,-1,0\n",
    )
    .unwrap();
    let o = ecsym(&["sieve", input.to_str().unwrap(), "--p", "11", "--audit"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "p\tbucket\tclasses\n");
}

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ecsym_cli::config::{Config, ConfigFile};
use ecsym_cli::freymazur::freymazur_audit;
use ecsym_cli::ingest::{self, CurveRecord, Format};
use ecsym_cli::oracle::load_oracle;
use ecsym_cli::pipeline::{certify_step, run_pipeline, sieve_step, with_jobs, PipelineConfig};
use ecsym_cli::report;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ecsym", version, about = "Find, certify and type mod-p congruences between elliptic curves over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hash one curve per isogeny class and list the colliding buckets.
    Sieve(Common),
    /// Sieve, then certify each bucket with the Sturm bound.
    Certify(Common),
    /// Run the full classification and write one row per congruence set.
    Classify(Common),
    /// List large-prime obstructions and same-conductor trace gcds.
    Freymazur(Common),
    /// Classify every prime and write sets and summary files into the output directory.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// Curve file (allcurves text, or CSV when the name ends in .csv).
    input: PathBuf,
    #[arg(long, value_parser = ["allcurves", "csv"])]
    format: Option<String>,
    /// Isogeny-matrix sidecar: `label d1 d2 ...` per line.
    #[arg(long)]
    isogeny: Option<PathBuf>,
    /// TOML configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Congruence prime; repeatable.
    #[arg(long = "p")]
    p: Vec<u64>,
    /// Cap on the Sturm bound used by the certificate.
    #[arg(long)]
    bound: Option<u64>,
    /// Number of primes in the hash window.
    #[arg(long = "B")]
    b: Option<usize>,
    /// Take window primes above this instead of above the largest conductor.
    #[arg(long)]
    window_bound: Option<u64>,
    /// Worker threads (0 for one per core).
    #[arg(long)]
    jobs: Option<usize>,
    /// Directory of precomputed symplectic-type decisions.
    #[arg(long)]
    oracle_pack: Option<PathBuf>,
    /// Recompute every conductor and reject mismatches.
    #[arg(long)]
    audit: bool,
    /// Smallest prime recorded by the Frey-Mazur audit.
    #[arg(long)]
    p_min: Option<u64>,
    /// Output file (a directory for `report`); standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<Config> {
        let file = self.config.as_deref().map(ConfigFile::load).transpose()?;
        let flags = ConfigFile {
            p: (!self.p.is_empty()).then(|| self.p.clone()),
            bound: self.bound,
            b: self.b,
            window_bound: self.window_bound,
            jobs: self.jobs,
            oracle_pack: self.oracle_pack.clone(),
            audit: self.audit.then_some(true),
            isogeny: self.isogeny.clone(),
            p_min: self.p_min,
        };
        Ok(Config::resolve(flags, file)?)
    }

    fn records(&self, cfg: &Config) -> Result<Vec<CurveRecord>> {
        let format = match self.format.as_deref() {
            Some("csv") => Format::Csv,
            Some(_) => Format::Allcurves,
            None => Format::from_path(&self.input),
        };
        let mut records =
            ingest::ingest(&self.input, format).with_context(|| format!("reading {}", self.input.display()))?;
        if let Some(path) = &cfg.isogeny {
            let rows = ingest::load_isogeny_sidecar(path)?;
            ingest::attach_isogeny_rows(&mut records, &rows).with_context(|| format!("applying {}", path.display()))?;
        }
        ingest::normalise(&mut records).with_context(|| format!("reading {}", self.input.display()))?;
        if cfg.audit {
            ingest::audit_conductors(&records).with_context(|| format!("auditing {}", self.input.display()))?;
        }
        Ok(records)
    }

    fn pipeline(&self, cfg: &Config, p: u64) -> PipelineConfig {
        let mut pc = PipelineConfig::new(p);
        pc.b = cfg.b;
        pc.window_bound = cfg.window_bound;
        pc.ko_cap = cfg.bound;
        pc
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<bool> {
    let (Command::Sieve(c) | Command::Certify(c) | Command::Classify(c) | Command::Freymazur(c) | Command::Report(c)) =
        &cli.command;
    let cfg = c.config()?;
    let records = c.records(&cfg)?;
    let oracle = load_oracle(cfg.oracle_pack.as_deref())?;
    if let Some(dir) = &cfg.oracle_pack {
        if !dir.is_dir() {
            eprintln!("oracle pack {} not found; undecided pairs stay undetermined", dir.display());
        }
    }
    with_jobs(cfg.jobs, || -> Result<bool> {
        let mut clean = true;
        match &cli.command {
            Command::Sieve(_) => {
                let mut w = output(c.out.as_deref())?;
                for &p in &cfg.primes {
                    report::write_sieve(&sieve_step(&records, &c.pipeline(&cfg, p)), &mut w)?;
                }
                w.flush()?;
            }
            Command::Certify(_) => {
                let mut w = output(c.out.as_deref())?;
                for &p in &cfg.primes {
                    report::write_certify(&certify_step(&records, &c.pipeline(&cfg, p)), &mut w)?;
                }
                w.flush()?;
            }
            Command::Classify(_) => {
                let mut w = output(c.out.as_deref())?;
                writeln!(w, "{}", report::SETS_HEADER)?;
                for &p in &cfg.primes {
                    let out = run_pipeline(&records, &c.pipeline(&cfg, p), oracle.as_ref());
                    report::write_set_rows(&out, &mut w)?;
                    report_errors(&out, &mut clean);
                }
                w.flush()?;
            }
            Command::Freymazur(_) => {
                let mut w = output(c.out.as_deref())?;
                report::write_freymazur(&freymazur_audit(&records, cfg.p_min, 50), &mut w)?;
                w.flush()?;
            }
            Command::Report(_) => {
                let Some(dir) = &c.out else {
                    bail!("report needs --out DIR");
                };
                std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for &p in &cfg.primes {
                    let out = run_pipeline(&records, &c.pipeline(&cfg, p), oracle.as_ref());
                    let mut w = output(Some(&dir.join(format!("sets_p{p}.tsv"))))?;
                    report::write_sets(&out, &mut w)?;
                    w.flush()?;
                    let mut w = output(Some(&dir.join(format!("summary_p{p}.tsv"))))?;
                    report::write_summary(&out, &mut w)?;
                    w.flush()?;
                    report_errors(&out, &mut clean);
                }
            }
        }
        Ok(clean)
    })
}

fn report_errors(out: &ecsym_cli::pipeline::PipelineOutput, clean: &mut bool) {
    for s in out.sets.iter().filter(|s| s.error.is_some()) {
        eprintln!("p = {} set {}: {}", out.p, s.id, s.error.as_deref().unwrap_or_default());
        *clean = false;
    }
    for f in &out.failures {
        eprintln!("p = {}: skipped {}: {}", out.p, f.subject, f.message);
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

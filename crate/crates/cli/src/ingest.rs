//! Curve files: whitespace `allcurves` text, CSV, and an optional isogeny-matrix sidecar.

use ecsym_core::{tate, RationalEC};
use num_bigint::BigInt;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl IngestError {
    fn at(line: usize, msg: impl Into<String>) -> Self {
        IngestError::Parse { line, msg: msg.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Allcurves,
    Csv,
}

impl Format {
    /// `.csv` files are CSV, everything else is whitespace text.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Allcurves,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub label: String,
    pub conductor: BigInt,
    pub iso_class: String,
    pub class_index: u32,
    pub curve: RationalEC,
    /// Row of the class's isogeny-degree matrix, ordered by class index.
    pub isogeny_row: Option<Vec<u64>>,
    /// Source line, for diagnostics.
    pub line: usize,
}

impl CurveRecord {
    /// Identifier of the isogeny class, e.g. `11a`.
    pub fn class_id(&self) -> String {
        format!("{}{}", self.conductor, self.iso_class)
    }
}

impl fmt::Display for CurveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.label, self.curve)
    }
}

pub fn ingest(path: &Path, format: Format) -> Result<Vec<CurveRecord>, IngestError> {
    let text = read_file(path)?;
    match format {
        Format::Allcurves => parse_allcurves(&text),
        Format::Csv => parse_csv(text.as_bytes()),
    }
}

fn read_file(path: &Path) -> Result<String, IngestError> {
    let mut s = String::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_string(&mut s))
        .map_err(|source| IngestError::Io {
            path: path.display().to_string(),
            source,
        })?;
    Ok(s)
}

fn int(tok: &str, line: usize, what: &str) -> Result<BigInt, IngestError> {
    tok.trim()
        .parse()
        .map_err(|_| IngestError::at(line, format!("{what}: expected an integer, found {tok:?}")))
}

fn record(
    line: usize,
    label: Option<String>,
    conductor: BigInt,
    iso_class: String,
    class_index: u32,
    a: [BigInt; 5],
) -> Result<CurveRecord, IngestError> {
    if conductor <= BigInt::from(0) {
        return Err(IngestError::at(line, "conductor must be positive"));
    }
    if iso_class.is_empty() || !iso_class.chars().all(|c| c.is_ascii_alphanumeric()) {
        return Err(IngestError::at(line, format!("bad isogeny class {iso_class:?}")));
    }
    let curve = RationalEC::new(a).map_err(|e| IngestError::at(line, e.to_string()))?;
    let label = label.unwrap_or_else(|| format!("{conductor}{iso_class}{class_index}"));
    Ok(CurveRecord {
        label,
        conductor,
        iso_class,
        class_index,
        curve,
        isogeny_row: None,
        line,
    })
}

/// `conductor iso_class class_index a1 a2 a3 a4 a6 [rank torsion]`; the five coefficients may
/// also be written as one bracketed list `[a1,a2,a3,a4,a6]`. Blank lines and `#` comments are
/// skipped.
pub fn parse_allcurves(text: &str) -> Result<Vec<CurveRecord>, IngestError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() < 4 {
            return Err(IngestError::at(line, format!("expected at least 4 fields, found {}", toks.len())));
        }
        let conductor = int(toks[0], line, "conductor")?;
        let iso_class = toks[1].to_string();
        let class_index: u32 = toks[2]
            .parse()
            .map_err(|_| IngestError::at(line, format!("class index: expected an integer, found {:?}", toks[2])))?;
        let (coeffs, rest): (Vec<&str>, usize) = if toks[3].starts_with('[') {
            let list = toks[3].trim_start_matches('[').trim_end_matches(']');
            if !toks[3].ends_with(']') {
                return Err(IngestError::at(line, "unterminated coefficient list"));
            }
            (list.split(',').collect(), 4)
        } else {
            (toks[3..toks.len().min(8)].to_vec(), 8)
        };
        if coeffs.len() != 5 {
            return Err(IngestError::at(line, format!("expected 5 coefficients, found {}", coeffs.len())));
        }
        if toks.len() > rest + 2 {
            return Err(IngestError::at(line, format!("unexpected trailing field {:?}", toks[rest + 2])));
        }
        let mut a: [BigInt; 5] = Default::default();
        for (k, c) in coeffs.iter().enumerate() {
            a[k] = int(c, line, &format!("a{}", [1, 2, 3, 4, 6][k]))?;
        }
        out.push(record(line, None, conductor, iso_class, class_index, a)?);
    }
    Ok(out)
}

#[derive(Deserialize)]
struct CsvRow {
    label: String,
    conductor: String,
    iso_class: String,
    class_index: u32,
    a1: String,
    a2: String,
    a3: String,
    a4: String,
    a6: String,
}

/// CSV with header `label,conductor,iso_class,class_index,a1,a2,a3,a4,a6`.
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<CurveRecord>, IngestError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let csv_err = |e: csv::Error| {
        let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
        IngestError::at(line, e.to_string())
    };
    let headers = rdr.headers().map_err(csv_err)?.clone();
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let row: CsvRow = rec.deserialize(Some(&headers)).map_err(|e| IngestError::at(line, e.to_string()))?;
        let a = [
            int(&row.a1, line, "a1")?,
            int(&row.a2, line, "a2")?,
            int(&row.a3, line, "a3")?,
            int(&row.a4, line, "a4")?,
            int(&row.a6, line, "a6")?,
        ];
        let conductor = int(&row.conductor, line, "conductor")?;
        out.push(record(line, Some(row.label), conductor, row.iso_class, row.class_index, a)?);
    }
    Ok(out)
}

/// Sidecar lines `label d1 d2 ...`: the curve's row of its class's isogeny-degree matrix.
pub fn parse_isogeny_sidecar(text: &str) -> Result<BTreeMap<String, Vec<u64>>, IngestError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let label = toks.next().unwrap().to_string();
        let row = toks
            .map(|t| t.parse::<u64>().map_err(|_| IngestError::at(line, format!("bad degree {t:?}"))))
            .collect::<Result<Vec<u64>, _>>()?;
        if row.is_empty() {
            return Err(IngestError::at(line, "empty degree row"));
        }
        if out.insert(label.clone(), row).is_some() {
            return Err(IngestError::at(line, format!("duplicate label {label}")));
        }
    }
    Ok(out)
}

pub fn load_isogeny_sidecar(path: &Path) -> Result<BTreeMap<String, Vec<u64>>, IngestError> {
    parse_isogeny_sidecar(&read_file(path)?)
}

/// Attach sidecar rows; every row must name a known curve.
pub fn attach_isogeny_rows(records: &mut [CurveRecord], rows: &BTreeMap<String, Vec<u64>>) -> Result<(), IngestError> {
    let mut used = 0;
    for r in records.iter_mut() {
        if let Some(row) = rows.get(&r.label) {
            r.isogeny_row = Some(row.clone());
            used += 1;
        }
    }
    if used != rows.len() {
        let missing = rows
            .keys()
            .find(|k| !records.iter().any(|r| &r.label == *k))
            .cloned()
            .unwrap_or_default();
        return Err(IngestError::at(0, format!("isogeny sidecar names unknown curve {missing}")));
    }
    Ok(())
}

/// Recompute every conductor; the first mismatch is an error.
pub fn audit_conductors(records: &[CurveRecord]) -> Result<(), IngestError> {
    for r in records {
        let n = tate::conductor(&r.curve.minimal_model());
        if n != r.conductor {
            return Err(IngestError::at(
                r.line,
                format!("{}: file gives conductor {}, curve has conductor {n}", r.label, r.conductor),
            ));
        }
    }
    Ok(())
}

/// Sort by conductor, class and index; labels must be unique.
pub fn normalise(records: &mut [CurveRecord]) -> Result<(), IngestError> {
    records.sort_by(|a, b| {
        (&a.conductor, &a.iso_class, a.class_index, &a.label).cmp(&(&b.conductor, &b.iso_class, b.class_index, &b.label))
    });
    let mut seen = BTreeMap::new();
    for r in records.iter() {
        if let Some(prev) = seen.insert(r.label.clone(), r.line) {
            return Err(IngestError::at(r.line, format!("duplicate label {} (first on line {prev})", r.label)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allcurves_line() {
        let rs = parse_allcurves("11 a 3 0 -1 1 0 0\n").unwrap();
        assert_eq!(rs.len(), 1);
        let r = &rs[0];
        assert_eq!(r.conductor, BigInt::from(11));
        assert_eq!(r.iso_class, "a");
        assert_eq!(r.class_index, 3);
        assert_eq!(r.label, "11a3");
        assert_eq!(r.class_id(), "11a");
        assert_eq!(r.curve, RationalEC::from_i64([0, -1, 1, 0, 0]).unwrap());
    }

    #[test]
    fn bracketed_coefficients_and_trailing_fields() {
        let rs = parse_allcurves("# header\n\n11 a 1 [0,-1,1,-10,-20] 0 5\n37 a 1 0 0 1 -1 0 1 1\n").unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[0].curve, RationalEC::from_i64([0, -1, 1, -10, -20]).unwrap());
        assert_eq!(rs[1].line, 4);
    }

    #[test]
    fn empty_input() {
        assert!(parse_allcurves("").unwrap().is_empty());
        assert!(parse_csv("label,conductor,iso_class,class_index,a1,a2,a3,a4,a6\n".as_bytes())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn malformed_lines_report_their_line() {
        let err = parse_allcurves("11 a 1 0 -1 1 -10 -20\n11 a 2 0 0 0 0 0\n").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }), "{err}");
        let err = parse_allcurves("11 a 1 0 -1 x -10 -20\n").unwrap_err();
        assert!(err.to_string().contains("line 1") && err.to_string().contains("a3"));
        let err = parse_allcurves("\n\n11 a\n").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 3, .. }));
        let err = parse_allcurves("11 a 1 0 -1 1 -10\n").unwrap_err();
        assert!(err.to_string().contains("5 coefficients"));
    }

    #[test]
    fn csv_rows() {
        let text = "label,conductor,iso_class,class_index,a1,a2,a3,a4,a6\n11.a2,11,a,1,0,-1,1,-10,-20\n14.a1,14,a,1,1,0,1,4,-6\n";
        let rs = parse_csv(text.as_bytes()).unwrap();
        assert_eq!(rs.len(), 2);
        assert_eq!(rs[0].label, "11.a2");
        assert_eq!(rs[1].line, 3);
        let bad = "label,conductor,iso_class,class_index,a1,a2,a3,a4,a6\n11.a2,11,a,1,0,-1,1,-10,-20\nx,14,a,1,0,0,0,0,0\n";
        let err = parse_csv(bad.as_bytes()).unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn sidecar_and_audit() {
        let mut rs = parse_allcurves("11 a 1 0 -1 1 -10 -20\n11 a 2 0 -1 1 -7820 -263580\n11 a 3 0 -1 1 0 0\n").unwrap();
        let rows = parse_isogeny_sidecar("11a1 1 5 5\n11a2 5 1 25\n11a3 5 25 1\n").unwrap();
        attach_isogeny_rows(&mut rs, &rows).unwrap();
        assert_eq!(rs[1].isogeny_row.as_deref(), Some(&[5, 1, 25][..]));
        audit_conductors(&rs).unwrap();
        let wrong = parse_allcurves("13 a 1 0 -1 1 -10 -20\n").unwrap();
        assert!(audit_conductors(&wrong).is_err());
        let extra = parse_isogeny_sidecar("99z1 1\n").unwrap();
        assert!(attach_isogeny_rows(&mut rs, &extra).is_err());
    }

    #[test]
    fn normalise_orders_and_rejects_duplicates() {
        let mut rs = parse_allcurves("37 a 1 0 0 1 -1 0\n11 a 1 0 -1 1 -10 -20\n").unwrap();
        normalise(&mut rs).unwrap();
        assert_eq!(rs[0].label, "11a1");
        let mut dup = parse_allcurves("11 a 1 0 -1 1 -10 -20\n11 a 1 0 -1 1 0 0\n").unwrap();
        assert!(normalise(&mut dup).is_err());
    }
}

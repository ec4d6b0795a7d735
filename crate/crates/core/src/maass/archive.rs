//! Append-only JSON-lines store of accepted eigenvalues.
//!
//! The first line is a header `{"schema":"modspec-spectrum","version":1}`;
//! every further line is one [`ArchiveRecord`]. Floats are written with 17
//! significant digits.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use super::{Label, Parity, SpectralCandidate};
use crate::{Error, Result};

pub const SCHEMA: &str = "modspec-spectrum";
pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable that replaces the default archive path.
pub const ARCHIVE_ENV: &str = "MODSPEC_ARCHIVE";
pub const DEFAULT_PATH: &str = "spectrum.jsonl";

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    schema: String,
    version: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArchiveRecord {
    pub level: u64,
    #[serde(rename = "R", serialize_with = "sci")]
    pub r: f64,
    pub parity: Parity,
    #[serde(serialize_with = "sci")]
    pub residual: f64,
    #[serde(rename = "label", default)]
    pub labels: Vec<Label>,
    /// `[n, re a(n), im a(n)]` for n = 1..=M.
    #[serde(serialize_with = "sci_coeffs")]
    pub coeffs: Vec<(i64, f64, f64)>,
}

fn raw(x: f64) -> Box<RawValue> {
    let s = if x.is_finite() { format!("{x:.16e}") } else { "null".to_string() };
    RawValue::from_string(s).expect("formatted float is valid JSON")
}

fn sci<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    raw(*x).serialize(s)
}

fn sci_coeffs<S: Serializer>(v: &[(i64, f64, f64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<(i64, Box<RawValue>, Box<RawValue>)> = v.iter().map(|&(n, re, im)| (n, raw(re), raw(im))).collect();
    rows.serialize(s)
}

impl ArchiveRecord {
    pub fn from_candidate(c: &SpectralCandidate) -> Self {
        ArchiveRecord {
            level: c.level,
            r: c.r,
            parity: c.parity,
            residual: c.residual,
            labels: c.labels.clone(),
            coeffs: c.coeffs.iter().enumerate().map(|(k, a)| (k as i64 + 1, a.re, a.im)).collect(),
        }
    }

    pub fn to_candidate(&self) -> SpectralCandidate {
        SpectralCandidate {
            level: self.level,
            r: self.r,
            parity: self.parity,
            residual: self.residual,
            coeffs: self.coeffs.iter().map(|&(_, re, im)| Complex64::new(re, im)).collect(),
            labels: self.labels.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.r.is_finite() && self.residual.is_finite()) {
            return Err(Error::domain(format!("record at level {} has a non-finite value", self.level)));
        }
        for (k, &(n, re, im)) in self.coeffs.iter().enumerate() {
            if n != k as i64 + 1 || !re.is_finite() || !im.is_finite() {
                return Err(Error::domain(format!("bad coefficient entry {k} in record R = {}", self.r)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Archive {
    path: PathBuf,
}

impl Archive {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Archive { path: path.into() }
    }

    /// `explicit` if given, else the path in `MODSPEC_ARCHIVE`, else
    /// `spectrum.jsonl`.
    pub fn resolve(explicit: Option<&Path>) -> Self {
        match explicit {
            Some(p) => Archive::new(p),
            None => Archive::new(std::env::var_os(ARCHIVE_ENV).map(PathBuf::from).unwrap_or_else(|| DEFAULT_PATH.into())),
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records; a missing file reads as empty.
    pub fn load(&self) -> Result<Vec<ArchiveRecord>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut lines = BufReader::new(file).lines();
        match lines.next() {
            None => return Ok(Vec::new()),
            Some(line) => check_header(&line?)?,
        }
        let mut out = Vec::new();
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(serde_json::from_str(&line)?);
        }
        Ok(out)
    }

    /// Appends `records` with a single write. Everything is serialized and
    /// validated first, so a failure leaves the file untouched.
    pub fn append(&self, records: &[ArchiveRecord]) -> Result<()> {
        let existing = match std::fs::metadata(&self.path) {
            Ok(m) => m.len() > 0,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => false,
            Err(e) => return Err(e.into()),
        };
        if existing {
            let file = std::fs::File::open(&self.path)?;
            let first = BufReader::new(file).lines().next().transpose()?.unwrap_or_default();
            check_header(&first)?;
        }
        let mut buf = String::new();
        if !existing {
            buf.push_str(&serde_json::to_string(&Header { schema: SCHEMA.into(), version: SCHEMA_VERSION })?);
            buf.push('\n');
        }
        for r in records {
            r.validate()?;
            buf.push_str(&serde_json::to_string(r)?);
            buf.push('\n');
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.write_all(buf.as_bytes())?;
        Ok(())
    }
}

fn check_header(line: &str) -> Result<()> {
    let h: Header = serde_json::from_str(line)
        .map_err(|_| Error::domain("archive does not start with a schema header"))?;
    if h.schema != SCHEMA || h.version != SCHEMA_VERSION {
        return Err(Error::Unsupported(format!("archive schema {} version {}", h.schema, h.version)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(r: f64) -> ArchiveRecord {
        ArchiveRecord {
            level: 9,
            r,
            parity: Parity::Odd,
            residual: 1e-9,
            labels: vec![Label::LevelThree],
            coeffs: vec![(1, 1.0, 0.0), (2, -0.1 / 3.0, 2e-17)],
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let a = Archive::new(dir.path().join("s.jsonl"));
        a.append(&[record(4.388053563222)]).unwrap();
        a.append(&[record(5.09874190873)]).unwrap();
        let text = std::fs::read_to_string(a.path()).unwrap();
        assert!(text.starts_with("{\"schema\":\"modspec-spectrum\",\"version\":1}\n"));
        assert!(text.contains("\"R\":4.3880535632219999e0"));
        let back = a.load().unwrap();
        assert_eq!(back, vec![record(4.388053563222), record(5.09874190873)]);
    }

    #[test]
    fn bad_records_leave_file_alone() {
        let dir = tempfile::tempdir().unwrap();
        let a = Archive::new(dir.path().join("s.jsonl"));
        a.append(&[record(1.0)]).unwrap();
        let before = std::fs::read(a.path()).unwrap();
        assert!(a.append(&[record(2.0), record(f64::NAN)]).is_err());
        assert_eq!(std::fs::read(a.path()).unwrap(), before);
    }

    #[test]
    fn foreign_header_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.jsonl");
        std::fs::write(&p, "{\"schema\":\"other\",\"version\":1}\n").unwrap();
        assert!(Archive::new(&p).load().is_err());
        assert!(Archive::new(&p).append(&[record(1.0)]).is_err());
    }
}

//! JSON frame files and command-line vector syntax.
//!
//! ```json
//! {"n": 3, "backend": "exact", "vectors": [[1, "1/2", 0.25], [0, 1, 0]]}
//! ```
//!
//! Exact entries may be integers, `"p/q"` strings or decimals; decimals are
//! read as exact decimal fractions, so `0.1` is `1/10`.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use framelab_core::linalg::ratio_to_f64;
use framelab_core::{ExactFrame, FloatFrame, Frame, Rational, Vector};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub n: usize,
    #[serde(default)]
    pub backend: Backend,
    pub vectors: Vec<Vec<Value>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LoadedFrame {
    Exact(ExactFrame),
    Float(FloatFrame),
}

impl LoadedFrame {
    pub fn backend(&self) -> Backend {
        match self {
            LoadedFrame::Exact(_) => Backend::Exact,
            LoadedFrame::Float(_) => Backend::Float,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LoadedFrame::Exact(f) => f.dim(),
            LoadedFrame::Float(f) => f.dim(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            LoadedFrame::Exact(f) => f.len(),
            LoadedFrame::Float(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Exact frame; float entries are taken at their exact binary value.
    pub fn exact(&self) -> Result<ExactFrame, CliError> {
        match self {
            LoadedFrame::Exact(f) => Ok(f.clone()),
            LoadedFrame::Float(f) => Ok(f.to_exact()?),
        }
    }

    pub fn float(&self) -> FloatFrame {
        match self {
            LoadedFrame::Exact(f) => f.to_f64(),
            LoadedFrame::Float(f) => f.clone(),
        }
    }
}

/// Parses `[-]digits[.digits][e[+-]digits]` as an exact rational.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let shift = exponent - i32::try_from(frac_part.len()).ok()?;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Rational::from_integer(all * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(all, num_traits::pow(ten, shift.unsigned_abs() as usize))
    };
    Some(if negative { -value } else { value })
}

/// Parses `p/q`, an integer or a decimal.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
        None => parse_decimal(s),
    }
}

fn entry_text(v: &Value) -> Option<String> {
    match v {
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn exact_entry(v: &Value) -> Result<Rational, CliError> {
    entry_text(v)
        .as_deref()
        .and_then(parse_rational)
        .ok_or_else(|| CliError::Format(format!("not a rational entry: {v}")))
}

fn float_entry(v: &Value) -> Result<f64, CliError> {
    let text = entry_text(v).ok_or_else(|| CliError::Format(format!("not a numeric entry: {v}")))?;
    if text.contains('/') {
        return parse_rational(&text)
            .map(|q| ratio_to_f64(&q))
            .ok_or_else(|| CliError::Format(format!("bad fraction {text:?}")));
    }
    match text.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::Format(format!("not a finite number: {text:?}"))),
    }
}

impl FrameFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Format(format!("invalid frame file: {e}")))
    }

    pub fn load(&self) -> Result<LoadedFrame, CliError> {
        if self.n == 0 {
            return Err(CliError::Format("n must be positive".into()));
        }
        if self.vectors.is_empty() {
            return Err(CliError::Format("a frame needs at least one vector".into()));
        }
        if let Some((i, row)) = self.vectors.iter().enumerate().find(|(_, r)| r.len() != self.n) {
            return Err(CliError::Format(format!(
                "vector {} has {} entries, expected n = {}",
                i + 1,
                row.len(),
                self.n
            )));
        }
        Ok(match self.backend {
            Backend::Exact => {
                let rows = self
                    .vectors
                    .iter()
                    .map(|r| Ok(Vector::new(r.iter().map(exact_entry).collect::<Result<_, CliError>>()?)?))
                    .collect::<Result<Vec<_>, CliError>>()?;
                LoadedFrame::Exact(Frame::new(rows)?)
            }
            Backend::Float => {
                let rows = self
                    .vectors
                    .iter()
                    .map(|r| Ok(Vector::new(r.iter().map(float_entry).collect::<Result<_, CliError>>()?)?))
                    .collect::<Result<Vec<_>, CliError>>()?;
                LoadedFrame::Float(Frame::new(rows)?)
            }
        })
    }

    pub fn from_exact(frame: &ExactFrame) -> Self {
        Self {
            n: frame.dim(),
            backend: Backend::Exact,
            vectors: frame.vectors().iter().map(|v| v.iter().map(rational_value).collect()).collect(),
        }
    }

    pub fn from_float(frame: &FloatFrame) -> Self {
        Self {
            n: frame.dim(),
            backend: Backend::Float,
            vectors: frame
                .vectors()
                .iter()
                .map(|v| v.iter().map(|&e| Value::from(e)).collect())
                .collect(),
        }
    }

    /// Pretty JSON with one vector per line.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .vectors
            .iter()
            .map(|r| {
                let entries: Vec<String> = r.iter().map(|e| e.to_string()).collect();
                format!("    [{}]", entries.join(", "))
            })
            .collect();
        format!(
            "{{\n  \"n\": {},\n  \"backend\": \"{}\",\n  \"vectors\": [\n{}\n  ]\n}}\n",
            self.n,
            self.backend.as_str(),
            rows.join(",\n")
        )
    }
}

/// Integers as JSON numbers, everything else as `"p/q"`.
pub fn rational_value(q: &Rational) -> Value {
    if q.denom().is_one() {
        if let Ok(i) = i64::try_from(q.numer()) {
            return Value::from(i);
        }
    }
    Value::String(q.to_string())
}

/// Reads a frame file. Returns the parsed frame and the raw bytes (for the
/// report digest).
pub fn read_frame(path: &Path) -> Result<(LoadedFrame, Vec<u8>), CliError> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Format("frame file is not UTF-8".into()))?;
    Ok((FrameFile::parse(text)?.load()?, bytes))
}

pub fn write_frame_file(path: &Path, file: &FrameFile) -> Result<(), CliError> {
    std::fs::write(path, file.to_json()).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// `"2,3,0"` or `"1/2, -3, 0.25"`.
pub fn parse_vector(s: &str) -> Result<Vector<Rational>, CliError> {
    let entries = s
        .split(',')
        .map(|e| parse_rational(e).ok_or_else(|| CliError::Format(format!("bad vector entry {e:?} in {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector::new(entries)?)
}

/// Semicolon-separated vectors: `"1,0,0;0,1,0"`.
pub fn parse_vectors(s: &str) -> Result<Vec<Vector<Rational>>, CliError> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(parse_vector).collect()
}

/// 1-based comma-separated coordinates to 0-based indices.
pub fn parse_coords(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|e| match e.trim().parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(CliError::Format(format!("coordinates are 1-based integers, got {e:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use framelab_core::linalg::{int, ratio};

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("0.1"), Some(ratio(1, 10)));
        assert_eq!(parse_decimal("-2.50"), Some(ratio(-5, 2)));
        assert_eq!(parse_decimal("1e-3"), Some(ratio(1, 1000)));
        assert_eq!(parse_decimal("12E2"), Some(int(1200)));
        assert_eq!(parse_decimal(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_decimal("abc"), None);
        assert_eq!(parse_decimal("-"), None);
    }

    #[test]
    fn fractions() {
        assert_eq!(parse_rational("3/-6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational(" 7 "), Some(int(7)));
    }

    #[test]
    fn frame_file_round_trip() {
        let text = r#"{"n": 2, "vectors": [[1, "1/3"], [0.25, -2]]}"#;
        let f = FrameFile::parse(text).unwrap().load().unwrap().exact().unwrap();
        assert_eq!(f.vector(0)[1], ratio(1, 3));
        assert_eq!(f.vector(1)[0], ratio(1, 4));
        let again = FrameFile::parse(&FrameFile::from_exact(&f).to_json()).unwrap().load().unwrap();
        assert_eq!(again, LoadedFrame::Exact(f));
    }

    #[test]
    fn malformed_files() {
        assert!(FrameFile::parse(r#"{"n": 2, "vectors": [[1, 2, 3]]}"#).unwrap().load().is_err());
        assert!(FrameFile::parse(r#"{"n": 2, "vectors": [[1, "x"]]}"#).unwrap().load().is_err());
        assert!(FrameFile::parse(r#"{"n": 2, "vectors": []}"#).unwrap().load().is_err());
        assert!(FrameFile::parse(r#"{"n": 2}"#).is_err());
        assert!(FrameFile::parse(r#"{"n": 2, "vectors": [[1, 2]], "extra": 1}"#).is_err());
    }

    #[test]
    fn float_backend() {
        let text = r#"{"n": 2, "backend": "float", "vectors": [[0.1, "1/4"]]}"#;
        let f = FrameFile::parse(text).unwrap().load().unwrap().float();
        assert_eq!(f.vector(0)[0], 0.1);
        assert_eq!(f.vector(0)[1], 0.25);
    }

    #[test]
    fn vector_syntax() {
        assert_eq!(parse_vector("2,3,0").unwrap(), Vector::from_ints(&[2, 3, 0]));
        assert_eq!(parse_vectors("1,0;0,1").unwrap().len(), 2);
        assert_eq!(parse_coords("1,3").unwrap(), vec![0, 2]);
        assert!(parse_coords("0").is_err());
    }
}

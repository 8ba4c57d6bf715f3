//! Front files, vector flags and number formatting.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::pareto::{ObjVec, ParetoApprox};

/// Shortest round-trip text of `x`; infinities become `inf` and `-inf`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// JSON number, or the strings `inf`, `-inf`, `nan` where JSON has none.
pub fn json_f64(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(fmt_f64(x).to_lowercase()), Value::Number)
}

pub fn json_vec(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| json_f64(x)).collect())
}

fn parse_scalar(s: &str) -> Result<f64> {
    let t = s.trim();
    t.parse::<f64>()
        .map_err(|_| Error::Parse(format!("'{t}' is not a number")))
}

/// Comma- or whitespace-separated numbers.
pub fn parse_vec(s: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_scalar)
        .collect::<Result<_>>()?;
    if v.is_empty() {
        return Err(Error::Parse("empty vector".into()));
    }
    Ok(v)
}

fn json_number(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}"))),
        Value::String(s) => parse_scalar(s),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

pub fn json_to_vec(v: &Value) -> Result<Vec<f64>> {
    match v {
        Value::Array(a) => a.iter().map(json_number).collect(),
        other => Err(Error::Parse(format!("expected an array, got {other}"))),
    }
}

fn rectangular(rows: Vec<ObjVec>) -> Result<Vec<ObjVec>> {
    let Some(d) = rows.first().map(Vec::len) else {
        return Err(Error::Parse("front file has no points".into()));
    };
    if let Some(i) = rows.iter().position(|r| r.len() != d) {
        return Err(Error::Parse(format!(
            "row {} has {} values, expected {d}",
            i + 1,
            rows[i].len()
        )));
    }
    Ok(rows)
}

/// Points from CSV text. A first row that does not parse is taken as a header.
pub fn parse_points_csv(text: &str) -> Result<Vec<ObjVec>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        match rec.iter().map(parse_scalar).collect::<Result<Vec<f64>>>() {
            Ok(row) => rows.push(row),
            Err(_) if i == 0 => {}
            Err(e) => return Err(e),
        }
    }
    rectangular(rows)
}

/// Points from a JSON array of arrays, or an object with a `points` array.
pub fn parse_points_json(text: &str) -> Result<Vec<ObjVec>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let arr = match &v {
        Value::Object(o) => o
            .get("points")
            .ok_or_else(|| Error::Parse("object without a 'points' field".into()))?,
        _ => &v,
    };
    let Value::Array(rows) = arr else {
        return Err(Error::Parse("expected an array of points".into()));
    };
    rectangular(rows.iter().map(json_to_vec).collect::<Result<_>>()?)
}

/// Points from text, as JSON when it starts with `[` or `{`, otherwise CSV.
pub fn parse_points(text: &str) -> Result<Vec<ObjVec>> {
    match text.trim_start().chars().next() {
        Some('[') | Some('{') => parse_points_json(text),
        _ => parse_points_csv(text),
    }
}

pub fn read_front(path: &Path) -> Result<ParetoApprox> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    ParetoApprox::new(parse_points(&text)?)
}

/// Writes `rows` as CSV under `header`.
pub fn write_csv<W: Write>(out: W, header: &[String], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

pub fn points_json(points: &[ObjVec]) -> Value {
    Value::Array(points.iter().map(|p| json_vec(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinities_round_trip() {
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
        assert_eq!(parse_vec("inf,-inf, 1.5").unwrap(), vec![f64::INFINITY, f64::NEG_INFINITY, 1.5]);
        assert_eq!(json_f64(f64::INFINITY), Value::String("inf".into()));
    }

    #[test]
    fn small_numbers_keep_exponent() {
        assert_eq!(fmt_f64(1e-300), "1e-300");
        assert_eq!(fmt_f64(5.0), "5.0");
    }

    #[test]
    fn csv_with_and_without_header() {
        let a = parse_points("y1,y2\n3,1\n2,1.5\n").unwrap();
        let b = parse_points("3,1\n2,1.5\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn json_forms() {
        let a = parse_points("[[3,1],[2,1.5]]").unwrap();
        let b = parse_points(r#"{"points": [[3,1],[2,1.5]]}"#).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ragged_and_garbage_rejected() {
        assert!(parse_points("1,2\n3\n").is_err());
        assert!(parse_points("[[1,2],[3]]").is_err());
        assert!(parse_points("1,2\nfoo,bar\n").is_err());
        assert!(parse_points("not a front").is_err());
        assert!(parse_points("[[1,").is_err());
    }
}

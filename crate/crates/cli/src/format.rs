//! Polytope input and output.
//!
//! Two input forms are accepted: JSON `{"dim": n, "vertices": [[...], ...]}`
//! and plain text, a header line `n m` followed by `m` rows of `n` integers.
//! The listed points need not be vertices; the polytope is their hull.

use latpoly::{LatticePoint, LatticePolytope};
use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed input: {0}")]
    Syntax(String),
    #[error("coordinate '{0}' is not an integer")]
    NotInteger(String),
    #[error("vertex {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("no vertices given")]
    Empty,
    #[error(transparent)]
    Polytope(#[from] latpoly::Error),
}

fn integer(text: &str) -> Result<BigInt, ParseError> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::NotInteger(text.to_string()));
    }
    text.parse()
        .map_err(|_| ParseError::NotInteger(text.to_string()))
}

fn json_integer(v: &Value) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => integer(&n.to_string()),
        other => Err(ParseError::NotInteger(other.to_string())),
    }
}

fn build(dim: usize, rows: Vec<Vec<BigInt>>) -> Result<LatticePolytope, ParseError> {
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some((index, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
        return Err(ParseError::DimensionMismatch {
            index,
            expected: dim,
            found: r.len(),
        });
    }
    let pts: Vec<LatticePoint> = rows.into_iter().map(LatticePoint::new).collect();
    Ok(LatticePolytope::hull(&pts)?)
}

fn parse_json(text: &str) -> Result<LatticePolytope, ParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError::Syntax(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| ParseError::Syntax("expected a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| ParseError::Syntax("\"dim\" must be a positive integer".into()))?
        as usize;
    if dim == 0 {
        return Err(ParseError::Syntax(
            "\"dim\" must be a positive integer".into(),
        ));
    }
    let verts = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::Syntax("\"vertices\" must be an array".into()))?;
    let rows = verts
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| ParseError::Syntax("each vertex must be an array".into()))?
                .iter()
                .map(json_integer)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    build(dim, rows)
}

fn parse_text(text: &str) -> Result<LatticePolytope, ParseError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or(ParseError::Empty)?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = head[..] else {
        return Err(ParseError::Syntax(format!(
            "expected header 'n m', got '{header}'"
        )));
    };
    let n: usize = n
        .parse()
        .map_err(|_| ParseError::Syntax(format!("bad dimension '{n}'")))?;
    let m: usize = m
        .parse()
        .map_err(|_| ParseError::Syntax(format!("bad vertex count '{m}'")))?;
    if n == 0 {
        return Err(ParseError::Syntax("dimension must be positive".into()));
    }
    let rows = lines
        .map(|l| {
            l.split_whitespace()
                .map(integer)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != m {
        return Err(ParseError::Syntax(format!(
            "header announces {m} rows, found {}",
            rows.len()
        )));
    }
    build(n, rows)
}

pub fn parse_polytope(text: &str) -> Result<LatticePolytope, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// Exact JSON number for an integer of any size.
pub fn json_number(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("integer literal"))
}

pub fn json_int_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(json_number).collect())
}

pub fn polytope_json(p: &LatticePolytope) -> Value {
    let mut obj = Map::new();
    obj.insert("dim".into(), Value::from(p.ambient_dim()));
    obj.insert(
        "vertices".into(),
        Value::Array(
            p.vertices()
                .iter()
                .map(|v| json_int_vec(v.coords()))
                .collect(),
        ),
    );
    Value::Object(obj)
}

pub fn print_polytope(p: &LatticePolytope) -> String {
    polytope_json(p).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_three_simplex() {
        let p = parse_polytope(r#"{"dim":2,"vertices":[[0,0],[3,0],[0,3]]}"#).unwrap();
        assert_eq!(p, latpoly::constructions::exceptional_3d2());
    }

    #[test]
    fn text_square() {
        let p = parse_polytope("2 4\n0 0\n1 0\n0 1\n1 1\n").unwrap();
        assert_eq!(p, latpoly::constructions::unit_cube(2).unwrap());
    }

    #[test]
    fn degenerate_is_accepted() {
        let p = parse_polytope(r#"{"dim":2,"vertices":[[0,0],[1,0],[2,0]]}"#).unwrap();
        assert_eq!(p.affine_dim(), 1);
        assert_eq!(p.vertices().len(), 2);
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            parse_polytope(r#"{"dim":2,"vertices":[[0,0.5]]}"#),
            Err(ParseError::NotInteger(_))
        ));
        assert!(matches!(
            parse_polytope(r#"{"dim":2,"vertices":[[0,1e3]]}"#),
            Err(ParseError::NotInteger(_))
        ));
        assert_eq!(
            parse_polytope(r#"{"dim":2,"vertices":[]}"#),
            Err(ParseError::Empty)
        );
        assert!(matches!(
            parse_polytope(r#"{"dim":2,"vertices":[[0,0],[1,0,0]]}"#),
            Err(ParseError::DimensionMismatch { index: 1, .. })
        ));
        assert!(matches!(
            parse_polytope("2 2\n0 0\n1 x\n"),
            Err(ParseError::NotInteger(_))
        ));
        assert!(matches!(
            parse_polytope("2 3\n0 0\n1 0\n"),
            Err(ParseError::Syntax(_))
        ));
        assert!(matches!(parse_polytope("{"), Err(ParseError::Syntax(_))));
        assert!(matches!(
            parse_polytope(r#"{"dim":7,"vertices":[[0,0,0,0,0,0,0]]}"#),
            Err(ParseError::Polytope(latpoly::Error::UnsupportedDimension(
                7
            )))
        ));
    }

    #[test]
    fn big_coordinates_survive() {
        let big = "123456789012345678901234567890";
        let p = parse_polytope(&format!("{{\"dim\":1,\"vertices\":[[0],[{big}]]}}")).unwrap();
        assert!(print_polytope(&p).contains(big));
    }
}

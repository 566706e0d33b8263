use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::relation::{Cmp, PreferenceRelation};
use crate::space::{Alt, ProductSpace, SpaceError};

/// On-disk shape of a relation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub x1: Vec<String>,
    pub x2: Vec<String>,
    pub pairs: Vec<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Space(#[from] SpaceError),
    #[error("line {line}: {message}")]
    BadPair { line: usize, message: String },
    #[error("line {line}: pair {x} vs {y} already given on line {first_line}")]
    Duplicate {
        line: usize,
        first_line: usize,
        x: String,
        y: String,
    },
    #[error("line {line}: pair {x} vs {y} contradicts line {first_line}")]
    Contradiction {
        line: usize,
        first_line: usize,
        x: String,
        y: String,
    },
    #[error("incomplete relation: {missing} unordered pairs missing, first is {x} vs {y}")]
    Incomplete {
        missing: usize,
        x: String,
        y: String,
    },
}

impl LoadError {
    pub fn line(&self) -> Option<usize> {
        match self {
            LoadError::Syntax { line, .. }
            | LoadError::BadPair { line, .. }
            | LoadError::Duplicate { line, .. }
            | LoadError::Contradiction { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// Parses the relation JSON format and validates completeness.
///
/// Each pair `[i1, j1, i2, j2, c]` states `(x1[i1], x2[j1]) c (x1[i2], x2[j2])`
/// with `c` one of `"P"` (≻), `"I"` (∼), `"D"` (≺). Every unordered pair of
/// distinct alternatives must appear exactly once, in either orientation.
/// Self-pairs may appear and must be `"I"`.
pub fn parse_relation(text: &str) -> Result<PreferenceRelation, LoadError> {
    let file: RelationFile = serde_json::from_str(text).map_err(|e| LoadError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let lines = pair_lines(text);
    let line_of = |k: usize| lines.get(k).copied().unwrap_or(0);
    let space = ProductSpace::new(file.x1, file.x2)?;
    let n = space.len();
    let mut table: Vec<Option<Cmp>> = vec![None; n * n];
    let mut first: HashMap<(usize, usize), usize> = HashMap::new();
    for (k, v) in file.pairs.iter().enumerate() {
        let line = line_of(k);
        let bad = |message: String| LoadError::BadPair { line, message };
        let arr = v
            .as_array()
            .filter(|a| a.len() == 5)
            .ok_or_else(|| bad("pair must be [i1, j1, i2, j2, \"P\"|\"I\"|\"D\"]".into()))?;
        let mut idx = [0usize; 4];
        for (slot, item) in idx.iter_mut().zip(arr) {
            *slot = item
                .as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| bad(format!("index {item} is not a nonnegative integer")))?;
        }
        let c = arr[4].as_str().and_then(Cmp::from_code).ok_or_else(|| {
            bad(format!(
                "relation code {} is not \"P\", \"I\" or \"D\"",
                arr[4]
            ))
        })?;
        for (pos, (&i, m)) in idx
            .iter()
            .zip([space.m1(), space.m2(), space.m1(), space.m2()])
            .enumerate()
        {
            if i >= m {
                return Err(bad(format!(
                    "index {i} at position {pos} out of range (axis size {m})"
                )));
            }
        }
        let x = Alt(idx[0], idx[1]);
        let y = Alt(idx[2], idx[3]);
        let (ix, iy) = (space.index(x), space.index(y));
        if ix == iy {
            if c != Cmp::Indiff {
                return Err(bad(format!(
                    "{} compared with itself must be \"I\"",
                    space.show(x)
                )));
            }
            continue;
        }
        let key = (ix.min(iy), ix.max(iy));
        if let Some(&first_line) = first.get(&key) {
            let prev = table[ix * n + iy].expect("recorded pair");
            let (xs, ys) = (space.show(x), space.show(y));
            return Err(if prev == c {
                LoadError::Duplicate {
                    line,
                    first_line,
                    x: xs,
                    y: ys,
                }
            } else {
                LoadError::Contradiction {
                    line,
                    first_line,
                    x: xs,
                    y: ys,
                }
            });
        }
        first.insert(key, line);
        table[ix * n + iy] = Some(c);
        table[iy * n + ix] = Some(c.mirror());
    }
    let mut missing = Vec::new();
    for x in 0..n {
        table[x * n + x] = Some(Cmp::Indiff);
        for y in x + 1..n {
            if table[x * n + y].is_none() {
                missing.push((x, y));
            }
        }
    }
    if let Some(&(x, y)) = missing.first() {
        return Err(LoadError::Incomplete {
            missing: missing.len(),
            x: space.show(space.alt(x)),
            y: space.show(space.alt(y)),
        });
    }
    let table = table.into_iter().map(|c| c.expect("complete")).collect();
    Ok(PreferenceRelation::from_table_unchecked(space, table))
}

/// Serializes with one pair per line, `x < y` in row-major id order.
pub fn relation_to_json(rel: &PreferenceRelation) -> String {
    let space = rel.space();
    let labels = |v: &[String]| serde_json::to_string(v).expect("strings serialize");
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"x1\": {},", labels(space.labels(crate::Axis::One)));
    let _ = writeln!(out, "  \"x2\": {},", labels(space.labels(crate::Axis::Two)));
    out.push_str("  \"pairs\": [");
    let n = space.len();
    let mut sep = "\n";
    for ix in 0..n {
        let x = space.alt(ix);
        for iy in ix + 1..n {
            let y = space.alt(iy);
            let _ = write!(
                out,
                "{sep}    [{}, {}, {}, {}, \"{}\"]",
                x.0,
                x.1,
                y.0,
                y.1,
                rel.cmp(x, y).code()
            );
            sep = ",\n";
        }
    }
    out.push_str(if n > 1 { "\n  ]\n}\n" } else { "]\n}\n" });
    out
}

/// 1-based line of each element of the top-level `"pairs"` array. Runs on
/// text that already parsed, so the scanner can assume well-formed JSON.
fn pair_lines(text: &str) -> Vec<usize> {
    let bytes = text.as_bytes();
    let mut line = 1;
    let mut depth = 0usize;
    let mut i = 0;
    let mut last_key: Option<String> = None;
    let mut in_pairs = false;
    let mut expect_elem = false;
    let mut out = Vec::new();
    while i < bytes.len() {
        let b = bytes[i];
        if b == b'\n' {
            line += 1;
            i += 1;
            continue;
        }
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if in_pairs && depth == 2 && expect_elem && b != b']' {
            out.push(line);
            expect_elem = false;
        }
        match b {
            b'"' => {
                let start = i + 1;
                i += 1;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
                if depth == 1 {
                    last_key =
                        serde_json::from_str::<String>(&text[start - 1..=i.min(bytes.len() - 1)])
                            .ok();
                }
            }
            b'{' | b'[' => {
                depth += 1;
                if depth == 2 && b == b'[' && last_key.as_deref() == Some("pairs") {
                    in_pairs = true;
                    expect_elem = true;
                }
            }
            b'}' | b']' => {
                if depth == 2 && in_pairs {
                    in_pairs = false;
                }
                depth = depth.saturating_sub(1);
            }
            b',' => {
                if in_pairs && depth == 2 {
                    expect_elem = true;
                }
                if depth == 1 {
                    last_key = None;
                }
            }
            _ => {}
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_lines_follow_layout() {
        let text = "{\"x1\":[\"a\"],\n\"pairs\":[\n [0,0,0,0,\"I\"],\n\n [0,0,0,0,\"I\"]]}";
        assert_eq!(pair_lines(text), vec![3, 5]);
    }

    #[test]
    fn keys_inside_strings_do_not_confuse_scanner() {
        let text = "{\"x1\":[\"pairs\", \"]\"],\n\"x2\":[\"p\"],\n\"pairs\":[[0,0,1,0,\"P\"]]}";
        assert_eq!(pair_lines(text), vec![3]);
    }
}

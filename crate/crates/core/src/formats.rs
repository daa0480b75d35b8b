//! Line-oriented text formats for frames and spaces.
//!
//! ```text
//! # the 3-chain
//! elements: 3
//! cover: 0 1
//! cover: 1 2
//! label: 1 a
//! ```
//!
//! ```text
//! points: 2
//! open: 1
//! open: 0 1
//! ```
//!
//! `#` starts a comment; blank lines are skipped; unknown keys are errors.

use std::fmt::Write as _;

use thiserror::Error;

use crate::element_set::ElementSet;
use crate::lattice::{FiniteFrame, FrameError};
use crate::topology::{FiniteSpace, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("not a frame: {0}")]
    Frame(#[from] FrameError),
    #[error("not a topology: {0}")]
    Space(#[from] SpaceError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Splits into `(line number, key, value)` triples.
fn entries(text: &str) -> Result<Vec<(usize, &str, &str)>, FormatError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| syntax(i + 1, format!("expected `key: value`, got `{line}`")))?;
        out.push((i + 1, key.trim(), value.trim()));
    }
    Ok(out)
}

fn ids(line: usize, value: &str, bound: Option<usize>) -> Result<Vec<usize>, FormatError> {
    value
        .split_whitespace()
        .map(|tok| {
            let id: usize = tok.parse().map_err(|_| syntax(line, format!("bad identifier `{tok}`")))?;
            match bound {
                Some(n) if id >= n => Err(syntax(line, format!("identifier {id} out of range 0..{n}"))),
                _ => Ok(id),
            }
        })
        .collect()
}

fn count(line: usize, key: &str, value: &str, seen: &mut Option<usize>) -> Result<(), FormatError> {
    if seen.is_some() {
        return Err(syntax(line, format!("duplicate `{key}`")));
    }
    *seen = Some(value.parse().map_err(|_| syntax(line, format!("bad count `{value}`")))?);
    Ok(())
}

pub fn parse_frame(text: &str) -> Result<FiniteFrame, FormatError> {
    let entries = entries(text)?;
    let mut size = None;
    for &(line, key, value) in &entries {
        if key == "elements" {
            count(line, key, value, &mut size)?;
        }
    }
    let n = size.ok_or_else(|| syntax(0, "missing `elements:` line"))?;
    let mut covers = Vec::new();
    let mut labels = vec![None; n];
    for &(line, key, value) in &entries {
        match key {
            "elements" => {}
            "cover" => match ids(line, value, Some(n))?[..] {
                [i, j] => covers.push((i, j)),
                _ => return Err(syntax(line, "`cover:` takes two identifiers")),
            },
            "label" => {
                let (id, name) = value
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(line, "`label:` takes an identifier and a name"))?;
                let id = ids(line, id, Some(n))?[0];
                labels[id] = Some(name.trim().to_string());
            }
            _ => return Err(syntax(line, format!("unknown key `{key}`"))),
        }
    }
    let frame = FiniteFrame::from_covers(n, &covers)?;
    Ok(if labels.iter().any(Option::is_some) {
        frame.with_labels(labels)
    } else {
        frame
    })
}

pub fn write_frame(frame: &FiniteFrame) -> String {
    let mut out = format!("elements: {}\n", frame.size());
    for (i, j) in frame.cover_pairs() {
        writeln!(out, "cover: {i} {j}").unwrap();
    }
    for (i, label) in frame.labels().iter().enumerate() {
        if let Some(l) = label {
            writeln!(out, "label: {i} {l}").unwrap();
        }
    }
    out
}

pub fn parse_space(text: &str) -> Result<FiniteSpace, FormatError> {
    let entries = entries(text)?;
    let mut size = None;
    for &(line, key, value) in &entries {
        if key == "points" {
            count(line, key, value, &mut size)?;
        }
    }
    let n = size.ok_or_else(|| syntax(0, "missing `points:` line"))?;
    let mut opens = Vec::new();
    for &(line, key, value) in &entries {
        match key {
            "points" => {}
            "open" => opens.push(ElementSet::from_ids(n, ids(line, value, Some(n))?)),
            _ => return Err(syntax(line, format!("unknown key `{key}`"))),
        }
    }
    // ∅ and X may be omitted
    opens.push(ElementSet::empty(n));
    opens.push(ElementSet::full(n));
    Ok(FiniteSpace::new(n, opens)?)
}

pub fn write_space(space: &FiniteSpace) -> String {
    let mut out = format!("points: {}\n", space.points());
    for u in space.opens() {
        let list: Vec<String> = u.iter().map(|i| i.to_string()).collect();
        writeln!(out, "open: {}", list.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_round_trip() {
        let text = "# the 3-chain\nelements: 3\ncover: 0 1\ncover: 1 2  # top\nlabel: 1 a\n";
        let f = parse_frame(text).unwrap();
        assert_eq!(f.size(), 3);
        assert_eq!(f.label(1), "a");
        let again = parse_frame(&write_frame(&f)).unwrap();
        assert_eq!(again.cover_pairs(), f.cover_pairs());
        assert_eq!(again.labels(), f.labels());
    }

    #[test]
    fn frame_errors() {
        assert!(matches!(parse_frame("cover: 0 1"), Err(FormatError::Syntax { .. })));
        assert!(matches!(
            parse_frame("elements: 2\ncover: 0 5"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_frame("elements: 2\ncolour: red"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_frame("elements: 2\nelements: 2"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        // the pentagon N5 is not distributive
        let n5 = "elements: 5\ncover: 0 1\ncover: 1 2\ncover: 2 4\ncover: 0 3\ncover: 3 4";
        assert!(matches!(parse_frame(n5), Err(FormatError::Frame(_))));
    }

    #[test]
    fn space_round_trip() {
        let s = parse_space("points: 2\nopen: 1\n").unwrap();
        assert_eq!(s, FiniteSpace::sierpinski());
        assert_eq!(parse_space(&write_space(&s)).unwrap(), s);
        assert!(matches!(
            parse_space("points: 3\nopen: 0\nopen: 1"),
            Err(FormatError::Space(_))
        ));
    }
}

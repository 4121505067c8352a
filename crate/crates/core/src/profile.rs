//! Plain-text potential profiles.
//!
//! ```text
//! # comments and blank lines are ignored
//! lead-left 0
//! segment 2.0 5.5
//! lead-right 0
//! ```
//!
//! The first entry must be `lead-left`, the last `lead-right`, and every entry
//! in between a `segment <width> <potential>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::transfer::{PotentialProfile, Segment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<f64, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    let v: f64 = tok
        .parse()
        .map_err(|_| ParseError::new(line, format!("{what} `{tok}` is not a number")))?;
    if !v.is_finite() {
        return Err(ParseError::new(
            line,
            format!("{what} `{tok}` is not finite"),
        ));
    }
    Ok(v)
}

pub fn parse_profile(text: &str) -> Result<PotentialProfile, ParseError> {
    let mut left: Option<f64> = None;
    let mut right: Option<f64> = None;
    let mut segments = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if right.is_some() {
            return Err(ParseError::new(line, "entries after lead-right"));
        }
        let mut toks = content.split_whitespace();
        let keyword = toks.next().unwrap();
        match keyword {
            "lead-left" => {
                if left.is_some() {
                    return Err(ParseError::new(line, "duplicate lead-left"));
                }
                left = Some(number(toks.next(), line, "potential")?);
            }
            "segment" | "lead-right" if left.is_none() => {
                return Err(ParseError::new(line, "lead-left must come first"));
            }
            "segment" => {
                let width = number(toks.next(), line, "width")?;
                let potential = number(toks.next(), line, "potential")?;
                if !(width > 0.0) {
                    return Err(ParseError::new(
                        line,
                        format!("width {width} must be positive"),
                    ));
                }
                segments.push(Segment { width, potential });
            }
            "lead-right" => {
                right = Some(number(toks.next(), line, "potential")?);
            }
            other => {
                return Err(ParseError::new(line, format!("unknown entry `{other}`")));
            }
        }
        if let Some(extra) = toks.next() {
            return Err(ParseError::new(
                line,
                format!("unexpected trailing `{extra}`"),
            ));
        }
    }

    let left = left.ok_or_else(|| ParseError::new(0, "missing lead-left"))?;
    let right = right.ok_or_else(|| ParseError::new(0, "missing lead-right"))?;
    PotentialProfile::new(left, segments, right).map_err(|e| ParseError::new(0, e.to_string()))
}

/// Serialise `profile` so that [`parse_profile`] returns it unchanged.
pub fn write_profile(profile: &PotentialProfile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lead-left {}", profile.left_lead());
    for s in profile.segments() {
        let _ = writeln!(out, "segment {} {}", s.width, s.potential);
    }
    let _ = writeln!(out, "lead-right {}", profile.right_lead());
    out
}

//! The cover file format.
//!
//! Line-oriented UTF-8 with `#` comments:
//!
//! ```text
//! version 1
//! base_genus <int>
//! degree <int>
//! handle <cycles> ; <cycles>     # repeated base_genus times, order matters
//! branch <label> <cycles> [pad]  # repeated, order matters
//! ```
//!
//! Cycles use 1-based disjoint cycle notation, empty meaning the identity.
//! Labels are exact rationals `p/q`, Gaussian rationals `a/b+c/di`, `inf`,
//! or symbolic identifiers.  Parsed covers are validated; diagnostics carry
//! the offending line.

use std::fmt;

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use fiberprod::cover::{BranchPoint, BranchedCover, CoverViolation};
use fiberprod::gauss::GaussianRational;
use fiberprod::label::BranchLabel;
use fiberprod::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoverFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cover fails validation: {0}")]
    Validation(#[from] CoverViolation),
}

fn syntax(line: usize, message: impl Into<String>) -> CoverFileError {
    CoverFileError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses a label token: `inf`, a rational, a Gaussian rational, or an
/// identifier.
pub fn parse_label(token: &str) -> Result<BranchLabel, String> {
    if token == "inf" {
        return Ok(BranchLabel::Infinity);
    }
    if let Some(value) = parse_gaussian(token)? {
        return Ok(BranchLabel::Point(value));
    }
    let mut chars = token.chars();
    let valid = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if valid {
        Ok(BranchLabel::Named(token.to_string()))
    } else {
        Err(format!("invalid label {token:?}"))
    }
}

/// Parses `p/q`, `a/b+c/di`, `c/di` forms; `Ok(None)` when the token does
/// not start like a number (then it may be an identifier).
pub fn parse_gaussian(token: &str) -> Result<Option<GaussianRational>, String> {
    let bytes = token.as_bytes();
    let starts_numeric = |i: usize| {
        bytes
            .get(i)
            .is_some_and(|&b| b.is_ascii_digit() || ((b == b'+' || b == b'-') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)))
    };
    if !starts_numeric(0) {
        return Ok(None);
    }
    let mut pos = 0usize;
    let first = scan_rational(token, &mut pos)?;
    if pos == token.len() {
        return Ok(Some(GaussianRational::real(first)));
    }
    if token[pos..].starts_with('i') && pos + 1 == token.len() {
        return Ok(Some(GaussianRational::new(BigRational::zero(), first)));
    }
    if !starts_numeric(pos) {
        return Err(format!("invalid numeric label {token:?}"));
    }
    let second = scan_rational(token, &mut pos)?;
    if token[pos..] == *"i" {
        Ok(Some(GaussianRational::new(first, second)))
    } else {
        Err(format!("invalid numeric label {token:?}: expected trailing 'i'"))
    }
}

fn scan_rational(token: &str, pos: &mut usize) -> Result<BigRational, String> {
    let bytes = token.as_bytes();
    let start = *pos;
    if matches!(bytes.get(*pos), Some(b'+') | Some(b'-')) {
        *pos += 1;
    }
    let digits_from = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    if *pos == digits_from {
        return Err(format!("expected digits in {token:?}"));
    }
    let numer: BigInt = token[start..*pos]
        .parse()
        .map_err(|e| format!("bad integer in {token:?}: {e}"))?;
    let mut denom = BigInt::from(1);
    if bytes.get(*pos) == Some(&b'/') {
        *pos += 1;
        let den_from = *pos;
        while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
            *pos += 1;
        }
        if *pos == den_from {
            return Err(format!("expected denominator digits in {token:?}"));
        }
        denom = token[den_from..*pos]
            .parse()
            .map_err(|e| format!("bad denominator in {token:?}: {e}"))?;
        if denom.is_zero() {
            return Err(format!("zero denominator in {token:?}"));
        }
    }
    Ok(BigRational::new(numer, denom))
}

pub fn parse_cover_file(text: &str) -> Result<BranchedCover, CoverFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| {
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            (i + 1, stripped.trim())
        })
        .filter(|(_, l)| !l.is_empty());

    let (line_no, version_line) = lines
        .next()
        .ok_or_else(|| syntax(0, "empty cover file"))?;
    if version_line != "version 1" {
        return Err(syntax(line_no, format!("expected `version 1`, found {version_line:?}")));
    }

    let mut base_genus: Option<usize> = None;
    let mut degree: Option<usize> = None;
    let mut handles: Vec<(Permutation, Permutation)> = Vec::new();
    let mut branch_points: Vec<BranchPoint> = Vec::new();

    for (line_no, line) in lines {
        let (keyword, rest) = match line.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match keyword {
            "base_genus" => {
                let value: usize = rest
                    .parse()
                    .map_err(|e| syntax(line_no, format!("bad base_genus: {e}")))?;
                base_genus = Some(value);
            }
            "degree" => {
                let value: usize = rest
                    .parse()
                    .map_err(|e| syntax(line_no, format!("bad degree: {e}")))?;
                if value == 0 {
                    return Err(syntax(line_no, "degree must be at least 1"));
                }
                degree = Some(value);
            }
            "handle" => {
                let n = degree.ok_or_else(|| syntax(line_no, "handle before degree"))?;
                if !branch_points.is_empty() {
                    return Err(syntax(line_no, "handle lines must precede branch lines"));
                }
                let (a_text, b_text) = rest
                    .split_once(';')
                    .ok_or_else(|| syntax(line_no, "handle needs `<cycles> ; <cycles>`"))?;
                let a = Permutation::parse_cycles(a_text, n)
                    .map_err(|e| syntax(line_no, e.to_string()))?;
                let b = Permutation::parse_cycles(b_text, n)
                    .map_err(|e| syntax(line_no, e.to_string()))?;
                handles.push((a, b));
            }
            "branch" => {
                let n = degree.ok_or_else(|| syntax(line_no, "branch before degree"))?;
                let (label_token, rest) = match rest.split_once(char::is_whitespace) {
                    Some((l, r)) => (l, r.trim()),
                    None => (rest, ""),
                };
                if label_token.is_empty() {
                    return Err(syntax(line_no, "branch needs `<label> <cycles> [pad]`"));
                }
                let label = parse_label(label_token).map_err(|m| syntax(line_no, m))?;
                let (cycles_text, padding) = match rest.strip_suffix("pad") {
                    Some(prefix)
                        if prefix.is_empty()
                            || prefix.ends_with(char::is_whitespace)
                            || prefix.ends_with(')') =>
                    {
                        (prefix, true)
                    }
                    _ => (rest, false),
                };
                let monodromy = Permutation::parse_cycles(cycles_text, n)
                    .map_err(|e| syntax(line_no, e.to_string()))?;
                branch_points.push(BranchPoint {
                    label,
                    monodromy,
                    padding,
                });
            }
            other => {
                return Err(syntax(line_no, format!("unknown keyword {other:?}")));
            }
        }
    }

    let base_genus = base_genus.ok_or_else(|| syntax(0, "missing base_genus line"))?;
    let degree = degree.ok_or_else(|| syntax(0, "missing degree line"))?;
    if handles.len() != base_genus {
        return Err(syntax(
            0,
            format!(
                "expected {base_genus} handle lines (one per base handle), found {}",
                handles.len()
            ),
        ));
    }
    let cover = BranchedCover::new(base_genus, degree, handles, branch_points)?;
    cover.validate()?;
    Ok(cover)
}

fn write_cycles(out: &mut String, p: &Permutation) {
    let mut wrote = false;
    for cycle in p.cycles() {
        if cycle.len() < 2 {
            continue;
        }
        out.push('(');
        for (k, x) in cycle.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            fmt::Write::write_fmt(out, format_args!("{}", x + 1)).unwrap();
        }
        out.push(')');
        wrote = true;
    }
    if !wrote {
        // identity: empty cycle list
    }
}

/// Serializes a cover in the file grammar; `parse_cover_file` inverts this.
pub fn emit_cover_file(cover: &BranchedCover) -> String {
    let mut out = String::new();
    out.push_str("version 1\n");
    out.push_str(&format!("base_genus {}\n", cover.base_genus()));
    out.push_str(&format!("degree {}\n", cover.degree()));
    for (a, b) in cover.handles() {
        out.push_str("handle ");
        write_cycles(&mut out, a);
        out.push_str(" ; ");
        write_cycles(&mut out, b);
        out.push('\n');
    }
    for bp in cover.branch_points() {
        out.push_str(&format!("branch {} ", bp.label));
        write_cycles(&mut out, &bp.monodromy);
        if bp.padding {
            if !bp.monodromy.is_identity() {
                // unreachable on validated covers; keep the flag faithful
            }
            out.push_str(" pad");
        }
        out.push('\n');
    }
    out
}

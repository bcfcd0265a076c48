//! Small argument parsers: rotation angles, point specs, integer lists.

use std::f64::consts::PI;

use cantorx::denjoy::{golden_rotation, CutPoint, Side};

use crate::commands::CliError;

fn precondition(msg: impl Into<String>) -> CliError {
    CliError::Precondition(msg.into())
}

/// Rotation angle: `golden`, a plain decimal in radians, or a rational
/// multiple of pi written like `2pi/7`, `pi/3`, `0.7pi`.
pub fn parse_lambda(s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("golden") || s == "2pi/phi^2" {
        return Ok(golden_rotation());
    }
    if let Some(rest) = s.find("pi").map(|i| (&s[..i], &s[i + 2..])) {
        let (coeff, tail) = rest;
        let num: f64 = if coeff.is_empty() {
            1.0
        } else {
            coeff
                .parse()
                .map_err(|_| precondition(format!("bad angle coefficient in {s:?}")))?
        };
        let den: f64 = if tail.is_empty() {
            1.0
        } else if let Some(d) = tail.strip_prefix('/') {
            d.parse()
                .map_err(|_| precondition(format!("bad angle denominator in {s:?}")))?
        } else {
            return Err(precondition(format!("cannot parse angle {s:?}")));
        };
        return Ok(num * PI / den);
    }
    s.parse()
        .map_err(|_| precondition(format!("cannot parse angle {s:?}")))
}

/// `golden` for the golden-mean conjugate, or a decimal in (0, 1).
pub fn parse_theta(s: &str) -> Result<f64, CliError> {
    if s.eq_ignore_ascii_case("golden") {
        return Ok((5f64.sqrt() - 1.0) / 2.0);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| precondition(format!("cannot parse theta {s:?}")))?;
    if v <= 0.0 || v >= 1.0 {
        return Err(precondition("theta must lie strictly between 0 and 1"));
    }
    Ok(v)
}

/// Cut-circle point: `orbit:<index>:<left|right>` or `angle:<radians>`.
pub fn parse_cutpoint(s: &str) -> Result<CutPoint, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["orbit", index, side] => {
            let index: i64 = index
                .parse()
                .map_err(|_| precondition(format!("bad orbit index in {s:?}")))?;
            let side = match *side {
                "left" | "l" => Side::Left,
                "right" | "r" => Side::Right,
                other => return Err(precondition(format!("bad side {other:?}"))),
            };
            Ok(CutPoint::orbit(index, side))
        }
        ["angle", value] => {
            let angle: f64 = value
                .parse()
                .map_err(|_| precondition(format!("bad angle in {s:?}")))?;
            Ok(CutPoint::free(angle))
        }
        _ => Err(precondition(format!(
            "point {s:?} is neither orbit:<j>:<side> nor angle:<radians>"
        ))),
    }
}

pub fn parse_i64_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| precondition(format!("bad integer {t:?}")))
        })
        .collect()
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| precondition(format!("bad number {t:?}")))
        })
        .collect()
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| precondition(format!("bad count {t:?}")))
        })
        .collect()
}

/// Inclusive range written `lo:hi`.
pub fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| precondition(format!("range {s:?} must be lo:hi")))?;
    let lo = lo
        .parse()
        .map_err(|_| precondition(format!("bad range start in {s:?}")))?;
    let hi = hi
        .parse()
        .map_err(|_| precondition(format!("bad range end in {s:?}")))?;
    if lo > hi {
        return Err(precondition(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

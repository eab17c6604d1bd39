//! Parsing of command-line values.

use std::str::FromStr;

use crate::reduction::DirectionSet;
use crate::space::Subtorus;
use crate::{IntVector, RatVector, Rational};

fn parse_ints(s: &str) -> Result<IntVector, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("{t:?} is not an integer")))
        .collect()
}

/// Comma-separated exact rationals, e.g. `5/4,5/4`.
pub fn parse_rationals(s: &str) -> Result<RatVector, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            if t.contains('.') {
                return Err(format!("{t:?}: use an exact fraction, not a decimal"));
            }
            Rational::from_str(t).map_err(|_| format!("{t:?} is not a rational"))
        })
        .collect()
}

/// `full`, or inclusion columns separated by `;`, each comma-separated.
pub fn parse_subtorus(s: &str, rank: usize) -> Result<Subtorus, String> {
    if s.trim() == "full" {
        return Ok(Subtorus::full(rank));
    }
    let columns = s.split(';').map(parse_ints).collect::<Result<Vec<_>, _>>()?;
    Subtorus::from_columns(rank, columns).map_err(|e| e.to_string())
}

/// An integer vector such as `1,1`.
pub fn parse_direction(s: &str) -> Result<IntVector, String> {
    parse_ints(s)
}

/// `walls` or `walls+samples:N`.
pub fn parse_directions(s: &str, seed: u64) -> Result<DirectionSet, String> {
    let s = s.trim();
    if s == "walls" {
        return Ok(DirectionSet::Walls);
    }
    if let Some(n) = s.strip_prefix("walls+samples:") {
        let count = n.parse().map_err(|_| format!("{n:?} is not a sample count"))?;
        return Ok(DirectionSet::WallsPlusSamples { count, seed });
    }
    Err(format!(
        "unknown direction set {s:?}; expected walls or walls+samples:N"
    ))
}

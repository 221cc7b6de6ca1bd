//! Plain-text input formats: point and line lists, finite-field set files,
//! and `key=value` experiment configurations.
//!
//! The format is line-oriented. Blank lines and lines whose first non-space
//! character is `#` are skipped. Every other line is one of four records:
//!
//! - `key = value` sets a named parameter; each key may appear once.
//! - `point <frac> <frac> ...` lists a rational point, one coordinate per
//!   whitespace-separated token. Coordinates are exact fractions written
//!   `num/den`, or plain integers.
//! - `line <frac> ...` lists a line through two distinct points: `2n`
//!   coordinate tokens, the first `n` for one point, the rest for the other.
//! - `ffpoint <res> <res> ...` lists a finite-field point as
//!   whitespace-delimited residues; the ambient field is named by `key=value`
//!   parameters, not by the record.
//!
//! Fractions are parsed and printed in lowest terms with a positive
//! denominator, and the `/1` of an integer is dropped, so a file written by
//! [`point_record`] and friends re-parses to the same values byte-for-byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use thiserror::Error;

use crate::euclid::{FurstConfig, GeomError, RatLine, RatPoint};

/// Errors from parsing input files.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("key `{key}`: {message}")]
    BadValue { key: String, message: String },
}

/// A parsed configuration file: named parameters plus the point, line, and
/// finite-field point records in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    pairs: BTreeMap<String, String>,
    points: Vec<RatPoint>,
    lines: Vec<RatLine>,
    ff_points: Vec<Vec<u64>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<ConfigFile, ConfigError> {
        let mut file = ConfigFile::default();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            let head = tokens.next().expect("non-empty after trim");
            match head {
                "point" => file.points.push(parse_point(line, tokens)?),
                "line" => file.lines.push(parse_line(line, tokens)?),
                "ffpoint" => file.ff_points.push(parse_ff_point(line, tokens)?),
                _ => {
                    let (key, value) = trimmed.split_once('=').ok_or_else(|| {
                        ConfigError::Parse {
                            line,
                            message: format!(
                                "expected `key = value` or a point/line/ffpoint record, got `{trimmed}`"
                            ),
                        }
                    })?;
                    let key = key.trim().to_owned();
                    if key.is_empty() || key.contains(char::is_whitespace) {
                        return Err(ConfigError::Parse {
                            line,
                            message: format!("`{key}` is not a valid key"),
                        });
                    }
                    let value = value.trim().to_owned();
                    if file.pairs.insert(key.clone(), value).is_some() {
                        return Err(ConfigError::Parse {
                            line,
                            message: format!("duplicate key `{key}`"),
                        });
                    }
                }
            }
        }
        Ok(file)
    }

    /// The value of `key`, if set.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.pairs.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &'static str) -> Result<&str, ConfigError> {
        self.get(key).ok_or(ConfigError::MissingKey(key))
    }

    pub fn get_u64(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        self.get(key)
            .map(|v| {
                v.parse().map_err(|_| ConfigError::BadValue {
                    key: key.to_owned(),
                    message: format!("expected a nonnegative integer, got `{v}`"),
                })
            })
            .transpose()
    }

    pub fn require_u64(&self, key: &'static str) -> Result<u64, ConfigError> {
        self.require(key)?;
        Ok(self.get_u64(key)?.expect("checked above"))
    }

    /// All `key = value` pairs, sorted by key.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn points(&self) -> &[RatPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[RatLine] {
        &self.lines
    }

    pub fn ff_points(&self) -> &[Vec<u64>] {
        &self.ff_points
    }
}

fn parse_fraction(line: usize, token: &str) -> Result<BigRational, ConfigError> {
    token.parse().map_err(|e| ConfigError::Parse {
        line,
        message: format!("bad fraction `{token}`: {e}"),
    })
}

fn parse_point<'a>(
    line: usize,
    tokens: impl Iterator<Item = &'a str>,
) -> Result<RatPoint, ConfigError> {
    let coords = tokens
        .map(|t| parse_fraction(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    RatPoint::new(coords).map_err(|e| geom_parse_error(line, e))
}

fn parse_line<'a>(
    line: usize,
    tokens: impl Iterator<Item = &'a str>,
) -> Result<RatLine, ConfigError> {
    let coords = tokens
        .map(|t| parse_fraction(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() % 2 != 0 || coords.len() < 4 {
        return Err(ConfigError::Parse {
            line,
            message: format!(
                "a line record needs 2n coordinates for two points in dimension n >= 2, got {}",
                coords.len()
            ),
        });
    }
    let n = coords.len() / 2;
    let q = RatPoint::new(coords[n..].to_vec()).map_err(|e| geom_parse_error(line, e))?;
    let p = RatPoint::new({
        let mut head = coords;
        head.truncate(n);
        head
    })
    .map_err(|e| geom_parse_error(line, e))?;
    RatLine::through(&p, &q).map_err(|e| geom_parse_error(line, e))
}

fn parse_ff_point<'a>(
    line: usize,
    tokens: impl Iterator<Item = &'a str>,
) -> Result<Vec<u64>, ConfigError> {
    let coords = tokens
        .map(|t| {
            t.parse().map_err(|_| ConfigError::Parse {
                line,
                message: format!("bad residue `{t}`: expected a nonnegative integer"),
            })
        })
        .collect::<Result<Vec<u64>, _>>()?;
    if coords.is_empty() {
        return Err(ConfigError::Parse {
            line,
            message: "an ffpoint record needs at least one residue".to_owned(),
        });
    }
    Ok(coords)
}

fn geom_parse_error(line: usize, e: GeomError) -> ConfigError {
    ConfigError::Parse { line, message: e.to_string() }
}

/// The `point ...` record for one point.
pub fn point_record(p: &RatPoint) -> String {
    let mut out = String::from("point");
    for c in p.coords() {
        write!(out, " {c}").expect("string writes are infallible");
    }
    out
}

/// The `line ...` record for one line, written through its base point and
/// the base translated by the direction. Re-parsing recovers the same
/// canonical line.
pub fn line_record(l: &RatLine) -> String {
    let mut out = String::from("line");
    for c in l.base().coords() {
        write!(out, " {c}").expect("string writes are infallible");
    }
    for (c, d) in l.base().coords().iter().zip(l.direction()) {
        write!(out, " {}", c + d).expect("string writes are infallible");
    }
    out
}

/// The `ffpoint ...` record for one finite-field point.
pub fn ff_point_record(coords: &[u64]) -> String {
    let mut out = String::from("ffpoint");
    for c in coords {
        write!(out, " {c}").expect("string writes are infallible");
    }
    out
}

/// Serialize a Furstenberg configuration to config text. The output parses
/// back to an equal configuration via [`furst_from_config`].
pub fn furst_to_text(cfg: &FurstConfig) -> String {
    let mut out = String::new();
    out.push_str(&format!("s = {}\n", cfg.s));
    out.push_str(&format!("t = {}\n", cfg.t));
    for p in &cfg.points {
        out.push_str(&point_record(p));
        out.push('\n');
    }
    for l in &cfg.lines {
        out.push_str(&line_record(l));
        out.push('\n');
    }
    out
}

/// Read a Furstenberg configuration back out of a parsed file: keys `s` and
/// `t` plus the point and line records.
pub fn furst_from_config(file: &ConfigFile) -> Result<FurstConfig, ConfigError> {
    let s = file.require_u64("s")?;
    let t = file.require_u64("t")?;
    FurstConfig::new(file.points().iter().cloned(), file.lines().iter().cloned(), s, t).map_err(
        |e| ConfigError::BadValue { key: "s".to_owned(), message: e.to_string() },
    )
}

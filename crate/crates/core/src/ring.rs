//! Ring descriptors for the supported computable commutative rings.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum RingKind {
    Rationals,
    Integers,
    /// `QQ[x]` or `QQ[x1..xn]`; univariate is the one-variable case.
    Polynomials,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingSpec {
    pub kind: RingKind,
    pub vars: Vec<String>,
}

/// Shared handle to a ring description. Cheap to clone; equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Ring(Arc<RingSpec>);

fn valid_var(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn rationals() -> Ring {
        Ring(Arc::new(RingSpec { kind: RingKind::Rationals, vars: Vec::new() }))
    }

    pub fn integers() -> Ring {
        Ring(Arc::new(RingSpec { kind: RingKind::Integers, vars: Vec::new() }))
    }

    pub fn polynomials(vars: &[&str]) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::Ring("polynomial ring needs at least one variable".into()));
        }
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        for v in &vars {
            if !valid_var(v) {
                return Err(Error::Ring(format!("invalid variable name `{v}`")));
            }
        }
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                if vars[i] == vars[j] {
                    return Err(Error::Ring(format!("duplicate variable `{}`", vars[i])));
                }
            }
        }
        Ok(Ring(Arc::new(RingSpec { kind: RingKind::Polynomials, vars })))
    }

    /// Parse a ring spec string: `QQ`, `ZZ`, `QQ[x]`, `QQ[x,y,z]`.
    pub fn parse(s: &str) -> Result<Ring> {
        let s = s.trim();
        if s == "QQ" {
            return Ok(Ring::rationals());
        }
        if s == "ZZ" {
            return Ok(Ring::integers());
        }
        if let Some(rest) = s.strip_prefix("QQ[") {
            if let Some(inner) = rest.strip_suffix(']') {
                let vars: Vec<&str> = inner.split(',').map(|v| v.trim()).collect();
                return Ring::polynomials(&vars);
            }
        }
        Err(Error::Parse { line: 1, col: 1, msg: format!("unrecognized ring spec `{s}`") })
    }

    pub fn kind(&self) -> RingKind {
        self.0.kind
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn is_field(&self) -> bool {
        self.0.kind == RingKind::Rationals
    }

    /// An upper bound for lengths of the free resolutions the kernel produces.
    pub fn global_dimension(&self) -> usize {
        match self.0.kind {
            RingKind::Rationals => 0,
            RingKind::Integers => 1,
            RingKind::Polynomials => self.0.vars.len(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            RingKind::Rationals => write!(f, "QQ"),
            RingKind::Integers => write!(f, "ZZ"),
            RingKind::Polynomials => write!(f, "QQ[{}]", self.0.vars.join(",")),
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ring::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["QQ", "ZZ", "QQ[x]", "QQ[x,y,z]"] {
            assert_eq!(Ring::parse(s).unwrap().to_string(), s);
        }
        assert!(Ring::parse("QQ[x, y]").is_ok());
        assert!(Ring::parse("QQ[]").is_err());
        assert!(Ring::parse("QQ[x,x]").is_err());
        assert!(Ring::parse("QQ[1x]").is_err());
        assert!(Ring::parse("GF(7)").is_err());
    }
}

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the five concrete group families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupDescriptor {
    /// The free abelian group of rank `d`.
    ZPower(usize),
    /// The free group on `d >= 2` letters.
    Free(usize),
    /// The discrete Heisenberg group of 3x3 upper unitriangular integer matrices.
    Heisenberg,
    /// The lamplighter group `Z/2 wr Z`.
    LamplighterZ,
    /// The cyclic group of order `m`.
    CyclicZ(u64),
}

impl GroupDescriptor {
    pub fn z_power(d: usize) -> Result<Self> {
        GroupDescriptor::ZPower(d).validated()
    }

    pub fn free(d: usize) -> Result<Self> {
        GroupDescriptor::Free(d).validated()
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        GroupDescriptor::CyclicZ(m).validated()
    }

    pub fn validated(self) -> Result<Self> {
        let constraint = match self {
            GroupDescriptor::ZPower(0) => "d >= 1",
            GroupDescriptor::Free(d) if d < 2 => "d >= 2",
            GroupDescriptor::CyclicZ(0) => "m >= 1",
            _ => return Ok(self),
        };
        Err(Error::InvalidDescriptor {
            descriptor: self.to_string(),
            constraint,
        })
    }

    pub fn is_abelian(&self) -> bool {
        matches!(
            self,
            GroupDescriptor::ZPower(_) | GroupDescriptor::CyclicZ(_)
        )
    }

    /// Whether word lengths are only known up to the BFS cap.
    pub fn has_capped_metric(&self) -> bool {
        matches!(
            self,
            GroupDescriptor::Heisenberg | GroupDescriptor::LamplighterZ
        )
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::ZPower(d) => write!(f, "ZPower({d})"),
            GroupDescriptor::Free(d) => write!(f, "Free({d})"),
            GroupDescriptor::Heisenberg => f.write_str("Heisenberg"),
            GroupDescriptor::LamplighterZ => f.write_str("LamplighterZ"),
            GroupDescriptor::CyclicZ(m) => write!(f, "CyclicZ({m})"),
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Heisenberg" => return Ok(GroupDescriptor::Heisenberg),
            "LamplighterZ" => return Ok(GroupDescriptor::LamplighterZ),
            _ => {}
        }
        let (name, rest) = s
            .split_once('(')
            .ok_or_else(|| Error::Parse(format!("unknown group descriptor {s:?}")))?;
        let arg = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {s:?}")))?
            .trim();
        let bad_arg = || Error::Parse(format!("bad parameter in {s:?}"));
        let desc = match name.trim() {
            "ZPower" => GroupDescriptor::ZPower(arg.parse().map_err(|_| bad_arg())?),
            "Free" => GroupDescriptor::Free(arg.parse().map_err(|_| bad_arg())?),
            "CyclicZ" => GroupDescriptor::CyclicZ(arg.parse().map_err(|_| bad_arg())?),
            _ => return Err(Error::Parse(format!("unknown group descriptor {s:?}"))),
        };
        desc.validated()
    }
}

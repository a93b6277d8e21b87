use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RootSystemError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Self::A,
            'B' => Self::B,
            'C' => Self::C,
            'D' => Self::D,
            'E' => Self::E,
            'F' => Self::F,
            'G' => Self::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Cartan–Killing type of a simple root system.
///
/// `C2` is accepted and normalized to `B2`; `D2` and `D3` are rejected since
/// they duplicate `A1×A1` and `A3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(RootSystemError::InvalidRank { family, rank });
        }
        let family = if family == Family::C && rank == 2 { Family::B } else { family };
        Ok(Self { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every simple type of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            for rank in 1..=max_rank {
                if family == Family::C && rank == 2 {
                    continue;
                }
                if let Ok(t) = Self::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Number of roots, from the closed-form counts.
    pub fn root_count(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1),
            Family::B | Family::C => 2 * l * l,
            Family::D => 2 * l * (l - 1),
            Family::E => match l {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let family =
            chars.next().and_then(Family::from_char).ok_or_else(|| RootSystemError::UnknownType(s.to_string()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| RootSystemError::UnknownType(s.to_string()))?;
        Self::new(family, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_is_case_insensitive() {
        assert_eq!("e8".parse::<SimpleType>().unwrap().to_string(), "E8");
        assert_eq!("A3".parse::<SimpleType>().unwrap().rank(), 3);
    }

    #[test]
    fn rank_constraints() {
        for bad in ["A0", "B1", "C1", "D3", "D2", "E5", "E9", "F3", "G3", "X2", "A", "Ax"] {
            assert!(bad.parse::<SimpleType>().is_err(), "{bad} should be rejected");
        }
        assert_eq!("C2".parse::<SimpleType>().unwrap().to_string(), "B2");
    }

    #[test]
    fn types_up_to_rank_eight() {
        let all = SimpleType::all_up_to_rank(8);
        // A1..A8, B2..B8, C3..C8, D4..D8, E6..E8, F4, G2
        assert_eq!(all.len(), 8 + 7 + 6 + 5 + 3 + 1 + 1);
    }
}

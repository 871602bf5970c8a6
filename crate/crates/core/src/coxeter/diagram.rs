use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Coxeter diagram of a finite irreducible type, stored as its full bond
/// matrix `m_ij` (`m_ii = 1`, `m_ij = 2` for unconnected nodes).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterDiagram {
    rank: usize,
    bonds: Vec<Vec<u32>>,
    type_label: String,
}

impl CoxeterDiagram {
    /// Builds a diagram from an explicit symmetric bond matrix.
    pub fn from_bonds(type_label: impl Into<String>, bonds: Vec<Vec<u32>>) -> Result<Self> {
        let rank = bonds.len();
        if rank == 0 {
            return Err(Error::UnsupportedDiagram("empty diagram".into()));
        }
        for i in 0..rank {
            if bonds[i].len() != rank || bonds[i][i] != 1 {
                return Err(Error::UnsupportedDiagram("malformed bond matrix".into()));
            }
            for j in 0..rank {
                if i != j && (bonds[i][j] < 2 || bonds[i][j] != bonds[j][i]) {
                    return Err(Error::UnsupportedDiagram(format!("bad bond m_{i}{j}")));
                }
            }
        }
        Ok(CoxeterDiagram { rank, bonds, type_label: type_label.into() })
    }

    fn from_edges(label: String, rank: usize, edges: &[(usize, usize, u32)]) -> Self {
        let mut bonds = vec![vec![2u32; rank]; rank];
        for (i, row) in bonds.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(a, b, m) in edges {
            bonds[a][b] = m;
            bonds[b][a] = m;
        }
        CoxeterDiagram { rank, bonds, type_label: label }
    }

    pub fn a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 3)).collect();
        Self::from_edges(format!("A{n}"), n, &edges)
    }

    pub fn b(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, if i == n - 1 { 4 } else { 3 })).collect();
        Self::from_edges(format!("B{n}"), n, &edges)
    }

    pub fn d(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i, 3)).collect();
        edges.push((n - 3, n - 1, 3));
        Self::from_edges(format!("D{n}"), n, &edges)
    }

    pub fn e(n: usize) -> Self {
        // Bourbaki numbering shifted to 0: 0-2-3-4-..., 1 attached to 3.
        let mut edges = vec![(0, 2, 3), (1, 3, 3)];
        edges.extend((3..n).map(|i| (i - 1, i, 3)));
        Self::from_edges(format!("E{n}"), n, &edges)
    }

    pub fn f4() -> Self {
        Self::from_edges("F4".into(), 4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)])
    }

    pub fn h3() -> Self {
        Self::from_edges("H3".into(), 3, &[(0, 1, 5), (1, 2, 3)])
    }

    pub fn h4() -> Self {
        Self::from_edges("H4".into(), 4, &[(0, 1, 5), (1, 2, 3), (2, 3, 3)])
    }

    pub fn i2(m: u32) -> Self {
        Self::from_edges(format!("I2({m})"), 2, &[(0, 1, m)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bond(&self, i: usize, j: usize) -> u32 {
        self.bonds[i][j]
    }

    pub fn bonds(&self) -> &[Vec<u32>] {
        &self.bonds
    }

    pub fn type_label(&self) -> &str {
        &self.type_label
    }

    /// Largest bond label, which fixes the scalar field.
    pub fn max_bond(&self) -> u32 {
        self.bonds
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(move |(j, _)| *j != i).map(|(_, &m)| m))
            .max()
            .unwrap_or(2)
            .max(3)
    }

    /// Types gated behind the heavy-types opt-in.
    pub fn is_heavy(&self) -> bool {
        matches!(self.type_label.as_str(), "F4" | "H4" | "E6" | "E7" | "E8")
    }
}

impl fmt::Display for CoxeterDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.type_label)
    }
}

impl FromStr for CoxeterDiagram {
    type Err = Error;

    /// Parses labels such as `A3`, `B2`, `D4`, `E6`, `F4`, `H3`, `I2(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedDiagram(format!("unknown Coxeter type {s:?}"));
        if let Some(inner) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = inner.trim().parse().map_err(|_| bad())?;
            if m < 2 {
                return Err(bad());
            }
            return Ok(Self::i2(m));
        }
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        match (family, n) {
            ('A', n) if n >= 1 => Ok(Self::a(n)),
            ('B', n) if n >= 2 => Ok(Self::b(n)),
            ('D', n) if n >= 4 => Ok(Self::d(n)),
            ('E', n) if (6..=8).contains(&n) => Ok(Self::e(n)),
            ('F', 4) => Ok(Self::f4()),
            ('H', 3) => Ok(Self::h3()),
            ('H', 4) => Ok(Self::h4()),
            _ => Err(bad()),
        }
    }
}

//! Variable tables.
//!
//! Every polynomial lives over a `VarTable`: an ordered list of named
//! variables. Matrix-entry variables are named by their `(i, j)` position
//! (1-based) and listed row-major, so `x_1_1` comes first. Target-space
//! variables (`y_i_j`) and auxiliary variables (`t_k`, used by quotient and
//! saturation tricks) get their own name kinds so that joint tables stay
//! unambiguous.

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

/// Ordinal of a variable inside its table.
pub type VarId = usize;

/// A variable label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarName {
    /// Source matrix entry `x_i_j`.
    X(u8, u8),
    /// Target coordinate `y_i_j`.
    Y(u8, u8),
    /// Auxiliary variable `t_k`.
    T(u8),
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarName::X(i, j) => write!(f, "x_{}_{}", i, j),
            VarName::Y(i, j) => write!(f, "y_{}_{}", i, j),
            VarName::T(0) => write!(f, "t"),
            VarName::T(k) => write!(f, "t_{}", k),
        }
    }
}

/// Ordered table of distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<VarName>,
    position: FxHashMap<VarName, VarId>,
}

impl VarTable {
    /// Builds a table from an ordered list of labels. Labels must be unique.
    pub fn new(names: Vec<VarName>) -> Result<Self> {
        let mut position = FxHashMap::default();
        for (id, name) in names.iter().enumerate() {
            if position.insert(*name, id).is_some() {
                return Err(Error::Spec(format!("duplicate variable label {name}")));
            }
        }
        Ok(VarTable { names, position })
    }

    /// Table of the generic m-by-m matrix: all `m*m` entries, row-major.
    pub fn generic(m: usize) -> Arc<Self> {
        let mut names = Vec::with_capacity(m * m);
        for i in 1..=m {
            for j in 1..=m {
                names.push(VarName::X(i as u8, j as u8));
            }
        }
        Arc::new(Self::new(names).expect("generic labels are distinct"))
    }

    /// Table of the diagonally cloned matrix: the pair `(m, m)` is absent
    /// because that entry reuses the variable at `(m-1, m-1)`.
    pub fn cloned_family(m: usize) -> Arc<Self> {
        let mut names = Vec::with_capacity(m * m - 1);
        for i in 1..=m {
            for j in 1..=m {
                if i == m && j == m {
                    continue;
                }
                names.push(VarName::X(i as u8, j as u8));
            }
        }
        Arc::new(Self::new(names).expect("cloned labels are distinct"))
    }

    /// Table of the zeros degeneration: pairs with `i + j > 2m - r` are absent.
    pub fn zeros_family(m: usize, r: usize) -> Arc<Self> {
        let mut names = Vec::new();
        for i in 1..=m {
            for j in 1..=m {
                if i + j > 2 * m - r {
                    continue;
                }
                names.push(VarName::X(i as u8, j as u8));
            }
        }
        Arc::new(Self::new(names).expect("zeros labels are distinct"))
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// True when the table is empty.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Label of a variable ordinal.
    pub fn name(&self, id: VarId) -> VarName {
        self.names[id]
    }

    /// All labels in ordinal order.
    pub fn names(&self) -> &[VarName] {
        &self.names
    }

    /// Ordinal of a label, if present.
    pub fn position(&self, name: VarName) -> Option<VarId> {
        self.position.get(&name).copied()
    }

    /// Ordinal of a label, or an error naming it.
    pub fn require(&self, name: VarName) -> Result<VarId> {
        self.position(name)
            .ok_or_else(|| Error::ContextMismatch(format!("variable {name} not in table")))
    }

    /// New table with `extra` labels prepended (used for elimination tricks,
    /// which want the auxiliary block first).
    pub fn prepended(&self, extra: &[VarName]) -> Result<Arc<Self>> {
        let mut names = extra.to_vec();
        names.extend_from_slice(&self.names);
        Ok(Arc::new(Self::new(names)?))
    }

    /// New table with `extra` labels appended.
    pub fn appended(&self, extra: &[VarName]) -> Result<Arc<Self>> {
        let mut names = self.names.clone();
        names.extend_from_slice(extra);
        Ok(Arc::new(Self::new(names)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_ordering() {
        let t = VarTable::generic(3);
        assert_eq!(t.len(), 9);
        assert_eq!(t.name(0), VarName::X(1, 1));
        assert_eq!(t.name(1), VarName::X(1, 2));
        assert_eq!(t.name(3), VarName::X(2, 1));
        assert_eq!(t.position(VarName::X(3, 3)), Some(8));
    }

    #[test]
    fn cloned_table_omits_corner() {
        let t = VarTable::cloned_family(3);
        assert_eq!(t.len(), 8);
        assert_eq!(t.position(VarName::X(3, 3)), None);
        assert_eq!(t.position(VarName::X(2, 2)), Some(4));
    }

    #[test]
    fn zeros_table_omits_staircase() {
        // m=4, r=2 drops (3,4), (4,3), (4,4).
        let t = VarTable::zeros_family(4, 2);
        assert_eq!(t.len(), 13);
        assert_eq!(t.position(VarName::X(3, 4)), None);
        assert_eq!(t.position(VarName::X(4, 3)), None);
        assert_eq!(t.position(VarName::X(4, 4)), None);
        assert_eq!(t.position(VarName::X(4, 1)), Some(11));
        assert_eq!(t.position(VarName::X(4, 2)), Some(12));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(VarTable::new(vec![VarName::X(1, 1), VarName::X(1, 1)]).is_err());
    }
}

//! Degeneration families of the generic square matrix and their
//! determinantal data: determinants, cofactors, adjugates, gradient-ideal
//! generators and corner-strip minors.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::PolyMat;
use crate::poly::Polynomial;
use crate::vars::{VarId, VarName, VarTable};

/// One cell of a degeneration pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    /// Structural zero.
    Zero,
    /// The variable `x_i_j` (1-based indices).
    Var(u8, u8),
}

/// Which degeneration family a matrix belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// All `m*m` entries distinct variables.
    Generic,
    /// Entry `(m, m)` carries the variable at `(m-1, m-1)`.
    Cloned,
    /// Entry `(i, j)` is zero iff `i + j > 2m - r`, for `1 <= r <= m-2`.
    Zeros(usize),
    /// Arbitrary 0/variable grid; no validation beyond shape.
    Custom(Vec<Vec<Cell>>),
}

/// A degeneration pattern: size plus family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixSpec {
    /// Matrix size.
    pub m: usize,
    /// Degeneration family.
    pub family: Family,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    m: usize,
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<Vec<String>>>,
}

impl Serialize for MatrixSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (family, r, entries) = match &self.family {
            Family::Generic => ("generic", None, None),
            Family::Cloned => ("cloned", None, None),
            Family::Zeros(r) => ("zeros", Some(*r), None),
            Family::Custom(grid) => {
                let entries = grid
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|c| match c {
                                Cell::Zero => "0".to_string(),
                                Cell::Var(i, j) => format!("x_{}_{}", i, j),
                            })
                            .collect()
                    })
                    .collect();
                ("custom", None, Some(entries))
            }
        };
        SpecJson {
            m: self.m,
            family: family.to_string(),
            r,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let raw = SpecJson::deserialize(d)?;
        let family = match raw.family.as_str() {
            "generic" => Family::Generic,
            "cloned" => Family::Cloned,
            "zeros" => Family::Zeros(
                raw.r
                    .ok_or_else(|| DeError::custom("zeros family requires r"))?,
            ),
            "custom" => {
                let entries = raw
                    .entries
                    .ok_or_else(|| DeError::custom("custom family requires entries"))?;
                let grid = entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|cell| parse_cell(cell).map_err(DeError::custom))
                            .collect::<std::result::Result<Vec<_>, _>>()
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Family::Custom(grid)
            }
            other => return Err(DeError::custom(format!("unknown family {other}"))),
        };
        Ok(MatrixSpec { m: raw.m, family })
    }
}

fn parse_cell(s: &str) -> std::result::Result<Cell, String> {
    if s == "0" {
        return Ok(Cell::Zero);
    }
    let parts: Vec<&str> = s.split('_').collect();
    if parts.len() == 3 && parts[0] == "x" {
        let i: u8 = parts[1].parse().map_err(|_| format!("bad cell {s}"))?;
        let j: u8 = parts[2].parse().map_err(|_| format!("bad cell {s}"))?;
        return Ok(Cell::Var(i, j));
    }
    Err(format!("cell must be \"0\" or \"x_i_j\", got {s}"))
}

impl MatrixSpec {
    /// Generic m-by-m spec.
    pub fn generic(m: usize) -> Self {
        MatrixSpec {
            m,
            family: Family::Generic,
        }
    }

    /// Diagonally cloned spec.
    pub fn cloned(m: usize) -> Self {
        MatrixSpec {
            m,
            family: Family::Cloned,
        }
    }

    /// Strategic-zeros spec.
    pub fn zeros(m: usize, r: usize) -> Self {
        MatrixSpec {
            m,
            family: Family::Zeros(r),
        }
    }

    /// Custom spec from a grid.
    pub fn custom(grid: Vec<Vec<Cell>>) -> Self {
        MatrixSpec {
            m: grid.len(),
            family: Family::Custom(grid),
        }
    }

    /// The cell at 1-based position `(i, j)`.
    pub fn cell(&self, i: usize, j: usize) -> Cell {
        match &self.family {
            Family::Generic => Cell::Var(i as u8, j as u8),
            Family::Cloned => {
                if i == self.m && j == self.m {
                    Cell::Var(self.m as u8 - 1, self.m as u8 - 1)
                } else {
                    Cell::Var(i as u8, j as u8)
                }
            }
            Family::Zeros(r) => {
                if i + j > 2 * self.m - r {
                    Cell::Zero
                } else {
                    Cell::Var(i as u8, j as u8)
                }
            }
            Family::Custom(grid) => grid[i - 1][j - 1],
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Spec("matrix size must be positive".into()));
        }
        match &self.family {
            Family::Zeros(r) => {
                if *r < 1 || *r + 2 > self.m {
                    return Err(Error::Spec(format!(
                        "zeros family requires 1 <= r <= m-2, got m={}, r={}",
                        self.m, r
                    )));
                }
            }
            Family::Custom(grid) => {
                if grid.len() != self.m || grid.iter().any(|row| row.len() != self.m) {
                    return Err(Error::Spec("custom grid must be m-by-m".into()));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Realizes the pattern over a table holding exactly the distinct
    /// variables used, in row-major label order.
    pub fn build(&self) -> Result<SymbolicMatrix> {
        self.validate()?;
        let mut names: Vec<VarName> = Vec::new();
        let mut seen = FxHashMap::default();
        for i in 1..=self.m {
            for j in 1..=self.m {
                if let Cell::Var(a, b) = self.cell(i, j) {
                    let name = VarName::X(a, b);
                    if seen.insert(name, ()).is_none() {
                        names.push(name);
                    }
                }
            }
        }
        names.sort();
        let table = Arc::new(VarTable::new(names)?);
        Ok(SymbolicMatrix {
            spec: self.clone(),
            table,
        })
    }
}

/// Which corner strip to slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripSide {
    /// `N_j`: the last `j` rows.
    Rows,
    /// `M_j`: the last `j` columns.
    Cols,
}

/// A realized degeneration matrix over its variable table.
#[derive(Debug, Clone)]
pub struct SymbolicMatrix {
    spec: MatrixSpec,
    table: Arc<VarTable>,
}

impl SymbolicMatrix {
    /// Matrix size.
    pub fn m(&self) -> usize {
        self.spec.m
    }

    /// The defining pattern.
    pub fn spec(&self) -> &MatrixSpec {
        &self.spec
    }

    /// The variable table (exactly the distinct variables used).
    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Variable ordinal carried by the 1-based cell `(i, j)`, when nonzero.
    pub fn cell_var(&self, i: usize, j: usize) -> Option<VarId> {
        match self.spec.cell(i, j) {
            Cell::Zero => None,
            Cell::Var(a, b) => self.table.position(VarName::X(a, b)),
        }
    }

    /// The cell `(i, j)` as a polynomial (a variable or zero).
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        match self.cell_var(i, j) {
            None => Polynomial::zero(self.table.clone()),
            Some(v) => Polynomial::variable(self.table.clone(), v),
        }
    }

    /// The full matrix as a polynomial matrix.
    pub fn to_polymat(&self) -> PolyMat {
        let rows = (1..=self.m())
            .map(|i| (1..=self.m()).map(|j| self.entry(i, j)).collect())
            .collect();
        PolyMat::from_rows(self.table.clone(), rows)
    }

    /// Fresh memo for shared minor computations.
    pub fn minor_table(&self) -> MinorTable {
        MinorTable {
            memo: FxHashMap::default(),
        }
    }

    /// Minor over the rows and columns selected by bitmasks (bit k = 1-based
    /// index k+1), computed by Laplace expansion over column subsets with
    /// memoization.
    pub fn minor(&self, rows: u32, cols: u32, memo: &mut MinorTable) -> Polynomial {
        debug_assert_eq!(rows.count_ones(), cols.count_ones());
        if rows == 0 {
            return Polynomial::int(self.table.clone(), 1);
        }
        if let Some(hit) = memo.memo.get(&(rows, cols)) {
            return hit.clone();
        }
        let r = rows.trailing_zeros() as usize + 1;
        let rest = rows & (rows - 1);
        let mut acc = Polynomial::zero(self.table.clone());
        let mut sign_neg = false;
        let mut cols_left = cols;
        while cols_left != 0 {
            let c = cols_left.trailing_zeros() as usize + 1;
            cols_left &= cols_left - 1;
            let e = self.entry(r, c);
            if !e.is_zero() {
                let sub = self.minor(rest, cols & !(1 << (c - 1)), memo);
                let term = e.checked_mul(&sub).expect("same table");
                acc = if sign_neg {
                    acc.checked_sub(&term).expect("same table")
                } else {
                    acc.checked_add(&term).expect("same table")
                };
            }
            sign_neg = !sign_neg;
        }
        memo.memo.insert((rows, cols), acc.clone());
        acc
    }

    /// Exact determinant; homogeneous of degree m.
    pub fn determinant(&self) -> Polynomial {
        let all = (1u32 << self.m()) - 1;
        let mut memo = self.minor_table();
        self.minor(all, all, &mut memo)
    }

    /// Signed cofactor of the `(i, j)` entry: `(-1)^{i+j}` times the minor
    /// deleting row i and column j.
    pub fn cofactor(&self, i: usize, j: usize) -> Polynomial {
        let mut memo = self.minor_table();
        self.cofactor_memo(i, j, &mut memo)
    }

    /// Cofactor sharing a caller-provided minor memo.
    pub fn cofactor_memo(&self, i: usize, j: usize, memo: &mut MinorTable) -> Polynomial {
        let all = (1u32 << self.m()) - 1;
        let rows = all & !(1 << (i - 1));
        let cols = all & !(1 << (j - 1));
        let minor = self.minor(rows, cols, memo);
        if (i + j) % 2 == 0 {
            minor
        } else {
            minor.neg()
        }
    }

    /// Adjugate matrix: entry `(k, l)` is the cofactor of `(l, k)`. Satisfies
    /// `M * adj(M) = adj(M) * M = det(M) * I` exactly.
    pub fn adjugate(&self) -> PolyMat {
        let m = self.m();
        let mut memo = self.minor_table();
        let rows = (1..=m)
            .map(|k| {
                (1..=m)
                    .map(|l| self.cofactor_memo(l, k, &mut memo))
                    .collect()
            })
            .collect();
        PolyMat::from_rows(self.table.clone(), rows)
    }

    /// Gradient-ideal generators, one per table variable in ordinal order:
    /// the generator for `v` is the sum of the signed cofactors over every
    /// cell carrying `v`, and is checked against the formal derivative of the
    /// determinant.
    pub fn gradient_generators(&self) -> Result<Vec<Polynomial>> {
        let m = self.m();
        let mut memo = self.minor_table();
        let mut sums: Vec<Polynomial> = (0..self.table.len())
            .map(|_| Polynomial::zero(self.table.clone()))
            .collect();
        for i in 1..=m {
            for j in 1..=m {
                if let Some(v) = self.cell_var(i, j) {
                    let c = self.cofactor_memo(i, j, &mut memo);
                    sums[v] = sums[v].checked_add(&c)?;
                }
            }
        }
        let det = self.determinant();
        for (v, g) in sums.iter().enumerate() {
            if *g != det.derivative(v) {
                return Err(Error::Internal(format!(
                    "cofactor sum for {} disagrees with the formal derivative",
                    self.table.name(v)
                )));
            }
        }
        Ok(sums)
    }

    /// All m*m signed cofactors, row-major.
    pub fn submaximal_minors(&self) -> Vec<Polynomial> {
        let m = self.m();
        let mut memo = self.minor_table();
        let mut out = Vec::with_capacity(m * m);
        for i in 1..=m {
            for j in 1..=m {
                out.push(self.cofactor_memo(i, j, &mut memo));
            }
        }
        out
    }

    /// All nonzero maximal (`j`-) minors of the corner strip `N_j` (last `j`
    /// rows) or `M_j` (last `j` columns). For `j = 0` returns the unit list.
    pub fn corner_strip_minors(&self, j: usize, side: StripSide) -> Result<Vec<Polynomial>> {
        let m = self.m();
        if j > m {
            return Err(Error::Spec(format!("strip size {j} exceeds m={m}")));
        }
        if j == 0 {
            return Ok(vec![Polynomial::int(self.table.clone(), 1)]);
        }
        let strip_mask: u32 = ((1u32 << j) - 1) << (m - j);
        let mut memo = self.minor_table();
        let mut out = Vec::new();
        for subset in subsets_of_size(m, j) {
            let minor = match side {
                StripSide::Rows => self.minor(strip_mask, subset, &mut memo),
                StripSide::Cols => self.minor(subset, strip_mask, &mut memo),
            };
            if !minor.is_zero() {
                out.push(minor);
            }
        }
        Ok(out)
    }
}

/// Memoized minors keyed by (row mask, column mask).
pub struct MinorTable {
    memo: FxHashMap<(u32, u32), Polynomial>,
}

/// All size-`k` subsets of `{0, .., m-1}` as bitmasks, ascending.
pub fn subsets_of_size(m: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize == k {
            out.push(mask);
        }
    }
    out
}

/// Identity matrix scaled by `d`, over `d`'s table.
pub fn scaled_identity(d: &Polynomial, n: usize) -> PolyMat {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        d.clone()
                    } else {
                        Polynomial::zero(d.table().clone())
                    }
                })
                .collect()
        })
        .collect();
    PolyMat::from_rows(d.table().clone(), rows)
}

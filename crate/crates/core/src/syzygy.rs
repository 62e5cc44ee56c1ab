//! Linear syzygies of gradient ideals.
//!
//! `linear_syzygies` computes an exact basis of the vector space of linear
//! relations among homogeneous generators by rational elimination on the
//! coefficient system. `build_cloned_blocks` and `build_zeros_blocks`
//! assemble the explicit block matrices of linear syzygies for the two
//! degeneration families, under the frozen generator orderings that make
//! the blocks line up cell for cell; the orderings are part of the public
//! contract and are returned with the matrices.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{self, PolyMat, ProbeConfig, RankOutcome};
use crate::matrix::SymbolicMatrix;
use crate::poly::{tables_match, Polynomial};
use crate::report::{Certification, CheckRecord, Status};
use crate::vars::{VarId, VarTable};

/// A matrix whose entries are homogeneous linear forms or zero.
#[derive(Debug, Clone)]
pub struct LinearFormMatrix {
    mat: PolyMat,
}

impl LinearFormMatrix {
    /// Validates that every entry is zero or a homogeneous linear form.
    pub fn new(mat: PolyMat) -> Result<Self> {
        for i in 0..mat.nrows() {
            for j in 0..mat.ncols() {
                let e = mat.at(i, j);
                if !e.is_zero() && e.homogeneous_degree() != Some(1) {
                    return Err(Error::Domain(format!(
                        "entry ({i},{j}) is not a linear form"
                    )));
                }
            }
        }
        Ok(LinearFormMatrix { mat })
    }

    /// Row count.
    pub fn nrows(&self) -> usize {
        self.mat.nrows()
    }

    /// Column count.
    pub fn ncols(&self) -> usize {
        self.mat.ncols()
    }

    /// Entry accessor.
    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        self.mat.at(i, j)
    }

    /// Underlying polynomial matrix.
    pub fn as_polymat(&self) -> &PolyMat {
        &self.mat
    }

    /// The square submatrix obtained by deleting the first row.
    pub fn deleted_first_row(&self) -> PolyMat {
        let rows: Vec<usize> = (1..self.nrows()).collect();
        let cols: Vec<usize> = (0..self.ncols()).collect();
        self.mat.submatrix(&rows, &cols)
    }

    /// Exports the matrix as a JSON grid of linear-form strings.
    pub fn to_json(&self) -> serde_json::Value {
        let grid: Vec<Vec<String>> = (0..self.nrows())
            .map(|i| {
                (0..self.ncols())
                    .map(|j| self.at(i, j).to_string())
                    .collect()
            })
            .collect();
        json!(grid)
    }
}

/// An exact basis of the space of linear syzygies of a generator list.
/// Every basis element assigns one linear form to each generator, and
/// satisfies `sum_v l_v * gen_v = 0` exactly.
#[derive(Debug, Clone)]
pub struct LinearSyzygySpace {
    table: Arc<VarTable>,
    n_gens: usize,
    basis: Vec<Vec<Polynomial>>,
}

impl LinearSyzygySpace {
    /// Dimension of the space.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Number of generators the relations act on.
    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    /// Basis vectors (one linear form per generator).
    pub fn basis(&self) -> &[Vec<Polynomial>] {
        &self.basis
    }

    /// The matrix of linear syzygies: one column per basis element.
    pub fn to_matrix(&self) -> LinearFormMatrix {
        let rows = (0..self.n_gens)
            .map(|v| (0..self.basis.len()).map(|d| self.basis[d][v].clone()).collect())
            .collect();
        LinearFormMatrix::new(PolyMat::from_rows(self.table.clone(), rows))
            .expect("basis entries are linear")
    }

    fn column_as_coefficients(&self, col: &[Polynomial]) -> Vec<BigRational> {
        let n = self.table.len();
        let mut dense = vec![BigRational::zero(); self.n_gens * n];
        for (v, form) in col.iter().enumerate() {
            for (mono, c) in form.terms() {
                let u = (0..n).find(|&u| mono.exp(u) == 1).expect("linear form");
                dense[v * n + u] = c.clone();
            }
        }
        dense
    }

    /// Exact membership of a candidate relation in the computed space.
    pub fn contains_column(&self, col: &[Polynomial]) -> bool {
        if col.len() != self.n_gens {
            return false;
        }
        let n = self.table.len();
        let basis_dense: Vec<Vec<BigRational>> = self
            .basis
            .iter()
            .map(|b| self.column_as_coefficients(b))
            .collect();
        let target = self.column_as_coefficients(col);
        let _ = n;
        linalg::in_span(&basis_dense, &target)
    }
}

/// Exact basis of `{ (l_v) : sum l_v gen_v = 0, l_v linear }`, by rational
/// elimination on the scalar coefficient system (unknowns are the `n * N`
/// scalars, equations index monomials of degree d+1).
pub fn linear_syzygies(gens: &[Polynomial]) -> Result<LinearSyzygySpace> {
    let Some(first) = gens.first() else {
        return Err(Error::Domain("no generators".into()));
    };
    let table = first.table().clone();
    let mut degree = None;
    for g in gens {
        tables_match(first, g)?;
        match g.homogeneous_degree() {
            Some(d) if d >= 1 => {
                if *degree.get_or_insert(d) != d {
                    return Err(Error::Domain(
                        "generators have mixed degrees".into(),
                    ));
                }
            }
            _ => {
                return Err(Error::Domain(
                    "generators must be homogeneous of degree >= 1".into(),
                ));
            }
        }
    }
    let n = table.len();
    let n_gens = gens.len();
    // Row per degree-(d+1) monomial, column per unknown scalar (v, u).
    let mut rows: FxHashMap<crate::monomial::Monomial, Vec<(usize, BigRational)>> =
        FxHashMap::default();
    for (v, g) in gens.iter().enumerate() {
        for u in 0..n {
            let col = v * n + u;
            let xu = crate::monomial::Monomial::var(n, u);
            for (mono, c) in g.terms() {
                rows.entry(mono.mul(&xu))
                    .or_default()
                    .push((col, c.clone()));
            }
        }
    }
    let mut system: Vec<Vec<(usize, BigRational)>> = Vec::with_capacity(rows.len());
    for (_, mut row) in rows {
        row.sort_by_key(|(c, _)| *c);
        // Merge duplicate columns (a monomial can arise from several terms).
        let mut merged: Vec<(usize, BigRational)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        if !merged.is_empty() {
            system.push(merged);
        }
    }
    let null = linalg::nullspace_sparse(system, n_gens * n);
    let mut basis = Vec::with_capacity(null.len());
    for vec in null {
        let mut forms = Vec::with_capacity(n_gens);
        for v in 0..n_gens {
            let terms = (0..n)
                .filter(|&u| !vec[v * n + u].is_zero())
                .map(|u| {
                    (
                        crate::monomial::Monomial::var(n, u),
                        vec[v * n + u].clone(),
                    )
                })
                .collect();
            forms.push(Polynomial::from_terms(table.clone(), terms));
        }
        // Soundness: each basis vector must be an exact syzygy.
        let mut acc = Polynomial::zero(table.clone());
        for (l, g) in forms.iter().zip(gens.iter()) {
            acc = acc.checked_add(&l.checked_mul(g)?)?;
        }
        if !acc.is_zero() {
            return Err(Error::Internal("nullspace vector is not a syzygy".into()));
        }
        basis.push(forms);
    }
    Ok(LinearSyzygySpace {
        table,
        n_gens,
        basis,
    })
}

/// Rank of the matrix of linear syzygies over the fraction field.
///
/// The syzygy count gives the structural upper bound `n_gens - 1`; random
/// prime-field evaluation certifies the lower bound per trial, and the exact
/// fraction-free elimination path runs when the matrix is small.
pub fn linear_rank(space: &LinearSyzygySpace, probe: &ProbeConfig) -> Result<RankOutcome> {
    if space.dimension() == 0 {
        return Ok(RankOutcome {
            rank: 0,
            certification: Certification::Exact,
            trials: Vec::new(),
        });
    }
    let mat = space.to_matrix();
    if space.n_gens() <= 9 && space.dimension() <= 9 {
        let exact = mat.as_polymat().bareiss_rank()?;
        return Ok(RankOutcome {
            rank: exact,
            certification: Certification::Exact,
            trials: Vec::new(),
        });
    }
    let upper = space.n_gens() - 1;
    linalg::rank_protocol(mat.as_polymat(), Some(upper), probe, 0x5a7a)
}

/// Explicit syzygy block matrix plus the frozen generator ordering its rows
/// follow (as variable ordinals of the matrix table).
#[derive(Debug, Clone)]
pub struct SyzygyBlocks {
    /// The block matrix of linear syzygies.
    pub matrix: LinearFormMatrix,
    /// Row v of the matrix is a coefficient for the gradient generator of
    /// `generator_order[v]`.
    pub generator_order: Vec<VarId>,
}

impl SyzygyBlocks {
    /// Gradient generators permuted into the frozen row order.
    pub fn ordered_generators(&self, mat: &SymbolicMatrix) -> Result<Vec<Polynomial>> {
        let grad = mat.gradient_generators()?;
        Ok(self.generator_order.iter().map(|&v| grad[v].clone()).collect())
    }
}

struct ColumnBuilder<'a> {
    mat: &'a SymbolicMatrix,
    pos: FxHashMap<(usize, usize), usize>,
    n_rows: usize,
    columns: Vec<Vec<Polynomial>>,
}

impl<'a> ColumnBuilder<'a> {
    fn new(mat: &'a SymbolicMatrix, gen_cells: &[(usize, usize)]) -> Self {
        let mut pos = FxHashMap::default();
        for (row, cell) in gen_cells.iter().enumerate() {
            pos.insert(*cell, row);
        }
        ColumnBuilder {
            mat,
            pos,
            n_rows: gen_cells.len(),
            columns: Vec::new(),
        }
    }

    fn fresh(&self) -> Vec<Polynomial> {
        vec![Polynomial::zero(self.mat.table().clone()); self.n_rows]
    }

    /// Adds `coeff * entry(ei, ej)` to the row of generator cell `(gi, gj)`.
    fn add(&mut self, col: &mut [Polynomial], gcell: (usize, usize), ei: usize, ej: usize, sign: i64) {
        let e = self.mat.entry(ei, ej);
        if e.is_zero() {
            return;
        }
        let row = *self
            .pos
            .get(&gcell)
            .expect("generator cell present in ordering");
        let scaled = e.scale(&BigRational::from_integer(sign.into()));
        col[row] = col[row].checked_add(&scaled).expect("same table");
    }

    fn push(&mut self, col: Vec<Polynomial>) {
        self.columns.push(col);
    }

    fn finish(self, order: Vec<VarId>) -> Result<SyzygyBlocks> {
        let ncols = self.columns.len();
        let rows = (0..self.n_rows)
            .map(|r| (0..ncols).map(|c| self.columns[c][r].clone()).collect())
            .collect();
        let matrix = LinearFormMatrix::new(PolyMat::from_rows(self.mat.table().clone(), rows))?;
        Ok(SyzygyBlocks {
            matrix,
            generator_order: order,
        })
    }
}

/// The explicit `(m^2-1) x (m^2-2)` block matrix of linear syzygies of the
/// cloned family, rows ordered by traversing rows `1..m-2` left to right and
/// then the last two rows column by column.
pub fn build_cloned_blocks(mat: &SymbolicMatrix) -> Result<SyzygyBlocks> {
    let m = mat.m();
    if m < 3 {
        return Err(Error::Spec("cloned blocks need m >= 3".into()));
    }
    // Frozen generator ordering (cells; the pair (m, m) never appears).
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 1..=m - 2 {
        for j in 1..=m {
            cells.push((i, j));
        }
    }
    for c in 1..=m - 1 {
        cells.push((m - 1, c));
        cells.push((m, c));
    }
    cells.push((m - 1, m));
    let order: Vec<VarId> = cells
        .iter()
        .map(|&(i, j)| mat.cell_var(i, j).expect("generator cell is a variable"))
        .collect();
    let mut b = ColumnBuilder::new(mat, &cells);

    // Block phi_1: rows 2..m of the matrix against the first generator row.
    for i in 2..=m {
        let mut col = b.fresh();
        for j in 1..=m {
            b.add(&mut col, (1, j), i, j, 1);
        }
        b.push(col);
    }
    // Blocks phi_k, k = 2..m-2: a copy of the transpose with column k
    // replaced by the row-trace difference of rows k-1 and k.
    for k in 2..=m.saturating_sub(2) {
        for slot in 1..=m {
            let mut col = b.fresh();
            if slot == k {
                for j in 1..=m {
                    b.add(&mut col, (k - 1, j), k - 1, j, 1);
                    b.add(&mut col, (k, j), k, j, -1);
                }
            } else {
                for j in 1..=m {
                    b.add(&mut col, (k, j), slot, j, 1);
                }
            }
            b.push(col);
        }
    }
    // 2x2 blocks phi_r^{r+1}, r = 2..m-2: column relations against column r-1.
    for r in 2..=m.saturating_sub(2) {
        for k in [r, r + 1] {
            let mut col = b.fresh();
            for i in 1..=m {
                b.add(&mut col, (i, r - 1), i, k, 1);
            }
            b.push(col);
        }
    }
    // Block phi_{m-1}^m: column relations against column m-2.
    for c in [m - 1, m] {
        let mut col = b.fresh();
        for i in 1..=m {
            b.add(&mut col, (i, m - 2), i, c, 1);
        }
        b.push(col);
    }
    // Final corner columns, built from the paired relations that involve the
    // shared variable's generator.
    {
        let mut col = b.fresh();
        for j in 1..=m - 1 {
            b.add(&mut col, (m, j), m - 1, j, 1);
        }
        for i in 1..=m - 2 {
            b.add(&mut col, (i, m - 1), i, m, 1);
        }
        b.add(&mut col, (m - 1, m - 1), m - 1, m, 1);
        b.add(&mut col, (m, m - 1), m - 1, m - 1, 1);
        b.push(col);
    }
    {
        let mut col = b.fresh();
        for i in 1..=m - 1 {
            b.add(&mut col, (i, m), i, m - 1, 1);
        }
        for j in 1..=m - 2 {
            b.add(&mut col, (m - 1, j), m, j, 1);
        }
        b.add(&mut col, (m - 1, m - 1), m, m - 1, 1);
        b.add(&mut col, (m - 1, m), m - 1, m - 1, 1);
        b.push(col);
    }
    {
        let mut col = b.fresh();
        for j in 1..=m {
            if j != m - 1 {
                b.add(&mut col, (m - 1, j), m - 1, j, 1);
            }
        }
        for j in 1..=m - 1 {
            b.add(&mut col, (m, j), m, j, 1);
        }
        b.add(&mut col, (m - 1, m - 1), m - 1, m - 1, 1);
        for j in 1..=m {
            b.add(&mut col, (m - 2, j), m - 2, j, -2);
        }
        b.push(col);
    }
    let blocks = b.finish(order)?;
    let (rows, cols) = (blocks.matrix.nrows(), blocks.matrix.ncols());
    if rows != m * m - 1 || cols != m * m - 2 {
        return Err(Error::Internal(format!(
            "cloned block matrix has shape {rows}x{cols}"
        )));
    }
    Ok(blocks)
}

/// The explicit block matrix of linear syzygies of the zeros family, rows
/// ordered by traversing full rows left to right and then the staircase
/// columns top to bottom. Both column regimes (`r > m-r-1` and
/// `r <= m-r-1`) are selected automatically.
pub fn build_zeros_blocks(mat: &SymbolicMatrix) -> Result<SyzygyBlocks> {
    let m = mat.m();
    let r = match mat.spec().family {
        crate::matrix::Family::Zeros(r) => r,
        _ => return Err(Error::Spec("zeros blocks need a zeros-family matrix".into())),
    };
    // Frozen generator ordering.
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for i in 1..=m - r {
        for j in 1..=m {
            cells.push((i, j));
        }
    }
    for c in 1..=m - r {
        for i in m - r + 1..=m {
            cells.push((i, c));
        }
    }
    for c in m - r + 1..=m - 1 {
        for i in m - r + 1..=2 * m - r - c {
            cells.push((i, c));
        }
    }
    let order: Vec<VarId> = cells
        .iter()
        .map(|&(i, j)| mat.cell_var(i, j).expect("generator cell is a variable"))
        .collect();
    let mut b = ColumnBuilder::new(mat, &cells);

    // Block phi_1.
    for i in 2..=m {
        let mut col = b.fresh();
        for j in 1..=m {
            b.add(&mut col, (1, j), i, j, 1);
        }
        b.push(col);
    }
    // Blocks phi_k, k = 2..m-r.
    for k in 2..=m - r {
        for slot in 1..=m {
            let mut col = b.fresh();
            if slot == k {
                for j in 1..=m {
                    b.add(&mut col, (k - 1, j), k - 1, j, 1);
                    b.add(&mut col, (k, j), k, j, -1);
                }
            } else {
                for j in 1..=m {
                    b.add(&mut col, (k, j), slot, j, 1);
                }
            }
            b.push(col);
        }
    }
    // Blocks phi_r^{(k)}, k = 1..m-r: column relations against column k.
    for k in 1..=m - r {
        let cols: Vec<usize> = if k <= r {
            (1..=r + 1).filter(|&c| c != k).collect()
        } else {
            (1..=r).collect()
        };
        for c in cols {
            let mut col = b.fresh();
            for i in 1..=m {
                b.add(&mut col, (i, k), i, c, 1);
            }
            b.push(col);
        }
    }
    // Blocks Phi_i, i = 1..r-1: the column-trace difference against column 1
    // followed by the off-diagonal column relations.
    for i in 1..=r.saturating_sub(1) {
        {
            let mut col = b.fresh();
            for i2 in 1..=m {
                b.add(&mut col, (i2, m - r + i), i2, m - r + i, 1);
                b.add(&mut col, (i2, 1), i2, 1, -1);
            }
            b.push(col);
        }
        for k in i + 1..=r - 1 {
            let mut col = b.fresh();
            for i2 in 1..=m {
                b.add(&mut col, (i2, m - r + i), i2, m - r + k, 1);
            }
            b.push(col);
        }
    }
    let blocks = b.finish(order)?;
    let n = mat.table().len();
    let (rows, cols) = (blocks.matrix.nrows(), blocks.matrix.ncols());
    if rows != n || cols != n - 1 {
        return Err(Error::Internal(format!(
            "zeros block matrix has shape {rows}x{cols}, expected {n}x{}",
            n - 1
        )));
    }
    Ok(blocks)
}

/// Verifies that every column of `s` is an exact syzygy of `gens`:
/// PASS iff `gens^t * s = 0` column by column; FAIL lists the offending
/// columns with their nonzero residuals.
pub fn verify_syzygy(s: &LinearFormMatrix, gens: &[Polynomial]) -> Result<CheckRecord> {
    if s.nrows() != gens.len() {
        return Err(Error::Domain(format!(
            "syzygy matrix has {} rows but {} generators given",
            s.nrows(),
            gens.len()
        )));
    }
    let table = gens
        .first()
        .map(|g| g.table().clone())
        .ok_or_else(|| Error::Domain("no generators".into()))?;
    let mut offenders = Vec::new();
    for c in 0..s.ncols() {
        let mut acc = Polynomial::zero(table.clone());
        for (v, g) in gens.iter().enumerate() {
            acc = acc.checked_add(&s.at(v, c).checked_mul(g)?)?;
        }
        if !acc.is_zero() {
            offenders.push(json!({ "column": c, "residual": acc.to_string() }));
        }
    }
    let status = if offenders.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(
        CheckRecord::new("syzygy_columns", "syzygy_verification", status, Certification::Exact)
            .with_witness(json!({
                "columns": s.ncols(),
                "offending": offenders,
            })),
    )
}

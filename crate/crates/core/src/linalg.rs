//! Exact linear algebra: sparse rational elimination, polynomial matrices,
//! fraction-free Bareiss elimination, and the rank certification protocol.
//!
//! Rank claims of the form "= k" are accepted when a random evaluation over a
//! large prime field reaches k twice independently; an evaluated rank is
//! always a certified lower bound, so when a structural upper bound (matrix
//! shape, syzygy count) meets it the result is exact rather than
//! probabilistic.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modp::{self, SplitMix64};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::report::Certification;
use crate::vars::VarTable;

/// Sparse row: (column, coefficient) pairs sorted by column.
pub type SparseRow = Vec<(usize, BigRational)>;

fn row_sub_scaled(a: &SparseRow, b: &SparseRow, factor: &BigRational) -> SparseRow {
    // a - factor * b, both sorted by column.
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0, -(&b[j].1 * factor)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].1 - &b[j].1 * factor;
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(c, v)| (*c, -(v * factor))));
    out
}

/// Basis of the nullspace of a sparse matrix with `ncols` unknowns, as dense
/// rational vectors scaled to primitive integers.
pub fn nullspace_sparse(rows: Vec<SparseRow>, ncols: usize) -> Vec<Vec<BigRational>> {
    // Online row echelon keyed by pivot column; pivot rows are normalized.
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        while let Some(&(lead, ref c)) = row.first() {
            match pivots.get(&lead) {
                Some(pivot) => {
                    let factor = c.clone();
                    row = row_sub_scaled(&row, pivot, &factor);
                }
                None => {
                    let inv = c.clone();
                    for (_, v) in row.iter_mut() {
                        *v = &*v / &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    let pivot_cols: Vec<usize> = pivots.keys().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains_key(c)) {
        let mut x = vec![BigRational::zero(); ncols];
        x[free] = BigRational::one();
        for &c in pivot_cols.iter().rev() {
            let row = &pivots[&c];
            let mut acc = BigRational::zero();
            for (j, v) in row.iter().skip(1) {
                if !x[*j].is_zero() {
                    acc += v * &x[*j];
                }
            }
            x[c] = -acc;
        }
        scale_primitive(&mut x);
        basis.push(x);
    }
    basis
}

/// Scales a rational vector in place to primitive integers, first nonzero
/// entry positive.
pub fn scale_primitive(v: &mut [BigRational]) {
    let mut den = BigInt::one();
    for c in v.iter() {
        den = den.lcm(c.denom());
    }
    let mut g = BigInt::zero();
    let mut first_sign = 0;
    for c in v.iter() {
        let n = c.numer() * (&den / c.denom());
        if first_sign == 0 && !n.is_zero() {
            first_sign = if n.is_negative() { -1 } else { 1 };
        }
        g = g.gcd(&n);
    }
    if g.is_zero() {
        return;
    }
    if first_sign < 0 {
        g = -g;
    }
    for c in v.iter_mut() {
        let n = c.numer() * (&den / c.denom());
        *c = BigRational::from_integer(&n / &g);
    }
}

/// Rank of a dense rational matrix.
pub fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &lead;
            for j in c..ncols {
                let t = &rows[r][j] * &f;
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        r += 1;
        rank += 1;
    }
    rank
}

/// True when `target` lies in the span of `basis` (dense rational vectors).
pub fn in_span(basis: &[Vec<BigRational>], target: &[BigRational]) -> bool {
    let mut rows: Vec<Vec<BigRational>> = basis.to_vec();
    let r0 = rank_q(rows.clone());
    rows.push(target.to_vec());
    rank_q(rows) == r0
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss).
pub fn det_bigint(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// A matrix of polynomials over a shared table.
#[derive(Debug, Clone)]
pub struct PolyMat {
    table: Arc<VarTable>,
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMat {
    /// Builds from rows; all rows must have equal length.
    pub fn from_rows(table: Arc<VarTable>, rows: Vec<Vec<Polynomial>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix");
            entries.extend(row);
        }
        PolyMat {
            table,
            nrows,
            ncols,
            entries,
        }
    }

    /// Jacobian matrix of `gens` with respect to every table variable.
    pub fn jacobian(table: Arc<VarTable>, gens: &[Polynomial]) -> Self {
        let n = table.len();
        let rows = gens
            .iter()
            .map(|g| (0..n).map(|v| g.derivative(v)).collect())
            .collect();
        Self::from_rows(table, rows)
    }

    /// Row count.
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    /// Column count.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Ambient table.
    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Entry accessor.
    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    /// Mutable entry accessor.
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.ncols + j]
    }

    /// Matrix product.
    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.ncols != other.nrows {
            return Err(Error::Domain("matrix shape mismatch in product".into()));
        }
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut row = Vec::with_capacity(other.ncols);
            for j in 0..other.ncols {
                let mut acc = Polynomial::zero(self.table.clone());
                for k in 0..self.ncols {
                    acc = acc.checked_add(&self.at(i, k).checked_mul(other.at(k, j))?)?;
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(PolyMat::from_rows(self.table.clone(), rows))
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::Domain("matrix shape mismatch in difference".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMat {
            table: self.table.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            entries,
        })
    }

    /// Transpose.
    pub fn transpose(&self) -> PolyMat {
        let mut rows = Vec::with_capacity(self.ncols);
        for j in 0..self.ncols {
            rows.push((0..self.nrows).map(|i| self.at(i, j).clone()).collect());
        }
        PolyMat::from_rows(self.table.clone(), rows)
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// True when square and symmetric.
    pub fn is_symmetric(&self) -> bool {
        self.nrows == self.ncols
            && (0..self.nrows)
                .all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// Submatrix by row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMat {
        let picked = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.at(i, j).clone()).collect())
            .collect();
        PolyMat::from_rows(self.table.clone(), picked)
    }

    /// Evaluates every entry modulo `p` at `point`.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Result<Vec<Vec<u64>>> {
        let mut out = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut row = Vec::with_capacity(self.ncols);
            for j in 0..self.ncols {
                row.push(self.at(i, j).eval_mod(point, p)?);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Evaluates every entry exactly at a rational point.
    pub fn eval_q(&self, point: &[BigRational]) -> Vec<Vec<BigRational>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.at(i, j).eval_q(point)).collect())
            .collect()
    }

    fn pivot_search(work: &[Vec<Polynomial>], k: usize) -> Option<(usize, usize)> {
        let n = work.len();
        let m = work[0].len();
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..n {
            for j in k..m {
                if work[i][j].is_zero() {
                    continue;
                }
                let t = work[i][j].num_terms();
                if best.map_or(true, |(_, _, bt)| t < bt) {
                    best = Some((i, j, t));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn bareiss_eliminate(&self) -> Result<(Vec<Vec<Polynomial>>, usize, bool)> {
        let mut work: Vec<Vec<Polynomial>> = (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.at(i, j).clone()).collect())
            .collect();
        if self.nrows == 0 || self.ncols == 0 {
            return Ok((work, 0, false));
        }
        let steps = self.nrows.min(self.ncols);
        let mut prev = Polynomial::int(self.table.clone(), 1);
        let mut negated = false;
        let mut rank = 0;
        for k in 0..steps {
            let Some((pi, pj)) = Self::pivot_search(&work, k) else {
                return Ok((work, rank, negated));
            };
            if pi != k {
                work.swap(k, pi);
                negated = !negated;
            }
            if pj != k {
                for row in work.iter_mut() {
                    row.swap(k, pj);
                }
                negated = !negated;
            }
            for i in k + 1..self.nrows {
                for j in k + 1..self.ncols {
                    let num = work[k][k]
                        .checked_mul(&work[i][j])?
                        .checked_sub(&work[i][k].checked_mul(&work[k][j])?)?;
                    let q = num
                        .exact_div(&prev, MonomialOrder::DegRevLex)?
                        .ok_or_else(|| {
                            Error::Internal("fraction-free elimination division failed".into())
                        })?;
                    work[i][j] = q;
                }
                work[i][k] = Polynomial::zero(self.table.clone());
            }
            prev = work[k][k].clone();
            rank += 1;
        }
        Ok((work, rank, negated))
    }

    /// Exact symbolic determinant by fraction-free elimination with full
    /// pivoting (pivot = fewest terms).
    pub fn bareiss_det(&self) -> Result<Polynomial> {
        if self.nrows != self.ncols {
            return Err(Error::Domain("determinant of a non-square matrix".into()));
        }
        if self.nrows == 0 {
            return Ok(Polynomial::int(self.table.clone(), 1));
        }
        let (work, rank, negated) = self.bareiss_eliminate()?;
        if rank < self.nrows {
            return Ok(Polynomial::zero(self.table.clone()));
        }
        let last = work[self.nrows - 1][self.nrows - 1].clone();
        Ok(if negated { last.neg() } else { last })
    }

    /// Exact rank over the fraction field by fraction-free elimination.
    pub fn bareiss_rank(&self) -> Result<usize> {
        Ok(self.bareiss_eliminate()?.1)
    }
}

/// Configuration for probabilistic certificates: a seed and an optional
/// explicit prime list (otherwise fresh 62-bit primes are drawn per trial).
#[derive(Debug, Clone)]
pub struct ProbeConfig {
    /// Randomness seed; fixes all trials.
    pub seed: u64,
    /// Explicit primes, cycled in order when present.
    pub primes: Option<Vec<u64>>,
}

impl ProbeConfig {
    /// New probe configuration from a seed.
    pub fn new(seed: u64) -> Self {
        ProbeConfig { seed, primes: None }
    }

    fn prime(&self, rng: &mut SplitMix64, trial: usize) -> u64 {
        match &self.primes {
            Some(list) if !list.is_empty() => list[trial % list.len()],
            _ => modp::random_prime_62(rng),
        }
    }
}

/// One evaluation trial of the rank protocol.
#[derive(Debug, Clone)]
pub struct RankTrial {
    /// Prime used.
    pub prime: u64,
    /// Rank of the evaluated matrix (a certified lower bound).
    pub rank: usize,
}

/// Outcome of the rank protocol.
#[derive(Debug, Clone)]
pub struct RankOutcome {
    /// Accepted rank value.
    pub rank: usize,
    /// Exact when a structural upper bound met the certified lower bound.
    pub certification: Certification,
    /// Trial log.
    pub trials: Vec<RankTrial>,
}

/// Two-trial rank protocol. Evaluated ranks never exceed the true rank, so
/// each trial is a certified lower bound; `structural_upper`, when it equals
/// the lower bound, upgrades the verdict to exact.
pub fn rank_protocol(
    mat: &PolyMat,
    structural_upper: Option<usize>,
    probe: &ProbeConfig,
    salt: u64,
) -> Result<RankOutcome> {
    let mut rng = SplitMix64::new(probe.seed ^ salt.wrapping_mul(0x9e3779b97f4a7c15));
    let mut trials: Vec<RankTrial> = Vec::new();
    let mut attempts = 0;
    while attempts < 16 {
        attempts += 1;
        let p = probe.prime(&mut rng, trials.len());
        let point: Vec<u64> = (0..mat.table().len()).map(|_| rng.below(p)).collect();
        let mut rows = match mat.eval_mod(&point, p) {
            Ok(rows) => rows,
            Err(Error::PrimeClash(_)) => continue,
            Err(e) => return Err(e),
        };
        let r = modp::rank_mod_p(&mut rows, p);
        trials.push(RankTrial { prime: p, rank: r });
        let low = trials.iter().map(|t| t.rank).max().unwrap_or(0);
        if structural_upper == Some(low) {
            return Ok(RankOutcome {
                rank: low,
                certification: Certification::Exact,
                trials,
            });
        }
        let agreeing = trials.iter().filter(|t| t.rank == low).count();
        if agreeing >= 2 {
            return Ok(RankOutcome {
                rank: low,
                certification: Certification::Probabilistic,
                trials,
            });
        }
    }
    Err(Error::Budget("rank protocol trials disagreed".into()))
}

/// Deterministic nonvanishing certificate: evaluates the matrix at random
/// small integer points over the rationals; a nonzero exact determinant
/// proves the symbolic determinant is nonzero. Returns the witness point.
pub fn det_nonzero_certificate(
    mat: &PolyMat,
    probe: &ProbeConfig,
    salt: u64,
) -> Result<Option<Vec<i64>>> {
    if mat.nrows() != mat.ncols() {
        return Err(Error::Domain("determinant of a non-square matrix".into()));
    }
    let mut rng = SplitMix64::new(probe.seed ^ salt.wrapping_mul(0xa24baed4963ee407));
    for _ in 0..8 {
        let point: Vec<i64> = (0..mat.table().len())
            .map(|_| rng.below(10007) as i64 + 1)
            .collect();
        let ratpoint: Vec<BigRational> = point
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        let vals = mat.eval_q(&ratpoint);
        // Row scaling by the denominator lcm preserves (non)vanishing.
        let ints: Vec<Vec<BigInt>> = vals
            .iter()
            .map(|row| {
                let mut den = BigInt::one();
                for c in row {
                    den = den.lcm(c.denom());
                }
                row.iter()
                    .map(|c| c.numer() * (&den / c.denom()))
                    .collect()
            })
            .collect();
        if !det_bigint(ints).is_zero() {
            return Ok(Some(point));
        }
    }
    Ok(None)
}

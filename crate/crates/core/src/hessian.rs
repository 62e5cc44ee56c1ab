//! Hessian matrices, rank certificates, specialization arguments, factor
//! multiplicities, birationality checks and the ladder reconstructions for
//! the polar and dual varieties.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use serde_json::json;

use crate::error::{Error, Result};
use crate::groebner::{self, GbCaps, Ideal};
use crate::linalg::{self, PolyMat, ProbeConfig, RankOutcome};
use crate::matrix::{Family, SymbolicMatrix};
use crate::modp::SplitMix64;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::report::{Certification, CheckRecord, Status};
use crate::syzygy;
use crate::vars::{VarId, VarName, VarTable};

/// Hessian matrix data with an optional rank certificate and determinant.
#[derive(Debug, Clone)]
pub struct HessianRecord {
    /// Symmetric matrix of second partials, one row per table variable.
    pub matrix: PolyMat,
    /// Rank over the fraction field, when computed.
    pub rank: Option<RankOutcome>,
    /// Exact determinant, when computed.
    pub det: Option<Polynomial>,
}

/// Tri-state birationality verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homaloidal {
    /// Polar map is birational (full polar dimension and maximal linear rank).
    Yes,
    /// Polar map is not dominant (deficient Hessian rank).
    No,
    /// Evidence incomplete.
    Undetermined,
}

/// Outcome of `homaloidal_check`.
#[derive(Debug, Clone)]
pub struct PolarProfile {
    /// Rank of the Jacobian of the gradient generators (= Hessian rank).
    pub polar_dim: usize,
    /// Certification of the rank value.
    pub polar_dim_certification: Certification,
    /// Linear rank of the gradient ideal.
    pub linear_rank: usize,
    /// Certification of the linear rank.
    pub linear_rank_certification: Certification,
    /// Verdict.
    pub homaloidal: Homaloidal,
    /// Defining equation of the polar image, when separately computed.
    pub image_equation: Option<Polynomial>,
}

/// Symmetric matrix of second partials over the table order.
pub fn hessian(f: &Polynomial) -> PolyMat {
    let n = f.table().len();
    let firsts: Vec<Polynomial> = (0..n).map(|v| f.derivative(v)).collect();
    let rows = (0..n)
        .map(|u| (0..n).map(|v| firsts[u].derivative(v)).collect())
        .collect();
    PolyMat::from_rows(f.table().clone(), rows)
}

/// Hessian record with the matrix alone; rank and determinant stay unset.
pub fn hessian_record(f: &Polynomial) -> HessianRecord {
    HessianRecord {
        matrix: hessian(f),
        rank: None,
        det: None,
    }
}

impl HessianRecord {
    /// Fills in the rank certificate, and the exact determinant at sizes
    /// where the symbolic elimination is desk-feasible.
    pub fn certify(mut self, f: &Polynomial, probe: &ProbeConfig) -> Result<Self> {
        self.rank = Some(hessian_rank(f, probe)?);
        if self.matrix.nrows() <= 8 {
            self.det = Some(self.matrix.bareiss_det()?);
        }
        Ok(self)
    }
}

/// Rank of the Hessian over the fraction field: exact fraction-free
/// elimination at desk size, otherwise the two-trial evaluation protocol
/// (the matrix size is a structural upper bound, so a full-rank verdict is
/// exact).
pub fn hessian_rank(f: &Polynomial, probe: &ProbeConfig) -> Result<RankOutcome> {
    let h = hessian(f);
    let n = h.nrows();
    if n <= 8 {
        let exact = h.bareiss_rank()?;
        return Ok(RankOutcome {
            rank: exact,
            certification: Certification::Exact,
            trials: Vec::new(),
        });
    }
    linalg::rank_protocol(&h, Some(n), probe, 0x4e55)
}

fn kill_map(
    table: &Arc<VarTable>,
    keep: &[VarId],
) -> FxHashMap<VarId, Polynomial> {
    let mut images = FxHashMap::default();
    for v in 0..table.len() {
        if !keep.contains(&v) {
            images.insert(v, Polynomial::zero(table.clone()));
        }
    }
    images
}

fn specialized_matrix(mat: &PolyMat, images: &FxHashMap<VarId, Polynomial>) -> Result<PolyMat> {
    let rows = (0..mat.nrows())
        .map(|i| {
            (0..mat.ncols())
                .map(|j| mat.at(i, j).substitute(images))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMat::from_rows(mat.table().clone(), rows))
}

fn one_nonzero_per_row_and_column(m: &PolyMat) -> bool {
    let n = m.nrows();
    if n != m.ncols() {
        return false;
    }
    let mut col_hits = vec![0usize; n];
    for i in 0..n {
        let mut row_hits = 0;
        for j in 0..n {
            if !m.at(i, j).is_zero() {
                row_hits += 1;
                col_hits[j] += 1;
            }
        }
        if row_hits != 1 {
            return false;
        }
    }
    col_hits.iter().all(|&c| c == 1)
}

fn block_check_record(
    tag: &str,
    anchor: &str,
    vset: &[VarId],
    rest: &[VarId],
    specialized: &PolyMat,
    reference_form: &Polynomial,
) -> Result<CheckRecord> {
    let n_block = specialized.submatrix(vset, rest);
    let p_block = specialized.submatrix(rest, vset);
    let m0 = specialized.submatrix(vset, vset);
    let m1 = specialized.submatrix(rest, rest);
    let mut failures = Vec::new();
    if !n_block.is_zero() || !p_block.is_zero() {
        failures.push(json!("off-diagonal specialization blocks are nonzero"));
    }
    // The upper block must be the Hessian of the specialized determinant.
    let h_ref = hessian(reference_form).submatrix(vset, vset);
    if !m0.sub(&h_ref)?.is_zero() {
        failures.push(json!("upper block differs from the reference Hessian"));
    }
    if !one_nonzero_per_row_and_column(&m1) {
        failures.push(json!("lower block is not a permutation-monomial matrix"));
    }
    let det_m0 = m0.bareiss_det()?;
    let det_m1 = m1.bareiss_det()?;
    if det_m0.is_zero() || det_m1.is_zero() {
        failures.push(json!("a diagonal block determinant vanishes"));
    }
    let status = if failures.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CheckRecord::new(tag, anchor, status, Certification::Exact).with_witness(json!({
        "block_rank_certified": vset.len() + rest.len(),
        "det_upper_block": det_m0.to_string(),
        "det_lower_block_terms": det_m1.num_terms(),
        "failures": failures,
    })))
}

/// Diagonal specialization of the cloned family: kills every variable off
/// the main diagonal, verifies the block decomposition of the specialized
/// Hessian and the nonvanishing of both diagonal blocks, certifying a
/// nonzero Hessian determinant.
pub fn diag_specialization_check(mat: &SymbolicMatrix) -> Result<CheckRecord> {
    let m = mat.m();
    if !matches!(mat.spec().family, Family::Cloned) || m < 3 {
        return Err(Error::Spec("diagonal specialization needs a cloned matrix, m >= 3".into()));
    }
    let table = mat.table().clone();
    let f = mat.determinant();
    let h = hessian(&f);
    let diag: Vec<VarId> = (1..=m - 1)
        .map(|i| table.require(VarName::X(i as u8, i as u8)))
        .collect::<Result<Vec<_>>>()?;
    let rest: Vec<VarId> = (0..table.len()).filter(|v| !diag.contains(v)).collect();
    let images = kill_map(&table, &diag);
    let specialized = specialized_matrix(&h, &images)?;
    // Reference form: (prod of x_{i,i}) * x_{m-1,m-1}^2 = the specialized
    // determinant itself.
    let g = f.substitute(&images)?;
    block_check_record(
        "diag_specialization",
        "cloning_generic.ii",
        &diag,
        &rest,
        &specialized,
        &g,
    )
}

/// Anti-diagonal specialization of the zeros family on the variable window
/// `r+2 <= i+j <= 2m-r`, certifying Hessian rank at least `m^2 - r(r+1)`.
pub fn antidiag_specialization_check(mat: &SymbolicMatrix) -> Result<CheckRecord> {
    let m = mat.m();
    let r = match mat.spec().family {
        Family::Zeros(r) => r,
        _ => return Err(Error::Spec("anti-diagonal specialization needs a zeros matrix".into())),
    };
    let table = mat.table().clone();
    let f = mat.determinant();
    let h = hessian(&f);
    // Principal submatrix on the window X.
    let window: Vec<VarId> = (0..table.len())
        .filter(|&v| {
            let VarName::X(i, j) = table.name(v) else { return false };
            let s = i as usize + j as usize;
            s >= r + 2 && s <= 2 * m - r
        })
        .collect();
    if window.len() != m * m - r * (r + 1) {
        return Err(Error::Internal("window size differs from m^2 - r(r+1)".into()));
    }
    let sub = h.submatrix(&window, &window);
    let anti: Vec<VarId> = (1..=m)
        .map(|i| table.require(VarName::X(i as u8, (m + 1 - i) as u8)))
        .collect::<Result<Vec<_>>>()?;
    let images = kill_map(&table, &anti);
    let specialized = specialized_matrix(&sub, &images)?;
    // Positions within the window, anti-diagonal first.
    let vset: Vec<usize> = anti
        .iter()
        .map(|v| window.iter().position(|w| w == v).expect("anti-diagonal inside window"))
        .collect();
    let rest: Vec<usize> = (0..window.len()).filter(|p| !vset.contains(p)).collect();
    let g = f.substitute(&images)?;
    // Rebuild a record against the window-sized matrix: the reference
    // Hessian must be restricted to the same window positions.
    let n_block = specialized.submatrix(&vset, &rest);
    let p_block = specialized.submatrix(&rest, &vset);
    let m0 = specialized.submatrix(&vset, &vset);
    let m1 = specialized.submatrix(&rest, &rest);
    let h_ref = hessian(&g).submatrix(&anti.to_vec(), &anti.to_vec());
    let mut failures = Vec::new();
    if !n_block.is_zero() || !p_block.is_zero() {
        failures.push(json!("off-diagonal specialization blocks are nonzero"));
    }
    if !m0.sub(&h_ref)?.is_zero() {
        failures.push(json!("upper block differs from the reference Hessian"));
    }
    if !one_nonzero_per_row_and_column(&m1) {
        failures.push(json!("lower block is not a permutation-monomial matrix"));
    }
    let det_m0 = m0.bareiss_det()?;
    let det_m1 = m1.bareiss_det()?;
    if det_m0.is_zero() || det_m1.is_zero() {
        failures.push(json!("a diagonal block determinant vanishes"));
    }
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    Ok(
        CheckRecord::new("antidiag_specialization", "polar_zeros.c", status, Certification::Exact)
            .with_witness(json!({
                "rank_lower_bound_certified": window.len(),
                "det_upper_block": det_m0.to_string(),
                "failures": failures,
            })),
    )
}

/// Largest k with `f^k` dividing `h` exactly; 0 when f does not divide h.
pub fn factor_multiplicity(h: &Polynomial, f: &Polynomial) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::Domain("multiplicity with respect to zero".into()));
    }
    if f.degree() == Some(0) {
        return Err(Error::Domain("multiplicity with respect to a unit".into()));
    }
    let mut k = 0;
    let mut cur = h.clone();
    while let Some(q) = cur.exact_div(f, MonomialOrder::DegRevLex)? {
        if cur.is_zero() {
            break;
        }
        k += 1;
        cur = q;
    }
    Ok(k)
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials for random-line restrictions.

#[derive(Debug, Clone, PartialEq)]
struct UniPoly {
    coeffs: Vec<BigRational>, // ascending, no trailing zeros
}

impl UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    fn one() -> Self {
        UniPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly { coeffs: out }.normalize()
    }

    fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly { coeffs: out }.normalize()
    }

    fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly { coeffs: out }.normalize()
    }

    /// Exact quotient when the division leaves no remainder.
    fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let dd = d.degree().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len()];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return None;
            }
            let c = &rem.coeffs[rd] / &d.coeffs[dd];
            quo[rd - dd] = c.clone();
            let mut shifted = vec![BigRational::zero(); rd - dd];
            shifted.extend(d.coeffs.iter().map(|k| k * &c));
            rem = rem.sub(&UniPoly { coeffs: shifted });
        }
        Some(UniPoly { coeffs: quo }.normalize())
    }
}

fn restrict_to_line(p: &Polynomial, dir: &[BigRational], base: &[BigRational]) -> UniPoly {
    let n = p.table().len();
    debug_assert_eq!(dir.len(), n);
    let mut acc = UniPoly::zero();
    for (mono, c) in p.terms() {
        let mut term = UniPoly {
            coeffs: vec![c.clone()],
        };
        for v in 0..n {
            let e = mono.exp(v);
            if e == 0 {
                continue;
            }
            let lin = UniPoly {
                coeffs: vec![base[v].clone(), dir[v].clone()],
            }
            .normalize();
            for _ in 0..e {
                term = term.mul(&lin);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

fn uni_bareiss_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = a.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut prev = UniPoly::one();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return UniPoly::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("fraction-free step divides");
            }
            a[i][k] = UniPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = UniPoly::zero().sub(&det);
    }
    det
}

/// Multiplicity of det as a factor of its Hessian determinant, measured by
/// pulling both back along a random rational line and dividing repeatedly.
/// Probabilistic; the line is part of the witness.
pub fn multiplicity_by_line(
    mat: &SymbolicMatrix,
    probe: &ProbeConfig,
) -> Result<(u32, serde_json::Value)> {
    let f = mat.determinant();
    let h = hessian(&f);
    let n = f.table().len();
    let mut rng = SplitMix64::new(probe.seed ^ 0x6c696e65);
    for _ in 0..6 {
        let dir: Vec<BigRational> = (0..n)
            .map(|_| BigRational::from_integer(BigInt::from(rng.below(997) as i64 + 1)))
            .collect();
        let base: Vec<BigRational> = (0..n)
            .map(|_| BigRational::from_integer(BigInt::from(rng.below(997) as i64 + 1)))
            .collect();
        let f_line = restrict_to_line(&f, &dir, &base);
        if f_line.degree() != Some(mat.m()) {
            continue;
        }
        let rows: Vec<Vec<UniPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| restrict_to_line(h.at(i, j), &dir, &base))
                    .collect()
            })
            .collect();
        let h_line = uni_bareiss_det(rows);
        if h_line.is_zero() {
            continue;
        }
        let mut k = 0u32;
        let mut cur = h_line;
        while let Some(q) = cur.div_exact(&f_line) {
            k += 1;
            cur = q;
        }
        let witness = json!({
            "line_direction": dir.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "line_base": base.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        });
        return Ok((k, witness));
    }
    Err(Error::Budget("no usable random line found".into()))
}

/// Homaloidal verdict from the two rank computations: yes iff the Hessian
/// rank is full and the linear rank is maximal; no iff the Hessian rank is
/// deficient; undetermined otherwise. A yes is only emitted when both
/// certificates are exact or passed the two-trial protocol.
pub fn homaloidal_check(mat: &SymbolicMatrix, probe: &ProbeConfig) -> Result<PolarProfile> {
    let f = mat.determinant();
    let n = f.table().len();
    let hr = hessian_rank(&f, probe)?;
    let grad = mat.gradient_generators()?;
    let space = syzygy::linear_syzygies(&grad)?;
    let lr = syzygy::linear_rank(&space, probe)?;
    let full = hr.rank == n;
    let max_linear = lr.rank + 1 == grad.len();
    let verdict = if full && max_linear {
        Homaloidal::Yes
    } else if !full {
        Homaloidal::No
    } else {
        Homaloidal::Undetermined
    };
    Ok(PolarProfile {
        polar_dim: hr.rank,
        polar_dim_certification: hr.certification,
        linear_rank: lr.rank,
        linear_rank_certification: lr.certification,
        homaloidal: verdict,
        image_equation: None,
    })
}

fn y_table_full(m: usize) -> Arc<VarTable> {
    let mut names = Vec::with_capacity(m * m);
    for i in 1..=m {
        for j in 1..=m {
            names.push(VarName::Y(i as u8, j as u8));
        }
    }
    Arc::new(VarTable::new(names).expect("distinct"))
}

/// Cofactor of the `(k, l)` entry of the generic matrix in `y` variables,
/// realized over `table` (which must contain all `y_i_j`).
pub fn generic_y_cofactor(table: &Arc<VarTable>, m: usize, k: usize, l: usize) -> Result<Polynomial> {
    let rows: Vec<usize> = (1..=m).filter(|&i| i != k).collect();
    let cols: Vec<usize> = (1..=m).filter(|&j| j != l).collect();
    let entries: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| {
                    table
                        .require(VarName::Y(i as u8, j as u8))
                        .map(|v| Polynomial::variable(table.clone(), v))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let det = PolyMat::from_rows(table.clone(), entries).bareiss_det()?;
    Ok(if (k + l) % 2 == 0 { det } else { det.neg() })
}

/// Defining equation of the image of the map given by the m^2 cofactors,
/// computed by eliminating the source variables from the graph ideal
/// `(y_kl - adj(M)_kl)`. For the cloned family the result must match the
/// difference of the two corner cofactors of the generic target matrix up to
/// a scalar; that comparison is the caller's job via
/// [`image_equation_reference`].
pub fn minors_image_equation(mat: &SymbolicMatrix, caps: &GbCaps) -> Result<Polynomial> {
    let m = mat.m();
    let xs = mat.table();
    let mut names: Vec<VarName> = xs.names().to_vec();
    for i in 1..=m {
        for j in 1..=m {
            names.push(VarName::Y(i as u8, j as u8));
        }
    }
    let joint = Arc::new(VarTable::new(names)?);
    let adj = mat.adjugate();
    let mut gens = Vec::with_capacity(m * m);
    for i in 1..=m {
        for j in 1..=m {
            let y = Polynomial::variable(joint.clone(), joint.require(VarName::Y(i as u8, j as u8))?);
            let delta = adj.at(i - 1, j - 1).rename_into(joint.clone())?;
            gens.push(y.checked_sub(&delta)?);
        }
    }
    let graph = Ideal::new(joint.clone(), gens, MonomialOrder::DegRevLex);
    let kill: Vec<VarId> = (0..xs.len()).collect();
    let kernel = groebner::eliminate(&graph, &kill, caps)?;
    match kernel.gens.len() {
        0 => Err(Error::Domain(
            "kernel is zero: the minors map is dominant onto the target, no hypersurface equation".into(),
        )),
        1 => Ok(kernel.gens[0].clone()),
        k => Err(Error::Internal(format!(
            "elimination ideal is not principal ({k} generators)"
        ))),
    }
}

/// The expected image equation for the cloned family: the difference of the
/// `(m,m)` and `(m-1,m-1)` cofactors of the generic y-matrix, over the same
/// joint table the elimination used.
pub fn image_equation_reference(mat: &SymbolicMatrix) -> Result<Polynomial> {
    let m = mat.m();
    let xs = mat.table();
    let mut names: Vec<VarName> = xs.names().to_vec();
    for i in 1..=m {
        for j in 1..=m {
            names.push(VarName::Y(i as u8, j as u8));
        }
    }
    let joint = Arc::new(VarTable::new(names)?);
    let dmm = generic_y_cofactor(&joint, m, m, m)?;
    let dm1 = generic_y_cofactor(&joint, m, m - 1, m - 1)?;
    dmm.checked_sub(&dm1)
}

/// True when `a` equals `b` up to a nonzero scalar.
pub fn equal_up_to_scalar(a: &Polynomial, b: &Polynomial) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (ma, ca) = a.leading_term(MonomialOrder::DegRevLex).expect("nonzero");
    let (mb, cb) = b.leading_term(MonomialOrder::DegRevLex).expect("nonzero");
    if ma != mb {
        return false;
    }
    let scale = ca / cb;
    a.checked_sub(&b.scale(&scale)).map(|d| d.is_zero()).unwrap_or(false)
}

/// Direct substitution side of the image equation: evaluates the difference
/// of the corner cofactors of the generic target matrix at the cofactors of
/// `mat`; the result must vanish identically.
pub fn image_equation_substitution_check(mat: &SymbolicMatrix) -> Result<bool> {
    let m = mat.m();
    let adj = mat.adjugate();
    // D_{m,m}(adj) - D_{m-1,m-1}(adj): cofactors of the adjugate itself.
    let idx: Vec<usize> = (0..m).collect();
    let minor_of = |skip: usize| -> Result<Polynomial> {
        let keep: Vec<usize> = idx.iter().copied().filter(|&t| t != skip).collect();
        adj.submatrix(&keep, &keep).bareiss_det()
    };
    let dmm = minor_of(m - 1)?;
    let dm1 = minor_of(m - 2)?;
    Ok(dmm.checked_sub(&dm1)?.is_zero())
}

/// Gradient generator of the cell `(i, j)`; for the cloned matrix the shared
/// cell resolves to the shared variable's generator.
pub fn partial_at(mat: &SymbolicMatrix, grad: &[Polynomial], i: usize, j: usize) -> Result<Polynomial> {
    let v = mat
        .cell_var(i, j)
        .ok_or_else(|| Error::Domain(format!("cell ({i},{j}) is a structural zero")))?;
    Ok(grad[v].clone())
}

/// Ladder row layout of the dual-variety matrix, as actual `(i, j)` labels
/// per row position.
pub fn dual_ladder_rows(mat: &SymbolicMatrix) -> Vec<Vec<(usize, usize)>> {
    let m = mat.m();
    match mat.spec().family {
        Family::Cloned => {
            let mut rows = Vec::new();
            for i in 1..=m - 2 {
                let mut row: Vec<(usize, usize)> = (1..=m - 2).map(|j| (i, j)).collect();
                row.push((i, m));
                row.push((i, m - 1));
                rows.push(row);
            }
            let mut row: Vec<(usize, usize)> = (1..=m - 2).map(|j| (m - 1, j)).collect();
            row.push((m - 1, m));
            rows.push(row);
            rows.push((1..=m - 2).map(|j| (m, j)).collect());
            rows
        }
        Family::Zeros(r) => (1..=m)
            .map(|i| (1..=(2 * m - r).saturating_sub(i).min(m)).map(|j| (i, j)).collect())
            .collect(),
        _ => Vec::new(),
    }
}

/// Checks that every 2-minor of the dual ladder, evaluated at the partial
/// derivatives, is divisible by f; for the cloned family the two extra
/// quadrics of the dual-variety ideal are checked too.
pub fn dual_ladder_check(mat: &SymbolicMatrix) -> Result<CheckRecord> {
    let f = mat.determinant();
    let grad = mat.gradient_generators()?;
    let rows = dual_ladder_rows(mat);
    if rows.is_empty() {
        return Err(Error::Spec("dual ladder needs a cloned or zeros matrix".into()));
    }
    let mut minors = 0usize;
    let mut failures = Vec::new();
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            let width = rows[a].len().min(rows[b].len());
            for c in 0..width {
                for d in c + 1..width {
                    let (ia, ja) = rows[a][c];
                    let (ib, jb) = rows[b][d];
                    let (ia2, ja2) = rows[a][d];
                    let (ib2, jb2) = rows[b][c];
                    let val = partial_at(mat, &grad, ia, ja)?
                        .checked_mul(&partial_at(mat, &grad, ib, jb)?)?
                        .checked_sub(
                            &partial_at(mat, &grad, ia2, ja2)?
                                .checked_mul(&partial_at(mat, &grad, ib2, jb2)?)?,
                        )?;
                    minors += 1;
                    if val.exact_div(&f, MonomialOrder::DegRevLex)?.is_none() {
                        failures.push(json!({ "rows": [a + 1, b + 1], "cols": [c + 1, d + 1] }));
                    }
                }
            }
        }
    }
    let m = mat.m();
    let mut quadrics_checked = false;
    if matches!(mat.spec().family, Family::Cloned) {
        quadrics_checked = true;
        let p = |i: usize, j: usize| partial_at(mat, &grad, i, j);
        let g = p(1, 1)?
            .checked_mul(&p(m, m - 1)?)?
            .checked_sub(&p(1, m - 1)?.checked_mul(&p(m, 1)?)?)?;
        let h = p(1, 1)?
            .checked_mul(&p(m - 1, m - 1)?)?
            .checked_sub(&p(m - 1, 1)?.checked_mul(&p(1, m - 1)?)?)?
            .checked_sub(&p(m, 1)?.checked_mul(&p(1, m)?)?)?;
        for (name, q) in [("g", g), ("h", h)] {
            if q.exact_div(&f, MonomialOrder::DegRevLex)?.is_none() {
                failures.push(json!({ "quadric": name }));
            }
        }
    }
    let anchor = match mat.spec().family {
        Family::Cloned => "dim_dual.claim1",
        _ => "dual_zeros.a",
    };
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    Ok(CheckRecord::new("dual_ladder_vanish", anchor, status, Certification::Exact)
        .with_witness(json!({
            "minors_checked": minors,
            "quadrics_checked": quadrics_checked,
            "failures": failures,
        })))
}

/// The dual-ladder 2-minor ideal of the zeros family in its own y-table;
/// its codimension is checked against `(m-1)^2 - binom(r+1, 2)`.
pub fn dual_ladder_codim(m: usize, r: usize, caps: &GbCaps) -> Result<usize> {
    let mut names = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            if i + j <= 2 * m - r {
                names.push(VarName::Y(i as u8, j as u8));
            }
        }
    }
    let table = Arc::new(VarTable::new(names)?);
    let y = |i: usize, j: usize| -> Result<Polynomial> {
        Ok(Polynomial::variable(
            table.clone(),
            table.require(VarName::Y(i as u8, j as u8))?,
        ))
    };
    let mut gens = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            let wb = (2 * m - r).saturating_sub(b).min(m);
            for c in 1..=wb {
                for d in c + 1..=wb {
                    gens.push(
                        y(a, c)?
                            .checked_mul(&y(b, d)?)?
                            .checked_sub(&y(a, d)?.checked_mul(&y(b, c)?)?)?,
                    );
                }
            }
        }
    }
    let ideal = Ideal::new(table, gens, MonomialOrder::DegRevLex);
    let gb = groebner::buchberger(&ideal, caps)?;
    groebner::codimension(&gb)
}

/// The polar-variety ladder of the zeros family: all maximal minors in y
/// variables over rows `i_1 < .. < i_{m-r} <= m-1` and columns
/// `1 .. m - i_{m-r} + (m-r-1)`. Returns the y-table and the generators.
pub fn polar_ladder_minors(m: usize, r: usize) -> Result<(Arc<VarTable>, Vec<Polynomial>)> {
    let k = m - r;
    let mut names = Vec::new();
    for i in 1..=m - 1 {
        for j in 1..=m {
            if i + j < 2 * m - r {
                names.push(VarName::Y(i as u8, j as u8));
            }
        }
    }
    let table = Arc::new(VarTable::new(names)?);
    let mut gens = Vec::new();
    let row_sets = choose(&(1..=m - 1).collect::<Vec<_>>(), k);
    for rows in row_sets {
        let top = *rows.last().expect("nonempty");
        let width = m - top + (k - 1);
        for cols in choose(&(1..=width).collect::<Vec<_>>(), k) {
            let entries: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| {
                            table
                                .require(VarName::Y(i as u8, j as u8))
                                .map(|v| Polynomial::variable(table.clone(), v))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push(PolyMat::from_rows(table.clone(), entries).bareiss_det()?);
        }
    }
    Ok((table, gens))
}

/// Verifies that every polar-ladder generator vanishes identically on the
/// gradient generators (exact kernel membership of the polar map).
///
/// The certificate replays the rank argument: for each row window the
/// substituted ladder block G satisfies G * C^t = 0 against the full-rank
/// variable block C cut from the lower rows of the matrix, which forces
/// every maximal minor of G to vanish. At m <= 4 the minors are additionally
/// expanded outright as a cross-check.
pub fn polar_ladder_check(mat: &SymbolicMatrix, probe: &ProbeConfig) -> Result<CheckRecord> {
    let m = mat.m();
    let r = match mat.spec().family {
        Family::Zeros(r) => r,
        _ => return Err(Error::Spec("polar ladder needs a zeros matrix".into())),
    };
    let grad = mat.gradient_generators()?;
    let k = m - r;
    let mut failures = Vec::new();
    let mut windows = 0usize;
    let mut minors_expanded = 0usize;
    let row_sets = choose(&(1..=m - 1).collect::<Vec<_>>(), k);
    for rows in row_sets {
        let top = *rows.last().expect("nonempty");
        let width = m - top + (k - 1);
        windows += 1;
        // G[a][b] = partial at (rows[a], b), b = 1..width.
        let g_entries: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|&i| {
                (1..=width)
                    .map(|b| partial_at(mat, &grad, i, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let g_block = PolyMat::from_rows(mat.table().clone(), g_entries);
        // C[c][b] = x_{c,b} for c = top+1..m; the cofactor identity gives
        // G * C^t = 0 once the truncation kills the remaining columns.
        let c_entries: Vec<Vec<Polynomial>> = (top + 1..=m)
            .map(|c| (1..=width).map(|b| mat.entry(c, b)).collect())
            .collect();
        let c_block = PolyMat::from_rows(mat.table().clone(), c_entries);
        if !g_block.mul(&c_block.transpose())?.is_zero() {
            failures.push(json!({ "rows": rows, "identity": "G * C^t != 0" }));
            continue;
        }
        let c_rank = linalg::rank_protocol(&c_block, Some(m - top), probe, 0x1adc ^ top as u64)?;
        if c_rank.rank != m - top || c_rank.certification != Certification::Exact {
            failures.push(json!({ "rows": rows, "identity": "variable block not of full row rank" }));
            continue;
        }
        if m <= 4 {
            for cols in choose(&(1..=width).collect::<Vec<_>>(), k) {
                let picked: Vec<usize> = cols.iter().map(|&c| c - 1).collect();
                let all: Vec<usize> = (0..k).collect();
                let det = g_block.submatrix(&all, &picked).bareiss_det()?;
                minors_expanded += 1;
                if !det.is_zero() {
                    failures.push(json!({ "rows": rows, "cols": cols }));
                }
            }
        }
    }
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    Ok(CheckRecord::new("ladder_polar_vanish", "polar_zeros.c", status, Certification::Exact)
        .with_witness(json!({
            "row_windows": windows,
            "minors_expanded": minors_expanded,
            "failures": failures,
        })))
}

/// Codimension of the polar ladder ideal in its own y-ring.
pub fn polar_ladder_codim(m: usize, r: usize, caps: &GbCaps) -> Result<usize> {
    let (table, gens) = polar_ladder_minors(m, r)?;
    let ideal = Ideal::new(table, gens, MonomialOrder::DegRevLex);
    let gb = groebner::buchberger(&ideal, caps)?;
    groebner::codimension(&gb)
}

fn choose(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The full y-table of the target space (exposed for report serialization).
pub fn target_table(m: usize) -> Arc<VarTable> {
    y_table_full(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{Cell, MatrixSpec};

    fn probe() -> ProbeConfig {
        ProbeConfig::new(17)
    }

    #[test]
    fn hessian_small_cases() {
        // f = x^2 in one variable: [2]; f = xy: [[0,1],[1,0]].
        let t1 = Arc::new(VarTable::new(vec![VarName::X(1, 1)]).unwrap());
        let x = Polynomial::variable(t1.clone(), 0);
        let h = hessian(&x.pow(2));
        assert_eq!(*h.at(0, 0), Polynomial::int(t1.clone(), 2));

        let t2 = Arc::new(VarTable::new(vec![VarName::X(1, 1), VarName::X(1, 2)]).unwrap());
        let x = Polynomial::variable(t2.clone(), 0);
        let y = Polynomial::variable(t2.clone(), 1);
        let h = hessian(&(&x * &y));
        assert!(h.at(0, 0).is_zero());
        assert_eq!(*h.at(0, 1), Polynomial::int(t2.clone(), 1));
        assert!(h.is_symmetric());
    }

    #[test]
    fn cloned_m3_hessian_is_8x8_linear_and_full_rank() {
        let mat = MatrixSpec::cloned(3).build().unwrap();
        let f = mat.determinant();
        let h = hessian(&f);
        assert_eq!(h.nrows(), 8);
        assert!(h.is_symmetric());
        for i in 0..8 {
            for j in 0..8 {
                let e = h.at(i, j);
                assert!(e.is_zero() || e.homogeneous_degree() == Some(1));
            }
        }
        let rank = hessian_rank(&f, &probe()).unwrap();
        assert_eq!(rank.rank, 8);
        assert_eq!(rank.certification, Certification::Exact);
    }

    #[test]
    fn zeros_m3_r1_hessian_rank_deficient() {
        let mat = MatrixSpec::zeros(3, 1).build().unwrap();
        let f = mat.determinant();
        let rank = hessian_rank(&f, &probe()).unwrap();
        assert_eq!(rank.rank, 7); // m^2 - r(r+1)
        assert_eq!(rank.certification, Certification::Exact);
        // The certified record carries the identically vanishing determinant.
        let record = hessian_record(&f).certify(&f, &probe()).unwrap();
        assert!(record.matrix.is_symmetric());
        assert_eq!(record.rank.unwrap().rank, 7);
        assert!(record.det.unwrap().is_zero());
    }

    #[test]
    fn hessian_equals_jacobian_of_gradient() {
        let mat = MatrixSpec::zeros(3, 1).build().unwrap();
        let f = mat.determinant();
        let grad = mat.gradient_generators().unwrap();
        let h = hessian(&f);
        let jac = PolyMat::jacobian(mat.table().clone(), &grad);
        assert!(h.sub(&jac).unwrap().is_zero());
    }

    #[test]
    fn diag_specialization_m3_and_m4() {
        for m in [3, 4] {
            let mat = MatrixSpec::cloned(m).build().unwrap();
            let rec = diag_specialization_check(&mat).unwrap();
            assert_eq!(rec.status, Status::Pass, "m={m}");
        }
    }

    #[test]
    fn all_zero_specialization_has_rank_zero() {
        let mat = MatrixSpec::cloned(3).build().unwrap();
        let f = mat.determinant();
        let h = hessian(&f);
        let images = kill_map(mat.table(), &[]);
        let dead = specialized_matrix(&h, &images).unwrap();
        assert!(dead.is_zero());
    }

    #[test]
    fn antidiag_specialization_small_grid() {
        for (m, r) in [(3, 1), (4, 1), (4, 2)] {
            let mat = MatrixSpec::zeros(m, r).build().unwrap();
            let rec = antidiag_specialization_check(&mat).unwrap();
            assert_eq!(rec.status, Status::Pass, "m={m} r={r}");
        }
    }

    #[test]
    fn factor_multiplicity_constructed() {
        let t = Arc::new(VarTable::new(vec![VarName::X(1, 1), VarName::X(1, 2)]).unwrap());
        let x = Polynomial::variable(t.clone(), 0);
        let y = Polynomial::variable(t.clone(), 1);
        let f = &x + &y;
        let g = &x - &y;
        let h = &f.pow(2) * &g;
        assert_eq!(factor_multiplicity(&h, &f).unwrap(), 2);
        assert_eq!(factor_multiplicity(&g, &f).unwrap(), 0);
        assert!(factor_multiplicity(&h, &Polynomial::zero(t.clone())).is_err());
    }

    #[test]
    fn cloned_m3_multiplicity_exact() {
        let mat = MatrixSpec::cloned(3).build().unwrap();
        let f = mat.determinant();
        let h = hessian(&f).bareiss_det().unwrap();
        assert!(!h.is_zero());
        let k = factor_multiplicity(&h, &f).unwrap();
        assert_eq!(k, 2); // m(m-2) - 1 at m = 3
        // Residual is the lower-right 2x2 minor up to a scalar.
        let f2 = f.pow(2);
        let residual = h.exact_div(&f2, MonomialOrder::DegRevLex).unwrap().unwrap();
        let minor = mat
            .entry(2, 2)
            .checked_mul(&mat.entry(3, 3))
            .unwrap()
            .checked_sub(&mat.entry(2, 3).checked_mul(&mat.entry(3, 2)).unwrap())
            .unwrap();
        assert!(equal_up_to_scalar(&residual, &minor));
        // Bracketing: f^3 does not divide h.
        let f3 = f.pow(3);
        assert!(h.exact_div(&f3, MonomialOrder::DegRevLex).unwrap().is_none());
    }

    #[test]
    fn homaloidal_verdicts() {
        let cloned = MatrixSpec::cloned(3).build().unwrap();
        let profile = homaloidal_check(&cloned, &probe()).unwrap();
        assert_eq!(profile.homaloidal, Homaloidal::Yes);
        assert_eq!(profile.polar_dim, 8);
        assert_eq!(profile.linear_rank, 7);

        let zeros = MatrixSpec::zeros(3, 1).build().unwrap();
        let profile = homaloidal_check(&zeros, &probe()).unwrap();
        assert_eq!(profile.homaloidal, Homaloidal::No);
        assert_eq!(profile.polar_dim, 7);
    }

    #[test]
    fn homaloidal_check_on_custom_diag_square() {
        // det = x^2 y realized as diag(x, x, y); the polar map is dominant
        // with maximal linear rank, so the criterion reports yes.
        let grid = vec![
            vec![Cell::Var(1, 1), Cell::Zero, Cell::Zero],
            vec![Cell::Zero, Cell::Var(1, 1), Cell::Zero],
            vec![Cell::Zero, Cell::Zero, Cell::Var(2, 2)],
        ];
        let mat = MatrixSpec::custom(grid).build().unwrap();
        assert_eq!(mat.table().len(), 2);
        let profile = homaloidal_check(&mat, &probe()).unwrap();
        assert_eq!(profile.polar_dim, 2);
        assert_eq!(profile.linear_rank, 1);
        assert_eq!(profile.homaloidal, Homaloidal::Yes);
    }

    #[test]
    fn image_equation_substitution_m3_m4() {
        for m in [3, 4] {
            let mat = MatrixSpec::cloned(m).build().unwrap();
            assert!(image_equation_substitution_check(&mat).unwrap(), "m={m}");
        }
    }

    #[test]
    fn dual_ladder_cloned_m3() {
        let mat = MatrixSpec::cloned(3).build().unwrap();
        let rec = dual_ladder_check(&mat).unwrap();
        assert_eq!(rec.status, Status::Pass);
    }

    #[test]
    fn dual_ladder_zeros_small() {
        for (m, r) in [(3, 1), (4, 1)] {
            let mat = MatrixSpec::zeros(m, r).build().unwrap();
            let rec = dual_ladder_check(&mat).unwrap();
            assert_eq!(rec.status, Status::Pass, "m={m} r={r}");
        }
    }

    #[test]
    fn perturbed_minor_not_divisible() {
        // A 2-minor of the generic adjugate with one sign flipped is not
        // divisible by f.
        let mat = MatrixSpec::generic(3).build().unwrap();
        let f = mat.determinant();
        let grad = mat.gradient_generators().unwrap();
        let val = partial_at(&mat, &grad, 1, 1)
            .unwrap()
            .checked_mul(&partial_at(&mat, &grad, 2, 2).unwrap())
            .unwrap()
            .checked_add(&partial_at(&mat, &grad, 1, 2)
                .unwrap()
                .checked_mul(&partial_at(&mat, &grad, 2, 1).unwrap())
                .unwrap())
            .unwrap();
        assert!(val.exact_div(&f, MonomialOrder::DegRevLex).unwrap().is_none());
    }

    #[test]
    fn polar_ladder_vanishes_small() {
        for (m, r) in [(3, 1), (4, 1), (4, 2), (5, 2)] {
            let mat = MatrixSpec::zeros(m, r).build().unwrap();
            let rec = polar_ladder_check(&mat, &probe()).unwrap();
            assert_eq!(rec.status, Status::Pass, "m={m} r={r}");
        }
    }

    #[test]
    fn polar_ladder_codims() {
        let caps = GbCaps::default();
        assert_eq!(polar_ladder_codim(3, 1, &caps).unwrap(), 1);
        assert_eq!(polar_ladder_codim(4, 1, &caps).unwrap(), 1);
        assert_eq!(polar_ladder_codim(4, 2, &caps).unwrap(), 3);
    }

    #[test]
    fn line_restriction_multiplicity_m3_agrees_with_exact() {
        let mat = MatrixSpec::cloned(3).build().unwrap();
        let (k, _) = multiplicity_by_line(&mat, &probe()).unwrap();
        assert_eq!(k, 2);
    }
}

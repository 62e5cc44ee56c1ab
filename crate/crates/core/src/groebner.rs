//! Buchberger engine over the rationals.
//!
//! Reduced Groebner bases with normal forms, Krull dimension via initial
//! ideals, ideal quotients and saturation through the auxiliary-variable
//! intersection trick, elimination under block orders, containment, regular
//! sequence checks and radical membership.
//!
//! Coefficients inside the loop are primitive integer vectors with content
//! stripping after every reduction; the public basis is monic over the
//! rationals. Pair selection is the normal strategy (minimal lcm degree,
//! deterministic tie-break) with the Gebauer-Moller criteria. Resource caps
//! are explicit configuration and exceeding them is an error distinct from a
//! mathematical FAIL.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{tables_match, Polynomial};
use crate::vars::{VarId, VarName, VarTable};

/// Generator list with a monomial order.
#[derive(Debug, Clone)]
pub struct Ideal {
    /// Ambient table.
    pub table: Arc<VarTable>,
    /// Nonzero generators (duplicates pruned on construction).
    pub gens: Vec<Polynomial>,
    /// Order used for basis computations.
    pub order: MonomialOrder,
}

impl Ideal {
    /// Builds an ideal, pruning zero and duplicate generators.
    pub fn new(table: Arc<VarTable>, gens: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ideal {
            table,
            gens: kept,
            order,
        }
    }

    /// The unit ideal.
    pub fn unit(table: Arc<VarTable>) -> Self {
        let one = Polynomial::int(table.clone(), 1);
        Ideal {
            table,
            gens: vec![one],
            order: MonomialOrder::DegRevLex,
        }
    }

    /// Generator-wise product of two ideals, without minimalization.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ok(Ideal::new(self.table.clone(), gens, self.order))
    }

    /// Generator union.
    pub fn plus(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.table.clone(), gens, self.order)
    }
}

/// Resource caps for basis computations.
#[derive(Debug, Clone)]
pub struct GbCaps {
    /// Maximum S-pairs processed.
    pub max_pairs: usize,
    /// Maximum basis size during the run.
    pub max_basis: usize,
    /// Maximum total degree of an S-pair lcm.
    pub max_degree: u32,
    /// Optional wall-clock deadline.
    pub deadline: Option<Instant>,
}

impl Default for GbCaps {
    fn default() -> Self {
        GbCaps {
            max_pairs: 400_000,
            max_basis: 6_000,
            max_degree: 80,
            deadline: None,
        }
    }
}

impl GbCaps {
    fn check_clock(&self) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::Budget("basis computation deadline".into()));
            }
        }
        Ok(())
    }
}

/// Reduced, monic, interreduced Groebner basis.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    /// Ambient table.
    pub table: Arc<VarTable>,
    /// Order the basis is reduced under.
    pub order: MonomialOrder,
    /// Monic elements sorted ascending by leading monomial.
    pub elements: Vec<Polynomial>,
    leads: Vec<Monomial>,
}

impl GroebnerBasis {
    /// Leading monomials, parallel to `elements`.
    pub fn leads(&self) -> &[Monomial] {
        &self.leads
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements
            .first()
            .map(|e| e.degree() == Some(0))
            .unwrap_or(false)
    }

    /// The ideal regenerated from the basis elements.
    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(self.table.clone(), self.elements.clone(), self.order)
    }
}

// ---------------------------------------------------------------------------
// Integer polynomial core used inside the engine.

type ITerm = (Monomial, BigInt);

#[derive(Debug, Clone)]
struct GPoly {
    terms: Vec<ITerm>, // descending under the engine order, primitive, lead > 0
}

impl GPoly {
    fn lead(&self) -> &ITerm {
        &self.terms[0]
    }
}

fn strip_content(terms: &mut [ITerm]) {
    let mut g = BigInt::zero();
    for (_, c) in terms.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() || g.is_one() && !terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false) {
        if terms.first().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            for (_, c) in terms.iter_mut() {
                *c = -&*c;
            }
        }
        return;
    }
    if terms[0].1.is_negative() {
        g = -g;
    }
    for (_, c) in terms.iter_mut() {
        *c = &*c / &g;
    }
}

fn gpoly_from(p: &Polynomial, order: MonomialOrder) -> Option<GPoly> {
    let (_, ints) = p.to_primitive()?;
    let mut terms = ints;
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    let mut g = GPoly { terms };
    strip_content(&mut g.terms);
    Some(g)
}

fn gpoly_to(p: &GPoly, table: &Arc<VarTable>) -> Polynomial {
    Polynomial::from_int_terms(table.clone(), p.terms.clone())
}

/// tail := a * tail - b * (u * g), merged under `order`.
fn combine(
    tail: &[ITerm],
    a: &BigInt,
    g: &[ITerm],
    u: &Monomial,
    b: &BigInt,
    order: MonomialOrder,
) -> Vec<ITerm> {
    let mut out = Vec::with_capacity(tail.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < tail.len() && j < g.len() {
        let gm = g[j].0.mul(u);
        match order.cmp(&tail[i].0, &gm) {
            std::cmp::Ordering::Greater => {
                out.push((tail[i].0.clone(), a * &tail[i].1));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((gm, -(b * &g[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a * &tail[i].1 - b * &g[j].1;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    while i < tail.len() {
        out.push((tail[i].0.clone(), a * &tail[i].1));
        i += 1;
    }
    while j < g.len() {
        out.push((g[j].0.mul(u), -(b * &g[j].1)));
        j += 1;
    }
    out
}

/// Full fraction-free reduction of `p` by `basis`; returns the primitive
/// remainder (empty = zero).
fn reduce_full(p: Vec<ITerm>, basis: &[GPoly], skip: Option<usize>, order: MonomialOrder) -> Vec<ITerm> {
    let mut rem: Vec<ITerm> = Vec::new();
    let mut work = p;
    let mut steps = 0usize;
    'outer: while let Some((lm, lc)) = work.first().cloned() {
        for (gi, g) in basis.iter().enumerate() {
            if Some(gi) == skip {
                continue;
            }
            let (gm, gc) = g.lead();
            if let Some(u) = lm.try_div(gm) {
                let d = lc.gcd(gc);
                let a = gc / &d;
                let b = &lc / &d;
                // Leads cancel; scale the emitted remainder to stay aligned.
                work = combine(&work[1..], &a, &g.terms[1..], &u, &b, order);
                if !a.is_one() {
                    for (_, c) in rem.iter_mut() {
                        *c = &*c * &a;
                    }
                }
                steps += 1;
                if steps % 16 == 0 {
                    let mut joint: Vec<ITerm> = rem.clone();
                    joint.extend(work.iter().cloned());
                    let mut probe = joint;
                    strip_content(&mut probe);
                    // Split back: remainder monomials strictly precede work's.
                    rem = probe[..rem.len()].to_vec();
                    work = probe[rem.len()..].to_vec();
                }
                continue 'outer;
            }
        }
        rem.push(work.remove(0));
    }
    strip_content(&mut rem);
    rem
}

fn spoly(f: &GPoly, g: &GPoly, order: MonomialOrder) -> Vec<ITerm> {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = fm.lcm(gm);
    let uf = l.try_div(fm).expect("lcm divisible");
    let ug = l.try_div(gm).expect("lcm divisible");
    let d = fc.gcd(gc);
    let a = gc / &d; // multiplies f
    let b = fc / &d; // multiplies g
    let shifted: Vec<ITerm> = f
        .terms
        .iter()
        .map(|(m, c)| (m.mul(&uf), c.clone()))
        .collect();
    // a * shifted - b * (ug * g); leads cancel.
    combine(&shifted[1..], &a, &g.terms[1..], &ug, &b, order)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
}

fn pair_key(p: &Pair) -> (u32, Vec<u16>, usize, usize) {
    (p.deg, p.lcm.exps().to_vec(), p.i, p.j)
}

/// Gebauer-Moller pair update on inserting basis element `t`.
fn update_pairs(pairs: &mut Vec<Pair>, basis: &[GPoly], t: usize) {
    let lt = &basis[t].lead().0;
    let mut fresh: Vec<Pair> = (0..t)
        .map(|i| {
            let lcm = basis[i].lead().0.lcm(lt);
            let deg = lcm.degree();
            Pair { i, j: t, lcm, deg }
        })
        .collect();
    // Criterion M: drop (i,t) when another new pair's lcm strictly divides its lcm.
    let snapshot: Vec<Monomial> = fresh.iter().map(|p| p.lcm.clone()).collect();
    fresh.retain(|p| {
        !snapshot
            .iter()
            .any(|q| q != &p.lcm && q.divides(&p.lcm))
    });
    // Criterion F + product criterion: keep one pair per lcm, and drop the
    // whole class when some member has coprime leads.
    let mut kept: Vec<Pair> = Vec::new();
    let mut dropped_lcms: Vec<Monomial> = Vec::new();
    for p in fresh {
        if dropped_lcms.contains(&p.lcm) || kept.iter().any(|q| q.lcm == p.lcm) {
            continue;
        }
        if basis[p.i].lead().0.is_coprime(lt) {
            dropped_lcms.push(p.lcm.clone());
            kept.retain(|q| q.lcm != p.lcm);
            continue;
        }
        kept.push(p);
    }
    // Criterion B on old pairs.
    pairs.retain(|p| {
        !(lt.divides(&p.lcm)
            && basis[p.i].lead().0.lcm(lt) != p.lcm
            && basis[p.j].lead().0.lcm(lt) != p.lcm)
    });
    pairs.extend(kept);
}

/// Computes the reduced Groebner basis of an ideal. Deterministic given the
/// order and generator list.
pub fn buchberger(ideal: &Ideal, caps: &GbCaps) -> Result<GroebnerBasis> {
    caps.check_clock()?;
    let order = ideal.order;
    let mut basis: Vec<GPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in &ideal.gens {
        if let Some(gp) = gpoly_from(g, order) {
            let reduced = reduce_full(gp.terms, &basis, None, order);
            if reduced.is_empty() {
                continue;
            }
            basis.push(GPoly { terms: reduced });
            update_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        caps.check_clock()?;
        processed += 1;
        if processed > caps.max_pairs {
            return Err(Error::Budget(format!(
                "pair queue exceeded {} pairs",
                caps.max_pairs
            )));
        }
        // Normal strategy: minimal lcm degree, deterministic tie-break.
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| pair_key(p))
            .map(|(k, _)| k)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        if pair.deg > caps.max_degree {
            return Err(Error::Budget(format!(
                "S-pair degree {} exceeds cap {}",
                pair.deg, caps.max_degree
            )));
        }
        let s = spoly(&basis[pair.i], &basis[pair.j], order);
        let reduced = reduce_full(s, &basis, None, order);
        if reduced.is_empty() {
            continue;
        }
        basis.push(GPoly { terms: reduced });
        if basis.len() > caps.max_basis {
            return Err(Error::Budget(format!(
                "basis exceeded {} elements",
                caps.max_basis
            )));
        }
        let t = basis.len() - 1;
        if basis[t].lead().0.is_one() {
            // Unit ideal; nothing else matters.
            basis = vec![basis[t].clone()];
            pairs.clear();
            break;
        }
        update_pairs(&mut pairs, &basis, t);
    }
    // Minimal leads.
    let mut alive: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !alive[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !alive[i] {
                break;
            }
            if !alive[j] {
                continue;
            }
            if basis[j].lead().0.divides(&basis[i].lead().0)
                && (basis[j].lead().0 != basis[i].lead().0 || j < i)
            {
                alive[i] = false;
            }
        }
    }
    let minimal: Vec<GPoly> = basis
        .iter()
        .zip(alive.iter())
        .filter(|(_, &a)| a)
        .map(|(g, _)| g.clone())
        .collect();
    // Tail-reduce each element against the others.
    let mut reduced_elems: Vec<GPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let r = reduce_full(minimal[i].terms.clone(), &minimal, Some(i), order);
        if !r.is_empty() {
            reduced_elems.push(GPoly { terms: r });
        }
    }
    reduced_elems.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
    let mut elements = Vec::with_capacity(reduced_elems.len());
    let mut leads = Vec::with_capacity(reduced_elems.len());
    for g in &reduced_elems {
        let p = gpoly_to(g, &ideal.table);
        let (lm, lc) = p.leading_term(order)?;
        leads.push(lm);
        elements.push(p.scale(&(BigRational::one() / lc)));
    }
    Ok(GroebnerBasis {
        table: ideal.table.clone(),
        order,
        elements,
        leads,
    })
}

/// The unique remainder of `p` modulo the reduced basis; zero iff `p` lies
/// in the ideal.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    let perm: Vec<usize> = (0..gb.elements.len()).collect();
    normal_form_with(p, gb, &perm)
}

/// Normal form with an explicit reducer preference order; the result is
/// independent of `perm` because the basis is reduced.
pub fn normal_form_with(p: &Polynomial, gb: &GroebnerBasis, perm: &[usize]) -> Result<Polynomial> {
    if !gb.elements.is_empty() {
        tables_match(p, &gb.elements[0])?;
    }
    let order = gb.order;
    let mut work = p.clone();
    let mut rem = Polynomial::zero(p.table().clone());
    'outer: while !work.is_zero() {
        let (lm, lc) = work.leading_term(order)?;
        for &gi in perm {
            if gb.leads[gi].divides(&lm) {
                let u = lm.try_div(&gb.leads[gi]).expect("divides");
                work = work.checked_sub(&gb.elements[gi].mul_term(&u, &lc))?;
                continue 'outer;
            }
        }
        let head = Polynomial::from_terms(p.table().clone(), vec![(lm.clone(), lc.clone())]);
        rem = rem.checked_add(&head)?;
        work = work.checked_sub(&head)?;
    }
    Ok(rem)
}

/// Krull dimension of `R/I` from the initial ideal: the size of a maximal
/// set of variables meeting no leading-term support. Errors on the unit
/// ideal.
pub fn dimension(gb: &GroebnerBasis) -> Result<usize> {
    if gb.is_unit() {
        return Err(Error::Domain("dimension of the unit ideal".into()));
    }
    let n = gb.table.len();
    let supports: Vec<u64> = gb.leads.iter().map(|m| m.support_mask()).collect();
    let mut best = 0usize;
    // Depth-first search over variable subsets with simple pruning.
    fn dfs(v: usize, n: usize, mask: u64, size: usize, best: &mut usize, supports: &[u64]) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = (*best).max(size);
            return;
        }
        let with = mask | (1 << v);
        if !supports.iter().any(|s| *s != 0 && s & !with == 0) {
            dfs(v + 1, n, with, size + 1, best, supports);
        }
        dfs(v + 1, n, mask, size, best, supports);
    }
    dfs(0, n, 0, 0, &mut best, &supports);
    Ok(best)
}

/// Codimension (height) of the ideal: `#vars - dim(R/I)`.
pub fn codimension(gb: &GroebnerBasis) -> Result<usize> {
    Ok(gb.table.len() - dimension(gb)?)
}

/// Generators of `I` intersected with the subring omitting `kill`, via a
/// block elimination order.
pub fn eliminate(ideal: &Ideal, kill: &[VarId], caps: &GbCaps) -> Result<Ideal> {
    if kill.is_empty() {
        let gb = buchberger(ideal, caps)?;
        return Ok(gb.to_ideal());
    }
    let table = &ideal.table;
    let mut killed: Vec<VarName> = kill.iter().map(|&v| table.name(v)).collect();
    killed.sort();
    killed.dedup();
    let kept: Vec<VarName> = table
        .names()
        .iter()
        .copied()
        .filter(|n| !killed.contains(n))
        .collect();
    let mut names = killed.clone();
    names.extend(kept.iter().copied());
    let work_table = Arc::new(VarTable::new(names)?);
    let k = killed.len();
    let gens = ideal
        .gens
        .iter()
        .map(|g| g.rename_into(work_table.clone()))
        .collect::<Result<Vec<_>>>()?;
    let work = Ideal::new(work_table.clone(), gens, MonomialOrder::Elim(k));
    let gb = buchberger(&work, caps)?;
    let mut out = Vec::new();
    for e in &gb.elements {
        let free = e
            .terms()
            .iter()
            .all(|(m, _)| (0..k).all(|v| m.exp(v) == 0));
        if free {
            out.push(e.rename_into(ideal.table.clone())?);
        }
    }
    Ok(Ideal::new(ideal.table.clone(), out, MonomialOrder::DegRevLex))
}

/// Ideal intersection via the auxiliary variable `t`:
/// `I ∩ J = (t I + (1-t) J) ∩ R`.
pub fn intersect(a: &Ideal, b: &Ideal, caps: &GbCaps) -> Result<Ideal> {
    let ext = a.table.prepended(&[VarName::T(0)])?;
    let t = Polynomial::variable(ext.clone(), 0);
    let one_minus_t = Polynomial::int(ext.clone(), 1).checked_sub(&t)?;
    let mut gens = Vec::new();
    for g in &a.gens {
        gens.push(t.checked_mul(&g.rename_into(ext.clone())?)?);
    }
    for g in &b.gens {
        gens.push(one_minus_t.checked_mul(&g.rename_into(ext.clone())?)?);
    }
    let work = Ideal::new(ext.clone(), gens, MonomialOrder::Elim(1));
    let gb = buchberger(&work, caps)?;
    let mut out = Vec::new();
    for e in &gb.elements {
        if e.terms().iter().all(|(m, _)| m.exp(0) == 0) {
            out.push(e.rename_into(a.table.clone())?);
        }
    }
    Ok(Ideal::new(a.table.clone(), out, a.order))
}

/// Colon by a single element: `I : g = (I ∩ (g)) / g`.
pub fn colon_element(i: &Ideal, g: &Polynomial, caps: &GbCaps) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::Domain("colon by zero".into()));
    }
    let principal = Ideal::new(i.table.clone(), vec![g.clone()], i.order);
    let inter = intersect(i, &principal, caps)?;
    let mut gens = Vec::new();
    for h in &inter.gens {
        let q = h.exact_div(g, i.order)?.ok_or_else(|| {
            Error::Internal("intersection with a principal ideal not divisible".into())
        })?;
        gens.push(q);
    }
    Ok(Ideal::new(i.table.clone(), gens, i.order))
}

/// Ideal quotient `I : J` as the intersection of the single-element colons.
pub fn ideal_quotient(i: &Ideal, j: &Ideal, caps: &GbCaps) -> Result<Ideal> {
    if j.gens.is_empty() {
        return Err(Error::Domain("quotient by the zero ideal".into()));
    }
    let gb = buchberger(i, caps)?;
    let mut acc: Option<Ideal> = None;
    for g in &j.gens {
        if normal_form(g, &gb)?.is_zero() {
            continue; // I : g = R
        }
        let colon = colon_element(i, g, caps)?;
        acc = Some(match acc {
            None => colon,
            Some(prev) => intersect(&prev, &colon, caps)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(i.table.clone())))
}

/// Saturation `I : J^∞` by iterated quotients; returns the stable ideal and
/// the number of quotient steps taken.
pub fn saturation(i: &Ideal, j: &Ideal, caps: &GbCaps) -> Result<(Ideal, usize)> {
    let mut cur = i.clone();
    for step in 0..64 {
        let next = ideal_quotient(&cur, j, caps)?;
        if contains(&cur, &next, caps)? {
            return Ok((cur, step));
        }
        cur = next;
    }
    Err(Error::Budget("saturation did not stabilize in 64 steps".into()))
}

/// True when every generator of `j` reduces to zero against `GB(i)`.
pub fn contains(i: &Ideal, j: &Ideal, caps: &GbCaps) -> Result<bool> {
    let gb = buchberger(i, caps)?;
    for g in &j.gens {
        if !normal_form(g, &gb)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Equality via the two containments.
pub fn equal(i: &Ideal, j: &Ideal, caps: &GbCaps) -> Result<bool> {
    Ok(contains(i, j, caps)? && contains(j, i, caps)?)
}

/// Outcome of a regular-sequence check.
#[derive(Debug, Clone)]
pub struct RegularSequenceOutcome {
    /// True when every prefix quotient stabilized.
    pub pass: bool,
    /// Index of the first failing element, if any.
    pub first_failure: Option<usize>,
    /// An offending quotient generator outside the prefix ideal, if any.
    pub witness: Option<Polynomial>,
}

/// Checks that `seq` is a regular sequence modulo `i`: for each prefix,
/// `((I, a_1..a_k) : a_{k+1}) = (I, a_1..a_k)`.
pub fn regular_sequence_check(
    i: &Ideal,
    seq: &[Polynomial],
    caps: &GbCaps,
) -> Result<RegularSequenceOutcome> {
    let mut prefix = i.clone();
    for (k, a) in seq.iter().enumerate() {
        let colon = colon_element(&prefix, a, caps)?;
        let gb = buchberger(&prefix, caps)?;
        for g in &colon.gens {
            if !normal_form(g, &gb)?.is_zero() {
                return Ok(RegularSequenceOutcome {
                    pass: false,
                    first_failure: Some(k),
                    witness: Some(g.clone()),
                });
            }
        }
        prefix = Ideal::new(
            prefix.table.clone(),
            prefix
                .gens
                .iter()
                .cloned()
                .chain(std::iter::once(a.clone()))
                .collect(),
            prefix.order,
        );
    }
    Ok(RegularSequenceOutcome {
        pass: true,
        first_failure: None,
        witness: None,
    })
}

/// Radical membership by the adjoined-inverse trick: `f ∈ √I` iff
/// `1 ∈ (I, 1 - t f)`.
pub fn radical_contains(i: &Ideal, f: &Polynomial, caps: &GbCaps) -> Result<bool> {
    let ext = i.table.prepended(&[VarName::T(0)])?;
    let t = Polynomial::variable(ext.clone(), 0);
    let mut gens = i
        .gens
        .iter()
        .map(|g| g.rename_into(ext.clone()))
        .collect::<Result<Vec<_>>>()?;
    gens.push(Polynomial::int(ext.clone(), 1).checked_sub(&t.checked_mul(&f.rename_into(ext.clone())?)?)?);
    let work = Ideal::new(ext, gens, MonomialOrder::DegRevLex);
    Ok(buchberger(&work, caps)?.is_unit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::MatrixSpec;
    use crate::modp::SplitMix64;

    fn table2() -> Arc<VarTable> {
        Arc::new(VarTable::new(vec![VarName::X(1, 1), VarName::X(1, 2)]).unwrap())
    }

    fn caps() -> GbCaps {
        GbCaps::default()
    }

    #[test]
    fn simple_basis() {
        // (x^2 - y, y) -> {y, x^2}
        let t = table2();
        let x = Polynomial::variable(t.clone(), 0);
        let y = Polynomial::variable(t.clone(), 1);
        let i = Ideal::new(
            t.clone(),
            vec![x.pow(2).checked_sub(&y).unwrap(), y.clone()],
            MonomialOrder::DegRevLex,
        );
        let gb = buchberger(&i, &caps()).unwrap();
        assert_eq!(gb.elements.len(), 2);
        assert_eq!(gb.elements[0], y);
        assert_eq!(gb.elements[1], x.pow(2));
    }

    #[test]
    fn generic_2x3_maximal_minors_are_a_basis() {
        // The 2-minors of the generic 2x3 matrix form their own degrevlex basis.
        let mut names = Vec::new();
        for i in 1..=2 {
            for j in 1..=3 {
                names.push(VarName::X(i, j));
            }
        }
        let t = Arc::new(VarTable::new(names).unwrap());
        let v = |i: u8, j: u8| {
            Polynomial::variable(t.clone(), t.position(VarName::X(i, j)).unwrap())
        };
        let minor = |a: u8, b: u8| {
            &(&v(1, a) * &v(2, b)) - &(&v(1, b) * &v(2, a))
        };
        let gens = vec![minor(1, 2), minor(1, 3), minor(2, 3)];
        let i = Ideal::new(t.clone(), gens.clone(), MonomialOrder::DegRevLex);
        let gb = buchberger(&i, &caps()).unwrap();
        assert_eq!(gb.elements.len(), 3);
        for g in &gens {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn generic_3x3_submaximal_minors_basis_and_initial_ideal() {
        let mat = MatrixSpec::generic(3).build().unwrap();
        let minors = mat.submaximal_minors();
        let i = Ideal::new(mat.table().clone(), minors.clone(), MonomialOrder::DegRevLex);
        let gb = buchberger(&i, &caps()).unwrap();
        assert_eq!(gb.elements.len(), 9);
        // The initial ideal is generated by the anti-diagonal products.
        for lead in gb.leads() {
            assert_eq!(lead.degree(), 2);
        }
        // in(cofactor(3,3)) = in(x11 x22 - x12 x21) = x12 x21.
        let x12 = mat.table().require(VarName::X(1, 2)).unwrap();
        let x21 = mat.table().require(VarName::X(2, 1)).unwrap();
        let mut exps = vec![0u16; 9];
        exps[x12] = 1;
        exps[x21] = 1;
        assert!(gb.leads().contains(&Monomial::from_exps(&exps)));
    }

    #[test]
    fn normal_form_properties() {
        let mat = MatrixSpec::cloned(3).build().unwrap();
        let grad = mat.gradient_generators().unwrap();
        let i = Ideal::new(mat.table().clone(), grad.clone(), MonomialOrder::DegRevLex);
        let gb = buchberger(&i, &caps()).unwrap();
        for g in &grad {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
        let one = Polynomial::int(mat.table().clone(), 1);
        assert!(!normal_form(&one, &gb).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_path_independent() {
        let mat = MatrixSpec::zeros(3, 1).build().unwrap();
        let grad = mat.gradient_generators().unwrap();
        let i = Ideal::new(mat.table().clone(), grad.clone(), MonomialOrder::DegRevLex);
        let gb = buchberger(&i, &caps()).unwrap();
        let mut rng = SplitMix64::new(11);
        let f = &(&grad[0] * &grad[3]) + &grad[5].pow(2);
        let base = normal_form(&f, &gb).unwrap();
        for _ in 0..6 {
            let mut perm: Vec<usize> = (0..gb.elements.len()).collect();
            for k in (1..perm.len()).rev() {
                let s = rng.below(k as u64 + 1) as usize;
                perm.swap(k, s);
            }
            assert_eq!(normal_form_with(&f, &gb, &perm).unwrap(), base);
        }
    }

    #[test]
    fn groebner_idempotence() {
        let mat = MatrixSpec::zeros(3, 1).build().unwrap();
        let grad = mat.gradient_generators().unwrap();
        let i = Ideal::new(mat.table().clone(), grad, MonomialOrder::DegRevLex);
        let gb = buchberger(&i, &caps()).unwrap();
        let again = buchberger(&gb.to_ideal(), &caps()).unwrap();
        assert_eq!(gb.elements, again.elements);
    }

    #[test]
    fn dimension_of_monomial_curve() {
        // (x*y) in 2 vars: dimension 1.
        let t = table2();
        let x = Polynomial::variable(t.clone(), 0);
        let y = Polynomial::variable(t.clone(), 1);
        let i = Ideal::new(t.clone(), vec![&x * &y], MonomialOrder::DegRevLex);
        let gb = buchberger(&i, &caps()).unwrap();
        assert_eq!(dimension(&gb).unwrap(), 1);
        let unit = buchberger(&Ideal::unit(t), &caps()).unwrap();
        assert!(dimension(&unit).is_err());
    }

    #[test]
    fn dimension_matches_brute_force_on_monomial_ideals() {
        // Enumerate independent sets directly for random monomial ideals in
        // up to 4 variables.
        let mut names = Vec::new();
        for j in 1..=4 {
            names.push(VarName::X(1, j));
        }
        let t = Arc::new(VarTable::new(names).unwrap());
        let mut rng = SplitMix64::new(5);
        for _ in 0..20 {
            let mut gens = Vec::new();
            for _ in 0..3 {
                let mut exps = vec![0u16; 4];
                for _ in 0..1 + rng.below(3) {
                    exps[rng.below(4) as usize] += 1;
                }
                gens.push(Polynomial::from_int_terms(
                    t.clone(),
                    vec![(Monomial::from_exps(&exps), BigInt::from(1))],
                ));
            }
            let i = Ideal::new(t.clone(), gens.clone(), MonomialOrder::DegRevLex);
            let gb = buchberger(&i, &caps()).unwrap();
            if gb.is_unit() {
                continue;
            }
            let dim = dimension(&gb).unwrap();
            // Brute force over all subsets.
            let supports: Vec<u64> = gens
                .iter()
                .map(|g| g.terms()[0].0.support_mask())
                .collect();
            let mut best = 0;
            for mask in 0u64..16 {
                if supports.iter().all(|s| s & !mask != 0) {
                    best = best.max(mask.count_ones() as usize);
                }
            }
            assert_eq!(dim, best);
        }
    }

    #[test]
    fn quotient_basics() {
        // (x^2, x y) : (x) = (x, y)
        let t = table2();
        let x = Polynomial::variable(t.clone(), 0);
        let y = Polynomial::variable(t.clone(), 1);
        let i = Ideal::new(
            t.clone(),
            vec![x.pow(2), &x * &y],
            MonomialOrder::DegRevLex,
        );
        let j = Ideal::new(t.clone(), vec![x.clone()], MonomialOrder::DegRevLex);
        let q = ideal_quotient(&i, &j, &caps()).unwrap();
        let expect = Ideal::new(t.clone(), vec![x.clone(), y.clone()], MonomialOrder::DegRevLex);
        assert!(equal(&q, &expect, &caps()).unwrap());
        // I ⊆ I:J and (I:J)·J ⊆ I.
        assert!(contains(&q, &i, &caps()).unwrap());
        let back = q.product(&j).unwrap();
        assert!(contains(&i, &back, &caps()).unwrap());
    }

    #[test]
    fn saturation_basics() {
        let t = table2();
        let x = Polynomial::variable(t.clone(), 0);
        let y = Polynomial::variable(t.clone(), 1);
        // (x^2 y) : y^∞ = (x^2)
        let i = Ideal::new(t.clone(), vec![&x.pow(2) * &y], MonomialOrder::DegRevLex);
        let j = Ideal::new(t.clone(), vec![y.clone()], MonomialOrder::DegRevLex);
        let (sat, steps) = saturation(&i, &j, &caps()).unwrap();
        let expect = Ideal::new(t.clone(), vec![x.pow(2)], MonomialOrder::DegRevLex);
        assert!(equal(&sat, &expect, &caps()).unwrap());
        assert!(steps >= 1);
        // (x^2, x y) : x^∞ = (1)
        let i2 = Ideal::new(t.clone(), vec![x.pow(2), &x * &y], MonomialOrder::DegRevLex);
        let jx = Ideal::new(t.clone(), vec![x.clone()], MonomialOrder::DegRevLex);
        let (sat2, _) = saturation(&i2, &jx, &caps()).unwrap();
        let gb = buchberger(&sat2, &caps()).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn containment_basics() {
        let t = table2();
        let x = Polynomial::variable(t.clone(), 0);
        let y = Polynomial::variable(t.clone(), 1);
        let small = Ideal::new(t.clone(), vec![x.clone()], MonomialOrder::DegRevLex);
        let big = Ideal::new(t.clone(), vec![x.clone(), y.clone()], MonomialOrder::DegRevLex);
        assert!(contains(&big, &small, &caps()).unwrap());
        assert!(!contains(&small, &big, &caps()).unwrap());
    }

    #[test]
    fn twisted_cubic_elimination() {
        // (y - x^2, z - x^3), eliminate x: contains z^2 - y^3.
        let t = Arc::new(
            VarTable::new(vec![VarName::X(1, 1), VarName::X(1, 2), VarName::X(1, 3)]).unwrap(),
        );
        let x = Polynomial::variable(t.clone(), 0);
        let y = Polynomial::variable(t.clone(), 1);
        let z = Polynomial::variable(t.clone(), 2);
        let i = Ideal::new(
            t.clone(),
            vec![y.checked_sub(&x.pow(2)).unwrap(), z.checked_sub(&x.pow(3)).unwrap()],
            MonomialOrder::DegRevLex,
        );
        let elim = eliminate(&i, &[0], &caps()).unwrap();
        let target = z.pow(2).checked_sub(&y.pow(3)).unwrap();
        let gb = buchberger(&elim, &caps()).unwrap();
        assert!(normal_form(&target, &gb).unwrap().is_zero());
        // Every survivor avoids x and lies in the original ideal.
        let full = buchberger(&i, &caps()).unwrap();
        for g in &elim.gens {
            assert!(g.terms().iter().all(|(m, _)| m.exp(0) == 0));
            assert!(normal_form(g, &full).unwrap().is_zero());
        }
        // Eliminating nothing returns a basis of I.
        let same = eliminate(&i, &[], &caps()).unwrap();
        assert!(equal(&same, &i, &caps()).unwrap());
    }

    #[test]
    fn regular_sequence_examples() {
        let t = table2();
        let x = Polynomial::variable(t.clone(), 0);
        let y = Polynomial::variable(t.clone(), 1);
        let zero = Ideal::new(t.clone(), vec![], MonomialOrder::DegRevLex);
        let out = regular_sequence_check(&zero, &[x.clone(), y.clone()], &caps()).unwrap();
        assert!(out.pass);
        let ix = Ideal::new(t.clone(), vec![x.clone()], MonomialOrder::DegRevLex);
        let out = regular_sequence_check(&ix, &[x.clone()], &caps()).unwrap();
        assert!(!out.pass);
        assert_eq!(out.first_failure, Some(0));
    }

    #[test]
    fn radical_membership() {
        let t = table2();
        let x = Polynomial::variable(t.clone(), 0);
        let i = Ideal::new(t.clone(), vec![x.pow(3)], MonomialOrder::DegRevLex);
        assert!(radical_contains(&i, &x, &caps()).unwrap());
        let y = Polynomial::variable(t.clone(), 1);
        assert!(!radical_contains(&i, &y, &caps()).unwrap());
    }

    #[test]
    fn budget_errors_are_distinct() {
        let mat = MatrixSpec::cloned(3).build().unwrap();
        let grad = mat.gradient_generators().unwrap();
        let i = Ideal::new(mat.table().clone(), grad, MonomialOrder::DegRevLex);
        let tight = GbCaps {
            max_pairs: 1,
            ..GbCaps::default()
        };
        match buchberger(&i, &tight) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}

//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial is a term map from monomials to nonzero `BigRational`
//! coefficients over a shared `VarTable`. Values are immutable after
//! construction and every operation is a pure function, so polynomials can be
//! shared freely across threads. Terms are stored sorted descending under
//! degrevlex; other orders re-scan on demand.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::vars::{VarId, VarTable};

/// Storage order for the term vector.
const CANONICAL: MonomialOrder = MonomialOrder::DegRevLex;

/// Sparse exact polynomial over a variable table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    table: Arc<VarTable>,
    terms: Vec<(Monomial, BigRational)>,
}

/// Checks that two polynomials share a table (pointer fast path, then content).
pub fn tables_match(a: &Polynomial, b: &Polynomial) -> Result<()> {
    if Arc::ptr_eq(&a.table, &b.table) || a.table == b.table {
        Ok(())
    } else {
        Err(Error::ContextMismatch(
            "operands live over different variable tables".into(),
        ))
    }
}

impl Polynomial {
    /// The zero polynomial (empty term collection).
    pub fn zero(table: Arc<VarTable>) -> Self {
        Polynomial {
            table,
            terms: Vec::new(),
        }
    }

    /// A constant polynomial.
    pub fn constant(table: Arc<VarTable>, c: BigRational) -> Self {
        let n = table.len();
        if c.is_zero() {
            Self::zero(table)
        } else {
            Polynomial {
                table,
                terms: vec![(Monomial::one(n), c)],
            }
        }
    }

    /// Small integer constant.
    pub fn int(table: Arc<VarTable>, c: i64) -> Self {
        Self::constant(table, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable `v` as a polynomial.
    pub fn variable(table: Arc<VarTable>, v: VarId) -> Self {
        let n = table.len();
        Polynomial {
            table,
            terms: vec![(Monomial::var(n, v), BigRational::one())],
        }
    }

    /// Builds from an arbitrary term list, merging duplicates and pruning zeros.
    pub fn from_terms(table: Arc<VarTable>, terms: Vec<(Monomial, BigRational)>) -> Self {
        let mut map: FxHashMap<Monomial, BigRational> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), table.len());
            let entry = map.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
        }
        Self::collect(table, map)
    }

    /// Builds from integer terms.
    pub fn from_int_terms(table: Arc<VarTable>, terms: Vec<(Monomial, BigInt)>) -> Self {
        Self::from_terms(
            table,
            terms
                .into_iter()
                .map(|(m, c)| (m, BigRational::from_integer(c)))
                .collect(),
        )
    }

    fn collect(table: Arc<VarTable>, map: FxHashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<(Monomial, BigRational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|(a, _), (b, _)| CANONICAL.cmp(b, a));
        Polynomial { table, terms }
    }

    /// The ambient table.
    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Term view, sorted descending under degrevlex.
    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    /// Number of terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; undefined (None) on the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// True when every term has the same total degree; the zero polynomial
    /// counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Degree when homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// The order-maximal term. Errors on the zero polynomial.
    pub fn leading_term(&self, order: MonomialOrder) -> Result<(Monomial, BigRational)> {
        if self.is_zero() {
            return Err(Error::Domain("leading term of the zero polynomial".into()));
        }
        if order == CANONICAL {
            let (m, c) = &self.terms[0];
            return Ok((m.clone(), c.clone()));
        }
        let (m, c) = self
            .terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
            .expect("nonzero");
        Ok((m.clone(), c.clone()))
    }

    /// Negation.
    pub fn neg(&self) -> Polynomial {
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.table.clone());
        }
        Polynomial {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn add_signed(&self, other: &Polynomial, negate: bool) -> Polynomial {
        debug_assert!(tables_match(self, other).is_ok());
        // Merge two sorted term vectors.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match CANONICAL.cmp(ma, mb) {
                std::cmp::Ordering::Greater => {
                    terms.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    terms.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Polynomial {
            table: self.table.clone(),
            terms,
        }
    }

    /// Sum; errors on table mismatch.
    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        tables_match(self, other)?;
        Ok(self.add_signed(other, false))
    }

    /// Difference; errors on table mismatch.
    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        tables_match(self, other)?;
        Ok(self.add_signed(other, true))
    }

    /// Product; errors on table mismatch.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        tables_match(self, other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.table.clone()));
        }
        let mut map: FxHashMap<Monomial, BigRational> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * other.terms.len(), Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = map.entry(m).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        Ok(Self::collect(self.table.clone(), map))
    }

    /// Product by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.table.clone());
        }
        Polynomial {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k * c))
                .collect(),
        }
    }

    /// Small power.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Self::constant(self.table.clone(), BigRational::one());
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same table");
        }
        acc
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: VarId) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[v] = e - 1;
            terms.push((
                Monomial::from_exps(&exps),
                c * BigRational::from_integer(BigInt::from(e)),
            ));
        }
        Self::from_terms(self.table.clone(), terms)
    }

    /// Image under the ring endomorphism sending each listed variable to its
    /// image and fixing the rest. All images must share this table.
    pub fn substitute(&self, images: &FxHashMap<VarId, Polynomial>) -> Result<Polynomial> {
        for img in images.values() {
            tables_match(self, img)?;
        }
        let n = self.table.len();
        let mut acc = Self::zero(self.table.clone());
        // Power cache per substituted variable.
        let mut powers: FxHashMap<(VarId, u16), Polynomial> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut fixed = vec![0u16; n];
            let mut factor = Self::constant(self.table.clone(), c.clone());
            for v in 0..n {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                match images.get(&v) {
                    None => fixed[v] = e,
                    Some(img) => {
                        let p = powers
                            .entry((v, e))
                            .or_insert_with(|| img.pow(e as u32))
                            .clone();
                        factor = factor.checked_mul(&p)?;
                    }
                }
            }
            let term = factor.mul_term(&Monomial::from_exps(&fixed), &BigRational::one());
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_q(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.table.len());
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[v];
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact image under the evaluation homomorphism reduced mod `p`.
    ///
    /// Errors with `PrimeClash` when a coefficient denominator is divisible
    /// by `p`; callers retry with a new prime.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Result<u64> {
        assert_eq!(point.len(), self.table.len());
        let pb = BigInt::from(p);
        let mut acc: u64 = 0;
        for (m, c) in &self.terms {
            let num = c.numer().mod_floor(&pb);
            let den = c.denom().mod_floor(&pb);
            let num = crate::modp::bigint_to_u64(&num);
            let den = crate::modp::bigint_to_u64(&den);
            if den == 0 {
                return Err(Error::PrimeClash(p));
            }
            let mut t = crate::modp::mulmod(num, crate::modp::invmod(den, p)?, p);
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = crate::modp::mulmod(t, crate::modp::powmod(point[v] % p, e as u64, p), p);
                }
            }
            acc = crate::modp::addmod(acc, t, p);
        }
        Ok(acc)
    }

    /// Leading-term driven exact division. Returns `Ok(Some(q))` with
    /// `self = q * d` when `d` divides exactly, `Ok(None)` otherwise.
    /// Correctness is independent of the order choice.
    pub fn exact_div(&self, d: &Polynomial, order: MonomialOrder) -> Result<Option<Polynomial>> {
        tables_match(self, d)?;
        if d.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        let (dm, dc) = d.leading_term(order)?;
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, BigRational)> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term(order)?;
            let Some(u) = rm.try_div(&dm) else {
                return Ok(None);
            };
            let c = rc / &dc;
            rem = rem.checked_sub(&d.mul_term(&u, &c))?;
            quo.push((u, c));
        }
        Ok(Some(Self::from_terms(self.table.clone(), quo)))
    }

    /// Splits into a positive rational content and a primitive integer term
    /// vector with positive leading (degrevlex) coefficient; `self = content * primitive`.
    pub fn to_primitive(&self) -> Option<(BigRational, Vec<(Monomial, BigInt)>)> {
        if self.is_zero() {
            return None;
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut ints: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&den_lcm / c.denom())))
            .collect();
        let mut g = BigInt::zero();
        for (_, c) in &ints {
            g = g.gcd(c);
        }
        if ints[0].1.is_negative() {
            g = -g;
        }
        for (_, c) in ints.iter_mut() {
            *c = &*c / &g;
        }
        Some((BigRational::new(g, den_lcm), ints))
    }

    /// Maps this polynomial into another table by variable name.
    pub fn rename_into(&self, table: Arc<VarTable>) -> Result<Polynomial> {
        let n = table.len();
        let mut map = Vec::with_capacity(self.table.len());
        for name in self.table.names() {
            map.push(table.position(*name));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; n];
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[v] {
                    Some(w) => exps[w] = e,
                    None => {
                        return Err(Error::ContextMismatch(format!(
                            "variable {} missing from target table",
                            self.table.name(v)
                        )))
                    }
                }
            }
            terms.push((Monomial::from_exps(&exps), c.clone()));
        }
        Ok(Self::from_terms(table, terms))
    }

    /// Canonical text form: terms sorted by `order`, coefficients as
    /// integer or integer/integer, variables as `x_i_j`.
    pub fn canonical_string(&self, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&(Monomial, BigRational)> = self.terms.iter().collect();
        if order != CANONICAL {
            terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        }
        let mut out = String::new();
        for (idx, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                if abs.denom().is_one() {
                    factors.push(abs.numer().to_string());
                } else {
                    factors.push(format!("{}/{}", abs.numer(), abs.denom()));
                }
            }
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self.table.name(v);
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{}^{}", name, e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string(CANONICAL))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("operands share a variable table")
            }
        }
    };
}
impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VarName;

    fn two_vars() -> Arc<VarTable> {
        Arc::new(VarTable::new(vec![VarName::X(1, 1), VarName::X(1, 2)]).unwrap())
    }

    fn x(t: &Arc<VarTable>) -> Polynomial {
        Polynomial::variable(t.clone(), 0)
    }

    fn y(t: &Arc<VarTable>) -> Polynomial {
        Polynomial::variable(t.clone(), 1)
    }

    #[test]
    fn cancellation() {
        let t = two_vars();
        let (x, y) = (x(&t), y(&t));
        let s = &(&x + &y) + &(&x - &y);
        assert_eq!(s, x.scale(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn absorbing_zero() {
        let t = two_vars();
        let p = &x(&t) + &y(&t);
        let z = Polynomial::zero(t.clone());
        assert!(p.checked_mul(&z).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let t = two_vars();
        let (x, y) = (x(&t), y(&t));
        let prod = &(&x + &y) * &(&x - &y);
        let expect = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expect);
    }

    #[test]
    fn power_rule() {
        // d(x^2 y)/dx = 2xy
        let t = two_vars();
        let (x, y) = (x(&t), y(&t));
        let p = &(&x * &x) * &y;
        let d = p.derivative(0);
        assert_eq!(d, (&x * &y).scale(&BigRational::from_integer(2.into())));
        assert!(Polynomial::int(t.clone(), 5).derivative(0).is_zero());
    }

    #[test]
    fn substitution_kills_and_fixes() {
        // x -> 0 on x*y + y leaves y; identity substitution is the identity.
        let t = two_vars();
        let (x, y) = (x(&t), y(&t));
        let p = &(&x * &y) + &y;
        let mut images = FxHashMap::default();
        images.insert(0usize, Polynomial::zero(t.clone()));
        assert_eq!(p.substitute(&images).unwrap(), y);
        assert_eq!(p.substitute(&FxHashMap::default()).unwrap(), p);
    }

    #[test]
    fn eval_mod_small() {
        let t = two_vars();
        let p = &x(&t) + &y(&t);
        assert_eq!(p.eval_mod(&[1, 2], 101).unwrap(), 3);
        assert_eq!(Polynomial::zero(t.clone()).eval_mod(&[7, 9], 101).unwrap(), 0);
    }

    #[test]
    fn eval_mod_denominator_clash() {
        let t = two_vars();
        let p = Polynomial::constant(t, BigRational::new(1.into(), 101.into()));
        assert!(matches!(p.eval_mod(&[0, 0], 101), Err(Error::PrimeClash(101))));
    }

    #[test]
    fn exact_division() {
        let t = two_vars();
        let (x, y) = (x(&t), y(&t));
        let num = &(&x * &x) - &(&y * &y);
        let d = &x - &y;
        let q = num.exact_div(&d, MonomialOrder::DegRevLex).unwrap().unwrap();
        assert_eq!(q, &x + &y);
        let bad = &(&x * &x) + &y;
        assert!(bad.exact_div(&x, MonomialOrder::DegRevLex).unwrap().is_none());
        assert!(num.exact_div(&Polynomial::zero(t.clone()), MonomialOrder::DegRevLex).is_err());
    }

    #[test]
    fn leading_term_degrevlex() {
        // x^2 y beats x y^2 under degrevlex with x > y.
        let t = two_vars();
        let (x, y) = (x(&t), y(&t));
        let p = &(&(&x * &x) * &y) + &(&(&x * &y) * &y);
        let (m, _) = p.leading_term(MonomialOrder::DegRevLex).unwrap();
        assert_eq!(m, Monomial::from_exps(&[2, 1]));
        assert!(Polynomial::zero(t.clone()).leading_term(MonomialOrder::DegRevLex).is_err());
    }

    #[test]
    fn mismatched_tables_error() {
        let a = Polynomial::variable(two_vars(), 0);
        let b = Polynomial::variable(VarTable::generic(2), 0);
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn primitive_split() {
        let t = two_vars();
        let p = x(&t).scale(&BigRational::new(4.into(), 6.into()));
        let (content, ints) = p.to_primitive().unwrap();
        assert_eq!(content, BigRational::new(2.into(), 3.into()));
        assert_eq!(ints.len(), 1);
        assert_eq!(ints[0].1, BigInt::from(1));
    }

    #[test]
    fn canonical_text() {
        let t = two_vars();
        let (x, y) = (x(&t), y(&t));
        let p = &(&x * &x).scale(&BigRational::from_integer(2.into())) - &y;
        assert_eq!(p.canonical_string(MonomialOrder::DegRevLex), "2*x_1_1^2 - x_1_2");
    }
}

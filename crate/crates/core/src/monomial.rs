//! Dense exponent-vector monomials and monomial orders.
//!
//! Monomials carry one exponent per variable ordinal of the ambient table.
//! Orders are total, compatible with multiplication; `DegRevLex` refines
//! total degree and is the default everywhere. `Elim(k)` is the block order
//! (degrevlex on the first `k` ordinals, then degrevlex on the rest) used for
//! variable elimination.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector; inline capacity covers every desk-scale table.
type Exps = SmallVec<[u16; 26]>;

/// A monomial as a dense exponent vector over a fixed variable table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    /// The unit monomial over `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; n],
        }
    }

    /// The monomial `x_v` over `n` variables.
    pub fn var(n: usize, v: usize) -> Self {
        let mut exps: Exps = smallvec::smallvec![0; n];
        exps[v] = 1;
        Monomial { exps }
    }

    /// Builds from an explicit exponent vector.
    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    /// Number of variable slots.
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    /// True when this is the unit monomial.
    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Exponent of variable `v`.
    pub fn exp(&self, v: usize) -> u16 {
        self.exps[v]
    }

    /// Raw exponents.
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps }
    }

    /// Quotient, when `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.len(), other.len());
        let mut exps = Exps::with_capacity(self.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    /// Divisibility test.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// Least common multiple.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial { exps }
    }

    /// True when the supports are disjoint.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support as a bitmask (tables never exceed 64 variables here).
    pub fn support_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (v, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << v;
            }
        }
        mask
    }

}

/// Monomial orders. The tie convention is the variable ordinal order of the
/// ambient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Pure lexicographic.
    Lex,
    /// Degree reverse lexicographic (the default).
    DegRevLex,
    /// Block order eliminating the first `k` ordinals: degrevlex on the
    /// leading block, then degrevlex on the remainder.
    #[serde(rename = "elim")]
    Elim(usize),
}

fn cmp_lex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn cmp_degrevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Ties: the last differing exponent decides, smaller exponent wins.
    for (x, y) in a.iter().zip(b.iter()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compares two monomials over the same table.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match *self {
            MonomialOrder::Lex => cmp_lex(&a.exps, &b.exps),
            MonomialOrder::DegRevLex => cmp_degrevlex(&a.exps, &b.exps),
            MonomialOrder::Elim(k) => {
                match cmp_degrevlex(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => cmp_degrevlex(&a.exps[k..], &b.exps[k..]),
                    ord => ord,
                }
            }
        }
    }

}

//! Algebraic law suites over randomized inputs: ring axioms, evaluation
//! homomorphism, exact-division round trips, Euler's relation and the
//! homogeneity guarantees of the matrix layer.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use detlab_core::matrix::MatrixSpec;
use detlab_core::modp::SplitMix64;
use detlab_core::monomial::Monomial;
use detlab_core::{MonomialOrder, Polynomial, VarName, VarTable};

fn table(n: usize) -> Arc<VarTable> {
    Arc::new(VarTable::new((1..=n).map(|j| VarName::X(1, j as u8)).collect()).unwrap())
}

fn random_poly(t: &Arc<VarTable>, rng: &mut SplitMix64, terms: usize, max_deg: u16) -> Polynomial {
    let n = t.len();
    let mut list = Vec::new();
    for _ in 0..terms {
        let mut exps = vec![0u16; n];
        let deg = rng.below(max_deg as u64 + 1) as u16;
        for _ in 0..deg {
            exps[rng.below(n as u64) as usize] += 1;
        }
        let c = rng.below(19) as i64 - 9;
        if c != 0 {
            list.push((
                Monomial::from_exps(&exps),
                BigRational::from_integer(BigInt::from(c)),
            ));
        }
    }
    Polynomial::from_terms(t.clone(), list)
}

#[test]
fn ring_axioms_on_random_triples() {
    let t = table(4);
    let mut rng = SplitMix64::new(20240);
    for _ in 0..120 {
        let a = random_poly(&t, &mut rng, 5, 3);
        let b = random_poly(&t, &mut rng, 5, 3);
        let c = random_poly(&t, &mut rng, 5, 3);
        // associativity
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // commutativity
        assert_eq!(&a * &b, &b * &a);
        // distributivity
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // additive inverse
        assert!((&a - &a).is_zero());
    }
}

#[test]
fn evaluation_is_a_ring_homomorphism() {
    let t = table(3);
    let mut rng = SplitMix64::new(5150);
    let p: u64 = 1_000_000_007;
    for _ in 0..60 {
        let a = random_poly(&t, &mut rng, 6, 3);
        let b = random_poly(&t, &mut rng, 6, 3);
        let point: Vec<u64> = (0..3).map(|_| rng.below(p)).collect();
        let prod = (&a * &b).eval_mod(&point, p).unwrap();
        let sum = (&a + &b).eval_mod(&point, p).unwrap();
        let ea = a.eval_mod(&point, p).unwrap();
        let eb = b.eval_mod(&point, p).unwrap();
        assert_eq!(prod, detlab_core::modp::mulmod(ea, eb, p));
        assert_eq!(sum, detlab_core::modp::addmod(ea, eb, p));
    }
}

#[test]
fn exact_division_round_trip() {
    let t = table(3);
    let mut rng = SplitMix64::new(99);
    let mut done = 0;
    while done < 60 {
        let q = random_poly(&t, &mut rng, 4, 3);
        let d = random_poly(&t, &mut rng, 4, 3);
        if d.is_zero() {
            continue;
        }
        let p = &q * &d;
        let back = p.exact_div(&d, MonomialOrder::DegRevLex).unwrap().unwrap();
        assert_eq!(back, q);
        done += 1;
    }
}

#[test]
fn euler_relation_both_families_up_to_m5() {
    // sum_v x_v * df/dx_v = m * f for the degree-m determinant.
    let mut specs: Vec<MatrixSpec> = (3..=5).map(MatrixSpec::cloned).collect();
    for m in 3..=5 {
        for r in 1..=m - 2 {
            specs.push(MatrixSpec::zeros(m, r));
        }
    }
    for spec in specs {
        let mat = spec.build().unwrap();
        let m = mat.m();
        let f = mat.determinant();
        let t = mat.table().clone();
        let mut acc = Polynomial::zero(t.clone());
        for v in 0..t.len() {
            let xv = Polynomial::variable(t.clone(), v);
            acc = &acc + &(&xv * &f.derivative(v));
        }
        assert_eq!(acc, f.scale(&BigRational::from_integer(BigInt::from(m as i64))));
    }
}

#[test]
fn cofactor_sums_match_derivatives_up_to_m5() {
    // The generator constructor cross-checks cofactor sums against formal
    // derivatives and errors on any mismatch.
    let mut specs: Vec<MatrixSpec> = (3..=5).map(MatrixSpec::cloned).collect();
    for m in 3..=5 {
        for r in 1..=m - 2 {
            specs.push(MatrixSpec::zeros(m, r));
        }
    }
    for spec in specs {
        let mat = spec.build().unwrap();
        assert!(mat.gradient_generators().is_ok());
    }
}

#[test]
fn determinantal_outputs_are_homogeneous() {
    for spec in [
        MatrixSpec::cloned(4),
        MatrixSpec::zeros(4, 2),
        MatrixSpec::generic(3),
    ] {
        let mat = spec.build().unwrap();
        let m = mat.m() as u32;
        let f = mat.determinant();
        assert_eq!(f.homogeneous_degree(), Some(m));
        for i in 1..=mat.m() {
            for j in 1..=mat.m() {
                let c = mat.cofactor(i, j);
                if !c.is_zero() {
                    assert_eq!(c.homogeneous_degree(), Some(m - 1));
                }
            }
        }
        // Derivatives of a homogeneous degree-d form are homogeneous of
        // degree d-1 or zero.
        for v in 0..mat.table().len() {
            let d = f.derivative(v);
            assert!(d.is_zero() || d.homogeneous_degree() == Some(m - 1));
        }
    }
}

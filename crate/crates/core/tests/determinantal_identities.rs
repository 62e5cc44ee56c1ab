//! Frozen example values and structural identities, verified against a
//! brute-force permutation oracle that is independent of the production
//! determinant path.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rustc_hash::FxHashMap;

use detlab_core::groebner::{self, GbCaps, Ideal};
use detlab_core::hessian;
use detlab_core::matrix::{Cell, MatrixSpec, SymbolicMatrix};
use detlab_core::{Monomial, MonomialOrder, Polynomial, VarName};

// Brute-force determinant by signed permutation expansion (oracle).
fn det_by_permutations(mat: &SymbolicMatrix) -> Polynomial {
    fn go(
        mat: &SymbolicMatrix,
        row: usize,
        used: &mut Vec<bool>,
        sign: i64,
        acc: &mut Polynomial,
        partial: &Polynomial,
    ) {
        let m = mat.m();
        if row > m {
            *acc = acc
                .checked_add(&partial.scale(&BigRational::from_integer(BigInt::from(sign))))
                .unwrap();
            return;
        }
        for j in 1..=m {
            if used[j] {
                continue;
            }
            let e = mat.entry(row, j);
            if e.is_zero() {
                continue;
            }
            used[j] = true;
            let swaps = (1..j).filter(|&k| !used[k]).count();
            let s = if swaps % 2 == 0 { sign } else { -sign };
            let next = partial.checked_mul(&e).unwrap();
            go(mat, row + 1, used, s, acc, &next);
            used[j] = false;
        }
    }
    let mut acc = Polynomial::zero(mat.table().clone());
    let one = Polynomial::int(mat.table().clone(), 1);
    let mut used = vec![false; mat.m() + 1];
    go(mat, 1, &mut used, 1, &mut acc, &one);
    acc
}

fn var(mat: &SymbolicMatrix, i: u8, j: u8) -> Polynomial {
    Polynomial::variable(
        mat.table().clone(),
        mat.table().position(VarName::X(i, j)).unwrap(),
    )
}

#[test]
fn oracle_agrees_with_subset_expansion() {
    for spec in [
        MatrixSpec::generic(3),
        MatrixSpec::cloned(3),
        MatrixSpec::cloned(4),
        MatrixSpec::zeros(3, 1),
        MatrixSpec::zeros(4, 2),
        MatrixSpec::zeros(5, 3),
    ] {
        let mat = spec.build().unwrap();
        assert_eq!(mat.determinant(), det_by_permutations(&mat));
    }
}

#[test]
fn cloned_m3_shared_variable_derivative() {
    // Frozen from the oracle expansion: d det / d x_2_2 on the cloned 3x3.
    let mat = MatrixSpec::cloned(3).build().unwrap();
    let f = det_by_permutations(&mat);
    let v = mat.table().position(VarName::X(2, 2)).unwrap();
    let d = f.derivative(v);
    let expect = &(&var(&mat, 1, 1) * &var(&mat, 2, 2)).scale(&BigRational::from_integer(2.into()))
        - &(&(&var(&mat, 1, 2) * &var(&mat, 2, 1)) + &(&var(&mat, 1, 3) * &var(&mat, 3, 1)));
    assert_eq!(d, expect);
}

#[test]
fn off_diagonal_cofactor_dies_under_diagonal_specialization() {
    // The cofactor of an off-diagonal entry has no term supported on the
    // diagonal set, so killing the off-diagonal variables annihilates it.
    let mat = MatrixSpec::cloned(3).build().unwrap();
    let f = det_by_permutations(&mat);
    let v12 = mat.table().position(VarName::X(1, 2)).unwrap();
    let d = f.derivative(v12);
    let mut images = FxHashMap::default();
    for v in 0..mat.table().len() {
        let VarName::X(i, j) = mat.table().name(v) else { unreachable!() };
        if i != j {
            images.insert(v, Polynomial::zero(mat.table().clone()));
        }
    }
    assert!(d.substitute(&images).unwrap().is_zero());
}

#[test]
fn cloned_m3_leading_terms() {
    // in(cof(1,1)) = x_2_2^2 under degrevlex; the full expansion is
    // x_2_2^2 - x_2_3*x_3_2.
    let mat = MatrixSpec::cloned(3).build().unwrap();
    let delta = mat.cofactor(1, 1);
    let x22 = var(&mat, 2, 2);
    let expect = &(&x22 * &x22) - &(&var(&mat, 2, 3) * &var(&mat, 3, 2));
    assert_eq!(delta, expect);
    let (lead, c) = delta.leading_term(MonomialOrder::DegRevLex).unwrap();
    assert_eq!(c, BigRational::from_integer(1.into()));
    let mut exps = vec![0u16; 8];
    exps[mat.table().position(VarName::X(2, 2)).unwrap()] = 2;
    assert_eq!(lead, Monomial::from_exps(&exps));
}

#[test]
fn generic_two_minor_leads_with_antidiagonal() {
    let mat = MatrixSpec::generic(2).build().unwrap();
    let f = mat.determinant();
    let (lead, c) = f.leading_term(MonomialOrder::DegRevLex).unwrap();
    let mut exps = vec![0u16; 4];
    exps[mat.table().position(VarName::X(1, 2)).unwrap()] = 1;
    exps[mat.table().position(VarName::X(2, 1)).unwrap()] = 1;
    assert_eq!(lead, Monomial::from_exps(&exps));
    assert_eq!(c, BigRational::from_integer((-1).into()));
}

#[test]
fn hessian_quotient_chain_cloned_m3() {
    // h(f)/f is a degree-5 form that divides once more by f exactly.
    let mat = MatrixSpec::cloned(3).build().unwrap();
    let f = mat.determinant();
    let h = hessian::hessian(&f).bareiss_det().unwrap();
    let q1 = h.exact_div(&f, MonomialOrder::DegRevLex).unwrap().unwrap();
    assert_eq!(q1.degree(), Some(5));
    let q2 = q1.exact_div(&f, MonomialOrder::DegRevLex).unwrap().unwrap();
    assert_eq!(q2.degree(), Some(2));
    assert!(q2.exact_div(&f, MonomialOrder::DegRevLex).unwrap().is_none());
}

#[test]
fn inversion_identity_m3_m4() {
    // adj(adj(M)) = det^{m-2} * M for both families.
    for spec in [
        MatrixSpec::cloned(3),
        MatrixSpec::cloned(4),
        MatrixSpec::zeros(3, 1),
        MatrixSpec::zeros(4, 1),
        MatrixSpec::zeros(4, 2),
    ] {
        let mat = spec.build().unwrap();
        let m = mat.m();
        let f = mat.determinant();
        let adj = mat.adjugate();
        let scale = f.pow(m as u32 - 2);
        let idx: Vec<usize> = (0..m).collect();
        for k in 0..m {
            for l in 0..m {
                let rows: Vec<usize> = idx.iter().copied().filter(|&t| t != l).collect();
                let cols: Vec<usize> = idx.iter().copied().filter(|&t| t != k).collect();
                let minor = adj.submatrix(&rows, &cols).bareiss_det().unwrap();
                let cof = if (k + l) % 2 == 0 { minor } else { minor.neg() };
                let expect = scale.checked_mul(&mat.entry(k + 1, l + 1)).unwrap();
                assert_eq!(cof, expect);
            }
        }
    }
}

#[test]
fn maximal_regular_sequence_on_generic_3x3() {
    // The two entries avoiding every submaximal anti-diagonal form a
    // regular sequence modulo the ideal of submaximal minors.
    let mat = MatrixSpec::generic(3).build().unwrap();
    let ideal = Ideal::new(
        mat.table().clone(),
        mat.submaximal_minors(),
        MonomialOrder::DegRevLex,
    );
    let seq = vec![var(&mat, 1, 1), var(&mat, 3, 3)];
    let out = groebner::regular_sequence_check(&ideal, &seq, &GbCaps::default()).unwrap();
    assert!(out.pass, "first failure: {:?}", out.first_failure);
}

#[test]
fn degenerated_rectangular_minors_have_expected_codimension() {
    // 4x3 degeneration with r = 1: the maximal minors reach codimension
    // a - b + 1 = 2.
    let (a, b, r) = (4usize, 3usize, 1usize);
    let mut grid = Vec::new();
    for i in 1..=a {
        let mut row = Vec::new();
        for j in 1..=b {
            // zeros staircase in the lower-right corner
            if i + j > a + b - r {
                row.push(Cell::Zero);
            } else {
                row.push(Cell::Var(i as u8, j as u8));
            }
        }
        grid.push(row);
    }
    // Pad to a square custom pattern and slice the strip minors by mask.
    let m = a;
    let mut square = Vec::new();
    for i in 1..=m {
        let mut row = Vec::new();
        for j in 1..=m {
            if j <= b {
                row.push(grid[i - 1][j - 1]);
            } else {
                row.push(Cell::Var(i as u8, j as u8));
            }
        }
        square.push(row);
    }
    let mat = MatrixSpec::custom(square).build().unwrap();
    // All b-minors of the first b columns.
    let mut gens = Vec::new();
    let mut memo = mat.minor_table();
    let col_mask: u32 = (1 << b) - 1;
    for rows in detlab_core::matrix::subsets_of_size(m, b) {
        let minor = mat.minor(rows, col_mask, &mut memo);
        if !minor.is_zero() {
            gens.push(minor);
        }
    }
    // Restrict to the ring on the strip's variables.
    let mut names = Vec::new();
    for i in 1..=a {
        for j in 1..=b {
            if i + j <= a + b - r {
                names.push(VarName::X(i as u8, j as u8));
            }
        }
    }
    let strip_table = Arc::new(detlab_core::VarTable::new(names).unwrap());
    let gens = gens
        .into_iter()
        .map(|g| g.rename_into(strip_table.clone()).unwrap())
        .collect();
    let ideal = Ideal::new(strip_table, gens, MonomialOrder::DegRevLex);
    let gb = groebner::buchberger(&ideal, &GbCaps::default()).unwrap();
    assert_eq!(groebner::codimension(&gb).unwrap(), a - b + 1);
}

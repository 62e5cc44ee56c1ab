//! Test-only oracles, independent of the production computation paths.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::matrix::SymbolicMatrix;
use crate::poly::Polynomial;

/// Brute-force determinant by signed permutation expansion.
pub fn det_by_permutations(mat: &SymbolicMatrix) -> Polynomial {
    let m = mat.m();
    let mut perm: Vec<usize> = (1..=m).collect();
    let mut acc = Polynomial::zero(mat.table().clone());
    permute(&mut perm, 0, 1, &mut |perm, sign| {
        let mut term = Polynomial::constant(
            mat.table().clone(),
            BigRational::from_integer(BigInt::from(sign)),
        );
        for (i, &j) in perm.iter().enumerate() {
            term = term.checked_mul(&mat.entry(i + 1, j)).expect("same table");
            if term.is_zero() {
                break;
            }
        }
        acc = acc.checked_add(&term).expect("same table");
    });
    acc
}

fn permute(perm: &mut Vec<usize>, k: usize, sign: i64, visit: &mut impl FnMut(&[usize], i64)) {
    let n = perm.len();
    if k == n {
        visit(perm, sign);
        return;
    }
    for i in k..n {
        let s = if i == k { sign } else { -sign };
        perm.swap(k, i);
        permute(perm, k + 1, s, visit);
        perm.swap(k, i);
    }
}

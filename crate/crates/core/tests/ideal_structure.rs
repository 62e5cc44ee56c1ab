//! Ideal-theoretic relations between the gradient ideal and the submaximal
//! minors at desk size.

use detlab_core::groebner::{self, GbCaps, Ideal};
use detlab_core::hessian;
use detlab_core::matrix::MatrixSpec;
use detlab_core::{Error, MonomialOrder};

fn caps() -> GbCaps {
    GbCaps::default()
}

#[test]
fn generic_m3_determinant_at_identity_point() {
    let mat = MatrixSpec::generic(3).build().unwrap();
    let det = mat.determinant();
    let t = mat.table();
    let point: Vec<u64> = (0..t.len())
        .map(|v| {
            let detlab_core::VarName::X(i, j) = t.name(v) else { unreachable!() };
            u64::from(i == j)
        })
        .collect();
    assert_eq!(det.eval_mod(&point, 101).unwrap(), 1);
    assert_eq!(det.eval_mod(&point, (1 << 61) - 1).unwrap(), 1);
}

#[test]
fn generic_m2_gradient_is_the_cofactors() {
    let mat = MatrixSpec::generic(2).build().unwrap();
    let gens = mat.gradient_generators().unwrap();
    assert_eq!(gens.len(), 4);
    for (v, g) in gens.iter().enumerate() {
        let detlab_core::VarName::X(i, j) = mat.table().name(v) else { unreachable!() };
        assert_eq!(*g, mat.cofactor(i as usize, j as usize));
    }
}

#[test]
fn gradient_ideal_sits_inside_minors_ideal() {
    // J ⊆ P for the cloned 3x3, and P = J + (corner cofactor).
    let mat = MatrixSpec::cloned(3).build().unwrap();
    let table = mat.table().clone();
    let j = Ideal::new(
        table.clone(),
        mat.gradient_generators().unwrap(),
        MonomialOrder::DegRevLex,
    );
    let p = Ideal::new(table.clone(), mat.submaximal_minors(), MonomialOrder::DegRevLex);
    assert!(groebner::contains(&p, &j, &caps()).unwrap());
    assert!(!groebner::contains(&j, &p, &caps()).unwrap());
    let corner = Ideal::new(table.clone(), vec![mat.cofactor(3, 3)], MonomialOrder::DegRevLex);
    let j_plus = j.plus(&corner);
    assert!(groebner::equal(&p, &j_plus, &caps()).unwrap());
}

#[test]
fn conductor_saturation_stabilizes() {
    // J : I^∞ at zeros (3,1); the step count is engine output, recorded and
    // compared against the single quotient.
    let mat = MatrixSpec::zeros(3, 1).build().unwrap();
    let table = mat.table().clone();
    let j = Ideal::new(
        table.clone(),
        mat.gradient_generators().unwrap(),
        MonomialOrder::DegRevLex,
    );
    let i = Ideal::new(table.clone(), mat.submaximal_minors(), MonomialOrder::DegRevLex);
    let quotient = groebner::ideal_quotient(&j, &i, &caps()).unwrap();
    let (sat, steps) = groebner::saturation(&j, &i, &caps()).unwrap();
    assert!(steps >= 1, "at least one quotient step before stabilizing");
    // The saturation contains the single quotient.
    assert!(groebner::contains(&sat, &quotient, &caps()).unwrap());
}

#[test]
fn dominant_minor_map_is_rejected() {
    // The generic 2x2 adjugate is a coordinate change; there is no
    // hypersurface equation and the operation reports that instead.
    let mat = MatrixSpec::generic(2).build().unwrap();
    match hessian::minors_image_equation(&mat, &caps()) {
        Err(Error::Domain(msg)) => assert!(msg.contains("dominant")),
        other => panic!("expected a dominant-map rejection, got {other:?}"),
    }
}

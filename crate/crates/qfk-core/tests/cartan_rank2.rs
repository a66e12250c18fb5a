//! End-to-end run on a rank-2 Cartan datum of type `A_1 x A_1` at a cube
//! root of unity: `G = (Z/6)^2`, `dim H = 9 * 36 * 9 = 2916`. The two
//! generator blocks commute (all cross swap scalars are 1), so the algebra
//! factors as a tensor square of the rank-1 case and the simple dimensions
//! must be products of the rank-1 ladder `[1, 2, 3, 1, 2, 3]`. This is the
//! independent oracle for the classification; it also drives the on-demand
//! multiplication table, since a square table at this dimension is past
//! the eager threshold.

use std::sync::Arc;

use qfk_core::datum::QlsDatum;
use qfk_core::hopf::{HopfAlgebraH, VerifyMode};
use qfk_core::repn::{all_simples, HModules};
use qfk_core::scalar::{FieldSpec, ScalarField};

#[test]
fn rank_two_cartan_classification_matches_tensor_square() {
    let field = ScalarField::create(&FieldSpec::Prime { p: 7 }, 6).unwrap();
    let q = field.root_power(2); // primitive cube root
    let cartan = vec![vec![2, 0], vec![0, 2]];
    let d = QlsDatum::from_cartan(3, &cartan, &q, &field).unwrap();
    assert!(d.validate().ok());
    assert_eq!(d.dim_l(), 9);
    assert_eq!(d.dim_h(), 2916);

    let h = Arc::new(HopfAlgebraH::build(&d).unwrap());
    assert_eq!(h.dim(), 2916);

    // a small sampled axiom sweep exercises the lazy structure constants
    let report = h
        .verify_axioms(VerifyMode::Sampled {
            tuples: 100,
            seed: 0xa1a1,
        })
        .unwrap();
    assert!(report.ok(), "{:?}", report.failures);

    let engine = HModules::new(h);
    let c = all_simples(&engine).unwrap();
    assert_eq!(c.rows.len(), 36);
    assert!(c.all_certified);
    assert!(c.distinguish_diagonal);

    // weights are enumerated lexicographically as (a1, a2); each block
    // reproduces the rank-1 ladder
    let ladder = [1usize, 2, 3, 1, 2, 3];
    let dims: Vec<usize> = c.rows.iter().map(|r| r.dim_simple).collect();
    let expected: Vec<usize> = (0..6)
        .flat_map(|a1| (0..6).map(move |a2| ladder[a1] * ladder[a2]))
        .collect();
    assert_eq!(dims, expected);
    assert_eq!(c.sum_of_squares(), 28 * 28);
    assert!(c.rows.iter().all(|r| r.dim_induced == 9));
}

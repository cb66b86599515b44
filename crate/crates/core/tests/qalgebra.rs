mod common;

use std::sync::Arc;

use common::{dense_tensor_is_zero, word};
use qzm::chiral_fock::{Chirality, Content, EpsilonConvention, FockConfig, FockModule};
use qzm::diagrams::YoungDiagram;
use qzm::qalgebra::{CommutationOutcome, GrowthOutcome, QAlgebra, QMonomial, TensorState};
use qzm::scalarfield::Field;

fn algebra(n: usize, h: u32) -> QAlgebra {
    algebra_in(n, h, Field::root_of_unity(h).unwrap())
}

fn algebra_in(n: usize, h: u32, f: Field) -> QAlgebra {
    QAlgebra::new(Arc::new(FockModule::new(n, &f, FockConfig::default()).unwrap()), h).unwrap()
}

fn yd(n: usize, parts: &[u32]) -> YoungDiagram {
    YoungDiagram::new(n, parts.to_vec()).unwrap()
}

fn conv() -> EpsilonConvention {
    EpsilonConvention::default()
}

#[test]
fn q_on_the_vacuum() {
    let qa = algebra(3, 4);
    let f = qa.field().clone();
    let s = TensorState::vacuum(&f).apply_q(3, 1, 1).unwrap();
    assert_eq!(s.len(), 3);
    for a in 1..=3 {
        let key = (word(Chirality::Unbarred, &[(1, a)]), word(Chirality::Barred, &[(1, a)]));
        assert!(s.terms()[&key].is_one());
    }
    assert!(qa.is_zero_tensor(&TensorState::vacuum(&f).apply_q(3, 2, 1).unwrap()).unwrap());
    let s = TensorState::vacuum(&f).apply_q(3, 1, 3).unwrap();
    let contents: Vec<_> = s.contents(3).into_iter().collect();
    assert_eq!(contents, vec![(Content(vec![1, 0, 0]), Content(vec![0, 0, 1]))]);
    assert!(!qa.is_zero_tensor(&TensorState::vacuum(&f)).unwrap());
}

#[test]
fn nilpotency_at_the_root_only() {
    for (n, h) in [(2, 3), (2, 4), (3, 4), (3, 5)] {
        let qa = algebra(n, h);
        for i in 1..=n {
            for j in 1..=n {
                assert!(qa.check_nilpotency(i, j).unwrap(), "n={n} h={h} ({i},{j})");
            }
        }
        let short = qa.apply_monomial(&QMonomial::power(1, 1, h - 1), &qa.vacuum().unwrap()).unwrap();
        assert!(!short.is_zero());
    }
    let qa = algebra_in(2, 3, Field::generic());
    assert!(!qa.check_nilpotency(1, 1).unwrap());
    // the same vector through the whole-word oracle
    let s = TensorState::vacuum(qa.field()).apply_monomial(2, &QMonomial::power(1, 1, 3)).unwrap();
    assert!(!dense_tensor_is_zero(qa.field(), conv(), 2, &s));
    let f = Field::root_of_unity(3).unwrap();
    let s = TensorState::vacuum(&f).apply_monomial(2, &QMonomial::power(1, 1, 3)).unwrap();
    assert!(dense_tensor_is_zero(&f, conv(), 2, &s));
}

#[test]
fn second_row_on_the_longest_first_row() {
    for (n, h) in [(2, 4), (3, 4), (3, 5)] {
        let qa = algebra(n, h);
        let mut m = vec![(2, 2)];
        m.extend(std::iter::repeat_n((1, 1), h as usize - 1));
        let t = qa.apply_monomial(&QMonomial(m.clone()), &qa.vacuum().unwrap()).unwrap();
        assert!(t.is_zero(), "n={n} h={h}");
        let s = TensorState::vacuum(qa.field()).apply_monomial(n, &QMonomial(m)).unwrap();
        assert!(dense_tensor_is_zero(qa.field(), conv(), n, &s));
    }
}

#[test]
fn diagram_vectors() {
    let qa = algebra(3, 5);
    let f = qa.field().clone();
    assert_eq!(qa.vector_of_diagram(&YoungDiagram::empty(3)).unwrap(), TensorState::vacuum(&f));
    assert_eq!(
        qa.vector_of_diagram(&yd(3, &[1])).unwrap(),
        TensorState::vacuum(&f).apply_q(3, 1, 1).unwrap()
    );
    let s = qa.vector_of_diagram(&yd(3, &[2, 1])).unwrap();
    assert!(!qa.is_zero_tensor(&s).unwrap());
    assert!(!dense_tensor_is_zero(&f, conv(), 3, &s));
    assert!(qa.vector_of_diagram(&yd(3, &[5])).is_err());
}

#[test]
fn fprime_dimensions() {
    for (n, k, dim) in [(2, 1, 3), (2, 2, 4), (2, 3, 5), (3, 1, 7), (3, 2, 11)] {
        let h = n as u32 + k;
        let fp = algebra(n, h).fprime().unwrap();
        assert_eq!(fp.dimension, dim, "n={n} k={k}");
        assert!(fp.vectors.iter().all(|v| v.nonzero));
    }
    // every v_m of n=3, h=4 is nonzero for the whole-word oracle too
    let qa = algebra(3, 4);
    for y in YoungDiagram::enumerate(3, 4).unwrap() {
        let s = qa.vector_of_diagram(&y).unwrap();
        assert!(!dense_tensor_is_zero(qa.field(), conv(), 3, &s), "{y}");
    }
}

#[test]
fn growth_examples() {
    let qa = algebra(3, 5);
    assert_eq!(qa.check_growth(&yd(3, &[1, 1]), 2).unwrap(), GrowthOutcome::Zero);
    assert_eq!(qa.check_growth(&yd(3, &[2, 2]), 2).unwrap(), GrowthOutcome::Zero);
    match qa.check_growth(&yd(3, &[2, 1]), 2).unwrap() {
        GrowthOutcome::Proportional { diagram, coefficient } => {
            assert_eq!(diagram, yd(3, &[2, 2]));
            assert!(!coefficient.is_zero());
        }
        o => panic!("{o:?}"),
    }
    for h in 3..=5 {
        let qa = algebra(2, h);
        assert_eq!(qa.check_growth(&yd(2, &[h - 1]), 2).unwrap(), GrowthOutcome::Zero);
    }
}

/// A box below a full column of n - 1 boxes is not zero in the cyclic module but a
/// multiple of a shorter diagram vector; both coefficients are confirmed on the
/// whole-word oracle.
#[test]
fn row_overflow_lands_in_fprime() {
    for (n, h, parts, expected) in [(2usize, 3u32, vec![1u32], "q"), (3, 4, vec![1, 1], "-2 + 2*q^2")] {
        let qa = algebra(n, h);
        let y = yd(n, &parts);
        let c = match qa.check_growth(&y, n).unwrap() {
            GrowthOutcome::InSpan { coefficients } => {
                assert_eq!(coefficients.len(), 1);
                assert_eq!(coefficients[0].0, YoungDiagram::empty(n));
                coefficients[0].1.clone()
            }
            o => panic!("{o:?}"),
        };
        assert_eq!(c.to_string(), expected);
        let f = qa.field();
        let mut s = qa.vector_of_diagram(&y).unwrap().apply_q(n, n, n).unwrap();
        s.add_scaled(&TensorState::vacuum(f), &-c).unwrap();
        assert!(dense_tensor_is_zero(f, conv(), n, &s));
    }
}

/// On diagrams that saturate the spread, an extra first-row box leaves F'.
#[test]
fn first_row_past_the_spread() {
    let qa = algebra(3, 4);
    for parts in [[2u32, 1], [2, 2]] {
        let y = yd(3, &parts);
        assert_eq!(qa.check_growth(&y, 1).unwrap(), GrowthOutcome::Outside, "{y}");
        let s = qa.vector_of_diagram(&y).unwrap().apply_q(3, 1, 1).unwrap();
        assert!(!dense_tensor_is_zero(qa.field(), conv(), 3, &s));
    }
    // single rows never get that far
    assert_eq!(qa.check_growth(&yd(3, &[3]), 1).unwrap(), GrowthOutcome::Zero);
}

#[test]
fn dynamical_commutation() {
    let qa = algebra(3, 5);
    let vac = qa.vacuum().unwrap();
    assert_eq!(qa.check_dynamical_commutation(&vac, 2, 1).unwrap(), CommutationOutcome::Checked(true));
    assert_eq!(qa.check_dynamical_commutation(&vac, 1, 1).unwrap(), CommutationOutcome::Checked(true));
    for y in YoungDiagram::enumerate(3, 5).unwrap() {
        let v = qa.diagram_vector(&y).unwrap();
        for (i, j) in [(1, 2), (2, 1), (1, 3), (2, 3), (3, 2)] {
            assert_ne!(qa.check_dynamical_commutation(&v, i, j).unwrap(), CommutationOutcome::Checked(false), "{y} {i}{j}");
        }
    }
}

#[test]
fn offdiagonal_annihilation() {
    let qa = algebra(2, 4);
    assert!(qa.check_offdiagonal_annihilation(&YoungDiagram::empty(2)).unwrap());
    assert!(qa.check_offdiagonal_annihilation(&yd(2, &[1])).unwrap());
    let qa = algebra(3, 5);
    let y = yd(3, &[2, 1]);
    assert!(qa.check_offdiagonal_annihilation(&y).unwrap());
    let v = qa.vector_of_diagram(&y).unwrap();
    for (j, l) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)] {
        assert!(dense_tensor_is_zero(qa.field(), conv(), 3, &v.apply_q(3, j, l).unwrap()));
    }
}

#[test]
fn rowcol_commutativity() {
    let qa = algebra(3, 4);
    let samples = vec![qa.vacuum().unwrap(), qa.diagram_vector(&yd(3, &[1])).unwrap(), qa.diagram_vector(&yd(3, &[1, 1])).unwrap()];
    assert!(qa.check_rowcol_commutativity(&samples).unwrap());
}

/// The hook vector `v_h` vanishes; its companion `w_h` survives in the cyclic module,
/// also for the whole-word oracle.
#[test]
fn hook_vectors() {
    for (n, h, i) in [(3, 4, 2), (3, 5, 2), (3, 6, 2), (4, 5, 2), (4, 5, 3)] {
        let qa = algebra(n, h);
        let out = qa.check_hook_vanishing(i).unwrap();
        assert!(out.backbone_nonzero && out.v_zero, "n={n} h={h} i={i}");
        assert!(!out.w_zero, "n={n} h={h} i={i}");
    }
    for h in [4, 5] {
        let f = Field::root_of_unity(h).unwrap();
        let mut m = vec![(1, 1), (2, 2)];
        m.extend(std::iter::repeat_n((1, 1), h as usize - 2));
        let w = TensorState::vacuum(&f).apply_monomial(3, &QMonomial(m)).unwrap();
        assert!(!dense_tensor_is_zero(&f, conv(), 3, &w));
    }
    assert!(algebra(3, 4).check_hook_vanishing(1).is_err());
    assert!(algebra(3, 4).check_hook_vanishing(3).is_err());
}

#[test]
fn parameter_checks() {
    let f = Field::root_of_unity(4).unwrap();
    let m = Arc::new(FockModule::new(3, &f, FockConfig::default()).unwrap());
    assert!(QAlgebra::new(m.clone(), 5).is_err());
    let g = Arc::new(FockModule::new(3, &Field::generic(), FockConfig::default()).unwrap());
    assert!(QAlgebra::new(g.clone(), 3).is_err());
    assert!(QAlgebra::new(g, 7).is_ok());
    let qa = QAlgebra::new(m, 4).unwrap();
    assert!(qa.apply_q(4, 1, &qa.vacuum().unwrap()).is_err());
}

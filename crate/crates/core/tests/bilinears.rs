use std::sync::Arc;

use qzm::bilinears::{
    apply_bilinear, contracted_op, contraction_cancels_termwise, random_tensor_states, Bilinear, BilinearChecks,
    BilinearKind::{A, S},
};
use qzm::chiral_fock::{ChiralState, Chirality, FockConfig, FockModule, Gen, Word};
use qzm::qalgebra::{QAlgebra, TensorState};
use qzm::scalarfield::Field;
use qzm::weights::epsilon;

fn module(n: usize, f: &Field) -> Arc<FockModule> {
    Arc::new(FockModule::new(n, f, FockConfig::default()).unwrap())
}

fn chiral(f: &Field, ch: Chirality, gens: &[(usize, usize)]) -> ChiralState {
    ChiralState::from_word(f, Word::new(ch, gens.iter().map(|&(i, a)| Gen::new(i, a)).collect()))
}

fn fields(h: u32) -> [Field; 2] {
    [Field::root_of_unity(h).unwrap(), Field::generic()]
}

#[test]
fn chiral_examples() {
    for f in fields(4) {
        let m = module(3, &f);
        let states = [
            ChiralState::vacuum(&f, Chirality::Unbarred),
            chiral(&f, Chirality::Unbarred, &[(1, 2)]),
            chiral(&f, Chirality::Unbarred, &[(2, 3), (1, 1)]),
        ];
        for s in &states {
            for a in 1..=3 {
                for b in 1..=3 {
                    // A^{ii} = 0
                    for i in 1..=3 {
                        let t = apply_bilinear(&Bilinear::new(A, Chirality::Unbarred, i, i, a, b), s).unwrap();
                        assert!(m.is_zero(&t).unwrap());
                    }
                    for (i, j) in [(1, 2), (2, 1), (1, 3)] {
                        let x = apply_bilinear(&Bilinear::new(A, Chirality::Unbarred, i, j, a, b), s).unwrap();
                        let y = apply_bilinear(&Bilinear::new(S, Chirality::Unbarred, i, j, a, b), s).unwrap();
                        let prod = s.apply_word(&[Gen::new(i, a), Gen::new(j, b)]).unwrap();
                        assert_eq!(x.sum(&y).unwrap(), prod);
                        let y2 = apply_bilinear(&Bilinear::new(S, Chirality::Unbarred, i, j, b, a), s).unwrap();
                        let d = y.difference(&y2.scaled(&f.q_power(epsilon(a, b))).unwrap()).unwrap();
                        assert!(m.is_zero(&d).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn dynamical_identities_on_first_row_powers() {
    let f = Field::root_of_unity(5).unwrap();
    let m = module(3, &f);
    for k in 0..4 {
        let s = chiral(&f, Chirality::Unbarred, &vec![(1, 1); k]);
        let w = s.terms().keys().next().unwrap().content(3).weight();
        for a in 1..=3 {
            for b in 1..=3 {
                let aij = apply_bilinear(&Bilinear::new(A, Chirality::Unbarred, 1, 2, a, b), &s).unwrap();
                let aji = apply_bilinear(&Bilinear::new(A, Chirality::Unbarred, 2, 1, a, b), &s).unwrap();
                let lhs = aij.scaled(&w.eval_bracket(1, 2, 1, &f).unwrap()).unwrap();
                let rhs = aji.scaled(&w.eval_bracket(1, 2, -1, &f).unwrap()).unwrap();
                assert!(m.is_zero(&lhs.sum(&rhs).unwrap()).unwrap(), "k={k} {a}{b}");
                let sij = apply_bilinear(&Bilinear::new(S, Chirality::Unbarred, 1, 2, a, b), &s).unwrap();
                let sji = apply_bilinear(&Bilinear::new(S, Chirality::Unbarred, 2, 1, a, b), &s).unwrap();
                assert!(m.is_zero(&sij.difference(&sji).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn barred_bilinears_follow_chirality() {
    let f = Field::root_of_unity(4).unwrap();
    let s = ChiralState::vacuum(&f, Chirality::Unbarred);
    assert!(apply_bilinear(&Bilinear::new(A, Chirality::Barred, 1, 1, 1, 2), &s).is_err());
    let sb = ChiralState::vacuum(&f, Chirality::Barred);
    let t = apply_bilinear(&Bilinear::new(S, Chirality::Barred, 1, 1, 2, 2), &sb).unwrap();
    assert_eq!(t, chiral(&f, Chirality::Barred, &[(1, 2), (1, 2)]));
}

#[test]
fn contraction_cancels_pairwise() {
    for h in 3..=8 {
        for f in [Field::root_of_unity(h).unwrap(), Field::generic()] {
            assert!(contraction_cancels_termwise(&f, 4));
        }
    }
    // on the vacuum, the contracted operators vanish after reduction
    let f = Field::root_of_unity(4).unwrap();
    let qa = QAlgebra::new(module(3, &f), 4).unwrap();
    let vac = qa.vacuum().unwrap();
    for (x, y) in [(S, A), (A, S)] {
        let op = contracted_op(&f, 3, x, y, (1, 1), (1, 1)).unwrap();
        assert!(qa.apply_op(&op, &vac).unwrap().is_zero());
    }
}

#[test]
fn tensor_suite_on_samples() {
    for (n, h) in [(2, 4), (3, 4)] {
        for f in fields(h) {
            let qa = QAlgebra::new(module(n, &f), h).unwrap();
            let bc = BilinearChecks::new(&qa);
            let mut samples = vec![qa.vacuum().unwrap()];
            for s in random_tensor_states(&qa, 3, 6, 3).unwrap() {
                samples.push(qa.reduce(&s).unwrap());
            }
            assert!(samples.iter().all(|s| !s.is_zero()));
            for s in &samples {
                assert!(bc.check_split(s).unwrap());
                assert!(bc.check_symmetry(s).unwrap());
                assert!(bc.check_dynamical_as(s).unwrap());
                assert!(bc.check_contraction_vanishing(s).unwrap());
                assert!(bc.check_decomposition(s).unwrap());
            }
            let (ss, aa) = bc.decompose_qq(1, 1, 1, 1, &samples[0]).unwrap();
            let qq = qa.apply_q(1, 1, &qa.apply_q(1, 1, &samples[0]).unwrap()).unwrap();
            assert!(qa.equal(&qa.combine(&f.one(), &ss, &f.one(), &aa).unwrap(), &qq).unwrap());
        }
    }
}

#[test]
fn random_states_are_seeded() {
    let f = Field::root_of_unity(4).unwrap();
    let qa = QAlgebra::new(module(3, &f), 4).unwrap();
    let a = random_tensor_states(&qa, 11, 5, 4).unwrap();
    let b = random_tensor_states(&qa, 11, 5, 4).unwrap();
    let c = random_tensor_states(&qa, 12, 5, 4).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(a.iter().all(|s: &TensorState| s.contents(3).len() == 1));
}

#[test]
fn hook_audit() {
    for h in [4, 5] {
        let f = Field::root_of_unity(h).unwrap();
        let qa = QAlgebra::new(module(3, &f), h).unwrap();
        let r = BilinearChecks::new(&qa).hook_audit(2).unwrap();
        assert!(r.v_is_ss_part && r.v_aa_part_zero && r.w_is_aa_part, "h={h} {r:?}");
    }
}

#[test]
fn division_by_two() {
    let f = Field::root_of_unity(4).unwrap();
    let b = Bilinear::new(A, Chirality::Unbarred, 1, 2, 1, 2);
    let t = b.terms(&f).unwrap();
    let two = f.q_int(2);
    assert_eq!(&t[0].1 * &two, f.q_power(1));
    assert_eq!(&t[1].1 * &two, -f.one());
    assert!(Bilinear::new(A, Chirality::Unbarred, 1, 2, 3, 3).terms(&f).unwrap().is_empty());
}

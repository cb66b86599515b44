use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use qzm::diagrams::{Growth, YoungDiagram};
use qzm::scalarfield::Field;
use qzm::weights::WeightVector;

fn laurent(field: &Field, coeffs: &[(i64, i64)]) -> qzm::scalarfield::Scalar {
    let mut t = BTreeMap::new();
    for &(e, c) in coeffs {
        *t.entry(e).or_insert_with(|| BigInt::from(0)) += c;
    }
    field.from_laurent(&t)
}

proptest! {
    #[test]
    fn q_integer_identities_at_root(h in 3u32..=8, m in -60i64..60) {
        let f = Field::root_of_unity(h).unwrap();
        let hh = h as i64;
        prop_assert_eq!(f.q_int(hh - m), f.q_int(m));
        prop_assert_eq!(f.q_int(-m), -f.q_int(m));
        prop_assert_eq!(f.q_int(m + 2 * hh), f.q_int(m));
        prop_assert_eq!(f.q_int(m).is_zero(), m % hh == 0);
        prop_assert_eq!(&f.q_int(2) * &f.q_int(m), &f.q_int(m + 1) + &f.q_int(m - 1));
    }

    #[test]
    fn q_integer_is_a_quotient(h in 3u32..=8, m in -30i64..30) {
        for f in [Field::root_of_unity(h).unwrap(), Field::generic()] {
            let lhs = &f.q_int(m) * &(&f.q() - &f.q_power(-1));
            prop_assert_eq!(lhs, &f.q_power(m) - &f.q_power(-m));
        }
    }

    #[test]
    fn generic_q_integers_vanish_only_at_zero(m in -40i64..40) {
        prop_assert_eq!(Field::generic().q_int(m).is_zero(), m == 0);
    }

    #[test]
    fn field_axioms(
        h in 3u32..=8,
        a in prop::collection::vec((-9i64..9, -4i64..4), 0..5),
        b in prop::collection::vec((-9i64..9, -4i64..4), 0..5),
        c in prop::collection::vec((-9i64..9, -4i64..4), 0..5),
        generic in any::<bool>(),
    ) {
        let f = if generic { Field::generic() } else { Field::root_of_unity(h).unwrap() };
        let (x, y, z) = (laurent(&f, &a), laurent(&f, &b), laurent(&f, &c));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        prop_assert_eq!(f.decode(&x.encode()).unwrap(), x.clone());
        let text = serde_json::to_string(&x.encode()).unwrap();
        prop_assert_eq!(f.decode(&serde_json::from_str(&text).unwrap()).unwrap(), x);
    }

    #[test]
    fn weight_shifts(n in 2usize..6, steps in prop::collection::vec(1usize..6, 0..8)) {
        let mut w = WeightVector::vacuum(n).unwrap();
        let mut content = vec![0usize; n];
        for s in steps {
            let i = (s - 1) % n + 1;
            w = w.shift(i).unwrap();
            content[i - 1] += 1;
        }
        prop_assert_eq!(&w, &WeightVector::vacuum(n).unwrap().shifted_by(&content));
        for j in 1..=n {
            for l in 1..=n {
                prop_assert_eq!(w.p_diff(j, l), -w.p_diff(l, j));
                let expected = content[j - 1] as i64 - content[l - 1] as i64 + l as i64 - j as i64;
                prop_assert_eq!(w.p_diff(j, l), expected);
            }
        }
        // the determinant block (1,...,1) leaves every difference alone
        prop_assert!(w.same_differences(&w.shifted_by(&vec![1; n])));
    }

    #[test]
    fn diagram_counts_and_shapes(n in 2usize..=6, dh in 1u32..=6) {
        let h = n as u32 + dh;
        let ds = YoungDiagram::enumerate(n, h).unwrap();
        prop_assert_eq!(ds.len() as u64, YoungDiagram::count(n, h).unwrap());
        for y in &ds {
            prop_assert!(y.rows() < n && y.row(1) < h);
            prop_assert_eq!(y.is_admissible(h), y.max_hook() < h);
            prop_assert_eq!(&YoungDiagram::parse(n, &y.render()).unwrap(), y);
            prop_assert_eq!(&YoungDiagram::parse(n, &y.to_string()).unwrap(), y);
            for j in 1..=n {
                match y.grow(j, h).unwrap() {
                    Growth::Diagram(g) => {
                        prop_assert!(ds.contains(&g));
                        prop_assert_eq!(g.boxes(), y.boxes() + 1);
                    }
                    Growth::RowOverflow => prop_assert_eq!(j, n),
                    Growth::StandardRuleViolation => prop_assert_eq!(y.row(j), y.row(j - 1)),
                    Growth::SpreadViolation => prop_assert!(j == 1 || y.row(j) == 0),
                }
            }
        }
        if n == 2 {
            prop_assert_eq!(ds.len(), h as usize);
        }
    }
}

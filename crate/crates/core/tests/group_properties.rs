use gradedproj_core::abelian::{smith_normal_form, FgAbelianGroup, GroupElement, IntegerMatrix, SubgroupPresentation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

fn group() -> impl Strategy<Value = FgAbelianGroup> {
    (0usize..=2, prop::sample::select(vec![vec![], vec![2], vec![3], vec![2, 4], vec![4]])).prop_map(|(r, inv)| {
        FgAbelianGroup::new(r, inv.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn element(g: &FgAbelianGroup, coords: &[i64]) -> GroupElement {
    let padded: Vec<i64> = (0..g.dimension()).map(|i| coords.get(i).copied().unwrap_or(0)).collect();
    g.element_i64(&padded).unwrap()
}

fn combination(gens: &[GroupElement], coeffs: &[i64], zero: &GroupElement) -> GroupElement {
    gens.iter()
        .zip(coeffs)
        .fold(zero.clone(), |acc, (g, c)| &acc + &g.scale(&BigInt::from(*c)))
}

/// All coefficient vectors with entries in `[-bound, bound]`.
fn boxes(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in matrix()) {
        let cols = rows[0].len();
        let a = IntegerMatrix::from_rows(cols, &rows);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.left.mul(&a).mul(&snf.right), snf.diagonal.clone());
        prop_assert!(snf.diagonal.is_diagonal());
        prop_assert!(snf.left.determinant().abs().is_one());
        prop_assert!(snf.right.determinant().abs().is_one());
        let d = snf.diagonal.diagonal();
        prop_assert!(d.iter().all(|x| !x.is_negative()));
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn difference_representation_is_exact_or_absent(
        g in group(),
        raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=3),
        target in prop::collection::vec(-4i64..=4, 3),
    ) {
        let gens: Vec<GroupElement> = raw.iter().map(|c| element(&g, c)).collect();
        let target = element(&g, &target);
        match g.represent_as_difference(&target, &gens) {
            Some(d) => {
                let plus: Vec<i64> = d.plus.iter().map(|&x| x as i64).collect();
                let minus: Vec<i64> = d.minus.iter().map(|&x| -(x as i64)).collect();
                let zero = g.zero();
                let sum = &combination(&gens, &plus, &zero) + &combination(&gens, &minus, &zero);
                prop_assert_eq!(sum, target);
            }
            None => {
                let zero = g.zero();
                for c in boxes(gens.len(), 6) {
                    prop_assert_ne!(combination(&gens, &c, &zero), target.clone());
                }
            }
        }
    }

    #[test]
    fn torsion_exponent_is_lcm_of_invariants(
        g in group(),
        raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..=3),
    ) {
        let gens: Vec<GroupElement> = raw.iter().map(|c| element(&g, c)).collect();
        let h = SubgroupPresentation::new(g.clone(), gens).unwrap();
        let q = g.quotient_invariants(&h);
        match g.torsion_exponent(&h) {
            Some(n) => {
                prop_assert_eq!(q.free_rank, 0);
                let lcm = q.invariants.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
                prop_assert_eq!(n.clone(), lcm);
                for m in g.standard_generators() {
                    prop_assert!(h.contains(&m.scale(&n)));
                }
            }
            None => prop_assert!(q.free_rank > 0),
        }
    }
}

#[test]
fn documented_examples() {
    let z = FgAbelianGroup::free(1);
    let two = SubgroupPresentation::new(z.clone(), vec![z.element_i64(&[2]).unwrap()]).unwrap();
    let q = z.quotient_invariants(&two);
    assert_eq!((q.free_rank, q.invariants.clone()), (0, vec![BigInt::from(2)]));
    assert_eq!(z.torsion_exponent(&two), Some(BigInt::from(2)));

    let z2 = FgAbelianGroup::free(2);
    let axis = SubgroupPresentation::new(z2.clone(), vec![z2.element_i64(&[1, 0]).unwrap()]).unwrap();
    assert!(!z2.is_torsion_quotient(&axis));
    assert_eq!(z2.torsion_exponent(&axis), None);
    assert_eq!(z2.torsion_exponent(&SubgroupPresentation::whole(&z2)), Some(BigInt::one()));

    let gens = [z.element_i64(&[2]).unwrap(), z.element_i64(&[3]).unwrap()];
    assert!(z.represent_as_difference(&z.element_i64(&[1]).unwrap(), &gens).is_some());
    assert!(z.represent_as_difference(&z.element_i64(&[1]).unwrap(), &gens[..1]).is_none());
    let d = z.represent_as_difference(&z.zero(), &gens).unwrap();
    assert!(d.plus.iter().chain(&d.minus).all(|&x| x == 0));

    let snf = smith_normal_form(&IntegerMatrix::from_rows(2, &[vec![2, 0], vec![0, 3]]));
    assert_eq!(snf.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
}

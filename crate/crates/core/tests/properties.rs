use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use exponent_core::cyccohom::BitMatrix;
use exponent_core::exactlinalg::{minor_gcd, smith_normal_form, smith_normal_form_bigint};
use exponent_core::f2poly::{apply_map, enumerate_basis, F2Poly, Monomial, Presentation, RingMap};
use exponent_core::fixture::{bundled, bundled_names, Fixture};
use exponent_core::repcoker::{
    cokernel_structure, cokernel_structure_with, predicted_exponents, CokernelOptions,
};
use exponent_core::series::{qnomial, qnomial_row};
use exponent_core::{GroupSpec, IntegerMatrix, Normalization};

fn matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| IntegerMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn big(d: &BigUint) -> BigInt {
    BigInt::from(d.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn snf_is_a_chain_matching_minor_gcds(m in matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert!(snf.is_divisibility_chain());
        prop_assert_eq!(&snf, &smith_normal_form_bigint(&m));
        let mut prefix = BigInt::from(1);
        for k in 1..=m.rows().min(m.cols()) {
            prefix *= snf.divisors().get(k - 1).map_or_else(BigInt::default, big);
            prop_assert_eq!(minor_gcd(&m, k).unwrap(), prefix.clone());
        }
    }

    #[test]
    fn snf_ignores_permutations_signs_and_transpose(m in matrix(), seed in any::<u64>()) {
        let snf = smith_normal_form(&m);
        let mut rows: Vec<usize> = (0..m.rows()).collect();
        let mut cols: Vec<usize> = (0..m.cols()).collect();
        rows.rotate_left((seed as usize) % m.rows());
        cols.reverse();
        let mut p = m.permute_rows(&rows).permute_cols(&cols);
        p.negate_row((seed as usize / 7) % m.rows());
        prop_assert_eq!(&smith_normal_form(&p), &snf);
        prop_assert_eq!(&smith_normal_form(&m.transpose()), &snf);
    }
}

#[test]
fn qnomial_rows_are_symmetric_and_sum_to_q_pow_x() {
    for x in 0..=8u32 {
        for q in 1..=7u32 {
            let row = qnomial_row(x, q);
            assert_eq!(row.len() as u32, x * (q - 1) + 1);
            assert!(row.iter().eq(row.iter().rev()), "x={x} q={q}");
            assert_eq!(row.iter().sum::<BigUint>(), BigUint::from(q).pow(x));
            assert_eq!(qnomial(x, q, -1), BigUint::default());
        }
    }
}

#[test]
fn qnomial_pascal_rule() {
    // C(x, k) = sum_{j<q} C(x-1, k-j)
    for q in 2..=5u32 {
        for x in 1..=6u32 {
            for k in 0..=(x * (q - 1)) as i64 {
                let sum: BigUint = (0..q as i64).map(|j| qnomial(x - 1, q, k - j)).sum();
                assert_eq!(qnomial(x, q, k), sum);
            }
        }
    }
}

#[test]
fn cokernel_independent_of_normalization() {
    for (p, n) in [(2, 3), (3, 2), (5, 2), (3, 3)] {
        let spec = GroupSpec::new(p, n).unwrap();
        let alt = CokernelOptions { normalization: Normalization::Rightmost, ..CokernelOptions::default() };
        assert_eq!(cokernel_structure(spec).unwrap(), cokernel_structure_with(spec, alt).unwrap());
    }
}

#[test]
fn extended_targets_match_prediction() {
    for (p, n) in [(7, 3), (3, 5)] {
        let spec = GroupSpec::new(p, n).unwrap();
        let g = cokernel_structure(spec).unwrap();
        let counts: BTreeMap<u32, BigUint> = g.counts().iter().map(|(&k, &m)| (k, m.into())).collect();
        assert_eq!(predicted_exponents(spec, false), counts);
        assert_eq!(g.total_multiplicity(), p.pow(n) - 1);
    }
}

#[test]
fn rank_nullity_on_bundled_actions() {
    let mut seen = 0;
    for name in bundled_names() {
        let Ok(Fixture::Action(f)) = bundled(name) else {
            continue;
        };
        seen += 1;
        let ga = f.graded_action().unwrap();
        for t in 0..=20 {
            let basis = enumerate_basis(ga.presentation(), t);
            let m = BitMatrix::identity(basis.len()).add(&ga.action_matrix(&basis));
            let r = m.rank();
            assert_eq!(m.kernel().len() + r, basis.len(), "{name} t={t}");
            assert_eq!(m.transpose().kernel().len() + r, basis.len(), "{name} t={t}");
            let d = ga.degree_data(t);
            assert_eq!(d.invariants(), d.coinvariants());
        }
    }
    assert_eq!(seen, 5);
}

fn poly(pres: &Presentation) -> impl Strategy<Value = F2Poly> {
    let n = pres.num_generators();
    proptest::collection::vec(proptest::collection::vec(0u32..3, n), 0..5)
        .prop_map(move |ms| F2Poly::from_monomials(ms.into_iter().map(Monomial::new)))
}

fn d8_swap() -> RingMap {
    let pres = Presentation::parse(&[("x", 1), ("y", 1), ("w", 2)], &["x*y"]).unwrap();
    let images = BTreeMap::from([
        ("x".to_string(), "y".to_string()),
        ("y".to_string(), "x".to_string()),
        ("w".to_string(), "w + x^2".to_string()),
    ]);
    RingMap::parse(pres, &images).unwrap()
}

proptest! {
    #[test]
    fn apply_map_is_a_ring_homomorphism(
        (a, b) in { let p = d8_swap().domain().clone(); (poly(&p), poly(&p)) }
    ) {
        let f = d8_swap();
        let pres = f.domain();
        let (a, b) = (pres.reduce(&a), pres.reduce(&b));
        let fa = apply_map(&f, &a).unwrap();
        let fb = apply_map(&f, &b).unwrap();
        prop_assert_eq!(apply_map(&f, &a.add(&b)).unwrap(), fa.add(&fb));
        prop_assert_eq!(apply_map(&f, &pres.mul(&a, &b)).unwrap(), pres.mul(&fa, &fb));
    }
}

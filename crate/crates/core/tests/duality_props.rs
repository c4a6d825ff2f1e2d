use num_rational::BigRational;
use num_traits::Signed;
use potts_atlas_core::duality::{
    allowed_words, coefficient_closed_form, dual_beta, expand_word_sum, new_weight, real_part, verify_words, Model,
};
use proptest::prelude::*;

#[test]
fn oracle_matches_closed_form_up_to_8() {
    for n in 1..=8 {
        let check = verify_words(n).unwrap();
        assert!(check.passed(), "n={n}: {:?}", check.first_mismatch);
        assert_eq!(check.strings_checked, 3usize.pow(n as u32));
    }
}

#[test]
fn exchanging_spins_2_and_3_conjugates() {
    for n in 1..=8 {
        let e = expand_word_sum(n).unwrap();
        for (sigma, c) in e.iter() {
            let swapped: Vec<u8> = sigma.iter().map(|&s| [0, 1, 3, 2][s as usize]).collect();
            let d = e.coefficient(&swapped).unwrap();
            assert_eq!(d, c.conjugate());
            assert_eq!(new_weight(&swapped).unwrap(), new_weight(&sigma).unwrap());
        }
    }
}

#[test]
fn word_counts() {
    for n in 1..=14usize {
        assert_eq!(allowed_words(n).unwrap().len(), 1 << (n - 1));
    }
}

#[test]
fn involution_and_fixed_points() {
    for model in [Model::Ising, Model::Potts3] {
        for i in 0..100 {
            let beta = 0.1 + 2.9 * i as f64 / 99.0;
            let back = dual_beta(model, dual_beta(model, beta).unwrap()).unwrap();
            assert!((back - beta).abs() < 1e-12, "{model} β={beta} residual {}", back - beta);
        }
    }
    let ising = 0.5 * (1.0 + 2f64.sqrt()).ln();
    let potts = (1.0 + 3f64.sqrt()).ln();
    assert!((dual_beta(Model::Ising, ising).unwrap() - ising).abs() < 1e-12);
    assert!((dual_beta(Model::Potts3, potts).unwrap() - potts).abs() < 1e-12);
}

proptest! {
    #[test]
    fn real_part_is_cyclic_weight(sigma in prop::collection::vec(1u8..=3, 1..=40)) {
        let c = coefficient_closed_form(&sigma).unwrap();
        prop_assert_eq!(real_part(&c), new_weight(&sigma).unwrap());
    }

    #[test]
    fn cyclic_weight_magnitude(sigma in prop::collection::vec(1u8..=3, 1..=30)) {
        let w = new_weight(&sigma).unwrap();
        let n = sigma.len() as u32;
        prop_assert!(w.abs() <= BigRational::from_integer(num_bigint::BigInt::from(2).pow(n - 1)));
    }
}

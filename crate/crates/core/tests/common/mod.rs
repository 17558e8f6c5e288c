#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use triplekit::factors::{jb_norm, random_element_with};
use triplekit::{Element, FactorDescriptor};

pub fn type1(max: usize) -> impl Strategy<Value = FactorDescriptor> {
    (1..=max, 1..=max).prop_map(|(m, n)| FactorDescriptor::type1(m, n).unwrap())
}

pub fn type2(max: usize) -> impl Strategy<Value = FactorDescriptor> {
    (2..=max).prop_map(|n| FactorDescriptor::type2(n).unwrap())
}

pub fn type3(max: usize) -> impl Strategy<Value = FactorDescriptor> {
    (1..=max).prop_map(|n| FactorDescriptor::type3(n).unwrap())
}

pub fn spin(max: usize) -> impl Strategy<Value = FactorDescriptor> {
    (3..=max).prop_map(|n| FactorDescriptor::spin(n).unwrap())
}

pub fn any_factor(max: usize) -> impl Strategy<Value = FactorDescriptor> {
    prop_oneof![type1(max), type2(max), type3(max), spin(max)]
}

/// Factors of rank at least two.
pub fn rank_two_factor(max: usize) -> impl Strategy<Value = FactorDescriptor> {
    prop_oneof![
        (2..=max, 2..=max).prop_map(|(m, n)| FactorDescriptor::type1(m, n).unwrap()),
        (4..=max.max(4)).prop_map(|n| FactorDescriptor::type2(n).unwrap()),
        (2..=max).prop_map(|n| FactorDescriptor::type3(n).unwrap()),
        spin(max),
    ]
}

pub fn unit_element<R: Rng + ?Sized>(f: &FactorDescriptor, rng: &mut R) -> Element {
    let x = random_element_with(f, rng);
    let n = jb_norm(&x);
    x.scale_real(1.0 / n)
}

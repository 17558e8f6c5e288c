//! Fixtures shared by the benchmarks.

use triplekit::factors::rng_from_seed;
use triplekit::tripotents::random_minimal_tripotent_with;
use triplekit::{FactorDescriptor, Tripotent};

/// Factors the benchmarks sweep over, labelled for report ids.
pub fn factors() -> Vec<(&'static str, FactorDescriptor)> {
    vec![
        ("type1_3x3", FactorDescriptor::type1(3, 3).unwrap()),
        ("type1_4x4", FactorDescriptor::type1(4, 4).unwrap()),
        ("type2_5", FactorDescriptor::type2(5).unwrap()),
        ("type3_4", FactorDescriptor::type3(4).unwrap()),
        ("spin_8", FactorDescriptor::spin(8).unwrap()),
    ]
}

pub fn minimal_pair(f: &FactorDescriptor, seed: u64) -> (Tripotent, Tripotent) {
    let mut rng = rng_from_seed(seed);
    (
        random_minimal_tripotent_with(f, &mut rng),
        random_minimal_tripotent_with(f, &mut rng),
    )
}

//! Shared inputs for the benchmarks in `benches/`.

use num_rational::BigRational;

use concordance_core::seifert::library;
use concordance_core::{find_sequence, AxisSpec, CandidateFamily, FreeWord, JSequence, SeifertMatrix};

pub fn constant(c: i64) -> BigRational {
    BigRational::from_integer(c.into())
}

/// Connected sum of `T(2,q)` for the given odd `q`.
pub fn torus_sum(qs: &[u64]) -> SeifertMatrix {
    qs.iter().fold(SeifertMatrix::unknot(), |acc, &q| acc.connected_sum(&library::torus_2(q)))
}

pub fn desk_sequence() -> JSequence {
    find_sequence(&constant(10), 2, &CandidateFamily::default_library(), 11, 3).expect("default library suffices")
}

pub fn slice_seed() -> SeifertMatrix {
    library::trefoil().connected_sum(&library::mirror_trefoil()).with_crossing_number(6)
}

/// The genus-two axes `[x1,x2], [x1,x3], [x1,x4]`.
pub fn axes() -> Vec<AxisSpec> {
    (2..=4)
        .map(|j| {
            let w = FreeWord::generator(4, 1).unwrap().commutator(&FreeWord::generator(4, j).unwrap());
            AxisSpec::new(format!("eta{}", j - 1), w, 2, None).unwrap()
        })
        .collect()
}

/// `[[x1,x2],[x3,x4]]^n` in rank 4.
pub fn long_word(n: usize) -> FreeWord {
    let g = |i| FreeWord::generator(4, i).unwrap();
    let c = g(1).commutator(&g(2)).commutator(&g(3).commutator(&g(4)));
    (0..n).fold(FreeWord::identity(4), |acc, _| acc.mul(&c))
}

#![allow(dead_code)]

use nilmult::linalg::SparseVec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// Deterministic proptest configuration: fixed seed, no persistence files.
pub fn seeded(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Sparse vectors in `Q^dim` with at most `nnz` small integer entries.
pub fn sparse_vec(dim: usize, nnz: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec((0..dim, -4i64..=4), 0..=nnz).prop_map(|pairs| {
        let mut v = SparseVec::new();
        for (i, c) in pairs {
            v.add_scaled(&nilmult::linalg::rat(c), &SparseVec::unit(i));
        }
        v
    })
}

pub const CATALOG: &[&str] = &["H(1)", "H(2)", "H(3)", "L4_3", "L5_5", "L5_8"];

/// Catalog entries and their sums with `A(1)` and `A(2)`.
pub fn corpus() -> Vec<String> {
    let mut out = Vec::new();
    for name in CATALOG {
        out.push(name.to_string());
        out.push(format!("{name}+A(1)"));
        out.push(format!("{name}+A(2)"));
    }
    out
}

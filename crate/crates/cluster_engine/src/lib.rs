//! Generalized cluster patterns in the sense of Chekhov and Shapiro: seeds
//! `(x, B, D)` whose exchange polynomials have degree `d_k`, mutated along
//! words in the `n`-regular tree. Cluster variables are kept as explicit
//! Laurent polynomials in the initial cluster.

mod error;
mod matrix;
mod seed;
mod walk;

pub use error::ClusterError;
pub use matrix::{mutate_matrix, ExchangeMatrix, MutationDiagonal};
pub use seed::{
    apply_word, mutate_seed, specialize_ones, specialize_triple, MutationWord, Pattern, Seed,
    SeedRecord,
};
pub use walk::{check_words, t3_prime_words, walk_check, WalkReport, WordCheckReport};

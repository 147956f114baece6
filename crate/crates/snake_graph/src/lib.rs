//! Snake graphs for arcs on the once-punctured sphere with three orbifold
//! points of order 3, triangulated by one ordinary triangle and three
//! monogons. Perfect matchings of the snake graph give the arc's cluster
//! variable; a sign rule on its edges gives a continued fraction whose
//! numerator counts the matchings.

mod arc;
pub mod cover;
mod error;
mod expansion;
mod graph;
mod matching;
mod signs;

pub use arc::{cross_monomial, ArcDescriptor, Crossing, Label, Passage};
pub use error::SnakeError;
pub use expansion::{
    cluster_variable_of_arc, expansion_numerator, numerator_matching_check, validate_arc,
    ArcWitness, NumeratorReport,
};
pub use graph::{build_snake_graph, Edge, Side, SnakeGraph, SnakeRecord, Step, Tile, Vertex};
pub use matching::{
    count_matchings, enumerate_matchings, for_each_matching, weight_polynomial, PerfectMatching,
};
pub use signs::{
    check_sign_rules, continued_fraction, evaluate_cf, sign_assignment, sign_sequence,
    ContinuedFraction, Sign, SignAssignment, SignSequence,
};

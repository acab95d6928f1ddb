//! Exact computation of Weyl polytope sums, Demazure operators and Lie
//! characters for `A_n`, `C2` and `G2`.
//!
//! Weights are integer vectors of Dynkin labels and formal sums have
//! arbitrary-precision integer coefficients, so every comparison is exact.

pub mod brion;
pub mod cli;
pub mod demazure;
pub mod error;
pub mod expansion;
pub mod formal_sum;
mod linalg;
pub mod root_system;
pub mod verify;
pub mod weyl;

pub use brion::{
    brion_coefficient, brion_oracle, cone_terms, lattice_box, polytope_sum, weight_system,
    BrionCones, ConeTerm, Method, PolytopeSumReport,
};
pub use demazure::{
    brion_demazure_product, brion_rank2, character_demazure, demazure, demazure_along_word,
    demazure_w, generalized_demazure, modified_demazure, parse_operator_expression, Atom,
    OperatorWord,
};
pub use error::{Error, Result};
pub use expansion::{
    character_weyl_division, polytope_expansion, weight_multiplicity, PolytopeExpansion,
};
pub use formal_sum::{apply_weyl, FormalSum, GroupAlgebraElement};
pub use linalg::Rational;
pub use root_system::{AlgebraId, Family, RootSystem, Weight};
pub use weyl::{
    enumerate_group, longest_element, orbit, s_elem, verify_weyl_sum_lemma, w_elem, WeylElement,
};

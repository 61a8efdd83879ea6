//! Report shapes emitted by subcommands that have no core type of their own.

use serde::{Deserialize, Serialize};

use diamlab::gf::FieldSpec;
use diamlab::wire::MatrixJson;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldReport {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub modulus: Vec<u64>,
    pub modulus_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingerReport {
    pub field: FieldSpec,
    pub d: usize,
    pub polynomial: String,
    pub coeffs: Vec<Vec<u64>>,
    pub root_order: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveReport {
    pub group_order: usize,
    pub diameter: usize,
    pub generating_sets: usize,
    /// Indices into the BFS enumeration of the group.
    pub worst_set: Vec<usize>,
    /// Shortest words for the elements of `worst_set` over the input generators.
    pub worst_words: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub group_order: usize,
    pub class_size: usize,
    pub kmax: usize,
    pub covering_number: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowDegReport {
    pub word: String,
    pub length: usize,
    pub matrix: MatrixJson,
    pub charpoly: String,
    pub charpoly_coeffs: Vec<Vec<u64>>,
    pub degree: usize,
    pub explored: usize,
    /// `q^(n d)` with `d` the total target degree.
    pub budget: String,
}

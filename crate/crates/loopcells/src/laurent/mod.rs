//! Exact rational Laurent polynomials and matrices over them, loop-group
//! membership predicates, and Iwahori-Bruhat cell extraction.

mod cell;
mod matrix;
mod parse;
mod poly;

pub use cell::{extract_cell, extract_cell_mod};
pub use matrix::{membership, LaurentMatrix, Subgroup};
pub use parse::{parse_matrix_auto, parse_matrix_text};
pub use poly::LaurentPoly;

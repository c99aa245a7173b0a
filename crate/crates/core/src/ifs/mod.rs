//! One-mode interacting Fock space: weights, field vectors, ladder operators and
//! coherent vectors.

mod coherent;
mod field;
mod weights;

pub use coherent::{coherent_vector, initial_amplitudes, CoherentSpec, CoherentStyle, TAIL_LIMIT};
pub use field::FieldVector;
pub use weights::{parse_table_values, q_bracket, WeightFamily, WeightSequence, DEFAULT_N_MAX, TABLE_MARGIN};

//! Infinite words, 1-indexed: sources, first occurrences and factorisations.

mod factorisation;
mod occurrence;
mod source;

pub use factorisation::{
    block_subfactorisation, check_periodicity_witness, has_standard_positions, standardise,
    Factorisation, PeriodicityWitness, Standardisation,
};
pub use occurrence::{
    first_occurrence, FirstOccurrence, Occurrence, OccurrenceIndex, OccurrenceOracle, Scan,
};
pub use source::{is_letter, Letter, Morphic, WordSource};

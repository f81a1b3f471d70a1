//! Binary-representation diagnostics: digit geometry, joint labellings, carry
//! regions, fragments, centres and sequence classification.

mod digits;
mod fragments;
mod sequence;

pub use digits::{
    carry_region, digit_bounds, first_digit, first_three_digits, intervals, jumps,
    label_positions, last_digit, readout, right_to_left_disjoint, support, CarryRegion, Label,
    LowWindow,
};
pub use fragments::{
    centre, check_fragment_pair, common_fragment_count, common_fragments, fragments, Centre,
    Fragment, FragmentSide, Side,
};
pub use sequence::{
    block_subsequence, classify, is_type_a, is_type_a_bounds, j_sequence, middle,
    overlapping_zone, Middle, PositionRange, SeqClass, SeqKind,
};

pub(crate) use sequence::check_cuts;

//! Generalized Cantor sets `C(b, D)`.

mod digits;
mod enumerate;
mod expansion;

pub use digits::{DigitSet, DigitSetSummary};
pub use enumerate::{
    count_members_up_to, count_summary, enumerate_members, enumerate_s_integers, members_with_denominator,
    smooth_numbers, CountSummary, EndpointConvention, SIntegerCertificate,
};
pub use expansion::{expand, member, preperiod_length, Expansion};

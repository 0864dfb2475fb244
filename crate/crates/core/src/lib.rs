//! Symbolic dynamics of tent maps: the unimodal order on binary sequences,
//! the height function, forward and backward admissibility of bi-infinite
//! itineraries, and an exact rational tent-map oracle.

pub mod admissibility;
pub mod biseq;
pub mod error;
pub mod height;
mod order;
pub mod seq;
pub mod tent;
pub mod text;
pub mod word;

pub use biseq::{distinct_shifts, BiSeqEP, ShiftClasses, ShiftFamily, ShiftWindow};
pub use error::{ParseError, SeqError};
pub use seq::{canonicalize, is_shift_maximal, unimodal_cmp, SeqEP};
pub use text::{format_seq, parse_seq, Parsed};
pub use word::Word;
pub use admissibility::{
    backward_admissible, backward_admissible_prefix, classify, classify_prefix, forward_admissible,
    forward_admissible_prefix, forward_point_admissible, max_backward_itinerary, validate_kappa, Condition, Kappa,
    KneadingType, PrefixClass, PrefixVerdict, Verdict,
};
pub use height::{
    c_word, decompose_at_height, height, height_bracket, infimal_heights, k_seq, lhe_rhe, parse_fraction, w_words,
    Fraction, HeightBracket, HeightWords,
};
pub use tent::{make_tent, KneadingResult, Realization, TentMap};

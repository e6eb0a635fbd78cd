//! Element arithmetic for the lamplighter group `H` and its ascending HNN
//! extension `G` along `alpha`.

mod g;
mod h;
mod lamps;
mod presentation;
pub mod random;
mod word;

pub use g::{AbelianImage, ElementOrder, GElement};
pub use h::HElement;
pub use lamps::LampConfig;
pub use presentation::{
    abelianization_of_presentation, check_presentation, lamp_word, Abelianization, Presentation, PresentationReport,
    RelationCheck, Relator, DEFAULT_RELATION_BOUND,
};
pub use word::{commutator, g_eval_word, h_eval_word, invert, parse_word, power, Letter, Word};

//! Jack polynomials, θ tables, Jack characters and p₁-Pieri coefficients.

mod characters;
mod pieri;
mod table;

pub use characters::{
    irr_character, irr_character_at, irr_character_f64, irr_character_in, irr_character_in_at,
    normalized_character, normalized_character_at,
};
pub use pieri::{pieri_p1, pieri_p1_at, pieri_p1_f64, pieri_p1_oracle_at, RatFunA};
pub use table::{jack_in_p, theta, ThetaAt, ThetaTable, CACHE_ENV, DEFAULT_SYMBOLIC_CAP};

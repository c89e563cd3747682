//! Cumulants of characters and of functions on Young diagrams, and the
//! approximate-factorization diagnostics built from them.

mod afp;
mod constants;
mod family;
mod functions;
mod setpart;

pub use afp::{
    cond_a_sequence, cond_b_sequence, cond_c_sequence, cond_d_sequence, enhanced_afp_fit,
    least_squares_fit, limit_free_cumulants, AfpReport, Condition, EnhancedAfpReport, Fit,
    RefinedConstant,
};
pub use constants::{constant_transforms, ConstantSeq, ConstantTransforms, ExactTransforms};
pub use family::{rectangle_side, AlphaRule, AlphaValue, CharacterFamily, FamilyKind, SpecGenerator};
pub use functions::{
    classical_cumulant, classical_cumulant_at, classical_cumulant_exact, disjoint_cumulant,
    disjoint_cumulant_at, partition_cumulant, partition_cumulant_at, AlphaPoint, PolyFn,
    ENUMERATION_CAP,
};
pub use setpart::{mobius_cumulant, set_partitions};

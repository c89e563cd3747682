//! Kerov polynomials: Ch_l as a polynomial in γ and free cumulants.

mod graded;
mod lemmas;
mod oracle;
mod perms;

pub use graded::{GradedPolynomial, KerovMonomial};
pub use lemmas::{
    carleman_check, free_cumulant_growth, free_cumulant_growth_check, permutation_length_census,
    CensusReport, FamilyGrowthReport, GrowthReport, Support, CENSUS_CAP,
};
pub use oracle::{
    eval_at_partition, kerov_expansion_oracle, kerov_expansion_oracle_report, monomials_up_to,
    OracleReport, ORACLE_CAP, ORACLE_SIZE_CAP,
};
pub use perms::{
    all_permutations, cycle_count, cycles, gamma_linear_candidate, identity, is_expander,
    perm_length, top_degree_formula, transitive_pair_classes, PairClass, Perm, PermutationPair,
    PAIR_CLASS_CAP,
};
pub(crate) use perms::{class_expanders, weightings};

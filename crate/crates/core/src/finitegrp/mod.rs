//! Finite matrix groups over `Z/l^m`: elementary matrices, transvection
//! closures, congruence kernels, normal subgroups, element orders, the dual
//! action on characters of an abelian normal subgroup, and irreducible
//! character degrees.
//!
//! Everything here is exhaustive and exact, so it is only practical for
//! groups up to a few tens of thousands of elements.

use thiserror::Error;

mod characters;
mod congruence;
mod dual;
pub mod golden;
mod group;
mod matrix;
pub mod modarith;
mod normal;
mod order;

pub use characters::{character_degrees, degree_difference, CharacterDegrees};
pub use congruence::{congruence_kernel, KernelReport};
pub use dual::{abelian_invariants, dual_action, AbelianStructure, DualActionReport, DualCharacter};
pub use group::{
    all_transvections, closure, group_order, special_linear, unit_transvections, GroupSet,
};
pub use matrix::{conj_transvection, elem_diag, elem_transvection, ConjTransvection, ModMatrix};
pub use normal::{normal_subgroups, verify_local_normal_structure, LocalNormalReport};
pub use order::{general_linear_elements, order_dichotomy, order_profile, DichotomyReport, OrderProfile};

/// Largest group handled by class-based computations.
pub const CLASS_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{value} is not a unit modulo {modulus}")]
    NonUnit { value: u64, modulus: u64 },
    #[error("transvection needs i != j, got i = j = {0}")]
    IndexClash(usize),
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrices disagree in size or modulus")]
    ShapeMismatch,
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group would exceed the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("singular matrix {0}")]
    SingularInput(String),
    #[error("closure needs at least one generator")]
    EmptyGenerators,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("class-algebra eigenspaces did not split into lines: {0}")]
    SplitFailure(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl GroupError {
    pub fn name(&self) -> &'static str {
        match self {
            Self::NonUnit { .. } => "NonUnit",
            Self::IndexClash(_) => "IndexClash",
            Self::IndexOutOfRange { .. } => "IndexOutOfRange",
            Self::ShapeMismatch => "ShapeMismatch",
            Self::InvalidModulus(_) => "InvalidModulus",
            Self::NotPrime(_) => "NotPrime",
            Self::CapExceeded { .. } => "CapExceeded",
            Self::SingularInput(_) => "SingularInput",
            Self::EmptyGenerators => "EmptyGenerators",
            Self::NotNormal => "NotNormal",
            Self::NotAbelian => "NotAbelian",
            Self::SplitFailure(_) => "SplitFailure",
            Self::Precondition(_) => "Precondition",
        }
    }
}

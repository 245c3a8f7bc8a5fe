//! Singular points: the singularity `η(v)`, normal forms, the lattice `L_η`
//! of derived tableaux with its `U`-action, and the modules `V(T(v))`.

mod evaluate;
mod lattice;
mod profile;

pub use evaluate::{
    delta_eps_diagnostic, fingerprints_distinct, gamma_action_on_eigenspace, support_window, EigenspaceAction,
    EvaluatedLattice, SupportEntry,
};
pub use lattice::{derived_basis_at, derived_basis_window, DerivedTableau, DerivedVector, Lattice};
pub use profile::{is_fully_critical, is_normal_form, normalize, singularity, Normalization, SingularityProfile};

//! Operations on short GFs: evaluation at 1, substitutions, Hadamard products, boolean set
//! operations, norms, projections and τ-compression.

mod eps;
mod subst;

pub use eps::{bernoulli, evaluate_at_one, evaluate_at_one_seeded, EpsSeries};
pub use subst::{substitute_monomials, substitute_with_limits, substitute_with_limits_seeded, SubstMatrix};
mod compress;
mod hadamard;
mod ops;
mod oracle_ops;

pub use compress::{choose_tau, compress, decompress, TauMap};
pub use hadamard::{hadamard, monomial_hadamard, tau_hadamard};
pub use ops::{boolean_combine, coefficient, complement_in_box, count, norm, proj_member, BoolMode, NormResult, VALIDATE_LIMIT};
pub use oracle_ops::{minkowski_oracle, oracle_project, oracle_project_limited, project_points, ProjectMode};

#[cfg(test)]
mod tests;

//! Recurrence post-processing: verification, guessing, order reduction,
//! Θ-operators, singularities and the elliptic pipeline.

pub mod elliptic;
pub mod guess;
pub mod reduce;
pub mod singular;
pub mod theta;
pub mod verify;

pub use elliptic::elliptic_pf;
pub use guess::guess_recurrence;
pub use reduce::shift_reduce;
pub use singular::{partial_fractions, singularities, SingularityReport};
pub use theta::{annihilation_check, from_theta_operator, to_theta_operator, ThetaOperator};
pub use verify::{verify_recurrence, VerifyReport};

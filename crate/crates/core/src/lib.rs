//! Depolarizing-noise thresholds for single-qubit gates, measured against the
//! polytope of Clifford rotations in SO(3).
//!
//! A single-qubit unitary acts on Bloch vectors as a rotation `R ∈ SO(3)`.
//! The 24 signed permutation matrices with determinant one (the Clifford
//! rotations) span a polytope cut out by 120 integer facets. A noisy gate
//! `(1-p)R` lies inside iff `max_F R·F ≤ 1/(1-p)`, which gives the tight
//! threshold `p* = 1 - 1/max_F R·F`.
//!
//! ```
//! use clifford_polytope::{threshold, Rotation3};
//! let t = Rotation3::about_axis([0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_4).unwrap();
//! let rep = threshold(&t);
//! assert!((rep.p_star - 0.45308).abs() < 1e-5);
//! ```

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod clifford;
pub mod decompose;
pub mod error;
pub mod facets;
pub mod pauli;
pub mod postselect;
pub mod sampling;
pub mod simplex;
pub mod so3;
pub mod threshold;
pub mod verify;

pub use clifford::{CliffordElement, CliffordGroup, IntMat3};
pub use decompose::{decompose, membership_cross_check, Agreement, Decomposition};
pub use error::{Error, Result};
pub use facets::{polytope_membership, Facet, FacetKind, FacetSet, Membership};
pub use pauli::Pauli;
pub use postselect::{postselect_oracle, BlochVector, Outcome, TwoQubitPauli};
pub use so3::{depolarize, rotation_from_angles, rotation_from_unitary, GateAngles, Mat3, Rotation3, Unitary2};
pub use threshold::{threshold, threshold_from_angles, SurveyGrid, ThresholdReport};
pub use verify::{run_verification, VerificationReport, VerifyConfig};

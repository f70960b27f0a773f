//! Prediction and verification of quartic-power congruences for Lucas
//! sequences.
//!
//! For a prime `p = 1 (mod 4)` and an integer `b != 0`, let `d = b^2 + 4`
//! (b odd) or `d = b^2/4 + 1` (b even). When `(d/p) = 1` and `p` is
//! represented by the principal form, write `p = x^2 + d y^2 = u^2 + v^2`
//! with `u = 1 (mod 4)` and the odd parts of `x`, `y`, `v` all `= 1
//! (mod 4)`. Case tables keyed only on congruence data of `b, x, y, u, v`
//! then pin down `U_{(p-1)/4}(b, -1)` and `V_{(p-1)/4}(b, -1)` mod `p`,
//! one of which always vanishes.
//!
//! The crate implements the tables, the representation solvers, the
//! residue-level fourth-root-of-unity bookkeeping they are equivalent to,
//! a general-quadratic-form construction producing scaled identities
//! `a' p = X^2 + d Y^2 = U^2 + V^2`, and a sweep harness that verifies
//! all of it against direct Lucas evaluation over exhaustive ranges.

pub mod harness;
pub mod lucas;
pub mod modarith;
pub mod oracle;
pub mod quartic;
pub mod represent;
pub mod sieve;

pub use harness::{sweep, verify_one, ReportFormat, SweepReport, SweepSpec, VerifyRecord};
pub use lucas::{lucas_uv_exact, lucas_uv_mod, LucasPair, LucasParams};
pub use modarith::{is_prime_u64, PrimeField};
pub use oracle::{classify, eta_to_uv, predict, predict_eta, CaseId, Conjecture, Mu4, Prediction};
pub use quartic::{
    extract_eta, reconstruct_from_eta, scale_representation, Embedding, GeneralForm,
    ScaledRepresentation,
};
pub use represent::{
    cornacchia, gate, normalize, two_squares, NormalizedRep, ParityClass, Representation,
    SkipReason,
};

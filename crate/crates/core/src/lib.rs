//! Exact and numeric linear algebra for real Seifert form pairs, isometric
//! triples, Steenbrink (P)MHS, and the pairings that connect them.
//!
//! The crate is organized in layers:
//!
//! * [`linalg`] — complex/rational matrix substrate: Jordan-type
//!   decompositions of automorphisms, subspace arithmetic, signatures.
//! * [`seifert`] — Seifert form pairs, their monodromy, the six derived
//!   bilinear forms, duals and intersection forms.
//! * [`classify`] — normal-form generators and the classification of
//!   isometric triples and Seifert form pairs into irreducible types.
//! * [`hodge`] — filtrations, monodromy weight filtrations, Deligne
//!   splittings, Steenbrink PMHS validation, spectral pairs and ladders.
//! * [`gamma_twist`] — the Gamma-matrix automorphism G, normalized Seifert
//!   forms, the identities connecting S and L^nor, and the square-root
//!   Tate twist.
//! * [`flbundle`] — elementary sections, Fourier-Laplace transforms, the
//!   flat pairing P, and Hodge filtrations from lattice data.
//! * [`thomseb`] — tensor/suspension operations on TEZP data and the
//!   corrected Thom-Sebastiani formula for twisted Hodge filtrations.
//! * [`io`] — JSON schemas shared with the command line front end.

pub mod classify;
pub mod error;
pub mod flbundle;
pub mod gamma_twist;
pub mod hodge;
pub mod io;
pub mod linalg;
pub mod seifert;
pub mod special;
pub mod thomseb;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Numeric tolerances used throughout the crate.
///
/// `tol` governs linear-algebra rank/equality decisions, `cluster` the
/// grouping of numerically computed eigenvalues. Both are overridable from
/// the CLI.
#[derive(Debug, Clone, Copy)]
pub struct Tol {
    pub tol: f64,
    pub cluster: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { tol: 1e-9, cluster: 1e-6 }
    }
}

impl Tol {
    pub fn new(tol: f64, cluster: f64) -> Self {
        Tol { tol, cluster }
    }
}

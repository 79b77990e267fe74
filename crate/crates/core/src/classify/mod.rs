//! Classification of isometric triples and Seifert form pairs into
//! multisets of irreducible normal forms, plus the signature table of the
//! symmetric form I_s per irreducible Seifert type.

mod algorithm;
mod models;
mod types;

pub use algorithm::{classify_seifert, classify_triple};
pub use models::{e_per, j_lower, model_seifert, model_triple};
pub use types::{Decomposition, IsoType, SeifType, UnitValue};

use crate::linalg::QMat;
use crate::{Error, Result};

/// Signature (p, q, r) of I_s for an irreducible Seifert form pair type,
/// and the type of the isometric triple (H_R, M, I_s) when I_s is
/// nondegenerate. Pure table lookup.
pub fn signature_of_seif_type(t: &SeifType) -> Result<((usize, usize, usize), Option<IsoType>)> {
    t.check_canonical()?;
    let out = match t {
        SeifType::Seif1 { lambda, n, eps } => {
            let n = *n;
            if *lambda == 1 {
                // n odd; split on n mod 4 vs eps
                let e = *eps as i64;
                let tr = IsoType::Tr1 { lambda: 1, n, eps: *eps };
                if (n as i64 - e).rem_euclid(4) == 0 {
                    (((n + 1) / 2, 0, (n - 1) / 2), Some(tr))
                } else {
                    (((n - 1) / 2, 0, (n + 1) / 2), Some(tr))
                }
            } else {
                // lambda = -1, n even; radical has dimension 1
                let e = *eps as i64;
                if (n as i64 - 1 - e).rem_euclid(4) == 0 {
                    ((n / 2, 1, (n - 2) / 2), None)
                } else {
                    (((n - 2) / 2, 1, n / 2), None)
                }
            }
        }
        SeifType::Seif2Pm { lambda, n } => {
            let n = *n;
            if *lambda == 1 {
                ((n, 0, n), Some(IsoType::Tr2S1 { lambda: UnitValue::one(), n, m: 0, eps: 1 }))
            } else {
                ((n - 1, 2, n - 1), None)
            }
        }
        SeifType::Seif2Circle { lambda, n, zeta } => {
            let n = *n;
            // zeta0 = ((conj lambda + 1)/|lambda + 1|) i^{n+1}; the stored zeta
            // is zeta0 * eps with eps = +-1
            let zeta0 = types::zeta_base(lambda.value(), n);
            let ratio = zeta.value() / zeta0;
            let eps: i8 = if (ratio - num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-6 {
                1
            } else if (ratio + num_complex::Complex64::new(1.0, 0.0)).norm() < 1e-6 {
                -1
            } else {
                return Err(Error::NonCanonicalType(format!(
                    "zeta {} is not +-zeta0 for lambda {}",
                    zeta.value(),
                    lambda.value()
                )));
            };
            let tr = Some(IsoType::Tr2S1 { lambda: lambda.clone(), n, m: 0, eps });
            if n % 2 == 0 {
                ((n, 0, n), tr)
            } else if eps == 1 {
                ((n - 1, 0, n + 1), tr)
            } else {
                ((n + 1, 0, n - 1), tr)
            }
        }
        SeifType::Seif2Real { lambda, n } => {
            ((*n, 0, *n), Some(IsoType::Tr2R { lambda: *lambda, n: *n, m: 0 }))
        }
        SeifType::Seif4 { lambda, n } => {
            ((2 * n, 0, 2 * n), Some(IsoType::Tr4 { lambda: *lambda, n: *n, m: 0 }))
        }
    };
    Ok(out)
}

/// Exact monodromy of a rational Gram matrix, M = (G^t)^{-1} G.
pub fn monodromy_exact(gram: &QMat) -> Result<QMat> {
    gram.monodromy().ok_or(Error::SingularGram)
}

use num_complex::Complex64;

use super::types::{zeta_base, Decomposition, IsoType, SeifType, UnitValue};
use crate::linalg::{
    cx, hermitian_signature, jordan_block_counts, jordan_chains, signature, AutomorphismParts,
    CMat, CVec, Subspace,
};
use crate::seifert::{IsometricTriple, SeifertPair};
use crate::{Error, Result, Tol};

/// The canonical eigenvalue sectors of Eqs (2.6)-(2.9): {1}, {-1},
/// conjugate pairs on the circle, real hyperbolic pairs, and quadruples.
enum Sector {
    One(usize),
    MinusOne(usize),
    /// index of the Im > 0 member
    Circle(usize),
    /// index of the |lambda| > 1 member
    RealHyperbolic(usize),
    /// index of the |lambda| > 1, Im > 0 member
    Quad(usize),
}

fn find_partner(
    parts: &AutomorphismParts,
    target: Complex64,
    tols: Tol,
) -> Result<usize> {
    parts
        .groups
        .iter()
        .position(|g| (g.lambda - target).norm() < tols.cluster * (1.0 + target.norm()))
        .ok_or_else(|| {
            Error::ClusterAmbiguity(format!("missing partner eigenvalue near {target}"))
        })
}

/// Partition the eigen groups into canonical sectors, pairing conjugates
/// and inverses.
fn partition(parts: &AutomorphismParts, tols: Tol) -> Result<Vec<Sector>> {
    let mut used = vec![false; parts.groups.len()];
    let mut sectors = Vec::new();
    for (i, g) in parts.groups.iter().enumerate() {
        if used[i] {
            continue;
        }
        let lam = g.lambda;
        let on_circle = (lam.norm() - 1.0).abs() < tols.cluster;
        let real = lam.im.abs() < tols.cluster;
        if on_circle && real && lam.re > 0.0 {
            used[i] = true;
            sectors.push(Sector::One(i));
        } else if on_circle && real {
            used[i] = true;
            sectors.push(Sector::MinusOne(i));
        } else if on_circle {
            let j = find_partner(parts, lam.conj(), tols)?;
            if parts.groups[j].space.dim() != g.space.dim() {
                return Err(Error::ClusterAmbiguity(
                    "conjugate eigenspaces have different dimensions".into(),
                ));
            }
            used[i] = true;
            used[j] = true;
            let pos = if lam.im > 0.0 { i } else { j };
            sectors.push(Sector::Circle(pos));
        } else if real {
            let j = find_partner(parts, 1.0 / lam, tols)?;
            used[i] = true;
            used[j] = true;
            let big = if lam.norm() > 1.0 { i } else { j };
            sectors.push(Sector::RealHyperbolic(big));
        } else {
            let j = find_partner(parts, 1.0 / lam, tols)?;
            let k = find_partner(parts, lam.conj(), tols)?;
            let l = find_partner(parts, 1.0 / lam.conj(), tols)?;
            for idx in [i, j, k, l] {
                used[idx] = true;
            }
            let canonical = [i, j, k, l]
                .into_iter()
                .find(|&idx| {
                    let v = parts.groups[idx].lambda;
                    v.norm() > 1.0 && v.im > 0.0
                })
                .ok_or_else(|| Error::ClusterAmbiguity("quadruple without canonical member".into()))?;
            sectors.push(Sector::Quad(canonical));
        }
    }
    Ok(sectors)
}

fn bilinear(s: &CMat, a: &CVec, b: &CVec) -> Complex64 {
    (a.transpose() * s * b)[(0, 0)]
}

/// Group jordan chains by block size, returning for each size the list of
/// chain tops together with the subspace data needed for quotient forms:
/// the obstruction K_{n-1} + (Im N intersect K_n).
struct SizeData {
    size: usize,
    tops: Vec<CVec>,
    obstruction: Subspace,
}

fn chain_data(
    n_mat: &CMat,
    domain: &Subspace,
    tols: Tol,
) -> Result<Vec<SizeData>> {
    let chains = jordan_chains(n_mat, domain, tols.tol)?;
    let ambient = domain.ambient_dim();
    let mut sizes: Vec<usize> = chains.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut out = Vec::new();
    for &n in &sizes {
        let tops: Vec<CVec> =
            chains.iter().filter(|c| c.len() == n).map(|c| c[0].clone()).collect();
        // obstruction: spanned by all chain vectors of height < n (i.e. the
        // lower part of every chain) plus images N(K_{n+1}-part): concretely
        // every chain vector except the tops of size-exactly-n chains, that
        // lies in K_n.
        let mut vecs: Vec<CVec> = Vec::new();
        for c in &chains {
            let s = c.len();
            for (j, v) in c.iter().enumerate() {
                let height = s - j;
                if height < n || (height == n && s > n) {
                    vecs.push(v.clone());
                }
            }
        }
        let obstruction = Subspace::span(ambient, &vecs, tols.tol);
        out.push(SizeData { size: n, tops, obstruction });
    }
    Ok(out)
}

/// Select `count` real vectors from the Re/Im parts of `tops` that are
/// independent modulo `obstruction`.
fn real_top_basis(
    tops: &[CVec],
    obstruction: &Subspace,
    count: usize,
    tols: Tol,
) -> Result<Vec<CVec>> {
    let ambient = obstruction.ambient_dim();
    let mut picked: Vec<CVec> = Vec::new();
    let mut span = obstruction.clone();
    let mut candidates: Vec<CVec> = Vec::new();
    for v in tops {
        candidates.push(v.map(|z| cx(z.re, 0.0)));
        candidates.push(v.map(|z| cx(z.im, 0.0)));
    }
    for w in candidates {
        if picked.len() == count {
            break;
        }
        let norm = w.norm();
        if norm < tols.tol {
            continue;
        }
        let resid = span.reject(&w);
        if resid.norm() > 1e-6 * norm {
            span = span.sum(&Subspace::span(ambient, &[w.clone()], tols.tol), tols.tol);
            picked.push(w);
        }
    }
    if picked.len() != count {
        return Err(Error::InconsistentParity(format!(
            "found {} real top representatives, expected {count}",
            picked.len()
        )));
    }
    Ok(picked)
}

/// Classify the lambda = +-1 sector of an isometric structure given by the
/// Gram matrix `s` with parity `m`, pushing results into `out`.
///
/// For each Jordan size n: if n+m+1 is even, the real form
/// S_res(a, b) = S(a, N^{n-1} b) on the top quotient determines signs of
/// Tr(lambda, 1, n, eps) summands; if odd, the sector contributes
/// (#tops)/2 copies of Tr(lambda, 2, n, m, 1).
fn classify_pm_one_sector(
    s: &CMat,
    m: u8,
    parts: &AutomorphismParts,
    group_idx: usize,
    out: &mut Decomposition<IsoType>,
    tols: Tol,
) -> Result<()> {
    let g = &parts.groups[group_idx];
    let lam_sign: i8 = if g.lambda.re > 0.0 { 1 } else { -1 };
    let data = chain_data(&parts.nilpotent, &g.space, tols)?;
    for sd in data {
        let n = sd.size;
        let count = sd.tops.len();
        if (n + m as usize + 1) % 2 == 0 {
            let w = real_top_basis(&sd.tops, &sd.obstruction, count, tols)?;
            let mut npow = CMat::identity(s.nrows(), s.nrows());
            for _ in 0..n - 1 {
                npow = &npow * &parts.nilpotent;
            }
            let gram = CMat::from_fn(count, count, |i, j| bilinear(s, &w[i], &(&npow * &w[j])));
            let (p, q, r) = signature(&gram, 1e-7)?;
            if q != 0 {
                return Err(Error::InconsistentParity(format!(
                    "degenerate S_res on size-{n} tops at lambda = {lam_sign}"
                )));
            }
            out.push(IsoType::Tr1 { lambda: lam_sign, n, eps: 1 }, p);
            out.push(IsoType::Tr1 { lambda: lam_sign, n, eps: -1 }, r);
        } else {
            if count % 2 != 0 {
                return Err(Error::InconsistentParity(format!(
                    "odd number of size-{n} blocks in an irreducible pair sector"
                )));
            }
            let lambda = if lam_sign == 1 { UnitValue::one() } else { UnitValue::minus_one() };
            out.push(IsoType::Tr2S1 { lambda, n, m, eps: 1 }, count / 2);
        }
    }
    Ok(())
}

/// Classify a circle sector (lambda not real): the hermitian form
/// (-i)^{n+m+1} S(a, N^{n-1} conj b) on size-n tops of H_lambda determines
/// the multiplicities of Tr(lambda, 2, n, m, +-1).
fn classify_circle_sector(
    s: &CMat,
    m: u8,
    parts: &AutomorphismParts,
    group_idx: usize,
    out: &mut Decomposition<IsoType>,
    tols: Tol,
) -> Result<()> {
    let g = &parts.groups[group_idx];
    let lambda = UnitValue::from_complex(g.lambda, tols.cluster);
    let data = chain_data(&parts.nilpotent, &g.space, tols)?;
    for sd in data {
        let n = sd.size;
        let count = sd.tops.len();
        let phase = cx(0.0, -1.0).powu(((n + m as usize + 1) % 4) as u32);
        let mut npow = CMat::identity(s.nrows(), s.nrows());
        for _ in 0..n - 1 {
            npow = &npow * &parts.nilpotent;
        }
        let gram = CMat::from_fn(count, count, |i, j| {
            phase * bilinear(s, &sd.tops[i], &(&npow * sd.tops[j].map(|z| z.conj())))
        });
        let (p, q, r) = hermitian_signature(&gram, 1e-7)?;
        if q != 0 {
            return Err(Error::InconsistentParity(format!(
                "degenerate S_res,1 on size-{n} tops at lambda = {}",
                g.lambda
            )));
        }
        for (eps, mult) in [(1i8, p), (-1, r)] {
            if mult > 0 {
                out.push(IsoType::Tr2S1 { lambda: lambda.clone(), n, m, eps }, mult);
            }
        }
    }
    Ok(())
}

fn classify_structure(
    s: &CMat,
    m: u8,
    parts: &AutomorphismParts,
    sectors_filter: Option<&[usize]>,
    tols: Tol,
) -> Result<Decomposition<IsoType>> {
    let mut out = Decomposition::new();
    let sectors = partition(parts, tols)?;
    for sector in sectors {
        let canonical_idx = match &sector {
            Sector::One(i) | Sector::MinusOne(i) | Sector::Circle(i)
            | Sector::RealHyperbolic(i) | Sector::Quad(i) => *i,
        };
        if let Some(allow) = sectors_filter {
            if !allow.contains(&canonical_idx) {
                continue;
            }
        }
        match sector {
            Sector::One(i) | Sector::MinusOne(i) => {
                classify_pm_one_sector(s, m, parts, i, &mut out, tols)?
            }
            Sector::Circle(i) => classify_circle_sector(s, m, parts, i, &mut out, tols)?,
            Sector::RealHyperbolic(i) => {
                let g = &parts.groups[i];
                let counts = jordan_block_counts(&parts.nilpotent, &g.space, tols.tol)?;
                for (n, c) in counts {
                    out.push(IsoType::Tr2R { lambda: g.lambda.re, n, m }, c);
                }
            }
            Sector::Quad(i) => {
                let g = &parts.groups[i];
                let counts = jordan_block_counts(&parts.nilpotent, &g.space, tols.tol)?;
                for (n, c) in counts {
                    out.push(IsoType::Tr4 { lambda: g.lambda, n, m }, c);
                }
            }
        }
    }
    Ok(out)
}

/// Classification of an isometric triple into irreducible types.
pub fn classify_triple(t: &IsometricTriple, tols: Tol) -> Result<Decomposition<IsoType>> {
    let parts = crate::linalg::jordan_parts(&t.m_mat, tols)?;
    let out = classify_structure(&t.s_gram, t.sym, &parts, None, tols)?;
    if out.total_dim() != t.dim() {
        return Err(Error::InconsistentParity(format!(
            "classified dimension {} does not match ambient {}",
            out.total_dim(),
            t.dim()
        )));
    }
    Ok(out)
}

/// Classification of a Seifert form pair into irreducible types.
///
/// Per sector a suitable nondegenerate form from the derived family is
/// chosen (I_s away from -1, I_a at -1), the sector is classified as an
/// isometric structure, and the types are mapped through the
/// triple-to-Seifert correspondence. The sign of Seif(+-1, 1, n, eps)
/// types is cross-checked against the direct witness
/// L(a, N^{n-1} a) in eps * R_{>0}.
pub fn classify_seifert(l: &SeifertPair, tols: Tol) -> Result<Decomposition<SeifType>> {
    let m_mat = l.monodromy(tols)?;
    let parts = crate::linalg::jordan_parts(&m_mat, tols)?;
    let g = l.gram();
    let i_s = g + g.transpose();
    let i_a = g.transpose() - g;
    let mut out = Decomposition::new();

    let sectors = partition(&parts, tols)?;
    for sector in sectors {
        match sector {
            Sector::One(i) => {
                let part = classify_structure(&i_s, 0, &parts, Some(&[i]), tols)?;
                map_pm_one_types(l, &parts, i, &part, &mut out, tols)?;
            }
            Sector::MinusOne(i) => {
                let part = classify_structure(&i_a, 1, &parts, Some(&[i]), tols)?;
                map_pm_one_types(l, &parts, i, &part, &mut out, tols)?;
            }
            Sector::Circle(i) => {
                let part = classify_structure(&i_s, 0, &parts, Some(&[i]), tols)?;
                for (ty, mult) in part.items() {
                    let IsoType::Tr2S1 { lambda, n, eps, .. } = ty else {
                        return Err(Error::InconsistentParity(
                            "circle sector produced a non-circle type".into(),
                        ));
                    };
                    let zeta0 = zeta_base(lambda.value(), *n);
                    let zeta =
                        UnitValue::from_complex(zeta0 * cx(*eps as f64, 0.0), tols.cluster);
                    let seif = SeifType::Seif2Circle { lambda: lambda.clone(), n: *n, zeta }
                        .canonicalize();
                    out.push(seif, *mult);
                }
            }
            Sector::RealHyperbolic(i) => {
                let part = classify_structure(&i_s, 0, &parts, Some(&[i]), tols)?;
                for (ty, mult) in part.items() {
                    let IsoType::Tr2R { lambda, n, .. } = ty else {
                        return Err(Error::InconsistentParity(
                            "real sector produced a wrong type".into(),
                        ));
                    };
                    out.push(SeifType::Seif2Real { lambda: *lambda, n: *n }, *mult);
                }
            }
            Sector::Quad(i) => {
                let part = classify_structure(&i_s, 0, &parts, Some(&[i]), tols)?;
                for (ty, mult) in part.items() {
                    let IsoType::Tr4 { lambda, n, .. } = ty else {
                        return Err(Error::InconsistentParity(
                            "quadruple sector produced a wrong type".into(),
                        ));
                    };
                    out.push(SeifType::Seif4 { lambda: *lambda, n: *n }, *mult);
                }
            }
        }
    }

    if out.total_dim() != l.dim() {
        return Err(Error::InconsistentParity(format!(
            "classified dimension {} does not match ambient {}",
            out.total_dim(),
            l.dim()
        )));
    }
    Ok(out)
}

/// Map Tr types of a lambda = +-1 sector to Seif types: Tr(l,1,n,e) goes to
/// Seif(l,1,n,l*e) and Tr(l,2,n,m,1) to Seif(l,2,n). The Seif1 signs are
/// re-derived from the witness form L(a, N^{n-1} b) on real tops and must
/// agree with the mapped ones.
fn map_pm_one_types(
    l: &SeifertPair,
    parts: &AutomorphismParts,
    group_idx: usize,
    part: &Decomposition<IsoType>,
    out: &mut Decomposition<SeifType>,
    tols: Tol,
) -> Result<()> {
    let g = &parts.groups[group_idx];
    let lam_sign: i8 = if g.lambda.re > 0.0 { 1 } else { -1 };
    // witness signatures per block size from L directly
    let data = chain_data(&parts.nilpotent, &g.space, tols)?;
    let mut witness: std::collections::BTreeMap<usize, (usize, usize)> = Default::default();
    for sd in &data {
        let n = sd.size;
        // Seif1 parity: lambda = (-1)^{n-1}
        let seif1_branch = (lam_sign == 1 && n % 2 == 1) || (lam_sign == -1 && n % 2 == 0);
        if !seif1_branch {
            continue;
        }
        let count = sd.tops.len();
        let w = real_top_basis(&sd.tops, &sd.obstruction, count, tols)?;
        let mut npow = CMat::identity(l.dim(), l.dim());
        for _ in 0..n - 1 {
            npow = &npow * &parts.nilpotent;
        }
        let gram = CMat::from_fn(count, count, |i, j| bilinear(l.gram(), &w[i], &(&npow * &w[j])));
        let (p, q, r) = signature(&gram, 1e-7)?;
        if q != 0 {
            return Err(Error::InconsistentParity("degenerate witness form".into()));
        }
        witness.insert(n, (p, r));
    }
    for (ty, mult) in part.items() {
        match ty {
            IsoType::Tr1 { lambda, n, eps } => {
                let seif_eps = lambda * eps;
                let (p, r) = witness.get(n).copied().ok_or_else(|| {
                    Error::InconsistentParity("missing witness for Seif1 block".into())
                })?;
                let expected = if seif_eps == 1 { p } else { r };
                if expected < *mult {
                    return Err(Error::InconsistentParity(format!(
                        "witness signature disagrees with mapped type at n = {n}"
                    )));
                }
                out.push(SeifType::Seif1 { lambda: *lambda, n: *n, eps: seif_eps }, *mult);
            }
            IsoType::Tr2S1 { n, .. } => {
                out.push(SeifType::Seif2Pm { lambda: lam_sign, n: *n }, *mult);
            }
            other => {
                return Err(Error::InconsistentParity(format!(
                    "unexpected type {other} in a +-1 sector"
                )))
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::models::model_triple;
    use super::*;
    use crate::linalg::cmat_from_real_rows;

    fn tols() -> Tol {
        Tol::default()
    }

    #[test]
    fn scalar_triple() {
        let t = IsometricTriple::new(
            cmat_from_real_rows(&[vec![1.0]]),
            cmat_from_real_rows(&[vec![1.0]]),
            0,
            tols(),
        )
        .unwrap();
        let d = classify_triple(&t, tols()).unwrap();
        assert_eq!(d.items().len(), 1);
        assert!(matches!(d.items()[0], (IsoType::Tr1 { lambda: 1, n: 1, eps: 1 }, 1)));
    }

    #[test]
    fn roundtrip_tr1() {
        for lambda in [1i8, -1] {
            for n in 1..=4usize {
                for eps in [1i8, -1] {
                    let ty = IsoType::Tr1 { lambda, n, eps };
                    let t = model_triple(&ty, tols()).unwrap();
                    let d = classify_triple(&t, tols()).unwrap();
                    assert_eq!(d.items().len(), 1, "{ty}: got {d}");
                    assert!(d.items()[0].0.approx_eq(&ty, 1e-6), "{ty}: got {d}");
                    assert_eq!(d.items()[0].1, 1);
                }
            }
        }
    }

    #[test]
    fn roundtrip_tr2s1_circle() {
        let lam = UnitValue::from_beta(num_rational::Rational64::new(3, 4)); // i
        for n in 1..=3usize {
            for m in [0u8, 1] {
                for eps in [1i8, -1] {
                    let ty = IsoType::Tr2S1 { lambda: lam.clone(), n, m, eps };
                    let t = model_triple(&ty, tols()).unwrap();
                    let d = classify_triple(&t, tols()).unwrap();
                    assert_eq!(d.items().len(), 1, "{ty}: got {d}");
                    assert!(d.items()[0].0.approx_eq(&ty, 1e-6), "{ty}: got {d}");
                }
            }
        }
    }

    #[test]
    fn reducible_circle_type_splits() {
        // Tr(1, 2, n, m, eps) with n+m+1 even decomposes per Eq (2.16)
        let ty = IsoType::Tr2S1 { lambda: UnitValue::one(), n: 1, m: 0, eps: 1 };
        let t = model_triple(&ty, tols()).unwrap();
        let d = classify_triple(&t, tols()).unwrap();
        assert_eq!(d.items().len(), 1);
        let (got, mult) = &d.items()[0];
        assert!(got.approx_eq(&IsoType::Tr1 { lambda: 1, n: 1, eps: -1 }, 1e-6), "got {d}");
        assert_eq!(*mult, 2);
    }

    #[test]
    fn seifert_paper_example() {
        let l = SeifertPair::new(cmat_from_real_rows(&[vec![1.0, 0.0], vec![2.0, 1.0]]), tols())
            .unwrap();
        let d = classify_seifert(&l, tols()).unwrap();
        assert_eq!(format!("{d}"), "Seif(-1,1,2,1) x1");
    }

    #[test]
    fn seifert_scalar() {
        let l = SeifertPair::new(cmat_from_real_rows(&[vec![1.0]]), tols()).unwrap();
        let d = classify_seifert(&l, tols()).unwrap();
        assert_eq!(format!("{d}"), "Seif(1,1,1,1) x1");
    }

    #[test]
    fn seifert_t237_example() {
        let l = SeifertPair::new(
            cmat_from_real_rows(&[vec![0.0, -42.0], vec![42.0, -21.0]]),
            tols(),
        )
        .unwrap();
        let d = classify_seifert(&l, tols()).unwrap();
        assert_eq!(format!("{d}"), "Seif(-1,1,2,-1) x1");
    }
}

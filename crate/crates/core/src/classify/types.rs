use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;

use crate::linalg::TAU;
use crate::{Error, Result};

/// A point on the unit circle, with an exact angle tag when it is a root of
/// unity: `value = e^{-2 pi i beta}` with `beta` in (0, 1].
#[derive(Debug, Clone)]
pub struct UnitValue {
    value: Complex64,
    beta: Option<Rational64>,
}

impl UnitValue {
    pub fn one() -> Self {
        UnitValue { value: Complex64::new(1.0, 0.0), beta: Some(Rational64::new(1, 1)) }
    }

    pub fn minus_one() -> Self {
        UnitValue { value: Complex64::new(-1.0, 0.0), beta: Some(Rational64::new(1, 2)) }
    }

    pub fn from_beta(beta: Rational64) -> Self {
        let b = normalize_beta(beta);
        let t = (*b.numer() as f64) / (*b.denom() as f64);
        UnitValue { value: Complex64::from_polar(1.0, -TAU * t), beta: Some(b) }
    }

    /// From a numeric value assumed on the circle; tags roots of unity of
    /// order <= 200 within `cluster_tol`.
    pub fn from_complex(value: Complex64, cluster_tol: f64) -> Self {
        let v = value / Complex64::new(value.norm(), 0.0);
        let angle = -v.arg() / TAU;
        for q in 1..=200i64 {
            let p = (angle * q as f64).round() as i64;
            if (angle - p as f64 / q as f64).abs() < cluster_tol {
                let mut num = p.rem_euclid(q);
                if num == 0 {
                    num = q;
                }
                return UnitValue::from_beta(Rational64::new(num, q));
            }
        }
        UnitValue { value: v, beta: None }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn beta(&self) -> Option<Rational64> {
        self.beta
    }

    pub fn conj(&self) -> Self {
        match self.beta {
            Some(b) if b == Rational64::new(1, 1) => self.clone(),
            Some(b) => UnitValue::from_beta(Rational64::new(1, 1) - b),
            None => UnitValue { value: self.value.conj(), beta: None },
        }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.value.im.abs() < tol
    }

    pub fn approx_eq(&self, other: &UnitValue, tol: f64) -> bool {
        (self.value - other.value).norm() < tol
    }
}

fn normalize_beta(beta: Rational64) -> Rational64 {
    let one = Rational64::new(1, 1);
    let mut b = beta;
    while b <= Rational64::new(0, 1) {
        b += one;
    }
    while b > one {
        b -= one;
    }
    b.reduced()
}

pub(crate) fn zeta_base(lambda: Complex64, n: usize) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    ((lambda.conj() + 1.0) / (lambda + 1.0).norm()) * i.powu((n as u32 + 1) % 4)
}

/// Irreducible isometric triple types.
#[derive(Debug, Clone)]
pub enum IsoType {
    /// Tr(lambda, 1, n, eps): lambda in {1, -1}, one Jordan block of size n,
    /// S (-1)^{n-1}-symmetric with sign eps.
    Tr1 { lambda: i8, n: usize, eps: i8 },
    /// Tr(lambda, 2, n, m, eps): lambda on the unit circle. Canonical form
    /// has Im(lambda) > 0, or lambda = +-1 with m = n mod 2 and eps = 1.
    Tr2S1 { lambda: UnitValue, n: usize, m: u8, eps: i8 },
    /// Tr(lambda, 2, n, m): lambda real with |lambda| > 1.
    Tr2R { lambda: f64, n: usize, m: u8 },
    /// Tr(lambda, 4, n, m): |lambda| > 1, Im(lambda) > 0.
    Tr4 { lambda: Complex64, n: usize, m: u8 },
}

impl IsoType {
    pub fn dim(&self) -> usize {
        match self {
            IsoType::Tr1 { n, .. } => *n,
            IsoType::Tr2S1 { n, .. } | IsoType::Tr2R { n, .. } => 2 * n,
            IsoType::Tr4 { n, .. } => 4 * n,
        }
    }

    /// Parameter-domain validity: enough to build the model of Examples
    /// 2.6 type. Reducible lambda = +-1 circle types are allowed here.
    pub fn check_model_parameters(&self) -> Result<()> {
        match self {
            IsoType::Tr1 { lambda, n, eps } => {
                if !matches!(lambda, 1 | -1) || *n == 0 || !matches!(eps, 1 | -1) {
                    return Err(Error::NonCanonicalType(format!("{self}")));
                }
            }
            IsoType::Tr2S1 { lambda, n, m, eps } => {
                if *n == 0 || *m > 1 || !matches!(eps, 1 | -1) {
                    return Err(Error::NonCanonicalType(format!("{self}")));
                }
                if (lambda.value().norm() - 1.0).abs() > 1e-9 {
                    return Err(Error::NonCanonicalType("lambda off the unit circle".into()));
                }
                if !lambda.is_real(1e-9) && lambda.value().im < 0.0 {
                    return Err(Error::NonCanonicalType("Im(lambda) must be > 0".into()));
                }
            }
            IsoType::Tr2R { lambda, n, m } => {
                if *n == 0 || *m > 1 || lambda.abs() <= 1.0 {
                    return Err(Error::NonCanonicalType(format!("{self}")));
                }
            }
            IsoType::Tr4 { lambda, n, m } => {
                if *n == 0 || *m > 1 || lambda.norm() <= 1.0 || lambda.im <= 0.0 {
                    return Err(Error::NonCanonicalType(format!("{self}")));
                }
            }
        }
        Ok(())
    }

    /// Strict canonicity per the irreducible-type list: additionally rules
    /// out the reducible/sign-ambiguous lambda = +-1 circle types.
    pub fn check_canonical(&self) -> Result<()> {
        self.check_model_parameters()?;
        if let IsoType::Tr2S1 { lambda, n, m, eps } = self {
            if lambda.is_real(1e-9) {
                let parity_ok = (*m as usize) % 2 == *n % 2;
                if !parity_ok || *eps != 1 {
                    return Err(Error::NonCanonicalType(format!(
                        "{self}: lambda = +-1 requires m = n mod 2 and eps = 1"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical representative(s) with multiplicities: applies the
    /// conjugation relation for Im(lambda) < 0, the sign identification for
    /// irreducible lambda = +-1 types, and the splitting into two Tr1 blocks
    /// for reducible ones.
    pub fn canonicalize(self) -> Vec<(IsoType, usize)> {
        match self {
            IsoType::Tr2S1 { lambda, n, m, eps } => {
                if !lambda.is_real(1e-9) && lambda.value().im < 0.0 {
                    // Tr(lambda,2,n,m,eps) = Tr(conj lambda,2,n,m,(-1)^{n+m+1} eps)
                    let sign = if (n + m as usize + 1) % 2 == 0 { 1 } else { -1 };
                    return IsoType::Tr2S1 { lambda: lambda.conj(), n, m, eps: sign * eps }
                        .canonicalize();
                }
                if lambda.is_real(1e-9) {
                    let lam_sign: i8 = if lambda.value().re > 0.0 { 1 } else { -1 };
                    if (n + m as usize + 1) % 2 == 1 {
                        // irreducible; the two signs are isomorphic
                        vec![(IsoType::Tr2S1 { lambda, n, m, eps: 1 }, 1)]
                    } else {
                        // reducible: 2 * Tr(lambda, 1, n, (-1)^{(n+m+1)/2} eps)
                        let exponent = (n + m as usize + 1) / 2;
                        let sign = if exponent % 2 == 0 { 1 } else { -1 };
                        vec![(IsoType::Tr1 { lambda: lam_sign, n, eps: sign * eps }, 2)]
                    }
                } else {
                    vec![(IsoType::Tr2S1 { lambda, n, m, eps }, 1)]
                }
            }
            IsoType::Tr2R { lambda, n, m } => {
                let l = if lambda.abs() < 1.0 { 1.0 / lambda } else { lambda };
                vec![(IsoType::Tr2R { lambda: l, n, m }, 1)]
            }
            IsoType::Tr4 { lambda, n, m } => {
                let mut l = lambda;
                if l.norm() < 1.0 {
                    l = 1.0 / l;
                }
                if l.im < 0.0 {
                    l = l.conj();
                }
                vec![(IsoType::Tr4 { lambda: l, n, m }, 1)]
            }
            other => vec![(other, 1)],
        }
    }

    fn sort_key(&self) -> (u8, i64, i64, i64, i64, i64) {
        match self {
            IsoType::Tr1 { lambda, n, eps } => (0, *lambda as i64, 0, *n as i64, 0, *eps as i64),
            IsoType::Tr2S1 { lambda, n, m, eps } => {
                (1, quant(lambda.value().re), quant(lambda.value().im), *n as i64, *m as i64, *eps as i64)
            }
            IsoType::Tr2R { lambda, n, m } => (2, quant(*lambda), 0, *n as i64, *m as i64, 0),
            IsoType::Tr4 { lambda, n, m } => {
                (3, quant(lambda.re), quant(lambda.im), *n as i64, *m as i64, 0)
            }
        }
    }

    pub fn approx_eq(&self, other: &IsoType, tol: f64) -> bool {
        match (self, other) {
            (IsoType::Tr1 { lambda: l1, n: n1, eps: e1 }, IsoType::Tr1 { lambda: l2, n: n2, eps: e2 }) => {
                l1 == l2 && n1 == n2 && e1 == e2
            }
            (
                IsoType::Tr2S1 { lambda: l1, n: n1, m: m1, eps: e1 },
                IsoType::Tr2S1 { lambda: l2, n: n2, m: m2, eps: e2 },
            ) => l1.approx_eq(l2, tol) && n1 == n2 && m1 == m2 && e1 == e2,
            (IsoType::Tr2R { lambda: l1, n: n1, m: m1 }, IsoType::Tr2R { lambda: l2, n: n2, m: m2 }) => {
                (l1 - l2).abs() < tol * (1.0 + l1.abs()) && n1 == n2 && m1 == m2
            }
            (IsoType::Tr4 { lambda: l1, n: n1, m: m1 }, IsoType::Tr4 { lambda: l2, n: n2, m: m2 }) => {
                (l1 - l2).norm() < tol * (1.0 + l1.norm()) && n1 == n2 && m1 == m2
            }
            _ => false,
        }
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::Tr1 { lambda, n, eps } => write!(f, "Tr({},1,{},{})", lambda, n, eps),
            IsoType::Tr2S1 { lambda, n, m, eps } => {
                write!(f, "Tr({},2,{},{},{})", fmt_unit(lambda), n, m, eps)
            }
            IsoType::Tr2R { lambda, n, m } => write!(f, "Tr({},2,{},{})", fmt_real(*lambda), n, m),
            IsoType::Tr4 { lambda, n, m } => write!(f, "Tr({},4,{},{})", fmt_complex(*lambda), n, m),
        }
    }
}

/// Irreducible Seifert form pair types.
#[derive(Debug, Clone)]
pub enum SeifType {
    /// Seif(lambda, 1, n, eps): lambda = 1 with n odd, or lambda = -1 with
    /// n even; sign eps of L(a, N^{n-1} a).
    Seif1 { lambda: i8, n: usize, eps: i8 },
    /// Seif(lambda, 2, n): lambda = 1 with n even, or lambda = -1 with n odd.
    Seif2Pm { lambda: i8, n: usize },
    /// Seif(lambda, 2, n, zeta): lambda on the circle, not +-1; canonical
    /// Im(lambda) > 0; zeta^2 = conj(lambda)(-1)^{n+1}.
    Seif2Circle { lambda: UnitValue, n: usize, zeta: UnitValue },
    /// Seif(lambda, 2, n): real |lambda| > 1.
    Seif2Real { lambda: f64, n: usize },
    /// Seif(lambda, 4, n): |lambda| > 1, Im(lambda) > 0.
    Seif4 { lambda: Complex64, n: usize },
}

impl SeifType {
    pub fn dim(&self) -> usize {
        match self {
            SeifType::Seif1 { n, .. } => *n,
            SeifType::Seif2Pm { n, .. } | SeifType::Seif2Circle { n, .. } | SeifType::Seif2Real { n, .. } => 2 * n,
            SeifType::Seif4 { n, .. } => 4 * n,
        }
    }

    pub fn check_canonical(&self) -> Result<()> {
        match self {
            SeifType::Seif1 { lambda, n, eps } => {
                let parity_ok = (*lambda == 1 && n % 2 == 1) || (*lambda == -1 && n % 2 == 0);
                if !parity_ok || !matches!(eps, 1 | -1) {
                    return Err(Error::NonCanonicalType(format!("{self}")));
                }
            }
            SeifType::Seif2Pm { lambda, n } => {
                let parity_ok = (*lambda == 1 && n % 2 == 0) || (*lambda == -1 && n % 2 == 1);
                if !parity_ok {
                    return Err(Error::NonCanonicalType(format!("{self}")));
                }
            }
            SeifType::Seif2Circle { lambda, n, zeta } => {
                if lambda.is_real(1e-9) || lambda.value().im < 0.0 {
                    return Err(Error::NonCanonicalType("lambda must have Im > 0".into()));
                }
                let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
                let target = lambda.value().conj() * sign;
                if (zeta.value() * zeta.value() - target).norm() > 1e-6 {
                    return Err(Error::NonCanonicalType(
                        "zeta^2 must equal conj(lambda) * (-1)^{n+1}".into(),
                    ));
                }
            }
            SeifType::Seif2Real { lambda, n } => {
                if lambda.abs() <= 1.0 || *n == 0 {
                    return Err(Error::NonCanonicalType(format!("{self}")));
                }
            }
            SeifType::Seif4 { lambda, n } => {
                if lambda.norm() <= 1.0 || lambda.im <= 0.0 || *n == 0 {
                    return Err(Error::NonCanonicalType(format!("{self}")));
                }
            }
        }
        Ok(())
    }

    /// Canonical representative (conjugating circle types when needed).
    pub fn canonicalize(self) -> SeifType {
        match self {
            SeifType::Seif2Circle { lambda, n, zeta } => {
                if !lambda.is_real(1e-9) && lambda.value().im < 0.0 {
                    SeifType::Seif2Circle { lambda: lambda.conj(), n, zeta: zeta.conj() }
                } else {
                    SeifType::Seif2Circle { lambda, n, zeta }
                }
            }
            SeifType::Seif2Real { lambda, n } => {
                let l = if lambda.abs() < 1.0 { 1.0 / lambda } else { lambda };
                SeifType::Seif2Real { lambda: l, n }
            }
            SeifType::Seif4 { lambda, n } => {
                let mut l = lambda;
                if l.norm() < 1.0 {
                    l = 1.0 / l;
                }
                if l.im < 0.0 {
                    l = l.conj();
                }
                SeifType::Seif4 { lambda: l, n }
            }
            other => other,
        }
    }

    fn sort_key(&self) -> (u8, i64, i64, i64, i64, i64) {
        match self {
            SeifType::Seif1 { lambda, n, eps } => (0, *lambda as i64, 0, *n as i64, *eps as i64, 0),
            SeifType::Seif2Pm { lambda, n } => (1, *lambda as i64, 0, *n as i64, 0, 0),
            SeifType::Seif2Circle { lambda, n, zeta } => (
                2,
                quant(lambda.value().re),
                quant(lambda.value().im),
                *n as i64,
                quant(zeta.value().re),
                quant(zeta.value().im),
            ),
            SeifType::Seif2Real { lambda, n } => (3, quant(*lambda), 0, *n as i64, 0, 0),
            SeifType::Seif4 { lambda, n } => (4, quant(lambda.re), quant(lambda.im), *n as i64, 0, 0),
        }
    }

    pub fn approx_eq(&self, other: &SeifType, tol: f64) -> bool {
        match (self, other) {
            (SeifType::Seif1 { lambda: l1, n: n1, eps: e1 }, SeifType::Seif1 { lambda: l2, n: n2, eps: e2 }) => {
                l1 == l2 && n1 == n2 && e1 == e2
            }
            (SeifType::Seif2Pm { lambda: l1, n: n1 }, SeifType::Seif2Pm { lambda: l2, n: n2 }) => {
                l1 == l2 && n1 == n2
            }
            (
                SeifType::Seif2Circle { lambda: l1, n: n1, zeta: z1 },
                SeifType::Seif2Circle { lambda: l2, n: n2, zeta: z2 },
            ) => l1.approx_eq(l2, tol) && n1 == n2 && z1.approx_eq(z2, tol),
            (SeifType::Seif2Real { lambda: l1, n: n1 }, SeifType::Seif2Real { lambda: l2, n: n2 }) => {
                (l1 - l2).abs() < tol * (1.0 + l1.abs()) && n1 == n2
            }
            (SeifType::Seif4 { lambda: l1, n: n1 }, SeifType::Seif4 { lambda: l2, n: n2 }) => {
                (l1 - l2).norm() < tol * (1.0 + l1.norm()) && n1 == n2
            }
            _ => false,
        }
    }
}

impl fmt::Display for SeifType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeifType::Seif1 { lambda, n, eps } => write!(f, "Seif({},1,{},{})", lambda, n, eps),
            SeifType::Seif2Pm { lambda, n } => write!(f, "Seif({},2,{})", lambda, n),
            SeifType::Seif2Circle { lambda, n, zeta } => {
                write!(f, "Seif({},2,{},{})", fmt_unit(lambda), n, fmt_unit(zeta))
            }
            SeifType::Seif2Real { lambda, n } => write!(f, "Seif({},2,{})", fmt_real(*lambda), n),
            SeifType::Seif4 { lambda, n } => write!(f, "Seif({},4,{})", fmt_complex(*lambda), n),
        }
    }
}

fn quant(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

fn fmt_real(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 {
        format!("{}", x.round() as i64)
    } else {
        format!("{x:.6}")
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im.abs() < 1e-9 {
        fmt_real(z.re)
    } else if z.re.abs() < 1e-9 {
        format!("{}i", fmt_real(z.im))
    } else if z.im > 0.0 {
        format!("{}+{}i", fmt_real(z.re), fmt_real(z.im))
    } else {
        format!("{}{}i", fmt_real(z.re), fmt_real(z.im))
    }
}

fn fmt_unit(u: &UnitValue) -> String {
    if let Some(b) = u.beta() {
        if b == Rational64::new(1, 1) {
            return "1".into();
        }
        if b == Rational64::new(1, 2) {
            return "-1".into();
        }
        // value = e^{2 pi i t} with t = 1 - beta in [0, 1)
        let t = Rational64::new(1, 1) - b;
        if t == Rational64::new(1, 4) {
            return "i".into();
        }
        if t == Rational64::new(3, 4) {
            return "-i".into();
        }
        return format!("e({}/{})", t.numer(), t.denom());
    }
    fmt_complex(u.value())
}

/// A multiset of irreducible types with multiplicities, sorted canonically.
#[derive(Debug, Clone)]
pub struct Decomposition<T> {
    items: Vec<(T, usize)>,
}

pub trait TypeLike: Clone + fmt::Display {
    fn key(&self) -> (u8, i64, i64, i64, i64, i64);
    fn like(&self, other: &Self, tol: f64) -> bool;
    fn type_dim(&self) -> usize;
}

impl TypeLike for IsoType {
    fn key(&self) -> (u8, i64, i64, i64, i64, i64) {
        self.sort_key()
    }
    fn like(&self, other: &Self, tol: f64) -> bool {
        self.approx_eq(other, tol)
    }
    fn type_dim(&self) -> usize {
        self.dim()
    }
}

impl TypeLike for SeifType {
    fn key(&self) -> (u8, i64, i64, i64, i64, i64) {
        self.sort_key()
    }
    fn like(&self, other: &Self, tol: f64) -> bool {
        self.approx_eq(other, tol)
    }
    fn type_dim(&self) -> usize {
        self.dim()
    }
}

impl<T: TypeLike> Decomposition<T> {
    pub fn new() -> Self {
        Decomposition { items: Vec::new() }
    }

    pub fn push(&mut self, t: T, mult: usize) {
        if mult == 0 {
            return;
        }
        for (existing, m) in self.items.iter_mut() {
            if existing.like(&t, 1e-6) {
                *m += mult;
                return;
            }
        }
        self.items.push((t, mult));
        self.items.sort_by_key(|(t, _)| t.key());
    }

    pub fn items(&self) -> &[(T, usize)] {
        &self.items
    }

    pub fn total_dim(&self) -> usize {
        self.items.iter().map(|(t, m)| t.type_dim() * m).sum()
    }

    pub fn merge(&mut self, other: &Decomposition<T>) {
        for (t, m) in &other.items {
            self.push(t.clone(), *m);
        }
    }

    pub fn approx_eq(&self, other: &Decomposition<T>, tol: f64) -> bool {
        if self.items.len() != other.items.len() {
            return false;
        }
        let mut used = vec![false; other.items.len()];
        for (t, m) in &self.items {
            let found = other.items.iter().enumerate().find(|(j, (u, k))| {
                !used[*j] && t.like(u, tol) && m == k
            });
            match found {
                Some((j, _)) => used[j] = true,
                None => return false,
            }
        }
        true
    }
}

impl<T: TypeLike> Default for Decomposition<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: TypeLike> fmt::Display for Decomposition<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.items.iter().map(|(t, m)| format!("{t} x{m}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

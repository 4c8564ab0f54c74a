//! Exact pmf algebra over integer supports and the mutual-information engine.
//!
//! The observation is `Y = α₀·X + Σᵢ αᵢ·Zᵢ` with `X, Zᵢ` i.i.d. Bernoulli(p) on `{0, 1}`.
//! The noise `Z_α = Σᵢ αᵢ·Zᵢ` is built by iterated two-point convolution on a sparse,
//! sorted atom list, and `I(X; Y) = H(p) − Σ_y Pr(Y = y)·H(X | Y = y)`.
//!
//! All quantities are in bits.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::numeric::{split_entropy, NeumaierSum, ZERO_PROB};

/// Default cap on the number of atoms a noise pmf may hold.
pub const DEFAULT_SUPPORT_GUARD: usize = 1 << 24;

const NORMALIZATION_TOL: f64 = 1e-12;

/// An entropy or mutual-information value in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct BitsValue(pub f64);

impl BitsValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<BitsValue> for f64 {
    fn from(b: BitsValue) -> f64 {
        b.0
    }
}

impl fmt::Display for BitsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Minor allele frequency `p` and number of noise individuals `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    p: f64,
    k: usize,
}

impl ModelParams {
    /// Requires `0 ≤ p ≤ 0.5`. `K = 0` is accepted here; scheme constructors and
    /// optimizers reject it themselves.
    pub fn new(p: f64, k: usize) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) {
            return domain(format!("p must lie in [0, 0.5], got {p}"));
        }
        Ok(Self { p, k })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub(crate) fn require_noise(&self) -> Result<()> {
        if self.k == 0 {
            return domain("K must be at least 1");
        }
        Ok(())
    }
}

/// Positive integer mixing coefficients `(α₀, α₁, …, α_K)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixingScheme {
    alpha: Vec<u64>,
}

impl MixingScheme {
    pub fn new(alpha: Vec<u64>) -> Result<Self> {
        if alpha.is_empty() {
            return domain("a mixing scheme needs at least the coefficient α₀");
        }
        if let Some(i) = alpha.iter().position(|&a| a == 0) {
            return domain(format!("coefficient α{i} must be a positive integer"));
        }
        Ok(Self { alpha })
    }

    pub(crate) fn from_vec_unchecked(alpha: Vec<u64>) -> Self {
        debug_assert!(!alpha.is_empty() && alpha.iter().all(|&a| a >= 1));
        Self { alpha }
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    /// Coefficient applied to the protected variable `X`.
    pub fn alpha0(&self) -> u64 {
        self.alpha[0]
    }

    /// Coefficients of the noise individuals.
    pub fn noise_coefficients(&self) -> &[u64] {
        &self.alpha[1..]
    }

    /// Number of noise individuals.
    pub fn k(&self) -> usize {
        self.alpha.len() - 1
    }

    /// Multiplies every coefficient by `c ≥ 1`.
    pub fn scaled(&self, c: u64) -> Result<Self> {
        if c == 0 {
            return domain("scale factor must be positive");
        }
        let alpha = self
            .alpha
            .iter()
            .map(|&a| {
                a.checked_mul(c)
                    .ok_or_else(|| Error::Domain("scaled coefficient overflows u64".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { alpha })
    }
}

impl fmt::Display for MixingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.alpha.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// A finitely supported probability mass function on the integers.
///
/// Atoms are kept sorted by support value with distinct keys. A truncated pmf
/// carries the mass it dropped in `tail_mass`, so that atoms plus tail sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerPmf {
    atoms: Vec<(i64, f64)>,
    tail_mass: f64,
}

impl IntegerPmf {
    /// Unit mass at `at`.
    pub fn point(at: i64) -> Self {
        Self {
            atoms: vec![(at, 1.0)],
            tail_mass: 0.0,
        }
    }

    /// Builds a normalized pmf. Atoms may be given in any order but keys must be distinct.
    pub fn from_atoms(atoms: Vec<(i64, f64)>) -> Result<Self> {
        Self::truncated(atoms, 0.0)
    }

    /// Builds a pmf whose atoms sum to `1 − tail_mass`.
    pub fn truncated(mut atoms: Vec<(i64, f64)>, tail_mass: f64) -> Result<Self> {
        if !(tail_mass >= 0.0) {
            return domain("tail mass must be non-negative");
        }
        atoms.sort_by_key(|&(y, _)| y);
        if atoms.windows(2).any(|w| w[0].0 == w[1].0) {
            return domain("support values must be distinct");
        }
        if let Some(&(y, m)) = atoms.iter().find(|&&(_, m)| !(m >= 0.0)) {
            return domain(format!(
                "negative or NaN probability {m} at support value {y}"
            ));
        }
        let total: f64 = atoms.iter().map(|&(_, m)| m).sum::<f64>() + tail_mass;
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return domain(format!("probabilities sum to {total}, expected 1"));
        }
        Ok(Self { atoms, tail_mass })
    }

    pub fn atoms(&self) -> &[(i64, f64)] {
        &self.atoms
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.atoms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Sum of the atom masses (excluding any tail).
    pub fn total_mass(&self) -> f64 {
        let mut s = NeumaierSum::new();
        s.extend(self.atoms.iter().map(|&(_, m)| m));
        s.value()
    }

    pub fn min_support(&self) -> Option<i64> {
        self.atoms.first().map(|&(y, _)| y)
    }

    pub fn max_support(&self) -> Option<i64> {
        self.atoms.last().map(|&(y, _)| y)
    }

    /// Probability of the support value `y` (zero off-support).
    pub fn prob(&self, y: i64) -> f64 {
        match self.atoms.binary_search_by_key(&y, |&(v, _)| v) {
            Ok(i) => self.atoms[i].1,
            Err(_) => 0.0,
        }
    }

    /// Distribution of `V + shift·B` where `V` has this pmf and `B ~ Bernoulli(p)`.
    pub fn mix_shift(&self, shift: i64, p: f64) -> Self {
        Self {
            atoms: mix_shift_atoms(&self.atoms, shift, p),
            tail_mass: self.tail_mass,
        }
    }

    /// Exact convolution with another pmf.
    pub fn convolve(&self, other: &IntegerPmf) -> Self {
        let mut acc: std::collections::BTreeMap<i64, f64> = std::collections::BTreeMap::new();
        for &(a, pa) in &self.atoms {
            for &(b, pb) in &other.atoms {
                *acc.entry(a + b).or_insert(0.0) += pa * pb;
            }
        }
        Self {
            atoms: acc.into_iter().collect(),
            tail_mass: self.tail_mass + other.tail_mass - self.tail_mass * other.tail_mass,
        }
    }

    /// Affine relabeling of the support, `y ↦ scale·y + offset` with `scale ≠ 0`.
    pub fn map_support(&self, scale: i64, offset: i64) -> Result<Self> {
        if scale == 0 {
            return domain("support map must be injective");
        }
        let mut atoms: Vec<_> = self
            .atoms
            .iter()
            .map(|&(y, m)| (scale * y + offset, m))
            .collect();
        atoms.sort_by_key(|&(y, _)| y);
        Ok(Self {
            atoms,
            tail_mass: self.tail_mass,
        })
    }
}

/// Two-point convolution on sorted atoms: `(1−p)·atoms + p·(atoms shifted by shift)`.
pub(crate) fn mix_shift_atoms(atoms: &[(i64, f64)], shift: i64, p: f64) -> Vec<(i64, f64)> {
    if shift == 0 {
        return atoms.to_vec();
    }
    let q = 1.0 - p;
    let mut out = Vec::with_capacity(atoms.len() * 2);
    let (mut i, mut j) = (0, 0);
    // Merge the stay branch (atoms) with the shifted branch (atoms + shift).
    while i < atoms.len() || j < atoms.len() {
        let stay = atoms.get(i).map(|&(y, _)| y);
        let moved = atoms.get(j).map(|&(y, _)| y + shift);
        match (stay, moved) {
            (Some(a), Some(b)) if a == b => {
                out.push((a, q * atoms[i].1 + p * atoms[j].1));
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push((a, q * atoms[i].1));
                i += 1;
            }
            (Some(_), None) => {
                out.push((atoms[i].0, q * atoms[i].1));
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b, p * atoms[j].1));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// `H(p) = −p·log2 p − (1−p)·log2(1−p)` in bits, `0·log 0 = 0`.
pub fn binary_entropy(p: f64) -> Result<BitsValue> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("binary entropy needs p in [0, 1], got {p}"));
    }
    Ok(BitsValue(h2(p)))
}

/// Unchecked binary entropy for internal use.
#[inline]
pub(crate) fn h2(p: f64) -> f64 {
    let q = 1.0 - p;
    let mut h = 0.0;
    if p > ZERO_PROB {
        h -= p * p.log2();
    }
    if q > ZERO_PROB {
        h -= q * q.log2();
    }
    h
}

/// Exact pmf of `Σ_{i≥1} αᵢ·Zᵢ` under the default support guard.
pub fn noise_pmf(scheme: &MixingScheme, params: &ModelParams) -> Result<IntegerPmf> {
    noise_pmf_with_guard(scheme, params, DEFAULT_SUPPORT_GUARD)
}

/// Exact pmf of `Σ_{i≥1} αᵢ·Zᵢ`, failing once the atom count exceeds `guard`.
pub fn noise_pmf_with_guard(
    scheme: &MixingScheme,
    params: &ModelParams,
    guard: usize,
) -> Result<IntegerPmf> {
    check_lengths(scheme, params)?;
    noise_pmf_any_p(scheme.noise_coefficients(), params.p(), guard)
}

pub(crate) fn noise_pmf_any_p(coeffs: &[u64], p: f64, guard: usize) -> Result<IntegerPmf> {
    let mut sorted: Vec<u64> = coeffs.to_vec();
    sorted.sort_unstable();
    let mut atoms = vec![(0i64, 1.0)];
    for &a in &sorted {
        let shift = i64::try_from(a)
            .map_err(|_| Error::Domain(format!("coefficient {a} exceeds the i64 support range")))?;
        atoms = mix_shift_atoms(&atoms, shift, p);
        if atoms.len() > guard {
            return Err(Error::Resource {
                atoms: atoms.len(),
                guard,
            });
        }
    }
    Ok(IntegerPmf {
        atoms,
        tail_mass: 0.0,
    })
}

fn check_lengths(scheme: &MixingScheme, params: &ModelParams) -> Result<()> {
    if scheme.k() != params.k() {
        return domain(format!(
            "scheme has {} noise coefficients but K = {}",
            scheme.k(),
            params.k()
        ));
    }
    Ok(())
}

/// `H(X | shift·X + Q)` for `Q` with the given (possibly truncated) pmf, `X ~ Bernoulli(p)`.
///
/// Atoms of `q` must be sorted, which every [`IntegerPmf`] guarantees.
pub fn conditional_entropy(q: &IntegerPmf, shift: u64, p: f64) -> f64 {
    conditional_entropy_atoms(q.atoms(), shift as i64, p)
}

pub(crate) fn conditional_entropy_atoms(atoms: &[(i64, f64)], shift: i64, p: f64) -> f64 {
    let q = 1.0 - p;
    let mut acc = NeumaierSum::new();
    // y ranges over the union of supp(Q) (X = 0) and supp(Q) + shift (X = 1).
    let (mut i, mut j) = (0, 0);
    while i < atoms.len() && j < atoms.len() {
        let a = atoms[i].0;
        let b = atoms[j].0 + shift;
        if a == b {
            acc.add(split_entropy(q * atoms[i].1, p * atoms[j].1));
            i += 1;
            j += 1;
        } else if a < b {
            i += 1;
        } else {
            j += 1;
        }
    }
    acc.value()
}

/// `I(X; α₀X + Z_α)` in bits.
pub fn mutual_information(scheme: &MixingScheme, params: &ModelParams) -> Result<BitsValue> {
    check_lengths(scheme, params)?;
    mutual_information_any_p(scheme, params.p())
}

/// Mutual information for any `p ∈ [0, 1]`; the typed [`ModelParams`] restricts to
/// `p ≤ 0.5`, this entry point exists for symmetry checks.
pub fn mutual_information_any_p(scheme: &MixingScheme, p: f64) -> Result<BitsValue> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("p must lie in [0, 1], got {p}"));
    }
    let q = noise_pmf_any_p(scheme.noise_coefficients(), p, DEFAULT_SUPPORT_GUARD)?;
    Ok(mi_from_noise(&q, scheme.alpha0(), p))
}

/// `H(p) − H(X | shift·X + Q)`, clamped to `[0, H(p)]` against round-off.
pub(crate) fn mi_from_noise(q: &IntegerPmf, shift: u64, p: f64) -> BitsValue {
    let hp = h2(p);
    let hc = conditional_entropy(q, shift, p);
    BitsValue((hp - hc).clamp(0.0, hp))
}

/// `H(X | Y = y)`; zero when only one value of `X` can produce `y`.
pub fn posterior_entropy_at(
    y: i64,
    scheme: &MixingScheme,
    params: &ModelParams,
) -> Result<BitsValue> {
    let q = noise_pmf(scheme, params)?;
    let p = params.p();
    let a0 = scheme.alpha0() as i64;
    let from_zero = (1.0 - p) * q.prob(y);
    let from_one = p * q.prob(y - a0);
    let total = from_zero + from_one;
    if total <= ZERO_PROB {
        return domain(format!("observation {y} is unreachable under {scheme}"));
    }
    Ok(BitsValue(split_entropy(from_zero, from_one) / total))
}
